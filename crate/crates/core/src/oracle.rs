//! Ground truth by exhaustive enumeration of permutations.

use crate::error::{CensusError, Result};

/// Largest length we are willing to enumerate (10! = 3,628,800 permutations).
pub const MAX_ORACLE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRow {
    pub n: usize,
    pub a: usize,
    /// `counts[k]` for `0 <= k <= n`.
    pub counts: Vec<u64>,
}

impl OracleRow {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Rearranges `perm` into its lexicographic successor; false after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Calls `visit(cycle_count, shortest, longest)` for every permutation of length `n`.
fn for_each_cycle_profile(n: usize, mut visit: impl FnMut(usize, usize, usize)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    loop {
        seen.iter_mut().for_each(|s| *s = false);
        let (mut cycles, mut shortest, mut longest) = (0, usize::MAX, 0);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            cycles += 1;
            shortest = shortest.min(len);
            longest = longest.max(len);
        }
        visit(cycles, shortest, longest);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_ORACLE_N {
        return Err(CensusError::ResourceCap(format!(
            "brute force limited to n <= {MAX_ORACLE_N}, got {n}"
        )));
    }
    Ok(())
}

/// Counts permutations of length `n` with every cycle longer than `a`, by number of cycles.
pub fn brute_force_census(n: usize, a: usize) -> Result<OracleRow> {
    check_cap(n)?;
    let mut counts = vec![0u64; n + 1];
    // the empty permutation has no cycles, so shortest stays at MAX
    for_each_cycle_profile(n, |cycles, shortest, _| {
        if shortest > a {
            counts[cycles] += 1;
        }
    });
    Ok(OracleRow { n, a, counts })
}

/// `m_a(i, b)` for every `i`: permutations of length `b` with no cycle longer than `a`.
pub fn brute_force_small_cycle(a: usize, b: usize) -> Result<Vec<u64>> {
    check_cap(b)?;
    let mut counts = vec![0u64; b + 1];
    for_each_cycle_profile(b, |cycles, _, longest| {
        if longest <= a {
            counts[cycles] += 1;
        }
    });
    Ok(counts)
}
