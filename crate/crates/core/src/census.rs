//! Exact census tables for permutations whose cycles are all longer than `a`.
//!
//! `a = 0` gives the signless Stirling numbers of the first kind `c(n, k)`,
//! `a = 1` the derangement numbers `d(n, k)`, and general `a` the counts
//! `d_a(n, k)`. The companion [`SmallCycleTable`] counts the opposite family,
//! permutations whose cycles are all at most `a` long.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CensusError, Result};

/// Resource guards applied to every table builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_a: usize,
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_a: 8,
            max_n: 2000,
        }
    }
}

impl Limits {
    pub fn check(&self, a: usize, n: usize) -> Result<()> {
        if a > self.max_a {
            return Err(CensusError::ResourceCap(format!(
                "family bound a = {a} exceeds cap {}",
                self.max_a
            )));
        }
        if n > self.max_n {
            return Err(CensusError::ResourceCap(format!(
                "length {n} exceeds cap {}",
                self.max_n
            )));
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * j)
}

/// `n (n-1) ... (n-k+1)`, the number of ordered selections of `k` out of `n`.
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, j| acc * j)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Largest possible number of cycles for length `n` when every cycle is longer than `a`.
pub fn max_cycles(a: usize, n: usize) -> usize {
    n / (a + 1)
}

/// Triangle of counts of length-`n` permutations with `k` cycles, all longer than `a`.
///
/// Row `n` has entries for `0 <= k <= n / (a + 1)`. Index 0 is stored
/// explicitly so that `row(n)[k]` is the coefficient of `x^k` in the
/// generating polynomial. Row 0 is `[1]` (the empty permutation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    a: usize,
    rows: Vec<Vec<BigUint>>,
}

impl CensusTable {
    pub fn build(a: usize, n_max: usize) -> Result<Self> {
        Self::build_with_limits(a, n_max, &Limits::default())
    }

    /// Builds rows `0..=n_max` from the recurrence obtained by looking at the
    /// element `n`: either it sits in a cycle of length greater than `a + 1`
    /// (remove it, `n - 1` places to reinsert it) or its cycle has length
    /// exactly `a + 1` (remove the whole cycle, `(n-1)_a` ways to fill it).
    pub fn build_with_limits(a: usize, n_max: usize, limits: &Limits) -> Result<Self> {
        limits.check(a, n_max)?;
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let width = max_cycles(a, n) + 1;
            let mut row = vec![BigUint::zero(); width];
            let grow = &rows[n - 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                if let Some(prev) = grow.get(k) {
                    if !prev.is_zero() {
                        *slot += prev * (n - 1);
                    }
                }
            }
            if n > a {
                let fill = falling_factorial(n - 1, a);
                let shrink = &rows[n - a - 1];
                for (k, slot) in row.iter_mut().enumerate().skip(1) {
                    if let Some(prev) = shrink.get(k - 1) {
                        if !prev.is_zero() {
                            *slot += prev * &fill;
                        }
                    }
                }
            }
            rows.push(row);
        }
        Ok(CensusTable { a, rows })
    }

    pub fn family_bound(&self) -> usize {
        self.a
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Entry `(n, k)`; zero outside the stored triangle.
    ///
    /// # Panics
    /// If `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        assert!(
            n <= self.n_max(),
            "row {n} not in table (n_max {})",
            self.n_max()
        );
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row_sum(&self, n: usize) -> Option<BigUint> {
        self.row(n).map(|r| r.iter().sum())
    }
}

pub fn census_table(a: usize, n_max: usize) -> Result<CensusTable> {
    CensusTable::build(a, n_max)
}

/// `m_a(i, b)`: permutations of length `b` with `i` cycles, none longer than the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCycleTable {
    cap: usize,
    // entries[i][b]
    entries: Vec<Vec<BigUint>>,
}

impl SmallCycleTable {
    pub fn build(cap: usize, i_max: usize, b_max: usize) -> Result<Self> {
        Self::build_with_limits(cap, i_max, b_max, &Limits::default())
    }

    pub fn build_with_limits(
        cap: usize,
        i_max: usize,
        b_max: usize,
        limits: &Limits,
    ) -> Result<Self> {
        if cap == 0 {
            return Err(CensusError::InvalidArgument(
                "small-cycle cap must be at least 1".into(),
            ));
        }
        limits.check(cap, b_max.max(i_max))?;
        // Condition on the cycle through the largest element b; it has some
        // length j <= cap and (b-1)_(j-1) ways to pick its other members in order.
        let mut entries = vec![vec![BigUint::zero(); b_max + 1]; i_max + 1];
        entries[0][0] = BigUint::one();
        for i in 1..=i_max {
            for b in i..=b_max.min(cap * i) {
                let mut acc = BigUint::zero();
                for j in 1..=cap.min(b) {
                    let prev = &entries[i - 1][b - j];
                    if !prev.is_zero() {
                        acc += prev * falling_factorial(b - 1, j - 1);
                    }
                }
                entries[i][b] = acc;
            }
        }
        Ok(SmallCycleTable { cap, entries })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn i_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn b_max(&self) -> usize {
        self.entries[0].len() - 1
    }

    /// Entry `m[i][b]`, zero outside the stored rectangle.
    pub fn get(&self, i: usize, b: usize) -> BigUint {
        self.entries
            .get(i)
            .and_then(|row| row.get(b))
            .cloned()
            .unwrap_or_default()
    }
}

pub fn small_cycle_table(a: usize, i_max: usize, b_max: usize) -> Result<SmallCycleTable> {
    SmallCycleTable::build(a, i_max, b_max)
}

/// Cycle type `(g_1, ..., g_a)`: `g_j` cycles of length `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    multiplicities: Vec<usize>,
}

impl CycleType {
    pub fn new(multiplicities: Vec<usize>) -> Self {
        CycleType { multiplicities }
    }

    /// Multiplicity of cycles of length `len` (1-based).
    pub fn multiplicity(&self, len: usize) -> usize {
        if len == 0 {
            return 0;
        }
        self.multiplicities.get(len - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Total length `b = sum j * g_j`.
    pub fn size(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(j, g)| (j + 1) * g)
            .sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// All cycle types of total length `size` using cycle lengths `1..=max_len`.
    pub fn enumerate(size: usize, max_len: usize) -> Vec<CycleType> {
        fn go(remaining: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if len == 0 {
                if remaining == 0 {
                    out.push(CycleType::new(current.clone()));
                }
                return;
            }
            for g in 0..=remaining / len {
                current[len - 1] = g;
                go(remaining - g * len, len - 1, current, out);
            }
            current[len - 1] = 0;
        }
        let mut out = Vec::new();
        if max_len == 0 {
            if size == 0 {
                out.push(CycleType::new(Vec::new()));
            }
            return out;
        }
        let mut current = vec![0; max_len];
        go(size, max_len, &mut current, &mut out);
        out
    }
}

/// Number of permutations of length `b` with the given cycle type:
/// `b! / (g_1! ... g_a! * 1^g_1 ... a^g_a)`.
pub fn cycle_type_count(ct: &CycleType) -> BigUint {
    let mut denom = BigUint::one();
    for (j, &g) in ct.multiplicities.iter().enumerate() {
        denom *= factorial(g);
        denom *= BigUint::from(j + 1).pow(g as u32);
    }
    factorial(ct.size()) / denom
}

/// Counts `d_a(n, k)` by sieving on the "bad" cycles (those of length at most `a`).
///
/// `d_a(n,k) = sum_i (-1)^i sum_b c(n-b, k-i) m_a(i, b) C(n, b)`, where `i`
/// is the number of marked bad cycles and `b` their total size. Holds its
/// own Stirling and small-cycle tables so many cells can share them.
#[derive(Debug, Clone)]
pub struct InclusionExclusion {
    a: usize,
    stirling: CensusTable,
    small: Option<SmallCycleTable>,
}

impl InclusionExclusion {
    pub fn new(a: usize, n_max: usize) -> Result<Self> {
        let limits = Limits::default();
        limits.check(a, n_max)?;
        let stirling = CensusTable::build_with_limits(0, n_max, &limits)?;
        let small = if a == 0 {
            None
        } else {
            Some(SmallCycleTable::build_with_limits(
                a, n_max, n_max, &limits,
            )?)
        };
        Ok(InclusionExclusion { a, stirling, small })
    }

    pub fn n_max(&self) -> usize {
        self.stirling.n_max()
    }

    fn bad(&self, i: usize, b: usize) -> BigUint {
        match &self.small {
            Some(t) => t.get(i, b),
            None if i == 0 && b == 0 => BigUint::one(),
            None => BigUint::zero(),
        }
    }

    /// Signed sieve sum; the partial sums are not counts, only the total is.
    pub fn signed_count(&self, n: usize, k: usize) -> BigInt {
        assert!(n <= self.n_max(), "n = {n} beyond prepared tables");
        let mut total = BigInt::zero();
        for i in 0..=k.min(n) {
            let mut inner = BigUint::zero();
            for b in i..=n {
                let m = self.bad(i, b);
                if m.is_zero() {
                    continue;
                }
                let c = self.stirling.get(n - b, k - i);
                if c.is_zero() {
                    continue;
                }
                inner += c * m * binomial(n, b);
            }
            let inner = BigInt::from(inner);
            if i % 2 == 0 {
                total += inner;
            } else {
                total -= inner;
            }
        }
        total
    }

    pub fn count(&self, n: usize, k: usize) -> BigUint {
        let signed = self.signed_count(n, k);
        assert!(
            !signed.is_negative(),
            "sieve produced a negative count for a = {}, n = {n}, k = {k}",
            self.a
        );
        signed.to_biguint().expect("nonnegative")
    }
}

pub fn inclusion_exclusion_count(n: usize, k: usize, a: usize) -> Result<BigUint> {
    Ok(InclusionExclusion::new(a, n)?.count(n, k))
}

/// Number of length-`n` permutations with all cycles longer than `a`.
///
/// `a = 0` is `n!`; `a = 1` uses `n! * sum (-1)^i / i!`; larger `a` sums a table row.
pub fn derangement_count(n: usize, a: usize) -> Result<BigUint> {
    Limits::default().check(a, n)?;
    match a {
        0 => Ok(factorial(n)),
        1 => {
            // n!/i! accumulated from i = n downwards
            let mut total = BigInt::zero();
            let mut term = BigUint::one();
            for i in (0..=n).rev() {
                if i % 2 == 0 {
                    total += BigInt::from(term.clone());
                } else {
                    total -= BigInt::from(term.clone());
                }
                term *= i.max(1);
            }
            Ok(total
                .to_biguint()
                .expect("derangement count is nonnegative"))
        }
        _ => Ok(CensusTable::build(a, n)?.row_sum(n).expect("row present")),
    }
}

/// Coefficient of the top power `x^(n/2)` in the derangement polynomial, in closed form.
///
/// Even `n`: only 2-cycles, `(n-1)(n-3)...1`. Odd `n`: one 3-cycle and the
/// rest 2-cycles, `(n-1)/3 * n(n-2)...1`.
pub fn leading_coefficient(n: usize, a: usize) -> Result<BigUint> {
    if a != 1 {
        return Err(CensusError::Unsupported(format!(
            "closed-form leading coefficient only for a = 1, got a = {a}"
        )));
    }
    if n < 2 {
        return Err(CensusError::InvalidArgument(format!(
            "leading coefficient needs n >= 2, got {n}"
        )));
    }
    let odd_product = |top: usize| (1..=top).step_by(2).fold(BigUint::one(), |acc, j| acc * j);
    if n.is_multiple_of(2) {
        Ok(odd_product(n - 1))
    } else {
        Ok(odd_product(n) * (n - 1) / 3u32)
    }
}

/// Lossy view of a count for logging and plotting.
pub fn approx_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
