//! Exact root localization for cycle generating polynomials via Sturm chains.
//!
//! All arithmetic is over the integers and rationals. The chain is built
//! from the square-free part of the polynomial with its root at zero
//! divided out, so counts are of distinct roots and the trivial root is
//! accounted for separately.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::census::{CensusTable, Limits};
use crate::error::{CensusError, Result};
use crate::genfunc::{eval_integer, CyclePolynomial};
use crate::poly::IntPoly;

/// Default largest `n` for [`threshold_scan`].
pub const DEFAULT_SCAN_MAX_N: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    zero_order: usize,
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(CensusError::ZeroPolynomial);
        }
        let zero_order = p.zero_order();
        let base = p.strip_zero_root().primitive_part();
        let mut chain = sturm_sequence(&base);
        let last = chain.last().expect("chain starts with base");
        if last.degree().unwrap_or(0) > 0 {
            // repeated roots: the chain ends in gcd(p, p'), restart on p / gcd
            let square_free = base
                .exact_div(&last.primitive_part())
                .expect("last chain member divides the polynomial")
                .primitive_part();
            chain = sturm_sequence(&square_free);
        }
        Ok(SturmChain { zero_order, chain })
    }

    pub fn from_cycle_polynomial(p: &CyclePolynomial) -> Result<Self> {
        Self::new(&p.to_int_poly())
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    /// Multiplicity of the root at zero in the original polynomial.
    pub fn zero_order(&self) -> usize {
        self.zero_order
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct nonzero roots in `(lo, hi]`.
    pub fn count_nonzero(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    /// Distinct roots in `(lo, hi]`, the root at zero included.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let zero_inside = self.zero_order > 0 && lo.is_negative() && !hi.is_negative();
        self.count_nonzero(lo, hi) + usize::from(zero_inside)
    }

    /// Number of distinct real roots, zero included.
    pub fn total_distinct(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
            + usize::from(self.zero_order > 0)
    }

    /// Integer `B` with every root strictly inside `(-B, B)` (Cauchy's bound).
    pub fn root_bound(&self) -> BigInt {
        let base = &self.chain[0];
        match base.leading() {
            Some(lc) if base.degree() > Some(0) => {
                let lc = lc.magnitude();
                let biggest = base.coeffs().iter().map(|c| c.magnitude()).max().unwrap();
                BigInt::from(biggest / lc + 2u32)
            }
            _ => BigInt::one(),
        }
    }

    pub fn is_root(&self, x: &BigRational) -> bool {
        (x.is_zero() && self.zero_order > 0) || self.chain[0].sign_at(x) == Ordering::Equal
    }
}

/// `p, p', -rem(p, p'), ...` up to positive factors, via subresultant-style
/// pseudo-remainders: each step divides out the known factor `g h^delta`
/// exactly instead of taking contents.
fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    let deriv = p.derivative();
    if deriv.is_zero() {
        return chain;
    }
    chain.push(deriv);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (prev, last) = (&chain[chain.len() - 2], &chain[chain.len() - 1]);
        if last.degree() == Some(0) {
            break;
        }
        let delta = prev.degree().unwrap() - last.degree().unwrap();
        let (rem, multiplier) = prev.pseudo_rem(last);
        if rem.is_zero() {
            break;
        }
        let divisor = &g * h.pow(delta as u32);
        let coeffs = rem
            .coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&divisor);
                debug_assert!(r.is_zero(), "subresultant division must be exact");
                // next = -rem(prev, last) times a positive factor
                if multiplier == Ordering::Greater {
                    -q
                } else {
                    q
                }
            })
            .collect();
        let next = IntPoly::new(coeffs);
        g = chain[chain.len() - 1].leading().unwrap().abs();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
        chain.push(next);
    }
    chain
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn count_roots_in(p: &CyclePolynomial, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return Err(CensusError::InvalidArgument(format!(
            "empty interval ({lo}, {hi}]"
        )));
    }
    Ok(SturmChain::from_cycle_polynomial(p)?.count(lo, hi))
}

/// Certified interval around a root of `P_{n}` near `-t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootWitness {
    pub t: usize,
    pub epsilon: BigRational,
    pub a: usize,
    pub n: usize,
    pub lo: BigRational,
    pub hi: BigRational,
    /// Distinct roots in `(lo, hi]`.
    pub sturm_count: usize,
    /// `max(|lo + t|, |hi + t|)`.
    pub achieved_radius: BigRational,
}

impl RootWitness {
    pub fn target(&self) -> BigRational {
        -BigRational::from_integer(BigInt::from(self.t))
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

fn radius_about(t: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    let a = (lo + t).abs();
    let b = (hi + t).abs();
    if a > b {
        a
    } else {
        b
    }
}

/// Halves `(lo, hi]` until narrower than `width`, always keeping a root;
/// the lower half wins when both halves hold one.
fn bisect(
    chain: &SturmChain,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if chain.count_nonzero(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Looks for a nonzero root in `(-t - epsilon, -t + epsilon)` and narrows it to width `epsilon / 8`.
///
/// `Ok(None)` is a certified absence (Sturm count zero), as is an empty family.
pub fn isolate_root_near(
    p: &CyclePolynomial,
    t: usize,
    epsilon: &BigRational,
) -> Result<Option<RootWitness>> {
    if !epsilon.is_positive() {
        return Err(CensusError::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if p.degree().is_none() {
        return Ok(None);
    }
    let chain = SturmChain::from_cycle_polynomial(p)?;
    isolate_root_near_with(&chain, p, t, epsilon)
}

/// [`isolate_root_near`] reusing a chain already built for `p`.
pub fn isolate_root_near_with(
    chain: &SturmChain,
    p: &CyclePolynomial,
    t: usize,
    epsilon: &BigRational,
) -> Result<Option<RootWitness>> {
    if !epsilon.is_positive() {
        return Err(CensusError::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let target = -BigRational::from_integer(BigInt::from(t));
    let lo = &target - epsilon;
    let open_hi = &target + epsilon;
    let hi = if open_hi.is_positive() {
        BigRational::zero()
    } else {
        open_hi.clone()
    };
    let mut found = chain.count_nonzero(&lo, &hi);
    if hi == open_hi && chain.chain[0].sign_at(&hi) == Ordering::Equal {
        found -= 1;
    }
    if found == 0 {
        return Ok(None);
    }
    let width = epsilon / BigRational::from_integer(8.into());
    let (lo, hi) = bisect(chain, lo, hi, &width);
    let sturm_count = chain.count_nonzero(&lo, &hi);
    let achieved_radius = radius_about(&-target, &lo, &hi);
    Ok(Some(RootWitness {
        t,
        epsilon: epsilon.clone(),
        a: p.family_bound(),
        n: p.length(),
        lo,
        hi,
        sturm_count,
        achieved_radius,
    }))
}

/// Narrows a witness interval further, to width at most `width`.
pub fn refine_witness(
    p: &CyclePolynomial,
    witness: &RootWitness,
    width: &BigRational,
) -> Result<RootWitness> {
    let chain = SturmChain::from_cycle_polynomial(p)?;
    Ok(refine_witness_with(&chain, witness, width))
}

/// [`refine_witness`] reusing a chain already built for the witness polynomial.
pub fn refine_witness_with(
    chain: &SturmChain,
    witness: &RootWitness,
    width: &BigRational,
) -> RootWitness {
    let (lo, hi) = bisect(chain, witness.lo.clone(), witness.hi.clone(), width);
    let t = BigRational::from_integer(BigInt::from(witness.t));
    RootWitness {
        sturm_count: chain.count_nonzero(&lo, &hi),
        achieved_radius: radius_about(&t, &lo, &hi),
        lo,
        hi,
        ..witness.clone()
    }
}

/// Natural logarithm of a big integer, good to double precision.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(|P(-t)| / lead)^(1/d)` with `d = n / (a+1)`: some root lies within this distance of `-t`.
pub fn pigeonhole_bound_for(p: &CyclePolynomial, t: usize) -> Result<f64> {
    let d = crate::census::max_cycles(p.family_bound(), p.length());
    let lead = match p.degree() {
        Some(deg) if deg == d && d > 0 => p.coeffs()[d].magnitude().clone(),
        _ => {
            return Err(CensusError::InvalidArgument(format!(
                "pigeonhole bound needs n >= a + 1 (a = {}, n = {})",
                p.family_bound(),
                p.length()
            )))
        }
    };
    let value = eval_integer(p, &-BigInt::from(t));
    if value.is_zero() {
        return Ok(0.0);
    }
    Ok(((ln_big(value.magnitude()) - ln_big(&lead)) / d as f64).exp())
}

pub fn pigeonhole_bound(n: usize, t: usize, a: usize) -> Result<f64> {
    let table = CensusTable::build(a, n)?;
    pigeonhole_bound_for(&CyclePolynomial::from_table(&table, n)?, t)
}

/// Whether some root (zero included) lies within `radius` of `-t`, certified by a Sturm count.
pub fn has_root_within(p: &CyclePolynomial, t: usize, radius: &BigRational) -> Result<bool> {
    Ok(has_root_within_with(
        &SturmChain::from_cycle_polynomial(p)?,
        t,
        radius,
    ))
}

pub fn has_root_within_with(chain: &SturmChain, t: usize, radius: &BigRational) -> bool {
    let target = -BigRational::from_integer(BigInt::from(t));
    let lo = &target - radius;
    let hi = &target + radius;
    chain.is_root(&lo) || chain.count(&lo, &hi) > 0
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Least `N` with a certified root near `-t` for every `N <= n <= certified_through`.
    pub threshold: usize,
    pub certified_through: usize,
    /// Largest `achieved_radius` over the certified range.
    pub worst_radius: BigRational,
}

pub fn threshold_scan(
    t: usize,
    epsilon: &BigRational,
    a: usize,
    n_max: usize,
) -> Result<Option<ScanResult>> {
    threshold_scan_with_cap(t, epsilon, a, n_max, DEFAULT_SCAN_MAX_N)
}

pub fn threshold_scan_with_cap(
    t: usize,
    epsilon: &BigRational,
    a: usize,
    n_max: usize,
    cap: usize,
) -> Result<Option<ScanResult>> {
    if n_max > cap {
        return Err(CensusError::ResourceCap(format!(
            "root scan limited to n <= {cap}, got {n_max}"
        )));
    }
    let table = CensusTable::build_with_limits(a, n_max, &Limits::default())?;
    let mut threshold = None;
    let mut worst = BigRational::zero();
    for n in (1..=n_max).rev() {
        let p = CyclePolynomial::from_table(&table, n)?;
        match isolate_root_near(&p, t, epsilon)? {
            Some(w) => {
                if w.achieved_radius > worst {
                    worst = w.achieved_radius;
                }
                threshold = Some(n);
            }
            None => break,
        }
    }
    Ok(threshold.map(|threshold| ScanResult {
        threshold,
        certified_through: n_max,
        worst_radius: worst,
    }))
}

/// Isolating intervals `(lo, hi]` of width at most `width` for every distinct real root.
///
/// The root at zero, when present, is reported as the degenerate interval `(0, 0]`.
pub fn isolate_all_roots(
    p: &CyclePolynomial,
    width: &BigRational,
) -> Result<Vec<(BigRational, BigRational)>> {
    let chain = SturmChain::from_cycle_polynomial(p)?;
    let mut out = Vec::new();
    if chain.chain[0].degree() > Some(0) {
        let bound = chain.root_bound();
        let mut stack = vec![(
            BigRational::from_integer(-bound.clone()),
            BigRational::from_integer(bound),
        )];
        let two = BigRational::from_integer(2.into());
        while let Some((lo, hi)) = stack.pop() {
            match chain.count_nonzero(&lo, &hi) {
                0 => {}
                1 => {
                    let (l, h) = bisect(&chain, lo, hi, width);
                    out.push((l, h));
                }
                _ => {
                    let mid = (&lo + &hi) / &two;
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    if chain.zero_order > 0 {
        out.push((BigRational::zero(), BigRational::zero()));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
