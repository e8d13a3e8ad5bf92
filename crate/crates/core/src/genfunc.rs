//! Cycle generating polynomials and their evaluations.
//!
//! `P_n(x) = sum_k count(n, k) x^k` for the family of permutations whose
//! cycles are all longer than `a`: the rising factorial `x(x+1)...(x+n-1)`
//! for `a = 0`, the derangement polynomial `D_n(x)` for `a = 1`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::census::{binomial, CensusTable, Limits, SmallCycleTable};
use crate::error::{CensusError, Result};
use crate::poly::IntPoly;

/// Above this length unnormalized coefficients no longer fit in a double.
pub const MAX_UNNORMALIZED_N: usize = 300;
/// Largest `t` accepted by the bounded negative-point formula.
pub const MAX_NEGATIVE_T: usize = 12;
/// Default cap on the forward-difference order searched for.
pub const DEFAULT_DIFFERENCE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePolynomial {
    a: usize,
    n: usize,
    coeffs: Vec<BigInt>,
}

impl CyclePolynomial {
    pub fn from_table(table: &CensusTable, n: usize) -> Result<Self> {
        let row = table.row(n).ok_or_else(|| {
            CensusError::OutOfRange(format!("row {n} beyond table n_max {}", table.n_max()))
        })?;
        Ok(CyclePolynomial {
            a: table.family_bound(),
            n,
            coeffs: row.iter().map(|c| BigInt::from(c.clone())).collect(),
        })
    }

    pub fn family_bound(&self) -> usize {
        self.a
    }

    pub fn length(&self) -> usize {
        self.n
    }

    /// `coeffs()[k]` is the coefficient of `x^k`, for `k = 0..=n/(a+1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest power with a nonzero coefficient; `None` for the empty family.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.degree().map(|d| &self.coeffs[d])
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

pub fn build_polynomial(a: usize, n: usize) -> Result<CyclePolynomial> {
    CyclePolynomial::from_table(&CensusTable::build(a, n)?, n)
}

/// Exact value by Horner's rule over the rationals.
pub fn eval_exact(p: &CyclePolynomial, x: &BigRational) -> BigRational {
    p.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

pub fn eval_integer(p: &CyclePolynomial, x: &BigInt) -> BigInt {
    p.coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// A point on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    re: f64,
    im: f64,
}

impl UnitPoint {
    pub const MODULUS_TOLERANCE: f64 = 1e-12;

    pub fn new(re: f64, im: f64) -> Result<Self> {
        let modulus_sq = re * re + im * im;
        if !modulus_sq.is_finite() || (modulus_sq - 1.0).abs() > Self::MODULUS_TOLERANCE {
            return Err(CensusError::InvalidArgument(format!(
                "({re}, {im}) is not on the unit circle"
            )));
        }
        Ok(UnitPoint { re, im })
    }

    pub fn one() -> Self {
        UnitPoint { re: 1.0, im: 0.0 }
    }

    /// `exp(2 pi i t / q)`.
    pub fn root_of_unity(t: i64, q: u64) -> Self {
        assert!(q > 0, "root of unity needs q >= 1");
        let theta = std::f64::consts::TAU * (t.rem_euclid(q as i64) as f64) / q as f64;
        UnitPoint {
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Probability weights `coeffs[k] / P(1)` as doubles.
pub fn probability_weights(p: &CyclePolynomial) -> Result<Vec<f64>> {
    let total = p.value_at_one();
    if total.is_zero() {
        return Err(CensusError::UndefinedNormalization { a: p.a, n: p.n });
    }
    Ok(p.coeffs
        .iter()
        .map(|c| {
            BigRational::new(c.clone(), total.clone())
                .to_f64()
                .unwrap_or(0.0)
        })
        .collect())
}

/// `P(v)` or, when `normalized`, `P(v) / P(1)` in double precision.
pub fn eval_unit_circle(p: &CyclePolynomial, v: UnitPoint, normalized: bool) -> Result<Complex64> {
    let weights = if normalized {
        probability_weights(p)?
    } else {
        if p.n > MAX_UNNORMALIZED_N {
            return Err(CensusError::OutOfRange(format!(
                "unnormalized evaluation refused for n = {} > {MAX_UNNORMALIZED_N}",
                p.n
            )));
        }
        p.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    };
    let z = v.to_complex();
    Ok(weights
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &w| acc * z + w))
}

/// Evaluates `P_n(-t)` through the bounded sieve formula instead of the full row.
///
/// Marking `i` short cycles (length `<= a`) of total size `b` and summing
/// over the rest gives
/// `P_n(-t) = sum_b C(n,b) C_{n-b}(-t) sum_i m_a(i,b) t^i`.
/// Since `C_m(-t) = 0` once `m >= t + 1`, only `n - t <= b <= n` survive.
/// For `a = 1`, `m_1(i,b) = [i = b]` and the sum has `t + 1` terms.
#[derive(Debug, Clone)]
pub struct NegativeEvaluator {
    a: usize,
    stirling: CensusTable,
    small: Option<SmallCycleTable>,
}

impl NegativeEvaluator {
    pub fn new(a: usize, n_max: usize) -> Result<Self> {
        let limits = Limits::default();
        limits.check(a, n_max)?;
        let stirling = CensusTable::build(0, MAX_NEGATIVE_T)?;
        let small = match a {
            0 | 1 => None,
            _ => Some(SmallCycleTable::build_with_limits(
                a, n_max, n_max, &limits,
            )?),
        };
        Ok(NegativeEvaluator { a, stirling, small })
    }

    pub fn n_max(&self) -> usize {
        self.small
            .as_ref()
            .map_or(usize::MAX, SmallCycleTable::b_max)
    }

    /// `C_m(-t)` from the Stirling row, `m <= t`.
    fn rising_at_negative(&self, m: usize, t: usize) -> BigInt {
        let minus_t = -BigInt::from(t);
        let mut pow = BigInt::one();
        let mut acc = BigInt::zero();
        for c in self.stirling.row(m).expect("m <= t <= table size") {
            acc += BigInt::from(c.clone()) * &pow;
            pow *= &minus_t;
        }
        acc
    }

    /// `sum_i m_a(i, b) t^i`.
    fn weighted_small(&self, b: usize, t: usize) -> BigInt {
        match (&self.small, self.a) {
            (_, 0) => BigInt::from((b == 0) as u32),
            (_, 1) => BigInt::from(t).pow(b as u32),
            (Some(table), _) => {
                let tt = BigUint::from(t);
                let mut acc = BigUint::zero();
                let mut pow = tt.pow(b.div_ceil(table.cap()) as u32);
                for i in b.div_ceil(table.cap())..=b {
                    acc += table.get(i, b) * &pow;
                    pow *= &tt;
                }
                BigInt::from(acc)
            }
            (None, _) => unreachable!("small-cycle table built for a >= 2"),
        }
    }

    pub fn eval(&self, n: usize, t: usize) -> Result<BigInt> {
        if t == 0 || t > MAX_NEGATIVE_T {
            return Err(CensusError::OutOfRange(format!(
                "t = {t} outside 1..={MAX_NEGATIVE_T}"
            )));
        }
        if n <= t {
            return Err(CensusError::OutOfRange(format!(
                "bounded formula needs n > t, got n = {n}, t = {t}"
            )));
        }
        if n > self.n_max() {
            return Err(CensusError::OutOfRange(format!(
                "n = {n} beyond prepared tables ({})",
                self.n_max()
            )));
        }
        let mut total = BigInt::zero();
        for b in (n - t)..=n {
            let tail = self.rising_at_negative(n - b, t);
            if tail.is_zero() {
                continue;
            }
            let marked = self.weighted_small(b, t);
            if marked.is_zero() {
                continue;
            }
            total += BigInt::from(binomial(n, b)) * tail * marked;
        }
        Ok(total)
    }
}

pub fn eval_negative_simplified(n: usize, t: usize, a: usize) -> Result<BigInt> {
    NegativeEvaluator::new(a, n)?.eval(n, t)
}

/// Forward-difference profile of `n -> P_n(-t) / t^n` over a window of lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceReport {
    pub t: usize,
    pub a: usize,
    pub n_lo: usize,
    pub n_hi: usize,
    /// `values[j]` is the value at `n_lo + j`.
    pub values: Vec<BigRational>,
    /// Least `d` whose `d`-th forward difference vanishes on the window.
    pub vanishing_order: usize,
    /// Newton forward-difference coefficients `Delta^j v(n_lo)`, `j < vanishing_order`.
    pub newton: Vec<BigRational>,
    /// Coefficients of the recovered polynomial in powers of `n`.
    pub coefficients: Vec<BigRational>,
}

impl DifferenceReport {
    /// Degree of the recovered polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(n.into());
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Whether re-evaluating the recovered polynomial gives back every window value.
    pub fn reproduces_window(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(j, v)| self.eval((self.n_lo + j) as i64) == *v)
    }
}

pub fn forward_differences(values: &[BigRational]) -> Vec<BigRational> {
    values.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Expands `sum_j newton[j] * C(n - n_lo, j)` into powers of `n`.
fn newton_to_monomial(newton: &[BigRational], n_lo: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); newton.len().max(1)];
    // basis = C(n - n_lo, j) as a polynomial in n
    let mut basis = vec![BigRational::one()];
    let shift = BigRational::from_integer(BigInt::from(n_lo));
    for (j, coeff) in newton.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            out[k] += coeff * b;
        }
        // basis *= (n - n_lo - j) / (j + 1)
        let root = &shift + BigRational::from_integer(BigInt::from(j));
        let scale = BigRational::new(BigInt::one(), BigInt::from(j + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b * &scale;
            next[k] -= b * &scale * &root;
        }
        basis = next;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    if out.iter().all(Zero::is_zero) {
        out.clear();
    }
    out
}

pub fn finite_difference_profile(
    t: usize,
    a: usize,
    n_lo: usize,
    n_hi: usize,
) -> Result<DifferenceReport> {
    let cap = DEFAULT_DIFFERENCE_CAP.max(t + 1);
    finite_difference_profile_with_cap(t, a, n_lo, n_hi, cap)
}

pub fn finite_difference_profile_with_cap(
    t: usize,
    a: usize,
    n_lo: usize,
    n_hi: usize,
    cap: usize,
) -> Result<DifferenceReport> {
    if t == 0 {
        return Err(CensusError::InvalidArgument("t must be positive".into()));
    }
    if n_hi < n_lo || n_hi - n_lo < t + 3 {
        return Err(CensusError::InvalidArgument(format!(
            "window [{n_lo}, {n_hi}] too short for t = {t} (need n_hi - n_lo >= t + 3)"
        )));
    }
    let table = CensusTable::build(a, n_hi)?;
    let x = -BigInt::from(t);
    let tt = BigInt::from(t);
    let values: Vec<BigRational> = (n_lo..=n_hi)
        .map(|n| {
            let p = CyclePolynomial::from_table(&table, n).expect("row in table");
            BigRational::new(eval_integer(&p, &x), tt.pow(n as u32))
        })
        .collect();

    // keep at least two entries so "identically zero" is not a single coincidence
    let max_order = cap.min(values.len() - 2);
    let mut newton = Vec::new();
    let mut diffs = values.clone();
    let mut vanishing_order = None;
    for d in 0..=max_order {
        if diffs.iter().all(Zero::is_zero) {
            vanishing_order = Some(d);
            break;
        }
        newton.push(diffs[0].clone());
        diffs = forward_differences(&diffs);
    }
    let vanishing_order = vanishing_order.ok_or_else(|| {
        CensusError::PropertyViolation(format!(
            "no forward difference of order <= {max_order} vanishes for t = {t}, a = {a} on [{n_lo}, {n_hi}]"
        ))
    })?;
    let coefficients = newton_to_monomial(&newton, n_lo);
    Ok(DifferenceReport {
        t,
        a,
        n_lo,
        n_hi,
        values,
        vanishing_order,
        newton,
        coefficients,
    })
}

/// `|P(-t)|` as an exact magnitude.
pub fn magnitude_at_negative(p: &CyclePolynomial, t: usize) -> BigUint {
    eval_integer(p, &-BigInt::from(t)).abs().magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// x(x+1)...(x+n-1) by repeated multiplication.
    fn rising_product(n: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::one()];
        for j in 0..n {
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] += c;
                next[k] += c * j;
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn polynomials() {
        assert_eq!(
            build_polynomial(1, 4).unwrap().coeffs(),
            ints(&[0, 6, 3]).as_slice()
        );
        assert_eq!(
            build_polynomial(0, 3).unwrap().coeffs(),
            ints(&[0, 2, 3, 1]).as_slice()
        );
        assert_eq!(
            build_polynomial(1, 2).unwrap().coeffs(),
            ints(&[0, 1]).as_slice()
        );
        let empty = build_polynomial(1, 1).unwrap();
        assert_eq!(empty.degree(), None);
    }

    #[test]
    fn rising_factorial_expansion() {
        let table = CensusTable::build(0, 60).unwrap();
        for n in 0..=60 {
            let p = CyclePolynomial::from_table(&table, n).unwrap();
            assert_eq!(p.coeffs(), rising_product(n).as_slice(), "n = {n}");
        }
    }

    #[test]
    fn exact_evaluations() {
        let d4 = build_polynomial(1, 4).unwrap();
        assert_eq!(eval_exact(&d4, &r(-1, 1)), r(-3, 1));
        assert_eq!(
            eval_exact(&build_polynomial(1, 5).unwrap(), &r(-2, 1)),
            r(32, 1)
        );
        assert_eq!(
            eval_exact(&build_polynomial(0, 4).unwrap(), &r(1, 1)),
            r(24, 1)
        );
        assert_eq!(eval_exact(&d4, &r(-3, 2)), r(-9, 4));
    }

    #[test]
    fn unit_circle() {
        let c4 = build_polynomial(0, 4).unwrap();
        let one = eval_unit_circle(&c4, UnitPoint::one(), true).unwrap();
        assert!((one.re - 1.0).abs() < 1e-15 && one.im.abs() < 1e-15);
        let minus = UnitPoint::new(-1.0, 0.0).unwrap();
        assert!(eval_unit_circle(&c4, minus, true).unwrap().norm() < 1e-15);
        let d4 = build_polynomial(1, 4).unwrap();
        let z = eval_unit_circle(&d4, minus, true).unwrap();
        assert!((z.re + 1.0 / 3.0).abs() < 1e-15);
        let raw = eval_unit_circle(&d4, minus, false).unwrap();
        assert!((raw.re + 3.0).abs() < 1e-12);
    }

    #[test]
    fn unit_circle_errors() {
        let empty = build_polynomial(2, 2).unwrap();
        assert!(matches!(
            eval_unit_circle(&empty, UnitPoint::one(), true),
            Err(CensusError::UndefinedNormalization { a: 2, n: 2 })
        ));
        let big = build_polynomial(1, 301).unwrap();
        assert!(eval_unit_circle(&big, UnitPoint::one(), false).is_err());
        assert!(eval_unit_circle(&big, UnitPoint::one(), true).is_ok());
        assert!(UnitPoint::new(0.5, 0.5).is_err());
        assert!(UnitPoint::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn negative_formula_examples() {
        assert_eq!(eval_negative_simplified(5, 2, 1).unwrap(), BigInt::from(32));
        assert_eq!(eval_negative_simplified(6, 1, 1).unwrap(), BigInt::from(-5));
        assert_eq!(eval_negative_simplified(4, 2, 1).unwrap(), BigInt::zero());
        assert_eq!(
            eval_negative_simplified(6, 1, 2).unwrap(),
            BigInt::from(-80)
        );
        assert_eq!(eval_negative_simplified(9, 3, 0).unwrap(), BigInt::zero());
        assert!(matches!(
            eval_negative_simplified(2, 2, 1),
            Err(CensusError::OutOfRange(_))
        ));
        assert!(eval_negative_simplified(20, 13, 1).is_err());
    }

    #[test]
    fn negative_formula_matches_direct() {
        for a in 0..=3 {
            let table = CensusTable::build(a, 50).unwrap();
            let eval = NegativeEvaluator::new(a, 50).unwrap();
            for t in 1..=5 {
                for n in (t + 1)..=50 {
                    let p = CyclePolynomial::from_table(&table, n).unwrap();
                    let direct = eval_integer(&p, &-BigInt::from(t));
                    assert_eq!(eval.eval(n, t).unwrap(), direct, "a {a} t {t} n {n}");
                }
            }
        }
    }

    #[test]
    fn difference_profile_t1() {
        let rep = finite_difference_profile(1, 1, 2, 10).unwrap();
        assert_eq!(rep.vanishing_order, 2);
        assert_eq!(rep.coefficients, vec![r(1, 1), r(-1, 1)]);
        assert!(rep.reproduces_window());
    }

    #[test]
    fn difference_profile_t2() {
        let rep = finite_difference_profile(2, 1, 1, 8).unwrap();
        let first: Vec<_> = rep.values[..6].to_vec();
        assert_eq!(
            first,
            vec![r(0, 1), r(-1, 2), r(-1, 2), r(0, 1), r(1, 1), r(5, 2)]
        );
        assert_eq!(rep.vanishing_order, 3);
        assert_eq!(rep.degree(), Some(2));
        // 1 - n + n(n-1)/4
        assert_eq!(rep.coefficients, vec![r(1, 1), r(-5, 4), r(1, 4)]);
        assert!(rep.reproduces_window());
    }

    #[test]
    fn difference_profile_permutations_vanish() {
        let rep = finite_difference_profile(1, 0, 2, 6).unwrap();
        assert!(rep.values.iter().all(Zero::is_zero));
        assert_eq!(rep.vanishing_order, 0);
        assert_eq!(rep.degree(), None);
        assert!(rep.reproduces_window());
    }

    #[test]
    fn difference_profile_errors() {
        assert!(finite_difference_profile(2, 1, 1, 4).is_err());
        // involution-type growth: no low-order difference vanishes for a = 2
        assert!(matches!(
            finite_difference_profile(1, 2, 1, 30),
            Err(CensusError::PropertyViolation(_))
        ));
    }
}
