//! Distribution of the number of cycles modulo `q`.
//!
//! Exact residue-class sums come straight from a census row. The
//! roots-of-unity filter recovers the same sums from the values of the
//! generating polynomial at the `q`-th roots of unity, which is checked
//! here in double precision against the exact side.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::census::CensusTable;
use crate::error::{CensusError, Result};
use crate::genfunc::{eval_unit_circle, CyclePolynomial, UnitPoint};
use crate::rootloc::{
    isolate_root_near_with, ratio, refine_witness_with, to_f64, RootWitness, SturmChain,
};

pub const DEFAULT_FILTER_TOLERANCE: f64 = 1e-9;
/// Largest modulus accepted.
pub const MAX_MODULUS: usize = 64;
/// Largest number of good roots used by [`good_root_bound`].
pub const MAX_GOOD_ROOTS: usize = 12;
/// Radius within which each good root must be certified.
pub const GOOD_ROOT_RADIUS: (i64, i64) = (1, 4);
/// Allowance for rounding in the double-precision side of the good-root comparison.
pub const FLOAT_ALLOWANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueReport {
    pub a: usize,
    pub n: usize,
    pub q: usize,
    /// `counts[r]` sums the row over `k = r (mod q)`.
    pub counts: Vec<BigUint>,
    pub total: BigUint,
    pub ratios: Vec<BigRational>,
    /// `max_r |ratios[r] - 1/q|`.
    pub max_deviation: BigRational,
}

fn check_modulus(q: usize) -> Result<()> {
    if q == 0 || q > MAX_MODULUS {
        return Err(CensusError::InvalidArgument(format!(
            "modulus q = {q} outside 1..={MAX_MODULUS}"
        )));
    }
    Ok(())
}

pub fn residue_sums_from_table(table: &CensusTable, n: usize, q: usize) -> Result<ResidueReport> {
    check_modulus(q)?;
    let row = table.row(n).ok_or_else(|| {
        CensusError::OutOfRange(format!("row {n} beyond table n_max {}", table.n_max()))
    })?;
    let mut counts = vec![BigUint::zero(); q];
    for (k, c) in row.iter().enumerate() {
        counts[k % q] += c;
    }
    let total: BigUint = counts.iter().sum();
    if total.is_zero() {
        return Err(CensusError::UndefinedNormalization {
            a: table.family_bound(),
            n,
        });
    }
    let total_int = BigInt::from(total.clone());
    let ratios: Vec<BigRational> = counts
        .iter()
        .map(|c| BigRational::new(BigInt::from(c.clone()), total_int.clone()))
        .collect();
    let uniform = ratio(1, q as i64);
    let max_deviation = ratios
        .iter()
        .map(|r| (r - &uniform).abs())
        .max()
        .expect("q >= 1");
    Ok(ResidueReport {
        a: table.family_bound(),
        n,
        q,
        counts,
        total,
        ratios,
        max_deviation,
    })
}

pub fn residue_sums(a: usize, n: usize, q: usize) -> Result<ResidueReport> {
    residue_sums_from_table(&CensusTable::build(a, n)?, n, q)
}

/// One evaluation of the identity `q * ratio_r = sum_s w^(-rs) P(w^s) / P(1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterCheck {
    pub a: usize,
    pub n: usize,
    pub q: usize,
    pub r: usize,
    /// `q * counts[r] / total`, from the exact side.
    pub lhs: f64,
    /// The filtered sum of normalized evaluations at the roots of unity.
    pub rhs: Complex64,
    pub residual: f64,
}

/// Weighted sum `sum_s w^(-rs) P(w^s) / P(1)` for `w = exp(2 pi i / q)`.
pub fn filtered_sum(p: &CyclePolynomial, q: usize, r: usize) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..q {
        let point = UnitPoint::root_of_unity(s as i64, q as u64);
        let phase = UnitPoint::root_of_unity(-((r * s) as i64), q as u64).to_complex();
        acc += phase * eval_unit_circle(p, point, true)?;
    }
    Ok(acc)
}

pub fn unity_filter_check_from_table(
    table: &CensusTable,
    n: usize,
    q: usize,
    r: usize,
    tol: f64,
) -> Result<FilterCheck> {
    if r >= q {
        return Err(CensusError::InvalidArgument(format!(
            "residue r = {r} must be below q = {q}"
        )));
    }
    let report = residue_sums_from_table(table, n, q)?;
    let lhs = (&report.ratios[r] * BigRational::from_integer(BigInt::from(q)))
        .to_f64()
        .expect("ratio is at most q");
    let p = CyclePolynomial::from_table(table, n)?;
    let rhs = filtered_sum(&p, q, r)?;
    let residual = (Complex64::new(lhs, 0.0) - rhs).norm();
    if residual.is_nan() || residual >= tol {
        return Err(CensusError::IdentityViolation(format!(
            "filter residual {residual:e} >= {tol:e} at a = {}, n = {n}, q = {q}, r = {r}",
            table.family_bound()
        )));
    }
    Ok(FilterCheck {
        a: table.family_bound(),
        n,
        q,
        r,
        lhs,
        rhs,
        residual,
    })
}

pub fn unity_filter_check(a: usize, n: usize, q: usize, r: usize, tol: f64) -> Result<FilterCheck> {
    unity_filter_check_from_table(&CensusTable::build(a, n)?, n, q, r, tol)
}

/// `prod_{j=1}^{n-1} (1 + 2 Re(v) j + j^2) / (j+1)^2`, which equals `|C_n(v) / n!|^2`.
pub fn magnitude_product(v: UnitPoint, n: usize) -> f64 {
    let re = v.re();
    (1..n)
        .map(|j| {
            let j = j as f64;
            (1.0 + 2.0 * re * j + j * j) / ((j + 1.0) * (j + 1.0))
        })
        .product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecaySeries {
    pub a: usize,
    pub q: usize,
    pub grid: Vec<usize>,
    pub max_deviation: Vec<BigRational>,
    /// `max_{0 < s < q} |P_n(w^s) / P_n(1)|` per grid point.
    pub max_filter_magnitude: Vec<f64>,
}

impl DecaySeries {
    pub fn max_deviation_f64(&self) -> Vec<f64> {
        self.max_deviation.iter().map(to_f64).collect()
    }
}

pub fn decay_series(a: usize, q: usize, grid: &[usize]) -> Result<DecaySeries> {
    check_modulus(q)?;
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CensusError::InvalidArgument(
            "n grid must be strictly increasing".into(),
        ));
    }
    let Some(&top) = grid.last() else {
        return Err(CensusError::InvalidArgument("empty n grid".into()));
    };
    let table = CensusTable::build(a, top)?;
    let mut max_deviation = Vec::with_capacity(grid.len());
    let mut max_filter_magnitude = Vec::with_capacity(grid.len());
    for &n in grid {
        max_deviation.push(residue_sums_from_table(&table, n, q)?.max_deviation);
        let p = CyclePolynomial::from_table(&table, n)?;
        let mut worst = 0.0f64;
        for s in 1..q {
            let z = eval_unit_circle(&p, UnitPoint::root_of_unity(s as i64, q as u64), true)?;
            worst = worst.max(z.norm());
        }
        max_filter_magnitude.push(worst);
    }
    Ok(DecaySeries {
        a,
        q,
        grid: grid.to_vec(),
        max_deviation,
        max_filter_magnitude,
    })
}

/// Bound on `|P_n(v) / P_n(1)|` from the roots near `-1, ..., -h` alone.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodRootBound {
    pub n: usize,
    pub h: usize,
    /// `H(v) = prod |v - x_i| / prod |1 - x_i|` with `x_i` the interval midpoints.
    pub bound: f64,
    /// Relative allowance for the root intervals and rounding: compare against `bound * (1 + slack)`.
    pub slack: f64,
    /// `|P_n(v) / P_n(1)|`.
    pub actual: f64,
    pub roots: Vec<RootWitness>,
}

impl GoodRootBound {
    pub fn holds(&self) -> bool {
        self.actual <= self.bound * (1.0 + self.slack)
    }
}

pub fn good_root_bound_for(p: &CyclePolynomial, v: UnitPoint, h: usize) -> Result<GoodRootBound> {
    if h == 0 || h > MAX_GOOD_ROOTS {
        return Err(CensusError::InvalidArgument(format!(
            "number of good roots h = {h} outside 1..={MAX_GOOD_ROOTS}"
        )));
    }
    let radius = ratio(GOOD_ROOT_RADIUS.0, GOOD_ROOT_RADIUS.1);
    let fine = ratio(1, 1 << 40);
    let chain = SturmChain::from_cycle_polynomial(p)?;
    let mut roots = Vec::with_capacity(h);
    for t in 1..=h {
        let w = isolate_root_near_with(&chain, p, t, &radius)?.ok_or_else(|| {
            CensusError::InsufficientN(format!(
                "no root of P_{} within {radius} of -{t}",
                p.length()
            ))
        })?;
        roots.push(refine_witness_with(&chain, &w, &fine));
    }
    let z = v.to_complex();
    let one = Complex64::new(1.0, 0.0);
    let mut bound = 1.0;
    let mut upper = 1.0;
    for w in &roots {
        let mid = to_f64(&w.midpoint());
        let half = to_f64(&w.width()) / 2.0;
        let num = (z - mid).norm();
        let den = (one - mid).norm();
        bound *= num / den;
        upper *= (num + half) / (den - half);
    }
    let slack = if bound > 0.0 {
        upper / bound - 1.0 + FLOAT_ALLOWANCE
    } else {
        f64::INFINITY
    };
    let actual = eval_unit_circle(p, v, true)?.norm();
    Ok(GoodRootBound {
        n: p.length(),
        h,
        bound,
        slack,
        actual,
        roots,
    })
}

/// [`good_root_bound_for`] on the derangement polynomial `D_n`.
pub fn good_root_bound(n: usize, v: UnitPoint, h: usize) -> Result<GoodRootBound> {
    let table = CensusTable::build(1, n)?;
    good_root_bound_for(&CyclePolynomial::from_table(&table, n)?, v, h)
}
