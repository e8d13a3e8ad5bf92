//! Property suites runnable outside the test harness (the CLI `verify` command).
//!
//! Each check is cheap enough to run interactively; the heavier parameter
//! ranges live in the acceptance tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::balance::{
    good_root_bound_for, magnitude_product, residue_sums_from_table, unity_filter_check_from_table,
    DEFAULT_FILTER_TOLERANCE,
};
use crate::census::{
    cycle_type_count, derangement_count, factorial, leading_coefficient, CensusTable, CycleType,
    InclusionExclusion, SmallCycleTable,
};
use crate::genfunc::{
    eval_integer, eval_unit_circle, finite_difference_profile, CyclePolynomial, NegativeEvaluator,
    UnitPoint,
};
use crate::oracle::{brute_force_census, brute_force_small_cycle};
use crate::rootloc::{
    has_root_within_with, isolate_root_near_with, pigeonhole_bound_for, ratio, refine_witness_with,
    threshold_scan, SturmChain,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Lemma,
    Roots,
    Balance,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tables" => Ok(Suite::Tables),
            "lemma" => Ok(Suite::Lemma),
            "roots" => Ok(Suite::Roots),
            "balance" => Ok(Suite::Balance),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Tables => "tables",
            Suite::Lemma => "lemma",
            Suite::Roots => "roots",
            Suite::Balance => "balance",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

type Check = std::result::Result<String, String>;

fn outcome(suite: Suite, name: &'static str, check: Check) -> CheckOutcome {
    let (passed, detail) = match check {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        suite,
        name,
        passed,
        detail,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(a: usize, n: usize) -> std::result::Result<CensusTable, String> {
    CensusTable::build(a, n).map_err(|e| e.to_string())
}

fn poly(t: &CensusTable, n: usize) -> CyclePolynomial {
    CyclePolynomial::from_table(t, n).expect("row in table")
}

pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    match suite {
        Suite::All => [Suite::Tables, Suite::Lemma, Suite::Roots, Suite::Balance]
            .into_iter()
            .flat_map(run_suite)
            .collect(),
        Suite::Tables => vec![
            outcome(suite, "oracle_equivalence", oracle_equivalence(9, 3)),
            outcome(suite, "small_cycle_oracle", small_cycle_oracle(8, 3)),
            outcome(suite, "sieve_identity_chain", sieve_identity_chain(30, 3)),
            outcome(suite, "row_sum_factorial", row_sum_factorial(200)),
            outcome(suite, "stirling_recurrence", stirling_recurrence(200)),
            outcome(suite, "small_cycle_types", small_cycle_types(12, 4)),
            outcome(suite, "stirling_alternating_sum", stirling_alternating(200)),
            outcome(
                suite,
                "derangement_nearest_n_fact_over_e",
                nearest_over_e(30),
            ),
            outcome(
                suite,
                "leading_coefficient_closed_form",
                leading_closed_form(200),
            ),
        ],
        Suite::Lemma => vec![
            outcome(suite, "signed_value_at_minus_one", value_at_minus_one(300)),
            outcome(
                suite,
                "bounded_formula_equivalence",
                bounded_formula(120, 5, &[1, 2]),
            ),
            outcome(suite, "rising_factorial_roots", rising_roots(200)),
            outcome(
                suite,
                "difference_vanishing_order",
                difference_vanishing(5, 1, 40),
            ),
            outcome(suite, "normalized_unit_circle", normalized_modulus(60)),
        ],
        Suite::Roots => vec![
            outcome(suite, "no_positive_roots", no_positive_roots(40)),
            outcome(suite, "root_count_within_range", root_count_range(40)),
            outcome(
                suite,
                "pigeonhole_dominance",
                pigeonhole_dominance(6, 100, 3),
            ),
            outcome(suite, "monotone_refinement", monotone_refinement(30, 3)),
            outcome(suite, "threshold_t1", threshold_t1()),
        ],
        Suite::Balance => vec![
            outcome(suite, "residue_exactness", residue_exactness(60, 6)),
            outcome(suite, "filter_identity", filter_identity(60, 6)),
            outcome(suite, "product_formula", product_formula(50)),
            outcome(suite, "parity_closed_forms", parity_closed_forms(200)),
            outcome(suite, "decay_150_vs_30", decay_check()),
            outcome(suite, "good_root_dominance", good_root_dominance(20, 80, 3)),
        ],
    }
}

pub fn oracle_equivalence(n_max: usize, a_max: usize) -> Check {
    for a in 0..=a_max {
        let t = table(a, n_max)?;
        for n in 0..=n_max {
            let row = brute_force_census(n, a).map_err(|e| e.to_string())?;
            for (k, &c) in row.counts.iter().enumerate() {
                ensure(t.get(n, k) == BigUint::from(c), || {
                    format!("a {a} n {n} k {k}: table {} oracle {c}", t.get(n, k))
                })?;
            }
        }
    }
    Ok(format!("n <= {n_max}, a <= {a_max}"))
}

pub fn small_cycle_oracle(b_max: usize, cap_max: usize) -> Check {
    for cap in 1..=cap_max {
        let m = SmallCycleTable::build(cap, b_max, b_max).map_err(|e| e.to_string())?;
        for b in 0..=b_max {
            let row = brute_force_small_cycle(cap, b).map_err(|e| e.to_string())?;
            for (i, &c) in row.iter().enumerate() {
                ensure(m.get(i, b) == BigUint::from(c), || {
                    format!("cap {cap} i {i} b {b}")
                })?;
            }
        }
    }
    Ok(format!("b <= {b_max}, cap <= {cap_max}"))
}

pub fn sieve_identity_chain(n_max: usize, a_max: usize) -> Check {
    for a in 0..=a_max {
        let t = table(a, n_max)?;
        let sieve = InclusionExclusion::new(a, n_max).map_err(|e| e.to_string())?;
        for n in 0..=n_max {
            for k in 0..=n {
                let s = sieve.signed_count(n, k);
                ensure(s == BigInt::from(t.get(n, k)), || {
                    format!("a {a} n {n} k {k}: sieve {s}")
                })?;
            }
        }
    }
    Ok(format!("n <= {n_max}, a <= {a_max}"))
}

pub fn row_sum_factorial(n_max: usize) -> Check {
    let t = table(0, n_max)?;
    for n in 0..=n_max {
        ensure(t.row_sum(n) == Some(factorial(n)), || format!("n {n}"))?;
    }
    Ok(format!("n <= {n_max}"))
}

pub fn stirling_recurrence(n_max: usize) -> Check {
    let t = table(0, n_max)?;
    for n in 1..=n_max {
        ensure(t.get(n, 0).is_zero(), || format!("c({n},0) != 0"))?;
        for k in 1..=n {
            let expect = t.get(n - 1, k - 1) + t.get(n - 1, k) * (n - 1);
            ensure(t.get(n, k) == expect, || format!("c({n},{k})"))?;
        }
    }
    Ok(format!("n <= {n_max}"))
}

pub fn small_cycle_types(b_max: usize, cap_max: usize) -> Check {
    for cap in 1..=cap_max {
        let m = SmallCycleTable::build(cap, b_max, b_max).map_err(|e| e.to_string())?;
        for b in 0..=b_max {
            let mut by_i = vec![BigUint::zero(); b + 1];
            for ct in CycleType::enumerate(b, cap) {
                by_i[ct.cycle_count()] += cycle_type_count(&ct);
            }
            for (i, c) in by_i.iter().enumerate() {
                ensure(&m.get(i, b) == c, || format!("cap {cap} i {i} b {b}"))?;
            }
        }
    }
    Ok(format!("b <= {b_max}, cap <= {cap_max}"))
}

pub fn stirling_alternating(n_max: usize) -> Check {
    let t = table(0, n_max)?;
    for n in 2..=n_max {
        let v = eval_integer(&poly(&t, n), &BigInt::from(-1));
        ensure(v.is_zero(), || format!("n {n}: {v}"))?;
    }
    Ok(format!("2 <= n <= {n_max}"))
}

/// The integer nearest to `n!/e`, from two-sided rational bounds on `e`.
///
/// `e` lies in `[S_M, S_M + 2/(M+1)!]` for the partial sum `S_M` of `1/i!`.
/// Returns `None` if the bounds do not pin down a unique nearest integer.
pub fn nearest_integer_to_factorial_over_e(n: usize) -> Option<BigUint> {
    let m = n + 30;
    let mut e_lo = BigRational::zero();
    let mut fact = BigInt::one();
    for i in 0..=m {
        if i > 0 {
            fact *= i;
        }
        e_lo += BigRational::new(BigInt::one(), fact.clone());
    }
    let e_hi = &e_lo + BigRational::new(BigInt::from(2), fact * (m + 1));
    let nf = BigRational::from_integer(BigInt::from(factorial(n)));
    let (x_lo, x_hi) = (&nf / &e_hi, &nf / &e_lo);
    let half = ratio(1, 2);
    let lo = (&x_lo + &half).floor();
    let hi = (&x_hi + &half).floor();
    (lo == hi).then(|| lo.to_integer().to_biguint().expect("positive"))
}

pub fn nearest_over_e(n_max: usize) -> Check {
    let t = table(1, n_max)?;
    for n in 1..=n_max {
        let d = derangement_count(n, 1).map_err(|e| e.to_string())?;
        ensure(t.row_sum(n) == Some(d.clone()), || {
            format!("n {n}: alternating formula disagrees with row sum")
        })?;
        let near = nearest_integer_to_factorial_over_e(n)
            .ok_or_else(|| format!("n {n}: bounds on n!/e too loose"))?;
        ensure(d == near, || format!("n {n}: D(n) = {d}, nearest {near}"))?;
    }
    Ok(format!("1 <= n <= {n_max}"))
}

pub fn leading_closed_form(n_max: usize) -> Check {
    let t = table(1, n_max)?;
    for n in 2..=n_max {
        let closed = leading_coefficient(n, 1).map_err(|e| e.to_string())?;
        ensure(t.get(n, n / 2) == closed, || format!("n {n}"))?;
    }
    Ok(format!("2 <= n <= {n_max}"))
}

pub fn value_at_minus_one(n_max: usize) -> Check {
    let t = table(1, n_max)?;
    for n in 1..=n_max {
        let v = eval_integer(&poly(&t, n), &BigInt::from(-1));
        ensure(v == BigInt::from(1 - n as i64), || format!("n {n}: {v}"))?;
    }
    Ok(format!("1 <= n <= {n_max}"))
}

pub fn bounded_formula(n_max: usize, t_max: usize, families: &[usize]) -> Check {
    for &a in families {
        let tab = table(a, n_max)?;
        let eval = NegativeEvaluator::new(a, n_max).map_err(|e| e.to_string())?;
        for t in 1..=t_max {
            for n in 2.max(t + 1)..=n_max {
                let direct = eval_integer(&poly(&tab, n), &-BigInt::from(t));
                let bounded = eval.eval(n, t).map_err(|e| e.to_string())?;
                ensure(direct == bounded, || format!("a {a} t {t} n {n}"))?;
            }
        }
    }
    Ok(format!("n <= {n_max}, t <= {t_max}, a in {families:?}"))
}

pub fn rising_roots(n_max: usize) -> Check {
    let t = table(0, n_max)?;
    for n in 2..=n_max {
        let p = poly(&t, n);
        for m in 1..n {
            ensure(eval_integer(&p, &-BigInt::from(m)).is_zero(), || {
                format!("C_{n}(-{m}) != 0")
            })?;
        }
    }
    Ok(format!("n <= {n_max}"))
}

pub fn difference_vanishing(t_max: usize, n_lo: usize, n_hi: usize) -> Check {
    let mut degrees = Vec::new();
    for t in 1..=t_max {
        let rep = finite_difference_profile(t, 1, n_lo, n_hi).map_err(|e| e.to_string())?;
        ensure(rep.vanishing_order == t + 1, || {
            format!("t {t}: vanishing order {}", rep.vanishing_order)
        })?;
        ensure(rep.reproduces_window(), || {
            format!("t {t}: window not reproduced")
        })?;
        degrees.push(rep.vanishing_order - 1);
    }
    Ok(format!(
        "a = 1, window [{n_lo}, {n_hi}], degrees {degrees:?}"
    ))
}

pub fn normalized_modulus(n_max: usize) -> Check {
    let points: Vec<UnitPoint> = (0..24).map(|s| UnitPoint::root_of_unity(s, 24)).collect();
    for a in 0..=2 {
        let t = table(a, n_max)?;
        for n in (a + 1)..=n_max {
            let p = poly(&t, n);
            let at_one = eval_unit_circle(&p, UnitPoint::one(), true).map_err(|e| e.to_string())?;
            ensure((at_one.re - 1.0).abs() < 1e-12 && at_one.im == 0.0, || {
                format!("a {a} n {n}: value at 1 is {at_one}")
            })?;
            for &v in &points {
                let z = eval_unit_circle(&p, v, true).map_err(|e| e.to_string())?;
                ensure(z.norm() <= 1.0 + 1e-9, || format!("a {a} n {n}: |{z}| > 1"))?;
            }
        }
    }
    Ok(format!("a <= 2, n <= {n_max}, 24th roots of unity"))
}

pub fn no_positive_roots(n_max: usize) -> Check {
    let big = BigRational::from_integer(BigInt::from(10).pow(6));
    for a in 0..=2 {
        let t = table(a, n_max)?;
        for n in (a + 1)..=n_max {
            let chain =
                SturmChain::from_cycle_polynomial(&poly(&t, n)).map_err(|e| e.to_string())?;
            let c = chain.count(&BigRational::zero(), &big);
            ensure(c == 0, || format!("a {a} n {n}: {c} positive roots"))?;
        }
    }
    Ok(format!("a <= 2, n <= {n_max}"))
}

/// Real-rootedness and location: every root is real, non-positive and inside
/// the Cauchy bound, with at most `n / 2` distinct values.
pub fn root_count_range(n_max: usize) -> Check {
    let t = table(1, n_max)?;
    let mut beyond_n = Vec::new();
    for n in 2..=n_max {
        let p = poly(&t, n);
        let chain = SturmChain::from_cycle_polynomial(&p).map_err(|e| e.to_string())?;
        let total = chain.total_distinct();
        let simple = chain.polys()[0].degree().unwrap_or(0) + usize::from(chain.zero_order() > 0);
        ensure(total == simple, || {
            format!("n {n}: {total} distinct real roots, {simple} distinct roots")
        })?;
        let lo = BigRational::from_integer(-chain.root_bound());
        let inside = chain.count(&lo, &BigRational::zero());
        ensure(inside == total, || {
            format!("n {n}: {inside} roots in ({lo}, 0], {total} in all")
        })?;
        ensure(total <= n / 2, || format!("n {n}: {total} distinct roots"))?;
        let minus_n = BigRational::from_integer(-BigInt::from(n));
        if chain.count(&minus_n, &BigRational::zero()) < total {
            beyond_n.push(n);
        }
    }
    Ok(format!(
        "a = 1, 2 <= n <= {n_max}; roots below -n for {} values of n",
        beyond_n.len()
    ))
}

pub fn pigeonhole_dominance(n_lo: usize, n_hi: usize, t_max: usize) -> Check {
    let tab = table(1, n_hi)?;
    for n in n_lo..=n_hi {
        let p = poly(&tab, n);
        let chain = SturmChain::from_cycle_polynomial(&p).map_err(|e| e.to_string())?;
        for t in 1..=t_max {
            let bound = pigeonhole_bound_for(&p, t).map_err(|e| e.to_string())?;
            let radius = BigRational::from_float(bound).ok_or("non-finite bound")?;
            let ok = has_root_within_with(&chain, t, &radius);
            ensure(ok, || format!("n {n} t {t}: no root within {bound}"))?;
        }
    }
    Ok(format!("n in [{n_lo}, {n_hi}], t <= {t_max}"))
}

/// Repeated halving of a witness keeps a nested interval with a certified root.
pub fn monotone_refinement(n_max: usize, t_max: usize) -> Check {
    let tab = table(1, n_max)?;
    let mut steps = 0;
    for n in 2..=n_max {
        let p = poly(&tab, n);
        let chain = SturmChain::from_cycle_polynomial(&p).map_err(|e| e.to_string())?;
        for t in 1..=t_max {
            let Some(mut w) =
                isolate_root_near_with(&chain, &p, t, &ratio(1, 2)).map_err(|e| e.to_string())?
            else {
                continue;
            };
            for _ in 0..20 {
                let next = refine_witness_with(&chain, &w, &(w.width() / ratio(2, 1)));
                ensure(next.sturm_count >= 1, || {
                    format!("n {n} t {t}: empty sub-interval")
                })?;
                ensure(next.lo >= w.lo && next.hi <= w.hi, || {
                    format!("n {n} t {t}: sub-interval not nested")
                })?;
                w = next;
                steps += 1;
            }
        }
    }
    Ok(format!(
        "a = 1, n <= {n_max}, t <= {t_max}, {steps} halvings"
    ))
}

fn threshold_t1() -> Check {
    let scan = threshold_scan(1, &ratio(1, 10), 1, 60).map_err(|e| e.to_string())?;
    match scan {
        Some(s) if s.threshold <= 6 => Ok(format!("N = {} through 60", s.threshold)),
        Some(s) => Err(format!("N = {}", s.threshold)),
        None => Err("no certified range".into()),
    }
}

pub fn residue_exactness(n_max: usize, q_max: usize) -> Check {
    for a in 0..=2 {
        let t = table(a, n_max)?;
        for n in (a + 1)..=n_max {
            let total = t.row_sum(n).expect("row");
            for q in 1..=q_max {
                let rep = residue_sums_from_table(&t, n, q).map_err(|e| e.to_string())?;
                ensure(rep.total == total, || format!("a {a} n {n} q {q}"))?;
                let s: BigRational = rep.ratios.iter().sum();
                ensure(s.is_one(), || format!("a {a} n {n} q {q}: ratios sum {s}"))?;
            }
        }
    }
    Ok(format!("a <= 2, n <= {n_max}, q <= {q_max}"))
}

pub fn filter_identity(n_max: usize, q_max: usize) -> Check {
    let mut worst = 0.0f64;
    for a in 0..=2 {
        let t = table(a, n_max)?;
        for n in (a + 1)..=n_max {
            for q in 1..=q_max {
                for r in 0..q {
                    let c = unity_filter_check_from_table(&t, n, q, r, DEFAULT_FILTER_TOLERANCE)
                        .map_err(|e| e.to_string())?;
                    worst = worst.max(c.residual);
                }
            }
        }
    }
    Ok(format!(
        "a <= 2, n <= {n_max}, q <= {q_max}, worst residual {worst:e}"
    ))
}

pub fn product_formula(n_max: usize) -> Check {
    let points = [
        UnitPoint::new(0.0, 1.0).expect("i"),
        UnitPoint::root_of_unity(1, 3),
        UnitPoint::root_of_unity(1, 5),
    ];
    let t = table(0, n_max)?;
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        let p = poly(&t, n);
        for &v in &points {
            let direct = eval_unit_circle(&p, v, true)
                .map_err(|e| e.to_string())?
                .norm_sqr();
            let product = magnitude_product(v, n);
            let rel = (direct - product).abs() / product.abs().max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || {
                format!("n {n} v {v:?}: relative error {rel:e}")
            })?;
        }
    }
    Ok(format!("n <= {n_max}, worst relative error {worst:e}"))
}

pub fn parity_closed_forms(n_max: usize) -> Check {
    let perms = table(0, n_max)?;
    let ders = table(1, n_max)?;
    for n in 2..=n_max {
        let rep = residue_sums_from_table(&perms, n, 2).map_err(|e| e.to_string())?;
        let half = factorial(n) / 2u32;
        ensure(rep.counts[0] == half && rep.counts[1] == half, || {
            format!("a 0 n {n}")
        })?;
        let rep = residue_sums_from_table(&ders, n, 2).map_err(|e| e.to_string())?;
        let diff = BigInt::from(rep.counts[1].clone()) - BigInt::from(rep.counts[0].clone());
        ensure(diff.abs() == BigInt::from(n - 1), || {
            format!("a 1 n {n}: {diff}")
        })?;
    }
    Ok(format!("2 <= n <= {n_max}"))
}

/// `max_deviation(150) < max_deviation(30)`, or both exactly zero.
pub fn decay_check() -> Check {
    let mut lines = Vec::new();
    for a in 0..=1 {
        let t = table(a, 150)?;
        for q in 2..=4 {
            let small = residue_sums_from_table(&t, 30, q).map_err(|e| e.to_string())?;
            let large = residue_sums_from_table(&t, 150, q).map_err(|e| e.to_string())?;
            let both_zero = small.max_deviation.is_zero() && large.max_deviation.is_zero();
            ensure(
                large.max_deviation < small.max_deviation || both_zero,
                || format!("a {a} q {q}: no decay"),
            )?;
            lines.push(format!("a{a}q{q}"));
        }
    }
    Ok(lines.join(" "))
}

pub fn good_root_dominance(n_lo: usize, n_hi: usize, h_max: usize) -> Check {
    let v = UnitPoint::root_of_unity(1, 3);
    let tab = table(1, n_hi)?;
    let mut certified = 0;
    for n in n_lo..=n_hi {
        let p = poly(&tab, n);
        for h in 1..=h_max {
            match good_root_bound_for(&p, v, h) {
                Ok(g) => {
                    ensure(g.holds(), || {
                        format!(
                            "n {n} h {h}: actual {} > H {} (slack {})",
                            g.actual, g.bound, g.slack
                        )
                    })?;
                    certified += 1;
                }
                Err(crate::error::CensusError::InsufficientN(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    ensure(certified > 0, || "no certified cases".into())?;
    Ok(format!(
        "n in [{n_lo}, {n_hi}], h <= {h_max}, {certified} certified cases"
    ))
}
