//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then asserts.
//!
//! Run with `cargo test -p cycle-census --test acceptance -- --nocapture` to see the lines.

use cycle_census::balance::{
    good_root_bound_for, magnitude_product, residue_sums_from_table, unity_filter_check_from_table,
};
use cycle_census::census::{factorial, leading_coefficient};
use cycle_census::genfunc::{eval_integer, NegativeEvaluator};
use cycle_census::oracle::brute_force_census;
use cycle_census::rootloc::{has_root_within_with, pigeonhole_bound_for, ratio};
use cycle_census::verify::nearest_integer_to_factorial_over_e;
use cycle_census::{
    build_polynomial, derangement_count, eval_exact, eval_unit_circle, finite_difference_profile,
    threshold_scan, CensusError, CensusTable, CyclePolynomial, SturmChain, UnitPoint,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Check = Result<String, String>;

fn report(id: &str, check: Check) {
    match check {
        Ok(detail) => println!("PASS criterion {id}: {detail}"),
        Err(detail) => {
            println!("FAIL criterion {id}: {detail}");
            panic!("criterion {id} failed: {detail}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(a: usize, n: usize) -> CensusTable {
    CensusTable::build(a, n).expect("table within limits")
}

fn poly(t: &CensusTable, n: usize) -> CyclePolynomial {
    CyclePolynomial::from_table(t, n).expect("row in table")
}

#[test]
fn c01_oracle_equivalence() {
    let check = || -> Check {
        for a in 0..=3 {
            let t = table(a, 9);
            for n in 0..=9 {
                let row = brute_force_census(n, a).map_err(|e| e.to_string())?;
                for k in 0..=n {
                    ensure(t.get(n, k) == BigUint::from(row.counts[k]), || {
                        format!(
                            "a {a} n {n} k {k}: table {} oracle {}",
                            t.get(n, k),
                            row.counts[k]
                        )
                    })?;
                }
            }
        }
        Ok("n <= 9, a in 0..=3, every k".into())
    };
    report("1", check());
}

#[test]
fn c02_closed_forms() {
    let check = || -> Check {
        for n in 1..=30 {
            let d = derangement_count(n, 1).map_err(|e| e.to_string())?;
            let near = nearest_integer_to_factorial_over_e(n).ok_or("bounds on n!/e too loose")?;
            ensure(d == near, || format!("n {n}: D(n) {d} vs nearest {near}"))?;
        }
        let t = table(1, 200);
        for n in 2..=200usize {
            // (n-1)!! for even n, (n-1)/3 * n!! for odd n, computed by explicit products
            let expected = if n % 2 == 0 {
                (1..n).step_by(2).map(BigUint::from).product::<BigUint>()
            } else {
                let odd: BigUint = (1..=n).step_by(2).map(BigUint::from).product();
                odd * (n - 1) / 3u32
            };
            ensure(t.get(n, n / 2) == expected, || {
                format!("n {n}: table leading coefficient")
            })?;
            ensure(leading_coefficient(n, 1).ok() == Some(expected), || {
                format!("n {n}: leading_coefficient")
            })?;
        }
        Ok("D(n) nearest n!/e for n <= 30; leading coefficients for n <= 200".into())
    };
    report("2", check());
}

#[test]
fn c03_value_at_minus_one() {
    let check = || -> Check {
        let t = table(1, 300);
        let x = ratio(-1, 1);
        for n in 1..=300 {
            let v = eval_exact(&poly(&t, n), &x);
            ensure(v == ratio(1 - n as i64, 1), || format!("n {n}: {v}"))?;
        }
        Ok("D_n(-1) = 1 - n for 1 <= n <= 300".into())
    };
    report("3", check());
}

#[test]
fn c04a_difference_vanishing_derangements() {
    let check = || -> Check {
        let mut degrees = Vec::new();
        for t in 1..=5 {
            let rep = finite_difference_profile(t, 1, 1, 40).map_err(|e| format!("t {t}: {e}"))?;
            ensure(rep.vanishing_order == t + 1, || {
                format!("t {t}: vanishing order {}", rep.vanishing_order)
            })?;
            ensure(rep.reproduces_window(), || {
                format!("t {t}: window not reproduced")
            })?;
            degrees.push(rep.degree());
        }
        Ok(format!("a = 1, n in [1, 40], degrees {degrees:?}"))
    };
    report("4 (a = 1)", check());
}

#[test]
fn c04b_difference_vanishing_two_derangements() {
    let check = || -> Check {
        let mut orders = Vec::new();
        for t in 1..=3 {
            let rep = finite_difference_profile(t, 2, 1, 40).map_err(|e| format!("t {t}: {e}"))?;
            ensure(rep.vanishing_order <= 12, || {
                format!("t {t}: vanishing order {}", rep.vanishing_order)
            })?;
            ensure(rep.reproduces_window(), || {
                format!("t {t}: window not reproduced")
            })?;
            orders.push(rep.vanishing_order);
        }
        Ok(format!("a = 2, n in [1, 40], vanishing orders {orders:?}"))
    };
    report("4 (a = 2)", check());
}

#[test]
fn c05_bounded_negative_formula() {
    let check = || -> Check {
        let mut compared = 0usize;
        for a in [1, 2] {
            let t = table(a, 120);
            let eval = NegativeEvaluator::new(a, 120).map_err(|e| e.to_string())?;
            for s in 1..=5usize {
                let x = ratio(-(s as i64), 1);
                // the formula is defined for n > t
                for n in 2.max(s + 1)..=120 {
                    let direct = eval_exact(&poly(&t, n), &x);
                    let bounded = eval.eval(n, s).map_err(|e| e.to_string())?;
                    ensure(direct == BigRational::from_integer(bounded.clone()), || {
                        format!("a {a} t {s} n {n}: {bounded} vs {direct}")
                    })?;
                    compared += 1;
                }
            }
        }
        Ok(format!(
            "{compared} exact comparisons, 2 <= n <= 120, t <= 5, a in {{1, 2}}"
        ))
    };
    report("5", check());
}

#[test]
fn c06a_threshold_t1() {
    let check = || -> Check {
        let scan = threshold_scan(1, &ratio(1, 10), 1, 60)
            .map_err(|e| e.to_string())?
            .ok_or("no certified range")?;
        ensure(scan.threshold <= 6 && scan.certified_through == 60, || {
            format!("N = {} through {}", scan.threshold, scan.certified_through)
        })?;
        Ok(format!(
            "N = {} through 60, worst radius {}",
            scan.threshold, scan.worst_radius
        ))
    };
    report("6 (t = 1, eps = 0.1)", check());
}

#[test]
fn c06b_threshold_scans() {
    let check = || -> Check {
        let expected = [(1usize, 7usize), (2, 11), (3, 15)];
        let mut found = Vec::new();
        for (t, n_expected) in expected {
            let scan = threshold_scan(t, &ratio(1, 20), 1, 100)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("t {t}: no certified range"))?;
            ensure(
                scan.threshold <= 60 && scan.certified_through == 100,
                || format!("t {t}: N = {}", scan.threshold),
            )?;
            ensure(scan.threshold == n_expected, || {
                format!("t {t}: N = {}, expected {n_expected}", scan.threshold)
            })?;
            found.push((t, scan.threshold));
        }
        Ok(format!("eps = 0.05 through n = 100, (t, N) = {found:?}"))
    };
    report("6 (eps = 0.05)", check());
}

#[test]
fn c06c_pigeonhole_dominance() {
    let check = || -> Check {
        let tab = table(1, 100);
        for n in 6..=100 {
            let p = poly(&tab, n);
            let chain = SturmChain::from_cycle_polynomial(&p).map_err(|e| e.to_string())?;
            for t in 1..=3 {
                let bound = pigeonhole_bound_for(&p, t).map_err(|e| e.to_string())?;
                let radius = BigRational::from_float(bound).ok_or("non-finite bound")?;
                ensure(has_root_within_with(&chain, t, &radius), || {
                    format!("n {n} t {t}: no root within {bound}")
                })?;
            }
        }
        Ok("n in [6, 100], t in {1, 2, 3}".into())
    };
    report("6 (pigeonhole)", check());
}

#[test]
fn c07_balance_exactness() {
    let check = || -> Check {
        let perms = table(0, 200);
        let ders = table(1, 200);
        for n in 2..=200 {
            let half = factorial(n) / 2u32;
            let rep = residue_sums_from_table(&perms, n, 2).map_err(|e| e.to_string())?;
            ensure(rep.counts == [half.clone(), half], || format!("a 0 n {n}"))?;
            let rep = residue_sums_from_table(&ders, n, 2).map_err(|e| e.to_string())?;
            let diff = BigInt::from(rep.counts[0].clone()) - BigInt::from(rep.counts[1].clone());
            ensure(diff.abs() == BigInt::from(n - 1), || {
                format!("a 1 n {n}: difference {diff}")
            })?;
        }
        Ok("2 <= n <= 200".into())
    };
    report("7", check());
}

#[test]
fn c08_balance_convergence() {
    let check = || -> Check {
        let mut lines = Vec::new();
        for a in 0..=1 {
            let t = table(a, 150);
            for q in 2..=4 {
                let small = residue_sums_from_table(&t, 30, q).map_err(|e| e.to_string())?;
                let large = residue_sums_from_table(&t, 150, q).map_err(|e| e.to_string())?;
                // exact balance (both deviations zero) counts as converged
                let both_zero = small.max_deviation.is_zero() && large.max_deviation.is_zero();
                ensure(
                    large.max_deviation < small.max_deviation || both_zero,
                    || {
                        format!(
                            "a {a} q {q}: {} at 150 vs {} at 30",
                            large.max_deviation, small.max_deviation
                        )
                    },
                )?;
                if q == 3 {
                    ensure(large.max_deviation < ratio(1, 100), || {
                        format!("a {a} q 3: deviation {} at 150", large.max_deviation)
                    })?;
                }
                lines.push(format!("a{a}q{q}"));
            }
        }
        Ok(lines.join(" "))
    };
    report("8", check());
}

#[test]
fn c09_filter_identity() {
    let check = || -> Check {
        let mut worst = 0.0f64;
        for a in 0..=2 {
            let t = table(a, 60);
            for n in (a + 1)..=60 {
                for q in 1..=6 {
                    for r in 0..q {
                        let c = unity_filter_check_from_table(&t, n, q, r, 1e-9)
                            .map_err(|e| format!("a {a} n {n} q {q} r {r}: {e}"))?;
                        ensure(c.residual < 1e-9, || format!("a {a} n {n} q {q} r {r}"))?;
                        worst = worst.max(c.residual);
                    }
                }
            }
        }
        Ok(format!("worst residual {worst:e}"))
    };
    report("9", check());
}

#[test]
fn c10_product_formula() {
    let check = || -> Check {
        let points = [
            UnitPoint::new(0.0, 1.0).expect("i"),
            UnitPoint::root_of_unity(1, 3),
            UnitPoint::root_of_unity(1, 5),
        ];
        let t = table(0, 50);
        let mut worst = 0.0f64;
        for n in 1..=50 {
            let p = poly(&t, n);
            for &v in &points {
                let direct = eval_unit_circle(&p, v, true)
                    .map_err(|e| e.to_string())?
                    .norm_sqr();
                let product = magnitude_product(v, n);
                let rel = (direct - product).abs() / product;
                ensure(rel <= 1e-10, || {
                    format!("n {n} v {v:?}: relative error {rel:e}")
                })?;
                worst = worst.max(rel);
            }
        }
        Ok(format!("n <= 50, worst relative error {worst:e}"))
    };
    report("10", check());
}

#[test]
fn c11_good_root_dominance() {
    let check = || -> Check {
        let v = UnitPoint::root_of_unity(1, 3);
        let tab = table(1, 80);
        let (mut certified, mut skipped) = (0, 0);
        for n in 20..=80 {
            let p = poly(&tab, n);
            for h in 1..=3 {
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
                    Err(CensusError::InsufficientN(_)) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
        ensure(certified > 0, || "no certified cases".into())?;
        Ok(format!(
            "{certified} certified, {skipped} without good roots"
        ))
    };
    report("11", check());
}

#[test]
fn spot_values() {
    // small fixed points that every criterion above leans on
    let d5 = build_polynomial(1, 5).unwrap();
    assert_eq!(eval_integer(&d5, &BigInt::from(-2)), BigInt::from(32));
    assert_eq!(derangement_count(4, 1).unwrap(), BigUint::from(9u32));
    assert!(eval_exact(&build_polynomial(0, 4).unwrap(), &ratio(-3, 1)).is_zero());
}
