//! Truncated formal distributions with scalar or operator coefficients.
//!
//! A [`FormalDistribution`] stores coefficients on a box `window ± guard` of
//! exponent vectors, together with support metadata (one-sided bounds, a tie
//! `Σ e = s` for ratio kernels). Products are never formed blindly: every
//! coefficient is extracted through [`product_coefficient`], which refuses to
//! answer when a contributing operand coefficient lies outside storage.

mod coeff;
mod dist;
mod engine;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::report::{Counterexample, VerificationOutcome};
use crate::scalar_field::{ScalarError, Var, Window};

pub use coeff::Coeff;
pub use dist::{
    delta, matrix_series, matrix_two_sided_difference, mode_window, polynomial, ratio_kernel, scalar_series,
    two_sided_difference, FormalDistribution, Support,
};
pub use engine::{check_identity, product_coefficient, window_points, Expr, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistError {
    #[error("coefficient at {exponents:?} lies outside stored window and guard")]
    OutOfRange { exponents: Vec<i32> },
    #[error("guard too small for {variable}: exponents {needed:?} needed, {stored:?} stored")]
    InsufficientGuard {
        variable: String,
        needed: (i32, i32),
        stored: (i32, i32),
    },
    #[error("coefficient of a product is an infinite sum in {variable}")]
    Unbounded { variable: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Cauchy product `d1 · d2`, coefficients multiplied with `d1` on the left.
///
/// The result is stored on the common window widened by the largest guard
/// for which every stored coefficient is computable; coefficients inside
/// the window that are not computable are an error.
pub fn dist_mul(d1: &FormalDistribution, d2: &FormalDistribution) -> Result<FormalDistribution, DistError> {
    let mut vars: Vec<Var> = d1.variables().to_vec();
    for v in d2.variables() {
        if !vars.contains(v) {
            vars.push(*v);
        }
    }
    let slot_window = |v: Var| -> Window {
        let mut w: Option<Window> = None;
        for d in [d1, d2] {
            if let Some(i) = d.position(v) {
                let dw = d.window()[i];
                w = Some(match w {
                    None => dw,
                    Some(x) => Window::new(x.lo.max(dw.lo), x.hi.min(dw.hi)),
                });
            }
        }
        w.expect("variable occurs in an operand")
    };
    let windows: Vec<Window> = vars.iter().map(|v| slot_window(*v)).collect();
    let max_guard = [d1, d2]
        .iter()
        .flat_map(|d| d.guard().iter().copied())
        .min()
        .unwrap_or(0);
    let support = product_support(&vars, d1, d2);
    let factors = [d1.clone(), d2.clone()];
    let mut guard = max_guard;
    loop {
        match product_on_box(&factors, &vars, &windows, guard) {
            Ok(coefficients) => {
                return Ok(FormalDistribution::new(
                    vars.clone(),
                    coefficients,
                    windows,
                    vec![guard; vars.len()],
                    support,
                ))
            }
            Err(e) if guard == 0 => return Err(e),
            Err(_) => guard -= 1,
        }
    }
}

fn product_on_box(
    factors: &[FormalDistribution],
    vars: &[Var],
    windows: &[Window],
    guard: i32,
) -> Result<BTreeMap<Vec<i32>, Coeff>, DistError> {
    let mut points: Vec<Vec<i32>> = vec![Vec::new()];
    for w in windows {
        let store = w.widen(guard);
        points = points
            .into_iter()
            .flat_map(|p| {
                store.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    let mut out = BTreeMap::new();
    for p in points {
        let target: BTreeMap<Var, i32> = vars.iter().copied().zip(p.iter().copied()).collect();
        let c = product_coefficient(factors, &target)?;
        if !c.is_zero() {
            out.insert(p, c);
        }
    }
    Ok(out)
}

fn product_support(vars: &[Var], d1: &FormalDistribution, d2: &FormalDistribution) -> Support {
    let bounds = vars
        .iter()
        .map(|v| {
            let mut lo = Some(0);
            let mut hi = Some(0);
            for d in [d1, d2] {
                if let Some(i) = d.position(*v) {
                    let (a, b) = d.support().bounds[i];
                    lo = lo.zip(a).map(|(x, y)| x + y);
                    hi = hi.zip(b).map(|(x, y)| x + y);
                }
            }
            (lo, hi)
        })
        .collect();
    Support { bounds, tie: None }
}

/// Exact comparison of two distributions on the intersection of their
/// windows. The first differing exponent vector (ordered like `d1`'s
/// variables) is reported with both coefficients.
pub fn dist_equal(d1: &FormalDistribution, d2: &FormalDistribution) -> VerificationOutcome {
    let same_vars =
        d1.variables().len() == d2.variables().len() && d1.variables().iter().all(|v| d2.position(*v).is_some());
    if !same_vars {
        return VerificationOutcome::fail(None).with_note("distributions have different variables");
    }
    let d2 = d2.permute(d1.variables());
    let windows: Vec<Window> = d1
        .window()
        .iter()
        .zip(d2.window())
        .map(|(a, b)| Window::new(a.lo.max(b.lo), a.hi.min(b.hi)))
        .collect();
    let mut points: Vec<Vec<i32>> = vec![Vec::new()];
    for w in &windows {
        points = points
            .into_iter()
            .flat_map(|p| {
                w.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    for p in points {
        let a = d1.coeff(&p).expect("window lies inside storage");
        let b = d2.coeff(&p).expect("window lies inside storage");
        if !a.sub(&b).is_zero() {
            return VerificationOutcome::fail(Some(Counterexample {
                coordinates: p.iter().map(|&x| x as i64).collect(),
                lhs: a.to_string(),
                rhs: b.to_string(),
            }));
        }
    }
    VerificationOutcome::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_tensor::{GradedMatrix, GradedSpace, ParityStructure};
    use crate::report::Status;
    use crate::scalar_field::{Direction, LaurentPoly, Monomial, RationalFunction};

    fn rf(v: Var) -> RationalFunction {
        RationalFunction::var(v)
    }

    fn at(pairs: &[(Var, i32)]) -> BTreeMap<Var, i32> {
        pairs.iter().copied().collect()
    }

    fn scalar(c: Coeff) -> RationalFunction {
        match c {
            Coeff::Scalar(s) => s,
            Coeff::Matrix(_) => panic!("expected a scalar"),
        }
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(Var::W, Var::Z, Monomial::one(), mode_window(8), 2);
        assert_eq!(scalar(d.coeff(&[-3, 3]).unwrap()), RationalFunction::one());
        assert!(d.coeff(&[-3, 2]).unwrap().is_zero());
        let d2 = delta(Var::W, Var::Z, Monomial::pow(Var::Q, 2), mode_window(8), 2);
        for k in -4..=3 {
            assert_eq!(scalar(d2.coeff(&[-k, k]).unwrap()), crate::scalar_field::qpow(2 * k));
        }
        let level_zero = delta(Var::W, Var::Z, Monomial::pow(Var::C, 0), mode_window(8), 2);
        assert!(dist_equal(&level_zero, &d).is_pass());
    }

    #[test]
    fn access_outside_storage_raises() {
        let d = delta(Var::W, Var::Z, Monomial::one(), mode_window(4), 1);
        assert!(matches!(d.coeff(&[-9, 9]), Err(DistError::OutOfRange { .. })));
        // off the tie the coefficient is known to vanish
        assert!(d.coeff(&[-9, 8]).unwrap().is_zero());
    }

    #[test]
    fn two_sided_difference_of_simple_pole() {
        // 1/(z - w) = z^{-1} δ(w/z): coefficient of z^j is w^{-j-1} for every j
        let f = RationalFunction::one() / (rf(Var::Z) - rf(Var::W));
        let w = mode_window(6);
        let d = two_sided_difference(&f, Var::Z, w, 6).unwrap();
        for j in w.widen(6).iter() {
            let c = scalar(d.coeff(&[j]).unwrap());
            assert_eq!(c, RationalFunction::var_pow(Var::W, -j - 1), "exponent {j}");
        }
    }

    #[test]
    fn two_sided_difference_vanishes_exactly_on_laurent_polynomials() {
        let z = rf(Var::Z);
        let w = rf(Var::W);
        let polys = [
            z.clone() * z.clone() - w.clone(),
            RationalFunction::var_pow(Var::Z, -3) + rf(Var::Q),
            RationalFunction::int(7),
        ];
        let non_polys = [
            RationalFunction::one() / (z.clone() - w.clone()),
            RationalFunction::one() / (z.clone() * z.clone() + RationalFunction::one()),
            w.clone() / (z.clone() - rf(Var::A)),
        ];
        for f in &polys {
            let d = two_sided_difference(f, Var::Z, mode_window(6), 4).unwrap();
            assert_eq!(d.entries().count(), 0, "{f}");
        }
        for f in &non_polys {
            let d = two_sided_difference(f, Var::Z, mode_window(6), 4).unwrap();
            assert!(d.entries().count() > 0, "{f}");
        }
    }

    #[test]
    fn two_sided_difference_with_q_shift() {
        // 1/(zq - wq^{-1}) = q^{-1} z^{-1} δ(w q^{-2}/z): coefficient of z^{-k-1}
        // is q^{-1} (w q^{-2})^k for k >= 0
        let q = rf(Var::Q);
        let f = RationalFunction::one() / (rf(Var::Z) * q.clone() - rf(Var::W) / q.clone());
        let d = two_sided_difference(&f, Var::Z, mode_window(8), 8).unwrap();
        for k in -3..3 {
            let expected = crate::scalar_field::qpow(-1 - 2 * k) * RationalFunction::var_pow(Var::W, k);
            assert_eq!(scalar(d.coeff(&[-k - 1]).unwrap()), expected);
        }
    }

    #[test]
    fn product_in_distinct_variables_factorizes() {
        let w = mode_window(6);
        let f = scalar_series(
            &(RationalFunction::one() / (rf(Var::Z) - rf(Var::A))),
            Var::Z,
            Direction::AroundZero,
            w,
            3,
        )
        .unwrap();
        let g = scalar_series(
            &(RationalFunction::one() / (rf(Var::W) - rf(Var::B))),
            Var::W,
            Direction::AroundInfinity,
            w,
            3,
        )
        .unwrap();
        let p = dist_mul(&f, &g).unwrap();
        for a in w.iter() {
            for b in w.iter() {
                let lhs = p.coeff(&[a, b]).unwrap();
                let rhs = f.coeff(&[a]).unwrap().mul(&g.coeff(&[b]).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn delta_times_matrix_series_is_finite() {
        let ps = ParityStructure::new(1, 1).unwrap();
        let space = GradedSpace::single(ps);
        let m = GradedMatrix::diagonal(space, |i| {
            RationalFunction::one() / (rf(Var::W) - rf(Var::A)) * RationalFunction::int(i as i64 + 1)
        });
        let w = mode_window(6);
        let s = matrix_series(&m, Var::W, Direction::AroundZero, w, 6).unwrap();
        let d = delta(Var::W, Var::Z, Monomial::one(), w, 6);
        let p = dist_mul(&d, &s).unwrap();
        let c = p.coeff(&[0, 1]).unwrap();
        assert!(matches!(c, Coeff::Matrix(_)));
        assert!(!c.is_zero());
    }

    #[test]
    fn delta_substitution() {
        let w = mode_window(6);
        let g = RationalFunction::one() / (rf(Var::W) - rf(Var::A));
        let gz = RationalFunction::one() / (rf(Var::Z) - rf(Var::A));
        let d = delta(Var::W, Var::Z, Monomial::one(), w, 6);
        let lhs = Expr::product(vec![
            d.clone(),
            scalar_series(&g, Var::W, Direction::AroundZero, w, 6).unwrap(),
        ]);
        let rhs = Expr::product(vec![
            d,
            scalar_series(&gz, Var::Z, Direction::AroundZero, w, 6).unwrap(),
        ]);
        let out = check_identity(&lhs, &rhs, &[Var::Z, Var::W], w).unwrap();
        assert!(out.is_pass(), "{out:?}");
    }

    #[test]
    fn insufficient_guard_is_reported() {
        // delta(w/z) · f(w) with f a two-sided infinite tail: the w exponent is
        // pinned by the tie, but lies outside a zero-guard store
        let w = mode_window(4);
        let f = scalar_series(
            &(RationalFunction::one() / (rf(Var::W) - rf(Var::A))),
            Var::W,
            Direction::AroundZero,
            w,
            0,
        )
        .unwrap();
        let d = delta(Var::W, Var::Z, Monomial::one(), w, 0);
        let e = Expr::product(vec![d, f]);
        let err = e.coefficient(&at(&[(Var::Z, -2), (Var::W, 5)])).unwrap_err();
        assert!(matches!(err, DistError::InsufficientGuard { .. }), "{err:?}");
    }

    #[test]
    fn unbounded_sum_is_reported() {
        let w = mode_window(4);
        let f = scalar_series(
            &(RationalFunction::one() / (rf(Var::Z) - rf(Var::A))),
            Var::Z,
            Direction::AroundZero,
            w,
            2,
        )
        .unwrap();
        let g = scalar_series(
            &(RationalFunction::one() / (rf(Var::Z) - rf(Var::B))),
            Var::Z,
            Direction::AroundInfinity,
            w,
            2,
        )
        .unwrap();
        let err = Expr::product(vec![f, g]).coefficient(&at(&[(Var::Z, 0)])).unwrap_err();
        assert!(matches!(err, DistError::Unbounded { .. }));
    }

    #[test]
    fn associativity() {
        let w = mode_window(4);
        let f = scalar_series(
            &(RationalFunction::one() / (rf(Var::Z) - rf(Var::A))),
            Var::Z,
            Direction::AroundZero,
            w,
            4,
        )
        .unwrap();
        let g = scalar_series(
            &(RationalFunction::one() / (rf(Var::Z) - rf(Var::B))),
            Var::Z,
            Direction::AroundZero,
            w,
            4,
        )
        .unwrap();
        let h = polynomial(
            &(LaurentPoly::var(Var::Z) + LaurentPoly::var(Var::W)),
            &[Var::Z, Var::W],
            w,
            4,
        );
        let left = dist_mul(&dist_mul(&f, &g).unwrap(), &h).unwrap();
        let right = dist_mul(&f, &dist_mul(&g, &h).unwrap()).unwrap();
        assert!(dist_equal(&left, &right).is_pass());
    }

    #[test]
    fn window_monotonicity() {
        let g = RationalFunction::one() / (rf(Var::W) * rf(Var::Q) - rf(Var::A));
        let small = scalar_series(&g, Var::W, Direction::AroundZero, mode_window(4), 2).unwrap();
        let large = scalar_series(&g, Var::W, Direction::AroundZero, mode_window(10), 6).unwrap();
        for k in mode_window(4).widen(2).iter() {
            assert_eq!(small.coeff(&[k]).unwrap(), large.coeff(&[k]).unwrap());
        }
        let d = delta(Var::W, Var::Z, Monomial::one(), mode_window(4), 4);
        let d_large = delta(Var::W, Var::Z, Monomial::one(), mode_window(10), 6);
        let p = dist_mul(&d, &small).unwrap();
        let p_large = dist_mul(&d_large, &large).unwrap();
        assert!(dist_equal(&p, &p_large).is_pass());
    }

    #[test]
    fn dist_equal_reports_difference() {
        let d = delta(Var::W, Var::Z, Monomial::one(), mode_window(4), 1);
        assert!(dist_equal(&d, &d).is_pass());
        let zero = polynomial(&LaurentPoly::zero(), &[Var::Z, Var::W], mode_window(4), 1);
        let out = dist_equal(&d, &zero);
        assert_eq!(out.status, Status::Fail);
        let cx = out.counterexample.unwrap();
        assert_eq!(cx.coordinates.iter().sum::<i64>(), 0);
    }

    #[test]
    fn sign_mismatch_is_detected() {
        let w = mode_window(4);
        let d = delta(Var::W, Var::Z, Monomial::one(), w, 2);
        let lhs = Expr::product(vec![d.clone()]);
        let rhs = Expr::product(vec![d]).scale(&RationalFunction::int(-1));
        let out = check_identity(&lhs, &rhs, &[Var::Z, Var::W], w).unwrap();
        assert_eq!(out.status, Status::SignMismatch);
    }
}
