use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Var;
use super::poly::LaurentPoly;
use super::rational::RationalFunction;
use super::ScalarError;

/// Which geometric-series region a rational function is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Non-negative-going powers: `1/(1 - v) = 1 + v + v^2 + …`.
    AroundZero,
    /// Powers of `1/v`.
    AroundInfinity,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::AroundZero => Direction::AroundInfinity,
            Direction::AroundInfinity => Direction::AroundZero,
        }
    }
}

/// Inclusive exponent window `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Window {
        Window { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, k: i32) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn widen(&self, by: i32) -> Window {
        Window::new(self.lo - by, self.hi + by)
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }
}

/// A truncated one-variable Laurent series with rational-function
/// coefficients. Coefficients are known exactly on `window`; nothing is
/// known outside it.
///
/// `support` records what is known about the full (untruncated) series:
/// `Some(b)` is a proven bound on exponents with nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    pub variable: Var,
    pub direction: Direction,
    coefficients: BTreeMap<i32, RationalFunction>,
    pub window: Window,
    pub support: (Option<i32>, Option<i32>),
}

impl LaurentSeries {
    pub fn from_coefficients(
        variable: Var,
        direction: Direction,
        window: Window,
        coefficients: BTreeMap<i32, RationalFunction>,
        support: (Option<i32>, Option<i32>),
    ) -> LaurentSeries {
        let coefficients = coefficients
            .into_iter()
            .filter(|(k, c)| window.contains(*k) && !c.is_zero())
            .collect();
        LaurentSeries {
            variable,
            direction,
            coefficients,
            window,
            support,
        }
    }

    /// Coefficient of `variable^k`; `None` outside the window.
    pub fn coeff(&self, k: i32) -> Option<RationalFunction> {
        if !self.window.contains(k) {
            return None;
        }
        Some(
            self.coefficients
                .get(&k)
                .cloned()
                .unwrap_or_else(RationalFunction::zero),
        )
    }

    /// Nonzero coefficients inside the window.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, &RationalFunction)> {
        self.coefficients.iter().map(|(k, c)| (*k, c))
    }

    /// Multiplies by a Laurent polynomial. The window shrinks to the
    /// exponents whose product coefficient is fully determined.
    pub fn mul_poly(&self, p: &LaurentPoly) -> LaurentSeries {
        let pc = p.coefficients_in(self.variable);
        let (plo, phi) = match (pc.keys().next(), pc.keys().next_back()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => {
                return LaurentSeries::from_coefficients(
                    self.variable,
                    self.direction,
                    self.window,
                    BTreeMap::new(),
                    (None, None),
                )
            }
        };
        let window = Window::new(self.window.lo + phi, self.window.hi + plo);
        let mut out = BTreeMap::new();
        for k in window.iter() {
            let mut acc = RationalFunction::zero();
            for (&j, c) in &pc {
                if let Some(s) = self.coefficients.get(&(k - j)) {
                    acc = &acc + &(s * &RationalFunction::from_poly(c.clone()));
                }
            }
            out.insert(k, acc);
        }
        let support = (self.support.0.map(|s| s + plo), self.support.1.map(|s| s + phi));
        LaurentSeries::from_coefficients(self.variable, self.direction, window, out, support)
    }

    /// Restricts to a smaller window.
    pub fn truncate(&self, window: Window) -> LaurentSeries {
        let lo = window.lo.max(self.window.lo);
        let hi = window.hi.min(self.window.hi);
        LaurentSeries::from_coefficients(
            self.variable,
            self.direction,
            Window::new(lo, hi),
            self.coefficients.clone(),
            self.support,
        )
    }

    /// Compares coefficients on the common part of both windows.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        let lo = self.window.lo.max(other.window.lo);
        let hi = self.window.hi.min(other.window.hi);
        (lo..=hi).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0 on [{}, {}]", self.window.lo, self.window.hi);
        }
        let mut first = true;
        for (k, c) in &self.coefficients {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*{}^{k}", self.variable)?;
        }
        write!(f, " on [{}, {}]", self.window.lo, self.window.hi)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Expands `f` as a Laurent series in `var` in the given region and returns
/// the exact coefficients on `window`.
pub fn expand(
    f: &RationalFunction,
    var: Var,
    direction: Direction,
    window: Window,
) -> Result<LaurentSeries, ScalarError> {
    if window.is_empty() {
        return Err(ScalarError::Expansion(format!(
            "empty window [{}, {}]",
            window.lo, window.hi
        )));
    }
    match direction {
        Direction::AroundZero => expand_zero(f.numerator(), f.denominator(), var, window, direction),
        Direction::AroundInfinity => {
            let reflected = expand_zero(
                &f.numerator().reflect(var),
                &f.denominator().reflect(var),
                var,
                Window::new(-window.hi, -window.lo),
                direction,
            )?;
            let coefficients = reflected.coefficients.into_iter().map(|(k, c)| (-k, c)).collect();
            let support = (reflected.support.1.map(|s| -s), reflected.support.0.map(|s| -s));
            Ok(LaurentSeries::from_coefficients(
                var,
                direction,
                window,
                coefficients,
                support,
            ))
        }
    }
}

fn expand_zero(
    num: &LaurentPoly,
    den: &LaurentPoly,
    var: Var,
    window: Window,
    direction: Direction,
) -> Result<LaurentSeries, ScalarError> {
    let dc = den.coefficients_in(var);
    let nc = num.coefficients_in(var);
    let (&dlo, &dhi) = match (dc.keys().next(), dc.keys().next_back()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(ScalarError::DivisionByZero),
    };
    let (nlo, nhi) = match (nc.keys().next(), nc.keys().next_back()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => {
            return Ok(LaurentSeries::from_coefficients(
                var,
                direction,
                window,
                BTreeMap::new(),
                (Some(0), Some(-1)),
            ))
        }
    };
    let lead = RationalFunction::from_poly(dc[&dlo].clone());
    let lead_inv = lead.recip()?;
    let d: Vec<(i32, RationalFunction)> = dc
        .iter()
        .filter(|(&j, _)| j != dlo)
        .map(|(&j, c)| (j - dlo, RationalFunction::from_poly(c.clone())))
        .collect();
    let start = nlo - dlo;
    let polynomial_quotient = dlo == dhi;
    let support = if polynomial_quotient {
        (Some(start), Some(nhi - dlo))
    } else {
        (Some(start), None)
    };
    let mut g: BTreeMap<i32, RationalFunction> = BTreeMap::new();
    let mut k = start;
    while k <= window.hi {
        let mut acc = nc
            .get(&(k + dlo))
            .map(|p| RationalFunction::from_poly(p.clone()))
            .unwrap_or_else(RationalFunction::zero);
        for (j, c) in &d {
            if let Some(prev) = g.get(&(k - j)) {
                acc = &acc - &(c * prev);
            }
        }
        if !acc.is_zero() {
            g.insert(k, &acc * &lead_inv);
        }
        k += 1;
    }
    Ok(LaurentSeries::from_coefficients(var, direction, window, g, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_field::rational::qpow;
    use proptest::prelude::*;

    fn v(x: Var) -> RationalFunction {
        RationalFunction::var(x)
    }

    fn zmw_inv() -> RationalFunction {
        (&v(Var::Z) - &v(Var::W)).inv()
    }

    #[test]
    fn geometric_series_at_infinity() {
        let s = expand(&zmw_inv(), Var::Z, Direction::AroundInfinity, Window::new(-5, 0)).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(-k - 1).unwrap(), v(Var::W).powi(k));
        }
        assert!(s.coeff(0).unwrap().is_zero());
        assert_eq!(s.coeff(1), None);
        assert_eq!(s.support.1, Some(-1));
    }

    #[test]
    fn geometric_series_at_zero() {
        let s = expand(&zmw_inv(), Var::Z, Direction::AroundZero, Window::new(0, 4)).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(k).unwrap(), -&v(Var::W).powi(-k - 1));
        }
    }

    #[test]
    fn rmatrix_entry_leading_coefficient() {
        let num = &v(Var::Z) - &v(Var::W);
        let den = &(&v(Var::Z) * &qpow(1)) - &(&v(Var::W) * &qpow(-1));
        let s = expand(&(&num / &den), Var::Z, Direction::AroundInfinity, Window::new(-3, 0)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), qpow(-1));
        // next coefficient by hand: (z - w)/(q z (1 - w/(q^2 z))) = q^-1 (1 - w/z)(1 + w/(q^2 z) + ...)
        let expect = &(&qpow(-3) - &qpow(-1)) * &v(Var::W);
        assert_eq!(s.coeff(-1).unwrap(), expect);
    }

    #[test]
    fn empty_window_is_an_error() {
        assert!(matches!(
            expand(&zmw_inv(), Var::Z, Direction::AroundZero, Window::new(1, 0)),
            Err(ScalarError::Expansion(_))
        ));
    }

    #[test]
    fn directions_agree_on_laurent_polynomials() {
        let p = &(&v(Var::Z) * &v(Var::W)) + &v(Var::Z).powi(-2);
        let w = Window::new(-4, 4);
        let a = expand(&p, Var::Z, Direction::AroundZero, w).unwrap();
        let b = expand(&p, Var::Z, Direction::AroundInfinity, w).unwrap();
        assert!(a.agrees_with(&b));
        let a = expand(&zmw_inv(), Var::Z, Direction::AroundZero, w).unwrap();
        let b = expand(&zmw_inv(), Var::Z, Direction::AroundInfinity, w).unwrap();
        assert!(!a.agrees_with(&b));
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        let var = prop_oneof![Just(Var::Q), Just(Var::Z), Just(Var::W)];
        proptest::collection::vec((var, -2i32..3, -3i64..4), 1..4).prop_map(|terms| {
            let mut p = LaurentPoly::zero();
            for (x, e, c) in terms {
                p = &p
                    + &LaurentPoly::monomial(crate::scalar_field::Monomial::pow(x, e))
                        .scale(&crate::scalar_field::rat(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn normalize_is_a_congruence(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly()) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let g = RationalFunction::new(c.clone(), d.clone()).unwrap();
            prop_assert_eq!(f.normalize(), f.clone());
            let direct = RationalFunction::new(&a * &c, &b * &d).unwrap();
            prop_assert_eq!(&f * &g, direct);
        }

        #[test]
        fn expansion_times_denominator_is_numerator(a in small_poly(), b in small_poly(), infinity in any::<bool>()) {
            prop_assume!(!b.is_zero());
            let f = RationalFunction::new(a, b).unwrap();
            let dir = if infinity { Direction::AroundInfinity } else { Direction::AroundZero };
            let w = Window::new(-4, 4);
            let s = expand(&f, Var::Z, dir, w).unwrap();
            let back = s.mul_poly(f.denominator());
            let num = f.numerator().coefficients_in(Var::Z);
            for k in back.window.iter() {
                let expect = num.get(&k).cloned().map(RationalFunction::from_poly).unwrap_or_default();
                prop_assert_eq!(back.coeff(k).unwrap(), expect);
            }
        }
    }
}
