use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::{Monomial, Var};
use super::poly::{rat, LaurentPoly, Rational};
use super::ScalarError;

/// Rational function over ℚ in the fixed alphabet, kept in canonical form:
/// the fraction is reduced, the denominator carries no monomial factor and
/// its leading coefficient is 1. Structural equality is therefore equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> RationalFunction {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(LaurentPoly::one())
    }

    pub fn int(n: i64) -> RationalFunction {
        RationalFunction::from_poly(LaurentPoly::int(n))
    }

    pub fn constant(c: Rational) -> RationalFunction {
        RationalFunction::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> RationalFunction {
        RationalFunction::from_poly(LaurentPoly::var(v))
    }

    pub fn monomial(m: Monomial) -> RationalFunction {
        RationalFunction::from_poly(LaurentPoly::monomial(m))
    }

    /// `v^e` for a single variable.
    pub fn var_pow(v: Var, e: i32) -> RationalFunction {
        RationalFunction::monomial(Monomial::pow(v, e))
    }

    pub fn from_poly(p: LaurentPoly) -> RationalFunction {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num/den` and normalizes it.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFunction, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RationalFunction::canonical(num, den))
    }

    /// Returns the canonical representative of an arbitrary fraction.
    pub fn normalize(&self) -> RationalFunction {
        RationalFunction::canonical(self.num.clone(), self.den.clone())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some((m, c)) = den.as_monomial() {
            return RationalFunction {
                num: num.mul_monomial(&m.inv()).scale(&c.recip()),
                den: LaurentPoly::one(),
            };
        }
        let (mn, n) = num.split_content();
        let (md, d) = den.split_content();
        let g = gcd(&n, &d);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (
                n.div_exact(&g).expect("gcd divides numerator"),
                d.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RationalFunction::finish(n.mul_monomial(&mn.div(&md)), d)
    }

    /// Final normalization step for an already reduced fraction: removes the
    /// denominator's monomial content and makes it monic.
    fn finish(num: LaurentPoly, den: LaurentPoly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let (md, d) = den.split_content();
        let lc = d.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let scale = lc.recip();
        RationalFunction {
            num: num.mul_monomial(&md.inv()).scale(&scale),
            den: d.scale(&scale),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    pub fn recip(&self) -> Result<RationalFunction, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RationalFunction::finish(self.den.clone(), self.num.clone()))
    }

    pub fn inv(&self) -> RationalFunction {
        self.recip().expect("inverse of zero rational function")
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction, ScalarError> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RationalFunction {
        RationalFunction {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, k: i32) -> RationalFunction {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = RationalFunction::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Composition `f(…, var ↦ expr, …)`.
    pub fn substitute(&self, var: Var, expr: &LaurentPoly) -> Result<RationalFunction, ScalarError> {
        let num = substitute_poly(&self.num, var, expr)?;
        let den = substitute_poly(&self.den, var, expr)?;
        num.checked_div(&den)
    }

    /// Composition with a rational-function image.
    pub fn substitute_rf(&self, var: Var, expr: &RationalFunction) -> Result<RationalFunction, ScalarError> {
        if let Some(p) = expr.as_poly() {
            return self.substitute(var, p);
        }
        let num = substitute_poly_rf(&self.num, var, expr)?;
        let den = substitute_poly_rf(&self.den, var, expr)?;
        num.checked_div(&den)
    }

    /// Applies a monomial map to every variable at once (for instance the
    /// central-charge relabellings of the Hopf engine). The map must send
    /// monomials to monomials multiplicatively.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> RationalFunction {
        let num = self.num.map_monomials(&f);
        let den = self.den.map_monomials(&f);
        RationalFunction::canonical(num, den)
    }

    /// Evaluates the listed variables at rational points.
    pub fn evaluate(&self, points: &BTreeMap<Var, Rational>) -> Result<RationalFunction, ScalarError> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (v, x) in points {
            if x.is_zero()
                && (num.degree_range(*v).is_some_and(|r| r.0 < 0) || den.degree_range(*v).is_some_and(|r| r.0 < 0))
            {
                return Err(ScalarError::DivisionByZero);
            }
            num = num.evaluate(*v, x);
            den = den.evaluate(*v, x);
        }
        RationalFunction::new(num, den)
    }
}

fn substitute_poly(p: &LaurentPoly, var: Var, expr: &LaurentPoly) -> Result<RationalFunction, ScalarError> {
    if let Some((m, c)) = expr.as_monomial() {
        return Ok(RationalFunction::from_poly(p.substitute_monomial(var, &m, &c)));
    }
    let coeffs = p.coefficients_in(var);
    let lo = coeffs.keys().next().copied().unwrap_or(0).min(0);
    let mut acc = LaurentPoly::zero();
    for (&e, c) in &coeffs {
        acc = &acc + &(c * &expr.pow((e - lo) as u32));
    }
    let den = expr.pow((-lo) as u32);
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(RationalFunction::canonical(acc, den))
}

fn substitute_poly_rf(p: &LaurentPoly, var: Var, expr: &RationalFunction) -> Result<RationalFunction, ScalarError> {
    let coeffs = p.coefficients_in(var);
    let mut acc = RationalFunction::zero();
    for (&e, c) in &coeffs {
        let power = if e < 0 { expr.recip()?.powi(-e) } else { expr.powi(e) };
        acc = &acc + &(&RationalFunction::from_poly(c.clone()) * &power);
    }
    Ok(acc)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFunction::from_poly(&self.num + &rhs.num);
            }
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            // a/d + p = (a + p d)/d, still reduced
            return RationalFunction::finish(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::finish(&rhs.num + &(&self.num * &rhs.den), rhs.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        RationalFunction::canonical(num, &d1 * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel: both inputs are reduced, so gcd(n1, d2) and gcd(n2, d1)
        // are the only possible common factors of the product
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RationalFunction::finish(&n1 * &n2, &d1 * &d2)
    }
}

fn cancel(n: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if d.is_one() || n.as_monomial().is_some() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (
            n.div_exact(&g).expect("gcd divides"),
            d.div_exact(&g).expect("gcd divides"),
        )
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::int(n)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                format!("{p}")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shorthand for `q^k` as a rational function.
pub fn qpow(k: i32) -> RationalFunction {
    RationalFunction::var_pow(Var::Q, k)
}

/// `q - q^{-1}`.
pub fn q_minus_qinv() -> RationalFunction {
    &qpow(1) - &qpow(-1)
}

/// `q + q^{-1}`.
pub fn q_plus_qinv() -> RationalFunction {
    &qpow(1) + &qpow(-1)
}

/// `x·y⁻¹`-style helper: the Laurent polynomial `c1·m1 + c2·m2`.
pub fn binomial(c1: i64, m1: Monomial, c2: i64, m2: Monomial) -> LaurentPoly {
    LaurentPoly::from_terms([(m1, rat(c1)), (m2, rat(c2))])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> RationalFunction {
        RationalFunction::var(x)
    }

    fn zq_minus_wqinv() -> RationalFunction {
        &(&v(Var::Z) * &qpow(1)) - &(&v(Var::W) * &qpow(-1))
    }

    #[test]
    fn common_factor_cancels() {
        let zmw = &v(Var::Z) - &v(Var::W);
        let zpw = &v(Var::Z) + &v(Var::W);
        let f = &(&zmw * &zpw) / &(&zmw * &zq_minus_wqinv());
        assert_eq!(f, &zpw / &zq_minus_wqinv());
    }

    #[test]
    fn zero_numerator_normalizes_to_zero_over_one() {
        let f = RationalFunction::new(LaurentPoly::zero(), zq_minus_wqinv().numerator().clone()).unwrap();
        assert!(f.is_zero());
        assert!(f.denominator().is_one());
    }

    #[test]
    fn reduced_entry_is_fixed_point() {
        let f = &(&(&v(Var::W) * &qpow(1)) - &(&v(Var::Z) * &qpow(-1))) / &zq_minus_wqinv();
        assert_eq!(f.normalize(), f);
        assert_eq!(format!("{}", f.denominator()), "q^2*z - w");
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(RationalFunction::zero().recip().is_err());
    }

    #[test]
    fn substitution_examples() {
        let zmw = &v(Var::Z) - &v(Var::W);
        let f = zmw.inv();
        let shifted = f
            .substitute(
                Var::Z,
                &LaurentPoly::monomial(Monomial::from_pairs(&[(Var::Z, 1), (Var::Q, 2)])),
            )
            .unwrap();
        let expect = (&(&v(Var::Z) * &qpow(2)) - &v(Var::W)).inv();
        assert_eq!(shifted, expect);
        let g = &zmw / &zq_minus_wqinv();
        assert!(g.substitute(Var::W, &LaurentPoly::var(Var::Z)).unwrap().is_zero());
        // 1/(z - w) with w -> z is a division by zero
        assert_eq!(
            f.substitute(Var::W, &LaurentPoly::var(Var::Z)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn addition_with_different_denominators() {
        let a = (&v(Var::Z) - &v(Var::W)).inv();
        let b = (&v(Var::Z) + &v(Var::W)).inv();
        let s = &a + &b;
        let expect =
            &(v(Var::Z) * RationalFunction::int(2)) / &(&(&v(Var::Z) * &v(Var::Z)) - &(&v(Var::W) * &v(Var::W)));
        assert_eq!(s, expect);
        assert!((&s - &expect).is_zero());
    }
}
