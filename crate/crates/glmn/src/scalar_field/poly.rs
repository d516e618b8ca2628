use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Multivariate Laurent polynomial with exact rational coefficients over the
/// fixed alphabet. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> LaurentPoly {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> LaurentPoly {
        LaurentPoly::term(Monomial::var(v), rat(1))
    }

    pub fn term(m: Monomial, c: Rational) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> LaurentPoly {
        LaurentPoly::term(m, rat(1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some((m, c))` when the polynomial is the single term `c·m`.
    pub fn as_monomial(&self) -> Option<(Monomial, Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    /// Divides out the monomial content so that the result is a polynomial
    /// with no monomial factor; returns `(content, stripped)`.
    pub fn split_content(&self) -> (Monomial, LaurentPoly) {
        let c = self.min_exponents();
        (c, self.mul_monomial(&c.inv()))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_polynomial())
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.involves(v))
    }

    /// `(min, max)` exponent of `v`, or `None` for the zero polynomial.
    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Views the polynomial as a Laurent polynomial in `v` whose coefficients
    /// are free of `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.entry(e).or_default().terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: Var, coeffs: &BTreeMap<i32, LaurentPoly>) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, p) in coeffs {
            for (m, c) in &p.terms {
                out.add_term(m.with_exp(v, e), c.clone());
            }
        }
        out
    }

    /// The substitution `v ↦ 1/v`.
    pub fn reflect(&self, v: Var) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.reflect(v), c.clone())).collect(),
        }
    }

    /// Substitutes `v ↦ c·mono` for a monomial image, valid for every exponent sign.
    pub fn substitute_monomial(&self, v: Var, mono: &Monomial, c: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, coef) in &self.terms {
            let e = m.exp(v);
            let base = m.with_exp(v, 0).mul(&mono.powi(e));
            let factor = pow_rational(c, e);
            out.add_term(base, coef * factor);
        }
        out
    }

    /// Applies a monomial map `var ↦ image` to every variable at once.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Evaluates `v` at a rational number (`v` must not be zero if negative
    /// powers occur).
    pub fn evaluate(&self, v: Var, x: &Rational) -> LaurentPoly {
        self.substitute_monomial(v, &Monomial::one(), x)
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> LaurentPoly {
        match self.leading() {
            None => LaurentPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact division in the Laurent polynomial ring. Returns `None` when
    /// `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Some(self.mul_monomial(&m.inv()).scale(&c.recip()));
        }
        let (ms, s) = self.split_content();
        let (md, d) = divisor.split_content();
        s.div_exact_poly(&d).map(|qt| qt.mul_monomial(&ms.div(&md)))
    }

    /// Division in the polynomial ring (both operands must be polynomials).
    fn div_exact_poly(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let t = rm.div(&lm);
            if !t.is_polynomial() {
                return None;
            }
            let c = rc / &lc;
            rem = &rem - &divisor.mul_monomial(&t).scale(&c);
            quot.add_term(t, c);
        }
        Some(quot)
    }
}

pub(crate) fn pow_rational(c: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> LaurentPoly {
        LaurentPoly::var(v)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> LaurentPoly {
        LaurentPoly::int(n)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::var(Var::Z)
    }
    fn w() -> LaurentPoly {
        LaurentPoly::var(Var::W)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z() - &w()) * &(&z() + &w());
        let expect = &(&z() * &z()) - &(&w() * &w());
        assert_eq!(p, expect);
    }

    #[test]
    fn exact_division() {
        let f = &(&z() - &w()) * &(&z() + &LaurentPoly::var(Var::Q));
        assert_eq!(f.div_exact(&(&z() - &w())), Some(&z() + &LaurentPoly::var(Var::Q)));
        assert_eq!(z().div_exact(&(&z() + &w())), None);
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let f = &(&z() * &LaurentPoly::var(Var::Q)) - &w().mul_monomial(&Monomial::pow(Var::Z, -2));
        let c = f.coefficients_in(Var::Z);
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![-2, 1]);
        assert_eq!(LaurentPoly::from_coefficients_in(Var::Z, &c), f);
    }

    #[test]
    fn monomial_substitution_handles_negative_powers() {
        let f = z().mul_monomial(&Monomial::pow(Var::Z, -3)); // z^-2
        let img = Monomial::from_pairs(&[(Var::Z, 1), (Var::Q, 2)]);
        let g = f.substitute_monomial(Var::Z, &img, &rat(1));
        assert_eq!(
            g,
            LaurentPoly::monomial(Monomial::from_pairs(&[(Var::Z, -2), (Var::Q, -4)]))
        );
    }

    #[test]
    fn display_is_deterministic() {
        let f = &(&z() * &LaurentPoly::var(Var::Q)) - &LaurentPoly::int(3);
        assert_eq!(format!("{f}"), "q*z - 3");
    }
}
