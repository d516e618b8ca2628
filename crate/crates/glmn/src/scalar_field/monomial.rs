use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of indeterminates in the fixed alphabet.
pub const NVARS: usize = 14;

/// The fixed variable alphabet. The declaration order is the monomial order
/// (lexicographic, `q` most significant).
///
/// `C`, `C1`, `C2`, `C3` stand for `q^{c/2}`, `q^{c1/2}`, `q^{c2/2}`, `q^{c3/2}`:
/// the central charges only ever enter through half-integer powers of `q`,
/// so they are modelled as independent indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Q,
    C,
    C1,
    C2,
    C3,
    Z,
    W,
    Z1,
    Z2,
    W1,
    W2,
    A,
    B,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Q,
        Var::C,
        Var::C1,
        Var::C2,
        Var::C3,
        Var::Z,
        Var::W,
        Var::Z1,
        Var::Z2,
        Var::W1,
        Var::W2,
        Var::A,
        Var::B,
        Var::T,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::C => "C",
            Var::C1 => "C1",
            Var::C2 => "C2",
            Var::C3 => "C3",
            Var::Z => "z",
            Var::W => "w",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::W1 => "w1",
            Var::W2 => "w2",
            Var::A => "a",
            Var::B => "b",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }

    /// Central-charge symbol `q^{c_s/2}` for tensor slot `s` (0 = unslotted `c`).
    pub fn charge(slot: usize) -> Var {
        match slot {
            0 => Var::C,
            1 => Var::C1,
            2 => Var::C2,
            3 => Var::C3,
            _ => panic!("no charge symbol for slot {slot}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Laurent monomial: an exponent vector over the fixed alphabet.
///
/// The derived `Ord` compares exponent vectors lexicographically in alphabet
/// order, which is the monomial order used for canonical forms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(pub [i16; NVARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::one();
        m.0[v.index()] = narrow(e);
        m
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables add up.
    pub fn from_pairs(pairs: &[(Var, i32)]) -> Monomial {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.0[v.index()] = narrow(m.0[v.index()] as i32 + e);
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()] as i32
    }

    pub fn with_exp(mut self, v: Var, e: i32) -> Monomial {
        self.0[v.index()] = narrow(e);
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.0[i] = narrow(self.0[i] as i32 + other.0[i] as i32);
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.0[i] = narrow(self.0[i] as i32 - other.0[i] as i32);
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        Monomial::one().div(self)
    }

    pub fn powi(&self, k: i32) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.0[i] = narrow(self.0[i] as i32 * k);
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.0[i] = self.0[i].min(other.0[i]);
        }
        out
    }

    /// True when every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// True when `self` divides `other` in the polynomial ring.
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..NVARS).all(|i| self.0[i] <= other.0[i])
    }

    pub fn involves(&self, v: Var) -> bool {
        self.0[v.index()] != 0
    }

    /// Variables with nonzero exponent, in alphabet order.
    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.iter().copied().filter(move |v| self.involves(*v))
    }

    /// Replaces the exponent of `v` by its negative.
    pub fn reflect(&self, v: Var) -> Monomial {
        let e = self.exp(v);
        self.with_exp(v, -e)
    }
}

fn narrow(e: i32) -> i16 {
    i16::try_from(e).expect("exponent out of range for monomial storage")
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.exp(v) {
                1 => write!(f, "{v}")?,
                e => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lex_with_q_first() {
        let q = Monomial::var(Var::Q);
        let z5 = Monomial::pow(Var::Z, 5);
        assert!(q > z5);
        assert!(Monomial::pow(Var::Z, 2) > Monomial::var(Var::Z).mul(&Monomial::pow(Var::W, 9)));
    }

    #[test]
    fn mul_div_roundtrip() {
        let m = Monomial::from_pairs(&[(Var::Q, -2), (Var::Z, 3), (Var::A, 1)]);
        let n = Monomial::from_pairs(&[(Var::Q, 1), (Var::W, -1)]);
        assert_eq!(m.mul(&n).div(&n), m);
        assert!(m.mul(&m.inv()).is_one());
        assert_eq!(format!("{m}"), "q^-2*z^3*a");
    }

    #[test]
    fn names_roundtrip() {
        for v in Var::ALL {
            assert_eq!(Var::from_name(v.name()), Some(v));
        }
    }
}
