use std::fmt;

use crate::graded_tensor::GradedMatrix;
use crate::scalar_field::{RationalFunction, ScalarError};

/// A distribution coefficient: a scalar rational function or an operator.
#[derive(Clone, PartialEq, Eq)]
pub enum Coeff {
    Scalar(RationalFunction),
    Matrix(GradedMatrix),
}

impl Coeff {
    pub fn one() -> Coeff {
        Coeff::Scalar(RationalFunction::one())
    }

    pub fn zero() -> Coeff {
        Coeff::Scalar(RationalFunction::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Scalar(s) => s.is_zero(),
            Coeff::Matrix(m) => m.is_zero(),
        }
    }

    /// Product with `self` on the left.
    pub fn mul(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Scalar(a), Coeff::Scalar(b)) => Coeff::Scalar(a * b),
            (Coeff::Scalar(a), Coeff::Matrix(b)) => Coeff::Matrix(b.scale(a)),
            (Coeff::Matrix(a), Coeff::Scalar(b)) => Coeff::Matrix(a.scale(b)),
            (Coeff::Matrix(a), Coeff::Matrix(b)) => Coeff::Matrix(a.mul(b)),
        }
    }

    pub fn scale(&self, s: &RationalFunction) -> Coeff {
        match self {
            Coeff::Scalar(a) => Coeff::Scalar(a * s),
            Coeff::Matrix(a) => Coeff::Matrix(a.scale(s)),
        }
    }

    /// Sum; a zero scalar is the neutral element for matrices as well.
    pub fn add(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Scalar(a), Coeff::Scalar(b)) => Coeff::Scalar(a + b),
            (Coeff::Matrix(a), Coeff::Matrix(b)) => Coeff::Matrix(a.add(b)),
            (Coeff::Scalar(a), m @ Coeff::Matrix(_)) | (m @ Coeff::Matrix(_), Coeff::Scalar(a)) if a.is_zero() => {
                m.clone()
            }
            (Coeff::Scalar(a), Coeff::Matrix(b)) => Coeff::Matrix(scalar_identity(a, b).add(b)),
            (Coeff::Matrix(a), Coeff::Scalar(b)) => Coeff::Matrix(a.add(&scalar_identity(b, a))),
        }
    }

    pub fn neg(&self) -> Coeff {
        self.scale(&RationalFunction::int(-1))
    }

    pub fn sub(&self, rhs: &Coeff) -> Coeff {
        self.add(&rhs.neg())
    }

    pub fn try_map<F>(&self, f: F) -> Result<Coeff, ScalarError>
    where
        F: Fn(&RationalFunction) -> Result<RationalFunction, ScalarError>,
    {
        Ok(match self {
            Coeff::Scalar(a) => Coeff::Scalar(f(a)?),
            Coeff::Matrix(m) => Coeff::Matrix(m.try_map(f)?),
        })
    }
}

fn scalar_identity(s: &RationalFunction, like: &GradedMatrix) -> GradedMatrix {
    GradedMatrix::identity(like.space().clone()).scale(s)
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Scalar(s) => write!(f, "{s}"),
            Coeff::Matrix(m) => {
                if m.is_zero() {
                    return f.write_str("0");
                }
                f.write_str("{")?;
                for (k, (r, c, v)) in m.entries().enumerate() {
                    if k > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "[{r},{c}]: {v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
