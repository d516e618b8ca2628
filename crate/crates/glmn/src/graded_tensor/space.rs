use serde::{Deserialize, Serialize};

use super::TensorError;

/// Whether the ℤ₂-grading is honoured by the tensor machinery. `Off` forces
/// every parity seen by signs, permutations and products to 0, which
/// reproduces the ungraded construction used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    On,
    Off,
}

/// The superspace ℂ^{m|n}: basis vectors `0..m` are even, `m..m+n` are odd
/// (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityStructure {
    pub m: usize,
    pub n: usize,
    pub grading: Grading,
}

impl ParityStructure {
    pub fn new(m: usize, n: usize) -> Result<ParityStructure, TensorError> {
        if m == 0 || n == 0 {
            return Err(TensorError::BadParity { m, n });
        }
        Ok(ParityStructure {
            m,
            n,
            grading: Grading::On,
        })
    }

    pub fn with_grading(self, grading: Grading) -> ParityStructure {
        ParityStructure { grading, ..self }
    }

    /// An all-even space of dimension `d`, used for sign-free unit tests.
    pub fn even(d: usize) -> ParityStructure {
        ParityStructure {
            m: d,
            n: 0,
            grading: Grading::On,
        }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Parity of basis vector `i` as used by the tensor machinery (0 when the
    /// grading is switched off).
    pub fn parity(&self, i: usize) -> u8 {
        match self.grading {
            Grading::On => self.true_parity(i),
            Grading::Off => 0,
        }
    }

    /// Parity of basis vector `i` regardless of the grading toggle.
    pub fn true_parity(&self, i: usize) -> u8 {
        debug_assert!(i < self.dim());
        u8::from(i >= self.m)
    }
}

/// A tensor product of superspaces `V₁ ⊗ … ⊗ V_k`, with composite indices
/// linearized first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedSpace {
    factors: Vec<ParityStructure>,
}

impl GradedSpace {
    pub fn new(factors: Vec<ParityStructure>) -> GradedSpace {
        GradedSpace { factors }
    }

    pub fn single(ps: ParityStructure) -> GradedSpace {
        GradedSpace { factors: vec![ps] }
    }

    pub fn power(ps: ParityStructure, k: usize) -> GradedSpace {
        GradedSpace { factors: vec![ps; k] }
    }

    pub fn factors(&self) -> &[ParityStructure] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GradedSpace { factors }
    }

    /// Sub-space made of factors `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> GradedSpace {
        GradedSpace {
            factors: self.factors[range].to_vec(),
        }
    }

    pub fn with_grading(&self, grading: Grading) -> GradedSpace {
        GradedSpace {
            factors: self.factors.iter().map(|f| f.with_grading(grading)).collect(),
        }
    }

    /// Splits a composite index into per-factor indices.
    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in self.factors.iter().enumerate().rev() {
            out[slot] = idx % f.dim();
            idx /= f.dim();
        }
        out
    }

    pub fn compose(&self, digits: &[usize]) -> usize {
        self.factors
            .iter()
            .zip(digits)
            .fold(0, |acc, (f, &d)| acc * f.dim() + d)
    }

    /// Parity of a composite index: the sum of factor parities mod 2.
    pub fn parity(&self, idx: usize) -> u8 {
        self.digits(idx)
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&d, f)| acc ^ f.parity(d))
    }
}
