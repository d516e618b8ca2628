use std::collections::BTreeMap;
use std::fmt;

use crate::scalar_field::{RationalFunction, ScalarError};

use super::space::GradedSpace;
use super::TensorError;

/// A square matrix over rational functions acting on a graded tensor space.
///
/// Storage is row-sparse with `row` = output composite index and
/// `col` = input composite index, so for an operator on `V ⊗ V`
/// `get((α,β), (α',β'))` is the coefficient of `v_{αβ}` in the image of
/// `v_{α'β'}`. Zero entries are never stored, so structural equality is
/// matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    space: GradedSpace,
    rows: Vec<BTreeMap<usize, RationalFunction>>,
}

impl GradedMatrix {
    pub fn zero(space: GradedSpace) -> GradedMatrix {
        let d = space.dim();
        GradedMatrix {
            space,
            rows: vec![BTreeMap::new(); d],
        }
    }

    pub fn identity(space: GradedSpace) -> GradedMatrix {
        let mut out = GradedMatrix::zero(space);
        for i in 0..out.dim() {
            out.rows[i].insert(i, RationalFunction::one());
        }
        out
    }

    pub fn from_fn<F>(space: GradedSpace, mut f: F) -> GradedMatrix
    where
        F: FnMut(usize, usize) -> RationalFunction,
    {
        let mut out = GradedMatrix::zero(space);
        let d = out.dim();
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, f(i, j));
            }
        }
        out
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal<F>(space: GradedSpace, mut f: F) -> GradedMatrix
    where
        F: FnMut(usize) -> RationalFunction,
    {
        let mut out = GradedMatrix::zero(space);
        for i in 0..out.dim() {
            out.set(i, i, f(i));
        }
        out
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> RationalFunction {
        self.rows[row].get(&col).cloned().unwrap_or_default()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&RationalFunction> {
        self.rows[row].get(&col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: RationalFunction) {
        if value.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &RationalFunction) {
        if value.is_zero() {
            return;
        }
        let sum = match self.rows[row].get(&col) {
            Some(old) => old + value,
            None => value.clone(),
        };
        self.set(row, col, sum);
    }

    /// Nonzero entries of one row.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &RationalFunction)> {
        self.rows[row].iter().map(|(c, v)| (*c, v))
    }

    /// All nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RationalFunction)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == 1 && r.get(&i).is_some_and(|v| v.is_one()))
    }

    /// Ordinary transpose (no super-transposition signs).
    pub fn transpose(&self) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.space.clone());
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    /// Replaces the space label (same dimension) without touching entries.
    pub fn relabel(mut self, space: GradedSpace) -> GradedMatrix {
        assert_eq!(space.dim(), self.dim(), "relabel must preserve dimension");
        self.space = space;
        self
    }

    fn check_dims(&self, other: &GradedMatrix) -> Result<(), TensorError> {
        if self.dim() != other.dim() {
            return Err(TensorError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &GradedMatrix) -> Result<GradedMatrix, TensorError> {
        self.check_dims(other)?;
        let mut out = GradedMatrix::zero(self.space.clone());
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, RationalFunction> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let t = a * b;
                    match acc.get_mut(j) {
                        Some(v) => *v = &*v + &t,
                        None => {
                            acc.insert(*j, t);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        self.try_mul(other).expect("matrix dimensions agree")
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        self.check_dims(other).expect("matrix dimensions agree");
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedMatrix {
        self.map(|v| -v)
    }

    pub fn scale(&self, s: &RationalFunction) -> GradedMatrix {
        if s.is_zero() {
            return GradedMatrix::zero(self.space.clone());
        }
        self.map(|v| v * s)
    }

    /// Applies `f` to every nonzero entry.
    pub fn map<F: Fn(&RationalFunction) -> RationalFunction>(&self, f: F) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.space.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    /// Fallible entrywise map (substitutions, evaluations).
    pub fn try_map<F>(&self, f: F) -> Result<GradedMatrix, ScalarError>
    where
        F: Fn(&RationalFunction) -> Result<RationalFunction, ScalarError>,
    {
        let mut out = GradedMatrix::zero(self.space.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v)?);
        }
        Ok(out)
    }

    /// Parity of the matrix unit at `(row, col)`: `[row] + [col]`.
    pub fn entry_parity(&self, row: usize, col: usize) -> u8 {
        self.space.parity(row) ^ self.space.parity(col)
    }

    /// `Some(p)` when every nonzero entry has parity `p`.
    pub fn homogeneous_parity(&self) -> Option<u8> {
        let mut found = None;
        for (r, c, _) in self.entries() {
            let p = self.entry_parity(r, c);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Inverse by sparse Gauss-Jordan elimination over the rational
    /// function field.
    pub fn inverse(&self) -> Result<GradedMatrix, TensorError> {
        let d = self.dim();
        let mut a = self.rows.clone();
        let mut b: Vec<BTreeMap<usize, RationalFunction>> =
            (0..d).map(|i| BTreeMap::from([(i, RationalFunction::one())])).collect();
        for c in 0..d {
            let pivot = (c..d)
                .filter(|&r| a[r].contains_key(&c))
                .min_by_key(|&r| {
                    let v = &a[r][&c];
                    (v.numerator().len() + v.denominator().len(), a[r].len(), r)
                })
                .ok_or(TensorError::Singular)?;
            a.swap(c, pivot);
            b.swap(c, pivot);
            let inv = a[c][&c].inv();
            scale_row(&mut a[c], &inv);
            scale_row(&mut b[c], &inv);
            let (pa, pb) = (a[c].clone(), b[c].clone());
            for r in 0..d {
                if r == c {
                    continue;
                }
                if let Some(f) = a[r].get(&c).cloned() {
                    axpy_row(&mut a[r], &pa, &f);
                    axpy_row(&mut b[r], &pb, &f);
                }
            }
        }
        Ok(GradedMatrix {
            space: self.space.clone(),
            rows: b,
        })
    }

    /// For a matrix on `outer ⊗ inner` (the first `k` factors forming
    /// `outer`), the inner-space matrix `M[(a, ·)][(b, ·)]`.
    pub fn block(&self, k: usize, a: usize, b: usize) -> GradedMatrix {
        let factors = self.space.factors();
        let inner = self.space.slice(k..factors.len());
        let di = inner.dim();
        let mut out = GradedMatrix::zero(inner);
        for i in 0..di {
            for (c, v) in self.row(a * di + i) {
                if c / di == b {
                    out.set(i, c % di, v.clone());
                }
            }
        }
        out
    }

    /// Assembles a matrix on `outer ⊗ inner` from its blocks.
    pub fn from_blocks<F>(outer: &GradedSpace, inner: &GradedSpace, mut f: F) -> GradedMatrix
    where
        F: FnMut(usize, usize) -> GradedMatrix,
    {
        let space = outer.tensor(inner);
        let (do_, di) = (outer.dim(), inner.dim());
        let mut out = GradedMatrix::zero(space);
        for a in 0..do_ {
            for b in 0..do_ {
                let blk = f(a, b);
                for (i, j, v) in blk.entries() {
                    out.set(a * di + i, b * di + j, v.clone());
                }
            }
        }
        out
    }
}

fn scale_row(row: &mut BTreeMap<usize, RationalFunction>, s: &RationalFunction) {
    for v in row.values_mut() {
        *v = &*v * s;
    }
}

/// `row -= f * pivot`.
fn axpy_row(
    row: &mut BTreeMap<usize, RationalFunction>,
    pivot: &BTreeMap<usize, RationalFunction>,
    f: &RationalFunction,
) {
    for (j, p) in pivot {
        let t = f * p;
        let nv = match row.get(j) {
            Some(v) => v - &t,
            None => -&t,
        };
        if nv.is_zero() {
            row.remove(j);
        } else {
            row.insert(*j, nv);
        }
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix:", self.dim(), self.dim())?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  [{r},{c}] = {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
