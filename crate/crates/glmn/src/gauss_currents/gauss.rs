use std::collections::BTreeMap;

use crate::graded_tensor::{GradedMatrix, GradedSpace};
use crate::report::{Counterexample, VerificationOutcome};
use crate::rll_evaluation::LOperator;

use super::GaussError;

/// A square array of quantum-space operators, `blocks[α][β] = L^α_β`.
pub type OperatorArray = Vec<Vec<GradedMatrix>>;

/// `L = E K F` with `E` unipotent lower triangular, `K` diagonal and `F`
/// unipotent upper triangular, all entries operators on the quantum space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussData {
    pub quantum: GradedSpace,
    /// `e[(i, j)]` for `i > j`.
    pub e: BTreeMap<(usize, usize), GradedMatrix>,
    pub k: Vec<GradedMatrix>,
    /// `f[(i, j)]` for `i < j`.
    pub f: BTreeMap<(usize, usize), GradedMatrix>,
}

impl GaussData {
    pub fn size(&self) -> usize {
        self.k.len()
    }

    fn identity(&self) -> GradedMatrix {
        GradedMatrix::identity(self.quantum.clone())
    }

    fn zero(&self) -> GradedMatrix {
        GradedMatrix::zero(self.quantum.clone())
    }

    pub fn e_matrix(&self) -> OperatorArray {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => self.identity(),
                        std::cmp::Ordering::Greater => self.e[&(i, j)].clone(),
                        std::cmp::Ordering::Less => self.zero(),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn k_matrix(&self) -> OperatorArray {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { self.k[i].clone() } else { self.zero() })
                    .collect()
            })
            .collect()
    }

    pub fn f_matrix(&self) -> OperatorArray {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => self.identity(),
                        std::cmp::Ordering::Less => self.f[&(i, j)].clone(),
                        std::cmp::Ordering::Greater => self.zero(),
                    })
                    .collect()
            })
            .collect()
    }

    /// `E · K · F`.
    pub fn reconstruct(&self) -> OperatorArray {
        array_mul(&array_mul(&self.e_matrix(), &self.k_matrix()), &self.f_matrix())
    }
}

/// The operator array of an L-operator.
pub fn operator_array(l: &LOperator) -> OperatorArray {
    let n = l.ps.dim();
    (0..n).map(|a| (0..n).map(|b| l.entry(a, b)).collect()).collect()
}

/// Product of operator arrays, entries multiplied in the written order.
pub fn array_mul(a: &OperatorArray, b: &OperatorArray) -> OperatorArray {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = GradedMatrix::zero(a[i][j].space().clone());
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Block elimination: `K_k = A_kk`, `E_ik = A_ik K_k⁻¹`, `F_kj = K_k⁻¹ A_kj`,
/// then `A_ij ← A_ij − A_ik K_k⁻¹ A_kj` on the trailing block.
pub fn gauss_decompose(blocks: &OperatorArray) -> Result<GaussData, GaussError> {
    let n = blocks.len();
    let quantum = blocks[0][0].space().clone();
    let mut a = blocks.clone();
    let mut data = GaussData {
        quantum,
        e: BTreeMap::new(),
        k: Vec::with_capacity(n),
        f: BTreeMap::new(),
    };
    for k in 0..n {
        let kk = a[k][k].clone();
        let ki = kk.inverse().map_err(|_| GaussError::SingularPivot { index: k + 1 })?;
        for i in k + 1..n {
            data.e.insert((i, k), a[i][k].mul(&ki));
        }
        for j in k + 1..n {
            data.f.insert((k, j), ki.mul(&a[k][j]));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let update = data.e[&(i, k)].mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&update);
            }
        }
        data.k.push(kk);
    }
    Ok(data)
}

pub fn gauss_of(l: &LOperator) -> Result<GaussData, GaussError> {
    gauss_decompose(&operator_array(l))
}

/// Flattens the leading `r × r` operator block (rows `rows`, columns
/// `cols`) into one matrix on `ℂ^r ⊗ Q`.
fn flatten(blocks: &OperatorArray, rows: &[usize], cols: &[usize]) -> Vec<Vec<GradedMatrix>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| blocks[i][j].clone()).collect())
        .collect()
}

fn to_big(parts: &[Vec<GradedMatrix>], quantum: &GradedSpace) -> GradedMatrix {
    let r = parts.len();
    let c = parts[0].len();
    let d = quantum.dim();
    let side = r.max(c);
    let space = GradedSpace::single(crate::graded_tensor::ParityStructure::even(side)).tensor(quantum);
    let mut out = GradedMatrix::zero(space);
    for (i, row) in parts.iter().enumerate() {
        for (j, blk) in row.iter().enumerate() {
            for (x, y, v) in blk.entries() {
                out.set(i * d + x, j * d + y, v.clone());
            }
        }
    }
    out
}

fn from_big(m: &GradedMatrix, i: usize, j: usize, quantum: &GradedSpace) -> GradedMatrix {
    let d = quantum.dim();
    let mut out = GradedMatrix::zero(quantum.clone());
    for x in 0..d {
        for (col, v) in m.row(i * d + x) {
            if col / d == j {
                out.set(x, col % d, v.clone());
            }
        }
    }
    out
}

/// Quasi-minor formulas, computed independently of the elimination:
/// with `A = L_{<j,<j}` inverted as one big matrix,
/// `k_j = L_jj − L_{j,<j} A⁻¹ L_{<j,j}`,
/// `e_ij = (L_ij − L_{i,<j} A⁻¹ L_{<j,j}) k_j⁻¹`,
/// `f_ji = k_j⁻¹ (L_ji − L_{j,<j} A⁻¹ L_{<j,i})`.
pub fn quasi_minor_decomposition(blocks: &OperatorArray) -> Result<GaussData, GaussError> {
    let n = blocks.len();
    let quantum = blocks[0][0].space().clone();
    let mut data = GaussData {
        quantum: quantum.clone(),
        e: BTreeMap::new(),
        k: Vec::with_capacity(n),
        f: BTreeMap::new(),
    };
    for j in 0..n {
        let lead: Vec<usize> = (0..j).collect();
        // correction(i, l) = L_{i,<j} A⁻¹ L_{<j,l}
        let correction: Box<dyn Fn(usize, usize) -> GradedMatrix> = if j == 0 {
            Box::new(|_, _| GradedMatrix::zero(quantum.clone()))
        } else {
            let a = to_big(&flatten(blocks, &lead, &lead), &quantum);
            let ai = a.inverse().map_err(|_| GaussError::SingularPivot { index: j })?;
            let blocks = blocks.clone();
            let lead = lead.clone();
            let quantum = quantum.clone();
            Box::new(move |i, l| {
                let mut acc = GradedMatrix::zero(quantum.clone());
                for (p, &s) in lead.iter().enumerate() {
                    for (r, &t) in lead.iter().enumerate() {
                        let mid = from_big(&ai, p, r, &quantum);
                        if mid.is_zero() {
                            continue;
                        }
                        acc = acc.add(&blocks[i][s].mul(&mid).mul(&blocks[t][l]));
                    }
                }
                acc
            })
        };
        let kj = blocks[j][j].sub(&correction(j, j));
        let kji = kj.inverse().map_err(|_| GaussError::SingularPivot { index: j + 1 })?;
        for i in j + 1..n {
            data.e.insert((i, j), blocks[i][j].sub(&correction(i, j)).mul(&kji));
            data.f.insert((j, i), kji.mul(&blocks[j][i].sub(&correction(j, i))));
        }
        data.k.push(kj);
    }
    Ok(data)
}

/// `E·K·F = L`, entry by entry; coordinates are `(α, β, row, col)`.
pub fn check_reconstruction(blocks: &OperatorArray, g: &GaussData) -> VerificationOutcome {
    let rebuilt = g.reconstruct();
    for (i, row) in blocks.iter().enumerate() {
        for (j, blk) in row.iter().enumerate() {
            let o = VerificationOutcome::compare_matrices(&rebuilt[i][j], blk);
            if !o.is_pass() {
                let cx = o.counterexample.map(|c| Counterexample {
                    coordinates: [vec![i as i64, j as i64], c.coordinates].concat(),
                    ..c
                });
                return VerificationOutcome::fail(cx);
            }
        }
    }
    VerificationOutcome::pass()
}

/// Elimination and quasi-minor formulas give identical entries.
pub fn check_uniqueness(blocks: &OperatorArray, g: &GaussData) -> Result<VerificationOutcome, GaussError> {
    let h = quasi_minor_decomposition(blocks)?;
    for (idx, (a, b)) in g.k.iter().zip(&h.k).enumerate() {
        let o = VerificationOutcome::compare_matrices(a, b);
        if !o.is_pass() {
            return Ok(o.with_note(format!("k_{} differs", idx + 1)));
        }
    }
    for (key, a) in g.e.iter().chain(g.f.iter()) {
        let b = h.e.get(key).or_else(|| h.f.get(key)).expect("same shape");
        let o = VerificationOutcome::compare_matrices(a, b);
        if !o.is_pass() {
            return Ok(o.with_note(format!("entry {:?} differs", key)));
        }
    }
    Ok(VerificationOutcome::pass())
}
