use crate::scalar_field::RationalFunction;

use super::matrix::GradedMatrix;
use super::space::{GradedSpace, ParityStructure};
use super::TensorError;

fn sign(exponent: u8) -> RationalFunction {
    if exponent & 1 == 0 {
        RationalFunction::one()
    } else {
        RationalFunction::int(-1)
    }
}

/// Graded tensor product of operators. The entry signs follow from the
/// action on basis vectors: `(A ⊗ B)(v_{a'} ⊗ v_{b'}) = (-1)^{[B][a']} A v_{a'} ⊗ B v_{b'}`,
/// applied per matrix unit (so inhomogeneous matrices are handled entrywise),
/// which gives `(A⊗B)[(a,b)][(a',b')] = (-1)^{([b]+[b'])[a']} A[a][a'] B[b][b']`.
pub fn graded_kron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    kron_impl(a, b, true)
}

/// Ordinary (sign-free) Kronecker product.
pub fn kron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    kron_impl(a, b, false)
}

fn kron_impl(a: &GradedMatrix, b: &GradedMatrix, graded: bool) -> GradedMatrix {
    let space = a.space().tensor(b.space());
    let db = b.dim();
    let mut out = GradedMatrix::zero(space);
    for (i, ip, x) in a.entries() {
        let pa = a.space().parity(ip);
        for (k, kp, y) in b.entries() {
            let v = x * y;
            let e = if graded {
                (b.space().parity(k) ^ b.space().parity(kp)) & pa
            } else {
                0
            };
            let v = if e == 1 { -&v } else { v };
            out.set(i * db + k, ip * db + kp, v);
        }
    }
    out
}

/// The graded permutation `P(v_α ⊗ v_β) = (-1)^{[α][β]} v_β ⊗ v_α`.
pub fn perm_matrix(ps: ParityStructure) -> GradedMatrix {
    swap_matrix(&GradedSpace::power(ps, 2), 0, true)
}

/// The ordinary flip `v_α ⊗ v_β ↦ v_β ⊗ v_α`.
pub fn ordinary_perm_matrix(ps: ParityStructure) -> GradedMatrix {
    swap_matrix(&GradedSpace::power(ps, 2), 0, false)
}

/// `θ = diag((-1)^{[α][β]})` on `V ⊗ V`.
pub fn theta_matrix(ps: ParityStructure) -> GradedMatrix {
    let n = ps.dim();
    GradedMatrix::diagonal(GradedSpace::power(ps, 2), |i| sign(ps.parity(i / n) & ps.parity(i % n)))
}

/// Toggles the `(-1)^{[α][β]}` dressing on the output index of a two-slot
/// operator, which converts between `R` and `R̃`. Involutive.
pub fn tilde_toggle(r: &GradedMatrix) -> GradedMatrix {
    let space = r.space().clone();
    let mut out = GradedMatrix::zero(space.clone());
    for (row, col, v) in r.entries() {
        let d = space.digits(row);
        let e = d
            .iter()
            .zip(space.factors())
            .map(|(&x, f)| f.parity(x))
            .fold(1u8, |acc, p| acc & p);
        out.set(row, col, if e == 1 { -v } else { v.clone() });
    }
    out
}

/// The operator exchanging tensor factors `slot` and `slot + 1`. Its output
/// space has those two factors swapped. With `graded` the Koszul sign
/// `(-1)^{[x][y]}` is included.
pub fn swap_matrix(space: &GradedSpace, slot: usize, graded: bool) -> GradedMatrix {
    let mut order: Vec<usize> = (0..space.factors().len()).collect();
    order.swap(slot, slot + 1);
    permutation_operator(space, &order, graded)
}

/// Operator reordering the tensor factors of `space`: factor `order[p]` of
/// the input ends up in position `p` of the output. With `graded`, the
/// Koszul sign of the reordering is applied.
pub fn permutation_operator(space: &GradedSpace, order: &[usize], graded: bool) -> GradedMatrix {
    let k = space.factors().len();
    assert_eq!(order.len(), k, "permutation must list every factor");
    let target = GradedSpace::new(order.iter().map(|&i| space.factors()[i]).collect());
    let mut out = GradedMatrix::zero(target.clone());
    for col in 0..space.dim() {
        let d = space.digits(col);
        let parities: Vec<u8> = d.iter().zip(space.factors()).map(|(&x, f)| f.parity(x)).collect();
        let mut e = 0u8;
        if graded {
            for p in 0..k {
                for q in p + 1..k {
                    // factors order[p] and order[q] are out of order in the output
                    if order[p] > order[q] {
                        e ^= parities[order[p]] & parities[order[q]];
                    }
                }
            }
        }
        let out_digits: Vec<usize> = order.iter().map(|&i| d[i]).collect();
        out.set(target.compose(&out_digits), col, sign(e));
    }
    out
}

fn inverse_order(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        inv[i] = p;
    }
    inv
}

/// Embeds an operator acting on the factors `slots` (in that order) of
/// `space` into the whole space, by tensoring with identities and
/// conjugating with factor permutations (graded or ordinary).
pub fn embed_in(
    a: &GradedMatrix,
    slots: &[usize],
    space: &GradedSpace,
    graded: bool,
) -> Result<GradedMatrix, TensorError> {
    let k = space.factors().len();
    let mut seen = vec![false; k];
    for &s in slots {
        if s >= k || seen[s] {
            return Err(TensorError::SlotOutOfRange { slot: s, total: k });
        }
        seen[s] = true;
    }
    let mut order: Vec<usize> = slots.to_vec();
    order.extend((0..k).filter(|i| !seen[*i]));
    let arranged = GradedSpace::new(order.iter().map(|&i| space.factors()[i]).collect());
    let expected = GradedSpace::new(slots.iter().map(|&i| space.factors()[i]).collect());
    if a.space().dim() != expected.dim() {
        return Err(TensorError::DimensionMismatch {
            left: a.dim(),
            right: expected.dim(),
        });
    }
    let rest = arranged.slice(slots.len()..k);
    let a = a.clone().relabel(expected);
    let m0 = graded_kron(&a, &GradedMatrix::identity(rest));
    if order.iter().enumerate().all(|(p, &i)| p == i) {
        return Ok(m0);
    }
    // `arranged` lists the factors of `space` in `order`; bring them back.
    let back = permutation_operator(&arranged, &inverse_order(&order), graded);
    let forth = permutation_operator(space, &order, graded);
    Ok(back.mul(&m0).mul(&forth).relabel(space.clone()))
}

/// Embeds an operator on one or two slots of `V^{⊗total}` (0-based slots),
/// using graded permutations for non-adjacent placements.
pub fn embed(
    a: &GradedMatrix,
    slots: &[usize],
    ps: ParityStructure,
    total: usize,
) -> Result<GradedMatrix, TensorError> {
    embed_in(a, slots, &GradedSpace::power(ps, total), true)
}
