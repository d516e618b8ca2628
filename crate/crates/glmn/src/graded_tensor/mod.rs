//! ℤ₂-graded tensor spaces and operators: Koszul-sign tensor products, the
//! graded flip `P`, the sign matrix `θ` and slot embeddings.

mod matrix;
mod ops;
mod space;

pub use matrix::GradedMatrix;
pub use ops::{
    embed, embed_in, graded_kron, kron, ordinary_perm_matrix, perm_matrix, permutation_operator, swap_matrix,
    theta_matrix, tilde_toggle,
};
pub use space::{GradedSpace, Grading, ParityStructure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("gl(m|n) needs m >= 1 and n >= 1, got m={m}, n={n}")]
    BadParity { m: usize, n: usize },
    #[error("slot {slot} out of range for a {total}-fold tensor space")]
    SlotOutOfRange { slot: usize, total: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Matrix unit `E^a_b` in the upper-lower notation used throughout: it maps
/// `v_a` to `v_b`, so its single entry sits at row `b`, column `a`.
pub fn matrix_unit(space: GradedSpace, a: usize, b: usize) -> GradedMatrix {
    let mut m = GradedMatrix::zero(space);
    m.set(b, a, crate::scalar_field::RationalFunction::one());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_field::{RationalFunction, Var};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gl(m: usize, n: usize) -> ParityStructure {
        ParityStructure::new(m, n).unwrap()
    }

    fn int(n: i64) -> RationalFunction {
        RationalFunction::int(n)
    }

    fn single(ps: ParityStructure) -> GradedSpace {
        GradedSpace::single(ps)
    }

    #[test]
    fn perm_gl11_table() {
        let p = perm_matrix(gl(1, 1));
        let expect = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(p.get(i, j), int(v));
            }
        }
    }

    #[test]
    fn perm_and_theta_are_involutions() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let p = perm_matrix(gl(m, n));
            assert!(p.mul(&p).is_identity());
            let t = theta_matrix(gl(m, n));
            assert!(t.mul(&t).is_identity());
        }
    }

    #[test]
    fn all_even_perm_is_plain_flip() {
        let ps = ParityStructure::even(3);
        assert_eq!(perm_matrix(ps), ordinary_perm_matrix(ps));
    }

    #[test]
    fn theta_examples() {
        let t = theta_matrix(gl(1, 1));
        assert_eq!(
            (0..4).map(|i| t.get(i, i)).collect::<Vec<_>>(),
            vec![int(1), int(1), int(1), int(-1)]
        );
        let t = theta_matrix(gl(2, 1));
        for i in 0..9 {
            let expect = if i == 8 { -1 } else { 1 };
            assert_eq!(t.get(i, i), int(expect));
        }
    }

    #[test]
    fn gl11_odd_unit_products_anticommute() {
        let s = single(gl(1, 1));
        let e21 = matrix_unit(s.clone(), 1, 0);
        let i = GradedMatrix::identity(s);
        // (A⊗B)(C⊗D) = (-1)^{[B][C]} AC⊗BD: the sign appears when the odd
        // factor of the left operand has to pass the odd factor of the right one
        let signed = graded_kron(&i, &e21).mul(&graded_kron(&e21, &i));
        assert_eq!(signed, graded_kron(&e21, &e21).neg());
        let unsigned = graded_kron(&e21, &i).mul(&graded_kron(&i, &e21));
        assert_eq!(unsigned, graded_kron(&e21, &e21));
    }

    /// Independent oracle: build the action on basis vectors directly from
    /// the defining rule and compare with `graded_kron` for all 16 × 16 pairs.
    #[test]
    fn gl11_graded_kron_table() {
        let ps = gl(1, 1);
        let s = single(ps);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let x = matrix_unit(s.clone(), a, b);
                        let y = matrix_unit(s.clone(), c, d);
                        let k = graded_kron(&x, &y);
                        let py = ps.parity(c) ^ ps.parity(d);
                        for input in 0..4 {
                            let (ia, ib) = (input / 2, input % 2);
                            // x v_ia is v_b iff ia == a; y v_ib is v_d iff ib == c
                            let image = if ia == a && ib == c {
                                let sgn = if (py & ps.parity(ia)) == 1 { -1 } else { 1 };
                                Some((b * 2 + d, sgn))
                            } else {
                                None
                            };
                            for out in 0..4 {
                                let expect = match image {
                                    Some((o, s)) if o == out => int(s),
                                    _ => int(0),
                                };
                                assert_eq!(k.get(out, input), expect);
                            }
                        }
                    }
                }
            }
        }
    }

    fn random_homogeneous(rng: &mut ChaCha8Rng, ps: ParityStructure, parity: u8) -> GradedMatrix {
        let s = single(ps);
        let n = ps.dim();
        GradedMatrix::from_fn(s, |i, j| {
            if (ps.parity(i) ^ ps.parity(j)) == parity && rng.gen_bool(0.7) {
                let v = rng.gen_range(-5i64..6);
                if rng.gen_bool(0.2) {
                    &RationalFunction::var(Var::Z) * &int(v)
                } else {
                    int(v)
                }
            } else {
                let _ = n;
                int(0)
            }
        })
    }

    #[test]
    fn graded_kron_multiplication_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for ps in [gl(1, 1), gl(2, 1)] {
            for _ in 0..100 {
                let pars: Vec<u8> = (0..4).map(|_| rng.gen_range(0..2)).collect();
                let a = random_homogeneous(&mut rng, ps, pars[0]);
                let b = random_homogeneous(&mut rng, ps, pars[1]);
                let c = random_homogeneous(&mut rng, ps, pars[2]);
                let d = random_homogeneous(&mut rng, ps, pars[3]);
                let lhs = graded_kron(&a, &b).mul(&graded_kron(&c, &d));
                let mut rhs = graded_kron(&a.mul(&c), &b.mul(&d));
                if pars[1] & pars[2] == 1 {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identity_kron_and_grading_off() {
        let ps = gl(2, 1);
        let i = GradedMatrix::identity(single(ps));
        assert!(graded_kron(&i, &i).is_identity());
        let off = ps.with_grading(Grading::Off);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_homogeneous(&mut rng, ps, 1).relabel(single(off));
        let b = random_homogeneous(&mut rng, ps, 1).relabel(single(off));
        assert_eq!(graded_kron(&a, &b), kron(&a, &b));
        assert_eq!(perm_matrix(off), ordinary_perm_matrix(off));
        assert!(theta_matrix(off).is_identity());
    }

    #[test]
    fn tilde_toggle_examples() {
        let ps = gl(1, 1);
        let s = GradedSpace::power(ps, 2);
        let r = GradedMatrix::from_fn(s, |i, j| int((i * 4 + j + 1) as i64));
        assert_eq!(tilde_toggle(&tilde_toggle(&r)), r);
        let t = tilde_toggle(&r);
        assert_eq!(t.get(3, 3), -&r.get(3, 3));
        assert_eq!(t.get(0, 0), r.get(0, 0));
        assert_eq!(t.get(1, 2), r.get(1, 2));
    }

    #[test]
    fn embeddings() {
        let ps = gl(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s2 = GradedSpace::power(ps, 2);
        let r = GradedMatrix::from_fn(s2.clone(), |i, j| {
            if (s2.parity(i) ^ s2.parity(j)) == 0 {
                int(rng.gen_range(-4..5))
            } else {
                int(0)
            }
        });
        let i1 = GradedMatrix::identity(single(ps));
        assert_eq!(embed(&r, &[0, 1], ps, 3).unwrap(), graded_kron(&r, &i1));
        assert_eq!(embed(&r, &[1, 2], ps, 3).unwrap(), graded_kron(&i1, &r));
        let p = perm_matrix(ps);
        assert_eq!(embed(&r, &[1, 0], ps, 2).unwrap(), p.mul(&r).mul(&p));
        let p23 = graded_kron(&i1, &p);
        let r12 = graded_kron(&r, &i1);
        assert_eq!(embed(&r, &[0, 2], ps, 3).unwrap(), p23.mul(&r12).mul(&p23));
        assert!(matches!(
            embed(&r, &[0, 3], ps, 3),
            Err(TensorError::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let ps = gl(2, 1);
        let s = single(ps);
        let z = RationalFunction::var(Var::Z);
        let a = GradedMatrix::from_fn(s, |i, j| {
            if i == j {
                &z + &int(i as i64)
            } else if j == i + 1 {
                int(1)
            } else {
                int(0)
            }
        });
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let embedded = graded_kron(&a, &GradedMatrix::identity(single(ps)));
        assert!(embedded.mul(&embedded.inverse().unwrap()).is_identity());
        assert_eq!(GradedMatrix::zero(single(ps)).inverse(), Err(TensorError::Singular));
    }
}
