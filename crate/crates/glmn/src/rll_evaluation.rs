//! Level-zero evaluation representation of `L±(z)` and exact checks of the
//! RLL relations, their consequences with inverses and `R₂₁`, and the
//! matrix coproduct of `L`.
//!
//! Operators live on `aux₁ ⊗ aux₂ ⊗ Q` where `Q` is the quantum space of the
//! representation. Products are ordinary matrix products; the grading enters
//! through `θ` and through the graded tensor product of quantum operators.

use serde::{Deserialize, Serialize};

use crate::graded_tensor::{
    graded_kron, kron, perm_matrix, theta_matrix, GradedMatrix, GradedSpace, ParityStructure, TensorError,
};
use crate::report::{VerificationOutcome, VerificationReport};
use crate::rmatrix::r_matrix;
use crate::scalar_field::{Direction, RationalFunction, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LSign {
    Plus,
    Minus,
}

impl LSign {
    /// Expansion direction used for the mode expansion of `L±(z)` in `z`.
    pub fn direction(self) -> Direction {
        match self {
            LSign::Plus => Direction::AroundZero,
            LSign::Minus => Direction::AroundInfinity,
        }
    }
}

/// `L(z)` as an `(m+n) × (m+n)` array of operators on a quantum space,
/// stored as one matrix on `V_aux ⊗ Q` whose `(α, β)` block is `L^α_β`.
///
/// The matrix is a function of [`Var::Z`]; [`LOperator::at`] substitutes
/// another spectral argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LOperator {
    pub ps: ParityStructure,
    pub sign: LSign,
    pub quantum: GradedSpace,
    matrix: GradedMatrix,
}

impl LOperator {
    /// Assembles an L-operator from its big matrix on `V_aux ⊗ quantum`.
    pub fn from_matrix(ps: ParityStructure, sign: LSign, quantum: GradedSpace, matrix: GradedMatrix) -> LOperator {
        assert_eq!(matrix.dim(), ps.dim() * quantum.dim());
        LOperator {
            ps,
            sign,
            quantum,
            matrix,
        }
    }

    /// The matrix on `V_aux ⊗ Q` at spectral argument `Z`.
    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }

    /// The matrix at spectral argument `z`.
    pub fn at(&self, z: &RationalFunction) -> GradedMatrix {
        if *z == RationalFunction::var(Var::Z) {
            return self.matrix.clone();
        }
        self.matrix
            .try_map(|v| v.substitute_rf(Var::Z, z))
            .expect("substitution of a spectral argument is defined")
    }

    /// The quantum-space operator `L(z)^α_β`.
    pub fn entry(&self, alpha: usize, beta: usize) -> GradedMatrix {
        self.matrix.block(1, alpha, beta)
    }

    pub fn scale(&self, s: &RationalFunction) -> LOperator {
        LOperator {
            matrix: self.matrix.scale(s),
            ..self.clone()
        }
    }
}

/// The evaluation representation at point `a`: the big matrix of `L(z)` is
/// `R(z, a)`, read with the first factor auxiliary and the second the
/// quantum space. At level zero both signs share this matrix.
pub fn eval_rep(ps: ParityStructure, a: &RationalFunction, sign: LSign) -> LOperator {
    let z = RationalFunction::var(Var::Z);
    let r = r_matrix(ps, &z, a);
    LOperator::from_matrix(ps, sign, GradedSpace::single(ps), r)
}

/// The trivial one-dimensional representation `L^α_β = δ_{αβ}`.
pub fn trivial_rep(ps: ParityStructure, sign: LSign) -> LOperator {
    let quantum = GradedSpace::single(ParityStructure::even(1));
    let matrix = GradedMatrix::identity(GradedSpace::single(ps).tensor(&quantum));
    LOperator::from_matrix(ps, sign, quantum, matrix)
}

/// `ΔL(z)^α_β = Σ_γ L_a(z)^α_γ ⊗ L_b(z)^γ_β` with the graded tensor product
/// of quantum operators, on the quantum space `Q_a ⊗ Q_b`.
pub fn coproduct(la: &LOperator, lb: &LOperator) -> LOperator {
    let aux = GradedSpace::single(la.ps);
    let quantum = la.quantum.tensor(&lb.quantum);
    let n = la.ps.dim();
    let blocks_a: Vec<Vec<GradedMatrix>> = (0..n).map(|i| (0..n).map(|j| la.entry(i, j)).collect()).collect();
    let blocks_b: Vec<Vec<GradedMatrix>> = (0..n).map(|i| (0..n).map(|j| lb.entry(i, j)).collect()).collect();
    let matrix = GradedMatrix::from_blocks(&aux, &quantum, |alpha, beta| {
        let mut acc = GradedMatrix::zero(quantum.clone());
        for gamma in 0..n {
            acc = acc.add(&graded_kron(&blocks_a[alpha][gamma], &blocks_b[gamma][beta]));
        }
        acc
    });
    LOperator::from_matrix(la.ps, la.sign, quantum, matrix)
}

/// The antipode `S(L)(z) = L(z)⁻¹`, inverted as an operator on `V_aux ⊗ Q`.
pub fn antipode(l: &LOperator) -> Result<LOperator, TensorError> {
    Ok(LOperator::from_matrix(
        l.ps,
        l.sign,
        l.quantum.clone(),
        l.matrix.inverse()?,
    ))
}

/// Operators on `aux₁ ⊗ aux₂ ⊗ Q`.
struct Triple {
    ps: ParityStructure,
    quantum: GradedSpace,
}

impl Triple {
    fn new(ps: ParityStructure, quantum: &GradedSpace) -> Triple {
        Triple {
            ps,
            quantum: quantum.clone(),
        }
    }

    fn space(&self) -> GradedSpace {
        GradedSpace::power(self.ps, 2).tensor(&self.quantum)
    }

    /// `X ⊗ I_Q` for `X` on `aux₁ ⊗ aux₂`.
    fn aux(&self, x: &GradedMatrix) -> GradedMatrix {
        kron(x, &GradedMatrix::identity(self.quantum.clone()))
    }

    /// `L₁`: an operator on `aux ⊗ Q` placed on `aux₁ ⊗ Q`.
    fn first(&self, big: &GradedMatrix) -> GradedMatrix {
        self.place(big, |a, k| (a, k))
    }

    /// `L₂`: an operator on `aux ⊗ Q` placed on `aux₂ ⊗ Q`.
    fn second(&self, big: &GradedMatrix) -> GradedMatrix {
        self.place(big, |a, k| (k, a))
    }

    fn place<F: Fn(usize, usize) -> (usize, usize)>(&self, big: &GradedMatrix, slot: F) -> GradedMatrix {
        let n = self.ps.dim();
        let d = self.quantum.dim();
        let mut out = GradedMatrix::zero(self.space());
        for (row, col, v) in big.entries() {
            let (al, i) = (row / d, row % d);
            let (be, j) = (col / d, col % d);
            for k in 0..n {
                let (r1, r2) = slot(al, k);
                let (c1, c2) = slot(be, k);
                out.set((r1 * n + r2) * d + i, (c1 * n + c2) * d + j, v.clone());
            }
        }
        out
    }

    fn theta(&self) -> GradedMatrix {
        self.aux(&theta_matrix(self.ps))
    }

    /// `θ X θ`.
    fn dress(&self, x: &GradedMatrix) -> GradedMatrix {
        let t = self.theta();
        t.mul(x).mul(&t)
    }
}

fn zw() -> (RationalFunction, RationalFunction) {
    (RationalFunction::var(Var::Z), RationalFunction::var(Var::W))
}

/// The defining relation `R(z/w) L₁(z) θL₂(w)θ = θL₂(w)θ L₁(z) R(z/w)` for
/// `L` against `L'` (same or opposite sign). At level zero the spectral
/// shifts `z±`, `w±` collapse to `z`, `w`.
fn rll_pair(l: &LOperator, lp: &LOperator) -> VerificationOutcome {
    let (z, w) = zw();
    let t = Triple::new(l.ps, &l.quantum);
    let r = t.aux(&r_matrix(l.ps, &z, &w));
    let l1 = t.first(&l.at(&z));
    let l2 = t.dress(&t.second(&lp.at(&w)));
    VerificationOutcome::compare_matrices(&r.mul(&l1).mul(&l2), &l2.mul(&l1).mul(&r))
}

/// The three defining RLL equations (`++`, `--` and the mixed one) for a
/// representation with `L⁺ = l_plus` and `L⁻ = l_minus`.
pub fn check_rll_operators(l_plus: &LOperator, l_minus: &LOperator) -> Vec<(&'static str, VerificationOutcome)> {
    vec![
        ("rll-plus-plus", rll_pair(l_plus, l_plus)),
        ("rll-minus-minus", rll_pair(l_minus, l_minus)),
        ("rll-plus-minus", rll_pair(l_plus, l_minus)),
    ]
}

/// RLL for the evaluation representation at a fresh point `a`.
pub fn check_rll(ps: ParityStructure) -> VerificationOutcome {
    let a = RationalFunction::var(Var::A);
    let lp = eval_rep(ps, &a, LSign::Plus);
    let lm = eval_rep(ps, &a, LSign::Minus);
    first_failure(check_rll_operators(&lp, &lm))
}

fn first_failure(outcomes: Vec<(&'static str, VerificationOutcome)>) -> VerificationOutcome {
    for (name, o) in outcomes {
        if !o.is_pass() {
            return o.with_note(format!("{name} fails"));
        }
    }
    VerificationOutcome::pass()
}

/// `R₂₁(z/w) = R(w/z)⁻¹`.
pub fn r21(ps: ParityStructure, z: &RationalFunction, w: &RationalFunction) -> Result<GradedMatrix, TensorError> {
    r_matrix(ps, w, z).inverse()
}

/// Consistency of the two descriptions of `R₂₁`: `R(w/z)⁻¹ = P R(z/w) P`
/// with the graded flip.
pub fn check_r21_consistency(ps: ParityStructure) -> VerificationOutcome {
    let (z, w) = zw();
    let p = perm_matrix(ps);
    match r21(ps, &z, &w) {
        Ok(inv) => VerificationOutcome::compare_matrices(&inv, &p.mul(&r_matrix(ps, &z, &w)).mul(&p)),
        Err(e) => VerificationOutcome::fail(None).with_note(e.to_string()),
    }
}

/// The seven consequences of the RLL relations, for `L⁺ = l_plus`,
/// `L⁻ = l_minus`. Names follow the order of the displayed identities.
pub fn derived_identities(
    l_plus: &LOperator,
    l_minus: &LOperator,
) -> Result<Vec<(&'static str, VerificationOutcome)>, TensorError> {
    let (z, w) = zw();
    let ps = l_plus.ps;
    let t = Triple::new(ps, &l_plus.quantum);
    let r21 = t.aux(&r21(ps, &z, &w)?);
    let l1 = |l: &LOperator| t.first(&l.at(&w));
    let l2 = |l: &LOperator| t.dress(&t.second(&l.at(&z)));
    let l1_inv = |l: &LOperator| -> Result<GradedMatrix, TensorError> { Ok(t.first(&l.at(&w).inverse()?)) };
    let l2_inv = |l: &LOperator| -> Result<GradedMatrix, TensorError> { Ok(t.dress(&t.second(&l.at(&z).inverse()?))) };

    // R₂₁ θL₂(z)θ L₁(w) = L₁(w) θL₂(z)θ R₂₁
    let plain = |a: &LOperator, b: &LOperator| {
        let (x, y) = (l2(a), l1(b));
        VerificationOutcome::compare_matrices(&r21.mul(&x).mul(&y), &y.mul(&x).mul(&r21))
    };
    // θL₂(z)⁻¹θ L₁(w)⁻¹ R₂₁ = R₂₁ L₁(w)⁻¹ θL₂(z)⁻¹θ
    let inverses = |a: &LOperator, b: &LOperator| -> Result<VerificationOutcome, TensorError> {
        let (x, y) = (l2_inv(a)?, l1_inv(b)?);
        Ok(VerificationOutcome::compare_matrices(
            &x.mul(&y).mul(&r21),
            &r21.mul(&y).mul(&x),
        ))
    };
    // L₁(w)⁻¹ R₂₁ θL₂(z)θ = θL₂(z)θ R₂₁ L₁(w)⁻¹
    let mixed = |a: &LOperator, b: &LOperator| -> Result<VerificationOutcome, TensorError> {
        let (x, y) = (l2(a), l1_inv(b)?);
        Ok(VerificationOutcome::compare_matrices(
            &y.mul(&r21).mul(&x),
            &x.mul(&r21).mul(&y),
        ))
    };
    Ok(vec![
        ("derived-r21-same-sign", plain(l_plus, l_plus)),
        ("derived-r21-minus-plus", plain(l_minus, l_plus)),
        ("derived-inverses-same-sign", inverses(l_plus, l_plus)?),
        ("derived-inverses-plus-minus", inverses(l_plus, l_minus)?),
        ("derived-left-inverse-same-sign", mixed(l_plus, l_plus)?),
        ("derived-left-inverse-plus-minus", mixed(l_plus, l_minus)?),
        ("derived-left-inverse-minus-plus", mixed(l_minus, l_plus)?),
    ])
}

/// All seven derived identities for the evaluation representation.
pub fn check_derived_rll(ps: ParityStructure) -> VerificationOutcome {
    let a = RationalFunction::var(Var::A);
    let lp = eval_rep(ps, &a, LSign::Plus);
    let lm = eval_rep(ps, &a, LSign::Minus);
    match derived_identities(&lp, &lm) {
        Ok(list) => first_failure(list),
        Err(e) => VerificationOutcome::fail(None).with_note(e.to_string()),
    }
}

/// `ΔL` for two evaluation points satisfies RLL, and `S(L) = L⁻¹` satisfies
/// the identity with both inverses.
pub fn check_l_coproduct(ps: ParityStructure, a: &RationalFunction, b: &RationalFunction) -> VerificationOutcome {
    let la = eval_rep(ps, a, LSign::Plus);
    let lb = eval_rep(ps, b, LSign::Plus);
    let delta = coproduct(&la, &lb);
    let rll = rll_pair(&delta, &delta);
    if !rll.is_pass() {
        return rll.with_note("coproduct fails RLL");
    }
    match derived_identities(&la, &la) {
        Ok(list) => {
            let (_, o) = list
                .into_iter()
                .find(|(name, _)| *name == "derived-inverses-same-sign")
                .expect("identity present");
            if !o.is_pass() {
                return o.with_note("antipode identity fails");
            }
        }
        Err(e) => return VerificationOutcome::fail(None).with_note(e.to_string()),
    }
    VerificationOutcome::pass()
}

/// Every check of this module for one `(m, n)`.
pub fn rll_suite(ps: ParityStructure) -> VerificationReport {
    let (m, n) = (ps.m, ps.n);
    let mut report = VerificationReport::new();
    let a = RationalFunction::var(Var::A);
    let lp = eval_rep(ps, &a, LSign::Plus);
    let lm = eval_rep(ps, &a, LSign::Minus);
    for (name, o) in check_rll_operators(&lp, &lm) {
        report.push(&format!("rll/{name}"), m, n, name, o, 0);
    }
    report.record("rll/r21-consistency", m, n, "r21-consistency", || {
        check_r21_consistency(ps)
    });
    match derived_identities(&lp, &lm) {
        Ok(list) => {
            for (name, o) in list {
                report.push(&format!("rll/{name}"), m, n, name, o, 0);
            }
        }
        Err(e) => report.push(
            "rll/derived",
            m,
            n,
            "derived",
            VerificationOutcome::fail(None).with_note(e.to_string()),
            0,
        ),
    }
    let b = RationalFunction::var(Var::B);
    report.record("rll/coproduct", m, n, "l-coproduct", || check_l_coproduct(ps, &a, &b));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_tensor::Grading;
    use crate::report::Status;
    use crate::scalar_field::{q_minus_qinv, qpow};

    fn gl(m: usize, n: usize) -> ParityStructure {
        ParityStructure::new(m, n).unwrap()
    }

    fn rf(v: Var) -> RationalFunction {
        RationalFunction::var(v)
    }

    fn den() -> RationalFunction {
        &(&rf(Var::Z) * &qpow(1)) - &(&rf(Var::A) * &qpow(-1))
    }

    #[test]
    fn gl11_diagonal_entry() {
        let l = eval_rep(gl(1, 1), &rf(Var::A), LSign::Plus);
        let e = l.entry(0, 0);
        assert!(e.get(0, 0).is_one());
        assert_eq!(e.get(1, 1), &(&rf(Var::Z) - &rf(Var::A)) / &den());
        assert_eq!(e.nnz(), 2);
    }

    #[test]
    fn gl11_off_diagonal_entry() {
        let l = eval_rep(gl(1, 1), &rf(Var::A), LSign::Plus);
        let e = l.entry(0, 1);
        assert_eq!(e.nnz(), 1);
        assert_eq!(e.get(1, 0), &(&rf(Var::Z) * &q_minus_qinv()) / &den());
    }

    #[test]
    fn entries_conserve_weight() {
        let ps = gl(2, 1);
        let l = eval_rep(ps, &rf(Var::A), LSign::Minus);
        for al in 0..3 {
            for be in 0..3 {
                for (x, y, _) in l.entry(al, be).entries() {
                    // v_y ↦ v_x inside the block (α, β): α + x = β + y as multisets
                    let mut lhs = [al, x];
                    let mut rhs = [be, y];
                    lhs.sort();
                    rhs.sort();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rll_holds_for_small_algebras() {
        assert!(check_rll(gl(1, 1)).is_pass());
        assert!(check_rll(gl(2, 1)).is_pass());
        assert!(check_rll(gl(1, 2)).is_pass());
    }

    #[test]
    fn rll_fails_without_grading() {
        let ps = gl(1, 1).with_grading(Grading::Off);
        assert_eq!(check_rll(ps).status, Status::Fail);
    }

    #[test]
    fn r21_is_conjugated_r() {
        assert!(check_r21_consistency(gl(1, 1)).is_pass());
        assert!(check_r21_consistency(gl(2, 1)).is_pass());
    }

    #[test]
    fn derived_identities_hold() {
        let ps = gl(1, 1);
        let a = rf(Var::A);
        let list = derived_identities(&eval_rep(ps, &a, LSign::Plus), &eval_rep(ps, &a, LSign::Minus)).unwrap();
        assert_eq!(list.len(), 7);
        for (name, o) in list {
            assert!(o.is_pass(), "{name}: {o:?}");
        }
    }

    #[test]
    fn rescaling_preserves_relations() {
        let ps = gl(1, 1);
        let s = &rf(Var::C1) * &qpow(3);
        let l = eval_rep(ps, &rf(Var::A), LSign::Plus).scale(&s);
        assert!(first_failure(check_rll_operators(&l, &l)).is_pass());
        assert!(first_failure(derived_identities(&l, &l).unwrap()).is_pass());
    }

    #[test]
    fn coproduct_with_trivial_factor_is_identity_map() {
        let ps = gl(1, 1);
        let l = eval_rep(ps, &rf(Var::A), LSign::Plus);
        let t = trivial_rep(ps, LSign::Plus);
        let d = coproduct(&l, &t);
        let same = |x: &GradedMatrix| x.entries().eq(l.matrix().entries());
        assert!(same(d.matrix()));
        assert!(same(coproduct(&t, &l).matrix()));
    }

    #[test]
    fn coproduct_of_two_points_satisfies_rll() {
        assert!(check_l_coproduct(gl(1, 1), &rf(Var::A), &rf(Var::B)).is_pass());
    }

    #[test]
    fn antipode_is_inverse() {
        let l = eval_rep(gl(1, 1), &rf(Var::A), LSign::Plus);
        let s = antipode(&l).unwrap();
        assert!(s.matrix().mul(l.matrix()).is_identity());
    }
}
