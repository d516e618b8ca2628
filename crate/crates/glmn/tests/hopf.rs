use glmn::hopf_symbolic::{Algebra, Gen, Kind, TensorExpr};
use glmn::scalar_field::{Monomial, Var};

fn g(kind: Kind, i: usize, v: Var) -> TensorExpr {
    TensorExpr::gen(Gen::new(kind, i, Monomial::var(v)))
}

#[test]
fn antipode_reverses_products() {
    let alg = Algebra::new(2, 1);
    let a = g(Kind::XPlus, 2, Var::Z);
    let b = g(Kind::XMinus, 2, Var::W);
    let lhs = alg.antipode(&alg.mul(&a, &b));
    // both factors are odd, so reversing them costs a sign
    let rhs = alg.mul(&alg.antipode(&b), &alg.antipode(&a)).neg();
    assert!(alg.difference(&lhs, &rhs).is_zero());
}

#[test]
fn coproduct_is_multiplicative_on_products() {
    let alg = Algebra::new(1, 2);
    let a = g(Kind::XPlus, 2, Var::Z);
    let b = g(Kind::KMinus, 3, Var::W);
    let lhs = alg.coproduct(&alg.mul(&a, &b));
    let rhs = alg.mul(&alg.coproduct(&a), &alg.coproduct(&b));
    assert!(alg.difference(&lhs, &rhs).is_zero());
}

#[test]
fn coassociativity_on_a_product_of_currents() {
    let alg = Algebra::new(1, 1);
    let e = alg.mul(&g(Kind::XPlus, 1, Var::Z), &g(Kind::XMinus, 1, Var::W));
    let d = alg.coproduct(&e);
    assert!(alg
        .difference(&alg.coproduct_at(&d, 0), &alg.coproduct_at(&d, 1))
        .is_zero());
}

#[test]
fn counit_kills_the_raising_current() {
    let alg = Algebra::new(2, 2);
    assert!(alg.counit(&g(Kind::XPlus, 3, Var::Z)).is_zero());
    assert_eq!(alg.counit(&g(Kind::Phi, 1, Var::Z)), TensorExpr::one(0));
}
