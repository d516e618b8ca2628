//! Multivariate gcd: monomial content is split off first, then a recursive
//! primitive polynomial remainder sequence runs on the polynomial parts.

use super::monomial::{Monomial, Var};
use super::poly::LaurentPoly;

/// Greatest common divisor of two Laurent polynomials, normalized to a monic
/// polynomial with no monomial factor (monomials are units of the Laurent
/// ring). `gcd(0, 0) = 0`.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => LaurentPoly::zero(),
        (true, false) => g.split_content().1.monic(),
        (false, true) => f.split_content().1.monic(),
        (false, false) => gcd_poly(&f.split_content().1, &g.split_content().1),
    }
}

/// gcd of two polynomials (non-negative exponents); result is monic.
fn gcd_poly(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return LaurentPoly::one();
    }
    if f == g {
        return f.monic();
    }
    let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    if big.div_exact(small).is_some_and(|q| q.is_polynomial()) {
        return small.monic();
    }
    // A variable present in only one argument can only contribute through
    // that argument's content with respect to it.
    for v in Var::ALL {
        match (f.involves(v), g.involves(v)) {
            (true, false) => return gcd_poly(&content(&dense_in(f, v)), g),
            (false, true) => return gcd_poly(f, &content(&dense_in(g, v))),
            _ => {}
        }
    }
    // Main variable: the common variable of least degree keeps the
    // pseudo-remainder sequence short.
    let x = Var::ALL.into_iter().filter(|&v| f.involves(v)).min_by_key(|&v| {
        let df = f.degree_range(v).map_or(0, |r| r.1);
        let dg = g.degree_range(v).map_or(0, |r| r.1);
        (df.max(dg), df.min(dg))
    });
    let Some(x) = x else { return LaurentPoly::one() };
    let fx = dense_in(f, x);
    let gx = dense_in(g, x);
    if fx.len() == 1 {
        return gcd_poly(f, &content(&gx));
    }
    if gx.len() == 1 {
        return gcd_poly(&content(&fx), g);
    }
    let cf = content(&fx);
    let cg = content(&gx);
    let pf = divide_coefficients(&fx, &cf);
    let pg = divide_coefficients(&gx, &cg);
    let c = gcd_poly(&cf, &cg);
    let h = primitive_prs(pf, pg);
    (&c * &from_dense(x, &h)).monic()
}

/// Coefficients of `p` in powers of `x`, dense from degree 0.
fn dense_in(p: &LaurentPoly, x: Var) -> Vec<LaurentPoly> {
    let map = p.coefficients_in(x);
    let top = map.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![LaurentPoly::zero(); top as usize + 1];
    for (e, c) in map {
        out[e as usize] = c;
    }
    out
}

fn from_dense(x: Var, coeffs: &[LaurentPoly]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        out = &out + &c.mul_monomial(&Monomial::pow(x, e as i32));
    }
    out
}

fn content(coeffs: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd_poly(&acc, c);
        if acc.as_constant().is_some() {
            return LaurentPoly::one();
        }
    }
    acc
}

fn divide_coefficients(coeffs: &[LaurentPoly], by: &LaurentPoly) -> Vec<LaurentPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_dense(v: &[LaurentPoly]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Sparse pseudo-remainder of `a` by `b` in the main variable.
fn prem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while !is_zero_dense(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<LaurentPoly> = r.iter().map(|c| c * lcb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lcr);
        }
        debug_assert!(next[dr].is_zero());
        next.pop();
        r = next;
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn primitive_prs(mut a: Vec<LaurentPoly>, mut b: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if is_zero_dense(&r) {
            return b;
        }
        if r.len() == 1 {
            return vec![LaurentPoly::one()];
        }
        let c = content(&r);
        let r = divide_coefficients(&r, &c);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_field::poly::rat;

    fn v(x: Var) -> LaurentPoly {
        LaurentPoly::var(x)
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let common = &(&v(Var::Z) * &v(Var::Q)) - &v(Var::W);
        let f = &common * &(&v(Var::Z) + &LaurentPoly::int(2));
        let g = &common * &(&v(Var::W) - &v(Var::A));
        assert_eq!(gcd(&f, &g), common.monic());
    }

    #[test]
    fn gcd_ignores_monomial_units() {
        let f = v(Var::Z).mul_monomial(&Monomial::pow(Var::Q, -3));
        let g = &v(Var::Z) * &v(Var::W);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = &v(Var::Z) - &v(Var::W);
        let g = &v(Var::Z) + &v(Var::W);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_with_content_in_lower_variable() {
        // (q^2 - 1)(z - w) and (q - 1)(z + w): common factor (q - 1)
        let q = v(Var::Q);
        let f = &(&(&q * &q) - &LaurentPoly::one()) * &(&v(Var::Z) - &v(Var::W));
        let g = &(&q - &LaurentPoly::one()) * &(&v(Var::Z) + &v(Var::W));
        assert_eq!(gcd(&f, &g), &q - &LaurentPoly::one());
    }

    #[test]
    fn gcd_scales_to_monic() {
        let f = (&v(Var::Z) - &v(Var::W)).scale(&rat(6));
        let g = (&v(Var::Z) - &v(Var::W)).scale(&rat(-4));
        assert_eq!(gcd(&f, &g), &v(Var::Z) - &v(Var::W));
    }
}
