use rayon::prelude::*;

use crate::distributions::{check_identity, delta, polynomial, ratio_kernel, DistError, Expr, FormalDistribution};
use crate::report::{VerificationOutcome, VerificationReport};
use crate::rll_evaluation::LSign;
use crate::scalar_field::{
    q_minus_qinv, q_plus_qinv, qpow, Direction, LaurentPoly, Monomial, RationalFunction, Var, Window,
};

use super::currents::CurrentSet;

/// One instance of a defining relation, `lhs = rhs` as distributions in
/// `vars`.
#[derive(Clone, Debug)]
pub struct Relation {
    /// Unique instance label, e.g. `D3.k-X.diag.i<m[k+1,X-1]`.
    pub id: String,
    /// Family label shared by all instances of one displayed relation.
    pub family: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub vars: Vec<Var>,
    /// Whether an odd current `X±_m` occurs.
    pub odd: bool,
}

fn sign_char(s: LSign) -> char {
    match s {
        LSign::Plus => '+',
        LSign::Minus => '-',
    }
}

const SIGNS: [LSign; 2] = [LSign::Plus, LSign::Minus];

/// Factory for relation factors; all currents are renamed into the
/// relation's variables.
struct Factors<'a> {
    cs: &'a CurrentSet,
}

impl<'a> Factors<'a> {
    fn x(&self, s: LSign, i: usize, v: Var) -> FormalDistribution {
        let list = match s {
            LSign::Plus => &self.cs.x_plus,
            LSign::Minus => &self.cs.x_minus,
        };
        list[i - 1].rename(&[v])
    }

    fn k(&self, s: LSign, j: usize, v: Var) -> FormalDistribution {
        let list = match s {
            LSign::Plus => &self.cs.k_plus,
            LSign::Minus => &self.cs.k_minus,
        };
        list[j - 1].rename(&[v])
    }

    fn k_inv(&self, s: LSign, j: usize, v: Var) -> FormalDistribution {
        let list = match s {
            LSign::Plus => &self.cs.k_plus_inv,
            LSign::Minus => &self.cs.k_minus_inv,
        };
        list[j - 1].rename(&[v])
    }

    /// `g(x/y)` expanded with `x/y` small (`small = true`) or large.
    fn kernel(&self, g: &RationalFunction, x: Var, y: Var, small: bool) -> Result<FormalDistribution, DistError> {
        let dir = if small {
            Direction::AroundZero
        } else {
            Direction::AroundInfinity
        };
        ratio_kernel(g, x, y, dir, self.cs.window, self.cs.guard)
    }

    fn poly(&self, p: &LaurentPoly, vars: &[Var]) -> FormalDistribution {
        polynomial(p, vars, self.cs.window, self.cs.guard)
    }

    /// `δ(w/z)` at level zero.
    fn delta(&self, z: Var, w: Var) -> FormalDistribution {
        delta(w, z, Monomial::one(), self.cs.window, self.cs.guard)
    }
}

fn lp(v: Var) -> LaurentPoly {
    LaurentPoly::var(v)
}

fn qp(k: i32) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::pow(Var::Q, k))
}

/// `(x q^a − y q^b)/(x − y)` as a function of the ratio `Z = x/y`.
fn ratio_prefactor(a: i32, b: i32) -> RationalFunction {
    let z = RationalFunction::var(Var::Z);
    let one = RationalFunction::one();
    &(&(&z * &qpow(a)) - &qpow(b)) / &(&z - &one)
}

/// `(z − w)/(zq − wq⁻¹)` as a function of `Z = z/w`.
fn k_k_prefactor() -> RationalFunction {
    let z = RationalFunction::var(Var::Z);
    let one = RationalFunction::one();
    &(&z - &one) / &(&(&z * &qpow(1)) - &qpow(-1))
}

/// `(wq − zq⁻¹)/(zq − wq⁻¹)` as a function of `Z = z/w`.
fn k_k_opposite_prefactor() -> RationalFunction {
    let z = RationalFunction::var(Var::Z);
    &(&qpow(1) - &(&z * &qpow(-1))) / &(&(&z * &qpow(1)) - &qpow(-1))
}

/// Direction of the prefactor expansion for a relation whose `k(z)` has
/// sign `s`: the prefactor is expanded in the same regime as `k(z)`.
fn small_for(s: LSign) -> bool {
    LSign::Plus.direction() == Direction::AroundZero && s == LSign::Plus
        || LSign::Plus.direction() == Direction::AroundInfinity && s == LSign::Minus
}

/// All relation families of the current presentation at level zero, for
/// the current set `cs` of `gl(m|n)`.
pub fn definition_relations(cs: &CurrentSet) -> Result<Vec<Relation>, DistError> {
    let m = cs.ps.m;
    let nn = cs.ps.dim();
    let anchor = if cs.ps.m == 1 && cs.ps.n == 1 { "D2" } else { "D3" };
    let fx = Factors { cs };
    let (z, w) = (Var::Z, Var::W);
    let mut out = Vec::new();
    let mut push = |family: String, inst: String, lhs: Expr, rhs: Expr, odd: bool| {
        out.push(Relation {
            id: format!("{family}[{inst}]"),
            family,
            lhs,
            rhs,
            vars: vec![z, w],
            odd,
        });
    };

    // k-k relations
    for s in SIGNS {
        for i in 1..=nn {
            for j in 1..=nn {
                if i == j {
                    continue;
                }
                let c = sign_char(s);
                push(
                    format!("{anchor}.k-k.same-sign"),
                    format!("k{c}{i}(z),k{c}{j}(w)"),
                    Expr::product(vec![fx.k(s, i, z), fx.k(s, j, w)]),
                    Expr::product(vec![fx.k(s, j, w), fx.k(s, i, z)]),
                    false,
                );
            }
        }
    }
    for i in 1..=nn {
        if i <= m {
            push(
                format!("{anchor}.k-k.opposite.i<=m"),
                format!("k+{i}(z),k-{i}(w)"),
                Expr::product(vec![fx.k(LSign::Plus, i, z), fx.k(LSign::Minus, i, w)]),
                Expr::product(vec![fx.k(LSign::Minus, i, w), fx.k(LSign::Plus, i, z)]),
                false,
            );
        } else {
            let g = fx.kernel(&k_k_opposite_prefactor(), z, w, true)?;
            push(
                format!("{anchor}.k-k.opposite.i>m"),
                format!("k+{i}(z),k-{i}(w)"),
                Expr::product(vec![g.clone(), fx.k(LSign::Plus, i, z), fx.k(LSign::Minus, i, w)]),
                Expr::product(vec![g, fx.k(LSign::Minus, i, w), fx.k(LSign::Plus, i, z)]),
                false,
            );
        }
    }
    for s in SIGNS {
        let opp = if s == LSign::Plus { LSign::Minus } else { LSign::Plus };
        let g = fx.kernel(&k_k_prefactor(), z, w, small_for(s))?;
        for i in 1..=nn {
            for j in 1..i {
                push(
                    format!("{anchor}.k-k.inverse.i>j"),
                    format!("k{}{i}(w)^-1,k{}{j}(z)", sign_char(opp), sign_char(s)),
                    Expr::product(vec![g.clone(), fx.k_inv(opp, i, w), fx.k(s, j, z)]),
                    Expr::product(vec![g.clone(), fx.k(s, j, z), fx.k_inv(opp, i, w)]),
                    false,
                );
            }
        }
    }

    // k-X relations
    for s in SIGNS {
        for j in 1..=nn {
            for i in 1..nn {
                let off = j as i64 - i as i64;
                let (family, pre) = if !(0..=1).contains(&off) {
                    ("trivial", None)
                } else if i == m {
                    ("fermionic", Some(ratio_prefactor(1, -1)))
                } else if off == 0 {
                    if i < m {
                        ("diag.i<m", Some(ratio_prefactor(1, -1)))
                    } else {
                        ("diag.i>m", Some(ratio_prefactor(-1, 1)))
                    }
                } else if i < m {
                    ("next.i<m", Some(ratio_prefactor(-1, 1)))
                } else {
                    ("next.i>m", Some(ratio_prefactor(1, -1)))
                };
                let c = sign_char(s);
                let odd = i == m;
                let rhs_of = |xw: FormalDistribution| -> Result<Expr, DistError> {
                    Ok(match &pre {
                        None => Expr::product(vec![xw]),
                        Some(g) => Expr::product(vec![fx.kernel(g, z, w, small_for(s))?, xw]),
                    })
                };
                push(
                    format!("{anchor}.k-X.{family}"),
                    format!("k{c}{j}(z)^-1,X-{i}(w),k{c}{j}(z)"),
                    Expr::product(vec![fx.k_inv(s, j, z), fx.x(LSign::Minus, i, w), fx.k(s, j, z)]),
                    rhs_of(fx.x(LSign::Minus, i, w))?,
                    odd,
                );
                push(
                    format!("{anchor}.k-X.{family}"),
                    format!("k{c}{j}(z),X+{i}(w),k{c}{j}(z)^-1"),
                    Expr::product(vec![fx.k(s, j, z), fx.x(LSign::Plus, i, w), fx.k_inv(s, j, z)]),
                    rhs_of(fx.x(LSign::Plus, i, w))?,
                    odd,
                );
            }
        }
    }

    // quadratic X-X relations at one node
    for i in 1..nn {
        for s in SIGNS {
            let c = sign_char(s);
            let xz = fx.x(s, i, z);
            let xw = fx.x(s, i, w);
            if i == m {
                push(
                    format!("{anchor}.X-X.anticommutator"),
                    format!("X{c}{i}(z),X{c}{i}(w)"),
                    Expr::product(vec![xz.clone(), xw.clone()]).plus(Expr::product(vec![xw, xz])),
                    Expr::zero(),
                    true,
                );
                continue;
            }
            // (a, b) = (q^{∓1}, q^{±1}) with the upper sign for X⁻
            let (a, b) = if s == LSign::Minus { (-1, 1) } else { (1, -1) };
            let (first, second, family) = if i < m { (z, w, "same.i<m") } else { (w, z, "same.i>m") };
            let left = &(&lp(first) * &qp(a)) - &(&lp(second) * &qp(b));
            let right = &(&lp(first) * &qp(b)) - &(&lp(second) * &qp(a));
            push(
                format!("{anchor}.X-X.{family}"),
                format!("X{c}{i}(z),X{c}{i}(w)"),
                Expr::product(vec![fx.poly(&left, &[z, w]), xz.clone(), xw.clone()]),
                Expr::product(vec![fx.poly(&right, &[z, w]), xw, xz]),
                false,
            );
        }
    }

    // adjacent nodes
    for i in 1..nn.saturating_sub(1) {
        let (first, second, family) = if i < m {
            (z, w, "adjacent.i<m")
        } else {
            (w, z, "adjacent.i>=m")
        };
        let plain = &lp(first) - &lp(second);
        let shifted = &(&lp(first) * &qp(1)) - &(&lp(second) * &qp(-1));
        let odd = i == m || i + 1 == m;
        push(
            format!("{anchor}.X-X.{family}"),
            format!("X+{i}(z),X+{}(w)", i + 1),
            Expr::product(vec![
                fx.poly(&plain, &[z, w]),
                fx.x(LSign::Plus, i, z),
                fx.x(LSign::Plus, i + 1, w),
            ]),
            Expr::product(vec![
                fx.poly(&shifted, &[z, w]),
                fx.x(LSign::Plus, i + 1, w),
                fx.x(LSign::Plus, i, z),
            ]),
            odd,
        );
        push(
            format!("{anchor}.X-X.{family}"),
            format!("X-{i}(z),X-{}(w)", i + 1),
            Expr::product(vec![
                fx.poly(&shifted, &[z, w]),
                fx.x(LSign::Minus, i, z),
                fx.x(LSign::Minus, i + 1, w),
            ]),
            Expr::product(vec![
                fx.poly(&plain, &[z, w]),
                fx.x(LSign::Minus, i + 1, w),
                fx.x(LSign::Minus, i, z),
            ]),
            odd,
        );
    }

    // mixed X⁺X⁻ relations
    for i in 1..nn {
        for j in 1..nn {
            let both_odd = i == m && j == m;
            let family = if both_odd {
                "mixed-anticommutator"
            } else if i == m || j == m {
                "mixed-odd-even"
            } else {
                "mixed-commutator"
            };
            let xp = fx.x(LSign::Plus, i, z);
            let xm = fx.x(LSign::Minus, j, w);
            let second = Expr::product(vec![xm, xp.clone()]);
            let lhs = Expr::product(vec![xp, fx.x(LSign::Minus, j, w)]);
            let lhs = if both_odd { lhs.plus(second) } else { lhs.minus(second) };
            let rhs = if i != j {
                Expr::zero()
            } else {
                let pref = if i == m { q_minus_qinv() } else { -&q_minus_qinv() };
                let d = fx.delta(z, w);
                Expr::scaled(
                    pref.clone(),
                    vec![d.clone(), fx.k(LSign::Plus, i + 1, w), fx.k_inv(LSign::Plus, i, w)],
                )
                .minus(Expr::scaled(
                    pref,
                    vec![d, fx.k(LSign::Minus, i + 1, z), fx.k_inv(LSign::Minus, i, z)],
                ))
            };
            push(
                format!("{anchor}.X-X.{family}"),
                format!("X+{i}(z),X-{j}(w)"),
                lhs,
                rhs,
                i == m || j == m,
            );
        }
    }
    Ok(out)
}

/// Swaps `z1 ↔ z2` in every factor of `e` and adds the result to `e`.
fn symmetrize(e: Expr) -> Expr {
    let swap = |v: Var| match v {
        Var::Z1 => Var::Z2,
        Var::Z2 => Var::Z1,
        other => other,
    };
    let mut swapped = e.clone();
    for t in &mut swapped.terms {
        for f in &mut t.factors {
            let vars: Vec<Var> = f.variables().iter().map(|v| swap(*v)).collect();
            *f = f.rename(&vars);
        }
    }
    e.plus(swapped)
}

/// Serre and extra Serre relations for every admissible index.
pub fn serre_relations(cs: &CurrentSet) -> Result<Vec<Relation>, DistError> {
    let m = cs.ps.m;
    let n = cs.ps.n;
    let nn = cs.ps.dim();
    let fx = Factors { cs };
    let (z1, z2, w, w1, w2) = (Var::Z1, Var::Z2, Var::W, Var::W1, Var::W2);
    let qq = q_plus_qinv();
    let mut out = Vec::new();

    // X_a(z1)X_a(z2)X_b(w) − (q+q⁻¹)X_a(z1)X_b(w)X_a(z2) + X_b(w)X_a(z1)X_a(z2),
    // optionally multiplied by a prefactor in z1, z2
    let cubic = |s: LSign, a: usize, b: usize, pre: Option<&LaurentPoly>| -> Expr {
        let p: Vec<FormalDistribution> = pre.map(|p| fx.poly(p, &[z1, z2])).into_iter().collect();
        let with = |fs: Vec<FormalDistribution>| [p.clone(), fs].concat();
        Expr::product(with(vec![fx.x(s, a, z1), fx.x(s, a, z2), fx.x(s, b, w)]))
            .minus(Expr::scaled(
                qq.clone(),
                with(vec![fx.x(s, a, z1), fx.x(s, b, w), fx.x(s, a, z2)]),
            ))
            .plus(Expr::product(with(vec![fx.x(s, b, w), fx.x(s, a, z1), fx.x(s, a, z2)])))
    };
    let mut push = |family: &str, inst: String, lhs: Expr, vars: Vec<Var>, odd: bool| {
        out.push(Relation {
            id: format!("{family}[{inst}]"),
            family: family.to_string(),
            lhs: symmetrize(lhs),
            rhs: Expr::zero(),
            vars,
            odd,
        });
    };
    for s in SIGNS {
        let c = sign_char(s);
        // (q^{∓1}, q^{±1}) with the upper sign for X⁺
        let (a, b) = if s == LSign::Plus { (-1, 1) } else { (1, -1) };
        for i in 1..nn.saturating_sub(1) {
            let odd = i == m || i + 1 == m;
            if i != m {
                push(
                    "serre1",
                    format!("X{c},i={i}"),
                    cubic(s, i, i + 1, None),
                    vec![z1, z2, w],
                    odd,
                );
            }
            if i + 1 != m {
                push(
                    "serre2",
                    format!("X{c},i={i}"),
                    cubic(s, i + 1, i, None),
                    vec![z1, z2, w],
                    odd,
                );
            }
        }
        let p1 = &(&lp(z1) * &qp(a)) - &(&lp(z2) * &qp(b));
        let p2 = &(&lp(z2) * &qp(a)) - &(&lp(z1) * &qp(b));
        if m >= 2 {
            push(
                "serre3",
                format!("X{c}"),
                cubic(s, m, m - 1, Some(&p1)),
                vec![z1, z2, w],
                true,
            );
        }
        if n >= 2 {
            push(
                "serre4",
                format!("X{c}"),
                cubic(s, m, m + 1, Some(&p2)),
                vec![z1, z2, w],
                true,
            );
        }
        if m >= 2 && n >= 2 {
            let xm = |v: Var| fx.x(s, m, v);
            let xa = |v: Var| fx.x(s, m - 1, v);
            let xb = |v: Var| fx.x(s, m + 1, v);
            let mid = &(&lp(z1) + &lp(z2)) * &(&qp(a) - &qp(b));
            let f1 = fx.poly(&p1, &[z1, z2]);
            let f2 = fx.poly(&p2, &[z1, z2]);
            let fm = fx.poly(&mid, &[z1, z2]);
            let e = Expr::product(vec![f1.clone(), xm(z1), xm(z2), xa(w1), xb(w2)])
                .minus(Expr::scaled(qq.clone(), vec![f1, xm(z1), xa(w1), xm(z2), xb(w2)]))
                .plus(Expr::product(vec![fm, xa(w1), xm(z1), xm(z2), xb(w2)]))
                .minus(Expr::scaled(
                    qq.clone(),
                    vec![f2.clone(), xa(w1), xm(z1), xb(w2), xm(z2)],
                ))
                .plus(Expr::product(vec![f2, xa(w1), xb(w2), xm(z1), xm(z2)]));
            push("extra-serre", format!("X{c}"), e, vec![z1, z2, w1, w2], true);
        }
    }
    Ok(out)
}

/// Evaluates one relation on `window`; errors become failures with a note.
pub fn evaluate(rel: &Relation, window: Window) -> VerificationOutcome {
    match check_identity(&rel.lhs, &rel.rhs, &rel.vars, window) {
        Ok(o) => o,
        Err(e) => VerificationOutcome::fail(None).with_note(e.to_string()),
    }
}

/// Evaluates relations in parallel; the report keeps the input order.
pub fn evaluate_all(rels: &[Relation], window: Window, m: usize, n: usize, prefix: &str) -> VerificationReport {
    let outcomes: Vec<(VerificationOutcome, u64)> = rels
        .par_iter()
        .map(|r| {
            let start = std::time::Instant::now();
            let o = evaluate(r, window);
            (o, start.elapsed().as_millis() as u64)
        })
        .collect();
    let mut report = VerificationReport::new();
    for (r, (o, ms)) in rels.iter().zip(outcomes) {
        report.push(&format!("{prefix}/{}", r.id), m, n, &r.family, o, ms);
    }
    report
}
