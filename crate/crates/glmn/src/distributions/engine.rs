use std::collections::{BTreeMap, BTreeSet};

use crate::report::{Counterexample, Status, VerificationOutcome};
use crate::scalar_field::{RationalFunction, Var, Window};

use super::coeff::Coeff;
use super::dist::FormalDistribution;
use super::DistError;

/// A product `scalar · d₁ d₂ ⋯ d_k` of distributions, multiplied in the
/// listed order.
#[derive(Clone, Debug)]
pub struct Term {
    pub scalar: RationalFunction,
    pub factors: Vec<FormalDistribution>,
}

/// A sum of products of distributions.
#[derive(Clone, Debug, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { terms: Vec::new() }
    }

    pub fn product(factors: Vec<FormalDistribution>) -> Expr {
        Expr::scaled(RationalFunction::one(), factors)
    }

    pub fn scaled(scalar: RationalFunction, factors: Vec<FormalDistribution>) -> Expr {
        Expr {
            terms: vec![Term { scalar, factors }],
        }
    }

    pub fn plus(mut self, other: Expr) -> Expr {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: Expr) -> Expr {
        self.plus(other.scale(&RationalFunction::int(-1)))
    }

    pub fn scale(mut self, s: &RationalFunction) -> Expr {
        for t in &mut self.terms {
            t.scalar = &t.scalar * s;
        }
        self
    }

    /// Variables occurring in any factor.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().flat_map(|f| f.variables().iter().copied()))
            .collect()
    }

    /// Coefficient of `Π v^{target[v]}`.
    pub fn coefficient(&self, target: &BTreeMap<Var, i32>) -> Result<Coeff, DistError> {
        let mut acc = Coeff::zero();
        for t in &self.terms {
            if t.scalar.is_zero() {
                continue;
            }
            let c = product_coefficient(&t.factors, target)?;
            acc = acc.add(&c.scale(&t.scalar));
        }
        Ok(acc)
    }
}

/// Interval arithmetic on possibly unbounded integer ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Range {
    lo: Option<i32>,
    hi: Option<i32>,
}

impl Range {
    fn point(x: i32) -> Range {
        Range {
            lo: Some(x),
            hi: Some(x),
        }
    }

    fn intersect(self, o: Range) -> Range {
        Range {
            lo: match (self.lo, o.lo) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            hi: match (self.hi, o.hi) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }

    fn is_empty(self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }

    /// `{ c - x : x ∈ self }`.
    fn reflect_from(self, c: i32) -> Range {
        Range {
            lo: self.hi.map(|h| c - h),
            hi: self.lo.map(|l| c - l),
        }
    }

    fn within(self, w: Window) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if w.lo <= a && b <= w.hi)
    }
}

/// Coefficient of a product of distributions at `target`.
///
/// The factors are consumed left to right. A variable of the current factor
/// that occurs in no later factor is pinned to the remaining target exponent;
/// the others range over exponents compatible with the later factors'
/// support. Every exponent that could contribute must lie in the factor's
/// stored box, otherwise the product is not computable from the stored data
/// and an error is returned.
pub fn product_coefficient(factors: &[FormalDistribution], target: &BTreeMap<Var, i32>) -> Result<Coeff, DistError> {
    let mut remaining = target.clone();
    for f in factors {
        for v in f.variables() {
            remaining.entry(*v).or_insert(0);
        }
    }
    let mut out = Coeff::zero();
    recurse(factors, 0, &mut remaining, &Coeff::one(), &mut out)?;
    Ok(out)
}

fn later_range(factors: &[FormalDistribution], from: usize, v: Var) -> Option<Range> {
    let mut found = false;
    let mut lo = Some(0);
    let mut hi = Some(0);
    for f in &factors[from..] {
        if let Some(i) = f.position(v) {
            found = true;
            let (a, b) = f.support().bounds[i];
            lo = lo.zip(a).map(|(x, y)| x + y);
            hi = hi.zip(b).map(|(x, y)| x + y);
        }
    }
    found.then_some(Range { lo, hi })
}

fn recurse(
    factors: &[FormalDistribution],
    k: usize,
    remaining: &mut BTreeMap<Var, i32>,
    acc: &Coeff,
    out: &mut Coeff,
) -> Result<(), DistError> {
    if k == factors.len() {
        if remaining.values().all(|&e| e == 0) {
            *out = out.add(acc);
        }
        return Ok(());
    }
    let f = &factors[k];
    let vars = f.variables();
    // admissible exponent range per slot of this factor
    let mut ranges: Vec<Range> = Vec::with_capacity(vars.len());
    for (i, v) in vars.iter().enumerate() {
        let t = remaining[v];
        let r = match later_range(factors, k + 1, *v) {
            None => Range::point(t),
            Some(later) => later.reflect_from(t),
        };
        let (slo, shi) = f.support().bounds[i];
        ranges.push(r.intersect(Range { lo: slo, hi: shi }));
    }
    if let Some(s) = f.support().tie {
        if vars.len() == 2 {
            let r0 = ranges[0].intersect(ranges[1].reflect_from(s));
            ranges = vec![r0, r0.reflect_from(s)];
        }
    }
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok(());
    }
    for (i, r) in ranges.iter().enumerate() {
        if r.lo.is_none() || r.hi.is_none() {
            return Err(DistError::Unbounded {
                variable: vars[i].name().to_string(),
            });
        }
        if !r.within(f.storage(i)) {
            return Err(DistError::InsufficientGuard {
                variable: vars[i].name().to_string(),
                needed: (r.lo.unwrap_or(i32::MIN), r.hi.unwrap_or(i32::MAX)),
                stored: (f.storage(i).lo, f.storage(i).hi),
            });
        }
    }
    for (e, c) in f.entries() {
        let fits = e
            .iter()
            .zip(&ranges)
            .all(|(&x, r)| r.lo.is_none_or(|l| x >= l) && r.hi.is_none_or(|h| x <= h));
        if !fits {
            continue;
        }
        for (i, v) in vars.iter().enumerate() {
            *remaining.get_mut(v).expect("variable registered") -= e[i];
        }
        let next = acc.mul(c);
        let res = if next.is_zero() {
            Ok(())
        } else {
            recurse(factors, k + 1, remaining, &next, out)
        };
        for (i, v) in vars.iter().enumerate() {
            *remaining.get_mut(v).expect("variable registered") += e[i];
        }
        res?;
    }
    Ok(())
}

/// All exponent vectors of `vars` in the box `window^k`.
pub fn window_points(vars: &[Var], window: Window) -> Vec<BTreeMap<Var, i32>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        let mut next = Vec::new();
        for p in &out {
            for e in window.iter() {
                let mut q = p.clone();
                q.insert(*v, e);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Compares two expressions coefficientwise on `window` in each of `vars`.
///
/// When the identity fails but `lhs = -rhs` holds on the whole window, the
/// outcome is `SignMismatch` (with the first failing coefficient of the
/// printed form as counterexample).
pub fn check_identity(lhs: &Expr, rhs: &Expr, vars: &[Var], window: Window) -> Result<VerificationOutcome, DistError> {
    let mut first_bad: Option<Counterexample> = None;
    let mut opposite_holds = true;
    for point in window_points(vars, window) {
        let a = lhs.coefficient(&point)?;
        let b = rhs.coefficient(&point)?;
        if a.sub(&b).is_zero() {
            if !a.is_zero() {
                opposite_holds = false;
            }
            continue;
        }
        if !a.add(&b).is_zero() {
            opposite_holds = false;
        }
        if first_bad.is_none() {
            first_bad = Some(Counterexample {
                coordinates: vars.iter().map(|v| point[v] as i64).collect(),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    Ok(match first_bad {
        None => VerificationOutcome::pass(),
        Some(cx) if opposite_holds => VerificationOutcome {
            status: Status::SignMismatch,
            counterexample: Some(cx),
            note: Some("holds with the opposite overall sign".into()),
        },
        Some(cx) => VerificationOutcome::fail(Some(cx)),
    })
}
