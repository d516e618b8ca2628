use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graded_tensor::GradedMatrix;
use crate::scalar_field::{expand, Direction, LaurentPoly, Monomial, RationalFunction, ScalarError, Var, Window};

use super::coeff::Coeff;
use super::DistError;

/// What is known about where the untruncated distribution can be nonzero:
/// per-variable exponent bounds, and optionally a tie `Σ e_i = sum` for
/// two-variable kernels such as `δ(w/z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub bounds: Vec<(Option<i32>, Option<i32>)>,
    pub tie: Option<i32>,
}

impl Support {
    pub fn unbounded(k: usize) -> Support {
        Support {
            bounds: vec![(None, None); k],
            tie: None,
        }
    }

    pub fn contains(&self, e: &[i32]) -> bool {
        let in_bounds = e
            .iter()
            .zip(&self.bounds)
            .all(|(&x, &(lo, hi))| lo.is_none_or(|l| x >= l) && hi.is_none_or(|h| x <= h));
        in_bounds && self.tie.is_none_or(|s| e.iter().sum::<i32>() == s)
    }
}

/// A truncated multi-variable formal distribution with scalar or operator
/// coefficients.
///
/// Coefficients are stored for exponents in `window ± guard` (per variable).
/// Reading an exponent outside that box is an error unless the support
/// metadata proves the coefficient vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDistribution {
    variables: Vec<Var>,
    coefficients: Arc<BTreeMap<Vec<i32>, Coeff>>,
    window: Vec<Window>,
    guard: Vec<i32>,
    support: Support,
}

impl FormalDistribution {
    pub fn new(
        variables: Vec<Var>,
        coefficients: BTreeMap<Vec<i32>, Coeff>,
        window: Vec<Window>,
        guard: Vec<i32>,
        support: Support,
    ) -> FormalDistribution {
        assert_eq!(variables.len(), window.len());
        assert_eq!(variables.len(), guard.len());
        assert_eq!(variables.len(), support.bounds.len());
        let mut d = FormalDistribution {
            variables,
            coefficients: Arc::new(BTreeMap::new()),
            window,
            guard,
            support,
        };
        let kept = coefficients
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && d.in_storage(e))
            .collect();
        d.coefficients = Arc::new(kept);
        d
    }

    pub fn variables(&self) -> &[Var] {
        &self.variables
    }

    pub fn window(&self) -> &[Window] {
        &self.window
    }

    pub fn guard(&self) -> &[i32] {
        &self.guard
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    /// Stored exponent range for variable slot `i`.
    pub fn storage(&self, i: usize) -> Window {
        self.window[i].widen(self.guard[i])
    }

    pub fn in_storage(&self, e: &[i32]) -> bool {
        e.iter().enumerate().all(|(i, &x)| self.storage(i).contains(x))
    }

    /// Nonzero stored coefficients.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i32>, &Coeff)> {
        self.coefficients.iter()
    }

    pub fn position(&self, v: Var) -> Option<usize> {
        self.variables.iter().position(|&x| x == v)
    }

    /// Coefficient at exponent vector `e` (ordered like `variables`).
    pub fn coeff(&self, e: &[i32]) -> Result<Coeff, DistError> {
        if !self.support.contains(e) {
            return Ok(Coeff::zero());
        }
        if !self.in_storage(e) {
            return Err(DistError::OutOfRange { exponents: e.to_vec() });
        }
        Ok(self.coefficients.get(e).cloned().unwrap_or_else(Coeff::zero))
    }

    /// The same distribution in other variables (positionally).
    pub fn rename(&self, variables: &[Var]) -> FormalDistribution {
        assert_eq!(variables.len(), self.variables.len());
        FormalDistribution {
            variables: variables.to_vec(),
            ..self.clone()
        }
    }

    /// Reorders the variable slots so that `variables` is the new order.
    pub fn permute(&self, variables: &[Var]) -> FormalDistribution {
        let perm: Vec<usize> = variables
            .iter()
            .map(|v| self.position(*v).expect("variable present"))
            .collect();
        let coefficients = self
            .coefficients
            .iter()
            .map(|(e, c)| (perm.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        FormalDistribution {
            variables: variables.to_vec(),
            coefficients: Arc::new(coefficients),
            window: perm.iter().map(|&i| self.window[i]).collect(),
            guard: perm.iter().map(|&i| self.guard[i]).collect(),
            support: Support {
                bounds: perm.iter().map(|&i| self.support.bounds[i]).collect(),
                tie: self.support.tie,
            },
        }
    }

    pub fn scale(&self, s: &RationalFunction) -> FormalDistribution {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn neg(&self) -> FormalDistribution {
        self.map_coeffs(|c| c.neg())
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> FormalDistribution {
        let coefficients = self
            .coefficients
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FormalDistribution {
            coefficients: Arc::new(coefficients),
            ..self.clone()
        }
    }

    pub fn try_map_coeffs<F>(&self, f: F) -> Result<FormalDistribution, ScalarError>
    where
        F: Fn(&Coeff) -> Result<Coeff, ScalarError>,
    {
        let mut out = BTreeMap::new();
        for (e, c) in self.coefficients.iter() {
            let v = f(c)?;
            if !v.is_zero() {
                out.insert(e.clone(), v);
            }
        }
        Ok(FormalDistribution {
            coefficients: Arc::new(out),
            ..self.clone()
        })
    }

    /// Difference of two distributions in the same variables. Storage is the
    /// intersection of both, support the hull of both.
    pub fn sub(&self, other: &FormalDistribution) -> FormalDistribution {
        let other = other.permute(&self.variables);
        let k = self.variables.len();
        let mut window = Vec::with_capacity(k);
        let mut guard = Vec::with_capacity(k);
        let mut bounds = Vec::with_capacity(k);
        for i in 0..k {
            let w = Window::new(
                self.window[i].lo.max(other.window[i].lo),
                self.window[i].hi.min(other.window[i].hi),
            );
            let s1 = self.storage(i);
            let s2 = other.storage(i);
            let g = (w.lo - s1.lo.max(s2.lo)).min(s1.hi.min(s2.hi) - w.hi).max(0);
            window.push(w);
            guard.push(g);
            let (a, b) = (self.support.bounds[i], other.support.bounds[i]);
            bounds.push((a.0.zip(b.0).map(|(x, y)| x.min(y)), a.1.zip(b.1).map(|(x, y)| x.max(y))));
        }
        let tie = if self.support.tie == other.support.tie {
            self.support.tie
        } else {
            None
        };
        let mut coefficients: BTreeMap<Vec<i32>, Coeff> = BTreeMap::new();
        for (e, c) in self.coefficients.iter() {
            coefficients.insert(e.clone(), c.clone());
        }
        for (e, c) in other.coefficients.iter() {
            let v = match coefficients.get(e) {
                Some(a) => a.sub(c),
                None => c.neg(),
            };
            coefficients.insert(e.clone(), v);
        }
        FormalDistribution::new(
            self.variables.clone(),
            coefficients,
            window,
            guard,
            Support { bounds, tie },
        )
    }
}

/// The mode window used throughout: `N` exponents centred on zero,
/// `-⌊N/2⌋ ..= N - 1 - ⌊N/2⌋`.
pub fn mode_window(n: usize) -> Window {
    let n = n as i32;
    Window::new(-(n / 2), n - 1 - n / 2)
}

/// `δ(shift · num/den) = Σ_k shift^k num^k den^{-k}` for a monomial `shift`
/// in the scalar parameters (powers of `q`, central-charge symbols).
/// Variables are ordered `[den, num]`.
pub fn delta(num: Var, den: Var, shift: Monomial, window: Window, guard: i32) -> FormalDistribution {
    let store = window.widen(guard);
    let mut coefficients = BTreeMap::new();
    for k in store.iter() {
        if store.contains(-k) {
            coefficients.insert(vec![-k, k], Coeff::Scalar(RationalFunction::monomial(shift.powi(k))));
        }
    }
    FormalDistribution::new(
        vec![den, num],
        coefficients,
        vec![window, window],
        vec![guard, guard],
        Support {
            bounds: vec![(None, None); 2],
            tie: Some(0),
        },
    )
}

/// One-variable distribution from the expansion of a scalar rational
/// function in `var`.
pub fn scalar_series(
    f: &RationalFunction,
    var: Var,
    direction: Direction,
    window: Window,
    guard: i32,
) -> Result<FormalDistribution, DistError> {
    let s = expand(f, var, direction, window.widen(guard))?;
    let coefficients = s.nonzero().map(|(k, c)| (vec![k], Coeff::Scalar(c.clone()))).collect();
    Ok(FormalDistribution::new(
        vec![var],
        coefficients,
        vec![window],
        vec![guard],
        Support {
            bounds: vec![s.support],
            tie: None,
        },
    ))
}

/// One-variable distribution from the entrywise expansion of an operator
/// whose entries are rational in `var`.
pub fn matrix_series(
    m: &GradedMatrix,
    var: Var,
    direction: Direction,
    window: Window,
    guard: i32,
) -> Result<FormalDistribution, DistError> {
    let store = window.widen(guard);
    let mut modes: BTreeMap<i32, GradedMatrix> = BTreeMap::new();
    let mut lo: Option<i32> = None;
    let mut hi: Option<i32> = None;
    let mut lo_unbounded = false;
    let mut hi_unbounded = false;
    for (r, c, v) in m.entries() {
        let s = expand(v, var, direction, store)?;
        match s.support.0 {
            Some(b) => lo = Some(lo.map_or(b, |x| x.min(b))),
            None => lo_unbounded = true,
        }
        match s.support.1 {
            Some(b) => hi = Some(hi.map_or(b, |x| x.max(b))),
            None => hi_unbounded = true,
        }
        for (k, coeff) in s.nonzero() {
            modes
                .entry(k)
                .or_insert_with(|| GradedMatrix::zero(m.space().clone()))
                .set(r, c, coeff.clone());
        }
    }
    let bounds = (
        if lo_unbounded { None } else { lo.or(Some(0)) },
        if hi_unbounded { None } else { hi.or(Some(-1)) },
    );
    let coefficients = modes.into_iter().map(|(k, m)| (vec![k], Coeff::Matrix(m))).collect();
    Ok(FormalDistribution::new(
        vec![var],
        coefficients,
        vec![window],
        vec![guard],
        Support {
            bounds: vec![bounds],
            tie: None,
        },
    ))
}

/// `expand(f, AroundInfinity) − expand(f, AroundZero)` in `var`.
pub fn two_sided_difference(
    f: &RationalFunction,
    var: Var,
    window: Window,
    guard: i32,
) -> Result<FormalDistribution, DistError> {
    let inf = scalar_series(f, var, Direction::AroundInfinity, window, guard)?;
    let zero = scalar_series(f, var, Direction::AroundZero, window, guard)?;
    Ok(inf.sub(&zero))
}

/// Operator version of [`two_sided_difference`].
pub fn matrix_two_sided_difference(
    m: &GradedMatrix,
    var: Var,
    window: Window,
    guard: i32,
) -> Result<FormalDistribution, DistError> {
    let inf = matrix_series(m, var, Direction::AroundInfinity, window, guard)?;
    let zero = matrix_series(m, var, Direction::AroundZero, window, guard)?;
    Ok(inf.sub(&zero))
}

/// A two-variable kernel `g(x/y)` for a function `g` given as a rational
/// function of `Z` alone (the ratio), expanded with `x/y` small
/// (`AroundZero`) or large (`AroundInfinity`). Variables are `[x, y]`.
pub fn ratio_kernel(
    g: &RationalFunction,
    x: Var,
    y: Var,
    direction: Direction,
    window: Window,
    guard: i32,
) -> Result<FormalDistribution, DistError> {
    let store = window.widen(guard);
    let s = expand(g, Var::Z, direction, store)?;
    let mut coefficients = BTreeMap::new();
    for (l, c) in s.nonzero() {
        if store.contains(-l) {
            coefficients.insert(vec![l, -l], Coeff::Scalar(c.clone()));
        }
    }
    let (lo, hi) = s.support;
    Ok(FormalDistribution::new(
        vec![x, y],
        coefficients,
        vec![window, window],
        vec![guard, guard],
        Support {
            bounds: vec![(lo, hi), (hi.map(|h| -h), lo.map(|l| -l))],
            tie: Some(0),
        },
    ))
}

/// A Laurent polynomial in `vars` as a finitely supported distribution;
/// coefficients may involve other (parameter) variables.
pub fn polynomial(p: &LaurentPoly, vars: &[Var], window: Window, guard: i32) -> FormalDistribution {
    let mut coefficients: BTreeMap<Vec<i32>, Coeff> = BTreeMap::new();
    let mut bounds = vec![(None::<i32>, None::<i32>); vars.len()];
    for (m, c) in p.terms() {
        let e: Vec<i32> = vars.iter().map(|v| m.exp(*v)).collect();
        let rest = vars.iter().fold(*m, |acc, v| acc.with_exp(*v, 0));
        let term = RationalFunction::from_poly(LaurentPoly::term(rest, c.clone()));
        for (i, &x) in e.iter().enumerate() {
            let (lo, hi) = bounds[i];
            bounds[i] = (Some(lo.map_or(x, |l| l.min(x))), Some(hi.map_or(x, |h| h.max(x))));
        }
        let entry = coefficients.entry(e).or_insert_with(Coeff::zero);
        *entry = entry.add(&Coeff::Scalar(term));
    }
    // storage must cover every term, whatever the requested window
    let guards = bounds
        .iter()
        .map(|&(lo, hi)| {
            let below = lo.map_or(0, |l| window.lo - l);
            let above = hi.map_or(0, |h| h - window.hi);
            guard.max(below).max(above)
        })
        .collect();
    let bounds = bounds
        .into_iter()
        .map(|(lo, hi)| (lo.or(Some(0)), hi.or(Some(-1))))
        .collect();
    FormalDistribution::new(
        vars.to_vec(),
        coefficients,
        vec![window; vars.len()],
        guards,
        Support { bounds, tie: None },
    )
}
