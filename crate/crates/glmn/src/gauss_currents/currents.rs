use crate::distributions::{matrix_series, matrix_two_sided_difference, FormalDistribution};
use crate::graded_tensor::{graded_kron, GradedMatrix, GradedSpace, ParityStructure};
use crate::rll_evaluation::{eval_rep, LSign};
use crate::scalar_field::{Direction, LaurentPoly, RationalFunction, Sampler, Var, Window};

use super::gauss::{gauss_of, GaussData};
use super::GaussError;

/// Rational kernels (functions of [`Var::Z`]) of the simple-root Gauss
/// coordinates of one representation: `e_i = E_{i+1,i}`, `f_i = F_{i,i+1}`,
/// `k_j = K_j` and `k_j⁻¹`. Node indices are 0-based here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentKernels {
    pub ps: ParityStructure,
    pub quantum: GradedSpace,
    pub e: Vec<GradedMatrix>,
    pub f: Vec<GradedMatrix>,
    pub k: Vec<GradedMatrix>,
    pub k_inv: Vec<GradedMatrix>,
}

impl CurrentKernels {
    pub fn from_gauss(ps: ParityStructure, g: &GaussData) -> Result<CurrentKernels, GaussError> {
        let n = g.size();
        let k_inv =
            g.k.iter()
                .enumerate()
                .map(|(j, k)| k.inverse().map_err(|_| GaussError::SingularPivot { index: j + 1 }))
                .collect::<Result<Vec<_>, _>>()?;
        Ok(CurrentKernels {
            ps,
            quantum: g.quantum.clone(),
            e: (0..n - 1).map(|i| g.e[&(i + 1, i)].clone()).collect(),
            f: (0..n - 1).map(|i| g.f[&(i, i + 1)].clone()).collect(),
            k: g.k.clone(),
            k_inv,
        })
    }

    /// Number of simple roots, `m + n − 1`.
    pub fn nodes(&self) -> usize {
        self.e.len()
    }

    /// `k_{i+1}(z) k_i(z)⁻¹` for the 0-based node `i`; its `−` expansion is
    /// `ψ_i`, its `+` expansion `φ_i`.
    pub fn psi(&self, i: usize) -> GradedMatrix {
        self.k[i + 1].mul(&self.k_inv[i])
    }

    /// Applies `f` to every kernel entry (sampling, renaming of points).
    pub fn try_map<F>(&self, f: F) -> Result<CurrentKernels, GaussError>
    where
        F: Fn(&RationalFunction) -> Result<RationalFunction, crate::scalar_field::ScalarError>,
    {
        let map_all = |v: &[GradedMatrix]| -> Result<Vec<GradedMatrix>, GaussError> {
            v.iter().map(|m| m.try_map(&f).map_err(GaussError::from)).collect()
        };
        Ok(CurrentKernels {
            ps: self.ps,
            quantum: self.quantum.clone(),
            e: map_all(&self.e)?,
            f: map_all(&self.f)?,
            k: map_all(&self.k)?,
            k_inv: map_all(&self.k_inv)?,
        })
    }

    /// Random rational values for the parameters (everything except `Z`).
    pub fn sample(&self, sampler: &Sampler) -> Result<CurrentKernels, GaussError> {
        self.try_map(|v| sampler.apply(v))
    }
}

/// Gauss kernels of the evaluation representation at point `a`.
pub fn evaluation_kernels(ps: ParityStructure, a: &RationalFunction) -> Result<CurrentKernels, GaussError> {
    let l = eval_rep(ps, a, LSign::Plus);
    CurrentKernels::from_gauss(ps, &gauss_of(&l)?)
}

/// The single pole in `Z` of a kernel whose denominators are all of degree
/// one in `Z` with a common root; `None` for a Laurent polynomial kernel.
pub fn simple_pole(m: &GradedMatrix, label: &str) -> Result<Option<RationalFunction>, GaussError> {
    let mut pole: Option<RationalFunction> = None;
    for (_, _, v) in m.entries() {
        let den = v.denominator();
        if !den.involves(Var::Z) {
            continue;
        }
        let by_deg = den.coefficients_in(Var::Z);
        let bad = || GaussError::NonSimplePole {
            current: label.to_string(),
        };
        if by_deg.keys().any(|&d| d != 0 && d != 1) {
            return Err(bad());
        }
        let c0 = RationalFunction::from_poly(by_deg.get(&0).cloned().unwrap_or_else(LaurentPoly::zero));
        let c1 = RationalFunction::from_poly(by_deg[&1].clone());
        let p = -&(&c0 / &c1);
        match &pole {
            None => pole = Some(p),
            Some(old) if *old == p => {}
            Some(_) => return Err(bad()),
        }
    }
    Ok(pole)
}

fn at_point(m: &GradedMatrix, p: &RationalFunction) -> Result<GradedMatrix, GaussError> {
    Ok(m.try_map(|v| v.substitute_rf(Var::Z, p))?)
}

/// Kernels of the image of the currents under the coproduct at level zero,
/// acting on `Q_a ⊗ Q_b`:
/// `X⁺ ↦ X⁺⊗1 + ψ⊗X⁺`, `X⁻ ↦ 1⊗X⁻ + X⁻⊗φ`, `k ↦ k⊗k`.
///
/// `X±` are delta-supported at the pole of their kernel, so the slowly
/// varying partner `ψ` (resp. `φ`) is evaluated at that pole; the product
/// `ψ(z) δ(z/p)` is `ψ(p) δ(z/p)`.
pub fn two_site_kernels(a: &CurrentKernels, b: &CurrentKernels) -> Result<CurrentKernels, GaussError> {
    let ia = GradedMatrix::identity(a.quantum.clone());
    let ib = GradedMatrix::identity(b.quantum.clone());
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..a.nodes() {
        let mut ei = graded_kron(&a.e[i], &ib);
        if let Some(p) = simple_pole(&b.e[i], &format!("e_{}", i + 1))? {
            ei = ei.add(&graded_kron(&at_point(&a.psi(i), &p)?, &b.e[i]));
        }
        e.push(ei);
        let mut fi = graded_kron(&ia, &b.f[i]);
        if let Some(p) = simple_pole(&a.f[i], &format!("f_{}", i + 1))? {
            fi = fi.add(&graded_kron(&a.f[i], &at_point(&b.psi(i), &p)?));
        }
        f.push(fi);
    }
    let k = a.k.iter().zip(&b.k).map(|(x, y)| graded_kron(x, y)).collect();
    let k_inv = a.k_inv.iter().zip(&b.k_inv).map(|(x, y)| graded_kron(x, y)).collect();
    Ok(CurrentKernels {
        ps: a.ps,
        quantum: a.quantum.tensor(&b.quantum),
        e,
        f,
        k,
        k_inv,
    })
}

/// Mode expansions of the currents, all in the variable [`Var::Z`].
///
/// `k±_j` are the expansions of `k_j` in the `±` direction, and
/// `X⁺_i = e_i|₊ − e_i|₋`, `X⁻_i = f_i|₊ − f_i|₋`.
#[derive(Clone, Debug)]
pub struct CurrentSet {
    pub ps: ParityStructure,
    pub window: Window,
    pub guard: i32,
    pub x_plus: Vec<FormalDistribution>,
    pub x_minus: Vec<FormalDistribution>,
    pub k_plus: Vec<FormalDistribution>,
    pub k_minus: Vec<FormalDistribution>,
    pub k_plus_inv: Vec<FormalDistribution>,
    pub k_minus_inv: Vec<FormalDistribution>,
    pub psi: Vec<FormalDistribution>,
    pub phi: Vec<FormalDistribution>,
}

impl CurrentSet {
    /// Parity of `X±_i` for the 1-based node `i`: odd exactly at `i = m`.
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i == self.ps.m)
    }
}

/// Expands all kernels on `window ± guard`.
pub fn extract_currents(kernels: &CurrentKernels, window: Window, guard: i32) -> Result<CurrentSet, GaussError> {
    let plus = LSign::Plus.direction();
    let minus = LSign::Minus.direction();
    let series = |m: &GradedMatrix, d: Direction| matrix_series(m, Var::Z, d, window, guard);
    // L⁺ expands as AroundZero, so `X = |₊ − |₋ = −(|∞ − |₀)`.
    let two_sided = |m: &GradedMatrix| -> Result<FormalDistribution, GaussError> {
        let d = matrix_two_sided_difference(m, Var::Z, window, guard)?;
        Ok(if plus == Direction::AroundZero { d.neg() } else { d })
    };
    let mut cs = CurrentSet {
        ps: kernels.ps,
        window,
        guard,
        x_plus: Vec::new(),
        x_minus: Vec::new(),
        k_plus: Vec::new(),
        k_minus: Vec::new(),
        k_plus_inv: Vec::new(),
        k_minus_inv: Vec::new(),
        psi: Vec::new(),
        phi: Vec::new(),
    };
    for i in 0..kernels.nodes() {
        cs.x_plus.push(two_sided(&kernels.e[i])?);
        cs.x_minus.push(two_sided(&kernels.f[i])?);
        let p = kernels.psi(i);
        cs.psi.push(series(&p, minus)?);
        cs.phi.push(series(&p, plus)?);
    }
    for j in 0..kernels.k.len() {
        cs.k_plus.push(series(&kernels.k[j], plus)?);
        cs.k_minus.push(series(&kernels.k[j], minus)?);
        cs.k_plus_inv.push(series(&kernels.k_inv[j], plus)?);
        cs.k_minus_inv.push(series(&kernels.k_inv[j], minus)?);
    }
    Ok(cs)
}
