use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar_field::{LaurentPoly, Monomial, RationalFunction, Var};

/// Generator families of the current algebra. `Psi` and `Phi` are the
/// composites `k⁻_{i+1}k⁻_i⁻¹` and `k⁺_{i+1}k⁺_i⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    KPlus,
    KMinus,
    Psi,
    Phi,
    XPlus,
    XMinus,
}

impl Kind {
    fn is_cartan(self) -> bool {
        !matches!(self, Kind::XPlus | Kind::XMinus)
    }

    fn symbol(self) -> &'static str {
        match self {
            Kind::KPlus => "k+",
            Kind::KMinus => "k-",
            Kind::Psi => "psi",
            Kind::Phi => "phi",
            Kind::XPlus => "X+",
            Kind::XMinus => "X-",
        }
    }
}

/// A generator `g_i(u)` or its inverse, with argument `u` a monomial in a
/// spectral variable, `q` and the charge symbols `q^{c_s/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub kind: Kind,
    pub index: usize,
    pub arg: Monomial,
    pub inverse: bool,
}

impl Gen {
    pub fn new(kind: Kind, index: usize, arg: Monomial) -> Gen {
        Gen {
            kind,
            index,
            arg,
            inverse: false,
        }
    }

    pub fn inv(self) -> Gen {
        assert!(self.kind.is_cartan(), "X currents have no inverse");
        Gen {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn with_arg(self, arg: Monomial) -> Gen {
        Gen { arg, ..self }
    }

    /// `1` for `X±_m`, `0` otherwise.
    pub fn parity(&self, m: usize) -> u8 {
        u8::from(!self.kind.is_cartan() && self.index == m)
    }

    fn exponent(&self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}({})", self.kind.symbol(), self.index, self.arg)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Basis element of a tensor expression: central delta factors and one
/// generator word per tensor slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    /// Ratios `r` of the factors `δ(r)`, each stored as the smaller of `r`
    /// and `r⁻¹`, sorted.
    pub deltas: Vec<Monomial>,
    pub slots: Vec<Vec<Gen>>,
}

impl Word {
    pub(crate) fn canonical_deltas(mut deltas: Vec<Monomial>) -> Vec<Monomial> {
        for d in &mut deltas {
            let i = d.inv();
            if i < *d {
                *d = i;
            }
        }
        deltas.sort();
        deltas
    }
}

/// A linear combination of Koszul-signed tensor words with
/// rational-function coefficients. A one-slot expression is an element of
/// the algebra itself (a current expression).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorExpr {
    pub nslots: usize,
    pub terms: BTreeMap<Word, RationalFunction>,
}

/// Charge symbol `q^{c/2}` of slot `s` (0-based) in an `nslots`-slot
/// expression: `C` for a single slot, `C1`, `C2`, `C3` otherwise.
pub fn charge_var(nslots: usize, s: usize) -> Var {
    if nslots == 1 {
        Var::C
    } else {
        Var::charge(s + 1)
    }
}

/// Simultaneous substitution of charge symbols by monomials.
#[derive(Clone, Debug, Default)]
pub struct ChargeMap {
    images: Vec<(Var, Monomial)>,
}

impl ChargeMap {
    pub fn new() -> ChargeMap {
        ChargeMap::default()
    }

    pub fn set(mut self, v: Var, image: Monomial) -> ChargeMap {
        self.images.retain(|(w, _)| *w != v);
        self.images.push((v, image));
        self
    }

    pub fn apply(&self, m: &Monomial) -> Monomial {
        let mut out = *m;
        for (v, _) in &self.images {
            out = out.with_exp(*v, 0);
        }
        for (v, img) in &self.images {
            let e = m.exp(*v);
            if e != 0 {
                out = out.mul(&img.powi(e));
            }
        }
        out
    }

    pub fn apply_rf(&self, f: &RationalFunction) -> RationalFunction {
        if self.images.iter().all(|(v, _)| !f.involves(*v)) {
            return f.clone();
        }
        f.map_monomials(|m| self.apply(m))
    }
}

impl TensorExpr {
    pub fn zero(nslots: usize) -> TensorExpr {
        TensorExpr {
            nslots,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: RationalFunction, nslots: usize) -> TensorExpr {
        let mut e = TensorExpr::zero(nslots);
        e.add_term(
            Word {
                deltas: Vec::new(),
                slots: vec![Vec::new(); nslots],
            },
            c,
        );
        e
    }

    pub fn one(nslots: usize) -> TensorExpr {
        TensorExpr::scalar(RationalFunction::one(), nslots)
    }

    /// The one-slot word `g₁ g₂ ⋯`.
    pub fn word(gens: &[Gen]) -> TensorExpr {
        let mut e = TensorExpr::zero(1);
        e.add_term(
            Word {
                deltas: Vec::new(),
                slots: vec![gens.to_vec()],
            },
            RationalFunction::one(),
        );
        e
    }

    pub fn gen(g: Gen) -> TensorExpr {
        TensorExpr::word(&[g])
    }

    /// `δ(r)` as a one-slot expression.
    pub fn delta(r: Monomial) -> TensorExpr {
        let mut e = TensorExpr::zero(1);
        e.add_term(
            Word {
                deltas: Word::canonical_deltas(vec![r]),
                slots: vec![Vec::new()],
            },
            RationalFunction::one(),
        );
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.slots.len(), self.nslots);
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &TensorExpr) -> TensorExpr {
        assert_eq!(self.nslots, other.nslots, "slot counts differ");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &RationalFunction) -> TensorExpr {
        let mut out = TensorExpr::zero(self.nslots);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> TensorExpr {
        self.scale(&RationalFunction::int(-1))
    }

    pub fn sub(&self, other: &TensorExpr) -> TensorExpr {
        self.add(&other.neg())
    }

    /// Juxtaposition `a ⊗ b` of two expressions, slots of `a` first. No
    /// sign arises: this builds the tensor, it does not multiply.
    pub fn tensor(&self, other: &TensorExpr) -> TensorExpr {
        let mut out = TensorExpr::zero(self.nslots + other.nslots);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut deltas = wa.deltas.clone();
                deltas.extend(wb.deltas.iter().copied());
                let slots = wa.slots.iter().chain(&wb.slots).cloned().collect();
                out.add_term(
                    Word {
                        deltas: Word::canonical_deltas(deltas),
                        slots,
                    },
                    ca * cb,
                );
            }
        }
        out
    }

    /// Applies a charge substitution to coefficients, arguments and delta
    /// ratios.
    pub fn map_charges(&self, map: &ChargeMap) -> TensorExpr {
        let mut out = TensorExpr::zero(self.nslots);
        for (w, c) in &self.terms {
            let deltas = Word::canonical_deltas(w.deltas.iter().map(|d| map.apply(d)).collect());
            let slots = w
                .slots
                .iter()
                .map(|s| s.iter().map(|g| g.with_arg(map.apply(&g.arg))).collect())
                .collect();
            out.add_term(Word { deltas, slots }, map.apply_rf(c));
        }
        out
    }

    /// Parity of each slot word, if every term agrees.
    pub fn slot_parities(&self, m: usize) -> Option<Vec<u8>> {
        let mut seen: Option<Vec<u8>> = None;
        for w in self.terms.keys() {
            let p: Vec<u8> = w.slots.iter().map(|s| word_parity(s, m)).collect();
            match &seen {
                None => seen = Some(p),
                Some(old) if *old == p => {}
                Some(_) => return None,
            }
        }
        seen
    }
}

pub fn word_parity(w: &[Gen], m: usize) -> u8 {
    w.iter().map(|g| g.parity(m)).sum::<u8>() % 2
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for d in &w.deltas {
                write!(f, " delta({d})")?;
            }
            for (s, word) in w.slots.iter().enumerate() {
                if s > 0 {
                    write!(f, " (x)")?;
                }
                if word.is_empty() {
                    write!(f, " 1")?;
                }
                for g in word {
                    write!(f, " {g}")?;
                }
            }
        }
        Ok(())
    }
}

/// The algebra `U_q[gl(m|n)]` at the level of its current generators:
/// grading, products of tensor expressions, and the rewriting rules used to
/// bring words to normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub m: usize,
    pub n: usize,
}

fn x_shift(x: &Monomial, c: Var, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(x.mul(&Monomial::pow(c, e)))
}

fn q_times(p: &LaurentPoly, e: i32) -> LaurentPoly {
    p.mul_monomial(&Monomial::pow(Var::Q, e))
}

impl Algebra {
    pub fn new(m: usize, n: usize) -> Algebra {
        Algebra { m, n }
    }

    /// Product of tensor expressions with the Koszul sign
    /// `(a₁⊗⋯)(b₁⊗⋯) = (−1)^{Σ_{i>j}[a_i][b_j]} a₁b₁⊗⋯`.
    pub fn mul(&self, a: &TensorExpr, b: &TensorExpr) -> TensorExpr {
        assert_eq!(a.nslots, b.nslots, "slot counts differ");
        let mut out = TensorExpr::zero(a.nslots);
        for (wa, ca) in &a.terms {
            let pa: Vec<u8> = wa.slots.iter().map(|s| word_parity(s, self.m)).collect();
            for (wb, cb) in &b.terms {
                let pb: Vec<u8> = wb.slots.iter().map(|s| word_parity(s, self.m)).collect();
                let mut sign = 0u32;
                for i in 0..a.nslots {
                    for j in 0..i {
                        sign += u32::from(pa[i] * pb[j]);
                    }
                }
                let mut deltas = wa.deltas.clone();
                deltas.extend(wb.deltas.iter().copied());
                let slots = wa
                    .slots
                    .iter()
                    .zip(&wb.slots)
                    .map(|(x, y)| x.iter().chain(y).copied().collect())
                    .collect();
                let c = ca * cb;
                let c = if sign % 2 == 1 { -&c } else { c };
                out.add_term(
                    Word {
                        deltas: Word::canonical_deltas(deltas),
                        slots,
                    },
                    c,
                );
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[TensorExpr]) -> TensorExpr {
        let mut it = factors.iter();
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, f| self.mul(&acc, f))
    }

    /// `{a, b} = ab + ba`.
    pub fn anticommutator(&self, a: &TensorExpr, b: &TensorExpr) -> TensorExpr {
        self.mul(a, b).add(&self.mul(b, a))
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, a: &TensorExpr, b: &TensorExpr) -> TensorExpr {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// `k⁺_i(u)k⁻_i(v) = ρ k⁻_i(v)k⁺_i(u)` for `i > m`, from the relation
    /// `(w₋q − z₊q⁻¹)/(z₊q − w₋q⁻¹) k⁺(z)k⁻(w) = (w₊q − z₋q⁻¹)/(z₋q − w₊q⁻¹) k⁻(w)k⁺(z)`.
    fn rho_opposite(u: &Monomial, v: &Monomial, c: Var) -> RationalFunction {
        let (zp, zm) = (x_shift(u, c, 1), x_shift(u, c, -1));
        let (wp, wm) = (x_shift(v, c, 1), x_shift(v, c, -1));
        let f = RationalFunction::new(
            &q_times(&wm, 1) - &q_times(&zp, -1),
            &q_times(&zp, 1) - &q_times(&wm, -1),
        )
        .expect("nonzero denominator");
        let ft = RationalFunction::new(
            &q_times(&wp, 1) - &q_times(&zm, -1),
            &q_times(&zm, 1) - &q_times(&wp, -1),
        )
        .expect("nonzero denominator");
        &ft / &f
    }

    /// `k^∓_i(w)⁻¹ k^±_j(z) = ρ k^±_j(z) k^∓_i(w)⁻¹` for `i > j`, from
    /// `(z_± − w_∓)/(z_±q − w_∓q⁻¹) k^∓_i(w)⁻¹k^±_j(z) = (z_∓ − w_±)/(z_∓q − w_±q⁻¹) k^±_j(z)k^∓_i(w)⁻¹`.
    fn rho_inverse(z: &Monomial, w: &Monomial, upper: bool, c: Var) -> RationalFunction {
        let s = if upper { 1 } else { -1 };
        let (za, zb) = (x_shift(z, c, s), x_shift(z, c, -s));
        let (wa, wb) = (x_shift(w, c, -s), x_shift(w, c, s));
        let f = RationalFunction::new(&za - &wa, &q_times(&za, 1) - &q_times(&wa, -1)).expect("nonzero denominator");
        let ft = RationalFunction::new(&zb - &wb, &q_times(&zb, 1) - &q_times(&wb, -1)).expect("nonzero denominator");
        &ft / &f
    }

    /// The scalar `f` with `a b = f · b a` inside one slot with charge
    /// symbol `c`, or `None` when no rule lets the two generators pass each
    /// other.
    pub fn swap_factor(&self, a: &Gen, b: &Gen, c: Var) -> Option<RationalFunction> {
        use Kind::*;
        let one = || Some(RationalFunction::one());
        if a == b {
            return one();
        }
        if !(a.kind.is_cartan() || b.kind.is_cartan()) {
            return None;
        }
        if !a.kind.is_cartan() || !b.kind.is_cartan() {
            let (h, x) = if a.kind.is_cartan() { (a, b) } else { (b, a) };
            return (matches!(h.kind, Psi | Phi) && h.index == self.m && x.index == self.m).then(RationalFunction::one);
        }
        match (a.kind, b.kind) {
            (KPlus, KPlus) | (KMinus, KMinus) | (Psi, Psi) | (Phi, Phi) => one(),
            (Psi, KMinus) | (KMinus, Psi) | (Phi, KPlus) | (KPlus, Phi) => one(),
            (Psi, Phi) | (Phi, Psi) => (a.index == b.index).then(RationalFunction::one),
            (KPlus, KMinus) | (KMinus, KPlus) => {
                let e = a.exponent() * b.exponent();
                if a.index == b.index {
                    if a.index <= self.m {
                        return one();
                    }
                    let (p, n) = if a.kind == KPlus { (a, b) } else { (b, a) };
                    let rho = Algebra::rho_opposite(&p.arg, &n.arg, c);
                    let e = if a.kind == KPlus { e } else { -e };
                    return Some(rho.powi(e));
                }
                // `big` carries the larger index and plays k^∓_i
                let (big, small) = if a.index > b.index { (a, b) } else { (b, a) };
                let rho = Algebra::rho_inverse(&small.arg, &big.arg, small.kind == KPlus, c);
                let k = -big.exponent() * small.exponent();
                Some(if a.index > b.index { rho.powi(k) } else { rho.powi(-k) })
            }
            _ => None,
        }
    }

    /// Normal form of one slot word: inverse pairs that can be brought
    /// together cancel, then the lexicographically least representative
    /// under the swap rules is chosen. Returns the accumulated scalar.
    pub fn normalize_word(&self, word: &[Gen], c: Var, rng: Option<&mut ChaCha8Rng>) -> (RationalFunction, Vec<Gen>) {
        let mut w = word.to_vec();
        let mut coeff = RationalFunction::one();
        let mut rng = rng;
        'cancel: loop {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..w.len() {
                if !w[i].kind.is_cartan() {
                    continue;
                }
                for j in i + 1..w.len() {
                    if w[j] == w[i].inv() {
                        pairs.push((i, j));
                    }
                }
            }
            if let Some(r) = rng.as_deref_mut() {
                pairs.shuffle(r);
            }
            for (i, j) in pairs {
                let mut f = RationalFunction::one();
                let mut ok = true;
                for k in i + 1..j {
                    match self.swap_factor(&w[k], &w[j], c) {
                        Some(s) => f = &f * &s,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    coeff = &coeff * &f;
                    w.remove(j);
                    w.remove(i);
                    continue 'cancel;
                }
            }
            break;
        }
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let mut best: Option<(usize, RationalFunction)> = None;
            for p in 0..w.len() {
                if let Some((b, _)) = &best {
                    if w[p] >= w[*b] {
                        continue;
                    }
                }
                let mut f = RationalFunction::one();
                let mut ok = true;
                for k in 0..p {
                    match self.swap_factor(&w[k], &w[p], c) {
                        Some(s) => f = &f * &s,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    best = Some((p, f));
                }
            }
            let (p, f) = best.expect("the first letter can always be extracted");
            coeff = &coeff * &f;
            out.push(w.remove(p));
        }
        (coeff, out)
    }

    pub fn normalize(&self, e: &TensorExpr) -> TensorExpr {
        self.normalize_impl(e, None)
    }

    /// Normalization with the cancellation candidates visited in a seeded
    /// random order.
    pub fn normalize_seeded(&self, e: &TensorExpr, seed: u64) -> TensorExpr {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.normalize_impl(e, Some(&mut rng))
    }

    fn normalize_impl(&self, e: &TensorExpr, mut rng: Option<&mut ChaCha8Rng>) -> TensorExpr {
        let mut out = TensorExpr::zero(e.nslots);
        for (w, c) in &e.terms {
            let mut coeff = c.clone();
            let mut slots = Vec::with_capacity(w.slots.len());
            for (s, word) in w.slots.iter().enumerate() {
                let (f, nw) = self.normalize_word(word, charge_var(e.nslots, s), rng.as_deref_mut());
                coeff = &coeff * &f;
                slots.push(nw);
            }
            out.add_term(
                Word {
                    deltas: w.deltas.clone(),
                    slots,
                },
                coeff,
            );
        }
        out
    }

    /// Whether `a − b` normalizes to zero; the residue otherwise.
    pub fn difference(&self, a: &TensorExpr, b: &TensorExpr) -> TensorExpr {
        self.normalize(&a.sub(b))
    }
}
