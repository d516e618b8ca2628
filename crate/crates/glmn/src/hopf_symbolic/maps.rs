use crate::scalar_field::{Monomial, RationalFunction, Var};

use super::expr::{charge_var, word_parity, Algebra, ChargeMap, Gen, Kind, TensorExpr, Word};

/// Most slots an expression may carry (charges `C1..C3`).
pub const MAX_SLOTS: usize = 3;

fn shifted(g: &Gen, c: Var, e: i32) -> Gen {
    g.with_arg(g.arg.mul(&Monomial::pow(c, e)))
}

/// Replaces slot `s` of every term by an expression in `width` slots.
fn splice<F>(e: &TensorExpr, s: usize, width: usize, mut image: F) -> TensorExpr
where
    F: FnMut(&[Gen]) -> TensorExpr,
{
    let new_slots = e.nslots - 1 + width;
    let mut out = TensorExpr::zero(new_slots);
    for (w, c) in &e.terms {
        let img = image(&w.slots[s]);
        debug_assert_eq!(img.nslots, width);
        for (iw, ic) in &img.terms {
            let mut slots = Vec::with_capacity(new_slots);
            slots.extend(w.slots[..s].iter().cloned());
            slots.extend(iw.slots.iter().cloned());
            slots.extend(w.slots[s + 1..].iter().cloned());
            let mut deltas = w.deltas.clone();
            deltas.extend(iw.deltas.iter().copied());
            out.add_term(
                Word {
                    deltas: Word::canonical_deltas(deltas),
                    slots,
                },
                c * ic,
            );
        }
    }
    out
}

/// Renames the charge symbols after the slots of an `old`-slot expression
/// are relabelled by `to[s]` into a `new`-slot expression.
fn slot_charge_map(old: usize, new: usize, to: &[Option<usize>]) -> ChargeMap {
    let mut map = ChargeMap::new();
    for (s, t) in to.iter().enumerate() {
        let from = charge_var(old, s);
        let image = match t {
            Some(t) => Monomial::var(charge_var(new, *t)),
            None => Monomial::one(),
        };
        map = map.set(from, image);
    }
    map
}

impl Algebra {
    /// `Δ(g)` for one generator, as a two-slot expression whose slots carry
    /// the charges `c1`, `c2`.
    pub fn coproduct_gen(&self, g: &Gen, c1: Var, c2: Var) -> TensorExpr {
        let one = TensorExpr::one(1);
        let single = |x: Gen| TensorExpr::gen(x);
        let pair = |a: Gen, b: Gen| single(a).tensor(&single(b));
        match g.kind {
            Kind::XPlus => {
                let psi = Gen::new(Kind::Psi, g.index, g.arg.mul(&Monomial::var(c1)));
                single(*g)
                    .tensor(&one)
                    .add(&single(psi).tensor(&single(shifted(g, c1, 2))))
            }
            Kind::XMinus => {
                let phi = Gen::new(Kind::Phi, g.index, g.arg.mul(&Monomial::var(c2)));
                one.tensor(&single(*g))
                    .add(&single(shifted(g, c2, 2)).tensor(&single(phi)))
            }
            Kind::KPlus | Kind::Phi => pair(shifted(g, c2, 1), shifted(g, c1, -1)),
            Kind::KMinus | Kind::Psi => pair(shifted(g, c2, -1), shifted(g, c1, 1)),
        }
    }

    /// `S(g)` for one generator in a slot with charge `c`, the argument's
    /// charge already negated.
    pub fn antipode_gen(&self, g: &Gen, c: Var) -> TensorExpr {
        match g.kind {
            Kind::XPlus => {
                let psi = Gen::new(Kind::Psi, g.index, g.arg.mul(&Monomial::pow(c, -1))).inv();
                TensorExpr::word(&[psi, shifted(g, c, -2)]).neg()
            }
            Kind::XMinus => {
                let phi = Gen::new(Kind::Phi, g.index, g.arg.mul(&Monomial::pow(c, -1))).inv();
                TensorExpr::word(&[shifted(g, c, -2), phi]).neg()
            }
            _ => TensorExpr::gen(g.inv()),
        }
    }

    /// `(1⊗⋯⊗Δ⊗⋯⊗1)` applied at slot `s`. The charge `c_s` becomes
    /// `c_s + c_{s+1}` and later charges move one slot right.
    pub fn coproduct_at(&self, e: &TensorExpr, s: usize) -> TensorExpr {
        let new = e.nslots + 1;
        assert!(new <= MAX_SLOTS, "at most {MAX_SLOTS} tensor slots are supported");
        let mut map = ChargeMap::new();
        for t in (0..e.nslots).rev() {
            let from = charge_var(e.nslots, t);
            let image = match t.cmp(&s) {
                std::cmp::Ordering::Less => Monomial::var(charge_var(new, t)),
                std::cmp::Ordering::Equal => {
                    Monomial::var(charge_var(new, t)).mul(&Monomial::var(charge_var(new, t + 1)))
                }
                std::cmp::Ordering::Greater => Monomial::var(charge_var(new, t + 1)),
            };
            map = map.set(from, image);
        }
        let relabelled = e.map_charges(&map);
        let (c1, c2) = (charge_var(new, s), charge_var(new, s + 1));
        splice(&relabelled, s, 2, |word| {
            let mut acc = TensorExpr::one(2);
            for g in word {
                acc = self.mul(&acc, &self.coproduct_gen(g, c1, c2));
            }
            acc
        })
    }

    pub fn coproduct(&self, e: &TensorExpr) -> TensorExpr {
        assert_eq!(e.nslots, 1);
        self.coproduct_at(e, 0)
    }

    /// `S` applied at slot `s`: the slot's charge is negated everywhere and
    /// the word is mapped anti-homomorphically,
    /// `S(xy) = (−1)^{[x][y]} S(y) S(x)`.
    pub fn antipode_at(&self, e: &TensorExpr, s: usize) -> TensorExpr {
        let c = charge_var(e.nslots, s);
        let negated = e.map_charges(&ChargeMap::new().set(c, Monomial::pow(c, -1)));
        splice(&negated, s, 1, |word| {
            let mut sign = 0u32;
            for i in 0..word.len() {
                for j in i + 1..word.len() {
                    sign += u32::from(word[i].parity(self.m) * word[j].parity(self.m));
                }
            }
            let mut acc = TensorExpr::one(1);
            for g in word.iter().rev() {
                acc = self.mul(&acc, &self.antipode_gen(g, c));
            }
            if sign % 2 == 1 {
                acc.neg()
            } else {
                acc
            }
        })
    }

    pub fn antipode(&self, e: &TensorExpr) -> TensorExpr {
        assert_eq!(e.nslots, 1);
        self.antipode_at(e, 0)
    }

    /// `ε` applied at slot `s`: `X±` vanish, Cartan generators and `q^c`
    /// become `1`, and the slot disappears.
    pub fn counit_at(&self, e: &TensorExpr, s: usize) -> TensorExpr {
        let new = e.nslots - 1;
        let to: Vec<Option<usize>> = (0..e.nslots)
            .map(|t| match t.cmp(&s) {
                std::cmp::Ordering::Less => Some(t),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(t - 1),
            })
            .collect();
        let mapped = if new == 0 {
            e.map_charges(&slot_charge_map(e.nslots, 1, &to))
        } else {
            e.map_charges(&slot_charge_map(e.nslots, new, &to))
        };
        splice(&mapped, s, 0, |word| {
            if word.iter().any(|g| matches!(g.kind, Kind::XPlus | Kind::XMinus)) {
                TensorExpr::zero(0)
            } else {
                TensorExpr::one(0)
            }
        })
    }

    /// `ε` on a one-slot expression, as a scalar (deltas are kept as
    /// factors of the result).
    pub fn counit(&self, e: &TensorExpr) -> TensorExpr {
        assert_eq!(e.nslots, 1);
        self.counit_at(e, 0)
    }

    /// `M(a⊗b) = ab` on a two-slot expression, with `c1, c2 → c`.
    pub fn merge(&self, e: &TensorExpr) -> TensorExpr {
        assert_eq!(e.nslots, 2);
        let map = ChargeMap::new()
            .set(Var::C1, Monomial::var(Var::C))
            .set(Var::C2, Monomial::var(Var::C));
        let mapped = e.map_charges(&map);
        let mut out = TensorExpr::zero(1);
        for (w, c) in &mapped.terms {
            let word: Vec<Gen> = w.slots.concat();
            out.add_term(
                Word {
                    deltas: w.deltas.clone(),
                    slots: vec![word],
                },
                c.clone(),
            );
        }
        out
    }

    /// Parity of every slot is preserved by `Δ` and `S`.
    pub fn parity_of(&self, e: &TensorExpr) -> Option<Vec<u8>> {
        e.slot_parities(self.m)
    }

    /// `q^c` as a one-slot scalar.
    pub fn q_c() -> TensorExpr {
        TensorExpr::scalar(RationalFunction::var_pow(Var::C, 2), 1)
    }

    /// Total parity of a word.
    pub fn parity_of_word(&self, w: &[Gen]) -> u8 {
        word_parity(w, self.m)
    }
}
