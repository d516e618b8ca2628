use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomial::Var;
use super::poly::Rational;
use super::rational::RationalFunction;
use super::ScalarError;

/// Seeded assignment of random nonzero rationals to a set of variables, for
/// the sampled (polynomial identity testing) mode.
#[derive(Clone, Debug)]
pub struct Sampler {
    pub point: BTreeMap<Var, Rational>,
}

impl Sampler {
    /// Draws a point for `vars`. Values are distinct fractions `n/d` with
    /// `n` in a wide range, so accidental zeros of small test polynomials
    /// are unlikely.
    pub fn new(seed: u64, vars: &[Var]) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut point = BTreeMap::new();
        let mut used = Vec::new();
        for &v in vars {
            loop {
                let n: i64 = rng.gen_range(2..10_000);
                let d: i64 = rng.gen_range(1..97);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                let x = Rational::new(BigInt::from(sign * n), BigInt::from(d));
                if !used.contains(&x) {
                    used.push(x.clone());
                    point.insert(v, x);
                    break;
                }
            }
        }
        Sampler { point }
    }

    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, ScalarError> {
        f.evaluate(&self.point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = Sampler::new(7, &[Var::Q, Var::W]);
        let b = Sampler::new(7, &[Var::Q, Var::W]);
        assert_eq!(a.point, b.point);
        let f = &RationalFunction::var(Var::Z) - &RationalFunction::var(Var::Q);
        let g = a.apply(&f).unwrap();
        assert!(g.involves(Var::Z));
        assert!(!g.involves(Var::Q));
    }
}
