//! Symbolic Hopf structure on the current generators with formal central
//! charges: coproduct, antipode, counit and a normal form for words.

mod checks;
mod expr;
mod maps;

pub use checks::{
    antipode_squared, axioms_for, check_homomorphism_gl11, check_hopf_axioms, generators, rep_homomorphism_check,
    rep_homomorphism_reports, rep_matches_single_site, GeneratorCase,
};
pub use expr::{charge_var, word_parity, Algebra, ChargeMap, Gen, Kind, TensorExpr, Word};
pub use maps::MAX_SLOTS;
