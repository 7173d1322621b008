//! Quantifier elimination and decision procedures for the ordered structures
//! of ℕ, ℤ, ℚ and ℝ in the signatures {<}, {<,+} and {<,×}.

pub mod battery;
pub mod eval;
pub mod numeric;
pub mod qe_additive;
pub mod qe_mult;
pub mod qe_order;
pub mod selftest;
pub mod syntax;
