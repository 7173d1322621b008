//! Formulas, terms, concrete syntax and normal forms.

mod driver;
mod formula;
mod normalize;
mod parse;
mod print;
mod simplify;
mod term;
mod theory;

pub use driver::{
    decide, eliminate_exists, eliminate_exists_detailed, engine_for, matrix_cubes, qe_driver, split_matrix, working_theory, CubeElimination, Engine, LocalStep, QeError,
    QeTrace, TraceStep,
};
pub use formula::{Atom, Cube, Formula, Literal};
pub use normalize::{dnf_cubes, negate_atom, nnf, normalize_literals};
pub use parse::{check_signature, parse_formula, rename_apart, SyntaxError};
pub use print::print_formula;
pub use simplify::{fold_atom, simplify};
pub use term::{LinearTerm, Monomial, OrderBase, OrderTerm, Sign, Term, Var};
pub use theory::{Carrier, Sort, Theory, UnknownTheory};
