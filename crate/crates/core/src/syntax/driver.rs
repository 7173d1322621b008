//! The generic elimination loop: innermost quantifier first, `∀` through
//! `¬∃¬`, and under every `∃x` a disjunction of cubes handed to the engine
//! of the theory.

use std::fmt;

use thiserror::Error;

use super::formula::{Cube, Formula, Literal};
use super::normalize::{dnf_cubes, nnf, normalize_literals};
use super::parse::{rename_apart, SyntaxError};
use super::simplify::simplify;
use super::term::Var;
use super::theory::Theory;
use crate::{qe_additive, qe_mult, qe_order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QeError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("not a sentence: free variables {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    Open(Vec<Var>),
    #[error("elimination left a residue that does not fold to a truth value: {0}")]
    Residue(String),
}

/// One rewriting of the whole formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub anchor: String,
    pub before: Formula,
    pub after: Formula,
    /// The single quantifier this step removed, if any.
    pub local: Option<LocalStep>,
}

/// `∃var matrix` with a quantifier-free matrix, and its equivalent. A `∀`
/// is recorded as the `∃` of the negated matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalStep {
    pub var: Var,
    pub matrix: Formula,
    pub result: Formula,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QeTrace {
    pub steps: Vec<TraceStep>,
}

impl QeTrace {
    fn push(&mut self, rule: impl Into<String>, anchor: &str, before: &Formula, after: &Formula) {
        self.steps.push(TraceStep { rule: rule.into(), anchor: anchor.to_string(), before: before.clone(), after: after.clone(), local: None });
    }

    /// The steps chain from `input` to `output`.
    pub fn replays(&self, input: &Formula, output: &Formula) -> bool {
        let mut cur = input;
        for s in &self.steps {
            if &s.before != cur {
                return false;
            }
            cur = &s.after;
        }
        cur == output
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {} ⟶ {}", self.anchor, self.rule, self.before, self.after)
    }
}

pub type Engine = fn(&Cube) -> Formula;

/// The cube engine of a theory and a name for the argument it implements.
/// Presburger arithmetic over ℕ runs the ℤ engine on relativized formulas.
pub fn engine_for(theory: Theory) -> (Engine, &'static str) {
    match theory {
        Theory::DloQ | Theory::DloR => (qe_order::eliminate_dlo, qe_order::ANCHOR_DLO),
        Theory::OrderZ => (qe_order::eliminate_discrete_z, qe_order::ANCHOR_Z),
        Theory::OrderN => (qe_order::eliminate_discrete_n, qe_order::ANCHOR_N),
        Theory::OagQ | Theory::OagR => (qe_additive::eliminate_odag, qe_additive::ANCHOR_ODAG),
        Theory::PresburgerZ | Theory::PresburgerN => (qe_additive::eliminate_presburger, qe_additive::ANCHOR_PRESBURGER),
        Theory::MulR => (qe_mult::eliminate_mul_r, "sign splitting, multiplicative group of the positive reals"),
        Theory::MulQ => (qe_mult::eliminate_mul_q, "sign splitting, power-class merging, density and avoidance"),
        Theory::MulQPos => (qe_mult::eliminate_mul_q_plus, qe_mult::ANCHOR_RE),
    }
}

/// The theory whose semantics the driver uses internally.
pub fn working_theory(theory: Theory) -> Theory {
    if theory == Theory::PresburgerN {
        Theory::PresburgerZ
    } else {
        theory
    }
}

/// What one cube of the matrix under `∃x` turned into.
#[derive(Debug, Clone)]
pub struct CubeElimination {
    /// Literals of the cube that do not mention `x`.
    pub free: Vec<Literal>,
    /// The literals that do.
    pub cube: Cube,
    /// Engine output for `cube`.
    pub result: Formula,
}

/// Splits a quantifier-free matrix, after simplification and NNF, into the
/// conjuncts that do not mention `x` and the conjunction of those that do.
pub fn split_matrix(x: &Var, body: &Formula, theory: Theory) -> (Vec<Formula>, Formula) {
    let f = nnf(&simplify(body, working_theory(theory)));
    let parts = match f {
        Formula::And(v) => v,
        other => vec![other],
    };
    let (inside, outside): (Vec<Formula>, Vec<Formula>) = parts.into_iter().partition(|g| g.free_vars().contains(x));
    (outside, Formula::conj(inside))
}

/// Rewrites negated atoms that mention `x` into positive ones; the others
/// stay negated literals.
fn normalize_for(f: &Formula, x: &Var, theory: Theory) -> Formula {
    match f {
        Formula::Not(g) => match &**g {
            Formula::Atom(a) if a.mentions(x) => normalize_literals(f, theory),
            _ => f.clone(),
        },
        Formula::And(v) => Formula::conj(v.iter().map(|g| normalize_for(g, x, theory))),
        Formula::Or(v) => Formula::disj(v.iter().map(|g| normalize_for(g, x, theory))),
        _ => f.clone(),
    }
}

/// Normalizes a quantifier-free matrix into cubes over `x`.
pub fn matrix_cubes(x: &Var, body: &Formula, theory: Theory) -> Vec<(Vec<Literal>, Cube)> {
    let theory = working_theory(theory);
    let f = simplify(&normalize_for(&nnf(&simplify(body, theory)), x, theory), theory);
    dnf_cubes(&f, theory)
        .into_iter()
        .map(|lits| {
            let (bound, free): (Vec<Literal>, Vec<Literal>) = lits.into_iter().partition(|l| l.atom.mentions(x));
            (free, Cube::new(x.clone(), bound))
        })
        .collect()
}

/// Per-cube elimination of `∃x body` for a quantifier-free `body`.
pub fn eliminate_exists_detailed(x: &Var, body: &Formula, theory: Theory) -> Vec<CubeElimination> {
    let (engine, _) = engine_for(theory);
    matrix_cubes(x, body, theory)
        .into_iter()
        .map(|(free, cube)| {
            let result = if cube.literals.is_empty() { Formula::True } else { engine(&cube) };
            CubeElimination { free, cube, result }
        })
        .collect()
}

/// A quantifier-free equivalent of `∃x body` for a quantifier-free `body`.
/// Conjuncts free of `x` are moved out of the quantifier first.
pub fn eliminate_exists(x: &Var, body: &Formula, theory: Theory) -> Formula {
    let (outside, inside) = split_matrix(x, body, theory);
    let parts = eliminate_exists_detailed(x, &inside, theory).into_iter().map(|c| {
        Formula::conj(c.free.iter().map(Literal::to_formula).chain(std::iter::once(c.result)))
    });
    let inner = Formula::disj(parts);
    simplify(&Formula::conj(outside.into_iter().chain(std::iter::once(inner))), working_theory(theory))
}

type Step = (Formula, String, LocalStep);

/// Replaces the first innermost quantifier of `f`.
fn step(f: &Formula, theory: Theory) -> Option<Step> {
    let w = working_theory(theory);
    match f {
        Formula::Exists(x, g) | Formula::Forall(x, g) if g.is_quantifier_free() && !g.free_vars().contains(x) => {
            // The universe is nonempty.
            let body = simplify(g, w);
            let local = LocalStep { var: x.clone(), matrix: (**g).clone(), result: body.clone() };
            Some((body, format!("drop vacuous quantifier on {x}"), local))
        }
        Formula::Exists(x, g) | Formula::Forall(x, g) if g.is_quantifier_free() => Some(if matches!(f, Formula::Exists(..)) {
            let result = eliminate_exists(x, g, theory);
            let local = LocalStep { var: x.clone(), matrix: (**g).clone(), result: result.clone() };
            (result, format!("eliminate exists {x}"), local)
        } else {
            let matrix = nnf(&Formula::not((**g).clone()));
            let inner = eliminate_exists(x, &matrix, theory);
            let local = LocalStep { var: x.clone(), matrix, result: inner.clone() };
            (simplify(&nnf(&Formula::not(inner)), w), format!("eliminate forall {x} as not exists not"), local)
        }),
        Formula::Exists(x, g) => step(g, theory).map(|(h, r, l)| (Formula::exists(x.clone(), h), r, l)),
        Formula::Forall(x, g) => step(g, theory).map(|(h, r, l)| (Formula::forall(x.clone(), h), r, l)),
        Formula::Not(g) => step(g, theory).map(|(h, r, l)| (Formula::not(h), r, l)),
        Formula::Imp(a, b) | Formula::Iff(a, b) => {
            let rebuild = |a: Formula, b: Formula| if matches!(f, Formula::Imp(..)) { Formula::imp(a, b) } else { Formula::iff(a, b) };
            if let Some((h, r, l)) = step(a, theory) {
                Some((rebuild(h, (**b).clone()), r, l))
            } else {
                step(b, theory).map(|(h, r, l)| (rebuild((**a).clone(), h), r, l))
            }
        }
        Formula::And(v) | Formula::Or(v) => {
            for (i, g) in v.iter().enumerate() {
                if let Some((h, r, l)) = step(g, theory) {
                    let mut w = v.clone();
                    w[i] = h;
                    return Some((if matches!(f, Formula::And(_)) { Formula::And(w) } else { Formula::Or(w) }, r, l));
                }
            }
            None
        }
        _ => None,
    }
}

/// Eliminates every quantifier of `f`. Free variables of the result are
/// among those of `f`.
pub fn qe_driver(f: &Formula, theory: Theory) -> (Formula, QeTrace) {
    let mut trace = QeTrace::default();
    let (_, anchor) = engine_for(theory);
    let mut cur = rename_apart(f);
    if &cur != f {
        trace.push("rename bound variables apart", "capture avoidance", f, &cur);
    }
    if theory == Theory::PresburgerN {
        let rel = qe_additive::relativize_to_n(&cur);
        if rel != cur {
            trace.push("bound quantifiers to 0 <= x", qe_additive::ANCHOR_RELATIVIZE, &cur, &rel);
            cur = rel;
        }
    }
    while let Some((next, rule, local)) = step(&cur, theory) {
        trace.push(rule, anchor, &cur, &next);
        trace.steps.last_mut().unwrap().local = Some(local);
        cur = next;
    }
    let done = simplify(&cur, working_theory(theory));
    if done != cur {
        trace.push("simplify", "constant folding", &cur, &done);
    }
    (done, trace)
}

/// Truth of a sentence.
pub fn decide(f: &Formula, theory: Theory) -> Result<(bool, QeTrace), QeError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(QeError::Open(free.into_iter().collect()));
    }
    let (r, trace) = qe_driver(f, theory);
    match r {
        Formula::True => Ok((true, trace)),
        Formula::False => Ok((false, trace)),
        other => Err(QeError::Residue(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn qe(text: &str, theory: Theory) -> String {
        let f = parse_formula(text, theory).unwrap();
        let (r, t) = qe_driver(&f, theory);
        assert!(t.replays(&f, &r));
        assert!(r.is_quantifier_free());
        assert!(r.free_vars().is_subset(&f.free_vars()));
        r.to_string()
    }

    fn truth(text: &str, theory: Theory) -> bool {
        decide(&parse_formula(text, theory).unwrap(), theory).unwrap().0
    }

    #[test]
    fn driver_examples() {
        assert_eq!(qe("exists x. y < x /\\ x < z", Theory::DloQ), "y < z");
        for t in Theory::ALL {
            assert_eq!(qe("forall x. x = x", t), "true", "{t}");
        }
        assert_eq!(qe("forall x. exists y. x < y", Theory::DloQ), "true");
        assert_eq!(qe("exists x. 2*x = y", Theory::PresburgerZ), "y == 0 mod 2");
        assert_eq!(qe("exists y. (y != 0 /\\ x = y*y)", Theory::MulR), "0 < x");
    }

    #[test]
    fn decide_examples() {
        assert!(truth("forall x. exists y. x = y*y*y", Theory::MulR));
        assert!(!truth("forall x. exists y. x = y*y*y", Theory::MulQ));
        assert!(!truth("forall x. exists y. x = y*y", Theory::MulR));
        assert!(!truth("exists x. x < 0", Theory::PresburgerN));
        assert!(truth("forall x. exists y. (x = 2*y \\/ x = 2*y + 1)", Theory::PresburgerN));
        assert!(!truth("forall x. exists y. y < x", Theory::PresburgerN));
        assert!(matches!(decide(&parse_formula("x < y", Theory::DloQ).unwrap(), Theory::DloQ), Err(QeError::Open(_))));
    }

    #[test]
    fn trace_chains() {
        let f = parse_formula("forall x. forall z. (x < z -> (exists y. (x < y /\\ y < z)))", Theory::DloQ).unwrap();
        let (r, t) = qe_driver(&f, Theory::DloQ);
        assert_eq!(r, Formula::True);
        assert_eq!(t.steps.len(), 3);
        assert!(t.replays(&f, &r));
        assert!(t.steps.iter().all(|s| s.anchor == qe_order::ANCHOR_DLO));
    }
}
