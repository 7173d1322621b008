//! Elimination for the multiplicative orders: ⟨ℝ;<,×⟩, ⟨ℚ⁺;<,×,Re_n⟩ and
//! ⟨ℚ;<,×,Re_n⟩. The full structures reduce to the positive cone by
//! splitting every variable into positive, zero and negative cases.

mod positive;
mod witness;

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::syntax::{fold_atom, Atom, Cube, Formula, Literal, Monomial, Sign, Term, Theory, Var};

pub use positive::{
    eliminate_mul_group, eliminate_mul_q_plus, merge_re_atoms, reduce_positive, scale_positive, PositiveCube, ReducedCube, ANCHOR_GROUP,
    ANCHOR_RE,
};
pub use witness::{witness_m10, witness_m11, WitnessError};

use positive::{mono_eq, mono_less, re};

pub const ANCHOR_SIGNS: &str = "sign splitting";

fn magnitude(m: &Monomial) -> Monomial {
    m.strip_guards().with_sign(Sign::Pos)
}

fn rank(s: Sign) -> i8 {
    match s {
        Sign::Neg => -1,
        Sign::Zero => 0,
        Sign::Pos => 1,
    }
}

/// A literal whose variables all denote positive numbers, rewritten into
/// the positive cone. `Err(())` is ⊥, `Ok(None)` is ⊤.
pub(crate) fn fold_signed(l: &Literal) -> Result<Option<Literal>, ()> {
    let f = match &l.atom {
        Atom::Less(Term::Mono(a), Term::Mono(b)) => {
            let (sa, sb) = (rank(a.sign()), rank(b.sign()));
            if sa != sb {
                if sa < sb {
                    Formula::True
                } else {
                    Formula::False
                }
            } else {
                match sa {
                    0 => Formula::False,
                    1 => mono_less(magnitude(a), magnitude(b)),
                    _ => mono_less(magnitude(b), magnitude(a)),
                }
            }
        }
        Atom::Eq(Term::Mono(a), Term::Mono(b)) => {
            if a.sign() != b.sign() {
                Formula::False
            } else if a.sign() == Sign::Zero {
                Formula::True
            } else {
                mono_eq(magnitude(a), magnitude(b))
            }
        }
        Atom::Re { degree, arg } => match arg.sign() {
            Sign::Zero => Formula::True,
            Sign::Neg if degree.is_even() => Formula::False,
            _ => re(degree.clone(), magnitude(arg)),
        },
        a => panic!("multiplicative engine received a foreign atom: {a}"),
    };
    match (f, l.negated) {
        (Formula::True, false) | (Formula::False, true) => Ok(None),
        (Formula::False, false) | (Formula::True, true) => Err(()),
        (Formula::Atom(a), negated) => Ok(Some(Literal { atom: a, negated })),
        _ => unreachable!(),
    }
}

fn sign_condition(v: &Var, s: Sign) -> Formula {
    let var = Monomial::var(v.clone());
    let zero = Monomial::zero();
    match s {
        Sign::Pos => mono_less(zero, var),
        Sign::Zero => mono_eq(var, zero),
        Sign::Neg => mono_less(var, zero),
    }
}

fn abs_var(v: &Var, s: Sign) -> Option<Monomial> {
    match s {
        Sign::Pos => None,
        Sign::Zero => Some(Monomial::zero()),
        Sign::Neg => Some(Monomial::minus_one().mul(&Monomial::var(v.clone()))),
    }
}

struct Splitter<'a> {
    x: &'a Var,
    engine: fn(&Cube) -> Formula,
    positive_theory: Theory,
}

impl Splitter<'_> {
    fn split(&self, pending: Vec<Literal>, done: Vec<Literal>, assigned: &BTreeSet<Var>, rest: &[Var]) -> Formula {
        let Some((v, rest)) = rest.split_first() else {
            return self.leaf(done);
        };
        let mut assigned = assigned.clone();
        assigned.insert(v.clone());
        let mut results = Vec::new();
        for s in [Sign::Pos, Sign::Zero, Sign::Neg] {
            let by = abs_var(v, s);
            let mut next_pending = Vec::new();
            let mut next_done = done.clone();
            let mut dead = false;
            for l in &pending {
                let atom = match &by {
                    Some(m) if l.atom.mentions(v) => l.atom.substitute(v, &Term::Mono(m.clone())),
                    _ => l.atom.clone(),
                };
                let l = Literal { atom, negated: l.negated };
                if l.atom.vars().iter().all(|w| assigned.contains(w)) {
                    match fold_signed(&l) {
                        Err(()) => {
                            dead = true;
                            break;
                        }
                        Ok(None) => {}
                        Ok(Some(p)) => next_done.push(p),
                    }
                } else {
                    next_pending.push(l);
                }
            }
            let r = if dead {
                Formula::False
            } else if v == self.x && s == Sign::Zero {
                // Nothing mentions x any more; the rest stays in the full language.
                Formula::conj(next_done.iter().chain(&next_pending).map(Literal::to_formula))
            } else {
                self.split(next_pending, next_done, &assigned, rest)
            };
            results.push((s, r));
        }
        if v == self.x {
            // ∃x φ ⟺ ∃x>0 φ ∨ φ(0) ∨ ∃x>0 φ(−x)
            return Formula::disj(results.into_iter().map(|(_, r)| r));
        }
        if results.iter().all(|(_, r)| *r == results[0].1) && !results[0].1.free_vars().contains(v) {
            return results.pop().unwrap().1;
        }
        Formula::disj(results.into_iter().map(|(s, r)| {
            let r = match abs_var(v, s) {
                // The branch spoke about |v| = −v.
                Some(m) if s == Sign::Neg => r.substitute(v, &Term::Mono(m)),
                _ => r,
            };
            Formula::conj([sign_condition(v, s), r])
        }))
    }

    fn leaf(&self, done: Vec<Literal>) -> Formula {
        let mut free = Vec::new();
        let mut lits = Vec::new();
        for l in done {
            match (fold_atom(&l.atom, self.positive_theory), l.negated) {
                (Formula::True, false) | (Formula::False, true) => {}
                (Formula::False, false) | (Formula::True, true) => return Formula::False,
                (Formula::Atom(atom), negated) => {
                    let l = Literal { atom, negated };
                    if l.atom.mentions(self.x) {
                        lits.push(l);
                    } else {
                        free.push(l.to_formula());
                    }
                }
                (g, negated) => free.push(if negated { Formula::not(g) } else { g }),
            }
        }
        if !lits.is_empty() {
            free.push((self.engine)(&Cube::new(self.x.clone(), lits)));
        }
        crate::syntax::simplify(&Formula::conj(free), self.positive_theory)
    }
}

/// Reduces `∃x` of a cube over full ℚ or ℝ to positive-cone cubes, each
/// handed to `engine`; the case results are recombined under their sign
/// conditions.
pub fn sign_split(c: &Cube, engine: fn(&Cube) -> Formula) -> Formula {
    let mut vars: BTreeSet<Var> = BTreeSet::new();
    for l in &c.literals {
        vars.extend(l.atom.vars());
    }
    vars.remove(&c.var);
    let order: Vec<Var> = std::iter::once(c.var.clone()).chain(vars).collect();
    let s = Splitter { x: &c.var, engine, positive_theory: Theory::MulQPos };
    s.split(c.literals.clone(), Vec::new(), &BTreeSet::new(), &order)
}

/// `∃x` over ⟨ℚ;<,×,Re_n⟩.
pub fn eliminate_mul_q(c: &Cube) -> Formula {
    sign_split(c, eliminate_mul_q_plus)
}

/// `∃x` over ⟨ℝ;<,×⟩.
pub fn eliminate_mul_r(c: &Cube) -> Formula {
    sign_split(c, eliminate_mul_group)
}
