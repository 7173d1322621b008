use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::term::{LinearTerm, Monomial, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Less(Term, Term),
    Eq(Term, Term),
    /// `lhs ≡ rhs (mod modulus)`.
    Cong { modulus: BigInt, lhs: LinearTerm, rhs: LinearTerm },
    /// `arg` is a `degree`-th power.
    Re { degree: BigInt, arg: Monomial },
}

impl Atom {
    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            Atom::Less(a, b) | Atom::Eq(a, b) => {
                let mut s = a.vars();
                s.extend(b.vars());
                s
            }
            Atom::Cong { lhs, rhs, .. } => lhs.vars().chain(rhs.vars()).cloned().collect(),
            Atom::Re { arg, .. } => arg.vars().cloned().collect(),
        }
    }

    pub fn mentions(&self, x: &Var) -> bool {
        match self {
            Atom::Less(a, b) | Atom::Eq(a, b) => a.mentions(x) || b.mentions(x),
            Atom::Cong { lhs, rhs, .. } => lhs.coeffs().contains_key(x) || rhs.coeffs().contains_key(x),
            Atom::Re { arg, .. } => arg.exps().contains_key(x),
        }
    }

    pub fn substitute(&self, x: &Var, by: &Term) -> Atom {
        match self {
            Atom::Less(a, b) => Atom::Less(a.substitute(x, by), b.substitute(x, by)),
            Atom::Eq(a, b) => Atom::Eq(a.substitute(x, by), b.substitute(x, by)),
            Atom::Cong { modulus, lhs, rhs } => {
                let Term::Linear(u) = by else { panic!("congruence substitution needs a linear term") };
                Atom::Cong { modulus: modulus.clone(), lhs: lhs.substitute(x, u), rhs: rhs.substitute(x, u) }
            }
            Atom::Re { degree, arg } => {
                let Term::Mono(u) = by else { panic!("power predicate substitution needs a monomial") };
                Atom::Re { degree: degree.clone(), arg: arg.substitute(x, u) }
            }
        }
    }

    /// Applies `f` to every monomial in the atom (order/equality sides and
    /// power predicate arguments).
    pub fn map_monomials(&self, f: &impl Fn(&Monomial) -> Monomial) -> Atom {
        let g = |t: &Term| match t {
            Term::Mono(m) => Term::Mono(f(m)),
            other => other.clone(),
        };
        match self {
            Atom::Less(a, b) => Atom::Less(g(a), g(b)),
            Atom::Eq(a, b) => Atom::Eq(g(a), g(b)),
            Atom::Re { degree, arg } => Atom::Re { degree: degree.clone(), arg: f(arg) },
            c @ Atom::Cong { .. } => c.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn less(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Less(a, b))
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Eq(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    /// Conjunction that flattens nested conjunctions and folds constants.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Disjunction that flattens nested disjunctions and folds constants.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(v) | Formula::Or(v) => v.iter().all(Formula::is_quantifier_free),
            Formula::Imp(a, b) | Formula::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => out.extend(a.vars().into_iter().filter(|v| !bound.contains(v))),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| out.extend(a.vars()));
        self.visit_binders(&mut |x| {
            out.insert(x.clone());
        });
        out
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_atoms(f),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|g| g.visit_atoms(f)),
            Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    pub fn visit_binders(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => {}
            Formula::Not(g) => g.visit_binders(f),
            Formula::Exists(x, g) | Formula::Forall(x, g) => {
                f(x);
                g.visit_binders(f);
            }
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|g| g.visit_binders(f)),
            Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit_binders(f);
                b.visit_binders(f);
            }
        }
    }

    /// Rebuilds the formula with every atom replaced by `f(atom)`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => f(a),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(v) => Formula::And(v.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(v) => Formula::Or(v.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Imp(a, b) => Formula::imp(a.map_atoms(f), b.map_atoms(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(x, g) => Formula::exists(x.clone(), g.map_atoms(f)),
            Formula::Forall(x, g) => Formula::forall(x.clone(), g.map_atoms(f)),
        }
    }

    /// Substitution of a term for a free variable. Callers guarantee that
    /// `by` mentions no variable bound in `self` (rename-apart makes this hold).
    pub fn substitute(&self, x: &Var, by: &Term) -> Formula {
        match self {
            Formula::Exists(y, _) | Formula::Forall(y, _) if y == x => self.clone(),
            Formula::Exists(y, g) => Formula::exists(y.clone(), g.substitute(x, by)),
            Formula::Forall(y, g) => Formula::forall(y.clone(), g.substitute(x, by)),
            _ => self.map_atoms(&mut |a| Formula::Atom(if a.mentions(x) { a.substitute(x, by) } else { a.clone() })),
        }
    }

    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit_binders(&mut |_| n += 1);
        n
    }

    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.visit_atoms(&mut |_| n += 1);
        n
    }
}

/// An atom or, for power predicates only, a negated atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, negated: true }
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.negated {
            Formula::not(a)
        } else {
            a
        }
    }

    pub fn complement_of(&self, o: &Literal) -> bool {
        self.atom == o.atom && self.negated != o.negated
    }
}

/// The literals under one `∃var` that mention `var`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub var: Var,
    pub literals: Vec<Literal>,
}

impl Cube {
    pub fn new(var: Var, literals: Vec<Literal>) -> Self {
        Cube { var, literals }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conj(self.literals.iter().map(Literal::to_formula))
    }
}
