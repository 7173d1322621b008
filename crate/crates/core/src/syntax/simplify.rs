//! Theory-aware folding of atoms and connectives.
//!
//! Atoms get a canonical shape where the theory allows it (linear atoms with
//! cancelled sides, reduced congruences, positive-cone monomial atoms with
//! cancelled factors), which lets the cube builder spot duplicates and
//! complementary pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::formula::{Atom, Formula, Literal};
use super::normalize::bounds_empty;
use super::term::{LinearTerm, Monomial, OrderBase, OrderTerm, Sign, Term};
use super::theory::Theory;

fn truth(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}

/// Simplifies a formula bottom-up. The result is equivalent in the theory.
pub fn simplify(f: &Formula, theory: Theory) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => fold_atom(a, theory),
        Formula::Not(g) => match simplify(g, theory) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(h) => *h,
            h => Formula::not(h),
        },
        Formula::And(v) => junction(v.iter().map(|g| simplify(g, theory)), true, theory),
        Formula::Or(v) => junction(v.iter().map(|g| simplify(g, theory)), false, theory),
        Formula::Imp(a, b) => match (simplify(a, theory), simplify(b, theory)) {
            (Formula::False, _) | (_, Formula::True) => Formula::True,
            (Formula::True, b) => b,
            (a, Formula::False) => simplify(&Formula::not(a), theory),
            (a, b) if a == b => Formula::True,
            (a, b) => Formula::imp(a, b),
        },
        Formula::Iff(a, b) => match (simplify(a, theory), simplify(b, theory)) {
            (Formula::True, x) | (x, Formula::True) => x,
            (Formula::False, x) | (x, Formula::False) => simplify(&Formula::not(x), theory),
            (a, b) if a == b => Formula::True,
            (a, b) => Formula::iff(a, b),
        },
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let body = simplify(g, theory);
            if !body.free_vars().contains(x) {
                // Every carrier is nonempty.
                body
            } else if matches!(f, Formula::Exists(..)) {
                Formula::exists(x.clone(), body)
            } else {
                Formula::forall(x.clone(), body)
            }
        }
    }
}

/// Flattening, constant folding, deduplication and complement detection;
/// conjunctions of comparisons with no common solution fold to ⊥.
fn junction(parts: impl Iterator<Item = Formula>, and: bool, theory: Theory) -> Formula {
    let (unit, zero) = if and { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
    let mut out: Vec<Formula> = Vec::new();
    let push = |g: Formula, out: &mut Vec<Formula>| -> bool {
        if g == zero {
            return false;
        }
        if g == unit || out.contains(&g) {
            return true;
        }
        let complement = match &g {
            Formula::Not(h) => out.contains(h),
            h => out.iter().any(|o| matches!(o, Formula::Not(k) if **k == *h)),
        };
        if complement {
            return false;
        }
        out.push(g);
        true
    };
    for p in parts {
        let nested = match (&p, and) {
            (Formula::And(v), true) | (Formula::Or(v), false) => v.clone(),
            _ => vec![p],
        };
        for g in nested {
            if !push(g, &mut out) {
                return zero;
            }
        }
    }
    if and {
        let lits: Vec<Literal> = out.iter().filter_map(|g| if let Formula::Atom(a) = g { Some(Literal::pos(a.clone())) } else { None }).collect();
        if bounds_empty(&lits, theory.is_discrete()) {
            return Formula::False;
        }
    }
    match out.len() {
        0 => unit,
        1 => out.pop().unwrap(),
        _ if and => Formula::And(out),
        _ => Formula::Or(out),
    }
}

/// Folds one atom to ⊤/⊥ or a canonical atom.
pub fn fold_atom(a: &Atom, theory: Theory) -> Formula {
    match a {
        Atom::Less(s, t) | Atom::Eq(s, t) if s == t => truth(matches!(a, Atom::Eq(..))),
        Atom::Less(Term::Order(s), Term::Order(t)) => fold_order(s, t, false, theory),
        Atom::Eq(Term::Order(s), Term::Order(t)) => fold_order(s, t, true, theory),
        Atom::Less(Term::Linear(s), Term::Linear(t)) => fold_linear(s, t, false, theory),
        Atom::Eq(Term::Linear(s), Term::Linear(t)) => fold_linear(s, t, true, theory),
        Atom::Cong { modulus, lhs, rhs } => fold_cong(modulus, &lhs.sub(rhs)),
        Atom::Less(Term::Mono(s), Term::Mono(t)) => fold_mono(s, t, false, theory),
        Atom::Eq(Term::Mono(s), Term::Mono(t)) => fold_mono(s, t, true, theory),
        Atom::Re { degree, arg } => fold_re(degree, arg, theory),
        _ => Formula::Atom(a.clone()),
    }
}

fn fold_order(s: &OrderTerm, t: &OrderTerm, eq: bool, theory: Theory) -> Formula {
    let cmp = |by: fn(&u64, &u64) -> bool| truth(by(&s.succ, &t.succ));
    match (&s.base, &t.base) {
        (a, b) if a == b => {
            if eq {
                cmp(|x, y| x == y)
            } else {
                cmp(|x, y| x < y)
            }
        }
        // In the naturals s^a(x) ≥ s^a(0).
        (OrderBase::Var(_), OrderBase::Zero) if theory == Theory::OrderN && s.succ + u64::from(!eq) > t.succ => Formula::False,
        (OrderBase::Zero, OrderBase::Var(_)) if theory == Theory::OrderN && !eq && s.succ < t.succ => Formula::True,
        (OrderBase::Zero, OrderBase::Var(_)) if theory == Theory::OrderN && eq && s.succ < t.succ => Formula::False,
        _ => {
            // Common successors cancel in both discrete orders.
            let k = s.succ.min(t.succ);
            let (s, t) = (OrderTerm { base: s.base.clone(), succ: s.succ - k }, OrderTerm { base: t.base.clone(), succ: t.succ - k });
            let (s, t) = (Term::Order(s), Term::Order(t));
            Formula::Atom(if eq { Atom::Eq(s, t) } else { Atom::Less(s, t) })
        }
    }
}

/// Splits `d` into `(n, p)` with `d = p - n` and both sides carrying only
/// positive coefficients and constants.
fn split_sides(d: &LinearTerm) -> (LinearTerm, LinearTerm) {
    let mut p = LinearTerm::zero();
    let mut n = LinearTerm::zero();
    for (v, c) in d.coeffs() {
        let t = LinearTerm::var(v.clone());
        if c.is_positive() {
            p = p.add(&t.scale(c));
        } else {
            n = n.add(&t.scale(&-c));
        }
    }
    let k = d.constant_part();
    if k.is_positive() {
        p = p.add_constant(k);
    } else {
        n = n.add_constant(&-k);
    }
    (n, p)
}

fn fold_linear(s: &LinearTerm, t: &LinearTerm, eq: bool, theory: Theory) -> Formula {
    let discrete = theory.is_presburger();
    let mut d = t.sub(s);
    if d.is_constant() {
        let k = d.constant_part();
        return truth(if eq { k.is_zero() } else { k.is_positive() });
    }
    let g = d.content();
    let k = d.constant_part().clone();
    if eq {
        if !k.is_multiple_of(&g) {
            return if discrete { Formula::False } else { Formula::eq(Term::Linear(s.clone()), Term::Linear(t.clone())) };
        }
        d = LinearTerm::from_parts(d.coeffs().iter().map(|(v, c)| (v.clone(), c / &g)), &k / &g);
        if d.coeffs().values().next().is_some_and(|c| c.is_negative()) {
            d = d.neg();
        }
        let (n, p) = split_sides(&d);
        return Formula::eq(Term::Linear(p), Term::Linear(n));
    }
    // 0 < g·u + k
    if discrete {
        // ⟺ -k < g·u ⟺ floor(-k/g) < u
        let c = (-&k).div_floor(&g);
        d = LinearTerm::from_parts(d.coeffs().iter().map(|(v, c)| (v.clone(), c / &g)), -c);
    } else if k.is_multiple_of(&g) {
        d = LinearTerm::from_parts(d.coeffs().iter().map(|(v, c)| (v.clone(), c / &g)), &k / &g);
    }
    let (n, p) = split_sides(&d);
    Formula::less(Term::Linear(n), Term::Linear(p))
}

/// `d ≡ 0 (mod n)` in canonical form `vars ≡ r (mod n')`.
fn fold_cong(n: &BigInt, d: &LinearTerm) -> Formula {
    let d = d.reduce_mod(n);
    let r = (-d.constant_part()).mod_floor(n);
    let vars = LinearTerm::from_parts(d.coeffs().iter().map(|(v, c)| (v.clone(), c.clone())), BigInt::zero());
    if vars.is_constant() {
        return truth(r.is_zero());
    }
    let g = vars.content().gcd(n);
    if !r.is_multiple_of(&g) {
        return Formula::False;
    }
    let m = n / &g;
    if m.is_one() {
        return Formula::True;
    }
    let vars = LinearTerm::from_parts(vars.coeffs().iter().map(|(v, c)| (v.clone(), c / &g)), BigInt::zero());
    Formula::Atom(Atom::Cong { modulus: m, lhs: vars, rhs: LinearTerm::constant(&r / &g) })
}

fn sign_value(s: Sign) -> i8 {
    match s {
        Sign::Neg => -1,
        Sign::Zero => 0,
        Sign::Pos => 1,
    }
}

fn fold_mono(s: &Monomial, t: &Monomial, eq: bool, theory: Theory) -> Formula {
    if s.is_constant() && t.is_constant() {
        let (a, b) = (sign_value(s.sign()), sign_value(t.sign()));
        return truth(if eq { a == b } else { a < b });
    }
    if theory != Theory::MulQPos {
        // 0 and -1 obstruct cancellation; only plain sign facts fold.
        return Formula::Atom(if eq { Atom::Eq(Term::Mono(s.clone()), Term::Mono(t.clone())) } else { Atom::Less(Term::Mono(s.clone()), Term::Mono(t.clone())) });
    }
    // Positive cone: an ordered abelian group, so factors cancel.
    let d = t.mul(&s.inv()).strip_guards();
    if d.is_constant() {
        return truth(eq);
    }
    let mut num = Monomial::one();
    let mut den = Monomial::one();
    for (v, e) in d.exps() {
        let m = Monomial::var(v.clone());
        if e.is_positive() {
            num = num.mul(&m.pow(e));
        } else {
            den = den.mul(&m.pow(&-e));
        }
    }
    if eq {
        let (a, b) = if num <= den { (num, den) } else { (den, num) };
        Formula::Atom(Atom::Eq(Term::Mono(a), Term::Mono(b)))
    } else {
        Formula::Atom(Atom::Less(Term::Mono(den), Term::Mono(num)))
    }
}

fn fold_re(n: &BigInt, arg: &Monomial, theory: Theory) -> Formula {
    let mut arg = arg.reduce_mod(n);
    if theory == Theory::MulQPos {
        arg = arg.strip_guards();
    }
    if arg.sign() == Sign::Neg && n.is_odd() {
        arg = arg.with_sign(Sign::Pos);
    }
    match arg.sign() {
        Sign::Zero => return Formula::True,
        Sign::Neg if arg.is_constant() => return Formula::False,
        _ => {}
    }
    if arg.is_constant() {
        return Formula::True;
    }
    if arg.strip_guards().is_constant() && arg.sign() == Sign::Pos {
        // Only guards remain: the value is 0 or 1, both n-th powers.
        return Formula::True;
    }
    let mut n = n.clone();
    if theory == Theory::MulQPos {
        // In the positive cone w^g is an n-th power iff w is an (n/g)-th power.
        let g = arg.exps().values().fold(n.clone(), |g, e| g.gcd(e));
        if !g.is_one() {
            n = &n / &g;
            arg = Monomial::from_parts(Sign::Pos, arg.exps().iter().map(|(v, e)| (v.clone(), e / &g)));
            if n.is_one() {
                return Formula::True;
            }
        }
    }
    Formula::Atom(Atom::Re { degree: n, arg })
}
