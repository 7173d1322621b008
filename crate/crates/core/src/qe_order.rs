//! Elimination for the pure orders: ⟨ℚ;<⟩ and ⟨ℝ;<⟩, ⟨ℤ;<,s⟩ and ⟨ℕ;<,s,0⟩.

use crate::syntax::{Atom, Cube, Formula, OrderTerm, Term};

pub const ANCHOR_DLO: &str = "dense order without endpoints";
pub const ANCHOR_Z: &str = "discrete order with successor and predecessor";
pub const ANCHOR_N: &str = "discrete order with a least element";

/// The literals of a cube relative to `y = s^α(x)`.
#[derive(Default)]
struct Bounds {
    lower: Vec<OrderTerm>,
    upper: Vec<OrderTerm>,
    equal: Vec<OrderTerm>,
    /// Some literal compared `x` with itself and failed.
    contradiction: bool,
}

fn order_sides(a: &Atom) -> (&OrderTerm, &OrderTerm, bool) {
    match a {
        Atom::Less(Term::Order(s), Term::Order(t)) => (s, t, false),
        Atom::Eq(Term::Order(s), Term::Order(t)) => (s, t, true),
        _ => panic!("order engine received a non-order atom: {a}"),
    }
}

fn bounds(c: &Cube) -> (u64, Bounds) {
    let x = &c.var;
    let mentions = |t: &OrderTerm| t.variable() == Some(x);
    let alpha = c
        .literals
        .iter()
        .flat_map(|l| {
            let (s, t, _) = order_sides(&l.atom);
            [s, t].into_iter().filter(|u| mentions(u)).map(|u| u.succ)
        })
        .max()
        .unwrap_or(0);
    let mut b = Bounds::default();
    for l in &c.literals {
        assert!(!l.negated, "order cubes carry positive literals only");
        let (s, t, eq) = order_sides(&l.atom);
        match (mentions(s), mentions(t)) {
            (true, true) => {
                let ok = if eq { s.succ == t.succ } else { s.succ < t.succ };
                b.contradiction |= !ok;
            }
            (true, false) => {
                let u = t.succ_by(alpha - s.succ);
                if eq {
                    b.equal.push(u);
                } else {
                    b.upper.push(u);
                }
            }
            (false, true) => {
                let u = s.succ_by(alpha - t.succ);
                if eq {
                    b.equal.push(u);
                } else {
                    b.lower.push(u);
                }
            }
            (false, false) => panic!("x-free literal {l} inside a cube over {x}"),
        }
    }
    (alpha, b)
}

fn ot(t: OrderTerm) -> Term {
    Term::Order(t)
}

/// The constraints with `y` replaced by the term `e`.
fn substitute_all(b: &Bounds, e: &OrderTerm) -> Formula {
    let mut out = Vec::new();
    for u in &b.equal {
        out.push(Formula::eq(ot(e.clone()), ot(u.clone())));
    }
    for t in &b.lower {
        out.push(Formula::less(ot(t.clone()), ot(e.clone())));
    }
    for u in &b.upper {
        out.push(Formula::less(ot(e.clone()), ot(u.clone())));
    }
    Formula::conj(out)
}

/// Bound pairs `s^k(t) < u` for every lower `t` and upper `u`.
fn pairs(lower: &[OrderTerm], upper: &[OrderTerm], gap: u64) -> Formula {
    Formula::conj(lower.iter().flat_map(|t| upper.iter().map(move |u| Formula::less(ot(t.succ_by(gap)), ot(u.clone())))))
}

/// `∃x` over a dense order without endpoints.
pub fn eliminate_dlo(c: &Cube) -> Formula {
    let (_, b) = bounds(c);
    if b.contradiction {
        return Formula::False;
    }
    if let Some(e) = b.equal.first() {
        return substitute_all(&b, e);
    }
    if b.lower.is_empty() || b.upper.is_empty() {
        return Formula::True;
    }
    pairs(&b.lower, &b.upper, 0)
}

/// `∃x` over ℤ with successor. Every element has a predecessor, so
/// `y = s^α(x)` ranges over all of ℤ.
pub fn eliminate_discrete_z(c: &Cube) -> Formula {
    let (_, b) = bounds(c);
    if b.contradiction {
        return Formula::False;
    }
    if let Some(e) = b.equal.first() {
        return substitute_all(&b, e);
    }
    if b.lower.is_empty() || b.upper.is_empty() {
        return Formula::True;
    }
    pairs(&b.lower, &b.upper, 1)
}

/// `∃x` over ℕ with successor and 0. Here `y = s^α(x)` ranges over the
/// elements `≥ s^α(0)`, which becomes an extra lower bound; with no lower
/// bound at all the least element 0 serves.
pub fn eliminate_discrete_n(c: &Cube) -> Formula {
    let (alpha, mut b) = bounds(c);
    if b.contradiction {
        return Formula::False;
    }
    if alpha > 0 {
        b.lower.push(OrderTerm::numeral(alpha - 1));
    }
    if let Some(e) = b.equal.first() {
        return substitute_all(&b, e);
    }
    if b.upper.is_empty() {
        return Formula::True;
    }
    if b.lower.is_empty() {
        return Formula::conj(b.upper.iter().map(|u| Formula::less(ot(OrderTerm::zero()), ot(u.clone()))));
    }
    pairs(&b.lower, &b.upper, 1)
}
