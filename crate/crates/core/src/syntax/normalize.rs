//! Negation normal form, removal of negated atoms, and distribution into cubes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::formula::{Atom, Formula, Literal};
use super::term::{LinearTerm, OrderBase, OrderTerm, Term};
use super::theory::Theory;
use crate::numeric::Rational;

/// Eliminates `->` and `<->` and pushes negations down to atoms.
/// Quantifiers are dualized on the way.
pub fn nnf(f: &Formula) -> Formula {
    pos(f)
}

fn pos(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => neg(g),
        Formula::And(v) => Formula::conj(v.iter().map(pos)),
        Formula::Or(v) => Formula::disj(v.iter().map(pos)),
        Formula::Imp(a, b) => Formula::disj([neg(a), pos(b)]),
        Formula::Iff(a, b) => Formula::disj([Formula::conj([pos(a), pos(b)]), Formula::conj([neg(a), neg(b)])]),
        Formula::Exists(x, g) => Formula::exists(x.clone(), pos(g)),
        Formula::Forall(x, g) => Formula::forall(x.clone(), pos(g)),
    }
}

fn neg(f: &Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Atom(_) => Formula::not(f.clone()),
        Formula::Not(g) => pos(g),
        Formula::And(v) => Formula::disj(v.iter().map(neg)),
        Formula::Or(v) => Formula::conj(v.iter().map(neg)),
        Formula::Imp(a, b) => Formula::conj([pos(a), neg(b)]),
        Formula::Iff(a, b) => Formula::disj([Formula::conj([pos(a), neg(b)]), Formula::conj([neg(a), pos(b)])]),
        Formula::Exists(x, g) => Formula::forall(x.clone(), neg(g)),
        Formula::Forall(x, g) => Formula::exists(x.clone(), neg(g)),
    }
}

/// Rewrites every negated atom of an NNF formula into positive atoms by
/// totality of the order; only negated power predicates survive.
pub fn normalize_literals(f: &Formula, theory: Theory) -> Formula {
    match f {
        Formula::Not(g) => match &**g {
            Formula::Atom(a) => negate_atom(a),
            other => Formula::not(normalize_literals(other, theory)),
        },
        Formula::And(v) => Formula::conj(v.iter().map(|g| normalize_literals(g, theory))),
        Formula::Or(v) => Formula::disj(v.iter().map(|g| normalize_literals(g, theory))),
        Formula::Exists(x, g) => Formula::exists(x.clone(), normalize_literals(g, theory)),
        Formula::Forall(x, g) => Formula::forall(x.clone(), normalize_literals(g, theory)),
        Formula::Imp(..) | Formula::Iff(..) => normalize_literals(&nnf(f), theory),
        _ => f.clone(),
    }
}

/// Positive equivalent of `¬a` (or `¬a` itself for power predicates).
pub fn negate_atom(a: &Atom) -> Formula {
    match a {
        Atom::Less(s, t) => Formula::disj([Formula::less(t.clone(), s.clone()), Formula::eq(t.clone(), s.clone())]),
        Atom::Eq(s, t) => Formula::disj([Formula::less(s.clone(), t.clone()), Formula::less(t.clone(), s.clone())]),
        Atom::Cong { modulus, lhs, rhs } => {
            let n = modulus.to_u64().expect("modulus fits in 64 bits");
            Formula::disj((1..n).map(|i| {
                Formula::Atom(Atom::Cong { modulus: modulus.clone(), lhs: lhs.clone(), rhs: rhs.add_constant(&BigInt::from(i)) })
            }))
        }
        Atom::Re { .. } => Formula::not(Formula::Atom(a.clone())),
    }
}

/// Converts a formula whose negations sit only on atoms into a list of
/// cubes. Duplicate literals are merged, cubes with two clashing literals
/// are dropped and cubes that contain another cube are discarded. The same
/// reduction runs after every distribution step, so the intermediate lists
/// stay as small as the result.
pub fn dnf_cubes(f: &Formula, theory: Theory) -> Vec<Vec<Literal>> {
    let mut t = Table {
        integral: theory.is_discrete(),
        lits: Vec::new(),
        ids: HashMap::new(),
        keys: HashMap::new(),
        bounds: Vec::new(),
        clashes: HashMap::new(),
    };
    let cubes = t.dnf(f);
    // Ids follow first occurrence; restore the literal order in each cube.
    let mut out: Vec<Vec<Literal>> = cubes
        .into_iter()
        .map(|c| {
            let mut lits: Vec<Literal> = c.into_iter().map(|i| t.lits[i as usize].clone()).collect();
            lits.sort();
            lits
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `a` and `b` cannot hold together in any strict total order.
fn clash(a: &Literal, b: &Literal) -> bool {
    if a.atom == b.atom {
        return a.negated != b.negated;
    }
    if a.negated || b.negated {
        return false;
    }
    match (&a.atom, &b.atom) {
        (Atom::Less(s, t), Atom::Less(u, v)) => s == v && t == u,
        (Atom::Less(s, t), Atom::Eq(u, v)) | (Atom::Eq(u, v), Atom::Less(s, t)) => (s == u && t == v) || (s == v && t == u),
        _ => false,
    }
}

fn as_linear(t: &Term) -> Option<LinearTerm> {
    match t {
        Term::Linear(l) => Some(l.clone()),
        Term::Order(OrderTerm { base, succ }) => {
            let v = match base {
                OrderBase::Zero => LinearTerm::zero(),
                OrderBase::Var(v) => LinearTerm::var(v.clone()),
            };
            Some(v.add_constant(&BigInt::from(*succ)))
        }
        Term::Mono(_) => None,
    }
}

/// A positive comparison as `L ⋈ c` with `L` primitive and its first
/// coefficient positive; `Greater` stands for `c < L`.
fn as_bound(l: &Literal) -> Option<(LinearTerm, std::cmp::Ordering, Rational)> {
    use std::cmp::Ordering;
    if l.negated {
        return None;
    }
    let (s, t, eq) = match &l.atom {
        Atom::Less(s, t) => (s, t, false),
        Atom::Eq(s, t) => (s, t, true),
        _ => return None,
    };
    // t − s = k·L + c, compared with 0.
    let d = as_linear(t)?.sub(&as_linear(s)?);
    let c = d.constant_part().clone();
    let var_part = d.add_constant(&-&c);
    let first = var_part.coeffs().values().next()?.clone();
    let k = var_part.content() * first.signum();
    let key = LinearTerm::from_parts(var_part.coeffs().iter().map(|(v, a)| (v.clone(), a / &k)), BigInt::zero());
    let value = Rational::new(-c, k.clone()).ok()?;
    let rel = if eq {
        Ordering::Equal
    } else if k.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    };
    Some((key, rel, value))
}

/// Comparisons of one linear form that cannot hold together, e.g.
/// `L < 1 ∧ 2 < L`, or `0 < L < 1` when `L` takes integer values.
pub(crate) fn bounds_empty(c: &[Literal], integral: bool) -> bool {
    ranges_empty(c.iter().filter_map(as_bound), integral)
}

fn ranges_empty<K: Ord>(bounds: impl Iterator<Item = (K, std::cmp::Ordering, Rational)>, integral: bool) -> bool {
    use std::cmp::Ordering;
    struct Range {
        lo: Option<Rational>,
        hi: Option<Rational>,
        eq: Option<Rational>,
    }
    let mut ranges: BTreeMap<K, Range> = BTreeMap::new();
    let gap = if integral { Rational::one() } else { Rational::zero() };
    for (key, rel, v) in bounds {
        let r = ranges.entry(key).or_insert(Range { lo: None, hi: None, eq: None });
        // An integer above a lies above ⌊a⌋; one below b lies below ⌈b⌉,
        // and an integer equal to a needs a integral.
        let v = match rel {
            _ if !integral => v,
            Ordering::Greater => Rational::from_integer(v.numer().div_floor(v.denom())),
            Ordering::Less => Rational::from_integer(v.numer().div_ceil(v.denom())),
            Ordering::Equal if !v.is_integer() => return true,
            Ordering::Equal => v,
        };
        match rel {
            Ordering::Greater => {
                if r.lo.as_ref().is_none_or(|lo| &v > lo) {
                    r.lo = Some(v);
                }
            }
            Ordering::Less => {
                if r.hi.as_ref().is_none_or(|hi| &v < hi) {
                    r.hi = Some(v);
                }
            }
            Ordering::Equal => {
                if r.eq.as_ref().is_some_and(|e| e != &v) {
                    return true;
                }
                r.eq = Some(v);
            }
        }
        let low = |x: &Rational| r.lo.as_ref().is_some_and(|lo| x <= lo);
        let high = |x: &Rational| r.hi.as_ref().is_some_and(|hi| x >= hi);
        let pinched = match (&r.lo, &r.hi) {
            (Some(lo), Some(hi)) => hi.clone() - lo.clone() <= gap,
            _ => false,
        };
        if pinched || r.eq.as_ref().is_some_and(|e| low(e) || high(e)) {
            return true;
        }
    }
    false
}

/// Literals interned as indices, with their bounds worked out once.
struct Table {
    integral: bool,
    lits: Vec<Literal>,
    ids: HashMap<Literal, u32>,
    keys: HashMap<LinearTerm, u32>,
    bounds: Vec<Option<(u32, std::cmp::Ordering, Rational)>>,
    clashes: HashMap<(u32, u32), bool>,
}

type IdCube = Vec<u32>;

impl Table {
    fn id(&mut self, l: Literal) -> u32 {
        if let Some(&i) = self.ids.get(&l) {
            return i;
        }
        let i = self.lits.len() as u32;
        let bound = as_bound(&l).map(|(key, rel, v)| {
            let n = self.keys.len() as u32;
            (*self.keys.entry(key).or_insert(n), rel, v)
        });
        self.bounds.push(bound);
        self.ids.insert(l.clone(), i);
        self.lits.push(l);
        i
    }

    fn clash(&mut self, a: u32, b: u32) -> bool {
        let lits = &self.lits;
        *self.clashes.entry((a, b)).or_insert_with(|| clash(&lits[a as usize], &lits[b as usize]))
    }

    fn consistent(&mut self, c: &IdCube) -> bool {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if self.clash(c[i], c[j]) {
                    return false;
                }
            }
        }
        !ranges_empty(c.iter().filter_map(|&i| self.bounds[i as usize].clone()), self.integral)
    }

    fn reduce(&mut self, mut cubes: Vec<IdCube>) -> Vec<IdCube> {
        for c in cubes.iter_mut() {
            c.sort_unstable();
            c.dedup();
        }
        cubes.retain(|c| self.consistent(c));
        cubes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cubes.dedup();
        let mut kept: Vec<IdCube> = Vec::new();
        for c in cubes {
            if !kept.iter().any(|k| k.iter().all(|l| c.binary_search(l).is_ok())) {
                kept.push(c);
            }
        }
        kept
    }

    fn dnf(&mut self, f: &Formula) -> Vec<IdCube> {
        match f {
            Formula::True => vec![vec![]],
            Formula::False => vec![],
            Formula::Atom(a) => vec![vec![self.id(Literal::pos(a.clone()))]],
            Formula::Not(g) => match &**g {
                Formula::Atom(a) => vec![vec![self.id(Literal::neg(a.clone()))]],
                _ => panic!("dnf_cubes expects negation normal form"),
            },
            Formula::Or(v) => {
                let all = v.iter().flat_map(|g| self.dnf(g)).collect();
                self.reduce(all)
            }
            Formula::And(v) => {
                let mut acc = vec![vec![]];
                for g in v {
                    let part = self.dnf(g);
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for p in &part {
                            let mut c = a.clone();
                            c.extend_from_slice(p);
                            next.push(c);
                        }
                    }
                    acc = self.reduce(next);
                    if acc.is_empty() {
                        return acc;
                    }
                }
                acc
            }
            _ => panic!("dnf_cubes expects a quantifier-free formula in negation normal form"),
        }
    }
}
