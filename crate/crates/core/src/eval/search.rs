//! Bounded witness search. For one variable every atom is turned into a
//! bitset over a sorted candidate table: order and monomial comparisons are
//! monotone on each sign range and cost a binary search, power predicates
//! read precomputed factorizations, and the rest is evaluated pointwise.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use super::{eval_atom, eval_monomial, eval_qf, Assignment, EvalError, Value, Witness};
use crate::numeric::{enumerate_rationals, factor_rational, primes_up_to, Rational};
use crate::syntax::{Atom, Carrier, Formula, Term, Theory, Var};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize, value: bool) -> Bits {
        let mut b = Bits(vec![if value { u64::MAX } else { 0 }; len.div_ceil(64)]);
        if value {
            b.trim(len);
        }
        b
    }

    fn trim(&mut self, len: usize) {
        if len % 64 != 0 {
            if let Some(last) = self.0.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn set_range(&mut self, lo: usize, hi: usize) {
        for i in lo..hi {
            self.set(i);
        }
    }

    fn and(&mut self, o: &Bits) {
        self.0.iter_mut().zip(&o.0).for_each(|(a, b)| *a &= b);
    }

    fn or(&mut self, o: &Bits) {
        self.0.iter_mut().zip(&o.0).for_each(|(a, b)| *a |= b);
    }

    fn not(&mut self, len: usize) {
        self.0.iter_mut().for_each(|a| *a = !*a);
        self.trim(len);
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// The values tried for a bound variable, sorted ascending, with the
/// enumeration rank (smaller height first) and, for the rationals with
/// entries of at most two digits, exponents over the primes ≤ budget.
pub struct Candidates {
    pub values: Vec<Rational>,
    rank: Vec<usize>,
    zero: Option<usize>,
    first_positive: usize,
    primes: Vec<u64>,
    exponents: Vec<Vec<i64>>,
}

impl Candidates {
    fn build(carrier: Carrier, budget: u64) -> Candidates {
        let b = budget as i64;
        let by_rank: Vec<Rational> = match carrier {
            Carrier::Naturals => (0..=b).map(Rational::from).collect(),
            Carrier::Integers => std::iter::once(0).chain((1..=b).flat_map(|k| [k, -k])).map(Rational::from).collect(),
            Carrier::Rationals | Carrier::Reals => enumerate_rationals(budget),
            Carrier::PositiveRationals => enumerate_rationals(budget).into_iter().filter(Rational::is_positive).collect(),
        };
        let mut order: Vec<usize> = (0..by_rank.len()).collect();
        order.sort_by(|&i, &j| by_rank[i].cmp(&by_rank[j]));
        let values: Vec<Rational> = order.iter().map(|&i| by_rank[i].clone()).collect();
        let rank = order;
        let zero = values.iter().position(Rational::is_zero);
        let first_positive = values.partition_point(|v| !v.is_positive());
        let primes = primes_up_to(budget.max(2));
        let exponents = values
            .iter()
            .map(|v| {
                let f = factor_rational(v);
                primes.iter().map(|p| f.exponents.get(&(*p).into()).copied().unwrap_or(0)).collect()
            })
            .collect();
        Candidates { values, rank, zero, first_positive, primes, exponents }
    }

    /// Shared table for a universe and budget.
    pub fn get(theory: Theory, budget: u64) -> Arc<Candidates> {
        static CACHE: OnceLock<Mutex<HashMap<(Carrier, u64), Arc<Candidates>>>> = OnceLock::new();
        let carrier = theory.carrier();
        let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
        cache.entry((carrier, budget)).or_insert_with(|| Arc::new(Candidates::build(carrier, budget))).clone()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index ranges on which `x` has constant sign.
    fn sign_ranges(&self) -> Vec<(usize, usize)> {
        let neg_end = self.zero.unwrap_or(self.first_positive);
        [(0, neg_end), (neg_end, self.first_positive), (self.first_positive, self.len())].into_iter().filter(|(a, b)| a < b).collect()
    }
}

struct Masker<'a> {
    x: &'a Var,
    c: &'a Candidates,
    a: Assignment,
}

impl Masker<'_> {
    fn at(&mut self, i: usize) -> &Assignment {
        self.a.insert(self.x.clone(), Value::Rational(self.c.values[i].clone()));
        &self.a
    }

    fn atom_at(&mut self, atom: &Atom, i: usize) -> Result<bool, EvalError> {
        let x = self.at(i);
        eval_atom(atom, x)
    }

    fn pointwise(&mut self, atom: &Atom) -> Result<Bits, EvalError> {
        let mut m = Bits::new(self.c.len(), false);
        for i in 0..self.c.len() {
            if self.atom_at(atom, i)? {
                m.set(i);
            }
        }
        Ok(m)
    }

    /// An atom whose truth changes at most once on each range.
    fn monotone(&mut self, atom: &Atom, ranges: &[(usize, usize)]) -> Result<Bits, EvalError> {
        let mut m = Bits::new(self.c.len(), false);
        for &(lo, hi) in ranges {
            let first = self.atom_at(atom, lo)?;
            let last = self.atom_at(atom, hi - 1)?;
            if first == last {
                if first {
                    m.set_range(lo, hi);
                }
                continue;
            }
            // First index in [lo, hi) whose truth differs from `first`.
            let (mut l, mut h) = (lo + 1, hi - 1);
            while l < h {
                let mid = l + (h - l) / 2;
                if self.atom_at(atom, mid)? == first {
                    l = mid + 1;
                } else {
                    h = mid;
                }
            }
            if first {
                m.set_range(lo, l);
            } else {
                m.set_range(l, hi);
            }
        }
        Ok(m)
    }

    fn power(&mut self, degree: &num_bigint::BigInt, arg: &crate::syntax::Monomial) -> Result<Option<Bits>, EvalError> {
        let len = self.c.len();
        let n = degree.to_i64().expect("degree out of range");
        let e = arg.exponent(self.x).to_i64().expect("exponent out of range");
        let Value::Rational(rest) = eval_monomial(&arg.without(self.x), &self.a)? else { return Ok(None) };
        let mut m = Bits::new(len, false);
        if rest.is_zero() {
            return Ok(Some(Bits::new(len, true)));
        }
        if let Some(z) = self.c.zero {
            m.set(z);
        }
        let f = factor_rational(&rest);
        let mut base = vec![0i64; self.c.primes.len()];
        for (p, &k) in &f.exponents {
            match p.to_u64().and_then(|p| self.c.primes.iter().position(|&q| q == p)) {
                Some(j) => base[j] = k,
                None if k.rem_euclid(n) != 0 => return Ok(Some(m)),
                None => {}
            }
        }
        for i in 0..len {
            if Some(i) == self.c.zero {
                continue;
            }
            let v = &self.c.values[i];
            let negative = (f.sign < 0) != (v.is_negative() && e.rem_euclid(2) == 1);
            if negative && n % 2 == 0 {
                continue;
            }
            if base.iter().zip(&self.c.exponents[i]).all(|(b, k)| (b + e * k).rem_euclid(n) == 0) {
                m.set(i);
            }
        }
        Ok(Some(m))
    }

    fn atom(&mut self, atom: &Atom) -> Result<Bits, EvalError> {
        let len = self.c.len();
        if !atom.mentions(self.x) {
            let t = eval_atom(atom, &self.a)?;
            return Ok(Bits::new(len, t));
        }
        let everywhere = [(0, len)];
        match atom {
            Atom::Less(Term::Mono(_), _) | Atom::Eq(Term::Mono(_), _) => {
                let ranges = self.c.sign_ranges();
                self.comparison(atom, &ranges)
            }
            Atom::Less(..) | Atom::Eq(..) => self.comparison(atom, &everywhere),
            Atom::Re { degree, arg } => match self.power(degree, arg)? {
                Some(m) => Ok(m),
                None => self.pointwise(atom),
            },
            Atom::Cong { .. } => self.pointwise(atom),
        }
    }

    fn comparison(&mut self, atom: &Atom, ranges: &[(usize, usize)]) -> Result<Bits, EvalError> {
        match atom {
            Atom::Less(..) => self.monotone(atom, ranges),
            Atom::Eq(s, t) => {
                let mut m = self.monotone(&Atom::Less(s.clone(), t.clone()), ranges)?;
                m.or(&self.monotone(&Atom::Less(t.clone(), s.clone()), ranges)?);
                m.not(self.c.len());
                Ok(m)
            }
            _ => unreachable!(),
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<Bits, EvalError> {
        let len = self.c.len();
        Ok(match f {
            Formula::True => Bits::new(len, true),
            Formula::False => Bits::new(len, false),
            Formula::Atom(a) => self.atom(a)?,
            Formula::Not(g) => {
                let mut m = self.formula(g)?;
                m.not(len);
                m
            }
            Formula::And(v) => {
                let mut m = Bits::new(len, true);
                for g in v {
                    m.and(&self.formula(g)?);
                    if m.0.iter().all(|w| *w == 0) {
                        break;
                    }
                }
                m
            }
            Formula::Or(v) => {
                let mut m = Bits::new(len, false);
                for g in v {
                    m.or(&self.formula(g)?);
                }
                m
            }
            Formula::Imp(p, q) => {
                let mut m = self.formula(p)?;
                m.not(len);
                m.or(&self.formula(q)?);
                m
            }
            Formula::Iff(p, q) => {
                let (mp, mq) = (self.formula(p)?, self.formula(q)?);
                let mut both = mp.clone();
                both.and(&mq);
                let mut neither = mp;
                neither.or(&mq);
                neither.not(len);
                both.or(&neither);
                both
            }
            Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::Quantified),
        })
    }
}

/// Candidate values of `x` (indices into `c`) satisfying the quantifier-free `matrix`.
fn satisfying(x: &Var, matrix: &Formula, c: &Candidates, a: &Assignment) -> Result<Vec<usize>, EvalError> {
    let mut m = Masker { x, c, a: a.clone() };
    let bits = m.formula(matrix)?;
    let mut hits: Vec<usize> = bits.ones().collect();
    hits.sort_by_key(|&i| c.rank[i]);
    Ok(hits)
}

fn search_block(vars: &[Var], matrix: &Formula, c: &Candidates, a: &mut Assignment) -> Result<bool, EvalError> {
    let (x, rest) = vars.split_first().expect("nonempty block");
    if rest.is_empty() {
        let hits = satisfying(x, matrix, c, a)?;
        if let Some(&i) = hits.first() {
            a.insert(x.clone(), Value::Rational(c.values[i].clone()));
            return Ok(true);
        }
        return Ok(false);
    }
    let mut by_rank: Vec<usize> = (0..c.len()).collect();
    by_rank.sort_by_key(|&i| c.rank[i]);
    for i in by_rank {
        a.insert(x.clone(), Value::Rational(c.values[i].clone()));
        if search_block(rest, matrix, c, a)? {
            return Ok(true);
        }
    }
    a.remove(x);
    Ok(false)
}

/// Splits `∃x₁…∃xₖ φ` into its block and matrix.
pub(crate) fn exists_block(f: &Formula) -> (Vec<Var>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::Exists(x, g) = cur {
        vars.push(x.clone());
        cur = g;
    }
    (vars, cur)
}

/// Searches the candidates of height (or absolute value) at most `budget`
/// for values of the leading `∃` block of `f`. Finding none is evidence,
/// not proof, of unsatisfiability.
pub fn search_witness(f: &Formula, theory: Theory, a: &Assignment, budget: u64) -> Result<Option<Witness>, EvalError> {
    let (vars, matrix) = exists_block(f);
    if !matrix.is_quantifier_free() {
        return Err(EvalError::Quantified);
    }
    if vars.is_empty() {
        return Ok(eval_qf(matrix, a)?.then(|| Witness::verify(matrix, a, Assignment::new()).expect("true matrix")));
    }
    let c = Candidates::get(theory, budget);
    let mut ext = a.clone();
    if !search_block(&vars, matrix, &c, &mut ext)? {
        return Ok(None);
    }
    let values = vars.iter().map(|v| (v.clone(), ext[v].clone())).collect();
    Ok(Some(Witness::verify(matrix, a, values).expect("search hit failed re-verification")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::parse_assignment;
    use crate::syntax::parse_formula;

    fn search(text: &str, theory: Theory, a: &str, budget: u64) -> Option<String> {
        let f = parse_formula(text, theory).unwrap();
        let w = search_witness(&f, theory, &parse_assignment(a).unwrap(), budget).unwrap()?;
        assert!(w.verified());
        Some(w.values.values().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }

    /// Plain pointwise scan.
    fn naive(x: &Var, f: &Formula, theory: Theory, a: &Assignment, budget: u64) -> Vec<Rational> {
        let c = Candidates::get(theory, budget);
        let mut a = a.clone();
        let mut out = Vec::new();
        for v in &c.values {
            a.insert(x.clone(), Value::Rational(v.clone()));
            if eval_qf(f, &a).unwrap() {
                out.push(v.clone());
            }
        }
        out
    }

    #[test]
    fn search_examples() {
        assert_eq!(search("exists x. y < x /\\ x < z", Theory::DloQ, "y=1,z=2", 10).as_deref(), Some("3/2"));
        assert_eq!(search("exists x. x == 0 mod 2 /\\ 0 < x /\\ x < 3", Theory::PresburgerZ, "", 10).as_deref(), Some("2"));
        assert_eq!(search("exists x. x * x = y", Theory::MulQ, "y=2", 50), None);
        assert_eq!(search("exists x. x * x = y", Theory::MulQ, "y=4/9", 10).as_deref(), Some("-2/3"));
        assert_eq!(search("exists x. exists y. (x < y /\\ y < z)", Theory::OrderZ, "z=0", 10).as_deref(), Some("-2,-1"));
    }

    #[test]
    fn masks_match_pointwise_scan() {
        let cases = [
            (Theory::DloQ, "y < x /\\ x < z \\/ x = z", "y=-1/3,z=5/7"),
            (Theory::OagQ, "3*x < y + y /\\ ~(2*x = z)", "y=2,z=-1"),
            (Theory::PresburgerZ, "x == 2 mod 5 /\\ -7 < 2*x + y <-> x < 4", "y=3"),
            (Theory::MulQ, "x * x * y < z /\\ pow(2, x * z) \\/ x^-1 = y", "y=-2,z=1/2"),
            (Theory::MulQ, "~pow(3, x * x * y) /\\ y < x * x * x", "y=4"),
            (Theory::MulQPos, "pow(2, x * y) /\\ x^3 < z * y \\/ x = y", "y=4/9,z=5"),
            (Theory::OrderN, "s(y) < s(s(x)) /\\ x < s(s(s(z)))", "y=3,z=5"),
        ];
        for (theory, text, a) in cases {
            let f = parse_formula(text, theory).unwrap();
            let a = parse_assignment(a).unwrap();
            let x = Var::new("x");
            let c = Candidates::get(theory, 30);
            let mut fast: Vec<Rational> = satisfying(&x, &f, &c, &a).unwrap().into_iter().map(|i| c.values[i].clone()).collect();
            fast.sort();
            assert_eq!(fast, naive(&x, &f, theory, &a, 30), "{text}");
        }
    }
}
