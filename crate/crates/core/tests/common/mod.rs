//! Random formulas and assignments, and reference computations that share
//! no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use ordqe::eval::{Assignment, Value};
use ordqe::numeric::{Radical, Rational};
use ordqe::syntax::{Atom, Carrier, Formula, LinearTerm, Monomial, OrderTerm, Sign, Sort, Term, Theory, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PARAMS: [&str; 3] = ["u", "v", "w"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct FormulaGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub theory: Theory,
    pub max_quantifiers: usize,
    pub max_atoms: usize,
    quantifiers: usize,
    atoms: usize,
    binders: usize,
}

impl<'r> FormulaGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng, theory: Theory) -> Self {
        FormulaGen { rng, theory, max_quantifiers: 3, max_atoms: 6, quantifiers: 0, atoms: 0, binders: 0 }
    }

    /// A formula over the parameters whose bound variables are pairwise
    /// distinct and never clash with a parameter.
    pub fn formula(&mut self) -> Formula {
        self.quantifiers = 0;
        self.atoms = 0;
        self.binders = 0;
        let mut scope: Vec<Var> = PARAMS.iter().map(|p| Var::new(p)).collect();
        self.node(&mut scope, 0)
    }

    /// A quantifier-free formula.
    pub fn matrix(&mut self, vars: &[Var]) -> Formula {
        self.atoms = 0;
        let saved = self.max_quantifiers;
        self.max_quantifiers = 0;
        self.quantifiers = 0;
        let mut scope = vars.to_vec();
        let f = self.node(&mut scope, 0);
        self.max_quantifiers = saved;
        f
    }

    fn node(&mut self, scope: &mut Vec<Var>, depth: usize) -> Formula {
        let r = self.rng.gen_range(0..10);
        if self.quantifiers < self.max_quantifiers && r < 5 {
            self.quantifiers += 1;
            let x = Var::new(&format!("x{}", self.binders));
            self.binders += 1;
            scope.push(x.clone());
            let body = self.node(scope, depth + 1);
            scope.pop();
            return if self.rng.gen_bool(0.5) { Formula::exists(x, body) } else { Formula::forall(x, body) };
        }
        if self.atoms + 2 > self.max_atoms || depth > 4 || r < 7 {
            return self.literal(scope);
        }
        let a = self.node(scope, depth + 1);
        let b = self.node(scope, depth + 1);
        match self.rng.gen_range(0..6) {
            0 | 1 => Formula::And(vec![a, b]),
            2 | 3 => Formula::Or(vec![a, b]),
            4 => Formula::imp(a, b),
            _ => Formula::iff(a, b),
        }
    }

    fn literal(&mut self, scope: &[Var]) -> Formula {
        self.atoms += 1;
        let a = Formula::Atom(self.atom(scope));
        if self.rng.gen_bool(0.25) {
            Formula::not(a)
        } else {
            a
        }
    }

    /// Prefers the innermost variable so quantifiers usually bind something.
    fn pick(&mut self, scope: &[Var]) -> Var {
        if scope.len() > PARAMS.len() && self.rng.gen_bool(0.5) {
            scope.last().unwrap().clone()
        } else {
            scope.choose(self.rng).unwrap().clone()
        }
    }

    pub fn atom(&mut self, scope: &[Var]) -> Atom {
        match self.theory.sort() {
            Sort::Order => {
                let a = self.order_term(scope, None);
                let b = self.order_term(scope, a.vars().into_iter().next());
                if self.rng.gen_bool(0.7) {
                    Atom::Less(a, b)
                } else {
                    Atom::Eq(a, b)
                }
            }
            Sort::Additive => {
                if self.theory.is_presburger() && self.rng.gen_bool(0.25) {
                    let m = self.rng.gen_range(2..=6);
                    let lhs = self.linear(scope);
                    let rhs = LinearTerm::constant(self.rng.gen_range(0..m));
                    return Atom::Cong { modulus: BigInt::from(m), lhs, rhs };
                }
                let a = Term::Linear(self.linear(scope));
                let b = Term::Linear(if self.rng.gen_bool(0.3) { LinearTerm::zero() } else { self.linear(scope) });
                if self.rng.gen_bool(0.65) {
                    Atom::Less(a, b)
                } else {
                    Atom::Eq(a, b)
                }
            }
            Sort::Multiplicative => {
                if self.theory.has_powers() && self.rng.gen_bool(0.3) {
                    let degree = BigInt::from(self.rng.gen_range(2..=4));
                    return Atom::Re { degree, arg: self.monomial(scope, false) };
                }
                let a = Term::Mono(self.monomial(scope, false));
                let b = Term::Mono(self.monomial(scope, true));
                if self.rng.gen_bool(0.6) {
                    Atom::Less(a, b)
                } else {
                    Atom::Eq(a, b)
                }
            }
        }
    }

    /// Avoids `avoid` so that atoms rarely compare a variable with itself.
    fn order_term(&mut self, scope: &[Var], avoid: Option<Var>) -> Term {
        let discrete = self.theory.is_discrete();
        let k = if discrete { self.rng.gen_range(0..=2) } else { 0 };
        let t = if self.theory == Theory::OrderN && self.rng.gen_bool(0.15) {
            OrderTerm::numeral(k)
        } else {
            let mut v = self.pick(scope);
            if Some(&v) == avoid.as_ref() {
                v = self.pick(scope);
            }
            OrderTerm::var(v).succ_by(k)
        };
        Term::Order(t)
    }

    fn linear(&mut self, scope: &[Var]) -> LinearTerm {
        let n = self.rng.gen_range(1..=2);
        let mut coeffs = Vec::new();
        for _ in 0..n {
            let c = *[-3, -2, -1, 1, 1, 2, 3].choose(self.rng).unwrap();
            coeffs.push((self.pick(scope), BigInt::from(c)));
        }
        let k = if self.theory.is_presburger() { self.rng.gen_range(-4..=4) } else { 0 };
        LinearTerm::from_parts(coeffs, BigInt::from(k))
    }

    /// A monomial without zero guards; `constant` allows the bare constants.
    fn monomial(&mut self, scope: &[Var], constant: bool) -> Monomial {
        let signed = self.theory.carrier() != Carrier::PositiveRationals;
        if constant && self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..4) {
                0 if signed => Monomial::zero(),
                1 if signed => Monomial::minus_one(),
                _ => Monomial::one(),
            };
        }
        let n = self.rng.gen_range(1..=2);
        let mut exps: Vec<(Var, BigInt)> = Vec::new();
        for _ in 0..n {
            let v = self.pick(scope);
            let e = *[-1, 1, 1, 2, 3].choose(self.rng).unwrap();
            match exps.iter_mut().find(|(w, _)| *w == v) {
                Some((_, k)) if &*k + e != BigInt::from(0) => *k += e,
                Some(_) => {}
                None => exps.push((v, BigInt::from(e))),
            }
        }
        let sign = if signed && self.rng.gen_bool(0.15) { Sign::Neg } else { Sign::Pos };
        Monomial::from_parts(sign, exps)
    }
}

/// A random element of the universe of `theory`.
pub fn random_value(rng: &mut ChaCha8Rng, theory: Theory) -> Value {
    let q = |p: i64, d: i64| Value::Rational(Rational::new(p, d).unwrap());
    match theory.carrier() {
        Carrier::Naturals => q(rng.gen_range(0..=8), 1),
        Carrier::Integers => q(rng.gen_range(-8..=8), 1),
        Carrier::PositiveRationals => {
            let mut r = Rational::one();
            for p in [2i64, 3, 5] {
                r = r * Rational::from_integer(p).pow(rng.gen_range(-2..=2));
            }
            Value::Rational(r)
        }
        Carrier::Rationals | Carrier::Reals => {
            if theory == Theory::MulR && rng.gen_bool(0.1) {
                let base = Radical::from_rational(&Rational::from_integer(*[2i64, 3, -2].choose(rng).unwrap()));
                let root = base.root(&BigInt::from(3)).unwrap();
                return Value::from_radical(root);
            }
            if theory.sort() == Sort::Multiplicative && rng.gen_bool(0.1) {
                return q(0, 1);
            }
            q(rng.gen_range(-8..=8), rng.gen_range(1..=4))
        }
    }
}

pub fn random_assignment<'a>(rng: &mut ChaCha8Rng, theory: Theory, vars: impl IntoIterator<Item = &'a Var>) -> Assignment {
    vars.into_iter().map(|v| (v.clone(), random_value(rng, theory))).collect()
}

/// The least `k ≥ 0` with `kⁿ = a`, by counting up.
pub fn int_root(a: u64, n: u32) -> Option<u64> {
    let mut k = 0u64;
    loop {
        match k.checked_pow(n) {
            Some(p) if p == a => return Some(k),
            Some(p) if p < a => k += 1,
            _ => return None,
        }
    }
}

/// `p/q` (in lowest terms, `q > 0`) is an n-th power in ℚ.
pub fn rational_is_power(p: i64, q: u64, n: u32) -> bool {
    (p >= 0 || n % 2 == 1) && int_root(p.unsigned_abs(), n).is_some() && int_root(q, n).is_some()
}

/// Least `x ≥ 0` with `x ≡ rᵢ (mod mᵢ)` for all `i`, by scanning one period.
pub fn crt_scan(pairs: &[(u64, u64)]) -> Option<u64> {
    let period: u64 = pairs.iter().map(|p| p.0).product();
    (0..period).find(|x| pairs.iter().all(|(m, r)| x % m == r % m))
}
