use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A variable name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderBase {
    Zero,
    Var(Var),
}

/// `s^succ(base)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderTerm {
    pub base: OrderBase,
    pub succ: u64,
}

impl OrderTerm {
    pub fn var(v: Var) -> Self {
        OrderTerm { base: OrderBase::Var(v), succ: 0 }
    }

    pub fn zero() -> Self {
        OrderTerm { base: OrderBase::Zero, succ: 0 }
    }

    pub fn numeral(k: u64) -> Self {
        OrderTerm { base: OrderBase::Zero, succ: k }
    }

    pub fn succ_by(&self, k: u64) -> Self {
        OrderTerm { base: self.base.clone(), succ: self.succ + k }
    }

    pub fn variable(&self) -> Option<&Var> {
        match &self.base {
            OrderBase::Var(v) => Some(v),
            OrderBase::Zero => None,
        }
    }

    pub fn substitute(&self, x: &Var, t: &OrderTerm) -> OrderTerm {
        match &self.base {
            OrderBase::Var(v) if v == x => t.succ_by(self.succ),
            _ => self.clone(),
        }
    }
}

/// `Σ cᵢ·vᵢ + constant` with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearTerm {
    coeffs: BTreeMap<Var, BigInt>,
    constant: BigInt,
}

impl LinearTerm {
    pub fn zero() -> Self {
        LinearTerm::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LinearTerm { coeffs: BTreeMap::new(), constant: c.into() }
    }

    pub fn var(v: Var) -> Self {
        LinearTerm { coeffs: [(v, BigInt::one())].into_iter().collect(), constant: BigInt::zero() }
    }

    pub fn from_parts(coeffs: impl IntoIterator<Item = (Var, BigInt)>, constant: BigInt) -> Self {
        let mut t = LinearTerm::constant(constant);
        for (v, c) in coeffs {
            t.add_coeff(&v, &c);
        }
        t
    }

    fn add_coeff(&mut self, v: &Var, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(v.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(v);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Var, BigInt> {
        &self.coeffs
    }

    pub fn constant_part(&self) -> &BigInt {
        &self.constant
    }

    pub fn coeff(&self, v: &Var) -> BigInt {
        self.coeffs.get(v).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.coeffs.keys()
    }

    pub fn add(&self, o: &LinearTerm) -> LinearTerm {
        let mut t = self.clone();
        for (v, c) in &o.coeffs {
            t.add_coeff(v, c);
        }
        t.constant += &o.constant;
        t
    }

    pub fn neg(&self) -> LinearTerm {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, o: &LinearTerm) -> LinearTerm {
        self.add(&o.neg())
    }

    pub fn add_constant(&self, c: &BigInt) -> LinearTerm {
        let mut t = self.clone();
        t.constant += c;
        t
    }

    pub fn scale(&self, k: &BigInt) -> LinearTerm {
        if k.is_zero() {
            return LinearTerm::zero();
        }
        LinearTerm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn without(&self, v: &Var) -> LinearTerm {
        let mut t = self.clone();
        t.coeffs.remove(v);
        t
    }

    pub fn substitute(&self, x: &Var, by: &LinearTerm) -> LinearTerm {
        match self.coeffs.get(x) {
            None => self.clone(),
            Some(c) => self.without(x).add(&by.scale(c)),
        }
    }

    /// Coefficients and constant reduced into `[0, n)`.
    pub fn reduce_mod(&self, n: &BigInt) -> LinearTerm {
        LinearTerm::from_parts(
            self.coeffs.iter().map(|(v, c)| (v.clone(), c.mod_floor(n))),
            self.constant.mod_floor(n),
        )
    }

    /// gcd of the variable coefficients (0 for constants).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

/// Sign marker of a monomial: the constants -1, 0, 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn times(self, o: Sign) -> Sign {
        match (self, o) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    pub fn pow(self, k: &BigInt) -> Sign {
        match self {
            Sign::Neg if k.is_even() => Sign::Pos,
            s => s,
        }
    }
}

/// `sign · ∏ vᵢ^eᵢ`.
///
/// An entry with exponent 0 is a zero guard: it records that the monomial is
/// 0 when that variable is 0 (as in `x·x⁻¹` under `0⁻¹ = 0`). Guards only
/// arise in theories whose universe contains 0; the positive fragment strips them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    sign: Sign,
    exps: BTreeMap<Var, BigInt>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { sign: Sign::Pos, exps: BTreeMap::new() }
    }

    pub fn minus_one() -> Self {
        Monomial { sign: Sign::Neg, exps: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Monomial { sign: Sign::Zero, exps: BTreeMap::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { sign: Sign::Pos, exps: [(v, BigInt::one())].into_iter().collect() }
    }

    pub fn from_parts(sign: Sign, exps: impl IntoIterator<Item = (Var, BigInt)>) -> Self {
        if sign == Sign::Zero {
            return Monomial::zero();
        }
        Monomial { sign, exps: exps.into_iter().collect() }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn exps(&self) -> &BTreeMap<Var, BigInt> {
        &self.exps
    }

    /// Exponent of `v`, 0 when absent or a guard.
    pub fn exponent(&self, v: &Var) -> BigInt {
        self.exps.get(v).cloned().unwrap_or_default()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.exps.keys()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn has_guards(&self) -> bool {
        self.exps.values().any(|e| e.is_zero())
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let sign = self.sign.times(o.sign);
        if sign == Sign::Zero {
            return Monomial::zero();
        }
        let mut exps = self.exps.clone();
        for (v, e) in &o.exps {
            *exps.entry(v.clone()).or_insert_with(BigInt::zero) += e;
        }
        Monomial { sign, exps }
    }

    /// Inverse under `0⁻¹ = 0`.
    pub fn inv(&self) -> Monomial {
        Monomial { sign: self.sign, exps: self.exps.iter().map(|(v, e)| (v.clone(), -e)).collect() }
    }

    /// `self^k`; `t^0` is the empty product 1.
    pub fn pow(&self, k: &BigInt) -> Monomial {
        if k.is_zero() {
            return Monomial::one();
        }
        if self.sign == Sign::Zero {
            return Monomial::zero();
        }
        Monomial { sign: self.sign.pow(k), exps: self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect() }
    }

    /// `self^k` where exponent 0 keeps zero guards, i.e. `self·self⁻¹`.
    fn pow_guarded(&self, k: &BigInt) -> Monomial {
        if k.is_zero() {
            self.mul(&self.inv())
        } else {
            self.pow(k)
        }
    }

    pub fn without(&self, v: &Var) -> Monomial {
        let mut m = self.clone();
        m.exps.remove(v);
        m
    }

    pub fn substitute(&self, x: &Var, by: &Monomial) -> Monomial {
        match self.exps.get(x) {
            None => self.clone(),
            Some(e) => self.without(x).mul(&by.pow_guarded(e)),
        }
    }

    pub fn strip_guards(&self) -> Monomial {
        Monomial { sign: self.sign, exps: self.exps.iter().filter(|(_, e)| !e.is_zero()).map(|(v, e)| (v.clone(), e.clone())).collect() }
    }

    pub fn with_sign(&self, sign: Sign) -> Monomial {
        if sign == Sign::Zero {
            return Monomial::zero();
        }
        Monomial { sign, exps: self.exps.clone() }
    }

    /// Exponents reduced into `[0, n)`; entries that vanish are kept as guards.
    pub fn reduce_mod(&self, n: &BigInt) -> Monomial {
        Monomial { sign: self.sign, exps: self.exps.iter().map(|(v, e)| (v.clone(), e.mod_floor(n))).collect() }
    }
}

/// A term of one of the three languages.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Order(OrderTerm),
    Linear(LinearTerm),
    Mono(Monomial),
}

impl Term {
    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            Term::Order(t) => t.variable().cloned().into_iter().collect(),
            Term::Linear(t) => t.vars().cloned().collect(),
            Term::Mono(t) => t.vars().cloned().collect(),
        }
    }

    pub fn mentions(&self, x: &Var) -> bool {
        match self {
            Term::Order(t) => t.variable() == Some(x),
            Term::Linear(t) => t.coeffs().contains_key(x),
            Term::Mono(t) => t.exps().contains_key(x),
        }
    }

    /// Substitutes a term of the same language; mismatched languages are a bug.
    pub fn substitute(&self, x: &Var, by: &Term) -> Term {
        match (self, by) {
            (Term::Order(t), Term::Order(u)) => Term::Order(t.substitute(x, u)),
            (Term::Linear(t), Term::Linear(u)) => Term::Linear(t.substitute(x, u)),
            (Term::Mono(t), Term::Mono(u)) => Term::Mono(t.substitute(x, u)),
            _ => panic!("substitution across term languages"),
        }
    }

    /// A variable as a term of the same language as `self`.
    pub fn var_like(&self, v: Var) -> Term {
        match self {
            Term::Order(_) => Term::Order(OrderTerm::var(v)),
            Term::Linear(_) => Term::Linear(LinearTerm::var(v)),
            Term::Mono(_) => Term::Mono(Monomial::var(v)),
        }
    }
}
