//! Ground truth: exact evaluation of quantifier-free formulas in each
//! structure, bounded witness search, constructive witness extraction and
//! the finite-range checks of the definitions of addition from `<` and `×`.

mod extract;
mod identity;
mod search;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::numeric::{is_nth_power, Radical, Rational};
use crate::syntax::{Atom, Carrier, Formula, LinearTerm, Monomial, OrderBase, OrderTerm, Sign, Term, Theory, Var};

pub use extract::{extract_witness, witness_block, ExtractError, Witness};
pub use identity::{check_hinman_identity, check_robinson_identity, hinman_defines_sum, robinson_defines_sum};
pub use search::{search_witness, Candidates};

/// A number of the universe: rationals everywhere, real radicals for the
/// witnesses of the multiplicative theory of the reals.
#[derive(Clone, Debug)]
pub enum Value {
    Rational(Rational),
    Radical(Radical),
}

impl Value {
    pub fn from_radical(r: Radical) -> Value {
        match r.to_rational() {
            Some(q) => Value::Rational(q),
            None => Value::Radical(r),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rational(q) => Some(q),
            Value::Radical(_) => None,
        }
    }

    pub fn to_radical(&self) -> Radical {
        match self {
            Value::Rational(q) => Radical::from_rational(q),
            Value::Radical(r) => r.clone(),
        }
    }

    pub fn signum(&self) -> i8 {
        match self {
            Value::Rational(q) => q.signum(),
            Value::Radical(r) => r.signum(),
        }
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Rational(q)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Rational(Rational::from(n))
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            _ => self.to_radical().cmp(&other.to_radical()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => write!(f, "{q}"),
            Value::Radical(r) => write!(f, "{r}"),
        }
    }
}

pub type Assignment = BTreeMap<Var, Value>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not assigned")]
    Unassigned(Var),
    #[error("{var} = {value} is outside the universe of {theory}")]
    OutsideUniverse { var: Var, value: String, theory: Theory },
    #[error("quantified formula given to quantifier-free evaluation")]
    Quantified,
    #[error("malformed assignment `{0}`")]
    BadAssignment(String),
}

/// Parses `x=1/2,y=-3`.
pub fn parse_assignment(text: &str) -> Result<Assignment, EvalError> {
    let mut a = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| EvalError::BadAssignment(part.to_string()))?;
        let q: Rational = v.trim().parse().map_err(|_| EvalError::BadAssignment(part.to_string()))?;
        a.insert(Var::new(k.trim()), Value::Rational(q));
    }
    Ok(a)
}

/// Whether `v` belongs to the universe of `theory`.
pub fn in_universe(v: &Value, theory: Theory) -> bool {
    let int = |v: &Value| v.as_rational().is_some_and(Rational::is_integer);
    match theory.carrier() {
        Carrier::Naturals => int(v) && v.signum() >= 0,
        Carrier::Integers => int(v),
        Carrier::Rationals => v.as_rational().is_some(),
        Carrier::PositiveRationals => v.as_rational().is_some() && v.signum() > 0,
        Carrier::Reals => true,
    }
}

/// Checks that `a` assigns every variable of `f` a value of the universe.
pub fn check_assignment(f: &Formula, theory: Theory, a: &Assignment) -> Result<(), EvalError> {
    for v in f.free_vars() {
        let value = a.get(&v).ok_or_else(|| EvalError::Unassigned(v.clone()))?;
        if !in_universe(value, theory) {
            return Err(EvalError::OutsideUniverse { var: v, value: value.to_string(), theory });
        }
    }
    Ok(())
}

fn lookup<'a>(a: &'a Assignment, v: &Var) -> Result<&'a Value, EvalError> {
    a.get(v).ok_or_else(|| EvalError::Unassigned(v.clone()))
}

fn rational_of<'a>(a: &'a Assignment, v: &Var) -> Result<&'a Rational, EvalError> {
    lookup(a, v)?.as_rational().ok_or_else(|| EvalError::OutsideUniverse {
        var: v.clone(),
        value: a[v].to_string(),
        theory: Theory::MulR,
    })
}

pub fn eval_order(t: &OrderTerm, a: &Assignment) -> Result<Rational, EvalError> {
    let base = match &t.base {
        OrderBase::Zero => Rational::zero(),
        OrderBase::Var(v) => rational_of(a, v)?.clone(),
    };
    Ok(&base + &Rational::from(t.succ as i64))
}

pub fn eval_linear(t: &LinearTerm, a: &Assignment) -> Result<Rational, EvalError> {
    let mut acc = Rational::from(t.constant_part().clone());
    for (v, c) in t.coeffs() {
        acc = &acc + &(&Rational::from(c.clone()) * rational_of(a, v)?);
    }
    Ok(acc)
}

/// A monomial with `0⁻¹ = 0`: any factor whose variable is 0, guards
/// included, makes the product 0.
pub fn eval_monomial(m: &Monomial, a: &Assignment) -> Result<Value, EvalError> {
    let sign = match m.sign() {
        Sign::Zero => return Ok(Value::from(0)),
        Sign::Pos => 1,
        Sign::Neg => -1,
    };
    let mut vals = Vec::with_capacity(m.exps().len());
    for (v, e) in m.exps() {
        let x = lookup(a, v)?;
        if x.signum() == 0 {
            return Ok(Value::from(0));
        }
        vals.push((x, e));
    }
    if vals.iter().all(|(x, _)| x.as_rational().is_some()) {
        let mut acc = Rational::from(sign as i64);
        for (x, e) in vals {
            let k = e.to_i64().expect("exponent out of range");
            acc = &acc * &x.as_rational().unwrap().pow(k);
        }
        return Ok(Value::Rational(acc));
    }
    let mut acc = Radical::from_rational(&Rational::from(sign as i64));
    for (x, e) in vals {
        acc = acc.mul(&x.to_radical().pow(e));
    }
    Ok(Value::from_radical(acc))
}

pub fn eval_term(t: &Term, a: &Assignment) -> Result<Value, EvalError> {
    Ok(match t {
        Term::Order(t) => Value::Rational(eval_order(t, a)?),
        Term::Linear(t) => Value::Rational(eval_linear(t, a)?),
        Term::Mono(m) => eval_monomial(m, a)?,
    })
}

/// `r` is an `n`-th power of the universe.
pub fn is_power(r: &Value, n: &BigInt) -> bool {
    let n = n.to_u32().expect("degree out of range");
    match r {
        Value::Rational(q) => is_nth_power(q, n),
        // In ℝ every positive number and, for odd n, every number is a power.
        Value::Radical(x) => x.signum() >= 0 || n % 2 == 1,
    }
}

pub fn eval_atom(atom: &Atom, a: &Assignment) -> Result<bool, EvalError> {
    Ok(match atom {
        Atom::Less(s, t) => eval_term(s, a)? < eval_term(t, a)?,
        Atom::Eq(s, t) => eval_term(s, a)? == eval_term(t, a)?,
        Atom::Cong { modulus, lhs, rhs } => {
            let d = &eval_linear(lhs, a)? - &eval_linear(rhs, a)?;
            d.to_integer().is_some_and(|d| d.mod_floor(modulus).is_zero())
        }
        Atom::Re { degree, arg } => is_power(&eval_monomial(arg, a)?, degree),
    })
}

/// Exact truth of a quantifier-free formula.
pub fn eval_qf(f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(atom) => eval_atom(atom, a)?,
        Formula::Not(g) => !eval_qf(g, a)?,
        Formula::And(v) => {
            for g in v {
                if !eval_qf(g, a)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(v) => {
            for g in v {
                if eval_qf(g, a)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Imp(p, q) => !eval_qf(p, a)? || eval_qf(q, a)?,
        Formula::Iff(p, q) => eval_qf(p, a)? == eval_qf(q, a)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::Quantified),
    })
}

/// Integer part of a nonnegative rational.
pub(crate) fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub(crate) fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}
