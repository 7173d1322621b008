//! Witnesses built from the elimination arguments themselves: midpoints in
//! dense orders, successors of the largest lower bound in discrete ones,
//! CRT representatives for Presburger cubes, and over ℚ⁺ the composition
//! `y = δ^{M·n}·γⁿ·β⁻¹` of a density root `δ` and an avoiding prime `γ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::search::exists_block;
use super::{ceil, eval_monomial, eval_qf, eval_term, floor, Assignment, EvalError, Value};
use crate::numeric::{bezout, crt_solve, nth_root_exact, Radical, Rational};
use crate::qe_additive::nonneg;
use crate::qe_mult::{fold_signed, reduce_positive, scale_positive, witness_m10, witness_m11};
use crate::syntax::{
    engine_for, matrix_cubes, qe_driver, Atom, Cube, Formula, Literal, Monomial, Term, Theory, Var,
};

/// Values for bound variables. The flag is set only after the matrix has
/// been re-evaluated to ⊤ under the extended assignment.
#[derive(Debug, Clone)]
pub struct Witness {
    pub values: Assignment,
    verified: bool,
}

impl Witness {
    /// Checks `matrix` under `a` extended by `values`.
    pub fn verify(matrix: &Formula, a: &Assignment, values: Assignment) -> Option<Witness> {
        let mut full = a.clone();
        full.extend(values.iter().map(|(k, v)| (k.clone(), v.clone())));
        eval_qf(matrix, &full).ok()?.then_some(Witness { values, verified: true })
    }

    pub fn verified(&self) -> bool {
        self.verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("the engine decides the cube unsatisfiable under this assignment")]
    Unsatisfiable,
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

enum Kind {
    Less,
    Eq,
    Cong(BigInt),
}

/// A literal as `coef·x + r ⋈ 0`.
fn linear_form(l: &Literal, x: &Var, a0: &Assignment) -> Result<(Kind, BigInt, Rational), ExtractError> {
    let coef = |t: &Term| match t {
        Term::Order(t) => BigInt::from(u8::from(t.variable() == Some(x))),
        Term::Linear(t) => t.coeff(x),
        Term::Mono(_) => panic!("monomial in an additive cube"),
    };
    let val = |t: &Term| -> Result<Rational, ExtractError> {
        match eval_term(t, a0)? {
            Value::Rational(q) => Ok(q),
            Value::Radical(_) => unreachable!(),
        }
    };
    if l.negated {
        return Err(ExtractError::Invariant(format!("negated literal {} in an additive cube", l.atom)));
    }
    Ok(match &l.atom {
        Atom::Less(s, t) => (Kind::Less, coef(s) - coef(t), &val(s)? - &val(t)?),
        Atom::Eq(s, t) => (Kind::Eq, coef(s) - coef(t), &val(s)? - &val(t)?),
        Atom::Cong { modulus, lhs, rhs } => {
            let (s, t) = (Term::Linear(lhs.clone()), Term::Linear(rhs.clone()));
            (Kind::Cong(modulus.clone()), coef(&s) - coef(&t), &val(&s)? - &val(&t)?)
        }
        a => panic!("foreign atom {a} in an additive cube"),
    })
}

fn at_zero(x: &Var, a: &Assignment) -> Assignment {
    let mut a0 = a.clone();
    a0.insert(x.clone(), Value::from(0));
    a0
}

fn dense(c: &Cube, a: &Assignment) -> Result<Rational, ExtractError> {
    let a0 = at_zero(&c.var, a);
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for l in &c.literals {
        let (kind, coef, r) = linear_form(l, &c.var, &a0)?;
        if coef.is_zero() {
            continue;
        }
        let b = &(-r) / &Rational::from(coef.clone());
        match kind {
            Kind::Eq => return Ok(b),
            Kind::Less if coef.is_positive() => hi = Some(hi.map_or(b.clone(), |h| h.min(b))),
            Kind::Less => lo = Some(lo.map_or(b.clone(), |h| h.max(b))),
            Kind::Cong(_) => return Err(ExtractError::Invariant("congruence in a dense cube".into())),
        }
    }
    Ok(match (lo, hi) {
        (Some(l), Some(h)) => l.midpoint(&h),
        (Some(l), None) => &l + &Rational::one(),
        (None, Some(h)) => &h - &Rational::one(),
        (None, None) => Rational::zero(),
    })
}

fn integer(q: &Rational) -> Result<BigInt, ExtractError> {
    q.to_integer().ok_or_else(|| ExtractError::Invariant(format!("non-integer value {q} in a discrete cube")))
}

fn discrete(c: &Cube, a: &Assignment, naturals: bool) -> Result<Rational, ExtractError> {
    let a0 = at_zero(&c.var, a);
    let (mut lo, mut hi): (Option<BigInt>, Option<BigInt>) = (naturals.then(BigInt::zero), None);
    let mut classes = Vec::new();
    for l in &c.literals {
        let (kind, coef, r) = linear_form(l, &c.var, &a0)?;
        if coef.is_zero() {
            continue;
        }
        let b = &(-r.clone()) / &Rational::from(coef.clone());
        match kind {
            Kind::Eq => return Ok(Rational::from(integer(&b)?)),
            Kind::Less if coef.is_positive() => {
                let h: BigInt = ceil(&b) - 1;
                hi = Some(hi.map_or(h.clone(), |v| v.min(h)));
            }
            Kind::Less => {
                let l: BigInt = floor(&b) + 1;
                lo = Some(lo.map_or(l.clone(), |v| v.max(l)));
            }
            Kind::Cong(n) => {
                // coef·x ≡ −r (mod n)
                let (g, s, _) = bezout(&coef.mod_floor(&n), &n).map_err(|e| ExtractError::Invariant(e.to_string()))?;
                let rhs = -integer(&r)?;
                if !rhs.is_multiple_of(&g) {
                    return Err(ExtractError::Invariant(format!("{} has no solution", l.atom)));
                }
                let m = &n / &g;
                classes.push((m.clone(), (rhs / &g * s).mod_floor(&m)));
            }
        }
    }
    let (modulus, r0) = if classes.is_empty() {
        (BigInt::one(), BigInt::zero())
    } else {
        let r0 = crt_solve(&classes).ok_or_else(|| ExtractError::Invariant("incompatible congruences".into()))?;
        (classes.iter().fold(BigInt::one(), |acc, (m, _)| acc.lcm(m)), r0)
    };
    let x = match (&lo, &hi) {
        (Some(l), _) => l + (&r0 - l).mod_floor(&modulus),
        (None, Some(h)) => h - (h - &r0).mod_floor(&modulus),
        (None, None) => r0,
    };
    Ok(Rational::from(x))
}

fn rational(v: Value) -> Result<Rational, ExtractError> {
    match v {
        Value::Rational(q) => Ok(q),
        Value::Radical(r) => Err(ExtractError::Invariant(format!("irrational value {r} over the rationals"))),
    }
}

fn side_holds(side: &[Formula], a: &Assignment) -> Result<bool, ExtractError> {
    for f in side {
        if !eval_qf(f, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn small(n: &BigInt) -> Result<u32, ExtractError> {
    n.to_u32().ok_or_else(|| ExtractError::Invariant(format!("degree {n} out of range")))
}

/// A positive rational witness for a cube over ⟨ℚ⁺;<,×,Re_n⟩.
fn positive_rational(c: &Cube, a: &Assignment) -> Result<Rational, ExtractError> {
    let p = scale_positive(c, true);
    if !side_holds(&p.side, a)? {
        return Err(ExtractError::Unsatisfiable);
    }
    let alpha = small(&p.alpha)?;
    let val = |m: &Monomial| -> Result<Rational, ExtractError> { rational(eval_monomial(m, a)?) };
    let y = if let Some(e) = p.equal.first() {
        val(e)?
    } else {
        let r = reduce_positive(p);
        let (n, beta) = r.merged.clone().unwrap_or((BigInt::one(), Monomial::one()));
        let beta = val(&beta)?;
        let mut xs = Vec::new();
        let mut ms = Vec::new();
        for (m, s) in &r.cube.not_re {
            if !n.is_multiple_of(m) {
                xs.push(&val(s)? / &beta);
                ms.push(small(m)?);
            }
        }
        let nn = small(&n)?;
        let gamma = if xs.is_empty() { Rational::one() } else { witness_m11(&xs, nn, &ms).map_err(|e| ExtractError::Invariant(e.to_string()))? };
        let big_m = ms.iter().fold(1u32, |acc, &m| acc.lcm(&m));
        let base = &gamma.pow(i64::from(nn)) / &beta;
        let lo = r.cube.lower.iter().map(&val).collect::<Result<Vec<_>, _>>()?.into_iter().max();
        let hi = r.cube.upper.iter().map(&val).collect::<Result<Vec<_>, _>>()?.into_iter().min();
        let two = Rational::from(2);
        let bounds = match (lo, hi) {
            (Some(l), Some(h)) => Some((&l / &base, &h / &base)),
            (Some(l), None) => Some((&l / &base, &(&l / &base) * &two)),
            (None, Some(h)) => Some((&(&h / &base) / &two, &h / &base)),
            (None, None) => None,
        };
        let delta = match bounds {
            Some((l, h)) => witness_m10(&l, &h, big_m * nn).map_err(|e| ExtractError::Invariant(e.to_string()))?,
            None => Rational::one(),
        };
        &delta.pow(i64::from(big_m * nn)) * &base
    };
    nth_root_exact(&y, alpha).ok_or_else(|| ExtractError::Invariant(format!("{y} is not a {alpha}-th power")))
}

/// A positive real witness for a cube over ⟨ℝ⁺;<,×⟩, using geometric means.
fn positive_real(c: &Cube, a: &Assignment) -> Result<Radical, ExtractError> {
    let p = scale_positive(c, false);
    if !side_holds(&p.side, a)? {
        return Err(ExtractError::Unsatisfiable);
    }
    let val = |m: &Monomial| -> Result<Radical, ExtractError> { Ok(eval_monomial(m, a)?.to_radical()) };
    let two = Radical::from_rational(&Rational::from(2));
    let y = if let Some(e) = p.equal.first() {
        val(e)?
    } else {
        let lo = p.lower.iter().map(&val).collect::<Result<Vec<_>, _>>()?.into_iter().max();
        let hi = p.upper.iter().map(&val).collect::<Result<Vec<_>, _>>()?.into_iter().min();
        match (lo, hi) {
            (Some(l), Some(h)) => l.mul(&h).root(&BigInt::from(2)).expect("positive"),
            (Some(l), None) => l.mul(&two),
            (None, Some(h)) => h.mul(&two.inv()),
            (None, None) => Radical::one(),
        }
    };
    y.root(&p.alpha).ok_or_else(|| ExtractError::Invariant(format!("{y} has no real root of degree {}", p.alpha)))
}

/// Over full ℚ or ℝ: fixes the signs of the parameters from `a`, tries
/// `x > 0`, `x < 0` and `x = 0`, and solves the positive cone cube.
fn signed(c: &Cube, theory: Theory, a: &Assignment) -> Result<Value, ExtractError> {
    let x = &c.var;
    let mut params = std::collections::BTreeSet::new();
    for l in &c.literals {
        params.extend(l.atom.vars());
    }
    params.remove(x);
    let mut abs = a.clone();
    let mut lits: Vec<Literal> = c.literals.clone();
    for v in &params {
        let value = super::lookup(a, v)?.clone();
        let by = match value.signum() {
            0 => Some(Monomial::zero()),
            -1 => Some(Monomial::minus_one().mul(&Monomial::var(v.clone()))),
            _ => None,
        };
        if let Some(m) = by {
            lits = lits.iter().map(|l| Literal { atom: l.atom.substitute(v, &Term::Mono(m.clone())), negated: l.negated }).collect();
        }
        abs.insert(v.clone(), Value::from_radical(value.to_radical().abs()));
    }
    let mut at_zero = a.clone();
    at_zero.insert(x.clone(), Value::from(0));
    'branch: for negative in [false, true] {
        let mut cube = Vec::new();
        for l in &lits {
            let atom = if negative { l.atom.substitute(x, &Term::Mono(Monomial::minus_one().mul(&Monomial::var(x.clone())))) } else { l.atom.clone() };
            match fold_signed(&Literal { atom, negated: l.negated }) {
                Err(()) => continue 'branch,
                Ok(None) => {}
                Ok(Some(p)) if p.atom.mentions(x) => cube.push(p),
                Ok(Some(p)) => {
                    if !eval_qf(&p.to_formula(), &abs)? {
                        continue 'branch;
                    }
                }
            }
        }
        let cube = Cube::new(x.clone(), cube);
        if !cube.literals.is_empty() && !eval_qf(&engine_positive(theory)(&cube), &abs)? {
            continue;
        }
        let y = match theory {
            Theory::MulR => Value::from_radical(positive_real(&cube, &abs)?),
            _ => Value::Rational(positive_rational(&cube, &abs)?),
        };
        return Ok(if negative { Value::from_radical(y.to_radical().neg()) } else { y });
    }
    if eval_qf(&c.to_formula(), &at_zero)? {
        return Ok(Value::from(0));
    }
    Err(ExtractError::Invariant(format!("no sign case of {} is satisfiable", c.to_formula())))
}

fn engine_positive(theory: Theory) -> fn(&Cube) -> Formula {
    if theory == Theory::MulR {
        crate::qe_mult::eliminate_mul_group
    } else {
        crate::qe_mult::eliminate_mul_q_plus
    }
}

fn construct(c: &Cube, theory: Theory, a: &Assignment) -> Result<Value, ExtractError> {
    Ok(match theory {
        Theory::DloQ | Theory::DloR | Theory::OagQ | Theory::OagR => Value::Rational(dense(c, a)?),
        Theory::OrderZ | Theory::PresburgerZ => Value::Rational(discrete(c, a, false)?),
        Theory::OrderN | Theory::PresburgerN => Value::Rational(discrete(c, a, true)?),
        Theory::MulQPos => Value::Rational(positive_rational(c, a)?),
        Theory::MulQ | Theory::MulR => signed(c, theory, a)?,
    })
}

/// A verified value for the variable of `c`, constructed rather than
/// searched. The engine must decide `c` satisfiable under `a`.
pub fn extract_witness(c: &Cube, theory: Theory, a: &Assignment) -> Result<Witness, ExtractError> {
    let mut c = c.clone();
    if theory == Theory::PresburgerN {
        if let Formula::Atom(g) = nonneg(&c.var) {
            c.literals.push(Literal::pos(g));
        }
    }
    let (engine, _) = engine_for(theory);
    let value = if c.literals.is_empty() {
        Value::from(i64::from(theory == Theory::MulQPos))
    } else {
        if !eval_qf(&engine(&c), a)? {
            return Err(ExtractError::Unsatisfiable);
        }
        construct(&c, theory, a)?
    };
    let shown = value.to_string();
    let values: Assignment = [(c.var.clone(), value)].into_iter().collect();
    Witness::verify(&c.to_formula(), a, values)
        .ok_or_else(|| ExtractError::Invariant(format!("{} = {shown} does not satisfy {}", c.var, c.to_formula())))
}

/// Values for the whole leading `∃` block of `f`, one variable at a time:
/// the rest of the block is eliminated, and the variable is extracted from
/// a cube that the engine decides satisfiable. `None` when the block is
/// unsatisfiable under `a`.
pub fn witness_block(f: &Formula, theory: Theory, a: &Assignment) -> Result<Option<Witness>, ExtractError> {
    let (vars, matrix) = exists_block(f);
    if !matrix.is_quantifier_free() {
        return Err(EvalError::Quantified.into());
    }
    let mut ext = a.clone();
    for (i, x) in vars.iter().enumerate() {
        let inner = vars[i + 1..].iter().rev().fold(matrix.clone(), |g, v| Formula::exists(v.clone(), g));
        let (psi, _) = qe_driver(&inner, theory);
        let mut found = None;
        for (free, cube) in matrix_cubes(x, &psi, theory) {
            if !side_holds(&free.iter().map(Literal::to_formula).collect::<Vec<_>>(), &ext)? {
                continue;
            }
            match extract_witness(&cube, theory, &ext) {
                Ok(w) => {
                    found = Some(w.values[x].clone());
                    break;
                }
                Err(ExtractError::Unsatisfiable) => continue,
                Err(e) => return Err(e),
            }
        }
        match found {
            Some(v) => {
                ext.insert(x.clone(), v);
            }
            None if i == 0 => return Ok(None),
            None => return Err(ExtractError::Invariant(format!("no cube of {psi} is satisfiable although the block above it is"))),
        }
    }
    let values = vars.iter().map(|v| (v.clone(), ext[v].clone())).collect();
    Witness::verify(matrix, a, values)
        .map(Some)
        .ok_or_else(|| ExtractError::Invariant(format!("extracted block values do not satisfy {matrix}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::parse_assignment;
    use crate::syntax::parse_formula;

    fn block(text: &str, theory: Theory, a: &str) -> Option<String> {
        let f = parse_formula(text, theory).unwrap();
        let w = witness_block(&f, theory, &parse_assignment(a).unwrap()).unwrap()?;
        assert!(w.verified());
        Some(w.values.values().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(block("exists x. y < x /\\ x < z", Theory::DloQ, "y=0,z=1").as_deref(), Some("1/2"));
        assert_eq!(block("exists x. x == 1 mod 4 /\\ x == 3 mod 6", Theory::PresburgerZ, "").as_deref(), Some("9"));
        assert_eq!(block("exists x. x == 1 mod 4 /\\ x == 2 mod 6", Theory::PresburgerZ, ""), None);
        let w = block("exists x. pow(2, x * u) /\\ ~pow(2, x * v)", Theory::MulQPos, "u=2,v=3").unwrap();
        let x: Rational = w.parse().unwrap();
        assert!(crate::numeric::is_nth_power(&(&x * &Rational::from(2)), 2));
        assert!(!crate::numeric::is_nth_power(&(&x * &Rational::from(3)), 2));
        assert_eq!(block("exists x. 0 < x /\\ x < s(s(0))", Theory::OrderN, "").as_deref(), Some("1"));
        assert_eq!(block("exists x. y < x /\\ x < z", Theory::OrderZ, "y=3,z=5").as_deref(), Some("4"));
        assert_eq!(block("exists x. y < x /\\ x < z", Theory::OrderZ, "y=3,z=4"), None);
        assert_eq!(block("exists x. y < 3*x /\\ 2*x < z", Theory::OagQ, "y=1,z=1").as_deref(), Some("5/12"));
    }

    #[test]
    fn multiplicative_extraction() {
        assert_eq!(block("exists x. x * x = y", Theory::MulR, "y=2").as_deref(), Some("2^(1/2)"));
        assert_eq!(block("exists x. x * x * x = y", Theory::MulR, "y=-2").as_deref(), Some("-2^(1/3)"));
        assert_eq!(block("exists x. x * x = y", Theory::MulQ, "y=2"), None);
        assert_eq!(block("exists x. x * x * x = y", Theory::MulQ, "y=-8/27").as_deref(), Some("-2/3"));
        assert!(block("exists x. ~pow(2, x)", Theory::MulQPos, "").is_some());
        assert!(block("exists x. y < x * x /\\ x * x < z /\\ ~pow(3, x)", Theory::MulQ, "y=2,z=3").is_some());
        assert!(block("exists x. x < y /\\ pow(2, x)", Theory::MulQ, "y=-5").is_none());
        assert!(block("exists x. x < y /\\ pow(3, x)", Theory::MulQ, "y=-5").is_some());
    }

    #[test]
    fn blocks() {
        assert_eq!(block("exists x. exists y. (x < y /\\ y < z)", Theory::DloQ, "z=0").as_deref(), Some("-1,-1/2"));
        let w = block("exists x. exists y. (x = 2*y + 1 /\\ x == 1 mod 3)", Theory::PresburgerN, "").unwrap();
        assert!(!w.contains('-'), "{w}");
    }
}
