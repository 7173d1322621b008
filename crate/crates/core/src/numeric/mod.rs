//! Exact arithmetic and the number-theoretic kernels the engines lean on:
//! Bézout, generalized CRT, factorization, n-th power tests, and root bracketing.

mod enumerate;
mod factor;
mod radical;
mod rational;
mod roots;

pub use enumerate::enumerate_rationals;
pub use factor::{factor_integer, factor_rational, fresh_prime, primes_up_to, FactoredRational};
pub use radical::Radical;
pub use rational::Rational;
pub use roots::{is_nth_power, nth_root_exact, rational_between_roots};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("bezout(0, 0) is undefined")]
    BezoutZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not a rational literal: {0}")]
    BadLiteral(String),
    #[error("empty interval: need {lo} < {hi}")]
    EmptyInterval { lo: Rational, hi: Rational },
    #[error("root bracketing needs positive endpoints")]
    NonPositive,
    #[error("degree {m} divides {n}")]
    DegreeDivides { m: BigInt, n: BigInt },
    #[error("degree must be at least {0}")]
    BadDegree(u32),
}

/// Returns `(d, x, y)` with `d = gcd(a, b) > 0` and `a·x + b·y = d`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt), NumericError> {
    if a.is_zero() && b.is_zero() {
        return Err(NumericError::BezoutZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Coefficients `c` with `Σ cᵢ·aᵢ = gcd(a)`; the list must contain a nonzero entry.
pub fn bezout_many(a: &[BigInt]) -> Result<(BigInt, Vec<BigInt>), NumericError> {
    let mut iter = a.iter();
    let first = iter.next().ok_or(NumericError::BezoutZero)?;
    let mut g = first.clone();
    let mut coeffs = vec![BigInt::one()];
    for ai in iter {
        if g.is_zero() && ai.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        let (d, u, v) = bezout(&g, ai)?;
        for c in coeffs.iter_mut() {
            *c *= &u;
        }
        coeffs.push(v);
        g = d;
    }
    if g.is_zero() {
        return Err(NumericError::BezoutZero);
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    Ok((g, coeffs))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Simultaneous congruences with arbitrary moduli `≥ 1`. The answer, when it
/// exists, is the representative in `[0, lcm)`.
pub fn crt_solve(pairs: &[(BigInt, BigInt)]) -> Option<BigInt> {
    let mut iter = pairs.iter();
    let (n0, t0) = iter.next()?;
    let mut n = n0.clone();
    let mut t = t0.mod_floor(&n);
    for (ni, ti) in iter {
        let (d, a, _) = bezout(&n, ni).ok()?;
        let diff = ti - &t;
        if !diff.is_multiple_of(&d) {
            return None;
        }
        // t + n·a·(diff/d) solves both.
        let m = &n / &d * ni;
        t = (&t + &n * &a * (&diff / &d)).mod_floor(&m);
        n = m;
    }
    Some(t)
}
