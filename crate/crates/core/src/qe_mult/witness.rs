//! Constructive witnesses for the two power axioms of ℚ⁺: n-th powers are
//! dense, and finitely many power classes can always be avoided.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::numeric::{factor_rational, fresh_prime, is_nth_power, rational_between_roots, NumericError, Rational};

pub type WitnessError = NumericError;

/// A positive `y` with `x < yⁿ < z`.
pub fn witness_m10(x: &Rational, z: &Rational, n: u32) -> Result<Rational, WitnessError> {
    let y = rational_between_roots(x, z, n)?;
    let p = y.pow(i64::from(n));
    assert!(x < &p && &p < z, "root bracketing returned {y} for {x} < y^{n} < {z}");
    Ok(y)
}

/// A positive `y` with `yⁿ·xⱼ` not an `mⱼ`-th power for every `j`: a prime
/// outside every factorization of the `xⱼ` contributes exponent `n`, which
/// no `mⱼ` divides.
pub fn witness_m11(xs: &[Rational], n: u32, ms: &[u32]) -> Result<Rational, WitnessError> {
    if n == 0 {
        return Err(NumericError::BadDegree(1));
    }
    for &m in ms {
        if m < 2 {
            return Err(NumericError::BadDegree(2));
        }
        if n % m == 0 {
            return Err(NumericError::DegreeDivides { m: BigInt::from(m), n: BigInt::from(n) });
        }
    }
    let mut avoid = BTreeSet::new();
    for x in xs {
        if !x.is_positive() {
            return Err(NumericError::NonPositive);
        }
        avoid.extend(factor_rational(x).primes().cloned());
    }
    let y = Rational::from(fresh_prime(&avoid));
    let yn = y.pow(i64::from(n));
    for (x, &m) in xs.iter().zip(ms) {
        assert!(!is_nth_power(&(&yn * x), m), "fresh prime {y} failed to avoid the {m}-th powers for {x}");
    }
    Ok(y)
}
