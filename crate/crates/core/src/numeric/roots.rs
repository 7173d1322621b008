use num_traits::Signed;

use super::{NumericError, Rational};

/// The rational `y` with `yⁿ = q`, if there is one (`n ≥ 1`). For even `n`
/// and positive `q` the positive root is returned.
pub fn nth_root_exact(q: &Rational, n: u32) -> Option<Rational> {
    assert!(n >= 1, "degree must be positive");
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && n % 2 == 0 {
        return None;
    }
    let p = q.numer().abs();
    let d = q.denom();
    let rp = p.nth_root(n);
    if rp.pow(n) != p {
        return None;
    }
    let rd = d.nth_root(n);
    if &rd.pow(n) != d {
        return None;
    }
    let rp = if q.is_negative() { -rp } else { rp };
    Some(Rational::new(rp, rd).expect("positive denominator"))
}

/// Whether `q` is an n-th power of a rational. Zero is; a negative number
/// is exactly when `n` is odd and `-q` is.
pub fn is_nth_power(q: &Rational, n: u32) -> bool {
    nth_root_exact(q, n).is_some()
}

/// A positive rational `y` with `x < yⁿ < z`, found by bisection on dyadic
/// points between `0` and `max(1, z)`.
pub fn rational_between_roots(x: &Rational, z: &Rational, n: u32) -> Result<Rational, NumericError> {
    if n == 0 {
        return Err(NumericError::BadDegree(1));
    }
    if !x.is_positive() || !z.is_positive() {
        return Err(NumericError::NonPositive);
    }
    if x >= z {
        return Err(NumericError::EmptyInterval { lo: x.clone(), hi: z.clone() });
    }
    let k = i64::from(n);
    // lo^n <= x and hi^n >= z throughout.
    let mut lo = Rational::zero();
    let mut hi = if z > &Rational::one() { z.clone() } else { Rational::one() };
    loop {
        let mid = lo.midpoint(&hi);
        let m = mid.pow(k);
        if &m <= x {
            lo = mid;
        } else if &m >= z {
            hi = mid;
        } else {
            debug_assert!(x < &m && &m < z);
            return Ok(mid);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn nth_power_examples() {
        assert!(is_nth_power(&q("4/9"), 2));
        assert_eq!(nth_root_exact(&q("4/9"), 2), Some(q("2/3")));
        assert!(!is_nth_power(&q("2"), 2));
        assert!(is_nth_power(&q("-8"), 3));
        assert_eq!(nth_root_exact(&q("-8"), 3), Some(q("-2")));
        assert!(is_nth_power(&q("0"), 5));
        assert!(!is_nth_power(&q("-4"), 2));
        assert!(!is_nth_power(&q("8/3"), 3));
    }

    #[test]
    fn between_roots_examples() {
        assert_eq!(rational_between_roots(&q("2"), &q("3"), 2).unwrap(), q("3/2"));
        let y = rational_between_roots(&q("4"), &q("5"), 1).unwrap();
        assert!(q("4") < y && y < q("5"));
        let y = rational_between_roots(&q("1/4"), &q("1/2"), 3).unwrap();
        let c = y.pow(3);
        assert!(q("1/4") < c && c < q("1/2"));
        assert_eq!(rational_between_roots(&q("1/2"), &q("2"), 1).unwrap(), q("1"));
        assert!(rational_between_roots(&q("3"), &q("3"), 2).is_err());
        assert!(rational_between_roots(&q("0"), &q("3"), 2).is_err());
    }

    proptest! {
        #[test]
        fn between_roots_postcondition(a in 1i64..400, b in 1i64..60, c in 1i64..400, d in 1i64..60, n in 1u32..7) {
            let x = Rational::new(a, b).unwrap();
            let z = Rational::new(c, d).unwrap();
            prop_assume!(x != z);
            let (x, z) = if x < z { (x, z) } else { (z, x) };
            let y = rational_between_roots(&x, &z, n).unwrap();
            let p = y.pow(i64::from(n));
            prop_assert!(y.is_positive() && x < p && p < z);
        }
    }
}
