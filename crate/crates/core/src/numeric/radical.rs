use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{nth_root_exact, Rational};

/// A real number `sign · ∏ bᵢ^rᵢ` with positive rational bases and rational
/// exponents. These numbers are closed under products, inverses and roots of
/// positive elements, which is all the multiplicative theory of the reals needs.
#[derive(Clone)]
pub struct Radical {
    sign: i8,
    factors: BTreeMap<Rational, BigRational>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical { sign: 0, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Radical { sign: 1, factors: BTreeMap::new() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let sign = q.signum();
        let mut factors = BTreeMap::new();
        let a = q.abs();
        if sign != 0 && a != Rational::one() {
            factors.insert(a, BigRational::one());
        }
        Radical { sign, factors }
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.sign < 0 {
            r.sign = 1;
        }
        r
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        if self.sign == 0 || other.sign == 0 {
            return Radical::zero();
        }
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            let slot = factors.entry(b.clone()).or_insert_with(BigRational::zero);
            *slot += e;
            if slot.is_zero() {
                factors.remove(b);
            }
        }
        Radical { sign: self.sign * other.sign, factors }
    }

    /// Inverse with `0⁻¹ = 0`.
    pub fn inv(&self) -> Radical {
        Radical {
            sign: self.sign,
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: &BigInt) -> Radical {
        if k.is_zero() {
            return Radical::one();
        }
        if self.sign == 0 {
            return Radical::zero();
        }
        let kr = BigRational::from_integer(k.clone());
        let sign = if self.sign < 0 && k.is_odd() { -1 } else { 1 };
        Radical { sign, factors: self.factors.iter().map(|(b, e)| (b.clone(), e * &kr)).collect() }
    }

    /// Real n-th root; negative numbers only have odd roots.
    pub fn root(&self, n: &BigInt) -> Option<Radical> {
        if !n.is_positive() || (self.sign < 0 && n.is_even()) {
            return None;
        }
        let nr = BigRational::from_integer(n.clone());
        Some(Radical { sign: self.sign, factors: self.factors.iter().map(|(b, e)| (b.clone(), e / &nr)).collect() })
    }

    fn common_denominator(&self) -> BigInt {
        self.factors.values().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// `|self|^d` as a rational, for `d` a multiple of every exponent denominator.
    fn magnitude_power(&self, d: &BigInt) -> Rational {
        let mut acc = Rational::one();
        for (b, e) in &self.factors {
            let k = (e * BigRational::from_integer(d.clone())).to_integer();
            let k = k.to_i64().expect("exponent out of range");
            acc = &acc * &b.pow(k);
        }
        acc
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.sign == 0 {
            return Some(Rational::zero());
        }
        let d = self.common_denominator();
        let p = self.magnitude_power(&d);
        let r = nth_root_exact(&p, d.to_u32().expect("root degree out of range"))?;
        Some(if self.sign < 0 { -r } else { r })
    }

    fn cmp_magnitude(&self, other: &Radical) -> Ordering {
        let q = self.abs().mul(&other.abs().inv());
        let d = q.common_denominator();
        q.magnitude_power(&d).cmp(&Rational::one())
    }
}

impl From<Rational> for Radical {
    fn from(q: Rational) -> Self {
        Radical::from_rational(&q)
    }
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Radical {}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.sign {
            0 => Ordering::Equal,
            1 => self.cmp_magnitude(other),
            _ => other.cmp_magnitude(self),
        }
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut first = true;
        for (b, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if b.is_integer() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({b})")?;
            }
            if e.is_integer() {
                write!(f, "^{}", e.numer())?;
            } else {
                write!(f, "^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
