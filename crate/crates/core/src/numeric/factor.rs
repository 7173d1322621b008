use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

thread_local! {
    static SIEVE: RefCell<Sieve> = RefCell::new(Sieve::new());
}

/// Primes below `limit`, grown by doubling on demand.
struct Sieve {
    limit: u64,
    primes: Vec<u64>,
}

impl Sieve {
    fn new() -> Self {
        let mut s = Sieve { limit: 0, primes: Vec::new() };
        s.grow_to(1 << 12);
        s
    }

    fn grow_to(&mut self, limit: u64) {
        if limit <= self.limit {
            return;
        }
        let limit = limit.max(self.limit * 2);
        let n = limit as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        self.primes = primes;
        self.limit = limit;
    }

    /// The i-th prime, growing as needed.
    fn nth(&mut self, i: usize) -> u64 {
        while i >= self.primes.len() {
            let l = self.limit * 2;
            self.grow_to(l);
        }
        self.primes[i]
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    SIEVE.with(|s| {
        let mut s = s.borrow_mut();
        s.grow_to(n + 1);
        s.primes.iter().copied().take_while(|&p| p <= n).collect()
    })
}

/// Sign and prime exponents of a nonzero rational; zero has sign 0 and no primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRational {
    pub sign: i8,
    pub exponents: BTreeMap<BigInt, i64>,
}

impl FactoredRational {
    pub fn reassemble(&self) -> Rational {
        if self.sign == 0 {
            return Rational::zero();
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, &e) in &self.exponents {
            let pe = num_traits::pow(p.clone(), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        Rational::new(num, den).expect("positive denominator")
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.exponents.keys()
    }
}

/// Trial division of |n| against the sieve. `n` must be nonzero.
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, i64> {
    let mut out = BTreeMap::new();
    let mut m = n.abs();
    if m.is_zero() {
        return out;
    }
    if let Some(small) = m.to_u64() {
        factor_u64(small, &mut out);
        return out;
    }
    let mut i = 0;
    loop {
        let p = SIEVE.with(|s| s.borrow_mut().nth(i));
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
            if let Some(small) = m.to_u64() {
                factor_u64(small, &mut out);
                return out;
            }
        }
        i += 1;
    }
    if !m.is_one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

fn factor_u64(mut m: u64, out: &mut BTreeMap<BigInt, i64>) {
    let mut i = 0;
    while m > 1 {
        let p = SIEVE.with(|s| s.borrow_mut().nth(i));
        if p.saturating_mul(p) > m {
            *out.entry(BigInt::from(m)).or_insert(0) += 1;
            return;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            *out.entry(BigInt::from(p)).or_insert(0) += e;
        }
        i += 1;
    }
}

pub fn factor_rational(q: &Rational) -> FactoredRational {
    if q.is_zero() {
        return FactoredRational { sign: 0, exponents: BTreeMap::new() };
    }
    let mut exponents = factor_integer(q.numer());
    for (p, e) in factor_integer(q.denom()) {
        exponents.insert(p, -e);
    }
    FactoredRational { sign: q.signum(), exponents }
}

/// Smallest prime not in `avoid`.
pub fn fresh_prime(avoid: &BTreeSet<BigInt>) -> BigInt {
    let mut i = 0;
    loop {
        let p = BigInt::from(SIEVE.with(|s| s.borrow_mut().nth(i)));
        if !avoid.contains(&p) {
            return p;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(ps: &[i64]) -> BTreeSet<BigInt> {
        ps.iter().map(|&p| BigInt::from(p)).collect()
    }

    #[test]
    fn factor_examples() {
        let f = factor_rational(&q("4/9"));
        assert_eq!(f.sign, 1);
        assert_eq!(f.exponents, [(BigInt::from(2), 2), (BigInt::from(3), -2)].into_iter().collect());
        let f = factor_rational(&q("-8"));
        assert_eq!(f.sign, -1);
        assert_eq!(f.exponents, [(BigInt::from(2), 3)].into_iter().collect());
        let f = factor_rational(&q("0"));
        assert_eq!((f.sign, f.exponents.len()), (0, 0));
    }

    #[test]
    fn fresh_prime_examples() {
        assert_eq!(fresh_prime(&set(&[])), BigInt::from(2));
        assert_eq!(fresh_prime(&set(&[2, 3])), BigInt::from(5));
        assert_eq!(fresh_prime(&set(&[2, 3, 5, 7, 11])), BigInt::from(13));
    }

    #[test]
    fn big_numbers_factor() {
        let m = BigInt::from(2).pow(70) * BigInt::from(3).pow(5) * BigInt::from(1_000_003);
        let f = factor_integer(&m);
        assert_eq!(f.get(&BigInt::from(2)), Some(&70));
        assert_eq!(f.get(&BigInt::from(3)), Some(&5));
        assert_eq!(f.get(&BigInt::from(1_000_003)), Some(&1));
    }

    #[test]
    fn primes_list() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    proptest! {
        #[test]
        fn factor_reassemble(p in -5000i64..5000, d in 1i64..5000) {
            let r = Rational::new(p, d).unwrap();
            let f = factor_rational(&r);
            prop_assert_eq!(f.reassemble(), r);
            prop_assert!(f.exponents.values().all(|&e| e != 0));
            prop_assert!(f.sign != 0 || f.exponents.is_empty());
        }

        #[test]
        fn reassemble_factor(exps in proptest::collection::btree_map(0usize..6, -4i64..5, 0..4), s in prop_oneof![Just(1i8), Just(-1i8)]) {
            let ps = [2, 3, 5, 7, 11, 13];
            let exponents: BTreeMap<BigInt, i64> = exps.into_iter().filter(|&(_, e)| e != 0).map(|(i, e)| (BigInt::from(ps[i]), e)).collect();
            let f = FactoredRational { sign: s, exponents };
            prop_assert_eq!(factor_rational(&f.reassemble()), f);
        }
    }
}
