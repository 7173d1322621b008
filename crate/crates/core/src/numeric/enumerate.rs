use num_integer::Integer;

use super::Rational;

/// All reduced `p/q` with `|p|, q ≤ bound`, each once, in nondecreasing
/// height `max(|p|, q)`; within one height the values are ascending.
pub fn enumerate_rationals(bound: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for h in 1..=bound as i64 {
        let mut level = Vec::new();
        // height exactly h: either |p| = h with q ≤ h, or q = h with |p| < h.
        for q in 1..=h {
            if h.gcd(&q) == 1 {
                level.push(Rational::new(h, q).unwrap());
                level.push(Rational::new(-h, q).unwrap());
            }
        }
        for p in 1..h {
            if p.gcd(&h) == 1 {
                level.push(Rational::new(p, h).unwrap());
                level.push(Rational::new(-p, h).unwrap());
            }
        }
        if h == 1 {
            // 0 = 0/1 has height 1 as well.
            level.push(Rational::zero());
        }
        level.sort();
        out.extend(level);
    }
    out
}
