//! Elimination for ⟨ℚ;<,+⟩ and ⟨ℝ;<,+⟩ (ordered divisible groups),
//! Presburger arithmetic over ℤ, and ℕ by relativization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::bezout;
use crate::syntax::{Atom, Cube, Formula, LinearTerm, Term};

pub const ANCHOR_ODAG: &str = "divisible ordered group scaling";
pub const ANCHOR_PRESBURGER: &str = "division algorithm and generalized remaindering";
pub const ANCHOR_RELATIVIZE: &str = "relativization to the naturals";

/// One x-literal solved for `c·x` with `c > 0`.
#[derive(Debug, Clone)]
enum Bound {
    /// `t < c·x`
    Lower(LinearTerm),
    /// `c·x < t`
    Upper(LinearTerm),
    /// `c·x = t`
    Equal(LinearTerm),
    /// `c·x ≡ t (mod n)`
    Cong(BigInt, LinearTerm),
}

/// A cube after scaling to `y = α·x`: every bound has coefficient 1 in `y`.
#[derive(Debug, Clone, Default)]
pub struct ScaledCube {
    pub alpha: BigInt,
    lower: Vec<LinearTerm>,
    upper: Vec<LinearTerm>,
    equal: Vec<LinearTerm>,
    congs: Vec<(BigInt, LinearTerm)>,
    /// Literals that turned out not to constrain `x`.
    side: Vec<Formula>,
}

fn lt(a: LinearTerm, b: LinearTerm) -> Formula {
    Formula::less(Term::Linear(a), Term::Linear(b))
}

fn cong(n: BigInt, a: LinearTerm, b: LinearTerm) -> Formula {
    Formula::Atom(Atom::Cong { modulus: n, lhs: a, rhs: b })
}

/// `a ≤ b` over ℤ.
fn le_z(a: LinearTerm, b: LinearTerm) -> Formula {
    lt(a, b.add_constant(&BigInt::one()))
}

fn solve(c: &Cube) -> (Vec<(BigInt, Bound)>, Vec<Formula>) {
    let x = &c.var;
    let mut out = Vec::new();
    let mut side = Vec::new();
    for l in &c.literals {
        assert!(!l.negated, "additive cubes carry positive literals only");
        match &l.atom {
            Atom::Less(Term::Linear(a), Term::Linear(b)) => {
                // 0 < k·x + r
                let d = b.sub(a);
                let (k, r) = (d.coeff(x), d.without(x));
                if k.is_positive() {
                    out.push((k, Bound::Lower(r.neg())));
                } else if k.is_negative() {
                    out.push((-k, Bound::Upper(r)));
                } else {
                    side.push(lt(LinearTerm::zero(), r));
                }
            }
            Atom::Eq(Term::Linear(a), Term::Linear(b)) => {
                let d = b.sub(a);
                let (k, r) = (d.coeff(x), d.without(x));
                if k.is_positive() {
                    out.push((k, Bound::Equal(r.neg())));
                } else if k.is_negative() {
                    out.push((-k, Bound::Equal(r)));
                } else {
                    side.push(Formula::eq(Term::Linear(LinearTerm::zero()), Term::Linear(r)));
                }
            }
            Atom::Cong { modulus, lhs, rhs } => {
                let d = lhs.sub(rhs);
                let k = d.coeff(x).mod_floor(modulus);
                let r = d.without(x);
                if k.is_zero() {
                    side.push(cong(modulus.clone(), r, LinearTerm::zero()));
                } else {
                    out.push((k, Bound::Cong(modulus.clone(), r.neg())));
                }
            }
            a => panic!("additive engine received a foreign atom: {a}"),
        }
    }
    (out, side)
}

/// Multiplies every x-literal up to the common coefficient `α`.
/// In Presburger arithmetic the constraint `y ≡ 0 (mod α)` is recorded.
pub fn scale_cube(c: &Cube, presburger: bool) -> ScaledCube {
    let (bounds, side) = solve(c);
    let alpha = bounds.iter().fold(BigInt::one(), |a, (k, _)| a.lcm(k));
    let mut s = ScaledCube { alpha: alpha.clone(), side, ..Default::default() };
    for (k, b) in bounds {
        let m = &alpha / &k;
        match b {
            Bound::Lower(t) => s.lower.push(t.scale(&m)),
            Bound::Upper(t) => s.upper.push(t.scale(&m)),
            Bound::Equal(t) => s.equal.push(t.scale(&m)),
            Bound::Cong(n, t) => s.congs.push((n * &m, t.scale(&m))),
        }
    }
    if presburger && !alpha.is_one() {
        s.congs.push((alpha, LinearTerm::zero()));
    }
    s
}

impl ScaledCube {
    /// All constraints with `y` replaced by `e`.
    fn substitute(&self, e: &LinearTerm) -> Formula {
        let mut out = self.side.clone();
        out.extend(self.equal.iter().map(|u| Formula::eq(Term::Linear(e.clone()), Term::Linear(u.clone()))));
        out.extend(self.lower.iter().map(|t| lt(t.clone(), e.clone())));
        out.extend(self.upper.iter().map(|u| lt(e.clone(), u.clone())));
        out.extend(self.congs.iter().map(|(n, t)| cong(n.clone(), e.clone(), t.clone())));
        Formula::conj(out)
    }
}

/// `∃x` over an ordered divisible abelian group.
pub fn eliminate_odag(c: &Cube) -> Formula {
    let s = scale_cube(c, false);
    if let Some(e) = s.equal.first() {
        return s.substitute(e);
    }
    let mut out = s.side.clone();
    if !s.lower.is_empty() && !s.upper.is_empty() {
        for t in &s.lower {
            for u in &s.upper {
                out.push(lt(t.clone(), u.clone()));
            }
        }
    }
    Formula::conj(out)
}

/// `x ≡ t₀ (mod n₀) ∧ x ≡ t₁ (mod n₁)` as `x ≡ t (mod lcm) ∧ side`.
pub fn merge_congruences(a: (&BigInt, &LinearTerm), b: (&BigInt, &LinearTerm)) -> (BigInt, LinearTerm, Formula) {
    let ((n0, t0), (n1, t1)) = (a, b);
    if n0 == n1 && t0 == t1 {
        return (n0.clone(), t0.clone(), Formula::True);
    }
    let (d, a0, a1) = bezout(n0, n1).expect("moduli are at least 2");
    let n = n0.lcm(n1);
    let t = t1.scale(&(&a0 * (n0 / &d))).add(&t0.scale(&(&a1 * (n1 / &d)))).reduce_mod(&n);
    let side = if d.is_one() { Formula::True } else { cong(d, t0.clone(), t1.clone()) };
    (n, t, side)
}

/// The base case `∃y (y ≡ t (mod n) ∧ l < y ∧ y < u)` over ℤ.
fn congruent_between(n: &BigInt, t: &LinearTerm, l: &LinearTerm, u: &LinearTerm) -> Formula {
    // y = t + w, w ≡ 0 (mod n), r < w ≤ s
    let r = l.sub(t);
    let s = u.sub(t).add_constant(&-BigInt::one());
    if s.is_constant() {
        let i = s.constant_part().mod_floor(n);
        return lt(r.add_constant(&i), s);
    }
    let n64 = num_traits::ToPrimitive::to_u64(n).expect("modulus fits in 64 bits");
    Formula::disj((0..n64).map(|i| {
        let i = BigInt::from(i);
        Formula::conj([cong(n.clone(), s.clone(), LinearTerm::constant(i.clone())), lt(r.add_constant(&i), s.clone())])
    }))
}

/// `∃x` in Presburger arithmetic over ℤ.
pub fn eliminate_presburger(c: &Cube) -> Formula {
    let s = scale_cube(c, true);
    if let Some(e) = s.equal.first() {
        return s.substitute(e);
    }
    let mut side = s.side.clone();
    let merged = s.congs.iter().skip(1).fold(s.congs.first().cloned(), |acc, (n, t)| {
        let (n0, t0) = acc.expect("fold starts from the first congruence");
        let (m, u, extra) = merge_congruences((&n0, &t0), (n, t));
        side.push(extra);
        Some((m, u))
    });
    let (lower, upper) = (&s.lower, &s.upper);
    if lower.is_empty() || upper.is_empty() {
        return Formula::conj(side);
    }
    let mut cases = Vec::new();
    for (i, l) in lower.iter().enumerate() {
        for (j, u) in upper.iter().enumerate() {
            let mut parts: Vec<Formula> = Vec::new();
            // l is the largest lower bound and u the smallest upper bound.
            parts.extend(lower.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, o)| le_z(o.clone(), l.clone())));
            parts.extend(upper.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, o)| le_z(u.clone(), o.clone())));
            parts.push(match &merged {
                None => lt(l.add_constant(&BigInt::one()), u.clone()),
                Some((n, t)) => congruent_between(n, t, l, u),
            });
            cases.push(Formula::conj(parts));
        }
    }
    side.push(Formula::disj(cases));
    Formula::conj(side)
}

/// `0 ≤ x` over ℤ.
pub fn nonneg(x: &crate::syntax::Var) -> Formula {
    le_z(LinearTerm::zero(), LinearTerm::var(x.clone()))
}

/// Bounds every quantifier to the naturals: `∃x θ ↦ ∃x (0 ≤ x ∧ θ)` and
/// `∀x θ ↦ ∀x (0 ≤ x → θ)`.
pub fn relativize_to_n(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(relativize_to_n(g)),
        Formula::And(v) => Formula::And(v.iter().map(relativize_to_n).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(relativize_to_n).collect()),
        Formula::Imp(a, b) => Formula::imp(relativize_to_n(a), relativize_to_n(b)),
        Formula::Iff(a, b) => Formula::iff(relativize_to_n(a), relativize_to_n(b)),
        Formula::Exists(x, g) => Formula::exists(x.clone(), Formula::And(vec![nonneg(x), relativize_to_n(g)])),
        Formula::Forall(x, g) => Formula::forall(x.clone(), Formula::imp(nonneg(x), relativize_to_n(g))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, simplify, Literal, Theory, Var};

    fn cube(text: &str, theory: Theory) -> Cube {
        let Formula::Exists(x, body) = parse_formula(text, theory).unwrap() else { panic!() };
        let lits = match *body {
            Formula::And(v) => v,
            g => vec![g],
        };
        Cube::new(x, lits.into_iter().map(|g| match g {
            Formula::Atom(a) => Literal::pos(a),
            g => panic!("{g}"),
        }).collect())
    }

    fn run(text: &str, theory: Theory) -> String {
        let c = cube(text, theory);
        let r = if theory.is_presburger() { eliminate_presburger(&c) } else { eliminate_odag(&c) };
        simplify(&r, theory).to_string()
    }

    #[test]
    fn odag_examples() {
        assert_eq!(run("exists x. y < 2*x /\\ 2*x < z", Theory::OagQ), "y < z");
        assert_eq!(run("exists x. x + x = y", Theory::OagQ), "true");
        assert_eq!(run("exists x. y < 3*x /\\ 2*x < z", Theory::OagR), "2*y < 3*z");
        assert_eq!(run("exists x. y < x", Theory::OagQ), "true");
    }

    #[test]
    fn presburger_examples() {
        assert_eq!(run("exists x. x == 0 mod 2 /\\ 0 < x /\\ x < 3", Theory::PresburgerZ), "true");
        assert_eq!(run("exists x. 2*x = y", Theory::PresburgerZ), "y == 0 mod 2");
        assert_eq!(run("exists x. x == 0 mod 2 /\\ 0 < x /\\ x < 2", Theory::PresburgerZ), "false");
        assert_eq!(run("exists x. x == 1 mod 4 /\\ x == 2 mod 6", Theory::PresburgerZ), "false");
        assert_eq!(run("exists x. x == 1 mod 4 /\\ x == 3 mod 6", Theory::PresburgerZ), "true");
        assert_eq!(run("exists x. u < x /\\ x < v", Theory::PresburgerZ), "u + 1 < v");
    }

    #[test]
    fn merge_examples() {
        let b = |n: i64| BigInt::from(n);
        let k = |n: i64| LinearTerm::constant(n);
        let (n, t, side) = merge_congruences((&b(4), &k(1)), (&b(6), &k(3)));
        assert_eq!((n, t.constant_part().mod_floor(&b(12))), (b(12), b(9)));
        assert_eq!(simplify(&side, Theory::PresburgerZ), Formula::True);
        let (_, _, side) = merge_congruences((&b(4), &k(1)), (&b(6), &k(2)));
        assert_eq!(simplify(&side, Theory::PresburgerZ), Formula::False);
        let y = LinearTerm::var(Var::new("y"));
        assert_eq!(merge_congruences((&b(5), &y), (&b(5), &y)), (b(5), y, Formula::True));
    }

    /// Every residue pair with moduli up to 12 merges to the same solution set.
    #[test]
    fn merge_matches_brute_force() {
        for n0 in 2..=12i64 {
            for n1 in 2..=12i64 {
                let l = n0.lcm(&n1);
                for t0 in 0..n0 {
                    for t1 in 0..n1 {
                        let (n, t, side) = merge_congruences((&BigInt::from(n0), &LinearTerm::constant(t0)), (&BigInt::from(n1), &LinearTerm::constant(t1)));
                        let side = simplify(&side, Theory::PresburgerZ) == Formula::True;
                        let t = t.constant_part().clone();
                        for x in 0..l {
                            let orig = x % n0 == t0 && x % n1 == t1;
                            let merged = side && (BigInt::from(x) - &t).is_multiple_of(&n);
                            assert_eq!(orig, merged, "{n0} {t0} {n1} {t1} at {x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn relativization() {
        let f = parse_formula("exists x. x < 0", Theory::PresburgerN).unwrap();
        assert_eq!(relativize_to_n(&f).to_string(), "exists x. (0 < x + 1 /\\ x < 0)");
        let g = parse_formula("forall x. exists y. y < x", Theory::PresburgerN).unwrap();
        assert_eq!(relativize_to_n(&g).to_string(), "forall x. (0 < x + 1 -> (exists y. (0 < y + 1 /\\ y < x)))");
    }
}
