//! Engines for the positive cones ⟨ℝ⁺;<,×⟩ and ⟨ℚ⁺;<,×,Re_n⟩.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::bezout_many;
use crate::syntax::{Atom, Cube, Formula, Literal, Monomial, Sign, Term, Var};

pub const ANCHOR_GROUP: &str = "multiplicative group of the positive reals";
pub const ANCHOR_RE: &str = "power-class merging, density and avoidance";

pub(crate) fn mono_less(a: Monomial, b: Monomial) -> Formula {
    Formula::less(Term::Mono(a), Term::Mono(b))
}

pub(crate) fn mono_eq(a: Monomial, b: Monomial) -> Formula {
    Formula::eq(Term::Mono(a), Term::Mono(b))
}

pub(crate) fn re(n: BigInt, arg: Monomial) -> Formula {
    Formula::Atom(Atom::Re { degree: n, arg })
}

/// A positive-cone cube over `y = x^α`; every entry has exponent 1 in `y`.
#[derive(Debug, Clone, Default)]
pub struct PositiveCube {
    pub alpha: BigInt,
    /// `t < y`
    pub lower: Vec<Monomial>,
    /// `y < t`
    pub upper: Vec<Monomial>,
    /// `y = t`
    pub equal: Vec<Monomial>,
    /// `Re_n(y·t)`
    pub re: Vec<(BigInt, Monomial)>,
    /// `¬Re_m(y·s)`
    pub not_re: Vec<(BigInt, Monomial)>,
    /// Literals that do not constrain `x`.
    pub side: Vec<Formula>,
}

enum Shape {
    Lower(Monomial),
    Upper(Monomial),
    Equal(Monomial),
    Re(BigInt, Monomial, bool),
}

fn positive(m: &Monomial) -> Monomial {
    assert_ne!(m.sign(), Sign::Zero, "positive-cone literal with the constant 0");
    m.strip_guards().with_sign(Sign::Pos)
}

/// Splits a positive-cone literal into `x^k ⋈ t` with `k > 0`.
fn shape(x: &Var, l: &Literal) -> Result<(BigInt, Shape), Formula> {
    match &l.atom {
        Atom::Less(Term::Mono(a), Term::Mono(b)) | Atom::Eq(Term::Mono(a), Term::Mono(b)) => {
            assert!(!l.negated);
            // 1 ⋈ x^k · r
            let d = positive(b).mul(&positive(a).inv()).strip_guards();
            let k = d.exponent(x);
            let r = d.without(x);
            let eq = matches!(l.atom, Atom::Eq(..));
            if k.is_zero() {
                let one = Monomial::one();
                return Err(if eq { mono_eq(one, r) } else { mono_less(one, r) });
            }
            Ok(if k.is_positive() {
                let t = r.inv();
                (k, if eq { Shape::Equal(t) } else { Shape::Lower(t) })
            } else {
                (-k, if eq { Shape::Equal(r) } else { Shape::Upper(r) })
            })
        }
        Atom::Re { degree, arg } => {
            let arg = positive(arg);
            let k = arg.exponent(x).mod_floor(degree);
            let t = arg.without(x);
            if k.is_zero() {
                return Err(if l.negated { Formula::not(re(degree.clone(), t)) } else { re(degree.clone(), t) });
            }
            Ok((k, Shape::Re(degree.clone(), t, l.negated)))
        }
        a => panic!("multiplicative engine received a foreign atom: {a}"),
    }
}

/// Normalizes exponents of `x` to their lcm `α` and rewrites every literal
/// in `y = x^α`. With `record_powers`, `Re_α(y)` is added (ℚ⁺ only: in ℝ⁺
/// every element is an α-th power).
pub fn scale_positive(c: &Cube, record_powers: bool) -> PositiveCube {
    let mut side = Vec::new();
    let mut shapes = Vec::new();
    for l in &c.literals {
        match shape(&c.var, l) {
            Ok(s) => shapes.push(s),
            Err(f) => side.push(f),
        }
    }
    let alpha = shapes.iter().fold(BigInt::one(), |a, (k, _)| a.lcm(k));
    let mut p = PositiveCube { alpha: alpha.clone(), side, ..Default::default() };
    for (k, s) in shapes {
        let m = &alpha / &k;
        match s {
            Shape::Lower(t) => p.lower.push(t.pow(&m)),
            Shape::Upper(t) => p.upper.push(t.pow(&m)),
            Shape::Equal(t) => p.equal.push(t.pow(&m)),
            // Re_n(a) ⟺ Re_{n·m}(a^m) in the positive cone.
            Shape::Re(n, t, false) => p.re.push((n * &m, t.pow(&m))),
            Shape::Re(n, t, true) => p.not_re.push((n * &m, t.pow(&m))),
        }
    }
    if record_powers && !alpha.is_one() {
        p.re.push((alpha, Monomial::one()));
    }
    p
}

impl PositiveCube {
    fn substitute(&self, e: &Monomial) -> Formula {
        let mut out = self.side.clone();
        out.extend(self.equal.iter().map(|u| mono_eq(e.clone(), u.clone())));
        out.extend(self.lower.iter().map(|t| mono_less(t.clone(), e.clone())));
        out.extend(self.upper.iter().map(|u| mono_less(e.clone(), u.clone())));
        out.extend(self.re.iter().map(|(n, t)| re(n.clone(), e.mul(t))));
        out.extend(self.not_re.iter().map(|(m, s)| Formula::not(re(m.clone(), e.mul(s)))));
        Formula::conj(out)
    }

    /// `⋀ l < u` over all lower/upper pairs: the dense-order step.
    fn bound_pairs(&self) -> Vec<Formula> {
        self.lower.iter().flat_map(|l| self.upper.iter().map(move |u| mono_less(l.clone(), u.clone()))).collect()
    }
}

/// `∃x` over the positive reals: the group engine with exponents as
/// coefficients. Roots always exist, so no power constraint is needed.
pub fn eliminate_mul_group(c: &Cube) -> Formula {
    let p = scale_positive(c, false);
    assert!(p.re.is_empty() && p.not_re.is_empty(), "power predicates are not in the signature over the reals");
    if let Some(e) = p.equal.first() {
        return p.substitute(e);
    }
    let mut out = p.side.clone();
    out.extend(p.bound_pairs());
    Formula::conj(out)
}

/// `⋀ Re_{nᵢ}(y·tᵢ)` as `Re_n(y·β) ∧ side`.
pub fn merge_re_atoms(atoms: &[(BigInt, Monomial)]) -> (BigInt, Monomial, Formula) {
    assert!(!atoms.is_empty(), "merge_re_atoms needs at least one atom");
    if atoms.len() == 1 {
        return (atoms[0].0.clone(), atoms[0].1.clone(), Formula::True);
    }
    let n = atoms.iter().fold(BigInt::one(), |a, (k, _)| a.lcm(k));
    let cofactors: Vec<BigInt> = atoms.iter().map(|(k, _)| &n / k).collect();
    let (g, coeffs) = bezout_many(&cofactors).expect("cofactors are positive");
    debug_assert!(g.is_one());
    let beta = atoms.iter().zip(coeffs.iter().zip(&cofactors)).fold(Monomial::one(), |b, ((_, t), (c, f))| b.mul(&t.pow(&(c * f))));
    let mut side = Vec::new();
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let d = atoms[i].0.gcd(&atoms[j].0);
            if !d.is_one() {
                side.push(re(d, atoms[i].1.mul(&atoms[j].1.inv())));
            }
        }
    }
    let beta = beta.reduce_mod(&n).strip_guards();
    (n, beta, Formula::conj(side))
}

/// The merged form of a positive cone cube over ℚ⁺ after equations are gone.
#[derive(Debug, Clone)]
pub struct ReducedCube {
    pub cube: PositiveCube,
    /// `Re_n(y·β)` after merging, if any positive power literal was present.
    pub merged: Option<(BigInt, Monomial)>,
    pub merge_side: Formula,
}

pub fn reduce_positive(p: PositiveCube) -> ReducedCube {
    if p.re.is_empty() {
        return ReducedCube { cube: p, merged: None, merge_side: Formula::True };
    }
    let (n, beta, side) = merge_re_atoms(&p.re);
    ReducedCube { cube: p, merged: Some((n, beta)), merge_side: side }
}

/// `∃x` over ⟨ℚ⁺;<,×,Re_n⟩.
pub fn eliminate_mul_q_plus(c: &Cube) -> Formula {
    let p = scale_positive(c, true);
    if let Some(e) = p.equal.first() {
        return p.substitute(e);
    }
    let r = reduce_positive(p);
    let mut out = r.cube.side.clone();
    out.push(r.merge_side.clone());
    // Density of every power coset (and avoidance of finitely many classes)
    // makes the bounds interact only pairwise.
    out.extend(r.cube.bound_pairs());
    if let Some((n, beta)) = &r.merged {
        // y = zⁿ·β⁻¹: classes with mⱼ | n are fixed by β, the others avoidable.
        for (m, s) in &r.cube.not_re {
            if n.is_multiple_of(m) {
                out.push(Formula::not(re(m.clone(), beta.inv().mul(s))));
            }
        }
    }
    Formula::conj(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, simplify, Theory};

    fn cube(text: &str, theory: Theory) -> Cube {
        let Formula::Exists(x, body) = parse_formula(text, theory).unwrap() else { panic!() };
        let lits = match *body {
            Formula::And(v) => v,
            g => vec![g],
        };
        Cube::new(
            x,
            lits.into_iter()
                .map(|g| match g {
                    Formula::Atom(a) => Literal::pos(a),
                    Formula::Not(a) => match *a {
                        Formula::Atom(a) => Literal::neg(a),
                        _ => panic!(),
                    },
                    g => panic!("{g}"),
                })
                .collect(),
        )
    }

    fn qpos(text: &str) -> String {
        simplify(&eliminate_mul_q_plus(&cube(text, Theory::MulQPos)), Theory::MulQPos).to_string()
    }

    fn rpos(text: &str) -> String {
        simplify(&eliminate_mul_group(&cube(text, Theory::MulR)), Theory::MulQPos).to_string()
    }

    #[test]
    fn group_examples() {
        assert_eq!(rpos("exists x. y < x^2 /\\ x^2 < z"), "y < z");
        assert_eq!(rpos("exists x. x^3 = y"), "true");
        assert_eq!(rpos("exists x. y * x = z"), "true");
        assert_eq!(rpos("exists x. y < x^2 /\\ x^3 < z"), "y^3 < z^2");
    }

    #[test]
    fn positive_rational_examples() {
        let r = eliminate_mul_q_plus(&cube("exists x. pow(2, x * y) /\\ ~pow(2, x * z)", Theory::MulQPos));
        assert_eq!(simplify(&r, Theory::MulQPos).to_string(), "~pow(2, y * z)");
        assert_eq!(qpos("exists x. u < x /\\ x < v /\\ pow(2, x)"), "u < v");
        assert_eq!(qpos("exists x. ~pow(2, x)"), "true");
        assert_eq!(qpos("exists x. x^2 = y"), "pow(2, y)");
        assert_eq!(qpos("exists x. pow(2, x) /\\ ~pow(4, x)"), "true");
        assert_eq!(qpos("exists x. pow(4, x) /\\ ~pow(2, x)"), "false");
        assert_eq!(qpos("exists x. x^2 < y /\\ pow(3, x * z)"), "true");
    }

    #[test]
    fn merge_examples() {
        let t = |s: &str| Monomial::var(Var::new(s));
        let b = BigInt::from;
        assert_eq!(merge_re_atoms(&[(b(3), t("a"))]), (b(3), t("a"), Formula::True));
        let (n, beta, side) = merge_re_atoms(&[(b(2), t("a")), (b(3), t("c"))]);
        assert_eq!(n, b(6));
        assert_eq!(side, Formula::True);
        // β = a^{3c₁}·c^{2c₂} with 3c₁ + 2c₂ = 1
        let (ea, ec) = (beta.exponent(&Var::new("a")), beta.exponent(&Var::new("c")));
        assert!(ea.is_multiple_of(&b(3)) && ec.is_multiple_of(&b(2)));
        let (n, beta, side) = merge_re_atoms(&[(b(2), Monomial::one()), (b(4), Monomial::one())]);
        assert_eq!((n, beta), (b(4), Monomial::one()));
        assert_eq!(simplify(&side, Theory::MulQPos), Formula::True);
    }
}
