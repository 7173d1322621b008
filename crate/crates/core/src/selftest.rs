//! Built-in consistency suites. Each compares a procedure of the crate with
//! a separate computation of the same value, on exhaustive boxes or seeded
//! random instances.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::battery::run_battery;
use crate::eval::{check_hinman_identity, check_robinson_identity, eval_qf, extract_witness, search_witness, Assignment, Value};
use crate::numeric::{crt_solve, enumerate_rationals, is_nth_power, Rational};
use crate::qe_mult::{eliminate_mul_q_plus, merge_re_atoms};
use crate::syntax::{Atom, Cube, Engine, Formula, Literal, Monomial, Sign, Term, Theory, Var};

pub const SUITES: [&str; 6] = ["sum identities", "congruences", "power predicates", "battery", "power-class merging", "cosets"];

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, checked: 0, failed: 0, examples: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 5 {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random instances for each randomized suite.
    pub instances: usize,
    /// The ℚ⁺ cube engine under test in the coset suite.
    pub coset_engine: Engine,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 7, instances: 200, coset_engine: eliminate_mul_q_plus }
    }
}

pub fn run_selftest(cfg: &SelftestConfig) -> Vec<SuiteReport> {
    vec![
        identity_suite(25),
        congruence_suite(12),
        power_suite(100, 6),
        battery_suite(),
        merging_suite(cfg.seed, cfg.instances),
        coset_suite(cfg.seed, cfg.instances, cfg.coset_engine),
    ]
}

pub fn identity_suite(bound: u32) -> SuiteReport {
    let mut r = SuiteReport::new("sum identities");
    r.check(check_robinson_identity(bound), || format!("successor-and-product definition of x + y = z fails on [-{bound}, {bound}]"));
    r.check(check_hinman_identity(bound), || format!("zero-free definition of x + y = z fails on [-{bound}, {bound}]"));
    r
}

/// `crt_solve` against a scan of `[0, lcm)` for every multiset of at most
/// three moduli in `2..=max` and every residue tuple.
pub fn congruence_suite(max: i64) -> SuiteReport {
    let mut r = SuiteReport::new("congruences");
    let mut sets: Vec<Vec<i64>> = Vec::new();
    for a in 2..=max {
        sets.push(vec![a]);
        for b in a..=max {
            sets.push(vec![a, b]);
            for c in b..=max {
                sets.push(vec![a, b, c]);
            }
        }
    }
    for ms in sets {
        let l = ms.iter().fold(1i64, |l, m| l.lcm(m));
        let mut first: HashMap<Vec<i64>, i64> = HashMap::new();
        for x in 0..l {
            first.entry(ms.iter().map(|m| x % m).collect()).or_insert(x);
        }
        let mut tuple = vec![0i64; ms.len()];
        loop {
            let pairs: Vec<(BigInt, BigInt)> = ms.iter().zip(&tuple).map(|(m, t)| (BigInt::from(*m), BigInt::from(*t))).collect();
            let got = crt_solve(&pairs).and_then(|s| s.to_i64());
            let want = first.get(&tuple).copied();
            r.check(got == want, || format!("moduli {ms:?}, residues {tuple:?}: got {got:?}, expected {want:?}"));
            let mut i = 0;
            while i < ms.len() {
                tuple[i] += 1;
                if tuple[i] < ms[i] {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
            if i == ms.len() {
                break;
            }
        }
    }
    r
}

fn int_root(a: &BigInt, n: u32) -> Option<BigInt> {
    let mut k = BigInt::from(0);
    loop {
        let p = k.pow(n);
        if &p == a {
            return Some(k);
        }
        if &p > a {
            return None;
        }
        k += 1;
    }
}

/// `is_nth_power` against integer root search on numerator and denominator.
pub fn power_suite(bound: u64, max_degree: u32) -> SuiteReport {
    let mut r = SuiteReport::new("power predicates");
    for q in enumerate_rationals(bound) {
        for n in 1..=max_degree {
            let sign_ok = !q.is_negative() || n % 2 == 1;
            let want = sign_ok && int_root(&q.numer().abs(), n).is_some() && int_root(q.denom(), n).is_some();
            r.check(is_nth_power(&q, n) == want, || format!("{q} as a {n}-th power: expected {want}"));
        }
    }
    r
}

pub fn battery_suite() -> SuiteReport {
    let mut r = SuiteReport::new("battery");
    for (s, got) in run_battery() {
        r.check(got.as_ref().ok() == Some(&s.truth), || format!("{} {}: expected {}, got {got:?}", s.theory, s.text, s.truth));
    }
    r
}

const PRIMES: [i64; 4] = [2, 3, 5, 7];

/// Elements of ℚ⁺ over four primes, as exponent vectors.
type Exps = [i64; 4];

fn value(e: &Exps) -> Rational {
    PRIMES.iter().zip(e).fold(Rational::one(), |acc, (p, k)| acc * Rational::from_integer(*p).pow(*k))
}

fn is_power_exps(e: &Exps, n: i64) -> bool {
    e.iter().all(|k| k % n == 0)
}

fn add(a: &Exps, b: &Exps) -> Exps {
    std::array::from_fn(|i| a[i] + b[i])
}

fn scale(a: &Exps, k: i64) -> Exps {
    std::array::from_fn(|i| a[i] * k)
}

fn random_exps(rng: &mut ChaCha8Rng, r: i64) -> Exps {
    std::array::from_fn(|_| rng.gen_range(-r..=r))
}

fn mono(vars: &[&Var]) -> Monomial {
    Monomial::from_parts(Sign::Pos, vars.iter().map(|v| ((*v).clone(), BigInt::from(1))))
}

fn re_atom(n: i64, arg: Monomial) -> Atom {
    Atom::Re { degree: BigInt::from(n), arg }
}

fn assign(pairs: &[(&Var, &Exps)]) -> Assignment {
    pairs.iter().map(|(v, e)| ((*v).clone(), Value::Rational(value(e)))).collect()
}

/// Intersections of power classes: `Re_a ∧ Re_b` is `Re_lcm(a,b)` on a box
/// of exponent vectors, and the merged form of several classes agrees with
/// divisibility of exponents on random instances.
pub fn merging_suite(seed: u64, instances: usize) -> SuiteReport {
    let mut r = SuiteReport::new("power-class merging");
    let mut grid = vec![[0i64; 4]];
    for i in 0..4 {
        grid = grid.into_iter().flat_map(|e| (-4..=4).map(move |k| {
            let mut f = e;
            f[i] = k;
            f
        })).collect();
    }
    for e in &grid {
        let q = value(e);
        for a in 2..=6u32 {
            for b in 2..=6u32 {
                let l = a.lcm(&b);
                let both = is_nth_power(&q, a) && is_nth_power(&q, b);
                r.check(both == is_nth_power(&q, l) && both == is_power_exps(e, i64::from(l)), || format!("{q} under degrees {a}, {b}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = Var::new("y");
    let ts: Vec<Var> = (0..3).map(|i| Var::new(&format!("t{i}"))).collect();
    for _ in 0..instances {
        let k = rng.gen_range(2..=3);
        let ns: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=6)).collect();
        let y0 = random_exps(&mut rng, 3);
        // Half the parameters make the classes meet at y0.
        let tv: Vec<Exps> = ns
            .iter()
            .map(|n| if rng.gen_bool(0.5) { add(&scale(&y0, -1), &scale(&random_exps(&mut rng, 1), *n)) } else { random_exps(&mut rng, 3) })
            .collect();
        let atoms: Vec<(BigInt, Monomial)> = ns.iter().zip(&ts).map(|(n, t)| (BigInt::from(*n), mono(&[t]))).collect();
        let (n, beta, side) = merge_re_atoms(&atoms);
        let merged = Formula::conj([Formula::Atom(re_atom(n.to_i64().unwrap(), mono(&[&y]).mul(&beta))), side]);
        let big = ns.iter().fold(1i64, |l, m| l.lcm(m));
        for j in 0..10 {
            let yv = if j % 2 == 0 { add(&y0, &scale(&random_exps(&mut rng, 1), big)) } else { random_exps(&mut rng, 3) };
            let want = ns.iter().zip(&tv).all(|(n, t)| is_power_exps(&add(&yv, t), *n));
            let mut a = assign(&[(&y, &yv)]);
            a.extend(ts.iter().zip(&tv).map(|(t, e)| (t.clone(), Value::Rational(value(e)))));
            let got = eval_qf(&merged, &a);
            r.check(got == Ok(want), || format!("degrees {ns:?}, merged into {merged}, at y = {}: expected {want}, got {got:?}", value(&yv)));
        }
    }
    r
}

/// `∃x [u < x < v ∧ Re_n(x·t) ∧ ⋀ ¬Re_{mⱼ}(x·sⱼ)]` over ℚ⁺: the engine's
/// answer must match the closed-form condition, a ⊤ must come with a
/// verified witness and a ⊥ must survive a bounded search.
pub fn coset_suite(seed: u64, instances: usize, engine: Engine) -> SuiteReport {
    let mut r = SuiteReport::new("cosets");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let (x, t, u, v) = (Var::new("x"), Var::new("t"), Var::new("u"), Var::new("v"));
    let ss: Vec<Var> = (0..3).map(|i| Var::new(&format!("s{i}"))).collect();
    for _ in 0..instances {
        let n = rng.gen_range(2..=6i64);
        let tv = random_exps(&mut rng, 2);
        let q = rng.gen_range(0..=3usize);
        let ms: Vec<i64> = (0..q).map(|_| rng.gen_range(2..=6)).collect();
        // Some avoided classes coincide with the class of t.
        let sv: Vec<Exps> = ms.iter().map(|m| if rng.gen_bool(0.4) { add(&tv, &scale(&random_exps(&mut rng, 1), *m)) } else { random_exps(&mut rng, 2) }).collect();
        let (uv, vv) = (random_exps(&mut rng, 2), random_exps(&mut rng, 2));
        let (lower, upper) = (rng.gen_bool(0.7), rng.gen_bool(0.7));
        let m = |a: &Var| Term::Mono(mono(&[a]));
        let mut lits = vec![Literal::pos(re_atom(n, mono(&[&x, &t])))];
        if lower {
            lits.push(Literal::pos(Atom::Less(m(&u), m(&x))));
        }
        if upper {
            lits.push(Literal::pos(Atom::Less(m(&x), m(&v))));
        }
        for (mj, s) in ms.iter().zip(&ss) {
            lits.push(Literal::neg(re_atom(*mj, mono(&[&x, s]))));
        }
        let cube = Cube::new(x.clone(), lits);
        let mut a = assign(&[(&t, &tv), (&u, &uv), (&v, &vv)]);
        a.extend(ss.iter().zip(&sv).map(|(s, e)| (s.clone(), Value::Rational(value(e)))));
        let ordered = !(lower && upper) || value(&uv) < value(&vv);
        let want = ordered && ms.iter().zip(&sv).all(|(mj, s)| n % mj != 0 || !is_power_exps(&add(s, &scale(&tv, -1)), *mj));
        let got = eval_qf(&engine(&cube), &a);
        r.check(got == Ok(want), || format!("{}: expected {want}, got {got:?}", cube.to_formula()));
        match got {
            Ok(true) => {
                let w = extract_witness(&cube, Theory::MulQPos, &a);
                r.check(w.as_ref().is_ok_and(|w| w.verified()), || format!("{}: no verified witness ({w:?})", cube.to_formula()));
            }
            Ok(false) => {
                let f = Formula::exists(x.clone(), cube.to_formula());
                let hit = search_witness(&f, Theory::MulQPos, &a, 200);
                r.check(matches!(hit, Ok(None)), || format!("{}: decided false but search found {hit:?}", cube.to_formula()));
            }
            Err(_) => {}
        }
    }
    r
}
