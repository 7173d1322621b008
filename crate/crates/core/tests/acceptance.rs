//! The seven acceptance criteria, one pass/fail line each.

mod common;

use std::io::Write;
use std::time::Instant;

use common::{crt_scan, random_assignment, rational_is_power, rng, FormulaGen};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use ordqe::battery::{run_battery, BATTERY};
use ordqe::eval::{eval_qf, extract_witness, search_witness, Assignment, ExtractError};
use ordqe::numeric::{crt_solve, enumerate_rationals, is_nth_power, Rational};
use ordqe::qe_mult::{witness_m10, witness_m11};
use ordqe::selftest::{coset_suite, identity_suite, merging_suite};
use ordqe::syntax::{eliminate_exists, matrix_cubes, parse_formula, qe_driver, split_matrix, Cube, Formula, Literal, LocalStep, Theory, Var};
use rand::Rng;

type Outcome = Result<String, String>;

fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
    out.flush().unwrap();
}

fn battery() -> Outcome {
    let start = Instant::now();
    let results = run_battery();
    let secs = start.elapsed().as_secs_f64();
    let wrong: Vec<String> =
        results.iter().filter(|(s, r)| r.as_ref().ok() != Some(&s.truth)).map(|(s, r)| format!("{} {}: {r:?}", s.theory, s.text)).collect();
    if BATTERY.len() < 30 || !wrong.is_empty() || secs >= 10.0 {
        return Err(format!("{} sentences, {} wrong, {secs:.2}s: {wrong:?}", BATTERY.len(), wrong.len()));
    }
    Ok(format!("{} sentences in {secs:.2}s", BATTERY.len()))
}

/// One eliminated quantifier with its matrix split into cubes.
struct Level<'a> {
    step: &'a LocalStep,
    outside: Vec<Formula>,
    cubes: Vec<(Vec<Literal>, Cube)>,
}

impl<'a> Level<'a> {
    fn new(step: &'a LocalStep, theory: Theory) -> Self {
        let (outside, inside) = split_matrix(&step.var, &step.matrix, theory);
        Level { step, outside, cubes: matrix_cubes(&step.var, &inside, theory) }
    }

    /// A ⊤ result needs a verified witness from some cube, a ⊥ result must
    /// survive the search.
    fn check(&self, theory: Theory, a: &Assignment) -> Result<bool, String> {
        let l = self.step;
        let truth = eval_qf(&l.result, a).map_err(|e| format!("{}: {e}", l.result))?;
        let shown = || format!("exists {}. {} gave {} under {a:?}", l.var, l.matrix, l.result);
        if !truth {
            let f = Formula::exists(l.var.clone(), l.matrix.clone());
            return match search_witness(&f, theory, a, 100) {
                Ok(None) => Ok(false),
                other => Err(format!("{}: false but search found {other:?}", shown())),
            };
        }
        if !self.outside.iter().all(|f| eval_qf(f, a) == Ok(true)) {
            return Err(format!("{}: true but a conjunct without {} is false", shown(), l.var));
        }
        for (free, cube) in &self.cubes {
            if !free.iter().all(|f| eval_qf(&f.to_formula(), a) == Ok(true)) {
                continue;
            }
            match extract_witness(cube, theory, a) {
                Ok(w) if w.verified() => return Ok(true),
                Ok(_) | Err(ExtractError::Unsatisfiable) => {}
                Err(e) => return Err(format!("{}: {e}", shown())),
            }
        }
        Err(format!("{}: true but no cube yields a witness", shown()))
    }
}

fn sweep(formulas: usize, assignments: usize) -> Outcome {
    let mut checks = 0usize;
    let mut witnessed = 0usize;
    let mut failures = Vec::new();
    let start = Instant::now();
    for (k, t) in Theory::ALL.into_iter().enumerate() {
        let mut r = rng(100 + k as u64);
        for _ in 0..formulas {
            let f = FormulaGen::new(&mut r, t).formula();
            let (_, trace) = qe_driver(&f, t);
            for l in trace.steps.iter().filter_map(|s| s.local.as_ref()) {
                let level = Level::new(l, t);
                let mut vars = l.matrix.free_vars();
                vars.extend(l.result.free_vars());
                vars.remove(&l.var);
                for _ in 0..assignments {
                    let a = random_assignment(&mut r, t, &vars);
                    checks += 1;
                    match level.check(t, &a) {
                        Ok(true) => witnessed += 1,
                        Ok(false) => {}
                        Err(e) if failures.len() < 5 => failures.push(format!("{t}: {e}")),
                        Err(_) => {}
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if failures.is_empty() {
        Ok(format!("{formulas} formulas per theory, {checks} per-quantifier checks ({witnessed} witnessed) in {secs:.1}s"))
    } else {
        Err(failures.join("\n"))
    }
}

fn brute_force() -> Outcome {
    let mut failures = Vec::new();
    // Every multiset of at most three moduli up to 12, every residue tuple.
    let mut crt = 0;
    let mut sets = Vec::new();
    for a in 1..=12u64 {
        sets.push(vec![a]);
        for b in a..=12 {
            sets.push(vec![a, b]);
            for c in b..=12 {
                sets.push(vec![a, b, c]);
            }
        }
    }
    for ms in &sets {
        let total: u64 = ms.iter().product();
        for code in 0..total {
            let mut c = code;
            let pairs: Vec<(u64, u64)> = ms
                .iter()
                .map(|m| {
                    let r = c % m;
                    c /= m;
                    (*m, r)
                })
                .collect();
            let big: Vec<(BigInt, BigInt)> = pairs.iter().map(|(m, r)| (BigInt::from(*m), BigInt::from(*r))).collect();
            crt += 1;
            let got = crt_solve(&big).map(|x| x.to_u64().unwrap());
            if got != crt_scan(&pairs) {
                failures.push(format!("crt {pairs:?}: {got:?}"));
            }
        }
    }
    let mut powers = 0;
    for q in enumerate_rationals(100) {
        let (p, d) = (q.numer().to_i64().unwrap(), q.denom().to_u64().unwrap());
        for n in 1..=6 {
            powers += 1;
            if is_nth_power(&q, n) != rational_is_power(p, d, n) {
                failures.push(format!("{q} as {n}-th power"));
            }
        }
    }
    // Presburger elimination against a scan of x over [-500, 500].
    let mut r = rng(5);
    let x = Var::new("x");
    let scope = [x.clone(), Var::new("u"), Var::new("v")];
    let mut cubes = 0;
    for _ in 0..300 {
        let mut g = FormulaGen::new(&mut r, Theory::PresburgerZ);
        let k = g.rng.gen_range(1..=4);
        let mut lits = Vec::new();
        for _ in 0..k {
            let f = Formula::Atom(g.atom(&scope));
            lits.push(if g.rng.gen_bool(0.2) { Formula::not(f) } else { f });
        }
        let matrix = Formula::And(lits);
        let qf = eliminate_exists(&x, &matrix, Theory::PresburgerZ);
        for _ in 0..5 {
            let mut a = random_assignment(&mut r, Theory::PresburgerZ, &scope[1..]);
            let claimed = eval_qf(&qf, &a).unwrap();
            let found = (-500..=500).any(|i| {
                a.insert(x.clone(), ordqe::eval::Value::Rational(Rational::from_integer(i)));
                eval_qf(&matrix, &a).unwrap()
            });
            cubes += 1;
            if claimed != found {
                failures.push(format!("exists x. {matrix} -> {qf}: {claimed} vs scan {found}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{crt} congruence systems, {powers} power tests, {cubes} Presburger instances"))
    } else {
        Err(failures.into_iter().take(5).collect::<Vec<_>>().join("\n"))
    }
}

fn power_classes() -> Outcome {
    let reports = [merging_suite(21, 300), coset_suite(21, 300, ordqe::qe_mult::eliminate_mul_q_plus)];
    let bad: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| format!("{}: {:?}", r.name, r.examples)).collect();
    if bad.is_empty() {
        Ok(reports.iter().map(|r| format!("{} ({} checks)", r.name, r.checked)).collect::<Vec<_>>().join(", "))
    } else {
        Err(bad.join("\n"))
    }
}

fn identities() -> Outcome {
    let start = Instant::now();
    let r = identity_suite(25);
    let secs = start.elapsed().as_secs_f64();
    if r.passed() && secs < 5.0 {
        Ok(format!("both definitions of addition on [-25, 25]^3 in {secs:.2}s"))
    } else {
        Err(format!("{:?} in {secs:.2}s", r.examples))
    }
}

/// Exact `a/b` with small parts.
fn small_rational(r: &mut rand_chacha::ChaCha8Rng) -> Rational {
    Rational::new(r.gen_range(1..=60i64), r.gen_range(1..=60i64)).unwrap()
}

/// `p/q` is an m-th power over ℚ⁺, by bisection on integer roots.
fn big_is_power(q: &Rational, m: u32) -> bool {
    fn root(a: &BigInt, m: u32) -> bool {
        let (mut lo, mut hi) = (BigInt::zero(), a.clone() + 1u32);
        while &lo + 1u32 < hi {
            let mid: BigInt = (&lo + &hi) / 2u32;
            if &mid.pow(m) <= a {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        &lo.pow(m) == a
    }
    root(q.numer(), m) && root(q.denom(), m)
}

fn power_witnesses() -> Outcome {
    let mut r = rng(9);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let (a, b) = (small_rational(&mut r), small_rational(&mut r));
        if a == b {
            continue;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let n = r.gen_range(1..=6u32);
        match witness_m10(&lo, &hi, n) {
            Ok(y) => {
                // lo < yⁿ < hi, cross-multiplied over the integers.
                let (yn, yd) = (y.numer().pow(n), y.denom().pow(n));
                let above = lo.numer() * &yd < &yn * lo.denom();
                let below = &yn * hi.denom() < hi.numer() * &yd;
                if !(y.is_positive() && above && below) {
                    failures.push(format!("density {lo} < y^{n} < {hi}: y = {y}"));
                }
            }
            Err(e) => failures.push(format!("density {lo} < y^{n} < {hi}: {e}")),
        }
    }
    for _ in 0..1000 {
        let n = r.gen_range(1..=6u32);
        let k = r.gen_range(1..=3);
        let ms: Vec<u32> = (0..k).map(|_| r.gen_range(2..=6u32)).filter(|m| n % m != 0).collect();
        let xs: Vec<Rational> = (0..ms.len()).map(|_| small_rational(&mut r)).collect();
        match witness_m11(&xs, n, &ms) {
            Ok(y) => {
                let yn = y.pow(i64::from(n));
                for (x, m) in xs.iter().zip(&ms) {
                    let v = yn.clone() * x.clone();
                    if !y.is_positive() || big_is_power(&v, *m) {
                        failures.push(format!("avoidance: y = {y}, y^{n}*{x} is a {m}-th power"));
                    }
                }
            }
            Err(e) => failures.push(format!("avoidance {xs:?} {n} {ms:?}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok("1000 density and 1000 avoidance witnesses".to_string())
    } else {
        Err(failures.into_iter().take(5).collect::<Vec<_>>().join("\n"))
    }
}

fn round_trip(formulas: usize, assignments: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for (k, t) in Theory::ALL.into_iter().enumerate() {
        let mut r = rng(300 + k as u64);
        for _ in 0..formulas {
            let f = FormulaGen::new(&mut r, t).formula();
            match parse_formula(&f.to_string(), t) {
                Ok(g) if g == f => {}
                other => {
                    failures.push(format!("{t}: {f} reparsed as {other:?}"));
                    continue;
                }
            }
            let (g, _) = qe_driver(&f, t);
            let g_back = parse_formula(&g.to_string(), t);
            if g_back.as_ref() != Ok(&g) {
                failures.push(format!("{t}: eliminated {g} reparsed as {g_back:?}"));
                continue;
            }
            let (h, _) = qe_driver(&g, t);
            let vars = f.free_vars();
            for _ in 0..assignments {
                let a = random_assignment(&mut r, t, &vars);
                checks += 1;
                if eval_qf(&g, &a) != eval_qf(&h, &a) {
                    failures.push(format!("{t}: {g} and its re-elimination {h} differ under {a:?}"));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{formulas} formulas per theory, {checks} evaluations"))
    } else {
        Err(failures.into_iter().take(5).collect::<Vec<_>>().join("\n"))
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("battery of closed sentences", battery),
        ("per-quantifier witness sweep", || sweep(500, 50)),
        ("brute-force congruences, powers and Presburger cubes", brute_force),
        ("power-class merging and cosets", power_classes),
        ("definitions of addition", identities),
        ("density and avoidance witnesses", power_witnesses),
        ("round trip and idempotence", || round_trip(1000, 50)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => say(&format!("criterion {}: PASS {name}: {detail} [{secs:.1}s]", i + 1)),
            Err(detail) => {
                say(&format!("criterion {}: FAIL {name} [{secs:.1}s]\n{detail}", i + 1));
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn sweep_rejects_wrong_steps() {
    let matrix = parse_formula("u < x /\\ x < v", Theory::DloQ).unwrap();
    let at = |u: i64, v: i64| -> Assignment {
        [("u", u), ("v", v)].into_iter().map(|(n, k)| (Var::new(n), ordqe::eval::Value::Rational(Rational::from_integer(k)))).collect()
    };
    let step = |result| LocalStep { var: Var::new("x"), matrix: matrix.clone(), result };
    let always = step(Formula::True);
    assert!(Level::new(&always, Theory::DloQ).check(Theory::DloQ, &at(1, 0)).is_err());
    assert_eq!(Level::new(&always, Theory::DloQ).check(Theory::DloQ, &at(0, 1)), Ok(true));
    let never = step(Formula::False);
    assert!(Level::new(&never, Theory::DloQ).check(Theory::DloQ, &at(0, 1)).is_err());
    assert_eq!(Level::new(&never, Theory::DloQ).check(Theory::DloQ, &at(1, 0)), Ok(false));
}
