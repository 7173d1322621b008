//! Argument handling and report rendering for the `ordqe` binary. Every
//! command returns a [`Report`] instead of printing, so the exit-code and
//! output contracts can be tested in-process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordqe::eval::{check_assignment, eval_qf, parse_assignment, search_witness, witness_block, Assignment, Witness};
use ordqe::selftest::{run_selftest, SelftestConfig, SuiteReport};
use ordqe::syntax::{decide, parse_formula, print_formula, qe_driver, Formula, QeTrace, Theory};
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Parser)]
#[command(name = "ordqe", version, about = "Quantifier elimination and decisions over ordered structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decides a sentence: exit 0 if true, 1 if false.
    Decide(Input),
    /// Prints a quantifier-free equivalent.
    Eliminate(Input),
    /// Finds values for the leading existential block.
    Witness {
        #[command(flatten)]
        input: Input,
        /// Values of the free variables, as `y=0,z=1/2`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Runs the built-in oracle suites.
    Selftest {
        #[command(flatten)]
        output: Output,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random instances for each randomized suite.
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// One of dlo-q, dlo-r, order-z, order-n, odag-q, odag-r, presburger-z,
    /// presburger-n, mul-r, mul-q, mul-q-pos.
    #[arg(long, value_parser = parse_theory)]
    pub theory: Theory,
    pub formula: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include the rewriting steps.
    #[arg(long)]
    pub trace: bool,
    /// Height or range bound for the fallback witness search.
    #[arg(long, default_value_t = 100)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug, Default)]
pub struct Report {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn error(msg: impl std::fmt::Display) -> Report {
        Report { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

pub fn run(cli: &Cli) -> Report {
    match &cli.command {
        Command::Decide(i) => cmd_decide(i),
        Command::Eliminate(i) => cmd_eliminate(i),
        Command::Witness { input, assign } => cmd_witness(input, assign),
        Command::Selftest { output, json, seed, instances } => {
            let cfg = SelftestConfig { seed: *seed, instances: *instances, ..SelftestConfig::default() };
            let format = if *json { Format::Json } else { output.format };
            cmd_selftest(&cfg, format)
        }
    }
}

fn trace_json(t: &QeTrace) -> Json {
    t.steps
        .iter()
        .map(|s| json!({"rule": s.rule, "anchor": s.anchor, "before": print_formula(&s.before), "after": print_formula(&s.after)}))
        .collect()
}

fn trace_text(t: &QeTrace) -> String {
    t.steps.iter().map(|s| format!("  {s}\n")).collect()
}

/// The shared header of every JSON report, plus the trace when asked for.
fn base(i: &Input, trace: &QeTrace) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("theory".into(), json!(i.theory.id()));
    m.insert("input".into(), json!(i.formula));
    if i.output.trace {
        m.insert("trace".into(), trace_json(trace));
    }
    m
}

fn render(i: &Input, m: Map<String, Json>, text: String, trace: &QeTrace, code: u8) -> Report {
    let stdout = match i.output.format {
        Format::Json => format!("{}\n", Json::Object(m)),
        Format::Text if i.output.trace => format!("{text}\n{}", trace_text(trace)),
        Format::Text => format!("{text}\n"),
    };
    Report { code, stdout, stderr: String::new() }
}

fn cmd_decide(i: &Input) -> Report {
    let f = match parse_formula(&i.formula, i.theory) {
        Ok(f) => f,
        Err(e) => return Report::error(e),
    };
    match decide(&f, i.theory) {
        Ok((truth, trace)) => {
            let mut m = base(i, &trace);
            m.insert("truth".into(), json!(truth));
            render(i, m, truth.to_string(), &trace, if truth { 0 } else { 1 })
        }
        Err(e) => Report::error(e),
    }
}

fn cmd_eliminate(i: &Input) -> Report {
    let f = match parse_formula(&i.formula, i.theory) {
        Ok(f) => f,
        Err(e) => return Report::error(e),
    };
    let (g, trace) = qe_driver(&f, i.theory);
    let shown = print_formula(&g);
    let mut m = base(i, &trace);
    m.insert("eliminated".into(), json!(shown));
    m.insert("free_variables".into(), g.free_vars().iter().map(|v| v.to_string()).collect());
    if let Formula::True | Formula::False = g {
        m.insert("truth".into(), json!(g == Formula::True));
    }
    render(i, m, shown, &trace, 0)
}

/// Values from the engine's cube extraction, or from the bounded search
/// when extraction reports an internal problem.
fn find_witness(f: &Formula, theory: Theory, a: &Assignment, budget: u64) -> Result<Option<Witness>, String> {
    match witness_block(f, theory, a) {
        Ok(w) => Ok(w),
        Err(e) => match search_witness(f, theory, a, budget) {
            Ok(Some(w)) => Ok(Some(w)),
            Ok(None) => Err(format!("extraction failed ({e}) and search up to {budget} found nothing")),
            Err(s) => Err(format!("extraction failed ({e}), search failed ({s})")),
        },
    }
}

fn cmd_witness(i: &Input, assign: &str) -> Report {
    let f = match parse_formula(&i.formula, i.theory) {
        Ok(f) => f,
        Err(e) => return Report::error(e),
    };
    if !matches!(f, Formula::Exists(..)) {
        return Report::error("witness expects a formula of the form `exists x. ...`");
    }
    let a = match parse_assignment(assign).and_then(|a| check_assignment(&f, i.theory, &a).map(|_| a)) {
        Ok(a) => a,
        Err(e) => return Report::error(e),
    };
    let (psi, trace) = qe_driver(&f, i.theory);
    let truth = match eval_qf(&psi, &a) {
        Ok(t) => t,
        Err(e) => return Report::error(e),
    };
    let found = match find_witness(&f, i.theory, &a, i.output.budget) {
        Ok(w) => w,
        Err(e) => return Report::error(e),
    };
    let mut m = base(i, &trace);
    m.insert("eliminated".into(), json!(print_formula(&psi)));
    m.insert("truth".into(), json!(truth));
    let certificate = format!("certificate: {}", print_formula(&psi));
    match (truth, found) {
        (true, Some(w)) if w.verified() => {
            let values: Map<String, Json> = w.values.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
            let text: Vec<String> = w.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            m.insert("witness".into(), Json::Object(values));
            render(i, m, format!("{}\n{certificate}", text.join("\n")), &trace, 0)
        }
        (false, None) => {
            m.insert("witness".into(), Json::Null);
            render(i, m, format!("unsatisfiable\n{certificate}"), &trace, 1)
        }
        (truth, w) => Report::error(format!("elimination says {truth} but the witness route gave {w:?}")),
    }
}

fn suite_json(s: &SuiteReport) -> Json {
    json!({"name": s.name, "passed": s.passed(), "checked": s.checked, "failed": s.failed, "examples": s.examples})
}

pub fn cmd_selftest(cfg: &SelftestConfig, format: Format) -> Report {
    let reports = run_selftest(cfg);
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    let code = u8::from(!failed.is_empty());
    let stdout = match format {
        Format::Json => {
            format!("{}\n", json!({"passed": failed.is_empty(), "suites": reports.iter().map(suite_json).collect::<Vec<_>>()}))
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                if r.passed() {
                    out += &format!("PASS {} ({} checked)\n", r.name, r.checked);
                } else {
                    out += &format!("FAIL {} ({} of {} failed)\n", r.name, r.failed, r.checked);
                    for e in &r.examples {
                        out += &format!("  {e}\n");
                    }
                }
            }
            if failed.is_empty() {
                out + "all suites passed\n"
            } else {
                out + &format!("failed suites: {}\n", failed.join(", "))
            }
        }
    };
    Report { code, stdout, stderr: String::new() }
}
