use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use amst_core::characterizations::cross_check;
use amst_core::principles::{profile, PrincipleId};
use amst_core::{Amst, AmstError};
use amst_lab::lattice::{report_json, summary, verify_lattice, EdgeStatus, LatticeConfig};
use amst_lab::mine::{mine_any, mine_counterexample, SearchLimits};
use amst_lab::parallel::default_threads;
use amst_lab::registry::{find_example, registered_examples, run_all, run_example, ExampleResult};
use amst_lab::report::{emit_report, Format};
use amst_lab::suite::{run_suite_space, run_theorem_suite, RowStatus};
use amst_lab::{EnumerationSpace, LabError};
use log::info;
use serde_json::json;

use crate::{Cli, Command, Emit, Global, SpaceArgs};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! put {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Amst(e) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<AmstError> for Failure {
    fn from(e: AmstError) -> Self {
        Failure::Io(e.to_string())
    }
}

struct Config {
    global: Global,
    threads: usize,
}

impl Config {
    fn new(global: Global) -> Result<Self, Failure> {
        if global.bound == 0 {
            return Err(Failure::Usage("--bound must be positive".into()));
        }
        if !(1..=64).contains(&global.bit_budget) {
            return Err(Failure::Usage("--bit-budget must be between 1 and 64".into()));
        }
        let threads = match global.threads {
            Some(0) => return Err(Failure::Usage("--threads must be positive".into())),
            Some(t) => t,
            None => default_threads(),
        };
        Ok(Config { global, threads })
    }

    fn space(&self, args: &SpaceArgs) -> Result<EnumerationSpace, Failure> {
        let s = match args.samples {
            Some(n) => EnumerationSpace::random(args.models, args.sentences, n, self.global.seed),
            None => EnumerationSpace::exhaustive(args.models, args.sentences),
        };
        let s = if args.canonical { s.canonical() } else { s };
        s.validate(self.global.bit_budget)?;
        Ok(s)
    }
}

fn ok(clean: bool) -> ExitCode {
    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn no_dot(emit: Emit) -> Result<bool, Failure> {
    match emit {
        Emit::Dot => Err(Failure::Usage("--emit dot is only available for lattice".into())),
        Emit::Json => Ok(true),
        Emit::Text => Ok(false),
    }
}

fn print_json(v: &serde_json::Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json"));
}

pub fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let cfg = Config::new(cli.global)?;
    match cli.command {
        Command::Check { file, emit } => check(&cfg, &file, no_dot(emit)?),
        Command::Enumerate { space, theorems, emit } => enumerate(&cfg, &space, theorems, no_dot(emit)?),
        Command::Examples { list, run, emit } => examples(&cfg, list, run, no_dot(emit)?),
        Command::Lattice { space, cross_check_stride, emit } => lattice(&cfg, &space, cross_check_stride, emit),
        Command::Mine { from, to, models, sentences, samples } => mine(&cfg, from, to, models.zip(sentences), samples),
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn check(cfg: &Config, file: &str, json_out: bool) -> Result<ExitCode, Failure> {
    let amst = Amst::from_json(&read_input(file)?)?;
    let bound = cfg.global.bound;
    let prof = profile(&amst, Some(bound))?;
    let suite = run_theorem_suite(&amst, cfg.global.reading, bound)?;
    let cross = cross_check(&amst, Some(bound))?;
    let violations = suite.violations().count();
    if json_out {
        print_json(&json!({
            "amst": amst.to_value(),
            "profile": prof.to_value(),
            "suite": suite.to_value(),
            "cross_check": cross.to_value(),
            "violations": violations,
        }));
    } else {
        say!("principles");
        for p in PrincipleId::SEMANTIC {
            say!("  {:<14} {}", p.name(), prof.verdict(p));
        }
        say!("theorems ({} reading)", cfg.global.reading);
        for r in &suite.rows {
            let status = match r.status {
                RowStatus::Verified => "verified",
                RowStatus::Refuted if r.finding => "refuted (known finding)",
                RowStatus::Refuted => "REFUTED",
                RowStatus::Unknown => "unknown",
                RowStatus::NotApplicable => "n/a",
            };
            match &r.detail {
                Some(d) if r.status != RowStatus::Verified => say!("  {:<34} {status}: {d}", r.theorem),
                _ => say!("  {:<34} {status}", r.theorem),
            }
        }
        let mismatches: Vec<_> = cross.mismatches().map(|e| e.check.as_str()).collect();
        if mismatches.is_empty() {
            say!("cross-check: clean");
        } else {
            say!("cross-check: mismatches in {}", mismatches.join(", "));
        }
    }
    Ok(ok(violations == 0))
}

fn enumerate(cfg: &Config, args: &SpaceArgs, theorems: bool, json_out: bool) -> Result<ExitCode, Failure> {
    let space = cfg.space(args)?;
    let n = amst_lab::enumerate::count(&space, cfg.global.bit_budget)?;
    if !theorems {
        if json_out {
            print_json(&json!({ "space": space, "count": n }));
        } else {
            say!("{n} amsts");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let agg = run_suite_space(&space, cfg.global.reading, cfg.threads, cfg.global.bit_budget)?;
    if json_out {
        print_json(&json!({ "space": space, "count": n, "suite": agg.to_value() }));
    } else {
        say!("{n} amsts");
        say!("{:<34} {:>9} {:>9} {:>9} {:>9}", "theorem", "verified", "refuted", "unknown", "n/a");
        for r in &agg.rows {
            let mark = if r.refuted > 0 && r.finding { "  known finding" } else { "" };
            say!("{:<34} {:>9} {:>9} {:>9} {:>9}{mark}", r.theorem, r.verified, r.refuted, r.unknown, r.not_applicable);
        }
        say!("violations: {}", agg.violations());
    }
    Ok(ok(agg.violations() == 0))
}

fn print_example(r: &ExampleResult) {
    say!("{}: {}", r.id, r.shows);
    for c in &r.checks {
        let want = if c.expected { "verified" } else { "refuted" };
        say!("  {}: {} (expected {want})", c.principle, c.got.label());
    }
    for (p, v) in &r.manual {
        say!("  manual {p} witness: {}", v.label());
    }
    say!("  {}", if r.passed() { "PASS" } else { "FAIL" });
}

fn examples(cfg: &Config, list: bool, run: Option<String>, json_out: bool) -> Result<ExitCode, Failure> {
    if list || run.is_none() {
        let all = registered_examples();
        if json_out {
            let v: Vec<_> =
                all.iter().map(|e| json!({ "id": e.id, "shows": e.shows, "clause": e.clause, "amst": e.amst().to_value() })).collect();
            print_json(&json!(v));
        } else {
            for e in all {
                say!("{:<28} {}  [{}]", e.id, e.shows, e.clause);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let results = match run.as_deref() {
        Some("") | None => run_all(cfg.global.bound)?,
        Some(id) => vec![run_example(&find_example(id)?, cfg.global.bound)?],
    };
    if json_out {
        print_json(&json!(results.iter().map(|r| r.to_value()).collect::<Vec<_>>()));
    } else {
        for r in &results {
            print_example(r);
        }
    }
    Ok(ok(results.iter().all(|r| r.passed())))
}

fn lattice(cfg: &Config, args: &SpaceArgs, stride: u64, emit: Emit) -> Result<ExitCode, Failure> {
    let space = cfg.space(args)?;
    let examples = run_all(cfg.global.bound)?;
    let config = LatticeConfig { threads: cfg.threads, cross_check_stride: stride, budget: cfg.global.bit_budget };
    info!("verifying lattice over {space:?} with {} threads", cfg.threads);
    let report = verify_lattice(&space, &config, &examples)?;
    match emit {
        Emit::Json => put!("{}", report_json(&report)),
        Emit::Dot => put!("{}", emit_report(&report, Format::Dot)),
        Emit::Text => {
            say!("{} amsts checked", report.checked);
            for e in &report.edges {
                let status = match e.status {
                    EdgeStatus::Holds => "holds".to_string(),
                    EdgeStatus::Counterexample => {
                        format!("counterexample #{}", e.counterexample.as_ref().map_or(0, |c| c.index))
                    }
                    EdgeStatus::NotApplicable => "n/a (below minimum |L|)".to_string(),
                    EdgeStatus::NoWitness => match &e.resolved_by {
                        Some(id) => format!("no finite witness; example {id}"),
                        None => "UNRESOLVED".to_string(),
                    },
                };
                let mark = if e.is_violation() { "  VIOLATION" } else { "" };
                say!("  {:<13} -> {:<13} {:<8} {status}{mark}", e.from.name(), e.to.name(), if e.expected { "arrow" } else { "non" });
            }
            for f in &report.findings {
                say!("finding {}: {}", f.kind, f.detail);
            }
            say!("{}", summary(&report));
        }
    }
    Ok(ok(report.ok))
}

fn mine(cfg: &Config, from: PrincipleId, to: PrincipleId, size: Option<(u32, u32)>, samples: u64) -> Result<ExitCode, Failure> {
    let found = match size {
        Some((models, sentences)) => {
            let space = EnumerationSpace::exhaustive(models, sentences);
            let space = if space.bits() > cfg.global.bit_budget {
                info!("{} bits over budget; sampling {samples}", space.bits());
                EnumerationSpace::random(models, sentences, samples, cfg.global.seed)
            } else {
                space
            };
            mine_counterexample(from, to, &space, cfg.global.bit_budget)?
        }
        None => {
            let limits = SearchLimits { budget: cfg.global.bit_budget, samples, seed: cfg.global.seed, ..SearchLimits::default() };
            mine_any(from, to, &limits)?.map(|m| {
                info!("found at |M|={}, |L|={}", m.space.models, m.space.sentences);
                m.amst
            })
        }
    };
    match found {
        Some(a) => say!("{}", a.to_json()),
        None => say!("none"),
    }
    Ok(ExitCode::SUCCESS)
}
