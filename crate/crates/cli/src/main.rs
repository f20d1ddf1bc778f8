//! Command-line surface for the exact q-trinomial / Bailey-pair library.
//!
//! Three subcommands:
//! - `tri`: evaluate a q-trinomial coefficient (the polynomial form, T_n,
//!   Q_n, or both Q_n routes with a diff status);
//! - `verify`: run one of the identity checks against a builtin pair or a
//!   pair document on disk;
//! - `catalog`: list, inspect, and export the built-in pairs.
//!
//! Exit codes: 0 pass/success, 1 verified mismatch, 2 usage or document
//! errors, 3 insufficient guaranteed order (a truncation shortfall is
//! never allowed to look like a counterexample or a pass).

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qtrinom::bailey::{
    check_ab_lemma, check_cor1, check_cor2, verify_binomial_pair, verify_transform,
    verify_trinomial_pair, CheckStatus, LhsLimit, Outcome, VerificationReport,
};
use qtrinom::catalog::{
    builtin, builtin_document, builtin_names, document_to_json, instantiate, load_pair_document,
    BetaSpec, Pair, PairKind,
};
use qtrinom::qspecial::{poch_finite, q_n, t_n, trinomial, Mode, MonomialArg};
use qtrinom::series::{equal_to_order, Comparison, Units};
use qtrinom::{Error, QSeries};

#[derive(Parser)]
#[command(name = "qtrinom", version, about = "Exact q-trinomial coefficients and Bailey-pair verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a q-trinomial coefficient
    Tri(TriArgs),
    /// Verify a pair relation or a summed identity
    Verify(VerifyArgs),
    /// List, inspect, and export catalog pairs
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriDef {
    /// The exact polynomial form with explicit parameter B
    Poly,
    /// T_n(L,A): the q -> 1/q form, exact
    #[value(name = "T")]
    T,
    /// Q_n(L,A) = T_n/(q)_L via the s-sum, truncated at --order
    #[value(name = "Q")]
    Q,
    /// Both Q_n routes (s-sum and T_n/(q)_L) with a diff status
    Both,
}

impl TriDef {
    fn as_str(self) -> &'static str {
        match self {
            TriDef::Poly => "poly",
            TriDef::T => "T",
            TriDef::Q => "Q",
            TriDef::Both => "both",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    T,
    Q,
}

impl UnitsArg {
    fn units(self) -> Units {
        match self {
            UnitsArg::T => Units::T,
            UnitsArg::Q => Units::Q,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct TriArgs {
    /// Which object to evaluate
    #[arg(long = "def", value_enum)]
    def: TriDef,
    #[arg(long = "L")]
    l: i64,
    #[arg(long = "A")]
    a: i64,
    /// Parameter B (required for --def poly)
    #[arg(long = "B")]
    b: Option<i64>,
    /// Relative mode n in {0,1} (required for T, Q, both)
    #[arg(long)]
    n: Option<i64>,
    /// Working order in t-units
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    #[arg(long, value_enum, default_value = "q")]
    units: UnitsArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Report wall-clock timing in the structured output
    #[arg(long, default_value_t = false)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    /// The binomial Bailey relation, indices 0..=Lmax
    Pair,
    /// The trinomial Bailey relation, indices 0..=Lmax
    Tripair,
    /// The per-L binomial->trinomial transform identity, L = 0..=Lmax
    Transform,
    /// The summed trinomial Bailey lemma at parameter M
    AbLemma,
    /// The n=0 corollary identity (infinite sums)
    Cor1,
    /// The n=1 corollary identity (infinite sums)
    Cor2,
}

impl IdentityArg {
    fn as_str(self) -> &'static str {
        match self {
            IdentityArg::Pair => "pair",
            IdentityArg::Tripair => "tripair",
            IdentityArg::Transform => "transform",
            IdentityArg::AbLemma => "ab-lemma",
            IdentityArg::Cor1 => "cor1",
            IdentityArg::Cor2 => "cor2",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LhsLimitArg {
    /// Cut the left sum at M (the convention under which the lemma holds)
    #[value(name = "M")]
    M,
    /// Run the left sum until it leaves the window (fails; kept for the
    /// convention experiment)
    OrderBounded,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    /// Pair source: builtin:<name> or a path to a .pair.json document
    #[arg(long)]
    pair: String,
    /// Largest index to check (pair, tripair, transform)
    #[arg(long = "Lmax")]
    l_max: Option<i64>,
    /// Lemma parameter M (ab-lemma)
    #[arg(long = "M")]
    m: Option<i64>,
    /// Relative mode n in {0,1} (transform only; other identities read it
    /// from the pair)
    #[arg(long)]
    n: Option<i64>,
    /// Working order in t-units
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    #[arg(long = "lhs-limit", value_enum, default_value = "M")]
    lhs_limit: LhsLimitArg,
    /// Scan cap for the corollary sums (default: order + 1)
    #[arg(long = "Lcap")]
    l_cap: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Report wall-clock timing in the structured output
    #[arg(long, default_value_t = false)]
    timing: bool,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List builtin pair names
    List,
    /// Show a builtin pair and selected entries
    Show {
        name: String,
        /// Print alpha at these indices
        #[arg(long = "alpha")]
        alpha: Vec<i64>,
        /// Print beta at these indices
        #[arg(long = "beta")]
        beta: Vec<i64>,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        #[arg(long, value_enum, default_value = "q")]
        units: UnitsArg,
    },
    /// Print a builtin pair as a loadable document
    Export { name: String },
}

// ---------------------------------------------------------------------------
// Structured output
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MismatchJson {
    exp_t: i64,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct CheckJson {
    index: i64,
    status: &'static str,
    mismatch: Option<MismatchJson>,
}

#[derive(Serialize)]
struct SeriesJson {
    label: String,
    exact: bool,
    order: Option<i64>,
    terms: Vec<(i64, String)>,
    display: String,
}

#[derive(Serialize)]
struct RunJson {
    command: String,
    config: serde_json::Value,
    verdict: Option<String>,
    checks: Option<Vec<CheckJson>>,
    series: Option<Vec<SeriesJson>>,
    timing_ms: Option<u128>,
}

fn series_json(label: &str, s: &QSeries, units: Units) -> SeriesJson {
    SeriesJson {
        label: label.to_string(),
        exact: s.is_exact(),
        order: s.order(),
        terms: s.terms().map(|(e, c)| (e, c.to_string())).collect(),
        display: s.display(units).to_string(),
    }
}

fn checks_json(report: &VerificationReport) -> Vec<CheckJson> {
    report
        .checks
        .iter()
        .map(|c| match &c.status {
            CheckStatus::Pass => CheckJson { index: c.index, status: "pass", mismatch: None },
            CheckStatus::Fail { exp_t, lhs, rhs } => CheckJson {
                index: c.index,
                status: "fail",
                mismatch: Some(MismatchJson {
                    exp_t: *exp_t,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }),
            },
            CheckStatus::InsufficientOrder { .. } => {
                CheckJson { index: c.index, status: "insufficient-order", mismatch: None }
            }
        })
        .collect()
}

fn emit(run: &RunJson) {
    println!("{}", serde_json::to_string_pretty(run).expect("output serialization"));
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn outcome_code(outcome: Outcome) -> ExitCode {
    match outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
        Outcome::InsufficientOrder => ExitCode::from(3),
    }
}

fn load_source(src: &str) -> Result<Pair, String> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(src).map_err(|e| format!("cannot read '{src}': {e}"))?;
    let doc = load_pair_document(&text).map_err(|e| e.to_string())?;
    instantiate(&doc).map_err(|e| e.to_string())
}

fn mode_flag(n: Option<i64>) -> Result<Mode, ExitCode> {
    match n {
        Some(v) => Mode::try_new(v).map_err(|e| usage_error(&e.to_string())),
        None => Err(usage_error("this definition requires --n 0|1")),
    }
}

fn cmd_tri(args: TriArgs) -> ExitCode {
    let started = Instant::now();
    let units = args.units.units();
    let mut series: Vec<(String, QSeries)> = Vec::new();
    let mut verdict: Option<Outcome> = None;

    match args.def {
        TriDef::Poly => {
            let Some(b) = args.b else {
                return usage_error("--def poly requires --B");
            };
            match trinomial(args.l, b, args.a) {
                Ok(s) => series.push(("poly".into(), s)),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
        TriDef::T => {
            let mode = match mode_flag(args.n) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match t_n(mode, args.l, args.a) {
                Ok(s) => series.push(("T".into(), s)),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
        TriDef::Q => {
            let mode = match mode_flag(args.n) {
                Ok(m) => m,
                Err(code) => return code,
            };
            if args.l < 0 {
                return usage_error("--L must be nonnegative for Q");
            }
            series.push(("Q".into(), q_n(mode, args.l, args.a, args.order)));
        }
        TriDef::Both => {
            let mode = match mode_flag(args.n) {
                Ok(m) => m,
                Err(code) => return code,
            };
            if args.l < 0 {
                return usage_error("--L must be nonnegative");
            }
            let via_sum = q_n(mode, args.l, args.a, args.order);
            let via_t = (|| -> Result<QSeries, Error> {
                let t = t_n(mode, args.l, args.a)?;
                let poch_inv =
                    poch_finite(MonomialArg::q(), args.l)?.truncate(args.order)?.invert()?;
                Ok(t.mul(&poch_inv))
            })();
            let via_t = match via_t {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            verdict = Some(match equal_to_order(&via_sum, &via_t, args.order) {
                Ok(Comparison::Equal) => Outcome::Pass,
                Ok(Comparison::Mismatch { .. }) => Outcome::Fail,
                Err(_) => Outcome::InsufficientOrder,
            });
            series.push(("Q-via-s-sum".into(), via_sum));
            series.push(("Q-via-T".into(), via_t));
        }
    }

    let code = verdict.map_or(ExitCode::SUCCESS, outcome_code);
    match args.format {
        FormatArg::Text => {
            for (label, s) in &series {
                if series.len() > 1 {
                    println!("{label}: {}", s.display(units));
                } else {
                    println!("{}", s.display(units));
                }
            }
            if let Some(v) = verdict {
                println!("routes: {}", if v == Outcome::Pass { "agree" } else { "disagree" });
            }
        }
        FormatArg::Json => {
            let config = serde_json::json!({
                "def": args.def.as_str(),
                "L": args.l,
                "A": args.a,
                "B": args.b,
                "n": args.n,
                "order": args.order,
                "units": if args.units == UnitsArg::T { "t" } else { "q" },
            });
            emit(&RunJson {
                command: "tri".into(),
                config,
                verdict: verdict.map(|v| v.to_string()),
                checks: None,
                series: Some(
                    series.iter().map(|(label, s)| series_json(label, s, units)).collect(),
                ),
                timing_ms: args.timing.then(|| started.elapsed().as_millis()),
            });
        }
    }
    code
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let started = Instant::now();
    let pair = match load_source(&args.pair) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };
    let order = args.order;
    let l_cap = args.l_cap.unwrap_or(order + 1);
    let lhs_limit = match args.lhs_limit {
        LhsLimitArg::M => LhsLimit::MCutoff,
        LhsLimitArg::OrderBounded => LhsLimit::OrderBounded,
    };

    let report: Result<VerificationReport, Error> = match args.identity {
        IdentityArg::Pair => match pair.as_binomial() {
            Some(p) => Ok(verify_binomial_pair(p, args.l_max.unwrap_or(20), order)),
            None => return usage_error("'pair' needs a binomial pair"),
        },
        IdentityArg::Tripair => match pair.as_trinomial() {
            Some(p) => Ok(verify_trinomial_pair(p, args.l_max.unwrap_or(20), order)),
            None => return usage_error("'tripair' needs a trinomial pair"),
        },
        IdentityArg::Transform => match pair.as_binomial() {
            Some(p) => {
                let mode = match mode_flag(args.n) {
                    Ok(m) => m,
                    Err(code) => return code,
                };
                let l_max = args.l_max.unwrap_or(12);
                let mut checks = Vec::new();
                for l in 0..=l_max {
                    checks.extend(verify_transform(p, mode, l, order).checks);
                }
                Ok(VerificationReport {
                    identity: "transform".into(),
                    params: format!(
                        "label={}, ell={}, n={}, L_max={}, order={}",
                        p.label(),
                        p.ell(),
                        mode,
                        l_max,
                        order
                    ),
                    checks,
                })
            }
            None => return usage_error("'transform' needs a binomial pair"),
        },
        IdentityArg::AbLemma => match pair.as_trinomial() {
            Some(p) => {
                let Some(m) = args.m else {
                    return usage_error("'ab-lemma' requires --M");
                };
                check_ab_lemma(p, m, order, lhs_limit)
            }
            None => return usage_error("'ab-lemma' needs a trinomial pair"),
        },
        IdentityArg::Cor1 => match pair.as_trinomial() {
            Some(p) => check_cor1(p, order, l_cap),
            None => return usage_error("'cor1' needs a trinomial pair"),
        },
        IdentityArg::Cor2 => match pair.as_trinomial() {
            Some(p) => check_cor2(p, order, l_cap),
            None => return usage_error("'cor2' needs a trinomial pair"),
        },
    };

    let report = match report {
        Ok(r) => r,
        Err(e @ (Error::ScanCapReached { .. } | Error::NonconvergentSum { .. })) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
        Err(e) => return usage_error(&e.to_string()),
    };

    match args.format {
        FormatArg::Text => println!("{report}"),
        FormatArg::Json => {
            let config = serde_json::json!({
                "identity": args.identity.as_str(),
                "pair": args.pair,
                "order": order,
                "l_max": args.l_max,
                "m": args.m,
                "n": args.n,
                "lhs_limit": match args.lhs_limit {
                    LhsLimitArg::M => "M",
                    LhsLimitArg::OrderBounded => "order-bounded",
                },
                "l_cap": args.l_cap,
            });
            emit(&RunJson {
                command: "verify".into(),
                config,
                verdict: Some(report.outcome().to_string()),
                checks: Some(checks_json(&report)),
                series: None,
                timing_ms: args.timing.then(|| started.elapsed().as_millis()),
            });
        }
    }
    outcome_code(report.outcome())
}

fn cmd_catalog(args: CatalogArgs) -> ExitCode {
    match args.action {
        CatalogAction::List => {
            for name in builtin_names() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        CatalogAction::Export { name } => match builtin_document(&name) {
            Ok(doc) => {
                print!("{}", document_to_json(&doc));
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e.to_string()),
        },
        CatalogAction::Show { name, alpha, beta, order, units } => {
            let doc = match builtin_document(&name) {
                Ok(d) => d,
                Err(e) => return usage_error(&e.to_string()),
            };
            let pair = match instantiate(&doc) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            let units = units.units();
            let mut out = String::new();
            match &pair {
                Pair::Binomial(p) => {
                    writeln!(out, "{} (binomial, ell={})", p.label(), p.ell()).unwrap();
                }
                Pair::Trinomial(p) => {
                    writeln!(out, "{} (trinomial, n={})", p.label(), p.n()).unwrap();
                }
            }
            writeln!(out, "alpha: {} branch(es)", doc.alpha.branches.len()).unwrap();
            for i in alpha {
                let a = match &pair {
                    Pair::Binomial(p) => p.alpha(i),
                    Pair::Trinomial(p) => p.alpha(i),
                };
                writeln!(out, "alpha_{} = {}", i, a.display(units)).unwrap();
            }
            for i in beta {
                if i < 0 {
                    return usage_error("--beta index must be nonnegative");
                }
                let b = match &pair {
                    Pair::Binomial(p) => p.beta(i, order),
                    Pair::Trinomial(p) => p.beta(i, order),
                };
                let closed = match (doc.kind, &doc.beta) {
                    (PairKind::Binomial, Some(BetaSpec::Closed(c))) => {
                        format!("{} = ", c.describe(i))
                    }
                    _ => String::new(),
                };
                writeln!(out, "beta_{} = {}{}", i, closed, b.display(units)).unwrap();
            }
            print!("{out}");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Tri(args) => cmd_tri(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Catalog(args) => cmd_catalog(args),
    }
}
