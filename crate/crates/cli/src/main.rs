//! Command-line surface over the analysis pipeline, with machine-readable
//! JSON reports.
//!
//! Exit codes: 0 success / INVERTIBLE verdict, 1 usage or parse errors,
//! 2 NOT_KELLER, 3 JC_ALERT, 4 `complex verify` reporting a non-complex,
//! 5 corpus items deviating from the expected invariants.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kellerkit_core::autgen::{random_tame, TameAutomorphism};
use kellerkit_core::complexes::{
    generic_rank_profile, koszul_complex, reduce_complex_mod_ideal, verify_complex, FreeComplex,
    RingSpec,
};
use kellerkit_core::groebner::buchberger;
use kellerkit_core::inversion::{graph_ideal, invert_map, verify_inverse};
use kellerkit_core::keller::PolyMap;
use kellerkit_core::polyring::{parse_poly, Polynomial, Rational, VarSet};
use kellerkit_core::presentation::{
    extension_degree, minimal_polynomial, presentation_ideal, search_lambda,
};
use kellerkit_core::ringchecks::{
    analyze, jacobian_ideal, krull_dimension_presentation, normality_verdict, AnalyzeOptions,
    VerdictStatus,
};

use report::{print_value, push_analysis, Report};

/// Default seed for all sample-point randomness; override with --seed.
const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(
    name = "kellerkit",
    version,
    about = "Decides invertibility of Jacobian-constant polynomial maps of the plane",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for sample-point randomness (deterministic by default).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Emit compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Pretty-print the JSON report (compact JSON is the default).
    #[arg(long, global = true)]
    pretty: bool,

    /// Include wall-clock stage timings in the report.  Timed reports are
    /// not byte-stable across runs, so this is off by default.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: Keller gate, presentation, normality, verdict, inverse.
    Check {
        p: String,
        q: String,
        /// Serialize the Gröbner certificates backing the verdict.
        #[arg(long)]
        bundle: bool,
    },
    /// Presentation only: minimal polynomial g, degrees, primitivity.
    Present {
        p: String,
        q: String,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Normality analysis of K[P,Q][x+lambda*y] with its own verdict.
    Normality {
        p: String,
        q: String,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Krull dimension of the presented ring.
    Dim {
        p: String,
        q: String,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Elimination-based inversion with composition verification.
    Invert { p: String, q: String },
    /// Free-complex operations on JSON files.
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
    /// Runs seeded tame automorphisms through the full pipeline.
    Corpus {
        /// Inclusive seed range, e.g. `1..20` (or a single seed).
        range: String,
        /// Moves per automorphism (1..=5).
        #[arg(long, default_value_t = 3)]
        moves: u32,
        /// Payload degree bound per move (2..=6).
        #[arg(long = "max-deg", default_value_t = 4)]
        max_deg: u32,
        /// Write the corpus as JSON lines {seed, moves, forward, inverse}.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LambdaArgs {
    /// Coefficient in the primitive-element candidate x + lambda*y.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    lambda: String,
    /// Search 1, 0, -1, 2, -2, ... for the first good lambda instead.
    #[arg(long)]
    find_lambda: bool,
}

#[derive(Subcommand)]
enum ComplexOp {
    /// Koszul complex on 1..=3 ring elements.
    Koszul {
        /// Elements as polynomial expressions over the ring variables.
        elements: Vec<String>,
        /// Ring variables, comma separated.
        #[arg(long, default_value = "u,v,s")]
        vars: String,
        /// Optional modulus generators for the base ring.
        #[arg(long = "mod")]
        modulus: Vec<String>,
    },
    /// Reduce a complex over the polynomial ring modulo an ideal.
    Reduce {
        file: PathBuf,
        #[arg(long = "mod", required = true)]
        modulus: Vec<String>,
    },
    /// Check the composition-zero property; exit 4 when it fails.
    Verify { file: PathBuf },
    /// Generic rank profile over the fraction field.
    Ranks { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders its own message; usage errors exit 1 by contract
            let _ = err.print();
            return if err.exit_code() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let pretty = cli.pretty;
    let timings = cli.timings;
    match cli.command {
        Command::Check { p, q, bundle } => cmd_check(&p, &q, bundle, seed, pretty, timings),
        Command::Present { p, q, lambda } => cmd_present(&p, &q, &lambda, seed, pretty, timings),
        Command::Normality { p, q, lambda } => {
            cmd_normality(&p, &q, &lambda, seed, pretty, timings)
        }
        Command::Dim { p, q, lambda } => cmd_dim(&p, &q, &lambda, seed, pretty, timings),
        Command::Invert { p, q } => cmd_invert(&p, &q, pretty, timings),
        Command::Complex { op } => cmd_complex(op, pretty),
        Command::Corpus {
            range,
            moves,
            max_deg,
            emit,
        } => cmd_corpus(&range, moves, max_deg, emit, seed, pretty, timings),
    }
}

fn parse_map(p: &str, q: &str) -> Result<PolyMap, String> {
    let vars = VarSet::new(["x", "y"]).expect("distinct");
    let p_poly = parse_poly(p, &vars).map_err(|e| format!("in P: {e}"))?;
    let q_poly = parse_poly(q, &vars).map_err(|e| format!("in Q: {e}"))?;
    PolyMap::new(p_poly, q_poly).map_err(|e| e.to_string())
}

/// Lambda values use the same grammar as polynomial constants: integers and
/// `a/b` rationals, unary minus included.
fn parse_lambda(text: &str) -> Result<Rational, String> {
    let empty = VarSet::new(std::iter::empty::<String>()).map_err(|e| e.to_string())?;
    let poly = parse_poly(text, &empty).map_err(|e| format!("bad lambda `{text}`: {e}"))?;
    poly.constant_value()
        .ok_or_else(|| format!("lambda `{text}` is not a rational constant"))
}

fn input_echo(p: &str, q: &str, map: &PolyMap, extra: &[(&str, Value)]) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("p".into(), json!(p));
    obj.insert("q".into(), json!(q));
    obj.insert("canonical_p".into(), json!(map.p.to_string()));
    obj.insert("canonical_q".into(), json!(map.q.to_string()));
    for (k, v) in extra {
        obj.insert((*k).to_string(), v.clone());
    }
    Value::Object(obj)
}

fn cmd_check(
    p: &str,
    q: &str,
    bundle: bool,
    seed: u64,
    pretty: bool,
    timings: bool,
) -> Result<u8, String> {
    let map = parse_map(p, q)?;
    let input = input_echo(p, q, &map, &[("seed", json!(seed))]);
    let mut report = Report::new("check", input, timings);
    report.stage("parse");
    let analysis =
        analyze(&map, seed, AnalyzeOptions { with_cases: true }).map_err(|e| e.to_string())?;
    report.stage("analyze");
    push_analysis(&mut report, &analysis);
    report.section("verdict", &analysis.verdict);
    if bundle {
        report.section_value("certificates", certificates(&map, &analysis)?);
        report.stage("certificates");
    }
    print_value(&report.finish(), pretty);
    Ok(match analysis.verdict.status {
        VerdictStatus::Invertible => 0,
        VerdictStatus::NotKeller | VerdictStatus::NotInvertibleNotNormal => 2,
        VerdictStatus::JcAlert => 3,
    })
}

/// All Gröbner certificates backing a verdict, serialized reduced bases.
fn certificates(
    map: &PolyMap,
    analysis: &kellerkit_core::ringchecks::Analysis,
) -> Result<Value, String> {
    let mut obj = serde_json::Map::new();
    if let (Some(lambda), Some(pres)) = (&analysis.lambda, &analysis.presentation) {
        let (gens, order) = presentation_ideal(map, lambda).map_err(|e| e.to_string())?;
        let basis = buchberger(&gens, &order).map_err(|e| e.to_string())?;
        obj.insert(
            "presentation_basis".into(),
            serde_json::to_value(&basis).expect("serializable"),
        );
        let jac = jacobian_ideal(&pres.g).map_err(|e| e.to_string())?;
        let basis = buchberger(&jac, &kellerkit_core::groebner::MonomialOrder::Grevlex)
            .map_err(|e| e.to_string())?;
        obj.insert(
            "jacobian_basis".into(),
            serde_json::to_value(&basis).expect("serializable"),
        );
    }
    let (gens, order) = graph_ideal(map).map_err(|e| e.to_string())?;
    let basis = buchberger(&gens, &order).map_err(|e| e.to_string())?;
    obj.insert(
        "graph_basis".into(),
        serde_json::to_value(&basis).expect("serializable"),
    );
    Ok(Value::Object(obj))
}

fn resolve_lambda(map: &PolyMap, args: &LambdaArgs, seed: u64) -> Result<(Rational, bool), String> {
    if args.find_lambda {
        let (lambda, _, _) = search_lambda(map, seed).map_err(|e| e.to_string())?;
        Ok((lambda, true))
    } else {
        Ok((parse_lambda(&args.lambda)?, false))
    }
}

fn cmd_present(
    p: &str,
    q: &str,
    lambda_args: &LambdaArgs,
    seed: u64,
    pretty: bool,
    timings: bool,
) -> Result<u8, String> {
    let map = parse_map(p, q)?;
    let (lambda, searched) = resolve_lambda(&map, lambda_args, seed)?;
    let input = input_echo(
        p,
        q,
        &map,
        &[
            ("lambda", json!(lambda.to_string())),
            ("find_lambda", json!(searched)),
            ("seed", json!(seed)),
        ],
    );
    let mut report = Report::new("present", input, timings);
    report.stage("parse");
    let pres = minimal_polynomial(&map, &lambda).map_err(|e| e.to_string())?;
    report.stage("minimal_polynomial");
    let degree = extension_degree(&map, seed).map_err(|e| e.to_string())?;
    report.stage("extension_degree");
    let primitive = u64::from(pres.s_degree) == degree.extension_degree;
    report.section("presentation", &pres);
    report.section("degree", &degree);
    report.section("primitive", &primitive);
    print_value(&report.finish(), pretty);
    Ok(0)
}

fn cmd_normality(
    p: &str,
    q: &str,
    lambda_args: &LambdaArgs,
    seed: u64,
    pretty: bool,
    timings: bool,
) -> Result<u8, String> {
    let map = parse_map(p, q)?;
    let input = input_echo(p, q, &map, &[("seed", json!(seed))]);
    let mut report = Report::new("normality", input, timings);
    report.stage("parse");
    // the analysis always uses a good lambda; an explicit --lambda only
    // changes the presentation section shown alongside
    let analysis =
        analyze(&map, seed, AnalyzeOptions { with_cases: false }).map_err(|e| e.to_string())?;
    report.stage("analyze");
    push_analysis(&mut report, &analysis);
    if !lambda_args.find_lambda {
        let lambda = parse_lambda(&lambda_args.lambda)?;
        if Some(&lambda) != analysis.lambda.as_ref() {
            let pres = minimal_polynomial(&map, &lambda).map_err(|e| e.to_string())?;
            report.section("presentation_at_lambda", &pres);
        }
    }
    report.section("verdict", &normality_verdict(&analysis));
    print_value(&report.finish(), pretty);
    Ok(0)
}

fn cmd_dim(
    p: &str,
    q: &str,
    lambda_args: &LambdaArgs,
    seed: u64,
    pretty: bool,
    timings: bool,
) -> Result<u8, String> {
    let map = parse_map(p, q)?;
    let (lambda, searched) = resolve_lambda(&map, lambda_args, seed)?;
    let input = input_echo(
        p,
        q,
        &map,
        &[
            ("lambda", json!(lambda.to_string())),
            ("find_lambda", json!(searched)),
        ],
    );
    let mut report = Report::new("dim", input, timings);
    report.stage("parse");
    let pres = minimal_polynomial(&map, &lambda).map_err(|e| e.to_string())?;
    let krull = krull_dimension_presentation(&pres).map_err(|e| e.to_string())?;
    report.stage("dimension");
    report.section("presentation", &pres);
    report.section_value("dimension", json!({ "krull": krull }));
    print_value(&report.finish(), pretty);
    Ok(0)
}

fn cmd_invert(p: &str, q: &str, pretty: bool, timings: bool) -> Result<u8, String> {
    let map = parse_map(p, q)?;
    let input = input_echo(p, q, &map, &[]);
    let mut report = Report::new("invert", input, timings);
    report.stage("parse");
    let result = invert_map(&map).map_err(|e| e.to_string())?;
    report.stage("invert");
    let verified = match result.as_map() {
        Some(inv) => verify_inverse(&map, &inv).map_err(|e| e.to_string())?,
        None => false,
    };
    report.section("inverse", &result);
    report.section("verified", &verified);
    print_value(&report.finish(), pretty);
    Ok(0)
}

fn load_complex(path: &PathBuf) -> Result<FreeComplex, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json: kellerkit_core::complexes::ComplexJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    FreeComplex::from_json(&json).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_complex(op: ComplexOp, pretty: bool) -> Result<u8, String> {
    match op {
        ComplexOp::Koszul {
            elements,
            vars,
            modulus,
        } => {
            let names: Vec<&str> = vars.split(',').map(str::trim).collect();
            let varset = VarSet::new(names).map_err(|e| e.to_string())?;
            let parse = |t: &String| parse_poly(t, &varset).map_err(|e| format!("`{t}`: {e}"));
            let elements: Vec<Polynomial> = elements.iter().map(parse).collect::<Result<_, _>>()?;
            let modulus: Vec<Polynomial> = modulus.iter().map(parse).collect::<Result<_, _>>()?;
            let ring = RingSpec::quotient(&varset, modulus).map_err(|e| e.to_string())?;
            let complex = koszul_complex(&elements, &ring).map_err(|e| e.to_string())?;
            let value = serde_json::to_value(complex.to_json()).expect("serializable");
            print_value(&value, pretty);
            Ok(0)
        }
        ComplexOp::Reduce { file, modulus } => {
            let complex = load_complex(&file)?;
            let parse =
                |t: &String| parse_poly(t, &complex.ring.vars).map_err(|e| format!("`{t}`: {e}"));
            let ideal: Vec<Polynomial> = modulus.iter().map(parse).collect::<Result<_, _>>()?;
            let reduced = reduce_complex_mod_ideal(&complex, &ideal).map_err(|e| e.to_string())?;
            let value = serde_json::to_value(reduced.to_json()).expect("serializable");
            print_value(&value, pretty);
            Ok(0)
        }
        ComplexOp::Verify { file } => {
            let complex = load_complex(&file)?;
            let ok = verify_complex(&complex).map_err(|e| e.to_string())?;
            print_value(&json!({ "complex_ok": ok }), pretty);
            Ok(if ok { 0 } else { 4 })
        }
        ComplexOp::Ranks { file } => {
            let complex = load_complex(&file)?;
            let profile = generic_rank_profile(&complex).map_err(|e| e.to_string())?;
            let value = serde_json::to_value(&profile).expect("serializable");
            print_value(&value, pretty);
            Ok(0)
        }
    }
}

fn parse_range(text: &str) -> Result<(u64, u64), String> {
    if let Some((a, b)) = text.split_once("..") {
        let lo = a
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("bad range `{text}`"))?;
        let hi = b
            .trim_start_matches('=')
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("bad range `{text}`"))?;
        if lo > hi {
            return Err(format!("empty range `{text}`"));
        }
        Ok((lo, hi))
    } else {
        let v = text
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("bad range `{text}`"))?;
        Ok((v, v))
    }
}

struct CorpusItem {
    seed: u64,
    tame: TameAutomorphism,
    analysis: kellerkit_core::ringchecks::Analysis,
    inverse_verified: bool,
    matches_tracked: bool,
}

impl CorpusItem {
    fn deviates(&self) -> bool {
        self.analysis.verdict.status != VerdictStatus::Invertible
            || self.analysis.presentation.as_ref().map(|p| p.s_degree) != Some(1)
            || self.analysis.normality.as_ref().map(|n| n.normal) != Some(true)
            || self.analysis.primitive != Some(true)
            || !self.inverse_verified
            || !self.matches_tracked
    }
}

fn run_corpus_item(
    seed: u64,
    moves: u32,
    max_deg: u32,
    sample_seed: u64,
    with_cases: bool,
) -> Result<CorpusItem, String> {
    let tame = random_tame(seed, moves, max_deg).map_err(|e| format!("seed {seed}: {e}"))?;
    let analysis = analyze(&tame.forward, sample_seed, AnalyzeOptions { with_cases })
        .map_err(|e| format!("seed {seed}: {e}"))?;
    let (inverse_verified, matches_tracked) = match &analysis.verdict.inverse {
        Some(inv) => (
            verify_inverse(&tame.forward, inv).map_err(|e| e.to_string())?,
            *inv == tame.inverse,
        ),
        None => (false, false),
    };
    Ok(CorpusItem {
        seed,
        tame,
        analysis,
        inverse_verified,
        matches_tracked,
    })
}

fn cmd_corpus(
    range: &str,
    moves: u32,
    max_deg: u32,
    emit: Option<PathBuf>,
    seed: u64,
    pretty: bool,
    timings: bool,
) -> Result<u8, String> {
    let (lo, hi) = parse_range(range)?;
    let single = lo == hi;
    let input = json!({
        "range": range,
        "n_moves": moves,
        "max_deg": max_deg,
        "seed": seed,
    });
    let mut report = Report::new("corpus", input, timings);
    report.stage("parse");

    let seeds: Vec<u64> = (lo..=hi).collect();
    let pool = thread_pool()?;
    let items: Vec<Result<CorpusItem, String>> = pool.install(|| {
        use rayon::prelude::*;
        seeds
            .par_iter()
            .map(|&s| run_corpus_item(s, moves, max_deg, seed, single))
            .collect()
    });
    report.stage("pipeline");

    let mut rows = Vec::new();
    let mut deviations = Vec::new();
    let mut invertible = 0usize;
    let mut items_ok = Vec::new();
    for item in items {
        let item = item?;
        if item.analysis.verdict.status == VerdictStatus::Invertible {
            invertible += 1;
        }
        if item.deviates() {
            deviations.push(item.seed);
        }
        rows.push(json!({
            "seed": item.seed,
            "status": serde_json::to_value(item.analysis.verdict.status).expect("status"),
            "s_degree": item.analysis.presentation.as_ref().map(|p| p.s_degree),
            "lambda": item.analysis.lambda.as_ref().map(|l| l.to_string()),
            "extension_degree": item.analysis.degree.as_ref().map(|d| d.extension_degree),
            "normal": item.analysis.normality.as_ref().map(|n| n.normal),
            "inverse_verified": item.inverse_verified,
            "matches_tracked_inverse": item.matches_tracked,
            "forward_degree": item.tame.forward.p.total_degree().unwrap_or(0)
                .max(item.tame.forward.q.total_degree().unwrap_or(0)),
        }));
        items_ok.push(item);
    }

    report.section_value(
        "summary",
        json!({
            "count": items_ok.len(),
            "invertible": invertible,
            "all_g_linear": items_ok
                .iter()
                .all(|i| i.analysis.presentation.as_ref().map(|p| p.s_degree) == Some(1)),
            "deviations": deviations,
        }),
    );
    report.section_value("items", Value::Array(rows));

    if single {
        // embed the full per-map report
        let item = &items_ok[0];
        let mut embedded = Report::new(
            "check",
            input_echo(
                &item.tame.forward.p.to_string(),
                &item.tame.forward.q.to_string(),
                &item.tame.forward,
                &[("seed", json!(seed))],
            ),
            false,
        );
        push_analysis(&mut embedded, &item.analysis);
        embedded.section("verdict", &item.analysis.verdict);
        report.section_value("report", embedded.finish());
    }

    if let Some(path) = emit {
        let mut lines = String::new();
        for item in &items_ok {
            lines.push_str(&serde_json::to_string(&item.tame).expect("serializable"));
            lines.push('\n');
        }
        std::fs::write(&path, lines)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        report.stage("emit");
    }

    let code = if deviations.is_empty() { 0 } else { 5 };
    print_value(&report.finish(), pretty);
    Ok(code)
}

/// Worker pool honoring KELLERKIT_THREADS.
fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var("KELLERKIT_THREADS") {
        let n: usize = text
            .parse()
            .map_err(|_| format!("KELLERKIT_THREADS must be a positive integer, got `{text}`"))?;
        if n == 0 {
            return Err("KELLERKIT_THREADS must be positive".into());
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}
