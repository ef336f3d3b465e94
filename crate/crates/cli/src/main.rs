use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lapint::fuzz::{fuzz_trial, BackendKind, FuzzConfig, FuzzReport};
use lapint::json::{interval_from_str, interval_to_json};
use lapint::laplacian::spectrum;
use lapint::matroid::Matroid;
use lapint::poly::SpectrumPolynomial;
use lapint::random::{search_counterexample, trial_seeds};
use lapint::recursion::{check_recursion_all_vertices, recursion_residual, specialization_checks, RecursionVerdict};
use lapint::shifted::{decompose_at, is_shifted_interval, phi_minus, random_shifted_interval, shifted_violation};
use lapint::{Face, Interval, Tolerances};
use rayon::prelude::*;
use serde_json::{json, Value};

mod pipe;

#[derive(Parser)]
#[command(name = "lapint", version, about = "Laplacian spectra of Boolean intervals and the spectral recursion")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Grouping tolerance for non-integral eigenvalues.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Laplacian spectra and the spectrum polynomial of an interval.
    Spectrum {
        /// Path, inline JSON, or `-` for stdin.
        input: String,
    },
    /// Recursion verdicts at one vertex or all of them.
    Check {
        input: String,
        #[arg(long)]
        vertex: Option<usize>,
        /// Also run the q=0, q=1, t=0, t=-1 specialisation checks.
        #[arg(long)]
        specializations: bool,
        /// Exit 1 if any verdict fails.
        #[arg(long)]
        assert: bool,
    },
    /// Apply a pipe of interval operations, e.g. "dual|delete 3|skeleton 1 2".
    Ops {
        input: String,
        #[arg(long)]
        pipe: String,
    },
    /// Shifted intervals: recognition, generation, decomposition at vertex 1.
    #[command(subcommand)]
    Shifted(ShiftedCommand),
    /// Matroids: JSON, or a preset `fano`, `uniform:R:N`, `complete:K`.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Random strong-map pairs IN(M-A) - IN(M/A).
    Fuzz {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// |A|.
        #[arg(long, default_value_t = 2)]
        rank_gap: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Backend::Gf2, Backend::Gf3, Backend::Graphic])]
        backends: Vec<Backend>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Exit 1 if any trial is non-integral or breaks the recursion.
        #[arg(long)]
        assert: bool,
    },
    /// Random intervals until one has a nonzero exact residual.
    SearchCounterexample {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 5000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit 1 if nothing is found.
        #[arg(long)]
        assert: bool,
    },
}

#[derive(Subcommand)]
enum ShiftedCommand {
    /// Whether an interval is shifted, with a witness if not.
    Check {
        input: String,
        #[arg(long)]
        assert: bool,
    },
    /// A random shifted interval.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Φ⁻, 𝒩_Φ, Φ⁺ and Φ′ of a two-dimensional interval.
    Decompose {
        input: String,
        /// The i of (i-1, i); inferred if omitted.
        #[arg(long, allow_hyphen_values = true)]
        top: Option<i32>,
    },
}

#[derive(Subcommand)]
enum MatroidCommand {
    /// Ground set, rank, circuits and the independence complex.
    Info { matroid: String },
    /// (IN(M-e), IN(M/e)) renumbered.
    MinorPair {
        matroid: String,
        #[arg(long)]
        element: usize,
    },
    /// (IN(M-A), IN(M/A)) renumbered.
    StrongMap {
        matroid: String,
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// The minor pair at e split along the circuits through e.
    Decompose {
        matroid: String,
        #[arg(long)]
        element: usize,
    },
    /// Recursion on IN(M) and on every minor pair.
    Check {
        matroid: String,
        #[arg(long)]
        assert: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Gf2,
    Gf3,
    Graphic,
}

impl From<Backend> for BackendKind {
    fn from(b: Backend) -> Self {
        match b {
            Backend::Gf2 => BackendKind::Gf2,
            Backend::Gf3 => BackendKind::Gf3,
            Backend::Graphic => BackendKind::Graphic,
        }
    }
}

/// Rendered output plus whether an `--assert` condition failed.
struct Outcome {
    json: Value,
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, failed: false }
    }
}

struct Limits {
    combinatorial: usize,
    spectral: usize,
}

impl Limits {
    fn from_env() -> Result<Self, String> {
        match std::env::var("LAPINT_MAX_N") {
            Ok(v) => {
                let n = v.trim().parse().map_err(|_| format!("LAPINT_MAX_N: not a number: {v:?}"))?;
                Ok(Limits { combinatorial: n, spectral: n })
            }
            Err(_) => Ok(Limits { combinatorial: 20, spectral: 14 }),
        }
    }

    fn check(&self, n: usize, spectral: bool) -> Result<(), String> {
        let limit = if spectral { self.spectral } else { self.combinatorial };
        if n > limit {
            Err(format!("ground set of size {n} exceeds the limit {limit} (set LAPINT_MAX_N to raise it)"))
        } else {
            Ok(())
        }
    }
}

fn read_source(source: &str) -> Result<String, String> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else if source.trim_start().starts_with('{') {
        Ok(source.to_string())
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))
    }
}

fn load_interval(source: &str, limits: &Limits, spectral: bool) -> Result<Interval, String> {
    let phi = interval_from_str(&read_source(source)?).map_err(|e| e.to_string())?;
    limits.check(phi.ground_size(), spectral)?;
    Ok(phi)
}

fn load_matroid(source: &str) -> Result<Matroid, String> {
    let parts: Vec<&str> = source.split(':').collect();
    let number = |s: &str| s.parse::<usize>().map_err(|_| format!("bad preset {source:?}"));
    let preset = match parts.as_slice() {
        ["fano"] => Some(Ok(Matroid::fano())),
        ["uniform", r, n] => Some(Matroid::uniform(number(r)?, number(n)?)),
        ["complete", k] => Some(Matroid::complete_graph(number(k)?)),
        _ => None,
    };
    let m = match preset {
        Some(m) => m,
        None => {
            let text = read_source(source)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| format!("matroid JSON: {e}"))?;
            Matroid::from_json(&value)
        }
    };
    m.map_err(|e| e.to_string())
}

fn verdict_line(v: &RecursionVerdict) -> String {
    let status = if v.holds { "holds" } else { "FAILS" };
    format!("e={}: {} ({}) residual {}", v.vertex, status, v.mode.as_str(), v.residual)
}

fn interval_text(phi: &Interval) -> String {
    let faces: Vec<String> = phi.faces().map(|f| f.to_string()).collect();
    format!("n={} faces: {}", phi.ground_size(), faces.join(" "))
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let limits = Limits::from_env()?;
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tolerance must be positive, got {t}"));
        }
        tol.group = t;
    }
    let err = |e: lapint::Error| e.to_string();

    match &cli.command {
        Command::Spectrum { input } => {
            let phi = load_interval(input, &limits, true)?;
            let report = spectrum(&phi, &tol).map_err(err)?;
            let poly = SpectrumPolynomial::from_report(&report, &tol);
            let mut text = String::new();
            for d in &report.dims {
                let kind = if d.values.is_exact() { "exact" } else { "numeric" };
                let values: Vec<String> = d.values.as_f64().iter().map(|x| format!("{x}")).collect();
                text += &format!("L_{}: [{}] ({kind})\n", d.dim, values.join(", "));
            }
            text += &format!("S = {poly}");
            Ok(Outcome::ok(json!({"spectrum": report.to_json(), "polynomial": poly.to_json()}), text))
        }
        Command::Check { input, vertex, specializations, assert } => {
            let phi = load_interval(input, &limits, true)?;
            let verdicts: BTreeMap<usize, RecursionVerdict> = match vertex {
                Some(e) => {
                    let v = recursion_residual(&phi, *e, &tol).map_err(err)?;
                    BTreeMap::from([(*e, v)])
                }
                None => check_recursion_all_vertices(&phi, &tol).map_err(err)?,
            };
            let holds = verdicts.values().all(|v| v.holds);
            let mut out = json!({
                "holds": holds,
                "rigorous": verdicts.values().all(RecursionVerdict::is_rigorous),
                "verdicts": verdicts.iter().map(|(e, v)| (e.to_string(), v.to_json())).collect::<serde_json::Map<_, _>>(),
            });
            let mut lines: Vec<String> = verdicts.values().map(verdict_line).collect();
            let mut special_ok = true;
            if *specializations {
                let mut reports = serde_json::Map::new();
                for &e in verdicts.keys() {
                    let r = specialization_checks(&phi, e).map_err(err)?;
                    special_ok &= r.all_pass();
                    lines.push(format!(
                        "e={e}: q=0 {} q=1 {} t=0 {} t=-1 {}",
                        r.q_zero, r.q_one, r.t_zero, r.t_minus_one
                    ));
                    reports.insert(
                        e.to_string(),
                        json!({"q_zero": r.q_zero, "q_one": r.q_one, "t_zero": r.t_zero, "t_minus_one": r.t_minus_one}),
                    );
                }
                out["specializations"] = Value::Object(reports);
            }
            Ok(Outcome { json: out, text: lines.join("\n"), failed: *assert && !(holds && special_ok) })
        }
        Command::Ops { input, pipe } => {
            let phi = load_interval(input, &limits, false)?;
            let result = pipe::run(&phi, pipe)?;
            Ok(Outcome::ok(interval_to_json(&result), interval_text(&result)))
        }
        Command::Shifted(cmd) => run_shifted(cmd, &limits),
        Command::Matroid(cmd) => run_matroid(cmd, &limits, &tol),
        Command::Fuzz { n_min, n_max, rank_gap, backends, trials, seed, jobs, assert } => {
            if n_min > n_max {
                return Err("--n-min exceeds --n-max".into());
            }
            limits.check(n_max + rank_gap, false)?;
            limits.check(*n_max, true)?;
            let config = FuzzConfig {
                n_min: *n_min,
                n_max: *n_max,
                rank_gap: *rank_gap,
                backends: backends.iter().map(|&b| b.into()).collect(),
                trials: *trials,
                seed: *seed,
            };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(*jobs.max(&1)).build().map_err(|e| e.to_string())?;
            let records = pool.install(|| {
                trial_seeds(config.seed, config.trials)
                    .into_par_iter()
                    .enumerate()
                    .map(|(trial, s)| fuzz_trial(&config, trial, s, &tol))
                    .collect::<lapint::Result<Vec<_>>>()
            });
            let report = FuzzReport::from_records(records.map_err(err)?);
            let text = format!(
                "trials {} integral {} recursion {} rigorous {} passed {}{}",
                report.trials(),
                report.integral(),
                report.recursion_holds(),
                report.rigorous(),
                report.passed(),
                report
                    .counterexamples()
                    .map(|r| format!("\nfinding: trial {} seed {}", r.trial, r.seed))
                    .collect::<String>()
            );
            let failed = *assert && report.passed() < report.trials();
            Ok(Outcome { json: report.to_json(&config), text, failed })
        }
        Command::SearchCounterexample { n, trials, seed, assert } => {
            limits.check(*n, true)?;
            let found = search_counterexample(*n, *trials, *seed, &tol).map_err(err)?;
            Ok(match found {
                Some(c) => {
                    let text = format!(
                        "found at trial {} (replay seed {}): {}\n{}",
                        c.trial,
                        c.replay_seed,
                        interval_text(&c.interval),
                        verdict_line(&c.verdict)
                    );
                    let mut j = c.to_json();
                    j["found"] = json!(true);
                    j["n"] = json!(n);
                    Outcome::ok(j, text)
                }
                None => Outcome {
                    json: json!({"found": false, "n": n, "trials": trials, "seed": seed}),
                    text: "none found".into(),
                    failed: *assert,
                },
            })
        }
    }
}

fn run_shifted(cmd: &ShiftedCommand, limits: &Limits) -> Result<Outcome, String> {
    match cmd {
        ShiftedCommand::Check { input, assert } => {
            let phi = load_interval(input, limits, false)?;
            let violation = shifted_violation(&phi);
            let shifted = violation.is_none();
            let (witness, text) = match violation {
                None => (Value::Null, "shifted".to_string()),
                Some((f, g, h)) => (
                    json!([f.to_vec(), g.to_vec(), h.to_vec()]),
                    format!("not shifted: {f} ≤_S {g} ≤_S {h} with {g} missing"),
                ),
            };
            Ok(Outcome { json: json!({"shifted": shifted, "witness": witness}), text, failed: *assert && !shifted })
        }
        ShiftedCommand::Gen { n, seed } => {
            limits.check(*n, false)?;
            let phi = random_shifted_interval(*n, *seed);
            debug_assert!(is_shifted_interval(&phi));
            Ok(Outcome::ok(interval_to_json(&phi), interval_text(&phi)))
        }
        ShiftedCommand::Decompose { input, top } => {
            let phi = load_interval(input, limits, false)?;
            let d = match top {
                Some(i) => decompose_at(&phi, *i),
                None => phi_minus(&phi),
            }
            .map_err(|e| e.to_string())?;
            let exceptional: Vec<Vec<usize>> = d.exceptional.iter().map(|f| f.to_vec()).collect();
            let text = format!(
                "i = {}\nΦ⁻: {}\n𝒩: {}\nΦ⁺: {}\nΦ′: {}",
                d.top,
                interval_text(&d.phi_minus),
                d.exceptional.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "),
                interval_text(&d.phi_plus),
                interval_text(&d.phi_prime)
            );
            Ok(Outcome::ok(
                json!({
                    "top": d.top,
                    "phi_minus": interval_to_json(&d.phi_minus),
                    "exceptional": exceptional,
                    "phi_plus": interval_to_json(&d.phi_plus),
                    "phi_prime": interval_to_json(&d.phi_prime),
                }),
                text,
            ))
        }
    }
}

fn run_matroid(cmd: &MatroidCommand, limits: &Limits, tol: &Tolerances) -> Result<Outcome, String> {
    let err = |e: lapint::Error| e.to_string();
    match cmd {
        MatroidCommand::Info { matroid } => {
            let m = load_matroid(matroid)?;
            limits.check(m.ground_size(), false)?;
            let circuits: Vec<Vec<usize>> = m.circuits().iter().map(|c| c.to_vec()).collect();
            let complex = m.independence_complex().into_interval();
            let loops: Vec<usize> = (1..=m.ground_size()).filter(|&e| m.is_loop(e)).collect();
            let text = format!(
                "n = {}, rank = {}, {} circuits, {} independent sets, loops {:?}",
                m.ground_size(),
                m.rank(),
                circuits.len(),
                complex.len(),
                loops
            );
            Ok(Outcome::ok(
                json!({
                    "matroid": m.to_json(),
                    "n": m.ground_size(),
                    "rank": m.rank(),
                    "loops": loops,
                    "circuits": circuits,
                    "independence_complex": interval_to_json(&complex),
                }),
                text,
            ))
        }
        MatroidCommand::MinorPair { matroid, element } => {
            let m = load_matroid(matroid)?;
            limits.check(m.ground_size(), false)?;
            let pair = m.minor_pair(*element).map_err(err)?;
            Ok(Outcome::ok(pair.to_json(), format!("{} labels {:?}", interval_text(&pair.interval), pair.labels)))
        }
        MatroidCommand::StrongMap { matroid, remove } => {
            let m = load_matroid(matroid)?;
            limits.check(m.ground_size(), false)?;
            let a = Face::from_vertices(remove.iter().copied()).ok_or("--remove: element out of range")?;
            let pair = m.strong_map_interval(a).map_err(err)?;
            Ok(Outcome::ok(pair.to_json(), format!("{} labels {:?}", interval_text(&pair.interval), pair.labels)))
        }
        MatroidCommand::Decompose { matroid, element } => {
            let m = load_matroid(matroid)?;
            limits.check(m.ground_size(), false)?;
            let d = m.circuit_decomposition(*element).map_err(err)?;
            let text = d
                .summands
                .iter()
                .map(|s| format!("C = {}: {}", s.circuit, interval_text(&s.interval)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(d.to_json(), text))
        }
        MatroidCommand::Check { matroid, assert } => {
            let m = load_matroid(matroid)?;
            limits.check(m.ground_size(), true)?;
            let summarize = |phi: &Interval| -> Result<Value, String> {
                let verdicts = check_recursion_all_vertices(phi, tol).map_err(err)?;
                Ok(json!({
                    "integral": spectrum(phi, tol).map_err(err)?.is_integral(),
                    "holds": verdicts.values().all(|v| v.holds),
                    "rigorous": verdicts.values().all(RecursionVerdict::is_rigorous),
                }))
            };
            let whole = summarize(&m.independence_complex().into_interval())?;
            let mut pairs = serde_json::Map::new();
            for e in 1..=m.ground_size() {
                let pair = m.minor_pair(e).map_err(err)?;
                let mut s = summarize(&pair.interval)?;
                s["loop"] = json!(m.is_loop(e));
                pairs.insert(e.to_string(), s);
            }
            let all_hold = whole["holds"] == json!(true) && pairs.values().all(|s| s["holds"] == json!(true));
            let mut text = format!("IN(M): {whole}");
            for (e, s) in &pairs {
                text += &format!("\ne={e}: {s}");
            }
            Ok(Outcome {
                json: json!({"independence_complex": whole, "minor_pairs": pairs, "holds": all_hold}),
                text,
                failed: *assert && !all_hold,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&outcome.json).expect("serializable")),
                Format::Text => println!("{}", outcome.text),
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
