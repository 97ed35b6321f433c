//! Command-line front end: homology tables, verification suites and normal
//! forms, with deterministic machine-readable output.
//!
//! Exit codes: 0 success / all assertions pass, 1 assertion failure,
//! 2 usage error, 3 internal invariant breach.

use clap::{Parser, Subcommand, ValueEnum};

use braidhom::coxeter::{CoxeterSystem, CoxeterType};
use braidhom::garside::{normal_form, render_normal_form, GarsideContext};
use braidhom::linalg::{annihilator_exponent, homology, Exponent};
use braidhom::representations::{
    burau_minus1, load_custom_rep, sign_cover_rep, symplectic_rep, trivial_rep, RepresentationSpec,
};
use braidhom::salvetti::{
    build_complex_cached, frozen_sign_convention, specialize_with_ceiling, SalvettiError,
};
use braidhom::suites::{
    homology_table, suite_double_cover, suite_engine_integrity, suite_splitting_lemma,
    suite_torsion_theorem, HomologyRow, SuiteReport,
};
use braidhom::ENGINE_VERSION;

#[derive(serde::Serialize)]
struct ComputeDoc {
    r#type: String,
    n: usize,
    coefficients: String,
    homology: Vec<HomologyRow>,
    annihilator_exponent_per_degree: Vec<Exponent>,
    engine_version: String,
    sign_convention: String,
}

#[derive(Parser)]
#[command(name = "braidhom", version, about = "Exact homology of braid and annular braid groups with twisted coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a homology table for the chosen group and coefficients.
    Compute {
        /// Coxeter type: A (braid group on n strands) or B (annular braid
        /// group on n points).
        #[arg(long = "type", value_enum)]
        ctype: TypeArg,
        /// Number of strands (type A) or of black points (type B).
        #[arg(long)]
        n: usize,
        /// Coefficients: trivial | symplectic | burau-1 | sign-cover |
        /// custom:<path>.
        #[arg(long, default_value = "trivial")]
        coeff: String,
        /// Highest homological degree to report (default: all).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Recorded in reports; computations themselves are deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Complex cache directory (or BRAIDHOM_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<std::path::PathBuf>,
        /// Ceiling on specialized chain-group columns; larger requests are
        /// refused.
        #[arg(long, default_value_t = 100_000)]
        max_chain_rank: usize,
    },
    /// Run a verification suite; exits 0 iff every assertion passes.
    Verify {
        /// torsion-theorem | splitting | double-cover | integrity.
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Garside normal form of a word.
    Nf {
        /// The word: whitespace-separated signed generator indices.
        word: String,
        #[arg(long = "type", value_enum, default_value = "a")]
        ctype: TypeArg,
        /// Number of strands (type A) or of black points (type B).
        #[arg(long)]
        n: usize,
    },
}

enum CliError {
    Usage(String),
    AssertionFailure,
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::AssertionFailure => 1,
            CliError::Internal(_) => 3,
        }
    }
}

fn system_for(ctype: TypeArg, n: usize) -> Result<CoxeterSystem, CliError> {
    match ctype {
        TypeArg::A => {
            if n < 1 {
                return Err(CliError::Usage("type A requires n >= 1".into()));
            }
            Ok(CoxeterSystem::type_a(n - 1))
        }
        TypeArg::B => CoxeterSystem::new(CoxeterType::B, n)
            .map_err(|e| CliError::Usage(format!("type B: {e}"))),
    }
}

fn representation_for(
    ctype: TypeArg,
    n: usize,
    coeff: &str,
    system: CoxeterSystem,
) -> Result<(String, RepresentationSpec), CliError> {
    let named = |label: &str, r: Result<RepresentationSpec, _>| {
        r.map(|rep| (label.to_string(), rep))
            .map_err(|e| CliError::Usage(format!("{label}: {e}")))
    };
    match coeff {
        "trivial" => Ok(("trivial".to_string(), trivial_rep(system))),
        "symplectic" => {
            if !matches!(ctype, TypeArg::A) || n < 3 || n % 2 == 0 {
                return Err(CliError::Usage(
                    "symplectic coefficients require type A with odd n >= 3".into(),
                ));
            }
            named("symplectic", symplectic_rep(n))
        }
        "burau-1" => {
            if !matches!(ctype, TypeArg::A) || n < 3 || n % 2 == 0 {
                return Err(CliError::Usage(
                    "burau-1 coefficients require type A with odd n >= 3".into(),
                ));
            }
            named("burau-1", burau_minus1(n))
        }
        "sign-cover" => {
            if !matches!(ctype, TypeArg::B) {
                return Err(CliError::Usage("sign-cover coefficients require type B".into()));
            }
            named("sign-cover", sign_cover_rep(n))
        }
        other => {
            if let Some(path) = other.strip_prefix("custom:") {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read representation file {path}: {e}"))
                })?;
                let rep = load_custom_rep(system, &text)
                    .map_err(|e| CliError::Usage(format!("invalid representation file: {e}")))?;
                Ok((other.to_string(), rep))
            } else {
                Err(CliError::Usage(format!(
                    "unknown coefficients {other:?}: expected trivial, symplectic, burau-1, sign-cover or custom:<path>"
                )))
            }
        }
    }
}

fn cmd_compute(
    ctype: TypeArg,
    n: usize,
    coeff: &str,
    max_degree: Option<usize>,
    format: FormatArg,
    cache_dir: Option<std::path::PathBuf>,
    max_chain_rank: usize,
) -> Result<String, CliError> {
    let system = system_for(ctype, n)?;
    let (coeff_name, rep) = representation_for(ctype, n, coeff, system)?;
    let cache_dir = cache_dir.or_else(|| std::env::var_os("BRAIDHOM_CACHE_DIR").map(Into::into));
    let complex = build_complex_cached(system, cache_dir.as_deref());
    let specialized = match specialize_with_ceiling(&complex, &rep, max_chain_rank) {
        Ok(sp) => sp,
        Err(SalvettiError::TooLarge(got, ceiling)) => {
            return Err(CliError::Usage(format!(
                "refusing to build a chain group with {got} columns (ceiling {ceiling}); raise --max-chain-rank to proceed"
            )));
        }
        Err(e) => return Err(CliError::Internal(e.to_string())),
    };
    let groups =
        homology(&specialized, max_degree, false).map_err(|e| CliError::Internal(e.to_string()))?;
    let rows = homology_table(&groups);
    let exponents: Vec<Exponent> = groups.iter().map(annihilator_exponent).collect();

    let type_label = match ctype {
        TypeArg::A => "A",
        TypeArg::B => "B",
    };
    match format {
        FormatArg::Json => {
            let doc = ComputeDoc {
                r#type: type_label.to_string(),
                n,
                coefficients: coeff_name,
                homology: rows,
                annihilator_exponent_per_degree: exponents,
                engine_version: ENGINE_VERSION.to_string(),
                sign_convention: frozen_sign_convention().label(),
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serialization")))
        }
        FormatArg::Csv => {
            let mut out = String::from("degree,rank,torsion\n");
            for r in &rows {
                let torsion: Vec<String> = r.torsion.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("{},{},{}\n", r.degree, r.rank, torsion.join("+")));
            }
            Ok(out)
        }
        FormatArg::Md => {
            let mut out = format!(
                "# Homology of type {type_label}, n = {n}, {coeff_name} coefficients\n\n| degree | rank | torsion | exponent |\n|---|---|---|---|\n"
            );
            for (r, e) in rows.iter().zip(&exponents) {
                let torsion: Vec<String> = r.torsion.iter().map(|d| format!("Z/{d}")).collect();
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    r.degree,
                    r.rank,
                    if torsion.is_empty() { "-".to_string() } else { torsion.join(" + ") },
                    e
                ));
            }
            Ok(out)
        }
    }
}

fn cmd_verify(
    suite: &str,
    n: Option<usize>,
    max_degree: Option<usize>,
    max_rank: Option<usize>,
    seed: u64,
) -> Result<(String, SuiteReport), CliError> {
    let usage = |msg: &str| CliError::Usage(msg.to_string());
    let report = match suite {
        "torsion-theorem" => {
            let n = n.ok_or_else(|| usage("torsion-theorem requires --n"))?;
            let k = max_degree.unwrap_or(n.saturating_sub(1));
            suite_torsion_theorem(n, k)
        }
        "splitting" => {
            let n = n.ok_or_else(|| usage("splitting requires --n"))?;
            let k = max_degree.unwrap_or(n.saturating_sub(1));
            suite_splitting_lemma(n, k)
        }
        "double-cover" => {
            let n = n.ok_or_else(|| usage("double-cover requires --n"))?;
            let k = max_degree.unwrap_or(n);
            suite_double_cover(n, k)
        }
        "integrity" => {
            let r = max_rank.ok_or_else(|| usage("integrity requires --max-rank"))?;
            suite_engine_integrity(r, seed)
        }
        other => return Err(usage(&format!("unknown suite {other:?}"))),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let doc = format!("{}\n", serde_json::to_string_pretty(&report).expect("serialization"));
    Ok((doc, report))
}

fn cmd_nf(word: &str, ctype: TypeArg, n: usize) -> Result<String, CliError> {
    let system = system_for(ctype, n)?;
    let parsed = braidhom::braid::parse_word(word, system)
        .map_err(|e| CliError::Usage(format!("cannot parse word: {e}")))?;
    let ctx = GarsideContext::new(system);
    let nf = normal_form(&ctx, &parsed);
    Ok(format!("{}\n", render_normal_form(&system, &nf)))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { ctype, n, coeff, max_degree, format, seed: _, cache_dir, max_chain_rank } => {
            let out = cmd_compute(ctype, n, &coeff, max_degree, format, cache_dir, max_chain_rank)?;
            print!("{out}");
            Ok(())
        }
        Command::Verify { suite, n, max_degree, max_rank, seed } => {
            let (doc, report) = cmd_verify(&suite, n, max_degree, max_rank, seed)?;
            print!("{doc}");
            for line in report.summary_lines() {
                eprintln!("{line}");
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::AssertionFailure)
            }
        }
        Command::Nf { word, ctype, n } => {
            let out = cmd_nf(&word, ctype, n)?;
            print!("{out}");
            Ok(())
        }
    }
}

fn main() {
    match run() {
        Ok(()) => {}
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::AssertionFailure => eprintln!("error: suite assertions failed"),
                CliError::Internal(msg) => eprintln!("internal invariant breach: {msg}"),
            }
            std::process::exit(e.exit_code());
        }
    }
}
