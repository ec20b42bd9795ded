use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use gaussdm::ci::{closure, parse_relation, RuleSet};
use gaussdm::classify::enumerate_inequivalent;
use gaussdm::matrix::{max_norm, membership_residual, parse_rational_matrix};
use gaussdm::{analyze, AnalyzeOptions, Error, GraphPair, VertexSet};

#[derive(Parser)]
#[command(name = "gaussdm", version, about = "Analyze Gaussian double Markovian models M(G, H)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the model of a graph pair.
    Analyze {
        pair_file: PathBuf,
        /// Also write the report as JSON (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative singular-value threshold for numerical ranks.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Search for a numerical model point.
        #[arg(long)]
        point: bool,
        /// Cap on the number of paths between two vertices.
        #[arg(long, value_name = "N", default_value_t = gaussdm::graph::DEFAULT_PATH_CAP)]
        cap: usize,
        /// Exit with status 1 when no connectedness certificate applies.
        #[arg(long)]
        require_certificate: bool,
    },
    /// Count inequivalent double Markov relations on n vertices.
    Enumerate {
        n: usize,
        /// Only pairs of connected graphs.
        #[arg(long)]
        connected: bool,
        /// Write one CSV line per class.
        #[arg(long, value_name = "CSV")]
        out: Option<PathBuf>,
    },
    /// Check whether a matrix lies in the model of a graph pair.
    Verify {
        matrix_file: PathBuf,
        pair_file: PathBuf,
        /// Max-norm tolerance on the membership residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print the double Markov relation of a graph pair.
    Relation {
        pair_file: PathBuf,
        /// Print the hex bitset instead of the statement list.
        #[arg(long)]
        hex: bool,
    },
    /// Close a CI relation under inference rules.
    Closure {
        relation_file: PathBuf,
        /// Comma-separated: semigraphoid, intersection, composition, rule17, all.
        #[arg(long, value_name = "LIST", default_value = "all")]
        rules: String,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Size(_) | Error::PathCap { .. }) => 3,
        Some(Error::Domain(_) | Error::NoConvergence { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze {
            pair_file,
            json,
            seed,
            tol,
            point,
            cap,
            require_certificate,
        } => {
            let pair = GraphPair::parse(&read(&pair_file)?)?;
            let opts = AnalyzeOptions {
                seed,
                rank_tol: tol,
                point,
                path_cap: cap,
            };
            let report = analyze(&pair, &opts)?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            match json.as_deref() {
                Some(p) if p == Path::new("-") => print!("{text}"),
                Some(p) => {
                    print!("{}", report.to_text());
                    fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
                }
                None => print!("{}", report.to_text()),
            }
            Ok(if require_certificate && report.certificate.kind == "unknown" { 1 } else { 0 })
        }
        Command::Enumerate { n, connected, out } => {
            let e = enumerate_inequivalent(n, connected)?;
            if let Some(p) = out {
                fs::write(&p, e.to_csv()).with_context(|| format!("cannot write {}", p.display()))?;
            }
            println!("count={}", e.count());
            Ok(0)
        }
        Command::Verify {
            matrix_file,
            pair_file,
            tol,
        } => verify(&read(&matrix_file)?, &read(&pair_file)?, tol),
        Command::Relation { pair_file, hex } => {
            let pair = GraphPair::parse(&read(&pair_file)?)?;
            let r = gaussdm::Relation::double_markov(&pair.g, &pair.h)?;
            print!("{}", if hex { r.to_hex_file() } else { r.to_list_file() });
            Ok(0)
        }
        Command::Closure { relation_file, rules } => {
            let r = parse_relation(&read(&relation_file)?)?;
            let rules: RuleSet = rules.parse()?;
            let out = closure(&r, rules);
            print!("{}", out.relation.to_list_file());
            for (rule, count) in &out.fired {
                println!("# fired {rule}: {count}");
            }
            Ok(0)
        }
    }
}

fn verify(matrix_text: &str, pair_text: &str, tol: f64) -> Result<u8> {
    let exact = parse_rational_matrix(matrix_text)?;
    let pair = GraphPair::parse(pair_text)?;
    let n = exact.n();
    if n != pair.n() {
        return Err(Error::Argument(format!("matrix is {n}x{n} but the graphs have {} vertices", pair.n())).into());
    }
    let sigma = exact.to_f64();
    println!("n: {n}");
    let first_bad = exact.first_nonpositive_leading_minor();
    if first_bad.is_some() || !sigma.is_pd() {
        match first_bad {
            Some(k) => println!("positive definite: no (leading principal minor of order {} is not positive)", k + 1),
            None => println!("positive definite: no (numerically singular)"),
        }
        let full = VertexSet::full(n);
        let minors: Vec<f64> = full
            .subsets()
            .filter(|s| !s.is_empty() && *s != full)
            .map(|s| sigma.principal(s).determinant())
            .collect();
        let min = minors.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        let zero = minors.iter().filter(|v| v.abs() <= 1e-9).count();
        if zero == 0 {
            println!("proper principal minors: {}, all nonzero (min |minor| {min:.6})", minors.len());
        } else {
            println!("proper principal minors: {}, {zero} vanishing", minors.len());
        }
        println!("determinant: {:.12}", sigma.determinant());
        println!("verdict: not a model point");
        return Ok(1);
    }
    let res = max_norm(&membership_residual(&sigma, &pair.g, &pair.h)?);
    println!("positive definite: yes");
    println!("max residual: {res:e}");
    let member = res <= tol;
    println!("verdict: {}", if member { "member" } else { "not a member" });
    Ok(if member { 0 } else { 1 })
}
