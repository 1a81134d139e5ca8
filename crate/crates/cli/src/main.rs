//! Command-line surface: exact solves, instance construction, exact-level
//! decisions, seeded generators, and the verification campaigns.
//!
//! Exit codes: 0 success/YES, 1 NO (or failed campaign), 2 error, 3 timeout.

mod io;
mod verify;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use domatic_core::budget::{Budget, SolveOutcome};
use domatic_core::cfsp::{delta_min_bruteforce_with, delta_min_with, StartPosition};
use domatic_core::exact_set::ExactSet;
use domatic_core::gen;
use domatic_core::graph::Partition;
use domatic_core::reductions::{
    gadget_join, kaplan_shamir, multi_gadget_join, nae_construct, one_in_three_graph,
    one_in_three_pair_join, parity_pair, times,
};
use domatic_core::srp::{
    alpha, beta, chromatic_number, dnp_equ, dnp_geq, dnp_odd, domatic_number,
    exact_domatic_in_set, exact_partition_decision, exists_partition, gamma, SigmaRhoSpec,
    SrpError,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "domatic", version, about = "Exact generalized-domination partition lab")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a graph or scheduling quantity exactly.
    Solve(SolveArgs),
    /// Build a reduction image and write DIMACS plus a JSON sidecar.
    Reduce(ReduceArgs),
    /// Decide an exact-level question; prints YES or NO.
    Decide(DecideArgs),
    /// Run a built-in verification campaign.
    Verify(VerifyArgs),
    /// Generate a seeded instance file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveKind {
    Delta,
    Gamma,
    Alpha,
    Beta,
    Chi,
    Srp,
    Cfsp,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(value_enum)]
    kind: SolveKind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Write the witness (partition or schedule) here.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long, default_value_t = 60.0)]
    budget_seconds: f64,
    /// Class count (srp only).
    #[arg(long)]
    k: Option<usize>,
    /// Sigma token: N, N+, 0, 1, 01 (srp only).
    #[arg(long)]
    sigma: Option<String>,
    /// Rho token: N, N+, 0, 1, 01 (srp only).
    #[arg(long)]
    rho: Option<String>,
    /// Use the brute-force oracle instead of the exact solver (cfsp only).
    #[arg(long)]
    oracle: bool,
    /// Worker start: `free` or a machine index (cfsp only).
    #[arg(long, default_value = "free")]
    start: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Ks,
    Thm1,
    Thm10,
    Times,
    Parity,
    Nae,
    Ht13,
    Thm6,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: ReduceKind,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    /// Operand list for the multi-operand constructions (repeatable).
    #[arg(long = "h")]
    operands: Vec<PathBuf>,
    #[arg(long)]
    f1: Option<PathBuf>,
    #[arg(long)]
    f2: Option<PathBuf>,
    #[arg(long)]
    s1: Option<PathBuf>,
    #[arg(long)]
    s2: Option<PathBuf>,
    /// Output prefix; writes PREFIX.dimacs and PREFIX.json.
    #[arg(long, default_value = "out")]
    out: String,
}

#[derive(Args)]
struct DecideArgs {
    /// One of: exact-domatic, dnp-odd, dnp-equ, dnp-geq, exact-cfsp, exact-srp.
    kind: String,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    /// Noncontiguous target set, comma separated (e.g. `5` or `9,11`).
    #[arg(long)]
    set: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long, default_value_t = 60.0)]
    budget_seconds: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: lemma3, thm1, thm3, thm6, thm8, thm10-k1, parity-k1, fact1,
    /// oracle-srp, oracle-cfsp, cfsp-compose.
    campaign: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 60.0)]
    budget_seconds: f64,
    #[arg(long, default_value = "table")]
    format: String,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Cnf3,
    Triples,
    Matrix,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    vars: Option<usize>,
    #[arg(long)]
    clauses: Option<usize>,
    #[arg(long)]
    sets: Option<usize>,
    /// Keep sizes within the brute-force oracle guards.
    #[arg(long)]
    oracle_safe: bool,
}

const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DOMATIC_LAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Reduce(args) => cmd_reduce(args),
        Cmd::Decide(args) => cmd_decide(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Gen(args) => cmd_gen(args),
    }
}

fn parse_spec(tok: Option<&str>, what: &str) -> Result<SigmaRhoSpec> {
    let tok = tok.ok_or_else(|| anyhow!("--{what} is required for this command"))?;
    SigmaRhoSpec::parse_token(tok).map_err(|e| anyhow!(e))
}

fn parse_set(text: Option<&str>) -> Result<ExactSet> {
    let text = text.ok_or_else(|| anyhow!("--set is required for this command"))?;
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad set element `{t}`")))
        .collect::<Result<Vec<_>>>()?;
    ExactSet::new(values).map_err(|e| anyhow!(e))
}

fn write_witness(path: Option<&Path>, p: &Partition) -> Result<()> {
    if let Some(path) = path {
        io::write_json(path, p)?;
    }
    Ok(())
}

/// Re-solve at the optimum to extract a witness partition.
fn level_witness(
    g: &domatic_core::graph::Graph,
    k: usize,
    sigma: SigmaRhoSpec,
    rho: SigmaRhoSpec,
    budget: Budget,
) -> Option<Partition> {
    match exists_partition(g, k, sigma, rho, budget) {
        SolveOutcome::Yes(p) => Some(p),
        _ => None,
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let budget = Budget::seconds(args.budget_seconds);
    let number = |r: Result<usize, SrpError>| -> Result<(String, u8, Option<usize>)> {
        match r {
            Ok(v) => Ok((v.to_string(), 0, Some(v))),
            Err(SrpError::TimedOut) => Ok(("TIMEOUT".into(), EXIT_TIMEOUT, None)),
            Err(e) => Err(e.into()),
        }
    };
    let optional = |r: Result<Option<usize>, SrpError>| -> Result<(String, u8, Option<usize>)> {
        match r {
            Ok(Some(v)) => Ok((v.to_string(), 0, Some(v))),
            Ok(None) => Ok(("NONE".into(), 0, None)),
            Err(SrpError::TimedOut) => Ok(("TIMEOUT".into(), EXIT_TIMEOUT, None)),
            Err(e) => Err(e.into()),
        }
    };
    match args.kind {
        SolveKind::Delta | SolveKind::Gamma | SolveKind::Alpha | SolveKind::Beta | SolveKind::Chi => {
            let g = io::load_graph(&args.input)?;
            let (sigma, rho) = match args.kind {
                SolveKind::Delta => (SigmaRhoSpec::NATS, SigmaRhoSpec::POS),
                SolveKind::Gamma => (SigmaRhoSpec::POS, SigmaRhoSpec::POS),
                SolveKind::Alpha => (SigmaRhoSpec::ZERO_ONE, SigmaRhoSpec::NATS),
                SolveKind::Beta => (SigmaRhoSpec::ONE, SigmaRhoSpec::NATS),
                _ => (SigmaRhoSpec::ZERO, SigmaRhoSpec::NATS),
            };
            let (text, code, level) = match args.kind {
                SolveKind::Delta => number(domatic_number(&g, budget))?,
                SolveKind::Gamma => optional(gamma(&g, budget))?,
                SolveKind::Alpha => number(alpha(&g, budget))?,
                SolveKind::Beta => optional(beta(&g, budget))?,
                _ => number(chromatic_number(&g, budget))?,
            };
            println!("{text}");
            if let (Some(level), Some(path)) = (level, args.witness.as_deref()) {
                match level_witness(&g, level, sigma, rho, budget) {
                    Some(p) => io::write_json(path, &p)?,
                    None => bail!("witness extraction timed out"),
                }
            }
            Ok(code)
        }
        SolveKind::Srp => {
            let g = io::load_graph(&args.input)?;
            let k = args.k.ok_or_else(|| anyhow!("--k is required for srp"))?;
            let sigma = parse_spec(args.sigma.as_deref(), "sigma")?;
            let rho = parse_spec(args.rho.as_deref(), "rho")?;
            match exists_partition(&g, k, sigma, rho, budget) {
                SolveOutcome::Yes(p) => {
                    println!("YES");
                    write_witness(args.witness.as_deref(), &p)?;
                    Ok(0)
                }
                SolveOutcome::No => {
                    println!("NO");
                    Ok(0)
                }
                SolveOutcome::TimedOut => {
                    println!("TIMEOUT");
                    Ok(EXIT_TIMEOUT)
                }
            }
        }
        SolveKind::Cfsp => {
            let m = io::load_matrix(&args.input)?;
            let start = match args.start.as_str() {
                "free" => StartPosition::Free,
                idx => StartPosition::At(idx.parse::<usize>().context("--start must be `free` or a machine index")?),
            };
            if args.oracle {
                let d = delta_min_bruteforce_with(&m, start).map_err(|e| anyhow!(e))?;
                println!("{d}");
                return Ok(0);
            }
            match delta_min_with(&m, start, budget) {
                Ok((d, schedule)) => {
                    println!("{d}");
                    if let Some(path) = args.witness.as_deref() {
                        io::write_json(path, &schedule)?;
                    }
                    Ok(0)
                }
                Err(domatic_core::cfsp::CfspError::TimedOut) => {
                    println!("TIMEOUT");
                    Ok(EXIT_TIMEOUT)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn cmd_reduce(args: ReduceArgs) -> Result<u8> {
    let need = |p: &Option<PathBuf>, flag: &str| -> Result<PathBuf> {
        p.clone().ok_or_else(|| anyhow!("--{flag} is required for this construction"))
    };
    match args.kind {
        ReduceKind::Ks => {
            let g = io::load_graph(&need(&args.input, "in")?)?;
            let image = kaplan_shamir(&g)?;
            io::write_reduction(&args.out, image.graph(), Some(&image))?;
        }
        ReduceKind::Thm1 => {
            let a = io::load_decorated(&need(&args.a, "a")?)?;
            let b = io::load_decorated(&need(&args.b, "b")?)?;
            let g = gadget_join(&a, &b)?;
            io::write_reduction(&args.out, &g, None)?;
        }
        ReduceKind::Thm10 => {
            let hs = args
                .operands
                .iter()
                .map(|p| io::load_decorated(p))
                .collect::<Result<Vec<_>>>()?;
            let g = multi_gadget_join(&hs)?;
            io::write_reduction(&args.out, &g, None)?;
        }
        ReduceKind::Times => {
            let a = io::load_decorated(&need(&args.a, "a")?)?;
            let b = io::load_decorated(&need(&args.b, "b")?)?;
            let prod = times(&a, &b)?;
            io::write_reduction(&args.out, prod.graph(), Some(&prod))?;
        }
        ReduceKind::Parity => {
            let hs = args
                .operands
                .iter()
                .map(|p| io::load_decorated(p))
                .collect::<Result<Vec<_>>>()?;
            let (odd, even) = parity_pair(&hs)?;
            io::write_reduction(&format!("{}.odd", args.out), odd.graph(), Some(&odd))?;
            io::write_reduction(&format!("{}.even", args.out), even.graph(), Some(&even))?;
        }
        ReduceKind::Nae => {
            let f1 = io::load_cnf(&need(&args.f1, "f1")?)?;
            let f2 = io::load_cnf(&need(&args.f2, "f2")?)?;
            let g = nae_construct(&f1, &f2)?;
            io::write_reduction(&args.out, &g, None)?;
        }
        ReduceKind::Ht13 => {
            let s = io::load_triples(&need(&args.input, "in")?)?;
            let g = one_in_three_graph(&s)?;
            io::write_reduction(&args.out, &g, None)?;
        }
        ReduceKind::Thm6 => {
            let s1 = io::load_triples(&need(&args.s1, "s1")?)?;
            let s2 = io::load_triples(&need(&args.s2, "s2")?)?;
            let g = one_in_three_pair_join(&s1, &s2)?;
            io::write_reduction(&args.out, &g, None)?;
        }
    }
    Ok(0)
}

fn cmd_decide(args: DecideArgs) -> Result<u8> {
    let budget = Budget::seconds(args.budget_seconds);
    let need = |p: &Option<PathBuf>, flag: &str| -> Result<PathBuf> {
        p.clone().ok_or_else(|| anyhow!("--{flag} is required for this decision"))
    };
    let verdict = |r: Result<bool, SrpError>| -> Result<u8> {
        match r {
            Ok(true) => {
                println!("YES");
                Ok(0)
            }
            Ok(false) => {
                println!("NO");
                Ok(EXIT_NO)
            }
            Err(SrpError::TimedOut) => {
                println!("TIMEOUT");
                Ok(EXIT_TIMEOUT)
            }
            Err(e) => Err(e.into()),
        }
    };
    match args.kind.as_str() {
        "exact-domatic" => {
            let g = io::load_graph(&need(&args.input, "in")?)?;
            let set = parse_set(args.set.as_deref())?;
            verdict(exact_domatic_in_set(&g, &set, budget))
        }
        "dnp-odd" => {
            let g = io::load_graph(&need(&args.input, "in")?)?;
            verdict(dnp_odd(&g, budget))
        }
        "dnp-equ" => {
            let a = io::load_graph(&need(&args.a, "a")?)?;
            let b = io::load_graph(&need(&args.b, "b")?)?;
            verdict(dnp_equ(&a, &b, budget))
        }
        "dnp-geq" => {
            let a = io::load_graph(&need(&args.a, "a")?)?;
            let b = io::load_graph(&need(&args.b, "b")?)?;
            verdict(dnp_geq(&a, &b, budget))
        }
        "exact-cfsp" => {
            let m = io::load_matrix(&need(&args.input, "in")?)?;
            let set = parse_set(args.set.as_deref())?;
            match domatic_core::cfsp::exact_cfsp(&m, &set, budget) {
                Ok(true) => {
                    println!("YES");
                    Ok(0)
                }
                Ok(false) => {
                    println!("NO");
                    Ok(EXIT_NO)
                }
                Err(domatic_core::cfsp::CfspError::TimedOut) => {
                    println!("TIMEOUT");
                    Ok(EXIT_TIMEOUT)
                }
                Err(e) => Err(e.into()),
            }
        }
        "exact-srp" => {
            let g = io::load_graph(&need(&args.input, "in")?)?;
            let k = args.k.ok_or_else(|| anyhow!("--k is required for exact-srp"))?;
            let sigma = parse_spec(args.sigma.as_deref(), "sigma")?;
            let rho = parse_spec(args.rho.as_deref(), "rho")?;
            verdict(exact_partition_decision(&g, k, sigma, rho, budget))
        }
        other => bail!("unknown decision `{other}`"),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let report = verify::run_campaign(&args.campaign, args.seed, args.budget_seconds)
        .ok_or_else(|| {
            anyhow!("unknown campaign `{}` (expected one of {:?})", args.campaign, verify::CAMPAIGNS)
        })?;
    match args.format.as_str() {
        "json" => println!("{}", serde_json::to_string_pretty(&report)?),
        "table" => print!("{}", report.table()),
        other => bail!("unknown format `{other}` (expected json or table)"),
    }
    if let Some(path) = args.out.as_deref() {
        io::write_json(path, &report)?;
    }
    if report.summary.fail > 0 {
        Ok(EXIT_NO)
    } else if report.summary.timeout > 0 {
        Ok(EXIT_TIMEOUT)
    } else {
        Ok(0)
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    match args.kind {
        GenKind::Graph => {
            let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
            let p = args.p.unwrap_or(0.5);
            if args.oracle_safe && n > 6 {
                bail!("--oracle-safe caps graphs at 6 vertices");
            }
            let g = gen::gen_graph_seeded(n, p, args.seed);
            io::write_graph(&args.out, &g)?;
        }
        GenKind::Cnf3 => {
            let vars = args.vars.ok_or_else(|| anyhow!("--vars is required"))?;
            let clauses = args.clauses.ok_or_else(|| anyhow!("--clauses is required"))?;
            if args.oracle_safe && vars > domatic_core::sat::MAX_ORACLE_VARS {
                bail!("--oracle-safe caps formulas at {} variables", domatic_core::sat::MAX_ORACLE_VARS);
            }
            let f = gen::gen_cnf3_seeded(vars, clauses, args.seed);
            io::write_json(&args.out, &f)?;
        }
        GenKind::Triples => {
            let vars = args.vars.ok_or_else(|| anyhow!("--vars is required"))?;
            let sets = args.sets.ok_or_else(|| anyhow!("--sets is required"))?;
            if args.oracle_safe && vars > domatic_core::sat::MAX_ORACLE_VARS {
                bail!("--oracle-safe caps systems at {} variables", domatic_core::sat::MAX_ORACLE_VARS);
            }
            let s = gen::gen_triples_seeded(vars, sets, args.seed);
            io::write_json(&args.out, &s)?;
        }
        GenKind::Matrix => {
            let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
            let m = args.m.ok_or_else(|| anyhow!("--m is required"))?;
            let density = args.density.unwrap_or(0.5);
            let mat = if args.oracle_safe {
                // rejection-sample within the oracle's task guard
                let mut rng = gen::rng(args.seed);
                loop {
                    let cand = gen::gen_matrix(n, m, density, &mut rng);
                    if cand.task_count() <= domatic_core::cfsp::MAX_ORACLE_TASKS {
                        break cand;
                    }
                }
            } else {
                gen::gen_matrix_seeded(n, m, density, args.seed)
            };
            io::write_json(&args.out, &mat)?;
        }
    }
    Ok(0)
}
