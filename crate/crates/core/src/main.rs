use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use charirr::cyclotomic::{arith_obstruction_report, Conclusion};
use charirr::error::{Error, Result};
use charirr::harness::{self, Check, OutputFormat, SweepConfig};
use charirr::polyfactor::{Basis, FactorConfig, Verdict};
use charirr::rootsys::RootSystem;
use charirr::schurweyl::tensor_decompose;
use charirr::weight::Weight;

#[derive(Parser)]
#[command(name = "charirr", version, about = "Characters, Schur-Weyl sums and irreducibility checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FactorFlags {
    /// Largest total degree accepted by the absolute factor count.
    #[arg(long, default_value_t = charirr::polyfactor::DEFAULT_MAX_ABS_DEGREE)]
    max_abs_degree: usize,
    /// Largest Kronecker-substituted degree for factoring over the rationals.
    #[arg(long, default_value_t = charirr::polyfactor::DEFAULT_MAX_KRON_DEGREE)]
    max_kron_degree: usize,
    /// Agreeing specializations required by the absolute count.
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

impl FactorFlags {
    fn config(&self, seed: u64) -> FactorConfig {
        let mut cfg = FactorConfig::default();
        cfg.abs.degree_bound = self.max_abs_degree;
        cfg.abs.gao.trials = self.trials.max(1);
        cfg.abs.gao.retry_cap = cfg.abs.gao.retry_cap.max(4 * cfg.abs.gao.trials);
        cfg.abs.gao.seed = seed;
        cfg.max_kron_degree = self.max_kron_degree;
        cfg
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Weyl character of an irreducible representation.
    Char { rs: String, coords: String },
    /// The polynomial C(λ) and its factor analysis.
    Cfactor {
        rs: String,
        coords: String,
        /// `ambient` (type A only) or `fundamental`.
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        factor: FactorFlags,
    },
    /// Decomposition of a tensor product of irreducibles.
    Tensor {
        rs: String,
        #[arg(required = true)]
        weights: Vec<String>,
    },
    /// Exhaustive checks over weights with bounded coordinates.
    Sweep {
        rs: String,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output file; `-` for standard output.
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `jsonl` or `csv`.
        #[arg(long, default_value = "jsonl")]
        format: String,
        /// Largest number of factors in tensor products.
        #[arg(long, default_value_t = 3)]
        arity: usize,
        /// Record per-item and total wall time (output is then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        factor: FactorFlags,
    },
    /// Cyclotomic arithmetic.
    Cyclo {
        #[command(subcommand)]
        cmd: CycloCmd,
    },
}

#[derive(Subcommand)]
enum CycloCmd {
    /// Norm obstruction report for the quotient of geometric cyclotomics.
    Obstruct {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        f: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 400)]
        cap: u64,
    },
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn parse_basis(s: &str) -> Result<Basis> {
    match s {
        "ambient" | "ambient_x" => Ok(Basis::AmbientX),
        "fundamental" | "fundamental_coords" => Ok(Basis::FundamentalCoords),
        _ => Err(Error::Usage(format!("unknown basis `{s}`"))),
    }
}

fn load(rs: &str) -> Result<Arc<RootSystem>> {
    Ok(Arc::new(RootSystem::parse(rs)?))
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Char { rs, coords } => {
            let rs = load(&rs)?;
            let hw = Weight::parse(&coords)?;
            print_json(&harness::character_output(&rs, &hw)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cfactor {
            rs,
            coords,
            basis,
            seed,
            factor,
        } => {
            let rs = load(&rs)?;
            let lambda = Weight::parse(&coords)?;
            let basis = basis.as_deref().map(parse_basis).transpose()?;
            let out = harness::cfactor(&rs, &lambda, basis, &factor.config(seed))?;
            print_json(&out)?;
            let bad = out.report.verdict == Verdict::Reducible && !out.c_lambda.nmfg_flag
                || out.report.oracle_agrees == Some(false);
            Ok(if bad { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Tensor { rs, weights } => {
            let rs = load(&rs)?;
            let ws = weights
                .iter()
                .map(|w| Weight::parse(w))
                .collect::<Result<Vec<_>>>()?;
            let parts = tensor_decompose(&rs, &ws)?;
            print_json(&json!({
                "rs": rs.name(),
                "factors": ws.iter().map(|w| w.to_vec()).collect::<Vec<_>>(),
                "components": parts.iter().map(|(w, m)| json!({
                    "highest_weight": w.to_vec(),
                    "multiplicity": m,
                })).collect::<Vec<_>>(),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            rs,
            bound,
            checks,
            jobs,
            out,
            seed,
            format,
            arity,
            timings,
            factor,
        } => {
            let mut cfg = SweepConfig::new(&rs, bound, &Check::parse_list(&checks)?);
            cfg.jobs = jobs.max(1);
            cfg.output_path = Some(out);
            cfg.seed = seed;
            cfg.factor = factor.config(seed);
            cfg.tensor_arity = arity;
            cfg.timings = timings;
            cfg.format = match format.as_str() {
                "jsonl" | "json" => OutputFormat::Jsonl,
                "csv" => OutputFormat::Csv,
                other => return Err(Error::Usage(format!("unknown format `{other}`"))),
            };
            let summary = harness::run_sweep(&cfg)?;
            if summary.resumed > 0 {
                eprintln!("resumed {} completed records", summary.resumed);
            }
            for f in &summary.failures {
                eprintln!("FAIL {} {} {}", f.check.name(), f.item, f.detail);
            }
            Ok(if summary.has_failures() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Cyclo {
            cmd: CycloCmd::Obstruct { e, f, d, cap },
        } => {
            let report = arith_obstruction_report(e, f, d, cap)?;
            print_json(&report)?;
            if report.conclusion == Conclusion::NoObstruction {
                eprintln!("no obstruction found for e={e} f={f} d={d}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InexactDivision(_) | Error::NegativeMultiplicity(..) | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
