mod sample;

use std::io::{self, Write};
use std::process::ExitCode;

use branching_core::hypergeom::{e_coeff, g_general, ESource};
use branching_core::lambda::{lambda_det, lambda_general, LambdaRow};
use branching_core::splines::{discrete_bspline, KnotVector};
use branching_core::verify::{run, Suite, VerifyConfig};
use branching_core::{BasisCtx, Error, JacobiParams, Rat, SeriesTag, Signature};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::sample::Sampler;

const DECIMAL_DIGITS: usize = 15;

#[derive(Parser)]
#[command(name = "branching", version, about = "Exact branching matrices for symplectic and orthogonal characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the row Lambda^N_K(nu, .)
    Lambda(RowArgs),
    /// Draw signatures from a row by inverse-CDF sampling
    Sample {
        #[command(flatten)]
        row: RowArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Tabulate a K = 1 row, or a discrete B-spline with integer knots
    Spline {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<u32>>,
        #[arg(long = "N")]
        n: Option<usize>,
        /// Strictly decreasing integer knots, e.g. 5,2,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["nu", "n"])]
        knots: Option<Vec<i64>>,
    },
    /// Dump the g_k basis or the transition table E(m, k)
    Basis {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 4)]
        maxk: usize,
        #[arg(long, value_enum, default_value_t = Table::E)]
        table: Table,
    },
    /// Run the identity suites
    Verify {
        /// Comma-separated suite names; all suites when omitted
        #[arg(long, value_delimiter = ',')]
        only: Vec<Suite>,
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: usize,
        #[arg(long = "max-nu1", default_value_t = 2)]
        max_nu1: u32,
        #[arg(long = "L", value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        l: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        maxk: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, value_enum, conflicts_with_all = ["a", "eps"])]
    series: Option<Series>,
    #[arg(long, requires = "eps", allow_hyphen_values = true)]
    a: Option<Rat>,
    #[arg(long, requires = "a")]
    eps: Option<Rat>,
}

#[derive(Args)]
struct RowArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    nu: Vec<u32>,
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "K")]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    C,
    B,
    D,
}

impl From<Series> for SeriesTag {
    fn from(s: Series) -> Self {
        match s {
            Series::C => SeriesTag::C,
            Series::B => SeriesTag::B,
            Series::D => SeriesTag::D,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    G,
    E,
}

enum Params {
    Series(SeriesTag),
    General(JacobiParams),
}

impl Params {
    fn jacobi(&self) -> JacobiParams {
        match self {
            Params::Series(s) => s.params(),
            Params::General(p) => p.clone(),
        }
    }
}

enum Failure {
    /// A parameter outside the domain of the requested computation.
    Domain(String),
    /// A computation that should have succeeded did not.
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::DegenerateInput(_) | Error::Pole { .. } | Error::NotInSpace { .. } => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Identity(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Identity(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Identity(format!("write failed: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn resolve(p: &ParamArgs) -> CliResult<Params> {
    match (&p.series, &p.a, &p.eps) {
        (Some(s), _, _) => Ok(Params::Series((*s).into())),
        (None, Some(a), Some(eps)) => Ok(Params::General(JacobiParams::new(a.clone(), eps.clone())?)),
        _ => Err(Failure::Domain("give --series or both --a and --eps".into())),
    }
}

fn compute_row(args: &RowArgs) -> CliResult<LambdaRow> {
    let params = resolve(&args.params)?;
    if args.k == 0 || args.k >= args.n {
        return Err(Failure::Domain(format!("need 1 <= K < N, got K = {}, N = {}", args.k, args.n)));
    }
    let nu = Signature::padded(&args.nu, args.n)?;
    let row = match params {
        Params::Series(s) => lambda_det(&nu, args.n, args.k, s)?,
        Params::General(p) => lambda_general(&nu, args.n, args.k, p)?,
    };
    Ok(row)
}

fn cmd_lambda(args: &RowArgs, out: &mut impl Write) -> CliResult<()> {
    let row = compute_row(args)?;
    match args.format {
        Format::Json => writeln!(out, "{}", row.to_json())?,
        Format::Csv => write!(out, "{}", row.to_csv())?,
    }
    Ok(())
}

fn cmd_sample(args: &RowArgs, seed: u64, count: usize, out: &mut impl Write) -> CliResult<()> {
    let row = compute_row(args)?;
    let sampler = Sampler::new(&row);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<&Signature> = (0..count).map(|_| sampler.draw(&mut rng)).collect();
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&draws).expect("signatures serialize"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["kappa"])?;
            for kappa in draws {
                let parts: Vec<String> = kappa.parts().iter().map(u32::to_string).collect();
                w.write_record([parts.join(" ")])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_spline(
    params: &ParamArgs,
    nu: Option<&[u32]>,
    n: Option<usize>,
    knots: Option<&[i64]>,
    out: &mut impl Write,
) -> CliResult<()> {
    let values: Vec<(i64, Rat)> = if let Some(knots) = knots {
        let kv = KnotVector::new(knots.to_vec())?;
        let lo = knots[knots.len() - 1] + knots.len() as i64 - 2;
        (lo..=knots[0]).map(|x| (x, discrete_bspline(x, &kv))).collect()
    } else {
        let (Some(nu), Some(n)) = (nu, n) else {
            return Err(Failure::Domain("give --nu and --N, or --knots".into()));
        };
        if n < 2 {
            return Err(Failure::Domain("need N >= 2 for a K = 1 row".into()));
        }
        let args = RowArgs {
            params: ParamArgs {
                series: params.series,
                a: params.a.clone(),
                eps: params.eps.clone(),
            },
            nu: nu.to_vec(),
            n,
            k: 1,
            format: Format::Csv,
        };
        let row = compute_row(&args)?;
        (0..=row.nu.first())
            .map(|k| (i64::from(k), row.get(&Signature::new(vec![k]).expect("one part"))))
            .collect()
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "p", "decimal"])?;
    for (k, v) in values {
        w.write_record([k.to_string(), v.to_string(), v.to_decimal(DECIMAL_DIGITS)])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_basis(params: &ParamArgs, l: usize, maxk: usize, table: Table, out: &mut impl Write) -> CliResult<()> {
    let ctx = BasisCtx::new(resolve(params)?.jacobi(), l)?;
    let mut w = csv::Writer::from_writer(out);
    match table {
        Table::G => {
            w.write_record(["k", "g_k"])?;
            for k in 0..=maxk {
                w.write_record([k.to_string(), g_general(k, &ctx).to_string()])?;
            }
        }
        Table::E => {
            w.write_record(["m", "k", "E", "decimal"])?;
            for m in 1..=maxk {
                for k in 0..=m {
                    let e = e_coeff(m, k, &ctx, ESource::Auto);
                    w.write_record([m.to_string(), k.to_string(), e.to_string(), e.to_decimal(DECIMAL_DIGITS)])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(suites: &[Suite], cfg: &VerifyConfig, out: &mut impl Write) -> CliResult<()> {
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let reports = run(&suites, cfg);
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.name()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Identity(format!("failing suites: {}", failed.join(", "))))
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    match cli.command {
        Command::Lambda(args) => cmd_lambda(&args, out),
        Command::Sample { row, seed, count } => cmd_sample(&row, seed, count, out),
        Command::Spline { params, nu, n, knots } => cmd_spline(&params, nu.as_deref(), n, knots.as_deref(), out),
        Command::Basis { params, l, maxk, table } => cmd_basis(&params, l, maxk, table, out),
        Command::Verify { only, max_n, max_nu1, l, maxk, seed } => {
            let cfg = VerifyConfig {
                max_n,
                max_nu1,
                seed,
                biortho_l: l,
                biortho_maxk: maxk,
            };
            cmd_verify(&only, &cfg, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = dispatch(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Identity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
