//! Command-line front end: censuses over bound grids, predicted constants,
//! local densities, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity.

mod config;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use conic_census::census::{
    count_all_conics, count_generalized, count_norm_form, count_primitive_conics,
    count_two_squares, CountRecord, FamilyParams, HomogeneousPoly,
};
use conic_census::constants::{
    local_density_conic, local_density_conic_closed, local_density_two_squares,
    local_density_two_squares_closed, predict_conics, predict_genguo, predict_norm_form,
    predict_two_squares,
};
use conic_census::error::Error;
use conic_census::FactorSieve;

use config::ConfigFile;
use output::{fmt_f64, write_rows};

#[derive(Parser)]
#[command(
    name = "conic-census",
    version,
    about = "Census of everywhere-locally-soluble diagonal conics, predicted leading constants, and exact verification suites"
)]
struct Cli {
    /// Optional key=value config file mirroring the long flags; flags win.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output path for CSV (default: stdout).
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a census over a bound grid and emit CSV rows.
    Count {
        #[command(subcommand)]
        family: CountFamily,
    },
    /// Evaluate predicted leading constants with truncation diagnostics.
    Predict {
        #[command(subcommand)]
        family: PredictFamily,
    },
    /// Print a local density, both the enumeration and the closed form.
    Density(DensityArgs),
    /// Run a verification suite; exits 1 on any failing check.
    Verify {
        /// hilbert | detectors | densities | assembly | selberg
        #[arg(long)]
        suite: String,
        /// Truncation prime bound for constants (accepts 1e6 style).
        #[arg(short = 'P', long)]
        prime_bound: Option<String>,
    },
}

#[derive(Subcommand)]
enum CountFamily {
    /// N(B): primitive signed coefficient triples with a rational point.
    Conics(BoundArgs),
    /// N0(B): the same without the primitivity condition.
    ConicsAll(BoundArgs),
    /// N_{b,m}(X): the generalized squarefree family.
    Genguo(GenguoArgs),
    /// Coprime pairs representing sums of two rational squares.
    TwoSquares(BoundArgs),
    /// Primitive points with g(x) a norm from Q(sqrt a).
    NormForm(NormFormArgs),
}

#[derive(Subcommand)]
enum PredictFamily {
    Conics(PredictArgs),
    Genguo(GenguoPredictArgs),
    TwoSquares(PredictArgs),
    NormForm(NormFormPredictArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Bound grid, comma separated (e.g. 100,200,400,800).
    #[arg(long, value_delimiter = ',')]
    bmax: Vec<u64>,
    /// Truncation prime bound for the predicted column.
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
}

#[derive(Args)]
struct GenguoArgs {
    /// Box X1,X2,X3; repeat the flag for a grid.
    #[arg(long, value_delimiter = ',', action = clap::ArgAction::Append)]
    x: Vec<u64>,
    /// b1,b2,b3
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u64>>,
    /// m12,m13,m23
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u64>>,
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
}

#[derive(Args)]
struct NormFormArgs {
    /// Diagonal quadratic coefficients of g, comma separated (e.g. 1,3).
    #[arg(long, value_delimiter = ',')]
    g: Vec<i64>,
    /// The quadratic field element a of the norm form.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, value_delimiter = ',')]
    bmax: Vec<u64>,
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
    /// Residue enumeration depth at the exceptional primes.
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
}

#[derive(Args)]
struct GenguoPredictArgs {
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u64>>,
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
}

#[derive(Args)]
struct NormFormPredictArgs {
    #[arg(long, value_delimiter = ',')]
    g: Vec<i64>,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    a: i64,
    #[arg(short = 'P', long)]
    prime_bound: Option<String>,
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct DensityArgs {
    /// conics | two-squares
    #[arg(long)]
    family: String,
    /// The prime.
    #[arg(long)]
    p: u64,
    /// Unit enumeration depth (modulus exponent).
    #[arg(long)]
    depth: Option<u32>,
}

fn parse_bound(text: &str) -> Result<u64, Error> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(v) if v >= 1.0 && v < 1e18 => Ok(v as u64),
        _ => Err(Error::Domain(format!("cannot parse bound '{text}'"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match ConfigFile::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let workers = cli.workers.or_else(|| cfg.get_usize("workers"));
    if let Some(w) = workers {
        if w == 0 {
            eprintln!("error: workers must be >= 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn prime_bound_or(cfg: &ConfigFile, flag: &Option<String>) -> Result<u64, Error> {
    match flag.as_deref().map(str::to_owned).or_else(|| cfg.get("prime-bound")) {
        Some(t) => parse_bound(&t),
        None => Ok(1_000_000),
    }
}

fn run(cli: Cli, cfg: &ConfigFile) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Count { family } => {
            let (header, rows) = run_count(family, cfg)?;
            let out = cli.out.or_else(|| cfg.get("out"));
            write_rows(out.as_deref(), &header, &rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict { family } => {
            run_predict(family, cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Density(args) => {
            run_density(args, cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, prime_bound } => {
            let bound = prime_bound_or(cfg, &prime_bound)?;
            let ok = verify::run_suite(&suite, bound)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn scalar_grid(bmax: &[u64], cfg: &ConfigFile) -> Result<Vec<u64>, Error> {
    let grid = if bmax.is_empty() {
        cfg.get("bmax")
            .map(|t| t.split(',').map(parse_bound).collect::<Result<Vec<_>, _>>())
            .transpose()?
            .unwrap_or_default()
    } else {
        bmax.to_vec()
    };
    if grid.is_empty() {
        return Err(Error::Domain("empty bound grid; pass --bmax".into()));
    }
    if grid.contains(&0) {
        return Err(Error::Domain("bounds must be positive".into()));
    }
    Ok(grid)
}

fn run_count(family: CountFamily, cfg: &ConfigFile) -> Result<(String, Vec<Vec<String>>), Error> {
    match family {
        CountFamily::Conics(args) => {
            let grid = scalar_grid(&args.bmax, cfg)?;
            let prime_bound = prime_bound_or(cfg, &args.prime_bound)?;
            let predicted = predict_conics(prime_bound).constant();
            let sieve = FactorSieve::new((*grid.iter().max().unwrap()).max(2))?;
            let rows = grid
                .iter()
                .map(|&b| {
                    let raw = count_primitive_conics(b, &sieve)?;
                    let norm = (b as f64).ln().powf(1.5) / (b as f64).powi(3);
                    Ok(CountRecord::new(vec![b], raw, norm, predicted))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(record_rows(&rows, false))
        }
        CountFamily::ConicsAll(args) => {
            let grid = scalar_grid(&args.bmax, cfg)?;
            let prime_bound = prime_bound_or(cfg, &args.prime_bound)?;
            let predicted = predict_conics(prime_bound).all_triples_constant();
            let sieve = FactorSieve::new((*grid.iter().max().unwrap()).max(2))?;
            let rows = grid
                .iter()
                .map(|&b| {
                    let raw = count_all_conics(b, &sieve)?;
                    let norm = (b as f64).ln().powf(1.5) / (b as f64).powi(3);
                    Ok(CountRecord::new(vec![b], raw, norm, predicted))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(record_rows(&rows, false))
        }
        CountFamily::Genguo(args) => {
            let boxes = genguo_boxes(&args.x, cfg)?;
            let params = family_params(&args.b, &args.m, cfg)?;
            let prime_bound = prime_bound_or(cfg, &args.prime_bound)?;
            let max_x = boxes.iter().flatten().copied().max().unwrap().max(2);
            let m_prod = params.m.iter().product::<u64>();
            let sieve = FactorSieve::new(max_x.max(m_prod).max(2))?;
            let predicted = predict_genguo(&params, prime_bound, &sieve)?;
            let rows = boxes
                .iter()
                .map(|&x| {
                    let raw = count_generalized(&params, x, &sieve)?;
                    let norm = x
                        .iter()
                        .map(|&xi| (xi as f64).ln().sqrt() / xi as f64)
                        .product::<f64>();
                    Ok(CountRecord::new(x.to_vec(), raw, norm, predicted))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(record_rows(&rows, true))
        }
        CountFamily::TwoSquares(args) => {
            let grid = scalar_grid(&args.bmax, cfg)?;
            let prime_bound = prime_bound_or(cfg, &args.prime_bound)?;
            let predicted = predict_two_squares(prime_bound).value;
            let sieve = FactorSieve::new((*grid.iter().max().unwrap()).max(2))?;
            let rows = grid
                .iter()
                .map(|&b| {
                    let raw = count_two_squares(b, &sieve)?;
                    let norm = (b as f64).ln() / (b as f64).powi(2);
                    Ok(CountRecord::new(vec![b], raw, norm, predicted))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(record_rows(&rows, false))
        }
        CountFamily::NormForm(args) => {
            let g = diagonal_poly(&args.g, cfg)?;
            let grid = scalar_grid(&args.bmax, cfg)?;
            let prime_bound = prime_bound_or(cfg, &args.prime_bound)?;
            let depth = args
                .depth
                .or_else(|| cfg.get_usize("depth").map(|v| v as u32))
                .unwrap_or(3);
            let bmax = *grid.iter().max().unwrap();
            let value_bound: u64 = g
                .terms
                .iter()
                .map(|(c, _)| c.unsigned_abs() * bmax.pow(g.degree))
                .sum();
            let sieve = FactorSieve::new(value_bound.max(2 * args.a.unsigned_abs()).max(2))?;
            let pred = predict_norm_form(&g, args.a, prime_bound, depth, 2_000_000, &sieve)?;
            let n1 = g.nvars as i32;
            let rows = grid
                .iter()
                .map(|&b| {
                    let raw = count_norm_form(&g, args.a, b, &sieve)?;
                    let norm = (b as f64).ln().sqrt() / (b as f64).powi(n1);
                    Ok(CountRecord::new(vec![b], raw, norm, pred.constant))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(record_rows(&rows, false))
        }
    }
}

fn record_rows(records: &[CountRecord], triple: bool) -> (String, Vec<Vec<String>>) {
    let header = if triple {
        "x1,x2,x3,raw_count,normalized,predicted,ratio".to_string()
    } else {
        "bound,raw_count,normalized,predicted,ratio".to_string()
    };
    let rows = records
        .iter()
        .map(|r| {
            let mut row: Vec<String> = r.bounds.iter().map(|b| b.to_string()).collect();
            row.push(r.raw_count.to_string());
            row.push(fmt_f64(r.normalized));
            row.push(fmt_f64(r.predicted));
            row.push(fmt_f64(r.ratio));
            row
        })
        .collect();
    (header, rows)
}

fn genguo_boxes(x: &[u64], cfg: &ConfigFile) -> Result<Vec<[u64; 3]>, Error> {
    let flat: Vec<u64> = if x.is_empty() {
        cfg.get("x")
            .map(|t| t.split(',').map(parse_bound).collect::<Result<Vec<_>, _>>())
            .transpose()?
            .unwrap_or_default()
    } else {
        x.to_vec()
    };
    if flat.is_empty() || flat.len() % 3 != 0 {
        return Err(Error::Domain("pass --x X1,X2,X3 (repeatable)".into()));
    }
    if flat.contains(&0) {
        return Err(Error::Domain("box bounds must be positive".into()));
    }
    Ok(flat.chunks(3).map(|c| [c[0], c[1], c[2]]).collect())
}

fn family_params(
    b: &Option<Vec<u64>>,
    m: &Option<Vec<u64>>,
    cfg: &ConfigFile,
) -> Result<FamilyParams, Error> {
    let parse3 = |t: String| -> Result<Vec<u64>, Error> { t.split(',').map(parse_bound).collect() };
    let b = match b {
        Some(v) => v.clone(),
        None => cfg.get("b").map(parse3).transpose()?.unwrap_or_else(|| vec![1, 1, 1]),
    };
    let m = match m {
        Some(v) => v.clone(),
        None => cfg.get("m").map(parse3).transpose()?.unwrap_or_else(|| vec![1, 1, 1]),
    };
    if b.len() != 3 || m.len() != 3 {
        return Err(Error::Domain("--b and --m take three entries".into()));
    }
    FamilyParams::new([b[0], b[1], b[2]], [m[0], m[1], m[2]])
}

fn diagonal_poly(g: &[i64], cfg: &ConfigFile) -> Result<HomogeneousPoly, Error> {
    let coeffs: Vec<i64> = if g.is_empty() {
        cfg.get("g")
            .map(|t| {
                t.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Domain(format!("bad coefficient '{s}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?
            .unwrap_or_default()
    } else {
        g.to_vec()
    };
    if coeffs.is_empty() {
        return Err(Error::Domain("pass --g c0,c1,... (diagonal quadratic)".into()));
    }
    HomogeneousPoly::diagonal_quadratic(&coeffs)
}

fn run_predict(family: PredictFamily, cfg: &ConfigFile) -> Result<(), Error> {
    match family {
        PredictFamily::Conics(args) => {
            let p = prime_bound_or(cfg, &args.prime_bound)?;
            let pred = predict_conics(p);
            println!("family=conics prime_bound={p}");
            println!(
                "route=local-densities constant={} tail={}",
                fmt_f64(pred.via_densities.value),
                fmt_f64(pred.via_densities.tail_bound)
            );
            println!(
                "route=bm-factorization constant={} tail={}",
                fmt_f64(pred.via_factorization.value),
                fmt_f64(pred.via_factorization.tail_bound)
            );
            println!(
                "route=tamagawa-assembly constant={} tail={}",
                fmt_f64(pred.via_assembly.value),
                fmt_f64(pred.via_assembly.tail_bound)
            );
            println!("route-spread={}", fmt_f64(pred.max_route_spread()));
            println!("all-triples-constant={}", fmt_f64(pred.all_triples_constant()));
        }
        PredictFamily::Genguo(args) => {
            let p = prime_bound_or(cfg, &args.prime_bound)?;
            let params = family_params(&args.b, &args.m, cfg)?;
            let limit = (params.m.iter().product::<u64>())
                .max(params.b.iter().product::<u64>())
                .max(2);
            let sieve = FactorSieve::new(limit)?;
            let coef = predict_genguo(&params, p, &sieve)?;
            println!(
                "family=genguo b={},{},{} m={},{},{} prime_bound={p}",
                params.b[0], params.b[1], params.b[2], params.m[0], params.m[1], params.m[2]
            );
            println!("coefficient={}", fmt_f64(coef));
        }
        PredictFamily::TwoSquares(args) => {
            let p = prime_bound_or(cfg, &args.prime_bound)?;
            let v = predict_two_squares(p);
            println!("family=two-squares prime_bound={p}");
            println!("constant={} tail={}", fmt_f64(v.value), fmt_f64(v.tail_bound));
        }
        PredictFamily::NormForm(args) => {
            let p = prime_bound_or(cfg, &args.prime_bound)?;
            let depth = args.depth.unwrap_or(3);
            let g = diagonal_poly(&args.g, cfg)?;
            let sieve = FactorSieve::new(1000)?;
            let pred = predict_norm_form(&g, args.a, p, depth, 2_000_000, &sieve)?;
            println!("family=norm-form a={} prime_bound={p} depth={depth}", args.a);
            println!("omega_infty={}", fmt_f64(pred.omega_infty));
            for (q, f, unc) in &pred.omega_p {
                println!("omega_p p={q} factor={} uncertainty={}", fmt_f64(*f), fmt_f64(*unc));
            }
            println!("constant-naive={}", fmt_f64(pred.constant));
            println!("constant-anticanonical={}", fmt_f64(pred.constant_anticanonical));
        }
    }
    Ok(())
}

fn run_density(args: DensityArgs, cfg: &ConfigFile) -> Result<(), Error> {
    let depth = args
        .depth
        .or_else(|| cfg.get_usize("depth").map(|v| v as u32))
        .unwrap_or(if args.p == 2 { 3 } else { 1 });
    match args.family.as_str() {
        "conics" => {
            let e = local_density_conic(args.p, depth)?;
            let c = local_density_conic_closed(args.p);
            println!("family=conics p={} depth={}", args.p, depth);
            println!("enumeration={}/{}", e.numer(), e.denom());
            println!("closed={}/{}", c.numer(), c.denom());
            println!("match={}", e == c);
        }
        "two-squares" => {
            let e = local_density_two_squares(args.p, depth)?;
            let c = local_density_two_squares_closed(args.p);
            println!("family=two-squares p={} depth={}", args.p, depth);
            println!("enumeration={}/{}", e.numer(), e.denom());
            println!("closed={}/{}", c.numer(), c.denom());
            println!("match={}", e == c);
        }
        other => return Err(Error::Domain(format!("unknown density family '{other}'"))),
    }
    Ok(())
}
