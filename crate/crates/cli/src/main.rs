//! `orbigenus`: compute orbifold elliptic genera and run verification suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input (schema, arguments),
//! 3 an evaluator error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbigenus::exactnum::rational::parse_exponent;
use orbigenus::genera::{
    age_f, breve_lift, equivariant_elliptic_genus, modified_orbifold_genus, orbifold_elliptic_genus, ty_family,
    GenusSeries, SigmaSpec, TyKind,
};
use orbigenus::model::{load_model, save_model, validate_model, weighted_projective_model, OrbifoldModel};
use orbigenus::numeric::{named_matrix, Matrix};
use orbigenus::verify::{exit_code, run_suite, Suite, SuiteParams};
use orbigenus::{Error, Exponent};

#[derive(Parser)]
#[command(name = "orbigenus", version, about = "Exact orbifold elliptic genera from fixed-point data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a genus and print it.
    Compute {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        genus: GenusArg,
        /// `k/N` or `formal`.
        #[arg(long)]
        sigma: Option<String>,
        /// Level N (modified genus and breveTy); implied by `--sigma k/N`.
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        /// Highest q-order kept, `p/r` accepted.
        #[arg(long, default_value = "2")]
        order: String,
        #[arg(long, value_enum, default_value = "text")]
        out: OutArg,
    },
    /// Run a verification suite; prints one JSON report per line.
    Check {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        suite: String,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value = "2")]
        order: String,
        /// `I`, `T`, `S`, `TS` or `a,b,c,d`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Product factors kept in numeric checks.
        #[arg(long, default_value_t = 60)]
        terms: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a model file.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        /// Orbifold weights, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Circle weights, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<i64>,
        #[arg(long)]
        level: Option<i64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print per-point group combinatorics and sector ages.
    Sectors {
        #[arg(long)]
        model: PathBuf,
        /// Also print breve ages at this level.
        #[arg(long)]
        level: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenusArg {
    Elliptic,
    Orbifold,
    Modified,
    Ty,
    HatTy,
    BreveTy,
    Todd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateKind {
    Wps,
}

enum Failure {
    Input(String),
    Eval(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseError { .. }
            | Error::SchemaError(_)
            | Error::InvalidArgument(_)
            | Error::DegenerateAction(..)
            | Error::MissingBundleData => Failure::Input(e.to_string()),
            e => Failure::Eval(e),
        }
    }
}

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

fn read_model(path: &PathBuf) -> Result<OrbifoldModel, Failure> {
    let m = load_model(path)?;
    for d in validate_model(&m) {
        eprintln!("warning: {d}");
    }
    Ok(m)
}

fn parse_order(s: &str) -> Result<Exponent, Failure> {
    let e = parse_exponent(s)?;
    if e < Exponent::from_integer(0) {
        return input(format!("order {s} must be non-negative"));
    }
    Ok(e)
}

fn parse_matrix(s: &str) -> Result<Matrix, Failure> {
    if let Some(a) = named_matrix(s) {
        return Ok(a);
    }
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("matrix `{s}` is not I, T, S, TS or a,b,c,d")))?;
    match v[..] {
        [a, b, c, d] => Ok([[a, b], [c, d]]),
        _ => input(format!("matrix `{s}` needs four entries")),
    }
}

/// `σ` from `--sigma` or `--k`/`--level`; rational σ must satisfy `0 < k < N`.
fn resolve_sigma(sigma: Option<&str>, k: Option<i64>, level: Option<i64>) -> Result<SigmaSpec, Failure> {
    let s = match (sigma, k, level) {
        (Some(s), _, _) => SigmaSpec::parse(s)?,
        (None, Some(k), Some(n)) => SigmaSpec::rational(k, n)?,
        (None, None, Some(n)) => SigmaSpec::rational(1, n)?,
        _ => SigmaSpec::Formal,
    };
    if let SigmaSpec::Rational { k, n } = s {
        if !(0 < k && k < n) {
            return input(format!("sigma = {k}/{n}: k out of range, need 0 < k < N"));
        }
    }
    Ok(s)
}

fn compute(
    m: &OrbifoldModel,
    genus: GenusArg,
    sigma: SigmaSpec,
    level: Option<i64>,
    order: Exponent,
) -> Result<GenusSeries, Failure> {
    let need_rational = |what: &str| match sigma.parts() {
        Some(p) => Ok(p),
        None => input(format!("the {what} genus needs --sigma k/N")),
    };
    Ok(match genus {
        GenusArg::Elliptic => equivariant_elliptic_genus(m, sigma, order)?,
        GenusArg::Orbifold => orbifold_elliptic_genus(m, sigma, order)?,
        GenusArg::Modified => {
            let (k, n) = need_rational("modified")?;
            modified_orbifold_genus(m, k, n, order)?
        }
        GenusArg::Ty => ty_family(m, TyKind::Ty, sigma, None)?,
        GenusArg::HatTy => ty_family(m, TyKind::HatTy, sigma, None)?,
        GenusArg::BreveTy => ty_family(m, TyKind::BreveTy, sigma, level)?,
        GenusArg::Todd => ty_family(m, TyKind::Todd, SigmaSpec::Formal, None)?,
    })
}

fn sectors(m: &OrbifoldModel, level: Option<i64>) -> Result<String, Failure> {
    let mut out = format!("# {} (n = {}, {} fixed points)\n", m.name, m.n, m.fixed_points.len());
    for p in &m.fixed_points {
        let g = &p.isotropy;
        let classes = g.conjugacy_classes();
        out.push_str(&format!(
            "{}: |H| = {}, classes = {}, |CM| = {}, |C^| = {}\n",
            p.label,
            g.order(),
            classes.len(),
            g.commuting_pairs().len(),
            g.double_classes().len()
        ));
        for c in &classes {
            let h = c.representative;
            let f = age_f(p, h);
            let chi: Vec<String> = p.weights.iter().map(|w| w.chi[h].to_string()).collect();
            let mut line = format!("  [{h}] size {} chi = ({}) f = {f}", c.members.len(), chi.join(", "));
            if let Some(n) = level {
                match breve_lift(&f, n) {
                    Ok(b) => line.push_str(&format!(" breve f = {b}")),
                    Err(e) => line.push_str(&format!(" breve f: {e}")),
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Compute {
            model,
            genus,
            sigma,
            level,
            k,
            order,
            out,
        } => {
            let m = read_model(&model)?;
            let sigma = resolve_sigma(sigma.as_deref(), k, level)?;
            let g = compute(&m, genus, sigma, level, parse_order(&order)?)?;
            match out {
                OutArg::Json => println!("{}", g.to_json()),
                OutArg::Text => print!("{}", g.to_text()),
            }
            Ok(0)
        }
        Command::Check {
            model,
            suite,
            level,
            k,
            order,
            matrix,
            samples,
            terms,
            tol,
            seed,
        } => {
            let Some(suite) = Suite::parse(&suite) else {
                return input(format!("unknown suite `{suite}`"));
            };
            let m = match &model {
                Some(p) => Some(read_model(p)?),
                None if suite.needs_model() => return input("this suite needs --model"),
                None => None,
            };
            if let Some(n) = level {
                resolve_sigma(None, Some(k), Some(n))?;
            }
            let params = SuiteParams {
                level,
                k,
                order: parse_order(&order)?,
                matrix: matrix.as_deref().map(parse_matrix).transpose()?,
                samples,
                numeric_order: terms,
                tol,
                seed,
            };
            let results = run_suite(m.as_ref(), suite, &params);
            for r in &results {
                match r {
                    Ok(report) => println!("{}", report.to_json()),
                    Err(e) => eprintln!("error: {e}"),
                }
            }
            let bad_input = results
                .iter()
                .filter_map(|r| r.as_ref().err())
                .any(|e| matches!(Failure::from(e.clone()), Failure::Input(_)));
            if bad_input {
                return Ok(2);
            }
            Ok(exit_code(&results))
        }
        Command::Generate { kind, a, c, level, out } => {
            let m = match kind {
                GenerateKind::Wps => weighted_projective_model(&a, &c, level)?,
            };
            match out {
                Some(path) => save_model(&m, &path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => println!("{}", orbigenus::model::model_to_json(&m)),
            }
            Ok(0)
        }
        Command::Sectors { model, level } => {
            let m = read_model(&model)?;
            print!("{}", sectors(&m, level)?);
            Ok(0)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ORBIGENUS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation only happens in tests; ignoring it is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            3
        }
    };
    ExitCode::from(code as u8)
}
