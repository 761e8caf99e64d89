//! `kvlie`: build, verify and export the series of the first
//! Kashiwara–Vergne equation.
//!
//! Exit codes: 0 when output was produced or an identity verified, 1 for a
//! mathematical defect, 2 for usage and parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kvlie::arith::parse_rational;
use kvlie::idempotents::{dynkin, psi};
use kvlie::kv::bch::{bch_eulerian_for, bch_oracle_for};
use kvlie::kv::{
    f0, general_solution, homogeneous_defect, homogeneous_solution, multilinear_particular,
    particular_solution, verify_kv1, verify_multilinear, verify_split, SignConvention,
};
use kvlie::lyndon::{lyndon_words, witt_dimension};
use kvlie::text::{format_latex, format_poly, parse_poly, to_json_terms};
use kvlie::{Alphabet, GradedSeries, KvError, Poly, Rational};
use serde_json::json;

const MAX_UNFORCED_DEGREE: usize = 11;
const THREADS_ENV: &str = "KVLIE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "kvlie",
    version,
    about = "Exact free Lie algebra tools for the first Kashiwara-Vergne equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Allow degrees above 11.
    #[arg(long, global = true)]
    force: bool,

    /// Worker threads; defaults to $KVLIE_THREADS, then to the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The degree-N component of log(e^x1 ... e^xk).
    Bch {
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Print every component through the degree instead of the top one.
        #[arg(long)]
        cumulative: bool,
        #[arg(long, value_enum, default_value_t = Method::Eulerian)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// The particular solution F0.
    F0 {
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Check an equation through a degree; prints the first defect term on failure.
    Verify {
        #[arg(long, value_enum)]
        equation: Equation,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// For `homogeneous`, an element of Ker γ; for `kv1`, the p of the general solution.
        #[arg(long)]
        kernel_poly: Option<String>,
        /// Number of letters for `multilinear`.
        #[arg(long, default_value_t = 3)]
        vars: usize,
    },
    /// The solution (F, G) determined by p, λ1 and λ2, checked before printing.
    Solution {
        #[arg(long, default_value = "0")]
        kernel_poly: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Dimensions of the free Lie algebra on two letters, degree by degree.
    Witt {
        #[arg(long, default_value_t = 10)]
        degree: usize,
    },
    /// Ψ_z(p) = γ((p - γ(p))_z).
    Psi {
        #[arg(long, value_enum)]
        var: Var,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Eulerian,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Equation {
    Kv1,
    Split,
    Homogeneous,
    Multilinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Var {
    X,
    Y,
}

enum Failure {
    Usage(String),
    Defect(String),
}

impl From<KvError> for Failure {
    fn from(e: KvError) -> Self {
        match e {
            KvError::NotASolution(_) | KvError::NotInKernel | KvError::Inconsistent(_) => {
                Failure::Defect(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command produced: text to emit, and whether it reports a defect.
struct Report {
    body: String,
    defect: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report {
            body,
            defect: false,
        }
    }
}

fn render(p: &Poly, format: Format) -> String {
    match format {
        Format::Text => format_poly(p),
        Format::Json => serde_json::to_string(&to_json_terms(p)).expect("plain data serializes"),
        Format::Latex => format_latex(p),
    }
}

fn render_pair(f: &Poly, g: &Poly, format: Format) -> String {
    match format {
        Format::Text => format!("F = {}\nG = {}", format_poly(f), format_poly(g)),
        Format::Json => json!({ "F": to_json_terms(f), "G": to_json_terms(g) }).to_string(),
        Format::Latex => format!("F = {} \\\\\nG = {}", format_latex(f), format_latex(g)),
    }
}

fn check_degree(degree: usize, force: bool) -> Result<(), Failure> {
    if degree == 0 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    if degree > MAX_UNFORCED_DEGREE && !force {
        return Err(Failure::Usage(format!(
            "degree {degree} exceeds {MAX_UNFORCED_DEGREE}; pass --force to run it anyway"
        )));
    }
    Ok(())
}

fn parse_xy(text: &str) -> Result<Poly, Failure> {
    parse_poly(&Alphabet::xy(), text).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn parse_q(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn verdict(equation: &str, degree: usize, defect: &GradedSeries, format: Format) -> Report {
    let first = defect.first_nonzero();
    let body = match format {
        Format::Json => json!({
            "equation": equation,
            "degree": degree,
            "zero": first.is_none(),
            "first_defect": first.as_ref().map(|t| json!({
                "degree": t.degree,
                "word": t.word,
                "coeff": kvlie::arith::format_rational(&t.coeff),
            })),
        })
        .to_string(),
        _ => match &first {
            None => format!("{equation}: defect zero through degree {degree}"),
            Some(t) => format!("{equation}: first defect term {t}"),
        },
    };
    Report {
        body,
        defect: first.is_some(),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Bch {
            degree,
            cumulative,
            method,
            vars,
        } => {
            check_degree(*degree, cli.force)?;
            let alphabet = Alphabet::standard(*vars)?;
            let factors: Vec<u8> = (0..*vars as u8).collect();
            let shown = |s: &GradedSeries| {
                if *cumulative {
                    s.to_poly()
                } else {
                    s.component(*degree).clone()
                }
            };
            let eulerian = || bch_eulerian_for(&alphabet, &factors, *degree);
            let oracle = || bch_oracle_for(&alphabet, &factors, *degree);
            match method {
                Method::Eulerian => Ok(Report::ok(render(&shown(eulerian()?.series()), format))),
                Method::Oracle => Ok(Report::ok(render(&shown(oracle()?.series()), format))),
                Method::Both => {
                    let diff = &eulerian()?.series().to_poly() - &oracle()?.series().to_poly();
                    Ok(Report {
                        body: if diff.is_zero() {
                            String::new()
                        } else {
                            render(&diff, format)
                        },
                        defect: !diff.is_zero(),
                    })
                }
            }
        }
        Command::F0 { degree } => {
            check_degree(*degree, cli.force)?;
            Ok(Report::ok(render(&f0(*degree)?.to_poly(), format)))
        }
        Command::Verify {
            equation,
            degree,
            kernel_poly,
            vars,
        } => {
            check_degree(*degree, cli.force)?;
            let n = *degree;
            let zero = Rational::from_integer(0.into());
            let (name, defect) = match equation {
                Equation::Kv1 => {
                    let pair = match kernel_poly {
                        Some(text) => general_solution(&parse_xy(text)?, &zero, &zero, n)?,
                        None => particular_solution(n)?,
                    };
                    ("kv1", verify_kv1(&pair, n)?)
                }
                Equation::Split => ("split", verify_split(&f0(n)?, n)?),
                Equation::Homogeneous => {
                    let text = kernel_poly.as_deref().ok_or_else(|| {
                        Failure::Usage("--equation homogeneous needs --kernel-poly".into())
                    })?;
                    let p = parse_xy(text)?;
                    if !dynkin(&p).is_zero() {
                        return Err(Failure::Defect(format!(
                            "`{text}` is not in the kernel of γ; γ(p) = {}",
                            format_poly(&dynkin(&p))
                        )));
                    }
                    let pair = homogeneous_solution(&p, &zero, &zero, n)?;
                    ("homogeneous", homogeneous_defect(&pair, n)?)
                }
                Equation::Multilinear => {
                    let sols = multilinear_particular(*vars, n, SignConvention::Alternating)?;
                    ("multilinear", verify_multilinear(*vars, &sols, n)?)
                }
            };
            Ok(verdict(name, n, &defect, format))
        }
        Command::Solution {
            kernel_poly,
            lambda1,
            lambda2,
            degree,
        } => {
            check_degree(*degree, cli.force)?;
            let p = parse_xy(kernel_poly)?;
            let pair = general_solution(&p, &parse_q(lambda1)?, &parse_q(lambda2)?, *degree)?;
            let defect = verify_kv1(&pair, *degree + 1)?;
            if let Some(t) = defect.first_nonzero() {
                return Err(Failure::Defect(format!("solution fails KV-1: {t}")));
            }
            Ok(Report::ok(render_pair(
                &pair.f.to_poly(),
                &pair.g.to_poly(),
                format,
            )))
        }
        Command::Witt { degree } => {
            check_degree(*degree, cli.force)?;
            let alphabet = Alphabet::xy();
            let mut rows = Vec::new();
            for n in 1..=*degree {
                let dim = witt_dimension(2, n as u64)?;
                let lyndon = lyndon_words(&alphabet, n)?.len() as u64;
                if dim != lyndon {
                    return Err(Failure::Defect(format!(
                        "degree {n}: Witt {dim}, Lyndon words {lyndon}"
                    )));
                }
                rows.push((n, dim));
            }
            Ok(Report::ok(match format {
                Format::Json => serde_json::to_string(
                    &rows
                        .iter()
                        .map(|(n, d)| json!({ "degree": n, "dimension": d }))
                        .collect::<Vec<_>>(),
                )
                .expect("plain data serializes"),
                _ => rows
                    .iter()
                    .map(|(n, d)| format!("{n} {d}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }))
        }
        Command::Psi { var, poly } => {
            let z = match var {
                Var::X => 0,
                Var::Y => 1,
            };
            Ok(Report::ok(render(&psi(&parse_xy(poly)?, z), format)))
        }
    }
}

fn thread_count(cli: &Cli) -> Result<Option<usize>, Failure> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    let mut text = body.to_string();
    if !text.is_empty() {
        text.push('\n');
    }
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = thread_count(&cli).and_then(|threads| {
        if let Some(n) = threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let report = run(&cli)?;
        emit(&cli, &report.body)?;
        Ok(report.defect)
    });
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Defect(msg)) => {
            eprintln!("kvlie: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("kvlie: {msg}");
            ExitCode::from(2)
        }
    }
}
