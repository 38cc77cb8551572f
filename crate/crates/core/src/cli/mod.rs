//! Command line: expression parsing and the `recipcas` subcommands.
//!
//! Exit status is 0 on success or a passing certificate, 1 when a certificate
//! fails and 2 on usage, parse or domain errors.

mod parse;

use clap::{Parser, Subcommand};

use crate::certificates::{self, CertificateReport, DEFAULT_SEED, NAMES};
use crate::error::{Error, Result};
use crate::kernel::{Polynomial, RationalFunction};
use crate::recip::{brute_force_length, invert_unit_with, sigma, star_transform, InversionStrategy, LengthSearch, RecipSum, DEFAULT_TERM_BUDGET};
use crate::valuation::{value, ValuationSpec};

pub use parse::{parse_expression, Parsed};

pub const SEED_ENV: &str = "RECIPCAS_SEED";
pub const BUDGET_ENV: &str = "RECIPCAS_TERM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "recipcas", version, about = "Exact arithmetic with sums of reciprocals of polynomials")]
struct Cli {
    /// Number of variables.
    #[arg(long = "vars", default_value_t = 2, global = true)]
    vars: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize an expression and print its canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply X_i -> 1/X_i.
    Sigma {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print f*, a and t with sigma(1/f) = X^(a+t)/f*.
    Star {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Value of an expression under a valuation:
    /// xadic:i | order | wsub:p,q,h | gauss:VAR:SPEC | lex:VAR:SPEC.
    Val {
        spec: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Invert a unit given as a sum of reciprocals.
    Invert {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Term budget (default from RECIPCAS_TERM_BUDGET, else 100000).
        #[arg(long)]
        budget: Option<usize>,
        /// Use the term-by-term recursion instead of the subset formula.
        #[arg(long)]
        recursive: bool,
    },
    /// Search for a shortest reciprocal-sum representation within bounds.
    Length {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "deg")]
        deg: u32,
        #[arg(long)]
        height: u32,
        #[arg(long)]
        terms: usize,
    },
    /// Run a certificate, or `all` of them with default parameters.
    Check {
        name: String,
        params: Vec<String>,
        /// Emit JSON instead of aligned text.
        #[arg(long)]
        json: bool,
        /// Sampling seed (default from RECIPCAS_SEED, else 42).
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Runs the command line `args` (program name first) and returns the exit
/// status with everything that would go to standard output, or to standard
/// error for status 2.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn env_number<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::PreconditionViolated(format!("{name} must be a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let n = cli.vars;
    if n == 0 {
        return Err(Error::PreconditionViolated("--vars must be at least 1".into()));
    }
    let out = match &cli.command {
        Command::Eval { expr } => format!("{}\n", parse_expression(expr, n)?.to_rational()),
        Command::Sigma { expr } => format!("{}\n", sigma(&parse_expression(expr, n)?.to_rational())),
        Command::Star { poly } => {
            let f = polynomial(poly, n)?;
            let s = star_transform(&f)?;
            format!("f* = {}\na  = {:?}\nt  = {:?}\n", s.fstar, s.a, s.t)
        }
        Command::Val { spec, expr } => {
            let spec = ValuationSpec::parse(spec, n)?;
            format!("{}\n", value(&spec, &parse_expression(expr, n)?.to_rational())?)
        }
        Command::Invert {
            expr,
            budget,
            recursive,
        } => {
            let alpha = recip_sum(expr, n)?;
            let budget = match budget {
                Some(b) => *b,
                None => env_number(BUDGET_ENV)?.unwrap_or(DEFAULT_TERM_BUDGET),
            };
            let strategy = if *recursive {
                InversionStrategy::ReverseInduction
            } else {
                InversionStrategy::SubsetChain
            };
            let inv = invert_unit_with(&alpha, strategy, budget)?;
            let product = &alpha.normalize() * &inv.normalize();
            format!("inverse = {inv}\nterms   = {}\nproduct = {product}\n", inv.len())
        }
        Command::Length {
            expr,
            deg,
            height,
            terms,
        } => {
            let r = parse_expression(expr, n)?.to_rational();
            match brute_force_length(&r, *deg, *height, *terms) {
                LengthSearch::Found { length, witness } => {
                    format!("length  = {length}\nwitness = {witness}\n")
                }
                LengthSearch::NotFound => "length  > bound (no representation within the bounds)\n".to_string(),
            }
        }
        Command::Check {
            name,
            params,
            json,
            seed,
        } => {
            let seed = match seed {
                Some(s) => *s,
                None => env_number(SEED_ENV)?.unwrap_or(DEFAULT_SEED),
            };
            let reports = if name == "all" {
                if !params.is_empty() {
                    return Err(Error::PreconditionViolated("`check all` takes no parameters".into()));
                }
                certificates::run_all(seed)
            } else {
                vec![run_certificate(name, params, n, seed)?]
            };
            let passed = reports.iter().all(|r| r.passed);
            let text = render(&reports, *json, name == "all");
            return Ok((if passed { 0 } else { 1 }, text));
        }
    };
    Ok((0, out))
}

fn render(reports: &[CertificateReport], json: bool, many: bool) -> String {
    if json {
        let doc = if many {
            serde_json::to_string_pretty(reports)
        } else {
            serde_json::to_string_pretty(&reports[0])
        };
        return doc.expect("reports serialize") + "\n";
    }
    reports
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn polynomial(text: &str, n: usize) -> Result<Polynomial> {
    match parse_expression(text, n)? {
        Parsed::Poly(f) => Ok(f),
        other => match other.to_rational().as_polynomial() {
            Some(f) => Ok(f.clone()),
            None => Err(Error::PreconditionViolated(format!("`{text}` is not a polynomial"))),
        },
    }
}

fn recip_sum(text: &str, n: usize) -> Result<RecipSum> {
    match parse_expression(text, n)? {
        Parsed::Recip(a) => Ok(a),
        Parsed::Poly(f) if f.is_constant() && !f.is_zero() => RecipSum::constant(n, f.constant_term()),
        _ => Err(Error::PreconditionViolated(format!(
            "`{text}` is not a sum of reciprocals; write it with recip(...)"
        ))),
    }
}

fn uint<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    params
        .get(i)
        .ok_or_else(|| Error::PreconditionViolated(format!("missing parameter {what}")))?
        .parse()
        .map_err(|_| Error::PreconditionViolated(format!("parameter {what} must be a nonnegative integer")))
}

fn pairs(params: &[String]) -> Result<Vec<(u32, u32)>> {
    params
        .iter()
        .map(|s| {
            let (p, q) = s
                .trim_matches(|c| c == '(' || c == ')')
                .split_once(',')
                .ok_or_else(|| Error::PreconditionViolated(format!("expected a pair P,Q, got `{s}`")))?;
            let p = p.trim().parse().map_err(|_| Error::PreconditionViolated(format!("bad pair `{s}`")))?;
            let q = q.trim().parse().map_err(|_| Error::PreconditionViolated(format!("bad pair `{s}`")))?;
            Ok((p, q))
        })
        .collect()
}

fn arity(params: &[String], max: usize) -> Result<()> {
    if params.len() > max {
        return Err(Error::PreconditionViolated(format!(
            "too many parameters: expected at most {max}"
        )));
    }
    Ok(())
}

fn run_certificate(name: &str, params: &[String], n: usize, seed: u64) -> Result<CertificateReport> {
    if params.is_empty() {
        return certificates::run_default(name, seed);
    }
    match name {
        "non_ufd" => Err(Error::PreconditionViolated("non_ufd takes no parameters".into())),
        "beta_integrality" => {
            arity(params, 2)?;
            certificates::check_beta_integrality(uint(params, 0, "P")?, uint(params, 1, "Q")?)
        }
        "theta_values" => {
            arity(params, 3)?;
            certificates::check_theta_values(uint(params, 0, "P")?, uint(params, 1, "Q")?, uint(params, 2, "H")?)
        }
        "udiv_equivalence" => {
            arity(params, 3)?;
            let g = params.get(2).ok_or_else(|| Error::PreconditionViolated("missing parameter G".into()))?;
            certificates::check_udiv_equivalence(uint(params, 0, "P")?, uint(params, 1, "Q")?, &polynomial(g, 2)?)
        }
        "prime_separation" => certificates::check_prime_separation(&pairs(params)?),
        "finite_conductor_witness" => {
            arity(params, 1)?;
            certificates::check_finite_conductor_witness(uint(params, 0, "Q")?)
        }
        "overring_growth" => {
            certificates::check_overring_growth(uint(params, 0, "R")?, &pairs(&params[1..])?)
        }
        "gdomain_identity" => {
            arity(params, 1)?;
            let r: RationalFunction = parse_expression(&params[0], n)?.to_rational();
            certificates::check_gdomain_identity(&r)
        }
        "irreducibility_witness" => {
            arity(params, 1)?;
            certificates::check_irreducibility_witness(&recip_sum(&params[0], n)?)
        }
        "egyptian_obstruction" => {
            arity(params, 1)?;
            certificates::check_egyptian_obstruction(uint(params, 0, "TRIALS")?, seed)
        }
        other => Err(Error::PreconditionViolated(format!(
            "unknown certificate `{other}`; expected one of {} or all",
            NAMES.join(", ")
        ))),
    }
}
