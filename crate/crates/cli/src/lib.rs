//! Command-line front end for `quartic-core`.

pub mod cache;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use quartic_core::characters::{enumerate_range, QuarticCharacter};
use quartic_core::gauss_sums::{gauss_average, gauss_sum_twisted};
use quartic_core::lfunctions::{
    constants_with, lvalue_afe, lvalue_direct, AfeConfig, ConstantsConfig, GChoice, LValueRecord, Method,
};
use quartic_core::moments::{
    central_values, first_moment_from_values, moment_range, nonvanishing_from_values, second_moment,
    sieve_ratio_quadratic, sieve_ratio_quartic, WeightFunction,
};
use quartic_core::symbols::{quartic_symbol, quartic_symbol_fast};
use quartic_core::verify::run_suite;
use quartic_core::GaussInt;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "quartic", version, about = "Quartic residue symbols, Gauss sums and L-values over Z[i]")]
pub struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// central-value cache file
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// certified truncation error for L-values
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps: f64,
    /// master seed for randomized experiments
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Afe,
    Direct,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Afe => Method::Afe,
            MethodArg::Direct => Method::Direct,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GArg {
    One,
    Gaussian,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightArg {
    Bump12,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Quartic,
    Quadratic,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Quartic residue symbol (num/den)_4
    Symbol {
        #[arg(long, allow_hyphen_values = true)]
        num: GaussInt,
        #[arg(long, allow_hyphen_values = true)]
        den: GaussInt,
        /// use the reciprocity descent (den must be primary)
        #[arg(long)]
        fast: bool,
    },
    /// Gauss sum g(k, n)
    GaussSum {
        #[arg(long = "mod", allow_hyphen_values = true)]
        modulus: GaussInt,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        twist: GaussInt,
    },
    /// Smoothed average of normalized Gauss sums
    GaussAverage {
        #[arg(long, allow_hyphen_values = true)]
        l: GaussInt,
        #[arg(long = "X")]
        x: f64,
        /// only square-free moduli without rational prime divisors
        #[arg(long)]
        restricted: bool,
    },
    /// Characters with conductor <= max-q as CSV rows q,a,b
    Enumerate {
        #[arg(long)]
        max_q: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// L(1/2 + alpha, chi) for the character with generator a + bi
    Lvalue {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, value_enum, default_value = "afe")]
        method: MethodArg,
        /// shift as `re,im`
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        alpha: String,
        #[arg(long, value_enum, default_value = "one")]
        g: GArg,
        /// A = split * sqrt(q)
        #[arg(long, default_value_t = 1.0)]
        split: f64,
    },
    /// First moment against the predicted main term
    Moment {
        #[arg(long = "Q")]
        q: u64,
        #[arg(long, value_enum, default_value = "bump12")]
        weight: WeightArg,
        /// use directly computed L-values
        #[arg(long)]
        oracle: bool,
        /// print the underlying L-values as CSV instead of the report
        #[arg(long)]
        csv: bool,
    },
    /// Count of non-vanishing central values
    Nonvanish {
        #[arg(long = "Q")]
        q: u64,
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
    /// Second moment on the line 1/2 + it and its growth
    SecondMoment {
        #[arg(long = "Q")]
        q: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        t: f64,
    },
    /// Empirical large sieve ratios
    Sieve {
        #[arg(long, value_enum, default_value = "quartic")]
        family: Family,
        /// conductor range (Q, 2Q] for the quartic family
        #[arg(long = "Q")]
        q: Option<u64>,
        /// coefficient range (M, 2M], or modulus norms <= M for the quadratic family
        #[arg(long = "M")]
        m: Option<u64>,
        /// coefficient norms <= N for the quadratic family
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// The main-term constant and its factors
    Constants {
        #[arg(long, default_value_t = 1_000_000)]
        prime_bound: u64,
        #[arg(long, default_value_t = 100_000_000)]
        gaussian_prime_bound: u64,
        #[arg(long, default_value_t = 1_000_000)]
        dirichlet_terms: u64,
    },
    /// Run a consistency suite
    Verify {
        /// reciprocity, supplements, correspondence, gauss-magnitude, root-number or epsilon
        #[arg(long)]
        suite: String,
        /// largest norm or conductor checked
        #[arg(long, alias = "max-norm", alias = "max-q", default_value_t = 1000)]
        bound: u64,
    },
}

/// Everything that determines a report; embedded in every JSON output.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    #[serde(flatten)]
    pub command: &'a Command,
    pub format: &'static str,
    pub cache: Option<&'a Path>,
    pub threads: Option<usize>,
    pub seed: u64,
    pub truncation_eps: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Certification(String),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Certification(_) => 1,
            CliError::Usage(_) | CliError::Cache(_) => 2,
        }
    }
}

impl From<quartic_core::Error> for CliError {
    fn from(e: quartic_core::Error) -> Self {
        match e {
            quartic_core::Error::Certification(_) => CliError::Certification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Output text plus whether the run certified everything it checked.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Cli {
    fn afe_config(&self) -> Result<AfeConfig> {
        if !(self.eps > 0.0) {
            return Err(CliError::Usage(format!("--eps must be positive, got {}", self.eps)));
        }
        Ok(AfeConfig {
            truncation_eps: self.eps,
            ..AfeConfig::default()
        })
    }

    fn config(&self, format: &'static str) -> RunConfig<'_> {
        RunConfig {
            command: &self.command,
            format,
            cache: self.cache.as_deref(),
            threads: self.threads,
            seed: self.seed,
            truncation_eps: self.eps,
        }
    }

    fn json<T: Serialize>(&self, report: &T) -> Result<String> {
        // serde_json's map is ordered, so keys come out sorted
        let value = serde_json::json!({
            "config": serde_json::to_value(self.config("json")).map_err(|e| CliError::Usage(e.to_string()))?,
            "report": serde_json::to_value(report).map_err(|e| CliError::Usage(e.to_string()))?,
        });
        Ok(serde_json::to_string_pretty(&value).expect("values serialize") + "\n")
    }
}

fn parse_alpha(s: &str) -> Result<Complex64> {
    let bad = || CliError::Usage(format!("--alpha expects re,im; got {s:?}"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn character(q: u64, a: i64, b: i64) -> Result<QuarticCharacter> {
    let chi = QuarticCharacter::new(GaussInt::new(a, b))?;
    if chi.conductor() != q {
        return Err(CliError::Usage(format!("N({a}{b:+}i) = {} but --q is {q}", chi.conductor())));
    }
    Ok(chi)
}

/// Central values for conductors in `(lo, hi]`, reusing and refreshing the
/// cache when one is configured.
fn central(cli: &Cli, lo: u64, hi: u64, method: Method, config: &AfeConfig) -> Result<Vec<LValueRecord>> {
    let Some(path) = cli.cache.as_deref() else {
        return Ok(central_values(lo, hi, Complex64::new(0.0, 0.0), method, config)?);
    };
    let mut known = cache::index(cache::load(path)?);
    let chars: Vec<QuarticCharacter> = enumerate_range(hi).into_iter().filter(|c| c.conductor() > lo).collect();
    let key = |c: &QuarticCharacter| (c.conductor(), c.generator().a, c.generator().b, method);
    let missing: Vec<&QuarticCharacter> = chars.iter().filter(|c| !known.contains_key(&key(c))).collect();
    let fresh = missing
        .par_iter()
        .map(|chi| match method {
            Method::Afe => lvalue_afe(chi, Complex64::new(0.0, 0.0), config),
            Method::Direct => lvalue_direct(chi, Complex64::new(0.5, 0.0)),
        })
        .collect::<quartic_core::Result<Vec<_>>>()?;
    if !fresh.is_empty() {
        known.extend(fresh.into_iter().map(|r| (cache::key(&r), r)));
        cache::store(path, &known.values().copied().collect::<Vec<_>>())?;
    }
    Ok(chars.iter().map(|c| known[&key(c)]).collect())
}

/// Runs the parsed command on the configured thread pool.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, passed: true })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Symbol { num, den, fast } => {
            let v = if *fast { quartic_symbol_fast(num, den)? } else { quartic_symbol(num, den)? };
            ok(format!("{v}\n"))
        }
        Command::GaussSum { modulus, twist } => {
            let g = gauss_sum_twisted(twist, modulus)?;
            cli.json(&serde_json::json!({ "re": g.re, "im": g.im, "abs": g.norm() })).and_then(ok)
        }
        Command::GaussAverage { l, x, restricted } => {
            let w = WeightFunction::bump12();
            let v = gauss_average(l, *x, &w, *restricted)?;
            cli.json(&serde_json::json!({ "re": v.re, "im": v.im })).and_then(ok)
        }
        Command::Enumerate { max_q, count_only } => {
            let chars = enumerate_range(*max_q);
            if *count_only {
                return cli.json(&serde_json::json!({ "count": chars.len() })).and_then(ok);
            }
            let mut out = String::from("q,a,b\n");
            for c in &chars {
                let n = c.generator();
                out.push_str(&format!("{},{},{}\n", c.conductor(), n.a, n.b));
            }
            ok(out)
        }
        Command::Lvalue { q, a, b, method, alpha, g, split } => {
            let chi = character(*q, *a, *b)?;
            let alpha = parse_alpha(alpha)?;
            let config = AfeConfig {
                g_choice: match g {
                    GArg::One => GChoice::ConstantOne,
                    GArg::Gaussian => GChoice::Gaussian,
                },
                split_scale: *split,
                ..cli.afe_config()?
            };
            let record = match Method::from(*method) {
                Method::Afe => lvalue_afe(&chi, alpha, &config)?,
                Method::Direct => lvalue_direct(&chi, alpha + 0.5)?,
            };
            cli.json(&record).and_then(ok)
        }
        Command::Moment { q, weight: WeightArg::Bump12, oracle, csv } => {
            let w = WeightFunction::bump12();
            let method = if *oracle { Method::Direct } else { Method::Afe };
            let (lo, hi) = moment_range(*q, &w);
            let values = central(cli, lo, hi, method, &cli.afe_config()?)?;
            if *csv {
                return ok(cache::render(&values));
            }
            cli.json(&first_moment_from_values(*q, &w, method, &values)?).and_then(ok)
        }
        Command::Nonvanish { q, threshold } => {
            let values = central(cli, 0, *q, Method::Afe, &cli.afe_config()?)?;
            cli.json(&nonvanishing_from_values(*q, *threshold, &values)?).and_then(ok)
        }
        Command::SecondMoment { q, t } => cli.json(&second_moment(*q, *t, &cli.afe_config()?)?).and_then(ok),
        Command::Sieve { family, q, m, n, trials } => {
            let need = |v: &Option<u64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this family")));
            let report = match family {
                Family::Quartic => sieve_ratio_quartic(need(q, "Q")?, need(m, "M")?, *trials, cli.seed)?,
                Family::Quadratic => sieve_ratio_quadratic(need(m, "M")?, need(n, "N")?, *trials, cli.seed)?,
            };
            cli.json(&report).and_then(ok)
        }
        Command::Constants { prime_bound, gaussian_prime_bound, dirichlet_terms } => {
            if *prime_bound < 100 || *gaussian_prime_bound < 100 || *dirichlet_terms < 100 {
                return Err(CliError::Usage("bounds must be at least 100".into()));
            }
            let c = constants_with(ConstantsConfig {
                prime_bound: *prime_bound,
                gaussian_prime_bound: *gaussian_prime_bound,
                dirichlet_terms: *dirichlet_terms,
            });
            cli.json(&c).and_then(ok)
        }
        Command::Verify { suite, bound } => {
            let report = run_suite(suite, *bound)?;
            let passed = report.passed();
            Ok(Outcome {
                text: cli.json(&report)?,
                passed,
            })
        }
    }
}
