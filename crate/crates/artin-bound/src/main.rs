//! `artin-bound`: evaluate the explicit GRH-conditional norm bound for the
//! (k+1)-st prime ideal with prescribed Artin symbol, and verify it (plus
//! every auxiliary inequality of its derivation) against exact prime-ideal
//! censuses of abelian extensions of ℚ.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage or
//! configuration error, 3 resource limit (sieve/census too small or capped).

use artin_bound::census::{build_census, load_or_sieve, CensusError};
use artin_bound::config::SweepConfig;
use artin_bound::explicit_bounds::{theorem_sqrt_bound, BoundInputs};
use artin_bound::field_models::{class_context, ClassElement, FieldFamily, GaloisClassSpec};
use artin_bound::report::{fmt_f64, VerificationReport};
use artin_bound::verify::{self, VerifyError};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "artin-bound",
    about = "Explicit bound for the (k+1)-st prime ideal with prescribed Artin symbol, \
             with exact-census verification of the bound and its proof chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the norm bound for one (field, class, k) and print the
    /// per-term breakdown
    Bound {
        #[command(flatten)]
        field: FieldArgs,
        /// Bound the (k+1)-st qualifying prime ideal
        #[arg(long, default_value_t = 0)]
        k: u64,
    },
    /// Dump the exact prime-power census of one (field, class) as CSV
    Census {
        #[command(flatten)]
        field: FieldArgs,
        /// Census all prime powers up to this limit
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the k-th prime-ideal norm against the bound across a sweep
    VerifyTheorem(SweepArgs),
    /// Check the psi_C main estimate at every census event of a sweep
    VerifyPsi(SweepArgs),
    /// Check the x >= 400 reduction chain inequalities across a sweep
    VerifyChain(SweepArgs),
    /// Run the module-level property suites (series, aggregation identity,
    /// partition of mass, e*f*g = degree, auxiliary monotonicity)
    Selfcheck(SweepArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Use Q(sqrt(d)) with this squarefree d
    #[arg(long, conflicts_with = "cyclotomic", allow_negative_numbers = true)]
    quadratic: Option<i64>,
    /// Use Q(zeta_m) with this m (>= 3, not 2 mod 4)
    #[arg(long)]
    cyclotomic: Option<u64>,
    /// Galois class: "trivial", "nontrivial" (quadratic), or a unit a mod m
    /// (cyclotomic)
    #[arg(long, default_value = "trivial")]
    class: String,
}

#[derive(Args)]
struct SweepArgs {
    /// key=value config file; flags below override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    quadratic_d_max: Option<u64>,
    #[arg(long)]
    cyclotomic_m_max: Option<u64>,
    #[arg(long)]
    include_rational: Option<bool>,
    #[arg(long)]
    k_max: Option<u64>,
    #[arg(long)]
    sieve_limit: Option<u64>,
    #[arg(long)]
    grid_step: Option<u64>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// K (prime ideals of the base field, the bound's convention) or L
    #[arg(long)]
    ideals_of: Option<String>,
    /// Prime-table cache file (relative paths resolve under
    /// $ARTIN_BOUND_CACHE_DIR)
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_RESOURCE: i32 = 3;

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(EXIT_USAGE);
}

impl FieldArgs {
    fn resolve(&self) -> GaloisClassSpec {
        let family = match (self.quadratic, self.cyclotomic) {
            (Some(d), None) => {
                FieldFamily::quadratic(d).unwrap_or_else(|e| usage_error(&e.to_string()))
            }
            (None, Some(m)) => {
                FieldFamily::cyclotomic(m).unwrap_or_else(|e| usage_error(&e.to_string()))
            }
            (None, None) => FieldFamily::Rational,
            _ => usage_error("--quadratic and --cyclotomic are mutually exclusive"),
        };
        let elem = match (family, self.class.as_str()) {
            (FieldFamily::Rational, "trivial") => ClassElement::Trivial,
            (FieldFamily::Quadratic(_), "trivial") => ClassElement::Sign(1),
            (FieldFamily::Quadratic(_), "nontrivial") => ClassElement::Sign(-1),
            (FieldFamily::Cyclotomic(_), s) => match s.parse::<u64>() {
                Ok(a) => ClassElement::Unit(a),
                Err(_) if s == "trivial" => ClassElement::Unit(1),
                Err(_) => usage_error(&format!("cyclotomic class must be a unit mod m, got {s:?}")),
            },
            (_, s) => usage_error(&format!("class {s:?} is not valid for this field")),
        };
        class_context(family, elem).unwrap_or_else(|e| usage_error(&e.to_string()))
    }
}

impl SweepArgs {
    fn resolve(&self) -> SweepConfig {
        let mut config = match &self.config {
            Some(path) => {
                SweepConfig::from_file(path).unwrap_or_else(|e| usage_error(&e.to_string()))
            }
            None => SweepConfig::default(),
        };
        let mut set = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                config
                    .set(key, &v)
                    .unwrap_or_else(|e| usage_error(&e.to_string()));
            }
        };
        set("quadratic_d_max", self.quadratic_d_max.map(|v| v.to_string()));
        set("cyclotomic_m_max", self.cyclotomic_m_max.map(|v| v.to_string()));
        set("include_rational", self.include_rational.map(|v| v.to_string()));
        set("k_max", self.k_max.map(|v| v.to_string()));
        set("sieve_limit", self.sieve_limit.map(|v| v.to_string()));
        set("grid_step", self.grid_step.map(|v| v.to_string()));
        set("format", self.format.clone());
        set("ideals_of", self.ideals_of.clone());
        set(
            "cache",
            self.cache.as_ref().map(|p| p.display().to_string()),
        );
        set("tolerance", self.tolerance.map(|v| v.to_string()));
        config
            .validate()
            .unwrap_or_else(|e| usage_error(&e.to_string()));
        config
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) {
    match out {
        Some(path) => std::fs::write(path, text).unwrap_or_else(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            std::process::exit(EXIT_RESOURCE);
        }),
        None => print!("{text}"),
    }
}

fn run_sweep(
    name: &str,
    args: &SweepArgs,
    runner: fn(&SweepConfig) -> Result<VerificationReport, VerifyError>,
) -> i32 {
    let config = args.resolve();
    let start = Instant::now();
    let report = match runner(&config) {
        Ok(r) => r,
        Err(e @ (VerifyError::Resource(_) | VerifyError::Census(_))) => {
            eprintln!("error: {e}");
            return EXIT_RESOURCE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    write_output(args.out.as_ref(), &report.render(config.format));
    // timing goes to stderr only, so report bytes stay run-independent
    eprintln!(
        "{name}: {} checks, {} failures in {:.2}s",
        report.records.len(),
        report.failures().count(),
        start.elapsed().as_secs_f64()
    );
    if report.all_pass() {
        0
    } else {
        for f in report.failures() {
            eprintln!(
                "FAIL {} {} {} param={} margin={}",
                f.check_id,
                f.field,
                f.class,
                fmt_f64(f.param),
                fmt_f64(f.margin)
            );
        }
        EXIT_CHECK_FAILED
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Bound { field, k } => {
            let spec = field.resolve();
            let breakdown = theorem_sqrt_bound(&BoundInputs::from_spec(&spec, k));
            println!(
                "field={} class={} k={k}",
                spec.family.label(),
                spec.class_elem.label()
            );
            for (name, value) in &breakdown.terms {
                println!("  {name} = {}", fmt_f64(*value));
            }
            println!("sqrt_bound = {}", fmt_f64(breakdown.total));
            println!("norm_bound = {}", fmt_f64(breakdown.total * breakdown.total));
            0
        }
        Command::Census { field, limit, out } => {
            let spec = field.resolve();
            let result = load_or_sieve(None, limit).and_then(|t| build_census(&spec, limit, &t));
            match result {
                Ok(census) => {
                    write_output(out.as_ref(), &census.to_csv());
                    0
                }
                Err(e @ CensusError::SieveTooLarge(_)) => {
                    eprintln!("error: {e}");
                    EXIT_RESOURCE
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Command::VerifyTheorem(args) => run_sweep("verify-theorem", &args, verify::cmd_verify_theorem),
        Command::VerifyPsi(args) => run_sweep("verify-psi", &args, verify::cmd_verify_psi),
        Command::VerifyChain(args) => run_sweep("verify-chain", &args, verify::cmd_verify_chain),
        Command::Selfcheck(args) => run_sweep("selfcheck", &args, verify::cmd_selfcheck),
    };
    std::process::exit(code);
}
