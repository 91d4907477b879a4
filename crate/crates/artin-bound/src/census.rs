//! Exact prime-power event streams for a (field, class) pair, and the
//! counting functions π_C, ψ_C, ϑ_C, the inertia-smoothed ψ(C;·), ϑ(C;·),
//! and their integrated versions.
//!
//! The integrated functions are exact sums: ψ is a right-continuous step
//! function, so ∫₀ˣ ψ(C;t) dt = Σ weight·Λ·(x − norm) with no quadrature.

use crate::artin_splitting::{splitting_datum, theta_weight_from_datum};
use crate::field_models::GaloisClassSpec;
use num_rational::Ratio;
use std::io::{Read, Write};
use std::path::Path;
use thiserror::Error;

/// Hard cap on the sieve size so a bad config cannot exhaust memory.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 31;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("sieve limit {0} exceeds the configured memory budget ({MAX_SIEVE_LIMIT})")]
    SieveTooLarge(u64),
    #[error("snapshot at x = {x} exceeds the census limit {limit}")]
    BeyondLimit { x: f64, limit: u64 },
    #[error("census to {limit} holds only {available} qualifying prime ideals, need {needed}")]
    InsufficientCensus {
        limit: u64,
        available: u64,
        needed: u64,
    },
    #[error("prime table must cover the census limit ({table} < {requested})")]
    TableTooSmall { table: u64, requested: u64 },
    #[error("prime cache {path}: {reason}")]
    BadCache { path: String, reason: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// All primes up to a limit, ascending.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }
}

/// Sieve of Eratosthenes up to `limit` (inclusive).
pub fn sieve_primes(limit: u64) -> Result<PrimeTable, CensusError> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(CensusError::SieveTooLarge(limit));
    }
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 {
        n / ((n as f64).ln() as usize - 1).max(1)
    } else {
        8
    });
    let mut p = 2usize;
    while p * p <= n {
        if !composite[p] {
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
        p += 1;
    }
    for q in 2..=n {
        if !composite[q] {
            primes.push(q as u64);
        }
    }
    Ok(PrimeTable {
        limit,
        primes,
    })
}

const CACHE_MAGIC: &[u8; 4] = b"APTC";
const CACHE_VERSION: u32 = 1;

/// Writes the table as a small delta-coded binary cache:
/// magic, version, limit, count, then u32 gaps between consecutive primes.
pub fn save_prime_cache(table: &PrimeTable, path: &Path) -> Result<(), CensusError> {
    let mut buf = Vec::with_capacity(16 + 4 * table.primes.len());
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.extend_from_slice(&table.limit.to_le_bytes());
    buf.extend_from_slice(&(table.primes.len() as u64).to_le_bytes());
    let mut prev = 0u64;
    for &p in &table.primes {
        buf.extend_from_slice(&u32::try_from(p - prev).unwrap().to_le_bytes());
        prev = p;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(&buf)?;
    Ok(())
}

/// Loads a cache written by [`save_prime_cache`], revalidating the count.
pub fn load_prime_cache(path: &Path) -> Result<PrimeTable, CensusError> {
    let bad = |reason: &str| CensusError::BadCache {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };
    let mut buf = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut buf)?;
    if buf.len() < 24 || &buf[0..4] != CACHE_MAGIC {
        return Err(bad("missing magic header"));
    }
    if u32::from_le_bytes(buf[4..8].try_into().unwrap()) != CACHE_VERSION {
        return Err(bad("unsupported version"));
    }
    let limit = u64::from_le_bytes(buf[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(buf[16..24].try_into().unwrap()) as usize;
    if buf.len() != 24 + 4 * count {
        return Err(bad("truncated delta block"));
    }
    let mut primes = Vec::with_capacity(count);
    let mut prev = 0u64;
    for i in 0..count {
        let off = 24 + 4 * i;
        let gap = u32::from_le_bytes(buf[off..off + 4].try_into().unwrap()) as u64;
        if gap == 0 {
            return Err(bad("non-increasing delta"));
        }
        prev += gap;
        primes.push(prev);
    }
    if primes.last().copied().unwrap_or(0) > limit {
        return Err(bad("prime beyond declared limit"));
    }
    Ok(PrimeTable { limit, primes })
}

/// Loads the cache if it exists and covers `limit`; otherwise sieves (and
/// writes the cache back when a path is given).
pub fn load_or_sieve(cache: Option<&Path>, limit: u64) -> Result<PrimeTable, CensusError> {
    if let Some(path) = cache {
        if path.exists() {
            match load_prime_cache(path) {
                Ok(table) if table.limit >= limit => return Ok(table),
                Ok(_) => {}
                Err(CensusError::BadCache { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let table = sieve_primes(limit)?;
        save_prime_cache(&table, path)?;
        Ok(table)
    } else {
        sieve_primes(limit)
    }
}

/// One prime-power event: the ideal p^exponent of ℚ with its class
/// indicator (unramified only), its exact θ weight, and the L-side
/// splitting data used by the exploratory ideals-of-L convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusEvent {
    /// p^exponent.
    pub norm: u64,
    pub prime: u64,
    pub exponent: u32,
    pub ramified: bool,
    /// ε_C(Frob^exponent); always false at ramified primes (excluded from
    /// π_C, ψ_C, ϑ_C by definition).
    pub in_class: bool,
    /// θ(C;p^exponent), exact.
    pub theta: Ratio<u64>,
    /// Number of primes of L above p.
    pub ideals_above: u64,
    /// Residue degree f of p in L.
    pub residue_degree: u64,
}

impl CensusEvent {
    pub fn lambda(&self) -> f64 {
        (self.prime as f64).ln()
    }
}

/// Which ideals [`kth_prime_norm`] orders: prime ideals of the base field
/// K = ℚ (one per qualifying rational prime — the convention the theorem
/// uses) or, for exploration, the primes of L above them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdealConvention {
    #[default]
    BaseField,
    ExtensionField,
}

/// Values of all eight counting statistics at one point x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountSnapshot {
    pub x: f64,
    /// #{p unramified, Norm p <= x, Artin symbol = C}.
    pub pi_c: u64,
    /// ψ_C: Λ-weighted count over unramified prime powers in C.
    pub psi_c: f64,
    /// ϑ_C: log p over unramified primes in C.
    pub theta_c: f64,
    /// ψ(C;x): θ-weighted, all primes.
    pub psi_smooth: f64,
    /// ϑ(C;x): θ-weighted, primes only.
    pub theta_smooth: f64,
    /// ψ⁽¹⁾(C;x) = ∫₀ˣ ψ(C;t) dt.
    pub psi1_smooth: f64,
    /// ϑ_C⁽¹⁾(x) = ∫₀ˣ ϑ_C(t) dt.
    pub theta1_c: f64,
    /// ϑ⁽¹⁾(C;x) = ∫₀ˣ ϑ(C;t) dt.
    pub theta1_smooth: f64,
}

/// Sorted, weighted prime-power events for one (field, class) pair, with
/// prefix sums so snapshots cost one binary search.
#[derive(Debug, Clone)]
pub struct CensusSeries {
    pub spec: GaloisClassSpec,
    limit: u64,
    events: Vec<CensusEvent>,
    // prefix sums over events[0..=i]
    pi: Vec<u64>,
    eps_lambda: Vec<f64>,
    eps_lambda_deg1: Vec<f64>,
    eps_lambda_norm_deg1: Vec<f64>,
    theta_lambda: Vec<f64>,
    theta_lambda_deg1: Vec<f64>,
    theta_lambda_norm: Vec<f64>,
    theta_lambda_norm_deg1: Vec<f64>,
}

/// Emits every event p^m ≤ X: the ε_C event feeding π_C/ψ_C/ϑ_C at
/// unramified primes, and the θ-weighted event feeding ψ(C;·)/ϑ(C;·)
/// everywhere (ramified primes contribute only through θ).
pub fn build_census(
    spec: &GaloisClassSpec,
    limit: u64,
    table: &PrimeTable,
) -> Result<CensusSeries, CensusError> {
    if table.limit() < limit {
        return Err(CensusError::TableTooSmall {
            table: table.limit(),
            requested: limit,
        });
    }
    let mut events = Vec::new();
    for &p in table.primes() {
        if p > limit {
            break;
        }
        let datum = splitting_datum(spec.family, p).expect("table holds primes");
        let mut norm = p;
        let mut exponent = 1u32;
        loop {
            let theta = theta_weight_from_datum(spec, &datum, exponent as u64).value();
            let in_class = !datum.ramified && theta == Ratio::from_integer(1);
            events.push(CensusEvent {
                norm,
                prime: p,
                exponent,
                ramified: datum.ramified,
                in_class,
                theta,
                ideals_above: datum.num_primes,
                residue_degree: datum.residue_degree,
            });
            match norm.checked_mul(p) {
                Some(next) if next <= limit => {
                    norm = next;
                    exponent += 1;
                }
                _ => break,
            }
        }
    }
    events.sort_by_key(|e| (e.norm, e.prime, e.exponent));
    Ok(CensusSeries::from_events(spec.clone(), limit, events))
}

impl CensusSeries {
    fn from_events(spec: GaloisClassSpec, limit: u64, events: Vec<CensusEvent>) -> Self {
        let n = events.len();
        let mut series = CensusSeries {
            spec,
            limit,
            pi: Vec::with_capacity(n),
            eps_lambda: Vec::with_capacity(n),
            eps_lambda_deg1: Vec::with_capacity(n),
            eps_lambda_norm_deg1: Vec::with_capacity(n),
            theta_lambda: Vec::with_capacity(n),
            theta_lambda_deg1: Vec::with_capacity(n),
            theta_lambda_norm: Vec::with_capacity(n),
            theta_lambda_norm_deg1: Vec::with_capacity(n),
            events,
        };
        let mut pi = 0u64;
        let mut acc = [0f64; 7];
        for e in &series.events {
            let lambda = e.lambda();
            let theta = *e.theta.numer() as f64 / *e.theta.denom() as f64;
            let deg1 = e.exponent == 1;
            if deg1 && e.in_class {
                pi += 1;
            }
            if e.in_class {
                acc[0] += lambda;
                if deg1 {
                    acc[1] += lambda;
                    acc[2] += lambda * e.norm as f64;
                }
            }
            acc[3] += theta * lambda;
            acc[5] += theta * lambda * e.norm as f64;
            if deg1 {
                acc[4] += theta * lambda;
                acc[6] += theta * lambda * e.norm as f64;
            }
            series.pi.push(pi);
            series.eps_lambda.push(acc[0]);
            series.eps_lambda_deg1.push(acc[1]);
            series.eps_lambda_norm_deg1.push(acc[2]);
            series.theta_lambda.push(acc[3]);
            series.theta_lambda_deg1.push(acc[4]);
            series.theta_lambda_norm.push(acc[5]);
            series.theta_lambda_norm_deg1.push(acc[6]);
        }
        series
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn events(&self) -> &[CensusEvent] {
        &self.events
    }

    /// Index of the last event with norm ≤ x, if any.
    fn last_index_at(&self, x: f64) -> Option<usize> {
        let count = self.events.partition_point(|e| e.norm as f64 <= x);
        count.checked_sub(1)
    }

    /// All eight statistics at x (x ≤ limit).
    pub fn snapshot(&self, x: f64) -> Result<CountSnapshot, CensusError> {
        if x > self.limit as f64 {
            return Err(CensusError::BeyondLimit {
                x,
                limit: self.limit,
            });
        }
        Ok(match self.last_index_at(x) {
            None => CountSnapshot {
                x,
                pi_c: 0,
                psi_c: 0.0,
                theta_c: 0.0,
                psi_smooth: 0.0,
                theta_smooth: 0.0,
                psi1_smooth: 0.0,
                theta1_c: 0.0,
                theta1_smooth: 0.0,
            },
            Some(i) => CountSnapshot {
                x,
                pi_c: self.pi[i],
                psi_c: self.eps_lambda[i],
                theta_c: self.eps_lambda_deg1[i],
                psi_smooth: self.theta_lambda[i],
                theta_smooth: self.theta_lambda_deg1[i],
                psi1_smooth: x * self.theta_lambda[i] - self.theta_lambda_norm[i],
                theta1_c: x * self.eps_lambda_deg1[i] - self.eps_lambda_norm_deg1[i],
                theta1_smooth: x * self.theta_lambda_deg1[i] - self.theta_lambda_norm_deg1[i],
            },
        })
    }

    /// Number of qualifying prime ideals in the census under a convention.
    pub fn ideal_count(&self, convention: IdealConvention) -> u64 {
        self.qualifying()
            .map(|e| match convention {
                IdealConvention::BaseField => 1,
                IdealConvention::ExtensionField => e.ideals_above,
            })
            .sum()
    }

    fn qualifying(&self) -> impl Iterator<Item = &CensusEvent> {
        self.events
            .iter()
            .filter(|e| e.exponent == 1 && !e.ramified && e.in_class)
    }

    /// CSV export of the raw event stream (RFC 4180; no field needs quoting).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "norm,prime,exponent,ramified,in_class,theta_num,theta_den,lambda,ideals_above,residue_degree\n",
        );
        for e in &self.events {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                e.norm,
                e.prime,
                e.exponent,
                e.ramified,
                e.in_class,
                e.theta.numer(),
                e.theta.denom(),
                crate::report::fmt_f64(e.lambda()),
                e.ideals_above,
                e.residue_degree,
            ));
        }
        out
    }
}

/// Norm of the (k+1)-st prime ideal with Artin symbol C, ordered by norm.
///
/// Under the base-field convention (the theorem's) each qualifying rational
/// prime is one ideal of norm p; under the extension convention each
/// contributes `ideals_above` ideals of norm p^f.
pub fn kth_prime_norm(
    census: &CensusSeries,
    k: u64,
    convention: IdealConvention,
) -> Result<u64, CensusError> {
    let mut seen = 0u64;
    for e in census
        .events
        .iter()
        .filter(|e| e.exponent == 1 && !e.ramified && e.in_class)
    {
        let (mult, norm) = match convention {
            IdealConvention::BaseField => (1, e.norm),
            IdealConvention::ExtensionField => {
                (e.ideals_above, e.norm.pow(e.residue_degree as u32))
            }
        };
        seen += mult;
        if seen > k {
            return Ok(norm);
        }
    }
    Err(CensusError::InsufficientCensus {
        limit: census.limit,
        available: seen,
        needed: k + 1,
    })
}
