//! Sweep configuration: a flat key=value file plus CLI flag overrides
//! (flags win). Validated up front so no work starts on a bad config.

use crate::census::IdealConvention;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config {path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("io error reading config: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// Which families a sweep visits and how far it pushes each parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Sweep quadratic fields with |d| up to this (0 = skip quadratics).
    pub quadratic_d_max: u64,
    /// Sweep cyclotomic fields with 3 <= m <= this (0 = skip cyclotomics).
    pub cyclotomic_m_max: u64,
    pub include_rational: bool,
    pub k_max: u64,
    pub sieve_limit: u64,
    /// Spacing of the x grid in chain sweeps.
    pub grid_step: u64,
    pub format: OutputFormat,
    pub ideal_convention: IdealConvention,
    /// Prime-table cache file; defaults under $ARTIN_BOUND_CACHE_DIR if set.
    pub cache: Option<PathBuf>,
    /// A check passes only when its margin exceeds this.
    pub tolerance: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            quadratic_d_max: 100,
            cyclotomic_m_max: 40,
            include_rational: true,
            k_max: 50,
            sieve_limit: 10_000_000,
            grid_step: 1_000,
            format: OutputFormat::Csv,
            ideal_convention: IdealConvention::BaseField,
            cache: None,
            tolerance: 1e-9,
        }
    }
}

impl SweepConfig {
    /// Parses a flat key=value file ('#' starts a comment).
    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let mut config = SweepConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                path: path.display().to_string(),
                reason: format!("line {}: expected key=value, got {raw:?}", lineno + 1),
            })?;
            config.set(key.trim(), value.trim()).map_err(|reason| ConfigError::Parse {
                path: path.display().to_string(),
                reason: format!("line {}: {reason}", lineno + 1),
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = |e: &dyn std::fmt::Display| format!("bad value for {key}: {e}");
        match key {
            "quadratic_d_max" => self.quadratic_d_max = value.parse().map_err(|e| bad(&e))?,
            "cyclotomic_m_max" => self.cyclotomic_m_max = value.parse().map_err(|e| bad(&e))?,
            "include_rational" => self.include_rational = value.parse().map_err(|e| bad(&e))?,
            "k_max" => self.k_max = value.parse().map_err(|e| bad(&e))?,
            "sieve_limit" => self.sieve_limit = value.parse().map_err(|e| bad(&e))?,
            "grid_step" => self.grid_step = value.parse().map_err(|e| bad(&e))?,
            "format" => self.format = value.parse()?,
            "ideals_of" => {
                self.ideal_convention = match value {
                    "K" => IdealConvention::BaseField,
                    "L" => IdealConvention::ExtensionField,
                    other => return Err(format!("ideals_of must be K or L, got {other:?}")),
                }
            }
            "cache" => self.cache = Some(PathBuf::from(value)),
            "tolerance" => self.tolerance = value.parse().map_err(|e| bad(&e))?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sieve_limit < 2 {
            return Err(ConfigError::Invalid("sieve_limit must be >= 2".into()));
        }
        if self.grid_step == 0 {
            return Err(ConfigError::Invalid("grid_step must be positive".into()));
        }
        if self.cyclotomic_m_max == 1 || self.cyclotomic_m_max == 2 {
            return Err(ConfigError::Invalid(
                "cyclotomic_m_max must be 0 (skip) or >= 3".into(),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(ConfigError::Invalid("tolerance must be finite and >= 0".into()));
        }
        Ok(())
    }

    /// Cache path resolved against $ARTIN_BOUND_CACHE_DIR when relative.
    pub fn cache_path(&self) -> Option<PathBuf> {
        let cache = self.cache.clone()?;
        if cache.is_absolute() {
            return Some(cache);
        }
        match std::env::var_os("ARTIN_BOUND_CACHE_DIR") {
            Some(dir) => Some(PathBuf::from(dir).join(cache)),
            None => Some(cache),
        }
    }

    /// Every family the config selects, in deterministic order.
    pub fn families(&self) -> Vec<crate::field_models::FieldFamily> {
        use crate::field_models::FieldFamily;
        let mut out = Vec::new();
        if self.include_rational {
            out.push(FieldFamily::Rational);
        }
        let d_max = self.quadratic_d_max as i64;
        for abs_d in 1..=d_max {
            for d in [abs_d, -abs_d] {
                if let Ok(f) = FieldFamily::quadratic(d) {
                    out.push(f);
                }
            }
        }
        for m in 3..=self.cyclotomic_m_max {
            if let Ok(f) = crate::field_models::FieldFamily::cyclotomic(m) {
                out.push(f);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        SweepConfig::default().validate().unwrap();
    }

    #[test]
    fn parse_and_override() {
        let dir = std::env::temp_dir().join("artin_bound_config_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sweep.conf");
        std::fs::write(
            &path,
            "# sweep for the psi estimate\nquadratic_d_max = 10\nsieve_limit=1000000\nformat = json\nideals_of=L\n",
        )
        .unwrap();
        let mut config = SweepConfig::from_file(&path).unwrap();
        assert_eq!(config.quadratic_d_max, 10);
        assert_eq!(config.sieve_limit, 1_000_000);
        assert_eq!(config.format, OutputFormat::Json);
        assert_eq!(config.ideal_convention, IdealConvention::ExtensionField);
        // flags win over the file
        config.set("quadratic_d_max", "20").unwrap();
        assert_eq!(config.quadratic_d_max, 20);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut config = SweepConfig::default();
        assert!(config.set("no_such_key", "1").is_err());
        assert!(config.set("k_max", "minus-one").is_err());
        config.set("sieve_limit", "1").unwrap();
        assert!(config.validate().is_err());
    }

    #[test]
    fn family_enumeration() {
        let config = SweepConfig {
            quadratic_d_max: 5,
            cyclotomic_m_max: 8,
            include_rational: true,
            ..SweepConfig::default()
        };
        let labels: Vec<String> = config.families().iter().map(|f| f.label()).collect();
        // d = 4 is not squarefree, m in {6} is a duplicate label: both skipped
        assert!(labels.contains(&"Q".to_string()));
        assert!(labels.contains(&"Q(sqrt(-5))".to_string()));
        assert!(!labels.contains(&"Q(sqrt(4))".to_string()));
        assert!(labels.contains(&"Q(zeta_8)".to_string()));
        assert!(!labels.contains(&"Q(zeta_6)".to_string()));
    }
}
