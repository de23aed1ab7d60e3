use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::modp::MAX_PRIME;

/// Suites accepted by [`run_suite`](super::run_suite).
pub const SUITES: [&str; 7] = [
    "lemma31",
    "thm32",
    "prop41",
    "thm43",
    "sf_gamma",
    "wiener",
    "identities",
];

pub const DEFAULT_SEED: u64 = 0x5EED_0F5F;
pub const DEFAULT_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

/// p ≡ residue (mod modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueFilter {
    pub residue: u64,
    pub modulus: u64,
}

impl ResidueFilter {
    pub fn accepts(&self, p: u64) -> bool {
        p % self.modulus == self.residue
    }
}

impl std::fmt::Display for ResidueFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

impl std::str::FromStr for ResidueFilter {
    type Err = Error;

    /// Accepts `R mod M` or `R/M`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("bad residue filter `{s}`"));
        let (r, m) = s
            .split_once("mod")
            .or_else(|| s.split_once('/'))
            .ok_or_else(bad)?;
        let residue: u64 = r.trim().parse().map_err(|_| bad())?;
        let modulus: u64 = m.trim().parse().map_err(|_| bad())?;
        if modulus == 0 || residue >= modulus {
            return Err(bad());
        }
        Ok(Self { residue, modulus })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub residue_filter: Option<ResidueFilter>,
    /// Subgroup indices; empty means the suite's default set.
    pub indices: Vec<u32>,
    pub suites: Vec<String>,
    /// Overrides every floating tolerance of the selected suites.
    pub tolerance: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            p_min: 5,
            p_max: 100,
            residue_filter: None,
            indices: Vec::new(),
            suites: Vec::new(),
            tolerance: None,
            output: None,
            format: OutputFormat::Csv,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SweepConfig {
    pub fn range(p_min: u64, p_max: u64) -> Self {
        Self {
            p_min,
            p_max,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_min > self.p_max {
            return Err(Error::InvalidConfig(format!(
                "p_min {} exceeds p_max {}",
                self.p_min, self.p_max
            )));
        }
        if self.p_max > MAX_PRIME {
            return Err(Error::InvalidConfig(format!(
                "p_max {} exceeds the cap 2^20",
                self.p_max
            )));
        }
        if self.indices.contains(&0) {
            return Err(Error::InvalidConfig("subgroup indices must be ≥ 1".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidConfig(format!("bad tolerance {t}")));
            }
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::UnknownSuite(s.clone()));
            }
        }
        Ok(())
    }

    /// Primes in range that pass the filter (primes ≤ 3 are skipped).
    pub fn primes(&self) -> Vec<u32> {
        crate::modp::primes_in_range(self.p_min.max(5), self.p_max)
            .into_iter()
            .filter(|&p| self.residue_filter.is_none_or(|f| f.accepts(p)))
            .map(|p| p as u32)
            .collect()
    }

    /// Parses a plain `key = value` file; `#` starts a comment.
    ///
    /// Keys: `p_min`, `p_max`, `residue_filter`, `indices`, `suites`, `tol`,
    /// `output`, `format`, `seed`, `samples`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Error::InvalidConfig(format!("line {}: bad {what} `{value}`", lineno + 1))
            };
            match key {
                "p_min" => cfg.p_min = value.parse().map_err(|_| bad(key))?,
                "p_max" => cfg.p_max = value.parse().map_err(|_| bad(key))?,
                "residue_filter" => cfg.residue_filter = Some(value.parse()?),
                "indices" => {
                    cfg.indices = split_list(value)
                        .map(|v| v.parse().map_err(|_| bad(key)))
                        .collect::<Result<_>>()?
                }
                "suites" => cfg.suites = split_list(value).map(str::to_string).collect(),
                "tol" => cfg.tolerance = Some(value.parse().map_err(|_| bad(key))?),
                "output" => cfg.output = Some(PathBuf::from(value)),
                "format" => cfg.format = value.parse()?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad(key))?,
                "samples" => cfg.samples = value.parse().map_err(|_| bad(key))?,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = SweepConfig::parse(
            "# sweep\np_min = 5\np_max = 200\nresidue_filter = 1 mod 4\nindices = 2, 3\n\
             suites = lemma31,prop41\ntol = 1e-6\noutput = out\nformat = json\nseed = 7\nsamples = 4\n",
        )
        .unwrap();
        assert_eq!((cfg.p_min, cfg.p_max), (5, 200));
        assert_eq!(cfg.residue_filter, Some(ResidueFilter { residue: 1, modulus: 4 }));
        assert_eq!(cfg.indices, vec![2, 3]);
        assert_eq!(cfg.suites, vec!["lemma31", "prop41"]);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!((cfg.seed, cfg.samples), (7, 4));
        assert!(cfg.primes().iter().all(|p| p % 4 == 1));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            SweepConfig::parse("p_max = 2000000"),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            SweepConfig::parse("p_min = 50\np_max = 10"),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(SweepConfig::parse("color = red"), Err(Error::InvalidConfig(_))));
        assert!(matches!(SweepConfig::parse("suites = nope"), Err(Error::UnknownSuite(_))));
        assert!(matches!(SweepConfig::parse("indices = 0"), Err(Error::InvalidConfig(_))));
        assert!(matches!(SweepConfig::parse("just words"), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn empty_range_has_no_primes() {
        assert!(SweepConfig::range(24, 28).primes().is_empty());
        assert_eq!(SweepConfig::range(2, 13).primes(), vec![5, 7, 11, 13]);
    }
}
