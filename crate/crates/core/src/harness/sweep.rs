use std::fs;

use super::config::{OutputFormat, SweepConfig, SUITES};
use super::report::VerificationReport;
use super::suites::run_suite;
use crate::error::Result;

/// Runs every configured suite (all of them when none are listed) and, when
/// an output directory is set, writes `<suite>.csv` and `<suite>.json` there.
pub fn sweep(config: &SweepConfig) -> Result<Vec<VerificationReport>> {
    config.validate()?;
    let names: Vec<String> = if config.suites.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        config.suites.clone()
    };
    let reports = names
        .iter()
        .map(|name| run_suite(name, config))
        .collect::<Result<Vec<_>>>()?;
    if let Some(dir) = &config.output {
        fs::create_dir_all(dir)?;
        for r in &reports {
            r.write_csv(fs::File::create(dir.join(format!("{}.csv", r.suite)))?)?;
            fs::write(dir.join(format!("{}.json", r.suite)), r.to_json()?)?;
        }
    }
    Ok(reports)
}

/// Renders a report in the requested format.
pub fn render(report: &VerificationReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma31_sweep_writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SweepConfig {
            suites: vec!["lemma31".into()],
            output: Some(dir.path().to_path_buf()),
            ..SweepConfig::range(5, 200)
        };
        let reports = sweep(&cfg).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].all_passed());
        let csv = fs::read_to_string(dir.path().join("lemma31.csv")).unwrap();
        assert_eq!(csv.lines().count(), 1 + cfg.primes().len());
        let json = fs::read_to_string(dir.path().join("lemma31.json")).unwrap();
        assert_eq!(VerificationReport::from_json(&json).unwrap(), reports[0]);
    }

    #[test]
    fn empty_range_gives_empty_reports() {
        let cfg = SweepConfig {
            suites: vec!["prop41".into()],
            ..SweepConfig::range(24, 28)
        };
        let r = sweep(&cfg).unwrap();
        assert_eq!(r[0].summary.total, 0);
        assert!(r[0].all_passed());
    }

    #[test]
    fn sweeps_are_deterministic() {
        let cfg = SweepConfig {
            suites: vec!["thm43".into(), "wiener".into()],
            ..SweepConfig::range(5, 31)
        };
        let a: Vec<String> = sweep(&cfg).unwrap().iter().map(|r| r.to_json().unwrap()).collect();
        let b: Vec<String> = sweep(&cfg).unwrap().iter().map(|r| r.to_json().unwrap()).collect();
        assert_eq!(a, b);
    }
}
