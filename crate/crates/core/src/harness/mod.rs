//! Prime sweeps that verify the congruences, splitting behaviour and zero
//! sets of the theta-form polynomials, plus machine-readable reports.

mod checks;
mod output;
mod show;

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

pub use checks::{
    background_reports, hex_transform, identity_reports, lambda_transform, prime_lemma_reports,
    theta_hex_polynomial, theta_hex_reports, theta_z_polynomial, theta_z_reports, TransformOutcome,
};
pub use output::{render, OutputFormat};
pub use show::{cmd_show, EXAMPLE_IDS};

use crate::error::{Error, Result};
use crate::exact_arith::primes_in;
use crate::parallel::{map_with, with_jobs, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One sub-check at one prime. `witness` carries the first mismatch for a
/// failure, the reason for a skip, and optionally a short summary on a pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub p: Option<u64>,
    pub k: Option<u64>,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Result of a single sub-check before timing is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(Option<String>),
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass(None)
        } else {
            Outcome::Fail(witness())
        }
    }
}

/// Runs `f` and wraps its outcome; errors become failures with the error
/// text as witness.
pub fn timed(
    check_id: &str,
    p: Option<u64>,
    k: Option<u64>,
    f: impl FnOnce() -> Result<Outcome>,
) -> VerificationReport {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
    let ms = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Outcome::Pass(w) => (Status::Pass, w),
        Outcome::Fail(w) => (Status::Fail, Some(w)),
        Outcome::Skipped(w) => (Status::Skipped, Some(w)),
    };
    VerificationReport {
        check_id: check_id.to_string(),
        p,
        k,
        status,
        witness,
        ms,
    }
}

/// Largest prime accepted without `allow_large`.
pub const DEFAULT_P_MAX_GUARD: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub p_min: u64,
    pub p_max: u64,
    /// Order of the series identities.
    pub order: usize,
    /// Worker threads; `None` defers to `THETA_FORMS_JOBS`, then rayon.
    pub jobs: Option<usize>,
    pub execution: Execution,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Zero timings so that reruns are byte-identical.
    pub canonical: bool,
    pub allow_large: bool,
    /// Largest prime for the exhaustive short-Weierstrass sweep in the
    /// 2-/4-torsion curve check.
    pub curve_oracle_max: u64,
    /// Largest prime for the exhaustive supersingular sweep over `F_{p^2}`.
    pub supersingular_oracle_max: u64,
    /// Curves sampled for the 3-torsion part of the Hessian check.
    pub hessian_samples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            p_min: 5,
            p_max: 199,
            order: 40,
            jobs: None,
            execution: Execution::Parallel,
            format: OutputFormat::Table,
            out: None,
            canonical: false,
            allow_large: false,
            curve_oracle_max: 103,
            supersingular_oracle_max: 103,
            hessian_samples: 2,
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
        if self.p_min < 5 {
            return Err(Error::Config(format!("--p-min must be at least 5, got {}", self.p_min)));
        }
        if self.p_max < self.p_min {
            return Err(Error::Config(format!(
                "empty range: p-min {} > p-max {}",
                self.p_min, self.p_max
            )));
        }
        if self.p_max > DEFAULT_P_MAX_GUARD && !self.allow_large {
            return Err(Error::Config(format!(
                "--p-max {} exceeds {DEFAULT_P_MAX_GUARD}; pass --allow-large to override",
                self.p_max
            )));
        }
        if self.order < 20 {
            return Err(Error::Config(format!("--order must be at least 20, got {}", self.order)));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        Ok(())
    }

    /// Thread count from the config, else `THETA_FORMS_JOBS`.
    pub fn effective_jobs(&self) -> Option<usize> {
        self.jobs.or_else(|| {
            std::env::var("THETA_FORMS_JOBS")
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .filter(|&n| n > 0)
        })
    }

    pub fn primes(&self) -> Vec<u64> {
        primes_in(self.p_min, self.p_max)
    }
}

/// Per-prime sweep with deterministic output ordering.
fn sweep(
    cfg: &SweepConfig,
    per_prime: impl Fn(u64, &SweepConfig) -> Vec<VerificationReport> + Sync + Send,
) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let primes = cfg.primes();
    let mut reports: Vec<VerificationReport> = with_jobs(cfg.effective_jobs(), || {
        map_with(cfg.execution, &primes, |&p| per_prime(p, cfg))
    })
    .into_iter()
    .flatten()
    .collect();
    if cfg.canonical {
        for r in &mut reports {
            r.ms = 0;
        }
    }
    Ok(reports)
}

/// Theta series of `Z`, `k = (p+1)/2`: congruence with `W`, splitting into
/// linears, the 2-/4-torsion curve set and the Legendre j-set.
pub fn cmd_verify_theta_z(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    sweep(cfg, theta_z_reports)
}

/// Theta series of the hexagonal lattice, `k = p + 1`: congruence with `V`,
/// splitting over `F_{p^2}`, factor pattern, zero set and Hessian curves.
pub fn cmd_verify_theta_hex(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    sweep(cfg, theta_hex_reports)
}

/// `E_{p-1}`: congruence with `U`, factor degrees, supersingular set and the
/// extremal form with constant term one.
pub fn cmd_verify_background(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    sweep(cfg, background_reports)
}

/// Series identities to `cfg.order`, then the `F_p` lemmas for every prime
/// in range.
pub fn cmd_verify_identities(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let mut reports = identity_reports(cfg.order);
    if cfg.canonical {
        for r in &mut reports {
            r.ms = 0;
        }
    }
    reports.extend(sweep(cfg, prime_lemma_reports)?);
    Ok(reports)
}

/// Process exit code for a finished sweep: 0 if nothing failed, 1 otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SweepConfig::default().validate().is_ok());
        assert!(SweepConfig::range(3, 10).validate().is_err());
        assert!(SweepConfig::range(50, 10).validate().is_err());
        assert!(SweepConfig::range(5, 5000).validate().is_err());
        let big = SweepConfig {
            allow_large: true,
            ..SweepConfig::range(5, 5000)
        };
        assert!(big.validate().is_ok());
        let low_order = SweepConfig {
            order: 5,
            ..SweepConfig::default()
        };
        assert!(low_order.validate().is_err());
    }

    #[test]
    fn errors_become_failures() {
        let r = timed("x", Some(7), None, || Err(Error::DivisionByZero));
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().contains("division"));
        let r = timed("x", None, None, || Ok(Outcome::Skipped("n/a".into())));
        assert_eq!(r.status, Status::Skipped);
        assert!(r.passed());
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = SweepConfig {
            canonical: true,
            ..SweepConfig::range(5, 31)
        };
        for reports in [
            cmd_verify_theta_z(&cfg).unwrap(),
            cmd_verify_theta_hex(&cfg).unwrap(),
            cmd_verify_background(&cfg).unwrap(),
        ] {
            for r in &reports {
                assert!(r.passed(), "{r:?}");
            }
            assert_eq!(exit_code(&reports), 0);
        }
        let again = cmd_verify_theta_z(&cfg).unwrap();
        assert_eq!(again, cmd_verify_theta_z(&cfg).unwrap());
    }
}
