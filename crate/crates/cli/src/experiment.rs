//! Monte-Carlo recovery experiments over a range of sparsity levels.
//!
//! Trial `i` of sparsity `K` is driven by its own [`GaussianSource`] seeded
//! with [`trial_seed`]`(seed, K, i)`; the matrix is drawn first (row-major),
//! then the support, then the values. Cells are therefore reproducible on
//! their own and trials can run in any order.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use incoherence_core::guarantees::incoherence_condition;
use incoherence_core::sensing::{gaussian_ensemble_from, splitmix64, GaussianSource};
use incoherence_core::{coherence, exact_recovery, Matrix, SensingMatrix, SparseSignal};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// I.i.d. normal entries, columns normalized.
    Gaussian,
    /// The `m x m` identity; only valid when `m == n`.
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub m: usize,
    pub n: usize,
    /// Inclusive `[K_min, K_max]`.
    pub k_range: [usize; 2],
    pub trials: usize,
    pub seed: u64,
    pub ensemble: Ensemble,
    pub output_path: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Input(msg));
        if self.m == 0 || self.n == 0 {
            return bad("m and n must be positive".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        let [lo, hi] = self.k_range;
        let max = self.m.min(self.n);
        if lo == 0 || lo > hi || hi > max {
            return bad(format!("k_range [{lo}, {hi}] must lie within [1, {max}] and be ordered"));
        }
        if self.ensemble == Ensemble::Identity && self.m != self.n {
            return bad("identity ensemble needs m == n".into());
        }
        Ok(())
    }
}

/// Aggregated results for one sparsity level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseCell {
    pub k: usize,
    pub trials: usize,
    pub success_count: usize,
    pub mean_mu: f64,
    /// Fraction of trials whose matrix satisfied `mu < 1/(2K-1)`.
    pub theorem1_fraction: f64,
    /// Successes among the trials counted in `theorem1_fraction`.
    pub theorem1_successes: usize,
    pub theorem1_trials: usize,
}

/// `splitmix64(seed ^ splitmix64((K << 32) ^ i))`
pub fn trial_seed(seed: u64, k: usize, trial: usize) -> u64 {
    splitmix64(seed ^ splitmix64(((k as u64) << 32) ^ trial as u64))
}

struct TrialOutcome {
    mu: f64,
    success: bool,
    theorem1: bool,
}

fn run_trial(config: &ExperimentConfig, k: usize, trial: usize) -> Result<TrialOutcome, CliError> {
    let mut source = GaussianSource::from_seed(trial_seed(config.seed, k, trial));
    let phi = match config.ensemble {
        Ensemble::Gaussian => gaussian_ensemble_from(&mut source, config.m, config.n)?,
        Ensemble::Identity => SensingMatrix::new(Matrix::identity(config.m))?,
    };
    let x = SparseSignal::random(&mut source, config.n, k)?;
    let mu = if phi.n() >= 2 { coherence(&phi)?.mu } else { 0.0 };
    let success = match exact_recovery(&phi, &x) {
        Ok(e) => e.recovered,
        Err(incoherence_core::Error::DegenerateSupport { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(TrialOutcome { mu, success, theorem1: incoherence_condition(mu, k) })
}

pub fn run_phase(config: &ExperimentConfig) -> Result<Vec<PhaseCell>, CliError> {
    config.validate()?;
    let [lo, hi] = config.k_range;
    (lo..=hi)
        .map(|k| {
            let mut cell = PhaseCell {
                k,
                trials: config.trials,
                success_count: 0,
                mean_mu: 0.0,
                theorem1_fraction: 0.0,
                theorem1_successes: 0,
                theorem1_trials: 0,
            };
            let mut mu_sum = 0.0;
            for trial in 0..config.trials {
                let t = run_trial(config, k, trial)?;
                mu_sum += t.mu;
                cell.success_count += t.success as usize;
                if t.theorem1 {
                    cell.theorem1_trials += 1;
                    cell.theorem1_successes += t.success as usize;
                }
            }
            cell.mean_mu = mu_sum / config.trials as f64;
            cell.theorem1_fraction = cell.theorem1_trials as f64 / config.trials as f64;
            Ok(cell)
        })
        .collect()
}

pub const CSV_HEADER: &str = "K,trials,successes,mean_mu,theorem1_fraction";

pub fn to_csv(cells: &[PhaseCell]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{}",
            c.k, c.trials, c.success_count, c.mean_mu, c.theorem1_fraction
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ExperimentConfig {
        ExperimentConfig {
            m: 8,
            n: 16,
            k_range: [1, 3],
            trials: 5,
            seed: 1,
            ensemble: Ensemble::Gaussian,
            output_path: "out.csv".into(),
        }
    }

    #[test]
    fn validation() {
        assert!(config().validate().is_ok());
        let mut c = config();
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = config();
        c.k_range = [0, 2];
        assert!(c.validate().is_err());
        let mut c = config();
        c.k_range = [3, 9];
        assert!(c.validate().is_err());
        let mut c = config();
        c.ensemble = Ensemble::Identity;
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let text = r#"{"m":4,"n":8,"k_range":[1,2],"trials":3,"seed":5,"ensemble":"gaussian","output_path":"x.csv","extra":1}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(text).is_err());
        let ok = text.replace(r#","extra":1"#, "");
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&ok).unwrap().k_range, [1, 2]);
    }

    #[test]
    fn seeds_differ_across_cells() {
        assert_ne!(trial_seed(1, 1, 0), trial_seed(1, 2, 0));
        assert_ne!(trial_seed(1, 1, 0), trial_seed(1, 1, 1));
        assert_eq!(trial_seed(9, 3, 4), trial_seed(9, 3, 4));
    }

    #[test]
    fn csv_shape() {
        let cells = run_phase(&config()).unwrap();
        let csv = to_csv(&cells);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,5,"));
    }
}
