//! Random strong-map pairs `IN(M-A) - IN(M/A)`: integrality of their
//! Laplacian spectra and the spectral recursion, tallied over seeded trials.
//!
//! Matroids are random matrices over GF(2) or GF(3) and random multigraphs;
//! `A` is a random independent set of the requested size, so `|A|` is the
//! rank drop from `M - A` to `M / A`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::face::Face;
use crate::json::interval_to_json;
use crate::laplacian::spectrum;
use crate::matroid::{Matroid, RelabeledInterval};
use crate::random::trial_seeds;
use crate::recursion::check_recursion_all_vertices;
use crate::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Gf2,
    Gf3,
    Graphic,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::Gf2, BackendKind::Gf3, BackendKind::Graphic];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    /// Size range of the ground set after removing `A`.
    pub n_min: usize,
    pub n_max: usize,
    /// `|A|`.
    pub rank_gap: usize,
    pub backends: Vec<BackendKind>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { n_min: 2, n_max: 7, rank_gap: 2, backends: BackendKind::ALL.to_vec(), trials: 200, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub backend: BackendKind,
    pub matroid: Matroid,
    pub removed: Face,
    pub pair: RelabeledInterval,
    pub integral: bool,
    pub recursion_holds: bool,
    /// Whether every recursion verdict was computed in exact arithmetic.
    pub rigorous: bool,
}

impl TrialRecord {
    pub fn passed(&self) -> bool {
        self.integral && self.recursion_holds
    }

    fn summary(&self) -> Value {
        json!({
            "trial": self.trial,
            "seed": self.seed,
            "backend": self.backend,
            "integral": self.integral,
            "recursion_holds": self.recursion_holds,
            "rigorous": self.rigorous,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trial": self.trial,
            "seed": self.seed,
            "backend": self.backend,
            "matroid": self.matroid.to_json(),
            "removed": self.removed.to_vec(),
            "labels": self.pair.labels,
            "interval": interval_to_json(&self.pair.interval),
            "integral": self.integral,
            "recursion_holds": self.recursion_holds,
            "rigorous": self.rigorous,
        })
    }
}

fn random_matroid<R: Rng + ?Sized>(kind: BackendKind, size: usize, min_rank: usize, rng: &mut R) -> Matroid {
    match kind {
        BackendKind::Gf2 | BackendKind::Gf3 => {
            let p = if kind == BackendKind::Gf2 { 2 } else { 3 };
            let rows = rng.gen_range(min_rank.max(1)..=min_rank.max(4).min(size.max(1)));
            let columns = (0..size).map(|_| (0..rows).map(|_| rng.gen_range(0..p)).collect()).collect();
            Matroid::linear(columns, p).expect("valid field")
        }
        BackendKind::Graphic => {
            let vertices = rng.gen_range((min_rank + 1).max(2)..=(min_rank + 1).max(6));
            let edges = (0..size).map(|_| (rng.gen_range(1..=vertices), rng.gen_range(1..=vertices))).collect();
            Matroid::graphic(edges).expect("ground set within bounds")
        }
    }
}

/// One trial, determined by the config and its seed alone.
pub fn fuzz_trial(config: &FuzzConfig, trial: usize, seed: u64, tol: &Tolerances) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let backend = *config.backends.choose(&mut rng).unwrap_or(&BackendKind::Gf2);
    let n = rng.gen_range(config.n_min..=config.n_max.max(config.n_min));
    let size = n + config.rank_gap;
    let (matroid, removed) = loop {
        let m = random_matroid(backend, size, config.rank_gap, &mut rng);
        let candidates: Vec<Face> = m.independent_sets().into_iter().filter(|s| s.len() == config.rank_gap).collect();
        if let Some(&a) = candidates.choose(&mut rng) {
            break (m, a);
        }
    };
    let pair = matroid.strong_map_interval(removed)?;
    let integral = spectrum(&pair.interval, tol)?.is_integral();
    let verdicts = check_recursion_all_vertices(&pair.interval, tol)?;
    Ok(TrialRecord {
        trial,
        seed,
        backend,
        matroid,
        removed,
        pair,
        integral,
        recursion_holds: verdicts.values().all(|v| v.holds),
        rigorous: verdicts.values().all(|v| v.is_rigorous()),
    })
}

/// Tallies over a campaign. Records can be merged in any order.
#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub records: Vec<TrialRecord>,
}

impl FuzzReport {
    pub fn from_records(mut records: Vec<TrialRecord>) -> Self {
        records.sort_by_key(|r| r.trial);
        FuzzReport { records }
    }

    pub fn merge(mut self, other: FuzzReport) -> Self {
        self.records.extend(other.records);
        FuzzReport::from_records(self.records)
    }

    pub fn trials(&self) -> usize {
        self.records.len()
    }

    pub fn integral(&self) -> usize {
        self.records.iter().filter(|r| r.integral).count()
    }

    pub fn recursion_holds(&self) -> usize {
        self.records.iter().filter(|r| r.recursion_holds).count()
    }

    pub fn rigorous(&self) -> usize {
        self.records.iter().filter(|r| r.rigorous).count()
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.passed()).count()
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self, config: &FuzzConfig) -> Value {
        json!({
            "config": config,
            "tallies": {
                "trials": self.trials(),
                "integral": self.integral(),
                "recursion_holds": self.recursion_holds(),
                "rigorous": self.rigorous(),
                "passed": self.passed(),
            },
            "trials": self.records.iter().map(TrialRecord::summary).collect::<Vec<_>>(),
            "counterexamples": self.counterexamples().map(TrialRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs every trial in order.
pub fn fuzz_conjecture(config: &FuzzConfig, tol: &Tolerances) -> Result<FuzzReport> {
    let records = trial_seeds(config.seed, config.trials)
        .into_iter()
        .enumerate()
        .map(|(trial, seed)| fuzz_trial(config, trial, seed, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzReport::from_records(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_campaign() {
        let config = FuzzConfig { trials: 0, ..FuzzConfig::default() };
        let report = fuzz_conjecture(&config, &Tolerances::default()).unwrap();
        assert_eq!(report.trials(), 0);
        assert_eq!(report.to_json(&config)["tallies"]["passed"], json!(0));
    }

    #[test]
    fn rank_gap_one_always_passes() {
        let config = FuzzConfig { n_min: 1, n_max: 5, rank_gap: 1, trials: 30, seed: 11, ..FuzzConfig::default() };
        let report = fuzz_conjecture(&config, &Tolerances::default()).unwrap();
        assert_eq!(report.recursion_holds(), 30);
        for r in &report.records {
            assert_eq!(r.removed.len(), 1);
            assert_eq!(r.pair.interval.ground_size() + 1, r.matroid.ground_size());
        }
    }

    #[test]
    fn trials_replay_from_seed() {
        let config = FuzzConfig { n_max: 4, trials: 5, seed: 3, ..FuzzConfig::default() };
        let tol = Tolerances::default();
        let report = fuzz_conjecture(&config, &tol).unwrap();
        for r in &report.records {
            let again = fuzz_trial(&config, r.trial, r.seed, &tol).unwrap();
            assert_eq!(again.matroid, r.matroid);
            assert_eq!(again.pair, r.pair);
            assert_eq!(again.removed.len(), 2);
        }
        let halves = FuzzReport::from_records(report.records[3..].to_vec())
            .merge(FuzzReport::from_records(report.records[..3].to_vec()));
        assert_eq!(halves.to_json(&config), report.to_json(&config));
    }
}
