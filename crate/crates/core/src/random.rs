//! Random intervals and a seeded search for intervals violating the
//! spectral recursion.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::Result;
use crate::face::{subsets_of, Face};
use crate::interval::Interval;
use crate::recursion::{check_recursion_all_vertices, RecursionVerdict};
use crate::Tolerances;

/// Random interval on `1..=n` as `Δ - Δ'` for random nested complexes.
///
/// `Δ` is generated by up to four random facets; `Δ'` by a few random faces
/// of `Δ` (possibly none). Not uniform over intervals.
pub fn random_interval(n: usize, seed: u64) -> Interval {
    random_interval_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_interval_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Interval {
    let density = rng.gen_range(0.3..0.9);
    let mut delta: BTreeSet<Face> = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=4) {
        let facet = Face::from_vertices((1..=n).filter(|_| rng.gen_bool(density))).expect("vertex in range");
        delta.extend(subsets_of(facet));
    }
    let pool: Vec<Face> = delta.iter().copied().collect();
    let mut sub: BTreeSet<Face> = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=3) {
        let g = pool[rng.gen_range(0..pool.len())];
        sub.extend(subsets_of(g));
    }
    Interval::new(n, delta.difference(&sub).copied()).expect("difference of nested complexes is an interval")
}

/// Per-trial seeds derived from a campaign seed.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen()).collect()
}

/// An interval whose exact recursion residual is nonzero at some vertex.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub trial: usize,
    /// Replays with `random_interval(n, replay_seed)`.
    pub replay_seed: u64,
    pub interval: Interval,
    pub verdict: RecursionVerdict,
}

impl Counterexample {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "trial": self.trial,
            "replay_seed": self.replay_seed,
            "interval": crate::json::interval_to_json(&self.interval),
            "verdict": self.verdict.to_json(),
        })
    }
}

/// First random interval on `n` vertices (over `trials` attempts) with a
/// nonzero exact residual. Numeric verdicts are skipped: they prove nothing.
pub fn search_counterexample(n: usize, trials: usize, seed: u64, tol: &Tolerances) -> Result<Option<Counterexample>> {
    for (trial, replay_seed) in trial_seeds(seed, trials).into_iter().enumerate() {
        let phi = random_interval(n, replay_seed);
        let verdicts = check_recursion_all_vertices(&phi, tol)?;
        if let Some(v) = verdicts.into_values().find(|v| v.is_rigorous() && !v.holds) {
            return Ok(Some(Counterexample { trial, replay_seed, interval: phi, verdict: v }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::recursion_residual;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..50 {
            let a = random_interval(6, seed);
            assert_eq!(a, random_interval(6, seed));
            assert_eq!(a.ground_size(), 6);
        }
        let sizes: BTreeSet<usize> = (0..50).map(|s| random_interval(5, s).len()).collect();
        assert!(sizes.len() > 5);
    }

    #[test]
    fn search_finds_and_replays() {
        let tol = Tolerances::default();
        let found = search_counterexample(5, 3000, 1, &tol).unwrap().expect("a violating interval");
        let replay = random_interval(5, found.replay_seed);
        assert_eq!(replay, found.interval);
        let v = recursion_residual(&replay, found.verdict.vertex, &tol).unwrap();
        assert!(v.is_rigorous() && !v.holds);
    }

    #[test]
    fn zero_trials() {
        assert!(search_counterexample(4, 0, 3, &Tolerances::default()).unwrap().is_none());
    }
}
