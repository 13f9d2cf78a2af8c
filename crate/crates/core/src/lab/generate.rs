use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LabError, RunConfig};
use crate::order::FinPoset;

/// The generator for one trial: the master seed picks the key, the trial
/// index picks the stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A random bounded complete poset on at most `max_size` elements.
///
/// Element `p0` is a bottom; the others get a random upper-triangular
/// relation. Candidates that are not bounded complete are rejected.
pub fn generate_poset(cfg: &RunConfig, trial: u64) -> Result<FinPoset, LabError> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial);
    for _ in 0..cfg.budget.generation_attempts {
        let n = rng.gen_range(1..=cfg.max_size);
        let density: f64 = rng.gen_range(0.2..0.7);
        let mut pairs: Vec<(usize, usize)> = (1..n).map(|j| (0, j)).collect();
        for i in 1..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((i, j));
                }
            }
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let p = FinPoset::from_index_pairs(labels, &pairs)?;
        if p.is_bounded_complete() {
            return Ok(p);
        }
    }
    Err(LabError::GenerationBudgetExceeded { attempts: cfg.budget.generation_attempts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, max_size: usize) -> RunConfig {
        RunConfig { seed, max_size, ..RunConfig::default() }
    }

    #[test]
    fn singleton_at_size_one() {
        let p = generate_poset(&cfg(42, 1), 0).unwrap();
        assert_eq!(p.labels(), &["p0".to_string()]);
    }

    #[test]
    fn deterministic_per_seed_and_trial() {
        let c = cfg(7, 7);
        for t in 0..20 {
            assert_eq!(generate_poset(&c, t).unwrap(), generate_poset(&c, t).unwrap());
        }
        let a: Vec<_> = (0..20).map(|t| generate_poset(&c, t).unwrap()).collect();
        let b: Vec<_> = (0..20).map(|t| generate_poset(&cfg(8, 7), t).unwrap()).collect();
        assert_ne!(a, b);
    }

    #[test]
    fn emitted_posets_are_bounded_complete() {
        let c = cfg(3, 7);
        for t in 0..200 {
            let p = generate_poset(&c, t).unwrap();
            assert!(p.is_bounded_complete());
            assert!(p.len() <= 7);
            assert_eq!(p.bottom(), Some(0));
        }
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let mut c = cfg(1, 7);
        c.budget.generation_attempts = 1;
        let failures = (0..200).filter(|&t| generate_poset(&c, t).is_err()).count();
        assert!(failures > 0);
        let t = (0..200).find(|&t| generate_poset(&c, t).is_err()).unwrap();
        assert_eq!(generate_poset(&c, t), Err(LabError::GenerationBudgetExceeded { attempts: 1 }));
    }
}
