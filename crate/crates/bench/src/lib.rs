//! Seeded inputs shared by the benchmarks.

use barrlund::validation::sampling::{sample_disk, sample_halfplane, trial_rng};
use barrlund::ComplexPoint;

/// `n` pairs in the unit disk, pair `k` from stream `k` of `seed`.
pub fn disk_pairs(n: usize, seed: u64) -> Vec<(ComplexPoint, ComplexPoint)> {
    (0..n as u64)
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            (sample_disk(&mut rng), sample_disk(&mut rng))
        })
        .collect()
}

/// `n` pairs in the upper half-plane.
pub fn halfplane_pairs(n: usize, seed: u64) -> Vec<(ComplexPoint, ComplexPoint)> {
    (0..n as u64)
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            (sample_halfplane(&mut rng), sample_halfplane(&mut rng))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible_and_in_domain() {
        assert_eq!(disk_pairs(8, 1), disk_pairs(8, 1));
        assert!(disk_pairs(64, 2).iter().all(|(a, b)| a.norm() < 1.0 && b.norm() < 1.0));
        assert!(halfplane_pairs(64, 2).iter().all(|(a, b)| a.im > 0.0 && b.im > 0.0));
    }
}
