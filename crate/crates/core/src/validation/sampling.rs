//! Seeded random inputs. Trial `k` of a run with seed `s` always draws from
//! stream `k` of the ChaCha8 generator seeded with `s`, so reports do not
//! depend on evaluation order.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::ComplexPoint;

/// Radius of the disk from which disk points are drawn.
pub const DISK_RADIUS: f64 = 0.999;
/// Half-plane points are drawn from `[-HALFPLANE_X, HALFPLANE_X] × (HALFPLANE_Y_MIN, HALFPLANE_Y_MAX]`.
pub const HALFPLANE_X: f64 = 10.0;
pub const HALFPLANE_Y_MIN: f64 = 0.001;
pub const HALFPLANE_Y_MAX: f64 = 10.0;

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform on the disk `|z| < 0.999`.
pub fn sample_disk<R: Rng>(rng: &mut R) -> ComplexPoint {
    let r = DISK_RADIUS * rng.gen::<f64>().sqrt();
    ComplexPoint::from_polar(r, TAU * rng.gen::<f64>())
}

/// Uniform on `[-10, 10] × (0.001, 10]`.
pub fn sample_halfplane<R: Rng>(rng: &mut R) -> ComplexPoint {
    let x = HALFPLANE_X * (2.0 * rng.gen::<f64>() - 1.0);
    let y = HALFPLANE_Y_MAX - (HALFPLANE_Y_MAX - HALFPLANE_Y_MIN) * rng.gen::<f64>();
    ComplexPoint::new(x, y)
}
