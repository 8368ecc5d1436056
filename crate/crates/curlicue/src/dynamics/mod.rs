//! The skew product `(a, b) -> ({1/a}, {-b/a + [1/a]/2}_0)` over the Gauss
//! map, its invariant density family under the fibre transfer operator,
//! counting-function statistics, orbit algebra of the half-lattice fibres,
//! and the three-branch interval map coding the stabilized fibre states.

pub mod ba_orbit;
pub mod counting;
pub mod density;
pub mod tilde;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::numeric::{frac, frac0, Params};

pub use ba_orbit::{ba_orbit, BaOrbitReport, BaStep, FibreClass};
pub use counting::{birkhoff_average, counting_norms, gauss_entropy_constant, BirkhoffEstimate,
                   CountingStats, Phi};
pub use density::{iterate_ab, pf_apply_family, pf_apply_grid, second_family, AbSequences,
                  PiecewiseDensity, SecondFamily, TransferMatrix};
pub use tilde::{tilde_invariance_check, tilde_map, InvarianceReport, TildeState};

/// Deterministic stream-indexed RNG: sample `i` of a run seeded `s` sees the
/// same bits regardless of thread scheduling.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One draw from the invariant probability measure of the skew product:
/// `a` with density `1/((1+a) ln 2)` (so `a = 2^u - 1`, `u` uniform), `b`
/// uniform on `(-1/2, 1/2]`.
pub fn sample_m<R: Rng>(rng: &mut R) -> Params {
    loop {
        let u: f64 = rng.gen();
        let a = u.exp2() - 1.0;
        let b = 0.5 - rng.gen::<f64>();
        if a > 0.0 {
            return Params::new(a, b).expect("sampler stays inside the square");
        }
    }
}

/// One fibre step in plain f64: returns `(a1, b1, k)` with `k = [1/a]`.
#[inline]
pub(crate) fn skew_step(a: f64, b: f64) -> (f64, f64, i64) {
    let inv = 1.0 / a;
    let k = inv.floor();
    let a1 = frac(inv);
    let b1 = frac0(-b * inv + 0.5 * k);
    (a1, b1, k as i64)
}
