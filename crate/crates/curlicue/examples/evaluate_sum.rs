//! Evaluate S(N, a, b) two ways: direct summation and the renormalization
//! cascade, which needs only O(log N) special-function calls.

use curlicue::renorm::{naive_sum, renorm_sum};
use curlicue::{Params, PrecisionConfig};
use std::time::Instant;

fn main() {
    let p = Params::new(0.7052301561863771, 0.31).unwrap();
    let cfg = PrecisionConfig::default();

    for n in [1_000u64, 100_000, 10_000_000] {
        let t = Instant::now();
        let fast = renorm_sum(n, p, &cfg).unwrap();
        let t_fast = t.elapsed();

        let t = Instant::now();
        let direct = naive_sum(n, p, &cfg).unwrap();
        let t_direct = t.elapsed();

        println!(
            "N = {n:>9}: S = {:+.9} {:+.9}i   cascade {t_fast:>9.1?}  direct {t_direct:>9.1?}  residual {:.2e}",
            fast.re,
            fast.im,
            (fast - direct).norm()
        );
    }

    // beyond the reach of direct summation
    let n = 100_000_000_000u64;
    let t = Instant::now();
    let fast = renorm_sum(n, p, &cfg).unwrap();
    println!(
        "N = {n}: S = {:+.9} {:+.9}i   cascade {:?} (direct summation would take hours)",
        fast.re,
        fast.im,
        t.elapsed()
    );
}
