//! Print the full renormalization cascade of one evaluation: the descended
//! parameters (a_l, b_l), the shrinking lengths N_l, the accumulated phases
//! theta_l, and each level's weighted contribution.

use curlicue::renorm::build_trace;
use curlicue::{Params, PrecisionConfig};

fn main() {
    let p = Params::new(0.5477225575051661, -0.2).unwrap();
    let n = 2_000_000u64;
    let trace = build_trace(n, p, &PrecisionConfig::default()).unwrap();

    println!("S({n}, {}, {}) cascade, depth L = {}", p.a(), p.b(), trace.depth);
    println!(
        "{:>2} {:>12} {:>12} {:>9} {:>10} {:>10} {:>24}",
        "l", "a_l", "b_l", "N_l", "xi_l", "theta_l", "term"
    );
    for (s, t) in trace.steps.iter().zip(&trace.terms) {
        println!(
            "{:>2} {:>12.8} {:>12.8} {:>9} {:>10.6} {:>10.6} {:>+11.6}{:>+11.6}i",
            s.l, s.a_l, s.b_l, s.n_l, s.xi_l, s.theta_l.0, t.re, t.im
        );
    }
    println!(
        "recomposed S = {:+.10} {:+.10}i (error bound {:.1e})",
        trace.value.re, trace.value.im, trace.err_bound
    );
}
