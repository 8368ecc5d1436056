//! Within one depth window the normalized magnitude |S(N)|/sqrt(N) traces
//! a Fresnel-integral profile in the variable xi = a_L N_L: compare the
//! exact values against the leading-term prediction.

use curlicue::asymptotics::{asymptotic_sum, normalized_mag};
use curlicue::renorm::{naive_sum, Cascade};
use curlicue::{Params, PrecisionConfig};

fn main() {
    let cfg = PrecisionConfig::default();
    // plant a small quotient at level 2 so the window is long and the
    // asymptotics are sharp
    let a = 1.0 / (2.0 + 1.0 / (1.0 + 1.0 / 211.73));
    let p = Params::new(a, 0.0).unwrap();
    let level = 2usize;
    let mut cascade = Cascade::new(p, &cfg).unwrap();

    println!("{:>8} {:>9} {:>12} {:>12} {:>10}", "N", "xi", "|S|/sqrt(N)", "prediction", "regime");
    for k in (5..200).step_by(13) {
        let n = cascade.realize_level_count(level, k).unwrap();
        let nm = normalized_mag(n, p, &cfg).unwrap();
        println!(
            "{:>8} {:>9.5} {:>12.6} {:>12.6} {:>10?}",
            n, nm.xi, nm.exact, nm.prediction, nm.regime
        );
    }

    // absolute accuracy of the Fresnel form at one point
    let n = cascade.realize_level_count(level, 97).unwrap();
    let asym = asymptotic_sum(n, p, &cfg).unwrap();
    let exact = naive_sum(n, p, &cfg).unwrap();
    println!(
        "\nat N = {n}: asymptotic {:+.6} {:+.6}i vs exact {:+.6} {:+.6}i (|diff| = {:.2e}, err order {:.2e})",
        asym.value.re,
        asym.value.im,
        exact.re,
        exact.im,
        (asym.value - exact).norm(),
        asym.err_order
    );
}
