//! The entropy-like constant A = pi^2/(12 ln 2) three ways: quadrature of
//! its defining integral, Birkhoff averages of ln(1/a_l) along orbits, and
//! the growth rate of the depth-window endpoints ln N^-(L)/L.

use curlicue::dynamics::{birkhoff_average, gauss_entropy_constant};

fn main() {
    let a = gauss_entropy_constant(1e-12).unwrap();
    let exact = std::f64::consts::PI.powi(2) / (12.0 * std::f64::consts::LN_2);
    println!("quadrature:        A = {a:.10}");
    println!("pi^2/(12 ln 2):    A = {exact:.10}");

    for l in [50usize, 200, 800] {
        let est = birkhoff_average(l, 2000, 11).unwrap();
        println!(
            "L = {l:>4}: orbit average {:.5} +- {:.5},  ln N^-(L)/L = {:.5} (+- {:.5} bracket)",
            est.orbit_mean, est.orbit_ci, est.log_n_minus_mean, est.bracket_halfwidth
        );
    }
}
