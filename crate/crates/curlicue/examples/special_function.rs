//! The special function calF(xi, a): values, the two shift equations (in
//! steps 1 and a), the reflection symmetry, and the Fresnel surrogate it
//! collapses to for small a.

use curlicue::special::{asymptotic_cal_f, c_of_a, cal_f, cal_g};
use curlicue::{unit_exp, PrecisionConfig};

fn main() {
    let cfg = PrecisionConfig::default();
    let a = 0.37;

    println!("calF(xi, {a}) along the strip:");
    for i in -4..=4 {
        let xi = i as f64 / 8.0;
        let f = cal_f(xi, a, &cfg).unwrap();
        println!(
            "  xi = {xi:>6.3}: {:+.12} {:+.12}i  (err <= {:.1e})",
            f.value.re, f.value.im, f.err_estimate
        );
    }

    let xi = 0.3;
    let e_sq = |x: f64| unit_exp(x * x / (2.0 * a));
    let shift = cal_f(xi, a, &cfg).unwrap().value - cal_f(xi - 1.0, a, &cfg).unwrap().value;
    println!("\nshift by 1:  calF(xi) - calF(xi-1) - e(xi^2/2a)      = {:.2e}",
        (shift - e_sq(xi)).norm());

    let gshift = cal_g(xi + a, a, &cfg).unwrap().value - cal_g(xi, a, &cfg).unwrap().value;
    println!("shift by a:  calG(xi+a) - calG(xi) - e(-xi^2/2a)     = {:.2e}",
        (gshift - e_sq(xi).conj()).norm());

    let sym = cal_f(-xi, a, &cfg).unwrap().value + cal_f(xi, a, &cfg).unwrap().value;
    println!("reflection:  calF(-xi) + calF(xi) - e(xi^2/2a) + 1/c = {:.2e}",
        (sym - e_sq(xi) + c_of_a(a).inv()).norm());

    println!("\nFresnel surrogate error, sup over the strip:");
    for a in [1e-1, 1e-2, 1e-3] {
        let mut sup = 0.0f64;
        for i in -50..=50 {
            let xi = i as f64 * 0.01;
            let d = (cal_f(xi, a, &cfg).unwrap().value - asymptotic_cal_f(xi, a).unwrap()).norm();
            sup = sup.max(d);
        }
        println!("  a = {a:>6}: sup = {sup:.3e} = {:.3} sqrt(a)", sup / a.sqrt());
    }
}
