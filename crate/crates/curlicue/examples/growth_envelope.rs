//! The growth envelope M(L, a, b) = max |S(N)|/sqrt(N) over each depth
//! window, against the two-sided key sqrt|b_L| + a_L^(1/4): the product
//! M * key stays bounded above and (for small keys) below.

use curlicue::asymptotics::m_of_l;
use curlicue::{Params, PrecisionConfig};

fn main() {
    let cfg = PrecisionConfig::default();
    let p = Params::new(0.6180339887498949, 0.0).unwrap();

    println!("golden-ratio base point (all a_l equal):");
    println!("{:>2} {:>10} {:>10} {:>10} {:>12} {:>12}", "L", "M", "key", "M*key", "a_L", "b_L");
    for l in 1..=10 {
        let g = m_of_l(l, p, &cfg, 256).unwrap();
        println!(
            "{:>2} {:>10.4} {:>10.4} {:>10.4} {:>12.6} {:>12.6}",
            g.l, g.m, g.key, g.m * g.key, g.a_l, g.b_l
        );
    }

    // a deep small level: plant a huge partial quotient at level 3
    let a = 1.0 / (1.0 + 1.0 / (2.0 + 1.0 / (1.0 + 1.0 / 3163.77)));
    let p = Params::new(a, 0.0).unwrap();
    println!("\nplanted a_3 ~ 3e-4 (key is small, M is forced up):");
    for l in 2..=3 {
        let g = m_of_l(l, p, &cfg, 256).unwrap();
        println!(
            "L = {}: M = {:.3}, key = {:.4}, M*key = {:.3} (window scanned {})",
            g.l,
            g.m,
            g.key,
            g.m * g.key,
            if g.exhaustive { "exhaustively" } else { "on the xi grid" }
        );
    }
}
