//! Wall-time scaling of the two evaluators: direct summation is linear in
//! N, the cascade logarithmic.

use curlicue::bench::{bench, Method};
use curlicue::{Params, PrecisionConfig};

fn main() {
    let p = Params::new(0.7052301561863771, 0.31).unwrap();
    let cfg = PrecisionConfig::default();
    let ns = [10_000u64, 1_000_000, 100_000_000, 10_000_000_000];
    let records = bench(&ns, p, &cfg, 3, 2_000_000).unwrap();

    println!("{:>14} {:>8} {:>12} {:>12}", "N", "method", "wall", "residual");
    for r in &records {
        println!(
            "{:>14} {:>8} {:>9.3} ms {:>12}",
            r.n,
            match r.method {
                Method::Naive => "direct",
                Method::Renorm => "cascade",
            },
            r.wall_ns as f64 / 1e6,
            r.residual.map_or(String::from("-"), |x| format!("{x:.2e}")),
        );
    }
}
