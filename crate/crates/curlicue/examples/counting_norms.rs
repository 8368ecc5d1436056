//! Monte Carlo norms of the counting function: the number of cascade
//! levels where both a_l^(1/4) and |b_l|^(1/2) drop below a threshold
//! phi(l). Divergent sum phi^6 means a growing count (and the two norms
//! coalesce); convergent sum phi^6 means a plateau.

use curlicue::dynamics::{counting_norms, Phi};

fn main() {
    let samples = 20_000u64;

    let phi = Phi::parse("(l+2)^-1/6").unwrap();
    println!("phi(l) = (l+2)^(-1/6): sum phi^6 diverges (harmonic)");
    let stats = counting_norms(&phi, &[100, 1_000, 10_000], samples, 7).unwrap();
    let ln2 = std::f64::consts::LN_2;
    for s in &stats {
        let target: f64 =
            (0..=s.l as u64).map(|l| 1.0 / (l as f64 + 2.0)).sum::<f64>() * 2.0 / ln2;
        println!(
            "  L = {:>6}: norm1 = {:>6.2} +- {:.2} (first-order prediction {:.2}), (norm2/norm1)^2 = {:.3}",
            s.l,
            s.norm1,
            s.norm1_ci,
            target,
            (s.norm2 / s.norm1).powi(2)
        );
    }

    let phi = Phi::parse("(l+2)^-1/4").unwrap();
    println!("phi(l) = (l+2)^(-1/4): sum phi^6 converges");
    let stats = counting_norms(&phi, &[100, 1_000, 10_000], samples, 7).unwrap();
    for s in &stats {
        println!("  L = {:>6}: norm1 = {:>6.3} +- {:.3} (plateau)", s.l, s.norm1, s.norm1_ci);
    }
}
