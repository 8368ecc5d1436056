//! Fibre orbits started on the half-lattice b = {(m a + n)/2}_0 collapse
//! onto the three-state set {0, 1/2, -a_j/2} and then follow a finite
//! transition table: tracked in exact integer form.

use curlicue::dynamics::{ba_orbit, FibreClass};

fn main() {
    let a = 0.5877852522924731;
    let rep = ba_orbit(a, 7, 4, 200).unwrap();
    println!("orbit of b = {{(7a + 4)/2}}_0 over a = {a}:");
    for s in rep.steps.iter().take(14) {
        println!(
            "  j = {:>2}: n_j = {:>3}, eps = {:>2}, b_j = {:>12.8} ({:?})",
            s.j, s.n_j, s.eps_j, s.b_j, s.class
        );
    }
    println!(
        "stabilized at j0 = {:?}; transitions match the parity table: {}; max fibre deviation {:.1e}",
        rep.j0, rep.transitions_ok, rep.max_float_dev
    );

    // how fast do random lattice points stabilize?
    let mut histogram = [0usize; 5];
    let mut count = 0;
    for i in 0..400 {
        let m = (i * 7) % 41 - 20;
        let n = (i * 11) % 37 - 18;
        if m % 2 != 0 && n % 2 != 0 {
            continue;
        }
        let rep = ba_orbit(0.36787944117144233, m, n, 300).unwrap();
        if let Some(j0) = rep.j0 {
            histogram[(j0 / 5).min(4)] += 1;
            count += 1;
        }
    }
    println!("\nstabilization times over {count} lattice starts (buckets of 5 steps):");
    for (i, c) in histogram.iter().enumerate() {
        println!("  j0 in {:>2}..{:>2}: {c}", 5 * i, 5 * i + 4);
    }
    let _ = FibreClass::Zero;
}
