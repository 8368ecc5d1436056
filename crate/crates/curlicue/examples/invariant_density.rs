//! The two-level density family closed under the fibre transfer operator:
//! one step of the family parameters, the pointwise operator as an oracle,
//! the coefficient recursions along an orbit, and the box family.

use curlicue::dynamics::{iterate_ab, pf_apply_family, pf_apply_grid, second_family,
                         PiecewiseDensity};
use curlicue::frac;

fn main() {
    // uniform density on (-1/2, 1/2]: A = B = 1
    let a0 = 0.4;
    let mut d = PiecewiseDensity::new(a0, 1.0, 1.0).unwrap();
    println!("transfer-operator orbit of the uniform density over a_0 = {a0}:");
    for l in 0..6 {
        println!(
            "  l = {l}: a = {:.6}, inner = {:.6}, outer = {:.6}, a*A + (1-a)*B = {:.15}",
            d.a,
            d.level_inner,
            d.level_outer,
            d.functional()
        );
        d = pf_apply_family(&d).unwrap();
    }

    // pointwise oracle at a few points
    let d0 = PiecewiseDensity::new(a0, 1.0, 1.0).unwrap();
    let image = pf_apply_family(&d0).unwrap();
    let pts = [-0.4, -0.1, 0.05, 0.3];
    let got = pf_apply_grid(|b| d0.eval(b), a0, &pts).unwrap();
    println!("\npointwise operator vs family image:");
    for (b, v) in pts.iter().zip(&got) {
        println!("  b = {b:>5}: operator {v:.12}, family {:.12}", image.eval(*b));
    }

    // coefficient recursion vs closed form along an orbit
    let mut seq = vec![0.7052301];
    for _ in 0..12 {
        seq.push(frac(1.0 / seq.last().unwrap()));
    }
    let s = iterate_ab(&seq, 1.0).unwrap();
    let worst = (0..seq.len())
        .map(|l| (s.outer_rec[l] - s.outer_closed[l]).abs())
        .fold(0.0, f64::max);
    println!("\nclosed form vs recursion over 12 levels: max deviation {worst:.2e}");
    println!("B_l values: {:?}", &s.outer_rec[..6]);

    // the box family: one transfer step lands in the two-level family
    let fam = second_family(0.21, 2).unwrap();
    println!(
        "\nbox family at a = 0.21, M = 2: half-width {:.6}, height {:.6} -> image (A, B) = ({:.6}, {:.6})",
        fam.half_width, fam.height, fam.image.level_inner, fam.image.level_outer
    );
}
