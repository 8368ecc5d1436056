//! Export the planar path of partial sums as CSV. With a huge partial
//! quotient planted in the continued fraction of `a`, the path winds
//! through large Cornu-spiral sections (curlicues); the annotation columns
//! mark where the deepest cascade level is small.
//!
//! Plot the output with anything that reads CSV, e.g.
//! `python3 -c "import pandas, matplotlib.pyplot as p; d = pandas.read_csv('path.csv'); p.plot(d.re, d.im); p.savefig('path.png')"`

use curlicue::curve::export_curlicue;
use curlicue::{Params, PrecisionConfig};
use std::fs::File;
use std::io::BufWriter;

fn main() {
    // a = [0; 2, 3, ~1000, ...]: a_2 is tiny, so depth-2 windows trace wide
    // spirals
    let a = 1.0 / (2.0 + 1.0 / (3.0 + 1.0 / 997.13));
    let p = Params::new(a, 0.0).unwrap();
    let n = 60_000u64;

    let file = File::create("path.csv").unwrap();
    let mut out = BufWriter::new(file);
    let path = export_curlicue(&mut out, n, p, &PrecisionConfig::default(), true).unwrap();

    println!("wrote path.csv: {} points, a = {a:.12}", path.points.len());
    println!("unit-increment defect: {:.2e}", path.unit_increment_defect());
    let far = path.points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("farthest excursion |S(n)| = {far:.1}");
}
