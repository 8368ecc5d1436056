//! Partial-sum paths: the planar curve through `S(0), S(1), ..., S(N)`
//! whose spiral sections (curlicues) appear wherever the deepest cascade
//! level has a small `a_L`.

use num_complex::Complex64;
use std::io::Write;

use crate::error::{Error, Result};
use crate::numeric::{reduced_phase, Params, PrecisionConfig};
use crate::renorm::Cascade;

/// Memory guard for full in-memory paths.
pub const MAX_PATH_POINTS: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct CurlicuePath {
    pub params: Params,
    pub n: u64,
    /// `points[k] = S(k)`, `k = 0..=N`; consecutive points differ by a
    /// unimodular step.
    pub points: Vec<Complex64>,
}

impl CurlicuePath {
    /// Largest deviation of any step length from 1.
    pub fn unit_increment_defect(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| ((w[1] - w[0]).norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Build the path by incremental summation.
pub fn build_path(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<CurlicuePath> {
    if n > MAX_PATH_POINTS {
        return Err(Error::Domain(format!(
            "path of {n} points exceeds the {MAX_PATH_POINTS}-point guard"
        )));
    }
    let mut points = Vec::with_capacity(n as usize + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    points.push(acc);
    for k in 0..n {
        acc += reduced_phase(k, p.a(), p.b(), cfg)?.to_point();
        points.push(acc);
    }
    Ok(CurlicuePath { params: p, n, points })
}

/// Write the path as CSV (`n, re, im`), optionally annotated with the
/// cascade depth `L(n)` and the final level size `a_{L(n)}` so the spiral
/// sections (small `a_L`) can be picked out of the plot.
pub fn export_curlicue<W: Write>(
    out: &mut W,
    n: u64,
    p: Params,
    cfg: &PrecisionConfig,
    annotate: bool,
) -> Result<CurlicuePath> {
    let path = build_path(n, p, cfg)?;
    let mut cascade = if annotate { Some(Cascade::new(p, cfg)?) } else { None };
    if annotate {
        writeln!(out, "n,re,im,depth,a_last")?;
    } else {
        writeln!(out, "n,re,im")?;
    }
    for (k, z) in path.points.iter().enumerate() {
        if let Some(cascade) = cascade.as_mut() {
            let (depth, a_last) = if k == 0 {
                (0, p.a())
            } else {
                let tr = cascade.trace(k as u64)?;
                let d = tr.depth;
                (d, cascade.level_ab(d.min(tr.steps.len().saturating_sub(1))).0)
            };
            writeln!(out, "{k},{:.17e},{:.17e},{depth},{a_last:.6e}", z.re, z.im)?;
        } else {
            writeln!(out, "{k},{:.17e},{:.17e}", z.re, z.im)?;
        }
    }
    Ok(path)
}

/// Directed Hausdorff-style distance: max over `pts` of the min distance
/// to `reference`.
pub fn directed_distance(pts: &[Complex64], reference: &[Complex64]) -> f64 {
    pts.iter()
        .map(|p| {
            reference
                .iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}
