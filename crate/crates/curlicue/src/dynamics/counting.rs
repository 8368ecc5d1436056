//! Monte Carlo norms of the counting function
//! `frakN(L, phi, a, b) = sum_{l <= L} chi(a_l^{1/4} <= phi(l)) chi(|b_l|^{1/2} <= phi(l))`
//! under the invariant measure, and the Birkhoff constant governing
//! `ln N^{+-}(L) / L`.

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

use crate::dynamics::{sample_m, skew_step, stream_rng};
use crate::error::{Error, Result};
use crate::quad;

/// Threshold function `phi`.
#[derive(Clone, Debug, PartialEq)]
pub enum Phi {
    /// `(l + offset)^exponent` (exponent negative for decaying thresholds).
    PowerLaw { offset: f64, exponent: f64 },
    Const(f64),
}

impl Phi {
    pub fn eval(&self, l: usize) -> f64 {
        match self {
            Phi::PowerLaw { offset, exponent } => (l as f64 + offset).powf(*exponent),
            Phi::Const(c) => *c,
        }
    }

    /// Accepts `(l+2)^-1/6`, `(l+2)^(-1/6)`, `(l+2)^-0.25`, `const:0.3`.
    pub fn parse(s: &str) -> Result<Phi> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("const:") {
            let c: f64 = rest
                .parse()
                .map_err(|_| Error::Domain(format!("bad constant phi: {s}")))?;
            return Ok(Phi::Const(c));
        }
        let err = || Error::Domain(format!("cannot parse phi spec '{s}'"));
        let rest = s.strip_prefix("(l+").ok_or_else(err)?;
        let close = rest.find(')').ok_or_else(err)?;
        let offset: f64 = rest[..close].parse().map_err(|_| err())?;
        let exp_part = rest[close + 1..].strip_prefix('^').ok_or_else(err)?;
        let exp_str = exp_part.trim_matches(|c| c == '(' || c == ')');
        let exponent = if let Some((num, den)) = exp_str.split_once('/') {
            let n: f64 = num.parse().map_err(|_| err())?;
            let d: f64 = den.parse().map_err(|_| err())?;
            n / d
        } else {
            exp_str.parse().map_err(|_| err())?
        };
        Ok(Phi::PowerLaw { offset, exponent })
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi::PowerLaw { offset, exponent } => write!(f, "(l+{offset})^{exponent}"),
            Phi::Const(c) => write!(f, "const:{c}"),
        }
    }
}

/// Monte Carlo estimates of both norms at one checkpoint depth.
#[derive(Clone, Debug, Serialize)]
pub struct CountingStats {
    pub l: usize,
    pub phi: String,
    pub samples: u64,
    pub norm1: f64,
    /// 95% CLT half-width for `norm1`.
    pub norm1_ci: f64,
    pub norm2: f64,
    /// 95% half-width for `norm2`, by the delta method on `E[N^2]`.
    pub norm2_ci: f64,
}

/// Estimate `||frakN(L, phi)||_1` and `||frakN(L, phi)||_2` at each
/// checkpoint depth, sharing one orbit per sample across checkpoints.
///
/// Deterministic for a fixed seed: per-sample RNG streams are indexed, and
/// the accumulators are exact integers.
pub fn counting_norms(
    phi: &Phi,
    checkpoints: &[usize],
    samples: u64,
    seed: u64,
) -> Result<Vec<CountingStats>> {
    if checkpoints.is_empty() {
        return Err(Error::Domain("need at least one checkpoint depth".into()));
    }
    let mut cps: Vec<usize> = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    let l_max = *cps.last().unwrap();
    let phi4: Vec<f64> = (0..=l_max).map(|l| phi.eval(l).powi(4)).collect();
    let phi2: Vec<f64> = (0..=l_max).map(|l| phi.eval(l).powi(2)).collect();

    // per-checkpoint accumulators: sum N, sum N^2, sum N^3, sum N^4
    #[derive(Clone, Default)]
    struct Acc {
        s1: u128,
        s2: u128,
        s4: u128,
    }
    let chunks: Vec<Vec<Acc>> = (0..samples)
        .into_par_iter()
        .fold(
            || vec![Acc::default(); cps.len()],
            |mut acc, i| {
                let mut rng = stream_rng(seed, i);
                let p = sample_m(&mut rng);
                let (mut a, mut b) = (p.a(), p.b());
                let mut count: u64 = 0;
                let mut cp_idx = 0usize;
                for l in 0..=l_max {
                    if a <= phi4[l] && b.abs() <= phi2[l] {
                        count += 1;
                    }
                    while cp_idx < cps.len() && cps[cp_idx] == l {
                        let c = count as u128;
                        acc[cp_idx].s1 += c;
                        acc[cp_idx].s2 += c * c;
                        acc[cp_idx].s4 += c * c * c * c;
                        cp_idx += 1;
                    }
                    if l < l_max {
                        let (a1, b1, _) = skew_step(a, b);
                        if a1 <= 0.0 || !a1.is_finite() {
                            // rational/degenerate orbit: restart the fibre
                            // from a fresh sample (measure-zero event)
                            let q = sample_m(&mut rng);
                            a = q.a();
                            b = q.b();
                        } else {
                            a = a1;
                            b = b1;
                        }
                    }
                }
                acc
            },
        )
        .collect();

    let mut totals = vec![Acc::default(); cps.len()];
    for chunk in chunks {
        for (t, c) in totals.iter_mut().zip(chunk) {
            t.s1 += c.s1;
            t.s2 += c.s2;
            t.s4 += c.s4;
        }
    }

    let n = samples as f64;
    Ok(cps
        .iter()
        .zip(totals)
        .map(|(&l, t)| {
            let m1 = t.s1 as f64 / n;
            let m2 = t.s2 as f64 / n;
            let m4 = t.s4 as f64 / n;
            let var1 = (m2 - m1 * m1).max(0.0);
            let var2 = (m4 - m2 * m2).max(0.0);
            let norm2 = m2.sqrt();
            CountingStats {
                l,
                phi: phi.to_string(),
                samples,
                norm1: m1,
                norm1_ci: 1.96 * (var1 / n).sqrt(),
                norm2,
                norm2_ci: if norm2 > 0.0 {
                    1.96 * (var2 / n).sqrt() / (2.0 * norm2)
                } else {
                    0.0
                },
            }
        })
        .collect())
}

/// The entropy-like constant `A = (1/ln 2) int_0^1 ln(1/a) da/(1+a)` by
/// quadrature (substituting `a = e^{-u}` removes the endpoint singularity).
pub fn gauss_entropy_constant(tol: f64) -> Result<f64> {
    let (v, _) = quad::integrate(
        |u| {
            let e = (-u).exp();
            num_complex::Complex64::new(u * e / (1.0 + e), 0.0)
        },
        0.0,
        45.0,
        tol,
    )?;
    Ok(v.re / std::f64::consts::LN_2)
}

#[derive(Clone, Debug, Serialize)]
pub struct BirkhoffEstimate {
    pub l: usize,
    pub samples: u64,
    /// Mean of the orbit averages `(1/L) sum ln(1/a_l)`.
    pub orbit_mean: f64,
    pub orbit_ci: f64,
    /// Mean of `ln N^-(L) / L`, located inside the product bracket
    /// `1/(a_0..a_{L-1}) < N^-(L) < (1+4a_{L-1})/(a_0..a_{L-1})`.
    pub log_n_minus_mean: f64,
    /// Half-width of the bracket in `ln N^-/L` units (added to any
    /// comparison tolerance).
    pub bracket_halfwidth: f64,
}

/// Monte Carlo Birkhoff averages along Gauss orbits; both columns estimate
/// the entropy constant.
pub fn birkhoff_average(l_steps: usize, samples: u64, seed: u64) -> Result<BirkhoffEstimate> {
    if l_steps == 0 {
        return Err(Error::Domain("need at least one orbit step".into()));
    }
    let rows: Vec<(f64, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let p = sample_m(&mut rng);
            let (mut a, mut b) = (p.a(), p.b());
            let mut log_sum = 0.0f64;
            let mut a_last = a;
            for _ in 0..l_steps {
                log_sum += -a.ln();
                a_last = a;
                let (a1, b1, _) = skew_step(a, b);
                if a1 <= 0.0 || !a1.is_finite() {
                    let q = sample_m(&mut rng);
                    a = q.a();
                    b = q.b();
                } else {
                    a = a1;
                    b = b1;
                }
            }
            let orbit = log_sum / l_steps as f64;
            let halfwidth = 0.5 * (1.0 + 4.0 * a_last).ln() / l_steps as f64;
            (orbit, orbit + halfwidth, halfwidth)
        })
        .collect();
    let n = samples as f64;
    let orbit_mean = rows.iter().map(|r| r.0).sum::<f64>() / n;
    let orbit_var = rows.iter().map(|r| (r.0 - orbit_mean).powi(2)).sum::<f64>() / (n - 1.0);
    let log_n_minus_mean = rows.iter().map(|r| r.1).sum::<f64>() / n;
    let bracket_halfwidth = rows.iter().map(|r| r.2).sum::<f64>() / n;
    Ok(BirkhoffEstimate {
        l: l_steps,
        samples,
        orbit_mean,
        orbit_ci: 1.96 * (orbit_var / n).sqrt(),
        log_n_minus_mean,
        bracket_halfwidth,
    })
}
