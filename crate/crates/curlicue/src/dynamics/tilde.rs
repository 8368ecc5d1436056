//! The three-branch interval map on `X = [0, 3]` whose fractional part
//! follows the Gauss map and whose integer part codes the stabilized fibre
//! state (`[0,1] ~ b = 0`, `(1,2) ~ b = -a/2`, `(2,3) ~ b = 1/2`), its
//! invariant measure `nu`, and the even/odd halves of the Gauss-map
//! transfer operator.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{skew_step, stream_rng};
use crate::error::{Error, Result};
use crate::numeric::{frac, int_part};

/// One application of the interval map.
pub fn tilde_map(x: f64) -> Result<f64> {
    if !(0.0..=3.0).contains(&x) {
        return Err(Error::Domain(format!("interval map needs x in [0,3], got {x}")));
    }
    if x == 0.0 || x == 1.0 || x == 2.0 {
        return Err(Error::Domain(format!("branch seam x = {x}")));
    }
    let (code, y) = if x <= 1.0 {
        (0u8, x)
    } else if x < 2.0 {
        (1, x - 1.0)
    } else {
        (2, x - 2.0)
    };
    let state = TildeState { code, frac: y };
    let next = state.step().ok_or_else(|| Error::Domain("rational orbit terminates".into()))?;
    Ok(next.code as f64 + next.frac)
}

/// The map state carried as (branch code, fractional part).
///
/// Equivalent to a point of `[0, 3]`, but the fractional part is kept
/// separate so that iterating the interval map performs bit-identical
/// float operations to the skew product it codes; storing `code + frac`
/// in one f64 rounds the low bit away on the upper branches and the two
/// systems would decohere within ~45 chaotic steps.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct TildeState {
    pub code: u8,
    pub frac: f64,
}

impl TildeState {
    pub fn new(code: u8, frac: f64) -> Result<TildeState> {
        if code > 2 || !(frac > 0.0 && frac < 1.0) {
            return Err(Error::Domain(format!("bad interval state ({code}, {frac})")));
        }
        Ok(TildeState { code, frac })
    }

    pub fn to_point(self) -> f64 {
        self.code as f64 + self.frac
    }

    /// Coded fibre value over the base point `a = frac`.
    pub fn coded_b(self) -> f64 {
        match self.code {
            0 => 0.0,
            1 => -self.frac / 2.0,
            _ => 0.5,
        }
    }

    /// One step; `None` when the Gauss orbit terminates (rational point).
    pub fn step(self) -> Option<TildeState> {
        let inv = 1.0 / self.frac;
        let k_even = int_part(inv) % 2 == 0;
        let y = frac(inv);
        if y == 0.0 {
            return None;
        }
        let code = match self.code {
            0 => {
                if k_even {
                    0
                } else {
                    2
                }
            }
            1 => {
                if k_even {
                    2
                } else {
                    0
                }
            }
            _ => 1,
        };
        Some(TildeState { code, frac: y })
    }
}

/// CDF of the invariant measure `nu` (density `1/(3 ln 2 (x - i + 1))` on
/// `[i, i+1]`).
pub fn nu_cdf(x: f64) -> f64 {
    let x = x.clamp(0.0, 3.0);
    let i = (x.floor() as i32).min(2);
    (i as f64 + (1.0 + (x - i as f64)).log2()) / 3.0
}

/// Draw from `nu` by inverse CDF per interval.
pub fn sample_nu<R: Rng>(rng: &mut R) -> f64 {
    let i = rng.gen_range(0u8..3);
    let u: f64 = rng.gen();
    i as f64 + (u.exp2() - 1.0)
}

/// Even half of the Gauss transfer operator:
/// `(P_e u)(a) = (1+a) sum_{k >= 1} u(1/(2k+a)) / ((2k+a)(2k+1+a))`.
///
/// Truncated at `k_terms` with an Euler-Maclaurin tail (midpoint integral
/// plus first derivative correction, with `u` frozen at its small-argument
/// limit); the plain truncated sum alone converges like 1/k and would need
/// k ~ 1e10 for the target accuracies.
pub fn apply_pe<F: Fn(f64) -> f64>(u: &F, a: f64, k_terms: usize) -> f64 {
    operator_sum(u, a, k_terms, 0.0)
}

/// Odd half: terms `u(1/(2k-1+a)) / ((2k-1+a)(2k+a))`.
pub fn apply_po<F: Fn(f64) -> f64>(u: &F, a: f64, k_terms: usize) -> f64 {
    operator_sum(u, a, k_terms, -1.0)
}

fn operator_sum<F: Fn(f64) -> f64>(u: &F, a: f64, k_terms: usize, shift: f64) -> f64 {
    let one_a = 1.0 + a;
    let mut acc = 0.0;
    for k in 1..=k_terms {
        let d = 2.0 * k as f64 + shift + a;
        acc += u(1.0 / d) / (d * (d + 1.0));
    }
    // tail: sum_{k > K} w(k) ~ int_{K+1/2}^inf w(x) dx - w'(K+1/2)/24,
    // expanding u(1/d) ~ u(0+) + u'(0+)/d over the tail
    let u0 = u(1e-300);
    let du0 = (u(1e-6) - u0) * 1e6;
    let x = k_terms as f64 + 0.5;
    let d = 2.0 * x + shift + a;
    let log_term = ((d + 1.0) / d).ln();
    let integral0 = 0.5 * log_term;
    // int dx / (d^2 (d+1)) over x > K+1/2
    let integral1 = 0.5 * (1.0 / d - log_term);
    let wprime = -2.0 / (d * d * (d + 1.0)) - 2.0 / (d * (d + 1.0) * (d + 1.0));
    acc += u0 * (integral0 - wprime / 24.0) + du0 * integral1;
    one_a * acc
}

/// Transfer-operator identity check: applying the operator of the interval
/// map to the constant function 1 returns 1. On each unit interval the
/// action reduces to `(P_e + P_o)` of the constant 1 on `[0,1]`.
pub fn p_one_deviation(grid: usize, k_terms: usize) -> f64 {
    let one = |_x: f64| 1.0;
    let mut worst = 0.0f64;
    for i in 0..grid {
        let x = 3.0 * (i as f64 + 0.5) / grid as f64;
        let y = frac(x);
        if y < 1e-9 || y > 1.0 - 1e-9 {
            continue;
        }
        let v = apply_pe(&one, y, k_terms) + apply_po(&one, y, k_terms);
        worst = worst.max((v - 1.0).abs());
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub samples: u64,
    /// KS distance of the pushforward of `nu` under the map against `nu`.
    pub ks_pushforward: f64,
    /// Max of `|P 1 - 1|` over the operator grid.
    pub p_one_dev: f64,
    /// Lagged covariances of the threshold event `a <= 0.2` along orbits.
    pub covariances: Vec<f64>,
    /// Fitted decay rate of `ln |cov|` per lag (positive = decaying).
    pub decay_rate: f64,
}

/// Empirical invariance of `nu`, the operator identity, and correlation
/// decay of threshold events along orbits.
pub fn tilde_invariance_check(samples: u64, seed: u64) -> Result<InvarianceReport> {
    // (i) pushforward test
    let mut pushed: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            loop {
                let x = sample_nu(&mut rng);
                let state = TildeState {
                    code: x.floor().min(2.0) as u8,
                    frac: frac(x).max(f64::MIN_POSITIVE),
                };
                if let Some(next) = state.step() {
                    return next.to_point();
                }
            }
        })
        .collect();
    pushed.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let n = pushed.len() as f64;
    let mut ks = 0.0f64;
    for (i, &x) in pushed.iter().enumerate() {
        let c = nu_cdf(x);
        ks = ks.max((c - i as f64 / n).abs()).max(((i + 1) as f64 / n - c).abs());
    }

    // (ii) operator identity on a 300-point grid
    let p_one_dev = p_one_deviation(300, 2000);

    // (iii) covariance decay of chi(a_l <= 0.2) at lags 0..=20
    let lags = 20usize;
    let burn = 30usize;
    let orbits = (samples / 10).clamp(2_000, 100_000);
    let rows: Vec<Vec<u32>> = (0..orbits)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed.wrapping_add(1), i);
            let mut x = sample_nu(&mut rng);
            let mut state = TildeState {
                code: x.floor().min(2.0) as u8,
                frac: frac(x).max(f64::MIN_POSITIVE),
            };
            let mut hits = Vec::with_capacity(lags + 1);
            let mut steps = 0usize;
            while hits.len() <= lags {
                match state.step() {
                    Some(next) => {
                        state = next;
                        steps += 1;
                        if steps > burn {
                            hits.push(u32::from(state.frac <= 0.2));
                        }
                    }
                    None => {
                        x = sample_nu(&mut rng);
                        state = TildeState {
                            code: x.floor().min(2.0) as u8,
                            frac: frac(x).max(f64::MIN_POSITIVE),
                        };
                    }
                }
            }
            hits
        })
        .collect();
    let m = rows.len() as f64;
    let p0: f64 = rows.iter().map(|r| r[0] as f64).sum::<f64>() / m;
    let mut covariances = Vec::with_capacity(lags + 1);
    for lag in 0..=lags {
        let pk: f64 = rows.iter().map(|r| r[lag] as f64).sum::<f64>() / m;
        let joint: f64 = rows.iter().map(|r| (r[0] * r[lag]) as f64).sum::<f64>() / m;
        covariances.push(joint - p0 * pk);
    }
    // least-squares slope of ln|cov| over the lags where cov clears noise
    let noise = 3.0 / m.sqrt();
    let pts: Vec<(f64, f64)> = covariances
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| c.abs() > noise)
        .map(|(l, c)| (l as f64, c.abs().ln()))
        .collect();
    let decay_rate = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        -(n * sxy - sx * sy) / (n * sxx - sx * sx)
    } else {
        f64::INFINITY // correlations below noise at every lag
    };

    Ok(InvarianceReport {
        samples,
        ks_pushforward: ks,
        p_one_dev,
        covariances,
        decay_rate,
    })
}

/// Run the skew product from `(a, b)` with `b` in the coded set alongside
/// the interval map and report the largest base/fibre mismatch over
/// `steps` iterations.
pub fn coding_agreement(a: f64, code: u8, steps: usize) -> Result<f64> {
    let mut state = TildeState::new(code, a)?;
    let (mut sa, mut sb) = (a, state.coded_b());
    let mut worst = 0.0f64;
    for _ in 0..steps {
        let (a1, b1, _) = skew_step(sa, sb);
        let next = match state.step() {
            Some(s) => s,
            None => return Ok(worst), // rational orbit ended
        };
        if a1 <= 0.0 {
            return Ok(worst);
        }
        worst = worst.max((a1 - next.frac).abs());
        worst = worst.max((b1 - next.coded_b()).abs());
        sa = a1;
        sb = b1;
        state = next;
    }
    Ok(worst)
}
