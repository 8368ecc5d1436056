//! Timing harness comparing direct summation against the cascade.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::error::Result;
use crate::numeric::{Params, PrecisionConfig};
use crate::renorm::{naive_sum, renorm_sum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Renorm,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: u64,
    pub method: Method,
    /// Median wall time over the repetitions.
    pub wall_ns: u128,
    pub value_re: f64,
    pub value_im: f64,
    /// `|naive - renorm|` whenever both methods ran at this `n`.
    pub residual: Option<f64>,
}

/// Largest `n` the direct sum is attempted at.
pub const DEFAULT_NAIVE_CAP: u64 = 20_000_000;

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn time_it<F: FnMut() -> Result<Complex64>>(mut f: F, reps: usize) -> Result<(Complex64, u128)> {
    let mut times = Vec::with_capacity(reps);
    let mut value = Complex64::new(0.0, 0.0);
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        value = f()?;
        times.push(start.elapsed().as_nanos());
    }
    Ok((value, median(times)))
}

/// Run both methods (the direct sum only up to `naive_cap`) and report
/// medians and residuals.
pub fn bench(
    ns: &[u64],
    p: Params,
    cfg: &PrecisionConfig,
    reps: usize,
    naive_cap: u64,
) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in ns {
        let (renorm_value, renorm_ns) = time_it(|| renorm_sum(n, p, cfg), reps)?;
        let naive = if n <= naive_cap {
            Some(time_it(|| naive_sum(n, p, cfg), reps)?)
        } else {
            None
        };
        let residual = naive.as_ref().map(|(v, _)| (v - renorm_value).norm());
        if let Some((v, t)) = naive {
            records.push(BenchRecord {
                n,
                method: Method::Naive,
                wall_ns: t,
                value_re: v.re,
                value_im: v.im,
                residual,
            });
        }
        records.push(BenchRecord {
            n,
            method: Method::Renorm,
            wall_ns: renorm_ns,
            value_re: renorm_value.re,
            value_im: renorm_value.im,
            residual,
        });
    }
    Ok(records)
}
