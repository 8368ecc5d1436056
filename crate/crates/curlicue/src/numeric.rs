//! Exact-convention real/complex primitives.
//!
//! Phases live in turns (units of a full revolution), never radians: the
//! circle exponential is `e(z) = exp(2*pi*i*z)` and all mod-1 reductions
//! happen before any multiplication by pi. Two fractional-part conventions
//! coexist: `frac` maps into `[0,1)`, `frac0` into `(-1/2, 1/2]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Fractional part in `[0, 1)`, so `x = int_part(x) + frac(x)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // x just below an integer can round to 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Integer part (floor), the companion of [`frac`].
#[inline]
pub fn int_part(x: f64) -> i64 {
    x.floor() as i64
}

/// Signed fractional part in `(-1/2, 1/2]`; the boundary maps to `+1/2`.
#[inline]
pub fn frac0(x: f64) -> f64 {
    let f = frac(x);
    if f > 0.5 {
        f - 1.0
    } else {
        f
    }
}

/// The unit-circle exponential `e(x) = exp(2*pi*i*x)` for real phase in turns.
#[inline]
pub fn unit_exp(x: f64) -> Complex64 {
    let (s, c) = (TAU * frac0(x)).sin_cos();
    Complex64::new(c, s)
}

/// `e(z)` for complex `z`; modulus `exp(-2*pi*Im z)`.
#[inline]
pub fn unit_exp_c(z: Complex64) -> Complex64 {
    let r = (-TAU * z.im).exp();
    let (s, c) = (TAU * frac0(z.re)).sin_cos();
    Complex64::new(r * c, r * s)
}

/// A real number interpreted modulo one turn.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase(pub f64);

impl Phase {
    /// Canonical representative in `[0, 1)`.
    pub fn frac(self) -> f64 {
        frac(self.0)
    }

    /// Canonical representative in `(-1/2, 1/2]`.
    pub fn frac0(self) -> f64 {
        frac0(self.0)
    }

    /// The point `e(phase)` on the unit circle.
    pub fn to_point(self) -> Complex64 {
        unit_exp(self.0)
    }
}

/// A point of the parameter square: `a` in `(0,1)`, `b` in `(-1/2, 1/2]`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    a: f64,
    b: f64,
}

impl Params {
    pub fn new(a: f64, b: f64) -> Result<Params> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
        }
        if !(b > -0.5 && b <= 0.5) {
            return Err(Error::Domain(format!("b must be in (-1/2,1/2], got {b}")));
        }
        Ok(Params { a, b })
    }

    /// Accepts any real `b` and reduces it into `(-1/2, 1/2]`.
    pub fn new_reduced(a: f64, b: f64) -> Result<Params> {
        Params::new(a, frac0(b))
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Precision knobs shared by phase reduction and quadrature.
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Mantissa width used for phase accumulation. The double-double backend
    /// provides up to 106 bits.
    pub working_bits: u32,
    /// Target absolute error for special-function quadrature.
    pub quad_tolerance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { working_bits: 106, quad_tolerance: 1e-10 }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.working_bits < 53 {
            return Err(Error::Domain(format!(
                "working_bits must be >= 53, got {}",
                self.working_bits
            )));
        }
        if self.working_bits > 106 {
            return Err(Error::PrecisionExhausted(format!(
                "double-double backend caps working_bits at 106, requested {}",
                self.working_bits
            )));
        }
        if !(self.quad_tolerance > 0.0 && self.quad_tolerance <= 1e-6) {
            return Err(Error::Domain(format!(
                "quad_tolerance must lie in (0, 1e-6], got {:e}",
                self.quad_tolerance
            )));
        }
        Ok(())
    }

    pub fn with_tolerance(tol: f64) -> PrecisionConfig {
        PrecisionConfig { quad_tolerance: tol, ..Default::default() }
    }
}

/// Phase bits we insist on keeping after the mod-1 reduction.
const MIN_RESIDUAL_BITS: u32 = 30;

/// `(-a n^2/2 + n b) mod 1` with extended-precision accumulation.
///
/// The absolute error is about `2^(-working_bits + log2(n^2))`; the call
/// fails once that bound eats into the last [`MIN_RESIDUAL_BITS`] bits of
/// the reduced phase.
pub fn reduced_phase(n: u64, a: f64, b: f64, cfg: &PrecisionConfig) -> Result<Phase> {
    cfg.validate()?;
    if n == 0 {
        return Ok(Phase(0.0));
    }
    let bits_needed = 2 * (64 - n.leading_zeros()) + MIN_RESIDUAL_BITS;
    if bits_needed > cfg.working_bits {
        return Err(Error::PrecisionExhausted(format!(
            "phase a*n^2/2 at n={n} needs {bits_needed} bits, have {}",
            cfg.working_bits
        )));
    }
    let nf = n as f64; // exact: n < 2^38 by the bits check
    let quad = Dd::from_prod(nf, nf).mul_f64(a).scale(0.5);
    let lin = Dd::from_prod(nf, b);
    Ok(Phase(lin.sub(quad).frac0().to_f64()))
}

/// Same reduction carried out fully in double-double, for cascade internals.
pub(crate) fn reduced_phase_dd(n: u64, a: Dd, b: Dd) -> Dd {
    if n == 0 {
        return Dd::ZERO;
    }
    let nd = Dd::from_u64(n);
    let quad = nd.mul(nd).mul(a).scale(0.5);
    let lin = nd.mul(b);
    lin.sub(quad).frac0()
}
