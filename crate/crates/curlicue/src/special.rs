//! The special function `calF(xi, a)`: the contour integral of
//! `e(p^2/2a) / (e(p - xi) - 1)` along the 45-degree line through `xi`,
//! together with its companion `calG` and the small-`a` Fresnel surrogate.
//!
//! Inside the strip `|xi| <= 1/2` the pole is split off analytically:
//!
//!   calF = e(1/8) f(xi / sqrt a)  +  int g(p - xi) e(p^2/2a) dp,
//!   g(z) = 1/(e(z) - 1) - 1/(2 pi i z),
//!
//! and the remaining integrand, pushed onto the line through the origin,
//! is a pure Gaussian `e^{-pi t^2 / a}` times the bounded analytic factor
//! `g` - no oscillation, no principal value, no semicircle bookkeeping.
//! Outside the strip the shift equation `calF(xi) - calF(xi-1) = e(xi^2/2a)`
//! reduces the argument.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::fresnel::fresnel_f;
use crate::numeric::{unit_exp, PrecisionConfig};
use crate::quad;

/// A computed special-function value with its quadrature error bound.
#[derive(Copy, Clone, Debug)]
pub struct SpecialValue {
    pub value: Complex64,
    pub err_estimate: f64,
}

/// `c(a) = e(-1/8) a^{-1/2}`, the renormalization prefactor.
pub fn c_of_a(a: f64) -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2) / a.sqrt()
}

/// Taylor coefficients of `g(z) + 1/2` in `w = 2 pi i z`: `B_{2k}/(2k)!`.
const G_COEF: [f64; 10] = [
    8.333333333333333e-2,
    -1.388888888888889e-3,
    3.306878306878307e-5,
    -8.267195767195768e-7,
    2.08767569878681e-8,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225857e-13,
    8.586062056277845e-15,
    -2.1748686985896543e-16,
];

/// `g(z) = 1/(e(z)-1) - 1/(2 pi i z)`; removable singularity at z = 0,
/// poles at the nonzero integers.
fn g(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 0.0225 {
        // Bernoulli series, |2 pi z| < 1: cancellation-free near the origin
        let w = Complex64::new(0.0, TAU) * z;
        let w2 = w * w;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = w;
        for c in G_COEF {
            acc += c * pw;
            pw *= w2;
        }
        acc - 0.5
    } else {
        let e = (Complex64::new(0.0, TAU) * z).exp();
        1.0 / (e - 1.0) - 1.0 / (Complex64::new(0.0, TAU) * z)
    }
}

fn validate_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
    }
    Ok(())
}

/// Phase `x^2 / (2 a)` in turns, reduced mod 1 in extended precision.
fn half_square_phase(x: f64, a: f64) -> f64 {
    Dd::from_prod(x, x).div(Dd::from_f64(2.0 * a)).frac0().to_f64()
}

/// `calF` restricted to the strip `|xi| <= 1/2`.
fn cal_f_strip(xi: f64, a: f64, tol: f64) -> Result<SpecialValue> {
    // leading term e(1/8) f(xi/sqrt a) = e(1/8 + xi^2/2a) F(xi/sqrt a)
    let phase = Dd::from_prod(xi, xi)
        .div(Dd::from_f64(2.0 * a))
        .add_f64(0.125)
        .frac0()
        .to_f64();
    let lead = unit_exp(phase) * fresnel_f(xi / a.sqrt()).value;

    // Gaussian correction along the line through the origin:
    //   e^{i pi/4} int g(e^{i pi/4} t - xi) e^{-pi t^2/a} dt
    let g_max = 1.5f64;
    let t_max = (a * (10.0 * g_max / tol).ln() / PI).sqrt();
    let rot = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let (integral, quad_err) = quad::integrate(
        |t| g(rot * t - xi) * (-PI * t * t / a).exp(),
        -t_max,
        t_max,
        0.5 * tol,
    )?;
    let truncation = 2.0 * g_max * (-PI * t_max * t_max / a).exp();
    let err = quad_err + truncation + 1e-13;
    if err > 4.0 * tol {
        return Err(Error::QuadratureFailure { requested: tol, achieved: err });
    }
    Ok(SpecialValue { value: lead + rot * integral, err_estimate: err })
}

/// `calF(xi, a)` for any real `xi`, `a` in `(0, 1)`.
pub fn cal_f(xi: f64, a: f64, cfg: &PrecisionConfig) -> Result<SpecialValue> {
    validate_a(a)?;
    cfg.validate()?;
    let tol = cfg.quad_tolerance;
    let k = xi.round();
    let base = cal_f_strip(xi - k, a, tol)?;
    if k == 0.0 {
        return Ok(base);
    }
    // shift equation: calF(x) = calF(x-1) + e(x^2/2a)
    let mut value = base.value;
    let mut err = base.err_estimate;
    if k > 0.0 {
        let mut j = 0.0;
        while j < k {
            value += unit_exp(half_square_phase(xi - j, a));
            err += 1e-15;
            j += 1.0;
        }
    } else {
        let mut j = 1.0;
        while j <= -k {
            value -= unit_exp(half_square_phase(xi + j, a));
            err += 1e-15;
            j += 1.0;
        }
    }
    Ok(SpecialValue { value, err_estimate: err })
}

/// `calG(xi, a) = c(a) e(-xi^2/2a) calF(xi, a)`.
pub fn cal_g(xi: f64, a: f64, cfg: &PrecisionConfig) -> Result<SpecialValue> {
    let f = cal_f(xi, a, cfg)?;
    let scale = c_of_a(a) * unit_exp(-half_square_phase(xi, a));
    Ok(SpecialValue {
        value: scale * f.value,
        err_estimate: f.err_estimate / a.sqrt() + 1e-14,
    })
}

/// The Fresnel surrogate `e(1/8) f(a^{-1/2} xi)`; differs from `calF` by
/// `O(sqrt a)` uniformly over the strip.
pub fn asymptotic_cal_f(xi: f64, a: f64) -> Result<Complex64> {
    if !(-0.5..=0.5).contains(&xi) {
        return Err(Error::Domain(format!("asymptotic form needs |xi| <= 1/2, got {xi}")));
    }
    validate_a(a)?;
    let phase = Dd::from_prod(xi, xi)
        .div(Dd::from_f64(2.0 * a))
        .add_f64(0.125)
        .frac0()
        .to_f64();
    Ok(unit_exp(phase) * fresnel_f(xi / a.sqrt()).value)
}
