//! The invariant two-level density family of the fibre transfer operator.
//!
//! For `f(b | a, A, B)` equal to `A` on `|b| < a/2` and `B` on `|b| > a/2`
//! with `aA + (1-a)B = 1`, the transfer operator of the fibre map sends it
//! to `f(. | a1, A1, B1)` with `(A1, B1)` linear in `(A, B)`, and the
//! normalization functional is preserved exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{frac, int_part};

/// Two-level density `f(b | a, A, B)` on `(-1/2, 1/2]`.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct PiecewiseDensity {
    pub a: f64,
    pub level_inner: f64,
    pub level_outer: f64,
}

impl PiecewiseDensity {
    pub fn new(a: f64, level_inner: f64, level_outer: f64) -> Result<PiecewiseDensity> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
        }
        if level_inner < 0.0 || level_outer < 0.0 {
            return Err(Error::Domain("density levels must be nonnegative".into()));
        }
        Ok(PiecewiseDensity { a, level_inner, level_outer })
    }

    /// `a*A + (1-a)*B`: equals 1 for probability densities and is invariant
    /// under the transfer operator.
    pub fn functional(&self) -> f64 {
        self.a * self.level_inner + (1.0 - self.a) * self.level_outer
    }

    /// Pointwise value (undefined exactly at the breakpoints `|b| = a/2`).
    pub fn eval(&self, b: f64) -> f64 {
        if b.abs() < self.a / 2.0 {
            self.level_inner
        } else {
            self.level_outer
        }
    }
}

/// The 2x2 matrix `S(a)` acting on `(A, B)`.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct TransferMatrix {
    pub a: f64,
    pub a1: f64,
}

impl TransferMatrix {
    pub fn new(a: f64) -> Result<TransferMatrix> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
        }
        Ok(TransferMatrix { a, a1: frac(1.0 / a) })
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        let (a, a1) = (self.a, self.a1);
        [[a, 1.0 - a * a1], [a, 1.0 - a - a * a1]]
    }

    pub fn apply(&self, inner: f64, outer: f64) -> (f64, f64) {
        let e = self.entries();
        (
            e[0][0] * inner + e[0][1] * outer,
            e[1][0] * inner + e[1][1] * outer,
        )
    }
}

/// One transfer-operator step inside the family: `(a, A, B)` to `(a1, A1, B1)`.
pub fn pf_apply_family(d: &PiecewiseDensity) -> Result<PiecewiseDensity> {
    let m = TransferMatrix::new(d.a)?;
    if m.a1 == 0.0 {
        return Err(Error::Domain("rational a: the Gauss orbit terminates".into()));
    }
    let (a1_level, b1_level) = m.apply(d.level_inner, d.level_outer);
    PiecewiseDensity::new(m.a1, a1_level, b1_level)
}

/// The raw transfer operator applied pointwise: for each requested point
/// `b1`, sums `a * f(b(m))` over the preimage branches
/// `b(m) = a(-b1 + [1/a]/2 + m)` inside `(-1/2, 1/2]`.
///
/// This is the brute-force oracle validating [`pf_apply_family`]; it works
/// for any integrable `f`.
pub fn pf_apply_grid<F: Fn(f64) -> f64>(f: F, a: f64, points: &[f64]) -> Result<Vec<f64>> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
    }
    if a < 1e-9 {
        return Err(Error::ResolutionTooCoarse(format!(
            "1/a = {:.3e} preimage branches per point",
            1.0 / a
        )));
    }
    let k_half = int_part(1.0 / a) as f64 / 2.0;
    let half_width = 0.5 / a;
    let mut out = Vec::with_capacity(points.len());
    for &b1 in points {
        let center = b1 - k_half;
        let m_lo = (center - half_width).floor() as i64 - 1;
        let m_hi = (center + half_width).ceil() as i64 + 1;
        let mut acc = 0.0;
        for m in m_lo..=m_hi {
            let pre = a * (-b1 + k_half + m as f64);
            if pre > -0.5 && pre <= 0.5 {
                acc += f(pre);
            }
        }
        out.push(a * acc);
    }
    Ok(out)
}

/// The two-term recursion and its closed form along a Gauss orbit.
#[derive(Clone, Debug)]
pub struct AbSequences {
    pub inner_rec: Vec<f64>,
    pub outer_rec: Vec<f64>,
    pub outer_closed: Vec<f64>,
    pub inner_closed: Vec<f64>,
}

/// Iterate the family coefficients along `a_seq` (starting level included),
/// from `B_0 = b0` and `A_0` fixed by the normalization.
///
/// Closed form: `B_l = 1 - sum_{m=0}^{l-2} (-1)^m prod_{n=l-m}^{l} a_n a_{n-1}
/// + (-1)^l prod_{n=1}^{l} a_n a_{n-1} B`, and `A_l = B_l + a_{l-1} B_{l-1}`.
pub fn iterate_ab(a_seq: &[f64], b0: f64) -> Result<AbSequences> {
    if a_seq.is_empty() {
        return Err(Error::Domain("need at least one orbit point".into()));
    }
    let a0 = a_seq[0];
    if !(a0 > 0.0 && a0 < 1.0) {
        return Err(Error::Domain("orbit values must lie in (0,1)".into()));
    }
    let l_max = a_seq.len() - 1;
    let inner0 = (1.0 - (1.0 - a0) * b0) / a0;

    let mut inner_rec = vec![inner0];
    let mut outer_rec = vec![b0];
    for l in 1..=l_max {
        let (ap, al) = (a_seq[l - 1], a_seq[l]);
        let inner = ap * inner_rec[l - 1] + (1.0 - ap * al) * outer_rec[l - 1];
        let outer = ap * inner_rec[l - 1] + (1.0 - ap - al * ap) * outer_rec[l - 1];
        inner_rec.push(inner);
        outer_rec.push(outer);
    }

    let mut outer_closed = vec![b0];
    let mut inner_closed = vec![inner0];
    for l in 1..=l_max {
        let mut sum = 0.0;
        if l >= 2 {
            for m in 0..=(l - 2) {
                let mut prod = 1.0;
                for n in (l - m)..=l {
                    prod *= a_seq[n] * a_seq[n - 1];
                }
                sum += if m % 2 == 0 { prod } else { -prod };
            }
        }
        let mut full = 1.0;
        for n in 1..=l {
            full *= a_seq[n] * a_seq[n - 1];
        }
        let signed_full = if l % 2 == 0 { full } else { -full };
        let outer = 1.0 - sum + signed_full * b0;
        let inner = outer + a_seq[l - 1] * outer_closed[l - 1];
        outer_closed.push(outer);
        inner_closed.push(inner);
    }

    Ok(AbSequences { inner_rec, outer_rec, outer_closed, inner_closed })
}

/// The box family `f(b | a, M)`: uniform on a centered interval whose width
/// is tuned so one transfer step lands back in the two-level family.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct SecondFamily {
    pub a: f64,
    pub m: u64,
    /// Box half-width; density is `height` inside, 0 outside.
    pub half_width: f64,
    pub height: f64,
    pub image: PiecewiseDensity,
}

impl SecondFamily {
    pub fn eval(&self, b: f64) -> f64 {
        if b.abs() <= self.half_width {
            self.height
        } else {
            0.0
        }
    }
}

/// Build the box density and its exact one-step image.
pub fn second_family(a: f64, m: u64) -> Result<SecondFamily> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("a must be in (0,1), got {a}")));
    }
    let k = int_part(1.0 / a);
    let a1 = frac(1.0 / a);
    if a1 == 0.0 {
        return Err(Error::Domain("rational a: no image parameters".into()));
    }
    let even = k % 2 == 0;
    let m_cap = if even { k / 2 } else { (k + 1) / 2 };
    if m == 0 || m as i64 > m_cap {
        return Err(Error::MOutOfRange(format!("need 1 <= M <= {m_cap}, got {m}")));
    }
    let mf = m as f64;
    // effective count: 2M - a1 preimage branches hit the box (even case),
    // 2M - 1 - a1 in the odd case
    let (half_width, denom) = if even {
        (a * (mf - a1 / 2.0), 2.0 * mf - a1)
    } else {
        (a * (mf - 0.5 - a1 / 2.0), 2.0 * mf - 1.0 - a1)
    };
    if half_width <= 0.0 {
        return Err(Error::MOutOfRange(format!("box degenerates at M = {m}")));
    }
    let height = 1.0 / (a * denom);
    let image = PiecewiseDensity::new(
        a1,
        1.0 - (1.0 - a1) / denom,
        1.0 + a1 / denom,
    )?;
    Ok(SecondFamily { a, m, half_width, height, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{sample_m, stream_rng};
    use rand::Rng;

    fn grid_points(a1: f64, n: usize) -> Vec<f64> {
        // off-breakpoint grid: avoids 0, +/- a1/2 and the domain edges
        (0..n)
            .map(|i| -0.5 + (i as f64 + 0.5) / n as f64)
            .filter(|b| {
                (b.abs() - a1 / 2.0).abs() > 1e-4 && b.abs() > 1e-4 && (b.abs() - 0.5).abs() > 1e-4
            })
            .collect()
    }

    #[test]
    fn family_step_frozen_example() {
        // a = 0.4: a1 = 0.5, (1,1) -> (1.2, 0.8)
        let d = PiecewiseDensity::new(0.4, 1.0, 1.0).unwrap();
        let d1 = pf_apply_family(&d).unwrap();
        assert!((d1.a - 0.5).abs() < 1e-15);
        assert!((d1.level_inner - 1.2).abs() < 1e-12);
        assert!((d1.level_outer - 0.8).abs() < 1e-12);
        assert!((d1.functional() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_start_outer_level() {
        // B0 = 1: B1 = 1 - a*a1
        let mut rng = stream_rng(5, 0);
        for _ in 0..50 {
            let p = sample_m(&mut rng);
            let d = PiecewiseDensity::new(p.a(), 1.0, 1.0).unwrap();
            let d1 = pf_apply_family(&d).unwrap();
            assert!((d1.level_outer - (1.0 - p.a() * d1.a)).abs() < 1e-12);
        }
    }

    #[test]
    fn family_matches_grid_oracle() {
        let mut rng = stream_rng(11, 0);
        for _ in 0..100 {
            let p = sample_m(&mut rng);
            if p.a() < 1e-4 {
                continue;
            }
            let outer: f64 = rng.gen_range(0.0..1.6);
            let inner = (1.0 - (1.0 - p.a()) * outer) / p.a();
            if inner < 0.0 {
                continue;
            }
            let d = PiecewiseDensity::new(p.a(), inner, outer).unwrap();
            let image = pf_apply_family(&d).unwrap();
            let pts = grid_points(image.a, 41);
            let got = pf_apply_grid(|b| d.eval(b), p.a(), &pts).unwrap();
            for (b1, v) in pts.iter().zip(&got) {
                assert!(
                    (v - image.eval(*b1)).abs() < 1e-10,
                    "a={} b1={b1}: grid {v} family {}",
                    p.a(),
                    image.eval(*b1)
                );
            }
        }
    }

    #[test]
    fn grid_oracle_conserves_mass() {
        // fine Riemann sum of the image of a density integrates to 1
        let a = 0.3183;
        let d = PiecewiseDensity::new(a, 1.7, (1.0 - a * 1.7) / (1.0 - a)).unwrap();
        let n = 40_001usize;
        let pts: Vec<f64> = (0..n).map(|i| -0.5 + (i as f64 + 0.5) / n as f64).collect();
        let img = pf_apply_grid(|b| d.eval(b), a, &pts).unwrap();
        let mass: f64 = img.iter().sum::<f64>() / n as f64;
        assert!((mass - 1.0).abs() < 1e-4, "mass {mass}");
    }

    #[test]
    fn closed_form_equals_recursion() {
        let mut rng = stream_rng(23, 0);
        for _ in 0..50 {
            let p = sample_m(&mut rng);
            let mut seq = vec![p.a()];
            let (mut a, mut b) = (p.a(), p.b());
            for _ in 0..40 {
                let (a1, b1, _) = crate::dynamics::skew_step(a, b);
                if a1 <= 0.0 {
                    break;
                }
                seq.push(a1);
                a = a1;
                b = b1;
            }
            let s = iterate_ab(&seq, 1.0).unwrap();
            for l in 0..seq.len() {
                assert!((s.outer_rec[l] - s.outer_closed[l]).abs() < 1e-12);
                assert!((s.inner_rec[l] - s.inner_closed[l]).abs() < 1e-12);
                // with B0 = 1 every B_l stays in (1/2, 1)
                if l > 0 {
                    assert!(s.outer_rec[l] > 0.5 && s.outer_rec[l] < 1.0);
                    // one-step contraction B_l = 1 - a_l a_{l-1} B_{l-1}
                    let pred = 1.0 - seq[l] * seq[l - 1] * s.outer_rec[l - 1];
                    assert!((s.outer_rec[l] - pred).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn box_family_image_matches_oracle() {
        let mut rng = stream_rng(31, 0);
        let mut tested = 0;
        for _ in 0..400 {
            let p = sample_m(&mut rng);
            if p.a() < 0.02 {
                continue;
            }
            let k = int_part(1.0 / p.a());
            let cap = if k % 2 == 0 { k / 2 } else { (k + 1) / 2 };
            if cap < 1 {
                continue;
            }
            let m = 1 + (rng.gen::<u64>() % cap as u64);
            let fam = match second_family(p.a(), m) {
                Ok(f) => f,
                Err(Error::MOutOfRange(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let pts = grid_points(fam.image.a, 31);
            let got = pf_apply_grid(|b| fam.eval(b), p.a(), &pts).unwrap();
            for (b1, v) in pts.iter().zip(&got) {
                assert!(
                    (v - fam.image.eval(*b1)).abs() < 1e-10,
                    "a={} M={m} b1={b1}: {v} vs {}",
                    p.a(),
                    fam.image.eval(*b1)
                );
            }
            // probability conservation and the 1/M proximity to uniform
            assert!((fam.image.functional() - 1.0).abs() < 1e-12);
            if m > 1 {
                assert!((fam.image.level_inner - 1.0).abs() <= 1.0 / m as f64 + 1e-12);
                assert!((fam.image.level_outer - 1.0).abs() <= 1.0 / m as f64 + 1e-12);
            }
            tested += 1;
        }
        assert!(tested > 100, "only {tested} box families exercised");
    }

    #[test]
    fn box_family_rejects_out_of_range() {
        assert!(matches!(second_family(0.3, 0), Err(Error::MOutOfRange(_))));
        assert!(matches!(second_family(0.3, 5), Err(Error::MOutOfRange(_))));
    }
}
