//! Exact renormalization of the quadratic sum
//! `S(N, a, b) = sum_{0 <= n < N} e(-a n^2/2 + n b)`.
//!
//! One step rewrites `S(N, a, b)` through `S(N1, a1, b1)` with
//! `N1 = [a N]`, `a1 = {1/a}`, `b1 = {-b/a + [1/a]/2}_0`, plus two
//! `calF` evaluations; iterating until `N_l` hits zero evaluates the sum
//! in `O(log N)` special-function calls. The cascade `(a_l, b_l)` is
//! carried in double-double: the fibre map expands errors by `1/a_l`
//! per level, and the phases `a_l N_l^2/2` need far more than 53 bits.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::numeric::{frac, frac0, int_part, reduced_phase, reduced_phase_dd, unit_exp, Params,
                     Phase, PrecisionConfig};
use crate::special::{c_of_a, cal_f};

/// Complex conjugation parity: `*l` applies conjugation `l` times.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(l: usize) -> Parity {
        if l % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Parity::Even => z,
            Parity::Odd => z.conj(),
        }
    }
}

/// One level of the cascade.
#[derive(Clone, Debug, Serialize)]
pub struct RenormStep {
    pub l: usize,
    pub a_l: f64,
    pub b_l: f64,
    pub n_l: u64,
    pub xi_l: f64,
    pub theta_l: Phase,
    pub conj_parity: Parity,
}

/// The full cascade of one evaluation together with the weighted terms of
/// the sum decomposition.
#[derive(Clone, Debug)]
pub struct RenormTrace {
    pub steps: Vec<RenormStep>,
    /// Depth: `N_{L+1} = 0`, `N_L >= 1`.
    pub depth: usize,
    /// Weighted contributions `e(theta_l) (a_0..a_l)^{-1/2} dF_l^{*l}`.
    pub terms: Vec<Complex64>,
    /// Geometric remainder when the continued fraction of `a` terminated.
    pub tail: Option<Complex64>,
    pub value: Complex64,
    pub err_bound: f64,
}

impl RenormTrace {
    pub fn recompose(&self) -> Complex64 {
        self.terms.iter().sum::<Complex64>() + self.tail.unwrap_or_default()
    }
}

/// A level of the shared cascade data (independent of `N`).
struct Level {
    a: Dd,
    b: Dd,
    /// Partial quotient `[1/a_{l-1}]` that produced this level (0 at l=0).
    theta: Dd,
    /// `(a_0 ... a_l)^{-1/2}`
    inv_sqrt_prod: f64,
    /// `calF(-b_l, a_l)`
    f_neg_b: Complex64,
    f_neg_b_err: f64,
}

/// Outcome of one Gauss/fibre step.
pub enum StepOutcome {
    Next(Params),
    /// The continued fraction terminated (`{1/a} = 0`): `a` was rational.
    Terminated { b_next: f64 },
}

/// One step of the skew product, `(a, b) -> (a1, b1)`, in plain f64.
pub fn gauss_step(p: Params) -> StepOutcome {
    let inv = 1.0 / p.a();
    let k = int_part(inv);
    let a1 = frac(inv);
    let b1 = frac0(-p.b() / p.a() + 0.5 * k as f64);
    if a1 == 0.0 {
        StepOutcome::Terminated { b_next: b1 }
    } else {
        StepOutcome::Next(Params::new(a1, b1).expect("step stays in the square"))
    }
}

/// Direct summation through extended-precision phase reduction: the ground
/// truth every renormalization identity is tested against.
pub fn naive_sum(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<Complex64> {
    cfg.validate()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += reduced_phase(k, p.a(), p.b(), cfg)?.to_point();
    }
    Ok(acc)
}

/// Direct summation with double-double parameters: needed when `(a, b)` are
/// themselves descended values of a cascade, whose f64 roundings would cost
/// ~`N^2 ulp` in the identity being checked.
fn naive_sum_dd(n: u64, a: Dd, b: Dd) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += unit_exp(reduced_phase_dd(k, a, b).to_f64());
    }
    acc
}

/// `sum_{0 <= n < N} e(n b)`: the residual block once the cascade reaches a
/// rational tail (`a_l = 0`). Closed form via `e(x) - 1 = 2i sin(pi x) e(x/2)`.
fn geometric_sum(n: u64, b: f64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let x1 = frac0(b);
    if x1 == 0.0 {
        return Complex64::new(n as f64, 0.0);
    }
    let xn = Dd::from_u64(n).mul_f64(b).frac0().to_f64();
    let ratio = (std::f64::consts::PI * xn).sin() / (std::f64::consts::PI * x1).sin();
    unit_exp(0.5 * (xn - x1)) * ratio
}

/// Single renormalization step evaluated literally, with the shorter sum
/// delegated to direct summation.
pub fn renorm_once(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = Dd::from_f64(p.a());
    let b = Dd::from_f64(p.b());
    let an = a.mul(Dd::from_u64(n));
    let xi = an.frac().to_f64();
    let n1 = an.floor().to_f64() as u64;
    // descended parameters carried in double-double: their f64 rounding
    // alone would perturb the inner sum by ~N1^2 ulp
    let inv = a.recip();
    let k = inv.floor();
    let a1 = inv.sub(k);
    let b1 = k.scale(0.5).sub(b.div(a)).frac0();
    let inner = if a1.is_zero() {
        geometric_sum(n1, b1.to_f64())
    } else {
        naive_sum_dd(n1, a1, b1)
    };
    let b2_over_2a = b.mul(b).div(a.scale(2.0)).frac0().to_f64();
    let head_phase = reduced_phase(n, p.a(), p.b(), cfg)?;
    let f_head = cal_f(xi - p.b(), p.a(), cfg)?;
    let f_zero = cal_f(-p.b(), p.a(), cfg)?;
    Ok(c_of_a(p.a())
        * (unit_exp(b2_over_2a) * inner.conj() + head_phase.to_point() * f_head.value
            - f_zero.value))
}

/// Shared cascade for a fixed `(a, b)`: levels are built once and reused
/// across evaluations at different `N` (scans over an `N`-window share all
/// special-function values at `-b_l`).
pub struct Cascade {
    params: Params,
    cfg: PrecisionConfig,
    levels: Vec<Level>,
    /// Set when the continued fraction terminated while building level
    /// `terminated_at`: `b` value of the rational tail.
    terminated: Option<(usize, f64)>,
    max_depth: usize,
}

pub const DEFAULT_MAX_DEPTH: usize = 64;

impl Cascade {
    pub fn new(p: Params, cfg: &PrecisionConfig) -> Result<Cascade> {
        cfg.validate()?;
        let a = Dd::from_f64(p.a());
        let b = Dd::from_f64(p.b());
        let f_neg_b = cal_f(-p.b(), p.a(), cfg)?;
        let level0 = Level {
            a,
            b,
            theta: Dd::from_f64(-0.125),
            inv_sqrt_prod: 1.0 / p.a().sqrt(),
            f_neg_b: f_neg_b.value,
            f_neg_b_err: f_neg_b.err_estimate,
        };
        Ok(Cascade {
            params: p,
            cfg: *cfg,
            levels: vec![level0],
            terminated: None,
            max_depth: DEFAULT_MAX_DEPTH,
        })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// `(a_l, b_l)` of a built level.
    pub fn level_ab(&self, l: usize) -> (f64, f64) {
        (self.levels[l].a.to_f64(), self.levels[l].b.to_f64())
    }

    /// `theta_l` (turns, reduced).
    pub fn theta(&self, l: usize) -> f64 {
        self.levels[l].theta.frac0().to_f64()
    }

    /// `theta_{l+1}` for a level already built.
    pub fn theta_after(&self, l: usize) -> f64 {
        self.theta_next(l).to_f64()
    }

    /// Smallest `N` with `N_l(N) = k` (the ceil-chain inversion).
    pub fn realize_level_count(&mut self, l: usize, k: u64) -> Result<u64> {
        self.extend_to(l)?;
        if self.levels.len() <= l {
            return Err(Error::Domain(format!("cascade terminates before level {l}")));
        }
        realize_k(self, l, k)
    }

    /// `theta_{l+1} = theta_l + (-1)^l (1/8 + b_l^2/(2 a_l))`.
    fn theta_next(&self, l: usize) -> Dd {
        let lv = &self.levels[l];
        let inc = lv.b.mul(lv.b).div(lv.a.scale(2.0)).add_f64(0.125);
        let signed = if l % 2 == 0 { inc } else { inc.neg() };
        lv.theta.add(signed).frac0()
    }

    /// Build levels up to `l` and return how many exist (the continued
    /// fraction may terminate first).
    pub fn ensure_depth(&mut self, l: usize) -> Result<usize> {
        self.extend_to(l)?;
        Ok(self.levels.len())
    }

    /// Ensure levels `0..=l` exist (or a termination mark before `l`).
    fn extend_to(&mut self, l: usize) -> Result<()> {
        while self.levels.len() <= l {
            let cur = self.levels.len() - 1;
            if let Some((at, _)) = self.terminated {
                if at <= l {
                    return Ok(());
                }
            }
            if self.levels.len() > self.max_depth {
                return Err(Error::DepthLimit(self.max_depth));
            }
            let lv = &self.levels[cur];
            let inv = lv.a.recip();
            let k = inv.floor();
            let a_next = inv.sub(k);
            let b_next = k.scale(0.5).sub(lv.b.div(lv.a)).frac0();
            let theta = self.theta_next(cur);
            if a_next.to_f64() <= 0.0 {
                self.terminated = Some((cur + 1, b_next.to_f64()));
                return Ok(());
            }
            let a_f = a_next.to_f64();
            let b_f = b_next.to_f64();
            let f_neg_b = cal_f(-b_f, a_f, &self.cfg)?;
            let inv_sqrt_prod = self.levels[cur].inv_sqrt_prod / a_f.sqrt();
            self.levels.push(Level {
                a: a_next,
                b: b_next,
                theta,
                inv_sqrt_prod,
                f_neg_b: f_neg_b.value,
                f_neg_b_err: f_neg_b.err_estimate,
            });
        }
        Ok(())
    }

    /// The sequence `N_l` down from `N` and the depth `L(N)`; the second
    /// component is the termination level if the rational tail was reached
    /// with `N` terms still left.
    fn n_chain(&mut self, n: u64) -> Result<(Vec<u64>, Option<usize>)> {
        let mut ns = vec![n];
        let mut l = 0usize;
        loop {
            let n_l = ns[l];
            if n_l == 0 {
                break;
            }
            self.extend_to(l)?;
            if let Some((at, _)) = self.terminated {
                if at == l {
                    return Ok((ns, Some(l)));
                }
            }
            if l >= self.levels.len() {
                return Ok((ns, Some(l)));
            }
            let next = self.levels[l].a.mul(Dd::from_u64(n_l)).floor().to_f64();
            ns.push(next as u64);
            l += 1;
            if l > self.max_depth {
                return Err(Error::DepthLimit(self.max_depth));
            }
        }
        Ok((ns, None))
    }

    /// Depth `L(N)`: number of renormalizations until the sum is exhausted.
    pub fn depth_of(&mut self, n: u64) -> Result<usize> {
        let (ns, cut) = self.n_chain(n)?;
        if cut.is_some() {
            // rational tail: treat the cut level as final
            return Ok(ns.len() - 1);
        }
        Ok(ns.len().saturating_sub(2))
    }

    /// Full trace at `N`.
    pub fn trace(&mut self, n: u64) -> Result<RenormTrace> {
        let (ns, cut) = self.n_chain(n)?;
        let depth = if cut.is_some() { ns.len() - 1 } else { ns.len().saturating_sub(2) };
        let mut steps = Vec::new();
        let mut terms = Vec::new();
        let mut err = 0.0f64;
        let last_full = match cut {
            Some(at) => at.min(depth),
            None => depth,
        };
        for l in 0..=last_full {
            if cut == Some(l) {
                break;
            }
            let n_l = ns[l];
            let lv = &self.levels[l];
            let a_f = lv.a.to_f64();
            let b_f = lv.b.to_f64();
            let xi = lv.a.mul(Dd::from_u64(n_l)).frac();
            let xi_f = xi.to_f64();
            let parity = Parity::of(l);
            steps.push(RenormStep {
                l,
                a_l: a_f,
                b_l: b_f,
                n_l,
                xi_l: xi_f,
                theta_l: Phase(lv.theta.frac0().to_f64()),
                conj_parity: parity,
            });
            // dF_l = e(-a_l N_l^2/2 + N_l b_l) calF(xi_l - b_l, a_l) - calF(-b_l, a_l)
            let head_phase = reduced_phase_dd(n_l, lv.a, lv.b).to_f64();
            let f_head = cal_f(xi_f - b_f, a_f, &self.cfg)?;
            let df = unit_exp(head_phase) * f_head.value - lv.f_neg_b;
            let weight = unit_exp(lv.theta.frac0().to_f64()) * lv.inv_sqrt_prod;
            terms.push(weight * parity.apply(df));
            err += (f_head.err_estimate + lv.f_neg_b_err) * lv.inv_sqrt_prod;
        }
        let tail = match cut {
            Some(at) if ns[at] > 0 => {
                let b_tail = self.terminated.expect("cut implies termination").1;
                let geo = geometric_sum(ns[at], b_tail);
                let coeff_phase = {
                    // coefficient of S^{*l} in the unrolled cascade:
                    // e(theta_l + (-1)^l / 8) (a_0..a_{l-1})^{-1/2}
                    let theta = if at == 0 {
                        Dd::from_f64(-0.125)
                    } else {
                        self.theta_next(at - 1)
                    };
                    let sign = if at % 2 == 0 { 0.125 } else { -0.125 };
                    theta.add_f64(sign).frac0().to_f64()
                };
                let inv_sqrt = if at == 0 { 1.0 } else { self.levels[at - 1].inv_sqrt_prod };
                Some(unit_exp(coeff_phase) * inv_sqrt * Parity::of(at).apply(geo))
            }
            _ => None,
        };
        let value = terms.iter().sum::<Complex64>() + tail.unwrap_or_default();
        Ok(RenormTrace { steps, depth, terms, tail, value, err_bound: err })
    }

    /// Value only (shares all `N`-independent work across calls).
    pub fn eval(&mut self, n: u64) -> Result<Complex64> {
        Ok(self.trace(n)?.value)
    }
}

/// Full cascade of `S(N, a, b)`.
pub fn build_trace(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<RenormTrace> {
    Cascade::new(p, cfg)?.trace(n)
}

/// `S(N, a, b)` in `O(log N)` special-function evaluations.
pub fn renorm_sum(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(build_trace(n, p, cfg)?.value)
}

/// `L(N)` for the orbit of `a`.
pub fn depth_of(n: u64, p: Params, cfg: &PrecisionConfig) -> Result<usize> {
    Cascade::new(p, cfg)?.depth_of(n)
}

const N_SEARCH_CAP: u64 = 1 << 62;

/// `N^-(L) = min {N : L(N) = L}` and `N^+(L) = max {N : L(N) = L}` by binary
/// search over the monotone map `N -> L(N)`; `N^+` is `None` when it exceeds
/// the integer range probed.
pub fn n_bounds(l: usize, a: f64, cfg: &PrecisionConfig) -> Result<(u64, Option<u64>)> {
    if l == 0 {
        return Err(Error::Domain("n_bounds needs L >= 1".into()));
    }
    let p = Params::new(a, 0.0)?;
    let mut cascade = Cascade::new(p, cfg)?;
    let minus = first_with_depth(&mut cascade, l)?;
    let plus = match first_with_depth(&mut cascade, l + 1) {
        Ok(next_minus) => Some(next_minus - 1),
        Err(Error::Overflow(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((minus, plus))
}

fn first_with_depth(cascade: &mut Cascade, l: usize) -> Result<u64> {
    let mut hi = 1u64;
    while cascade.depth_of(hi)? < l {
        if hi >= N_SEARCH_CAP {
            return Err(Error::Overflow(format!("N^-({l}) exceeds {N_SEARCH_CAP}")));
        }
        hi = (hi << 1).min(N_SEARCH_CAP);
    }
    let mut lo = hi >> 1; // depth(lo) < l (or lo = 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cascade.depth_of(mid)? < l {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if cascade.depth_of(hi)? != l {
        return Err(Error::Domain(format!(
            "no N with L(N) = {l}: the cascade of a jumps past it"
        )));
    }
    Ok(hi)
}

/// All reachable values `xi_L(N) = k a_L < 1` with one realizing `N` each,
/// thinned to `budget` entries. The chain `x_l = ceil(x_{l+1} / a_l)` inverts
/// the monotone floor cascade exactly.
pub struct XiValues {
    pub entries: Vec<(u64, f64)>,
    pub k_max: u64,
    pub budget_exhausted: bool,
}

pub fn xi_values(l: usize, a: f64, budget: usize, cfg: &PrecisionConfig) -> Result<XiValues> {
    let p = Params::new(a, 0.0)?;
    let mut cascade = Cascade::new(p, cfg)?;
    cascade.extend_to(l)?;
    if cascade.levels.len() <= l {
        return Err(Error::Domain(format!("cascade of a terminates before level {l}")));
    }
    let a_l = cascade.levels[l].a;
    // largest k with k a_L < 1
    let k_max = {
        let r = a_l.recip();
        if r.to_f64() > N_SEARCH_CAP as f64 {
            return Err(Error::Overflow("1/a_L exceeds the index range".into()));
        }
        let f = r.floor().to_f64();
        let k = if r.sub(r.floor()).is_zero() { f - 1.0 } else { f };
        k as u64
    };
    let ks: Vec<u64> = if k_max as usize <= budget {
        (1..=k_max).collect()
    } else {
        let step = (k_max - 1) as f64 / (budget - 1) as f64;
        let mut v: Vec<u64> = (0..budget).map(|i| 1 + (i as f64 * step).round() as u64).collect();
        v.dedup();
        v
    };
    let mut entries = Vec::with_capacity(ks.len());
    for &k in &ks {
        let n = realize_k(&cascade, l, k)?;
        entries.push((n, a_l.mul_f64(k as f64).to_f64()));
    }
    Ok(XiValues { entries, k_max, budget_exhausted: (k_max as usize) > budget })
}

/// Smallest `N` with `N_l(N) = k`.
fn realize_k(cascade: &Cascade, l: usize, k: u64) -> Result<u64> {
    let mut x = Dd::from_u64(k);
    for j in (0..l).rev() {
        // smallest integer x_j with [a_j x_j] >= x_{j+1} is ceil(x_{j+1}/a_j)
        let q = x.div(cascade.levels[j].a);
        x = q.floor();
        if !q.sub(x).is_zero() {
            x = x.add_f64(1.0);
        }
        if x.to_f64() > N_SEARCH_CAP as f64 {
            return Err(Error::Overflow("xi realization exceeds integer range".into()));
        }
    }
    Ok(x.to_f64() as u64)
}
