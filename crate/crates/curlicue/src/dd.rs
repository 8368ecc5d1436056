//! Double-double arithmetic: unevaluated sums of two `f64`s giving ~106
//! mantissa bits.
//!
//! Phases of the form `a*n^2/2 + n*b` overflow the 53-bit mantissa long
//! before `n` reaches the sizes we sum to, so every mod-1 reduction on the
//! hot paths runs through this type. Only the handful of operations the
//! library needs are implemented.

/// Error-free sum: returns `(s, e)` with `s = fl(a+b)` and `a+b = s+e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like [`two_sum`] but requires `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Dekker split of a 53-bit float into two 26-bit halves.
#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Error-free product: `(p, e)` with `p = fl(a*b)` and `a*b = p+e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    (p, e)
}

/// A double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion; splits integers wider than 53 bits in two.
    pub fn from_u64(n: u64) -> Dd {
        let hi = (n >> 32) as f64 * 4294967296.0;
        let lo = (n & 0xffff_ffff) as f64;
        Dd::new(hi, lo)
    }

    pub fn from_i64(n: i64) -> Dd {
        if n < 0 {
            Dd::from_u64(n.unsigned_abs()).neg()
        } else {
            Dd::from_u64(n as u64)
        }
    }

    /// Exact product of two `f64`s.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, other: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, other);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, other);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * other);
        Dd { hi, lo }
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn scale(self, pow2: f64) -> Dd {
        Dd { hi: self.hi * pow2, lo: self.lo * pow2 }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e + q3)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// Largest double-double integer `<= self`.
    pub fn floor(self) -> Dd {
        let f = self.hi.floor();
        if f == self.hi {
            let (hi, lo) = quick_two_sum(f, self.lo.floor());
            Dd { hi, lo }
        } else {
            Dd { hi: f, lo: 0.0 }
        }
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(self) -> Dd {
        let mut r = self.sub(self.floor());
        // rounding can leave r marginally outside [0,1)
        if r.hi < 0.0 {
            r = r.add_f64(1.0);
        } else if r.hi >= 1.0 {
            r = r.add_f64(-1.0);
            if r.hi < 0.0 {
                r = Dd::ZERO;
            }
        }
        r
    }

    /// Signed fractional part in `(-1/2, 1/2]`.
    pub fn frac0(self) -> Dd {
        let r = self.frac();
        if r.gt_f64(0.5) {
            r.add_f64(-1.0)
        } else {
            r
        }
    }

    #[inline]
    pub fn gt_f64(self, x: f64) -> bool {
        self.hi > x || (self.hi == x && self.lo > 0.0)
    }

    #[inline]
    pub fn lt(self, other: Dd) -> bool {
        self.hi < other.hi || (self.hi == other.hi && self.lo < other.lo)
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn product_is_exact_on_integers() {
        let x = Dd::from_prod(94906265.0, 94906267.0); // straddles 2^53
        assert_eq!(x.hi + x.lo, 94906265.0 * 94906267.0);
        // exact check against i128
        let exact = 94906265i128 * 94906267i128;
        assert_eq!(x.hi as i128 + x.lo as i128, exact);
    }

    #[test]
    fn from_u64_is_exact() {
        let n = (1u64 << 60) + 12345;
        let d = Dd::from_u64(n);
        assert_eq!(d.hi as i128 + d.lo as i128, n as i128);
    }

    #[test]
    fn frac0_boundary_is_plus_half() {
        let d = Dd::from_f64(-0.5).frac0();
        assert_eq!(d.to_f64(), 0.5);
        let d = Dd::from_f64(2.5).frac0();
        assert_eq!(d.to_f64(), 0.5);
    }

    #[test]
    fn division_round_trip() {
        let a = Dd::from_f64(0.1).add_f64(1e-20);
        let b = Dd::from_f64(0.7);
        let q = a.div(b);
        let back = q.mul(b);
        assert!((back.sub(a)).to_f64().abs() < 1e-30);
    }

    proptest! {
        #[test]
        fn add_matches_ints(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            let s = Dd::from_i64(a).add(Dd::from_i64(b));
            prop_assert_eq!(s.to_f64(), (a + b) as f64);
        }

        // dyadic rationals: dd ops reproduce exact rational arithmetic
        #[test]
        fn mul_frac_matches_rationals(p in 1u64..(1 << 20), n in 1u64..1_000_000u64) {
            let denom: u64 = 1 << 20;
            let a = p as f64 / denom as f64; // exact dyadic
            let prod = Dd::from_prod(a, n as f64); // a*n
            let exact_num = (p as u128) * (n as u128);
            let frac_exact = (exact_num % denom as u128) as f64 / denom as f64;
            let f = prod.frac().to_f64();
            prop_assert!((f - frac_exact).abs() < 1e-25);
        }

        #[test]
        fn floor_is_floor(x in -1e12f64..1e12, e in -1e-3f64..1e-3) {
            let d = Dd::new(x, e);
            let f = d.floor();
            let r = d.sub(f);
            prop_assert!(r.hi >= -1e-30);
            prop_assert!(r.hi < 1.0 + 1e-9);
            prop_assert_eq!(f.hi.fract(), 0.0);
        }
    }
}
