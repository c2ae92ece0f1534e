//! Double-double arithmetic (~106 bits of significand) used for the
//! extended-precision residual rechecks of accepted solutions.
//!
//! The representation is an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
//! Products use two-product via `f64::mul_add` (fused single rounding),
//! sums use the Knuth two-sum; `exp`/`ln` follow the standard
//! reduce-then-Taylor / Newton-refinement recipes.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// ln 2 split across two doubles.
    const LN2: Dd = Dd { hi: 6.931471805599453e-1, lo: 2.3190468138462996e-17 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn from_u64(n: u64) -> Dd {
        // u64 may not be exactly representable in one double
        let hi = n as f64;
        let lo = n.wrapping_sub(hi as u64) as i64 as f64;
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// exp(self) by argument reduction against ln 2 and a Taylor tail.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2 * Dd::from_f64(k);
        // |r| <= ln2/2; Taylor with 24 terms reaches ~1e-35
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for n in 1..=24 {
            term = term * r / Dd::from_f64(n as f64);
            sum = sum + term;
        }
        let scale = f64::powi(2.0, k as i32);
        Dd { hi: sum.hi * scale, lo: sum.lo * scale }
    }

    /// Natural log: f64 seed plus one Newton step in double-double.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let y0 = Dd::from_f64(self.hi.ln());
        // y1 = y0 + x*exp(-y0) - 1
        y0 + self * (-y0).exp() - Dd::ONE
    }

    /// self^c for a plain f64 exponent; self must be positive.
    pub fn powf(self, c: f64) -> Dd {
        (self.ln() * Dd::from_f64(c)).exp()
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r2 = r - rhs * Dd::from_f64(q2);
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// |sum_i p_i^c - n| evaluated entirely in double-double.
pub fn residual_dd(primes: &[u64], c: f64, n: f64) -> f64 {
    let mut acc = Dd::ZERO;
    for &p in primes {
        acc = acc + Dd::from_u64(p).powf(c);
    }
    (acc - Dd::from_f64(n)).abs().to_f64()
}
