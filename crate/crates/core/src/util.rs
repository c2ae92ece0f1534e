//! Compensated accumulation, deterministic parallel reductions and the
//! `e(t) = exp(2*pi*i*t)` helper shared by the sum evaluators.

use crate::Real;
use num_complex::Complex;
use rayon::prelude::*;

/// Kahan–Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug)]
pub struct Kahan<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for Kahan<T> {
    fn default() -> Self {
        Kahan { sum: T::zero(), comp: T::zero() }
    }
}

impl<T: Real> Kahan<T> {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated complex accumulator (independent real/imaginary channels).
#[derive(Clone, Copy, Debug)]
pub struct KahanComplex<T> {
    re: Kahan<T>,
    im: Kahan<T>,
}

impl<T: Real> Default for KahanComplex<T> {
    fn default() -> Self {
        KahanComplex { re: Kahan::new(), im: Kahan::new() }
    }
}

impl<T: Real> KahanComplex<T> {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// `e(x) = exp(2*pi*i*x)`.
#[inline]
pub fn e_of<T: Real>(x: T) -> Complex<T> {
    let phase = T::of(2.0) * T::PI() * x;
    Complex::new(phase.cos(), phase.sin())
}

/// Compensated sum of `f(i)` over `range`, evaluated in parallel chunks.
///
/// Chunk boundaries depend only on the range length, and per-chunk partial
/// sums are combined in index order, so the result is identical for every
/// thread count.
pub fn par_sum_complex<T, F>(n: usize, chunk: usize, f: F) -> Complex<T>
where
    T: Real,
    F: Fn(usize) -> Complex<T> + Sync,
{
    let chunk = chunk.max(1);
    let partials: Vec<Complex<T>> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(n);
            let mut acc = KahanComplex::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    let mut acc = KahanComplex::new();
    for p in partials {
        acc.add(p);
    }
    acc.value()
}

/// Real-valued counterpart of [`par_sum_complex`].
pub fn par_sum_real<T, F>(n: usize, chunk: usize, f: F) -> T
where
    T: Real,
    F: Fn(usize) -> T + Sync,
{
    let chunk = chunk.max(1);
    let partials: Vec<T> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(n);
            let mut acc = Kahan::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    let mut acc = Kahan::new();
    for p in partials {
        acc.add(p);
    }
    acc.value()
}

/// Format a float with 17 significant digits ('.' decimal separator).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_cancellation() {
        let mut k = Kahan::<f64>::new();
        k.add(1e16);
        for _ in 0..10 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 10.0);
    }

    #[test]
    fn par_sum_matches_serial_and_is_chunk_stable() {
        let f = |i: usize| Complex::new((i as f64).sin(), (i as f64).cos());
        let a = par_sum_complex(10_000, 64, f);
        let b = par_sum_complex(10_000, 64, f);
        assert_eq!(a, b);
        let mut acc = KahanComplex::new();
        for i in 0..10_000 {
            acc.add(f(i));
        }
        let s = acc.value();
        assert!((a - s).norm() < 1e-9);
    }

    #[test]
    fn e_of_unit_circle() {
        let z = e_of(0.25f64);
        assert!((z.re).abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
        // conjugate symmetry is exact in IEEE arithmetic
        let t = 0.3773;
        assert_eq!(e_of(-t), e_of(t).conj());
    }

    #[test]
    fn fmt_has_17_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        let s = fmt_f64(std::f64::consts::PI);
        assert!(s.starts_with("3.1415926535897931e0"), "{s}");
    }
}
