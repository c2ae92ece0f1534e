//! The smooth bump theta and its Fourier transform Theta.
//!
//! theta is the indicator of [-a, a] mollified by the k-fold convolution of
//! the uniform density on [-delta/k, delta/k]. This makes the three regions
//! exact by construction —
//!     theta(y) = 1 for |y| <= a - delta,
//!     0 < theta(y) < 1 in the transition band,
//!     theta(y) = 0 for |y| >= a + delta —
//! and gives the closed-form transform
//!     Theta(x) = 2a sinc(2 pi a x) sinc(2 pi delta x / k)^k,
//! which obeys the envelope min(2a, 1/(pi|x|), (1/(pi|x|)) (k/(2 pi |x| delta))^k).
//!
//! Transition-band values are tail probabilities of an Irwin–Hall sum. They
//! are evaluated through uniform B-spline bases (Cox–de Boor), an
//! all-positive recurrence, so band values keep full relative accuracy even
//! at 1e-300 scales; for k > 40 a Gaussian approximation takes over (the
//! Berry–Esseen constant for uniform summands bounds its error by 0.62/sqrt(k),
//! and the symmetry of the summands makes the observed error O(1/k)).

use crate::{CoreError, Real, Result};

/// Mollifier parameters: plateau half-width a - delta, support a + delta,
/// smoothness order k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams<T> {
    pub a: T,
    pub delta: T,
    pub k: u32,
}

impl<T: Real> KernelParams<T> {
    pub fn new(a: T, delta: T, k: u32) -> Result<KernelParams<T>> {
        if !(delta > T::zero() && delta < a / T::of(4.0)) {
            return Err(CoreError::Argument(format!(
                "kernel parameters need 0 < delta < a/4, got a={a}, delta={delta}"
            )));
        }
        if k == 0 {
            return Err(CoreError::Argument("kernel order k must be >= 1".into()));
        }
        Ok(KernelParams { a, delta, k })
    }

    pub fn plateau(&self) -> T {
        self.a - self.delta
    }

    pub fn support(&self) -> T {
        self.a + self.delta
    }
}

fn log_order<T: Real>(x: T, ceil: bool) -> u32 {
    // guard against ln(exp(n)) landing one ulp off an integer
    let guard = 1e-12;
    let l = x.to_f64_lossy().ln();
    let k = if ceil { (l - guard).ceil() } else { (l + guard).floor() };
    k.max(1.0) as u32
}

/// Narrow kernel: a = 9 eps / 10, delta = eps / 10, k = ceil(log X).
/// Its support radius is exactly eps.
pub fn make_kernel<T: Real>(epsilon: T, x: T) -> Result<KernelParams<T>> {
    if epsilon <= T::zero() {
        return Err(CoreError::Argument("epsilon must be positive".into()));
    }
    KernelParams::new(
        T::of(0.9) * epsilon,
        epsilon / T::of(10.0),
        log_order(x, true),
    )
}

/// Wide companion kernel: a = 5 eps / 4, delta = eps / 4, k = floor(log X).
/// Plateau radius exactly eps, support radius 3 eps / 2.
pub fn make_kernel_wide<T: Real>(epsilon: T, x: T) -> Result<KernelParams<T>> {
    if epsilon <= T::zero() {
        return Err(CoreError::Argument("epsilon must be positive".into()));
    }
    KernelParams::new(
        T::of(1.25) * epsilon,
        T::of(0.25) * epsilon,
        log_order(x, false),
    )
}

/// All order-m uniform B-splines that are nonzero at s, i.e. the values
/// M_m(s - i) for i = floor(s) - m + 1 ..= floor(s), returned together with
/// mu = floor(s). Cox–de Boor with integer knots: only positive operations.
fn bspline_basis<T: Real>(order: usize, s: T) -> (i64, Vec<T>) {
    let mu = s.to_f64_lossy().floor() as i64;
    let d = order - 1;
    let mut vals = vec![T::zero(); order];
    vals[0] = T::one();
    for j in 1..=d {
        let mut saved = T::zero();
        for r in 0..j {
            // knots are the integers: denominators are exactly j
            let right = T::of((mu + r as i64 + 1) as f64) - s;
            let left = s - T::of((mu + 1 + r as i64) as f64 - j as f64);
            let temp = vals[r] / T::of(j as f64);
            vals[r] = saved + right * temp;
            saved = left * temp;
        }
        vals[j] = saved;
    }
    // vals[r] now holds N_{mu - d + r, order}(s) = M_order(s - (mu - d + r))
    (mu, vals)
}

/// Upper-tail probability P(S > s) for S an Irwin–Hall sum of k uniforms,
/// as the positive partition-of-unity complement: sum over shifts i < 0 of
/// M_{k+1}(s - i).
fn irwin_hall_tail<T: Real>(k: u32, s: T) -> T {
    let order = k as usize + 1;
    if s <= T::zero() {
        return T::one();
    }
    if s >= T::of(k as f64) {
        return T::zero();
    }
    let (mu, vals) = bspline_basis::<T>(order, s);
    let d = order as i64 - 1;
    let mut acc = T::zero();
    for (r, &v) in vals.iter().enumerate() {
        let i = mu - d + r as i64;
        if i < 0 {
            acc += v;
        }
    }
    acc
}

/// Normal upper tail Q(z) = P(Z > z); rational approximation accurate to
/// about 7.5e-8, ample for the k > 40 regime whose own model error is
/// bounded by 0.62/sqrt(k).
fn normal_upper_tail(z: f64) -> f64 {
    let phi_upper = |z: f64| -> f64 {
        let t = 1.0 / (1.0 + 0.2316419 * z);
        let poly = t
            * (0.319381530
                + t * (-0.356563782 + t * (1.781477937 + t * (-1.821255978 + t * 1.330274429))));
        (-(z * z) / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt() * poly
    };
    if z >= 0.0 {
        phi_upper(z)
    } else {
        1.0 - phi_upper(-z)
    }
}

/// The Gaussian large-k branch is used beyond this order.
pub const IRWIN_HALL_MAX_K: u32 = 40;

/// theta(y): exactly 1 on the plateau, exactly 0 outside the support,
/// strictly inside (0, 1) on the transition band.
pub fn theta_eval<T: Real>(kp: &KernelParams<T>, y: T) -> T {
    let ay = y.abs();
    if ay <= kp.plateau() {
        return T::one();
    }
    if ay >= kp.support() {
        return T::zero();
    }
    // Band: theta(|y|) = P(W > |y| - a) for the mollifier sum W supported on
    // [-delta, delta]; in Irwin–Hall coordinates s = k/2 + k (|y|-a)/(2 delta).
    let k = kp.k;
    let kt = T::of(k as f64);
    let w = ay - kp.a; // in (-delta, delta)
    let s = kt * T::of(0.5) + kt * w / (T::of(2.0) * kp.delta);
    let v = if k <= IRWIN_HALL_MAX_K {
        irwin_hall_tail(k, s)
    } else {
        let z = (s.to_f64_lossy() - k as f64 / 2.0) / (k as f64 / 12.0).sqrt();
        T::of(normal_upper_tail(z))
    };
    // rounding guard only: the true value is strictly interior
    v.max(T::min_positive_value()).min(T::one() - T::epsilon())
}

/// sin(u)/u with a series below |u| = 1e-4 to dodge the removable
/// singularity.
fn sinc<T: Real>(u: T) -> T {
    if u.abs() < T::of(1e-4) {
        let u2 = u * u;
        T::one() - u2 / T::of(6.0) + u2 * u2 / T::of(120.0)
    } else {
        u.sin() / u
    }
}

/// Closed-form Fourier transform Theta(x); real-valued by symmetry.
pub fn theta_fourier<T: Real>(kp: &KernelParams<T>, x: T) -> T {
    let two_pi = T::of(2.0) * T::PI();
    let v = two_pi * kp.a * x;
    let w = two_pi * kp.delta * x / T::of(kp.k as f64);
    let mut acc = T::of(2.0) * kp.a * sinc(v);
    let s = sinc(w);
    // s^k without powi on the trait: exponentiation by squaring
    let mut base = s;
    let mut e = kp.k;
    let mut pw = T::one();
    while e > 0 {
        if e & 1 == 1 {
            pw = pw * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc = acc * pw;
    acc
}

/// The three-branch envelope min(2a, 1/(pi|x|), (1/(pi|x|)) (k/(2 pi |x| delta))^k),
/// evaluated overflow-safely (the third branch goes through logs).
pub fn fourier_envelope<T: Real>(kp: &KernelParams<T>, x: T) -> T {
    let b1 = T::of(2.0) * kp.a;
    let ax = x.abs();
    if ax == T::zero() {
        return b1;
    }
    let pi = T::PI();
    let b2 = (pi * ax).recip();
    let mut m = if b1 < b2 { b1 } else { b2 };
    // log of the third branch
    let k = T::of(kp.k as f64);
    let log_b3 = -(pi * ax).ln() + k * (k.ln() - (T::of(2.0) * pi * ax * kp.delta).ln());
    if log_b3 < m.ln() {
        m = log_b3.exp();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_legendre;

    #[test]
    fn make_kernel_parameter_arithmetic() {
        let kp = make_kernel(0.1f64, 10f64.exp()).unwrap();
        assert!((kp.a - 0.09).abs() < 1e-15);
        assert!((kp.delta - 0.01).abs() < 1e-15);
        assert_eq!(kp.k, 10);
        let kp1 = make_kernel(1.0f64, std::f64::consts::E).unwrap();
        assert_eq!(kp1.k, 1);
        // support radius is exactly eps for the narrow kernel
        assert!((kp.support() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn wide_kernel_radii() {
        let kp = make_kernel_wide(0.2f64, 1e6).unwrap();
        assert!((kp.plateau() - 0.2).abs() < 1e-15);
        assert!((kp.support() - 0.3).abs() < 1e-15);
        assert_eq!(kp.k, 13); // floor(ln 1e6) = floor(13.8)
    }

    #[test]
    fn epsilon_formula_at_1e6() {
        // eps(X) = (log log X)^6 / (log X)^theta0 evaluated by hand
        let eps = crate::exponent::epsilon_of(1e6);
        let lx = (1e6f64).ln();
        let by_hand = lx.ln().powi(6) / lx.powf(crate::exponent::theta0().value);
        assert_eq!(eps, by_hand);
        let kp = make_kernel(eps, 1e6).unwrap();
        assert_eq!(kp.k, 14); // ceil(13.8)
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(KernelParams::new(1.0f64, 0.3, 5).is_err()); // delta >= a/4
        assert!(KernelParams::new(1.0f64, 0.0, 5).is_err());
        assert!(make_kernel(-1.0f64, 100.0).is_err());
    }

    #[test]
    fn region_values_are_exact() {
        let kp = make_kernel(0.1f64, 1e6).unwrap();
        for i in 0..1000 {
            let frac = i as f64 / 1000.0;
            let y_plateau = frac * kp.plateau();
            assert_eq!(theta_eval(&kp, y_plateau), 1.0);
            assert_eq!(theta_eval(&kp, -y_plateau), 1.0);
            let y_out = kp.support() * (1.0 + frac);
            assert_eq!(theta_eval(&kp, y_out), 0.0);
            let y_band = kp.plateau() + 1e-6 * kp.delta + frac * (2.0 * kp.delta) * 0.999_998;
            let v = theta_eval(&kp, y_band);
            assert!(v > 0.0 && v < 1.0, "band value {v} at {y_band}");
            assert_eq!(theta_eval(&kp, -y_band), v);
        }
        // boundary points belong to the closed regions
        assert_eq!(theta_eval(&kp, kp.plateau()), 1.0);
        assert_eq!(theta_eval(&kp, kp.support()), 0.0);
    }

    #[test]
    fn band_midpoint_is_one_half() {
        for k in [1u32, 2, 3, 7, 20, 40, 200] {
            let kp = KernelParams::new(0.9f64, 0.1, k).unwrap();
            let v = theta_eval(&kp, kp.a);
            assert!((v - 0.5).abs() < 1e-7, "k={k}: theta(a) = {v}");
        }
    }

    /// Irwin–Hall CDF by the alternating closed form (safe for small k).
    fn ih_cdf_alternating(k: u32, s: f64) -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0f64;
        for j in 0..=(s.floor() as u32).min(k) {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * (s - j as f64).powi(k as i32);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        let kfact: f64 = (1..=k).map(|i| i as f64).product();
        acc / kfact
    }

    #[test]
    fn irwin_hall_tail_matches_alternating_form_small_k() {
        for k in 1..=10u32 {
            for i in 1..40 {
                let s = k as f64 * i as f64 / 40.0;
                let tail = irwin_hall_tail(k, s);
                let oracle = 1.0 - ih_cdf_alternating(k, s);
                assert!(
                    (tail - oracle).abs() < 1e-10,
                    "k={k} s={s}: {tail} vs {oracle}"
                );
            }
        }
    }

    /// Discrete convolution oracle: k-fold convolution of the box density on
    /// a fine grid, then a tail sum.
    fn convolution_tail_oracle(k: u32, delta: f64, w: f64, n: usize) -> f64 {
        // density of one uniform on [-delta/k, delta/k] sampled on [-delta, delta]
        let h = 2.0 * delta / n as f64;
        let half_box = delta / k as f64;
        let idx = |x: f64| ((x + delta) / h).round() as i64;
        let mut dens = vec![0.0f64; n + 1];
        for (i, d) in dens.iter_mut().enumerate() {
            let x = -delta + i as f64 * h;
            if x.abs() <= half_box {
                *d = k as f64 / (2.0 * delta);
            }
        }
        let mut acc = dens.clone();
        for _ in 1..k {
            let mut next = vec![0.0f64; n + 1];
            for (i, nv) in next.iter_mut().enumerate() {
                let mut s = 0.0;
                for (j, &dv) in dens.iter().enumerate() {
                    let diff = i as i64 - (j as i64 - idx(0.0));
                    if (0..=n as i64).contains(&diff) {
                        s += acc[diff as usize] * dv;
                    }
                }
                *nv = s * h;
            }
            acc = next;
        }
        // tail mass above w
        let start = (((w + delta) / h).ceil() as usize).min(n);
        let mut tail = 0.0;
        for (i, &v) in acc.iter().enumerate().skip(start) {
            let wgt = if i == start || i == n { 0.5 } else { 1.0 };
            tail += wgt * v * h;
        }
        tail
    }

    #[test]
    fn band_value_matches_convolution_oracle() {
        // theta(a) + a grid of band points, k = 2 and 3
        for k in [2u32, 3] {
            let kp = KernelParams::new(0.9f64, 0.1, k).unwrap();
            for frac in [-0.6, -0.2, 0.0, 0.3, 0.7] {
                let y = kp.a + frac * kp.delta;
                let got = theta_eval(&kp, y);
                let want = convolution_tail_oracle(k, kp.delta, y - kp.a, 4000);
                assert!((got - want).abs() < 2e-3, "k={k} frac={frac}: {got} vs {want}");
            }
        }
    }

    /// Numeric Fourier transform of theta: exact integral over the plateau
    /// plus Gauss–Legendre over each polynomial piece of the band.
    fn numeric_fourier(kp: &KernelParams<f64>, x: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let plateau = kp.plateau();
        let exact = if x == 0.0 {
            2.0 * plateau
        } else {
            (two_pi * x * plateau).sin() / (std::f64::consts::PI * x)
        };
        // band knots: s integer, y = a + (2 delta / k)(s - k/2)
        let (nodes, weights) = gauss_legendre(24);
        let mut band = 0.0;
        let k = kp.k;
        for j in 0..k {
            let y0 = kp.a + (2.0 * kp.delta / k as f64) * (j as f64 - k as f64 / 2.0);
            let y1 = kp.a + (2.0 * kp.delta / k as f64) * ((j + 1) as f64 - k as f64 / 2.0);
            let m = 0.5 * (y0 + y1);
            let h = 0.5 * (y1 - y0);
            for (&xi, &wi) in nodes.iter().zip(&weights) {
                let y = m + h * xi;
                band += wi * h * theta_eval(kp, y) * (two_pi * x * y).cos();
            }
        }
        exact + 2.0 * band
    }

    #[test]
    fn closed_form_matches_numeric_fourier() {
        for k in [2u32, 5, 14, 20] {
            let kp = KernelParams::new(0.09f64, 0.01, k).unwrap();
            for i in 0..100 {
                // frequencies below the first sinc zero keep |Theta| away from 0
                let x = (0.01 + 0.44 * i as f64 / 99.0) / kp.a;
                let closed = theta_fourier(&kp, x);
                let numeric = numeric_fourier(&kp, x);
                assert!(
                    (closed - numeric).abs() <= 1e-6 * closed.abs(),
                    "k={k} x={x}: closed {closed} vs numeric {numeric}"
                );
            }
        }
    }

    #[test]
    fn fourier_at_zero_is_twice_a() {
        let kp = KernelParams::new(0.09f64, 0.01, 14).unwrap();
        assert_eq!(theta_fourier(&kp, 0.0), 2.0 * kp.a);
        // and the mass of theta equals the same value
        let numeric = numeric_fourier(&kp, 0.0);
        assert!((numeric - 2.0 * kp.a).abs() < 1e-12);
    }

    #[test]
    fn envelope_holds_on_log_spaced_grid() {
        let kp = make_kernel(0.1f64, 1e6).unwrap();
        for i in 0..10_000 {
            // 10^(-3) .. 10^(5), log-spaced
            let x = 10f64.powf(-3.0 + 8.0 * i as f64 / 9_999.0);
            let th = theta_fourier(&kp, x).abs();
            let env = fourier_envelope(&kp, x);
            assert!(
                th <= env * (1.0 + 1e-12),
                "x={x}: |Theta| = {th} exceeds envelope {env}"
            );
        }
        assert_eq!(fourier_envelope(&kp, 0.0), 2.0 * kp.a);
    }

    #[test]
    fn envelope_branch_bound_at_first_crossover() {
        // |Theta(1/(2a))| <= 1/(pi x) = 2a/pi
        let kp = KernelParams::new(0.09f64, 0.01, 7).unwrap();
        let x = 1.0 / (2.0 * kp.a);
        assert!(theta_fourier(&kp, x).abs() <= 2.0 * kp.a / std::f64::consts::PI);
    }

    #[test]
    fn sandwich_between_indicators() {
        let kp = make_kernel(0.25f64, 1e4).unwrap();
        for i in 0..2000 {
            let y = -0.4 + 0.8 * i as f64 / 1999.0;
            let th = theta_eval(&kp, y);
            let inner = if y.abs() <= kp.plateau() { 1.0 } else { 0.0 };
            let outer = if y.abs() <= kp.support() { 1.0 } else { 0.0 };
            assert!(inner <= th && th <= outer, "y={y}");
        }
    }

    #[test]
    fn generic_f32_surface() {
        let kp = make_kernel(0.1f32, 1e6f32).unwrap();
        assert_eq!(theta_eval(&kp, 0.0f32), 1.0);
        let v = theta_eval(&kp, kp.a);
        assert!((v - 0.5).abs() < 1e-3);
    }
}
