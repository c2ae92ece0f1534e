//! The exponential sums S(t), S_{l,d;J}(t), A(t), K(t) and the integral
//! I(t), with their second-moment integrals and the S-versus-I gap at small
//! frequencies.
//!
//! Conventions: `m ~ M` means m in (M/2, M]; e(t) = exp(2 pi i t); all prime
//! sums carry log p weights and use compensated accumulation.

use crate::arith::{chi4, euler_phi, Factorizer, PrimeTable};
use crate::exponent::ExponentPair;
use crate::quad::{osc_power_integral, refine_log_trapezoid};
use crate::util::{e_of, par_sum_complex, KahanComplex};
use crate::{CoreError, Real, Result};
use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Half-open interval (lo, hi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Query for S_{l,d;J}(t) = sum over p in J, p = l (mod d) of e(t p^c) log p.
#[derive(Clone, Copy, Debug)]
pub struct ExpSumQuery {
    pub c: f64,
    pub t: f64,
    pub x: f64,
    pub j: Interval,
    pub l: u64,
    pub d: u64,
}

impl ExpSumQuery {
    pub fn new(c: f64, t: f64, x: f64, j: Interval, l: u64, d: u64) -> Result<ExpSumQuery> {
        if !(1.0 < c && c < 3.0 && c != 2.0) {
            return Err(CoreError::Argument(format!("c = {c} outside (1,3) \\ {{2}}")));
        }
        if d == 0 {
            return Err(CoreError::Argument("modulus d must be >= 1".into()));
        }
        if num_integer::gcd(l % d, d) != 1 && d > 1 {
            return Err(CoreError::Argument(format!("residue {l} not coprime to {d}")));
        }
        if j.lo < x / 2.0 - 1e-9 || j.hi > x + 1e-9 {
            return Err(CoreError::Argument(format!(
                "J = ({}, {}] must sit inside (X/2, X] = ({}, {x}]",
                j.lo,
                j.hi,
                x / 2.0
            )));
        }
        Ok(ExpSumQuery { c, t, x, j, l, d })
    }

    /// The full sum S(t): J = (X/2, X], no residue condition.
    pub fn full(c: f64, t: f64, x: f64) -> Result<ExpSumQuery> {
        ExpSumQuery::new(c, t, x, Interval::new(x / 2.0, x), 1, 1)
    }
}

/// Delta = X^(1/4 - c), the small-frequency cut.
pub fn delta_cut(x: f64, c: f64) -> f64 {
    x.powf(0.25 - c)
}

/// H = log^2 X / eps, the large-frequency cut.
pub fn h_cut(x: f64, eps: f64) -> f64 {
    x.ln().powi(2) / eps
}

/// D = sqrt(X) / (log X)^A, the divisor-range split point.
pub fn d_split(x: f64, a: f64) -> f64 {
    x.sqrt() / x.ln().powf(a)
}

/// S_{l,d;J}(t); the table must cover J.
pub fn eval_s<T: Real>(table: &PrimeTable, q: &ExpSumQuery) -> Result<Complex<T>> {
    let lo = q.j.lo.floor() as u64;
    let hi = q.j.hi.floor() as u64;
    if !table.covers(lo, hi) {
        return Err(CoreError::State(format!(
            "prime table ({}, {}] does not cover J = ({}, {}]",
            table.lo, table.hi, q.j.lo, q.j.hi
        )));
    }
    let primes = table.in_range(lo, hi);
    let (c, t, l, d) = (q.c, q.t, q.l % q.d, q.d);
    let jlo = q.j.lo;
    let jhi = q.j.hi;
    Ok(par_sum_complex(primes.len(), 8192, move |i| {
        let p = primes[i];
        let pf = p as f64;
        if p % d != l || pf <= jlo || pf > jhi {
            return Complex::new(T::zero(), T::zero());
        }
        let phase = T::of(t) * T::of(pf.powf(c));
        e_of(phase) * T::of(pf.ln())
    }))
}

/// A(t) = sum over integers n ~ X of e(t n^c).
pub fn eval_a<T: Real>(x: f64, c: f64, t: f64) -> Result<Complex<T>> {
    if x < 4.0 {
        return Err(CoreError::Argument("A(t) needs X >= 4".into()));
    }
    let lo = (x / 2.0).floor() as u64;
    let hi = x.floor() as u64;
    let n0 = lo + 1;
    Ok(par_sum_complex((hi - lo) as usize, 8192, move |i| {
        let n = (n0 + i as u64) as f64;
        if n <= x / 2.0 || n > x {
            return Complex::new(T::zero(), T::zero());
        }
        e_of(T::of(t) * T::of(n.powf(c)))
    }))
}

/// I_J(t) = int_J e(t y^c) dy by oscillation-aware quadrature.
pub fn eval_i<T: Real>(c: f64, t: f64, j: Interval) -> Result<Complex<T>> {
    osc_power_integral(c, t, j.lo, j.hi)
}

/// E(y, t, d, a) = sum_{mu y < n <= y, n = a (d)} Lambda(n) e(t n^c)
///               - (1/phi(d)) int_{mu y}^{y} e(t x^c) dx.
pub fn eval_e<T: Real>(
    c: f64,
    t: f64,
    y: f64,
    mu: f64,
    d: u64,
    a: u64,
    lambda: &[f64],
    fz: &Factorizer,
) -> Result<Complex<T>> {
    if !(0.0 < mu && mu < 1.0) {
        return Err(CoreError::Argument("need 0 < mu < 1".into()));
    }
    if d == 0 || num_integer::gcd(a % d, d) != 1 && d > 1 {
        return Err(CoreError::Argument(format!("(a, d) = ({a}, {d}) not admissible")));
    }
    if (lambda.len() as u64) < y.floor() as u64 + 1 {
        return Err(CoreError::State("Lambda table does not cover (mu y, y]".into()));
    }
    let lo = mu * y;
    let mut n = lo.floor() as u64 + 1;
    let r = n % d;
    let am = a % d;
    if r != am {
        n += (am + d - r) % d;
    }
    let mut acc = KahanComplex::<T>::new();
    while (n as f64) <= y {
        if (n as f64) > lo {
            let w = lambda[n as usize];
            if w != 0.0 {
                acc.add(e_of(T::of(t) * T::of((n as f64).powf(c))) * T::of(w));
            }
        }
        n += d;
    }
    let integral: Complex<T> = osc_power_integral(c, t, lo, y)?;
    let phi = euler_phi(d, fz)? as f64;
    Ok(acc.value() - integral / T::of(phi))
}

/// K(t): the chi_4-twisted combination of residue-class sums over the
/// shrinking intervals J_m = (max{1 + m X / D, X/2}, X], m even, m < D.
pub fn eval_k<T: Real>(
    table: &PrimeTable,
    x: f64,
    c: f64,
    t: f64,
    d_cap: f64,
) -> Result<Complex<T>> {
    let mut acc = KahanComplex::<T>::new();
    let mut m = 2u64;
    while (m as f64) < d_cap {
        let j_lo = (1.0 + m as f64 * x / d_cap).max(x / 2.0);
        if j_lo < x {
            let j = Interval::new(j_lo, x);
            for (jsign, chi) in [(1i64, chi4(1)), (-1i64, chi4(3))] {
                let l_signed = 1 + jsign * m as i64;
                let modulus = 4 * m;
                let l = l_signed.rem_euclid(modulus as i64) as u64;
                let q = ExpSumQuery::new(c, t, x, j, l, modulus)?;
                let v: Complex<T> = eval_s(table, &q)?;
                acc.add(v * T::of(chi as f64));
            }
        }
        m += 2;
    }
    Ok(acc.value())
}

/// Prime sum with per-prime weights precomputed; the fast path for moment
/// integrals that evaluate S(t) on thousands of grid points.
pub struct PreparedPrimeSum {
    log_p: Vec<f64>,
    p_pow_c: Vec<f64>,
}

impl PreparedPrimeSum {
    pub fn new(table: &PrimeTable, j: Interval, c: f64) -> Result<PreparedPrimeSum> {
        let lo = j.lo.floor() as u64;
        let hi = j.hi.floor() as u64;
        if !table.covers(lo, hi) {
            return Err(CoreError::State("prime table does not cover the interval".into()));
        }
        let primes: Vec<u64> = table
            .in_range(lo, hi)
            .iter()
            .copied()
            .filter(|&p| (p as f64) > j.lo && (p as f64) <= j.hi)
            .collect();
        Ok(PreparedPrimeSum {
            log_p: primes.iter().map(|&p| (p as f64).ln()).collect(),
            p_pow_c: primes.iter().map(|&p| (p as f64).powf(c)).collect(),
        })
    }

    pub fn eval(&self, t: f64) -> Complex<f64> {
        let log_p = &self.log_p;
        let p_pow_c = &self.p_pow_c;
        par_sum_complex(log_p.len(), 8192, move |i| {
            e_of(t * p_pow_c[i]) * log_p[i]
        })
    }

    /// sum of log p over the prepared primes (the trivial bound for |S|).
    pub fn log_weight_sum(&self) -> f64 {
        let mut acc = crate::util::Kahan::<f64>::new();
        for &w in &self.log_p {
            acc.add(w);
        }
        acc.value()
    }

    pub fn len(&self) -> usize {
        self.log_p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_p.is_empty()
    }
}

/// Moment integrals of S and I with their majorants.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    #[serde(rename = "X")]
    pub x: f64,
    pub c: f64,
    pub a_exp: f64,
    pub delta: f64,
    pub integral_1: f64,
    pub majorant_1: f64,
    pub ratio_1: f64,
    pub integral_2: f64,
    pub majorant_2: f64,
    pub ratio_2: f64,
    pub integral_3: f64,
    pub majorant_3: f64,
    pub ratio_3: f64,
    pub converged: [bool; 3],
    pub grid_points: [usize; 3],
}

/// Second moments on |t| <= Delta for S and I, and on one unit interval for
/// S, by the trapezoid-on-log-grid protocol refined until a 1% change.
pub fn moment_report(table: &PrimeTable, x: f64, c: f64, a_exp: f64) -> Result<MomentReport> {
    if x > 1e6 + 0.5 {
        return Err(CoreError::Argument("moment_report is a desk-scale tool (X <= 1e6)".into()));
    }
    let delta = delta_cut(x, c);
    let prep = PreparedPrimeSum::new(table, Interval::new(x / 2.0, x), c)?;
    let s2 = |t: f64| prep.eval(t).norm_sqr();
    let i2 = |t: f64| {
        osc_power_integral::<f64>(c, t, x / 2.0, x)
            .map(|v| v.norm_sqr())
            .unwrap_or(f64::NAN)
    };
    // |S(-t)| = |S(t)|: integrals over [-Delta, Delta] are twice [0, Delta]
    let o1 = refine_log_trapezoid(s2, delta, 0.01, 64, 1 << 18);
    let o2 = refine_log_trapezoid(i2, delta, 0.01, 64, 1 << 14);
    let o3 = refine_log_trapezoid(s2, 1.0, 0.01, 64, 1 << 18);
    let lx = x.ln();
    let m1 = x.powf(2.0 - c) * lx.powi(3);
    let m2 = x.powf(2.0 - c) * lx;
    let m3 = x * lx.powi(3);
    let (i1v, i2v, i3v) = (2.0 * o1.value, 2.0 * o2.value, o3.value);
    Ok(MomentReport {
        x,
        c,
        a_exp,
        delta,
        integral_1: i1v,
        majorant_1: m1,
        ratio_1: i1v / m1,
        integral_2: i2v,
        majorant_2: m2,
        ratio_2: i2v / m2,
        integral_3: i3v,
        majorant_3: m3,
        ratio_3: i3v / m3,
        converged: [o1.converged, o2.converged, o3.converged],
        grid_points: [o1.points, o2.points, o3.points],
    })
}

/// |S(t) - I(t)| at a small frequency, with normalizations.
#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub s_re: f64,
    pub s_im: f64,
    pub i_re: f64,
    pub i_im: f64,
    pub gap: f64,
    pub gap_over_x: f64,
    pub gap_over_i: f64,
}

/// The S-versus-I comparison, valid on |t| <= Delta.
pub fn prime_sum_integral_gap(table: &PrimeTable, x: f64, c: f64, t: f64) -> Result<GapReport> {
    if t.abs() > delta_cut(x, c) * (1.0 + 1e-12) {
        return Err(CoreError::Argument(format!(
            "|t| = {} exceeds Delta = {}",
            t.abs(),
            delta_cut(x, c)
        )));
    }
    let s: Complex<f64> = eval_s(table, &ExpSumQuery::full(c, t, x)?)?;
    let i: Complex<f64> = eval_i(c, t, Interval::new(x / 2.0, x))?;
    let gap = (s - i).norm();
    Ok(GapReport {
        s_re: s.re,
        s_im: s.im,
        i_re: i.re,
        i_im: i.im,
        gap,
        gap_over_x: gap / x,
        gap_over_i: gap / i.norm(),
    })
}

/// Single-sum van der Corput bound: Y^kappa X^lambda + Y^(-1) for an
/// exponent pair (kappa, lambda).
pub fn vdc_bound(y: f64, x: f64, pair: &ExponentPair) -> f64 {
    let kappa = pair.kappa.to_f64().expect("finite");
    let lambda = pair.lambda.to_f64().expect("finite");
    y.powf(kappa) * x.powf(lambda) + 1.0 / y
}

/// Envelope for |A(t)|: min((|t| X^(c-1))^(1/2) X^(1/2) + X^(1-c)/|t|, X).
pub fn a_envelope(x: f64, c: f64, t: f64) -> f64 {
    if t == 0.0 {
        return x;
    }
    let ta = t.abs();
    ((ta * x.powf(c - 1.0)).sqrt() * x.sqrt() + x.powf(1.0 - c) / ta).min(x)
}

/// Shifted-sum majorant for |sum a(n)|^2: with N terms and integer Q >= 1,
///   (1 + N/Q) * sum_{|q| <= Q} (1 - |q|/Q) sum_n a(n+q) conj(a(n)).
pub fn shifted_sum_majorant(a: &[Complex<f64>], q_shift: usize) -> f64 {
    let n = a.len();
    let q_shift = q_shift.max(1);
    let mut total = 0.0f64;
    // q = 0 term
    let mut acc0 = 0.0f64;
    for z in a {
        acc0 += z.norm_sqr();
    }
    total += acc0;
    for q in 1..=q_shift.min(n) {
        let weight = 1.0 - q as f64 / q_shift as f64;
        if weight == 0.0 {
            continue;
        }
        let mut acc = Complex::new(0.0f64, 0.0);
        for i in 0..n - q {
            acc += a[i + q] * a[i].conj();
        }
        total += 2.0 * weight * acc.re;
    }
    (1.0 + n as f64 / q_shift as f64) * total
}

/// One row of the deviation table: a modulus and the worst residue class.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationRow {
    pub d: u64,
    pub max_abs_e: f64,
    pub worst_a: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeviationReport {
    #[serde(rename = "X")]
    pub x: f64,
    pub c: f64,
    pub t: f64,
    pub a_exp: f64,
    /// sqrt(X) / (log X)^(A+5): at desk scale this is usually < 1, which the
    /// report records rather than hides.
    pub d_cap_formula: f64,
    pub d_max_used: u64,
    pub rows: Vec<DeviationRow>,
    pub sum_of_max: f64,
}

/// Deviation table: for each modulus d up to the cap, the largest |E(X,t,d,a)|
/// over residues a coprime to d (y = X slice, mu fixed).
#[allow(clippy::too_many_arguments)]
pub fn deviation_table(
    x: f64,
    c: f64,
    t: f64,
    mu: f64,
    a_exp: f64,
    d_max_override: Option<u64>,
    lambda: &[f64],
    fz: &Factorizer,
) -> Result<DeviationReport> {
    let cap = x.sqrt() / x.ln().powf(a_exp + 5.0);
    let d_max = d_max_override.unwrap_or(cap.floor() as u64);
    let mut rows = Vec::new();
    let mut sum_of_max = 0.0;
    for d in 1..=d_max {
        let mut worst = (0.0f64, 0u64);
        for a in 1..=d.max(1) {
            if num_integer::gcd(a % d.max(1), d.max(1)) != 1 && d > 1 {
                continue;
            }
            let e: Complex<f64> = eval_e(c, t, x, mu, d, a % d.max(1), lambda, fz)?;
            if e.norm() > worst.0 {
                worst = (e.norm(), a);
            }
        }
        sum_of_max += worst.0;
        rows.push(DeviationRow { d, max_abs_e: worst.0, worst_a: worst.1 });
    }
    Ok(DeviationReport {
        x,
        c,
        t,
        a_exp,
        d_cap_formula: cap,
        d_max_used: d_max,
        rows,
        sum_of_max,
    })
}
