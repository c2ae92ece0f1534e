//! Vaughan-identity decomposition of S*(t) = sum_{n ~ X} Lambda(n) e(t n^c)
//! into bilinear pieces, with exact reconstruction as the defining property.
//!
//! With truncation parameters U (on Lambda) and V (on mu), every n > U obeys
//!     Lambda(n) = sum_{d | n, d <= V} mu(d) log(n/d)
//!               - sum_{k | n} c(k)          c(k) = sum_{dm=k, d<=V, m<=U} mu(d) Lambda(m)
//!               + sum_{ml = n, m > U, l > V} Lambda(m) g(l),
//! where g(l) = -sum_{d | l, d <= V} mu(d) vanishes for 1 <= l <= V.
//! Summing against e(t n^c) over n ~ X and splitting each free variable into
//! dyadic blocks yields the piece list:
//!
//! * mu-log pieces (kind TypeI, log inner weight): coefficients mu(d), d <= V,
//!   against the long smooth variable with a log factor;
//! * convolution pieces (kind TypeI, unit inner weight): coefficients -c(k),
//!   k <= UV, unweighted long inner variable;
//! * bilinear pieces: rough g(l) on the long side against rough Lambda(m) on
//!   the short side. Blocks whose short side sits inside (U, V] are TypeII in
//!   the strict window sense; blocks with both sides beyond V are kept as
//!   wide bilinear pieces and labelled TypeI through their long side (their
//!   `wide_bilinear` flag keeps them distinguishable in every report).
//!
//! Every piece carries the joint constraint m*l in (X/2, X], so the sum of
//! all evaluated pieces reproduces S*(t) identically in t up to floating
//! rounding.

use crate::arith::{sieve_primes, von_mangoldt_table};
use crate::util::{e_of, KahanComplex};
use crate::{CoreError, Real, Result};
use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PieceKind {
    TypeI,
    TypeII,
}

/// Weight applied to the inner variable of a piece.
#[derive(Clone, Debug)]
pub enum InnerWeight {
    Unit,
    Log,
    /// values[l - (in_lo + 1)] for inner value l
    Table(Vec<f64>),
}

/// One bilinear piece of the decomposition. `m_*`/`l_*` are the spec-facing
/// dyadic ranges (L = smooth side for TypeI, short rough side for TypeII);
/// `out_*`/`in_*` with `a`/`inner` are the evaluation structure.
#[derive(Clone, Debug)]
pub struct Piece {
    pub kind: PieceKind,
    pub x: f64,
    pub m_lo: u64,
    pub m_hi: u64,
    pub l_lo: u64,
    pub l_hi: u64,
    pub wide_bilinear: bool,
    pub source: &'static str,
    out_lo: u64,
    out_hi: u64,
    a: Vec<f64>,
    in_lo: u64,
    in_hi: u64,
    inner: InnerWeight,
}

impl Piece {
    /// Coefficient of the outer value v (0 outside the block).
    pub fn coeff(&self, v: u64) -> f64 {
        if v > self.out_lo && v <= self.out_hi {
            self.a[(v - self.out_lo - 1) as usize]
        } else {
            0.0
        }
    }

    pub fn outer_range(&self) -> (u64, u64) {
        (self.out_lo, self.out_hi)
    }

    pub fn inner_range(&self) -> (u64, u64) {
        (self.in_lo, self.in_hi)
    }

    pub fn inner_weight(&self) -> &InnerWeight {
        &self.inner
    }

    fn inner_weight_at(&self, l: u64) -> f64 {
        match &self.inner {
            InnerWeight::Unit => 1.0,
            InnerWeight::Log => (l as f64).ln(),
            InnerWeight::Table(v) => v[(l - self.in_lo - 1) as usize],
        }
    }

    /// Inner integer bounds for a fixed outer value, honoring the joint
    /// constraint out*in in (X/2, X] with float-exact boundary handling.
    fn inner_bounds(&self, m: u64) -> (u64, u64) {
        let x = self.x;
        let half = x / 2.0;
        let mut lo = ((half / m as f64).floor() as u64).max(self.in_lo);
        // first admissible l is lo+1: enforce (lo+1)*m > X/2, lo*m <= X/2 side
        while (lo.saturating_mul(m)) as f64 > half && lo > 0 {
            lo -= 1;
        }
        while ((lo + 1).saturating_mul(m)) as f64 <= half {
            lo += 1;
        }
        let mut hi = ((x / m as f64).floor() as u64 + 1).min(self.in_hi.saturating_add(1));
        while hi.saturating_mul(m) as f64 > x && hi > 0 {
            hi -= 1;
        }
        (lo.max(self.in_lo), hi.min(self.in_hi))
    }

    /// Number of (outer, inner) terms the piece actually sums.
    pub fn n_terms(&self) -> u64 {
        let mut n = 0;
        for m in self.out_lo + 1..=self.out_hi {
            if self.coeff(m) != 0.0 {
                let (lo, hi) = self.inner_bounds(m);
                n += hi.saturating_sub(lo);
            }
        }
        n
    }

    /// Inventory line for JSON export.
    pub fn inventory(&self) -> PieceInventory {
        PieceInventory {
            kind: self.kind,
            m_lo: self.m_lo,
            m_hi: self.m_hi,
            l_lo: self.l_lo,
            l_hi: self.l_hi,
            n_terms: self.n_terms(),
            wide_bilinear: self.wide_bilinear,
            source: self.source,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceInventory {
    pub kind: PieceKind,
    #[serde(rename = "M_lo")]
    pub m_lo: u64,
    #[serde(rename = "M_hi")]
    pub m_hi: u64,
    #[serde(rename = "L_lo")]
    pub l_lo: u64,
    #[serde(rename = "L_hi")]
    pub l_hi: u64,
    pub n_terms: u64,
    pub wide_bilinear: bool,
    pub source: &'static str,
}

/// Ratios recording how comfortably the block-shape constraints hold.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShapeDiagnostics {
    pub u_exceeds_3: bool,
    /// V^3 / X (wants >> 1 side, i.e. >= O(1))
    pub v_cubed_over_x: f64,
    /// Z / U^2 (wants >> 1)
    pub z_over_u_sq: f64,
    /// Z^2 U / X (wants O(1))
    pub z_sq_u_over_x: f64,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub x: f64,
    pub u: f64,
    pub v: f64,
    /// Z = [X^(4/9)] + 1/2, the half-integer Type I cut.
    pub z: f64,
    pub pieces: Vec<Piece>,
    pub diagnostics: ShapeDiagnostics,
}

impl Decomposition {
    pub fn inventory(&self) -> Vec<PieceInventory> {
        self.pieces.iter().map(Piece::inventory).collect()
    }

    /// Piece count normalized by log^10 X (recorded constant).
    pub fn count_constant(&self) -> f64 {
        self.pieces.len() as f64 / self.x.ln().powi(10)
    }
}

/// Moebius values 0..=n by a linear sieve.
fn mobius_table(n: u64) -> Vec<i8> {
    let n = n as usize;
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i;
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if p > spf[i] || ip > n {
                break;
            }
            spf[ip] = p;
            mu[ip] = if p == spf[i] { 0 } else { -mu[i] };
        }
    }
    mu
}

/// Power-of-two blocks (a, b] covering (lo_excl, hi_incl], additionally cut
/// at the listed boundaries.
fn dyadic_blocks(lo_excl: u64, hi_incl: u64, extra: &[u64]) -> Vec<(u64, u64)> {
    if hi_incl <= lo_excl {
        return Vec::new();
    }
    let mut cuts = vec![lo_excl, hi_incl];
    let mut p = 1u64;
    while p < hi_incl {
        if p > lo_excl {
            cuts.push(p);
        }
        p <<= 1;
    }
    for &e in extra {
        if e > lo_excl && e < hi_incl {
            cuts.push(e);
        }
    }
    cuts.sort_unstable();
    cuts.dedup();
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Dyadic scale label of a block (its upper power-of-two ceiling).
fn scale_of(lo: u64, hi: u64) -> u64 {
    let _ = lo;
    hi.next_power_of_two()
}

/// Decompose S*(t) over n ~ X with truncations U (Lambda side) and V (mu
/// side). The canonical parameters are U = X^(1/9), V = X^(1/3).
pub fn decompose(x: f64, u: f64, v: f64) -> Result<Decomposition> {
    if !(x >= 16.0 && x <= 4e6) {
        return Err(CoreError::Argument("decompose expects 16 <= X <= 4e6 (desk scale)".into()));
    }
    if !(u >= 1.0 && v >= u && v < x / 2.0) {
        return Err(CoreError::Argument(format!(
            "need 1 <= U <= V < X/2, got U={u}, V={v}, X={x}"
        )));
    }
    let z = x.powf(4.0 / 9.0).floor() + 0.5;
    if !(v < z && z < x) {
        return Err(CoreError::Argument(format!("need V < Z < X, got V={v}, Z={z}")));
    }
    let diagnostics = ShapeDiagnostics {
        u_exceeds_3: u > 3.0,
        v_cubed_over_x: v.powi(3) / x,
        z_over_u_sq: z / (u * u),
        z_sq_u_over_x: z * z * u / x,
    };
    let uf = u.floor() as u64; // Lambda truncation: m <= uf kept in c(k)
    let vf = v.floor() as u64; // mu truncation: d <= vf
    let x_int = x.floor() as u64;

    let mu = mobius_table(vf.max(1));
    let lambda_small = von_mangoldt_table((x_int / (vf + 1)).max(uf).max(2))?;

    let mut pieces: Vec<Piece> = Vec::new();

    // ---- mu-log pieces: sum_{d <= V} mu(d) sum_{l: dl ~ X} log(l) e(t (dl)^c)
    for (blo, bhi) in dyadic_blocks(0, vf, &[]) {
        let a: Vec<f64> = (blo + 1..=bhi).map(|d| mu[d as usize] as f64).collect();
        if a.iter().all(|&c| c == 0.0) {
            continue;
        }
        push_split_by_inner(
            &mut pieces,
            x,
            (blo, bhi),
            a,
            InnerWeight::Log,
            PieceKind::TypeI,
            false,
            "mu_log",
        );
    }

    // ---- convolution pieces: -sum_{k <= UV} c(k) sum_{l: kl ~ X} e(t (kl)^c)
    let kv_max = uf * vf;
    if kv_max >= 1 {
        let mut c_table = vec![0.0f64; (kv_max + 1) as usize];
        for m in 1..=uf {
            let lm = lambda_small[m as usize];
            if lm == 0.0 {
                continue;
            }
            for d in 1..=vf {
                let k = d * m;
                c_table[k as usize] += mu[d as usize] as f64 * lm;
            }
        }
        for (blo, bhi) in dyadic_blocks(0, kv_max, &[]) {
            let a: Vec<f64> = (blo + 1..=bhi).map(|k| -c_table[k as usize]).collect();
            if a.iter().all(|&c| c == 0.0) {
                continue;
            }
            push_split_by_inner(
                &mut pieces,
                x,
                (blo, bhi),
                a,
                InnerWeight::Unit,
                PieceKind::TypeI,
                false,
                "mu_lambda_conv",
            );
        }
    }

    // ---- bilinear pieces: sum_{m > U} Lambda(m) sum_{l > V: ml ~ X} g(l) ...
    // oriented with the long g side as the outer variable.
    let m_max = x_int / (vf + 1); // short Lambda side
    let l_max = x_int / (uf + 1); // long g side
    if m_max > uf && l_max > vf {
        // g(l) = -sum_{d | l, d <= V} mu(d) on (V, l_max]
        let mut g = vec![0.0f64; (l_max - vf) as usize]; // index l - vf - 1
        for d in 1..=vf {
            let md = mu[d as usize] as f64;
            if md == 0.0 {
                continue;
            }
            let mut j = (vf / d + 1) * d;
            while j <= l_max {
                if j > vf {
                    g[(j - vf - 1) as usize] -= md;
                }
                j += d;
            }
        }
        for (olo, ohi) in dyadic_blocks(vf, l_max, &[]) {
            let a: Vec<f64> =
                (olo + 1..=ohi).map(|l| g[(l - vf - 1) as usize]).collect();
            if a.iter().all(|&c| c == 0.0) {
                continue;
            }
            // inner Lambda blocks, split at V to keep the TypeII window clean
            for (ilo, ihi) in dyadic_blocks(uf, m_max, &[vf]) {
                if !blocks_meet_hyperbola(x, (olo, ohi), (ilo, ihi)) {
                    continue;
                }
                let table: Vec<f64> =
                    (ilo + 1..=ihi).map(|m| lambda_small[m as usize]).collect();
                if table.iter().all(|&c| c == 0.0) {
                    continue;
                }
                let short_is_window = ihi <= vf;
                let (kind, wide) = if short_is_window {
                    (PieceKind::TypeII, false)
                } else {
                    (PieceKind::TypeI, true)
                };
                // spec-facing ranges: TypeII has L = the short rough side;
                // wide pieces designate L as their longer side
                let (m_rng, l_rng) = if short_is_window {
                    ((olo, ohi), (ilo, ihi))
                } else if scale_of(olo, ohi) >= scale_of(ilo, ihi) {
                    ((ilo, ihi), (olo, ohi))
                } else {
                    ((olo, ohi), (ilo, ihi))
                };
                pieces.push(Piece {
                    kind,
                    x,
                    m_lo: m_rng.0,
                    m_hi: m_rng.1,
                    l_lo: l_rng.0,
                    l_hi: l_rng.1,
                    wide_bilinear: wide,
                    source: "bilinear",
                    out_lo: olo,
                    out_hi: ohi,
                    a: a.clone(),
                    in_lo: ilo,
                    in_hi: ihi,
                    inner: InnerWeight::Table(table),
                });
            }
        }
    }

    // drop pieces the joint constraint fully clips
    pieces.retain(|p| p.n_terms() > 0);
    Ok(Decomposition { x, u, v, z, pieces, diagnostics })
}

/// Do the blocks (olo, ohi] x (ilo, ihi] meet the hyperbola X/2 < ol <= X?
fn blocks_meet_hyperbola(x: f64, o: (u64, u64), i: (u64, u64)) -> bool {
    let min_prod = (o.0 + 1) as f64 * (i.0 + 1) as f64;
    let max_prod = o.1 as f64 * i.1 as f64;
    min_prod <= x && max_prod > x / 2.0
}

/// Split the smooth inner side into dyadic blocks and push one piece per
/// (outer block, inner block) pair that meets the hyperbola.
#[allow(clippy::too_many_arguments)]
fn push_split_by_inner(
    pieces: &mut Vec<Piece>,
    x: f64,
    out: (u64, u64),
    a: Vec<f64>,
    inner: InnerWeight,
    kind: PieceKind,
    wide: bool,
    source: &'static str,
) {
    let (olo, ohi) = out;
    // inner values range over (X/(2*ohi), X/(olo+1)]
    let in_min = (x / 2.0 / ohi as f64).floor() as u64;
    let in_max = (x / (olo + 1) as f64).floor() as u64;
    for (ilo, ihi) in dyadic_blocks(in_min, in_max, &[]) {
        if !blocks_meet_hyperbola(x, (olo, ohi), (ilo, ihi)) {
            continue;
        }
        pieces.push(Piece {
            kind,
            x,
            m_lo: olo,
            m_hi: ohi,
            l_lo: ilo,
            l_hi: ihi,
            wide_bilinear: wide,
            source,
            out_lo: olo,
            out_hi: ohi,
            a: a.clone(),
            in_lo: ilo,
            in_hi: ihi,
            inner: inner.clone(),
        });
    }
}

/// Evaluate one piece: sum over the outer block of a(m) times the inner sum
/// of w(l) e(t (ml)^c) under the joint constraint ml ~ X.
pub fn eval_piece<T: Real>(piece: &Piece, c: f64, t: f64) -> Complex<T> {
    let mut acc = KahanComplex::<T>::new();
    for m in piece.out_lo + 1..=piece.out_hi {
        let am = piece.coeff(m);
        if am == 0.0 {
            continue;
        }
        let (lo, hi) = piece.inner_bounds(m);
        for l in lo + 1..=hi {
            let w = piece.inner_weight_at(l);
            if w == 0.0 {
                continue;
            }
            let n = (m * l) as f64;
            acc.add(e_of(T::of(t) * T::of(n.powf(c))) * T::of(am * w));
        }
    }
    acc.value()
}

/// Sum of all pieces (parallel over pieces, deterministic reduction order).
pub fn eval_decomposition<T: Real>(decomp: &Decomposition, c: f64, t: f64) -> Complex<T> {
    let parts: Vec<Complex<T>> =
        decomp.pieces.par_iter().map(|p| eval_piece(p, c, t)).collect();
    let mut acc = KahanComplex::new();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}

/// Direct oracle: S*(t) = sum_{n ~ X} Lambda(n) e(t n^c).
pub fn direct_lambda_sum<T: Real>(x: f64, c: f64, t: f64, lambda: &[f64]) -> Complex<T> {
    let mut acc = KahanComplex::new();
    let lo = (x / 2.0).floor() as u64;
    let hi = x.floor() as u64;
    for n in lo + 1..=hi {
        let w = lambda[n as usize];
        if w != 0.0 && (n as f64) > x / 2.0 && (n as f64) <= x {
            acc.add(e_of(T::of(t) * T::of((n as f64).powf(c))) * T::of(w));
        }
    }
    acc.value()
}

/// |S(t) - S*(t)| report: the prime-power tail against C sqrt(X) log^2 X.
#[derive(Clone, Debug, Serialize)]
pub struct PowerTailReport {
    #[serde(rename = "X")]
    pub x: f64,
    pub t: f64,
    pub gap: f64,
    pub majorant: f64,
    pub ratio: f64,
}

pub fn prime_power_tail(x: f64, c: f64, t: f64) -> Result<PowerTailReport> {
    // S* - S = sum over proper prime powers p^k ~ X (k >= 2) of log p e(t p^{kc})
    let root = x.sqrt().floor() as u64 + 1;
    let table = sieve_primes(0, root.max(2))?;
    let mut acc = KahanComplex::<f64>::new();
    for &p in &table.primes {
        let lp = (p as f64).ln();
        let mut pk = p as u128 * p as u128;
        while pk <= x as u128 {
            let n = pk as f64;
            if n > x / 2.0 {
                acc.add(e_of(t * n.powf(c)) * lp);
            }
            pk *= p as u128;
        }
    }
    let gap = acc.value().norm();
    let majorant = x.sqrt() * x.ln().powi(2);
    Ok(PowerTailReport { x, t, gap, majorant, ratio: gap / majorant })
}

/// A synthetic unit-coefficient TypeI piece with M ~ X^(m_exp), used to
/// exercise boundary cases of the Type I estimate.
pub fn synthetic_type_i_piece(x: f64, m_exp: f64) -> Piece {
    let m_hi = x.powf(m_exp).round().max(2.0) as u64;
    let m_lo = m_hi / 2;
    let in_min = (x / 2.0 / m_hi as f64).floor() as u64;
    let in_max = (x / (m_lo + 1) as f64).floor() as u64;
    Piece {
        kind: PieceKind::TypeI,
        x,
        m_lo,
        m_hi,
        l_lo: in_min,
        l_hi: in_max,
        wide_bilinear: false,
        source: "synthetic",
        out_lo: m_lo,
        out_hi: m_hi,
        a: vec![1.0; (m_hi - m_lo) as usize],
        in_lo: in_min,
        in_hi: in_max,
        inner: InnerWeight::Unit,
    }
}

/// One row of a bound report.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub kind: PieceKind,
    #[serde(rename = "M_lo")]
    pub m_lo: u64,
    #[serde(rename = "M_hi")]
    pub m_hi: u64,
    #[serde(rename = "L_lo")]
    pub l_lo: u64,
    #[serde(rename = "L_hi")]
    pub l_hi: u64,
    pub wide_bilinear: bool,
    pub synthetic: bool,
    pub abs_value: f64,
    /// |value| / X^(1817/1950)
    pub ratio: f64,
    /// Cauchy + shifted-sum majorant (TypeII rows only).
    pub majorant: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    #[serde(rename = "X")]
    pub x: f64,
    pub c: f64,
    pub t: f64,
    pub target_exponent: f64,
    pub rows: Vec<BoundRow>,
    /// Largest ratio among pieces matching the strict sum shape
    /// (unit inner weight for TypeI; the window condition for TypeII).
    pub max_strict_ratio: f64,
    /// Largest ratio over all pieces of the requested kind.
    pub max_ratio: f64,
}

const SUP_EXP: f64 = 1817.0 / 1950.0;

/// Type I bound report at one frequency: per-piece |S_I| against X^(1817/1950).
/// Synthetic boundary pieces at M = X^(763/1950) and M = X^(5/9) are included.
pub fn bound_report_type_i(decomp: &Decomposition, c: f64, t: f64) -> BoundReport {
    let x = decomp.x;
    let target = x.powf(SUP_EXP);
    let mut rows = Vec::new();
    let mut max_strict: f64 = 0.0;
    let mut max_all: f64 = 0.0;
    let evaluate = |p: &Piece, synthetic: bool| -> BoundRow {
        let v: Complex<f64> = eval_piece(p, c, t);
        BoundRow {
            kind: p.kind,
            m_lo: p.m_lo,
            m_hi: p.m_hi,
            l_lo: p.l_lo,
            l_hi: p.l_hi,
            wide_bilinear: p.wide_bilinear,
            synthetic,
            abs_value: v.norm(),
            ratio: v.norm() / target,
            majorant: None,
        }
    };
    for p in decomp.pieces.iter().filter(|p| p.kind == PieceKind::TypeI) {
        let row = evaluate(p, false);
        max_all = max_all.max(row.ratio);
        if matches!(p.inner, InnerWeight::Unit) && !p.wide_bilinear {
            max_strict = max_strict.max(row.ratio);
        }
        rows.push(row);
    }
    for m_exp in [763.0 / 1950.0, 5.0 / 9.0] {
        let p = synthetic_type_i_piece(x, m_exp);
        let row = evaluate(&p, true);
        max_strict = max_strict.max(row.ratio);
        max_all = max_all.max(row.ratio);
        rows.push(row);
    }
    BoundReport { x, c, t, target_exponent: SUP_EXP, rows, max_strict_ratio: max_strict, max_ratio: max_all }
}

/// Type II bound report: per-piece |S_II|, the explicit Cauchy + shifted-sum
/// majorant with shift Q, and ratios to X^(1817/1950).
pub fn bound_report_type_ii(decomp: &Decomposition, c: f64, t: f64, q_shift: usize) -> BoundReport {
    let x = decomp.x;
    let target = x.powf(SUP_EXP);
    let mut rows = Vec::new();
    let mut max_strict: f64 = 0.0;
    for p in decomp.pieces.iter().filter(|p| p.kind == PieceKind::TypeII) {
        let v: Complex<f64> = eval_piece(p, c, t);
        // Cauchy over the outer (long) side, then the shifted-sum majorant on
        // each inner sum
        let mut a2 = 0.0f64;
        let mut inner_sq = 0.0f64;
        for m in p.out_lo + 1..=p.out_hi {
            let am = p.coeff(m);
            if am == 0.0 {
                continue;
            }
            a2 += am * am;
            let (lo, hi) = p.inner_bounds(m);
            if hi <= lo {
                continue;
            }
            let seq: Vec<Complex<f64>> = (lo + 1..=hi)
                .map(|l| {
                    let w = p.inner_weight_at(l);
                    e_of(t * ((m * l) as f64).powf(c)) * w
                })
                .collect();
            inner_sq += crate::expsum::shifted_sum_majorant(&seq, q_shift);
        }
        let majorant = (a2 * inner_sq).sqrt();
        let row = BoundRow {
            kind: p.kind,
            m_lo: p.m_lo,
            m_hi: p.m_hi,
            l_lo: p.l_lo,
            l_hi: p.l_hi,
            wide_bilinear: p.wide_bilinear,
            synthetic: false,
            abs_value: v.norm(),
            ratio: v.norm() / target,
            majorant: Some(majorant),
        };
        max_strict = max_strict.max(row.ratio);
        rows.push(row);
    }
    BoundReport {
        x,
        c,
        t,
        target_exponent: SUP_EXP,
        rows,
        max_strict_ratio: max_strict,
        max_ratio: max_strict,
    }
}

/// Canonical truncation parameters U = X^(1/9), V = X^(1/3).
pub fn canonical_uv(x: f64) -> (f64, f64) {
    (x.powf(1.0 / 9.0), x.powf(1.0 / 3.0))
}
