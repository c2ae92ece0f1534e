//! Exact exponent bookkeeping in arbitrary-precision rationals: van der
//! Corput A/B processes, exponent pairs, the Type I balance and the final
//! moment balance that both pin the threshold c0 = 5363/3900, the
//! fourth-to-sixth moment exponent chain, and the eleven-term bilinear
//! bound of Sargos–Wu type.
//!
//! Everything in this module is exact; the arbitrarily-small eta exponents
//! of the estimates are dropped from the arithmetic and only re-enter as an
//! explicit slack term in verdict comparisons.

use crate::{CoreError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub type Rational = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Default slack standing in for the eta exponents in verdict comparisons.
pub fn default_eta_slack() -> Rational {
    rat(1, 1000)
}

/// A van der Corput exponent pair (kappa, lambda).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPair {
    pub kappa: Rational,
    pub lambda: Rational,
}

impl ExponentPair {
    pub fn new(kappa: Rational, lambda: Rational) -> ExponentPair {
        ExponentPair { kappa, lambda }
    }

    /// The trivial pair (0, 1).
    pub fn trivial() -> ExponentPair {
        ExponentPair::new(Rational::zero(), Rational::one())
    }

    /// Range axioms: 0 <= kappa <= 1/2 <= lambda <= 1.
    pub fn in_range(&self) -> bool {
        let half = rat(1, 2);
        !self.kappa.is_negative()
            && self.kappa <= half
            && self.lambda >= half
            && self.lambda <= Rational::one()
    }

    /// Huxley's pair (32/205, 269/410), eta dropped.
    pub fn huxley() -> ExponentPair {
        ExponentPair::new(rat(32, 205), rat(269, 410))
    }

    /// The pair (1/20, 33/40) driving the Type I estimate.
    pub fn type_i_pair() -> ExponentPair {
        ExponentPair::new(rat(1, 20), rat(33, 40))
    }
}

/// A process (Weyl differencing): (k, l) -> (k/(2k+2), (k+l+1)/(2k+2)).
pub fn process_a(p: &ExponentPair) -> ExponentPair {
    let den = rat(2, 1) * &p.kappa + rat(2, 1);
    ExponentPair::new(
        &p.kappa / &den,
        (&p.kappa + &p.lambda + Rational::one()) / den,
    )
}

/// B process (Poisson / stationary phase): (k, l) -> (l - 1/2, k + 1/2).
pub fn process_b(p: &ExponentPair) -> ExponentPair {
    ExponentPair::new(&p.lambda - rat(1, 2), &p.kappa + rat(1, 2))
}

/// Affine exponent of X as a function of c: alpha + beta * c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentExpr {
    pub alpha: Rational,
    pub beta: Rational,
}

impl ExponentExpr {
    pub fn constant(alpha: Rational) -> ExponentExpr {
        ExponentExpr { alpha, beta: Rational::zero() }
    }

    pub fn new(alpha: Rational, beta: Rational) -> ExponentExpr {
        ExponentExpr { alpha, beta }
    }

    pub fn eval(&self, c: &Rational) -> Rational {
        &self.alpha + &self.beta * c
    }

    pub fn add(&self, other: &ExponentExpr) -> ExponentExpr {
        ExponentExpr::new(&self.alpha + &other.alpha, &self.beta + &other.beta)
    }

    pub fn scale(&self, k: &Rational) -> ExponentExpr {
        ExponentExpr::new(&self.alpha * k, &self.beta * k)
    }

    /// Solve alpha + beta*c = target for c (beta must be nonzero).
    pub fn solve_for_c(&self, target: &Rational) -> Result<Rational> {
        if self.beta.is_zero() {
            return Err(CoreError::Argument("constant exponent expression".into()));
        }
        Ok((target - &self.alpha) / &self.beta)
    }
}

/// theta0 = 1/2 - (e log 2)/4, symbolic description plus a double value.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaZero {
    pub description: &'static str,
    pub value: f64,
}

pub fn theta0() -> ThetaZero {
    ThetaZero {
        description: "1/2 - (e log 2)/4",
        value: 0.5 - std::f64::consts::E * std::f64::consts::LN_2 / 4.0,
    }
}

/// eps(X) = (log log X)^6 / (log X)^theta0.
pub fn epsilon_of(x: f64) -> f64 {
    let lx = x.ln();
    lx.ln().powi(6) / lx.powf(theta0().value)
}

/// Sup-norm exponent for S(t) on the intermediate t-range: 1817/1950.
pub fn sup_exponent() -> Rational {
    rat(1817, 1950)
}

/// The threshold c0 = 5363/3900 below which the whole argument closes.
pub fn c_threshold() -> Rational {
    rat(5363, 3900)
}

/// The M-cap exponent 763/1950 splitting the Type I cases.
pub fn type_i_m_cap() -> Rational {
    rat(763, 1950)
}

/// Exponent of the Type I estimate: with the pair (1/20, 33/40) the leading
/// term is X^((2c+31)/40) * M^(9/40); for M <= X^m_cap this gives the affine
/// exponent (2c+31)/40 + (9/40)*m_cap.
pub fn type_i_exponent(pair: &ExponentPair, m_cap: &Rational) -> Result<ExponentExpr> {
    if *pair != ExponentPair::type_i_pair() {
        return Err(CoreError::Argument(
            "type_i_exponent is derived for the pair (1/20, 33/40)".into(),
        ));
    }
    if *m_cap > rat(5, 9) {
        return Err(CoreError::Argument("M-cap exponent must be <= 5/9".into()));
    }
    // (2c + 31)/40 + (9/40) * m_cap
    Ok(ExponentExpr::new(
        rat(31, 40) + rat(9, 40) * m_cap,
        rat(2, 40),
    ))
}

/// Solve the Type I balance (leading exponent = sup exponent) for c.
pub fn solve_c0_type_i() -> Rational {
    let expr = type_i_exponent(&ExponentPair::type_i_pair(), &type_i_m_cap())
        .expect("canonical parameters");
    expr.solve_for_c(&sup_exponent()).expect("affine in c")
}

/// One labelled step of the moment-exponent chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub label: &'static str,
    pub expr: ExponentExpr,
}

/// The moment chain for a given sup-norm exponent s:
///   m5_head = (2 - c)/2 + 2 s            (head of the fifth-moment bound)
///   m5      = m5_head + (4 - c)/2        (fourth moment ~ X^(4-c) inserted)
///   m6_head = (2 - c)/2 + 5 s / 2
///   m6      = m6_head + m5 / 2
/// With s = 1817/1950 these evaluate to 2792/975 - c/2, 4742/975 - c,
/// 2597/780 - c/2 and 22469/3900 - c.
pub fn chain_with_s(s: &Rational) -> Vec<ChainStep> {
    let half = rat(1, 2);
    let sup = ExponentExpr::constant(s.clone());
    // (2 - c)/2 = 1 - c/2
    let half_sq_norm = ExponentExpr::new(Rational::one(), -half.clone());
    let m4 = ExponentExpr::new(rat(4, 1), rat(-1, 1)); // fourth moment X^(4-c)
    let m5_head = half_sq_norm.add(&sup.scale(&rat(2, 1)));
    let m5 = m5_head.add(&m4.scale(&half));
    let m6_head = half_sq_norm.add(&sup.scale(&rat(5, 2)));
    let m6 = m6_head.add(&m5.scale(&half));
    vec![
        ChainStep { label: "sup", expr: sup },
        ChainStep { label: "m5_head", expr: m5_head },
        ChainStep { label: "m5", expr: m5 },
        ChainStep { label: "m6_head", expr: m6_head },
        ChainStep { label: "m6", expr: m6 },
    ]
}

/// The chain instantiated at the sup exponent 1817/1950, evaluated at c.
pub fn chain_exponents(c: &Rational) -> Result<Vec<(String, ExponentExpr, Rational)>> {
    if *c <= Rational::one() || *c >= rat(2, 1) {
        return Err(CoreError::Argument("chain requires 1 < c < 2".into()));
    }
    Ok(chain_with_s(&sup_exponent())
        .into_iter()
        .map(|s| {
            let v = s.expr.eval(c);
            (s.label.to_string(), s.expr, v)
        })
        .collect())
}

/// Solve the final balance
///   s + m6/2 + 1/2 = 5 - c
/// for c, where m6 = 22469/3900 - c is the sixth-moment exponent.
pub fn solve_c0_final() -> Rational {
    let s = sup_exponent();
    let m6 = chain_with_s(&s).pop().expect("nonempty chain").expr;
    // lhs - rhs = 0: (s + 1/2 + m6/2) - (5 - c)
    let lhs = ExponentExpr::constant(&s + rat(1, 2)).add(&m6.scale(&rat(1, 2)));
    let rhs = ExponentExpr::new(rat(5, 1), rat(-1, 1));
    let diff = lhs.add(&rhs.scale(&rat(-1, 1)));
    diff.solve_for_c(&Rational::zero()).expect("affine in c")
}

/// One displayed term of the Type II estimate with its exponent.
#[derive(Clone, Debug)]
pub struct TypeIiTerm {
    pub label: &'static str,
    pub exponent: Rational,
    pub bound: Rational,
    pub ok: bool,
}

/// Verdict of the Type II estimate at exponent level.
#[derive(Clone, Debug)]
pub struct TypeIiVerdict {
    pub terms: Vec<TypeIiTerm>,
    pub pass: bool,
    /// Label of the largest (binding) term.
    pub binding: &'static str,
}

/// Evaluate the three displayed terms inside the square root of the Type II
/// estimate at a rational c, maximized over the inner-range exponent
/// l in [1/9, 1/3] (all terms are affine in l, so endpoint evaluation is a
/// true maximization). Pass criterion: every term <= 2 * sup exponent.
pub fn type_ii_exponent_check(
    c: &Rational,
    pair: &ExponentPair,
    q_exp: &Rational,
    eta_slack: &Rational,
) -> Result<TypeIiVerdict> {
    if *pair != ExponentPair::huxley() {
        return Err(CoreError::Argument(
            "type_ii_exponent_check is derived for the pair (32/205, 269/410)".into(),
        ));
    }
    let (kappa, lambda) = (&pair.kappa, &pair.lambda);
    let target = rat(2, 1) * sup_exponent() + eta_slack;
    let l_ends = [rat(1, 9), rat(1, 3)];
    // X^2 / Q
    let t1 = rat(2, 1) - q_exp;
    // (X/Q) * Q^(1+kappa) * (X^(c-1))^kappa * M^lambda * L with M = X^(1-l):
    // averaging gives Q^(-1), the q-sum gives Q^(1+kappa), so the net power
    // of Q is kappa * q_exp; affine in l with slope 1 - lambda > 0.
    let t2_at = |l: &Rational| {
        Rational::one()
            + kappa * q_exp
            + kappa * (c - Rational::one())
            + lambda * (Rational::one() - l)
            + l
    };
    // (X/Q) * Delta^(-1) X^(1-c) * L with Delta^(-1) = X^(c - 1/4); the
    // log Q factor is absorbed like every other X^eta.
    let t3_at = |l: &Rational| Rational::one() - q_exp + rat(3, 4) + l;

    let max_over_l = |f: &dyn Fn(&Rational) -> Rational| -> Rational {
        let a = f(&l_ends[0]);
        let b = f(&l_ends[1]);
        if a >= b { a } else { b }
    };

    let t2 = max_over_l(&|l| t2_at(l));
    let t3 = max_over_l(&|l| t3_at(l));
    let mk = |label: &'static str, exponent: Rational| TypeIiTerm {
        ok: exponent <= target,
        bound: target.clone(),
        label,
        exponent,
    };
    let terms = vec![mk("diagonal X^2/Q", t1), mk("shifted-sum main", t2), mk("shifted-sum tail", t3)];
    let pass = terms.iter().all(|t| t.ok);
    let binding = terms
        .iter()
        .max_by(|a, b| a.exponent.cmp(&b.exponent))
        .map(|t| t.label)
        .unwrap();
    Ok(TypeIiVerdict { terms, pass, binding })
}

/// The canonical Q exponent 857/3900 used by the Type II estimate.
pub fn type_ii_q_exp() -> Rational {
    rat(857, 3900)
}

/// The eleven exponents of the bilinear monomial bound, as functions of the
/// exponents of F, M and L in X; returns (max, all terms).
pub fn sargos_wu_bound(
    f_exp: &Rational,
    m_exp: &Rational,
    l_exp: &Rational,
) -> (Rational, Vec<Rational>) {
    let t = |cf: i64, cm: i64, cl: i64, den: i64| {
        (rat(cf, 1) * f_exp + rat(cm, 1) * m_exp + rat(cl, 1) * l_exp) / rat(den, 1)
    };
    let terms = vec![
        t(4, 31, 34, 42),
        t(6, 53, 51, 66),
        t(6, 46, 41, 56),
        t(2, 38, 29, 40),
        t(3, 43, 32, 46),
        t(1, 9, 6, 10),
        t(2, 7, 6, 10),
        t(1, 6, 6, 8),
        m_exp / rat(2, 1) + l_exp,
        m_exp + l_exp / rat(2, 1),
        -f_exp / rat(2, 1) + m_exp + l_exp,
    ];
    let max = terms.iter().cloned().max().expect("nonempty");
    (max, terms)
}

/// Machine-readable derivation trace (for golden-file tests and the CLI).
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub label: String,
    pub numer: String,
    pub denom: String,
    pub decimal: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

fn trace_step(label: &str, r: &Rational) -> TraceStep {
    TraceStep {
        label: label.to_string(),
        numer: r.numer().to_string(),
        denom: r.denom().to_string(),
        decimal: r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Full derivation trace: both threshold balances and the moment chain.
pub fn derivation_trace() -> DerivationTrace {
    let c0 = c_threshold();
    let mut steps = vec![
        trace_step("sup_exponent", &sup_exponent()),
        trace_step("type_i_m_cap", &type_i_m_cap()),
        trace_step("c0_from_type_i_balance", &solve_c0_type_i()),
        trace_step("c0_from_final_balance", &solve_c0_final()),
    ];
    for (label, expr, value) in chain_exponents(&c0).expect("c0 in (1,2)") {
        steps.push(trace_step(&format!("chain_{label}_alpha"), &expr.alpha));
        steps.push(trace_step(&format!("chain_{label}_at_c0"), &value));
    }
    steps.push(trace_step("type_ii_q_exp", &type_ii_q_exp()));
    DerivationTrace { steps }
}
