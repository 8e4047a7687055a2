//! Independent numeric checks: classical partial sums, Abel summation on
//! the closed unit disc, and telescoping with an explicitly given primitive.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arith::Scalar;
use crate::engine::UpperBound;
use crate::exppoly::{Convergence, ExpPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("partial sums do not settle")]
    NonConvergent,
    #[error("Abel summation does not apply: {0}")]
    AbelInapplicable(&'static str),
    #[error("F(x+1) - F(x) != f(x) at x = {0}")]
    DeltaMismatch(i64),
    #[error("no numeric limit of F(n) could be detected")]
    LimitUndetectable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleMethod {
    PartialSums,
    Abel,
    Telescoping,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// `None` when no oracle applies, e.g. divergent series driven by λ = 1.
    pub method: Option<OracleMethod>,
    pub estimate: Option<f64>,
    pub estimate_imag: Option<f64>,
    /// |estimate − engine value|
    pub discrepancy: Option<f64>,
    /// Number of terms summed or extrapolation points used.
    pub iterations: u64,
    pub extrapolation: &'static str,
}

impl OracleReport {
    fn none() -> Self {
        OracleReport {
            method: None,
            estimate: None,
            estimate_imag: None,
            discrepancy: None,
            iterations: 0,
            extrapolation: "none",
        }
    }

    fn from_estimate(method: OracleMethod, est: &Estimate, engine: Option<&Scalar>, extrapolation: &'static str) -> Self {
        OracleReport {
            method: Some(method),
            estimate: Some(est.value.re),
            estimate_imag: Some(est.value.im),
            discrepancy: engine.map(|e| (est.value - e.to_complex()).norm()),
            iterations: est.iterations,
            extrapolation,
        }
    }
}

/// Something that can be sampled at integers.
pub trait Evaluable {
    fn eval(&self, n: i64) -> Complex64;
}

impl<F: Fn(i64) -> f64> Evaluable for F {
    fn eval(&self, n: i64) -> Complex64 {
        Complex64::new(self(n), 0.0)
    }
}

/// An exp-poly converted once to floating point for fast sampling.
#[derive(Debug, Clone)]
pub struct NumericExpPoly {
    terms: Vec<(Complex64, Vec<Complex64>)>,
}

impl NumericExpPoly {
    pub fn new(f: &ExpPoly) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|(b, p)| (b.to_complex(), p.coeffs().iter().map(Scalar::to_complex).collect()))
            .collect();
        NumericExpPoly { terms }
    }
}

impl Evaluable for NumericExpPoly {
    fn eval(&self, n: i64) -> Complex64 {
        let x = n as f64;
        self.terms
            .iter()
            .map(|(lambda, coeffs)| {
                let p = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
                p * complex_powi(*lambda, n)
            })
            .sum()
    }
}

fn complex_powi(z: Complex64, n: i64) -> Complex64 {
    if n >= 0 {
        z.powu(n.unsigned_abs().min(u32::MAX as u64) as u32)
    } else {
        z.inv().powu(n.unsigned_abs().min(u32::MAX as u64) as u32)
    }
}

#[derive(Debug, Clone, Copy)]
struct Estimate {
    value: Complex64,
    iterations: u64,
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct Accumulator {
    sum: Complex64,
    comp: Complex64,
}

impl Accumulator {
    fn add(&mut self, x: Complex64) {
        let t = self.sum + x;
        let fix = |s: f64, x: f64, t: f64| if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        self.comp += Complex64::new(fix(self.sum.re, x.re, t.re), fix(self.sum.im, x.im, t.im));
        self.sum = t;
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Richardson table for samples whose error expands in powers of h with h
/// halving between rows. Returns the diagonal.
fn richardson(samples: &[Complex64], depth: usize) -> Vec<Complex64> {
    let mut prev: Vec<Complex64> = samples.to_vec();
    let mut diag = vec![samples[0]];
    let mut rows: Vec<Vec<Complex64>> = vec![prev.clone()];
    for m in 1..=depth.min(samples.len().saturating_sub(1)) {
        let factor = (1u64 << m) as f64;
        let next: Vec<Complex64> =
            prev.windows(2).map(|w| (w[1] * factor - w[0]) / (factor - 1.0)).collect();
        rows.push(next.clone());
        prev = next;
    }
    for i in 1..samples.len() {
        let m = i.min(rows.len() - 1);
        diag.push(rows[m][i - m]);
    }
    diag
}

const MIN_LEVEL: usize = 6;
const MAX_LEVEL: usize = 22;
const RICHARDSON_DEPTH: usize = 5;

fn partial_sums(f: &impl Evaluable, a: i64, tol: f64) -> Result<Estimate, OracleError> {
    let mut acc = Accumulator::default();
    let mut samples = Vec::new();
    let mut u = a;
    let mut count: u64 = 0;
    for level in 0..=MAX_LEVEL {
        let target = 1u64 << level;
        while count < target {
            let term = f.eval(u);
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(OracleError::NonConvergent);
            }
            acc.add(term);
            u += 1;
            count += 1;
        }
        samples.push(acc.value());
        if level < MIN_LEVEL {
            continue;
        }
        let diag = richardson(&samples, RICHARDSON_DEPTH);
        let n = diag.len();
        let est = diag[n - 1];
        let scale = est.norm().max(1.0);
        // Cauchy check over the last three extrapolated values.
        let settled = (n - 3..n - 1).all(|i| (diag[i] - est).norm() < tol * scale / 4.0);
        let decaying = f.eval(u).norm() <= f.eval(a + (count / 2) as i64).norm() + tol;
        if settled && decaying {
            return Ok(Estimate { value: est, iterations: count });
        }
    }
    Err(OracleError::NonConvergent)
}

/// Σ_{u≥a} f(u) by direct summation with Richardson extrapolation over
/// N = 2^j terms.
pub fn partial_sum_oracle(f: &impl Evaluable, a: i64, tol: f64) -> Result<f64, OracleError> {
    partial_sums(f, a, tol).map(|e| e.value.re)
}

/// Eulerian polynomial coefficients A(j, m), m = 0..j−1.
fn eulerian_row(j: usize) -> Vec<f64> {
    (0..j.max(1))
        .map(|m| {
            (0..=m)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    sign * binomial_f64(j + 1, i) * ((m + 1 - i) as f64).powi(j as i32)
                })
                .sum()
        })
        .collect()
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Σ_{v≥0} v^j y^v for |y| < 1.
fn power_geometric(j: usize, y: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if j == 0 {
        return one / (one - y);
    }
    let a = eulerian_row(j).iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c);
    y * a / (one - y).powu(j as u32 + 1)
}

/// Σ_{u≥a} u^k y^u = y^a·Σ_j C(k, j)·a^{k−j}·Σ_v v^j y^v.
fn shifted_power_geometric(k: usize, a: i64, y: Complex64) -> Complex64 {
    let head = complex_powi(y, a);
    let body: Complex64 = (0..=k)
        .map(|j| power_geometric(j, y) * binomial_f64(k, j) * (a as f64).powi((k - j) as i32))
        .sum();
    head * body
}

fn abel(f: &ExpPoly, a: i64) -> Result<Estimate, OracleError> {
    let terms: Vec<(Complex64, Vec<Complex64>)> = f
        .terms()
        .iter()
        .map(|(b, p)| (b.to_complex(), p.coeffs().iter().map(Scalar::to_complex).collect()))
        .collect();
    for (lambda, coeffs) in &terms {
        if lambda.norm() > 1.0 + 1e-12 {
            return Err(OracleError::AbelInapplicable("a base lies outside the unit disc"));
        }
        if (lambda - 1.0).norm() < 1e-12 && coeffs.iter().any(|c| c.norm() != 0.0) {
            return Err(OracleError::AbelInapplicable("the lambda = 1 part does not vanish"));
        }
    }
    let generating = |x: f64| -> Complex64 {
        terms
            .iter()
            .map(|(lambda, coeffs)| {
                let y = lambda * x;
                coeffs.iter().enumerate().map(|(k, c)| c * shifted_power_geometric(k, a, y)).sum::<Complex64>()
            })
            .sum()
    };
    let samples: Vec<Complex64> = (10..=30).map(|j| generating(1.0 - 0.5f64.powi(j))).collect();
    let diag = richardson(&samples, RICHARDSON_DEPTH);
    Ok(Estimate { value: diag[diag.len() - 1], iterations: samples.len() as u64 })
}

/// lim_{x→1⁻} Σ_{u≥a} f(u)xᵘ, evaluated in closed form at x = 1 − 2^{−j},
/// j = 10..30, and extrapolated.
pub fn abel_oracle(f: &ExpPoly, a: i64) -> Result<f64, OracleError> {
    abel(f, a).map(|e| e.value.re)
}

/// An explicitly given pair with F(x+1) − F(x) = f(x).
pub struct PrimitivePair<P, Q> {
    pub primitive: P,
    pub term: Q,
}

impl<P: Evaluable, Q: Evaluable> PrimitivePair<P, Q> {
    /// Checks the pair at x ∈ −50..50, skipping points where either side is
    /// not finite.
    pub fn new(primitive: P, term: Q, tol: f64) -> Result<Self, OracleError> {
        for x in -50..=50 {
            let (hi, lo, t) = (primitive.eval(x + 1), primitive.eval(x), term.eval(x));
            let vals = [hi, lo, t];
            if vals.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                continue;
            }
            let scale = vals.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
            if (hi - lo - t).norm() > tol * scale {
                return Err(OracleError::DeltaMismatch(x));
            }
        }
        Ok(PrimitivePair { primitive, term })
    }
}

/// Numeric lim F(n) over n = 2^j and 2^j + 1: the first window of 16
/// consecutive j whose samples agree within tol/4.
fn numeric_limit(primitive: &impl Evaluable, tol: f64) -> Result<Complex64, OracleError> {
    const WINDOW: usize = 16;
    let samples: Vec<[Complex64; 2]> =
        (1..=61).map(|j| [primitive.eval(1i64 << j), primitive.eval((1i64 << j) + 1)]).collect();
    for w in samples.windows(WINDOW) {
        let flat: Vec<Complex64> = w.iter().flatten().copied().collect();
        if flat.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            continue;
        }
        let last = flat[flat.len() - 1];
        if flat.iter().all(|v| (v - last).norm() < tol / 4.0) {
            return Ok(last);
        }
    }
    Err(OracleError::LimitUndetectable)
}

fn telescope<P: Evaluable, Q: Evaluable>(
    pair: &PrimitivePair<P, Q>,
    a: i64,
    b: UpperBound,
    tol: f64,
) -> Result<Complex64, OracleError> {
    let upper = match b {
        UpperBound::Finite(b) => pair.primitive.eval(b + 1),
        UpperBound::Infinity => numeric_limit(&pair.primitive, tol)?,
    };
    Ok(upper - pair.primitive.eval(a))
}

/// F(b+1) − F(a), with a numeric limit of F when b = ∞.
pub fn telescoping_sum<P: Evaluable, Q: Evaluable>(
    pair: &PrimitivePair<P, Q>,
    a: i64,
    b: UpperBound,
    tol: f64,
) -> Result<f64, OracleError> {
    telescope(pair, a, b, tol).map(|z| z.re)
}

/// Telescoping result packaged as a report.
pub fn telescoping_report<P: Evaluable, Q: Evaluable>(
    pair: &PrimitivePair<P, Q>,
    a: i64,
    b: UpperBound,
    tol: f64,
    engine_value: Option<&Scalar>,
) -> Result<OracleReport, OracleError> {
    let value = telescope(pair, a, b, tol)?;
    let est = Estimate { value, iterations: 0 };
    Ok(OracleReport::from_estimate(OracleMethod::Telescoping, &est, engine_value, "cauchy-window"))
}

/// Direct summation of Σ_{u=a}^{b} f(u) for an ordinary range a ≤ b.
pub fn finite_sum_report(f: &ExpPoly, a: i64, b: i64, engine_value: &Scalar) -> OracleReport {
    const MAX_TERMS: i64 = 10_000_000;
    if a > b || b - a >= MAX_TERMS {
        return OracleReport::none();
    }
    let numeric = NumericExpPoly::new(f);
    let mut acc = Accumulator::default();
    for u in a..=b {
        acc.add(numeric.eval(u));
    }
    let est = Estimate { value: acc.value(), iterations: (b - a + 1) as u64 };
    OracleReport::from_estimate(OracleMethod::PartialSums, &est, Some(engine_value), "none")
}

/// Runs the strongest applicable oracle on Σ_{u≥a} f(u): partial sums for
/// classically convergent series, then Abel, otherwise none.
pub fn cross_check(f: &ExpPoly, a: i64, engine_value: &Scalar) -> OracleReport {
    let tol = 1e-12;
    if f.classify_convergence() == Convergence::SummableClassically {
        if let Ok(est) = partial_sums(&NumericExpPoly::new(f), a, tol) {
            return OracleReport::from_estimate(OracleMethod::PartialSums, &est, Some(engine_value), "richardson");
        }
    }
    match abel(f, a) {
        Ok(est) => OracleReport::from_estimate(OracleMethod::Abel, &est, Some(engine_value), "richardson"),
        Err(_) => OracleReport::none(),
    }
}
