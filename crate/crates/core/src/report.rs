//! Running parsed queries and shaping the machine-readable output.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{render_rational, Scalar};
use crate::engine::{
    eta_neg, factorial_ext, seq_limit, sum_finite, sum_infinite, zeta_neg, Classification, FactorialValue,
    OrderedZRange, SumValue, UpperBound,
};
use crate::exppoly::{ExpPoly, Mode, DEFAULT_FLOAT_TOLERANCE};
use crate::oracle::{
    cross_check, finite_sum_report, telescoping_report, telescoping_sum, OracleError, OracleMethod, OracleReport,
    PrimitivePair,
};
use crate::parser::{lower_choice, parse, BoundExpr, Env, Expr, ParseError, Query, QueryKind};

/// JSON Schema for [`Report`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Tolerance for checking a user-supplied primitive and its numeric limit.
const TELESCOPING_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("oracle disagrees with the engine: {0}")]
    Verification(String),
    #[error(transparent)]
    Oracle(OracleError),
}

impl RunError {
    /// 2 syntax, 3 unsupported term, 4 pole or precondition, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(ParseError::Syntax { .. }) => 2,
            RunError::Parse(ParseError::Unsupported(_)) => 3,
            RunError::Precondition(_) => 4,
            RunError::Verification(_) | RunError::Oracle(_) => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeReport {
    pub a: i64,
    /// Integer, or the string "inf".
    pub b: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueReport {
    /// "p/q" or "p/q + r/s·i"; null in float mode.
    pub exact: Option<String>,
    /// A number, or {"re", "im"} when the value is not real.
    pub float: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleReport {
    pub order: u32,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: String,
    pub term_canonical: Option<String>,
    pub range: Option<RangeReport>,
    pub mode: &'static str,
    pub classification: &'static str,
    pub value: ValueReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole: Option<PoleReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let value = match (&self.value.exact, &self.value.float) {
            (Some(e), _) => e.clone(),
            (None, Value::Null) => "pole".into(),
            (None, v) => float_text(v),
        };
        out.push_str(&format!("{value}  [{}, {}]\n", self.classification, self.mode));
        if let (Some(_), v @ Value::Number(_)) = (&self.value.exact, &self.value.float) {
            out.push_str(&format!("  ≈ {}\n", float_text(v)));
        }
        if let Some(p) = &self.pole {
            out.push_str(&format!("  simple pole, residue {}\n", p.residue));
        }
        if let Some(p) = &self.primitive {
            out.push_str(&format!("  primitive F = {p}\n"));
        }
        if let Some(o) = &self.oracle {
            match (o.method, o.estimate, o.discrepancy) {
                (Some(m), Some(e), Some(d)) => out.push_str(&format!("  oracle {m:?}: {e} (discrepancy {d:.3e})\n")),
                (Some(m), Some(e), None) => out.push_str(&format!("  oracle {m:?}: {e}\n")),
                _ => out.push_str("  no applicable oracle\n"),
            }
        }
        out
    }
}

fn float_text(v: &Value) -> String {
    match v {
        Value::Object(m) => format!("{} + {}·i", m["re"], m["im"]),
        other => other.to_string(),
    }
}

fn float_value(s: &Scalar, tol: f64) -> Value {
    let z = s.to_complex();
    let imag_zero = match s {
        Scalar::Exact(g) => g.is_real(),
        Scalar::Float(_) => z.im.abs() <= tol * z.re.abs().max(1.0),
    };
    if imag_zero {
        json!(z.re)
    } else {
        json!({ "re": z.re, "im": z.im })
    }
}

fn value_report(s: &Scalar, tol: f64) -> ValueReport {
    ValueReport { exact: s.as_exact().map(|g| g.to_string()), float: float_value(s, tol) }
}

fn range_report(a: i64, b: UpperBound) -> RangeReport {
    let b = match b {
        UpperBound::Finite(b) => json!(b),
        UpperBound::Infinity => json!("inf"),
    };
    RangeReport { a, b }
}

/// A sequence converges classically iff its polynomial part is constant and
/// every other base lies strictly inside the unit disc.
fn sequence_classification(f: &ExpPoly) -> Classification {
    let tol = f.mode().tolerance();
    let bounded = f.terms().iter().all(|(b, p)| {
        if b.is_one() {
            p.degree().unwrap_or(0) == 0
        } else {
            b.modulus_cmp_one(tol) == std::cmp::Ordering::Less
        }
    });
    if bounded {
        Classification::ConvergentClassical
    } else {
        Classification::AssignedDivergent
    }
}

/// Parses and runs a query in one step.
pub fn run_str(input: &str) -> Result<Report, RunError> {
    run(&parse(input)?)
}

pub fn run(query: &Query) -> Result<Report, RunError> {
    let tol = query.options.tolerance.unwrap_or(DEFAULT_FLOAT_TOLERANCE);
    let env = Env::with_theta(query.options.theta.as_ref())?;
    match &query.kind {
        QueryKind::Sum { var, a, b } => run_sum(query, var, *a, *b, &env, tol, false),
        QueryKind::Verify { var, a, b } => run_sum(query, var, *a, *b, &env, tol, true),
        QueryKind::Limit => {
            let term = query.term.as_ref().expect("limit has a term");
            let f = lower_choice(term, query.options.mode, tol, &env)?;
            let value = seq_limit(&f).value;
            Ok(Report {
                input: query.input.clone(),
                term_canonical: Some(f.render("n")),
                range: None,
                mode: f.mode().name(),
                classification: sequence_classification(&f).as_str(),
                value: value_report(&value, tol),
                primitive: None,
                oracle: None,
                pole: None,
            })
        }
        QueryKind::Zeta(s) | QueryKind::Eta(s) => {
            let is_zeta = matches!(query.kind, QueryKind::Zeta(_));
            if *s > 0 {
                return Err(RunError::Precondition(format!(
                    "only non-positive integer arguments are supported, got {s}"
                )));
            }
            let k = s.unsigned_abs() as usize;
            let value = if is_zeta { zeta_neg(k) } else { eta_neg(k) };
            let term = if is_zeta { format!("u^{k}") } else { format!("(-1)^(u - 1)*u^{k}") };
            Ok(Report {
                input: query.input.clone(),
                term_canonical: Some(term),
                range: Some(range_report(1, UpperBound::Infinity)),
                mode: Mode::Exact.name(),
                classification: Classification::AssignedDivergent.as_str(),
                value: value_report(&Scalar::from(value), tol),
                primitive: None,
                oracle: None,
                pole: None,
            })
        }
        QueryKind::Factorial(a) => {
            let (value, classification, pole) = match factorial_ext(*a) {
                FactorialValue::Value(v) => {
                    (value_report(&Scalar::from(v), tol), Classification::ConvergentClassical.as_str(), None)
                }
                FactorialValue::Pole { order, residue } => (
                    ValueReport { exact: None, float: Value::Null },
                    "Pole",
                    Some(PoleReport { order, residue: render_rational(&residue) }),
                ),
            };
            Ok(Report {
                input: query.input.clone(),
                term_canonical: Some("u".into()),
                range: Some(range_report(1, UpperBound::Finite(*a))),
                mode: Mode::Exact.name(),
                classification,
                value,
                primitive: None,
                oracle: None,
                pole,
            })
        }
    }
}

fn run_sum(
    query: &Query,
    var: &str,
    a: i64,
    b: UpperBound,
    env: &Env,
    tol: f64,
    verify: bool,
) -> Result<Report, RunError> {
    let term = query.term.as_ref().expect("sum has a term");
    let opts = &query.options;
    let f = match lower_choice(term, opts.mode, tol, env) {
        Ok(f) => f,
        Err(ParseError::Unsupported(reason)) => {
            return match &opts.primitive {
                Some(p) => run_telescoping(query, term, p, a, b, env, tol, verify),
                None => Err(ParseError::Unsupported(reason).into()),
            };
        }
        Err(e) => return Err(e.into()),
    };
    let sum: SumValue = match b {
        UpperBound::Infinity => sum_infinite(&f, a),
        UpperBound::Finite(b) => sum_finite(&f, a, b),
    };
    let primitive = sum.primitive.as_ref().filter(|_| opts.show_primitive).map(|p| p.function().render(var));
    let oracle = if verify || opts.verify {
        let mut report = match b {
            UpperBound::Infinity => cross_check(&f, a, &sum.value),
            UpperBound::Finite(b) => finite_sum_report(&f, a, b, &sum.value),
        };
        if report.method.is_none() {
            if let Some(p) = &opts.primitive {
                let pair = primitive_pair(p, term, env)?;
                report = telescoping_report(&pair, a, b, TELESCOPING_TOLERANCE, Some(&sum.value))
                    .map_err(RunError::Oracle)?;
            }
        }
        Some(report)
    } else {
        None
    };
    if verify {
        check_agreement(oracle.as_ref().expect("verify computes an oracle"))?;
    }
    Ok(Report {
        input: query.input.clone(),
        term_canonical: Some(f.render(var)),
        range: Some(range_report(a, b)),
        mode: f.mode().name(),
        classification: sum.classification.as_str(),
        value: value_report(&sum.value, tol),
        primitive,
        oracle,
        pole: None,
    })
}

fn primitive_pair(p: &Expr, term: &Expr, env: &Env) -> Result<PrimitivePair<BoundExpr, BoundExpr>, RunError> {
    let bind = |e: &Expr| BoundExpr { expr: e.clone(), theta: env.theta.clone() };
    PrimitivePair::new(bind(p), bind(term), TELESCOPING_TOLERANCE).map_err(|e| match e {
        OracleError::DeltaMismatch(x) => {
            RunError::Precondition(format!("the given primitive does not satisfy F(x+1) - F(x) = f(x) at x = {x}"))
        }
        other => RunError::Oracle(other),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_telescoping(
    query: &Query,
    term: &Expr,
    p: &Expr,
    a: i64,
    b: UpperBound,
    env: &Env,
    tol: f64,
    verify: bool,
) -> Result<Report, RunError> {
    let pair = primitive_pair(p, term, env)?;
    let value = telescoping_sum(&pair, a, b, TELESCOPING_TOLERANCE).map_err(RunError::Oracle)?;
    let through_infinity = match b {
        UpperBound::Finite(b) => !OrderedZRange::finite(a, b).is_finite_set(),
        UpperBound::Infinity => false,
    };
    let classification =
        if through_infinity { Classification::AssignedDivergent } else { Classification::ConvergentClassical };
    let oracle = if verify || query.options.verify {
        let report = telescoping_report(&pair, a, b, TELESCOPING_TOLERANCE, None).map_err(RunError::Oracle)?;
        Some(report)
    } else {
        None
    };
    Ok(Report {
        input: query.input.clone(),
        term_canonical: Some(term.render()),
        range: Some(range_report(a, b)),
        mode: "float",
        classification: classification.as_str(),
        value: value_report(&Scalar::float(value, 0.0), tol),
        primitive: Some(p.render()),
        oracle,
        pole: None,
    })
}

/// Agreement thresholds per oracle: partial sums and telescoping 1e−9,
/// Abel 1e−6 (relative for values above 1).
fn check_agreement(report: &OracleReport) -> Result<(), RunError> {
    let (Some(method), Some(d)) = (report.method, report.discrepancy) else {
        return Ok(());
    };
    let limit = match method {
        OracleMethod::Abel => 1e-6,
        OracleMethod::PartialSums | OracleMethod::Telescoping => 1e-9,
    };
    let scale = report.estimate.map_or(1.0, |e| e.abs().max(1.0));
    if d > limit * scale {
        return Err(RunError::Verification(format!("{method:?} discrepancy {d:e}")));
    }
    Ok(())
}
