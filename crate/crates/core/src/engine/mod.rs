//! The summation method: assigned limits, sums over ranges of the re-ordered
//! integer line, closed-form rules and the extensions to products.

mod closed_forms;
mod extensions;
mod limits;
mod order;
mod rules;
mod sums;
mod trig;

pub use closed_forms::{alt_arith_series, arith_series, eta_neg, geom_series, zeta_neg};
pub use extensions::{check_extended_regularity, factorial_ext, FactorialValue};
pub use limits::{assigned_limit, seq_limit, AssignedLimit};
pub use order::{precedes, precedes_or_equal, reordered_cmp, OrderedZRange, Run, UpperBound};
pub use rules::{rule_commute, rule_even, rule_group, rule_quasi_even, rule_shift_identity, rule_split, Sign};
pub use sums::{cauchy_product, sum_finite, sum_infinite, sum_over_z, Classification, SumValue};
pub use trig::{trig_series, trig_term, Angle, TrigVariant, TRIG_TOLERANCE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("term is not even")]
    NotEven,
    #[error("term does not satisfy f(-x) = f(x - eps*t)")]
    NotQuasiEven,
    #[error("pole: {0}")]
    Pole(String),
    #[error("imaginary residue {0:e} exceeds tolerance")]
    ImaginaryResidue(f64),
}
