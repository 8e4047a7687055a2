//! Summation of divergent and convergent series over exponential polynomials.

pub mod antidiff;
pub mod arith;
pub mod engine;
pub mod exppoly;
pub mod oracle;
pub mod parser;
pub mod report;
