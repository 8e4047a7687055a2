//! The re-ordered integer line 0, 1, 2, …, −2, −1.

use std::cmp::Ordering;
use std::fmt;

/// `a ≺ b`: zero precedes everything, non-negatives precede negatives,
/// positives keep their usual order, and among negatives the one with the
/// larger magnitude comes first.
pub fn precedes(a: i64, b: i64) -> bool {
    if a == b {
        return false;
    }
    match (a.signum(), b.signum()) {
        (0, _) => true,
        (_, 0) => false,
        (1, -1) => true,
        (-1, 1) => false,
        (1, 1) => a < b,
        _ => b.unsigned_abs() < a.unsigned_abs(),
    }
}

/// `a ⪯ b`
pub fn precedes_or_equal(a: i64, b: i64) -> bool {
    a == b || precedes(a, b)
}

/// Total order on ℤ induced by [`precedes`].
pub fn reordered_cmp(a: i64, b: i64) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if precedes(a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBound {
    Finite(i64),
    Infinity,
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Finite(b) => write!(f, "{b}"),
            UpperBound::Infinity => f.write_str("inf"),
        }
    }
}

/// A summation range Z_{a,b}: the segment [a, b] of the re-ordered line
/// when a ⪯ b, otherwise the wrap-around [a, −1] ∪ [0, b].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderedZRange {
    pub a: i64,
    pub b: UpperBound,
}

/// A maximal run of consecutive integers in usual order; `end = None` means
/// the run continues to +∞ and `start = None` that it comes from −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: Option<i64>,
    pub end: Option<i64>,
}

impl OrderedZRange {
    pub fn new(a: i64, b: UpperBound) -> Self {
        OrderedZRange { a, b }
    }

    pub fn finite(a: i64, b: i64) -> Self {
        OrderedZRange { a, b: UpperBound::Finite(b) }
    }

    pub fn to_infinity(a: i64) -> Self {
        OrderedZRange { a, b: UpperBound::Infinity }
    }

    /// b ≺ a: the range is [a, −1] ∪ [0, b].
    pub fn is_wrap(&self) -> bool {
        match self.b {
            UpperBound::Finite(b) => precedes(b, self.a),
            UpperBound::Infinity => false,
        }
    }

    /// Whether the range is a finite set of integers.
    pub fn is_finite_set(&self) -> bool {
        match self.b {
            UpperBound::Finite(b) => self.a <= b,
            UpperBound::Infinity => false,
        }
    }

    /// The range as runs in usual integer order.
    pub fn runs(&self) -> Vec<Run> {
        let b = match self.b {
            UpperBound::Infinity => return vec![Run { start: Some(self.a), end: None }],
            UpperBound::Finite(b) => b,
        };
        if self.a <= b {
            return vec![Run { start: Some(self.a), end: Some(b) }];
        }
        // Crosses the point at infinity between the positives and negatives.
        vec![Run { start: Some(self.a), end: None }, Run { start: None, end: Some(b) }]
    }

    /// Whether `x` belongs to the range.
    pub fn contains(&self, x: i64) -> bool {
        match self.b {
            UpperBound::Infinity => x >= self.a,
            UpperBound::Finite(b) => {
                if self.is_wrap() {
                    precedes_or_equal(self.a, x) || precedes_or_equal(x, b)
                } else {
                    precedes_or_equal(self.a, x) && precedes_or_equal(x, b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    /// −1/a < −1/b with 0⁻¹ = ∞, so −1/0 = −∞.
    fn precedes_by_reciprocal(a: i64, b: i64) -> bool {
        let key = |x: i64| -> Option<Rational> {
            if x == 0 {
                None
            } else {
                Some(Rational::new((-1).into(), x.into()))
            }
        };
        match (key(a), key(b)) {
            (None, None) => false,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => x < y,
        }
    }

    #[test]
    fn examples() {
        assert!(precedes(0, -5));
        assert!(precedes(3, -2));
        assert!(!precedes(-2, -7));
        assert!(precedes(-7, -2));
    }

    #[test]
    fn case_rules_match_reciprocal_definition() {
        for a in -30..=30 {
            for b in -30..=30 {
                assert_eq!(precedes(a, b), precedes_by_reciprocal(a, b), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn strict_total_order() {
        let xs: Vec<i64> = (-12..=12).collect();
        for &a in &xs {
            assert!(!precedes(a, a));
            for &b in &xs {
                if a != b {
                    assert!(precedes(a, b) ^ precedes(b, a));
                }
                for &c in &xs {
                    if precedes(a, b) && precedes(b, c) {
                        assert!(precedes(a, c));
                    }
                }
            }
        }
        let mut sorted = xs.clone();
        sorted.sort_by(|&a, &b| reordered_cmp(a, b));
        assert_eq!(sorted.first(), Some(&0));
        assert_eq!(sorted.last(), Some(&-1));
    }

    #[test]
    fn ranges() {
        let wrap = OrderedZRange::finite(2, 0);
        assert!(wrap.is_wrap());
        assert!(!wrap.is_finite_set());
        assert!(wrap.contains(0) && wrap.contains(2) && wrap.contains(-1) && !wrap.contains(1));
        let classical = OrderedZRange::finite(-2, 3);
        assert!(classical.is_wrap());
        assert!(classical.is_finite_set());
        assert!((-2..=3).all(|x| classical.contains(x)) && !classical.contains(4));
        let through_infinity = OrderedZRange::finite(3, -2);
        assert!(!through_infinity.is_wrap());
        assert!(through_infinity.contains(1000) && through_infinity.contains(-1000) && !through_infinity.contains(-1));
        assert_eq!(through_infinity.runs().len(), 2);
    }
}
