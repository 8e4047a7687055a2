mod common;

use proptest::prelude::*;

use common::{gauss, q};
use divsum::antidiff::{antidifference, verify_delta};
use divsum::arith::{ratio, Rational, Scalar};
use divsum::engine::{assigned_limit, rule_group, sum_finite, sum_infinite, sum_over_z};
use divsum::exppoly::{ExpPoly, Mode, Polynomial};
use divsum::oracle::{abel_oracle, partial_sum_oracle, NumericExpPoly};
use divsum::parser::{eval_exact, lower, parse_expr, BinOp, Constant, Expr, ExprKind, Func, Span};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(Polynomial::from_rationals)
}

fn any_base() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(q(1, 1)),
        Just(q(-1, 1)),
        Just(q(2, 1)),
        Just(q(-1, 3)),
        Just(q(5, 2)),
        Just(gauss(ratio(0, 1), ratio(1, 1))),
        Just(gauss(ratio(3, 5), ratio(-4, 5))),
        Just(gauss(ratio(1, 3), ratio(2, 3))),
    ]
}

fn exp_poly() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((any_base(), poly(3)), 1..=3).prop_map(|t| ExpPoly::new(Mode::Exact, t).unwrap())
}

/// Pythagorean points e^{iθ} ≠ 1 with rational coordinates.
fn circle_base() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(q(-1, 1)),
        Just(gauss(ratio(0, 1), ratio(1, 1))),
        Just(gauss(ratio(0, 1), ratio(-1, 1))),
        Just(gauss(ratio(3, 5), ratio(4, 5))),
        Just(gauss(ratio(-5, 13), ratio(12, 13))),
        Just(gauss(ratio(-8, 17), ratio(-15, 17))),
        Just(gauss(ratio(7, 25), ratio(24, 25))),
    ]
}

fn contracting_base() -> impl Strategy<Value = Scalar> {
    (-9i64..=9).prop_filter("nonzero", |n| *n != 0).prop_map(|n| q(n, 10))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn primitive_roundtrip(f in exp_poly()) {
        let prim = antidifference(&f);
        prop_assert!(verify_delta(prim.function(), &f));
    }

    #[test]
    fn linearity(f in exp_poly(), g in exp_poly(), x in small_rational(), y in small_rational(), a in -8i64..8) {
        let (x, y) = (Scalar::from(x), Scalar::from(y));
        let lhs = sum_infinite(&(&f.scale(&x) + &g.scale(&y)), a).value;
        let rhs = &(&x * &sum_infinite(&f, a).value) + &(&y * &sum_infinite(&g, a).value);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interval_additivity(f in exp_poly(), a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let whole = sum_finite(&f, a, b).value;
        let parts = &sum_finite(&f, a, c).value + &sum_finite(&f, c + 1, b).value;
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn finite_sums_are_ordinary_sums(f in exp_poly(), a in -10i64..10, len in 0i64..12) {
        let b = a + len - 1;
        let direct = (a..=b).fold(Scalar::zero(), |acc, u| &acc + &f.evaluate(u));
        prop_assert_eq!(sum_finite(&f, a, b).value, direct);
    }

    #[test]
    fn whole_line_and_reversal(f in exp_poly(), a in -20i64..20, b in -20i64..20) {
        prop_assert!(sum_over_z(&f, a).is_zero());
        prop_assert_eq!(sum_finite(&f, a, b).value, -sum_finite(&f, b + 1, a - 1).value);
    }

    #[test]
    fn limit_symmetry(f in exp_poly(), alpha in -4i64..4) {
        let forward = assigned_limit(&f.shift(1 + alpha)).value;
        let backward = assigned_limit(&f.reflect().shift(-alpha)).value;
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn grouping_agrees(f in exp_poly()) {
        prop_assert_eq!(rule_group(&f), sum_infinite(&f, 1).value);
    }

    #[test]
    fn perturbed_primitive_same_sums(f in exp_poly(), c in small_rational(), a in -8i64..8, b in -8i64..8) {
        let moved = antidifference(&f).perturbed(&Scalar::from(c));
        let lim = assigned_limit(&moved.function().shift(1)).value;
        prop_assert_eq!(&lim - &moved.evaluate(a), sum_infinite(&f, a).value);
        prop_assert_eq!(&moved.evaluate(b + 1) - &moved.evaluate(a), sum_finite(&f, a, b).value);
    }

    #[test]
    fn convergent_sums_match_partial_sums(
        terms in prop::collection::vec((contracting_base(), poly(2)), 1..=2),
        a in -3i64..3,
    ) {
        let f = ExpPoly::new(Mode::Exact, terms).unwrap();
        let exact = sum_infinite(&f, a).value.to_complex();
        let oracle = partial_sum_oracle(&NumericExpPoly::new(&f), a, 1e-10).unwrap();
        prop_assert!((oracle - exact.re).abs() <= 1e-9 * exact.re.abs().max(1.0), "{} vs {}", oracle, exact.re);
    }

    #[test]
    fn unit_circle_sums_match_abel(
        base in circle_base(),
        p in poly(3),
        a in 0i64..3,
    ) {
        // conjugate pair keeps the sum real
        let f = ExpPoly::new(Mode::Exact, [(base.clone(), p.clone()), (base.conj(), p)]).unwrap();
        let exact = sum_infinite(&f, a).value.to_complex();
        let abel = abel_oracle(&f, a).unwrap();
        prop_assert!((abel - exact.re).abs() <= 1e-6 * exact.re.abs().max(1.0), "{} vs {}", abel, exact.re);
    }
}

fn span() -> Span {
    Span::default()
}

fn node(kind: ExprKind) -> Expr {
    Expr { kind, span: span() }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..40).prop_map(|n| node(ExprKind::Number(ratio(n as i64, 1), n.to_string()))),
        (0u32..100).prop_map(|n| node(ExprKind::Number(ratio(n as i64, 100), format!("{}.{:02}", n / 100, n % 100)))),
        Just(node(ExprKind::Var("u".into()))),
        Just(node(ExprKind::Const(Constant::Pi))),
        Just(node(ExprKind::Const(Constant::Theta))),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div), Just(BinOp::Pow)];
        let func = prop_oneof![Just(Func::Cos), Just(Func::Sin), Just(Func::Exp), Just(Func::Cosh)];
        prop_oneof![
            inner.clone().prop_map(|e| node(ExprKind::Neg(Box::new(e)))),
            (op, inner.clone(), inner.clone()).prop_map(|(op, l, r)| node(ExprKind::Binary(op, Box::new(l), Box::new(r)))),
            (func, inner).prop_map(|(f, e)| node(ExprKind::Call(f, Box::new(e)))),
        ]
    })
}

/// Terms that lower exactly: polynomials in u times powers of small integers.
fn exact_term() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (1i64..5).prop_map(|n| n.to_string()),
        Just("u".to_string()),
        (-3i64..=3).prop_filter("base", |b| *b != 0).prop_map(|b| format!("({b})^u")),
        (1i64..4).prop_map(|k| format!("u^{k}")),
    ];
    prop::collection::vec((atom.clone(), atom, prop_oneof![Just("+"), Just("-")]), 1..4).prop_map(|parts| {
        let tail: Vec<String> = parts.iter().map(|(x, y, op)| format!("{op} {x}*{y}")).collect();
        format!("1 {}", tail.join(" "))
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn render_parse_roundtrip(e in expr()) {
        let text = e.render();
        let back = parse_expr(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn lowering_agrees_with_evaluation(src in exact_term(), n in -6i64..10) {
        let e = parse_expr(&src).unwrap();
        let f = lower(&e, Mode::Exact).unwrap();
        let direct = eval_exact(&e, n, None).unwrap();
        prop_assert_eq!(f.evaluate(n), Scalar::Exact(direct), "{}", src);
    }
}
