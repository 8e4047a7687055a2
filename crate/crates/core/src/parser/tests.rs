use super::*;
use crate::arith::{ratio, GaussianRational, Scalar};
use crate::exppoly::{ExpPoly, Mode, Polynomial};

fn lower_auto(s: &str) -> ExpPoly {
    lower_choice(&parse_expr(s).unwrap(), ModeChoice::Auto, 1e-12, &Env::default()).unwrap()
}

#[test]
fn query_examples() {
    let q = parse("sum (-1)^(u-1)*u, u=1..inf").unwrap();
    assert_eq!(q.kind, QueryKind::Sum { var: "u".into(), a: 1, b: UpperBound::Infinity });
    assert_eq!(q.term.unwrap().render(), "(-1)^(u - 1)*u");

    let q = parse("limit n^2").unwrap();
    assert_eq!(q.kind, QueryKind::Limit);
    assert_eq!(q.term.unwrap(), parse_expr("n^2").unwrap());

    let q = parse("sum 1/u, u=1..inf").unwrap();
    let err = lower(q.term.as_ref().unwrap(), Mode::Exact).unwrap_err();
    assert!(matches!(err, ParseError::Unsupported(_)));

    assert_eq!(parse("zeta -4").unwrap().kind, QueryKind::Zeta(-4));
    assert_eq!(parse("factorial 5").unwrap().kind, QueryKind::Factorial(5));
    assert_eq!(
        parse("sum u, n=-3..4").unwrap().kind,
        QueryKind::Sum { var: "n".into(), a: -3, b: UpperBound::Finite(4) }
    );
    assert_eq!(parse("sum u").unwrap().kind, QueryKind::Sum { var: "u".into(), a: 1, b: UpperBound::Infinity });
}

#[test]
fn precedence() {
    let e = parse_expr("-2^u").unwrap();
    assert!(matches!(e.kind, ExprKind::Neg(_)));
    let e = parse_expr("2^3^2").unwrap();
    assert_eq!(e, parse_expr("2^(3^2)").unwrap());
    let e = parse_expr("1 - 2 - 3").unwrap();
    assert_eq!(e, parse_expr("(1 - 2) - 3").unwrap());
    let e = parse_expr("-u*3").unwrap();
    assert_eq!(e, parse_expr("(-u)*3").unwrap());
    let e = parse_expr("2^-u").unwrap();
    assert_eq!(e, parse_expr("2^(-u)").unwrap());
}

#[test]
fn syntax_errors_carry_positions() {
    match parse("sum u +, u=1..inf") {
        Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 7),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("sum (u"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse("sum foo(u)"), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse("frobnicate u"), Err(ParseError::Syntax { .. })));
}

#[test]
fn roundtrip() {
    for s in [
        "(-1)^(u - 1)*u",
        "2^u*u^2",
        "cos(u*pi/2)",
        "-(u + 1)^3/4",
        "1.25*u - -u",
        "u - (u - 1)",
        "2^(3^u)",
        "(2^3)^u",
        "exp(-u/2)*sinh(2*u + 1)",
        "u*(-3)",
        "-u^2 + theta",
    ] {
        let once = parse_expr(s).unwrap();
        let twice = parse_expr(&once.render()).unwrap();
        assert_eq!(once, twice, "{s}");
        assert_eq!(once.render(), twice.render());
    }
}

#[test]
fn lowering_examples() {
    let f = lower_auto("cos(u*pi/2)");
    assert!(f.mode().is_exact());
    let half = Polynomial::constant(Scalar::from(ratio(1, 2)));
    let expected = ExpPoly::new(
        Mode::Exact,
        [(Scalar::i(), half.clone()), (Scalar::Exact(GaussianRational::i().conj()), half)],
    )
    .unwrap();
    assert_eq!(f, expected);

    assert_eq!(lower_auto("2^u*u^2"), ExpPoly::single(Scalar::from_int(2), Polynomial::monomial(2)));

    let f = lower_auto("cosh(u)");
    assert!(!f.mode().is_exact());
    assert_eq!(f.terms().len(), 2);
    let e = std::f64::consts::E;
    let bases: Vec<f64> = f.terms().iter().map(|(b, _)| b.to_complex().re).collect();
    assert!(bases.iter().any(|b| (b - e).abs() < 1e-12) && bases.iter().any(|b| (b - 1.0 / e).abs() < 1e-12));

    assert!(matches!(lower(&parse_expr("cosh(u)").unwrap(), Mode::Exact), Err(ParseError::Unsupported(_))));
    assert!(matches!(lower(&parse_expr("u^u").unwrap(), Mode::Exact), Err(ParseError::Unsupported(_))));
    assert!(matches!(lower(&parse_expr("u^(1/2)").unwrap(), Mode::Exact), Err(ParseError::Unsupported(_))));
    assert!(matches!(lower(&parse_expr("cos(u^2)").unwrap(), Mode::Exact), Err(ParseError::Unsupported(_))));
}

#[test]
fn theta_binding() {
    let q = parse("sum cos(u*theta), u=1..inf, theta=pi/2").unwrap();
    let env = Env::with_theta(q.options.theta.as_ref()).unwrap();
    let f = lower_choice(q.term.as_ref().unwrap(), ModeChoice::Auto, 1e-12, &env).unwrap();
    assert!(f.mode().is_exact());
    let unbound = lower(&parse_expr("cos(u*theta)").unwrap(), Mode::Exact);
    assert!(matches!(unbound, Err(ParseError::Unsupported(_))));
}

#[test]
fn lowered_matches_direct_evaluation() {
    let exact = ["(-1)^(u-1)*u", "2^u*u^2 - 3/7*u", "cos(u*pi/2) + sin(u*pi/2)*u", "(1/3)^(2*u-1)", "(u+1)^4/5"];
    for s in exact {
        let e = parse_expr(s).unwrap();
        let f = lower(&e, Mode::Exact).unwrap();
        for n in -10..10 {
            assert_eq!(f.evaluate(n), Scalar::Exact(eval_exact(&e, n, None).unwrap()), "{s} at {n}");
        }
    }
    let float = ["cosh(u)", "cos(u) - sin(2*u + 1)", "exp(-u/3)*u^2", "cos(u*pi/3)", "(1.5)^(u/2)"];
    for s in float {
        let e = parse_expr(s).unwrap();
        let f = lower(&e, Mode::float()).unwrap();
        for n in -10..10 {
            let direct = eval_float(&e, n, None);
            let lowered = f.evaluate(n).to_complex();
            assert!((direct - lowered).norm() < 1e-9 * direct.norm().max(1.0), "{s} at {n}");
        }
    }
}
