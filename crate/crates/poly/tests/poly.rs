use hypertree_poly::{
    diagonal_multiplicity, diagonal_multiplicity_shifted, parse, Context, IntMatrix, IntPoly,
    Monomial, PolyError, PolyMatrix, SmallPoly, VarContext,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ctx(n: usize) -> Context {
    VarContext::indexed("x", n)
}

fn p(text: &str, c: &Context) -> IntPoly {
    parse(text, c).unwrap()
}

fn x(c: &Context, i: usize) -> IntPoly {
    IntPoly::var(c, i - 1)
}

fn diff(c: &Context, i: usize, j: usize) -> IntPoly {
    &x(c, i) - &x(c, j)
}

#[test]
fn difference_of_squares() {
    let c = ctx(2);
    let lhs = &diff(&c, 1, 2) * &(&x(&c, 1) + &x(&c, 2));
    assert_eq!(lhs, p("x1^2 - x2^2", &c));
}

#[test]
fn additive_inverse() {
    let c = ctx(3);
    let q = p("3*x1*x2 - 7*x3^2 + 5", &c);
    assert!((&q + &q.neg()).is_zero());
}

#[test]
fn derivative_of_cube() {
    let c = VarContext::new(["t"]);
    let t3 = IntPoly::var(&c, 0).pow(3).unwrap();
    assert_eq!(t3.derivative(0), p("3*t^2", &c));
}

#[test]
fn substitution_is_capture_free() {
    let c = VarContext::new(["x1", "x2", "y", "u1"]);
    let f = p("x1 - x2", &c);
    let g = f.substitute(0, &p("y + u1", &c)).unwrap();
    assert_eq!(g, p("y + u1 - x2", &c));
    // x1 -> x1 + x2 applied to x1*x2 must not feed back into x2.
    let h = p("x1*x2", &c).substitute(0, &p("x1 + x2", &c)).unwrap();
    assert_eq!(h, p("x1*x2 + x2^2", &c));
}

#[test]
fn context_mismatch_is_an_error() {
    let a = p("x1", &ctx(2));
    let b = p("x1", &ctx(3));
    assert_eq!(a.checked_add(&b), Err(PolyError::ContextMismatch));
    assert!(matches!(
        parse::<BigInt>("z", &ctx(2)),
        Err(PolyError::UnknownVariable(_))
    ));
}

#[test]
fn two_by_two_determinant() {
    let c = VarContext::new(["a", "b", "c", "d"]);
    let v = |i| IntPoly::var(&c, i);
    let m = PolyMatrix::from_rows(&c, vec![vec![v(0), v(1)], vec![v(2), v(3)]]).unwrap();
    assert_eq!(m.determinant().unwrap(), p("a*d - b*c", &c));
    assert_eq!(m.determinant_bareiss().unwrap(), p("a*d - b*c", &c));
}

#[test]
fn joubert_determinant_matches_bracket_identity() {
    let c = ctx(6);
    let one = IntPoly::one(&c);
    let row = |i, j| vec![&x(&c, i) * &x(&c, j), &x(&c, i) + &x(&c, j), one.clone()];
    let m = IntMatrix::from_rows(&c, vec![row(1, 2), row(3, 4), row(5, 6)]).unwrap();
    let det = m.determinant().unwrap();
    let br = |a, b| diff(&c, a, b);
    let rhs = &(&(&br(1, 4) * &br(3, 6)) * &br(2, 5)) + &(&(&br(1, 6) * &br(2, 3)) * &br(4, 5));
    assert_eq!(det.canonicalize().unwrap(), rhs.canonicalize().unwrap());
    assert!(det == rhs || det == rhs.neg());
}

#[test]
fn vandermonde_three() {
    let c = ctx(3);
    let one = IntPoly::one(&c);
    let rows = (1..=3)
        .map(|i| vec![one.clone(), x(&c, i), x(&c, i).pow(2).unwrap()])
        .collect();
    let det = IntMatrix::from_rows(&c, rows)
        .unwrap()
        .determinant()
        .unwrap();
    let prod = &(&diff(&c, 2, 1) * &diff(&c, 3, 1)) * &diff(&c, 3, 2);
    assert_eq!(det, prod);
}

#[test]
fn canonicalize_examples() {
    let c = ctx(2);
    let q = p("-2*x1 + 2*x2", &c);
    assert_eq!(q.canonicalize().unwrap(), p("x1 - x2", &c));
    assert_eq!(
        q.canonicalize().unwrap(),
        q.scale(&BigInt::from(-3)).canonicalize().unwrap()
    );
    assert_eq!(
        IntPoly::zero(&c).canonicalize(),
        Err(PolyError::ZeroPolynomial)
    );
}

#[test]
fn exact_division() {
    let c = ctx(2);
    let q = p("x1^2 - x2^2", &c).div_exact(&p("x1 - x2", &c)).unwrap();
    assert_eq!(q, p("x1 + x2", &c));
    assert_eq!(
        p("x1^2 + x2", &c).div_exact(&p("x1 - x2", &c)),
        Err(PolyError::InexactDivision)
    );
}

#[test]
fn text_round_trip_and_whitespace() {
    let c = ctx(7);
    let q = p("-1*x2*x3*x7^2 + 1*x1*x2*x3*x7 - 12*x4", &c);
    assert_eq!(q.to_string(), "1*x1*x2*x3*x7 - 1*x2*x3*x7^2 - 12*x4");
    assert_eq!(p(&q.to_string(), &c), q);
    assert_eq!(p("  1 *x1*  x2*x3 * x7-x2*x3*x7 ^ 2-12*x4 ", &c), q);
}

#[test]
fn multiplicity_examples() {
    let c = ctx(4);
    assert_eq!(
        diagonal_multiplicity(&diff(&c, 1, 2).pow(3).unwrap(), &[0, 1]).unwrap(),
        3
    );
    let vdm = &(&diff(&c, 2, 1) * &diff(&c, 3, 1)) * &diff(&c, 3, 2);
    assert_eq!(diagonal_multiplicity(&vdm, &[0, 1, 2]).unwrap(), 3);
    let mixed = p("x1*x3 - x2*x3 + x4^5", &c);
    assert_eq!(diagonal_multiplicity(&mixed, &[0, 1]).unwrap(), 0);
    assert!(diagonal_multiplicity(&mixed, &[0]).is_err());
    assert!(diagonal_multiplicity(&IntPoly::zero(&c), &[0, 1]).is_err());
}

fn small_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = SmallPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u16..3, nvars), -4i64..5),
        0..max_terms,
    )
    .prop_map(move |terms| {
        let c = VarContext::indexed("x", nvars);
        SmallPoly::from_terms(
            &c,
            terms
                .into_iter()
                .map(|(e, k)| (Monomial::from_exponents(e), k)),
        )
    })
}

fn linear_form(nvars: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, nvars)
}

fn to_big(q: &SmallPoly) -> IntPoly {
    q.map_coeffs(|&k| BigInt::from(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative(a in small_poly(3, 5), b in small_poly(3, 5), d in small_poly(3, 5)) {
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
    }

    #[test]
    fn canonicalize_is_idempotent(a in small_poly(3, 6)) {
        let a = to_big(&a);
        prop_assume!(!a.is_zero());
        let once = a.canonicalize().unwrap();
        prop_assert_eq!(once.canonicalize().unwrap(), once.clone());
        // The canonical form divides the input with a constant quotient.
        let q = a.div_exact(&once).unwrap();
        prop_assert!(q.total_degree() == Some(0));
    }

    #[test]
    fn identity_substitution_commutes_with_derivative(a in small_poly(3, 6)) {
        let t = SmallPoly::var(a.context(), 0);
        prop_assert_eq!(a.substitute(0, &t).unwrap().derivative(0), a.derivative(0));
    }

    #[test]
    fn laplace_agrees_with_bareiss(k in 4usize..6, forms in prop::collection::vec(linear_form(5), 36)) {
        let c = VarContext::indexed("x", 5);
        let mut m = IntMatrix::zeros(&c, k, k);
        for r in 0..k {
            for col in 0..k {
                let f = &forms[r * 6 + col];
                let e = IntPoly::from_terms(&c, (0..5).map(|v| (Monomial::var(5, v), BigInt::from(f[v]))));
                m.set(r, col, e).unwrap();
            }
        }
        prop_assert_eq!(m.determinant().unwrap(), m.determinant_bareiss().unwrap());
    }

    #[test]
    fn multiplicity_is_additive(a in small_poly(4, 4), b in small_poly(4, 4)) {
        let (a, b) = (to_big(&a), to_big(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let c = a.context().clone();
        // Bias toward vanishing along the diagonal.
        let a = &a * &diff(&c, 1, 2);
        let ab = &a * &b;
        let i = [0usize, 1, 2];
        prop_assert_eq!(
            diagonal_multiplicity(&ab, &i).unwrap(),
            diagonal_multiplicity(&a, &i).unwrap() + diagonal_multiplicity(&b, &i).unwrap()
        );
    }

    #[test]
    fn multiplicity_symmetries_and_fast_route(a in small_poly(4, 4), shift in -3i64..4) {
        let a = to_big(&a);
        prop_assume!(!a.is_zero());
        let c = a.context().clone();
        let base = diagonal_multiplicity(&a, &[0, 1, 3]).unwrap();
        prop_assert_eq!(base, diagonal_multiplicity(&a, &[3, 0, 1]).unwrap());
        let mut shifted = a.clone();
        for v in 0..4 {
            let s = &IntPoly::var(&c, v) + &IntPoly::constant(&c, BigInt::from(shift));
            shifted = shifted.substitute(v, &s).unwrap();
        }
        prop_assert_eq!(base, diagonal_multiplicity(&shifted, &[0, 1, 3]).unwrap());
        // Rewriting in differences makes the polynomial translation invariant.
        let mut inv = a.substitute(3, &IntPoly::zero(&c)).unwrap();
        for v in 0..3 {
            inv = inv.substitute(v, &diff(&c, v + 1, 4)).unwrap();
        }
        prop_assume!(!inv.is_zero());
        prop_assert!(inv.is_translation_invariant());
        for set in [vec![0usize, 1], vec![0, 1, 2], vec![1, 3], vec![0, 1, 2, 3]] {
            prop_assert_eq!(
                diagonal_multiplicity(&inv, &set).unwrap(),
                diagonal_multiplicity_shifted(&inv, &set).unwrap()
            );
        }
    }
}
