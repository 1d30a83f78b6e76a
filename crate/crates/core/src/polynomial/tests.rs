use proptest::prelude::*;

use super::*;
use crate::algebra::AlgebraKind::{Octonion, Quaternion};
use crate::sample;

fn q(c: [f64; 4]) -> Element {
    Element::new(Quaternion, &c).unwrap()
}

fn unit(kind: AlgebraKind, i: usize) -> Element {
    Element::basis(kind, i)
}

fn left(kind: AlgebraKind, coeffs: Vec<Element>) -> OrdinaryPolynomial {
    OrdinaryPolynomial::new(kind, Side::Left, coeffs).unwrap()
}

/// `t³ + (i+j+k)t² + (−i+j−k)t + 1`, whose only root is `−i`.
fn cubic_example() -> OrdinaryPolynomial {
    left(
        Quaternion,
        vec![
            q([1.0, 0.0, 0.0, 0.0]),
            q([0.0, -1.0, 1.0, -1.0]),
            q([0.0, 1.0, 1.0, 1.0]),
            q([1.0, 0.0, 0.0, 0.0]),
        ],
    )
}

fn close(a: &OrdinaryPolynomial, b: &OrdinaryPolynomial, tol: f64) -> bool {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).all(|k| a.coeff(k).distance(&b.coeff(k)) <= tol)
}

#[test]
fn evaluate_examples() {
    let f = OrdinaryPolynomial::from_reals(Quaternion, Side::Left, &[1.0, 0.0, 1.0]);
    assert_eq!(f.evaluate(&unit(Quaternion, 2)).unwrap(), Element::zero(Quaternion));
    let c = cubic_example();
    assert!(c.evaluate(&-unit(Quaternion, 1)).unwrap().norm() < 1e-15);
    // Hand expansion: (−j)³ = j, (−j)² = −1, (−i+j−k)(−j) = k + 1 − i.
    assert_eq!(c.evaluate(&-unit(Quaternion, 2)).unwrap(), q([2.0, -2.0, 0.0, 0.0]));
    assert!(c.evaluate(&unit(Octonion, 1)).is_err());
}

#[test]
fn right_evaluation_puts_coefficients_after_powers() {
    let i = unit(Quaternion, 1);
    let j = unit(Quaternion, 2);
    let f = OrdinaryPolynomial::new(Quaternion, Side::Right, vec![Element::zero(Quaternion), i]).unwrap();
    // t·i at t = j is j·i = −k, while i·t is k.
    assert_eq!(f.evaluate(&j).unwrap(), -unit(Quaternion, 3));
    assert_eq!(f.with_side(Side::Left).evaluate(&j).unwrap(), unit(Quaternion, 3));
}

#[test]
fn convolution_examples() {
    let h = Quaternion;
    let (i, j, k) = (unit(h, 1), unit(h, 2), unit(h, 3));
    let p = OrdinaryPolynomial::linear(i, Side::Left)
        .product_convolution(&OrdinaryPolynomial::linear(-i, Side::Left))
        .unwrap();
    assert_eq!(p, OrdinaryPolynomial::from_reals(h, Side::Left, &[1.0, 0.0, 1.0]));

    let chain = OrdinaryPolynomial::linear(-k, Side::Left)
        .product_convolution(&OrdinaryPolynomial::linear(-j, Side::Left))
        .unwrap()
        .product_convolution(&OrdinaryPolynomial::linear(-i, Side::Left))
        .unwrap();
    assert_eq!(chain, cubic_example());

    let one = OrdinaryPolynomial::constant(Element::one(h), Side::Left);
    assert_eq!(cubic_example().product_convolution(&one).unwrap(), cubic_example());
    assert_eq!(
        cubic_example().product_convolution(&one.with_side(Side::Right)),
        Err(Error::SideMismatch)
    );
}

#[test]
fn pointwise_differs_from_convolution() {
    let h = Quaternion;
    let (i, j, k) = (unit(h, 1), unit(h, 2), unit(h, 3));
    let f = OrdinaryPolynomial::linear(i, Side::Left);
    let g = OrdinaryPolynomial::linear(j, Side::Left);
    let fg = f.product_convolution(&g).unwrap();
    let pw = pointwise_product(evaluator(&f), evaluator(&g));
    let zero = Element::zero(h);
    assert_eq!(pw(&zero), k);
    assert_eq!(fg.coeff(0), k);
    assert_eq!(pw(&i), zero);
    // fg(i) = i² − (i + j)i + k = 2k.
    let conv = fg.evaluate(&i).unwrap();
    assert_eq!(conv, k * 2.0);
    assert!(conv.distance(&pw(&i)) >= 0.1);
}

#[test]
fn pointwise_square_of_identity() {
    let mut rng = sample::seeded(3);
    let id = OrdinaryPolynomial::power(Octonion, Side::Left, 1);
    let sq = pointwise_product(evaluator(&id), evaluator(&id));
    for _ in 0..100 {
        let c = sample::normal_element(Octonion, &mut rng);
        assert!(sq(&c).distance(&(c * c)) < 1e-12);
    }
}

/// The coordinate formula for a quaternion product of maps, written out.
fn quaternion_formula(f: &[f64], g: &[f64]) -> [f64; 4] {
    [
        f[0] * g[0] - f[1] * g[1] - f[2] * g[2] - f[3] * g[3],
        f[0] * g[1] + f[1] * g[0] + f[2] * g[3] - f[3] * g[2],
        f[0] * g[2] + f[2] * g[0] + f[3] * g[1] - f[1] * g[3],
        f[0] * g[3] + f[3] * g[0] + f[1] * g[2] - f[2] * g[1],
    ]
}

#[test]
fn pointwise_matches_coordinate_formula() {
    let mut rng = sample::seeded(11);
    let f = sample::normal_polynomial(Quaternion, 3, &mut rng);
    let g = sample::normal_polynomial(Quaternion, 2, &mut rng);
    let pw = pointwise_product(evaluator(&f), evaluator(&g));
    for _ in 0..1000 {
        let t = sample::normal_element(Quaternion, &mut rng);
        let (fv, gv) = (f.eval(&t), g.eval(&t));
        let formula = Element::new(Quaternion, &quaternion_formula(fv.coords(), gv.coords())).unwrap();
        assert!(pw(&t).distance(&formula) <= 1e-12 * (1.0 + formula.norm()));
    }
}

#[test]
fn conjugation() {
    let i = unit(Quaternion, 1);
    let f = OrdinaryPolynomial::linear(i, Side::Left);
    assert_eq!(f.conjugate_polynomial(), OrdinaryPolynomial::linear(-i, Side::Left));
    assert_eq!(cubic_example().conjugate_polynomial().conjugate_polynomial(), cubic_example());
    let real = OrdinaryPolynomial::from_reals(Octonion, Side::Left, &[1.0, -2.0, 3.0]);
    assert_eq!(real.conjugate_polynomial(), real);
}

#[test]
fn norm_polynomial_examples() {
    let i = unit(Quaternion, 1);
    let f = OrdinaryPolynomial::linear(i, Side::Left);
    assert_eq!(f.norm_polynomial().unwrap(), RealPolynomial::new(vec![1.0, 0.0, 1.0]));
    let g = OrdinaryPolynomial::from_reals(Quaternion, Side::Left, &[1.0, 0.0, 1.0]);
    assert_eq!(g.norm_polynomial().unwrap(), RealPolynomial::new(vec![1.0, 0.0, 2.0, 0.0, 1.0]));
    assert_eq!(
        OrdinaryPolynomial::zero(Quaternion, Side::Left).norm_polynomial(),
        Err(Error::ZeroPolynomial)
    );
    let mut rng = sample::seeded(5);
    for d in 1..6 {
        let f = sample::normal_polynomial(Octonion, d, &mut rng);
        assert_eq!(f.norm_polynomial().unwrap().degree(), 2 * d as isize);
    }
}

#[test]
fn divide_linear_examples() {
    let h = Quaternion;
    let i = unit(h, 1);
    let f = OrdinaryPolynomial::from_reals(h, Side::Left, &[1.0, 0.0, 1.0]);
    let (g, r) = f.divide_linear(&i).unwrap();
    assert_eq!(g, left(h, vec![i, Element::one(h)]));
    assert_eq!(r, Element::zero(h));
    assert_eq!(g.product_convolution(&OrdinaryPolynomial::linear(i, Side::Left)).unwrap(), f);

    let (_, r) = cubic_example().divide_linear(&-i).unwrap();
    assert!(r.norm() < 1e-15);

    let t = OrdinaryPolynomial::power(h, Side::Left, 1);
    let (g, r) = t.divide_linear(&Element::one(h)).unwrap();
    assert_eq!(g, OrdinaryPolynomial::constant(Element::one(h), Side::Left));
    assert_eq!(r, Element::one(h));

    let c = OrdinaryPolynomial::constant(i, Side::Left);
    assert!(matches!(c.divide_linear(&i), Err(Error::DegreeTooSmall { need: 1, got: 0 })));
}

#[test]
fn divide_linear_right_side() {
    let mut rng = sample::seeded(21);
    for kind in [Quaternion, Octonion] {
        for _ in 0..50 {
            let f = sample::normal_polynomial(kind, 4, &mut rng).with_side(Side::Right);
            let c = sample::normal_element(kind, &mut rng);
            let (g, r) = f.divide_linear(&c).unwrap();
            assert_eq!(g.side(), Side::Right);
            let back = OrdinaryPolynomial::linear(c, Side::Right)
                .product_convolution(&g)
                .unwrap()
                .checked_add(&OrdinaryPolynomial::constant(r, Side::Right))
                .unwrap();
            assert!(close(&back, &f, 1e-10 * (1.0 + f.coefficient_norm())));
            let value = f.evaluate(&c).unwrap();
            assert!(value.distance(&r) <= 1e-9 * (1.0 + value.norm()));
        }
    }
}

#[test]
fn divide_characteristic_examples() {
    let h = Quaternion;
    let f = OrdinaryPolynomial::from_reals(h, Side::Left, &[1.0, 0.0, 1.0]);
    let (g, r1, r0) = f.divide_characteristic(0.0, 1.0).unwrap();
    assert_eq!(g, OrdinaryPolynomial::constant(Element::one(h), Side::Left));
    assert!(r1.is_zero() && r0.is_zero());

    let t3 = OrdinaryPolynomial::power(h, Side::Left, 3);
    let (g, r1, r0) = t3.divide_characteristic(0.0, 1.0).unwrap();
    assert_eq!(g, OrdinaryPolynomial::power(h, Side::Left, 1));
    assert_eq!(r1, Element::real(h, -1.0));
    assert_eq!(r0, Element::zero(h));

    let qc = OrdinaryPolynomial::from_reals(Octonion, Side::Left, &[0.5f64.powi(2) + 4.0, -1.0, 1.0]);
    let (g, r1, r0) = qc.divide_characteristic(0.5, 2.0).unwrap();
    assert_eq!(g, OrdinaryPolynomial::constant(Element::one(Octonion), Side::Left));
    assert!(r1.norm() < 1e-15 && r0.norm() < 1e-15);

    assert!(qc.divide_characteristic(0.5, -1.0).is_err());
}

#[test]
fn divide_characteristic_reconstructs() {
    let mut rng = sample::seeded(8);
    for kind in [Quaternion, Octonion] {
        let f = sample::normal_polynomial(kind, 5, &mut rng);
        let (h, r1, r0) = f.divide_characteristic(0.3, 1.1).unwrap();
        let qpoly = OrdinaryPolynomial::from_reals(kind, Side::Left, RealPolynomial::characteristic(0.3, 1.1).coeffs());
        let back = h
            .product_convolution(&qpoly)
            .unwrap()
            .checked_add(&left(kind, vec![r0, r1]))
            .unwrap();
        assert!(close(&back, &f, 1e-12));
    }
}

#[test]
fn primitivity_examples() {
    let h = Quaternion;
    let f = OrdinaryPolynomial::from_reals(h, Side::Left, &[1.0, 0.0, 1.0]);
    assert!(!f.is_primitive().unwrap());
    assert!(OrdinaryPolynomial::linear(unit(h, 1), Side::Left).is_primitive().unwrap());
    let g = f
        .product_convolution(&OrdinaryPolynomial::linear(unit(h, 2), Side::Left))
        .unwrap();
    assert!(!g.is_primitive().unwrap());
    assert!(cubic_example().is_primitive().unwrap());
    assert!(OrdinaryPolynomial::zero(h, Side::Left).is_primitive().is_err());
}

#[test]
fn taylor_shift_matches_translated_evaluation() {
    let mut rng = sample::seeded(31);
    for kind in [Quaternion, Octonion] {
        let f = sample::normal_polynomial(kind, 5, &mut rng);
        let shifted = f.taylor_shift(-0.7);
        for _ in 0..20 {
            let t = sample::normal_element(kind, &mut rng);
            let direct = f.eval(&(t + Element::real(kind, -0.7)));
            assert!(shifted.eval(&t).distance(&direct) < 1e-10 * (1.0 + direct.norm()));
        }
    }
}

#[test]
fn json_form() {
    let f = OrdinaryPolynomial::linear(unit(Quaternion, 1), Side::Left);
    let json = serde_json::to_string(&f).unwrap();
    assert_eq!(
        json,
        r#"{"kind":"H","side":"left","coeffs":[[0.0,-1.0,0.0,0.0],[1.0,0.0,0.0,0.0]]}"#
    );
    let back: OrdinaryPolynomial = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
}

#[test]
fn display_examples() {
    assert_eq!(cubic_example().to_string(), "t^3 + (1i + 1j + 1k)t^2 + (-1i + 1j - 1k)t + 1");
    let f = OrdinaryPolynomial::from_reals(Quaternion, Side::Left, &[-2.5, 0.0, -1.0]);
    assert_eq!(f.to_string(), "-t^2 - 2.5");
    assert_eq!(OrdinaryPolynomial::zero(Octonion, Side::Left).to_string(), "0");
}

fn poly_strategy(kind: AlgebraKind, max_degree: usize) -> impl Strategy<Value = OrdinaryPolynomial> {
    (0..=max_degree, any::<u64>()).prop_map(move |(d, seed)| {
        sample::normal_polynomial(kind, d, &mut sample::seeded(seed))
    })
}

fn element_strategy(kind: AlgebraKind) -> impl Strategy<Value = Element> {
    any::<u64>().prop_map(move |seed| sample::normal_element(kind, &mut sample::seeded(seed)))
}

fn real_strategy() -> impl Strategy<Value = f64> {
    -3.0f64..3.0
}

proptest! {
    #[test]
    fn remainder_is_value(f in poly_strategy(Octonion, 6), c in element_strategy(Octonion)) {
        prop_assume!(f.degree() >= 1);
        let (g, r) = f.divide_linear(&c).unwrap();
        let value = f.evaluate(&c).unwrap();
        prop_assert!(value.distance(&r) <= 1e-10 * (1.0 + value.norm()));
        let back = g.product_convolution(&OrdinaryPolynomial::linear(c, Side::Left)).unwrap()
            .checked_add(&OrdinaryPolynomial::constant(r, Side::Left)).unwrap();
        prop_assert!(close(&back, &f, 1e-10 * (1.0 + f.coefficient_norm())));
    }

    #[test]
    fn quaternion_convolution_is_associative(
        f in poly_strategy(Quaternion, 5),
        g in poly_strategy(Quaternion, 5),
        h in poly_strategy(Quaternion, 5),
    ) {
        let a = f.product_convolution(&g).unwrap().product_convolution(&h).unwrap();
        let b = f.product_convolution(&g.product_convolution(&h).unwrap()).unwrap();
        prop_assert!(close(&a, &b, 1e-10 * (1.0 + a.coefficient_norm())));
        let d1 = f.product_convolution(&g.checked_add(&h).unwrap()).unwrap();
        let d2 = f.product_convolution(&g).unwrap().checked_add(&f.product_convolution(&h).unwrap()).unwrap();
        prop_assert!(close(&d1, &d2, 1e-10 * (1.0 + d1.coefficient_norm())));
    }

    #[test]
    fn norm_polynomial_is_squared_modulus(f in poly_strategy(Octonion, 6), x in real_strategy()) {
        prop_assume!(!f.is_zero());
        let n = f.norm_polynomial().unwrap().eval(x);
        let v = f.evaluate(&Element::real(Octonion, x)).unwrap().norm_sqr();
        prop_assert!((n - v).abs() <= 1e-9 * (1.0 + v));
    }

    #[test]
    fn norm_polynomial_scales_by_real_factor(
        f in poly_strategy(Quaternion, 4),
        r in proptest::collection::vec(-2.0f64..2.0, 1..4),
    ) {
        prop_assume!(!f.is_zero());
        let real = RealPolynomial::new(r);
        prop_assume!(!real.is_zero());
        let qf = OrdinaryPolynomial::from_reals(Quaternion, Side::Left, real.coeffs()).product_convolution(&f).unwrap();
        let lhs = qf.norm_polynomial().unwrap();
        let rhs = &(&real * &real) * &f.norm_polynomial().unwrap();
        prop_assert_eq!(lhs.degree(), rhs.degree());
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }
}
