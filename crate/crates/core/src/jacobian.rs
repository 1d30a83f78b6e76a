//! Jacobians of maps 𝒜 → 𝒜 viewed as maps ℝ^{m+1} → ℝ^{m+1}.
//!
//! Entry `(i, j)` is `∂fᵢ/∂xⱼ` in the coordinate order `(x₀, x₁, …, x_m)`.

use serde::Serialize;

use crate::algebra::{matrix_rep, right_matrix_rep, AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::polynomial::{OrdinaryPolynomial, Side};
use crate::tolerance;

/// A Jacobian together with the point it was taken at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobianMatrix {
    pub matrix: RealMatrix,
    pub basepoint: Element,
}

impl JacobianMatrix {
    pub fn det(&self) -> f64 {
        self.matrix.det()
    }

    pub fn sign(&self) -> JacobianSign {
        determinant_sign(&self.matrix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobianSign {
    Positive,
    Zero,
    Negative,
}

impl JacobianSign {
    pub fn as_int(self) -> i64 {
        match self {
            JacobianSign::Positive => 1,
            JacobianSign::Zero => 0,
            JacobianSign::Negative => -1,
        }
    }
}

/// Sign of `det m`, with `|det| ≤ 1e-9 · Π‖rowᵢ‖` counted as zero.
pub fn determinant_sign(m: &RealMatrix) -> JacobianSign {
    let det = m.det();
    let band = tolerance::JACOBIAN_ZERO_BAND * m.row_norm_product();
    if det.abs() <= band {
        JacobianSign::Zero
    } else if det > 0.0 {
        JacobianSign::Positive
    } else {
        JacobianSign::Negative
    }
}

/// `D(tᵏ)[e] = Σ_{p+q=k−1} tᵖ(e tᵠ)` for every `k ≤ n`, given the powers `t⁰..tⁿ`.
///
/// `t` and `e` generate an associative subalgebra, so the grouping inside
/// each summand does not matter even in 𝕆.
fn power_derivatives(powers: &[Element], e: &Element) -> Vec<Element> {
    let kind = e.kind();
    (0..powers.len())
        .map(|k| {
            (0..k).fold(Element::zero(kind), |acc, p| acc + powers[p] * (*e * powers[k - 1 - p]))
        })
        .collect()
}

/// Exact Jacobian of an ordinary polynomial by the product rule on powers.
pub fn exact_jacobian(f: &OrdinaryPolynomial, t: &Element) -> Result<JacobianMatrix> {
    f.kind().check(t.kind())?;
    let kind = f.kind();
    let mut powers = Vec::with_capacity(f.coeffs().len());
    let mut p = Element::one(kind);
    for k in 0..f.coeffs().len() {
        if k > 0 {
            p = p * *t;
        }
        powers.push(p);
    }
    let matrix = RealMatrix::from_columns(kind.dim(), |j| {
        let derivs = power_derivatives(&powers, &Element::basis(kind, j));
        let col = f
            .coeffs()
            .iter()
            .zip(&derivs)
            .fold(Element::zero(kind), |acc, (a, d)| {
                acc + match f.side() {
                    Side::Left => *a * *d,
                    Side::Right => *d * *a,
                }
            });
        col.coords().to_vec()
    });
    Ok(JacobianMatrix {
        matrix,
        basepoint: *t,
    })
}

/// Step used by [`fd_jacobian`] when none is given: `2e-4 · (1 + |t|)`.
pub fn default_step(t: &Element) -> f64 {
    2e-4 * (1.0 + t.norm())
}

/// Fourth-order central-difference Jacobian
/// `(F(t − 2heⱼ) − 8F(t − heⱼ) + 8F(t + heⱼ) − F(t + 2heⱼ)) / 12h`.
pub fn fd_jacobian<F>(map: F, t: &Element, h: f64) -> JacobianMatrix
where
    F: Fn(&Element) -> Element,
{
    let kind = t.kind();
    let matrix = RealMatrix::from_columns(kind.dim(), |j| {
        let step = Element::basis(kind, j) * h;
        let near = map(&(*t + step)) - map(&(*t - step));
        let far = map(&(*t + step * 2.0)) - map(&(*t - step * 2.0));
        ((near * 8.0 - far) / (12.0 * h)).coords().to_vec()
    });
    JacobianMatrix {
        matrix,
        basepoint: *t,
    }
}

/// Jacobian of the pointwise product `t ↦ F(t) ∗ G(t)` at a point where
/// `F = f_value`, `G = g_value`: `R_G · J_F + L_F · J_G`.
pub fn product_rule(f_value: &Element, jf: &RealMatrix, g_value: &Element, jg: &RealMatrix) -> RealMatrix {
    &(&right_matrix_rep(g_value) * jf) + &(&matrix_rep(f_value) * jg)
}

/// Sign of `det J(f)(t)`.
pub fn jacobian_sign(f: &OrdinaryPolynomial, t: &Element) -> Result<JacobianSign> {
    Ok(exact_jacobian(f, t)?.sign())
}

/// `N = [[0, −1], [1, 0]]`.
fn rotation_block() -> RealMatrix {
    RealMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 1) => -1.0,
        (1, 0) => 1.0,
        _ => 0.0,
    })
}

/// Block-diagonal `A = diag(N, −N, …, −N)`; it is the matrix of `x ↦ x ∗ i`
/// and satisfies `A² = −I`.
pub fn block_matrix_a(kind: AlgebraKind) -> RealMatrix {
    let n = rotation_block();
    let mut blocks = vec![n.clone()];
    blocks.extend(std::iter::repeat_n(-&n, kind.dim() / 2 - 1));
    RealMatrix::block_diagonal(&blocks)
}

/// Outcome of comparing `J(tᵏ(t − i))(i)` with `Aᵏ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub k: u32,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Checks `J(tᵏ⁺¹ − i tᵏ)(i) = Aᵏ` entrywise to `1e-10`.
pub fn lemma_matrix_check(kind: AlgebraKind, k: u32) -> LemmaCheck {
    let i = Element::basis(kind, 1);
    let mut coeffs = vec![Element::zero(kind); k as usize + 2];
    coeffs[k as usize] = -i;
    coeffs[k as usize + 1] = Element::one(kind);
    let f = OrdinaryPolynomial::new(kind, Side::Left, coeffs).expect("kinds match");
    let j = exact_jacobian(&f, &i).expect("kinds match");
    let max_deviation = j.matrix.max_abs_diff(&block_matrix_a(kind).pow(k));
    LemmaCheck {
        k,
        max_deviation,
        passed: max_deviation <= 1e-10,
    }
}

/// `(B_e, B_o) = (Σ(−1)ᵏb₂ₖ, Σ(−1)ˡb₂ₗ₊₁)` for `g = Σ bₖtᵏ`, so that
/// `g(i) = B_e + B_o i` for a left polynomial.
pub fn even_odd_parts(g: &OrdinaryPolynomial) -> (Element, Element) {
    let kind = g.kind();
    let mut parts = [Element::zero(kind), Element::zero(kind)];
    for (k, b) in g.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        parts[k % 2] += *b * sign;
    }
    (parts[0], parts[1])
}

/// `L_{B_e} + L_{B_o}·A`.
///
/// For `f = g·(t − i)` this is `J(f)(i)` over ℍ, and over 𝕆 whenever the
/// coefficients of `g` lie in `span{1, e₁}`. For general octonionic `g` the
/// product rule picks up associators and the two differ.
pub fn even_odd_matrix(be: &Element, bo: &Element) -> RealMatrix {
    &matrix_rep(be) + &(&matrix_rep(bo) * &block_matrix_a(be.kind()))
}

fn require_octonion(c: &Element) -> Result<()> {
    AlgebraKind::Octonion.check(c.kind()).map_err(|_| {
        Error::InvalidArgument("the determinant identity is stated for octonions".into())
    })
}

/// `det(I + 𝒞A)` computed directly.
pub fn det_identity_lhs(c: &Element) -> Result<f64> {
    require_octonion(c)?;
    let kind = c.kind();
    let m = &RealMatrix::identity(kind.dim()) + &(&matrix_rep(c) * &block_matrix_a(kind));
    Ok(m.det())
}

/// The published closed form
/// `[(1 − |γ|²)² + 2γ₀²(1 + |C|²)] · [(γ₁ − 1)² + |C|² − γ₁²]²`
/// for `C = γ₀ + γ`.
///
/// It vanishes on imaginary units and is non-negative, but it does not equal
/// `det(I + 𝒞A)`; see [`det_identity_factored`].
pub fn det_identity_rhs(c: &Element) -> Result<f64> {
    require_octonion(c)?;
    let g0 = c.re();
    let g1 = c.coord(1);
    let im2 = c.im_norm().powi(2);
    let c2 = c.norm_sqr();
    let first = (1.0 - im2).powi(2) + 2.0 * g0 * g0 * (1.0 + c2);
    let second = (g1 - 1.0).powi(2) + c2 - g1 * g1;
    Ok(first * second * second)
}

/// Factorization of `det(I + 𝒞A)` that does hold:
/// `[(1 + |C|²)² − 4|γ|²] · (1 + 2γ₁ + |C|²)²`.
///
/// The first factor is `(1 + |C|² − 2|γ|)(1 + |C|² + 2|γ|)`, zero exactly on
/// imaginary units; the second is a square. Hence `det(I + 𝒞A) ≥ 0`.
pub fn det_identity_factored(c: &Element) -> Result<f64> {
    require_octonion(c)?;
    let g1 = c.coord(1);
    let im2 = c.im_norm().powi(2);
    let c2 = c.norm_sqr();
    let first = (1.0 + c2).powi(2) - 4.0 * im2;
    let second = 1.0 + 2.0 * g1 + c2;
    Ok(first * second * second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::Rng;
    use AlgebraKind::{Octonion, Quaternion};

    #[test]
    fn linear_map_has_identity_jacobian() {
        let mut rng = sample::seeded(1);
        for kind in [Quaternion, Octonion] {
            let f = OrdinaryPolynomial::linear(Element::basis(kind, 1), Side::Left);
            let t = sample::normal_element(kind, &mut rng);
            let j = exact_jacobian(&f, &t).unwrap();
            assert_eq!(j.matrix, RealMatrix::identity(kind.dim()));
            assert_eq!(j.sign(), JacobianSign::Positive);
        }
    }

    #[test]
    fn square_at_one_is_twice_identity() {
        for (kind, det) in [(Quaternion, 16.0), (Octonion, 256.0)] {
            let f = OrdinaryPolynomial::power(kind, Side::Left, 2);
            let j = exact_jacobian(&f, &Element::one(kind)).unwrap();
            assert_eq!(j.matrix, RealMatrix::identity(kind.dim()).scale(2.0));
            assert_eq!(j.det(), det);
        }
    }

    #[test]
    fn real_polynomial_at_real_point_is_scalar() {
        let f = OrdinaryPolynomial::from_reals(Octonion, Side::Left, &[0.5, -1.0, 2.0, 0.25]);
        let x = 1.3;
        let j = exact_jacobian(&f, &Element::real(Octonion, x)).unwrap();
        let slope = -1.0 + 4.0 * x + 0.75 * x * x;
        assert!(j.matrix.max_abs_diff(&RealMatrix::identity(8).scale(slope)) < 1e-14);
    }

    #[test]
    fn fd_of_constant_is_zero() {
        let c = Element::basis(Quaternion, 2);
        let j = fd_jacobian(|_| c, &Element::one(Quaternion), 1e-5);
        assert_eq!(j.matrix, RealMatrix::zeros(4));
    }

    #[test]
    fn fd_recovers_left_multiplication() {
        let mut rng = sample::seeded(2);
        for kind in [Quaternion, Octonion] {
            let c = sample::normal_element(kind, &mut rng);
            let t = sample::normal_element(kind, &mut rng);
            let j = fd_jacobian(|x| c * *x, &t, default_step(&t));
            assert!(j.matrix.max_abs_diff(&matrix_rep(&c)) < 1e-9);
        }
    }

    #[test]
    fn right_polynomial_jacobian_matches_fd() {
        let mut rng = sample::seeded(4);
        for kind in [Quaternion, Octonion] {
            let f = sample::normal_polynomial(kind, 4, &mut rng).with_side(Side::Right);
            let t = sample::normal_element(kind, &mut rng) * 0.7;
            let exact = exact_jacobian(&f, &t).unwrap();
            let fd = fd_jacobian(|x| f.evaluate(x).unwrap(), &t, default_step(&t));
            assert!(exact.matrix.max_abs_diff(&fd.matrix) < 1e-6);
        }
    }

    #[test]
    fn a_squares_to_minus_identity_and_is_right_mult_by_i() {
        for kind in [Quaternion, Octonion] {
            let a = block_matrix_a(kind);
            assert_eq!(&a * &a, -&RealMatrix::identity(kind.dim()));
            assert_eq!(a, right_matrix_rep(&Element::basis(kind, 1)));
        }
    }

    #[test]
    fn lemma_small_cases() {
        for kind in [Quaternion, Octonion] {
            let c0 = lemma_matrix_check(kind, 0);
            assert!(c0.passed && c0.max_deviation == 0.0);
            assert!(lemma_matrix_check(kind, 2).passed);
        }
    }

    #[test]
    fn determinant_identity_special_values() {
        let zero = Element::zero(Octonion);
        assert_eq!(det_identity_rhs(&zero).unwrap(), 1.0);
        assert_eq!(det_identity_lhs(&zero).unwrap(), 1.0);
        let e1 = Element::basis(Octonion, 1);
        assert_eq!(det_identity_rhs(&e1).unwrap(), 0.0);
        assert!(det_identity_lhs(&e1).unwrap().abs() < 1e-12);
        assert!(det_identity_rhs(&Element::zero(Quaternion)).is_err());
    }

    #[test]
    fn factored_determinant_matches_direct_determinant() {
        let mut rng = sample::seeded(9);
        for _ in 0..1000 {
            let c = sample::normal_element(Octonion, &mut rng);
            let lhs = det_identity_lhs(&c).unwrap();
            let rhs = det_identity_factored(&c).unwrap();
            assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0), "{lhs} vs {rhs}");
            assert!(rhs >= 0.0);
        }
    }

    #[test]
    fn published_closed_form_disagrees_for_real_c() {
        // For real C = γ₀, 𝒞A = γ₀A with A² = −I, so det(I + γ₀A) = (1 + γ₀²)⁴.
        let c = Element::real(Octonion, 1.0);
        assert!((det_identity_lhs(&c).unwrap() - 16.0).abs() < 1e-12);
        assert_eq!(det_identity_rhs(&c).unwrap(), 20.0);
    }

    fn quotient_times_t_minus_i(g: &OrdinaryPolynomial) -> OrdinaryPolynomial {
        let lin = OrdinaryPolynomial::linear(Element::basis(g.kind(), 1), Side::Left);
        g.product_convolution(&lin).unwrap()
    }

    #[test]
    fn even_odd_decomposition_in_quaternions() {
        let mut rng = sample::seeded(12);
        for deg in 0..6 {
            let g = sample::normal_polynomial(Quaternion, deg, &mut rng);
            let f = quotient_times_t_minus_i(&g);
            let i = Element::basis(Quaternion, 1);
            let (be, bo) = even_odd_parts(&g);
            assert!((be + bo * i).distance(&g.evaluate(&i).unwrap()) < 1e-12);
            let j = exact_jacobian(&f, &i).unwrap();
            assert!(j.matrix.max_abs_diff(&even_odd_matrix(&be, &bo)) < 1e-12);
        }
    }

    #[test]
    fn even_odd_decomposition_in_octonions_needs_complex_quotient() {
        let mut rng = sample::seeded(13);
        let i = Element::basis(Octonion, 1);
        for deg in 1..6 {
            let coeffs = (0..=deg)
                .map(|_| Element::complex(Octonion, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let g = OrdinaryPolynomial::new(Octonion, Side::Left, coeffs).unwrap();
            let (be, bo) = even_odd_parts(&g);
            let j = exact_jacobian(&quotient_times_t_minus_i(&g), &i).unwrap();
            assert!(j.matrix.max_abs_diff(&even_odd_matrix(&be, &bo)) < 1e-12);
        }
        let g = sample::normal_polynomial(Octonion, 2, &mut rng);
        let (be, bo) = even_odd_parts(&g);
        let j = exact_jacobian(&quotient_times_t_minus_i(&g), &i).unwrap();
        assert!(j.matrix.max_abs_diff(&even_odd_matrix(&be, &bo)) > 1e-3);
    }

    #[test]
    fn even_odd_determinant_vanishes_exactly_on_planted_units() {
        let mut rng = sample::seeded(14);
        for kind in [Quaternion, Octonion] {
            for _ in 0..50 {
                let bo = sample::normal_element(kind, &mut rng);
                let delta = sample::imaginary_unit(kind, &mut rng);
                let be = -(bo * delta);
                let m = even_odd_matrix(&be, &bo);
                assert_eq!(determinant_sign(&m), JacobianSign::Zero);
                let other = sample::normal_element(kind, &mut rng);
                assert_eq!(determinant_sign(&even_odd_matrix(&other, &bo)), JacobianSign::Positive);
            }
        }
    }

    #[test]
    fn conjugation_preserves_the_determinant() {
        let mut rng = sample::seeded(15);
        for kind in [Quaternion, Octonion] {
            for _ in 0..20 {
                let f = sample::normal_polynomial(kind, 3, &mut rng);
                let t0 = sample::normal_element(kind, &mut rng);
                let eta = sample::unit_element(kind, &mut rng);
                let inv = eta.inverse().unwrap();
                let conjugated = |t: &Element| f.evaluate(&((inv * *t) * eta)).unwrap();
                let s = (eta * t0) * inv;
                let fd = fd_jacobian(conjugated, &s, default_step(&s));
                let exact = exact_jacobian(&f, &t0).unwrap();
                let (a, b) = (fd.det(), exact.det());
                assert!((a - b).abs() <= 1e-5 * b.abs().max(1.0), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn zero_band_is_scale_free() {
        let m = RealMatrix::identity(4).scale(1e-4);
        assert_eq!(determinant_sign(&m), JacobianSign::Positive);
        assert_eq!(determinant_sign(&RealMatrix::zeros(4)), JacobianSign::Zero);
        let mut flip = RealMatrix::identity(4);
        flip[(0, 0)] = -1.0;
        assert_eq!(determinant_sign(&flip), JacobianSign::Negative);
    }
}
