//! Seeded random draws shared by the verification suites and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraKind, Element};
use crate::polynomial::{OrdinaryPolynomial, Side};

/// The generator behind every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Element with independent N(0, 1) coordinates.
pub fn normal_element<R: Rng + ?Sized>(kind: AlgebraKind, rng: &mut R) -> Element {
    let coords: Vec<f64> = (0..kind.dim()).map(|_| rng.sample(StandardNormal)).collect();
    Element::new(kind, &coords).expect("length matches dim")
}

/// Uniform point on the unit sphere `S^m`.
pub fn unit_element<R: Rng + ?Sized>(kind: AlgebraKind, rng: &mut R) -> Element {
    loop {
        let e = normal_element(kind, rng);
        let n = e.norm();
        if n > 1e-12 {
            return e / n;
        }
    }
}

/// Uniform unit imaginary element (`Re = 0`, `|c| = 1`).
pub fn imaginary_unit<R: Rng + ?Sized>(kind: AlgebraKind, rng: &mut R) -> Element {
    loop {
        let e = normal_element(kind, rng).im();
        let n = e.norm();
        if n > 1e-12 {
            return e / n;
        }
    }
}

/// Uniform point in the closed ball of the given radius.
pub fn ball_element<R: Rng + ?Sized>(kind: AlgebraKind, radius: f64, rng: &mut R) -> Element {
    let u: f64 = rng.gen();
    unit_element(kind, rng) * (radius * u.powf(1.0 / kind.dim() as f64))
}

/// Left polynomial of exactly `degree` with N(0, 1) coefficients.
pub fn normal_polynomial<R: Rng + ?Sized>(kind: AlgebraKind, degree: usize, rng: &mut R) -> OrdinaryPolynomial {
    let coeffs = (0..=degree).map(|_| normal_element(kind, rng)).collect();
    OrdinaryPolynomial::new(kind, Side::Left, coeffs).expect("coefficients share the kind")
}
