use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::RealPolynomial;
use crate::sample;
use crate::tolerance;

const MAX_ITERATIONS: usize = 500;
const SEED: u64 = 0x6475_726e_6b65_726e;

/// One root `α + βi` (β ≥ 0) of a real polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexRoot {
    pub alpha: f64,
    pub beta: f64,
    pub multiplicity: usize,
}

impl ComplexRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    pub fn is_real(&self) -> bool {
        self.beta == 0.0
    }
}

/// Roots in the closed upper half-plane, sorted by `(α, β)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexRootSet {
    pub roots: Vec<ComplexRoot>,
}

impl ComplexRootSet {
    /// Degree accounted for, with each non-real entry standing for a conjugate pair.
    pub fn counted_degree(&self) -> usize {
        self.roots
            .iter()
            .map(|r| if r.is_real() { r.multiplicity } else { 2 * r.multiplicity })
            .sum()
    }

    /// The entry closest to `α + βi`, if within `radius · (1 + |α + βi|)`.
    pub fn nearest(&self, alpha: f64, beta: f64, radius: f64) -> Option<&ComplexRoot> {
        let z = Complex64::new(alpha, beta);
        self.roots
            .iter()
            .map(|r| ((r.value() - z).norm(), r))
            .filter(|(d, _)| *d <= radius * (1.0 + z.norm()))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, r)| r)
    }
}

/// All complex roots of `p` with multiplicities.
///
/// Integer polynomials are first split by an exact square-free decomposition.
/// Each factor is solved by Durand–Kerner iteration from a seeded ring of
/// starting points; roots within [`tolerance::CLUSTER`] of each other are merged
/// and each cluster is polished by Newton's method for its multiplicity.
pub fn real_poly_complex_roots(p: &RealPolynomial) -> Result<ComplexRootSet> {
    if p.degree() < 1 {
        return Err(Error::DegreeTooSmall { need: 1, got: p.degree() });
    }
    let factors = if p.monic().is_integral() {
        p.squarefree_decomposition()
    } else {
        vec![(p.monic(), 1)]
    };
    let mut raw = Vec::new();
    for (factor, m) in &factors {
        raw.extend(solve(factor)?.into_iter().map(|z| (z, *m)));
    }
    let mut roots: Vec<ComplexRoot> = cluster(raw)
        .into_iter()
        .map(|(z, m)| {
            let z = polish_cluster(p, z, m);
            ComplexRoot {
                alpha: z.re,
                beta: z.im.max(0.0),
                multiplicity: m,
            }
        })
        .collect();
    roots.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta.total_cmp(&b.beta)));
    Ok(ComplexRootSet { roots })
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    c.iter()
        .rev()
        .fold((zero, zero), |(p, dp), &a| (p * z + a, dp * z + p))
}

/// `Σ |cᵢ| |z|ⁱ`, the scale of rounding error in `p(z)`.
fn magnitude(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs())
}

fn solve(q: &RealPolynomial) -> Result<Vec<Complex64>> {
    let q = q.monic();
    let c = q.coeffs();
    match c.len() - 1 {
        0 => Ok(Vec::new()),
        1 => Ok(vec![Complex64::new(-c[0], 0.0)]),
        2 => Ok(quadratic(c[1], c[0])),
        _ => durand_kerner(c),
    }
}

/// Roots of `t² + bt + c`.
fn quadratic(b: f64, c: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let big = -0.5 * (b + b.signum() * disc.sqrt());
        let small = if big == 0.0 { 0.0 } else { c / big };
        vec![Complex64::new(big, 0.0), Complex64::new(small, 0.0)]
    } else {
        let (re, im) = (-0.5 * b, 0.5 * (-disc).sqrt());
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Fujiwara's bound on the root moduli of a monic polynomial.
fn root_bound(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    let b = (1..=n)
        .map(|k| {
            let a = c[n - k].abs();
            if k == n {
                (a / 2.0).powf(1.0 / k as f64)
            } else {
                a.powf(1.0 / k as f64)
            }
        })
        .fold(0.0, f64::max);
    2.0 * b.max(f64::MIN_POSITIVE)
}

fn durand_kerner(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let mut rng = sample::seeded(SEED ^ n as u64);
    let radius = root_bound(c) * rng.gen_range(0.5..1.0);
    let offset = rng.gen_range(0.0..TAU);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, offset + TAU * k as f64 / n as f64))
        .collect();
    let mut stalled = 0;
    let mut best_change = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut change: f64 = 0.0;
        for k in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in (0..n).filter(|&j| j != k) {
                den *= z[k] - z[j];
            }
            if den.norm() == 0.0 {
                den = Complex64::new(f64::EPSILON, f64::EPSILON);
            }
            let delta = horner(c, z[k]) / den;
            z[k] -= delta;
            change = change.max(delta.norm() / (1.0 + z[k].norm()));
        }
        if change <= 1e-15 {
            break;
        }
        if change < best_change {
            best_change = change;
            stalled = 0;
        } else {
            stalled += 1;
            if best_change < 1e-8 && stalled >= 5 {
                break;
            }
        }
    }
    for zk in z.iter_mut() {
        *zk = polish_simple(c, *zk);
    }
    let converged = z
        .iter()
        .all(|&zk| horner(c, zk).norm() <= tolerance::ROOT * magnitude(c, zk));
    if converged {
        Ok(z)
    } else {
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            best: z.iter().map(|w| (w.re, w.im)).collect(),
        })
    }
}

fn polish_simple(c: &[f64], mut z: Complex64) -> Complex64 {
    let mut res = horner(c, z).norm();
    for _ in 0..3 {
        let (p, dp) = horner_with_derivative(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let r = horner(c, next).norm();
        if r >= res {
            break;
        }
        z = next;
        res = r;
    }
    z
}

/// Folds the lower half-plane away and merges roots within the cluster radius.
fn cluster(raw: Vec<(Complex64, usize)>) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for (mut z, m) in raw {
        if z.im.abs() <= 0.5 * tolerance::CLUSTER * (1.0 + z.norm()) {
            z.im = 0.0;
        }
        if z.im < 0.0 {
            continue;
        }
        let radius = tolerance::CLUSTER * (1.0 + z.norm());
        match out.iter_mut().find(|(w, _)| (*w - z).norm() <= radius) {
            Some((w, count)) => {
                *w = (*w * *count as f64 + z * m as f64) / (*count + m) as f64;
                *count += m;
            }
            None => out.push((z, m)),
        }
    }
    out
}

/// Newton's method for a root of known multiplicity `m`: `z ← z − m·p/p'`.
fn polish_cluster(p: &RealPolynomial, mut z: Complex64, m: usize) -> Complex64 {
    let c = p.coeffs();
    let mut res = horner(c, z).norm();
    for _ in 0..20 {
        if res == 0.0 {
            break;
        }
        let (v, dv) = horner_with_derivative(c, z);
        if dv.norm() == 0.0 {
            break;
        }
        let mut next = z - v / dv * m as f64;
        if z.im == 0.0 {
            next.im = 0.0;
        }
        let r = horner(c, next).norm();
        if r >= res {
            break;
        }
        z = next;
        res = r;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(c: &[f64]) -> Vec<(f64, f64, usize)> {
        real_poly_complex_roots(&RealPolynomial::new(c.to_vec()))
            .unwrap()
            .roots
            .iter()
            .map(|r| (r.alpha, r.beta, r.multiplicity))
            .collect()
    }

    fn close(a: &[(f64, f64, usize)], b: &[(f64, f64, usize)], tol: f64) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol && x.2 == y.2)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(roots(&[1.0, 0.0, 1.0]), vec![(0.0, 1.0, 1)]);
        assert!(close(&roots(&[1.0, 0.0, 2.0, 0.0, 1.0]), &[(0.0, 1.0, 2)], 1e-12));
        assert!(close(&roots(&[2.0, -3.0, 1.0]), &[(1.0, 0.0, 1), (2.0, 0.0, 1)], 1e-12));
    }

    #[test]
    fn constants_are_rejected() {
        assert!(matches!(
            real_poly_complex_roots(&RealPolynomial::constant(3.0)),
            Err(Error::DegreeTooSmall { need: 1, got: 0 })
        ));
    }

    #[test]
    fn mixed_multiplicities_from_exact_decomposition() {
        // (t − 1)³ (t² + 4)² (t + 2)
        let p = [
            &RealPolynomial::new(vec![-1.0, 1.0]),
            &RealPolynomial::new(vec![-1.0, 1.0]),
            &RealPolynomial::new(vec![-1.0, 1.0]),
            &RealPolynomial::new(vec![4.0, 0.0, 1.0]),
            &RealPolynomial::new(vec![4.0, 0.0, 1.0]),
            &RealPolynomial::new(vec![2.0, 1.0]),
        ]
        .into_iter()
        .fold(RealPolynomial::constant(1.0), |acc, f| &acc * f);
        let set = real_poly_complex_roots(&p).unwrap();
        let got: Vec<_> = set.roots.iter().map(|r| (r.alpha, r.beta, r.multiplicity)).collect();
        assert!(close(&got, &[(-2.0, 0.0, 1), (0.0, 2.0, 2), (1.0, 0.0, 3)], 1e-10), "{got:?}");
        assert_eq!(set.counted_degree(), 8);
    }

    #[test]
    fn float_double_root_is_clustered() {
        // (t² − 2·0.3t + 0.34)² = ((t − 0.3)² + 0.25)²
        let q = RealPolynomial::characteristic(0.3, 0.5);
        let set = real_poly_complex_roots(&(&q * &q)).unwrap();
        assert_eq!(set.roots.len(), 1);
        let r = set.roots[0];
        assert_eq!(r.multiplicity, 2);
        assert!((r.alpha - 0.3).abs() < 1e-8 && (r.beta - 0.5).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn wilkinson_like_spread_converges() {
        let p = (1..=10).fold(RealPolynomial::constant(1.0), |acc, k| {
            &acc * &RealPolynomial::new(vec![-(k as f64) / 3.0, 1.0])
        });
        let set = real_poly_complex_roots(&p).unwrap();
        assert_eq!(set.roots.len(), 10);
        for (k, r) in set.roots.iter().enumerate() {
            assert!((r.alpha - (k + 1) as f64 / 3.0).abs() < 1e-7, "{r:?}");
            assert_eq!(r.beta, 0.0);
        }
    }

    #[test]
    fn residuals_are_small_for_random_polynomials() {
        let mut rng = sample::seeded(3);
        for _ in 0..200 {
            let deg = rng.gen_range(1..=12);
            let c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let p = RealPolynomial::new(c);
            let set = real_poly_complex_roots(&p).unwrap();
            assert_eq!(set.counted_degree(), p.degree() as usize);
            for r in &set.roots {
                let z = r.value();
                let scale = magnitude(p.coeffs(), z);
                assert!(p.eval_complex(z).norm() <= tolerance::ROOT * scale);
            }
        }
    }

    #[test]
    fn nearest_respects_radius() {
        let set = ComplexRootSet {
            roots: vec![ComplexRoot { alpha: 0.0, beta: 1.0, multiplicity: 1 }],
        };
        assert!(set.nearest(0.0, 1.0 + 1e-9, 1e-6).is_some());
        assert!(set.nearest(0.0, 1.1, 1e-6).is_none());
    }
}
