//! Topological degree by signed preimage counting.
//!
//! For a regular value `h` of a proper map `f`, `deg f = Σ_{f(a) = h} sign det J(f)(a)`.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::jacobian::{determinant_sign, exact_jacobian, fd_jacobian, default_step, product_rule, JacobianSign};
use crate::matrix::RealMatrix;
use crate::polynomial::{MonomialSum, OrdinaryPolynomial, Side};
use crate::roots::{find_roots, RootKind};
use crate::sample;
use crate::tolerance;

/// Cap on target redraws when a drawn value turns out not to be regular.
pub const MAX_DRAWS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMethod {
    SignedPreimage,
    Composition,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Preimage {
    pub point: Element,
    pub sign: i64,
    pub determinant: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    pub map: String,
    pub target: Option<Element>,
    pub preimages: Vec<Preimage>,
    pub degree: i64,
    pub method: DegreeMethod,
    /// Targets drawn before a regular one was found.
    pub draws: usize,
}

impl DegreeReport {
    pub fn all_positive(&self) -> bool {
        self.preimages.iter().all(|p| p.sign > 0)
    }
}

/// Preimages of `h` under `f`, or `None` when `h` is not a regular value.
fn regular_preimages(f: &OrdinaryPolynomial, h: &Element) -> Result<Option<Vec<Preimage>>> {
    let g = f.sub_constant(h);
    let records = match find_roots(&g) {
        Ok(r) => r,
        Err(Error::NotARoot { .. } | Error::InconsistentDivision { .. } | Error::NonConvergence { .. }) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        if r.kind == RootKind::Spherical || r.multiplicity != 1 {
            return Ok(None);
        }
        let j = exact_jacobian(f, &r.value)?;
        let sign = j.sign();
        if sign == JacobianSign::Zero {
            return Ok(None);
        }
        out.push(Preimage {
            point: r.value,
            sign: sign.as_int(),
            determinant: j.det(),
            residual: r.residual,
        });
    }
    Ok(Some(out))
}

/// `1 + Σ|aₖ|`, a bound on `1 + |f|` over the unit ball.
fn draw_radius(f: &OrdinaryPolynomial) -> f64 {
    1.0 + f.coeffs().iter().map(Element::norm).sum::<f64>()
}

/// Degree of `f : 𝒜 → 𝒜` from the preimages of one regular value.
///
/// With `target = None`, values are drawn uniformly from the ball of radius
/// `1 + Σ|aₖ|` until one is regular, up to [`MAX_DRAWS`] times.
pub fn poly_map_degree<R: Rng + ?Sized>(
    f: &OrdinaryPolynomial,
    target: Option<&Element>,
    rng: &mut R,
) -> Result<DegreeReport> {
    f.require_degree(1)?;
    let map = format!("poly:{f}");
    if let Some(h) = target {
        f.kind().check(h.kind())?;
        let preimages = regular_preimages(f, h)?.ok_or(Error::IrregularValue(1))?;
        return Ok(signed_report(map, *h, preimages, 1));
    }
    let radius = draw_radius(f);
    for draw in 1..=MAX_DRAWS {
        let h = sample::ball_element(f.kind(), radius, rng);
        if let Some(preimages) = regular_preimages(f, &h)? {
            return Ok(signed_report(map, h, preimages, draw));
        }
    }
    Err(Error::IrregularValue(MAX_DRAWS))
}

fn signed_report(map: String, target: Element, preimages: Vec<Preimage>, draws: usize) -> DegreeReport {
    DegreeReport {
        map,
        target: Some(target),
        degree: preimages.iter().map(|p| p.sign).sum(),
        preimages,
        method: DegreeMethod::SignedPreimage,
        draws,
    }
}

/// Degree of the pointwise product `Φ(t) = (f(t) − h) ∗ (g(t) − z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductDegreeReport {
    #[serde(flatten)]
    pub report: DegreeReport,
    pub h: Element,
    pub z: Element,
    pub degree_f: i64,
    pub degree_g: i64,
    /// `det J(Φ)(a) = |g(a) − z|^{m+1} det J(f)(a)` on `A` and the mirror
    /// relation on `B`, with matching signs.
    pub sign_relations_hold: bool,
    /// Largest entry gap between the product-rule and central-difference `J(Φ)`.
    pub max_fd_deviation: f64,
}

/// Draws regular values `h`, `z` whose preimage sets `A`, `B` are disjoint and
/// counts the signed zeros of `Φ`, which are exactly `A ∪ B`.
pub fn product_degree_additivity<R: Rng + ?Sized>(
    f: &OrdinaryPolynomial,
    g: &OrdinaryPolynomial,
    rng: &mut R,
) -> Result<ProductDegreeReport> {
    f.kind().check(g.kind())?;
    for _ in 0..MAX_DRAWS {
        let rf = poly_map_degree(f, None, rng)?;
        let rg = poly_map_degree(g, None, rng)?;
        let collide = rf.preimages.iter().any(|a| {
            rg.preimages
                .iter()
                .any(|b| a.point.distance(&b.point) <= tolerance::CLUSTER * (1.0 + a.point.norm()))
        });
        if collide {
            continue;
        }
        let h = rf.target.expect("signed reports carry a target");
        let z = rg.target.expect("signed reports carry a target");
        let phi = |t: &Element| (f.eval(t) - h) * (g.eval(t) - z);
        let mut preimages = Vec::new();
        let mut relations = true;
        let mut max_fd_deviation: f64 = 0.0;
        let zeros = rf.preimages.iter().map(|p| (p, true)).chain(rg.preimages.iter().map(|p| (p, false)));
        for (p, in_a) in zeros {
            let a = p.point;
            let (fa, ga) = (f.eval(&a) - h, g.eval(&a) - z);
            let (jf, jg) = (exact_jacobian(f, &a)?.matrix, exact_jacobian(g, &a)?.matrix);
            let j_phi = product_rule(&fa, &jf, &ga, &jg);
            let fd = fd_jacobian(phi, &a, default_step(&a)).matrix;
            max_fd_deviation = max_fd_deviation.max(fd.max_abs_diff(&j_phi) / j_phi.max_abs().max(1.0));
            let (factor, own) = if in_a { (&ga, &jf) } else { (&fa, &jg) };
            let det = j_phi.det();
            let predicted = factor.norm().powi(f.kind().dim() as i32) * own.det();
            let sign = determinant_sign(&j_phi);
            relations &= sign == determinant_sign(own) && (det - predicted).abs() <= 1e-6 * predicted.abs();
            preimages.push(Preimage {
                point: a,
                sign: sign.as_int(),
                determinant: det,
                residual: phi(&a).norm(),
            });
        }
        let report = DegreeReport {
            map: format!("product:({f})*({g})"),
            target: Some(Element::zero(f.kind())),
            degree: preimages.iter().map(|p| p.sign).sum(),
            preimages,
            method: DegreeMethod::SignedPreimage,
            draws: rf.draws + rg.draws,
        };
        return Ok(ProductDegreeReport {
            report,
            h,
            z,
            degree_f: rf.degree,
            degree_g: rg.degree,
            sign_relations_hold: relations,
            max_fd_deviation,
        });
    }
    Err(Error::PreimageCollision(MAX_DRAWS))
}

/// Degree of `t ↦ tᵏ` on the unit sphere `S^m`.
///
/// `k ≥ 1` counts the signed roots of `tᵏ − i·r`, all inside the unit ball.
/// `k = 0` is a constant map. `k = −1` is conjugation, a composition of `m`
/// reflections. `k ≤ −2` composes `t^{−k}` with `t⁻¹`.
pub fn sphere_power_degree(kind: AlgebraKind, k: i64, r: f64) -> Result<DegreeReport> {
    let map = format!("power:{k}");
    let report = |degree, method, preimages, target| DegreeReport {
        map: map.clone(),
        target,
        preimages,
        degree,
        method,
        draws: 0,
    };
    match k {
        0 => Ok(report(0, DegreeMethod::Formula, Vec::new(), None)),
        -1 => {
            let conj = RealMatrix::from_columns(kind.dim(), |j| Element::basis(kind, j).conj().coords().to_vec());
            let degree = determinant_sign(&conj).as_int();
            Ok(report(degree, DegreeMethod::Composition, Vec::new(), None))
        }
        k if k < -1 => {
            let inner = sphere_power_degree(kind, -k, r)?;
            let inverse = sphere_power_degree(kind, -1, r)?;
            Ok(report(inner.degree * inverse.degree, DegreeMethod::Formula, Vec::new(), None))
        }
        _ => {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::InvalidArgument("r must lie in (0, 1)".into()));
            }
            let n = k as usize;
            let target = Element::basis(kind, 1) * r;
            let mut coeffs = vec![Element::zero(kind); n + 1];
            coeffs[0] = -target;
            coeffs[n] = Element::one(kind);
            let p = OrdinaryPolynomial::new(kind, Side::Left, coeffs)?;
            let preimages: Vec<Preimage> = find_roots(&p)?
                .into_iter()
                .filter(|rec| rec.kind == RootKind::Isolated && rec.multiplicity == 1)
                .map(|rec| {
                    let j = exact_jacobian(&p, &rec.value).expect("kinds match");
                    Preimage {
                        point: rec.value,
                        sign: j.sign().as_int(),
                        determinant: j.det(),
                        residual: rec.residual,
                    }
                })
                .filter(|pre| pre.sign != 0)
                .collect();
            if preimages.len() < n {
                return Err(Error::MissingPreimages {
                    expected: n,
                    found: preimages.len(),
                });
            }
            let degree = preimages.iter().map(|p| p.sign).sum();
            Ok(report(degree, DegreeMethod::SignedPreimage, preimages, Some(target)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereAdditivityReport {
    pub n: i64,
    pub k: i64,
    pub degree_n: i64,
    pub degree_k: i64,
    /// Degree of `t ↦ tⁿ ∗ tᵏ = t^{n+k}`.
    pub combined: DegreeReport,
    pub holds: bool,
}

/// Compares the degree of `t ↦ tⁿ ∗ tᵏ` with `deg tⁿ + deg tᵏ`.
pub fn sphere_product_additivity(kind: AlgebraKind, n: i64, k: i64, r: f64) -> Result<SphereAdditivityReport> {
    let degree_n = sphere_power_degree(kind, n, r)?.degree;
    let degree_k = sphere_power_degree(kind, k, r)?.degree;
    let combined = sphere_power_degree(kind, n + k, r)?;
    Ok(SphereAdditivityReport {
        n,
        k,
        degree_n,
        degree_k,
        holds: combined.degree == degree_n + degree_k,
        combined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusMinimum {
    pub radius: f64,
    pub samples: usize,
    pub min_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ray {
    pub direction: Element,
    pub scales: Vec<f64>,
    /// `|it²j + jt²i|` at `t = s · direction`.
    pub top_norms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonregularReport {
    pub samples: usize,
    pub min_norm: f64,
    pub argmin: Element,
    pub per_radius: Vec<RadiusMinimum>,
    pub value_at_zero: f64,
    /// Largest `||f(x)| − 1|` over real sample points.
    pub real_axis_max_deviation: f64,
    pub rays: Vec<Ray>,
}

const DEMO_RADII: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];
const GRID_STEPS: i32 = 3;

/// Samples `|it²j + jt²i − 1|` over balls of several radii (a grid plus at
/// least `samples` uniform points in total) and along rays.
///
/// This is sampling evidence that the map stays away from 0, not a proof.
pub fn nonregular_demo(samples: usize, seed: u64) -> Result<NonregularReport> {
    let h = AlgebraKind::Quaternion;
    let f = MonomialSum::nonregular_example();
    let mut rng = sample::seeded(seed);
    let per_ball = samples.div_ceil(DEMO_RADII.len());
    let mut min_norm = f64::INFINITY;
    let mut argmin = Element::zero(h);
    let mut total = 0;
    let mut per_radius = Vec::new();
    for radius in DEMO_RADII {
        let mut points = Vec::new();
        let axis: Vec<f64> = (-GRID_STEPS..=GRID_STEPS)
            .map(|s| radius * f64::from(s) / f64::from(GRID_STEPS))
            .collect();
        for &a in &axis {
            for &b in &axis {
                for &c in &axis {
                    for &d in &axis {
                        let x = Element::new(h, &[a, b, c, d])?;
                        if x.norm() <= radius {
                            points.push(x);
                        }
                    }
                }
            }
        }
        points.extend((0..per_ball).map(|_| sample::ball_element(h, radius, &mut rng)));
        let mut local = f64::INFINITY;
        for x in &points {
            let v = f.evaluate(x)?.norm();
            local = local.min(v);
            if v < min_norm {
                min_norm = v;
                argmin = *x;
            }
        }
        total += points.len();
        per_radius.push(RadiusMinimum {
            radius,
            samples: points.len(),
            min_norm: local,
        });
    }
    let mut real_axis_max_deviation: f64 = 0.0;
    for s in -100..=100 {
        let x = Element::real(h, f64::from(s) / 10.0);
        real_axis_max_deviation = real_axis_max_deviation.max((f.evaluate(&x)?.norm() - 1.0).abs());
    }
    let scales = vec![1.0, 10.0, 100.0, 1000.0];
    let diag = |j: usize| (Element::one(h) + Element::basis(h, j)) / std::f64::consts::SQRT_2;
    let directions = [
        Element::one(h),
        Element::basis(h, 1),
        diag(1),
        diag(2),
        sample::unit_element(h, &mut rng),
    ];
    let one = Element::one(h);
    let rays = directions
        .iter()
        .map(|d| {
            let top_norms = scales
                .iter()
                .map(|&s| f.evaluate(&(*d * s)).map(|v| (v + one).norm()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ray {
                direction: *d,
                scales: scales.clone(),
                top_norms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NonregularReport {
        samples: total,
        min_norm,
        argmin,
        per_radius,
        value_at_zero: f.evaluate(&Element::zero(h))?.norm(),
        real_axis_max_deviation,
        rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgebraKind::{Octonion, Quaternion};

    #[test]
    fn power_maps_have_degree_n() {
        let mut rng = sample::seeded(1);
        for kind in [Quaternion, Octonion] {
            for n in 1..=3 {
                let f = OrdinaryPolynomial::power(kind, Side::Left, n);
                let r = poly_map_degree(&f, None, &mut rng).unwrap();
                assert_eq!(r.degree, n as i64);
                assert_eq!(r.preimages.len(), n);
                assert!(r.all_positive());
            }
        }
    }

    #[test]
    fn linear_map_has_degree_one() {
        let mut rng = sample::seeded(2);
        let c = sample::normal_element(Octonion, &mut rng);
        let r = poly_map_degree(&OrdinaryPolynomial::linear(c, Side::Left), None, &mut rng).unwrap();
        assert_eq!(r.degree, 1);
    }

    #[test]
    fn explicit_irregular_target_is_an_error() {
        let mut rng = sample::seeded(3);
        let f = OrdinaryPolynomial::power(Quaternion, Side::Left, 2);
        // t² = −1 has a whole sphere of solutions.
        let h = -Element::one(Quaternion);
        assert_eq!(poly_map_degree(&f, Some(&h), &mut rng), Err(Error::IrregularValue(1)));
        // t² = 0 has a double root.
        assert!(poly_map_degree(&f, Some(&Element::zero(Quaternion)), &mut rng).is_err());
    }

    #[test]
    fn products_add_degrees() {
        let mut rng = sample::seeded(4);
        for kind in [Quaternion, Octonion] {
            for (n, k) in [(2, 3), (2, 2), (1, 1)] {
                let f = OrdinaryPolynomial::power(kind, Side::Left, n);
                let g = OrdinaryPolynomial::power(kind, Side::Left, k);
                let r = product_degree_additivity(&f, &g, &mut rng).unwrap();
                assert_eq!(r.report.degree, (n + k) as i64);
                assert_eq!(r.degree_f + r.degree_g, r.report.degree);
                assert!(r.report.all_positive());
                assert!(r.sign_relations_hold);
                assert!(r.max_fd_deviation < 1e-6, "{}", r.max_fd_deviation);
            }
        }
    }

    #[test]
    fn sphere_powers() {
        for kind in [Quaternion, Octonion] {
            let r = sphere_power_degree(kind, 5, 0.5).unwrap();
            assert_eq!((r.degree, r.preimages.len()), (5, 5));
            assert!(r.all_positive());
            for p in &r.preimages {
                assert!((p.point.norm() - 0.5f64.powf(0.2)).abs() < 1e-8);
            }
            assert_eq!(sphere_power_degree(kind, 0, 0.5).unwrap().degree, 0);
            let inv = sphere_power_degree(kind, -1, 0.5).unwrap();
            assert_eq!((inv.degree, inv.method), (-1, DegreeMethod::Composition));
            assert_eq!(sphere_power_degree(kind, -3, 0.5).unwrap().degree, -3);
        }
        assert!(sphere_power_degree(Quaternion, 2, 1.5).is_err());
    }

    #[test]
    fn sphere_additivity_examples() {
        for (n, k, d) in [(2, 3, 5), (4, 0, 4), (1, -1, 0)] {
            let r = sphere_product_additivity(Quaternion, n, k, 0.5).unwrap();
            assert!(r.holds);
            assert_eq!(r.combined.degree, d);
        }
    }

    #[test]
    fn nonregular_demo_stays_away_from_zero() {
        let r = nonregular_demo(20_000, 1).unwrap();
        assert!(r.samples >= 20_000);
        assert!(r.min_norm > 0.05);
        assert_eq!(r.value_at_zero, 1.0);
        assert_eq!(r.real_axis_max_deviation, 0.0);
        // Zero along the real axis, growing like 2s² along (1 + i)/√2.
        assert!(r.rays[0].top_norms.iter().all(|&v| v == 0.0));
        let diag = &r.rays[2];
        assert!((diag.top_norms[3] - 2e6).abs() < 1e-6 * 2e6);
    }
}
