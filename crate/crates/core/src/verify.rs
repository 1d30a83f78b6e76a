//! Seeded numerical property suites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraKind, Element, OCTONION_TRIPLES};
use crate::degree::{poly_map_degree, product_degree_additivity, sphere_power_degree};
use crate::error::{Error, Result};
use crate::jacobian::{
    det_identity_factored, det_identity_lhs, det_identity_rhs, exact_jacobian, lemma_matrix_check,
};
use crate::polynomial::{OrdinaryPolynomial, Side};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `det J(f)(t) ≥ 0` on random samples, `≈ 0` at planted double roots.
    JacobianNonnegative,
    /// `J(tᵏ(t − i))(i) = Aᵏ` for `k = 0..=12`.
    PowerJacobian,
    /// `det(I + 𝒞A)` against its closed form over 𝕆.
    DetIdentity,
    /// Degree of `tⁿ` and additivity over pointwise products.
    ProductAdditivity,
    /// Degree of `t ↦ tᵏ` on the unit sphere.
    SpherePower,
    /// Multiplication tables and the alternative laws.
    AlgebraTables,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::JacobianNonnegative,
        Suite::PowerJacobian,
        Suite::DetIdentity,
        Suite::ProductAdditivity,
        Suite::SpherePower,
        Suite::AlgebraTables,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::JacobianNonnegative => "thm2.2",
            Suite::PowerJacobian => "lemma2.2",
            Suite::DetIdentity => "det-identity",
            Suite::ProductAdditivity => "prop3.1",
            Suite::SpherePower => "lemma3.1",
            Suite::AlgebraTables => "algebra",
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Suite::JacobianNonnegative | Suite::DetIdentity => 10_000,
            Suite::ProductAdditivity => 100,
            Suite::AlgebraTables => 1000,
            Suite::PowerJacobian | Suite::SpherePower => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidArgument(format!("unknown suite `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub kind: AlgebraKind,
    pub samples: Option<usize>,
    pub seed: u64,
    /// Overrides the suite's primary tolerance.
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub samples: usize,
    pub metrics: BTreeMap<String, f64>,
    pub counterexample: Option<String>,
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let samples = opts.samples.unwrap_or_else(|| suite.default_samples());
    let mut rng = sample::seeded(opts.seed);
    let mut report = SuiteReport {
        suite,
        passed: true,
        samples,
        metrics: BTreeMap::new(),
        counterexample: None,
    };
    match suite {
        Suite::JacobianNonnegative => jacobian_nonnegative(&mut report, opts, &mut rng)?,
        Suite::PowerJacobian => power_jacobian(&mut report, opts),
        Suite::DetIdentity => det_identity(&mut report, opts, &mut rng)?,
        Suite::ProductAdditivity => product_additivity(&mut report, opts, &mut rng)?,
        Suite::SpherePower => sphere_power(&mut report, opts)?,
        Suite::AlgebraTables => algebra_tables(&mut report, &mut rng),
    }
    Ok(report)
}

impl SuiteReport {
    fn fail(&mut self, counterexample: impl FnOnce() -> String) {
        if self.passed {
            self.counterexample = Some(counterexample());
        }
        self.passed = false;
    }

    fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.to_string(), value);
    }
}

/// `g·(t − c)·(t − c)`, which has `c` as a multiple root.
pub fn planted_double_root<R: Rng + ?Sized>(kind: AlgebraKind, rng: &mut R) -> (OrdinaryPolynomial, Element) {
    let g = sample::normal_polynomial(kind, rng.gen_range(0..=4), rng);
    let c = sample::normal_element(kind, rng);
    let lin = OrdinaryPolynomial::linear(c, Side::Left);
    let f = g
        .product_convolution(&lin)
        .and_then(|h| h.product_convolution(&lin))
        .expect("same kind and side");
    (f, c)
}

fn jacobian_nonnegative<R: Rng + ?Sized>(report: &mut SuiteReport, opts: &SuiteOptions, rng: &mut R) -> Result<()> {
    let tol = opts.tol.unwrap_or(1e-9);
    let kind = opts.kind;
    let mut min_ratio = f64::INFINITY;
    for _ in 0..report.samples {
        let f = sample::normal_polynomial(kind, rng.gen_range(1..=6), rng);
        let t = sample::normal_element(kind, rng);
        let j = exact_jacobian(&f, &t)?;
        let ratio = j.det() / j.matrix.row_norm_product();
        if ratio < min_ratio {
            min_ratio = ratio;
        }
        if ratio < -tol {
            report.fail(|| format!("f = {f}, t = {t}, det/scale = {ratio:e}"));
        }
    }
    let planted = (report.samples / 10).max(10);
    let mut max_double = 0.0f64;
    for _ in 0..planted {
        let (f, c) = planted_double_root(kind, rng);
        let j = exact_jacobian(&f, &c)?;
        let ratio = j.det().abs() / j.matrix.row_norm_product();
        max_double = max_double.max(ratio);
        if ratio > 1e-6 {
            report.fail(|| format!("double root c = {c} of f = {f}: |det|/scale = {ratio:e}"));
        }
    }
    report.metric("min_det_over_scale", min_ratio);
    report.metric("max_double_root_det_over_scale", max_double);
    report.metric("double_root_samples", planted as f64);
    Ok(())
}

fn power_jacobian(report: &mut SuiteReport, opts: &SuiteOptions) {
    let tol = opts.tol.unwrap_or(1e-10);
    let mut worst = 0.0f64;
    for k in 0..=12 {
        let check = lemma_matrix_check(opts.kind, k);
        worst = worst.max(check.max_deviation);
        if check.max_deviation > tol {
            report.fail(|| format!("k = {k}: max deviation {:e}", check.max_deviation));
        }
    }
    report.samples = 13;
    report.metric("max_deviation", worst);
}

fn det_identity<R: Rng + ?Sized>(report: &mut SuiteReport, opts: &SuiteOptions, rng: &mut R) -> Result<()> {
    let tol = opts.tol.unwrap_or(1e-9);
    let o = AlgebraKind::Octonion;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let (mut worst_closed, mut worst_factored, mut min_rhs) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..report.samples {
        let c = sample::normal_element(o, rng);
        let lhs = det_identity_lhs(&c)?;
        let rhs = det_identity_rhs(&c)?;
        let err = rel(lhs, rhs);
        worst_closed = worst_closed.max(err);
        worst_factored = worst_factored.max(rel(lhs, det_identity_factored(&c)?));
        min_rhs = min_rhs.min(rhs);
        if err > tol || rhs < 0.0 {
            report.fail(|| format!("C = {c}: det(I + CA) = {lhs:e}, closed form = {rhs:e}"));
        }
    }
    let mut worst_unit = 0.0f64;
    for _ in 0..report.samples.min(1000) {
        let u = sample::imaginary_unit(o, rng);
        let (lhs, rhs) = (det_identity_lhs(&u)?, det_identity_rhs(&u)?);
        worst_unit = worst_unit.max(lhs.abs()).max(rhs.abs());
        if lhs.abs() > tol || rhs.abs() > tol {
            report.fail(|| format!("imaginary unit C = {u}: det = {lhs:e}, closed form = {rhs:e}"));
        }
    }
    report.metric("max_relative_error_closed_form", worst_closed);
    report.metric("max_relative_error_factored_form", worst_factored);
    report.metric("min_closed_form", min_rhs);
    report.metric("max_abs_at_imaginary_units", worst_unit);
    Ok(())
}

fn product_additivity<R: Rng + ?Sized>(report: &mut SuiteReport, opts: &SuiteOptions, rng: &mut R) -> Result<()> {
    let kind = opts.kind;
    for n in 1..=5 {
        let f = OrdinaryPolynomial::power(kind, Side::Left, n);
        let r = poly_map_degree(&f, None, rng)?;
        if r.degree != n as i64 || !r.all_positive() {
            report.fail(|| format!("deg t^{n} computed as {}", r.degree));
        }
    }
    let mut worst_fd = 0.0f64;
    for _ in 0..report.samples {
        let f = sample::normal_polynomial(kind, rng.gen_range(1..=3), rng);
        let g = sample::normal_polynomial(kind, rng.gen_range(1..=3), rng);
        let r = product_degree_additivity(&f, &g, rng)?;
        worst_fd = worst_fd.max(r.max_fd_deviation);
        let expected = f.degree() as i64 + g.degree() as i64;
        if r.report.degree != expected || !r.report.all_positive() || !r.sign_relations_hold {
            report.fail(|| {
                format!(
                    "f = {f}, g = {g}: degree {} (expected {expected}), sign relations {}",
                    r.report.degree, r.sign_relations_hold
                )
            });
        }
    }
    report.metric("max_fd_deviation", worst_fd);
    Ok(())
}

fn sphere_power(report: &mut SuiteReport, opts: &SuiteOptions) -> Result<()> {
    let r = 0.5;
    let tol = opts.tol.unwrap_or(1e-8);
    let mut worst_modulus = 0.0f64;
    for k in -3i64..=6 {
        let rep = sphere_power_degree(opts.kind, k, r)?;
        if rep.degree != k {
            report.fail(|| format!("k = {k}: degree {}", rep.degree));
        }
        if k >= 1 {
            let expected = r.powf(1.0 / k as f64);
            for p in &rep.preimages {
                worst_modulus = worst_modulus.max((p.point.norm() - expected).abs());
            }
            if rep.preimages.len() != k as usize || !rep.all_positive() || worst_modulus > tol {
                report.fail(|| format!("k = {k}: {} preimages, modulus error {worst_modulus:e}", rep.preimages.len()));
            }
        }
    }
    report.samples = 10;
    report.metric("max_modulus_error", worst_modulus);
    Ok(())
}

fn algebra_tables<R: Rng + ?Sized>(report: &mut SuiteReport, rng: &mut R) {
    let o = AlgebraKind::Octonion;
    let h = AlgebraKind::Quaternion;
    let e = |i| Element::basis(o, i);
    let mut identities = 0;
    for (a, b, c) in OCTONION_TRIPLES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            identities += 1;
            if e(x) * e(y) != e(z) {
                report.fail(|| format!("e{x}·e{y} ≠ e{z}"));
            }
        }
    }
    for x in 0..4 {
        for y in 0..4 {
            let q = Element::basis(h, x) * Element::basis(h, y);
            if q.embed(o) != e(x) * e(y) {
                report.fail(|| format!("quaternion product {x}·{y} disagrees with the octonion table"));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..report.samples {
        let (a, b) = (sample::normal_element(o, rng), sample::normal_element(o, rng));
        let scale = (a.norm() * b.norm() * b.norm()).max(1.0);
        worst = worst
            .max(((a * b) * b - a * (b * b)).norm() / scale)
            .max((b * (b * a) - (b * b) * a).norm() / scale)
            .max(((a * b).norm() - a.norm() * b.norm()).abs() / (a.norm() * b.norm()).max(1.0));
    }
    if worst > 1e-12 {
        report.fail(|| format!("alternative or norm law off by {worst:e}"));
    }
    report.metric("table_identities", identities as f64);
    report.metric("max_alternative_law_error", worst);
}
