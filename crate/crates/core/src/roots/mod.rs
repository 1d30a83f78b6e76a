//! Root enumeration, classification and factorization of ordinary polynomials.
//!
//! Every similarity class of roots of `f` corresponds to a complex root
//! `α + βi` of the norm polynomial `f̄ ∗ f`. Dividing `f` by the characteristic
//! quadratic `q(t) = t² − 2αt + α² + β²` leaves `r₁t + r₀`: a vanishing
//! remainder means the whole class consists of roots (spherical), otherwise the
//! class holds the single root `−r₁⁻¹r₀` (isolated).

mod complex;
mod descent;
mod newton;

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use crate::algebra::{complex_representative, Element};
use crate::error::{Error, Result};
use crate::polynomial::{OrdinaryPolynomial, Side};
use crate::tolerance;

pub use complex::{real_poly_complex_roots, ComplexRoot, ComplexRootSet};
pub use descent::{descend, descent_step, descent_step_general, DescentTrace};
pub use newton::{newton_refine, newton_refine_with, NewtonOutcome, NewtonStatus, MAX_NEWTON_ITERATIONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Isolated,
    Spherical,
}

/// A root, or for a spherical class its representative `α + βe₁`.
///
/// Multiplicity follows the norm polynomial `f̄ ∗ f`: with `μ` the
/// multiplicity of `α + βi` there, a non-real isolated root gets `μ`, a real
/// root `μ/2`, and a spherical class `2·(μ/2) = μ`, since each factor of `q`
/// in `f` contributes 2 to `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootRecord {
    pub value: Element,
    pub kind: RootKind,
    pub multiplicity: usize,
    pub residual: f64,
}

impl Serialize for RootRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            value: &'a [f64],
            kind: RootKind,
            multiplicity: usize,
            residual: f64,
        }
        Repr {
            value: self.value.coords(),
            kind: self.kind,
            multiplicity: self.multiplicity,
            residual: self.residual,
        }
        .serialize(s)
    }
}

/// `1 + ‖f‖`, the scale every root tolerance is relative to.
pub fn polynomial_scale(f: &OrdinaryPolynomial) -> f64 {
    1.0 + f.coefficient_norm()
}

/// `(r₁, r₀)` in `f = h·q + r₁t + r₀`; for `deg f < 2` these are `(a₁, a₀)`.
fn characteristic_remainder(f: &OrdinaryPolynomial, alpha: f64, beta: f64) -> Result<(Element, Element)> {
    if f.degree() < 2 {
        return Ok((f.coeff(1), f.coeff(0)));
    }
    let (_, r1, r0) = f.divide_characteristic(alpha, beta)?;
    Ok((r1, r0))
}

/// Solves `r₁c + r₀ = 0` (left) or `cr₁ + r₀ = 0` (right).
fn linear_root(side: Side, r1: &Element, r0: &Element) -> Result<Element> {
    let inv = r1.inverse()?;
    Ok(match side {
        Side::Left => -(inv * *r0),
        Side::Right => -(*r0 * inv),
    })
}

fn polish(f: &OrdinaryPolynomial, c: &Element) -> Result<Element> {
    let target = 1e-15 * polynomial_scale(f);
    Ok(newton_refine_with(f, c, target, MAX_NEWTON_ITERATIONS)?.point)
}

fn class_record(f: &OrdinaryPolynomial, root: &ComplexRoot) -> Result<RootRecord> {
    let kind = f.kind();
    let scale = polynomial_scale(f);
    let (value, root_kind, multiplicity) = if root.is_real() {
        let c = polish(f, &Element::real(kind, root.alpha))?;
        (c, RootKind::Isolated, root.multiplicity.div_ceil(2))
    } else {
        let (r1, r0) = characteristic_remainder(f, root.alpha, root.beta)?;
        let band = tolerance::SPHERICAL * scale;
        if r1.norm() <= band && r0.norm() <= band {
            let (a, b) = refine_spherical(f, root.alpha, root.beta)?;
            (Element::complex(kind, a, b), RootKind::Spherical, root.multiplicity)
        } else if r1.norm() <= band {
            return Err(Error::InconsistentDivision {
                alpha: root.alpha,
                beta: root.beta,
            });
        } else {
            let c = polish(f, &linear_root(f.side(), &r1, &r0)?)?;
            let (a, b) = complex_representative(&c);
            let drift = (a - root.alpha).hypot(b - root.beta);
            if drift > tolerance::CLUSTER * (1.0 + root.value().norm()) {
                return Err(Error::InconsistentDivision {
                    alpha: root.alpha,
                    beta: root.beta,
                });
            }
            (c, RootKind::Isolated, root.multiplicity)
        }
    };
    let residual = f.eval(&value).norm();
    if residual > tolerance::ROOT * scale {
        return Err(Error::NotARoot { residual });
    }
    Ok(RootRecord {
        value,
        kind: root_kind,
        multiplicity,
        residual,
    })
}

/// Gauss–Newton on `(α, β) ↦ (r₁, r₀)`, which vanishes at a spherical class.
///
/// The class is a multiple root of the norm polynomial, so its location from
/// there is only accurate to about the square root of machine precision; the
/// remainder has a simple zero and pins it down to full precision.
fn refine_spherical(f: &OrdinaryPolynomial, mut alpha: f64, mut beta: f64) -> Result<(f64, f64)> {
    let remainder = |a: f64, b: f64| -> Result<Vec<f64>> {
        let (r1, r0) = characteristic_remainder(f, a, b)?;
        Ok(r1.coords().iter().chain(r0.coords()).copied().collect())
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut r = remainder(alpha, beta)?;
    for _ in 0..10 {
        let h = 1e-7 * (1.0 + alpha.hypot(beta));
        let (ap, am) = (remainder(alpha + h, beta)?, remainder(alpha - h, beta)?);
        let (bp, bm) = (remainder(alpha, beta + h)?, remainder(alpha, beta - h)?);
        let ja: Vec<f64> = ap.iter().zip(&am).map(|(p, m)| (p - m) / (2.0 * h)).collect();
        let jb: Vec<f64> = bp.iter().zip(&bm).map(|(p, m)| (p - m) / (2.0 * h)).collect();
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        let (aa, ab, bb) = (dot(&ja, &ja), dot(&ja, &jb), dot(&jb, &jb));
        let (ga, gb) = (dot(&ja, &r), dot(&jb, &r));
        let det = aa * bb - ab * ab;
        if det <= 0.0 {
            break;
        }
        let da = -(bb * ga - ab * gb) / det;
        let db = -(aa * gb - ab * ga) / det;
        let next = remainder(alpha + da, beta + db)?;
        if norm(&next) >= norm(&r) {
            break;
        }
        alpha += da;
        beta += db;
        r = next;
    }
    Ok((alpha, beta))
}

fn record_order(a: &RootRecord, b: &RootRecord) -> Ordering {
    a.value
        .re()
        .total_cmp(&b.value.re())
        .then(a.value.im_norm().total_cmp(&b.value.im_norm()))
        .then_with(|| {
            a.value
                .coords()
                .iter()
                .zip(b.value.coords())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// One record per similarity class of roots, sorted by `(α, β, coordinates)`.
pub fn find_roots(f: &OrdinaryPolynomial) -> Result<Vec<RootRecord>> {
    f.require_degree(1)?;
    let classes = real_poly_complex_roots(&f.norm_polynomial()?)?;
    let mut records = classes
        .roots
        .iter()
        .map(|root| class_record(f, root))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(record_order);
    Ok(records)
}

/// Whether the quotient `g` in `f = g·(t − c)` (left) or `f = (t − c)·g`
/// (right) has no root similar to `c`, i.e. whether `c` is simple.
pub fn is_simple_by_quotient(f: &OrdinaryPolynomial, c: &Element) -> Result<bool> {
    let (g, _) = f.divide_linear(c)?;
    if g.degree() < 1 {
        return Ok(true);
    }
    let (alpha, beta) = complex_representative(c);
    let n = g.norm_polynomial()?;
    let v = n.eval_complex(num_complex::Complex64::new(alpha, beta)).norm();
    Ok(v > tolerance::SPHERICAL * polynomial_scale(&g).powi(2))
}

/// Classifies a known root `c` and assigns its multiplicity.
///
/// The isolated/spherical decision is the characteristic-division test; the
/// multiplicity comes from the norm polynomial and, for isolated roots, is
/// cross-checked against [`is_simple_by_quotient`].
pub fn classify_and_multiplicity(f: &OrdinaryPolynomial, c: &Element) -> Result<RootRecord> {
    f.kind().check(c.kind())?;
    f.require_degree(1)?;
    let scale = polynomial_scale(f);
    let residual = f.eval(c).norm();
    if residual > tolerance::ROOT * scale {
        return Err(Error::NotARoot { residual });
    }
    let (alpha, beta) = complex_representative(c);
    let classes = real_poly_complex_roots(&f.norm_polynomial()?)?;
    let root = classes
        .nearest(alpha, beta, tolerance::CLUSTER.sqrt())
        .ok_or(Error::NotARoot { residual })?;
    let (value, kind, multiplicity) = if root.is_real() {
        (*c, RootKind::Isolated, root.multiplicity.div_ceil(2))
    } else {
        let (r1, r0) = characteristic_remainder(f, alpha, beta)?;
        let band = tolerance::SPHERICAL * scale;
        if r1.norm() <= band && r0.norm() <= band {
            (Element::complex(f.kind(), alpha, beta), RootKind::Spherical, root.multiplicity)
        } else {
            (*c, RootKind::Isolated, root.multiplicity)
        }
    };
    if kind == RootKind::Isolated && is_simple_by_quotient(f, c)? != (multiplicity == 1) {
        return Err(Error::MultiplicityMismatch { norm: root.multiplicity });
    }
    Ok(RootRecord {
        value,
        kind,
        multiplicity,
        residual: f.eval(&value).norm(),
    })
}

/// `f = aₙ(t − cₙ)⋯(t − c₁)` (left) or `f = (t − c₁)⋯(t − cₙ)aₙ` (right).
///
/// `factors[0]` is `c₁`, a root of `f`; later factors are roots of the
/// successive quotients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearChain {
    pub side: Side,
    pub leading: Element,
    pub factors: Vec<Element>,
}

impl LinearChain {
    /// Convolves the factors back together, innermost factor last.
    pub fn reconvolve(&self) -> OrdinaryPolynomial {
        let mut acc = OrdinaryPolynomial::constant(self.leading, self.side);
        for c in self.factors.iter().rev() {
            let lin = OrdinaryPolynomial::linear(*c, self.side);
            acc = match self.side {
                Side::Left => acc.product_convolution(&lin),
                Side::Right => lin.product_convolution(&acc),
            }
            .expect("factors share kind and side");
        }
        acc
    }

    /// Largest coefficient deviation of the reconvolution from `f`, relative to `‖f‖`.
    pub fn relative_error(&self, f: &OrdinaryPolynomial) -> f64 {
        let g = self.reconvolve();
        let n = f.coeffs().len().max(g.coeffs().len());
        let diff = (0..n)
            .map(|k| f.coeff(k).distance(&g.coeff(k)))
            .fold(0.0, f64::max);
        diff / f.coefficient_norm().max(f64::MIN_POSITIVE)
    }
}

/// Peels off one root at a time with [`find_roots`] and [`OrdinaryPolynomial::divide_linear`].
pub fn factor_linear_chain(f: &OrdinaryPolynomial) -> Result<LinearChain> {
    f.require_degree(1)?;
    let mut g = f.clone();
    let mut factors = Vec::new();
    while g.degree() >= 1 {
        let roots = find_roots(&g)?;
        let c = roots
            .iter()
            .min_by(|a, b| a.residual.total_cmp(&b.residual))
            .ok_or(Error::NonConvergence {
                iterations: 0,
                best: Vec::new(),
            })?
            .value;
        g = g.divide_linear(&c)?.0;
        factors.push(c);
    }
    Ok(LinearChain {
        side: f.side(),
        leading: g.coeff(0),
        factors,
    })
}
