use serde::Serialize;

use crate::algebra::{nth_root, Element};
use crate::error::{Error, Result};
use crate::jacobian::exact_jacobian;
use crate::polynomial::{OrdinaryPolynomial, Side};

const HALVINGS: usize = 60;

/// One step of strict descent of `|f|` from a real base point.
///
/// With `f(t₀ + x) = Σ dⱼxʲ` and `k` the lowest index ≥ 1 with `d_k ≠ 0`, the
/// direction `ζ` is the unit `k`-th root that makes `d_kζᵏ` a negative real
/// multiple of `d₀`. The step `ρζ` starts at `ρ = min(r/2, (|d₀|/|d_k|)^{1/k})`
/// and is halved until `|f|` decreases.
pub fn descent_step(f: &OrdinaryPolynomial, t0: &Element, r: f64) -> Result<Element> {
    f.kind().check(t0.kind())?;
    if !t0.is_real() {
        return Err(Error::NonRealBasePoint);
    }
    check_radius(r)?;
    f.require_degree(1)?;
    let shifted = f.taylor_shift(t0.re());
    let d = shifted.coeffs();
    let d0 = d[0];
    if d0.is_zero() {
        return Err(Error::AtRoot);
    }
    let (k, dk) = d
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, *c))
        .expect("degree ≥ 1 has a nonzero coefficient past the constant");
    let w = match f.side() {
        Side::Left => dk.inverse()? * d0,
        Side::Right => d0 * dk.inverse()?,
    };
    let zeta = nth_root(&(-(w / w.norm())), k as u32)?;
    let rho = (0.5 * r).min((d0.norm() / dk.norm()).powf(1.0 / k as f64));
    line_search(f, t0, &zeta, rho, d0.norm())
}

/// Descent step from any base point.
///
/// Real points use [`descent_step`]. Elsewhere the direction is the Newton
/// step of the linearization, capped at length `r/2`, falling back to steepest
/// descent of `|f|²` when the Jacobian is singular or the Newton direction
/// gives no decrease.
pub fn descent_step_general(f: &OrdinaryPolynomial, t0: &Element, r: f64) -> Result<Element> {
    if t0.is_real() {
        return descent_step(f, t0, r);
    }
    f.kind().check(t0.kind())?;
    check_radius(r)?;
    let value = f.eval(t0);
    let res = value.norm();
    if res == 0.0 {
        return Err(Error::AtRoot);
    }
    let j = exact_jacobian(f, t0)?.matrix;
    let rhs: Vec<f64> = value.coords().iter().map(|v| -v).collect();
    if let Some(delta) = j.solve(&rhs) {
        let delta = Element::new(f.kind(), &delta)?;
        let len = delta.norm();
        if len > 0.0 {
            let rho = len.min(0.5 * r);
            if let Ok(t) = line_search(f, t0, &(delta / len), rho, res) {
                return Ok(t);
            }
        }
    }
    let grad = Element::new(f.kind(), &j.transpose().mul_vec(value.coords()))?;
    let len = grad.norm();
    if len == 0.0 {
        return Err(Error::StepFailure);
    }
    let rho = (res / len).min(0.5 * r);
    line_search(f, t0, &(-(grad / len)), rho, res)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("descent radius must be positive".into()))
    }
}

fn line_search(f: &OrdinaryPolynomial, t0: &Element, dir: &Element, mut rho: f64, res: f64) -> Result<Element> {
    for _ in 0..HALVINGS {
        let t = *t0 + *dir * rho;
        if f.eval(&t).norm() < res {
            return Ok(t);
        }
        rho *= 0.5;
    }
    Err(Error::StepFailure)
}

/// Result of iterated descent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentTrace {
    pub point: Element,
    pub residual: f64,
    pub steps: usize,
    /// `|f|` after each step, starting with the base point.
    pub history: Vec<f64>,
    pub reached: bool,
}

/// Repeats [`descent_step_general`] until `|f| ≤ target` or `max_steps` steps.
///
/// Stops early, with `reached = false`, if a step fails.
pub fn descend(
    f: &OrdinaryPolynomial,
    t0: &Element,
    r: f64,
    target: f64,
    max_steps: usize,
) -> Result<DescentTrace> {
    f.kind().check(t0.kind())?;
    check_radius(r)?;
    let mut x = *t0;
    let mut residual = f.eval(&x).norm();
    let mut history = vec![residual];
    let mut steps = 0;
    while residual > target && steps < max_steps {
        match descent_step_general(f, &x, r) {
            Ok(t) => x = t,
            Err(Error::StepFailure) => break,
            Err(e) => return Err(e),
        }
        residual = f.eval(&x).norm();
        history.push(residual);
        steps += 1;
    }
    Ok(DescentTrace {
        point: x,
        residual,
        steps,
        history,
        reached: residual <= target,
    })
}
