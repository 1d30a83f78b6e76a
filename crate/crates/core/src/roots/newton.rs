use serde::Serialize;

use crate::algebra::Element;
use crate::error::Result;
use crate::jacobian::exact_jacobian;
use crate::polynomial::OrdinaryPolynomial;
use crate::tolerance;

/// Default iteration cap for [`newton_refine`].
pub const MAX_NEWTON_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NewtonStatus {
    Converged,
    /// Converged linearly; typical of a multiple root where `det J = 0`.
    SlowConvergence,
    /// The Jacobian could not be inverted before the residual target was met.
    Singular,
    /// No damped step reduced the residual.
    Stalled,
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NewtonOutcome {
    pub point: Element,
    pub residual: f64,
    pub iterations: usize,
    pub status: NewtonStatus,
    /// `det J(f)` at the returned point.
    pub determinant: f64,
}

/// Damped Newton iteration on `f` viewed as a map `ℝ^{m+1} → ℝ^{m+1}`,
/// stopping once `|f| ≤ 1e-8 · (1 + ‖f‖)`.
pub fn newton_refine(f: &OrdinaryPolynomial, c0: &Element) -> Result<NewtonOutcome> {
    let target = tolerance::ROOT * (1.0 + f.coefficient_norm());
    newton_refine_with(f, c0, target, MAX_NEWTON_ITERATIONS)
}

/// As [`newton_refine`] with an explicit residual target and iteration cap.
///
/// Each accepted step strictly lowers `|f|`; the step length is halved until
/// it does. The status is judged against the default root tolerance even when
/// `target` is tighter.
pub fn newton_refine_with(
    f: &OrdinaryPolynomial,
    c0: &Element,
    target: f64,
    max_iterations: usize,
) -> Result<NewtonOutcome> {
    f.kind().check(c0.kind())?;
    let accept = tolerance::ROOT * (1.0 + f.coefficient_norm());
    let mut x = *c0;
    let mut value = f.eval(&x);
    let mut residual = value.norm();
    let mut steps = Vec::new();
    let mut singular = false;
    let mut iterations = 0;
    while iterations < max_iterations && residual > target {
        let j = exact_jacobian(f, &x)?;
        let rhs: Vec<f64> = value.coords().iter().map(|v| -v).collect();
        let Some(delta) = j.matrix.solve(&rhs) else {
            singular = true;
            break;
        };
        let delta = Element::new(f.kind(), &delta)?;
        iterations += 1;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let candidate = x + delta * lambda;
            let v = f.eval(&candidate);
            if v.norm() < residual {
                accepted = Some((candidate, v));
                break;
            }
            lambda *= 0.5;
        }
        let Some((candidate, v)) = accepted else {
            break;
        };
        steps.push((candidate - x).norm());
        x = candidate;
        value = v;
        residual = v.norm();
    }
    let status = if residual <= accept {
        if linear_rate(&steps, &x) {
            NewtonStatus::SlowConvergence
        } else {
            NewtonStatus::Converged
        }
    } else if singular {
        NewtonStatus::Singular
    } else if iterations >= max_iterations {
        NewtonStatus::MaxIterations
    } else {
        NewtonStatus::Stalled
    };
    Ok(NewtonOutcome {
        point: x,
        residual,
        iterations,
        status,
        determinant: exact_jacobian(f, &x)?.det(),
    })
}

/// True when the last two steps above rounding level shrank by less than 4×.
fn linear_rate(steps: &[f64], x: &Element) -> bool {
    let floor = 1e-12 * (1.0 + x.norm());
    let big: Vec<f64> = steps.iter().copied().filter(|&s| s > floor).collect();
    match big.as_slice() {
        [.., a, b] => b / a > 0.25,
        _ => false,
    }
}
