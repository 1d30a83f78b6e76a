//! Numerical thresholds used across the crate.
//!
//! Everything runs in double precision; these constants are the only knobs
//! that decide when a floating-point quantity counts as zero.

/// Absolute bound on `|Re(a) - Re(b)|` and `||Im a| - |Im b||` for similarity.
pub const SIMILARITY: f64 = 1e-9;
/// Residual bound for algebraic identities such as `ζⁿ = a` or `c₁η = ηc₂`.
pub const RESIDUAL: f64 = 1e-10;
/// Residual bound for accepted polynomial roots, relative to `1 + ‖f‖`.
pub const ROOT: f64 = 1e-8;
/// Radius under which complex roots of a real polynomial are merged.
pub const CLUSTER: f64 = 1e-6;
/// Euclidean remainder truncation for approximate real-polynomial GCDs.
pub const GCD: f64 = 1e-8;
/// Zero band for Jacobian determinants, relative to the row-norm product.
pub const JACOBIAN_ZERO_BAND: f64 = 1e-9;
/// Remainder bound (relative to `1 + ‖f‖`) for `q_c | f` in spherical-root tests.
pub const SPHERICAL: f64 = 1e-6;

/// The full tolerance ladder as one record, for reports and CLI overrides.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub similarity: f64,
    pub residual: f64,
    pub root: f64,
    pub cluster: f64,
    pub gcd: f64,
    pub jacobian_zero_band: f64,
    pub spherical: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            similarity: SIMILARITY,
            residual: RESIDUAL,
            root: ROOT,
            cluster: CLUSTER,
            gcd: GCD,
            jacobian_zero_band: JACOBIAN_ZERO_BAND,
            spherical: SPHERICAL,
        }
    }
}
