//! Arithmetic in the quaternions ℍ and the octonions 𝕆.
//!
//! Both algebras share one structure-constant table. The octonion units
//! `e₁..e₇` multiply along seven oriented triples, each behaving like
//! `(i, j, k)`; the first triple is `(e₁, e₂, e₃)`, so ℍ is the subalgebra
//! spanned by `1, e₁, e₂, e₃` with `e₁ = i`, `e₂ = j`, `e₃ = k`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::tolerance;

/// Which normed division algebra an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(rename = "H")]
    Quaternion,
    #[serde(rename = "O")]
    Octonion,
}

impl AlgebraKind {
    /// Real dimension: 4 or 8.
    pub const fn dim(self) -> usize {
        match self {
            AlgebraKind::Quaternion => 4,
            AlgebraKind::Octonion => 8,
        }
    }

    /// Number of imaginary units: 3 or 7.
    pub const fn imaginary_units(self) -> usize {
        self.dim() - 1
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AlgebraKind::Quaternion => "H",
            AlgebraKind::Octonion => "O",
        }
    }

    pub(crate) fn check(self, other: AlgebraKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::KindMismatch(self, other))
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" | "quaternion" | "quaternions" => Ok(AlgebraKind::Quaternion),
            "O" | "o" | "octonion" | "octonions" => Ok(AlgebraKind::Octonion),
            other => Err(Error::InvalidArgument(format!("unknown algebra `{other}`"))),
        }
    }
}

/// The seven oriented triples `(a, b, c)` with `e_a e_b = e_c`.
pub const OCTONION_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 6, 7),
    (2, 6, 4),
    (2, 5, 7),
    (3, 4, 7),
    (3, 5, 6),
];

/// `MULTIPLICATION_TABLE[a][b] = (s, c)` means `e_a e_b = s · e_c` (with `e₀ = 1`).
pub const MULTIPLICATION_TABLE: [[(i8, u8); 8]; 8] = build_table();

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        i += 1;
    }
    i = 1;
    while i < 8 {
        t[i][i] = (-1, 0);
        i += 1;
    }
    let mut n = 0;
    while n < OCTONION_TRIPLES.len() {
        let (a, b, c) = OCTONION_TRIPLES[n];
        t[a][b] = (1, c as u8);
        t[b][a] = (-1, c as u8);
        t[b][c] = (1, a as u8);
        t[c][b] = (-1, a as u8);
        t[c][a] = (1, b as u8);
        t[a][c] = (-1, b as u8);
        n += 1;
    }
    t
}

/// A quaternion or octonion, stored as `(c₀, c₁, …, c_m)`.
///
/// Coordinates past `kind.dim()` are kept at zero.
#[derive(Clone, Copy, PartialEq)]
pub struct Element {
    kind: AlgebraKind,
    coords: [f64; 8],
}

impl Element {
    pub fn new(kind: AlgebraKind, coords: &[f64]) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::BadLength {
                expected: kind.dim(),
                got: coords.len(),
            });
        }
        let mut c = [0.0; 8];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self { kind, coords: c })
    }

    pub const fn zero(kind: AlgebraKind) -> Self {
        Self {
            kind,
            coords: [0.0; 8],
        }
    }

    pub fn real(kind: AlgebraKind, r: f64) -> Self {
        let mut e = Self::zero(kind);
        e.coords[0] = r;
        e
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::real(kind, 1.0)
    }

    /// The basis element `e_index` (`e₀ = 1`).
    ///
    /// # Panics
    /// If `index >= kind.dim()`.
    pub fn basis(kind: AlgebraKind, index: usize) -> Self {
        assert!(index < kind.dim(), "basis index {index} out of range for {kind}");
        let mut e = Self::zero(kind);
        e.coords[index] = 1.0;
        e
    }

    /// `α + βi` with the imaginary part on `e₁`.
    pub fn complex(kind: AlgebraKind, alpha: f64, beta: f64) -> Self {
        let mut e = Self::zero(kind);
        e.coords[0] = alpha;
        e.coords[1] = beta;
        e
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.kind.dim()]
    }

    pub fn coord(&self, index: usize) -> f64 {
        self.coords()[index]
    }

    pub fn re(&self) -> f64 {
        self.coords[0]
    }

    /// The imaginary part `Im(c)` as an element with zero real part.
    pub fn im(&self) -> Self {
        let mut e = *self;
        e.coords[0] = 0.0;
        e
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn im_norm(&self) -> f64 {
        self.coords()[1..].iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0.0)
    }

    pub fn conj(&self) -> Self {
        let mut e = *self;
        for c in &mut e.coords[1..] {
            *c = 0.0 - *c;
        }
        e
    }

    /// `c⁻¹ = c̄ · |c|⁻²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n2)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut e = *self;
        for c in &mut e.coords {
            *c *= s;
        }
        e
    }

    /// Euclidean distance between coordinate vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    /// Same element, reinterpreted in another algebra. Going from 𝕆 to ℍ
    /// drops `e₄..e₇`.
    pub fn embed(&self, kind: AlgebraKind) -> Self {
        let mut e = Self::zero(kind);
        let d = kind.dim().min(self.kind.dim());
        e.coords[..d].copy_from_slice(&self.coords[..d]);
        e
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.kind.check(rhs.kind)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let dim = self.kind.dim();
        let mut out = [0.0; 8];
        for (a, &x) in self.coords[..dim].iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in rhs.coords[..dim].iter().enumerate() {
                let (sign, c) = MULTIPLICATION_TABLE[a][b];
                out[c as usize] += f64::from(sign) * x * y;
            }
        }
        Self {
            kind: self.kind,
            coords: out,
        }
    }

    /// `self^n` by repeated left-nested multiplication (`n = 0` gives 1).
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one(self.kind);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.coords())
    }
}

/// Unit name for coordinate `index` as accepted by the literal parser.
pub fn unit_name(kind: AlgebraKind, index: usize) -> &'static str {
    const QUATERNION: [&str; 4] = ["", "i", "j", "k"];
    const OCTONION: [&str; 8] = ["", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];
    match kind {
        AlgebraKind::Quaternion => QUATERNION[index],
        AlgebraKind::Octonion => OCTONION[index],
    }
}

impl fmt::Display for Element {
    /// Prints in the literal syntax, e.g. `2 - 3i + 0.5k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &v) in self.coords().iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let sign = if v.is_sign_negative() { "-" } else { "+" };
            if first {
                if v.is_sign_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}{}", v.abs(), unit_name(self.kind, idx))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += rhs;
        self
    }
}

impl AddAssign for Element {
    fn add_assign(&mut self, rhs: Element) {
        assert_eq!(self.kind, rhs.kind, "cannot add elements of different algebras");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= rhs;
        self
    }
}

impl SubAssign for Element {
    fn sub_assign(&mut self, rhs: Element) {
        assert_eq!(self.kind, rhs.kind, "cannot subtract elements of different algebras");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(mut self) -> Element {
        // 0 − x rather than −x keeps zero coordinates at +0.
        for c in &mut self.coords {
            *c = 0.0 - *c;
        }
        self
    }
}

impl Mul for Element {
    type Output = Element;
    /// # Panics
    /// On mismatched algebras; use [`Element::checked_mul`] to get an error instead.
    fn mul(self, rhs: Element) -> Element {
        assert_eq!(self.kind, rhs.kind, "cannot multiply elements of different algebras");
        self.mul_unchecked(&rhs)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}

impl Div<f64> for Element {
    type Output = Element;
    fn div(self, rhs: f64) -> Element {
        self.scale(1.0 / rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    kind: AlgebraKind,
    coords: Vec<f64>,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            kind: self.kind,
            coords: self.coords().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        Element::new(repr.kind, &repr.coords).map_err(serde::de::Error::custom)
    }
}

/// Matrix `𝒞` of left multiplication: `𝒞 x = c ∗ x` (equivalently `x𝒞ᵗ = c ∗ x`
/// for row vectors).
pub fn matrix_rep(c: &Element) -> RealMatrix {
    let kind = c.kind();
    RealMatrix::from_columns(kind.dim(), |j| (*c * Element::basis(kind, j)).coords().to_vec())
}

/// Matrix of right multiplication `x ↦ x ∗ c`.
pub fn right_matrix_rep(c: &Element) -> RealMatrix {
    let kind = c.kind();
    RealMatrix::from_columns(kind.dim(), |j| (Element::basis(kind, j) * *c).coords().to_vec())
}

/// `(α, β)` with `α = Re(c)` and `β = |Im(c)| ≥ 0`; `c` is similar to `α + βi`.
pub fn complex_representative(c: &Element) -> (f64, f64) {
    (c.re(), c.im_norm())
}

/// Similarity test: equal real parts and equal imaginary-part norms, each
/// within [`tolerance::SIMILARITY`].
pub fn similarity_check(c1: &Element, c2: &Element) -> Result<bool> {
    c1.kind().check(c2.kind())?;
    let (a1, b1) = complex_representative(c1);
    let (a2, b2) = complex_representative(c2);
    Ok((a1 - a2).abs() <= tolerance::SIMILARITY && (b1 - b2).abs() <= tolerance::SIMILARITY)
}

/// A unit imaginary element orthogonal to the unit imaginary `u`.
fn orthogonal_unit(u: &Element) -> Element {
    let kind = u.kind();
    // The basis direction least aligned with u, then one Gram-Schmidt step.
    let k = (1..kind.dim())
        .min_by(|&a, &b| u.coord(a).abs().total_cmp(&u.coord(b).abs()))
        .unwrap_or(1);
    let ek = Element::basis(kind, k);
    let w = ek - *u * u.coord(k);
    w / w.norm()
}

/// A unit `η` with `c₁ ∗ η = η ∗ c₂`.
///
/// With `u₁, u₂` the normalized imaginary parts, `η ∝ 1 − u₁u₂` satisfies
/// `u₁η = u₁ + u₂ = ηu₂` by alternativity. When `u₂ = −u₁` that vanishes and
/// any unit orthogonal to `u₁` is used instead (`e₂` when `u₁ = ±e₁`).
pub fn similarity_witness(c1: &Element, c2: &Element) -> Result<Element> {
    if !similarity_check(c1, c2)? {
        return Err(Error::NotSimilar);
    }
    let kind = c1.kind();
    let (b1, b2) = (c1.im_norm(), c2.im_norm());
    if b1 <= tolerance::SIMILARITY || b2 == 0.0 {
        return Ok(Element::one(kind));
    }
    let u1 = c1.im() / b1;
    let u2 = c2.im() / b2;
    let eta = Element::one(kind) - u1 * u2;
    let n = eta.norm();
    if n < 1e-6 {
        return Ok(orthogonal_unit(&u1));
    }
    Ok(eta / n)
}

/// A solution of `ζⁿ = a`.
///
/// With `a ∼ α + βi` and `α + βi = ρe^{iθ}`, θ ∈ (−π, π], the root is
/// `ηbη⁻¹` where `b = ρ^{1/n}e^{iθ/n}` and `η` rotates `i` onto the imaginary
/// direction of `a`. Real `a` keeps `η = 1`, so the root sits in the `e₁` plane.
pub fn nth_root(a: &Element, n: u32) -> Result<Element> {
    if n == 0 {
        return Err(Error::InvalidArgument("root index must be at least 1".into()));
    }
    let kind = a.kind();
    if n == 1 || a.is_zero() {
        return Ok(*a);
    }
    let (alpha, beta) = complex_representative(a);
    let rho = alpha.hypot(beta);
    let theta = beta.atan2(alpha);
    let modulus = rho.powf(1.0 / f64::from(n));
    let phi = theta / f64::from(n);
    let (re, im) = (modulus * phi.cos(), modulus * phi.sin());
    if beta == 0.0 {
        return Ok(Element::complex(kind, re, im));
    }
    // ηbη⁻¹ with b = re + im·i is re + im·u, u = Im(a)/|Im(a)|.
    let u = a.im() / beta;
    Ok(Element::real(kind, re) + u * im)
}
