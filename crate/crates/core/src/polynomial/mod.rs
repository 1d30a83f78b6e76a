//! Ordinary (one-sided) polynomials over ℍ and 𝕆, general monomials, and the
//! real polynomials that arise from them.
//!
//! A left polynomial is `f(t) = Σ aₖtᵏ`, a right polynomial `f(t) = Σ tᵏaₖ`.
//! Algorithms are written for the left side; right polynomials go through the
//! mirror `f ↦ f*` with `f(t) = conj(f*(conj t))`, which swaps the side and
//! conjugates every coefficient.

mod monomial;
mod real;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use monomial::{GeneralMonomial, MonomialSum, ParenTree};
pub use real::RealPolynomial;

use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};

/// Which side of the powers the coefficients sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// `Σ aₖtᵏ` (left) or `Σ tᵏaₖ` (right); `coeffs[k]` is `aₖ`.
///
/// Trailing zero coefficients are dropped on construction, so the last
/// coefficient (if any) is the nonzero leading one.
#[derive(Clone, PartialEq)]
pub struct OrdinaryPolynomial {
    kind: AlgebraKind,
    side: Side,
    coeffs: Vec<Element>,
}

impl OrdinaryPolynomial {
    pub fn new(kind: AlgebraKind, side: Side, mut coeffs: Vec<Element>) -> Result<Self> {
        for c in &coeffs {
            kind.check(c.kind())?;
        }
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        Ok(Self { kind, side, coeffs })
    }

    fn from_parts(kind: AlgebraKind, side: Side, coeffs: Vec<Element>) -> Self {
        Self::new(kind, side, coeffs).expect("coefficients share the polynomial's kind")
    }

    pub fn zero(kind: AlgebraKind, side: Side) -> Self {
        Self {
            kind,
            side,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Element, side: Side) -> Self {
        Self::from_parts(c.kind(), side, vec![c])
    }

    /// Polynomial with real coefficients, lowest degree first.
    pub fn from_reals(kind: AlgebraKind, side: Side, coeffs: &[f64]) -> Self {
        Self::from_parts(kind, side, coeffs.iter().map(|&r| Element::real(kind, r)).collect())
    }

    /// `t − c`.
    pub fn linear(c: Element, side: Side) -> Self {
        Self::from_parts(c.kind(), side, vec![-c, Element::one(c.kind())])
    }

    /// `tⁿ`.
    pub fn power(kind: AlgebraKind, side: Side, n: usize) -> Self {
        let mut coeffs = vec![Element::zero(kind); n + 1];
        coeffs[n] = Element::one(kind);
        Self::from_parts(kind, side, coeffs)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// `aₖ`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Element {
        self.coeffs.get(k).copied().unwrap_or(Element::zero(self.kind))
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Element> {
        self.coeffs.last().copied()
    }

    /// `maxₖ |aₖ|`.
    pub fn coefficient_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn with_side(&self, side: Side) -> Self {
        Self {
            side,
            ..self.clone()
        }
    }

    pub(crate) fn require_degree(&self, need: usize) -> Result<()> {
        if self.degree() < need as isize {
            Err(Error::DegreeTooSmall {
                need,
                got: self.degree(),
            })
        } else {
            Ok(())
        }
    }

    /// The mirror image: opposite side, conjugated coefficients.
    /// `f(t) = conj(f.mirror()(conj t))`.
    pub fn mirror(&self) -> Self {
        Self {
            kind: self.kind,
            side: self.side.flip(),
            coeffs: self.coeffs.iter().map(Element::conj).collect(),
        }
    }

    /// `f(t)` with powers built by left-nested products.
    pub fn evaluate(&self, t: &Element) -> Result<Element> {
        self.kind.check(t.kind())?;
        Ok(self.eval(t))
    }

    /// `f(t)`; panics on mismatched algebras.
    pub(crate) fn eval(&self, t: &Element) -> Element {
        let mut acc = Element::zero(self.kind);
        let mut power = Element::one(self.kind);
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power * *t;
            }
            acc += match self.side {
                Side::Left => *a * power,
                Side::Right => power * *a,
            };
        }
        acc
    }

    /// `f − h` for a constant `h`.
    pub fn sub_constant(&self, h: &Element) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Element::zero(self.kind));
        }
        coeffs[0] -= *h;
        Self::from_parts(self.kind, self.side, coeffs)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.kind.check(rhs.kind)?;
        if self.side != rhs.side {
            return Err(Error::SideMismatch);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::from_parts(
            self.kind,
            self.side,
            (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        ))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_parts(self.kind, self.side, self.coeffs.iter().map(|c| *c * s).collect())
    }

    /// `fg` with `cₖ = Σᵢ aᵢ ∗ bₖ₋ᵢ`, coefficients multiplied in the order written.
    pub fn product_convolution(&self, g: &Self) -> Result<Self> {
        self.kind.check(g.kind)?;
        if self.side != g.side {
            return Err(Error::SideMismatch);
        }
        if self.is_zero() || g.is_zero() {
            return Ok(Self::zero(self.kind, self.side));
        }
        let mut out = vec![Element::zero(self.kind); self.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        Ok(Self::from_parts(self.kind, self.side, out))
    }

    /// `f̄ = a₀(t) − Σ eᵢaᵢ(t)`: every coefficient conjugated.
    pub fn conjugate_polynomial(&self) -> Self {
        Self::from_parts(self.kind, self.side, self.coeffs.iter().map(Element::conj).collect())
    }

    /// The real component polynomial `a_j(t)` in `f = a₀(t) + Σ eⱼaⱼ(t)`.
    pub fn component(&self, j: usize) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|c| c.coord(j)).collect())
    }

    /// `f̄ ∗ f = Σⱼ aⱼ(t)²`.
    pub fn norm_polynomial(&self) -> Result<RealPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok((0..self.kind.dim())
            .map(|j| self.component(j))
            .fold(RealPolynomial::zero(), |acc, a| &acc + &(&a * &a)))
    }

    /// Synthetic division by `t − c`.
    ///
    /// Left: `f = g·(t − c) + r`, right: `f = (t − c)·g + r`. In both cases
    /// `r = f(c)`.
    pub fn divide_linear(&self, c: &Element) -> Result<(Self, Element)> {
        self.kind.check(c.kind())?;
        self.require_degree(1)?;
        if self.side == Side::Right {
            let (g, r) = self.mirror().divide_linear(&c.conj())?;
            return Ok((g.mirror(), r.conj()));
        }
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![Element::zero(self.kind); n];
        quotient[n - 1] = self.coeffs[n];
        for k in (1..n).rev() {
            quotient[k - 1] = self.coeffs[k] + quotient[k] * *c;
        }
        let remainder = self.coeffs[0] + quotient[0] * *c;
        Ok((Self::from_parts(self.kind, self.side, quotient), remainder))
    }

    /// Division by the real quadratic `q(t) = t² − 2αt + α² + β²`:
    /// `f = h·q + (r₁t + r₀)`. `q` is central, so this is side-independent.
    pub fn divide_characteristic(&self, alpha: f64, beta: f64) -> Result<(Self, Element, Element)> {
        self.require_degree(2)?;
        if beta < 0.0 {
            return Err(Error::InvalidArgument("β must be non-negative".into()));
        }
        let (lin, cst) = (-2.0 * alpha, alpha * alpha + beta * beta);
        let mut rem = self.coeffs.clone();
        let n = rem.len() - 1;
        let mut quotient = vec![Element::zero(self.kind); n - 1];
        for k in (2..=n).rev() {
            let lead = rem[k];
            quotient[k - 2] = lead;
            rem[k - 1] -= lead * lin;
            rem[k - 2] -= lead * cst;
            rem[k] = Element::zero(self.kind);
        }
        Ok((Self::from_parts(self.kind, self.side, quotient), rem[1], rem[0]))
    }

    /// True when the component polynomials `a₀..a_m` have a degree-0 GCD,
    /// i.e. `f` has no spherical roots.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = (0..self.kind.dim())
            .map(|j| self.component(j))
            .filter(|p| !p.is_zero())
            .fold(RealPolynomial::zero(), |g, p| RealPolynomial::gcd(&g, &p));
        Ok(g.degree() <= 0)
    }

    /// Coefficients of `f(t + t₀)` for real `t₀`; reals are central so the
    /// shifted polynomial stays ordinary.
    pub fn taylor_shift(&self, t0: f64) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Element::zero(self.kind); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            let mut binom = 1.0;
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                *slot += *a * (binom * t0.powi((k - j) as i32));
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        Self::from_parts(self.kind, self.side, out)
    }
}

/// The pointwise product `t ↦ f(t) ∗ g(t)`.
///
/// This differs from [`OrdinaryPolynomial::product_convolution`] in general.
pub fn pointwise_product<F, G>(f: F, g: G) -> impl Fn(&Element) -> Element
where
    F: Fn(&Element) -> Element,
    G: Fn(&Element) -> Element,
{
    move |t| f(t) * g(t)
}

/// Evaluator closure for a polynomial.
pub fn evaluator(f: &OrdinaryPolynomial) -> impl Fn(&Element) -> Element + '_ {
    move |t| f.eval(t)
}

impl fmt::Debug for OrdinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrdinaryPolynomial({:?}, {:?}, {:?})", self.kind, self.side, self.coeffs)
    }
}

impl fmt::Display for OrdinaryPolynomial {
    /// Prints in the polynomial text grammar, highest power first. The side is
    /// not part of the text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let nonzero: Vec<(usize, f64)> = c
                .coords()
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, v)| *v != 0.0)
                .collect();
            let (negative, body) = match nonzero.as_slice() {
                [(idx, v)] => {
                    let unit = crate::algebra::unit_name(self.kind, *idx);
                    let body = if *idx == 0 && v.abs() == 1.0 && k > 0 {
                        String::new()
                    } else {
                        format!("{}{unit}", v.abs())
                    };
                    (v.is_sign_negative(), body)
                }
                _ => (false, format!("({c})")),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            f.write_str(&body)?;
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    kind: AlgebraKind,
    side: Side,
    coeffs: Vec<Vec<f64>>,
}

impl Serialize for OrdinaryPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            kind: self.kind,
            side: self.side,
            coeffs: self.coeffs.iter().map(|c| c.coords().to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrdinaryPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| Element::new(repr.kind, c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        OrdinaryPolynomial::new(repr.kind, repr.side, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
