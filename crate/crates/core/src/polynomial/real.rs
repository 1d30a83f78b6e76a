use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::tolerance;

/// A univariate polynomial with real coefficients, lowest degree first.
#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `t² − 2αt + α² + β²`, the real quadratic vanishing at `α ± βi`.
    pub fn characteristic(alpha: f64, beta: f64) -> Self {
        Self::new(vec![alpha * alpha + beta * beta, -2.0 * alpha, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        let mut m = self.scale(1.0 / lc);
        *m.coeffs.last_mut().unwrap() = 1.0;
        m
    }

    /// Zeroes coefficients with `|c| ≤ threshold` and re-trims.
    fn chop(&self, threshold: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.abs() <= threshold { 0.0 } else { c })
                .collect(),
        )
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let factor = rem[k + dd] / lc;
            quot[k] = factor;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= factor * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Approximate monic GCD.
    ///
    /// Integer-valued inputs go through an exact primitive remainder sequence;
    /// otherwise a Euclidean sequence on max-normalized polynomials treats a
    /// remainder as zero once it falls below [`tolerance::GCD`] relative to the
    /// dividend.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if let Some(g) = integer_gcd(a, b) {
            return g;
        }
        let normalize = |p: &Self| {
            let m = p.max_abs_coeff();
            if m == 0.0 {
                Self::zero()
            } else {
                p.scale(1.0 / m)
            }
        };
        let (mut x, mut y) = (normalize(a), normalize(b));
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            let r = r.chop(tolerance::GCD * x.max_abs_coeff().max(y.max_abs_coeff()));
            x = y;
            y = normalize(&r);
        }
        x.monic()
    }

    /// Yun's square-free decomposition: `self = c · Π pᵢ^i` with each `pᵢ`
    /// monic, square-free and pairwise coprime. Factors of degree 0 are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a = Self::gcd(&p, &dp);
        let mut b = p.div_rem(&a).0;
        let c = dp.div_rem(&a).0;
        let clean = |d: Self, scale: f64| d.chop(tolerance::GCD * scale.max(1.0));
        let mut d = clean(&c - &b.derivative(), c.max_abs_coeff());
        let mut i = 1;
        while b.degree() > 0 && i <= self.coeffs.len() {
            let ai = if d.is_zero() { b.monic() } else { Self::gcd(&b, &d) };
            let next_b = b.div_rem(&ai).0;
            let c = if d.is_zero() { Self::zero() } else { d.div_rem(&ai).0 };
            d = clean(&c - &next_b.derivative(), c.max_abs_coeff());
            b = next_b;
            if ai.degree() > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        out
    }
}

const INTEGER_LIMIT: f64 = (1u64 << 40) as f64;

impl RealPolynomial {
    /// True when every coefficient is an integer small enough for the exact
    /// GCD path.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|&c| c.fract() == 0.0 && c.abs() <= INTEGER_LIMIT)
    }
}

/// Exact GCD when every coefficient is an integer of moderate size.
fn integer_gcd(a: &RealPolynomial, b: &RealPolynomial) -> Option<RealPolynomial> {
    let to_int = |p: &RealPolynomial| -> Option<Vec<i128>> {
        p.coeffs
            .iter()
            .map(|&c| (c.fract() == 0.0 && c.abs() <= INTEGER_LIMIT).then_some(c as i128))
            .collect()
    };
    let (mut x, mut y) = (to_int(a)?, to_int(b)?);
    x = primitive(x)?;
    y = primitive(y)?;
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_remainder(&x, &y)?;
        x = y;
        y = primitive(r)?;
    }
    Some(RealPolynomial::new(x.into_iter().map(|c| c as f64).collect()).monic())
}

fn trim_int(mut p: Vec<i128>) -> Vec<i128> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn primitive(p: Vec<i128>) -> Option<Vec<i128>> {
    let p = trim_int(p);
    let g = p.iter().fold(0i128, |g, &c| gcd_i128(g, c.checked_abs().unwrap_or(0)));
    if g == 0 {
        return Some(p);
    }
    let sign = if *p.last()? < 0 { -1 } else { 1 };
    Some(p.into_iter().map(|c| sign * c / g).collect())
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn pseudo_remainder(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let lc = *b.last()?;
    let mut r = a.to_vec();
    while r.len() >= b.len() && !r.is_empty() {
        let lead = *r.last()?;
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c = c.checked_mul(lc)?;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].checked_sub(lead.checked_mul(*bj)?)?;
        }
        r = trim_int(r);
    }
    Some(r)
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;
    fn add(self, rhs: &RealPolynomial) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, rhs: &RealPolynomial) -> RealPolynomial {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: &RealPolynomial) -> RealPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RealPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

impl fmt::Debug for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPolynomial{:?}", self.coeffs)
    }
}
