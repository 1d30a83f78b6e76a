use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};

/// Binary parenthesization over factors `0..len`, read left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParenTree {
    Leaf(usize),
    Node(Box<ParenTree>, Box<ParenTree>),
}

impl ParenTree {
    /// `((f₀f₁)f₂)…`
    pub fn left_nested(len: usize) -> Self {
        assert!(len > 0, "a product needs at least one factor");
        (1..len).fold(ParenTree::Leaf(0), |acc, i| {
            ParenTree::Node(Box::new(acc), Box::new(ParenTree::Leaf(i)))
        })
    }

    /// `f₀(f₁(f₂…))`
    pub fn right_nested(len: usize) -> Self {
        assert!(len > 0, "a product needs at least one factor");
        (0..len - 1).rev().fold(ParenTree::Leaf(len - 1), |acc, i| {
            ParenTree::Node(Box::new(ParenTree::Leaf(i)), Box::new(acc))
        })
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ParenTree::Leaf(i) => out.push(*i),
            ParenTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        let mut v = Vec::new();
        self.collect_leaves(&mut v);
        v.len()
    }

    fn fold(&self, factor: &impl Fn(usize) -> Element) -> Element {
        match self {
            ParenTree::Leaf(i) => factor(*i),
            ParenTree::Node(l, r) => l.fold(factor) * r.fold(factor),
        }
    }
}

/// `φ(t) = a₀ t a₁ t … t aₙ` with an explicit evaluation order.
///
/// Factor `2i` is `aᵢ` and factor `2i + 1` is `t`. In ℍ the tree does not
/// affect the value.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMonomial {
    kind: AlgebraKind,
    coeffs: Vec<Element>,
    tree: ParenTree,
}

impl GeneralMonomial {
    pub fn new(kind: AlgebraKind, coeffs: Vec<Element>, tree: ParenTree) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a monomial needs at least one coefficient".into()));
        }
        for c in &coeffs {
            kind.check(c.kind())?;
        }
        let expected = 2 * coeffs.len() - 1;
        let mut leaves = Vec::new();
        tree.collect_leaves(&mut leaves);
        if !leaves.iter().copied().eq(0..expected) {
            return Err(Error::MalformedTree { expected });
        }
        Ok(Self { kind, coeffs, tree })
    }

    pub fn left_nested(kind: AlgebraKind, coeffs: Vec<Element>) -> Result<Self> {
        let len = 2 * coeffs.len().max(1) - 1;
        Self::new(kind, coeffs, ParenTree::left_nested(len))
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tree(&self) -> &ParenTree {
        &self.tree
    }

    pub fn evaluate(&self, t: &Element) -> Result<Element> {
        self.kind.check(t.kind())?;
        Ok(self.tree.fold(&|i| if i % 2 == 0 { self.coeffs[i / 2] } else { *t }))
    }
}

/// A finite sum of general monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialSum {
    kind: AlgebraKind,
    terms: Vec<GeneralMonomial>,
}

impl MonomialSum {
    pub fn new(kind: AlgebraKind, terms: Vec<GeneralMonomial>) -> Result<Self> {
        for m in &terms {
            kind.check(m.kind())?;
        }
        Ok(Self { kind, terms })
    }

    /// `i t² j + j t² i − 1` over ℍ, which has no roots.
    pub fn nonregular_example() -> Self {
        let h = AlgebraKind::Quaternion;
        let (one, i, j) = (Element::one(h), Element::basis(h, 1), Element::basis(h, 2));
        let terms = vec![
            GeneralMonomial::left_nested(h, vec![i, one, j]).expect("valid tree"),
            GeneralMonomial::left_nested(h, vec![j, one, i]).expect("valid tree"),
            GeneralMonomial::left_nested(h, vec![-one]).expect("valid tree"),
        ];
        Self { kind: h, terms }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn terms(&self) -> &[GeneralMonomial] {
        &self.terms
    }

    pub fn evaluate(&self, t: &Element) -> Result<Element> {
        self.terms
            .iter()
            .try_fold(Element::zero(self.kind), |acc, m| Ok(acc + m.evaluate(t)?))
    }
}
