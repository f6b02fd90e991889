//! V-valued relations and functions, the V-powerset monad, and the lax
//! distributive laws of the powerset and ultrafilter monads over it.

mod check;
mod extension;
mod laws;
mod monad;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Elem, Quantale};

pub use check::{check_lax_law, LawBudget};
pub use extension::{
    lax_extension, law_from_extension, ExtensionOf, LawOf, LaxExtension, PowersetExtension, RelFn,
    UltrafilterExtension,
};
pub use laws::{Alpha, Beta, CorruptedAlpha, LaxLaw};
pub use monad::{FnSpace, MonadKind, TCarrier, TElem, PRINCIPAL_MEMBER_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VrelError {
    #[error("carrier mismatch: expected {expected} points, found {found}")]
    Mismatch { expected: usize, found: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("{law} expects {expected} inputs")]
    WrongRepresentation { law: String, expected: &'static str },
    #[error("function space V^{n} over {v} values is too large to index")]
    Overflow { v: usize, n: usize },
    #[error("carrier of size {0} is too large to enumerate")]
    TooLarge(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSet {
    labels: Vec<String>,
}

impl FiniteSet {
    pub fn new(labels: Vec<String>) -> Result<Self, VrelError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(VrelError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FiniteSet { labels })
    }

    /// The set `{x0, …, x(n-1)}`.
    pub fn points(n: usize) -> Self {
        FiniteSet { labels: (0..n).map(|i| format!("x{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Renders a subset given as a bitmask, as a sorted label list.
    pub fn subset_label(&self, mask: usize) -> String {
        let parts: Vec<&str> =
            (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A map `X → V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VFunction {
    pub values: Vec<Elem>,
}

impl VFunction {
    pub fn new(values: Vec<Elem>) -> Self {
        VFunction { values }
    }

    pub fn constant(n: usize, v: Elem) -> Self {
        VFunction { values: vec![v; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, x: usize) -> Elem {
        self.values[x]
    }

    pub fn leq(&self, q: &Quantale, other: &VFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| q.leq(a, b))
    }

    pub fn render(&self, q: &Quantale) -> String {
        let parts: Vec<&str> = self.values.iter().map(|&v| q.label(v)).collect();
        format!("({})", parts.join(","))
    }
}

/// A V-relation `r: X ↛ Y`, stored row-major as `r(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VRelation {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl VRelation {
    pub fn new(rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self, VrelError> {
        if entries.len() != rows * cols {
            return Err(VrelError::Mismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(VRelation { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Self {
        let entries = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        VRelation { rows, cols, entries }
    }

    /// Graph `f∘` of a map `f: X → Y`: `k` on `(x, f x)`, `⊥` elsewhere.
    pub fn graph(q: &Quantale, f: &[usize], cols: usize) -> Self {
        Self::from_fn(f.len(), cols, |x, y| if f[x] == y { q.unit() } else { q.bottom() })
    }

    pub fn identity(q: &Quantale, n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        Self::graph(q, &id, n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, x: usize, y: usize) -> Elem {
        self.entries[x * self.cols + y]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn leq(&self, q: &Quantale, other: &VRelation) -> bool {
        self.entries.iter().zip(&other.entries).all(|(&a, &b)| q.leq(a, b))
    }
}

/// `(s ∘ r)(x, z) = ⋁_y s(y, z) ⊗ r(x, y)`.
pub fn rel_compose(q: &Quantale, s: &VRelation, r: &VRelation) -> Result<VRelation, VrelError> {
    if r.cols != s.rows {
        return Err(VrelError::Mismatch { expected: r.cols, found: s.rows });
    }
    Ok(VRelation::from_fn(r.rows, s.cols, |x, z| {
        q.join_all((0..r.cols).map(|y| q.tensor(s.at(y, z), r.at(x, y))))
    }))
}

/// `f_!(σ)(y) = ⋁_{x ∈ f⁻¹y} σ(x)`.
pub fn push_forward(q: &Quantale, f: &[usize], cols: usize, sigma: &VFunction) -> VFunction {
    let mut out = vec![q.bottom(); cols];
    for (x, &y) in f.iter().enumerate() {
        out[y] = q.join(out[y], sigma.at(x));
    }
    VFunction::new(out)
}

/// `y_X(x)`: `k` at `x`, `⊥` elsewhere.
pub fn pv_unit(q: &Quantale, n: usize, x: usize) -> VFunction {
    VFunction::new((0..n).map(|y| if y == x { q.unit() } else { q.bottom() }).collect())
}

/// `s_X(Σ)(x) = ⋁_σ Σ(σ) ⊗ σ(x)`, for `Σ` given on a finite family of
/// functions and `⊥` elsewhere.
pub fn pv_multiply(q: &Quantale, n: usize, assignment: &[(VFunction, Elem)]) -> VFunction {
    VFunction::new(
        (0..n)
            .map(|x| q.join_all(assignment.iter().map(|(sigma, w)| q.tensor(*w, sigma.at(x)))))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;

    fn cost3() -> std::sync::Arc<Quantale> {
        Quantale::builtin(&Builtin::CostChain { max: 3 }).unwrap()
    }

    #[test]
    fn composition_over_cost_chain_adds() {
        let q = cost3();
        let e = |s| q.elem(s).unwrap();
        let r = VRelation::new(1, 1, vec![e("2")]).unwrap();
        let s = VRelation::new(1, 1, vec![e("1")]).unwrap();
        assert_eq!(rel_compose(&q, &s, &r).unwrap().at(0, 0), e("3"));
    }

    #[test]
    fn identity_graph_is_neutral() {
        let q = cost3();
        let r = VRelation::from_fn(2, 3, |x, y| Elem::new((x + 2 * y) % q.len()));
        assert_eq!(rel_compose(&q, &r, &VRelation::identity(&q, 2)).unwrap(), r);
        assert_eq!(rel_compose(&q, &VRelation::identity(&q, 3), &r).unwrap(), r);
        assert!(rel_compose(&q, &r, &r).is_err());
    }

    #[test]
    fn boolean_composition_is_relational() {
        let q = Quantale::builtin(&Builtin::TwoChain).unwrap();
        let b = |v: bool| if v { q.top() } else { q.bottom() };
        let r = VRelation::from_fn(3, 3, |x, y| b(y == (x + 1) % 3));
        let rr = rel_compose(&q, &r, &r).unwrap();
        for x in 0..3 {
            for z in 0..3 {
                assert_eq!(rr.at(x, z), b(z == (x + 2) % 3));
            }
        }
    }

    #[test]
    fn powerset_monad_examples() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let sigma = VFunction::new(vec![Elem::new(1), Elem::new(2)]);
        assert_eq!(pv_multiply(&q, 2, &[(sigma.clone(), q.unit())]), sigma);
        let collapsed = push_forward(&q, &[0, 0], 1, &sigma);
        assert_eq!(collapsed.values, vec![Elem::new(2)]);
        let tau = VFunction::new(vec![Elem::new(2), Elem::new(0)]);
        let got = pv_multiply(&q, 2, &[(sigma.clone(), Elem::new(1)), (tau.clone(), Elem::new(2))]);
        // brute force: x0 ↦ (1∧1) ∨ (2∧2) = 2, x1 ↦ (1∧2) ∨ (2∧0) = 1
        assert_eq!(got.values, vec![Elem::new(2), Elem::new(1)]);
    }
}
