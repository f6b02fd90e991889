//! Monotone maps between quantales, their Galois adjoints, and the
//! homomorphism classification used by change of base.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use super::{Elem, Quantale};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map table has {got} entries, source has {expected} elements")]
    Length { expected: usize, got: usize },
    #[error("map is not monotone: {a} ≤ {b} but {fa} ≰ {fb}")]
    NotMonotone { a: String, b: String, fa: String, fb: String },
    #[error("maps cannot be composed: intermediate quantales differ")]
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct MonotoneMap {
    source: Arc<Quantale>,
    target: Arc<Quantale>,
    table: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuantaleHomClass {
    pub is_lax_hom: bool,
    pub is_hom: bool,
    pub preserves_meets: bool,
    pub preserves_joins: bool,
}

#[derive(Clone, Debug)]
pub struct Adjoints {
    pub left: Option<MonotoneMap>,
    pub right: Option<MonotoneMap>,
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.table == other.table
    }
}

impl MonotoneMap {
    pub fn new(source: Arc<Quantale>, target: Arc<Quantale>, table: Vec<Elem>) -> Result<Self, MapError> {
        if table.len() != source.len() {
            return Err(MapError::Length { expected: source.len(), got: table.len() });
        }
        for a in source.elements() {
            for b in source.elements() {
                let (fa, fb) = (table[a.index()], table[b.index()]);
                if source.leq(a, b) && !target.leq(fa, fb) {
                    return Err(MapError::NotMonotone {
                        a: source.label(a).into(),
                        b: source.label(b).into(),
                        fa: target.label(fa).into(),
                        fb: target.label(fb).into(),
                    });
                }
            }
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn from_fn(
        source: Arc<Quantale>,
        target: Arc<Quantale>,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Self, MapError> {
        let table = source.elements().map(f).collect();
        Self::new(source, target, table)
    }

    pub fn identity(q: Arc<Quantale>) -> Self {
        let table = q.elements().collect();
        MonotoneMap { source: q.clone(), target: q, table }
    }

    pub fn constant(source: Arc<Quantale>, target: Arc<Quantale>, value: Elem) -> Self {
        let table = vec![value; source.len()];
        MonotoneMap { source, target, table }
    }

    pub fn source(&self) -> &Arc<Quantale> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quantale> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, v: Elem) -> Elem {
        self.table[v.index()]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, MapError> {
        if *self.target != *other.source {
            return Err(MapError::Mismatch);
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    pub fn preserves_joins(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        self.apply(s.bottom()) == t.bottom()
            && s.elements().all(|a| {
                s.elements().all(|b| self.apply(s.join(a, b)) == t.join(self.apply(a), self.apply(b)))
            })
    }

    pub fn preserves_meets(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        self.apply(s.top()) == t.top()
            && s.elements().all(|a| {
                s.elements().all(|b| self.apply(s.meet(a, b)) == t.meet(self.apply(a), self.apply(b)))
            })
    }

    /// Whether `self ⊣ g`, i.e. `f(v) ≤ w ⇔ v ≤ g(w)` for all `v`, `w`.
    pub fn is_left_adjoint_of(&self, g: &MonotoneMap) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        *g.source == *t
            && *g.target == *s
            && s.elements()
                .all(|v| t.elements().all(|w| t.leq(self.apply(v), w) == s.leq(v, g.apply(w))))
    }

    /// First pair `(v, w)` at which `self ⊣ g` fails.
    pub fn adjunction_witness(&self, g: &MonotoneMap) -> Option<(Elem, Elem)> {
        let (s, t) = (&*self.source, &*self.target);
        s.elements()
            .flat_map(|v| t.elements().map(move |w| (v, w)))
            .find(|&(v, w)| t.leq(self.apply(v), w) != s.leq(v, g.apply(w)))
    }

    /// `g(w) = ⋁{v | f(v) ≤ w}`, returned only if it really is right adjoint.
    pub fn right_adjoint(&self) -> Option<MonotoneMap> {
        let (s, t) = (&*self.source, &*self.target);
        let table = t
            .elements()
            .map(|w| s.join_all(s.elements().filter(|&v| t.leq(self.apply(v), w))))
            .collect();
        let g = MonotoneMap::new(self.target.clone(), self.source.clone(), table).ok()?;
        self.is_left_adjoint_of(&g).then_some(g)
    }

    /// `h(w) = ⋀{v | w ≤ f(v)}`, returned only if it really is left adjoint.
    pub fn left_adjoint(&self) -> Option<MonotoneMap> {
        let (s, t) = (&*self.source, &*self.target);
        let table = t
            .elements()
            .map(|w| s.meet_all(s.elements().filter(|&v| t.leq(w, self.apply(v)))))
            .collect();
        let h = MonotoneMap::new(self.target.clone(), self.source.clone(), table).ok()?;
        h.is_left_adjoint_of(self).then_some(h)
    }

    pub fn adjoints(&self) -> Adjoints {
        Adjoints { left: self.left_adjoint(), right: self.right_adjoint() }
    }

    /// Lax homomorphism: `l ≤ φ(k)` and `φ(u) ⊗ φ(v) ≤ φ(u ⊗ v)`.
    pub fn is_lax_hom(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        t.leq(t.unit(), self.apply(s.unit()))
            && s.elements().all(|u| {
                s.elements()
                    .all(|v| t.leq(t.tensor(self.apply(u), self.apply(v)), self.apply(s.tensor(u, v))))
            })
    }

    /// Homomorphism: preserves all joins, the tensor and the unit.
    pub fn is_hom(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        self.preserves_joins()
            && self.apply(s.unit()) == t.unit()
            && s.elements().all(|u| {
                s.elements().all(|v| t.tensor(self.apply(u), self.apply(v)) == self.apply(s.tensor(u, v)))
            })
    }

    pub fn classify(&self) -> QuantaleHomClass {
        QuantaleHomClass {
            is_lax_hom: self.is_lax_hom(),
            is_hom: self.is_hom(),
            preserves_meets: self.preserves_meets(),
            preserves_joins: self.preserves_joins(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;

    fn q(b: Builtin) -> Arc<Quantale> {
        Quantale::builtin(&b).unwrap()
    }

    fn iota(v: &Arc<Quantale>) -> MonotoneMap {
        let two = q(Builtin::TwoChain);
        MonotoneMap::new(two, v.clone(), vec![v.bottom(), v.unit()]).unwrap()
    }

    #[test]
    fn non_monotone_rejected() {
        let three = q(Builtin::ChainFrame { n: 3 });
        let table = vec![Elem::new(2), Elem::new(0), Elem::new(1)];
        assert!(matches!(MonotoneMap::new(three.clone(), three, table), Err(MapError::NotMonotone { .. })));
    }

    #[test]
    fn iota_has_pi_as_right_adjoint() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let i = iota(&v);
        let pi = i.right_adjoint().unwrap();
        for w in v.elements() {
            let expect = if v.leq(v.unit(), w) { "top" } else { "bot" };
            assert_eq!(pi.source().label(w), v.label(w));
            assert_eq!(pi.target().label(pi.apply(w)), expect);
        }
        assert!(pi.classify().is_lax_hom);
        assert!(i.classify().is_hom);
    }

    #[test]
    fn iota_into_integral_has_o_as_left_adjoint() {
        let v = q(Builtin::CostChain { max: 3 });
        let i = iota(&v);
        let o = i.left_adjoint().unwrap();
        for w in v.elements() {
            let expect = if w == v.bottom() { "bot" } else { "top" };
            assert_eq!(o.target().label(o.apply(w)), expect);
        }
        assert!(o.is_left_adjoint_of(&i));
        assert!(i.is_left_adjoint_of(&i.right_adjoint().unwrap()));
    }

    #[test]
    fn constant_top_has_left_but_no_right_adjoint() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let c = MonotoneMap::constant(v.clone(), v.clone(), v.top());
        assert!(c.right_adjoint().is_none());
        assert!(!c.preserves_joins());
        let h = c.left_adjoint().unwrap();
        assert!(h.table().iter().all(|&e| e == v.bottom()));
    }

    #[test]
    fn identity_is_not_left_adjoint_of_constant_top() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let id = MonotoneMap::identity(v.clone());
        let c = MonotoneMap::constant(v.clone(), v.clone(), v.top());
        assert!(!id.is_left_adjoint_of(&c));
        assert!(id.adjunction_witness(&c).is_some());
    }

    #[test]
    fn hom_implies_lax_hom_on_all_maps_of_three_chain() {
        let v = q(Builtin::ChainFrame { n: 3 });
        for code in 0..27usize {
            let table = vec![Elem::new(code % 3), Elem::new(code / 3 % 3), Elem::new(code / 9)];
            if let Ok(f) = MonotoneMap::new(v.clone(), v.clone(), table) {
                let c = f.classify();
                assert!(!c.is_hom || c.is_lax_hom);
                assert_eq!(c.preserves_joins, f.right_adjoint().is_some());
                assert_eq!(c.preserves_meets, f.left_adjoint().is_some());
            }
        }
    }
}
