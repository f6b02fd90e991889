//! Lax extensions of the powerset and ultrafilter monads to V-relations,
//! and the passage between lax extensions and lax distributive laws.
//!
//! For `r: X ↛ Y` write `ρ: X → V^Y`, `ρ(x) = r(x, -)`. The extension
//! induced by a law is `T̂r(𝔵, 𝔶) = λ_Y(Tρ(𝔵))(𝔶)`; the functions `ρ(x)` are
//! named by their row `x`, so `Tρ(𝔵)` is `𝔵` itself evaluated through `r`.
//! Conversely a law is recovered from an extension through the evaluation
//! relation `ev: V^X ↛ X`, `ev(σ, x) = σ(x)`, as `λ_X(s)(t) = T̂ev(s, t)`.

use super::{LaxLaw, MonadKind, TCarrier, TElem, VRelation, VrelError};
use crate::lattice::{Elem, Quantale};

/// A V-relation given by its entries `r(x, y)`.
pub type RelFn<'a> = &'a dyn Fn(usize, usize) -> Elem;

pub trait LaxExtension: Sync {
    fn kind(&self) -> MonadKind;

    /// `T̂r(s, t)` for `s ∈ TX`, `t ∈ TY`.
    fn extend(&self, q: &Quantale, s: &TElem, t: &TElem, r: RelFn<'_>) -> Result<Elem, VrelError>;
}

/// The extension induced by a law.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtensionOf<L>(pub L);

impl<L: LaxLaw> LaxExtension for ExtensionOf<L> {
    fn kind(&self) -> MonadKind {
        self.0.kind()
    }

    fn extend(&self, q: &Quantale, s: &TElem, t: &TElem, r: RelFn<'_>) -> Result<Elem, VrelError> {
        self.0.apply(q, s, t, r)
    }
}

/// The law induced by an extension.
#[derive(Clone, Copy, Debug, Default)]
pub struct LawOf<E>(pub E);

impl<E: LaxExtension> LaxLaw for LawOf<E> {
    fn kind(&self) -> MonadKind {
        self.0.kind()
    }

    fn name(&self) -> &str {
        "law-of-extension"
    }

    fn apply(
        &self,
        q: &Quantale,
        s: &TElem,
        t: &TElem,
        eval: &dyn Fn(usize, usize) -> Elem,
    ) -> Result<Elem, VrelError> {
        self.0.extend(q, s, t, eval)
    }
}

/// `P̂r(A, B) = ⋀_{y∈B} ⋁_{x∈A} r(x, y)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PowersetExtension;

impl LaxExtension for PowersetExtension {
    fn kind(&self) -> MonadKind {
        MonadKind::Powerset
    }

    fn extend(&self, q: &Quantale, s: &TElem, t: &TElem, r: RelFn<'_>) -> Result<Elem, VrelError> {
        match (s, t) {
            (TElem::Set(a), TElem::Set(b)) => {
                Ok(q.meet_all(b.iter().map(|&y| q.join_all(a.iter().map(|&x| r(x, y))))))
            }
            _ => Err(VrelError::WrongRepresentation { law: "powerset extension".into(), expected: "subset" }),
        }
    }
}

/// `Ūr(𝔵, 𝔶) = ⋀_{A∈𝔵, B∈𝔶} ⋁_{x∈A, y∈B} r(x, y)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UltrafilterExtension;

impl LaxExtension for UltrafilterExtension {
    fn kind(&self) -> MonadKind {
        MonadKind::Ultrafilter
    }

    fn extend(&self, q: &Quantale, s: &TElem, t: &TElem, r: RelFn<'_>) -> Result<Elem, VrelError> {
        let (xs, ys) = match (s.members(), t.members()) {
            (Some(xs), Some(ys)) => (xs, ys),
            _ => {
                return Err(VrelError::WrongRepresentation {
                    law: "ultrafilter extension".into(),
                    expected: "principal ultrafilter",
                })
            }
        };
        let mut acc = q.top();
        for a in &xs {
            for b in &ys {
                let v = q.join_all(a.iter().flat_map(|&x| b.iter().map(move |&y| r(x, y))));
                acc = q.meet(acc, v);
            }
        }
        Ok(acc)
    }
}

/// Materializes `T̂r: TX ↛ TY`, with `TX`, `TY` indexed as in [`TCarrier`].
pub fn lax_extension(ext: &dyn LaxExtension, q: &Quantale, r: &VRelation) -> Result<VRelation, VrelError> {
    let tx = TCarrier::new(ext.kind(), r.rows())?;
    let ty = TCarrier::new(ext.kind(), r.cols())?;
    let at = |x: usize, y: usize| r.at(x, y);
    let mut entries = Vec::with_capacity(tx.len() * ty.len());
    for s in tx.all() {
        for t in ty.all() {
            entries.push(ext.extend(q, &s, &t, &at)?);
        }
    }
    VRelation::new(tx.len(), ty.len(), entries)
}

/// Materializes `λ_X` as a relation `T(V^X) ↛ TX` via the evaluation
/// relation, for comparison with a law evaluated directly.
pub fn law_from_extension(ext: &dyn LaxExtension, q: &Quantale, n: usize) -> Result<VRelation, VrelError> {
    let fx = super::FnSpace::of(q, n)?;
    let ev = VRelation::from_fn(fx.len(), n, |sigma, x| fx.eval(sigma, x));
    lax_extension(ext, q, &ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;
    use crate::vrel::{Alpha, Beta, FnSpace};

    #[test]
    fn identity_graph_extends_to_reverse_inclusion() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let id = VRelation::identity(&q, 3);
        let ext = lax_extension(&PowersetExtension, &q, &id).unwrap();
        for a in 0..8usize {
            for b in 0..8usize {
                assert_eq!(ext.at(a, b) == q.unit(), b & !a == 0);
            }
        }
    }

    #[test]
    fn ultrafilter_extension_collapses_on_principals() {
        let q = Quantale::builtin(&Builtin::CostChain { max: 2 }).unwrap();
        let r = VRelation::from_fn(3, 2, |x, y| Elem::new((x * 2 + y) % q.len()));
        let ext = lax_extension(&UltrafilterExtension, &q, &r).unwrap();
        assert_eq!(ext, r);
    }

    #[test]
    fn extensions_agree_with_closed_forms() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        for rows in 0..=2 {
            for cols in 0..=2 {
                let cells = FnSpace::new(q.len(), rows * cols).unwrap();
                for code in 0..cells.len() {
                    let r = VRelation::new(rows, cols, cells.decode(code)).unwrap();
                    assert_eq!(
                        lax_extension(&ExtensionOf(Alpha), &q, &r).unwrap(),
                        lax_extension(&PowersetExtension, &q, &r).unwrap()
                    );
                    assert_eq!(
                        lax_extension(&ExtensionOf(Beta), &q, &r).unwrap(),
                        lax_extension(&UltrafilterExtension, &q, &r).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn law_extension_law_round_trip() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        for n in 0..=2 {
            let fx = FnSpace::of(&q, n).unwrap();
            let eval = |s: usize, x: usize| fx.eval(s, x);
            let direct = |law: &dyn LaxLaw, kind| {
                let tv = TCarrier::new(kind, fx.len()).unwrap();
                let tx = TCarrier::new(kind, n).unwrap();
                let entries = tv
                    .all()
                    .flat_map(|s| tx.all().map(move |t| (s.clone(), t)))
                    .map(|(s, t)| law.apply(&q, &s, &t, &eval).unwrap())
                    .collect();
                VRelation::new(tv.len(), tx.len(), entries).unwrap()
            };
            assert_eq!(
                law_from_extension(&ExtensionOf(Alpha), &q, n).unwrap(),
                direct(&Alpha, MonadKind::Powerset)
            );
            assert_eq!(
                law_from_extension(&PowersetExtension, &q, n).unwrap(),
                direct(&LawOf(PowersetExtension), MonadKind::Powerset)
            );
            assert_eq!(
                law_from_extension(&UltrafilterExtension, &q, n).unwrap(),
                direct(&Beta, MonadKind::Ultrafilter)
            );
        }
    }
}
