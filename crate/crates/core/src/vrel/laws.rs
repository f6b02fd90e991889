//! The lax distributive laws `α` (powerset) and `β` (ultrafilter).

use super::{MonadKind, TElem, VrelError};
use crate::lattice::{Elem, Quantale};

/// A lax distributive law `λ_X: T(V^X) → V^{TX}`, evaluated pointwise.
///
/// `s` is an element of `T(V^X)` whose points are functions `X → V`, `t` an
/// element of `TX`, and `eval(σ, x)` the value of function `σ` at `x`.
pub trait LaxLaw: Sync {
    fn kind(&self) -> MonadKind;

    fn name(&self) -> &str;

    fn apply(
        &self,
        q: &Quantale,
        s: &TElem,
        t: &TElem,
        eval: &dyn Fn(usize, usize) -> Elem,
    ) -> Result<Elem, VrelError>;
}

fn sets<'a>(law: &str, s: &'a TElem, t: &'a TElem) -> Result<(&'a [usize], &'a [usize]), VrelError> {
    match (s, t) {
        (TElem::Set(s), TElem::Set(a)) => Ok((s, a)),
        _ => Err(VrelError::WrongRepresentation { law: law.into(), expected: "subset" }),
    }
}

/// `(α_X S)(A) = ⋀_{x∈A} ⋁_{σ∈S} σ(x)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Alpha;

impl LaxLaw for Alpha {
    fn kind(&self) -> MonadKind {
        MonadKind::Powerset
    }

    fn name(&self) -> &str {
        "alpha"
    }

    fn apply(
        &self,
        q: &Quantale,
        s: &TElem,
        t: &TElem,
        eval: &dyn Fn(usize, usize) -> Elem,
    ) -> Result<Elem, VrelError> {
        let (s, a) = sets("alpha", s, t)?;
        Ok(q.meet_all(a.iter().map(|&x| q.join_all(s.iter().map(|&sigma| eval(sigma, x))))))
    }
}

/// `α` with its outer meet replaced by a join; fails the unit law at `∅`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CorruptedAlpha;

impl LaxLaw for CorruptedAlpha {
    fn kind(&self) -> MonadKind {
        MonadKind::Powerset
    }

    fn name(&self) -> &str {
        "corrupted-alpha"
    }

    fn apply(
        &self,
        q: &Quantale,
        s: &TElem,
        t: &TElem,
        eval: &dyn Fn(usize, usize) -> Elem,
    ) -> Result<Elem, VrelError> {
        let (s, a) = sets("corrupted-alpha", s, t)?;
        Ok(q.join_all(a.iter().map(|&x| q.join_all(s.iter().map(|&sigma| eval(sigma, x))))))
    }
}

/// `(β_X 𝔰)(𝔵) = ⋀_{S∈𝔰, A∈𝔵} ⋁_{σ∈S, x∈A} σ(x)`, evaluated over the
/// members of principal ultrafilters.
#[derive(Clone, Copy, Debug, Default)]
pub struct Beta;

impl LaxLaw for Beta {
    fn kind(&self) -> MonadKind {
        MonadKind::Ultrafilter
    }

    fn name(&self) -> &str {
        "beta"
    }

    fn apply(
        &self,
        q: &Quantale,
        s: &TElem,
        t: &TElem,
        eval: &dyn Fn(usize, usize) -> Elem,
    ) -> Result<Elem, VrelError> {
        let wrong = || VrelError::WrongRepresentation { law: "beta".into(), expected: "principal ultrafilter" };
        let (ss, aa) = match (s.members(), t.members()) {
            (Some(ss), Some(aa)) => (ss, aa),
            _ => return Err(wrong()),
        };
        let mut fns: Vec<usize> = ss.iter().flatten().copied().collect();
        fns.sort_unstable();
        fns.dedup();
        let mut acc = q.top();
        let mut w = vec![q.bottom(); fns.len()];
        for a in &aa {
            // w[σ] = ⋁_{x∈A} σ(x)
            for (slot, &sigma) in w.iter_mut().zip(&fns) {
                *slot = q.join_all(a.iter().map(|&x| eval(sigma, x)));
            }
            for s in &ss {
                let v = q.join_all(s.iter().map(|sigma| w[fns.binary_search(sigma).unwrap()]));
                acc = q.meet(acc, v);
                if acc == q.bottom() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;
    use crate::vrel::FnSpace;

    #[test]
    fn alpha_examples() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let fs = FnSpace::of(&q, 2).unwrap();
        let eval = |s: usize, x: usize| fs.eval(s, x);
        let sigma = fs.encode(&[Elem::new(1), Elem::new(2)]);
        let single = Alpha.apply(&q, &TElem::Set(vec![sigma]), &TElem::Set(vec![0]), &eval).unwrap();
        assert_eq!(single, Elem::new(1));
        assert_eq!(Alpha.apply(&q, &TElem::Set(vec![sigma]), &TElem::Set(vec![]), &eval).unwrap(), q.top());
        assert_eq!(Alpha.apply(&q, &TElem::Set(vec![]), &TElem::Set(vec![1]), &eval).unwrap(), q.bottom());
        assert!(Alpha.apply(&q, &TElem::principal(0, 9), &TElem::Set(vec![]), &eval).is_err());
    }

    #[test]
    fn beta_on_principals_is_evaluation() {
        let q = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        for n in 1..=2 {
            let fs = FnSpace::of(&q, n).unwrap();
            let eval = |s: usize, x: usize| fs.eval(s, x);
            for sigma in 0..fs.len() {
                for x in 0..n {
                    let got = Beta
                        .apply(&q, &TElem::principal(sigma, fs.len()), &TElem::principal(x, n), &eval)
                        .unwrap();
                    assert_eq!(got, fs.eval(sigma, x));
                }
            }
        }
    }

    #[test]
    fn beta_over_two_chain_is_boolean_membership() {
        // 𝔰 = σ̇ for σ the indicator of a set B: β(𝔰)(ẋ) = ⊤ iff x ∈ B
        let q = Quantale::builtin(&Builtin::TwoChain).unwrap();
        for n in 1..=3 {
            let fs = FnSpace::of(&q, n).unwrap();
            let eval = |s: usize, x: usize| fs.eval(s, x);
            for b in 0..1usize << n {
                let sigma = fs.encode_fn(|x| if b >> x & 1 == 1 { q.top() } else { q.bottom() });
                for x in 0..n {
                    let v = Beta
                        .apply(&q, &TElem::principal(sigma, fs.len()), &TElem::principal(x, n), &eval)
                        .unwrap();
                    assert_eq!(v == q.top(), b >> x & 1 == 1);
                }
            }
        }
    }
}
