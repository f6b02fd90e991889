//! Finite models of the powerset and ultrafilter monads.
//!
//! On a finite set every ultrafilter is principal, so `ẋ` is stored by its
//! generator together with the size of the underlying set. Formulas that
//! quantify over the members of an ultrafilter run over [`TElem::members`],
//! which lists every member on small sets and the filter base `{{x}}`
//! otherwise; the expressions involved are antitone in the member, so the
//! base attains every meet.

use serde::{Deserialize, Serialize};

use super::VrelError;
use crate::lattice::{Elem, Quantale};

/// Largest underlying set on which all members of `ẋ` are listed.
pub const PRINCIPAL_MEMBER_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonadKind {
    Powerset,
    Ultrafilter,
}

/// An element of `TY` for a finite set `Y = {0, …, universe-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TElem {
    /// A subset, as a sorted list of points.
    Set(Vec<usize>),
    /// The principal ultrafilter generated by a point.
    Principal { generator: usize, universe: usize },
}

impl TElem {
    pub fn set(mut points: Vec<usize>) -> TElem {
        points.sort_unstable();
        points.dedup();
        TElem::Set(points)
    }

    pub fn principal(generator: usize, universe: usize) -> TElem {
        TElem::Principal { generator, universe }
    }

    pub fn kind(&self) -> MonadKind {
        match self {
            TElem::Set(_) => MonadKind::Powerset,
            TElem::Principal { .. } => MonadKind::Ultrafilter,
        }
    }

    pub fn as_set(&self) -> Option<&[usize]> {
        match self {
            TElem::Set(s) => Some(s),
            TElem::Principal { .. } => None,
        }
    }

    pub fn generator(&self) -> Option<usize> {
        match self {
            TElem::Principal { generator, .. } => Some(*generator),
            TElem::Set(_) => None,
        }
    }

    /// Membership `A ∈ ẋ ⇔ x ∈ A`; `None` for subsets.
    pub fn contains(&self, set: &[usize]) -> Option<bool> {
        self.generator().map(|g| set.contains(&g))
    }

    /// Members of a principal ultrafilter (see the module docs).
    pub fn members(&self) -> Option<Vec<Vec<usize>>> {
        let (g, u) = match self {
            TElem::Principal { generator, universe } => (*generator, *universe),
            TElem::Set(_) => return None,
        };
        if u > PRINCIPAL_MEMBER_LIMIT {
            return Some(vec![vec![g]]);
        }
        Some(
            (0u32..1 << u)
                .filter(|m| m >> g & 1 == 1)
                .map(|m| (0..u).filter(|i| m >> i & 1 == 1).collect())
                .collect(),
        )
    }

    /// `Tf` applied to this element.
    pub fn map(&self, f: impl Fn(usize) -> usize, universe: usize) -> TElem {
        match self {
            TElem::Set(s) => TElem::set(s.iter().map(|&x| f(x)).collect()),
            TElem::Principal { generator, .. } => TElem::principal(f(*generator), universe),
        }
    }

    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        match self {
            TElem::Set(s) => {
                let parts: Vec<String> = s.iter().map(|&x| label(x)).collect();
                format!("{{{}}}", parts.join(","))
            }
            TElem::Principal { generator, .. } => format!("dot({})", label(*generator)),
        }
    }
}

/// `TX` for `X = {0, …, n-1}`, with a fixed indexing of its elements:
/// subsets by bitmask, ultrafilters by generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TCarrier {
    pub kind: MonadKind,
    pub n: usize,
}

impl TCarrier {
    pub fn new(kind: MonadKind, n: usize) -> Result<Self, VrelError> {
        if kind == MonadKind::Powerset && n > 20 {
            return Err(VrelError::TooLarge(n));
        }
        Ok(TCarrier { kind, n })
    }

    pub fn len(&self) -> usize {
        match self.kind {
            MonadKind::Powerset => 1 << self.n,
            MonadKind::Ultrafilter => self.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elem(&self, i: usize) -> TElem {
        match self.kind {
            MonadKind::Powerset => TElem::Set((0..self.n).filter(|x| i >> x & 1 == 1).collect()),
            MonadKind::Ultrafilter => TElem::principal(i, self.n),
        }
    }

    pub fn index(&self, t: &TElem) -> usize {
        match t {
            TElem::Set(s) => s.iter().fold(0, |m, &x| m | 1 << x),
            TElem::Principal { generator, .. } => *generator,
        }
    }

    pub fn all(&self) -> impl Iterator<Item = TElem> + '_ {
        (0..self.len()).map(|i| self.elem(i))
    }

    /// `e_X(x)`.
    pub fn unit(&self, x: usize) -> TElem {
        match self.kind {
            MonadKind::Powerset => TElem::Set(vec![x]),
            MonadKind::Ultrafilter => TElem::principal(x, self.n),
        }
    }

    /// `m_X` on an element of `TTX` whose points are indices into `self`.
    pub fn mult(&self, tt: &TElem) -> TElem {
        match tt {
            TElem::Set(s) => TElem::set(
                s.iter().flat_map(|&i| (0..self.n).filter(move |x| i >> x & 1 == 1)).collect(),
            ),
            // Σ(ÿ) = ẏ; the generator of the outer ultrafilter is the index of ẏ
            TElem::Principal { generator, .. } => TElem::principal(*generator, self.n),
        }
    }

    pub fn render(&self, i: usize, label: impl Fn(usize) -> String) -> String {
        self.elem(i).render(label)
    }
}

/// The function space `V^X`, indexed by mixed-radix codes: digit `x` of a
/// code (base `|V|`) is the value at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnSpace {
    v: usize,
    n: usize,
    powers: Vec<usize>,
    size: usize,
}

impl FnSpace {
    pub fn new(v: usize, n: usize) -> Result<Self, VrelError> {
        let mut powers = Vec::with_capacity(n + 1);
        let mut p: usize = 1;
        for _ in 0..n {
            powers.push(p);
            p = p.checked_mul(v).filter(|&p| p <= 1 << 40).ok_or(VrelError::Overflow { v, n })?;
        }
        Ok(FnSpace { v, n, powers, size: p })
    }

    pub fn of(q: &Quantale, n: usize) -> Result<Self, VrelError> {
        Self::new(q.len(), n)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn eval(&self, code: usize, x: usize) -> Elem {
        Elem::new(code / self.powers[x] % self.v)
    }

    pub fn encode(&self, values: &[Elem]) -> usize {
        values.iter().zip(&self.powers).map(|(e, p)| e.index() * p).sum()
    }

    pub fn encode_fn(&self, f: impl Fn(usize) -> Elem) -> usize {
        (0..self.n).map(|x| f(x).index() * self.powers[x]).sum()
    }

    pub fn decode(&self, code: usize) -> Vec<Elem> {
        (0..self.n).map(|x| self.eval(code, x)).collect()
    }

    pub fn render(&self, q: &Quantale, code: usize) -> String {
        let parts: Vec<&str> = (0..self.n).map(|x| q.label(self.eval(code, x))).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_members_and_membership() {
        let t = TElem::principal(1, 3);
        let m = t.members().unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|s| s.contains(&1)));
        assert_eq!(t.contains(&[0, 1]), Some(true));
        assert_eq!(t.contains(&[2]), Some(false));
        assert_eq!(TElem::principal(3, 50).members().unwrap(), vec![vec![3]]);
    }

    #[test]
    fn image_of_principal_is_principal_of_image() {
        // all 27 maps on a three-point set
        for code in 0..27 {
            let f = |x: usize| code / 3usize.pow(x as u32) % 3;
            for x in 0..3 {
                let img = TElem::principal(x, 3).map(f, 3);
                assert_eq!(img, TElem::principal(f(x), 3));
                for b in 0u32..8 {
                    let set: Vec<usize> = (0..3).filter(|i| b >> i & 1 == 1).collect();
                    let preimage: Vec<usize> = (0..3).filter(|&y| set.contains(&f(y))).collect();
                    // B ∈ f[ẋ] ⇔ f⁻¹B ∈ ẋ
                    assert_eq!(img.contains(&set), TElem::principal(x, 3).contains(&preimage));
                }
            }
        }
    }

    #[test]
    fn monad_laws_on_small_carriers() {
        for kind in [MonadKind::Powerset, MonadKind::Ultrafilter] {
            let c = TCarrier::new(kind, 3).unwrap();
            let tc = TCarrier::new(kind, c.len()).unwrap();
            for t in c.all() {
                // m ∘ e_T = id and m ∘ T e = id
                let et = tc.unit(c.index(&t));
                assert_eq!(c.mult(&et), t);
                let te = t.map(|x| c.index(&c.unit(x)), c.len());
                assert_eq!(c.mult(&te), t);
            }
        }
    }

    #[test]
    fn codes_round_trip() {
        let s = FnSpace::new(3, 2).unwrap();
        assert_eq!(s.len(), 9);
        for code in 0..9 {
            assert_eq!(s.encode(&s.decode(code)), code);
        }
        assert!(FnSpace::new(3, 40).is_err());
    }
}
