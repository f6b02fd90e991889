//! Ultrafilter convergence structures (lax (β,V)-algebras) on finite sets,
//! the algebraic functor `A_ε` into V-closure spaces and its right adjoint
//! `R`.
//!
//! On a finite set every ultrafilter is principal, so `UX`, `UUX` are
//! indexed by generators. Quantifications over filter members still run
//! over the members themselves (see [`Ultrafilter::members`]).

mod theorem;

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{DeltaModel, Elem, Quantale};
use crate::report::{LawReport, Verdict, Violation};
use crate::spaces::{image_mask, DistanceStructure, SpacesError};
use crate::vrel::{FiniteSet, TElem, VRelation};

pub use theorem::{beta_algebras, check_algebraic_morphism_epsilon, epsilon, verify_main_theorem};

pub const LAW_R2: &str = "(R'') reflexivity";
pub const LAW_T2: &str = "(T'') transitivity";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvergenceError {
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("carrier or quantale mismatch: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Capability(String),
    #[error(transparent)]
    Spaces(#[from] SpacesError),
}

/// The principal ultrafilter `ẋ` on a set of `universe` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ultrafilter {
    generator: usize,
    universe: usize,
}

impl Ultrafilter {
    pub fn dot(x: usize, universe: usize) -> Self {
        assert!(x < universe, "generator outside the carrier");
        Ultrafilter { generator: x, universe }
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// `A ∈ ẋ ⇔ x ∈ A`, with `A` a bitmask.
    pub fn contains(&self, a: usize) -> bool {
        a >> self.generator & 1 == 1
    }

    /// Members, as sorted point lists: every superset of `{x}` on small
    /// carriers, the base `{{x}}` otherwise.
    pub fn members(&self) -> Vec<Vec<usize>> {
        TElem::principal(self.generator, self.universe).members().expect("principal ultrafilter")
    }

    /// `f[𝔵]`: `B ∈ f[𝔵] ⇔ f⁻¹B ∈ 𝔵`.
    pub fn image(&self, f: &[usize], target: usize) -> Ultrafilter {
        let g = (0..target)
            .find(|&y| {
                let preimage = f.iter().enumerate().filter(|(_, &fx)| fx == y).fold(0, |m, (x, _)| m | 1 << x);
                self.contains(preimage)
            })
            .expect("a principal ultrafilter has an image");
        Ultrafilter::dot(g, target)
    }

    /// `Σ𝔛` for `𝔛 ∈ UUX`, whose points are the ultrafilters `ẏ` indexed by
    /// `y`: `A ∈ Σ𝔛 ⇔ {𝔵 | A ∈ 𝔵} ∈ 𝔛`.
    pub fn sigma(big: &Ultrafilter) -> Ultrafilter {
        let n = big.universe;
        let g = (0..n)
            .find(|&x| {
                let a = 1usize << x;
                let holders = (0..n).filter(|&y| Ultrafilter::dot(y, n).contains(a)).fold(0, |m, y| m | 1 << y);
                big.contains(holders)
            })
            .expect("Σ of a principal ultrafilter is principal");
        Ultrafilter::dot(g, n)
    }
}

/// `ℓ: UX → V^X`, stored as `table[g * |X| + x] = (ℓ ġ)(x)`.
#[derive(Clone, Debug)]
pub struct ConvergenceStructure {
    carrier: FiniteSet,
    quantale: Arc<Quantale>,
    table: Vec<Elem>,
}

impl PartialEq for ConvergenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && *self.quantale == *other.quantale && self.table == other.table
    }
}

impl ConvergenceStructure {
    pub fn new(carrier: FiniteSet, quantale: Arc<Quantale>, table: Vec<Elem>) -> Result<Self, ConvergenceError> {
        let n = carrier.len();
        if table.len() != n * n {
            return Err(ConvergenceError::TableSize { expected: n * n, found: table.len() });
        }
        Ok(ConvergenceStructure { carrier, quantale, table })
    }

    pub fn from_fn(carrier: FiniteSet, quantale: Arc<Quantale>, f: impl Fn(usize, usize) -> Elem) -> Self {
        let n = carrier.len();
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        ConvergenceStructure { carrier, quantale, table }
    }

    /// `ℓ(ẋ)(y) = k` if `x = y`, else `⊥`.
    pub fn discrete(carrier: FiniteSet, q: Arc<Quantale>) -> Self {
        let (k, bot) = (q.unit(), q.bottom());
        Self::from_fn(carrier, q, |g, x| if g == x { k } else { bot })
    }

    pub fn from_matrix(carrier: FiniteSet, q: Arc<Quantale>, m: &VRelation) -> Result<Self, ConvergenceError> {
        Self::new(carrier, q, m.entries().to_vec())
    }

    pub fn carrier(&self) -> &FiniteSet {
        &self.carrier
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn n(&self) -> usize {
        self.carrier.len()
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `(ℓ𝔵)(x)`.
    pub fn at(&self, u: Ultrafilter, x: usize) -> Elem {
        self.table[u.generator * self.n() + x]
    }

    pub fn matrix(&self) -> VRelation {
        VRelation::new(self.n(), self.n(), self.table.clone()).unwrap()
    }

    pub fn ultrafilters(&self) -> impl Iterator<Item = Ultrafilter> + '_ {
        (0..self.n()).map(|g| Ultrafilter::dot(g, self.n()))
    }

    pub fn leq(&self, other: &ConvergenceStructure) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| self.quantale.leq(a, b))
    }

    fn ultrafilter_label(&self, u: Ultrafilter) -> String {
        format!("dot({})", self.carrier.label(u.generator))
    }
}

/// `Ūa(𝔛, 𝔶) = ⋀_{𝒜∈𝔛, B∈𝔶} ⋁_{𝔵∈𝒜, y∈B} (ℓ𝔵)(y)` for `𝔛 ∈ UUX`.
fn barr_extension(s: &ConvergenceStructure, big: &Ultrafilter, y: Ultrafilter) -> Elem {
    let q = &*s.quantale;
    let n = s.n();
    let mut acc = q.top();
    for fam in big.members() {
        for b in y.members() {
            let v = q.join_all(
                fam.iter().flat_map(|&g| b.iter().map(move |&p| s.at(Ultrafilter::dot(g, n), p))),
            );
            acc = q.meet(acc, v);
        }
    }
    acc
}

/// (R'') and (T''), evaluated through filter members.
pub fn check_beta_algebra(s: &ConvergenceStructure) -> LawReport {
    let q = &*s.quantale;
    let n = s.n();
    let mut r = LawReport::new();
    let r2 = (0..n).find(|&x| !q.leq(q.unit(), s.at(Ultrafilter::dot(x, n), x))).map(|x| {
        Violation::new(LAW_R2)
            .with("x", s.carrier.label(x))
            .with("ℓ(ẋ)(x)", q.label(s.at(Ultrafilter::dot(x, n), x)))
    });
    r.record(LAW_R2, r2);
    let mut t2 = None;
    'outer: for big in (0..n).map(|g| Ultrafilter::dot(g, n)) {
        let target = Ultrafilter::sigma(&big);
        for y in s.ultrafilters() {
            let lhs = barr_extension(s, &big, y);
            for z in 0..n {
                let l = q.tensor(lhs, s.at(y, z));
                if !q.leq(l, s.at(target, z)) {
                    t2 = Some(
                        Violation::new(LAW_T2)
                            .with("𝔛", format!("dot({})", s.ultrafilter_label(Ultrafilter::dot(big.generator, n))))
                            .with("𝔶", s.ultrafilter_label(y))
                            .with("z", s.carrier.label(z))
                            .with("lhs", q.label(l))
                            .with("rhs", q.label(s.at(target, z))),
                    );
                    break 'outer;
                }
            }
        }
    }
    r.record(LAW_T2, t2);
    r.count("(T'') triples", (n * n * n) as u64);
    r
}

/// Least lax (β,V)-algebra above `s`: iterates `ℓ(ẋ)(x) ∨= k` and
/// `ℓ(Σ𝔛)(z) ∨= Ūa(𝔛, 𝔶) ⊗ (ℓ𝔶)(z)` to a fixpoint. Every update is forced
/// in each algebra above the current table.
pub fn beta_hull(s: &ConvergenceStructure) -> ConvergenceStructure {
    let mut l = s.clone();
    let q = s.quantale.clone();
    let n = l.n();
    loop {
        let mut changed = false;
        for x in 0..n {
            let i = x * n + x;
            let v = q.join(l.table[i], q.unit());
            if v != l.table[i] {
                l.table[i] = v;
                changed = true;
            }
        }
        for big in (0..n).map(|g| Ultrafilter::dot(g, n)) {
            let target = Ultrafilter::sigma(&big);
            for y in (0..n).map(|g| Ultrafilter::dot(g, n)) {
                let lhs = barr_extension(&l, &big, y);
                for z in 0..n {
                    let need = q.tensor(lhs, l.at(y, z));
                    let i = target.generator * n + z;
                    if !q.leq(need, l.table[i]) {
                        l.table[i] = q.join(l.table[i], need);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return l;
        }
    }
}

/// On principal ultrafilters (T'') collapses to `ℓ(ẇ)(y) ⊗ ℓ(ẏ)(z) ≤ ℓ(ẇ)(z)`.
pub fn is_beta_algebra_fast(s: &ConvergenceStructure) -> bool {
    let q = &*s.quantale;
    let n = s.n();
    let a = |w: usize, y: usize| s.table[w * n + y];
    (0..n).all(|x| q.leq(q.unit(), a(x, x)))
        && (0..n).all(|w| (0..n).all(|y| (0..n).all(|z| q.leq(q.tensor(a(w, y), a(y, z)), a(w, z)))))
}

/// (M''): `(ℓ𝔵)(y) ≤ (ℓ' f[𝔵])(fy)`.
pub fn check_convergence_morphism(
    f: &[usize],
    s: &ConvergenceStructure,
    t: &ConvergenceStructure,
) -> Result<Verdict, ConvergenceError> {
    if f.len() != s.n() || f.iter().any(|&y| y >= t.n()) {
        return Err(ConvergenceError::Mismatch("map does not go between the carriers".into()));
    }
    if *s.quantale != *t.quantale {
        return Err(ConvergenceError::Mismatch("structures over different quantales".into()));
    }
    let q = &*s.quantale;
    for u in s.ultrafilters() {
        let fu = u.image(f, t.n());
        for (y, &fy) in f.iter().enumerate() {
            if !q.leq(s.at(u, y), t.at(fu, fy)) {
                return Ok(Verdict::Fails(
                    Violation::new("(M'') convergence morphism")
                        .with("𝔵", s.ultrafilter_label(u))
                        .with("y", s.carrier.label(y))
                        .with("lhs", q.label(s.at(u, y)))
                        .with("rhs", q.label(t.at(fu, fy))),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `(c_ℓ A)(x) = ⋁_{𝔵 ∋ A} (ℓ𝔵)(x)`.
pub fn a_epsilon(s: &ConvergenceStructure) -> DistanceStructure {
    let q = s.quantale.clone();
    let q2 = q.clone();
    DistanceStructure::from_fn(s.carrier.clone(), q, |a, x| {
        q2.join_all(s.ultrafilters().filter(|u| u.contains(a)).map(|u| s.at(u, x)))
    })
    .expect("convergence carrier fits a distance table")
}

/// `(ℓ_c 𝔵)(x) = ⋀_{A ∈ 𝔵} (cA)(x)`.
pub fn r_functor(c: &DistanceStructure) -> ConvergenceStructure {
    let q = c.quantale().clone();
    let n = c.n();
    let q2 = q.clone();
    ConvergenceStructure::from_fn(c.carrier().clone(), q, |g, x| {
        let u = Ultrafilter::dot(g, n);
        q2.meet_all((0..1usize << n).filter(|&a| u.contains(a)).map(|a| c.at(a, x)))
    })
}

/// (R'') and (T'') over a delta_grid quantale.
pub fn check_probapp_convergence(s: &ConvergenceStructure) -> Result<LawReport, ConvergenceError> {
    if DeltaModel::of(&s.quantale).is_none() {
        return Err(ConvergenceError::Capability("probabilistic convergence needs a delta_grid quantale".into()));
    }
    Ok(check_beta_algebra(s))
}

/// Contraction `A_ε(t) → s` along `f`, kept here for the adjunction check.
pub(crate) fn contractive_from_algebra(f: &[usize], t: &ConvergenceStructure, s: &DistanceStructure) -> bool {
    let q = &*t.quantale;
    let at = a_epsilon(t);
    (0..1usize << t.n()).all(|a| {
        let fa = image_mask(f, a);
        (0..t.n()).all(|y| q.leq(at.at(a, y), s.at(fa, f[y])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;
    use crate::spaces::{check_closure, check_probapp, is_approach, StructureFilter};

    fn q(b: Builtin) -> Arc<Quantale> {
        Quantale::builtin(&b).unwrap()
    }

    fn maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
        (0..m.pow(n as u32)).map(move |code| (0..n).map(|i| code / m.pow(i as u32) % m).collect())
    }

    #[test]
    fn monad_structure_on_principal_ultrafilters() {
        let n = 3;
        for x in 0..n {
            let dot = Ultrafilter::dot(x, n);
            assert_eq!(Ultrafilter::sigma(&Ultrafilter::dot(x, n)), dot);
            for b in 0..1 << n {
                assert_eq!(dot.contains(b), b >> x & 1 == 1);
            }
        }
        for f in maps(3, 3) {
            for x in 0..n {
                let img = Ultrafilter::dot(x, n).image(&f, n);
                assert_eq!(img, Ultrafilter::dot(f[x], n));
                for b in 0..1 << n {
                    assert_eq!(img.contains(b), b >> f[x] & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn discrete_and_bottom() {
        let v = q(Builtin::CostChain { max: 3 });
        let x = FiniteSet::points(3);
        let d = ConvergenceStructure::discrete(x.clone(), v.clone());
        assert!(check_beta_algebra(&d).is_ok());
        assert_eq!(a_epsilon(&d), DistanceStructure::membership(x.clone(), v.clone()).unwrap());
        assert_eq!(r_functor(&a_epsilon(&d)), d);
        let bot = ConvergenceStructure::from_fn(x, v.clone(), |_, _| v.bottom());
        assert!(check_beta_algebra(&bot).violated(LAW_R2));
    }

    #[test]
    fn triangle_violation_over_costs() {
        let v = q(Builtin::CostChain { max: 3 });
        let x = FiniteSet::points(3);
        // d(x0,x1) = 1, d(x1,x2) = 1, d(x0,x2) = 3
        let cost = |s: &str| v.elem(s).unwrap();
        let table = [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]];
        let s = ConvergenceStructure::from_fn(x, v.clone(), |g, p| cost(table[g][p]));
        let r = check_beta_algebra(&s);
        let w = r.first(LAW_T2).unwrap();
        assert!(w.witness.iter().any(|(k, val)| k == "rhs" && val == "3"));
    }

    #[test]
    fn literal_and_collapsed_forms_agree() {
        for b in [Builtin::TwoChain, Builtin::ChainFrame { n: 3 }] {
            let v = q(b);
            for n in 1..=2usize {
                for code in 0..v.len().pow((n * n) as u32) {
                    let s = ConvergenceStructure::from_fn(FiniteSet::points(n), v.clone(), |g, x| {
                        Elem::new(code / v.len().pow((g * n + x) as u32) % v.len())
                    });
                    assert_eq!(check_beta_algebra(&s).is_ok(), is_beta_algebra_fast(&s));
                }
            }
        }
    }

    #[test]
    fn epsilon_image_is_approach_and_r_gives_algebras() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let e = crate::spaces::enumerate_structures(2, &v, StructureFilter::Closure, u64::MAX).unwrap();
        for c in &e.structures {
            let l = r_functor(c);
            assert!(check_beta_algebra(&l).is_ok());
            let back = a_epsilon(&l);
            assert!(check_closure(&back).is_ok() && is_approach(&back).holds());
            assert!(back.leq(c));
            assert_eq!(back == *c, is_approach(c).holds());
        }
    }

    #[test]
    fn sierpinski_convergence() {
        let two = q(Builtin::TwoChain);
        let x = FiniteSet::points(2);
        let sierp = DistanceStructure::from_fn(x, two.clone(), |a, p| {
            let closed = if a & 1 == 1 { 0b11 } else { a };
            if closed >> p & 1 == 1 { two.top() } else { two.bottom() }
        })
        .unwrap();
        let l = r_functor(&sierp);
        for g in 0..2 {
            for p in 0..2 {
                let in_closure = sierp.at(1 << g, p) == two.top();
                assert_eq!(l.at(Ultrafilter::dot(g, 2), p) == two.top(), in_closure);
            }
        }
    }

    #[test]
    fn probabilistic_round_trip() {
        let d = q("delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap());
        let model = DeltaModel::of(&d).unwrap();
        let half = model.tau(model.value_index(num_rational::Ratio::new(1, 2)).unwrap());
        let l = ConvergenceStructure::from_fn(FiniteSet::points(2), d.clone(), |g, x| if g == x { d.unit() } else { half });
        assert!(check_probapp_convergence(&l).unwrap().is_ok());
        let c = a_epsilon(&l);
        assert!(check_probapp(&c).unwrap().is_ok());
        assert_eq!(r_functor(&c), l);
        assert!(check_probapp_convergence(&ConvergenceStructure::discrete(FiniteSet::points(2), q(Builtin::TwoChain))).is_err());
    }
}
