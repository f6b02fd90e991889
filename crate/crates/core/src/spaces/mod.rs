//! V-closure and V-approach structures on finite sets.
//!
//! A [`DistanceStructure`] is a table `c: PX → V^X`, indexed by subset
//! bitmask and point; `(cA)(x)` plays the role of the point-set distance
//! `δ(x, A)`. [`Tower`] is the equivalent presentation as a V-indexed family
//! of set operators.

mod enumerate;
mod probapp;
pub mod tower;

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Elem, Quantale};
use crate::report::{LawReport, Verdict, Violation};
use crate::vrel::{FiniteSet, VRelation};

pub use enumerate::{
    enumerate_structures, sample_structures, structures, Enumeration, StructureFilter, CANDIDATE_LIMIT,
};
pub use probapp::check_probapp;
pub use tower::{check_continuity, Tower, TowerMode};

/// Largest carrier for which distance tables are built.
pub const MAX_POINTS: usize = 12;

pub const LAW_R: &str = "(R') reflexivity";
pub const LAW_T: &str = "(T') transitivity";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpacesError {
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("carrier of {0} points is too large")]
    TooLarge(usize),
    #[error("carrier or quantale mismatch: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("enumeration bound exceeded: more than {0} candidates")]
    BoundExceeded(u64),
    #[error("tower rejected: {0}")]
    InvalidTower(Violation),
}

/// `c: PX → V^X`, stored as `table[A * |X| + x] = (cA)(x)`.
#[derive(Clone, Debug)]
pub struct DistanceStructure {
    carrier: FiniteSet,
    quantale: Arc<Quantale>,
    table: Vec<Elem>,
}

impl PartialEq for DistanceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && *self.quantale == *other.quantale && self.table == other.table
    }
}

impl DistanceStructure {
    pub fn new(carrier: FiniteSet, quantale: Arc<Quantale>, table: Vec<Elem>) -> Result<Self, SpacesError> {
        let n = carrier.len();
        if n > MAX_POINTS {
            return Err(SpacesError::TooLarge(n));
        }
        let expected = (1 << n) * n;
        if table.len() != expected {
            return Err(SpacesError::TableSize { expected, found: table.len() });
        }
        Ok(DistanceStructure { carrier, quantale, table })
    }

    pub fn from_fn(
        carrier: FiniteSet,
        quantale: Arc<Quantale>,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self, SpacesError> {
        let n = carrier.len();
        if n > MAX_POINTS {
            return Err(SpacesError::TooLarge(n));
        }
        let table = (0..(1usize << n) * n).map(|i| f(i / n, i % n)).collect();
        Ok(DistanceStructure { carrier, quantale, table })
    }

    /// `(cA)(x) = k` if `x ∈ A`, else `⊥`.
    pub fn membership(carrier: FiniteSet, q: Arc<Quantale>) -> Result<Self, SpacesError> {
        let (k, bot) = (q.unit(), q.bottom());
        Self::from_fn(carrier, q, |a, x| if a >> x & 1 == 1 { k } else { bot })
    }

    pub fn constant(carrier: FiniteSet, q: Arc<Quantale>, v: Elem) -> Result<Self, SpacesError> {
        Self::from_fn(carrier, q, |_, _| v)
    }

    /// `(cA)(x) = ⋁_{y∈A} m(y, x)`.
    pub fn from_point_matrix(carrier: FiniteSet, q: Arc<Quantale>, m: &VRelation) -> Result<Self, SpacesError> {
        let n = carrier.len();
        if m.rows() != n || m.cols() != n {
            return Err(SpacesError::Mismatch(format!("point matrix is {}x{}, carrier has {n} points", m.rows(), m.cols())));
        }
        let q2 = q.clone();
        Self::from_fn(carrier, q, |a, x| q2.join_all((0..n).filter(|y| a >> y & 1 == 1).map(|y| m.at(y, x))))
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

    pub fn at(&self, a: usize, x: usize) -> Elem {
        self.table[a * self.n() + x]
    }

    pub fn set(&mut self, a: usize, x: usize, v: Elem) {
        let n = self.n();
        self.table[a * n + x] = v;
    }

    /// Entrywise order.
    pub fn leq(&self, other: &DistanceStructure) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| self.quantale.leq(a, b))
    }

    /// Point matrix `m(y, x) = c({y})(x)`.
    pub fn point_matrix(&self) -> VRelation {
        VRelation::from_fn(self.n(), self.n(), |y, x| self.at(1 << y, x))
    }

    pub fn subset_label(&self, a: usize) -> String {
        self.carrier.subset_label(a)
    }

    pub fn same_shape(&self, other: &DistanceStructure) -> bool {
        self.carrier == other.carrier && *self.quantale == *other.quantale
    }
}

/// `g(y) = ⋁_{A ⊆ U} (cA)(y)`: the left factor of (T') for the largest
/// family with union `U`.
fn family_join(s: &DistanceStructure, u: usize) -> Vec<Elem> {
    let q = &*s.quantale;
    let mut g = vec![q.bottom(); s.n()];
    let mut a = u;
    loop {
        for (y, slot) in g.iter_mut().enumerate() {
            *slot = q.join(*slot, s.at(a, y));
        }
        if a == 0 {
            break;
        }
        a = (a - 1) & u;
    }
    g
}

fn reflexivity(s: &DistanceStructure) -> Option<Violation> {
    let q = &*s.quantale;
    (0..s.n()).find(|&x| !q.leq(q.unit(), s.at(1 << x, x))).map(|x| {
        Violation::new(LAW_R)
            .with("x", s.carrier.label(x))
            .with("c({x})(x)", q.label(s.at(1 << x, x)))
    })
}

/// Checks (R') and (T').
///
/// (T') is quantified over all families `𝒜 ⊆ PX`. Its left side grows with
/// `𝒜` while the right side only depends on `⋃𝒜`, so for each union `U`
/// the family of all subsets of `U` is the strongest instance; the check
/// runs over those families only. [`check_closure_naive`] runs over every
/// family and agrees with this function.
pub fn check_closure(s: &DistanceStructure) -> LawReport {
    let mut report = LawReport::new();
    report.record(LAW_R, reflexivity(s));
    report.record(LAW_T, transitivity_witness(s));
    report
}

fn transitivity_witness(s: &DistanceStructure) -> Option<Violation> {
    let q = &*s.quantale;
    let n = s.n();
    for u in 0..1usize << n {
        let g = family_join(s, u);
        for b in 0..1usize << n {
            let lhs = q.meet_all((0..n).filter(|y| b >> y & 1 == 1).map(|y| g[y]));
            for z in 0..n {
                let l = q.tensor(lhs, s.at(b, z));
                if !q.leq(l, s.at(u, z)) {
                    return Some(
                        Violation::new(LAW_T)
                            .with("family", format!("all subsets of {}", s.subset_label(u)))
                            .with("B", s.subset_label(b))
                            .with("z", s.carrier.label(z))
                            .with("lhs", q.label(l))
                            .with("rhs", q.label(s.at(u, z))),
                    );
                }
            }
        }
    }
    None
}

/// (R') and (T') with (T') checked over every family `𝒜 ⊆ PX`; only usable
/// for `|X| ≤ 4`.
pub fn check_closure_naive(s: &DistanceStructure) -> LawReport {
    assert!(s.n() <= 4, "naive closure check needs |X| ≤ 4");
    let q = &*s.quantale;
    let n = s.n();
    let subsets = 1usize << n;
    let mut report = LawReport::new();
    report.record(LAW_R, reflexivity(s));
    let mut found = None;
    'families: for fam in 0u64..1u64 << subsets {
        let members: Vec<usize> = (0..subsets).filter(|a| fam >> a & 1 == 1).collect();
        let union = members.iter().fold(0, |u, a| u | a);
        for b in 0..subsets {
            let lhs = q.meet_all(
                (0..n).filter(|y| b >> y & 1 == 1).map(|y| q.join_all(members.iter().map(|&a| s.at(a, y)))),
            );
            for z in 0..n {
                if !q.leq(q.tensor(lhs, s.at(b, z)), s.at(union, z)) {
                    let fam_label: Vec<String> = members.iter().map(|&a| s.subset_label(a)).collect();
                    found = Some(
                        Violation::new(LAW_T)
                            .with("family", format!("{{{}}}", fam_label.join(",")))
                            .with("B", s.subset_label(b))
                            .with("z", s.carrier.label(z)),
                    );
                    break 'families;
                }
            }
        }
    }
    report.record(LAW_T, found);
    report
}

pub fn is_closure(s: &DistanceStructure) -> bool {
    reflexivity(s).is_none() && transitivity_witness(s).is_none()
}

/// Finite join preservation: `c∅ = ⊥` and `c(A∪B) = cA ∨ cB`.
pub fn is_approach(s: &DistanceStructure) -> Verdict {
    let q = &*s.quantale;
    let n = s.n();
    if let Some(x) = (0..n).find(|&x| s.at(0, x) != q.bottom()) {
        return Verdict::Fails(
            Violation::new("empty set at bottom")
                .with("x", s.carrier.label(x))
                .with("c(∅)(x)", q.label(s.at(0, x))),
        );
    }
    for a in 0..1usize << n {
        for b in 0..1usize << n {
            for x in 0..n {
                let (l, r) = (s.at(a | b, x), q.join(s.at(a, x), s.at(b, x)));
                if l != r {
                    return Verdict::Fails(
                        Violation::new("binary joins")
                            .with("A", s.subset_label(a))
                            .with("B", s.subset_label(b))
                            .with("x", s.carrier.label(x))
                            .with("c(A∪B)(x)", q.label(l))
                            .with("cA(x)∨cB(x)", q.label(r)),
                    );
                }
            }
        }
    }
    Verdict::Holds
}

/// Least V-closure structure above `s`.
///
/// Iterates the updates `c({x})(x) ∨= k` and, for every union `U`, subset
/// `B` and point `z`, `c(U)(z) ∨= (⋀_{y∈B} g_U(y)) ⊗ (cB)(z)`. Each update is
/// forced in every closure structure above the current table, so the
/// fixpoint is the least one.
pub fn closure_hull(s: &DistanceStructure) -> DistanceStructure {
    let mut c = s.clone();
    let q = s.quantale.clone();
    let n = c.n();
    loop {
        let mut changed = false;
        for x in 0..n {
            let v = q.join(c.at(1 << x, x), q.unit());
            if v != c.at(1 << x, x) {
                c.set(1 << x, x, v);
                changed = true;
            }
        }
        for u in 0..1usize << n {
            let g = family_join(&c, u);
            for b in 0..1usize << n {
                let lhs = q.meet_all((0..n).filter(|y| b >> y & 1 == 1).map(|y| g[y]));
                for z in 0..n {
                    let need = q.tensor(lhs, c.at(b, z));
                    let cur = c.at(u, z);
                    if !q.leq(need, cur) {
                        c.set(u, z, q.join(cur, need));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return c;
        }
    }
}

/// Least V-category structure above a point matrix: the reflexive,
/// transitive closure of `m`.
pub fn category_hull(q: &Quantale, m: &VRelation) -> VRelation {
    let n = m.rows();
    let mut d: Vec<Elem> = (0..n * n)
        .map(|i| if i / n == i % n { q.join(m.at(i / n, i % n), q.unit()) } else { m.at(i / n, i % n) })
        .collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let need = q.tensor(d[x * n + y], d[y * n + z]);
                    if !q.leq(need, d[x * n + z]) {
                        d[x * n + z] = q.join(d[x * n + z], need);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return VRelation::new(n, n, d).unwrap();
        }
    }
}

pub fn image_mask(f: &[usize], a: usize) -> usize {
    f.iter().enumerate().filter(|(x, _)| a >> x & 1 == 1).fold(0, |m, (_, &y)| m | 1 << y)
}

/// (M'): `(cA)(x) ≤ (d f(A))(fx)` for all `A`, `x`.
pub fn check_contractive(f: &[usize], c: &DistanceStructure, d: &DistanceStructure) -> Result<Verdict, SpacesError> {
    if f.len() != c.n() || f.iter().any(|&y| y >= d.n()) {
        return Err(SpacesError::Mismatch("map does not go between the carriers".into()));
    }
    if *c.quantale != *d.quantale {
        return Err(SpacesError::Mismatch("structures over different quantales".into()));
    }
    let q = &*c.quantale;
    for a in 0..1usize << c.n() {
        let fa = image_mask(f, a);
        for (x, &fx) in f.iter().enumerate() {
            if !q.leq(c.at(a, x), d.at(fa, fx)) {
                return Ok(Verdict::Fails(
                    Violation::new("(M') contraction")
                        .with("A", c.subset_label(a))
                        .with("x", c.carrier.label(x))
                        .with("cA(x)", q.label(c.at(a, x)))
                        .with("d(fA)(fx)", q.label(d.at(fa, fx))),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;

    fn q(b: Builtin) -> Arc<Quantale> {
        Quantale::builtin(&b).unwrap()
    }

    #[test]
    fn membership_is_approach_and_closure() {
        for b in [Builtin::TwoChain, Builtin::ChainFrame { n: 3 }, Builtin::CostChain { max: 2 }] {
            let s = DistanceStructure::membership(FiniteSet::points(3), q(b)).unwrap();
            assert!(check_closure(&s).is_ok());
            assert!(is_approach(&s).holds());
        }
    }

    #[test]
    fn constant_bottom_fails_reflexivity() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let s = DistanceStructure::constant(FiniteSet::points(2), v.clone(), v.bottom()).unwrap();
        let r = check_closure(&s);
        assert_eq!(r.first(LAW_R).unwrap().witness[0], ("x".to_string(), "x0".to_string()));
    }

    #[test]
    fn nonempty_at_empty_set_is_not_approach() {
        let v = q(Builtin::ChainFrame { n: 3 });
        let s = DistanceStructure::from_fn(FiniteSet::points(2), v.clone(), |a, x| {
            if a == 0 || a >> x & 1 == 1 {
                v.unit()
            } else {
                v.bottom()
            }
        })
        .unwrap();
        let verdict = is_approach(&s);
        assert_eq!(verdict.violation().unwrap().law, "empty set at bottom");
    }

    #[test]
    fn point_matrices_give_join_preserving_structures() {
        let d = q("delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap());
        for code in 0..d.len().pow(4) {
            let m = VRelation::from_fn(2, 2, |y, x| Elem::new(code / d.len().pow((2 * y + x) as u32) % d.len()));
            let s = DistanceStructure::from_point_matrix(FiniteSet::points(2), d.clone(), &m).unwrap();
            assert!(is_approach(&s).holds());
        }
    }

    #[test]
    fn fast_and_naive_closure_checks_agree_exhaustively() {
        for b in [Builtin::TwoChain, Builtin::ChainFrame { n: 3 }] {
            let v = q(b);
            for n in 0..=2usize {
                let cells = (1 << n) * n;
                for code in 0..v.len().pow(cells as u32) {
                    let s = DistanceStructure::from_fn(FiniteSet::points(n), v.clone(), |a, x| {
                        Elem::new(code / v.len().pow((a * n + x) as u32) % v.len())
                    })
                    .unwrap();
                    assert_eq!(check_closure(&s).is_ok(), check_closure_naive(&s).is_ok());
                }
            }
        }
    }

    #[test]
    fn hull_of_bottom_is_membership() {
        for b in [Builtin::TwoChain, Builtin::ChainFrame { n: 3 }, Builtin::CostChain { max: 2 }] {
            let v = q(b);
            let bot = DistanceStructure::constant(FiniteSet::points(2), v.clone(), v.bottom()).unwrap();
            let memb = DistanceStructure::membership(FiniteSet::points(2), v).unwrap();
            assert_eq!(closure_hull(&bot), memb);
        }
    }

    #[test]
    fn contraction_examples() {
        let two = q(Builtin::TwoChain);
        let x = FiniteSet::points(2);
        // Sierpiński space: closure of {x0} is {x0, x1}; x1 is closed
        let sierp = DistanceStructure::from_fn(x.clone(), two.clone(), |a, p| {
            let closed = if a & 1 == 1 { 0b11 } else { a };
            if closed >> p & 1 == 1 { two.top() } else { two.bottom() }
        })
        .unwrap();
        assert!(check_closure(&sierp).is_ok());
        assert!(check_contractive(&[0, 1], &sierp, &sierp).unwrap().holds());
        let top = DistanceStructure::constant(x.clone(), two.clone(), two.top()).unwrap();
        assert!(check_contractive(&[1, 0], &sierp, &top).unwrap().holds());
        // swapping the points is not continuous on Sierpiński space
        assert!(!check_contractive(&[1, 0], &sierp, &sierp).unwrap().holds());
    }
}
