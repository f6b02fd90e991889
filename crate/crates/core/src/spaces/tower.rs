//! Closure towers: V-indexed families of set operators `c^v: PX → PX`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{image_mask, DistanceStructure, SpacesError};
use crate::lattice::{Elem, Quantale};
use crate::report::{LawReport, Verdict, Violation};
use crate::vrel::FiniteSet;

pub const LAW_C0: &str = "(C0) monotonicity";
pub const LAW_C1: &str = "(C1) joins of levels";
pub const LAW_C2: &str = "(C2) extensivity at k";
pub const LAW_C3: &str = "(C3) composition";
pub const LAW_C3P: &str = "(C3') distance composition";
pub const LAW_C4: &str = "(C4) empty set";
pub const LAW_C4_BOTTOM: &str = "(C4) at bottom";
pub const LAW_C5: &str = "(C5) binary unions";
pub const LAW_C4P: &str = "(C4') empty set at coprimes";
pub const LAW_C5P: &str = "(C5') binary unions at coprimes";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerMode {
    Closure,
    ApproachLl,
    ApproachCoprime,
}

impl std::str::FromStr for TowerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closure" => Ok(TowerMode::Closure),
            "approach_ll" => Ok(TowerMode::ApproachLl),
            "approach_coprime" => Ok(TowerMode::ApproachCoprime),
            _ => Err(format!("unknown tower mode `{s}`")),
        }
    }
}

/// `ops[v * 2^|X| + A]` is the bitmask of `c^v A`. All levels are stored,
/// including `v = ⊥`.
#[derive(Clone, Debug)]
pub struct Tower {
    carrier: FiniteSet,
    quantale: Arc<Quantale>,
    ops: Vec<usize>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && *self.quantale == *other.quantale && self.ops == other.ops
    }
}

impl Tower {
    pub fn new(carrier: FiniteSet, quantale: Arc<Quantale>, ops: Vec<usize>) -> Result<Self, SpacesError> {
        let n = carrier.len();
        if n > super::MAX_POINTS {
            return Err(SpacesError::TooLarge(n));
        }
        let expected = quantale.len() << n;
        if ops.len() != expected {
            return Err(SpacesError::TableSize { expected, found: ops.len() });
        }
        if ops.iter().any(|&m| m >> n != 0) {
            return Err(SpacesError::Mismatch("tower value outside the carrier".into()));
        }
        Ok(Tower { carrier, quantale, ops })
    }

    /// `c^v A = {x | v ≤ (cA)(x)}`.
    pub fn of(s: &DistanceStructure) -> Tower {
        let q = s.quantale();
        let n = s.n();
        let mut ops = Vec::with_capacity(q.len() << n);
        for v in q.elements() {
            for a in 0..1usize << n {
                ops.push((0..n).filter(|&x| q.leq(v, s.at(a, x))).fold(0, |m, x| m | 1 << x));
            }
        }
        Tower { carrier: s.carrier().clone(), quantale: q.clone(), ops }
    }

    /// `(cA)(x) = ⋁{v | x ∈ c^v A}`, without checking the tower axioms.
    pub fn distances(&self) -> DistanceStructure {
        let q = self.quantale.clone();
        let q2 = q.clone();
        DistanceStructure::from_fn(self.carrier.clone(), q, |a, x| {
            q2.join_all(q2.elements().filter(|&v| self.level(v, a) >> x & 1 == 1))
        })
        .expect("tower carrier is within bounds")
    }

    /// The closure structure of a tower satisfying (C0)–(C3); otherwise the
    /// first failed axiom.
    pub fn to_closure(&self) -> Result<DistanceStructure, SpacesError> {
        let report = self.closure_laws();
        match report.violations.into_iter().next() {
            Some(v) => Err(SpacesError::InvalidTower(v)),
            None => Ok(self.distances()),
        }
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

    pub fn ops(&self) -> &[usize] {
        &self.ops
    }

    pub fn level(&self, v: Elem, a: usize) -> usize {
        self.ops[(v.index() << self.n()) + a]
    }

    fn sets(&self) -> std::ops::Range<usize> {
        0..1usize << self.n()
    }

    fn full(&self) -> usize {
        (1usize << self.n()) - 1
    }

    fn witness(&self, law: &str, v: Elem) -> Violation {
        Violation::new(law).with("v", self.quantale.label(v))
    }

    fn closure_laws(&self) -> LawReport {
        let mut r = LawReport::new();
        r.record(LAW_C0, self.c0());
        r.record(LAW_C1, self.c1());
        r.record(LAW_C2, self.c2());
        r.record(LAW_C3, self.c3());
        r.record(LAW_C3P, self.c3_prime());
        r
    }

    /// Checks the axioms of `mode`. The approach modes need a ccd quantale,
    /// respectively one whose elements are joins of coprimes.
    pub fn check(&self, mode: TowerMode) -> Result<LawReport, SpacesError> {
        let q = &*self.quantale;
        match mode {
            TowerMode::ApproachLl if !q.is_ccd() => {
                return Err(SpacesError::Capability("approach_ll needs a constructively completely distributive quantale".into()))
            }
            TowerMode::ApproachCoprime if !q.has_coprime_decomposition() => {
                return Err(SpacesError::Capability("approach_coprime needs every element to be a join of coprimes".into()))
            }
            _ => {}
        }
        let mut r = self.closure_laws();
        match mode {
            TowerMode::Closure => {}
            TowerMode::ApproachLl => {
                r.record(LAW_C4, self.c4());
                r.record(LAW_C4_BOTTOM, self.c4_bottom());
                r.record(LAW_C5, self.c5());
            }
            TowerMode::ApproachCoprime => {
                r.record(LAW_C4P, self.c4_prime());
                r.record(LAW_C5P, self.c5_prime());
            }
        }
        Ok(r)
    }

    fn c0(&self) -> Option<Violation> {
        for v in self.quantale.elements() {
            for a in self.sets() {
                let mut b = a;
                loop {
                    if self.level(v, b) & !self.level(v, a) != 0 {
                        return Some(
                            self.witness(LAW_C0, v)
                                .with("B", self.carrier.subset_label(b))
                                .with("A", self.carrier.subset_label(a)),
                        );
                    }
                    if b == 0 {
                        break;
                    }
                    b = (b - 1) & a;
                }
            }
        }
        None
    }

    /// Pointwise form: `x` lies in `c^v A` whenever `v ≤ ⋁{u | x ∈ c^u A}`.
    /// The largest family of levels containing `x` gives the strongest
    /// instance, and the empty family forces `c^⊥ A = X`.
    fn c1(&self) -> Option<Violation> {
        let q = &*self.quantale;
        for a in self.sets() {
            for x in 0..self.n() {
                let reach = q.join_all(q.elements().filter(|&u| self.level(u, a) >> x & 1 == 1));
                if let Some(v) = q.elements().find(|&v| q.leq(v, reach) && self.level(v, a) >> x & 1 == 0) {
                    return Some(
                        self.witness(LAW_C1, v)
                            .with("A", self.carrier.subset_label(a))
                            .with("x", self.carrier.label(x))
                            .with("join of levels", q.label(reach)),
                    );
                }
            }
        }
        None
    }

    fn c2(&self) -> Option<Violation> {
        let k = self.quantale.unit();
        self.sets()
            .find(|&a| a & !self.level(k, a) != 0)
            .map(|a| self.witness(LAW_C2, k).with("A", self.carrier.subset_label(a)))
    }

    /// `c^u c^v A ⊆ c^{v⊗u} A`.
    fn c3(&self) -> Option<Violation> {
        let q = &*self.quantale;
        for u in q.elements() {
            for v in q.elements() {
                let vu = q.tensor(v, u);
                for a in self.sets() {
                    if self.level(u, self.level(v, a)) & !self.level(vu, a) != 0 {
                        return Some(
                            Violation::new(LAW_C3)
                                .with("u", q.label(u))
                                .with("v", q.label(v))
                                .with("A", self.carrier.subset_label(a)),
                        );
                    }
                }
            }
        }
        None
    }

    /// `v ⊗ c(c^v A)(x) ≤ (cA)(x)` for the distances of the tower.
    fn c3_prime(&self) -> Option<Violation> {
        let q = &*self.quantale;
        let c = self.distances();
        for v in q.elements() {
            for a in self.sets() {
                let cva = self.level(v, a);
                for x in 0..self.n() {
                    let lhs = q.tensor(v, c.at(cva, x));
                    if !q.leq(lhs, c.at(a, x)) {
                        return Some(
                            self.witness(LAW_C3P, v)
                                .with("A", self.carrier.subset_label(a))
                                .with("x", self.carrier.label(x))
                                .with("lhs", q.label(lhs))
                                .with("rhs", q.label(c.at(a, x))),
                        );
                    }
                }
            }
        }
        None
    }

    fn c4(&self) -> Option<Violation> {
        let q = &*self.quantale;
        q.elements()
            .find(|&v| v != q.bottom() && self.level(v, 0) != 0)
            .map(|v| self.witness(LAW_C4, v))
    }

    /// `c^⊥ ∅ = ⋂_{u ≪ ⊥} ∅`; nothing is totally below `⊥`, so this is `X`.
    fn c4_bottom(&self) -> Option<Violation> {
        let q = &*self.quantale;
        let bot = q.bottom();
        let expected = if q.way_below_set(bot).is_empty() { self.full() } else { 0 };
        (self.level(bot, 0) != expected).then(|| self.witness(LAW_C4_BOTTOM, bot))
    }

    /// `c^v(A∪B) = ⋂_{u≪v} (c^u A ∪ c^u B)` for `v > ⊥`.
    fn c5(&self) -> Option<Violation> {
        let q = &*self.quantale;
        for v in q.elements().filter(|&v| v != q.bottom()) {
            let below = q.way_below_set(v);
            for a in self.sets() {
                for b in self.sets() {
                    let rhs = below.iter().fold(self.full(), |m, &u| m & (self.level(u, a) | self.level(u, b)));
                    if self.level(v, a | b) != rhs {
                        return Some(
                            self.witness(LAW_C5, v)
                                .with("A", self.carrier.subset_label(a))
                                .with("B", self.carrier.subset_label(b))
                                .with("lhs", self.carrier.subset_label(self.level(v, a | b)))
                                .with("rhs", self.carrier.subset_label(rhs)),
                        );
                    }
                }
            }
        }
        None
    }

    fn c4_prime(&self) -> Option<Violation> {
        self.quantale
            .coprimes()
            .into_iter()
            .find(|&p| self.level(p, 0) != 0)
            .map(|p| self.witness(LAW_C4P, p))
    }

    fn c5_prime(&self) -> Option<Violation> {
        for p in self.quantale.coprimes() {
            for a in self.sets() {
                for b in self.sets() {
                    if self.level(p, a | b) != self.level(p, a) | self.level(p, b) {
                        return Some(
                            self.witness(LAW_C5P, p)
                                .with("A", self.carrier.subset_label(a))
                                .with("B", self.carrier.subset_label(b)),
                        );
                    }
                }
            }
        }
        None
    }
}

/// `f(c^v A) ⊆ d^v(f A)` for all `v`, `A`.
pub fn check_continuity(f: &[usize], c: &Tower, d: &Tower) -> Result<Verdict, SpacesError> {
    if f.len() != c.n() || f.iter().any(|&y| y >= d.n()) {
        return Err(SpacesError::Mismatch("map does not go between the carriers".into()));
    }
    if *c.quantale != *d.quantale {
        return Err(SpacesError::Mismatch("towers over different quantales".into()));
    }
    for v in c.quantale.elements() {
        for a in c.sets() {
            let lhs = image_mask(f, c.level(v, a));
            let rhs = d.level(v, image_mask(f, a));
            if lhs & !rhs != 0 {
                return Ok(Verdict::Fails(
                    c.witness("continuity", v)
                        .with("A", c.carrier.subset_label(a))
                        .with("f(c^v A)", d.carrier.subset_label(lhs))
                        .with("d^v(f A)", d.carrier.subset_label(rhs)),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}
