//! Finite quantales and the lattice-theoretic notions built on them.
//!
//! A [`Quantale`] is always a validated object: a finite complete lattice
//! with an associative, unital tensor that preserves joins in each argument.
//! Raw, string-labelled tables live in [`QuantaleTables`]; [`check_quantale`]
//! inspects those and reports every violated law with a witness.

mod builtin;
mod maps;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{LawReport, Violation};

pub use builtin::{downset_element, downset_members, Builtin, BuiltinError, DeltaModel, TNorm, Value};
pub use maps::{Adjoints, MapError, MonotoneMap, QuantaleHomClass};

/// Carriers up to this size use the all-subsets definition of `≪`.
pub const TOTALLY_BELOW_SUBSET_LIMIT: usize = 16;

/// Index of an element in a quantale carrier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(u16::try_from(index).expect("quantale carrier exceeds u16 range"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Explicit, string-labelled quantale tables as they appear in files.
///
/// `leq` lists every pair `(a, b)` with `a ≤ b`; it is taken as the order
/// relation itself, not as a generating relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleTables {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub tensor: Vec<(String, String, String)>,
    pub unit: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("quantale carrier is empty")]
    EmptyCarrier,
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}` in {1}")]
    UnknownElement(String, &'static str),
    #[error("tensor table has no entry for ({0}, {1})")]
    MissingTensor(String, String),
    #[error("tensor table has conflicting entries for ({0}, {1})")]
    ConflictingTensor(String, String),
    #[error("carrier too large ({0} elements)")]
    TooLarge(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantaleError {
    #[error("malformed quantale tables: {0}")]
    Structure(#[from] StructureError),
    #[error("quantale laws violated:\n{0}")]
    Laws(LawReport),
}

/// Tables indexed by position, after structural validation.
struct Indexed {
    n: usize,
    leq: Vec<bool>,
    tensor: Vec<usize>,
    unit: usize,
}

impl Indexed {
    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.n + b]
    }

    /// Least upper bound of `a` and `b` with respect to `leq`, if it exists.
    fn lub(&self, items: &[usize]) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.n)
            .filter(|&u| items.iter().all(|&i| self.leq(i, u)))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&w| self.leq(u, w)))
    }

    fn glb(&self, items: &[usize]) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.n)
            .filter(|&l| items.iter().all(|&i| self.leq(l, i)))
            .collect();
        lowers
            .iter()
            .copied()
            .find(|&l| lowers.iter().all(|&w| self.leq(w, l)))
    }
}

fn index_tables(t: &QuantaleTables) -> Result<Indexed, StructureError> {
    let n = t.elements.len();
    if n == 0 {
        return Err(StructureError::EmptyCarrier);
    }
    if n > u16::MAX as usize {
        return Err(StructureError::TooLarge(n));
    }
    let mut pos = HashMap::with_capacity(n);
    for (i, e) in t.elements.iter().enumerate() {
        if pos.insert(e.as_str(), i).is_some() {
            return Err(StructureError::DuplicateElement(e.clone()));
        }
    }
    let lookup = |s: &str, ctx: &'static str| {
        pos.get(s)
            .copied()
            .ok_or_else(|| StructureError::UnknownElement(s.to_string(), ctx))
    };
    let mut leq = vec![false; n * n];
    for (a, b) in &t.leq {
        leq[lookup(a, "leq")? * n + lookup(b, "leq")?] = true;
    }
    let mut tensor: Vec<Option<usize>> = vec![None; n * n];
    for (a, b, c) in &t.tensor {
        let (ia, ib, ic) = (lookup(a, "tensor")?, lookup(b, "tensor")?, lookup(c, "tensor")?);
        match tensor[ia * n + ib] {
            Some(prev) if prev != ic => {
                return Err(StructureError::ConflictingTensor(a.clone(), b.clone()))
            }
            _ => tensor[ia * n + ib] = Some(ic),
        }
    }
    let tensor = tensor
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| {
                StructureError::MissingTensor(t.elements[k / n].clone(), t.elements[k % n].clone())
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unit = lookup(&t.unit, "unit")?;
    Ok(Indexed { n, leq, tensor, unit })
}

/// Checks every quantale law on explicit tables.
///
/// Structural problems (unknown labels, missing tensor entries) are returned
/// as errors; law failures are listed in the report. Lattice laws are only
/// examined once the order is a partial order, and tensor laws only once the
/// carrier is a lattice, since the later laws are phrased through joins.
pub fn check_quantale(tables: &QuantaleTables) -> Result<LawReport, StructureError> {
    let ix = index_tables(tables)?;
    Ok(check_indexed(&ix, &tables.elements))
}

fn check_indexed(ix: &Indexed, labels: &[String]) -> LawReport {
    let n = ix.n;
    let l = |i: usize| labels[i].clone();
    let mut report = LawReport::new();

    report.record(
        "order-reflexive",
        (0..n).find(|&a| !ix.leq(a, a)).map(|a| Violation::new("order-reflexive").with("a", l(a))),
    );
    let mut anti = None;
    let mut trans = None;
    'outer: for a in 0..n {
        for b in 0..n {
            if anti.is_none() && a != b && ix.leq(a, b) && ix.leq(b, a) {
                anti = Some(Violation::new("order-antisymmetric").with("a", l(a)).with("b", l(b)));
            }
            if trans.is_none() && ix.leq(a, b) {
                if let Some(c) = (0..n).find(|&c| ix.leq(b, c) && !ix.leq(a, c)) {
                    trans = Some(
                        Violation::new("order-transitive")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                }
            }
            if anti.is_some() && trans.is_some() {
                break 'outer;
            }
        }
    }
    report.record("order-antisymmetric", anti);
    report.record("order-transitive", trans);
    if !report.is_ok() {
        return report;
    }

    // A finite poset with a bottom and binary joins is a complete lattice;
    // meets are checked as well so that the witness names the missing bound.
    report.record(
        "lattice-bottom",
        ix.lub(&[]).is_none().then(|| Violation::new("lattice-bottom")),
    );
    report.record("lattice-top", ix.glb(&[]).is_none().then(|| Violation::new("lattice-top")));
    let mut join = None;
    let mut meet = None;
    for a in 0..n {
        for b in 0..n {
            if join.is_none() && ix.lub(&[a, b]).is_none() {
                join = Some(Violation::new("lattice-join").with("a", l(a)).with("b", l(b)));
            }
            if meet.is_none() && ix.glb(&[a, b]).is_none() {
                meet = Some(Violation::new("lattice-meet").with("a", l(a)).with("b", l(b)));
            }
        }
    }
    report.record("lattice-join", join);
    report.record("lattice-meet", meet);
    if !report.is_ok() {
        return report;
    }

    let bottom = ix.lub(&[]).unwrap();
    let joins: Vec<usize> = (0..n * n).map(|k| ix.lub(&[k / n, k % n]).unwrap()).collect();
    let join = |a: usize, b: usize| joins[a * n + b];
    let t = |a: usize, b: usize| ix.tensor(a, b);

    let mut assoc = None;
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t(t(a, b), c) != t(a, t(b, c)) {
                    assoc = Some(
                        Violation::new("tensor-associative")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                    break 'assoc;
                }
            }
        }
    }
    report.record("tensor-associative", assoc);
    let k = ix.unit;
    report.record(
        "unit-left",
        (0..n).find(|&a| t(k, a) != a).map(|a| Violation::new("unit-left").with("a", l(a))),
    );
    report.record(
        "unit-right",
        (0..n).find(|&a| t(a, k) != a).map(|a| Violation::new("unit-right").with("a", l(a))),
    );
    report.record(
        "tensor-bottom-left",
        (0..n)
            .find(|&a| t(bottom, a) != bottom)
            .map(|a| Violation::new("tensor-bottom-left").with("a", l(a))),
    );
    report.record(
        "tensor-bottom-right",
        (0..n)
            .find(|&a| t(a, bottom) != bottom)
            .map(|a| Violation::new("tensor-bottom-right").with("a", l(a))),
    );

    let mut mono_l = None;
    let mut mono_r = None;
    let mut join_l = None;
    let mut join_r = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mono_l.is_none() && ix.leq(b, c) && !ix.leq(t(b, a), t(c, a)) {
                    mono_l = Some(
                        Violation::new("tensor-monotone-left")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                }
                if mono_r.is_none() && ix.leq(b, c) && !ix.leq(t(a, b), t(a, c)) {
                    mono_r = Some(
                        Violation::new("tensor-monotone-right")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                }
                if join_l.is_none() && t(join(b, c), a) != join(t(b, a), t(c, a)) {
                    join_l = Some(
                        Violation::new("tensor-joins-left")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                }
                if join_r.is_none() && t(a, join(b, c)) != join(t(a, b), t(a, c)) {
                    join_r = Some(
                        Violation::new("tensor-joins-right")
                            .with("a", l(a))
                            .with("b", l(b))
                            .with("c", l(c)),
                    );
                }
            }
        }
    }
    report.record("tensor-monotone-left", mono_l);
    report.record("tensor-monotone-right", mono_r);
    report.record("tensor-joins-left", join_l);
    report.record("tensor-joins-right", join_r);
    report
}

/// A finite unital quantale.
///
/// Elements are addressed by [`Elem`]; join, meet and tensor tables are
/// precomputed at construction.
pub struct Quantale {
    labels: Vec<String>,
    by_label: HashMap<String, Elem>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    tensor: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    unit: Elem,
    down: Vec<u64>,
    origin: Option<Builtin>,
    totally_below: OnceLock<Vec<bool>>,
}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantale")
            .field("elements", &self.labels)
            .field("unit", &self.label(self.unit))
            .field("origin", &self.origin)
            .finish()
    }
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.leq == other.leq
            && self.tensor == other.tensor
            && self.unit == other.unit
    }
}

impl Quantale {
    pub fn from_tables(tables: &QuantaleTables) -> Result<Quantale, QuantaleError> {
        let ix = index_tables(tables)?;
        let report = check_indexed(&ix, &tables.elements);
        if !report.is_ok() {
            return Err(QuantaleError::Laws(report));
        }
        Ok(Self::from_checked(ix, tables.elements.clone(), None))
    }

    /// Builds a quantale from an order predicate and a tensor function over
    /// `0..labels.len()`, checking all laws.
    pub(crate) fn from_fns(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        tensor: impl Fn(usize, usize) -> usize,
        unit: usize,
        origin: Option<Builtin>,
    ) -> Result<Quantale, QuantaleError> {
        let n = labels.len();
        if n == 0 {
            return Err(StructureError::EmptyCarrier.into());
        }
        let ix = Indexed {
            n,
            leq: (0..n * n).map(|k| leq(k / n, k % n)).collect(),
            tensor: (0..n * n).map(|k| tensor(k / n, k % n)).collect(),
            unit,
        };
        let report = check_indexed(&ix, &labels);
        if !report.is_ok() {
            return Err(QuantaleError::Laws(report));
        }
        Ok(Self::from_checked(ix, labels, origin))
    }

    fn from_checked(ix: Indexed, labels: Vec<String>, origin: Option<Builtin>) -> Quantale {
        let n = ix.n;
        let e = Elem::new;
        let join = (0..n * n).map(|k| e(ix.lub(&[k / n, k % n]).unwrap())).collect();
        let meet = (0..n * n).map(|k| e(ix.glb(&[k / n, k % n]).unwrap())).collect();
        let down = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&a| ix.leq(a, b))
                    .fold(0u64, |m, a| if a < 64 { m | (1 << a) } else { m })
            })
            .collect();
        let by_label = labels.iter().enumerate().map(|(i, s)| (s.clone(), e(i))).collect();
        Quantale {
            bottom: e(ix.lub(&[]).unwrap()),
            top: e(ix.glb(&[]).unwrap()),
            unit: e(ix.unit),
            tensor: ix.tensor.iter().map(|&t| e(t)).collect(),
            leq: ix.leq,
            join,
            meet,
            down,
            labels,
            by_label,
            origin,
            totally_below: OnceLock::new(),
        }
    }

    pub fn builtin(spec: &Builtin) -> Result<Arc<Quantale>, BuiltinError> {
        builtin::build(spec).map(Arc::new)
    }

    /// Exports explicit tables, listing the full order relation.
    pub fn to_tables(&self) -> QuantaleTables {
        let mut leq = Vec::new();
        let mut tensor = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) {
                    leq.push((self.label(a).to_string(), self.label(b).to_string()));
                }
                tensor.push((
                    self.label(a).to_string(),
                    self.label(b).to_string(),
                    self.label(self.tensor(a, b)).to_string(),
                ));
            }
        }
        QuantaleTables {
            elements: self.labels.clone(),
            leq,
            tensor,
            unit: self.label(self.unit).to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem::new)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.by_label.get(label).copied()
    }

    /// The built-in descriptor this quantale was constructed from, if any.
    pub fn origin(&self) -> Option<&Builtin> {
        self.origin.as_ref()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.len() + b.index()]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.len() + b.index()]
    }

    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[a.index() * self.len() + b.index()]
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn is_integral(&self) -> bool {
        self.unit == self.top
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.tensor(a, b) == self.tensor(b, a)))
    }

    /// Elements above `v`.
    pub fn up_set(&self, v: Elem) -> Vec<Elem> {
        self.elements().filter(|&w| self.leq(v, w)).collect()
    }

    fn totally_below_table(&self) -> &[bool] {
        self.totally_below.get_or_init(|| {
            if self.len() <= TOTALLY_BELOW_SUBSET_LIMIT {
                self.totally_below_by_subsets()
            } else {
                self.totally_below_by_complement()
            }
        })
    }

    /// `u ≪ v` straight from the definition: for every subset `D` with
    /// `v ≤ ⋁D`, some `d ∈ D` lies above `u`.
    pub(crate) fn totally_below_by_subsets(&self) -> Vec<bool> {
        let n = self.len();
        assert!(n <= 20, "all-subsets evaluation of ≪ needs a small carrier");
        let mut table = vec![true; n * n];
        for d in 0u64..(1u64 << n) {
            let mut join = self.bottom;
            let mut covered = 0u64;
            for i in 0..n {
                if d >> i & 1 == 1 {
                    join = self.join(join, Elem::new(i));
                    covered |= self.down[i];
                }
            }
            for v in self.elements() {
                if self.leq(v, join) {
                    for u in 0..n {
                        if covered >> u & 1 == 0 {
                            table[u * n + v.index()] = false;
                        }
                    }
                }
            }
        }
        table
    }

    /// `u ≪ v` via the largest candidate counterexample: every `D` that
    /// refutes `u ≪ v` is contained in `{d | u ≰ d}`, so `u ≪ v` holds iff
    /// `v` is not below the join of that set.
    pub(crate) fn totally_below_by_complement(&self) -> Vec<bool> {
        let n = self.len();
        let mut table = vec![false; n * n];
        for u in self.elements() {
            let escape = self.join_all(self.elements().filter(|&d| !self.leq(u, d)));
            for v in self.elements() {
                table[u.index() * n + v.index()] = !self.leq(v, escape);
            }
        }
        table
    }

    pub fn totally_below(&self, u: Elem, v: Elem) -> bool {
        self.totally_below_table()[u.index() * self.len() + v.index()]
    }

    /// Elements totally below `v`.
    pub fn way_below_set(&self, v: Elem) -> Vec<Elem> {
        self.elements().filter(|&u| self.totally_below(u, v)).collect()
    }

    /// Whether every element is the join of the elements totally below it.
    pub fn is_ccd(&self) -> bool {
        self.elements().all(|v| self.join_all(self.way_below_set(v)) == v)
    }

    /// Coprime elements: `p > ⊥` with `p ≤ u ∨ w ⇒ p ≤ u or p ≤ w`.
    /// The bottom element is never counted as coprime.
    pub fn coprimes(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&p| p != self.bottom)
            .filter(|&p| {
                self.elements().all(|u| {
                    self.elements()
                        .all(|w| !self.leq(p, self.join(u, w)) || self.leq(p, u) || self.leq(p, w))
                })
            })
            .collect()
    }

    pub fn is_coprime(&self, p: Elem) -> bool {
        self.coprimes().contains(&p)
    }

    /// Elements that are not the join of the coprimes below them.
    pub fn coprime_decomposition_failures(&self) -> Vec<Elem> {
        let coprimes = self.coprimes();
        self.elements()
            .filter(|&v| self.join_all(coprimes.iter().copied().filter(|&p| self.leq(p, v))) != v)
            .collect()
    }

    pub fn has_coprime_decomposition(&self) -> bool {
        self.coprime_decomposition_failures().is_empty()
    }
}

/// M3 (⊥ below three incomparable atoms a, b, c below ⊤) with unit `a` and
/// every other product of non-bottom elements equal to ⊤. A small quantale
/// that is neither integral nor constructively completely distributive.
pub fn diamond() -> Arc<Quantale> {
    let labels = ["bot", "a", "b", "c", "top"];
    let leq = |x: usize, y: usize| x == y || x == 0 || y == 4;
    let tensor = |x: usize, y: usize| match (x, y) {
        (0, _) | (_, 0) => 0,
        (1, y) => y,
        (x, 1) => x,
        _ => 4,
    };
    Arc::new(Quantale::from_fns(labels.iter().map(|s| s.to_string()).collect(), leq, tensor, 1, None).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_tables(labels: &[&str], tensor: impl Fn(usize, usize) -> usize, unit: usize) -> QuantaleTables {
        let n = labels.len();
        let mut leq = Vec::new();
        let mut t = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a <= b {
                    leq.push((labels[a].to_string(), labels[b].to_string()));
                }
                t.push((labels[a].to_string(), labels[b].to_string(), labels[tensor(a, b)].to_string()));
            }
        }
        QuantaleTables {
            elements: labels.iter().map(|s| s.to_string()).collect(),
            leq,
            tensor: t,
            unit: labels[unit].to_string(),
        }
    }

    #[test]
    fn two_chain_frame_passes() {
        let t = chain_tables(&["bot", "top"], |a, b| a.min(b), 1);
        assert!(check_quantale(&t).unwrap().is_ok());
    }

    #[test]
    fn cost_chain_with_truncated_addition_passes() {
        // index i stands for numeric value 3 - i for i < 4 ... listed in quantale order:
        // ∞ (bottom), 3, 2, 1, 0 (top); tensor is truncated addition.
        let labels = ["inf", "3", "2", "1", "0"];
        let num = |i: usize| if i == 0 { None } else { Some(4 - i as u32) };
        let idx = |v: Option<u32>| match v {
            None => 0,
            Some(x) if x > 3 => 0,
            Some(x) => 4 - x as usize,
        };
        let t = chain_tables(&labels, |a, b| idx(num(a).zip(num(b)).map(|(x, y)| x + y)), 4);
        assert!(check_quantale(&t).unwrap().is_ok());
    }

    #[test]
    fn corrupted_three_chain_reports_witness() {
        let mut t = chain_tables(&["bot", "m", "top"], |a, b| a.min(b), 2);
        for entry in t.tensor.iter_mut() {
            if entry.0 == "m" && entry.1 == "m" {
                entry.2 = "top".into();
            }
        }
        let report = check_quantale(&t).unwrap();
        assert!(report.violated("tensor-monotone-left") || report.violated("tensor-joins-left"));
        let v = report.first("tensor-joins-right").unwrap();
        assert_eq!(v.witness.len(), 3);
    }

    #[test]
    fn structural_errors_are_distinct() {
        let mut t = chain_tables(&["bot", "top"], |a, b| a.min(b), 1);
        t.tensor.pop();
        assert!(matches!(check_quantale(&t), Err(StructureError::MissingTensor(_, _))));
        let mut t = chain_tables(&["bot", "top"], |a, b| a.min(b), 1);
        t.unit = "nope".into();
        assert!(matches!(check_quantale(&t), Err(StructureError::UnknownElement(_, "unit"))));
        let mut t = chain_tables(&["bot", "top"], |a, b| a.min(b), 1);
        t.tensor.push(("bot".into(), "bot".into(), "top".into()));
        assert!(matches!(check_quantale(&t), Err(StructureError::ConflictingTensor(_, _))));
    }

    #[test]
    fn non_lattice_order_is_reported() {
        // two incomparable elements with no bottom
        let t = QuantaleTables {
            elements: vec!["a".into(), "b".into()],
            leq: vec![("a".into(), "a".into()), ("b".into(), "b".into())],
            tensor: vec![
                ("a".into(), "a".into(), "a".into()),
                ("a".into(), "b".into(), "a".into()),
                ("b".into(), "a".into(), "a".into()),
                ("b".into(), "b".into(), "b".into()),
            ],
            unit: "b".into(),
        };
        let report = check_quantale(&t).unwrap();
        assert!(report.violated("lattice-bottom"));
        assert!(report.violated("lattice-join"));
    }

    fn three_chain() -> Quantale {
        Quantale::from_tables(&chain_tables(&["bot", "m", "top"], |a, b| a.min(b), 2)).unwrap()
    }

    #[test]
    fn totally_below_on_three_chain() {
        let q = three_chain();
        let [bot, m, top] = [0, 1, 2].map(Elem::new);
        assert!(!q.totally_below(bot, bot));
        assert!(q.totally_below(m, top));
        assert!(q.totally_below(bot, m));
        assert!(q.totally_below(top, top));
    }

    #[test]
    fn both_routes_for_totally_below_agree() {
        let q = three_chain();
        assert_eq!(q.totally_below_by_subsets(), q.totally_below_by_complement());
    }

    #[test]
    fn coprimes_of_three_chain() {
        let q = three_chain();
        assert_eq!(q.coprimes(), vec![Elem::new(1), Elem::new(2)]);
        assert!(q.has_coprime_decomposition());
        assert!(q.is_ccd());
    }

    #[test]
    fn diamond_with_meet_is_not_a_quantale() {
        let labels = ["bot", "a", "b", "c", "top"];
        let leq = |x: usize, y: usize| x == y || x == 0 || y == 4;
        let meet = |x: usize, y: usize| if leq(x, y) { x } else if leq(y, x) { y } else { 0 };
        let err = Quantale::from_fns(labels.iter().map(|s| s.to_string()).collect(), leq, meet, 4, None);
        assert!(matches!(err, Err(QuantaleError::Laws(r)) if r.violated("tensor-joins-left")));
    }

    #[test]
    fn diamond_is_not_ccd() {
        let q = diamond();
        let q = &*q;
        assert!(!q.is_integral());
        assert!(!q.is_ccd());
        let below_top = q.way_below_set(q.top());
        assert_eq!(q.join_all(below_top), q.bottom());
        assert!(q.coprimes().is_empty());
        assert!(!q.has_coprime_decomposition());
        assert_eq!(q.totally_below_by_subsets(), q.totally_below_by_complement());
    }
}
