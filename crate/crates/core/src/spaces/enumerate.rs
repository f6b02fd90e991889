//! Enumeration and seeded sampling of closure and approach structures.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{category_hull, closure_hull, is_approach, is_closure, DistanceStructure, SpacesError};
use crate::budget::Budget;
use crate::lattice::{Elem, Quantale};
use crate::vrel::{FiniteSet, VRelation};

/// Default cap on the number of candidates examined by [`structures`].
pub const CANDIDATE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureFilter {
    /// V-closure structures.
    Closure,
    /// V-closure structures that preserve finite joins.
    Approach,
}

impl std::str::FromStr for StructureFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closure" => Ok(StructureFilter::Closure),
            "approach" => Ok(StructureFilter::Approach),
            _ => Err(format!("unknown structure kind `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub structures: Vec<DistanceStructure>,
    /// Candidates examined (exhaustive) or samples drawn.
    pub candidates: u64,
    pub exhaustive: bool,
}

/// Every structure of the given kind on `n` points.
///
/// Closure structures are monotone in `A` and satisfy `k ≤ (cA)(x)` for
/// `x ∈ A`, so candidates are generated by backtracking over tables with
/// those two properties and each one is checked in full. Approach
/// structures on a finite set are determined by their values on
/// singletons; candidates are the `|V|^(n²)` point matrices.
pub fn enumerate_structures(
    n: usize,
    q: &Arc<Quantale>,
    filter: StructureFilter,
    limit: u64,
) -> Result<Enumeration, SpacesError> {
    if n > super::MAX_POINTS {
        return Err(SpacesError::TooLarge(n));
    }
    match filter {
        StructureFilter::Approach => enumerate_approach(n, q, limit),
        StructureFilter::Closure => {
            let mut search = ClosureSearch {
                n,
                q,
                carrier: FiniteSet::points(n),
                table: vec![q.bottom(); (1 << n) * n],
                found: Vec::new(),
                candidates: 0,
                limit,
            };
            search.descend(0)?;
            Ok(Enumeration { structures: search.found, candidates: search.candidates, exhaustive: true })
        }
    }
}

fn enumerate_approach(n: usize, q: &Arc<Quantale>, limit: u64) -> Result<Enumeration, SpacesError> {
    let total = (q.len() as u64).checked_pow((n * n) as u32).filter(|&t| t <= limit);
    let total = total.ok_or(SpacesError::BoundExceeded(limit))?;
    let carrier = FiniteSet::points(n);
    let mut found = Vec::new();
    let mut digits = vec![0usize; n * n];
    for _ in 0..total {
        let m = VRelation::new(n, n, digits.iter().map(|&d| Elem::new(d)).collect()).unwrap();
        let s = DistanceStructure::from_point_matrix(carrier.clone(), q.clone(), &m)?;
        if is_closure(&s) && is_approach(&s).holds() {
            found.push(s);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(Enumeration { structures: found, candidates: total, exhaustive: true })
}

struct ClosureSearch<'a> {
    n: usize,
    q: &'a Arc<Quantale>,
    carrier: FiniteSet,
    table: Vec<Elem>,
    found: Vec<DistanceStructure>,
    candidates: u64,
    limit: u64,
}

impl ClosureSearch<'_> {
    fn descend(&mut self, cell: usize) -> Result<(), SpacesError> {
        let n = self.n;
        if cell == self.table.len() {
            self.candidates += 1;
            if self.candidates > self.limit {
                return Err(SpacesError::BoundExceeded(self.limit));
            }
            let s = DistanceStructure::new(
                self.carrier.clone(),
                self.q.clone(),
                self.table.clone(),
            )?;
            if is_closure(&s) {
                self.found.push(s);
            }
            return Ok(());
        }
        let (a, x) = (cell / n, cell % n);
        let q = self.q;
        let mut lower = if a >> x & 1 == 1 { q.unit() } else { q.bottom() };
        for y in (0..n).filter(|y| a >> y & 1 == 1) {
            lower = q.join(lower, self.table[(a & !(1 << y)) * n + x]);
        }
        for v in q.elements().filter(|&v| q.leq(lower, v)) {
            self.table[cell] = v;
            self.descend(cell + 1)?;
        }
        Ok(())
    }
}

/// `count` seeded structures: hulls of random tables (closure) or of
/// random point matrices (approach). Duplicates are kept.
pub fn sample_structures(
    n: usize,
    q: &Arc<Quantale>,
    filter: StructureFilter,
    count: usize,
    budget: &Budget,
) -> Result<Enumeration, SpacesError> {
    if n > super::MAX_POINTS {
        return Err(SpacesError::TooLarge(n));
    }
    let mut rng = budget.rng("spaces.sample");
    let carrier = FiniteSet::points(n);
    let mut structures = Vec::with_capacity(count);
    for _ in 0..count {
        let s = match filter {
            StructureFilter::Closure => {
                let table = (0..(1 << n) * n).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect();
                closure_hull(&DistanceStructure::new(carrier.clone(), q.clone(), table)?)
            }
            StructureFilter::Approach => {
                let entries = (0..n * n).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect();
                let m = VRelation::new(n, n, entries).unwrap();
                DistanceStructure::from_point_matrix(carrier.clone(), q.clone(), &category_hull(q, &m))?
            }
        };
        structures.push(s);
    }
    Ok(Enumeration { structures, candidates: count as u64, exhaustive: false })
}

/// Exhaustive enumeration when `n ≤ budget.max_exhaustive_size` and the
/// candidate space stays under [`CANDIDATE_LIMIT`]; otherwise
/// `budget.samples` seeded samples.
pub fn structures(
    n: usize,
    q: &Arc<Quantale>,
    filter: StructureFilter,
    budget: &Budget,
) -> Result<Enumeration, SpacesError> {
    if n <= budget.max_exhaustive_size {
        match enumerate_structures(n, q, filter, CANDIDATE_LIMIT) {
            Err(SpacesError::BoundExceeded(_)) => {}
            other => return other,
        }
    }
    sample_structures(n, q, filter, budget.samples, budget)
}
