//! (T,V)-graphs, change of base along monotone maps between quantales, and
//! the reflector onto lax algebras.
//!
//! Three monads are covered: the powerset monad (V-closure spaces), the
//! ultrafilter monad (convergence structures) and the identity monad
//! (V-categories, stored as point-point tables).

mod standard;
mod theorem;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convergence::{self, beta_hull, ConvergenceStructure};
use crate::lattice::{Elem, MonotoneMap, Quantale, QuantaleHomClass};
use crate::report::{LawReport, Verdict, Violation};
use crate::spaces::{self, category_hull, closure_hull, DistanceStructure};
use crate::vrel::{FiniteSet, FnSpace, LaxLaw, TElem, VRelation, Beta};

pub use standard::{builtin_map, right_adjoints_of_homs, standard_maps, verify_standard_maps, MapFamily, NamedMap, MAP_NAMES};
pub use theorem::{verify_adjunction_theorem, verify_embedding_corollaries, AdjunctionTheoremReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseChangeError {
    #[error("quantale mismatch: {0}")]
    Mismatch(String),
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error(transparent)]
    Spaces(#[from] spaces::SpacesError),
    #[error(transparent)]
    Convergence(#[from] convergence::ConvergenceError),
    #[error(transparent)]
    Builtin(#[from] crate::lattice::BuiltinError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// `c: PX → V^X`, indexed by subset bitmask and point.
    Powerset,
    /// `ℓ: UX → V^X`, indexed by generator and point.
    Ultrafilter,
    /// `a: X × X → V`.
    Category,
}

/// A (T,V)-graph: a structure table with no axioms required.
#[derive(Clone, Debug)]
pub struct Graph {
    kind: GraphKind,
    carrier: FiniteSet,
    quantale: Arc<Quantale>,
    table: Vec<Elem>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.carrier == other.carrier
            && *self.quantale == *other.quantale
            && self.table == other.table
    }
}

fn table_len(kind: GraphKind, n: usize) -> usize {
    match kind {
        GraphKind::Powerset => (1 << n) * n,
        GraphKind::Ultrafilter | GraphKind::Category => n * n,
    }
}

pub const LAW_CAT_R: &str = "(R) reflexivity";
pub const LAW_CAT_T: &str = "(T) transitivity";

impl Graph {
    pub fn new(kind: GraphKind, carrier: FiniteSet, quantale: Arc<Quantale>, table: Vec<Elem>) -> Result<Self, BaseChangeError> {
        if kind == GraphKind::Powerset && carrier.len() > spaces::MAX_POINTS {
            return Err(spaces::SpacesError::TooLarge(carrier.len()).into());
        }
        let expected = table_len(kind, carrier.len());
        if table.len() != expected {
            return Err(BaseChangeError::TableSize { expected, found: table.len() });
        }
        Ok(Graph { kind, carrier, quantale, table })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn carrier(&self) -> &FiniteSet {
        &self.carrier
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.carrier.len()
    }

    pub fn leq(&self, other: &Graph) -> bool {
        self.kind == other.kind && self.table.iter().zip(&other.table).all(|(&a, &b)| self.quantale.leq(a, b))
    }

    pub fn to_distance(&self) -> Option<DistanceStructure> {
        (self.kind == GraphKind::Powerset)
            .then(|| DistanceStructure::new(self.carrier.clone(), self.quantale.clone(), self.table.clone()).unwrap())
    }

    pub fn to_convergence(&self) -> Option<ConvergenceStructure> {
        (self.kind == GraphKind::Ultrafilter)
            .then(|| ConvergenceStructure::new(self.carrier.clone(), self.quantale.clone(), self.table.clone()).unwrap())
    }

    pub fn to_matrix(&self) -> Option<VRelation> {
        (self.kind != GraphKind::Powerset).then(|| VRelation::new(self.n(), self.n(), self.table.clone()).unwrap())
    }

    pub fn category(carrier: FiniteSet, quantale: Arc<Quantale>, a: &VRelation) -> Result<Self, BaseChangeError> {
        Graph::new(GraphKind::Category, carrier, quantale, a.entries().to_vec())
    }

    /// The axioms of the kind: (R'),(T') for closure spaces, (R''),(T'') for
    /// convergence structures, (R),(T) for V-categories.
    pub fn check_axioms(&self) -> LawReport {
        match self.kind {
            GraphKind::Powerset => spaces::check_closure(&self.to_distance().unwrap()),
            GraphKind::Ultrafilter => convergence::check_beta_algebra(&self.to_convergence().unwrap()),
            GraphKind::Category => check_category(&self.quantale, &self.carrier, &self.to_matrix().unwrap()),
        }
    }

    /// (M) for the kind: `f` is a morphism `self → other`.
    pub fn is_morphism(&self, f: &[usize], other: &Graph) -> Result<Verdict, BaseChangeError> {
        if self.kind != other.kind {
            return Err(BaseChangeError::Mismatch("graphs of different kinds".into()));
        }
        match self.kind {
            GraphKind::Powerset => {
                Ok(spaces::check_contractive(f, &self.to_distance().unwrap(), &other.to_distance().unwrap())?)
            }
            GraphKind::Ultrafilter => Ok(convergence::check_convergence_morphism(
                f,
                &self.to_convergence().unwrap(),
                &other.to_convergence().unwrap(),
            )?),
            GraphKind::Category => {
                if f.len() != self.n() || f.iter().any(|&y| y >= other.n()) {
                    return Err(BaseChangeError::Mismatch("map does not go between the carriers".into()));
                }
                if *self.quantale != *other.quantale {
                    return Err(BaseChangeError::Mismatch("graphs over different quantales".into()));
                }
                let q = &*self.quantale;
                let (n, m) = (self.n(), other.n());
                for x in 0..n {
                    for y in 0..n {
                        let (l, r) = (self.table[x * n + y], other.table[f[x] * m + f[y]]);
                        if !q.leq(l, r) {
                            return Ok(Verdict::Fails(
                                Violation::new("(M) V-functor")
                                    .with("x", self.carrier.label(x))
                                    .with("y", self.carrier.label(y))
                                    .with("lhs", q.label(l))
                                    .with("rhs", q.label(r)),
                            ));
                        }
                    }
                }
                Ok(Verdict::Holds)
            }
        }
    }
}

impl From<DistanceStructure> for Graph {
    fn from(s: DistanceStructure) -> Self {
        Graph { kind: GraphKind::Powerset, carrier: s.carrier().clone(), quantale: s.quantale().clone(), table: s.table().to_vec() }
    }
}

impl From<ConvergenceStructure> for Graph {
    fn from(s: ConvergenceStructure) -> Self {
        Graph { kind: GraphKind::Ultrafilter, carrier: s.carrier().clone(), quantale: s.quantale().clone(), table: s.table().to_vec() }
    }
}

fn check_category(q: &Quantale, carrier: &FiniteSet, a: &VRelation) -> LawReport {
    let n = a.rows();
    let mut r = LawReport::new();
    let refl = (0..n).find(|&x| !q.leq(q.unit(), a.at(x, x))).map(|x| {
        Violation::new(LAW_CAT_R).with("x", carrier.label(x)).with("a(x,x)", q.label(a.at(x, x)))
    });
    r.record(LAW_CAT_R, refl);
    let mut trans = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !q.leq(q.tensor(a.at(x, y), a.at(y, z)), a.at(x, z)) {
                    trans = Some(
                        Violation::new(LAW_CAT_T)
                            .with("x", carrier.label(x))
                            .with("y", carrier.label(y))
                            .with("z", carrier.label(z)),
                    );
                    break 'outer;
                }
            }
        }
    }
    r.record(LAW_CAT_T, trans);
    r
}

/// A monotone map together with its classification and adjoints.
#[derive(Clone, Debug)]
pub struct BaseChangeMap {
    map: MonotoneMap,
    class: QuantaleHomClass,
    left: Option<MonotoneMap>,
    right: Option<MonotoneMap>,
}

impl BaseChangeMap {
    pub fn new(map: MonotoneMap) -> Self {
        let class = map.classify();
        let adj = map.adjoints();
        BaseChangeMap { map, class, left: adj.left, right: adj.right }
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    pub fn class(&self) -> QuantaleHomClass {
        self.class
    }

    pub fn left_adjoint(&self) -> Option<&MonotoneMap> {
        self.left.as_ref()
    }

    pub fn right_adjoint(&self) -> Option<&MonotoneMap> {
        self.right.as_ref()
    }
}

/// `B_φ(X, c) = (X, φ^X · c)`.
pub fn b_phi(g: &Graph, phi: &MonotoneMap) -> Result<Graph, BaseChangeError> {
    if *g.quantale != **phi.source() {
        return Err(BaseChangeError::Mismatch("graph quantale is not the source of the map".into()));
    }
    Ok(Graph {
        kind: g.kind,
        carrier: g.carrier.clone(),
        quantale: phi.target().clone(),
        table: g.table.iter().map(|&v| phi.apply(v)).collect(),
    })
}

/// The least lax algebra of the same kind above `g`.
pub fn reflect(g: &Graph) -> Graph {
    match g.kind {
        GraphKind::Powerset => closure_hull(&g.to_distance().unwrap()).into(),
        GraphKind::Ultrafilter => beta_hull(&g.to_convergence().unwrap()).into(),
        GraphKind::Category => {
            let a = category_hull(&g.quantale, &g.to_matrix().unwrap());
            Graph::category(g.carrier.clone(), g.quantale.clone(), &a).unwrap()
        }
    }
}

/// `B̄_φ(X, c) = (X, reflect(φ^X · c))`.
pub fn b_bar_phi(g: &Graph, phi: &MonotoneMap) -> Result<Graph, BaseChangeError> {
    Ok(reflect(&b_phi(g, phi)?))
}

/// `φ^{UX} · β_X = β_X · U(φ^X)` on principal ultrafilters over `n`
/// points, both sides evaluated with the literal member formula.
pub fn check_beta_compatibility(phi: &MonotoneMap, n: usize) -> Result<Verdict, BaseChangeError> {
    let (v, w) = (&**phi.source(), &**phi.target());
    let err = |e: crate::vrel::VrelError| BaseChangeError::Mismatch(e.to_string());
    let fv = FnSpace::of(v, n).map_err(err)?;
    let fw = FnSpace::of(w, n).map_err(err)?;
    for sigma in 0..fv.len() {
        let image = fw.encode_fn(|x| phi.apply(fv.eval(sigma, x)));
        for x in 0..n {
            let t = TElem::principal(x, n);
            let lhs = phi.apply(Beta.apply(v, &TElem::principal(sigma, fv.len()), &t, &|s, p| fv.eval(s, p)).map_err(err)?);
            let rhs = Beta.apply(w, &TElem::principal(image, fw.len()), &t, &|s, p| fw.eval(s, p)).map_err(err)?;
            if lhs != rhs {
                return Ok(Verdict::Fails(
                    Violation::new("β-compatibility")
                        .with("σ", fv.render(v, sigma))
                        .with("x", x.to_string())
                        .with("lhs", w.label(lhs))
                        .with("rhs", w.label(rhs)),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}
