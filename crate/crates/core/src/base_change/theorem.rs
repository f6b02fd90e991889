//! Desk-scale checks of the equivalence between adjointness of maps of
//! quantales and adjointness of the induced change-of-base functors, and of
//! the embedding corollaries.

use std::sync::Arc;

use serde::Serialize;

use super::{b_bar_phi, b_phi, builtin_map, BaseChangeError, Graph, GraphKind};
use crate::budget::Budget;
use crate::convergence::beta_algebras;
use crate::lattice::{Builtin, MonotoneMap, Quantale};
use crate::report::{LawReport, Violation};
use crate::spaces::{check_probapp, is_approach, structures, StructureFilter};
use crate::vrel::{FiniteSet, VRelation};

pub const LAW_EQUIVALENCE: &str = "(i) ⇔ (ii) ⇔ (iii)";

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionTheoremReport {
    /// Witness against (i) `φ ⊣ ψ`, if any.
    pub adjoint: Option<Violation>,
    /// Witness against (ii), the hom-set bijection on (β,·)-algebras.
    pub beta_algebras: Option<Violation>,
    /// Witness against (iii), the hom-set bijection on categories.
    pub categories: Option<Violation>,
    pub report: LawReport,
}

impl AdjunctionTheoremReport {
    pub fn statements(&self) -> [bool; 3] {
        [self.adjoint.is_none(), self.beta_algebras.is_none(), self.categories.is_none()]
    }

    pub fn equivalent(&self) -> bool {
        !self.report.violated(LAW_EQUIVALENCE)
    }
}

fn maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32)).map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect()).collect()
}

/// Two-point structures with `k` on the diagonal and `v` off it.
fn probes(q: &Arc<Quantale>, kind: GraphKind) -> Vec<Graph> {
    q.elements()
        .map(|v| {
            let a = VRelation::from_fn(2, 2, |x, y| if x == y { q.unit() } else { v });
            Graph::new(kind, FiniteSet::points(2), q.clone(), a.entries().to_vec()).unwrap()
        })
        .filter(|g| g.check_axioms().is_ok())
        .collect()
}

fn instances(q: &Arc<Quantale>, kind: GraphKind, budget: &Budget) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for n in 1..=budget.max_exhaustive_size.clamp(1, 2) {
        let (algs, _) = beta_algebras(n, q, budget);
        for a in algs {
            out.push(Graph::new(kind, a.carrier().clone(), q.clone(), a.table().to_vec()).unwrap());
        }
    }
    for p in probes(q, kind) {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// First `(t, u, f)` at which `f: B̄_φ t → u` and `f: t → B_ψ u` disagree.
fn hom_set_witness(
    phi: &MonotoneMap,
    psi: &MonotoneMap,
    left: &[Graph],
    right: &[Graph],
    count: &mut u64,
) -> Result<Option<Violation>, BaseChangeError> {
    let w = &**phi.target();
    for t in left {
        let bt = b_bar_phi(t, phi)?;
        for u in right {
            let pu = b_phi(u, psi)?;
            for f in maps(t.n(), u.n()) {
                *count += 1;
                let a = bt.is_morphism(&f, u)?.holds();
                let b = t.is_morphism(&f, &pu)?.holds();
                if a != b {
                    let render = |g: &Graph, q: &Quantale| {
                        g.table().iter().map(|&e| q.label(e).to_string()).collect::<Vec<_>>().join(" ")
                    };
                    return Ok(Some(
                        Violation::new("hom-set bijection")
                            .with("source", format!("[{}]", render(t, phi.source())))
                            .with("target", format!("[{}]", render(u, w)))
                            .with("f", format!("{f:?}"))
                            .with("B̄_φ side", a.to_string())
                            .with("B_ψ side", b.to_string()),
                    ));
                }
            }
        }
    }
    Ok(None)
}

/// Checks (i) `φ ⊣ ψ`, (ii) `B̄_φ ⊣ B_ψ` on lax (β,·)-algebras and (iii) on
/// categories, the last two as hom-set bijections over all algebras on one
/// and two points (sampled where the budget requires) together with the
/// two-point probes, and reports whether the three agree.
pub fn verify_adjunction_theorem(
    phi: &MonotoneMap,
    psi: &MonotoneMap,
    budget: &Budget,
) -> Result<AdjunctionTheoremReport, BaseChangeError> {
    let (v, w) = (phi.source(), phi.target());
    if **psi.source() != **w || **psi.target() != **v {
        return Err(BaseChangeError::Mismatch("ψ must go back from the target of φ to its source".into()));
    }
    for (name, q) in [("V", v), ("W", w)] {
        if !q.is_ccd() || !q.is_integral() {
            return Err(BaseChangeError::Capability(format!("{name} must be ccd and integral")));
        }
    }
    if !psi.is_lax_hom() {
        return Err(BaseChangeError::Capability("ψ must be a lax homomorphism".into()));
    }
    let adjoint = phi.adjunction_witness(psi).map(|(a, b)| {
        Violation::new("φ ⊣ ψ").with("v", v.label(a)).with("w", w.label(b))
    });
    let mut count = 0;
    let beta = hom_set_witness(
        phi,
        psi,
        &instances(v, GraphKind::Ultrafilter, budget),
        &instances(w, GraphKind::Ultrafilter, budget),
        &mut count,
    )?;
    let cats = hom_set_witness(
        phi,
        psi,
        &instances(v, GraphKind::Category, budget),
        &instances(w, GraphKind::Category, budget),
        &mut count,
    )?;
    let mut report = LawReport::new();
    let s = [adjoint.is_none(), beta.is_none(), cats.is_none()];
    report.record(
        LAW_EQUIVALENCE,
        (s[0] != s[1] || s[1] != s[2]).then(|| {
            Violation::new(LAW_EQUIVALENCE)
                .with("(i)", s[0].to_string())
                .with("(ii)", s[1].to_string())
                .with("(iii)", s[2].to_string())
        }),
    );
    report.count("hom-set instances", count);
    Ok(AdjunctionTheoremReport { adjoint, beta_algebras: beta, categories: cats, report })
}

pub const LAW_IOTA_APPROACH: &str = "B_ι sends topologies to approach structures";
pub const LAW_PI_IOTA: &str = "B_π B_ι = id";
pub const LAW_O_IOTA: &str = "B̄_o B_ι = id";
pub const LAW_IOTA_FULL: &str = "B_ι is full";
pub const LAW_SIGMA_PROBAPP: &str = "B_σ sends approach structures to probabilistic ones";
pub const LAW_RHO_SIGMA: &str = "B_ρ B_σ = id";
pub const LAW_SIGMA_RHO: &str = "B_σ ⊣ B_ρ";
pub const LAW_LAMBDA_SIGMA: &str = "B̄_λ ⊣ B_σ";

/// The quantales over which topologies are embedded.
pub fn embedding_targets() -> Vec<Builtin> {
    vec![
        Builtin::ChainFrame { n: 3 },
        Builtin::CostChain { max: 2 },
        "delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap(),
    ]
}

/// Embedding of finite topologies into V-approach spaces (`B_ι`, with
/// coreflector `B_π` and reflector `B̄_o`) and of cost approach structures
/// into probabilistic ones (`B̄_λ ⊣ B_σ ⊣ B_ρ`), on carriers of at most
/// `budget.max_exhaustive_size` points.
pub fn verify_embedding_corollaries(budget: &Budget) -> Result<LawReport, BaseChangeError> {
    let mut r = LawReport::new();
    let two = Quantale::builtin(&Builtin::TwoChain)?;
    let mut topologies = Vec::new();
    for n in 0..=budget.max_exhaustive_size {
        topologies.extend(structures(n, &two, StructureFilter::Approach, budget)?.structures);
    }
    r.count("topologies", topologies.len() as u64);
    let first = |law: &str, v: &mut Option<Violation>, make: &dyn Fn() -> Violation| {
        if v.is_none() {
            *v = Some(make().with("law", law));
        }
    };
    for anchor in embedding_targets() {
        let iota = builtin_map("iota", &anchor)?;
        let pi = builtin_map("pi", &anchor)?;
        let o = builtin_map("o", &anchor)?;
        let (mut app, mut pi_iota, mut o_iota, mut full) = (None, None, None, None);
        for s in &topologies {
            let g: Graph = s.clone().into();
            let img = b_phi(&g, &iota)?;
            let label = || Violation::new("instance").with("V", anchor.to_string()).with("n", s.n().to_string());
            let d = img.to_distance().unwrap();
            if !(img.check_axioms().is_ok() && is_approach(&d).holds()) {
                first(LAW_IOTA_APPROACH, &mut app, &label);
            }
            if b_phi(&img, &pi)? != g {
                first(LAW_PI_IOTA, &mut pi_iota, &label);
            }
            if b_bar_phi(&img, &o)? != g {
                first(LAW_O_IOTA, &mut o_iota, &label);
            }
        }
        for s in topologies.iter().filter(|s| s.n() <= 2) {
            for t in topologies.iter().filter(|t| t.n() <= 2) {
                let (gs, gt): (Graph, Graph) = (s.clone().into(), t.clone().into());
                let (is, it) = (b_phi(&gs, &iota)?, b_phi(&gt, &iota)?);
                for f in maps(s.n(), t.n()) {
                    if gs.is_morphism(&f, &gt)?.holds() != is.is_morphism(&f, &it)?.holds() {
                        first(LAW_IOTA_FULL, &mut full, &|| {
                            Violation::new("instance").with("V", anchor.to_string()).with("f", format!("{f:?}"))
                        });
                    }
                }
            }
        }
        r.record(&format!("{LAW_IOTA_APPROACH} over {anchor}"), app);
        r.record(&format!("{LAW_PI_IOTA} over {anchor}"), pi_iota);
        r.record(&format!("{LAW_O_IOTA} over {anchor}"), o_iota);
        r.record(&format!("{LAW_IOTA_FULL} over {anchor}"), full);
    }

    let delta: Builtin = "delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap();
    let sigma = builtin_map("sigma", &delta)?;
    let rho = builtin_map("rho", &delta)?;
    let lambda = builtin_map("lambda", &delta)?;
    let (t, d) = (sigma.source().clone(), sigma.target().clone());
    let small = Budget::new(budget.max_exhaustive_size.min(2), budget.samples, budget.seed);
    let mut costs = Vec::new();
    let mut probs = Vec::new();
    for n in 0..=small.max_exhaustive_size {
        costs.extend(structures(n, &t, StructureFilter::Approach, &small)?.structures);
        probs.extend(structures(n, &d, StructureFilter::Approach, &small)?.structures);
    }
    r.count("cost approach structures", costs.len() as u64);
    r.count("probabilistic approach structures", probs.len() as u64);
    let (mut prob, mut round, mut right, mut left) = (None, None, None, None);
    let mut instances = 0u64;
    for c in &costs {
        let g: Graph = c.clone().into();
        let img = b_phi(&g, &sigma)?;
        let label = || Violation::new("instance").with("n", c.n().to_string());
        if !check_probapp(&img.to_distance().unwrap())?.is_ok() {
            first(LAW_SIGMA_PROBAPP, &mut prob, &label);
        }
        if b_phi(&img, &rho)? != g {
            first(LAW_RHO_SIGMA, &mut round, &label);
        }
        for p in &probs {
            let gp: Graph = p.clone().into();
            let rho_p = b_phi(&gp, &rho)?;
            let lam_p = b_bar_phi(&gp, &lambda)?;
            for f in maps(c.n(), p.n()) {
                instances += 1;
                if img.is_morphism(&f, &gp)?.holds() != g.is_morphism(&f, &rho_p)?.holds() {
                    first(LAW_SIGMA_RHO, &mut right, &|| Violation::new("instance").with("f", format!("{f:?}")));
                }
            }
            for f in maps(p.n(), c.n()) {
                instances += 1;
                if lam_p.is_morphism(&f, &g)?.holds() != gp.is_morphism(&f, &img)?.holds() {
                    first(LAW_LAMBDA_SIGMA, &mut left, &|| Violation::new("instance").with("f", format!("{f:?}")));
                }
            }
        }
    }
    r.record(LAW_SIGMA_PROBAPP, prob);
    r.record(LAW_RHO_SIGMA, round);
    r.record(LAW_SIGMA_RHO, right);
    r.record(LAW_LAMBDA_SIGMA, left);
    r.count("σ/ρ/λ hom-set instances", instances);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Elem;

    #[test]
    fn iota_pi_over_three_chain() {
        let anchor = Builtin::ChainFrame { n: 3 };
        let iota = builtin_map("iota", &anchor).unwrap();
        let pi = builtin_map("pi", &anchor).unwrap();
        let r = verify_adjunction_theorem(&iota, &pi, &Budget::new(2, 50, 0)).unwrap();
        assert_eq!(r.statements(), [true, true, true]);
        assert!(r.equivalent());
    }

    #[test]
    fn sigma_rho_on_the_grid() {
        let delta: Builtin = "delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap();
        let sigma = builtin_map("sigma", &delta).unwrap();
        let rho = builtin_map("rho", &delta).unwrap();
        let r = verify_adjunction_theorem(&sigma, &rho, &Budget::new(2, 50, 0)).unwrap();
        assert_eq!(r.statements(), [true, true, true]);
    }

    #[test]
    fn identity_and_constant_top_fail_together() {
        let v = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let id = MonotoneMap::identity(v.clone());
        let top = MonotoneMap::constant(v.clone(), v.clone(), v.top());
        let r = verify_adjunction_theorem(&id, &top, &Budget::new(2, 50, 0)).unwrap();
        assert_eq!(r.statements(), [false, false, false]);
        assert!(r.categories.is_some());
        assert!(r.equivalent());
    }

    #[test]
    fn hypotheses_are_capability_errors() {
        let v = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let m3 = crate::lattice::diamond();
        let f = MonotoneMap::constant(v.clone(), m3.clone(), m3.bottom());
        let g = MonotoneMap::constant(m3, v, Elem::new(2));
        assert!(matches!(verify_adjunction_theorem(&f, &g, &Budget::default()), Err(BaseChangeError::Capability(_))));
    }

    #[test]
    fn embedding_corollaries_hold() {
        let r = verify_embedding_corollaries(&Budget::new(2, 50, 0)).unwrap();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.counts["topologies"], 1 + 1 + 4);
    }
}
