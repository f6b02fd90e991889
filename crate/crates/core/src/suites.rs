//! The verification suites run by `vspaces verify`.
//!
//! Each suite returns a [`LawReport`] whose law names say what was checked
//! and over which quantale. Reports depend only on the budget.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::base_change::{
    b_phi, builtin_map, reflect, verify_adjunction_theorem, verify_embedding_corollaries, verify_standard_maps, Graph,
    GraphKind, MapFamily,
};
use crate::budget::Budget;
use crate::convergence::{
    a_epsilon, beta_algebras, check_algebraic_morphism_epsilon, check_probapp_convergence, r_functor,
    verify_main_theorem,
};
use crate::lattice::{check_quantale, Builtin, Elem, MonotoneMap, Quantale};
use crate::report::{LawReport, Violation};
use crate::spaces::{
    check_closure, check_probapp, closure_hull, enumerate_structures, is_approach, sample_structures, DistanceStructure,
    StructureFilter, Tower, TowerMode, CANDIDATE_LIMIT,
};
use crate::vrel::{check_lax_law, Alpha, Beta, CorruptedAlpha, FiniteSet, LawBudget, LaxLaw, VRelation};

pub const SUITES: [&str; 9] = [
    "quantale-laws",
    "lax-laws",
    "tower-bijection",
    "approach-equivalence",
    "main-theorem",
    "topology-counts",
    "reflector",
    "base-change",
    "probapp",
];

/// Number of topologies on 0, 1, 2, 3 labelled points.
pub const TOPOLOGY_COUNTS: [u64; 4] = [1, 1, 4, 29];
/// Number of closure systems (Moore families) on 0, 1, 2, 3 labelled points.
pub const MOORE_COUNTS: [u64; 4] = [1, 2, 7, 61];

/// The small probabilistic grid: times `{0, 1, ∞}`, values `{0, 1/2, 1}`.
pub const SMALL_DELTA: &str = "delta_grid:0,1:0,1/2,1:lukasiewicz";

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of: {list})", list = SUITES.join(", "))]
    Unknown(String),
    #[error("{0}")]
    Setup(String),
}

fn setup(e: impl std::fmt::Display) -> SuiteError {
    SuiteError::Setup(e.to_string())
}

fn builtin(desc: &str) -> Result<Arc<Quantale>, SuiteError> {
    let b: Builtin = desc.parse().map_err(setup)?;
    Quantale::builtin(&b).map_err(setup)
}

pub fn run_suite(name: &str, budget: &Budget) -> Result<LawReport, SuiteError> {
    match name {
        "quantale-laws" => quantale_laws(),
        "lax-laws" => lax_laws(budget),
        "tower-bijection" => tower_bijection(budget),
        "approach-equivalence" => approach_equivalence(budget),
        "main-theorem" => main_theorem(budget),
        "topology-counts" => topology_counts(),
        "reflector" => reflector(budget),
        "base-change" => base_change(budget),
        "probapp" => probapp(budget),
        _ => Err(SuiteError::Unknown(name.to_string())),
    }
}

/// Adds `other` to `r` with every law and count name prefixed.
fn absorb(r: &mut LawReport, prefix: &str, other: LawReport) {
    for law in &other.checked {
        let first = other.first(law).cloned().map(|mut v| {
            v.law = format!("{prefix}: {}", v.law);
            v
        });
        r.record(&format!("{prefix}: {law}"), first);
    }
    for (k, n) in other.counts {
        r.count(&format!("{prefix}: {k}"), n);
    }
    for (k, v) in other.notes {
        r.note(&format!("{prefix}: {k}"), v);
    }
}

fn check(r: &mut LawReport, law: &str, ok: bool, witness: impl FnOnce() -> Violation) {
    r.record(law, (!ok).then(|| {
        let mut v = witness();
        v.law = law.to_string();
        v
    }));
}

fn render(q: &Quantale, table: &[Elem]) -> String {
    format!("[{}]", table.iter().map(|&e| q.label(e)).collect::<Vec<_>>().join(" "))
}

fn quantale_laws() -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    let listed = [
        "two_chain",
        "chain_frame:3",
        "cost_chain:3",
        "unit_grid:4:lukasiewicz",
        SMALL_DELTA,
        "downset:chain_frame:3",
    ];
    for desc in listed {
        let q = builtin(desc)?;
        let laws = check_quantale(&q.to_tables()).map_err(setup)?;
        r.count(&format!("{desc}: elements"), q.len() as u64);
        absorb(&mut r, desc, laws);
        check(&mut r, &format!("{desc}: ccd"), q.is_ccd(), || Violation::new(""));
        check(&mut r, &format!("{desc}: integral"), q.is_integral(), || {
            Violation::new("").with("unit", q.label(q.unit())).with("top", q.label(q.top()))
        });
    }
    for base in ["two_chain", "chain_frame:3", "cost_chain:2", "unit_grid:2:min"] {
        let (b, d) = (builtin(base)?, builtin(&format!("downset:{base}"))?);
        check(&mut r, &format!("downset:{base} integral iff base integral"), b.is_integral() == d.is_integral(), || {
            Violation::new("").with("base", b.is_integral().to_string()).with("downset", d.is_integral().to_string())
        });
    }
    // the three-chain with 1 ⊗ 1 raised to the top
    let mut t = builtin("chain_frame:3")?.to_tables();
    for entry in t.tensor.iter_mut().filter(|e| e.0 == "1" && e.1 == "1") {
        entry.2 = "2".into();
    }
    let corrupted = check_quantale(&t).map_err(setup)?;
    check(&mut r, "corrupted tensor is rejected", !corrupted.is_ok(), || Violation::new(""));
    if let Some(v) = corrupted.violations.first() {
        r.note("corrupted tensor witness", v.to_string());
    }
    Ok(r)
}

fn lax_laws(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    let lb = LawBudget {
        max_carrier: budget.max_exhaustive_size.min(2),
        samples: budget.samples,
        seed: budget.seed,
        ..LawBudget::default()
    };
    let laws: [(&str, &dyn LaxLaw); 2] = [("α", &Alpha), ("β", &Beta)];
    for desc in ["two_chain", "chain_frame:3"] {
        let q = builtin(desc)?;
        for (name, law) in laws {
            absorb(&mut r, &format!("{name} over {desc}"), check_lax_law(law, &q, &lb).map_err(setup)?);
        }
    }
    let q = builtin("two_chain")?;
    let corrupted = check_lax_law(&CorruptedAlpha, &q, &lb).map_err(setup)?;
    check(&mut r, "corrupted law is caught", !corrupted.is_ok(), || Violation::new(""));
    if let Some(v) = corrupted.violations.first() {
        r.note("corrupted law witness", v.to_string());
    }
    Ok(r)
}

/// Every table `X × PX → V` on `n` points, in a fixed order.
fn all_tables(q: &Arc<Quantale>, n: usize) -> impl Iterator<Item = DistanceStructure> + '_ {
    let cells = n << n;
    let total = q.len().pow(cells as u32);
    (0..total).map(move |mut code| {
        let table = (0..cells)
            .map(|_| {
                let e = Elem::new(code % q.len());
                code /= q.len();
                e
            })
            .collect();
        DistanceStructure::new(FiniteSet::points(n), q.clone(), table).unwrap()
    })
}

/// Every tower on `n` points with `c^⊥ A = X`, the value (C1) forces.
fn all_towers(q: &Arc<Quantale>, n: usize) -> impl ParallelIterator<Item = Tower> + '_ {
    let sets = 1usize << n;
    let free = sets * (q.len() - 1);
    let total = sets.pow(free as u32);
    let bot = q.bottom().index();
    (0..total).into_par_iter().map(move |mut code| {
        let mut ops = vec![0; sets * q.len()];
        for v in q.elements() {
            for a in 0..sets {
                ops[(v.index() << n) + a] = if v.index() == bot {
                    sets - 1
                } else {
                    let b = code % sets;
                    code /= sets;
                    b
                };
            }
        }
        Tower::new(FiniteSet::points(n), q.clone(), ops).unwrap()
    })
}

fn sizes(budget: &Budget) -> std::ops::RangeInclusive<usize> {
    0..=budget.max_exhaustive_size.min(2)
}

fn tower_bijection(budget: &Budget) -> Result<LawReport, SuiteError> {
    use crate::spaces::tower::{LAW_C0, LAW_C1, LAW_C2, LAW_C3, LAW_C3P};
    let mut r = LawReport::new();
    for desc in ["two_chain", "chain_frame:3"] {
        let q = builtin(desc)?;
        let (mut iff, mut from_to, mut to_from, mut c3) = (None, None, None, None);
        for n in sizes(budget) {
            let mut closures = 0u64;
            let mut tables = 0u64;
            for s in all_tables(&q, n) {
                tables += 1;
                let closure = check_closure(&s).is_ok();
                let t = Tower::of(&s);
                let laws = t.check(TowerMode::Closure).map_err(setup)?;
                closures += closure as u64;
                let w = || Violation::new("").with("n", n.to_string()).with("table", render(&q, s.table()));
                if iff.is_none() && closure != laws.is_ok() {
                    iff = Some(w());
                }
                if from_to.is_none() && closure && t.distances() != s {
                    from_to = Some(w());
                }
                if c3.is_none() && laws.violated(LAW_C3) != laws.violated(LAW_C3P) {
                    c3 = Some(w());
                }
            }
            let towers: Vec<(bool, bool, bool)> = all_towers(&q, n)
                .map(|t| {
                    let laws = t.check(TowerMode::Closure).unwrap();
                    let tower = !laws.violated(LAW_C1);
                    let c3_agrees = !tower
                        || laws.violated(LAW_C0)
                        || laws.violated(LAW_C2)
                        || laws.violated(LAW_C3) == laws.violated(LAW_C3P);
                    let ok = laws.is_ok();
                    (ok, !ok || Tower::of(&t.distances()) == t, c3_agrees)
                })
                .collect();
            let valid = towers.iter().filter(|t| t.0).count() as u64;
            if to_from.is_none() {
                if let Some(i) = towers.iter().position(|t| !t.1) {
                    to_from = Some(Violation::new("").with("n", n.to_string()).with("tower index", i.to_string()));
                }
            }
            if c3.is_none() && towers.iter().any(|t| !t.2) {
                c3 = Some(Violation::new("").with("n", n.to_string()).with("source", "tower enumeration"));
            }
            r.count(&format!("{desc}: tables n={n}"), tables);
            r.count(&format!("{desc}: closure structures n={n}"), closures);
            r.count(&format!("{desc}: towers n={n}"), towers.len() as u64);
            r.count(&format!("{desc}: (C0)–(C3) towers n={n}"), valid);
            check(&mut r, &format!("{desc}: closure and tower counts agree n={n}"), valid == closures, || {
                Violation::new("").with("closures", closures.to_string()).with("towers", valid.to_string())
            });
        }
        let mut put = |law: &str, v: Option<Violation>| check(&mut r, &format!("{desc}: {law}"), v.is_none(), || v.unwrap());
        put("closure iff (C0)–(C3)", iff);
        put("from_tower ∘ to_tower = id", from_to);
        put("to_tower ∘ from_tower = id", to_from);
        put("(C3) iff (C3')", c3);
    }
    Ok(r)
}

fn approach_equivalence(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    for desc in ["two_chain", "chain_frame:3"] {
        let q = builtin(desc)?;
        let mut first = None;
        let mut disagreements = 0u64;
        for n in sizes(budget) {
            let mut approach = 0u64;
            for s in all_tables(&q, n) {
                let t = Tower::of(&s);
                let a = check_closure(&s).is_ok() && is_approach(&s).holds();
                let ll = t.check(TowerMode::ApproachLl).map_err(setup)?.is_ok();
                let cp = t.check(TowerMode::ApproachCoprime).map_err(setup)?.is_ok();
                approach += a as u64;
                if a != ll || ll != cp {
                    disagreements += 1;
                    first.get_or_insert_with(|| {
                        Violation::new("")
                            .with("n", n.to_string())
                            .with("table", render(&q, s.table()))
                            .with("is_approach", a.to_string())
                            .with("(C4)+(C5)", ll.to_string())
                            .with("(C4')+(C5')", cp.to_string())
                    });
                }
            }
            r.count(&format!("{desc}: approach structures n={n}"), approach);
        }
        r.count(&format!("{desc}: disagreements"), disagreements);
        check(&mut r, &format!("{desc}: is_approach iff (C4)+(C5) iff (C4')+(C5')"), first.is_none(), || first.unwrap());
    }
    Ok(r)
}

fn main_theorem(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    for desc in ["two_chain", "chain_frame:3", "cost_chain:2", SMALL_DELTA] {
        let q = builtin(desc)?;
        absorb(&mut r, desc, verify_main_theorem(&q, budget).map_err(setup)?);
        absorb(&mut r, &format!("{desc}: ε"), check_algebraic_morphism_epsilon(&q, budget).map_err(setup)?);
    }
    // closed sets of {a, b, c} are the subsets other than {a, b}
    let q = builtin("two_chain")?;
    let s = DistanceStructure::from_fn(FiniteSet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap(), q.clone(), |a, x| {
        if a >> x & 1 == 1 || a & 0b011 == 0b011 {
            q.top()
        } else {
            q.bottom()
        }
    })
    .map_err(setup)?;
    let back = a_epsilon(&r_functor(&s));
    let law = "constructed non-approach closure structure is moved strictly down by A_ε R";
    let ok = check_closure(&s).is_ok() && !is_approach(&s).holds() && back.leq(&s) && back != s;
    r.note("constructed structure", render(&q, s.table()));
    r.note("constructed structure after A_ε R", render(&q, back.table()));
    check(&mut r, law, ok, || Violation::new("").with("A_ε R", render(&q, back.table())));
    Ok(r)
}

fn topology_counts() -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    let q = builtin("two_chain")?;
    for n in 0..=3 {
        let approach = enumerate_structures(n, &q, StructureFilter::Approach, CANDIDATE_LIMIT).map_err(setup)?;
        let closure = enumerate_structures(n, &q, StructureFilter::Closure, CANDIDATE_LIMIT).map_err(setup)?;
        let (a, c) = (approach.structures.len() as u64, closure.structures.len() as u64);
        let via_closure = closure.structures.iter().filter(|s| is_approach(s).holds()).count() as u64;
        r.count(&format!("topologies n={n}"), a);
        r.count(&format!("closure spaces n={n}"), c);
        let w = || Violation::new("").with("n", n.to_string()).with("found", a.to_string());
        check(&mut r, &format!("topology count n={n} is {}", TOPOLOGY_COUNTS[n]), a == TOPOLOGY_COUNTS[n], w);
        check(&mut r, &format!("closure-space count n={n} is {}", MOORE_COUNTS[n]), c == MOORE_COUNTS[n], || {
            Violation::new("").with("found", c.to_string())
        });
        check(&mut r, &format!("approach closure spaces n={n} match point-matrix count"), via_closure == a, || {
            Violation::new("").with("filtered", via_closure.to_string())
        });
    }
    Ok(r)
}

/// Every structure of `kind` on two points that satisfies its axioms.
fn valid_graphs(q: &Arc<Quantale>, kind: GraphKind, budget: &Budget) -> Result<Vec<Graph>, SuiteError> {
    let c = FiniteSet::points(2);
    Ok(match kind {
        GraphKind::Powerset => enumerate_structures(2, q, StructureFilter::Closure, CANDIDATE_LIMIT)
            .map_err(setup)?
            .structures
            .into_iter()
            .map(Graph::from)
            .collect(),
        GraphKind::Ultrafilter => beta_algebras(2, q, budget).0.into_iter().map(Graph::from).collect(),
        GraphKind::Category => (0..q.len().pow(4))
            .map(|code| {
                let m = VRelation::from_fn(2, 2, |x, y| Elem::new(code / q.len().pow((2 * x + y) as u32) % q.len()));
                Graph::category(c.clone(), q.clone(), &m).unwrap()
            })
            .filter(|g| g.check_axioms().is_ok())
            .collect(),
    })
}

fn table_len(kind: GraphKind, n: usize) -> usize {
    match kind {
        GraphKind::Powerset => n << n,
        GraphKind::Ultrafilter | GraphKind::Category => n * n,
    }
}

fn reflector(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    for desc in ["two_chain", "chain_frame:3"] {
        let q = builtin(desc)?;
        for kind in [GraphKind::Powerset, GraphKind::Ultrafilter, GraphKind::Category] {
            let valid = valid_graphs(&q, kind, budget)?;
            let len = table_len(kind, 2);
            let mut rng = budget.rng(&format!("suites.reflector.{desc}.{kind:?}"));
            let random = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Elem> {
                (0..len).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect()
            };
            let mut inputs = vec![vec![q.bottom(); len], vec![q.top(); len]];
            for _ in 0..budget.samples {
                inputs.push(random(&mut rng));
            }
            let graph = |t: Vec<Elem>| Graph::new(kind, FiniteSet::points(2), q.clone(), t).unwrap();
            let (mut minimal, mut infl, mut idem, mut mono) = (None, None, None, None);
            for t in inputs {
                let g = graph(t.clone());
                let h = reflect(&g);
                let w = || Violation::new("").with("graph", render(&q, &t));
                let above: Vec<&Graph> = valid.iter().filter(|v| g.leq(v)).collect();
                let meet: Vec<Elem> =
                    (0..len).map(|i| q.meet_all(above.iter().map(|v| v.table()[i]))).collect();
                let brute = graph(meet);
                if minimal.is_none() && (h != brute || !valid.contains(&brute)) {
                    minimal = Some(w().with("reflect", render(&q, h.table())).with("minimum", render(&q, brute.table())));
                }
                if infl.is_none() && !g.leq(&h) {
                    infl = Some(w());
                }
                if idem.is_none() && reflect(&h) != h {
                    idem = Some(w());
                }
                let extra = random(&mut rng);
                let bigger = graph(t.iter().zip(&extra).map(|(&a, &b)| q.join(a, b)).collect());
                if mono.is_none() && !h.leq(&reflect(&bigger)) {
                    mono = Some(w().with("larger graph", render(&q, bigger.table())));
                }
            }
            let p = format!("{desc} {kind:?}");
            r.count(&format!("{p}: axiom-satisfying structures"), valid.len() as u64);
            r.count(&format!("{p}: graphs"), budget.samples as u64 + 2);
            for (law, v) in [
                ("reflect is the least structure above", minimal),
                ("inflationary", infl),
                ("idempotent", idem),
                ("monotone", mono),
            ] {
                check(&mut r, &format!("{p}: {law}"), v.is_none(), || v.unwrap());
            }
        }
    }
    Ok(r)
}

fn base_change(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    let three = Builtin::ChainFrame { n: 3 };
    let delta: Builtin = SMALL_DELTA.parse().map_err(setup)?;
    for (family, anchor) in [
        (MapFamily::IotaPiO, three.clone()),
        (MapFamily::IotaPiO, Builtin::CostChain { max: 2 }),
        (MapFamily::SigmaTauRhoLambda, delta.clone()),
        (MapFamily::DownsetTriple, three.clone()),
        (MapFamily::DownsetTriple, Builtin::CostChain { max: 2 }),
    ] {
        absorb(&mut r, &format!("{anchor}"), verify_standard_maps(family, &anchor).map_err(setup)?);
    }

    let small = Budget::new(2, budget.samples, budget.seed);
    let iota = builtin_map("iota", &three).map_err(setup)?;
    let pi = builtin_map("pi", &three).map_err(setup)?;
    let pos = verify_adjunction_theorem(&iota, &pi, &small).map_err(setup)?;
    absorb(&mut r, "(ι, π)", pos.report.clone());
    check(&mut r, "(ι, π): (i), (ii) and (iii) hold", pos.statements() == [true; 3], || {
        Violation::new("").with("statements", format!("{:?}", pos.statements()))
    });

    let v = builtin("chain_frame:3")?;
    let id = MonotoneMap::identity(v.clone());
    let top = MonotoneMap::constant(v.clone(), v.clone(), v.top());
    let neg = verify_adjunction_theorem(&id, &top, &small).map_err(setup)?;
    absorb(&mut r, "(identity, constant ⊤)", neg.report.clone());
    let witnessed = neg.statements() == [false; 3] && neg.categories.is_some() && neg.beta_algebras.is_some();
    check(&mut r, "(identity, constant ⊤): counterexample exhibited", witnessed, || {
        Violation::new("").with("statements", format!("{:?}", neg.statements()))
    });
    if let Some(c) = &neg.categories {
        r.note("(identity, constant ⊤): counterexample", c.to_string());
    }

    absorb(&mut r, "embeddings", verify_embedding_corollaries(budget).map_err(setup)?);

    let sigma = builtin_map("sigma", &delta).map_err(setup)?;
    let rho = builtin_map("rho", &delta).map_err(setup)?;
    let t = sigma.source().clone();
    let mut round = None;
    let mut tested = 0u64;
    for filter in [StructureFilter::Approach, StructureFilter::Closure] {
        for s in sample_structures(3, &t, filter, budget.samples, budget).map_err(setup)?.structures {
            tested += 1;
            let g = Graph::from(s);
            let back = b_phi(&b_phi(&g, &sigma).map_err(setup)?, &rho).map_err(setup)?;
            if round.is_none() && back != g {
                round = Some(Violation::new("").with("structure", render(&t, g.table())));
            }
        }
    }
    r.count("ρ∘σ sampled structures n=3", tested);
    check(&mut r, "ρ∘σ = id entrywise on sampled cost structures", round.is_none(), || round.unwrap());
    Ok(r)
}

fn probapp(budget: &Budget) -> Result<LawReport, SuiteError> {
    let mut r = LawReport::new();
    let q = builtin(SMALL_DELTA)?;
    let mut iff = None;
    let mut round = None;
    let (mut instances, mut approach) = (0u64, 0u64);
    let mut visit = |s: &DistanceStructure, label: &str| -> Result<(), SuiteError> {
        instances += 1;
        let lhs = check_probapp(s).map_err(setup)?.is_ok();
        let rhs = check_closure(s).is_ok() && is_approach(s).holds();
        if iff.is_none() && lhs != rhs {
            iff = Some(
                Violation::new("")
                    .with("source", label)
                    .with("table", render(&q, s.table()))
                    .with("check_probapp", lhs.to_string()),
            );
        }
        if rhs {
            approach += 1;
            let conv = r_functor(s);
            let ok = a_epsilon(&conv) == *s && check_probapp_convergence(&conv).map_err(setup)?.is_ok();
            if round.is_none() && !ok {
                round = Some(Violation::new("").with("source", label).with("table", render(&q, s.table())));
            }
        }
        Ok(())
    };
    for s in all_tables(&q, 1) {
        visit(&s, "n=1 enumeration")?;
    }
    let mut rng = budget.rng("suites.probapp");
    let samples = budget.samples;
    for _ in 0..samples {
        let table = (0..8).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect();
        let s = DistanceStructure::new(FiniteSet::points(2), q.clone(), table).unwrap();
        visit(&s, "n=2 random table")?;
        visit(&closure_hull(&s), "n=2 closure hull")?;
    }
    for s in sample_structures(2, &q, StructureFilter::Approach, samples, budget).map_err(setup)?.structures {
        visit(&s, "n=2 approach sample")?;
    }
    r.count("instances", instances);
    r.count("approach instances", approach);
    check(&mut r, "check_probapp iff closure and approach", iff.is_none(), || iff.unwrap());
    check(&mut r, "A_ε R = id and R lands in probabilistic convergence", round.is_none(), || round.unwrap());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &Budget::default()), Err(SuiteError::Unknown(_))));
    }

    #[test]
    fn small_suites_pass() {
        let b = Budget::new(1, 20, 3);
        for name in ["quantale-laws", "tower-bijection", "approach-equivalence", "topology-counts"] {
            let r = run_suite(name, &b).unwrap();
            assert!(r.is_ok(), "{name}: {r}");
        }
    }

    #[test]
    fn absorb_prefixes_laws() {
        let mut inner = LawReport::new();
        inner.record("x", Some(Violation::new("x").with("a", "b")));
        inner.count("n", 2);
        let mut r = LawReport::new();
        absorb(&mut r, "p", inner);
        assert_eq!(r.checked, vec!["p: x".to_string()]);
        assert_eq!(r.violations[0].law, "p: x");
        assert_eq!(r.counts["p: n"], 2);
    }
}
