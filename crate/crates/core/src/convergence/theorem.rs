//! Desk-scale verification of the embedding of lax (β,V)-algebras into
//! V-closure spaces, and of the algebraic-morphism conditions for `ε`.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use super::{
    a_epsilon, check_beta_algebra, check_convergence_morphism, contractive_from_algebra, r_functor,
    ConvergenceError, ConvergenceStructure,
};
use crate::budget::Budget;
use crate::lattice::{Elem, Quantale};
use crate::report::{LawReport, Violation};
use crate::spaces::{category_hull, image_mask, is_approach, structures, StructureFilter, CANDIDATE_LIMIT};
use crate::vrel::{lax_extension, rel_compose, FiniteSet, PowersetExtension, UltrafilterExtension, VRelation};

pub const LAW_ADJUNCTION: &str = "(i) adjunction A_ε ⊣ R";
pub const LAW_COUNIT: &str = "(ii) A_ε R = id on approach structures";
pub const LAW_UNIT: &str = "(iii) R A_ε = id on β-algebras";
pub const LAW_COREFLECTION: &str = "A_ε R below identity, equal exactly on approach structures";
pub const LAW_PROPER: &str = "non-approach closure structure moved by A_ε R";
pub const LAW_COUNTS: &str = "β-algebra and approach structure counts agree";

/// Largest number of (s, t, f) triples checked exhaustively.
pub const TRIPLE_LIMIT: u64 = 3_000_000;
/// Largest number of relations quantified exhaustively in the ε conditions.
pub const RELATION_LIMIT: u64 = 4096;

fn maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let total = m.pow(n as u32);
    (0..total).map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect()).collect()
}

fn matrix_from_code(q: &Quantale, rows: usize, cols: usize, mut code: u64) -> VRelation {
    let len = q.len() as u64;
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        entries.push(Elem::new((code % len) as usize));
        code /= len;
    }
    VRelation::new(rows, cols, entries).unwrap()
}

fn random_matrix(q: &Quantale, rows: usize, cols: usize, rng: &mut impl Rng) -> VRelation {
    let entries = (0..rows * cols).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect();
    VRelation::new(rows, cols, entries).unwrap()
}

/// All relations `rows × cols` when there are at most `limit` of them,
/// otherwise `budget.samples` seeded ones.
fn relations(q: &Quantale, rows: usize, cols: usize, budget: &Budget, stream: &str) -> (Vec<VRelation>, bool) {
    let total = (q.len() as u64).checked_pow((rows * cols) as u32).filter(|&t| t <= RELATION_LIMIT);
    match total {
        Some(t) => ((0..t).map(|c| matrix_from_code(q, rows, cols, c)).collect(), true),
        None => {
            let mut rng = budget.rng(stream);
            ((0..budget.samples).map(|_| random_matrix(q, rows, cols, &mut rng)).collect(), false)
        }
    }
}

/// Every β-algebra on `n` points when the `|V|^(n²)` candidate tables fit
/// the budget; otherwise seeded samples (reflexive-transitive hulls of
/// random tables).
pub fn beta_algebras(n: usize, q: &Arc<Quantale>, budget: &Budget) -> (Vec<ConvergenceStructure>, bool) {
    let carrier = FiniteSet::points(n);
    let total = (q.len() as u64).checked_pow((n * n) as u32).filter(|&t| t <= CANDIDATE_LIMIT);
    match total {
        Some(t) if n <= budget.max_exhaustive_size => {
            let found = (0..t)
                .into_par_iter()
                .filter_map(|code| {
                    let m = matrix_from_code(q, n, n, code);
                    let s = ConvergenceStructure::from_matrix(carrier.clone(), q.clone(), &m).unwrap();
                    check_beta_algebra(&s).is_ok().then_some(s)
                })
                .collect();
            (found, true)
        }
        _ => {
            let mut rng = budget.rng("convergence.sample");
            let found = (0..budget.samples)
                .map(|_| {
                    let m = category_hull(q, &random_matrix(q, n, n, &mut rng));
                    ConvergenceStructure::from_matrix(carrier.clone(), q.clone(), &m).unwrap()
                })
                .collect();
            (found, false)
        }
    }
}

/// Checks (i)–(iii) of the embedding theorem on carriers up to
/// `budget.max_exhaustive_size` points, plus the proper-coreflection
/// witness and the agreement of structure counts.
pub fn verify_main_theorem(q: &Arc<Quantale>, budget: &Budget) -> Result<LawReport, ConvergenceError> {
    if !q.is_ccd() {
        return Err(ConvergenceError::Capability("the embedding theorem needs a ccd quantale".into()));
    }
    let mut report = LawReport::new();
    let sizes = 0..=budget.max_exhaustive_size;
    let mut closures = Vec::new();
    let mut betas = Vec::new();
    let mut counts_agree = None;
    let mut exhaustive = true;
    for n in sizes.clone() {
        let c = structures(n, q, StructureFilter::Closure, budget)?;
        let (b, b_exh) = beta_algebras(n, q, budget);
        let approach = structures(n, q, StructureFilter::Approach, budget)?;
        exhaustive &= c.exhaustive && b_exh && approach.exhaustive;
        report.count(&format!("closure structures n={n}"), c.structures.len() as u64);
        report.count(&format!("β-algebras n={n}"), b.len() as u64);
        report.count(&format!("approach structures n={n}"), approach.structures.len() as u64);
        if b_exh && approach.exhaustive && b.len() != approach.structures.len() && counts_agree.is_none() {
            counts_agree = Some(
                Violation::new(LAW_COUNTS)
                    .with("n", n.to_string())
                    .with("β-algebras", b.len().to_string())
                    .with("approach structures", approach.structures.len().to_string()),
            );
        }

        let counit = approach.structures.par_iter().find_first(|s| a_epsilon(&r_functor(s)) != **s);
        report.record(
            LAW_COUNIT,
            counit.map(|s| Violation::new(LAW_COUNIT).with("n", n.to_string()).with("s", render_table(s.table(), q))),
        );
        let unit = b.par_iter().find_first(|t| r_functor(&a_epsilon(t)) != **t);
        report.record(
            LAW_UNIT,
            unit.map(|t| Violation::new(LAW_UNIT).with("n", n.to_string()).with("ℓ", render_table(t.table(), q))),
        );
        let core = c.structures.par_iter().find_first(|s| {
            let back = a_epsilon(&r_functor(s));
            !back.leq(s) || (back == **s) != is_approach(s).holds()
        });
        report.record(
            LAW_COREFLECTION,
            core.map(|s| Violation::new(LAW_COREFLECTION).with("n", n.to_string()).with("s", render_table(s.table(), q))),
        );
        let moved = c.structures.iter().filter(|s| a_epsilon(&r_functor(s)) != **s).count();
        report.count(&format!("non-approach closure structures n={n}"), moved as u64);
        closures.push(c.structures);
        betas.push(b);
    }
    report.record(LAW_COUNTS, counts_agree);
    let proper = budget.max_exhaustive_size == 0 || closures.iter().skip(1).any(|c| c.iter().any(|s| !is_approach(s).holds()));
    report.record(
        LAW_PROPER,
        (!proper).then(|| Violation::new(LAW_PROPER).with("carriers up to", budget.max_exhaustive_size.to_string())),
    );

    // (i): triples (s on X, t on Y, f: Y → X)
    let mut triples: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut total: u64 = 0;
    for nx in sizes.clone() {
        for ny in sizes.clone() {
            total += (closures[nx].len() * betas[ny].len()) as u64 * (nx as u64).pow(ny as u32);
        }
    }
    let sampled = total > TRIPLE_LIMIT;
    let all_maps: Vec<Vec<Vec<Vec<usize>>>> =
        sizes.clone().map(|nx| sizes.clone().map(|ny| maps(ny, nx)).collect()).collect();
    if sampled {
        let mut rng = budget.rng("convergence.triples");
        let nonempty: Vec<(usize, usize)> = sizes
            .clone()
            .flat_map(|nx| sizes.clone().map(move |ny| (nx, ny)))
            .filter(|&(nx, ny)| !closures[nx].is_empty() && !betas[ny].is_empty() && !all_maps[nx][ny].is_empty())
            .collect();
        for _ in 0..budget.samples {
            let (nx, ny) = nonempty[rng.gen_range(0..nonempty.len())];
            let s = rng.gen_range(0..closures[nx].len());
            let t = rng.gen_range(0..betas[ny].len());
            let f = rng.gen_range(0..all_maps[nx][ny].len());
            triples.push((nx * 16 + ny, s, t, f));
        }
    } else {
        for nx in sizes.clone() {
            for ny in sizes.clone() {
                for s in 0..closures[nx].len() {
                    for t in 0..betas[ny].len() {
                        for f in 0..all_maps[nx][ny].len() {
                            triples.push((nx * 16 + ny, s, t, f));
                        }
                    }
                }
            }
        }
    }
    let rs: Vec<Vec<ConvergenceStructure>> = closures.iter().map(|c| c.par_iter().map(r_functor).collect()).collect();
    let adjunction = triples.par_iter().find_first(|&&(sizes_code, s, t, f)| {
        let (nx, ny) = (sizes_code / 16, sizes_code % 16);
        let map = &all_maps[nx][ny][f];
        let left = contractive_from_algebra(map, &betas[ny][t], &closures[nx][s]);
        let right = check_convergence_morphism(map, &betas[ny][t], &rs[nx][s]).unwrap().holds();
        left != right
    });
    report.record(
        LAW_ADJUNCTION,
        adjunction.map(|&(sizes_code, s, t, f)| {
            let (nx, ny) = (sizes_code / 16, sizes_code % 16);
            Violation::new(LAW_ADJUNCTION)
                .with("s", render_table(closures[nx][s].table(), q))
                .with("ℓ", render_table(betas[ny][t].table(), q))
                .with("f", format!("{:?}", all_maps[nx][ny][f]))
        }),
    );
    report.count("adjunction triples", triples.len() as u64);
    report.count(if exhaustive && !sampled { "exhaustive" } else { "sampled" }, 1);
    Ok(report)
}

fn render_table(table: &[Elem], q: &Quantale) -> String {
    let labels: Vec<&str> = table.iter().map(|&e| q.label(e)).collect();
    format!("[{}]", labels.join(" "))
}

/// `ε_X(A, ẋ) = k` iff `x ∈ A`, as a relation `PX ↛ UX`.
pub fn epsilon(q: &Quantale, n: usize) -> VRelation {
    VRelation::from_fn(1 << n, n, |a, x| if a >> x & 1 == 1 { q.unit() } else { q.bottom() })
}

fn first_excess(q: &Quantale, lhs: &VRelation, rhs: &VRelation) -> Option<(usize, usize)> {
    (0..lhs.rows())
        .flat_map(|i| (0..lhs.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !q.leq(lhs.at(i, j), rhs.at(i, j)))
}

fn excess_violation(law: &str, q: &Quantale, lhs: &VRelation, rhs: &VRelation, ctx: &[(&str, String)]) -> Option<Violation> {
    first_excess(q, lhs, rhs).map(|(i, j)| {
        let mut v = Violation::new(law);
        for (k, val) in ctx {
            v = v.with(*k, val.clone());
        }
        v.with("row", i.to_string())
            .with("col", j.to_string())
            .with("lhs", q.label(lhs.at(i, j)))
            .with("rhs", q.label(rhs.at(i, j)))
    })
}

pub const EPS_A: &str = "a. lax naturality";
pub const EPS_B: &str = "b. lax unit law";
pub const EPS_C: &str = "c. lax multiplication law";
pub const EPS_D: &str = "d. lax compatibility";
pub const EPS_E: &str = "e. strictness of the powerset extension at ε";

/// Conditions a–e for `ε: (P, P̂) → (U, Ū)` on carriers of at most
/// `min(budget.max_exhaustive_size, 3)` points. Relations are quantified
/// exhaustively up to [`RELATION_LIMIT`] of them, otherwise sampled.
pub fn check_algebraic_morphism_epsilon(q: &Arc<Quantale>, budget: &Budget) -> Result<LawReport, ConvergenceError> {
    let q = &**q;
    let max = budget.max_exhaustive_size.min(3);
    let mut r = LawReport::new();
    let ext_err = |e: crate::vrel::VrelError| ConvergenceError::Mismatch(e.to_string());
    let mut sampled = false;

    let mut a = None;
    let mut b = None;
    let mut c = None;
    let mut d = None;
    let mut e = None;
    for nx in 0..=max {
        let eps_x = epsilon(q, nx);
        for ny in 0..=max {
            let eps_y = epsilon(q, ny);
            for f in maps(nx, ny) {
                let uf = VRelation::graph(q, &f, ny);
                let pf: Vec<usize> = (0..1usize << nx).map(|m| image_mask(&f, m)).collect();
                let lhs = rel_compose(q, &uf, &eps_x).map_err(ext_err)?;
                let rhs = rel_compose(q, &eps_y, &VRelation::graph(q, &pf, 1 << ny)).map_err(ext_err)?;
                if a.is_none() {
                    a = excess_violation(EPS_A, q, &lhs, &rhs, &[("f", format!("{f:?}"))]);
                }
            }
            let (rels, exh) = relations(q, nx, ny, budget, "epsilon.d");
            sampled |= !exh;
            for rel in &rels {
                let lhs = rel_compose(q, &eps_y, &lax_extension(&PowersetExtension, q, rel).map_err(ext_err)?)
                    .map_err(ext_err)?;
                let rhs = rel_compose(q, &lax_extension(&UltrafilterExtension, q, rel).map_err(ext_err)?, &eps_x)
                    .map_err(ext_err)?;
                if d.is_none() {
                    d = excess_violation(EPS_D, q, &lhs, &rhs, &[("r", render_table(rel.entries(), q))]);
                }
            }
        }
        let dot = VRelation::identity(q, nx);
        let singleton: Vec<usize> = (0..nx).map(|x| 1 << x).collect();
        let hd = rel_compose(q, &eps_x, &VRelation::graph(q, &singleton, 1 << nx)).map_err(ext_err)?;
        if b.is_none() {
            b = excess_violation(EPS_B, q, &dot, &hd, &[("n", nx.to_string())]);
        }

        let p_eps = lax_extension(&PowersetExtension, q, &eps_x).map_err(ext_err)?;
        let eps_ux = epsilon(q, nx);
        let sigma = VRelation::identity(q, nx);
        let lhs = rel_compose(q, &sigma, &rel_compose(q, &eps_ux, &p_eps).map_err(ext_err)?).map_err(ext_err)?;
        let union: Vec<usize> = (0..1usize << (1 << nx))
            .map(|fam| (0..1usize << nx).filter(|m| fam >> m & 1 == 1).fold(0, |u, m| u | m))
            .collect();
        let rhs = rel_compose(q, &eps_x, &VRelation::graph(q, &union, 1 << nx)).map_err(ext_err)?;
        if c.is_none() {
            c = excess_violation(EPS_C, q, &lhs, &rhs, &[("n", nx.to_string())]);
        }

        let (rels, exh) = relations(q, nx, nx, budget, "epsilon.e");
        sampled |= !exh;
        for rel in &rels {
            let composite = rel_compose(q, rel, &eps_x).map_err(ext_err)?;
            let lhs = lax_extension(&PowersetExtension, q, &composite).map_err(ext_err)?;
            let pa = lax_extension(&PowersetExtension, q, rel).map_err(ext_err)?;
            let rhs = rel_compose(q, &pa, &p_eps).map_err(ext_err)?;
            if e.is_none() {
                e = excess_violation(EPS_E, q, &lhs, &rhs, &[("a", render_table(rel.entries(), q))]);
            }
        }
    }
    r.record(EPS_A, a);
    r.record(EPS_B, b);
    r.record(EPS_C, c);
    r.record(EPS_D, d);
    r.record(EPS_E, e);
    r.count(if sampled { "sampled" } else { "exhaustive" }, 1);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;

    #[test]
    fn main_theorem_over_two_chain() {
        let q = Quantale::builtin(&Builtin::TwoChain).unwrap();
        let r = verify_main_theorem(&q, &Budget::new(2, 50, 0)).unwrap();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.counts["β-algebras n=2"], 4);
        assert_eq!(r.counts["approach structures n=2"], 4);
    }

    #[test]
    fn non_ccd_rejected() {
        let m3 = crate::lattice::diamond();
        assert!(matches!(verify_main_theorem(&m3, &Budget::default()), Err(ConvergenceError::Capability(_))));
    }

    #[test]
    fn epsilon_conditions_over_small_quantales() {
        for b in [Builtin::TwoChain, Builtin::ChainFrame { n: 3 }] {
            let q = Quantale::builtin(&b).unwrap();
            let r = check_algebraic_morphism_epsilon(&q, &Budget::new(2, 50, 1)).unwrap();
            assert!(r.is_ok(), "{r}");
        }
    }
}
