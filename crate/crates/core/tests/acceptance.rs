//! Acceptance criteria. Each test prints one line:
//!
//! ```text
//! criterion N <name>: PASS|FAIL (<detail>) in <t>s, limit <L>s
//! ```
//!
//! Run with `cargo test -p vspaces --test acceptance -- --nocapture --test-threads 1`
//! to see the lines and get undisturbed timings.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use vspaces::lattice::check_quantale;
use vspaces::spaces::{enumerate_structures, DistanceStructure, StructureFilter, CANDIDATE_LIMIT};
use vspaces::suites::{run_suite, SMALL_DELTA};
use vspaces::{Budget, Builtin, Elem, LawReport, Quantale};

const SEED: u64 = 20240917;

fn criterion(id: u32, name: &str, limit_secs: u64, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let (mark, detail) = match (&outcome, in_time) {
        (Ok(d), true) => ("PASS", d.clone()),
        (Ok(d), false) => ("FAIL", format!("{d}; over time")),
        (Err(e), _) => ("FAIL", e.clone()),
    };
    println!("criterion {id} {name}: {mark} ({detail}) in {:.2}s, limit {limit_secs}s", elapsed.as_secs_f64());
    assert!(outcome.is_ok() && in_time, "criterion {id} {name}: {detail}");
}

fn suite(name: &str, budget: &Budget) -> Result<LawReport, String> {
    let r = run_suite(name, budget).map_err(|e| e.to_string())?;
    match r.violations.first() {
        Some(v) => Err(format!("{} law(s) violated, first: {v}", r.violations.len())),
        None => Ok(r),
    }
}

fn count(r: &LawReport, key: &str) -> Result<u64, String> {
    r.counts.get(key).copied().ok_or_else(|| format!("missing count `{key}`"))
}

fn expect(what: &str, found: u64, expected: u64) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{what}: found {found}, expected {expected}"))
    }
}

fn q(desc: &str) -> std::sync::Arc<Quantale> {
    Quantale::builtin(&desc.parse::<Builtin>().unwrap()).unwrap()
}

// Oracles on plain bitmasks: a subset of an n-point set is a mask below
// 1 << n, a family of subsets is a mask below 1 << (1 << n).

fn has(family: u32, a: usize) -> bool {
    family >> a & 1 == 1
}

/// Families containing the whole set and closed under binary intersection.
fn moore_families(n: usize) -> Vec<u32> {
    let subsets = 1usize << n;
    let full = subsets - 1;
    (0u32..1 << subsets)
        .filter(|&f| has(f, full))
        .filter(|&f| (0..subsets).all(|a| (0..subsets).all(|b| !has(f, a) || !has(f, b) || has(f, a & b))))
        .collect()
}

/// Closed-set families of topologies: Moore families with the empty set
/// that are closed under binary union.
fn closed_set_topologies(n: usize) -> Vec<u32> {
    let subsets = 1usize << n;
    moore_families(n)
        .into_iter()
        .filter(|&f| has(f, 0))
        .filter(|&f| (0..subsets).all(|a| (0..subsets).all(|b| !has(f, a) || !has(f, b) || has(f, a | b))))
        .collect()
}

/// Kuratowski closure operators, as the list of closures of every subset.
fn kuratowski(n: usize) -> Vec<Vec<usize>> {
    let subsets = 1usize << n;
    let mut out = Vec::new();
    let mut c = vec![0usize; subsets];
    fn go(a: usize, n: usize, c: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let subsets = 1usize << n;
        if a == subsets {
            let additive = (0..subsets).all(|x| (0..subsets).all(|y| c[x | y] == c[x] | c[y]));
            let idempotent = (0..subsets).all(|x| c[c[x]] == c[x]);
            if additive && idempotent {
                out.push(c.clone());
            }
            return;
        }
        if a == 0 {
            c[0] = 0;
            return go(1, n, c, out);
        }
        for img in 0..subsets {
            if img & a == a {
                c[a] = img;
                go(a + 1, n, c, out);
            }
        }
    }
    go(0, n, &mut c, &mut out);
    out
}

fn family_of(closure: impl Fn(usize) -> usize, n: usize) -> u32 {
    (0..1usize << n).filter(|&a| closure(a) == a).fold(0, |f, a| f | 1 << a)
}

/// The operator `A ↦ {x : v ≤ s(A, x)}`.
fn level(s: &DistanceStructure, v: Elem, a: usize) -> usize {
    let qq = s.quantale();
    (0..s.n()).filter(|&x| qq.leq(v, s.at(a, x))).fold(0, |m, x| m | 1 << x)
}

/// Pairs of families `f1 ⊆ f2` from the list: the structures over the frame
/// `0 < 1 < 2` are the pairs of threshold operators `c² ≤ c¹`.
fn nested_pairs(families: &[u32]) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for &f1 in families {
        for &f2 in families {
            if f1 & f2 == f1 {
                out.insert((f1, f2));
            }
        }
    }
    out
}

fn library_pairs(n: usize, filter: StructureFilter) -> Result<BTreeSet<(u32, u32)>, String> {
    let q3 = q("chain_frame:3");
    let (one, two) = (q3.elem("1").unwrap(), q3.elem("2").unwrap());
    let e = enumerate_structures(n, &q3, filter, CANDIDATE_LIMIT).map_err(|e| e.to_string())?;
    Ok(e.structures.iter().map(|s| (family_of(|a| level(s, one, a), n), family_of(|a| level(s, two, a), n))).collect())
}

#[test]
fn criterion_1_quantale_laws() {
    criterion(1, "quantale laws", 10, || {
        let expected: [(&str, u64); 6] = [
            ("two_chain", 2),
            ("chain_frame:3", 3),
            ("cost_chain:3", 5),
            ("unit_grid:4:lukasiewicz", 5),
            (SMALL_DELTA, 6),
            ("downset:chain_frame:3", 4),
        ];
        for (desc, size) in expected {
            let v = q(desc);
            let r = check_quantale(&v.to_tables()).map_err(|e| format!("{desc}: {e}"))?;
            if let Some(x) = r.violations.first() {
                return Err(format!("{desc}: {x}"));
            }
            expect(&format!("{desc} elements"), v.len() as u64, size)?;
            if !v.is_ccd() || !v.is_integral() {
                return Err(format!("{desc}: ccd {} integral {}", v.is_ccd(), v.is_integral()));
            }
        }
        let r = suite("quantale-laws", &Budget::new(3, 500, SEED))?;
        if !r.notes.contains_key("corrupted tensor witness") {
            return Err("corrupted tensor not reported".into());
        }
        Ok(format!("6 quantales, {} laws", r.checked.len()))
    });
}

#[test]
fn criterion_2_lax_laws() {
    criterion(2, "lax laws", 60, || {
        let r = suite("lax-laws", &Budget::new(2, 500, SEED))?;
        let mut sampled = 0;
        for (k, n) in r.counts.iter().filter(|(k, _)| k.ends_with("sampled inputs")) {
            if *n < 200 {
                return Err(format!("{k}: only {n} samples"));
            }
            sampled += 1;
        }
        for law in ["α over two_chain", "α over chain_frame:3", "β over two_chain", "β over chain_frame:3"] {
            for c in ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)"] {
                let prefix = format!("{law}: {c}");
                if !r.counts.iter().any(|(k, n)| k.starts_with(&prefix) && k.ends_with("evaluations") && *n > 0) {
                    return Err(format!("no evaluations for {prefix}"));
                }
            }
        }
        if !r.notes.contains_key("corrupted law witness") {
            return Err("corrupted law not caught".into());
        }
        Ok(format!("{} laws, {sampled} sampled conditions", r.checked.len()))
    });
}

#[test]
fn criterion_3_tower_bijection() {
    criterion(3, "tower bijection", 60, || {
        let r = suite("tower-bijection", &Budget::new(2, 500, SEED))?;
        expect("two_chain tables", count(&r, "two_chain: tables n=2")?, 1 << 8)?;
        expect("chain_frame:3 tables", count(&r, "chain_frame:3: tables n=2")?, 3u64.pow(8))?;
        let moore = moore_families(2);
        expect("two_chain closure structures", count(&r, "two_chain: closure structures n=2")?, moore.len() as u64)?;
        let pairs = nested_pairs(&moore);
        expect("chain_frame:3 closure structures", count(&r, "chain_frame:3: closure structures n=2")?, pairs.len() as u64)?;
        expect("chain_frame:3 towers", count(&r, "chain_frame:3: (C0)–(C3) towers n=2")?, pairs.len() as u64)?;
        if library_pairs(2, StructureFilter::Closure)? != pairs {
            return Err("chain_frame:3 closure structures differ from nested Moore families".into());
        }
        Ok(format!("{} laws; 7 and {} closure structures", r.checked.len(), pairs.len()))
    });
}

#[test]
fn criterion_4_approach_characterization() {
    criterion(4, "approach characterization", 60, || {
        let r = suite("approach-equivalence", &Budget::new(2, 500, SEED))?;
        expect("two_chain disagreements", count(&r, "two_chain: disagreements")?, 0)?;
        expect("chain_frame:3 disagreements", count(&r, "chain_frame:3: disagreements")?, 0)?;
        let tops = closed_set_topologies(2);
        expect("two_chain approach", count(&r, "two_chain: approach structures n=2")?, tops.len() as u64)?;
        let pairs = nested_pairs(&tops);
        expect("chain_frame:3 approach", count(&r, "chain_frame:3: approach structures n=2")?, pairs.len() as u64)?;
        if library_pairs(2, StructureFilter::Approach)? != pairs {
            return Err("chain_frame:3 approach structures differ from nested topologies".into());
        }
        Ok(format!("{} laws, 0 disagreements", r.checked.len()))
    });
}

#[test]
fn criterion_5_topology_counts() {
    criterion(5, "topology counts", 30, || {
        let two = q("two_chain");
        let top = two.top();
        let mut found = Vec::new();
        for n in 0..=3usize {
            let oracle: BTreeSet<Vec<usize>> = kuratowski(n).into_iter().collect();
            expect(&format!("closed-set topologies n={n}"), closed_set_topologies(n).len() as u64, oracle.len() as u64)?;
            let e = enumerate_structures(n, &two, StructureFilter::Approach, CANDIDATE_LIMIT).map_err(|e| e.to_string())?;
            let lib: BTreeSet<Vec<usize>> = e
                .structures
                .iter()
                .map(|s| (0..1usize << n).map(|a| (0..n).filter(|&x| s.at(a, x) == top).fold(0, |m, x| m | 1 << x)).collect())
                .collect();
            expect(&format!("approach structures n={n}"), e.structures.len() as u64, oracle.len() as u64)?;
            if lib != oracle {
                return Err(format!("n={n}: library structures differ from Kuratowski closures"));
            }
            found.push(oracle.len() as u64);
        }
        if found != [1, 1, 4, 29] {
            return Err(format!("counts {found:?}"));
        }
        let r = suite("topology-counts", &Budget::new(3, 500, SEED))?;
        for (n, c) in found.iter().enumerate() {
            expect(&format!("suite n={n}"), count(&r, &format!("topologies n={n}"))?, *c)?;
        }
        Ok(format!("{found:?}"))
    });
}

#[test]
fn criterion_6_main_theorem() {
    criterion(6, "main theorem", 120, || {
        let r = suite("main-theorem", &Budget::new(3, 500, SEED))?;
        let moore = moore_families(3);
        let tops = closed_set_topologies(3);
        expect("two_chain closure n=3", count(&r, "two_chain: closure structures n=3")?, moore.len() as u64)?;
        expect("two_chain approach n=3", count(&r, "two_chain: approach structures n=3")?, tops.len() as u64)?;
        expect("two_chain β-algebras n=3", count(&r, "two_chain: β-algebras n=3")?, tops.len() as u64)?;
        let pairs = nested_pairs(&tops).len() as u64;
        expect("chain_frame:3 approach n=3", count(&r, "chain_frame:3: approach structures n=3")?, pairs)?;
        expect("chain_frame:3 closure n=3", count(&r, "chain_frame:3: closure structures n=3")?, nested_pairs(&moore).len() as u64)?;
        for v in ["chain_frame:3", "cost_chain:2", SMALL_DELTA] {
            let c = count(&r, &format!("{v}: closure structures n=3"))?;
            if c < 500 {
                return Err(format!("{v}: {c} closure structures at n=3"));
            }
            let a = count(&r, &format!("{v}: approach structures n=3"))?;
            expect(&format!("{v}: β-algebras n=3"), count(&r, &format!("{v}: β-algebras n=3"))?, a)?;
        }
        if !r.notes.contains_key("constructed structure") {
            return Err("constructed non-approach structure missing".into());
        }
        Ok(format!("{} laws", r.checked.len()))
    });
}

#[test]
fn criterion_7_reflector() {
    criterion(7, "reflector minimality", 60, || {
        let r = suite("reflector", &Budget::new(2, 1000, SEED))?;
        let mut graphs: BTreeMap<&str, u64> = BTreeMap::new();
        for (k, n) in r.counts.iter().filter(|(k, _)| k.ends_with(": graphs")) {
            if *n < 1002 {
                return Err(format!("{k}: {n} graphs"));
            }
            graphs.insert(k, *n);
        }
        expect("graph families", graphs.len() as u64, 6)?;
        expect("two_chain closure structures", count(&r, "two_chain Powerset: axiom-satisfying structures")?, 7)?;
        expect("two_chain convergence structures", count(&r, "two_chain Ultrafilter: axiom-satisfying structures")?, 4)?;
        Ok(format!("{} laws over {} graphs", r.checked.len(), graphs.values().sum::<u64>()))
    });
}

#[test]
fn criterion_8_base_change() {
    criterion(8, "change of base", 60, || {
        let r = suite("base-change", &Budget::new(3, 500, SEED))?;
        let tops: u64 = (0..=3).map(|n| closed_set_topologies(n).len() as u64).sum();
        expect("topologies with |X| ≤ 3", count(&r, "embeddings: topologies")?, tops)?;
        let negative = r.notes.keys().any(|k| k.contains("counterexample"));
        if !negative {
            return Err("negative case has no counterexample".into());
        }
        if count(&r, "ρ∘σ sampled structures n=3")? < 500 {
            return Err("too few ρ∘σ samples".into());
        }
        Ok(format!("{} laws, {tops} topologies", r.checked.len()))
    });
}

#[test]
fn criterion_9_probabilistic_approach() {
    criterion(9, "probabilistic approach", 60, || {
        let r = suite("probapp", &Budget::new(2, 500, SEED))?;
        let full = (q(SMALL_DELTA).len() as u64).pow(2);
        let instances = count(&r, "instances")?;
        if instances < full + 500 {
            return Err(format!("{instances} instances"));
        }
        let approach = count(&r, "approach instances")?;
        if approach == 0 {
            return Err("no approach instances".into());
        }
        Ok(format!("{instances} instances, {approach} approach"))
    });
}
