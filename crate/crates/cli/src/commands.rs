use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use vspaces::base_change::{b_phi, builtin_map, reflect, Graph, GraphKind};
use vspaces::convergence::{a_epsilon, check_beta_algebra, check_probapp_convergence, r_functor, ConvergenceStructure};
use vspaces::format::{
    detect_kind, parse_json, read_json, read_map, subset_labels, to_json, ConvergenceFile, FileKind, FormatError,
    MapFile, QuantaleRef, RelationFile, Space, SpaceFile,
};
use vspaces::lattice::{check_quantale, MapError, MonotoneMap};
use vspaces::spaces::{check_closure, check_probapp, is_approach, DistanceStructure, Tower, TowerMode};
use vspaces::suites::run_suite;
use vspaces::{Builtin, Quantale, Violation};

use crate::report::Report;
use crate::Global;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closure,
    Approach,
    #[value(name = "approach_ll")]
    ApproachLl,
    #[value(name = "approach_coprime")]
    ApproachCoprime,
    Probapp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Presentation {
    Distance,
    Tower,
    Convergence,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn read_text(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// The quantale named by `--quantale` or `--builtin`, if any.
fn global_quantale(g: &Global) -> Option<QuantaleRef> {
    match (&g.quantale, &g.builtin) {
        (Some(p), _) => Some(QuantaleRef::File { file: p.clone() }),
        (None, Some(b)) => Some(QuantaleRef::Descriptor(b.clone())),
        _ => None,
    }
}

pub fn check(g: &Global, target: Option<&Path>, mode: Mode, echo: Vec<String>) -> Result<Report, String> {
    let mut r = Report::new(echo);
    let Some(path) = target else {
        let q = global_quantale(g).ok_or("nothing to check: give a file, --quantale or --builtin")?;
        check_quantale_ref(&mut r, &q, Path::new("."))?;
        return Ok(r);
    };
    let text = read_text(path)?;
    let base = base_dir(path);
    match detect_kind(&text, path).map_err(err)? {
        FileKind::Quantale => {
            let q: QuantaleRef = parse_json(&text, path).map_err(err)?;
            check_quantale_ref(&mut r, &q, base)?;
        }
        FileKind::Space => {
            let space = parse_json::<SpaceFile>(&text, path).and_then(|f| f.load(base)).map_err(err)?;
            check_space(&mut r, &space, mode)?;
        }
        FileKind::Convergence => {
            let s = parse_json::<ConvergenceFile>(&text, path).and_then(|f| f.load(base)).map_err(err)?;
            r.note("kind", "convergence");
            r.absorb(&check_beta_algebra(&s));
            match mode {
                Mode::Closure | Mode::Approach => {}
                Mode::Probapp => r.absorb(&check_probapp_convergence(&s).map_err(err)?),
                Mode::ApproachLl | Mode::ApproachCoprime => {
                    return Err("tower modes apply to space files, not convergence files".into())
                }
            }
        }
        FileKind::Map => {
            let file: MapFile = parse_json(&text, path).map_err(err)?;
            r.note("kind", "map");
            match file.load(base) {
                Ok(f) => {
                    r.verdict("monotone", None);
                    describe_map(&mut r, &f);
                }
                Err(FormatError::Map(MapError::NotMonotone { a, b, fa, fb })) => {
                    let v = Violation::new("monotone").with("a", a).with("b", b).with("f(a)", fa).with("f(b)", fb);
                    r.verdict("monotone", Some(&v));
                }
                Err(e) => return Err(err(e)),
            }
        }
        FileKind::Relation => {
            let file: RelationFile = parse_json(&text, path).map_err(err)?;
            let (q, rows, cols, _) = file.load(base).map_err(err)?;
            r.note("kind", "relation");
            r.note("shape", format!("{} × {} over {} elements", rows.len(), cols.len(), q.len()));
        }
    }
    Ok(r)
}

fn check_quantale_ref(r: &mut Report, q: &QuantaleRef, base: &Path) -> Result<(), String> {
    let tables = match q {
        QuantaleRef::Tables(t) => t.clone(),
        QuantaleRef::File { file } => {
            let path = base.join(file);
            let inner: QuantaleRef = read_json(&path).map_err(err)?;
            if matches!(inner, QuantaleRef::File { .. }) {
                return Err(format!("{}: quantale file must not point to another file", path.display()));
            }
            return check_quantale_ref(r, &inner, base_dir(&path));
        }
        other => other.resolve(base).map_err(err)?.to_tables(),
    };
    r.note("kind", "quantale");
    let laws = check_quantale(&tables).map_err(err)?;
    r.absorb(&laws);
    if laws.is_ok() {
        let q = Quantale::from_tables(&tables).map_err(err)?;
        r.counts.insert("elements".into(), q.len() as u64);
        r.note("integral", q.is_integral().to_string());
        r.note("commutative", q.is_commutative().to_string());
        r.note("ccd", q.is_ccd().to_string());
        let coprimes: Vec<&str> = q.coprimes().into_iter().map(|p| q.label(p)).collect();
        r.note("coprimes", format!("{{{}}}", coprimes.join(", ")));
    }
    Ok(())
}

fn tower_mode(mode: Mode) -> TowerMode {
    match mode {
        Mode::ApproachLl => TowerMode::ApproachLl,
        Mode::ApproachCoprime => TowerMode::ApproachCoprime,
        _ => TowerMode::Closure,
    }
}

fn check_space(r: &mut Report, space: &Space, mode: Mode) -> Result<(), String> {
    let (s, tower) = match space {
        Space::Distance(s) => {
            r.note("kind", "space (distance)");
            (s.clone(), None)
        }
        Space::Tower(t) => {
            r.note("kind", "space (tower)");
            (t.distances(), Some(t))
        }
    };
    match (mode, tower) {
        (Mode::ApproachLl | Mode::ApproachCoprime, _) => {
            let t = tower.cloned().unwrap_or_else(|| Tower::of(&s));
            r.absorb(&t.check(tower_mode(mode)).map_err(err)?);
        }
        (_, Some(t)) => r.absorb(&t.check(TowerMode::Closure).map_err(err)?),
        (_, None) if mode != Mode::Probapp => r.absorb(&check_closure(&s)),
        _ => {}
    }
    match mode {
        Mode::Approach => r.verdict("approach structure", is_approach(&s).violation()),
        Mode::Probapp => r.absorb(&check_probapp(&s).map_err(err)?),
        _ => {}
    }
    Ok(())
}

fn describe_map(r: &mut Report, f: &MonotoneMap) {
    let class = f.classify();
    r.note("lax homomorphism", class.is_lax_hom.to_string());
    r.note("homomorphism", class.is_hom.to_string());
    r.note("preserves joins", class.preserves_joins.to_string());
    r.note("preserves meets", class.preserves_meets.to_string());
    let table = |m: &MonotoneMap| {
        let (v, w) = (m.source(), m.target());
        let pairs: Vec<String> = v.elements().map(|a| format!("{}↦{}", v.label(a), w.label(m.apply(a)))).collect();
        pairs.join(" ")
    };
    let adj = f.adjoints();
    r.note("left adjoint", adj.left.as_ref().map(table).unwrap_or_else(|| "none".into()));
    r.note("right adjoint", adj.right.as_ref().map(table).unwrap_or_else(|| "none".into()));
}

enum Input {
    Space(Space),
    Convergence(ConvergenceStructure),
}

fn read_input(path: &Path) -> Result<Input, String> {
    let text = read_text(path)?;
    let base = base_dir(path);
    match detect_kind(&text, path).map_err(err)? {
        FileKind::Space => {
            Ok(Input::Space(parse_json::<SpaceFile>(&text, path).and_then(|f| f.load(base)).map_err(err)?))
        }
        FileKind::Convergence => Ok(Input::Convergence(
            parse_json::<ConvergenceFile>(&text, path).and_then(|f| f.load(base)).map_err(err)?,
        )),
        _ => Err(format!("{}: expected a space or convergence file", path.display())),
    }
}

/// Writes `value` to `--output`, or attaches it to the report.
fn emit<T: serde::Serialize>(g: &Global, r: &mut Report, value: &T) -> Result<(), String> {
    match &g.output {
        Some(p) => {
            std::fs::write(p, to_json(value)).map_err(|e| format!("{}: {e}", p.display()))?;
            r.output = Some(p.display().to_string());
        }
        None => r.result = Some(serde_json::to_value(value).map_err(err)?),
    }
    Ok(())
}

/// Closure structure behind a space; `None` after recording the failed axioms.
fn closure_of(r: &mut Report, space: Space) -> Option<DistanceStructure> {
    let (s, laws) = match space {
        Space::Distance(s) => {
            let laws = check_closure(&s);
            (s, laws)
        }
        Space::Tower(t) => {
            let laws = t.check(TowerMode::Closure).expect("closure mode has no capability requirement");
            (t.distances(), laws)
        }
    };
    r.absorb(&laws);
    laws.is_ok().then_some(s)
}

const LICENSE_TOWER: &str = "closure structures and closure towers determine each other";
const LICENSE_R: &str = "R embeds closure spaces into lax ultrafilter algebras, and A_ε R is the identity exactly on approach spaces";
const LICENSE_A: &str = "A_ε sends lax ultrafilter algebras to approach spaces";

pub fn convert(g: &Global, input: &Path, to: Presentation, echo: Vec<String>) -> Result<Report, String> {
    let mut r = Report::new(echo);
    match (read_input(input)?, to) {
        (Input::Space(Space::Distance(s)), Presentation::Distance) => {
            emit(g, &mut r, &SpaceFile::from_distance(&s, QuantaleRef::of(s.quantale())))?;
        }
        (Input::Space(space), Presentation::Distance) => {
            if let Some(s) = closure_of(&mut r, space) {
                r.note("licensed by", LICENSE_TOWER);
                emit(g, &mut r, &SpaceFile::from_distance(&s, QuantaleRef::of(s.quantale())))?;
            }
        }
        (Input::Space(space), Presentation::Tower) => {
            if let Some(s) = closure_of(&mut r, space) {
                r.note("licensed by", LICENSE_TOWER);
                emit(g, &mut r, &SpaceFile::from_tower(&Tower::of(&s), QuantaleRef::of(s.quantale())))?;
            }
        }
        (Input::Space(space), Presentation::Convergence) => {
            if let Some(s) = closure_of(&mut r, space) {
                r.note("licensed by", LICENSE_R);
                let conv = r_functor(&s);
                flag_coreflection(&mut r, &s, &a_epsilon(&conv));
                emit(g, &mut r, &ConvergenceFile::from_structure(&conv, QuantaleRef::of(s.quantale())))?;
            }
        }
        (Input::Convergence(c), Presentation::Convergence) => {
            emit(g, &mut r, &ConvergenceFile::from_structure(&c, QuantaleRef::of(c.quantale())))?;
        }
        (Input::Convergence(c), Presentation::Distance) => {
            r.note("licensed by", LICENSE_A);
            let d = a_epsilon(&c);
            emit(g, &mut r, &SpaceFile::from_distance(&d, QuantaleRef::of(d.quantale())))?;
        }
        (Input::Convergence(c), Presentation::Tower) => {
            r.note("licensed by", LICENSE_A);
            if let Some(d) = closure_of(&mut r, Space::Distance(a_epsilon(&c))) {
                emit(g, &mut r, &SpaceFile::from_tower(&Tower::of(&d), QuantaleRef::of(d.quantale())))?;
            }
        }
    }
    Ok(r)
}

/// Notes every entry the round trip through convergence lowers.
fn flag_coreflection(r: &mut Report, s: &DistanceStructure, back: &DistanceStructure) {
    if back == s {
        r.note("round trip", "exact: the input is an approach structure");
        return;
    }
    r.note("round trip", "lossy: the input is not an approach structure, A_ε R lies strictly below it");
    let (q, c, n) = (s.quantale(), s.carrier(), s.n());
    let mut lowered = 0;
    for a in 0..1usize << n {
        for x in 0..n {
            if back.at(a, x) != s.at(a, x) {
                lowered += 1;
                let key = format!("difference at ({{{}}}, {})", subset_labels(c, a).join(","), c.label(x));
                r.note(&key, format!("{} → {}", q.label(s.at(a, x)), q.label(back.at(a, x))));
            }
        }
    }
    r.counts.insert("entries lowered by the round trip".into(), lowered);
}

/// Anchor for a builtin map: `--builtin`, `--quantale` if it is a builtin,
/// or the input quantale when the map starts there.
fn anchor_for(g: &Global, name: &str, input: &Quantale) -> Result<Builtin, String> {
    if let Some(b) = &g.builtin {
        return b.parse().map_err(err);
    }
    if let Some(p) = &g.quantale {
        let q = vspaces::format::read_quantale(p).map_err(err)?;
        return q.origin().cloned().ok_or_else(|| format!("map `{name}` needs a builtin anchor quantale"));
    }
    let origin = input.origin().cloned();
    match (name, origin) {
        ("downset.sup", Some(Builtin::Downset { base })) => Ok(*base),
        ("pi" | "o" | "rho" | "lambda" | "downset.up" | "downset.down", Some(b)) => Ok(b),
        _ => Err(format!("map `{name}` needs its anchor quantale: pass --builtin")),
    }
}

fn load_map(g: &Global, spec: &str, input: &Arc<Quantale>) -> Result<MonotoneMap, String> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        return read_map(path).map_err(err);
    }
    let anchor = anchor_for(g, spec, input)?;
    builtin_map(spec, &anchor).map_err(err)
}

pub fn basechange(g: &Global, input: &Path, map: &str, reflect_flag: bool, echo: Vec<String>) -> Result<Report, String> {
    let mut r = Report::new(echo);
    let graph: Graph = match read_input(input)? {
        Input::Space(space) => match closure_of(&mut r, space) {
            Some(s) => s.into(),
            None => return Ok(r),
        },
        Input::Convergence(c) => c.into(),
    };
    r.verdicts.clear();
    let phi = load_map(g, map, graph.quantale())?;
    let mut out = b_phi(&graph, &phi).map_err(err)?;
    if reflect_flag {
        out = reflect(&out);
    }
    r.note("map", map);
    r.note("source quantale", describe_quantale(phi.source()));
    r.note("target quantale", describe_quantale(phi.target()));
    r.note("reflected", reflect_flag.to_string());
    r.absorb(&out.check_axioms());
    let target = QuantaleRef::of(phi.target());
    match out.kind() {
        GraphKind::Powerset => emit(g, &mut r, &SpaceFile::from_distance(&out.to_distance().unwrap(), target))?,
        GraphKind::Ultrafilter => {
            emit(g, &mut r, &ConvergenceFile::from_structure(&out.to_convergence().unwrap(), target))?
        }
        GraphKind::Category => unreachable!("inputs are spaces or convergence structures"),
    }
    Ok(r)
}

fn describe_quantale(q: &Quantale) -> String {
    match q.origin() {
        Some(b) => b.to_string(),
        None => format!("explicit ({} elements)", q.len()),
    }
}

pub fn verify(g: &Global, suite: &str, echo: Vec<String>) -> Result<Report, String> {
    let mut r = Report::new(echo);
    let b = g.budget();
    let laws = run_suite(suite, &b).map_err(err)?;
    r.note("suite", suite);
    r.note("budget", format!("max_exhaustive_size={} samples={} seed={}", b.max_exhaustive_size, b.samples, b.seed));
    r.absorb(&laws);
    Ok(r)
}
