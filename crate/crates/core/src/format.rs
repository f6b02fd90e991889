//! JSON file formats for quantales, spaces, convergence structures, maps
//! between quantales and V-relations.
//!
//! Elements are written by label and subsets as label lists in carrier
//! order. A quantale is referenced by builtin descriptor (either the object
//! form `{"builtin": "chain_frame", "n": 3}` or the string form
//! `"chain_frame:3"`), by `{"file": path}` relative to the referring file,
//! or inline as explicit tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convergence::ConvergenceStructure;
use crate::lattice::{Builtin, BuiltinError, Elem, MapError, MonotoneMap, Quantale, QuantaleError, QuantaleTables};
use crate::spaces::{DistanceStructure, SpacesError, Tower};
use crate::vrel::{FiniteSet, VRelation};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Content(String),
    #[error("quantale reference: {0}")]
    Builtin(#[from] BuiltinError),
    #[error("quantale reference: {0}")]
    Quantale(#[from] QuantaleError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Spaces(#[from] SpacesError),
}

fn content(msg: impl Into<String>) -> FormatError {
    FormatError::Content(msg.into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleRef {
    Builtin(Builtin),
    Descriptor(String),
    File { file: PathBuf },
    Tables(QuantaleTables),
}

impl QuantaleRef {
    /// Reference that reproduces `q`: its builtin descriptor when it has one,
    /// otherwise its explicit tables.
    pub fn of(q: &Quantale) -> QuantaleRef {
        match q.origin() {
            Some(b) => QuantaleRef::Descriptor(b.to_string()),
            None => QuantaleRef::Tables(q.to_tables()),
        }
    }

    /// Resolves the reference; `base` is the directory of the referring file.
    pub fn resolve(&self, base: &Path) -> Result<Arc<Quantale>, FormatError> {
        match self {
            QuantaleRef::Builtin(b) => Ok(Quantale::builtin(b)?),
            QuantaleRef::Descriptor(s) => Ok(Quantale::builtin(&s.parse()?)?),
            QuantaleRef::Tables(t) => Ok(Arc::new(Quantale::from_tables(t)?)),
            QuantaleRef::File { file } => {
                let path = base.join(file);
                let r: QuantaleRef = read_json(&path)?;
                if matches!(r, QuantaleRef::File { .. }) {
                    return Err(content(format!("{}: quantale file must not point to another file", path.display())));
                }
                r.resolve(path.parent().unwrap_or(Path::new(".")))
            }
        }
    }
}

/// One row of a distance table: the distances from `subset` to each point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceRow {
    pub subset: Vec<String>,
    pub values: BTreeMap<String, String>,
}

/// One entry of a tower: `c^level(subset) = closure`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRow {
    pub level: String,
    pub subset: Vec<String>,
    pub closure: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "presentation", content = "table", rename_all = "lowercase")]
pub enum SpaceTable {
    Distance(Vec<DistanceRow>),
    Tower(Vec<TowerRow>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub carrier: Vec<String>,
    pub quantale: QuantaleRef,
    #[serde(flatten)]
    pub table: SpaceTable,
}

/// One row of a convergence table: the values `ℓ(ẋ)(y)` for the principal
/// ultrafilter generated by `generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub generator: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceFile {
    pub carrier: Vec<String>,
    pub quantale: QuantaleRef,
    pub table: Vec<ConvergenceRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: QuantaleRef,
    pub target: QuantaleRef,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationFile {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub quantale: QuantaleRef,
    pub entries: BTreeMap<String, BTreeMap<String, String>>,
}

/// A space as read from a file, in the presentation it was written in.
#[derive(Clone, Debug)]
pub enum Space {
    Distance(DistanceStructure),
    Tower(Tower),
}

/// The kind of structure a JSON document describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Quantale,
    Space,
    Convergence,
    Map,
    Relation,
}

/// Parses JSON text, reporting errors with line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::Io { path: path.display().to_string(), source: e })?;
    parse_json(&text, path)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Guesses the kind of a document from its top-level keys.
pub fn detect_kind(text: &str, path: &Path) -> Result<FileKind, FormatError> {
    let v: serde_json::Value = parse_json(text, path)?;
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("source") && has("target") {
        FileKind::Map
    } else if has("presentation") {
        FileKind::Space
    } else if has("rows") && has("cols") {
        FileKind::Relation
    } else if has("carrier") {
        FileKind::Convergence
    } else {
        FileKind::Quantale
    })
}

fn carrier(labels: &[String]) -> Result<FiniteSet, FormatError> {
    FiniteSet::new(labels.to_vec()).map_err(|e| content(e.to_string()))
}

fn elem(q: &Quantale, label: &str) -> Result<Elem, FormatError> {
    q.elem(label).ok_or_else(|| content(format!("unknown quantale element `{label}`")))
}

fn point(c: &FiniteSet, label: &str) -> Result<usize, FormatError> {
    c.index(label).ok_or_else(|| content(format!("unknown point `{label}`")))
}

fn subset_mask(c: &FiniteSet, labels: &[String]) -> Result<usize, FormatError> {
    labels.iter().try_fold(0, |m, l| Ok(m | 1 << point(c, l)?))
}

pub fn subset_labels(c: &FiniteSet, mask: usize) -> Vec<String> {
    (0..c.len()).filter(|&i| mask >> i & 1 == 1).map(|i| c.label(i).to_string()).collect()
}

/// Fills a table from keyed entries, requiring every cell exactly once.
fn fill(
    size: usize,
    entries: impl IntoIterator<Item = (usize, Elem)>,
    what: &str,
    describe: impl Fn(usize) -> String,
) -> Result<Vec<Elem>, FormatError> {
    let mut table: Vec<Option<Elem>> = vec![None; size];
    for (i, e) in entries {
        if table[i].replace(e).is_some() {
            return Err(content(format!("{what} entry {} given twice", describe(i))));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| content(format!("{what} entry {} missing", describe(i)))))
        .collect()
}

impl SpaceFile {
    pub fn load(&self, base: &Path) -> Result<Space, FormatError> {
        let q = self.quantale.resolve(base)?;
        let c = carrier(&self.carrier)?;
        let n = c.len();
        if n > crate::spaces::MAX_POINTS {
            return Err(content(format!("carrier has {n} points, at most {} supported", crate::spaces::MAX_POINTS)));
        }
        match &self.table {
            SpaceTable::Distance(rows) => {
                let mut cells = Vec::new();
                for r in rows {
                    let a = subset_mask(&c, &r.subset)?;
                    if r.values.len() != n {
                        return Err(content(format!("row {} must give a value for each of the {n} points", c.subset_label(a))));
                    }
                    for (x, v) in &r.values {
                        cells.push((a * n + point(&c, x)?, elem(&q, v)?));
                    }
                }
                let table = fill(n << n, cells, "distance", |i| format!("({}, {})", c.subset_label(i / n), c.label(i % n)))?;
                Ok(Space::Distance(DistanceStructure::new(c, q, table)?))
            }
            SpaceTable::Tower(rows) => {
                let mut cells = Vec::new();
                for r in rows {
                    let v = elem(&q, &r.level)?;
                    let a = subset_mask(&c, &r.subset)?;
                    let b = subset_mask(&c, &r.closure)?;
                    cells.push(((v.index() << n) + a, Elem::new(b)));
                }
                let ops = fill(q.len() << n, cells, "tower", |i| {
                    format!("(level {}, {})", q.label(Elem::new(i >> n)), c.subset_label(i & ((1 << n) - 1)))
                })?;
                let ops = ops.into_iter().map(Elem::index).collect();
                Ok(Space::Tower(Tower::new(c, q, ops)?))
            }
        }
    }

    pub fn from_distance(s: &DistanceStructure, quantale: QuantaleRef) -> SpaceFile {
        let (c, q, n) = (s.carrier(), s.quantale(), s.n());
        let rows = (0..1usize << n)
            .map(|a| DistanceRow {
                subset: subset_labels(c, a),
                values: (0..n).map(|x| (c.label(x).to_string(), q.label(s.at(a, x)).to_string())).collect(),
            })
            .collect();
        SpaceFile { carrier: c.labels().to_vec(), quantale, table: SpaceTable::Distance(rows) }
    }

    pub fn from_tower(t: &Tower, quantale: QuantaleRef) -> SpaceFile {
        let (c, q, n) = (t.carrier(), t.quantale(), t.n());
        let mut rows = Vec::new();
        for v in q.elements() {
            for a in 0..1usize << n {
                rows.push(TowerRow {
                    level: q.label(v).to_string(),
                    subset: subset_labels(c, a),
                    closure: subset_labels(c, t.level(v, a)),
                });
            }
        }
        SpaceFile { carrier: c.labels().to_vec(), quantale, table: SpaceTable::Tower(rows) }
    }
}

impl ConvergenceFile {
    pub fn load(&self, base: &Path) -> Result<ConvergenceStructure, FormatError> {
        let q = self.quantale.resolve(base)?;
        let c = carrier(&self.carrier)?;
        let n = c.len();
        let mut cells = Vec::new();
        for r in &self.table {
            let g = point(&c, &r.generator)?;
            for (x, v) in &r.values {
                cells.push((g * n + point(&c, x)?, elem(&q, v)?));
            }
        }
        let table = fill(n * n, cells, "convergence", |i| format!("({}, {})", c.label(i / n), c.label(i % n)))?;
        ConvergenceStructure::new(c, q, table).map_err(|e| content(e.to_string()))
    }

    pub fn from_structure(s: &ConvergenceStructure, quantale: QuantaleRef) -> ConvergenceFile {
        let (c, q, n) = (s.carrier(), s.quantale(), s.n());
        let table = (0..n)
            .map(|g| ConvergenceRow {
                generator: c.label(g).to_string(),
                values: (0..n).map(|x| (c.label(x).to_string(), q.label(s.table()[g * n + x]).to_string())).collect(),
            })
            .collect();
        ConvergenceFile { carrier: c.labels().to_vec(), quantale, table }
    }
}

impl MapFile {
    pub fn load(&self, base: &Path) -> Result<MonotoneMap, FormatError> {
        let (v, w) = (self.source.resolve(base)?, self.target.resolve(base)?);
        let mut cells = Vec::new();
        for (a, b) in &self.map {
            cells.push((elem(&v, a)?.index(), elem(&w, b)?));
        }
        let table = fill(v.len(), cells, "map", |i| v.label(Elem::new(i)).to_string())?;
        Ok(MonotoneMap::new(v, w, table)?)
    }

    pub fn from_map(f: &MonotoneMap) -> MapFile {
        let (v, w) = (f.source(), f.target());
        MapFile {
            source: QuantaleRef::of(v),
            target: QuantaleRef::of(w),
            map: v.elements().map(|a| (v.label(a).to_string(), w.label(f.apply(a)).to_string())).collect(),
        }
    }
}

impl RelationFile {
    pub fn load(&self, base: &Path) -> Result<(Arc<Quantale>, FiniteSet, FiniteSet, VRelation), FormatError> {
        let q = self.quantale.resolve(base)?;
        let (rows, cols) = (carrier(&self.rows)?, carrier(&self.cols)?);
        let m = cols.len();
        let mut cells = Vec::new();
        for (x, row) in &self.entries {
            let i = point(&rows, x)?;
            for (y, v) in row {
                cells.push((i * m + point(&cols, y)?, elem(&q, v)?));
            }
        }
        let entries = fill(rows.len() * m, cells, "relation", |i| format!("({}, {})", rows.label(i / m), cols.label(i % m)))?;
        let r = VRelation::new(rows.len(), m, entries).map_err(|e| content(e.to_string()))?;
        Ok((q, rows, cols, r))
    }

    pub fn from_relation(q: &Quantale, rows: &FiniteSet, cols: &FiniteSet, r: &VRelation) -> RelationFile {
        RelationFile {
            rows: rows.labels().to_vec(),
            cols: cols.labels().to_vec(),
            quantale: QuantaleRef::of(q),
            entries: (0..rows.len())
                .map(|x| {
                    let row = (0..cols.len()).map(|y| (cols.label(y).to_string(), q.label(r.at(x, y)).to_string()));
                    (rows.label(x).to_string(), row.collect())
                })
                .collect(),
        }
    }
}

pub fn read_space(path: &Path) -> Result<Space, FormatError> {
    read_json::<SpaceFile>(path)?.load(base_dir(path))
}

pub fn read_convergence(path: &Path) -> Result<ConvergenceStructure, FormatError> {
    read_json::<ConvergenceFile>(path)?.load(base_dir(path))
}

pub fn read_map(path: &Path) -> Result<MonotoneMap, FormatError> {
    read_json::<MapFile>(path)?.load(base_dir(path))
}

pub fn read_quantale(path: &Path) -> Result<Arc<Quantale>, FormatError> {
    read_json::<QuantaleRef>(path)?.resolve(base_dir(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::check_closure;

    fn two() -> Arc<Quantale> {
        Quantale::builtin(&Builtin::TwoChain).unwrap()
    }

    #[test]
    fn quantale_references() {
        let here = Path::new(".");
        let a: QuantaleRef = parse_json(r#"{"builtin": "chain_frame", "n": 3}"#, here).unwrap();
        let b: QuantaleRef = parse_json(r#""chain_frame:3""#, here).unwrap();
        assert_eq!(*a.resolve(here).unwrap(), *b.resolve(here).unwrap());
        let t: QuantaleRef = parse_json(&to_json(&two().to_tables()), here).unwrap();
        assert!(matches!(t, QuantaleRef::Tables(_)));
        assert_eq!(*t.resolve(here).unwrap(), *two());
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_json::<SpaceFile>("{\n  \"carrier\": [\"x\",\n", Path::new("s.json")).unwrap_err();
        match e {
            FormatError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn space_round_trips() {
        let c = FiniteSet::new(vec!["x".into(), "y".into()]).unwrap();
        let s = DistanceStructure::membership(c, two()).unwrap();
        let file = SpaceFile::from_distance(&s, QuantaleRef::of(&two()));
        let text = to_json(&file);
        let back: SpaceFile = parse_json(&text, Path::new(".")).unwrap();
        let Space::Distance(d) = back.load(Path::new(".")).unwrap() else { panic!() };
        assert_eq!(d, s);
        assert!(check_closure(&d).is_ok());

        let t = Tower::of(&s);
        let text = to_json(&SpaceFile::from_tower(&t, QuantaleRef::of(&two())));
        assert!(text.contains("\"presentation\": \"tower\""));
        let Space::Tower(t2) = parse_json::<SpaceFile>(&text, Path::new(".")).unwrap().load(Path::new(".")).unwrap()
        else {
            panic!()
        };
        assert_eq!(t2.ops(), t.ops());
    }

    #[test]
    fn missing_and_duplicate_cells() {
        let text = r#"{"carrier": ["x"], "quantale": "two_chain", "presentation": "distance",
            "table": [{"subset": [], "values": {"x": "bot"}}]}"#;
        let e = parse_json::<SpaceFile>(text, Path::new(".")).unwrap().load(Path::new(".")).unwrap_err();
        assert!(e.to_string().contains("missing"), "{e}");
        let text = r#"{"carrier": ["x"], "quantale": "two_chain",
            "table": [{"generator": "x", "values": {"x": "top"}}, {"generator": "x", "values": {"x": "top"}}]}"#;
        let e = parse_json::<ConvergenceFile>(text, Path::new(".")).unwrap().load(Path::new(".")).unwrap_err();
        assert!(e.to_string().contains("twice"), "{e}");
    }

    #[test]
    fn map_and_relation_round_trip() {
        let v = Quantale::builtin(&Builtin::ChainFrame { n: 3 }).unwrap();
        let f = MonotoneMap::identity(v.clone());
        let back = parse_json::<MapFile>(&to_json(&MapFile::from_map(&f)), Path::new(".")).unwrap();
        assert_eq!(back.load(Path::new(".")).unwrap(), f);

        let c = FiniteSet::points(2);
        let r = VRelation::identity(&v, 2);
        let file = RelationFile::from_relation(&v, &c, &c, &r);
        let (_, _, _, r2) = parse_json::<RelationFile>(&to_json(&file), Path::new(".")).unwrap().load(Path::new(".")).unwrap();
        assert_eq!(r2, r);
    }

    #[test]
    fn kinds_are_detected() {
        let p = Path::new(".");
        assert_eq!(detect_kind(r#"{"builtin": "two_chain"}"#, p).unwrap(), FileKind::Quantale);
        assert_eq!(detect_kind(r#"{"carrier": [], "presentation": "distance"}"#, p).unwrap(), FileKind::Space);
        assert_eq!(detect_kind(r#"{"carrier": [], "table": []}"#, p).unwrap(), FileKind::Convergence);
        assert_eq!(detect_kind(r#"{"source": 1, "target": 2}"#, p).unwrap(), FileKind::Map);
    }
}
