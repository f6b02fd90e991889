//! Built-in quantale families.
//!
//! The infinite quantales `[0,∞]`, `[0,1]` and `Δ` are modelled by finite
//! sub-quantales:
//!
//! * `cost_grid(times)` is `{t_0 = 0 < t_1 < … < t_{n-1}} ∪ {∞}` ordered by
//!   `≥`, with addition truncated to `∞` once it leaves the grid; the grid
//!   must be closed in the sense that every finite sum not exceeding the
//!   largest point is itself a point. `cost_chain(M)` is the grid `0..=M`.
//! * `value_chain(values, tnorm)` is a finite subset of `[0,1]` containing
//!   `0` and `1` and closed under the t-norm. `unit_grid(m, tnorm)` uses
//!   `{0, 1/m, …, 1}`.
//! * `delta_grid(times, values, tnorm)` consists of distance distribution
//!   functions that are step functions on the intervals
//!   `(t_0,t_1], …, (t_{n-2},t_{n-1}], (t_{n-1},∞]` with values in the value
//!   grid, and vanish at `0`. The last interval behaves as a single point at
//!   infinity, so convolution only counts sums that stay on the grid.
//!   Step functions constant on left-open intervals are left-continuous, so
//!   no separate continuity condition is stored.
//! * `downset(q)` is the quantale of down-closed subsets of `q` under
//!   inclusion, with `A ⊙ B = ↓{a ⊗ b}` and unit `↓k`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Elem, Quantale, QuantaleError};

pub type Value = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    Min,
    Lukasiewicz,
}

impl TNorm {
    pub fn apply(self, a: Value, b: Value) -> Value {
        match self {
            TNorm::Min => a.min(b),
            TNorm::Lukasiewicz => (a + b - Value::from_integer(1)).max(Value::from_integer(0)),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TNorm::Min => "min",
            TNorm::Lukasiewicz => "lukasiewicz",
        })
    }
}

impl FromStr for TNorm {
    type Err = BuiltinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(TNorm::Min),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(BuiltinError::Syntax(format!("unknown t-norm `{other}`"))),
        }
    }
}

/// Descriptor of a built-in quantale, as written in quantale files.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case")]
pub enum Builtin {
    Terminal,
    TwoChain,
    ChainFrame { n: usize },
    CostChain { max: u64 },
    CostGrid { times: Vec<u64> },
    UnitGrid { m: u32, tnorm: TNorm },
    ValueChain { values: Vec<String>, tnorm: TNorm },
    DeltaGrid { times: Vec<u64>, values: Vec<String>, tnorm: TNorm },
    Downset { base: Box<Builtin> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("grid not closed under {op}: {a} and {b} give {result}")]
    NotClosed { op: &'static str, a: String, b: String, result: String },
    #[error("cannot parse builtin descriptor: {0}")]
    Syntax(String),
    #[error("carrier too large: {0} elements")]
    TooLarge(usize),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

/// Largest carrier a builtin may produce.
const MAX_ELEMENTS: usize = 4096;

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Builtin::Terminal => write!(f, "terminal"),
            Builtin::TwoChain => write!(f, "two_chain"),
            Builtin::ChainFrame { n } => write!(f, "chain_frame:{n}"),
            Builtin::CostChain { max } => write!(f, "cost_chain:{max}"),
            Builtin::CostGrid { times } => write!(f, "cost_grid:{}", join(times)),
            Builtin::UnitGrid { m, tnorm } => write!(f, "unit_grid:{m}:{tnorm}"),
            Builtin::ValueChain { values, tnorm } => {
                write!(f, "value_chain:{}:{tnorm}", values.join(","))
            }
            Builtin::DeltaGrid { times, values, tnorm } => {
                write!(f, "delta_grid:{}:{}:{tnorm}", join(times), values.join(","))
            }
            Builtin::Downset { base } => write!(f, "downset:{base}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = BuiltinError;

    /// Parses the command-line syntax, e.g. `chain_frame:3`,
    /// `delta_grid:0,1:0,1/2,1:lukasiewicz` or `downset:chain_frame:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let syntax = |msg: &str| BuiltinError::Syntax(format!("{s}: {msg}"));
        let parts: Vec<&str> = rest.map(|r| r.split(':').collect()).unwrap_or_default();
        let nums = |p: &str| -> Result<Vec<u64>, BuiltinError> {
            p.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| syntax("expected integer list")))
                .collect()
        };
        let strs = |p: &str| p.split(',').map(|t| t.trim().to_string()).collect::<Vec<_>>();
        let arity = |k: usize| {
            if parts.len() == k {
                Ok(())
            } else {
                Err(syntax(&format!("expected {k} parameter(s)")))
            }
        };
        match name {
            "terminal" => arity(0).map(|_| Builtin::Terminal),
            "two_chain" => arity(0).map(|_| Builtin::TwoChain),
            "chain_frame" => {
                arity(1)?;
                let n = parts[0].parse().map_err(|_| syntax("expected size"))?;
                Ok(Builtin::ChainFrame { n })
            }
            "cost_chain" => {
                arity(1)?;
                let max = parts[0].parse().map_err(|_| syntax("expected bound"))?;
                Ok(Builtin::CostChain { max })
            }
            "cost_grid" => {
                arity(1)?;
                Ok(Builtin::CostGrid { times: nums(parts[0])? })
            }
            "unit_grid" => {
                arity(2)?;
                let m = parts[0].parse().map_err(|_| syntax("expected grid size"))?;
                Ok(Builtin::UnitGrid { m, tnorm: parts[1].parse()? })
            }
            "value_chain" => {
                arity(2)?;
                Ok(Builtin::ValueChain { values: strs(parts[0]), tnorm: parts[1].parse()? })
            }
            "delta_grid" => {
                arity(3)?;
                Ok(Builtin::DeltaGrid {
                    times: nums(parts[0])?,
                    values: strs(parts[1]),
                    tnorm: parts[2].parse()?,
                })
            }
            "downset" => {
                let inner = rest.ok_or_else(|| syntax("expected base quantale"))?;
                Ok(Builtin::Downset { base: Box::new(inner.parse()?) })
            }
            other => Err(BuiltinError::Syntax(format!("unknown builtin `{other}`"))),
        }
    }
}

pub(super) fn build(spec: &Builtin) -> Result<Quantale, BuiltinError> {
    let origin = Some(spec.clone());
    match spec {
        Builtin::Terminal => Ok(Quantale::from_fns(vec!["*".into()], |_, _| true, |_, _| 0, 0, origin)?),
        Builtin::TwoChain => Ok(Quantale::from_fns(
            vec!["bot".into(), "top".into()],
            |a, b| a <= b,
            |a, b| a.min(b),
            1,
            origin,
        )?),
        Builtin::ChainFrame { n } => {
            if *n == 0 {
                return Err(BuiltinError::Parameter("chain_frame needs n ≥ 1".into()));
            }
            if *n > MAX_ELEMENTS {
                return Err(BuiltinError::TooLarge(*n));
            }
            let labels = (0..*n).map(|i| i.to_string()).collect();
            Ok(Quantale::from_fns(labels, |a, b| a <= b, |a, b| a.min(b), n - 1, origin)?)
        }
        Builtin::CostChain { max } => {
            if *max as usize >= MAX_ELEMENTS {
                return Err(BuiltinError::TooLarge(*max as usize + 2));
            }
            let times: Vec<u64> = (0..=*max).collect();
            build_cost(&times, origin)
        }
        Builtin::CostGrid { times } => build_cost(times, origin),
        Builtin::UnitGrid { m, tnorm } => {
            if *m == 0 {
                return Err(BuiltinError::Parameter("unit_grid needs m ≥ 1".into()));
            }
            if *m as usize >= MAX_ELEMENTS {
                return Err(BuiltinError::TooLarge(*m as usize + 1));
            }
            let values: Vec<Value> = (0..=*m as i64).map(|i| Value::new(i, *m as i64)).collect();
            build_value_chain(&values, *tnorm, origin)
        }
        Builtin::ValueChain { values, tnorm } => {
            build_value_chain(&parse_values(values)?, *tnorm, origin)
        }
        Builtin::DeltaGrid { times, values, tnorm } => {
            let model = DeltaModel::new(times, &parse_values(values)?, *tnorm)?;
            model.build(origin)
        }
        Builtin::Downset { base } => {
            let base = build(base)?;
            build_downset(&base, origin)
        }
    }
}

fn parse_values(values: &[String]) -> Result<Vec<Value>, BuiltinError> {
    values
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Value>()
                .map_err(|_| BuiltinError::Parameter(format!("`{s}` is not a rational number")))
        })
        .collect()
}

fn check_times(times: &[u64]) -> Result<(), BuiltinError> {
    if times.first() != Some(&0) {
        return Err(BuiltinError::Parameter("time grid must start at 0".into()));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BuiltinError::Parameter("time grid must be strictly increasing".into()));
    }
    if times.len() >= MAX_ELEMENTS {
        return Err(BuiltinError::TooLarge(times.len() + 1));
    }
    let last = *times.last().unwrap();
    for &a in times {
        for &b in times {
            let s = a.saturating_add(b);
            if s <= last && times.binary_search(&s).is_err() {
                return Err(BuiltinError::NotClosed {
                    op: "truncated addition",
                    a: a.to_string(),
                    b: b.to_string(),
                    result: s.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Truncated addition on a closed time grid; `None` stands for `∞`.
fn add_times(times: &[u64], a: Option<usize>, b: Option<usize>) -> Option<usize> {
    let s = times[a?].checked_add(times[b?])?;
    times.binary_search(&s).ok()
}

fn build_cost(times: &[u64], origin: Option<Builtin>) -> Result<Quantale, BuiltinError> {
    check_times(times)?;
    let n = times.len();
    let mut labels: Vec<String> = times.iter().map(u64::to_string).collect();
    labels.push("inf".into());
    let as_time = |i: usize| (i < n).then_some(i);
    Ok(Quantale::from_fns(
        labels,
        // index order agrees with numeric order, and the quantale order is ≥
        |a, b| a >= b,
        |a, b| add_times(times, as_time(a), as_time(b)).unwrap_or(n),
        0,
        origin,
    )?)
}

fn check_values(values: &[Value], tnorm: TNorm) -> Result<(), BuiltinError> {
    let zero = Value::from_integer(0);
    let one = Value::from_integer(1);
    if values.first() != Some(&zero) || values.last() != Some(&one) {
        return Err(BuiltinError::Parameter("value grid must run from 0 to 1".into()));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BuiltinError::Parameter("value grid must be strictly increasing".into()));
    }
    if values.len() > MAX_ELEMENTS {
        return Err(BuiltinError::TooLarge(values.len()));
    }
    for &a in values {
        for &b in values {
            let r = tnorm.apply(a, b);
            if values.binary_search(&r).is_err() {
                return Err(BuiltinError::NotClosed {
                    op: "the t-norm",
                    a: a.to_string(),
                    b: b.to_string(),
                    result: r.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn build_value_chain(values: &[Value], tnorm: TNorm, origin: Option<Builtin>) -> Result<Quantale, BuiltinError> {
    check_values(values, tnorm)?;
    let labels = values.iter().map(Value::to_string).collect();
    let idx = |v: Value| values.binary_search(&v).unwrap();
    Ok(Quantale::from_fns(
        labels,
        |a, b| a <= b,
        |a, b| idx(tnorm.apply(values[a], values[b])),
        values.len() - 1,
        origin,
    )?)
}

/// Finite model of the quantale of distance distribution functions.
///
/// Element `e` is a non-decreasing vector of value indices, one per interval;
/// interval `i` (0-based) is `(t_i, t_{i+1}]`, the last one `(t_{n-1}, ∞]`.
#[derive(Clone, Debug)]
pub struct DeltaModel {
    times: Vec<u64>,
    values: Vec<Value>,
    tnorm: TNorm,
    vectors: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl DeltaModel {
    pub fn new(times: &[u64], values: &[Value], tnorm: TNorm) -> Result<DeltaModel, BuiltinError> {
        check_times(times)?;
        check_values(values, tnorm)?;
        let intervals = times.len();
        let mut vectors = Vec::new();
        let mut current = Vec::with_capacity(intervals);
        fn rec(cur: &mut Vec<usize>, len: usize, m: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..m {
                if out.len() > MAX_ELEMENTS {
                    return;
                }
                cur.push(v);
                rec(cur, len, m, out);
                cur.pop();
            }
        }
        rec(&mut current, intervals, values.len(), &mut vectors);
        if vectors.len() > MAX_ELEMENTS {
            return Err(BuiltinError::TooLarge(vectors.len()));
        }
        let index = vectors.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(DeltaModel { times: times.to_vec(), values: values.to_vec(), tnorm, vectors, index })
    }

    /// The model behind a quantale built from a `delta_grid` descriptor.
    pub fn of(q: &Quantale) -> Option<DeltaModel> {
        match q.origin()? {
            Builtin::DeltaGrid { times, values, tnorm } => {
                DeltaModel::new(times, &parse_values(values).ok()?, *tnorm).ok()
            }
            _ => None,
        }
    }

    fn build(&self, origin: Option<Builtin>) -> Result<Quantale, BuiltinError> {
        let labels = self.vectors.iter().map(|v| self.vector_label(v)).collect();
        let n = self.times.len();
        let unit = self.index[&vec![self.values.len() - 1; n]];
        Ok(Quantale::from_fns(
            labels,
            |a, b| self.vectors[a].iter().zip(&self.vectors[b]).all(|(x, y)| x <= y),
            |a, b| self.index[&self.convolve(&self.vectors[a], &self.vectors[b])],
            unit,
            origin,
        )?)
    }

    fn vector_label(&self, v: &[usize]) -> String {
        let parts: Vec<String> = v.iter().map(|&i| self.values[i].to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// `(φ ⊙ ψ)` on interval `k` is the join of `φ_i & ψ_j` over pairs whose
    /// left endpoints sum to at most the left endpoint of interval `k`.
    pub fn convolve(&self, phi: &[usize], psi: &[usize]) -> Vec<usize> {
        let n = self.times.len();
        (0..n)
            .map(|k| {
                let mut best = 0;
                for (i, &p) in phi.iter().enumerate() {
                    for (j, &q) in psi.iter().enumerate() {
                        if self.times[i] + self.times[j] <= self.times[k] {
                            let v = self.tnorm.apply(self.values[p], self.values[q]);
                            best = best.max(self.values.binary_search(&v).unwrap());
                        }
                    }
                }
                best
            })
            .collect()
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn intervals(&self) -> usize {
        self.times.len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, e: Elem) -> &[usize] {
        &self.vectors[e.index()]
    }

    pub fn element(&self, vector: &[usize]) -> Option<Elem> {
        self.index.get(vector).map(|&i| Elem::new(i))
    }

    /// `σ(α)`: `0` up to `α`, `1` beyond; `None` stands for `α = ∞`.
    pub fn sigma(&self, time: Option<usize>) -> Elem {
        let top = self.values.len() - 1;
        let v = (0..self.intervals())
            .map(|i| match time {
                Some(t) if i >= t => top,
                _ => 0,
            })
            .collect::<Vec<_>>();
        self.element(&v).unwrap()
    }

    /// `τ(u)`: the constant `u` on every interval.
    pub fn tau(&self, value: usize) -> Elem {
        self.element(&vec![value; self.intervals()]).unwrap()
    }

    /// Index of the value grid point `v`, if present.
    pub fn value_index(&self, v: Value) -> Option<usize> {
        self.values.binary_search(&v).ok()
    }

    /// Time-grid quantale matching this model, for pairing with `σ`, `ρ`, `λ`.
    pub fn time_quantale(&self) -> Builtin {
        Builtin::CostGrid { times: self.times.clone() }
    }

    /// Value-grid quantale matching this model, for pairing with `τ`.
    pub fn value_quantale(&self) -> Builtin {
        Builtin::ValueChain { values: self.values.iter().map(Value::to_string).collect(), tnorm: self.tnorm }
    }
}

/// Down-set quantale, with the base recoverable from each label.
fn build_downset(base: &Quantale, origin: Option<Builtin>) -> Result<Quantale, BuiltinError> {
    let n = base.len();
    if n > 24 {
        return Err(BuiltinError::TooLarge(n));
    }
    let down: Vec<u32> = base
        .elements()
        .map(|b| base.elements().filter(|&a| base.leq(a, b)).fold(0, |m, a| m | 1 << a.index()))
        .collect();
    let sets: Vec<u32> = (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || down[i] & !s == 0))
        .collect();
    if sets.len() > MAX_ELEMENTS {
        return Err(BuiltinError::TooLarge(sets.len()));
    }
    let pos: HashMap<u32, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let labels = sets.iter().map(|&s| downset_label(base, s)).collect();
    let tensor = |a: usize, b: usize| {
        let (sa, sb) = (sets[a], sets[b]);
        let mut out = 0u32;
        for i in (0..n).filter(|i| sa >> i & 1 == 1) {
            for j in (0..n).filter(|j| sb >> j & 1 == 1) {
                out |= down[base.tensor(Elem::new(i), Elem::new(j)).index()];
            }
        }
        pos[&out]
    };
    let unit = pos[&down[base.unit().index()]];
    Ok(Quantale::from_fns(labels, |a, b| sets[a] & !sets[b] == 0, tensor, unit, origin)?)
}

fn downset_label(base: &Quantale, set: u32) -> String {
    let members: Vec<&str> = base
        .elements()
        .filter(|e| set >> e.index() & 1 == 1)
        .map(|e| base.label(e))
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Members of the down-set `d`, read back through the base quantale.
pub fn downset_members(base: &Quantale, d: &Quantale, e: Elem) -> Vec<Elem> {
    let label = d.label(e);
    let inner = &label[1..label.len() - 1];
    if inner.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.extend(base.elem(&inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.extend(base.elem(&inner[start..]));
    out
}

/// The down-set quantale element with exactly the given members.
pub fn downset_element(base: &Quantale, d: &Quantale, members: &[Elem]) -> Option<Elem> {
    let mut ms = members.to_vec();
    ms.sort();
    ms.dedup();
    let set: u32 = ms.iter().fold(0, |m, e| m | 1 << e.index());
    d.elem(&downset_label(base, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::check_quantale;

    fn q(s: &str) -> Quantale {
        build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn descriptors_round_trip_through_text() {
        for s in [
            "terminal",
            "two_chain",
            "chain_frame:3",
            "cost_chain:3",
            "cost_grid:0,1,2",
            "unit_grid:4:lukasiewicz",
            "value_chain:0,1/2,1:min",
            "delta_grid:0,1:0,1/2,1:lukasiewicz",
            "downset:chain_frame:3",
        ] {
            let b: Builtin = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
            let json = serde_json::to_string(&b).unwrap();
            assert_eq!(serde_json::from_str::<Builtin>(&json).unwrap(), b);
        }
    }

    #[test]
    fn json_descriptor_shape() {
        let b: Builtin = serde_json::from_str(r#"{"builtin":"chain_frame","n":3}"#).unwrap();
        assert_eq!(b, Builtin::ChainFrame { n: 3 });
    }

    #[test]
    fn builtins_pass_their_laws() {
        for s in ["terminal", "two_chain", "chain_frame:4", "cost_chain:3", "unit_grid:4:lukasiewicz", "unit_grid:3:min"] {
            let quantale = q(s);
            assert!(check_quantale(&quantale.to_tables()).unwrap().is_ok(), "{s}");
        }
    }

    #[test]
    fn cost_chain_arithmetic() {
        let c = q("cost_chain:3");
        let e = |s| c.elem(s).unwrap();
        assert_eq!(c.tensor(e("1"), e("2")), e("3"));
        assert_eq!(c.tensor(e("2"), e("2")), e("inf"));
        assert_eq!(c.bottom(), e("inf"));
        assert_eq!(c.top(), e("0"));
        assert_eq!(c.join(e("1"), e("3")), e("1"));
        assert!(c.is_integral());
    }

    #[test]
    fn unclosed_grids_name_the_pair() {
        let err = build(&"cost_grid:0,1,3".parse().unwrap()).unwrap_err();
        assert!(matches!(err, BuiltinError::NotClosed { ref a, ref b, .. } if a == "1" && b == "1"));
        let err = build(&"value_chain:0,1/2,2/3,1:lukasiewicz".parse().unwrap()).unwrap_err();
        assert!(matches!(err, BuiltinError::NotClosed { .. }));
    }

    #[test]
    fn delta_grid_convolution_examples() {
        let d = q("delta_grid:0,1:0,1/2,1:lukasiewicz");
        let m = DeltaModel::of(&d).unwrap();
        assert_eq!(d.len(), 6);
        let half = m.value_index(Value::new(1, 2)).unwrap();
        let s1 = m.sigma(Some(1));
        assert_eq!(d.label(d.tensor(s1, m.tau(half))), "(0,1/2)");
        assert_eq!(d.tensor(s1, s1), d.bottom());
        assert_eq!(m.sigma(None), d.bottom());
        assert_eq!(m.sigma(Some(0)), d.unit());
        assert!(d.is_integral());
    }

    #[test]
    fn downset_of_three_chain_is_four_chain() {
        let base = q("chain_frame:3");
        let d = q("downset:chain_frame:3");
        assert_eq!(d.len(), 4);
        assert_eq!(d.label(d.unit()), "{0,1,2}");
        assert_eq!(d.label(d.bottom()), "{}");
        let members = downset_members(&base, &d, d.unit());
        assert_eq!(members.len(), 3);
        assert_eq!(downset_element(&base, &d, &members), Some(d.unit()));
        for a in d.elements() {
            for b in d.elements() {
                assert!(d.leq(a, b) || d.leq(b, a));
            }
        }
    }
}
