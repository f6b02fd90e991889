//! Checking conditions (a)–(f) of a lax distributive law on small carriers.
//!
//! Inputs drawn from first-order spaces (`TX`, `V^X`, maps `X → Y`) are
//! enumerated. Inputs from higher-order spaces (`T(V^{V^X})`, `TT(V^X)`,
//! maps `Z → V^X`) are enumerated when they fit under
//! [`LawBudget::exhaustive_limit`] and drawn from a seeded generator
//! otherwise.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{FnSpace, LaxLaw, MonadKind, TCarrier, TElem, VrelError};
use crate::budget::Budget;
use crate::lattice::{Elem, Quantale};
use crate::report::{LawReport, Violation};

pub const LAW_A: &str = "(a) lax naturality";
pub const LAW_B: &str = "(b) lax P_V-unit law";
pub const LAW_C: &str = "(c) lax P_V-multiplication law";
pub const LAW_D: &str = "(d) lax T-unit law";
pub const LAW_E: &str = "(e) lax T-multiplication law";
pub const LAW_F: &str = "(f) monotonicity";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawBudget {
    /// Carriers `X`, `Y`, `Z` range over sizes `0..=max_carrier`.
    pub max_carrier: usize,
    /// Samples per condition and carrier size for higher-order inputs.
    pub samples: usize,
    pub seed: u64,
    /// Input spaces up to this size are enumerated instead of sampled.
    pub exhaustive_limit: usize,
}

impl Default for LawBudget {
    fn default() -> Self {
        LawBudget { max_carrier: 2, samples: 200, seed: 0, exhaustive_limit: 4096 }
    }
}

impl LawBudget {
    fn rng(&self, stream: &str) -> ChaCha8Rng {
        Budget::new(0, 1, self.seed).rng(stream)
    }
}

struct Cond {
    name: &'static str,
    first: Option<Violation>,
    evaluations: u64,
}

impl Cond {
    fn new(name: &'static str) -> Self {
        Cond { name, first: None, evaluations: 0 }
    }

    fn check(&mut self, q: &Quantale, lhs: Elem, rhs: Elem, witness: impl FnOnce() -> Vec<(String, String)>) {
        self.evaluations += 1;
        if self.first.is_none() && !q.leq(lhs, rhs) {
            let mut v = Violation::new(self.name);
            v.witness = witness();
            v.witness.push(("lhs".into(), q.label(lhs).into()));
            v.witness.push(("rhs".into(), q.label(rhs).into()));
            self.first = Some(v);
        }
    }

    fn finish(self, report: &mut LawReport) {
        report.count(&format!("{} evaluations", self.name), self.evaluations);
        report.record(self.name, self.first);
    }
}

fn point(x: usize) -> String {
    format!("x{x}")
}

/// Elements of `T` over a set of `universe` points: all of them when there
/// are at most `limit`, otherwise `samples` seeded draws of small subsets or
/// principal ultrafilters.
fn t_inputs(
    kind: MonadKind,
    universe: usize,
    budget: &LawBudget,
    rng: &mut ChaCha8Rng,
) -> (Vec<TElem>, bool) {
    let exhaustive = match kind {
        MonadKind::Powerset => universe < 20 && 1usize << universe <= budget.exhaustive_limit,
        MonadKind::Ultrafilter => universe <= budget.exhaustive_limit,
    };
    if exhaustive {
        let c = TCarrier { kind, n: universe };
        return (c.all().collect(), true);
    }
    let draws = (0..budget.samples)
        .map(|_| random_t(kind, universe, rng))
        .collect();
    (draws, false)
}

fn random_t(kind: MonadKind, universe: usize, rng: &mut ChaCha8Rng) -> TElem {
    match kind {
        MonadKind::Powerset => {
            let k = rng.gen_range(0..=universe.min(4));
            TElem::set(sample(rng, universe, k).into_vec())
        }
        MonadKind::Ultrafilter => TElem::principal(rng.gen_range(0..universe), universe),
    }
}

/// Checks conditions (a)–(f) for `law` over `q`.
pub fn check_lax_law(law: &dyn LaxLaw, q: &Quantale, budget: &LawBudget) -> Result<LawReport, VrelError> {
    let kind = law.kind();
    let mut report = LawReport::new();
    let mut a = Cond::new(LAW_A);
    let mut b = Cond::new(LAW_B);
    let mut c = Cond::new(LAW_C);
    let mut d = Cond::new(LAW_D);
    let mut e = Cond::new(LAW_E);
    let mut f = Cond::new(LAW_F);
    for n in 0..=budget.max_carrier {
        let ctx = Ctx::new(law, q, kind, n)?;
        for m in 0..=budget.max_carrier {
            ctx.naturality(m, budget, &mut a, &mut report)?;
        }
        ctx.pv_unit(&mut b)?;
        ctx.pv_mult(budget, &mut c, &mut report)?;
        ctx.t_unit(&mut d)?;
        ctx.t_mult(budget, &mut e, &mut report)?;
        ctx.monotone(budget, &mut f)?;
    }
    for cond in [a, b, c, d, e, f] {
        cond.finish(&mut report);
    }
    Ok(report)
}

struct Ctx<'a> {
    law: &'a dyn LaxLaw,
    q: &'a Quantale,
    kind: MonadKind,
    n: usize,
    tx: TCarrier,
    fx: FnSpace,
}

impl<'a> Ctx<'a> {
    fn new(law: &'a dyn LaxLaw, q: &'a Quantale, kind: MonadKind, n: usize) -> Result<Self, VrelError> {
        Ok(Ctx { law, q, kind, n, tx: TCarrier::new(kind, n)?, fx: FnSpace::of(q, n)? })
    }

    /// `λ_X(s)(t)` with `s` over codes of `V^X`.
    fn lam(&self, s: &TElem, t: &TElem) -> Result<Elem, VrelError> {
        self.law.apply(self.q, s, t, &|sigma, x| self.fx.eval(sigma, x))
    }

    fn render_s(&self, s: &TElem) -> String {
        s.render(|sigma| self.fx.render(self.q, sigma))
    }

    fn record_mode(&self, report: &mut LawReport, law: &str, exhaustive: bool, count: usize) {
        let key = if exhaustive { "enumerated" } else { "sampled" };
        report.count(&format!("{law} {key} inputs"), count as u64);
    }

    fn naturality(&self, m: usize, budget: &LawBudget, cond: &mut Cond, report: &mut LawReport) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let ty = TCarrier::new(self.kind, m)?;
        let fy = FnSpace::of(q, m)?;
        if m == 0 && self.n > 0 {
            return Ok(());
        }
        let maps = m.pow(self.n as u32);
        let mut rng = budget.rng(&format!("a/{}/{}", self.n, m));
        let (inputs, exhaustive) = t_inputs(self.kind, fx.len(), budget, &mut rng);
        self.record_mode(report, LAW_A, exhaustive, inputs.len() * maps);
        for code in 0..maps {
            let f: Vec<usize> = (0..self.n).map(|x| code / m.pow(x as u32) % m).collect();
            let push = |sigma: usize| {
                fy.encode_fn(|y| q.join_all((0..self.n).filter(|&x| f[x] == y).map(|x| fx.eval(sigma, x))))
            };
            for s in &inputs {
                let pushed = s.map(push, fy.len());
                let mut lhs = vec![q.bottom(); ty.len()];
                for t in self.tx.all() {
                    let image = ty.index(&t.map(|x| f[x], m));
                    lhs[image] = q.join(lhs[image], self.lam(s, &t)?);
                }
                for (yi, &l) in lhs.iter().enumerate() {
                    let t = ty.elem(yi);
                    let rhs = self.law.apply(q, &pushed, &t, &|sigma, y| fy.eval(sigma, y))?;
                    cond.check(q, l, rhs, || {
                        let fl: Vec<String> = f.iter().enumerate().map(|(x, y)| format!("x{x}->y{y}")).collect();
                        vec![
                            ("f".into(), format!("[{}]", fl.join(","))),
                            ("S".into(), self.render_s(s)),
                            ("target".into(), t.render(|y| format!("y{y}"))),
                        ]
                    });
                }
            }
        }
        Ok(())
    }

    fn pv_unit(&self, cond: &mut Cond) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let y_code = |x: usize| fx.encode_fn(|z| if z == x { q.unit() } else { q.bottom() });
        for t in self.tx.all() {
            let ty = t.map(y_code, fx.len());
            for a in self.tx.all() {
                let lhs = if a == t { q.unit() } else { q.bottom() };
                let rhs = self.lam(&ty, &a)?;
                cond.check(q, lhs, rhs, || {
                    vec![("t".into(), t.render(point)), ("at".into(), a.render(point))]
                });
            }
        }
        Ok(())
    }

    fn pv_mult(&self, budget: &LawBudget, cond: &mut Cond, report: &mut LawReport) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let ffx = FnSpace::new(q.len(), fx.len())?;
        let tvx = TCarrier::new(self.kind, fx.len())?;
        // λ_X(S)(A) for every S ∈ T(V^X)
        let tx_all: Vec<TElem> = self.tx.all().collect();
        let lam_table: Vec<Vec<Elem>> = tvx
            .all()
            .map(|s| tx_all.iter().map(|a| self.lam(&s, a)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let mut rng = budget.rng(&format!("c/{}", self.n));
        let (inputs, exhaustive) = t_inputs(self.kind, ffx.len(), budget, &mut rng);
        self.record_mode(report, LAW_C, exhaustive, inputs.len());
        let eval2 = |big: usize, sigma: usize| ffx.eval(big, sigma);
        let s_x = |big: usize| {
            fx.encode_fn(|x| q.join_all((0..fx.len()).map(|sigma| q.tensor(ffx.eval(big, sigma), fx.eval(sigma, x)))))
        };
        for ss in &inputs {
            let outer: Vec<Elem> = tvx
                .all()
                .map(|s| self.law.apply(q, ss, &s, &eval2))
                .collect::<Result<_, _>>()?;
            let flat = ss.map(s_x, fx.len());
            for (ai, a) in tx_all.iter().enumerate() {
                let lhs = q.join_all(outer.iter().zip(&lam_table).map(|(&o, row)| q.tensor(o, row[ai])));
                let rhs = self.lam(&flat, a)?;
                cond.check(q, lhs, rhs, || {
                    vec![
                        ("n".into(), self.n.to_string()),
                        ("SS".into(), ss.render(|big| ffx.render(q, big))),
                        ("at".into(), a.render(point)),
                    ]
                });
            }
        }
        Ok(())
    }

    fn t_unit(&self, cond: &mut Cond) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let tvx = TCarrier::new(self.kind, fx.len())?;
        for sigma in 0..fx.len() {
            let e_sigma = tvx.unit(sigma);
            for t in self.tx.all() {
                let lhs = q.join_all((0..self.n).filter(|&x| self.tx.unit(x) == t).map(|x| fx.eval(sigma, x)));
                let rhs = self.lam(&e_sigma, &t)?;
                cond.check(q, lhs, rhs, || {
                    vec![("sigma".into(), fx.render(q, sigma)), ("at".into(), t.render(point))]
                });
            }
        }
        Ok(())
    }

    fn t_mult(&self, budget: &LawBudget, cond: &mut Cond, report: &mut LawReport) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let tvx = TCarrier::new(self.kind, fx.len())?;
        let ftx = FnSpace::new(q.len(), self.tx.len())?;
        let ttx = TCarrier::new(self.kind, self.tx.len())?;
        let tx_all: Vec<TElem> = self.tx.all().collect();
        // code in V^{TX} of λ_X(S), for every S ∈ T(V^X)
        let lam_codes: Vec<usize> = tvx
            .all()
            .map(|s| {
                let vals = tx_all.iter().map(|a| self.lam(&s, a)).collect::<Result<Vec<_>, _>>()?;
                Ok(ftx.encode(&vals))
            })
            .collect::<Result<_, VrelError>>()?;
        let mut rng = budget.rng(&format!("e/{}", self.n));
        let (inputs, exhaustive) = t_inputs(self.kind, tvx.len(), budget, &mut rng);
        self.record_mode(report, LAW_E, exhaustive, inputs.len());
        let eval_tx = |tau: usize, a: usize| ftx.eval(tau, a);
        for frak in &inputs {
            let lifted = frak.map(|si| lam_codes[si], ftx.len());
            let mut lhs = vec![q.bottom(); self.tx.len()];
            for big in ttx.all() {
                let target = self.tx.index(&self.tx.mult(&big));
                lhs[target] = q.join(lhs[target], self.law.apply(q, &lifted, &big, &eval_tx)?);
            }
            let flat = tvx.mult(frak);
            for (ti, t) in tx_all.iter().enumerate() {
                let rhs = self.lam(&flat, t)?;
                cond.check(q, lhs[ti], rhs, || {
                    vec![
                        ("n".into(), self.n.to_string()),
                        ("SS".into(), frak.render(|si| self.render_s(&tvx.elem(si)))),
                        ("at".into(), t.render(point)),
                    ]
                });
            }
        }
        Ok(())
    }

    fn monotone(&self, budget: &LawBudget, cond: &mut Cond) -> Result<(), VrelError> {
        let (q, fx) = (self.q, &self.fx);
        let mut rng = budget.rng(&format!("f/{}", self.n));
        let tx_all: Vec<TElem> = self.tx.all().collect();
        for _ in 0..budget.samples {
            let z = rng.gen_range(1..=budget.max_carrier.max(1));
            let tz = TCarrier::new(self.kind, z)?;
            let mut g = Vec::with_capacity(z);
            let mut h = Vec::with_capacity(z);
            for _ in 0..z {
                let low: Vec<Elem> = (0..self.n).map(|_| Elem::new(rng.gen_range(0..q.len()))).collect();
                let high: Vec<Elem> = low
                    .iter()
                    .map(|&v| {
                        let ups = q.up_set(v);
                        ups[rng.gen_range(0..ups.len())]
                    })
                    .collect();
                g.push(fx.encode(&low));
                h.push(fx.encode(&high));
            }
            for t in tz.all() {
                let (tg, th) = (t.map(|i| g[i], fx.len()), t.map(|i| h[i], fx.len()));
                for a in &tx_all {
                    let (lhs, rhs) = (self.lam(&tg, a)?, self.lam(&th, a)?);
                    cond.check(q, lhs, rhs, || {
                        let show = |v: &[usize]| v.iter().map(|&c| fx.render(q, c)).collect::<Vec<_>>().join(";");
                        vec![
                            ("g".into(), show(&g)),
                            ("h".into(), show(&h)),
                            ("t".into(), t.render(|i| format!("z{i}"))),
                            ("at".into(), a.render(point)),
                        ]
                    });
                }
            }
        }
        Ok(())
    }
}
