//! The standard families of maps between quantales: `o ⊣ ι ⊣ π` for the
//! two-chain, `λ ⊣ σ ⊣ ρ` (and `τ`) for distance distribution functions,
//! and `⇓ ⊣ sup ⊣ ↓` for down-set quantales.

use serde::{Deserialize, Serialize};

use super::BaseChangeError;
use crate::lattice::{downset_element, downset_members, Builtin, DeltaModel, Elem, MonotoneMap, Quantale};
use crate::report::{LawReport, Violation};

pub const MAP_NAMES: [&str; 10] =
    ["iota", "pi", "o", "sigma", "tau", "rho", "lambda", "downset.up", "downset.sup", "downset.down"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapFamily {
    IotaPiO,
    SigmaTauRhoLambda,
    DownsetTriple,
}

impl std::str::FromStr for MapFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "iota_pi_o" => Ok(MapFamily::IotaPiO),
            "sigma_tau_rho_lambda" => Ok(MapFamily::SigmaTauRhoLambda),
            "downset_triple" => Ok(MapFamily::DownsetTriple),
            _ => Err(format!("unknown map family `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: &'static str,
    pub map: MonotoneMap,
}

fn family_of(name: &str) -> Option<MapFamily> {
    match name {
        "iota" | "pi" | "o" => Some(MapFamily::IotaPiO),
        "sigma" | "tau" | "rho" | "lambda" => Some(MapFamily::SigmaTauRhoLambda),
        "downset.up" | "downset.sup" | "downset.down" => Some(MapFamily::DownsetTriple),
        _ => None,
    }
}

/// A named map. `anchor` is `V` for `iota`/`pi`/`o` (maps between the
/// two-chain and `V`), a `delta_grid` for `sigma`/`tau`/`rho`/`lambda`, and
/// the base quantale for the down-set maps.
pub fn builtin_map(name: &str, anchor: &Builtin) -> Result<MonotoneMap, BaseChangeError> {
    let family = family_of(name).ok_or_else(|| BaseChangeError::UnknownMap(name.to_string()))?;
    standard_maps(family, anchor)?
        .into_iter()
        .find(|m| m.name == name)
        .map(|m| m.map)
        .ok_or_else(|| BaseChangeError::Capability(format!("`{name}` does not exist over {anchor}")))
}

/// Every map of the family that exists over `anchor`. Right and left
/// adjoints are computed from the defining map, so `π`, `o`, `ρ`, `λ` are
/// specified by adjointness.
pub fn standard_maps(family: MapFamily, anchor: &Builtin) -> Result<Vec<NamedMap>, BaseChangeError> {
    let adjoint_err = |what: &str| BaseChangeError::Capability(format!("{what} has no adjoint over {anchor}"));
    match family {
        MapFamily::IotaPiO => {
            let v = Quantale::builtin(anchor)?;
            let two = Quantale::builtin(&Builtin::TwoChain)?;
            let iota = MonotoneMap::new(two, v.clone(), vec![v.bottom(), v.unit()])
                .map_err(|e| BaseChangeError::Capability(e.to_string()))?;
            let pi = iota.right_adjoint().ok_or_else(|| adjoint_err("iota"))?;
            let mut out = vec![NamedMap { name: "iota", map: iota.clone() }, NamedMap { name: "pi", map: pi }];
            if let Some(o) = iota.left_adjoint() {
                out.push(NamedMap { name: "o", map: o });
            }
            Ok(out)
        }
        MapFamily::SigmaTauRhoLambda => {
            let d = Quantale::builtin(anchor)?;
            let model = DeltaModel::of(&d)
                .ok_or_else(|| BaseChangeError::Capability(format!("{anchor} is not a delta_grid")))?;
            let t = Quantale::builtin(&model.time_quantale())?;
            let vals = Quantale::builtin(&model.value_quantale())?;
            let times = model.times().len();
            let sigma = MonotoneMap::from_fn(t, d.clone(), |a| model.sigma((a.index() < times).then_some(a.index())))
                .map_err(|e| BaseChangeError::Capability(e.to_string()))?;
            let tau = MonotoneMap::from_fn(vals, d, |u| model.tau(u.index()))
                .map_err(|e| BaseChangeError::Capability(e.to_string()))?;
            let rho = sigma.right_adjoint().ok_or_else(|| adjoint_err("sigma"))?;
            let lambda = sigma.left_adjoint().ok_or_else(|| adjoint_err("sigma"))?;
            Ok(vec![
                NamedMap { name: "sigma", map: sigma },
                NamedMap { name: "tau", map: tau },
                NamedMap { name: "rho", map: rho },
                NamedMap { name: "lambda", map: lambda },
            ])
        }
        MapFamily::DownsetTriple => {
            let base = Quantale::builtin(anchor)?;
            let dn = Quantale::builtin(&Builtin::Downset { base: Box::new(anchor.clone()) })?;
            let mk = |f: &dyn Fn(Elem) -> Vec<Elem>| -> Result<MonotoneMap, BaseChangeError> {
                MonotoneMap::from_fn(base.clone(), dn.clone(), |v| downset_element(&base, &dn, &f(v)).unwrap())
                    .map_err(|e| BaseChangeError::Capability(e.to_string()))
            };
            let up = mk(&|v| base.way_below_set(v))?;
            let down = mk(&|v| base.elements().filter(|&u| base.leq(u, v)).collect())?;
            let sup = MonotoneMap::from_fn(dn.clone(), base.clone(), |e| base.join_all(downset_members(&base, &dn, e)))
                .map_err(|e| BaseChangeError::Capability(e.to_string()))?;
            Ok(vec![
                NamedMap { name: "downset.up", map: up },
                NamedMap { name: "downset.sup", map: sup },
                NamedMap { name: "downset.down", map: down },
            ])
        }
    }
}

fn pick<'a>(maps: &'a [NamedMap], name: &str) -> Option<&'a MonotoneMap> {
    maps.iter().find(|m| m.name == name).map(|m| &m.map)
}

fn adjunction(r: &mut LawReport, maps: &[NamedMap], left: &str, right: &str) {
    let law = format!("{left} ⊣ {right}");
    let v = match (pick(maps, left), pick(maps, right)) {
        (Some(f), Some(g)) => f.adjunction_witness(g).map(|(a, b)| {
            Violation::new(law.clone())
                .with("v", f.source().label(a))
                .with("w", f.target().label(b))
        }),
        _ => Some(Violation::new(law.clone()).with("missing", format!("{left} or {right}"))),
    };
    r.record(&law, v);
}

fn class(r: &mut LawReport, maps: &[NamedMap], name: &str, hom: bool, lax: bool) {
    if let Some(m) = pick(maps, name) {
        let c = m.classify();
        let law = format!("{name} classification");
        let ok = (!hom || c.is_hom) && (!lax || c.is_lax_hom);
        r.record(
            &law,
            (!ok).then(|| {
                Violation::new(law.clone())
                    .with("is_hom", c.is_hom.to_string())
                    .with("is_lax_hom", c.is_lax_hom.to_string())
            }),
        );
    }
}

/// The adjunctions and classifications of a family: `o ⊣ ι ⊣ π` (`o` only
/// for integral `V`), `λ ⊣ σ ⊣ ρ`, `⇓ ⊣ sup ⊣ ↓`; `ι`, `σ`, `τ`, `sup`
/// homomorphisms; `π`, `ρ`, `↓` lax homomorphisms and `↓` not a
/// homomorphism.
pub fn verify_standard_maps(family: MapFamily, anchor: &Builtin) -> Result<LawReport, BaseChangeError> {
    let maps = standard_maps(family, anchor)?;
    let mut r = LawReport::new();
    match family {
        MapFamily::IotaPiO => {
            adjunction(&mut r, &maps, "iota", "pi");
            if Quantale::builtin(anchor)?.is_integral() {
                adjunction(&mut r, &maps, "o", "iota");
            }
            class(&mut r, &maps, "iota", true, true);
            class(&mut r, &maps, "pi", false, true);
        }
        MapFamily::SigmaTauRhoLambda => {
            adjunction(&mut r, &maps, "lambda", "sigma");
            adjunction(&mut r, &maps, "sigma", "rho");
            class(&mut r, &maps, "sigma", true, true);
            class(&mut r, &maps, "tau", true, true);
            class(&mut r, &maps, "rho", false, true);
        }
        MapFamily::DownsetTriple => {
            adjunction(&mut r, &maps, "downset.up", "downset.sup");
            adjunction(&mut r, &maps, "downset.sup", "downset.down");
            class(&mut r, &maps, "downset.sup", true, true);
            class(&mut r, &maps, "downset.down", false, true);
            let down = pick(&maps, "downset.down").unwrap();
            let law = "downset.down is not a homomorphism";
            r.record(law, down.is_hom().then(|| Violation::new(law)));
        }
    }
    Ok(r)
}

/// The right adjoint of each homomorphism among `maps` into an integral
/// quantale, paired with whether it is a lax homomorphism.
pub fn right_adjoints_of_homs(maps: &[NamedMap]) -> Vec<(&'static str, bool)> {
    maps.iter()
        .filter(|m| m.map.is_hom() && m.map.target().is_integral())
        .filter_map(|m| m.map.right_adjoint().map(|g| (m.name, g.is_lax_hom())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta() -> Builtin {
        "delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap()
    }

    #[test]
    fn families_verify() {
        for (family, anchor) in [
            (MapFamily::IotaPiO, Builtin::ChainFrame { n: 3 }),
            (MapFamily::IotaPiO, Builtin::CostChain { max: 3 }),
            (MapFamily::IotaPiO, delta()),
            (MapFamily::SigmaTauRhoLambda, delta()),
            (MapFamily::SigmaTauRhoLambda, "delta_grid:0,1,2:0,1:min".parse().unwrap()),
            (MapFamily::DownsetTriple, Builtin::ChainFrame { n: 3 }),
            (MapFamily::DownsetTriple, Builtin::CostChain { max: 2 }),
        ] {
            let r = verify_standard_maps(family, &anchor).unwrap();
            assert!(r.is_ok(), "{anchor}: {r}");
        }
    }

    #[test]
    fn rho_and_lambda_on_the_grid() {
        let d = Quantale::builtin(&delta()).unwrap();
        let m = DeltaModel::of(&d).unwrap();
        let sigma = builtin_map("sigma", &delta()).unwrap();
        let rho = builtin_map("rho", &delta()).unwrap();
        let lambda = builtin_map("lambda", &delta()).unwrap();
        let t = sigma.source().clone();
        let one = t.elem("1").unwrap();
        assert_eq!(rho.apply(sigma.apply(one)), one);
        assert_eq!(lambda.apply(sigma.apply(one)), one);
        assert_eq!(t.label(lambda.apply(d.unit())), "0");
        assert_eq!(t.label(rho.apply(d.bottom())), "inf");
        for a in t.elements() {
            assert_eq!(rho.apply(sigma.apply(a)), a);
        }
        // ρ(φ): least grid time after which φ is 1; λ(φ): greatest grid time up to which φ is 0
        let top_value = m.values().len() - 1;
        for phi in d.elements() {
            let v = m.vector(phi);
            let rho_formula = (0..m.times().len()).find(|&i| v[i..].iter().all(|&x| x == top_value));
            let lambda_formula = (0..m.times().len()).rev().find(|&i| v[..i].iter().all(|&x| x == 0));
            let label = |i: Option<usize>| i.map(|i| m.times()[i].to_string()).unwrap_or_else(|| "inf".into());
            assert_eq!(t.label(rho.apply(phi)), label(rho_formula));
            let lam = if v.iter().all(|&x| x == 0) { None } else { lambda_formula };
            assert_eq!(t.label(lambda.apply(phi)), label(lam));
        }
    }

    #[test]
    fn sup_of_way_below_set_is_identity_on_ccd() {
        for anchor in [Builtin::ChainFrame { n: 4 }, Builtin::CostChain { max: 2 }, delta()] {
            let up = builtin_map("downset.up", &anchor).unwrap();
            let sup = builtin_map("downset.sup", &anchor).unwrap();
            for v in up.source().elements() {
                assert_eq!(sup.apply(up.apply(v)), v);
            }
        }
    }

    #[test]
    fn right_adjoints_of_homomorphisms_are_lax() {
        for (family, anchor) in [
            (MapFamily::IotaPiO, Builtin::ChainFrame { n: 3 }),
            (MapFamily::SigmaTauRhoLambda, delta()),
            (MapFamily::DownsetTriple, Builtin::ChainFrame { n: 3 }),
        ] {
            let maps = standard_maps(family, &anchor).unwrap();
            let found = right_adjoints_of_homs(&maps);
            assert!(!found.is_empty());
            assert!(found.iter().all(|(_, lax)| *lax), "{found:?}");
        }
    }

    #[test]
    fn unknown_and_incompatible_names() {
        assert!(matches!(builtin_map("nope", &Builtin::TwoChain), Err(BaseChangeError::UnknownMap(_))));
        assert!(matches!(builtin_map("sigma", &Builtin::TwoChain), Err(BaseChangeError::Capability(_))));
    }
}
