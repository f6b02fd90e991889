//! Probabilistic approach spaces: distances valued in distance
//! distribution functions.

use super::{DistanceStructure, SpacesError};
use crate::lattice::DeltaModel;
use crate::report::{LawReport, Violation};

pub const LAW_PD1: &str = "(PD1) point distance";
pub const LAW_PD2: &str = "(PD2) empty set";
pub const LAW_PD3: &str = "(PD3) binary unions";
pub const LAW_PD4: &str = "(PD4) level sets";

/// Checks (PD1)–(PD4) literally, with `δ(x, A) = (cA)(x)` and
/// `A^(φ) = {x | φ ≤ δ(x, A)}`; (PD4) is checked for every `φ` in the grid.
pub fn check_probapp(s: &DistanceStructure) -> Result<LawReport, SpacesError> {
    let q = s.quantale();
    if DeltaModel::of(q).is_none() {
        return Err(SpacesError::Capability("probabilistic approach axioms need a delta_grid quantale".into()));
    }
    let n = s.n();
    let x_label = |x: usize| s.carrier().label(x).to_string();
    let mut r = LawReport::new();

    let pd1 = (0..n).find(|&x| s.at(1 << x, x) != q.unit()).map(|x| {
        Violation::new(LAW_PD1).with("x", x_label(x)).with("δ(x,{x})", q.label(s.at(1 << x, x)))
    });
    r.record(LAW_PD1, pd1);

    let pd2 = (0..n)
        .find(|&x| s.at(0, x) != q.bottom())
        .map(|x| Violation::new(LAW_PD2).with("x", x_label(x)).with("δ(x,∅)", q.label(s.at(0, x))));
    r.record(LAW_PD2, pd2);

    let mut pd3 = None;
    'pd3: for a in 0..1usize << n {
        for b in 0..1usize << n {
            for x in 0..n {
                if s.at(a | b, x) != q.join(s.at(a, x), s.at(b, x)) {
                    pd3 = Some(
                        Violation::new(LAW_PD3)
                            .with("x", x_label(x))
                            .with("A", s.subset_label(a))
                            .with("B", s.subset_label(b)),
                    );
                    break 'pd3;
                }
            }
        }
    }
    r.record(LAW_PD3, pd3);

    let mut pd4 = None;
    'pd4: for phi in q.elements() {
        for a in 0..1usize << n {
            let level = (0..n).filter(|&y| q.leq(phi, s.at(a, y))).fold(0, |m, y| m | 1 << y);
            for x in 0..n {
                let lhs = q.tensor(s.at(level, x), phi);
                if !q.leq(lhs, s.at(a, x)) {
                    pd4 = Some(
                        Violation::new(LAW_PD4)
                            .with("φ", q.label(phi))
                            .with("A", s.subset_label(a))
                            .with("x", x_label(x))
                            .with("lhs", q.label(lhs))
                            .with("rhs", q.label(s.at(a, x))),
                    );
                    break 'pd4;
                }
            }
        }
    }
    r.record(LAW_PD4, pd4);
    r.count("grid elements", q.len() as u64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Quantale;
    use crate::spaces::{check_closure, enumerate_structures, is_approach, StructureFilter};
    use crate::vrel::FiniteSet;

    #[test]
    fn probapp_iff_closure_and_approach() {
        let d = Quantale::builtin(&"delta_grid:0,1:0,1/2,1:lukasiewicz".parse().unwrap()).unwrap();
        assert_eq!(d.len(), 6);
        for code in 0..d.len().pow(4) {
            let s = DistanceStructure::from_fn(FiniteSet::points(1), d.clone(), |a, _| {
                crate::lattice::Elem::new(code / d.len().pow(a as u32) % d.len())
            })
            .unwrap();
            let r = check_probapp(&s).unwrap();
            assert_eq!(r.is_ok(), check_closure(&s).is_ok() && is_approach(&s).holds());
        }
        let e = enumerate_structures(2, &d, StructureFilter::Approach, u64::MAX).unwrap();
        assert!(e.structures.iter().all(|s| check_probapp(s).unwrap().is_ok()));
    }

    #[test]
    fn other_quantales_are_rejected() {
        let v = Quantale::builtin(&crate::lattice::Builtin::TwoChain).unwrap();
        let s = DistanceStructure::membership(FiniteSet::points(1), v).unwrap();
        assert!(matches!(check_probapp(&s), Err(SpacesError::Capability(_))));
    }
}
