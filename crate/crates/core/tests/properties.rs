use std::path::Path;
use std::sync::Arc;

use proptest::prelude::*;
use vspaces::base_change::{b_phi, builtin_map, reflect, Graph};
use vspaces::convergence::{a_epsilon, r_functor};
use vspaces::format::{parse_json, to_json, QuantaleRef, Space, SpaceFile};
use vspaces::spaces::{check_closure, check_closure_naive, closure_hull, is_approach, DistanceStructure, Tower};
use vspaces::vrel::FiniteSet;
use vspaces::{Builtin, Elem, Quantale};

const QUANTALES: [&str; 3] = ["two_chain", "chain_frame:3", "cost_chain:2"];

fn quantale(i: usize) -> Arc<Quantale> {
    Quantale::builtin(&QUANTALES[i].parse::<Builtin>().unwrap()).unwrap()
}

/// A raw table over one of the test quantales on at most `max_n` points.
fn raw(max_n: usize) -> impl Strategy<Value = DistanceStructure> {
    (0..QUANTALES.len(), 0..=max_n).prop_flat_map(|(qi, n)| {
        let q = quantale(qi);
        prop::collection::vec(0..q.len(), (1 << n) * n).prop_map(move |cells| {
            let table = cells.into_iter().map(Elem::new).collect();
            DistanceStructure::new(FiniteSet::points(n), q.clone(), table).unwrap()
        })
    })
}

/// Two raw tables `s ≤ t` of the same shape.
fn ordered_pair(max_n: usize) -> impl Strategy<Value = (DistanceStructure, DistanceStructure)> {
    raw(max_n).prop_flat_map(|s| {
        let len = s.table().len();
        let q = s.quantale().clone();
        prop::collection::vec(0..q.len(), len).prop_map(move |cells| {
            let mut t = s.clone();
            for (i, c) in cells.into_iter().enumerate() {
                let (a, x) = (i / s.n().max(1), i % s.n().max(1));
                t.set(a, x, q.join(s.at(a, x), Elem::new(c)));
            }
            (s.clone(), t)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_hull_is_a_closure_operator((s, t) in ordered_pair(3)) {
        let (hs, ht) = (closure_hull(&s), closure_hull(&t));
        prop_assert!(check_closure(&hs).is_ok());
        prop_assert!(s.leq(&hs));
        prop_assert_eq!(closure_hull(&hs).table().to_vec(), hs.table());
        prop_assert!(hs.leq(&ht));
    }

    #[test]
    fn reflect_agrees_with_hull(s in raw(2)) {
        let g = reflect(&Graph::from(s.clone()));
        prop_assert_eq!(g.table(), closure_hull(&s).table().to_vec());
        prop_assert!(g.check_axioms().is_ok());
    }

    #[test]
    fn fast_and_naive_closure_checks_agree(s in raw(2)) {
        prop_assert_eq!(check_closure(&s).is_ok(), check_closure_naive(&s).is_ok());
    }

    #[test]
    fn tower_round_trip(s in raw(3)) {
        let h = closure_hull(&s);
        let tower = Tower::of(&h);
        prop_assert_eq!(tower.distances().table().to_vec(), h.table());
        prop_assert_eq!(tower.to_closure().unwrap().table().to_vec(), h.table());
    }

    #[test]
    fn epsilon_after_r_is_below_and_exact_on_approach(s in raw(3)) {
        let h = closure_hull(&s);
        let back = a_epsilon(&r_functor(&h));
        prop_assert!(back.leq(&h));
        prop_assert_eq!(back.table() == h.table(), is_approach(&h).holds());
    }

    #[test]
    fn pi_undoes_iota(s in raw(3)) {
        prop_assume!(s.quantale().origin() == Some(&Builtin::TwoChain));
        let h = Graph::from(closure_hull(&s));
        let anchor: Builtin = "chain_frame:3".parse().unwrap();
        let iota = builtin_map("iota", &anchor).unwrap();
        let pi = builtin_map("pi", &anchor).unwrap();
        let up = b_phi(&h, &iota).unwrap();
        prop_assert!(up.check_axioms().is_ok());
        prop_assert_eq!(b_phi(&up, &pi).unwrap().table().to_vec(), h.table());
    }

    #[test]
    fn space_files_round_trip(s in raw(3)) {
        let file = SpaceFile::from_distance(&s, QuantaleRef::of(s.quantale()));
        let text = to_json(&file);
        let parsed: SpaceFile = parse_json(&text, Path::new("mem.json")).unwrap();
        prop_assert_eq!(to_json(&parsed), text);
        match parsed.load(Path::new(".")).unwrap() {
            Space::Distance(d) => prop_assert_eq!(d.table(), s.table()),
            Space::Tower(_) => prop_assert!(false, "distance file loaded as tower"),
        }
    }
}
