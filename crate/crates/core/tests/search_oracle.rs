mod common;

use std::collections::BTreeSet;

use common::naive::{self, Bounds};
use common::{arc_from_choices, zsum};
use cubispin_core::invariants::{determinant, project_diagram};
use cubispin_core::lattice::{Lattice1Knot, LatticeArc};
use cubispin_core::search::{
    arc_may_self_cross, canonical_arc, canonical_cycle, canonical_form, certify_lower_bound, cycle_determinant,
    enumerate_cycles, find_min_spun, normalize_arc, NodeBudget, SearchConstraints, SearchError, Unlimited,
};
use proptest::prelude::*;

fn constraints(h: i64, zs: i64, len: usize, fp: (i64, i64)) -> SearchConstraints {
    SearchConstraints {
        max_height: h,
        max_zsum: zs,
        max_len: len,
        footprint: fp,
        require_knotted: false,
    }
}

fn pruned(c: &SearchConstraints) -> BTreeSet<Vec<[i64; 3]>> {
    let list = enumerate_cycles(c);
    let set: BTreeSet<Vec<[i64; 3]>> = list.iter().map(|c| c.0.clone()).collect();
    assert_eq!(set.len(), list.len(), "duplicates");
    set
}

fn naive(c: &SearchConstraints) -> BTreeSet<Vec<[i64; 3]>> {
    naive::cycles(&Bounds {
        max_height: c.max_height,
        max_zsum: c.max_zsum,
        max_len: c.max_len,
        footprint: c.footprint,
    })
}

#[test]
fn enumerator_matches_brute_force() {
    for c in [
        constraints(1, 100, 8, (4, 4)),
        constraints(2, 4, 10, (3, 3)),
        constraints(3, 100, 10, (6, 6)),
        constraints(2, 8, 10, (2, 4)),
        constraints(5, 100, 10, (1, 6)),
    ] {
        let a = pruned(&c);
        let b = naive(&c);
        assert!(!b.is_empty());
        assert_eq!(a, b, "{c:?}");
    }
}

#[test]
fn degenerate_constraints() {
    let c = SearchConstraints { require_knotted: true, ..constraints(2, 10, 4, (4, 4)) };
    let r = certify_lower_bound(&c, &Unlimited).unwrap();
    assert!(r.knotted_found.is_empty());
    assert_eq!(r.min_reduced_area, None);
    assert!(r.complete);
    assert_eq!(enumerate_cycles(&constraints(1, 10, 4, (4, 4))).len(), 1);
}

#[test]
fn short_cycles_are_unknotted() {
    let c = constraints(3, 100, 8, (5, 5));
    for cycle in enumerate_cycles(&c) {
        assert_eq!(cycle_determinant(&cycle.0), Some(1));
    }
}

#[test]
fn canonical_forms_agree_with_the_oracle() {
    for cycle in enumerate_cycles(&constraints(2, 100, 10, (4, 4))).iter().step_by(7) {
        assert_eq!(naive::canonical(&cycle.0), cycle.0);
        let k = cycle.to_knot();
        assert_eq!(canonical_form(&k), *cycle);
    }
}

#[test]
fn enlarging_constraints_never_loses_cycles() {
    let base = SearchConstraints { require_knotted: true, ..constraints(1, 6, 12, (3, 3)) };
    let bigger = [
        SearchConstraints { max_height: 2, ..base },
        SearchConstraints { max_zsum: 9, max_height: 2, ..base },
        SearchConstraints { max_len: 14, max_zsum: 9, max_height: 2, ..base },
        SearchConstraints { footprint: (3, 4), max_len: 14, max_zsum: 9, max_height: 2, ..base },
    ];
    let mut prev = certify_lower_bound(&base, &Unlimited).unwrap();
    for c in bigger {
        let r = certify_lower_bound(&c, &Unlimited).unwrap();
        assert!(r.cycles_enumerated >= prev.cycles_enumerated);
        match (prev.min_reduced_area, r.min_reduced_area) {
            (Some(a), Some(b)) => assert!(b <= a),
            (Some(_), None) => panic!("minimum lost"),
            _ => {}
        }
        prev = r;
    }
}

#[test]
fn budgets_and_errors() {
    let c = SearchConstraints { require_knotted: true, ..constraints(2, 12, 20, (4, 4)) };
    assert_eq!(find_min_spun(&c, &NodeBudget::new(10)), Err(SearchError::ResourceBudgetExceeded));
    assert_eq!(find_min_spun(&c, &Unlimited), Err(SearchError::NotFound));
    let bad = SearchConstraints { max_len: 0, ..c };
    assert_eq!(certify_lower_bound(&bad, &Unlimited), Err(SearchError::InvalidConstraints("max_len")));
    let loose = SearchConstraints { require_knotted: false, ..c };
    assert_eq!(find_min_spun(&loose, &Unlimited), Err(SearchError::InvalidConstraints("require_knotted")));
}

fn d4(g: usize, p: [i64; 3]) -> [i64; 3] {
    let (x, y) = if g & 4 != 0 { (p[1], p[0]) } else { (p[0], p[1]) };
    let x = if g & 1 != 0 { -x } else { x };
    let y = if g & 2 != 0 { -y } else { y };
    [x, y, p[2]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// An arc whose shadow (vertical edges collapsed) is a simple path closes to an unknot.
    #[test]
    fn simple_shadow_means_unknotted(choices in prop::collection::vec(0u8..6, 0..26), h in 1i64..4) {
        let arc = arc_from_choices(&choices, h);
        if !arc_may_self_cross(&arc) {
            let k = Lattice1Knot::close_arc(&LatticeArc::from_xyz(&arc, 1).unwrap()).unwrap();
            prop_assert_eq!(determinant(&project_diagram(&k).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn arc_canonical_form_is_invariant(
        choices in prop::collection::vec(0u8..6, 0..20),
        g in 0usize..8,
        shift in prop::array::uniform2(-5i64..5),
        reverse: bool,
    ) {
        let arc = arc_from_choices(&choices, 3);
        let mut img: Vec<[i64; 3]> = arc.iter().map(|&p| d4(g, p)).map(|p| [p[0] + shift[0], p[1] + shift[1], p[2]]).collect();
        if reverse {
            img.reverse();
        }
        let c = canonical_arc(&arc);
        prop_assert_eq!(&canonical_arc(&img), &c);
        prop_assert!(c == normalize_arc(&arc) || c == normalize_arc(&arc.iter().rev().copied().collect::<Vec<_>>()));
        prop_assert_eq!(zsum(&c), zsum(&arc));
        prop_assert_eq!(c[0], [0, 0, 0]);
    }

    #[test]
    fn cycle_canonical_form_matches_the_oracle(choices in prop::collection::vec(0u8..6, 0..16), g in 0usize..8, rot in 0usize..40) {
        let arc = arc_from_choices(&choices, 2);
        let knot = Lattice1Knot::close_arc(&LatticeArc::from_xyz(&arc, 1).unwrap()).unwrap();
        let mut seq: Vec<[i64; 3]> = knot.vertices().iter().map(|v| d4(g, [v.x(), v.y(), v.z()])).collect();
        let r = rot % seq.len();
        seq.rotate_left(r);
        prop_assert_eq!(canonical_cycle(&seq), naive::canonical(&seq));
    }
}
