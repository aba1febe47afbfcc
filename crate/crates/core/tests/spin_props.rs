mod common;

use common::{arc_from_choices, zsum, TREFOIL23};
use cubispin_core::lattice::{reduce_arc, unreduce_arc, LatticeArc};
use cubispin_core::spin::{
    area_formula, build_cspin, build_rcspin, decompose_pieces, reduced_area_formula, upper_bound_formula, PieceKind,
};
use cubispin_core::surface::box_boundary;
use cubispin_core::Rational;
use proptest::prelude::*;

fn arc(choices: &[u8], h: i64, lambda: i64) -> LatticeArc {
    LatticeArc::from_xyz(&arc_from_choices(choices, h), lambda).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cspin_count_matches_formula(choices in prop::collection::vec(0u8..6, 0..22), h in 1i64..4, lambda in 1i64..3) {
        let a = arc(&choices, h, lambda);
        let spun = build_cspin(&a).unwrap();
        prop_assert!(spun.surface().is_sphere());
        let count = Rational::new(spun.area() as i64, lambda * lambda);
        prop_assert_eq!(count, area_formula(&a));
        // Independent form of the same number.
        let z = zsum(&arc_from_choices(&choices, h));
        prop_assert_eq!(count, Rational::new(8 * z, lambda * lambda));
        let pieces: usize = spun.pieces().iter().map(|p| p.area()).sum();
        prop_assert_eq!(pieces, spun.area());
    }

    #[test]
    fn rcspin_count_matches_formula(choices in prop::collection::vec(0u8..6, 0..22), h in 1i64..4) {
        let pts = arc_from_choices(&choices, h);
        let a = LatticeArc::from_xyz(&pts, 1).unwrap();
        let r = reduce_arc(&a).unwrap();
        let spun = build_rcspin(&r).unwrap();
        prop_assert!(spun.surface().is_sphere());
        let n = pts.len() as i64;
        prop_assert_eq!(spun.area() as i64, 8 * zsum(&pts) - 4 * n + 6);
        prop_assert_eq!(spun.area() as i64, reduced_area_formula(&r));
        prop_assert_eq!(upper_bound_formula(&a), Some(spun.area() as i64));
        prop_assert_eq!(unreduce_arc(&r), a);
        let merged: usize = decompose_pieces(&spun).iter().map(|p| p.area).sum();
        prop_assert_eq!(merged, spun.area());
    }

    #[test]
    fn reversal_keeps_areas(choices in prop::collection::vec(0u8..6, 0..16)) {
        let a = arc(&choices, 3, 1);
        prop_assert_eq!(build_cspin(&a.reversed()).unwrap().area(), build_cspin(&a).unwrap().area());
    }
}

#[test]
fn reduced_unknot_is_the_unit_cube() {
    let a = LatticeArc::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]], 1).unwrap();
    assert_eq!(build_cspin(&a).unwrap().area(), 16);
    let spun = build_rcspin(&reduce_arc(&a).unwrap()).unwrap();
    assert_eq!(spun.area(), 6);
    let cube = box_boundary(spun.surface().bounding_box().unwrap().0, [0, 2, 3], [1, 1, 1]);
    assert_eq!(spun.surface().squares(), &cube);
}

#[test]
fn trefoil_areas_and_pieces() {
    let a = LatticeArc::from_xyz(&TREFOIL23, 1).unwrap();
    let c = build_cspin(&a).unwrap();
    assert_eq!(c.area(), 216);
    let cs: Vec<usize> = decompose_pieces(&c).iter().map(|p| p.area).collect();
    assert_eq!(cs, [16, 32, 12, 16, 24, 24, 16, 16, 12, 32, 16]);
    let r = build_rcspin(&reduce_arc(&a).unwrap()).unwrap();
    assert_eq!(r.area(), 130);
    let pieces = decompose_pieces(&r);
    let kinds: Vec<PieceKind> = pieces.iter().map(|p| p.kind).collect();
    assert_eq!(kinds[0], PieceKind::Disk);
    assert_eq!(kinds[10], PieceKind::Disk);
    assert_eq!(kinds[2], PieceKind::SquareAnnulus);
    let labels: Vec<&str> = pieces.iter().map(|p| p.label.as_str()).collect();
    assert_eq!(labels[0], "D1");
    assert_eq!(labels[10], "D11");
}
