//! End-to-end checks of the randomized example builders and of projections
//! from one of their triple points.

use tripoint_core::algebra::Rational;
use tripoint_core::census::CensusOptions;
use tripoint_core::constructions::{
    build_x223_four, contained_tetrahedron, fallback_sextic, project_from_otp, search_x24_seven, verify_projection,
    verify_quartic_triple_points,
    ProjectionShape, SearchOptions,
};
use tripoint_core::local::SingularityKind;

fn on_variety(v: &tripoint_core::geometry::Variety, p: &[Rational]) -> bool {
    v.generators().iter().all(|f| f.evaluate(p) == Rational::from_integer(0.into()))
}

#[test]
fn quartic_construction_has_seven_triple_points() {
    let x = search_x24_seven(1, &SearchOptions::default()).unwrap();
    assert_eq!(x.otps.len(), 7);
    assert!(x.reports.iter().all(|r| r.kind == SingularityKind::Otp));
    assert!(x.census.runs.len() >= 2);
    assert_eq!(x.census.consensus_count(SingularityKind::Otp), Some(7));
    assert_eq!(contained_tetrahedron(&x.quartic.generators()[0]).unwrap(), None);
    // the line through [1:..:1] and the seventh triple point lies on X
    let (p0, e) = (&x.otps[0], &x.otps[6]);
    for (s, t) in [(1, 2), (3, -1), (2, 5)] {
        let pt: Vec<Rational> =
            p0.iter().zip(e).map(|(a, b)| a * Rational::from_integer(s.into()) + b * Rational::from_integer(t.into())).collect();
        assert!(on_variety(&x.variety, &pt));
    }
}

#[test]
fn quartic_construction_projects_with_twenty_four_double_points() {
    let x = search_x24_seven(1, &SearchOptions::default()).unwrap();
    let proj = project_from_otp(&x.variety, &x.otps[1]).unwrap();
    assert_eq!(proj.shape, ProjectionShape::QuadricQuartic);
    assert_eq!((proj.source_degree, proj.image_degree, proj.expected_double_points), (8, 5, 24));
    let others: Vec<_> = x.otps.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, p)| p.clone()).collect();
    let check = verify_projection(&proj, &others, &[11, 13, 17, 19, 23, 29, 31, 37], 3, &CensusOptions::default(), 1).unwrap();
    assert!(check.image_otp_reports.iter().all(|r| r.kind == SingularityKind::Otp));
    assert!(check.census.runs.len() >= 2, "{:?}", check.census.skipped);
    assert_eq!(check.otp_consensus, Some(6));
    assert_eq!(check.other_singular, 0);
    assert_eq!(check.double_points, Some(24));
}

#[test]
fn complete_intersection_construction_has_four_coplanar_triple_points() {
    let x = build_x223_four(1, &SearchOptions::default()).unwrap();
    assert_eq!(x.otps.len(), 4);
    assert!(x.reports.iter().all(|r| r.kind == SingularityKind::Otp));
    assert_eq!(x.census.consensus_count(SingularityKind::Otp), Some(4));
    let proj = project_from_otp(&x.variety, &x.otps[0]).unwrap();
    assert_eq!((proj.source_degree, proj.image_degree, proj.expected_double_points), (12, 9, 12));
    let check = verify_projection(&proj, &x.otps[1..], &[7, 11, 13, 17, 19], 2, &CensusOptions::default(), 1).unwrap();
    assert!(check.image_otp_reports.iter().all(|r| r.kind == SingularityKind::Otp));
    assert_eq!(check.census.runs.len(), 2, "{:?}", check.census.skipped);
    assert_eq!(check.otp_consensus, Some(3));
    assert_eq!(check.other_singular, 0);
    assert_eq!(check.double_points, Some(12));
}

#[test]
fn fallback_sextic_is_confirmed_by_census() {
    let s = fallback_sextic(1, &SearchOptions::default()).unwrap();
    assert_eq!(s.points.len(), 6);
    assert!(s.census.runs.len() >= 2);
    assert_eq!(s.census.consensus_count(SingularityKind::Otp), Some(6));
}

#[test]
fn six_point_quartic_is_singular_along_the_joining_lines() {
    let x = search_x24_seven(1, &SearchOptions::default()).unwrap();
    let check = verify_quartic_triple_points(&x.quartic, &SearchOptions::default()).unwrap();
    assert_eq!(check.multiplicities, vec![Some(3); 6]);
    assert!(check.census.runs.len() >= 2, "{:?}", check.census.skipped);
    // the 15 lines have p + 1 points each; each of the 6 points lies on 5
    let matching = check.line_counts.iter().filter(|(p, seen, _)| *seen as u64 == 15 * (p + 1) - 6 * 4).count();
    assert!(2 * matching > check.line_counts.len(), "{:?}", check.line_counts);
    assert!(check.confirmed);
}
