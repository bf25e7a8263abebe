use std::collections::BTreeSet;

use mvsheaf_core::ideals::enumerate_primes;
use mvsheaf_core::locale::{
    check_topology_axioms, compare_frame_with_space, frame_by_generators, frame_by_powerset,
    ideal_frame, point_space, points, va_lattice, va_points_vs_primes, Coverage, InfLattice,
    LocaleError, Site, DEFAULT_FRAME_CAP,
};
use mvsheaf_core::spectrum::build_spectrum;
use mvsheaf_core::FiniteMvAlgebra;

fn product(ks: &[usize]) -> FiniteMvAlgebra {
    FiniteMvAlgebra::product_of(
        &ks.iter()
            .map(|&k| FiniteMvAlgebra::chain(k).unwrap())
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

fn boolean_cube() -> InfLattice {
    // subsets of {0,1,2} ordered by inclusion, indexed by bitmask
    InfLattice::new(
        &(0..8)
            .map(|a| (0..8).map(|b| a & b == a).collect())
            .collect::<Vec<Vec<bool>>>(),
    )
    .unwrap()
}

#[test]
fn hasse_and_matrix_agree() {
    let from_edges = InfLattice::from_hasse(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let rows: Vec<Vec<bool>> = (0..4)
        .map(|a| (0..4).map(|b| a == b || a == 0 || b == 3).collect())
        .collect();
    assert_eq!(from_edges, InfLattice::new(&rows).unwrap());
}

#[test]
fn boolean_cube_points_are_atoms_complements() {
    // prime filters of 2^3 are the principal filters of the atoms
    let h = boolean_cube();
    let site = Site::new(h.clone(), Coverage::finite_suprema(&h).unwrap());
    let found: BTreeSet<u64> = points(&site).iter().map(|p| p.members).collect();
    let expected: BTreeSet<u64> = [1, 2, 4].iter().map(|&atom| h.up(atom)).collect();
    assert_eq!(found, expected);
    let frame = ideal_frame(&site, DEFAULT_FRAME_CAP).unwrap();
    assert_eq!(frame.len(), 8);
    let space = point_space(&site).unwrap();
    let cmp = compare_frame_with_space(&frame, &space);
    assert!(cmp.injective && cmp.surjective);
    assert_eq!(space.opens.len(), 8);
}

#[test]
fn powerset_and_generator_frames_agree() {
    let h = boolean_cube();
    for site in [
        Site::new(h.clone(), Coverage::trivial(&h)),
        Site::new(h.clone(), Coverage::finite_suprema(&h).unwrap()),
    ] {
        let a = frame_by_powerset(&site);
        let b = frame_by_generators(&site, DEFAULT_FRAME_CAP).unwrap();
        assert_eq!(a.elements(), b.elements());
    }
}

#[test]
fn frame_cap_is_enforced() {
    let h = boolean_cube();
    let site = Site::new(h.clone(), Coverage::trivial(&h));
    assert!(matches!(
        frame_by_generators(&site, 3),
        Err(LocaleError::FrameTooLarge { .. })
    ));
}

#[test]
fn va_points_match_the_prime_spectrum() {
    for a in [
        product(&[2, 2]),
        product(&[1, 1, 1]),
        product(&[2, 3]),
        product(&[4]),
    ] {
        let va = va_lattice(&a).unwrap();
        assert!(check_topology_axioms(&va.site).is_topology());
        assert!(va.meets_match_joins(&a));
        let report = va_points_vs_primes(&a).unwrap();
        assert!(report.bijective && report.base_opens_match);
        assert!(report.oplus_law && report.descent_filters_match_opens);
        let primes: BTreeSet<_> = enumerate_primes(&a).unwrap().into_iter().collect();
        let from_points: BTreeSet<_> = points(&va.site)
            .iter()
            .map(|p| va.point_to_ideal(&a, p))
            .collect();
        assert_eq!(primes, from_points);
        assert_eq!(from_points.len(), build_spectrum(&a).unwrap().num_points());
    }
}
