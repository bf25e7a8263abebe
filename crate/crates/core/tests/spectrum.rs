use mvsheaf_core::algebra::Pairing;
use mvsheaf_core::ideals::{
    enumerate_maximals, enumerate_primes, is_maximal, is_prime, principal_generator,
    principal_ideal, quotient, Ideal,
};
use mvsheaf_core::spectrum::{
    build_spectrum, maximal_spectrum, point_generator, pushout_is_pullback, SpectrumError,
    VerificationMethod,
};
use mvsheaf_core::{FiniteMvAlgebra, MvValue};

fn chain(k: usize) -> FiniteMvAlgebra {
    FiniteMvAlgebra::chain(k).unwrap()
}

fn product(ks: &[usize]) -> FiniteMvAlgebra {
    FiniteMvAlgebra::product_of(&ks.iter().map(|&k| chain(k)).collect::<Vec<_>>()).unwrap()
}

fn suite() -> Vec<FiniteMvAlgebra> {
    let mut out: Vec<_> = (1..=5).map(chain).collect();
    out.extend([
        product(&[2, 2]),
        product(&[2, 3]),
        product(&[1, 1, 1]),
        product(&[1, 4]),
    ]);
    out
}

/// Isomorphism of small algebras by brute force over bijections that fix
/// `0` and commute with `⊕` and `¬`.
fn isomorphic(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> bool {
    fn extend(
        a: &FiniteMvAlgebra,
        b: &FiniteMvAlgebra,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == a.size() {
            return a.elements().all(|x| {
                let fx = MvValue::new(map[x.index()]);
                b.neg(fx).index() == map[a.neg(x).index()]
                    && a.elements().all(|y| {
                        b.oplus(fx, MvValue::new(map[y.index()])).index()
                            == map[a.oplus(x, y).index()]
                    })
            });
        }
        for j in 0..b.size() {
            if !used[j] {
                used[j] = true;
                map.push(j);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.size() == b.size() && extend(a, b, &mut Vec::new(), &mut vec![false; b.size()])
}

#[test]
fn finite_algebras_have_only_maximal_primes() {
    for a in suite() {
        let primes = enumerate_primes(&a).unwrap();
        assert_eq!(primes, enumerate_maximals(&a).unwrap());
        let full = build_spectrum(&a).unwrap();
        let max = maximal_spectrum(&a).unwrap();
        assert_eq!(full.points(), max.spectrum.points());
        assert!(full.is_discrete());
    }
}

#[test]
fn stalks_are_quotients_by_generators() {
    for a in suite() {
        let s = build_spectrum(&a).unwrap();
        for (i, p) in s.points().iter().enumerate() {
            let g = principal_generator(&a, p);
            assert_eq!(g, point_generator(&s, i));
            assert_eq!(&principal_ideal(&a, g), p);
            assert!(isomorphic(
                &s.stalk(i).algebra,
                &quotient(&a, &principal_ideal(&a, g)).algebra
            ));
        }
    }
}

#[test]
fn stalks_of_products_are_the_factors() {
    // the points of Ł₂ × Ł₃ sit over the two factors
    let a = product(&[2, 3]);
    let s = build_spectrum(&a).unwrap();
    let mut sizes: Vec<usize> = s.stalks().iter().map(|q| q.algebra.size()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![3, 4]);
    for q in s.stalks() {
        assert!(isomorphic(&q.algebra, &chain(q.algebra.size() - 1)));
    }
}

#[test]
fn preimages_under_projections_are_prime_and_maximal() {
    for (l, r) in [(2, 2), (1, 3), (3, 2)] {
        let (x, y) = (chain(l), chain(r));
        let a = FiniteMvAlgebra::product(&x, &y);
        let pairing = Pairing::of(&x, &y);
        for p in enumerate_primes(&x).unwrap() {
            let pulled = a.elements().filter(|&z| p.contains(pairing.unpair(z).0));
            let pulled = Ideal::from_elements(&a, pulled).unwrap();
            assert!(is_prime(&a, &pulled).unwrap());
            assert!(is_maximal(&a, &pulled).unwrap());
        }
    }
}

#[test]
fn every_pair_satisfies_the_pullback() {
    for a in [product(&[2, 2]), product(&[1, 1, 1]), chain(4)] {
        for a1 in a.elements() {
            for a2 in a.elements() {
                assert!(pushout_is_pullback(&a, a1, a2), "{a1} {a2}");
            }
        }
    }
}

#[test]
fn cap_switches_to_gluing_argument() {
    let a = product(&[2, 2, 2]);
    let s = build_spectrum(&a).unwrap();
    let exhaustive = s.verify_representation(1_000_000).unwrap();
    assert_eq!(exhaustive.method, VerificationMethod::Exhaustive);
    let glued = s.verify_representation(4).unwrap();
    assert_eq!(glued.method, VerificationMethod::CountingAndGluing);
    assert!(exhaustive.is_bijective() && glued.is_bijective());
    assert_eq!(exhaustive.sections, 27);
    assert_eq!(glued.sections, 27);
    assert!(matches!(
        s.enumerate_global_sections(4),
        Err(SpectrumError::TooManySections { .. })
    ));
}
