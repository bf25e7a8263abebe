//! Prime spectrum of a finite MV-algebra with the coZariski topology, its
//! global sections, the representation map `η`, and the gluing formulas.
//!
//! The base open attached to `a` is `W_a = { P | a ∈ P }`. A global section
//! assigns to each point `P` an element of the stalk `A/P` and is locally of
//! the form `P ↦ [b]_P`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{FiniteMvAlgebra, MvValue};
use crate::ideals::{
    enumerate_maximals, enumerate_primes, principal_generator, principal_ideal, quotient, Ideal,
    IdealError, QuotientAlgebra,
};
use crate::rational::{ratio, Rational};

/// Default cap on the number of candidate sections (product of stalk sizes).
pub const DEFAULT_SECTION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("the trivial algebra has no prime ideals")]
    TrivialAlgebra,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("spectrum invariant violated: {0}")]
    Invariant(&'static str),
    #[error("stalk product has {count} candidate sections, above the cap of {cap}")]
    TooManySections { count: u64, cap: u64 },
    #[error("[{b1}] and [{b2}] differ modulo ({a1} ∨ {a2})")]
    Incompatible {
        a1: MvValue,
        a2: MvValue,
        b1: MvValue,
        b2: MvValue,
    },
    #[error("the meet of the cover elements is not 0")]
    NotACover,
    #[error("empty family")]
    EmptyFamily,
}

/// A subset of the points of a spectrum.
pub type PointSet = Vec<bool>;

#[derive(Clone, Debug)]
pub struct PrimeSpectrum {
    algebra: FiniteMvAlgebra,
    points: Vec<Ideal>,
    base_opens: Vec<PointSet>,
    stalks: Vec<QuotientAlgebra>,
}

impl PrimeSpectrum {
    pub fn algebra(&self) -> &FiniteMvAlgebra {
        &self.algebra
    }

    pub fn points(&self) -> &[Ideal] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// `W_a`.
    pub fn base_open(&self, a: MvValue) -> &PointSet {
        &self.base_opens[a.index()]
    }

    pub fn stalk(&self, point: usize) -> &QuotientAlgebra {
        &self.stalks[point]
    }

    pub fn stalks(&self) -> &[QuotientAlgebra] {
        &self.stalks
    }

    /// Every union of base opens, sorted.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut opens: BTreeSet<PointSet> = BTreeSet::new();
        opens.insert(vec![false; self.num_points()]);
        loop {
            let mut added = false;
            let current: Vec<PointSet> = opens.iter().cloned().collect();
            for u in &current {
                for w in &self.base_opens {
                    let joined: PointSet = u.iter().zip(w).map(|(&x, &y)| x || y).collect();
                    added |= opens.insert(joined);
                }
            }
            if !added {
                return opens.into_iter().collect();
            }
        }
    }

    /// Whether every singleton is open.
    pub fn is_discrete(&self) -> bool {
        (0..self.num_points()).all(|p| {
            self.base_opens
                .iter()
                .any(|w| w.iter().enumerate().all(|(q, &m)| m == (q == p)))
        })
    }

    /// An element `a` with `W_a = {P}`, when one exists.
    pub fn isolating_element(&self, point: usize) -> Option<MvValue> {
        self.algebra.elements().find(|a| {
            self.base_opens[a.index()]
                .iter()
                .enumerate()
                .all(|(q, &m)| m == (q == point))
        })
    }

    /// `η(a)`: the section `P ↦ [a]_P`, witnessed by the single pair `(0, a)`.
    pub fn eta(&self, a: MvValue) -> GlobalSection {
        GlobalSection {
            values: self.stalks.iter().map(|s| s.project(a)).collect(),
            witness: vec![(self.algebra.zero(), a)],
        }
    }

    /// Pointwise `⊕` of two sections (witnesses are not combined).
    pub fn section_oplus(&self, s: &GlobalSection, t: &GlobalSection) -> Vec<MvValue> {
        self.stalks
            .iter()
            .enumerate()
            .map(|(p, q)| q.algebra.oplus(s.values[p], t.values[p]))
            .collect()
    }

    /// For each `a`, the distinct restrictions `([b]_Q)_{Q ∈ W_a}` over all `b`,
    /// each with the least `b` realizing it.
    fn germs(&self) -> Vec<BTreeMap<Vec<MvValue>, MvValue>> {
        let a = &self.algebra;
        a.elements()
            .map(|x| {
                let w = &self.base_opens[x.index()];
                let mut m = BTreeMap::new();
                for b in a.elements() {
                    let restricted: Vec<MvValue> = (0..self.num_points())
                        .filter(|&q| w[q])
                        .map(|q| self.stalks[q].project(b))
                        .collect();
                    m.entry(restricted).or_insert(b);
                }
                m
            })
            .collect()
    }

    fn stalk_product_size(&self) -> u64 {
        self.stalks
            .iter()
            .map(|s| s.algebra.size() as u64)
            .fold(1u64, |acc, n| acc.saturating_mul(n))
    }

    /// All locally representable sections, by exhaustion over the stalk product.
    pub fn enumerate_global_sections(&self, cap: u64) -> Result<Vec<GlobalSection>, SpectrumError> {
        let count = self.stalk_product_size();
        if count > cap {
            return Err(SpectrumError::TooManySections { count, cap });
        }
        let germs = self.germs();
        let radix: Vec<usize> = self.stalks.iter().map(|s| s.algebra.size()).collect();
        let mut digits = vec![0usize; radix.len()];
        let mut out = Vec::new();
        'tuples: loop {
            let values: Vec<MvValue> = digits.iter().map(|&d| MvValue::new(d)).collect();
            let mut witness = Vec::new();
            let mut local = true;
            for p in 0..self.num_points() {
                let found = self.algebra.elements().find_map(|a| {
                    let w = &self.base_opens[a.index()];
                    if !w[p] {
                        return None;
                    }
                    let restricted: Vec<MvValue> = (0..self.num_points())
                        .filter(|&q| w[q])
                        .map(|q| values[q])
                        .collect();
                    germs[a.index()].get(&restricted).map(|&b| (a, b))
                });
                match found {
                    Some(pair) => {
                        if !witness.contains(&pair) {
                            witness.push(pair);
                        }
                    }
                    None => {
                        local = false;
                        break;
                    }
                }
            }
            if local {
                out.push(GlobalSection { values, witness });
            }
            // next tuple in mixed radix
            for (d, &r) in digits.iter_mut().zip(&radix) {
                *d += 1;
                if *d < r {
                    continue 'tuples;
                }
                *d = 0;
            }
            break;
        }
        Ok(out)
    }

    /// Checks that `η: A → Γ(Spec A)` is a bijection.
    pub fn verify_representation(&self, cap: u64) -> Result<RepresentationReport, SpectrumError> {
        let a = &self.algebra;
        let images: Vec<GlobalSection> = a.elements().map(|x| self.eta(x)).collect();
        let mut seen: BTreeMap<&[MvValue], MvValue> = BTreeMap::new();
        let mut collision = None;
        for (x, s) in a.elements().zip(&images) {
            if let Some(&y) = seen.get(s.values.as_slice()) {
                collision.get_or_insert((y, x));
            } else {
                seen.insert(&s.values, x);
            }
        }
        let injective = collision.is_none();

        match self.enumerate_global_sections(cap) {
            Ok(sections) => {
                let missing = sections
                    .iter()
                    .find(|s| !seen.contains_key(s.values.as_slice()))
                    .cloned();
                Ok(RepresentationReport {
                    algebra_size: a.size(),
                    sections: sections.len() as u64,
                    injective,
                    surjective: missing.is_none(),
                    method: VerificationMethod::Exhaustive,
                    collision,
                    missing,
                })
            }
            Err(SpectrumError::TooManySections { count, .. }) => {
                // Γ sits inside the stalk product; an injective η whose image
                // already has that many elements is onto. The coordinate
                // sections are additionally rebuilt by gluing their covers.
                let counting = injective && count == a.size() as u64;
                let glued = self.coordinate_sections_glue()?;
                Ok(RepresentationReport {
                    algebra_size: a.size(),
                    sections: count,
                    injective,
                    surjective: counting && glued,
                    method: VerificationMethod::CountingAndGluing,
                    collision,
                    missing: None,
                })
            }
            Err(e) => Err(e),
        }
    }

    /// For every point `P` and stalk element `c`, glues the section that is
    /// `c` at `P` and `0` elsewhere from its isolating cover and checks that
    /// `η` of the result is that section.
    fn coordinate_sections_glue(&self) -> Result<bool, SpectrumError> {
        let a = &self.algebra;
        let isolating: Option<Vec<MvValue>> = (0..self.num_points())
            .map(|p| self.isolating_element(p))
            .collect();
        let Some(isolating) = isolating else {
            return Ok(false);
        };
        for p in 0..self.num_points() {
            for c in self.stalks[p].algebra.elements() {
                let pairs: Vec<(MvValue, MvValue)> = (0..self.num_points())
                    .map(|q| {
                        let b = if q == p {
                            self.stalks[p].lift(c)
                        } else {
                            a.zero()
                        };
                        (isolating[q], b)
                    })
                    .collect();
                let b = glue_many(a, &pairs)?;
                let eta = self.eta(b);
                let ok = eta.values.iter().enumerate().all(|(q, &v)| {
                    v == if q == p {
                        c
                    } else {
                        self.stalks[q].algebra.zero()
                    }
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Complement of `W_a` is a union of base opens.
    pub fn is_clopen(&self, a: MvValue) -> bool {
        let w = &self.base_opens[a.index()];
        let complement: PointSet = w.iter().map(|&m| !m).collect();
        let mut union = vec![false; self.num_points()];
        for b in &self.base_opens {
            if b.iter().zip(&complement).all(|(&x, &c)| !x || c) {
                for (u, &x) in union.iter_mut().zip(b) {
                    *u |= x;
                }
            }
        }
        union == complement
    }
}

/// Builds `Spec A`: the prime ideals, the base opens `W_a`, and the stalks `A/P`.
pub fn build_spectrum(a: &FiniteMvAlgebra) -> Result<PrimeSpectrum, SpectrumError> {
    if a.is_trivial() {
        return Err(SpectrumError::TrivialAlgebra);
    }
    let points = enumerate_primes(a)?;
    spectrum_on(a, points)
}

fn spectrum_on(a: &FiniteMvAlgebra, points: Vec<Ideal>) -> Result<PrimeSpectrum, SpectrumError> {
    let base_opens: Vec<PointSet> = a
        .elements()
        .map(|x| points.iter().map(|p| p.contains(x)).collect())
        .collect();
    let stalks = points.iter().map(|p| quotient(a, p)).collect();
    let spec = PrimeSpectrum {
        algebra: a.clone(),
        points,
        base_opens,
        stalks,
    };
    let w = |x: MvValue| &spec.base_opens[x.index()];
    if w(a.zero()).iter().any(|&m| !m) {
        return Err(SpectrumError::Invariant("W_0 must be every point"));
    }
    if w(a.one()).iter().any(|&m| m) {
        return Err(SpectrumError::Invariant("W_1 must be empty"));
    }
    for x in a.elements() {
        for y in a.elements() {
            let inter: PointSet = w(x).iter().zip(w(y)).map(|(&p, &q)| p && q).collect();
            if &inter != w(a.oplus(x, y)) {
                return Err(SpectrumError::Invariant("W_a ∩ W_b ≠ W_(a⊕b)"));
            }
            let union: PointSet = w(x).iter().zip(w(y)).map(|(&p, &q)| p || q).collect();
            if &union != w(a.meet(x, y)) {
                return Err(SpectrumError::Invariant("W_a ∪ W_b ≠ W_(a∧b)"));
            }
        }
    }
    Ok(spec)
}

/// A global section: one stalk element per point, plus a witness cover
/// `(aᵢ, bᵢ)` with `⋀ aᵢ = 0` on whose opens `W_{aᵢ}` the section equals `[bᵢ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSection {
    pub values: Vec<MvValue>,
    pub witness: Vec<(MvValue, MvValue)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMethod {
    Exhaustive,
    CountingAndGluing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub algebra_size: usize,
    pub sections: u64,
    pub injective: bool,
    pub surjective: bool,
    pub method: VerificationMethod,
    /// Two elements with the same image, when `η` is not injective.
    pub collision: Option<(MvValue, MvValue)>,
    /// A section outside the image, when `η` is not onto.
    pub missing: Option<GlobalSection>,
}

impl RepresentationReport {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `[b1] = [b2]` in `A/(a1 ∨ a2)`, where `(a1 ∨ a2) = (a1, a2) = (a1 ⊕ a2)`.
pub fn compatible(a: &FiniteMvAlgebra, a1: MvValue, a2: MvValue, b1: MvValue, b2: MvValue) -> bool {
    principal_ideal(a, a.oplus(a1, a2)).contains(a.dist(b1, b2))
}

/// `[x] = [y]` in `A/(g)`.
pub fn congruent_mod(a: &FiniteMvAlgebra, g: MvValue, x: MvValue, y: MvValue) -> bool {
    principal_ideal(a, g).contains(a.dist(x, y))
}

fn glue_multiplier(a: &FiniteMvAlgebra, a1: MvValue, a2: MvValue) -> u64 {
    // finite algebras are hyperarchimedean, so both witnesses exist
    let n1 = a
        .archimedean_witness(a1)
        .expect("finite algebras are hyperarchimedean");
    let n2 = a
        .archimedean_witness(a2)
        .expect("finite algebras are hyperarchimedean");
    n1.max(n2)
}

/// Given `[b1] = [b2]` mod `(a1 ∨ a2)`, returns
/// `b = (b1 ∧ b2) ∨ (n·a1 ∧ b2) ∨ (n·a2 ∧ b1)` with `n` the larger of the
/// archimedean witnesses of `a1`, `a2`. Then `[b] = [b1]` mod `(a1)` and
/// `[b] = [b2]` mod `(a2)`.
pub fn glue(
    a: &FiniteMvAlgebra,
    a1: MvValue,
    a2: MvValue,
    b1: MvValue,
    b2: MvValue,
) -> Result<MvValue, SpectrumError> {
    if !compatible(a, a1, a2, b1, b2) {
        return Err(SpectrumError::Incompatible { a1, a2, b1, b2 });
    }
    let n = glue_multiplier(a, a1, a2);
    let na1 = a.scalar(n, a1);
    let na2 = a.scalar(n, a2);
    Ok(a.join(a.join(a.meet(b1, b2), a.meet(na1, b2)), a.meet(na2, b1)))
}

/// The alternative gluing formula `c = (b1 ⊙ ¬n·a1) ∨ (b2 ⊙ ¬n·a2)`.
pub fn glue_alt(
    a: &FiniteMvAlgebra,
    a1: MvValue,
    a2: MvValue,
    b1: MvValue,
    b2: MvValue,
) -> Result<MvValue, SpectrumError> {
    if !compatible(a, a1, a2, b1, b2) {
        return Err(SpectrumError::Incompatible { a1, a2, b1, b2 });
    }
    let n = glue_multiplier(a, a1, a2);
    Ok(a.join(
        a.odot(b1, a.neg(a.scalar(n, a1))),
        a.odot(b2, a.neg(a.scalar(n, a2))),
    ))
}

/// Folds [`glue`] over a family `(aᵢ, bᵢ)` with `⋀ aᵢ = 0` and pairwise
/// compatible `bᵢ`; the result is the unique `b` with `[b] = [bᵢ]` mod `(aᵢ)`.
pub fn glue_many(
    a: &FiniteMvAlgebra,
    pairs: &[(MvValue, MvValue)],
) -> Result<MvValue, SpectrumError> {
    let (&(first_a, first_b), rest) = pairs.split_first().ok_or(SpectrumError::EmptyFamily)?;
    if a.meet_all(pairs.iter().map(|p| p.0)) != a.zero() {
        return Err(SpectrumError::NotACover);
    }
    for (i, &(ai, bi)) in pairs.iter().enumerate() {
        for &(aj, bj) in &pairs[i + 1..] {
            if !compatible(a, ai, aj, bi, bj) {
                return Err(SpectrumError::Incompatible {
                    a1: ai,
                    a2: aj,
                    b1: bi,
                    b2: bj,
                });
            }
        }
    }
    let mut acc_a = first_a;
    let mut acc_b = first_b;
    for &(ai, bi) in rest {
        acc_b = glue(a, acc_a, ai, acc_b, bi)?;
        acc_a = a.meet(acc_a, ai);
    }
    Ok(acc_b)
}

/// Checks that `A/(a1 ∧ a2) → A/(a1) ×_{A/(a1 ∨ a2)} A/(a2)` is a bijection
/// by enumerating the fibre product.
pub fn pushout_is_pullback(a: &FiniteMvAlgebra, a1: MvValue, a2: MvValue) -> bool {
    let q_meet = quotient(a, &principal_ideal(a, a.meet(a1, a2)));
    let q1 = quotient(a, &principal_ideal(a, a1));
    let q2 = quotient(a, &principal_ideal(a, a2));
    let q_join = quotient(a, &principal_ideal(a, a.oplus(a1, a2)));

    // fibre product: pairs of classes agreeing in A/(a1 ∨ a2)
    let mut fibre = BTreeSet::new();
    for c1 in q1.algebra.elements() {
        for c2 in q2.algebra.elements() {
            if q_join.project(q1.lift(c1)) == q_join.project(q2.lift(c2)) {
                fibre.insert((c1, c2));
            }
        }
    }
    let mut image = BTreeSet::new();
    for c in q_meet.algebra.elements() {
        let x = q_meet.lift(c);
        image.insert((q1.project(x), q2.project(x)));
    }
    image.len() == q_meet.algebra.size() && image == fibre
}

/// The maximal spectrum together with the embeddings `χ_M: A → A/M ↪ [0,1]`.
#[derive(Clone, Debug)]
pub struct MaximalSpectrum {
    pub spectrum: PrimeSpectrum,
    /// `chi[m][x]` is `χ_M(x)` for the `m`-th maximal ideal.
    pub chi: Vec<Vec<Rational>>,
}

/// `A/M` is a finite simple algebra, hence `Ł_k`; its unique embedding in
/// `[0,1]` sends the `i`-th element in order to `i/k`.
pub fn maximal_spectrum(a: &FiniteMvAlgebra) -> Result<MaximalSpectrum, SpectrumError> {
    if a.is_trivial() {
        return Err(SpectrumError::TrivialAlgebra);
    }
    let spectrum = spectrum_on(a, enumerate_maximals(a)?)?;
    let chi = spectrum
        .stalks
        .iter()
        .map(|q| {
            let chain = &q.algebra;
            let k = chain.size() as i64 - 1;
            a.elements()
                .map(|x| {
                    let c = q.project(x);
                    let rank = chain
                        .elements()
                        .filter(|&y| y != c && chain.leq(y, c))
                        .count();
                    ratio(rank as i64, k)
                })
                .collect()
        })
        .collect();
    Ok(MaximalSpectrum { spectrum, chi })
}

/// The largest element of a prime, which generates it.
pub fn point_generator(spec: &PrimeSpectrum, point: usize) -> MvValue {
    principal_generator(&spec.algebra, &spec.points[point])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn l(k: usize) -> FiniteMvAlgebra {
        FiniteMvAlgebra::chain(k).unwrap()
    }

    fn el(a: &FiniteMvAlgebra, label: &[(i64, i64)]) -> MvValue {
        let l: Vec<Rational> = label.iter().map(|&(n, d)| ratio(n, d)).collect();
        a.element_with_label(&l).unwrap()
    }

    #[test]
    fn trivial_algebra_has_no_spectrum() {
        assert!(matches!(
            build_spectrum(&FiniteMvAlgebra::trivial()),
            Err(SpectrumError::TrivialAlgebra)
        ));
    }

    #[test]
    fn chain_spectrum_is_a_point() {
        let a = l(4);
        let s = build_spectrum(&a).unwrap();
        assert_eq!(s.num_points(), 1);
        assert_eq!(s.base_open(a.zero()), &vec![true]);
        for x in a.elements().skip(1) {
            assert_eq!(s.base_open(x), &vec![false]);
        }
        assert_eq!(
            s.enumerate_global_sections(DEFAULT_SECTION_CAP)
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn square_spectrum_is_discrete() {
        let a = FiniteMvAlgebra::product(&l(2), &l(2));
        let s = build_spectrum(&a).unwrap();
        assert_eq!(s.num_points(), 2);
        assert!(s.is_discrete());
        let x = el(&a, &[(0, 1), (1, 2)]);
        let w = s.base_open(x);
        assert_eq!(w.iter().filter(|&&m| m).count(), 1);
        let p = w.iter().position(|&m| m).unwrap();
        assert!(s.points()[p].contains(el(&a, &[(0, 1), (1, 1)])));

        let sections = s.enumerate_global_sections(DEFAULT_SECTION_CAP).unwrap();
        assert_eq!(sections.len(), 9);
        for x in a.elements() {
            assert!(sections.iter().any(|sec| sec.values == s.eta(x).values));
        }
    }

    #[test]
    fn eta_values_and_morphism() {
        let a = FiniteMvAlgebra::product(&l(2), &l(2));
        let s = build_spectrum(&a).unwrap();
        let zero = s.eta(a.zero());
        assert!(zero
            .values
            .iter()
            .zip(s.stalks())
            .all(|(&v, q)| v == q.algebra.zero()));

        let x = el(&a, &[(1, 2), (1, 1)]);
        let sec = s.eta(x);
        let mut sizes: Vec<(usize, bool)> = sec
            .values
            .iter()
            .zip(s.stalks())
            .map(|(&v, q)| (q.algebra.size(), v == q.algebra.one()))
            .collect();
        sizes.sort();
        // one stalk sees 1/2 (not the top), the other sees 1
        assert_eq!(sizes, vec![(3, false), (3, true)]);

        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(
                    s.eta(a.oplus(x, y)).values,
                    s.section_oplus(&s.eta(x), &s.eta(y))
                );
            }
        }
    }

    #[test]
    fn representation_on_small_algebras() {
        for a in [
            FiniteMvAlgebra::product(&l(2), &l(2)),
            l(6),
            FiniteMvAlgebra::product_of(&[l(1), l(1), l(1)]).unwrap(),
        ] {
            let r = build_spectrum(&a)
                .unwrap()
                .verify_representation(DEFAULT_SECTION_CAP)
                .unwrap();
            assert!(r.is_bijective());
            assert_eq!(r.sections, a.size() as u64);
            assert_eq!(r.method, VerificationMethod::Exhaustive);
        }
    }

    #[test]
    fn representation_fallback_above_cap() {
        let a = FiniteMvAlgebra::product_of(&[l(2), l(1), l(3)]).unwrap();
        let s = build_spectrum(&a).unwrap();
        assert!(matches!(
            s.enumerate_global_sections(4),
            Err(SpectrumError::TooManySections { count: 24, cap: 4 })
        ));
        let r = s.verify_representation(4).unwrap();
        assert_eq!(r.method, VerificationMethod::CountingAndGluing);
        assert!(r.is_bijective());
        assert_eq!(r.sections, 24);
    }

    #[test]
    fn glue_example_in_square() {
        let a = FiniteMvAlgebra::product(&l(2), &l(2));
        let a1 = el(&a, &[(0, 1), (1, 1)]);
        let a2 = el(&a, &[(1, 1), (0, 1)]);
        let b1 = el(&a, &[(1, 2), (1, 2)]);
        let b2 = el(&a, &[(1, 1), (0, 1)]);
        assert_eq!(glue(&a, a1, a2, b1, b2).unwrap(), el(&a, &[(1, 2), (0, 1)]));
        assert_eq!(
            glue_alt(&a, a1, a2, b1, b2).unwrap(),
            el(&a, &[(1, 2), (0, 1)])
        );
    }

    #[test]
    fn glue_rejects_incompatible() {
        let a = l(2);
        // (0 ∨ 0) = {0}, and 0 ≠ 1
        assert!(matches!(
            glue(&a, a.zero(), a.zero(), a.zero(), a.one()),
            Err(SpectrumError::Incompatible { .. })
        ));
    }

    #[test]
    fn glue_same_constraint() {
        let a = FiniteMvAlgebra::product(&l(2), &l(3));
        for x in a.elements() {
            for b in a.elements() {
                let g = glue(&a, x, x, b, b).unwrap();
                assert!(congruent_mod(&a, x, g, b));
            }
        }
    }

    #[test]
    fn glue_many_reconstructs_from_projections() {
        let a = FiniteMvAlgebra::product_of(&[l(2), l(2), l(2)]).unwrap();
        let s = build_spectrum(&a).unwrap();
        assert_eq!(s.num_points(), 3);
        let killers: Vec<MvValue> = (0..3).map(|p| point_generator(&s, p)).collect();
        assert_eq!(a.zero(), a.meet_all(killers.iter().copied()));
        for target in a.elements() {
            // b_i agrees with target only in the coordinate killed by nothing but a_i
            let pairs: Vec<(MvValue, MvValue)> = killers
                .iter()
                .enumerate()
                .map(|(p, &k)| (k, s.stalk(p).lift(s.stalk(p).project(target))))
                .collect();
            assert_eq!(glue_many(&a, &pairs).unwrap(), target);
            let mut reversed = pairs.clone();
            reversed.reverse();
            assert_eq!(glue_many(&a, &reversed).unwrap(), target);
        }
        assert_eq!(
            glue_many(&a, &[(a.zero(), killers[0])]).unwrap(),
            killers[0]
        );
        assert!(matches!(
            glue_many(&a, &[(killers[0], a.zero())]),
            Err(SpectrumError::NotACover)
        ));
        assert!(matches!(
            glue_many(&a, &[]),
            Err(SpectrumError::EmptyFamily)
        ));
    }

    #[test]
    fn pullback_on_square() {
        let a = FiniteMvAlgebra::product(&l(2), &l(2));
        for a1 in a.elements() {
            for a2 in a.elements() {
                assert!(pushout_is_pullback(&a, a1, a2));
            }
        }
    }

    #[test]
    fn maximal_spectrum_and_chi() {
        let a = FiniteMvAlgebra::product(&l(2), &l(3));
        let m = maximal_spectrum(&a).unwrap();
        let s = build_spectrum(&a).unwrap();
        assert_eq!(m.spectrum.points(), s.points());
        let zero_first = Ideal::from_elements(
            &a,
            a.elements()
                .filter(|&x| a.label(x).unwrap()[0] == ratio(0, 1)),
        )
        .unwrap();
        let idx = m
            .spectrum
            .points()
            .iter()
            .position(|p| *p == zero_first)
            .unwrap();
        for x in a.elements() {
            assert_eq!(m.chi[idx][x.index()], a.label(x).unwrap()[0]);
        }
        for x in a.elements() {
            assert!(m.spectrum.is_clopen(x));
        }
    }
}
