//! Ideals, primes, maximals and quotients of finite MV-algebras.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::algebra::{FiniteMvAlgebra, MvValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("subset is not an ideal of the algebra")]
    NotAnIdeal,
    #[error("member set has {got} entries, algebra has {size}")]
    SizeMismatch { got: usize, size: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
}

/// A subset of the carrier, stored as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: Vec<bool>,
}

impl Ideal {
    /// Wraps a membership vector without checking the ideal axioms.
    pub fn from_mask(members: Vec<bool>) -> Self {
        Ideal { members }
    }

    /// Builds and validates an ideal from element indices.
    pub fn from_elements(
        a: &FiniteMvAlgebra,
        elements: impl IntoIterator<Item = MvValue>,
    ) -> Result<Self, IdealError> {
        let mut members = vec![false; a.size()];
        for x in elements {
            if x.index() >= a.size() {
                return Err(IdealError::NotAnIdeal);
            }
            members[x.index()] = true;
        }
        let ideal = Ideal { members };
        if is_ideal(a, &ideal) {
            Ok(ideal)
        } else {
            Err(IdealError::NotAnIdeal)
        }
    }

    pub fn zero_ideal(a: &FiniteMvAlgebra) -> Self {
        let mut members = vec![false; a.size()];
        members[a.zero().index()] = true;
        Ideal { members }
    }

    pub fn whole(a: &FiniteMvAlgebra) -> Self {
        Ideal {
            members: vec![true; a.size()],
        }
    }

    #[inline]
    pub fn contains(&self, x: MvValue) -> bool {
        self.members[x.index()]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> Vec<MvValue> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| MvValue::new(i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn is_proper(&self, a: &FiniteMvAlgebra) -> bool {
        !self.contains(a.one())
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a && b)
                .collect(),
        }
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ideals order by their sorted member lists, the deterministic order used
/// by the enumerations below.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(&other.elements())
    }
}

/// Checks I1 (`0 ∈ I`), I2 (downward closed) and I3 (closed under `⊕`).
pub fn is_ideal(a: &FiniteMvAlgebra, i: &Ideal) -> bool {
    if i.members.len() != a.size() || !i.contains(a.zero()) {
        return false;
    }
    let members = i.elements();
    for &x in &members {
        for y in a.elements() {
            if a.leq(y, x) && !i.contains(y) {
                return false;
            }
        }
        for &y in &members {
            if !i.contains(a.oplus(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Least ideal containing `gens`, by iterating `⊕`-closure and downward
/// closure until nothing changes.
pub fn generated_ideal(a: &FiniteMvAlgebra, gens: &[MvValue]) -> Ideal {
    let mut members = vec![false; a.size()];
    members[a.zero().index()] = true;
    for g in gens {
        members[g.index()] = true;
    }
    loop {
        let mut changed = false;
        let current: Vec<MvValue> = a.elements().filter(|x| members[x.index()]).collect();
        for &x in &current {
            for &y in &current {
                let s = a.oplus(x, y);
                if !members[s.index()] {
                    members[s.index()] = true;
                    changed = true;
                }
            }
            for y in a.elements() {
                if !members[y.index()] && a.leq(y, x) {
                    members[y.index()] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ideal { members };
        }
    }
}

/// `(g) = { x | x ≤ n·g for some n }`, computed from the stabilized multiple of `g`.
pub fn principal_ideal(a: &FiniteMvAlgebra, g: MvValue) -> Ideal {
    let top = a.scalar(a.size() as u64, g);
    Ideal {
        members: a.elements().map(|x| a.leq(x, top)).collect(),
    }
}

/// A generator of `I`: the `⊕`-sum of all members, which is the largest member.
pub fn principal_generator(a: &FiniteMvAlgebra, i: &Ideal) -> MvValue {
    i.elements()
        .into_iter()
        .fold(a.zero(), |acc, x| a.oplus(acc, x))
}

/// Every ideal of a finite algebra, in deterministic order. Complete because
/// every ideal of a finite algebra is principal.
pub fn enumerate_ideals(a: &FiniteMvAlgebra) -> Vec<Ideal> {
    let mut ideals: Vec<Ideal> = a.elements().map(|g| principal_ideal(a, g)).collect();
    ideals.sort();
    ideals.dedup();
    ideals
}

/// Outcome of a primality test, with a violating pair when not prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub prime: bool,
    /// `(x, y)` with `x ∧ y = 0` and neither in `P`, when `P` is proper but not prime.
    pub witness: Option<(MvValue, MvValue)>,
}

/// Tests P1/P2 and cross-checks against P'1/P'2 (both forms).
pub fn prime_check(a: &FiniteMvAlgebra, p: &Ideal) -> Result<PrimeCheck, IdealError> {
    check_shape(a, p)?;
    if !is_ideal(a, p) {
        return Err(IdealError::NotAnIdeal);
    }
    let pairs = || {
        a.elements()
            .flat_map(move |x| a.elements().map(move |y| (x, y)))
    };
    // P1, P2
    let primary = !p.contains(a.one())
        && pairs().all(|(x, y)| p.contains(a.ominus(x, y)) || p.contains(a.ominus(y, x)));
    // P'1 together with either form of P'2
    let proper = p.len() != a.size();
    let meet_in =
        proper && pairs().all(|(x, y)| !p.contains(a.meet(x, y)) || p.contains(x) || p.contains(y));
    let witness =
        pairs().find(|&(x, y)| a.meet(x, y) == a.zero() && !p.contains(x) && !p.contains(y));
    let meet_zero = proper && witness.is_none();
    if primary != meet_in || primary != meet_zero {
        return Err(IdealError::Inconsistent(
            "prime characterizations P2 and P'2 disagree",
        ));
    }
    Ok(PrimeCheck {
        prime: primary,
        witness: if primary || !proper { None } else { witness },
    })
}

pub fn is_prime(a: &FiniteMvAlgebra, p: &Ideal) -> Result<bool, IdealError> {
    prime_check(a, p).map(|c| c.prime)
}

/// `M` is maximal iff proper and `a ∉ M ⟺ ∃n ≥ 1, ¬(n·a) ∈ M`; cross-checked
/// against simplicity of `A/M`.
pub fn is_maximal(a: &FiniteMvAlgebra, m: &Ideal) -> Result<bool, IdealError> {
    check_shape(a, m)?;
    if !is_ideal(a, m) {
        return Err(IdealError::NotAnIdeal);
    }
    if !m.is_proper(a) {
        return Ok(false);
    }
    let n_max = a.size() as u64;
    let by_multiples = a.elements().all(|x| {
        let some_neg_multiple_in = (1..=n_max).any(|n| m.contains(a.neg(a.scalar(n, x))));
        !m.contains(x) == some_neg_multiple_in
    });
    let q = quotient(a, m);
    let simple = is_simple(&q.algebra);
    if by_multiples != simple {
        return Err(IdealError::Inconsistent(
            "maximality criterion disagrees with simplicity of the quotient",
        ));
    }
    Ok(by_multiples)
}

/// Nontrivial with `{0}` as the only proper ideal.
pub fn is_simple(a: &FiniteMvAlgebra) -> bool {
    !a.is_trivial()
        && a.elements()
            .filter(|&x| x != a.zero())
            .all(|x| principal_ideal(a, x).contains(a.one()))
}

/// Whether the order of `a` is total (and `a` nontrivial).
pub fn is_chain(a: &FiniteMvAlgebra) -> bool {
    !a.is_trivial()
        && a.elements()
            .all(|x| a.elements().all(|y| a.leq(x, y) || a.leq(y, x)))
}

pub fn enumerate_primes(a: &FiniteMvAlgebra) -> Result<Vec<Ideal>, IdealError> {
    let mut out = Vec::new();
    for i in enumerate_ideals(a) {
        if is_prime(a, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn enumerate_maximals(a: &FiniteMvAlgebra) -> Result<Vec<Ideal>, IdealError> {
    let mut out = Vec::new();
    for i in enumerate_ideals(a) {
        if is_maximal(a, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// `A/I` together with the projection and a chosen section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub algebra: FiniteMvAlgebra,
    projection: Vec<MvValue>,
    section: Vec<MvValue>,
}

impl QuotientAlgebra {
    /// `[x]_I`.
    pub fn project(&self, x: MvValue) -> MvValue {
        self.projection[x.index()]
    }

    /// The least-index representative of a class.
    pub fn lift(&self, c: MvValue) -> MvValue {
        self.section[c.index()]
    }

    pub fn projection(&self) -> &[MvValue] {
        &self.projection
    }
}

/// `A/I` with `x ~ y ⟺ d(x, y) ∈ I`; classes are numbered by their least member.
pub fn quotient(a: &FiniteMvAlgebra, i: &Ideal) -> QuotientAlgebra {
    let mut projection = vec![MvValue::new(usize::MAX); a.size()];
    let mut section = Vec::new();
    for x in a.elements() {
        if projection[x.index()].index() != usize::MAX {
            continue;
        }
        let class = MvValue::new(section.len());
        section.push(x);
        for y in a.elements() {
            if i.contains(a.dist(x, y)) {
                projection[y.index()] = class;
            }
        }
    }
    let m = section.len();
    let oplus = (0..m)
        .map(|c| {
            (0..m)
                .map(|d| projection[a.oplus(section[c], section[d]).index()].index())
                .collect()
        })
        .collect();
    let neg = (0..m)
        .map(|c| projection[a.neg(section[c]).index()].index())
        .collect();
    let zero = projection[a.zero().index()].index();
    let algebra = FiniteMvAlgebra::from_tables(oplus, neg, Some(zero))
        .expect("quotient tables are well formed");
    QuotientAlgebra {
        algebra,
        projection,
        section,
    }
}

fn check_shape(a: &FiniteMvAlgebra, i: &Ideal) -> Result<(), IdealError> {
    if i.members.len() != a.size() {
        return Err(IdealError::SizeMismatch {
            got: i.members.len(),
            size: a.size(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, Rational};

    fn l(k: usize) -> FiniteMvAlgebra {
        FiniteMvAlgebra::chain(k).unwrap()
    }

    fn el(a: &FiniteMvAlgebra, label: &[(i64, i64)]) -> MvValue {
        let l: Vec<Rational> = label.iter().map(|&(n, d)| ratio(n, d)).collect();
        a.element_with_label(&l).unwrap()
    }

    fn ideal_of(a: &FiniteMvAlgebra, labels: &[&[(i64, i64)]]) -> Ideal {
        Ideal::from_elements(a, labels.iter().map(|lab| el(a, lab))).unwrap()
    }

    #[test]
    fn generated_ideals() {
        let a = l(4);
        assert_eq!(generated_ideal(&a, &[MvValue::new(1)]), Ideal::whole(&a));

        let p = FiniteMvAlgebra::product(&l(2), &l(2));
        let i = generated_ideal(&p, &[el(&p, &[(1, 2), (0, 1)])]);
        assert_eq!(
            i,
            ideal_of(
                &p,
                &[&[(0, 1), (0, 1)], &[(1, 2), (0, 1)], &[(1, 1), (0, 1)]]
            )
        );
    }

    #[test]
    fn two_generators_are_one() {
        let a = FiniteMvAlgebra::product(&l(2), &l(3));
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(
                    generated_ideal(&a, &[x, y]),
                    generated_ideal(&a, &[a.oplus(x, y)])
                );
                assert_eq!(generated_ideal(&a, &[x]), principal_ideal(&a, x));
            }
        }
    }

    #[test]
    fn generators() {
        let a = l(4);
        assert_eq!(principal_generator(&a, &Ideal::zero_ideal(&a)), a.zero());
        assert_eq!(principal_generator(&a, &Ideal::whole(&a)), a.one());
        let p = FiniteMvAlgebra::product(&l(2), &l(2));
        let i = ideal_of(
            &p,
            &[&[(0, 1), (0, 1)], &[(1, 2), (0, 1)], &[(1, 1), (0, 1)]],
        );
        assert_eq!(principal_generator(&p, &i), el(&p, &[(1, 1), (0, 1)]));
    }

    #[test]
    fn non_ideals_rejected() {
        let a = l(4);
        assert_eq!(
            Ideal::from_elements(&a, [MvValue::new(0), MvValue::new(1)]),
            Err(IdealError::NotAnIdeal)
        );
        assert_eq!(
            is_prime(&a, &Ideal::from_mask(vec![false; 5])),
            Err(IdealError::NotAnIdeal)
        );
        assert!(matches!(
            is_prime(&a, &Ideal::from_mask(vec![true; 2])),
            Err(IdealError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn primes_in_square() {
        let p = FiniteMvAlgebra::product(&l(2), &l(2));
        let first_zero = ideal_of(
            &p,
            &[&[(0, 1), (0, 1)], &[(0, 1), (1, 2)], &[(0, 1), (1, 1)]],
        );
        assert!(is_prime(&p, &first_zero).unwrap());
        assert!(is_maximal(&p, &first_zero).unwrap());

        let zero = Ideal::zero_ideal(&p);
        let check = prime_check(&p, &zero).unwrap();
        assert!(!check.prime);
        let (x, y) = check.witness.unwrap();
        assert_eq!(p.meet(x, y), p.zero());
        assert!(!zero.contains(x) && !zero.contains(y));
        assert!(!is_maximal(&p, &zero).unwrap());

        let primes = enumerate_primes(&p).unwrap();
        assert_eq!(primes.len(), 2);
        assert!(primes.contains(&first_zero));
    }

    #[test]
    fn chains_have_zero_prime() {
        for k in 1..=6 {
            let a = l(k);
            assert!(is_prime(&a, &Ideal::zero_ideal(&a)).unwrap());
            assert!(is_maximal(&a, &Ideal::zero_ideal(&a)).unwrap());
            assert_eq!(enumerate_primes(&a).unwrap(), vec![Ideal::zero_ideal(&a)]);
        }
    }

    #[test]
    fn finite_primes_are_maximal() {
        let a = FiniteMvAlgebra::product(&l(2), &l(3));
        let primes = enumerate_primes(&a).unwrap();
        assert_eq!(primes.len(), 2);
        assert_eq!(primes, enumerate_maximals(&a).unwrap());
    }

    #[test]
    fn quotients() {
        let p = FiniteMvAlgebra::product(&l(2), &l(2));
        let first = ideal_of(
            &p,
            &[&[(0, 1), (0, 1)], &[(1, 2), (0, 1)], &[(1, 1), (0, 1)]],
        );
        let q = quotient(&p, &first);
        assert_eq!(q.algebra.size(), 3);
        assert!(is_chain(&q.algebra));
        assert!(q.algebra.validate_axioms().all_passed());

        let a = l(4);
        let id = quotient(&a, &Ideal::zero_ideal(&a));
        assert_eq!(id.algebra.size(), 5);
        for x in a.elements() {
            assert_eq!(id.project(x), x);
        }
        assert!(quotient(&a, &Ideal::whole(&a)).algebra.is_trivial());
    }

    #[test]
    fn projection_is_a_morphism() {
        let a = FiniteMvAlgebra::product(&l(2), &l(3));
        for i in enumerate_ideals(&a) {
            let q = quotient(&a, &i);
            for x in a.elements() {
                assert_eq!(q.project(a.neg(x)), q.algebra.neg(q.project(x)));
                assert_eq!(q.project(x) == q.algebra.zero(), i.contains(x));
                for y in a.elements() {
                    assert_eq!(
                        q.project(a.oplus(x, y)),
                        q.algebra.oplus(q.project(x), q.project(y))
                    );
                }
            }
        }
    }
}
