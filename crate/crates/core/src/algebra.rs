//! Finite MV-algebras given by exact operation tables.
//!
//! Elements are carrier indices ([`MvValue`]). Chains `Ł_k` and products of
//! chains additionally carry a rational label per element; table-defined
//! algebras need not embed in `[0,1]` and carry none.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::rational::{ratio, Rational};

/// An element of a specific [`FiniteMvAlgebra`], identified by its carrier index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MvValue(usize);

impl MvValue {
    pub const fn new(index: usize) -> Self {
        MvValue(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for MvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("chain Ł_k needs k >= 1 (use FiniteMvAlgebra::trivial for the one-element algebra)")]
    ZeroChain,
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("table shape mismatch: {0}")]
    Shape(&'static str),
    #[error("table entry {entry} out of range for carrier of size {size}")]
    EntryOutOfRange { entry: usize, size: usize },
    #[error("no two-sided unit for oplus; supply zero explicitly")]
    NoZero,
    #[error("carrier size {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("element {index} is foreign to an algebra of size {size}")]
    Foreign { index: usize, size: usize },
    #[error("operation {op} expects {expected} argument(s), got {got}")]
    Arity { op: Op, expected: usize, got: usize },
}

/// Primitive and derived operations accepted by [`FiniteMvAlgebra::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Zero,
    One,
    Oplus,
    Neg,
    Odot,
    Ominus,
    Join,
    Meet,
    Dist,
    /// `n·x = x ⊕ … ⊕ x` (n times), `0·x = 0`.
    Scalar(u64),
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Zero | Op::One => 0,
            Op::Neg | Op::Scalar(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Zero => f.write_str("zero"),
            Op::One => f.write_str("one"),
            Op::Oplus => f.write_str("oplus"),
            Op::Neg => f.write_str("neg"),
            Op::Odot => f.write_str("odot"),
            Op::Ominus => f.write_str("ominus"),
            Op::Join => f.write_str("join"),
            Op::Meet => f.write_str("meet"),
            Op::Dist => f.write_str("dist"),
            Op::Scalar(n) => write!(f, "scalar({n})"),
        }
    }
}

/// A finite MV-algebra `(A, ⊕, ¬, 0)` with precomputed derived tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMvAlgebra {
    size: usize,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    odot: Vec<usize>,
    ominus: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    labels: Option<Vec<Vec<Rational>>>,
}

impl FiniteMvAlgebra {
    /// The one-element algebra, where `1 = 0`.
    pub fn trivial() -> Self {
        Self::assemble(1, vec![0], vec![0], 0, Some(vec![Vec::new()]))
    }

    /// The chain `Ł_k = {0, 1/k, …, 1}` with `x ⊕ y = min(1, x + y)`, `¬x = 1 − x`.
    pub fn chain(k: usize) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::ZeroChain);
        }
        let size = k + 1;
        let mut oplus = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                oplus[x * size + y] = (x + y).min(k);
            }
        }
        let neg = (0..size).map(|x| k - x).collect();
        let labels = (0..size).map(|i| vec![ratio(i as i64, k as i64)]).collect();
        Ok(Self::assemble(size, oplus, neg, 0, Some(labels)))
    }

    /// Builds an algebra from raw tables. When `zero` is `None` the unique
    /// two-sided unit of `oplus` is used. The MV axioms are not checked here;
    /// see [`FiniteMvAlgebra::validate_axioms`].
    pub fn from_tables(
        oplus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: Option<usize>,
    ) -> Result<Self, AlgebraError> {
        let size = neg.len();
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if oplus.len() != size || oplus.iter().any(|row| row.len() != size) {
            return Err(AlgebraError::Shape("oplus must be size x size"));
        }
        let flat: Vec<usize> = oplus.into_iter().flatten().collect();
        if let Some(&entry) = flat.iter().chain(neg.iter()).find(|&&e| e >= size) {
            return Err(AlgebraError::EntryOutOfRange { entry, size });
        }
        let zero = match zero {
            Some(z) if z < size => z,
            Some(z) => return Err(AlgebraError::EntryOutOfRange { entry: z, size }),
            None => (0..size)
                .find(|&z| (0..size).all(|x| flat[z * size + x] == x && flat[x * size + z] == x))
                .ok_or(AlgebraError::NoZero)?,
        };
        Ok(Self::assemble(size, flat, neg, zero, None))
    }

    fn assemble(
        size: usize,
        oplus: Vec<usize>,
        neg: Vec<usize>,
        zero: usize,
        labels: Option<Vec<Vec<Rational>>>,
    ) -> Self {
        let mut odot = vec![0; size * size];
        let mut ominus = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                odot[x * size + y] = neg[oplus[neg[x] * size + neg[y]]];
            }
        }
        for x in 0..size {
            for y in 0..size {
                ominus[x * size + y] = odot[x * size + neg[y]];
            }
        }
        // x ∨ y = (x ⊖ y) ⊕ y,  x ∧ y = ¬(¬x ∨ ¬y)
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                join[x * size + y] = oplus[ominus[x * size + y] * size + y];
            }
        }
        let mut meet = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                meet[x * size + y] = neg[join[neg[x] * size + neg[y]]];
            }
        }
        FiniteMvAlgebra {
            size,
            oplus,
            neg,
            zero,
            odot,
            ominus,
            join,
            meet,
            labels,
        }
    }

    /// Componentwise product `A × B`; element `(i, j)` has index `i·|B| + j`
    /// (see [`Pairing`]).
    pub fn product(a: &Self, b: &Self) -> Self {
        let p = Pairing::new(a.size, b.size);
        let size = a.size * b.size;
        let mut oplus = vec![0; size * size];
        for x in 0..size {
            let (x1, x2) = p.unpair_raw(x);
            for y in 0..size {
                let (y1, y2) = p.unpair_raw(y);
                oplus[x * size + y] =
                    p.pair_raw(a.oplus[x1 * a.size + y1], b.oplus[x2 * b.size + y2]);
            }
        }
        let neg = (0..size)
            .map(|x| {
                let (x1, x2) = p.unpair_raw(x);
                p.pair_raw(a.neg[x1], b.neg[x2])
            })
            .collect();
        let zero = p.pair_raw(a.zero, b.zero);
        let labels = match (&a.labels, &b.labels) {
            (Some(la), Some(lb)) => Some(
                (0..size)
                    .map(|x| {
                        let (x1, x2) = p.unpair_raw(x);
                        la[x1].iter().chain(lb[x2].iter()).cloned().collect()
                    })
                    .collect(),
            ),
            _ => None,
        };
        Self::assemble(size, oplus, neg, zero, labels)
    }

    /// Product of a non-empty list of factors, associated to the left.
    pub fn product_of(factors: &[Self]) -> Option<Self> {
        let (first, rest) = factors.split_first()?;
        Some(
            rest.iter()
                .fold(first.clone(), |acc, f| Self::product(&acc, f)),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = MvValue> + Clone {
        (0..self.size).map(MvValue)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> MvValue {
        MvValue(self.zero)
    }

    pub fn one(&self) -> MvValue {
        MvValue(self.neg[self.zero])
    }

    /// Rational coordinates of an element, present for chains and their products.
    pub fn label(&self, x: MvValue) -> Option<&[Rational]> {
        self.labels.as_ref().map(|l| l[x.0].as_slice())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Finds the element carrying the given label.
    pub fn element_with_label(&self, label: &[Rational]) -> Option<MvValue> {
        let labels = self.labels.as_ref()?;
        labels
            .iter()
            .position(|l| l.as_slice() == label)
            .map(MvValue)
    }

    pub fn check(&self, x: MvValue) -> Result<MvValue, AlgebraError> {
        if x.0 < self.size {
            Ok(x)
        } else {
            Err(AlgebraError::Foreign {
                index: x.0,
                size: self.size,
            })
        }
    }

    #[inline]
    pub fn oplus(&self, x: MvValue, y: MvValue) -> MvValue {
        MvValue(self.oplus[x.0 * self.size + y.0])
    }

    #[inline]
    pub fn neg(&self, x: MvValue) -> MvValue {
        MvValue(self.neg[x.0])
    }

    #[inline]
    pub fn odot(&self, x: MvValue, y: MvValue) -> MvValue {
        MvValue(self.odot[x.0 * self.size + y.0])
    }

    #[inline]
    pub fn ominus(&self, x: MvValue, y: MvValue) -> MvValue {
        MvValue(self.ominus[x.0 * self.size + y.0])
    }

    #[inline]
    pub fn join(&self, x: MvValue, y: MvValue) -> MvValue {
        MvValue(self.join[x.0 * self.size + y.0])
    }

    #[inline]
    pub fn meet(&self, x: MvValue, y: MvValue) -> MvValue {
        MvValue(self.meet[x.0 * self.size + y.0])
    }

    /// `d(x, y) = (x ⊖ y) ⊕ (y ⊖ x)`.
    #[inline]
    pub fn dist(&self, x: MvValue, y: MvValue) -> MvValue {
        self.oplus(self.ominus(x, y), self.ominus(y, x))
    }

    /// `n·x`. Stops iterating once the sequence stabilizes.
    pub fn scalar(&self, n: u64, x: MvValue) -> MvValue {
        let mut acc = self.zero();
        for _ in 0..n {
            let next = self.oplus(acc, x);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// `x ≤ y ⟺ x ⊖ y = 0`.
    #[inline]
    pub fn leq(&self, x: MvValue, y: MvValue) -> bool {
        self.ominus(x, y) == self.zero()
    }

    /// `x ≤ y ⟺ ∃z, x ⊕ z = y`.
    pub fn leq_existential(&self, x: MvValue, y: MvValue) -> bool {
        self.elements().any(|z| self.oplus(x, z) == y)
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = MvValue>) -> MvValue {
        xs.into_iter().fold(self.one(), |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = MvValue>) -> MvValue {
        xs.into_iter().fold(self.zero(), |acc, x| self.join(acc, x))
    }

    /// Applies a named operation with arity and ownership checks.
    pub fn apply(&self, op: Op, args: &[MvValue]) -> Result<MvValue, AlgebraError> {
        if args.len() != op.arity() {
            return Err(AlgebraError::Arity {
                op,
                expected: op.arity(),
                got: args.len(),
            });
        }
        for &a in args {
            self.check(a)?;
        }
        Ok(match op {
            Op::Zero => self.zero(),
            Op::One => self.one(),
            Op::Oplus => self.oplus(args[0], args[1]),
            Op::Neg => self.neg(args[0]),
            Op::Odot => self.odot(args[0], args[1]),
            Op::Ominus => self.ominus(args[0], args[1]),
            Op::Join => self.join(args[0], args[1]),
            Op::Meet => self.meet(args[0], args[1]),
            Op::Dist => self.dist(args[0], args[1]),
            Op::Scalar(n) => self.scalar(n, args[0]),
        })
    }

    /// Searches `n = 1..=|A|` for `n·a = (n+1)·a`. The sequence `n·a` is
    /// increasing in a finite poset, so it stabilizes within `|A|` steps and
    /// the search is complete.
    pub fn archimedean_witness(&self, a: MvValue) -> Option<u64> {
        let mut na = a;
        for n in 1..=self.size as u64 {
            let next = self.oplus(na, a);
            if next == na {
                return Some(n);
            }
            na = next;
        }
        None
    }

    pub fn is_archimedean_element(&self, a: MvValue) -> (bool, Option<u64>) {
        let w = self.archimedean_witness(a);
        (w.is_some(), w)
    }

    /// Exhaustively checks the MV axioms and the standard derived identities.
    pub fn validate_axioms(&self) -> AxiomReport {
        let mut checks = Vec::new();
        let el: Vec<MvValue> = self.elements().collect();
        let zero = self.zero();
        let one = self.one();

        let mut unary = |name: &'static str, ok: &dyn Fn(MvValue) -> bool| {
            let cex = el.iter().copied().find(|&x| !ok(x)).map(|x| vec![x]);
            checks.push(IdentityCheck::new(name, cex));
        };
        unary("MV3: x ⊕ 0 = x", &|x| self.oplus(x, zero) == x);
        unary("MV4: ¬¬x = x", &|x| self.neg(self.neg(x)) == x);
        unary("MV5: x ⊕ 1 = 1", &|x| self.oplus(x, one) == one);
        unary("x ⊕ ¬x = 1", &|x| self.oplus(x, self.neg(x)) == one);
        unary("0 ≤ x ≤ 1", &|x| self.leq(zero, x) && self.leq(x, one));

        let pairs: Vec<(MvValue, MvValue)> = el
            .iter()
            .flat_map(|&x| el.iter().map(move |&y| (x, y)))
            .collect();
        let mut binary = |name: &'static str, ok: &dyn Fn(MvValue, MvValue) -> bool| {
            let cex = pairs
                .iter()
                .find(|&&(x, y)| !ok(x, y))
                .map(|&(x, y)| vec![x, y]);
            checks.push(IdentityCheck::new(name, cex));
        };
        binary("MV2: x ⊕ y = y ⊕ x", &|x, y| {
            self.oplus(x, y) == self.oplus(y, x)
        });
        binary("MV6: ¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x", &|x, y| {
            self.oplus(self.neg(self.oplus(self.neg(x), y)), y)
                == self.oplus(self.neg(self.oplus(self.neg(y), x)), x)
        });
        binary("order: x ⊖ y = 0 ⟺ ∃z x ⊕ z = y", &|x, y| {
            self.leq(x, y) == self.leq_existential(x, y)
        });
        binary("order antisymmetric", &|x, y| {
            !(self.leq(x, y) && self.leq(y, x)) || x == y
        });
        binary("x ∧ y ≤ x ⊕ y", &|x, y| {
            self.leq(self.meet(x, y), self.oplus(x, y))
        });
        binary("x ⊙ y ≤ x ∧ y", &|x, y| {
            self.leq(self.odot(x, y), self.meet(x, y))
        });
        binary("d(x,y) = 0 ⟺ x = y", &|x, y| {
            (self.dist(x, y) == zero) == (x == y)
        });
        binary("(x ⊖ y) ∧ (y ⊖ x) = 0", &|x, y| {
            self.meet(self.ominus(x, y), self.ominus(y, x)) == zero
        });

        let mut ternary = |name: &'static str, ok: &dyn Fn(MvValue, MvValue, MvValue) -> bool| {
            let mut cex = None;
            'search: for &x in &el {
                for &y in &el {
                    for &z in &el {
                        if !ok(x, y, z) {
                            cex = Some(vec![x, y, z]);
                            break 'search;
                        }
                    }
                }
            }
            checks.push(IdentityCheck::new(name, cex));
        };
        ternary("MV1: x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ z", &|x, y, z| {
            self.oplus(x, self.oplus(y, z)) == self.oplus(self.oplus(x, y), z)
        });
        ternary("order transitive", &|x, y, z| {
            !(self.leq(x, y) && self.leq(y, z)) || self.leq(x, z)
        });
        ternary("x ∨ y is the least upper bound", &|x, y, z| {
            let j = self.join(x, y);
            self.leq(x, j)
                && self.leq(y, j)
                && (!(self.leq(x, z) && self.leq(y, z)) || self.leq(j, z))
        });
        ternary("x ∧ y is the greatest lower bound", &|x, y, z| {
            let m = self.meet(x, y);
            self.leq(m, x)
                && self.leq(m, y)
                && (!(self.leq(z, x) && self.leq(z, y)) || self.leq(z, m))
        });

        // n(x ∧ y) = nx ∧ ny for n = 0..=|A|; beyond |A| every sequence is constant.
        let mut cex = None;
        'outer: for n in 0..=self.size as u64 {
            for &(x, y) in &pairs {
                if self.scalar(n, self.meet(x, y))
                    != self.meet(self.scalar(n, x), self.scalar(n, y))
                {
                    cex = Some(vec![MvValue(n as usize), x, y]);
                    break 'outer;
                }
            }
        }
        checks.push(IdentityCheck::new(
            "n(x ∧ y) = nx ∧ ny  [witness: n, x, y]",
            cex,
        ));

        AxiomReport { checks }
    }
}

/// One identity checked by [`FiniteMvAlgebra::validate_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<Vec<MvValue>>,
}

impl IdentityCheck {
    fn new(name: &'static str, counterexample: Option<Vec<MvValue>>) -> Self {
        IdentityCheck {
            name,
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<IdentityCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Index arithmetic for `A × B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    left: usize,
    right: usize,
}

impl Pairing {
    pub fn new(left_size: usize, right_size: usize) -> Self {
        Pairing {
            left: left_size,
            right: right_size,
        }
    }

    pub fn of(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Self {
        Self::new(a.size(), b.size())
    }

    fn pair_raw(&self, i: usize, j: usize) -> usize {
        i * self.right + j
    }

    fn unpair_raw(&self, k: usize) -> (usize, usize) {
        (k / self.right, k % self.right)
    }

    pub fn pair(&self, x: MvValue, y: MvValue) -> MvValue {
        debug_assert!(x.0 < self.left && y.0 < self.right);
        MvValue(self.pair_raw(x.0, y.0))
    }

    pub fn unpair(&self, z: MvValue) -> (MvValue, MvValue) {
        let (i, j) = self.unpair_raw(z.0);
        (MvValue(i), MvValue(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &FiniteMvAlgebra, label: &[(i64, i64)]) -> MvValue {
        let l: Vec<Rational> = label.iter().map(|&(n, d)| ratio(n, d)).collect();
        a.element_with_label(&l).unwrap()
    }

    #[test]
    fn boolean_chain() {
        let b = FiniteMvAlgebra::chain(1).unwrap();
        assert_eq!(b.size(), 2);
        assert_eq!(b.oplus(b.one(), b.one()), b.one());
    }

    #[test]
    fn chain_four_oplus() {
        let a = FiniteMvAlgebra::chain(4).unwrap();
        let q = |i| MvValue::new(i);
        assert_eq!(a.oplus(q(1), q(2)), q(3));
        assert_eq!(a.oplus(q(3), q(2)), q(4));
        assert_eq!(a.dist(q(1), q(3)), q(2));
        assert_eq!(a.apply(Op::Scalar(3), &[q(1)]).unwrap(), q(3));
        assert_eq!(a.apply(Op::Scalar(5), &[q(1)]).unwrap(), q(4));
        assert!(a.leq(q(1), q(3)));
    }

    #[test]
    fn chain_two_negation() {
        let a = FiniteMvAlgebra::chain(2).unwrap();
        assert_eq!(a.neg(MvValue::new(1)), MvValue::new(1));
    }

    #[test]
    fn zero_chain_rejected() {
        assert_eq!(FiniteMvAlgebra::chain(0), Err(AlgebraError::ZeroChain));
    }

    #[test]
    fn products() {
        let b = FiniteMvAlgebra::chain(1).unwrap();
        let bb = FiniteMvAlgebra::product(&b, &b);
        assert_eq!(bb.size(), 4);
        assert_eq!(
            bb.meet(el(&bb, &[(1, 1), (0, 1)]), el(&bb, &[(0, 1), (1, 1)])),
            bb.zero()
        );

        let l2 = FiniteMvAlgebra::chain(2).unwrap();
        let p = FiniteMvAlgebra::product(&l2, &l2);
        assert_eq!(
            p.oplus(el(&p, &[(1, 2), (1, 1)]), el(&p, &[(1, 2), (0, 1)])),
            el(&p, &[(1, 1), (1, 1)])
        );
        assert!(!p.leq(el(&p, &[(1, 2), (0, 1)]), el(&p, &[(0, 1), (1, 2)])));

        let l3 = FiniteMvAlgebra::chain(3).unwrap();
        assert_eq!(FiniteMvAlgebra::product(&l2, &l3).size(), 12);
    }

    #[test]
    fn pairing_round_trip() {
        let p = Pairing::new(3, 4);
        for i in 0..3 {
            for j in 0..4 {
                let z = p.pair(MvValue::new(i), MvValue::new(j));
                assert_eq!(p.unpair(z), (MvValue::new(i), MvValue::new(j)));
            }
        }
    }

    #[test]
    fn apply_errors() {
        let a = FiniteMvAlgebra::chain(2).unwrap();
        assert!(matches!(
            a.apply(Op::Oplus, &[MvValue::new(0)]),
            Err(AlgebraError::Arity {
                expected: 2,
                got: 1,
                ..
            })
        ));
        assert!(matches!(
            a.apply(Op::Neg, &[MvValue::new(7)]),
            Err(AlgebraError::Foreign { index: 7, size: 3 })
        ));
    }

    #[test]
    fn validation_passes_on_constructed_algebras() {
        assert!(FiniteMvAlgebra::chain(5)
            .unwrap()
            .validate_axioms()
            .all_passed());
        let p = FiniteMvAlgebra::product(
            &FiniteMvAlgebra::chain(2).unwrap(),
            &FiniteMvAlgebra::chain(3).unwrap(),
        );
        let report = p.validate_axioms();
        assert!(
            report.all_passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert!(report.checks.iter().any(|c| c.name.starts_with("n(x ∧ y)")));
        assert!(FiniteMvAlgebra::trivial().validate_axioms().all_passed());
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        // Ł₂ with 1/2 ⊕ 1/2 = 0
        let oplus = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]];
        let a = FiniteMvAlgebra::from_tables(oplus, vec![2, 1, 0], None).unwrap();
        let report = a.validate_axioms();
        assert!(!report.all_passed());
        let assoc = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("MV1"))
            .unwrap();
        let mv6 = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("MV6"))
            .unwrap();
        assert!(!assoc.passed || !mv6.passed);
        for c in report.failures() {
            assert!(c.counterexample.is_some());
        }
    }

    #[test]
    fn table_zero_detection() {
        let c = FiniteMvAlgebra::chain(3).unwrap();
        let oplus: Vec<Vec<usize>> = (0..4)
            .map(|x| {
                (0..4)
                    .map(|y| c.oplus(MvValue::new(x), MvValue::new(y)).index())
                    .collect()
            })
            .collect();
        let t = FiniteMvAlgebra::from_tables(oplus, vec![3, 2, 1, 0], None).unwrap();
        assert_eq!(t.zero(), MvValue::new(0));
        assert!(t.validate_axioms().all_passed());
        assert_eq!(
            FiniteMvAlgebra::from_tables(vec![vec![1, 1], vec![1, 1]], vec![1, 0], None),
            Err(AlgebraError::NoZero)
        );
        assert!(matches!(
            FiniteMvAlgebra::from_tables(vec![vec![0, 5], vec![1, 1]], vec![1, 0], None),
            Err(AlgebraError::EntryOutOfRange { entry: 5, .. })
        ));
    }

    #[test]
    fn archimedean_witnesses() {
        let a = FiniteMvAlgebra::chain(4).unwrap();
        assert_eq!(a.is_archimedean_element(MvValue::new(1)), (true, Some(4)));
        assert_eq!(a.is_archimedean_element(a.zero()), (true, Some(1)));
        let l2 = FiniteMvAlgebra::chain(2).unwrap();
        let l3 = FiniteMvAlgebra::chain(3).unwrap();
        let p = FiniteMvAlgebra::product(&l2, &l3);
        assert_eq!(p.archimedean_witness(el(&p, &[(1, 2), (1, 3)])), Some(3));
        for x in p.elements() {
            assert!(p.is_archimedean_element(x).0);
        }
    }

    #[test]
    fn trivial_algebra_has_one_equal_zero() {
        let t = FiniteMvAlgebra::trivial();
        assert_eq!(t.one(), t.zero());
        assert!(t.is_trivial());
    }
}
