//! Łukasiewicz terms: elements of the free algebra `F_n`.
//!
//! Only `0`, variables, `⊕`, `¬` and the scalar multiple `n·t` are stored;
//! every derived connective is desugared by its constructor. Children are
//! reference counted so gluing constructions can share subterms.

mod parser;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteMvAlgebra, MvValue};
use crate::rational::{cap_one, in_unit_interval, Rational};

pub use parser::{parse, parse_lines, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    /// 0-based variable index.
    Var(usize),
    Oplus(Arc<Term>, Arc<Term>),
    Neg(Arc<Term>),
    /// `n·t`, kept unexpanded because `n` can be large.
    Scalar(u64, Arc<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable x{} is unbound", .0 + 1)]
    Unbound(usize),
    #[error("coordinate {index} is outside [0,1]")]
    OutOfRange { index: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn zero() -> Term {
        Term::Zero
    }

    /// `1 = ¬0`.
    pub fn one() -> Term {
        Term::Neg(Arc::new(Term::Zero))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Arc::new(a), Arc::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Arc::new(a))
    }

    pub fn scalar(n: u64, a: Term) -> Term {
        Term::Scalar(n, Arc::new(a))
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`.
    pub fn odot(a: Term, b: Term) -> Term {
        Term::neg(Term::oplus(Term::neg(a), Term::neg(b)))
    }

    /// `x ⊖ y = x ⊙ ¬y`.
    pub fn ominus(a: Term, b: Term) -> Term {
        Term::odot(a, Term::neg(b))
    }

    /// `x ∨ y = (x ⊖ y) ⊕ y`.
    pub fn join(a: Term, b: Term) -> Term {
        Term::oplus(Term::ominus(a, b.clone()), b)
    }

    /// `x ∧ y = ¬(¬x ∨ ¬y)`.
    pub fn meet(a: Term, b: Term) -> Term {
        Term::neg(Term::join(Term::neg(a), Term::neg(b)))
    }

    /// `d(x, y) = (x ⊖ y) ⊕ (y ⊖ x)`.
    pub fn dist(a: Term, b: Term) -> Term {
        Term::oplus(Term::ominus(a.clone(), b.clone()), Term::ominus(b, a))
    }

    pub fn join_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut it = terms.into_iter();
        match it.next() {
            None => Term::Zero,
            Some(first) => it.fold(first, Term::join),
        }
    }

    pub fn meet_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut it = terms.into_iter();
        match it.next() {
            None => Term::one(),
            Some(first) => it.fold(first, Term::meet),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Zero => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Oplus(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) | Term::Scalar(_, a) => a.collect_vars(out),
        }
    }

    /// One more than the largest variable index (0 for closed terms).
    pub fn arity(&self) -> usize {
        self.free_vars().last().map_or(0, |&i| i + 1)
    }

    /// Evaluates in a finite algebra; `env[i]` is the value of `x_{i+1}`.
    pub fn eval(&self, a: &FiniteMvAlgebra, env: &[MvValue]) -> Result<MvValue, EvalError> {
        for &v in env {
            a.check(v)?;
        }
        self.eval_unchecked(a, env)
    }

    fn eval_unchecked(&self, a: &FiniteMvAlgebra, env: &[MvValue]) -> Result<MvValue, EvalError> {
        Ok(match self {
            Term::Zero => a.zero(),
            Term::Var(i) => *env.get(*i).ok_or(EvalError::Unbound(*i))?,
            Term::Oplus(l, r) => a.oplus(l.eval_unchecked(a, env)?, r.eval_unchecked(a, env)?),
            Term::Neg(t) => a.neg(t.eval_unchecked(a, env)?),
            Term::Scalar(n, t) => a.scalar(*n, t.eval_unchecked(a, env)?),
        })
    }

    /// Exact evaluation over `[0,1]` with `x ⊕ y = min(1, x + y)` and `¬x = 1 − x`.
    pub fn eval_unit(&self, point: &[Rational]) -> Result<Rational, EvalError> {
        if let Some(index) = point.iter().position(|q| !in_unit_interval(q)) {
            return Err(EvalError::OutOfRange { index });
        }
        self.eval_unit_unchecked(point)
    }

    fn eval_unit_unchecked(&self, point: &[Rational]) -> Result<Rational, EvalError> {
        Ok(match self {
            Term::Zero => Rational::zero(),
            Term::Var(i) => point.get(*i).cloned().ok_or(EvalError::Unbound(*i))?,
            Term::Oplus(l, r) => {
                cap_one(l.eval_unit_unchecked(point)? + r.eval_unit_unchecked(point)?)
            }
            Term::Neg(t) => Rational::one() - t.eval_unit_unchecked(point)?,
            Term::Scalar(n, t) => {
                let v = t.eval_unit_unchecked(point)?;
                cap_one(v * Rational::from_integer((*n).into()))
            }
        })
    }

    /// Number of nodes in the tree (shared subterms counted each time).
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 1,
            Term::Oplus(a, b) => 1 + a.size() + b.size(),
            Term::Neg(a) | Term::Scalar(_, a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 0,
            Term::Oplus(a, b) => 1 + a.depth().max(b.depth()),
            Term::Neg(a) | Term::Scalar(_, a) => 1 + a.depth(),
        }
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

/// Fully parenthesized surface syntax accepted by [`parse`].
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::Oplus(a, b) => write!(f, "({a} (+) {b})"),
            Term::Neg(a) => write!(f, "~{a}"),
            Term::Scalar(n, a) => write!(f, "{n}*{a}"),
        }
    }
}

/// The morphism `F_n → A` determined by a tuple `(a_1, …, a_n)`:
/// `f ↦ f_A(a_1, …, a_n)`.
#[derive(Clone, Debug)]
pub struct TupleHom<'a> {
    algebra: &'a FiniteMvAlgebra,
    tuple: Vec<MvValue>,
}

pub fn hom_from_tuple(algebra: &FiniteMvAlgebra, tuple: Vec<MvValue>) -> TupleHom<'_> {
    TupleHom { algebra, tuple }
}

impl TupleHom<'_> {
    pub fn apply(&self, t: &Term) -> Result<MvValue, EvalError> {
        t.eval(self.algebra, &self.tuple)
    }

    pub fn tuple(&self) -> &[MvValue] {
        &self.tuple
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Op;
    use crate::rational::ratio;
    use alloc::vec;

    fn x(i: usize) -> Term {
        Term::var(i)
    }

    #[test]
    fn excluded_middle_everywhere() {
        let t = Term::oplus(x(0), Term::neg(x(0)));
        for k in 1..=5 {
            let a = FiniteMvAlgebra::chain(k).unwrap();
            for v in a.elements() {
                assert_eq!(t.eval(&a, &[v]).unwrap(), a.one());
            }
        }
        let p = FiniteMvAlgebra::product(
            &FiniteMvAlgebra::chain(2).unwrap(),
            &FiniteMvAlgebra::chain(3).unwrap(),
        );
        for v in p.elements() {
            assert_eq!(t.eval(&p, &[v]).unwrap(), p.one());
        }
    }

    #[test]
    fn odot_in_chain_two() {
        let a = FiniteMvAlgebra::chain(2).unwrap();
        let half = MvValue::new(1);
        assert_eq!(
            Term::odot(x(0), x(1)).eval(&a, &[half, half]).unwrap(),
            a.zero()
        );
        assert_eq!(Term::Zero.eval(&a, &[]).unwrap(), a.zero());
    }

    #[test]
    fn unbound_variable() {
        let a = FiniteMvAlgebra::chain(2).unwrap();
        assert_eq!(x(2).eval(&a, &[a.zero()]), Err(EvalError::Unbound(2)));
        assert_eq!(x(1).eval_unit(&[ratio(1, 2)]), Err(EvalError::Unbound(1)));
    }

    #[test]
    fn unit_interval_evaluation() {
        let dbl = Term::oplus(x(0), x(0));
        assert_eq!(dbl.eval_unit(&[ratio(1, 3)]).unwrap(), ratio(2, 3));
        assert_eq!(dbl.eval_unit(&[ratio(3, 4)]).unwrap(), ratio(1, 1));
        let t = Term::meet(Term::ominus(x(0), x(1)), Term::ominus(x(1), x(0)));
        for (p, q) in [(1, 3), (2, 5), (7, 8)]
            .iter()
            .zip([(1, 2), (0, 1), (1, 1)])
        {
            assert_eq!(
                t.eval_unit(&[ratio(p.0, p.1), ratio(q.0, q.1)]).unwrap(),
                ratio(0, 1)
            );
        }
        assert_eq!(
            x(0).eval_unit(&[ratio(3, 2)]),
            Err(EvalError::OutOfRange { index: 0 })
        );
        assert_eq!(
            Term::scalar(3, x(0)).eval_unit(&[ratio(1, 4)]).unwrap(),
            ratio(3, 4)
        );
    }

    #[test]
    fn free_variables() {
        assert!(Term::Zero.free_vars().is_empty());
        assert_eq!(
            Term::oplus(x(0), Term::neg(x(2)))
                .free_vars()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert_eq!(
            Term::dist(x(0), x(0))
                .free_vars()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![0]
        );
    }

    #[test]
    fn tuple_hom() {
        let a = FiniteMvAlgebra::chain(2).unwrap();
        let h = hom_from_tuple(&a, vec![MvValue::new(1)]);
        assert_eq!(h.apply(&x(0)).unwrap(), MvValue::new(1));
        assert_eq!(h.apply(&Term::oplus(x(0), x(0))).unwrap(), a.one());
    }

    #[test]
    fn derived_constructors_match_tables() {
        let a = FiniteMvAlgebra::chain(4).unwrap();
        let cases: [(Op, fn(Term, Term) -> Term); 5] = [
            (Op::Odot, Term::odot),
            (Op::Ominus, Term::ominus),
            (Op::Join, Term::join),
            (Op::Meet, Term::meet),
            (Op::Dist, Term::dist),
        ];
        for (op, build) in cases {
            let t = build(x(0), x(1));
            for u in a.elements() {
                for v in a.elements() {
                    assert_eq!(t.eval(&a, &[u, v]).unwrap(), a.apply(op, &[u, v]).unwrap());
                }
            }
        }
    }
}
