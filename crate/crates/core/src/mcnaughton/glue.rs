//! Zero-set ideal membership, the finitely presented gluing lemma, and the
//! term encodings of truncations and polyhedra.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linear::LinearForm;
use super::polyhedron::{box_constraints, Point, RationalPolyhedron, Relation};
use super::pwl::{overlay, Compiler};
use super::McError;
use crate::rational::{ceil, Rational};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// A point of `Z(f)` outside `Z(g)`.
    pub witness: Option<Point>,
}

/// `g ∈ (f)` in `F_n`, decided by `Z(f) ⊆ Z(g)`.
pub fn ideal_member(k: &mut Compiler, f: &Term, g: &Term) -> Result<Membership, McError> {
    let cf = k.compile(f)?;
    let cg = k.compile(g)?;
    for (cell, idx) in overlay(&[&cf, &cg]) {
        let (pf, pg) = (&cf.pieces()[idx[0]], &cg.pieces()[idx[1]]);
        if let Some(v) = cell
            .vertices()
            .iter()
            .find(|v| pf.eval(v).is_zero() && !pg.eval(v).is_zero())
        {
            return Ok(Membership {
                member: false,
                witness: Some(v.clone()),
            });
        }
    }
    Ok(Membership {
        member: true,
        witness: None,
    })
}

/// A point of `Z(f)` where `g` and `h` differ, if any.
pub fn agree_on_zero_set(
    k: &mut Compiler,
    f: &Term,
    g: &Term,
    h: &Term,
) -> Result<Option<Point>, McError> {
    let (cf, cg, ch) = (k.compile(f)?, k.compile(g)?, k.compile(h)?);
    for (cell, idx) in overlay(&[&cf, &cg, &ch]) {
        let (pf, pg, ph) = (
            &cf.pieces()[idx[0]],
            &cg.pieces()[idx[1]],
            &ch.pieces()[idx[2]],
        );
        if let Some(v) = cell
            .vertices()
            .iter()
            .find(|v| pf.eval(v).is_zero() && pg.eval(v) != ph.eval(v))
        {
            return Ok(Some(v.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGlue {
    pub term: Term,
    /// The multiplier in `h = (g₁ ⊙ ¬n·f₁) ∨ (g₂ ⊙ ¬n·f₂)`.
    pub n: u64,
}

fn to_u64(x: &BigInt) -> Result<u64, McError> {
    x.to_u64().ok_or_else(|| McError::Overflow(x.to_string()))
}

/// Given `g₁ = g₂` on `Z(f₁) ∩ Z(f₂)`, returns `h` agreeing with `g₁` on
/// `Z(f₁)` and with `g₂` on `Z(f₂)`.
///
/// `n` is the least integer with `g₂ − n·f₂ ≤ g₁` at every vertex of the
/// common refinement lying in `Z(f₁)`, and symmetrically.
pub fn glue_fp(
    k: &mut Compiler,
    f1: &Term,
    f2: &Term,
    g1: &Term,
    g2: &Term,
) -> Result<FpGlue, McError> {
    let cs = [
        k.compile(f1)?,
        k.compile(f2)?,
        k.compile(g1)?,
        k.compile(g2)?,
    ];
    let mut n = BigInt::one();
    for (cell, idx) in overlay(&[&cs[0], &cs[1], &cs[2], &cs[3]]) {
        let pieces: Vec<&LinearForm> = (0..4).map(|i| &cs[i].pieces()[idx[i]]).collect();
        for v in cell.vertices() {
            let [a1, a2, b1, b2]: [Rational; 4] = core::array::from_fn(|i| pieces[i].eval(v));
            let bound = match (a1.is_zero(), a2.is_zero()) {
                (true, true) if b1 != b2 => return Err(McError::Incompatible { point: v.clone() }),
                (true, false) => Some((&b2 - &b1) / &a2),
                (false, true) => Some((&b1 - &b2) / &a1),
                _ => None,
            };
            if let Some(b) = bound {
                let c = ceil(&b);
                if c > n {
                    n = c;
                }
            }
        }
    }
    let n = to_u64(&n)?;
    let (f1a, f2a) = (Arc::new(f1.clone()), Arc::new(f2.clone()));
    let (g1a, g2a) = (Arc::new(g1.clone()), Arc::new(g2.clone()));
    let part = |g: &Arc<Term>, f: &Arc<Term>| {
        odot_arc(
            g.clone(),
            Arc::new(Term::Neg(Arc::new(Term::Scalar(n, f.clone())))),
        )
    };
    let h = join_arc(part(&g1a, &f1a), part(&g2a, &f2a));
    for (f, g) in [(f1, g1), (f2, g2)] {
        if let Some(point) = agree_on_zero_set(k, f, &h, g)? {
            return Err(McError::GlueCheckFailed { point });
        }
    }
    Ok(FpGlue { term: h, n })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGlue {
    pub term: Term,
    /// Multipliers of the successive [`glue_fp`] steps.
    pub multipliers: Vec<u64>,
}

/// From McNaughton data `(fᵢ, gᵢ)` with the `Z(fᵢ)` covering the box and
/// `gᵢ = gⱼ` on `Z(fᵢ) ∩ Z(fⱼ)`, builds one term equal to `gᵢ` on every `Z(fᵢ)`.
pub fn glue_cover(k: &mut Compiler, pairs: &[(Term, Term)]) -> Result<CoverGlue, McError> {
    let ((f0, g0), rest) = pairs.split_first().ok_or(McError::EmptyFamily)?;
    let meet = k.compile(&Term::meet_all(pairs.iter().map(|p| p.0.clone())))?;
    for (cell, h) in meet.cells().iter().zip(meet.pieces()) {
        if let Some(v) = cell.vertices().iter().find(|v| !h.eval(v).is_zero()) {
            return Err(McError::NotACover { point: v.clone() });
        }
    }
    let compiled: Vec<_> = pairs
        .iter()
        .map(|(f, g)| Ok((k.compile(f)?, k.compile(g)?)))
        .collect::<Result<_, McError>>()?;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (fi, gi) = &compiled[i];
            let (fj, gj) = &compiled[j];
            for (cell, idx) in overlay(&[fi, fj, gi, gj]) {
                let p = [
                    &fi.pieces()[idx[0]],
                    &fj.pieces()[idx[1]],
                    &gi.pieces()[idx[2]],
                    &gj.pieces()[idx[3]],
                ];
                if let Some(v) = cell.vertices().iter().find(|v| {
                    p[0].eval(v).is_zero() && p[1].eval(v).is_zero() && p[2].eval(v) != p[3].eval(v)
                }) {
                    return Err(McError::IncompatiblePair {
                        i,
                        j,
                        point: v.clone(),
                    });
                }
            }
        }
    }
    let mut acc_f = f0.clone();
    let mut acc_g = g0.clone();
    let mut multipliers = Vec::new();
    for (f, g) in rest {
        let glued = glue_fp(k, &acc_f, f, &acc_g, g)?;
        multipliers.push(glued.n);
        acc_g = glued.term;
        acc_f = Term::meet(acc_f, f.clone());
    }
    Ok(CoverGlue {
        term: acc_g,
        multipliers,
    })
}

fn neg_arc(a: Arc<Term>) -> Arc<Term> {
    Arc::new(Term::Neg(a))
}

fn oplus_arc(a: Arc<Term>, b: Arc<Term>) -> Arc<Term> {
    Arc::new(Term::Oplus(a, b))
}

fn odot_arc(a: Arc<Term>, b: Arc<Term>) -> Arc<Term> {
    neg_arc(oplus_arc(neg_arc(a), neg_arc(b)))
}

/// `x ∨ y = (x ⊙ ¬y) ⊕ y`, returned unwrapped.
fn join_arc(a: Arc<Term>, b: Arc<Term>) -> Term {
    Term::Oplus(odot_arc(a, neg_arc(b.clone())), b)
}

fn one_arc() -> Arc<Term> {
    neg_arc(Arc::new(Term::Zero))
}

/// A term whose function is `h^♯ = min(1, max(0, h))`, built by peeling one
/// unit of a coefficient at a time:
/// `(g + x)^♯ = (g^♯ ⊕ x) ⊙ (g + 1)^♯` and `(g − x)^♯ = ((g − 1)^♯ ⊕ ¬x) ⊙ g^♯`.
pub fn truncation_term(h: &LinearForm) -> Term {
    let mut memo = BTreeMap::new();
    let t = trunc(h, &mut memo);
    Arc::try_unwrap(t).unwrap_or_else(|t| (*t).clone())
}

fn trunc(h: &LinearForm, memo: &mut BTreeMap<LinearForm, Arc<Term>>) -> Arc<Term> {
    if let Some(t) = memo.get(h) {
        return t.clone();
    }
    let (lo, hi) = h.range_over_box();
    let t = if !hi.is_positive() {
        Arc::new(Term::Zero)
    } else if lo >= BigInt::one() {
        one_arc()
    } else if let Some(t) = single_variable(h) {
        t
    } else {
        let (j, s) = h
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .expect("a constant form has been pruned");
        let x = Arc::new(Term::Var(j));
        let mut g = h.clone();
        if s.is_positive() {
            g.coefficients[j] -= 1;
            let a = trunc(&g, memo);
            let b = trunc(&g.plus_constant(1), memo);
            odot_arc(oplus_arc(a, x), b)
        } else {
            g.coefficients[j] += 1;
            let a = trunc(&g.plus_constant(-1), memo);
            let b = trunc(&g, memo);
            odot_arc(oplus_arc(a, neg_arc(x)), b)
        }
    };
    memo.insert(h.clone(), t.clone());
    t
}

/// `k·xⱼ` and `1 − k·xⱼ` have direct encodings.
fn single_variable(h: &LinearForm) -> Option<Arc<Term>> {
    let mut nonzero = h
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero());
    let (j, c) = nonzero.next()?;
    if nonzero.next().is_some() {
        return None;
    }
    let x = Arc::new(Term::Var(j));
    if h.constant.is_zero() && c.is_positive() {
        let k = c.to_u64()?;
        return Some(if k == 1 {
            x
        } else {
            Arc::new(Term::Scalar(k, x))
        });
    }
    if h.constant.is_one() && c.is_negative() {
        let k = (-c).to_u64()?;
        let kx = if k == 1 {
            x
        } else {
            Arc::new(Term::Scalar(k, x))
        };
        return Some(neg_arc(kx));
    }
    None
}

/// A term whose zero set is `P`: the join of `(−c)^♯` over the constraints
/// `c ≥ 0`, and of `c^♯ ∨ (−c)^♯` over the equations `c = 0`. Box
/// constraints are skipped; the empty polyhedron gives `1`.
pub fn polyhedron_to_term(p: &RationalPolyhedron) -> Term {
    if p.is_empty() {
        return Term::one();
    }
    let boxed = box_constraints(p.dimension());
    let mut parts = Vec::new();
    let mut memo = BTreeMap::new();
    for c in p.constraints() {
        if boxed.contains(c) {
            continue;
        }
        parts.push(trunc(&c.form.neg(), &mut memo));
        if c.relation == Relation::Eq {
            parts.push(trunc(&c.form, &mut memo));
        }
    }
    let mut it = parts.into_iter();
    match it.next() {
        None => Term::Zero,
        Some(first) => {
            let joined = it.fold(first, |acc, t| Arc::new(join_arc(acc, t)));
            Arc::try_unwrap(joined).unwrap_or_else(|t| (*t).clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchimedeanCheck {
    pub archimedean: bool,
    /// The lcm of the vertex denominators used as the test multiple.
    pub d: u64,
}

/// `f` is archimedean iff `D·f = (D+1)·f`, with `D` the lcm of the vertex
/// denominators of its complex: a non-zero value at a vertex is at least `1/D`.
pub fn is_archimedean_term(k: &mut Compiler, f: &Term) -> Result<ArchimedeanCheck, McError> {
    let cf = k.compile(f)?;
    let d = to_u64(&cf.vertex_denominator_lcm())?;
    let fa = Arc::new(f.clone());
    let lhs = k.compile(&Term::Scalar(d, fa.clone()))?;
    let rhs = k.compile(&Term::Scalar(d + 1, fa))?;
    Ok(ArchimedeanCheck {
        archimedean: super::pwl::pwl_equal(&lhs, &rhs).equal,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcnaughton::polyhedron::Constraint;
    use crate::mcnaughton::pwl::{compile, pwl_equal, zero_set};
    use crate::rational::int;
    use crate::term::parse;
    use alloc::vec;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn truncation_terms_match_truncate() {
        for (c, coeffs) in [
            (-1, vec![1, 1]),
            (0, vec![2, 0]),
            (1, vec![-3, 2]),
            (2, vec![-1, -1]),
            (-2, vec![3, 1]),
            (0, vec![0, 0]),
        ] {
            let h = LinearForm::from_i64(c, &coeffs);
            let term = truncation_term(&h);
            let direct = super::super::pwl::truncate(&h, 2);
            assert!(pwl_equal(&compile(&term, 2).unwrap(), &direct).equal, "{h}");
        }
    }

    #[test]
    fn membership() {
        let mut k = Compiler::new(1).unwrap();
        assert!(
            ideal_member(&mut k, &t("x1"), &t("x1 (+) x1"))
                .unwrap()
                .member
        );
        let no = ideal_member(&mut k, &t("x1"), &t("1")).unwrap();
        assert!(!no.member);
        assert_eq!(no.witness, Some(vec![int(0)]));
        let f = t("x1 (*) ~x1 (+) x1");
        assert!(
            ideal_member(&mut k, &f, &Term::ominus(f.clone(), f.clone()))
                .unwrap()
                .member
        );
    }

    #[test]
    fn glue_disjoint_points() {
        let mut k = Compiler::new(1).unwrap();
        let r = glue_fp(&mut k, &t("x1"), &t("~x1"), &t("0"), &t("1")).unwrap();
        let h = compile(&r.term, 1).unwrap();
        assert_eq!(h.eval(&[int(0)]).unwrap(), int(0));
        assert_eq!(h.eval(&[int(1)]).unwrap(), int(1));
    }

    #[test]
    fn glue_whole_box() {
        let mut k = Compiler::new(2).unwrap();
        let g = t("x1 (+) x2");
        let r = glue_fp(&mut k, &Term::Zero, &Term::Zero, &g, &g).unwrap();
        assert!(pwl_equal(&compile(&r.term, 2).unwrap(), &compile(&g, 2).unwrap()).equal);
        assert!(matches!(
            glue_fp(&mut k, &Term::Zero, &Term::Zero, &g, &t("x1")),
            Err(McError::Incompatible { .. })
        ));
    }

    #[test]
    fn tent_map_from_two_halves() {
        let mut k = Compiler::new(1).unwrap();
        let pairs = [
            (t("x1 (-) ~x1"), t("x1 (+) x1")),
            (t("~x1 (-) x1"), t("~x1 (+) ~x1")),
        ];
        let glued = glue_cover(&mut k, &pairs).unwrap();
        let tent = compile(&t("(x1 (+) x1) /\\ (~x1 (+) ~x1)"), 1).unwrap();
        assert!(pwl_equal(&compile(&glued.term, 1).unwrap(), &tent).equal);

        let single = glue_cover(&mut k, &[(Term::Zero, t("x1"))]).unwrap();
        assert_eq!(single.term, t("x1"));
        assert!(matches!(
            glue_cover(&mut k, &[(t("x1"), t("x1"))]),
            Err(McError::NotACover { .. })
        ));
        assert!(matches!(
            glue_cover(&mut k, &[(Term::Zero, t("x1")), (Term::Zero, t("0"))]),
            Err(McError::IncompatiblePair { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn polyhedra_as_terms() {
        let point = RationalPolyhedron::new(1, vec![Constraint::eq(LinearForm::from_i64(0, &[1]))]);
        let z = zero_set(&compile(&polyhedron_to_term(&point), 1).unwrap());
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].vertices(), &[vec![int(0)]]);

        let half = RationalPolyhedron::new(1, vec![Constraint::ge(LinearForm::from_i64(1, &[-2]))]);
        let term = polyhedron_to_term(&half);
        assert!(
            pwl_equal(
                &compile(&term, 1).unwrap(),
                &compile(&t("x1 (-) ~x1"), 1).unwrap()
            )
            .equal
        );

        let empty =
            RationalPolyhedron::new(1, vec![Constraint::ge(LinearForm::from_i64(-2, &[1]))]);
        assert_eq!(polyhedron_to_term(&empty), Term::one());
    }

    #[test]
    fn archimedean_elements() {
        let mut k = Compiler::new(1).unwrap();
        assert!(!is_archimedean_term(&mut k, &t("x1")).unwrap().archimedean);
        assert!(
            is_archimedean_term(&mut k, &t("x1 (+) ~x1"))
                .unwrap()
                .archimedean
        );
        assert!(
            !is_archimedean_term(&mut k, &t("x1 (-) ~x1"))
                .unwrap()
                .archimedean
        );
        assert!(is_archimedean_term(&mut k, &t("0")).unwrap().archimedean);
        // bounded away from 0: 1/2 ∨ x ... built as ~x1 \/ x1 ≥ 1/2
        let c = is_archimedean_term(&mut k, &t("~x1 \\/ x1")).unwrap();
        assert!(c.archimedean);
        assert_eq!(c.d, 2);
    }
}
