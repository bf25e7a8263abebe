//! Rational polyhedra inside `[0,1]^n`, stored by integer halfspaces with an
//! eagerly computed vertex list.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::linear::LinearForm;
use crate::rational::Rational;

pub type Point = Vec<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `form ≥ 0`
    Ge,
    /// `form = 0`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub form: LinearForm,
    pub relation: Relation,
}

impl Constraint {
    pub fn ge(form: LinearForm) -> Self {
        Constraint {
            form: form.primitive(),
            relation: Relation::Ge,
        }
    }

    pub fn eq(form: LinearForm) -> Self {
        let form = form.primitive();
        // fix the sign so that `h = 0` and `-h = 0` compare equal
        let leading_negative = form
            .coefficients
            .iter()
            .chain(core::iter::once(&form.constant))
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        Constraint {
            form: if leading_negative { form.neg() } else { form },
            relation: Relation::Eq,
        }
    }

    pub fn holds_at(&self, p: &[Rational]) -> bool {
        let v = self.form.eval(p);
        match self.relation {
            Relation::Ge => !v.is_negative(),
            Relation::Eq => v.is_zero(),
        }
    }

    fn tight_at(&self, p: &[Rational]) -> bool {
        self.form.eval(p).is_zero()
    }
}

/// `xᵢ ≥ 0` and `1 − xᵢ ≥ 0` for every coordinate.
pub fn box_constraints(n: usize) -> Vec<Constraint> {
    (0..n)
        .flat_map(|i| {
            let x = LinearForm::var(i, n);
            [Constraint::ge(x.clone()), Constraint::ge(x.one_minus())]
        })
        .collect()
}

/// Rank of a list of rational rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..cols {
                let d = &m[r][j] * &factor;
                m[i][j] -= d;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &pivot;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..=n {
                let d = &m[c][j] * &factor;
                m[i][j] -= d;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Dimension of the affine hull of a non-empty point set.
pub fn affine_rank(points: &[Point]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolyhedron {
    n: usize,
    constraints: Vec<Constraint>,
    vertices: Vec<Point>,
}

impl RationalPolyhedron {
    /// The polyhedron cut out of `[0,1]^n` by `constraints`; vertices are found
    /// by intersecting every `n` of the bounding hyperplanes.
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Self {
        let mut all = constraints;
        all.extend(box_constraints(n));
        all.sort();
        all.dedup();
        let vertices = enumerate_vertices(n, &all);
        RationalPolyhedron {
            n,
            constraints: all,
            vertices,
        }
    }

    pub fn unit_box(n: usize) -> Self {
        let mut vertices: Vec<Point> = Vec::with_capacity(1 << n);
        for mask in 0..(1usize << n) {
            vertices.push(
                (0..n)
                    .map(|i| {
                        if mask >> (n - 1 - i) & 1 == 1 {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            );
        }
        let mut constraints = box_constraints(n);
        constraints.sort();
        RationalPolyhedron {
            n,
            constraints,
            vertices,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull, `None` when empty.
    pub fn affine_dimension(&self) -> Option<usize> {
        (!self.is_empty()).then(|| affine_rank(&self.vertices))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == Some(self.n)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.n && self.constraints.iter().all(|c| c.holds_at(p))
    }

    /// Containment of polytopes, by testing the vertices of `other`.
    pub fn contains_polyhedron(&self, other: &RationalPolyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Checks the stored vertices against a fresh enumeration and against the
    /// defining property (feasible, `n` independent tight constraints).
    pub fn verify_vertices(&self) -> bool {
        let mut fresh = enumerate_vertices(self.n, &with_box(self.n, &self.constraints));
        let mut mine = self.vertices.clone();
        fresh.sort();
        mine.sort();
        fresh == mine
            && self.vertices.iter().all(|v| {
                let tight: Vec<Vec<Rational>> = with_box(self.n, &self.constraints)
                    .iter()
                    .filter(|c| c.tight_at(v))
                    .map(|c| c.form.coefficient_rationals())
                    .collect();
                self.contains(v) && rank(&tight) == self.n
            })
    }

    /// Per-coordinate minimum and maximum over the vertices.
    pub fn bounding_box(&self) -> Vec<(Rational, Rational)> {
        (0..self.n)
            .map(|i| {
                let mut it = self.vertices.iter().map(|v| &v[i]);
                let first = it.next().cloned().unwrap_or_else(Rational::zero);
                it.fold((first.clone(), first), |(lo, hi), x| {
                    (
                        if *x < lo { x.clone() } else { lo },
                        if *x > hi { x.clone() } else { hi },
                    )
                })
            })
            .collect()
    }

    /// Whether the bounding boxes of two full-dimensional cells overlap in
    /// a set with non-empty interior.
    pub fn boxes_overlap(&self, other: &RationalPolyhedron) -> bool {
        self.bounding_box()
            .iter()
            .zip(other.bounding_box())
            .all(|((lo1, hi1), (lo2, hi2))| lo1 < &hi2 && lo2 < *hi1)
    }

    /// Splits a full-dimensional polytope along `h = 0` into the parts where
    /// `h ≥ 0` and `h ≤ 0`; a part is `None` unless it is full-dimensional.
    /// When `h` vanishes on the whole polytope it is returned as the first
    /// part.
    pub fn split(&self, h: &LinearForm) -> (Option<Self>, Option<Self>) {
        let values: Vec<Rational> = self.vertices.iter().map(|v| h.eval(v)).collect();
        let any_pos = values.iter().any(Signed::is_positive);
        let any_neg = values.iter().any(Signed::is_negative);
        match (any_pos, any_neg) {
            (_, false) => (Some(self.clone()), None),
            (false, true) => (None, Some(self.clone())),
            (true, true) => {
                let crossing = self.crossing_points(&values);
                (
                    Some(self.side(h.clone(), &values, &crossing, true)),
                    Some(self.side(h.neg(), &values, &crossing, false)),
                )
            }
        }
    }

    /// The part of a full-dimensional polytope where `h ≥ 0`, if it is
    /// full-dimensional.
    pub fn clip(&self, h: &LinearForm) -> Option<Self> {
        let values: Vec<Rational> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if !values.iter().any(Signed::is_positive) {
            return None;
        }
        if !values.iter().any(Signed::is_negative) {
            return Some(self.clone());
        }
        let crossing = self.crossing_points(&values);
        Some(self.side(h.clone(), &values, &crossing, true))
    }

    /// Full-dimensional intersection of two full-dimensional polytopes.
    pub fn intersect(&self, other: &RationalPolyhedron) -> Option<Self> {
        let mut acc = self.clone();
        for c in &other.constraints {
            if self.constraints.contains(c) {
                continue;
            }
            acc = acc.clip(&c.form)?;
        }
        Some(acc)
    }

    /// The face where `h` (non-negative on the polytope) vanishes.
    pub fn face(&self, h: &LinearForm) -> Option<Self> {
        let vertices: Vec<Point> = self
            .vertices
            .iter()
            .filter(|v| h.eval(v).is_zero())
            .cloned()
            .collect();
        if vertices.is_empty() {
            return None;
        }
        let mut constraints = self.constraints.clone();
        constraints.push(Constraint::eq(h.clone()));
        constraints.sort();
        constraints.dedup();
        Some(RationalPolyhedron {
            n: self.n,
            constraints,
            vertices,
        })
    }

    /// `P ∪ Q` when it is convex and `P`, `Q` lie on opposite sides of one
    /// of `P`'s facet hyperplanes, which then also bounds `Q`.
    ///
    /// If `P = R ∩ {h ≥ 0}`, `Q = S ∩ {h ≤ 0}` with `Q ⊆ R` and `P ⊆ S`, then
    /// `P ∪ Q = R ∩ S`.
    pub fn try_merge(&self, other: &RationalPolyhedron) -> Option<Self> {
        let h = self.constraints.iter().find(|c| {
            c.relation == Relation::Ge && other.constraints.contains(&Constraint::ge(c.form.neg()))
        })?;
        let flipped = Constraint::ge(h.form.neg());
        let rest_p: Vec<&Constraint> = self.constraints.iter().filter(|c| *c != h).collect();
        let rest_q: Vec<&Constraint> = other
            .constraints
            .iter()
            .filter(|c| **c != flipped)
            .collect();
        if !other
            .vertices
            .iter()
            .all(|v| rest_p.iter().all(|c| c.holds_at(v)))
            || !self
                .vertices
                .iter()
                .all(|v| rest_q.iter().all(|c| c.holds_at(v)))
        {
            return None;
        }
        let mut candidates: Vec<Constraint> = rest_p.into_iter().chain(rest_q).cloned().collect();
        candidates.sort();
        candidates.dedup();
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .chain(&other.vertices)
            .cloned()
            .collect();
        vertices.sort();
        vertices.dedup();
        vertices.retain(|v| {
            let tight: Vec<Vec<Rational>> = candidates
                .iter()
                .filter(|c| c.tight_at(v))
                .map(|c| c.form.coefficient_rationals())
                .collect();
            rank(&tight) == self.n
        });
        let constraints = facets_of(self.n, candidates, &vertices);
        Some(RationalPolyhedron {
            n: self.n,
            constraints,
            vertices,
        })
    }

    fn tight_sets(&self) -> Vec<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                self.constraints
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.tight_at(v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }

    /// Points where edges of the polytope cross `h = 0` strictly inside.
    fn crossing_points(&self, values: &[Rational]) -> Vec<Point> {
        let tight = self.tight_sets();
        let mut out = Vec::new();
        for (i, u) in self.vertices.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, v) in self.vertices.iter().enumerate() {
                if !values[j].is_negative() {
                    continue;
                }
                let common: Vec<Vec<Rational>> = tight[i]
                    .iter()
                    .filter(|k| tight[j].contains(k))
                    .map(|&k| self.constraints[k].form.coefficient_rationals())
                    .collect();
                if common.len() + 1 < self.n || rank(&common) + 1 != self.n {
                    continue;
                }
                let t = &values[i] / (&values[i] - &values[j]);
                out.push(u.iter().zip(v).map(|(a, b)| a + &t * (b - a)).collect());
            }
        }
        out
    }

    fn side(&self, h: LinearForm, values: &[Rational], crossing: &[Point], positive: bool) -> Self {
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .zip(values)
            .filter(|(_, x)| {
                if positive {
                    !x.is_negative()
                } else {
                    !x.is_positive()
                }
            })
            .map(|(v, _)| v.clone())
            .collect();
        vertices.extend(crossing.iter().cloned());
        let mut candidates = self.constraints.clone();
        candidates.push(Constraint::ge(h));
        let constraints = facets_of(self.n, candidates, &vertices);
        vertices.sort();
        RationalPolyhedron {
            n: self.n,
            constraints,
            vertices,
        }
    }
}

/// The constraints that are tight on `n` affinely independent vertices.
fn facets_of(n: usize, candidates: Vec<Constraint>, vertices: &[Point]) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = candidates
        .into_iter()
        .filter(|c| {
            let on: Vec<Point> = vertices.iter().filter(|v| c.tight_at(v)).cloned().collect();
            on.len() >= n && affine_rank(&on) + 1 == n
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn with_box(n: usize, constraints: &[Constraint]) -> Vec<Constraint> {
    let mut all = constraints.to_vec();
    all.extend(box_constraints(n));
    all.sort();
    all.dedup();
    all
}

fn enumerate_vertices(n: usize, constraints: &[Constraint]) -> Vec<Point> {
    if n == 0 {
        return if constraints.iter().all(|c| c.holds_at(&[])) {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out: Vec<Point> = Vec::new();
    let m = constraints.len();
    let mut idx: Vec<usize> = (0..n).collect();
    if m < n {
        return out;
    }
    loop {
        let a: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| constraints[i].form.coefficient_rationals())
            .collect();
        let b: Vec<Rational> = idx
            .iter()
            .map(|&i| Rational::from_integer(-constraints[i].form.constant.clone()))
            .collect();
        if let Some(p) = solve(&a, &b) {
            if constraints.iter().all(|c| c.holds_at(&p)) && !out.contains(&p) {
                out.push(p);
            }
        }
        // next n-subset in lexicographic order
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if idx[k] < m - n + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(c: &[(i64, i64)]) -> Point {
        c.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    #[test]
    fn unit_box_matches_enumeration() {
        for n in 0..4 {
            assert!(RationalPolyhedron::unit_box(n).verify_vertices());
            assert_eq!(RationalPolyhedron::unit_box(n).vertices().len(), 1 << n);
        }
    }

    #[test]
    fn triangle_and_point() {
        // x1 + x2 ≤ 1
        let t =
            RationalPolyhedron::new(2, vec![Constraint::ge(LinearForm::from_i64(1, &[-1, -1]))]);
        assert_eq!(
            t.vertices(),
            &[
                pt(&[(0, 1), (0, 1)]),
                pt(&[(0, 1), (1, 1)]),
                pt(&[(1, 1), (0, 1)])
            ]
        );
        assert!(t.is_full_dimensional());
        let p = RationalPolyhedron::new(1, vec![Constraint::eq(LinearForm::from_i64(0, &[1]))]);
        assert_eq!(p.vertices(), &[vec![int(0)]]);
        assert_eq!(p.affine_dimension(), Some(0));
        let empty =
            RationalPolyhedron::new(1, vec![Constraint::ge(LinearForm::from_i64(-2, &[1]))]);
        assert!(empty.is_empty());
    }

    #[test]
    fn split_square_by_diagonal() {
        let sq = RationalPolyhedron::unit_box(2);
        let (above, below) = sq.split(&LinearForm::from_i64(-1, &[1, 1]));
        let (above, below) = (above.unwrap(), below.unwrap());
        assert_eq!(above.vertices().len(), 3);
        assert_eq!(below.vertices().len(), 3);
        assert!(above.verify_vertices());
        assert!(below.verify_vertices());
        assert!(above.contains(&pt(&[(3, 4), (3, 4)])));
        assert!(!above.contains(&pt(&[(1, 4), (1, 4)])));
        // splitting along a supporting line leaves one side
        let (a, b) = sq.split(&LinearForm::from_i64(0, &[1, 0]));
        assert!(a.is_some() && b.is_none());
        let (a, b) = sq.split(&LinearForm::from_i64(0, &[0, 0]));
        assert_eq!(a.as_ref(), Some(&sq));
        assert!(b.is_none());
    }

    #[test]
    fn repeated_splits_stay_consistent() {
        let mut cells = vec![RationalPolyhedron::unit_box(3)];
        for h in [
            LinearForm::from_i64(-1, &[2, 0, 0]),
            LinearForm::from_i64(-1, &[1, 1, 1]),
            LinearForm::from_i64(0, &[1, -1, 0]),
            LinearForm::from_i64(-2, &[1, 1, 3]),
        ] {
            cells = cells
                .iter()
                .flat_map(|c| {
                    let (a, b) = c.split(&h);
                    a.into_iter().chain(b)
                })
                .collect();
        }
        for c in &cells {
            assert!(c.is_full_dimensional());
            assert!(c.verify_vertices(), "{c:?}");
        }
        let inter = cells[0].intersect(&cells[0]).unwrap();
        assert_eq!(inter.vertices(), cells[0].vertices());
    }

    #[test]
    fn merging_split_halves() {
        let sq = RationalPolyhedron::unit_box(2);
        let (a, b) = sq.split(&LinearForm::from_i64(-1, &[1, 1]));
        let merged = a.as_ref().unwrap().try_merge(b.as_ref().unwrap()).unwrap();
        assert_eq!(merged.vertices(), sq.vertices());
        assert_eq!(merged.constraints(), sq.constraints());

        // an L-shaped union is not convex
        let (right, left) = sq.split(&LinearForm::from_i64(-1, &[2, 0]));
        let (_, corner) = left.unwrap().split(&LinearForm::from_i64(-1, &[0, 2]));
        assert!(right.unwrap().try_merge(&corner.unwrap()).is_none());
    }

    #[test]
    fn linear_algebra() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&a, &[int(2), int(0)]), Some(vec![int(1), int(1)]));
        assert_eq!(
            solve(
                &[vec![int(1), int(1)], vec![int(2), int(2)]],
                &[int(0), int(0)]
            ),
            None
        );
        assert_eq!(rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
    }
}
