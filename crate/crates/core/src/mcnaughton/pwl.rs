//! Piecewise-linear functions on `[0,1]^n` and compilation of terms into them.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::linear::LinearForm;
use super::polyhedron::{Point, RationalPolyhedron};
use super::McError;
use crate::rational::{in_unit_interval, lcm, Rational};
use crate::term::Term;

/// A polyhedral complex covering `[0,1]^n` with one integer affine piece per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlFunction {
    n: usize,
    cells: Vec<RationalPolyhedron>,
    pieces: Vec<LinearForm>,
}

impl PwlFunction {
    pub fn constant(n: usize, c: i64) -> Self {
        PwlFunction {
            n,
            cells: vec![RationalPolyhedron::unit_box(n)],
            pieces: vec![LinearForm::constant(c, n)],
        }
    }

    pub fn projection(i: usize, n: usize) -> Self {
        PwlFunction {
            n,
            cells: vec![RationalPolyhedron::unit_box(n)],
            pieces: vec![LinearForm::var(i, n)],
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[RationalPolyhedron] {
        &self.cells
    }

    pub fn pieces(&self) -> &[LinearForm] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn eval(&self, p: &[Rational]) -> Result<Rational, McError> {
        if p.len() != self.n || !p.iter().all(in_unit_interval) {
            return Err(McError::OutsideBox);
        }
        self.cells
            .iter()
            .zip(&self.pieces)
            .find(|(c, _)| c.contains(p))
            .map(|(_, h)| h.eval(p))
            .ok_or(McError::Uncovered)
    }

    /// `1 − f` on the same complex.
    pub fn neg(&self) -> Self {
        PwlFunction {
            n: self.n,
            cells: self.cells.clone(),
            pieces: self.pieces.iter().map(LinearForm::one_minus).collect(),
        }
    }

    /// Least common multiple of the denominators of all vertex coordinates.
    pub fn vertex_denominator_lcm(&self) -> BigInt {
        let mut d = BigInt::one();
        for c in &self.cells {
            for v in c.vertices() {
                for x in v {
                    d = lcm(&d, x.denom());
                }
            }
        }
        d
    }

    /// Every distinct vertex of the complex, sorted.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .cells
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Structural checks: full-dimensional cells, values in `[0,1]` at
    /// vertices, and agreement of pieces wherever a vertex of one cell lies
    /// in another.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        if self.cells.len() != self.pieces.len() {
            return Err("one piece per cell");
        }
        for (c, h) in self.cells.iter().zip(&self.pieces) {
            if !c.is_full_dimensional() {
                return Err("cells must be full-dimensional");
            }
            if !c.vertices().iter().all(|v| in_unit_interval(&h.eval(v))) {
                return Err("piece leaves [0,1] on its cell");
            }
        }
        for (i, (c, h)) in self.cells.iter().zip(&self.pieces).enumerate() {
            for v in c.vertices() {
                let value = h.eval(v);
                for (j, (d, k)) in self.cells.iter().zip(&self.pieces).enumerate() {
                    if i != j && d.contains(v) && k.eval(v) != value {
                        return Err("adjacent pieces disagree on a shared face");
                    }
                }
            }
        }
        Ok(())
    }
}

/// `h^♯ = (h ∨ 0) ∧ 1`: the box split along `h = 0` and `h = 1`.
pub fn truncate(h: &LinearForm, n: usize) -> PwlFunction {
    assert_eq!(h.dimension(), n, "form and dimension disagree");
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    let (below, above) = {
        let (pos, neg) = RationalPolyhedron::unit_box(n).split(h);
        (neg, pos)
    };
    if let Some(c) = below {
        cells.push(c);
        pieces.push(LinearForm::constant(0, n));
    }
    if let Some(c) = above {
        push_capped(&mut cells, &mut pieces, c, h.clone());
    }
    PwlFunction { n, cells, pieces }
}

/// A common refinement of several complexes: each output cell carries the
/// index of the cell of every input that contains it.
pub fn overlay(fs: &[&PwlFunction]) -> Vec<(RationalPolyhedron, Vec<usize>)> {
    let Some((first, rest)) = fs.split_first() else {
        return Vec::new();
    };
    let mut acc: Vec<(RationalPolyhedron, Vec<usize>)> = first
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), vec![i]))
        .collect();
    for g in rest {
        if g.cells.len() == 1 {
            for (_, idx) in &mut acc {
                idx.push(0);
            }
            continue;
        }
        let mut next = Vec::new();
        for (cell, idx) in &acc {
            for (j, gc) in g.cells.iter().enumerate() {
                if !cell.boxes_overlap(gc) {
                    continue;
                }
                if let Some(c) = cell.intersect(gc) {
                    let mut k = idx.clone();
                    k.push(j);
                    next.push((c, k));
                }
            }
        }
        acc = next;
    }
    acc
}

/// Saturating sum `min(1, f + g)` on a common refinement.
fn oplus(f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
    let n = f.n;
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (cell, idx) in overlay(&[f, g]) {
        let s = f.pieces[idx[0]].add(&g.pieces[idx[1]]);
        push_capped(&mut cells, &mut pieces, cell, s);
    }
    coarsen(n, cells, pieces)
}

/// Repeatedly merges two cells carrying the same piece when their union is
/// a convex cell; keeps complexes from fragmenting under repeated overlays.
fn coarsen(
    n: usize,
    mut cells: Vec<RationalPolyhedron>,
    mut pieces: Vec<LinearForm>,
) -> PwlFunction {
    let mut i = 0;
    while i < cells.len() {
        let mut merged = false;
        for j in i + 1..cells.len() {
            if pieces[i] != pieces[j] {
                continue;
            }
            if let Some(c) = cells[i].try_merge(&cells[j]) {
                cells[i] = c;
                cells.remove(j);
                pieces.remove(j);
                merged = true;
                break;
            }
        }
        if !merged {
            i += 1;
        }
    }
    PwlFunction { n, cells, pieces }
}

fn push_capped(
    cells: &mut Vec<RationalPolyhedron>,
    pieces: &mut Vec<LinearForm>,
    cell: RationalPolyhedron,
    s: LinearForm,
) {
    let n = s.dimension();
    let (over, under) = cell.split(&s.plus_constant(-1));
    if let Some(c) = under {
        cells.push(c);
        pieces.push(s);
    }
    if let Some(c) = over {
        cells.push(c);
        pieces.push(LinearForm::constant(1, n));
    }
}

/// `min(1, k·f)`.
fn scalar(k: u64, f: &PwlFunction) -> PwlFunction {
    if k == 0 {
        return PwlFunction::constant(f.n, 0);
    }
    let kk = BigInt::from(k);
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (cell, h) in f.cells.iter().zip(&f.pieces) {
        push_capped(&mut cells, &mut pieces, cell.clone(), h.scale(&kk));
    }
    coarsen(f.n, cells, pieces)
}

pub const DEFAULT_DIMENSION_CAP: usize = 4;

/// Compiles terms to [`PwlFunction`]s in a fixed dimension, memoizing shared
/// subterms by address.
#[derive(Debug)]
pub struct Compiler {
    n: usize,
    cache: BTreeMap<usize, (Arc<Term>, Arc<PwlFunction>)>,
}

impl Compiler {
    pub fn new(n: usize) -> Result<Self, McError> {
        Compiler::with_cap(n, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self, McError> {
        if n > cap {
            return Err(McError::DimensionTooLarge { n, cap });
        }
        Ok(Compiler {
            n,
            cache: BTreeMap::new(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn compile(&mut self, t: &Term) -> Result<Arc<PwlFunction>, McError> {
        let n = self.n;
        Ok(match t {
            Term::Zero => Arc::new(PwlFunction::constant(n, 0)),
            Term::Var(i) if *i < n => Arc::new(PwlFunction::projection(*i, n)),
            Term::Var(i) => return Err(McError::VariableOutOfRange { var: *i, n }),
            Term::Neg(a) => Arc::new(self.compile_shared(a)?.neg()),
            Term::Oplus(a, b) => {
                let fa = self.compile_shared(a)?;
                let fb = self.compile_shared(b)?;
                Arc::new(oplus(&fa, &fb))
            }
            Term::Scalar(k, a) => {
                let fa = self.compile_shared(a)?;
                Arc::new(scalar(*k, &fa))
            }
        })
    }

    fn compile_shared(&mut self, t: &Arc<Term>) -> Result<Arc<PwlFunction>, McError> {
        let key = Arc::as_ptr(t) as usize;
        if let Some((_, f)) = self.cache.get(&key) {
            return Ok(f.clone());
        }
        let f = self.compile(t)?;
        self.cache.insert(key, (t.clone(), f.clone()));
        Ok(f)
    }

    pub fn truncate(&self, h: &LinearForm) -> Result<PwlFunction, McError> {
        if h.dimension() != self.n {
            return Err(McError::DimensionMismatch);
        }
        Ok(truncate(h, self.n))
    }

    pub fn refine(&mut self, f: &PwlFunction, by: &[Refiner]) -> Result<PwlFunction, McError> {
        let mut compiled: Vec<Arc<PwlFunction>> = Vec::with_capacity(by.len());
        for r in by {
            compiled.push(match r {
                Refiner::Term(t) => self.compile(t)?,
                Refiner::Form(h) => Arc::new(self.truncate(h)?),
            });
        }
        Ok(refine_compiled(
            f,
            &compiled.iter().map(|g| &**g).collect::<Vec<_>>(),
        ))
    }
}

/// Convenience: compile in dimension `n` under the default cap.
pub fn compile(t: &Term, n: usize) -> Result<PwlFunction, McError> {
    Ok((*Compiler::new(n)?.compile(t)?).clone())
}

/// Something to refine a complex by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refiner {
    Term(Term),
    Form(LinearForm),
}

/// The same function on a complex where every `g` in `by` is affine per cell.
pub fn refine_compiled(f: &PwlFunction, by: &[&PwlFunction]) -> PwlFunction {
    let mut all: Vec<&PwlFunction> = vec![f];
    all.extend_from_slice(by);
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (cell, idx) in overlay(&all) {
        cells.push(cell);
        pieces.push(f.pieces[idx[0]].clone());
    }
    PwlFunction {
        n: f.n,
        cells,
        pieces,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlComparison {
    pub equal: bool,
    /// A vertex of the common refinement where the functions differ.
    pub witness: Option<Point>,
}

/// Equality of functions: pieces are compared at the vertices of every cell
/// of the common refinement.
pub fn pwl_equal(f: &PwlFunction, g: &PwlFunction) -> PwlComparison {
    for (cell, idx) in overlay(&[f, g]) {
        let (p, q) = (&f.pieces[idx[0]], &g.pieces[idx[1]]);
        if p == q {
            continue;
        }
        if let Some(v) = cell.vertices().iter().find(|v| p.eval(v) != q.eval(v)) {
            return PwlComparison {
                equal: false,
                witness: Some(v.clone()),
            };
        }
    }
    PwlComparison {
        equal: true,
        witness: None,
    }
}

/// `f⁻¹(0)` as a list of polytopes, one face per cell, dropping faces
/// contained in another listed face.
pub fn zero_set(f: &PwlFunction) -> Vec<RationalPolyhedron> {
    let faces: Vec<RationalPolyhedron> = f
        .cells
        .iter()
        .zip(&f.pieces)
        .filter_map(|(c, h)| c.face(h))
        .collect();
    let mut out: Vec<RationalPolyhedron> = Vec::new();
    for (i, p) in faces.iter().enumerate() {
        let covered = faces.iter().enumerate().any(|(j, q)| {
            j != i && q.contains_polyhedron(p) && (!p.contains_polyhedron(q) || j < i)
        });
        if !covered {
            out.push(p.clone());
        }
    }
    out
}
