//! Sites on finite inf-lattices: Grothendieck topologies with finite covers,
//! j-ideals and the frame they form, j-prime filters (points), the space of
//! points, and the lattice `V_A` of principal ideals of an MV-algebra.
//!
//! Subsets of a site are `u64` bitmasks, so sites have at most 64 elements.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{FiniteMvAlgebra, MvValue};
use crate::ideals::{enumerate_primes, principal_ideal, Ideal, IdealError};

pub type Set = u64;

pub const MAX_SITE: usize = 64;
/// Sites up to this size enumerate j-ideals by filtering all subsets.
pub const POWERSET_LIMIT: usize = 20;
pub const DEFAULT_FRAME_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocaleError {
    #[error("site has {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("order matrix is not square")]
    Shape,
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not transitive: {0} ≤ {1} ≤ {2}")]
    NotTransitive(usize, usize, usize),
    #[error("{0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("no top element")]
    NoTop,
    #[error("{0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("cover of {element} has member {member} not below it")]
    CoverNotBelow { element: usize, member: usize },
    #[error("frame has more than {0} elements")]
    FrameTooLarge(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("the trivial algebra has no prime ideals")]
    TrivialAlgebra,
}

fn bit(i: usize) -> Set {
    1u64 << i
}

fn members(s: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| s >> i & 1 == 1)
}

fn full(m: usize) -> Set {
    if m == 64 {
        u64::MAX
    } else {
        bit(m) - 1
    }
}

/// A finite preordered set with all finite infima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfLattice {
    m: usize,
    /// `up[a] = { b | a ≤ b }`
    up: Vec<Set>,
    /// `down[a] = { b | b ≤ a }`
    down: Vec<Set>,
    meet: Vec<Vec<usize>>,
    top: usize,
}

impl InfLattice {
    /// From `order[a][b] = a ≤ b`; the relation must be a preorder with
    /// finite infima. Among isomorphic glbs the least index is the meet.
    pub fn new(order: &[Vec<bool>]) -> Result<Self, LocaleError> {
        let m = order.len();
        if m > MAX_SITE {
            return Err(LocaleError::TooLarge(m));
        }
        if order.iter().any(|r| r.len() != m) {
            return Err(LocaleError::Shape);
        }
        let mut up = vec![0; m];
        let mut down = vec![0; m];
        for a in 0..m {
            if !order[a][a] {
                return Err(LocaleError::NotReflexive(a));
            }
            for b in 0..m {
                if order[a][b] {
                    up[a] |= bit(b);
                    down[b] |= bit(a);
                }
            }
        }
        for a in 0..m {
            for b in members(up[a]) {
                if let Some(c) = members(up[b]).find(|&c| up[a] & bit(c) == 0) {
                    return Err(LocaleError::NotTransitive(a, b, c));
                }
            }
        }
        let top = (0..m)
            .find(|&t| down[t] == full(m))
            .ok_or(LocaleError::NoTop)?;
        let mut meet = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                let lower = down[a] & down[b];
                meet[a][b] = members(lower)
                    .find(|&g| lower & !down[g] == 0)
                    .ok_or(LocaleError::NoMeet(a, b))?;
            }
        }
        Ok(InfLattice {
            m,
            up,
            down,
            meet,
            top,
        })
    }

    /// From covering pairs `(a, b)` meaning `a < b`, closed reflexively and
    /// transitively.
    pub fn from_hasse(m: usize, edges: &[(usize, usize)]) -> Result<Self, LocaleError> {
        let mut order = vec![vec![false; m]; m];
        for (a, row) in order.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in edges {
            if a >= m || b >= m {
                return Err(LocaleError::OutOfRange(a.max(b)));
            }
            order[a][b] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if order[i][k] {
                    for j in 0..m {
                        if order[k][j] {
                            order[i][j] = true;
                        }
                    }
                }
            }
        }
        InfLattice::new(&order)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.m
    }

    pub fn all(&self) -> Set {
        full(self.m)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    pub fn iso(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn up(&self, a: usize) -> Set {
        self.up[a]
    }

    pub fn down(&self, a: usize) -> Set {
        self.down[a]
    }

    /// `↓S`.
    pub fn down_closure(&self, s: Set) -> Set {
        members(s).fold(0, |acc, a| acc | self.down[a])
    }

    pub fn is_down_set(&self, s: Set) -> bool {
        self.down_closure(s) == s
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.m).all(|a| (0..self.m).all(|b| a == b || !self.iso(a, b)))
    }

    /// Least upper bound, if any (least index among isomorphic ones).
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper = self.up[a] & self.up[b];
        members(upper).find(|&l| upper & !self.up[l] == 0)
    }

    pub fn join_of(&self, s: Set) -> Option<usize> {
        let upper = members(s).fold(self.all(), |acc, a| acc & self.up[a]);
        members(upper).find(|&l| upper & !self.up[l] == 0)
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.m).find(|&b| self.up[b] == self.all())
    }

    pub fn meet_all(&self, s: Set) -> usize {
        members(s).fold(self.top, |acc, a| self.meet(acc, a))
    }

    /// A lattice in which `a ∧ (b ∨ c) ≅ (a ∧ b) ∨ (a ∧ c)`.
    pub fn is_distributive(&self) -> bool {
        let m = self.m;
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    let Some(bc) = self.join(b, c) else {
                        return false;
                    };
                    self.join(self.meet(a, b), self.meet(a, c))
                        .is_some_and(|rhs| self.iso(self.meet(a, bc), rhs))
                })
            })
        })
    }
}

/// Covers per element, each a finite family below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    covers: Vec<Vec<Vec<usize>>>,
}

impl Coverage {
    pub fn new(h: &InfLattice, covers: Vec<Vec<Vec<usize>>>) -> Result<Self, LocaleError> {
        if covers.len() != h.size() {
            return Err(LocaleError::Shape);
        }
        let mut covers = covers;
        for (a, list) in covers.iter_mut().enumerate() {
            for c in list.iter_mut() {
                if let Some(&x) = c.iter().find(|&&x| x >= h.size()) {
                    return Err(LocaleError::OutOfRange(x));
                }
                if let Some(&x) = c.iter().find(|&&x| !h.leq(x, a)) {
                    return Err(LocaleError::CoverNotBelow {
                        element: a,
                        member: x,
                    });
                }
                c.sort_unstable();
                c.dedup();
            }
            list.sort();
            list.dedup();
        }
        Ok(Coverage { covers })
    }

    /// Covers are the isomorphisms: `{x}` covers `a` for each `x ≅ a`.
    pub fn trivial(h: &InfLattice) -> Self {
        Coverage {
            covers: h
                .elements()
                .map(|a| {
                    h.elements()
                        .filter(|&x| h.iso(x, a))
                        .map(|x| vec![x])
                        .collect()
                })
                .collect(),
        }
    }

    /// Finite suprema: singletons `{x ≅ a}`, pairs `{b, c}` with `b ∨ c ≅ a`,
    /// and the empty family for the bottom element.
    pub fn finite_suprema(h: &InfLattice) -> Result<Self, LocaleError> {
        let mut covers: Vec<Vec<Vec<usize>>> = Coverage::trivial(h).covers;
        for b in h.elements() {
            for c in b + 1..h.size() {
                let j = h.join(b, c).ok_or(LocaleError::NoJoin(b, c))?;
                for a in h.elements().filter(|&a| h.iso(a, j)) {
                    covers[a].push(vec![b, c]);
                }
            }
        }
        if let Some(bottom) = h.bottom() {
            for a in h.elements().filter(|&a| h.iso(a, bottom)) {
                covers[a].push(Vec::new());
            }
        }
        Coverage::new(h, covers)
    }

    pub fn covers(&self, a: usize) -> &[Vec<usize>] {
        &self.covers[a]
    }

    pub fn all_covers(&self) -> &[Vec<Vec<usize>>] {
        &self.covers
    }
}

fn set_of(family: &[usize]) -> Set {
    family.iter().fold(0, |acc, &x| acc | bit(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub lattice: InfLattice,
    pub coverage: Coverage,
}

/// Outcome of [`check_topology_axioms`]; `None` means the axiom holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    /// An element with no cover `{x}`, `x ≅ a`.
    pub identity: Option<usize>,
    /// `(a, cover index, refined family)` whose refinement fails to cover `a`.
    pub transitivity: Option<(usize, usize, Vec<usize>)>,
    /// `(a, cover index, b)` with `{aᵢ ∧ b}` not covering `a ∧ b`.
    pub stability: Option<(usize, usize, usize)>,
    /// `(a, cover index)` whose members do not have `a` as supremum.
    pub subcanonical: Option<(usize, usize)>,
}

impl TopologyReport {
    pub fn is_topology(&self) -> bool {
        self.identity.is_none() && self.transitivity.is_none() && self.stability.is_none()
    }

    pub fn is_subcanonical(&self) -> bool {
        self.subcanonical.is_none()
    }
}

impl Site {
    pub fn new(lattice: InfLattice, coverage: Coverage) -> Self {
        Site { lattice, coverage }
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    /// One application of `S ↦ {x | x ≤ a, some cover of a inside S}`,
    /// together with `↓S`.
    fn sharp_step(&self, s: Set) -> Set {
        let h = &self.lattice;
        let mut out = h.down_closure(s);
        for a in h.elements() {
            if out & bit(a) != 0 {
                continue;
            }
            if self.coverage.covers(a).iter().any(|c| set_of(c) & !s == 0) {
                out |= h.down(a);
            }
        }
        out
    }

    /// `#S`, the least j-ideal containing `S`, by iterating to a fixpoint.
    pub fn generated_jideal(&self, s: Set) -> Set {
        let mut cur = s;
        loop {
            let next = self.sharp_step(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `ε(a) = #(a]`.
    pub fn epsilon(&self, a: usize) -> Set {
        self.generated_jideal(self.lattice.down(a))
    }

    pub fn is_jideal(&self, u: Set) -> bool {
        let h = &self.lattice;
        h.is_down_set(u)
            && h.elements().all(|a| {
                u & bit(a) != 0 || !self.coverage.covers(a).iter().any(|c| set_of(c) & !u == 0)
            })
    }

    /// The conditions on a j-prime filter.
    pub fn is_jprime_filter(&self, p: Set) -> bool {
        let h = &self.lattice;
        if p & bit(h.top()) == 0 {
            return false;
        }
        for a in members(p) {
            if h.up(a) & !p != 0 {
                return false;
            }
            for b in members(p) {
                if p & bit(h.meet(a, b)) == 0 {
                    return false;
                }
            }
            for c in self.coverage.covers(a) {
                // iv.a for non-empty covers; iv.b for the empty one
                if set_of(c) & p == 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Checks axioms i–iii on the given covers (refinements and meets are
/// tested up to the saturation `#`) and reports iv separately.
pub fn check_topology_axioms(site: &Site) -> TopologyReport {
    let h = &site.lattice;
    let j = &site.coverage;
    let mut report = TopologyReport {
        identity: None,
        transitivity: None,
        stability: None,
        subcanonical: None,
    };
    report.identity = h
        .elements()
        .find(|&a| !j.covers(a).iter().any(|c| c.len() == 1 && h.iso(c[0], a)));

    'ii: for a in h.elements() {
        for (ci, c) in j.covers(a).iter().enumerate() {
            // every choice of one cover for each member
            let mut choice = vec![0usize; c.len()];
            if c.iter().any(|&x| j.covers(x).is_empty()) {
                continue;
            }
            loop {
                let mut refined: Vec<usize> = c
                    .iter()
                    .zip(&choice)
                    .flat_map(|(&x, &k)| j.covers(x)[k].iter().copied())
                    .collect();
                refined.sort_unstable();
                refined.dedup();
                if site.generated_jideal(h.down_closure(set_of(&refined))) & bit(a) == 0 {
                    report.transitivity = Some((a, ci, refined));
                    break 'ii;
                }
                let mut k = 0;
                loop {
                    if k == c.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < j.covers(c[k]).len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == c.len() {
                    break;
                }
            }
        }
    }

    'iii: for a in h.elements() {
        for (ci, c) in j.covers(a).iter().enumerate() {
            for b in h.elements() {
                let target = h.meet(a, b);
                let family: Set = c.iter().fold(0, |acc, &x| acc | bit(h.meet(x, b)));
                if site.generated_jideal(h.down_closure(family)) & bit(target) == 0 {
                    report.stability = Some((a, ci, b));
                    break 'iii;
                }
            }
        }
    }

    'iv: for a in h.elements() {
        for (ci, c) in j.covers(a).iter().enumerate() {
            match h.join_of(set_of(c)) {
                Some(s) if h.iso(s, a) => {}
                _ => {
                    report.subcanonical = Some((a, ci));
                    break 'iv;
                }
            }
        }
    }
    report
}

/// The frame `I_j(H)` of j-ideals, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    elements: Vec<Set>,
    index: BTreeMap<Set, usize>,
}

impl Frame {
    fn from_sets(sets: BTreeSet<Set>) -> Self {
        let mut elements: Vec<Set> = sets.into_iter().collect();
        elements.sort_by_key(|s| (s.count_ones(), *s));
        let index = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Frame { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Set] {
        &self.elements
    }

    pub fn index_of(&self, u: Set) -> Option<usize> {
        self.index.get(&u).copied()
    }

    pub fn bottom(&self) -> Set {
        self.elements[0]
    }

    pub fn top(&self) -> Set {
        *self.elements.last().unwrap()
    }

    /// `U ∧ V = U ∩ V`.
    pub fn meet(&self, u: Set, v: Set) -> Set {
        u & v
    }

    /// `U ∨ V = #(U ∪ V)`.
    pub fn join(&self, site: &Site, u: Set, v: Set) -> Set {
        site.generated_jideal(u | v)
    }

    /// A triple `(U, V, W)` with `U ∧ (V ∨ W) ≠ (U ∧ V) ∨ (U ∧ W)`; binary
    /// distributivity covers all joins in a finite frame.
    pub fn distributivity_failure(&self, site: &Site) -> Option<(Set, Set, Set)> {
        for &u in &self.elements {
            for &v in &self.elements {
                for &w in &self.elements {
                    let lhs = u & self.join(site, v, w);
                    let rhs = self.join(site, u & v, u & w);
                    if lhs != rhs {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// Closure under `∩` and `#∪`, checked on every pair.
    pub fn is_closed(&self, site: &Site) -> bool {
        self.elements.iter().all(|&u| {
            self.elements.iter().all(|&v| {
                self.index.contains_key(&(u & v)) && self.index.contains_key(&self.join(site, u, v))
            })
        })
    }

    /// Frame points: non-bottom join-prime elements `U` (so `↑U` is a
    /// completely prime filter of the finite frame), returned as `U`.
    pub fn points(&self, site: &Site) -> Vec<Set> {
        let bottom = self.bottom();
        self.elements
            .iter()
            .copied()
            .filter(|&u| {
                u != bottom
                    && self.elements.iter().all(|&v| {
                        self.elements.iter().all(|&w| {
                            let vw = self.join(site, v, w);
                            u & !vw != 0 || u & !v == 0 || u & !w == 0
                        })
                    })
            })
            .collect()
    }
}

/// All j-ideals: filtering every subset for small sites, otherwise closing
/// `{#∅}` under joins with the `ε(a)`.
pub fn ideal_frame(site: &Site, cap: usize) -> Result<Frame, LocaleError> {
    if site.size() <= POWERSET_LIMIT {
        Ok(frame_by_powerset(site))
    } else {
        frame_by_generators(site, cap)
    }
}

pub fn frame_by_powerset(site: &Site) -> Frame {
    let all = site.lattice.all();
    let mut sets = BTreeSet::new();
    let mut s: Set = 0;
    loop {
        if site.is_jideal(s) {
            sets.insert(s);
        }
        if s == all {
            break;
        }
        s += 1;
    }
    Frame::from_sets(sets)
}

pub fn frame_by_generators(site: &Site, cap: usize) -> Result<Frame, LocaleError> {
    let eps: Vec<Set> = site.lattice.elements().map(|a| site.epsilon(a)).collect();
    let mut seen = BTreeSet::new();
    let start = site.generated_jideal(0);
    seen.insert(start);
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for &e in &eps {
            let v = site.generated_jideal(u | e);
            if seen.insert(v) {
                if seen.len() > cap {
                    return Err(LocaleError::FrameTooLarge(cap));
                }
                queue.push(v);
            }
        }
    }
    Ok(Frame::from_sets(seen))
}

/// The closure-operator laws of `#` on every subset (or the first `limit`
/// subsets in binary order): extensive, idempotent, monotone, and the
/// result is a j-ideal.
pub fn closure_laws_hold(site: &Site, limit: u64) -> bool {
    let all = site.lattice.all();
    let count = if site.size() >= 63 {
        limit
    } else {
        (1u64 << site.size()).min(limit)
    };
    let mut prev: Option<(Set, Set)> = None;
    for s in 0..count {
        let s = s & all;
        let c = site.generated_jideal(s);
        if s & !c != 0 || site.generated_jideal(c) != c || !site.is_jideal(c) {
            return false;
        }
        // monotonicity against the previous subset when comparable
        if let Some((p, pc)) = prev {
            if p & !s == 0 && pc & !c != 0 {
                return false;
            }
        }
        for a in members(s) {
            let smaller = s & !bit(a);
            if site.generated_jideal(smaller) & !c != 0 {
                return false;
            }
        }
        prev = Some((s, c));
    }
    true
}

/// A j-prime filter with its properness flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JPrimeFilter {
    pub members: Set,
    pub proper: bool,
}

/// All j-prime filters. Filters of a finite inf-lattice are principal, so
/// the candidates are the up-sets `↑u`.
pub fn points(site: &Site) -> Vec<JPrimeFilter> {
    let h = &site.lattice;
    let candidates: BTreeSet<Set> = h.elements().map(|u| h.up(u)).collect();
    candidates
        .into_iter()
        .filter(|&p| site.is_jprime_filter(p))
        .map(|p| JPrimeFilter {
            members: p,
            proper: p != h.all(),
        })
        .collect()
}

/// The bijection between j-prime filters and frame points: `P` goes to the
/// point `U ↦ [U ∩ P ≠ ∅]`, whose least true element is compared with the
/// frame points. Returns `false` when the correspondence fails.
pub fn points_biject_with_frame_points(site: &Site, frame: &Frame) -> bool {
    let ps = points(site);
    let fps = frame.points(site);
    if ps.len() != fps.len() {
        return false;
    }
    let mut images = BTreeSet::new();
    for p in &ps {
        // the true elements of the induced frame map must be ↑U for a frame point U
        let truthy: Vec<Set> = frame
            .elements()
            .iter()
            .copied()
            .filter(|&u| u & p.members != 0)
            .collect();
        let least = truthy.iter().copied().reduce(|a, b| a & b);
        let Some(least) = least else {
            return false;
        };
        if !truthy.contains(&least) || !fps.contains(&least) {
            return false;
        }
        let up: Vec<Set> = frame
            .elements()
            .iter()
            .copied()
            .filter(|&v| least & !v == 0)
            .collect();
        if up != truthy {
            return false;
        }
        images.insert(least);
    }
    images.len() == fps.len()
}

/// Subsets of the point list, as bitmasks over point indices.
pub type PointSet = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpace {
    pub points: Vec<JPrimeFilter>,
    /// `W_a = { P | a ∈ P }` for each element `a`.
    pub base: Vec<PointSet>,
    /// All opens, sorted by size then mask.
    pub opens: Vec<PointSet>,
}

impl PointSpace {
    pub fn all(&self) -> PointSet {
        full(self.points.len())
    }

    /// `ρ(U) = ⋃_{a ∈ U} W_a = { P | U ∩ P ≠ ∅ }`.
    pub fn rho(&self, u: Set) -> PointSet {
        members(u).fold(0, |acc, a| acc | self.base[a])
    }

    /// Closure of a single point: the complement of the largest open missing it.
    fn point_closure(&self, p: usize) -> PointSet {
        let open_missing = self
            .opens
            .iter()
            .filter(|&&o| o & bit(p) == 0)
            .fold(0, |acc, &o| acc | o);
        self.all() & !open_missing
    }

    /// Every non-empty irreducible closed set is the closure of exactly one point.
    pub fn is_sober(&self) -> bool {
        let closed: Vec<PointSet> = self.opens.iter().map(|&o| self.all() & !o).collect();
        let closures: Vec<PointSet> = (0..self.points.len())
            .map(|p| self.point_closure(p))
            .collect();
        closed.iter().all(|&f| {
            if f == 0 {
                return true;
            }
            let reducible = closed.iter().any(|&g| {
                g != f && g & !f == 0 && closed.iter().any(|&k| k != f && k & !f == 0 && g | k == f)
            });
            reducible || closures.iter().filter(|&&c| c == f).count() == 1
        })
    }

    /// Every cover of the space by base opens has a subcover using at most
    /// one base open per point.
    pub fn is_compact(&self) -> bool {
        let all = self.all();
        let union = self.base.iter().fold(0, |acc, &w| acc | w);
        if union != all {
            return true;
        }
        let mut covered = 0;
        let mut used = 0;
        for p in 0..self.points.len() {
            if covered & bit(p) != 0 {
                continue;
            }
            if let Some(&w) = self.base.iter().find(|&&w| w & bit(p) != 0) {
                covered |= w;
                used += 1;
            }
        }
        covered == all && used <= self.points.len()
    }

    /// Base opens are closed under finite intersection: `W_a ∩ W_b = W_{a∧b}`.
    pub fn base_closed_under_meets(&self, h: &InfLattice) -> bool {
        h.elements().all(|a| {
            h.elements()
                .all(|b| self.base[a] & self.base[b] == self.base[h.meet(a, b)])
        }) && self.base[h.top()] == self.all()
    }
}

pub fn point_space(site: &Site) -> Result<PointSpace, LocaleError> {
    let pts = points(site);
    if pts.len() > 64 {
        return Err(LocaleError::TooLarge(pts.len()));
    }
    let base: Vec<PointSet> = site
        .lattice
        .elements()
        .map(|a| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| p.members & bit(a) != 0)
                .fold(0, |acc, (i, _)| acc | bit(i))
        })
        .collect();
    let mut opens: BTreeSet<PointSet> = BTreeSet::new();
    opens.insert(0);
    loop {
        let current: Vec<PointSet> = opens.iter().copied().collect();
        let mut added = false;
        for &o in &current {
            for &w in &base {
                added |= opens.insert(o | w);
            }
        }
        if !added {
            break;
        }
    }
    let mut opens: Vec<PointSet> = opens.into_iter().collect();
    opens.sort_by_key(|o| (o.count_ones(), *o));
    Ok(PointSpace {
        points: pts,
        base,
        opens,
    })
}

/// `ρ: I_j(H) → O(space)` is injective (enough points) and onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub injective: bool,
    pub surjective: bool,
}

pub fn compare_frame_with_space(frame: &Frame, space: &PointSpace) -> ComparisonReport {
    let images: BTreeSet<PointSet> = frame.elements().iter().map(|&u| space.rho(u)).collect();
    ComparisonReport {
        injective: images.len() == frame.len(),
        surjective: images.len() == space.opens.len()
            && space.opens.iter().all(|o| images.contains(o)),
    }
}

/// `V_A`: classes of `a ∼ b ⟺ (a) = (b)`, ordered by reverse inclusion of
/// principal ideals, with the finite-suprema topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaLattice {
    pub site: Site,
    /// Members of each class, in index order; the class index is the site element.
    pub classes: Vec<Vec<MvValue>>,
    pub class_of: Vec<usize>,
}

pub fn va_lattice(a: &FiniteMvAlgebra) -> Result<VaLattice, LocaleError> {
    if a.is_trivial() {
        return Err(LocaleError::TrivialAlgebra);
    }
    let principal: Vec<Ideal> = a.elements().map(|x| principal_ideal(a, x)).collect();
    let mut classes: Vec<Vec<MvValue>> = Vec::new();
    let mut class_of = vec![0; a.size()];
    let mut reps: Vec<&Ideal> = Vec::new();
    for x in a.elements() {
        let id = &principal[x.index()];
        match reps.iter().position(|r| *r == id) {
            Some(c) => {
                classes[c].push(x);
                class_of[x.index()] = c;
            }
            None => {
                class_of[x.index()] = reps.len();
                reps.push(id);
                classes.push(vec![x]);
            }
        }
    }
    let m = classes.len();
    if m > MAX_SITE {
        return Err(LocaleError::TooLarge(m));
    }
    // ā ≤ b̄ in V_A ⟺ (b) ⊆ (a)
    let order: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| reps[j].is_subset(reps[i])).collect())
        .collect();
    let lattice = InfLattice::new(&order)?;
    let coverage = Coverage::finite_suprema(&lattice)?;
    Ok(VaLattice {
        site: Site::new(lattice, coverage),
        classes,
        class_of,
    })
}

impl VaLattice {
    pub fn class(&self, x: MvValue) -> usize {
        self.class_of[x.index()]
    }

    /// The meet of `ā` and `b̄` is the class of `a ∨ b`.
    pub fn meets_match_joins(&self, a: &FiniteMvAlgebra) -> bool {
        let h = &self.site.lattice;
        a.elements().all(|x| {
            a.elements().all(|y| {
                h.iso(
                    h.meet(self.class(x), self.class(y)),
                    self.class(a.join(x, y)),
                )
            })
        })
    }

    /// The ideal `{ a | ā ∈ P }` of a point.
    pub fn point_to_ideal(&self, a: &FiniteMvAlgebra, p: &JPrimeFilter) -> Ideal {
        Ideal::from_mask(
            a.elements()
                .map(|x| p.members & bit(self.class(x)) != 0)
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaPointsReport {
    /// Points and primes correspond through `P ↦ { a | ā ∈ P }`.
    pub bijective: bool,
    /// `W_ā` in the point space equals `W_a` in the spectrum.
    pub base_opens_match: bool,
    /// `p(a ⊕ b) = p(a) ∧ p(b)` for every point.
    pub oplus_law: bool,
    /// Opens correspond to lattice filters of `A` with `na ∈ U ⇒ a ∈ U`.
    pub descent_filters_match_opens: bool,
}

pub fn va_points_vs_primes(a: &FiniteMvAlgebra) -> Result<VaPointsReport, LocaleError> {
    let va = va_lattice(a)?;
    let space = point_space(&va.site)?;
    let primes = enumerate_primes(a)?;
    let ideals: Vec<Ideal> = space
        .points
        .iter()
        .map(|p| va.point_to_ideal(a, p))
        .collect();
    let mut sorted = ideals.clone();
    sorted.sort();
    let mut primes_sorted = primes.clone();
    primes_sorted.sort();
    let bijective = sorted == primes_sorted && {
        let mut d = sorted.clone();
        d.dedup();
        d.len() == sorted.len()
    };
    let base_opens_match = a.elements().all(|x| {
        let w = space.base[va.class(x)];
        ideals
            .iter()
            .enumerate()
            .all(|(i, id)| (w & bit(i) != 0) == id.contains(x))
    });
    let oplus_law = ideals.iter().all(|id| {
        a.elements().all(|x| {
            a.elements()
                .all(|y| id.contains(a.oplus(x, y)) == (id.contains(x) && id.contains(y)))
        })
    });
    // lattice filters of a finite lattice are the principal ↑u
    let mut from_filters: BTreeSet<PointSet> = BTreeSet::new();
    let mut descent_count = 0;
    for u in a.elements() {
        let up: Vec<MvValue> = a.elements().filter(|&x| a.leq(u, x)).collect();
        let descent = a
            .elements()
            .all(|x| (1..=a.size() as u64).all(|n| !a.leq(u, a.scalar(n, x)) || a.leq(u, x)));
        if descent {
            descent_count += 1;
            from_filters.insert(up.iter().fold(0, |acc, &x| acc | space.base[va.class(x)]));
        }
    }
    let opens: BTreeSet<PointSet> = space.opens.iter().copied().collect();
    Ok(VaPointsReport {
        bijective,
        base_opens_match,
        oplus_law,
        descent_filters_match_opens: from_filters == opens && descent_count == opens.len(),
    })
}
