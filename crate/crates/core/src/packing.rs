//! Vertex-disjoint triangle packings: an exact branch-and-bound solver, a
//! seeded greedy start, bounded-radius rotation search, and the connector
//! predicate between packing triangles.

use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{between64, bit, bits, matching_number_in, max_matching_in, Graph, Matching, Triangle};
use crate::{Error, Result};

/// Default vertex cap of the exact solver.
pub const PACKING_CAP: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PackingResult {
    pub size: usize,
    pub triangles: Vec<Triangle>,
    pub exact: bool,
}

/// Check pairwise disjointness and that every triple is a triangle of `g`.
pub fn validate_packing(g: &Graph, t: &[Triangle]) -> Result<()> {
    let mut used = crate::VertexSet::new();
    for tri in t {
        if !tri.is_in(g) {
            return Err(Error::InvalidPacking(format!("{:?} is not a triangle", tri.0)));
        }
        for v in tri.vertices() {
            if used.contains(v) {
                return Err(Error::InvalidPacking(format!("vertex {v} used twice")));
            }
            used.insert(v);
        }
    }
    Ok(())
}

pub(crate) fn packing_mask(t: &[Triangle]) -> u64 {
    t.iter().fold(0, |m, tri| m | tri.mask64())
}

/// Triangles of `G[pool]` grouped by their least vertex, in lex order.
pub(crate) struct TriangleIndex {
    by_min: Vec<Vec<(u64, Triangle)>>,
}

impl TriangleIndex {
    pub(crate) fn new(g: &Graph, pool: u64) -> Self {
        let mut by_min: Vec<Vec<(u64, Triangle)>> = (0..g.n()).map(|_| Vec::new()).collect();
        for t in g.triangles() {
            let m = t.mask64();
            if m & !pool == 0 {
                by_min[t.0[0]].push((m, t));
            }
        }
        TriangleIndex { by_min }
    }

    /// Vertices lying in some triangle inside `avail`.
    fn covered(&self, avail: u64) -> u64 {
        let mut c = 0;
        for v in bits(avail) {
            for &(m, _) in &self.by_min[v] {
                if m & !avail == 0 {
                    c |= m;
                }
            }
        }
        c
    }
}

/// Depth-first search over packings in lexicographic order of their sorted
/// triangle sequences: take the least usable vertex, try each triangle on it,
/// then try leaving it uncovered.
struct Search<'a, F> {
    idx: &'a TriangleIndex,
    cur: Vec<Triangle>,
    /// Prune branches whose optimistic size is below this.
    floor: usize,
    visit: F,
}

impl<F: FnMut(&[Triangle]) -> Visit> Search<'_, F> {
    fn go(&mut self, avail: u64) -> ControlFlow<()> {
        match (self.visit)(&self.cur) {
            Visit::Stop => return ControlFlow::Break(()),
            Visit::Prune => return ControlFlow::Continue(()),
            Visit::Raise(f) => self.floor = self.floor.max(f),
            Visit::Continue => {}
        }
        let covered = self.idx.covered(avail);
        if covered == 0 || self.cur.len() + covered.count_ones() as usize / 3 < self.floor {
            return ControlFlow::Continue(());
        }
        let v = covered.trailing_zeros() as usize;
        for &(m, t) in &self.idx.by_min[v] {
            if m & !avail == 0 {
                self.cur.push(t);
                let r = self.go(avail & !m);
                self.cur.pop();
                r?;
            }
        }
        // leave v uncovered
        self.go(avail & !bit(v))
    }
}

enum Visit {
    Continue,
    /// Only packings of at least this size are still of interest.
    Raise(usize),
    /// Do not extend the current packing.
    Prune,
    Stop,
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    g.require64(cap)
}

/// Maximum packing of `G[pool]`; the witness is the lexicographically least
/// among maximum packings.
pub(crate) fn max_packing_in(g: &Graph, pool: u64) -> Vec<Triangle> {
    let idx = TriangleIndex::new(g, pool);
    let mut best: Vec<Triangle> = Vec::new();
    let mut s = Search {
        idx: &idx,
        cur: Vec::new(),
        floor: 1,
        visit: |cur: &[Triangle]| {
            if cur.len() > best.len() {
                best = cur.to_vec();
                Visit::Raise(best.len() + 1)
            } else {
                Visit::Continue
            }
        },
    };
    let _ = s.go(pool);
    best
}

/// Exact maximum triangle packing (`n <= 40`).
pub fn max_packing_exact(g: &Graph) -> Result<PackingResult> {
    max_packing_exact_capped(g, PACKING_CAP)
}

/// Exact maximum triangle packing with an explicit vertex cap (at most 64).
pub fn max_packing_exact_capped(g: &Graph, cap: usize) -> Result<PackingResult> {
    check_cap(g, cap)?;
    let t = max_packing_in(g, g.all64());
    Ok(PackingResult { size: t.len(), triangles: t, exact: true })
}

pub(crate) fn has_packing_of_size_in(g: &Graph, pool: u64, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    let idx = TriangleIndex::new(g, pool);
    let mut s = Search {
        idx: &idx,
        cur: Vec::new(),
        floor: size,
        visit: |cur: &[Triangle]| if cur.len() >= size { Visit::Stop } else { Visit::Continue },
    };
    s.go(pool).is_break()
}

/// Whether `g` has `size` vertex-disjoint triangles; stops at the first hit.
pub fn has_packing_of_size(g: &Graph, size: usize) -> Result<bool> {
    check_cap(g, PACKING_CAP)?;
    Ok(has_packing_of_size_in(g, g.all64(), size))
}

/// True iff `g` has no `k + 1` vertex-disjoint triangles.
pub fn is_kp1_k3_free(g: &Graph, k: usize) -> Result<bool> {
    Ok(!has_packing_of_size(g, k + 1)?)
}

/// Call `f` on every packing of `G[pool]` with exactly `size` triangles, in
/// lexicographic order, until it breaks.
pub(crate) fn for_each_packing_in(
    g: &Graph,
    pool: u64,
    size: usize,
    mut f: impl FnMut(&[Triangle]) -> ControlFlow<()>,
) {
    let idx = TriangleIndex::new(g, pool);
    if size == 0 {
        let _ = f(&[]);
        return;
    }
    let mut s = Search {
        idx: &idx,
        cur: Vec::new(),
        floor: size,
        visit: |cur: &[Triangle]| {
            if cur.len() < size {
                Visit::Continue
            } else if f(cur).is_break() {
                Visit::Stop
            } else {
                Visit::Prune
            }
        },
    };
    let _ = s.go(pool);
}

/// Every maximum packing, lexicographic; fails past `cap` packings.
pub fn all_max_packings(g: &Graph, cap: usize) -> Result<Vec<Vec<Triangle>>> {
    let size = max_packing_exact(g)?.size;
    let mut out = Vec::new();
    let mut over = false;
    for_each_packing_in(g, g.all64(), size, |p| {
        if out.len() == cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(p.to_vec());
        ControlFlow::Continue(())
    });
    if over {
        Err(Error::EnumerationCap(cap))
    } else {
        Ok(out)
    }
}

/// Maximal packing built by taking triangles in a seeded random order.
pub fn greedy_packing(g: &Graph, seed: u64) -> Vec<Triangle> {
    let mut tris = g.triangles();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tris.shuffle(&mut rng);
    let mut used = crate::VertexSet::new();
    let mut out = Vec::new();
    for t in tris {
        if t.vertices().iter().all(|&v| !used.contains(v)) {
            t.vertices().iter().for_each(|&v| used.insert(v));
            out.push(t);
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RotationKind {
    /// The packing grew by one triangle.
    Grow,
    /// Same packing size, larger matching outside it.
    Matching,
}

/// One improving replacement of packing triangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rotation {
    pub kind: RotationKind,
    pub removed: Vec<Triangle>,
    pub added: Vec<Triangle>,
    pub packing: Vec<Triangle>,
    pub matching: Matching,
    pub matching_before: usize,
}

/// Look for an improving rotation touching at most `radius` packing
/// triangles. Subsets are scanned by size then lexicographically; for each,
/// a larger replacement is tried before an equal-size one with a larger
/// outside matching. The given matching is validated, and the baseline is
/// the exact matching number outside the packing.
pub fn rotation_improve(g: &Graph, t: &[Triangle], m: &Matching, radius: usize) -> Result<Option<Rotation>> {
    check_cap(g, PACKING_CAP)?;
    if !(1..=2).contains(&radius) {
        return Err(Error::InvalidRange(format!("radius must be 1 or 2, got {radius}")));
    }
    validate_packing(g, t)?;
    let mut t: Vec<Triangle> = t.to_vec();
    t.sort_unstable();
    let tmask = packing_mask(&t);
    let outside = g.all64() & !tmask;
    m.validate(g, Some(&crate::VertexSet::from_mask64(outside)))?;
    let base = matching_number_in(g, outside);

    let finish = |kind, removed: &[usize], added: Vec<Triangle>| {
        let mut packing: Vec<Triangle> =
            t.iter().enumerate().filter(|(i, _)| !removed.contains(i)).map(|(_, x)| *x).collect();
        packing.extend(&added);
        packing.sort_unstable();
        let matching = max_matching_in(g, g.all64() & !packing_mask(&packing));
        Rotation {
            kind,
            removed: removed.iter().map(|&i| t[i]).collect(),
            added,
            packing,
            matching,
            matching_before: base,
        }
    };

    for r in 0..=radius.min(t.len()) {
        let mut found = None;
        for_each_subset(t.len(), r, |sub| {
            let pool = outside | sub.iter().fold(0, |a, &i| a | t[i].mask64());
            let mut grow = None;
            for_each_packing_in(g, pool, r + 1, |p| {
                grow = Some(p.to_vec());
                ControlFlow::Break(())
            });
            if let Some(p) = grow {
                found = Some(finish(RotationKind::Grow, sub, p));
                return ControlFlow::Break(());
            }
            if r == 0 {
                return ControlFlow::Continue(());
            }
            let current: Vec<Triangle> = sub.iter().map(|&i| t[i]).collect();
            let mut better = None;
            for_each_packing_in(g, pool, r, |p| {
                if p != current.as_slice() && matching_number_in(g, pool & !packing_mask(p)) > base {
                    better = Some(p.to_vec());
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            if let Some(p) = better {
                found = Some(finish(RotationKind::Matching, sub, p));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> ControlFlow<()>) {
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return;
    }
    loop {
        if f(&idx).is_break() {
            return;
        }
        // advance to the next r-subset in lex order
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

/// Result of iterating [`rotation_improve`] to a fixpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalSearch {
    pub packing: Vec<Triangle>,
    pub matching: Matching,
    pub trace: Vec<Rotation>,
}

/// Apply improving rotations until none exists.
pub fn rotation_fixpoint(g: &Graph, start: &[Triangle], radius: usize) -> Result<LocalSearch> {
    check_cap(g, PACKING_CAP)?;
    validate_packing(g, start)?;
    let mut packing = start.to_vec();
    packing.sort_unstable();
    let mut matching = max_matching_in(g, g.all64() & !packing_mask(&packing));
    let mut trace = Vec::new();
    while let Some(r) = rotation_improve(g, &packing, &matching, radius)? {
        packing = r.packing.clone();
        matching = r.matching.clone();
        trace.push(r);
    }
    Ok(LocalSearch { packing, matching, trace })
}

/// Greedy start followed by rotations to a fixpoint.
pub fn local_search(g: &Graph, seed: u64, radius: usize) -> Result<LocalSearch> {
    rotation_fixpoint(g, &greedy_packing(g, seed), radius)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ConnectKind {
    /// At least 8 edges to both ends.
    Both,
    /// 9 edges to the first triangle and at least 7 to the second; favours the first.
    FavoursFirst,
}

fn disjoint3(a: &Triangle, b: &Triangle, c: &Triangle) -> Result<()> {
    if a.is_disjoint(b) && a.is_disjoint(c) && b.is_disjoint(c) {
        Ok(())
    } else {
        Err(Error::NotDisjoint)
    }
}

fn tri_edges(g: &Graph, a: &Triangle, b: &Triangle) -> usize {
    a.vertices().iter().map(|&u| b.vertices().iter().filter(|&&v| g.has_edge(u, v)).count()).sum()
}

/// How `via` connects `t` to `tp`, if it does.
pub fn connection_kind(g: &Graph, via: &Triangle, t: &Triangle, tp: &Triangle) -> Result<Option<ConnectKind>> {
    disjoint3(via, t, tp)?;
    let (to_t, to_tp) = (tri_edges(g, via, t), tri_edges(g, via, tp));
    Ok(if to_t >= 8 && to_tp >= 8 {
        Some(ConnectKind::Both)
    } else if to_t == 9 && to_tp >= 7 {
        Some(ConnectKind::FavoursFirst)
    } else {
        None
    })
}

/// Whether `via` connects `t` to `tp` with favour on `t`.
pub fn connects(g: &Graph, via: &Triangle, t: &Triangle, tp: &Triangle) -> Result<bool> {
    Ok(connection_kind(g, via, t, tp)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConnectionStats {
    pub connectors: usize,
    pub candidates: usize,
}

/// Count triangles of `set` other than `t`, `tp` that connect `t` to `tp`.
pub fn connection_stats(g: &Graph, set: &[Triangle], t: &Triangle, tp: &Triangle) -> Result<ConnectionStats> {
    if !set.contains(t) || !set.contains(tp) || t == tp {
        return Err(Error::InvalidPacking("endpoints must be distinct members of the set".into()));
    }
    validate_packing(g, set)?;
    let mut connectors = 0;
    let mut candidates = 0;
    for via in set.iter().filter(|x| *x != t && *x != tp) {
        candidates += 1;
        if connects(g, via, t, tp)? {
            connectors += 1;
        }
    }
    Ok(ConnectionStats { connectors, candidates })
}

/// Edges between the vertex sets of two disjoint triangles.
pub fn triangle_edges(g: &Graph, a: &Triangle, b: &Triangle) -> usize {
    between64(g, a.mask64(), b.mask64())
}
