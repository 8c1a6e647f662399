//! Dense simple graphs with adjacency rows packed into `u64` words.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Default largest vertex count accepted by [`build_graph`].
pub const DEFAULT_CAP: usize = 128;

/// Largest graph the exact matching search accepts.
pub const MATCHING_CAP: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate the set bits of a word, lowest first.
#[inline]
pub(crate) fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let v = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(v)
        }
    })
}

/// Undirected simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}, e={})", self.n, self.edges)
    }
}

/// Build a graph on `n` vertices from an edge list. Duplicate pairs collapse.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges_with_cap(n, edges, DEFAULT_CAP)
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::empty_with_cap(n, DEFAULT_CAP)
    }

    pub fn empty_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let words = n.div_ceil(64).max(1);
        Ok(Graph { n, words, rows: vec![0; n * words], edges: 0 })
    }

    pub fn from_edges_with_cap(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        let mut g = Self::empty_with_cap(n, cap)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn insert(&mut self, u: usize, v: usize) -> bool {
        let (wu, bu) = (u / 64, u % 64);
        let (wv, bv) = (v / 64, v % 64);
        let fresh = self.rows[u * self.words + wv] & bit(bv) == 0;
        if fresh {
            self.rows[u * self.words + wv] |= bit(bv);
            self.rows[v * self.words + wu] |= bit(bu);
            self.edges += 1;
        }
        fresh
    }

    /// Add edge `uv`; returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(self.insert(u, v))
    }

    /// Remove edge `uv`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if !self.has_edge(u, v) {
            return Ok(false);
        }
        self.rows[u * self.words + v / 64] &= !bit(v % 64);
        self.rows[v * self.words + u / 64] &= !bit(u % 64);
        self.edges -= 1;
        Ok(true)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] & bit(v % 64) != 0
    }

    /// Adjacency row of `v` as packed words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// First word of the adjacency row; the whole row when `n <= 64`.
    #[inline]
    pub fn row64(&self, v: usize) -> u64 {
        self.rows[v * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| bits(w).map(move |b| i * 64 + b))
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Mask of all vertices, valid for `n <= 64`.
    #[inline]
    pub(crate) fn all64(&self) -> u64 {
        if self.n >= 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub(crate) fn require64(&self, cap: usize) -> Result<()> {
        let cap = cap.min(64);
        if self.n > cap {
            Err(Error::CapExceeded { n: self.n, cap })
        } else {
            Ok(())
        }
    }

    /// All triangles in lexicographic order of sorted triples.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                let (ru, rv) = (self.row(u), self.row(v));
                for (i, (a, b)) in ru.iter().zip(rv).enumerate() {
                    let mut common = a & b;
                    // keep only w > v
                    if i * 64 + 63 <= v {
                        continue;
                    }
                    if i == v / 64 {
                        let shift = v % 64;
                        common &= if shift == 63 { 0 } else { !((bit(shift + 1)) - 1) };
                    }
                    out.extend(bits(common).map(|b| Triangle([u, v, i * 64 + b])));
                }
            }
        }
        out
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.triangles().len()
    }
}

/// Subset of the vertex range of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { bits: Vec::new() }
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        let mut s = Self::new();
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        let mut s = Self::new();
        for v in lo..hi {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if self.bits.len() <= w {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] |= bit(v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.bits.get_mut(v / 64) {
            *w &= !bit(v % 64);
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v / 64).is_some_and(|w| w & bit(v % 64) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| bits(w).map(move |b| i * 64 + b))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let len = self.bits.len().max(other.bits.len());
        let bits = (0..len)
            .map(|i| self.bits.get(i).copied().unwrap_or(0) | other.bits.get(i).copied().unwrap_or(0))
            .collect();
        VertexSet { bits }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.bits.get(i).copied().unwrap_or(0)
    }

    /// The set as a single word; only the low 64 vertices are represented.
    pub fn mask64(&self) -> u64 {
        self.word(0)
    }

    pub fn from_mask64(mask: u64) -> Self {
        VertexSet { bits: vec![mask] }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::new();
        for v in it {
            s.insert(v);
        }
        s
    }
}

/// Triangle stored as an ascending vertex triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Triangle(t)
    }

    #[inline]
    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    #[inline]
    pub fn mask64(&self) -> u64 {
        bit(self.0[0]) | bit(self.0[1]) | bit(self.0[2])
    }

    pub fn is_disjoint(&self, other: &Triangle) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// Whether the three vertices are pairwise adjacent in `g`.
    pub fn is_in(&self, g: &Graph) -> bool {
        let [a, b, c] = self.0;
        a != b && b != c && g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)
    }

    pub fn set(&self) -> VertexSet {
        VertexSet::from_slice(&self.0)
    }
}

/// Set of pairwise vertex-disjoint edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Check that every pair is an edge, pairs are disjoint, and every
    /// endpoint lies in `within` when given.
    pub fn validate(&self, g: &Graph, within: Option<&VertexSet>) -> Result<()> {
        let mut seen = VertexSet::new();
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}{v} is not an edge")));
            }
            for x in [u, v] {
                if seen.contains(x) {
                    return Err(Error::InvalidMatching(format!("vertex {x} used twice")));
                }
                if within.is_some_and(|s| !s.contains(x)) {
                    return Err(Error::InvalidMatching(format!("vertex {x} outside the allowed set")));
                }
                seen.insert(x);
            }
        }
        Ok(())
    }
}

/// Edges with one end in `a` and the other in `b`; the sets must be disjoint.
pub fn edges_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    if !a.is_disjoint(b) {
        return Err(Error::OverlappingSets);
    }
    Ok(a.iter()
        .filter(|&v| v < g.n())
        .map(|v| g.row(v).iter().enumerate().map(|(i, w)| (w & b.word(i)).count_ones() as usize).sum::<usize>())
        .sum())
}

/// Edges with both ends in `a`.
pub fn edges_within(g: &Graph, a: &VertexSet) -> usize {
    let twice: usize = a
        .iter()
        .filter(|&v| v < g.n())
        .map(|v| g.row(v).iter().enumerate().map(|(i, w)| (w & a.word(i)).count_ones() as usize).sum::<usize>())
        .sum();
    twice / 2
}

#[inline]
pub(crate) fn between64(g: &Graph, a: u64, b: u64) -> usize {
    bits(a).map(|v| (g.row64(v) & b).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn within64(g: &Graph, a: u64) -> usize {
    bits(a).map(|v| (g.row64(v) & a).count_ones() as usize).sum::<usize>() / 2
}

/// Whether edge `uv` sees the triangle: `uvx` is a triangle for some `x` in `t`.
pub fn sees(g: &Graph, e: (usize, usize), t: &Triangle) -> Result<bool> {
    let (u, v) = e;
    if t.contains(u) || t.contains(v) || u == v {
        return Err(Error::NotDisjoint);
    }
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    Ok(t.0.iter().any(|&x| g.has_edge(u, x) && g.has_edge(v, x)))
}

/// Whether vertex `v` sees an edge of the triangle: `vxy` is a triangle for
/// some edge `xy` of `t`.
pub fn sees_vertex(g: &Graph, v: usize, t: &Triangle) -> Result<bool> {
    if t.contains(v) {
        return Err(Error::NotDisjoint);
    }
    Ok(t.0.iter().filter(|&&x| g.has_edge(v, x)).count() >= 2)
}

/// Maximum matching of the whole graph (exact, `n <= 64`).
pub fn max_matching(g: &Graph) -> Result<Matching> {
    g.require64(MATCHING_CAP)?;
    Ok(max_matching_in(g, g.all64()))
}

/// Maximum matching of the subgraph induced by `set` (exact, `n <= 64`).
pub fn max_matching_within(g: &Graph, set: &VertexSet) -> Result<Matching> {
    g.require64(MATCHING_CAP)?;
    Ok(max_matching_in(g, set.mask64() & g.all64()))
}

/// Matching number of `G[mask]`.
pub(crate) fn matching_number_in(g: &Graph, mask: u64) -> usize {
    MatchSearch::run(g, mask, usize::MAX).0
}

pub(crate) fn max_matching_in(g: &Graph, mask: u64) -> Matching {
    let (_, mut edges) = MatchSearch::run(g, mask, usize::MAX);
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    Matching { edges }
}

struct MatchSearch<'a> {
    g: &'a Graph,
    best: usize,
    best_pairs: Vec<(usize, usize)>,
    cur: Vec<(usize, usize)>,
    stop_at: usize,
}

impl<'a> MatchSearch<'a> {
    fn run(g: &'a Graph, mask: u64, stop_at: usize) -> (usize, Vec<(usize, usize)>) {
        // greedy start: lowest vertex, lowest free neighbour
        let mut avail = mask;
        let mut greedy = Vec::new();
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !bit(v);
            let nb = g.row64(v) & avail;
            if nb != 0 {
                let u = nb.trailing_zeros() as usize;
                avail &= !bit(u);
                greedy.push((v, u));
            }
        }
        let mut s = MatchSearch { g, best: greedy.len(), best_pairs: greedy, cur: Vec::new(), stop_at };
        if s.best < stop_at {
            s.go(mask);
        }
        (s.best, s.best_pairs)
    }

    /// Sum of floor(|C|/2) over components of the induced subgraph.
    fn component_bound(&self, mut avail: u64) -> usize {
        let mut total = 0;
        while avail != 0 {
            let start = avail & avail.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.g.row64(v);
                }
                next &= avail & !comp;
                comp |= next;
                frontier = next;
            }
            avail &= !comp;
            total += comp.count_ones() as usize / 2;
        }
        total
    }

    fn go(&mut self, mut avail: u64) {
        if self.best >= self.stop_at {
            return;
        }
        // drop isolated vertices and pick the minimum-degree vertex
        let mut pick = None;
        let mut pick_deg = u32::MAX;
        for v in bits(avail) {
            let d = (self.g.row64(v) & avail).count_ones();
            if d == 0 {
                avail &= !bit(v);
            } else if d < pick_deg {
                pick_deg = d;
                pick = Some(v);
            }
        }
        if self.cur.len() > self.best {
            self.best = self.cur.len();
            self.best_pairs = self.cur.clone();
        }
        let Some(v) = pick else { return };
        if self.cur.len() + self.component_bound(avail) <= self.best {
            return;
        }
        // some maximum matching covers v, so v is always matched here
        for u in bits(self.g.row64(v) & avail) {
            self.cur.push((v, u));
            self.go(avail & !bit(v) & !bit(u));
            self.cur.pop();
            if self.best >= self.stop_at {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build_graph(n, &e).unwrap()
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(build_graph(3, &[(0, 3)]), Err(Error::VertexOutOfRange { v: 3, n: 3 }));
        assert_eq!(build_graph(3, &[(1, 1)]), Err(Error::Loop(1)));
        assert!(Graph::empty(DEFAULT_CAP + 1).is_err());
    }

    #[test]
    fn small_graphs() {
        let k3 = build_graph(3, &[(0, 1), (1, 2), (0, 2), (1, 0)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.triangles(), vec![Triangle([0, 1, 2])]);
        let c5 = cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.triangles().is_empty());
        assert_eq!(max_matching(&c5).unwrap().len(), 2);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.triangles().len(), 4);
        assert_eq!(max_matching(&k4).unwrap().len(), 2);
        let star = build_graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(max_matching(&star).unwrap().len(), 1);
    }

    #[test]
    fn triangles_cross_word_boundaries() {
        let edges = [(1, 63), (63, 64), (1, 64), (64, 127), (127, 129), (64, 129)];
        let g = Graph::from_edges_with_cap(130, &edges, 192).unwrap();
        assert_eq!(g.triangles(), vec![Triangle([1, 63, 64]), Triangle([64, 127, 129])]);
    }

    #[test]
    fn counting_between_sets() {
        let mut edges = Vec::new();
        for a in 0..2 {
            for b in 2..5 {
                edges.push((a, b));
            }
        }
        let g = build_graph(5, &edges).unwrap();
        let (a, b) = (VertexSet::range(0, 2), VertexSet::range(2, 5));
        assert_eq!(edges_between(&g, &a, &b).unwrap(), 6);
        assert_eq!(edges_between(&g, &VertexSet::new(), &VertexSet::range(0, 5)).unwrap(), 0);
        assert_eq!(edges_between(&g, &a, &a), Err(Error::OverlappingSets));
        assert_eq!(edges_within(&g, &b), 0);
        assert_eq!(edges_within(&Graph::complete(4).unwrap(), &VertexSet::range(0, 4)), 6);
        assert_eq!(edges_within(&g, &VertexSet::new()), 0);
    }

    #[test]
    fn seeing() {
        let k5 = Graph::complete(5).unwrap();
        let t = Triangle::new(0, 1, 2);
        assert!(sees(&k5, (3, 4), &t).unwrap());
        assert!(sees_vertex(&k5, 3, &t).unwrap());
        assert_eq!(sees(&k5, (2, 4), &t), Err(Error::NotDisjoint));
        let g = build_graph(5, &[(0, 1), (1, 2), (0, 2), (3, 4), (3, 0)]).unwrap();
        assert!(!sees(&g, (3, 4), &t).unwrap());
        assert!(!sees_vertex(&g, 3, &t).unwrap());
    }

    #[test]
    fn matching_is_valid() {
        let g = cycle(9);
        let m = max_matching(&g).unwrap();
        assert_eq!(m.len(), 4);
        m.validate(&g, None).unwrap();
    }
}
