//! The six-part decomposition of a graph around a maximum triangle packing,
//! and an audit of the edge bounds between its parts.
//!
//! Parts: four triangle classes, a maximum matching outside the packing, and
//! the leftover independent vertices. Among maximum packings the one whose
//! outside matching is largest is used (first in lex order on ties).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{f, Profile};
use crate::extremal::{edge_formula, Family};
use crate::graph::{between64, bit, matching_number_in, max_matching_in, within64, Graph, Matching, Triangle};
use crate::packing::{
    for_each_packing_in, has_packing_of_size_in, max_packing_in, packing_mask, validate_packing, PACKING_CAP,
};
use crate::{choose2, Error, Result};

/// Default cap on the number of maximum packings examined.
pub const PACKING_ENUM_CAP: usize = 100_000;

/// One move of the sparse/dense split: `triangle` sent `sent` edges to the
/// other `d_size - 1` triangles still in the dense pool when it was moved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PeelStep {
    pub triangle: Triangle,
    pub sent: usize,
    pub d_size: usize,
}

/// The four triangle classes plus the peel trace that produced the last two.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classes {
    pub t1: Vec<Triangle>,
    pub t2: Vec<Triangle>,
    pub t3: Vec<Triangle>,
    pub t4: Vec<Triangle>,
    pub peel: Vec<PeelStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Decomposition {
    pub t1: Vec<Triangle>,
    pub t2: Vec<Triangle>,
    pub t3: Vec<Triangle>,
    pub t4: Vec<Triangle>,
    pub m: Matching,
    pub i: Vec<usize>,
    pub profile: Profile,
    pub peel: Vec<PeelStep>,
    /// Maximum packings looked at before the choice was fixed.
    pub packings_examined: usize,
}

impl Decomposition {
    /// The whole packing, lex sorted.
    pub fn packing(&self) -> Vec<Triangle> {
        let mut all: Vec<Triangle> = [&self.t1, &self.t2, &self.t3, &self.t4].into_iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    fn masks(&self) -> Masks {
        Masks {
            t: [packing_mask(&self.t1), packing_mask(&self.t2), packing_mask(&self.t3), packing_mask(&self.t4)],
            m: self.m.edges.iter().fold(0, |a, &(u, v)| a | bit(u) | bit(v)),
            i: self.i.iter().fold(0, |a, &v| a | bit(v)),
        }
    }
}

struct Masks {
    t: [u64; 4],
    m: u64,
    i: u64,
}

fn sees_edge(g: &Graph, (u, v): (usize, usize), t: &Triangle) -> bool {
    t.0.iter().any(|&x| g.has_edge(u, x) && g.has_edge(v, x))
}

fn sees_vertex(g: &Graph, v: usize, t: &Triangle) -> bool {
    t.0.iter().filter(|&&x| g.has_edge(v, x)).count() >= 2
}

/// Split a packing into the four classes given the outside matching and the
/// independent remainder. Checks that the pieces fit together.
pub fn classify(g: &Graph, packing: &[Triangle], m: &Matching, iset: &[usize]) -> Result<Classes> {
    g.require64(PACKING_CAP)?;
    validate_packing(g, packing)?;
    let tmask = packing_mask(packing);
    let outside = g.all64() & !tmask;
    let outside_set = crate::VertexSet::from_mask64(outside);
    m.validate(g, Some(&outside_set))?;
    let mmask = m.edges.iter().fold(0, |a, &(u, v)| a | bit(u) | bit(v));
    let imask = iset.iter().try_fold(0u64, |a, &v| {
        if v >= g.n() || a & bit(v) != 0 {
            Err(Error::InvalidDecomposition(format!("bad independent vertex {v}")))
        } else {
            Ok(a | bit(v))
        }
    })?;
    if imask != outside & !mmask {
        return Err(Error::InvalidDecomposition("independent part is not the rest of the vertices".into()));
    }
    if within64(g, imask) != 0 {
        return Err(Error::InvalidDecomposition("leftover vertices are not independent".into()));
    }
    if matching_number_in(g, outside) != m.len() {
        return Err(Error::InvalidDecomposition("matching is not maximum outside the packing".into()));
    }
    let mut sorted = packing.to_vec();
    sorted.sort_unstable();
    let mut c = Classes::default();
    let mut rest = Vec::new();
    for t in sorted {
        let by_edges = m.edges.iter().filter(|&&e| sees_edge(g, e, &t)).count();
        let by_vertices = iset.iter().filter(|&&v| sees_vertex(g, v, &t)).count();
        if by_edges >= 2 {
            c.t1.push(t);
        } else if (by_edges >= 1 && by_vertices >= 1) || by_vertices >= 2 {
            c.t2.push(t);
        } else {
            rest.push(t);
        }
    }
    // peel the lex-least triangle with few edges into the sparse class
    let mut dense = rest;
    loop {
        let dmask = packing_mask(&dense);
        let limit = 8 * dense.len().saturating_sub(1);
        let pick = dense.iter().enumerate().find_map(|(j, t)| {
            let sent = between64(g, t.mask64(), dmask & !t.mask64());
            (sent <= limit).then_some((j, sent))
        });
        match pick {
            Some((j, sent)) => {
                let t = dense.remove(j);
                c.peel.push(PeelStep { triangle: t, sent, d_size: dense.len() + 1 });
                c.t3.push(t);
            }
            None => break,
        }
    }
    c.t3.sort_unstable();
    c.t4 = dense;
    Ok(c)
}

fn assemble(g: &Graph, packing: &[Triangle], examined: usize) -> Result<Decomposition> {
    let outside = g.all64() & !packing_mask(packing);
    let m = max_matching_in(g, outside);
    let mmask = m.edges.iter().fold(0, |a, &(u, v)| a | bit(u) | bit(v));
    let i: Vec<usize> = crate::graph::bits(outside & !mmask).collect();
    let c = classify(g, packing, &m, &i)?;
    let profile = Profile::new(
        c.t1.len() as i64,
        c.t2.len() as i64,
        c.t3.len() as i64,
        c.t4.len() as i64,
        m.len() as i64,
        i.len() as i64,
    );
    Ok(Decomposition {
        t1: c.t1,
        t2: c.t2,
        t3: c.t3,
        t4: c.t4,
        m,
        i,
        profile,
        peel: c.peel,
        packings_examined: examined,
    })
}

/// The maximum packing whose outside matching is largest: first in lex
/// order among the best, stopping early once the matching covers all but at
/// most one outside vertex.
pub fn best_packing(g: &Graph, cap: usize) -> Result<(Vec<Triangle>, usize)> {
    g.require64(PACKING_CAP)?;
    let all = g.all64();
    let k = max_packing_in(g, all).len();
    let ceiling = (g.n() - 3 * k) / 2;
    let mut best: Option<(usize, Vec<Triangle>)> = None;
    let mut seen = 0usize;
    let mut over = false;
    for_each_packing_in(g, all, k, |p| {
        if seen == cap {
            over = true;
            return ControlFlow::Break(());
        }
        seen += 1;
        let nu = matching_number_in(g, all & !packing_mask(p));
        if best.as_ref().is_none_or(|(b, _)| nu > *b) {
            best = Some((nu, p.to_vec()));
        }
        if nu == ceiling {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if over {
        return Err(Error::EnumerationCap(cap));
    }
    Ok((best.map(|(_, p)| p).unwrap_or_default(), seen))
}

/// Canonical decomposition (at most 40 vertices, at most `cap` packings).
pub fn decompose_capped(g: &Graph, cap: usize) -> Result<Decomposition> {
    let (packing, seen) = best_packing(g, cap)?;
    assemble(g, &packing, seen)
}

/// Canonical decomposition with the default enumeration cap.
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    decompose_capped(g, PACKING_ENUM_CAP)
}

/// Full check of a decomposition against `g`: partition, independence,
/// maximum packing, maximum matching, no better packing for the matching,
/// and the classes match [`classify`] on the same pieces.
pub fn validate(g: &Graph, d: &Decomposition, cap: usize) -> Result<()> {
    let packing = d.packing();
    let c = classify(g, &packing, &d.m, &d.i)?;
    let mine = (&d.t1, &d.t2, &d.t3, &d.t4);
    if mine != (&c.t1, &c.t2, &c.t3, &c.t4) {
        return Err(Error::InvalidDecomposition("classes differ from the classification rules".into()));
    }
    let all = g.all64();
    if has_packing_of_size_in(g, all, packing.len() + 1) {
        return Err(Error::InvalidDecomposition("packing is not maximum".into()));
    }
    let (best, _) = best_packing(g, cap)?;
    if matching_number_in(g, all & !packing_mask(&best)) > d.m.len() {
        return Err(Error::InvalidDecomposition("another maximum packing leaves a larger matching".into()));
    }
    let p = &d.profile;
    let counts = [d.t1.len(), d.t2.len(), d.t3.len(), d.t4.len(), d.m.len(), d.i.len()].map(|x| x as i64);
    if p.to_array() != counts {
        return Err(Error::InvalidDecomposition("profile does not match the parts".into()));
    }
    let t4 = packing_mask(&d.t4);
    for t in &d.t4 {
        if between64(g, t.mask64(), t4 & !t.mask64()) <= 8 * (d.t4.len() - 1) {
            return Err(Error::InvalidDecomposition(format!("dense triangle {:?} is too sparse", t.0)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AuditStatus {
    Holds,
    Violated,
    Skipped(String),
}

/// One audited bound `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditItem {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub status: AuditStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    pub n: usize,
    pub edges: usize,
    pub profile: Profile,
    pub items: Vec<AuditItem>,
    pub violations: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn item(&self, name: &str) -> Option<&AuditItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

#[derive(Default)]
struct Items(Vec<AuditItem>);

impl Items {
    fn push(&mut self, name: &str, lhs: i64, rhs: i64) {
        let status = if lhs <= rhs { AuditStatus::Holds } else { AuditStatus::Violated };
        self.0.push(AuditItem { name: name.into(), lhs, rhs, status });
    }

    fn guarded(&mut self, name: &str, ok: bool, why: &str, lhs: i64, rhs: i64) {
        if ok {
            self.push(name, lhs, rhs);
        } else {
            self.0.push(AuditItem { name: name.into(), lhs, rhs, status: AuditStatus::Skipped(why.into()) });
        }
    }
}

/// Edges of `G` not inside the dense class nor inside matching plus leftover.
pub fn combined_lhs(g: &Graph, d: &Decomposition) -> i64 {
    let mk = d.masks();
    let rest = mk.m | mk.i;
    (g.edge_count() - within64(g, mk.t[3]) - within64(g, rest)) as i64
}

/// Bound on [`combined_lhs`] from the profile.
pub fn combined_bound(d: &Decomposition) -> i64 {
    let p = &d.profile;
    f(p) + (3 + 3 * p.m) * p.t4 + (2 + p.i) * p.t4
}

/// Evaluate every bound on `d`; guarded bounds whose guard fails are skipped.
pub fn audit(g: &Graph, d: &Decomposition) -> Result<AuditReport> {
    g.require64(PACKING_CAP)?;
    let covered = d.masks();
    let total = covered.t.iter().fold(covered.m | covered.i, |a, &b| if a & b != 0 { u64::MAX } else { a | b });
    if total != g.all64() {
        return Err(Error::InvalidDecomposition("parts do not partition the vertices".into()));
    }
    let Masks { t, m: mm, i: im } = covered;
    let Profile { t1, t2, t3, t4, m, i } = d.profile;
    let w = |a: u64| within64(g, a) as i64;
    let b = |a: u64, c: u64| between64(g, a, c) as i64;
    let mut out = Items::default();
    out.push("i-inside", w(im), 0);
    out.push("i-to-m", b(im, mm), i * m);
    out.push("m-inside", w(mm), m * m);
    out.push("m-to-t1", b(mm, t[0]), 4 * m * t1);
    out.push("i-to-t1", b(im, t[0]), 2 * i * t1);
    out.push("t1-inside", w(t[0]), 7 * choose2(t1) + 3 * t1);
    out.push("i-to-t2", b(im, t[1]), 2 * i * t2);
    out.push("t2-inside", w(t[1]), 8 * choose2(t2) + 3 * t2);
    out.push("t3-inside-and-to-t4", w(t[2]) + b(t[2], t[3]), 8 * choose2(t3) + 8 * t3 * t4 + 3 * t3);
    let tj = [t1, t2, t3, t4];
    for j in 1..4 {
        let (lhs, rhs) = (b(t[0], t[j]), 7 * t1 * tj[j]);
        out.guarded(&format!("t1-to-t{}", j + 1), t1 != 1, "single triangle in the first class", lhs, rhs);
    }
    for j in 2..4 {
        let (lhs, rhs) = (b(t[1], t[j]), 8 * t2 * tj[j]);
        out.guarded(&format!("t2-to-t{}", j + 1), t2 != 1, "single triangle in the second class", lhs, rhs);
    }
    let rhs_t2 = if m >= 1 { 7 * t1 * t2 + (2 + 3 * m) * t2 } else { 0 };
    out.push("t1-and-m-to-t2", b(t[0], t[1]) + b(mm, t[1]), rhs_t2);
    for j in 2..4 {
        let rhs = if m >= 1 { 7 * t1 * tj[j] + (3 + 3 * m) * tj[j] } else { 0 };
        out.push(&format!("t1-and-m-to-t{}", j + 1), b(t[0], t[j]) + b(mm, t[j]), rhs);
    }
    for j in 2..4 {
        let rhs = if i >= 1 { 8 * t2 * tj[j] + (2 + i) * tj[j] } else { 0 };
        out.push(&format!("t2-and-i-to-t{}", j + 1), b(t[1], t[j]) + b(im, t[j]), rhs);
    }
    out.push("t4-inside", w(t[3]), choose2(3 * t4));
    out.push("combined", combined_lhs(g, d), combined_bound(d));
    let k = d.profile.k();
    let e1 = edge_formula(Family::E1, g.n(), k as usize)? as i64;
    out.guarded("first-family", 5 * k + 8 <= g.n() as i64, "needs 5k + 8 <= n", g.edge_count() as i64, e1);
    let items = out.0;
    let violations = items.iter().filter(|it| it.status == AuditStatus::Violated).count();
    Ok(AuditReport { n: g.n(), edges: g.edge_count(), profile: d.profile, items, violations })
}

/// Add every non-edge that keeps `g` free of `k+1` disjoint triangles,
/// trying pairs in lexicographic order. One pass is enough: a rejected pair
/// stays rejected as edges are added.
pub fn saturate_lex(g: &Graph, k: usize) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).collect();
    saturate_in_order(g, k, &pairs)
}

/// Saturation of the empty graph on `n` vertices with the pairs tried in a
/// seeded random order.
pub fn saturate_random(n: usize, k: usize, seed: u64) -> Result<Graph> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    saturate_in_order(&Graph::empty(n)?, k, &pairs)
}

fn saturate_in_order(g: &Graph, k: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
    g.require64(PACKING_CAP)?;
    let mut h = g.clone();
    if has_packing_of_size_in(&h, h.all64(), k + 1) {
        return Err(Error::InvalidRange(format!("start graph already has {} disjoint triangles", k + 1)));
    }
    for &(u, v) in pairs {
        if h.add_edge(u, v)? && has_packing_of_size_in(&h, h.all64(), k + 1) {
            h.remove_edge(u, v)?;
        }
    }
    Ok(h)
}

/// Whether no pair can be added without creating `k+1` disjoint triangles.
pub fn is_edge_maximal(g: &Graph, k: usize) -> Result<bool> {
    g.require64(PACKING_CAP)?;
    let mut h = g.clone();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                h.add_edge(u, v)?;
                let grows = has_packing_of_size_in(&h, h.all64(), k + 1);
                h.remove_edge(u, v)?;
                if !grows {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
