//! Classical extremal bounds used as oracles, and the small-graph checks for
//! the "no triangle touches A" problem.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::p_fun;
use crate::graph::{bit, Graph, Triangle, VertexSet};
use crate::{choose2, Error, Result};

fn range_err(msg: alloc::string::String) -> Error {
    Error::InvalidRange(msg)
}

/// Edge bound for graphs without `k+1` disjoint triangles when `n >= 9k/2 + 4`.
pub fn moon_bound(n: i64, k: i64) -> Result<i64> {
    if k < 0 || 2 * n < 9 * k + 8 {
        return Err(range_err(format!("moon bound needs 2n >= 9k + 8, got n={n}, k={k}")));
    }
    let r = n - k;
    Ok(choose2(k) + k * r + (r / 2) * (r - r / 2))
}

/// Whether the Moon bound applies at `(n, k)`.
pub fn moon_applies(n: i64, k: i64) -> bool {
    k >= 0 && 2 * n >= 9 * k + 8
}

/// Edge bound for graphs without `k+1` disjoint edges.
pub fn erdos_gallai_bound(n: i64, k: i64) -> Result<i64> {
    if k < 0 || 2 * k + 1 > n {
        return Err(range_err(format!("matching bound needs 0 <= 2k+1 <= n, got n={n}, k={k}")));
    }
    Ok((k * (n - k) + choose2(k)).max(choose2(2 * k + 1)))
}

/// Largest minimum degree of a graph without `k+1` disjoint triangles.
pub fn corradi_hajnal_deg(n: i64, k: i64) -> Result<i64> {
    if k < 0 || 3 * k > n {
        return Err(range_err(format!("degree bound needs 0 <= 3k <= n, got n={n}, k={k}")));
    }
    Ok(k + (n - k) / 2)
}

/// Most edges on `h` vertices when no triangle meets a fixed `a`-set.
pub fn turan_touching_bound(h: i64, a: i64) -> Result<i64> {
    if a < 0 || 2 * a > h {
        return Err(range_err(format!("touching bound needs 0 <= 2a <= h, got h={h}, a={a}")));
    }
    Ok(choose2(h - 2 * a) + a * (h - a))
}

/// Largest vertex count for the exhaustive touching scan.
pub const BRUTE_TOUCHING_CAP: usize = 7;

/// Exhaustive maxima for every `a <= h/2` at once: entry `a` is the largest
/// edge count of a graph on `h` labelled vertices where no triangle meets
/// `{0, .., a-1}`.
pub fn brute_turan_touching_all(h: usize) -> Result<Vec<i64>> {
    if h > BRUTE_TOUCHING_CAP {
        return Err(Error::CapExceeded { n: h, cap: BRUTE_TOUCHING_CAP });
    }
    let pairs: Vec<(usize, usize)> = (0..h).flat_map(|u| (u + 1..h).map(move |v| (u, v))).collect();
    let mut best = vec![0i64; h / 2 + 1];
    let mut adj = vec![0u32; h];
    for subset in 0u64..(1u64 << pairs.len()) {
        let e = subset.count_ones() as i64;
        if e <= best[h / 2] {
            // every smaller `a` is at least as large, so nothing can improve
            continue;
        }
        adj.iter_mut().for_each(|r| *r = 0);
        for (j, &(u, v)) in pairs.iter().enumerate() {
            if subset >> j & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        // lowest vertex lying on a triangle, or h
        let lowest = (0..h)
            .find(|&u| {
                let nb = adj[u];
                (0..h).any(|v| nb >> v & 1 == 1 && adj[v] & nb != 0)
            })
            .unwrap_or(h);
        for (a, b) in best.iter_mut().enumerate() {
            if a <= lowest && e > *b {
                *b = e;
            }
        }
    }
    Ok(best)
}

/// Exhaustive maximum for one `(h, a)`; see [`brute_turan_touching_all`].
pub fn brute_turan_touching(h: usize, a: usize) -> Result<i64> {
    if 2 * a > h {
        return Err(range_err(format!("need 2a <= h, got h={h}, a={a}")));
    }
    Ok(brute_turan_touching_all(h)?[a])
}

/// A graph with a designated vertex set.
#[derive(Clone, Debug)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub marked: VertexSet,
}

/// The family attaining `C(h-a+2-s, 2) + s(h-s)` edges: a clique on
/// `h-a+2-s` vertices holding two marked vertices, `s` independent vertices
/// joined to the clique and to the other `a-2` marked vertices, which are
/// independent. Vertices are laid out clique first.
pub fn touching_construction(h: usize, a: usize, s: usize) -> Result<MarkedGraph> {
    if a < 2 || a + s > h {
        return Err(range_err(format!("construction needs a >= 2 and a + s <= h, got h={h}, a={a}, s={s}")));
    }
    let x = h - a + 2 - s;
    let mut g = Graph::empty(h)?;
    for u in 0..x {
        for v in u + 1..x {
            g.add_edge(u, v)?;
        }
    }
    for y in x..x + s {
        for v in (0..x).chain(x + s..h) {
            g.add_edge(y, v)?;
        }
    }
    let marked: VertexSet = [0, 1].into_iter().chain(x + s..h).collect();
    Ok(MarkedGraph { graph: g, marked })
}

/// Closed-form edge count of [`touching_construction`].
pub fn touching_construction_edges(h: i64, a: i64, s: i64) -> i64 {
    choose2(h - a + 2 - s) + s * (h - s)
}

/// The construction with `s = a-1`, which attains `p(h, a)` when `9a <= h`.
pub fn p_lower_construction(h: usize, a: usize) -> Result<MarkedGraph> {
    if a < 3 || 9 * a > h {
        return Err(range_err(format!("lower construction needs 3 <= a <= h/9, got h={h}, a={a}")));
    }
    debug_assert_eq!(
        touching_construction_edges(h as i64, a as i64, a as i64 - 1),
        p_fun(h as i64, a as i64).unwrap_or(-1)
    );
    touching_construction(h, a, a - 1)
}

/// Whether some family of vertex-disjoint triangles covers at least `need`
/// vertices of `set`. Exact search, at most 64 vertices.
pub fn covers_at_least(g: &Graph, set: &VertexSet, need: usize) -> Result<bool> {
    g.require64(64)?;
    if need == 0 {
        return Ok(true);
    }
    let target = set.mask64();
    let tris = g.triangles();
    let on_tri: u64 = tris.iter().fold(0, |m, t| m | t.mask64());
    // marked vertices on no triangle can never count
    let order: Vec<usize> = set.iter().filter(|&v| on_tri & bit(v) != 0).collect();
    let by_vertex: Vec<Vec<&Triangle>> =
        order.iter().map(|&v| tris.iter().filter(|t| t.contains(v)).collect()).collect();
    Ok(cover_search(&order, &by_vertex, target, 0, 0, 0, need))
}

fn cover_search(
    order: &[usize],
    by_vertex: &[Vec<&Triangle>],
    target: u64,
    idx: usize,
    used: u64,
    covered: usize,
    need: usize,
) -> bool {
    if covered >= need {
        return true;
    }
    let open = order[idx..].iter().filter(|&&v| used & bit(v) == 0).count();
    if covered + open < need {
        return false;
    }
    let v = order[idx];
    if used & bit(v) != 0 {
        return cover_search(order, by_vertex, target, idx + 1, used, covered, need);
    }
    for t in &by_vertex[idx] {
        let m = t.mask64();
        if m & used == 0 {
            let gain = (m & target).count_ones() as usize;
            if cover_search(order, by_vertex, target, idx + 1, used | m, covered + gain, need) {
                return true;
            }
        }
    }
    cover_search(order, by_vertex, target, idx + 1, used, covered, need)
}
