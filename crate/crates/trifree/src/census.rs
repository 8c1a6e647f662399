//! Exhaustive census over all labelled graphs on at most eight vertices.
//!
//! For each `k` the census finds the largest edge count of a graph with no
//! `k+1` disjoint triangles. Graphs are written as `K_n` minus a set of
//! removed edges; removal sets are scanned by size, so the first size at
//! which some graph has packing number `<= k` gives the answer for `k`, and
//! the scan stops once every `k` is settled. Within one size the sets are
//! split by their highest removed edge and handed to rayon; each part keeps
//! the numerically smallest witness, so the merged result does not depend on
//! scheduling or thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use trifree_core::bounds::{moon_applies, moon_bound};
use trifree_core::extremal::e_max;
use trifree_core::{build_graph, choose2};

use crate::{graph6, IoError};

pub const CENSUS_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub brute_max_edges: u64,
    pub e_max: u64,
    /// `equal` or `greater`; `less` would contradict the families' validity.
    pub brute_vs_e_max: String,
    pub agrees_with_e_max: bool,
    /// Present only where the Moon bound applies.
    pub moon_bound: Option<u64>,
    pub agrees_with_moon: Option<bool>,
    /// Smallest (by removed-edge mask) graph attaining the maximum.
    pub witness_graph6: String,
    /// Graphs examined at the witness's edge count and above.
    pub graphs_scanned: u64,
}

/// Triangle packing number on a bitmask graph, capped at `cap + 1`.
fn packing_capped(adj: &[u8], avail: u8, cap: usize) -> usize {
    if avail.count_ones() < 3 {
        return 0;
    }
    let v = avail.trailing_zeros() as usize;
    let rest = avail & !(1 << v);
    // either v stays uncovered, or it lies in some triangle {v, a, b}
    let mut best = packing_capped(adj, rest, cap);
    if best > cap {
        return best;
    }
    let mut na = adj[v] & rest;
    while na != 0 {
        let a = na.trailing_zeros() as usize;
        na &= na - 1;
        let mut nb = adj[a] & na;
        while nb != 0 {
            let b = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let with = 1 + packing_capped(adj, rest & !(1 << a) & !(1 << b), cap.saturating_sub(1));
            best = best.max(with);
            if best > cap {
                return best;
            }
        }
    }
    best
}

fn is_triangle_free(adj: &[u8]) -> bool {
    adj.iter().enumerate().all(|(u, &row)| {
        let mut up = row & !((2u16 << u) - 1) as u8;
        while up != 0 {
            let v = up.trailing_zeros() as usize;
            up &= up - 1;
            if row & adj[v] != 0 {
                return false;
            }
        }
        true
    })
}

struct Space {
    n: usize,
    pairs: Vec<(usize, usize)>,
    full: Vec<u8>,
}

impl Space {
    fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        let all = ((1u16 << n) - 1) as u8;
        let full = (0..n).map(|v| all & !(1 << v)).collect();
        Space { n, pairs, full }
    }

    fn adjacency(&self, removed: u32, adj: &mut [u8]) {
        adj.copy_from_slice(&self.full);
        let mut r = removed;
        while r != 0 {
            let (u, v) = self.pairs[r.trailing_zeros() as usize];
            r &= r - 1;
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }

    /// Packing number capped at `cap + 1`.
    fn nu(&self, adj: &[u8], cap: usize) -> usize {
        if cap == 0 {
            return usize::from(!is_triangle_free(adj));
        }
        packing_capped(adj, ((1u16 << self.n) - 1) as u8, cap)
    }

    /// For one removal size and one highest removed edge, the smallest mask
    /// reaching each capped packing value `0..=cap`.
    fn scan_part(&self, size: u32, top: Option<u32>, cap: usize) -> (Vec<Option<u32>>, u64) {
        let mut first = vec![None; cap + 1];
        let mut adj = vec![0u8; self.n];
        let mut seen = 0u64;
        let mut visit = |mask: u32| {
            seen += 1;
            self.adjacency(mask, &mut adj);
            let v = self.nu(&adj, cap);
            if v <= cap && first[v].is_none() {
                first[v] = Some(mask);
            }
        };
        match top {
            None => visit(0),
            Some(h) => {
                let lower = size - 1;
                let high = 1u32 << h;
                let mut x: u32 = (1u32 << lower) - 1;
                // Gosper's hack over the bits below `h`
                while x < high {
                    visit(x | high);
                    if x == 0 {
                        break;
                    }
                    let c = x & x.wrapping_neg();
                    let r = x + c;
                    x = (((r ^ x) >> 2) / c) | r;
                }
            }
        }
        (first, seen)
    }
}

/// Census at `n` for every `k` in `0..=n/3`, on a pool of `threads` workers
/// (`None` for rayon's default).
pub fn census(n: usize, threads: Option<usize>) -> Result<Vec<CensusRow>, IoError> {
    if n > CENSUS_MAX_N {
        return Err(IoError::TooLarge(format!("census needs n <= {CENSUS_MAX_N}, got {n}")));
    }
    let pool = crate::pool(threads)?;
    let space = Space::new(n);
    let total = space.pairs.len() as u32;
    let kmax = n / 3;
    let mut found: Vec<Option<(u32, u32, u64)>> = vec![None; kmax + 1];
    let mut scanned = 0u64;
    for size in 0..=total {
        let Some(cap) = found.iter().rposition(Option::is_none) else { break };
        let parts: Vec<Option<u32>> = if size == 0 { vec![None] } else { (size - 1..total).map(Some).collect() };
        let results: Vec<(Vec<Option<u32>>, u64)> =
            pool.install(|| parts.par_iter().map(|&top| space.scan_part(size, top, cap)).collect());
        let mut first = vec![None::<u32>; cap + 1];
        for (part, seen) in results {
            scanned += seen;
            for (slot, m) in first.iter_mut().zip(part) {
                *slot = match (*slot, m) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
            }
        }
        for k in 0..=cap {
            if found[k].is_none() {
                if let Some(w) = first[..=k].iter().flatten().min() {
                    found[k] = Some((size, *w, scanned));
                }
            }
        }
    }
    let mut rows = Vec::with_capacity(kmax + 1);
    for (k, f) in found.into_iter().enumerate() {
        let (size, mask, seen) = f.expect("the complete graph settles every k <= n/3");
        let brute = u64::from(total - size);
        let edges: Vec<_> = (0..total).filter(|b| mask >> b & 1 == 0).map(|b| space.pairs[b as usize]).collect();
        let witness = graph6::encode(&build_graph(n, &edges)?);
        let (emax, _) = e_max(n, k);
        let moon = moon_applies(n as i64, k as i64).then(|| moon_bound(n as i64, k as i64).expect("applies") as u64);
        rows.push(CensusRow {
            n,
            k,
            brute_max_edges: brute,
            e_max: emax,
            brute_vs_e_max: match brute.cmp(&emax) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            }
            .into(),
            agrees_with_e_max: brute == emax,
            moon_bound: moon,
            agrees_with_moon: moon.map(|m| m == brute),
            witness_graph6: witness,
            graphs_scanned: seen,
        });
    }
    debug_assert!(rows.iter().all(|r| r.brute_max_edges <= choose2(n as i64) as u64));
    Ok(rows)
}

/// Mantel's value `⌊n/2⌋⌈n/2⌉`.
pub fn mantel(n: usize) -> u64 {
    ((n / 2) * n.div_ceil(2)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use trifree_core::packing::max_packing_exact;

    #[test]
    fn capped_packing_matches_exact() {
        let space = Space::new(6);
        let mut adj = vec![0u8; 6];
        for mask in (0u32..1 << 15).step_by(37) {
            space.adjacency(mask, &mut adj);
            let edges: Vec<_> = (0..15).filter(|b| mask >> b & 1 == 0).map(|b| space.pairs[b as usize]).collect();
            let exact = max_packing_exact(&build_graph(6, &edges).unwrap()).unwrap().size;
            assert_eq!(space.nu(&adj, 2), exact);
            assert_eq!(space.nu(&adj, 0), exact.min(1));
        }
    }

    #[test]
    fn small_orders() {
        for n in 0..=6 {
            let rows = census(n, Some(2)).unwrap();
            assert_eq!(rows.len(), n / 3 + 1);
            assert_eq!(rows[0].brute_max_edges, mantel(n));
        }
        let six = census(6, Some(1)).unwrap();
        assert_eq!(six[0].brute_max_edges, 9);
        assert_eq!(six[2].brute_max_edges, 15);
    }

    #[test]
    fn witness_is_valid() {
        for row in census(6, None).unwrap() {
            let g = graph6::decode(&row.witness_graph6).unwrap();
            assert_eq!(g.edge_count() as u64, row.brute_max_edges);
            assert!(max_packing_exact(&g).unwrap().size <= row.k);
        }
    }

    #[test]
    fn too_large() {
        assert!(census(9, None).is_err());
    }
}
