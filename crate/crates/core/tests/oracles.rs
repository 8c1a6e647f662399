//! Exhaustive checks against independently computed values.

use trifree_core::bounds::{
    brute_turan_touching_all, corradi_hajnal_deg, covers_at_least, moon_bound, p_fun, p_lower_construction,
    touching_construction, turan_touching_bound, verify_identity_grid, verify_identity_random, verify_lemma_maxf,
    verify_point_identities,
};
use trifree_core::decomposition::is_edge_maximal;
use trifree_core::extremal::{build, e_max, edge_formula, is_valid, thresholds, variants, ExtremalSpec, Family};
use trifree_core::packing::{has_packing_of_size, max_packing_exact};

#[test]
fn builds_match_formulas() {
    for n in 0..=30 {
        for k in 0..=n / 3 {
            for fam in Family::ALL {
                if !is_valid(fam, n, k) {
                    continue;
                }
                let e = edge_formula(fam, n, k).unwrap();
                for v in variants(fam, n, k) {
                    let spec = ExtremalSpec { family: fam, n, k, variant: v };
                    assert_eq!(build(&spec).unwrap().edge_count() as u64, e, "{spec:?}");
                }
            }
        }
    }
}

/// Packing number of a non-complete E4: a triangle uses two clique vertices,
/// or one clique vertex and a Y1-Y2 pair.
fn e4_packing(k: usize, x: usize, y1: usize, y2: usize) -> usize {
    (0..=x.min(y1).min(y2)).map(|s| s + (x - s) / 2).max().unwrap().min(k)
}

#[test]
fn constructions_have_expected_packing_number() {
    for n in 3..=13 {
        for k in 0..=n / 3 {
            for fam in Family::ALL.into_iter().filter(|&f| is_valid(f, n, k)) {
                for v in variants(fam, n, k) {
                    let g = build(&ExtremalSpec { family: fam, n, k, variant: v }).unwrap();
                    let nu = max_packing_exact(&g).unwrap().size;
                    assert!(!has_packing_of_size(&g, k + 1).unwrap());
                    let want = match (fam, v) {
                        (Family::E4, Some(y1)) => e4_packing(k, 6 * k + 4 - n, y1, n - 3 * k - 2 - y1),
                        (Family::E4, None) => n / 3,
                        _ => k,
                    };
                    assert_eq!(nu, want, "{fam} n={n} k={k} variant={v:?}");
                }
            }
        }
    }
}

#[test]
fn moon_bound_is_first_family() {
    for n in 8..200usize {
        for k in 0..=n / 3 {
            if let Ok(b) = moon_bound(n as i64, k as i64) {
                assert_eq!(b as u64, edge_formula(Family::E1, n, k).unwrap());
                assert_eq!(e_max(n, k).0, b as u64, "first family is the maximum where the bound applies, n={n} k={k}");
            }
        }
    }
}

#[test]
fn threshold_transitions_at_reference_sizes() {
    assert_eq!(thresholds(100).transitions, [Some(22), Some(25), Some(30)]);
    assert_eq!(thresholds(1000).transitions, [Some(222), Some(250), Some(306)]);
    assert_eq!(thresholds(8406).transitions, [Some(1868), Some(2101), Some(2572)]);
}

#[test]
fn maxf_up_to_120() {
    for n in 2..=120i64 {
        for k in 0..=(n - 2) / 3 {
            let r = verify_lemma_maxf(n, k).unwrap();
            assert!(r.passed(), "n={n} k={k}: {:?}", r.failures);
        }
    }
}

#[test]
fn touching_brute_force() {
    for h in 0..=7usize {
        let brute = brute_turan_touching_all(h).unwrap();
        for (a, &b) in brute.iter().enumerate() {
            assert_eq!(b, turan_touching_bound(h as i64, a as i64).unwrap(), "h={h} a={a}");
        }
    }
}

#[test]
fn lower_construction() {
    for a in 3..=4usize {
        for h in 9 * a..=40 {
            let c = p_lower_construction(h, a).unwrap();
            assert_eq!(c.graph.edge_count() as i64, p_fun(h as i64, a as i64).unwrap());
            assert!(!covers_at_least(&c.graph, &c.marked, 3).unwrap(), "h={h} a={a}");
        }
    }
    // small instances of the general shape, below the p range
    for h in 6..=15usize {
        for a in 3..=h / 2 {
            for s in [a - 2, a - 1] {
                if let Ok(c) = touching_construction(h, a, s) {
                    assert!(!covers_at_least(&c.graph, &c.marked, 3).unwrap());
                }
            }
        }
    }
}

#[test]
fn identity_suite() {
    let grid = verify_identity_grid(6, 4);
    assert!(grid.passed(), "{:?}", grid.violations);
    let rand = verify_identity_random(20_000, 100, 7);
    assert!(rand.passed(), "{:?}", rand.violations);
    let pts = verify_point_identities(150);
    assert!(pts.passed(), "{:?}", pts.violations);
    assert!(pts.points > 1000);
}

#[test]
fn families_are_edge_maximal() {
    let mut exceptions = Vec::new();
    for n in 3..=12usize {
        // below 3k + 3 vertices only K_n is maximal
        for k in 0..=n.saturating_sub(3) / 3 {
            for fam in Family::ALL.into_iter().filter(|&f| is_valid(f, n, k)) {
                for v in variants(fam, n, k) {
                    let g = build(&ExtremalSpec { family: fam, n, k, variant: v }).unwrap();
                    if !is_edge_maximal(&g, k).unwrap() {
                        exceptions.push((fam, n, k, v));
                    }
                }
            }
        }
    }
    // E1 at n = 3k + 3: an edge inside the smaller bipartite side cannot
    // complete a triangle factor. E4 fails at small k, beyond k < n/4 - 1.
    let mut expected = vec![(Family::E1, 6, 1, None), (Family::E1, 9, 2, None), (Family::E1, 12, 3, None)];
    for (n, k, vs) in [
        (8, 1, vec![0, 1, 2, 3]),
        (9, 1, vec![0, 1, 2, 3, 4]),
        (10, 1, vec![0, 1, 2, 3, 4, 5]),
        (12, 2, vec![0, 1, 3, 4]),
    ] {
        expected.extend(vs.into_iter().map(|v| (Family::E4, n, k, Some(v))));
    }
    exceptions.sort();
    expected.sort();
    assert_eq!(exceptions, expected);
}

#[test]
fn first_family_minimum_degree() {
    for n in 0..=30usize {
        for k in 0..=n / 3 {
            let g = build(&ExtremalSpec::new(Family::E1, n, k)).unwrap();
            let want = (3 * k <= n && n > 0).then(|| corradi_hajnal_deg(n as i64, k as i64).unwrap() as usize);
            assert_eq!(g.min_degree(), want, "n={n} k={k}");
            if n > 0 {
                assert_eq!(g.min_degree(), Some(k + (n - k) / 2));
            }
        }
    }
}
