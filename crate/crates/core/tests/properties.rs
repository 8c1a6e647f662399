use proptest::prelude::*;
use trifree_core::bounds::{
    enumerate_f, f, f_prime, feasible_count, g_ell, g_ell_regime, h_lemma, p_fun, touching_construction_edges,
    GEllRegime, Profile,
};
use trifree_core::decomposition::{audit, decompose, validate, PACKING_ENUM_CAP};
use trifree_core::graph::{max_matching, Matching};
use trifree_core::packing::{greedy_packing, local_search, max_packing_exact, validate_packing};
use trifree_core::{build_graph, Graph, Triangle};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut j = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[j] {
                        edges.push((u, v));
                    }
                    j += 1;
                }
            }
            build_graph(n, &edges).unwrap()
        })
    })
}

fn naive_triangles(g: &Graph) -> Vec<Triangle> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    out.push(Triangle::new(a, b, c));
                }
            }
        }
    }
    out
}

fn naive_packing(tris: &[Triangle], used: u64) -> usize {
    match tris.split_first() {
        None => 0,
        Some((t, rest)) => {
            let skip = naive_packing(rest, used);
            if t.mask64() & used == 0 {
                skip.max(1 + naive_packing(rest, used | t.mask64()))
            } else {
                skip
            }
        }
    }
}

fn naive_matching(edges: &[(usize, usize)], used: u64) -> usize {
    match edges.split_first() {
        None => 0,
        Some((&(u, v), rest)) => {
            let skip = naive_matching(rest, used);
            let m = (1u64 << u) | (1u64 << v);
            if m & used == 0 {
                skip.max(1 + naive_matching(rest, used | m))
            } else {
                skip
            }
        }
    }
}

fn profile_strategy(max: i64) -> impl Strategy<Value = Profile> {
    prop::array::uniform6(0..=max).prop_map(Profile::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn triangle_listing_matches_scan(g in graph_strategy(14)) {
        prop_assert_eq!(g.triangles(), naive_triangles(&g));
        prop_assert_eq!(g.triangle_count(), naive_triangles(&g).len());
    }

    #[test]
    fn matching_is_maximum(g in graph_strategy(7)) {
        let m: Matching = max_matching(&g).unwrap();
        m.validate(&g, None).unwrap();
        let edges: Vec<_> = g.edges().collect();
        prop_assert_eq!(m.len(), naive_matching(&edges, 0));
    }

    #[test]
    fn packer_is_exact(g in graph_strategy(9)) {
        let r = max_packing_exact(&g).unwrap();
        validate_packing(&g, &r.triangles).unwrap();
        prop_assert_eq!(r.size, naive_packing(&naive_triangles(&g), 0));
    }

    #[test]
    fn greedy_and_local_search_stay_valid(g in graph_strategy(10), seed in 0u64..1000) {
        let best = max_packing_exact(&g).unwrap().size;
        let gp = greedy_packing(&g, seed);
        validate_packing(&g, &gp).unwrap();
        // maximal: no triangle avoids the packing
        let used = gp.iter().fold(0u64, |a, t| a | t.mask64());
        prop_assert!(g.triangles().iter().all(|t| t.mask64() & used != 0));
        let ls = local_search(&g, seed, 2).unwrap();
        validate_packing(&g, &ls.packing).unwrap();
        prop_assert!(ls.packing.len() >= gp.len() && ls.packing.len() <= best);
    }

    #[test]
    fn decomposition_is_consistent(g in graph_strategy(9)) {
        let d = decompose(&g).unwrap();
        validate(&g, &d, PACKING_ENUM_CAP).unwrap();
        prop_assert_eq!(d.profile.n(), g.n() as i64);
        prop_assert_eq!(d.profile.k() as usize, max_packing_exact(&g).unwrap().size);
        let a = audit(&g, &d).unwrap();
        prop_assert_eq!(a.item("i-inside").map(|x| x.lhs), Some(0));
        prop_assert!(a.item("m-inside").unwrap().lhs <= d.profile.m * d.profile.m * 2);
    }

    #[test]
    fn f_matches_f_prime_when_both_parts_present(p in profile_strategy(40)) {
        let q = Profile { m: p.m.max(1), i: p.i.max(1), ..p };
        prop_assert_eq!(f(&q), f_prime(&q));
        prop_assert!(f(&p) <= f_prime(&p));
    }

    #[test]
    fn g_ell_small_regime_is_h(p in profile_strategy(300), kappa0 in 1i64..400) {
        match g_ell_regime(&p, kappa0) {
            GEllRegime::Small => {
                prop_assert!(p.t4 < 176 || p.t4 < kappa0 || 3 * p.t4 < 2 * p.m + p.i);
                prop_assert_eq!(g_ell(&p, kappa0), h_lemma(&p));
            }
            GEllRegime::Large => prop_assert!(p.t1 != 1),
            GEllRegime::LargeSingleT1 => prop_assert_eq!(p.t1, 1),
        }
    }

    #[test]
    fn touching_bound_is_best_split(a in 2i64..12, extra in 0i64..60) {
        let h = 9 * a + extra;
        let best = (0..=h - a).map(|s| touching_construction_edges(h, a, s)).max().unwrap();
        prop_assert_eq!(p_fun(h, a).unwrap(), best);
        prop_assert_eq!(touching_construction_edges(h, a, a - 1), best);
        prop_assert_eq!(touching_construction_edges(h, a, a - 2), best);
    }

    #[test]
    fn feasible_set_size(n in 0i64..40, k in 0i64..14) {
        prop_assume!(3 * k <= n);
        let all: Vec<Profile> = enumerate_f(n, k).unwrap().collect();
        prop_assert_eq!(all.len() as u128, feasible_count(n, k).unwrap());
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
