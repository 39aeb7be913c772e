mod common;

use common::*;
use pebblelab::cfi::cfi_pair;
use pebblelab::equiv::{colour_refinement, lk, weak_lk, weak_wl, wl, EngineConfig, Engine, EngineError, Side, Witness};
use pebblelab::matrix::{stability, Arithmetic, Partition};
use pebblelab::Graph;
use proptest::prelude::*;
use rand::Rng;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn c6_2c3() -> (Graph, Graph) {
    (Graph::cycle(6), Graph::cycle(3).disjoint_union(&Graph::cycle(3)))
}

#[test]
fn colour_refinement_examples() {
    let (a, b) = c6_2c3();
    let out = colour_refinement(&a, &b);
    assert!(out.verdict.equivalent);
    assert_eq!(out.verdict.rounds, 1);
    let out = colour_refinement(&Graph::path(3), &Graph::complete(3));
    assert!(!out.verdict.equivalent);
    assert_eq!(out.verdict.distinguished_at, Some(1));
    match out.verdict.witness {
        Some(Witness::Colour { colour, count_a, count_b }) => {
            assert_eq!(out.colouring.count(Side::A, colour), count_a);
            assert_eq!(out.colouring.count(Side::B, colour), count_b);
            assert_ne!(count_a, count_b);
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn equivalent_stable_partitions_for_equivalent_pairs() {
    let (a, b) = c6_2c3();
    let out = colour_refinement(&a, &b);
    let (pa, pb, s) = out.equivalent_stable_partitions(&a, &b).unwrap();
    assert_eq!((pa.num_blocks(), pb.num_blocks()), (1, 1));
    assert_eq!(s.get(0, 0).to_string(), "2");
    let out = colour_refinement(&Graph::path(3), &Graph::complete(3));
    assert!(out.equivalent_stable_partitions(&Graph::path(3), &Graph::complete(3)).is_none());
}

#[test]
fn wl_examples() {
    let (a, b) = c6_2c3();
    assert!(wl(2, &a, &b, &cfg()).unwrap().equivalent());
    assert!(!wl(3, &a, &b, &cfg()).unwrap().equivalent());
    assert!(!bijective_game(3, &a, &b));
    assert!(bijective_game(2, &a, &b));
    assert_eq!(wl(1, &a, &b, &cfg()), Err(EngineError::InvalidK(1)));
    let tiny = EngineConfig { budget: 10 };
    assert!(matches!(wl(2, &a, &b, &tiny), Err(EngineError::BudgetExceeded { .. })));
}

#[test]
fn pebble_examples() {
    let k3 = Graph::complete(3);
    assert!(lk(2, &k3, &Graph::complete(4), &cfg()).unwrap().verdict.equivalent);
    assert!(pebble_game(2, &k3, &Graph::complete(4)));
    let out = lk(2, &k3, &Graph::path(3), &cfg()).unwrap();
    assert!(!out.verdict.equivalent);
    assert!(!pebble_game(2, &k3, &Graph::path(3)));
    assert!(matches!(out.verdict.witness, Some(Witness::Unmatched { .. })));
}

#[test]
fn pebble_positions_with_parameters() {
    let p3 = Graph::path(3);
    let out = lk(2, &p3, &p3, &cfg()).unwrap();
    assert!(out.wins_from(&[0], &[2]));
    assert!(!out.wins_from(&[0], &[1]));
    assert!(out.wins_from(&[0, 1], &[2, 1]));
    assert!(!out.wins_from(&[0, 2], &[0, 1]));
    let out = weak_lk(3, &p3, &p3, &cfg()).unwrap();
    assert!(out.wins_from(&[1], &[1]));
    assert!(!out.wins_from(&[1], &[0]));
}

#[test]
fn cfi_separations() {
    let p = cfi_pair(4).unwrap();
    let (a, b) = (&p.straight, &p.twisted);
    assert!(colour_refinement(a, b).verdict.equivalent);
    assert!(wl(3, a, b, &cfg()).unwrap().equivalent());
    assert!(!weak_wl(4, a, b, &cfg()).unwrap().equivalent());
    assert!(lk(3, a, b, &cfg()).unwrap().verdict.equivalent);
    assert!(!weak_lk(4, a, b, &cfg()).unwrap().verdict.equivalent);
}

#[test]
fn marked_cfi_pair() {
    let m = cfi_pair(4).unwrap().mark_inner(1).unwrap();
    let (a, b) = (&m.straight, &m.twisted);
    assert!(!wl(3, a, b, &cfg()).unwrap().equivalent());
    assert!(!lk(3, a, b, &cfg()).unwrap().verdict.equivalent);
    // the mark pins region a, and two pebbles on the ports facing c then
    // force a parity clash inside c
    assert!(!weak_wl(3, a, b, &cfg()).unwrap().equivalent());
    assert!(!weak_bijective_game(3, a, b));
    let out = weak_lk(3, a, b, &cfg()).unwrap();
    assert!(!out.verdict.equivalent);
    let sz = m.region_size();
    let (b2bar, b2, d3, c2, c2bar) = (sz + 3, sz + 2, 3 * sz + 4, 2 * sz + 2, 2 * sz + 3);
    assert!(!out.wins_from(&[b2bar, d3], &[b2, d3]));
    assert!(!out.wins_from(&[d3, c2], &[d3, c2bar]));
    // without the mark the same pair is not yet lost
    let u = cfi_pair(4).unwrap();
    assert!(weak_wl(3, &u.straight, &u.twisted, &cfg()).unwrap().equivalent());
    assert!(weak_bijective_game(3, &u.straight, &u.twisted));
}

#[test]
fn weak_engines_against_game_oracle() {
    let mut r = rng(19);
    for _ in 0..40 {
        let n = 4 + r.gen_range(0..2) as usize;
        let a = random_graph(&mut r, n, 0.5);
        let b = random_graph(&mut r, n, 0.5);
        assert_eq!(weak_wl(3, &a, &b, &cfg()).unwrap().equivalent(), weak_bijective_game(3, &a, &b));
    }
}

#[test]
fn decorated_cfi_matches_coloured_for_refinement() {
    let p = cfi_pair(3).unwrap();
    let coloured = colour_refinement(&p.straight, &p.twisted).verdict.equivalent;
    let da = p.straight.decorate_with_paths().unwrap();
    let db = p.twisted.decorate_with_paths().unwrap();
    assert_eq!(colour_refinement(&da, &db).verdict.equivalent, coloured);
    assert_eq!(wl(2, &da, &db, &cfg()).unwrap().equivalent(), coloured);
}

#[test]
fn two_wl_is_colour_refinement_on_five_vertices() {
    let gs = all_graphs(5);
    assert_eq!(gs.len(), 34);
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i..] {
            let cr = colour_refinement(a, b).verdict.equivalent;
            assert_eq!(wl(2, a, b, &cfg()).unwrap().equivalent(), cr);
            assert_eq!(weak_wl(2, a, b, &cfg()).unwrap().equivalent(), cr);
        }
    }
}

#[test]
fn engines_against_game_oracles() {
    let mut r = rng(7);
    for _ in 0..60 {
        let n = 4 + (r.gen_range(0..2) as usize);
        let a = random_graph(&mut r, n, 0.5);
        let b = random_graph(&mut r, n, 0.5);
        for k in [2, 3] {
            assert_eq!(wl(k, &a, &b, &cfg()).unwrap().equivalent(), bijective_game(k, &a, &b), "wl k={k} {a:?} {b:?}");
            assert_eq!(lk(k, &a, &b, &cfg()).unwrap().verdict.equivalent, pebble_game(k, &a, &b), "lk k={k}");
        }
    }
}

#[test]
fn hierarchy_sandwich_on_random_pairs() {
    let mut r = rng(11);
    for _ in 0..80 {
        let n = 5 + r.gen_range(0..2) as usize;
        let a = random_graph(&mut r, n, 0.4);
        let b = random_graph(&mut r, n, 0.4);
        let e = |eng: Engine, k| eng.run(k, &a, &b, &cfg()).unwrap().equivalent;
        for k in 2..=4 {
            let w = e(Engine::Wl, k);
            let ww = e(Engine::WeakWl, k);
            let l = e(Engine::Lk, k);
            let wl_ = e(Engine::WeakLk, k);
            if w {
                assert!(ww);
            }
            if l {
                assert!(wl_);
            }
            if k >= 3 {
                if ww {
                    assert!(e(Engine::Wl, k - 1));
                }
                if wl_ {
                    assert!(e(Engine::Lk, k - 1));
                }
            }
            if !w {
                assert!(!e(Engine::Wl, k + 1));
            }
            if !ww {
                assert!(!e(Engine::WeakWl, k + 1));
            }
            if !l {
                assert!(!e(Engine::Lk, k + 1));
            }
            if !wl_ {
                assert!(!e(Engine::WeakLk, k + 1));
            }
            // counting refines non-counting
            if w {
                assert!(l);
            }
        }
    }
}

#[test]
fn rounds_bounded() {
    let mut r = rng(3);
    for _ in 0..40 {
        let a = random_graph(&mut r, 5, 0.5);
        let b = random_graph(&mut r, 4, 0.5);
        for k in 2..=3 {
            let c = wl(k, &a, &b, &cfg()).unwrap();
            assert!(c.rounds <= 5usize.pow(k as u32) + 4usize.pow(k as u32));
            let c = weak_wl(k, &a, &b, &cfg()).unwrap();
            assert!(!c.equivalent());
        }
    }
}

#[test]
fn stable_colouring_is_coarsest_stable() {
    let mut r = rng(5);
    for _ in 0..40 {
        let n = 3 + r.gen_range(0..6) as usize;
        let g = random_graph(&mut r, n, 0.4);
        let out = colour_refinement(&g, &Graph::empty(0));
        let (part, _) = out.partition(Side::A);
        let adj = g.adjacency_matrix();
        assert!(stability(&adj, &part, Arithmetic::Rational).unwrap().stable);
        for i in 0..part.num_blocks() {
            for j in i + 1..part.num_blocks() {
                let mut blocks: Vec<Vec<usize>> = part.blocks().to_vec();
                let merged = blocks.remove(j);
                blocks[i].extend(merged);
                let coarser = Partition::new(n, blocks).unwrap();
                assert!(!stability(&adj, &coarser, Arithmetic::Rational).unwrap().stable);
            }
        }
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        e.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_invariant_under_relabelling(a in small_graph(), b in small_graph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let pa = a.permuted(&random_perm(&mut r, a.n()));
        let pb = b.permuted(&random_perm(&mut r, b.n()));
        for eng in [Engine::ColourRefinement, Engine::Wl, Engine::WeakWl, Engine::Lk, Engine::WeakLk] {
            for k in 2..=3 {
                let x = eng.run(k, &a, &b, &cfg()).unwrap().equivalent;
                let y = eng.run(k, &pa, &pb, &cfg()).unwrap().equivalent;
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn every_graph_equivalent_to_itself(a in small_graph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let pa = a.permuted(&random_perm(&mut r, a.n()));
        for eng in [Engine::ColourRefinement, Engine::Wl, Engine::WeakWl, Engine::Lk, Engine::WeakLk] {
            prop_assert!(eng.run(3, &a, &pa, &cfg()).unwrap().equivalent);
        }
    }
}
