#![allow(dead_code)]

pub mod props;

use pebblelab::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(r: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

pub fn random_perm(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = r.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// Canonical form by trying every permutation; only for tiny graphs.
fn canonical_code(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut code = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in u + 1..n {
                code.push(g.adjacent(p[u], p[v]));
            }
        }
        if best.as_ref().is_none_or(|b| code > *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = Graph::from_edges(n, &e).unwrap();
        if seen.insert(canonical_code(&g)) {
            out.push(g);
        }
    }
    out
}

type Pos = BTreeSet<(usize, usize)>;

fn is_partial_iso(ga: &Graph, gb: &Graph, p: &Pos) -> bool {
    let v: Vec<_> = p.iter().copied().collect();
    for &(a, b) in &v {
        if ga.colour(a) != gb.colour(b) {
            return false;
        }
        for &(c, d) in &v {
            if (a == c) != (b == d) || ga.adjacent(a, c) != gb.adjacent(b, d) {
                return false;
            }
        }
    }
    true
}

fn all_positions(ga: &Graph, gb: &Graph, max: usize) -> Vec<Pos> {
    let mut out = vec![Pos::new()];
    let mut layer = vec![Pos::new()];
    for _ in 0..max {
        let mut next = BTreeSet::new();
        for p in &layer {
            for a in 0..ga.n() {
                for b in 0..gb.n() {
                    let mut q = p.clone();
                    if q.insert((a, b)) && is_partial_iso(ga, gb, &q) {
                        next.insert(q);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn has_perfect_matching(m: usize, adj: &[Vec<usize>], n: usize) -> bool {
    if m != n {
        return false;
    }
    let mut match_b = vec![usize::MAX; n];
    fn augment(a: usize, adj: &[Vec<usize>], seen: &mut [bool], match_b: &mut [usize]) -> bool {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                if match_b[b] == usize::MAX || augment(match_b[b], adj, seen, match_b) {
                    match_b[b] = a;
                    return true;
                }
            }
        }
        false
    }
    (0..m).all(|a| augment(a, adj, &mut vec![false; n], &mut match_b))
}

/// Spoiler moves from `p`: the positions reached by lifting a pebble.
fn lifted(p: &Pos, k: usize) -> Vec<Pos> {
    let mut out: Vec<Pos> = p.iter().map(|x| {
        let mut q = p.clone();
        q.remove(x);
        q
    }).collect();
    if p.len() < k {
        out.push(p.clone());
    }
    out
}

/// Bijective k-pebble game by plain fixpoint iteration over position sets.
pub fn bijective_game(k: usize, ga: &Graph, gb: &Graph) -> bool {
    if ga.n() != gb.n() {
        return false;
    }
    let positions = all_positions(ga, gb, k);
    let mut win: HashMap<Pos, bool> = positions.iter().map(|p| (p.clone(), true)).collect();
    loop {
        let mut changed = false;
        for p in &positions {
            if !win[p] {
                continue;
            }
            let ok = lifted(p, k).iter().all(|q| {
                let adj: Vec<Vec<usize>> = (0..ga.n())
                    .map(|a| {
                        (0..gb.n())
                            .filter(|&b| {
                                let mut r = q.clone();
                                r.insert((a, b));
                                win.get(&r).copied().unwrap_or(false)
                            })
                            .collect()
                    })
                    .collect();
                has_perfect_matching(ga.n(), &adj, gb.n())
            });
            if !ok {
                win.insert(p.clone(), false);
                changed = true;
            }
        }
        if !changed {
            return win[&Pos::new()];
        }
    }
}

/// Plain k-pebble game by fixpoint iteration over position sets.
pub fn pebble_game(k: usize, ga: &Graph, gb: &Graph) -> bool {
    let positions = all_positions(ga, gb, k);
    let mut win: HashMap<Pos, bool> = positions.iter().map(|p| (p.clone(), true)).collect();
    let extends = |win: &HashMap<Pos, bool>, q: &Pos, a: usize, b: usize| {
        let mut r = q.clone();
        r.insert((a, b));
        win.get(&r).copied().unwrap_or(false)
    };
    loop {
        let mut changed = false;
        for p in &positions {
            if !win[p] {
                continue;
            }
            let ok = lifted(p, k).iter().all(|q| {
                (0..ga.n()).all(|a| (0..gb.n()).any(|b| extends(&win, q, a, b)))
                    && (0..gb.n()).all(|b| (0..ga.n()).any(|a| extends(&win, q, a, b)))
            });
            if !ok {
                win.insert(p.clone(), false);
                changed = true;
            }
        }
        if !changed {
            return win[&Pos::new()];
        }
    }
}

/// Weak bijective k-pebble game: positions of at most `k - 1` pairs; at
/// capacity the spoiler names the pair to drop before the duplicator picks
/// her bijection, and the enlarged position must be a local isomorphism.
pub fn weak_bijective_game(k: usize, ga: &Graph, gb: &Graph) -> bool {
    if ga.n() != gb.n() {
        return false;
    }
    let cap = k - 1;
    let positions = all_positions(ga, gb, cap);
    let mut win: HashMap<Pos, bool> = positions.iter().map(|p| (p.clone(), true)).collect();
    loop {
        let mut changed = false;
        for p in &positions {
            if !win[p] {
                continue;
            }
            let drops: Vec<Option<(usize, usize)>> =
                if p.len() == cap { p.iter().map(|&x| Some(x)).collect() } else { vec![None] };
            let ok = drops.iter().all(|drop| {
                let adj: Vec<Vec<usize>> = (0..ga.n())
                    .map(|a| {
                        (0..gb.n())
                            .filter(|&b| {
                                let mut plus = p.clone();
                                plus.insert((a, b));
                                if !is_partial_iso(ga, gb, &plus) {
                                    return false;
                                }
                                let mut next = p.clone();
                                if let Some(x) = drop {
                                    next.remove(x);
                                }
                                next.insert((a, b));
                                win.get(&next).copied().unwrap_or(false)
                            })
                            .collect()
                    })
                    .collect();
                has_perfect_matching(ga.n(), &adj, gb.n())
            });
            if !ok {
                win.insert(p.clone(), false);
                changed = true;
            }
        }
        if !changed {
            return win[&Pos::new()];
        }
    }
}
