//! CFI gadgets over cliques and their straight/twisted companions.
//!
//! A degree-`d` gadget has ports `i` and `ī` for `i ∈ [d]` and one inner
//! vertex per subset of `[d]` of the chosen parity. Inner `s` is adjacent to
//! `i` when `i ∈ s` and to `ī` otherwise.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfiError {
    #[error("gadget degree must be in 2..=6, got {0}")]
    Degree(usize),
    #[error("clique size must be in 3..=5, got {0}")]
    CliqueSize(usize),
    #[error("no region {region} in a pair over K_{t}")]
    NoRegion { region: usize, t: usize },
    #[error("region {0} lacks the full inner set on at least one side")]
    FullSetMissing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub d: usize,
    pub parity: Parity,
    /// Vertices `0..2d` are the ports `1, 1̄, 2, 2̄, ...`; then one vertex per
    /// entry of `inner`.
    pub graph: Graph,
    pub inner: Vec<Vec<usize>>,
}

impl Gadget {
    /// Vertex of port `i` (1-based), positive or negated.
    pub fn port(&self, i: usize, positive: bool) -> usize {
        2 * (i - 1) + usize::from(!positive)
    }

    pub fn inner_vertex(&self, set: &[usize]) -> Option<usize> {
        self.inner.iter().position(|s| s == set).map(|i| 2 * self.d + i)
    }
}

/// Subsets of `[d]` with the given parity, as sorted lists in lexicographic order.
pub fn inner_sets(d: usize, parity: Parity) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (0u32..1 << d)
        .filter(|m| (m.count_ones() % 2 == 1) == (parity == Parity::Odd))
        .map(|m| (1..=d).filter(|&i| m >> (i - 1) & 1 == 1).collect())
        .collect();
    sets.sort();
    sets
}

pub fn gadget(d: usize, parity: Parity) -> Result<Gadget, CfiError> {
    if !(2..=6).contains(&d) {
        return Err(CfiError::Degree(d));
    }
    let inner = inner_sets(d, parity);
    let n = 2 * d + inner.len();
    let mut edges = Vec::new();
    for (k, s) in inner.iter().enumerate() {
        let v = 2 * d + k;
        for i in 1..=d {
            let port = 2 * (i - 1) + usize::from(!s.contains(&i));
            edges.push((port, v));
        }
    }
    let colours = (0..n).map(|v| if v < 2 * d { (v / 2 + 1) as u32 } else { 0 }).collect();
    let graph = Graph::from_edges(n, &edges).expect("gadget edges are simple").with_colours(colours).expect("one colour per vertex");
    Ok(Gadget { d, parity, graph, inner })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfiPair {
    pub t: usize,
    pub straight: Graph,
    pub twisted: Graph,
    /// Region (1-based clique vertex) of every graph vertex.
    pub regions: Vec<usize>,
    /// Regions whose full inner set carries a fresh colour.
    pub marked: Vec<usize>,
}

/// Port of region `v` that faces region `w`: the rank of `w` in `[t] \ {v}`.
pub fn port_towards(v: usize, w: usize) -> usize {
    debug_assert_ne!(v, w);
    if w < v {
        w
    } else {
        w - 1
    }
}

fn assemble(t: usize, twist: bool) -> Graph {
    let d = t - 1;
    let odd = gadget(d, Parity::Odd).expect("degree in range");
    let even = gadget(d, Parity::Even).expect("degree in range");
    let size = odd.graph.n();
    debug_assert_eq!(size, even.graph.n());
    let n = t * size;
    let mut edges = Vec::new();
    let mut colours = vec![0u32; n];
    for v in 1..=t {
        let g = if twist && v == t { &even } else { &odd };
        let off = (v - 1) * size;
        for (a, b) in g.graph.edges() {
            edges.push((off + a, off + b));
        }
        for x in 0..size {
            colours[off + x] = ((v - 1) * t) as u32 + g.graph.colour(x);
        }
    }
    for v in 1..=t {
        for w in v + 1..=t {
            let (pv, pw) = (port_towards(v, w), port_towards(w, v));
            for positive in [true, false] {
                let a = (v - 1) * size + odd.port(pv, positive);
                let b = (w - 1) * size + odd.port(pw, positive);
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple").with_colours(colours).expect("sized")
}

pub fn cfi_pair(t: usize) -> Result<CfiPair, CfiError> {
    if !(3..=5).contains(&t) {
        return Err(CfiError::CliqueSize(t));
    }
    let size = 2 * (t - 1) + (1 << (t - 2));
    Ok(CfiPair {
        t,
        straight: assemble(t, false),
        twisted: assemble(t, true),
        regions: (0..t * size).map(|x| x / size + 1).collect(),
        marked: Vec::new(),
    })
}

impl CfiPair {
    pub fn region_size(&self) -> usize {
        self.straight.n() / self.t
    }

    fn full_set_vertex(&self, region: usize, twisted: bool) -> Option<usize> {
        let d = self.t - 1;
        let parity = if twisted && region == self.t { Parity::Even } else { Parity::Odd };
        let full: Vec<usize> = (1..=d).collect();
        let pos = inner_sets(d, parity).iter().position(|s| *s == full)?;
        Some((region - 1) * self.region_size() + 2 * d + pos)
    }

    /// Gives the full-set inner vertex of `region` a fresh colour on both sides.
    pub fn mark_inner(&self, region: usize) -> Result<CfiPair, CfiError> {
        if region == 0 || region > self.t {
            return Err(CfiError::NoRegion { region, t: self.t });
        }
        let (Some(x), Some(y)) = (self.full_set_vertex(region, false), self.full_set_vertex(region, true)) else {
            return Err(CfiError::FullSetMissing(region));
        };
        let fresh = (self.t * self.t + region - 1) as u32;
        let recolour = |g: &Graph, v: usize| {
            let mut c = g.colours().expect("cfi graphs are coloured").to_vec();
            c[v] = fresh;
            g.clone().with_colours(c).expect("same size")
        };
        let mut marked = self.marked.clone();
        if !marked.contains(&region) {
            marked.push(region);
            marked.sort_unstable();
        }
        Ok(CfiPair {
            t: self.t,
            straight: recolour(&self.straight, x),
            twisted: recolour(&self.twisted, y),
            regions: self.regions.clone(),
            marked,
        })
    }
}
