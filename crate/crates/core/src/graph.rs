//! Simple undirected graphs with optional vertex colours.
//!
//! Vertices are indexed `0..n` in memory. The text format and every
//! rendered key use the 1-based names `1..=n`.

use crate::matrix::BoolMatrix;
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
    colours: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("edge {0}-{1} invalid")]
    BadEdge(usize, usize),
    #[error("colour list has {got} entries for {n} vertices")]
    ColourCount { got: usize, n: usize },
    #[error("graph has no colours")]
    Uncoloured,
    #[error("brute-force search space of {n} vertices exceeds that of {limit} interchangeable vertices")]
    TooLarge { n: usize, limit: usize },
}

/// Brute force accepts inputs whose colour classes admit at most
/// `BRUTE_FORCE_LIMIT!` colour-preserving bijections.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// A vertex colouring produced by a refinement procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColouring {
    /// Dense colour ids `0..c`.
    pub assignment: Vec<u32>,
    /// Round at which the colouring became stable.
    pub round: usize,
}

impl VertexColouring {
    pub fn num_colours(&self) -> usize {
        self.assignment.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n], nbrs: vec![Vec::new(); n], colours: None }
    }

    /// Edges as 0-based pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v || g.adjacent(u, v) {
                return Err(GraphError::BadEdge(u, v));
            }
            g.add_edge_unchecked(u, v);
        }
        g.sort_nbrs();
        Ok(g)
    }

    pub fn from_adjacency(adj: &BoolMatrix) -> Result<Self, GraphError> {
        let n = adj.rows();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let e = *adj.get(u, v);
                if e != *adj.get(v, u) || (u == v && e) {
                    return Err(GraphError::BadEdge(u, v));
                }
                if u < v && e {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.nbrs[u].push(v);
        self.nbrs[v].push(u);
    }

    fn sort_nbrs(&mut self) {
        for l in &mut self.nbrs {
            l.sort_unstable();
        }
    }

    pub fn with_colours(mut self, colours: Vec<u32>) -> Result<Self, GraphError> {
        if colours.len() != self.n {
            return Err(GraphError::ColourCount { got: colours.len(), n: self.n });
        }
        self.colours = Some(colours);
        Ok(self)
    }

    pub fn without_colours(mut self) -> Self {
        self.colours = None;
        self
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need three vertices");
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((n - 1, 0));
        Self::from_edges(n, &e).expect("valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Self::from_edges(n, &e).expect("valid")
    }

    pub fn star(leaves: usize) -> Self {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &e).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted 0-based edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn colours(&self) -> Option<&[u32]> {
        self.colours.as_deref()
    }

    pub fn has_colours(&self) -> bool {
        self.colours.is_some()
    }

    /// Colour of `v`; uncoloured graphs behave as if every vertex had colour 0.
    pub fn colour(&self, v: usize) -> u32 {
        self.colours.as_ref().map_or(0, |c| c[v])
    }

    pub fn adjacency_matrix(&self) -> BoolMatrix {
        BoolMatrix::from_fn(self.n, self.n, |u, v| self.adjacent(u, v))
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g.sort_nbrs();
        g.colours = self.colours.clone();
        g
    }

    /// Vertices of `other` are shifted by `self.n()`. The result is coloured
    /// if either input is, with colour 0 filling in for the other side.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.n + other.n;
        let mut g = Self::empty(n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge_unchecked(u + self.n, v + self.n);
        }
        g.sort_nbrs();
        if self.has_colours() || other.has_colours() {
            g.colours = Some((0..self.n).map(|v| self.colour(v)).chain((0..other.n).map(|v| other.colour(v))).collect());
        }
        g
    }

    /// Replaces colours by pendant paths: a vertex of colour `i` gets a fresh
    /// path of `i + 2` new vertices attached to it.
    pub fn decorate_with_paths(&self) -> Result<Self, GraphError> {
        let colours = self.colours.as_ref().ok_or(GraphError::Uncoloured)?;
        let extra: usize = colours.iter().map(|&c| c as usize + 2).sum();
        let mut g = Self::empty(self.n + extra);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(u, v);
        }
        let mut next = self.n;
        for v in 0..self.n {
            let mut prev = v;
            for _ in 0..colours[v] as usize + 2 {
                g.add_edge_unchecked(prev, next);
                prev = next;
                next += 1;
            }
        }
        g.sort_nbrs();
        Ok(g)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(perm[u], perm[v]);
        }
        g.sort_nbrs();
        if let Some(c) = &self.colours {
            let mut nc = vec![0; self.n];
            for v in 0..self.n {
                nc[perm[v]] = c[v];
            }
            g.colours = Some(nc);
        }
        g
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p {} {}", self.n, self.edge_count()).unwrap();
        if let Some(c) = &self.colours {
            for (v, col) in c.iter().enumerate() {
                writeln!(s, "c {} {}", v + 1, col).unwrap();
            }
        }
        for (u, v) in self.edges() {
            writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        parse_graph(text)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n, self.edges())?;
        if let Some(c) = &self.colours {
            write!(f, ", colours={c:?}")?;
        }
        write!(f, ")")
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Syntax { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| GraphError::Syntax { line, msg: format!("bad {what} `{tok}`") })
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize, GraphError> {
    let v = parse_num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(GraphError::VertexOutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

/// Parses the line-oriented graph format (`p n m`, `c v colour`, `e u v`).
///
/// A single line may hold several `/`-separated records, so
/// `"p 3 2 / e 1 2 / e 2 3"` is accepted as well.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut colours: Option<Vec<u32>> = None;
    let mut edges_seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        for record in content.split('/') {
            let mut toks = record.split_whitespace();
            let Some(kind) = toks.next() else { continue };
            match kind {
                "p" => {
                    if header.is_some() {
                        return Err(GraphError::Syntax { line, msg: "second header".into() });
                    }
                    let n = parse_num(toks.next(), line, "vertex count")?;
                    let m = parse_num(toks.next(), line, "edge count")?;
                    header = Some((n, m));
                    g = Graph::empty(n);
                }
                "c" | "e" => {
                    let Some((n, _)) = header else {
                        return Err(GraphError::Syntax { line, msg: "record before header".into() });
                    };
                    if kind == "c" {
                        let v = parse_vertex(toks.next(), line, n)?;
                        let col = parse_num(toks.next(), line, "colour")?;
                        let col = u32::try_from(col)
                            .map_err(|_| GraphError::Syntax { line, msg: "colour too large".into() })?;
                        colours.get_or_insert_with(|| vec![u32::MAX; n])[v] = col;
                    } else {
                        let u = parse_vertex(toks.next(), line, n)?;
                        let v = parse_vertex(toks.next(), line, n)?;
                        if u == v {
                            return Err(GraphError::LoopEdge { line, vertex: u + 1 });
                        }
                        if g.adjacent(u, v) {
                            return Err(GraphError::DuplicateEdge { line, u: u + 1, v: v + 1 });
                        }
                        g.add_edge_unchecked(u, v);
                        edges_seen += 1;
                    }
                }
                other => {
                    return Err(GraphError::Syntax { line, msg: format!("unknown record `{other}`") });
                }
            }
            if let Some(extra) = toks.next() {
                return Err(GraphError::Syntax { line, msg: format!("trailing token `{extra}`") });
            }
        }
    }
    let Some((_, m)) = header else {
        return Err(GraphError::Syntax { line: 0, msg: "missing header".into() });
    };
    if edges_seen != m {
        return Err(GraphError::EdgeCount { declared: m, found: edges_seen });
    }
    g.sort_nbrs();
    if let Some(c) = colours {
        if let Some(v) = c.iter().position(|&x| x == u32::MAX) {
            return Err(GraphError::Syntax { line: 0, msg: format!("vertex {} has no colour", v + 1) });
        }
        g.colours = Some(c);
    }
    Ok(g)
}

/// Exhaustive search for a colour- and adjacency-preserving bijection.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    let bound: u128 = (1..=BRUTE_FORCE_LIMIT as u128).product();
    for x in [g, h] {
        let mut classes: HashMap<u32, u128> = HashMap::new();
        for v in 0..x.n() {
            *classes.entry(x.colour(v)).or_default() += 1;
        }
        let space = classes.values().try_fold(1u128, |acc, &c| (1..=c).try_fold(acc, |a, i| a.checked_mul(i).filter(|&p| p <= bound)));
        if space.is_none() {
            return Err(GraphError::TooLarge { n: x.n(), limit: BRUTE_FORCE_LIMIT });
        }
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let inv = |x: &Graph| {
        let mut v: Vec<(u32, usize)> = (0..x.n()).map(|v| (x.colour(v), x.degree(v))).collect();
        v.sort_unstable();
        v
    };
    if inv(g) != inv(h) {
        return Ok(false);
    }
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g, h, 0, &mut map, &mut used))
}

fn extend(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.n() {
        return true;
    }
    for w in 0..h.n() {
        if used[w] || g.colour(v) != h.colour(w) || g.degree(v) != h.degree(w) {
            continue;
        }
        if (0..v).any(|u| g.adjacent(u, v) != h.adjacent(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
