use super::{EngineConfig, EngineError, Side, Verdict, Witness};
use crate::graph::Graph;

/// Joint colouring of `A^r ∪ B^r`.
///
/// Tuples are indexed in base `m` (resp. `n`) with component 0 as the least
/// significant digit; all `A` tuples come first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleColouring {
    pub arity: usize,
    pub sizes: [usize; 2],
    pub colours: Vec<u32>,
    /// Realisation counts per colour, `[count in A, count in B]`.
    pub counts: Vec<[usize; 2]>,
    pub rounds: usize,
    pub distinguished_at: Option<usize>,
}

impl TupleColouring {
    pub fn num_colours(&self) -> usize {
        self.counts.len()
    }

    pub fn offset(&self, side: Side) -> usize {
        match side {
            Side::A => 0,
            Side::B => self.sizes[0].pow(self.arity as u32),
        }
    }

    pub fn index(&self, side: Side, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        let base = self.sizes[side.idx()];
        let mut idx = 0;
        for &v in tuple.iter().rev() {
            idx = idx * base + v;
        }
        self.offset(side) + idx
    }

    pub fn decode(&self, idx: usize) -> (Side, Vec<usize>) {
        let (side, mut rel) = if idx < self.offset(Side::B) { (Side::A, idx) } else { (Side::B, idx - self.offset(Side::B)) };
        let base = self.sizes[side.idx()];
        let mut t = Vec::with_capacity(self.arity);
        for _ in 0..self.arity {
            t.push(rel % base);
            rel /= base;
        }
        (side, t)
    }

    pub fn colour(&self, side: Side, tuple: &[usize]) -> u32 {
        self.colours[self.index(side, tuple)]
    }

    pub fn count(&self, side: Side, colour: u32) -> usize {
        self.counts[colour as usize][side.idx()]
    }

    /// Type of a tuple of length `1..=arity`: the colour of the tuple padded
    /// by repeating its last component. Padding is a bijection between
    /// `s`-tuples and padded tuples, so realisation counts carry over.
    pub fn type_of(&self, side: Side, tuple: &[usize]) -> u32 {
        assert!(!tuple.is_empty() && tuple.len() <= self.arity, "tuple length out of range");
        let mut padded = tuple.to_vec();
        let last = *tuple.last().expect("nonempty");
        padded.resize(self.arity, last);
        self.colour(side, &padded)
    }

    pub fn equivalent(&self) -> bool {
        self.counts.iter().all(|c| c[0] == c[1])
    }

    pub fn witness(&self) -> Option<Witness> {
        self.counts.iter().enumerate().find(|(_, c)| c[0] != c[1]).map(|(i, c)| Witness::Colour {
            colour: i as u32,
            count_a: c[0],
            count_b: c[1],
        })
    }

    pub fn verdict(&self) -> Verdict {
        Verdict {
            equivalent: self.equivalent(),
            rounds: self.rounds,
            distinguished_at: self.distinguished_at,
            witness: self.witness(),
        }
    }
}

pub(crate) fn tuple_count(sizes: [usize; 2], arity: usize, cfg: &EngineConfig) -> Result<usize, EngineError> {
    let p = |b: usize| b.checked_pow(arity as u32);
    let total = p(sizes[0]).zip(p(sizes[1])).and_then(|(x, y)| x.checked_add(y));
    match total {
        Some(t) if t <= cfg.budget => Ok(t),
        _ => Err(EngineError::BudgetExceeded { needed: total.unwrap_or(usize::MAX), budget: cfg.budget }),
    }
}

/// Quantifier-free type code of a pair of vertices: 2 equal, 1 adjacent, 0 otherwise.
pub(crate) fn atp_code(g: &Graph, u: usize, v: usize) -> u32 {
    if u == v {
        2
    } else if g.adjacent(u, v) {
        1
    } else {
        0
    }
}

fn decode_into(mut rel: usize, base: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = rel % base;
        rel /= base;
    }
}

/// Assigns dense ids to the rows of `buf` (all of width `stride`) by sorting,
/// so ids only depend on the multiset of rows.
pub(crate) fn rank_rows<T: Ord>(buf: &[T], stride: usize) -> (Vec<u32>, usize) {
    let rows = buf.len().checked_div(stride).unwrap_or(0);
    let row = |i: usize| &buf[i * stride..(i + 1) * stride];
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_unstable_by(|&x, &y| row(x).cmp(row(y)));
    let mut ids = vec![0u32; rows];
    let mut next = 0u32;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 && row(order[pos - 1]) != row(i) {
            next += 1;
        }
        ids[i] = next;
    }
    (ids, if rows == 0 { 0 } else { next as usize + 1 })
}

fn counts_of(colours: &[u32], split: usize, k: usize) -> Vec<[usize; 2]> {
    let mut c = vec![[0usize; 2]; k];
    for (i, &col) in colours.iter().enumerate() {
        c[col as usize][usize::from(i >= split)] += 1;
    }
    c
}

/// Per-structure view used while refining.
pub(crate) struct Joint<'a> {
    pub graphs: [&'a Graph; 2],
    pub arity: usize,
    pub split: usize,
    pub total: usize,
}

impl<'a> Joint<'a> {
    pub fn new(ga: &'a Graph, gb: &'a Graph, arity: usize, cfg: &EngineConfig) -> Result<Self, EngineError> {
        let total = tuple_count([ga.n(), gb.n()], arity, cfg)?;
        Ok(Joint { graphs: [ga, gb], arity, split: ga.n().pow(arity as u32), total })
    }

    pub fn locate(&self, idx: usize) -> (usize, usize) {
        if idx < self.split { (0, idx) } else { (1, idx - self.split) }
    }

    /// Colours by atomic type: vertex colours plus the equality/adjacency pattern.
    pub fn initial(&self) -> Vec<u32> {
        let r = self.arity;
        let stride = r + r * (r.saturating_sub(1)) / 2;
        let mut buf = Vec::with_capacity(self.total * stride);
        let mut t = vec![0; r];
        for idx in 0..self.total {
            let (s, rel) = self.locate(idx);
            let g = self.graphs[s];
            decode_into(rel, g.n(), &mut t);
            for &v in &t {
                buf.push(g.colour(v));
            }
            for i in 0..r {
                for j in i + 1..r {
                    buf.push(atp_code(g, t[i], t[j]));
                }
            }
        }
        rank_rows(&buf, stride).0
    }

    /// Iterates `step` until the number of colours stops growing.
    ///
    /// `step` gets the current colouring and returns the refined one, whose
    /// partition must refine the current one.
    pub fn stabilise(&self, init: Vec<u32>, mut step: impl FnMut(&[u32]) -> (Vec<u32>, usize)) -> TupleColouring {
        let mut colours = init;
        let mut k = colours.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut counts = counts_of(&colours, self.split, k);
        let mut distinguished_at = counts.iter().any(|c| c[0] != c[1]).then_some(0);
        let mut rounds = 0;
        loop {
            rounds += 1;
            let (next, nk) = step(&colours);
            if nk == k {
                break;
            }
            colours = next;
            k = nk;
            counts = counts_of(&colours, self.split, k);
            if distinguished_at.is_none() && counts.iter().any(|c| c[0] != c[1]) {
                distinguished_at = Some(rounds);
            }
        }
        TupleColouring {
            arity: self.arity,
            sizes: [self.graphs[0].n(), self.graphs[1].n()],
            colours,
            counts,
            rounds,
            distinguished_at,
        }
    }

    /// Sorted multiset of colours of the `j`-neighbours of every tuple,
    /// as one id per tuple. Rows are padded to the larger universe.
    pub fn neighbour_multisets(&self, colours: &[u32], j: usize, width: usize, mut entry: impl FnMut(usize, usize, u32, usize) -> u64) -> Vec<u32> {
        let mut buf = Vec::with_capacity(self.total * width);
        let mut t = vec![0; self.arity];
        for idx in 0..self.total {
            let (s, rel) = self.locate(idx);
            let n = self.graphs[s].n();
            decode_into(rel, n, &mut t);
            let base = idx - rel;
            let place = n.pow(j as u32);
            let cleared = rel - t[j] * place;
            let start = buf.len();
            for v in 0..n {
                let c = colours[base + cleared + v * place];
                buf.push(entry(s, t[j], c, v));
            }
            for _ in n..width {
                buf.push(u64::MAX);
            }
            buf[start..].sort_unstable();
        }
        rank_rows(&buf, width).0
    }
}
