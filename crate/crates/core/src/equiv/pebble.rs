//! Greatest-fixpoint evaluation of the (weak) k-pebble game.

use super::{EngineConfig, EngineError, Side, Verdict, Witness};
use crate::graph::Graph;
use std::collections::HashMap;

type Pair = (usize, usize);

/// All local isomorphisms of bounded size between two graphs.
struct Positions {
    pairs: Vec<Pair>,
    sets: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn compatible(ga: &Graph, gb: &Graph, (a, b): Pair, (c, d): Pair) -> bool {
    if a == c || b == d {
        return a == c && b == d;
    }
    ga.adjacent(a, c) == gb.adjacent(b, d)
}

impl Positions {
    fn build(ga: &Graph, gb: &Graph, max: usize, cfg: &EngineConfig) -> Result<Self, EngineError> {
        let mut pairs = Vec::new();
        for a in 0..ga.n() {
            for b in 0..gb.n() {
                if ga.colour(a) == gb.colour(b) {
                    pairs.push((a, b));
                }
            }
        }
        let mut p = Positions { pairs, sets: vec![Vec::new()], index: HashMap::new() };
        p.index.insert(Vec::new(), 0);
        let mut frontier = vec![0usize];
        for _ in 0..max {
            let mut next = Vec::new();
            for &q in &frontier {
                let start = p.sets[q].last().map_or(0, |&c| c as usize + 1);
                for c in start..p.pairs.len() {
                    if p.sets[q].iter().all(|&e| compatible(ga, gb, p.pairs[e as usize], p.pairs[c])) {
                        let mut s = p.sets[q].clone();
                        s.push(c as u32);
                        if p.sets.len() >= cfg.budget {
                            return Err(EngineError::BudgetExceeded { needed: p.sets.len() + 1, budget: cfg.budget });
                        }
                        p.index.insert(s.clone(), p.sets.len());
                        next.push(p.sets.len());
                        p.sets.push(s);
                    }
                }
            }
            frontier = next;
        }
        Ok(p)
    }

    /// For each position of size below `max`, the positions `q ∪ {(a, b)}`
    /// for all pairs keeping it a local isomorphism.
    fn extensions(&self, below: usize) -> Vec<Vec<(u32, u32, u32)>> {
        let mut out = vec![Vec::new(); self.sets.len()];
        for (q, set) in self.sets.iter().enumerate() {
            if set.len() >= below {
                continue;
            }
            for c in 0..self.pairs.len() as u32 {
                let mut s = set.clone();
                if let Err(pos) = s.binary_search(&c) {
                    s.insert(pos, c);
                }
                if let Some(&idx) = self.index.get(&s) {
                    let (a, b) = self.pairs[c as usize];
                    out[q].push((a as u32, b as u32, idx as u32));
                }
            }
        }
        out
    }

    fn without(&self, p: usize) -> Vec<(usize, u32)> {
        let set = &self.sets[p];
        (0..set.len())
            .map(|i| {
                let mut s = set.clone();
                let x = s.remove(i);
                (self.index[&s], x)
            })
            .collect()
    }

    fn pairs_of(&self, p: usize) -> Vec<Pair> {
        self.sets[p].iter().map(|&c| self.pairs[c as usize]).collect()
    }
}

/// First vertex on either side without a surviving answer from `q`.
fn unmatched(
    ext: &[(u32, u32, u32)],
    alive: &[bool],
    m: usize,
    n: usize,
    ok: impl Fn(&(u32, u32, u32)) -> bool,
) -> Option<(Side, usize)> {
    let mut fa = vec![false; m];
    let mut fb = vec![false; n];
    for e in ext {
        if alive[e.2 as usize] && ok(e) {
            fa[e.0 as usize] = true;
            fb[e.1 as usize] = true;
        }
    }
    if let Some(a) = fa.iter().position(|&x| !x) {
        return Some((Side::A, a));
    }
    fb.iter().position(|&x| !x).map(|b| (Side::B, b))
}

/// Winning region of the duplicator in a pebble game.
#[derive(Debug, Clone)]
pub struct PebbleOutcome {
    pub verdict: Verdict,
    pub positions: usize,
    winning: HashMap<Vec<Pair>, bool>,
}

impl PebbleOutcome {
    /// Whether the duplicator wins from the position given by matching
    /// tuples `ā ↦ b̄`. Positions that are not local isomorphisms or too
    /// large for the game lose.
    pub fn wins_from(&self, a: &[usize], b: &[usize]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let mut p: Vec<Pair> = a.iter().copied().zip(b.iter().copied()).collect();
        p.sort_unstable();
        p.dedup();
        self.winning.get(&p).copied().unwrap_or(false)
    }

    /// Positions from which the duplicator wins, as sorted pair lists.
    pub fn winning_positions(&self) -> impl Iterator<Item = &[Pair]> {
        self.winning.iter().filter(|(_, &w)| w).map(|(p, _)| p.as_slice())
    }
}

fn outcome(pos: &Positions, alive: &[bool], rounds: usize, witness: Option<Witness>) -> PebbleOutcome {
    let winning = (0..pos.sets.len()).map(|p| (pos.pairs_of(p), alive[p])).collect();
    let equivalent = alive[0];
    PebbleOutcome {
        verdict: Verdict {
            equivalent,
            rounds,
            distinguished_at: (!equivalent).then_some(rounds),
            witness: if equivalent { None } else { witness },
        },
        positions: pos.sets.len(),
        winning,
    }
}

fn check_k(k: usize) -> Result<(), EngineError> {
    if k < 2 {
        Err(EngineError::InvalidK(k))
    } else {
        Ok(())
    }
}

/// The k-pebble game: positions are local isomorphisms with at most `k`
/// pairs. From `p` the spoiler lifts a pebble (reaching `p \ x`, or `p`
/// itself while pebbles are free) and then plays on either side.
pub fn lk(k: usize, ga: &Graph, gb: &Graph, cfg: &EngineConfig) -> Result<PebbleOutcome, EngineError> {
    check_k(k)?;
    let pos = Positions::build(ga, gb, k, cfg)?;
    let ext = pos.extensions(k);
    let subs: Vec<Vec<(usize, u32)>> = (0..pos.sets.len()).map(|p| pos.without(p)).collect();
    let (m, n) = (ga.n(), gb.n());
    let mut alive = vec![true; pos.sets.len()];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let ok: Vec<bool> = (0..pos.sets.len())
            .map(|q| pos.sets[q].len() < k && alive[q] && unmatched(&ext[q], &alive, m, n, |_| true).is_none())
            .collect();
        let mut changed = false;
        for p in 0..pos.sets.len() {
            if !alive[p] {
                continue;
            }
            let free = pos.sets[p].len() < k;
            let survive = (!free || ok[p]) && subs[p].iter().all(|&(q, _)| ok[q]);
            if !survive {
                alive[p] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let witness = unmatched(&ext[0], &alive, m, n, |_| true)
        .map(|(side, vertex)| Witness::Unmatched { position: Vec::new(), side, vertex });
    Ok(outcome(&pos, &alive, rounds, witness))
}

/// The weak k-pebble game: positions have at most `k - 1` pairs; at
/// capacity the spoiler names a pair to drop, and the answer must extend
/// the full position to a local isomorphism before the pair is dropped.
pub fn weak_lk(k: usize, ga: &Graph, gb: &Graph, cfg: &EngineConfig) -> Result<PebbleOutcome, EngineError> {
    check_k(k)?;
    let cap = k - 1;
    let pos = Positions::build(ga, gb, cap, cfg)?;
    let ext = pos.extensions(cap);
    let subs: Vec<Vec<(usize, u32)>> = (0..pos.sets.len())
        .map(|p| if pos.sets[p].len() == cap { pos.without(p) } else { Vec::new() })
        .collect();
    let (m, n) = (ga.n(), gb.n());
    let mut alive = vec![true; pos.sets.len()];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for p in 0..pos.sets.len() {
            if !alive[p] {
                continue;
            }
            let survive = if pos.sets[p].len() < cap {
                unmatched(&ext[p], &alive, m, n, |_| true).is_none()
            } else {
                subs[p].iter().all(|&(q, x)| {
                    let x = pos.pairs[x as usize];
                    unmatched(&ext[q], &alive, m, n, |e| compatible(ga, gb, x, (e.0 as usize, e.1 as usize))).is_none()
                })
            };
            if !survive {
                alive[p] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let witness = if cap == 0 {
        None
    } else {
        unmatched(&ext[0], &alive, m, n, |_| true)
            .map(|(side, vertex)| Witness::Unmatched { position: Vec::new(), side, vertex })
    };
    Ok(outcome(&pos, &alive, rounds, witness))
}
