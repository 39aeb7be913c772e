use super::{Assignment, PartialMap, SystemError};
use crate::equiv::{lk, weak_lk, weak_wl, wl, EngineConfig, Side, TupleColouring};
use crate::graph::Graph;
use crate::matrix::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Types from `wl(k)`, maps of size up to `k`.
    Full,
    /// Types from `weak_wl(k)`, maps of size up to `k - 1`.
    Weak,
}

/// Local isomorphisms of size `1..=top`, by extension in pair order.
fn local_isomorphisms(ga: &Graph, gb: &Graph, top: usize) -> Vec<PartialMap> {
    let pairs: Vec<(usize, usize)> =
        (0..ga.n()).flat_map(|a| (0..gb.n()).map(move |b| (a, b))).filter(|&(a, b)| ga.colour(a) == gb.colour(b)).collect();
    let mut out = Vec::new();
    let mut stack = vec![(PartialMap::empty(), 0usize)];
    while let Some((p, start)) = stack.pop() {
        if p.len() == top {
            continue;
        }
        for (c, &(a, b)) in pairs.iter().enumerate().skip(start) {
            let q = p.with(a, b);
            if q.len() > p.len() && q.is_local_isomorphism(ga, gb) {
                out.push(q.clone());
                stack.push((q, c + 1));
            }
        }
    }
    out
}

/// `X_p = δ(tp ā, tp b̄) / #(tuples of type tp ā)` and `X_∅ = 1`.
pub fn canonical_solution(
    k: usize,
    ga: &Graph,
    gb: &Graph,
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<Assignment<Rational>, SystemError> {
    let (colouring, top): (TupleColouring, usize) = match mode {
        Mode::Full => (wl(k, ga, gb, cfg)?, k),
        Mode::Weak => (weak_wl(k, ga, gb, cfg)?, k - 1),
    };
    if !colouring.equivalent() || ga.n() != gb.n() {
        let name = if mode == Mode::Full { "C^k" } else { "weak C^k" };
        return Err(SystemError::NotEquivalent(name.into()));
    }
    let mut x = Assignment::new();
    x.set(PartialMap::empty(), Rational::one());
    for p in local_isomorphisms(ga, gb, top) {
        let (a, b) = p.tuples();
        let t = colouring.type_of(Side::A, &a);
        if t == colouring.type_of(Side::B, &b) {
            let count = colouring.count(Side::A, t) as i64;
            x.set(p, Rational::new(1, count));
        }
    }
    Ok(x)
}

/// `X_p = 1` exactly on the duplicator's winning positions of the pebble
/// game (`half`) or the weak pebble game.
pub fn game_solution(k: usize, half: bool, ga: &Graph, gb: &Graph, cfg: &EngineConfig) -> Result<Assignment<bool>, SystemError> {
    let out = if half { lk(k, ga, gb, cfg)? } else { weak_lk(k, ga, gb, cfg)? };
    if !out.verdict.equivalent {
        return Err(SystemError::NotEquivalent(if half { "L^k" } else { "weak L^k" }.into()));
    }
    Ok(out.winning_positions().map(|p| (PartialMap::new(p.to_vec()), true)).collect())
}
