//! Equivalence deciders: colour refinement, k-WL, its weak variant and the
//! two pebble games without counting.

mod pebble;
mod refine;
mod tuples;

pub use pebble::{lk, weak_lk, PebbleOutcome};
pub use refine::{colour_refinement, weak_wl, wl, RefinementOutcome};
pub use tuples::TupleColouring;

use serde::Serialize;

pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn idx(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of tuples (refinement) or positions (pebble games).
    pub budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// A colour realised a different number of times in the two structures.
    Colour { colour: u32, count_a: usize, count_b: usize },
    /// The spoiler plays `vertex` on `side` from `position` and no answer survives.
    Unmatched { position: Vec<(usize, usize)>, side: Side, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub equivalent: bool,
    /// Refinement rounds or fixpoint iterations, including the final one
    /// that changed nothing.
    pub rounds: usize,
    /// First round at which the structures were told apart.
    pub distinguished_at: Option<usize>,
    pub witness: Option<Witness>,
}

/// The engines selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Engine {
    ColourRefinement,
    Wl,
    WeakWl,
    Lk,
    WeakLk,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::ColourRefinement => "cr",
            Engine::Wl => "wl",
            Engine::WeakWl => "weakwl",
            Engine::Lk => "lk",
            Engine::WeakLk => "weaklk",
        }
    }

    /// Runs the engine; `k` is ignored by colour refinement.
    pub fn run(self, k: usize, ga: &crate::Graph, gb: &crate::Graph, cfg: &EngineConfig) -> Result<Verdict, EngineError> {
        Ok(match self {
            Engine::ColourRefinement => colour_refinement(ga, gb).verdict,
            Engine::Wl => wl(k, ga, gb, cfg)?.verdict(),
            Engine::WeakWl => weak_wl(k, ga, gb, cfg)?.verdict(),
            Engine::Lk => lk(k, ga, gb, cfg)?.verdict,
            Engine::WeakLk => weak_lk(k, ga, gb, cfg)?.verdict,
        })
    }
}
