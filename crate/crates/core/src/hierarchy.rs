//! Cross-validation of the engines against the equation systems.
//!
//! Every cell (one engine run or one system solve) is computed on its own,
//! so an engine verdict never informs a solver and vice versa.

use crate::equiv::{Engine, EngineConfig};
use crate::graph::Graph;
use crate::solvers::{bool_solve, lp_feasible, presolve_zero, Strength};
use crate::systems::{build_biso, build_iso, build_sa, build_sa_half, BuildOptions, SystemError};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::{self, Write};

/// Largest linear system, counted after presolve, handed to the simplex.
pub const DEFAULT_LP_LIMIT: usize = 3000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SystemName {
    /// The level-one system `AX = XB`, `X` doubly stochastic.
    Iso,
    /// `ISO[k-1]`.
    Sa,
    /// `ISO[k-1/2]`.
    SaHalf,
    /// `BISO[k-1]`.
    Biso,
    /// `BISO[k-1/2]`.
    BisoHalf,
}

impl SystemName {
    pub fn label(self) -> &'static str {
        match self {
            SystemName::Iso => "ISO",
            SystemName::Sa => "ISO[k-1]",
            SystemName::SaHalf => "ISO[k-1/2]",
            SystemName::Biso => "BISO[k-1]",
            SystemName::BisoHalf => "BISO[k-1/2]",
        }
    }

    /// The engine whose verdict the system's feasibility must match.
    pub fn partner(self) -> Engine {
        match self {
            SystemName::Iso => Engine::ColourRefinement,
            SystemName::Sa => Engine::WeakWl,
            SystemName::SaHalf => Engine::Wl,
            SystemName::Biso => Engine::WeakLk,
            SystemName::BisoHalf => Engine::Lk,
        }
    }

    pub fn is_boolean(self) -> bool {
        matches!(self, SystemName::Biso | SystemName::BisoHalf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineStatus {
    Equivalent,
    Distinguished,
    Error(String),
}

impl EngineStatus {
    fn decided(&self) -> Option<bool> {
        match self {
            EngineStatus::Equivalent => Some(true),
            EngineStatus::Distinguished => Some(false),
            EngineStatus::Error(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemStatus {
    Feasible,
    Infeasible,
    /// Too large for the configured limits.
    Skipped(String),
    Error(String),
}

impl SystemStatus {
    fn decided(&self) -> Option<bool> {
        match self {
            SystemStatus::Feasible => Some(true),
            SystemStatus::Infeasible => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HierarchyConfig {
    pub engine: EngineConfig,
    /// Variables allowed in a presolved linear system.
    pub lp_limit: usize,
    /// Variables allowed while building any system.
    pub max_vars: usize,
}

impl Default for HierarchyConfig {
    fn default() -> Self {
        HierarchyConfig {
            engine: EngineConfig::default(),
            lp_limit: DEFAULT_LP_LIMIT,
            max_vars: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EngineCell {
    pub engine: Engine,
    pub status: EngineStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemCell {
    pub system: SystemName,
    pub status: SystemStatus,
    /// Variables after presolve (linear) or as built (boolean).
    pub vars: Option<usize>,
}

/// One flag per system: feasibility equals the partner engine's verdict.
/// `consistent` is `None` when either side was not decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub pair: String,
    pub k: usize,
    pub engine: &'static str,
    pub verdict: String,
    pub system: &'static str,
    pub status: String,
    pub consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub pair: String,
    pub k: usize,
    pub engines: Vec<EngineCell>,
    pub systems: Vec<SystemCell>,
    pub flags: Vec<Flag>,
}

impl HierarchyReport {
    pub fn violations(&self) -> usize {
        self.flags.iter().filter(|f| f.consistent == Some(false)).count()
    }

    pub fn undecided(&self) -> usize {
        self.flags.iter().filter(|f| f.consistent.is_none()).count()
    }

    pub fn engine(&self, e: Engine) -> Option<&EngineStatus> {
        self.engines.iter().find(|c| c.engine == e).map(|c| &c.status)
    }

    pub fn system(&self, s: SystemName) -> Option<&SystemStatus> {
        self.systems.iter().find(|c| c.system == s).map(|c| &c.status)
    }
}

fn engine_label(s: &EngineStatus) -> String {
    match s {
        EngineStatus::Equivalent => "equivalent".into(),
        EngineStatus::Distinguished => "distinguished".into(),
        EngineStatus::Error(e) => format!("error: {e}"),
    }
}

fn system_label(s: &SystemStatus) -> String {
    match s {
        SystemStatus::Feasible => "feasible".into(),
        SystemStatus::Infeasible => "infeasible".into(),
        SystemStatus::Skipped(why) => format!("skipped: {why}"),
        SystemStatus::Error(e) => format!("error: {e}"),
    }
}

enum Cell {
    Engine(Engine),
    System(SystemName),
}

enum Outcome {
    Engine(EngineCell),
    System(SystemCell),
}

fn solve(name: SystemName, k: usize, ga: &Graph, gb: &Graph, cfg: &HierarchyConfig) -> SystemCell {
    let opts = BuildOptions { max_vars: cfg.max_vars, ..BuildOptions::structural() };
    let skipped = |e: SystemError| match e {
        SystemError::TooLarge { .. } => SystemStatus::Skipped(e.to_string()),
        e => SystemStatus::Error(e.to_string()),
    };
    if name.is_boolean() {
        let built = build_biso(k, name == SystemName::BisoHalf, ga, gb, &opts);
        return match built {
            Err(e) => SystemCell { system: name, status: skipped(e), vars: None },
            Ok(sys) => {
                let status = match bool_solve(&sys) {
                    Ok(r) if r.feasible() => SystemStatus::Feasible,
                    Ok(_) => SystemStatus::Infeasible,
                    Err(e) => SystemStatus::Error(e.to_string()),
                };
                SystemCell { system: name, status, vars: Some(sys.num_vars()) }
            }
        };
    }
    let built = match name {
        SystemName::Iso => build_iso(ga, gb, &opts),
        SystemName::Sa => build_sa(k, ga, gb, &opts),
        _ => build_sa_half(k, ga, gb, &opts),
    };
    let sys = match built {
        Ok(s) => presolve_zero(&s, Strength::Propagate).system,
        Err(e) => return SystemCell { system: name, status: skipped(e), vars: None },
    };
    let vars = Some(sys.num_vars());
    if sys.num_vars() > cfg.lp_limit {
        let why = format!("{} variables after presolve exceed the limit {}", sys.num_vars(), cfg.lp_limit);
        return SystemCell { system: name, status: SystemStatus::Skipped(why), vars };
    }
    let status = if lp_feasible(&sys).feasible() { SystemStatus::Feasible } else { SystemStatus::Infeasible };
    SystemCell { system: name, status, vars }
}

/// Runs the four engines and four systems at `k` (plus colour refinement and
/// ISO at `k = 2`) and compares them pairwise.
pub fn hierarchy(pair: &str, k: usize, ga: &Graph, gb: &Graph, cfg: &HierarchyConfig) -> Result<HierarchyReport, SystemError> {
    if k < 2 {
        return Err(SystemError::InvalidK(k));
    }
    let mut cells = vec![
        Cell::Engine(Engine::Wl),
        Cell::Engine(Engine::WeakWl),
        Cell::Engine(Engine::Lk),
        Cell::Engine(Engine::WeakLk),
    ];
    if k == 2 {
        cells.push(Cell::Engine(Engine::ColourRefinement));
    }
    let mut names = vec![SystemName::Sa, SystemName::SaHalf, SystemName::Biso, SystemName::BisoHalf];
    if k == 2 {
        names.push(SystemName::Iso);
    }
    cells.extend(names.iter().map(|&s| Cell::System(s)));
    let outcomes: Vec<Outcome> = cells
        .par_iter()
        .map(|c| match *c {
            Cell::Engine(e) => {
                let status = match e.run(k, ga, gb, &cfg.engine) {
                    Ok(v) if v.equivalent => EngineStatus::Equivalent,
                    Ok(_) => EngineStatus::Distinguished,
                    Err(err) => EngineStatus::Error(err.to_string()),
                };
                Outcome::Engine(EngineCell { engine: e, status })
            }
            Cell::System(s) => Outcome::System(solve(s, k, ga, gb, cfg)),
        })
        .collect();
    let mut engines = Vec::new();
    let mut systems = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Engine(e) => engines.push(e),
            Outcome::System(s) => systems.push(s),
        }
    }
    let flags = systems
        .iter()
        .map(|s| {
            let partner = s.system.partner();
            let e = &engines.iter().find(|c| c.engine == partner).expect("partner engine runs").status;
            let consistent = match (e.decided(), s.status.decided()) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            };
            Flag {
                pair: pair.to_string(),
                k,
                engine: partner.name(),
                verdict: engine_label(e),
                system: s.system.label(),
                status: system_label(&s.status),
                consistent,
            }
        })
        .collect();
    Ok(HierarchyReport { pair: pair.to_string(), k, engines, systems, flags })
}

impl fmt::Display for HierarchyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pair {}  k={}", self.pair, self.k)?;
        let mut out = String::new();
        let _ = writeln!(out, "{:<8} {:<14} {:<12} {:<10} status", "engine", "verdict", "system", "vars");
        for flag in &self.flags {
            let cell = self.systems.iter().find(|s| s.system.label() == flag.system).expect("flag has a cell");
            let vars = cell.vars.map_or("-".to_string(), |v| v.to_string());
            let mark = match flag.consistent {
                Some(true) => "ok",
                Some(false) => "INCONSISTENT",
                None => "undecided",
            };
            let _ = writeln!(out, "{:<8} {:<14} {:<12} {:<10} {}  [{mark}]", flag.engine, flag.verdict, flag.system, vars, flag.status);
        }
        f.write_str(&out)
    }
}
