//! Sherali-Adams style isomorphism systems indexed by partial maps.
//!
//! Variables `X_p` are indexed by sets `p` of vertex pairs. Linear systems
//! carry integer coefficients and are read as `Σ lhs = Σ rhs + constant`;
//! boolean systems are read as `⋁ lhs = ⋁ rhs ∨ constant`.

mod build;
mod canonical;
mod good;
mod text;

pub use build::{build_biso, build_iso, build_sa, build_sa_half, BuildOptions, Scope, DEFAULT_MAX_VARS};
pub use canonical::{canonical_solution, game_solution, Mode};
pub use good::{goodify_solution, is_good_solution};
pub use text::{parse_boolean_system, parse_linear_system};

use crate::graph::Graph;
use crate::matrix::{Rational, Semiring};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("system needs {needed} variables, limit is {limit}")]
    TooLarge { needed: usize, limit: usize },
    #[error("the graphs are not {0}-equivalent")]
    NotEquivalent(String),
    #[error("engine failed: {0}")]
    Engine(#[from] crate::equiv::EngineError),
    #[error("assignment does not satisfy the system ({0} violations)")]
    Infeasible(usize),
    #[error("graphs must have the same size, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("transformed assignment violates {0} equations")]
    NotWellDefined(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("equation {0} is not of the form ⋁ = ⋁, ⋁ = 0 or ⋁ = 1")]
    Shape(usize),
}

/// A set of pairs `(a, b)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialMap(Vec<(usize, usize)>);

impl PartialMap {
    pub fn empty() -> Self {
        PartialMap(Vec::new())
    }

    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        PartialMap(pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0.binary_search(&(a, b)).is_ok()
    }

    /// `p ^ ab`; equal to `p` when the pair is already present.
    pub fn with(&self, a: usize, b: usize) -> Self {
        let mut v = self.0.clone();
        if let Err(i) = v.binary_search(&(a, b)) {
            v.insert(i, (a, b));
        }
        PartialMap(v)
    }

    pub fn without(&self, a: usize, b: usize) -> Self {
        PartialMap(self.0.iter().copied().filter(|&x| x != (a, b)).collect())
    }

    pub fn last(&self) -> Option<(usize, usize)> {
        self.0.last().copied()
    }

    /// Source and target tuples in pair order.
    pub fn tuples(&self) -> (Vec<usize>, Vec<usize>) {
        self.0.iter().copied().unzip()
    }

    pub fn is_local_bijection(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &(a, b))| self.0[i + 1..].iter().all(|&(c, d)| (a == c) == (b == d)))
    }

    /// Local isomorphism between coloured graphs (uncoloured vertices have colour 0).
    pub fn is_local_isomorphism(&self, ga: &Graph, gb: &Graph) -> bool {
        self.0.iter().enumerate().all(|(i, &(a, b))| {
            a < ga.n()
                && b < gb.n()
                && ga.colour(a) == gb.colour(b)
                && self.0[i + 1..].iter().all(|&(c, d)| (a == c) == (b == d) && ga.adjacent(a, c) == gb.adjacent(b, d))
        })
    }

    /// Text key: `a:b;a:b` with 1-based vertices, `-` for the empty map.
    pub fn key(&self) -> String {
        if self.0.is_empty() {
            return "-".into();
        }
        self.0.iter().map(|(a, b)| format!("{}:{}", a + 1, b + 1)).collect::<Vec<_>>().join(";")
    }

    pub fn parse_key(s: &str) -> Option<Self> {
        if s == "-" {
            return Some(Self::empty());
        }
        let mut pairs = Vec::new();
        for part in s.split(';') {
            let (a, b) = part.split_once(':')?;
            let (a, b): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
            if a == 0 || b == 0 {
                return None;
            }
            pairs.push((a - 1, b - 1));
        }
        let p = Self::new(pairs);
        Some(p)
    }
}

impl Ord for PartialMap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PartialMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Equation family of an equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Tag {
    Norm,
    Colour,
    Cont(usize),
    Comp(usize),
    CompC(usize),
    Match2,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Norm => write!(f, "NORM"),
            Tag::Colour => write!(f, "COLOUR"),
            Tag::Cont(l) => write!(f, "CONT{l}"),
            Tag::Comp(l) => write!(f, "COMP{l}"),
            Tag::CompC(l) => write!(f, "COMPc{l}"),
            Tag::Match2 => write!(f, "MATCH2"),
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let level = |rest: &str| rest.parse::<usize>().map_err(|_| format!("bad tag `{s}`"));
        match s {
            "NORM" => Ok(Tag::Norm),
            "COLOUR" => Ok(Tag::Colour),
            "MATCH2" => Ok(Tag::Match2),
            _ if s.starts_with("COMPc") => level(&s[5..]).map(Tag::CompC),
            _ if s.starts_with("COMP") => level(&s[4..]).map(Tag::Comp),
            _ if s.starts_with("CONT") => level(&s[4..]).map(Tag::Cont),
            _ => Err(format!("bad tag `{s}`")),
        }
    }
}

/// Which system a builder produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SystemKind {
    Iso,
    Sa { k: usize },
    SaHalf { k: usize },
    Biso { k: usize, half: bool },
    /// Read from a file; level information is unknown.
    Parsed,
}

impl SystemKind {
    /// Largest variable size and the `k` whose local-isomorphism rules apply.
    pub fn levels(self) -> Option<(usize, usize)> {
        match self {
            SystemKind::Iso => Some((1, 2)),
            SystemKind::Sa { k } => Some((k - 1, k)),
            SystemKind::SaHalf { k } => Some((k, k)),
            SystemKind::Biso { k, half } => Some((if half { k } else { k - 1 }, k)),
            SystemKind::Parsed => None,
        }
    }

    /// Whether every solution vanishes on `p`: non-local-bijections always,
    /// non-local-isomorphisms below size `k`, and at size `k` from `k = 3` on.
    pub fn forced_zero(self, p: &PartialMap, ga: &Graph, gb: &Graph) -> bool {
        let Some((_, k)) = self.levels() else { return false };
        if !p.is_local_bijection() {
            return true;
        }
        (p.len() < k || k >= 3) && !p.is_local_isomorphism(ga, gb)
    }
}

/// `Σ lhs = Σ rhs + constant` with positive integer coefficients on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub tag: Tag,
    pub lhs: Vec<(usize, i64)>,
    pub rhs: Vec<(usize, i64)>,
    pub constant: i64,
}

impl Equation {
    /// Cancels common terms and orients the result; `None` if it reads `0 = 0`.
    pub fn from_difference(tag: Tag, diff: BTreeMap<usize, i64>, constant: i64) -> Option<Self> {
        let mut terms: Vec<(usize, i64)> = diff.into_iter().filter(|&(_, c)| c != 0).collect();
        let mut constant = constant;
        if terms.is_empty() && constant == 0 {
            return None;
        }
        let flip = constant < 0 || (constant == 0 && terms[0].1 < 0);
        if flip {
            constant = -constant;
            for t in &mut terms {
                t.1 = -t.1;
            }
        }
        let lhs = terms.iter().filter(|t| t.1 > 0).copied().collect();
        let rhs = terms.iter().filter(|t| t.1 < 0).map(|&(v, c)| (v, -c)).collect();
        Some(Equation { tag, lhs, rhs, constant })
    }

    pub fn difference(&self) -> BTreeMap<usize, i64> {
        let mut d = BTreeMap::new();
        for &(v, c) in &self.lhs {
            *d.entry(v).or_insert(0) += c;
        }
        for &(v, c) in &self.rhs {
            *d.entry(v).or_insert(0) -= c;
        }
        d.retain(|_, c| *c != 0);
        d
    }

    /// Values of both sides, the constant included on the right.
    pub fn evaluate(&self, value: impl Fn(usize) -> Rational) -> (Rational, Rational) {
        let side = |terms: &[(usize, i64)]| terms.iter().map(|&(v, c)| value(v) * Rational::from_int(c)).sum::<Rational>();
        (side(&self.lhs), side(&self.rhs) + Rational::from_int(self.constant))
    }
}

/// `⋁ lhs = ⋁ rhs ∨ constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolEquation {
    pub tag: Tag,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub constant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolShape {
    /// `⋁ I = ⋁ J`
    Equal,
    /// `⋁ I = 0`
    Zero,
    /// `⋁ I = 1`
    One,
}

impl BoolEquation {
    /// Normalises sides so an empty side is on the right; `None` for `0 = 0`.
    pub fn new(tag: Tag, mut lhs: Vec<usize>, mut rhs: Vec<usize>, constant: bool) -> Option<Self> {
        lhs.sort_unstable();
        lhs.dedup();
        rhs.sort_unstable();
        rhs.dedup();
        if lhs.is_empty() && !constant {
            std::mem::swap(&mut lhs, &mut rhs);
        }
        if lhs.is_empty() && rhs.is_empty() && !constant {
            return None;
        }
        if lhs == rhs && !constant {
            return None;
        }
        Some(BoolEquation { tag, lhs, rhs, constant })
    }

    pub fn shape(&self) -> Option<BoolShape> {
        match (self.rhs.is_empty(), self.constant) {
            (false, false) => Some(BoolShape::Equal),
            (true, false) => Some(BoolShape::Zero),
            (true, true) => Some(BoolShape::One),
            (false, true) => None,
        }
    }

    pub fn holds(&self, value: impl Fn(usize) -> bool) -> bool {
        let l = self.lhs.iter().any(|&v| value(v));
        let r = self.rhs.iter().any(|&v| value(v)) || self.constant;
        l == r
    }
}

/// Variable index shared by both kinds of systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarIndex {
    vars: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
}

impl VarIndex {
    /// Sorts and deduplicates the keys; ids follow key order.
    pub fn new(mut vars: Vec<PartialMap>) -> Self {
        vars.sort();
        vars.dedup();
        let index = vars.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        VarIndex { vars, index }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn key(&self, id: usize) -> &PartialMap {
        &self.vars[id]
    }

    pub fn id(&self, p: &PartialMap) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn keys(&self) -> &[PartialMap] {
        &self.vars
    }
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub kind: SystemKind,
    pub vars: VarIndex,
    pub equations: Vec<Equation>,
    /// The two graphs, when the system was built from them.
    pub graphs: Option<(Graph, Graph)>,
}

#[derive(Debug, Clone)]
pub struct BooleanSystem {
    pub kind: SystemKind,
    pub vars: VarIndex,
    pub equations: Vec<BoolEquation>,
    pub graphs: Option<(Graph, Graph)>,
}

impl LinearSystem {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn count(&self, tag: Tag) -> usize {
        self.equations.iter().filter(|e| e.tag == tag).count()
    }
}

impl BooleanSystem {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn count(&self, tag: Tag) -> usize {
        self.equations.iter().filter(|e| e.tag == tag).count()
    }
}

/// Values on partial maps; unlisted maps are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment<V> {
    values: BTreeMap<PartialMap, V>,
}

impl<V: Semiring + Clone> Assignment<V> {
    pub fn new() -> Self {
        Assignment { values: BTreeMap::new() }
    }

    pub fn get(&self, p: &PartialMap) -> V {
        self.values.get(p).cloned().unwrap_or_else(V::zero)
    }

    pub fn set(&mut self, p: PartialMap, v: V) {
        if v.is_zero() {
            self.values.remove(&p);
        } else {
            self.values.insert(p, v);
        }
    }

    /// Nonzero entries in key order.
    pub fn support(&self) -> impl Iterator<Item = (&PartialMap, &V)> {
        self.values.iter()
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    /// Drops entries on maps larger than `size`.
    pub fn restrict(&self, size: usize) -> Self {
        Assignment { values: self.values.iter().filter(|(p, _)| p.len() <= size).map(|(p, v)| (p.clone(), v.clone())).collect() }
    }
}

impl<V: Semiring + Clone> FromIterator<(PartialMap, V)> for Assignment<V> {
    fn from_iter<I: IntoIterator<Item = (PartialMap, V)>>(iter: I) -> Self {
        let mut a = Assignment::new();
        for (p, v) in iter {
            a.set(p, v);
        }
        a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub equation: usize,
    pub tag: Tag,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of checking an assignment against a system.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Residual {
    pub violations: Vec<Violation>,
    /// Maps with a negative value.
    pub negative: Vec<PartialMap>,
    /// Maps with a nonzero value that the system does not index.
    pub unknown: Vec<PartialMap>,
}

impl Residual {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty() && self.negative.is_empty() && self.unknown.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len() + self.negative.len() + self.unknown.len()
    }
}

pub fn verify_solution(sys: &LinearSystem, x: &Assignment<Rational>) -> Residual {
    let mut res = Residual::default();
    let mut values = vec![Rational::zero(); sys.num_vars()];
    for (p, v) in x.support() {
        match sys.vars.id(p) {
            Some(id) => values[id] = v.clone(),
            None => res.unknown.push(p.clone()),
        }
        if v.is_negative() {
            res.negative.push(p.clone());
        }
    }
    for (i, eq) in sys.equations.iter().enumerate() {
        let (lhs, rhs) = eq.evaluate(|v| values[v].clone());
        if lhs != rhs {
            res.violations.push(Violation { equation: i, tag: eq.tag, lhs, rhs });
        }
    }
    res
}

pub fn verify_boolean(sys: &BooleanSystem, x: &Assignment<bool>) -> Residual {
    let mut res = Residual::default();
    let mut values = vec![false; sys.num_vars()];
    for (p, _) in x.support() {
        match sys.vars.id(p) {
            Some(id) => values[id] = true,
            None => res.unknown.push(p.clone()),
        }
    }
    for (i, eq) in sys.equations.iter().enumerate() {
        if !eq.holds(|v| values[v]) {
            let l = eq.lhs.iter().any(|&v| values[v]);
            let r = eq.rhs.iter().any(|&v| values[v]) || eq.constant;
            res.violations.push(Violation {
                equation: i,
                tag: eq.tag,
                lhs: Rational::from_int(l as i64),
                rhs: Rational::from_int(r as i64),
            });
        }
    }
    res
}
