use super::{BoolEquation, BooleanSystem, Equation, LinearSystem, PartialMap, SystemError, SystemKind, Tag, VarIndex};
use crate::graph::Graph;
use std::collections::{BTreeMap, HashSet};

pub const DEFAULT_MAX_VARS: usize = 250_000;

/// Which variables a builder indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scope {
    /// Every set of at most the top size.
    #[default]
    Full,
    /// Only sets none of whose subsets is forced to zero by the structural
    /// rules; the omitted variables vanish in every solution.
    Structural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub scope: Scope,
    pub max_vars: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { scope: Scope::Full, max_vars: DEFAULT_MAX_VARS }
    }
}

impl BuildOptions {
    pub fn structural() -> Self {
        BuildOptions { scope: Scope::Structural, ..Self::default() }
    }
}

fn binomial_sum(n: usize, top: usize) -> usize {
    let mut total: usize = 0;
    let mut c: u128 = 1;
    for j in 0..=top.min(n) {
        total = total.saturating_add(c.min(usize::MAX as u128) as usize);
        c = c * (n - j) as u128 / (j + 1) as u128;
    }
    total
}

fn variables(kind: SystemKind, ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<VarIndex, SystemError> {
    let (top, _) = kind.levels().expect("builder kinds have levels");
    let (m, n) = (ga.n(), gb.n());
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    if opts.scope == Scope::Full {
        let needed = binomial_sum(pairs.len(), top);
        if needed > opts.max_vars {
            return Err(SystemError::TooLarge { needed, limit: opts.max_vars });
        }
    }
    let structural = opts.scope == Scope::Structural;
    let mut out = vec![PartialMap::empty()];
    let mut layer = vec![PartialMap::empty()];
    for _ in 0..top {
        // in structural scope a map is kept only if all its submaps are
        let kept: HashSet<&PartialMap> = if structural { layer.iter().collect() } else { HashSet::new() };
        let mut next = Vec::new();
        for p in &layer {
            let start = p.last().map_or(0, |(a, b)| a * n + b + 1);
            for &(a, b) in &pairs[start..] {
                let q = p.with(a, b);
                if structural
                    && (kind.forced_zero(&q, ga, gb)
                        || q.pairs().iter().any(|&(x, y)| (x, y) != (a, b) && !kept.contains(&q.without(x, y))))
                {
                    continue;
                }
                if out.len() + next.len() >= opts.max_vars {
                    return Err(SystemError::TooLarge { needed: out.len() + next.len() + 1, limit: opts.max_vars });
                }
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    if kind == SystemKind::Iso {
        out.retain(|p| !p.is_empty());
    }
    Ok(VarIndex::new(out))
}

/// Collects equations in difference form and emits them deduplicated and sorted.
struct Linear {
    seen: HashSet<Equation>,
}

impl Linear {
    fn push(&mut self, tag: Tag, terms: impl IntoIterator<Item = (Option<usize>, i64)>, constant: i64) {
        let mut diff = BTreeMap::new();
        for (v, c) in terms {
            if let Some(v) = v {
                *diff.entry(v).or_insert(0) += c;
            }
        }
        if let Some(eq) = Equation::from_difference(tag, diff, constant) {
            self.seen.insert(eq);
        }
    }

    fn finish(self) -> Vec<Equation> {
        let mut eqs: Vec<Equation> = self.seen.into_iter().collect();
        eqs.sort_by(|x, y| (x.tag, &x.lhs, &x.rhs, x.constant).cmp(&(y.tag, &y.lhs, &y.rhs, y.constant)));
        eqs
    }
}

struct Boolean {
    seen: HashSet<BoolEquation>,
}

impl Boolean {
    fn push(&mut self, tag: Tag, lhs: impl IntoIterator<Item = Option<usize>>, rhs: impl IntoIterator<Item = Option<usize>>, constant: bool) {
        let lhs = lhs.into_iter().flatten().collect();
        let rhs = rhs.into_iter().flatten().collect();
        if let Some(eq) = BoolEquation::new(tag, lhs, rhs, constant) {
            self.seen.insert(eq);
        }
    }

    fn finish(self) -> Vec<BoolEquation> {
        let mut eqs: Vec<BoolEquation> = self.seen.into_iter().collect();
        eqs.sort_by(|x, y| (x.tag, &x.lhs, &x.rhs, x.constant).cmp(&(y.tag, &y.lhs, &y.rhs, y.constant)));
        eqs
    }
}

fn check_k(k: usize) -> Result<(), SystemError> {
    if k < 2 {
        Err(SystemError::InvalidK(k))
    } else {
        Ok(())
    }
}

fn coloured(ga: &Graph, gb: &Graph) -> bool {
    ga.has_colours() || gb.has_colours()
}

/// `X` doubly stochastic with `AX = XB`, over variables `X_ab`.
pub fn build_iso(ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<LinearSystem, SystemError> {
    let kind = SystemKind::Iso;
    let vars = variables(kind, ga, gb, opts)?;
    let (m, n) = (ga.n(), gb.n());
    let x = |a: usize, b: usize| vars.id(&PartialMap::new(vec![(a, b)]));
    let mut eqs = Linear { seen: HashSet::new() };
    for a in 0..m {
        eqs.push(Tag::Cont(1), (0..n).map(|b| (x(a, b), 1)), 1);
    }
    for b in 0..n {
        eqs.push(Tag::Cont(1), (0..m).map(|a| (x(a, b), 1)), 1);
    }
    for a in 0..m {
        for b in 0..n {
            let lhs = ga.neighbours(a).iter().map(|&a2| (x(a2, b), 1));
            let rhs = gb.neighbours(b).iter().map(|&b2| (x(a, b2), -1));
            eqs.push(Tag::Comp(1), lhs.chain(rhs), 0);
            if coloured(ga, gb) && ga.colour(a) != gb.colour(b) {
                eqs.push(Tag::Colour, [(x(a, b), 1)], 0);
            }
        }
    }
    Ok(LinearSystem { kind, vars, equations: eqs.finish(), graphs: Some((ga.clone(), gb.clone())) })
}

fn build_linear(kind: SystemKind, ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<LinearSystem, SystemError> {
    let (top, k) = kind.levels().expect("builder kinds have levels");
    let vars = variables(kind, ga, gb, opts)?;
    let (m, n) = (ga.n(), gb.n());
    let mut eqs = Linear { seen: HashSet::new() };
    eqs.push(Tag::Norm, [(vars.id(&PartialMap::empty()), 1)], 1);
    for p in vars.keys() {
        let pid = vars.id(p);
        let ext = |a: usize, b: usize| vars.id(&p.with(a, b));
        let l = p.len() + 1;
        if l <= top {
            for a in 0..m {
                eqs.push(Tag::Cont(l), std::iter::once((pid, 1)).chain((0..n).map(|b| (ext(a, b), -1))), 0);
            }
            for b in 0..n {
                eqs.push(Tag::Cont(l), std::iter::once((pid, 1)).chain((0..m).map(|a| (ext(a, b), -1))), 0);
            }
        }
        if l < k {
            for a in 0..m {
                for b in 0..n {
                    let lhs = ga.neighbours(a).iter().map(|&a2| (ext(a2, b), 1));
                    let rhs = gb.neighbours(b).iter().map(|&b2| (ext(a, b2), -1));
                    eqs.push(Tag::Comp(l), lhs.chain(rhs), 0);
                }
            }
        }
        if p.len() == 1 && coloured(ga, gb) {
            let (a, b) = p.pairs()[0];
            if ga.colour(a) != gb.colour(b) {
                eqs.push(Tag::Colour, [(pid, 1)], 0);
            }
        }
    }
    Ok(LinearSystem { kind, vars, equations: eqs.finish(), graphs: Some((ga.clone(), gb.clone())) })
}

/// The level-`(k-1)` system: CONT and COMP below level `k`.
pub fn build_sa(k: usize, ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<LinearSystem, SystemError> {
    check_k(k)?;
    build_linear(SystemKind::Sa { k }, ga, gb, opts)
}

/// The level-`(k-1/2)` system: CONT up to level `k`, COMP below level `k`.
pub fn build_sa_half(k: usize, ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<LinearSystem, SystemError> {
    check_k(k)?;
    build_linear(SystemKind::SaHalf { k }, ga, gb, opts)
}

/// Boolean system with CONT, COMP, COMP over complements and MATCH2.
pub fn build_biso(k: usize, half: bool, ga: &Graph, gb: &Graph, opts: &BuildOptions) -> Result<BooleanSystem, SystemError> {
    check_k(k)?;
    let kind = SystemKind::Biso { k, half };
    let (top, _) = kind.levels().expect("builder kinds have levels");
    let vars = variables(kind, ga, gb, opts)?;
    let (m, n) = (ga.n(), gb.n());
    let (ca, cb) = (ga.complement(), gb.complement());
    let mut eqs = Boolean { seen: HashSet::new() };
    eqs.push(Tag::Norm, [vars.id(&PartialMap::empty())], [], true);
    for p in vars.keys() {
        let pid = vars.id(p);
        let ext = |a: usize, b: usize| vars.id(&p.with(a, b));
        let l = p.len() + 1;
        if l <= top {
            for a in 0..m {
                eqs.push(Tag::Cont(l), [pid], (0..n).map(|b| ext(a, b)), false);
            }
            for b in 0..n {
                eqs.push(Tag::Cont(l), [pid], (0..m).map(|a| ext(a, b)), false);
            }
        }
        if l < k {
            for a in 0..m {
                for b in 0..n {
                    for (tag, ga, gb) in [(Tag::Comp(l), ga, gb), (Tag::CompC(l), &ca, &cb)] {
                        let lhs = ga.neighbours(a).iter().map(|&a2| ext(a2, b));
                        let rhs = gb.neighbours(b).iter().map(|&b2| ext(a, b2));
                        eqs.push(tag, lhs, rhs, false);
                    }
                }
            }
        }
        match p.pairs() {
            [(a, b)] if coloured(ga, gb) && ga.colour(*a) != gb.colour(*b) => eqs.push(Tag::Colour, [pid], [], false),
            [(a, b), (c, d)] if (a == c) != (b == d) => eqs.push(Tag::Match2, [pid], [], false),
            _ => {}
        }
    }
    Ok(BooleanSystem { kind, vars, equations: eqs.finish(), graphs: Some((ga.clone(), gb.clone())) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_counts() {
        let k3 = Graph::complete(3);
        let iso = build_iso(&k3, &k3, &BuildOptions::default()).unwrap();
        assert_eq!(iso.num_vars(), 9);
        assert_eq!(iso.count(Tag::Cont(1)), 6);
        assert_eq!(iso.count(Tag::Comp(1)), 9);
        assert_eq!(iso.equations.len(), 15);
        let sa = build_sa(3, &k3, &Graph::path(3), &BuildOptions::default()).unwrap();
        assert_eq!(sa.num_vars(), 46);
        let g2 = Graph::path(2);
        assert_eq!(build_sa_half(2, &g2, &g2, &BuildOptions::default()).unwrap().num_vars(), 11);
        let g4 = Graph::cycle(4);
        assert_eq!(build_sa_half(3, &g4, &g4, &BuildOptions::default()).unwrap().num_vars(), 697);
    }

    #[test]
    fn size_limit() {
        let g = Graph::cycle(5);
        let tiny = BuildOptions { scope: Scope::Full, max_vars: 100 };
        assert!(matches!(build_sa_half(3, &g, &g, &tiny), Err(SystemError::TooLarge { .. })));
        assert!(matches!(build_sa(1, &g, &g, &tiny), Err(SystemError::InvalidK(1))));
    }

    #[test]
    fn match2_count() {
        let g = Graph::path(3);
        let s = build_biso(3, false, &g, &g, &BuildOptions::default()).unwrap();
        // a = a' with b ≠ b' and b = b' with a ≠ a', as sets
        assert_eq!(s.count(Tag::Match2), 18);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_sum(9, 2), 46);
        assert_eq!(binomial_sum(16, 3), 697);
        assert_eq!(binomial_sum(3, 7), 8);
    }
}
