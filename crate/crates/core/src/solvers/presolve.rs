use crate::systems::{Equation, LinearSystem, PartialMap, VarIndex};
use std::collections::{BTreeMap, BTreeSet, HashSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strength {
    /// Only the structural rules of the system's level.
    Structural,
    /// Structural rules, then zero propagation through equations whose
    /// terms all share one sign and whose constant is zero.
    #[default]
    Propagate,
}

#[derive(Debug, Clone)]
pub struct Presolved {
    pub system: LinearSystem,
    pub zeros: BTreeSet<PartialMap>,
}

/// Removes variables that vanish in every solution and substitutes them;
/// feasibility is unchanged.
pub fn presolve_zero(sys: &LinearSystem, strength: Strength) -> Presolved {
    let mut zero = vec![false; sys.num_vars()];
    if let Some((ga, gb)) = &sys.graphs {
        for (id, p) in sys.vars.keys().iter().enumerate() {
            // keys come in size order, so every p \ x is decided already;
            // a submap absent from the system vanishes
            let inherited = p.pairs().iter().any(|&(a, b)| {
                let q = p.without(a, b);
                !q.is_empty() && sys.vars.id(&q).is_none_or(|q| zero[q])
            });
            zero[id] = inherited || sys.kind.forced_zero(p, ga, gb);
        }
    }
    if strength == Strength::Propagate {
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); sys.num_vars()];
        for (i, eq) in sys.equations.iter().enumerate() {
            for &(v, _) in eq.lhs.iter().chain(&eq.rhs) {
                occurs[v].push(i);
            }
        }
        let mut queue: Vec<usize> = (0..sys.equations.len()).collect();
        let mut queued = vec![true; sys.equations.len()];
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let eq = &sys.equations[i];
            let live = |t: &[(usize, i64)]| t.iter().filter(|&&(v, _)| !zero[v]).count();
            if eq.constant != 0 || (live(&eq.lhs) > 0 && live(&eq.rhs) > 0) {
                continue;
            }
            for &(v, _) in eq.lhs.iter().chain(&eq.rhs) {
                if !zero[v] {
                    zero[v] = true;
                    for &j in &occurs[v] {
                        if !queued[j] {
                            queued[j] = true;
                            queue.push(j);
                        }
                    }
                }
            }
        }
    }
    let zeros: BTreeSet<PartialMap> = sys.vars.keys().iter().zip(&zero).filter(|(_, &z)| z).map(|(p, _)| p.clone()).collect();
    let vars = VarIndex::new(sys.vars.keys().iter().zip(&zero).filter(|(_, &z)| !z).map(|(p, _)| p.clone()).collect());
    let remap: Vec<Option<usize>> = sys.vars.keys().iter().map(|p| vars.id(p)).collect();
    let mut seen = HashSet::new();
    let mut equations = Vec::new();
    for eq in &sys.equations {
        let mut diff = BTreeMap::new();
        for (v, c) in eq.difference() {
            if let Some(nv) = remap[v] {
                diff.insert(nv, c);
            }
        }
        if let Some(e) = Equation::from_difference(eq.tag, diff, eq.constant) {
            if seen.insert(e.clone()) {
                equations.push(e);
            }
        }
    }
    Presolved {
        system: LinearSystem { kind: sys.kind, vars, equations, graphs: sys.graphs.clone() },
        zeros,
    }
}
