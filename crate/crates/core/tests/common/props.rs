//! Random instances and checks for the matrix structure properties and the
//! boolean solver, shared by the property tests and the acceptance target.

use super::random_perm;
use pebblelab::matrix::*;
use pebblelab::solvers::bool_solve;
use pebblelab::systems::{BoolEquation, BooleanSystem, PartialMap, SystemKind, Tag, VarIndex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<S: Semiring>(b: bool) -> S {
    if b {
        S::one()
    } else {
        S::zero()
    }
}

/// A random entry: zero with probability `p0`, otherwise a small positive value.
pub trait Entry: Semiring {
    fn positive(r: &mut ChaCha8Rng) -> Self;
}

impl Entry for Rational {
    fn positive(r: &mut ChaCha8Rng) -> Self {
        Rational::new(r.gen_range(1..5), r.gen_range(1..4))
    }
}

impl Entry for bool {
    fn positive(_: &mut ChaCha8Rng) -> Self {
        true
    }
}

pub fn random_symmetric<S: Entry>(r: &mut ChaCha8Rng, n: usize, p0: f64) -> Matrix<S> {
    let mut z = Matrix::<S>::zeros(n, n);
    for i in 0..n {
        let d = S::positive(r);
        z.set(i, i, d);
        for j in i + 1..n {
            if !r.gen_bool(p0) {
                let v = S::positive(r);
                z.set(i, j, v.clone());
                z.set(j, i, v);
            }
        }
    }
    z
}

pub fn random_no_null_lines<S: Entry>(r: &mut ChaCha8Rng, m: usize, n: usize, p0: f64) -> Matrix<S> {
    loop {
        let x = Matrix::<S>::from_fn(m, n, |_, _| if r.gen_bool(p0) { S::zero() } else { S::positive(r) });
        let rows = (0..m).all(|i| x.row(i).iter().any(|v| !v.is_zero()));
        let cols = (0..n).all(|j| (0..m).any(|i| !x.get(i, j).is_zero()));
        if rows && cols {
            return x;
        }
    }
}

fn random_sizes(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = r.gen_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Doubly stochastic matrix: within each block of a random partition a
/// convex combination of a few permutation matrices, then rows and columns
/// shuffled independently.
pub fn random_doubly_stochastic(r: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut x = RatMatrix::zeros(n, n);
    let mut start = 0;
    for s in random_sizes(r, n) {
        let terms = r.gen_range(1..=3);
        let weights: Vec<i64> = (0..terms).map(|_| r.gen_range(1..4)).collect();
        let total: i64 = weights.iter().sum();
        for w in weights {
            let p = random_perm(r, s);
            for (i, &j) in p.iter().enumerate() {
                let v = x.get(start + i, start + j) + &Rational::new(w, total);
                x.set(start + i, start + j, v);
            }
        }
        start += s;
    }
    let (pr, pc) = (random_perm(r, n), random_perm(r, n));
    RatMatrix::from_fn(n, n, |i, j| x.get(pr[i], pc[j]).clone())
}

/// Components of the bipartite support graph of `x`, by union-find.
fn bipartite_components<S: Semiring>(x: &Matrix<S>) -> (Vec<usize>, Vec<usize>) {
    let (m, n) = (x.rows(), x.cols());
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut v = v;
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for i in 0..m {
        for j in 0..n {
            if !x.get(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..m + n).map(|v| find(&mut parent, v)).collect();
    (roots[..m].to_vec(), roots[m..].to_vec())
}

/// Induced partitions of `z` and of its good power agree, and the power is good.
pub fn check_good_power<S: Semiring>(z: &Matrix<S>) -> Check {
    let p = induced_partition(z).map_err(|e| e.to_string())?;
    let zl = good_power(z).map_err(|e| e.to_string())?;
    let q = induced_partition(&zl).map_err(|e| e.to_string())?;
    ensure(p.same_blocks(&q), || format!("partitions differ: {:?} vs {:?}", p.blocks(), q.blocks()))?;
    ensure(is_good_symmetric(&zl).unwrap(), || "power is not good".into())?;
    // any larger exponent gives the same support
    let more = zl.mul(z).map_err(|e| e.to_string())?;
    ensure(more.support() == zl.support(), || "support changes beyond the good exponent".into())
}

/// Both recovery identities, vanishing cross blocks, and agreement with the
/// components of the bipartite support graph.
pub fn check_x_related<S: Semiring>(x: &Matrix<S>) -> Check {
    let xr = x_related_partitions(x).map_err(|e| e.to_string())?;
    let k = xr.rows.num_blocks();
    ensure(xr.cols.num_blocks() == k, || "block counts differ".into())?;
    for i in 0..k {
        let di = xr.rows.block(i);
        let dpi = xr.cols.block(i);
        let reach_c: Vec<usize> = (0..x.cols()).filter(|&c| di.iter().any(|&d| !x.get(d, c).is_zero())).collect();
        ensure(reach_c == dpi, || format!("D'_{i} not recovered from D_{i}"))?;
        let reach_r: Vec<usize> = (0..x.rows()).filter(|&d| dpi.iter().any(|&c| !x.get(d, c).is_zero())).collect();
        ensure(reach_r == di, || format!("D_{i} not recovered from D'_{i}"))?;
        for j in 0..k {
            if i != j {
                let zero = di.iter().all(|&d| xr.cols.block(j).iter().all(|&c| x.get(d, c).is_zero()));
                ensure(zero, || format!("cross block ({i},{j}) is not null"))?;
            }
        }
    }
    let (rr, cc) = bipartite_components(x);
    for i in 0..k {
        let root = rr[xr.rows.block(i)[0]];
        ensure(xr.rows.block(i).iter().all(|&d| rr[d] == root), || "row block splits a component".into())?;
        ensure(xr.cols.block(i).iter().all(|&c| cc[c] == root), || "column block leaves its component".into())?;
    }
    let distinct: std::collections::BTreeSet<usize> = rr.iter().copied().collect();
    ensure(distinct.len() == k, || "blocks merge components".into())
}

/// Equal block sizes and `d_i = X d'_i`, `d'_i = X^t d_i`, together with the
/// X-related recovery identities.
pub fn check_stochastic_blocks(x: &RatMatrix) -> Check {
    let rep = check_stochastic_relatedness(x).map_err(|e| e.to_string())?;
    ensure(rep.holds(), || format!("{rep:?}"))?;
    check_x_related(x)
}

/// The eigenvalue-1 space of `XX^t` has one dimension per induced block; in
/// boolean arithmetic the block indicators are the fixed vectors.
pub fn check_fixed_space(x: &RatMatrix) -> Check {
    let z = x.mul(&x.transpose()).unwrap();
    let blocks = induced_partition(&z).map_err(|e| e.to_string())?;
    let dim = fixed_space_dimension(&z).map_err(|e| e.to_string())?;
    ensure(dim == blocks.num_blocks(), || format!("dimension {dim} vs {} blocks", blocks.num_blocks()))?;
    let zb = z.support();
    let fixed = boolean_fixed_vectors(&zb).map_err(|e| e.to_string())?;
    ensure(fixed.len() == blocks.num_blocks(), || "boolean fixed vectors miscounted".into())?;
    for v in &fixed {
        let image: Vec<bool> = (0..zb.rows()).map(|i| (0..zb.cols()).any(|j| *zb.get(i, j) && v[j])).collect();
        ensure(&image == v, || "indicator is not fixed".into())?;
    }
    Ok(())
}

/// A symmetric matrix with an equitable partition, a relabelled copy, and the
/// relating doubly stochastic matrix `X = M P`, where `M` averages over blocks.
pub struct Witness<S> {
    pub a: Matrix<S>,
    pub b: Matrix<S>,
    pub x: Matrix<S>,
    pub blocks: Partition,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn random_witness<S: Entry>(r: &mut ChaCha8Rng, n: usize, average: impl Fn(usize) -> S) -> Witness<S> {
    let sizes = random_sizes(r, n);
    let mut start = vec![0];
    for s in &sizes {
        start.push(start.last().unwrap() + s);
    }
    let k = sizes.len();
    let mut a = Matrix::<S>::zeros(n, n);
    for i in 0..k {
        for j in i..k {
            let g = gcd(sizes[i], sizes[j]);
            let shift = r.gen_range(0..g);
            let chosen: Vec<bool> = (0..g).map(|_| r.gen_bool(0.4)).collect();
            for u in 0..sizes[i] {
                for v in 0..sizes[j] {
                    if chosen[(u + v + shift) % g] {
                        a.set(start[i] + u, start[j] + v, S::one());
                        a.set(start[j] + v, start[i] + u, S::one());
                    }
                }
            }
        }
    }
    let block_of: Vec<usize> = (0..n).map(|v| start.iter().rposition(|&s| s <= v).unwrap()).collect();
    let m = Matrix::<S>::from_fn(n, n, |u, v| if block_of[u] == block_of[v] { average(sizes[block_of[u]]) } else { S::zero() });
    let p = random_perm(r, n);
    let pm = Matrix::<S>::from_fn(n, n, |u, v| lift(p[u] == v));
    let b = pm.transpose().mul(&a).unwrap().mul(&pm).unwrap();
    let x = m.mul(&pm).unwrap();
    let blocks = Partition::from_labels(&block_of);
    Witness { a, b, x, blocks }
}

/// If `AX = XB` and `X^tA = BX^t`, the partitions induced by `XX^t` and
/// `X^tX` are stable for `A` and `B`.
pub fn check_commuting_stable<S: Semiring>(w: &Witness<S>, mode: Arithmetic) -> Check {
    let (a, b, x) = (&w.a, &w.b, &w.x);
    let xt = x.transpose();
    ensure(a.mul(x).unwrap() == x.mul(b).unwrap(), || "AX ≠ XB".into())?;
    ensure(xt.mul(a).unwrap() == b.mul(&xt).unwrap(), || "X^tA ≠ BX^t".into())?;
    let rows = induced_partition(&x.mul(&xt).unwrap()).map_err(|e| e.to_string())?;
    let cols = induced_partition(&xt.mul(x).unwrap()).map_err(|e| e.to_string())?;
    ensure(rows.same_blocks(&w.blocks), || "row partition differs from the construction".into())?;
    let ra = stability(a, &rows, mode).map_err(|e| e.to_string())?;
    ensure(ra.stable, || format!("partition of XX^t not stable for A: {:?}", rows.blocks()))?;
    let rb = stability(b, &cols, mode).map_err(|e| e.to_string())?;
    ensure(rb.stable, || format!("partition of X^tX not stable for B: {:?}", cols.blocks()))
}

/// A random boolean system on `nv ≤ 15` variables using only the
/// `⋁ = ⋁`, `⋁ = 0` and `⋁ = 1` shapes.
pub fn random_bool_system(r: &mut ChaCha8Rng, nv: usize) -> BooleanSystem {
    let keys: Vec<PartialMap> = (0..nv).map(|i| PartialMap::new(vec![(i, 0)])).collect();
    let vars = VarIndex::new(keys);
    let subset = |r: &mut ChaCha8Rng, lo: usize| -> Vec<usize> {
        let size = r.gen_range(lo..=3.min(nv));
        let mut s: Vec<usize> = (0..size).map(|_| r.gen_range(0..nv)).collect();
        s.sort();
        s.dedup();
        s
    };
    let mut equations = Vec::new();
    for _ in 0..r.gen_range(1..=nv + 3) {
        let e = match r.gen_range(0..10) {
            0..=5 => BoolEquation::new(Tag::Cont(1), subset(r, 1), subset(r, 1), false),
            6..=7 => BoolEquation::new(Tag::Match2, subset(r, 1), vec![], false),
            _ => BoolEquation::new(Tag::Norm, subset(r, 1), vec![], true),
        };
        equations.extend(e);
    }
    BooleanSystem { kind: SystemKind::Parsed, vars, equations, graphs: None }
}

/// `bool_solve` returns a solution above every solution found by
/// enumeration, and reports infeasibility exactly when there is none.
pub fn check_bool_maximal(sys: &BooleanSystem) -> Check {
    let nv = sys.num_vars();
    let res = bool_solve(sys).map_err(|e| e.to_string())?;
    let mut any = false;
    let mut top = vec![false; nv];
    for mask in 0u32..(1 << nv) {
        let bit = |v: usize| mask >> v & 1 == 1;
        if sys.equations.iter().all(|e| e.holds(bit)) {
            any = true;
            for (v, t) in top.iter_mut().enumerate() {
                *t |= bit(v);
            }
        }
    }
    match res.point {
        None => ensure(!any, || "solver reports infeasible but a solution exists".into()),
        Some(point) => {
            ensure(any, || "solver returns a point for an infeasible system".into())?;
            let values: Vec<bool> = sys.vars.keys().iter().map(|p| point.get(p)).collect();
            ensure(sys.equations.iter().all(|e| e.holds(|v| values[v])), || "returned point is not a solution".into())?;
            ensure(values == top, || "returned point is not the greatest solution".into())?;
            ensure(pebblelab::systems::verify_boolean(sys, &point).is_empty(), || "verifier disagrees".into())
        }
    }
}
