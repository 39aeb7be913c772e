//! Block structure of nonnegative matrices: induced partitions, goodness,
//! X-related partitions, stable partitions and fixed spaces.

use super::dense::{BoolMatrix, Matrix, RatMatrix};
use super::partition::Partition;
use super::rational::Rational;
use super::semiring::Semiring;
use super::MatrixError;

/// Directed graph on the row indices, successors per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    fn reach(&self, start: usize, reverse: bool) -> Vec<bool> {
        let n = self.n();
        let mut pred = vec![Vec::new(); n];
        if reverse {
            for (i, s) in self.succ.iter().enumerate() {
                for &j in s {
                    pred[j].push(i);
                }
            }
        }
        let adj = if reverse { &pred } else { &self.succ };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        self.reach(0, false).iter().all(|&b| b) && self.reach(0, true).iter().all(|&b| b)
    }
}

fn require_square<S: Semiring>(x: &Matrix<S>) -> Result<(), MatrixError> {
    if x.is_square() {
        Ok(())
    } else {
        Err(MatrixError::NotSquare(x.rows(), x.cols()))
    }
}

fn require_nonneg<S: Semiring>(x: &Matrix<S>) -> Result<(), MatrixError> {
    match x.first_negative() {
        Some((i, j)) => Err(MatrixError::Negative(i, j)),
        None => Ok(()),
    }
}

fn require_symmetric<S: Semiring>(x: &Matrix<S>) -> Result<(), MatrixError> {
    require_square(x)?;
    if x.is_symmetric() {
        Ok(())
    } else {
        Err(MatrixError::Asymmetric)
    }
}

fn require_positive_diagonal<S: Semiring>(x: &Matrix<S>) -> Result<(), MatrixError> {
    match (0..x.rows()).find(|&i| x.get(i, i).is_zero()) {
        Some(i) => Err(MatrixError::ZeroDiagonal(i)),
        None => Ok(()),
    }
}

pub fn digraph_of<S: Semiring>(x: &Matrix<S>) -> Result<Digraph, MatrixError> {
    require_square(x)?;
    let succ = (0..x.rows())
        .map(|i| (0..x.cols()).filter(|&j| !x.get(i, j).is_zero()).collect())
        .collect();
    Ok(Digraph { succ })
}

pub fn is_irreducible<S: Semiring>(x: &Matrix<S>) -> Result<bool, MatrixError> {
    require_nonneg(x)?;
    Ok(digraph_of(x)?.is_strongly_connected())
}

/// Connected components of the support graph, ordered by least element.
fn support_components<S: Semiring>(z: &Matrix<S>) -> Partition {
    let n = z.rows();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if label[w] == usize::MAX && !z.get(v, w).is_zero() {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

pub fn induced_partition<S: Semiring>(z: &Matrix<S>) -> Result<Partition, MatrixError> {
    require_symmetric(z)?;
    require_nonneg(z)?;
    Ok(support_components(z))
}

pub fn is_good_symmetric<S: Semiring>(z: &Matrix<S>) -> Result<bool, MatrixError> {
    require_symmetric(z)?;
    require_nonneg(z)?;
    require_positive_diagonal(z)?;
    let part = support_components(z);
    Ok(part
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&i| b.iter().all(|&j| !z.get(i, j).is_zero()))))
}

/// Exponent used by `good_power`: the least power of two that is at least `n - 1`.
pub fn good_exponent(n: usize) -> u64 {
    let target = n.saturating_sub(1).max(1) as u64;
    target.next_power_of_two()
}

pub fn good_power<S: Semiring>(z: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
    require_symmetric(z)?;
    require_nonneg(z)?;
    require_positive_diagonal(z)?;
    let mut acc = z.clone();
    let mut e = 1;
    while e < good_exponent(z.rows()) {
        acc = acc.mul(&acc)?;
        e *= 2;
    }
    Ok(acc)
}

/// Row and column partitions induced by `XX^t` and `X^tX`, indexed so that
/// block `i` of the rows corresponds to block `i` of the columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XRelated {
    pub rows: Partition,
    pub cols: Partition,
}

pub fn x_related_partitions<S: Semiring>(x: &Matrix<S>) -> Result<XRelated, MatrixError> {
    require_nonneg(x)?;
    if let Some(i) = (0..x.rows()).find(|&i| x.row(i).iter().all(|v| v.is_zero())) {
        return Err(MatrixError::NullRow(i));
    }
    if let Some(j) = (0..x.cols()).find(|&j| (0..x.rows()).all(|i| x.get(i, j).is_zero())) {
        return Err(MatrixError::NullColumn(j));
    }
    let s = x.support();
    let st = s.transpose();
    let rows = support_components(&s.mul(&st)?);
    let cols = support_components(&st.mul(&s)?);
    let mut matched = Vec::with_capacity(rows.num_blocks());
    for b in rows.blocks() {
        let d = b[0];
        let j = (0..x.cols()).find(|&j| *s.get(d, j)).expect("no null rows");
        matched.push(cols.block(cols.block_of(j)).to_vec());
    }
    let cols = Partition::new(x.cols(), matched).map_err(|_| MatrixError::Internal("unmatched blocks"))?;
    Ok(XRelated { rows, cols })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticRelatedness {
    pub partitions: XRelated,
    /// `|D_i| = |D'_i|` per block.
    pub equal_sizes: Vec<bool>,
    /// `d_i = X d'_i` per block.
    pub forward: Vec<bool>,
    /// `d'_i = X^t d_i` per block.
    pub backward: Vec<bool>,
}

impl StochasticRelatedness {
    pub fn holds(&self) -> bool {
        self.equal_sizes.iter().chain(&self.forward).chain(&self.backward).all(|&b| b)
    }
}

fn indicator_rat(part: &Partition, i: usize) -> Vec<Rational> {
    part.indicator(i)
        .into_iter()
        .map(|b| if b { Rational::one() } else { Rational::zero() })
        .collect()
}

fn apply(x: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..x.rows())
        .map(|i| x.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn check_stochastic_relatedness(x: &RatMatrix) -> Result<StochasticRelatedness, MatrixError> {
    if !x.is_doubly_stochastic() {
        return Err(MatrixError::NotDoublyStochastic);
    }
    let partitions = x_related_partitions(x)?;
    let xt = x.transpose();
    let k = partitions.rows.num_blocks();
    let mut equal_sizes = Vec::with_capacity(k);
    let mut forward = Vec::with_capacity(k);
    let mut backward = Vec::with_capacity(k);
    for i in 0..k {
        let d = indicator_rat(&partitions.rows, i);
        let dp = indicator_rat(&partitions.cols, i);
        equal_sizes.push(partitions.rows.block(i).len() == partitions.cols.block(i).len());
        forward.push(apply(x, &dp) == d);
        backward.push(apply(&xt, &d) == dp);
    }
    Ok(StochasticRelatedness { partitions, equal_sizes, forward, backward })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    Rational,
    Boolean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub row_stable: bool,
    pub col_stable: bool,
    /// `s_ij`, present in rational mode when row sums are block-constant.
    pub s: Option<RatMatrix>,
    /// `t_ij`, present in rational mode when column sums are block-constant.
    pub t: Option<RatMatrix>,
    /// `ι_ij` from row ∨-sums, boolean mode only.
    pub iota: Option<BoolMatrix>,
    /// Column counterpart of `ι_ij`, boolean mode only.
    pub iota_col: Option<BoolMatrix>,
    /// Boolean stability for both `a` and its complement; only evaluated in
    /// boolean mode when `a` is a graph adjacency matrix.
    pub bistable: Option<bool>,
}

/// Sums of `a` into blocks: entry `(d, j)` is the sum over `d' ∈ D_j` of
/// `a[d][d']` (or of `a[d'][d]` when `transposed`).
fn block_params<T: Semiring>(
    n: usize,
    part: &Partition,
    entry: impl Fn(usize, usize) -> T,
) -> Option<Matrix<T>> {
    let k = part.num_blocks();
    let mut out = Matrix::<T>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut first: Option<T> = None;
            for &d in part.block(i) {
                let mut acc = T::zero();
                for &dp in part.block(j) {
                    acc = acc.add(&entry(d, dp));
                }
                match &first {
                    None => first = Some(acc),
                    Some(f) if *f != acc => return None,
                    _ => {}
                }
            }
            out.set(i, j, first.expect("blocks are nonempty"));
        }
    }
    debug_assert_eq!(part.len(), n);
    Some(out)
}

pub fn stability<S: Semiring>(
    a: &Matrix<S>,
    part: &Partition,
    mode: Arithmetic,
) -> Result<StabilityReport, MatrixError> {
    require_square(a)?;
    let n = a.rows();
    if part.len() != n {
        return Err(MatrixError::PartitionSize { partition: part.len(), matrix: n });
    }
    match mode {
        Arithmetic::Rational => {
            let s = block_params(n, part, |d, dp| a.get(d, dp).to_rational());
            let t = block_params(n, part, |d, dp| a.get(dp, d).to_rational());
            Ok(StabilityReport {
                stable: s.is_some() && t.is_some(),
                row_stable: s.is_some(),
                col_stable: t.is_some(),
                s,
                t,
                iota: None,
                iota_col: None,
                bistable: None,
            })
        }
        Arithmetic::Boolean => {
            let iota = block_params(n, part, |d, dp| a.get(d, dp).support());
            let iota_col = block_params(n, part, |d, dp| a.get(dp, d).support());
            let stable = iota.is_some() && iota_col.is_some();
            let is_adjacency = a.is_symmetric()
                && (0..n).all(|i| a.get(i, i).is_zero())
                && (0..n).all(|i| (0..n).all(|j| {
                    let v = a.get(i, j);
                    v.is_zero() || v.to_rational().is_one()
                }));
            let bistable = is_adjacency.then(|| {
                let comp = BoolMatrix::from_fn(n, n, |i, j| i != j && a.get(i, j).is_zero());
                stable && block_params(n, part, |d, dp| *comp.get(d, dp)).is_some()
            });
            Ok(StabilityReport {
                stable,
                row_stable: iota.is_some(),
                col_stable: iota_col.is_some(),
                s: None,
                t: None,
                iota,
                iota_col,
                bistable,
            })
        }
    }
}

pub fn fixed_space_dimension(z: &RatMatrix) -> Result<usize, MatrixError> {
    require_square(z)?;
    if !z.is_doubly_stochastic() {
        return Err(MatrixError::NotDoublyStochastic);
    }
    let n = z.rows();
    Ok(n - z.sub(&RatMatrix::identity(n)).rank())
}

pub fn boolean_fixed_vectors(z: &BoolMatrix) -> Result<Vec<Vec<bool>>, MatrixError> {
    require_symmetric(z)?;
    require_positive_diagonal(z)?;
    let part = support_components(z);
    let mut out = Vec::with_capacity(part.num_blocks());
    for i in 0..part.num_blocks() {
        let d = part.indicator(i);
        let zd: Vec<bool> = (0..z.rows()).map(|r| (0..z.cols()).any(|c| *z.get(r, c) && d[c])).collect();
        if zd != d {
            return Err(MatrixError::Internal("fixed vector equation fails"));
        }
        out.push(d);
    }
    Ok(out)
}
