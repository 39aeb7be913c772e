use super::tuples::{atp_code, rank_rows, Joint, TupleColouring};
use super::{EngineConfig, EngineError, Verdict};
use crate::graph::{Graph, VertexColouring};
use crate::matrix::{stability, Arithmetic, Partition, RatMatrix};

/// Result of colour refinement on a pair of graphs.
#[derive(Debug, Clone)]
pub struct RefinementOutcome {
    pub verdict: Verdict,
    pub colouring: TupleColouring,
}

impl RefinementOutcome {
    /// Stable colouring of one side as a vertex colouring.
    pub fn vertex_colouring(&self, side: super::Side) -> VertexColouring {
        let n = self.colouring.sizes[side.idx()];
        VertexColouring {
            assignment: (0..n).map(|v| self.colouring.colour(side, &[v])).collect(),
            round: self.colouring.rounds,
        }
    }

    /// Colour classes of one side, ordered by colour id.
    pub fn partition(&self, side: super::Side) -> (Partition, Vec<u32>) {
        let vc = self.vertex_colouring(side);
        let mut ids: Vec<u32> = vc.assignment.clone();
        ids.sort_unstable();
        ids.dedup();
        let blocks = ids
            .iter()
            .map(|&c| (0..vc.assignment.len()).filter(|&v| vc.assignment[v] == c).collect())
            .collect();
        (Partition::new(vc.assignment.len(), blocks).expect("colour classes partition"), ids)
    }

    /// The two stable partitions with their parameters `s_ij`, if both sides
    /// use the same colours with equal class sizes and equal parameters.
    pub fn equivalent_stable_partitions(&self, ga: &Graph, gb: &Graph) -> Option<(Partition, Partition, RatMatrix)> {
        let (pa, ca) = self.partition(super::Side::A);
        let (pb, cb) = self.partition(super::Side::B);
        if ca != cb || (0..pa.num_blocks()).any(|i| pa.block(i).len() != pb.block(i).len()) {
            return None;
        }
        let ra = stability(&ga.adjacency_matrix(), &pa, Arithmetic::Rational).ok()?;
        let rb = stability(&gb.adjacency_matrix(), &pb, Arithmetic::Rational).ok()?;
        match (ra.s, rb.s) {
            (Some(sa), Some(sb)) if ra.stable && rb.stable && sa == sb => Some((pa, pb, sa)),
            _ => None,
        }
    }
}

pub fn colour_refinement(ga: &Graph, gb: &Graph) -> RefinementOutcome {
    let cfg = EngineConfig { budget: usize::MAX };
    let joint = Joint::new(ga, gb, 1, &cfg).expect("unbounded budget");
    let init = joint.initial();
    let colouring = joint.stabilise(init, |old| {
        let mut sigs: Vec<Vec<u32>> = Vec::with_capacity(joint.total);
        for idx in 0..joint.total {
            let (s, v) = joint.locate(idx);
            let base = idx - v;
            let mut sig: Vec<u32> = joint.graphs[s].neighbours(v).iter().map(|&w| old[base + w]).collect();
            sig.sort_unstable();
            sig.insert(0, old[idx]);
            sigs.push(sig);
        }
        let mut order: Vec<usize> = (0..sigs.len()).collect();
        order.sort_unstable_by(|&x, &y| sigs[x].cmp(&sigs[y]));
        let mut ids = vec![0u32; sigs.len()];
        let mut next = 0u32;
        for (pos, &i) in order.iter().enumerate() {
            if pos > 0 && sigs[order[pos - 1]] != sigs[i] {
                next += 1;
            }
            ids[i] = next;
        }
        let k = if sigs.is_empty() { 0 } else { next as usize + 1 };
        (ids, k)
    });
    RefinementOutcome { verdict: colouring.verdict(), colouring }
}

fn check_k(k: usize) -> Result<(), EngineError> {
    if k < 2 {
        Err(EngineError::InvalidK(k))
    } else {
        Ok(())
    }
}

/// k-dimensional Weisfeiler-Leman on `A^k ∪ B^k`.
pub fn wl(k: usize, ga: &Graph, gb: &Graph, cfg: &EngineConfig) -> Result<TupleColouring, EngineError> {
    check_k(k)?;
    let joint = Joint::new(ga, gb, k, cfg)?;
    let width = ga.n().max(gb.n());
    let init = joint.initial();
    Ok(joint.stabilise(init, |old| {
        let per_j: Vec<Vec<u32>> = (0..k)
            .map(|j| joint.neighbour_multisets(old, j, width, |_, _, c, _| c as u64))
            .collect();
        let stride = k + 1;
        let mut sig = Vec::with_capacity(joint.total * stride);
        for idx in 0..joint.total {
            sig.push(old[idx]);
            for m in &per_j {
                sig.push(m[idx]);
            }
        }
        rank_rows(&sig, stride)
    }))
}

/// Refinement of `(k-1)`-tuples realising the counting condition of the
/// weak bijective game: the `j`-th multiset collects pairs of the colour of
/// `ā[a/j]` and the atomic type of `(a_j, a)`.
pub fn weak_wl(k: usize, ga: &Graph, gb: &Graph, cfg: &EngineConfig) -> Result<TupleColouring, EngineError> {
    check_k(k)?;
    let r = k - 1;
    let joint = Joint::new(ga, gb, r, cfg)?;
    let width = ga.n().max(gb.n());
    let init = joint.initial();
    let mut out = joint.stabilise(init, |old| {
        let per_j: Vec<Vec<u32>> = (0..r)
            .map(|j| {
                joint.neighbour_multisets(old, j, width, |s, aj, c, v| {
                    ((c as u64) << 2) | atp_code(joint.graphs[s], aj, v) as u64
                })
            })
            .collect();
        let stride = r + 1;
        let mut sig = Vec::with_capacity(joint.total * stride);
        for idx in 0..joint.total {
            sig.push(old[idx]);
            for m in &per_j {
                sig.push(m[idx]);
            }
        }
        rank_rows(&sig, stride)
    });
    if ga.n() != gb.n() {
        out.distinguished_at = Some(0);
    }
    Ok(out)
}
