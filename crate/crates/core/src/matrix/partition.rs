use super::MatrixError;

/// A partition of `0..n` into nonempty blocks.
///
/// Blocks are kept sorted internally. Their order is whatever the
/// constructor chose; `canonical` orders them by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for (bi, b) in blocks.iter_mut().enumerate() {
            if b.is_empty() {
                return Err(MatrixError::BadPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= n || block_of[x] != usize::MAX {
                    return Err(MatrixError::BadPartition(format!("element {x} out of range or repeated")));
                }
                block_of[x] = bi;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(MatrixError::BadPartition(format!("element {x} not covered")));
        }
        Ok(Partition { blocks, block_of })
    }

    /// Blocks are the classes of equal labels, ordered by least element.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            let b = *seen.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
        }
        Self::new(labels.len(), blocks).expect("labels give a partition")
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| vec![i]).collect()).expect("valid")
    }

    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Self::new(0, vec![]).expect("valid");
        }
        Self::new(n, vec![(0..n).collect()]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// Characteristic vector of block `i`.
    pub fn indicator(&self, i: usize) -> Vec<bool> {
        (0..self.len()).map(|x| self.block_of[x] == i).collect()
    }

    pub fn canonical(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        Self::new(self.len(), blocks).expect("valid")
    }

    /// Same blocks, possibly in another order.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }

    /// Every block of `self` is inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len()
            && self.blocks.iter().all(|b| b.iter().all(|&x| other.block_of(x) == other.block_of(b[0])))
    }
}
