//! Exact rational and boolean matrices and their block structure.

pub mod dense;
pub mod partition;
pub mod rational;
pub mod semiring;
pub mod structure;

pub use dense::{BoolMatrix, Matrix, RatMatrix};
pub use partition::Partition;
pub use rational::Rational;
pub use semiring::Semiring;
pub use structure::{
    boolean_fixed_vectors, check_stochastic_relatedness, digraph_of, fixed_space_dimension,
    good_power, induced_partition, is_good_symmetric, is_irreducible, stability,
    x_related_partitions, Arithmetic, Digraph, StabilityReport, StochasticRelatedness, XRelated,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch {left:?} * {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("rows of unequal length")]
    Ragged,
    #[error("negative entry at ({0}, {1})")]
    Negative(usize, usize),
    #[error("matrix is not symmetric")]
    Asymmetric,
    #[error("zero diagonal entry at {0}")]
    ZeroDiagonal(usize),
    #[error("row {0} is null")]
    NullRow(usize),
    #[error("column {0} is null")]
    NullColumn(usize),
    #[error("matrix is not doubly stochastic")]
    NotDoublyStochastic,
    #[error("partition of {partition} elements used with a {matrix}x{matrix} matrix")]
    PartitionSize { partition: usize, matrix: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}
