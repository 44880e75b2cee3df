//! Equitable 2-partitions of the Johnson graphs `J(n,3)`.
//!
//! The library provides:
//!
//! * [`jgraph`] — the Johnson graph `J(n,w)` for `w ∈ {1,2,3}`: vertices as
//!   sorted subsets, colexicographic ranking, adjacency and the row/column
//!   lattice structure of a vertex neighbourhood, and the integer spectrum.
//! * [`partition`] — 2-partitions (and 3-partitions) of the vertex set,
//!   exact rational quotient matrices, equitability checks with witnesses,
//!   indicator sums and the local counting identities they satisfy.
//! * [`construct`] — the three matching/bipartition based families `Π₁`,
//!   `Π₂`, `Π₃` of equitable 2-partitions of `J(2m,3)` and the equitable
//!   3-partition they merge from.
//! * [`eigenfn`] — exact eigenfunction machinery: partition eigenfunctions,
//!   partial differences, the inducing operator, and the classification of
//!   `{-1,0,1}`-valued second-eigenvalue eigenfunctions of `J(n,2)`.
//! * [`localstruct`] — neighbourhood arrays (nb-arrays), difference tuples,
//!   the admissible case templates and their brute-force enumeration, and
//!   the per-case bounds on `n`.
//! * [`classify`] — recognition of an arbitrary equitable 2-partition as an
//!   instance of `Π₁`/`Π₂`/`Π₃`, with certified structure recovery.
//! * [`search`] — exhaustive backtracking enumeration of equitable
//!   2-partitions with a given quotient matrix, with constraint propagation,
//!   optional symmetry reduction and deterministic parallel splitting.
//!
//! All arithmetic is exact: integers and `num_rational::Rational64`.

pub mod bits;
pub mod classify;
pub mod construct;
pub mod eigenfn;
pub mod jgraph;
pub mod localstruct;
pub mod partition;
pub mod search;

pub use bits::Bitset;
pub use classify::{quotient_family, recognize, RecognitionResult, RecognizedFamily};
pub use construct::{
    build_family, classify_triple, dependence_signature, pi1, pi2, pi3, three_partition,
    BuiltPartition, Family, PairedBipartition, Signature, TripleType,
};
pub use eigenfn::{
    characteristic_function, classify_lambda1, induce, partition_function, supports_identity,
    EigenOutcome, Lambda1Type, SupportsReport, VertexFunction,
};
pub use jgraph::{clique_star, AdjacencyCache, GraphContext, KSubset, Spectrum};
pub use localstruct::{
    case_histogram, case_profile, column_pair_violations, difference_tuple,
    enumerate_admissible_arrays, max_n_bound, nb_array, rowdiff_identity, ArrayEnumeration,
    CaseGroup, CaseId, CaseProfile, ColumnClass, DifferenceTuple, NbArray, TupleClass,
};
pub use partition::{theta_of, EquitableWitness, QuotientMatrix, ThreePartition, TwoPartition};
pub use search::{
    candidate_matrices, canonical_form, enumerate, verify_classification, ClassificationSurvey,
    MatrixSurvey, SearchProblem, SearchReport, Solution, SymmetryMode,
};

use num_rational::Rational64;

/// Errors shared across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element {element} out of range for ground set [1..{n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("elements must be strictly increasing and distinct")]
    NotStrictlyIncreasing,
    #[error("expected a subset of size {expected}, got {got}")]
    WrongArity { expected: u8, got: usize },
    #[error("subset arities differ")]
    ArityMismatch,
    #[error("vertices must be distinct")]
    NotDistinct,
    #[error("invalid graph context: n={n}, w={w} (need 1 <= w <= 3, n >= 2w, 5 <= n <= 99)")]
    InvalidContext { n: u32, w: u32 },
    #[error("eigenvalue index {index} out of range 0..={w}")]
    EigenvalueIndex { index: u32, w: u32 },
    #[error("pair {x},{y} is not contained in the base vertex")]
    PairNotInVertex { x: u32, y: u32 },
    #[error("column index {0} lies in the base vertex")]
    ColumnIndexInVertex(u32),
    #[error("elements must be distinct")]
    EqualElements,
    #[error("partition cell {0} is empty")]
    EmptyCell(u8),
    #[error("partition is not equitable")]
    NotEquitable,
    #[error("operation requires theta = n-7, found {found}")]
    NotLambda2 { found: Rational64 },
    #[error("vertex lies in cell 2, operation is defined for cell-1 vertices")]
    NotCellOne,
    #[error("unsupported ground-set parity: n must be even")]
    OddGroundSet,
    #[error("invalid paired bipartition: {0}")]
    InvalidBipartition(String),
    #[error("invalid quotient matrix: {0}")]
    InvalidMatrix(String),
    #[error("eigenfunction classification failed: {0}")]
    Classification(String),
    #[error("function is not an eigenfunction for the requested eigenvalue")]
    NotEigenfunction,
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted {
        nodes: u64,
        partial: Box<search::SearchReport>,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Binomial coefficient with the convention `C(x, k) = 0` for `x < k`.
pub(crate) fn binomial(x: u64, k: u64) -> u64 {
    match k {
        0 => 1,
        1 => x,
        2 => {
            if x < 2 {
                0
            } else {
                x * (x - 1) / 2
            }
        }
        3 => {
            if x < 3 {
                0
            } else {
                x * (x - 1) * (x - 2) / 6
            }
        }
        _ => {
            if x < k {
                return 0;
            }
            let mut acc: u64 = 1;
            for i in 0..k {
                acc = acc * (x - i) / (i + 1);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(16, 3), 560);
    }
}
