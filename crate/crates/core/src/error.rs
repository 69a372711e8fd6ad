// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.
use crate::graph::OddWalk;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// [`Error::name`] gives a stable identifier for each variant, used by the
/// command-line front end as its machine-readable error code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex index {index} out of bounds for a side of size {bound}")]
    IndexOutOfBounds { index: usize, bound: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not bipartite: odd closed walk of length {}", .witness.len())]
    NotBipartite { witness: OddWalk },
    #[error("{k} colors cannot color a graph of maximum degree {max_degree}")]
    KTooSmall { k: usize, max_degree: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(&'static str),
    #[error("partial coloring does not satisfy the insertion precondition: {0}")]
    InvalidPartialColoring(&'static str),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is 0-regular and has vertices, so it has no factor of degree 1")]
    ZeroDegree,
    #[error("degree {degree} is not divisible by {mu}")]
    NotDivisible { degree: usize, mu: usize },
    #[error("degree {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("factor degree {d} exceeds graph degree {k}")]
    DTooLarge { d: usize, k: usize },
    #[error("edge set is not a factor: {0}")]
    InvalidFactor(&'static str),
    #[error(
        "negative entry at ({row}, {col}); nonnegativity is required, e.g.          [[0,0,1],[0,0,1],[1,1,-1]] has equal line sums 1 yet all 6 determinant members vanish"
    )]
    NegativeEntry { row: usize, col: usize },
    #[error("entry at ({row}, {col}) is not an integer")]
    NonIntegerEntry { row: usize, col: usize },
    #[error("entry at ({row}, {col}) is too large to expand into parallel edges")]
    EntryTooLarge { row: usize, col: usize },
    #[error("row and column sums are not all equal")]
    UnequalLineSums,
    #[error("all line sums are zero")]
    ZeroSum,
    #[error("rows and columns do not all have the same number of nonzero entries")]
    IrregularSupport,
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("dimension {n} exceeds the brute-force limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("unknown fixture")]
    UnknownFixture,
    #[error("{edges} edges cannot be placed with maximum degree {max_degree}")]
    Infeasible { edges: usize, max_degree: usize },
    #[error("not a permutation")]
    NotAPermutation,
    #[error("permutations do not decompose the matrix: {0}")]
    InvalidDecomposition(&'static str),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::IndexOutOfBounds { .. } => "IndexOutOfBounds",
            Error::SelfLoop(_) => "SelfLoop",
            Error::NotBipartite { .. } => "NotBipartite",
            Error::KTooSmall { .. } => "KTooSmall",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::InvalidPartialColoring(_) => "InvalidPartialColoring",
            Error::NotRegular => "NotRegular",
            Error::ZeroDegree => "ZeroDegree",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::NotPowerOfTwo(_) => "NotPowerOfTwo",
            Error::DTooLarge { .. } => "DTooLarge",
            Error::InvalidFactor(_) => "InvalidFactor",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NonIntegerEntry { .. } => "NonIntegerEntry",
            Error::EntryTooLarge { .. } => "EntryTooLarge",
            Error::UnequalLineSums => "UnequalLineSums",
            Error::ZeroSum => "ZeroSum",
            Error::IrregularSupport => "IrregularSupport",
            Error::NotSquare { .. } => "NotSquare",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnknownFixture => "UnknownFixture",
            Error::Infeasible { .. } => "Infeasible",
            Error::NotAPermutation => "NotAPermutation",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
        }
    }

    /// The odd closed walk carried by [`Error::NotBipartite`].
    pub fn witness(&self) -> Option<&OddWalk> {
        match self {
            Error::NotBipartite { witness } => Some(witness),
            _ => None,
        }
    }
}
