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

//! Constructive edge coloring and factorization of finite bipartite
//! multigraphs, and the matrix statements that follow from them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable inputs; file formats and the command-line front
//! end live in the `konig` crate.
//!
//! * [`graph`]: the [`BipartiteMultigraph`] type, two-coloring of general
//!   graphs, components and degree queries.
//! * [`coloring`]: proper `k`-edge-coloring for any `k >= max_degree`,
//!   built edge by edge with alternating-path swaps.
//! * [`factor`]: perfect matchings, 1-factorizations, regularization,
//!   degree splitting and the power-of-two halving engine.
//! * [`matrix`]: exact rational matrices, nonzero determinant members and
//!   decomposition into permutation matrices.
//! * [`instances`]: fixtures and seeded generators.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coloring;
mod error;
pub mod factor;
pub mod graph;
pub mod instances;
pub mod matrix;

pub use coloring::{
    color_edges, verify_coloring, AlternatingPath, ColorIndex, ColoringViolation, EdgeColoring,
    PartialColoring,
};
pub use error::{Error, Result};
pub use factor::{
    color_via_regularization, factor_of_degree, merge_factor, one_factorization, perfect_matching,
    power_of_two_factorization, regularize, split_cycles_factorization, split_degree, Factor,
    Factorization, RegularizationEmbedding, SplitEmbedding,
};
pub use graph::{
    as_bipartite, components, two_coloring, BipartiteMultigraph, Class, Component, EdgeId,
    GeneralGraph, OddWalk, Side, TwoColoring, VertexId,
};
pub use matrix::{
    count_nonzero_members_bruteforce, decompose_into_permutations, graph_from_matrix,
    nonzero_member, normalize_rational, support_decomposition, DecompositionMode, ExactMatrix,
    Permutation, PermutationDecomposition,
};
