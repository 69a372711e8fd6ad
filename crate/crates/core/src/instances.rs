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

//! Named fixtures and seeded random instances.
//!
//! Generators draw from ChaCha8 seeded with the given `u64`, so the same
//! parameters and seed always give the same instance on every platform.

use alloc::vec::Vec;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteMultigraph, GeneralGraph};
use crate::matrix::{ExactMatrix, Permutation};

/// Fixed instances with frozen vertex numbering.
pub mod fixtures {
    use super::*;

    /// A fixture, typed by what it is.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub enum Fixture {
        General(GeneralGraph),
        Bipartite(BipartiteMultigraph),
        Matrix(ExactMatrix),
    }

    pub const NAMES: [&str; 6] = [
        "cube",
        "petersen",
        "k33",
        "koenig_counterexample_matrix",
        "path2",
        "four_cycle",
    ];

    pub fn fixture(name: &str) -> Result<Fixture> {
        Ok(match name {
            "cube" => Fixture::Bipartite(cube()),
            "petersen" => Fixture::General(petersen()),
            "k33" => Fixture::Bipartite(k33()),
            "koenig_counterexample_matrix" => Fixture::Matrix(koenig_counterexample_matrix()),
            "path2" => Fixture::Bipartite(path2()),
            "four_cycle" => Fixture::Bipartite(four_cycle()),
            _ => return Err(Error::UnknownFixture),
        })
    }

    const CUBE_EVEN: [usize; 4] = [0b000, 0b011, 0b101, 0b110];
    const CUBE_ODD: [usize; 4] = [0b001, 0b010, 0b100, 0b111];

    /// The edge system of the 3-cube. Corners are 3-bit words; left vertex
    /// `i` is the `i`-th even-weight corner (000, 011, 101, 110), right
    /// vertex `j` the `j`-th odd-weight corner (001, 010, 100, 111). Edges
    /// are listed by left vertex, then by flipped bit 0, 1, 2.
    pub fn cube() -> BipartiteMultigraph {
        let mut edges = Vec::with_capacity(12);
        for (l, &corner) in CUBE_EVEN.iter().enumerate() {
            for bit in 0..3 {
                let other = corner ^ (1 << bit);
                let r = CUBE_ODD.iter().position(|&c| c == other).unwrap();
                edges.push((l, r));
            }
        }
        BipartiteMultigraph::new(4, 4, edges).unwrap()
    }

    /// The 3-cube as a general graph on corners `0..8`, vertex = 3-bit word.
    pub fn cube_general() -> GeneralGraph {
        let edges = (0..8usize)
            .flat_map(|v| (0..3).map(move |bit| (v, v ^ (1 << bit))))
            .filter(|&(u, v)| u < v);
        GeneralGraph::new(8, edges).unwrap()
    }

    /// Petersen graph: outer cycle `0..5`, spokes `i - (i + 5)`, inner
    /// pentagram `5 + i - 5 + (i + 2) % 5`.
    pub fn petersen() -> GeneralGraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        GeneralGraph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// `K_{n,n}` with edges in row-major order.
    pub fn complete(n: usize) -> BipartiteMultigraph {
        BipartiteMultigraph::new(n, n, (0..n).flat_map(|l| (0..n).map(move |r| (l, r)))).unwrap()
    }

    pub fn k33() -> BipartiteMultigraph {
        complete(3)
    }

    /// `[[0,0,1],[0,0,1],[1,1,-1]]`: every line sums to 1, yet every
    /// permutation hits a zero.
    pub fn koenig_counterexample_matrix() -> ExactMatrix {
        ExactMatrix::from_i64_rows(&[[0, 0, 1], [0, 0, 1], [1, 1, -1]]).unwrap()
    }

    /// Path `L0 - R0 - L1`.
    pub fn path2() -> BipartiteMultigraph {
        BipartiteMultigraph::new(2, 1, [(0, 0), (1, 0)]).unwrap()
    }

    /// Cycle `L0 - R0 - L1 - R1 - L0`, edges in walk order.
    pub fn four_cycle() -> BipartiteMultigraph {
        BipartiteMultigraph::new(2, 2, [(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Union of `k` independent uniform permutations of `0..n`: a `k`-regular
/// bipartite multigraph on `n + n` vertices. Permutation `j` contributes
/// edges `j * n .. (j + 1) * n`, row by row.
pub fn random_regular_bipartite(n: usize, k: usize, seed: u64) -> BipartiteMultigraph {
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(n * k);
    for _ in 0..k {
        let p = random_permutation(&mut rng, n);
        edges.extend(p.into_iter().enumerate());
    }
    BipartiteMultigraph::new(n, n, edges).unwrap()
}

/// `edge_count` random edges with every degree at most `max_deg`. Each edge
/// joins a uniformly chosen left vertex and a uniformly chosen right
/// vertex among those not yet saturated, so sampling never gets stuck.
pub fn random_bounded_degree_bipartite(
    n_left: usize,
    n_right: usize,
    max_deg: usize,
    edge_count: usize,
    seed: u64,
) -> Result<BipartiteMultigraph> {
    if edge_count > n_left * max_deg || edge_count > n_right * max_deg {
        return Err(Error::Infeasible {
            edges: edge_count,
            max_degree: max_deg,
        });
    }
    let mut rng = rng(seed);
    let mut open_left: Vec<usize> = (0..n_left).collect();
    let mut open_right: Vec<usize> = (0..n_right).collect();
    let mut deg_left = alloc::vec![0usize; n_left];
    let mut deg_right = alloc::vec![0usize; n_right];
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let i = rng.gen_range(0..open_left.len());
        let j = rng.gen_range(0..open_right.len());
        let (l, r) = (open_left[i], open_right[j]);
        edges.push((l, r));
        deg_left[l] += 1;
        deg_right[r] += 1;
        if deg_left[l] == max_deg {
            open_left.swap_remove(i);
        }
        if deg_right[r] == max_deg {
            open_right.swap_remove(j);
        }
    }
    BipartiteMultigraph::new(n_left, n_right, edges)
}

/// Sum of `s` independent uniform `n x n` permutation matrices; every row
/// and column sums to `s`.
pub fn random_equal_line_sum_matrix(n: usize, s: usize, seed: u64) -> ExactMatrix {
    let mut rng = rng(seed);
    let mut counts = alloc::vec![0i64; n * n];
    for _ in 0..s {
        for (i, k) in random_permutation(&mut rng, n).into_iter().enumerate() {
            counts[i * n + k] += 1;
        }
    }
    let rows = counts
        .chunks(n.max(1))
        .take(n)
        .map(|row| {
            row.iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).unwrap()
}

/// `k` random permutations of `0..n` that pairwise share no cell, so their
/// union has exactly `k` cells in every row and column. Each one is found
/// by a randomized backtracking search over the cells still free; the
/// free cells form an `(n - j)`-regular pattern after `j` rounds, which
/// always contains a permutation, so the search never fails for `k <= n`.
pub fn random_disjoint_permutations(n: usize, k: usize, seed: u64) -> Result<Vec<Permutation>> {
    if k > n {
        return Err(Error::Infeasible {
            edges: k * n,
            max_degree: n,
        });
    }
    let mut rng = rng(seed);
    let mut taken = alloc::vec![false; n * n];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let orders: Vec<Vec<usize>> = (0..n).map(|_| random_permutation(&mut rng, n)).collect();
        let mut images = alloc::vec![usize::MAX; n];
        let mut col_used = alloc::vec![false; n];
        if !place_row(0, &orders, &taken, &mut images, &mut col_used) {
            return Err(Error::InternalInvariantViolation(
                "no permutation avoids the taken cells",
            ));
        }
        for (i, &c) in images.iter().enumerate() {
            taken[i * n + c] = true;
        }
        out.push(Permutation::new(images)?);
    }
    Ok(out)
}

fn place_row(
    row: usize,
    orders: &[Vec<usize>],
    taken: &[bool],
    images: &mut [usize],
    col_used: &mut [bool],
) -> bool {
    let n = images.len();
    if row == n {
        return true;
    }
    for &c in &orders[row] {
        if col_used[c] || taken[row * n + c] {
            continue;
        }
        col_used[c] = true;
        images[row] = c;
        if place_row(row + 1, orders, taken, images, col_used) {
            return true;
        }
        col_used[c] = false;
    }
    false
}

/// 0/1 matrix with exactly `k` ones per row and column, as the union of
/// [`random_disjoint_permutations`].
pub fn random_line_regular_support(n: usize, k: usize, seed: u64) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::zeros(n);
    for p in random_disjoint_permutations(n, k, seed)? {
        for i in 0..n {
            m.set(i, p.apply(i), BigRational::from_integer(1.into()));
        }
    }
    Ok(m)
}
