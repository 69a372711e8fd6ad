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

//! Square matrices as bipartite multigraphs.
//!
//! Row `i` is left vertex `A_i`, column `k` is right vertex `B_k`, and a
//! nonnegative integer entry `a_ik` becomes that many parallel edges. Row
//! and column sums are then vertex degrees, so equal line sums mean a
//! regular graph, and a perfect matching is a permutation `s` with every
//! `a_{i,s(i)}` nonzero, i.e. a nonzero member of the determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{one_factorization, perfect_matching, Factor};
use crate::graph::BipartiteMultigraph;

/// Largest number of parallel edges a matrix may expand into.
pub const MAX_EXPANDED_EDGES: usize = 1 << 31;

/// Largest dimension [`count_nonzero_members_bruteforce`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// A dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { n, entries })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.as_ref()
                        .iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> &BigRational {
        &self.entries[i * self.n + k]
    }

    pub fn set(&mut self, i: usize, k: usize, value: BigRational) {
        self.entries[i * self.n + k] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<BigRational> {
        (0..self.n)
            .map(|k| (0..self.n).map(|i| self.get(i, k)).sum())
            .collect()
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, x)| (idx / n, idx % n, x))
    }

    fn reject_negative(&self) -> Result<()> {
        match self.cells().find(|(_, _, x)| x.is_negative()) {
            Some((row, col, _)) => Err(Error::NegativeEntry { row, col }),
            None => Ok(()),
        }
    }

    fn reject_non_integer(&self) -> Result<()> {
        match self.cells().find(|(_, _, x)| !x.is_integer()) {
            Some((row, col, _)) => Err(Error::NonIntegerEntry { row, col }),
            None => Ok(()),
        }
    }

    /// The common value of all row and column sums.
    pub fn common_line_sum(&self) -> Result<BigRational> {
        let rows = self.row_sums();
        let cols = self.col_sums();
        let mut sums = rows.iter().chain(&cols);
        let s = match sums.next() {
            Some(s) => s.clone(),
            None => return Ok(BigRational::zero()),
        };
        if sums.all(|x| *x == s) {
            Ok(s)
        } else {
            Err(Error::UnequalLineSums)
        }
    }

    /// Count of nonzero entries in each row, then in each column.
    fn support_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut rows = vec![0; self.n];
        let mut cols = vec![0; self.n];
        for (i, k, x) in self.cells() {
            if !x.is_zero() {
                rows[i] += 1;
                cols[k] += 1;
            }
        }
        (rows, cols)
    }
}

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || core::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Reads a permutation off a perfect matching of a graph whose left
    /// vertices are rows and right vertices are columns.
    fn from_matching(g: &BipartiteMultigraph, f: &Factor) -> Result<Self> {
        let mut images = vec![usize::MAX; g.n_left()];
        for &e in &f.edges {
            let (l, r) = g.endpoints(e);
            images[l] = r;
        }
        Self::new(images)
    }
}

/// How a [`PermutationDecomposition`] relates to its matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMode {
    /// The permutation matrices sum to the matrix.
    LineSum,
    /// Every nonzero cell lies on exactly one permutation; zero cells on
    /// none.
    Support,
}

/// A list of permutations decomposing a matrix, with what each permutation
/// takes from each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDecomposition {
    pub mode: DecompositionMode,
    pub parts: Vec<Permutation>,
    /// `certificate[p][i]` is what part `p` takes at cell `(i, p(i))`: one
    /// unit in [`DecompositionMode::LineSum`], the entry itself in
    /// [`DecompositionMode::Support`].
    pub certificate: Vec<Vec<BigRational>>,
}

impl PermutationDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Re-checks the decomposition against `m` cell by cell.
    pub fn check(&self, m: &ExactMatrix) -> Result<()> {
        let n = m.n();
        let mut used = vec![0usize; n * n];
        if self.certificate.len() != self.parts.len() {
            return Err(Error::InvalidDecomposition("certificate length"));
        }
        for (p, cert) in self.parts.iter().zip(&self.certificate) {
            if p.len() != n || cert.len() != n {
                return Err(Error::InvalidDecomposition("part has the wrong dimension"));
            }
            for i in 0..n {
                let k = p.apply(i);
                used[i * n + k] += 1;
                let expected = match self.mode {
                    DecompositionMode::LineSum => BigRational::one(),
                    DecompositionMode::Support => m.get(i, k).clone(),
                };
                if cert[i] != expected {
                    return Err(Error::InvalidDecomposition(
                        "certificate disagrees with the matrix",
                    ));
                }
            }
        }
        for (i, k, x) in m.cells() {
            let count = used[i * n + k];
            let ok = match self.mode {
                DecompositionMode::LineSum => BigRational::from_integer(count.into()) == *x,
                DecompositionMode::Support => count == usize::from(!x.is_zero()),
            };
            if !ok {
                return Err(Error::InvalidDecomposition(
                    "cell coverage does not match the matrix",
                ));
            }
        }
        Ok(())
    }
}

/// `a_ik` parallel edges between row vertex `i` and column vertex `k`,
/// inserted in row-major cell order.
pub fn graph_from_matrix(m: &ExactMatrix) -> Result<BipartiteMultigraph> {
    m.reject_negative()?;
    m.reject_non_integer()?;
    let mut edges = Vec::new();
    for (i, k, x) in m.cells() {
        let count = x
            .to_integer()
            .to_usize()
            .filter(|&c| c <= MAX_EXPANDED_EDGES - edges.len())
            .ok_or(Error::EntryTooLarge { row: i, col: k })?;
        edges.extend(core::iter::repeat_n((i, k), count));
    }
    BipartiteMultigraph::new(m.n(), m.n(), edges)
}

/// Scales a nonnegative rational matrix by the least common multiple of its
/// denominators. Returns the integer matrix and the scale.
pub fn normalize_rational(m: &ExactMatrix) -> Result<(ExactMatrix, BigInt)> {
    m.reject_negative()?;
    let scale = m
        .entries
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let factor = BigRational::from_integer(scale.clone());
    let entries = m.entries.iter().map(|x| x * &factor).collect();
    Ok((ExactMatrix { n: m.n, entries }, scale))
}

/// A permutation `s` with every `a_{i,s(i)} > 0`, for a nonnegative matrix
/// whose row and column sums all equal the same positive value.
pub fn nonzero_member(m: &ExactMatrix) -> Result<Permutation> {
    m.reject_negative()?;
    let s = m.common_line_sum()?;
    if m.n() == 0 {
        return Ok(Permutation::identity(0));
    }
    if s.is_zero() {
        return Err(Error::ZeroSum);
    }
    let (scaled, _) = normalize_rational(m)?;
    let g = graph_from_matrix(&scaled)?;
    let matching = perfect_matching(&g)?;
    Permutation::from_matching(&g, &matching)
}

/// Writes a nonnegative integer matrix with all line sums equal to `s` as a
/// sum of exactly `s` permutation matrices (repeats allowed).
pub fn decompose_into_permutations(m: &ExactMatrix) -> Result<PermutationDecomposition> {
    m.reject_negative()?;
    m.reject_non_integer()?;
    m.common_line_sum()?;
    let g = graph_from_matrix(m)?;
    let factorization = one_factorization(&g)?;
    let parts = factorization
        .factors
        .iter()
        .map(|f| Permutation::from_matching(&g, f))
        .collect::<Result<Vec<_>>>()?;
    let certificate = vec![vec![BigRational::one(); m.n()]; parts.len()];
    Ok(PermutationDecomposition {
        mode: DecompositionMode::LineSum,
        parts,
        certificate,
    })
}

/// For a matrix with exactly `k` nonzero entries in every row and column
/// (any signs), `k` permutations supported on nonzero cells that together
/// cover each nonzero cell exactly once.
pub fn support_decomposition(m: &ExactMatrix) -> Result<PermutationDecomposition> {
    let (rows, cols) = m.support_counts();
    let k = rows.first().copied().unwrap_or(0);
    if rows.iter().chain(&cols).any(|&c| c != k) {
        return Err(Error::IrregularSupport);
    }
    let n = m.n();
    let edges = m
        .cells()
        .filter(|(_, _, x)| !x.is_zero())
        .map(|(i, k, _)| (i, k));
    let g = BipartiteMultigraph::new(n, n, edges)?;
    let factorization = one_factorization(&g)?;
    let parts = factorization
        .factors
        .iter()
        .map(|f| Permutation::from_matching(&g, f))
        .collect::<Result<Vec<_>>>()?;
    let certificate = parts
        .iter()
        .map(|p| (0..n).map(|i| m.get(i, p.apply(i)).clone()).collect())
        .collect();
    Ok(PermutationDecomposition {
        mode: DecompositionMode::Support,
        parts,
        certificate,
    })
}

/// Number of permutations `s` with every `a_{i,s(i)}` nonzero, by checking
/// all `n!` of them.
pub fn count_nonzero_members_bruteforce(m: &ExactMatrix) -> Result<u64> {
    let n = m.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let nonzero = |p: &[usize]| p.iter().enumerate().all(|(i, &k)| !m.get(i, k).is_zero());

    // Heap's algorithm
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut count = u64::from(nonzero(&p));
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            count += u64::from(nonzero(&p));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}
