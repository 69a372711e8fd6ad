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

//! Factors of regular bipartite multigraphs.
//!
//! A factor of degree `d` is a set of edges meeting every vertex exactly `d`
//! times. The main engine reads 1-factors off a `k`-edge-coloring: in a
//! `k`-regular graph every color class meets every vertex once. The other
//! tools here are graph transformations that move factors between graphs:
//! padding a bounded-degree graph to a regular one, and splitting each
//! vertex of a `mu * nu`-regular graph into `mu` vertices of degree `nu`.

use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::{color_edges, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{BipartiteMultigraph, EdgeId, Side, VertexId};

/// A set of edges meeting every vertex of the host exactly `degree` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub degree: usize,
    /// Sorted host edge ids.
    pub edges: Vec<EdgeId>,
}

impl Factor {
    pub fn new(degree: usize, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        Factor { degree, edges }
    }

    /// Checks the factor property against `g`.
    pub fn check(&self, g: &BipartiteMultigraph) -> Result<()> {
        let mut seen = vec![false; g.edge_count()];
        let mut deg = vec![0usize; g.vertex_count()];
        for &e in &self.edges {
            if e.0 >= g.edge_count() {
                return Err(Error::InvalidFactor("edge id out of range"));
            }
            if core::mem::replace(&mut seen[e.0], true) {
                return Err(Error::InvalidFactor("repeated edge"));
            }
            let (a, b) = g.ends(e);
            deg[g.slot(a)] += 1;
            deg[g.slot(b)] += 1;
        }
        if deg.iter().any(|&d| d != self.degree) {
            return Err(Error::InvalidFactor(
                "a vertex has the wrong number of factor edges",
            ));
        }
        Ok(())
    }
}

/// Edge-disjoint factors covering every edge of the host.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Every factor valid, factors pairwise disjoint, union equal to the
    /// edge set, degrees summing to the host degree.
    pub fn check(&self, g: &BipartiteMultigraph) -> Result<()> {
        let mut owner = vec![false; g.edge_count()];
        for f in &self.factors {
            f.check(g)?;
            for &e in &f.edges {
                if core::mem::replace(&mut owner[e.0], true) {
                    return Err(Error::InvalidFactor("factors overlap"));
                }
            }
        }
        if owner.iter().any(|&o| !o) {
            return Err(Error::InvalidFactor("factors do not cover every edge"));
        }
        let total: usize = self.factors.iter().map(|f| f.degree).sum();
        if g.vertex_count() > 0 && g.regular_degree() != Some(total) {
            return Err(Error::InvalidFactor(
                "factor degrees do not sum to the host degree",
            ));
        }
        Ok(())
    }

    /// Index of the factor holding each edge.
    pub fn to_coloring(&self, edge_count: usize) -> EdgeColoring {
        let mut colors = vec![0; edge_count];
        for (i, f) in self.factors.iter().enumerate() {
            for &e in &f.edges {
                colors[e.0] = i;
            }
        }
        EdgeColoring::new(self.factors.len(), colors)
    }
}

/// Which algorithm produces a 1-factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Color classes of a `k`-edge-coloring.
    #[default]
    Coloring,
    /// Recursive halving through degree splitting; degree must be `2^m`.
    PowerOfTwo,
}

fn regular(g: &BipartiteMultigraph) -> Result<usize> {
    g.regular_degree().ok_or(Error::NotRegular)
}

/// A perfect matching (1-factor) of a regular graph of positive degree.
pub fn perfect_matching(g: &BipartiteMultigraph) -> Result<Factor> {
    let k = regular(g)?;
    if k == 0 {
        if g.vertex_count() > 0 {
            return Err(Error::ZeroDegree);
        }
        return Ok(Factor::new(1, Vec::new()));
    }
    let coloring = color_edges(g, k)?;
    let class0 = coloring.classes().swap_remove(0);
    Ok(Factor::new(1, class0))
}

/// Decomposes a `k`-regular graph into `k` perfect matchings; factor `i` is
/// color class `i` of [`color_edges`].
pub fn one_factorization(g: &BipartiteMultigraph) -> Result<Factorization> {
    let k = regular(g)?;
    let coloring = color_edges(g, k)?;
    let factors = coloring
        .classes()
        .into_iter()
        .map(|edges| Factor::new(1, edges))
        .collect();
    Ok(Factorization { factors })
}

/// [`one_factorization`] or [`power_of_two_factorization`].
pub fn factorize(g: &BipartiteMultigraph, engine: Engine) -> Result<Factorization> {
    match engine {
        Engine::Coloring => one_factorization(g),
        Engine::PowerOfTwo => power_of_two_factorization(g),
    }
}

/// A `k`-regular bipartite host containing a bounded-degree graph.
///
/// The host holds the original graph, a mirrored copy of it and padding
/// edges joining each vertex to its copy. A copy sits on the opposite side
/// from its original: the copy of left vertex `i` is right vertex
/// `n_right + i`, the copy of right vertex `j` is left vertex `n_left + j`.
/// Original vertices keep their ids. Host edges `0..m` are the original
/// edges, `m..2m` their copies, and the padding follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularizationEmbedding {
    pub host: BipartiteMultigraph,
    pub k: usize,
    /// Host edge of each original edge.
    pub edge_map: Vec<EdgeId>,
    pub padding_edges: Vec<EdgeId>,
    n_left: usize,
    n_right: usize,
}

impl RegularizationEmbedding {
    /// Host vertex of an original vertex.
    pub fn vertex_map(&self, v: VertexId) -> VertexId {
        v
    }

    /// Host vertex of the copy of an original vertex.
    pub fn copy_of(&self, v: VertexId) -> VertexId {
        match v.side {
            Side::Left => VertexId::right(self.n_right + v.index),
            Side::Right => VertexId::left(self.n_left + v.index),
        }
    }
}

/// Embeds a graph of maximum degree at most `k` into a `k`-regular
/// bipartite graph on twice as many vertices. Each vertex of degree `a` is
/// joined to its copy by `k - a` parallel edges.
pub fn regularize(g: &BipartiteMultigraph, k: usize) -> Result<RegularizationEmbedding> {
    let max_degree = g.max_degree();
    if k < max_degree {
        return Err(Error::KTooSmall { k, max_degree });
    }
    let (nl, nr) = (g.n_left(), g.n_right());
    let side = nl + nr;
    let mut host = BipartiteMultigraph::empty(side, side);
    let m = g.edge_count();
    let mut edge_map = Vec::with_capacity(m);
    for &(l, r) in g.edge_list() {
        edge_map.push(host.push_edge(l, r)?);
    }
    // copy of (l, r): copy(r) on the left, copy(l) on the right
    for &(l, r) in g.edge_list() {
        host.push_edge(nl + r, nr + l)?;
    }
    let mut padding_edges = Vec::new();
    for l in 0..nl {
        for _ in g.degree(VertexId::left(l))..k {
            padding_edges.push(host.push_edge(l, nr + l)?);
        }
    }
    for r in 0..nr {
        for _ in g.degree(VertexId::right(r))..k {
            padding_edges.push(host.push_edge(nl + r, r)?);
        }
    }
    Ok(RegularizationEmbedding {
        host,
        k,
        edge_map,
        padding_edges,
        n_left: nl,
        n_right: nr,
    })
}

/// Colors `g` with `k` colors by 1-factorizing its regularization and
/// giving each edge the index of the factor its image lies in.
pub fn color_via_regularization(g: &BipartiteMultigraph, k: usize) -> Result<EdgeColoring> {
    let emb = regularize(g, k)?;
    let factorization = one_factorization(&emb.host)?;
    let host_colors = factorization.to_coloring(emb.host.edge_count());
    let colors = emb.edge_map.iter().map(|&h| host_colors.color(h)).collect();
    Ok(EdgeColoring::new(k, colors))
}

/// A `nu`-regular graph obtained by replacing every vertex of a
/// `mu * nu`-regular graph with `mu` vertices.
///
/// Vertex `v` becomes split vertices `v.index * mu + i` for `i < mu`, on the
/// same side. Split edge `i` corresponds to original edge `edge_map[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEmbedding {
    pub split: BipartiteMultigraph,
    pub mu: usize,
    pub nu: usize,
    pub edge_map: Vec<EdgeId>,
    n_left: usize,
    n_right: usize,
}

impl SplitEmbedding {
    /// The original vertex a split vertex came from.
    pub fn vertex_map(&self, v: VertexId) -> VertexId {
        VertexId {
            side: v.side,
            index: v.index / self.mu,
        }
    }

    /// The `mu` split vertices of an original vertex.
    pub fn fiber(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        let (side, base) = (v.side, v.index * self.mu);
        (0..self.mu).map(move |i| VertexId {
            side,
            index: base + i,
        })
    }

    pub fn original_sides(&self) -> (usize, usize) {
        (self.n_left, self.n_right)
    }
}

/// Splits each vertex of a regular graph of degree `mu * nu` into `mu`
/// vertices of degree `nu`. The edges at a vertex go to its copies in
/// consecutive blocks of `nu`, in adjacency order.
pub fn split_degree(g: &BipartiteMultigraph, mu: usize) -> Result<SplitEmbedding> {
    let degree = regular(g)?;
    if mu == 0 || degree % mu != 0 {
        return Err(Error::NotDivisible { degree, mu });
    }
    let nu = degree / mu;
    let m = g.edge_count();
    let mut pos_left = vec![0; m];
    let mut pos_right = vec![0; m];
    for v in g.vertices() {
        let pos = if v.side == Side::Left {
            &mut pos_left
        } else {
            &mut pos_right
        };
        for (p, &e) in g.incident(v).iter().enumerate() {
            pos[e.0] = p;
        }
    }
    let mut split = BipartiteMultigraph::empty(g.n_left() * mu, g.n_right() * mu);
    for (i, &(l, r)) in g.edge_list().iter().enumerate() {
        split.push_edge(l * mu + pos_left[i] / nu, r * mu + pos_right[i] / nu)?;
    }
    Ok(SplitEmbedding {
        split,
        mu,
        nu,
        edge_map: g.edge_ids().collect(),
        n_left: g.n_left(),
        n_right: g.n_right(),
    })
}

/// Lifts a degree-`d` factor of the split graph to a degree-`mu * d` factor
/// of the original graph.
pub fn merge_factor(se: &SplitEmbedding, f: &Factor) -> Result<Factor> {
    f.check(&se.split)?;
    let mut deg = vec![0usize; se.n_left + se.n_right];
    let mut edges = Vec::with_capacity(f.edges.len());
    for &e in &f.edges {
        let (a, b) = se.split.ends(e);
        let (a, b) = (se.vertex_map(a), se.vertex_map(b));
        deg[a.index] += 1;
        deg[se.n_left + b.index] += 1;
        edges.push(se.edge_map[e.0]);
    }
    let degree = se.mu * f.degree;
    if deg.iter().any(|&d| d != degree) {
        return Err(Error::InvalidFactor("merged edges are not degree-uniform"));
    }
    Ok(Factor::new(degree, edges))
}

/// A factor of degree `d` of a `k`-regular graph: the union of the first
/// `d` perfect matchings of [`one_factorization`]. The remaining edges form
/// a factor of degree `k - d`.
pub fn factor_of_degree(g: &BipartiteMultigraph, d: usize) -> Result<Factor> {
    let k = regular(g)?;
    if d > k {
        return Err(Error::DTooLarge { d, k });
    }
    let factorization = one_factorization(g)?;
    let edges = factorization.factors[..d]
        .iter()
        .flat_map(|f| f.edges.iter().copied())
        .collect();
    Ok(Factor::new(d, edges))
}

/// Complement of a factor in a regular graph.
pub fn complement(g: &BipartiteMultigraph, f: &Factor) -> Result<Factor> {
    let k = regular(g)?;
    if f.degree > k {
        return Err(Error::DTooLarge { d: f.degree, k });
    }
    let mut inside = vec![false; g.edge_count()];
    for &e in &f.edges {
        inside[e.0] = true;
    }
    let edges = g.edge_ids().filter(|e| !inside[e.0]).collect();
    Ok(Factor::new(k - f.degree, edges))
}

/// Splits a 2-regular graph into two perfect matchings by walking each of
/// its cycles (a double edge is a 2-cycle) and alternating. The lowest edge
/// of every cycle goes to the first matching.
pub fn split_cycles_factorization(g: &BipartiteMultigraph) -> Result<Factorization> {
    if regular(g)? != 2 {
        return Err(Error::NotRegular);
    }
    let m = g.edge_count();
    let mut side: Vec<Option<u8>> = vec![None; m];
    for start in g.edge_ids() {
        if side[start.0].is_some() {
            continue;
        }
        side[start.0] = Some(0);
        let mut parity = 0u8;
        let mut edge = start;
        let mut at = g.ends(start).1;
        loop {
            let next = match g.incident(at) {
                &[x, y] => {
                    if x == edge {
                        y
                    } else {
                        x
                    }
                }
                _ => return Err(Error::NotRegular),
            };
            if next == start {
                break;
            }
            parity ^= 1;
            side[next.0] = Some(parity);
            at = g.opposite(next, at);
            edge = next;
        }
        // even cycle: the last edge before closing has the other parity
        if parity != 1 {
            return Err(Error::InternalInvariantViolation(
                "odd cycle in a bipartite graph",
            ));
        }
    }
    let (mut f0, mut f1) = (Vec::new(), Vec::new());
    for (i, s) in side.into_iter().enumerate() {
        match s {
            Some(0) => f0.push(EdgeId(i)),
            _ => f1.push(EdgeId(i)),
        }
    }
    Ok(Factorization {
        factors: vec![Factor::new(1, f0), Factor::new(1, f1)],
    })
}

/// 1-factorization of a `2^m`-regular graph without edge coloring.
///
/// Split every vertex into `2^(m-1)` vertices of degree 2, split the cycles
/// of that graph into two matchings, merge each back into a factor of
/// degree `2^(m-1)` of the original, and recurse on both halves.
pub fn power_of_two_factorization(g: &BipartiteMultigraph) -> Result<Factorization> {
    let degree = regular(g)?;
    if degree == 0 {
        return Ok(Factorization::default());
    }
    if !degree.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(degree));
    }
    let mut factors = Vec::with_capacity(degree);
    halve(g, degree, &mut factors)?;
    Ok(Factorization { factors })
}

fn halve(g: &BipartiteMultigraph, degree: usize, out: &mut Vec<Factor>) -> Result<()> {
    if degree == 1 {
        out.push(Factor::new(1, g.edge_ids().collect()));
        return Ok(());
    }
    let mu = degree / 2;
    let se = split_degree(g, mu)?;
    let halves = split_cycles_factorization(&se.split)?;
    for matching in &halves.factors {
        let half = merge_factor(&se, matching)?;
        let (sub, map) = g.edge_subgraph(&half.edges);
        let first = out.len();
        halve(&sub, mu, out)?;
        for f in &mut out[first..] {
            for e in &mut f.edges {
                *e = map[e.0];
            }
            f.edges.sort_unstable();
        }
    }
    Ok(())
}

/// A perfect matching found through a degree split: split the `mu * nu`
/// regular graph into a `nu`-regular one, take a perfect matching there,
/// merge it into a factor of degree `mu`, then take a perfect matching of
/// that factor.
pub fn perfect_matching_via_split(g: &BipartiteMultigraph, mu: usize) -> Result<Factor> {
    let se = split_degree(g, mu)?;
    let inner = perfect_matching(&se.split)?;
    let merged = merge_factor(&se, &inner)?;
    let (sub, map) = g.edge_subgraph(&merged.edges);
    let m = perfect_matching(&sub)?;
    Ok(Factor::new(1, m.edges.iter().map(|e| map[e.0]).collect()))
}
