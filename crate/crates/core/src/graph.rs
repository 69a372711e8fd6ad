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

//! Bipartite multigraphs and the general graphs they are recognized from.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Which vertex class a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A vertex, addressed by its side and its 0-based index within that side.
///
/// Ordering puts every left vertex before every right vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub side: Side,
    pub index: usize,
}

impl VertexId {
    pub const fn left(index: usize) -> Self {
        VertexId {
            side: Side::Left,
            index,
        }
    }

    pub const fn right(index: usize) -> Self {
        VertexId {
            side: Side::Right,
            index,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.side {
            Side::Left => 'A',
            Side::Right => 'B',
        };
        write!(f, "{}{}", letter, self.index + 1)
    }
}

/// Dense 0-based edge identifier, assigned in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0
    }
}

/// A finite bipartite multigraph.
///
/// Every edge joins a left vertex to a right vertex. Parallel edges are
/// allowed and each gets its own [`EdgeId`]. Adjacency lists keep insertion
/// order, which is what makes every algorithm in this crate deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    n_left: usize,
    n_right: usize,
    edges: Vec<(usize, usize)>,
    adj_left: Vec<Vec<EdgeId>>,
    adj_right: Vec<Vec<EdgeId>>,
}

impl BipartiteMultigraph {
    /// Builds a graph from `(left, right)` index pairs. Edge `i` of the list
    /// gets `EdgeId(i)`.
    pub fn new<I>(n_left: usize, n_right: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n_left, n_right);
        for (l, r) in edges {
            g.push_edge(l, r)?;
        }
        Ok(g)
    }

    /// A graph with the given sides and no edges.
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        BipartiteMultigraph {
            n_left,
            n_right,
            edges: Vec::new(),
            adj_left: vec![Vec::new(); n_left],
            adj_right: vec![Vec::new(); n_right],
        }
    }

    pub(crate) fn push_edge(&mut self, l: usize, r: usize) -> Result<EdgeId> {
        if l >= self.n_left {
            return Err(Error::IndexOutOfBounds {
                index: l,
                bound: self.n_left,
            });
        }
        if r >= self.n_right {
            return Err(Error::IndexOutOfBounds {
                index: r,
                bound: self.n_right,
            });
        }
        let id = EdgeId(self.edges.len());
        self.edges.push((l, r));
        self.adj_left[l].push(id);
        self.adj_right[r].push(id);
        Ok(id)
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn vertex_count(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(left index, right index)` of an edge.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e.0]
    }

    /// Both endpoints as vertex ids, left first.
    #[inline]
    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (l, r) = self.edges[e.0];
        (VertexId::left(l), VertexId::right(r))
    }

    /// The endpoint of `e` that is not `v`.
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (l, r) = self.edges[e.0];
        match v.side {
            Side::Left => VertexId::right(r),
            Side::Right => VertexId::left(l),
        }
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + Clone {
        (0..self.edges.len()).map(EdgeId)
    }

    /// `(left, right)` index pairs in `EdgeId` order.
    pub fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// All vertices, left side first.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n_left)
            .map(VertexId::left)
            .chain((0..self.n_right).map(VertexId::right))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match v.side {
            Side::Left => v.index < self.n_left,
            Side::Right => v.index < self.n_right,
        }
    }

    /// Incident edges of `v` in insertion order. Panics if `v` is out of range.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        match v.side {
            Side::Left => &self.adj_left[v.index],
            Side::Right => &self.adj_right[v.index],
        }
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj_left
            .iter()
            .chain(&self.adj_right)
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// `Some(k)` iff every vertex has degree exactly `k`. A graph without
    /// vertices is 0-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degrees = self.adj_left.iter().chain(&self.adj_right).map(Vec::len);
        let k = match degrees.next() {
            Some(k) => k,
            None => return Some(0),
        };
        degrees.all(|d| d == k).then_some(k)
    }

    /// Flat index: left vertices `0..n_left`, right vertices after them.
    #[inline]
    pub(crate) fn slot(&self, v: VertexId) -> usize {
        match v.side {
            Side::Left => v.index,
            Side::Right => self.n_left + v.index,
        }
    }

    #[inline]
    pub(crate) fn vertex_at(&self, slot: usize) -> VertexId {
        if slot < self.n_left {
            VertexId::left(slot)
        } else {
            VertexId::right(slot - self.n_left)
        }
    }

    /// The spanning subgraph on the given edges. Returns the subgraph and,
    /// for each of its edges, the edge of `self` it came from.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> (BipartiteMultigraph, Vec<EdgeId>) {
        let mut sub = Self::empty(self.n_left, self.n_right);
        for &e in edges {
            let (l, r) = self.edges[e.0];
            sub.edges.push((l, r));
            let id = EdgeId(sub.edges.len() - 1);
            sub.adj_left[l].push(id);
            sub.adj_right[r].push(id);
        }
        (sub, edges.to_vec())
    }

    /// The same graph viewed as a general graph: left vertex `i` becomes
    /// `i`, right vertex `j` becomes `n_left + j`.
    pub fn to_general(&self) -> GeneralGraph {
        let n = self.vertex_count();
        let edges = self.edges.iter().map(|&(l, r)| (l, self.n_left + r));
        GeneralGraph::new(n, edges).expect("bipartite edges are never loops")
    }
}

/// An undirected multigraph with no assumed bipartition. Self-loops are
/// rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // (edge index, neighbor)
    adj: Vec<Vec<(usize, usize)>>,
}

impl GeneralGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = GeneralGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        };
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfBounds { index: x, bound: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let id = g.edges.len();
            g.edges.push((u, v));
            g.adj[u].push((id, v));
            g.adj[v].push((id, u));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `(edge index, neighbor)` pairs at `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }
}

/// One of the two vertex classes of a two-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    I,
    II,
}

impl Class {
    fn flip(self) -> Class {
        match self {
            Class::I => Class::II,
            Class::II => Class::I,
        }
    }
}

/// A closed walk of odd length: `edges[i]` joins `vertices[i]` to
/// `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddWalk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl OddWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that the walk is closed, follows edges of `g` and has odd
    /// length.
    pub fn is_valid_in(&self, g: &GeneralGraph) -> bool {
        let len = self.edges.len();
        if len.is_multiple_of(2) || self.vertices.len() != len {
            return false;
        }
        (0..len).all(|i| {
            let (a, b) = match g.edges.get(self.edges[i]) {
                Some(&e) => e,
                None => return false,
            };
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % len]);
            (a, b) == (u, v) || (a, b) == (v, u)
        })
    }
}

/// Outcome of [`two_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoColoring {
    /// Class of each vertex; every edge joins class I to class II.
    Classes(Vec<Class>),
    /// No two-coloring exists.
    OddWalk(OddWalk),
}

/// Splits the vertices into two classes with every edge crossing, or finds
/// an odd closed walk proving that no such split exists.
///
/// Breadth-first search from the lowest-index unvisited vertex, which is put
/// in class I. The witness is a simple odd cycle through the first
/// conflicting edge found.
pub fn two_coloring(g: &GeneralGraph) -> TwoColoring {
    let n = g.n;
    let mut class: Vec<Option<Class>> = vec![None; n];
    // (parent vertex, edge to parent)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();

    for root in 0..n {
        if class[root].is_some() {
            continue;
        }
        class[root] = Some(Class::I);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = class[u].unwrap();
            for &(e, w) in &g.adj[u] {
                match class[w] {
                    None => {
                        class[w] = Some(cu.flip());
                        parent[w] = Some((u, e));
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return TwoColoring::OddWalk(odd_cycle(&parent, &depth, u, w, e));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    TwoColoring::Classes(class.into_iter().map(Option::unwrap).collect())
}

fn odd_cycle(
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    u: usize,
    w: usize,
    uw: usize,
) -> OddWalk {
    // Climb both tree paths to their lowest common ancestor.
    let (mut a, mut b) = (u, w);
    let mut up_a = Vec::new();
    let mut up_b = Vec::new();
    while depth[a] > depth[b] {
        let (p, e) = parent[a].unwrap();
        up_a.push((a, e));
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, e) = parent[b].unwrap();
        up_b.push((b, e));
        b = p;
    }
    while a != b {
        let (pa, ea) = parent[a].unwrap();
        let (pb, eb) = parent[b].unwrap();
        up_a.push((a, ea));
        up_b.push((b, eb));
        a = pa;
        b = pb;
    }
    let lca = a;

    // lca -> ... -> u, then u -> w, then w -> ... -> lca
    let mut vertices = vec![lca];
    let mut edges = Vec::new();
    for &(v, e) in up_a.iter().rev() {
        edges.push(e);
        vertices.push(v);
    }
    edges.push(uw);
    for &(v, e) in &up_b {
        vertices.push(v);
        edges.push(e);
    }
    OddWalk { vertices, edges }
}

/// Two-colors `g` and relabels it as a bipartite multigraph.
///
/// Class I vertices become the left side and class II the right side, each
/// in increasing original index. Edge order is preserved. The second value
/// maps each original vertex to its new id.
pub fn as_bipartite(g: &GeneralGraph) -> Result<(BipartiteMultigraph, Vec<VertexId>)> {
    let classes = match two_coloring(g) {
        TwoColoring::Classes(c) => c,
        TwoColoring::OddWalk(witness) => return Err(Error::NotBipartite { witness }),
    };
    let mut relabel = Vec::with_capacity(g.n);
    let (mut n_left, mut n_right) = (0, 0);
    for c in &classes {
        match c {
            Class::I => {
                relabel.push(VertexId::left(n_left));
                n_left += 1;
            }
            Class::II => {
                relabel.push(VertexId::right(n_right));
                n_right += 1;
            }
        }
    }
    let edges = g.edges.iter().map(|&(u, v)| {
        let (a, b) = (relabel[u], relabel[v]);
        if a.side == Side::Left {
            (a.index, b.index)
        } else {
            (b.index, a.index)
        }
    });
    let bg = BipartiteMultigraph::new(n_left, n_right, edges)?;
    Ok((bg, relabel))
}

/// A connected component: sorted vertices and sorted edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Connected components, ordered by their smallest vertex.
pub fn components(g: &BipartiteMultigraph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        while let Some(s) = stack.pop() {
            let v = g.vertex_at(s);
            vertices.push(v);
            for &e in g.incident(v) {
                // count each edge once, from its left end
                if v.side == Side::Left {
                    edges.push(e);
                }
                let t = g.slot(g.opposite(e, v));
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        vertices.sort_unstable();
        edges.sort_unstable();
        out.push(Component { vertices, edges });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::fixtures;

    #[test]
    fn smallest_graphs() {
        let g = BipartiteMultigraph::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(g.degree(VertexId::left(0)), 1);
        assert_eq!(g.degree(VertexId::right(0)), 1);
        assert_eq!(g.regular_degree(), Some(1));

        let g = BipartiteMultigraph::new(1, 1, [(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.degree(VertexId::left(0)), 2);
        assert_eq!(g.incident(VertexId::right(0)), &[EdgeId(0), EdgeId(1)]);
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn out_of_bounds_rejected() {
        assert_eq!(
            BipartiteMultigraph::new(2, 1, [(0, 0), (1, 1)]),
            Err(Error::IndexOutOfBounds { index: 1, bound: 1 })
        );
        assert_eq!(
            GeneralGraph::new(3, [(0, 3)]),
            Err(Error::IndexOutOfBounds { index: 3, bound: 3 })
        );
        assert_eq!(GeneralGraph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn degree_queries() {
        let cube = fixtures::cube();
        assert_eq!(cube.vertex_count(), 8);
        assert_eq!(cube.edge_count(), 12);
        assert_eq!(cube.regular_degree(), Some(3));

        let path = fixtures::path2();
        assert_eq!(path.regular_degree(), None);
        assert_eq!(path.max_degree(), 2);

        assert_eq!(BipartiteMultigraph::empty(0, 0).regular_degree(), Some(0));
        assert_eq!(BipartiteMultigraph::empty(2, 3).regular_degree(), Some(0));
    }

    #[test]
    fn triangle_has_odd_witness() {
        let g = GeneralGraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        match two_coloring(&g) {
            TwoColoring::OddWalk(w) => {
                assert_eq!(w.len(), 3);
                assert!(w.is_valid_in(&g));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn cube_classes_are_coordinate_parity() {
        let g = fixtures::cube_general();
        let TwoColoring::Classes(classes) = two_coloring(&g) else {
            panic!("cube is bipartite");
        };
        for (v, c) in classes.iter().enumerate() {
            let even = (v as u32).count_ones().is_multiple_of(2);
            assert_eq!(*c == Class::I, even, "vertex {v}");
        }
        assert_eq!(classes.iter().filter(|&&c| c == Class::I).count(), 4);
    }

    #[test]
    fn petersen_witness_has_length_five() {
        let g = fixtures::petersen();
        let TwoColoring::OddWalk(w) = two_coloring(&g) else {
            panic!("petersen is not bipartite");
        };
        assert_eq!(w.len(), 5);
        assert!(w.is_valid_in(&g));
        let err = as_bipartite(&g).unwrap_err();
        assert_eq!(err.name(), "NotBipartite");
        assert_eq!(err.witness().unwrap().len(), 5);
    }

    #[test]
    fn as_bipartite_relabels() {
        let g = GeneralGraph::new(2, [(0, 1)]).unwrap();
        let (bg, map) = as_bipartite(&g).unwrap();
        assert_eq!((bg.n_left(), bg.n_right(), bg.edge_count()), (1, 1, 1));
        assert_eq!(map, vec![VertexId::left(0), VertexId::right(0)]);

        let g = GeneralGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (bg, map) = as_bipartite(&g).unwrap();
        assert_eq!((bg.n_left(), bg.n_right(), bg.edge_count()), (2, 2, 4));
        assert_eq!(bg.regular_degree(), Some(2));
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            let (a, b) = bg.ends(EdgeId(i));
            let mapped = [map[u], map[v]];
            assert!(mapped.contains(&a) && mapped.contains(&b));
        }
    }

    #[test]
    fn components_small_cases() {
        let g = BipartiteMultigraph::empty(2, 2);
        let cs = components(&g);
        assert_eq!(cs.len(), 4);
        assert!(cs
            .iter()
            .all(|c| c.vertices.len() == 1 && c.edges.is_empty()));

        let g = BipartiteMultigraph::new(2, 1, [(0, 0)]).unwrap();
        let cs = components(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].vertices, vec![VertexId::left(0), VertexId::right(0)]);
        assert_eq!(cs[1].vertices, vec![VertexId::left(1)]);
    }

    #[test]
    fn edge_subgraph_keeps_vertices() {
        let g = fixtures::k33();
        let (sub, map) = g.edge_subgraph(&[EdgeId(4), EdgeId(0)]);
        assert_eq!(sub.vertex_count(), 6);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.endpoints(EdgeId(0)), g.endpoints(EdgeId(4)));
        assert_eq!(map, vec![EdgeId(4), EdgeId(0)]);
    }
}
