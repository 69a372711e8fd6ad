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

//! Proper edge coloring of bipartite multigraphs with any `k >= max_degree`
//! colors.
//!
//! Edges are colored one at a time in `EdgeId` order. When the new edge
//! `e = AB` finds no color free at both ends, let `c1` be the lowest color
//! missing at `B` (it is then present at `A`) and `c2` the lowest color
//! missing at `A`. The maximal path leaving `A` whose edges alternate
//! `c1, c2, c1, ...` cannot reach `B` in a bipartite graph, so swapping
//! `c1` and `c2` along it frees `c1` at `A` without touching `B`, and `e`
//! takes `c1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{BipartiteMultigraph, EdgeId, VertexId};

/// A color, `0..k`.
pub type ColorIndex = usize;

const EMPTY: usize = usize::MAX;

/// A total assignment of colors `0..k` to the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    k: usize,
    colors: Vec<ColorIndex>,
}

impl EdgeColoring {
    /// Wraps a raw assignment, indexed by `EdgeId`. Use [`verify_coloring`]
    /// to check it against a graph.
    pub fn new(k: usize, colors: Vec<ColorIndex>) -> Self {
        EdgeColoring { k, colors }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> ColorIndex {
        self.colors[e.0]
    }

    pub fn colors(&self) -> &[ColorIndex] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Edges of each color, `k` lists in color order, each sorted.
    pub fn classes(&self) -> Vec<Vec<EdgeId>> {
        let mut classes = vec![Vec::new(); self.k];
        for (i, &c) in self.colors.iter().enumerate() {
            classes[c].push(EdgeId(i));
        }
        classes
    }

    pub fn distinct_colors(&self) -> usize {
        let mut used = vec![false; self.k];
        for &c in &self.colors {
            used[c] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }
}

/// Why a coloring is not proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringViolation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    OutOfRange {
        edge: EdgeId,
        color: ColorIndex,
        k: usize,
    },
    Clash {
        vertex: VertexId,
        first: EdgeId,
        second: EdgeId,
        color: ColorIndex,
    },
}

impl fmt::Display for ColoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringViolation::WrongLength { expected, found } => {
                write!(
                    f,
                    "coloring has {found} entries, graph has {expected} edges"
                )
            }
            ColoringViolation::OutOfRange { edge, color, k } => {
                write!(f, "edge {} has color {color}, not below {k}", edge.0)
            }
            ColoringViolation::Clash {
                vertex,
                first,
                second,
                color,
            } => write!(
                f,
                "edges {} and {} share color {color} at {vertex}",
                first.0, second.0
            ),
        }
    }
}

/// Checks that `c` colors every edge of `g` with a color below `c.k()` and
/// that no two edges at a vertex share a color. Reports the first problem.
pub fn verify_coloring(
    g: &BipartiteMultigraph,
    c: &EdgeColoring,
) -> core::result::Result<(), ColoringViolation> {
    if c.colors.len() != g.edge_count() {
        return Err(ColoringViolation::WrongLength {
            expected: g.edge_count(),
            found: c.colors.len(),
        });
    }
    for (i, &color) in c.colors.iter().enumerate() {
        if color >= c.k {
            return Err(ColoringViolation::OutOfRange {
                edge: EdgeId(i),
                color,
                k: c.k,
            });
        }
    }
    let mut at_vertex: Vec<(ColorIndex, EdgeId)> = Vec::new();
    for v in g.vertices() {
        at_vertex.clear();
        at_vertex.extend(g.incident(v).iter().map(|&e| (c.color(e), e)));
        at_vertex.sort_unstable();
        for pair in at_vertex.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(ColoringViolation::Clash {
                    vertex: v,
                    first: pair[0].1,
                    second: pair[1].1,
                    color: pair[0].0,
                });
            }
        }
    }
    Ok(())
}

/// The maximal two-color alternating path that an insertion swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub start: VertexId,
    /// `(c1, c2)`: the first edge had `c1` before the swap.
    pub colors: (ColorIndex, ColorIndex),
    pub edges: Vec<EdgeId>,
    /// `start, A1, ..., Ar`, one more than `edges`.
    pub vertices: Vec<VertexId>,
}

/// A proper coloring of some of the edges of `g`, with per-vertex lookup of
/// the edge holding each color.
#[derive(Debug, Clone)]
pub struct PartialColoring<'g> {
    g: &'g BipartiteMultigraph,
    k: usize,
    colors: Vec<Option<ColorIndex>>,
    // Per-vertex table of `width` slots: the edge holding each color.
    width: usize,
    slots: Vec<usize>,
    // Visit stamps for path construction.
    stamp: Vec<u32>,
    generation: u32,
}

/// Colors that can ever be chosen. Each end of a new edge sees at most
/// `max_degree - 1` colored edges, so the lowest color free at both ends is
/// below `2 * max_degree - 1`, and both swap colors are lower still.
fn table_width(k: usize, max_degree: usize) -> usize {
    k.min((2 * max_degree).saturating_sub(1).max(1))
}

impl<'g> PartialColoring<'g> {
    /// Nothing colored yet.
    pub fn new(g: &'g BipartiteMultigraph, k: usize) -> Self {
        let width = table_width(k, g.max_degree());
        PartialColoring {
            g,
            k,
            colors: vec![None; g.edge_count()],
            width,
            slots: vec![EMPTY; g.vertex_count() * width],
            stamp: vec![0; g.vertex_count()],
            generation: 0,
        }
    }

    /// Starts from an existing assignment, which must be proper with colors
    /// below `k`.
    pub fn from_assignment(
        g: &'g BipartiteMultigraph,
        k: usize,
        colors: Vec<Option<ColorIndex>>,
    ) -> Result<Self> {
        if colors.len() != g.edge_count() {
            return Err(Error::InvalidPartialColoring(
                "assignment length differs from edge count",
            ));
        }
        let top = colors.iter().flatten().copied().max().map_or(0, |c| c + 1);
        if top > k {
            return Err(Error::InvalidPartialColoring("color out of range"));
        }
        let mut pc = PartialColoring::new(g, k);
        if top > pc.width {
            pc.width = top;
            pc.slots = vec![EMPTY; g.vertex_count() * top];
        }
        for (i, c) in colors.into_iter().enumerate() {
            if let Some(c) = c {
                let (a, b) = g.ends(EdgeId(i));
                if pc.slot(a, c) != EMPTY || pc.slot(b, c) != EMPTY {
                    return Err(Error::InvalidPartialColoring(
                        "two edges share a color at a vertex",
                    ));
                }
                pc.set(EdgeId(i), c);
            }
        }
        Ok(pc)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &'g BipartiteMultigraph {
        self.g
    }

    pub fn color(&self, e: EdgeId) -> Option<ColorIndex> {
        self.colors[e.0]
    }

    pub fn assignment(&self) -> &[Option<ColorIndex>] {
        &self.colors
    }

    #[inline]
    fn slot(&self, v: VertexId, c: ColorIndex) -> usize {
        self.slots[self.g.slot(v) * self.width + c]
    }

    #[inline]
    fn slot_mut(&mut self, v: VertexId, c: ColorIndex) -> &mut usize {
        &mut self.slots[self.g.slot(v) * self.width + c]
    }

    fn set(&mut self, e: EdgeId, c: ColorIndex) {
        let (a, b) = self.g.ends(e);
        *self.slot_mut(a, c) = e.0;
        *self.slot_mut(b, c) = e.0;
        self.colors[e.0] = Some(c);
    }

    fn unset(&mut self, e: EdgeId) {
        if let Some(c) = self.colors[e.0].take() {
            let (a, b) = self.g.ends(e);
            *self.slot_mut(a, c) = EMPTY;
            *self.slot_mut(b, c) = EMPTY;
        }
    }

    fn colored_degree(&self, v: VertexId) -> usize {
        let base = self.g.slot(v) * self.width;
        self.slots[base..base + self.width]
            .iter()
            .filter(|&&s| s != EMPTY)
            .count()
    }

    fn lowest_missing(&self, v: VertexId) -> Option<ColorIndex> {
        (0..self.width).find(|&c| self.slot(v, c) == EMPTY)
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        self.generation
    }

    /// Colors the uncolored edge `e`, swapping one alternating path first if
    /// no color is free at both of its ends.
    ///
    /// Only `e` and the edges of the returned path change color. Both ends
    /// of `e` must have fewer than `k` colored edges.
    pub fn insert_and_recolor(&mut self, e: EdgeId) -> Result<Option<AlternatingPath>> {
        if e.0 >= self.colors.len() {
            return Err(Error::InvalidPartialColoring("edge id out of range"));
        }
        if self.colors[e.0].is_some() {
            return Err(Error::InvalidPartialColoring("edge is already colored"));
        }
        let (a, b) = self.g.ends(e);
        if self.colored_degree(a) >= self.k || self.colored_degree(b) >= self.k {
            return Err(Error::InvalidPartialColoring(
                "an endpoint has no free color",
            ));
        }

        if let Some(c) =
            (0..self.width).find(|&c| self.slot(a, c) == EMPTY && self.slot(b, c) == EMPTY)
        {
            self.set(e, c);
            return Ok(None);
        }

        // Every color missing at B is present at A.
        let c1 = self
            .lowest_missing(b)
            .ok_or(Error::InternalInvariantViolation(
                "no free color at an endpoint with spare capacity",
            ))?;
        let c2 = self
            .lowest_missing(a)
            .ok_or(Error::InternalInvariantViolation(
                "no free color at an endpoint with spare capacity",
            ))?;

        let generation = self.next_generation();
        self.stamp[self.g.slot(a)] = generation;
        let mut edges = Vec::new();
        let mut vertices = vec![a];
        let (mut cur, mut want) = (a, c1);
        loop {
            let f = self.slot(cur, want);
            if f == EMPTY {
                break;
            }
            let next = self.g.opposite(EdgeId(f), cur);
            if next == b {
                return Err(Error::InternalInvariantViolation(
                    "alternating path reached the other end of the new edge",
                ));
            }
            let s = self.g.slot(next);
            if self.stamp[s] == generation {
                return Err(Error::InternalInvariantViolation(
                    "alternating path revisited a vertex",
                ));
            }
            self.stamp[s] = generation;
            edges.push(EdgeId(f));
            vertices.push(next);
            cur = next;
            want = if want == c1 { c2 } else { c1 };
        }

        for &f in &edges {
            self.unset(f);
        }
        for (i, &f) in edges.iter().enumerate() {
            self.set(f, if i % 2 == 0 { c2 } else { c1 });
        }
        self.set(e, c1);
        Ok(Some(AlternatingPath {
            start: a,
            colors: (c1, c2),
            edges,
            vertices,
        }))
    }

    /// Finishes the coloring; fails if some edge is still uncolored.
    pub fn into_coloring(self) -> Result<EdgeColoring> {
        let colors = self
            .colors
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::InvalidPartialColoring("an edge is uncolored"))?;
        Ok(EdgeColoring { k: self.k, colors })
    }
}

/// Properly colors the edges of `g` with colors `0..k`.
///
/// Deterministic: edges are inserted in `EdgeId` order and every choice
/// takes the lowest qualifying color.
pub fn color_edges(g: &BipartiteMultigraph, k: usize) -> Result<EdgeColoring> {
    let max_degree = g.max_degree();
    if k < max_degree {
        return Err(Error::KTooSmall { k, max_degree });
    }
    let mut partial = PartialColoring::new(g, k);
    for e in g.edge_ids() {
        partial.insert_and_recolor(e)?;
    }
    partial.into_coloring()
}
