use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::{digons_excluding, Arrangement, CurveId};
use crate::error::{Error, Result};
use crate::transversal::{PointKind, TransversalContext};

/// One vertex per curve, one edge per digon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigonGraph {
    pub n: usize,
    pub edges: Vec<(CurveId, CurveId)>,
}

impl DigonGraph {
    pub fn degree(&self, c: CurveId) -> usize {
        self.edges.iter().filter(|e| e.0 == c || e.1 == c).count()
    }
}

/// Digon graph of `a`, ignoring its transversal if it has one. Fails if
/// a pair of curves bounds two digons.
pub fn digon_graph(a: &Arrangement) -> Result<DigonGraph> {
    let excl = a.transversal();
    let mut edges: Vec<(CurveId, CurveId)> = digons_excluding(a, excl)?.into_iter().map(|d| d.curves).collect();
    edges.sort();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Consistency(format!("curves {} and {} bound two digons", w[0].0, w[0].1)));
    }
    let n = a.curve_count() - usize::from(excl.is_some());
    Ok(DigonGraph { n, edges })
}

/// Directed edge of the double cover from `from`'s exit point to `to`'s
/// entry point, running counterclockwise along the transversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverEdge {
    pub from: CurveId,
    pub to: CurveId,
    pub source: usize,
    pub target: usize,
}

impl CoverEdge {
    /// Positions strictly inside the span, in travel order.
    pub fn span(&self, len: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = (self.source + 1) % len;
        while i != self.target {
            out.push(i);
            i = (i + 1) % len;
        }
        out
    }

    pub fn contains(&self, pos: usize, len: usize) -> bool {
        let off = |p: usize| (p + len - self.source) % len;
        pos != self.source && off(pos) < off(self.target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVertex {
    pub curve: CurveId,
    pub kind: PointKind,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverGraph {
    pub vertices: Vec<CoverVertex>,
    pub edges: Vec<CoverEdge>,
}

impl DoubleCoverGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
    /// Two edges are independent when they share no endpoint.
    pub fn independent(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.edges[i], self.edges[j]);
        let ends = [a.source, a.target];
        !ends.contains(&b.source) && !ends.contains(&b.target)
    }
    /// Simple undirected graph on the cover's positions.
    pub fn abstract_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }
}

pub fn double_cover(g: &DigonGraph, ctx: &TransversalContext) -> Result<DoubleCoverGraph> {
    let vertices: Vec<CoverVertex> = ctx
        .cyclic_sequence
        .iter()
        .map(|p| CoverVertex { curve: p.curve, kind: p.kind, position: p.position })
        .collect();
    let mut at: BTreeMap<(CurveId, PointKind), usize> = BTreeMap::new();
    for v in &vertices {
        at.insert((v.curve, v.kind), v.position);
    }
    let pos = |c: CurveId, k: PointKind| at.get(&(c, k)).copied().ok_or(Error::MissingDigonRegion(c));
    let mut edges = Vec::with_capacity(2 * g.edges.len());
    for &(x, y) in &g.edges {
        for (u, v) in [(x, y), (y, x)] {
            edges.push(CoverEdge { from: u, to: v, source: pos(u, PointKind::Out)?, target: pos(v, PointKind::In)? });
        }
    }
    Ok(DoubleCoverGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::transversal::insert_transversal;

    #[test]
    fn grunbaum6_cover() {
        let a = constructions::grunbaum(6).unwrap();
        let g = digon_graph(&a).unwrap();
        assert_eq!(g.edges.len(), 10);
        let ctx = insert_transversal(&a).unwrap();
        let h = double_cover(&g, &ctx).unwrap();
        assert_eq!(h.len(), 12);
        assert_eq!(h.edges.len(), 20);
        for e in &h.edges {
            assert_eq!(h.vertices[e.source].kind, PointKind::Out);
            assert_eq!(h.vertices[e.target].kind, PointKind::In);
        }
    }

    #[test]
    fn span_membership() {
        let e = CoverEdge { from: CurveId(0), to: CurveId(1), source: 5, target: 1 };
        assert_eq!(e.span(6), vec![0]);
        assert!(e.contains(0, 6));
        assert!(!e.contains(1, 6) && !e.contains(5, 6) && !e.contains(3, 6));
    }

    #[test]
    fn venn3_graph_empty() {
        assert!(digon_graph(&constructions::venn3()).unwrap().edges.is_empty());
    }
}
