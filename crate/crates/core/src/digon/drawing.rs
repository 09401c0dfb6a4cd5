//! How each double-cover edge passes the points inside its span, and a
//! polyline drawing along the transversal that realises those choices.

use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::DoubleCoverGraph;
use crate::error::{Error, Result};
use crate::transversal::TransversalContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Inside,
    Outside,
}

impl Decision {
    pub fn from_d(d: u8) -> Self {
        if d == 1 {
            Decision::Inside
        } else {
            Decision::Outside
        }
    }
    pub fn flip(self) -> Self {
        match self {
            Decision::Inside => Decision::Outside,
            Decision::Outside => Decision::Inside,
        }
    }
    fn sign(self) -> f64 {
        match self {
            Decision::Inside => -1.0,
            Decision::Outside => 1.0,
        }
    }
}

/// Keyed by (edge index in the cover, position on the transversal).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecisionTable {
    pub entries: BTreeMap<(usize, usize), Decision>,
}

impl DecisionTable {
    pub fn get(&self, edge: usize, pos: usize) -> Option<Decision> {
        self.entries.get(&(edge, pos)).copied()
    }
    pub fn set(&mut self, edge: usize, pos: usize, d: Decision) {
        self.entries.insert((edge, pos), d);
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn decision_table(ctx: &TransversalContext, g: &DoubleCoverGraph) -> Result<DecisionTable> {
    let len = g.len();
    let mut t = DecisionTable::default();
    for (k, e) in g.edges.iter().enumerate() {
        for p in e.span(len) {
            let d = ctx.d_value(&ctx.cyclic_sequence[p], e.from, e.to)?;
            t.set(k, p, Decision::from_d(d));
        }
    }
    Ok(t)
}

pub const EPS_FIRST: f64 = 0.05;
pub const EPS_SECOND: f64 = 0.09;
pub const SAMPLE_DEG: f64 = 5.0;
/// Sample grid phase; keeps samples off the midpoints between events.
pub const SAMPLE_PHASE: f64 = 1.25;
/// Base offset of the full drawing; edge k uses `EPS_BASE * (1 + k / |E|)`.
pub const EPS_BASE: f64 = 0.05;
/// Angles of the four endpoints in the two-edge oracle.
pub const ORACLE_ANGLES: [f64; 4] = [10.0, 100.0, 190.0, 280.0];

/// One edge drawn along the unit circle: it leaves `source` and arrives at
/// `target` (degrees, counterclockwise), passing each event angle at
/// radius `1 - eps` (inside) or `1 + eps` (outside).
#[derive(Clone, Debug)]
pub struct AnnulusEdge {
    pub source: f64,
    pub target: f64,
    pub eps: f64,
    pub events: Vec<(f64, Decision)>,
}

fn norm(a: f64) -> f64 {
    a.rem_euclid(360.0)
}

impl AnnulusEdge {
    fn unwrap_angle(&self, x: f64) -> f64 {
        let s = self.source;
        s + norm(x - s)
    }

    fn end(&self) -> f64 {
        let t = self.unwrap_angle(self.target);
        if t <= self.source {
            t + 360.0
        } else {
            t
        }
    }

    /// Whether `x` lies strictly inside the span.
    pub fn covers(&self, x: f64) -> bool {
        let u = self.unwrap_angle(x);
        u > self.source && u < self.end()
    }

    pub fn polyline(&self) -> Vec<(f64, f64)> {
        let s = self.source;
        let t = self.end();
        let mut knots = vec![(s, 0.0)];
        let mut ev: Vec<(f64, f64)> =
            self.events.iter().map(|&(x, d)| (self.unwrap_angle(x), d.sign() * self.eps)).collect();
        ev.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        knots.extend(ev);
        knots.push((t, 0.0));
        let mut angles: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let mut k = ((s - SAMPLE_PHASE) / SAMPLE_DEG).floor() + 1.0;
        while k * SAMPLE_DEG + SAMPLE_PHASE < t {
            angles.push(k * SAMPLE_DEG + SAMPLE_PHASE);
            k += 1.0;
        }
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let mut out = Vec::with_capacity(angles.len());
        let mut j = 0;
        for &x in &angles {
            while j + 2 < knots.len() && knots[j + 1].0 <= x {
                j += 1;
            }
            let (x0, r0) = knots[j];
            let (x1, r1) = knots[j + 1];
            let off = if x1 > x0 { r0 + (r1 - r0) * ((x - x0) / (x1 - x0)).clamp(0.0, 1.0) } else { r0 };
            let rad = 1.0 + off;
            let th = x.to_radians();
            out.push((rad * th.cos(), rad * th.sin()));
        }
        out
    }
}

fn orient(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

/// Number of proper crossings between two polylines.
pub fn polyline_crossings(p: &[(f64, f64)], q: &[(f64, f64)]) -> usize {
    let mut n = 0;
    for a in p.windows(2) {
        for b in q.windows(2) {
            let d1 = orient(a[0], a[1], b[0]);
            let d2 = orient(a[0], a[1], b[1]);
            let d3 = orient(b[0], b[1], a[0]);
            let d4 = orient(b[0], b[1], a[1]);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                n += 1;
            }
        }
    }
    n
}

/// Decision bits for two edges: bit 0 = first edge at the second edge's
/// source, bit 1 = first edge at the second edge's target, bit 2 = second
/// edge at the first edge's source, bit 3 = second edge at the first
/// edge's target. A set bit means inside. Bits for points outside the
/// relevant span are ignored.
pub type PairBits = u8;

fn bit(bits: PairBits, k: u8) -> Decision {
    if bits >> k & 1 == 1 {
        Decision::Inside
    } else {
        Decision::Outside
    }
}

/// Two-edge oracle. `angles` are the degrees of the first edge's source and
/// target and the second edge's source and target.
pub fn simulate_annulus_drawing(angles: [f64; 4], bits: PairBits) -> Result<usize> {
    for i in 0..4 {
        for j in i + 1..4 {
            if (norm(angles[i]) - norm(angles[j])).abs() < 1e-9 {
                return Err(Error::DegeneratePositions(format!("angles {} and {} coincide", angles[i], angles[j])));
            }
        }
    }
    let [a, b, g, d] = angles;
    let mut e1 = AnnulusEdge { source: a, target: b, eps: EPS_FIRST, events: Vec::new() };
    let mut e2 = AnnulusEdge { source: g, target: d, eps: EPS_SECOND, events: Vec::new() };
    for (x, k) in [(g, 0), (d, 1)] {
        if e1.covers(x) {
            e1.events.push((x, bit(bits, k)));
        }
    }
    for (x, k) in [(a, 2), (b, 3)] {
        if e2.covers(x) {
            e2.events.push((x, bit(bits, k)));
        }
    }
    Ok(polyline_crossings(&e1.polyline(), &e2.polyline()))
}

/// Angle of position `i` out of `len` in the full drawing.
pub fn position_angle(i: usize, len: usize) -> f64 {
    ORACLE_ANGLES[0] + 360.0 * i as f64 / len as f64
}

/// Every cover edge drawn with all its decisions, radially staggered.
pub fn full_drawing(g: &DoubleCoverGraph, t: &DecisionTable) -> Vec<AnnulusEdge> {
    let len = g.len();
    let m = g.edges.len().max(1) as f64;
    g.edges
        .iter()
        .enumerate()
        .map(|(k, e)| AnnulusEdge {
            source: position_angle(e.source, len),
            target: position_angle(e.target, len),
            eps: EPS_BASE * (1.0 + k as f64 / m),
            events: e
                .span(len)
                .into_iter()
                .filter_map(|p| t.get(k, p).map(|d| (position_angle(p, len), d)))
                .collect(),
        })
        .collect()
}

/// Offset of edge `k` at position `p` in the full drawing, or `None` when
/// `p` is outside its closed span.
fn full_offset(g: &DoubleCoverGraph, t: &DecisionTable, k: usize, p: usize) -> Result<Option<f64>> {
    let e = g.edges[k];
    if p == e.source || p == e.target {
        return Ok(Some(0.0));
    }
    if !e.contains(p, g.len()) {
        return Ok(None);
    }
    let d = t.get(k, p).ok_or_else(|| Error::Consistency(format!("edge {k} has no decision at {p}")))?;
    let m = g.edges.len() as f64;
    Ok(Some(d.sign() * EPS_BASE * (1.0 + k as f64 / m)))
}

/// Crossings of edges `i` and `j` in the full drawing. Offsets are linear
/// between consecutive positions, so each step shared by both edges holds
/// at most one crossing, present exactly when their order flips.
pub fn full_drawing_crossings(g: &DoubleCoverGraph, t: &DecisionTable, i: usize, j: usize) -> Result<usize> {
    let len = g.len();
    let steps = |k: usize| {
        let e = g.edges[k];
        let off = move |p: usize| (p + len - e.source) % len;
        move |p: usize| off(p) < off(e.target)
    };
    let (si, sj) = (steps(i), steps(j));
    let mut n = 0;
    for p in 0..len {
        if !(si(p) && sj(p)) {
            continue;
        }
        let q = (p + 1) % len;
        let (a0, b0, a1, b1) = (
            full_offset(g, t, i, p)?,
            full_offset(g, t, j, p)?,
            full_offset(g, t, i, q)?,
            full_offset(g, t, j, q)?,
        );
        match (a0, b0, a1, b1) {
            (Some(a0), Some(b0), Some(a1), Some(b1)) => {
                if (a0 - b0).signum() != (a1 - b1).signum() {
                    n += 1;
                }
            }
            _ => return Err(Error::Consistency("step outside a span".into())),
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_spans_do_not_cross() {
        for bits in 0..16 {
            assert_eq!(simulate_annulus_drawing([10.0, 100.0, 190.0, 280.0], bits).unwrap(), 0);
        }
    }

    #[test]
    fn nested_both_inside_even() {
        // first edge 10 -> 280 contains 100 and 190
        let n = simulate_annulus_drawing([10.0, 280.0, 100.0, 190.0], 0b0011).unwrap();
        assert_eq!(n % 2, 0);
        let n = simulate_annulus_drawing([10.0, 280.0, 100.0, 190.0], 0b0001).unwrap();
        assert_eq!(n % 2, 1);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            simulate_annulus_drawing([10.0, 10.0, 190.0, 280.0], 0),
            Err(Error::DegeneratePositions(_))
        ));
    }

    #[test]
    fn polyline_endpoints_on_circle() {
        let e = AnnulusEdge { source: 350.0, target: 20.0, eps: 0.05, events: vec![(5.0, Decision::Inside)] };
        let p = e.polyline();
        let r0 = (p[0].0.hypot(p[0].1) - 1.0).abs();
        let r1 = (p.last().unwrap().0.hypot(p.last().unwrap().1) - 1.0).abs();
        assert!(r0 < 1e-12 && r1 < 1e-12);
        assert!(p.len() >= 7);
    }
}
