use std::fmt;

use serde::Serialize;

use super::faces::faces_unchecked;
use super::{Arrangement, Dart};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OddDartCount { darts: usize },
    RotationNotPermutation,
    ReverseNotInvolution { dart: u32 },
    EdgeCurveMismatch { dart: u32 },
    CurveIdsNotDense { missing: u32 },
    TooFewCurves { curves: usize },
    VertexDegree { vertex: usize, degree: usize },
    BadVertexPattern { vertex: usize },
    TouchingNotAllowed { vertex: usize },
    CurveNotSimpleClosed { curve: u32 },
    PairIntersection { first: u32, second: u32, crossings: usize, touchings: usize },
    Disconnected { components: usize },
    Euler { vertices: usize, edges: usize, faces: usize },
    TransversalOutOfRange { curve: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            OddDartCount { darts } => write!(f, "odd number of darts ({darts})"),
            RotationNotPermutation => write!(f, "rotation is not a permutation"),
            ReverseNotInvolution { dart } => write!(f, "reverse not an involution at dart {dart}"),
            EdgeCurveMismatch { dart } => write!(f, "dart {dart} and its reverse lie on different curves"),
            CurveIdsNotDense { missing } => write!(f, "curve id {missing} is unused"),
            TooFewCurves { curves } => write!(f, "need at least two curves, found {curves}"),
            VertexDegree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}, expected 4"),
            BadVertexPattern { vertex } => write!(f, "vertex {vertex} is neither a crossing nor a touching"),
            TouchingNotAllowed { vertex } => write!(f, "vertex {vertex} is a touching but touchings are disabled"),
            CurveNotSimpleClosed { curve } => write!(f, "curve {curve} is not a single simple closed walk"),
            PairIntersection { first, second, crossings, touchings } => write!(
                f,
                "curves {first} and {second} meet in {crossings} crossings and {touchings} touchings"
            ),
            Disconnected { components } => write!(f, "map has {components} components"),
            Euler { vertices, edges, faces } => write!(
                f,
                "Euler characteristic V-E+F = {}-{}+{} is not 2",
                vertices, edges, faces
            ),
            TransversalOutOfRange { curve } => write!(f, "transversal marker {curve} is not a curve"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub curves: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum VertexKind {
    Crossing,
    Touching,
    Bad,
}

pub(crate) fn vertex_kind(a: &Arrangement, d: Dart) -> VertexKind {
    let ring = a.around(d);
    if ring.len() != 4 {
        return VertexKind::Bad;
    }
    let c: Vec<u32> = ring.iter().map(|&x| a.curve(x).0).collect();
    if c[0] == c[2] && c[1] == c[3] && c[0] != c[1] {
        VertexKind::Crossing
    } else if (c[0] == c[1] && c[2] == c[3] && c[0] != c[2]) || (c[1] == c[2] && c[3] == c[0] && c[1] != c[3]) {
        VertexKind::Touching
    } else {
        VertexKind::Bad
    }
}

pub fn validate(a: &Arrangement) -> ValidationReport {
    let mut v = Vec::new();
    let nd = a.dart_count();
    let n = a.curve_count();
    let mut report = ValidationReport {
        valid: false,
        curves: n,
        vertices: a.vertex_count(),
        edges: nd / 2,
        faces: 0,
        violations: Vec::new(),
    };

    if !nd.is_multiple_of(2) {
        v.push(Violation::OddDartCount { darts: nd });
    }
    let mut seen = vec![false; nd];
    let mut perm = true;
    for d in a.darts() {
        let r = a.rot(d).ix();
        if seen[r] {
            perm = false;
        }
        seen[r] = true;
    }
    if !perm {
        v.push(Violation::RotationNotPermutation);
    }
    for d in a.darts() {
        let r = a.rev(d);
        if r == d || a.rev(r) != d {
            v.push(Violation::ReverseNotInvolution { dart: d.0 });
        } else if a.curve(r) != a.curve(d) && d < r {
            v.push(Violation::EdgeCurveMismatch { dart: d.0 });
        }
    }
    let mut used = vec![false; n];
    for d in a.darts() {
        used[a.curve(d).ix()] = true;
    }
    if let Some(m) = used.iter().position(|u| !u) {
        v.push(Violation::CurveIdsNotDense { missing: m as u32 });
    }
    if n < 2 {
        v.push(Violation::TooFewCurves { curves: n });
    }
    if let Some(t) = a.transversal() {
        if t.ix() >= n {
            v.push(Violation::TransversalOutOfRange { curve: t.0 });
        }
    }
    if !a.is_sound() {
        report.violations = v;
        return report;
    }

    // vertices
    let reps = a.vertex_darts();
    let mut cross = vec![vec![0usize; n]; n];
    let mut touch = vec![vec![0usize; n]; n];
    let mut vertex_ok = true;
    for (vid, &d) in reps.iter().enumerate() {
        let ring = a.around(d);
        if ring.len() != 4 {
            v.push(Violation::VertexDegree { vertex: vid, degree: ring.len() });
            vertex_ok = false;
            continue;
        }
        match vertex_kind(a, d) {
            VertexKind::Crossing => {
                let (x, y) = (a.curve(ring[0]).ix(), a.curve(ring[1]).ix());
                cross[x.min(y)][x.max(y)] += 1;
            }
            VertexKind::Touching => {
                if !a.touch_allowed() {
                    v.push(Violation::TouchingNotAllowed { vertex: vid });
                }
                let mut cs: Vec<usize> = ring.iter().map(|&r| a.curve(r).ix()).collect();
                cs.sort();
                cs.dedup();
                touch[cs[0]][cs[1]] += 1;
            }
            VertexKind::Bad => {
                v.push(Violation::BadVertexPattern { vertex: vid });
                vertex_ok = false;
            }
        }
    }

    // each curve is one closed walk in each direction
    if vertex_ok {
        for c in 0..n as u32 {
            let darts: Vec<Dart> = a.darts().filter(|&d| a.curve(d).0 == c).collect();
            if darts.is_empty() {
                continue;
            }
            let walk = a.curve_walk(darts[0]);
            let mut mark = vec![0u8; nd];
            let mut ok = walk.len() * 2 == darts.len();
            for &w in &walk {
                if a.curve(w).0 != c || mark[w.ix()] != 0 {
                    ok = false;
                    break;
                }
                mark[w.ix()] = 1;
            }
            if ok {
                for &w in &walk {
                    let r = a.rev(w);
                    if mark[r.ix()] != 0 {
                        ok = false;
                        break;
                    }
                    mark[r.ix()] = 2;
                }
            }
            if ok {
                ok = darts.iter().all(|d| mark[d.ix()] != 0);
            }
            if !ok {
                v.push(Violation::CurveNotSimpleClosed { curve: c });
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let (c, t) = (cross[x][y], touch[x][y]);
                let ok = (c == 2 && t == 0) || (a.touch_allowed() && c == 0 && t == 1);
                if !ok {
                    v.push(Violation::PairIntersection {
                        first: x as u32,
                        second: y as u32,
                        crossings: c,
                        touchings: t,
                    });
                }
            }
        }
    }

    // connectivity and Euler
    let f = faces_unchecked(a);
    report.faces = f.len();
    let nv = a.vertex_count();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for d in a.darts() {
        let (x, y) = (root(&mut parent, a.vertex(d)), root(&mut parent, a.head(d)));
        if x != y {
            parent[x] = y;
        }
    }
    let comps = (0..nv).filter(|&x| root(&mut parent, x) == x).count();
    if comps != 1 {
        v.push(Violation::Disconnected { components: comps });
    }
    let (vv, ee, ff) = (nv as i64, (nd / 2) as i64, f.len() as i64);
    if vv - ee + ff != 2 {
        v.push(Violation::Euler { vertices: nv, edges: nd / 2, faces: f.len() });
    }

    report.valid = v.is_empty();
    report.violations = v;
    report
}

impl Arrangement {
    pub fn ensure_valid(&self) -> crate::error::Result<()> {
        let r = validate(self);
        if r.valid {
            Ok(())
        } else {
            Err(crate::error::Error::Invalid(r.messages().join("; ")))
        }
    }
}
