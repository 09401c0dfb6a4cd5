//! SVG of the double cover drawn along the transversal.

use std::fmt::Write as _;

use crate::arrangement::{normalize_outer, prune, Arrangement};
use crate::digon::drawing::{full_drawing, position_angle, Decision, DecisionTable};
use crate::digon::graph::DoubleCoverGraph;
use crate::digon::parity::{pair_parity, Parity};
use crate::digon::verify::{pipeline, split_transversal, Pipeline};
use crate::error::{Error, Result};
use crate::transversal::{BaseChoice, TransversalContext};

const SIZE: f64 = 640.0;
const RADIUS: f64 = 240.0;
const LABEL_RADIUS: f64 = 1.14;

const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];

fn px(p: (f64, f64)) -> (f64, f64) {
    // svg y grows downwards; flip so counterclockwise stays counterclockwise
    (SIZE / 2.0 + RADIUS * p.0, SIZE / 2.0 - RADIUS * p.1)
}

fn on_circle(deg: f64, r: f64) -> (f64, f64) {
    let t = deg.to_radians();
    px((r * t.cos(), r * t.sin()))
}

/// Independent pairs whose table parity is odd.
pub fn odd_pairs(g: &DoubleCoverGraph, t: &DecisionTable) -> Result<Vec<(usize, usize)>> {
    let m = g.edges.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if g.independent(i, j) && pair_parity(g, t, i, j)?.parity == Parity::Odd {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Draws `g` with the transversal as the unit circle. `labels[i]` names
/// position `i`; every pass decision in `t` is marked on its edge.
pub fn render_annulus(labels: &[String], g: &DoubleCoverGraph, t: &DecisionTable) -> Result<String> {
    if labels.len() != g.len() {
        return Err(Error::Consistency(format!("{} labels for {} positions", labels.len(), g.len())));
    }
    let odd = odd_pairs(g, t)?;
    let len = g.len();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<circle class="transversal" cx="{:.3}" cy="{:.3}" r="{RADIUS:.3}" fill="none" stroke="#bbbbbb" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        SIZE / 2.0,
        SIZE / 2.0
    );
    for (k, (e, ae)) in g.edges.iter().zip(full_drawing(g, t)).enumerate() {
        let pts: Vec<String> =
            ae.polyline().into_iter().map(px).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let colour = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<polyline class="edge" data-edge="{k}" data-from="{}" data-to="{}" points="{}" fill="none" stroke="{colour}" stroke-width="1.6"/>"#,
            labels[e.source],
            labels[e.target],
            pts.join(" ")
        );
        for (p, d) in e.span(len).into_iter().filter_map(|p| t.get(k, p).map(|d| (p, d))) {
            let sign = if d == Decision::Inside { -1.0 } else { 1.0 };
            let (x, y) = on_circle(position_angle(p, len), 1.0 + sign * ae.eps);
            let name = if d == Decision::Inside { "inside" } else { "outside" };
            let _ = writeln!(
                s,
                r#"<circle class="pass {name}" data-edge="{k}" data-at="{}" cx="{x:.3}" cy="{y:.3}" r="2.2" fill="{colour}"/>"#,
                labels[p]
            );
        }
    }
    for (i, l) in labels.iter().enumerate() {
        let a = position_angle(i, len);
        let (x, y) = on_circle(a, 1.0);
        let (lx, ly) = on_circle(a, LABEL_RADIUS);
        let _ = writeln!(s, r##"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="4" fill="#000000"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-family="monospace" font-size="13" text-anchor="middle" dominant-baseline="middle">{l}</text>"#
        );
    }
    let _ = writeln!(s, "<!-- edges: {} -->", g.edges.len());
    let _ = writeln!(s, "<!-- odd pairs: {} {:?} -->", odd.len(), odd);
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_pipeline(p: &Pipeline) -> Result<String> {
    render_annulus(&p.ctx.labels(), &p.cover, &p.table)
}

/// Renders an arrangement: an embedded transversal is used as is, otherwise
/// curves without digons are pruned and the default transversal inserted.
pub fn render_arrangement(a: &Arrangement) -> Result<String> {
    let p = match split_transversal(a)? {
        Some((base, c)) => Pipeline::from_context(&base, TransversalContext::from_augmented(a.clone(), c)?)?,
        None => {
            let (n, _) = normalize_outer(a)?;
            let (pr, _) = prune(&n)?;
            if pr.curve_count() < 3 {
                return Err(Error::UnsupportedParameter("fewer than three curves carry digons".into()));
            }
            pipeline(&normalize_outer(&pr)?.0, BaseChoice::Default)?
        }
    };
    render_pipeline(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::digon::graph::CoverVertex;
    use crate::fixtures;
    use crate::transversal::PointKind;
    use crate::CurveId;

    #[test]
    fn empty_cover_draws_points_only() {
        let vertices: Vec<CoverVertex> = (0..6)
            .map(|i| CoverVertex {
                curve: CurveId(i as u32 / 2),
                kind: if i % 2 == 0 { PointKind::In } else { PointKind::Out },
                position: i,
            })
            .collect();
        let labels: Vec<String> = (0..6).map(|i| format!("p{i}")).collect();
        let g = DoubleCoverGraph { vertices, edges: vec![] };
        let s = render_annulus(&labels, &g, &DecisionTable::default()).unwrap();
        assert_eq!(s.matches("class=\"vertex\"").count(), 6);
        assert_eq!(s.matches("<text").count(), 6);
        assert!(!s.contains("<polyline"));
        assert!(s.contains("<!-- odd pairs: 0 [] -->"));
    }

    #[test]
    fn grunbaum6_twenty_edges_no_odd_pairs() {
        let s = render_arrangement(&constructions::grunbaum(6).unwrap()).unwrap();
        assert_eq!(s.matches("class=\"edge\"").count(), 20);
        assert!(s.contains("<!-- edges: 20 -->"));
        assert!(s.contains("<!-- odd pairs: 0 [] -->"));
    }

    #[test]
    fn figure4_marks_both_passes() {
        let s = render_arrangement(&fixtures::load("figure4").unwrap()).unwrap();
        assert_eq!(s.matches("class=\"edge\"").count(), 6);
        let edge = s
            .lines()
            .find(|l| l.contains("data-from=\"2out\" data-to=\"0in\""))
            .and_then(|l| l.split("data-edge=\"").nth(1))
            .and_then(|r| r.split('"').next())
            .unwrap()
            .to_string();
        let pass = |at: &str| {
            s.lines()
                .find(|l| l.contains("class=\"pass") && l.contains(&format!("data-edge=\"{edge}\" data-at=\"{at}\"")))
                .unwrap()
                .to_string()
        };
        assert!(pass("1in").contains("outside"));
        assert!(pass("1out").contains("inside"));
    }

    #[test]
    fn deterministic_bytes() {
        let a = constructions::grunbaum(5).unwrap();
        assert_eq!(render_arrangement(&a).unwrap(), render_arrangement(&a).unwrap());
    }
}
