use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::faces::faces_unchecked;
use super::regions::{digons, normalize_outer};
use super::validate::{vertex_kind, VertexKind};
use super::{Arrangement, CurveId, Dart, MapEdit};
use crate::error::{Error, Result};

/// One crossing of a new curve with an existing edge. The new curve passes
/// from the face on the right of `dart` to the face on its left, at relative
/// position `pos` (0 = tail, 1 = head) along `dart`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub dart: Dart,
    pub pos: f64,
}

impl Crossing {
    pub fn new(dart: Dart, pos: f64) -> Self {
        Crossing { dart, pos }
    }
}

/// Adds a closed curve crossing the listed edges in order. The new curve
/// gets the next free id. The caller is responsible for validating the result;
/// consecutive crossings must share a face or the result is not planar.
pub fn insert_curve(a: &Arrangement, crossings: &[Crossing]) -> Result<Arrangement> {
    a.require_sound()?;
    let m = crossings.len();
    if m < 2 {
        return Err(Error::SurgeryFailed("a closed curve needs at least two crossings".into()));
    }
    let mut by_edge: BTreeMap<u32, Vec<(f64, usize)>> = BTreeMap::new();
    for (i, c) in crossings.iter().enumerate() {
        if c.dart.ix() >= a.dart_count() {
            return Err(Error::UnknownDart(c.dart));
        }
        if !(c.pos > 0.0 && c.pos < 1.0) {
            return Err(Error::SurgeryFailed(format!("position {} is not inside the edge", c.pos)));
        }
        let r = a.rev(c.dart);
        let (key, t) = if c.dart <= r { (c.dart.0, c.pos) } else { (r.0, 1.0 - c.pos) };
        by_edge.entry(key).or_default().push((t, i));
    }
    let mut e = MapEdit::from(a);
    let mut slots = vec![(0u32, 0u32); m];
    for (key, mut pts) in by_edge {
        pts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::SurgeryFailed(format!("two crossings at the same point of edge {key}")));
        }
        let mut cur = key;
        for (_, i) in pts {
            let (f, b) = e.split(cur);
            slots[i] = if crossings[i].dart.0 == key { (b, f) } else { (f, b) };
            cur = f;
        }
    }
    let nc = a.curve_count() as u32;
    let mut outs = Vec::with_capacity(m);
    let mut ins = Vec::with_capacity(m);
    for _ in 0..m {
        outs.push(e.new_dart(nc));
        ins.push(e.new_dart(nc));
    }
    for i in 0..m {
        let (o, n) = (outs[i], ins[(i + 1) % m]);
        e.rev[o as usize] = n;
        e.rev[n as usize] = o;
    }
    for i in 0..m {
        let (sin, sout) = slots[i];
        e.insert_after(sin, ins[i]);
        e.insert_after(sout, outs[i]);
    }
    e.finish()
}

/// Deletes curve `x`, smoothing the other curve at each of its vertices.
pub fn remove_curve(a: &Arrangement, x: CurveId) -> Result<Arrangement> {
    a.ensure_valid()?;
    if a.curve_count() < 3 {
        return Err(Error::UnsupportedParameter("removing a curve needs at least three curves".into()));
    }
    if x.ix() >= a.curve_count() {
        return Err(Error::UnsupportedParameter(format!("no curve {x}")));
    }
    let f = faces_unchecked(a);
    let mut e = MapEdit::from(a);
    let mut alias = vec![u32::MAX; a.dart_count()];
    for d in a.darts_of(x) {
        e.dead[d.ix()] = true;
    }
    let mut done = vec![false; a.vertex_count()];
    for d in a.darts_of(x) {
        let v = a.vertex(d);
        if done[v] {
            continue;
        }
        done[v] = true;
        let ys: Vec<Dart> = a.around(d).into_iter().filter(|&y| a.curve(y) != x).collect();
        if ys.len() != 2 {
            return Err(Error::Consistency(format!("vertex {v} does not have two darts of another curve")));
        }
        let (y1, y2) = (ys[0].0, ys[1].0);
        let p = e.rev[y1 as usize];
        let q = e.rev[y2 as usize];
        e.rev[p as usize] = q;
        e.rev[q as usize] = p;
        e.dead[y1 as usize] = true;
        e.dead[y2 as usize] = true;
        alias[y1 as usize] = q;
        alias[y2 as usize] = p;
    }
    // new outer dart: search faces glued to the outer one across x
    let mut seen = vec![false; f.len()];
    let mut queue = VecDeque::from([f.outer_face]);
    seen[f.outer_face] = true;
    let mut outer = None;
    'bfs: while let Some(g) = queue.pop_front() {
        for &d in &f.faces[g] {
            if a.curve(d) != x {
                let mut t = d.0;
                let mut guard = 0;
                while e.dead[t as usize] {
                    t = alias[t as usize];
                    guard += 1;
                    if t == u32::MAX || guard > a.dart_count() {
                        break;
                    }
                }
                if t != u32::MAX && !e.dead[t as usize] {
                    outer = Some(t);
                    break 'bfs;
                }
            }
        }
        for &d in &f.faces[g] {
            if a.curve(d) == x {
                let h = f.face(a.rev(d));
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
    }
    e.outer = outer.ok_or_else(|| Error::Consistency("no surviving dart on the outer face".into()))?;
    for c in e.curve.iter_mut() {
        if *c > x.0 {
            *c -= 1;
        }
    }
    e.transversal = match e.transversal {
        Some(t) if t == x.0 => None,
        Some(t) if t > x.0 => Some(t - 1),
        t => t,
    };
    e.finish()
}

/// Repeatedly removes the lowest curve that bounds no digon. Returns the
/// pruned arrangement and the original ids of the removed curves.
pub fn prune(a: &Arrangement) -> Result<(Arrangement, Vec<CurveId>)> {
    a.ensure_valid()?;
    let mut cur = a.clone();
    let mut ids: Vec<u32> = (0..a.curve_count() as u32).collect();
    let mut removed = Vec::new();
    // two curves always bound four digons, none of which may be the outer face
    while cur.curve_count() >= 3 {
        let (norm, _) = normalize_outer(&cur)?;
        cur = norm;
        let ds = digons(&cur)?;
        let mut has = vec![false; cur.curve_count()];
        for d in &ds {
            has[d.curves.0.ix()] = true;
            has[d.curves.1.ix()] = true;
        }
        match has.iter().position(|h| !h) {
            Some(c) => {
                removed.push(CurveId(ids[c]));
                ids.remove(c);
                cur = remove_curve(&cur, CurveId(c as u32))?;
            }
            None => break,
        }
    }
    Ok((cur, removed))
}

/// Replaces a touching point by two crossings bounding a new digon.
pub fn resolve_touching(a: &Arrangement, vertex: usize) -> Result<Arrangement> {
    a.require_sound()?;
    let d0 = a
        .vertex_darts()
        .get(vertex)
        .copied()
        .ok_or_else(|| Error::UnsupportedParameter(format!("no vertex {vertex}")))?;
    if vertex_kind(a, d0) != VertexKind::Touching {
        return Err(Error::NotATouching(vertex));
    }
    let ring = a.around(d0);
    let i = (0..4)
        .find(|&i| a.curve(ring[i]) == a.curve(ring[(i + 1) % 4]) && a.curve(ring[(i + 2) % 4]) == a.curve(ring[(i + 3) % 4]))
        .ok_or(Error::NotATouching(vertex))?;
    let (pa, pa2, pb, pb2) = (ring[i].0, ring[(i + 1) % 4].0, ring[(i + 2) % 4].0, ring[(i + 3) % 4].0);
    let cx = a.curve(Dart(pa)).0;
    let cy = a.curve(Dart(pb)).0;
    let mut e = MapEdit::from(a);
    let x1 = e.new_dart(cx);
    let x2 = e.new_dart(cx);
    let y1 = e.new_dart(cy);
    let y2 = e.new_dart(cy);
    e.rev[x1 as usize] = x2;
    e.rev[x2 as usize] = x1;
    e.rev[y1 as usize] = y2;
    e.rev[y2 as usize] = y1;
    let cyc = |e: &mut MapEdit, c: [u32; 4]| {
        for k in 0..4 {
            e.rot[c[k] as usize] = c[(k + 1) % 4];
        }
    };
    cyc(&mut e, [x1, y1, pa2, pb]);
    cyc(&mut e, [pa, y2, x2, pb2]);
    e.finish()
}

/// Vertex ids of all touching points.
pub fn touching_vertices(a: &Arrangement) -> Vec<usize> {
    a.vertex_darts().iter().enumerate().filter(|(_, &d)| a.is_touching_vertex(d)).map(|(v, _)| v).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TouchStep {
    pub digons: usize,
    pub touchings: usize,
}

fn touch_step(a: &Arrangement) -> Result<TouchStep> {
    let (n, _) = normalize_outer(a)?;
    Ok(TouchStep { digons: digons(&n)?.len(), touchings: touching_vertices(a).len() })
}

/// Resolves every touching, one per step. `pick` chooses which of the
/// current touching vertices goes next. Returns the final arrangement,
/// no longer in touch mode, and the counts before and after each step.
pub fn resolve_all_touchings(
    a: &Arrangement,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<(Arrangement, Vec<TouchStep>)> {
    let mut cur = a.clone();
    let mut trace = vec![touch_step(&cur)?];
    loop {
        let t = touching_vertices(&cur);
        if t.is_empty() {
            break;
        }
        let v = t[pick(&t) % t.len()];
        cur = resolve_touching(&cur, v)?;
        cur.ensure_valid()?;
        trace.push(touch_step(&cur)?);
    }
    let done = cur.with_touch_allowed(false);
    done.ensure_valid()?;
    Ok((done, trace))
}

/// Contracts a digon face to a touching point. Used to build touching
/// configurations from ordinary ones.
pub fn collapse_digon(a: &Arrangement, face: usize) -> Result<Arrangement> {
    a.require_sound()?;
    let f = faces_unchecked(a);
    if face >= f.len() || f.degree(face) != 2 {
        return Err(Error::NotADigon(face));
    }
    let u = f.faces[face][0];
    let w = f.faces[face][1];
    if a.curve(u) == a.curve(w) {
        return Err(Error::NotADigon(face));
    }
    let ring1 = a.around(u);
    let ring2 = a.around(a.rev(u));
    if ring1.len() != 4 || ring2.len() != 4 || ring1[3] != a.rev(w) || ring2[1] != w {
        return Err(Error::SurgeryFailed("digon corners are not ordinary crossings".into()));
    }
    let (s1, xo1) = (ring1[1].0, ring1[2].0);
    let (xo2, yo2) = (ring2[2].0, ring2[3].0);
    let mut e = MapEdit::from(a);
    for d in [u, a.rev(u), w, a.rev(w)] {
        e.dead[d.ix()] = true;
    }
    let c = [s1, xo1, xo2, yo2];
    for k in 0..4 {
        e.rot[c[k] as usize] = c[(k + 1) % 4];
    }
    let mut o = a.outer().0;
    let mut guard = 0;
    while e.dead[o as usize] {
        if f.face(Dart(o)) == face {
            return Err(Error::OuterFaceIsDigon);
        }
        o = a.face_step(Dart(o)).0;
        guard += 1;
        if guard > a.dart_count() {
            return Err(Error::Consistency("outer face lost".into()));
        }
    }
    e.outer = o;
    e.touch = true;
    e.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::test_maps::*;
    use crate::arrangement::{faces, validate};
    use crate::constructions;

    #[test]
    fn venn3_from_two_circles() {
        // a third circle crossing each of the four edges once
        let a = two_circles();
        let f = faces(&a).unwrap();
        // walk: pick a face, cross a dart of it, continue in the face on the other side
        let mut seq = Vec::new();
        let mut d = f.faces[0][0];
        for _ in 0..4 {
            seq.push(Crossing::new(d, 0.5));
            // continue in the face on the left of d: pick the other dart there
            let left = f.face(a.rev(d));
            d = *f.faces[left].iter().find(|&&x| x != a.rev(d)).unwrap();
        }
        let b = insert_curve(&a, &seq).unwrap();
        let r = validate(&b);
        assert!(r.valid, "{:?}", r.violations);
        assert_eq!((r.vertices, r.edges, r.faces), (6, 12, 8));
    }

    #[test]
    fn remove_then_counts() {
        let g = constructions::grunbaum(4).unwrap();
        for c in 0..4 {
            let b = remove_curve(&g, CurveId(c)).unwrap();
            let r = validate(&b);
            assert!(r.valid, "{:?}", r.violations);
            assert_eq!(r.vertices, 6);
            assert_eq!(b.curve_count(), 3);
        }
    }

    #[test]
    fn collapse_and_resolve_round_trip() {
        let g = constructions::grunbaum(4).unwrap();
        let ds = digons(&g).unwrap();
        for d in &ds {
            let t = collapse_digon(&g, d.face).unwrap();
            assert!(validate(&t).valid);
            assert_eq!(digons(&t).unwrap().len() + 1, ds.len());
            let v = t.vertex_darts().iter().position(|&x| t.is_touching_vertex(x)).unwrap();
            let back = resolve_touching(&t, v).unwrap();
            assert!(validate(&back).valid);
            assert_eq!(
                crate::arrangement::canonical_code(&back.with_touch_allowed(false)).unwrap(),
                crate::arrangement::canonical_code(&g).unwrap()
            );
        }
    }

    #[test]
    fn resolving_everything_keeps_the_sum() {
        let g = constructions::grunbaum(5).unwrap();
        let mut t = g.clone();
        for _ in 0..3 {
            let (n, _) = normalize_outer(&t).unwrap();
            let d = digons(&n).unwrap()[0].face;
            t = collapse_digon(&n, d).unwrap();
        }
        assert_eq!(touching_vertices(&t).len(), 3);
        let (done, trace) = resolve_all_touchings(&t, |_| 0).unwrap();
        assert_eq!(trace.len(), 4);
        assert!(trace.iter().all(|s| s.digons + s.touchings == 8));
        assert_eq!(trace.last().unwrap().touchings, 0);
        assert!(!done.touch_allowed());
    }

    #[test]
    fn resolve_rejects_crossing_vertex() {
        let a = venn3();
        assert!(matches!(resolve_touching(&a, 0), Err(Error::NotATouching(0))));
    }
}
