use std::collections::VecDeque;

use serde::Serialize;

use super::faces::faces_unchecked;
use super::{Arrangement, CurveId, Dart, FaceDecomposition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DigonKind {
    Lens,
    Lune,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigonFace {
    pub face: usize,
    pub darts: [Dart; 2],
    pub curves: (CurveId, CurveId),
    pub kind: DigonKind,
}

impl DigonFace {
    pub fn involves(&self, c: CurveId) -> bool {
        self.curves.0 == c || self.curves.1 == c
    }
    pub fn partner(&self, c: CurveId) -> Option<CurveId> {
        if self.curves.0 == c {
            Some(self.curves.1)
        } else if self.curves.1 == c {
            Some(self.curves.0)
        } else {
            None
        }
    }
}

/// Two-colouring of the faces by one curve. `side[f]` is 0 or 1;
/// `outer_side` is the side containing the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideLabeling {
    pub curve: CurveId,
    pub side: Vec<u8>,
    pub outer_side: u8,
}

impl SideLabeling {
    pub fn bounded_side(&self) -> u8 {
        1 - self.outer_side
    }
    pub fn of_face(&self, f: usize) -> u8 {
        self.side[f]
    }
}

pub(crate) fn side_labeling_with(a: &Arrangement, f: &FaceDecomposition, c: CurveId) -> Result<SideLabeling> {
    let mut side = vec![u8::MAX; f.len()];
    let mut q = VecDeque::new();
    side[0] = 0;
    q.push_back(0usize);
    while let Some(x) = q.pop_front() {
        for &d in &f.faces[x] {
            let y = f.face(a.rev(d));
            let s = side[x] ^ u8::from(a.curve(d) == c);
            if side[y] == u8::MAX {
                side[y] = s;
                q.push_back(y);
            } else if side[y] != s {
                return Err(Error::Consistency(format!("curve {c} does not separate the sphere")));
            }
        }
    }
    if side.contains(&u8::MAX) {
        return Err(Error::Consistency("face graph is disconnected".into()));
    }
    Ok(SideLabeling { curve: c, outer_side: side[f.outer_face], side })
}

pub fn side_labeling(a: &Arrangement, c: CurveId) -> Result<SideLabeling> {
    a.require_sound()?;
    if c.ix() >= a.curve_count() {
        return Err(Error::UnsupportedParameter(format!("no curve {c}")));
    }
    side_labeling_with(a, &faces_unchecked(a), c)
}

pub(crate) fn raw_digons(a: &Arrangement, f: &FaceDecomposition, exclude: Option<CurveId>) -> Vec<(usize, [Dart; 2])> {
    let mut out = Vec::new();
    for (i, orbit) in f.faces.iter().enumerate() {
        if orbit.len() != 2 {
            continue;
        }
        let (x, y) = (a.curve(orbit[0]), a.curve(orbit[1]));
        if x == y || Some(x) == exclude || Some(y) == exclude {
            continue;
        }
        out.push((i, [orbit[0], orbit[1]]));
    }
    out
}

pub(crate) fn digons_with(
    a: &Arrangement,
    f: &FaceDecomposition,
    exclude: Option<CurveId>,
) -> Result<Vec<DigonFace>> {
    if f.degree(f.outer_face) == 2 {
        return Err(Error::OuterFaceIsDigon);
    }
    let raw = raw_digons(a, f, exclude);
    let mut labels: Vec<Option<SideLabeling>> = vec![None; a.curve_count()];
    let mut out = Vec::with_capacity(raw.len());
    for (face, darts) in raw {
        let (x, y) = (a.curve(darts[0]), a.curve(darts[1]));
        let mut bounded = 0;
        for c in [x, y] {
            if labels[c.ix()].is_none() {
                labels[c.ix()] = Some(side_labeling_with(a, f, c)?);
            }
            let l = labels[c.ix()].as_ref().unwrap();
            if l.side[face] != l.outer_side {
                bounded += 1;
            }
        }
        let kind = match bounded {
            2 => DigonKind::Lens,
            1 => DigonKind::Lune,
            _ => return Err(Error::Consistency(format!("digon face {face} lies outside both of its curves"))),
        };
        out.push(DigonFace { face, darts, curves: (x.min(y), x.max(y)), kind });
    }
    Ok(out)
}

/// All digon faces with their lens/lune classification.
pub fn digons(a: &Arrangement) -> Result<Vec<DigonFace>> {
    a.require_sound()?;
    digons_with(a, &faces_unchecked(a), None)
}

/// Digon faces not involving curve `exclude`.
pub fn digons_excluding(a: &Arrangement, exclude: Option<CurveId>) -> Result<Vec<DigonFace>> {
    a.require_sound()?;
    digons_with(a, &faces_unchecked(a), exclude)
}

pub fn classify(a: &Arrangement, d: &DigonFace) -> Result<DigonKind> {
    let f = faces(a)?;
    let mut bounded = 0;
    for c in [d.curves.0, d.curves.1] {
        let l = side_labeling_with(a, &f, c)?;
        if l.side[d.face] != l.outer_side {
            bounded += 1;
        }
    }
    Ok(if bounded == 2 { DigonKind::Lens } else { DigonKind::Lune })
}

use super::faces;

/// The side of curve `c` holding all of its digons (excluding digons with
/// `exclude`). `None` when the curve has no such digon.
pub fn curve_digon_side(a: &Arrangement, c: CurveId, exclude: Option<CurveId>) -> Result<Option<u8>> {
    let f = faces(a)?;
    curve_digon_side_with(a, &f, &side_labeling_with(a, &f, c)?, exclude)
}

pub(crate) fn curve_digon_side_with(
    a: &Arrangement,
    f: &FaceDecomposition,
    l: &SideLabeling,
    exclude: Option<CurveId>,
) -> Result<Option<u8>> {
    let mut side = None;
    for (face, darts) in raw_digons(a, f, exclude) {
        if a.curve(darts[0]) != l.curve && a.curve(darts[1]) != l.curve {
            continue;
        }
        let s = l.side[face];
        match side {
            None => side = Some(s),
            Some(t) if t != s => {
                return Err(Error::Consistency(format!("curve {} has digons on both sides", l.curve)))
            }
            _ => {}
        }
    }
    Ok(side)
}

pub fn reroot(a: &Arrangement, d: Dart) -> Result<Arrangement> {
    a.with_outer(d)
}

/// Moves the outer face off a digon if needed: picks the lowest-numbered
/// face of degree other than two. Returns the arrangement and whether it changed.
pub fn normalize_outer(a: &Arrangement) -> Result<(Arrangement, bool)> {
    let f = faces(a)?;
    if f.degree(f.outer_face) != 2 {
        return Ok((a.clone(), false));
    }
    let target = f
        .faces
        .iter()
        .position(|o| o.len() != 2)
        .ok_or_else(|| Error::UnsupportedParameter("every face is a digon".into()))?;
    let d = *f.faces[target].iter().min().unwrap();
    Ok((a.with_outer(d)?, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::test_maps::*;

    #[test]
    fn venn3_has_no_digons() {
        assert!(digons(&venn3()).unwrap().is_empty());
    }

    #[test]
    fn two_circles_outer_is_digon() {
        assert!(matches!(digons(&two_circles()), Err(Error::OuterFaceIsDigon)));
    }

    #[test]
    fn side_labeling_is_proper() {
        let a = venn3();
        let f = faces(&a).unwrap();
        for c in 0..3 {
            let l = side_labeling(&a, CurveId(c)).unwrap();
            for d in a.darts() {
                let differ = l.side[f.face(d)] != l.side[f.face(a.rev(d))];
                assert_eq!(differ, a.curve(d).0 == c);
            }
        }
    }
}
