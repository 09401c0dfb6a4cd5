//! The auxiliary closed curve that meets every curve twice and avoids all
//! digons, with the entry/exit classification of its crossings.

use serde::Serialize;

use crate::arrangement::{
    curve_digon_side, digons, faces, insert_curve, side_labeling, validate, Arrangement, CurveId, Dart,
    FaceDecomposition, SideLabeling,
};
use crate::constructions::{first_digon_free, right_copy_with_detour, walk_with_digons_left};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InOutPoint {
    pub vertex: usize,
    pub curve: CurveId,
    pub kind: PointKind,
    /// Index along the transversal, in orientation order.
    pub position: usize,
}

impl InOutPoint {
    pub fn label(&self) -> String {
        format!("{}{}", self.curve.0, if self.kind == PointKind::In { "in" } else { "out" })
    }
}

/// Which curve the transversal shadows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseChoice {
    /// Lowest curve whose digon-free side holds the outer face, else curve 0.
    #[default]
    Default,
    Curve(CurveId),
}

#[derive(Clone, Debug)]
pub struct TransversalContext {
    /// Base arrangement plus the transversal as an extra, marked curve.
    pub arrangement: Arrangement,
    pub c: CurveId,
    pub base_curve: Option<CurveId>,
    /// First dart of the transversal walk, leaving `cyclic_sequence[0]`.
    pub orientation: Dart,
    pub interior_side: u8,
    pub cyclic_sequence: Vec<InOutPoint>,
    pub(crate) faces: FaceDecomposition,
    pub(crate) c_sides: SideLabeling,
    pub(crate) c_walk: Vec<Dart>,
    pub(crate) digon_side: Vec<Option<u8>>,
    pub(crate) sides: Vec<SideLabeling>,
}

fn check_preconditions(a: &Arrangement) -> Result<()> {
    a.ensure_valid()?;
    if a.touch_allowed() {
        return Err(Error::UnsupportedParameter("transversal needs an arrangement without touchings".into()));
    }
    if a.transversal().is_some() {
        return Err(Error::UnsupportedParameter("arrangement already carries a transversal".into()));
    }
    if a.curve_count() < 3 {
        return Err(Error::UnsupportedParameter("transversal needs at least three curves".into()));
    }
    let ds = digons(a)?;
    for c in 0..a.curve_count() as u32 {
        if !ds.iter().any(|d| d.involves(CurveId(c))) {
            return Err(Error::MissingDigonRegion(CurveId(c)));
        }
    }
    Ok(())
}

pub fn insert_transversal(a: &Arrangement) -> Result<TransversalContext> {
    insert_transversal_with(a, BaseChoice::Default)
}

pub fn insert_transversal_with(a: &Arrangement, choice: BaseChoice) -> Result<TransversalContext> {
    check_preconditions(a)?;
    let f = faces(a)?;
    let n = a.curve_count();
    let base = match choice {
        BaseChoice::Curve(c) if c.ix() < n => c,
        BaseChoice::Curve(c) => return Err(Error::UnsupportedParameter(format!("no curve {c}"))),
        BaseChoice::Default => {
            let mut pick = CurveId(0);
            for c in 0..n as u32 {
                let l = side_labeling(a, CurveId(c))?;
                let ds = curve_digon_side(a, CurveId(c), None)?.ok_or(Error::MissingDigonRegion(CurveId(c)))?;
                if l.outer_side != ds {
                    pick = CurveId(c);
                    break;
                }
            }
            pick
        }
    };
    let walk = walk_with_digons_left(a, base, None)?;
    let s = first_digon_free(a, &walk)?.ok_or(Error::NoDigonFreeSubarc(base))?;
    let route = right_copy_with_detour(a, &walk, s);
    let aug = insert_curve(a, &route)?.with_transversal(Some(CurveId(n as u32)));
    let r = validate(&aug);
    if !r.valid {
        return Err(Error::SurgeryFailed(format!("transversal is invalid: {}", r.messages().join("; "))));
    }
    // darts keep their ids under insertion, so untouched digons keep their orbits
    let g = faces(&aug)?;
    for (face, orbit) in f.faces.iter().enumerate() {
        if orbit.len() == 2 && g.faces[g.face(orbit[0])].len() != 2 {
            return Err(Error::Consistency(format!("transversal runs through digon face {face}")));
        }
    }
    let mut ctx = TransversalContext::from_augmented(aug, CurveId(n as u32))?;
    ctx.base_curve = Some(base);
    Ok(ctx)
}

impl TransversalContext {
    /// Builds the context for an arrangement that already contains the
    /// transversal `c`. Used again after substitutions that keep `c`.
    pub fn from_augmented(aug: Arrangement, c: CurveId) -> Result<Self> {
        let f = faces(&aug)?;
        let c_sides = side_labeling(&aug, c)?;
        let interior = 1 - c_sides.outer_side;
        let start = aug
            .darts_of(c)
            .find(|&d| c_sides.side[f.face(aug.rev(d))] == interior)
            .ok_or_else(|| Error::Consistency("transversal has no interior".into()))?;
        let walk = aug.curve_walk(start);
        let n = aug.curve_count();
        let mut sides = Vec::with_capacity(n);
        let mut digon_side = vec![None; n];
        for k in 0..n as u32 {
            let l = side_labeling(&aug, CurveId(k))?;
            if CurveId(k) != c {
                digon_side[k as usize] =
                    crate::arrangement::regions_side_with(&aug, &f, &l, Some(c))?;
            }
            sides.push(l);
        }
        let mut points = Vec::with_capacity(walk.len());
        for &d in &walk {
            let gamma = aug
                .around(d)
                .into_iter()
                .map(|x| aug.curve(x))
                .find(|&x| x != c)
                .ok_or_else(|| Error::Consistency("transversal vertex without another curve".into()))?;
            let ds = digon_side[gamma.ix()].ok_or(Error::MissingDigonRegion(gamma))?;
            let kind = if sides[gamma.ix()].side[f.face(d)] == ds { PointKind::In } else { PointKind::Out };
            points.push(InOutPoint { vertex: aug.vertex(d), curve: gamma, kind, position: 0 });
        }
        let shift = (0..points.len()).min_by_key(|&i| (points[i].curve, points[i].kind)).unwrap_or(0);
        points.rotate_left(shift);
        let mut walk = walk;
        walk.rotate_left(shift);
        for (i, p) in points.iter_mut().enumerate() {
            p.position = i;
        }
        let mut seen = vec![[0u8; 2]; n];
        for p in &points {
            seen[p.curve.ix()][p.kind as usize] += 1;
        }
        for (k, s) in seen.iter().enumerate() {
            if k != c.ix() && *s != [1, 1] {
                return Err(Error::Consistency(format!("curve {k} does not have one entry and one exit")));
            }
        }
        Ok(TransversalContext {
            orientation: walk[0],
            arrangement: aug,
            c,
            base_curve: None,
            interior_side: interior,
            cyclic_sequence: points,
            faces: f,
            c_sides,
            c_walk: walk,
            digon_side,
            sides,
        })
    }

    /// Number of curves of the base arrangement.
    pub fn n(&self) -> usize {
        self.arrangement.curve_count() - 1
    }

    pub fn len(&self) -> usize {
        self.cyclic_sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cyclic_sequence.is_empty()
    }

    pub fn position(&self, curve: CurveId, kind: PointKind) -> Option<usize> {
        self.cyclic_sequence.iter().position(|p| p.curve == curve && p.kind == kind)
    }

    pub fn inout_points(&self, curve: CurveId) -> Result<(InOutPoint, InOutPoint)> {
        let i = self.position(curve, PointKind::In).ok_or(Error::MissingDigonRegion(curve))?;
        let o = self.position(curve, PointKind::Out).ok_or(Error::MissingDigonRegion(curve))?;
        Ok((self.cyclic_sequence[i], self.cyclic_sequence[o]))
    }

    pub fn labels(&self) -> Vec<String> {
        self.cyclic_sequence.iter().map(|p| p.label()).collect()
    }

    /// Digon side of a curve, ignoring digons formed with the transversal.
    pub fn digon_side(&self, curve: CurveId) -> Option<u8> {
        self.digon_side.get(curve.ix()).copied().flatten()
    }

    /// True when every transversal dart strictly between the entry and
    /// exit of `curve` runs on that curve's digon side.
    pub fn arc_inside_digon_region(&self, curve: CurveId) -> Result<bool> {
        let (pin, pout) = self.inout_points(curve)?;
        let ds = self.digon_side(curve).ok_or(Error::MissingDigonRegion(curve))?;
        let len = self.len();
        let mut i = pin.position;
        while i != pout.position {
            let d = self.c_walk[i];
            if self.sides[curve.ix()].side[self.faces.face(d)] != ds {
                return Ok(false);
            }
            i = (i + 1) % len;
        }
        Ok(true)
    }

    /// Reverses the stored orientation and rebuilds; the exposed sequence
    /// must not change.
    pub fn reoriented(&self) -> Result<Self> {
        let mut t = TransversalContext::from_augmented(self.arrangement.clone(), self.c)?;
        t.base_curve = self.base_curve;
        Ok(t)
    }

    /// d-value of `point` with respect to the edge from `alpha`'s exit to
    /// `beta`'s entry: 1 if the curve through the point, followed into the
    /// interior of the transversal, meets `alpha` before `beta`, else 2.
    pub fn d_value(&self, point: &InOutPoint, alpha: CurveId, beta: CurveId) -> Result<u8> {
        let a = &self.arrangement;
        let gamma = point.curve;
        if gamma == alpha || gamma == beta {
            return Err(Error::SharedCurveQuery(gamma));
        }
        let at = self.c_walk[point.position];
        let start = a
            .around(at)
            .into_iter()
            .find(|&g| a.curve(g) == gamma && self.c_sides.side[self.faces.face(g)] == self.interior_side)
            .ok_or_else(|| Error::Consistency("no curve dart into the interior".into()))?;
        let mut cur = start;
        for _ in 0..a.dart_count() {
            let head = a.rev(cur);
            for x in a.around(head) {
                let k = a.curve(x);
                if k == alpha {
                    return Ok(1);
                }
                if k == beta {
                    return Ok(2);
                }
            }
            cur = a.next_along(cur);
            if cur == start {
                break;
            }
        }
        Err(Error::Consistency(format!("curve {gamma} never meets {alpha} or {beta}")))
    }

    pub fn check_cyclic_pairs(&self) -> Result<CyclicPairReport> {
        let seq: Vec<(CurveId, PointKind)> = self.cyclic_sequence.iter().map(|p| (p.curve, p.kind)).collect();
        let ds = crate::arrangement::digons_excluding(&self.arrangement, Some(self.c))?;
        let mut rep = CyclicPairReport::default();
        for d in ds {
            rep.checked += 1;
            if !cyclic_pattern_holds(&seq, d.curves.0, d.curves.1) {
                rep.violations.push((d.curves.0, d.curves.1));
            }
        }
        Ok(rep)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CyclicPairReport {
    pub checked: usize,
    pub violations: Vec<(CurveId, CurveId)>,
}

/// Whether the entry/exit points of two curves appear as
/// `a_in, a_out, b_in, b_out` up to rotation.
pub fn cyclic_pattern_holds(seq: &[(CurveId, PointKind)], a: CurveId, b: CurveId) -> bool {
    let pos = |c: CurveId, k: PointKind| seq.iter().position(|&x| x == (c, k));
    let (Some(ai), Some(ao), Some(bi), Some(bo)) =
        (pos(a, PointKind::In), pos(a, PointKind::Out), pos(b, PointKind::In), pos(b, PointKind::Out))
    else {
        return false;
    };
    let len = seq.len();
    let off = |p: usize| (p + len - ai) % len;
    off(ao) < off(bi) && off(bi) < off(bo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn venn3_has_no_digon_region() {
        assert!(matches!(insert_transversal(&constructions::venn3()), Err(Error::MissingDigonRegion(_))));
    }

    #[test]
    fn grunbaum_context() {
        for n in 4..=7 {
            let a = constructions::grunbaum(n).unwrap();
            let ctx = insert_transversal(&a).unwrap();
            assert_eq!(ctx.len(), 2 * n);
            for k in 0..n as u32 {
                assert!(ctx.arc_inside_digon_region(CurveId(k)).unwrap());
            }
            let rep = ctx.check_cyclic_pairs().unwrap();
            assert_eq!(rep.checked, 2 * n - 2);
            assert!(rep.violations.is_empty());
            let again = ctx.reoriented().unwrap();
            assert_eq!(again.labels(), ctx.labels());
        }
    }

    #[test]
    fn corrupted_sequence_fails_pattern() {
        let (a, b) = (CurveId(0), CurveId(1));
        let seq = vec![(a, PointKind::In), (b, PointKind::In), (a, PointKind::Out), (b, PointKind::Out)];
        assert!(!cyclic_pattern_holds(&seq, a, b));
        let ok = vec![(a, PointKind::In), (a, PointKind::Out), (b, PointKind::In), (b, PointKind::Out)];
        assert!(cyclic_pattern_holds(&ok, a, b));
        assert!(cyclic_pattern_holds(&ok, b, a));
    }
}
