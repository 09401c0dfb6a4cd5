//! Rotation-system model of an arrangement of closed curves on the sphere.
//!
//! A dart is a directed edge. `rotation` gives the next dart counterclockwise
//! around the tail vertex, `reverse` the opposite direction of the same edge.
//! The face to the right of dart `d` is traced by `d -> rotation(reverse(d))`.

mod canonical;
mod edit;
mod faces;
mod regions;
mod surgery;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use canonical::{canonical_code, canonical_form, oriented_code, rooted_canonical_code, CanonicalCode};
pub(crate) use edit::MapEdit;
pub(crate) use regions::curve_digon_side_with as regions_side_with;
pub use faces::{faces, FaceDecomposition};
pub use regions::{
    classify, curve_digon_side, digons, digons_excluding, normalize_outer, reroot, side_labeling,
    DigonFace, DigonKind, SideLabeling,
};
pub use surgery::{
    collapse_digon, insert_curve, prune, remove_curve, resolve_all_touchings, resolve_touching, touching_vertices, Crossing,
    TouchStep,
};
pub use validate::{validate, ValidationReport, Violation};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveId(pub u32);

impl CurveId {
    #[inline]
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    rotation: Vec<u32>,
    reverse: Vec<u32>,
    curve: Vec<u32>,
    vertex: Vec<u32>,
    vertex_count: usize,
    curves: usize,
    outer: u32,
    touch_allowed: bool,
    transversal: Option<u32>,
    sound: bool,
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

impl Arrangement {
    /// Builds an arrangement from raw tables. Only index ranges are checked
    /// here; everything else is reported by [`validate`].
    pub fn from_parts(
        rotation: Vec<u32>,
        reverse: Vec<u32>,
        curve: Vec<u32>,
        outer: u32,
        touch_allowed: bool,
        transversal: Option<u32>,
    ) -> Result<Self> {
        let len = rotation.len();
        if len == 0 {
            return Err(Error::Structure("no darts".into()));
        }
        if reverse.len() != len || curve.len() != len {
            return Err(Error::Structure(format!(
                "table lengths differ: rotation {}, reverse {}, curve {}",
                len,
                reverse.len(),
                curve.len()
            )));
        }
        for (name, table) in [("rotation", &rotation), ("reverse", &reverse)] {
            if let Some(&bad) = table.iter().find(|&&x| x as usize >= len) {
                return Err(Error::Structure(format!("{name} entry {bad} out of range")));
            }
        }
        if outer as usize >= len {
            return Err(Error::Structure(format!("outer dart {outer} out of range")));
        }
        let curves = curve.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut parent: Vec<u32> = (0..len as u32).collect();
        for d in 0..len as u32 {
            let a = find(&mut parent, d);
            let b = find(&mut parent, rotation[d as usize]);
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
        let mut vertex = vec![u32::MAX; len];
        let mut root_id = vec![u32::MAX; len];
        let mut vertex_count = 0u32;
        for d in 0..len as u32 {
            let r = find(&mut parent, d) as usize;
            if root_id[r] == u32::MAX {
                root_id[r] = vertex_count;
                vertex_count += 1;
            }
            vertex[d as usize] = root_id[r];
        }
        let sound = len.is_multiple_of(2)
            && is_permutation(&rotation)
            && is_permutation(&reverse)
            && (0..len).all(|d| {
                let r = reverse[d] as usize;
                r != d && reverse[r] as usize == d
            });
        Ok(Arrangement {
            rotation,
            reverse,
            curve,
            vertex,
            vertex_count: vertex_count as usize,
            curves,
            outer,
            touch_allowed,
            transversal,
            sound,
        })
    }

    /// True when rotation and reverse are permutations and reverse is a
    /// fixed-point-free involution, so orbit walks terminate.
    pub fn is_sound(&self) -> bool {
        self.sound
    }

    pub(crate) fn require_sound(&self) -> Result<()> {
        if self.sound {
            Ok(())
        } else {
            Err(Error::Structure("rotation or reverse table is not a proper permutation".into()))
        }
    }

    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }
    pub fn edge_count(&self) -> usize {
        self.rotation.len() / 2
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn curve_count(&self) -> usize {
        self.curves
    }
    pub fn outer(&self) -> Dart {
        Dart(self.outer)
    }
    pub fn touch_allowed(&self) -> bool {
        self.touch_allowed
    }
    pub fn transversal(&self) -> Option<CurveId> {
        self.transversal.map(CurveId)
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.rotation.len() as u32).map(Dart)
    }

    pub fn darts_of(&self, c: CurveId) -> impl Iterator<Item = Dart> + '_ {
        self.darts().filter(move |&d| self.curve(d) == c)
    }

    #[inline]
    pub fn rot(&self, d: Dart) -> Dart {
        Dart(self.rotation[d.ix()])
    }

    /// Clockwise neighbour. Vertices have degree four, so this is cheap.
    pub fn rot_inv(&self, d: Dart) -> Dart {
        let mut x = d;
        loop {
            let nx = self.rot(x);
            if nx == d {
                return x;
            }
            x = nx;
        }
    }

    #[inline]
    pub fn rev(&self, d: Dart) -> Dart {
        Dart(self.reverse[d.ix()])
    }

    #[inline]
    pub fn curve(&self, d: Dart) -> CurveId {
        CurveId(self.curve[d.ix()])
    }

    /// Tail vertex of a dart.
    #[inline]
    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex[d.ix()] as usize
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.vertex(self.rev(d))
    }

    /// Next dart along the boundary of the face on the right of `d`.
    #[inline]
    pub fn face_step(&self, d: Dart) -> Dart {
        self.rot(self.rev(d))
    }

    /// Darts around the tail vertex of `d`, counterclockwise from `d`.
    pub fn around(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.rot(d);
        while x != d && out.len() <= self.dart_count() {
            out.push(x);
            x = self.rot(x);
        }
        out
    }

    /// Next dart of the same curve after passing through the head vertex.
    pub fn next_along(&self, d: Dart) -> Dart {
        let r = self.rev(d);
        let c = self.curve(r);
        let ring = self.around(r);
        if ring.len() == 4 && self.curve(ring[2]) == c && self.curve(ring[1]) != c {
            return ring[2];
        }
        for &x in &ring[1..] {
            if self.curve(x) == c {
                return x;
            }
        }
        r
    }

    /// Directed walk of one curve starting at `d`, in the direction of `d`.
    pub fn curve_walk(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.next_along(d);
        while x != d && out.len() <= self.dart_count() {
            out.push(x);
            x = self.next_along(x);
        }
        out
    }

    /// Curves meeting at a vertex, in increasing order.
    pub fn curves_at(&self, d: Dart) -> Vec<CurveId> {
        let mut cs: Vec<CurveId> = self.around(d).into_iter().map(|x| self.curve(x)).collect();
        cs.sort();
        cs.dedup();
        cs
    }

    /// A representative dart for every vertex, indexed by vertex id.
    pub fn vertex_darts(&self) -> Vec<Dart> {
        let mut rep = vec![Dart(u32::MAX); self.vertex_count];
        for d in self.darts() {
            let v = self.vertex(d);
            if rep[v].0 == u32::MAX {
                rep[v] = d;
            }
        }
        rep
    }

    pub fn is_touching_vertex(&self, d: Dart) -> bool {
        let ring = self.around(d);
        ring.len() == 4 && ring.iter().enumerate().any(|(i, &x)| self.curve(x) == self.curve(ring[(i + 1) % 4]))
    }

    pub fn with_outer(&self, d: Dart) -> Result<Self> {
        if d.ix() >= self.dart_count() {
            return Err(Error::UnknownDart(d));
        }
        let mut a = self.clone();
        a.outer = d.0;
        Ok(a)
    }

    pub fn with_transversal(&self, c: Option<CurveId>) -> Self {
        let mut a = self.clone();
        a.transversal = c.map(|c| c.0);
        a
    }

    pub fn with_touch_allowed(&self, t: bool) -> Self {
        let mut a = self.clone();
        a.touch_allowed = t;
        a
    }

    pub fn rotation_table(&self) -> &[u32] {
        &self.rotation
    }
    pub fn reverse_table(&self) -> &[u32] {
        &self.reverse
    }
    pub fn curve_table(&self) -> &[u32] {
        &self.curve
    }

    /// Renames curves: curve `c` becomes `perm[c]`.
    pub fn relabel_curves(&self, perm: &[u32]) -> Result<Self> {
        let mut seen = vec![false; self.curves];
        if perm.len() != self.curves || perm.iter().any(|&p| p as usize >= self.curves || std::mem::replace(&mut seen[p as usize], true)) {
            return Err(Error::UnsupportedParameter("curve relabelling is not a permutation".into()));
        }
        let mut a = self.clone();
        for c in a.curve.iter_mut() {
            *c = perm[*c as usize];
        }
        a.transversal = self.transversal.map(|t| perm[t as usize]);
        Ok(a)
    }

    /// Renames darts: dart `d` becomes `perm[d]`.
    pub fn relabel_darts(&self, perm: &[u32]) -> Result<Self> {
        let len = self.dart_count();
        if perm.len() != len || !is_permutation(perm) {
            return Err(Error::UnsupportedParameter("dart relabelling is not a permutation".into()));
        }
        let mut rot = vec![0; len];
        let mut rev = vec![0; len];
        let mut cur = vec![0; len];
        for d in 0..len {
            let nd = perm[d] as usize;
            rot[nd] = perm[self.rotation[d] as usize];
            rev[nd] = perm[self.reverse[d] as usize];
            cur[nd] = self.curve[d];
        }
        Arrangement::from_parts(rot, rev, cur, perm[self.outer as usize], self.touch_allowed, self.transversal)
    }

    /// Mirror image: reverses every rotation.
    pub fn mirror(&self) -> Self {
        let mut inv = vec![0u32; self.rotation.len()];
        for (d, &r) in self.rotation.iter().enumerate() {
            inv[r as usize] = d as u32;
        }
        let mut a = self.clone();
        a.rotation = inv;
        // the outer face must stay the same region; the face on the right of
        // d becomes the face on the left, so take the reverse dart
        a.outer = self.reverse[self.outer as usize];
        a
    }
}

#[cfg(test)]
pub(crate) mod test_maps {
    use super::*;

    /// Two circles crossing twice. Darts 0..4 belong to curve 0, 4..8 to curve 1.
    pub fn two_circles() -> Arrangement {
        crate::constructions::two_circles()
    }

    pub fn venn3() -> Arrangement {
        crate::constructions::venn3()
    }

    #[test]
    fn basic_accessors() {
        let a = two_circles();
        assert_eq!(a.dart_count(), 8);
        assert_eq!(a.vertex_count(), 2);
        assert_eq!(a.curve_count(), 2);
        for d in a.darts() {
            assert_eq!(a.rot_inv(a.rot(d)), d);
            assert_eq!(a.around(d).len(), 4);
            assert_eq!(a.curve(a.next_along(d)), a.curve(d));
        }
    }

    #[test]
    fn mirror_is_involution_on_rotation() {
        let a = venn3();
        let m = a.mirror().mirror();
        assert_eq!(m.rotation_table(), a.rotation_table());
        assert_eq!(m.outer(), a.outer());
    }
}
