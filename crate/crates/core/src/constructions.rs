//! Named arrangements and the surgeries that build them.

use std::collections::BTreeSet;

use crate::arrangement::{
    curve_digon_side, digons_excluding, faces, insert_curve, normalize_outer, remove_curve, side_labeling, validate, Arrangement,
    Crossing, CurveId, Dart, DigonFace,
};
use crate::error::{Error, Result};

/// Two circles crossing twice; every face is a digon.
pub fn two_circles() -> Arrangement {
    Arrangement::from_parts(
        vec![4, 6, 5, 7, 3, 1, 2, 0],
        vec![1, 0, 3, 2, 5, 4, 7, 6],
        vec![0, 0, 0, 0, 1, 1, 1, 1],
        0,
        false,
        None,
    )
    .expect("static tables")
}

/// Three circles in general position; eight triangles, no digons.
pub fn venn3() -> Arrangement {
    let a = two_circles();
    let seq = [0u32, 4, 3, 7].map(|d| Crossing::new(Dart(d), 0.5));
    insert_curve(&a, &seq).expect("static route")
}

/// Closed curves drawn as strands on an annulus. Strand `i` starts at
/// level `i` (level 0 innermost); each entry `g` of `swaps` exchanges the
/// strands at levels `g-1` and `g`. Every pair must swap exactly twice.
pub fn wiring(n: usize, swaps: &[usize]) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::UnsupportedParameter("wiring needs at least two strands".into()));
    }
    if let Some(&g) = swaps.iter().find(|&&g| g == 0 || g >= n) {
        return Err(Error::UnsupportedParameter(format!("swap gap {g} out of range")));
    }
    // per event: strand at the inner level (s) and outer level (t) before the swap
    let mut at: Vec<usize> = (0..n).collect();
    let mut events = Vec::with_capacity(swaps.len());
    let mut level_after: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut strand_events: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &g) in swaps.iter().enumerate() {
        let (s, t) = (at[g - 1], at[g]);
        at.swap(g - 1, g);
        events.push((s, t));
        strand_events[s].push(k);
        strand_events[t].push(k);
        level_after[s].push(g);
        level_after[t].push(g - 1);
    }
    if at.iter().enumerate().any(|(i, &s)| i != s) {
        return Err(Error::UnsupportedParameter("strands do not return to their starting levels".into()));
    }
    if strand_events.iter().any(|e| e.is_empty()) {
        return Err(Error::UnsupportedParameter("a strand takes part in no swap".into()));
    }
    // slots per event in counterclockwise order: t_out, s_back, t_back, s_out
    let m = swaps.len();
    let mut slot = vec![[u32::MAX; 4]; m];
    let mut curve = Vec::new();
    let mut reverse = Vec::new();
    let mut outer = None;
    for s in 0..n {
        let ev = &strand_events[s];
        for i in 0..ev.len() {
            let (e0, e1) = (ev[i], ev[(i + 1) % ev.len()]);
            let f = curve.len() as u32;
            let b = f + 1;
            curve.push(s as u32);
            curve.push(s as u32);
            reverse.push(b);
            reverse.push(f);
            let out_slot = if events[e0].0 == s { 3 } else { 0 };
            let back_slot = if events[e1].0 == s { 1 } else { 2 };
            slot[e0][out_slot] = f;
            slot[e1][back_slot] = b;
            if level_after[s][i] == n - 1 && outer.is_none() {
                outer = Some(f);
            }
        }
    }
    let mut rotation = vec![0u32; curve.len()];
    for sl in &slot {
        for k in 0..4 {
            rotation[sl[k] as usize] = sl[(k + 1) % 4];
        }
    }
    let a = Arrangement::from_parts(rotation, reverse, curve, outer.unwrap_or(0), false, None)?;
    let r = validate(&a);
    if !r.valid {
        return Err(Error::UnsupportedParameter(format!(
            "swap sequence does not give a valid arrangement: {}",
            r.messages().join("; ")
        )));
    }
    Ok(normalize_outer(&a)?.0)
}

/// Swap sequence of the extremal cylindrical family.
pub fn grunbaum_swaps(n: usize) -> Vec<usize> {
    let mut half = vec![1, 2, 2];
    for k in 1..=n.saturating_sub(3) {
        half.extend((2..=k + 2).rev());
        half.push(2);
    }
    let mut s = half.clone();
    s.extend(half);
    s
}

/// Extremal family drawn as a wiring diagram: `2n - 2` digons for
/// `n >= 4`, three for `n = 3`.
pub fn grunbaum_wiring(n: usize) -> Result<Arrangement> {
    if n < 3 {
        return Err(Error::UnsupportedParameter("the wiring family starts at three curves".into()));
    }
    wiring(n, &grunbaum_swaps(n))
}

/// Extremal family with `2n - 2` digons. Six curves come from the shipped
/// fixture; fewer by removing satellite curves, more by adding them.
pub fn grunbaum(n: usize) -> Result<Arrangement> {
    if n < 4 {
        return Err(Error::UnsupportedParameter("the extremal family starts at four curves".into()));
    }
    let mut a = crate::fixtures::load("grunbaum6")?;
    while a.curve_count() > n {
        let t = satellite(&a)?;
        a = normalize_outer(&remove_curve(&a, t)?)?.0;
    }
    grow_by_satellites(a, n)
}

/// Highest curve with exactly two digons.
fn satellite(a: &Arrangement) -> Result<CurveId> {
    let ds = digons_excluding(a, None)?;
    let mut count = vec![0usize; a.curve_count()];
    for d in &ds {
        count[d.curves.0.ix()] += 1;
        count[d.curves.1.ix()] += 1;
    }
    (0..a.curve_count())
        .rev()
        .find(|&c| count[c] == 2)
        .map(|c| CurveId(c as u32))
        .ok_or_else(|| Error::SurgeryFailed("no curve with exactly two digons".into()))
}

/// Adds satellites until there are `n` curves.
pub fn grow_by_satellites(mut a: Arrangement, n: usize) -> Result<Arrangement> {
    while a.curve_count() < n {
        let t = satellite(&a)?;
        a = add_satellite(&a, t)?;
    }
    Ok(a)
}

/// Curves whose digon graph is the path 0-1-...-(k-1). On the sphere three
/// pairwise crossing curves have either no digon or three, so there is no
/// three-curve chain.
pub fn chain(k: usize) -> Result<Arrangement> {
    match k {
        0 | 1 => Err(Error::UnsupportedParameter("a chain needs at least two curves".into())),
        2 => Ok(two_circles()),
        3 => Err(Error::UnsupportedParameter("three pairwise crossing curves cannot form a chain".into())),
        4 => crate::fixtures::load("chain4"),
        _ => {
            let prev = chain(k - 1)?;
            let last = CurveId(k as u32 - 2);
            let route = detour_copy_route(&prev, last)?;
            let b = insert_curve(&prev, &route.crossings)?;
            b.ensure_valid()?;
            Ok(normalize_outer(&b)?.0)
        }
    }
}

/// The darts of curve `c` in walking order, oriented so that the side
/// holding its digons (ignoring digons with `exclude`) is on the left.
pub(crate) fn walk_with_digons_left(a: &Arrangement, c: CurveId, exclude: Option<CurveId>) -> Result<Vec<Dart>> {
    let f = faces(a)?;
    let lab = side_labeling(a, c)?;
    let side = curve_digon_side(a, c, exclude)?.ok_or(Error::MissingDigonRegion(c))?;
    let start = a
        .darts_of(c)
        .find(|&d| lab.side[f.face(d)] != side)
        .ok_or_else(|| Error::Consistency(format!("curve {c} has no dart with its digon side on the left")))?;
    Ok(a.curve_walk(start))
}

/// Crossing list of a parallel copy of a curve run along its right side,
/// with one excursion across the edge `walk[s]` at the given index.
#[derive(Clone, Debug)]
pub struct Route {
    pub crossings: Vec<Crossing>,
    pub base: CurveId,
    pub subarc: Dart,
}

pub(crate) fn right_copy_with_detour(a: &Arrangement, walk: &[Dart], s: usize) -> Vec<Crossing> {
    let mut out = Vec::with_capacity(walk.len() + 2);
    for (i, &p) in walk.iter().enumerate() {
        if i == s {
            out.push(Crossing::new(p, 0.4));
            out.push(Crossing::new(a.rev(p), 0.4));
        }
        out.push(Crossing::new(a.face_step(p), 0.1));
    }
    out
}

/// Index in `walk` of the first edge with no digon on either side.
pub(crate) fn first_digon_free(a: &Arrangement, walk: &[Dart]) -> Result<Option<usize>> {
    let f = faces(a)?;
    Ok(walk.iter().position(|&p| f.degree(f.face(p)) != 2 && f.degree(f.face(a.rev(p))) != 2))
}

/// Parallel copy of `base` on its digon-free side with one excursion over a
/// digon-free edge. Inserting it adds one digon, between the copy and `base`.
pub fn detour_copy_route(a: &Arrangement, base: CurveId) -> Result<Route> {
    let walk = walk_with_digons_left(a, base, a.transversal())?;
    let s = first_digon_free(a, &walk)?.ok_or(Error::NoDigonFreeSubarc(base))?;
    Ok(Route { crossings: right_copy_with_detour(a, &walk, s), base, subarc: walk[s] })
}

fn digon_pairs(a: &Arrangement, exclude: Option<CurveId>) -> Result<BTreeSet<(CurveId, CurveId)>> {
    Ok(digons_excluding(a, exclude)?.into_iter().map(|d| d.curves).collect())
}

fn ordered(x: CurveId, y: CurveId) -> (CurveId, CurveId) {
    (x.min(y), x.max(y))
}

fn find_digon(a: &Arrangement, x: CurveId, y: CurveId) -> Result<DigonFace> {
    digons_excluding(a, None)?
        .into_iter()
        .find(|d| d.curves == ordered(x, y))
        .ok_or(Error::NoSuchDigon(x, y))
}

/// Adds a copy of `gamma` next to it on its digon-free side that takes over
/// the digon between `gamma` and `delta`. Returns the new arrangement and the
/// id of the copy.
pub fn parallel_substitute(a: &Arrangement, gamma: CurveId, delta: CurveId) -> Result<(Arrangement, CurveId)> {
    a.ensure_valid()?;
    if a.touch_allowed() {
        return Err(Error::UnsupportedParameter("substitution needs an arrangement without touchings".into()));
    }
    let excl = a.transversal();
    let d = find_digon(a, gamma, delta)?;
    let walk = walk_with_digons_left(a, gamma, excl)?;
    let f = faces(a)?;
    let m = walk.len();
    // gamma edge with the digon on its left
    let id = walk
        .iter()
        .position(|&p| f.face(a.rev(p)) == d.face)
        .ok_or_else(|| Error::Consistency("digon not adjacent to the walk".into()))?;
    let p_d = walk[id];
    let u = a.rot(p_d);
    if a.curve(u) != delta || a.head(u) != a.head(p_d) {
        return Err(Error::Consistency("digon corner is not where expected".into()));
    }
    let mut cr = Vec::with_capacity(m + 2);
    for k in 0..m {
        let i = (id + 1 + k) % m;
        let p = walk[i];
        if i == id {
            continue;
        }
        if walk[(i + 1) % m] == p_d {
            cr.push(Crossing::new(p, 0.9));
            cr.push(Crossing::new(a.rev(u), 0.9));
            cr.push(Crossing::new(u, 0.9));
            cr.push(Crossing::new(a.rev(walk[(id + 1) % m]), 0.9));
            continue;
        }
        cr.push(Crossing::new(a.face_step(p), 0.1));
    }
    let b = insert_curve(a, &cr)?;
    let r = validate(&b);
    if !r.valid {
        return Err(Error::SurgeryFailed(format!("substitute is invalid: {}", r.messages().join("; "))));
    }
    let new = CurveId(a.curve_count() as u32);
    let before = digon_pairs(a, excl)?;
    let after = digon_pairs(&b, excl)?;
    let mut expect = before.clone();
    expect.remove(&ordered(gamma, delta));
    expect.insert(ordered(new, delta));
    if after != expect {
        return Err(Error::SurgeryFailed(format!("digon set changed unexpectedly: {:?} -> {:?}", before, after)));
    }
    Ok((b, new))
}

/// Adds a curve next to `template`, which must have exactly two digons. The
/// new curve gets a digon with each of the template's two partners.
pub fn add_satellite(a: &Arrangement, template: CurveId) -> Result<Arrangement> {
    a.ensure_valid()?;
    let f = faces(a)?;
    let mine: Vec<DigonFace> = digons_excluding(a, None)?.into_iter().filter(|d| d.involves(template)).collect();
    if mine.len() != 2 {
        return Err(Error::UnsupportedParameter(format!(
            "template curve {template} has {} digons, expected 2",
            mine.len()
        )));
    }
    let walk = walk_with_digons_left(a, template, None)?;
    let m = walk.len();
    let pos: Vec<usize> = mine
        .iter()
        .map(|d| walk.iter().position(|&p| f.face(a.rev(p)) == d.face))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Consistency("digon not adjacent to the walk".into()))?;
    let (mut ia, mut ib) = (pos[0].min(pos[1]), pos[0].max(pos[1]));
    if ib == ia + 1 {
        std::mem::swap(&mut ia, &mut ib);
    }
    if (ib + m - ia) % m < 2 {
        return Err(Error::SurgeryFailed("template digons are adjacent on both sides".into()));
    }
    let (pa, pb) = (walk[ia], walk[ib]);
    let left_dart = |p: Dart| a.rev(a.rot_inv(a.rev(p)));
    let mut cr = Vec::new();
    // right-hand stretch, from just after the first digon to just before the second
    let mut i = (ia + 1) % m;
    let mut first = true;
    while i != ib {
        let p = walk[i];
        if first {
            cr.push(Crossing::new(a.rev(p), 0.9));
            let y2 = a.face_step(pa);
            cr.push(Crossing::new(a.rev(y2), 0.9));
            cr.push(Crossing::new(y2, 0.2));
            first = false;
        }
        if walk[(i + 1) % m] == pb {
            let y1 = a.face_step(p);
            cr.push(Crossing::new(y1, 0.2));
            cr.push(Crossing::new(a.rev(y1), 0.9));
            cr.push(Crossing::new(p, 0.9));
        } else {
            cr.push(Crossing::new(a.face_step(p), 0.1));
        }
        i = (i + 1) % m;
    }
    // left-hand stretch from the second digon round to the first
    let mut i = (ib + 1) % m;
    while i != ia {
        let p = walk[i];
        if walk[(i + 1) % m] != pa {
            cr.push(Crossing::new(left_dart(p), 0.9));
        }
        i = (i + 1) % m;
    }
    let b = insert_curve(a, &cr)?;
    let r = validate(&b);
    if !r.valid {
        return Err(Error::SurgeryFailed(format!("satellite is invalid: {}", r.messages().join("; "))));
    }
    let b = normalize_outer(&b)?.0;
    let before = digon_pairs(a, None)?;
    let after = digon_pairs(&b, None)?;
    let new = CurveId(a.curve_count() as u32);
    let mut expect = before;
    for d in &mine {
        expect.insert(ordered(new, d.partner(template).unwrap()));
    }
    if after != expect {
        return Err(Error::SurgeryFailed(format!("unexpected digons after adding satellite: {after:?}")));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{canonical_code, digons};

    #[test]
    fn grunbaum_digon_counts() {
        for n in 4..=8 {
            let a = grunbaum(n).unwrap();
            assert_eq!(a.curve_count(), n);
            assert_eq!(digons(&a).unwrap().len(), 2 * n - 2, "n = {n}");
        }
        assert_eq!(digons(&grunbaum_wiring(3).unwrap()).unwrap().len(), 3);
        assert!(matches!(grunbaum(3), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn fixture_family_matches_wiring() {
        for n in 4..=8 {
            let a = grunbaum(n).unwrap();
            let w = grunbaum_wiring(n).unwrap();
            assert_eq!(canonical_code(&a).unwrap(), canonical_code(&w).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn wiring_rejects_bad_sequences() {
        assert!(wiring(3, &[1, 2]).is_err());
        assert!(wiring(3, &[1, 3]).is_err());
    }

    #[test]
    fn substitute_moves_digon() {
        let a = grunbaum(5).unwrap();
        for d in digons(&a).unwrap() {
            for (g, h) in [(d.curves.0, d.curves.1), (d.curves.1, d.curves.0)] {
                let (b, new) = parallel_substitute(&a, g, h).unwrap();
                assert_eq!(b.curve_count(), 6);
                assert!(digons(&normalize_outer(&b).unwrap().0).unwrap().iter().any(|x| x.curves == ordered(new, h)));
            }
        }
    }

    #[test]
    fn chain_digon_graph_is_path() {
        for k in 4..=6 {
            let a = chain(k).unwrap();
            let pairs: BTreeSet<(u32, u32)> = digons(&a).unwrap().iter().map(|d| (d.curves.0 .0, d.curves.1 .0)).collect();
            let expect: BTreeSet<(u32, u32)> = (0..k as u32 - 1).map(|i| (i, i + 1)).collect();
            assert_eq!(pairs, expect, "k = {k}");
        }
        assert_eq!(chain(2).unwrap().curve_count(), 2);
        assert!(matches!(chain(3), Err(Error::UnsupportedParameter(_))));
    }
}
