use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Arrangement, Dart};
use crate::error::Result;

/// Isomorphism-class code. Two arrangements get the same code exactly when
/// some relabelling of darts and curves (and, unless oriented, a reflection)
/// maps one onto the other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

struct Tables {
    rot: Vec<u32>,
    rot_inv: Vec<u32>,
    rev: Vec<u32>,
}

struct Labelling {
    order: Vec<u32>,
    label: Vec<u32>,
    curve_label: Vec<u32>,
}

fn label_from(a: &Arrangement, t: &Tables, start: u32, backwards: bool) -> Labelling {
    let n = t.rot.len();
    let sigma = if backwards { &t.rot_inv } else { &t.rot };
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[start as usize] = 0;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let d = order[i] as usize;
        for nb in [t.rev[d], sigma[d]] {
            if label[nb as usize] == u32::MAX {
                label[nb as usize] = order.len() as u32;
                order.push(nb);
            }
        }
        i += 1;
    }
    let mut curve_label = vec![u32::MAX; a.curve_count()];
    let mut next = 0;
    for &d in &order {
        let c = a.curve(Dart(d)).ix();
        if curve_label[c] == u32::MAX {
            curve_label[c] = next;
            next += 1;
        }
    }
    Labelling { order, label, curve_label }
}

fn header(a: &Arrangement, l: &Labelling) -> Vec<u32> {
    vec![
        a.curve_count() as u32,
        a.dart_count() as u32,
        u32::from(a.touch_allowed()),
        a.transversal().map(|c| l.curve_label[c.ix()] + 1).unwrap_or(0),
    ]
}

fn body_entry(a: &Arrangement, t: &Tables, l: &Labelling, backwards: bool, i: usize) -> [u32; 3] {
    let d = l.order[i] as usize;
    let sigma = if backwards { &t.rot_inv } else { &t.rot };
    [l.label[sigma[d] as usize], l.label[t.rev[d] as usize], l.curve_label[a.curve(Dart(d as u32)).ix()]]
}

fn encode(a: &Arrangement, t: &Tables, l: &Labelling, backwards: bool) -> Vec<u32> {
    let mut code = header(a, l);
    for i in 0..l.order.len() {
        code.extend_from_slice(&body_entry(a, t, l, backwards, i));
    }
    code
}

/// Compares the candidate against the current best entry by entry and
/// stops as soon as it is larger.
fn better(a: &Arrangement, t: &Tables, l: &Labelling, backwards: bool, best: &[u32]) -> Option<Vec<u32>> {
    let h = header(a, l);
    let mut ord = h.as_slice().cmp(&best[..4]);
    if ord == Ordering::Greater {
        return None;
    }
    if ord == Ordering::Equal {
        for i in 0..l.order.len() {
            let e = body_entry(a, t, l, backwards, i);
            ord = e.as_slice().cmp(&best[4 + 3 * i..4 + 3 * i + 3]);
            if ord == Ordering::Greater {
                return None;
            }
            if ord == Ordering::Less {
                break;
            }
        }
        if ord == Ordering::Equal {
            return None;
        }
    }
    Some(encode(a, t, l, backwards))
}

fn tables(a: &Arrangement) -> Tables {
    let rot = a.rotation_table().to_vec();
    let mut rot_inv = vec![0u32; rot.len()];
    for (d, &r) in rot.iter().enumerate() {
        rot_inv[r as usize] = d as u32;
    }
    Tables { rot, rot_inv, rev: a.reverse_table().to_vec() }
}

fn minimise(a: &Arrangement, starts: &[(u32, bool)]) -> (Vec<u32>, (u32, bool)) {
    let t = tables(a);
    let mut best: Option<(Vec<u32>, (u32, bool))> = None;
    for &(s, back) in starts {
        let l = label_from(a, &t, s, back);
        match &best {
            None => best = Some((encode(a, &t, &l, back), (s, back))),
            Some((b, _)) => {
                if let Some(c) = better(a, &t, &l, back, b) {
                    best = Some((c, (s, back)));
                }
            }
        }
    }
    best.expect("at least one start")
}

fn all_starts(a: &Arrangement, both: bool) -> Vec<(u32, bool)> {
    let mut v: Vec<(u32, bool)> = (0..a.dart_count() as u32).map(|d| (d, false)).collect();
    if both {
        v.extend((0..a.dart_count() as u32).map(|d| (d, true)));
    }
    v
}

/// Sphere-level code, blind to the outer face and to reflection.
pub fn canonical_code(a: &Arrangement) -> Result<CanonicalCode> {
    a.require_sound()?;
    Ok(CanonicalCode(minimise(a, &all_starts(a, true)).0))
}

/// Like [`canonical_code`] but distinguishes mirror images.
pub fn oriented_code(a: &Arrangement) -> Result<CanonicalCode> {
    a.require_sound()?;
    Ok(CanonicalCode(minimise(a, &all_starts(a, false)).0))
}

/// Code that also records which face is the outer one.
pub fn rooted_canonical_code(a: &Arrangement) -> Result<CanonicalCode> {
    a.require_sound()?;
    let mut starts = Vec::new();
    let o = a.outer();
    let mut x = o;
    loop {
        starts.push((x.0, false));
        // in the mirror the outer region lies on the right of the reversed darts
        starts.push((a.rev(x).0, true));
        x = a.face_step(x);
        if x == o {
            break;
        }
    }
    Ok(CanonicalCode(minimise(a, &starts).0))
}

/// Relabelled copy realising the sphere-level code. The outer dart of the
/// copy is moved to a face of maximum degree with the smallest label.
pub fn canonical_form(a: &Arrangement) -> Result<Arrangement> {
    a.require_sound()?;
    let (_, (s, back)) = minimise(a, &all_starts(a, true));
    let t = tables(a);
    let l = label_from(a, &t, s, back);
    let sigma = if back { &t.rot_inv } else { &t.rot };
    let n = a.dart_count();
    let mut rot = vec![0u32; n];
    let mut rev = vec![0u32; n];
    let mut cur = vec![0u32; n];
    for (i, &d) in l.order.iter().enumerate() {
        rot[i] = l.label[sigma[d as usize] as usize];
        rev[i] = l.label[t.rev[d as usize] as usize];
        cur[i] = l.curve_label[a.curve(Dart(d)).ix()];
    }
    let tr = a.transversal().map(|c| l.curve_label[c.ix()]);
    let b = Arrangement::from_parts(rot, rev, cur, 0, a.touch_allowed(), tr)?;
    let f = super::faces(&b)?;
    let best = (0..f.len()).max_by(|&x, &y| f.degree(x).cmp(&f.degree(y)).then(y.cmp(&x))).unwrap();
    let d = *f.faces[best].iter().min().unwrap();
    b.with_outer(d)
}
