use super::Arrangement;
use crate::error::{Error, Result};

/// Mutable scratch copy of the tables, used by surgeries and the
/// incremental enumerator. Darts can be added and marked dead; `finish`
/// compacts the survivors.
#[derive(Clone, Debug)]
pub(crate) struct MapEdit {
    pub rot: Vec<u32>,
    pub rev: Vec<u32>,
    pub curve: Vec<u32>,
    pub dead: Vec<bool>,
    pub outer: u32,
    pub touch: bool,
    pub transversal: Option<u32>,
}

impl MapEdit {
    pub fn from(a: &Arrangement) -> Self {
        MapEdit {
            rot: a.rotation_table().to_vec(),
            rev: a.reverse_table().to_vec(),
            curve: a.curve_table().to_vec(),
            dead: vec![false; a.dart_count()],
            outer: a.outer().0,
            touch: a.touch_allowed(),
            transversal: a.transversal().map(|c| c.0),
        }
    }

    pub fn new_dart(&mut self, curve: u32) -> u32 {
        let d = self.rot.len() as u32;
        self.rot.push(d);
        self.rev.push(d);
        self.curve.push(curve);
        self.dead.push(false);
        d
    }

    #[inline]
    pub fn face_step(&self, d: u32) -> u32 {
        self.rot[self.rev[d as usize] as usize]
    }

    pub fn face_orbit(&self, d: u32) -> Vec<u32> {
        let mut out = vec![d];
        let mut x = self.face_step(d);
        while x != d {
            out.push(x);
            x = self.face_step(x);
        }
        out
    }

    /// Puts a new vertex in the middle of the edge of `x`. Afterwards `x`
    /// ends at the new vertex, `f` continues forward and `b` points back.
    pub fn split(&mut self, x: u32) -> (u32, u32) {
        let c = self.curve[x as usize];
        let xr = self.rev[x as usize];
        let f = self.new_dart(c);
        let b = self.new_dart(c);
        self.rev[x as usize] = b;
        self.rev[b as usize] = x;
        self.rev[f as usize] = xr;
        self.rev[xr as usize] = f;
        self.rot[f as usize] = b;
        self.rot[b as usize] = f;
        (f, b)
    }

    /// Inserts `n` right after `a` in counterclockwise order.
    pub fn insert_after(&mut self, a: u32, n: u32) {
        self.rot[n as usize] = self.rot[a as usize];
        self.rot[a as usize] = n;
    }

    /// Adds an edge of `curve` joining the corner after `a` with the corner after `b`.
    /// Returns the dart leaving from `a`'s vertex.
    pub fn chord(&mut self, a: u32, b: u32, curve: u32) -> u32 {
        let x = self.new_dart(curve);
        let y = self.new_dart(curve);
        self.rev[x as usize] = y;
        self.rev[y as usize] = x;
        self.insert_after(a, x);
        self.insert_after(b, y);
        x
    }

    pub fn finish(self) -> Result<Arrangement> {
        let mut map = vec![u32::MAX; self.rot.len()];
        let mut next = 0u32;
        for (d, &dead) in self.dead.iter().enumerate() {
            if !dead {
                map[d] = next;
                next += 1;
            }
        }
        let tr = |d: u32| -> Result<u32> {
            let m = map[d as usize];
            if m == u32::MAX {
                Err(Error::SurgeryFailed(format!("dangling reference to removed dart {d}")))
            } else {
                Ok(m)
            }
        };
        let mut rot = Vec::with_capacity(next as usize);
        let mut rev = Vec::with_capacity(next as usize);
        let mut curve = Vec::with_capacity(next as usize);
        for d in 0..self.rot.len() {
            if self.dead[d] {
                continue;
            }
            rot.push(tr(self.rot[d])?);
            rev.push(tr(self.rev[d])?);
            curve.push(self.curve[d]);
        }
        Arrangement::from_parts(rot, rev, curve, tr(self.outer)?, self.touch, self.transversal)
    }
}
