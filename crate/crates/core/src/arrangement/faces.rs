use super::{Arrangement, Dart};
use crate::error::Result;

/// Face orbits of an arrangement. `faces[i]` lists the darts having face `i`
/// on their right, in boundary order. Faces are numbered by smallest dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDecomposition {
    pub face_of: Vec<u32>,
    pub faces: Vec<Vec<Dart>>,
    pub outer_face: usize,
}

impl FaceDecomposition {
    #[inline]
    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d.ix()] as usize
    }

    pub fn degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

pub(crate) fn faces_unchecked(a: &Arrangement) -> FaceDecomposition {
    let n = a.dart_count();
    let mut face_of = vec![u32::MAX; n];
    let mut faces = Vec::new();
    for d in a.darts() {
        if face_of[d.ix()] != u32::MAX {
            continue;
        }
        let id = faces.len() as u32;
        let mut orbit = Vec::new();
        let mut x = d;
        loop {
            face_of[x.ix()] = id;
            orbit.push(x);
            x = a.face_step(x);
            if x == d {
                break;
            }
        }
        faces.push(orbit);
    }
    let outer_face = face_of[a.outer().ix()] as usize;
    FaceDecomposition { face_of, faces, outer_face }
}

pub fn faces(a: &Arrangement) -> Result<FaceDecomposition> {
    a.require_sound()?;
    Ok(faces_unchecked(a))
}
