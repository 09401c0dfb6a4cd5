//! Exhaustive generation of pairwise crossing arrangements by inserting one
//! curve at a time, with isomorphism rejection by canonical code.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{
    canonical_code, canonical_form, digons, faces, insert_curve, validate, Arrangement, CanonicalCode, Crossing,
    CurveId, MapEdit,
};
use crate::digon::{verify_bound, Status, VerificationReport};
use crate::constructions::two_circles;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// Grow the new curve face by face on a live copy of the map.
    IncrementalFaces,
    /// Enumerate crossing sequences on the static map, then realise and validate.
    CrossingSequences,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Strategy::IncrementalFaces),
            "b" => Ok(Strategy::CrossingSequences),
            _ => Err(Error::UnsupportedParameter(format!("unknown strategy {s:?} (expected a or b)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub strategy: Strategy,
    /// Required for five curves.
    pub allow_long: bool,
    pub max_arrangements: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { strategy: Strategy::IncrementalFaces, allow_long: false, max_arrangements: None, time_limit: None }
    }
}

impl EnumerationConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        EnumerationConfig { strategy, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationRun {
    pub n: usize,
    pub strategy: Strategy,
    /// Canonical representatives sorted by code.
    pub arrangements: Vec<(CanonicalCode, Arrangement)>,
}

impl EnumerationRun {
    pub fn codes(&self) -> Vec<CanonicalCode> {
        self.arrangements.iter().map(|(c, _)| c.clone()).collect()
    }
    pub fn len(&self) -> usize {
        self.arrangements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrangements.is_empty()
    }
}

type Found = BTreeMap<CanonicalCode, Arrangement>;

fn record(found: &mut Found, a: Arrangement) -> Result<()> {
    let code = canonical_code(&a)?;
    if let std::collections::btree_map::Entry::Vacant(e) = found.entry(code) {
        e.insert(canonical_form(&a)?);
    }
    Ok(())
}

struct Incremental<'a> {
    base: &'a Arrangement,
    new: u32,
    found: Found,
}

impl Incremental<'_> {
    fn dfs(&mut self, e: &MapEdit, at: u32, close: u32, counts: &mut Vec<u8>) -> Result<()> {
        let face = e.face_orbit(e.rot[at as usize]);
        if counts.iter().all(|&c| c == 2) {
            if face.contains(&e.rot[close as usize]) {
                let mut done = e.clone();
                done.chord(at, close, self.new);
                let a = done.finish()?;
                debug_assert!(validate(&a).valid);
                record(&mut self.found, a)?;
            }
            return Ok(());
        }
        for &x in &face {
            let c = e.curve[x as usize];
            if c == self.new || counts[c as usize] >= 2 {
                continue;
            }
            let mut next = e.clone();
            let (f, b) = next.split(x);
            next.chord(at, b, self.new);
            counts[c as usize] += 1;
            self.dfs(&next, f, close, counts)?;
            counts[c as usize] -= 1;
        }
        Ok(())
    }
}

fn extend_incremental(a: &Arrangement) -> Result<Found> {
    let n = a.curve_count();
    let mut st = Incremental { base: a, new: n as u32, found: Found::new() };
    for x0 in a.darts_of(CurveId(0)).collect::<Vec<_>>() {
        let mut e = MapEdit::from(st.base);
        let (f0, b0) = e.split(x0.0);
        let mut counts = vec![0u8; n];
        counts[0] = 1;
        st.dfs(&e, f0, b0, &mut counts)?;
    }
    Ok(st.found)
}

struct Sequences<'a> {
    a: &'a Arrangement,
    f: crate::arrangement::FaceDecomposition,
    seq: Vec<u32>,
    counts: Vec<u8>,
    found: Found,
}

impl Sequences<'_> {
    fn dfs(&mut self, face: usize) -> Result<()> {
        if self.counts.iter().all(|&c| c == 2) {
            if face == self.f.face(crate::Dart(self.seq[0])) {
                self.realise()?;
            }
            return Ok(());
        }
        let darts: Vec<u32> = self.f.faces[face].iter().map(|d| d.0).collect();
        for x in darts {
            let c = self.a.curve(crate::Dart(x)).ix();
            if self.counts[c] >= 2 {
                continue;
            }
            self.counts[c] += 1;
            self.seq.push(x);
            let next = self.f.face(self.a.rev(crate::Dart(x)));
            self.dfs(next)?;
            self.seq.pop();
            self.counts[c] -= 1;
        }
        Ok(())
    }

    /// Tries every order of the crossing points on edges crossed twice.
    fn realise(&mut self) -> Result<()> {
        let key = |d: u32| d.min(self.a.rev(crate::Dart(d)).0);
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut pairs = Vec::new();
        for (i, &d) in self.seq.iter().enumerate() {
            if let Some(&j) = first.get(&key(d)) {
                pairs.push((j, i));
            } else {
                first.insert(key(d), i);
            }
        }
        for mask in 0u32..(1 << pairs.len()) {
            let mut t = vec![0.5f64; self.seq.len()];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                let (ti, tj) = if mask >> k & 1 == 0 { (1.0 / 3.0, 2.0 / 3.0) } else { (2.0 / 3.0, 1.0 / 3.0) };
                t[i] = ti;
                t[j] = tj;
            }
            let cr: Vec<Crossing> = self
                .seq
                .iter()
                .zip(&t)
                .map(|(&d, &tk)| {
                    let along = if d == key(d) { tk } else { 1.0 - tk };
                    Crossing::new(crate::Dart(d), along)
                })
                .collect();
            let b = insert_curve(self.a, &cr)?;
            if validate(&b).valid {
                record(&mut self.found, b)?;
            }
        }
        Ok(())
    }
}

fn extend_sequences(a: &Arrangement) -> Result<Found> {
    let f = faces(a)?;
    let mut st = Sequences { a, f, seq: Vec::new(), counts: vec![0; a.curve_count()], found: Found::new() };
    for x0 in a.darts_of(CurveId(0)).collect::<Vec<_>>() {
        st.counts[0] = 1;
        st.seq.push(x0.0);
        let next = st.f.face(a.rev(x0));
        st.dfs(next)?;
        st.seq.pop();
        st.counts[0] = 0;
    }
    Ok(st.found)
}

fn extend_found(a: &Arrangement, strategy: Strategy) -> Result<Found> {
    a.ensure_valid()?;
    if a.touch_allowed() {
        return Err(Error::UnsupportedParameter("extension of arrangements with touchings".into()));
    }
    match strategy {
        Strategy::IncrementalFaces => extend_incremental(a),
        Strategy::CrossingSequences => extend_sequences(a),
    }
}

/// All inequivalent arrangements obtained from `a` by adding one curve,
/// as canonical representatives sorted by code.
pub fn extend_all(a: &Arrangement, strategy: Strategy) -> Result<Vec<Arrangement>> {
    Ok(extend_found(a, strategy)?.into_values().collect())
}

pub fn enumerate(n: usize, config: &EnumerationConfig) -> Result<EnumerationRun> {
    if n < 2 {
        return Err(Error::UnsupportedParameter("enumeration starts at two curves".into()));
    }
    if n > 5 {
        return Err(Error::ResourceLimit(format!("enumeration is capped at five curves, asked for {n}")));
    }
    if n == 5 && !config.allow_long {
        return Err(Error::ResourceLimit("five curves needs the long-running flag".into()));
    }
    let start = Instant::now();
    let seed = canonical_form(&two_circles())?;
    let mut level: Found = Found::new();
    level.insert(canonical_code(&seed)?, seed);
    for _ in 3..=n {
        let parents: Vec<&Arrangement> = level.values().collect();
        let parts: Vec<Result<Found>> = parents.par_iter().map(|a| extend_found(a, config.strategy)).collect();
        let mut next = Found::new();
        for p in parts {
            for (k, v) in p? {
                next.entry(k).or_insert(v);
            }
            if let Some(max) = config.max_arrangements {
                if next.len() > max {
                    return Err(Error::ResourceLimit(format!("more than {max} arrangements")));
                }
            }
        }
        if let Some(limit) = config.time_limit {
            if start.elapsed() > limit {
                return Err(Error::ResourceLimit(format!("time limit of {:?} exceeded", limit)));
            }
        }
        level = next;
    }
    Ok(EnumerationRun { n, strategy: config.strategy, arrangements: level.into_iter().collect() })
}

/// One rooting of an enumerated arrangement that did not pass.
#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub index: usize,
    pub outer: u32,
    pub status: Status,
    pub failures: Vec<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub strategy: Strategy,
    pub total: usize,
    /// Arrangements whose every rooting passed.
    pub passes: usize,
    pub failures: usize,
    pub rootings_checked: usize,
    pub max_digons: usize,
    pub bound: usize,
    /// Digon count -> number of arrangements.
    pub histogram: BTreeMap<usize, usize>,
    pub conditions_checked: usize,
    pub parity_pairs_checked: usize,
    pub odd_pairs: usize,
    pub hanani_tutte_consistent: bool,
    pub failing: Vec<SweepFailure>,
}

/// Rootings of `a` at every face that is not a digon, one per face.
pub fn rootings(a: &Arrangement) -> Result<Vec<Arrangement>> {
    let f = faces(a)?;
    f.faces
        .iter()
        .filter(|o| o.len() != 2)
        .map(|o| a.with_outer(*o.iter().min().expect("faces are non-empty")))
        .collect()
}

/// Verifies every enumerated arrangement at every admissible rooting.
pub fn sweep(run: &EnumerationRun) -> Result<SweepSummary> {
    type PerArrangement = (usize, Vec<VerificationReport>, Vec<u32>);
    let per: Vec<Result<PerArrangement>> = run
        .arrangements
        .par_iter()
        .map(|(_, a)| {
            let roots = rootings(a)?;
            let outers = roots.iter().map(|r| r.outer().0).collect();
            let digon_count = digons(&roots[0])?.len();
            Ok((digon_count, roots.iter().map(verify_bound).collect(), outers))
        })
        .collect();
    let mut s = SweepSummary {
        n: run.n,
        strategy: run.strategy,
        total: run.len(),
        passes: 0,
        failures: 0,
        rootings_checked: 0,
        max_digons: 0,
        bound: (2 * run.n).saturating_sub(2),
        histogram: BTreeMap::new(),
        conditions_checked: 0,
        parity_pairs_checked: 0,
        odd_pairs: 0,
        hanani_tutte_consistent: true,
        failing: Vec::new(),
    };
    for (index, r) in per.into_iter().enumerate() {
        let (dc, reps, outers) = r?;
        *s.histogram.entry(dc).or_insert(0) += 1;
        s.max_digons = s.max_digons.max(dc);
        let mut all = true;
        for (rep, outer) in reps.into_iter().zip(outers) {
            s.rootings_checked += 1;
            if let Some(c) = &rep.conditions {
                s.conditions_checked += c.a.checked + c.b.checked + c.c.checked + c.opposite.checked;
            }
            s.parity_pairs_checked += rep.parity_pairs.checked;
            s.odd_pairs += rep.parity_pairs.odd;
            s.hanani_tutte_consistent &= rep.hanani_tutte_consistent();
            if !rep.passed() {
                all = false;
                s.failing.push(SweepFailure { index, outer, status: rep.status, failures: rep.failures, error: rep.error });
            }
        }
        if all {
            s.passes += 1;
        } else {
            s.failures += 1;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::digons;

    #[test]
    fn n2_is_unique() {
        let r = enumerate(2, &EnumerationConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn strategies_agree_n3() {
        let a = enumerate(3, &EnumerationConfig::with_strategy(Strategy::IncrementalFaces)).unwrap();
        let b = enumerate(3, &EnumerationConfig::with_strategy(Strategy::CrossingSequences)).unwrap();
        assert_eq!(a.codes(), b.codes());
        for (_, x) in &a.arrangements {
            assert!(validate(x).valid);
            let (x, _) = crate::arrangement::normalize_outer(x).unwrap();
            assert!(digons(&x).unwrap().len() <= 3);
        }
    }

    #[test]
    fn sweep_small() {
        let r = enumerate(3, &EnumerationConfig::default()).unwrap();
        let s = sweep(&r).unwrap();
        assert_eq!(s.total, 2);
        assert_eq!(s.passes, 2, "{:?}", s.failing);
        assert_eq!(s.max_digons, 3);
        assert_eq!(s.histogram, BTreeMap::from([(0, 1), (3, 1)]));
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate(5, &EnumerationConfig::default()), Err(Error::ResourceLimit(_))));
        assert!(matches!(enumerate(6, &EnumerationConfig::default()), Err(Error::ResourceLimit(_))));
        let cfg = EnumerationConfig { max_arrangements: Some(1), ..Default::default() };
        assert!(matches!(enumerate(3, &cfg), Err(Error::ResourceLimit(_))));
    }
}
