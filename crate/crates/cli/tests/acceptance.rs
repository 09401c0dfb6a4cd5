//! Acceptance gate. Runs without the libtest harness so that every
//! criterion prints exactly one line, pass or fail.
//!
//! Set DIGONLAB_LONG=1 to add the five-curve sweep to criterion 2.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use digonlab::arrangement::{
    canonical_code, collapse_digon, curve_digon_side, digons, normalize_outer, resolve_all_touchings, validate,
    CanonicalCode,
};
use digonlab::digon::{digon_graph, table_against_drawing, verify_bound, OrderCase, VerificationReport};
use digonlab::enumeration::{enumerate, rootings, EnumerationConfig, EnumerationRun, Strategy};
use digonlab::{constructions, fixtures, Arrangement};

const VERIFY_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP3_TIME_LIMIT: Duration = Duration::from_secs(10);
const SWEEP4_TIME_LIMIT: Duration = Duration::from_secs(600);
const C3: usize = 2;
const C4: usize = 8;
const C5: usize = 278;
const TOUCH_SEEDS: u64 = 6;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_digonlab"))
}

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}.pca", env!("CARGO_MANIFEST_DIR"))
}

/// Digons counted straight from the PCA tables: orbits of rotation after
/// reverse with two darts on different curves, skipping the outer face.
fn raw_digons(a: &Arrangement) -> usize {
    raw_faces(a)
        .iter()
        .filter(|f| f.len() == 2 && a.curve_table()[f[0] as usize] != a.curve_table()[f[1] as usize])
        .filter(|f| !f.contains(&a.outer().0))
        .count()
}

fn orbits(n: usize, step: impl Fn(u32) -> u32) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = s;
        while !seen[d as usize] {
            seen[d as usize] = true;
            orbit.push(d);
            d = step(d);
        }
        out.push(orbit);
    }
    out
}

fn raw_faces(a: &Arrangement) -> Vec<Vec<u32>> {
    let (rot, rev) = (a.rotation_table(), a.reverse_table());
    orbits(a.dart_count(), |d| rot[rev[d as usize] as usize])
}

fn raw_euler(a: &Arrangement) -> i64 {
    let rot = a.rotation_table();
    let v = orbits(a.dart_count(), |d| rot[d as usize]).len() as i64;
    v - a.dart_count() as i64 / 2 + raw_faces(a).len() as i64
}

fn all_rootings(run: &EnumerationRun) -> Vec<Arrangement> {
    run.arrangements.iter().flat_map(|(_, a)| rootings(a).unwrap()).collect()
}

fn fixture_bases() -> Vec<(String, Arrangement)> {
    fixtures::names().map(|n| (n.to_string(), fixtures::load(n).unwrap())).collect()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let out = bin().args(["verify", &fixture_path("grunbaum6")]).output().map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let raw = raw_digons(&normalize_outer(&fixtures::load("grunbaum6").unwrap()).unwrap().0);
    ensure(r["status"] == "pass", || format!("status {}", r["status"]))?;
    ensure(r["n"] == 6 && r["digon_count"] == 10 && r["bound"] == 10, || format!("{} digons", r["digon_count"]))?;
    ensure(raw == 10, || format!("raw face count gives {raw}"))?;
    ensure(r["planarity"]["edges"] == 20 && r["cover_edges"] == 20, || "cover edges != 20".into())?;
    ensure(r["planarity"]["planar"] == true, || "not planar".into())?;
    ensure(r["planarity"]["verdict"]["verdict"] == "planar", || format!("verdict {}", r["planarity"]["verdict"]))?;
    ensure(took < VERIFY_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("10 digons = 2n-2, 20 = 4n-4 edges, planar, {took:.2?} wall"))
}

fn sweep_checks(n: usize, limit: Duration, expected: usize) -> Result<(EnumerationRun, String), String> {
    let start = Instant::now();
    let cfg = EnumerationConfig { allow_long: n == 5, ..Default::default() };
    let run = enumerate(n, &cfg).map_err(|e| e.to_string())?;
    let mut max = 0;
    let mut checked = 0;
    for a in all_rootings(&run) {
        let r = verify_bound(&a);
        ensure(r.passed(), || format!("n={n}: {:?} {:?}", r.failures, r.error))?;
        ensure(r.digon_count <= 2 * n - 2, || format!("n={n}: {} digons", r.digon_count))?;
        ensure(r.digon_count == raw_digons(&normalize_outer(&a).unwrap().0), || "raw digon count differs".into())?;
        max = max.max(r.digon_count);
        checked += 1;
    }
    let took = start.elapsed();
    ensure(run.len() == expected, || format!("n={n}: {} classes, expected {expected}", run.len()))?;
    ensure(took < limit, || format!("n={n} took {took:?}"))?;
    Ok((run, format!("n={n}: {expected} classes, {checked} rootings, max {max}, {took:.1?}")))
}

fn criterion_2() -> Verdict {
    let out = bin().args(["sweep", "--n", "3"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("sweep --n 3 exit {:?}", out.status.code()))?;
    let s: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(s["failures"] == 0, || "cli sweep reports failures".into())?;
    let (_, m3) = sweep_checks(3, SWEEP3_TIME_LIMIT, C3)?;
    let (run4, m4) = sweep_checks(4, SWEEP4_TIME_LIMIT, C4)?;
    let max4 = run4.arrangements.iter().map(|(_, a)| raw_digons(&normalize_outer(a).unwrap().0)).max();
    ensure(max4 == Some(6), || format!("max over n=4 is {max4:?}"))?;
    let witness = canonical_code(&constructions::grunbaum(4).unwrap()).unwrap();
    ensure(run4.codes().contains(&witness), || "grunbaum(4) missing from n=4".into())?;
    let mut msg = format!("{m3}; {m4}; grunbaum(4) present");
    if std::env::var("DIGONLAB_LONG").is_ok_and(|v| v == "1") {
        let (run5, m5) = sweep_checks(5, SWEEP4_TIME_LIMIT, C5)?;
        let w5 = canonical_code(&constructions::grunbaum(5).unwrap()).unwrap();
        ensure(run5.codes().contains(&w5), || "grunbaum(5) missing from n=5".into())?;
        msg += &format!("; {m5}");
    }
    Ok(msg)
}

fn reports_for_all() -> Vec<(String, VerificationReport)> {
    let mut out = Vec::new();
    for n in [3, 4] {
        let run = enumerate(n, &EnumerationConfig::default()).unwrap();
        for (i, a) in all_rootings(&run).into_iter().enumerate() {
            out.push((format!("n={n} rooting {i}"), verify_bound(&a)));
        }
    }
    for (name, a) in fixture_bases() {
        if a.curve_count() >= 3 {
            out.push((name, verify_bound(&a)));
        }
    }
    for n in 4..=8 {
        out.push((format!("grunbaum({n})"), verify_bound(&constructions::grunbaum(n).unwrap())));
    }
    out
}

fn criterion_3(reports: &[(String, VerificationReport)]) -> Verdict {
    let (mut checked, mut shared, mut pairs) = (0, 0, 0);
    for (name, r) in reports {
        ensure(r.error.is_none(), || format!("{name}: {:?}", r.error))?;
        if let Some(c) = &r.conditions {
            ensure(c.violations.is_empty(), || format!("{name}: {:?}", c.violations))?;
            for t in [&c.a, &c.b, &c.c, &c.shared, &c.opposite] {
                ensure(t.passed == t.checked, || format!("{name}: tally {t:?}"))?;
            }
            checked += c.a.checked + c.b.checked + c.c.checked;
            shared += c.shared.checked;
        }
        let p = &r.parity_pairs;
        ensure(p.odd == 0 && p.even == p.checked, || format!("{name}: odd pairs {:?}", p.odd_pairs))?;
        ensure(p.oracle_disagreements == 0 && p.drawing_disagreements == 0, || format!("{name}: oracle disagrees"))?;
        pairs += p.checked;
    }
    ensure(shared > 0, || "no shared-curve pair was exercised".into())?;
    Ok(format!("{checked} condition checks ({shared} shared-curve), {pairs} independent pairs all even"))
}

fn criterion_4() -> Verdict {
    let all = table_against_drawing().map_err(|e| e.to_string())?;
    let nontrivial: Vec<_> = all.iter().filter(|c| c.case != OrderCase::Disjoint).collect();
    ensure(nontrivial.len() == 48, || format!("{} combinations", nontrivial.len()))?;
    let bad: Vec<_> = all.iter().filter(|c| !c.agrees()).collect();
    ensure(bad.is_empty(), || format!("disagreements {bad:?}"))?;
    Ok(format!("{} nontrivial + 16 disjoint combinations agree exactly", nontrivial.len()))
}

fn criterion_5(reports: &[(String, VerificationReport)]) -> Verdict {
    let mut graphs = 0;
    for (name, r) in reports {
        let Some(p) = &r.planarity else { continue };
        graphs += 1;
        let all_even = r.parity_pairs.odd == 0;
        ensure(all_even == p.planar, || format!("{name}: all even {all_even}, planar {}", p.planar))?;
        ensure(p.witness_checked, || format!("{name}: witness not checked"))?;
        let bound = 2 * p.vertices as i64 - 4;
        ensure(p.vertices < 3 || p.edges as i64 <= bound, || format!("{name}: {} > {bound}", p.edges))?;
    }
    Ok(format!("{graphs} cover graphs: parity and planarity agree, |E| <= 2|V|-4"))
}

fn criterion_6(reports: &[(String, VerificationReport)]) -> Verdict {
    let mut subjects: Vec<(String, Arrangement)> = fixture_bases();
    for n in [3, 4] {
        let run = enumerate(n, &EnumerationConfig::default()).unwrap();
        for (i, (_, a)) in run.arrangements.iter().enumerate() {
            subjects.push((format!("n={n} #{i}"), a.clone()));
        }
    }
    for (name, a) in &subjects {
        let v = validate(a);
        ensure(v.valid, || format!("{name}: {:?}", v.messages()))?;
        ensure(raw_euler(a) == 2, || format!("{name}: V-E+F = {}", raw_euler(a)))?;
        let base = match digonlab::digon::split_transversal(a).map_err(|e| e.to_string())? {
            Some((b, _)) => b,
            None => a.clone(),
        };
        let k = base.curve_count();
        let mut meet: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for d in base.vertex_darts() {
            let cs = base.curves_at(d);
            ensure(cs.len() == 2, || format!("{name}: vertex on {} curves", cs.len()))?;
            *meet.entry((cs[0].0, cs[1].0)).or_default() += 1;
        }
        ensure(meet.len() == k * (k - 1) / 2 && meet.values().all(|&m| m == 2), || format!("{name}: {meet:?}"))?;
        // two circles have only digon faces, nothing to normalise
        if k >= 3 {
            let nb = normalize_outer(&base).map_err(|e| format!("{name}: {e}"))?.0;
            for x in 0..k as u32 {
                curve_digon_side(&nb, digonlab::CurveId(x), None).map_err(|e| format!("{name}: {e}"))?;
            }
            digon_graph(&nb).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    let mut cyclic = 0;
    for (name, r) in reports {
        if let Some(cp) = &r.cyclic_pairs {
            ensure(cp.violations.is_empty(), || format!("{name}: {:?}", cp.violations))?;
            cyclic += cp.checked;
        }
    }
    Ok(format!("{} arrangements: Euler, two crossings per pair, one digon side, one digon per pair; {cyclic} cyclic patterns", subjects.len()))
}

fn criterion_7() -> Verdict {
    let mut msg = Vec::new();
    for (n, want) in [(3, C3), (4, C4)] {
        let a = enumerate(n, &EnumerationConfig::with_strategy(Strategy::IncrementalFaces)).map_err(|e| e.to_string())?;
        let b = enumerate(n, &EnumerationConfig::with_strategy(Strategy::CrossingSequences)).map_err(|e| e.to_string())?;
        let (ca, cb): (BTreeSet<CanonicalCode>, BTreeSet<CanonicalCode>) =
            (a.codes().into_iter().collect(), b.codes().into_iter().collect());
        ensure(ca == cb, || format!("n={n}: strategies differ ({} vs {})", ca.len(), cb.len()))?;
        ensure(ca.len() == want, || format!("n={n}: {} classes, frozen {want}", ca.len()))?;
        msg.push(format!("n={n}: {want}"));
    }
    Ok(format!("strategies agree, {}", msg.join(", ")))
}

fn touch_bases() -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> = enumerate(4, &EnumerationConfig::default())
        .unwrap()
        .arrangements
        .into_iter()
        .map(|(_, a)| normalize_outer(&a).unwrap().0)
        .filter(|a| !digons(a).unwrap().is_empty())
        .collect();
    out.extend((5..=7).map(|n| constructions::grunbaum(n).unwrap()));
    out
}

fn criterion_8() -> Verdict {
    let (mut runs, mut steps) = (0, 0);
    for (bi, base) in touch_bases().iter().enumerate() {
        let n = base.curve_count();
        let start_digons = digons(base).unwrap().len();
        for seed in 0..TOUCH_SEEDS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed * 1000 + bi as u64);
            let k = rng.gen_range(1..=start_digons);
            let mut t = base.clone();
            for _ in 0..k {
                let nt = normalize_outer(&t).unwrap().0;
                let ds = digons(&nt).unwrap();
                let face = ds[rng.gen_range(0..ds.len())].face;
                t = collapse_digon(&nt, face).map_err(|e| format!("base {bi}: {e}"))?;
            }
            ensure(t.touch_allowed() && validate(&t).valid, || format!("base {bi} seed {seed}: bad fixture"))?;
            let (done, trace) =
                resolve_all_touchings(&t, |vs| rng.gen_range(0..vs.len())).map_err(|e| format!("base {bi}: {e}"))?;
            ensure(trace[0].touchings == k, || format!("base {bi} seed {seed}: {} touchings", trace[0].touchings))?;
            let sum = trace[0].digons + trace[0].touchings;
            ensure(trace.iter().all(|s| s.digons + s.touchings == sum), || format!("base {bi}: {trace:?}"))?;
            let last = trace.last().unwrap();
            ensure(last.touchings == 0 && last.digons <= 2 * n - 2, || format!("base {bi}: final {last:?}"))?;
            ensure(validate(&done).valid, || format!("base {bi}: final arrangement invalid"))?;
            runs += 1;
            steps += trace.len() - 1;
        }
    }
    Ok(format!("{runs} randomized touch fixtures, {steps} resolutions, sum constant, final <= 2n-2"))
}

fn main() {
    let reports = reports_for_all();
    let results: Vec<(usize, &str, Verdict)> = vec![
        (1, "tightness witness", criterion_1()),
        (2, "exhaustive bound check", criterion_2()),
        (3, "conditions and parity", criterion_3(&reports)),
        (4, "parity table vs drawing oracle", criterion_4()),
        (5, "parity vs planarity", criterion_5(&reports)),
        (6, "structural properties", criterion_6(&reports)),
        (7, "dual-strategy enumeration", criterion_7()),
        (8, "touching resolution", criterion_8()),
    ];
    let mut failed = 0;
    for (k, name, r) in &results {
        match r {
            Ok(m) => println!("criterion {k} PASS  {name}: {m}"),
            Err(m) => {
                failed += 1;
                println!("criterion {k} FAIL  {name}: {m}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
