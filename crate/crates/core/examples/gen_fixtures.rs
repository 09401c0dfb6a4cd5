//! Regenerates the PCA files under `fixtures/`.
//!
//!     cargo run -p digonlab --example gen_fixtures -- fixtures

use std::collections::BTreeSet;
use std::path::PathBuf;

use digonlab::arrangement::{
    canonical_code, curve_digon_side, digons, faces, normalize_outer, oriented_code, prune, side_labeling,
};
use digonlab::constructions::{grunbaum_wiring, two_circles, venn3};
use digonlab::enumeration::{enumerate, EnumerationConfig};
use digonlab::pca::to_pca;
use digonlab::transversal::{insert_transversal_with, BaseChoice, PointKind};
use digonlab::{Arrangement, CurveId};

fn digon_pairs(a: &Arrangement) -> BTreeSet<(u32, u32)> {
    let (a, _) = normalize_outer(a).unwrap();
    digons(&a).unwrap().iter().map(|d| (d.curves.0 .0, d.curves.1 .0)).collect()
}

fn perms3() -> Vec<[u32; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// Rooting and labelling of the three-digon arrangement in which curves 0
/// and 2 keep their digons on the bounded side, curve 1 on the outer side,
/// and the edge from curve 2's exit to curve 0's entry is passed inside at
/// curve 1's exit and outside at its entry.
fn figure4(base: &Arrangement) -> Arrangement {
    for a0 in [base.clone(), base.mirror()] {
        for p in perms3() {
            let a1 = a0.relabel_curves(&p).unwrap();
            let f = faces(&a1).unwrap();
            for orbit in &f.faces {
                if orbit.len() == 2 {
                    continue;
                }
                let a = a1.with_outer(*orbit.iter().min().unwrap()).unwrap();
                let bounded = |c: u32| {
                    let l = side_labeling(&a, CurveId(c)).unwrap();
                    curve_digon_side(&a, CurveId(c), None).unwrap() != Some(l.outer_side)
                };
                if !(bounded(0) && !bounded(1) && bounded(2)) {
                    continue;
                }
                for base in 0..3 {
                    let Ok(ctx) = insert_transversal_with(&a, BaseChoice::Curve(CurveId(base))) else { continue };
                    let pt = |k| ctx.cyclic_sequence[ctx.position(CurveId(1), k).unwrap()];
                    let d_in = ctx.d_value(&pt(PointKind::In), CurveId(2), CurveId(0)).unwrap();
                    let d_out = ctx.d_value(&pt(PointKind::Out), CurveId(2), CurveId(0)).unwrap();
                    if d_in == 2 && d_out == 1 {
                        return ctx.arrangement;
                    }
                }
            }
        }
    }
    panic!("no labelling of the three-digon arrangement matches");
}

/// Relabels curves so that a path-shaped digon graph reads 0-1-2-3.
fn as_path(a: &Arrangement) -> Option<Arrangement> {
    let pairs = digon_pairs(a);
    let n = a.curve_count();
    if pairs.len() != n - 1 {
        return None;
    }
    let deg = |c: u32| pairs.iter().filter(|e| e.0 == c || e.1 == c).count();
    let mut cur = (0..n as u32).find(|&c| deg(c) == 1)?;
    let mut order = vec![cur];
    while order.len() < n {
        let next = pairs
            .iter()
            .filter_map(|&(x, y)| if x == cur { Some(y) } else if y == cur { Some(x) } else { None })
            .find(|c| !order.contains(c))?;
        order.push(next);
        cur = next;
    }
    let mut perm = vec![0u32; n];
    for (i, &c) in order.iter().enumerate() {
        perm[c as usize] = i as u32;
    }
    Some(normalize_outer(&a.relabel_curves(&perm).ok()?).ok()?.0)
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let write = |name: &str, a: &Arrangement| {
        a.ensure_valid().unwrap();
        std::fs::write(dir.join(format!("{name}.pca")), to_pca(a)).unwrap();
        println!("{name}: {} curves, {} darts", a.curve_count(), a.dart_count());
    };
    write("two_circle", &two_circles());
    write("venn3", &venn3());
    write("grunbaum6", &grunbaum_wiring(6).unwrap());

    let three = enumerate(3, &EnumerationConfig::default()).unwrap();
    let full = three.arrangements.iter().map(|x| &x.1).find(|a| digon_pairs(a).len() == 3).unwrap();
    write("figure4", &figure4(full));

    let four = enumerate(4, &EnumerationConfig::default()).unwrap();
    let four: Vec<&Arrangement> = four.arrangements.iter().map(|x| &x.1).collect();
    let chain = four.iter().find_map(|a| as_path(a)).expect("a four-curve chain");
    write("chain4", &chain);
    let pr = four
        .iter()
        .find(|a| {
            let (n, _) = normalize_outer(a).unwrap();
            let (p, removed) = prune(&n).unwrap();
            removed.len() == 1 && p.curve_count() == 3
        })
        .expect("a four-curve arrangement with one digonless curve");
    write("prune4", &normalize_outer(pr).unwrap().0);
    let chiral = four
        .iter()
        .find(|a| oriented_code(a).unwrap() != oriented_code(&a.mirror()).unwrap())
        .expect("a chiral four-curve arrangement");
    write("chiral4", &normalize_outer(chiral).unwrap().0);

    // golden canonical codes, one line per fixture
    let mut codes = String::new();
    for name in ["two_circle", "venn3", "grunbaum6", "figure4", "chain4", "prune4", "chiral4"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.pca"))).unwrap();
        let a = digonlab::pca::from_pca(&text).unwrap();
        codes += &format!("{name} {}\n", canonical_code(&a).unwrap());
    }
    std::fs::write(dir.join("codes.txt"), codes).unwrap();
}
