use std::collections::BTreeMap;

use digonlab::arrangement::canonical_code;
use digonlab::constructions::grunbaum;
use digonlab::enumeration::{enumerate, sweep, EnumerationConfig, Strategy};

// class counts and the digon histogram are regression values from the first
// agreeing run of both strategies
const C3: usize = 2;
const C4: usize = 8;
const M3: usize = 3;

#[test]
fn three_curves() {
    let run = enumerate(3, &EnumerationConfig::default()).unwrap();
    assert_eq!(run.len(), C3);
    let s = sweep(&run).unwrap();
    assert_eq!(s.failures, 0, "{:?}", s.failing);
    assert_eq!(s.max_digons, M3);
    assert!(s.max_digons <= 4);
}

#[test]
fn four_curves() {
    let a = enumerate(4, &EnumerationConfig::with_strategy(Strategy::IncrementalFaces)).unwrap();
    let b = enumerate(4, &EnumerationConfig::with_strategy(Strategy::CrossingSequences)).unwrap();
    assert_eq!(a.codes(), b.codes());
    assert_eq!(a.len(), C4);
    let s = sweep(&a).unwrap();
    assert_eq!(s.failures, 0, "{:?}", s.failing);
    assert_eq!(s.max_digons, 6);
    assert_eq!(s.histogram, BTreeMap::from([(0, 2), (1, 1), (2, 1), (3, 2), (4, 1), (6, 1)]));
    assert_eq!(s.odd_pairs, 0);
    assert!(s.hanani_tutte_consistent);
    let g4 = canonical_code(&grunbaum(4).unwrap()).unwrap();
    assert!(a.codes().contains(&g4));
}

#[test]
fn corrupted_decision_is_caught() {
    use digonlab::digon::{check_conditions, pair_parity, pipeline, Parity};
    use digonlab::transversal::BaseChoice;
    let mut p = pipeline(&grunbaum(6).unwrap(), BaseChoice::Default).unwrap();
    let g = &p.cover;
    let len = g.len();
    // a decision of edge k at an endpoint of an independent edge j
    let (k, j, pos) = (0..g.edges.len())
        .flat_map(|k| (0..g.edges.len()).map(move |j| (k, j)))
        .filter(|&(k, j)| g.independent(k, j))
        .find_map(|(k, j)| {
            let e = g.edges[j];
            [e.source, e.target].into_iter().find(|&x| g.edges[k].contains(x, len)).map(|x| (k, j, x))
        })
        .unwrap();
    assert_eq!(pair_parity(g, &p.table, k, j).unwrap().parity, Parity::Even);
    let d = p.table.get(k, pos).unwrap();
    p.table.set(k, pos, d.flip());
    assert_eq!(pair_parity(&p.cover, &p.table, k, j).unwrap().parity, Parity::Odd);
    assert!(!check_conditions(&p.ctx, &p.cover, &p.table).ok());
}
