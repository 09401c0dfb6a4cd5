//! Conditions on the decisions of independent edge pairs that force an even
//! number of crossings.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::drawing::{Decision, DecisionTable, PairBits};
use super::graph::{CoverEdge, DoubleCoverGraph};
use super::parity::{pair_bits, table_parity, OrderCase};
use crate::arrangement::CurveId;
use crate::constructions::parallel_substitute;
use crate::error::{Error, Result};
use crate::transversal::{PointKind, TransversalContext};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub passed: usize,
}

impl Tally {
    fn add(&mut self, ok: bool) {
        self.checked += 1;
        self.passed += usize::from(ok);
    }
    fn merge(&mut self, o: Tally) {
        self.checked += o.checked;
        self.passed += o.passed;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionViolation {
    pub edges: (usize, usize),
    pub condition: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    #[serde(rename = "A")]
    pub a: Tally,
    #[serde(rename = "B")]
    pub b: Tally,
    #[serde(rename = "C")]
    pub c: Tally,
    /// Pairs whose spans do not overlap; nothing to check.
    pub disjoint: usize,
    /// Pairs on the same two curves, which must have disjoint spans.
    pub opposite: Tally,
    /// Pairs sharing one curve, checked after substituting a parallel copy.
    pub shared: Tally,
    pub violations: Vec<ConditionViolation>,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, o: ConditionReport) {
        self.a.merge(o.a);
        self.b.merge(o.b);
        self.c.merge(o.c);
        self.disjoint += o.disjoint;
        self.opposite.merge(o.opposite);
        self.shared.merge(o.shared);
        self.violations.extend(o.violations);
    }
}

fn bit(bits: PairBits, k: u8) -> bool {
    bits >> k & 1 == 1
}

/// The condition that applies to an order case, and whether it holds.
pub fn condition_holds(case: OrderCase, bits: PairBits) -> Option<(char, bool)> {
    match case {
        OrderCase::Disjoint => None,
        OrderCase::Interleaved => Some(('A', bit(bits, 0) != bit(bits, 3))),
        OrderCase::Nested => Some(('B', bit(bits, 0) == bit(bits, 1))),
        OrderCase::DoublyInterleaved => Some(('C', bit(bits, 2) != bit(bits, 1) && bit(bits, 0) != bit(bits, 3))),
    }
}

fn tally(rep: &mut ConditionReport, which: char, ok: bool) {
    match which {
        'A' => rep.a.add(ok),
        'B' => rep.b.add(ok),
        _ => rep.c.add(ok),
    }
}

fn edge_in(ctx: &TransversalContext, from: CurveId, to: CurveId) -> Result<CoverEdge> {
    Ok(CoverEdge {
        from,
        to,
        source: ctx.position(from, PointKind::Out).ok_or(Error::MissingDigonRegion(from))?,
        target: ctx.position(to, PointKind::In).ok_or(Error::MissingDigonRegion(to))?,
    })
}

fn bits_in(ctx: &TransversalContext, e: [CoverEdge; 2]) -> Result<(OrderCase, bool, PairBits)> {
    pair_bits(ctx.len(), e, |k, p| {
        Ok(Decision::from_d(ctx.d_value(&ctx.cyclic_sequence[p], e[k].from, e[k].to)?))
    })
}

/// Context with a parallel copy of `beta` that took over its digon with
/// `delta`, and the id of the copy.
type Substituted = Result<(TransversalContext, CurveId)>;

fn substitute(ctx: &TransversalContext, beta: CurveId, delta: CurveId) -> Substituted {
    let (aug, copy) = parallel_substitute(&ctx.arrangement, beta, delta)?;
    Ok((TransversalContext::from_augmented(aug, ctx.c)?, copy))
}

enum PairKind {
    Distinct,
    Opposite,
    /// Normalized so that the first edge ends on the curve the second leaves.
    Shared { first: usize, second: usize },
}

fn pair_kind(g: &DoubleCoverGraph, i: usize, j: usize) -> PairKind {
    let (x, y) = (g.edges[i], g.edges[j]);
    if x.from == y.to && x.to == y.from {
        PairKind::Opposite
    } else if x.to == y.from {
        PairKind::Shared { first: i, second: j }
    } else if y.to == x.from {
        PairKind::Shared { first: j, second: i }
    } else {
        PairKind::Distinct
    }
}

fn check_pair(
    g: &DoubleCoverGraph,
    t: &DecisionTable,
    subs: &BTreeMap<(CurveId, CurveId), Substituted>,
    i: usize,
    j: usize,
    rep: &mut ConditionReport,
) {
    let fail = |rep: &mut ConditionReport, cond: &str, detail: String| {
        rep.violations.push(ConditionViolation { edges: (i, j), condition: cond.into(), detail });
    };
    let idx = [i, j];
    let from_table = pair_bits(g.len(), [g.edges[i], g.edges[j]], |k, p| {
        t.get(idx[k], p).ok_or_else(|| Error::Consistency(format!("edge {} has no decision at {p}", idx[k])))
    });
    let (case, _, bits) = match from_table {
        Ok(x) => x,
        Err(e) => return fail(rep, "table", e.to_string()),
    };
    match pair_kind(g, i, j) {
        PairKind::Distinct => match condition_holds(case, bits) {
            None => rep.disjoint += 1,
            Some((w, ok)) => {
                tally(rep, w, ok);
                if !ok {
                    fail(rep, &w.to_string(), format!("{case:?} with decisions {bits:04b}"));
                }
            }
        },
        PairKind::Opposite => {
            let ok = case == OrderCase::Disjoint;
            rep.opposite.add(ok);
            if !ok {
                fail(rep, "opposite", format!("spans overlap as {case:?}"));
            }
        }
        PairKind::Shared { first, second } => {
            let (e1, e2) = (g.edges[first], g.edges[second]);
            let res = subs.get(&(e2.from, e2.to)).ok_or_else(|| Error::Consistency("substitution missing".into()));
            let outcome = res.and_then(|r| r.as_ref().map_err(|e| Error::SurgeryFailed(e.to_string()))).and_then(
                |(sub, copy)| {
                    let f1 = edge_in(sub, e1.from, e1.to)?;
                    let f2 = edge_in(sub, *copy, e2.to)?;
                    let (c2, _, b2) = bits_in(sub, [f1, f2])?;
                    let orig = pair_bits(g.len(), [e1, e2], |k, p| {
                        let e = [first, second][k];
                        t.get(e, p).ok_or_else(|| Error::Consistency(format!("edge {e} has no decision at {p}")))
                    })?;
                    Ok((orig, c2, b2))
                },
            );
            match outcome {
                Err(e) => {
                    rep.shared.add(false);
                    fail(rep, "shared", e.to_string());
                }
                Ok(((c1, _, b1), c2, b2)) => {
                    let cond = condition_holds(c2, b2);
                    let mut ok = true;
                    if let Some((w, held)) = cond {
                        tally(rep, w, held);
                        if !held {
                            ok = false;
                            fail(rep, &w.to_string(), format!("after substitution: {c2:?} with decisions {b2:04b}"));
                        }
                    }
                    if c1 != c2 || b1 != b2 || table_parity(c1, b1) != table_parity(c2, b2) {
                        ok = false;
                        fail(
                            rep,
                            "shared",
                            format!("substitution changed the pair: {c1:?}/{b1:04b} -> {c2:?}/{b2:04b}"),
                        );
                    }
                    rep.shared.add(ok);
                }
            }
        }
    }
}

/// Checks every unordered pair of independent edges.
pub fn check_conditions(ctx: &TransversalContext, g: &DoubleCoverGraph, t: &DecisionTable) -> ConditionReport {
    let m = g.edges.len();
    let mut wanted: Vec<(CurveId, CurveId)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if g.independent(i, j) {
                if let PairKind::Shared { second, .. } = pair_kind(g, i, j) {
                    wanted.push((g.edges[second].from, g.edges[second].to));
                }
            }
        }
    }
    wanted.sort();
    wanted.dedup();
    let subs: BTreeMap<(CurveId, CurveId), Substituted> =
        wanted.into_par_iter().map(|(b, d)| ((b, d), substitute(ctx, b, d))).collect();
    let parts: Vec<ConditionReport> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut rep = ConditionReport::default();
            for j in i + 1..m {
                if g.independent(i, j) {
                    check_pair(g, t, &subs, i, j, &mut rep);
                }
            }
            rep
        })
        .collect();
    let mut rep = ConditionReport::default();
    for p in parts {
        rep.merge(p);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::digon::{decision_table, digon_graph, double_cover};
    use crate::transversal::insert_transversal;

    fn pipeline(n: usize) -> (TransversalContext, DoubleCoverGraph, DecisionTable) {
        let a = constructions::grunbaum(n).unwrap();
        let ctx = insert_transversal(&a).unwrap();
        let g = double_cover(&digon_graph(&a).unwrap(), &ctx).unwrap();
        let t = decision_table(&ctx, &g).unwrap();
        (ctx, g, t)
    }

    #[test]
    fn grunbaum_conditions_hold() {
        for n in 4..=7 {
            let (ctx, g, t) = pipeline(n);
            let rep = check_conditions(&ctx, &g, &t);
            assert!(rep.ok(), "n = {n}: {:?}", rep.violations);
            assert!(rep.shared.checked > 0);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let (ctx, g, t) = pipeline(6);
        let clean = check_conditions(&ctx, &g, &t);
        let mut caught = false;
        for (&(e, p), &d) in &t.entries {
            let mut bad = t.clone();
            bad.set(e, p, d.flip());
            if !check_conditions(&ctx, &g, &bad).ok() {
                caught = true;
                break;
            }
        }
        assert!(clean.ok() && caught);
    }

    #[test]
    fn condition_table() {
        assert_eq!(condition_holds(OrderCase::Interleaved, 0b0001), Some(('A', true)));
        assert_eq!(condition_holds(OrderCase::Nested, 0b0011), Some(('B', true)));
        assert_eq!(condition_holds(OrderCase::DoublyInterleaved, 0b0101), Some(('C', true)));
        assert_eq!(condition_holds(OrderCase::Disjoint, 0), None);
    }
}
