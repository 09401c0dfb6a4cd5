//! Crossing parity of two independent cover edges, read off their decisions.

use serde::Serialize;

use super::drawing::{simulate_annulus_drawing, Decision, DecisionTable, PairBits, ORACLE_ANGLES};
use super::graph::{CoverEdge, DoubleCoverGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderCase {
    Disjoint,
    Nested,
    Interleaved,
    DoublyInterleaved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParitySource {
    Table,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityVerdict {
    pub edges: (usize, usize),
    pub case: OrderCase,
    pub shared_curve: bool,
    pub parity: Parity,
    pub source: ParitySource,
}

/// Order of four distinct positions seen from the first edge's source.
/// Returns the case and whether the roles of the two edges must be swapped
/// so that the first edge is the outer (nested) or leading (interleaved) one.
pub fn classify_order(a: usize, b: usize, g: usize, d: usize, len: usize) -> Result<(OrderCase, bool)> {
    let ps = [a, b, g, d];
    for i in 0..4 {
        if ps[i] >= len {
            return Err(Error::DegeneratePositions(format!("position {} out of {len}", ps[i])));
        }
        for j in i + 1..4 {
            if ps[i] == ps[j] {
                return Err(Error::NotIndependent);
            }
        }
    }
    let off = |p: usize| (p + len - a) % len;
    let mut rest = [(off(b), 'b'), (off(g), 'g'), (off(d), 'd')];
    rest.sort();
    let key: String = rest.iter().map(|r| r.1).collect();
    Ok(match key.as_str() {
        "bgd" => (OrderCase::Disjoint, false),
        "bdg" => (OrderCase::Nested, true),
        "gbd" => (OrderCase::Interleaved, false),
        "gdb" => (OrderCase::Nested, false),
        "dbg" => (OrderCase::Interleaved, true),
        _ => (OrderCase::DoublyInterleaved, false),
    })
}

/// Odd-parity tables indexed by the decision bits (bit 0 = first edge at the
/// second's source, bit 1 = first edge at the second's target, bit 2 =
/// second edge at the first's source, bit 3 = second edge at the first's
/// target; set = inside). Checked against the drawing oracle in tests.
pub const ODD_INTERLEAVED: u16 = 0xAA55;
pub const ODD_NESTED: u16 = 0x6666;
pub const ODD_DOUBLY: u16 = 0x6996;

pub fn table_parity(case: OrderCase, bits: PairBits) -> Parity {
    let mask = match case {
        OrderCase::Disjoint => 0,
        OrderCase::Nested => ODD_NESTED,
        OrderCase::Interleaved => ODD_INTERLEAVED,
        OrderCase::DoublyInterleaved => ODD_DOUBLY,
    };
    if mask >> (bits & 15) & 1 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub case: OrderCase,
    pub bits: PairBits,
    pub table: Parity,
    pub crossings: usize,
}

impl TableCheck {
    pub fn agrees(&self) -> bool {
        self.table == Parity::of(self.crossings)
    }
}

/// Every decision combination of every order case, drawn and compared with
/// the table.
pub fn table_against_drawing() -> Result<Vec<TableCheck>> {
    let mut out = Vec::with_capacity(64);
    for case in [OrderCase::Disjoint, OrderCase::Nested, OrderCase::Interleaved, OrderCase::DoublyInterleaved] {
        for bits in 0..16u8 {
            let crossings = simulate_annulus_drawing(case_angles(case), bits)?;
            out.push(TableCheck { case, bits, table: table_parity(case, bits), crossings });
        }
    }
    Ok(out)
}

/// Oracle angles laid out in the given order case, first edge leading.
pub fn case_angles(case: OrderCase) -> [f64; 4] {
    let [p0, p1, p2, p3] = ORACLE_ANGLES;
    // [a, b, g, d]
    match case {
        OrderCase::Disjoint => [p0, p1, p2, p3],
        OrderCase::Interleaved => [p0, p2, p1, p3],
        OrderCase::Nested => [p0, p3, p1, p2],
        OrderCase::DoublyInterleaved => [p0, p3, p2, p1],
    }
}

fn bit_of(d: Option<Decision>, k: u8) -> Result<PairBits> {
    match d {
        Some(Decision::Inside) => Ok(1 << k),
        Some(Decision::Outside) => Ok(0),
        None => Err(Error::Consistency("missing decision inside a span".into())),
    }
}

struct Prepared {
    case: OrderCase,
    bits: PairBits,
    first: usize,
    second: usize,
}

/// Case, role swap and decision bits of two edges with distinct endpoints.
/// `look(k, p)` gives the decision of edge `k` (0 or 1) at position `p`.
pub fn pair_bits(
    len: usize,
    e: [CoverEdge; 2],
    look: impl Fn(usize, usize) -> Result<Decision>,
) -> Result<(OrderCase, bool, PairBits)> {
    let (case, swap) = classify_order(e[0].source, e[0].target, e[1].source, e[1].target, len)?;
    let (f, s) = if swap { (1, 0) } else { (0, 1) };
    let wants = [(f, e[s].source, 0), (f, e[s].target, 1), (s, e[f].source, 2), (s, e[f].target, 3)];
    let mut bits = 0;
    for (k, p, b) in wants {
        if e[k].contains(p, len) {
            bits |= bit_of(Some(look(k, p)?), b)?;
        }
    }
    Ok((case, swap, bits))
}

fn prepare(g: &DoubleCoverGraph, t: &DecisionTable, i: usize, j: usize) -> Result<Prepared> {
    if i >= g.edges.len() || j >= g.edges.len() {
        return Err(Error::Consistency(format!("edge index out of range: {i}, {j}")));
    }
    if !g.independent(i, j) {
        return Err(Error::NotIndependent);
    }
    let idx = [i, j];
    let (case, swap, bits) = pair_bits(g.len(), [g.edges[i], g.edges[j]], |k, p| {
        bit_decision(t.get(idx[k], p))
    })?;
    let (first, second) = if swap { (j, i) } else { (i, j) };
    Ok(Prepared { case, bits, first, second })
}

fn bit_decision(d: Option<Decision>) -> Result<Decision> {
    d.ok_or_else(|| Error::Consistency("missing decision inside a span".into()))
}

fn shares_curve(g: &DoubleCoverGraph, i: usize, j: usize) -> bool {
    let (a, b) = (g.edges[i], g.edges[j]);
    [a.from, a.to].iter().any(|c| *c == b.from || *c == b.to)
}

/// Parity of two independent edges from the frozen tables.
pub fn pair_parity(g: &DoubleCoverGraph, t: &DecisionTable, i: usize, j: usize) -> Result<ParityVerdict> {
    let p = prepare(g, t, i, j)?;
    Ok(ParityVerdict {
        edges: (p.first, p.second),
        case: p.case,
        shared_curve: shares_curve(g, i, j),
        parity: table_parity(p.case, p.bits),
        source: ParitySource::Table,
    })
}

/// Same pair, counted on an explicit two-edge drawing.
pub fn oracle_parity(g: &DoubleCoverGraph, t: &DecisionTable, i: usize, j: usize) -> Result<ParityVerdict> {
    let p = prepare(g, t, i, j)?;
    let n = simulate_annulus_drawing(case_angles(p.case), p.bits)?;
    Ok(ParityVerdict {
        edges: (p.first, p.second),
        case: p.case,
        shared_curve: shares_curve(g, i, j),
        parity: Parity::of(n),
        source: ParitySource::Oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_mask(case: OrderCase) -> u16 {
        let mut m = 0u16;
        for bits in 0..16u8 {
            if simulate_annulus_drawing(case_angles(case), bits).unwrap() % 2 == 1 {
                m |= 1 << bits;
            }
        }
        m
    }

    #[test]
    fn tables_match_oracle() {
        for case in [OrderCase::Disjoint, OrderCase::Nested, OrderCase::Interleaved, OrderCase::DoublyInterleaved] {
            let m = oracle_mask(case);
            for bits in 0..16u8 {
                let want = if m >> bits & 1 == 1 { Parity::Odd } else { Parity::Even };
                assert_eq!(table_parity(case, bits), want, "{case:?} bits {bits:04b} oracle mask {m:#06x}");
            }
        }
    }

    #[test]
    fn exhaustive_check_agrees() {
        let all = table_against_drawing().unwrap();
        assert_eq!(all.len(), 64);
        assert!(all.iter().all(TableCheck::agrees));
    }

    #[test]
    fn case_angles_classify_back() {
        for case in [OrderCase::Disjoint, OrderCase::Nested, OrderCase::Interleaved, OrderCase::DoublyInterleaved] {
            let ang = case_angles(case);
            let pos: Vec<usize> = ang.iter().map(|x| ((x - 10.0) / 90.0) as usize).collect();
            assert_eq!(classify_order(pos[0], pos[1], pos[2], pos[3], 4).unwrap(), (case, false));
        }
    }

    #[test]
    fn classify_all_orders() {
        let mut seen = std::collections::BTreeMap::new();
        for b in 1..4 {
            for g in 1..4 {
                for d in 1..4 {
                    if b != g && g != d && b != d {
                        let r = classify_order(0, b, g, d, 4).unwrap();
                        *seen.entry(format!("{:?}", r.0)).or_insert(0) += 1;
                    }
                }
            }
        }
        assert_eq!(seen["Nested"], 2);
        assert_eq!(seen["Interleaved"], 2);
        assert_eq!(seen["Disjoint"], 1);
        assert_eq!(seen["DoublyInterleaved"], 1);
        assert!(matches!(classify_order(0, 1, 1, 2, 4), Err(Error::NotIndependent)));
    }
}
