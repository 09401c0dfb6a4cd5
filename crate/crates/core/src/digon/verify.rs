//! End-to-end check of the digon bound on one arrangement.

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{check_conditions, ConditionReport};
use super::drawing::{decision_table, full_drawing_crossings, DecisionTable};
use super::graph::{digon_graph, double_cover, DoubleCoverGraph};
use super::parity::{oracle_parity, pair_parity, Parity};
use super::planarity::{certificate_is_valid, embedding_is_planar, planarity_test, Planarity, SimpleGraph};
use crate::arrangement::{digons, normalize_outer, prune, remove_curve, Arrangement, CurveId};
use crate::error::{Error, Result};
use crate::transversal::{insert_transversal_with, BaseChoice, CyclicPairReport, PointKind, TransversalContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParitySummary {
    pub checked: usize,
    pub even: usize,
    pub odd: usize,
    /// Pairs where the two-edge drawing oracle disagrees with the table.
    pub oracle_disagreements: usize,
    /// Pairs where the drawing of the whole cover disagrees with the table.
    pub drawing_disagreements: usize,
    pub odd_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanaritySummary {
    pub planar: bool,
    pub vertices: usize,
    pub edges: usize,
    /// `2V - 4`, the edge bound for bipartite planar graphs.
    pub edge_bound: i64,
    pub within_bound: bool,
    pub witness_checked: bool,
    pub verdict: Planarity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub digon_count: usize,
    pub bound: usize,
    pub pruned_curves: Vec<u32>,
    pub remaining_curves: usize,
    pub short_circuit: bool,
    pub cyclic_order: Vec<String>,
    pub cyclic_pairs: Option<CyclicPairReport>,
    pub cover_edges: usize,
    pub bipartite: bool,
    pub conditions: Option<ConditionReport>,
    pub parity_pairs: ParitySummary,
    pub planarity: Option<PlanaritySummary>,
    pub status: Status,
    pub failures: Vec<String>,
    pub error: Option<String>,
}

impl VerificationReport {
    fn empty(n: usize) -> Self {
        VerificationReport {
            n,
            digon_count: 0,
            bound: (2 * n).saturating_sub(2),
            pruned_curves: Vec::new(),
            remaining_curves: n,
            short_circuit: false,
            cyclic_order: Vec::new(),
            cyclic_pairs: None,
            cover_edges: 0,
            bipartite: true,
            conditions: None,
            parity_pairs: ParitySummary::default(),
            planarity: None,
            status: Status::Error,
            failures: Vec::new(),
            error: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// All independent pairs even and the planarity test agrees.
    pub fn hanani_tutte_consistent(&self) -> bool {
        match &self.planarity {
            Some(p) => self.parity_pairs.odd > 0 || p.planar,
            None => true,
        }
    }
}

pub fn verify_bound(a: &Arrangement) -> VerificationReport {
    verify_bound_with(a, BaseChoice::Default)
}

pub fn verify_bound_with(a: &Arrangement, choice: BaseChoice) -> VerificationReport {
    let mut rep = VerificationReport::empty(a.curve_count());
    match run(a, choice, &mut rep) {
        Ok(()) => {
            rep.status = if rep.failures.is_empty() { Status::Pass } else { Status::Fail };
        }
        Err(e) => {
            rep.status = Status::Error;
            rep.error = Some(e.to_string());
        }
    }
    rep
}

fn parity_sweep(g: &DoubleCoverGraph, t: &DecisionTable) -> Result<ParitySummary> {
    let m = g.edges.len();
    // (i, j, parity, agrees with two-edge oracle, agrees with full drawing)
    type Row = Vec<(usize, usize, Parity, bool, bool)>;
    let rows: Vec<Result<Row>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in i + 1..m {
                if !g.independent(i, j) {
                    continue;
                }
                let tv = pair_parity(g, t, i, j)?;
                let ov = oracle_parity(g, t, i, j)?;
                let full = Parity::of(full_drawing_crossings(g, t, i, j)?);
                row.push((i, j, tv.parity, ov.parity == tv.parity, full == tv.parity));
            }
            Ok(row)
        })
        .collect();
    let mut s = ParitySummary::default();
    for r in rows {
        for (i, j, p, oracle_ok, full_ok) in r? {
            s.checked += 1;
            match p {
                Parity::Even => s.even += 1,
                Parity::Odd => {
                    s.odd += 1;
                    s.odd_pairs.push((i, j));
                }
            }
            s.oracle_disagreements += usize::from(!oracle_ok);
            s.drawing_disagreements += usize::from(!full_ok);
        }
    }
    Ok(s)
}

pub fn cover_simple_graph(g: &DoubleCoverGraph) -> SimpleGraph {
    SimpleGraph::new(g.len(), g.abstract_edges())
}

fn planarity_summary(g: &DoubleCoverGraph) -> PlanaritySummary {
    let sg = cover_simple_graph(g);
    let verdict = planarity_test(&sg);
    let witness_checked = match &verdict {
        Planarity::Planar(e) => embedding_is_planar(&sg, &e.rotation),
        Planarity::NonPlanar(c) => certificate_is_valid(&sg, c),
    };
    let v = sg.n as i64;
    let edge_bound = 2 * v - 4;
    PlanaritySummary {
        planar: verdict.is_planar(),
        vertices: sg.n,
        edges: sg.edges.len(),
        edge_bound,
        within_bound: v < 3 || sg.edges.len() as i64 <= edge_bound,
        witness_checked,
        verdict,
    }
}

/// Everything downstream of the transversal for an arrangement where every
/// curve has a digon.
pub struct Pipeline {
    pub ctx: TransversalContext,
    pub cover: DoubleCoverGraph,
    pub table: DecisionTable,
}

pub fn pipeline(p: &Arrangement, choice: BaseChoice) -> Result<Pipeline> {
    Pipeline::from_context(p, insert_transversal_with(p, choice)?)
}

impl Pipeline {
    /// `base` is the arrangement without the transversal, with the same
    /// curve labels as `ctx`.
    pub fn from_context(base: &Arrangement, ctx: TransversalContext) -> Result<Self> {
        let cover = double_cover(&digon_graph(base)?, &ctx)?;
        let table = decision_table(&ctx, &cover)?;
        Ok(Pipeline { ctx, cover, table })
    }
}

/// Splits off an embedded transversal. It must be the last curve so the
/// base keeps its labels.
pub fn split_transversal(a: &Arrangement) -> Result<Option<(Arrangement, CurveId)>> {
    let Some(c) = a.transversal() else { return Ok(None) };
    if c.ix() + 1 != a.curve_count() {
        return Err(Error::UnsupportedParameter("embedded transversal must be the last curve".into()));
    }
    Ok(Some((remove_curve(&a.with_transversal(None), c)?, c)))
}

/// Pipeline for an arrangement, honouring an embedded transversal.
pub fn pipeline_for(a: &Arrangement, choice: BaseChoice) -> Result<Pipeline> {
    match split_transversal(a)? {
        Some((base, c)) => Pipeline::from_context(&base, TransversalContext::from_augmented(a.clone(), c)?),
        None => pipeline(a, choice),
    }
}

fn run(a: &Arrangement, choice: BaseChoice, rep: &mut VerificationReport) -> Result<()> {
    a.ensure_valid()?;
    if a.touch_allowed() {
        return Err(Error::UnsupportedParameter("the bound is checked on arrangements without touchings".into()));
    }
    let embedded = split_transversal(a)?;
    let base = embedded.as_ref().map_or(a, |e| &e.0);
    let n = base.curve_count();
    rep.n = n;
    rep.bound = 2 * n - 2;
    rep.remaining_curves = n;
    if n < 3 {
        return Err(Error::UnsupportedParameter("need at least three curves".into()));
    }
    let (a1, _) = normalize_outer(base)?;
    rep.digon_count = digons(&a1)?.len();
    if rep.digon_count > rep.bound {
        rep.failures.push(format!("{} digons exceed 2n - 2 = {}", rep.digon_count, rep.bound));
    }
    let (pr, removed) = prune(&a1)?;
    rep.pruned_curves = removed.iter().map(|c| c.0).collect();
    rep.remaining_curves = pr.curve_count();
    if pr.curve_count() < 3 {
        rep.short_circuit = true;
        return Ok(());
    }
    let pl = match &embedded {
        Some((_, c)) if removed.is_empty() => {
            Pipeline::from_context(&pr, TransversalContext::from_augmented(a.clone(), *c)?)?
        }
        Some(_) => {
            return Err(Error::UnsupportedParameter("embedded transversal on an arrangement that needs pruning".into()))
        }
        None => pipeline(&normalize_outer(&pr)?.0, choice)?,
    };
    let (ctx, cover, table) = (&pl.ctx, &pl.cover, &pl.table);
    rep.cyclic_order = ctx.labels();
    let cyc = ctx.check_cyclic_pairs()?;
    if !cyc.violations.is_empty() {
        rep.failures.push(format!("cyclic pattern broken for {:?}", cyc.violations));
    }
    rep.cyclic_pairs = Some(cyc);
    rep.cover_edges = cover.edges.len();
    let pruned_digons = digons(&pr)?.len();
    rep.bipartite = cover.edges.iter().all(|e| {
        cover.vertices[e.source].kind == PointKind::Out && cover.vertices[e.target].kind == PointKind::In
    });
    if !rep.bipartite {
        rep.failures.push("double cover is not bipartite".into());
    }
    if cover.edges.len() != 2 * pruned_digons {
        rep.failures.push(format!("{} cover edges for {pruned_digons} digons", cover.edges.len()));
    }
    let nn = pr.curve_count();
    if cover.edges.len() > 4 * nn - 4 {
        rep.failures.push(format!("{} cover edges exceed 4n - 4 = {}", cover.edges.len(), 4 * nn - 4));
    }
    let cond = check_conditions(ctx, cover, table);
    if !cond.ok() {
        rep.failures.push(format!("{} condition violations", cond.violations.len()));
    }
    rep.conditions = Some(cond);
    rep.parity_pairs = parity_sweep(cover, table)?;
    let ps = &rep.parity_pairs;
    if ps.odd > 0 {
        rep.failures.push(format!("{} independent pairs cross oddly", ps.odd));
    }
    if ps.oracle_disagreements > 0 || ps.drawing_disagreements > 0 {
        rep.failures.push(format!(
            "parity table disagrees with drawings: {} two-edge, {} full",
            ps.oracle_disagreements, ps.drawing_disagreements
        ));
    }
    let pl = planarity_summary(cover);
    if !pl.witness_checked {
        rep.failures.push("planarity witness failed its check".into());
    }
    if !pl.within_bound {
        rep.failures.push(format!("{} edges exceed 2V - 4 = {}", pl.edges, pl.edge_bound));
    }
    if !pl.planar {
        rep.failures.push("digon cover graph is not planar".into());
    }
    rep.planarity = Some(pl);
    if !rep.hanani_tutte_consistent() {
        rep.failures.push("all pairs even but the graph is not planar".into());
    }
    Ok(())
}
