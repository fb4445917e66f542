//! Exhaustive or sampled verification of the implication lattice.

use std::collections::BTreeMap;

use amst_core::characterizations::{cross_check_space, CrossStatus};
use amst_core::principles::{arrow_between, profile, Form, Mode, PrincipleId};
use amst_core::{Amst, Reading, Space};
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerate::{EnumerationSpace, IndexSource, Symmetry};
use crate::error::LabError;
use crate::eval::{compact, holds, node, node_bits, space_at, NODES};
use crate::parallel::{default_threads, map_reduce};
use crate::registry::ExampleResult;

/// The only characterization mismatch the exhaustive runs turn up; it is a
/// defect in the stated equivalence, reported as a finding.
pub const KNOWN_MISMATCH: &str = "char_gecq_sat_normal";

#[derive(Clone, Debug)]
pub struct LatticeConfig {
    pub threads: usize,
    /// Run the characterization cross-check on every `stride`-th amst; 0 disables it.
    pub cross_check_stride: u64,
    pub budget: u64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { threads: default_threads(), cross_check_stride: 64, budget: crate::DEFAULT_BIT_BUDGET }
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct PairStat {
    premises: u64,
    violations: u64,
    first: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct Counter {
    count: u64,
    first: Option<u64>,
}

impl Counter {
    fn hit(&mut self, pos: u64) {
        self.count += 1;
        self.first = min_opt(self.first, Some(pos));
    }

    fn merge(self, o: Counter) -> Counter {
        Counter { count: self.count + o.count, first: min_opt(self.first, o.first) }
    }
}

/// Per-chunk aggregate; first positions are enumeration positions, so
/// merging is associative and commutative.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    checked: u64,
    holds: [u64; 12],
    pairs: Vec<PairStat>,
    cross_checked: u64,
    cross: BTreeMap<String, Counter>,
    /// Indexed by reading: amsts that are compact, and those among them
    /// where some -finsat principle differs from its -sat counterpart.
    compact: [u64; 2],
    remark: [Counter; 2],
}

impl Tally {
    fn pairs_mut(&mut self) -> &mut Vec<PairStat> {
        if self.pairs.is_empty() {
            self.pairs = vec![PairStat::default(); NODES.len() * NODES.len()];
        }
        &mut self.pairs
    }

    fn pair(&self, from: PrincipleId, to: PrincipleId) -> PairStat {
        self.pairs.get(node(from) * NODES.len() + node(to)).copied().unwrap_or_default()
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.checked += o.checked;
        for i in 0..12 {
            self.holds[i] += o.holds[i];
        }
        if !o.pairs.is_empty() {
            let mine = self.pairs_mut();
            for (a, b) in mine.iter_mut().zip(&o.pairs) {
                a.premises += b.premises;
                a.violations += b.violations;
                a.first = min_opt(a.first, b.first);
            }
        }
        self.cross_checked += o.cross_checked;
        for (k, v) in o.cross {
            let e = self.cross.entry(k).or_default();
            *e = e.merge(v);
        }
        for r in 0..2 {
            self.compact[r] += o.compact[r];
            self.remark[r] = self.remark[r].merge(o.remark[r]);
        }
        self
    }

    fn record(&mut self, pos: u64, bits: u16) {
        self.checked += 1;
        let pairs = self.pairs_mut();
        for i in 0..12 {
            if bits >> i & 1 == 0 {
                continue;
            }
            for j in 0..12 {
                let st = &mut pairs[i * 12 + j];
                st.premises += 1;
                if bits >> j & 1 == 0 {
                    st.violations += 1;
                    st.first = min_opt(st.first, Some(pos));
                }
            }
        }
        for i in 0..12 {
            self.holds[i] += (bits >> i & 1) as u64;
        }
    }
}

/// The enumeration positions and optional symmetry filter of a space.
struct Plan {
    space: EnumerationSpace,
    source: IndexSource,
    symmetry: Option<Symmetry>,
}

impl Plan {
    fn new(space: &EnumerationSpace, budget: u64) -> Result<Self, LabError> {
        let source = space.source(budget)?;
        let symmetry = space.canonicalize.then(|| Symmetry::new(space.models, space.sentences));
        Ok(Plan { space: space.clone(), source, symmetry })
    }

    fn index(&self, pos: u64) -> u64 {
        self.source.get(pos as usize)
    }

    fn visits(&self, index: u64) -> bool {
        self.symmetry.as_ref().is_none_or(|s| s.is_canonical(index))
    }
}

fn remark_fails(bits: u16) -> bool {
    [Form::G, Form::S, Form::Sp, Form::Pf]
        .iter()
        .any(|&f| holds(bits, PrincipleId::semantic(f, Mode::Sat)) != holds(bits, PrincipleId::semantic(f, Mode::Finsat)))
}

fn run(plan: &Plan, config: &LatticeConfig) -> Tally {
    let (models, n) = (plan.space.models, plan.space.sentences);
    map_reduce(
        plan.source.len(),
        config.threads,
        |range| {
            let mut t = Tally::default();
            for pos in range {
                let pos = pos as u64;
                let idx = plan.index(pos);
                if !plan.visits(idx) {
                    continue;
                }
                let s = space_at(models, n, idx);
                let bits = node_bits(&s);
                t.record(pos, bits);
                for (r, reading) in [Reading::Fwd, Reading::Iff].into_iter().enumerate() {
                    if compact(&s, reading) {
                        t.compact[r] += 1;
                        if remark_fails(bits) {
                            t.remark[r].hit(pos);
                        }
                    }
                }
                if config.cross_check_stride > 0 && pos.is_multiple_of(config.cross_check_stride) {
                    t.cross_checked += 1;
                    let report = cross_check_space(&Space::Finite(s));
                    for e in report.entries.iter().filter(|e| e.status == CrossStatus::Mismatch) {
                        t.cross.entry(e.check.clone()).or_default().hit(pos);
                    }
                }
            }
            t
        },
        Tally::merge,
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStatus {
    /// No amst in the space refutes the edge.
    Holds,
    Counterexample,
    /// An expected arrow below its minimum carrier size.
    NotApplicable,
    /// A non-arrow with no finite witness in this space.
    NoWitness,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Semantic,
    /// A -sat principle against its syntactic form on the induced structure.
    Bridge,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleRecord {
    pub index: u64,
    pub amst: Value,
    pub from: String,
    pub to: String,
    /// Whether a fresh run of the definitional checkers on the decoded amst
    /// reproduces both verdicts.
    pub reverified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub from: PrincipleId,
    pub to: PrincipleId,
    pub kind: EdgeKind,
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_sentences: Option<u32>,
    pub status: EdgeStatus,
    pub checked: u64,
    pub premises: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_by: Option<String>,
}

impl Edge {
    /// An expected arrow refuted at a size where it must hold.
    pub fn is_violation(&self) -> bool {
        self.expected && self.status == EdgeStatus::Counterexample
    }

    /// A non-arrow without a finite or registered witness.
    pub fn is_unresolved(&self) -> bool {
        !self.expected && self.status == EdgeStatus::NoWitness && self.resolved_by.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub kind: String,
    pub detail: String,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicationReport {
    pub space: EnumerationSpace,
    pub checked: u64,
    pub edges: Vec<Edge>,
    pub findings: Vec<Finding>,
    pub ok: bool,
}

impl ImplicationReport {
    pub fn edge(&self, from: PrincipleId, to: PrincipleId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_violation())
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_unresolved())
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Decodes the amst at `index` and reruns the checkers from scratch.
fn reverify(models: u32, n: u32, index: u64, from: PrincipleId, to: PrincipleId) -> CounterexampleRecord {
    let amst = Amst::from_index(models, n, index).expect("validated size");
    let fresh = |p: PrincipleId| match p.mode() {
        Some(_) => profile(&amst, None).expect("explicit amst").verdict(p).clone(),
        None => {
            let s = amst_core::logstr::ExplicitLogicalStructure::induced(&amst_core::FiniteView::from_amst(&amst).expect("explicit amst"))
                .expect("small carrier");
            amst_core::logstr::syntactic(&s, p.form())
        }
    };
    let (f, t) = (fresh(from), fresh(to));
    CounterexampleRecord {
        index,
        amst: amst.to_value(),
        from: f.label().into(),
        to: t.label().into(),
        reverified: f.is_verified() && t.is_refuted(),
    }
}

fn edge_list() -> Vec<(PrincipleId, PrincipleId, EdgeKind)> {
    let mut out = Vec::new();
    for from in PrincipleId::SEMANTIC {
        for to in PrincipleId::SEMANTIC {
            if from != to {
                out.push((from, to, EdgeKind::Semantic));
            }
        }
    }
    for f in [Form::G, Form::S, Form::Sp, Form::Pf] {
        out.push((PrincipleId::semantic(f, Mode::Sat), PrincipleId::syntactic(f), EdgeKind::Bridge));
    }
    out
}

/// The first registry example exhibiting `from` verified and `to` refuted.
pub fn resolving_example(examples: &[ExampleResult], from: PrincipleId, to: PrincipleId) -> Option<&'static str> {
    examples.iter().find(|r| r.exhibits(from, to)).map(|r| r.id)
}

/// Checks every amst of `space` and compares the realized edges with the
/// expected lattice. Non-arrows without a finite witness may be resolved
/// by one of `examples`.
pub fn verify_lattice(space: &EnumerationSpace, config: &LatticeConfig, examples: &[ExampleResult]) -> Result<ImplicationReport, LabError> {
    let plan = Plan::new(space, config.budget)?;
    let tally = run(&plan, config);
    let (models, n) = (space.models, space.sentences);
    let mut edges = Vec::new();
    for (from, to, kind) in edge_list() {
        let st = tally.pair(from, to);
        let arrow = arrow_between(from, to);
        let expected = kind == EdgeKind::Bridge || arrow.is_some();
        let min_sentences = match kind {
            EdgeKind::Bridge => Some(1),
            EdgeKind::Semantic => arrow.map(|a| a.min_sentences),
        };
        let applies = min_sentences.is_none_or(|m| n >= m);
        let status = match (expected, applies, st.violations) {
            (true, false, _) => EdgeStatus::NotApplicable,
            (_, _, 0) if expected => EdgeStatus::Holds,
            (false, _, 0) => EdgeStatus::NoWitness,
            _ => EdgeStatus::Counterexample,
        };
        let counterexample = match (status, st.first) {
            (EdgeStatus::Counterexample, Some(pos)) => Some(reverify(models, n, plan.index(pos), from, to)),
            _ => None,
        };
        let resolved_by =
            (!expected && status == EdgeStatus::NoWitness).then(|| resolving_example(examples, from, to).map(String::from)).flatten();
        edges.push(Edge {
            from,
            to,
            kind,
            expected,
            min_sentences,
            status,
            checked: tally.checked,
            premises: st.premises,
            violations: st.violations,
            counterexample,
            resolved_by,
        });
    }
    let mut findings = Vec::new();
    for (check, c) in &tally.cross {
        let kind = if check == KNOWN_MISMATCH { "known_characterization_defect" } else { "characterization_mismatch" };
        findings.push(Finding {
            kind: kind.into(),
            detail: format!("{check} disagrees with its counterpart on {} of {} sampled amsts", c.count, tally.cross_checked),
            count: c.count,
            example: c.first.map(|p| plan.index(p)),
        });
    }
    for (r, reading) in [Reading::Fwd, Reading::Iff].into_iter().enumerate() {
        findings.push(Finding {
            kind: format!("compactness_remark_{reading}"),
            detail: format!(
                "{} of {} amsts compact under the {reading} reading have some -finsat principle differing from its -sat counterpart",
                tally.remark[r].count, tally.compact[r]
            ),
            count: tally.remark[r].count,
            example: tally.remark[r].first.map(|p| plan.index(p)),
        });
    }
    let unexpected_cross = tally.cross.keys().any(|k| k != KNOWN_MISMATCH);
    let ok = !unexpected_cross
        && edges.iter().all(|e| !e.is_violation() && !e.is_unresolved())
        && edges.iter().all(|e| e.counterexample.as_ref().is_none_or(|c| c.reverified));
    Ok(ImplicationReport { space: space.clone(), checked: tally.checked, edges, findings, ok })
}

/// Smallest carrier size from which an arrow has no counterexample in any
/// of the checked spaces.
#[derive(Clone, Debug, Serialize)]
pub struct MinimumRow {
    pub from: PrincipleId,
    pub to: PrincipleId,
    pub table: u32,
    pub empirical: u32,
    /// Carrier sizes at which a counterexample turned up.
    pub refuted_at: Vec<u32>,
    pub agrees: bool,
}

pub fn empirical_minimums(spaces: &[EnumerationSpace], config: &LatticeConfig) -> Result<Vec<MinimumRow>, LabError> {
    let mut tallies = Vec::new();
    for s in spaces {
        let plan = Plan::new(s, config.budget)?;
        let quiet = LatticeConfig { cross_check_stride: 0, ..config.clone() };
        tallies.push((s.sentences, run(&plan, &quiet)));
    }
    let smallest = spaces.iter().map(|s| s.sentences).min().unwrap_or(1);
    Ok(amst_core::principles::ARROWS
        .iter()
        .map(|a| {
            let mut refuted_at: Vec<u32> = tallies.iter().filter(|(_, t)| t.pair(a.from, a.to).violations > 0).map(|(n, _)| *n).collect();
            refuted_at.sort();
            refuted_at.dedup();
            let empirical = refuted_at.last().map_or(smallest, |n| n + 1);
            MinimumRow { from: a.from, to: a.to, table: a.min_sentences, empirical, agrees: empirical == a.min_sentences, refuted_at }
        })
        .collect())
}

/// Serializes a report with a fixed key order.
pub fn report_json(report: &ImplicationReport) -> String {
    let mut s = serde_json::to_string_pretty(&report.to_value()).expect("report serializes");
    s.push('\n');
    s
}

pub fn summary(report: &ImplicationReport) -> Value {
    let count = |st: EdgeStatus| report.edges.iter().filter(|e| e.status == st).count();
    json!({
        "checked": report.checked,
        "holds": count(EdgeStatus::Holds),
        "counterexample": count(EdgeStatus::Counterexample),
        "not_applicable": count(EdgeStatus::NotApplicable),
        "no_witness": count(EdgeStatus::NoWitness),
        "violations": report.violations().count(),
        "unresolved": report.unresolved().count(),
        "ok": report.ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use PrincipleId::*;

    fn config(threads: usize) -> LatticeConfig {
        LatticeConfig { threads, cross_check_stride: 16, budget: 16 }
    }

    #[test]
    fn arrows_hold_at_one_by_three() {
        let r = verify_lattice(&EnumerationSpace::exhaustive(1, 3), &config(2), &[]).unwrap();
        assert_eq!(r.checked, 256);
        assert_eq!(r.violations().count(), 0);
        let e = r.edge(GecqFinsat, GecqSat).unwrap();
        assert_eq!(e.status, EdgeStatus::Counterexample);
        assert!(e.counterexample.as_ref().unwrap().reverified);
    }

    #[test]
    fn small_carriers_are_not_applicable() {
        let r = verify_lattice(&EnumerationSpace::exhaustive(2, 2), &config(1), &[]).unwrap();
        assert_eq!(r.edge(GecqSat, SecqSat).unwrap().status, EdgeStatus::NotApplicable);
        assert_eq!(r.edge(SpecqSat, PfecqSat).unwrap().status, EdgeStatus::Holds);
    }

    #[test]
    fn thread_count_does_not_change_json() {
        let s = EnumerationSpace::exhaustive(2, 2);
        let a = report_json(&verify_lattice(&s, &config(1), &[]).unwrap());
        let b = report_json(&verify_lattice(&s, &config(3), &[]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_space_sees_the_same_edges() {
        let full = verify_lattice(&EnumerationSpace::exhaustive(2, 2), &config(2), &[]).unwrap();
        let canon = verify_lattice(&EnumerationSpace::exhaustive(2, 2).canonical(), &config(2), &[]).unwrap();
        assert_eq!(canon.checked, 88);
        for (a, b) in full.edges.iter().zip(&canon.edges) {
            assert_eq!(a.violations == 0, b.violations == 0, "{} -> {}", a.from, a.to);
        }
    }
}
