//! The theorem suite: every verify_* check and characterization cross-check
//! on one amst, and its aggregate over an enumeration.

use amst_core::characterizations::{cross_check_space, CrossStatus};
use amst_core::consequence::{
    char_finitary_in, char_finnormal_space, compact_iff_finitary_space, cor_finite_unsat_compact, cor_fsecq_compact, cor_singleton_compact,
    unsat_trivial_space, ConsequenceView,
};
use amst_core::logstr::{syntactic, ExplicitLogicalStructure};
use amst_core::principles::{alt_secq, check, Form, Mode, PrincipleId};
use amst_core::semantics::{mod_properties_space, normal_space};
use amst_core::{Amst, BoundedVerdict, Checked, Reading, Space};
use serde::Serialize;
use serde_json::Value;

use crate::enumerate::{EnumerationSpace, Symmetry};
use crate::error::LabError;
use crate::lattice::KNOWN_MISMATCH;
use crate::parallel::map_reduce;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Verified,
    Refuted,
    Unknown,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub theorem: String,
    pub status: RowStatus,
    /// A refutation that reproduces a documented defect rather than a bug.
    pub finding: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SuiteRow {
    pub fn is_violation(&self) -> bool {
        self.status == RowStatus::Refuted && !self.finding
    }
}

/// Theorems whose conclusion is a compactness statement. Their proofs only
/// use the finsat-to-sat direction, so under the literal two-sided reading a
/// refutation is a reading discrepancy.
pub const COMPACTNESS_DEPENDENT: [&str; 6] =
    ["char_finitary", "char_finnormal", "compact_iff_finitary", "cor_singleton_compact", "cor_finite_unsat_compact", "cor_fsecq_compact"];

/// Refutations that are expected: the false converse of the normal gECQ-sat
/// characterization, and compactness theorems under the Iff reading.
pub fn known_finding(theorem: &str, reading: Reading) -> bool {
    theorem == KNOWN_MISMATCH || (reading == Reading::Iff && COMPACTNESS_DEPENDENT.contains(&theorem))
}

fn row(theorem: &str, reading: Reading, v: &BoundedVerdict) -> SuiteRow {
    let status = match v {
        BoundedVerdict::Verified => RowStatus::Verified,
        BoundedVerdict::Refuted(_) => RowStatus::Refuted,
        BoundedVerdict::UnknownAtBound(_) => RowStatus::Unknown,
    };
    let detail = match v {
        BoundedVerdict::Refuted(w) => Some(w.to_string()),
        BoundedVerdict::UnknownAtBound(b) => Some(format!("unknown at bound {b}")),
        BoundedVerdict::Verified => None,
    };
    SuiteRow { theorem: theorem.into(), finding: status == RowStatus::Refuted && known_finding(theorem, reading), status, detail }
}

fn checked_row(theorem: &str, reading: Reading, c: &Checked) -> SuiteRow {
    match c {
        Ok(v) => row(theorem, reading, v),
        Err(u) => SuiteRow { theorem: theorem.into(), status: RowStatus::NotApplicable, finding: false, detail: Some(u.to_string()) },
    }
}

fn not_applicable(theorem: &str, why: &str) -> SuiteRow {
    SuiteRow { theorem: theorem.into(), status: RowStatus::NotApplicable, finding: false, detail: Some(why.into()) }
}

fn agreement(a: &BoundedVerdict, b: &BoundedVerdict, what: &str) -> BoundedVerdict {
    match (a.as_bool(), b.as_bool()) {
        (Some(x), Some(y)) if x == y => BoundedVerdict::Verified,
        (Some(x), Some(y)) => BoundedVerdict::Refuted(amst_core::Witness::Sides { left: x, right: y, detail: what.into() }),
        _ => a.clone().and(b.clone()),
    }
}

/// sat principle implies the syntactic one on the induced structure.
fn bridge_induced(space: &Space) -> Checked {
    let Space::Finite(f) = space else {
        return Err(amst_core::Unmet::new("finite carrier"));
    };
    let induced = ExplicitLogicalStructure::induced(f.view()).map_err(|e| amst_core::Unmet::new(e.to_string()))?;
    for form in [Form::G, Form::S, Form::Sp, Form::Pf] {
        let p = PrincipleId::semantic(form, Mode::Sat);
        if check(f, p, None).is_verified() && !syntactic(&induced, form).is_verified() {
            return Ok(BoundedVerdict::Refuted(amst_core::Witness::Sides {
                left: true,
                right: false,
                detail: format!("{p} holds but {} fails on the induced structure", PrincipleId::syntactic(form)),
            }));
        }
    }
    Ok(BoundedVerdict::Verified)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub reading: Reading,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn row(&self, theorem: &str) -> Option<&SuiteRow> {
        self.rows.iter().find(|r| r.theorem == theorem)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("suite serializes")
    }
}

pub fn run_theorem_suite(amst: &Amst, reading: Reading, bound: u32) -> Result<SuiteReport, LabError> {
    let cv = ConsequenceView::new(amst, Some(bound))?;
    let space = cv.space();
    let mut rows = Vec::new();
    rows.push(checked_row("mod_properties", reading, &mod_properties_space(space)));
    let ut = unsat_trivial_space(space);
    rows.push(row("unsat_implies_trivial", reading, &ut.forward));
    rows.push(checked_row("unsat_trivial_converse_singleton", reading, &ut.converse_singleton));
    rows.push(checked_row("unsat_trivial_converse_normal", reading, &ut.converse_normal));
    rows.push(row("char_finitary", reading, &amst_core::with_space!(space, s => char_finitary_in(s, reading))));
    rows.push(checked_row("char_finnormal", reading, &char_finnormal_space(space, reading)));
    rows.push(checked_row("compact_iff_finitary", reading, &compact_iff_finitary_space(space, reading)));
    rows.push(checked_row("cor_singleton_compact", reading, &cor_singleton_compact(space, reading)));
    rows.push(checked_row("cor_finite_unsat_compact", reading, &cor_finite_unsat_compact(space, reading)));
    rows.push(checked_row("cor_fsecq_compact", reading, &cor_fsecq_compact(space, reading)));
    let alt = amst_core::with_space!(space, s => agreement(&alt_secq(s), &check(s, PrincipleId::SecqSat, None), "alternative sECQ-sat vs sECQ-sat"));
    rows.push(row("alt_secq", reading, &alt));
    if normal_space(space).is_verified() {
        let t = cv.check_tarski();
        rows.push(row("tarski_normal", reading, &t.reflexivity.and(t.monotonicity).and(t.transitivity)));
    } else {
        rows.push(not_applicable("tarski_normal", "hypothesis not met: normal"));
    }
    match bridge_induced(space) {
        Ok(v) => rows.push(row("bridge_induced", reading, &v)),
        Err(u) => rows.push(not_applicable("bridge_induced", &u.hypothesis)),
    }
    for e in cross_check_space(space).entries {
        let status = match e.status {
            CrossStatus::Agree => RowStatus::Verified,
            CrossStatus::Mismatch => RowStatus::Refuted,
            CrossStatus::Skipped => RowStatus::NotApplicable,
            CrossStatus::Unknown => RowStatus::Unknown,
        };
        let detail = match (&e.unmet, &e.characterization, &e.definitional) {
            (Some(u), _, _) => Some(format!("hypothesis not met: {u}")),
            (None, Some(c), Some(d)) if status != RowStatus::Verified => Some(format!("characterization {c}, {} {d}", e.counterpart)),
            _ => None,
        };
        let finding = status == RowStatus::Refuted && known_finding(&e.check, reading);
        rows.push(SuiteRow { theorem: e.check, status, finding, detail });
    }
    Ok(SuiteReport { reading, rows })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AggregateRow {
    pub theorem: String,
    pub verified: u64,
    pub refuted: u64,
    pub unknown: u64,
    pub not_applicable: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_refuted: Option<u64>,
    pub finding: bool,
}

impl AggregateRow {
    pub fn violations(&self) -> u64 {
        if self.finding {
            0
        } else {
            self.refuted
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteAggregate {
    pub space: Option<EnumerationSpace>,
    pub reading: Reading,
    pub checked: u64,
    pub rows: Vec<AggregateRow>,
}

impl SuiteAggregate {
    pub fn row(&self, theorem: &str) -> Option<&AggregateRow> {
        self.rows.iter().find(|r| r.theorem == theorem)
    }

    pub fn violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations()).sum()
    }

    fn add(&mut self, index: u64, report: &SuiteReport) {
        self.checked += 1;
        if self.rows.is_empty() {
            self.rows = report.rows.iter().map(|r| AggregateRow { theorem: r.theorem.clone(), ..Default::default() }).collect();
        }
        for (agg, r) in self.rows.iter_mut().zip(&report.rows) {
            match r.status {
                RowStatus::Verified => agg.verified += 1,
                RowStatus::Unknown => agg.unknown += 1,
                RowStatus::NotApplicable => agg.not_applicable += 1,
                RowStatus::Refuted => {
                    agg.refuted += 1;
                    agg.first_refuted = Some(agg.first_refuted.map_or(index, |f| f.min(index)));
                }
            }
            agg.finding |= r.finding;
        }
    }

    fn merge(mut self, o: SuiteAggregate) -> SuiteAggregate {
        if self.rows.is_empty() {
            return SuiteAggregate { checked: self.checked + o.checked, ..o };
        }
        self.checked += o.checked;
        for (a, b) in self.rows.iter_mut().zip(o.rows) {
            a.verified += b.verified;
            a.refuted += b.refuted;
            a.unknown += b.unknown;
            a.not_applicable += b.not_applicable;
            a.first_refuted = match (a.first_refuted, b.first_refuted) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            a.finding |= b.finding;
        }
        self
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("aggregate serializes")
    }
}

/// Runs the suite on every amst of `space`.
pub fn run_suite_space(space: &EnumerationSpace, reading: Reading, threads: usize, budget: u64) -> Result<SuiteAggregate, LabError> {
    let source = space.source(budget)?;
    let sym = space.canonicalize.then(|| Symmetry::new(space.models, space.sentences));
    let (models, n) = (space.models, space.sentences);
    let mut agg = map_reduce(
        source.len(),
        threads,
        |range| {
            let mut agg = SuiteAggregate { reading, ..Default::default() };
            for pos in range {
                let idx = source.get(pos);
                if sym.as_ref().is_some_and(|s| !s.is_canonical(idx)) {
                    continue;
                }
                let amst = Amst::from_index(models, n, idx).expect("validated size");
                let report = run_theorem_suite(&amst, reading, amst_core::DEFAULT_BOUND).expect("explicit amst");
                agg.add(idx, &report);
            }
            agg
        },
        SuiteAggregate::merge,
    );
    agg.space = Some(space.clone());
    agg.reading = reading;
    Ok(agg)
}
