//! Acceptance criteria 1 to 8. Each criterion prints one PASS or FAIL line
//! straight to stderr so the lines survive output capture.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::Command;
use std::time::Instant;

use amst_core::characterizations::{cross_check_space, CrossStatus};
use amst_core::principles::{profile, PrincipleId, ARROWS};
use amst_core::{Reading, Space, DEFAULT_BOUND};
use amst_lab::bridge::{bridge_exhaustive, bridge_sampled};
use amst_lab::eval::{holds, node_bits, space_at};
use amst_lab::lattice::{resolving_example, verify_lattice, EdgeKind, EdgeStatus, LatticeConfig};
use amst_lab::mine::{mine_any, SearchLimits};
use amst_lab::parallel::{default_threads, map_reduce};
use amst_lab::registry::run_all;
use amst_lab::suite::run_suite_space;
use amst_lab::EnumerationSpace;

use PrincipleId::*;

const RUNTIME_BUDGET_SECS: f64 = 30.0;
const ALLOWED_COUNTEREXAMPLES: u64 = 0;
const THREE_MODEL_SAMPLES: u64 = 100_000;
const BRIDGE_SAMPLES_AT_THREE: u64 = 10_000;
const MAX_MINED_MODELS: u32 = 3;
const MAX_MINED_SENTENCES: u32 = 4;
const SEED: u64 = 20_240_601;
/// The characterization whose converse fails, and how often it fails over
/// the full |M|=2, |L|=3 enumeration.
const DEFECTIVE_CHECK: &str = "char_gecq_sat_normal";
const DEFECTIVE_MISMATCHES: u64 = 6;

fn report(n: u32, pass: bool, detail: &str) {
    let line = format!("criterion {n}: {} {detail}\n", if pass { "PASS" } else { "FAIL" });
    std::io::stderr().write_all(line.as_bytes()).unwrap();
}

fn threads() -> usize {
    default_threads().min(8)
}

fn lattice_config() -> LatticeConfig {
    LatticeConfig { threads: threads(), cross_check_stride: 0, budget: 16 }
}

/// Criterion 1: every arrow holds at |L|=3 for |M|=1, 2 exhaustively and
/// |M|=3 by sampling.
fn exhaustive_lattice() -> bool {
    let start = Instant::now();
    let spaces =
        [EnumerationSpace::exhaustive(1, 3), EnumerationSpace::exhaustive(2, 3), EnumerationSpace::random(3, 3, THREE_MODEL_SAMPLES, SEED)];
    let mut counterexamples = 0;
    let mut checked = 0;
    for s in &spaces {
        let r = verify_lattice(s, &lattice_config(), &[]).unwrap();
        checked += r.checked;
        for a in ARROWS {
            let e = r.edge(a.from, a.to).unwrap();
            assert!(s.sentences >= a.min_sentences);
            counterexamples += e.violations;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = counterexamples == ALLOWED_COUNTEREXAMPLES && secs < RUNTIME_BUDGET_SECS;
    report(1, pass, &format!("14 arrows, {checked} amsts, {counterexamples} counterexamples, {secs:.1}s (budget {RUNTIME_BUDGET_SECS}s)"));
    pass
}

/// The non-arrows refuted in the text, by principle pair.
const REFUTED_NON_ARROWS: [(PrincipleId, PrincipleId); 15] = [
    (SecqSat, GecqSat),
    (PfecqSat, GecqSat),
    (GecqSat, PfecqSat),
    (GecqSat, SpecqSat),
    (PfecqSat, SpecqSat),
    (SecqFinsat, GecqFinsat),
    (PfecqFinsat, GecqFinsat),
    (GecqFinsat, PfecqFinsat),
    (GecqFinsat, SpecqFinsat),
    (PfecqFinsat, SpecqFinsat),
    (SpecqFinsat, SecqSat),
    (PfecqSat, SecqFinsat),
    (SpecqSat, PfecqFinsat),
    (GecqFinsat, PfecqSat),
    (GecqFinsat, SpecqSat),
];

fn non_arrow_witnesses() -> bool {
    let examples = run_all(DEFAULT_BOUND).unwrap();
    let limits = SearchLimits { max_models: MAX_MINED_MODELS, max_sentences: MAX_MINED_SENTENCES, budget: 16, samples: 20_000, seed: SEED };
    let (mut mined, mut registry, mut unresolved) = (0, 0, Vec::new());
    for (from, to) in REFUTED_NON_ARROWS {
        let finite = mine_any(from, to, &limits).unwrap().filter(|m| {
            let p = profile(&m.amst, None).unwrap();
            p.holds(from) && p.verdict(to).is_refuted()
        });
        if finite.is_some() {
            mined += 1;
        } else if resolving_example(&examples, from, to).is_some() {
            registry += 1;
        } else {
            unresolved.push(format!("{from} -> {to}"));
        }
    }
    let pass = unresolved.is_empty();
    report(
        2,
        pass,
        &format!(
            "{} non-arrows: {mined} mined at |M|<=3, |L|<=4, {registry} by registry examples, unresolved {unresolved:?}",
            REFUTED_NON_ARROWS.len()
        ),
    );
    pass
}

fn registry_fidelity() -> bool {
    let results = run_all(DEFAULT_BOUND).unwrap();
    let failed: Vec<_> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    let undecided: usize = results.iter().map(|r| r.undecided().len()).sum();
    let pass = results.len() == 10 && failed.is_empty() && undecided == 0;
    report(3, pass, &format!("{} examples, failed {failed:?}, {undecided} expectations undecided", results.len()));
    pass
}

#[derive(Default)]
struct CrossTally {
    agree: BTreeMap<String, u64>,
    mismatch: BTreeMap<String, u64>,
    /// Characterization verdict over definitional verdict, per mismatch.
    shapes: BTreeMap<String, u64>,
}

impl CrossTally {
    fn merge(mut self, o: CrossTally) -> CrossTally {
        for (k, v) in o.agree {
            *self.agree.entry(k).or_default() += v;
        }
        for (k, v) in o.mismatch {
            *self.mismatch.entry(k).or_default() += v;
        }
        for (k, v) in o.shapes {
            *self.shapes.entry(k).or_default() += v;
        }
        self
    }
}

/// Criterion 4. The normal gECQ-sat characterization has a false converse,
/// so this criterion fails by exactly the pinned mismatches; anything else
/// fails the test.
fn characterization_equivalence() -> bool {
    let t = map_reduce(
        65536,
        threads(),
        |range| {
            let mut t = CrossTally::default();
            for idx in range {
                let r = cross_check_space(&Space::Finite(space_at(2, 3, idx as u64)));
                for e in r.entries {
                    match e.status {
                        CrossStatus::Agree => *t.agree.entry(e.check).or_default() += 1,
                        CrossStatus::Mismatch => {
                            let shape = format!(
                                "{}: characterization {} vs definition {}",
                                e.check,
                                e.characterization.as_ref().unwrap().label(),
                                e.definitional.as_ref().unwrap().label()
                            );
                            *t.shapes.entry(shape).or_default() += 1;
                            *t.mismatch.entry(e.check).or_default() += 1;
                        }
                        CrossStatus::Unknown => panic!("finite carriers are exact"),
                        CrossStatus::Skipped => {}
                    }
                }
            }
            t
        },
        CrossTally::merge,
    );
    let total: u64 = t.mismatch.values().sum();
    let pass = total == 0;
    let mut detail = format!("{} checks exercised, {total} mismatches {:?}", t.agree.len(), t.mismatch);
    if !pass {
        detail.push_str(
            ". Analysis: the converse of the normal gECQ-sat characterization is false. Two models, m0 satisfying \
             exactly the subsets of {0,1} and m1 exactly the subsets of {1,2}, give a normal amst in which every \
             L minus one sentence is unsatisfiable while gECQ-sat fails at sentence 1",
        );
    }
    report(4, pass, &detail);
    // Pin the failure: only the known defect, only in the converse direction.
    assert_eq!(t.mismatch.len(), usize::from(total > 0));
    assert_eq!(t.mismatch.get(DEFECTIVE_CHECK).copied().unwrap_or(0), DEFECTIVE_MISMATCHES);
    assert_eq!(t.shapes.keys().collect::<Vec<_>>(), vec![&format!("{DEFECTIVE_CHECK}: characterization verified vs definition refuted")]);
    // Every characterization except the infinite-carrier form of fsecq runs.
    assert_eq!(t.agree.len() + usize::from(!t.agree.contains_key(DEFECTIVE_CHECK)), 17);
    pass
}

fn bridge_theorems() -> bool {
    let two = bridge_exhaustive(2, threads());
    let three = bridge_sampled(3, BRIDGE_SAMPLES_AT_THREE, SEED, threads());
    let mut induced_violations = 0;
    let mut induced_checked = 0;
    for s in [EnumerationSpace::exhaustive(1, 3), EnumerationSpace::exhaustive(2, 3)] {
        let r = verify_lattice(&s, &lattice_config(), &[]).unwrap();
        induced_checked += r.checked;
        for e in r.edges.iter().filter(|e| e.kind == EdgeKind::Bridge) {
            induced_violations += e.violations;
        }
    }
    let pass =
        two.checked == 256 && two.is_clean() && three.checked >= BRIDGE_SAMPLES_AT_THREE && three.is_clean() && induced_violations == 0;
    report(
        5,
        pass,
        &format!(
            "{} structures at n=2 and {} at n=3 with failures {:?} / {:?}; sat => syntactic on {induced_checked} induced structures, {induced_violations} violations",
            two.checked, three.checked, two.failures, three.failures
        ),
    );
    pass
}

fn enumerated() -> Vec<EnumerationSpace> {
    [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3)].into_iter().map(|(m, n)| EnumerationSpace::exhaustive(m, n)).collect()
}

fn theorem_suite() -> bool {
    const ROWS: [&str; 7] = [
        "mod_properties",
        "unsat_implies_trivial",
        "unsat_trivial_converse_singleton",
        "unsat_trivial_converse_normal",
        "char_finitary",
        "char_finnormal",
        "compact_iff_finitary",
    ];
    let mut refuted = BTreeMap::new();
    let mut normal_checked = 0;
    for s in enumerated() {
        let agg = run_suite_space(&s, Reading::Fwd, threads(), 16).unwrap();
        normal_checked += agg.row("mod_properties").unwrap().verified;
        for name in ROWS {
            *refuted.entry(name).or_insert(0) += agg.row(name).unwrap().refuted;
        }
    }
    let fwd_clean = refuted.values().all(|&v| v == 0);
    let iff = run_suite_space(&EnumerationSpace::exhaustive(1, 2), Reading::Iff, threads(), 16).unwrap();
    let finding = iff.row("char_finitary").unwrap();
    let cli = Command::new(env!("CARGO_BIN_EXE_amst-lab"))
        .args(["--reading", "iff", "enumerate", "--models", "1", "--sentences", "2", "--theorems"])
        .output()
        .unwrap();
    let logged = String::from_utf8_lossy(&cli.stdout).contains("known finding");
    let pass = fwd_clean && finding.refuted > 0 && finding.finding && iff.violations() == 0 && cli.status.code() == Some(0) && logged;
    report(
        6,
        pass,
        &format!(
            "fwd refutations {refuted:?} ({normal_checked} normal amsts); iff at |M|=1,|L|=2: char_finitary refuted on {} of {} as a finding, exit {:?}",
            finding.refuted,
            iff.checked,
            cli.status.code()
        ),
    );
    pass
}

fn dichotomy_and_uniqueness() -> bool {
    let mut bad = 0;
    let mut specq = 0;
    let mut covered = 0;
    let mut disjoint_refuted = 0;
    for s in enumerated() {
        let agg = run_suite_space(&s, Reading::Fwd, threads(), 16).unwrap();
        let (d, u) = (agg.row("specq_dichotomy").unwrap(), agg.row("at_most_one_finsat_complement").unwrap());
        bad += d.refuted + u.refuted + d.unknown + u.unknown;
        disjoint_refuted += agg.row("disjoint_unsat_implies_fpfecq").unwrap().refuted;
        let holding = (0..1u64 << s.bits()).filter(|&i| holds(node_bits(&space_at(s.models, s.sentences, i)), SpecqSat)).count() as u64;
        specq += holding;
        if d.verified == holding && u.verified == holding {
            covered += holding;
        }
    }
    let pass = bad == 0 && covered == specq && disjoint_refuted == 0;
    report(
        7,
        pass,
        &format!("dichotomy and uniqueness verified on {covered} of {specq} spECQ-sat amsts, {bad} failures; disjoint-unsat lemma refuted {disjoint_refuted} times"),
    );
    pass
}

fn determinism() -> bool {
    let run = |t: &str| {
        Command::new(env!("CARGO_BIN_EXE_amst-lab"))
            .args(["--threads", t, "lattice", "--models", "2", "--sentences", "3", "--emit", "json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    let pass = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    report(
        8,
        pass,
        &format!("lattice JSON with 1 and 4 workers: {} and {} bytes, identical: {}", a.stdout.len(), b.stdout.len(), a.stdout == b.stdout),
    );
    pass
}

#[test]
fn acceptance_criteria() {
    let results = [
        exhaustive_lattice(),
        non_arrow_witnesses(),
        registry_fidelity(),
        characterization_equivalence(),
        bridge_theorems(),
        theorem_suite(),
        dichotomy_and_uniqueness(),
        determinism(),
    ];
    for (i, pass) in results.iter().enumerate() {
        // Criterion 4 fails on a defect in the stated theorem; its outcome is pinned above.
        if i != 3 {
            assert!(pass, "criterion {} failed", i + 1);
        }
    }
}

#[test]
fn lattice_edges_never_hold_below_witnessed_non_arrows() {
    let r = verify_lattice(&EnumerationSpace::exhaustive(2, 3), &lattice_config(), &run_all(DEFAULT_BOUND).unwrap()).unwrap();
    assert!(r.ok);
    assert!(r.edges.iter().all(|e| e.expected || e.status != EdgeStatus::Holds));
}
