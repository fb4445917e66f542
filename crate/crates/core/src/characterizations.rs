//! Second implementations of the explosion principles, each computed from a
//! characterization theorem rather than from the defining quantifiers, plus
//! satisfiability relative to a family of subsets.
//!
//! Every check returns [`Checked`]: `Err(Unmet)` when the theorem's
//! hypothesis fails for the input, so a cross-check can skip it.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amst::Amst;
use crate::error::AmstError;
use crate::principles::PrincipleId;
use crate::semantics::{forall_verdict, normal_space};
use crate::set::SentenceSet;
use crate::space::{CountableSpace, FiniteSpace, Semantics, Space, DEFAULT_BOUND};
use crate::verdict::{BoundedVerdict, Checked, Unmet, Witness};

/// Largest finite set whose subsets are enumerated outright.
const MAX_ENUMERATED: usize = 20;

/// A family `K` of subsets of `L`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubsetFamily {
    Explicit {
        sets: Vec<SentenceSet>,
    },
    AllFiniteSubsetsOf {
        of: SentenceSet,
    },
    /// `U_s^I = {X ⊆ I | s ∈ X}`.
    PrincipalUltrafilter {
        ground: SentenceSet,
        generator: u32,
    },
}

impl SubsetFamily {
    pub fn principal(ground: SentenceSet, generator: u32) -> Result<Self, AmstError> {
        if !ground.contains(generator) {
            return Err(AmstError::Invalid(format!("generator {generator} is not in {ground}")));
        }
        Ok(SubsetFamily::PrincipalUltrafilter { ground, generator })
    }

    pub fn contains(&self, d: &SentenceSet) -> bool {
        match self {
            SubsetFamily::Explicit { sets } => sets.contains(d),
            SubsetFamily::AllFiniteSubsetsOf { of } => d.is_finite() && d.is_subset(of),
            SubsetFamily::PrincipalUltrafilter { ground, generator } => d.is_subset(ground) && d.contains(*generator),
        }
    }
}

/// Turns an exported set back into a space's own representation.
pub trait Import: Semantics {
    fn import(&self, g: &SentenceSet) -> Self::Set;
}

impl Import for FiniteSpace {
    fn import(&self, g: &SentenceSet) -> u64 {
        let n = self.view().sentences();
        g.intersection(&SentenceSet::range(n)).to_mask().expect("finite carrier sets fit a mask")
    }
}

impl Import for CountableSpace {
    fn import(&self, g: &SentenceSet) -> SentenceSet {
        g.clone()
    }
}

/// Every subset of a small finite set, by size and then lexicographically.
fn finite_subsets(within: &SentenceSet) -> Vec<SentenceSet> {
    let elems: Vec<u32> = within.iter().collect();
    let mut masks: Vec<u32> = (0..1u32 << elems.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    masks.into_iter().map(|m| SentenceSet::finite(elems.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e))).collect()
}

/// Checks that every `Δ ⊆ within` passing `member` is satisfiable.
fn all_satisfiable<S: Import>(s: &S, within: &SentenceSet, member: impl Fn(&SentenceSet) -> bool) -> BoundedVerdict {
    let within = match s.carrier_size() {
        Some(n) => within.intersection(&SentenceSet::range(n)),
        None => within.clone(),
    };
    if within.is_finite() && within.len().is_some_and(|k| k <= MAX_ENUMERATED) {
        return match finite_subsets(&within).into_iter().find(|d| member(d) && !s.satisfiable(&s.import(d))) {
            Some(d) => BoundedVerdict::Refuted(Witness::Set { set: d }),
            None => BoundedVerdict::Verified,
        };
    }
    let hit = s
        .subsets()
        .chain(s.witness_subsets())
        .map(|d| s.export(&d))
        .find(|d| d.is_subset(&within) && member(d) && !s.satisfiable(&s.import(d)));
    forall_verdict(s.exactness(), hit.map(|d| Witness::Set { set: d }))
}

/// `Σ` is satisfiable relative to `K`: every `Δ ⊆ Σ` with `Δ ∈ K` is
/// satisfiable.
pub fn k_satisfiable_in<S: Import>(s: &S, sigma: &SentenceSet, k: &SubsetFamily) -> BoundedVerdict {
    match k {
        SubsetFamily::Explicit { sets } => match sets.iter().find(|d| d.is_subset(sigma) && !s.satisfiable(&s.import(d))) {
            Some(d) => BoundedVerdict::Refuted(Witness::Set { set: d.clone() }),
            None => BoundedVerdict::Verified,
        },
        SubsetFamily::AllFiniteSubsetsOf { of } => all_satisfiable(s, &sigma.intersection(of), |d| d.is_finite()),
        SubsetFamily::PrincipalUltrafilter { ground, generator } => {
            if !sigma.contains(*generator) || !ground.contains(*generator) {
                return BoundedVerdict::Verified;
            }
            all_satisfiable(s, &sigma.intersection(ground), |d| d.contains(*generator))
        }
    }
}

pub fn k_satisfiable(amst: &Amst, sigma: &SentenceSet, k: &SubsetFamily, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    if let Some(n) = amst.carrier().size() {
        if !sigma.is_finite() || sigma.max_listed().is_some_and(|m| m >= n) {
            return Err(AmstError::NotRepresentable(sigma.to_string()));
        }
    }
    let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
    Ok(crate::with_space!(&space, s => k_satisfiable_in(s, sigma, k)))
}

/// Runs `∀α ∈ L: ok(α)`, with `ok` returning a witness of failure.
fn for_all_sentences<S: Semantics>(s: &S, mut ok: impl FnMut(u32) -> bool) -> BoundedVerdict {
    let failure = s.sentences().find(|&a| !ok(a)).map(|a| Witness::Sentence { sentence: a });
    s.exactness().settle(failure.map_or(Ok(()), Err))
}

fn unsat_singleton<S: Semantics>(s: &S) -> Option<u32> {
    s.witness_sentences().find(|&a| !s.satisfiable(&s.singleton(a)))
}

fn unfinsat_singleton<S: Semantics>(s: &S) -> Option<u32> {
    s.witness_sentences().find(|&a| !s.finitely_satisfiable(&s.singleton(a)))
}

/// An existential found in the window is real; not finding one only
/// settles on exact spaces.
fn exists<S: Semantics>(s: &S, found: bool, failure: Witness) -> BoundedVerdict {
    if found {
        BoundedVerdict::Verified
    } else {
        s.exactness().settle(Err(failure))
    }
}

fn at_least<S: Semantics>(s: &S, k: u32) -> Result<(), Unmet> {
    match s.carrier_size() {
        Some(n) if n < k => Err(Unmet::new(format!("|L| >= {k}"))),
        _ => Ok(()),
    }
}

fn at_least_two<S: Semantics>(s: &S) -> Result<(), Unmet> {
    at_least(s, 2)
}

fn require(v: BoundedVerdict, what: &str) -> Result<(), Unmet> {
    match v {
        BoundedVerdict::Verified => Ok(()),
        BoundedVerdict::Refuted(_) => Err(Unmet::new(what)),
        BoundedVerdict::UnknownAtBound(b) => Err(Unmet::new(format!("{what} (undecided at bound {b})"))),
    }
}

/// pfECQ-sat: `L \ {α}` is unsatisfiable for every α.
pub fn char_pfecq_sat_in<S: Semantics>(s: &S) -> BoundedVerdict {
    for_all_sentences(s, |a| !s.satisfiable(&s.co_singleton(a)))
}

/// pfECQ-finsat: `L \ {α}` is not finitely satisfiable for every α.
pub fn char_pfecq_finsat_in<S: Semantics>(s: &S) -> BoundedVerdict {
    for_all_sentences(s, |a| !s.finitely_satisfiable(&s.co_singleton(a)))
}

/// sECQ-sat on a normal amst: every α has some `β ≠ α` with `L \ {β}`
/// unsatisfiable.
pub fn char_secq_sat_normal_in<S: Semantics>(s: &S) -> BoundedVerdict {
    for_all_sentences(s, |a| s.witness_sentences().any(|b| b != a && !s.satisfiable(&s.co_singleton(b))))
}

/// gECQ-sat on a normal amst, as stated: some `L \ {β}` is unsatisfiable.
/// The right-hand side does not depend on α.
pub fn char_gecq_sat_normal_in<S: Semantics>(s: &S) -> BoundedVerdict {
    for_all_sentences(s, |_| s.witness_sentences().any(|b| !s.satisfiable(&s.co_singleton(b))))
}

/// sECQ-sat through principal ultrafilters: every α has some `β ≠ α` such
/// that `L \ {β}` is not satisfiable relative to `U_α^{L \ {β}}`.
pub fn char_secq_sat_ultrafilter_in<S: Import>(s: &S) -> BoundedVerdict {
    let mut unknown = None;
    let verdict = for_all_sentences(s, |a| {
        s.witness_sentences().filter(|&b| b != a).any(|b| {
            let ground = s.export(&s.co_singleton(b));
            let u = SubsetFamily::principal(ground.clone(), a).expect("a lies outside {b}");
            match k_satisfiable_in(s, &ground, &u) {
                BoundedVerdict::Refuted(_) => true,
                BoundedVerdict::Verified => false,
                BoundedVerdict::UnknownAtBound(k) => {
                    unknown = Some(k);
                    false
                }
            }
        })
    });
    match (verdict, unknown) {
        (BoundedVerdict::Refuted(_), Some(k)) => BoundedVerdict::UnknownAtBound(k),
        (v, _) => v,
    }
}

/// The three equivalent statements for spECQ-sat.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecqForm {
    I,
    Ii,
    Iii,
}

impl SpecqForm {
    pub const ALL: [SpecqForm; 3] = [SpecqForm::I, SpecqForm::Ii, SpecqForm::Iii];
}

/// Statement (i) written out directly: every proper Γ extends by one
/// sentence to a proper unsatisfiable set.
fn specq_statement<S: Semantics>(s: &S, only_satisfiable: bool) -> BoundedVerdict {
    let failure = s.subsets().filter(|g| s.is_proper(g) && (!only_satisfiable || s.satisfiable(g))).find(|g| {
        !s.witness_sentences().any(|c| {
            let gc = s.with(g, c);
            s.is_proper(&gc) && !s.satisfiable(&gc)
        })
    });
    s.exactness().settle(failure.map_or(Ok(()), |g| Err(Witness::Set { set: s.export(&g) })))
}

pub fn char_specq_sat_in<S: Semantics>(s: &S, form: SpecqForm) -> Checked {
    if form != SpecqForm::I {
        at_least_two(s)?;
    }
    let phi = unsat_singleton(s);
    let singleton = || exists(s, phi.is_some(), Witness::Set { set: SentenceSet::empty() });
    Ok(match form {
        SpecqForm::I => specq_statement(s, false),
        SpecqForm::Ii => singleton().and(specq_statement(s, true)),
        SpecqForm::Iii => {
            let derivable = s.subsets().filter(|g| s.is_proper(g)).find_map(|g| {
                s.sentences()
                    .find(|&a| !s.witness_sentences().any(|b| s.entails(&s.with(&g, b), a)))
                    .map(|a| Witness::Entailment { premises: s.export(&g), conclusion: a })
            });
            let derivable = s.exactness().settle(derivable.map_or(Ok(()), Err));
            singleton().and(char_pfecq_sat_in(s)).and(derivable)
        }
    })
}

/// Some `{φ}` is unsatisfiable and pfECQ-sat holds.
fn singleton_and_pfecq<S: Semantics>(s: &S) -> BoundedVerdict {
    exists(s, unsat_singleton(s).is_some(), Witness::Set { set: SentenceSet::empty() }).and(char_pfecq_sat_in(s))
}

/// spECQ-sat on a normal amst.
pub fn char_specq_sat_normal_in<S: Semantics>(s: &S) -> Checked {
    at_least_two(s)?;
    Ok(singleton_and_pfecq(s))
}

/// spECQ-sat under the side condition that satisfiable proper sets are
/// finitely satisfiable.
pub fn specq_pfecq_bridge_in<S: Semantics>(s: &S) -> Checked {
    at_least_two(s)?;
    let side = s.subsets().find(|g| s.is_proper(g) && s.satisfiable(g) && !s.finitely_satisfiable(g));
    require(
        forall_verdict(s.exactness(), side.map(|g| Witness::Set { set: s.export(&g) })),
        "satisfiable proper sets are finitely satisfiable",
    )?;
    Ok(singleton_and_pfecq(s))
}

/// The four equivalent statements for sECQ-finsat.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsecqForm {
    I,
    Ii,
    Iii,
    Iv,
}

impl FsecqForm {
    pub const ALL: [FsecqForm; 4] = [FsecqForm::I, FsecqForm::Ii, FsecqForm::Iii, FsecqForm::Iv];
}

pub fn char_fsecq_in<S: Import>(s: &S, form: FsecqForm) -> Checked {
    Ok(match form {
        FsecqForm::I => for_all_sentences(s, |a| {
            s.witness_subsets().any(|g| {
                let ga = s.with(&g, a);
                s.is_proper(&ga) && !s.finitely_satisfiable(&ga)
            })
        }),
        FsecqForm::Ii => {
            // Needs room outside any finite unsatisfiable set.
            if s.carrier_size().is_some() {
                return Err(Unmet::new("L infinite"));
            }
            let hit = s.witness_subsets().find(|g| s.is_finite(g) && !s.satisfiable(g));
            exists(s, hit.is_some(), Witness::Set { set: SentenceSet::all() })
        }
        FsecqForm::Iii => for_all_sentences(s, |a| {
            s.witness_subsets().filter(|g| s.is_finite(g)).any(|g| {
                let ga = s.with(&g, a);
                s.is_proper(&ga) && !s.finitely_satisfiable(&ga)
            })
        }),
        // Not finitely satisfiable, read as not satisfiable relative to the
        // finite subsets of `L \ {β}`.
        FsecqForm::Iv => for_all_sentences(s, |a| {
            s.witness_sentences().filter(|&b| b != a).any(|b| {
                let rest = s.export(&s.co_singleton(b));
                let k = SubsetFamily::AllFiniteSubsetsOf { of: rest.clone() };
                k_satisfiable_in(s, &rest, &k).is_refuted()
            })
        }),
    })
}

/// spECQ-finsat: pfECQ-finsat and some `{φ}` is not finitely satisfiable.
pub fn char_fspecq_in<S: Semantics>(s: &S) -> Checked {
    at_least_two(s)?;
    let phi = unfinsat_singleton(s);
    Ok(char_pfecq_finsat_in(s).and(exists(s, phi.is_some(), Witness::Set { set: SentenceSet::empty() })))
}

/// Finite, disjoint, unsatisfiable `Σ` and `Δ`, least first.
pub fn disjoint_unsat_pair<S: Semantics>(s: &S) -> Option<(SentenceSet, SentenceSet)> {
    let unsat: Vec<S::Set> = s.witness_subsets().filter(|g| s.is_finite(g) && !s.satisfiable(g)).collect();
    unsat.iter().enumerate().find_map(|(i, x)| unsat[i + 1..].iter().find(|y| s.is_disjoint(x, y)).map(|y| (s.export(x), s.export(y))))
}

/// With a disjoint unsatisfiable pair in hand, pfECQ-finsat must hold; the
/// verdict is the independent check of that conclusion.
pub fn disjoint_unsat_implies_fpfecq_in<S: Semantics>(s: &S) -> Checked {
    match disjoint_unsat_pair(s) {
        Some(_) => Ok(char_pfecq_finsat_in(s)),
        None => Err(Unmet::new("finite disjoint unsatisfiable pair")),
    }
}

/// spECQ-sat as a hypothesis, decided through statement (ii).
fn specq_hypothesis<S: Semantics>(s: &S) -> Result<(), Unmet> {
    let v = char_specq_sat_in(s, SpecqForm::Ii).map_err(|_| Unmet::new("spECQ-sat"))?;
    require(v, "spECQ-sat")
}

/// The unique φ with `{φ}` unsatisfiable such that finite sets are
/// unsatisfiable exactly when they contain φ.
pub fn unique_explosive_sentence<S: Semantics>(s: &S) -> Option<u32> {
    let mut singles = s.witness_sentences().filter(|&a| !s.satisfiable(&s.singleton(a)));
    let phi = singles.next()?;
    if singles.next().is_some() {
        return None;
    }
    let agrees = s.subsets().chain(s.witness_subsets()).filter(|g| s.is_finite(g)).all(|g| !s.satisfiable(&g) == s.contains(&g, phi));
    agrees.then_some(phi)
}

/// Under spECQ-sat exactly one of spECQ-finsat and the unique-φ branch
/// holds.
pub fn specq_dichotomy_in<S: Semantics>(s: &S) -> Checked {
    specq_hypothesis(s)?;
    let finsat = char_fspecq_in(s)?;
    let Some(left) = finsat.as_bool() else {
        return Ok(finsat);
    };
    let unique = unique_explosive_sentence(s);
    // Re-verify uniqueness by scanning every singleton.
    if let Some(phi) = unique {
        let others = s.sentences().filter(|&a| a != phi && !s.satisfiable(&s.singleton(a))).count();
        assert_eq!(others, 0, "unique sentence {phi} is not unique");
    }
    let right = unique.is_some();
    if left != right {
        Ok(BoundedVerdict::Verified)
    } else {
        let detail = match unique {
            Some(phi) => format!("both branches hold, phi = {phi}"),
            None => "neither branch holds".to_string(),
        };
        Ok(BoundedVerdict::Refuted(Witness::Sides { left, right, detail }))
    }
}

/// Under spECQ-sat at most one `L \ {α}` is finitely satisfiable.
pub fn at_most_one_finsat_complement_in<S: Semantics>(s: &S) -> Checked {
    specq_hypothesis(s)?;
    let mut found: Vec<u32> = Vec::new();
    for a in s.sentences() {
        if s.finitely_satisfiable(&s.co_singleton(a)) {
            found.push(a);
            if found.len() == 2 {
                let first = s.export(&s.co_singleton(found[0]));
                let second = s.export(&s.co_singleton(found[1]));
                return Ok(BoundedVerdict::Refuted(Witness::Pair { first, second }));
            }
        }
    }
    Ok(forall_verdict(s.exactness(), None))
}

fn normal(space: &Space) -> Result<(), Unmet> {
    require(normal_space(space), "normal")
}

/// The thirteen characterization checks, with the statement forms split out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Characterization {
    PfecqSat,
    PfecqFinsat,
    SecqSatNormal,
    GecqSatNormal,
    SecqSatUltrafilter,
    SpecqSat(SpecqForm),
    SpecqSatNormal,
    SpecqPfecqBridge,
    Fsecq(FsecqForm),
    Fspecq,
    DisjointUnsatImpliesFpfecq,
    SpecqDichotomy,
    AtMostOneFinsatComplement,
}

/// What a characterization's verdict is compared against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Counterpart {
    Principle(PrincipleId),
    /// A one-way theorem whose conclusion must come out verified.
    Holds,
}

impl fmt::Display for Counterpart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterpart::Principle(p) => write!(f, "{p}"),
            Counterpart::Holds => write!(f, "holds"),
        }
    }
}

impl Characterization {
    pub const ALL: [Characterization; 18] = [
        Characterization::PfecqSat,
        Characterization::PfecqFinsat,
        Characterization::SecqSatNormal,
        Characterization::GecqSatNormal,
        Characterization::SecqSatUltrafilter,
        Characterization::SpecqSat(SpecqForm::I),
        Characterization::SpecqSat(SpecqForm::Ii),
        Characterization::SpecqSat(SpecqForm::Iii),
        Characterization::SpecqSatNormal,
        Characterization::SpecqPfecqBridge,
        Characterization::Fsecq(FsecqForm::I),
        Characterization::Fsecq(FsecqForm::Ii),
        Characterization::Fsecq(FsecqForm::Iii),
        Characterization::Fsecq(FsecqForm::Iv),
        Characterization::Fspecq,
        Characterization::DisjointUnsatImpliesFpfecq,
        Characterization::SpecqDichotomy,
        Characterization::AtMostOneFinsatComplement,
    ];

    pub fn name(self) -> String {
        match self {
            Characterization::PfecqSat => "char_pfecq_sat".into(),
            Characterization::PfecqFinsat => "char_pfecq_finsat".into(),
            Characterization::SecqSatNormal => "char_secq_sat_normal".into(),
            Characterization::GecqSatNormal => "char_gecq_sat_normal".into(),
            Characterization::SecqSatUltrafilter => "char_secq_sat_ultrafilter".into(),
            Characterization::SpecqSat(f) => format!("char_specq_sat_{}", roman(f as usize)),
            Characterization::SpecqSatNormal => "char_specq_sat_normal".into(),
            Characterization::SpecqPfecqBridge => "specq_pfecq_bridge".into(),
            Characterization::Fsecq(f) => format!("char_fsecq_{}", roman(f as usize)),
            Characterization::Fspecq => "char_fspecq".into(),
            Characterization::DisjointUnsatImpliesFpfecq => "disjoint_unsat_implies_fpfecq".into(),
            Characterization::SpecqDichotomy => "specq_dichotomy".into(),
            Characterization::AtMostOneFinsatComplement => "at_most_one_finsat_complement".into(),
        }
    }

    /// The operation this check belongs to, with statement forms merged.
    pub fn operation(self) -> &'static str {
        match self {
            Characterization::SpecqSat(_) => "char_specq_sat",
            Characterization::Fsecq(_) => "char_fsecq",
            Characterization::PfecqSat => "char_pfecq_sat",
            Characterization::PfecqFinsat => "char_pfecq_finsat",
            Characterization::SecqSatNormal => "char_secq_sat_normal",
            Characterization::GecqSatNormal => "char_gecq_sat_normal",
            Characterization::SecqSatUltrafilter => "char_secq_sat_ultrafilter",
            Characterization::SpecqSatNormal => "char_specq_sat_normal",
            Characterization::SpecqPfecqBridge => "specq_pfecq_bridge",
            Characterization::Fspecq => "char_fspecq",
            Characterization::DisjointUnsatImpliesFpfecq => "disjoint_unsat_implies_fpfecq",
            Characterization::SpecqDichotomy => "specq_dichotomy",
            Characterization::AtMostOneFinsatComplement => "at_most_one_finsat_complement",
        }
    }

    pub fn counterpart(self) -> Counterpart {
        use PrincipleId as P;
        match self {
            Characterization::PfecqSat => Counterpart::Principle(P::PfecqSat),
            Characterization::PfecqFinsat | Characterization::DisjointUnsatImpliesFpfecq => Counterpart::Principle(P::PfecqFinsat),
            Characterization::SecqSatNormal | Characterization::SecqSatUltrafilter => Counterpart::Principle(P::SecqSat),
            Characterization::GecqSatNormal => Counterpart::Principle(P::GecqSat),
            Characterization::SpecqSat(_) | Characterization::SpecqSatNormal | Characterization::SpecqPfecqBridge => {
                Counterpart::Principle(P::SpecqSat)
            }
            Characterization::Fsecq(_) => Counterpart::Principle(P::SecqFinsat),
            Characterization::Fspecq => Counterpart::Principle(P::SpecqFinsat),
            Characterization::SpecqDichotomy | Characterization::AtMostOneFinsatComplement => Counterpart::Holds,
        }
    }

    pub fn run(self, space: &Space) -> Checked {
        match self {
            Characterization::SecqSatNormal => {
                normal(space)?;
                Ok(crate::with_space!(space, s => char_secq_sat_normal_in(s)))
            }
            Characterization::GecqSatNormal => {
                normal(space)?;
                // A pair {α, β} must fit inside some L \ {γ}.
                crate::with_space!(space, s => at_least(s, 3))?;
                Ok(crate::with_space!(space, s => char_gecq_sat_normal_in(s)))
            }
            Characterization::SpecqSatNormal => {
                normal(space)?;
                crate::with_space!(space, s => char_specq_sat_normal_in(s))
            }
            _ => crate::with_space!(space, s => self.run_in(s)),
        }
    }

    fn run_in<S: Import>(self, s: &S) -> Checked {
        match self {
            Characterization::PfecqSat => Ok(char_pfecq_sat_in(s)),
            Characterization::PfecqFinsat => Ok(char_pfecq_finsat_in(s)),
            Characterization::SecqSatUltrafilter => Ok(char_secq_sat_ultrafilter_in(s)),
            Characterization::SpecqSat(f) => char_specq_sat_in(s, f),
            Characterization::SpecqPfecqBridge => specq_pfecq_bridge_in(s),
            Characterization::Fsecq(f) => char_fsecq_in(s, f),
            Characterization::Fspecq => char_fspecq_in(s),
            Characterization::DisjointUnsatImpliesFpfecq => disjoint_unsat_implies_fpfecq_in(s),
            Characterization::SpecqDichotomy => specq_dichotomy_in(s),
            Characterization::AtMostOneFinsatComplement => at_most_one_finsat_complement_in(s),
            Characterization::SecqSatNormal | Characterization::GecqSatNormal | Characterization::SpecqSatNormal => {
                unreachable!("normal-only checks run through Characterization::run")
            }
        }
    }
}

fn roman(i: usize) -> &'static str {
    ["i", "ii", "iii", "iv"][i]
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn characterize(amst: &Amst, c: Characterization, bound: Option<u32>) -> Result<Checked, AmstError> {
    Ok(c.run(&Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?))
}

pub fn char_pfecq_sat(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::PfecqSat, bound)
}

pub fn char_pfecq_finsat(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::PfecqFinsat, bound)
}

pub fn char_secq_sat_normal(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SecqSatNormal, bound)
}

pub fn char_gecq_sat_normal(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::GecqSatNormal, bound)
}

pub fn char_secq_sat_ultrafilter(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SecqSatUltrafilter, bound)
}

pub fn char_specq_sat(amst: &Amst, form: SpecqForm, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SpecqSat(form), bound)
}

pub fn char_specq_sat_normal(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SpecqSatNormal, bound)
}

pub fn specq_pfecq_bridge(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SpecqPfecqBridge, bound)
}

pub fn char_fsecq(amst: &Amst, form: FsecqForm, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::Fsecq(form), bound)
}

pub fn char_fspecq(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::Fspecq, bound)
}

pub fn disjoint_unsat_implies_fpfecq(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::DisjointUnsatImpliesFpfecq, bound)
}

pub fn specq_dichotomy(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::SpecqDichotomy, bound)
}

pub fn at_most_one_finsat_complement(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    characterize(amst, Characterization::AtMostOneFinsatComplement, bound)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossStatus {
    Agree,
    Mismatch,
    /// The hypothesis failed.
    Skipped,
    /// One side is undecided at the bound.
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CrossEntry {
    pub check: String,
    pub counterpart: String,
    pub status: CrossStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characterization: Option<BoundedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definitional: Option<BoundedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unmet: Option<String>,
}

/// Every characterization run against its definitional counterpart.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub entries: Vec<CrossEntry>,
}

impl CrossCheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CrossEntry> {
        self.entries.iter().filter(|e| e.status == CrossStatus::Mismatch)
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches().next().is_none()
    }

    pub fn entry(&self, check: &str) -> Option<&CrossEntry> {
        self.entries.iter().find(|e| e.check == check)
    }

    /// The mismatch report: empty when every characterization agrees.
    pub fn to_value(&self) -> Value {
        json!({ "mismatches": self.mismatches().collect::<Vec<_>>() })
    }
}

pub fn cross_check_space(space: &Space) -> CrossCheckReport {
    let mut definitional: [Option<BoundedVerdict>; 12] = Default::default();
    let mut entries = Vec::with_capacity(Characterization::ALL.len());
    for c in Characterization::ALL {
        let counterpart = c.counterpart();
        let mut entry = CrossEntry {
            check: c.name(),
            counterpart: counterpart.to_string(),
            status: CrossStatus::Skipped,
            characterization: None,
            definitional: None,
            unmet: None,
        };
        match c.run(space) {
            Err(u) => entry.unmet = Some(u.hypothesis),
            Ok(got) => {
                let want = match counterpart {
                    Counterpart::Principle(p) => definitional[p.index()]
                        .get_or_insert_with(|| crate::with_space!(space, s => crate::principles::check(s, p, None)))
                        .clone(),
                    Counterpart::Holds => BoundedVerdict::Verified,
                };
                entry.status = match (got.as_bool(), want.as_bool()) {
                    (Some(x), Some(y)) if x == y => CrossStatus::Agree,
                    (Some(_), Some(_)) => CrossStatus::Mismatch,
                    _ => CrossStatus::Unknown,
                };
                entry.characterization = Some(got);
                entry.definitional = Some(want);
            }
        }
        entries.push(entry);
    }
    CrossCheckReport { entries }
}

pub fn cross_check(amst: &Amst, bound: Option<u32>) -> Result<CrossCheckReport, AmstError> {
    Ok(cross_check_space(&Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amst::Amst;

    fn explicit(k: u32, n: u32, f: impl Fn(u32, u64) -> bool) -> Amst {
        Amst::explicit_from_fn(k, n, f).unwrap()
    }

    #[test]
    fn ultrafilter_membership() {
        let u = SubsetFamily::principal(SentenceSet::finite([0, 1, 2]), 1).unwrap();
        assert!(u.contains(&SentenceSet::finite([1])));
        assert!(u.contains(&SentenceSet::finite([0, 1, 2])));
        assert!(!u.contains(&SentenceSet::finite([0, 2])));
        assert!(!u.contains(&SentenceSet::finite([1, 3])));
        assert!(SubsetFamily::principal(SentenceSet::finite([0]), 1).is_err());
    }

    #[test]
    fn relative_satisfiability_basics() {
        // Only {0,1} is unsatisfiable.
        let a = explicit(1, 3, |_, g| g != 0b011);
        let g = SentenceSet::finite([0, 2]);
        let own = SubsetFamily::Explicit { sets: vec![g.clone()] };
        assert!(k_satisfiable(&a, &g, &own, None).unwrap().is_verified());
        let none = SubsetFamily::Explicit { sets: vec![] };
        assert!(k_satisfiable(&a, &SentenceSet::range(3), &none, None).unwrap().is_verified());
        let fin = SubsetFamily::AllFiniteSubsetsOf { of: SentenceSet::range(3) };
        assert!(k_satisfiable(&a, &SentenceSet::range(3), &fin, None).unwrap().is_refuted());
        // L is satisfiable but not finitely so; the ultrafilter at 2 misses {0,1}.
        let u2 = SubsetFamily::principal(SentenceSet::range(3), 2).unwrap();
        assert!(k_satisfiable(&a, &SentenceSet::range(3), &u2, None).unwrap().is_verified());
        let u0 = SubsetFamily::principal(SentenceSet::range(3), 0).unwrap();
        assert!(k_satisfiable(&a, &SentenceSet::range(3), &u0, None).unwrap().is_refuted());
    }

    #[test]
    fn everything_satisfiable_refutes_all() {
        let a = explicit(2, 3, |_, _| true);
        let report = cross_check(&a, None).unwrap();
        assert!(report.is_clean(), "{}", report.to_value());
        for e in &report.entries {
            if let Some(v) = &e.characterization {
                if e.counterpart != "holds" {
                    assert!(v.is_refuted(), "{}", e.check);
                }
            }
        }
    }

    #[test]
    fn small_carriers_are_skipped_where_needed() {
        let a = explicit(1, 1, |_, _| false);
        let report = cross_check(&a, None).unwrap();
        assert_eq!(report.entry("char_specq_sat_ii").unwrap().status, CrossStatus::Skipped);
        assert_eq!(report.entry("char_fsecq_ii").unwrap().status, CrossStatus::Skipped);
        assert!(report.is_clean(), "{}", report.to_value());
    }

    #[test]
    fn gecq_normal_statement_is_too_strong() {
        // m0 satisfies {0} and {1}, m1 satisfies {1} and {2}; normal.
        let a = explicit(2, 3, |m, g| {
            let ok = if m == 0 { 0b011 } else { 0b110 };
            g & !ok == 0
        });
        let report = cross_check(&a, None).unwrap();
        let e = report.entry("char_gecq_sat_normal").unwrap();
        assert_eq!(e.status, CrossStatus::Mismatch);
        assert!(e.characterization.as_ref().unwrap().is_verified());
        assert!(e.definitional.as_ref().unwrap().is_refuted());
    }

    mod props {
        use super::*;
        use crate::semantics::is_finitely_satisfiable;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn finite_subsets_family_is_finsat(idx in 0u64..1 << 16, g in 0u64..8) {
                let a = Amst::from_index(2, 3, idx).unwrap();
                let sigma = SentenceSet::from_mask(g);
                let k = SubsetFamily::AllFiniteSubsetsOf { of: SentenceSet::range(3) };
                let rel = k_satisfiable(&a, &sigma, &k, None).unwrap();
                let fin = is_finitely_satisfiable(&a, &sigma, None).unwrap();
                prop_assert_eq!(rel.is_verified(), fin.is_verified());
            }

            #[test]
            fn principal_ultrafilter_is_upward_closed(ground in 1u64..64, gen in 0u32..6, d in 0u64..64, extra in 0u64..64) {
                prop_assume!(ground >> gen & 1 == 1);
                let u = SubsetFamily::principal(SentenceSet::from_mask(ground), gen).unwrap();
                let small = d & ground;
                let big = (small | extra) & ground;
                if u.contains(&SentenceSet::from_mask(small)) {
                    prop_assert!(u.contains(&SentenceSet::from_mask(big)));
                }
            }
        }
    }
}
