//! The consequence relation induced by an amst, anti-model structures, and
//! the theorems tying finitary-ness to compactness.

use serde::Serialize;

use crate::amst::Amst;
use crate::error::AmstError;
use crate::principles::{check, PrincipleId};
use crate::semantics::{compact_in, forall_verdict, normal_space, Reading};
use crate::set::{ModelSet, SentenceSet};
use crate::space::{CountableSpace, Domain, FiniteSpace, Semantics, Space, DEFAULT_BOUND};
use crate::verdict::{BoundedVerdict, Checked, Unmet, Witness};
use crate::view::subset_order;

/// Finite carriers up to this size get an eagerly built closure table.
pub const CLOSURE_MEMO_CAP: u32 = 12;

/// `Γ ⊢ α` iff `Mod(Γ) ⊆ Mod({α})`.
#[derive(Clone, Debug)]
pub struct ConsequenceView {
    amst: Amst,
    space: Space,
    closures: Option<Vec<u64>>,
}

impl ConsequenceView {
    pub fn new(amst: &Amst, bound: Option<u32>) -> Result<Self, AmstError> {
        let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
        let closures = match &space {
            Space::Finite(f) if f.view().sentences() <= CLOSURE_MEMO_CAP => {
                let v = f.view();
                Some((0..=v.full()).map(|g| v.closure(g)).collect())
            }
            _ => None,
        };
        Ok(ConsequenceView { amst: amst.clone(), space, closures })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn entails(&self, g: &SentenceSet, a: u32) -> Result<bool, AmstError> {
        self.amst.mod_of(g)?;
        if !self.amst.carrier().admits_sentence(a) {
            return Err(AmstError::SentenceOutOfRange(a));
        }
        Ok(match &self.space {
            Space::Finite(f) => f.entails(&g.to_mask().expect("finite carrier set"), a),
            Space::Countable(c) => c.entails(g, a),
        })
    }

    /// `C(Γ)`. On the countable carrier every sentence beyond the rule's
    /// constants and Γ's listed elements behaves alike, so two far probes
    /// decide the tail.
    pub fn closure(&self, g: &SentenceSet) -> Result<SentenceSet, AmstError> {
        self.amst.mod_of(g)?;
        match &self.space {
            Space::Finite(f) => {
                let mask = g.to_mask().expect("finite carrier set");
                let c = match &self.closures {
                    Some(t) => t[mask as usize],
                    None => f.view().closure(mask),
                };
                Ok(SentenceSet::from_mask(c))
            }
            Space::Countable(c) => {
                let top = c.constants().last().copied().max(g.max_listed()).map_or(0, |m| m + 3);
                let (far, farther) = (c.entails(g, top), c.entails(g, top + 2));
                if far != farther {
                    return Err(AmstError::NonRepresentableClosure(g.to_string()));
                }
                let below = (0..top).filter(|&a| c.entails(g, a) != far);
                Ok(if far { SentenceSet::cofinite(below) } else { SentenceSet::finite(below) })
            }
        }
    }

    /// `C(Γ) = L`.
    pub fn is_trivial(&self, g: &SentenceSet) -> Result<bool, AmstError> {
        Ok(self.closure(g)? == self.amst.carrier().full())
    }

    pub fn check_tarski(&self) -> TarskiReport {
        match &self.space {
            Space::Finite(f) => tarski_finite(f),
            Space::Countable(c) => tarski_countable(c),
        }
    }

    pub fn is_finitary(&self) -> BoundedVerdict {
        crate::with_space!(&self.space, s => finitary_in(s))
    }
}

/// One verdict per Tarski clause.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TarskiReport {
    pub reflexivity: BoundedVerdict,
    pub monotonicity: BoundedVerdict,
    pub transitivity: BoundedVerdict,
}

impl TarskiReport {
    pub fn all_verified(&self) -> bool {
        self.reflexivity.is_verified() && self.monotonicity.is_verified() && self.transitivity.is_verified()
    }
}

fn entailment(premises: SentenceSet, conclusion: u32) -> Witness {
    Witness::Entailment { premises, conclusion }
}

fn tarski_finite(f: &FiniteSpace) -> TarskiReport {
    let v = f.view();
    let n = v.sentences();
    let order = subset_order(n);
    let reflexivity =
        order.iter().find_map(|&g| (0..n).find(|&a| g >> a & 1 == 1 && !v.entails(g, a)).map(|a| entailment(SentenceSet::from_mask(g), a)));
    // Single-element steps generate every inclusion.
    let monotonicity = order.iter().find_map(|&g| {
        (0..n).filter(|a| g >> a & 1 == 0).find_map(|b| {
            (0..n).find(|&a| v.entails(g, a) && !v.entails(g | 1 << b, a)).map(|a| entailment(SentenceSet::from_mask(g | 1 << b), a))
        })
    });
    let transitivity = order.iter().find_map(|&g| {
        let cg = v.closure(g);
        order
            .iter()
            .find(|&&s| s & !cg == 0 && v.closure(s) & !cg != 0)
            .map(|&s| Witness::Pair { first: SentenceSet::from_mask(g), second: SentenceSet::from_mask(s) })
    });
    TarskiReport {
        reflexivity: forall_verdict(f.exactness(), reflexivity),
        monotonicity: forall_verdict(f.exactness(), monotonicity),
        transitivity: forall_verdict(f.exactness(), transitivity),
    }
}

/// Sample of premise sets used for the pairwise clauses on `N`.
const COUNTABLE_PAIR_SAMPLE: usize = 48;

fn tarski_countable(c: &CountableSpace) -> TarskiReport {
    let bound = c.windows().cap();
    let unknown = |w: Option<Witness>| w.map_or(BoundedVerdict::UnknownAtBound(bound), BoundedVerdict::Refuted);
    let sentences: Vec<u32> = c.sentences().collect();
    let reflexivity =
        c.subsets().find_map(|g| sentences.iter().copied().find(|&a| g.contains(a) && !c.entails(&g, a)).map(|a| entailment(g.clone(), a)));
    let monotonicity = c.subsets().find_map(|g| {
        sentences.iter().find_map(|&b| {
            let gb = g.with(b);
            sentences.iter().copied().find(|&a| c.entails(&g, a) && !c.entails(&gb, a)).map(|a| entailment(gb.clone(), a))
        })
    });
    let sample: Vec<SentenceSet> = c.subsets().take(COUNTABLE_PAIR_SAMPLE).collect();
    let transitivity = sample.iter().find_map(|g| {
        let cg: Vec<bool> = sentences.iter().map(|&a| c.entails(g, a)).collect();
        let within = |s: &SentenceSet| sentences.iter().zip(&cg).all(|(&a, &inc)| !s.contains(a) || inc) && s.is_finite();
        sample.iter().filter(|s| within(s)).find_map(|s| {
            sentences
                .iter()
                .zip(&cg)
                .any(|(&a, &inc)| !inc && c.entails(s, a))
                .then(|| Witness::Pair { first: g.clone(), second: s.clone() })
        })
    });
    TarskiReport { reflexivity: unknown(reflexivity), monotonicity: unknown(monotonicity), transitivity: unknown(transitivity) }
}

/// Every entailment has a finite sub-premise set doing the same job.
pub fn finitary_in<S: Semantics>(s: &S) -> BoundedVerdict {
    for g in s.subsets() {
        if s.is_finite(&g) {
            continue;
        }
        for a in s.sentences() {
            if s.entails(&g, a) && !s.witness_subsets().any(|h| s.is_finite(&h) && s.is_subset(&h, &g) && s.entails(&h, a)) {
                return s.exactness().settle(Err(entailment(s.export(&g), a)));
            }
        }
    }
    s.exactness().settle(Ok(()))
}

pub fn is_finitary(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    Ok(ConsequenceView::new(amst, bound)?.is_finitary())
}

/// Spaces that can drop the models of a set.
pub trait AntiModels: Semantics + Sized {
    /// The anti-model structure relative to `excluded`.
    fn anti(&self, excluded: &Self::Set) -> Self;
}

impl AntiModels for FiniteSpace {
    fn anti(&self, excluded: &u64) -> Self {
        FiniteSpace::anti(self, *excluded)
    }
}

impl AntiModels for CountableSpace {
    fn anti(&self, excluded: &SentenceSet) -> Self {
        CountableSpace::anti(self, excluded)
    }
}

/// `M_Λ`: the base relation restricted to models outside `Mod(Λ)`. The
/// model set may be empty.
#[derive(Clone, Debug)]
pub struct AntiModelStructure {
    pub base: Amst,
    pub excluded: SentenceSet,
    pub models: ModelSet,
}

impl AntiModelStructure {
    pub fn holds(&self, m: u32, g: &SentenceSet) -> Result<bool, AmstError> {
        if !self.models.contains(m) {
            return Err(AmstError::ModelOutOfRange(m));
        }
        self.base.holds(m, g)
    }

    pub fn mod_of(&self, g: &SentenceSet) -> Result<ModelSet, AmstError> {
        Ok(self.base.mod_of(g)?.intersection(&self.models))
    }

    pub fn is_satisfiable(&self, g: &SentenceSet) -> Result<bool, AmstError> {
        Ok(!self.mod_of(g)?.is_empty())
    }

    pub fn space(&self, bound: Option<u32>) -> Result<Space, AmstError> {
        Ok(match Space::new(&self.base, bound.unwrap_or(DEFAULT_BOUND))? {
            Space::Finite(f) => Space::Finite(f.anti(self.excluded.to_mask().expect("finite carrier set"))),
            Space::Countable(c) => Space::Countable(c.anti(&self.excluded)),
        })
    }
}

pub fn anti_model(amst: &Amst, a: u32) -> Result<AntiModelStructure, AmstError> {
    if !amst.carrier().admits_sentence(a) {
        return Err(AmstError::SentenceOutOfRange(a));
    }
    anti_model_set(amst, &SentenceSet::singleton(a))
}

pub fn anti_model_set(amst: &Amst, lambda: &SentenceSet) -> Result<AntiModelStructure, AmstError> {
    let models = amst.model_domain().difference(&amst.mod_of(lambda)?);
    Ok(AntiModelStructure { base: amst.clone(), excluded: lambda.clone(), models })
}

/// Least `Λ_α` with `Mod(Λ_α) = M \ Mod({α})`. Countable carriers search
/// finite and cofinite sets up to `size_limit` inside the window.
pub fn find_complement_defining_set(amst: &Amst, a: u32, size_limit: Option<u32>) -> Result<Option<SentenceSet>, AmstError> {
    if !amst.carrier().admits_sentence(a) {
        return Err(AmstError::SentenceOutOfRange(a));
    }
    let space = Space::new(amst, size_limit.unwrap_or(DEFAULT_BOUND))?;
    Ok(complement_defining(&space, a))
}

pub fn complement_defining(space: &Space, a: u32) -> Option<SentenceSet> {
    match space {
        Space::Finite(f) => {
            let v = f.view();
            let target = v.alive() & !v.mods(1 << a);
            subset_order(v.sentences()).iter().find(|&&g| v.mods(g) == target).map(|&g| SentenceSet::from_mask(g))
        }
        Space::Countable(c) => {
            let target = c.models().difference(&c.mod_of(&SentenceSet::singleton(a)));
            c.subsets().find(|g| c.mod_of(g) == target)
        }
    }
}

fn sides(left: &BoundedVerdict, right: &BoundedVerdict, detail: impl Into<String>) -> BoundedVerdict {
    match (left.as_bool(), right.as_bool()) {
        (Some(l), Some(r)) if l == r => BoundedVerdict::Verified,
        (Some(l), Some(r)) => BoundedVerdict::Refuted(Witness::Sides { left: l, right: r, detail: detail.into() }),
        _ => left.clone().and(right.clone()),
    }
}

/// Finitary iff every `M_α` is compact. Both sides are computed on their own.
pub fn char_finitary_in<S: AntiModels>(s: &S, reading: Reading) -> BoundedVerdict {
    let left = finitary_in(s);
    let mut right = BoundedVerdict::Verified;
    let mut culprit = None;
    for a in s.sentences() {
        let v = compact_in(&s.anti(&s.singleton(a)), reading);
        if v.is_refuted() && culprit.is_none() {
            culprit = Some(a);
        }
        right = right.and(v);
        if right.is_refuted() {
            break;
        }
    }
    let detail = match culprit {
        Some(a) => format!("finitary vs every M_a compact ({reading}); M_{a} is not compact"),
        None => format!("finitary vs every M_a compact ({reading})"),
    };
    sides(&left, &right, detail)
}

pub fn verify_char_finitary(amst: &Amst, reading: Reading, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
    Ok(crate::with_space!(&space, s => char_finitary_in(s, reading)))
}

/// Finite Λ probed on the countable carrier; each one rebuilds the windows.
const COUNTABLE_LAMBDA_SAMPLE: usize = 12;

/// Under normality: finitary iff `M_Λ` is compact for every finite Λ.
pub fn char_finnormal_space(space: &Space, reading: Reading) -> Checked {
    if !normal_space(space).is_verified() {
        return Err(Unmet::new("normal"));
    }
    Ok(crate::with_space!(space, s => {
        let left = finitary_in(s);
        let limit = if s.carrier_size().is_some() { usize::MAX } else { COUNTABLE_LAMBDA_SAMPLE };
        let mut right = BoundedVerdict::Verified;
        for lambda in s.witness_subsets().filter(|l| s.is_finite(l)).take(limit) {
            right = right.and(compact_in(&AntiModels::anti(s, &lambda), reading));
            if right.is_refuted() {
                break;
            }
        }
        if limit != usize::MAX && right.is_verified() {
            right = BoundedVerdict::UnknownAtBound(s.windows_cap());
        }
        sides(&left, &right, format!("finitary vs every finite M_Lambda compact ({reading})"))
    }))
}

pub fn verify_char_finnormal(amst: &Amst, reading: Reading, bound: Option<u32>) -> Result<Checked, AmstError> {
    Ok(char_finnormal_space(&Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?, reading))
}

/// Compact implies finitary when every `Λ_α` exists; finitary implies
/// compact when they are all finite.
pub fn compact_iff_finitary_space(space: &Space, reading: Reading) -> Checked {
    if !normal_space(space).is_verified() {
        return Err(Unmet::new("normal"));
    }
    let sentences: Vec<u32> = crate::with_space!(space, s => s.sentences().collect());
    let mut all_finite = true;
    for a in sentences {
        match complement_defining(space, a) {
            Some(l) => all_finite &= l.is_finite(),
            None => return Err(Unmet::new(format!("no set defines the complement of Mod({{{a}}})"))),
        }
    }
    let (compact, finitary) = crate::with_space!(space, s => (compact_in(s, reading), finitary_in(s)));
    if compact.is_verified() && finitary.is_refuted() {
        return Ok(BoundedVerdict::Refuted(Witness::Sides {
            left: true,
            right: false,
            detail: format!("compact ({reading}) but not finitary"),
        }));
    }
    if all_finite && finitary.is_verified() && compact.is_refuted() {
        return Ok(BoundedVerdict::Refuted(Witness::Sides {
            left: false,
            right: true,
            detail: format!("finitary but not compact ({reading})"),
        }));
    }
    Ok(compact.and(finitary).as_bool().map_or_else(|| BoundedVerdict::UnknownAtBound(space_cap(space)), |_| BoundedVerdict::Verified))
}

pub fn verify_compact_iff_finitary(amst: &Amst, reading: Reading, bound: Option<u32>) -> Result<Checked, AmstError> {
    Ok(compact_iff_finitary_space(&Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?, reading))
}

fn space_cap(space: &Space) -> u32 {
    match space {
        Space::Finite(f) => f.view().sentences(),
        Space::Countable(c) => c.windows().cap(),
    }
}

/// Window size reported when a sampled check comes back clean.
trait WindowsCap {
    fn windows_cap(&self) -> u32;
}

impl WindowsCap for FiniteSpace {
    fn windows_cap(&self) -> u32 {
        self.view().sentences()
    }
}

impl WindowsCap for CountableSpace {
    fn windows_cap(&self) -> u32 {
        self.windows().cap()
    }
}

/// Unsatisfiable sets are trivial; the two converse side conditions are
/// reported separately.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UnsatTrivialReport {
    pub forward: BoundedVerdict,
    /// Converse under "some `{α}` is unsatisfiable".
    pub converse_singleton: Checked,
    /// Converse under "normal and `L` unsatisfiable".
    pub converse_normal: Checked,
}

fn trivial_in<S: Semantics>(s: &S, g: &S::Set) -> bool {
    s.sentences().all(|a| s.entails(g, a))
}

fn trivial_implies_unsat<S: Semantics>(s: &S) -> BoundedVerdict {
    let failure = s.subsets().find(|g| trivial_in(s, g) && s.satisfiable(g));
    forall_verdict(s.exactness(), failure.map(|g| Witness::Set { set: s.export(&g) }))
}

pub fn unsat_trivial_space(space: &Space) -> UnsatTrivialReport {
    let normal = normal_space(space).is_verified();
    crate::with_space!(space, s => {
        let failure = s.subsets().find(|g| !s.satisfiable(g) && !trivial_in(s, g));
        let forward = forall_verdict(s.exactness(), failure.map(|g| Witness::Set { set: s.export(&g) }));
        let singleton = s.witness_sentences().any(|a| !s.satisfiable(&s.singleton(a)));
        let converse_singleton = if singleton { Ok(trivial_implies_unsat(s)) } else { Err(Unmet::new("some singleton is unsatisfiable")) };
        let converse_normal = if normal && !s.satisfiable(&s.full()) {
            Ok(trivial_implies_unsat(s))
        } else {
            Err(Unmet::new("normal and L unsatisfiable"))
        };
        UnsatTrivialReport { forward, converse_singleton, converse_normal }
    })
}

pub fn verify_unsat_implies_trivial(amst: &Amst, bound: Option<u32>) -> Result<UnsatTrivialReport, AmstError> {
    Ok(unsat_trivial_space(&Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?))
}

/// Finitary with an unsatisfiable singleton implies compact.
pub fn cor_singleton_compact(space: &Space, reading: Reading) -> Checked {
    crate::with_space!(space, s => {
        if !finitary_in(s).is_verified() {
            return Err(Unmet::new("finitary"));
        }
        if !s.witness_sentences().any(|a| !s.satisfiable(&s.singleton(a))) {
            return Err(Unmet::new("some singleton is unsatisfiable"));
        }
        Ok(compact_in(s, reading))
    })
}

/// Normal and finitary with a finite unsatisfiable set implies compact.
pub fn cor_finite_unsat_compact(space: &Space, reading: Reading) -> Checked {
    if !normal_space(space).is_verified() {
        return Err(Unmet::new("normal"));
    }
    crate::with_space!(space, s => {
        if !finitary_in(s).is_verified() {
            return Err(Unmet::new("finitary"));
        }
        if s.unsat_finite_subset(&s.full()).is_none() {
            return Err(Unmet::new("some finite set is unsatisfiable"));
        }
        Ok(compact_in(s, reading))
    })
}

/// Normal and finitary with sECQ-finsat implies compact.
pub fn cor_fsecq_compact(space: &Space, reading: Reading) -> Checked {
    if !normal_space(space).is_verified() {
        return Err(Unmet::new("normal"));
    }
    crate::with_space!(space, s => {
        if !finitary_in(s).is_verified() {
            return Err(Unmet::new("finitary"));
        }
        if !check(s, PrincipleId::SecqFinsat, None).is_verified() {
            return Err(Unmet::new("sECQ-finsat"));
        }
        Ok(compact_in(s, reading))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Carrier, ModelCount};
    use crate::rule::RuleExpr;

    #[test]
    fn successor_pair_entails_everything() {
        let a = Amst::rule(Carrier::Countable, ModelCount::Countable, RuleExpr::not(RuleExpr::IsSuccessorPair)).unwrap();
        let c = ConsequenceView::new(&a, None).unwrap();
        assert!(c.entails(&SentenceSet::finite([3, 4]), 9).unwrap());
        assert!(c.is_trivial(&SentenceSet::finite([3, 4])).unwrap());
    }

    #[test]
    fn closure_tail_on_countable() {
        // m ⊨ Γ iff m ∈ Γ: C({2}) = {2}.
        let a = Amst::rule(Carrier::Countable, ModelCount::Countable, RuleExpr::ContainsModel).unwrap();
        let c = ConsequenceView::new(&a, None).unwrap();
        assert_eq!(c.closure(&SentenceSet::singleton(2)).unwrap(), SentenceSet::singleton(2));
        assert_eq!(c.closure(&SentenceSet::empty()).unwrap(), SentenceSet::all());
    }

    #[test]
    fn zero_singleton_is_trivial() {
        let a = Amst::rule(Carrier::Countable, ModelCount::Countable, RuleExpr::not(RuleExpr::EqualsSet(vec![0]))).unwrap();
        let c = ConsequenceView::new(&a, None).unwrap();
        assert!(c.is_trivial(&SentenceSet::singleton(0)).unwrap());
    }

    #[test]
    fn reflexivity_failure() {
        // One model over {a, b}: satisfies {a, b} but not {a}.
        let a = Amst::explicit_from_fn(1, 2, |_, mask| mask == 0b11).unwrap();
        let r = ConsequenceView::new(&a, None).unwrap().check_tarski();
        assert!(r.reflexivity.is_refuted());
    }

    #[test]
    fn total_relation_is_tarski() {
        let a = Amst::explicit_from_fn(2, 2, |_, _| true).unwrap();
        assert!(ConsequenceView::new(&a, None).unwrap().check_tarski().all_verified());
    }

    #[test]
    fn anti_models() {
        let a = Amst::explicit_from_fn(2, 2, |m, mask| m == 0 || mask == 0).unwrap();
        // {0} holds only in model 0.
        let anti = anti_model(&a, 0).unwrap();
        assert_eq!(anti.models, ModelSet::finite([1]));
        assert!(anti.holds(0, &SentenceSet::empty()).is_err());
        let all = anti_model_set(&a, &SentenceSet::empty()).unwrap();
        assert!(all.models.is_empty());
    }

    #[test]
    fn complement_defining_sets() {
        let a = Amst::explicit_from_fn(2, 2, |m, mask| m == 0 || mask == 0).unwrap();
        // Mod({0}) = {0}; nothing is satisfied by model 1 alone.
        assert_eq!(find_complement_defining_set(&a, 0, None).unwrap(), None);
        let b = Amst::explicit_from_fn(1, 2, |_, mask| mask != 0b01).unwrap();
        // Mod({0}) = ∅, Mod(∅) = M.
        assert_eq!(find_complement_defining_set(&b, 0, None).unwrap(), Some(SentenceSet::empty()));
    }

    #[test]
    fn finite_scale_iff_discrepancy() {
        // One model over {a, b}: satisfies {a}, fails ∅.
        let a = Amst::explicit_from_fn(1, 2, |_, mask| mask == 0b01).unwrap();
        assert!(verify_char_finitary(&a, Reading::Fwd, None).unwrap().is_verified());
        assert!(verify_char_finitary(&a, Reading::Iff, None).unwrap().is_refuted());
    }

    #[test]
    fn unsat_trivial_side_conditions() {
        let a = Amst::explicit_from_fn(1, 2, |_, _| true).unwrap();
        let r = verify_unsat_implies_trivial(&a, None).unwrap();
        assert!(r.forward.is_verified());
        assert!(r.converse_singleton.is_err());
    }
}
