//! Quantification domains: which sentences and subsets a checker ranges over,
//! and how satisfiability is decided on them.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::amst::Amst;
use crate::carrier::{Carrier, ModelCount};
use crate::error::AmstError;
use crate::set::{ModelSet, SentenceSet};
use crate::verdict::Exactness;
use crate::view::{subset_order, FiniteView};

/// Default size and co-size bound for countable carriers.
pub const DEFAULT_BOUND: u32 = 6;

/// A carrier together with the finite windows that stand in for its
/// universal (`sentences`, `subsets`) and existential (`witness_*`) ranges.
///
/// On finite carriers both ranges are everything. Iteration follows witness
/// order, so the first hit of any search is the least witness.
pub trait Domain {
    type Set: Clone + Eq + Hash + fmt::Debug;

    fn sentences(&self) -> impl Iterator<Item = u32> + '_;
    fn witness_sentences(&self) -> impl Iterator<Item = u32> + '_;
    fn subsets(&self) -> impl Iterator<Item = Self::Set> + '_;
    fn witness_subsets(&self) -> impl Iterator<Item = Self::Set> + '_;
    /// Supersets of `g` from the existential window, `g` itself included.
    fn witness_supersets(&self, g: Self::Set) -> impl Iterator<Item = Self::Set> + '_;

    fn empty(&self) -> Self::Set;
    fn full(&self) -> Self::Set;
    fn singleton(&self, a: u32) -> Self::Set;
    fn with(&self, g: &Self::Set, a: u32) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    /// `L \ {a}`.
    fn co_singleton(&self, a: u32) -> Self::Set;
    fn contains(&self, g: &Self::Set, a: u32) -> bool;
    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool;
    fn is_disjoint(&self, a: &Self::Set, b: &Self::Set) -> bool;
    /// `g ⊊ L`.
    fn is_proper(&self, g: &Self::Set) -> bool;
    fn is_finite(&self, g: &Self::Set) -> bool;

    fn export(&self, g: &Self::Set) -> SentenceSet;
    fn exactness(&self) -> Exactness;
    fn carrier_size(&self) -> Option<u32>;
}

/// A domain with a satisfaction relation behind it.
pub trait Semantics: Domain {
    fn satisfiable(&self, g: &Self::Set) -> bool;
    fn finitely_satisfiable(&self, g: &Self::Set) -> bool {
        self.unsat_finite_subset(g).is_none()
    }
    /// Some unsatisfiable finite subset of `g`.
    fn unsat_finite_subset(&self, g: &Self::Set) -> Option<Self::Set>;
    /// `g ⊢ a`.
    fn entails(&self, g: &Self::Set, a: u32) -> bool;
}

/// The bare powerset of `{0, .., n-1}` as bitmasks.
#[derive(Clone, Copy, Debug)]
pub struct FiniteDomain {
    pub n: u32,
}

impl FiniteDomain {
    pub fn new(n: u32) -> Self {
        assert!((1..=crate::view::MAX_VIEW_SENTENCES).contains(&n));
        FiniteDomain { n }
    }

    fn mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

impl Domain for FiniteDomain {
    type Set = u64;

    fn sentences(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.n
    }

    fn witness_sentences(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.n
    }

    fn subsets(&self) -> impl Iterator<Item = u64> + '_ {
        subset_order(self.n).iter().copied()
    }

    fn witness_subsets(&self) -> impl Iterator<Item = u64> + '_ {
        subset_order(self.n).iter().copied()
    }

    fn witness_supersets(&self, g: u64) -> impl Iterator<Item = u64> + '_ {
        subset_order(self.n).iter().copied().filter(move |s| s & g == g)
    }

    fn empty(&self) -> u64 {
        0
    }

    fn full(&self) -> u64 {
        self.mask()
    }

    fn singleton(&self, a: u32) -> u64 {
        1 << a
    }

    fn with(&self, g: &u64, a: u32) -> u64 {
        g | 1 << a
    }

    fn union(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }

    fn co_singleton(&self, a: u32) -> u64 {
        self.mask() & !(1 << a)
    }

    fn contains(&self, g: &u64, a: u32) -> bool {
        g >> a & 1 == 1
    }

    fn is_subset(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }

    fn is_disjoint(&self, a: &u64, b: &u64) -> bool {
        a & b == 0
    }

    fn is_proper(&self, g: &u64) -> bool {
        *g != self.mask()
    }

    fn is_finite(&self, _: &u64) -> bool {
        true
    }

    fn export(&self, g: &u64) -> SentenceSet {
        SentenceSet::from_mask(*g)
    }

    fn exactness(&self) -> Exactness {
        Exactness::Exact
    }

    fn carrier_size(&self) -> Option<u32> {
        Some(self.n)
    }
}

/// An amst over a finite carrier, decided through its [`FiniteView`].
#[derive(Clone, Debug)]
pub struct FiniteSpace {
    dom: FiniteDomain,
    view: FiniteView,
}

impl FiniteSpace {
    pub fn from_amst(amst: &Amst) -> Result<Self, AmstError> {
        Ok(Self::from_view(FiniteView::from_amst(amst)?))
    }

    pub fn from_view(view: FiniteView) -> Self {
        FiniteSpace { dom: FiniteDomain::new(view.sentences()), view }
    }

    pub fn view(&self) -> &FiniteView {
        &self.view
    }

    /// The anti-model structure keeping only models outside `Mod(excluded)`.
    pub fn anti(&self, excluded: u64) -> FiniteSpace {
        FiniteSpace::from_view(self.view.restrict(!self.view.mods(excluded)))
    }
}

macro_rules! delegate_domain {
    ($ty:ty, $set:ty, $field:ident) => {
        impl Domain for $ty {
            type Set = $set;

            fn sentences(&self) -> impl Iterator<Item = u32> + '_ {
                self.$field.sentences()
            }
            fn witness_sentences(&self) -> impl Iterator<Item = u32> + '_ {
                self.$field.witness_sentences()
            }
            fn subsets(&self) -> impl Iterator<Item = $set> + '_ {
                self.$field.subsets()
            }
            fn witness_subsets(&self) -> impl Iterator<Item = $set> + '_ {
                self.$field.witness_subsets()
            }
            fn witness_supersets(&self, g: $set) -> impl Iterator<Item = $set> + '_ {
                self.$field.witness_supersets(g)
            }
            fn empty(&self) -> $set {
                self.$field.empty()
            }
            fn full(&self) -> $set {
                self.$field.full()
            }
            fn singleton(&self, a: u32) -> $set {
                self.$field.singleton(a)
            }
            fn with(&self, g: &$set, a: u32) -> $set {
                self.$field.with(g, a)
            }
            fn union(&self, a: &$set, b: &$set) -> $set {
                self.$field.union(a, b)
            }
            fn co_singleton(&self, a: u32) -> $set {
                self.$field.co_singleton(a)
            }
            fn contains(&self, g: &$set, a: u32) -> bool {
                self.$field.contains(g, a)
            }
            fn is_subset(&self, a: &$set, b: &$set) -> bool {
                self.$field.is_subset(a, b)
            }
            fn is_disjoint(&self, a: &$set, b: &$set) -> bool {
                self.$field.is_disjoint(a, b)
            }
            fn is_proper(&self, g: &$set) -> bool {
                self.$field.is_proper(g)
            }
            fn is_finite(&self, g: &$set) -> bool {
                self.$field.is_finite(g)
            }
            fn export(&self, g: &$set) -> SentenceSet {
                self.$field.export(g)
            }
            fn exactness(&self) -> Exactness {
                self.$field.exactness()
            }
            fn carrier_size(&self) -> Option<u32> {
                self.$field.carrier_size()
            }
        }
    };
}

delegate_domain!(FiniteSpace, u64, dom);
delegate_domain!(CountableSpace, SentenceSet, win);

impl Semantics for FiniteSpace {
    fn satisfiable(&self, g: &u64) -> bool {
        self.view.sat(*g)
    }

    fn finitely_satisfiable(&self, g: &u64) -> bool {
        self.view.finsat(*g)
    }

    fn unsat_finite_subset(&self, g: &u64) -> Option<u64> {
        if self.view.finsat(*g) {
            None
        } else {
            self.view.unsat_subset(*g)
        }
    }

    fn entails(&self, g: &u64, a: u32) -> bool {
        self.view.entails(*g, a)
    }
}

/// Finite windows over `N` for a rule with the given shape.
///
/// Sentences outside the rule's constants are interchangeable up to
/// cardinality thresholds and adjacency, so once the windows leave room for
/// every such pattern a search inside them is as good as a search over `N`.
#[derive(Clone, Debug)]
pub struct Windows {
    bound: u32,
    cap: u32,
    forall_sentences: u32,
    exists_sentences: u32,
    forall_sets: Vec<SentenceSet>,
    exists_sets: Vec<SentenceSet>,
}

impl Windows {
    fn new(constants: &[u32], threshold: u32, successor: bool, bound: u32) -> Self {
        let k = threshold.max(1);
        let cap = constants.len() as u32 + k + 2;
        let c = constants.last().map_or(0, |&m| m + 1) + successor as u32;
        let w1 = c + cap + 1 + if successor { k + 2 } else { 0 };
        let w2 = w1 + cap + 1;
        let forall_sets = window_sets(w1, bound as usize, 0);
        let exists_sets = window_sets(w2, cap as usize, 1);
        Windows { bound, cap, forall_sentences: w1, exists_sentences: w2, forall_sets, exists_sets }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }
}

/// Finite subsets of `[0, w)` of size at most `max`, then cofinite sets whose
/// complements are such subsets with at least `min_co` elements.
fn window_sets(w: u32, max: usize, min_co: usize) -> Vec<SentenceSet> {
    let pool: Vec<u32> = (0..w).collect();
    let combos = combinations(&pool, max);
    let mut out: Vec<SentenceSet> = combos.iter().map(|c| SentenceSet::finite(c.iter().copied())).collect();
    out.extend(combos.iter().filter(|c| c.len() >= min_co).map(|c| SentenceSet::cofinite(c.iter().copied())));
    out
}

/// Sub-lists of a sorted pool by size, then lexicographically.
fn combinations(pool: &[u32], max: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<(Vec<u32>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max.min(pool.len()) {
        let mut next = Vec::new();
        for (c, start) in &layer {
            for (i, &x) in pool.iter().enumerate().skip(*start) {
                let mut d = c.clone();
                d.push(x);
                next.push((d, i + 1));
            }
        }
        out.extend(next.iter().map(|(c, _)| c.clone()));
        layer = next;
    }
    out
}

impl Domain for Windows {
    type Set = SentenceSet;

    fn sentences(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.forall_sentences
    }

    fn witness_sentences(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.exists_sentences
    }

    fn subsets(&self) -> impl Iterator<Item = SentenceSet> + '_ {
        self.forall_sets.iter().cloned()
    }

    fn witness_subsets(&self) -> impl Iterator<Item = SentenceSet> + '_ {
        self.exists_sets.iter().cloned()
    }

    fn witness_supersets(&self, g: SentenceSet) -> impl Iterator<Item = SentenceSet> + '_ {
        let out: Vec<SentenceSet> = if g.is_cofinite() {
            // Supersets of N \ F are N \ F' for F' ⊆ F.
            combinations(g.listed(), g.listed().len()).into_iter().map(SentenceSet::cofinite).collect()
        } else {
            let free: Vec<u32> = (0..self.exists_sentences).filter(|&a| !g.contains(a)).collect();
            let combos = combinations(&free, self.cap as usize);
            let mut v: Vec<SentenceSet> = combos.iter().map(|c| g.union(&SentenceSet::finite(c.iter().copied()))).collect();
            v.extend(combos.iter().filter(|c| !c.is_empty()).map(|c| SentenceSet::cofinite(c.iter().copied())));
            v
        };
        out.into_iter()
    }

    fn empty(&self) -> SentenceSet {
        SentenceSet::empty()
    }

    fn full(&self) -> SentenceSet {
        SentenceSet::all()
    }

    fn singleton(&self, a: u32) -> SentenceSet {
        SentenceSet::singleton(a)
    }

    fn with(&self, g: &SentenceSet, a: u32) -> SentenceSet {
        g.with(a)
    }

    fn union(&self, a: &SentenceSet, b: &SentenceSet) -> SentenceSet {
        a.union(b)
    }

    fn co_singleton(&self, a: u32) -> SentenceSet {
        SentenceSet::cofinite([a])
    }

    fn contains(&self, g: &SentenceSet, a: u32) -> bool {
        g.contains(a)
    }

    fn is_subset(&self, a: &SentenceSet, b: &SentenceSet) -> bool {
        a.is_subset(b)
    }

    fn is_disjoint(&self, a: &SentenceSet, b: &SentenceSet) -> bool {
        a.is_disjoint(b)
    }

    fn is_proper(&self, g: &SentenceSet) -> bool {
        !g.is_all()
    }

    fn is_finite(&self, g: &SentenceSet) -> bool {
        g.is_finite()
    }

    fn export(&self, g: &SentenceSet) -> SentenceSet {
        g.clone()
    }

    fn exactness(&self) -> Exactness {
        if self.bound >= self.cap {
            Exactness::Exact
        } else {
            Exactness::Bounded(self.bound)
        }
    }

    fn carrier_size(&self) -> Option<u32> {
        None
    }
}

/// A rule amst over the countable carrier, optionally restricted to a set of
/// models (anti-model structures).
#[derive(Clone, Debug)]
pub struct CountableSpace {
    amst: Amst,
    restriction: ModelSet,
    extra: Vec<u32>,
    constants: Vec<u32>,
    threshold: u32,
    win: Windows,
    sat_memo: RefCell<HashMap<SentenceSet, bool>>,
    fin_memo: RefCell<HashMap<SentenceSet, Option<SentenceSet>>>,
}

impl CountableSpace {
    pub fn new(amst: &Amst, bound: u32) -> Result<Self, AmstError> {
        Self::build(amst, bound, amst.model_domain(), Vec::new())
    }

    fn build(amst: &Amst, bound: u32, restriction: ModelSet, extra: Vec<u32>) -> Result<Self, AmstError> {
        if amst.carrier() != &Carrier::Countable {
            return Err(AmstError::Invalid("countable space over a finite carrier".into()));
        }
        let rule = amst.as_rule().ok_or_else(|| AmstError::Invalid("countable amsts are rule based".into()))?;
        let shape = rule.shape();
        let mut constants: Vec<u32> = shape.constants.iter().copied().collect();
        if shape.uses_model {
            if let ModelCount::Finite(k) = amst.models() {
                constants.extend(0..k);
            }
        }
        constants.extend(restriction.as_set().listed().iter().copied());
        constants.extend(extra.iter().copied());
        constants.sort_unstable();
        constants.dedup();
        let win = Windows::new(&constants, shape.threshold, shape.uses_successor, bound);
        Ok(CountableSpace {
            amst: amst.clone(),
            restriction,
            extra,
            constants,
            threshold: shape.threshold.max(1),
            win,
            sat_memo: RefCell::default(),
            fin_memo: RefCell::default(),
        })
    }

    /// The same relation with models limited to `keep`. Sentences in
    /// `mention` are treated as named constants by the windows.
    pub fn restricted(&self, keep: &ModelSet, mention: &[u32]) -> Self {
        let mut extra = self.extra.clone();
        extra.extend_from_slice(mention);
        Self::build(&self.amst, self.win.bound, self.restriction.intersection(keep), extra).expect("already validated")
    }

    pub fn amst(&self) -> &Amst {
        &self.amst
    }

    pub fn windows(&self) -> &Windows {
        &self.win
    }

    pub fn models(&self) -> &ModelSet {
        &self.restriction
    }

    pub fn constants(&self) -> &[u32] {
        &self.constants
    }

    /// `Mod(g)` within the current model restriction.
    pub fn mod_of(&self, g: &SentenceSet) -> ModelSet {
        self.amst.mod_of(g).expect("countable carrier admits every set").intersection(&self.restriction)
    }

    /// The anti-model structure relative to `excluded`.
    pub fn anti(&self, excluded: &SentenceSet) -> Self {
        let keep = self.restriction.difference(&self.mod_of(excluded));
        let mention: Vec<u32> = excluded.listed().to_vec();
        self.restricted(&keep, &mention)
    }

    fn unsat_subset_uncached(&self, g: &SentenceSet) -> Option<SentenceSet> {
        let k = self.threshold as usize;
        let inside: Vec<u32> = self.constants.iter().copied().filter(|&c| g.contains(c)).collect();
        let is_const = |a: u32| self.constants.binary_search(&a).is_ok();
        let mut reps: Vec<u32> = Vec::new();
        if g.is_finite() {
            reps.extend(g.iter().filter(|&a| !is_const(a)).take(k + 3));
        } else {
            reps.extend((0..).filter(|&a| g.contains(a) && !is_const(a)).take(k + 3));
        }
        let mut candidates: Vec<SentenceSet> = Vec::new();
        // Every finite subset agrees on satisfiability with one that shares
        // its constants and outside size; pairs also carry adjacency.
        for a in combinations(&inside, inside.len()) {
            for j in 0..=reps.len().min(k + 1) {
                if a.len() + j != 2 {
                    candidates.push(SentenceSet::finite(a.iter().copied().chain(reps[..j].iter().copied())));
                }
            }
        }
        let mut pool: Vec<u32> = inside.clone();
        pool.extend(reps.iter().copied());
        for &c in &inside {
            pool.extend([c.wrapping_sub(1), c + 1].into_iter().filter(|&x| x != u32::MAX && g.contains(x)));
        }
        if g.is_finite() {
            let v = g.listed();
            if let Some(w) = v.windows(2).find(|w| w[1] == w[0] + 1 && !is_const(w[0]) && !is_const(w[1])) {
                pool.extend([w[0], w[1]]);
            }
        } else {
            let far = self.constants.last().copied().max(g.max_listed()).map_or(0, |m| m + 2);
            pool.extend([far, far + 1]);
        }
        pool.sort_unstable();
        pool.dedup();
        for (i, &x) in pool.iter().enumerate() {
            for &y in &pool[i + 1..] {
                candidates.push(SentenceSet::finite([x, y]));
            }
        }
        candidates.sort();
        candidates.dedup();
        candidates.into_iter().find(|s| !self.satisfiable(s))
    }
}

impl Semantics for CountableSpace {
    fn satisfiable(&self, g: &SentenceSet) -> bool {
        if let Some(&v) = self.sat_memo.borrow().get(g) {
            return v;
        }
        let v = !self.mod_of(g).is_empty();
        self.sat_memo.borrow_mut().insert(g.clone(), v);
        v
    }

    fn unsat_finite_subset(&self, g: &SentenceSet) -> Option<SentenceSet> {
        if let Some(v) = self.fin_memo.borrow().get(g) {
            return v.clone();
        }
        let v = self.unsat_subset_uncached(g);
        self.fin_memo.borrow_mut().insert(g.clone(), v.clone());
        v
    }

    fn entails(&self, g: &SentenceSet, a: u32) -> bool {
        self.mod_of(g).is_subset(&self.mod_of(&SentenceSet::singleton(a)))
    }
}

/// Either space, chosen by the amst's carrier.
#[derive(Clone, Debug)]
pub enum Space {
    Finite(FiniteSpace),
    Countable(CountableSpace),
}

impl Space {
    pub fn new(amst: &Amst, bound: u32) -> Result<Self, AmstError> {
        match amst.carrier() {
            Carrier::Finite { .. } => Ok(Space::Finite(FiniteSpace::from_amst(amst)?)),
            Carrier::Countable => Ok(Space::Countable(CountableSpace::new(amst, bound)?)),
        }
    }

    pub fn exactness(&self) -> Exactness {
        match self {
            Space::Finite(_) => Exactness::Exact,
            Space::Countable(c) => c.exactness(),
        }
    }
}

/// Runs generic code against whichever space is inside a [`Space`].
#[macro_export]
macro_rules! with_space {
    ($space:expr, $s:ident => $body:expr) => {
        match $space {
            $crate::space::Space::Finite($s) => $body,
            $crate::space::Space::Countable($s) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::RuleExpr;

    fn countable(rule: RuleExpr) -> CountableSpace {
        let a = Amst::rule(Carrier::Countable, ModelCount::Countable, rule).unwrap();
        CountableSpace::new(&a, DEFAULT_BOUND).unwrap()
    }

    #[test]
    fn combinations_in_witness_order() {
        let c = combinations(&[0, 1, 2], 2);
        assert_eq!(c, vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn finite_supersets() {
        let d = FiniteDomain::new(3);
        let v: Vec<u64> = d.witness_supersets(0b010).collect();
        assert_eq!(v, vec![0b010, 0b011, 0b110, 0b111]);
    }

    #[test]
    fn finsat_on_nonempty_rule() {
        // m ⊨ Γ iff Γ ≠ ∅: the empty subset sinks everything.
        let s = countable(RuleExpr::not(RuleExpr::IsEmpty));
        assert_eq!(s.unsat_finite_subset(&SentenceSet::finite([1, 2])), Some(SentenceSet::empty()));
        assert!(s.satisfiable(&SentenceSet::finite([1])));
    }

    #[test]
    fn finsat_finds_successor_pair() {
        let s = countable(RuleExpr::not(RuleExpr::IsSuccessorPair));
        assert_eq!(s.unsat_finite_subset(&SentenceSet::finite([4, 9, 10])), Some(SentenceSet::finite([9, 10])));
        assert_eq!(s.unsat_finite_subset(&SentenceSet::finite([1, 3, 5])), None);
        assert!(s.unsat_finite_subset(&SentenceSet::cofinite([0])).is_some());
    }

    #[test]
    fn finsat_threshold_rule() {
        let s = countable(RuleExpr::not(RuleExpr::EqualsSet(vec![0])));
        assert!(s.finitely_satisfiable(&SentenceSet::cofinite([0])));
        assert!(!s.finitely_satisfiable(&SentenceSet::finite([0, 3])));
    }

    #[test]
    fn countable_finsat_agrees_with_brute_force() {
        let rules = [
            RuleExpr::not(RuleExpr::CardAtLeast(3)),
            RuleExpr::not(RuleExpr::IsSuccessorPair),
            RuleExpr::not(RuleExpr::and(vec![
                RuleExpr::CardAtLeast(1),
                RuleExpr::CardAtMost(1),
                RuleExpr::not(RuleExpr::ContainsSentence(0)),
            ])),
            RuleExpr::or(vec![
                RuleExpr::IsEmpty,
                RuleExpr::and(vec![RuleExpr::IsFinite, RuleExpr::not(RuleExpr::ContainsSentence(0)), RuleExpr::ContainsModel]),
            ]),
        ];
        for r in rules {
            let s = countable(r.clone());
            for g in s.windows().forall_sets.iter().filter(|g| g.is_finite() && g.len().unwrap() <= 4) {
                let brute = (0u64..1 << g.len().unwrap()).all(|m| {
                    let sub = SentenceSet::finite(g.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, x)| x));
                    s.satisfiable(&sub)
                });
                assert_eq!(s.finitely_satisfiable(g), brute, "{r:?} on {g}");
            }
        }
    }

    #[test]
    fn anti_model_restricts() {
        // m ⊨ Γ iff m ∈ Γ: Mod({3}) = {3}, so M_3 drops model 3 only.
        let a = Amst::rule(Carrier::Countable, ModelCount::Countable, RuleExpr::ContainsModel).unwrap();
        let s = CountableSpace::new(&a, DEFAULT_BOUND).unwrap();
        let anti = s.anti(&SentenceSet::singleton(3));
        assert!(!anti.models().contains(3));
        assert!(!anti.satisfiable(&SentenceSet::singleton(3)));
        assert!(anti.satisfiable(&SentenceSet::singleton(4)));
    }
}
