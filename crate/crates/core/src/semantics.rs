//! Satisfiability, finite satisfiability, normality and compactness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amst::Amst;
use crate::error::AmstError;
use crate::set::{ModelSet, SentenceSet};
use crate::space::{CountableSpace, Domain, Semantics, Space, DEFAULT_BOUND};
use crate::verdict::{BoundedVerdict, Checked, Exactness, Unmet, Witness};
use crate::view::{subset_order, FiniteView};

/// How compactness is read: only "finitely satisfiable implies satisfiable",
/// or the literal two-sided equivalence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    #[default]
    Fwd,
    Iff,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Fwd => "fwd",
            Reading::Iff => "iff",
        })
    }
}

impl FromStr for Reading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fwd" => Ok(Reading::Fwd),
            "iff" => Ok(Reading::Iff),
            other => Err(format!("unknown compactness reading {other:?}")),
        }
    }
}

/// Verdict for a universally quantified property: a counterexample found in
/// any window is genuine, but a clean sweep only proves something when the
/// windows are exact.
pub fn forall_verdict(exactness: Exactness, failure: Option<Witness>) -> BoundedVerdict {
    match failure {
        Some(w) => BoundedVerdict::Refuted(w),
        None => exactness.settle(Ok(())),
    }
}

fn space(amst: &Amst, bound: Option<u32>) -> Result<Space, AmstError> {
    Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))
}

pub fn is_satisfiable(amst: &Amst, g: &SentenceSet) -> Result<bool, AmstError> {
    amst.is_satisfiable(g)
}

pub fn is_finitely_satisfiable(amst: &Amst, g: &SentenceSet, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    // Validates representability before any search.
    amst.mod_of(g)?;
    Ok(match space(amst, bound)? {
        Space::Finite(s) => {
            let mask = g.to_mask().expect("finite carrier set");
            finsat_verdict(s.unsat_finite_subset(&mask).map(SentenceSet::from_mask))
        }
        Space::Countable(s) => finsat_verdict(s.unsat_finite_subset(g)),
    })
}

fn finsat_verdict(unsat: Option<SentenceSet>) -> BoundedVerdict {
    match unsat {
        Some(set) => BoundedVerdict::Refuted(Witness::Set { set }),
        None => BoundedVerdict::Verified,
    }
}

pub fn is_normal(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    Ok(normal_space(&space(amst, bound)?))
}

pub fn is_compact(amst: &Amst, reading: Reading, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    let s = space(amst, bound)?;
    Ok(crate::with_space!(&s, x => compact_in(x, reading)))
}

pub fn normal_space(s: &Space) -> BoundedVerdict {
    match s {
        Space::Finite(f) => normal_view(f.view()),
        Space::Countable(c) => normal_countable(c),
    }
}

/// `m ⊨ Γ` iff `m ⊨ {α}` for every `α ∈ Γ`, including `Γ = ∅`.
pub fn normal_view(v: &FiniteView) -> BoundedVerdict {
    for &g in subset_order(v.sentences()) {
        let meet = (0..v.sentences()).filter(|a| g >> a & 1 == 1).fold(v.alive(), |acc, a| acc & v.mods(1 << a));
        let diff = meet ^ v.mods(g);
        if diff != 0 {
            let model = v.representatives(diff & diff.wrapping_neg())[0];
            return BoundedVerdict::Refuted(Witness::ModelSet { model, set: SentenceSet::from_mask(g) });
        }
    }
    BoundedVerdict::Verified
}

/// Checks finite sets in the window; cofinite sets would need an infinite
/// intersection, so a clean sweep stays unknown.
fn normal_countable(s: &CountableSpace) -> BoundedVerdict {
    for g in s.subsets().filter(|g| g.is_finite()) {
        let meet = g.iter().fold(s.models().clone(), |acc, a| acc.intersection(&s.mod_of(&SentenceSet::singleton(a))));
        let m = s.mod_of(&g);
        let diff = meet.difference(&m).union(&m.difference(&meet));
        if let Some(model) = diff.first() {
            return BoundedVerdict::Refuted(Witness::ModelSet { model, set: g });
        }
    }
    BoundedVerdict::UnknownAtBound(s.windows().cap())
}

pub fn compact_in<S: Semantics>(s: &S, reading: Reading) -> BoundedVerdict {
    let failure = s.subsets().find(|g| {
        let sat = s.satisfiable(g);
        let fin = s.finitely_satisfiable(g);
        (fin && !sat) || (reading == Reading::Iff && sat && !fin)
    });
    forall_verdict(s.exactness(), failure.map(|g| Witness::Set { set: s.export(&g) }))
}

/// The Mod theorem for normal amsts: meets over singletons, antitonicity,
/// and the union and intersection laws.
pub fn verify_mod_properties(amst: &Amst, bound: Option<u32>) -> Result<Checked, AmstError> {
    Ok(mod_properties_space(&space(amst, bound)?))
}

pub fn mod_properties_space(s: &Space) -> Checked {
    if !normal_space(s).is_verified() {
        return Err(Unmet::new("normal"));
    }
    match s {
        Space::Finite(f) => Ok(mod_properties_view(f.view())),
        Space::Countable(c) => Ok(mod_properties_countable(c)),
    }
}

fn mod_properties_view(v: &FiniteView) -> BoundedVerdict {
    let n = v.sentences();
    let all = (1u64 << n) - 1;
    let fail = |first: u64, second: u64| {
        BoundedVerdict::Refuted(Witness::Pair { first: SentenceSet::from_mask(first), second: SentenceSet::from_mask(second) })
    };
    // Clause (i), computed model by model.
    for g in 0..=all {
        for (i, m) in v.representatives(v.alive()).into_iter().enumerate() {
            let _ = m;
            let bit = 1u64 << i;
            let every = (0..n).filter(|a| g >> a & 1 == 1).all(|a| v.mods(1 << a) & bit != 0);
            if v.alive() & bit != 0 && (v.mods(g) & bit != 0) != every {
                return fail(g, g);
            }
        }
    }
    // Clause (ii): one-element steps generate the whole inclusion order.
    for g in 0..=all {
        for a in 0..n {
            if g >> a & 1 == 1 && v.mods(g) & !v.mods(g & !(1 << a)) != 0 {
                return fail(g & !(1 << a), g);
            }
        }
    }
    // Clause (iii) over pairs; large carriers use singleton partners.
    let partners: Vec<u64> = if n <= 8 { (0..=all).collect() } else { (0..n).map(|a| 1 << a).collect() };
    for g in 0..=all {
        for &h in &partners {
            if v.mods(g | h) != v.mods(g) & v.mods(h) || (v.mods(g) | v.mods(h)) & !v.mods(g & h) != 0 {
                return fail(g, h);
            }
        }
    }
    BoundedVerdict::Verified
}

fn mod_properties_countable(s: &CountableSpace) -> BoundedVerdict {
    let sets: Vec<SentenceSet> = s.subsets().take(64).collect();
    let fail =
        |first: &SentenceSet, second: &SentenceSet| BoundedVerdict::Refuted(Witness::Pair { first: first.clone(), second: second.clone() });
    for g in &sets {
        for h in &sets {
            let (mg, mh) = (s.mod_of(g), s.mod_of(h));
            if s.mod_of(&g.union(h)) != mg.intersection(&mh) || !mg.union(&mh).is_subset(&s.mod_of(&g.intersection(h))) {
                return fail(g, h);
            }
            if g.is_subset(h) && !mh.is_subset(&mg) {
                return fail(g, h);
            }
        }
    }
    BoundedVerdict::UnknownAtBound(s.windows().cap())
}

/// `Mod(Γ)` as computed through a space, for reporting.
pub fn models_of(s: &Space, g: &SentenceSet) -> ModelSet {
    match s {
        Space::Finite(f) => f.view().model_set(f.view().mods(g.to_mask().expect("finite carrier set"))),
        Space::Countable(c) => c.mod_of(g),
    }
}
