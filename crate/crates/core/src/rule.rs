//! Satisfaction relations given by boolean expressions over set predicates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::set::SentenceSet;

/// `m ⊨ Γ` iff the expression evaluates to true on `(m, Γ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RuleExpr {
    #[serde(rename = "and")]
    And(Vec<RuleExpr>),
    #[serde(rename = "or")]
    Or(Vec<RuleExpr>),
    #[serde(rename = "not")]
    Not(Box<RuleExpr>),
    IsEmpty,
    CardAtLeast(u32),
    CardAtMost(u32),
    IsFinite,
    ContainsSentence(u32),
    /// The evaluating model's index, read as a sentence, belongs to `Γ`.
    ContainsModel,
    EqualsSet(Vec<u32>),
    /// `Γ = L \ {n}` for some `n`.
    IsComplementOfSingleton,
    /// `Γ = {n, n+1}` for some `n`.
    IsSuccessorPair,
}

/// Shape facts about a rule that bound how far a search must look.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleShape {
    /// Sentences mentioned by name.
    pub constants: BTreeSet<u32>,
    /// Largest cardinality the rule can tell apart from larger ones.
    pub threshold: u32,
    pub uses_model: bool,
    pub uses_successor: bool,
}

impl RuleExpr {
    pub fn and(parts: Vec<RuleExpr>) -> Self {
        RuleExpr::And(parts)
    }

    pub fn or(parts: Vec<RuleExpr>) -> Self {
        RuleExpr::Or(parts)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: RuleExpr) -> Self {
        RuleExpr::Not(Box::new(inner))
    }

    /// Evaluates the rule on `Γ`. `model_in` says whether the evaluating
    /// model belongs to `Γ`; `carrier` is `Some(n)` on a finite carrier.
    pub fn eval(&self, g: &SentenceSet, model_in: bool, carrier: Option<u32>) -> bool {
        match self {
            RuleExpr::And(v) => v.iter().all(|e| e.eval(g, model_in, carrier)),
            RuleExpr::Or(v) => v.iter().any(|e| e.eval(g, model_in, carrier)),
            RuleExpr::Not(e) => !e.eval(g, model_in, carrier),
            RuleExpr::IsEmpty => g.is_empty(),
            RuleExpr::CardAtLeast(k) => g.len().is_none_or(|n| n >= *k as usize),
            RuleExpr::CardAtMost(k) => g.len().is_some_and(|n| n <= *k as usize),
            RuleExpr::IsFinite => g.is_finite(),
            RuleExpr::ContainsSentence(e) => g.contains(*e),
            RuleExpr::ContainsModel => model_in,
            RuleExpr::EqualsSet(s) => g.is_finite() && g.listed() == SentenceSet::finite(s.iter().copied()).listed(),
            RuleExpr::IsComplementOfSingleton => match carrier {
                Some(n) => g.len() == Some(n as usize - 1),
                None => g.is_cofinite() && g.listed().len() == 1,
            },
            RuleExpr::IsSuccessorPair => g.len() == Some(2) && g.listed()[1] == g.listed()[0] + 1,
        }
    }

    pub fn shape(&self) -> RuleShape {
        let mut shape = RuleShape { constants: BTreeSet::new(), threshold: 0, uses_model: false, uses_successor: false };
        self.collect(&mut shape);
        shape
    }

    fn collect(&self, s: &mut RuleShape) {
        let mut bump = |k: u32| s.threshold = s.threshold.max(k);
        match self {
            RuleExpr::And(v) | RuleExpr::Or(v) => v.iter().for_each(|e| e.collect(s)),
            RuleExpr::Not(e) => e.collect(s),
            RuleExpr::IsEmpty | RuleExpr::IsFinite => bump(1),
            RuleExpr::CardAtLeast(k) => bump(*k),
            RuleExpr::CardAtMost(k) => bump(k + 1),
            RuleExpr::ContainsSentence(e) => {
                bump(1);
                s.constants.insert(*e);
            }
            RuleExpr::ContainsModel => {
                bump(1);
                s.uses_model = true;
            }
            RuleExpr::EqualsSet(v) => {
                bump(v.len() as u32 + 1);
                s.constants.extend(v.iter().copied());
            }
            RuleExpr::IsComplementOfSingleton => bump(2),
            RuleExpr::IsSuccessorPair => {
                bump(3);
                s.uses_successor = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_on_countable_sets() {
        let cof = SentenceSet::cofinite([4]);
        let fin = SentenceSet::finite([3, 4]);
        assert!(RuleExpr::IsComplementOfSingleton.eval(&cof, false, None));
        assert!(!RuleExpr::IsComplementOfSingleton.eval(&fin, false, None));
        assert!(RuleExpr::IsSuccessorPair.eval(&fin, false, None));
        assert!(!RuleExpr::IsSuccessorPair.eval(&SentenceSet::finite([3, 5]), false, None));
        assert!(RuleExpr::CardAtLeast(100).eval(&cof, false, None));
        assert!(!RuleExpr::CardAtMost(100).eval(&cof, false, None));
        assert!(!RuleExpr::IsFinite.eval(&cof, false, None));
        assert!(RuleExpr::EqualsSet(vec![4, 3]).eval(&fin, false, None));
    }

    #[test]
    fn complement_of_singleton_on_finite_carrier() {
        let g = SentenceSet::finite([0, 2]);
        assert!(RuleExpr::IsComplementOfSingleton.eval(&g, false, Some(3)));
        assert!(!RuleExpr::IsComplementOfSingleton.eval(&g, false, Some(4)));
    }

    #[test]
    fn json_shape() {
        let r = RuleExpr::not(RuleExpr::and(vec![RuleExpr::CardAtLeast(1), RuleExpr::ContainsModel]));
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"not":{"and":[{"CardAtLeast":1},"ContainsModel"]}}"#);
        assert_eq!(serde_json::from_str::<RuleExpr>(&j).unwrap(), r);
    }

    #[test]
    fn shape_collects_constants_and_threshold() {
        let r = RuleExpr::or(vec![RuleExpr::EqualsSet(vec![0, 5]), RuleExpr::CardAtMost(1), RuleExpr::ContainsSentence(7)]);
        let s = r.shape();
        assert_eq!(s.constants.into_iter().collect::<Vec<_>>(), [0, 5, 7]);
        assert_eq!(s.threshold, 3);
        assert!(!s.uses_model);
    }
}
