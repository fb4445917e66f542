//! Counterexample mining: the first amst where one principle holds and
//! another fails.

use amst_core::principles::PrincipleId;
use amst_core::Amst;

use crate::enumerate::{EnumerationSpace, Symmetry};
use crate::error::LabError;
use crate::eval::{holds, node_bits, space_at};

/// First amst of `space`, in enumeration order, with `from` verified and
/// `to` refuted.
pub fn mine_counterexample(from: PrincipleId, to: PrincipleId, space: &EnumerationSpace, budget: u64) -> Result<Option<Amst>, LabError> {
    let source = space.source(budget)?;
    let sym = space.canonicalize.then(|| Symmetry::new(space.models, space.sentences));
    let (models, n) = (space.models, space.sentences);
    let hit = (0..source.len()).map(|p| source.get(p)).filter(|&i| sym.as_ref().is_none_or(|s| s.is_canonical(i))).find(|&i| {
        let bits = node_bits(&space_at(models, n, i));
        holds(bits, from) && !holds(bits, to)
    });
    Ok(hit.map(|i| Amst::from_index(models, n, i).expect("validated size")))
}

#[derive(Clone, Debug)]
pub struct Mined {
    pub space: EnumerationSpace,
    pub amst: Amst,
}

/// Bounds for a search over several sizes.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max_models: u32,
    pub max_sentences: u32,
    pub budget: u64,
    /// Sample size for spaces over the budget.
    pub samples: u64,
    pub seed: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_models: 3, max_sentences: 4, budget: crate::DEFAULT_BIT_BUDGET, samples: 20_000, seed: 0 }
    }
}

/// Tries sizes from the smallest matrix up, exhaustively within the budget
/// and by seeded sampling beyond it.
pub fn mine_any(from: PrincipleId, to: PrincipleId, limits: &SearchLimits) -> Result<Option<Mined>, LabError> {
    let mut sizes: Vec<(u32, u32)> = (1..=limits.max_models).flat_map(|m| (1..=limits.max_sentences).map(move |n| (m, n))).collect();
    sizes.sort_by_key(|&(m, n)| ((m as u64) << n, n));
    for (m, n) in sizes {
        let space = if (m as u64) << n <= limits.budget {
            EnumerationSpace::exhaustive(m, n)
        } else {
            EnumerationSpace::random(m, n, limits.samples, limits.seed)
        };
        if let Some(amst) = mine_counterexample(from, to, &space, limits.budget)? {
            return Ok(Some(Mined { space, amst }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use amst_core::principles::profile;
    use PrincipleId::*;

    // With three sentences every proper Γ ∪ {α} has at most two elements,
    // so sECQ-sat already yields the gECQ-sat pair.
    #[test]
    fn secq_without_gecq_needs_four_sentences() {
        assert!(mine_counterexample(SecqSat, GecqSat, &EnumerationSpace::exhaustive(2, 3), 16).unwrap().is_none());
        let a = mine_counterexample(SecqSat, GecqSat, &EnumerationSpace::exhaustive(1, 4), 16).unwrap().unwrap();
        let p = profile(&a, None).unwrap();
        assert!(p.holds(SecqSat) && p.verdict(GecqSat).is_refuted());
    }

    #[test]
    fn arrows_have_no_witness() {
        for m in 1..=2 {
            for n in 1..=3 {
                let s = EnumerationSpace::exhaustive(m, n);
                assert!(mine_counterexample(SpecqSat, GecqSat, &s, 16).unwrap().is_none());
            }
        }
    }

    #[test]
    fn the_first_witness_is_deterministic() {
        let s = EnumerationSpace::exhaustive(2, 3);
        let a = mine_counterexample(GecqFinsat, PfecqFinsat, &s, 16).unwrap().unwrap();
        let b = mine_counterexample(GecqFinsat, PfecqFinsat, &s, 16).unwrap().unwrap();
        assert_eq!(a.index(), b.index());
    }

    #[test]
    fn search_prefers_small_matrices() {
        let m = mine_any(GecqFinsat, PfecqFinsat, &SearchLimits::default()).unwrap().unwrap();
        assert!(m.space.bits() <= 8, "{:?}", m.space);
    }
}
