//! Syntactic explosion on explicit logical structures against the -sat
//! principles of their canonical amsts.

use amst_core::logstr::{canonical_amst, syntactic, ExplicitLogicalStructure};
use amst_core::principles::{check, Form, Mode, PrincipleId};
use amst_core::FiniteSpace;
use serde::Serialize;

use crate::enumerate::sample_indices;
use crate::parallel::map_reduce;

const FORMS: [Form; 4] = [Form::G, Form::S, Form::Sp, Form::Pf];

#[derive(Clone, Debug, Default, Serialize)]
pub struct BridgeReport {
    pub sentences: u32,
    pub checked: u64,
    /// Per form: structures where the two sides disagree.
    pub failures: [u64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<u64>,
}

impl BridgeReport {
    pub fn is_clean(&self) -> bool {
        self.failures.iter().all(|&f| f == 0)
    }

    fn merge(mut self, o: BridgeReport) -> BridgeReport {
        self.sentences = self.sentences.max(o.sentences);
        self.checked += o.checked;
        for i in 0..4 {
            self.failures[i] += o.failures[i];
        }
        self.first_failure = match (self.first_failure, o.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Per form, whether the syntactic principle on `s` matches the -sat
/// principle on its canonical amst.
pub fn bridge_agrees(s: &ExplicitLogicalStructure) -> [bool; 4] {
    let space = FiniteSpace::from_amst(&canonical_amst(s).expect("small structure")).expect("explicit amst");
    FORMS.map(|f| syntactic(s, f).is_verified() == check(&space, PrincipleId::semantic(f, Mode::Sat), None).is_verified())
}

fn run(n: u32, indices: &[u64], threads: usize) -> BridgeReport {
    map_reduce(
        indices.len(),
        threads,
        |range| {
            let mut r = BridgeReport { sentences: n, ..Default::default() };
            for pos in range {
                let idx = indices[pos];
                let s = ExplicitLogicalStructure::from_index(n, idx).expect("table fits");
                r.checked += 1;
                let mut bad = false;
                for (i, ok) in bridge_agrees(&s).into_iter().enumerate() {
                    if !ok {
                        r.failures[i] += 1;
                        bad = true;
                    }
                }
                if bad {
                    r.first_failure = Some(r.first_failure.map_or(idx, |f| f.min(idx)));
                }
            }
            r
        },
        BridgeReport::merge,
    )
}

/// Every structure over `n` sentences.
pub fn bridge_exhaustive(n: u32, threads: usize) -> BridgeReport {
    let total = 1u64 << ExplicitLogicalStructure::table_bits(n);
    let indices: Vec<u64> = (0..total).collect();
    run(n, &indices, threads)
}

/// `count` seeded random structures over `n` sentences.
pub fn bridge_sampled(n: u32, count: u64, seed: u64, threads: usize) -> BridgeReport {
    let indices = sample_indices(ExplicitLogicalStructure::table_bits(n) as u64, count, seed, 0.5);
    run(n, &indices, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_structures_on_two_sentences() {
        let r = bridge_exhaustive(2, 2);
        assert_eq!(r.checked, 256);
        assert!(r.is_clean(), "{r:?}");
    }

    #[test]
    fn sampled_three_is_seeded() {
        let a = bridge_sampled(3, 200, 5, 1);
        let b = bridge_sampled(3, 200, 5, 3);
        assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());
        assert!(a.is_clean());
    }
}
