//! Bitmask tables for amsts over finite carriers.

use std::sync::OnceLock;

use crate::amst::{Amst, Relation};
use crate::carrier::ModelCount;
use crate::error::AmstError;
use crate::set::{ModelSet, SentenceSet};

/// Largest carrier a [`FiniteView`] will materialize.
pub const MAX_VIEW_SENTENCES: u32 = 20;

/// A block of models that no satisfaction query can tell apart.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModelClass {
    pub from: u32,
    /// Exclusive end, `None` for an unbounded tail of countably many models.
    pub to: Option<u32>,
}

impl ModelClass {
    fn single(m: u32) -> Self {
        ModelClass { from: m, to: Some(m + 1) }
    }

    fn as_set(&self) -> ModelSet {
        match self.to {
            Some(t) => ModelSet::finite(self.from..t),
            None => ModelSet::from_set(SentenceSet::range(self.from).complement()),
        }
    }
}

/// `mods[mask]` is the set of model classes satisfying the subset `mask`,
/// one bit per class.
#[derive(Debug)]
pub struct FiniteView {
    n: u32,
    mods: Vec<u64>,
    classes: Vec<ModelClass>,
    alive: u64,
    finsat: OnceLock<Vec<u64>>,
}

impl Clone for FiniteView {
    fn clone(&self) -> Self {
        FiniteView { n: self.n, mods: self.mods.clone(), classes: self.classes.clone(), alive: self.alive, finsat: OnceLock::new() }
    }
}

fn class_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl FiniteView {
    pub fn from_amst(amst: &Amst) -> Result<Self, AmstError> {
        let n = amst.carrier().size().ok_or_else(|| AmstError::TooLarge("countable carrier has no finite view".into()))?;
        if n > MAX_VIEW_SENTENCES {
            return Err(AmstError::TooLarge(format!("{n} sentences")));
        }
        let subsets = 1usize << n;
        match amst.relation() {
            Relation::Explicit(mat) => {
                let k = mat.models();
                let mut mods = vec![0u64; subsets];
                for (mask, slot) in mods.iter_mut().enumerate() {
                    for m in 0..k {
                        if mat.get(m, mask as u64) {
                            *slot |= 1 << m;
                        }
                    }
                }
                let classes = (0..k).map(ModelClass::single).collect();
                Ok(Self::assemble(n, mods, classes))
            }
            Relation::Rule(rule) => {
                let classes = rule_classes(amst.models(), n, rule.shape().uses_model);
                let mut mods = vec![0u64; subsets];
                for (mask, slot) in mods.iter_mut().enumerate() {
                    let g = SentenceSet::from_mask(mask as u64);
                    for (i, c) in classes.iter().enumerate() {
                        // Every model in a class agrees on membership in g.
                        if rule.eval(&g, g.contains(c.from), Some(n)) {
                            *slot |= 1 << i;
                        }
                    }
                }
                Ok(Self::assemble(n, mods, classes))
            }
        }
    }

    /// The explicit amst with the given enumeration index, without building an [`Amst`].
    pub fn from_index(models: u32, n: u32, index: u64) -> Self {
        assert!((models as u64) << n <= 64, "index does not fit");
        let subsets = 1usize << n;
        let mut mods = vec![0u64; subsets];
        for m in 0..models as usize {
            for (mask, slot) in mods.iter_mut().enumerate() {
                if index >> ((m << n) | mask) & 1 == 1 {
                    *slot |= 1 << m;
                }
            }
        }
        Self::assemble(n, mods, (0..models).map(ModelClass::single).collect())
    }

    /// Builds a view straight from a `Mod` table over `classes` single models.
    pub fn from_mods(n: u32, models: u32, mods: Vec<u64>) -> Self {
        assert_eq!(mods.len(), 1usize << n);
        Self::assemble(n, mods, (0..models).map(ModelClass::single).collect())
    }

    fn assemble(n: u32, mods: Vec<u64>, classes: Vec<ModelClass>) -> Self {
        let alive = class_bits(classes.len());
        FiniteView { n, mods, classes, alive, finsat: OnceLock::new() }
    }

    /// The same relation restricted to the model classes in `keep`.
    pub fn restrict(&self, keep: u64) -> Self {
        let keep = keep & self.alive;
        FiniteView {
            n: self.n,
            mods: self.mods.iter().map(|m| m & keep).collect(),
            classes: self.classes.clone(),
            alive: keep,
            finsat: OnceLock::new(),
        }
    }

    pub fn sentences(&self) -> u32 {
        self.n
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Bits of the surviving model classes.
    pub fn alive(&self) -> u64 {
        self.alive
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ModelClass] {
        &self.classes
    }

    pub fn mods(&self, mask: u64) -> u64 {
        self.mods[mask as usize]
    }

    pub fn table(&self) -> &[u64] {
        &self.mods
    }

    pub fn sat(&self, mask: u64) -> bool {
        self.mods[mask as usize] != 0
    }

    /// Every subset of `mask` is satisfiable; on a finite carrier every
    /// subset is finite.
    pub fn finsat(&self, mask: u64) -> bool {
        let table = self.finsat.get_or_init(|| self.finsat_table());
        table[mask as usize / 64] >> (mask % 64) & 1 == 1
    }

    fn finsat_table(&self) -> Vec<u64> {
        let subsets = 1usize << self.n;
        let mut bits = vec![0u64; subsets.div_ceil(64)];
        let get = |bits: &Vec<u64>, i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
        for g in 0..subsets {
            let mut ok = self.mods[g] != 0;
            let mut rest = g;
            while ok && rest != 0 {
                let low = rest & rest.wrapping_neg();
                ok = get(&bits, g ^ low);
                rest ^= low;
            }
            if ok {
                bits[g / 64] |= 1 << (g % 64);
            }
        }
        bits
    }

    /// Least unsatisfiable subset of `mask` in witness order.
    pub fn unsat_subset(&self, mask: u64) -> Option<u64> {
        subset_order(self.n).iter().copied().find(|&s| s & !mask == 0 && !self.sat(s))
    }

    pub fn entails(&self, g: u64, a: u32) -> bool {
        self.mods[g as usize] & !self.mods[1usize << a] == 0
    }

    pub fn closure(&self, g: u64) -> u64 {
        (0..self.n).filter(|&a| self.entails(g, a)).fold(0, |acc, a| acc | 1 << a)
    }

    /// Expands a class mask into the models it stands for.
    pub fn model_set(&self, class_mask: u64) -> ModelSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, _)| class_mask >> i & 1 == 1)
            .fold(ModelSet::empty(), |acc, (_, c)| acc.union(&c.as_set()))
    }

    /// A representative model index for each class in `class_mask`.
    pub fn representatives(&self, class_mask: u64) -> Vec<u32> {
        self.classes.iter().enumerate().filter(|(i, _)| class_mask >> i & 1 == 1).map(|(_, c)| c.from).collect()
    }
}

fn rule_classes(models: ModelCount, n: u32, uses_model: bool) -> Vec<ModelClass> {
    let (limit, to) = match models {
        ModelCount::Finite(k) => (k, Some(k)),
        ModelCount::Countable => (u32::MAX, None),
    };
    if !uses_model {
        return vec![ModelClass { from: 0, to }];
    }
    let mut classes: Vec<ModelClass> = (0..n.min(limit)).map(ModelClass::single).collect();
    if limit > n {
        classes.push(ModelClass { from: n, to });
    }
    classes
}

/// All subsets of `{0, .., n-1}` sorted by size and then lexicographically.
pub fn subset_order(n: u32) -> &'static [u64] {
    static CACHE: [OnceLock<Vec<u64>>; (MAX_VIEW_SENTENCES + 1) as usize] = [const { OnceLock::new() }; 21];
    CACHE[n as usize].get_or_init(|| {
        let mut v: Vec<u64> = (0..1u64 << n).collect();
        v.sort_by(|a, b| {
            a.count_ones().cmp(&b.count_ones()).then_with(|| {
                // Lexicographic on sorted element lists: the smallest element
                // where the sets differ belongs to the lesser set.
                let diff = a ^ b;
                if diff == 0 {
                    std::cmp::Ordering::Equal
                } else if a >> diff.trailing_zeros() & 1 == 1 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
        });
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;
    use crate::rule::RuleExpr;

    #[test]
    fn order_matches_sentence_set_order() {
        for n in 0..6 {
            let order = subset_order(n);
            let sets: Vec<SentenceSet> = order.iter().map(|&m| SentenceSet::from_mask(m)).collect();
            let mut sorted = sets.clone();
            sorted.sort();
            assert_eq!(sets, sorted);
        }
    }

    #[test]
    fn finsat_table_matches_brute_force() {
        for idx in (0..1u64 << 16).step_by(97) {
            let v = FiniteView::from_index(2, 3, idx);
            for g in 0..8u64 {
                let brute = (0..8u64).filter(|s| s & !g == 0).all(|s| v.sat(s));
                assert_eq!(v.finsat(g), brute, "index {idx} set {g}");
            }
        }
    }

    #[test]
    fn rule_view_matches_holds() {
        let rule = RuleExpr::or(vec![RuleExpr::ContainsModel, RuleExpr::CardAtLeast(3)]);
        let a = Amst::rule(Carrier::finite(4), ModelCount::Finite(3), rule).unwrap();
        let v = FiniteView::from_amst(&a).unwrap();
        for mask in 0..16u64 {
            let g = SentenceSet::from_mask(mask);
            assert_eq!(v.model_set(v.mods(mask)), a.mod_of(&g).unwrap(), "{g}");
        }
    }

    #[test]
    fn restriction_drops_models() {
        let v = FiniteView::from_index(2, 1, 0b1111);
        let r = v.restrict(0b10);
        assert_eq!(r.mods(0), 0b10);
        assert_eq!(r.model_set(r.alive()), ModelSet::finite([1]));
    }
}
