//! Finite and cofinite subsets of a sentence carrier.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of the carrier, stored either as its elements or as the
/// complement of a finite set.
///
/// `elems` is always sorted and duplicate free. For a cofinite set it lists
/// the excluded sentences, so `N` itself is `cofinite` with no elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SentenceSet {
    cofinite: bool,
    elems: Vec<u32>,
}

/// Cardinality class of a [`SentenceSet`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CardClass {
    Finite(usize),
    Cofinite(usize),
}

fn normalize(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

fn merge_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn merge_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn merge_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            return false;
        }
    }
    true
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    merge_intersection(a, b).is_empty()
}

impl SentenceSet {
    pub fn empty() -> Self {
        SentenceSet { cofinite: false, elems: Vec::new() }
    }

    /// The whole countable carrier `N`.
    pub fn all() -> Self {
        SentenceSet { cofinite: true, elems: Vec::new() }
    }

    pub fn finite<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        SentenceSet { cofinite: false, elems: normalize(elems.into_iter().collect()) }
    }

    /// `N` minus the given sentences.
    pub fn cofinite<I: IntoIterator<Item = u32>>(excluded: I) -> Self {
        SentenceSet { cofinite: true, elems: normalize(excluded.into_iter().collect()) }
    }

    pub fn singleton(a: u32) -> Self {
        SentenceSet { cofinite: false, elems: vec![a] }
    }

    /// `{0, .., n-1}`.
    pub fn range(n: u32) -> Self {
        SentenceSet { cofinite: false, elems: (0..n).collect() }
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut elems = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            elems.push(m.trailing_zeros());
            m &= m - 1;
        }
        SentenceSet { cofinite: false, elems }
    }

    /// Bitmask of a finite set whose elements are all below 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.cofinite || self.elems.last().is_some_and(|&x| x >= 64) {
            return None;
        }
        Some(self.elems.iter().fold(0u64, |m, &x| m | (1u64 << x)))
    }

    pub fn is_finite(&self) -> bool {
        !self.cofinite
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.elems.is_empty()
    }

    /// True for `N` itself.
    pub fn is_all(&self) -> bool {
        self.cofinite && self.elems.is_empty()
    }

    /// Members of a finite set, or the excluded sentences of a cofinite one.
    pub fn listed(&self) -> &[u32] {
        &self.elems
    }

    pub fn card_class(&self) -> CardClass {
        if self.cofinite {
            CardClass::Cofinite(self.elems.len())
        } else {
            CardClass::Finite(self.elems.len())
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        (!self.cofinite).then_some(self.elems.len())
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elems.binary_search(&a).is_ok() != self.cofinite
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<u32> {
        if self.cofinite {
            (0..).find(|&a| self.contains(a))
        } else {
            self.elems.first().copied()
        }
    }

    pub fn max_listed(&self) -> Option<u32> {
        self.elems.last().copied()
    }

    /// Iterates the members of a finite set.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        debug_assert!(!self.cofinite, "iterating a cofinite set");
        self.elems.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => SentenceSet { cofinite: false, elems: merge_union(&self.elems, &other.elems) },
            (true, true) => SentenceSet { cofinite: true, elems: merge_intersection(&self.elems, &other.elems) },
            (true, false) => SentenceSet { cofinite: true, elems: merge_difference(&self.elems, &other.elems) },
            (false, true) => SentenceSet { cofinite: true, elems: merge_difference(&other.elems, &self.elems) },
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => SentenceSet { cofinite: false, elems: merge_intersection(&self.elems, &other.elems) },
            (true, true) => SentenceSet { cofinite: true, elems: merge_union(&self.elems, &other.elems) },
            (true, false) => SentenceSet { cofinite: false, elems: merge_difference(&other.elems, &self.elems) },
            (false, true) => SentenceSet { cofinite: false, elems: merge_difference(&self.elems, &other.elems) },
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    /// Complement within `N`.
    pub fn complement(&self) -> Self {
        SentenceSet { cofinite: !self.cofinite, elems: self.elems.clone() }
    }

    /// Complement within a finite carrier `{0, .., n-1}`. The input must be finite.
    pub fn complement_in(&self, n: u32) -> Self {
        assert!(!self.cofinite, "cofinite set on a finite carrier");
        SentenceSet { cofinite: false, elems: merge_difference(&(0..n).collect::<Vec<_>>(), &self.elems) }
    }

    pub fn with(&self, a: u32) -> Self {
        self.union(&SentenceSet::singleton(a))
    }

    pub fn without(&self, a: u32) -> Self {
        self.difference(&SentenceSet::singleton(a))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        match (self.cofinite, other.cofinite) {
            (false, false) => is_sorted_subset(&self.elems, &other.elems),
            (false, true) => disjoint(&self.elems, &other.elems),
            (true, false) => false,
            (true, true) => is_sorted_subset(&other.elems, &self.elems),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }
}

impl Ord for SentenceSet {
    /// Witness order: finite sets by size then lexicographically, then
    /// cofinite sets by size of the complement then its lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cofinite.cmp(&other.cofinite).then(self.elems.len().cmp(&other.elems.len())).then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for SentenceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SentenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            write!(f, "{{")?;
            for (i, x) in self.elems.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")
        };
        if self.cofinite {
            if self.elems.is_empty() {
                return write!(f, "N");
            }
            write!(f, "N\\")?;
        }
        body(f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SetRepr {
    Finite(Vec<u32>),
    Cofinite { cofinite: Vec<u32> },
}

impl Serialize for SentenceSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.cofinite {
            SetRepr::Cofinite { cofinite: self.elems.clone() }.serialize(s)
        } else {
            SetRepr::Finite(self.elems.clone()).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for SentenceSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match SetRepr::deserialize(d)? {
            SetRepr::Finite(v) => SentenceSet::finite(v),
            SetRepr::Cofinite { cofinite } => SentenceSet::cofinite(cofinite),
        })
    }
}

/// A set of model indices. Models are natural numbers, so the same finite or
/// cofinite representation applies.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelSet(SentenceSet);

impl ModelSet {
    pub fn empty() -> Self {
        ModelSet(SentenceSet::empty())
    }

    pub fn all() -> Self {
        ModelSet(SentenceSet::all())
    }

    pub fn finite<I: IntoIterator<Item = u32>>(models: I) -> Self {
        ModelSet(SentenceSet::finite(models))
    }

    pub fn range(k: u32) -> Self {
        ModelSet(SentenceSet::range(k))
    }

    pub fn from_set(set: SentenceSet) -> Self {
        ModelSet(set)
    }

    pub fn as_set(&self) -> &SentenceSet {
        &self.0
    }

    pub fn contains(&self, m: u32) -> bool {
        self.0.contains(m)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least model index in the set.
    pub fn first(&self) -> Option<u32> {
        self.0.first()
    }

    pub fn len(&self) -> Option<usize> {
        self.0.len()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ModelSet(self.0.intersection(&other.0))
    }

    pub fn union(&self, other: &Self) -> Self {
        ModelSet(self.0.union(&other.0))
    }

    pub fn difference(&self, other: &Self) -> Self {
        ModelSet(self.0.difference(&other.0))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
