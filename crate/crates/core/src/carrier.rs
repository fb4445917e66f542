use serde::{Deserialize, Serialize};

use crate::set::SentenceSet;

/// The sentence carrier `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Carrier {
    /// `{0, .., size-1}`, optionally with display labels.
    Finite { size: u32, names: Option<Vec<String>> },
    /// The natural numbers; only finite and cofinite subsets are representable.
    Countable,
}

impl Carrier {
    pub fn finite(size: u32) -> Self {
        Carrier::Finite { size, names: None }
    }

    pub fn size(&self) -> Option<u32> {
        match self {
            Carrier::Finite { size, .. } => Some(*size),
            Carrier::Countable => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Finite { .. })
    }

    /// The whole carrier as a set.
    pub fn full(&self) -> SentenceSet {
        match self {
            Carrier::Finite { size, .. } => SentenceSet::range(*size),
            Carrier::Countable => SentenceSet::all(),
        }
    }

    pub fn admits(&self, g: &SentenceSet) -> bool {
        match self {
            Carrier::Finite { size, .. } => g.is_finite() && g.max_listed().is_none_or(|m| m < *size),
            Carrier::Countable => true,
        }
    }

    pub fn admits_sentence(&self, a: u32) -> bool {
        self.size().is_none_or(|n| a < n)
    }

    /// `L \ g`.
    pub fn complement(&self, g: &SentenceSet) -> SentenceSet {
        match self {
            Carrier::Finite { size, .. } => g.complement_in(*size),
            Carrier::Countable => g.complement(),
        }
    }

    pub fn label(&self, a: u32) -> String {
        match self {
            Carrier::Finite { names: Some(names), .. } if (a as usize) < names.len() => names[a as usize].clone(),
            _ => a.to_string(),
        }
    }
}

/// Cardinality of the model set `M`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ModelCount {
    Finite(u32),
    Countable,
}

impl ModelCount {
    pub fn admits(&self, m: u32) -> bool {
        match self {
            ModelCount::Finite(k) => m < *k,
            ModelCount::Countable => true,
        }
    }
}
