use std::fmt;

use serde::{Deserialize, Serialize};

use crate::set::SentenceSet;

/// The concrete quantifier instance behind a refutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Sentence {
        sentence: u32,
    },
    Set {
        set: SentenceSet,
    },
    ModelSet {
        model: u32,
        set: SentenceSet,
    },
    Entailment {
        premises: SentenceSet,
        conclusion: u32,
    },
    Pair {
        first: SentenceSet,
        second: SentenceSet,
    },
    /// Two independently computed sides of an equivalence disagree.
    Sides {
        left: bool,
        right: bool,
        detail: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Sentence { sentence } => write!(f, "sentence {sentence}"),
            Witness::Set { set } => write!(f, "set {set}"),
            Witness::ModelSet { model, set } => write!(f, "model {model} with {set}"),
            Witness::Entailment { premises, conclusion } => write!(f, "{premises} |- {conclusion}"),
            Witness::Pair { first, second } => write!(f, "sets {first} and {second}"),
            Witness::Sides { left, right, detail } => write!(f, "left={left} right={right} ({detail})"),
        }
    }
}

/// Outcome of a check that may quantify over an infinite carrier.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundedVerdict {
    Verified,
    Refuted(Witness),
    UnknownAtBound(u32),
}

impl BoundedVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, BoundedVerdict::Verified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, BoundedVerdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, BoundedVerdict::UnknownAtBound(_))
    }

    /// `Some(true)` for verified, `Some(false)` for refuted.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            BoundedVerdict::Verified => Some(true),
            BoundedVerdict::Refuted(_) => Some(false),
            BoundedVerdict::UnknownAtBound(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            BoundedVerdict::Refuted(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            BoundedVerdict::Verified => "verified",
            BoundedVerdict::Refuted(_) => "refuted",
            BoundedVerdict::UnknownAtBound(_) => "unknown",
        }
    }

    /// Conjunction: the first refutation wins, then any unknown.
    pub fn and(self, other: BoundedVerdict) -> BoundedVerdict {
        match (self, other) {
            (r @ BoundedVerdict::Refuted(_), _) => r,
            (_, r @ BoundedVerdict::Refuted(_)) => r,
            (u @ BoundedVerdict::UnknownAtBound(_), _) => u,
            (_, u) => u,
        }
    }
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedVerdict::Verified => write!(f, "verified"),
            BoundedVerdict::Refuted(w) => write!(f, "refuted ({w})"),
            BoundedVerdict::UnknownAtBound(b) => write!(f, "unknown at bound {b}"),
        }
    }
}

/// A theorem's hypothesis does not hold for the input, so the check says nothing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Unmet {
    pub hypothesis: String,
}

impl Unmet {
    pub fn new(hypothesis: impl Into<String>) -> Self {
        Unmet { hypothesis: hypothesis.into() }
    }
}

impl fmt::Display for Unmet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hypothesis not met: {}", self.hypothesis)
    }
}

pub type Checked = Result<BoundedVerdict, Unmet>;

/// Whether quantifier searches over the carrier are complete.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Bounded(u32),
}

impl Exactness {
    /// Maps a search result onto a verdict: incomplete searches only report
    /// unknown.
    pub fn settle(self, result: Result<(), Witness>) -> BoundedVerdict {
        match (self, result) {
            (Exactness::Exact, Ok(())) => BoundedVerdict::Verified,
            (Exactness::Exact, Err(w)) => BoundedVerdict::Refuted(w),
            (Exactness::Bounded(b), _) => BoundedVerdict::UnknownAtBound(b),
        }
    }
}
