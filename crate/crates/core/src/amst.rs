//! Abstract model structures `(M, ⊨, P(L))` in explicit and rule form.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::carrier::{Carrier, ModelCount};
use crate::error::AmstError;
use crate::rule::RuleExpr;
use crate::set::{ModelSet, SentenceSet};

/// Largest carrier for the explicit form.
pub const MAX_EXPLICIT_SENTENCES: u32 = 16;
/// Largest model count for the explicit form.
pub const MAX_EXPLICIT_MODELS: u32 = 64;

/// One bit per `(model, subset)` pair; bit `m * 2^n + mask` is `m ⊨ mask`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitMatrix {
    models: u32,
    sentences: u32,
    words: Vec<u64>,
}

impl ExplicitMatrix {
    fn new(models: u32, sentences: u32) -> Self {
        let bits = (models as usize) << sentences;
        ExplicitMatrix { models, sentences, words: vec![0; bits.div_ceil(64)] }
    }

    fn pos(&self, m: u32, mask: u64) -> usize {
        ((m as usize) << self.sentences) | mask as usize
    }

    pub fn get(&self, m: u32, mask: u64) -> bool {
        let p = self.pos(m, mask);
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    fn set(&mut self, m: u32, mask: u64, v: bool) {
        let p = self.pos(m, mask);
        if v {
            self.words[p / 64] |= 1 << (p % 64);
        } else {
            self.words[p / 64] &= !(1 << (p % 64));
        }
    }

    pub fn models(&self) -> u32 {
        self.models
    }

    pub fn sentences(&self) -> u32 {
        self.sentences
    }

    pub fn bit_count(&self) -> usize {
        (self.models as usize) << self.sentences
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Relation {
    Explicit(ExplicitMatrix),
    Rule(RuleExpr),
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    carrier: Carrier,
    models: ModelCount,
    relation: Relation,
}

/// An immutable, cheaply cloned amst.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amst {
    inner: Arc<Inner>,
}

impl Amst {
    /// Builds an explicit amst from a satisfaction predicate on `(model, subset mask)`.
    pub fn explicit_from_fn(models: u32, sentences: u32, f: impl Fn(u32, u64) -> bool) -> Result<Self, AmstError> {
        check_explicit_dims(models, sentences)?;
        let mut mat = ExplicitMatrix::new(models, sentences);
        for m in 0..models {
            for mask in 0..(1u64 << sentences) {
                if f(m, mask) {
                    mat.set(m, mask, true);
                }
            }
        }
        Ok(Self::from_matrix(mat))
    }

    /// The amst whose satisfaction matrix, read row-major by model and then
    /// subset mask, is the binary expansion of `index`.
    pub fn from_index(models: u32, sentences: u32, index: u64) -> Result<Self, AmstError> {
        check_explicit_dims(models, sentences)?;
        let bits = (models as u64) << sentences;
        if bits > 64 {
            return Err(AmstError::Invalid(format!("{bits} matrix bits do not fit an index")));
        }
        if bits < 64 && index >> bits != 0 {
            return Err(AmstError::Invalid(format!("index {index} exceeds 2^{bits}")));
        }
        let mut mat = ExplicitMatrix::new(models, sentences);
        mat.words[0] = index;
        Ok(Self::from_matrix(mat))
    }

    fn from_matrix(mat: ExplicitMatrix) -> Self {
        Amst {
            inner: Arc::new(Inner {
                carrier: Carrier::finite(mat.sentences),
                models: ModelCount::Finite(mat.models),
                relation: Relation::Explicit(mat),
            }),
        }
    }

    pub fn rule(carrier: Carrier, models: ModelCount, rule: RuleExpr) -> Result<Self, AmstError> {
        if let Some(0) = carrier.size() {
            return Err(AmstError::Invalid("carrier must be non-empty".into()));
        }
        if models == ModelCount::Finite(0) {
            return Err(AmstError::Invalid("model set must be non-empty".into()));
        }
        let shape = rule.shape();
        if shape.uses_model {
            // Model indices are read as sentences, so they must name sentences.
            let ok = match (&carrier, models) {
                (Carrier::Countable, _) => true,
                (Carrier::Finite { size, .. }, ModelCount::Finite(k)) => k <= *size,
                (Carrier::Finite { .. }, ModelCount::Countable) => false,
            };
            if !ok {
                return Err(AmstError::Invalid("ContainsModel needs model indices drawn from the carrier".into()));
            }
        }
        if let Some(n) = carrier.size() {
            if let Some(&c) = shape.constants.iter().find(|&&c| c >= n) {
                return Err(AmstError::Invalid(format!("rule mentions sentence {c} outside the carrier")));
            }
        }
        Ok(Amst { inner: Arc::new(Inner { carrier, models, relation: Relation::Rule(rule) }) })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.inner.carrier
    }

    pub fn models(&self) -> ModelCount {
        self.inner.models
    }

    pub fn relation(&self) -> &Relation {
        &self.inner.relation
    }

    pub fn as_rule(&self) -> Option<&RuleExpr> {
        match &self.inner.relation {
            Relation::Rule(r) => Some(r),
            Relation::Explicit(_) => None,
        }
    }

    pub fn as_explicit(&self) -> Option<&ExplicitMatrix> {
        match &self.inner.relation {
            Relation::Explicit(m) => Some(m),
            Relation::Rule(_) => None,
        }
    }

    /// `M` as a model set.
    pub fn model_domain(&self) -> ModelSet {
        match self.inner.models {
            ModelCount::Finite(k) => ModelSet::range(k),
            ModelCount::Countable => ModelSet::all(),
        }
    }

    /// Enumeration index of an explicit amst whose matrix fits 64 bits.
    pub fn index(&self) -> Option<u64> {
        let mat = self.as_explicit()?;
        (mat.bit_count() <= 64).then(|| mat.words[0])
    }

    fn check_set(&self, g: &SentenceSet) -> Result<(), AmstError> {
        if self.inner.carrier.admits(g) {
            Ok(())
        } else {
            Err(AmstError::NotRepresentable(g.to_string()))
        }
    }

    /// `m ⊨ Γ`.
    pub fn holds(&self, m: u32, g: &SentenceSet) -> Result<bool, AmstError> {
        if !self.inner.models.admits(m) {
            return Err(AmstError::ModelOutOfRange(m));
        }
        self.check_set(g)?;
        Ok(match &self.inner.relation {
            Relation::Explicit(mat) => mat.get(m, g.to_mask().expect("finite carrier set")),
            Relation::Rule(r) => r.eval(g, g.contains(m), self.inner.carrier.size()),
        })
    }

    /// `Mod(Γ)`, computed exactly for both forms.
    pub fn mod_of(&self, g: &SentenceSet) -> Result<ModelSet, AmstError> {
        self.check_set(g)?;
        Ok(match &self.inner.relation {
            Relation::Explicit(mat) => {
                let mask = g.to_mask().expect("finite carrier set");
                ModelSet::finite((0..mat.models).filter(|&m| mat.get(m, mask)))
            }
            Relation::Rule(r) => {
                // The rule sees a model only through whether it lies in Γ.
                let n = self.inner.carrier.size();
                let inside = r.eval(g, true, n);
                let outside = r.eval(g, false, n);
                let members = ModelSet::from_set(g.clone());
                let chosen = match (inside, outside) {
                    (true, true) => ModelSet::all(),
                    (true, false) => members,
                    (false, true) => ModelSet::from_set(g.complement()),
                    (false, false) => ModelSet::empty(),
                };
                chosen.intersection(&self.model_domain())
            }
        })
    }

    pub fn is_satisfiable(&self, g: &SentenceSet) -> Result<bool, AmstError> {
        Ok(!self.mod_of(g)?.is_empty())
    }

    pub fn from_json(text: &str) -> Result<Self, AmstError> {
        let v: Value = serde_json::from_str(text).map_err(|e| AmstError::Parse(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, AmstError> {
        let doc: AmstDoc = serde_json::from_value(v.clone()).map_err(|e| AmstError::Parse(e.to_string()))?;
        match doc {
            AmstDoc::Explicit { models, sentences, sat } => {
                check_explicit_dims(models, sentences)?;
                if sat.len() != models as usize {
                    return Err(AmstError::Parse(format!("expected {models} rows, found {}", sat.len())));
                }
                let mut mat = ExplicitMatrix::new(models, sentences);
                for (m, row) in sat.iter().enumerate() {
                    for (mask, bit) in decode_row(row, sentences)?.into_iter().enumerate() {
                        mat.set(m as u32, mask as u64, bit);
                    }
                }
                Ok(Self::from_matrix(mat))
            }
            AmstDoc::Rule { models, carrier, rule } => {
                let models = match models {
                    Size::Count(k) => ModelCount::Finite(k),
                    Size::Countable(_) => ModelCount::Countable,
                };
                let carrier = match carrier {
                    Size::Count(n) => Carrier::finite(n),
                    Size::Countable(_) => Carrier::Countable,
                };
                Self::rule(carrier, models, rule)
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let doc = match &self.inner.relation {
            Relation::Explicit(mat) => AmstDoc::Explicit {
                models: mat.models,
                sentences: mat.sentences,
                sat: (0..mat.models).map(|m| encode_row(mat, m)).collect(),
            },
            Relation::Rule(r) => AmstDoc::Rule {
                models: match self.inner.models {
                    ModelCount::Finite(k) => Size::Count(k),
                    ModelCount::Countable => Size::Countable(Countable::Countable),
                },
                carrier: match self.inner.carrier.size() {
                    Some(n) => Size::Count(n),
                    None => Size::Countable(Countable::Countable),
                },
                rule: r.clone(),
            },
        };
        serde_json::to_value(doc).expect("amst serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

fn check_explicit_dims(models: u32, sentences: u32) -> Result<(), AmstError> {
    if sentences == 0 || sentences > MAX_EXPLICIT_SENTENCES {
        return Err(AmstError::Invalid(format!("explicit carriers need 1..={MAX_EXPLICIT_SENTENCES} sentences, got {sentences}")));
    }
    if models == 0 || models > MAX_EXPLICIT_MODELS {
        return Err(AmstError::Invalid(format!("explicit amsts need 1..={MAX_EXPLICIT_MODELS} models, got {models}")));
    }
    Ok(())
}

/// Hex digit `i` holds subsets `4i..4i+3`, least significant bit first.
fn encode_row(mat: &ExplicitMatrix, m: u32) -> String {
    let subsets = 1u64 << mat.sentences;
    let digits = subsets.div_ceil(4);
    let mut s = String::with_capacity(digits as usize);
    for d in 0..digits {
        let mut nib = 0u32;
        for j in 0..4 {
            let mask = d * 4 + j;
            if mask < subsets && mat.get(m, mask) {
                nib |= 1 << j;
            }
        }
        write!(s, "{nib:x}").unwrap();
    }
    s
}

fn decode_row(row: &str, sentences: u32) -> Result<Vec<bool>, AmstError> {
    let subsets = 1usize << sentences;
    let digits = subsets.div_ceil(4);
    if row.len() != digits {
        return Err(AmstError::Parse(format!("row {row:?} has {} hex digits, expected {digits}", row.len())));
    }
    let mut bits = Vec::with_capacity(subsets);
    for (d, ch) in row.chars().enumerate() {
        let nib = ch.to_digit(16).ok_or_else(|| AmstError::Parse(format!("bad hex digit {ch:?}")))?;
        for j in 0..4 {
            let mask = d * 4 + j;
            let bit = nib >> j & 1 == 1;
            if mask < subsets {
                bits.push(bit);
            } else if bit {
                return Err(AmstError::Parse(format!("row {row:?} sets bits past subset {}", subsets - 1)));
            }
        }
    }
    Ok(bits)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum AmstDoc {
    Explicit { models: u32, sentences: u32, sat: Vec<String> },
    Rule { models: Size, carrier: Size, rule: RuleExpr },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Size {
    Count(u32),
    Countable(Countable),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Countable {
    Countable,
}
