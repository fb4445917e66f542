//! The eight semantic principles of explosion and their implication table.
//!
//! Every checker is written once over a [`Domain`] and a "bad set" predicate:
//! unsatisfiable for the `-sat` variants, not finitely satisfiable for the
//! `-finsat` ones. The syntactic principles reuse the same code with
//! explosiveness as the predicate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::amst::Amst;
use crate::error::AmstError;
use crate::set::SentenceSet;
use crate::space::{Domain, Semantics, Space, DEFAULT_BOUND};
use crate::verdict::{BoundedVerdict, Witness};

/// Which quantifier pattern a principle uses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Form {
    /// For every α some β makes `{α, β}` bad.
    G,
    /// For every α some proper bad set contains it.
    S,
    /// For every proper Γ some α makes `Γ ∪ {α}` proper and bad.
    Sp,
    /// For every proper Γ some proper bad Δ contains it.
    Pf,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Mode {
    Sat,
    Finsat,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PrincipleId {
    GecqSat,
    SecqSat,
    SpecqSat,
    PfecqSat,
    GecqFinsat,
    SecqFinsat,
    SpecqFinsat,
    PfecqFinsat,
    Gecq,
    Secq,
    Specq,
    Pfecq,
}

impl PrincipleId {
    /// The principles that apply to amsts, sat variants first.
    pub const SEMANTIC: [PrincipleId; 8] = [
        PrincipleId::GecqSat,
        PrincipleId::SecqSat,
        PrincipleId::SpecqSat,
        PrincipleId::PfecqSat,
        PrincipleId::GecqFinsat,
        PrincipleId::SecqFinsat,
        PrincipleId::SpecqFinsat,
        PrincipleId::PfecqFinsat,
    ];

    pub const SYNTACTIC: [PrincipleId; 4] = [PrincipleId::Gecq, PrincipleId::Secq, PrincipleId::Specq, PrincipleId::Pfecq];

    pub fn name(self) -> &'static str {
        match self {
            PrincipleId::GecqSat => "gECQ-sat",
            PrincipleId::SecqSat => "sECQ-sat",
            PrincipleId::SpecqSat => "spECQ-sat",
            PrincipleId::PfecqSat => "pfECQ-sat",
            PrincipleId::GecqFinsat => "gECQ-finsat",
            PrincipleId::SecqFinsat => "sECQ-finsat",
            PrincipleId::SpecqFinsat => "spECQ-finsat",
            PrincipleId::PfecqFinsat => "pfECQ-finsat",
            PrincipleId::Gecq => "gECQ",
            PrincipleId::Secq => "sECQ",
            PrincipleId::Specq => "spECQ",
            PrincipleId::Pfecq => "pfECQ",
        }
    }

    pub fn form(self) -> Form {
        use PrincipleId::*;
        match self {
            GecqSat | GecqFinsat | Gecq => Form::G,
            SecqSat | SecqFinsat | Secq => Form::S,
            SpecqSat | SpecqFinsat | Specq => Form::Sp,
            PfecqSat | PfecqFinsat | Pfecq => Form::Pf,
        }
    }

    /// `None` for the syntactic principles.
    pub fn mode(self) -> Option<Mode> {
        use PrincipleId::*;
        match self {
            GecqSat | SecqSat | SpecqSat | PfecqSat => Some(Mode::Sat),
            GecqFinsat | SecqFinsat | SpecqFinsat | PfecqFinsat => Some(Mode::Finsat),
            _ => None,
        }
    }

    pub fn semantic(form: Form, mode: Mode) -> PrincipleId {
        let i = form as usize + if mode == Mode::Finsat { 4 } else { 0 };
        PrincipleId::SEMANTIC[i]
    }

    pub fn syntactic(form: Form) -> PrincipleId {
        PrincipleId::SYNTACTIC[form as usize]
    }

    /// Position in [`PrincipleId::SEMANTIC`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrincipleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PrincipleId::SEMANTIC
            .iter()
            .chain(PrincipleId::SYNTACTIC.iter())
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown principle {s:?}"))
    }
}

impl Serialize for PrincipleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for PrincipleId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Witnesses of a verified principle, keyed by the universally quantified
/// instance (`"3"` or `"{0,1}"`).
pub type WitnessMap = BTreeMap<String, Value>;

fn sentence_value(a: u32) -> Value {
    json!(a)
}

fn set_value(s: &SentenceSet) -> Value {
    serde_json::to_value(s).expect("sets serialize")
}

/// `∀α ∃β: {α, β}` is bad.
pub fn gecq<D: Domain>(d: &D, bad: impl Fn(&D::Set) -> bool, mut rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    for a in d.sentences() {
        let single = d.singleton(a);
        match d.witness_sentences().find(|&b| bad(&d.with(&single, b))) {
            Some(b) => {
                if let Some(m) = rec.as_deref_mut() {
                    m.insert(a.to_string(), sentence_value(b));
                }
            }
            None => return d.exactness().settle(Err(Witness::Sentence { sentence: a })),
        }
    }
    d.exactness().settle(Ok(()))
}

/// `∀α ∃Γ: Γ ∪ {α} ⊊ L` and `Γ ∪ {α}` is bad.
pub fn secq<D: Domain>(d: &D, bad: impl Fn(&D::Set) -> bool, mut rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    for a in d.sentences() {
        let hit = d.witness_subsets().find(|g| {
            let ga = d.with(g, a);
            d.is_proper(&ga) && bad(&ga)
        });
        match hit {
            Some(g) => {
                if let Some(m) = rec.as_deref_mut() {
                    m.insert(a.to_string(), set_value(&d.export(&g)));
                }
            }
            None => return d.exactness().settle(Err(Witness::Sentence { sentence: a })),
        }
    }
    d.exactness().settle(Ok(()))
}

/// The alternative set-based form: every α lies in some proper bad Δ.
pub fn secq_remark<D: Domain>(d: &D, bad: impl Fn(&D::Set) -> bool) -> BoundedVerdict {
    for a in d.sentences() {
        if !d.witness_subsets().any(|g| d.contains(&g, a) && d.is_proper(&g) && bad(&g)) {
            return d.exactness().settle(Err(Witness::Sentence { sentence: a }));
        }
    }
    d.exactness().settle(Ok(()))
}

/// `∀Γ ⊊ L ∃α: Γ ∪ {α} ⊊ L` and `Γ ∪ {α}` is bad.
pub fn specq<D: Domain>(d: &D, bad: impl Fn(&D::Set) -> bool, mut rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    for g in d.subsets().filter(|g| d.is_proper(g)) {
        let hit = d.witness_sentences().find(|&a| {
            let ga = d.with(&g, a);
            d.is_proper(&ga) && bad(&ga)
        });
        match hit {
            Some(a) => {
                if let Some(m) = rec.as_deref_mut() {
                    m.insert(d.export(&g).to_string(), sentence_value(a));
                }
            }
            None => return d.exactness().settle(Err(Witness::Set { set: d.export(&g) })),
        }
    }
    d.exactness().settle(Ok(()))
}

/// `∀Γ ⊊ L ∃Δ ⊊ L: Γ ⊆ Δ` and Δ is bad.
pub fn pfecq<D: Domain>(d: &D, bad: impl Fn(&D::Set) -> bool, mut rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    for g in d.subsets().filter(|g| d.is_proper(g)) {
        let hit = d.witness_supersets(g.clone()).find(|h| d.is_proper(h) && bad(h));
        match hit {
            Some(h) => {
                if let Some(m) = rec.as_deref_mut() {
                    m.insert(d.export(&g).to_string(), set_value(&d.export(&h)));
                }
            }
            None => return d.exactness().settle(Err(Witness::Set { set: d.export(&g) })),
        }
    }
    d.exactness().settle(Ok(()))
}

/// Runs one form against a bad-set predicate.
pub fn run_form<D: Domain>(d: &D, form: Form, bad: impl Fn(&D::Set) -> bool, rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    match form {
        Form::G => gecq(d, bad, rec),
        Form::S => secq(d, bad, rec),
        Form::Sp => specq(d, bad, rec),
        Form::Pf => pfecq(d, bad, rec),
    }
}

/// Checks a semantic principle on a space.
pub fn check<S: Semantics>(s: &S, p: PrincipleId, rec: Option<&mut WitnessMap>) -> BoundedVerdict {
    match p.mode().expect("semantic principle") {
        Mode::Sat => run_form(s, p.form(), |g| !s.satisfiable(g), rec),
        Mode::Finsat => run_form(s, p.form(), |g| !s.finitely_satisfiable(g), rec),
    }
}

/// sECQ-sat in its alternative formulation.
pub fn alt_secq<S: Semantics>(s: &S) -> BoundedVerdict {
    secq_remark(s, |g| !s.satisfiable(g))
}

fn check_amst(amst: &Amst, p: PrincipleId, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
    Ok(crate::with_space!(&space, s => check(s, p, None)))
}

pub fn gecq_sat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::GecqSat, bound)
}

/// Also evaluates the alternative formulation and insists both agree.
pub fn secq_sat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
    let (def, alt) = crate::with_space!(&space, s => (check(s, PrincipleId::SecqSat, None), alt_secq(s)));
    if let (Some(x), Some(y)) = (def.as_bool(), alt.as_bool()) {
        assert_eq!(x, y, "the two sECQ-sat formulations disagree on {}", amst.to_json());
    }
    Ok(def)
}

pub fn specq_sat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::SpecqSat, bound)
}

pub fn pfecq_sat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::PfecqSat, bound)
}

pub fn gecq_finsat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::GecqFinsat, bound)
}

pub fn secq_finsat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::SecqFinsat, bound)
}

pub fn specq_finsat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::SpecqFinsat, bound)
}

pub fn pfecq_finsat(amst: &Amst, bound: Option<u32>) -> Result<BoundedVerdict, AmstError> {
    check_amst(amst, PrincipleId::PfecqFinsat, bound)
}

/// Verdicts of all eight semantic principles, with witness maps for the
/// verified ones.
#[derive(Clone, PartialEq, Debug)]
pub struct PrincipleProfile {
    pub verdicts: BTreeMap<PrincipleId, BoundedVerdict>,
    pub witnesses: BTreeMap<PrincipleId, WitnessMap>,
}

impl PrincipleProfile {
    pub fn verdict(&self, p: PrincipleId) -> &BoundedVerdict {
        &self.verdicts[&p]
    }

    pub fn holds(&self, p: PrincipleId) -> bool {
        self.verdict(p).is_verified()
    }

    /// Eight bits in [`PrincipleId::SEMANTIC`] order.
    pub fn bits(&self) -> u8 {
        PrincipleId::SEMANTIC.iter().enumerate().fold(0, |acc, (i, p)| acc | (self.holds(*p) as u8) << i)
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        let mut refutations = Map::new();
        for (p, v) in &self.verdicts {
            out.insert(p.name().into(), json!(v.label()));
            match v {
                BoundedVerdict::Refuted(w) => {
                    refutations.insert(p.name().into(), serde_json::to_value(w).expect("witness serializes"));
                }
                BoundedVerdict::UnknownAtBound(b) => {
                    refutations.insert(p.name().into(), json!({ "unknown_at_bound": b }));
                }
                BoundedVerdict::Verified => {}
            }
        }
        let witnesses: Map<String, Value> =
            self.witnesses.iter().map(|(p, m)| (p.name().to_string(), Value::Object(m.clone().into_iter().collect()))).collect();
        out.insert("witnesses".into(), Value::Object(witnesses));
        out.insert("refutations".into(), Value::Object(refutations));
        Value::Object(out)
    }
}

impl Serialize for PrincipleProfile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

/// Largest witness map kept per principle; countable windows can hold
/// thousands of instances.
pub const WITNESS_LIMIT: usize = 64;

pub fn profile_in<S: Semantics>(s: &S) -> PrincipleProfile {
    let mut verdicts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for p in PrincipleId::SEMANTIC {
        let mut map = WitnessMap::new();
        let v = check(s, p, Some(&mut map));
        if v.is_verified() {
            witnesses.insert(p, map.into_iter().take(WITNESS_LIMIT).collect());
        }
        verdicts.insert(p, v);
    }
    PrincipleProfile { verdicts, witnesses }
}

pub fn profile(amst: &Amst, bound: Option<u32>) -> Result<PrincipleProfile, AmstError> {
    let space = Space::new(amst, bound.unwrap_or(DEFAULT_BOUND))?;
    Ok(crate::with_space!(&space, s => profile_in(s)))
}

/// An arrow of the implication lattice, with the smallest finite carrier
/// on which its proof goes through.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Arrow {
    pub from: PrincipleId,
    pub to: PrincipleId,
    pub min_sentences: u32,
}

const fn arrow(from: PrincipleId, to: PrincipleId, min_sentences: u32) -> Arrow {
    Arrow { from, to, min_sentences }
}

/// The fourteen arrows of the semantic lattice, each with the smallest
/// finite carrier from which it has no counterexample. gECQ and pfECQ need
/// room for a second sentence or a proper superset; spECQ never holds on a
/// one-sentence carrier, so its arrows hold from the start.
pub const ARROWS: [Arrow; 14] = {
    use PrincipleId::*;
    [
        arrow(SpecqSat, GecqSat, 1),
        arrow(SpecqSat, PfecqSat, 1),
        arrow(SpecqSat, SecqSat, 1),
        arrow(GecqSat, SecqSat, 3),
        arrow(PfecqSat, SecqSat, 2),
        arrow(SpecqFinsat, GecqFinsat, 1),
        arrow(SpecqFinsat, PfecqFinsat, 1),
        arrow(SpecqFinsat, SecqFinsat, 1),
        arrow(GecqFinsat, SecqFinsat, 3),
        arrow(PfecqFinsat, SecqFinsat, 2),
        arrow(GecqSat, GecqFinsat, 1),
        arrow(SpecqSat, GecqFinsat, 1),
        arrow(SpecqSat, SecqFinsat, 1),
        arrow(GecqSat, SecqFinsat, 3),
    ]
};

pub fn arrow_between(from: PrincipleId, to: PrincipleId) -> Option<&'static Arrow> {
    ARROWS.iter().find(|a| a.from == from && a.to == to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Carrier, ModelCount};
    use crate::rule::RuleExpr;

    fn countable(rule: RuleExpr) -> Amst {
        Amst::rule(Carrier::Countable, ModelCount::Countable, rule).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for p in PrincipleId::SEMANTIC.iter().chain(PrincipleId::SYNTACTIC.iter()) {
            assert_eq!(p.name().parse::<PrincipleId>().unwrap(), *p);
        }
        assert_eq!(PrincipleId::semantic(Form::Pf, Mode::Finsat), PrincipleId::PfecqFinsat);
        assert_eq!(PrincipleId::syntactic(Form::Sp), PrincipleId::Specq);
    }

    #[test]
    fn successor_pair_rule() {
        let a = countable(RuleExpr::not(RuleExpr::IsSuccessorPair));
        assert!(gecq_sat(&a, None).unwrap().is_verified());
        assert!(pfecq_sat(&a, None).unwrap().is_refuted());
        let mut map = WitnessMap::new();
        let s = crate::space::CountableSpace::new(&a, DEFAULT_BOUND).unwrap();
        check(&s, PrincipleId::GecqSat, Some(&mut map));
        // β = α + 1 is not forced, but α - 1 works first for α ≥ 1.
        assert_eq!(map["0"], json!(1));
        assert_eq!(map["5"], json!(4));
    }

    #[test]
    fn finite_rule_refutes_gecq() {
        let a = countable(RuleExpr::IsFinite);
        assert!(gecq_sat(&a, None).unwrap().is_refuted());
        assert!(secq_sat(&a, None).unwrap().is_verified());
    }

    #[test]
    fn nonempty_rule_refutes_secq_sat() {
        let a = countable(RuleExpr::not(RuleExpr::IsEmpty));
        assert!(secq_sat(&a, None).unwrap().is_refuted());
        assert!(specq_finsat(&a, None).unwrap().is_verified());
    }

    #[test]
    fn small_bound_is_unknown() {
        let a = countable(RuleExpr::not(RuleExpr::IsSuccessorPair));
        assert!(gecq_sat(&a, Some(2)).unwrap().is_unknown());
    }

    #[test]
    fn profile_json_shape() {
        let a = Amst::from_index(1, 1, 0).unwrap();
        let v = profile(&a, None).unwrap().to_value();
        assert_eq!(v["gECQ-sat"], json!("verified"));
        assert_eq!(v["witnesses"]["gECQ-sat"]["0"], json!(0));
    }

    #[test]
    fn arrow_table_is_the_lattice() {
        assert_eq!(ARROWS.len(), 14);
        assert_eq!(arrow_between(PrincipleId::GecqSat, PrincipleId::SecqSat).unwrap().min_sentences, 3);
        assert!(arrow_between(PrincipleId::SecqSat, PrincipleId::GecqSat).is_none());
    }

    #[test]
    fn specq_fails_on_one_sentence() {
        for idx in 0..16 {
            let a = Amst::from_index(2, 1, idx).unwrap();
            let p = profile(&a, None).unwrap();
            assert!(p.verdict(PrincipleId::SpecqSat).is_refuted() && p.verdict(PrincipleId::SpecqFinsat).is_refuted());
        }
    }
}
