//! The worked counterexamples, as rule amsts with their stated verdicts.

use amst_core::principles::{profile_in, PrincipleId, PrincipleProfile};
use amst_core::space::{Semantics, Space};
use amst_core::{Amst, BoundedVerdict, Carrier, ModelCount, RuleExpr, SentenceSet, Witness};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::LabError;

use PrincipleId::*;
use RuleExpr as R;

/// A hand-written witness for one principle, checked instance by instance.
#[derive(Clone, Copy)]
pub enum Manual {
    /// gECQ: `α ↦ β`.
    Partner(fn(u32) -> u32),
    /// sECQ: `α ↦ Γ`.
    Extension(fn(u32) -> SentenceSet),
    /// spECQ: `Γ ↦ α`.
    Point(fn(&SentenceSet) -> u32),
    /// pfECQ: `Γ ↦ Δ`.
    Superset(fn(&SentenceSet) -> SentenceSet),
}

#[derive(Clone)]
pub struct RegisteredExample {
    pub id: &'static str,
    /// The non-implication the example exhibits.
    pub shows: &'static str,
    /// The defining clause, in notation.
    pub clause: &'static str,
    pub carrier: Carrier,
    pub models: ModelCount,
    pub rule: RuleExpr,
    pub expected: Vec<(PrincipleId, bool)>,
    pub manual: Vec<(PrincipleId, Manual)>,
}

impl RegisteredExample {
    pub fn amst(&self) -> Amst {
        Amst::rule(self.carrier.clone(), self.models, self.rule.clone()).expect("registry rules are valid")
    }
}

/// Some sentence outside `g`.
fn outside(g: &SentenceSet) -> u32 {
    if g.is_cofinite() {
        g.listed()[0]
    } else {
        g.max_listed().map_or(0, |m| m + 1)
    }
}

/// The least sentence inside a non-empty `g`.
fn inside(g: &SentenceSet) -> Option<u32> {
    if g.is_cofinite() {
        (0..).find(|&a| g.contains(a))
    } else {
        g.first()
    }
}

fn co_outside(g: &SentenceSet) -> SentenceSet {
    SentenceSet::cofinite([outside(g)])
}

fn next_two(a: u32) -> SentenceSet {
    SentenceSet::finite([a + 1, a + 2])
}

fn countable(
    id: &'static str,
    shows: &'static str,
    clause: &'static str,
    rule: RuleExpr,
    expected: Vec<(PrincipleId, bool)>,
    manual: Vec<(PrincipleId, Manual)>,
) -> RegisteredExample {
    RegisteredExample { id, shows, clause, carrier: Carrier::Countable, models: ModelCount::Countable, rule, expected, manual }
}

/// The ten registered examples.
pub fn registered_examples() -> Vec<RegisteredExample> {
    let three = || R::not(R::CardAtLeast(3));
    vec![
        countable(
            "secq-negecq",
            "sECQ-sat does not imply gECQ-sat",
            "m |= G iff G is finite",
            R::IsFinite,
            vec![(SecqSat, true), (GecqSat, false)],
            vec![(SecqSat, Manual::Extension(|a| SentenceSet::cofinite([a + 1])))],
        ),
        countable(
            "gecq-secq-nepfecq-specq",
            "gECQ-sat and sECQ-sat imply neither pfECQ-sat nor spECQ-sat",
            "m |= G iff G is not {n, n+1}",
            R::not(R::IsSuccessorPair),
            vec![(GecqSat, true), (SecqSat, true), (PfecqSat, false), (SpecqSat, false)],
            vec![(GecqSat, Manual::Partner(|a| a + 1)), (SecqSat, Manual::Extension(|a| SentenceSet::singleton(a + 1)))],
        ),
        countable(
            "fsecq-nefgecq",
            "sECQ-finsat does not imply gECQ-finsat",
            "m |/= G iff |G| >= 3",
            three(),
            vec![(SecqFinsat, true), (GecqFinsat, false)],
            vec![(SecqFinsat, Manual::Extension(next_two))],
        ),
        countable(
            "fgecq-nefpfecq",
            "gECQ-finsat does not imply pfECQ-finsat",
            "m |= G iff G is not {0}",
            R::not(R::EqualsSet(vec![0])),
            vec![(GecqFinsat, true), (PfecqFinsat, false)],
            vec![(GecqFinsat, Manual::Partner(|_| 0))],
        ),
        countable(
            "fspecq-negecq-secq",
            "spECQ-finsat implies neither gECQ-sat nor sECQ-sat",
            "m |= G iff G is not {n} with n != 0",
            R::not(R::and(vec![R::CardAtLeast(1), R::CardAtMost(1), R::not(R::ContainsSentence(0))])),
            vec![(SpecqFinsat, true), (SecqSat, false), (GecqSat, false)],
            vec![(
                SpecqFinsat,
                Manual::Point(
                    |g| if g.is_cofinite() { inside(&g.without(0)).unwrap_or(1) } else { g.iter().find(|&a| a != 0).unwrap_or(1) },
                ),
            )],
        ),
        countable(
            "pfecq-nefsecq",
            "pfECQ-sat does not imply sECQ-finsat",
            "m |/= G iff G = N \\ {n} for some n, or m is in G",
            R::not(R::or(vec![R::IsComplementOfSingleton, R::ContainsModel])),
            vec![(PfecqSat, true), (SecqFinsat, false)],
            vec![(PfecqSat, Manual::Superset(co_outside))],
        ),
        countable(
            "pfecq-specq-nefpfecq",
            "spECQ-sat and pfECQ-sat do not imply pfECQ-finsat",
            "m |= G iff G is empty, or G is finite, 0 is not in G and m is in G",
            R::or(vec![R::IsEmpty, R::and(vec![R::IsFinite, R::not(R::ContainsSentence(0)), R::ContainsModel])]),
            vec![(SpecqSat, true), (PfecqSat, true), (PfecqFinsat, false)],
            vec![
                (SpecqSat, Manual::Point(|g| if g.is_finite() { 0 } else { inside(g).expect("infinite") })),
                (PfecqSat, Manual::Superset(|g| if g.is_finite() { g.with(0) } else { g.clone() })),
            ],
        ),
        countable(
            "fsecq-pfecq-fpfecq-nefgecq",
            "sECQ-finsat, pfECQ-sat and pfECQ-finsat do not imply gECQ-finsat",
            "m |/= G iff |G| >= 3",
            three(),
            vec![(SecqFinsat, true), (PfecqSat, true), (PfecqFinsat, true), (SecqSat, true), (GecqFinsat, false)],
            vec![
                (PfecqSat, Manual::Superset(co_outside)),
                (PfecqFinsat, Manual::Superset(co_outside)),
                (SecqSat, Manual::Extension(next_two)),
                (SecqFinsat, Manual::Extension(next_two)),
            ],
        ),
        countable(
            "fspecq-nesecq",
            "spECQ-finsat and pfECQ-finsat do not imply sECQ-sat",
            "m |= G iff G is non-empty",
            R::not(R::IsEmpty),
            vec![(PfecqFinsat, true), (SpecqFinsat, true), (SecqSat, false)],
            vec![(PfecqFinsat, Manual::Superset(co_outside)), (SpecqFinsat, Manual::Point(|g| inside(g).unwrap_or(0)))],
        ),
        RegisteredExample {
            id: "secq-negecq-finite",
            shows: "sECQ-sat does not imply gECQ-sat, on a finite carrier",
            clause: "m |= G iff |G| <= 2, over five sentences",
            carrier: Carrier::finite(5),
            models: ModelCount::Finite(2),
            rule: R::CardAtMost(2),
            expected: vec![(SecqSat, true), (GecqSat, false)],
            manual: Vec::new(),
        },
    ]
}

pub fn find_example(id: &str) -> Result<RegisteredExample, LabError> {
    registered_examples().into_iter().find(|e| e.id == id).ok_or_else(|| LabError::UnknownExample(id.to_string()))
}

/// Checks a manual witness on every instance in the space's universal range.
pub fn check_manual<S: Semantics<Set = SentenceSet>>(s: &S, p: PrincipleId, manual: Manual) -> BoundedVerdict {
    let finsat = p.mode() == Some(amst_core::principles::Mode::Finsat);
    let bad = |g: &SentenceSet| if finsat { !s.finitely_satisfiable(g) } else { !s.satisfiable(g) };
    let failure = match manual {
        Manual::Partner(f) => s.sentences().find(|&a| !bad(&SentenceSet::finite([a, f(a)]))).map(|a| Witness::Sentence { sentence: a }),
        Manual::Extension(f) => s
            .sentences()
            .find(|&a| {
                let g = f(a).with(a);
                !s.is_proper(&g) || !bad(&g)
            })
            .map(|a| Witness::Sentence { sentence: a }),
        Manual::Point(f) => s
            .subsets()
            .filter(|g| s.is_proper(g))
            .find(|g| {
                let h = g.with(f(g));
                !s.is_proper(&h) || !bad(&h)
            })
            .map(|g| Witness::Set { set: g }),
        Manual::Superset(f) => s
            .subsets()
            .filter(|g| s.is_proper(g))
            .find(|g| {
                let h = f(g);
                !g.is_subset(&h) || !s.is_proper(&h) || !bad(&h)
            })
            .map(|g| Witness::Set { set: g }),
    };
    match failure {
        Some(w) => BoundedVerdict::Refuted(w),
        None => BoundedVerdict::Verified,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedVerdict {
    pub principle: PrincipleId,
    pub expected: bool,
    pub got: BoundedVerdict,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct ExampleResult {
    pub id: &'static str,
    pub shows: &'static str,
    pub checks: Vec<ExpectedVerdict>,
    /// Manual witnesses and their instance checks.
    pub manual: Vec<(PrincipleId, BoundedVerdict)>,
    pub profile: PrincipleProfile,
}

impl ExampleResult {
    /// Every stated verdict reproduced, none of them undecided, and every
    /// manual witness valid.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.matches) && self.manual.iter().all(|(_, v)| v.is_verified())
    }

    pub fn undecided(&self) -> Vec<PrincipleId> {
        self.checks.iter().filter(|c| c.got.is_unknown()).map(|c| c.principle).collect()
    }

    /// `from` verified and `to` refuted in the full profile.
    pub fn exhibits(&self, from: PrincipleId, to: PrincipleId) -> bool {
        self.profile.verdict(from).is_verified() && self.profile.verdict(to).is_refuted()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "id": self.id,
            "shows": self.shows,
            "passed": self.passed(),
            "checks": self.checks,
            "manual": self.manual.iter().map(|(p, v)| json!({"principle": p, "verdict": v})).collect::<Vec<_>>(),
            "profile": self.profile.to_value(),
        })
    }
}

pub fn run_example(e: &RegisteredExample, bound: u32) -> Result<ExampleResult, LabError> {
    let space = Space::new(&e.amst(), bound)?;
    let profile = amst_core::with_space!(&space, s => profile_in(s));
    let checks = e
        .expected
        .iter()
        .map(|&(p, want)| {
            let got = profile.verdict(p).clone();
            ExpectedVerdict { principle: p, expected: want, matches: got.as_bool() == Some(want), got }
        })
        .collect();
    let manual = match &space {
        Space::Countable(s) => e.manual.iter().map(|&(p, m)| (p, check_manual(s, p, m))).collect(),
        Space::Finite(_) => Vec::new(),
    };
    Ok(ExampleResult { id: e.id, shows: e.shows, checks, manual, profile })
}

pub fn run_all(bound: u32) -> Result<Vec<ExampleResult>, LabError> {
    registered_examples().iter().map(|e| run_example(e, bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_unique_ids() {
        let ex = registered_examples();
        assert_eq!(ex.len(), 10);
        let mut ids: Vec<_> = ex.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 10);
    }

    #[test]
    fn manual_forms_match_principles() {
        for e in registered_examples() {
            for (p, m) in &e.manual {
                let form_ok = matches!(
                    (p.form(), m),
                    (amst_core::principles::Form::G, Manual::Partner(_))
                        | (amst_core::principles::Form::S, Manual::Extension(_))
                        | (amst_core::principles::Form::Sp, Manual::Point(_))
                        | (amst_core::principles::Form::Pf, Manual::Superset(_))
                );
                assert!(form_ok, "{} {p}", e.id);
                assert!(e.expected.contains(&(*p, true)), "{} {p}", e.id);
            }
        }
    }

    #[test]
    fn successor_rule_reproduces() {
        let r = run_example(&find_example("gecq-secq-nepfecq-specq").unwrap(), 6).unwrap();
        assert!(r.passed(), "{}", r.to_value());
    }

    #[test]
    fn a_broken_manual_witness_is_caught() {
        let e = find_example("gecq-secq-nepfecq-specq").unwrap();
        let Space::Countable(s) = Space::new(&e.amst(), 6).unwrap() else { unreachable!() };
        assert!(check_manual(&s, GecqSat, Manual::Partner(|a| a + 2)).is_refuted());
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(find_example("nope"), Err(LabError::UnknownExample(_))));
    }
}
