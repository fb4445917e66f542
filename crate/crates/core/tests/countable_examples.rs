//! Principle verdicts on the countable rule examples, checked exactly at the
//! default bound.

use amst_core::principles::{profile, PrincipleId};
use amst_core::{Amst, Carrier, ModelCount, RuleExpr};

use PrincipleId::*;
use RuleExpr as R;

fn countable(rule: RuleExpr) -> Amst {
    Amst::rule(Carrier::Countable, ModelCount::Countable, rule).unwrap()
}

fn expect(rule: RuleExpr, holds: &[PrincipleId], fails: &[PrincipleId]) {
    let a = countable(rule);
    let p = profile(&a, None).unwrap();
    for x in holds {
        assert!(p.verdict(*x).is_verified(), "{x} should hold on {}: {}", a.to_json(), p.verdict(*x));
    }
    for x in fails {
        assert!(p.verdict(*x).is_refuted(), "{x} should fail on {}: {}", a.to_json(), p.verdict(*x));
    }
}

#[test]
fn finite_sets_only() {
    expect(R::IsFinite, &[SecqSat, PfecqSat], &[GecqSat, SpecqSat]);
}

#[test]
fn no_successor_pairs() {
    expect(R::not(R::IsSuccessorPair), &[GecqSat, SecqSat], &[PfecqSat, SpecqSat]);
}

#[test]
fn at_most_two_sentences() {
    let r = R::not(R::CardAtLeast(3));
    expect(r.clone(), &[SecqFinsat, PfecqSat, PfecqFinsat, SecqSat], &[GecqFinsat]);
}

#[test]
fn zero_singleton_unsat() {
    expect(R::not(R::EqualsSet(vec![0])), &[GecqFinsat], &[PfecqFinsat]);
}

#[test]
fn nonzero_singletons_unsat() {
    let r = R::not(R::and(vec![R::CardAtLeast(1), R::CardAtMost(1), R::not(R::ContainsSentence(0))]));
    expect(r, &[SpecqFinsat], &[SecqSat, GecqSat]);
}

#[test]
fn co_singletons_and_members() {
    let r = R::not(R::or(vec![R::IsComplementOfSingleton, R::ContainsModel]));
    expect(r, &[PfecqSat], &[SecqFinsat]);
}

#[test]
fn finite_avoiding_zero() {
    let r = R::or(vec![R::IsEmpty, R::and(vec![R::IsFinite, R::not(R::ContainsSentence(0)), R::ContainsModel])]);
    expect(r, &[SpecqSat, PfecqSat], &[PfecqFinsat]);
}

#[test]
fn nonempty_sets() {
    expect(R::not(R::IsEmpty), &[PfecqFinsat, SpecqFinsat], &[SecqSat]);
}

#[test]
fn finite_threshold_carrier() {
    let a = Amst::rule(Carrier::finite(5), ModelCount::Finite(2), R::CardAtMost(2)).unwrap();
    let p = profile(&a, None).unwrap();
    assert!(p.holds(SecqSat) && p.holds(PfecqSat));
    assert!(p.verdict(GecqSat).is_refuted() && p.verdict(SpecqSat).is_refuted());
}
