use amst_core::principles::PrincipleId::*;
use amst_core::principles::{profile, ARROWS};
use amst_core::DEFAULT_BOUND;
use amst_lab::registry::{find_example, registered_examples, run_all, run_example};

#[test]
fn every_example_reproduces_its_verdicts() {
    for r in run_all(DEFAULT_BOUND).unwrap() {
        assert!(r.passed(), "{}", r.to_value());
        assert!(r.undecided().is_empty(), "{} rests on an undecided verdict", r.id);
    }
}

#[test]
fn countable_holds_are_backed_by_manual_witnesses() {
    for e in registered_examples() {
        let r = run_example(&e, DEFAULT_BOUND).unwrap();
        for (p, v) in &r.manual {
            assert!(v.is_verified(), "{} manual witness for {p}: {v}", e.id);
        }
    }
}

#[test]
fn successor_rule_profile() {
    let r = run_example(&find_example("gecq-secq-nepfecq-specq").unwrap(), DEFAULT_BOUND).unwrap();
    assert!(r.profile.holds(GecqSat) && r.profile.holds(SecqSat));
    assert!(r.profile.verdict(PfecqSat).is_refuted() && r.profile.verdict(SpecqSat).is_refuted());
}

#[test]
fn no_example_contradicts_an_arrow() {
    for r in run_all(DEFAULT_BOUND).unwrap() {
        for a in ARROWS {
            assert!(!r.exhibits(a.from, a.to), "{} refutes {} -> {}", r.id, a.from, a.to);
        }
    }
}

#[test]
fn finite_adaptation_matches_fresh_profile() {
    let e = find_example("secq-negecq-finite").unwrap();
    let p = profile(&e.amst(), None).unwrap();
    assert!(p.holds(SecqSat) && p.verdict(GecqSat).is_refuted());
}
