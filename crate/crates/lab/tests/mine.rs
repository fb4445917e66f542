use amst_core::principles::PrincipleId::{self, *};
use amst_core::principles::{profile, ARROWS};
use amst_lab::mine::{mine_any, mine_counterexample, SearchLimits};
use amst_lab::EnumerationSpace;

fn confirms(a: &amst_core::Amst, from: PrincipleId, to: PrincipleId) -> bool {
    let p = profile(a, None).unwrap();
    p.holds(from) && p.verdict(to).is_refuted()
}

#[test]
fn gecq_finsat_without_pfecq_finsat() {
    let m = mine_any(GecqFinsat, PfecqFinsat, &SearchLimits::default()).unwrap().unwrap();
    assert!(confirms(&m.amst, GecqFinsat, PfecqFinsat));
    // The countable example has a single unsatisfiable set; the finite
    // witness needs no more sentences than that pattern plus one.
    assert!(m.space.sentences <= 2, "{:?}", m.space);
}

#[test]
fn secq_without_gecq() {
    let m = mine_any(SecqSat, GecqSat, &SearchLimits::default()).unwrap().unwrap();
    assert_eq!((m.space.models, m.space.sentences), (1, 4));
    assert!(confirms(&m.amst, SecqSat, GecqSat));
}

#[test]
fn arrows_stay_unrefuted() {
    for a in ARROWS {
        for (m, n) in [(1, 3), (2, 3)] {
            let s = EnumerationSpace::exhaustive(m, n);
            if n >= a.min_sentences {
                assert!(mine_counterexample(a.from, a.to, &s, 16).unwrap().is_none(), "{} -> {}", a.from, a.to);
            }
        }
    }
}
