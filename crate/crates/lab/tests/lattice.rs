use amst_core::principles::PrincipleId::*;
use amst_core::principles::ARROWS;
use amst_lab::lattice::{empirical_minimums, report_json, verify_lattice, EdgeStatus, LatticeConfig};
use amst_lab::registry::run_all;
use amst_lab::EnumerationSpace;

fn config(threads: usize) -> LatticeConfig {
    LatticeConfig { threads, cross_check_stride: 256, budget: 16 }
}

#[test]
fn two_by_three_is_clean() {
    let examples = run_all(6).unwrap();
    let r = verify_lattice(&EnumerationSpace::exhaustive(2, 3), &config(4), &examples).unwrap();
    assert_eq!(r.checked, 65536);
    assert!(r.ok, "{}", report_json(&r));
    for a in ARROWS {
        let e = r.edge(a.from, a.to).unwrap();
        assert_eq!(e.status, EdgeStatus::Holds, "{} -> {}", a.from, a.to);
        assert_eq!(e.checked, 65536);
    }
    assert_eq!(r.edge(SecqSat, GecqSat).unwrap().resolved_by.as_deref(), Some("secq-negecq"));
}

#[test]
fn counterexamples_reverify() {
    let r = verify_lattice(&EnumerationSpace::exhaustive(1, 4), &config(4), &[]).unwrap();
    let mut n = 0;
    for e in r.edges.iter().filter(|e| e.status == EdgeStatus::Counterexample) {
        assert!(e.counterexample.as_ref().unwrap().reverified, "{} -> {}", e.from, e.to);
        n += 1;
    }
    assert!(n > 30);
}

#[test]
fn sampled_three_models() {
    let r = verify_lattice(&EnumerationSpace::random(3, 3, 20_000, 11), &config(4), &[]).unwrap();
    assert_eq!(r.violations().count(), 0);
}

#[test]
fn minimum_table_is_empirical() {
    let mut spaces: Vec<_> = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]
        .into_iter()
        .map(|(m, n)| EnumerationSpace::exhaustive(m, n))
        .collect();
    spaces.push(EnumerationSpace::random(3, 3, 20_000, 2));
    for row in empirical_minimums(&spaces, &config(4)).unwrap() {
        assert!(row.agrees, "{} -> {}: table {} empirical {}", row.from, row.to, row.table, row.empirical);
    }
}

#[test]
fn json_is_independent_of_workers() {
    let s = EnumerationSpace::exhaustive(1, 4);
    let a = report_json(&verify_lattice(&s, &config(1), &[]).unwrap());
    let b = report_json(&verify_lattice(&s, &config(7), &[]).unwrap());
    assert_eq!(a, b);
}
