//! Reports and bases for the golden graphs must match the committed files
//! byte for byte.

mod common;

use graph_ideal::groebner::{ideal_of_graph, parse_t_order};
use graph_ideal::verify::{analyze, RunConfig};

use common::{golden, golden_dir, GOLDEN};

fn committed(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap()
}

#[test]
fn invariant_reports_match() {
    for name in GOLDEN {
        let a = analyze(&golden(name), &RunConfig::default()).unwrap();
        assert!(a.passed(), "{name}: {:?}", a.failures());
        let text = serde_json::to_string_pretty(&a.report()).unwrap() + "\n";
        assert_eq!(text, committed(&format!("{name}.report.json")), "{name}");
    }
}

#[test]
fn bridged_triangles_basis_matches() {
    let g = golden("bridged_triangles");
    let order = parse_t_order("12>23>13>34>45>56>46", &g).unwrap();
    let gb = ideal_of_graph(&g, 3, Some(&order)).unwrap();
    let text = serde_json::to_string_pretty(&gb.to_json()).unwrap() + "\n";
    assert_eq!(text, committed("bridged_triangles.ideal.json"));
}

#[test]
fn golden_values() {
    // (name, reg, degree, mu)
    for (name, reg, degree, mu) in [
        ("single_edge", 1, 1, 1),
        ("c4", 2, 4, 2),
        ("c6", 3, 16, 3),
        ("k3", 3, 4, 1),
        ("k23", 3, 8, 3),
        ("bridged_triangles", 4, 32, 3),
        ("bipartite_hamiltonian", 3, 16, 3),
        ("forest6", 6, 32, 6),
        ("theta", 4, 32, 4),
    ] {
        let r = analyze(&golden(name), &RunConfig::default()).unwrap().report();
        assert_eq!((r.reg, r.degree, r.mu), (reg, degree, mu), "{name}");
    }
}
