mod common;

use cactus_synth::covering::{shortest_visiting_walk, solve_cactus};
use cactus_synth::graph::{families, validate_cactus, Graph};
use cactus_synth::hash::{unmerged_application_cost, visiting_walk_cost};

fn load(name: &str) -> Graph {
    let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Graph::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bundled_graphs_are_cacti() {
    for name in ["fig3", "chain4", "chain5", "star5", "line6", "cycle5", "k1", "random8"] {
        let g = load(name);
        assert!(validate_cactus(&g).is_ok(), "{name}");
        assert_eq!(solve_cactus(&g).unwrap().length(), common::covering_length(&g), "{name}");
    }
}

#[test]
fn family_files_match_generators() {
    assert_eq!(load("fig3"), families::chain_of_four_cycles(3));
    assert_eq!(load("chain4"), families::chain_of_four_cycles(4));
    assert_eq!(load("chain5"), families::chain_of_four_cycles(5));
    assert_eq!(load("star5"), families::star(4));
    assert_eq!(load("line6"), families::line(6));
    assert_eq!(load("cycle5"), families::cycle(5));
}

#[test]
fn chain_costs() {
    for (name, t, expected) in [("fig3", 3, 22), ("chain4", 4, 30), ("chain5", 5, 38)] {
        let g = load(name);
        assert_eq!(g.n(), 3 * t + 1);
        let p = solve_cactus(&g).unwrap();
        assert_eq!(p.length(), 2 * t - 2);
        assert_eq!(unmerged_application_cost(p.length(), p.fringe(&g).len()), expected);
    }
}

#[test]
fn fig3_visiting_walk() {
    let g = load("fig3");
    let walk = shortest_visiting_walk(&g).unwrap();
    assert_eq!(walk.length(), common::visiting_length(&g));
    assert_eq!(walk.length(), 10);
    assert_eq!(visiting_walk_cost(walk.length()), 28);
}

#[test]
fn small_shapes() {
    assert_eq!(solve_cactus(&load("star5")).unwrap().length(), 0);
    assert_eq!(solve_cactus(&load("cycle5")).unwrap().length(), 2);
    assert_eq!(solve_cactus(&load("line6")).unwrap().length(), 3);
    assert_eq!(solve_cactus(&load("k1")).unwrap().vertices, vec![0]);
}
