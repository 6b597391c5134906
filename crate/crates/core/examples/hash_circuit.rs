//! Hashing circuit on the three-cycle chain, with its cost accounting.
//!
//! cargo run --example hash_circuit

use cactus_synth::circuit::cnot_cost;
use cactus_synth::covering::shortest_visiting_walk;
use cactus_synth::graph::families::chain_of_four_cycles;
use cactus_synth::hash::{find_good_set, synthesize_hash, unmerged_application_cost, visiting_walk_cost};

fn main() -> cactus_synth::Result<()> {
    let g = chain_of_four_cycles(3);
    let params = find_good_set(17, 0.25, 1, 1000)?;

    for l in 1..=4 {
        let r = synthesize_hash(&g, l, &params)?;
        println!(
            "l = {l}: {} CNOTs, closed form {} ({} gates before lowering)",
            r.cost.cnot_count,
            r.cost.formula_value,
            r.circuit.len()
        );
    }

    let r = synthesize_hash(&g, 1, &params)?;
    let walk = shortest_visiting_walk(&g)?;
    println!("covering path {:?}, fringe {}", r.path.vertices, r.path.fringe(&g).len());
    println!("one application: {}", unmerged_application_cost(r.path.length(), r.path.fringe(&g).len()));
    println!("visit-every-vertex walk of length {}: {}", walk.length(), visiting_walk_cost(walk.length()));
    assert_eq!(cnot_cost(&r.circuit), 22);

    println!("\n{}", r.circuit.to_qasm());
    Ok(())
}
