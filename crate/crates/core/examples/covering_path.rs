//! Shortest 1-covering paths on a few cacti, checked against brute force.
//!
//! cargo run --example covering_path

use cactus_synth::covering::{brute_force_oracle, solve_cactus};
use cactus_synth::graph::families::{chain_of_four_cycles, cycle, line, star};
use cactus_synth::graph::random_cactus;

fn main() -> cactus_synth::Result<()> {
    let named = [
        ("chain of 3 four-cycles", chain_of_four_cycles(3)),
        ("star with 6 leaves", star(6)),
        ("line of 9", line(9)),
        ("cycle of 7", cycle(7)),
    ];
    for (name, g) in &named {
        let p = solve_cactus(g)?;
        println!("{name:>24}: {:?}  length {}  fringe {:?}", p.vertices, p.length(), p.fringe(g));
    }

    println!();
    for seed in 0..8 {
        let g = random_cactus(12, seed);
        let fast = solve_cactus(&g)?;
        let slow = brute_force_oracle(&g)?;
        println!("seed {seed}: solver {:>2}  oracle {:>2}  walk {:?}", fast.length(), slow.length(), fast.vertices);
    }
    Ok(())
}
