//! QFT on cactus devices: cost against the bounds, and a unitary check.
//!
//! cargo run --example qft_circuit

use cactus_synth::graph::families::{chain_of_four_cycles, complete, line};
use cactus_synth::graph::random_cactus;
use cactus_synth::qft::{synthesize_qft, verify_qft};
use cactus_synth::sim::DEFAULT_TOLERANCE;

fn main() -> cactus_synth::Result<()> {
    let devices = [
        ("K5", complete(5)),
        ("line 6", line(6)),
        ("chain of 2 four-cycles", chain_of_four_cycles(2)),
        ("random cactus n=8", random_cactus(8, 4)),
    ];
    for (name, g) in &devices {
        let r = synthesize_qft(g)?;
        let e = verify_qft(&r, DEFAULT_TOLERANCE)?;
        println!("{name}: {} CNOTs, K = {}, placement {:?}", r.cost.cnot_count, r.plan.k_sum(), r.plan.s);
        for b in &r.cost.bounds {
            println!("    {:<18} {:>4}  {}", b.name, b.value, if b.holds { "ok" } else { "exceeded" });
        }
        println!("    matches QFT: {} (deviation {:.1e})", e.equivalent, e.deviation);
    }
    Ok(())
}
