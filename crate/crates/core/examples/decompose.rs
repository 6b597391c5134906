//! Lowering composite gates to basic ones and cancelling CNOT pairs.
//!
//! cargo run --example decompose

use cactus_synth::circuit::{cancel_adjacent_cnots, decompose, Circuit, Gate};
use cactus_synth::sim::{equiv_up_to_permutation, unitary_of};

fn main() -> cactus_synth::Result<()> {
    let mut c = Circuit::new(3);
    c.extend([
        Gate::H { q: 0 },
        Gate::Cry { control: 1, target: 0, theta: 0.9 },
        Gate::Swap { a: 0, b: 1 },
        Gate::Crd { control: 2, target: 1, d: 3 },
        Gate::Swap { a: 1, b: 2 },
    ])?;
    let lowered = decompose(&c);
    let cancelled = cancel_adjacent_cnots(&lowered);
    println!("{} gates, {} after decompose ({} CNOTs), {} CNOTs after cancellation",
        c.len(), lowered.len(), lowered.cnot_count(), cancelled.cnot_count());

    let identity: Vec<usize> = (0..3).collect();
    let e = equiv_up_to_permutation(&unitary_of(&cancelled)?, &unitary_of(&c)?, &identity, 1e-12);
    println!("same unitary up to phase: {} (deviation {:.1e})", e.equivalent, e.deviation);
    print!("{}", c.to_qasm());
    Ok(())
}
