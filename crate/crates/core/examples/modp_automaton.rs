//! MOD_p automaton: acceptance probability of a^l for l = 0..2p.
//!
//! cargo run --example modp_automaton

use cactus_synth::graph::random_cactus;
use cactus_synth::hash::{build_modp_automaton, control_count, find_shallow_good_set};
use cactus_synth::sim::Statevector;

fn main() -> cactus_synth::Result<()> {
    let (p, epsilon) = (17, 0.25);
    let controls = control_count(p, epsilon);
    let params = find_shallow_good_set(p, epsilon, controls, 5, 10_000)?;
    println!("p = {p}, epsilon = {epsilon}, coefficients {:?}", params.coefficients);

    let g = random_cactus(controls + 1, 2);
    println!("device edges {:?}", g.edges());
    for l in 0..=2 * p {
        let automaton = build_modp_automaton(&g, l as usize, &params)?;
        let mut state = Statevector::zero(g.n())?;
        state.run(&automaton.circuit);
        let accept = state.probability(0);
        let bar = "#".repeat((accept * 40.0).round() as usize);
        println!("l = {l:>2}  accept {accept:.6}  closed form {:.6}  {bar}", params.closed_form_accept(l));
    }
    Ok(())
}
