//! Solver run time on growing random cacti.
//!
//! cargo run --release --example scaling

use std::time::Instant;

use cactus_synth::covering::solve_cactus;
use cactus_synth::graph::random_cactus;

fn main() -> cactus_synth::Result<()> {
    let mut last = None;
    for n in [50, 100, 200, 400, 800] {
        let g = random_cactus(n, 9);
        let start = Instant::now();
        let p = solve_cactus(&g)?;
        let secs = start.elapsed().as_secs_f64();
        let ratio = last.map(|t: f64| format!("x{:.1}", secs / t)).unwrap_or_default();
        println!("n = {n:>4}: length {:>4}  {:.3}s {ratio}", p.length(), secs);
        last = Some(secs);
    }
    Ok(())
}
