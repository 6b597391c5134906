//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::f64::consts::PI;

use cactus_synth::graph::{random_cactus, Graph};
use cactus_synth::sim::UnitaryMatrix;
use num_complex::Complex64;

/// The seeded corpus: 242 cacti, n cycling through 4..=14.
pub fn corpus() -> Vec<Graph> {
    (0..242u64).map(|i| random_cactus(4 + (i % 11) as usize, 7_000 + i)).collect()
}

fn closed_neighbourhood(g: &Graph, v: usize) -> u32 {
    g.neighbors(v).iter().fold(1 << v, |m, &u| m | (1 << u))
}

/// BFS over (position, mask). `grow` yields the mask gained on arriving at a vertex.
fn bfs_walk_length(g: &Graph, grow: impl Fn(usize) -> u32) -> usize {
    let n = g.n();
    assert!(n <= 16);
    let full = (1u32 << n) - 1;
    let mut seen = vec![false; n << n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        let m = grow(v);
        if m == full {
            return 0;
        }
        seen[(v << n) | m as usize] = true;
        queue.push_back((v, m, 0usize));
    }
    while let Some((v, m, d)) = queue.pop_front() {
        for &u in g.neighbors(v) {
            let m2 = m | grow(u);
            if m2 == full {
                return d + 1;
            }
            let key = (u << n) | m2 as usize;
            if !seen[key] {
                seen[key] = true;
                queue.push_back((u, m2, d + 1));
            }
        }
    }
    unreachable!("graph is connected")
}

/// Length of a shortest walk whose closed neighbourhood is all of V.
pub fn covering_length(g: &Graph) -> usize {
    bfs_walk_length(g, |v| closed_neighbourhood(g, v))
}

/// Length of a shortest walk through every vertex.
pub fn visiting_length(g: &Graph) -> usize {
    bfs_walk_length(g, |v| 1 << v)
}

pub fn hash_cost(n: usize, k: usize, distinct: usize, l: usize) -> i64 {
    let (n, k, d, l) = (n as i64, k as i64, distinct as i64, l as i64);
    3 * k * l + 2 * (n - d) * l - 5 * l + 2
}

/// Target Ry by `l · Σ angles[v]` over the set control bits, everything else untouched.
pub fn hash_unitary(n: usize, target: usize, angles: &[f64], l: usize) -> UnitaryMatrix {
    let tb = 1usize << target;
    UnitaryMatrix::from_fn(1 << n, |r, k| {
        if r & !tb != k & !tb {
            return Complex64::new(0.0, 0.0);
        }
        let a: f64 = (0..n).filter(|&v| v != target && k >> v & 1 == 1).map(|v| angles[v]).sum::<f64>() * l as f64;
        let (c, s) = ((a / 2.0).cos(), (a / 2.0).sin());
        let v = match (k & tb != 0, r & tb != 0) {
            (false, false) | (true, true) => c,
            (false, true) => s,
            (true, false) => -s,
        };
        Complex64::new(v, 0.0)
    })
}

/// `ω^{jk} / √N`.
pub fn dft(n: usize) -> UnitaryMatrix {
    let dim = 1usize << n;
    UnitaryMatrix::from_fn(dim, |j, k| {
        Complex64::from_polar(1.0 / (dim as f64).sqrt(), 2.0 * PI * (j * k % dim) as f64 / dim as f64)
    })
}

/// `|mean over control patterns x of cos(l · Σ x_i ξ_i / 2)|²` with `ξ_i = 4π k_i / p`.
pub fn modp_accept(coefficients: &[u64], p: u64, l: u64) -> f64 {
    let c = coefficients.len();
    let mut total = 0.0;
    for x in 0..1usize << c {
        let s: u64 = (0..c).filter(|&i| x >> i & 1 == 1).map(|i| coefficients[i]).sum();
        total += (2.0 * PI * ((s * l) % p) as f64 / p as f64).cos();
    }
    (total / (1 << c) as f64).powi(2)
}
