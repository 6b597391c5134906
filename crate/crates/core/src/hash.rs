//! Shallow quantum hashing on a cactus device.
//!
//! The hashing operator `U_s` rotates one target qubit by `CRy(ξ_j)` from
//! every control qubit `j`. On a device the target walks a shortest
//! 1-covering path by SWAPs and picks up each control from a neighbouring
//! vertex. Odd applications walk the path forward, even ones replay the gate
//! list backwards, and the two rotations that meet at every boundary are
//! merged into one.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{cnot_cost, Circuit, CostReport, Gate};
use crate::covering::{solve_cactus, CoveringPath};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::{check_good_set, fingerprint_value};

/// How the coefficients turn into fingerprints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    /// One fingerprint per coefficient.
    Plain,
    /// One coefficient per control qubit; fingerprints are all subset sums.
    Shallow,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HashParams {
    pub p: u64,
    pub epsilon: f64,
    /// `⌈(2/ε) ln 2p⌉`
    pub t: usize,
    pub coefficients: Vec<u64>,
    pub kind: SetKind,
}

/// Fingerprint count for modulus `p` and error bound `epsilon`.
pub fn fingerprint_count(p: u64, epsilon: f64) -> usize {
    ((2.0 / epsilon) * (2.0 * p as f64).ln()).ceil() as usize
}

/// Control qubits needed to address `fingerprint_count` states.
pub fn control_count(p: u64, epsilon: f64) -> usize {
    let t = fingerprint_count(p, epsilon).max(1);
    (usize::BITS - (t - 1).leading_zeros()) as usize
}

fn check_search_args(p: u64, epsilon: f64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("modulus p = {p} must be at least 2")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 0.5)")));
    }
    Ok(())
}

impl HashParams {
    /// Residues the fingerprint test sums cosines over.
    pub fn fingerprints(&self) -> Vec<u64> {
        match self.kind {
            SetKind::Plain => self.coefficients.clone(),
            SetKind::Shallow => {
                let c = self.coefficients.len();
                (0..1u64 << c)
                    .map(|x| {
                        (0..c).filter(|&j| x >> j & 1 == 1).map(|j| self.coefficients[j]).sum::<u64>() % self.p
                    })
                    .collect()
            }
        }
    }

    /// `CRy` angle for coefficient `k`; the target amplitude becomes `cos(2πk/p)`.
    pub fn angle(&self, k: u64) -> f64 {
        4.0 * PI * k as f64 / self.p as f64
    }

    /// Angle of the `index`-th control, reusing coefficients cyclically.
    pub fn control_angle(&self, index: usize) -> f64 {
        self.angle(self.coefficients[index % self.coefficients.len()])
    }

    pub fn is_good(&self) -> bool {
        check_good_set(&self.fingerprints(), self.p, self.epsilon).good
    }

    /// Acceptance probability after `l` letters, from the fingerprint sum.
    pub fn closed_form_accept(&self, l: u64) -> f64 {
        fingerprint_value(&self.fingerprints(), self.p, l % self.p)
    }
}

/// Random search for a good set of `t` coefficients.
pub fn find_good_set(p: u64, epsilon: f64, seed: u64, max_trials: usize) -> Result<HashParams> {
    check_search_args(p, epsilon)?;
    let t = fingerprint_count(p, epsilon);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_trials {
        let coefficients: Vec<u64> = (0..t).map(|_| rng.gen_range(1..p)).collect();
        if check_good_set(&coefficients, p, epsilon).good {
            return Ok(HashParams { p, epsilon, t, coefficients, kind: SetKind::Plain });
        }
    }
    Err(Error::SearchExhausted { trials: max_trials })
}

/// Random search for per-control coefficients whose subset sums form a good set.
pub fn find_shallow_good_set(
    p: u64,
    epsilon: f64,
    controls: usize,
    seed: u64,
    max_trials: usize,
) -> Result<HashParams> {
    check_search_args(p, epsilon)?;
    if controls == 0 || controls > 20 {
        return Err(Error::InvalidParameter(format!("control count {controls} out of range 1..=20")));
    }
    let t = fingerprint_count(p, epsilon);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_trials {
        let coefficients: Vec<u64> = (0..controls).map(|_| rng.gen_range(1..p)).collect();
        let params = HashParams { p, epsilon, t, coefficients, kind: SetKind::Shallow };
        if params.is_good() {
            return Ok(params);
        }
    }
    Err(Error::SearchExhausted { trials: max_trials })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

/// One application of `U_s` along `path`. `angles[q]` belongs to the qubit
/// that starts on vertex `q`. A forward application starts from the identity
/// layout with the target on the first path vertex; a reverse one replays
/// the forward gates backwards from the forward end layout.
pub fn construct_for_path(g: &Graph, path: &CoveringPath, angles: &[f64], direction: Direction) -> Result<Circuit> {
    let n = g.n();
    let walk = &path.vertices;
    if walk.is_empty() || angles.len() != n {
        return Err(Error::InvalidParameter("need a nonempty path and one angle per vertex".into()));
    }
    let mut circuit = Circuit::on_device(g);
    let mut occupant: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[walk[0]] = true;
    let mut remaining = vec![0usize; n];
    for &v in walk {
        remaining[v] += 1;
    }
    for (j, &cur) in walk.iter().enumerate() {
        remaining[cur] -= 1;
        let next = walk.get(j + 1).copied();
        for &v in g.neighbors(cur) {
            let q = occupant[v];
            if Some(v) == next || used[q] || remaining[v] > 0 {
                continue;
            }
            circuit.push(Gate::Cry { control: v, target: cur, theta: angles[q] })?;
            used[q] = true;
        }
        if let Some(nx) = next {
            let q = occupant[nx];
            if !used[q] {
                circuit.push(Gate::Cry { control: nx, target: cur, theta: angles[q] })?;
                used[q] = true;
            }
            circuit.push(Gate::Swap { a: cur, b: nx })?;
            occupant.swap(cur, nx);
        }
    }
    if let Some(vertex) = used.iter().position(|u| !u) {
        return Err(Error::PathNotCovering { vertex });
    }
    match direction {
        Direction::Forward => Ok(circuit),
        Direction::Reverse => {
            let initial_layout = circuit.final_layout();
            let mut gates = circuit.gates.clone();
            gates.reverse();
            let mut rev = circuit.with_gates(gates);
            rev.initial_layout = initial_layout;
            Ok(rev)
        }
    }
}

/// `(3k + 2(n − k'))ℓ − 5ℓ + 2` with `k` the path element count.
pub fn theorem1_cost(n: usize, k: usize, k_distinct: usize, l: usize) -> i64 {
    let (n, k, kd, l) = (n as i64, k as i64, k_distinct as i64, l as i64);
    (3 * k + 2 * (n - kd)) * l - 5 * l + 2
}

/// Single application without merging: `3·len(P) + 2·|B_P|`.
pub fn unmerged_application_cost(path_length: usize, fringe: usize) -> i64 {
    3 * path_length as i64 + 2 * fringe as i64
}

/// Cost of the visit-every-vertex routing for a walk of the given length.
pub fn visiting_walk_cost(walk_length: usize) -> i64 {
    3 * (walk_length as i64 - 2) + 4
}

/// Corollary-1 style interval `[2nℓ − 4ℓ + 2, 6nℓ − 7ℓ + 2]`.
pub fn cost_interval(n: usize, l: usize) -> (i64, i64) {
    let (n, l) = (n as i64, l as i64);
    (2 * n * l - 4 * l + 2, 6 * n * l - 7 * l + 2)
}

#[derive(Clone, Debug)]
pub struct HashSynthesisResult {
    pub circuit: Circuit,
    pub path: CoveringPath,
    pub cost: CostReport,
    /// Vertex the target qubit starts on.
    pub target_start: usize,
    pub l: usize,
}

/// Angles per vertex: controls in ascending vertex order take the
/// coefficients in turn; the target's slot is unused.
pub fn vertex_angles(n: usize, target: usize, params: &HashParams) -> Vec<f64> {
    let mut angles = vec![0.0; n];
    for (i, v) in (0..n).filter(|&v| v != target).enumerate() {
        angles[v] = params.control_angle(i);
    }
    angles
}

/// `ℓ` alternating applications along `path`, merging boundary rotations.
pub fn synthesize_on_path(g: &Graph, path: &CoveringPath, l: usize, angles: &[f64]) -> Result<Circuit> {
    let forward = construct_for_path(g, path, angles, Direction::Forward)?;
    let reverse = construct_for_path(g, path, angles, Direction::Reverse)?;
    let mut gates: Vec<Gate> = Vec::new();
    for app in 0..l {
        let part = if app % 2 == 0 { &forward.gates } else { &reverse.gates };
        let mut rest = part.as_slice();
        if let (Some(Gate::Cry { control, target, theta }), Some(Gate::Cry { control: c2, target: t2, theta: th2 })) =
            (gates.last().copied(), part.first().copied())
        {
            if control == c2 && target == t2 {
                gates.pop();
                gates.push(Gate::Cry { control, target, theta: theta + th2 });
                rest = &part[1..];
            }
        }
        gates.extend_from_slice(rest);
    }
    let mut circuit = Circuit::on_device(g);
    circuit.extend(gates)?;
    Ok(circuit)
}

/// Solves the covering path once and builds `ℓ ≥ 1` applications of `U_s`.
pub fn synthesize_hash(g: &Graph, l: usize, params: &HashParams) -> Result<HashSynthesisResult> {
    if l == 0 {
        return Err(Error::InvalidParameter("application count must be at least 1".into()));
    }
    let path = solve_cactus(g)?;
    synthesize_hash_on_path(g, path, l, params)
}

pub fn synthesize_hash_on_path(
    g: &Graph,
    path: CoveringPath,
    l: usize,
    params: &HashParams,
) -> Result<HashSynthesisResult> {
    let target_start = path.vertices[0];
    let angles = vertex_angles(g.n(), target_start, params);
    let circuit = synthesize_on_path(g, &path, l, &angles)?;
    let cnot_count = cnot_cost(&circuit);
    let (k, kd) = (path.k(), path.distinct());
    let (lo, hi) = cost_interval(g.n(), l);
    let formula_value = theorem1_cost(g.n(), k, kd, l);
    let parameters = BTreeMap::from([
        ("n".to_string(), g.n() as i64),
        ("k".to_string(), k as i64),
        ("k_distinct".to_string(), kd as i64),
        ("l".to_string(), l as i64),
        ("fringe".to_string(), path.fringe(g).len() as i64),
        ("unmerged_application".to_string(), unmerged_application_cost(path.length(), path.fringe(g).len())),
    ]);
    let bounds = vec![
        crate::circuit::BoundCheck {
            name: "theorem1_exact".into(),
            value: formula_value,
            holds: cnot_count as i64 == formula_value,
        },
        crate::circuit::BoundCheck { name: "corollary1_lower".into(), value: lo, holds: formula_value >= lo },
        crate::circuit::BoundCheck { name: "corollary1_upper".into(), value: hi, holds: formula_value <= hi },
    ];
    let cost = CostReport { cnot_count, formula_name: "theorem1".into(), formula_value, parameters, bounds };
    Ok(HashSynthesisResult { circuit, path, cost, target_start, l })
}

/// Logical reference: `CRy(ℓ·ξ_q)` from every control onto the target.
pub fn reference_hash_circuit(n: usize, target: usize, angles: &[f64], l: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for v in (0..n).filter(|&v| v != target) {
        c.push(Gate::Cry { control: v, target, theta: angles[v] * l as f64 }).expect("valid reference gate");
    }
    c
}

#[derive(Clone, Debug)]
pub struct ModpAutomaton {
    pub circuit: Circuit,
    pub path: CoveringPath,
    /// Vertex of the target qubit at the start.
    pub target: usize,
    /// Every qubit is measured; the word is accepted on the all-zero outcome.
    pub measured: Vec<usize>,
}

/// Hadamards on the controls, `ℓ` applications of `U_s`, Hadamards on the
/// controls again at their final positions. Needs one coefficient per control.
pub fn build_modp_automaton(g: &Graph, l: usize, params: &HashParams) -> Result<ModpAutomaton> {
    let n = g.n();
    if params.coefficients.len() + 1 != n {
        return Err(Error::InvalidParameter(format!(
            "{} coefficients for {} control qubits",
            params.coefficients.len(),
            n.saturating_sub(1)
        )));
    }
    let path = solve_cactus(g)?;
    let target = path.vertices[0];
    let controls: Vec<usize> = (0..n).filter(|&v| v != target).collect();
    let mut circuit = Circuit::on_device(g);
    circuit.extend(controls.iter().map(|&q| Gate::H { q }))?;
    if l > 0 {
        let angles = vertex_angles(n, target, params);
        let body = synthesize_on_path(g, &path, l, &angles)?;
        circuit.extend(body.gates)?;
    }
    let layout = circuit.final_layout();
    circuit.extend(controls.iter().map(|&q| Gate::H { q: layout[q] }))?;
    Ok(ModpAutomaton { circuit, path, target, measured: (0..n).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn flat(n: usize) -> Vec<f64> {
        (0..n).map(|i| 0.1 + i as f64).collect()
    }

    fn count(c: &Circuit, f: impl Fn(&Gate) -> bool) -> usize {
        c.count(f)
    }

    #[test]
    fn star_uses_only_rotations() {
        let g = star(5);
        let c = construct_for_path(&g, &CoveringPath::new(vec![0]), &flat(6), Direction::Forward).unwrap();
        assert_eq!(count(&c, |g| matches!(g, Gate::Cry { target: 0, .. })), 5);
        assert_eq!(count(&c, |g| matches!(g, Gate::Swap { .. })), 0);
    }

    #[test]
    fn line_of_three_from_middle() {
        let g = line(3);
        let c = construct_for_path(&g, &CoveringPath::new(vec![1]), &flat(3), Direction::Forward).unwrap();
        assert_eq!(c.gates.len(), 2);
        assert!(c.gates.iter().all(|g| matches!(g, Gate::Cry { target: 1, .. })));
    }

    #[test]
    fn chain_path_controls_each_vertex_once() {
        let g = chain_of_four_cycles(3);
        let path = solve_cactus(&g).unwrap();
        let c = construct_for_path(&g, &path, &flat(10), Direction::Forward).unwrap();
        assert_eq!(count(&c, |g| matches!(g, Gate::Swap { .. })), 4);
        assert_eq!(count(&c, |g| matches!(g, Gate::Cry { .. })), 9);
    }

    #[test]
    fn rejects_non_covering_path() {
        let g = line(4);
        let err = construct_for_path(&g, &CoveringPath::new(vec![0]), &flat(4), Direction::Forward).unwrap_err();
        assert!(matches!(err, Error::PathNotCovering { vertex: 2 }));
    }

    #[test]
    fn theorem1_examples() {
        assert_eq!(theorem1_cost(5, 1, 1, 1), 8);
        for n in 3..9 {
            for l in 1..5 {
                assert_eq!(theorem1_cost(n, 1, 1, l), cost_interval(n, l).0);
                assert_eq!(theorem1_cost(n, 2 * n - 2, n - 2, l), cost_interval(n, l).1);
            }
        }
    }

    #[test]
    fn star_cost_matches_interval_low_end() {
        let params = HashParams { p: 5, epsilon: 0.3, t: 1, coefficients: vec![1, 2], kind: SetKind::Plain };
        for l in 1..5 {
            let r = synthesize_hash(&star(4), l, &params).unwrap();
            assert_eq!(r.cost.cnot_count as i64, cost_interval(5, l).0);
            assert!(r.cost.exact());
        }
    }

    #[test]
    fn good_set_search() {
        assert!(matches!(find_good_set(2, 0.4, 1, 50), Err(Error::SearchExhausted { trials: 50 })));
        let params = find_good_set(17, 0.25, 7, 1000).unwrap();
        assert_eq!(params.coefficients.len(), 29);
        assert!(check_good_set(&params.coefficients, 17, 0.25).good);
        assert_eq!(find_good_set(17, 0.25, 7, 1000).unwrap(), params);
        assert!(find_good_set(17, 0.7, 7, 10).is_err());
    }

    #[test]
    fn control_counts() {
        assert_eq!(fingerprint_count(17, 0.25), 29);
        assert_eq!(control_count(17, 0.25), 5);
        assert_eq!(fingerprint_count(5, 0.25), 19);
        assert_eq!(control_count(5, 0.25), 5);
    }
}
