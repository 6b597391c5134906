//! QFT synthesis on a cactus device as a sequence of cascades.
//!
//! Cascade `r` targets original qubit `r` with controlled phases from every
//! later qubit `j`, of order `j - r + 1`. The target walks a shortest
//! 1-covering path of the still-active vertices, then steps onto a
//! neighbour of the path end, which leaves the active set. A first pass
//! (`construct_s`) replays the walks to find the initial placement `S` that
//! puts qubit `r` at the start of path `r`.
//!
//! Small devices that are not cacti (complete graphs, say) are accepted and
//! routed with the exhaustive covering-path search.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{cnot_cost, BoundCheck, Circuit, CostReport, Gate};
use crate::covering::shortest_covering_path;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::{equiv_with_permutations, unitary_of, Equivalence, UnitaryMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeRecord {
    /// 0-based cascade index, equal to the target qubit.
    pub r: usize,
    pub path: Vec<usize>,
    /// Vertex the target steps onto at the end, if it moves.
    pub exit: Option<usize>,
    /// Vertex that leaves the active set after this cascade.
    pub excluded: usize,
    /// Exit chosen by a fallback rule: no unvisited neighbour of the path end was available.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadePlan {
    /// `s[v]`: original qubit placed on vertex `v` before the first gate.
    pub s: Vec<usize>,
    pub cascades: Vec<CascadeRecord>,
}

impl CascadePlan {
    /// `Σ len(P_r)` over the cascades that carry controls, counting path elements.
    pub fn k_sum(&self) -> usize {
        let n = self.s.len();
        self.cascades.iter().filter(|c| c.r + 1 < n).map(|c| c.path.len()).sum()
    }

    pub fn fallbacks(&self) -> usize {
        self.cascades.iter().filter(|c| c.fallback).count()
    }
}

fn connected_without(g: &Graph, active: &[bool], drop: usize) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| active[v] && v != drop).collect();
    if keep.is_empty() {
        return true;
    }
    g.induced(&keep).0.check_connected().is_ok()
}

/// Where the target leaves the path: the highest-index active neighbour of
/// the end that is off the path; else a visited neighbour whose removal keeps
/// the rest connected; else the target stays and its vertex is dropped.
fn choose_exit(g: &Graph, active: &[bool], path: &[usize], r: usize) -> Result<(Option<usize>, usize, bool)> {
    let end = *path.last().expect("nonempty path");
    let on_path = |v: usize| path.contains(&v);
    let live: Vec<usize> = g.neighbors(end).iter().copied().filter(|&v| active[v]).collect();
    if let Some(&q) = live.iter().rev().find(|&&v| !on_path(v)) {
        return Ok((Some(q), q, false));
    }
    if let Some(&q) = live.iter().rev().find(|&&v| connected_without(g, active, v)) {
        return Ok((Some(q), q, true));
    }
    if connected_without(g, active, end) {
        return Ok((None, end, true));
    }
    Err(Error::DisconnectedRemainder { cascade: r + 1 })
}

/// Covering path of the active vertices, in G labels.
fn active_path(g: &Graph, active: &[bool]) -> Result<Vec<usize>> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| active[v]).collect();
    let (sub, map) = g.induced(&keep);
    let p = shortest_covering_path(&sub)?;
    Ok(p.vertices.into_iter().map(|v| map[v]).collect())
}

/// Plans every cascade and the initial placement `S`.
pub fn construct_s(g: &Graph) -> Result<CascadePlan> {
    let n = g.n();
    g.check_connected()?;
    // a[v]: initial vertex of the content now on v
    let mut a: Vec<usize> = (0..n).collect();
    let mut s = vec![usize::MAX; n];
    let mut active = vec![true; n];
    let mut cascades = Vec::with_capacity(n);
    for r in 0..n.saturating_sub(2) {
        let path = active_path(g, &active)?;
        s[a[path[0]]] = r;
        for w in path.windows(2) {
            a.swap(w[0], w[1]);
        }
        let (exit, excluded, fallback) = choose_exit(g, &active, &path, r)?;
        if let Some(q) = exit {
            a.swap(*path.last().unwrap(), q);
        }
        active[excluded] = false;
        cascades.push(CascadeRecord { r, path, exit, excluded, fallback });
    }
    let rest: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    match rest.as_slice() {
        [t] => {
            s[a[*t]] = n - 1;
            cascades.push(CascadeRecord { r: n - 1, path: vec![*t], exit: None, excluded: *t, fallback: false });
        }
        [q, t] => {
            s[a[*q]] = n - 2;
            s[a[*t]] = n - 1;
            cascades.push(CascadeRecord { r: n - 2, path: vec![*q], exit: None, excluded: *q, fallback: false });
            cascades.push(CascadeRecord { r: n - 1, path: vec![*t], exit: None, excluded: *t, fallback: false });
        }
        _ => return Err(Error::InvalidGraph("empty graph".into())),
    }
    debug_assert!(is_permutation(&s));
    Ok(CascadePlan { s, cascades })
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Running placement while cascades are emitted.
#[derive(Clone, Debug)]
pub struct CascadeState {
    /// `t[v]`: original qubit on vertex `v`.
    pub t: Vec<usize>,
    /// `q[i]`: vertex holding original qubit `i`.
    pub q: Vec<usize>,
    pub active: Vec<bool>,
}

impl CascadeState {
    pub fn new(s: &[usize]) -> Self {
        let mut q = vec![0; s.len()];
        for (v, &i) in s.iter().enumerate() {
            q[i] = v;
        }
        CascadeState { t: s.to_vec(), q, active: vec![true; s.len()] }
    }

    fn swap(&mut self, u: usize, v: usize) {
        self.t.swap(u, v);
        self.q[self.t[u]] = u;
        self.q[self.t[v]] = v;
    }
}

/// Emits one cascade into `out` and updates `state`.
pub fn cascade_for_path(g: &Graph, rec: &CascadeRecord, state: &mut CascadeState, out: &mut Circuit) -> Result<()> {
    let r = rec.r;
    let path = &rec.path;
    assert_eq!(state.t[path[0]], r, "cascade {r} target is not at the path start");
    out.push(Gate::H { q: path[0] })?;
    let n = g.n();
    let mut used = vec![false; n];
    used[r] = true;
    let mut remaining = vec![0usize; n];
    for &v in path {
        remaining[v] += 1;
    }
    let deferred = rec.exit.filter(|q| !path.contains(q));
    for (j, &cur) in path.iter().enumerate() {
        remaining[cur] -= 1;
        let next = path.get(j + 1).copied();
        for &v in g.neighbors(cur) {
            let qb = state.t[v];
            if !state.active[v] || Some(v) == next || Some(v) == deferred || used[qb] || remaining[v] > 0 {
                continue;
            }
            out.push(Gate::Crd { control: v, target: cur, d: order(qb, r) })?;
            used[qb] = true;
        }
        if let Some(nx) = next {
            let qb = state.t[nx];
            if !used[qb] {
                out.push(Gate::Crd { control: nx, target: cur, d: order(qb, r) })?;
                used[qb] = true;
            }
            out.push(Gate::Swap { a: cur, b: nx })?;
            state.swap(cur, nx);
        }
    }
    let end = *path.last().unwrap();
    if let Some(q) = rec.exit {
        let qb = state.t[q];
        if !used[qb] {
            out.push(Gate::Crd { control: q, target: end, d: order(qb, r) })?;
            used[qb] = true;
        }
        out.push(Gate::Swap { a: end, b: q })?;
        state.swap(end, q);
    }
    let missed = (0..n).find(|&v| state.active[v] && !used[state.t[v]]);
    if let Some(vertex) = missed {
        return Err(Error::PathNotCovering { vertex });
    }
    assert_eq!(state.t[rec.excluded], r, "cascade {r} target did not land on the excluded vertex");
    state.active[rec.excluded] = false;
    Ok(())
}

fn order(control: usize, target: usize) -> u32 {
    assert!(control > target, "control {control} must follow target {target}");
    (control - target + 1) as u32
}

#[derive(Clone, Debug)]
pub struct QftSynthesis {
    pub circuit: Circuit,
    pub plan: CascadePlan,
    pub cost: CostReport,
    /// `final_position[i]`: vertex holding original qubit `i` at the end.
    pub final_position: Vec<usize>,
}

/// Theorem-3 style bound `K + n² − n − 1`.
pub fn cascade_bound(k_sum: usize, n: usize) -> i64 {
    k_sum as i64 + (n * n) as i64 - n as i64 - 1
}

/// `nk − 0.5k² − 1.5k + n² − n` with `k` the element count of a shortest covering path.
pub fn path_bound(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    n * k - 0.5 * k * k - 1.5 * k + n * n - n
}

pub fn synthesize_qft(g: &Graph) -> Result<QftSynthesis> {
    let n = g.n();
    let plan = construct_s(g)?;
    let mut state = CascadeState::new(&plan.s);
    let mut circuit = Circuit::on_device(g);
    for rec in &plan.cascades {
        cascade_for_path(g, rec, &mut state, &mut circuit)?;
    }
    let cnot_count = cnot_cost(&circuit);
    let k_sum = plan.k_sum();
    let shortest = shortest_covering_path(g)?.k();
    let (nn, cnots) = ((n * n) as i64, cnot_count as i64);
    let t3 = cascade_bound(k_sum, n);
    let c2 = path_bound(n, shortest);
    let mut bounds = vec![BoundCheck { name: "theorem2".into(), value: 2 * nn, holds: cnots <= 2 * nn }];
    if n >= 2 {
        bounds.push(BoundCheck { name: "theorem3".into(), value: t3, holds: cnots <= t3 });
        bounds.push(BoundCheck { name: "corollary2".into(), value: c2.floor() as i64, holds: cnots as f64 <= c2 + 1e-9 });
    }
    if n >= 4 {
        let (lo, hi) = (nn - 2 * n as i64 - 2, 2 * nn - 2 * n as i64 - 2);
        bounds.push(BoundCheck { name: "corollary3_lower".into(), value: lo, holds: cnots >= lo });
        bounds.push(BoundCheck { name: "corollary3_upper".into(), value: hi, holds: cnots <= hi });
    }
    let parameters = BTreeMap::from([
        ("n".to_string(), n as i64),
        ("K".to_string(), k_sum as i64),
        ("shortest_k".to_string(), shortest as i64),
        ("fallbacks".to_string(), plan.fallbacks() as i64),
    ]);
    let cost = CostReport { cnot_count, formula_name: "theorem3".into(), formula_value: t3, parameters, bounds };
    Ok(QftSynthesis { circuit, plan, cost, final_position: state.q })
}

/// Unconstrained cascade circuit: qubit `r` gets `H`, then `CR_{j-r+1}` from every `j > r`.
pub fn textbook_qft(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for r in 0..n {
        c.push(Gate::H { q: r }).unwrap();
        for j in r + 1..n {
            c.push(Gate::Crd { control: j, target: r, d: order(j, r) }).unwrap();
        }
    }
    c
}

/// `(1/√2ⁿ) e^{2πi jk / 2ⁿ}`
pub fn qft_matrix(n: usize) -> UnitaryMatrix {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    UnitaryMatrix::from_fn(dim, |j, k| {
        let angle = 2.0 * std::f64::consts::PI * ((j * k) % dim) as f64 / dim as f64;
        Complex64::from_polar(norm, angle)
    })
}

/// Qubit `i` of the textbook circuit reads input bit `n - 1 - i` and leaves output bit `i`.
pub fn textbook_input_order(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// Compares the synthesized circuit with the QFT matrix, undoing the
/// initial placement, the textbook bit order and the final SWAP layout.
pub fn verify_qft(result: &QftSynthesis, tolerance: f64) -> Result<Equivalence> {
    let n = result.circuit.num_qubits;
    let u = unitary_of(&result.circuit)?;
    let input = textbook_input_order(n);
    let pre: Vec<usize> = result.plan.s.iter().map(|&i| input[i]).collect();
    Ok(equiv_with_permutations(&u, &qft_matrix(n), &pre, &result.final_position, tolerance))
}
