//! Gate-level circuits over physical qubits.
//!
//! Two-qubit gates list the control first. `Rz` follows the matrix
//! `diag(e^{iθ/2}, e^{-iθ/2})`, the opposite sign of OpenQASM's `rz`; the
//! emitter compensates. `Crd { d }` is `diag(1, 1, 1, e^{iπ/2^(d-1)})`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum Gate {
    H { q: usize },
    X { q: usize },
    Ry { q: usize, theta: f64 },
    Rz { q: usize, theta: f64 },
    Rk { q: usize, d: u32 },
    Cnot { control: usize, target: usize },
    Cry { control: usize, target: usize, theta: f64 },
    Crz { control: usize, target: usize, theta: f64 },
    Crd { control: usize, target: usize, d: u32 },
    Swap { a: usize, b: usize },
}

/// Phase of `R_k` / `CR_k` for order `d`.
pub fn phase_of_order(d: u32) -> f64 {
    std::f64::consts::PI / 2f64.powi(d as i32 - 1)
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H { q } | Gate::X { q } | Gate::Ry { q, .. } | Gate::Rz { q, .. } | Gate::Rk { q, .. } => {
                vec![q]
            }
            Gate::Cnot { control, target }
            | Gate::Cry { control, target, .. }
            | Gate::Crz { control, target, .. }
            | Gate::Crd { control, target, .. } => vec![control, target],
            Gate::Swap { a, b } => vec![a, b],
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    pub fn is_basic(&self) -> bool {
        matches!(self, Gate::H { .. } | Gate::X { .. } | Gate::Ry { .. } | Gate::Rz { .. } | Gate::Cnot { .. })
    }

    /// Unordered qubit pair of a controlled rotation or phase.
    fn controlled_pair(&self) -> Option<(usize, usize)> {
        match *self {
            Gate::Cry { control, target, .. }
            | Gate::Crz { control, target, .. }
            | Gate::Crd { control, target, .. } => Some((control, target)),
            _ => None,
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::InvalidParameter(format!("qubit {q} out of range 0..{num_qubits}")));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidParameter(format!("two-qubit gate on a single qubit {}", qs[0])));
        }
        match *self {
            Gate::Ry { theta, .. } | Gate::Rz { theta, .. } | Gate::Cry { theta, .. } | Gate::Crz { theta, .. }
                if !theta.is_finite() =>
            {
                Err(Error::InvalidParameter("non-finite angle".into()))
            }
            Gate::Rk { d: 0, .. } | Gate::Crd { d: 0, .. } => {
                Err(Error::InvalidParameter("phase order must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

fn same_pair(a: (usize, usize), b: (usize, usize)) -> bool {
    a == b || a == (b.1, b.0)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    /// Physical position of each logical qubit before the first gate.
    pub initial_layout: Vec<usize>,
    #[serde(skip)]
    device: Option<Graph>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits
            && self.gates == other.gates
            && self.initial_layout == other.initial_layout
    }
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new(), initial_layout: (0..num_qubits).collect(), device: None }
    }

    /// Circuit whose two-qubit gates are checked against `device` on push.
    pub fn on_device(device: &Graph) -> Self {
        Circuit { device: Some(device.clone()), ..Circuit::new(device.n()) }
    }

    pub fn device(&self) -> Option<&Graph> {
        self.device.as_ref()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        if let (Some(dev), [a, b]) = (&self.device, gate.qubits().as_slice()) {
            if !dev.has_edge(*a, *b) {
                return Err(Error::NotAdjacent { a: *a, b: *b });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Same qubits, layout and device, different gates.
    pub fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit { gates, ..self.clone() }
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count(|g| matches!(g, Gate::Cnot { .. }))
    }

    /// Logical-to-physical map after every gate (entry 0 is the initial layout).
    pub fn layout_trace(&self) -> Vec<Vec<usize>> {
        let mut layout = self.initial_layout.clone();
        let mut at: Vec<usize> = inverse(&layout);
        let mut trace = vec![layout.clone()];
        for gate in &self.gates {
            if let Gate::Swap { a, b } = *gate {
                let (la, lb) = (at[a], at[b]);
                layout.swap(la, lb);
                at.swap(a, b);
            }
            trace.push(layout.clone());
        }
        trace
    }

    /// Final physical position of each logical qubit.
    pub fn final_layout(&self) -> Vec<usize> {
        self.layout_trace().pop().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        let c: Circuit = serde_json::from_str(text)?;
        let mut checked = Circuit { gates: Vec::new(), ..c.clone() };
        checked.extend(c.gates)?;
        Ok(checked)
    }

    /// OpenQASM 2 text over basic gates.
    pub fn to_qasm(&self) -> String {
        let basic = cancel_adjacent_cnots(&decompose(self));
        let mut out = String::new();
        writeln!(out, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{}];", self.num_qubits).unwrap();
        for gate in &basic.gates {
            match *gate {
                Gate::H { q } => writeln!(out, "h q[{q}];"),
                Gate::X { q } => writeln!(out, "x q[{q}];"),
                Gate::Ry { q, theta } => writeln!(out, "ry({theta:.17}) q[{q}];"),
                Gate::Rz { q, theta } => writeln!(out, "rz({:.17}) q[{q}];", -theta),
                Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
                _ => unreachable!("decompose leaves only basic gates"),
            }
            .unwrap();
        }
        out
    }
}

/// Inverse of a permutation given as `perm[i] = j`.
pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn cx(control: usize, target: usize) -> Gate {
    Gate::Cnot { control, target }
}

/// Rotation pieces of a controlled gate: `(before, between, after)` around
/// its two CNOTs in the standard order.
fn controlled_parts(gate: &Gate) -> (usize, usize, Vec<Gate>, Vec<Gate>) {
    match *gate {
        Gate::Cry { control, target, theta } => (
            control,
            target,
            vec![Gate::Ry { q: target, theta: theta / 2.0 }],
            vec![Gate::Ry { q: target, theta: -theta / 2.0 }],
        ),
        Gate::Crz { control, target, theta } => (
            control,
            target,
            vec![Gate::Rz { q: target, theta: theta / 2.0 }],
            vec![Gate::Rz { q: target, theta: -theta / 2.0 }],
        ),
        Gate::Crd { control, target, d } => {
            let phi = phase_of_order(d);
            (
                control,
                target,
                vec![Gate::Rz { q: control, theta: -phi / 2.0 }, Gate::Rz { q: target, theta: -phi / 2.0 }],
                vec![Gate::Rz { q: target, theta: phi / 2.0 }],
            )
        }
        _ => unreachable!("not a controlled rotation"),
    }
}

/// `before, CX, between, CX`: ends on a CNOT so a following SWAP can absorb it.
fn controlled_standard(gate: &Gate, out: &mut Vec<Gate>) {
    let (c, t, before, between) = controlled_parts(gate);
    out.extend(before);
    out.push(cx(c, t));
    out.extend(between);
    out.push(cx(c, t));
}

/// `CX, between, CX, before`: starts on a CNOT so a preceding SWAP can absorb it.
fn controlled_mirrored(gate: &Gate, out: &mut Vec<Gate>) {
    let (c, t, before, between) = controlled_parts(gate);
    out.push(cx(c, t));
    out.extend(between);
    out.push(cx(c, t));
    out.extend(before);
}

fn swap_as_cnots(a: usize, b: usize, out: &mut Vec<Gate>) {
    out.extend([cx(a, b), cx(b, a), cx(a, b)]);
}

/// Lowers every gate to {H, X, Ry, Rz, CNOT}. A controlled gate next to a
/// SWAP on the same pair is oriented so the shared CNOT cancels afterwards.
pub fn decompose(c: &Circuit) -> Circuit {
    let gates = &c.gates;
    let mut out = Vec::with_capacity(gates.len() * 4);
    for (i, gate) in gates.iter().enumerate() {
        let prev = i.checked_sub(1).map(|j| &gates[j]);
        let next = gates.get(i + 1);
        match *gate {
            Gate::Rk { q, d } => out.push(Gate::Rz { q, theta: -phase_of_order(d) }),
            Gate::Cry { .. } | Gate::Crz { .. } | Gate::Crd { .. } => {
                let pair = gate.controlled_pair().unwrap();
                let after_swap = matches!(prev, Some(&Gate::Swap { a, b }) if same_pair((a, b), pair));
                if after_swap {
                    controlled_mirrored(gate, &mut out);
                } else {
                    controlled_standard(gate, &mut out);
                }
            }
            Gate::Swap { a, b } => {
                let partner = prev
                    .and_then(Gate::controlled_pair)
                    .filter(|&p| same_pair(p, (a, b)))
                    .or_else(|| next.and_then(Gate::controlled_pair).filter(|&p| same_pair(p, (a, b))));
                let (x, y) = partner.unwrap_or((a, b));
                swap_as_cnots(x, y, &mut out);
            }
            basic => out.push(basic),
        }
    }
    c.with_gates(out)
}

/// Removes pairs of identical CNOTs with no gate on either qubit in between,
/// repeating until nothing changes.
pub fn cancel_adjacent_cnots(c: &Circuit) -> Circuit {
    let mut gates: Vec<Gate> = c.gates.clone();
    loop {
        let mut removed = vec![false; gates.len()];
        let mut changed = false;
        for i in 0..gates.len() {
            let Gate::Cnot { control, target } = gates[i] else { continue };
            if removed[i] {
                continue;
            }
            for j in i + 1..gates.len() {
                if removed[j] {
                    continue;
                }
                let g = &gates[j];
                if *g == gates[i] {
                    removed[i] = true;
                    removed[j] = true;
                    changed = true;
                    break;
                }
                if g.touches(control) || g.touches(target) {
                    break;
                }
            }
        }
        if !changed {
            return c.with_gates(gates);
        }
        gates = gates.into_iter().zip(removed).filter(|(_, r)| !r).map(|(g, _)| g).collect();
    }
}

/// CNOT count after decomposition, fusion and cancellation.
pub fn cnot_cost(c: &Circuit) -> usize {
    cancel_adjacent_cnots(&decompose(c)).cnot_count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub cnot_count: usize,
    pub formula_name: String,
    pub formula_value: i64,
    pub parameters: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundCheck>,
}

impl CostReport {
    pub fn exact(&self) -> bool {
        self.cnot_count as i64 == self.formula_value
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}
