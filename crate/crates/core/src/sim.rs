//! Dense statevector and unitary simulation for small circuits.
//!
//! Qubit 0 is the least significant bit of a basis index. Two-qubit gate
//! matrices are indexed by `2 * bit(first) + bit(second)`.

use num_complex::Complex64;

use crate::circuit::{phase_of_order, Circuit, Gate};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

type M2 = [[Complex64; 2]; 2];
type M4 = [[Complex64; 4]; 4];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ry(theta: f64) -> M2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

fn rz(theta: f64) -> M2 {
    [[Complex64::from_polar(1.0, theta / 2.0), c(0.0, 0.0)], [c(0.0, 0.0), Complex64::from_polar(1.0, -theta / 2.0)]]
}

fn controlled(m: M2) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    out[0][0] = c(1.0, 0.0);
    out[1][1] = c(1.0, 0.0);
    for r in 0..2 {
        for k in 0..2 {
            out[2 + r][2 + k] = m[r][k];
        }
    }
    out
}

enum Op {
    One(usize, M2),
    Two(usize, usize, M4),
}

fn op_of(gate: &Gate) -> Op {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match *gate {
        Gate::H { q } => Op::One(q, [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]),
        Gate::X { q } => Op::One(q, [[zero, one], [one, zero]]),
        Gate::Ry { q, theta } => Op::One(q, ry(theta)),
        Gate::Rz { q, theta } => Op::One(q, rz(theta)),
        Gate::Rk { q, d } => Op::One(q, [[one, zero], [zero, Complex64::from_polar(1.0, phase_of_order(d))]]),
        Gate::Cnot { control, target } => Op::Two(control, target, controlled([[zero, one], [one, zero]])),
        Gate::Cry { control, target, theta } => Op::Two(control, target, controlled(ry(theta))),
        Gate::Crz { control, target, theta } => Op::Two(control, target, controlled(rz(theta))),
        Gate::Crd { control, target, d } => Op::Two(
            control,
            target,
            controlled([[one, zero], [zero, Complex64::from_polar(1.0, phase_of_order(d))]]),
        ),
        Gate::Swap { a, b } => {
            let mut m = [[zero; 4]; 4];
            m[0][0] = one;
            m[1][2] = one;
            m[2][1] = one;
            m[3][3] = one;
            Op::Two(a, b, m)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    pub num_qubits: usize,
    pub amplitudes: Vec<Complex64>,
}

impl Statevector {
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { n: num_qubits, cap: MAX_QUBITS });
        }
        let mut amplitudes = vec![c(0.0, 0.0); 1 << num_qubits];
        amplitudes[index] = c(1.0, 0.0);
        Ok(Statevector { num_qubits, amplitudes })
    }

    pub fn apply(&mut self, gate: &Gate) {
        let s = &mut self.amplitudes;
        match op_of(gate) {
            Op::One(q, m) => {
                let bit = 1 << q;
                for i in (0..s.len()).filter(|i| i & bit == 0) {
                    let (a, b) = (s[i], s[i | bit]);
                    s[i] = m[0][0] * a + m[0][1] * b;
                    s[i | bit] = m[1][0] * a + m[1][1] * b;
                }
            }
            Op::Two(q0, q1, m) => {
                let (b0, b1) = (1 << q0, 1 << q1);
                for i in (0..s.len()).filter(|i| i & (b0 | b1) == 0) {
                    let idx = [i, i | b1, i | b0, i | b0 | b1];
                    let v = idx.map(|k| s[k]);
                    for r in 0..4 {
                        s[idx[r]] = (0..4).map(|k| m[r][k] * v[k]).sum();
                    }
                }
            }
        }
    }

    pub fn run(&mut self, circuit: &Circuit) {
        for g in &circuit.gates {
            self.apply(g);
        }
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }
}

/// Dense `2^n x 2^n` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..dim * dim).map(|i| f(i / dim, i % dim)).collect();
        UnitaryMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, k| if r == k { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    /// Max-norm distance of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let dot: Complex64 = (0..n).map(|r| self.get(r, a).conj() * self.get(r, b)).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Matrix of `c`, built column by column from basis states.
pub fn unitary_of(circuit: &Circuit) -> Result<UnitaryMatrix> {
    let n = circuit.num_qubits;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, cap: MAX_QUBITS });
    }
    let dim = 1 << n;
    let mut data = vec![c(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let mut sv = Statevector::basis(n, col)?;
        sv.run(circuit);
        for (row, amp) in sv.amplitudes.iter().enumerate() {
            data[row * dim + col] = *amp;
        }
    }
    Ok(UnitaryMatrix { dim, data })
}

/// Moves bit `i` of `x` to bit `perm[i]`.
pub fn permute_index(x: usize, perm: &[usize]) -> usize {
    perm.iter().enumerate().fold(0, |y, (i, &p)| y | (((x >> i) & 1) << p))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub deviation: f64,
}

/// Tests `U = e^{iφ} · P(post) · V · P(pre)`, where `P(π)` sends qubit `i`
/// to position `π[i]`.
pub fn equiv_with_permutations(
    u: &UnitaryMatrix,
    v: &UnitaryMatrix,
    pre: &[usize],
    post: &[usize],
    tolerance: f64,
) -> Equivalence {
    assert_eq!(u.dim, v.dim, "dimension mismatch");
    let dim = u.dim;
    let mut post_inv = vec![0; post.len()];
    for (i, &p) in post.iter().enumerate() {
        post_inv[p] = i;
    }
    let rows: Vec<usize> = (0..dim).map(|r| permute_index(r, &post_inv)).collect();
    let cols: Vec<usize> = (0..dim).map(|k| permute_index(k, pre)).collect();
    let w = |r: usize, k: usize| v.get(rows[r], cols[k]);
    let (mut best, mut at) = (0.0, (0, 0));
    for r in 0..dim {
        for k in 0..dim {
            let m = u.get(r, k).norm();
            if m > best {
                best = m;
                at = (r, k);
            }
        }
    }
    let reference = w(at.0, at.1);
    if reference.norm() < 1e-6 {
        return Equivalence { equivalent: false, deviation: f64::INFINITY };
    }
    let ratio = u.get(at.0, at.1) / reference;
    let phase = ratio / ratio.norm();
    let mut deviation: f64 = 0.0;
    for r in 0..dim {
        for k in 0..dim {
            deviation = deviation.max((u.get(r, k) - phase * w(r, k)).norm());
        }
    }
    Equivalence { equivalent: deviation <= tolerance, deviation }
}

/// `U = e^{iφ} · P(perm) · V`.
pub fn equiv_up_to_permutation(u: &UnitaryMatrix, v: &UnitaryMatrix, perm: &[usize], tolerance: f64) -> Equivalence {
    let identity: Vec<usize> = (0..perm.len()).collect();
    equiv_with_permutations(u, v, &identity, perm, tolerance)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoodSetCheck {
    pub good: bool,
    pub worst_g: usize,
    pub worst_value: f64,
}

/// `(1/t · Σ cos(2π k g / p))²` for one residue `g`.
pub fn fingerprint_value(coefficients: &[u64], p: u64, g: u64) -> f64 {
    let t = coefficients.len() as f64;
    let sum: f64 = coefficients
        .iter()
        .map(|&k| (2.0 * std::f64::consts::PI * ((k * g) % p) as f64 / p as f64).cos())
        .sum();
    (sum / t).powi(2)
}

/// Exhaustive check over `g = 1..p-1`; the set is good when no value exceeds `epsilon`.
pub fn check_good_set(coefficients: &[u64], p: u64, epsilon: f64) -> GoodSetCheck {
    assert!(!coefficients.is_empty() && p >= 2);
    let (mut worst_g, mut worst_value) = (1, f64::NEG_INFINITY);
    for g in 1..p {
        let v = fingerprint_value(coefficients, p, g);
        if v > worst_value {
            worst_value = v;
            worst_g = g as usize;
        }
    }
    GoodSetCheck { good: worst_value <= epsilon, worst_g, worst_value }
}
