mod common;

use cactus_synth::circuit::{cancel_adjacent_cnots, cnot_cost, decompose, Circuit, Gate};
use cactus_synth::covering::solve_cactus;
use cactus_synth::graph::random_cactus;
use cactus_synth::hash::{find_good_set, synthesize_hash, vertex_angles, HashParams};
use cactus_synth::qft::{synthesize_qft, verify_qft};
use cactus_synth::sim::{equiv_up_to_permutation, unitary_of};
use proptest::prelude::*;

fn params() -> HashParams {
    find_good_set(17, 0.25, 0, 10_000).unwrap()
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    let pair = (0..n, 1..n).prop_map(move |(a, off)| (a, (a + off) % n));
    let theta = -6.3f64..6.3;
    prop_oneof![
        q.clone().prop_map(|q| Gate::H { q }),
        q.clone().prop_map(|q| Gate::X { q }),
        (q.clone(), theta.clone()).prop_map(|(q, theta)| Gate::Ry { q, theta }),
        (q.clone(), theta.clone()).prop_map(|(q, theta)| Gate::Rz { q, theta }),
        (q, 1u32..6).prop_map(|(q, d)| Gate::Rk { q, d }),
        pair.clone().prop_map(|(control, target)| Gate::Cnot { control, target }),
        (pair.clone(), theta.clone()).prop_map(|((control, target), theta)| Gate::Cry { control, target, theta }),
        (pair.clone(), theta).prop_map(|((control, target), theta)| Gate::Crz { control, target, theta }),
        (pair.clone(), 1u32..6).prop_map(|((control, target), d)| Gate::Crd { control, target, d }),
        pair.prop_map(|(a, b)| Gate::Swap { a, b }),
    ]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec(gate(n), 0..30).prop_map(move |gates| {
            let mut c = Circuit::new(n);
            c.extend(gates).unwrap();
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_bfs(n in 1usize..=13, seed in any::<u64>()) {
        let g = random_cactus(n, seed);
        let p = solve_cactus(&g).unwrap();
        prop_assert!(p.is_one_covering(&g));
        prop_assert!(g.is_walk(&p.vertices));
        prop_assert_eq!(p.length(), common::covering_length(&g));
    }

    #[test]
    fn path_length_bound(n in 2usize..=60, seed in any::<u64>()) {
        let g = random_cactus(n, seed);
        prop_assert!(solve_cactus(&g).unwrap().length() <= 2 * n - 3);
    }

    #[test]
    fn hash_cost_is_closed_form(n in 2usize..=20, seed in any::<u64>(), l in 1usize..=6) {
        let g = random_cactus(n, seed);
        let r = synthesize_hash(&g, l, &params()).unwrap();
        let expected = common::hash_cost(n, r.path.k(), r.path.distinct(), l);
        prop_assert_eq!(r.cost.cnot_count as i64, expected);
        prop_assert_eq!(cnot_cost(&r.circuit) as i64, expected);
    }

    #[test]
    fn hash_respects_device(n in 2usize..=12, seed in any::<u64>(), l in 1usize..=3) {
        let g = random_cactus(n, seed);
        let r = synthesize_hash(&g, l, &params()).unwrap();
        for gate in &r.circuit.gates {
            if let [a, b] = gate.qubits()[..] {
                prop_assert!(g.has_edge(a, b), "{:?} off the device", gate);
            }
        }
    }

    #[test]
    fn decompose_preserves_unitary(c in circuit()) {
        let identity: Vec<usize> = (0..c.num_qubits).collect();
        let u = unitary_of(&c).unwrap();
        let lowered = decompose(&c);
        prop_assert!(lowered.gates.iter().all(Gate::is_basic));
        let e = equiv_up_to_permutation(&unitary_of(&lowered).unwrap(), &u, &identity, 1e-12);
        prop_assert!(e.equivalent, "decompose off by {}", e.deviation);
        let cancelled = cancel_adjacent_cnots(&lowered);
        prop_assert!(cancelled.cnot_count() <= lowered.cnot_count());
        let e = equiv_up_to_permutation(&unitary_of(&cancelled).unwrap(), &u, &identity, 1e-12);
        prop_assert!(e.equivalent, "cancellation off by {}", e.deviation);
    }

    #[test]
    fn simulated_circuits_are_unitary(c in circuit()) {
        prop_assert!(unitary_of(&c).unwrap().unitarity_deviation() < 1e-12);
    }

    #[test]
    fn json_round_trip(c in circuit()) {
        let back = Circuit::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.num_qubits, c.num_qubits);
        prop_assert_eq!(cnot_cost(&back), cnot_cost(&c));
        prop_assert_eq!(back.final_layout(), c.final_layout());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hash_unitary_matches(n in 2usize..=7, seed in any::<u64>(), l in 1usize..=3) {
        let g = random_cactus(n, seed);
        let params = params();
        let r = synthesize_hash(&g, l, &params).unwrap();
        let angles = vertex_angles(n, r.target_start, &params);
        let reference = common::hash_unitary(n, r.target_start, &angles, l);
        let e = equiv_up_to_permutation(&unitary_of(&r.circuit).unwrap(), &reference, &r.circuit.final_layout(), 1e-9);
        prop_assert!(e.equivalent, "deviation {}", e.deviation);
    }

    #[test]
    fn qft_unitary_matches(n in 1usize..=7, seed in any::<u64>()) {
        let g = random_cactus(n, seed);
        let r = synthesize_qft(&g).unwrap();
        prop_assert!(verify_qft(&r, 1e-9).unwrap().equivalent);
        prop_assert!(r.cost.cnot_count <= 2 * n * n);
    }
}
