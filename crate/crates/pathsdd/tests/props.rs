//! Cross-module invariants on randomized instances, complementing the
//! per-module unit tests and the acceptance gate.

mod common;

use common::{random_dag, random_logits, rng};
use pathsdd::circuit::{Circuit, State};
use pathsdd::compile::{compile, compile_full, reduce};
use pathsdd::graph::{topological_edge_order, vertex_spans, Edge};
use pathsdd::oracle::{brute_distribution, brute_paths, is_path_state};
use pathsdd::queries::{count_models, pqe, ranked_enumerate};
use pathsdd::Logits64;

fn accepted(c: &Circuit) -> Vec<State> {
    (0..1u64 << c.k())
        .map(|i| State::from_index(i, c.k()))
        .filter(|y| c.evaluate(y).unwrap())
        .collect()
}

#[test]
fn edge_positions_increase_along_every_path() {
    let mut r = rng(11);
    for _ in 0..50 {
        let d = random_dag(&mut r, true);
        let ord = topological_edge_order(&d).unwrap();
        for y in &brute_paths(&d).unwrap().states {
            let mut positions: Vec<usize> = (1..=d.edge_count())
                .filter(|&i| y.get(i))
                .map(|i| ord.position(i - 1))
                .collect();
            // recover traversal order: sort edges along the path from s
            let mut chosen: Vec<(usize, &Edge)> = (1..=d.edge_count())
                .filter(|&i| y.get(i))
                .map(|i| (i, &d.edges()[i - 1]))
                .collect();
            let mut at = d.source();
            let mut walk = Vec::new();
            while at != d.target() {
                let (i, e) = chosen
                    .iter()
                    .find(|(_, e)| e.tail == at)
                    .copied()
                    .expect("oracle states are paths");
                walk.push(ord.position(i - 1));
                at = e.head;
                chosen.retain(|(j, _)| *j != i);
            }
            positions.sort_unstable();
            assert_eq!(walk, positions, "positions not increasing along the path");
        }
    }
}

#[test]
fn spans_match_a_direct_scan() {
    let mut r = rng(12);
    for _ in 0..50 {
        let d = random_dag(&mut r, true);
        let ord = topological_edge_order(&d).unwrap();
        let spans = vertex_spans(&d, &ord);
        for v in d.vertex_ids() {
            let incoming: Vec<usize> = (1..=d.edge_count())
                .filter(|&i| d.edges()[i - 1].head == v)
                .map(|i| ord.position(i - 1))
                .collect();
            let outgoing: Vec<usize> = (1..=d.edge_count())
                .filter(|&i| d.edges()[i - 1].tail == v)
                .map(|i| ord.position(i - 1))
                .collect();
            assert_eq!(spans.sigma_m(v), incoming.iter().min().copied());
            assert_eq!(spans.sigma_max(v), outgoing.iter().max().copied());
        }
    }
}

#[test]
fn brute_distribution_normalizes() {
    let mut r = rng(13);
    for _ in 0..20 {
        let d = random_dag(&mut r, false);
        let a = random_logits(&mut r, d.edge_count());
        let total: f64 = brute_distribution(&d, &a).unwrap().iter().map(|x| x.prob).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn accepted_states_are_exactly_path_states() {
    let mut r = rng(14);
    for _ in 0..25 {
        let d = random_dag(&mut r, true);
        let c = compile(&d).unwrap();
        for y in accepted(&c) {
            assert!(is_path_state(&d, &y));
        }
    }
}

#[test]
fn reduce_preserves_semantics_and_queries() {
    let mut r = rng(15);
    for _ in 0..25 {
        let d = random_dag(&mut r, true);
        let c = compile(&d).unwrap();
        let red = reduce(&c);
        assert!(red.node_count() <= c.node_count());
        assert_eq!(accepted(&red), accepted(&c));
        assert_eq!(count_models(&red), count_models(&c));
        let a = random_logits(&mut r, c.k());
        let (p1, p2) = (pqe(&c, &a).unwrap(), pqe(&red, &a).unwrap());
        assert!((p1 - p2).abs() <= 1e-12 * p1.abs().max(1.0));
        let r1: Vec<State> = ranked_enumerate(&c, &a, 4).unwrap().into_iter().map(|w| w.state).collect();
        let r2: Vec<State> = ranked_enumerate(&red, &a, 4).unwrap().into_iter().map(|w| w.state).collect();
        assert_eq!(r1, r2);
    }
}

#[test]
fn serialization_round_trips() {
    let mut r = rng(16);
    for _ in 0..25 {
        let d = random_dag(&mut r, true);
        let c = compile(&d).unwrap();
        let text = c.serialize();
        let back = Circuit::deserialize(&text).unwrap();
        assert_eq!(back.k(), c.k());
        assert_eq!(accepted(&back), accepted(&c));
        assert_eq!(count_models(&back), count_models(&c));
        assert_eq!(back.serialize(), text, "second round trip not byte-identical");
    }
}

#[test]
fn quasi_reduced_outputs_chain_every_level() {
    let mut r = rng(17);
    for _ in 0..25 {
        let d = random_dag(&mut r, true);
        let full = compile_full(&d).unwrap();
        assert!(full.circuit.is_quasi_reduced());
        assert!(full.untrimmed.is_quasi_reduced());
    }
}

#[test]
fn pqe_of_uniform_logits_equals_density() {
    let mut r = rng(18);
    for _ in 0..25 {
        let d = random_dag(&mut r, false);
        let c = compile(&d).unwrap();
        let paths = brute_paths(&d).unwrap().states.len() as f64;
        let got = pqe(&c, &Logits64::zeros(c.k())).unwrap();
        assert_eq!(got * (1u64 << c.k()) as f64, paths);
    }
}
