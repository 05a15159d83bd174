//! Shared fixtures: seeded random DAGs, random logits, and an independent
//! arbitrary-precision binomial for grid path counts.

use num_bigint::BigUint;
use pathsdd::graph::{parse_edge_list, Dag};
use pathsdd::queries::Logits;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random DAG with 4–16 edges over up to 7 vertices. Edges always point
/// from a lower to a higher backbone index, so the graph is acyclic by
/// construction; parallel edges are allowed. With `shuffle` the file order
/// of the edges is randomized, which usually breaks topological order.
pub fn random_dag(rng: &mut ChaCha8Rng, shuffle: bool) -> Dag {
    let n: usize = rng.gen_range(3..=7);
    let k: usize = rng.gen_range(4..=16);
    let mut edges = Vec::with_capacity(k);
    for _ in 0..k {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        edges.push((i, j));
    }
    if shuffle {
        edges.shuffle(rng);
    }
    let name = |i: usize| char::from(b'a' + i as u8);
    let mut text = format!("s {}\nt {}\n", name(0), name(n - 1));
    for (i, j) in edges {
        text.push_str(&format!("e {} {}\n", name(i), name(j)));
    }
    parse_edge_list(&text).unwrap()
}

pub fn random_logits(rng: &mut ChaCha8Rng, k: usize) -> Logits<f64> {
    Logits::new((0..k).map(|_| rng.gen_range(-3.0..3.0)).collect()).unwrap()
}

/// C(n, k) by the multiplicative formula; every division is exact.
#[allow(dead_code)] // not every test target uses it
pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
