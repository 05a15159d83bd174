//! Independent brute-force oracles. Nothing here touches the circuit
//! machinery beyond the shared `State` type, so results can cross-check
//! the compiled pipeline.

use crate::circuit::State;
use crate::graph::{Dag, VertexId};
use crate::num::Real;
use crate::queries::Logits;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("instance too large for brute force: k = {k}, limit {limit}")]
    TooLarge { k: usize, limit: usize },
    #[error("no s-t path exists")]
    NoPath,
}

/// All accepted states of the simple-path function, found by DFS over
/// simple paths from source to target.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSet {
    pub states: BTreeSet<State>,
    pub k: usize,
}

const PATHS_LIMIT: usize = 24;
const DIST_LIMIT: usize = 20;

/// Enumerates every simple s-t path of `d` as an edge-indicator state over
/// the original labeling. Refuses instances with more than 24 edges.
pub fn brute_paths(d: &Dag) -> Result<PathSet, OracleError> {
    let k = d.edge_count();
    if k > PATHS_LIMIT {
        return Err(OracleError::TooLarge {
            k,
            limit: PATHS_LIMIT,
        });
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); d.vertex_count()];
    for (i, e) in d.edges().iter().enumerate() {
        out[e.tail.0].push(i);
    }
    let mut states = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut visited = vec![false; d.vertex_count()];
    dfs(d, &out, d.source(), &mut visited, &mut chosen, &mut states);
    Ok(PathSet { states, k })
}

fn dfs(
    d: &Dag,
    out: &[Vec<usize>],
    v: VertexId,
    visited: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    states: &mut BTreeSet<State>,
) {
    if v == d.target() {
        let mut bits = vec![false; d.edge_count()];
        for &e in chosen.iter() {
            bits[e] = true;
        }
        states.insert(State::new(bits));
        return;
    }
    visited[v.0] = true;
    for &e in &out[v.0] {
        let head = d.edges()[e].head;
        if visited[head.0] {
            continue;
        }
        chosen.push(e);
        dfs(d, out, head, visited, chosen, states);
        chosen.pop();
    }
    visited[v.0] = false;
}

/// One row of the exhaustive distribution table.
#[derive(Clone, Debug, PartialEq)]
pub struct DistRow<T> {
    pub state: State,
    pub accepted: bool,
    pub prob: T,
    /// `P(y|a, κ)`; zero when rejected, `None` when no state is accepted.
    pub cond_prob: Option<T>,
}

/// The full distribution over all `2^k` states, with acceptance flags.
/// Probabilities are normalized explicitly so the table sums to one up to
/// rounding. Refuses instances with more than 20 edges.
pub fn brute_distribution<T: Real>(
    d: &Dag,
    a: &Logits<T>,
) -> Result<Vec<DistRow<T>>, OracleError> {
    let k = d.edge_count();
    if k > DIST_LIMIT {
        return Err(OracleError::TooLarge {
            k,
            limit: DIST_LIMIT,
        });
    }
    assert_eq!(a.len(), k, "logit length mismatch");
    let paths = brute_paths(d)?;
    let weights: Vec<T> = (0..1u64 << k)
        .map(|idx| {
            let y = State::from_index(idx, k);
            (1..=k)
                .filter(|&i| y.get(i))
                .map(|i| a.get(i))
                .sum::<T>()
                .exp()
        })
        .collect();
    let z: T = weights.iter().copied().sum();
    let kappa: T = (0..1u64 << k)
        .filter(|&idx| paths.states.contains(&State::from_index(idx, k)))
        .map(|idx| weights[idx as usize] / z)
        .sum();
    Ok((0..1u64 << k)
        .map(|idx| {
            let state = State::from_index(idx, k);
            let accepted = paths.states.contains(&state);
            let prob = weights[idx as usize] / z;
            let cond_prob = if kappa > T::zero() {
                Some(if accepted { prob / kappa } else { T::zero() })
            } else {
                None
            };
            DistRow {
                state,
                accepted,
                prob,
                cond_prob,
            }
        })
        .collect())
}

/// Maximum-weight simple s-t path and its log weight, by exhaustive
/// enumeration, with the same tie-break as `queries::mpe`: weight ties
/// prefer the state that is smaller as a big-endian binary number.
pub fn dag_best_path<T: Real>(d: &Dag, a: &Logits<T>) -> Result<(State, T), OracleError> {
    assert_eq!(a.len(), d.edge_count(), "logit length mismatch");
    let paths = brute_paths(d)?;
    let mut best: Option<(T, &State)> = None;
    for s in &paths.states {
        let w: T = (1..=s.len()).filter(|&i| s.get(i)).map(|i| a.get(i)).sum();
        let better = match &best {
            None => true,
            Some((bw, bs)) => w > *bw || (w == *bw && s < *bs),
        };
        if better {
            best = Some((w, s));
        }
    }
    best.map(|(w, s)| (s.clone(), w)).ok_or(OracleError::NoPath)
}

/// Whether the selected edges of `y` form exactly one simple s-t path.
pub fn is_path_state(d: &Dag, y: &State) -> bool {
    assert_eq!(y.len(), d.edge_count(), "state length mismatch");
    let selected: Vec<usize> = (0..d.edge_count()).filter(|&i| y.get(i + 1)).collect();
    if selected.is_empty() {
        return false;
    }
    // walk from s, consuming exactly one outgoing selected edge per step
    let mut at = d.source();
    let mut used = vec![false; selected.len()];
    let mut seen = vec![false; d.vertex_count()];
    seen[at.0] = true;
    loop {
        if at == d.target() {
            return used.iter().all(|&u| u);
        }
        let mut next = None;
        for (j, &e) in selected.iter().enumerate() {
            if d.edges()[e].tail == at {
                if used[j] || next.is_some() {
                    return false;
                }
                next = Some((j, d.edges()[e].head));
            }
        }
        match next {
            Some((j, head)) => {
                if seen[head.0] {
                    return false;
                }
                used[j] = true;
                seen[head.0] = true;
                at = head;
            }
            None => return false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn diamond() -> Dag {
        parse_edge_list("s S\nt T\ne S A\ne S B\ne A T\ne B T\n").unwrap()
    }

    fn state(s: &str) -> State {
        State::from_bit_string(s).unwrap()
    }

    #[test]
    fn brute_paths_diamond() {
        let p = brute_paths(&diamond()).unwrap();
        let expected: BTreeSet<State> = [state("1010"), state("0101")].into_iter().collect();
        assert_eq!(p.states, expected);
    }

    #[test]
    fn brute_paths_finds_both_route_lengths() {
        let d = parse_edge_list("s S\nt T\ne S B\ne B C\ne C T\ne B T\n").unwrap();
        let p = brute_paths(&d).unwrap();
        assert_eq!(p.states.len(), 2);
        assert!(p.states.contains(&state("1110")));
        assert!(p.states.contains(&state("1001")));
    }

    #[test]
    fn brute_paths_no_path() {
        let d = parse_edge_list("s S\nt T\ne S A\ne T A\n").unwrap();
        assert!(brute_paths(&d).unwrap().states.is_empty());
    }

    #[test]
    fn brute_distribution_sums_to_one() {
        let d = diamond();
        let a = Logits::new(vec![0.4f64, -1.0, 0.3, 2.0]).unwrap();
        let rows = brute_distribution(&d, &a).unwrap();
        assert_eq!(rows.len(), 16);
        let total: f64 = rows.iter().map(|r| r.prob).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(rows.iter().filter(|r| r.accepted).count(), 2);
        let cond_total: f64 = rows.iter().map(|r| r.cond_prob.unwrap()).sum();
        assert!((cond_total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dag_best_path_tie_break() {
        let d = diamond();
        let (best, w) = dag_best_path(&d, &Logits::<f64>::zeros(4)).unwrap();
        assert_eq!(best, state("0101"));
        assert_eq!(w, 0.0);
        let a = Logits::new(vec![1.0f64, 0.0, 1.0, 0.0]).unwrap();
        let (best, w) = dag_best_path(&d, &a).unwrap();
        assert_eq!(best, state("1010"));
        assert_eq!(w, 2.0);
    }

    #[test]
    fn dag_best_path_ignores_off_path_edges() {
        // the dead-end edge cannot appear in an accepted state, however
        // attractive its logit
        let d = parse_edge_list("s S\nt T\ne S T\ne S A\n").unwrap();
        let a = Logits::new(vec![0.0f64, 2.0]).unwrap();
        assert_eq!(dag_best_path(&d, &a).unwrap(), (state("10"), 0.0));
    }

    #[test]
    fn is_path_state_examples() {
        let d = diamond();
        assert!(is_path_state(&d, &state("1010")));
        assert!(is_path_state(&d, &state("0101")));
        assert!(!is_path_state(&d, &state("1111")));
        assert!(!is_path_state(&d, &state("1000")));
        assert!(!is_path_state(&d, &state("0000")));
        assert!(!is_path_state(&d, &state("1001")));
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let big = crate::gen::grid(3, 3);
        let d = parse_edge_list(&big).unwrap();
        assert_eq!(d.edge_count(), 24);
        assert!(brute_paths(&d).is_ok());
        assert_eq!(
            brute_distribution(&d, &Logits::<f64>::zeros(24)).unwrap_err(),
            OracleError::TooLarge { k: 24, limit: 20 }
        );
    }
}
