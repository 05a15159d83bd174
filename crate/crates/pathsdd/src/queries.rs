//! Exact probabilistic reasoning over a compiled circuit: model counting,
//! probability of the constraint, most probable state, ranked enumeration
//! and thresholding, all under the logit-parameterized exponential
//! distribution.

use crate::circuit::{Circuit, Node, NodeId, State, TRUE_ID};
use crate::num::{sigmoid, softplus, Real};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QueryError {
    #[error("logit/state length {got} does not match variable count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("logit at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("circuit is unsatisfiable; conditioning is undefined")]
    Unsatisfiable,
    #[error("threshold {t} outside (0, 1]")]
    ThresholdRange { t: f64 },
}

/// Log-odds per edge variable, indexed by original 1-based label.
#[derive(Clone, Debug, PartialEq)]
pub struct Logits<T> {
    a: Vec<T>,
}

impl<T: Real> Logits<T> {
    pub fn new(a: Vec<T>) -> Result<Logits<T>, QueryError> {
        if let Some(index) = a.iter().position(|x| !x.is_finite()) {
            return Err(QueryError::NonFinite { index });
        }
        Ok(Logits { a })
    }

    pub fn zeros(k: usize) -> Logits<T> {
        Logits {
            a: vec![T::zero(); k],
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Logit of the variable with 1-based label `var`.
    pub fn get(&self, var: usize) -> T {
        self.a[var - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.a
    }

    /// `log Z = Σ_i log(1 + e^{a_i})`.
    pub fn log_partition(&self) -> T {
        self.a.iter().map(|&x| softplus(x)).sum()
    }
}

/// A satisfying (or free-standing) state with its weight and probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedState<T> {
    pub state: State,
    /// `Σ_i a_i · y_i`
    pub log_weight: T,
    /// `P(y | a)`
    pub prob: T,
    /// `P(y | a, κ)`; present only when computed against a circuit.
    pub cond_prob: Option<T>,
}

fn check_len(expected: usize, got: usize) -> Result<(), QueryError> {
    if expected != got {
        return Err(QueryError::LengthMismatch { expected, got });
    }
    Ok(())
}

fn log_weight_of<T: Real>(a: &Logits<T>, y: &State) -> T {
    (1..=y.len())
        .filter(|&i| y.get(i))
        .map(|i| a.get(i))
        .sum()
}

/// Unconditioned probability of a single state under the exponential
/// distribution.
pub fn state_prob<T: Real>(a: &Logits<T>, y: &State) -> Result<WeightedState<T>, QueryError> {
    check_len(a.len(), y.len())?;
    let log_weight = log_weight_of(a, y);
    let prob = (log_weight - a.log_partition()).exp();
    Ok(WeightedState {
        state: y.clone(),
        log_weight,
        prob,
        cond_prob: None,
    })
}

/// Number of accepted states, bottom-up with level-gap factors so reduced
/// circuits count skipped variables as free.
pub fn count_models(c: &Circuit) -> BigUint {
    let one = BigUint::from(1u32);
    let pow2 = |e: usize| &one << e;
    let mut counts: Vec<BigUint> = Vec::with_capacity(c.node_count());
    for id in 0..c.node_count() as u32 {
        let id = NodeId(id);
        let value = match c.node(id) {
            Node::False => BigUint::from(0u32),
            Node::True => one.clone(),
            Node::Decision { var, high, low } => {
                let pos = c.pos_of_var(var);
                let branch = |child: NodeId, counts: &[BigUint]| {
                    let gap = pos - 1 - c.level_of(child);
                    &counts[child.0 as usize] * pow2(gap)
                };
                branch(high, &counts) + branch(low, &counts)
            }
        };
        counts.push(value);
    }
    let root = c.root();
    &counts[root.0 as usize] * pow2(c.k() - c.level_of(root))
}

/// Probability of the constraint, `P(κ | a) = Σ_{y ⊨ κ} P(y | a)`.
///
/// Computed bottom-up in normalized linear space: each decision node mixes
/// its children with the Bernoulli weight `σ(a_var)`, so values stay in
/// `[0, 1]` and skipped variables marginalize out for free. For all-zero
/// logits this yields exactly `count / 2^k` in dyadic arithmetic.
pub fn pqe<T: Real>(c: &Circuit, a: &Logits<T>) -> Result<T, QueryError> {
    check_len(c.k(), a.len())?;
    let mut values: Vec<T> = Vec::with_capacity(c.node_count());
    for id in 0..c.node_count() as u32 {
        let value = match c.node(NodeId(id)) {
            Node::False => T::zero(),
            Node::True => T::one(),
            Node::Decision { var, high, low } => {
                let p = sigmoid(a.get(var as usize));
                p * values[high.0 as usize] + (T::one() - p) * values[low.0 as usize]
            }
        };
        values.push(value);
    }
    Ok(values[c.root().0 as usize])
}

/// Conditional probability `P(y | a, κ) = P(y | a) · 1_κ(y) / P(κ | a)`.
pub fn cond_state_prob<T: Real>(
    c: &Circuit,
    a: &Logits<T>,
    y: &State,
) -> Result<T, QueryError> {
    check_len(c.k(), a.len())?;
    check_len(c.k(), y.len())?;
    let total = pqe(c, a)?;
    if total <= T::zero() {
        return Err(QueryError::Unsatisfiable);
    }
    if !c.evaluate(y).expect("length checked") {
        return Ok(T::zero());
    }
    Ok(state_prob(a, y)?.prob / total)
}

/// Per-node maximum achievable weight and the state realizing it, used by
/// MPE and the ranked enumerator. Ties in weight prefer the state that is
/// smaller as a big-endian binary number in the original labeling.
struct MaxTable<T> {
    weight: Vec<T>,
    best: Vec<Option<Vec<bool>>>,
    /// prefix sums over internal positions of `max(0, a)`
    gain: Vec<T>,
}

impl<T: Real> MaxTable<T> {
    fn build(c: &Circuit, a: &Logits<T>) -> MaxTable<T> {
        let k = c.k();
        let mut gain = Vec::with_capacity(k + 1);
        gain.push(T::zero());
        for pos in 1..=k {
            let g = a.get(c.var_of_level(pos) as usize).max(T::zero());
            gain.push(gain[pos - 1] + g);
        }
        let mut table = MaxTable {
            weight: Vec::with_capacity(c.node_count()),
            best: Vec::with_capacity(c.node_count()),
            gain,
        };
        for id in 0..c.node_count() as u32 {
            let id = NodeId(id);
            let (w, s) = match c.node(id) {
                Node::False => (T::neg_infinity(), None),
                Node::True => (T::zero(), Some(vec![false; k])),
                Node::Decision { var, high, low } => {
                    let pos = c.pos_of_var(var);
                    let hi = table.candidate(c, a, pos, high, var, true);
                    let lo = table.candidate(c, a, pos, low, var, false);
                    match (hi, lo) {
                        (None, None) => (T::neg_infinity(), None),
                        (Some((w, s)), None) | (None, Some((w, s))) => (w, Some(s)),
                        (Some((wh, sh)), Some((wl, sl))) => {
                            if wh > wl || (wh == wl && sh < sl) {
                                (wh, Some(sh))
                            } else {
                                (wl, Some(sl))
                            }
                        }
                    }
                }
            };
            table.weight.push(w);
            table.best.push(s);
        }
        table
    }

    /// Best completion through one branch of a decision node at `pos`.
    fn candidate(
        &self,
        c: &Circuit,
        a: &Logits<T>,
        pos: usize,
        child: NodeId,
        var: u32,
        bit: bool,
    ) -> Option<(T, Vec<bool>)> {
        let w_child = self.weight[child.0 as usize];
        if w_child == T::neg_infinity() {
            return None;
        }
        let cpos = c.level_of(child);
        let branch_gain = if bit { a.get(var as usize) } else { T::zero() };
        let weight = branch_gain + w_child + (self.gain[pos - 1] - self.gain[cpos]);
        let mut state = self.best[child.0 as usize].clone().expect("finite weight");
        // free positions between the child and this node take 1 iff a > 0
        for p in cpos + 1..pos {
            let v = c.var_of_level(p) as usize;
            state[v - 1] = a.get(v) > T::zero();
        }
        state[var as usize - 1] = bit;
        Some((weight, state))
    }

    /// Fills the positions above `pos` in `state` by the gap rule and
    /// returns the gained weight.
    fn fill_above(&self, c: &Circuit, a: &Logits<T>, pos: usize, state: &mut [bool]) -> T {
        for p in pos + 1..=c.k() {
            let v = c.var_of_level(p) as usize;
            state[v - 1] = a.get(v) > T::zero();
        }
        self.gain[c.k()] - self.gain[pos]
    }
}

fn finish_weighted<T: Real>(
    a: &Logits<T>,
    log_z: T,
    total: T,
    bits: Vec<bool>,
) -> WeightedState<T> {
    let state = State::new(bits);
    let log_weight = log_weight_of(a, &state);
    let prob = (log_weight - log_z).exp();
    WeightedState {
        state,
        log_weight,
        prob,
        cond_prob: Some(prob / total),
    }
}

/// Most probable satisfying state. Errors when the circuit accepts nothing.
pub fn mpe<T: Real>(c: &Circuit, a: &Logits<T>) -> Result<WeightedState<T>, QueryError> {
    check_len(c.k(), a.len())?;
    let table = MaxTable::build(c, a);
    let root = c.root();
    if table.weight[root.0 as usize] == T::neg_infinity() {
        return Err(QueryError::Unsatisfiable);
    }
    let mut bits = table.best[root.0 as usize].clone().expect("satisfiable");
    table.fill_above(c, a, c.level_of(root), &mut bits);
    let total = pqe(c, a)?;
    Ok(finish_weighted(a, a.log_partition(), total, bits))
}

/// Best-first frontier entry: a partial assignment of the positions above
/// `p`, currently sitting at `node`, with `bound` the exact weight of its
/// best completion and `state` that completion.
struct Entry<T> {
    bound: T,
    state: Vec<bool>,
    node: NodeId,
    p: usize,
}

impl<T: Real> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.state == other.state
    }
}
impl<T: Real> Eq for Entry<T> {}
impl<T: Real> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Entry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: larger bound first, then lexicographically smaller state
        self.bound
            .partial_cmp(&other.bound)
            .expect("bounds are never NaN")
            .then_with(|| other.state.cmp(&self.state))
    }
}

/// Lazy best-first enumeration of satisfying states in non-increasing
/// probability order; ties yield the smaller big-endian state first.
pub struct RankedIter<'a, T: Real> {
    circuit: &'a Circuit,
    logits: &'a Logits<T>,
    table: MaxTable<T>,
    heap: BinaryHeap<Entry<T>>,
    log_z: T,
    total: T,
}

impl<'a, T: Real> RankedIter<'a, T> {
    pub fn new(c: &'a Circuit, a: &'a Logits<T>) -> Result<RankedIter<'a, T>, QueryError> {
        check_len(c.k(), a.len())?;
        let table = MaxTable::build(c, a);
        let mut heap = BinaryHeap::new();
        let root = c.root();
        if table.weight[root.0 as usize] > T::neg_infinity() {
            let mut state = table.best[root.0 as usize].clone().expect("satisfiable");
            let extra = table.fill_above(c, a, c.level_of(root), &mut state);
            heap.push(Entry {
                bound: table.weight[root.0 as usize] + extra,
                state,
                node: root,
                p: c.k(),
            });
        }
        let total = pqe(c, a)?;
        Ok(RankedIter {
            circuit: c,
            logits: a,
            table,
            heap,
            log_z: a.log_partition(),
            total,
        })
    }

    fn push_branch(&mut self, entry: &Entry<T>, child: NodeId, var: u32, bit: bool) {
        let c = self.circuit;
        let a = self.logits;
        if self.table.weight[child.0 as usize] == T::neg_infinity() {
            return;
        }
        let pos = c.pos_of_var(var);
        debug_assert_eq!(pos, entry.p);
        let cpos = c.level_of(child);
        let below = self.table.weight[child.0 as usize]
            + (self.table.gain[pos - 1] - self.table.gain[cpos]);
        // weight of the already decided suffix
        let decided: T = (pos..=c.k())
            .map(|q| c.var_of_level(q) as usize)
            .filter(|&v| if c.var_of_level(pos) as usize == v { bit } else { entry.state[v - 1] })
            .map(|v| a.get(v))
            .sum();
        let mut state = entry.state.clone();
        state[var as usize - 1] = bit;
        let best_child = self.table.best[child.0 as usize].as_ref().expect("finite");
        for q in 1..pos {
            let v = c.var_of_level(q) as usize;
            state[v - 1] = if q <= cpos {
                best_child[v - 1]
            } else {
                a.get(v) > T::zero()
            };
        }
        self.heap.push(Entry {
            bound: decided + below,
            state,
            node: child,
            p: pos - 1,
        });
    }

    fn push_free(&mut self, entry: &Entry<T>, bit: bool) {
        let c = self.circuit;
        let a = self.logits;
        let v = c.var_of_level(entry.p) as usize;
        let logit = a.get(v);
        let mut state = entry.state.clone();
        state[v - 1] = bit;
        let delta = if bit { logit } else { T::zero() } - logit.max(T::zero());
        self.heap.push(Entry {
            bound: entry.bound + delta,
            state,
            node: entry.node,
            p: entry.p - 1,
        });
    }
}

impl<'a, T: Real> Iterator for RankedIter<'a, T> {
    type Item = WeightedState<T>;

    fn next(&mut self) -> Option<WeightedState<T>> {
        loop {
            let entry = self.heap.pop()?;
            if entry.p == 0 {
                debug_assert_eq!(entry.node, TRUE_ID);
                return Some(finish_weighted(
                    self.logits,
                    self.log_z,
                    self.total,
                    entry.state,
                ));
            }
            let node_pos = self.circuit.level_of(entry.node);
            if node_pos == entry.p {
                if let Node::Decision { var, high, low } = self.circuit.node(entry.node) {
                    self.push_branch(&entry, high, var, true);
                    self.push_branch(&entry, low, var, false);
                } else {
                    unreachable!("a terminal has position 0");
                }
            } else {
                // position p is unconstrained here; branch on it explicitly
                self.push_free(&entry, true);
                self.push_free(&entry, false);
            }
        }
    }
}

/// The `limit` most probable satisfying states in non-increasing
/// `P(y | a, κ)` order. Empty when the circuit is unsatisfiable.
pub fn ranked_enumerate<T: Real>(
    c: &Circuit,
    a: &Logits<T>,
    limit: usize,
) -> Result<Vec<WeightedState<T>>, QueryError> {
    Ok(RankedIter::new(c, a)?.take(limit).collect())
}

/// All satisfying states with unconditioned probability at least `t`.
/// The result never holds more than `floor(1/t)` states.
pub fn thresh<T: Real>(
    c: &Circuit,
    a: &Logits<T>,
    t: T,
) -> Result<Vec<WeightedState<T>>, QueryError> {
    check_threshold(t)?;
    Ok(RankedIter::new(c, a)?
        .take_while(|w| w.prob >= t)
        .collect())
}

/// All satisfying states with conditional probability `P(y | a, κ) ≥ t`;
/// the probability of the constraint adapts the cutoff.
pub fn cond_thresh<T: Real>(
    c: &Circuit,
    a: &Logits<T>,
    t: T,
) -> Result<Vec<WeightedState<T>>, QueryError> {
    check_threshold(t)?;
    let iter = RankedIter::new(c, a)?;
    if iter.total <= T::zero() {
        return Err(QueryError::Unsatisfiable);
    }
    Ok(iter
        .take_while(|w| w.cond_prob.expect("computed against a circuit") >= t)
        .collect())
}

fn check_threshold<T: Real>(t: T) -> Result<(), QueryError> {
    if !(t > T::zero() && t <= T::one()) {
        return Err(QueryError::ThresholdRange {
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}
