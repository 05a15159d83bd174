//! Builds the decision diagram for the s-t simple-path function of a DAG
//! via the level-by-level node templates, then trims it and rewrites leaf
//! labels back to the original edge labeling.

use crate::circuit::{Circuit, CircuitBuilder, Node, NodeId, FALSE_ID, TRUE_ID};
use crate::graph::{
    topological_edge_order, validate_acyclic, vertex_spans, Dag, EdgeOrdering, VertexId,
    VertexSpans,
};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error("graph contains a directed cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("source and target coincide")]
    Degenerate,
    #[error("leaf relabeling is not a bijection on 1..=k")]
    BadRelabel,
}

/// What the template dictates for one cell of the compilation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeSpec {
    False,
    Decision { level: usize, high: NodeId, low: NodeId },
}

/// The cell table of the level-by-level construction: `(vertex, position)`
/// to the node representing "states of the first i variables that form a
/// path from s to this vertex in the prefix graph".
#[derive(Clone, Debug)]
pub struct CompileTable {
    /// `rows[i - 1][v]` is the cell at position `i` for vertex `v`.
    rows: Vec<Vec<NodeId>>,
    root: NodeId,
}

impl CompileTable {
    pub fn cell(&self, v: VertexId, i: usize) -> NodeId {
        self.rows[i - 1][v.0]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn positions(&self) -> usize {
        self.rows.len()
    }
}

/// Computes the cell for vertex `v` at position `i` from the cells at
/// position `i - 1`. `e_i` below is the edge at position `i` in the order.
///
/// - `i = 1`, `v = s`: decision(1, ⊥, ⊤) — only the null state reaches `s`.
/// - `i = 1`, `e_1 = (s, v)`: decision(1, ⊤, ⊥).
/// - `i = 1`, otherwise: ⊥.
/// - `i > 1`, `e_i = (u, v)` with `v ≠ s`: decision(i, C_u^{i-1}, C_v^{i-1}).
/// - `i > 1`, otherwise: decision(i, ⊥, C_v^{i-1}) — an edge that does not
///   enter `v` (or enters `s`) cannot extend a path ending at `v`.
pub fn template_node(
    d: &Dag,
    ord: &EdgeOrdering,
    table: &CompileTable,
    v: VertexId,
    i: usize,
) -> NodeSpec {
    let e = d.edges()[ord.original_index(i)];
    let s = d.source();
    if i == 1 {
        if v == s {
            return NodeSpec::Decision {
                level: 1,
                high: FALSE_ID,
                low: TRUE_ID,
            };
        }
        if e.tail == s && e.head == v {
            return NodeSpec::Decision {
                level: 1,
                high: TRUE_ID,
                low: FALSE_ID,
            };
        }
        return NodeSpec::False;
    }
    let below = table.cell(v, i - 1);
    if e.head == v && v != s {
        NodeSpec::Decision {
            level: i,
            high: table.cell(e.tail, i - 1),
            low: below,
        }
    } else {
        NodeSpec::Decision {
            level: i,
            high: FALSE_ID,
            low: below,
        }
    }
}

/// Builds the untrimmed table circuit over the reordered variables
/// (variable at position `i` is labeled `i`). Root is the target's cell at
/// position `k`.
pub fn build_table(d: &Dag, ord: &EdgeOrdering) -> (Circuit, CompileTable) {
    let k = ord.k();
    let mut builder = CircuitBuilder::new();
    let mut table = CompileTable {
        rows: Vec::with_capacity(k),
        root: FALSE_ID,
    };
    for i in 1..=k {
        let mut row = Vec::with_capacity(d.vertex_count());
        for v in d.vertex_ids() {
            let id = match template_node(d, ord, &table, v, i) {
                NodeSpec::False => FALSE_ID,
                NodeSpec::Decision { level, high, low } => {
                    builder.push_decision(level as u32, high, low)
                }
            };
            row.push(id);
        }
        table.rows.push(row);
    }
    table.root = if k == 0 {
        FALSE_ID
    } else {
        table.cell(d.target(), k)
    };
    let circuit = builder.finish(table.root, k, (1..=k as u32).collect(), false);
    (circuit, table)
}

/// Replaces every cell `C_v^i` with `i` below the first incoming edge of
/// `v` by ⊥ (those cells cannot represent any path), then drops nodes no
/// longer reachable from the root. The accepted set is unchanged.
pub fn trim(c: &Circuit, d: &Dag, spans: &VertexSpans, table: &CompileTable) -> Circuit {
    let mut to_false = vec![false; c.node_count()];
    for i in 1..=table.positions() {
        for v in d.vertex_ids() {
            if v == d.source() {
                continue;
            }
            let dead = match spans.sigma_m(v) {
                Some(m) => i < m,
                None => true, // no incoming edge at all
            };
            if dead {
                let id = table.cell(v, i);
                if id != FALSE_ID {
                    to_false[id.0 as usize] = true;
                }
            }
        }
    }
    let subst = |id: NodeId| if to_false[id.0 as usize] { FALSE_ID } else { id };

    let mut reachable = vec![false; c.node_count()];
    let mut stack = vec![subst(c.root())];
    while let Some(id) = stack.pop() {
        if reachable[id.0 as usize] {
            continue;
        }
        reachable[id.0 as usize] = true;
        if let Node::Decision { high, low, .. } = c.node(id) {
            stack.push(subst(high));
            stack.push(subst(low));
        }
    }

    let mut remap = vec![FALSE_ID; c.node_count()];
    remap[TRUE_ID.0 as usize] = TRUE_ID;
    let mut builder = CircuitBuilder::new();
    for id in 2..c.node_count() as u32 {
        let id = NodeId(id);
        if !reachable[id.0 as usize] || to_false[id.0 as usize] {
            continue;
        }
        if let Node::Decision { var, high, low } = c.node(id) {
            let h = remap[subst(high).0 as usize];
            let l = remap[subst(low).0 as usize];
            remap[id.0 as usize] = builder.push_decision(var, h, l);
        }
    }
    let root = remap[subst(c.root()).0 as usize];
    let var_of_level = (1..=c.k()).map(|p| c.var_of_level(p)).collect();
    builder.finish(root, c.k(), var_of_level, c.is_reduced())
}

/// Rewrites the leaf labels: the decision node at internal position `i`
/// now tests original variable `relabel[i - 1]` (1-based labels).
pub fn rename_leaves(c: &Circuit, relabel: &[usize]) -> Result<Circuit, CompileError> {
    if relabel.len() != c.k() {
        return Err(CompileError::BadRelabel);
    }
    let mut seen = vec![false; c.k()];
    for &l in relabel {
        if l == 0 || l > c.k() || seen[l - 1] {
            return Err(CompileError::BadRelabel);
        }
        seen[l - 1] = true;
    }
    let nodes = c
        .nodes()
        .iter()
        .map(|n| match *n {
            Node::Decision { var, high, low } => Node::Decision {
                var: relabel[c.pos_of_var(var) - 1] as u32,
                high,
                low,
            },
            other => other,
        })
        .collect();
    let var_of_level = relabel.iter().map(|&l| l as u32).collect();
    Ok(Circuit::from_parts(
        nodes,
        c.root(),
        c.k(),
        var_of_level,
        c.is_reduced(),
    ))
}

/// Canonicalizing pass: merges structurally identical nodes and removes
/// decision nodes whose branches agree. The result may skip levels, which
/// the query operations compensate for with level-gap factors.
pub fn reduce(c: &Circuit) -> Circuit {
    let mut reachable = vec![false; c.node_count()];
    let mut stack = vec![c.root()];
    while let Some(id) = stack.pop() {
        if reachable[id.0 as usize] {
            continue;
        }
        reachable[id.0 as usize] = true;
        if let Node::Decision { high, low, .. } = c.node(id) {
            stack.push(high);
            stack.push(low);
        }
    }
    let mut remap = vec![FALSE_ID; c.node_count()];
    remap[TRUE_ID.0 as usize] = TRUE_ID;
    let mut unique: HashMap<(u32, NodeId, NodeId), NodeId> = HashMap::new();
    let mut builder = CircuitBuilder::new();
    for id in 2..c.node_count() as u32 {
        let id = NodeId(id);
        if !reachable[id.0 as usize] {
            continue;
        }
        if let Node::Decision { var, high, low } = c.node(id) {
            let h = remap[high.0 as usize];
            let l = remap[low.0 as usize];
            remap[id.0 as usize] = if h == l {
                h
            } else {
                *unique
                    .entry((var, h, l))
                    .or_insert_with(|| builder.push_decision(var, h, l))
            };
        }
    }
    let root = remap[c.root().0 as usize];
    let var_of_level = (1..=c.k()).map(|p| c.var_of_level(p)).collect();
    builder.finish(root, c.k(), var_of_level, true)
}

#[derive(Debug, PartialEq, Eq)]
pub struct StructureViolation {
    pub node: Option<NodeId>,
    pub reason: String,
}

/// Checks that the circuit is ordered by the right-linear variable order:
/// every decision child is a terminal or tests a variable of strictly
/// smaller internal position (exactly one below, unless reduced), children
/// precede parents, and the terminals are the shared slots 0 and 1.
pub fn validate_structure(c: &Circuit) -> Result<(), StructureViolation> {
    let fail = |node, reason: String| Err(StructureViolation { node, reason });
    if c.node(FALSE_ID) != Node::False || c.node(TRUE_ID) != Node::True {
        return fail(None, "terminal slots 0/1 are not ⊥/⊤".to_owned());
    }
    for (i, n) in c.nodes().iter().enumerate() {
        let id = NodeId(i as u32);
        match *n {
            Node::False | Node::True => {
                if i > 1 {
                    return fail(Some(id), "duplicate terminal".to_owned());
                }
            }
            Node::Decision { var, high, low } => {
                if var == 0 || var as usize > c.k() {
                    return fail(Some(id), format!("variable {var} out of range"));
                }
                let pos = c.pos_of_var(var);
                for child in [high, low] {
                    if child.0 as usize >= i {
                        return fail(Some(id), "child does not precede parent".to_owned());
                    }
                    if let Node::Decision { var: cv, .. } = c.node(child) {
                        let cpos = c.pos_of_var(cv);
                        if cpos >= pos {
                            return fail(
                                Some(id),
                                format!("child position {cpos} not below parent {pos}"),
                            );
                        }
                        if !c.is_reduced() && cpos != pos - 1 {
                            return fail(
                                Some(id),
                                format!("level skip {pos} -> {cpos} in unreduced circuit"),
                            );
                        }
                    }
                }
            }
        }
    }
    if c.root().0 as usize >= c.node_count() {
        return fail(None, "root out of range".to_owned());
    }
    Ok(())
}

/// Everything the pipeline produced, for callers that need more than the
/// final circuit.
#[derive(Clone, Debug)]
pub struct Compilation {
    /// Trimmed circuit with leaves renamed to the original labeling.
    pub circuit: Circuit,
    /// The full table circuit before trimming, in reordered labels.
    pub untrimmed: Circuit,
    pub table: CompileTable,
    pub spans: VertexSpans,
    pub ordering: EdgeOrdering,
}

/// Full pipeline: order the edges topologically, build the table, trim,
/// rename leaves back to the file labeling.
pub fn compile_full(d: &Dag) -> Result<Compilation, CompileError> {
    if let Err(cycle) = validate_acyclic(d) {
        return Err(CompileError::Cycle(d.cycle_names(&cycle)));
    }
    if d.source() == d.target() {
        return Err(CompileError::Degenerate);
    }
    let ordering = topological_edge_order(d).expect("acyclicity was just checked");
    let spans = vertex_spans(d, &ordering);
    let (untrimmed, table) = build_table(d, &ordering);
    let trimmed = trim(&untrimmed, d, &spans, &table);
    let circuit = rename_leaves(&trimmed, &ordering.relabel())?;
    debug_assert!(validate_structure(&circuit).is_ok());
    Ok(Compilation {
        circuit,
        untrimmed,
        table,
        spans,
        ordering,
    })
}

/// Compiles the s-t simple-path function of `d` into an ordered decision
/// diagram over the original edge labels.
pub fn compile(d: &Dag) -> Result<Circuit, CompileError> {
    compile_full(d).map(|c| c.circuit)
}
