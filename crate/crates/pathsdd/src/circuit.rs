//! Decision-diagram store: node arena, evaluation, statistics and the text
//! serialization used by the CLI.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

/// Dense index into a circuit's node arena.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(pub u32);

/// The shared ⊥ terminal, always at arena slot 0.
pub const FALSE_ID: NodeId = NodeId(0);
/// The shared ⊤ terminal, always at arena slot 1.
pub const TRUE_ID: NodeId = NodeId(1);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    False,
    True,
    /// Tests the variable with the given original 1-based edge label;
    /// `high` is taken when it is 1, `low` when it is 0.
    Decision { var: u32, high: NodeId, low: NodeId },
}

/// Immutable ordered decision diagram over `k` edge variables.
///
/// Children are allocated before parents. Variables are tested along any
/// root-to-terminal walk in strictly decreasing internal position; the
/// position of a variable is given by `pos_of_var`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: NodeId,
    k: usize,
    /// internal position (1-based, index `pos - 1`) -> original label
    var_of_level: Vec<u32>,
    /// original label (1-based, index `var - 1`) -> internal position
    pos_of_var: Vec<u32>,
    reduced: bool,
}

/// Boolean assignment over the edge variables, indexed by original label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn new(bits: Vec<bool>) -> State {
        State { bits }
    }

    pub fn zeros(k: usize) -> State {
        State { bits: vec![false; k] }
    }

    /// Builds the state whose big-endian binary value (`y_1` most
    /// significant) is `index`.
    pub fn from_index(index: u64, k: usize) -> State {
        State {
            bits: (1..=k).map(|j| index >> (k - j) & 1 == 1).collect(),
        }
    }

    pub fn from_bit_string(s: &str) -> Option<State> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(State::new)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of the variable with 1-based original label `var`.
    pub fn get(&self, var: usize) -> bool {
        self.bits[var - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_char(if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("state length {got} does not match variable count {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: bad header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: dangling reference to node {id}")]
    DanglingRef { line: usize, id: u32 },
    #[error("line {line}: node id {id} out of order (children must precede parents)")]
    IdOutOfOrder { line: usize, id: u32 },
    #[error("line {line}: variable {var} out of range 1..={k}")]
    VarOutOfRange { line: usize, var: u32, k: usize },
    #[error("missing root declaration")]
    MissingRoot,
    #[error("declared node count {declared} does not match {actual} nodes")]
    NodeCountMismatch { declared: usize, actual: usize },
    #[error("no consistent variable order exists for this circuit")]
    NoConsistentOrder,
}

pub(crate) struct CircuitBuilder {
    nodes: Vec<Node>,
}

impl CircuitBuilder {
    pub fn new() -> CircuitBuilder {
        CircuitBuilder {
            nodes: vec![Node::False, Node::True],
        }
    }

    pub fn push_decision(&mut self, var: u32, high: NodeId, low: NodeId) -> NodeId {
        debug_assert!((high.0 as usize) < self.nodes.len());
        debug_assert!((low.0 as usize) < self.nodes.len());
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node::Decision { var, high, low });
        id
    }

    pub fn finish(self, root: NodeId, k: usize, var_of_level: Vec<u32>, reduced: bool) -> Circuit {
        Circuit::from_parts(self.nodes, root, k, var_of_level, reduced)
    }
}

impl Circuit {
    pub(crate) fn from_parts(
        nodes: Vec<Node>,
        root: NodeId,
        k: usize,
        var_of_level: Vec<u32>,
        reduced: bool,
    ) -> Circuit {
        debug_assert_eq!(var_of_level.len(), k);
        let mut pos_of_var = vec![0u32; k];
        for (i, &v) in var_of_level.iter().enumerate() {
            pos_of_var[v as usize - 1] = i as u32 + 1;
        }
        Circuit {
            nodes,
            root,
            k,
            var_of_level,
            pos_of_var,
            reduced,
        }
    }

    /// Circuit consisting of a single terminal.
    pub fn terminal(value: bool, k: usize) -> Circuit {
        Circuit::from_parts(
            vec![Node::False, Node::True],
            if value { TRUE_ID } else { FALSE_ID },
            k,
            (1..=k as u32).collect(),
            false,
        )
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id.0 as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Whether an isomorphism-merging reduction pass produced this circuit;
    /// reduced circuits may skip levels.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Original label tested at 1-based internal position `pos`.
    pub fn var_of_level(&self, pos: usize) -> u32 {
        self.var_of_level[pos - 1]
    }

    /// 1-based internal position of 1-based original label `var`.
    pub fn pos_of_var(&self, var: u32) -> usize {
        self.pos_of_var[var as usize - 1] as usize
    }

    /// Internal position of a node: its variable's position, 0 for terminals.
    pub fn level_of(&self, id: NodeId) -> usize {
        match self.node(id) {
            Node::Decision { var, .. } => self.pos_of_var(var),
            _ => 0,
        }
    }

    pub fn is_false(&self) -> bool {
        self.root == FALSE_ID
    }

    /// Evaluates the circuit on a full state. Variables skipped on the walk
    /// are unconstrained.
    pub fn evaluate(&self, y: &State) -> Result<bool, CircuitError> {
        if y.len() != self.k {
            return Err(CircuitError::LengthMismatch {
                expected: self.k,
                got: y.len(),
            });
        }
        Ok(self.evaluate_from(self.root, y))
    }

    /// Evaluates the sub-circuit rooted at `node`; `y` must cover every
    /// variable the walk can test.
    pub fn evaluate_from(&self, node: NodeId, y: &State) -> bool {
        let mut cur = node;
        loop {
            match self.node(cur) {
                Node::False => return false,
                Node::True => return true,
                Node::Decision { var, high, low } => {
                    cur = if y.get(var as usize) { high } else { low };
                }
            }
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if seen[id.0 as usize] {
                continue;
            }
            seen[id.0 as usize] = true;
            if let Node::Decision { high, low, .. } = self.node(id) {
                stack.push(high);
                stack.push(low);
            }
        }
        seen
    }

    pub fn stats(&self) -> Stats {
        let decision_count = self
            .nodes
            .iter()
            .filter(|n| matches!(n, Node::Decision { .. }))
            .count();
        // depth: decision levels on the longest root-terminal walk
        let mut depth = vec![0usize; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::Decision { high, low, .. } = n {
                depth[i] = 1 + depth[high.0 as usize].max(depth[low.0 as usize]);
            }
        }
        Stats {
            decision_count,
            terminal_count: 2,
            wire_count: 2 * decision_count,
            depth: depth[self.root.0 as usize],
        }
    }

    /// Writes the line-oriented circuit text format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "pathsdd 1 {} {}", self.k, self.nodes.len()).unwrap();
        writeln!(out, "F 0").unwrap();
        writeln!(out, "T 1").unwrap();
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            match n {
                Node::Decision { var, high, low } => {
                    writeln!(out, "D {} {} {} {}", i, var, high.0, low.0).unwrap();
                }
                _ => unreachable!("terminals live at slots 0 and 1"),
            }
        }
        writeln!(out, "root {}", self.root.0).unwrap();
        out
    }

    /// Parses the circuit text format, validating references and structure.
    pub fn deserialize(text: &str) -> Result<Circuit, FormatError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (line, header) = lines.next().ok_or(FormatError::Header {
            line: 1,
            reason: "empty input".to_owned(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "pathsdd" || parts[1] != "1" {
            return Err(FormatError::Header {
                line,
                reason: "expected `pathsdd 1 <k> <node-count>`".to_owned(),
            });
        }
        let k: usize = parts[2].parse().map_err(|_| FormatError::Header {
            line,
            reason: "bad variable count".to_owned(),
        })?;
        let declared: usize = parts[3].parse().map_err(|_| FormatError::Header {
            line,
            reason: "bad node count".to_owned(),
        })?;

        let mut nodes = vec![Node::False, Node::True];
        let mut root: Option<NodeId> = None;
        let mut seen_f = false;
        let mut seen_t = false;
        for (line, raw) in lines {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            let malformed = |reason: &str| FormatError::Malformed {
                line,
                reason: reason.to_owned(),
            };
            match toks[0] {
                "F" => {
                    if toks != ["F", "0"] || seen_f {
                        return Err(malformed("expected a single `F 0`"));
                    }
                    seen_f = true;
                }
                "T" => {
                    if toks != ["T", "1"] || seen_t {
                        return Err(malformed("expected a single `T 1`"));
                    }
                    seen_t = true;
                }
                "D" => {
                    if toks.len() != 5 {
                        return Err(malformed("expected `D <id> <var> <high> <low>`"));
                    }
                    let nums: Vec<u32> = toks[1..]
                        .iter()
                        .map(|t| t.parse::<u32>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| malformed("expected numeric fields"))?;
                    let (id, var, high, low) = (nums[0], nums[1], nums[2], nums[3]);
                    if id as usize != nodes.len() {
                        return Err(FormatError::IdOutOfOrder { line, id });
                    }
                    if var == 0 || var as usize > k {
                        return Err(FormatError::VarOutOfRange { line, var, k });
                    }
                    for &child in &[high, low] {
                        if child >= id {
                            return Err(FormatError::DanglingRef { line, id: child });
                        }
                    }
                    nodes.push(Node::Decision {
                        var,
                        high: NodeId(high),
                        low: NodeId(low),
                    });
                }
                "root" => {
                    if toks.len() != 2 {
                        return Err(malformed("expected `root <id>`"));
                    }
                    let id: u32 = toks[1]
                        .parse()
                        .map_err(|_| malformed("bad root id"))?;
                    if id as usize >= nodes.len() {
                        return Err(FormatError::DanglingRef { line, id });
                    }
                    root = Some(NodeId(id));
                }
                _ => return Err(malformed("unknown directive")),
            }
        }
        let root = root.ok_or(FormatError::MissingRoot)?;
        if nodes.len() != declared {
            return Err(FormatError::NodeCountMismatch {
                declared,
                actual: nodes.len(),
            });
        }

        let var_of_level = recover_variable_order(&nodes, k)?;
        let mut circuit = Circuit::from_parts(nodes, root, k, var_of_level, false);
        circuit.reduced = !circuit.is_quasi_reduced();
        Ok(circuit)
    }

    /// True when every decision child is a terminal or sits exactly one
    /// level below its parent.
    pub fn is_quasi_reduced(&self) -> bool {
        self.nodes.iter().all(|n| match n {
            Node::Decision { var, high, low } => {
                let pos = self.pos_of_var(*var);
                [*high, *low].iter().all(|&c| match self.node(c) {
                    Node::Decision { var: cv, .. } => self.pos_of_var(cv) == pos - 1,
                    _ => true,
                })
            }
            _ => true,
        })
    }

    /// DOT export: decision nodes as ellipses labeled `Y<var>`, solid edge
    /// for the high branch, dashed for low, terminals as boxes.
    pub fn to_dot(&self) -> String {
        let reachable = self.reachable();
        let mut out = String::from("digraph circuit {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            if !reachable[i] {
                continue;
            }
            match n {
                Node::False => writeln!(out, "  n{i} [shape=box, label=\"⊥\"];").unwrap(),
                Node::True => writeln!(out, "  n{i} [shape=box, label=\"⊤\"];").unwrap(),
                Node::Decision { var, .. } => {
                    writeln!(out, "  n{i} [shape=ellipse, label=\"Y{var}\"];").unwrap()
                }
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if !reachable[i] {
                continue;
            }
            if let Node::Decision { high, low, .. } = n {
                writeln!(out, "  n{i} -> n{};", high.0).unwrap();
                writeln!(out, "  n{i} -> n{} [style=dashed];", low.0).unwrap();
            }
        }
        writeln!(out, "  root [shape=plaintext];").unwrap();
        writeln!(out, "  root -> n{};", self.root.0).unwrap();
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub decision_count: usize,
    pub terminal_count: usize,
    pub wire_count: usize,
    pub depth: usize,
}

/// Rebuilds a variable order consistent with the wire structure: every
/// parent's variable must sit above its decision children's. Ties are broken
/// by ascending label, which recovers the original order for circuits whose
/// walks test consecutive positions.
fn recover_variable_order(nodes: &[Node], k: usize) -> Result<Vec<u32>, FormatError> {
    let mut above: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k + 1]; // child var -> parent vars
    let mut indeg = vec![0usize; k + 1];
    for n in nodes {
        if let Node::Decision { var, high, low } = n {
            for &child in &[high, low] {
                if let Node::Decision { var: cv, .. } = nodes[child.0 as usize] {
                    if above[cv as usize].insert(*var) {
                        indeg[*var as usize] += 1;
                    }
                }
            }
        }
    }
    let mut ready: BTreeSet<u32> = (1..=k as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &p in &above[v as usize] {
            indeg[p as usize] -= 1;
            if indeg[p as usize] == 0 {
                ready.insert(p);
            }
        }
    }
    if order.len() != k {
        return Err(FormatError::NoConsistentOrder);
    }
    Ok(order)
}
