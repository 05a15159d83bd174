//! Graph data model, edge-list parsing and the preprocessing steps needed
//! before compilation: endpoint merging, topological edge ordering and
//! per-vertex edge spans.

use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Dense index of a vertex inside a [`Dag`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub usize);

/// A directed edge. Its original label is its position in the edge list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Directed graph with a labeled edge list and designated source/target.
///
/// Edge labels are 1-based and given by position in the list (file order).
/// Parallel edges are allowed and are distinct variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Dag {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    source: VertexId,
    target: VertexId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: self-loop on vertex `{vertex}`")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate `{directive}` declaration")]
    Duplicate { line: usize, directive: char },
    #[error("missing `{directive}` declaration")]
    Missing { directive: char },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph contains a directed cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("source and target coincide after merging")]
    Degenerate,
    #[error("prefix index {j} out of range 0..={k}")]
    PrefixOutOfRange { j: usize, k: usize },
}

impl Dag {
    /// Builds a `Dag` from vertex tokens. Intended for tests and generators;
    /// the edge order passed in defines the original labeling.
    pub fn from_edges(
        source: &str,
        target: &str,
        edges: &[(&str, &str)],
    ) -> Result<Dag, ParseError> {
        let mut text = String::new();
        writeln!(text, "s {source}").unwrap();
        writeln!(text, "t {target}").unwrap();
        for (tail, head) in edges {
            writeln!(text, "e {tail} {head}").unwrap();
        }
        parse_edge_list(&text)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Number of edges, `k` in the construction.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for e in &self.edges {
            deg[e.head.0] += 1;
        }
        deg
    }

    #[cfg(test)]
    fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for e in &self.edges {
            deg[e.tail.0] += 1;
        }
        deg
    }

    /// Searches for a directed cycle; returns it as a vertex sequence whose
    /// first and last entries coincide.
    pub fn find_cycle(&self) -> Option<Vec<VertexId>> {
        let n = self.names.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.tail.0].push(e.head);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            let mut stack: Vec<(VertexId, usize)> = vec![(VertexId(start), 0)];
            color[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < adj[v.0].len() {
                    let w = adj[v.0][*next];
                    *next += 1;
                    match color[w.0] {
                        0 => {
                            color[w.0] = 1;
                            stack.push((w, 0));
                        }
                        1 => {
                            let pos = stack.iter().position(|&(x, _)| x == w).unwrap();
                            let mut cycle: Vec<VertexId> =
                                stack[pos..].iter().map(|&(x, _)| x).collect();
                            cycle.push(w);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v.0] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn cycle_names(&self, cycle: &[VertexId]) -> Vec<String> {
        cycle.iter().map(|&v| self.name(v).to_owned()).collect()
    }

    /// Serializes back to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "s {}", self.name(self.source)).unwrap();
        writeln!(out, "t {}", self.name(self.target)).unwrap();
        for e in &self.edges {
            writeln!(out, "e {} {}", self.name(e.tail), self.name(e.head)).unwrap();
        }
        out
    }
}

/// Parses the line-oriented edge-list format.
///
/// `# comment`, `s <vertex>`, `t <vertex>` (each exactly once, before any
/// edge), `e <tail> <head>` one per edge; file order defines the original
/// labeling. Vertex ids are arbitrary non-whitespace tokens.
pub fn parse_edge_list(text: &str) -> Result<Dag, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let intern = |tok: &str, names: &mut Vec<String>, index: &mut HashMap<String, VertexId>| {
        if let Some(&id) = index.get(tok) {
            return id;
        }
        let id = VertexId(names.len());
        names.push(tok.to_owned());
        index.insert(tok.to_owned(), id);
        id
    };

    let mut source: Option<VertexId> = None;
    let mut target: Option<VertexId> = None;
    let mut edges: Vec<Edge> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let directive = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "s" | "t" => {
                if rest.len() != 1 {
                    return Err(ParseError::Malformed {
                        line,
                        reason: format!("`{directive}` expects exactly one vertex id"),
                    });
                }
                if !edges.is_empty() {
                    return Err(ParseError::Malformed {
                        line,
                        reason: format!("`{directive}` must appear before any edge"),
                    });
                }
                let slot = if directive == "s" { &mut source } else { &mut target };
                if slot.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        directive: directive.chars().next().unwrap(),
                    });
                }
                *slot = Some(intern(rest[0], &mut names, &mut index));
            }
            "e" => {
                if rest.len() != 2 {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "`e` expects exactly two vertex ids".to_owned(),
                    });
                }
                if source.is_none() {
                    return Err(ParseError::Missing { directive: 's' });
                }
                if target.is_none() {
                    return Err(ParseError::Missing { directive: 't' });
                }
                if rest[0] == rest[1] {
                    return Err(ParseError::SelfLoop {
                        line,
                        vertex: rest[0].to_owned(),
                    });
                }
                let tail = intern(rest[0], &mut names, &mut index);
                let head = intern(rest[1], &mut names, &mut index);
                edges.push(Edge { tail, head });
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("unknown directive `{other}`"),
                });
            }
        }
    }

    let source = source.ok_or(ParseError::Missing { directive: 's' })?;
    let target = target.ok_or(ParseError::Missing { directive: 't' })?;
    Ok(Dag {
        names,
        index,
        edges,
        source,
        target,
    })
}

/// Checks acyclicity; on failure the witness is one cycle as a vertex
/// sequence (first entry repeated at the end).
pub fn validate_acyclic(d: &Dag) -> Result<(), Vec<VertexId>> {
    match d.find_cycle() {
        None => Ok(()),
        Some(c) => Err(c),
    }
}

/// Merges all in-degree-0 vertices into a single source and all out-degree-0
/// vertices into a single sink, reconnecting their edges. The survivor on
/// each side is the lexicographically smallest vertex id; edge count and edge
/// order are preserved. The set of source-to-sink path states is unchanged.
pub fn merge_endpoints(d: &Dag) -> Result<Dag, GraphError> {
    let indeg = d.in_degrees();
    let sources: Vec<VertexId> = d
        .vertex_ids()
        .filter(|v| indeg[v.0] == 0)
        .collect();
    let surv_s = *sources
        .iter()
        .min_by_key(|&&v| d.name(v))
        .expect("a nonempty DAG has a source");

    let mut edges = d.edges.clone();
    let mut removed = vec![false; d.vertex_count()];
    for &v in &sources {
        if v != surv_s {
            removed[v.0] = true;
        }
    }
    for e in &mut edges {
        if removed[e.tail.0] {
            e.tail = surv_s;
        }
    }

    // sink side, on the reconnected edge list
    let mut outdeg = vec![0usize; d.vertex_count()];
    for e in &edges {
        outdeg[e.tail.0] += 1;
    }
    let sinks: Vec<VertexId> = d
        .vertex_ids()
        .filter(|v| !removed[v.0] && outdeg[v.0] == 0)
        .collect();
    let surv_t = *sinks
        .iter()
        .min_by_key(|&&v| d.name(v))
        .expect("a nonempty DAG has a sink");
    for &v in &sinks {
        if v != surv_t {
            removed[v.0] = true;
        }
    }
    for e in &mut edges {
        if removed[e.head.0] {
            e.head = surv_t;
        }
    }

    if surv_s == surv_t {
        return Err(GraphError::Degenerate);
    }

    // compact the vertex set
    let mut names = Vec::new();
    let mut index = HashMap::new();
    let mut remap = vec![VertexId(usize::MAX); d.vertex_count()];
    for v in d.vertex_ids() {
        if !removed[v.0] {
            let id = VertexId(names.len());
            names.push(d.name(v).to_owned());
            index.insert(d.name(v).to_owned(), id);
            remap[v.0] = id;
        }
    }
    let edges = edges
        .into_iter()
        .map(|e| Edge {
            tail: remap[e.tail.0],
            head: remap[e.head.0],
        })
        .collect();
    Ok(Dag {
        names,
        index,
        edges,
        source: remap[surv_s.0],
        target: remap[surv_t.0],
    })
}

/// Topological relabeling of the edges: position `i` (1-based) maps to the
/// original edge, such that edge positions strictly increase along every
/// directed path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrdering {
    rho: Vec<usize>,
    rho_inverse: Vec<usize>,
}

impl EdgeOrdering {
    pub fn k(&self) -> usize {
        self.rho.len()
    }

    /// 0-based original edge index at 1-based position `pos`.
    pub fn original_index(&self, pos: usize) -> usize {
        self.rho[pos - 1]
    }

    /// 1-based position of the edge with 0-based original index `orig`.
    pub fn position(&self, orig: usize) -> usize {
        self.rho_inverse[orig] + 1
    }

    /// The leaf relabeling applied after compilation: 1-based position to
    /// 1-based original label.
    pub fn relabel(&self) -> Vec<usize> {
        self.rho.iter().map(|&orig| orig + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rho.iter().enumerate().all(|(i, &o)| i == o)
    }
}

/// Computes a deterministic topological edge order: Kahn vertex order with
/// ties broken by vertex id, edges sorted by (tail's topological index,
/// original label).
pub fn topological_edge_order(d: &Dag) -> Result<EdgeOrdering, GraphError> {
    let n = d.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for e in d.edges() {
        adj[e.tail.0].push(e.head);
        indeg[e.head.0] += 1;
    }
    let mut ready: std::collections::BTreeSet<(&str, VertexId)> = d
        .vertex_ids()
        .filter(|v| indeg[v.0] == 0)
        .map(|v| (d.name(v), v))
        .collect();
    let mut topo_index = vec![usize::MAX; n];
    let mut next = 0usize;
    while let Some(&(name, v)) = ready.iter().next() {
        ready.remove(&(name, v));
        topo_index[v.0] = next;
        next += 1;
        for &w in &adj[v.0] {
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                ready.insert((d.name(w), w));
            }
        }
    }
    if next < n {
        let cycle = d.find_cycle().expect("kahn failed, so a cycle exists");
        return Err(GraphError::Cycle(d.cycle_names(&cycle)));
    }
    let mut rho: Vec<usize> = (0..d.edge_count()).collect();
    rho.sort_by_key(|&e| (topo_index[d.edges()[e].tail.0], e));
    let mut rho_inverse = vec![0usize; rho.len()];
    for (pos, &orig) in rho.iter().enumerate() {
        rho_inverse[orig] = pos;
    }
    Ok(EdgeOrdering { rho, rho_inverse })
}

/// First-incoming and last-outgoing edge positions per vertex, over a
/// topological edge order. Vertices without incoming (resp. outgoing) edges
/// have no entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpans {
    sigma_m: Vec<Option<usize>>,
    sigma_max: Vec<Option<usize>>,
}

impl VertexSpans {
    /// Position of the first incoming edge of `v`, 1-based.
    pub fn sigma_m(&self, v: VertexId) -> Option<usize> {
        self.sigma_m[v.0]
    }

    /// Position of the last outgoing edge of `v`, 1-based.
    pub fn sigma_max(&self, v: VertexId) -> Option<usize> {
        self.sigma_max[v.0]
    }
}

pub fn vertex_spans(d: &Dag, ord: &EdgeOrdering) -> VertexSpans {
    let mut sigma_m = vec![None; d.vertex_count()];
    let mut sigma_max = vec![None; d.vertex_count()];
    for pos in 1..=ord.k() {
        let e = d.edges()[ord.original_index(pos)];
        if sigma_m[e.head.0].is_none() {
            sigma_m[e.head.0] = Some(pos);
        }
        sigma_max[e.tail.0] = Some(pos);
    }
    VertexSpans { sigma_m, sigma_max }
}

/// The prefix graph `D^j`: the first `j` edges of the order and the vertices
/// incident to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
}

pub fn prefix_graph(d: &Dag, ord: &EdgeOrdering, j: usize) -> Result<PrefixGraph, GraphError> {
    if j > ord.k() {
        return Err(GraphError::PrefixOutOfRange { j, k: ord.k() });
    }
    let edges: Vec<Edge> = (1..=j).map(|pos| d.edges()[ord.original_index(pos)]).collect();
    let mut vertices: Vec<VertexId> = edges
        .iter()
        .flat_map(|e| [e.tail, e.head])
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(PrefixGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Dag {
        Dag::from_edges("S", "T", &[("S", "A"), ("S", "B"), ("A", "T"), ("B", "T")]).unwrap()
    }

    #[test]
    fn parse_smallest_instance() {
        let d = parse_edge_list("s S\nt T\ne S T\n").unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 1);
        assert_eq!(d.name(d.source()), "S");
        assert_eq!(d.name(d.target()), "T");
    }

    #[test]
    fn parse_diamond() {
        let d = parse_edge_list("s S\nt T\ne S A\ne S B\ne A T\ne B T\n").unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edge_count(), 4);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = parse_edge_list("s S\nt T\ne S S\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::SelfLoop {
                line: 3,
                vertex: "S".to_owned()
            }
        );
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_edge_list("s S\nt T\ne S\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 3, .. }));
    }

    #[test]
    fn parse_rejects_missing_and_duplicate_endpoints() {
        assert_eq!(
            parse_edge_list("s S\ne S T\n").unwrap_err(),
            ParseError::Missing { directive: 't' }
        );
        assert_eq!(
            parse_edge_list("t T\n").unwrap_err(),
            ParseError::Missing { directive: 's' }
        );
        assert_eq!(
            parse_edge_list("s S\ns S\nt T\n").unwrap_err(),
            ParseError::Duplicate {
                line: 2,
                directive: 's'
            }
        );
    }

    #[test]
    fn parse_allows_comments_and_blank_lines() {
        let d = parse_edge_list("# a comment\ns S\n\nt T\ne S T\n").unwrap();
        assert_eq!(d.edge_count(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let d = diamond();
        let back = parse_edge_list(&d.to_edge_list()).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn acyclic_cases() {
        assert!(validate_acyclic(&diamond()).is_ok());
        let single = parse_edge_list("s S\nt T\ne S T\n").unwrap();
        assert!(validate_acyclic(&single).is_ok());
        let cyclic = Dag::from_edges("a", "b", &[("a", "b"), ("b", "a")]).unwrap();
        let witness = validate_acyclic(&cyclic).unwrap_err();
        assert_eq!(witness.len(), 3);
        assert_eq!(witness.first(), witness.last());
    }

    #[test]
    fn merge_identity_on_single_endpoint_graphs() {
        let d = diamond();
        assert_eq!(merge_endpoints(&d).unwrap(), d);
        let single = Dag::from_edges("a", "b", &[("a", "b")]).unwrap();
        assert_eq!(merge_endpoints(&single).unwrap(), single);
    }

    #[test]
    fn merge_two_sources() {
        let d = Dag::from_edges("a", "c", &[("a", "c"), ("b", "c")]).unwrap();
        let m = merge_endpoints(&d).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.name(m.source()), "a");
        assert_eq!(m.name(m.target()), "c");
        for e in m.edges() {
            assert_eq!(m.name(e.tail), "a");
            assert_eq!(m.name(e.head), "c");
        }
    }

    // Accepted states (any source to any sink) coincide before and after
    // merging; checked by brute force over all 2^2 states.
    #[test]
    fn merge_preserves_accepted_states() {
        let d = Dag::from_edges("a", "c", &[("a", "c"), ("b", "c")]).unwrap();
        let m = merge_endpoints(&d).unwrap();
        let before = enumerate_source_sink_paths(&d);
        let after = enumerate_source_sink_paths(&m);
        assert_eq!(before, after);
        assert_eq!(before, vec![vec![false, true], vec![true, false]]);
    }

    // Test-only path enumerator over any-source-to-any-sink semantics.
    fn enumerate_source_sink_paths(d: &Dag) -> Vec<Vec<bool>> {
        let indeg = d.in_degrees();
        let outdeg = d.out_degrees();
        let k = d.edge_count();
        let mut accepted = Vec::new();
        for mask in 1u32..(1 << k) {
            let chosen: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            // chain check: edges must form a single path
            let mut perm_ok = false;
            let mut perm = chosen.clone();
            // try every order of the chosen edges (k tiny in this test)
            let mut orders = vec![perm.clone()];
            while {
                // next_permutation
                let mut i = perm.len().wrapping_sub(1);
                while i > 0 && perm[i - 1] >= perm[i] {
                    i -= 1;
                }
                i > 0
            } {
                let mut i = perm.len() - 1;
                while perm[i - 1] >= perm[i] {
                    i -= 1;
                }
                let mut j = perm.len() - 1;
                while perm[j] <= perm[i - 1] {
                    j -= 1;
                }
                perm.swap(i - 1, j);
                perm[i..].reverse();
                orders.push(perm.clone());
            }
            for order in orders {
                let es: Vec<Edge> = order.iter().map(|&i| d.edges()[i]).collect();
                let chained = es.windows(2).all(|w| w[0].head == w[1].tail);
                let mut verts: Vec<VertexId> = es.iter().map(|e| e.tail).collect();
                verts.push(es.last().unwrap().head);
                let mut uniq = verts.clone();
                uniq.sort();
                uniq.dedup();
                if chained
                    && uniq.len() == verts.len()
                    && indeg[es[0].tail.0] == 0
                    && outdeg[es.last().unwrap().head.0] == 0
                {
                    perm_ok = true;
                }
            }
            if perm_ok {
                accepted.push((0..k).map(|i| mask >> i & 1 == 1).collect());
            }
        }
        accepted.sort();
        accepted
    }

    #[test]
    fn topological_order_identity_when_file_order_is_topological() {
        let d = diamond();
        let ord = topological_edge_order(&d).unwrap();
        assert!(ord.is_identity());
    }

    #[test]
    fn topological_order_fixes_shuffled_diamond() {
        let d = Dag::from_edges("S", "T", &[("A", "T"), ("S", "A"), ("B", "T"), ("S", "B")])
            .unwrap();
        let ord = topological_edge_order(&d).unwrap();
        // (S,A) before (A,T) and (S,B) before (B,T)
        assert!(ord.position(1) < ord.position(0));
        assert!(ord.position(3) < ord.position(2));
    }

    #[test]
    fn topological_order_single_edge() {
        let d = parse_edge_list("s S\nt T\ne S T\n").unwrap();
        let ord = topological_edge_order(&d).unwrap();
        assert_eq!(ord.relabel(), vec![1]);
    }

    #[test]
    fn spans_on_diamond() {
        let d = diamond();
        let ord = topological_edge_order(&d).unwrap();
        let spans = vertex_spans(&d, &ord);
        let v = |n| d.vertex(n).unwrap();
        assert_eq!(spans.sigma_m(v("A")), Some(1));
        assert_eq!(spans.sigma_m(v("B")), Some(2));
        assert_eq!(spans.sigma_m(v("T")), Some(3));
        assert_eq!(spans.sigma_max(v("S")), Some(2));
        assert_eq!(spans.sigma_max(v("A")), Some(3));
        assert_eq!(spans.sigma_max(v("B")), Some(4));
        assert_eq!(spans.sigma_m(v("S")), None);
        assert_eq!(spans.sigma_max(v("T")), None);
    }

    #[test]
    fn spans_on_path() {
        let d = Dag::from_edges("S", "T", &[("S", "A"), ("A", "T")]).unwrap();
        let ord = topological_edge_order(&d).unwrap();
        let spans = vertex_spans(&d, &ord);
        let v = |n| d.vertex(n).unwrap();
        assert_eq!(spans.sigma_m(v("A")), Some(1));
        assert_eq!(spans.sigma_max(v("A")), Some(2));
        assert_eq!(spans.sigma_m(v("T")), Some(2));
    }

    #[test]
    fn prefix_graphs_of_diamond() {
        let d = diamond();
        let ord = topological_edge_order(&d).unwrap();
        let empty = prefix_graph(&d, &ord, 0).unwrap();
        assert!(empty.vertices.is_empty() && empty.edges.is_empty());
        let half = prefix_graph(&d, &ord, 2).unwrap();
        assert_eq!(half.edges.len(), 2);
        assert_eq!(half.vertices.len(), 3);
        let full = prefix_graph(&d, &ord, 4).unwrap();
        assert_eq!(full.edges.len(), 4);
        assert_eq!(full.vertices.len(), 4);
        assert!(prefix_graph(&d, &ord, 5).is_err());
    }
}
