//! Knowledge compilation for s-t simple-path constraints on DAGs.
//!
//! A directed acyclic graph with designated source and target is compiled
//! into an ordered binary decision diagram over its edge variables that
//! accepts exactly the edge sets forming a simple path from source to
//! target. The compiled circuit then supports exact model counting and,
//! under a logit-parameterized product distribution, exact probability,
//! most-probable-state, ranked enumeration and threshold queries.
//!
//! ```
//! use pathsdd::{compile, count_models, parse_edge_list, pqe, Logits64};
//!
//! let d = parse_edge_list("s S\nt T\ne S A\ne S B\ne A T\ne B T\n").unwrap();
//! let c = compile(&d).unwrap();
//! assert_eq!(count_models(&c), 2u32.into());
//! assert_eq!(pqe(&c, &Logits64::zeros(4)).unwrap(), 0.125);
//! ```

pub mod circuit;
pub mod compile;
pub mod gen;
pub mod graph;
pub mod num;
pub mod oracle;
pub mod queries;

pub use circuit::{Circuit, CircuitError, FormatError, Node, NodeId, State, Stats};
pub use compile::{compile, compile_full, reduce, CompileError, Compilation};
pub use graph::{
    merge_endpoints, parse_edge_list, topological_edge_order, Dag, EdgeOrdering, GraphError,
    ParseError, VertexId,
};
pub use num::Real;
pub use oracle::OracleError;
pub use queries::{
    cond_state_prob, cond_thresh, count_models, mpe, pqe, ranked_enumerate, state_prob, thresh,
    Logits, QueryError, RankedIter, WeightedState,
};

/// Logits over `f64`, the default scalar.
pub type Logits64 = Logits<f64>;
/// Logits over `f32` for memory-constrained batches.
pub type Logits32 = Logits<f32>;
