//! Kernelization and exact solving for the p-size separator problem: delete
//! as few vertices as possible so that every remaining component has at most
//! `p` vertices.

pub mod adjust;
pub mod bipartite;
pub mod cli;
pub mod crown;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;

pub use adjust::{connect, p_separator_vertex, SplitPair};
pub use crown::{crown, verify_crown, CrownDecomposition, Star};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use kernel::{kernelize, kernelize_quadratic, KernelConfig, KernelOutcome, Mode, Verdict};
pub use oracle::{is_p_size_separator, min_p_separator};
