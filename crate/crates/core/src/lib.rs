//! Hasse diagrams of finite closure systems and their use for polyhedral
//! duals: face lattices, extended tight spans of regular subdivisions, and
//! tropical linear spaces of valuated matroids in their coarsest structure.
//!
//! The pipeline is
//! [`exactgeom::hull`] → [`subdivision::regular_subdivision`] →
//! [`closure::ganter_hasse`] over [`subdivision::tight_span_closure`] →
//! [`subdivision::coordinatize`]. All arithmetic is exact.

pub mod closure;
pub mod exactgeom;
pub mod matroid;
pub mod oracle;
pub mod subdivision;
pub mod troplin;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("node cap of {cap} exceeded after {nodes} closed sets")]
    NodeCap { cap: usize, nodes: usize },
    #[error("valuation is not matroidal: {0}")]
    NotMatroidal(matroid::EdgeWitness),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
