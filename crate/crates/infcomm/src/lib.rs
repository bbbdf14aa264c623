//! Top-k influential community search on vertex-weighted graphs.
//!
//! An influential γ-community is a maximal connected subgraph whose minimum
//! degree is at least γ, scored by the smallest vertex weight it contains.
//! This crate finds the `k` highest-scoring ones by local search: it only
//! touches a prefix of the vertices in decreasing weight order, and that
//! prefix is within a constant factor of the smallest one any index-free
//! algorithm must read.
//!
//! ```
//! use infcomm::{local_search, QueryParams, WeightedGraph};
//!
//! // K5 with weights 1..5
//! let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
//! let (graph, _) = WeightedGraph::from_indexed(&[1.0, 2.0, 3.0, 4.0, 5.0], &edges)?;
//! let result = local_search(&graph, QueryParams::new(3, 2))?;
//! let influences: Vec<f64> = result.communities.iter().map(|c| c.influence()).collect();
//! assert_eq!(influences, [2.0, 1.0]);
//! # Ok::<(), infcomm::Error>(())
//! ```
//!
//! The guide in `book/` walks through the algorithms chapter by chapter; its
//! code samples are compiled and run as doc-tests of this crate.

pub mod baselines;
pub mod community;
pub mod dsu;
pub mod error;
pub mod extensions;
pub mod graph;
pub mod peel;
pub mod search;

pub use community::{Communities, CommunityRef};
pub use error::{Error, Result};
pub use graph::{EdgeId, IngestReport, PrefixSubgraph, VertexId, WeightedGraph};
pub use peel::KeyCvs;
pub use search::{
    local_search, local_search_progressive, CommunityModel, CommunitySink, ProgressiveOptions, QueryParams,
    SearchResult, SearchTrace,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graph.md")]
    mod graph {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/local-search.md")]
    mod local_search {}
    #[doc = include_str!("../../../book/src/progressive.md")]
    mod progressive {}
    #[doc = include_str!("../../../book/src/extensions.md")]
    mod extensions {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
