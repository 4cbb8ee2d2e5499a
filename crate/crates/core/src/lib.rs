//! Graph algorithms over a vertex-integrity separator decomposition.
//!
//! Given a graph and a `k`-separator (a set `S` with `|S| <= k` whose removal
//! leaves components of at most `k - |S|` vertices), the components of
//! `G - S` are packed into `O(n/k)` parts of `O(k)` vertices each. Every
//! algorithm here exploits that block structure: girth and fixed-length cycle
//! detection, induced four-vertex subgraph counting and search, randomized
//! algebraic maximum matching over GF(2^q), and unweighted all-pairs shortest
//! paths assembled with min-plus products. Brute-force oracles for each
//! algorithm live in [`oracle`].
//!
//! ```
//! use sepgraph::{build_decomposition, greedy_separator, Graph};
//!
//! // A 9-cycle with separator {0, 3, 6}: parts have at most two vertices.
//! let g = Graph::cycle(9);
//! let d = build_decomposition(&g, &[0, 3, 6], 5).unwrap();
//!
//! let girth = sepgraph::cycles::girth(&g, &d).unwrap().unwrap();
//! assert_eq!(girth.length, 9);
//!
//! let matching = sepgraph::matching::max_matching(&g, &d, 7).unwrap();
//! assert_eq!(matching.size(), 4);
//!
//! let dist = sepgraph::apsp::apsp(&g, &d).unwrap();
//! assert_eq!(dist.get(0, 4), 4);
//!
//! // A separator found automatically works the same way.
//! let (s, k) = greedy_separator(&g);
//! let d2 = build_decomposition(&g, &s, k).unwrap();
//! assert!(sepgraph::cycles::even_girth(&g, &d2).unwrap().is_none());
//! ```

pub mod apsp;
pub mod cycles;
pub mod gf;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod subgraph4;

pub use graph::{
    build_decomposition, exact_vertex_integrity, generate_planted, greedy_separator,
    validate_separator, Graph, GraphError, PlantedInstance, SeparatorDecomposition,
};
