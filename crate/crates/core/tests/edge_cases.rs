//! Degenerate inputs across the whole surface: empty and single-vertex
//! graphs, edgeless graphs, complete graphs, isolated vertices, and
//! everything-in-the-separator decompositions.

use sepgraph::apsp;
use sepgraph::cycles;
use sepgraph::graph::{build_decomposition, greedy_separator, validate_separator, Graph};
use sepgraph::matching;
use sepgraph::oracle;
use sepgraph::subgraph4::{self, FourGraph};

fn decomp(g: &Graph) -> sepgraph::graph::SeparatorDecomposition {
    let (s, k) = greedy_separator(g);
    build_decomposition(g, &s, k).unwrap()
}

#[test]
fn empty_graph() {
    let g = Graph::empty(0);
    let d = decomp(&g);
    assert!(cycles::girth(&g, &d).unwrap().is_none());
    assert!(cycles::even_girth(&g, &d).unwrap().is_none());
    assert!(matching::has_perfect_matching(&g, &d, 2, 1).unwrap());
    assert_eq!(matching::find_perfect_matching(&g, &d, 1).unwrap().unwrap().size(), 0);
    assert_eq!(matching::max_matching(&g, &d, 1).unwrap().size(), 0);
    let m = apsp::apsp(&g, &d).unwrap();
    assert_eq!(m.rows(), 0);
}

#[test]
fn single_vertex_and_edgeless() {
    for n in [1usize, 2, 5] {
        let g = Graph::empty(n);
        let d = decomp(&g);
        assert!(cycles::girth(&g, &d).unwrap().is_none());
        assert_eq!(matching::max_matching(&g, &d, 1).unwrap().size(), 0);
        assert_eq!(
            matching::has_perfect_matching(&g, &d, 2, 1).unwrap(),
            n == 0,
            "edgeless n = {}",
            n
        );
        let m = apsp::apsp(&g, &d).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    assert_eq!(m.get(u, v), 0);
                } else {
                    assert_eq!(m.get(u, v), apsp::UNREACHABLE);
                }
            }
        }
        if n >= 4 {
            let (r, q) = subgraph4::count_mod(&g, &d, FourGraph::CoDiamond).unwrap();
            assert_eq!(r, 0 % q);
            assert!(subgraph4::detect_independent_set(&g, &d, n).unwrap());
            assert!(!subgraph4::detect_clique(&g, &d, 2).unwrap());
        }
    }
}

#[test]
fn complete_graphs() {
    for n in [4usize, 6, 8] {
        let g = Graph::complete(n);
        let d = decomp(&g);
        assert_eq!(cycles::girth(&g, &d).unwrap().unwrap().length, 3);
        assert_eq!(cycles::even_girth(&g, &d).unwrap().unwrap().length, 4);
        assert_eq!(matching::max_matching(&g, &d, 1).unwrap().size(), n / 2);
        assert_eq!(matching::has_perfect_matching(&g, &d, 3, 1).unwrap(), n % 2 == 0);
        let m = apsp::apsp(&g, &d).unwrap();
        assert!(m.validate_square());
        assert!((0..n).all(|u| (0..n).all(|v| m.get(u, v) == u32::from(u != v))));
        assert!(subgraph4::detect_clique(&g, &d, n).unwrap());
        assert!(!subgraph4::detect_clique(&g, &d, n + 1).unwrap());
        assert!(!subgraph4::detect_independent_set(&g, &d, 2).unwrap());
    }
}

#[test]
fn whole_graph_separator() {
    // S = V is always valid with k = n; parts are empty.
    let g = Graph::cycle(6);
    let all: Vec<usize> = (0..6).collect();
    assert!(validate_separator(&g, &all, 6).unwrap());
    let d = build_decomposition(&g, &all, 6).unwrap();
    assert_eq!(d.parts.len(), 0);
    assert_eq!(cycles::girth(&g, &d).unwrap().unwrap().length, 6);
    assert_eq!(cycles::even_girth(&g, &d).unwrap().unwrap().length, 6);
    assert_eq!(matching::max_matching(&g, &d, 1).unwrap().size(), 3);
    let m = apsp::apsp(&g, &d).unwrap();
    assert_eq!(m.get(0, 3), 3);
    let report = cycles::find_cycle_of_length(&g, &d, 6, 0.01, 1).unwrap().unwrap();
    assert!(report.validate(&g));
}

#[test]
fn isolated_vertices_mix() {
    // A triangle, an edge, and two isolated vertices.
    let g = Graph::new(7, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
    let d = decomp(&g);
    assert_eq!(cycles::girth(&g, &d).unwrap().unwrap().length, 3);
    assert!(cycles::even_girth(&g, &d).unwrap().is_none());
    let mm = matching::max_matching(&g, &d, 1).unwrap();
    assert_eq!(mm.size(), 2);
    assert!(!matching::has_perfect_matching(&g, &d, 3, 1).unwrap());
    let m = apsp::apsp(&g, &d).unwrap();
    assert_eq!(m.get(0, 3), apsp::UNREACHABLE);
    assert_eq!(m.get(5, 6), apsp::UNREACHABLE);
    assert_eq!(m.get(3, 4), 1);
    assert_eq!(m, {
        let want = oracle::oracle_apsp(&g);
        let mut out = apsp::DistanceMatrix::filled(7, 7, apsp::UNREACHABLE);
        for u in 0..7 {
            for v in 0..7 {
                if want[u][v] != usize::MAX {
                    out.set(u, v, want[u][v] as u32);
                }
            }
        }
        out
    });
}

#[test]
fn two_vertex_graphs() {
    let edge = Graph::new(2, &[(0, 1)]).unwrap();
    let d = decomp(&edge);
    assert!(matching::has_perfect_matching(&edge, &d, 2, 1).unwrap());
    let pm = matching::find_perfect_matching(&edge, &d, 1).unwrap().unwrap();
    assert_eq!(pm.edges, vec![(0, 1)]);
    assert!(cycles::girth(&edge, &d).unwrap().is_none());
}
