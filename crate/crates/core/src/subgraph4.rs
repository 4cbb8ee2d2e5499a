//! Induced four-vertex subgraphs: counting modulo a per-pattern modulus from
//! per-edge walk counts, randomized detection by vertex half-deletion,
//! deterministic detection of the 4-cycle and its complement, search by
//! self-reduction, and clique / independent-set detection.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{common_neighbor_blocks, square_on_edges};
use crate::graph::{build_decomposition, check_decomposition, Graph, SeparatorDecomposition};

#[derive(Debug, Error)]
pub enum SubgraphError {
    #[error("pattern {0:?} not supported by this operation")]
    Unsupported(FourGraph),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("failure probability {0} outside (0, 1)")]
    BadFailureProb(f64),
}

/// The eleven non-isomorphic graphs on four vertices. The degree multiset is
/// a complete invariant at this size, which `classify` exploits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FourGraph {
    CoK4,
    CoDiamond,
    CoPaw,
    CoC4,
    CoClaw,
    P4,
    Claw,
    Paw,
    C4,
    Diamond,
    K4,
}

pub const ALL_FOUR_GRAPHS: [FourGraph; 11] = [
    FourGraph::CoK4,
    FourGraph::CoDiamond,
    FourGraph::CoPaw,
    FourGraph::CoC4,
    FourGraph::CoClaw,
    FourGraph::P4,
    FourGraph::Claw,
    FourGraph::Paw,
    FourGraph::C4,
    FourGraph::Diamond,
    FourGraph::K4,
];

impl FourGraph {
    /// Canonical role layout: the adjacency the `vertices` of an
    /// [`InducedEmbedding`] must realize position by position.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            FourGraph::CoK4 => &[],
            FourGraph::CoDiamond => &[(0, 1)],
            FourGraph::CoPaw => &[(0, 1), (1, 2)],
            FourGraph::CoC4 => &[(0, 1), (2, 3)],
            FourGraph::CoClaw => &[(0, 1), (0, 2), (1, 2)],
            FourGraph::P4 => &[(0, 1), (1, 2), (2, 3)],
            FourGraph::Claw => &[(0, 1), (0, 2), (0, 3)],
            FourGraph::Paw => &[(0, 1), (0, 2), (1, 2), (0, 3)],
            FourGraph::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            FourGraph::Diamond => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            FourGraph::K4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        }
    }

    pub fn complement(self) -> FourGraph {
        match self {
            FourGraph::K4 => FourGraph::CoK4,
            FourGraph::CoK4 => FourGraph::K4,
            FourGraph::Diamond => FourGraph::CoDiamond,
            FourGraph::CoDiamond => FourGraph::Diamond,
            FourGraph::Claw => FourGraph::CoClaw,
            FourGraph::CoClaw => FourGraph::Claw,
            FourGraph::Paw => FourGraph::CoPaw,
            FourGraph::CoPaw => FourGraph::Paw,
            FourGraph::C4 => FourGraph::CoC4,
            FourGraph::CoC4 => FourGraph::C4,
            FourGraph::P4 => FourGraph::P4,
        }
    }

    /// CLI token (`co-` prefix for complements).
    pub fn token(self) -> &'static str {
        match self {
            FourGraph::K4 => "k4",
            FourGraph::CoK4 => "co-k4",
            FourGraph::Diamond => "diamond",
            FourGraph::CoDiamond => "co-diamond",
            FourGraph::Claw => "claw",
            FourGraph::CoClaw => "co-claw",
            FourGraph::Paw => "paw",
            FourGraph::CoPaw => "co-paw",
            FourGraph::C4 => "c4",
            FourGraph::CoC4 => "co-c4",
            FourGraph::P4 => "p4",
        }
    }

    pub fn from_token(tok: &str) -> Option<FourGraph> {
        ALL_FOUR_GRAPHS.iter().copied().find(|h| h.token() == tok)
    }

    /// Classify the induced subgraph of `g` on four distinct vertices.
    pub fn classify(g: &Graph, vs: [usize; 4]) -> FourGraph {
        let mut deg = [0u8; 4];
        let mut m = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if g.has_edge(vs[i], vs[j]) {
                    deg[i] += 1;
                    deg[j] += 1;
                    m += 1;
                }
            }
        }
        deg.sort_unstable();
        match (m, deg) {
            (0, _) => FourGraph::CoK4,
            (1, _) => FourGraph::CoDiamond,
            (2, [0, 1, 1, 2]) => FourGraph::CoPaw,
            (2, [1, 1, 1, 1]) => FourGraph::CoC4,
            (3, [0, 2, 2, 2]) => FourGraph::CoClaw,
            (3, [1, 1, 2, 2]) => FourGraph::P4,
            (3, [1, 1, 1, 3]) => FourGraph::Claw,
            (4, [1, 2, 2, 3]) => FourGraph::Paw,
            (4, [2, 2, 2, 2]) => FourGraph::C4,
            (5, _) => FourGraph::Diamond,
            (6, _) => FourGraph::K4,
            other => unreachable!("impossible 4-vertex pattern {:?}", other),
        }
    }

    /// Counting by residue works for every pattern except the clique, the
    /// independent set, the 4-cycle, and its complement.
    pub fn countable(self) -> bool {
        !matches!(
            self,
            FourGraph::K4 | FourGraph::CoK4 | FourGraph::C4 | FourGraph::CoC4
        )
    }
}

/// A witnessed induced copy: `vertices[i]` plays role `i` of
/// `target.edges()`.
#[derive(Debug, Clone)]
pub struct InducedEmbedding {
    pub target: FourGraph,
    pub vertices: [usize; 4],
}

impl InducedEmbedding {
    pub fn validate(&self, g: &Graph) -> bool {
        let vs = self.vertices;
        let mut sorted = vs;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let want = self.target.edges().contains(&(i, j)) || self.target.edges().contains(&(j, i));
                if g.has_edge(vs[i], vs[j]) != want {
                    return false;
                }
            }
        }
        true
    }

    fn checked(g: &Graph, target: FourGraph, vertices: [usize; 4]) -> InducedEmbedding {
        let e = InducedEmbedding { target, vertices };
        assert!(e.validate(g), "embedding failed structural validation");
        e
    }
}

/// Role-ordered embedding of `h` on an unordered 4-set, if the set induces
/// a copy (tries all 24 assignments).
fn embed_on(g: &Graph, h: FourGraph, set: [usize; 4]) -> Option<InducedEmbedding> {
    const PERMS: [[usize; 4]; 24] = permutations4();
    for perm in PERMS {
        let vs = [set[perm[0]], set[perm[1]], set[perm[2]], set[perm[3]]];
        let cand = InducedEmbedding {
            target: h,
            vertices: vs,
        };
        if cand.validate(g) {
            return Some(cand);
        }
    }
    None
}

const fn permutations4() -> [[usize; 4]; 24] {
    let mut out = [[0usize; 4]; 24];
    let mut idx = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[idx] = [a, b, c, d];
                        idx += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

fn checked(g: &Graph, d: &SeparatorDecomposition) -> Result<(), SubgraphError> {
    check_decomposition(g, d).map_err(|e| SubgraphError::InvalidDecomposition(e.to_string()))
}

// ---------------------------------------------------------------------------
// Counting modulo q_H
// ---------------------------------------------------------------------------

/// Per-pattern modulus: the largest q in [2, 6] for which the induced count
/// is an integer combination of degree statistics, triangle counts, and
/// per-edge common-neighbor counts, with the unknowable K4 and C4 terms
/// vanishing mod q. The identities are certified against the exhaustive
/// census in the tests.
pub fn modulus_for(h: FourGraph) -> u64 {
    match h {
        FourGraph::Diamond => 6,
        FourGraph::CoDiamond => 2,
        FourGraph::Claw | FourGraph::CoClaw | FourGraph::Paw | FourGraph::CoPaw | FourGraph::P4 => 4,
        FourGraph::K4 | FourGraph::CoK4 | FourGraph::C4 | FourGraph::CoC4 => {
            unreachable!("no counting modulus for {:?}", h)
        }
    }
}

/// Number of induced copies of `h` modulo [`modulus_for`]`(h)`, computed in
/// linear time from `m`, degrees, and the per-edge `A^2` values of
/// [`square_on_edges`]. Returns `(residue, modulus)`.
pub fn count_mod(
    g: &Graph,
    d: &SeparatorDecomposition,
    h: FourGraph,
) -> Result<(u64, u64), SubgraphError> {
    checked(g, d)?;
    if !h.countable() {
        return Err(SubgraphError::Unsupported(h));
    }
    if g.n() < 4 {
        return Ok((0, modulus_for(h)));
    }
    let n = g.n() as u128;
    let m = g.m() as u128;
    let cod = square_on_edges(g, d);

    // Triangles per vertex: every incident edge contributes its common
    // neighbors; each triangle at v is seen twice.
    let mut tv = vec![0u128; g.n()];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        tv[u] += cod[idx] as u128;
        tv[v] += cod[idx] as u128;
    }
    for t in tv.iter_mut() {
        *t /= 2;
    }
    let triangles: u128 = tv.iter().sum::<u128>() / 3;

    let deg = |v: usize| g.degree(v) as u128;
    let choose2 = |x: u128| x * x.saturating_sub(1) / 2;
    let choose3 = |x: u128| {
        if x < 3 {
            0
        } else {
            x * (x - 1) * (x - 2) / 6
        }
    };

    // Subgraph (not induced) pattern counts computable in O(n + m).
    let p2: u128 = (0..g.n()).map(|v| choose2(deg(v))).sum();
    let k13: u128 = (0..g.n()).map(|v| choose3(deg(v))).sum();
    let p3: u128 = g
        .edges()
        .iter()
        .map(|&(u, v)| (deg(u) - 1) * (deg(v) - 1))
        .sum::<u128>()
        - 3 * triangles;
    let paw: u128 = (0..g.n()).map(|v| tv[v] * deg(v).saturating_sub(2)).sum();
    let dia: u128 = cod.iter().map(|&c| choose2(c as u128)).sum();

    // Induced counts modulo small q: the K4 / C4 contributions carry
    // coefficients divisible by q in each line.
    // dia_sub = i_dia + 6 i_k4
    let i_dia6 = dia % 6;
    let i_dia2 = dia % 2;
    // paw_sub = i_paw + 4 i_dia + 12 i_k4
    let i_paw4 = paw % 4;
    // k13 = i_claw + i_paw + 2 i_dia + 4 i_k4
    let i_claw4 = sub4(k13 % 4, (2 * i_dia2 + i_paw4) % 4);
    // p3_sub = i_p4 + 2 i_paw + 4 i_c4 + 6 i_dia + 12 i_k4; -2 = +2 mod 4
    let i_p4_4 = (p3 + 2 * i_dia2 + 2 * (i_paw4 % 2)) % 4;
    // t (n - 3) = i_coclaw + i_paw + 2 i_dia + 4 i_k4
    let i_coclaw4 = sub4(triangles * (n - 3) % 4, (i_paw4 + 2 * i_dia2) % 4);
    let result = match h {
        FourGraph::Diamond => (i_dia6 as u64, 6),
        FourGraph::Paw => (i_paw4 as u64, 4),
        FourGraph::Claw => (i_claw4 as u64, 4),
        FourGraph::P4 => (i_p4_4 as u64, 4),
        FourGraph::CoClaw => (i_coclaw4 as u64, 4),
        FourGraph::CoPaw => {
            // p2 (n-3) = 12 K4 + 8 Dia + 4 C4 + 5 Paw + 3 Claw + 2 P4
            //            + 3 CoClaw + CoPaw
            let known = (5 * i_paw4 + 3 * i_claw4 + 2 * i_p4_4 + 3 * i_coclaw4) % 4;
            (sub4(p2 * (n - 3) % 4, known) as u64, 4)
        }
        FourGraph::CoDiamond => {
            // m C(n-2, 2) = 6 K4 + 5 Dia + 4 C4 + 4 Paw + 3 Claw + 3 P4
            //               + 3 CoClaw + 2 CoC4 + 2 CoPaw + CoDia
            let lhs = m * choose2(n - 2) % 2;
            let known = (i_dia2 + i_claw4 + i_p4_4 + i_coclaw4) % 2;
            (((lhs + known) % 2) as u64, 2)
        }
        _ => unreachable!(),
    };
    Ok(result)
}

/// `a - b` modulo 4 (inputs already reduced).
fn sub4(a: u128, b: u128) -> u128 {
    (a + 4 - (b % 4)) % 4
}

// ---------------------------------------------------------------------------
// Randomized detection by half-deletion
// ---------------------------------------------------------------------------

/// Number of half-deletion rounds giving one-sided failure `failure_prob`
/// when each round succeeds with probability at least 1/16.
pub fn half_deletion_rounds(failure_prob: f64) -> usize {
    ((1.0 / failure_prob).ln() / (16f64 / 15.0).ln()).ceil() as usize
}

/// One-sided induced-subgraph detection: `true` is always correct; when a
/// copy exists, `false` is returned with probability at most `failure_prob`.
/// The 4-cycle and its complement are routed to the deterministic
/// detectors; counting patterns use the count residue on the full graph and
/// then on random half-deletions.
pub fn detect_induced(
    g: &Graph,
    d: &SeparatorDecomposition,
    h: FourGraph,
    failure_prob: f64,
    seed: u64,
) -> Result<bool, SubgraphError> {
    checked(g, d)?;
    match h {
        FourGraph::K4 | FourGraph::CoK4 => return Err(SubgraphError::Unsupported(h)),
        FourGraph::C4 => return Ok(detect_c4(g, d)?.is_some()),
        FourGraph::CoC4 => return Ok(detect_co_c4(g, d)?.is_some()),
        _ => {}
    }
    if !(failure_prob > 0.0 && failure_prob < 1.0) {
        return Err(SubgraphError::BadFailureProb(failure_prob));
    }
    if g.n() < 4 {
        return Ok(false);
    }
    if count_mod(g, d, h)?.0 != 0 {
        return Ok(true);
    }
    let rounds = half_deletion_rounds(failure_prob);
    for round in 0..rounds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (round as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let keep: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
        if keep.len() < 4 {
            continue;
        }
        let (sub, back) = g.induced(&keep);
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in back.iter().enumerate() {
            pos[v] = i;
        }
        let sub_sep: Vec<usize> = d
            .separator
            .iter()
            .filter_map(|&v| (pos[v] != usize::MAX).then(|| pos[v]))
            .collect();
        // The shrunken separator stays valid for the shrunken graph; the
        // parts are re-packed to restore the size invariants.
        let sub_d = build_decomposition(&sub, &sub_sep, d.k)
            .map_err(|e| SubgraphError::InvalidDecomposition(e.to_string()))?;
        if count_mod(&sub, &sub_d, h)?.0 != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Deterministic C4 / co-C4 detection
// ---------------------------------------------------------------------------

/// Deterministic induced-C4 search: a dense check inside every
/// `G[S + T_i]`, then the cross-part rule — two nonadjacent separator
/// vertices with common neighbors in two different parts.
pub fn detect_c4(
    g: &Graph,
    d: &SeparatorDecomposition,
) -> Result<Option<InducedEmbedding>, SubgraphError> {
    checked(g, d)?;
    for part in parts_or_empty(d) {
        let verts: Vec<usize> = d.separator.iter().chain(part.iter()).copied().collect();
        if let Some(e) = c4_dense(g, &verts) {
            return Ok(Some(e));
        }
    }
    let blocks = common_neighbor_blocks(g, d);
    let s = &d.separator;
    for (a, &u) in s.iter().enumerate() {
        for (b, &v) in s.iter().enumerate().skip(a + 1) {
            if g.has_edge(u, v) {
                continue;
            }
            let mut hits = blocks
                .iter()
                .enumerate()
                .filter(|(_, blk)| blk.get(a, b) > 0)
                .map(|(i, _)| i);
            if let (Some(i), Some(j)) = (hits.next(), hits.next()) {
                let x = common_neighbor_in_part(g, d, u, v, i);
                let y = common_neighbor_in_part(g, d, u, v, j);
                return Ok(Some(InducedEmbedding::checked(g, FourGraph::C4, [u, x, v, y])));
            }
        }
    }
    Ok(None)
}

fn parts_or_empty(d: &SeparatorDecomposition) -> Vec<&[usize]> {
    if d.parts.is_empty() {
        vec![&[]]
    } else {
        d.parts.iter().map(|p| p.as_slice()).collect()
    }
}

fn common_neighbor_in_part(
    g: &Graph,
    d: &SeparatorDecomposition,
    u: usize,
    v: usize,
    part: usize,
) -> usize {
    *d.parts[part]
        .iter()
        .find(|&&w| g.has_edge(u, w) && g.has_edge(v, w))
        .expect("common-neighbor count was positive")
}

/// Quadratic induced-C4 scan inside one vertex set: a nonadjacent pair with
/// two nonadjacent common neighbors.
fn c4_dense(g: &Graph, verts: &[usize]) -> Option<InducedEmbedding> {
    for (i, &a) in verts.iter().enumerate() {
        for &b in verts.iter().skip(i + 1) {
            if g.has_edge(a, b) {
                continue;
            }
            let common: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&w| w != a && w != b && g.has_edge(a, w) && g.has_edge(b, w))
                .collect();
            for (ci, &x) in common.iter().enumerate() {
                for &y in common.iter().skip(ci + 1) {
                    if !g.has_edge(x, y) {
                        return Some(InducedEmbedding::checked(g, FourGraph::C4, [a, x, b, y]));
                    }
                }
            }
        }
    }
    None
}

/// Deterministic induced-co-C4 (two disjoint edges with no connection):
/// two parts with internal edges; otherwise a sweep of
/// `G[S + T_p + T_i]` where `T_p` is the unique edge-bearing part; finally
/// the private-neighbor rule on nonadjacent separator pairs.
pub fn detect_co_c4(
    g: &Graph,
    d: &SeparatorDecomposition,
) -> Result<Option<InducedEmbedding>, SubgraphError> {
    checked(g, d)?;
    let internal_edge = |part: &[usize]| -> Option<(usize, usize)> {
        for &u in part {
            for &v in g.neighbors(u) {
                if v > u && d.part_of[u] == d.part_of[v] {
                    return Some((u, v));
                }
            }
        }
        None
    };
    let with_edges: Vec<(usize, (usize, usize))> = d
        .parts
        .iter()
        .enumerate()
        .filter_map(|(i, p)| internal_edge(p).map(|e| (i, e)))
        .collect();
    if with_edges.len() >= 2 {
        let (x1, y1) = with_edges[0].1;
        let (x2, y2) = with_edges[1].1;
        return Ok(Some(InducedEmbedding::checked(
            g,
            FourGraph::CoC4,
            [x1, y1, x2, y2],
        )));
    }
    let pinned: &[usize] = with_edges
        .first()
        .map(|&(i, _)| d.parts[i].as_slice())
        .unwrap_or(&[]);
    for part in parts_or_empty(d) {
        let verts: Vec<usize> = d
            .separator
            .iter()
            .chain(pinned.iter())
            .chain(part.iter())
            .copied()
            .collect();
        if let Some(e) = co_c4_dense(g, &verts) {
            return Ok(Some(e));
        }
    }
    // Private neighbors: u sees T_i privately against v iff
    // |N(u) cap T_i| exceeds the common-neighbor count.
    let blocks = common_neighbor_blocks(g, d);
    let s = &d.separator;
    let mut deg_into: Vec<Vec<u32>> = vec![vec![0; d.parts.len()]; s.len()];
    for (a, &u) in s.iter().enumerate() {
        for &w in g.neighbors(u) {
            if let Some(i) = d.part_index(w) {
                deg_into[a][i] += 1;
            }
        }
    }
    for (a, &u) in s.iter().enumerate() {
        for (b, &v) in s.iter().enumerate().skip(a + 1) {
            if g.has_edge(u, v) {
                continue;
            }
            let private = |x: usize, y: usize, i: usize| deg_into[x][i] > blocks[i].get(x, y);
            let iu: Vec<usize> = (0..d.parts.len()).filter(|&i| private(a, b, i)).collect();
            let iv: Vec<usize> = (0..d.parts.len()).filter(|&i| private(b, a, i)).collect();
            let pair = iu
                .iter()
                .flat_map(|&i| iv.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| i != j);
            if let Some((i, j)) = pair {
                let x = private_neighbor(g, d, u, v, i);
                let y = private_neighbor(g, d, v, u, j);
                return Ok(Some(InducedEmbedding::checked(
                    g,
                    FourGraph::CoC4,
                    [u, x, v, y],
                )));
            }
        }
    }
    Ok(None)
}

fn private_neighbor(g: &Graph, d: &SeparatorDecomposition, u: usize, v: usize, part: usize) -> usize {
    *d.parts[part]
        .iter()
        .find(|&&w| g.has_edge(u, w) && !g.has_edge(v, w))
        .expect("private-neighbor count was positive")
}

/// Quadratic edge-pair scan for an induced 2K2 within one vertex set.
fn co_c4_dense(g: &Graph, verts: &[usize]) -> Option<InducedEmbedding> {
    let mut edges = Vec::new();
    let mut in_set = std::collections::HashSet::new();
    in_set.extend(verts.iter().copied());
    for &u in verts {
        for &v in g.neighbors(u) {
            if v > u && in_set.contains(&v) {
                edges.push((u, v));
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in edges.iter().skip(i + 1) {
            if a == c || a == e || b == c || b == e {
                continue;
            }
            if !g.has_edge(a, c) && !g.has_edge(a, e) && !g.has_edge(b, c) && !g.has_edge(b, e) {
                return Some(InducedEmbedding::checked(g, FourGraph::CoC4, [a, b, c, e]));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Finding a copy by self-reduction
// ---------------------------------------------------------------------------

/// Finds an induced copy of `h` with probability at least
/// `1 - failure_prob` when one exists (never returns a wrong embedding).
/// C4 and co-C4 are found deterministically; counting patterns use the
/// five-part self-reduction with a step budget, repeated to amplify.
pub fn find_induced(
    g: &Graph,
    d: &SeparatorDecomposition,
    h: FourGraph,
    failure_prob: f64,
    seed: u64,
) -> Result<Option<InducedEmbedding>, SubgraphError> {
    checked(g, d)?;
    match h {
        FourGraph::K4 | FourGraph::CoK4 => return Err(SubgraphError::Unsupported(h)),
        FourGraph::C4 => return detect_c4(g, d),
        FourGraph::CoC4 => return detect_co_c4(g, d),
        _ => {}
    }
    if !(failure_prob > 0.0 && failure_prob < 1.0) {
        return Err(SubgraphError::BadFailureProb(failure_prob));
    }
    let outer = (1.0 / failure_prob).log2().ceil().max(1.0) as usize;
    for round in 0..outer {
        let round_seed = seed ^ (round as u64).wrapping_mul(0xd1342543de82ef95);
        if let Some(e) = find_once(g, d, h, round_seed)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// One self-reduction pass with error at most 1/2.
fn find_once(
    g: &Graph,
    d: &SeparatorDecomposition,
    h: FourGraph,
    seed: u64,
) -> Result<Option<InducedEmbedding>, SubgraphError> {
    if !detect_induced(g, d, h, 0.25, seed)? {
        return Ok(None);
    }
    // Shrink by one fifth per successful detection; budget the detect calls
    // so a run of bad luck concedes instead of looping.
    let mut live: Vec<usize> = (0..g.n()).collect();
    let depth_bound = 8 + 4 * (g.n().max(2) as f64).log(1.25).ceil() as usize;
    let mut budget = depth_bound;
    let mut counter = 0u64;
    while live.len() > 8 {
        let mut progressed = false;
        for stripe in 0..5 {
            if budget == 0 {
                return Ok(None);
            }
            let keep: Vec<usize> = live
                .iter()
                .enumerate()
                .filter(|(idx, _)| idx % 5 != stripe)
                .map(|(_, &v)| v)
                .collect();
            let (sub, back) = g.induced(&keep);
            let mut pos = vec![usize::MAX; g.n()];
            for (i, &v) in back.iter().enumerate() {
                pos[v] = i;
            }
            let sub_sep: Vec<usize> = d
                .separator
                .iter()
                .filter_map(|&v| (pos[v] != usize::MAX).then(|| pos[v]))
                .collect();
            let sub_d = build_decomposition(&sub, &sub_sep, d.k)
                .map_err(|e| SubgraphError::InvalidDecomposition(e.to_string()))?;
            counter += 1;
            budget -= 1;
            if detect_induced(&sub, &sub_d, h, 0.25, seed ^ counter.wrapping_mul(0xa076_1d64_78bd_642f))? {
                live = keep;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Ok(None);
        }
    }
    // Brute force the small remainder.
    let vs = live;
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            for c in b + 1..vs.len() {
                for e in c + 1..vs.len() {
                    let set = [vs[a], vs[b], vs[c], vs[e]];
                    if FourGraph::classify(g, set) == h {
                        return Ok(embed_on(g, h, set));
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Cliques and independent sets
// ---------------------------------------------------------------------------

/// Exact: any clique lies inside `G[S + T_i]` for some part.
pub fn detect_clique(
    g: &Graph,
    d: &SeparatorDecomposition,
    ell: usize,
) -> Result<bool, SubgraphError> {
    checked(g, d)?;
    assert!(ell >= 1);
    for part in parts_or_empty(d) {
        let verts: Vec<usize> = d.separator.iter().chain(part.iter()).copied().collect();
        let (sub, _) = g.induced(&verts);
        if has_clique(&sub, ell) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact: one vertex per component of `G - S` is independent, so at least
/// `ell` components answer immediately; otherwise the graph has at most
/// `k * ell` vertices and an exact search runs on all of it.
pub fn detect_independent_set(
    g: &Graph,
    d: &SeparatorDecomposition,
    ell: usize,
) -> Result<bool, SubgraphError> {
    checked(g, d)?;
    assert!(ell >= 1);
    let mut removed = vec![false; g.n()];
    for &v in &d.separator {
        removed[v] = true;
    }
    if g.components_avoiding(&removed).len() >= ell {
        return Ok(true);
    }
    Ok(has_clique(&g.complement(), ell))
}

/// Recursive `ell`-clique search with candidate pruning.
fn has_clique(g: &Graph, ell: usize) -> bool {
    if ell == 0 {
        return true;
    }
    if g.n() < ell {
        return false;
    }
    fn go(g: &Graph, cands: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if cands.len() < need {
            return false;
        }
        for (i, &v) in cands.iter().enumerate() {
            if cands.len() - i < need {
                return false;
            }
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            if go(g, &next, need - 1) {
                return true;
            }
        }
        false
    }
    let all: Vec<usize> = (0..g.n()).collect();
    go(g, &all, ell)
}
