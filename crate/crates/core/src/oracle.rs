//! Brute-force reference implementations. These are the trust anchor for
//! every randomized or structured fast path in the crate: slow, simple, and
//! verified against each other on small inputs.

use crate::graph::Graph;
use crate::subgraph4::FourGraph;

// ---------------------------------------------------------------------------
// Girth
// ---------------------------------------------------------------------------

/// Exact girth by BFS from every vertex: the minimum over all roots and all
/// non-tree edges of `d(x) + d(y) + 1` equals the girth (the closed walk
/// through the root contains a cycle no longer than it, and a root on a
/// shortest cycle attains the bound).
pub fn oracle_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if w != parent[v] && parent[w] != v {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

// ---------------------------------------------------------------------------
// Even girth (exact, branch-and-bound cycle search)
// ---------------------------------------------------------------------------

/// Shortest even cycle length by exhaustive simple-cycle search with
/// parity-aware pruning. Each cycle is enumerated from its smallest vertex;
/// a partial path is cut off when even the best parity-consistent walk back
/// to the start cannot beat the current optimum.
pub fn oracle_even_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut on_path = vec![false; n];
    for start in 0..n {
        // Walk distances (by parity) back to `start` using vertices >= start;
        // walk length <= path length, so these are admissible bounds.
        let dist = parity_bfs_from(g, start);
        on_path[start] = true;
        let mut path = vec![start];
        dfs_even(g, start, start, &dist, &mut path, &mut on_path, &mut best);
        on_path[start] = false;
    }
    (best != usize::MAX).then_some(best)
}

/// dist[v][p] = length of a shortest walk start..v of parity p that avoids
/// vertices smaller than start.
fn parity_bfs_from(g: &Graph, start: usize) -> Vec<[usize; 2]> {
    let n = g.n();
    let mut dist = vec![[usize::MAX; 2]; n];
    dist[start][0] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((start, 0usize));
    while let Some((v, p)) = queue.pop_front() {
        let d = dist[v][p];
        for &w in g.neighbors(v) {
            if w < start {
                continue;
            }
            if dist[w][1 - p] == usize::MAX {
                dist[w][1 - p] = d + 1;
                queue.push_back((w, 1 - p));
            }
        }
    }
    dist
}

fn dfs_even(
    g: &Graph,
    start: usize,
    v: usize,
    dist: &[[usize; 2]],
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    best: &mut usize,
) {
    let len = path.len(); // vertices on the path, = edges from start to v plus one
    for &w in g.neighbors(v) {
        if w == start && len >= 4 && len % 2 == 0 && len < *best {
            *best = len; // closing edge v-start yields a cycle of `len` edges
        }
        if w <= start || on_path[w] {
            continue;
        }
        // After stepping to w the path has `len` edges; an even cycle needs a
        // return walk of parity `len % 2`, so dist is an admissible bound.
        let back = dist[w][len % 2];
        if back == usize::MAX || len + back >= *best {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        dfs_even(g, start, w, dist, path, on_path, best);
        path.pop();
        on_path[w] = false;
    }
}

// ---------------------------------------------------------------------------
// Cycle of exact length
// ---------------------------------------------------------------------------

/// Does `g` contain a (not necessarily induced) cycle of length exactly `len`?
/// Exhaustive path search rooted at each cycle's smallest vertex, pruned by
/// hop distance back to the root.
pub fn oracle_has_cycle_of_length(g: &Graph, len: usize) -> bool {
    assert!(len >= 3);
    let n = g.n();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let dist = restricted_bfs(g, start);
        on_path[start] = true;
        let mut found = false;
        dfs_len(g, start, start, len, &dist, 1, &mut on_path, &mut found);
        on_path[start] = false;
        if found {
            return true;
        }
    }
    false
}

fn restricted_bfs(g: &Graph, start: usize) -> Vec<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w >= start && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn dfs_len(
    g: &Graph,
    start: usize,
    v: usize,
    len: usize,
    dist: &[usize],
    used: usize,
    on_path: &mut Vec<bool>,
    found: &mut bool,
) {
    if *found {
        return;
    }
    if used == len {
        if g.has_edge(v, start) {
            *found = true;
        }
        return;
    }
    for &w in g.neighbors(v) {
        if w <= start || on_path[w] {
            continue;
        }
        if dist[w] == usize::MAX || used + dist[w] > len {
            continue;
        }
        on_path[w] = true;
        dfs_len(g, start, w, len, dist, used + 1, on_path, found);
        on_path[w] = false;
        if *found {
            return;
        }
    }
}

/// All simple cycle lengths present in `g` (for cross-checks on small graphs).
pub fn oracle_cycle_lengths(g: &Graph, max_len: usize) -> Vec<usize> {
    (3..=max_len.min(g.n()))
        .filter(|&l| oracle_has_cycle_of_length(g, l))
        .collect()
}

// ---------------------------------------------------------------------------
// Induced four-vertex subgraph census
// ---------------------------------------------------------------------------

/// Census of all `C(n,4)` induced four-vertex subgraphs.
pub fn oracle_four_census(g: &Graph) -> [u64; 11] {
    let n = g.n();
    let mut counts = [0u64; 11];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    counts[FourGraph::classify(g, [a, b, c, d]) as usize] += 1;
                }
            }
        }
    }
    counts
}

pub fn oracle_count_induced(g: &Graph, h: FourGraph) -> u64 {
    oracle_four_census(g)[h as usize]
}

// ---------------------------------------------------------------------------
// Maximum matching
// ---------------------------------------------------------------------------

/// Maximum matching size by dynamic programming over vertex subsets
/// (`n <= 22`).
pub fn oracle_matching_dp(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 22, "subset DP limited to n <= 22");
    let mut memo = vec![u8::MAX; 1usize << n];
    fn solve(g: &Graph, mask: usize, memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if memo[mask] != u8::MAX {
            return memo[mask];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = solve(g, rest, memo);
        for &w in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                best = best.max(1 + solve(g, rest & !(1 << w), memo));
            }
        }
        memo[mask] = best;
        best
    }
    solve(g, (1usize << n) - 1, &mut memo) as usize
}

/// Maximum cardinality matching by augmenting paths with blossom
/// contraction. Oracle-grade: favors clarity over speed.
pub fn oracle_max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    for v in 0..n {
        if mate[v] == usize::MAX {
            augment_from(g, v, &mut mate);
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        if mate[v] != usize::MAX && v < mate[v] {
            out.push((v, mate[v]));
        }
    }
    out
}

fn augment_from(g: &Graph, root: usize, mate: &mut [usize]) -> bool {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_queue = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    in_queue[root] = true;

    fn lca(
        mate: &[usize],
        parent: &[usize],
        base: &[usize],
        mut a: usize,
        mut b: usize,
    ) -> usize {
        let n = mate.len();
        let mut used = vec![false; n];
        loop {
            a = base[a];
            used[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if used[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    }

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        parent: &mut [usize],
        blossom: &mut [bool],
        mut v: usize,
        b: usize,
        child: usize,
    ) {
        let mut child = child;
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if base[v] == base[w] || mate[v] == w {
                continue;
            }
            if w == root || (mate[w] != usize::MAX && parent[mate[w]] != usize::MAX) {
                // Odd cycle: contract the blossom.
                let b = lca(mate, &parent, &base, v, w);
                let mut blossom = vec![false; n];
                mark_path(mate, &base, &mut parent, &mut blossom, v, b, w);
                mark_path(mate, &base, &mut parent, &mut blossom, w, b, v);
                for u in 0..n {
                    if blossom[base[u]] {
                        base[u] = b;
                        if !in_queue[u] {
                            in_queue[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            } else if parent[w] == usize::MAX {
                parent[w] = v;
                if mate[w] == usize::MAX {
                    // Augmenting path found; flip it.
                    let mut a = w;
                    while a != usize::MAX {
                        let p = parent[a];
                        let next = mate[p];
                        mate[a] = p;
                        mate[p] = a;
                        a = next;
                    }
                    return true;
                } else {
                    let u = mate[w];
                    if !in_queue[u] {
                        in_queue[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    false
}

/// Structural check: pairwise-disjoint genuine edges.
pub fn is_valid_matching(g: &Graph, m: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in m {
        if u == v || !g.has_edge(u, v) || used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

// ---------------------------------------------------------------------------
// APSP
// ---------------------------------------------------------------------------

/// Hop distances by BFS from every vertex; `usize::MAX` = unreachable.
pub fn oracle_apsp(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.bfs(v)).collect()
}

/// Second APSP oracle: Floyd-Warshall.
pub fn oracle_apsp_floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    const INF: usize = usize::MAX;
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

// ---------------------------------------------------------------------------
// Exhaustive graph streams
// ---------------------------------------------------------------------------

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

/// A named, seeded instance family; regeneration is deterministic, so a
/// manifest line pins a corpus exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub generator: String,
    pub seed: u64,
    pub count: usize,
    pub n_max: usize,
}

impl Corpus {
    pub fn planted(seed: u64, count: usize, n_max: usize) -> Corpus {
        Corpus {
            generator: "planted".into(),
            seed,
            count,
            n_max,
        }
    }

    /// Manifest line: `generator seed count n_max`.
    pub fn to_text(&self) -> String {
        format!("{} {} {} {}\n", self.generator, self.seed, self.count, self.n_max)
    }

    pub fn parse_text(text: &str) -> Option<Corpus> {
        let mut it = text.split_whitespace();
        Some(Corpus {
            generator: it.next()?.to_string(),
            seed: it.next()?.parse().ok()?,
            count: it.next()?.parse().ok()?,
            n_max: it.next()?.parse().ok()?,
        })
    }

    pub fn instances(&self) -> Vec<crate::graph::PlantedInstance> {
        assert_eq!(self.generator, "planted", "unknown generator");
        (0..self.count)
            .map(|i| {
                let seed = self.seed.wrapping_add(i as u64);
                let n = 8 + (seed as usize * 13) % self.n_max.max(9).saturating_sub(7);
                let sep = 1 + (seed as usize) % 5;
                let comp = (2 + (seed as usize / 3) % 5).min(n - sep).max(1);
                let cross = if i % 7 == 0 { 0.0 } else { 0.1 + 0.2 * ((i % 3) as f64) };
                crate::graph::generate_planted(n, sep, comp, 0.4, cross, seed)
                    .expect("planted corpus instance")
            })
            .collect()
    }
}

/// The Petersen graph: outer 5-cycle, spokes, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, &edges).unwrap()
}

/// All labeled graphs on `n <= 6` vertices (one per edge-subset bitmask).
pub fn enumerate_all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 6, "exhaustive enumeration limited to n <= 6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).unwrap()
    })
}
