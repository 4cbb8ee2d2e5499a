//! Undirected simple graphs, separator validation, and the greedy
//! decomposition of `G - S` into packed parts.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid separator: {0}")]
    InvalidSeparator(String),
    #[error("infeasible generator arguments: {0}")]
    Infeasible(String),
}

/// Undirected simple graph with stable 0-based vertex ids.
///
/// Neighbor lists are kept sorted ascending; the edge list stores each edge
/// once as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edge_list {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Induced subgraph on `keep` (need not be sorted); returns the subgraph
    /// and the map from new ids to original ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = keep.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                edges.push((pos[u], pos[v]));
            }
        }
        (Graph::new(vs.len(), &edges).unwrap(), vs)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, &edges).unwrap()
    }

    /// Connected components, discovered in ascending order of their smallest
    /// vertex; each component is sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n])
    }

    /// Components of the graph minus the vertices flagged in `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.clear();
            queue.push(s);
            let mut comp = vec![s];
            while let Some(v) = queue.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS hop distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Text format: `p <n> <m>` then one `<u> <v>` line per edge with
    /// `u < v`, ASCII decimal, LF-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u, v);
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Graph, GraphError> {
        let mut lines = input.lines().enumerate();
        let (n, m) = loop {
            match lines.next() {
                Some((idx, line)) => {
                    let line = line.trim();
                    if line.is_empty() {
                        continue;
                    }
                    let mut it = line.split_whitespace();
                    if it.next() != Some("p") {
                        return Err(GraphError::Parse {
                            line: idx + 1,
                            msg: "expected header `p <n> <m>`".into(),
                        });
                    }
                    let n = parse_num(it.next(), idx)?;
                    let m = parse_num(it.next(), idx)?;
                    break (n, m);
                }
                None => {
                    return Err(GraphError::Parse {
                        line: 1,
                        msg: "empty input".into(),
                    })
                }
            }
        };
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u = parse_num(it.next(), idx)?;
            let v = parse_num(it.next(), idx)?;
            if u >= v {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    msg: format!("edge must satisfy u < v, got {} {}", u, v),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                msg: format!("header declares {} edges, found {}", m, edges.len()),
            });
        }
        Graph::new(n, &edges)
    }
}

fn parse_num(tok: Option<&str>, idx: usize) -> Result<usize, GraphError> {
    tok.ok_or(GraphError::Parse {
        line: idx + 1,
        msg: "missing field".into(),
    })?
    .parse()
    .map_err(|_| GraphError::Parse {
        line: idx + 1,
        msg: "not a number".into(),
    })
}

/// Marks where a vertex lives in a [`SeparatorDecomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartOf {
    Separator,
    Part(usize),
}

/// A separator `S` together with the parts `T_1..T_nu` obtained by packing
/// the components of `G - S` greedily: each part except possibly the last
/// has between `k` and `2k - 1` vertices, and no edge joins two parts.
#[derive(Debug, Clone)]
pub struct SeparatorDecomposition {
    pub separator: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub k: usize,
    pub part_of: Vec<PartOf>,
    /// Position of each vertex inside its own set (separator or part).
    pub pos: Vec<usize>,
}

impl SeparatorDecomposition {
    pub fn nu(&self) -> usize {
        self.parts.len()
    }

    pub fn part_index(&self, v: usize) -> Option<usize> {
        match self.part_of[v] {
            PartOf::Separator => None,
            PartOf::Part(i) => Some(i),
        }
    }
}

/// Full invariant check for a user-supplied decomposition: the separator and
/// parts partition `V`, `part_of`/`pos` are consistent, no edge joins two
/// parts, and part sizes are in `[k, 2k-1]` except possibly the last.
pub fn check_decomposition(g: &Graph, d: &SeparatorDecomposition) -> Result<(), GraphError> {
    let n = g.n();
    if d.part_of.len() != n || d.pos.len() != n {
        return Err(GraphError::InvalidSeparator("index maps have wrong length".into()));
    }
    let mut seen = vec![false; n];
    for (i, &v) in d.separator.iter().enumerate() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
        if seen[v] || d.part_of[v] != PartOf::Separator || d.pos[v] != i {
            return Err(GraphError::InvalidSeparator(format!("separator entry {}", v)));
        }
        seen[v] = true;
    }
    for (pi, part) in d.parts.iter().enumerate() {
        if part.is_empty() {
            return Err(GraphError::InvalidSeparator(format!("part {} is empty", pi)));
        }
        if part.len() > 2 * d.k - 1 {
            return Err(GraphError::InvalidSeparator(format!(
                "part {} has {} > 2k-1 vertices",
                pi,
                part.len()
            )));
        }
        if pi + 1 < d.parts.len() && part.len() < d.k {
            return Err(GraphError::InvalidSeparator(format!(
                "non-final part {} has {} < k vertices",
                pi,
                part.len()
            )));
        }
        for (i, &v) in part.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if seen[v] || d.part_of[v] != PartOf::Part(pi) || d.pos[v] != i {
                return Err(GraphError::InvalidSeparator(format!("part entry {}", v)));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&b| !b) {
        return Err(GraphError::InvalidSeparator("not a partition of V".into()));
    }
    if d.separator.len() > d.k {
        return Err(GraphError::InvalidSeparator("separator larger than k".into()));
    }
    for &(u, v) in g.edges() {
        if let (PartOf::Part(a), PartOf::Part(b)) = (d.part_of[u], d.part_of[v]) {
            if a != b {
                return Err(GraphError::InvalidSeparator(format!(
                    "edge {}-{} joins parts {} and {}",
                    u, v, a, b
                )));
            }
        }
    }
    Ok(())
}

/// True iff `|s| <= k` and every component of `g - s` has at most
/// `k - |s|` vertices.
pub fn validate_separator(g: &Graph, s: &[usize], k: usize) -> Result<bool, GraphError> {
    let mut removed = vec![false; g.n()];
    let mut size = 0usize;
    for &v in s {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange(v, g.n()));
        }
        if !removed[v] {
            removed[v] = true;
            size += 1;
        }
    }
    if size > k {
        return Ok(false);
    }
    let budget = k - size;
    Ok(g.components_avoiding(&removed)
        .iter()
        .all(|c| c.len() <= budget))
}

/// Packs the components of `g - s` into parts per the greedy rule: if every
/// existing part has at least `k` vertices open a new one, otherwise grow
/// the (unique) part still below `k`. Components are processed in ascending
/// order of their smallest vertex.
pub fn build_decomposition(
    g: &Graph,
    s: &[usize],
    k: usize,
) -> Result<SeparatorDecomposition, GraphError> {
    if !validate_separator(g, s, k)? {
        return Err(GraphError::InvalidSeparator(format!(
            "not a valid {}-separator",
            k
        )));
    }
    let mut separator: Vec<usize> = s.to_vec();
    separator.sort_unstable();
    separator.dedup();
    let mut removed = vec![false; g.n()];
    for &v in &separator {
        removed[v] = true;
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut open: Option<usize> = None;
    for comp in g.components_avoiding(&removed) {
        match open {
            Some(i) => {
                parts[i].extend_from_slice(&comp);
                if parts[i].len() >= k {
                    open = None;
                }
            }
            None => {
                parts.push(comp);
                let i = parts.len() - 1;
                if parts[i].len() < k {
                    open = Some(i);
                }
            }
        }
    }
    let mut part_of = vec![PartOf::Separator; g.n()];
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in separator.iter().enumerate() {
        pos[v] = i;
    }
    for (pi, part) in parts.iter_mut().enumerate() {
        part.sort_unstable();
        for (i, &v) in part.iter().enumerate() {
            part_of[v] = PartOf::Part(pi);
            pos[v] = i;
        }
    }
    Ok(SeparatorDecomposition {
        separator,
        parts,
        k,
        part_of,
        pos,
    })
}

/// Exact vertex integrity by iterative-deepening branching: for each target
/// `t = 1..=budget`, recursively add one of the first `t - |S| + 1` vertices
/// (by id) of some oversized component to `S`.
pub fn exact_vertex_integrity(g: &Graph, budget: usize) -> Option<(usize, Vec<usize>)> {
    assert!(budget >= 1);
    for target in 1..=budget {
        let mut removed = vec![false; g.n()];
        if let Some(sep) = branch_integrity(g, target, &mut removed, 0) {
            return Some((target, sep));
        }
    }
    None
}

fn branch_integrity(
    g: &Graph,
    target: usize,
    removed: &mut Vec<bool>,
    used: usize,
) -> Option<Vec<usize>> {
    let allowed = target - used;
    let bad = g
        .components_avoiding(removed)
        .into_iter()
        .find(|c| c.len() > allowed);
    let comp = match bad {
        None => {
            return Some(
                (0..g.n())
                    .filter(|&v| removed[v])
                    .collect(),
            )
        }
        Some(c) => c,
    };
    if used == target {
        return None;
    }
    // Some vertex among a connected set of `allowed + 1` component vertices
    // must join S in any witness: otherwise they stay connected and the
    // component remains too large. BFS order from the smallest vertex gives a
    // connected prefix deterministically.
    let comp = bfs_prefix(g, comp[0], allowed + 1, removed);
    for &v in comp.iter() {
        removed[v] = true;
        if let Some(sep) = branch_integrity(g, target, removed, used + 1) {
            return Some(sep);
        }
        removed[v] = false;
    }
    None
}

/// First `limit` vertices of `src`'s component in BFS order, skipping
/// removed vertices; the result always induces a connected subgraph.
fn bfs_prefix(g: &Graph, src: usize, limit: usize, removed: &[bool]) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = vec![src];
    seen[src] = true;
    let mut head = 0;
    while head < order.len() && order.len() < limit {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if !seen[w] && !removed[w] {
                seen[w] = true;
                order.push(w);
                if order.len() == limit {
                    break;
                }
            }
        }
    }
    order
}

/// Greedy separator: repeatedly move the maximum-degree vertex of `G - S`
/// into `S` until every remaining component has at most `max(|S|, 1)`
/// vertices, then report the tight budget `k = |S| + `largest component.
pub fn greedy_separator(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut size = 0usize;
    loop {
        let comps = g.components_avoiding(&removed);
        let cmax = comps.iter().map(|c| c.len()).max().unwrap_or(0);
        if cmax <= size.max(1) {
            let sep: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
            return (sep, size + cmax);
        }
        // Max degree counted within G - S; ties broken by lowest id.
        let mut best = usize::MAX;
        let mut best_deg = 0usize;
        for v in 0..n {
            if removed[v] {
                continue;
            }
            let d = g.neighbors(v).iter().filter(|&&w| !removed[w]).count();
            if best == usize::MAX || d > best_deg {
                best = v;
                best_deg = d;
            }
        }
        removed[best] = true;
        size += 1;
    }
}

/// A generated graph carrying its planted separator witness.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub separator: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

/// Random graph with designated separator `0..sep_size`; remaining vertices
/// are chunked into components of at most `comp_size`. Edges appear within
/// chunks (and within the separator) with probability `edge_prob_in` and
/// between the separator and the rest with `edge_prob_cross`.
pub fn generate_planted(
    n: usize,
    sep_size: usize,
    comp_size: usize,
    edge_prob_in: f64,
    edge_prob_cross: f64,
    seed: u64,
) -> Result<PlantedInstance, GraphError> {
    if sep_size + comp_size > n && n > 0 {
        return Err(GraphError::Infeasible(format!(
            "sep_size {} + comp_size {} > n {}",
            sep_size, comp_size, n
        )));
    }
    if n > 0 && sep_size < n && comp_size == 0 {
        return Err(GraphError::Infeasible("comp_size must be >= 1".into()));
    }
    for p in [edge_prob_in, edge_prob_cross] {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::Infeasible(format!(
                "probability {} outside [0,1]",
                p
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut chunk_of = vec![usize::MAX; n];
    for v in sep_size..n {
        chunk_of[v] = (v - sep_size) / comp_size.max(1);
    }
    for u in 0..n {
        for v in u + 1..n {
            let p = if u < sep_size && v < sep_size {
                edge_prob_in
            } else if u < sep_size {
                edge_prob_cross
            } else if chunk_of[u] == chunk_of[v] {
                edge_prob_in
            } else {
                continue; // never joins two distinct chunks
            };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges)?;
    let separator: Vec<usize> = (0..sep_size).collect();
    let k = sep_size + comp_size.min(n.saturating_sub(sep_size));
    debug_assert!(validate_separator(&graph, &separator, k).unwrap());
    Ok(PlantedInstance {
        graph,
        separator,
        k,
        seed,
    })
}

/// Separator file: one line of space-separated vertex ids (possibly empty)
/// followed by a line `k <k>`.
pub fn separator_to_text(s: &[usize], k: usize) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{}\nk {}\n", ids.join(" "), k)
}

pub fn parse_separator_text(input: &str) -> Result<(Vec<usize>, usize), GraphError> {
    let mut lines = input.lines();
    let first = lines.next().unwrap_or("");
    let mut sep = Vec::new();
    for tok in first.split_whitespace() {
        sep.push(tok.parse().map_err(|_| GraphError::Parse {
            line: 1,
            msg: format!("bad vertex id `{}`", tok),
        })?);
    }
    let second = lines.next().ok_or(GraphError::Parse {
        line: 2,
        msg: "missing `k <k>` line".into(),
    })?;
    let mut it = second.split_whitespace();
    if it.next() != Some("k") {
        return Err(GraphError::Parse {
            line: 2,
            msg: "expected `k <k>`".into(),
        });
    }
    let k = parse_num(it.next(), 1)?;
    Ok((sep, k))
}
