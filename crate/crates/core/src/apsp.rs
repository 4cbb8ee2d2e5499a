//! Unweighted all-pairs shortest paths over a separator decomposition: the
//! graph is first transformed so that every part carries a Hamiltonian path
//! and all parts have the same size as the separator (distances between
//! original vertices are preserved); per-part distances, a small weighted
//! APSP on the separator, and min-plus products assemble the full matrix.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{check_decomposition, Graph, SeparatorDecomposition};

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum ApspError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense matrix of hop distances with an unreachable sentinel. Square
/// symmetric for final results; rectangular for pipeline blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn filled(rows: usize, cols: usize, value: u32) -> Self {
        DistanceMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> DistanceMatrix {
        let mut t = DistanceMatrix::filled(self.cols, self.rows, 0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Invariants of a final result: square, symmetric, zero diagonal,
    /// triangle inequality with the sentinel absorbing.
    pub fn validate_square(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        for i in 0..n {
            if self.get(i, i) != 0 {
                return false;
            }
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                let a = self.get(i, k);
                if a == UNREACHABLE {
                    continue;
                }
                for j in 0..n {
                    let b = self.get(k, j);
                    if b != UNREACHABLE && self.get(i, j) > a.saturating_add(b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `n` lines of `n` space-separated integers; the sentinel prints `-1`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let v = self.get(r, c);
                    if v == UNREACHABLE {
                        "-1".to_string()
                    } else {
                        v.to_string()
                    }
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Which min-plus kernel to run; both produce identical outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinPlusKernel {
    #[default]
    Naive,
    /// Row-ordered variant that warm-starts each entry from the previous
    /// row (valid when rows follow a Hamiltonian path, where vertically
    /// adjacent entries differ by at most one).
    BoundedDifference,
}

impl MinPlusKernel {
    pub fn parse(tok: &str) -> Option<MinPlusKernel> {
        match tok {
            "naive" => Some(MinPlusKernel::Naive),
            "bd" => Some(MinPlusKernel::BoundedDifference),
            _ => None,
        }
    }
}

#[inline]
fn sat_add(a: u32, b: u32) -> u32 {
    if a == UNREACHABLE || b == UNREACHABLE {
        UNREACHABLE
    } else {
        a + b
    }
}

/// Exact min-plus product `C[i,j] = min_k A[i,k] + B[k,j]`, sentinel-safe.
pub fn min_plus(
    a: &DistanceMatrix,
    b: &DistanceMatrix,
    kernel: MinPlusKernel,
) -> Result<DistanceMatrix, ApspError> {
    if a.cols != b.rows {
        return Err(ApspError::Dimension(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = DistanceMatrix::filled(a.rows, b.cols, UNREACHABLE);
    match kernel {
        MinPlusKernel::Naive => {
            for i in 0..a.rows {
                for k in 0..a.cols {
                    let av = a.get(i, k);
                    if av == UNREACHABLE {
                        continue;
                    }
                    for j in 0..b.cols {
                        let v = sat_add(av, b.get(k, j));
                        if v < out.get(i, j) {
                            out.set(i, j, v);
                        }
                    }
                }
            }
        }
        MinPlusKernel::BoundedDifference => {
            // Row-ordered variant: when consecutive rows differ entrywise by
            // at most one (rows along a Hamiltonian path), the previous
            // row's argmin is almost always this row's argmin too. Seeding
            // the bound with that genuine candidate lets the scan skip any
            // k with A[i,k] >= bound (entries are nonnegative), while
            // remaining exact on arbitrary inputs.
            let mut argmin = vec![0usize; b.cols];
            for i in 0..a.rows {
                for j in 0..b.cols {
                    let mut best_k = argmin[j];
                    let mut bound = if best_k < a.cols {
                        sat_add(a.get(i, best_k), b.get(best_k, j))
                    } else {
                        UNREACHABLE
                    };
                    for k in 0..a.cols {
                        let av = a.get(i, k);
                        if av >= bound {
                            continue;
                        }
                        let v = sat_add(av, b.get(k, j));
                        if v < bound {
                            bound = v;
                            best_k = k;
                        }
                    }
                    out.set(i, j, bound);
                    argmin[j] = best_k;
                }
            }
        }
    }
    Ok(out)
}

/// Exact distances on a small weighted complete graph (weights may be the
/// sentinel), by Floyd-Warshall.
pub fn weighted_apsp_small(weights: &DistanceMatrix) -> DistanceMatrix {
    let n = weights.rows;
    assert_eq!(n, weights.cols);
    let mut d = weights.clone();
    for i in 0..n {
        d.set(i, i, 0);
    }
    for k in 0..n {
        for i in 0..n {
            let a = d.get(i, k);
            if a == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                let v = sat_add(a, d.get(k, j));
                if v < d.get(i, j) {
                    d.set(i, j, v);
                }
            }
        }
    }
    d
}

// ---------------------------------------------------------------------------
// Nice partition
// ---------------------------------------------------------------------------

/// The transformed graph: same separator vertex set (plus synthetic
/// padding), parts of one common size, each listed in Hamiltonian-path
/// order, and a map back to original vertices. Original vertices keep their
/// ids; copies and padding get fresh ids.
#[derive(Debug, Clone)]
pub struct NicePartition {
    pub graph: Graph,
    pub separator: Vec<usize>,
    /// Each part in Hamiltonian-path order: consecutive entries adjacent.
    pub parts: Vec<Vec<usize>>,
    /// Original vertex behind each transformed vertex (`None` = padding).
    pub origin: Vec<Option<usize>>,
    pub size_class: usize,
}

impl NicePartition {
    pub fn validate(&self, g: &Graph) -> bool {
        // Hamiltonian certificates and equal sizes.
        for part in &self.parts {
            if part.len() != self.size_class {
                return false;
            }
            let mut sorted = part.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != part.len() {
                return false;
            }
            if part
                .windows(2)
                .any(|w| !self.graph.has_edge(w[0], w[1]))
            {
                return false;
            }
        }
        if self.separator.len() != self.size_class && !self.parts.is_empty() {
            return false;
        }
        // Originals map to themselves.
        (0..g.n()).all(|v| self.origin[v] == Some(v))
    }
}

struct GpBuilder {
    origin: Vec<Option<usize>>,
    adj: Vec<Vec<usize>>,
    edges: std::collections::BTreeSet<(usize, usize)>,
}

impl GpBuilder {
    fn new(n: usize) -> Self {
        GpBuilder {
            origin: (0..n).map(Some).collect(),
            adj: vec![Vec::new(); n],
            edges: std::collections::BTreeSet::new(),
        }
    }

    fn fresh(&mut self, origin: Option<usize>) -> usize {
        self.origin.push(origin);
        self.adj.push(Vec::new());
        self.origin.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        let key = (a.min(b), a.max(b));
        if a != b && self.edges.insert(key) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }
}

/// Builds the transform: pick an anchor separator vertex
/// per component of `G - S`, span the separator by direct edges or through
/// components, then pack components (and absorbed leftovers from tree
/// children, joined by short paths and separator copies) into buckets of
/// `O(k)` vertices; each bucket becomes Hamiltonian via a doubled spanning
/// tree walk whose repeated vertices turn into copies. Distances between
/// original vertices are preserved exactly.
pub fn nice_partition(g: &Graph, d: &SeparatorDecomposition) -> Result<NicePartition, ApspError> {
    check_decomposition(g, d).map_err(|e| ApspError::InvalidDecomposition(e.to_string()))?;
    let n = g.n();
    let k = d.k.max(1);
    let mut builder = GpBuilder::new(n);
    let mut in_sep = vec![false; n];
    for &s in &d.separator {
        in_sep[s] = true;
    }
    // All original edges incident to the separator survive as-is.
    for &(u, v) in g.edges() {
        if in_sep[u] || in_sep[v] {
            builder.add_edge(u, v);
        }
    }
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let sep_here: Vec<usize> = comp.iter().copied().filter(|&v| in_sep[v]).collect();
        if sep_here.is_empty() {
            // The whole component is a single part-to-be.
            let mut bucket = comp.clone();
            bucket.sort_unstable();
            for &u in &bucket {
                for &v in g.neighbors(u) {
                    builder.add_edge(u, v);
                }
            }
            buckets.push(bucket);
        } else {
            component_buckets(g, &in_sep, &sep_here, k, &mut builder, &mut buckets);
        }
    }
    // Hamiltonian form of each bucket.
    let mut parts: Vec<Vec<usize>> = buckets
        .iter()
        .map(|b| euler_path(&mut builder, b))
        .collect();
    // Equalize sizes: pad parts (and the separator) with pendant chains of
    // synthetic vertices; padding is excluded from the vertex map.
    let mut separator = d.separator.clone();
    let target = separator
        .len()
        .max(parts.iter().map(|p| p.len()).max().unwrap_or(0))
        .max(1);
    for part in parts.iter_mut() {
        let mut tail = *part.last().expect("buckets are non-empty");
        while part.len() < target {
            let syn = builder.fresh(None);
            builder.add_edge(tail, syn);
            part.push(syn);
            tail = syn;
        }
    }
    if !parts.is_empty() {
        let mut tail = separator.first().copied();
        while separator.len() < target {
            let syn = builder.fresh(None);
            if let Some(t) = tail {
                builder.add_edge(t, syn);
            }
            separator.push(syn);
            tail = Some(syn);
        }
    }
    let edges: Vec<(usize, usize)> = builder.edges.iter().copied().collect();
    let graph = Graph::new(builder.origin.len(), &edges).expect("transformed graph");
    let np = NicePartition {
        graph,
        separator,
        parts,
        origin: builder.origin,
        size_class: target,
    };
    debug_assert!(np.validate(g));
    Ok(np)
}

/// Buckets for one connected component of `G` containing separator
/// vertices.
fn component_buckets(
    g: &Graph,
    in_sep: &[bool],
    sep_here: &[usize],
    k: usize,
    builder: &mut GpBuilder,
    buckets: &mut Vec<Vec<usize>>,
) {
    // Components of G - S inside this component, each with its separator
    // neighborhood and its anchor f(C) = smallest adjacent separator vertex.
    let mut removed = vec![true; g.n()];
    let mut member = vec![false; g.n()];
    for &v in sep_here {
        member[v] = true;
    }
    {
        let mut stack: Vec<usize> = sep_here.to_vec();
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !member[w] {
                    member[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    for v in 0..g.n() {
        removed[v] = !member[v] || in_sep[v];
    }
    let comps = g.components_avoiding(&removed);
    let nbr_sep: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = c
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|&w| in_sep[w])
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); g.n()]; // anchor -> component indices
    for (ci, ns) in nbr_sep.iter().enumerate() {
        assigned[ns[0]].push(ci);
    }

    // Spanning structure over the separator: direct edges first, else batch
    // all separator neighbors of a bridging component.
    #[derive(Clone, Copy)]
    enum Link {
        Root,
        Direct(usize),
        Via(usize, usize), // parent, component index
    }
    let root = sep_here[0];
    let mut link: Vec<Option<Link>> = vec![None; g.n()];
    link[root] = Some(Link::Root);
    let mut in_r = vec![false; g.n()];
    in_r[root] = true;
    let mut reached = 1;
    while reached < sep_here.len() {
        let mut advanced = false;
        'direct: for &s in sep_here {
            if !in_r[s] {
                continue;
            }
            for &t in g.neighbors(s) {
                if in_sep[t] && !in_r[t] && link[t].is_none() {
                    link[t] = Some(Link::Direct(s));
                    in_r[t] = true;
                    reached += 1;
                    advanced = true;
                    break 'direct;
                }
            }
        }
        if advanced {
            continue;
        }
        'via: for (ci, ns) in nbr_sep.iter().enumerate() {
            let anchor_in = ns.iter().copied().find(|&s| in_r[s]);
            let has_out = ns.iter().any(|&s| !in_r[s]);
            if let (Some(s), true) = (anchor_in, has_out) {
                for &t in ns {
                    if !in_r[t] {
                        link[t] = Some(Link::Via(s, ci));
                        in_r[t] = true;
                        reached += 1;
                    }
                }
                advanced = true;
                break 'via;
            }
        }
        assert!(advanced, "separator spanning structure must make progress");
    }

    // Children lists and post-order traversal.
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for &s in sep_here {
        match link[s].expect("all separator vertices linked") {
            Link::Root => {}
            Link::Direct(p) | Link::Via(p, _) => children[p].push(s),
        }
    }
    let mut order = Vec::with_capacity(sep_here.len());
    {
        let mut stack = vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                for &c in children[v].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
    }

    // Per separator vertex: its last (unabsorbed) bucket and that bucket's
    // closing copy, for the parent to take over.
    let mut leftover: Vec<Option<(Vec<usize>, usize)>> = vec![None; g.n()];
    for &s in &order {
        let mut local: Vec<(Vec<usize>, usize)> = Vec::new(); // closed buckets of s
        let mut bucket: Vec<usize> = Vec::new();
        let close = |bucket: &mut Vec<usize>, builder: &mut GpBuilder, local: &mut Vec<(Vec<usize>, usize)>| {
            if bucket.is_empty() {
                return;
            }
            let closer = builder.fresh(Some(s));
            let linked: Vec<usize> = bucket
                .iter()
                .copied()
                .filter(|&b| {
                    builder.origin[b]
                        .map(|o| g.has_edge(s, o))
                        .unwrap_or(false)
                })
                .collect();
            assert!(!linked.is_empty(), "bucket must touch N(s)");
            for b in linked {
                builder.add_edge(closer, b);
            }
            bucket.push(closer);
            local.push((std::mem::take(bucket), closer));
        };

        // Child phase: absorb each child's leftover bucket, joined by a
        // shortest path (copies) when the tree edge runs through a component.
        for &cj in &children[s] {
            let (chunk, chunk_closer) = match leftover[cj].take() {
                Some(x) => x,
                None => continue,
            };
            bucket.extend_from_slice(&chunk);
            if let Some(Link::Via(p, ci)) = link[cj] {
                debug_assert_eq!(p, s);
                let interior = path_through_component(g, s, cj, &comps[ci]);
                let mut prev: Option<usize> = None;
                for &orig in &interior {
                    let copy = builder.fresh(Some(orig));
                    if let Some(pv) = prev {
                        builder.add_edge(pv, copy);
                    }
                    bucket.push(copy);
                    prev = Some(copy);
                }
                if let Some(last) = prev {
                    builder.add_edge(last, chunk_closer);
                }
            }
            if bucket.len() > 3 * k {
                close(&mut bucket, builder, &mut local);
            }
        }
        // Component phase: anchored components join whole, as primaries.
        for &ci in &assigned[s] {
            for &v in &comps[ci] {
                bucket.push(v);
                for &w in g.neighbors(v) {
                    if !in_sep[w] {
                        builder.add_edge(v, w);
                    }
                }
            }
            if bucket.len() > k {
                close(&mut bucket, builder, &mut local);
            }
        }
        if !bucket.is_empty() {
            close(&mut bucket, builder, &mut local);
        }
        // The newest bucket travels to the parent; the rest are final.
        leftover[s] = local.pop();
        for (b, _) in local {
            buckets.push(b);
        }
    }
    if let Some((b, _)) = leftover[root].take() {
        buckets.push(b);
    }
}

/// Interior vertices of a shortest `s`-`t` path whose interior stays inside
/// component `comp`.
fn path_through_component(g: &Graph, s: usize, t: usize, comp: &[usize]) -> Vec<usize> {
    let mut allowed = vec![false; g.n()];
    for &v in comp {
        allowed[v] = true;
    }
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut queue = VecDeque::new();
    queue.push_back(s);
    'bfs: while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w == t && v != s {
                parent[t] = v;
                break 'bfs;
            }
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    assert!(parent[t] != usize::MAX, "component joins both endpoints");
    let mut interior = Vec::new();
    let mut cur = parent[t];
    while cur != s {
        interior.push(cur);
        cur = parent[cur];
    }
    interior.reverse();
    interior
}

/// Doubled-spanning-tree Euler walk of the bucket; repeated visits become
/// fresh copies wired to their walk neighbors, so the walk order is a
/// Hamiltonian path of the resulting part.
fn euler_path(builder: &mut GpBuilder, bucket: &[usize]) -> Vec<usize> {
    if bucket.len() <= 1 {
        return bucket.to_vec();
    }
    let mut in_bucket = std::collections::HashSet::new();
    in_bucket.extend(bucket.iter().copied());
    // BFS spanning tree inside the bucket.
    let mut children: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    let mut seen = std::collections::HashSet::new();
    seen.insert(bucket[0]);
    let mut queue = VecDeque::new();
    queue.push_back(bucket[0]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<usize> = builder.adj[v]
            .iter()
            .copied()
            .filter(|w| in_bucket.contains(w) && !seen.contains(w))
            .collect();
        nbrs.sort_unstable();
        for w in nbrs {
            if seen.insert(w) {
                children.entry(v).or_default().push(w);
                queue.push_back(w);
            }
        }
    }
    assert_eq!(seen.len(), bucket.len(), "bucket must be connected");
    // Euler walk: v, subtree(c1), v, subtree(c2), v, ...
    let mut walk = Vec::with_capacity(2 * bucket.len() - 1);
    let mut stack = vec![(bucket[0], 0usize)];
    walk.push(bucket[0]);
    while let Some((v, i)) = stack.pop() {
        let cs = children.get(&v).map(|c| c.as_slice()).unwrap_or(&[]);
        if i < cs.len() {
            stack.push((v, i + 1));
            let c = cs[i];
            walk.push(c);
            stack.push((c, 0));
        } else if let Some(&(p, _)) = stack.last() {
            walk.push(p);
        }
    }
    // First occurrence keeps its id; later ones become copies.
    let mut used = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(walk.len());
    for v in walk {
        if used.insert(v) {
            out.push(v);
        } else {
            let copy = builder.fresh(builder.origin[v]);
            out.push(copy);
        }
    }
    for w in out.windows(2) {
        builder.add_edge(w[0], w[1]);
    }
    out
}

// ---------------------------------------------------------------------------
// APSP pipelines
// ---------------------------------------------------------------------------

fn bfs_within(g: &Graph, verts: &[usize], src_pos: usize) -> Vec<u32> {
    let mut pos = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut dist = vec![UNREACHABLE; verts.len()];
    dist[src_pos] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(src_pos);
    while let Some(p) = queue.pop_front() {
        for &w in g.neighbors(verts[p]) {
            if let Some(&q) = pos.get(&w) {
                if dist[q] == UNREACHABLE {
                    dist[q] = dist[p] + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    dist
}

/// Exact hop distances for all pairs (the sentinel marks disconnected
/// pairs), via the nice partition, per-part BFS, weighted APSP on the
/// separator, and the min-plus assembly.
pub fn apsp(g: &Graph, d: &SeparatorDecomposition) -> Result<DistanceMatrix, ApspError> {
    apsp_with_kernel(g, d, MinPlusKernel::Naive)
}

pub fn apsp_with_kernel(
    g: &Graph,
    d: &SeparatorDecomposition,
    kernel: MinPlusKernel,
) -> Result<DistanceMatrix, ApspError> {
    let n = g.n();
    let np = nice_partition(g, d)?;
    let c = np.size_class;
    let nu = np.parts.len();
    let gp = &np.graph;

    // Step 2: per-part BFS on G'[S' + T_i].
    let mut full = Vec::with_capacity(nu); // (2c)^2 distances, S' first
    for part in &np.parts {
        let verts: Vec<usize> = np.separator.iter().chain(part.iter()).copied().collect();
        let mut mat = DistanceMatrix::filled(verts.len(), verts.len(), UNREACHABLE);
        for p in 0..verts.len() {
            for (q, &dist) in bfs_within(gp, &verts, p).iter().enumerate() {
                mat.set(p, q, dist);
            }
        }
        full.push(mat);
    }
    let d_i: Vec<DistanceMatrix> = full
        .iter()
        .map(|m| {
            let mut out = DistanceMatrix::filled(c, c, UNREACHABLE);
            for t in 0..c {
                for s in 0..c {
                    out.set(t, s, m.get(c + t, s));
                }
            }
            out
        })
        .collect();

    // Step 3: weighted graph on S' and its exact distances.
    let mut weights = DistanceMatrix::filled(c.max(1), c.max(1), UNREACHABLE);
    if nu == 0 {
        // No parts: distances inside G'[S'] directly.
        for p in 0..np.separator.len() {
            for (q, &dist) in bfs_within(gp, &np.separator, p).iter().enumerate() {
                weights.set(p, q, dist);
            }
        }
    } else {
        for u in 0..c {
            for v in 0..c {
                if u == v {
                    continue;
                }
                let w = if gp.has_edge(np.separator[u], np.separator[v]) {
                    1
                } else {
                    full.iter().map(|m| m.get(u, v)).min().unwrap_or(UNREACHABLE)
                };
                weights.set(u, v, w);
            }
        }
    }
    let d_s = weighted_apsp_small(&weights);

    // Step 4: the products the assembly reads (only i <= j).
    let d_star: Vec<DistanceMatrix> = d_i
        .iter()
        .map(|di| min_plus(di, &d_s, kernel))
        .collect::<Result<_, _>>()?;
    let mut cross = std::collections::HashMap::new();
    for i in 0..nu {
        for j in i..nu {
            cross.insert((i, j), min_plus(&d_star[i], &d_i[j].transpose(), kernel)?);
        }
    }

    // Step 5: assemble over original vertices only.
    #[derive(Clone, Copy)]
    enum Loc {
        Sep(usize),
        Part(usize, usize),
    }
    let mut loc = vec![None; gp.n()];
    for (p, &v) in np.separator.iter().enumerate() {
        loc[v] = Some(Loc::Sep(p));
    }
    for (i, part) in np.parts.iter().enumerate() {
        for (p, &v) in part.iter().enumerate() {
            loc[v] = Some(Loc::Part(i, p));
        }
    }
    let mut out = DistanceMatrix::filled(n, n, UNREACHABLE);
    for u in 0..n {
        out.set(u, u, 0);
        for v in u + 1..n {
            let value = match (loc[u].expect("original located"), loc[v].expect("original located")) {
                (Loc::Sep(a), Loc::Sep(b)) => d_s.get(a, b),
                (Loc::Sep(a), Loc::Part(i, p)) => d_star[i].get(p, a),
                (Loc::Part(i, p), Loc::Sep(b)) => d_star[i].get(p, b),
                (Loc::Part(i, p), Loc::Part(j, q)) if i == j => {
                    full[i].get(c + p, c + q).min(cross[&(i, i)].get(p, q))
                }
                (Loc::Part(i, p), Loc::Part(j, q)) => {
                    if i < j {
                        cross[&(i, j)].get(p, q)
                    } else {
                        cross[&(j, i)].get(q, p)
                    }
                }
            };
            out.set(u, v, value);
            out.set(v, u, value);
        }
    }
    Ok(out)
}

/// Distances up to `d_max` by repeated boolean products against the block
/// adjacency structure: `B^1 = A`, `B^{i+1} = bool(B^i A)` computed
/// blockwise (rows of a part only combine the separator strip and the
/// part's own strip). Pairs never reached within `d_max` stay at the
/// sentinel -- the caller decides whether that means "further than d_max"
/// or disconnected.
pub fn apsp_bounded_diameter(
    g: &Graph,
    d: &SeparatorDecomposition,
    d_max: usize,
) -> Result<DistanceMatrix, ApspError> {
    check_decomposition(g, d).map_err(|e| ApspError::InvalidDecomposition(e.to_string()))?;
    assert!(d_max >= 1);
    let n = g.n();
    let words = n.div_ceil(64);
    let mut adj_bits = vec![0u64; n * words];
    for &(u, v) in g.edges() {
        adj_bits[u * words + v / 64] |= 1 << (v % 64);
        adj_bits[v * words + u / 64] |= 1 << (u % 64);
    }
    let mut out = DistanceMatrix::filled(n, n, UNREACHABLE);
    for v in 0..n {
        out.set(v, v, 0);
    }
    let mut cur = adj_bits;
    let record = |cur: &Vec<u64>, out: &mut DistanceMatrix, step: u32| {
        for u in 0..n {
            for (w, &bits) in cur[u * words..(u + 1) * words].iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let v = w * 64 + b.trailing_zeros() as usize;
                    b &= b - 1;
                    if u != v && out.get(u, v) == UNREACHABLE {
                        out.set(u, v, step);
                    }
                }
            }
        }
    };
    record(&cur, &mut out, 1);
    for step in 2..=d_max as u32 {
        let mut next = vec![0u64; n * words];
        // Row u of B A = OR of B rows over the neighbors of u; the block
        // sparsity keeps each row's combination inside S + its own part.
        for u in 0..n {
            let acc = &mut next[u * words..(u + 1) * words];
            for &w in g.neighbors(u) {
                for (i, &bits) in cur[w * words..(w + 1) * words].iter().enumerate() {
                    acc[i] |= bits;
                }
            }
        }
        cur = next;
        record(&cur, &mut out, step);
    }
    Ok(out)
}
