//! Randomized algebraic matching over a separator decomposition: perfect
//! matching detection via a Schur-complement chain over the separator,
//! construction via Harvey's DeleteEdgesCrossing on each per-part block,
//! and maximum matching via Tutte-matrix basis extraction.
//!
//! Every probabilistic output is structurally validated before being
//! returned; randomness failures turn into retries with fresh field values,
//! never into wrong answers. Only the "no perfect matching" answer stays
//! one-sided Monte Carlo, and its confidence is reported by the callers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{harvey_update, BlockTutteMatrix, FieldMatrix, FieldSpec};
use crate::graph::{build_decomposition, check_decomposition, Graph, SeparatorDecomposition};

/// Independent re-instantiations before declaring probabilistic failure.
pub const RETRY_CAP: usize = 5;

#[derive(Debug, Error)]
pub enum MatchingError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("probabilistic failure after {0} re-instantiations")]
    ProbabilisticFailure(usize),
    #[error("local inverse inconsistent: {0}")]
    InternalInverse(String),
}

/// A set of pairwise-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Matching {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn saturated(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        self.edges.iter().all(|&(u, v)| {
            let ok = u != v && g.has_edge(u, v) && !used[u] && !used[v];
            if ok {
                used[u] = true;
                used[v] = true;
            }
            ok
        })
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.validate(g) && 2 * self.edges.len() == g.n()
    }

    /// One `u v` line per edge, ascending.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u, v));
        }
        s
    }
}

/// A random instantiation of the Tutte matrix in block form.
pub struct TutteInstance<'a> {
    pub graph: &'a Graph,
    pub decomposition: &'a SeparatorDecomposition,
    pub field: FieldSpec,
    pub matrix: BlockTutteMatrix,
    pub seed: u64,
}

impl<'a> TutteInstance<'a> {
    pub fn new(
        graph: &'a Graph,
        decomposition: &'a SeparatorDecomposition,
        field: FieldSpec,
        seed: u64,
    ) -> Self {
        let matrix = BlockTutteMatrix::random_tutte(graph, decomposition, field, seed);
        TutteInstance {
            graph,
            decomposition,
            field,
            matrix,
            seed,
        }
    }
}

/// Rank of the instantiated Tutte matrix. Always at most twice the maximum
/// matching size; equal with probability at least `1 - n/|F|`.
pub fn tutte_rank(t: &TutteInstance) -> usize {
    t.matrix.to_dense().rank()
}

fn checked(g: &Graph, d: &SeparatorDecomposition) -> Result<(), MatchingError> {
    check_decomposition(g, d).map_err(|e| MatchingError::InvalidDecomposition(e.to_string()))
}

// ---------------------------------------------------------------------------
// Schur chain
// ---------------------------------------------------------------------------

/// Data produced by one pass of the Schur chain over the parts.
struct SchurChain {
    /// Vertices of `S* = S + union T*_i` in matrix order.
    sstar: Vec<usize>,
    /// `gammas[i]` is the step-`i` matrix over `S*` (`gammas[0] = A[S*]`).
    gammas: Vec<FieldMatrix>,
    /// Per part: the basis vertices `T'_i` (global ids).
    tprime: Vec<Vec<usize>>,
    /// Per part: `A[T'_i]`, nonsingular.
    alpha_hat: Vec<FieldMatrix>,
    /// Per part: `A[T'_i, S*]`.
    beta_hat: Vec<FieldMatrix>,
}

enum ChainOutcome {
    /// Final gamma nonsingular: the graph has a perfect matching.
    Nonsingular(SchurChain),
    /// Evidence against a perfect matching (possibly a false negative).
    NoPerfectMatching,
    /// The instantiation degenerated (basis block singular); retry.
    Degenerate,
}

/// One pass of the detection chain of the perfect-matching test: per-part
/// bases, the early deficiency exit, then
/// `gamma_{i+1} = gamma_i + beta_i^T alpha_i^-1 beta_i` part by part,
/// finishing with the nonsingularity of the final matrix.
fn schur_chain(inst: &TutteInstance) -> ChainOutcome {
    let d = inst.decomposition;
    let m = &inst.matrix;
    let nu = d.parts.len();

    let mut tprime: Vec<Vec<usize>> = Vec::with_capacity(nu);
    let mut tstar: Vec<Vec<usize>> = Vec::with_capacity(nu);
    for (i, part) in d.parts.iter().enumerate() {
        let basis_pos = m.alphas[i].row_basis();
        let in_basis: Vec<bool> = {
            let mut b = vec![false; part.len()];
            for &p in &basis_pos {
                b[p] = true;
            }
            b
        };
        tprime.push(basis_pos.iter().map(|&p| part[p]).collect());
        tstar.push(
            (0..part.len())
                .filter(|&p| !in_basis[p])
                .map(|p| part[p])
                .collect(),
        );
    }
    let deficiency: usize = tstar.iter().map(|t| t.len()).sum();
    if deficiency > d.separator.len() {
        // At least |T*_i| vertices of each part must match into S.
        return ChainOutcome::NoPerfectMatching;
    }

    let mut sstar: Vec<usize> = d.separator.clone();
    for t in &tstar {
        sstar.extend_from_slice(t);
    }
    let entry = |u: usize, v: usize| -> u64 { tutte_entry(m, d, u, v) };
    let gamma0 = FieldMatrix::from_fn(inst.field, sstar.len(), sstar.len(), |r, c| {
        entry(sstar[r], sstar[c])
    });

    let mut gammas = vec![gamma0];
    let mut alpha_hat = Vec::with_capacity(nu);
    let mut beta_hat = Vec::with_capacity(nu);
    for i in 0..nu {
        let tp = &tprime[i];
        let ah = FieldMatrix::from_fn(inst.field, tp.len(), tp.len(), |r, c| entry(tp[r], tp[c]));
        let bh = FieldMatrix::from_fn(inst.field, tp.len(), sstar.len(), |r, c| {
            entry(tp[r], sstar[c])
        });
        let inv = match ah.inverse() {
            Ok(inv) => inv,
            // Bases of a skew matrix give nonsingular blocks; a failure here
            // means the instantiation degenerated mid-chain.
            Err(_) => return ChainOutcome::Degenerate,
        };
        let next = gammas.last().unwrap().add(&bh.transpose().mul(&inv.mul(&bh)));
        gammas.push(next);
        alpha_hat.push(ah);
        beta_hat.push(bh);
    }
    let chain = SchurChain {
        sstar,
        gammas,
        tprime,
        alpha_hat,
        beta_hat,
    };
    if chain.gammas[nu].det() != 0 {
        ChainOutcome::Nonsingular(chain)
    } else {
        ChainOutcome::NoPerfectMatching
    }
}

/// Entry of the instantiated Tutte matrix for two global vertex ids, read
/// from the stored blocks (zero across parts).
fn tutte_entry(m: &BlockTutteMatrix, d: &SeparatorDecomposition, u: usize, v: usize) -> u64 {
    use crate::graph::PartOf;
    if u == v {
        return 0;
    }
    match (d.part_of[u], d.part_of[v]) {
        (PartOf::Separator, PartOf::Separator) => m.gamma.get(d.pos[u], d.pos[v]),
        (PartOf::Separator, PartOf::Part(i)) => m.betas[i].get(d.pos[u], d.pos[v]),
        (PartOf::Part(i), PartOf::Separator) => m.betas[i].get(d.pos[v], d.pos[u]),
        (PartOf::Part(i), PartOf::Part(j)) => {
            if i == j {
                m.alphas[i].get(d.pos[u], d.pos[v])
            } else {
                0
            }
        }
    }
}

/// One-sided perfect matching test: "true" is always correct; when a perfect
/// matching exists, "false" happens with probability at most
/// `(n/|F|)^trials` over the independent re-instantiations.
pub fn has_perfect_matching(
    g: &Graph,
    d: &SeparatorDecomposition,
    trials: usize,
    seed: u64,
) -> Result<bool, MatchingError> {
    has_perfect_matching_with_field(g, d, FieldSpec::for_graph_size(g.n()), trials, seed)
}

/// As [`has_perfect_matching`] with an explicit field choice.
pub fn has_perfect_matching_with_field(
    g: &Graph,
    d: &SeparatorDecomposition,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<bool, MatchingError> {
    checked(g, d)?;
    if g.n() % 2 == 1 {
        return Ok(false);
    }
    if g.n() == 0 {
        return Ok(true);
    }
    for trial in 0..trials.max(1) {
        let inst = TutteInstance::new(g, d, field, seed ^ (trial as u64).wrapping_mul(0x9e3779b97f4a7c15));
        match schur_chain(&inst) {
            ChainOutcome::Nonsingular(_) => return Ok(true),
            ChainOutcome::NoPerfectMatching | ChainOutcome::Degenerate => continue,
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Harvey's DeleteEdgesCrossing
// ---------------------------------------------------------------------------

/// Divide-and-conquer deletion of all deletable entries between `u_set` and
/// `w_set` (index positions into `c`). `c` is the working skew matrix and
/// `n_inv` its inverse; both are updated in place. After the call every
/// surviving nonzero cross entry is undeletable, and `n_inv` is again the
/// exact inverse of `c`.
pub fn delete_edges_crossing(
    c: &mut FieldMatrix,
    n_inv: &mut FieldMatrix,
    u_set: &[usize],
    w_set: &[usize],
) -> Result<(), MatchingError> {
    let size = u_set.len().max(w_set.len()).next_power_of_two().max(1);
    let pad = |s: &[usize]| -> Vec<Option<usize>> {
        let mut v: Vec<Option<usize>> = s.iter().copied().map(Some).collect();
        v.resize(size, None);
        v
    };
    let all: Vec<usize> = (0..c.rows()).collect();
    dec_recurse(c, n_inv, &pad(u_set), &pad(w_set), &all)
}

/// Invariant on entry: `n_inv[scope]` equals `c^-1[scope]` where `scope`
/// spans both index sets; restored on exit.
fn dec_recurse(
    c: &mut FieldMatrix,
    n_inv: &mut FieldMatrix,
    u: &[Option<usize>],
    w: &[Option<usize>],
    scope: &[usize],
) -> Result<(), MatchingError> {
    if u.len() == 1 {
        if let (Some(a), Some(b)) = (u[0], w[0]) {
            delete_single(c, n_inv, a, b, scope)?;
        }
        return Ok(());
    }
    let h = u.len() / 2;
    let halves_u = [&u[..h], &u[h..]];
    let halves_w = [&w[..h], &w[h..]];
    for ua in halves_u {
        for wb in halves_w {
            // Child scope: the indices the child's invariant speaks about.
            let child_scope: Vec<usize> = ua
                .iter()
                .chain(wb.iter())
                .filter_map(|&x| x)
                .collect();
            if child_scope.is_empty() {
                continue;
            }
            let before_c: Vec<Vec<u64>> = child_scope
                .iter()
                .map(|&r| child_scope.iter().map(|&cc| c.get(r, cc)).collect())
                .collect();
            // The update below must start from the pre-child inverse: the
            // child refreshes its own block, so snapshot the whole scope.
            let before_n = n_inv.submatrix(scope, scope);
            dec_recurse(c, n_inv, ua, wb, &child_scope)?;
            let delta = FieldMatrix::from_fn(
                c.field(),
                child_scope.len(),
                child_scope.len(),
                |r, cc| before_c[r][cc] ^ c.get(child_scope[r], child_scope[cc]),
            );
            if delta.is_zero() {
                continue;
            }
            let scope_pos: std::collections::HashMap<usize, usize> =
                scope.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let local: Vec<usize> = child_scope
                .iter()
                .map(|&x| {
                    *scope_pos
                        .get(&x)
                        .expect("child scope escapes parent scope")
                })
                .collect();
            let updated = harvey_update(&before_n, &delta, &local, &local).map_err(|e| {
                MatchingError::InternalInverse(format!("post-child update failed: {}", e))
            })?;
            for (ri, &r) in scope.iter().enumerate() {
                for (ci, &cc) in scope.iter().enumerate() {
                    n_inv.set(r, cc, updated.get(ri, ci));
                }
            }
        }
    }
    Ok(())
}

/// Base case: test deletability of the entry pair `(a, b)` with the 2x2
/// criterion and apply the deletion plus the local inverse update.
fn delete_single(
    c: &mut FieldMatrix,
    n_inv: &mut FieldMatrix,
    a: usize,
    b: usize,
    scope: &[usize],
) -> Result<(), MatchingError> {
    let val = c.get(a, b);
    if val == 0 {
        return Ok(());
    }
    let f = c.field();
    let mut delta = FieldMatrix::zeros(f, 2, 2);
    delta.set(0, 1, val);
    delta.set(1, 0, c.get(b, a));
    let pa = scope.iter().position(|&x| x == a);
    let pb = scope.iter().position(|&x| x == b);
    let (pa, pb) = match (pa, pb) {
        (Some(pa), Some(pb)) => (pa, pb),
        _ => {
            return Err(MatchingError::InternalInverse(
                "deleted entry outside scope".into(),
            ))
        }
    };
    // The rejection test inside the update reads only the {a, b} block of
    // the inverse, so running it on the scope submatrix both decides
    // deletability and produces the restored local inverse.
    let scope_sub = n_inv.submatrix(scope, scope);
    match harvey_update(&scope_sub, &delta, &[pa, pb], &[pa, pb]) {
        Err(crate::gf::GfError::UpdateRejected) => Ok(()), // undeletable
        Err(e) => Err(MatchingError::InternalInverse(e.to_string())),
        Ok(upd) => {
            c.set(a, b, 0);
            c.set(b, a, 0);
            for (ri, &r) in scope.iter().enumerate() {
                for (ci, &cc) in scope.iter().enumerate() {
                    n_inv.set(r, cc, upd.get(ri, ci));
                }
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Finding matchings
// ---------------------------------------------------------------------------

/// Rabin-Vazirani style perfect matching on a small graph: pick the first
/// live vertex `u`, commit any edge `uv` with a nonzero inverse entry (a
/// nonzero evaluation certifies the residual graph keeps a perfect
/// matching), and repeat on the rest. Retries with fresh randomness; `None`
/// after the cap.
fn dense_perfect_matching(g: &Graph, field: FieldSpec, seed: u64) -> Option<Vec<(usize, usize)>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if n % 2 == 1 {
        return None;
    }
    'attempt: for attempt in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0xa0761d6478bd642f));
        let mut live: Vec<usize> = (0..n).collect();
        let mut edges = Vec::new();
        while !live.is_empty() {
            let (sub, back) = g.induced(&live);
            let mut a = FieldMatrix::zeros(field, sub.n(), sub.n());
            for &(x, y) in sub.edges() {
                let w = field.random_nonzero(&mut rng);
                a.set(x, y, w);
                a.set(y, x, w);
            }
            let inv = match a.inverse() {
                Ok(i) => i,
                Err(_) => continue 'attempt,
            };
            let u = 0usize;
            let v = sub
                .neighbors(u)
                .iter()
                .copied()
                .find(|&v| inv.get(u, v) != 0);
            match v {
                Some(v) => {
                    edges.push((back[u], back[v]));
                    live = back
                        .iter()
                        .copied()
                        .filter(|&x| x != back[u] && x != back[v])
                        .collect();
                }
                None => continue 'attempt,
            }
        }
        return Some(edges);
    }
    None
}

/// Finds a perfect matching, or returns `None` when none is detected
/// (one-sided, like [`has_perfect_matching`]). Probabilistic verification
/// failures are retried with fresh randomness up to [`RETRY_CAP`] times
/// before reporting [`MatchingError::ProbabilisticFailure`].
pub fn find_perfect_matching(
    g: &Graph,
    d: &SeparatorDecomposition,
    seed: u64,
) -> Result<Option<Matching>, MatchingError> {
    find_perfect_matching_with_field(g, d, FieldSpec::for_graph_size(g.n()), seed)
}

/// As [`find_perfect_matching`] with an explicit field choice.
pub fn find_perfect_matching_with_field(
    g: &Graph,
    d: &SeparatorDecomposition,
    field: FieldSpec,
    seed: u64,
) -> Result<Option<Matching>, MatchingError> {
    checked(g, d)?;
    if g.n() == 0 {
        return Ok(Some(Matching::new(Vec::new())));
    }
    if g.n() % 2 == 1 {
        return Ok(None);
    }
    let mut saw_no = false;
    for attempt in 0..RETRY_CAP {
        let attempt_seed = seed ^ (attempt as u64).wrapping_mul(0x2545f4914f6cdd1d);
        let inst = TutteInstance::new(g, d, field, attempt_seed);
        let chain = match schur_chain(&inst) {
            ChainOutcome::Nonsingular(chain) => chain,
            ChainOutcome::NoPerfectMatching => {
                saw_no = true;
                continue;
            }
            ChainOutcome::Degenerate => continue,
        };
        match extract_perfect_matching(&inst, chain, attempt_seed) {
            Some(m) if m.is_perfect(g) => return Ok(Some(m)),
            _ => continue,
        }
    }
    if saw_no {
        Ok(None)
    } else {
        Err(MatchingError::ProbabilisticFailure(RETRY_CAP))
    }
}

/// Downward pass of the construction: per part, Harvey deletions on the
/// block `B'_i` over `T'_i + S~_{i+1}` yield a cross matching `M'_i` and the
/// sets `S~_i`, `T''_i`; inner matchings cover `T''_i`; the final matching
/// covers `S~_1`.
fn extract_perfect_matching(
    inst: &TutteInstance,
    chain: SchurChain,
    seed: u64,
) -> Option<Matching> {
    let g = inst.graph;
    let field = inst.field;
    let nu = chain.tprime.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Positions into `sstar` of the current S~ (shrinks as i descends).
    let mut stilde: Vec<usize> = (0..chain.sstar.len()).collect();
    for i in (0..nu).rev() {
        let tp = &chain.tprime[i];
        let t = tp.len();
        let s = stilde.len();
        if t == 0 {
            continue;
        }
        // B'_i over [T'_i | S~_{i+1}].
        let mut b = FieldMatrix::zeros(field, t + s, t + s);
        for r in 0..t {
            for c in 0..t {
                b.set(r, c, chain.alpha_hat[i].get(r, c));
            }
            for (cj, &sp) in stilde.iter().enumerate() {
                let w = chain.beta_hat[i].get(r, sp);
                b.set(r, t + cj, w);
                b.set(t + cj, r, w);
            }
        }
        for (ri, &rp) in stilde.iter().enumerate() {
            for (ci, &cp) in stilde.iter().enumerate() {
                b.set(t + ri, t + ci, chain.gammas[i].get(rp, cp));
            }
        }
        let mut inv = match b.inverse() {
            Ok(inv) => inv,
            Err(_) => return None, // B'_i should be nonsingular; re-randomize
        };
        let u_set: Vec<usize> = (t..t + s).collect();
        let w_set: Vec<usize> = (0..t).collect();
        let mut c = b;
        if delete_edges_crossing(&mut c, &mut inv, &u_set, &w_set).is_err() {
            return None;
        }
        // Survivors must form a perfect matching between the saturated
        // sides; verify explicitly.
        let mut next_stilde = Vec::new();
        let mut matched_s = Vec::new();
        for (si, &sp) in stilde.iter().enumerate() {
            let hits: Vec<usize> = (0..t).filter(|&r| c.get(t + si, r) != 0).collect();
            match hits.len() {
                0 => next_stilde.push(sp),
                1 => matched_s.push((si, hits[0])),
                _ => return None,
            }
        }
        let mut tdouble = Vec::new();
        let mut matched_t = vec![false; t];
        for r in 0..t {
            let hits = stilde
                .iter()
                .enumerate()
                .filter(|&(si, _)| c.get(t + si, r) != 0)
                .count();
            match hits {
                0 => tdouble.push(r),
                1 => matched_t[r] = true,
                _ => return None,
            }
        }
        for &(si, r) in &matched_s {
            let u = chain.sstar[stilde[si]];
            let v = tp[r];
            if !g.has_edge(u, v) {
                return None;
            }
            edges.push((u, v));
        }
        if matched_s.len() != matched_t.iter().filter(|&&b| b).count() {
            return None;
        }
        // Inner matching on T''_i.
        let td_vertices: Vec<usize> = tdouble.iter().map(|&r| tp[r]).collect();
        let (sub, back) = g.induced(&td_vertices);
        let inner = dense_perfect_matching(&sub, field, seed ^ (i as u64) << 32)?;
        edges.extend(inner.iter().map(|&(x, y)| (back[x], back[y])));
        stilde = next_stilde;
    }
    // Final matching on S~_1.
    let s1_vertices: Vec<usize> = stilde.iter().map(|&p| chain.sstar[p]).collect();
    let (sub, back) = g.induced(&s1_vertices);
    let last = dense_perfect_matching(&sub, field, seed ^ 0xdead_beef)?;
    edges.extend(last.iter().map(|&(x, y)| (back[x], back[y])));
    Some(Matching::new(edges))
}

/// Maximum matching: per-part bases, the Schur complement over their union
/// (whose `T'' x T''` block vanishes), a row basis over the `T'' x S`
/// strip, basis completion inside the remaining block, and a perfect
/// matching on the induced basis subgraph. The returned matching always
/// passes the validator; size equals half the Tutte rank of the same
/// instantiation.
pub fn max_matching(
    g: &Graph,
    d: &SeparatorDecomposition,
    seed: u64,
) -> Result<Matching, MatchingError> {
    max_matching_with_field(g, d, FieldSpec::for_graph_size(g.n()), seed).map(|(m, _)| m)
}

/// As [`max_matching`] with an explicit field; also reports how many
/// attempts (fresh instantiations) the run consumed.
pub fn max_matching_with_field(
    g: &Graph,
    d: &SeparatorDecomposition,
    field: FieldSpec,
    seed: u64,
) -> Result<(Matching, usize), MatchingError> {
    checked(g, d)?;
    if g.m() == 0 {
        return Ok((Matching::new(Vec::new()), 1));
    }
    for attempt in 0..RETRY_CAP {
        let attempt_seed = seed ^ (attempt as u64).wrapping_mul(0x9e3779b97f4a7c15);
        let inst = TutteInstance::new(g, d, field, attempt_seed);
        let basis = match tutte_basis(&inst) {
            Some(b) => b,
            None => continue,
        };
        if basis.is_empty() {
            return Ok((Matching::new(Vec::new()), attempt + 1));
        }
        // G[X] has a perfect matching whenever A[X] is nonsingular.
        let (sub, back) = g.induced(&basis);
        let sub_sep: Vec<usize> = {
            let mut pos = vec![usize::MAX; g.n()];
            for (i, &v) in back.iter().enumerate() {
                pos[v] = i;
            }
            d.separator
                .iter()
                .filter_map(|&v| (pos[v] != usize::MAX).then(|| pos[v]))
                .collect()
        };
        let sub_d = match build_decomposition(&sub, &sub_sep, d.k) {
            Ok(sd) => sd,
            Err(e) => return Err(MatchingError::InvalidDecomposition(e.to_string())),
        };
        match find_perfect_matching_with_field(&sub, &sub_d, field, attempt_seed)? {
            Some(m) => {
                let mapped = Matching::new(
                    m.edges.iter().map(|&(u, v)| (back[u], back[v])).collect(),
                );
                if mapped.validate(g) && 2 * mapped.size() == basis.len() {
                    return Ok((mapped, attempt + 1));
                }
            }
            None => continue,
        }
    }
    Err(MatchingError::ProbabilisticFailure(RETRY_CAP))
}

/// Basis `X` of the instantiated Tutte matrix with `A[X]` nonsingular and
/// `|X| = rank(A)`, found without densifying: the per-part bases survive
/// whole, and the rest is completed inside a block of size at most `2k`.
fn tutte_basis(inst: &TutteInstance) -> Option<Vec<usize>> {
    let d = inst.decomposition;
    let m = &inst.matrix;
    let field = inst.field;
    let nu = d.parts.len();

    let mut tprime: Vec<Vec<usize>> = Vec::with_capacity(nu); // basis positions
    let mut tdouble: Vec<Vec<usize>> = Vec::with_capacity(nu);
    let mut alpha_inv: Vec<Option<FieldMatrix>> = Vec::with_capacity(nu);
    for i in 0..nu {
        let basis_pos = m.alphas[i].row_basis();
        let mut in_basis = vec![false; d.parts[i].len()];
        for &p in &basis_pos {
            in_basis[p] = true;
        }
        let rest: Vec<usize> = (0..d.parts[i].len()).filter(|&p| !in_basis[p]).collect();
        if basis_pos.is_empty() {
            alpha_inv.push(None);
        } else {
            let ah = m.alphas[i].submatrix(&basis_pos, &basis_pos);
            match ah.inverse() {
                Ok(inv) => alpha_inv.push(Some(inv)),
                Err(_) => return None,
            }
        }
        tprime.push(basis_pos);
        tdouble.push(rest);
    }

    let k = d.separator.len();
    // Schur complement over the union of the T'_i, evaluated on the S rows
    // and the T''_i strips. C[T''_i, T''_j] vanishes identically.
    let mut c_ss = FieldMatrix::from_fn(field, k, k, |r, c| m.gamma.get(r, c));
    let mut c_st: Vec<FieldMatrix> = Vec::with_capacity(nu);
    for i in 0..nu {
        let tp = &tprime[i];
        let td = &tdouble[i];
        let all_s: Vec<usize> = (0..k).collect();
        let p = m.betas[i].submatrix(&all_s, tp); // A[S, T'_i]
        let base_st = m.betas[i].submatrix(&all_s, td); // A[S, T''_i]
        match &alpha_inv[i] {
            Some(inv) => {
                c_ss = c_ss.add(&p.mul(inv).mul(&p.transpose()));
                let q = m.alphas[i].submatrix(td, tp); // A[T''_i, T'_i]
                c_st.push(base_st.add(&p.mul(inv).mul(&q.transpose())));
            }
            None => c_st.push(base_st),
        }
    }

    // Row basis Y over the stacked [C[T''_i, S]] strip.
    let total_td: usize = tdouble.iter().map(|t| t.len()).sum();
    let mut stacked = FieldMatrix::zeros(field, total_td, k);
    let mut row_owner: Vec<(usize, usize)> = Vec::with_capacity(total_td);
    {
        let mut r = 0;
        for i in 0..nu {
            for (j, &pos) in tdouble[i].iter().enumerate() {
                for col in 0..k {
                    stacked.set(r, col, c_st[i].get(col, j));
                }
                row_owner.push((i, pos));
                r += 1;
            }
        }
    }
    let y_rows = stacked.row_basis();

    // Completion inside C[S + Y] (at most 2k indices).
    let sel: Vec<(usize, usize)> = y_rows.iter().map(|&r| row_owner[r]).collect();
    let dim = k + sel.len();
    let mut f = FieldMatrix::zeros(field, dim, dim);
    for r in 0..k {
        for c in 0..k {
            f.set(r, c, c_ss.get(r, c));
        }
        for (j, &(i, pos)) in sel.iter().enumerate() {
            let col_in_td = tdouble[i].iter().position(|&p| p == pos).unwrap();
            let w = c_st[i].get(r, col_in_td);
            f.set(r, k + j, w);
            f.set(k + j, r, w);
        }
    }
    let x_local = f.row_basis();
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..nu {
        basis.extend(tprime[i].iter().map(|&p| d.parts[i][p]));
    }
    for &xi in &x_local {
        if xi < k {
            basis.push(d.separator[xi]);
        } else {
            let (i, pos) = sel[xi - k];
            basis.push(d.parts[i][pos]);
        }
    }
    basis.sort_unstable();
    Some(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_planted, greedy_separator};
    use crate::oracle;
    use rand::Rng;

    fn decomp_for(g: &Graph) -> SeparatorDecomposition {
        let (s, k) = greedy_separator(g);
        build_decomposition(g, &s, k).unwrap()
    }

    #[test]
    fn tutte_rank_examples() {
        let k2 = Graph::complete(2);
        let d = decomp_for(&k2);
        let inst = TutteInstance::new(&k2, &d, FieldSpec::new(20).unwrap(), 1);
        assert_eq!(tutte_rank(&inst), 2);

        let k3 = Graph::complete(3);
        let d = decomp_for(&k3);
        let inst = TutteInstance::new(&k3, &d, FieldSpec::new(20).unwrap(), 1);
        assert_eq!(tutte_rank(&inst), 2);

        let p = oracle::petersen();
        let d = decomp_for(&p);
        let inst = TutteInstance::new(&p, &d, FieldSpec::new(20).unwrap(), 1);
        assert_eq!(tutte_rank(&inst), 10);
    }

    #[test]
    fn tutte_rank_is_even() {
        for seed in 0..30u64 {
            let inst = generate_planted(18, 3, 4, 0.4, 0.3, seed).unwrap();
            let d = build_decomposition(&inst.graph, &inst.separator, inst.k).unwrap();
            let t = TutteInstance::new(&inst.graph, &d, FieldSpec::new(20).unwrap(), seed);
            assert_eq!(tutte_rank(&t) % 2, 0);
        }
    }

    #[test]
    fn has_pm_examples() {
        let c6 = Graph::cycle(6);
        let d = decomp_for(&c6);
        assert!(has_perfect_matching(&c6, &d, 3, 1).unwrap());

        let c5 = Graph::cycle(5);
        let d = decomp_for(&c5);
        assert!(!has_perfect_matching(&c5, &d, 3, 1).unwrap());
    }

    #[test]
    fn has_pm_agrees_with_oracle() {
        for seed in 0..200u64 {
            let n = 8 + 2 * ((seed as usize) % 7);
            let inst = generate_planted(n, 2, 3, 0.5, 0.35, seed).unwrap();
            let g = &inst.graph;
            let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
            let want = oracle::oracle_max_matching(g).len() * 2 == g.n();
            let got = has_perfect_matching(g, &d, 3, seed).unwrap();
            assert_eq!(got, want, "seed {}", seed);
        }
    }

    #[test]
    fn chain_determinant_conservation() {
        // Per step: det(B_i) = det(alpha_i) det(B_{i+1}), where B_{i+1} is
        // the dense Schur complement of B_i over T'_i. The chain gammas must
        // match the dense route on the surviving S* block at every step.
        use crate::gf::schur_complement;
        for seed in 0..20u64 {
            let inst = generate_planted(14, 2, 3, 0.6, 0.4, seed).unwrap();
            let g = &inst.graph;
            if g.n() % 2 == 1 {
                continue;
            }
            let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
            let f = FieldSpec::new(20).unwrap();
            let t = TutteInstance::new(g, &d, f, seed);
            let chain = match schur_chain(&t) {
                ChainOutcome::Nonsingular(chain) => chain,
                _ => continue,
            };
            // Dense matrix in S*-then-parts order; live = current index map.
            let order: Vec<usize> = chain
                .sstar
                .iter()
                .copied()
                .chain(chain.tprime.iter().flatten().copied())
                .collect();
            let dense = {
                let mut m = FieldMatrix::zeros(f, order.len(), order.len());
                for (r, &u) in order.iter().enumerate() {
                    for (c, &v) in order.iter().enumerate() {
                        m.set(r, c, tutte_entry(&t.matrix, &d, u, v));
                    }
                }
                m
            };
            let mut b = dense;
            let mut live = order;
            for (i, tp) in chain.tprime.iter().enumerate() {
                let pos: Vec<usize> = tp
                    .iter()
                    .map(|v| live.iter().position(|x| x == v).unwrap())
                    .collect();
                if pos.is_empty() {
                    continue;
                }
                let alpha_det = chain.alpha_hat[i].det();
                let next = schur_complement(&b, &pos).unwrap();
                assert_eq!(
                    b.det(),
                    f.mul(alpha_det, next.det()),
                    "seed {} step {}",
                    seed,
                    i
                );
                let mut keep: Vec<usize> = Vec::new();
                for (idx, v) in live.iter().enumerate() {
                    if !pos.contains(&idx) {
                        keep.push(*v);
                    }
                }
                live = keep;
                b = next;
                // The chain gamma at step i+1 restricted to S* equals the
                // dense complement on the S* block.
                for (r, &u) in chain.sstar.iter().enumerate() {
                    for (c, &v) in chain.sstar.iter().enumerate() {
                        let br = live.iter().position(|x| *x == u).unwrap();
                        let bc = live.iter().position(|x| *x == v).unwrap();
                        assert_eq!(
                            chain.gammas[i + 1].get(r, c),
                            b.get(br, bc),
                            "seed {} step {} entry {} {}",
                            seed,
                            i,
                            u,
                            v
                        );
                    }
                }
            }
            // Telescoped: det(A) = prod det(alpha_i) * det(final gamma).
            let mut prod = chain.gammas.last().unwrap().det();
            for ah in &chain.alpha_hat {
                prod = f.mul(prod, ah.det());
            }
            assert_eq!(prod, t.matrix.to_dense().det(), "seed {}", seed);
        }
    }

    #[test]
    fn delete_edges_crossing_no_cross_entries_is_noop() {
        let f = FieldSpec::new(20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Block-diagonal nonsingular skew matrix: no cross entries.
        let mut c = FieldMatrix::zeros(f, 4, 4);
        let w1 = f.random_nonzero(&mut rng);
        let w2 = f.random_nonzero(&mut rng);
        c.set(0, 1, w1);
        c.set(1, 0, w1);
        c.set(2, 3, w2);
        c.set(3, 2, w2);
        let before = c.clone();
        let mut inv = c.inverse().unwrap();
        delete_edges_crossing(&mut c, &mut inv, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(c, before);
        assert_eq!(inv, c.inverse().unwrap());
    }

    #[test]
    fn delete_edges_crossing_keeps_inverse_and_matching_structure() {
        let f = FieldSpec::new(20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        let mut seed = 0u64;
        while done < 40 {
            seed += 1;
            // Random even graph with a perfect matching: plant one, add noise.
            let n = 4 + 2 * (rng.gen::<usize>() % 4);
            let mut edges: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let mut a = FieldMatrix::zeros(f, n, n);
            let mut rng2 = ChaCha8Rng::seed_from_u64(seed);
            for &(u, v) in g.edges() {
                let w = f.random_nonzero(&mut rng2);
                a.set(u, v, w);
                a.set(v, u, w);
            }
            if a.det() == 0 {
                continue;
            }
            let mut inv = a.inverse().unwrap();
            let mut c = a.clone();
            let u_set: Vec<usize> = (0..n / 2).collect();
            let w_set: Vec<usize> = (n / 2..n).collect();
            delete_edges_crossing(&mut c, &mut inv, &u_set, &w_set).unwrap();
            // Invariant: inverse still exact, matrix still nonsingular.
            assert_eq!(inv, c.inverse().unwrap(), "seed {}", seed);
            assert_ne!(c.det(), 0);
            // Surviving cross entries form a partial matching (each vertex
            // at most one survivor).
            for &u in &u_set {
                let hits = w_set.iter().filter(|&&w| c.get(u, w) != 0).count();
                assert!(hits <= 1, "seed {}: row {} has {} survivors", seed, u, hits);
            }
            for &w in &w_set {
                let hits = u_set.iter().filter(|&&u| c.get(u, w) != 0).count();
                assert!(hits <= 1, "seed {}", seed);
            }
            // Undeletability: every surviving cross entry, if deleted,
            // makes the matrix singular.
            for &u in &u_set {
                for &w in &w_set {
                    if c.get(u, w) != 0 {
                        let mut probe = c.clone();
                        probe.set(u, w, 0);
                        probe.set(w, u, 0);
                        assert_eq!(probe.det(), 0, "seed {}: {}-{} was deletable", seed, u, w);
                    }
                }
            }
            done += 1;
        }
    }

    #[test]
    fn find_pm_examples() {
        let c6 = Graph::cycle(6);
        let d = decomp_for(&c6);
        let m = find_perfect_matching(&c6, &d, 7).unwrap().unwrap();
        assert!(m.is_perfect(&c6));
        assert_eq!(m.size(), 3);

        let c5 = Graph::cycle(5);
        let d = decomp_for(&c5);
        assert!(find_perfect_matching(&c5, &d, 7).unwrap().is_none());
    }

    /// Planted instance with a perfect matching forced inside every chunk
    /// and inside the separator.
    pub(crate) fn planted_with_pm(n: usize, sep: usize, comp: usize, seed: u64) -> Graph {
        assert!(sep % 2 == 0 && comp % 2 == 0 && (n - sep) % comp == 0);
        let inst = generate_planted(n, sep, comp, 0.5, 0.35, seed).unwrap();
        let mut edges: Vec<(usize, usize)> = inst.graph.edges().to_vec();
        let mut add = |u: usize, v: usize| {
            if !inst.graph.has_edge(u, v) {
                edges.push((u, v));
            }
        };
        for i in 0..sep / 2 {
            add(2 * i, 2 * i + 1);
        }
        let mut base = sep;
        while base < n {
            for i in 0..comp / 2 {
                add(base + 2 * i, base + 2 * i + 1);
            }
            base += comp;
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn find_pm_on_planted_instances() {
        let mut with_pm = 0;
        for seed in 0..100u64 {
            let n = 8 + 2 * ((seed as usize) % 8);
            let inst = generate_planted(n, 2, 3, 0.6, 0.4, seed).unwrap();
            let g = &inst.graph;
            let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
            let has = oracle::oracle_max_matching(g).len() * 2 == g.n();
            match find_perfect_matching(g, &d, seed).unwrap() {
                Some(m) => {
                    assert!(m.is_perfect(g), "seed {}", seed);
                    assert!(has, "seed {}: matching found on graph without PM", seed);
                    with_pm += 1;
                }
                None => assert!(!has, "seed {}: missed a perfect matching", seed),
            }
        }
        // Instances where each part and the separator are internally
        // matchable by construction.
        for seed in 0..60u64 {
            let g = planted_with_pm(16 + 4 * ((seed as usize) % 3), 4, 4, seed);
            let (s, k) = greedy_separator(&g);
            let d = build_decomposition(&g, &s, k).unwrap();
            let m = find_perfect_matching(&g, &d, seed).unwrap();
            let m = m.expect("planted perfect matching must be found");
            assert!(m.is_perfect(&g), "seed {}", seed);
            with_pm += 1;
        }
        assert!(with_pm > 60, "corpus too thin: {} PMs", with_pm);
    }

    #[test]
    fn max_matching_examples() {
        let star = Graph::new(6, &(1..6).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        let d = decomp_for(&star);
        let m = max_matching(&star, &d, 3).unwrap();
        assert_eq!(m.size(), 1);
        assert!(m.validate(&star));

        let p4 = Graph::path(4);
        let d = decomp_for(&p4);
        assert_eq!(max_matching(&p4, &d, 3).unwrap().size(), 2);
    }

    #[test]
    fn max_matching_matches_oracle() {
        for seed in 0..150u64 {
            let n = 6 + (seed as usize) % 15;
            let inst = generate_planted(n, 2, 3, 0.45, 0.3, seed).unwrap();
            let g = &inst.graph;
            let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
            let want = oracle::oracle_max_matching(g).len();
            let got = max_matching(g, &d, seed).unwrap();
            assert!(got.validate(g));
            assert_eq!(got.size(), want, "seed {} n {}", seed, n);
        }
    }

    #[test]
    fn rank_chain_bounds_matching_size() {
        // max size <= tutte_rank / 2 <= oracle size, with equality on this
        // corpus (the rank of an evaluation never exceeds the symbolic rank).
        let f = FieldSpec::new(32).unwrap();
        for seed in 0..40u64 {
            let inst = generate_planted(16, 2, 3, 0.5, 0.35, seed).unwrap();
            let g = &inst.graph;
            let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
            let want = oracle::oracle_max_matching(g).len();
            let t = TutteInstance::new(g, &d, f, seed);
            let rank = tutte_rank(&t);
            assert!(rank / 2 <= want);
            assert_eq!(rank / 2, want, "seed {}", seed);
            let (m, _) = max_matching_with_field(g, &d, f, seed).unwrap();
            assert!(m.size() <= rank / 2);
        }
    }

    #[test]
    fn matching_serialization_is_sorted() {
        let m = Matching::new(vec![(5, 2), (1, 0), (9, 3)]);
        assert_eq!(m.to_text(), "0 1\n2 5\n3 9\n");
    }

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
}
