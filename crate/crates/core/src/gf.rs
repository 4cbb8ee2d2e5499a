//! Arithmetic over GF(2^q) and the dense/block linear algebra used by the
//! cycle, subgraph, matching, and shortest-path algorithms: multiplication,
//! determinant, inverse, rank, row bases, Schur complements, local inverse
//! updates, Pfaffians, and products against the block form of the adjacency
//! matrix induced by a separator decomposition.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, PartOf, SeparatorDecomposition};

#[derive(Debug, Error)]
pub enum GfError {
    #[error("inversion of zero field element")]
    ZeroInverse,
    #[error("singular matrix (rank {rank})")]
    Singular { rank: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("update rejected: I + Delta*M^-1[T,S] is singular")]
    UpdateRejected,
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkew,
    #[error("unsupported extension degree q = {0}")]
    UnsupportedDegree(u32),
}

/// GF(2^q) with a fixed irreducible modulus, stored with its leading bit
/// (e.g. `x^8 + x^4 + x^3 + x + 1` is `0x11b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    q: u32,
    modulus: u64,
}

/// Published moduli, one per supported degree (low-weight irreducibles).
const MODULI: [(u32, u64); 4] = [
    (8, 0x11b),
    (16, 0x1002b),
    (20, 0x100009),
    (32, 0x1_0000_008d),
];

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self, GfError> {
        MODULI
            .iter()
            .find(|&&(deg, _)| deg == q)
            .map(|&(q, modulus)| FieldSpec { q, modulus })
            .ok_or(GfError::UnsupportedDegree(q))
    }

    /// Field large enough for Schwartz-Zippel bounds on an `n`-vertex graph:
    /// `q = max(20, 3 ceil(log2 n))`, rounded up to a published degree and
    /// capped at 32 (per-run failure is then at most `n / 2^q`).
    pub fn for_graph_size(n: usize) -> Self {
        let lg = n.max(2).next_power_of_two().trailing_zeros();
        let q = (3 * lg).max(20);
        let q = if q <= 20 { 20 } else { 32 };
        FieldSpec::new(q).unwrap()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u64 {
        1u64 << self.q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    /// Shift-and-reduce product; operands stay below `2^q` throughout.
    #[inline]
    pub fn mul(&self, a: u64, mut b: u64) -> u64 {
        let mut a = a;
        let mut r = 0u64;
        let top = 1u64 << self.q;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    /// Inverse by the extended Euclidean algorithm on binary polynomials.
    pub fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let deg = |x: u64| 63 - x.leading_zeros() as i32;
        let (mut r0, mut r1) = (self.modulus, a);
        let (mut t0, mut t1) = (0u64, 1u64);
        while r1 != 0 {
            while r0 != 0 && deg(r0) >= deg(r1) {
                let shift = (deg(r0) - deg(r1)) as u32;
                r0 ^= r1 << shift;
                t0 ^= t1 << shift;
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut t0, &mut t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be irreducible");
        Ok(t0)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Uniform nonzero element.
    pub fn random_nonzero(&self, rng: &mut impl Rng) -> u64 {
        loop {
            let x = rng.gen::<u64>() & (self.order() - 1);
            if x != 0 {
                return x;
            }
        }
    }
}

/// Dense row-major matrix over a fixed GF(2^q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions {} vs {}",
            self.cols, other.rows
        );
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let or = k * other.cols;
                let dr = i * other.cols;
                for j in 0..other.cols {
                    let b = other.data[or + j];
                    if b != 0 {
                        out.data[dr + j] ^= f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Rectangular product driven block-by-block: the columns of `other` are
    /// processed in `blk`-wide strips (the ragged tail is simply shorter,
    /// which matches zero-padding).
    pub fn mul_blocked(&self, other: &FieldMatrix, blk: usize) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        let blk = blk.max(1);
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        let mut c0 = 0;
        while c0 < other.cols {
            let c1 = (c0 + blk).min(other.cols);
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in c0..c1 {
                        let b = other.get(k, j);
                        if b != 0 {
                            out.data[i * other.cols + j] ^= f.mul(a, b);
                        }
                    }
                }
            }
            c0 = c1;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c])
        })
    }

    /// Determinant by Gaussian elimination; row swaps cost nothing in
    /// characteristic 2.
    pub fn det(&self) -> u64 {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0);
            let pivot = match pivot {
                Some(p) => p,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pivot, j));
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                }
            }
            let pv = m.get(col, col);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) ^ f.mul(factor, m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        self.row_basis().len()
    }

    /// Greedy lexicographically-first row basis: the returned index set `X`
    /// satisfies `rank(A[X, .]) = rank(A) = |X|`. For a skew-symmetric
    /// matrix, `A[X]` is then nonsingular.
    pub fn row_basis(&self) -> Vec<usize> {
        let f = self.field;
        let mut m = self.clone();
        let mut labels: Vec<usize> = (0..self.rows).collect();
        let mut basis = Vec::new();
        let mut r0 = 0usize;
        for col in 0..self.cols {
            let pivot = (r0..self.rows).find(|&r| m.get(r, col) != 0);
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            // Rotate the pivot row into position r0 keeping the others in
            // original order, so the greedy choice is by lowest index.
            if pivot != r0 {
                for j in 0..self.cols {
                    let (a, b) = (m.get(r0, j), m.get(pivot, j));
                    m.set(r0, j, b);
                    m.set(pivot, j, a);
                }
                labels.swap(r0, pivot);
            }
            basis.push(labels[r0]);
            let pinv = f.inv(m.get(r0, col)).unwrap();
            for r in r0 + 1..self.rows {
                let factor = f.mul(m.get(r, col), pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = m.get(r, j) ^ f.mul(factor, m.get(r0, j));
                    m.set(r, j, v);
                }
            }
            r0 += 1;
            if r0 == self.rows {
                break;
            }
        }
        basis.sort_unstable();
        basis
    }

    pub fn inverse(&self) -> Result<FieldMatrix, GfError> {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = FieldMatrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0);
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    return Err(GfError::Singular {
                        rank: self.rank(),
                    })
                }
            };
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pivot, j));
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let pinv = f.inv(m.get(col, col)).unwrap();
            for j in 0..n {
                m.set(col, j, f.mul(m.get(col, j), pinv));
                inv.set(col, j, f.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(r, j) ^ f.mul(factor, m.get(col, j));
                    m.set(r, j, v);
                    let v = inv.get(r, j) ^ f.mul(factor, inv.get(col, j));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Debug text format: one row per line, hex-encoded elements.
    pub fn to_debug_text(&self) -> String {
        let mut s = format!("{} {} q{}\n", self.rows, self.cols, self.field.q);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:x}", self.get(r, c))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_debug_text(input: &str) -> Option<FieldMatrix> {
        let mut lines = input.lines();
        let head = lines.next()?;
        let mut it = head.split_whitespace();
        let rows: usize = it.next()?.parse().ok()?;
        let cols: usize = it.next()?.parse().ok()?;
        let q: u32 = it.next()?.strip_prefix('q')?.parse().ok()?;
        let field = FieldSpec::new(q).ok()?;
        let mut m = FieldMatrix::zeros(field, rows, cols);
        for r in 0..rows {
            let line = lines.next()?;
            for (c, tok) in line.split_whitespace().enumerate() {
                m.set(r, c, u64::from_str_radix(tok, 16).ok()?);
            }
        }
        Some(m)
    }
}

/// Checks zero diagonal and symmetric support with equal values (the
/// characteristic-2 form of skew symmetry).
pub fn is_skew_support(a: &FieldMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    for i in 0..a.rows() {
        if a.get(i, i) != 0 {
            return false;
        }
        for j in i + 1..a.cols() {
            if a.get(i, j) != a.get(j, i) {
                return false;
            }
        }
    }
    true
}

/// Schur complement of `a` with respect to index set `x`: returns
/// `a[Y] - a[Y,X] a[X]^-1 a[X,Y]` on the complementary set `Y` (ascending).
/// Satisfies `det(a) = det(a[X]) det(result)`.
pub fn schur_complement(a: &FieldMatrix, x: &[usize]) -> Result<FieldMatrix, GfError> {
    assert!(a.is_square());
    let n = a.rows();
    let mut in_x = vec![false; n];
    for &i in x {
        in_x[i] = true;
    }
    let y: Vec<usize> = (0..n).filter(|&i| !in_x[i]).collect();
    let axx = a.submatrix(x, x);
    let inv = axx.inverse().map_err(|_| GfError::Singular {
        rank: axx.rank(),
    })?;
    let ayx = a.submatrix(&y, x);
    let axy = a.submatrix(x, &y);
    Ok(a.submatrix(&y, &y).add(&ayx.mul(&inv).mul(&axy)))
}

/// Local inverse update after changing `M[s_idx, t_idx]` by `delta`
/// (Sherman-Morrison-Woodbury in Harvey's form). `m_inv` is the inverse of
/// the unmodified matrix; returns the inverse of the modified one, or
/// [`GfError::UpdateRejected`] when the modification makes it singular.
pub fn harvey_update(
    m_inv: &FieldMatrix,
    delta: &FieldMatrix,
    s_idx: &[usize],
    t_idx: &[usize],
) -> Result<FieldMatrix, GfError> {
    if delta.rows() != s_idx.len() || delta.cols() != t_idx.len() {
        return Err(GfError::Dimension(format!(
            "delta is {}x{}, index sets are {}x{}",
            delta.rows(),
            delta.cols(),
            s_idx.len(),
            t_idx.len()
        )));
    }
    let all: Vec<usize> = (0..m_inv.rows()).collect();
    let n_ts = m_inv.submatrix(t_idx, s_idx);
    let mut u = delta.mul(&n_ts);
    for i in 0..u.rows() {
        let v = u.get(i, i) ^ 1;
        u.set(i, i, v);
    }
    let u_inv = u.inverse().map_err(|_| GfError::UpdateRejected)?;
    let left = m_inv.submatrix(&all, s_idx).mul(&u_inv).mul(delta);
    let right = m_inv.submatrix(t_idx, &all);
    Ok(m_inv.add(&left.mul(&right)))
}

/// Pfaffian of a small skew-support matrix by recursive row expansion
/// (characteristic 2, so no signs). Odd dimension gives 0.
pub fn pfaffian_small(a: &FieldMatrix) -> Result<u64, GfError> {
    if !is_skew_support(a) {
        return Err(GfError::NotSkew);
    }
    if a.rows() > 12 {
        return Err(GfError::Dimension(format!(
            "pfaffian_small limited to dimension 12, got {}",
            a.rows()
        )));
    }
    if a.rows() % 2 == 1 {
        return Ok(0);
    }
    fn pf(f: FieldSpec, a: &FieldMatrix, live: &[usize]) -> u64 {
        if live.is_empty() {
            return 1;
        }
        let v = live[0];
        let mut total = 0u64;
        for pos in 1..live.len() {
            let w = live[pos];
            let coeff = a.get(v, w);
            if coeff == 0 {
                continue;
            }
            let rest: Vec<usize> = live
                .iter()
                .copied()
                .filter(|&x| x != v && x != w)
                .collect();
            total ^= f.mul(coeff, pf(f, a, &rest));
        }
        total
    }
    let live: Vec<usize> = (0..a.rows()).collect();
    Ok(pf(a.field(), a, &live))
}

// ---------------------------------------------------------------------------
// Block form of the (Tutte or 0/1) adjacency matrix
// ---------------------------------------------------------------------------

/// The adjacency or Tutte matrix stored in separator block form: `gamma`
/// on `S x S`, one `beta_i` on `S x T_i` and one `alpha_i` on `T_i x T_i`
/// per part. Cross-part blocks are identically zero and never stored.
#[derive(Debug, Clone)]
pub struct BlockTutteMatrix {
    pub field: FieldSpec,
    pub n: usize,
    pub sep: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub gamma: FieldMatrix,
    pub betas: Vec<FieldMatrix>,
    pub alphas: Vec<FieldMatrix>,
}

impl BlockTutteMatrix {
    /// 0/1 block adjacency matrix.
    pub fn adjacency(g: &Graph, d: &SeparatorDecomposition, field: FieldSpec) -> Self {
        Self::build(g, d, field, |_| 1)
    }

    /// Random Tutte instantiation: each edge gets a uniform nonzero field
    /// element, identical at `(u, v)` and `(v, u)`.
    pub fn random_tutte(
        g: &Graph,
        d: &SeparatorDecomposition,
        field: FieldSpec,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<u64> = g
            .edges()
            .iter()
            .map(|_| field.random_nonzero(&mut rng))
            .collect();
        let mut idx = std::collections::HashMap::new();
        for (i, &e) in g.edges().iter().enumerate() {
            idx.insert(e, i);
        }
        Self::build(g, d, field, |e| weights[idx[&e]])
    }

    fn build(
        g: &Graph,
        d: &SeparatorDecomposition,
        field: FieldSpec,
        mut weight: impl FnMut((usize, usize)) -> u64,
    ) -> Self {
        let s = d.separator.clone();
        let parts = d.parts.clone();
        let mut gamma = FieldMatrix::zeros(field, s.len(), s.len());
        let mut betas: Vec<FieldMatrix> = parts
            .iter()
            .map(|p| FieldMatrix::zeros(field, s.len(), p.len()))
            .collect();
        let mut alphas: Vec<FieldMatrix> = parts
            .iter()
            .map(|p| FieldMatrix::zeros(field, p.len(), p.len()))
            .collect();
        for &(u, v) in g.edges() {
            let w = weight((u, v));
            match (d.part_of[u], d.part_of[v]) {
                (PartOf::Separator, PartOf::Separator) => {
                    gamma.set(d.pos[u], d.pos[v], w);
                    gamma.set(d.pos[v], d.pos[u], w);
                }
                (PartOf::Separator, PartOf::Part(i)) => {
                    betas[i].set(d.pos[u], d.pos[v], w);
                }
                (PartOf::Part(i), PartOf::Separator) => {
                    betas[i].set(d.pos[v], d.pos[u], w);
                }
                (PartOf::Part(i), PartOf::Part(j)) => {
                    assert_eq!(i, j, "edge joins two parts: decomposition invalid");
                    alphas[i].set(d.pos[u], d.pos[v], w);
                    alphas[i].set(d.pos[v], d.pos[u], w);
                }
            }
        }
        BlockTutteMatrix {
            field,
            n: g.n(),
            sep: s,
            parts,
            gamma,
            betas,
            alphas,
        }
    }

    /// Vertices in block order `S, T_1, ..., T_nu`; dense matrices
    /// produced by this type are indexed in this order.
    pub fn vertex_order(&self) -> Vec<usize> {
        let mut order = self.sep.clone();
        for p in &self.parts {
            order.extend_from_slice(p);
        }
        order
    }

    pub fn to_dense(&self) -> FieldMatrix {
        let k = self.sep.len();
        let mut m = FieldMatrix::zeros(self.field, self.n, self.n);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.gamma.get(i, j));
            }
        }
        let mut base = k;
        for (pi, part) in self.parts.iter().enumerate() {
            for i in 0..k {
                for j in 0..part.len() {
                    let w = self.betas[pi].get(i, j);
                    m.set(i, base + j, w);
                    m.set(base + j, i, w);
                }
            }
            for i in 0..part.len() {
                for j in 0..part.len() {
                    m.set(base + i, base + j, self.alphas[pi].get(i, j));
                }
            }
            base += part.len();
        }
        m
    }

    /// `A * m` computed blockwise: the `S` rows are
    /// `gamma m[S,.] + sum_i beta_i m[T_i,.]` and the `T_i` rows are
    /// `beta_i^T m[S,.] + alpha_i m[T_i,.]`. `m` must be `n x n` in
    /// [`Self::vertex_order`] indexing.
    pub fn structured_mul_left(&self, m: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(GfError::Dimension(format!(
                "expected {0}x{0}, got {1}x{2}",
                self.n,
                m.rows(),
                m.cols()
            )));
        }
        let k = self.sep.len();
        let blk = self.k_block();
        let all: Vec<usize> = (0..self.n).collect();
        let s_rows: Vec<usize> = (0..k).collect();
        let m_s = m.submatrix(&s_rows, &all);
        let mut out = FieldMatrix::zeros(self.field, self.n, self.n);
        let mut top = self.gamma.mul_blocked(&m_s, blk);
        let mut base = k;
        for (pi, part) in self.parts.iter().enumerate() {
            let rows: Vec<usize> = (base..base + part.len()).collect();
            let m_t = m.submatrix(&rows, &all);
            top = top.add(&self.betas[pi].mul_blocked(&m_t, blk));
            let bot = self.betas[pi]
                .transpose()
                .mul_blocked(&m_s, blk)
                .add(&self.alphas[pi].mul_blocked(&m_t, blk));
            for i in 0..part.len() {
                for j in 0..self.n {
                    out.set(base + i, j, bot.get(i, j));
                }
            }
            base += part.len();
        }
        for i in 0..k {
            for j in 0..self.n {
                out.set(i, j, top.get(i, j));
            }
        }
        Ok(out)
    }

    /// `m * A`, via `(A m^T)^T` (the stored matrix equals its transpose in
    /// characteristic 2).
    pub fn structured_mul_right(&self, m: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        Ok(self.structured_mul_left(&m.transpose())?.transpose())
    }

    fn k_block(&self) -> usize {
        self.sep.len().max(1)
    }
}

// ---------------------------------------------------------------------------
// Integer block arithmetic (walk counts)
// ---------------------------------------------------------------------------

/// Small dense integer matrix for walk counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
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

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }
}

/// 0/1 blocks of the adjacency matrix as integers.
pub struct IntBlocks {
    pub gamma: IntMatrix,
    pub betas: Vec<IntMatrix>,
    pub alphas: Vec<IntMatrix>,
}

pub fn int_blocks(g: &Graph, d: &SeparatorDecomposition) -> IntBlocks {
    let k = d.separator.len();
    let mut gamma = IntMatrix::zeros(k, k);
    let mut betas: Vec<IntMatrix> = d
        .parts
        .iter()
        .map(|p| IntMatrix::zeros(k, p.len()))
        .collect();
    let mut alphas: Vec<IntMatrix> = d
        .parts
        .iter()
        .map(|p| IntMatrix::zeros(p.len(), p.len()))
        .collect();
    for &(u, v) in g.edges() {
        match (d.part_of[u], d.part_of[v]) {
            (PartOf::Separator, PartOf::Separator) => {
                gamma.set(d.pos[u], d.pos[v], 1);
                gamma.set(d.pos[v], d.pos[u], 1);
            }
            (PartOf::Separator, PartOf::Part(i)) => betas[i].set(d.pos[u], d.pos[v], 1),
            (PartOf::Part(i), PartOf::Separator) => betas[i].set(d.pos[v], d.pos[u], 1),
            (PartOf::Part(i), PartOf::Part(j)) => {
                assert_eq!(i, j);
                alphas[i].set(d.pos[u], d.pos[v], 1);
                alphas[i].set(d.pos[v], d.pos[u], 1);
            }
        }
    }
    IntBlocks {
        gamma,
        betas,
        alphas,
    }
}

/// Per-part common-neighbor counts on `S x S`: entry `[u,v]` of block `i`
/// is `|N(u) cap N(v) cap T_i|`, i.e. `(beta_i beta_i^T)[u,v]`.
pub fn common_neighbor_blocks(g: &Graph, d: &SeparatorDecomposition) -> Vec<IntMatrix> {
    let blocks = int_blocks(g, d);
    blocks
        .betas
        .iter()
        .map(|b| b.mul(&b.transpose()))
        .collect()
}

/// `A^2[u,v]` for every edge `uv`, i.e. the number of common neighbors,
/// computed from the stored blocks only:
/// `zeta = gamma^2 + sum beta_i beta_i^T`, `eta_i = gamma beta_i + beta_i
/// alpha_i`, `delta_i = beta_i^T beta_i + alpha_i^2`. Returned in the same
/// order as `g.edges()`.
pub fn square_on_edges(g: &Graph, d: &SeparatorDecomposition) -> Vec<u32> {
    let blocks = int_blocks(g, d);
    let mut zeta = blocks.gamma.mul(&blocks.gamma);
    for b in &blocks.betas {
        zeta = zeta.add(&b.mul(&b.transpose()));
    }
    let etas: Vec<IntMatrix> = blocks
        .betas
        .iter()
        .zip(&blocks.alphas)
        .map(|(b, a)| blocks.gamma.mul(b).add(&b.mul(a)))
        .collect();
    let deltas: Vec<IntMatrix> = blocks
        .betas
        .iter()
        .zip(&blocks.alphas)
        .map(|(b, a)| b.transpose().mul(b).add(&a.mul(a)))
        .collect();
    g.edges()
        .iter()
        .map(|&(u, v)| match (d.part_of[u], d.part_of[v]) {
            (PartOf::Separator, PartOf::Separator) => zeta.get(d.pos[u], d.pos[v]),
            (PartOf::Separator, PartOf::Part(i)) => etas[i].get(d.pos[u], d.pos[v]),
            (PartOf::Part(i), PartOf::Separator) => etas[i].get(d.pos[v], d.pos[u]),
            (PartOf::Part(i), PartOf::Part(j)) => {
                debug_assert_eq!(i, j);
                deltas[i].get(d.pos[u], d.pos[v])
            }
        })
        .collect()
}
