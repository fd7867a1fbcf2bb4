//! Dense linear algebra over a small prime field.
//!
//! Vectors are `Vec<u32>` with entries in `0..p`. Row updates are applied
//! lazily: `dst += f * src` is accumulated without reduction until the
//! running bound would overflow `u32`, which lets the inner loop vectorize.

use crate::{Error, Result};

/// Largest prime the oracle accepts; keeps `(p - 1)^2` inside `u32`.
pub const MAX_ORACLE_PRIME: u64 = 65_521;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    budget: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_ORACLE_PRIME {
            return Err(Error::InvalidMatrixModule(format!(
                "oracle arithmetic supports p <= {MAX_ORACLE_PRIME}, got {p}"
            )));
        }
        let p = p as u32;
        let sq = (p - 1).max(1) * (p - 1).max(1);
        // Number of lazy updates a fully reduced row can absorb.
        let budget = ((u32::MAX - p) / sq).max(1);
        Ok(Self { p, budget })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u32) -> u32 {
        x % self.p
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        let x = x % self.p;
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        let mut base = a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn reduce_all(&self, v: &mut [u32]) {
        let p = self.p;
        v.iter_mut().for_each(|x| *x %= p);
    }

    fn scale(&self, v: &mut [u32], f: u32) {
        let p = self.p as u64;
        let f = f as u64;
        v.iter_mut().for_each(|x| *x = ((*x as u64 * f) % p) as u32);
    }
}

/// `dst += f * src`, unreduced.
#[inline]
fn axpy_lazy(dst: &mut [u32], f: u32, src: &[u32]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_add(f * *s);
    }
}

/// Row echelon basis of a subspace of `F_p^dim`.
///
/// Rows are kept sorted by pivot column, each with a unit pivot and zeros
/// to the left of it.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<u32>>>(
        field: PrimeField,
        dim: usize,
        vs: I,
    ) -> Self {
        let mut e = Self::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis and returns the remainder, fully reduced.
    fn sift(&self, mut v: Vec<u32>) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        f.reduce_all(&mut v);
        let mut pending = 0u32;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let lead = f.reduce(v[c]);
            if lead != 0 {
                if pending >= f.budget {
                    f.reduce_all(&mut v[c..]);
                    pending = 0;
                }
                axpy_lazy(&mut v[c..], f.p - lead, &row[c..]);
                pending += 1;
            }
            v[c] = 0;
        }
        f.reduce_all(&mut v);
        v
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let mut v = self.sift(v);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[lead]);
        self.field.scale(&mut v[lead..], inv);
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: Vec<u32>) -> bool {
        self.sift(v).iter().all(|&x| x == 0)
    }

    /// Back-substitutes so that every pivot column is a unit vector.
    pub fn into_reduced(mut self) -> ReducedBasis {
        let f = self.field;
        for k in (0..self.rows.len()).rev() {
            let c = self.pivots[k];
            let (head, tail) = self.rows.split_at_mut(k);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let x = f.reduce(row[c]);
                if x != 0 {
                    axpy_lazy(&mut row[c..], f.p - x, &pivot_row[c..]);
                    f.reduce_all(&mut row[c..]);
                }
            }
        }
        ReducedBasis {
            field: f,
            dim: self.dim,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// Reduced row echelon basis: coordinates of a vector in the span are its
/// entries at the pivot columns.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl ReducedBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Basis of `{ x : A x = 0 }` where the rows of `A` span this space.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.dim)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u32; self.dim];
                x[free] = 1;
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    x[c] = self.field.neg(row[free]);
                }
                x
            })
            .collect()
    }
}

/// Compressed sparse rows of a square matrix acting on column vectors.
#[derive(Debug, Clone)]
pub struct SparseOp {
    field: PrimeField,
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<u32>,
}

impl SparseOp {
    /// `rows[i][j]` is the entry in row `i`, column `j`.
    pub fn from_dense(field: PrimeField, dim: usize, entries: &[u32]) -> Self {
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..dim {
            for j in 0..dim {
                let x = entries[i * dim + j] % field.p;
                if x != 0 {
                    cols.push(j);
                    vals.push(x);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            field,
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.field.p as u64;
        (0..self.dim)
            .map(|i| {
                let range = self.row_ptr[i]..self.row_ptr[i + 1];
                let acc: u64 = self.cols[range.clone()]
                    .iter()
                    .zip(&self.vals[range])
                    .map(|(&j, &a)| a as u64 * v[j] as u64)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }
}

/// Jordan type of a nilpotent operator on the invariant subspace spanned by
/// `start`, from the rank sequence `r_s = dim N^s(U)`.
///
/// Returns `(size, count)` pairs in increasing size. Fails if the images have
/// not vanished after `max_steps` applications.
pub fn nilpotent_jordan_type(
    op: &SparseOp,
    start: Vec<Vec<u32>>,
    max_steps: usize,
) -> Result<Vec<(usize, usize)>> {
    let mut current = Echelon::from_vectors(op.field, op.dim, start);
    let mut ranks = vec![current.rank()];
    while current.rank() > 0 {
        if ranks.len() > max_steps {
            return Err(Error::InvalidMatrixModule(format!(
                "operator is not nilpotent of index <= {max_steps}"
            )));
        }
        let images = current.rows().iter().map(|r| op.apply(r));
        current = Echelon::from_vectors(op.field, op.dim, images);
        ranks.push(current.rank());
    }
    // at_least[s] = number of blocks of size >= s + 1.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = Vec::new();
    for (s, &n) in at_least.iter().enumerate() {
        let next = at_least.get(s + 1).copied().unwrap_or(0);
        if n > next {
            out.push((s + 1, n - next));
        }
    }
    Ok(out)
}
