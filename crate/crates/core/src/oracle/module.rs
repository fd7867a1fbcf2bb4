use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::field::{nilpotent_jordan_type, PrimeField, SparseOp};
use super::{small, OracleConfig};
use crate::cyclic_kd::ModuleSum;
use crate::{Error, GroupSpec, Result};

/// A `kD`-module given by the matrix of a fixed generator `g` of `D`,
/// acting on column vectors. `action` is row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModule {
    group: GroupSpec,
    field: PrimeField,
    dim: usize,
    action: Vec<u32>,
}

impl MatrixModule {
    /// Checks that `(action - 1)^(p^ell) = 0`.
    pub fn new(group: GroupSpec, dim: usize, action: Vec<u32>, cfg: &OracleConfig) -> Result<Self> {
        if action.len() != dim * dim {
            return Err(Error::InvalidMatrixModule(format!(
                "expected {} entries, got {}",
                dim * dim,
                action.len()
            )));
        }
        let field = PrimeField::new(group.p())?;
        let action = action.into_iter().map(|x| field.reduce(x)).collect();
        let m = Self::from_parts_unchecked(group, field, dim, action);
        m.jordan_type(cfg)?;
        Ok(m)
    }

    pub(crate) fn from_parts_unchecked(
        group: GroupSpec,
        field: PrimeField,
        dim: usize,
        action: Vec<u32>,
    ) -> Self {
        Self {
            group,
            field,
            dim,
            action,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.action[row * self.dim + col]
    }

    pub fn zero(group: &GroupSpec) -> Result<Self> {
        Ok(Self::from_parts_unchecked(
            group.clone(),
            PrimeField::new(group.p())?,
            0,
            Vec::new(),
        ))
    }

    /// `J_n`: identity plus the subdiagonal shift, so `e_0` generates.
    pub fn jordan_block(group: &GroupSpec, n: usize, cfg: &OracleConfig) -> Result<Self> {
        cfg.check_dim(n)?;
        if n == 0 || BigUint::from(n) > *group.order() {
            return Err(Error::PartOutOfRange {
                size: BigUint::from(n),
                bound: group.order().clone(),
            });
        }
        let mut a = vec![0u32; n * n];
        for k in 0..n {
            a[k * n + k] = 1;
            if k + 1 < n {
                a[(k + 1) * n + k] = 1;
            }
        }
        Ok(Self::from_parts_unchecked(
            group.clone(),
            PrimeField::new(group.p())?,
            n,
            a,
        ))
    }

    /// The regular module `kD` as the cyclic permutation matrix of order `p^ell`.
    pub fn regular(group: &GroupSpec, cfg: &OracleConfig) -> Result<Self> {
        let n = small(group.order(), cfg)?;
        let mut a = vec![0u32; n * n];
        for k in 0..n {
            a[((k + 1) % n) * n + k] = 1;
        }
        Ok(Self::from_parts_unchecked(
            group.clone(),
            PrimeField::new(group.p())?,
            n,
            a,
        ))
    }

    /// Block-diagonal realization of a Jordan-size multiset.
    pub fn from_sum(m: &ModuleSum, cfg: &OracleConfig) -> Result<Self> {
        let _ = small(&m.dimension(), cfg)?;
        let mut acc = Self::zero(m.group())?;
        for (size, count) in m.parts() {
            let block = Self::jordan_block(m.group(), size.to_usize().unwrap_or(usize::MAX), cfg)?;
            for _ in 0..count.to_usize().unwrap_or(usize::MAX) {
                acc = acc.direct_sum(&block)?;
            }
        }
        Ok(acc)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let n = self.dim + other.dim;
        let mut a = vec![0u32; n * n];
        for r in 0..self.dim {
            a[r * n..r * n + self.dim]
                .copy_from_slice(&self.action[r * self.dim..(r + 1) * self.dim]);
        }
        for r in 0..other.dim {
            let row = (self.dim + r) * n + self.dim;
            a[row..row + other.dim]
                .copy_from_slice(&other.action[r * other.dim..(r + 1) * other.dim]);
        }
        Ok(Self::from_parts_unchecked(
            self.group.clone(),
            self.field,
            n,
            a,
        ))
    }

    /// Kronecker product: `g` acts diagonally on the tensor product.
    pub fn tensor(&self, other: &Self, cfg: &OracleConfig) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let (da, db) = (self.dim, other.dim);
        let n = da * db;
        cfg.check_dim(n)?;
        let f = self.field;
        let mut a = vec![0u32; n * n];
        for i1 in 0..da {
            for j1 in 0..da {
                let x = self.entry(i1, j1);
                if x == 0 {
                    continue;
                }
                for i2 in 0..db {
                    let row = (i1 * db + i2) * n + j1 * db;
                    for j2 in 0..db {
                        let y = other.entry(i2, j2);
                        if y != 0 {
                            a[row + j2] = f.mul(x, y);
                        }
                    }
                }
            }
        }
        Ok(Self::from_parts_unchecked(self.group.clone(), f, n, a))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.field.p() as u64;
        (0..self.dim)
            .map(|i| {
                let row = &self.action[i * self.dim..(i + 1) * self.dim];
                let acc: u64 = row.iter().zip(v).map(|(&a, &x)| a as u64 * x as u64).sum();
                (acc % p) as u32
            })
            .collect()
    }

    fn multiply(&self, other: &Self) -> Self {
        let n = self.dim;
        let p = self.field.p() as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            let mut acc = vec![0u64; n];
            for k in 0..n {
                let x = self.action[i * n + k] as u64;
                if x == 0 {
                    continue;
                }
                // Each product is below 2^32, so n of them fit in u64.
                for (slot, &y) in acc.iter_mut().zip(&other.action[k * n..(k + 1) * n]) {
                    *slot += x * y as u64;
                }
            }
            for (o, a) in out[i * n..(i + 1) * n].iter_mut().zip(acc) {
                *o = (a % p) as u32;
            }
        }
        Self::from_parts_unchecked(self.group.clone(), self.field, n, out)
    }

    fn power(&self, mut e: BigUint) -> Self {
        let n = self.dim;
        let mut acc = {
            let mut id = vec![0u32; n * n];
            for k in 0..n {
                id[k * n + k] = 1;
            }
            Self::from_parts_unchecked(self.group.clone(), self.field, n, id)
        };
        let mut base = self.clone();
        let zero = BigUint::from(0u32);
        while e > zero {
            if e.bit(0) {
                acc = acc.multiply(&base);
            }
            base = base.multiply(&base);
            e >>= 1;
        }
        acc
    }

    /// Restriction to `D_i`, generated by `g^(p^(ell-i))`.
    pub fn restrict(&self, i: u32) -> Result<Self> {
        let q = self.group.index_of(i)?;
        let sub = self.group.subgroup(i)?;
        let mut m = self.power(q);
        m.group = sub;
        Ok(m)
    }

    /// Induction to `to`, where this module lives over the subgroup
    /// `D_i <= to` with `i = self.group().ell()`. The basis of the result is
    /// `g^j (x) w_k`, indexed `j * dim + k`.
    pub fn induce(&self, to: &GroupSpec, cfg: &OracleConfig) -> Result<Self> {
        let i = self.group.ell();
        if to.p() != self.group.p() || i > to.ell() {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: format!("subgroup of {to}"),
            });
        }
        let q = small(&to.index_of(i)?, cfg)?;
        let t = self.dim;
        let n = q * t;
        cfg.check_dim(n)?;
        let mut a = vec![0u32; n * n];
        for j in 0..q {
            for k in 0..t {
                let col = j * t + k;
                if j + 1 < q {
                    a[((j + 1) * t + k) * n + col] = 1;
                } else {
                    // g * (g^(q-1) (x) w_k) = 1 (x) h w_k
                    for l in 0..t {
                        a[l * n + col] = self.entry(l, k);
                    }
                }
            }
        }
        Ok(Self::from_parts_unchecked(to.clone(), self.field, n, a))
    }

    fn nilpotent_part(&self) -> SparseOp {
        let n = self.dim;
        let f = self.field;
        let mut a = self.action.clone();
        for k in 0..n {
            a[k * n + k] = f.reduce(a[k * n + k] + f.p() - 1);
        }
        SparseOp::from_dense(f, n, &a)
    }

    pub fn jordan_type(&self, cfg: &OracleConfig) -> Result<ModuleSum> {
        let n = self.dim;
        let basis = (0..n)
            .map(|k| (0..n).map(|j| (j == k) as u32).collect())
            .collect();
        self.jordan_type_on(basis, cfg)
    }

    /// Jordan type of the generator on the submodule spanned by `vectors`.
    /// The span must be `g`-invariant.
    pub fn jordan_type_on(&self, vectors: Vec<Vec<u32>>, cfg: &OracleConfig) -> Result<ModuleSum> {
        cfg.check_dim(self.dim)?;
        let max_steps = self.group.order().to_usize().unwrap_or(usize::MAX);
        let counts = nilpotent_jordan_type(&self.nilpotent_part(), vectors, max_steps)?;
        ModuleSum::from_counts(
            self.group.clone(),
            counts
                .into_iter()
                .map(|(s, c)| (BigUint::from(s), BigUint::from(c))),
        )
    }
}
