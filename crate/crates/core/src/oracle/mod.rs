//! Brute-force matrix realizations over `F_p`.
//!
//! Nothing here uses a closed form from [`crate::cyclic_kd`]: modules are
//! explicit matrices for the action of a generator of `D`, and Jordan types
//! are read off rank sequences. Jordan types over `F_p` agree with those
//! over any extension field, so the prime field is enough.

mod field;
mod module;

pub use field::{
    nilpotent_jordan_type, Echelon, PrimeField, ReducedBasis, SparseOp, MAX_ORACLE_PRIME,
};
pub use module::MatrixModule;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cyclic_kd::ModuleSum;
use crate::{Error, GroupSpec, Result};

pub const DEFAULT_CAPACITY: u128 = 1 << 20;

/// Environment variable that overrides [`DEFAULT_CAPACITY`].
pub const CAPACITY_ENV: &str = "ENDOPERM_ORACLE_CAP";

/// Size bound for oracle matrices, counted in entries (`dim * dim`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub capacity: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            capacity: DEFAULT_CAPACITY,
        }
    }
}

impl OracleConfig {
    pub fn with_capacity(capacity: u128) -> Self {
        Self { capacity }
    }

    /// Reads [`CAPACITY_ENV`], falling back to the default when unset.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(CAPACITY_ENV) {
            Ok(s) => s
                .trim()
                .parse::<u128>()
                .map(Self::with_capacity)
                .map_err(|e| format!("{CAPACITY_ENV}={s:?}: {e}")),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        self.check_entries(dim as u128 * dim as u128)
    }

    pub fn check_entries(&self, required: u128) -> Result<()> {
        if required > self.capacity {
            Err(Error::OracleCapacity {
                required,
                capacity: self.capacity,
            })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn small(n: &BigUint, cfg: &OracleConfig) -> Result<usize> {
    n.to_usize()
        .filter(|&d| (d as u128) * (d as u128) <= cfg.capacity)
        .ok_or_else(|| Error::OracleCapacity {
            required: n.to_u128().map_or(u128::MAX, |d| d.saturating_mul(d)),
            capacity: cfg.capacity,
        })
}

/// Jordan type of `a (x) b` with the diagonal action.
pub fn tensor(a: &ModuleSum, b: &ModuleSum, cfg: &OracleConfig) -> Result<ModuleSum> {
    a.group().ensure_same(b.group())?;
    let ma = MatrixModule::from_sum(a, cfg)?;
    let mb = MatrixModule::from_sum(b, cfg)?;
    ma.tensor(&mb, cfg)?.jordan_type(cfg)
}

/// Restriction to `D_i` by taking the `p^(ell-i)`-th power of the generator.
pub fn restrict(m: &ModuleSum, i: u32, cfg: &OracleConfig) -> Result<ModuleSum> {
    MatrixModule::from_sum(m, cfg)?
        .restrict(i)?
        .jordan_type(cfg)
}

/// Induction from the subgroup `D_i` (the group of `m`) to `to`.
pub fn induce(m: &ModuleSum, to: &GroupSpec, cfg: &OracleConfig) -> Result<ModuleSum> {
    MatrixModule::from_sum(m, cfg)?
        .induce(to, cfg)?
        .jordan_type(cfg)
}

/// The counit `Ind_{D_i}^D W -> V`, where `W` is the `D_i`-submodule of `V`
/// generated by `generators`, which must generate `V` as a `D`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeCover {
    pub kernel: ModuleSum,
    /// Whether the counit splits on restriction to `D_i`, i.e. whether it is
    /// a relative `D_i`-projective cover.
    pub split: bool,
}

pub fn relative_cover(
    v: &MatrixModule,
    i: u32,
    generators: Vec<Vec<u32>>,
    cfg: &OracleConfig,
) -> Result<RelativeCover> {
    let field = v.field();
    let n = v.dim();
    let h = v.restrict(i)?;

    // D_i-stable span of the generators.
    let mut span = Echelon::new(field, n);
    let mut queue = generators;
    while let Some(x) = queue.pop() {
        let hx = h.apply(&x);
        if span.insert(x) {
            queue.push(hx);
        }
    }
    let basis = span.into_reduced();
    let t = basis.rank();
    let mut h_on_w = vec![0u32; t * t];
    for (k, w) in basis.rows().iter().enumerate() {
        for (l, c) in basis.coordinates(&h.apply(w)).into_iter().enumerate() {
            h_on_w[l * t + k] = c;
        }
    }
    let w_mod = MatrixModule::from_parts_unchecked(h.group().clone(), field, t, h_on_w);
    let ind = w_mod.induce(v.group(), cfg)?;
    let q = ind.dim() / t.max(1);

    // Counit: column (j, k) is g^j w_k.
    let mut columns = Vec::with_capacity(ind.dim());
    let mut layer: Vec<Vec<u32>> = basis.rows().to_vec();
    for _ in 0..q {
        columns.extend(layer.iter().cloned());
        layer = layer.iter().map(|x| v.apply(x)).collect();
    }
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let counit = Echelon::from_vectors(field, ind.dim(), rows);
    if counit.rank() != n {
        return Err(Error::InvalidMatrixModule(
            "generators do not generate the module".into(),
        ));
    }
    let kernel_basis = counit.into_reduced().nullspace();
    let kernel = ind.jordan_type_on(kernel_basis.clone(), cfg)?;

    // Over the uniserial algebra kD_i a short exact sequence of finite
    // length modules splits iff its middle term is the sum of the ends.
    let res_ind = ind.restrict(i)?;
    let res_kernel = res_ind.jordan_type_on(kernel_basis, cfg)?;
    let res_v = h.jordan_type(cfg)?;
    let split = res_ind.jordan_type(cfg)? == res_kernel.direct_sum(&res_v)?;
    Ok(RelativeCover { kernel, split })
}

/// Relative Heller translate of `J_n` with respect to `D_i`, from the first
/// cover generated by `e_0` and at most one more basis vector that is
/// certified split, falling back to the full cover `Ind Res J_n -> J_n`.
/// Relatively `D_i`-projective summands of the kernel are removed.
pub fn relative_heller_part(
    group: &GroupSpec,
    n: usize,
    i: u32,
    cfg: &OracleConfig,
) -> Result<ModuleSum> {
    let v = MatrixModule::jordan_block(group, n, cfg)?;
    let q = group.index_of(i)?.to_usize().unwrap_or(usize::MAX);
    let unit = |k: usize| (0..n).map(|j| (j == k) as u32).collect::<Vec<u32>>();
    // Res J_n splits into the spans of e_s, e_{s+q}, ...; those with
    // s >= n mod q are one shorter, and e_{n mod q} starts the first of them.
    let short = n % q.max(1);
    let seconds = std::iter::once(short)
        .filter(|&s| s > 0)
        .chain((1..n.min(q)).filter(|&s| s != short));
    let candidates = std::iter::once(vec![unit(0)]).chain(seconds.map(|s| vec![unit(0), unit(s)]));
    for generators in candidates {
        let cover = relative_cover(&v, i, generators, cfg)?;
        if cover.split {
            return strip_relatively_projective(cover.kernel, i);
        }
    }
    relative_heller_full(group, n, i, cfg)
}

/// As [`relative_heller_part`], but always with the full cover
/// `Ind Res J_n -> J_n`.
pub fn relative_heller_full(
    group: &GroupSpec,
    n: usize,
    i: u32,
    cfg: &OracleConfig,
) -> Result<ModuleSum> {
    let v = MatrixModule::jordan_block(group, n, cfg)?;
    let basis = (0..n)
        .map(|k| (0..n).map(|j| (j == k) as u32).collect())
        .collect();
    let cover = relative_cover(&v, i, basis, cfg)?;
    if !cover.split {
        return Err(Error::InvalidMatrixModule(
            "full relative cover failed to split".into(),
        ));
    }
    strip_relatively_projective(cover.kernel, i)
}

fn strip_relatively_projective(m: ModuleSum, i: u32) -> Result<ModuleSum> {
    let q = m.group().index_of(i)?;
    let kept: Vec<(BigUint, BigUint)> = m
        .parts()
        .filter(|(size, _)| !(*size % &q == BigUint::from(0u32)))
        .map(|(s, c)| (s.clone(), c.clone()))
        .collect();
    ModuleSum::from_counts(m.group().clone(), kept)
}

/// Higman's criterion: `J_n` is relatively `D_i`-projective iff it is a
/// direct summand of `Ind_{D_i}^D Res_{D_i} J_n`.
pub fn is_relatively_projective(
    group: &GroupSpec,
    n: usize,
    i: u32,
    cfg: &OracleConfig,
) -> Result<bool> {
    let v = MatrixModule::jordan_block(group, n, cfg)?;
    let back = v.restrict(i)?.induce(group, cfg)?.jordan_type(cfg)?;
    Ok(back.multiplicity(&BigUint::from(n)) > BigUint::from(0u32))
}

/// Smallest `i` such that `J_n` is relatively `D_i`-projective.
pub fn vertex(group: &GroupSpec, n: usize, cfg: &OracleConfig) -> Result<u32> {
    for i in 0..=group.ell() {
        if is_relatively_projective(group, n, i, cfg)? {
            return Ok(i);
        }
    }
    unreachable!("every module is relatively D-projective")
}
