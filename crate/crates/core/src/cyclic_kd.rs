//! Modules over `kD`, `D = C_{p^ell}`, up to isomorphism.
//!
//! The indecomposable `kD`-modules are the uniserial modules `J_n`,
//! `1 <= n <= p^ell`, so a module is a multiset of Jordan sizes. Sizes and
//! multiplicities are arbitrary precision; only [`tensor_decompose`] and the
//! endo-permutation checks go through the bounded matrix oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::oracle::{self, OracleConfig};
use crate::{Error, GroupSpec, Result};

/// A finite direct sum of modules `J_n`, stored as `size -> multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleSum {
    group: GroupSpec,
    parts: BTreeMap<BigUint, BigUint>,
}

impl ModuleSum {
    pub fn zero(group: GroupSpec) -> Self {
        Self {
            group,
            parts: BTreeMap::new(),
        }
    }

    pub fn indecomposable(group: GroupSpec, n: impl Into<BigUint>) -> Result<Self> {
        Self::from_parts(group, [n.into()])
    }

    pub fn from_parts<I: IntoIterator<Item = BigUint>>(group: GroupSpec, sizes: I) -> Result<Self> {
        Self::from_counts(group, sizes.into_iter().map(|s| (s, BigUint::one())))
    }

    /// Builds from `(size, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_counts<I: IntoIterator<Item = (BigUint, BigUint)>>(
        group: GroupSpec,
        counts: I,
    ) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for (size, count) in counts {
            if size.is_zero() || &size > group.order() {
                return Err(Error::PartOutOfRange {
                    size,
                    bound: group.order().clone(),
                });
            }
            if !count.is_zero() {
                *parts.entry(size).or_insert_with(BigUint::zero) += count;
            }
        }
        Ok(Self { group, parts })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `(size, multiplicity)` in increasing size.
    pub fn parts(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.parts.iter()
    }

    pub fn multiplicity(&self, size: &BigUint) -> BigUint {
        self.parts.get(size).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dimension(&self) -> BigUint {
        self.parts.iter().map(|(s, c)| s * c).sum()
    }

    /// Number of indecomposable summands.
    pub fn summands(&self) -> BigUint {
        self.parts.values().sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let mut out = self.clone();
        for (s, c) in &other.parts {
            *out.parts.entry(s.clone()).or_insert_with(BigUint::zero) += c;
        }
        Ok(out)
    }

    fn map_parts<F>(&self, group: GroupSpec, mut f: F) -> Result<Self>
    where
        F: FnMut(&BigUint, &BigUint) -> Vec<(BigUint, BigUint)>,
    {
        let mut out = Vec::new();
        for (s, c) in &self.parts {
            out.extend(f(s, c));
        }
        Self::from_counts(group, out)
    }
}

impl fmt::Display for ModuleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (s, c) in self.parts.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "J_{s}")?;
            } else {
                write!(f, "{c}*J_{s}")?;
            }
        }
        Ok(())
    }
}

/// Jordan type of a matrix module (the oracle).
pub fn jordan_type(m: &oracle::MatrixModule, cfg: &OracleConfig) -> Result<ModuleSum> {
    m.jordan_type(cfg)
}

/// `a (x) b` with the diagonal action. There is no closed form here: the
/// decomposition always comes from the matrix oracle.
pub fn tensor_decompose(a: &ModuleSum, b: &ModuleSum, cfg: &OracleConfig) -> Result<ModuleSum> {
    a.group.ensure_same(&b.group)?;
    // Bilinear, so decompose part by part to keep matrices small.
    let mut acc = ModuleSum::zero(a.group.clone());
    for (sa, ca) in &a.parts {
        for (sb, cb) in &b.parts {
            let ja = ModuleSum::indecomposable(a.group.clone(), sa.clone())?;
            let jb = ModuleSum::indecomposable(a.group.clone(), sb.clone())?;
            let t = oracle::tensor(&ja, &jb, cfg)?;
            let times = ca * cb;
            let scaled = t.map_parts(a.group.clone(), |s, c| vec![(s.clone(), c * &times)])?;
            acc = acc.direct_sum(&scaled)?;
        }
    }
    Ok(acc)
}

/// Restriction to `D_i`.
///
/// On `J_n` the generator of `D_i` acts as `g^q`, `q = p^(ell-i)`, whose
/// nilpotent part is the `q`-th power of the shift: writing `n = a q + r`,
/// that gives `r` blocks of size `a + 1` and `q - r` blocks of size `a`.
pub fn restrict(m: &ModuleSum, i: u32) -> Result<ModuleSum> {
    let q = m.group.index_of(i)?;
    let sub = m.group.subgroup(i)?;
    m.map_parts(sub, |n, c| {
        let (a, r) = n.div_rem(&q);
        let mut out = Vec::with_capacity(2);
        if !r.is_zero() {
            out.push((&a + 1u32, &r * c));
        }
        if !a.is_zero() {
            out.push((a, (&q - &r) * c));
        }
        out
    })
}

/// Induction from `D_i` (the group of `m`) to `to`: `J_m -> J_{m p^(ell-i)}`.
pub fn induce(m: &ModuleSum, to: &GroupSpec) -> Result<ModuleSum> {
    let i = m.group.ell();
    if m.group.p() != to.p() || i > to.ell() {
        return Err(Error::GroupMismatch {
            left: m.group.to_string(),
            right: format!("subgroup of {to}"),
        });
    }
    let q = to.index_of(i)?;
    m.map_parts(to.clone(), |s, c| vec![(s * &q, c.clone())])
}

/// Heller translate: drops projective parts and sends `J_n` to `J_{p^ell - n}`.
pub fn heller(m: &ModuleSum) -> ModuleSum {
    relative_heller(m, 0).expect("index 0 is always in range")
}

/// Relative Heller translate with respect to `D_i`, summand by summand.
///
/// With `q = p^(ell-i)` and `n = a*q + r`, a part with `r = 0` is relatively
/// `D_i`-projective and disappears. Otherwise the relative projective cover
/// is `J_{(a+1)q} + J_{aq}` (just `J_q` when `a = 0`) and the kernel is
/// `J_{(a+1)q - r}`.
pub fn relative_heller(m: &ModuleSum, i: u32) -> Result<ModuleSum> {
    let q = m.group.index_of(i)?;
    m.map_parts(m.group.clone(), |n, c| {
        let (a, r) = n.div_rem(&q);
        if r.is_zero() {
            Vec::new()
        } else {
            vec![((a + 1u32) * &q - r, c.clone())]
        }
    })
}

/// Vertex of `J_n` as a subgroup index: `ell - v_p(n)`.
pub fn vertex(group: &GroupSpec, n: &BigUint) -> Result<u32> {
    if n.is_zero() || n > group.order() {
        return Err(Error::PartOutOfRange {
            size: n.clone(),
            bound: group.order().clone(),
        });
    }
    let p = BigUint::from(group.p());
    let mut v = 0u32;
    let mut x = n.clone();
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Ok(group.ell() - v)
}

/// Is `n` a power of `p`?
fn is_p_power(p: u64, n: &BigUint) -> bool {
    let p = BigUint::from(p);
    let mut x = n.clone();
    while !x.is_one() {
        if x.is_zero() || !(&x % &p).is_zero() {
            return false;
        }
        x /= &p;
    }
    true
}

/// Transitive permutation `kD`-modules are `k[D/D_j] = J_{p^(ell-j)}`.
pub fn is_permutation(m: &ModuleSum) -> bool {
    m.parts.keys().all(|n| is_p_power(m.group.p(), n))
}

/// `End_k(M) = M* (x) M = M (x) M`, since each `J_n` is self-dual.
pub fn is_endo_permutation(m: &ModuleSum, cfg: &OracleConfig) -> Result<bool> {
    Ok(is_permutation(&tensor_decompose(m, m, cfg)?))
}

/// The cap of a capped endo-permutation module, checked by the oracle.
pub fn cap(m: &ModuleSum, cfg: &OracleConfig) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::NotCappedEndoPermutation("zero module".into()));
    }
    if !is_endo_permutation(m, cfg)? {
        return Err(Error::NotCappedEndoPermutation(format!(
            "{m} is not endo-permutation"
        )));
    }
    cap_of_endo_permutation(m)
}

/// The unique isomorphism type of summand with full vertex (`p` does not
/// divide its dimension), for a module already known to be endo-permutation,
/// e.g. a restriction of one.
pub fn cap_of_endo_permutation(m: &ModuleSum) -> Result<BigUint> {
    let p = BigUint::from(m.group.p());
    let mut full = m.parts.keys().filter(|n| !(*n % &p).is_zero());
    match (full.next(), full.next()) {
        (Some(n), None) => Ok(n.clone()),
        (None, _) => Err(Error::NotCappedEndoPermutation(format!(
            "{m} has no summand with vertex D"
        ))),
        (Some(_), Some(_)) => Err(Error::NotCappedEndoPermutation(format!(
            "{m} has non-isomorphic summands with vertex D"
        ))),
    }
}
