//! The Dade group of a cyclic `p`-group.
//!
//! `D_k(D)` is elementary abelian of rank `ell`, generated by the relative
//! syzygies `Omega_{D/D_j}(k)`, `0 <= j < ell`. An element is a bit vector
//! `alpha = (alpha_0, ..., alpha_{ell-1})` naming
//! `W_D(alpha) = Omega_{D/D_0}^{alpha_0} o ... o Omega_{D/D_{ell-1}}^{alpha_{ell-1}}(k)`.
//!
//! For `p = 2` the generator `Omega_{D/D_{ell-1}}(k)` is trivial, so the
//! bit-vector group surjects onto the Dade group without being isomorphic to
//! it; [`w_module`] is still well defined.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::group::pow;
use crate::{Error, GroupSpec, Result, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DadeElement {
    group: GroupSpec,
    alpha: Vec<bool>,
}

impl DadeElement {
    pub fn new(group: GroupSpec, alpha: Vec<bool>) -> Result<Self> {
        if alpha.len() != group.ell() as usize {
            return Err(Error::LengthMismatch {
                expected: group.ell() as usize,
                got: alpha.len(),
            });
        }
        Ok(Self { group, alpha })
    }

    pub fn zero(group: GroupSpec) -> Self {
        let alpha = vec![false; group.ell() as usize];
        Self { group, alpha }
    }

    /// The generator `Omega_{D/D_j}(k)`.
    pub fn generator(group: GroupSpec, j: usize) -> Result<Self> {
        let mut e = Self::zero(group);
        let ell = e.alpha.len();
        let slot = e.alpha.get_mut(j).ok_or(Error::IndexOutOfRange {
            index: j as u32,
            ell: ell as u32,
        })?;
        *slot = true;
        Ok(e)
    }

    /// Parses `"0110"` with `alpha_0` first.
    pub fn parse(group: GroupSpec, bits: &str) -> Result<Self> {
        let alpha = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedAlpha(bits.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, alpha).map_err(|_| Error::MalformedAlpha(bits.to_string()))
    }

    /// All `2^ell` elements in lexicographic order of the bit string.
    pub fn all(group: &GroupSpec) -> impl Iterator<Item = DadeElement> + '_ {
        let ell = group.ell() as usize;
        assert!(ell < 64, "enumeration limited to ell < 64");
        (0u64..1 << ell).map(move |mask| DadeElement {
            group: group.clone(),
            alpha: (0..ell).map(|j| mask >> (ell - 1 - j) & 1 == 1).collect(),
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn alpha(&self) -> &[bool] {
        &self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&a| !a)
    }

    pub fn bits(&self) -> String {
        self.alpha
            .iter()
            .map(|&a| if a { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for DadeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits())
    }
}

/// `W_D(alpha) = J_n`, built from the inside out: the innermost quotient
/// `D/D_{ell-1}` first, then one inflation per level, taking the Heller
/// translate `J_{p^level - n}` whenever the bit for that level is set.
pub fn w_module(e: &DadeElement) -> BigUint {
    let p = e.group.p();
    let ell = e.alpha.len();
    let mut n = BigUint::one();
    for (j, &bit) in e.alpha.iter().enumerate().rev() {
        if bit {
            n = pow(p, (ell - j) as u32) - n;
        }
    }
    n
}

/// Inverse of [`w_module`] on its image. For `p = 2` the preimage is not
/// unique; the one with `alpha_{ell-1} = 0` is returned.
pub fn dade_element_of(group: &GroupSpec, n: &BigUint) -> Result<DadeElement> {
    let ell = group.ell() as usize;
    let mut alpha = vec![false; ell];
    let mut x = n.clone();
    for (j, slot) in alpha.iter_mut().enumerate() {
        let level = (ell - j) as u32;
        let inner = pow(group.p(), level - 1);
        let full = pow(group.p(), level);
        if x.is_zero() || x >= full {
            return Err(Error::NotInDadeImage(n.clone()));
        }
        if x > inner {
            if &full - &x > inner {
                return Err(Error::NotInDadeImage(n.clone()));
            }
            *slot = true;
            x = full - x;
        }
    }
    if x.is_one() {
        Ok(DadeElement {
            group: group.clone(),
            alpha,
        })
    } else {
        Err(Error::NotInDadeImage(n.clone()))
    }
}

/// Group law: componentwise addition mod 2.
pub fn dade_add(a: &DadeElement, b: &DadeElement) -> Result<DadeElement> {
    a.group.ensure_same(&b.group)?;
    Ok(DadeElement {
        group: a.group.clone(),
        alpha: a.alpha.iter().zip(&b.alpha).map(|(x, y)| x ^ y).collect(),
    })
}

/// `(omega_W(u_1), ..., omega_W(u_ell))` for `u_i` generating `D_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    group: GroupSpec,
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(group: GroupSpec, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != group.ell() as usize {
            return Err(Error::LengthMismatch {
                expected: group.ell() as usize,
                got: signs.len(),
            });
        }
        Ok(Self { group, signs })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(Self {
            group: self.group.clone(),
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(&a, &b)| a * b)
                .collect(),
        })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.signs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// `s_i = (-1)^(alpha_0 + ... + alpha_{i-1})`.
pub fn psi(e: &DadeElement) -> SignVector {
    let mut odd = false;
    let signs = e
        .alpha
        .iter()
        .map(|&a| {
            odd ^= a;
            Sign::from_parity(odd)
        })
        .collect();
    SignVector {
        group: e.group.clone(),
        signs,
    }
}

/// `alpha_0 = [s_1 = -1]`, `alpha_{i-1} = [s_i != s_{i-1}]`.
pub fn psi_inverse(s: &SignVector) -> DadeElement {
    let mut prev = Sign::Plus;
    let alpha = s
        .signs
        .iter()
        .map(|&x| {
            let bit = x != prev;
            prev = x;
            bit
        })
        .collect();
    DadeElement {
        group: s.group.clone(),
        alpha,
    }
}

/// The character of the determinant-one lift of `W_D(alpha)`, stored per
/// layer `D_i \ D_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCharacter {
    group: GroupSpec,
    dim: BigUint,
    layer_values: Vec<BigInt>,
}

impl LiftCharacter {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `rho_W(1)`.
    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    /// `(rho_W(u_1), ..., rho_W(u_ell))`.
    pub fn layer_values(&self) -> &[BigInt] {
        &self.layer_values
    }

    pub fn sign_pattern(&self) -> Vec<Sign> {
        self.layer_values
            .iter()
            .map(|v| {
                if v.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect()
    }
}

/// Character values of the lift, by the same inside-out recursion as
/// [`w_module`]. Inflating from `D/D_1` puts the old degree on the new first
/// layer and shifts the other layers up by one; a Heller step complements
/// the degree and negates every non-identity value, because the regular
/// character vanishes off the identity.
pub fn lift_character(e: &DadeElement) -> Result<LiftCharacter> {
    let p = e.group.p();
    if p == 2 {
        return Err(Error::EvenPrimeCharacter);
    }
    let ell = e.alpha.len();
    let mut dim = BigUint::one();
    // Values are built innermost layer first and reversed at the end.
    let mut rev_layers: Vec<BigInt> = Vec::with_capacity(ell);
    for (j, &bit) in e.alpha.iter().enumerate().rev() {
        rev_layers.push(BigInt::from(dim.clone()));
        if bit {
            dim = pow(p, (ell - j) as u32) - dim;
            rev_layers.iter_mut().for_each(|v| *v = -&*v);
        }
    }
    rev_layers.reverse();
    Ok(LiftCharacter {
        group: e.group.clone(),
        dim,
        layer_values: rev_layers,
    })
}
