use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// A cyclic `p`-group `C_{p^ell}` together with its subgroup chain
/// `D_0 < D_1 < ... < D_ell`, where `D_i` is addressed by its index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    p: u64,
    ell: u32,
    order: BigUint,
}

impl GroupSpec {
    /// A defect group `C_{p^ell}` with `ell >= 1`.
    pub fn new(p: u64, ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::TrivialDefectGroup);
        }
        Self::cyclic(p, ell)
    }

    /// Like [`GroupSpec::new`] but also admits the trivial group (`ell = 0`),
    /// which arises as the subgroup `D_0`.
    pub fn cyclic(p: u64, ell: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            ell,
            order: pow(p, ell),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `p^ell`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_usize(&self) -> Option<usize> {
        self.order.to_usize()
    }

    pub fn check_index(&self, i: u32) -> Result<()> {
        if i > self.ell {
            Err(Error::IndexOutOfRange {
                index: i,
                ell: self.ell,
            })
        } else {
            Ok(())
        }
    }

    /// The subgroup `D_i`, viewed as a cyclic group in its own right.
    pub fn subgroup(&self, i: u32) -> Result<GroupSpec> {
        self.check_index(i)?;
        Ok(Self {
            p: self.p,
            ell: i,
            order: pow(self.p, i),
        })
    }

    /// `[D : D_i] = p^(ell - i)`.
    pub fn index_of(&self, i: u32) -> Result<BigUint> {
        self.check_index(i)?;
        Ok(pow(self.p, self.ell - i))
    }

    pub(crate) fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{}", self.p, self.ell)
    }
}

pub(crate) fn pow(p: u64, e: u32) -> BigUint {
    let mut acc = BigUint::one();
    let base = BigUint::from(p);
    for _ in 0..e {
        acc *= &base;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
