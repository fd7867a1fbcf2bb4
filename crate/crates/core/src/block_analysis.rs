//! Reading `W(B)` off the values of a non-exceptional character.
//!
//! Only the signs of `chi(u_1), ..., chi(u_ell)` matter. If `chi(u_1) < 0`
//! every sign is flipped first; the normalized vector is `omega_W`, and
//! [`psi_inverse`] turns it into the Dade element of `W(B)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclic_kd::{cap_of_endo_permutation, restrict, ModuleSum};
use crate::dade::{dade_add, dade_element_of, psi, psi_inverse, w_module, DadeElement, SignVector};
use crate::{Error, GroupSpec, Result, Sign};

/// A block with cyclic defect group `D`, as far as this crate needs it.
///
/// `chi[i - 1]` holds the values of one non-exceptional character at one or
/// more elements of `D_i \ D_{i-1}`. An empty `chi` means no character data.
/// The boolean flags are asserted by the caller; nothing here computes with
/// the ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub label: Option<String>,
    pub group: GroupSpec,
    pub chi: Vec<Vec<BigInt>>,
    pub is_principal: Option<bool>,
    pub centralizer_equal: Option<bool>,
    pub normalizer_equal: Option<bool>,
    pub inertial_index: Option<u64>,
}

impl BlockDescriptor {
    /// One sampled value per layer, no flags.
    pub fn from_values(group: GroupSpec, values: impl IntoIterator<Item = BigInt>) -> Self {
        Self {
            label: None,
            group,
            chi: values.into_iter().map(|v| vec![v]).collect(),
            is_principal: None,
            centralizer_equal: None,
            normalizer_equal: None,
            inertial_index: None,
        }
    }

    pub fn bare(group: GroupSpec) -> Self {
        Self::from_values(group, [])
    }

    /// Structural problems: wrong number of layers, empty layers, or an
    /// inertial index that does not divide `p - 1`.
    pub fn schema_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let ell = self.group.ell() as usize;
        if !self.chi.is_empty() && self.chi.len() != ell {
            out.push(format!(
                "chi has {} layers, expected ell = {ell}",
                self.chi.len()
            ));
        }
        for (k, layer) in self.chi.iter().enumerate() {
            if layer.is_empty() {
                out.push(format!("chi layer {} is empty", k + 1));
            }
        }
        if let Some(e) = self.inertial_index {
            if e == 0 || !(self.group.p() - 1).is_multiple_of(e) {
                out.push(format!(
                    "inertial index {e} does not divide p - 1 = {}",
                    self.group.p() - 1
                ));
            }
        }
        out
    }
}

/// Which criterion determined `W(B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Signs of a non-exceptional character on the layers of `D`.
    CharacterSigns,
    /// `B` is the principal block.
    PrincipalBlock,
    /// `C_G(D) = C_G(D_1)` or `N_G(D) = N_G(D_1)`.
    LocalSubgroupEquality,
    /// `p = 2` and `|D| = 4`.
    DyadicOrderFour,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::CharacterSigns => "character-signs",
            Provenance::PrincipalBlock => "principal-block",
            Provenance::LocalSubgroupEquality => "local-subgroup-equality",
            Provenance::DyadicOrderFour => "dyadic-order-four",
        })
    }
}

/// `W(B) = W_D(dade) = J_jordan`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WResult {
    pub dade: DadeElement,
    pub jordan: BigUint,
    pub signs: SignVector,
    pub trivial: bool,
    pub provenance: Provenance,
}

impl WResult {
    fn from_dade(dade: DadeElement, provenance: Provenance) -> Self {
        Self {
            jordan: w_module(&dade),
            signs: psi(&dade),
            trivial: dade.is_zero(),
            dade,
            provenance,
        }
    }

    pub fn trivial(group: GroupSpec, provenance: Provenance) -> Self {
        Self::from_dade(DadeElement::zero(group), provenance)
    }

    pub fn group(&self) -> &GroupSpec {
        self.dade.group()
    }
}

/// Checked per-layer signs of the character values.
fn layer_signs(b: &BlockDescriptor) -> Result<Vec<Sign>> {
    if b.group.p() == 2 {
        return Err(Error::EvenPrimeInference(2));
    }
    let ell = b.group.ell() as usize;
    if b.chi.len() != ell {
        return Err(Error::LengthMismatch {
            expected: ell,
            got: b.chi.len(),
        });
    }
    b.chi
        .iter()
        .enumerate()
        .map(|(k, layer)| {
            let layer_no = k + 1;
            if layer.is_empty() || layer.iter().any(Zero::is_zero) {
                return Err(Error::ZeroCharacterValue { layer: layer_no });
            }
            let neg = layer[0].is_negative();
            if layer.iter().any(|v| v.is_negative() != neg) {
                return Err(Error::MixedLayerSigns { layer: layer_no });
            }
            Ok(if neg { Sign::Minus } else { Sign::Plus })
        })
        .collect()
}

/// `W(B)` from the character values.
pub fn infer_w(b: &BlockDescriptor) -> Result<WResult> {
    let mut signs = layer_signs(b)?;
    if signs.first() == Some(&Sign::Minus) {
        signs.iter_mut().for_each(|s| *s = -*s);
    }
    let omega = SignVector::new(b.group.clone(), signs)?;
    let dade = psi_inverse(&omega);
    debug_assert!(!dade.alpha()[0]);
    Ok(WResult::from_dade(dade, Provenance::CharacterSigns))
}

/// `W(B)` is trivial iff all values share one strict sign.
pub fn is_trivial_by_signs(b: &BlockDescriptor) -> Result<bool> {
    let signs = layer_signs(b)?;
    Ok(signs.windows(2).all(|w| w[0] == w[1]))
}

/// Triviality criteria that need no character values.
pub fn lemma_criteria(b: &BlockDescriptor) -> Option<WResult> {
    let provenance = if b.is_principal == Some(true) {
        Provenance::PrincipalBlock
    } else if b.centralizer_equal == Some(true) || b.normalizer_equal == Some(true) {
        Provenance::LocalSubgroupEquality
    } else if b.group.p() == 2 && b.group.ell() == 2 {
        Provenance::DyadicOrderFour
    } else {
        return None;
    };
    Some(WResult::trivial(b.group.clone(), provenance))
}

/// Layers whose sampled values differ in absolute value.
pub fn magnitude_warnings(b: &BlockDescriptor) -> Vec<String> {
    b.chi
        .iter()
        .enumerate()
        .filter(|(_, layer)| layer.iter().any(|v| v.abs() != layer[0].abs()))
        .map(|(k, _)| {
            format!(
                "magnitudes vary inside layer {}; only signs are used",
                k + 1
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub result: WResult,
    pub warnings: Vec<String>,
}

/// Combines [`infer_w`] and [`lemma_criteria`]; a disagreement between the
/// two is an error.
pub fn analyze(b: &BlockDescriptor) -> Result<Analysis> {
    let problems = b.schema_problems();
    if let Some(first) = problems.into_iter().next() {
        return Err(Error::InvalidDescriptor(first));
    }
    let lemma = lemma_criteria(b);
    let result = if !b.chi.is_empty() && b.group.p() != 2 {
        let w = infer_w(b)?;
        if let Some(l) = &lemma {
            if !w.trivial {
                return Err(Error::Inconsistent {
                    inferred: format!("W_D({}) = J_{}", w.dade, w.jordan),
                    criterion: l.provenance.to_string(),
                });
            }
        }
        w
    } else if let Some(l) = lemma {
        l
    } else if !b.chi.is_empty() {
        return Err(Error::EvenPrimeInference(b.group.p()));
    } else {
        return Err(Error::Undetermined);
    };
    Ok(Analysis {
        result,
        warnings: magnitude_warnings(b),
    })
}

/// `Cap(Res^D_{D_i} J_n)` as a Jordan size over `D_i`, for `J_n` capped
/// endo-permutation.
pub fn restrict_cap(group: &GroupSpec, n: &BigUint, i: u32) -> Result<BigUint> {
    if i == 0 {
        return Err(Error::TrivialIntersection);
    }
    group.check_index(i)?;
    if i == group.ell() || n.is_one() {
        return Ok(n.clone());
    }
    let m = ModuleSum::indecomposable(group.clone(), n.clone())?;
    cap_of_endo_permutation(&restrict(&m, i)?)
}

/// `W(B_0)` for a normal subgroup `H` with `D cap H = D_i`.
pub fn restrict_w(w: &WResult, i: u32) -> Result<BigUint> {
    restrict_cap(w.group(), &w.jordan, i)
}

/// `[W(M)] = [Cap(V)] + [W(M^)]` in the Dade group.
pub fn fong_shift(w_hat: &DadeElement, cap_v: &BigUint) -> Result<DadeElement> {
    let v = dade_element_of(w_hat.group(), cap_v)?;
    dade_add(w_hat, &v)
}
