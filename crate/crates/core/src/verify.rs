//! Exhaustive sweeps comparing closed forms against the matrix oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::block_analysis::restrict_cap;
use crate::cyclic_kd::{cap, cap_of_endo_permutation, relative_heller, ModuleSum};
use crate::dade::{
    dade_add, dade_element_of, lift_character, psi, psi_inverse, w_module, DadeElement,
};
use crate::oracle::{self, PrimeField};
use crate::{par, Error, GroupSpec, OracleConfig, Result};

/// Largest `ell` for which the sweeps enumerate the whole Dade group.
pub const MAX_SWEEP_ELL: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    DadeLaw,
    RelativeHeller,
    Signs,
    RestrictionCap,
    Classification,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::DadeLaw,
        Suite::RelativeHeller,
        Suite::Signs,
        Suite::RestrictionCap,
        Suite::Classification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DadeLaw => "dade-law",
            Suite::RelativeHeller => "relative-heller",
            Suite::Signs => "signs",
            Suite::RestrictionCap => "restriction-cap",
            Suite::Classification => "classification",
        }
    }

    /// Matrix entries the largest oracle computation of the suite needs.
    fn required_entries(self, group: &GroupSpec) -> BigUint {
        let order = group.order();
        match self {
            Suite::Signs => BigUint::zero(),
            Suite::RestrictionCap => order.pow(2),
            // Two-generator covers reach dimension 2 (p^ell + p^(ell-1)).
            Suite::RelativeHeller => (2u32 * (order + order / group.p())).pow(2),
            Suite::DadeLaw | Suite::Classification => order.pow(4),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// A failed case with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub group: GroupSpec,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn mismatches(&self) -> usize {
        self.suites.iter().map(|s| s.mismatches.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }
}

/// One check: `Ok(None)` when the closed form agrees with the oracle.
type Outcome = Result<Option<Mismatch>>;

fn compare(
    case: String,
    inputs: impl FnOnce() -> String,
    expected: String,
    oracle: Result<String>,
) -> Outcome {
    match oracle {
        Ok(got) if got == expected => Ok(None),
        Err(e @ Error::OracleCapacity { .. }) => Err(e),
        got => Ok(Some(Mismatch {
            case,
            inputs: inputs(),
            expected,
            oracle: got.unwrap_or_else(|e| format!("error: {e}")),
        })),
    }
}

/// Checks that the requested suites fit the oracle and the enumeration limit.
pub fn precheck(group: &GroupSpec, suites: &[Suite], cfg: &OracleConfig) -> Result<()> {
    if group.ell() > MAX_SWEEP_ELL {
        return Err(Error::SweepTooLarge {
            ell: group.ell(),
            max: MAX_SWEEP_ELL,
        });
    }
    let oracle_needed = suites.iter().any(|&s| s != Suite::Signs);
    if oracle_needed {
        PrimeField::new(group.p())?;
    }
    for &s in suites {
        let need = s.required_entries(group);
        if need > BigUint::from(cfg.capacity) {
            return Err(Error::OracleCapacity {
                required: need.to_u128().unwrap_or(u128::MAX),
                capacity: cfg.capacity,
            });
        }
    }
    Ok(())
}

pub fn verify(group: &GroupSpec, suites: &[Suite], cfg: &OracleConfig) -> Result<VerifyReport> {
    verify_with(group, suites, cfg, Execution::default())
}

/// Runs each suite once, in the order of [`Suite::ALL`], with cases sorted
/// by identifier.
pub fn verify_with(
    group: &GroupSpec,
    suites: &[Suite],
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<VerifyReport> {
    let mut wanted: Vec<Suite> = suites.to_vec();
    wanted.sort();
    wanted.dedup();
    precheck(group, &wanted, cfg)?;
    let reports = wanted
        .into_iter()
        .map(|s| run_suite(group, s, cfg, exec))
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        group: group.clone(),
        suites: reports,
    })
}

fn run_cases<T, F>(cases: Vec<T>, exec: Execution, check: F) -> Result<(usize, Vec<Mismatch>)>
where
    T: Send,
    F: Fn(T) -> Outcome + Sync + Send,
{
    let count = cases.len();
    let outcomes = match exec {
        Execution::Sequential => par::sequential_map(cases, check),
        Execution::Parallel => par::map(cases, check),
    };
    let mut mismatches = Vec::new();
    for o in outcomes {
        if let Some(m) = o? {
            mismatches.push(m);
        }
    }
    mismatches.sort_by(|a, b| a.case.cmp(&b.case));
    Ok((count, mismatches))
}

fn run_suite(
    group: &GroupSpec,
    suite: Suite,
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<SuiteReport> {
    if suite == Suite::Signs && group.p() == 2 {
        return Ok(SuiteReport {
            suite,
            cases: 0,
            mismatches: Vec::new(),
            skipped: Some("lift characters are defined for odd p only".into()),
        });
    }
    let (cases, mismatches) = match suite {
        Suite::DadeLaw => dade_law(group, cfg, exec)?,
        Suite::RelativeHeller => relative_heller_suite(group, cfg, exec)?,
        Suite::Signs => signs(group, exec)?,
        Suite::RestrictionCap => restriction_cap(group, cfg, exec)?,
        Suite::Classification => classification(group, cfg, exec)?,
    };
    Ok(SuiteReport {
        suite,
        cases,
        mismatches,
        skipped: None,
    })
}

fn jordan(group: &GroupSpec, n: &BigUint) -> Result<ModuleSum> {
    ModuleSum::indecomposable(group.clone(), n.clone())
}

fn pairs(group: &GroupSpec) -> Vec<(DadeElement, DadeElement)> {
    let all: Vec<DadeElement> = DadeElement::all(group).collect();
    all.iter()
        .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

/// `Cap(W(a) (x) W(b)) = W(a + b)` with the tensor product computed by the oracle.
fn dade_law(
    group: &GroupSpec,
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<(usize, Vec<Mismatch>)> {
    run_cases(pairs(group), exec, |(a, b)| {
        let (na, nb) = (w_module(&a), w_module(&b));
        let sum = dade_add(&a, &b)?;
        let got = jordan(group, &na)
            .and_then(|ja| Ok((ja, jordan(group, &nb)?)))
            .and_then(|(ja, jb)| oracle::tensor(&ja, &jb, cfg))
            .and_then(|t| cap_of_endo_permutation(&t).map(|c| format!("J_{c}")));
        compare(
            format!("a={} b={}", a.bits(), b.bits()),
            || format!("W(a) = J_{na}, W(b) = J_{nb}"),
            format!("J_{}", w_module(&sum)),
            got,
        )
    })
}

fn relative_heller_suite(
    group: &GroupSpec,
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<(usize, Vec<Mismatch>)> {
    let order = group.order_usize().expect("prechecked");
    let width = order.to_string().len();
    let cases: Vec<(usize, u32)> = (1..=order)
        .flat_map(|n| (0..=group.ell()).map(move |i| (n, i)))
        .collect();
    run_cases(cases, exec, |(n, i)| {
        let closed = relative_heller(&jordan(group, &BigUint::from(n))?, i)?;
        compare(
            format!("n={n:0width$} i={i}"),
            || format!("relative Heller of J_{n} over {group} with respect to D_{i}"),
            closed.to_string(),
            oracle::relative_heller_part(group, n, i, cfg).map(|m| m.to_string()),
        )
    })
}

/// Sign patterns, the complement rule and multiplicativity of the sign map.
fn signs(group: &GroupSpec, exec: Execution) -> Result<(usize, Vec<Mismatch>)> {
    run_cases(pairs(group), exec, |(a, b)| {
        let case = format!("a={} b={}", a.bits(), b.bits());
        let inputs = || format!("a = {a}, b = {b}");
        let product = psi(&a).product(&psi(&b))?;
        let sum = dade_add(&a, &b)?;
        if psi(&sum) != product {
            return Ok(Some(Mismatch {
                case,
                inputs: inputs(),
                expected: product.to_string(),
                oracle: psi(&sum).to_string(),
            }));
        }
        if !b.is_zero() {
            return Ok(None);
        }
        // Per-element checks run once, on the pair (a, 0).
        let chi = lift_character(&a)?;
        let expected = psi(&a);
        let observed = crate::dade::SignVector::new(group.clone(), chi.sign_pattern())?;
        if observed != expected || psi_inverse(&expected) != a {
            return Ok(Some(Mismatch {
                case,
                inputs: inputs(),
                expected: format!("signs {expected}, psi inverse {a}"),
                oracle: format!(
                    "lift signs {observed}, psi inverse {}",
                    psi_inverse(&expected)
                ),
            }));
        }
        let flipped = lift_character(&dade_add(&a, &DadeElement::generator(group.clone(), 0)?)?)?;
        let negated: Vec<_> = chi.layer_values().iter().map(|v| -v).collect();
        let complement = group.order() - chi.dim();
        if flipped.layer_values() != negated.as_slice() || *flipped.dim() != complement {
            return Ok(Some(Mismatch {
                case,
                inputs: inputs(),
                expected: format!("dim {complement}, values {negated:?}"),
                oracle: format!("dim {}, values {:?}", flipped.dim(), flipped.layer_values()),
            }));
        }
        Ok(None)
    })
}

/// `Cap(Res J_n)` closed form vs oracle restriction, plus the chain rule
/// `Cap(Res^{D_i}_{D_j} Cap(Res^D_{D_i} J_n)) = Cap(Res^D_{D_j} J_n)`.
fn restriction_cap(
    group: &GroupSpec,
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<(usize, Vec<Mismatch>)> {
    let ell = group.ell();
    let cases: Vec<(DadeElement, u32, Option<u32>)> = DadeElement::all(group)
        .flat_map(|a| {
            (1..=ell).flat_map(move |i| {
                let a = a.clone();
                std::iter::once((a.clone(), i, None))
                    .chain((1..=i).map(move |j| (a.clone(), i, Some(j))))
            })
        })
        .collect();
    run_cases(cases, exec, |(a, i, j)| {
        let n = w_module(&a);
        let at_i = restrict_cap(group, &n, i)?;
        match j {
            None => compare(
                format!("alpha={} i={i}", a.bits()),
                || format!("W = J_{n} over {group}"),
                format!("J_{at_i}"),
                jordan(group, &n)
                    .and_then(|m| oracle::restrict(&m, i, cfg))
                    .and_then(|r| cap_of_endo_permutation(&r))
                    .map(|c| format!("J_{c}")),
            ),
            Some(j) => {
                let direct = restrict_cap(group, &n, j)?;
                compare(
                    format!("alpha={} i={i} j={j}", a.bits()),
                    || format!("W = J_{n} over {group}, via D_{i} = J_{at_i}"),
                    format!("J_{direct}"),
                    restrict_cap(&group.subgroup(i)?, &at_i, j).map(|c| format!("J_{c}")),
                )
            }
        }
    })
}

/// Each `W(alpha)` is capped endo-permutation with full-vertex cap itself,
/// the recursion matches the composed oracle relative Heller operators, and
/// the closed inverse recovers `alpha` (with the top bit cleared for `p = 2`).
fn classification(
    group: &GroupSpec,
    cfg: &OracleConfig,
    exec: Execution,
) -> Result<(usize, Vec<Mismatch>)> {
    let ell = group.ell();
    let cases: Vec<DadeElement> = DadeElement::all(group).collect();
    run_cases(cases, exec, |a| {
        let n = w_module(&a);
        let case = format!("alpha={}", a.bits());
        let p = BigUint::from(group.p());
        if (&n % &p).is_zero() {
            return Ok(Some(Mismatch {
                case,
                inputs: format!("alpha = {a}"),
                expected: "p does not divide n".into(),
                oracle: format!("n = {n}"),
            }));
        }
        let capped = jordan(group, &n)
            .and_then(|m| cap(&m, cfg))
            .map(|c| format!("J_{c}"));
        if let Some(m) = compare(
            case.clone(),
            || format!("alpha = {a}, cap of J_{n}"),
            format!("J_{n}"),
            capped,
        )? {
            return Ok(Some(m));
        }

        let mut composed = Ok(1usize);
        for j in (0..ell).rev() {
            if a.alpha()[j as usize] {
                composed = composed.and_then(|m| {
                    let r = oracle::relative_heller_part(group, m, j, cfg)?;
                    match r.parts().collect::<Vec<_>>().as_slice() {
                        [(size, count)] if count.to_u32() == Some(1) => {
                            Ok(size.to_usize().expect("size fits the oracle"))
                        }
                        _ => Err(Error::NotCappedEndoPermutation(format!(
                            "step {j} gave {r}"
                        ))),
                    }
                });
            }
        }
        let composed = composed.map(|m| format!("J_{m}"));
        if let Some(m) = compare(
            case.clone(),
            || format!("alpha = {a}, composed relative Heller operators applied to k"),
            format!("J_{n}"),
            composed,
        )? {
            return Ok(Some(m));
        }

        let mut expected_alpha = a.alpha().to_vec();
        if group.p() == 2 {
            expected_alpha[ell as usize - 1] = false;
        }
        let expected = DadeElement::new(group.clone(), expected_alpha)?;
        compare(
            case,
            || format!("inverse of J_{n}"),
            expected.bits(),
            dade_element_of(group, &n).map(|e| e.bits()),
        )
    })
}
