use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("ell must be at least 1")]
    TrivialDefectGroup,
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("subgroup index {index} out of range 0..={ell}")]
    IndexOutOfRange { index: u32, ell: u32 },
    #[error("Jordan size {size} out of range 1..={bound}")]
    PartOutOfRange { size: BigUint, bound: BigUint },
    #[error("oracle capacity exceeded: {required} matrix entries needed, capacity {capacity}")]
    OracleCapacity { required: u128, capacity: u128 },
    #[error("invalid matrix module: {0}")]
    InvalidMatrixModule(String),
    #[error("not capped endo-permutation: {0}")]
    NotCappedEndoPermutation(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("character recursion undefined for p = 2")]
    EvenPrimeCharacter,
    #[error("sign inference needs an odd prime (p = {0})")]
    EvenPrimeInference(u64),
    #[error("character value at layer {layer} is zero; a non-zero integer is required")]
    ZeroCharacterValue { layer: usize },
    #[error("character values change sign inside layer {layer}")]
    MixedLayerSigns { layer: usize },
    #[error("no character values and no triviality criterion applies")]
    Undetermined,
    #[error(
        "inconsistent input: character values give {inferred} but {criterion} forces W(B) trivial"
    )]
    Inconsistent { inferred: String, criterion: String },
    #[error("restriction-cap requires a non-trivial intersection (index >= 1)")]
    TrivialIntersection,
    #[error("not a capped endo-permutation class: J_{0}")]
    NotInDadeImage(BigUint),
    #[error("star constraint violated: {0}")]
    StarConstraint(String),
    #[error("sweep too large: ell = {ell} exceeds {max} for exhaustive enumeration")]
    SweepTooLarge { ell: u32, max: u32 },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid Brauer tree: {0}")]
    InvalidTree(String),
    #[error("malformed Dade element {0:?}: expected a string of 0/1 of length ell")]
    MalformedAlpha(String),
}
