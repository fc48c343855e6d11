use thiserror::Error;

/// Error type shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Stiefel parameters: need n > k >= 1, got n = {n}, k = {k}")]
    RingParams { n: u32, k: u32 },

    #[error("generator index {index} outside a{lo}..a{hi}")]
    IndexOutOfRange { index: u32, lo: u32, hi: u32 },

    #[error("band index {p} outside 0..={k}")]
    BandIndex { p: u32, k: u32 },

    #[error("binomial parity undefined for C({a}, {b})")]
    BinomialDomain { a: i64, b: u64 },

    #[error("pair (i, j) = ({i}, {j}) outside 1 <= i <= j")]
    WuRange { i: u32, j: u32 },

    #[error("hypothesis {requirement} not met for n = {n}, k = {k}")]
    Hypothesis {
        requirement: &'static str,
        n: u32,
        k: u32,
    },

    #[error("state space 2^{state_bits} exceeds enumeration budget {budget}")]
    BudgetExceeded { state_bits: u32, budget: u64 },

    #[error("first nonzero degree is {actual:?}, expected {expected}")]
    FirstNonzeroMismatch { expected: u32, actual: Option<u32> },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("flag {flag} is required by this subcommand")]
    MissingFlag { flag: &'static str },

    #[error("class stored at degree {degree} is not homogeneous of that degree")]
    NonHomogeneous { degree: u32 },

    #[error("polynomial modulus {modulus} outside 1..={cap}")]
    PolynomialModulus { modulus: u32, cap: u32 },
}
