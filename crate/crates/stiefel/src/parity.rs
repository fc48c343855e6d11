//! Binomial-coefficient parity and the mod-8 counting function.
//!
//! All coefficient arithmetic in the crate is mod 2, so binomial
//! coefficients only ever matter through their parity.  Lucas' theorem
//! reduces that parity to a bitwise test, which keeps every computation
//! exact regardless of how large the entries are.  The counting function
//! `phi` governs the lowest degree in which a Stiefel-Whitney class of a
//! bundle over V_k(R^n) can be nonzero.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;

use crate::{Error, Result};

/// Residue class of an integer mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    pub fn is_even(self) -> bool {
        !self.is_odd()
    }
}

/// Addition in GF(2).
impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != rhs.is_odd())
    }
}

/// Multiplication in GF(2).
impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() && rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// Parity of the binomial coefficient C(a, b).
///
/// By Lucas' theorem, for a >= 0 the coefficient is odd exactly when every
/// binary digit of `b` is at most the matching digit of `a`, so the test is
/// `b & !a == 0`.  The case `0 <= a < b` falls out as even.  The single
/// negative top `a = -1` is admitted with `b = 0` only; that empty product
/// is odd, and it is the convention the Wu formula needs when its leading
/// term degenerates.
///
/// ```
/// use stiefel::parity::binom_parity;
/// assert!(binom_parity(7, 2).unwrap().is_odd());
/// assert!(binom_parity(6, 1).unwrap().is_even());
/// assert!(binom_parity(-1, 0).unwrap().is_odd());
/// ```
pub fn binom_parity(a: i64, b: u64) -> Result<Parity> {
    if a < -1 || (a == -1 && b > 0) {
        return Err(Error::BinomialDomain { a, b });
    }
    if a == -1 {
        return Ok(Parity::Odd);
    }
    Ok(Parity::from_odd(b & !(a as u64) == 0))
}

/// Value of the counting function together with the power of two it indexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiValue {
    pub m: u64,
    pub phi: u64,
    /// Always 2^phi.
    pub power: BigUint,
}

/// Counts the integers `0 < l <= m` with `l` congruent to 0, 1, 2 or 4 mod 8.
///
/// The count is taken directly from the definition; the closed form in terms
/// of `m mod 8` is kept to the test suite as a cross-check.
///
/// ```
/// use stiefel::parity::phi;
/// assert_eq!(phi(3).phi, 2);
/// assert_eq!(phi(7).phi, 3);
/// ```
pub fn phi(m: u64) -> PhiValue {
    let count = (1..=m).filter(|l| matches!(l % 8, 0 | 1 | 2 | 4)).count() as u64;
    PhiValue {
        m,
        phi: count,
        power: BigUint::from(1u32) << count as usize,
    }
}

/// Outcome of comparing 2^{phi(m-1)} with m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityClass {
    Strict,
    Equal,
}

/// Classifies the inequality 2^{phi(m-1)} >= m for m >= 1.
///
/// The inequality always holds, with equality exactly at m = 1, 2, 4, 8, so
/// the classifier never reports a less-than state.
pub fn equality_classifier(m: u64) -> EqualityClass {
    assert!(m >= 1, "equality_classifier requires m >= 1");
    let power = phi(m - 1).power;
    match power.cmp(&BigUint::from(m)) {
        std::cmp::Ordering::Greater => EqualityClass::Strict,
        std::cmp::Ordering::Equal => EqualityClass::Equal,
        std::cmp::Ordering::Less => unreachable!("2^phi(m-1) < m cannot happen"),
    }
}
