//! Arithmetic in Z_2[t]/(t^N) and the admissible degree windows.
//!
//! H*(RP^{N-1}; Z_2) is Z_2[t]/(t^N), and the total Stiefel-Whitney class of
//! m copies of the canonical line bundle is (1 + t)^m there, so its
//! coefficients are binomial parities.  Restricting bundles over the
//! projective space underneath V_k(R^n) only ever produces multiples of
//! 2^{phi(n-k-1)} of the line class, which confines the low-degree part of
//! any total class to a short list of admissible degrees.

use std::fmt;

use num_bigint::BigUint;

use crate::parity::{binom_parity, phi};
use crate::{Error, Result};

/// Largest supported truncation, enough for every desk-scale check.
pub const MAX_MODULUS: u32 = 1 << 16;

/// Element of Z_2[t]/(t^N) with dense bit-packed coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    modulus: u32,
    words: Vec<u64>,
}

impl TruncatedPoly {
    pub fn zero(modulus: u32) -> Result<Self> {
        if modulus < 1 || modulus > MAX_MODULUS {
            return Err(Error::PolynomialModulus {
                modulus,
                cap: MAX_MODULUS,
            });
        }
        let words = vec![0u64; modulus.div_ceil(64) as usize];
        Ok(TruncatedPoly { modulus, words })
    }

    pub fn one(modulus: u32) -> Result<Self> {
        let mut p = TruncatedPoly::zero(modulus)?;
        p.set_coeff(0, true);
        Ok(p)
    }

    /// The monomial t^exponent, or zero when the exponent is truncated away.
    pub fn term(modulus: u32, exponent: u32) -> Result<Self> {
        let mut p = TruncatedPoly::zero(modulus)?;
        if exponent < modulus {
            p.set_coeff(exponent, true);
        }
        Ok(p)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeff(&self, exponent: u32) -> bool {
        exponent < self.modulus && self.words[(exponent / 64) as usize] >> (exponent % 64) & 1 == 1
    }

    pub fn set_coeff(&mut self, exponent: u32, value: bool) {
        assert!(exponent < self.modulus, "exponent past the truncation");
        let word = &mut self.words[(exponent / 64) as usize];
        let bit = 1u64 << (exponent % 64);
        if value {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<u32> {
        (0..self.modulus).filter(|e| self.coeff(*e)).collect()
    }

    /// Sum mod 2; both operands must share the modulus.
    pub fn add(&self, other: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        TruncatedPoly {
            modulus: self.modulus,
            words,
        }
    }

    /// Truncated product mod 2.
    pub fn mul(&self, other: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = TruncatedPoly {
            modulus: self.modulus,
            words: vec![0u64; self.words.len()],
        };
        for e in 0..self.modulus {
            if !self.coeff(e) {
                continue;
            }
            for f in 0..self.modulus - e {
                if other.coeff(f) {
                    let idx = e + f;
                    out.words[(idx / 64) as usize] ^= 1u64 << (idx % 64);
                }
            }
        }
        out
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut exponent: u64) -> TruncatedPoly {
        let mut base = self.clone();
        let mut acc = TruncatedPoly::one(self.modulus).unwrap();
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc.mul(&base);
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exponents = self.exponents();
        if exponents.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in exponents {
            if !first {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Total Stiefel-Whitney class of m copies of the canonical line bundle over
/// RP^{modulus-1}: the truncation of (1 + t)^m, one binomial parity per
/// coefficient.
///
/// ```
/// use stiefel::stunted::total_sw_of_line_multiple;
/// let w = total_sw_of_line_multiple(7, 4).unwrap();
/// assert_eq!(w.to_string(), "1 + t^4");
/// ```
pub fn total_sw_of_line_multiple(modulus: u32, m: u64) -> Result<TruncatedPoly> {
    let mut out = TruncatedPoly::zero(modulus)?;
    for e in 0..modulus {
        if binom_parity(m as i64, e as u64)?.is_odd() {
            out.set_coeff(e, true);
        }
    }
    Ok(out)
}

/// The multiple 2^{phi(n-k-1)} generating the image of restriction from the
/// projective space under V_k(R^n).
pub fn image_generator_multiple(n: u32, k: u32) -> Result<BigUint> {
    if k < 1 || n <= k {
        return Err(Error::RingParams { n, k });
    }
    Ok(phi((n - k - 1) as u64).power)
}

/// Which degree window an admissible set describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibleMode {
    /// Degrees up to 2(n-k).
    TwiceCodimension,
    /// Degrees up to n-1; requires n >= 2k.
    ProjectiveDimension,
}

/// Degrees in a window where a Stiefel-Whitney class of a bundle over
/// V_k(R^n) can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub n: u32,
    pub k: u32,
    pub range_hi: u32,
    pub degrees: std::collections::BTreeSet<u32>,
}

/// The admissible degrees for the requested window.  With c = n - k, the
/// window up to 2c holds {c, 2c} when c is 1, 2, 4 or 8 and otherwise at
/// most the single degree 2^{phi(c-1)}; the window up to n-1 always holds at
/// most that single degree.
pub fn admissible_degrees(n: u32, k: u32, mode: AdmissibleMode) -> Result<AdmissibleSet> {
    if k < 1 || n <= k {
        return Err(Error::RingParams { n, k });
    }
    let c = n - k;
    let power = phi((c - 1) as u64).power;
    let mut degrees = std::collections::BTreeSet::new();
    let range_hi = match mode {
        AdmissibleMode::TwiceCodimension => {
            let hi = 2 * c;
            if matches!(c, 1 | 2 | 4 | 8) {
                degrees.insert(c);
                degrees.insert(2 * c);
            } else if power <= BigUint::from(hi) {
                degrees.insert(u32::try_from(&power).unwrap());
            }
            hi
        }
        AdmissibleMode::ProjectiveDimension => {
            if n < 2 * k {
                return Err(Error::Hypothesis {
                    requirement: "n >= 2*k",
                    n,
                    k,
                });
            }
            let hi = n - 1;
            if power <= BigUint::from(hi) {
                degrees.insert(u32::try_from(&power).unwrap());
            }
            hi
        }
    };
    Ok(AdmissibleSet {
        n,
        k,
        range_hi,
        degrees,
    })
}
