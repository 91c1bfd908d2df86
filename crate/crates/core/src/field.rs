//! Arithmetic in the prime field GF(p).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used throughout the library.
pub const DEFAULT_CHAR: u32 = 32003;

/// A prime field GF(p) with `1000 < p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            characteristic: DEFAULT_CHAR,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u32) -> Result<Self> {
        if !is_prime(characteristic) {
            return Err(Error::Precondition(format!(
                "field characteristic {characteristic} is not prime"
            )));
        }
        if characteristic <= 1000 {
            return Err(Error::Precondition(format!(
                "field characteristic {characteristic} is too small (need p > 1000)"
            )));
        }
        if characteristic >= 1 << 31 {
            return Err(Error::Precondition(format!(
                "field characteristic {characteristic} does not fit in 31 bits"
            )));
        }
        Ok(FieldSpec { characteristic })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.characteristic {
            s - self.characteristic
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.characteristic - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.characteristic - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.characteristic as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.characteristic);
        self.pow(a, self.characteristic as u64 - 2)
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.characteristic as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: u32) -> i64 {
        let p = self.characteristic as i64;
        let a = a as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}
