//! The prime field F_p.
//!
//! Residues are stored as `u32` in `[0, p)`; intermediate products go through
//! `u64`, so any prime below 2^32 is supported.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub fn add(p: u32, x: u32, y: u32) -> u32 {
    let s = x as u64 + y as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub(p: u32, x: u32, y: u32) -> u32 {
    if x >= y {
        x - y
    } else {
        (x as u64 + p as u64 - y as u64) as u32
    }
}

#[inline]
pub fn neg(p: u32, x: u32) -> u32 {
    if x == 0 {
        0
    } else {
        p - x
    }
}

#[inline]
pub fn mul(p: u32, x: u32, y: u32) -> u32 {
    ((x as u64 * y as u64) % p as u64) as u32
}

pub fn pow(p: u32, mut x: u32, mut e: u64) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, x);
        }
        x = mul(p, x, x);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `x` must be nonzero mod `p`.
pub fn inv(p: u32, x: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    pow(p, x, p as u64 - 2)
}

/// Reduces an arbitrary integer into `[0, p)`.
pub fn reduce(p: u32, n: i64) -> u32 {
    n.rem_euclid(p as i64) as u32
}

/// An element of F_p carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpElement {
    residue: u32,
    modulus: u32,
}

impl FpElement {
    pub fn new(modulus: u32, n: i64) -> Self {
        FpElement { residue: reduce(modulus, n), modulus }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inv(self) -> Result<Self> {
        if self.residue == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FpElement { residue: inv(self.modulus, self.residue), ..self })
    }

    pub fn checked_div(self, o: Self) -> Result<Self> {
        Ok(self * o.inv()?)
    }
}

impl Add for FpElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpElement { residue: add(self.modulus, self.residue, o.residue), ..self }
    }
}

impl Sub for FpElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpElement { residue: sub(self.modulus, self.residue, o.residue), ..self }
    }
}

impl Neg for FpElement {
    type Output = Self;
    fn neg(self) -> Self {
        FpElement { residue: neg(self.modulus, self.residue), ..self }
    }
}

impl Mul for FpElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FpElement { residue: mul(self.modulus, self.residue, o.residue), ..self }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}
