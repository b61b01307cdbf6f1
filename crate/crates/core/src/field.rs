//! Base fields of characteristic `p` and the scalar interface shared by them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// F_p(a, b)
    Rational,
    /// F_p((a))((b)), truncated
    Laurent,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Rational => "rational",
            FieldKind::Laurent => "laurent",
        })
    }
}

/// Which base field a scalar lives in. `precision` is the absolute exponent
/// window of the Laurent field and is present exactly for that kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldDescriptor {
    kind: FieldKind,
    prime: u32,
    precision: Option<u32>,
}

impl FieldDescriptor {
    pub fn rational(prime: u64) -> Result<Self> {
        Ok(FieldDescriptor { kind: FieldKind::Rational, prime: fp::check_prime(prime)?, precision: None })
    }

    pub fn laurent(prime: u64, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionExhausted("the Laurent window must be positive".into()));
        }
        Ok(FieldDescriptor { kind: FieldKind::Laurent, prime: fp::check_prime(prime)?, precision: Some(precision) })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.precision {
            None => write!(f, "F_{}(a,b)", self.prime),
            Some(n) => write!(f, "F_{}((a))((b)) mod window {}", self.prime, n),
        }
    }
}

/// Exact field arithmetic. Implementors are immutable values that know the
/// field they belong to.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero(field: &FieldDescriptor) -> Self;
    fn from_int(field: &FieldDescriptor, n: i64) -> Self;
    /// The indeterminate `a` (`var = 'a'`) or `b` (`var = 'b'`).
    fn variable(field: &FieldDescriptor, var: char) -> Self;
    fn field(&self) -> FieldDescriptor;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplication by an element of the prime field.
    fn scale(&self, k: u32) -> Self;
    fn inv(&self) -> Result<Self>;
    /// True if no nonzero term is known. For truncated fields this does not
    /// rule out unknown terms beyond the precision.
    fn is_zero(&self) -> bool;
    /// True if the value is zero with nothing unknown.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    /// False if some terms are unknown because of truncation.
    fn is_exact(&self) -> bool {
        true
    }
    /// `self^p`.
    fn frobenius(&self) -> Self;

    fn one(field: &FieldDescriptor) -> Self {
        Self::from_int(field, 1)
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// `self / o` where the quotient is known to stay in the coefficient
    /// ring, as in fraction-free elimination.
    fn exact_quotient(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }

    /// A common factor of `self` and `o` in the coefficient ring, used to
    /// keep fraction-free results small. One is always an acceptable answer.
    fn common_factor(&self, _o: &Self) -> Self {
        Self::one(&self.field())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True if the printed form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        let s = self.to_string();
        s.contains(' ') || s.contains('/')
    }
}
