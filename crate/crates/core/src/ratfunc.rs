//! The rational function field F_p(a, b) in canonical reduced form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::fp;
use crate::poly::Poly2;

/// `numerator / denominator` with coprime parts and a denominator whose
/// graded-lex leading coefficient is 1. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    p: u32,
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    pub fn from_poly(p: u32, num: Poly2) -> Self {
        RatFunc { p, num, den: Poly2::constant(p, 1) }
    }

    /// Reduces `num / den` to canonical form.
    pub fn from_parts(p: u32, num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(p, num, den, true))
    }

    fn normalize(p: u32, num: Poly2, den: Poly2, reduce: bool) -> Self {
        if num.is_zero() {
            return RatFunc { p, num, den: Poly2::constant(p, 1) };
        }
        let (num, den) = if reduce && !den.is_constant() {
            let g = num.gcd(p, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(p, &g), den.exact_div(p, &g))
            }
        } else {
            (num, den)
        };
        let lead = den.leading_term().expect("nonzero denominator").2;
        if lead == 1 {
            RatFunc { p, num, den }
        } else {
            let k = fp::inv(p, lead);
            RatFunc { p, num: num.scale(p, k), den: den.scale(p, k) }
        }
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl Scalar for RatFunc {
    fn zero(field: &FieldDescriptor) -> Self {
        Self::from_poly(field.prime(), Poly2::zero())
    }

    fn from_int(field: &FieldDescriptor, n: i64) -> Self {
        let p = field.prime();
        Self::from_poly(p, Poly2::constant(p, fp::reduce(p, n)))
    }

    fn variable(field: &FieldDescriptor, var: char) -> Self {
        let p = field.prime();
        match var {
            'a' => Self::from_poly(p, Poly2::monomial(1, 1, 0)),
            'b' => Self::from_poly(p, Poly2::monomial(1, 0, 1)),
            _ => panic!("unknown indeterminate {var}"),
        }
    }

    fn field(&self) -> FieldDescriptor {
        FieldDescriptor::rational(self.p as u64).expect("prime checked at construction")
    }

    fn add(&self, o: &Self) -> Self {
        let p = self.p;
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(p, &o.num);
            return Self::normalize(p, num, self.den.clone(), true);
        }
        if self.den.is_one() {
            let num = self.num.mul(p, &o.den).add(p, &o.num);
            return Self::normalize(p, num, o.den.clone(), false);
        }
        if o.den.is_one() {
            let num = o.num.mul(p, &self.den).add(p, &self.num);
            return Self::normalize(p, num, self.den.clone(), false);
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = self.den.gcd(p, &o.den);
        let d1 = self.den.exact_div(p, &g);
        let d2 = o.den.exact_div(p, &g);
        let num = self.num.mul(p, &d2).add(p, &o.num.mul(p, &d1));
        let den = self.den.mul(p, &d2);
        if g.is_constant() {
            return Self::normalize(p, num, den, false);
        }
        let h = num.gcd(p, &g);
        if h.is_constant() || num.is_zero() {
            Self::normalize(p, num, den, false)
        } else {
            Self::normalize(p, num.exact_div(p, &h), den.exact_div(p, &h), false)
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        RatFunc { p: self.p, num: self.num.neg(self.p), den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero(&self.field());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { p, num: self.num.mul(p, &o.num), den: self.den.clone() };
        }
        // (n1/d1)(n2/d2) with gcd(n1, d2) and gcd(n2, d1) cancelled first
        let g1 = self.num.gcd(p, &o.den);
        let g2 = o.num.gcd(p, &self.den);
        let (n1, d2) = if g1.is_constant() { (self.num.clone(), o.den.clone()) } else { (self.num.exact_div(p, &g1), o.den.exact_div(p, &g1)) };
        let (n2, d1) = if g2.is_constant() { (o.num.clone(), self.den.clone()) } else { (o.num.exact_div(p, &g2), self.den.exact_div(p, &g2)) };
        Self::normalize(p, n1.mul(p, &n2), d1.mul(p, &d2), false)
    }

    fn scale(&self, k: u32) -> Self {
        let k = k % self.p;
        if k == 0 {
            return Self::zero(&self.field());
        }
        RatFunc { p: self.p, num: self.num.scale(self.p, k), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.p, self.den.clone(), self.num.clone(), false))
    }

    fn exact_quotient(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.den.is_one() && o.den.is_one() {
            return Ok(RatFunc::from_poly(self.p, self.num.exact_div(self.p, &o.num)));
        }
        self.div(o)
    }

    fn common_factor(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() && !(self.num.is_zero() && o.num.is_zero()) {
            RatFunc::from_poly(self.p, self.num.gcd(self.p, &o.num))
        } else {
            Self::one(&self.field())
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn frobenius(&self) -> Self {
        RatFunc { p: self.p, num: self.num.frobenius(self.p), den: self.den.frobenius(self.p) }
    }

    fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.num_terms() > 1
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, poly: &Poly2) -> fmt::Result {
    let terms = poly.terms_graded_lex();
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (n, (i, j, c)) in terms.into_iter().enumerate() {
        if n > 0 {
            f.write_str(" + ")?;
        }
        write_monomial(f, c, &[('a', i as i64), ('b', j as i64)])?;
    }
    Ok(())
}

/// Writes `c*a^i*b^j` with unit coefficients and zero exponents elided.
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, c: u32, factors: &[(char, i64)]) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    for &(v, e) in factors {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if c != 1 || parts.is_empty() {
        parts.insert(0, c.to_string());
    }
    f.write_str(&parts.join("*"))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly(f, &self.num);
        }
        if self.num.num_terms() > 1 {
            f.write_str("(")?;
            write_poly(f, &self.num)?;
            f.write_str(")")?;
        } else {
            write_poly(f, &self.num)?;
        }
        f.write_str("/")?;
        let single_factor = {
            let t: Vec<_> = self.den.terms().collect();
            t.len() == 1 && (t[0].0 == 0 || t[0].1 == 0)
        };
        if single_factor {
            write_poly(f, &self.den)
        } else {
            f.write_str("(")?;
            write_poly(f, &self.den)?;
            f.write_str(")")
        }
    }
}
