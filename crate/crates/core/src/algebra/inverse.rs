use super::{AlgElement, SymbolAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// A linear relation `sum c_k v_k = 0` with nonzero last coefficient,
/// provided the last column depends on the others. Earlier columns are
/// assumed independent.
///
/// Elimination is fraction-free (each update divides exactly by the previous
/// pivot) and the relation is the Cramer one, whose last coefficient is the
/// leading minor, so polynomial columns give polynomial coefficients.
pub fn dependency<S: Scalar>(cols: &[Vec<S>]) -> Result<Option<Vec<S>>> {
    let Some(last) = cols.len().checked_sub(1) else {
        return Ok(None);
    };
    let rows = cols[0].len();
    let field = cols[0][0].field();
    let mut m: Vec<Vec<S>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut prev = S::one(&field);
    for col in 0..last {
        let Some(piv) = (col..rows).find(|&r| !m[r][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(col, piv);
        let pivot_row = m[col].clone();
        let pivot = &pivot_row[col];
        for row in &mut m[col + 1..] {
            let factor = std::mem::replace(&mut row[col], S::zero(&field));
            for (v, pv) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                let mut t = v.mul(pivot);
                if !factor.is_exact_zero() && !pv.is_exact_zero() {
                    t = t.sub(&factor.mul(pv));
                }
                *v = if t.is_exact_zero() { t } else { t.exact_quotient(&prev)? };
            }
        }
        prev = pivot.clone();
    }
    if (last..rows).any(|r| !m[r][last].is_zero()) {
        return Ok(None);
    }
    let mut c = vec![S::zero(&field); cols.len()];
    c[last] = prev;
    for k in (0..last).rev() {
        let mut acc = m[k][last].mul(&c[last]);
        for j in k + 1..last {
            if !m[k][j].is_exact_zero() && !c[j].is_exact_zero() {
                acc = acc.add(&m[k][j].mul(&c[j]));
            }
        }
        c[k] = if acc.is_exact_zero() { acc } else { acc.neg().exact_quotient(&m[k][k])? };
    }
    Ok(Some(c))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Inversion<S: Scalar> {
    Inverse(AlgElement<S>),
    /// A nonzero `s` with `s * t = 0`: the algebra is split.
    ZeroDivisor(AlgElement<S>),
}

impl<S: Scalar> AlgElement<S> {
    /// Two-sided inverse, or a zero-divisor witness.
    pub fn try_inverse(&self) -> Result<Inversion<S>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let alg = self.alg.clone();
        if let Some(c) = self.as_scalar() {
            return Ok(Inversion::Inverse(alg.scalar(c.inv()?)));
        }
        let p = alg.p() as u64;
        // A p-central t with t^p = c != 0 has inverse c^-1 t^(p-1).
        let below = self.power(p - 1);
        let top = below.mul(self);
        if let Some(c) = top.as_scalar() {
            if c.is_zero() {
                let mut prev = self.clone();
                loop {
                    let next = prev.mul(self);
                    if next.is_zero() {
                        return Ok(Inversion::ZeroDivisor(prev));
                    }
                    prev = next;
                }
            }
            let s = below.scale(&c.inv()?);
            return self.checked(s);
        }
        self.inverse_by_minimal_polynomial(&alg)
    }

    /// From the first relation `t^d + c_(d-1) t^(d-1) + ... + c_0 = 0`:
    /// if `c_0 != 0` the inverse is a polynomial in `t`, otherwise
    /// `t^(d-1) + ... + c_1` is killed by `t`.
    fn inverse_by_minimal_polynomial(&self, alg: &SymbolAlgebra<S>) -> Result<Inversion<S>> {
        let n = alg.p() as usize;
        let mut powers = vec![alg.one(), self.clone()];
        let c = loop {
            let cols: Vec<Vec<S>> = powers.iter().map(|e| e.coeffs.clone()).collect();
            if let Some(c) = dependency(&cols)? {
                break c;
            }
            if powers.len() > n {
                return Err(Error::WitnessVerificationFailed(format!("no relation among the first {} powers", n + 1)));
            }
            powers.push(powers.last().unwrap().mul(self));
        };
        let g = c.iter().fold(S::zero(alg.field()), |g, ck| g.common_factor(ck));
        let c = if g.is_zero() { c } else { c.iter().map(|ck| ck.exact_quotient(&g)).collect::<Result<Vec<S>>>()? };
        let tail = powers[..powers.len() - 1]
            .iter()
            .zip(&c[1..])
            .fold(alg.zero(), |acc, (e, ck)| acc.add(&e.scale(ck)));
        if c[0].is_zero() {
            if tail.is_zero() || !tail.mul(self).is_zero() {
                return Err(Error::WitnessVerificationFailed("relation does not give a zero divisor".into()));
            }
            return Ok(Inversion::ZeroDivisor(tail));
        }
        // t * tail = -c_0, checked before dividing so the products stay free of denominators
        let target = alg.scalar(c[0].neg());
        if tail.mul(self) != target || self.mul(&tail) != target {
            return Err(Error::WitnessVerificationFailed("inverse is not two-sided".into()));
        }
        Ok(Inversion::Inverse(tail.scale(&c[0].inv()?.neg())))
    }

    fn checked(&self, s: AlgElement<S>) -> Result<Inversion<S>> {
        let one = self.alg.one();
        if s.mul(self) != one || self.mul(&s) != one {
            return Err(Error::WitnessVerificationFailed("inverse is not two-sided".into()));
        }
        Ok(Inversion::Inverse(s))
    }

    /// The inverse; `NotInvertible` carries a printed zero-divisor witness.
    pub fn inverse(&self) -> Result<AlgElement<S>> {
        match self.try_inverse()? {
            Inversion::Inverse(s) => Ok(s),
            Inversion::ZeroDivisor(w) => Err(Error::NotInvertible { witness: w.to_string() }),
        }
    }
}
