//! The norm of the cyclic extension `F[x]/F`: `N(u) = prod_{i<p} u(x + i)`.
//!
//! Computed with its own arithmetic in `F[x]/(x^p - x - alpha)` (Horner
//! substitution, schoolbook products), so it can be checked against
//! `(u y)^p = N(u) beta` evaluated through the algebra multiplication.

use super::AlgElement;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};

struct Quotient<'a, S> {
    p: usize,
    alpha: &'a S,
    field: FieldDescriptor,
}

impl<S: Scalar> Quotient<'_, S> {
    fn zero(&self) -> Vec<S> {
        vec![S::zero(&self.field); self.p]
    }

    /// Multiply by `x`, folding `x^p` back as `x + alpha`.
    fn times_x(&self, f: &[S]) -> Vec<S> {
        let mut out = self.zero();
        let top = &f[self.p - 1];
        out[1..self.p].clone_from_slice(&f[..self.p - 1]);
        out[0] = top.mul(self.alpha);
        out[1 % self.p] = out[1 % self.p].add(top);
        out
    }

    fn mul(&self, f: &[S], g: &[S]) -> Vec<S> {
        // Horner in g's variable: f*g = (((g_{p-1} f) x + g_{p-2} f) x + ...)
        let mut acc = self.zero();
        for gk in g.iter().rev() {
            acc = self.times_x(&acc);
            for (slot, fc) in acc.iter_mut().zip(f) {
                *slot = slot.add(&fc.mul(gk));
            }
        }
        acc
    }

    /// `f(x + i)` by Horner: `(..(f_{p-1}(x+i) + f_{p-2})(x+i) + ..) + f_0`.
    fn substitute_shift(&self, f: &[S], i: u32) -> Vec<S> {
        let shift = S::from_int(&self.field, i as i64);
        let mut acc = self.zero();
        for fc in f.iter().rev() {
            let tx = self.times_x(&acc);
            acc = tx.iter().zip(&acc).map(|(u, v)| u.add(&v.mul(&shift))).collect();
            acc[0] = acc[0].add(fc);
        }
        acc
    }
}

impl<S: Scalar> AlgElement<S> {
    /// `N_{F[x]/F}(self)` for a nonzero element of the subfield `F[x]`.
    pub fn norm_fx(&self) -> Result<S> {
        if !self.in_fx() {
            return Err(Error::NotInSubfield);
        }
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = self.alg.p() as usize;
        let q = Quotient { p, alpha: self.alg.alpha(), field: *self.alg.field() };
        let u: Vec<S> = (0..p).map(|i| self.coeffs[i * p].clone()).collect();
        let mut acc = u.clone();
        for i in 1..p as u32 {
            acc = q.mul(&acc, &q.substitute_shift(&u, i));
        }
        if !acc[1..].iter().all(S::is_zero) {
            return Err(Error::WitnessVerificationFailed("norm did not land in the centre".into()));
        }
        Ok(acc.swap_remove(0))
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::SymbolAlgebra;
    use crate::error::Error;
    use crate::field::{FieldDescriptor, Scalar};
    use crate::parse::parse_scalar;
    use crate::ratfunc::RatFunc;

    fn alg(p: u64, alpha: &str) -> SymbolAlgebra<RatFunc> {
        let f = FieldDescriptor::rational(p).unwrap();
        SymbolAlgebra::new(p, parse_scalar(alpha, &f).unwrap(), parse_scalar("b", &f).unwrap(), f).unwrap()
    }

    #[test]
    fn norm_of_lambda_plus_x() {
        for p in [2u64, 3, 5] {
            let a = alg(p, "a");
            let f = *a.field();
            let l: RatFunc = parse_scalar("a^2 + 3*b/(a + 1)", &f).unwrap();
            let u = a.x().add_scalar(&l);
            let expected = l.frobenius().sub(&l).add(a.alpha());
            assert_eq!(u.norm_fx().unwrap(), expected);
            assert_eq!(a.x().norm_fx().unwrap(), *a.alpha());
        }
    }

    #[test]
    fn norm_of_one_plus_x_over_alpha_one() {
        // x^2 = x + 1 at p = 2: (1 + x) x = x + x + 1 = 1
        let a = alg(2, "1");
        let u = a.parse("1 + x").unwrap();
        assert_eq!(u.norm_fx().unwrap(), RatFunc::one(a.field()));
    }

    #[test]
    fn norm_errors() {
        let a = alg(3, "a");
        assert_eq!(a.y().norm_fx(), Err(Error::NotInSubfield));
        assert_eq!(a.zero().norm_fx(), Err(Error::ZeroElement));
    }
}
