#![allow(dead_code)]

use palg_core::algebra::{AlgElement, SymbolAlgebra};
use palg_core::field::{FieldDescriptor, Scalar};
use palg_core::laurent::LaurentScalar;
use palg_core::parse::parse_scalar;
use palg_core::ratfunc::RatFunc;
use palg_core::sample::{self, SampleRng, ScalarShape};

pub fn rational(p: u64) -> FieldDescriptor {
    FieldDescriptor::rational(p).unwrap()
}

pub fn laurent(p: u64, window: u32) -> FieldDescriptor {
    FieldDescriptor::laurent(p, window).unwrap()
}

pub fn rf(p: u64, text: &str) -> RatFunc {
    parse_scalar(text, &rational(p)).unwrap()
}

pub fn algebra<S: Scalar>(p: u64, alpha: &str, beta: &str, field: FieldDescriptor) -> SymbolAlgebra<S> {
    SymbolAlgebra::new(p, parse_scalar(alpha, &field).unwrap(), parse_scalar(beta, &field).unwrap(), field).unwrap()
}

/// `sum c * a^i * b^j` built from terms.
pub fn poly<S: Scalar>(field: &FieldDescriptor, terms: &[(u32, u32, u32)]) -> S {
    let a = S::variable(field, 'a');
    let b = S::variable(field, 'b');
    terms
        .iter()
        .fold(S::zero(field), |acc, &(c, i, j)| acc.add(&a.pow(i as u64).mul(&b.pow(j as u64)).scale(c % field.prime())))
}

pub const SMALL: ScalarShape = ScalarShape { max_deg: 2, max_terms: 2, denominators: false };
pub const WITH_DENOMINATORS: ScalarShape = ScalarShape { max_deg: 1, max_terms: 2, denominators: true };

pub fn random_algebra(rng: &mut SampleRng, p: u64, shape: ScalarShape) -> SymbolAlgebra<RatFunc> {
    let f = rational(p);
    let alpha = sample::scalar(rng, &f, shape);
    let beta = sample::nonzero_scalar(rng, &f, shape);
    SymbolAlgebra::new(p, alpha, beta, f).unwrap()
}

/// Multiplication by generators only, independent of the engine's product:
/// `x` shifts rows and folds `x^p = x + alpha`; `y` moves `x^i` past itself
/// as `(x + 1)^i` and folds `y^p = beta`.
pub struct Oracle<S: Scalar> {
    p: usize,
    alpha: S,
    beta: S,
    field: FieldDescriptor,
    binom: Vec<Vec<u32>>,
}

impl<S: Scalar> Oracle<S> {
    pub fn new(alg: &SymbolAlgebra<S>) -> Self {
        let p = alg.p() as usize;
        let mut binom = vec![vec![0u32; p]; p];
        for n in 0..p {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = (binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 }) % p as u32;
            }
        }
        Oracle { p, alpha: alg.alpha().clone(), beta: alg.beta().clone(), field: *alg.field(), binom }
    }

    fn zero(&self) -> Vec<S> {
        vec![S::zero(&self.field); self.p * self.p]
    }

    pub fn left_x(&self, t: &[S]) -> Vec<S> {
        let n = self.p;
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                let d = &t[i * n + j];
                if d.is_exact_zero() {
                    continue;
                }
                if i + 1 < n {
                    out[(i + 1) * n + j] = out[(i + 1) * n + j].add(d);
                } else {
                    out[(1 % n) * n + j] = out[(1 % n) * n + j].add(d);
                    out[j] = out[j].add(&d.mul(&self.alpha));
                }
            }
        }
        out
    }

    pub fn left_y(&self, t: &[S]) -> Vec<S> {
        let n = self.p;
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                let d = &t[i * n + j];
                if d.is_exact_zero() {
                    continue;
                }
                let (col, c) = if j + 1 < n { (j + 1, d.clone()) } else { (0, d.mul(&self.beta)) };
                for k in 0..=i {
                    let b = self.binom[i][k];
                    if b != 0 {
                        out[k * n + col] = out[k * n + col].add(&c.scale(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, s: &[S], t: &[S]) -> Vec<S> {
        let n = self.p;
        let mut acc = self.zero();
        let mut yt = t.to_vec();
        for j in 0..n {
            let mut xyt = yt.clone();
            for i in 0..n {
                let c = &s[i * n + j];
                if !c.is_exact_zero() {
                    for (slot, v) in acc.iter_mut().zip(&xyt) {
                        if !v.is_exact_zero() {
                            *slot = slot.add(&c.mul(v));
                        }
                    }
                }
                xyt = self.left_x(&xyt);
            }
            yt = self.left_y(&yt);
        }
        acc
    }

    pub fn product(&self, s: &AlgElement<S>, t: &AlgElement<S>) -> AlgElement<S> {
        s.algebra().element(self.mul(s.coeffs(), t.coeffs())).unwrap()
    }

    pub fn power(&self, s: &AlgElement<S>, e: u64) -> AlgElement<S> {
        (0..e).fold(s.algebra().one(), |acc, _| self.product(&acc, s))
    }
}

pub fn laurent_algebra(p: u64, window: u32, alpha: &str, beta: &str) -> SymbolAlgebra<LaurentScalar> {
    algebra(p, alpha, beta, laurent(p, window))
}
