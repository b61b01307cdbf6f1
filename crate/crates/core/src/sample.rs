//! Seeded random scalars and elements.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElement, SymbolAlgebra};
use crate::field::{FieldDescriptor, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random scalars: polynomials in `a, b` with exponents up to
/// `max_deg` and at most `max_terms` terms, optionally over a random
/// polynomial denominator.
#[derive(Clone, Copy, Debug)]
pub struct ScalarShape {
    pub max_deg: u32,
    pub max_terms: usize,
    pub denominators: bool,
}

impl Default for ScalarShape {
    fn default() -> Self {
        ScalarShape { max_deg: 2, max_terms: 3, denominators: false }
    }
}

/// Random polynomial in `a, b`, possibly zero.
pub fn polynomial<S: Scalar, R: Rng>(rng: &mut R, field: &FieldDescriptor, max_deg: u32, max_terms: usize) -> S {
    let p = field.prime();
    let a = S::variable(field, 'a');
    let b = S::variable(field, 'b');
    let mut acc = S::zero(field);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let c = rng.gen_range(1..p);
        let (i, j) = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
        acc = acc.add(&a.pow(i as u64).mul(&b.pow(j as u64)).scale(c));
    }
    acc
}

pub fn scalar<S: Scalar, R: Rng>(rng: &mut R, field: &FieldDescriptor, shape: ScalarShape) -> S {
    let num: S = polynomial(rng, field, shape.max_deg, shape.max_terms);
    if !shape.denominators || rng.gen_bool(0.5) {
        return num;
    }
    loop {
        let den: S = polynomial(rng, field, shape.max_deg.min(1), 2);
        if !den.is_zero() {
            return num.div(&den).expect("nonzero denominator");
        }
    }
}

pub fn nonzero_scalar<S: Scalar, R: Rng>(rng: &mut R, field: &FieldDescriptor, shape: ScalarShape) -> S {
    loop {
        let s: S = scalar(rng, field, shape);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random element; each grid entry is nonzero with probability `density`.
pub fn element<S: Scalar, R: Rng>(rng: &mut R, alg: &SymbolAlgebra<S>, shape: ScalarShape, density: f64) -> AlgElement<S> {
    let n = alg.p() as usize;
    let field = *alg.field();
    let coeffs = (0..n * n)
        .map(|_| if rng.gen_bool(density) { scalar(rng, &field, shape) } else { S::zero(&field) })
        .collect();
    alg.element(coeffs).expect("p^2 coefficients")
}

/// Random nonzero element of the subfield `F[x]`.
pub fn in_fx<S: Scalar, R: Rng>(rng: &mut R, alg: &SymbolAlgebra<S>, shape: ScalarShape) -> AlgElement<S> {
    let field = *alg.field();
    loop {
        let coeffs: Vec<S> = (0..alg.p()).map(|_| scalar(rng, &field, shape)).collect();
        let u = alg.poly_in_x(&coeffs);
        if !u.is_zero() {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    #[test]
    fn seeded_streams_repeat() {
        let f = FieldDescriptor::rational(3).unwrap();
        let shape = ScalarShape { denominators: true, ..Default::default() };
        let draw = |seed| {
            let mut r = rng(seed);
            (0..20).map(|_| scalar::<RatFunc, _>(&mut r, &f, shape).to_string()).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_ne!(draw(11), draw(12));
    }
}
