//! Eigen-decomposition of an element under `ad(v) = v x - x v` for an
//! Artin-Schreier `x`.
//!
//! `ad` satisfies `ad^p = ad`, so it is diagonalisable with eigenvalues in
//! F_p. With `t = t_0 + ... + t_{p-1}` and `ad(t_i) = i t_i` we get
//! `ad^k(t) = sum_i i^k t_i`; the parts are recovered by inverting the
//! Vandermonde matrix on the nodes `0, ..., p-1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::AlgElement;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fp;

/// `parts[i]` is the component with `ad`-eigenvalue `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdComponents<S: Scalar> {
    pub parts: Vec<AlgElement<S>>,
}

impl<S: Scalar> AdComponents<S> {
    pub fn sum(&self) -> AlgElement<S> {
        let mut it = self.parts.iter();
        let first = it.next().expect("at least one component").clone();
        it.fold(first, |acc, t| acc.add(t))
    }
}

type Matrix = Vec<Vec<u32>>;

static VANDERMONDE: OnceLock<Mutex<HashMap<u32, Arc<Matrix>>>> = OnceLock::new();

/// Inverse over F_p of `V[k][i] = i^k`, `0 <= i, k < p`. Computed once per prime.
pub fn vandermonde_inverse(p: u32) -> Arc<Matrix> {
    let cache = VANDERMONDE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Arc::clone(guard.entry(p).or_insert_with(|| Arc::new(invert_vandermonde(p))))
}

fn invert_vandermonde(p: u32) -> Matrix {
    let n = p as usize;
    let mut m: Matrix = (0..n)
        .map(|k| {
            let mut row: Vec<u32> = (0..n).map(|i| fp::pow(p, i as u32, k as u64)).collect();
            row.extend((0..n).map(|c| (c == k) as u32));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).expect("Vandermonde matrix on distinct nodes is invertible");
        m.swap(col, piv);
        let inv = fp::inv(p, m[col][col]);
        for v in m[col].iter_mut() {
            *v = fp::mul(p, *v, inv);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = fp::sub(p, *v, fp::mul(p, f, pv));
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl<S: Scalar> AlgElement<S> {
    /// `v x - x v`.
    pub fn ad(&self, x_el: &Self) -> Self {
        self.mul(x_el).sub(&x_el.mul(self))
    }

    /// Splits `self` into eigencomponents of `v -> v x_el - x_el v`.
    pub fn ad_decompose(&self, x_el: &Self) -> Result<AdComponents<S>> {
        if x_el.is_artin_schreier().is_none() {
            return Err(Error::NotArtinSchreier);
        }
        let p = self.alg.p();
        let mut iterates = Vec::with_capacity(p as usize);
        let mut cur = self.clone();
        for _ in 0..p {
            let next = cur.ad(x_el);
            iterates.push(cur);
            cur = next;
        }
        let w = vandermonde_inverse(p);
        let parts = (0..p as usize)
            .map(|i| {
                iterates
                    .iter()
                    .zip(&w[i])
                    .filter(|(_, &c)| c != 0)
                    .fold(self.alg.zero(), |acc, (v, &c)| acc.add(&v.scale_int(c)))
            })
            .collect();
        Ok(AdComponents { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SymbolAlgebra;
    use crate::field::FieldDescriptor;
    use crate::parse::parse_scalar;
    use crate::ratfunc::RatFunc;

    fn alg(p: u64) -> SymbolAlgebra<RatFunc> {
        let f = FieldDescriptor::rational(p).unwrap();
        SymbolAlgebra::new(p, parse_scalar("a", &f).unwrap(), parse_scalar("b", &f).unwrap(), f).unwrap()
    }

    #[test]
    fn vandermonde_inverse_is_inverse() {
        for p in [2u32, 3, 5, 7] {
            let w = vandermonde_inverse(p);
            let n = p as usize;
            for i in 0..n {
                for j in 0..n {
                    // (W V)[i][j] = sum_k W[i][k] j^k
                    let s = (0..n).fold(0, |acc, k| fp::add(p, acc, fp::mul(p, w[i][k], fp::pow(p, j as u32, k as u64))));
                    assert_eq!(s, (i == j) as u32);
                }
            }
            assert!(Arc::ptr_eq(&w, &vandermonde_inverse(p)));
        }
    }

    #[test]
    fn columns_are_eigenspaces_of_ad_x() {
        let a = alg(3);
        let t = a.parse("x + y + 2*x*y^2").unwrap();
        let parts = t.ad_decompose(&a.x()).unwrap().parts;
        assert_eq!(parts[0], a.x());
        assert_eq!(parts[1], a.y());
        assert_eq!(parts[2], a.parse("2*x*y^2").unwrap());
        for (i, part) in parts.iter().enumerate() {
            assert_eq!(part.ad(&a.x()), part.scale_int(i as u32));
        }
    }

    #[test]
    fn artin_schreier_element_is_its_own_zero_part() {
        let a = alg(5);
        let z = a.parse("x + y").unwrap();
        let parts = z.ad_decompose(&z).unwrap().parts;
        assert_eq!(parts[0], z);
        assert!(parts[1..].iter().all(AlgElement::is_zero));
    }

    #[test]
    fn requires_artin_schreier() {
        let a = alg(3);
        assert_eq!(a.x().ad_decompose(&a.y()), Err(Error::NotArtinSchreier));
    }
}
