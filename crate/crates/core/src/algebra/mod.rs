//! The symbol algebra `[alpha, beta)_{p,F}`: the `p^2`-dimensional algebra
//! generated over `F` by `x`, `y` with `x^p - x = alpha`, `y^p = beta` and
//! `y x y^-1 = x + 1`.
//!
//! Elements are stored in the normal form `sum c_ij x^i y^j`, `0 <= i, j < p`.
//! Moving `y^j` past a polynomial uses `y^j f(x) = f(x + j) y^j`; the
//! resulting `x`-degrees (up to `2p - 2`) are reduced with `x^p = x + alpha`
//! and `y`-degrees with `y^p = beta`.

mod decompose;
mod inverse;
mod norm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::fp;
use crate::parse::{self, Bindings, Evaluate};

pub use decompose::{vandermonde_inverse, AdComponents};
pub use inverse::{dependency, Inversion};

struct Inner<S> {
    p: u32,
    alpha: S,
    beta: S,
    field: FieldDescriptor,
    /// `shift[j][c][e]`: coefficient of `x^e` in `(x + j)^c`.
    shift: Vec<Vec<Vec<u32>>>,
}

/// Handle to an algebra `[alpha, beta)_{p,F}`. Cheap to clone.
pub struct SymbolAlgebra<S> {
    inner: Arc<Inner<S>>,
}

impl<S> Clone for SymbolAlgebra<S> {
    fn clone(&self) -> Self {
        SymbolAlgebra { inner: Arc::clone(&self.inner) }
    }
}

impl<S: Scalar> PartialEq for SymbolAlgebra<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.field == other.inner.field
                && self.inner.alpha == other.inner.alpha
                && self.inner.beta == other.inner.beta)
    }
}

impl<S: Scalar> fmt::Debug for SymbolAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolAlgebra({self})")
    }
}

impl<S: Scalar> fmt::Display for SymbolAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})_{}", self.inner.alpha, self.inner.beta, self.inner.p)
    }
}

fn binomial_table(p: u32) -> Vec<Vec<u32>> {
    let n = p as usize;
    let mut c = vec![vec![0u32; n]; n];
    for i in 0..n {
        c[i][0] = 1 % p;
        for k in 1..=i {
            c[i][k] = fp::add(p, c[i - 1][k - 1], if k < i { c[i - 1][k] } else { 0 });
        }
    }
    c
}

impl<S: Scalar> SymbolAlgebra<S> {
    pub fn new(p: u64, alpha: S, beta: S, field: FieldDescriptor) -> Result<Self> {
        let p = fp::check_prime(p)?;
        if field.prime() != p {
            return Err(Error::FieldMismatch(format!("algebra of degree {p} over a field of characteristic {}", field.prime())));
        }
        if alpha.field() != field || beta.field() != field {
            return Err(Error::FieldMismatch(format!("slots must lie in {field}")));
        }
        if beta.is_zero() {
            return Err(Error::InvalidSlot("the right slot must be nonzero".into()));
        }
        let binom = binomial_table(p);
        let n = p as usize;
        let shift = (0..n)
            .map(|j| {
                (0..n)
                    .map(|c| {
                        (0..n)
                            .map(|e| if e <= c { fp::mul(p, binom[c][e], fp::pow(p, j as u32, (c - e) as u64)) } else { 0 })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SymbolAlgebra { inner: Arc::new(Inner { p, alpha, beta, field, shift }) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn alpha(&self) -> &S {
        &self.inner.alpha
    }

    pub fn beta(&self) -> &S {
        &self.inner.beta
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.inner.field
    }

    fn dim(&self) -> usize {
        (self.inner.p * self.inner.p) as usize
    }

    pub fn zero(&self) -> AlgElement<S> {
        AlgElement { alg: self.clone(), coeffs: vec![S::zero(&self.inner.field); self.dim()] }
    }

    pub fn scalar(&self, c: S) -> AlgElement<S> {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn one(&self) -> AlgElement<S> {
        self.scalar(S::one(&self.inner.field))
    }

    /// `c * x^i * y^j` for `i, j < p`.
    pub fn monomial(&self, c: S, i: usize, j: usize) -> AlgElement<S> {
        let n = self.inner.p as usize;
        assert!(i < n && j < n, "monomial exponent out of range");
        let mut e = self.zero();
        e.coeffs[i * n + j] = c;
        e
    }

    pub fn x(&self) -> AlgElement<S> {
        self.monomial(S::one(&self.inner.field), 1 % self.inner.p as usize, 0)
    }

    pub fn y(&self) -> AlgElement<S> {
        self.monomial(S::one(&self.inner.field), 0, 1 % self.inner.p as usize)
    }

    /// Element with grid entry `(i, j)` = `coeffs[i * p + j]`.
    pub fn element(&self, coeffs: Vec<S>) -> Result<AlgElement<S>> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidSlot(format!("expected {} coefficients, got {}", self.dim(), coeffs.len())));
        }
        Ok(AlgElement { alg: self.clone(), coeffs })
    }

    /// Polynomial `sum c_i x^i` in the subfield `F[x]`.
    pub fn poly_in_x(&self, coeffs: &[S]) -> AlgElement<S> {
        let n = self.inner.p as usize;
        assert!(coeffs.len() <= n, "polynomial in x must have degree < p");
        let mut e = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.coeffs[i * n] = c.clone();
        }
        e
    }

    /// Parses an element expression in `x`, `y`, `a`, `b` and bound names.
    pub fn parse(&self, text: &str) -> Result<AlgElement<S>> {
        self.parse_with(text, None)
    }

    pub fn parse_with(&self, text: &str, bindings: Option<&Bindings<S>>) -> Result<AlgElement<S>> {
        let e = parse::parse_expr(text)?;
        ElementContext { alg: self, bindings }.eval(&e)
    }

    /// Reduces a polynomial in `x` of degree `<= 2p - 2` with `x^p = x + alpha`.
    fn reduce_x(&self, mut poly: Vec<S>) -> Vec<S> {
        let n = self.inner.p as usize;
        for e in (n..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[e], S::zero(&self.inner.field));
            if c.is_exact_zero() {
                continue;
            }
            poly[e - n + 1] = poly[e - n + 1].add(&c);
            poly[e - n] = poly[e - n].add(&c.mul(&self.inner.alpha));
        }
        poly.truncate(n);
        poly
    }

    /// `f(x + j)` for `f` of degree `< p`.
    fn shift(&self, f: &[S], j: usize) -> Vec<S> {
        if j == 0 {
            return f.to_vec();
        }
        let n = self.inner.p as usize;
        let table = &self.inner.shift[j];
        (0..n)
            .map(|e| {
                let mut acc = S::zero(&self.inner.field);
                for (c, fc) in f.iter().enumerate().skip(e) {
                    if !fc.is_exact_zero() {
                        acc = acc.add(&fc.scale(table[c][e]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// An element of a symbol algebra as a `p x p` grid of scalars; entry
/// `(i, j)` is the coefficient of `x^i y^j`.
#[derive(Clone)]
pub struct AlgElement<S> {
    alg: SymbolAlgebra<S>,
    coeffs: Vec<S>,
}

impl<S: Scalar> AlgElement<S> {
    pub fn algebra(&self) -> &SymbolAlgebra<S> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &S {
        &self.coeffs[i * self.alg.p() as usize + j]
    }

    fn check_same(&self, o: &Self) {
        assert!(self.alg == o.alg, "elements of different algebras: {} and {}", self.alg, o.alg);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// The scalar `c` if this element is `c * 1`.
    pub fn as_scalar(&self) -> Option<S> {
        if self.coeffs[1..].iter().all(S::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True if only column `j = 0` is nonzero, i.e. the element lies in `F[x]`.
    pub fn in_fx(&self) -> bool {
        let n = self.alg.p() as usize;
        self.coeffs.iter().enumerate().all(|(k, c)| k % n == 0 || c.is_zero())
    }

    fn column(&self, j: usize) -> Vec<S> {
        let n = self.alg.p() as usize;
        (0..n).map(|i| self.coeffs[i * n + j].clone()).collect()
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        AlgElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        self.check_same(o);
        AlgElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| f(x, y)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x.add(y))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x.sub(y))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_int(&self, k: u32) -> Self {
        self.map(|x| x.scale(k))
    }

    pub fn add_scalar(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].add(c);
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_same(o);
        let alg = &self.alg;
        let n = alg.p() as usize;
        let field = *alg.field();
        let zero = S::zero(&field);
        let mut low: Vec<Option<Vec<S>>> = vec![None; n];
        let mut high: Vec<Option<Vec<S>>> = vec![None; n];
        let cols_o: Vec<Option<Vec<S>>> = (0..n)
            .map(|l| {
                let c = o.column(l);
                if c.iter().all(S::is_exact_zero) { None } else { Some(c) }
            })
            .collect();
        for j in 0..n {
            let sj = self.column(j);
            if sj.iter().all(S::is_exact_zero) {
                continue;
            }
            for (l, tl) in cols_o.iter().enumerate() {
                let Some(tl) = tl else { continue };
                let shifted = alg.shift(tl, j);
                let (slot, m) = if j + l < n { (&mut low, j + l) } else { (&mut high, j + l - n) };
                let acc = slot[m].get_or_insert_with(|| vec![zero.clone(); 2 * n - 1]);
                for (e1, c1) in sj.iter().enumerate() {
                    if c1.is_exact_zero() {
                        continue;
                    }
                    for (e2, c2) in shifted.iter().enumerate() {
                        if c2.is_exact_zero() {
                            continue;
                        }
                        acc[e1 + e2] = acc[e1 + e2].add(&c1.mul(c2));
                    }
                }
            }
        }
        let mut coeffs = vec![zero.clone(); n * n];
        for m in 0..n {
            let col = match (low[m].take(), high[m].take()) {
                (None, None) => continue,
                (Some(lo), None) => lo,
                (lo, Some(hi)) => {
                    let mut col = lo.unwrap_or_else(|| vec![zero.clone(); 2 * n - 1]);
                    for (c, h) in col.iter_mut().zip(&hi) {
                        if !h.is_exact_zero() {
                            *c = c.add(&h.mul(alg.beta()));
                        }
                    }
                    col
                }
            };
            for (i, c) in alg.reduce_x(col).into_iter().enumerate() {
                coeffs[i * n + m] = c;
            }
        }
        AlgElement { alg: alg.clone(), coeffs }
    }

    /// `self^e` by repeated squaring; `self^0 = 1`.
    pub fn power(&self, mut e: u64) -> Self {
        let mut acc = self.alg.one();
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

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `c` with `self^p - self = c`, for non-central `self`.
    pub fn is_artin_schreier(&self) -> Option<S> {
        if self.as_scalar().is_some() {
            return None;
        }
        self.power(self.alg.p() as u64).sub(self).as_scalar()
    }

    /// `c` with `self^p = c`, for non-central `self`.
    pub fn is_p_central(&self) -> Option<S> {
        if self.as_scalar().is_some() {
            return None;
        }
        self.power(self.alg.p() as u64).as_scalar()
    }

    /// `u * self * u^-1`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        let inv = u.inverse()?;
        Ok(u.mul(self).mul(&inv))
    }
}

/// `u * t * u^-1`.
pub fn conjugate<S: Scalar>(u: &AlgElement<S>, t: &AlgElement<S>) -> Result<AlgElement<S>> {
    t.conjugate_by(u)
}

impl<S: Scalar> PartialEq for AlgElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for AlgElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElement({self} in {})", self.alg)
    }
}

/// Canonical form: `c*x^i*y^j` terms in row-major `(i, j)` order.
impl<S: Scalar> fmt::Display for AlgElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.alg.p() as usize;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let (i, j) = (k / n, k % n);
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            for (v, e) in [('x', i), ('y', j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let cs = c.to_string();
            if factors.is_empty() {
                f.write_str(&cs)?;
            } else if cs == "1" {
                f.write_str(&factors.join("*"))?;
            } else if c.is_compound() {
                write!(f, "({cs})*{}", factors.join("*"))?;
            } else {
                write!(f, "{cs}*{}", factors.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr<&AlgElement<S>> for &AlgElement<S> {
            type Output = AlgElement<S>;
            fn $method(self, o: &AlgElement<S>) -> AlgElement<S> {
                AlgElement::$method(self, o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<S: Scalar> Neg for &AlgElement<S> {
    type Output = AlgElement<S>;
    fn neg(self) -> AlgElement<S> {
        AlgElement::neg(self)
    }
}


struct ElementContext<'a, S> {
    alg: &'a SymbolAlgebra<S>,
    bindings: Option<&'a Bindings<S>>,
}

impl<S: Scalar> Evaluate for ElementContext<'_, S> {
    type Out = AlgElement<S>;

    fn int(&self, digits: &str) -> AlgElement<S> {
        let field = self.alg.field();
        self.alg.scalar(S::from_int(field, parse::literal_mod(digits, field.prime())))
    }

    fn var(&self, name: &str, position: usize) -> Result<AlgElement<S>> {
        let field = self.alg.field();
        match name {
            "x" => Ok(self.alg.x()),
            "y" => Ok(self.alg.y()),
            "a" => Ok(self.alg.scalar(S::variable(field, 'a'))),
            "b" => Ok(self.alg.scalar(S::variable(field, 'b'))),
            _ => match self.bindings.and_then(|b| b.get(name)) {
                Some(v) => Ok(self.alg.scalar(v.clone())),
                None => Err(Error::Syntax { position, message: format!("unknown symbol `{name}`") }),
            },
        }
    }

    fn add(&self, x: AlgElement<S>, y: AlgElement<S>) -> AlgElement<S> {
        x.add(&y)
    }

    fn sub(&self, x: AlgElement<S>, y: AlgElement<S>) -> AlgElement<S> {
        x.sub(&y)
    }

    fn neg(&self, x: AlgElement<S>) -> AlgElement<S> {
        x.neg()
    }

    fn mul(&self, x: AlgElement<S>, y: AlgElement<S>) -> AlgElement<S> {
        x.mul(&y)
    }

    fn div(&self, x: AlgElement<S>, y: AlgElement<S>) -> Result<AlgElement<S>> {
        match y.as_scalar() {
            Some(c) => Ok(x.scale(&c.inv()?)),
            None => Ok(x.mul(&y.inverse()?)),
        }
    }

    fn pow(&self, x: AlgElement<S>, e: u64) -> AlgElement<S> {
        x.power(e)
    }
}
