//! Dense polynomials over F_p in one variable `a` and in two variables `a, b`.
//!
//! A univariate polynomial is a `Vec<u32>` of coefficients, lowest degree
//! first, with no trailing zeros. A bivariate polynomial is stored as an
//! element of `F_p[a][b]`: one univariate coefficient per power of `b`.

use std::cmp::Ordering;

use crate::fp;

pub type UPoly = Vec<u32>;

pub fn utrim(mut f: UPoly) -> UPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn uadd(p: u32, f: &[u32], g: &[u32]) -> UPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = f.get(i).copied().unwrap_or(0);
        let y = g.get(i).copied().unwrap_or(0);
        out.push(fp::add(p, x, y));
    }
    utrim(out)
}

pub fn usub(p: u32, f: &[u32], g: &[u32]) -> UPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = f.get(i).copied().unwrap_or(0);
        let y = g.get(i).copied().unwrap_or(0);
        out.push(fp::sub(p, x, y));
    }
    utrim(out)
}

pub fn uscale(p: u32, f: &[u32], k: u32) -> UPoly {
    if k.is_multiple_of(p) {
        return Vec::new();
    }
    f.iter().map(|&c| fp::mul(p, c, k)).collect()
}

pub fn umul(p: u32, f: &[u32], g: &[u32]) -> UPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let pp = p as u64;
    let mut acc = vec![0u64; f.len() + g.len() - 1];
    for (i, &x) in f.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in g.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % pp;
        }
    }
    utrim(acc.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder; `g` must be nonzero.
pub fn udivrem(p: u32, f: &[u32], g: &[u32]) -> (UPoly, UPoly) {
    assert!(!g.is_empty(), "polynomial division by zero");
    let mut r = f.to_vec();
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let lead_inv = fp::inv(p, *g.last().unwrap());
    let mut q = vec![0u32; r.len() - g.len() + 1];
    for shift in (0..q.len()).rev() {
        let c = fp::mul(p, r[shift + g.len() - 1], lead_inv);
        q[shift] = c;
        if c != 0 {
            for (k, &gk) in g.iter().enumerate() {
                r[shift + k] = fp::sub(p, r[shift + k], fp::mul(p, c, gk));
            }
        }
    }
    (utrim(q), utrim(r))
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn ugcd(p: u32, f: &[u32], g: &[u32]) -> UPoly {
    let mut x = f.to_vec();
    let mut y = g.to_vec();
    while !y.is_empty() {
        let (_, r) = udivrem(p, &x, &y);
        x = y;
        y = r;
    }
    umonic(p, &x)
}

pub fn umonic(p: u32, f: &[u32]) -> UPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => uscale(p, f, fp::inv(p, lead)),
    }
}

fn uis_one(f: &[u32]) -> bool {
    f.len() == 1 && f[0] == 1
}

pub fn ueval(p: u32, f: &[u32], x: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| fp::add(p, fp::mul(p, acc, x), c))
}

/// Polynomial in `a` and `b` over F_p, stored as coefficients in `F_p[a]` of
/// the powers of `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly2 {
    coeffs: Vec<UPoly>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { coeffs: Vec::new() }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::from_b_coeffs(vec![utrim(vec![c % p])])
    }

    pub fn monomial(c: u32, a_deg: usize, b_deg: usize) -> Self {
        let mut coeffs = vec![Vec::new(); b_deg + 1];
        let mut a = vec![0; a_deg + 1];
        a[a_deg] = c;
        coeffs[b_deg] = utrim(a);
        Self::from_b_coeffs(coeffs)
    }

    pub fn from_b_coeffs(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        Poly2 { coeffs }
    }

    /// Builds from `(a_deg, b_deg, coeff)` triples; repeated monomials add up.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut coeffs: Vec<Vec<u32>> = Vec::new();
        for (i, j, c) in terms {
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Vec::new());
            }
            if coeffs[j].len() <= i {
                coeffs[j].resize(i + 1, 0);
            }
            coeffs[j][i] = fp::add(p, coeffs[j][i], c % p);
        }
        Self::from_b_coeffs(coeffs.into_iter().map(utrim).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && uis_one(&self.coeffs[0])
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].len() == 1
    }

    pub fn b_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn b_coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    /// Nonzero terms as `(a_deg, b_deg, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(j, c)| {
            c.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(i, &v)| (i, j, v))
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// Terms sorted in descending graded-lex order (total degree, then `a`-degree).
    pub fn terms_graded_lex(&self) -> Vec<(usize, usize, u32)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by(|x, y| graded_lex(y.0, y.1, x.0, x.1));
        t
    }

    /// Leading term under graded-lex with `a > b`.
    pub fn leading_term(&self) -> Option<(usize, usize, u32)> {
        self.terms()
            .max_by(|x, y| graded_lex(x.0, x.1, y.0, y.1))
    }

    pub fn add(&self, p: u32, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let empty = Vec::new();
        Self::from_b_coeffs(
            (0..n)
                .map(|j| uadd(p, self.coeffs.get(j).unwrap_or(&empty), o.coeffs.get(j).unwrap_or(&empty)))
                .collect(),
        )
    }

    pub fn sub(&self, p: u32, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let empty = Vec::new();
        Self::from_b_coeffs(
            (0..n)
                .map(|j| usub(p, self.coeffs.get(j).unwrap_or(&empty), o.coeffs.get(j).unwrap_or(&empty)))
                .collect(),
        )
    }

    pub fn neg(&self, p: u32) -> Self {
        self.scale(p, p - 1)
    }

    pub fn scale(&self, p: u32, k: u32) -> Self {
        Self::from_b_coeffs(self.coeffs.iter().map(|c| uscale(p, c, k)).collect())
    }

    pub fn mul(&self, p: u32, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut out = vec![Vec::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_empty() {
                    continue;
                }
                let prod = umul(p, x, y);
                out[i + j] = uadd(p, &out[i + j], &prod);
            }
        }
        Self::from_b_coeffs(out)
    }

    fn mul_upoly_shift(&self, p: u32, c: &[u32], shift: usize) -> Self {
        let mut out = vec![Vec::new(); shift];
        out.extend(self.coeffs.iter().map(|x| umul(p, x, c)));
        Self::from_b_coeffs(out)
    }

    /// Raises every monomial exponent to `p` times itself: `f(a, b)^p` in characteristic `p`.
    pub fn frobenius(&self, p: u32) -> Self {
        let q = p as usize;
        Self::from_terms(p, self.terms().map(|(i, j, c)| (i * q, j * q, c)))
    }

    /// Content in `F_p[a]`, monic.
    pub fn content(&self, p: u32) -> UPoly {
        let mut g: UPoly = Vec::new();
        for c in &self.coeffs {
            if c.is_empty() {
                continue;
            }
            g = ugcd(p, &g, c);
            if uis_one(&g) {
                break;
            }
        }
        g
    }

    fn div_upoly(&self, p: u32, c: &[u32]) -> Self {
        if uis_one(c) {
            return self.clone();
        }
        Self::from_b_coeffs(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = udivrem(p, x, c);
                    debug_assert!(r.is_empty(), "inexact content division");
                    q
                })
                .collect(),
        )
    }

    pub fn primitive_part(&self, p: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.div_upoly(p, &self.content(p))
    }

    /// Pseudo-remainder of `self` by `g` with respect to `b`.
    fn pseudo_rem(&self, p: u32, g: &Self) -> Self {
        let dg = g.coeffs.len() - 1;
        let lc_g = g.coeffs[dg].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.coeffs.len() > dg {
            let dr = r.coeffs.len() - 1;
            let lc_r = r.coeffs[dr].clone();
            let lhs = r.mul_upoly_shift(p, &lc_g, 0);
            let rhs = g.mul_upoly_shift(p, &lc_r, dr - dg);
            r = lhs.sub(p, &rhs);
        }
        r
    }

    /// Exact quotient `self / g`; panics in debug builds if `g` does not divide.
    pub fn exact_div(&self, p: u32, g: &Self) -> Self {
        assert!(!g.is_zero(), "polynomial division by zero");
        if g.is_one() {
            return self.clone();
        }
        let dg = g.coeffs.len() - 1;
        let lc_g = &g.coeffs[dg];
        let mut r = self.clone();
        let mut q = vec![Vec::new(); self.coeffs.len().saturating_sub(dg)];
        while !r.is_zero() {
            let dr = r.coeffs.len() - 1;
            assert!(dr >= dg, "inexact polynomial division");
            let (lead, rem) = udivrem(p, &r.coeffs[dr], lc_g);
            assert!(rem.is_empty(), "inexact polynomial division");
            q[dr - dg] = lead.clone();
            r = r.sub(p, &g.mul_upoly_shift(p, &lead, dr - dg));
        }
        Self::from_b_coeffs(q)
    }

    fn a_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// `self(a, b0)` in `F_p[a]`.
    fn at_b(&self, p: u32, b0: u32) -> UPoly {
        self.coeffs.iter().rev().fold(Vec::new(), |acc, c| uadd(p, &uscale(p, &acc, b0), c))
    }

    /// `self(a0, b)` in `F_p[b]`.
    fn at_a(&self, p: u32, a0: u32) -> UPoly {
        utrim(self.coeffs.iter().map(|c| ueval(p, c, a0)).collect())
    }

    /// Certifies `gcd(self, o) = 1` from univariate images. If `b = b0` keeps
    /// the `a`-degree of `self`, a common factor keeps its `a`-degree there
    /// too, so coprime images bound it to degree 0 in `a`; likewise in `b`.
    /// `false` means no certificate was found, not that a factor exists.
    fn coprime_by_specialization(&self, p: u32, o: &Self) -> bool {
        let da = self.a_degree();
        let db = self.coeffs.len() - 1;
        let a_free = da == 0
            || (0..p).any(|b0| {
                let f = self.at_b(p, b0);
                f.len() == da + 1 && uis_one(&umonic(p, &ugcd(p, &f, &o.at_b(p, b0))))
            });
        a_free
            && (db == 0
                || (0..p).any(|a0| {
                    let f = self.at_a(p, a0);
                    f.len() == db + 1 && uis_one(&umonic(p, &ugcd(p, &f, &o.at_a(p, a0))))
                }))
    }

    /// Greatest common divisor, normalised so its content is monic and the
    /// primitive part is taken as produced; callers normalise further.
    pub fn gcd(&self, p: u32, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.is_constant() || o.is_constant() {
            return Self::constant(p, 1);
        }
        if self.coprime_by_specialization(p, o) {
            return Self::constant(p, 1);
        }
        let c = ugcd(p, &self.content(p), &o.content(p));
        let (mut f, mut g) = (self.primitive_part(p), o.primitive_part(p));
        if f.coeffs.len() < g.coeffs.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.coeffs.len() == 1 {
                // primitive and free of b: a unit
                f = Self::constant(p, 1);
                break;
            }
            let r = f.pseudo_rem(p, &g);
            f = g;
            g = r.primitive_part(p);
        }
        f.mul_upoly_shift(p, &c, 0)
    }
}

/// Graded-lex comparison of `a^i1 b^j1` against `a^i2 b^j2`.
pub fn graded_lex(i1: usize, j1: usize, i2: usize, j2: usize) -> Ordering {
    (i1 + j1).cmp(&(i2 + j2)).then(i1.cmp(&i2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, terms: &[(usize, usize, u32)]) -> Poly2 {
        Poly2::from_terms(p, terms.iter().copied())
    }

    #[test]
    fn univariate_gcd() {
        // (a+1)(a+2) and (a+1)(a+3) over F_5
        let f = umul(5, &[1, 1], &[2, 1]);
        let g = umul(5, &[1, 1], &[3, 1]);
        assert_eq!(ugcd(5, &f, &g), vec![1, 1]);
        assert_eq!(ugcd(5, &[], &[]), Vec::<u32>::new());
    }

    #[test]
    fn bivariate_gcd_of_difference_of_squares() {
        let p = 3;
        let a_minus_b = poly(p, &[(1, 0, 1), (0, 1, 2)]);
        let a_plus_b = poly(p, &[(1, 0, 1), (0, 1, 1)]);
        let sq = a_minus_b.mul(p, &a_plus_b);
        let g = sq.gcd(p, &a_minus_b);
        assert!(g.exact_div(p, &a_minus_b).is_constant());
        assert_eq!(a_plus_b.gcd(p, &a_minus_b), Poly2::constant(p, 1));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let p = 5;
        let common = poly(p, &[(2, 0, 1), (0, 1, 3), (1, 1, 1), (0, 0, 2)]);
        let f = common.mul(p, &poly(p, &[(1, 0, 1), (0, 2, 4)]));
        let g = common.mul(p, &poly(p, &[(3, 1, 2), (0, 0, 1)]));
        let d = f.gcd(p, &g);
        // d must be an F_p multiple of `common`
        let q = d.exact_div(p, &common);
        assert!(q.is_constant());
    }

    #[test]
    fn specialization_certificates() {
        // a + b and a - b are coprime; a*b + 1 and b share nothing either
        assert!(poly(5, &[(1, 0, 1), (0, 1, 1)]).coprime_by_specialization(5, &poly(5, &[(1, 0, 1), (0, 1, 4)])));
        assert!(poly(3, &[(1, 1, 1), (0, 0, 1)]).coprime_by_specialization(3, &poly(3, &[(0, 1, 1)])));
        // a common factor can never be certified away
        let f = poly(2, &[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
        let g = f.mul(2, &poly(2, &[(1, 1, 1), (0, 0, 1)]));
        assert!(!f.coprime_by_specialization(2, &g));
        assert_eq!(f.gcd(2, &g), f);
    }

    #[test]
    fn frobenius_is_freshmans_dream() {
        let p = 2;
        let f = poly(p, &[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(f.mul(p, &f), f.frobenius(p));
    }

    #[test]
    fn graded_lex_order() {
        let f = poly(5, &[(0, 1, 1), (2, 0, 1), (1, 1, 2), (0, 0, 3)]);
        let t = f.terms_graded_lex();
        assert_eq!(t, vec![(2, 0, 1), (1, 1, 2), (0, 1, 1), (0, 0, 3)]);
    }
}
