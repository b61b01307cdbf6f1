//! Truncated iterated Laurent series F_p((a))((b)).
//!
//! An element is a Laurent series in `b` whose coefficients are Laurent series
//! in `a`. Every stored coefficient is exact. What is not stored is described
//! by two kinds of bounds:
//!
//! * `b_prec`: nothing is known about `b`-exponents `>= b_prec`;
//! * per `b`-level `prec`: nothing is known about `a`-exponents `>= prec` at
//!   that level.
//!
//! A missing level, or a level/element with no bound, is exactly zero there.
//! The field descriptor's window `N` drops every term with an `a`- or
//! `b`-exponent `>= N`, recording the loss in the bounds above.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::fp;
use crate::ratfunc::write_monomial;
use crate::value::Value;

fn min_opt(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    match (x, y) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// One `b`-level: a truncated Laurent series in `a`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct Level {
    terms: BTreeMap<i64, u32>,
    prec: Option<i64>,
}

impl Level {
    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// Lowest exponent that may carry a nonzero coefficient.
    fn floor(&self) -> Option<i64> {
        min_opt(self.terms.keys().next().copied(), self.prec)
    }

    fn truncate(&mut self, window: i64) {
        if let Some(prec) = self.prec {
            self.terms.retain(|&e, _| e < prec);
            self.prec = Some(prec.min(window));
        }
        if self.terms.range(window..).next().is_some() {
            self.terms.retain(|&e, _| e < window);
            self.prec = min_opt(self.prec, Some(window));
        }
    }

    fn add(&self, p: u32, o: &Level) -> Level {
        let mut terms = self.terms.clone();
        for (&e, &c) in &o.terms {
            let slot = terms.entry(e).or_insert(0);
            *slot = fp::add(p, *slot, c);
            if *slot == 0 {
                terms.remove(&e);
            }
        }
        let mut out = Level { terms, prec: min_opt(self.prec, o.prec) };
        if let Some(prec) = out.prec {
            out.terms.retain(|&e, _| e < prec);
        }
        out
    }

    fn mul(&self, p: u32, o: &Level, window: i64) -> Level {
        let prec = min_opt(
            self.prec.zip(o.floor()).map(|(x, y)| x + y),
            o.prec.zip(self.floor()).map(|(x, y)| x + y),
        );
        let bound = min_opt(prec, Some(window)).unwrap();
        let mut acc: BTreeMap<i64, u64> = BTreeMap::new();
        let mut dropped = false;
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                let e = e1 + e2;
                if e >= bound {
                    dropped |= e >= window;
                    continue;
                }
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + c1 as u64 * c2 as u64) % p as u64;
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (e, c as u32)).collect();
        Level { terms, prec: if dropped { min_opt(prec, Some(window)) } else { prec } }
    }

    fn scale(&self, p: u32, k: u32) -> Level {
        Level { terms: self.terms.iter().map(|(&e, &c)| (e, fp::mul(p, c, k))).collect(), prec: self.prec }
    }

    /// Inverse of a level with a certified leading term.
    fn inv(&self, p: u32, window: i64) -> Result<Level> {
        let (&v, &lead) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::PrecisionExhausted("leading coefficient is not certified".into()))?;
        let lead_inv = fp::inv(p, lead);
        if self.terms.len() == 1 && self.prec.is_none() {
            return Ok(Level { terms: BTreeMap::from([(-v, lead_inv)]), prec: None });
        }
        // relative precision of self / (lead * a^v)
        let rel = self.prec.map_or(window + v, |q| (q - v).min(window + v));
        let n = rel.max(0) as usize;
        let s: Vec<u32> = (0..n).map(|k| fp::mul(p, self.terms.get(&(v + k as i64)).copied().unwrap_or(0), lead_inv)).collect();
        let mut e = vec![0u32; n];
        if n > 0 {
            e[0] = 1;
        }
        for m in 1..n {
            let mut acc = 0u32;
            for k in 1..=m {
                if s[k] != 0 && e[m - k] != 0 {
                    acc = fp::add(p, acc, fp::mul(p, s[k], e[m - k]));
                }
            }
            e[m] = fp::neg(p, acc);
        }
        let terms = e
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (m as i64 - v, fp::mul(p, c, lead_inv)))
            .collect();
        Ok(Level { terms, prec: Some(rel - v) })
    }
}

/// An element of F_p((a))((b)) known up to explicit precision bounds.
#[derive(Clone, Debug)]
pub struct LaurentScalar {
    p: u32,
    window: i64,
    levels: BTreeMap<i64, Level>,
    b_prec: Option<i64>,
}

impl LaurentScalar {
    fn empty(p: u32, window: i64) -> Self {
        LaurentScalar { p, window, levels: BTreeMap::new(), b_prec: None }
    }

    /// Exact element from `(a_exp, b_exp, coeff)` terms, then cut to the window.
    pub fn from_terms(field: &FieldDescriptor, terms: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let p = field.prime();
        let window = field.precision().expect("Laurent descriptor carries a window") as i64;
        let mut out = Self::empty(p, window);
        for (ea, eb, c) in terms {
            let c = fp::reduce(p, c);
            let level = out.levels.entry(eb).or_default();
            let slot = level.terms.entry(ea).or_insert(0);
            *slot = fp::add(p, *slot, c);
            if *slot == 0 {
                level.terms.remove(&ea);
            }
        }
        out.normalize()
    }

    /// `a^ea * b^eb`.
    pub fn monomial(field: &FieldDescriptor, ea: i64, eb: i64) -> Self {
        Self::from_terms(field, [(ea, eb, 1)])
    }

    fn normalize(mut self) -> Self {
        let window = self.window;
        if let Some(bp) = self.b_prec {
            self.levels.retain(|&j, _| j < bp);
        }
        let beyond: Vec<i64> = self.levels.range(window..).map(|(&j, _)| j).collect();
        if !beyond.is_empty() {
            for j in beyond {
                self.levels.remove(&j);
            }
            self.b_prec = min_opt(self.b_prec, Some(window));
        }
        for level in self.levels.values_mut() {
            level.truncate(window);
        }
        self.levels.retain(|_, l| !l.is_exact_zero());
        self
    }

    fn b_floor(&self) -> Option<i64> {
        min_opt(self.levels.keys().next().copied(), self.b_prec)
    }

    pub fn is_exact(&self) -> bool {
        self.b_prec.is_none() && self.levels.values().all(|l| l.prec.is_none())
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Known terms as `(a_exp, b_exp, coeff)` in increasing value order.
    pub fn terms(&self) -> Vec<(i64, i64, u32)> {
        self.levels
            .iter()
            .flat_map(|(&j, l)| l.terms.iter().map(move |(&i, &c)| (i, j, c)))
            .collect()
    }

    /// Lexicographically minimal term, `b`-exponent first, if it is certified.
    pub fn leading_term(&self) -> Result<(i64, i64, u32)> {
        let Some((&j, level)) = self.levels.iter().next() else {
            return match self.b_prec {
                None => Err(Error::ZeroValue),
                Some(bp) => Err(Error::PrecisionExhausted(format!("no certified term below b^{bp}"))),
            };
        };
        match level.terms.iter().next() {
            Some((&i, &c)) => Ok((i, j, c)),
            None => Err(Error::PrecisionExhausted(format!(
                "no certified term at b^{j} below a^{}",
                level.prec.unwrap_or(self.window)
            ))),
        }
    }

    /// The `(a, b)`-adic valuation: exponents of the certified leading term.
    pub fn valuation(&self) -> Result<Value> {
        let (i, j, _) = self.leading_term()?;
        Ok(Value::integer(i, j))
    }

    /// Coefficient of `a^0 b^0`, provided it is known.
    pub fn constant_term(&self) -> Option<u32> {
        let level = match self.levels.get(&0) {
            Some(l) => l,
            None => {
                return if self.b_prec.is_none_or(|bp| bp > 0) { Some(0) } else { None };
            }
        };
        match level.terms.get(&0) {
            Some(&c) => Some(c),
            None if level.prec.is_none_or(|q| q > 0) => Some(0),
            None => None,
        }
    }

    /// Monomial exponents if this is exactly `c * a^i * b^j`.
    pub fn as_monomial(&self) -> Option<(i64, i64, u32)> {
        if !self.is_exact() {
            return None;
        }
        let t = self.terms();
        if t.len() == 1 {
            Some(t[0])
        } else {
            None
        }
    }
}

impl PartialEq for LaurentScalar {
    /// Equality on the certified window: the difference has no known nonzero term.
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.sub(other).is_zero()
    }
}

impl Scalar for LaurentScalar {
    fn zero(field: &FieldDescriptor) -> Self {
        Self::empty(field.prime(), field.precision().expect("Laurent descriptor carries a window") as i64)
    }

    fn from_int(field: &FieldDescriptor, n: i64) -> Self {
        Self::from_terms(field, [(0, 0, n)])
    }

    fn variable(field: &FieldDescriptor, var: char) -> Self {
        match var {
            'a' => Self::monomial(field, 1, 0),
            'b' => Self::monomial(field, 0, 1),
            _ => panic!("unknown indeterminate {var}"),
        }
    }

    fn field(&self) -> FieldDescriptor {
        FieldDescriptor::laurent(self.p as u64, self.window as u32).expect("checked at construction")
    }

    fn add(&self, o: &Self) -> Self {
        let mut levels = self.levels.clone();
        for (&j, l) in &o.levels {
            let merged = match levels.get(&j) {
                Some(mine) => mine.add(self.p, l),
                None => l.clone(),
            };
            levels.insert(j, merged);
        }
        LaurentScalar {
            p: self.p,
            window: self.window.min(o.window),
            levels,
            b_prec: min_opt(self.b_prec, o.b_prec),
        }
        .normalize()
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    fn mul(&self, o: &Self) -> Self {
        let window = self.window.min(o.window);
        let (Some(fx), Some(fy)) = (self.b_floor(), o.b_floor()) else {
            return Self::empty(self.p, window);
        };
        let b_prec = min_opt(self.b_prec.map(|q| q + fy), o.b_prec.map(|q| q + fx));
        let mut levels: BTreeMap<i64, Level> = BTreeMap::new();
        for (&j, lx) in &self.levels {
            for (&k, ly) in &o.levels {
                let m = j + k;
                if b_prec.is_some_and(|q| m >= q) || m >= window {
                    continue;
                }
                let prod = lx.mul(self.p, ly, window);
                let merged = match levels.get(&m) {
                    Some(acc) => acc.add(self.p, &prod),
                    None => prod,
                };
                levels.insert(m, merged);
            }
        }
        // Products landing at b-exponents >= window were skipped above.
        let spilled = self.levels.keys().next_back().zip(o.levels.keys().next_back()).is_some_and(|(x, y)| x + y >= window);
        let b_prec = if spilled { min_opt(b_prec, Some(window)) } else { b_prec };
        LaurentScalar { p: self.p, window, levels, b_prec }.normalize()
    }

    fn scale(&self, k: u32) -> Self {
        let k = k % self.p;
        if k == 0 {
            return LaurentScalar { levels: BTreeMap::new(), ..self.clone() }.with_unknowns_of(self);
        }
        LaurentScalar {
            levels: self.levels.iter().map(|(&j, l)| (j, l.scale(self.p, k))).collect(),
            ..self.clone()
        }
    }

    fn inv(&self) -> Result<Self> {
        let p = self.p;
        let window = self.window;
        let Some((&m, lead)) = self.levels.iter().next() else {
            return match self.b_prec {
                None => Err(Error::DivisionByZero),
                Some(bp) => Err(Error::PrecisionExhausted(format!("divisor has no certified term below b^{bp}"))),
            };
        };
        let d0 = lead.inv(p, window)?;
        if self.levels.len() == 1 && self.b_prec.is_none() {
            return Ok(LaurentScalar { p, window, levels: BTreeMap::from([(-m, d0)]), b_prec: None }.normalize());
        }
        // result levels -m + n for n < count
        let count = self.b_prec.map_or(window + m, |bp| (bp - m).min(window + m)).max(0);
        let mut ds: Vec<Level> = Vec::with_capacity(count as usize);
        for n in 0..count {
            if n == 0 {
                ds.push(d0.clone());
                continue;
            }
            let mut acc = Level::default();
            for k in 1..=n {
                if let Some(ck) = self.levels.get(&(m + k)) {
                    let term = ck.mul(p, &ds[(n - k) as usize], window);
                    acc = acc.add(p, &term);
                }
            }
            let dn = d0.mul(p, &acc, window).scale(p, p - 1);
            ds.push(dn);
        }
        let levels = ds.into_iter().enumerate().map(|(n, l)| (n as i64 - m, l)).collect();
        Ok(LaurentScalar { p, window, levels, b_prec: Some(count - m) }.normalize())
    }

    fn is_zero(&self) -> bool {
        self.levels.values().all(|l| l.terms.is_empty())
    }

    fn is_exact_zero(&self) -> bool {
        self.levels.is_empty() && self.b_prec.is_none()
    }

    fn is_exact(&self) -> bool {
        LaurentScalar::is_exact(self)
    }

    fn frobenius(&self) -> Self {
        let q = self.p as i64;
        let levels = self
            .levels
            .iter()
            .map(|(&j, l)| {
                (
                    j * q,
                    Level { terms: l.terms.iter().map(|(&e, &c)| (e * q, c)).collect(), prec: l.prec.map(|x| x * q) },
                )
            })
            .collect();
        LaurentScalar { p: self.p, window: self.window, levels, b_prec: self.b_prec.map(|x| x * q) }.normalize()
    }

    fn is_compound(&self) -> bool {
        !(self.is_exact() && self.terms().len() == 1 && self.terms()[0].0 >= 0 && self.terms()[0].1 >= 0)
    }
}

impl LaurentScalar {
    /// Zero that keeps the unknown parts of `src`: `0 * src` is only known
    /// where `src` is.
    fn with_unknowns_of(mut self, src: &Self) -> Self {
        self.levels = src
            .levels
            .iter()
            .filter(|(_, l)| l.prec.is_some())
            .map(|(&j, l)| (j, Level { terms: BTreeMap::new(), prec: l.prec }))
            .collect();
        self.b_prec = src.b_prec;
        self
    }
}

fn write_laurent_term(f: &mut fmt::Formatter<'_>, c: u32, ea: i64, eb: i64) -> fmt::Result {
    let num: Vec<(char, i64)> = [('a', ea), ('b', eb)].into_iter().filter(|&(_, e)| e > 0).collect();
    let den: Vec<(char, i64)> = [('a', -ea), ('b', -eb)].into_iter().filter(|&(_, e)| e > 0).collect();
    write_monomial(f, c, &num)?;
    if den.is_empty() {
        return Ok(());
    }
    f.write_str("/")?;
    if den.len() > 1 {
        f.write_str("(")?;
        write_monomial(f, 1, &den)?;
        f.write_str(")")
    } else {
        write_monomial(f, 1, &den)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::take(&mut first) {
                f.write_str(" + ")?;
            }
            Ok(())
        };
        for (ea, eb, c) in self.terms() {
            sep(f)?;
            write_laurent_term(f, c, ea, eb)?;
        }
        let bounds: Vec<(i64, i64)> = self.levels.iter().filter_map(|(&j, l)| l.prec.map(|q| (q, j))).collect();
        if bounds.is_empty() && self.b_prec.is_none() && self.levels.is_empty() {
            return f.write_str("0");
        }
        for (q, j) in bounds {
            sep(f)?;
            match j {
                0 => write!(f, "O(a^{q})")?,
                _ => write!(f, "O(a^{q}*b^{j})")?,
            }
        }
        if let Some(bp) = self.b_prec {
            sep(f)?;
            write!(f, "O(b^{bp})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, n: u32) -> FieldDescriptor {
        FieldDescriptor::laurent(p, n).unwrap()
    }

    #[test]
    fn geometric_series_in_b() {
        let f = field(5, 4);
        let one = LaurentScalar::one(&f);
        let x = one.sub(&LaurentScalar::variable(&f, 'b'));
        let inv = x.inv().unwrap();
        assert_eq!(inv.terms(), vec![(0, 0, 1), (0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        assert!(!inv.is_exact());
        assert_eq!(inv.to_string(), "1 + b + b^2 + b^3 + O(b^4)");
        assert!(inv.mul(&x).sub(&one).is_zero());
    }

    #[test]
    fn valuation_examples() {
        let f = field(7, 8);
        assert_eq!(LaurentScalar::variable(&f, 'a').valuation().unwrap(), Value::integer(1, 0));
        assert_eq!(LaurentScalar::variable(&f, 'b').valuation().unwrap(), Value::integer(0, 1));
        let c = LaurentScalar::from_terms(&f, [(3, -1, 1), (5, 0, 1)]);
        assert_eq!(c.valuation().unwrap(), Value::integer(3, -1));
        assert_eq!(LaurentScalar::zero(&f).valuation(), Err(Error::ZeroValue));
    }

    #[test]
    fn inverse_of_a_plus_b_has_growing_principal_part() {
        // 1/(a+b) = a^-1 - b a^-2 + b^2 a^-3 - ...
        let f = field(3, 4);
        let s = LaurentScalar::variable(&f, 'a').add(&LaurentScalar::variable(&f, 'b'));
        let inv = s.inv().unwrap();
        assert_eq!(inv.terms(), vec![(-1, 0, 1), (-2, 1, 2), (-3, 2, 1), (-4, 3, 2)]);
        assert!(inv.mul(&s).sub(&LaurentScalar::one(&f)).is_zero());
        assert_eq!(inv.valuation().unwrap(), Value::integer(-1, 0));
    }

    #[test]
    fn window_truncation_is_flagged() {
        let f = field(2, 4);
        let a = LaurentScalar::variable(&f, 'a');
        let a5 = a.pow(5);
        assert!(a5.is_zero());
        assert!(matches!(a5.valuation(), Err(Error::PrecisionExhausted(_))));
        let a3 = a.pow(3);
        assert!(a3.is_exact());
        assert_eq!(a3.valuation().unwrap(), Value::integer(3, 0));
    }

    #[test]
    fn uncertified_divisor() {
        let f = field(2, 3);
        let a = LaurentScalar::variable(&f, 'a');
        let tiny = a.pow(4).add(&LaurentScalar::variable(&f, 'b'));
        // level 0 is only O(a^3); its leading coefficient is unknown
        assert!(matches!(tiny.inv(), Err(Error::PrecisionExhausted(_))));
        assert_eq!(LaurentScalar::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_keeps_precision_sound() {
        let f = field(3, 9);
        let x = LaurentScalar::one(&f).sub(&LaurentScalar::variable(&f, 'a')).inv().unwrap();
        let fx = x.frobenius();
        assert_eq!(fx, x.pow(3));
    }

    #[test]
    fn printing_negative_exponents() {
        let f = field(5, 6);
        let x = LaurentScalar::from_terms(&f, [(3, -1, 1), (-1, -2, 2), (0, 0, 4)]);
        assert_eq!(x.to_string(), "2/(a*b^2) + a^3/b + 4");
    }
}
