//! The valuation of `[alpha, beta)` over F_p((a))((b)) when `x` is
//! unramified and `y` is totally ramified.
//!
//! For `t = sum c_ij x^i y^j` the value is `min v(c_ij) + j v(y)` with
//! `v(y) = v(beta) / p`. Columns have distinct values modulo `Z^2`, so no
//! cancellation happens between them, and within a column the residues of
//! `1, x, ..., x^(p-1)` are independent over F_p.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{AlgElement, SymbolAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldKind, Scalar};
use crate::laurent::LaurentScalar;
use crate::report::{field, Check, Report};
use crate::sample::{self, ScalarShape};
use crate::value::{Lattice, Value};

#[derive(Clone, Debug)]
pub struct ValuedAlgebra {
    pub algebra: SymbolAlgebra<LaurentScalar>,
    pub v_y: Value,
    /// `v(alpha) = 0` with nonzero residue, so `x^p - x = res(alpha)` is irreducible over F_p.
    pub unramified_x: bool,
    residue_alpha: u32,
}

impl ValuedAlgebra {
    pub fn new(algebra: SymbolAlgebra<LaurentScalar>) -> Result<Self> {
        if algebra.field().kind() != FieldKind::Laurent {
            return Err(Error::FieldMismatch("valuations need the Laurent field".into()));
        }
        let p = algebra.p() as i64;
        let v_y = algebra.beta().valuation()?.div_int(p);
        if v_y.is_integral() {
            return Err(Error::UnsupportedSlot(format!("v(beta) = {} is divisible by p", v_y * p)));
        }
        let alpha = algebra.alpha();
        let residue_alpha = match alpha.valuation() {
            Ok(v) if v == Value::zero() => alpha.constant_term().unwrap_or(0),
            _ => 0,
        };
        if residue_alpha == 0 {
            return Err(Error::UnsupportedSlot(format!("left slot {alpha} does not have a nonzero unit residue")));
        }
        Ok(ValuedAlgebra { algebra, v_y, unramified_x: true, residue_alpha })
    }

    /// `c` in `xbar^p - xbar = c`.
    pub fn residue_of_left_slot(&self) -> u32 {
        self.residue_alpha
    }

    pub fn gauss_value(&self, t: &AlgElement<LaurentScalar>) -> Result<Value> {
        let n = self.algebra.p() as usize;
        let mut best: Option<Value> = None;
        for (k, c) in t.coeffs().iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let v = c.valuation()? + self.v_y * (k % n) as i64;
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best.ok_or(Error::ZeroValue)
    }

    /// Image of a unit-value element in the residue field `F_p[xbar]`.
    pub fn residue(&self, t: &AlgElement<LaurentScalar>) -> Result<Residue> {
        if self.gauss_value(t)? != Value::zero() {
            return Err(Error::NotUnitValue);
        }
        let n = self.algebra.p() as usize;
        let coeffs = (0..n)
            .map(|i| {
                let c = t.coeff(i, 0);
                match c.valuation() {
                    Ok(v) if v == Value::zero() => c.constant_term().unwrap_or(0),
                    _ => 0,
                }
            })
            .collect();
        Ok(Residue { p: self.algebra.p(), coeffs })
    }

    /// `Z^2 + Z v(y)`, for a monomial right slot.
    pub fn value_group(&self) -> Result<ValueGroupReport> {
        let beta = self.algebra.beta();
        if beta.as_monomial().is_none() {
            return Err(Error::UnsupportedSlot(format!("right slot {beta} is not a monomial")));
        }
        let generators = vec![Value::integer(1, 0), Value::integer(0, 1), self.v_y];
        let lattice = Lattice::spanned_by(&generators).expect("contains Z^2");
        Ok(ValueGroupReport { description: lattice.describe(), lattice, generators })
    }
}

/// A polynomial in `xbar` of degree `< p` over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub p: u32,
    pub coeffs: Vec<u32>,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let var = match i {
                    0 => String::new(),
                    1 => "xbar".to_string(),
                    _ => format!("xbar^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => var,
                    _ => format!("{c}*{var}"),
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueGroupReport {
    pub generators: Vec<Value>,
    #[serde(skip)]
    pub lattice: Lattice,
    pub description: String,
}

/// `[1, a)` and `[1, b)` over F_p((a))((b)) with the given window.
pub fn example_algebras(p: u64, precision: u32) -> Result<(SymbolAlgebra<LaurentScalar>, SymbolAlgebra<LaurentScalar>)> {
    let f = FieldDescriptor::laurent(p, precision)?;
    let one = LaurentScalar::one(&f);
    let a = SymbolAlgebra::new(p, one.clone(), LaurentScalar::variable(&f, 'a'), f)?;
    let b = SymbolAlgebra::new(p, one, LaurentScalar::variable(&f, 'b'), f)?;
    Ok((a, b))
}

/// Largest exponent for sampled coefficients that keeps `v((u y)^p)` inside the window.
pub fn sample_degree(p: u32, precision: u32) -> Result<u32> {
    // p * deg + 1 < precision
    if precision < 2 {
        return Err(Error::PrecisionExhausted(format!("window {precision} is too small; use at least 2")));
    }
    Ok((precision - 2) / p)
}

struct Side {
    label: &'static str,
    /// Coordinate that must be `1 mod p`: 0 for `a`, 1 for `b`.
    coord: usize,
    va: ValuedAlgebra,
    lattices: BTreeSet<(Value, Value)>,
    passed: usize,
}

/// For sampled `u` in `F[x]`, checks that `t = u y` is p-central with
/// `t^p = N(u) beta` in both `[1, a)` and `[1, b)`, and that the ramified
/// coordinate of `v(t^p)` is `1 mod p`, so `F(t)` has value group
/// `(1/p)Z x Z` in the first algebra and `Z x (1/p)Z` in the second.
pub fn counterexample_check(p: u64, precision: u32, samples: usize, seed: u64) -> Result<Report> {
    if samples == 0 {
        return Err(Error::InvalidSlot("at least one sample is required".into()));
    }
    let max_deg = sample_degree(crate::fp::check_prime(p)?, precision)?;
    let (alg_a, alg_b) = example_algebras(p, precision)?;
    let p32 = alg_a.p();
    let shape = ScalarShape { max_deg, max_terms: 2, denominators: false };
    let mut sides = [
        Side { label: "[1, a)", coord: 0, va: ValuedAlgebra::new(alg_a)?, lattices: BTreeSet::new(), passed: 0 },
        Side { label: "[1, b)", coord: 1, va: ValuedAlgebra::new(alg_b)?, lattices: BTreeSet::new(), passed: 0 },
    ];
    let mut rng = sample::rng(seed);
    let mut report = Report::new("counterexample");
    report.inputs = vec![field("p", p), field("precision", precision), field("samples", samples), field("seed", seed)];
    let exhausted = |e: Error| match e {
        Error::PrecisionExhausted(m) => Error::PrecisionExhausted(format!("{m}; enlarge the window (--precision)")),
        other => other,
    };

    for _ in 0..samples {
        let coeffs: Vec<LaurentScalar> = loop {
            let c: Vec<LaurentScalar> = (0..p32).map(|_| sample::scalar(&mut rng, sides[0].va.algebra.field(), shape)).collect();
            if c.iter().any(|s| !s.is_zero()) {
                break c;
            }
        };
        let mut rec = Vec::new();
        for side in sides.iter_mut() {
            let alg = &side.va.algebra;
            let u = alg.poly_in_x(&coeffs);
            if rec.is_empty() {
                rec.push(field("u", &u));
            }
            let t = u.mul(&alg.y());
            let tp = t.power(p);
            let central = tp.as_scalar();
            let expected = u.norm_fx()?.mul(alg.beta());
            let v_t = side.va.gauss_value(&t).map_err(exhausted)?;
            let v_tp = side.va.gauss_value(&tp).map_err(exhausted)?;
            let coord = if side.coord == 0 { v_tp.a } else { v_tp.b };
            let residue = coord.to_integer().rem_euclid(p as i64);
            let ok = central.as_ref() == Some(&expected) && coord.is_integer() && residue == 1 && v_tp == v_t * p as i64;
            side.passed += ok as usize;
            let lattice = Lattice::spanned_by(&[Value::integer(1, 0), Value::integer(0, 1), v_t]).expect("contains Z^2");
            side.lattices.insert((lattice.first, lattice.second));
            let tag = side.label;
            rec.push(field(&format!("t^p in {tag}"), &tp));
            rec.push(field(&format!("v(t^p) in {tag}"), v_tp));
            rec.push(field(&format!("{} mod p in {tag}", ["a", "b"][side.coord]), residue));
        }
        report.records.push(rec);
    }

    for side in &sides {
        let group = side.va.value_group()?;
        let expected = if side.coord == 0 { "(1/p)Z x Z" } else { "Z x (1/p)Z" };
        let expected = expected.replace("1/p", &format!("1/{p}"));
        report.results.push(field(&format!("value group of {}", side.label), &group.description));
        report.checks.push(Check::compare(format!("value group of {}", side.label), &expected, &group.description));
    }
    for side in &sides {
        let coord = ["a", "b"][side.coord];
        report.checks.push(Check::holds(
            format!("t^p = N(u) {coord}, {coord}-coordinate of v(t^p) = 1 mod {p} in {}", side.label),
            format!("{samples}/{samples}"),
            format!("{}/{samples}", side.passed),
            side.passed == samples,
        ));
    }
    let disjoint = sides[0].lattices.is_disjoint(&sides[1].lattices);
    report.checks.push(Check::holds(
        "value groups of F(u y) never coincide across the two algebras",
        "disjoint",
        if disjoint { "disjoint" } else { "overlapping" },
        disjoint,
    ));
    report.notes.push("engine-verified: the sampled p-central family u y with u in F[x], in both algebras".into());
    report.notes.push(
        "not machine-checked: that no purely inseparable maximal subfield is shared at all; this rests on the ramification argument (one algebra is ramified along a, the other along b)".into(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn valued(p: u64, beta: &str, window: u32) -> ValuedAlgebra {
        let f = FieldDescriptor::laurent(p, window).unwrap();
        let alg = SymbolAlgebra::new(p, LaurentScalar::one(&f), crate::parse::parse_scalar(beta, &f).unwrap(), f).unwrap();
        ValuedAlgebra::new(alg).unwrap()
    }

    #[test]
    fn generator_values() {
        for p in [2u64, 3, 5] {
            let va = valued(p, "a", 8);
            let y = va.algebra.y();
            assert_eq!(va.gauss_value(&y).unwrap(), Value::new(Ratio::new(1, p as i64), Ratio::from_integer(0)));
            assert_eq!(va.gauss_value(&va.algebra.x()).unwrap(), Value::zero());
            let vb = valued(p, "b", 8);
            assert_eq!(vb.gauss_value(&vb.algebra.y()).unwrap(), Value::new(Ratio::from_integer(0), Ratio::new(1, p as i64)));
            assert_eq!(va.gauss_value(&va.algebra.zero()), Err(Error::ZeroValue));
        }
    }

    #[test]
    fn residues() {
        let va = valued(3, "a", 8);
        let alg = &va.algebra;
        assert_eq!(va.residue(&alg.x()).unwrap().to_string(), "xbar");
        assert_eq!(va.residue(&alg.parse("1 + a*x").unwrap()).unwrap().to_string(), "1");
        assert_eq!(va.residue(&alg.parse("x^2 + x").unwrap()).unwrap().to_string(), "xbar^2 + xbar");
        assert_eq!(va.residue(&alg.y()), Err(Error::NotUnitValue));
        assert_eq!(va.residue_of_left_slot(), 1);
    }

    #[test]
    fn value_groups() {
        assert_eq!(valued(3, "a", 8).value_group().unwrap().description, "(1/3)Z x Z");
        assert_eq!(valued(5, "b", 8).value_group().unwrap().description, "Z x (1/5)Z");
        let r = valued(2, "a*b", 8).value_group().unwrap();
        assert_eq!(r.description, "lattice generated by (1/2, 1/2), (0, 1)");
        assert!(r.lattice.contains(Value::integer(1, 0)));
        assert!(matches!(valued(2, "a + b", 8).value_group(), Err(Error::UnsupportedSlot(_))));
    }

    #[test]
    fn rejects_unsupported_slots() {
        let f = FieldDescriptor::laurent(2, 8).unwrap();
        let s = |t: &str| crate::parse::parse_scalar::<LaurentScalar>(t, &f).unwrap();
        let mk = |l: &str, r: &str| ValuedAlgebra::new(SymbolAlgebra::new(2, s(l), s(r), f).unwrap());
        assert!(matches!(mk("a", "b"), Err(Error::UnsupportedSlot(_))));
        assert!(matches!(mk("1", "a^2"), Err(Error::UnsupportedSlot(_))));
        assert!(mk("1 + a", "a*b^3").is_ok());
    }

    #[test]
    fn small_windows_fail_loudly() {
        assert!(matches!(counterexample_check(2, 1, 3, 0), Err(Error::PrecisionExhausted(_))));
        let r = counterexample_check(3, 8, 5, 1).unwrap();
        assert!(r.passed(), "{}", r.text());
    }
}
