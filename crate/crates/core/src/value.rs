//! Values of the rank-2 valuation and lattices of values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// A point `(v_a, v_b)` of `Q x Q`. Ordered lexicographically with the
/// `b`-coordinate compared first, since `b` is the outer Laurent variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Value {
    pub a: Ratio<i64>,
    pub b: Ratio<i64>,
}

impl Value {
    pub fn new(a: Ratio<i64>, b: Ratio<i64>) -> Self {
        Value { a, b }
    }

    pub fn integer(a: i64, b: i64) -> Self {
        Value { a: Ratio::from_integer(a), b: Ratio::from_integer(b) }
    }

    pub fn zero() -> Self {
        Self::integer(0, 0)
    }

    pub fn div_int(self, n: i64) -> Self {
        Value { a: self.a / n, b: self.b / n }
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        self.b.cmp(&other.b).then(self.a.cmp(&other.a))
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, o: Value) -> Value {
        Value { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, o: Value) -> Value {
        Value { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value { a: -self.a, b: -self.b }
    }
}

impl Mul<i64> for Value {
    type Output = Value;
    fn mul(self, k: i64) -> Value {
        Value { a: self.a * k, b: self.b * k }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A full-rank lattice in `Q^2` in Hermite normal form: basis `(h11, h12)`,
/// `(0, h22)` with `h11, h22 > 0` and `0 <= h12 < h22`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    pub first: Value,
    pub second: Value,
}

impl Lattice {
    /// The lattice spanned by `gens`; `None` if they do not span the plane.
    pub fn spanned_by(gens: &[Value]) -> Option<Lattice> {
        let den = gens
            .iter()
            .flat_map(|v| [*v.a.denom(), *v.b.denom()])
            .fold(1i64, |l, d| l.lcm(&d));
        let mut rows: Vec<(i64, i64)> = gens
            .iter()
            .map(|v| ((v.a * den).to_integer(), (v.b * den).to_integer()))
            .collect();
        // Euclid on the first coordinate
        let pivot = loop {
            rows.retain(|&(x, y)| x != 0 || y != 0);
            let idx = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.0 != 0)
                .min_by_key(|(_, r)| r.0.abs())
                .map(|(i, _)| i)?;
            let piv = rows[idx];
            let mut done = true;
            for (i, r) in rows.iter_mut().enumerate() {
                if i != idx && r.0 != 0 {
                    let q = r.0.div_euclid(piv.0);
                    *r = (r.0 - q * piv.0, r.1 - q * piv.1);
                    done &= r.0 == 0;
                }
            }
            if done {
                let piv = rows.remove(idx);
                break if piv.0 < 0 { (-piv.0, -piv.1) } else { piv };
            }
        };
        let g2 = rows.iter().fold(0i64, |g, r| g.gcd(&r.1));
        if g2 == 0 {
            return None;
        }
        let h12 = pivot.1.rem_euclid(g2);
        let r = |n: i64| Ratio::new(n, den);
        Some(Lattice { first: Value::new(r(pivot.0), r(h12)), second: Value::new(r(0), r(g2)) })
    }

    /// `A x B` when the lattice is a product of cyclic groups, otherwise the basis.
    pub fn describe(&self) -> String {
        fn cyclic(step: Ratio<i64>) -> String {
            if step == Ratio::from_integer(1) {
                "Z".to_string()
            } else if step.is_integer() {
                format!("{step}Z")
            } else {
                format!("({step})Z")
            }
        }
        if self.first.b == Ratio::from_integer(0) {
            format!("{} x {}", cyclic(self.first.a), cyclic(self.second.b))
        } else {
            format!("lattice generated by {}, {}", self.first, self.second)
        }
    }

    pub fn contains(&self, v: Value) -> bool {
        let k = v.a / self.first.a;
        if !k.is_integer() {
            return false;
        }
        let rest = v.b - k * self.first.b;
        (rest / self.second.b).is_integer()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn order_is_b_first() {
        let x = Value::integer(3, -1);
        let y = Value::integer(-5, 0);
        assert!(x < y);
        assert!(Value::integer(1, 0) < Value::integer(0, 1));
        assert_eq!(Value::new(q(1, 2), q(0, 1)).to_string(), "(1/2, 0)");
    }

    #[test]
    fn hermite_forms() {
        let base = [Value::integer(1, 0), Value::integer(0, 1)];
        let with = |v: Value| {
            let mut g = base.to_vec();
            g.push(v);
            Lattice::spanned_by(&g).unwrap()
        };
        assert_eq!(with(Value::new(q(1, 3), q(0, 1))).describe(), "(1/3)Z x Z");
        assert_eq!(with(Value::new(q(0, 1), q(1, 3))).describe(), "Z x (1/3)Z");
        let mixed = with(Value::new(q(1, 2), q(1, 2)));
        assert_eq!(mixed.describe(), "lattice generated by (1/2, 1/2), (0, 1)");
        assert!(mixed.contains(Value::new(q(3, 2), q(-1, 2))));
        assert!(!mixed.contains(Value::new(q(1, 2), q(0, 1))));
        // different generators, same lattice
        assert_eq!(with(Value::new(q(-1, 2), q(1, 2))), mixed);
        assert_eq!(Lattice::spanned_by(&[Value::integer(1, 1)]), None);
    }
}
