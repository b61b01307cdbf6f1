//! Rewriting symbol presentations, each rewrite carrying a generator pair
//! that certifies it.
//!
//! A pair `z, w` in `A` with `w z w^-1 = z + 1` determines
//! `A = [z^p - z, w^p)`. Every operation here returns such a pair and checks
//! it by multiplying in the algebra.

use std::fmt;

use crate::algebra::{conjugate, AlgElement, SymbolAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::fp;
use crate::report::Check;

/// `[left, right)` over a given field.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPresentation<S> {
    pub left: S,
    pub right: S,
    pub p: u32,
    pub field: FieldDescriptor,
}

impl<S: Scalar> SymbolPresentation<S> {
    pub fn new(left: S, right: S, field: FieldDescriptor) -> Result<Self> {
        if right.is_zero() {
            return Err(Error::InvalidSlot("the right slot must be nonzero".into()));
        }
        Ok(SymbolPresentation { left, right, p: field.prime(), field })
    }

    pub fn of(alg: &SymbolAlgebra<S>) -> Self {
        SymbolPresentation { left: alg.alpha().clone(), right: alg.beta().clone(), p: alg.p(), field: *alg.field() }
    }

    /// The algebra with these defining generators.
    pub fn algebra(&self) -> Result<SymbolAlgebra<S>> {
        SymbolAlgebra::new(self.p as u64, self.left.clone(), self.right.clone(), self.field)
    }
}

impl<S: Scalar> fmt::Display for SymbolPresentation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})_{}", self.left, self.right, self.p)
    }
}

/// Generators `z` (Artin-Schreier) and `w` (p-central) with `w z w^-1 = z + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkageWitness<S: Scalar> {
    pub z: AlgElement<S>,
    pub w: AlgElement<S>,
    pub claimed_left: S,
    pub claimed_right: S,
}

impl<S: Scalar> LinkageWitness<S> {
    pub fn presentation(&self) -> SymbolPresentation<S> {
        SymbolPresentation {
            left: self.claimed_left.clone(),
            right: self.claimed_right.clone(),
            p: self.z.algebra().p(),
            field: *self.z.algebra().field(),
        }
    }
}

/// The raw products behind a candidate pair, before any judgement.
struct Examined<S: Scalar> {
    conj: AlgElement<S>,
    z_as: AlgElement<S>,
    w_p: AlgElement<S>,
}

fn examine<S: Scalar>(z: &AlgElement<S>, w: &AlgElement<S>) -> Result<Examined<S>> {
    if z.is_zero() || w.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = z.algebra().p() as u64;
    Ok(Examined { conj: conjugate(w, z)?, z_as: z.power(p).sub(z), w_p: w.power(p) })
}

/// Certifies `A = [z^p - z, w^p)` from `w z w^-1 = z + 1`.
pub fn verify_presentation<S: Scalar>(alg: &SymbolAlgebra<S>, z: &AlgElement<S>, w: &AlgElement<S>) -> Result<LinkageWitness<S>> {
    if z.algebra() != alg || w.algebra() != alg {
        return Err(Error::FieldMismatch("generators must lie in the given algebra".into()));
    }
    let e = examine(z, w)?;
    if e.conj != z.add(&alg.one()) {
        return Err(Error::RelationFails(format!("w z w^-1 = z + 1 (computed {})", e.conj)));
    }
    let Some(claimed_left) = e.z_as.as_scalar() else {
        return Err(Error::RelationFails(format!("z^p - z is central (computed {})", e.z_as)));
    };
    let Some(claimed_right) = e.w_p.as_scalar() else {
        return Err(Error::RelationFails(format!("w^p is central (computed {})", e.w_p)));
    };
    Ok(LinkageWitness { z: z.clone(), w: w.clone(), claimed_left, claimed_right })
}

/// Verification lines for `(z, w)` against the expected slots, labelled by `tag`.
pub fn witness_checks<S: Scalar>(tag: &str, z: &AlgElement<S>, w: &AlgElement<S>, left: &S, right: &S) -> Result<Vec<Check>> {
    let alg = z.algebra();
    let e = examine(z, w)?;
    Ok(vec![
        Check::compare(format!("{tag}: w z w^-1 = z + 1"), &z.add(&alg.one()), &e.conj),
        Check::compare(format!("{tag}: z^p - z"), &alg.scalar(left.clone()), &e.z_as),
        Check::compare(format!("{tag}: w^p"), &alg.scalar(right.clone()), &e.w_p),
    ])
}

fn expect_slots<S: Scalar>(what: &str, wit: &LinkageWitness<S>, left: &S, right: &S) -> Result<()> {
    if wit.claimed_left != *left || wit.claimed_right != *right {
        return Err(Error::WitnessVerificationFailed(format!(
            "{what}: generators present [{}, {}), expected [{left}, {right})",
            wit.claimed_left, wit.claimed_right
        )));
    }
    Ok(())
}

/// `[alpha, beta) = [alpha + beta, beta)` via `z = x + y`, `w = y`.
pub fn chain_identity<S: Scalar>(pres: &SymbolPresentation<S>) -> Result<(SymbolPresentation<S>, LinkageWitness<S>)> {
    let alg = pres.algebra()?;
    let wit = verify_presentation(&alg, &alg.x().add(&alg.y()), &alg.y())?;
    expect_slots("x + y, y", &wit, &pres.left.add(&pres.right), &pres.right)?;
    Ok((wit.presentation(), wit))
}

/// `[alpha, beta) = [alpha, N(u) beta)` via `z = x`, `w = u y`, for nonzero `u` in `F[x]`.
pub fn scale_slot_by_norm<S: Scalar>(pres: &SymbolPresentation<S>, u: &AlgElement<S>) -> Result<(SymbolPresentation<S>, LinkageWitness<S>)> {
    let alg = pres.algebra()?;
    if *u.algebra() != alg {
        return Err(Error::FieldMismatch("u must lie in the algebra of the presentation".into()));
    }
    let n = u.norm_fx()?;
    let wit = verify_presentation(&alg, &alg.x(), &u.mul(&alg.y()))?;
    expect_slots("x, u y", &wit, &pres.left, &n.mul(&pres.right))?;
    Ok((wit.presentation(), wit))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport<S: Scalar> {
    /// `y x - x y = k y`.
    pub k: u32,
    /// `m k = 1 mod p`.
    pub m: u32,
    /// `(x + y)^p - (x + y)`, expanded.
    pub lhs: AlgElement<S>,
    /// `x^p - x + y^p`.
    pub rhs: AlgElement<S>,
    /// `y^m (x + y)`, which equals `(x + y + 1) y^m`.
    pub twisted: AlgElement<S>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> LemmaReport<S> {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// For `y x - x y = k y`, checks `(x + y)^p - (x + y) = x^p - x + y^p` and
/// `y^m (x + y) = (x + y + 1) y^m` with `m k = 1`. The second is the
/// conjugation `y^m (x + y) y^-m = x + y + 1` without inverting `y`, so it
/// also applies when `y` is a zero divisor.
pub fn verify_lemma<S: Scalar>(alg: &SymbolAlgebra<S>, x_el: &AlgElement<S>, y_el: &AlgElement<S>) -> Result<LemmaReport<S>> {
    if x_el.algebra() != alg || y_el.algebra() != alg {
        return Err(Error::FieldMismatch("elements must lie in the given algebra".into()));
    }
    if x_el.is_zero() || y_el.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = alg.p();
    let comm = y_el.commutator(x_el);
    let Some(k) = (1..p).find(|&k| comm == y_el.scale_int(k)) else {
        return Err(Error::HypothesisFails(format!("y x - x y = {comm} is not k y for any k in 1..{p}")));
    };
    let m = fp::inv(p, k);
    let s = x_el.add(y_el);
    let lhs = s.power(p as u64).sub(&s);
    let rhs = x_el.power(p as u64).sub(x_el).add(&y_el.power(p as u64));
    let ym = y_el.power(m as u64);
    let twisted = ym.mul(&s);
    let checks = vec![
        Check::compare(format!("y x - x y = {k} y"), &y_el.scale_int(k), &comm),
        Check::compare("(x + y)^p - (x + y) = x^p - x + y^p", &rhs, &lhs),
        Check::compare(format!("y^{m} (x + y) = (x + y + 1) y^{m}"), &s.add(&alg.one()).mul(&ym), &twisted),
    ];
    Ok(LemmaReport { k, m, lhs, rhs, twisted, checks })
}

/// `lambda` with `alpha + beta (alpha - lambda) = gamma`.
pub fn solve_lambda<S: Scalar>(alpha: &S, gamma: &S, beta: &S) -> Result<S> {
    if beta.is_zero() {
        return Err(Error::InvalidSlot("the right slot must be nonzero".into()));
    }
    let lambda = alpha.sub(&gamma.sub(alpha).div(beta)?);
    if alpha.add(&beta.mul(&alpha.sub(&lambda))) != *gamma {
        return Err(Error::WitnessVerificationFailed("alpha + beta (alpha - lambda) = gamma".into()));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeftLinkResult<S: Scalar> {
    pub lambda: S,
    pub common_left: S,
    pub pres_a: SymbolPresentation<S>,
    pub pres_aprime: SymbolPresentation<S>,
    pub witness_a: LinkageWitness<S>,
    pub witness_aprime: LinkageWitness<S>,
    pub checks: Vec<Check>,
}

/// From `A = [alpha, beta)` and `A' = [gamma, beta)` builds presentations of
/// both with the common left slot `gamma + lambda^p beta`.
pub fn right_to_left<S: Scalar>(alpha: &S, gamma: &S, beta: &S, p: u64, field: FieldDescriptor) -> Result<LeftLinkResult<S>> {
    let a = SymbolAlgebra::new(p, alpha.clone(), beta.clone(), field)?;
    let a2 = SymbolAlgebra::new(p, gamma.clone(), beta.clone(), field)?;
    let lambda = solve_lambda(alpha, gamma, beta)?;
    let lp = lambda.frobenius();
    let delta = gamma.add(&lp.mul(beta));
    let norm = alpha.add(&lp).sub(&lambda);
    let right_a = norm.mul(beta);

    // In A: z = x + (lambda + x) y, w = (lambda + x) y.
    let u = a.x().add_scalar(&lambda);
    let w = u.mul(&a.y());
    let z = a.x().add(&w);
    // In A': z' = x' + lambda y', w' = y'.
    let z2 = a2.x().add(&a2.y().scale(&lambda));
    let w2 = a2.y();

    let mut checks = vec![Check::compare("alpha + beta (alpha - lambda) = gamma", gamma, &alpha.add(&beta.mul(&alpha.sub(&lambda))))];
    checks.extend(witness_checks("A", &z, &w, &delta, &right_a)?);
    checks.push(Check::compare("A: N(lambda + x) = alpha + lambda^p - lambda", &norm, &u.norm_fx()?));
    checks.extend(witness_checks("A'", &z2, &w2, &delta, beta)?);
    checks.push(Check::compare("alpha + (alpha + lambda^p - lambda) beta = gamma + lambda^p beta", &delta, &alpha.add(&right_a)));
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(Error::WitnessVerificationFailed(bad.to_string()));
    }

    let witness_a = verify_presentation(&a, &z, &w)?;
    let witness_aprime = verify_presentation(&a2, &z2, &w2)?;
    expect_slots("A", &witness_a, &delta, &right_a)?;
    expect_slots("A'", &witness_aprime, &delta, beta)?;
    Ok(LeftLinkResult {
        pres_a: witness_a.presentation(),
        pres_aprime: witness_aprime.presentation(),
        lambda,
        common_left: delta,
        witness_a,
        witness_aprime,
        checks,
    })
}
