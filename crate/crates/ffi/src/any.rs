//! Field-erased algebras and elements behind the C handles.

use std::fmt;

use palg_core::algebra::{AlgElement, SymbolAlgebra};
use palg_core::error::{Error, Result};
use palg_core::field::{FieldDescriptor, FieldKind};
use palg_core::laurent::LaurentScalar;
use palg_core::parse::parse_scalar;
use palg_core::ratfunc::RatFunc;

#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(SymbolAlgebra<RatFunc>),
    Laurent(SymbolAlgebra<LaurentScalar>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyElement {
    Rational(AlgElement<RatFunc>),
    Laurent(AlgElement<LaurentScalar>),
}

impl AnyAlgebra {
    pub fn new(p: u64, alpha: &str, beta: &str, field: FieldDescriptor) -> Result<Self> {
        Ok(match field.kind() {
            FieldKind::Rational => {
                AnyAlgebra::Rational(SymbolAlgebra::new(p, parse_scalar(alpha, &field)?, parse_scalar(beta, &field)?, field)?)
            }
            FieldKind::Laurent => {
                AnyAlgebra::Laurent(SymbolAlgebra::new(p, parse_scalar(alpha, &field)?, parse_scalar(beta, &field)?, field)?)
            }
        })
    }

    pub fn parse(&self, text: &str) -> Result<AnyElement> {
        Ok(match self {
            AnyAlgebra::Rational(a) => AnyElement::Rational(a.parse(text)?),
            AnyAlgebra::Laurent(a) => AnyElement::Laurent(a.parse(text)?),
        })
    }
}

impl fmt::Display for AnyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyAlgebra::Rational(a) => a.fmt(f),
            AnyAlgebra::Laurent(a) => a.fmt(f),
        }
    }
}

fn mismatch() -> Error {
    Error::FieldMismatch("operands belong to different algebras".into())
}

macro_rules! binop {
    ($name:ident) => {
        pub fn $name(&self, o: &Self) -> Result<Self> {
            match (self, o) {
                (AnyElement::Rational(s), AnyElement::Rational(t)) if s.algebra() == t.algebra() => {
                    Ok(AnyElement::Rational(s.$name(t)))
                }
                (AnyElement::Laurent(s), AnyElement::Laurent(t)) if s.algebra() == t.algebra() => {
                    Ok(AnyElement::Laurent(s.$name(t)))
                }
                _ => Err(mismatch()),
            }
        }
    };
}

impl AnyElement {
    binop!(add);
    binop!(sub);
    binop!(mul);

    pub fn power(&self, e: u64) -> Self {
        match self {
            AnyElement::Rational(s) => AnyElement::Rational(s.power(e)),
            AnyElement::Laurent(s) => AnyElement::Laurent(s.power(e)),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            AnyElement::Rational(s) => AnyElement::Rational(s.inverse()?),
            AnyElement::Laurent(s) => AnyElement::Laurent(s.inverse()?),
        })
    }
}

impl fmt::Display for AnyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyElement::Rational(s) => s.fmt(f),
            AnyElement::Laurent(s) => s.fmt(f),
        }
    }
}
