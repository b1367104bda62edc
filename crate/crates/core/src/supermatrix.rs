//! 2×2 supermatrices of superfields with block parity (even, odd; odd, even).

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::superfield::{FieldParity, Superfield};

/// The matrix `((a, b), (c, d))` with `a, d` even and `b, c` odd.
#[derive(Clone, PartialEq, Debug)]
pub struct TangentMatrix {
    pub a: Superfield,
    pub b: Superfield,
    pub c: Superfield,
    pub d: Superfield,
}

/// Which entries a matrix is allowed to have nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MatrixShape {
    /// Any matrix.
    #[serde(rename = "A")]
    Any,
    /// Lower-left entry zero.
    #[serde(rename = "S")]
    Superconformal,
    /// Upper-left entry zero.
    #[serde(rename = "T")]
    TwistParity,
    /// Left column zero.
    #[serde(rename = "D")]
    Degenerate,
}

impl MatrixShape {
    pub fn symbol(self) -> &'static str {
        match self {
            MatrixShape::Any => "A",
            MatrixShape::Superconformal => "S",
            MatrixShape::TwistParity => "T",
            MatrixShape::Degenerate => "D",
        }
    }
}

impl TangentMatrix {
    pub fn new(a: Superfield, b: Superfield, c: Superfield, d: Superfield) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity(generators: usize) -> Self {
        Self {
            a: Superfield::one(generators),
            b: Superfield::zero(generators),
            c: Superfield::zero(generators),
            d: Superfield::one(generators),
        }
    }

    /// True when every entry has the parity its block position demands.
    pub fn has_block_parity(&self) -> bool {
        let even = |f: &Superfield| f.parity() == FieldParity::Even;
        let odd = |f: &Superfield| f.is_zero() || f.parity() == FieldParity::Odd;
        even(&self.a) && even(&self.d) && odd(&self.b) && odd(&self.c)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let entry = |x: &Superfield, y: &Superfield, u: &Superfield, v: &Superfield| -> Result<Superfield> {
            x.checked_mul(y)?.checked_add(&u.checked_mul(v)?)
        };
        Ok(Self {
            a: entry(&self.a, &rhs.a, &self.b, &rhs.c)?,
            b: entry(&self.a, &rhs.b, &self.b, &rhs.d)?,
            c: entry(&self.c, &rhs.a, &self.d, &rhs.c)?,
            d: entry(&self.c, &rhs.b, &self.d, &rhs.d)?,
        })
    }

    /// `Ber = a/d + c·b/d²`, equal to `(a − b d⁻¹ c)/d` since `b` and `c`
    /// anticommute. Requires `ε(d)` not identically zero.
    pub fn berezinian(&self) -> Result<Superfield> {
        if self.d.homogeneous_parity() != Some(Parity::Even) || self.d.has_zero_body() {
            return Err(Error::BerezinianDoesNotExist);
        }
        let inv_d = self.d.checked_recip()?;
        let first = self.a.checked_mul(&inv_d)?;
        let second = self.c.checked_mul(&self.b)?.checked_mul(&inv_d)?.checked_mul(&inv_d)?;
        first.checked_add(&second)
    }

    pub fn has_shape(&self, shape: MatrixShape) -> bool {
        match shape {
            MatrixShape::Any => true,
            MatrixShape::Superconformal => self.c.is_zero(),
            MatrixShape::TwistParity => self.a.is_zero(),
            MatrixShape::Degenerate => self.a.is_zero() && self.c.is_zero(),
        }
    }

    /// Zeroes the entries a shape forbids.
    pub fn project(&self, shape: MatrixShape) -> Self {
        let n = self.a.generator_count();
        let mut out = self.clone();
        if matches!(shape, MatrixShape::TwistParity | MatrixShape::Degenerate) {
            out.a = Superfield::zero(n);
        }
        if matches!(shape, MatrixShape::Superconformal | MatrixShape::Degenerate) {
            out.c = Superfield::zero(n);
        }
        out
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Superfield) -> Result<Superfield>) -> Result<Self> {
        Ok(Self { a: f(&self.a)?, b: f(&self.b)?, c: f(&self.c)?, d: f(&self.d)? })
    }
}

impl fmt::Display for TangentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ {} | {} ]", self.a, self.b)?;
        write!(f, "[ {} | {} ]", self.c, self.d)
    }
}
