//! Exact coefficient arithmetic.
//!
//! Two concrete fields are provided: [`Gf`], elements of a finite field
//! `F_{p^n}` with `p` odd, and [`GaussRat`], elements of `Q(i)`. Generic code
//! is written against the [`Ring`] and [`Field`] traits. Rings carry their
//! context inside every element, so constants are produced from an existing
//! element with [`Ring::zero_like`] and friends.

mod factor;
mod gauss;
mod gf;
mod linalg;
mod poly;
mod series;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use factor::{
    distinct_degree_factorization, equal_degree_roots, factor_roots, is_irreducible,
    roots_in_field, squarefree_decomposition, RootInfo,
};
pub use gauss::GaussRat;
pub use gf::{embedding, Embedding, Gf, GfField, MAX_EXT_DEGREE};
pub use linalg::Mat;
pub use poly::{resultant, resultant_bivariate, UniPoly};
pub use series::TruncatedSeries;

use crate::{Error, Result};

/// A commutative ring whose elements know which ring they belong to.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// True when both elements belong to the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// A field with exact square roots where they exist.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    /// A square root inside the field itself, if one exists. The returned
    /// root is the smaller of `±r` under [`Field::canonical_cmp`].
    fn sqrt(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;
    /// Deterministic total order used for tie-breaking.
    fn canonical_cmp(&self, other: &Self) -> Ordering;
    /// Exact JSON encoding (integer coordinate vectors, never floats).
    fn to_json(&self) -> serde_json::Value;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    fn half(&self) -> Self {
        self.from_i64_like(2)
            .inv()
            .expect("characteristic 2 is excluded at field construction")
    }
}

/// Description of a coefficient field, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Prime { p: u64 },
    /// `F_{p^m}` with the canonical modulus chosen by [`GfField::canonical`].
    Extension { p: u64, m: usize, modulus: Vec<u64> },
    GaussianRational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        GfField::canonical(p, 1)?;
        Ok(FieldSpec::Prime { p })
    }

    pub fn extension(p: u64, m: usize) -> Result<Self> {
        if m == 1 {
            return Self::prime(p);
        }
        let f = GfField::canonical(p, m)?;
        Ok(FieldSpec::Extension {
            p,
            m,
            modulus: f.modulus().to_vec(),
        })
    }

    /// Parses `P` or `P,M`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidField(format!("cannot parse field '{text}'"));
        let mut parts = text.split(',').map(str::trim);
        let p: u64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let m: usize = match parts.next() {
            Some(s) => s.parse().map_err(|_| bad())?,
            None => 1,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::extension(p, m)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
            FieldSpec::GaussianRational => 0,
        }
    }

    /// The finite field context, if this is a finite field.
    pub fn finite(&self) -> Result<&'static GfField> {
        match self {
            FieldSpec::Prime { p } => GfField::canonical(*p, 1),
            FieldSpec::Extension { p, m, .. } => GfField::canonical(*p, *m),
            FieldSpec::GaussianRational => Err(Error::InvalidField(
                "a finite field is required".to_string(),
            )),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, m, .. } => write!(f, "F_{p}^{m}"),
            FieldSpec::GaussianRational => write!(f, "Q(i)"),
        }
    }
}

/// Square root of `a`, moving to the quadratic extension when `a` is not a
/// square in its own field. Returns the root together with the embedding of
/// the original field into the field that contains the root.
pub fn sqrt_in_extension(a: &Gf) -> Result<(Gf, Embedding)> {
    if let Some(r) = a.sqrt() {
        return Ok((r, Embedding::identity(a.field())));
    }
    let base = a.field();
    let big = GfField::canonical(base.p(), 2 * base.degree())?;
    let emb = embedding(base, big)?;
    let lifted = emb.apply(a);
    let r = lifted
        .sqrt()
        .expect("every element of a field is a square in its quadratic extension");
    Ok((r, emb))
}

/// Solves `r^2 = a`; convenience wrapper over [`Field::sqrt`].
pub fn sqrt_element<F: Field>(a: &F) -> Option<F> {
    a.sqrt()
}
