//! The even Clifford algebra of a ternary quadratic form.
//!
//! Elements are stored in the ordered basis `(1, e1e2, e2e3, e1e3)` of
//! Clifford products, with the convention `e_i e_i = f_ii` and
//! `e_i e_j + e_j e_i = 2 f_ij`. For a form of rank two the algebra is
//! presented by a quiver with two vertices; see [`quiver`] and [`reps`].

mod normalize;
pub mod quiver;
pub mod reps;

use std::ops::{Add, Neg, Sub};

use crate::exactfield::{Field, Mat, Ring};
use crate::{Error, Result};

pub use normalize::{normalize_rank2, ConicField, IsotropicPlane, NormalizedFrame, PlaneLabel};
pub use quiver::{
    idempotent_family, path_algebra_check, quiver_presentation, radical_ideal, IdempotentCensus, NormElem,
    PathAlgebraCheck, QuiverImages, RadicalReport,
};
pub use reps::{
    classify_rep2, rep_census, rep_kernel_line, KernelLine, QuiverRep2, Rep2, RepCensus,
    RepTypeTag,
};

/// A symmetric 3x3 Gram matrix `(f_ij)` over a commutative ring.
#[derive(Clone, PartialEq, Debug)]
pub struct TernaryGram<R> {
    m: Mat<R>,
}

impl<R: Ring> TernaryGram<R> {
    pub fn new(m: Mat<R>) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 || !m.is_symmetric() {
            return Err(Error::InvalidField(
                "Gram matrix must be symmetric of size 3".into(),
            ));
        }
        Ok(TernaryGram { m })
    }

    /// Builds the Gram matrix from the upper triangle
    /// `f11, f12, f13, f22, f23, f33`.
    pub fn from_upper(u: [R; 6]) -> Self {
        let [f11, f12, f13, f22, f23, f33] = u;
        let zero = f11.zero_like();
        let m = Mat::from_rows(
            vec![
                vec![f11, f12.clone(), f13.clone()],
                vec![f12, f22, f23.clone()],
                vec![f13, f23, f33],
            ],
            zero,
        );
        TernaryGram { m }
    }

    /// `diag(1, 1, 0)`.
    pub fn standard(zero: R) -> Self {
        let one = zero.one_like();
        Self::from_upper([
            one.clone(),
            zero.clone(),
            zero.clone(),
            one,
            zero.clone(),
            zero,
        ])
    }

    pub fn matrix(&self) -> &Mat<R> {
        &self.m
    }

    pub fn f(&self, i: usize, j: usize) -> &R {
        self.m.get(i, j)
    }

    pub fn zero_elem(&self) -> &R {
        self.m.zero_elem()
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard(self.zero_elem().clone())
    }

    /// The quadratic form `q(v) = v^T G v`.
    pub fn q(&self, v: &[R]) -> R {
        self.m.bilinear(v, v)
    }

    /// `P^T G P`.
    pub fn congruence(&self, p: &Mat<R>) -> Self {
        TernaryGram {
            m: p.transpose().mul(&self.m).mul(p),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        TernaryGram { m: self.m.scale(c) }
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> TernaryGram<S> {
        TernaryGram {
            m: self.m.map(zero, f),
        }
    }
}

impl<F: Field> TernaryGram<F> {
    pub fn rank(&self) -> usize {
        self.m.rank()
    }
}

/// Element of the even Clifford algebra, with coordinates in the basis
/// `(1, e1e2, e2e3, e1e3)`.
#[derive(Clone, PartialEq, Debug)]
pub struct EvenElement<R> {
    pub c: [R; 4],
}

impl<R: Ring> EvenElement<R> {
    pub fn new(c0: R, c12: R, c23: R, c13: R) -> Self {
        EvenElement {
            c: [c0, c12, c23, c13],
        }
    }

    pub fn zero(zero: R) -> Self {
        Self::new(zero.clone(), zero.clone(), zero.clone(), zero)
    }

    pub fn one(zero: R) -> Self {
        Self::scalar(zero.one_like())
    }

    pub fn scalar(c: R) -> Self {
        let z = c.zero_like();
        Self::new(c, z.clone(), z.clone(), z)
    }

    /// The `k`-th basis vector.
    pub fn basis(k: usize, zero: R) -> Self {
        let mut e = Self::zero(zero);
        e.c[k] = e.c[k].one_like();
        e
    }

    /// `x = i e1e2` for a chosen square root `i` of `-1`.
    pub fn x(i: &R) -> Self {
        let z = i.zero_like();
        Self::new(z.clone(), i.clone(), z.clone(), z)
    }

    /// `y = i e2e3`.
    pub fn y(i: &R) -> Self {
        let z = i.zero_like();
        Self::new(z.clone(), z.clone(), i.clone(), z)
    }

    /// `z = e1e3`.
    pub fn z(i: &R) -> Self {
        let z = i.zero_like();
        Self::new(z.clone(), z.clone(), z.clone(), i.one_like())
    }

    /// `a0 + a1 x + a2 y + a3 z` in terms of the normalized symbols.
    pub fn from_normalized(a: &[R; 4], i: &R) -> Self {
        Self::new(
            a[0].clone(),
            a[1].clone() * i.clone(),
            a[2].clone() * i.clone(),
            a[3].clone(),
        )
    }

    pub fn scale(&self, s: &R) -> Self {
        EvenElement {
            c: self.c.clone().map(|a| a * s.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.c[0].same_ring(&other.c[0])
    }
}

impl<F: Field> EvenElement<F> {
    /// Inverse of [`EvenElement::from_normalized`].
    pub fn to_normalized(&self, i: &F) -> [F; 4] {
        let minus_i = -i.clone();
        [
            self.c[0].clone(),
            self.c[1].clone() * minus_i.clone(),
            self.c[2].clone() * minus_i,
            self.c[3].clone(),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.c.iter().map(Field::to_json).collect())
    }
}

impl<R: Ring> Add for EvenElement<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Self::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<R: Ring> Sub for EvenElement<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for EvenElement<R> {
    type Output = Self;
    fn neg(self) -> Self {
        EvenElement {
            c: self.c.map(|a| -a),
        }
    }
}

/// Bitmasks of the even basis monomials `1, e1e2, e2e3, e1e3`.
const EVEN_MASKS: [usize; 4] = [0b000, 0b011, 0b110, 0b101];

fn mask_word(mask: usize) -> Vec<usize> {
    (0..3).filter(|b| mask & (1 << b) != 0).collect()
}

/// Rewrites a word in the generators into sorted monomials, accumulating
/// into `out` indexed by bitmask.
fn reduce_word<R: Ring>(gram: &TernaryGram<R>, word: &[usize], coef: R, out: &mut [R; 8]) {
    if coef.is_zero() {
        return;
    }
    let Some(k) = (0..word.len().saturating_sub(1)).find(|&k| word[k] >= word[k + 1]) else {
        let mask = word.iter().fold(0, |m, &b| m | (1 << b));
        out[mask] = out[mask].clone() + coef;
        return;
    };
    let (a, b) = (word[k], word[k + 1]);
    let mut contracted = word[..k].to_vec();
    contracted.extend_from_slice(&word[k + 2..]);
    if a == b {
        reduce_word(gram, &contracted, coef * gram.f(a, a).clone(), out);
    } else {
        let mut swapped = word.to_vec();
        swapped.swap(k, k + 1);
        reduce_word(gram, &swapped, -coef.clone(), out);
        let two = coef.from_i64_like(2);
        reduce_word(gram, &contracted, coef * two * gram.f(a, b).clone(), out);
    }
}

/// Product in the even Clifford algebra of `gram`.
pub fn even_clifford_multiply<R: Ring>(
    gram: &TernaryGram<R>,
    u: &EvenElement<R>,
    v: &EvenElement<R>,
) -> Result<EvenElement<R>> {
    if !u.same_ring(v) || !u.c[0].same_ring(gram.zero_elem()) {
        return Err(Error::RingMismatch);
    }
    let zero = gram.zero_elem().clone();
    let mut out: [R; 8] = std::array::from_fn(|_| zero.clone());
    for (a, &ma) in u.c.iter().zip(&EVEN_MASKS) {
        if a.is_zero() {
            continue;
        }
        for (b, &mb) in v.c.iter().zip(&EVEN_MASKS) {
            if b.is_zero() {
                continue;
            }
            let mut word = mask_word(ma);
            word.extend(mask_word(mb));
            reduce_word(gram, &word, a.clone() * b.clone(), &mut out);
        }
    }
    debug_assert!(
        [1usize, 2, 4, 7].iter().all(|&m| out[m].is_zero()),
        "odd part of an even product"
    );
    Ok(EvenElement {
        c: EVEN_MASKS.map(|m| out[m].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Gf, GfField};

    fn f13() -> &'static GfField {
        GfField::canonical(13, 1).unwrap()
    }

    fn mul(g: &TernaryGram<Gf>, u: &EvenElement<Gf>, v: &EvenElement<Gf>) -> EvenElement<Gf> {
        even_clifford_multiply(g, u, v).unwrap()
    }

    #[test]
    fn relations_at_standard_form() {
        let f = f13();
        let g = TernaryGram::standard(f.zero());
        let i = f.sqrt_minus_one().unwrap();
        let (x, y, z) = (EvenElement::x(&i), EvenElement::y(&i), EvenElement::z(&i));
        let one = EvenElement::one(f.zero());
        let zero = EvenElement::zero(f.zero());
        assert_eq!(mul(&g, &x, &x), one);
        assert_eq!(mul(&g, &y, &y), zero);
        assert_eq!(mul(&g, &z, &z), zero);
        assert_eq!(mul(&g, &x, &y), -z.clone());
        assert_eq!(mul(&g, &x, &z), -y.clone());
        assert_eq!(mul(&g, &y, &z), zero);
        assert_eq!(mul(&g, &z, &y), zero);
    }

    #[test]
    fn one_is_the_unit() {
        let f = f13();
        let g = TernaryGram::from_upper([2, 5, 7, 1, 3, 11].map(|v| f.from_u64(v)));
        let u = EvenElement::new(f.from_u64(3), f.from_u64(1), f.from_u64(4), f.from_u64(1));
        let one = EvenElement::one(f.zero());
        assert_eq!(mul(&g, &one, &u), u);
        assert_eq!(mul(&g, &u, &one), u);
    }

    #[test]
    fn ring_mismatch() {
        let g = TernaryGram::standard(f13().zero());
        let other = GfField::canonical(7, 1).unwrap();
        let u = EvenElement::one(other.zero());
        assert_eq!(
            even_clifford_multiply(&g, &u, &u),
            Err(Error::RingMismatch)
        );
    }
}
