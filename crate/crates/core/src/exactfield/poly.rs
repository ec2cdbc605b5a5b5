use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Mat, Ring};
use crate::{Error, Result};

/// Dense univariate polynomial, lowest degree first.
///
/// The zero element of the coefficient ring is stored alongside the
/// coefficients so that the zero polynomial still knows its ring.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Ring> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>, zero: F) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, zero }
    }

    pub fn zero(zero: F) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: F) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// `c * X^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Self::new(coeffs, zero)
    }

    /// The variable `X`.
    pub fn x(zero: F) -> Self {
        Self::monomial(zero.one_like(), 1)
    }

    /// `X - a`.
    pub fn linear_root(a: F) -> Self {
        let zero = a.zero_like();
        Self::new(vec![-a, zero.one_like()], zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<G: Ring>(&self, zero: G, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(self.zero.clone(), |a| a.clone() * c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * self.zero.from_i64_like(i as i64))
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// `self(other(X))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc * other.clone() + Self::constant(c.clone());
        }
        acc
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.zero.clone())
    }

    /// Sylvester matrix of `self` and `other`, sized `(m+n) x (m+n)`.
    pub fn sylvester(&self, other: &Self) -> Mat<F> {
        let m = self.degree().unwrap_or(0);
        let n = other.degree().unwrap_or(0);
        let size = m + n;
        let mut mat = Mat::zeros(size, size, self.zero.clone());
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                mat.set(row, row + k, c.clone());
            }
        }
        for row in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                mat.set(n + row, row + k, c.clone());
            }
        }
        mat
    }

    /// Smallest `k` with a nonzero coefficient of `X^k`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("leading coefficient is nonzero");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().inv().expect("leading coefficient is nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.zero.clone()), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].clone() - c.clone() * dc.clone();
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q, self.zero.clone()), Self::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(self.zero.one_like()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc * base.clone()).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (base.clone() * base).rem(m);
            }
        }
        acc
    }
}

/// `Res_y(a, b)` for polynomials in `y` over `F[x]`, by fraction-free
/// elimination on the Sylvester matrix. Zero if either input is zero.
pub fn resultant_bivariate<F: Field>(a: &UniPoly<UniPoly<F>>, b: &UniPoly<UniPoly<F>>) -> UniPoly<F> {
    let zero = a.zero.clone();
    if a.is_zero() || b.is_zero() {
        return zero;
    }
    if a.degree() == Some(0) && b.degree() == Some(0) {
        return zero.one_like();
    }
    a.sylvester(b).det_bareiss()
}

/// Resultant as the determinant of the Sylvester matrix.
///
/// The resultant with the zero polynomial is zero; two zero inputs are an
/// error.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<F> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial),
        (true, false) | (false, true) => return Ok(f.zero.clone()),
        _ => {}
    }
    if f.degree() == Some(0) && g.degree() == Some(0) {
        return Ok(f.zero.one_like());
    }
    Ok(f.sylvester(g).det())
}

impl<F: Ring> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*X"),
                _ => format!("{c:?}*X^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<F: Ring> Add for UniPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Self::new(coeffs, self.zero)
    }
}

impl<F: Ring> Sub for UniPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Self::new(coeffs, self.zero)
    }
}

impl<F: Ring> Neg for UniPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let zero = self.zero.clone();
        Self::new(self.coeffs.into_iter().map(|c| -c).collect(), zero)
    }
}

impl<F: Ring> Mul for UniPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.zero);
        }
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(coeffs, self.zero)
    }
}

impl<F: Ring> Ring for UniPoly<F> {
    fn zero_like(&self) -> Self {
        Self::zero(self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_i64_like(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.zero.same_ring(&other.zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GfField;

    fn poly(p: u64, c: &[i64]) -> UniPoly<crate::exactfield::Gf> {
        let f = GfField::canonical(p, 1).unwrap();
        UniPoly::new(c.iter().map(|&v| f.from_i64(v)).collect(), f.zero())
    }

    #[test]
    fn resultant_examples_over_f5() {
        let r = resultant(&poly(5, &[0, 1]), &poly(5, &[-1, 1])).unwrap();
        assert!(!r.is_zero());
        let r = resultant(&poly(5, &[-2, 1]), &poly(5, &[-2, 1])).unwrap();
        assert!(r.is_zero());
        let r = resultant(&poly(5, &[1, 0, 1]), &poly(5, &[3, 1])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_zero_cases() {
        let z = poly(5, &[]);
        assert_eq!(resultant(&z, &z), Err(Error::ZeroPolynomial));
        assert!(resultant(&z, &poly(5, &[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn division_identity() {
        let a = poly(7, &[3, 1, 4, 1, 5]);
        let b = poly(7, &[2, 6, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b.clone() + r.clone(), a);
        assert!(r.degree_i64() < b.degree_i64());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let common = poly(11, &[3, 1]);
        let a = common.clone() * poly(11, &[1, 0, 1]);
        let b = common.clone() * poly(11, &[5, 2]);
        assert_eq!(a.gcd(&b), common);
    }
}
