use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Ring, UniPoly};

/// Power series in one variable truncated at a fixed precision, i.e. an
/// element of `F[[t]]/(t^prec)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    /// Panics if `prec == 0` or `coeffs` is empty.
    pub fn new(mut coeffs: Vec<F>, prec: usize) -> Self {
        assert!(prec > 0 && !coeffs.is_empty());
        let zero = coeffs[0].zero_like();
        coeffs.resize(prec, zero);
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: F, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    /// The uniformizer `t`.
    pub fn t(zero: F, prec: usize) -> Self {
        let one = zero.one_like();
        Self::new(vec![zero, one], prec)
    }

    pub fn from_poly(p: &UniPoly<F>, prec: usize) -> Self {
        let mut c = p.coeffs().to_vec();
        c.truncate(prec);
        if c.is_empty() {
            c.push(p.zero_elem().clone());
        }
        Self::new(c, prec)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Order of vanishing; `None` when zero to the working precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let a0 = self.coeffs[0].inv()?;
        let n = self.precision();
        let mut b = vec![a0.clone()];
        for k in 1..n {
            let s = (1..=k).fold(a0.zero_like(), |acc, j| {
                acc + self.coeffs[j].clone() * b[k - j].clone()
            });
            b.push(-(s * a0.clone()));
        }
        Some(TruncatedSeries { coeffs: b })
    }

    fn zero_elem(&self) -> F {
        self.coeffs[0].zero_like()
    }
}

impl<F: Field> Add for TruncatedSeries<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl<F: Field> Sub for TruncatedSeries<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for TruncatedSeries<F> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Field> Mul for TruncatedSeries<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let zero = self.zero_elem();
        let mut coeffs = vec![zero; n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                coeffs[i + j] = coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl<F: Field> Ring for TruncatedSeries<F> {
    fn zero_like(&self) -> Self {
        Self::constant(self.zero_elem(), self.precision())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero_elem().one_like(), self.precision())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.zero_elem().from_i64_like(n), self.precision())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.precision() == other.precision() && self.coeffs[0].same_ring(&other.coeffs[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GfField;

    #[test]
    fn inverse_of_one_minus_t() {
        let f = GfField::canonical(13, 1).unwrap();
        let s = TruncatedSeries::new(vec![f.one(), f.from_i64(-1)], 5);
        let inv = s.inv().unwrap();
        assert!(inv.coeffs().iter().all(|c| c.is_one()));
        assert!((s * inv).is_one());
    }

    #[test]
    fn valuation_of_t_squared() {
        let f = GfField::canonical(7, 1).unwrap();
        let t = TruncatedSeries::t(f.zero(), 4);
        assert_eq!((t.clone() * t.clone()).valuation(), Some(2));
        assert_eq!((t.clone() * t.clone() * t.clone() * t).valuation(), None);
    }
}
