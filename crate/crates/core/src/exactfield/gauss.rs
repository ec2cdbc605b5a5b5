use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};

/// Element `re + im*i` of the Gaussian rationals `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `re_n/re_d + (im_n/im_d) i`. Panics on a zero denominator.
    pub fn from_fractions(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussRat {
            re: BigRational::new(re_n.into(), re_d.into()),
            im: BigRational::new(im_n.into(), im_d.into()),
        }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

fn rational_json(q: &BigRational) -> serde_json::Value {
    let enc = |b: &BigInt| match i64::try_from(b) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(b.to_string()),
    };
    serde_json::Value::Array(vec![enc(q.numer()), enc(q.denom())])
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl Add for GaussRat {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussRat {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Mul for GaussRat {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Ring for GaussRat {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    /// `(c + di)^2 = a + bi` with `c^2 = (a + |z|)/2` and `d = b/(2c)`, where
    /// `|z| = sqrt(a^2 + b^2)` must itself be rational.
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let two = BigRational::from_integer(2.into());
        let r = if self.im.is_zero() {
            if self.re.is_negative() {
                GaussRat::new(BigRational::zero(), rational_sqrt(&-self.re.clone())?)
            } else {
                GaussRat::new(rational_sqrt(&self.re)?, BigRational::zero())
            }
        } else {
            let modulus = rational_sqrt(&self.norm())?;
            let c = rational_sqrt(&((&self.re + &modulus) / &two))?;
            let d = &self.im / (&two * &c);
            GaussRat::new(c, d)
        };
        debug_assert_eq!(r.clone() * r.clone(), *self);
        let s = -r.clone();
        Some(if s.canonical_cmp(&r) == Ordering::Less { s } else { r })
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(vec![rational_json(&self.re), rational_json(&self.im)])
    }
}
