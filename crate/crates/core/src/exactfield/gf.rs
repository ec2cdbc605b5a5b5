use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

use super::{factor, Field, Ring, UniPoly};
use crate::{Error, Result};

/// Largest supported absolute extension degree `n` of `F_{p^n}`.
pub const MAX_EXT_DEGREE: usize = 32;

/// A finite field `F_{p^n} = F_p[x]/(modulus)`.
///
/// Fields are interned: [`GfField::canonical`] returns the same `'static`
/// reference for the same `(p, n)`, with the modulus fixed as the
/// lexicographically first monic irreducible polynomial of degree `n`.
pub struct GfField {
    p: u64,
    degree: usize,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u64>,
    order: u128,
}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.degree)
        }
    }
}

type FieldRegistry = Mutex<HashMap<(u64, usize), &'static GfField>>;
type EmbeddingRegistry = Mutex<HashMap<(u64, usize, usize), Embedding>>;

fn fields() -> &'static FieldRegistry {
    static FIELDS: OnceLock<FieldRegistry> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embeddings() -> &'static EmbeddingRegistry {
    static EMBEDDINGS: OnceLock<EmbeddingRegistry> = OnceLock::new();
    EMBEDDINGS.get_or_init(|| Mutex::new(HashMap::new()))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GfField {
    /// The interned field `F_{p^n}`.
    pub fn canonical(p: u64, n: usize) -> Result<&'static GfField> {
        if let Some(f) = fields().lock().unwrap().get(&(p, n)) {
            return Ok(f);
        }
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!(
                "{p} is not an odd prime below 2^31"
            )));
        }
        if n == 0 || n > MAX_EXT_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {n} outside 1..={MAX_EXT_DEGREE}"
            )));
        }
        let mut order: u128 = 1;
        for _ in 0..n {
            order = order
                .checked_mul(p as u128)
                .filter(|o| *o < 1 << 127)
                .ok_or_else(|| Error::InvalidField(format!("p^n too large for p={p}, n={n}")))?;
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, n)?
        };
        let field: &'static GfField = Box::leak(Box::new(GfField {
            p,
            degree: n,
            modulus,
            order,
        }));
        let mut reg = fields().lock().unwrap();
        Ok(*reg.entry((p, n)).or_insert(field))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn prime_field(&self) -> &'static GfField {
        GfField::canonical(self.p, 1).expect("prime field of an existing field")
    }

    pub fn zero(&'static self) -> Gf {
        Gf {
            field: self,
            c: [0; MAX_EXT_DEGREE],
        }
    }

    pub fn one(&'static self) -> Gf {
        self.from_u64(1)
    }

    pub fn from_u64(&'static self, v: u64) -> Gf {
        let mut z = self.zero();
        z.c[0] = (v % self.p) as u32;
        z
    }

    pub fn from_i64(&'static self, v: i64) -> Gf {
        let p = self.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    /// Element with the given coordinates in the power basis `1, x, x^2, ...`.
    pub fn from_coeffs(&'static self, coeffs: &[u64]) -> Result<Gf> {
        if coeffs.len() > self.degree {
            return Err(Error::InvalidField(format!(
                "{} coordinates given for a field of degree {}",
                coeffs.len(),
                self.degree
            )));
        }
        let mut z = self.zero();
        for (slot, &c) in z.c.iter_mut().zip(coeffs) {
            *slot = (c % self.p) as u32;
        }
        Ok(z)
    }

    /// The class of `x`, a generator of the field over `F_p`.
    pub fn generator(&'static self) -> Gf {
        if self.degree == 1 {
            return self.zero();
        }
        let mut z = self.zero();
        z.c[1] = 1;
        z
    }

    /// The element whose base-`p` digits are its coordinates.
    pub fn from_index(&'static self, mut k: u128) -> Gf {
        let mut z = self.zero();
        for slot in z.c.iter_mut().take(self.degree) {
            *slot = (k % self.p as u128) as u32;
            k /= self.p as u128;
        }
        z
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&'static self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(move |k| self.from_index(k))
    }

    pub fn random<R: Rng + ?Sized>(&'static self, rng: &mut R) -> Gf {
        let mut z = self.zero();
        for slot in z.c.iter_mut().take(self.degree) {
            *slot = rng.random_range(0..self.p) as u32;
        }
        z
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&'static self, rng: &mut R) -> Gf {
        loop {
            let z = self.random(rng);
            if !z.is_zero() {
                return z;
            }
        }
    }

    /// `sqrt(-1)` in this field, if present.
    pub fn sqrt_minus_one(&'static self) -> Option<Gf> {
        self.from_i64(-1).sqrt()
    }
}

fn find_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    let fp = GfField::canonical(p, 1)?;
    let total = (p as u128).pow(n as u32);
    // index 0 is x^n itself; start from 1
    for k in 1..total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut r = k;
        for _ in 0..n {
            coeffs.push((r % p as u128) as u64);
            r /= p as u128;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let poly = UniPoly::new(coeffs.iter().map(|&c| fp.from_u64(c)).collect(), fp.zero());
        if factor::is_irreducible(&poly) {
            return Ok(coeffs);
        }
    }
    Err(Error::InvalidField(format!(
        "no irreducible polynomial of degree {n} over F_{p}"
    )))
}

/// Element of a finite field `F_{p^n}`; coordinates in the power basis.
#[derive(Clone, Copy)]
pub struct Gf {
    field: &'static GfField,
    c: [u32; MAX_EXT_DEGREE],
}

impl Gf {
    pub fn field(&self) -> &'static GfField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.field.degree]
    }

    pub fn pow(&self, mut e: u128) -> Gf {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Gf {
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc * acc;
            if e.bit(i) {
                acc = acc * *self;
            }
        }
        acc
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> Gf {
        self.pow(self.field.p as u128)
    }

    /// `a -> a^(p^k)`.
    pub fn frobenius_pow(&self, k: usize) -> Gf {
        let mut a = *self;
        for _ in 0..k % self.field.degree.max(1) {
            a = a.frobenius();
        }
        a
    }

    /// Degree over `F_p` of the smallest subfield containing the element.
    pub fn absolute_degree(&self) -> usize {
        let n = self.field.degree;
        (1..=n)
            .filter(|k| n.is_multiple_of(*k))
            .find(|&k| {
                let mut a = *self;
                for _ in 0..k {
                    a = a.frobenius();
                }
                a == *self
            })
            .unwrap_or(n)
    }

    pub fn is_square(&self) -> bool {
        self.is_zero() || self.pow((self.field.order - 1) / 2).is_one()
    }

    pub fn value_u64(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&c| c == 0) {
            Some(self.c[0] as u64)
        } else {
            None
        }
    }

    fn tonelli_shanks(&self) -> Option<Gf> {
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let f = self.field;
        let q1 = f.order - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let minus_one = f.from_i64(-1);
        let z = (2..f.order)
            .map(|k| f.from_index(k))
            .find(|z| z.pow(q1 / 2) == minus_one)
            .expect("a finite field of odd order has non-squares");
        let mut m = s;
        let mut c = z.pow(t);
        let mut x = self.pow(t.div_ceil(2));
        let mut b = self.pow(t);
        while !b.is_one() {
            let mut i = 0;
            let mut bb = b;
            while !bb.is_one() {
                bb = bb * bb;
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = g * g;
            }
            x = x * g;
            c = g * g;
            b = b * c;
            m = i;
        }
        Some(x)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.c == other.c
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.degree.hash(state);
        self.coeffs().hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.c[0])
        } else {
            let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        debug_assert!(std::ptr::eq(self.field, rhs.field), "field mismatch");
        let p = self.field.p as u32;
        let mut out = self;
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()).take(self.field.degree) {
            let s = *a + *b;
            *a = if s >= p { s - p } else { s };
        }
        out
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self + (-rhs)
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        let p = self.field.p as u32;
        let mut out = self;
        for a in out.c.iter_mut().take(self.field.degree) {
            if *a != 0 {
                *a = p - *a;
            }
        }
        out
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        debug_assert!(std::ptr::eq(self.field, rhs.field), "field mismatch");
        let f = self.field;
        let p = f.p;
        let n = f.degree;
        if n == 1 {
            let mut out = self;
            out.c[0] = ((self.c[0] as u64 * rhs.c[0] as u64) % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..n {
            let a = self.c[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a * rhs.c[j] as u64) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..n {
                let m = f.modulus[j];
                if m != 0 {
                    prod[k - n + j] = (prod[k - n + j] + (p - t) * m) % p;
                }
            }
        }
        let mut out = f.zero();
        for i in 0..n {
            out.c[i] = prod[i] as u32;
        }
        out
    }
}

impl Div for Gf {
    type Output = Gf;
    fn div(self, rhs: Gf) -> Gf {
        self * rhs.inv().expect("division by zero in a finite field")
    }
}

impl Ring for Gf {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }
    fn same_ring(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field)
    }
    fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }
}

impl Field for Gf {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order - 2))
    }

    fn sqrt(&self) -> Option<Self> {
        let r = self.tonelli_shanks()?;
        let s = -r;
        Some(if s.canonical_cmp(&r) == Ordering::Less { s } else { r })
    }

    fn characteristic(&self) -> u64 {
        self.field.p
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.field
            .degree
            .cmp(&other.field.degree)
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs()
                .iter()
                .map(|&c| serde_json::Value::from(c))
                .collect(),
        )
    }
}

/// A field homomorphism `F_{p^m} -> F_{p^n}` for `m | n`, determined by the
/// image of the generator.
#[derive(Clone, Copy, Debug)]
pub struct Embedding {
    source: &'static GfField,
    target: &'static GfField,
    gen_image: Gf,
}

impl Embedding {
    pub fn identity(field: &'static GfField) -> Self {
        Embedding {
            source: field,
            target: field,
            gen_image: field.generator(),
        }
    }

    pub fn source(&self) -> &'static GfField {
        self.source
    }

    pub fn target(&self) -> &'static GfField {
        self.target
    }

    pub fn is_identity(&self) -> bool {
        std::ptr::eq(self.source, self.target)
    }

    pub fn apply(&self, a: &Gf) -> Gf {
        debug_assert!(std::ptr::eq(a.field, self.source));
        if self.is_identity() {
            return *a;
        }
        let mut acc = self.target.zero();
        for &c in a.coeffs().iter().rev() {
            acc = acc * self.gen_image + self.target.from_u64(c as u64);
        }
        acc
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        debug_assert!(std::ptr::eq(self.target, other.source));
        Embedding {
            source: self.source,
            target: other.target,
            gen_image: other.apply(&self.gen_image),
        }
    }
}

/// The canonical embedding of `source` into `target`: the generator is sent
/// to the smallest root of its minimal polynomial.
pub fn embedding(source: &'static GfField, target: &'static GfField) -> Result<Embedding> {
    if std::ptr::eq(source, target) {
        return Ok(Embedding::identity(source));
    }
    if source.p != target.p || !target.degree.is_multiple_of(source.degree) {
        return Err(Error::RingMismatch);
    }
    let key = (source.p, source.degree, target.degree);
    if let Some(e) = embeddings().lock().unwrap().get(&key) {
        return Ok(*e);
    }
    let gen_image = if source.degree == 1 {
        target.zero()
    } else {
        let fp = source.prime_field();
        let modulus = UniPoly::new(
            source.modulus.iter().map(|&c| fp.from_u64(c)).collect(),
            fp.zero(),
        );
        let mut roots = factor::roots_in_field(&modulus, target)?;
        roots.sort_by(|a, b| a.canonical_cmp(b));
        roots[0]
    };
    let e = Embedding {
        source,
        target,
        gen_image,
    };
    embeddings().lock().unwrap().insert(key, e);
    Ok(e)
}
