use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactfield::{embedding, Field, Gf, Ring, UniPoly};

/// Exponent vector `(i, j, k)` of the monomial `x0^i x1^j x2^k`.
pub type Exp3 = [u32; 3];

/// Polynomial in three variables `x0, x1, x2`, stored sparsely.
#[derive(Clone, PartialEq)]
pub struct Poly3<F> {
    terms: BTreeMap<Exp3, F>,
    zero: F,
}

impl<F: Ring> Poly3<F> {
    pub fn zero(zero: F) -> Self {
        Poly3 {
            terms: BTreeMap::new(),
            zero,
        }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: F, e: Exp3) -> Self {
        let mut p = Self::zero(c.zero_like());
        p.add_term(e, c);
        p
    }

    /// The variable `x_k`.
    pub fn var(k: usize, zero: F) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::monomial(zero.one_like(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp3, F)>, zero: F) -> Self {
        let mut p = Self::zero(zero);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp3, c: F) {
        let v = self.terms.remove(&e).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp3) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` when every term has total degree `d`; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn map<G: Ring>(&self, zero: G, f: impl Fn(&F) -> G) -> Poly3<G> {
        Poly3::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), zero)
    }

    pub fn eval(&self, pt: &[F; 3]) -> F {
        let mut acc = self.zero.clone();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.zero.clone());
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            out.add_term(e2, c.clone() * self.zero.from_i64_like(e[k] as i64));
        }
        out
    }

    /// `self(r0(s), r1(s), r2(s))`.
    pub fn substitute(&self, r: &[UniPoly<F>; 3]) -> UniPoly<F> {
        let max: [u32; 3] =
            std::array::from_fn(|k| self.terms.keys().map(|e| e[k]).max().unwrap_or(0));
        let powers: Vec<Vec<UniPoly<F>>> = (0..3)
            .map(|k| {
                let mut v = vec![UniPoly::constant(self.zero.one_like())];
                for j in 1..=max[k] as usize {
                    let next = v[j - 1].clone() * r[k].clone();
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = UniPoly::zero(self.zero.clone());
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for k in 0..3 {
                t = t * powers[k][e[k] as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficients as a polynomial in `x_var` over polynomials in `x_other`,
    /// after setting the remaining variable to 1.
    pub fn to_bivariate(&self, x_var: usize, x_other: usize) -> UniPoly<UniPoly<F>> {
        let mut rows: BTreeMap<u32, BTreeMap<u32, F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let slot = rows.entry(e[x_var]).or_default().entry(e[x_other]).or_insert(self.zero.clone());
            *slot = slot.clone() + c.clone();
        }
        let zero_poly = UniPoly::zero(self.zero.clone());
        let top = rows.keys().max().copied().unwrap_or(0);
        let coeffs = (0..=top)
            .map(|dy| match rows.get(&dy) {
                None => zero_poly.clone(),
                Some(m) => {
                    let topx = m.keys().max().copied().unwrap_or(0);
                    UniPoly::new(
                        (0..=topx).map(|dx| m.get(&dx).cloned().unwrap_or(self.zero.clone())).collect(),
                        self.zero.clone(),
                    )
                }
            })
            .collect();
        UniPoly::new(coeffs, zero_poly)
    }
}

impl Poly3<Gf> {
    /// Evaluates at a point whose coordinates may lie in an extension of the
    /// coefficient field.
    pub fn eval_ext(&self, pt: &[Gf; 3]) -> Gf {
        let emb = embedding(self.zero.field(), pt[0].field()).expect("point over an extension field");
        self.map(pt[0].field().zero(), |c| emb.apply(c)).eval(pt)
    }
}

impl<F: Field> Poly3<F> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| serde_json::json!({ "exp": e, "coef": c.to_json() }))
                .collect(),
        )
    }
}

impl<F: Ring> fmt::Debug for Poly3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c:?}*x0^{}*x1^{}*x2^{}", e[0], e[1], e[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Ring> Add for Poly3<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<F: Ring> Sub for Poly3<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Ring> Neg for Poly3<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let zero = self.zero.clone();
        self.map(zero, |c| -c.clone())
    }
}

impl<F: Ring> Mul for Poly3<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero(self.zero.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Ring> Ring for Poly3<F> {
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
        self.terms.is_empty()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.zero.same_ring(&other.zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GfField;

    #[test]
    fn euler_identity() {
        let f = GfField::canonical(13, 1).unwrap();
        let p = Poly3::from_terms(
            [([3, 0, 0], f.one()), ([1, 1, 1], f.from_u64(4)), ([0, 0, 3], f.from_u64(7))],
            f.zero(),
        );
        let mut euler = Poly3::zero(f.zero());
        for k in 0..3 {
            euler = euler + Poly3::var(k, f.zero()) * p.partial(k);
        }
        assert_eq!(euler, p.clone() * Poly3::constant(f.from_u64(3)));
        assert_eq!(p.homogeneous_degree(), Some(3));
    }

    #[test]
    fn substitution_matches_pointwise_evaluation() {
        let f = GfField::canonical(7, 1).unwrap();
        let p = Poly3::from_terms(
            [([2, 0, 0], f.one()), ([0, 1, 1], f.from_u64(3)), ([1, 0, 1], f.from_u64(5))],
            f.zero(),
        );
        let s = UniPoly::x(f.zero());
        let one = UniPoly::constant(f.one());
        let r = [s.clone(), one.clone(), s.clone() + one];
        let h = p.substitute(&r);
        for a in f.elements() {
            let pt = [r[0].eval(&a), r[1].eval(&a), r[2].eval(&a)];
            assert_eq!(h.eval(&a), p.eval(&pt));
        }
    }
}
