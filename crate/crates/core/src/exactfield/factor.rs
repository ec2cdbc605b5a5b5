//! Root finding over finite fields: squarefree decomposition, distinct-degree
//! factorization and equal-degree splitting of linear factors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{embedding, Field, Gf, GfField, UniPoly};
use crate::{Error, Result};

const EDF_SEED: u64 = 0x0c1f_f0d5;

/// A root of a polynomial in the algebraic closure.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInfo {
    /// The root, as an element of the canonical field of degree
    /// `extension_degree` over the coefficient field.
    pub root: Gf,
    pub multiplicity: usize,
    /// Degree of the minimal polynomial of the root over the coefficient field.
    pub extension_degree: usize,
}

fn field_of(f: &UniPoly<Gf>) -> &'static GfField {
    f.zero_elem().field()
}

fn x_poly(field: &'static GfField) -> UniPoly<Gf> {
    UniPoly::x(field.zero())
}

fn pth_root(f: &UniPoly<Gf>) -> UniPoly<Gf> {
    let field = field_of(f);
    let p = field.p() as usize;
    let n = field.degree();
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| c.frobenius_pow(n - 1))
        .collect();
    UniPoly::new(coeffs, field.zero())
}

/// Monic pairwise coprime squarefree factors with multiplicities, such that
/// the product of `g^m` is the monic part of `f`. Sorted by multiplicity.
pub fn squarefree_decomposition(f: &UniPoly<Gf>) -> Result<Vec<(UniPoly<Gf>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn sff(f: &UniPoly<Gf>, scale: usize, out: &mut Vec<(UniPoly<Gf>, usize)>) {
    if f.degree_i64() <= 0 {
        return;
    }
    let p = field_of(f).p() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree_i64() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.degree_i64() > 0 {
            out.push((fac, i * scale));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if c.degree_i64() > 0 {
        sff(&pth_root(&c), scale * p, out);
    }
}

/// For squarefree monic `f`, the products of its irreducible factors of each
/// degree, as `(product, degree)` pairs in increasing degree.
pub fn distinct_degree_factorization(f: &UniPoly<Gf>) -> Vec<(UniPoly<Gf>, usize)> {
    let field = field_of(f);
    let q = field.order();
    let x = x_poly(field);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 0;
    while rest.degree_i64() >= 2 * (k as i64 + 1) {
        k += 1;
        h = h.pow_mod(q, &rest);
        let g = (h.clone() - x.clone()).gcd(&rest);
        if g.degree_i64() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, k));
        }
    }
    if rest.degree_i64() > 0 {
        let d = rest.degree().unwrap_or(0);
        out.push((rest, d));
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &UniPoly<Gf>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = field_of(f);
    let q = field.order();
    let f = f.monic();
    let x = x_poly(field);
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(q, &f);
        }
        h
    };
    if !(frob(n) - x.clone()).rem(&f).is_zero() {
        return false;
    }
    prime_divisors(n)
        .into_iter()
        .all(|r| (frob(n / r) - x.clone()).gcd(&f).degree() == Some(0))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Roots of a squarefree `f` that splits into distinct linear factors over
/// its own coefficient field. Sorted canonically.
pub fn equal_degree_roots(f: &UniPoly<Gf>) -> Vec<Gf> {
    let field = field_of(f);
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut roots = Vec::new();
    let mut stack = vec![f.monic()];
    let exp = (field.order() - 1) / 2;
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => continue,
            Some(1) => {
                roots.push(-g.coeff(0));
                continue;
            }
            _ => {}
        }
        loop {
            let a = field.random(&mut rng);
            let shifted = UniPoly::linear_root(-a);
            let h = shifted.pow_mod(exp, &g) - UniPoly::constant(field.one());
            let d = h.gcd(&g);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && Some(dd) < g.degree() {
                let other = g.div_exact(&d).expect("gcd divides");
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots
}

/// Distinct roots of `f` inside `target`, where the coefficient field of `f`
/// is a subfield of `target`. Sorted canonically.
pub fn roots_in_field(f: &UniPoly<Gf>, target: &'static GfField) -> Result<Vec<Gf>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let emb = embedding(field_of(f), target)?;
    let g = f.map(target.zero(), |c| emb.apply(c)).monic();
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = x_poly(target);
    let split = (x.pow_mod(target.order(), &g) - x).gcd(&g);
    Ok(equal_degree_roots(&split))
}

/// All roots of `f` in the algebraic closure with multiplicities, ordered by
/// (extension degree, coordinates).
pub fn factor_roots(f: &UniPoly<Gf>) -> Result<Vec<RootInfo>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = field_of(f);
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f)? {
        for (part, k) in distinct_degree_factorization(&g) {
            let target = GfField::canonical(base.p(), base.degree() * k)?;
            for root in roots_in_field(&part, target)? {
                out.push(RootInfo {
                    root,
                    multiplicity: mult,
                    extension_degree: k,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        a.extension_degree
            .cmp(&b.extension_degree)
            .then_with(|| a.root.canonical_cmp(&b.root))
    });
    Ok(out)
}
