//! The degenerate even Clifford algebra as the path algebra of the quiver
//! `+ ⇄ -` with both composites zero.
//!
//! Besides the `(1, e1e2, e2e3, e1e3)` coordinates of [`EvenElement`], the
//! normalized algebra at `diag(1, 1, 0)` is also available in the
//! coordinates `(1, x, y, z)` as [`NormElem`]. Its structure constants do not
//! involve `i`, so it is defined over every field of odd characteristic,
//! including those without a square root of `-1`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::{even_clifford_multiply, EvenElement, TernaryGram};
use crate::exactfield::{Field, Gf, GfField, Mat, Ring};
use crate::{Error, Result};

/// Element `a0 + a1 x + a2 y + a3 z` of the normalized algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormElem<R> {
    pub a: [R; 4],
}

impl<R: Ring> NormElem<R> {
    pub fn new(a0: R, a1: R, a2: R, a3: R) -> Self {
        NormElem {
            a: [a0, a1, a2, a3],
        }
    }

    pub fn basis(k: usize, zero: R) -> Self {
        let mut a: [R; 4] = std::array::from_fn(|_| zero.clone());
        a[k] = zero.one_like();
        NormElem { a }
    }

    pub fn zero(zero: R) -> Self {
        NormElem {
            a: std::array::from_fn(|_| zero.clone()),
        }
    }

    pub fn one(zero: R) -> Self {
        Self::basis(0, zero)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Ring::is_zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        NormElem {
            a: self.a.clone().map(|v| v * c.clone()),
        }
    }

    pub fn to_even(&self, i: &R) -> EvenElement<R> {
        EvenElement::from_normalized(&self.a, i)
    }
}

/// `TABLE[j][k]` is `(sign, index)` with `b_j b_k = sign * b_index` in the
/// basis `(1, x, y, z)`; sign 0 marks a zero product.
const TABLE: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (1, 0), (-1, 3), (-1, 2)],
    [(1, 2), (1, 3), (0, 0), (0, 0)],
    [(1, 3), (1, 2), (0, 0), (0, 0)],
];

impl<R: Ring> Mul for NormElem<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let zero = self.a[0].zero_like();
        let mut out: [R; 4] = std::array::from_fn(|_| zero.clone());
        for (j, u) in self.a.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (k, v) in rhs.a.iter().enumerate() {
                let (sign, idx) = TABLE[j][k];
                if sign == 0 || v.is_zero() {
                    continue;
                }
                let t = u.clone() * v.clone();
                out[idx] = if sign > 0 {
                    out[idx].clone() + t
                } else {
                    out[idx].clone() - t
                };
            }
        }
        NormElem { a: out }
    }
}

impl<R: Ring> Add for NormElem<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.a;
        let [b0, b1, b2, b3] = rhs.a;
        Self::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<R: Ring> Sub for NormElem<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for NormElem<R> {
    type Output = Self;
    fn neg(self) -> Self {
        NormElem {
            a: self.a.map(|v| -v),
        }
    }
}

/// Vertices of the quiver.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Vertex {
    Plus,
    Minus,
}

impl Vertex {
    fn other(self) -> Self {
        match self {
            Vertex::Plus => Vertex::Minus,
            Vertex::Minus => Vertex::Plus,
        }
    }
}

/// A path in the quiver. Arrows alternate, so a path is determined by its
/// source and length: `alpha` leaves `+` and `beta` leaves `-`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Path {
    pub source: Vertex,
    pub len: usize,
}

impl Path {
    pub fn target(self) -> Vertex {
        if self.len.is_multiple_of(2) {
            self.source
        } else {
            self.source.other()
        }
    }

    /// `self * q`, i.e. first `q` then `self`.
    pub fn after(self, q: Path) -> Option<Path> {
        (q.target() == self.source).then_some(Path {
            source: q.source,
            len: self.len + q.len,
        })
    }

    pub fn name(self) -> &'static str {
        match (self.source, self.len) {
            (Vertex::Plus, 0) => "e+",
            (Vertex::Minus, 0) => "e-",
            (Vertex::Plus, 1) => "alpha",
            (Vertex::Minus, 1) => "beta",
            (Vertex::Minus, 2) => "alpha*beta",
            (Vertex::Plus, 2) => "beta*alpha",
            _ => "long path",
        }
    }
}

/// Paths of length at most 2; paths of length 3 or more contain a composite
/// and lie in the relation ideal.
pub const SHORT_PATHS: [Path; 6] = [
    Path { source: Vertex::Plus, len: 0 },
    Path { source: Vertex::Minus, len: 0 },
    Path { source: Vertex::Plus, len: 1 },
    Path { source: Vertex::Minus, len: 1 },
    Path { source: Vertex::Minus, len: 2 },
    Path { source: Vertex::Plus, len: 2 },
];

/// Images of the quiver generators in the even Clifford algebra of
/// `diag(1, 1, 0)`: `e± = (1 ± x)/2`, `alpha = (y + z)/2`, `beta = (y - z)/2`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuiverImages<R> {
    pub e_plus: EvenElement<R>,
    pub e_minus: EvenElement<R>,
    pub alpha: EvenElement<R>,
    pub beta: EvenElement<R>,
}

/// Outcome of comparing the path algebra with the even Clifford algebra.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PathAlgebraCheck {
    /// Every product of short paths maps to the product of the images.
    pub homomorphism: bool,
    pub unital: bool,
    /// Rank of the induced map on the span of short paths.
    pub image_rank: usize,
    pub kernel_dim: usize,
    /// The kernel is spanned by `alpha*beta` and `beta*alpha`.
    pub kernel_is_relation_ideal: bool,
}

impl PathAlgebraCheck {
    pub fn pass(&self) -> bool {
        self.homomorphism
            && self.unital
            && self.image_rank == 4
            && self.kernel_dim == 2
            && self.kernel_is_relation_ideal
    }
}

/// `1 + x, 1 - x, y + z, y - z`.
fn normalized_generators<R: Ring>(zero: &R) -> [NormElem<R>; 4] {
    let h = |a: [i64; 4]| NormElem {
        a: a.map(|v| zero.from_i64_like(v)),
    };
    [h([1, 1, 0, 0]), h([1, -1, 0, 0]), h([0, 0, 1, 1]), h([0, 0, 1, -1])]
}

/// Generator images in normalized coordinates (already divided by 2).
pub fn quiver_generators_normalized<F: Field>(zero: &F) -> [NormElem<F>; 4] {
    let half = zero.half();
    normalized_generators(zero).map(|g| g.scale(&half))
}

/// The generator map into the even Clifford algebra of a normalized form.
///
/// `i` must be a square root of `-1`; the map is checked to be a unital
/// algebra homomorphism that is bijective modulo the relations.
pub fn quiver_presentation<F: Field>(gram: &TernaryGram<F>, i: &F) -> Result<QuiverImages<F>> {
    if !gram.is_standard() || !(i.clone() * i.clone() + i.one_like()).is_zero() {
        return Err(Error::NotNormalized);
    }
    let [ep, em, al, be] = quiver_generators_normalized(i).map(|g| g.to_even(i));
    let images = QuiverImages {
        e_plus: ep,
        e_minus: em,
        alpha: al,
        beta: be,
    };
    let check = path_algebra_check(gram, &images)?;
    if !check.pass() {
        return Err(Error::Aborted(format!(
            "quiver presentation failed its self-check: {check:?}"
        )));
    }
    Ok(images)
}

/// Image of a short path under the generator map.
pub fn path_image<F: Field>(
    gram: &TernaryGram<F>,
    images: &QuiverImages<F>,
    p: Path,
) -> Result<EvenElement<F>> {
    let arrow = |v: Vertex| match v {
        Vertex::Plus => images.alpha.clone(),
        Vertex::Minus => images.beta.clone(),
    };
    match p.len {
        0 => Ok(match p.source {
            Vertex::Plus => images.e_plus.clone(),
            Vertex::Minus => images.e_minus.clone(),
        }),
        _ => {
            let mut acc = arrow(p.source);
            let mut at = p.source.other();
            for _ in 1..p.len {
                acc = even_clifford_multiply(gram, &arrow(at), &acc)?;
                at = at.other();
            }
            Ok(acc)
        }
    }
}

/// Structure-constant comparison between the path algebra (spanned by the
/// short paths) and the even Clifford algebra.
pub fn path_algebra_check<F: Field>(
    gram: &TernaryGram<F>,
    images: &QuiverImages<F>,
) -> Result<PathAlgebraCheck> {
    let zero = gram.zero_elem().clone();
    let imgs: Vec<EvenElement<F>> = SHORT_PATHS
        .iter()
        .map(|&p| path_image(gram, images, p))
        .collect::<Result<_>>()?;
    let mut homomorphism = true;
    for (a, &p) in SHORT_PATHS.iter().enumerate() {
        for (b, &q) in SHORT_PATHS.iter().enumerate() {
            let lhs = even_clifford_multiply(gram, &imgs[a], &imgs[b])?;
            let rhs = match p.after(q) {
                None => EvenElement::zero(zero.clone()),
                Some(pq) if pq.len <= 2 => {
                    let k = SHORT_PATHS.iter().position(|&s| s == pq).expect("short path");
                    imgs[k].clone()
                }
                Some(_) => EvenElement::zero(zero.clone()),
            };
            homomorphism &= lhs == rhs;
        }
    }
    let unital = imgs[0].clone() + imgs[1].clone() == EvenElement::one(zero.clone());
    let m = Mat::from_cols(imgs.iter().map(|e| e.c.to_vec()).collect(), zero);
    let kernel = m.kernel();
    let kernel_is_relation_ideal = kernel
        .iter()
        .all(|v| v[..4].iter().all(Ring::is_zero));
    Ok(PathAlgebraCheck {
        homomorphism,
        unital,
        image_rank: m.rank(),
        kernel_dim: kernel.len(),
        kernel_is_relation_ideal,
    })
}

/// Exhaustive list of idempotents of the normalized algebra over a small
/// finite field, compared with the family `{0, 1, (1 ± x)/2 + a2 y + a3 z}`.
#[derive(Clone, Debug)]
pub struct IdempotentCensus {
    pub field_order: u128,
    pub scanned: u128,
    pub idempotents: Vec<NormElem<Gf>>,
    pub family: Vec<NormElem<Gf>>,
}

impl IdempotentCensus {
    pub fn count(&self) -> usize {
        self.idempotents.len()
    }

    /// The scan found exactly the predicted family.
    pub fn matches(&self) -> bool {
        let mut a: Vec<String> = self.idempotents.iter().map(|e| format!("{:?}", e.a)).collect();
        let mut b: Vec<String> = self.family.iter().map(|e| format!("{:?}", e.a)).collect();
        a.sort();
        b.sort();
        a == b
    }
}

/// Largest number of algebra elements [`idempotent_family`] will scan.
pub const ENUMERATION_BOUND: u128 = 100_000_000;

pub fn idempotent_family(field: &'static GfField) -> Result<IdempotentCensus> {
    let q = field.order();
    let total = q.checked_pow(4).filter(|t| *t <= ENUMERATION_BOUND).ok_or_else(|| {
        Error::EnumerationBound(format!("{q}^4 elements exceed {ENUMERATION_BOUND}"))
    })?;
    let mut idempotents = Vec::new();
    for k in 0..total {
        let a = std::array::from_fn(|j| field.from_index((k / q.pow(j as u32)) % q));
        let e = NormElem { a };
        if e.clone() * e.clone() == e {
            idempotents.push(e);
        }
    }
    let zero = field.zero();
    let half = zero.half();
    let mut family = vec![NormElem::zero(zero), NormElem::one(zero)];
    for sign in [1i64, -1] {
        for a2 in field.elements() {
            for a3 in field.elements() {
                family.push(NormElem::new(half, half * field.from_i64(sign), a2, a3));
            }
        }
    }
    Ok(IdempotentCensus {
        field_order: q,
        scanned: total,
        idempotents,
        family,
    })
}

/// The radical `(y, z)` of the normalized algebra and its properties.
#[derive(Clone, Debug)]
pub struct RadicalReport<R> {
    pub basis: [NormElem<R>; 2],
    pub square_zero: bool,
    pub two_sided: bool,
    pub quotient_dim: usize,
    /// `(1 ± x)/2` reduce to orthogonal idempotents summing to 1 modulo the
    /// radical, so the quotient is a product of two copies of the field.
    pub quotient_split: bool,
}

impl<R> RadicalReport<R> {
    pub fn pass(&self) -> bool {
        self.square_zero && self.two_sided && self.quotient_dim == 2 && self.quotient_split
    }
}

pub fn radical_ideal<F: Field>(zero: &F) -> RadicalReport<F> {
    let y = NormElem::basis(2, zero.clone());
    let z = NormElem::basis(3, zero.clone());
    let in_radical = |e: &NormElem<F>| e.a[0].is_zero() && e.a[1].is_zero();
    let basis = [y.clone(), z.clone()];
    let square_zero = basis
        .iter()
        .all(|u| basis.iter().all(|v| (u.clone() * v.clone()).is_zero()));
    let two_sided = (0..4).all(|k| {
        let b = NormElem::basis(k, zero.clone());
        basis.iter().all(|r| {
            in_radical(&(b.clone() * r.clone())) && in_radical(&(r.clone() * b.clone()))
        })
    });
    let rad = Mat::from_rows(basis.iter().map(|e| e.a.to_vec()).collect(), zero.clone());
    let quotient_dim = 4 - rad.rank();
    let [ep, em, _, _] = quiver_generators_normalized(zero);
    let mod_rad = |e: NormElem<F>| NormElem::new(e.a[0].clone(), e.a[1].clone(), zero.clone(), zero.clone());
    let quotient_split = mod_rad(ep.clone() * ep.clone()) == mod_rad(ep.clone())
        && mod_rad(em.clone() * em.clone()) == mod_rad(em.clone())
        && mod_rad(ep.clone() * em.clone()).is_zero()
        && mod_rad(ep + em) == NormElem::one(zero.clone());
    RadicalReport {
        basis,
        square_zero,
        two_sided,
        quotient_dim,
        quotient_split,
    }
}
