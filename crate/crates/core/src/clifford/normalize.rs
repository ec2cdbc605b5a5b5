use std::cmp::Ordering;

use serde::Serialize;

use super::TernaryGram;
use crate::exactfield::{embedding, Field, GaussRat, Gf, GfField, Mat};
use crate::{Error, Result};

/// A field in which missing square roots can be adjoined by passing to a
/// quadratic extension.
pub trait ConicField: Field {
    /// `m` with entries mapped into a quadratic extension of their field, or
    /// `None` if no such extension is available.
    fn quadratic_lift(m: &Mat<Self>) -> Result<Option<Mat<Self>>>;
}

impl ConicField for Gf {
    fn quadratic_lift(m: &Mat<Gf>) -> Result<Option<Mat<Gf>>> {
        let base = m.zero_elem().field();
        let big = GfField::canonical(base.p(), 2 * base.degree())?;
        let emb = embedding(base, big)?;
        Ok(Some(m.map(big.zero(), |a| emb.apply(a))))
    }
}

impl ConicField for GaussRat {
    fn quadratic_lift(_m: &Mat<GaussRat>) -> Result<Option<Mat<GaussRat>>> {
        Ok(None)
    }
}

/// Which of the two isotropic planes of a rank-two form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum PlaneLabel {
    Plus,
    Minus,
}

impl PlaneLabel {
    pub fn conjugate(self) -> Self {
        match self {
            PlaneLabel::Plus => PlaneLabel::Minus,
            PlaneLabel::Minus => PlaneLabel::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PlaneLabel::Plus => "plus",
            PlaneLabel::Minus => "minus",
        }
    }
}

/// A plane through the origin of a 3-dimensional space, stored as its normal
/// covector scaled so that the first nonzero entry is 1.
#[derive(Clone, PartialEq, Debug)]
pub struct IsotropicPlane<F> {
    normal: [F; 3],
}

impl<F: Field> IsotropicPlane<F> {
    /// Panics on the zero covector.
    pub fn from_normal(normal: [F; 3]) -> Self {
        let lead = normal
            .iter()
            .find(|a| !a.is_zero())
            .expect("nonzero normal covector")
            .inv()
            .expect("nonzero");
        IsotropicPlane {
            normal: normal.map(|a| a * lead.clone()),
        }
    }

    pub fn normal(&self) -> &[F; 3] {
        &self.normal
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.normal
            .iter()
            .zip(v)
            .fold(self.normal[0].zero_like(), |acc, (a, b)| acc + a.clone() * b.clone())
            .is_zero()
    }

    /// Two spanning vectors.
    pub fn basis(&self) -> [Vec<F>; 2] {
        let zero = self.normal[0].zero_like();
        let m = Mat::from_rows(vec![self.normal.to_vec()], zero);
        let k = m.kernel();
        [k[0].clone(), k[1].clone()]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> IsotropicPlane<G> {
        IsotropicPlane::from_normal([f(&self.normal[0]), f(&self.normal[1]), f(&self.normal[2])])
    }

    /// Lexicographic order on the normalized normal covectors.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.normal
            .iter()
            .zip(&other.normal)
            .map(|(a, b)| a.canonical_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.normal.iter().map(Field::to_json).collect())
    }
}

/// A basis `e1, e2, e3` (the columns of `basis_change`) in which the form
/// becomes `diag(1, 1, 0)`, together with the square root of `-1` used for
/// the normalized symbols `x = i e1e2`, `y = i e2e3`, `z = e1e3`.
///
/// The sign of `i` is fixed so that the plane `{a1 - i a2 = 0}` of the
/// normalized coordinates, transported back, is the lexicographically
/// smaller of the two isotropic planes; that plane is labelled plus.
#[derive(Clone, Debug)]
pub struct NormalizedFrame<F> {
    gram: TernaryGram<F>,
    basis_change: Mat<F>,
    inverse: Mat<F>,
    sqrt_minus_one: F,
}

impl<F: Field> NormalizedFrame<F> {
    /// The input form, over the field the frame is defined over.
    pub fn gram(&self) -> &TernaryGram<F> {
        &self.gram
    }

    pub fn basis_change(&self) -> &Mat<F> {
        &self.basis_change
    }

    pub fn sqrt_minus_one(&self) -> &F {
        &self.sqrt_minus_one
    }

    /// `P^T G P`, equal to `diag(1, 1, 0)`.
    pub fn normalized(&self) -> TernaryGram<F> {
        self.gram.congruence(&self.basis_change)
    }

    /// Spanning vector of the radical, in original coordinates.
    pub fn radical(&self) -> Vec<F> {
        self.basis_change.col(2)
    }

    /// Transports a plane given by a normal covector in normalized
    /// coordinates back to original coordinates.
    pub fn plane_from_normalized(&self, normal: &[F; 3]) -> IsotropicPlane<F> {
        let row = Mat::from_rows(vec![normal.to_vec()], self.zero());
        let l = row.mul(&self.inverse).row(0);
        IsotropicPlane::from_normal([l[0].clone(), l[1].clone(), l[2].clone()])
    }

    /// Normal covector, in normalized coordinates, of the labelled plane:
    /// `a1 - i a2` for plus and `a1 + i a2` for minus.
    pub fn normalized_normal(&self, label: PlaneLabel) -> [F; 3] {
        let one = self.zero().one_like();
        let i = self.sqrt_minus_one.clone();
        let a2 = match label {
            PlaneLabel::Plus => -i,
            PlaneLabel::Minus => i,
        };
        [one, a2, self.zero()]
    }

    pub fn plane(&self, label: PlaneLabel) -> IsotropicPlane<F> {
        self.plane_from_normalized(&self.normalized_normal(label))
    }

    fn zero(&self) -> F {
        self.gram.zero_elem().clone()
    }
}

/// Finds a basis in which a rank-two ternary form is `diag(1, 1, 0)`.
///
/// Over a finite field lacking the needed square roots (of `-1` and of the
/// discriminant of the nondegenerate part) the computation moves to the
/// quadratic extension, which always contains them. Over `Q(i)` a missing
/// root is an error.
pub fn normalize_rank2<F: ConicField>(gram: &TernaryGram<F>) -> Result<NormalizedFrame<F>> {
    let rank = gram.rank();
    if rank != 2 {
        return Err(Error::NotCorankOne(rank));
    }
    match normalize_in(gram) {
        Err(Error::NoSquareRoot(what)) => match F::quadratic_lift(gram.matrix())? {
            Some(m) => normalize_in(&TernaryGram::new(m)?),
            None => Err(Error::NoSquareRoot(what)),
        },
        other => other,
    }
}

fn normalize_in<F: Field>(gram: &TernaryGram<F>) -> Result<NormalizedFrame<F>> {
    let zero = gram.zero_elem().clone();
    let one = zero.one_like();
    let i0 = zero
        .from_i64_like(-1)
        .sqrt()
        .ok_or_else(|| Error::NoSquareRoot("-1".into()))?;
    let p = if gram.is_standard() {
        Mat::identity(3, zero.clone())
    } else {
        let r = gram.matrix().kernel().remove(0);
        let m = r.iter().position(|a| !a.is_zero()).expect("kernel vector");
        let (j, k) = match m {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let unit = |idx: usize| {
            let mut v = vec![zero.clone(); 3];
            v[idx] = one.clone();
            v
        };
        let (u, v) = (unit(j), unit(k));
        let alpha = gram.f(j, j).clone();
        let gamma = gram.f(j, k).clone();
        let beta = gram.f(k, k).clone();
        let disc = gamma.clone() * gamma.clone() - alpha.clone() * beta.clone();
        let combo = |a: &F, x: &[F], b: &F, y: &[F]| -> Vec<F> {
            x.iter()
                .zip(y)
                .map(|(xi, yi)| a.clone() * xi.clone() + b.clone() * yi.clone())
                .collect()
        };
        let (h1, h2) = if !alpha.is_zero() {
            let s = disc
                .sqrt()
                .ok_or_else(|| Error::NoSquareRoot(format!("{disc:?}")))?;
            let ainv = alpha.inv().expect("nonzero");
            let a1 = (s.clone() - gamma.clone()) * ainv.clone();
            let a2 = (-s - gamma) * ainv;
            (combo(&a1, &u, &one, &v), combo(&a2, &u, &one, &v))
        } else {
            let two_gamma_inv = (gamma.clone() + gamma).inv().expect("nondegenerate complement");
            let a2 = -(beta * two_gamma_inv);
            (u.clone(), combo(&a2, &u, &one, &v))
        };
        let c = gram.matrix().bilinear(&h1, &h2);
        let s = (c.clone() + c).inv().expect("isotropic lines are distinct");
        let h2: Vec<F> = h2.into_iter().map(|a| a * s.clone()).collect();
        let minus_one = zero.from_i64_like(-1);
        let e1 = combo(&one, &h1, &one, &h2);
        let e2 = combo(&i0, &h1, &(minus_one * i0.clone()), &h2);
        Mat::from_cols(vec![e1, e2, r], zero.clone())
    };
    let inverse = p.inverse().expect("basis change is invertible");
    let frame = NormalizedFrame {
        gram: gram.clone(),
        basis_change: p,
        inverse,
        sqrt_minus_one: i0.clone(),
    };
    assert!(frame.normalized().is_standard(), "normalization failed");
    let plus = frame.plane(PlaneLabel::Plus);
    let minus = frame.plane(PlaneLabel::Minus);
    if minus.canonical_cmp(&plus) == Ordering::Less {
        return Ok(NormalizedFrame {
            sqrt_minus_one: -i0,
            ..frame
        });
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(p: u64, u: [i64; 6]) -> TernaryGram<Gf> {
        let f = GfField::canonical(p, 1).unwrap();
        TernaryGram::from_upper(u.map(|v| f.from_i64(v)))
    }

    #[test]
    fn standard_form_keeps_identity() {
        let g = gram(13, [1, 0, 0, 1, 0, 0]);
        let fr = normalize_rank2(&g).unwrap();
        assert_eq!(fr.basis_change(), &Mat::identity(3, *g.zero_elem()));
    }

    #[test]
    fn hyperbolic_block() {
        let g = gram(13, [0, 1, 0, 0, 0, 0]);
        let fr = normalize_rank2(&g).unwrap();
        assert!(fr.normalized().is_standard());
        let f = GfField::canonical(13, 1).unwrap();
        let n = |a: u64, b: u64| [f.from_u64(a), f.from_u64(b), f.zero()];
        assert_eq!(fr.plane(PlaneLabel::Plus).normal(), &n(0, 1));
        assert_eq!(fr.plane(PlaneLabel::Minus).normal(), &n(1, 0));
    }

    #[test]
    fn labels_over_f5() {
        let g = gram(5, [1, 0, 0, 1, 0, 0]);
        let fr = normalize_rank2(&g).unwrap();
        let f = GfField::canonical(5, 1).unwrap();
        // a1 = 3 a2 and a1 = 2 a2
        assert_eq!(
            fr.plane(PlaneLabel::Plus).normal(),
            &[f.one(), f.from_i64(-3), f.zero()]
        );
        assert_eq!(
            fr.plane(PlaneLabel::Minus).normal(),
            &[f.one(), f.from_i64(-2), f.zero()]
        );
    }

    #[test]
    fn rank_errors() {
        assert_eq!(
            normalize_rank2(&gram(13, [1, 0, 0, 1, 0, 1])).unwrap_err(),
            Error::NotCorankOne(3)
        );
        assert_eq!(
            normalize_rank2(&gram(13, [1, 0, 0, 0, 0, 0])).unwrap_err(),
            Error::NotCorankOne(1)
        );
    }

    #[test]
    fn gaussian_without_root_is_an_error() {
        // disc = -2 is not a square in Q(i)
        let g = TernaryGram::from_upper([1, 0, 0, 2, 0, 0].map(|v| GaussRat::from_ints(v, 0)));
        assert!(matches!(normalize_rank2(&g), Err(Error::NoSquareRoot(_))));
    }
}
