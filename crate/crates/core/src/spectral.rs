//! Pushforward of line bundles along the double cover `t^2 = s(u)` of the
//! affine line, giving rank-two modules with a trace-free endomorphism.
//!
//! Every supported line bundle is an ideal `g (t, c)` of `R' = R[t]/(t^2 - s)`
//! with `g` in `R = F[u]` and `c` a monic divisor of `s`. As an `R`-module it
//! is free on `g c` and `g t`, and multiplication by `t` acts as
//! `[[0, s/c], [c, 0]]`.

use serde_json::json;

use crate::exactfield::{embedding, factor_roots, Field, Gf, Mat, Ring, UniPoly};
use crate::prymcomb::RPrime;
use crate::{Error, Result};

/// The cover `t^2 = s` with `s` squarefree.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCover<F: Ring> {
    branch: UniPoly<F>,
}

impl<F: Field> SpectralCover<F> {
    pub fn new(branch: UniPoly<F>) -> Result<Self> {
        if branch.zero_elem().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_squarefree(&branch) {
            return Err(Error::CoverSingular);
        }
        Ok(SpectralCover { branch })
    }

    pub fn branch(&self) -> &UniPoly<F> {
        &self.branch
    }

    fn zero(&self) -> F {
        self.branch.zero_elem().clone()
    }
}

fn is_squarefree<F: Field>(s: &UniPoly<F>) -> bool {
    !s.is_zero() && s.gcd(&s.derivative()).degree() == Some(0)
}

/// Which of the supported ideal shapes a line bundle was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum LineBundleKind<F: Ring> {
    Trivial,
    /// `(t, s1)` for a monic divisor `s1` of `s`.
    RamificationIdeal(UniPoly<F>),
    /// `g R'` for nonzero `g` in `R`.
    PullbackTwist(UniPoly<F>),
    /// A product of the above.
    Product,
}

/// An ideal `g (t, c)` of `R'`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleOnCover<F: Ring> {
    pub kind: LineBundleKind<F>,
    twist: UniPoly<F>,
    ramification: UniPoly<F>,
}

impl<F: Field> LineBundleOnCover<F> {
    pub fn trivial(zero: &F) -> Self {
        LineBundleOnCover {
            kind: LineBundleKind::Trivial,
            twist: UniPoly::constant(zero.one_like()),
            ramification: UniPoly::constant(zero.one_like()),
        }
    }

    /// `(t, s1)`; `s1` must divide the branch polynomial.
    pub fn ramification(cover: &SpectralCover<F>, s1: &UniPoly<F>) -> Result<Self> {
        if s1.is_zero() || !cover.branch.rem(s1).is_zero() {
            return Err(Error::UnsupportedLineBundle(
                "ramification ideal must be generated by t and a divisor of s".into(),
            ));
        }
        let s1 = s1.monic();
        Ok(LineBundleOnCover {
            kind: LineBundleKind::RamificationIdeal(s1.clone()),
            twist: UniPoly::constant(cover.zero().one_like()),
            ramification: s1,
        })
    }

    pub fn pullback(g: &UniPoly<F>) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::UnsupportedLineBundle("zero twist".into()));
        }
        Ok(LineBundleOnCover {
            kind: LineBundleKind::PullbackTwist(g.clone()),
            twist: g.clone(),
            ramification: UniPoly::constant(g.zero_elem().one_like()),
        })
    }

    /// Recognizes an ideal from its generators: `g`, `q t`, or the pair
    /// `g t, g c` with `c` dividing `s`.
    pub fn from_generators(cover: &SpectralCover<F>, gens: &[RPrime<F>]) -> Result<Self> {
        let unsupported = || Error::UnsupportedLineBundle(format!("{} generators of this shape", gens.len()));
        match gens {
            [p] if p.odd.is_zero() => Self::pullback(&p.even),
            [p] if p.even.is_zero() => {
                let mut lb = Self::ramification(cover, &cover.branch)?;
                lb.twist = p.odd.clone();
                lb.kind = LineBundleKind::Product;
                Ok(lb)
            }
            [a, b] => {
                let (odd, even) = match (a.even.is_zero(), b.even.is_zero()) {
                    (true, false) if b.odd.is_zero() => (&a.odd, &b.even),
                    (false, true) if a.odd.is_zero() => (&b.odd, &a.even),
                    _ => return Err(unsupported()),
                };
                let c = even.div_exact(odd).ok_or_else(unsupported)?;
                let mut lb = Self::ramification(cover, &c)?;
                if odd.degree() != Some(0) || !odd.coeff(0).is_one() {
                    lb.twist = odd.clone();
                    lb.kind = LineBundleKind::Product;
                }
                Ok(lb)
            }
            _ => Err(unsupported()),
        }
    }

    /// The product ideal. Ramification parts combine as
    /// `(t, a)(t, b) = gcd(a, b) (t, ab / gcd(a, b)^2)`.
    pub fn tensor(&self, other: &Self, cover: &SpectralCover<F>) -> Result<Self> {
        let (a, b) = (&self.ramification, &other.ramification);
        if !cover.branch.rem(a).is_zero() || !cover.branch.rem(b).is_zero() {
            return Err(Error::UnsupportedLineBundle("ramification divisor does not divide s".into()));
        }
        let g = a.gcd(b);
        let c = (a.clone() * b.clone())
            .div_exact(&(g.clone() * g.clone()))
            .expect("gcd divides both");
        Ok(LineBundleOnCover {
            kind: LineBundleKind::Product,
            twist: self.twist.clone() * other.twist.clone() * g,
            ramification: c.monic(),
        })
    }

    /// `g`.
    pub fn twist(&self) -> &UniPoly<F> {
        &self.twist
    }

    /// `c`.
    pub fn ramification_divisor(&self) -> &UniPoly<F> {
        &self.ramification
    }

    /// The `R`-basis `g c, g t`.
    pub fn basis(&self) -> [RPrime<F>; 2] {
        let zero = UniPoly::zero(self.twist.zero_elem().clone());
        [
            RPrime::new(self.twist.clone() * self.ramification.clone(), zero.clone()),
            RPrime::new(zero, self.twist.clone()),
        ]
    }

    /// Generators of the ideal over `R'`.
    pub fn generators(&self) -> Vec<RPrime<F>> {
        if self.ramification.degree() == Some(0) {
            vec![self.basis()[0].clone()]
        } else {
            let [a, b] = self.basis();
            vec![b, a]
        }
    }

    /// Determinant of the coordinates of the basis in `1, t`; nonzero exactly
    /// when the ideal has rank one.
    pub fn presentation_det(&self) -> UniPoly<F> {
        let [a, b] = self.basis();
        a.even * b.odd - a.odd * b.even
    }
}

/// A free rank-two `R`-module with the matrix of multiplication by `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsPair<F: Ring> {
    pub basis_tags: [&'static str; 2],
    pub basis: Option<[RPrime<F>; 2]>,
    pub phi: Mat<UniPoly<F>>,
}

impl<F: Field> HiggsPair<F> {
    /// A bare matrix, without a recorded basis.
    pub fn from_matrix(phi: Mat<UniPoly<F>>) -> Self {
        HiggsPair {
            basis_tags: ["b0", "b1"],
            basis: None,
            phi,
        }
    }

    pub fn trace(&self) -> UniPoly<F> {
        self.phi.trace()
    }

    pub fn det(&self) -> UniPoly<F> {
        self.phi.det_expansion()
    }

    /// `phi` evaluated at `u = r`.
    pub fn eval(&self, r: &F) -> Mat<F> {
        self.phi.map(r.zero_like(), |p| p.eval(r))
    }
}

/// Pushes the line bundle down to `R`: the basis `g c, g t` and the matrix of
/// `t`, whose columns are the images of the basis vectors.
pub fn pushforward<F: Field>(cover: &SpectralCover<F>, lb: &LineBundleOnCover<F>) -> Result<HiggsPair<F>> {
    if !is_squarefree(&cover.branch) {
        return Err(Error::CoverSingular);
    }
    let c = &lb.ramification;
    let s2 = cover.branch.div_exact(c).ok_or_else(|| {
        Error::UnsupportedLineBundle("ramification divisor does not divide s".into())
    })?;
    if lb.twist.is_zero() {
        return Err(Error::UnsupportedLineBundle("zero twist".into()));
    }
    let zero = UniPoly::zero(cover.zero());
    let phi = Mat::from_rows(vec![vec![zero.clone(), s2], vec![c.clone(), zero.clone()]], zero);
    Ok(HiggsPair {
        basis_tags: ["g c", "g t"],
        basis: Some(lb.basis()),
        phi,
    })
}

/// Trace zero, determinant `-s` and `phi^2 = s`, as polynomial identities.
pub fn char_identity<F: Field>(h: &HiggsPair<F>, cover: &SpectralCover<F>) -> bool {
    let s = cover.branch.clone();
    let zero = UniPoly::zero(cover.zero());
    let s_id = Mat::identity(2, zero).scale(&s);
    h.trace().is_zero() && h.det() == -s && h.phi.mul(&h.phi) == s_id
}

/// Kernel of `phi(r)` for a root `r` of `s`.
pub fn ramification_kernel<F: Field>(h: &HiggsPair<F>, cover: &SpectralCover<F>, r: &F) -> Result<Vec<Vec<F>>> {
    if !cover.branch.eval(r).is_zero() {
        return Err(Error::NotARoot);
    }
    Ok(h.eval(r).kernel())
}

/// Kernel dimensions of `phi` at every root of `s`, each root taken in its
/// field of definition.
pub fn ramification_kernel_dims(h: &HiggsPair<Gf>, cover: &SpectralCover<Gf>) -> Result<Vec<usize>> {
    let base = cover.zero().field();
    let mut dims = Vec::new();
    for root in factor_roots(&cover.branch)? {
        let up = embedding(base, root.root.field())?;
        let phi = h.phi.map(UniPoly::zero(root.root.field().zero()), |p| {
            p.map(root.root.field().zero(), |c| up.apply(c))
        });
        let lifted = SpectralCover {
            branch: cover.branch.map(root.root.field().zero(), |c| up.apply(c)),
        };
        let k = ramification_kernel(&HiggsPair::from_matrix(phi), &lifted, &root.root)?;
        dims.push(k.len());
    }
    Ok(dims)
}

fn poly_json<F: Field>(p: &UniPoly<F>) -> serde_json::Value {
    json!(p.coeffs().iter().map(Field::to_json).collect::<Vec<_>>())
}

impl<F: Field> HiggsPair<F> {
    pub fn to_json(&self, cover: &SpectralCover<F>) -> serde_json::Value {
        let basis = self.basis.as_ref().map(|b| {
            b.iter()
                .map(|e| json!({"even": poly_json(&e.even), "odd": poly_json(&e.odd)}))
                .collect::<Vec<_>>()
        });
        json!({
            "basis_tags": self.basis_tags,
            "basis": basis,
            "phi": self.phi.to_rows().iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "trace": poly_json(&self.trace()),
            "det": poly_json(&self.det()),
            "pass": char_identity(self, cover),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GfField;

    fn poly(f: &'static crate::exactfield::GfField, c: &[i64]) -> UniPoly<Gf> {
        UniPoly::new(c.iter().map(|&a| f.from_i64(a)).collect(), f.zero())
    }

    fn f13() -> &'static GfField {
        GfField::canonical(13, 1).unwrap()
    }

    #[test]
    fn trivial_pushforward() {
        let f = f13();
        let s = poly(f, &[0, 1]);
        let cover = SpectralCover::new(s.clone()).unwrap();
        let h = pushforward(&cover, &LineBundleOnCover::trivial(&f.zero())).unwrap();
        assert_eq!(h.phi.get(0, 1), &s);
        assert!(h.phi.get(1, 0).is_one());
        assert!(char_identity(&h, &cover));
        let k = ramification_kernel(&h, &cover, &f.zero()).unwrap();
        assert_eq!(k, vec![vec![f.zero(), f.one()]]);
        assert_eq!(ramification_kernel(&h, &cover, &f.one()), Err(Error::NotARoot));
    }

    #[test]
    fn ramification_ideal_pushforward() {
        let f = f13();
        // s = u (u - 1)
        let cover = SpectralCover::new(poly(f, &[0, -1, 1])).unwrap();
        let lb = LineBundleOnCover::ramification(&cover, &poly(f, &[0, 1])).unwrap();
        let h = pushforward(&cover, &lb).unwrap();
        assert_eq!(h.phi.get(0, 1), &poly(f, &[-1, 1]));
        assert_eq!(h.phi.get(1, 0), &poly(f, &[0, 1]));
        assert!(char_identity(&h, &cover));
        assert_eq!(ramification_kernel(&h, &cover, &f.zero()).unwrap(), vec![vec![f.one(), f.zero()]]);
        assert_eq!(ramification_kernel(&h, &cover, &f.one()).unwrap().len(), 1);
    }

    #[test]
    fn pullback_twist_matches_trivial() {
        let f = f13();
        let cover = SpectralCover::new(poly(f, &[2, 0, 1])).unwrap();
        let g = poly(f, &[3, 1, 4]);
        let twisted = pushforward(&cover, &LineBundleOnCover::pullback(&g).unwrap()).unwrap();
        let trivial = pushforward(&cover, &LineBundleOnCover::trivial(&f.zero())).unwrap();
        assert_eq!(twisted.phi, trivial.phi);
    }

    #[test]
    fn char_identity_examples() {
        let f = f13();
        let one = UniPoly::constant(f.one());
        let zero = UniPoly::zero(f.zero());
        let split = SpectralCover::new(one.clone()).unwrap();
        let diag = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), -one.clone()]], zero.clone());
        assert!(char_identity(&HiggsPair::from_matrix(diag), &split));
        let proj = Mat::from_rows(vec![vec![one, zero.clone()], vec![zero.clone(), zero.clone()]], zero);
        assert!(!char_identity(&HiggsPair::from_matrix(proj), &split));
    }

    #[test]
    fn singular_cover_and_bad_shapes() {
        let f = f13();
        assert_eq!(SpectralCover::new(poly(f, &[0, 0, 1])), Err(Error::CoverSingular));
        let cover = SpectralCover::new(poly(f, &[0, -1, 1])).unwrap();
        assert!(matches!(
            LineBundleOnCover::ramification(&cover, &poly(f, &[1, 1])),
            Err(Error::UnsupportedLineBundle(_))
        ));
        let mixed = RPrime::new(poly(f, &[1]), poly(f, &[1]));
        assert!(matches!(
            LineBundleOnCover::from_generators(&cover, &[mixed]),
            Err(Error::UnsupportedLineBundle(_))
        ));
    }

    #[test]
    fn square_of_ramification_ideal_is_pullback() {
        let f = f13();
        let cover = SpectralCover::new(poly(f, &[0, -1, 1])).unwrap();
        let s1 = poly(f, &[0, 1]);
        let lb = LineBundleOnCover::ramification(&cover, &s1).unwrap();
        let sq = lb.tensor(&lb, &cover).unwrap();
        let pb = LineBundleOnCover::pullback(&s1).unwrap();
        assert_eq!(sq.twist(), pb.twist());
        assert_eq!(sq.ramification_divisor(), pb.ramification_divisor());
        assert_eq!(pushforward(&cover, &sq).unwrap().phi, pushforward(&cover, &pb).unwrap().phi);
    }

    #[test]
    fn generators_round_trip() {
        let f = f13();
        let cover = SpectralCover::new(poly(f, &[0, -1, 1])).unwrap();
        let lb = LineBundleOnCover::ramification(&cover, &poly(f, &[0, 1])).unwrap();
        let back = LineBundleOnCover::from_generators(&cover, &lb.generators()).unwrap();
        assert_eq!(back, lb);
        assert!(!lb.presentation_det().is_zero());
    }
}
