//! The local model over `R = F[s]` and `R' = R[t]/(t^2 - s)`.
//!
//! A rank-two graded `R'`-module `N = R'e1 ⊕ R'e2` with `e1` in degree 0 and
//! `e2` in degree 1 carries the degree-zero endomorphisms `I, a, b, c`. Their
//! actions on the invariant parts of `N` (basis `e1, t e2`) and of `tN`
//! (basis `s e1, t e2`) give the two representations `α^1` and `α^0`.

use std::ops::{Add, Mul, Neg, Sub};

use serde_json::json;

use crate::clifford::Rep2;
use crate::exactfield::{Field, Mat, Ring, UniPoly};
use crate::{Error, Result};

/// `p + q t` in `R' = F[s][t]/(t^2 - s)`.
#[derive(Clone, PartialEq, Debug)]
pub struct RPrime<F: Ring> {
    pub even: UniPoly<F>,
    pub odd: UniPoly<F>,
}

impl<F: Field> RPrime<F> {
    pub fn new(even: UniPoly<F>, odd: UniPoly<F>) -> Self {
        RPrime { even, odd }
    }

    pub fn from_int(n: i64, zero: &F) -> Self {
        RPrime::new(
            UniPoly::constant(zero.from_i64_like(n)),
            UniPoly::zero(zero.clone()),
        )
    }

    pub fn s(zero: &F) -> Self {
        RPrime::new(UniPoly::x(zero.clone()), UniPoly::zero(zero.clone()))
    }

    pub fn t(zero: &F) -> Self {
        RPrime::new(UniPoly::zero(zero.clone()), UniPoly::constant(zero.one_like()))
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Homogeneous of the given degree modulo 2.
    pub fn is_homogeneous(&self, degree: u8) -> bool {
        if degree.is_multiple_of(2) {
            self.odd.is_zero()
        } else {
            self.even.is_zero()
        }
    }

    /// `self / t`, if exact.
    pub fn div_t(&self) -> Option<Self> {
        let s = UniPoly::x(self.even.zero_elem().clone());
        let even_over_s = self.even.div_exact(&s)?;
        Some(RPrime::new(self.odd.clone(), even_over_s))
    }

    /// `self / s`, if exact.
    pub fn div_s(&self) -> Option<Self> {
        let s = UniPoly::x(self.even.zero_elem().clone());
        Some(RPrime::new(self.even.div_exact(&s)?, self.odd.div_exact(&s)?))
    }
}

impl<F: Field> Add for RPrime<F> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        RPrime::new(self.even + r.even, self.odd + r.odd)
    }
}

impl<F: Field> Sub for RPrime<F> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        RPrime::new(self.even - r.even, self.odd - r.odd)
    }
}

impl<F: Field> Neg for RPrime<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RPrime::new(-self.even, -self.odd)
    }
}

impl<F: Field> Mul for RPrime<F> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let s = UniPoly::x(self.even.zero_elem().clone());
        let even = self.even.clone() * r.even.clone() + s * self.odd.clone() * r.odd.clone();
        let odd = self.even * r.odd + self.odd * r.even;
        RPrime::new(even, odd)
    }
}

/// A homogeneous element of `N = R'e1 ⊕ R'e2`.
type NVec<F> = [RPrime<F>; 2];

/// A graded free basis of an invariant submodule, each element a multiple of
/// one of `e1, e2`.
struct DiagonalBasis<F: Ring> {
    gens: [RPrime<F>; 2],
}

impl<F: Field> DiagonalBasis<F> {
    /// Coordinates over `R` of an invariant element.
    fn coords(&self, v: &NVec<F>) -> Option<[UniPoly<F>; 2]> {
        let c = |k: usize| -> Option<UniPoly<F>> {
            let g = &self.gens[k];
            let q = if g.odd.is_zero() {
                let d = g.even.clone();
                RPrime::new(v[k].even.div_exact(&d)?, v[k].odd.div_exact(&d)?)
            } else {
                // g = t * h with h in R
                let h = g.odd.clone();
                let over_t = v[k].div_t()?;
                RPrime::new(over_t.even.div_exact(&h)?, over_t.odd.div_exact(&h)?)
            };
            q.odd.is_zero().then_some(q.even)
        };
        Some([c(0)?, c(1)?])
    }
}

/// Applies a 2x2 matrix over `R'` (columns are the images of `e1, e2`).
fn apply<F: Field>(m: &[[RPrime<F>; 2]; 2], v: &NVec<F>) -> NVec<F> {
    std::array::from_fn(|i| m[i][0].clone() * v[0].clone() + m[i][1].clone() * v[1].clone())
}

/// Matrix over `R` of a degree-zero endomorphism on the invariant submodule
/// with the given basis.
fn restrict<F: Field>(m: &[[RPrime<F>; 2]; 2], basis: &DiagonalBasis<F>, zero: &F) -> Mat<UniPoly<F>> {
    let rz = RPrime::from_int(0, zero);
    let cols = (0..2)
        .map(|k| {
            let mut v: NVec<F> = [rz.clone(), rz.clone()];
            v[k] = basis.gens[k].clone();
            basis
                .coords(&apply(m, &v))
                .expect("degree-zero endomorphisms preserve the invariant part")
                .to_vec()
        })
        .collect();
    Mat::from_cols(cols, UniPoly::zero(zero.clone()))
}

/// Names of the generators, in order.
pub const GENERATORS: [&str; 4] = ["I", "a", "b", "c"];

/// Images of the generators under `α^0` and `α^1`, with the kernels over
/// the branch point.
#[derive(Clone, Debug)]
pub struct LocalModelReport<F: Ring> {
    /// `I, a, b, c` as matrices over `R'` in the basis `e1, e2`.
    pub generators: [[[RPrime<F>; 2]; 2]; 4],
    pub alpha1: [Mat<UniPoly<F>>; 4],
    pub alpha0: [Mat<UniPoly<F>>; 4],
    /// `diag(s, 1)`: the inclusion of the invariant part of `tN` into that
    /// of `N`, in the bases `(s e1, t e2)` and `(e1, t e2)`.
    pub inclusion: Mat<UniPoly<F>>,
    /// Coefficients of the kernel generator of `α^1` at `s = 0` in `I, a, b, c`.
    pub kernel_alpha1: Vec<F>,
    pub kernel_alpha0: Vec<F>,
    /// Degrees of `e1, e2`.
    pub grading: [u8; 2],
    /// Dimension of the invariant part of the fibre of `N` at `t = 0`.
    pub invariant_fibre_dim: usize,
}

impl<F: Field> LocalModelReport<F> {
    /// `ker α^1 ≠ ker α^0`, each a line.
    pub fn kernels_differ(&self) -> bool {
        let k1 = Mat::from_rows(vec![self.kernel_alpha1.clone(), self.kernel_alpha0.clone()], self.zero());
        !self.kernel_alpha1.is_empty() && !self.kernel_alpha0.is_empty() && k1.rank() == 2
    }

    /// `χ1(-1) χ2(-1)` computed from the grading.
    pub fn character_product(&self) -> i64 {
        self.grading.iter().map(|&l| if l % 2 == 0 { 1 } else { -1 }).product()
    }

    /// `α^1(δ) ∘ diag(s,1) = diag(s,1) ∘ α^0(δ)` for all generators.
    pub fn diagram_commutes(&self) -> bool {
        self.alpha1
            .iter()
            .zip(&self.alpha0)
            .all(|(a1, a0)| a1.mul(&self.inclusion) == self.inclusion.mul(a0))
    }

    /// The representation of the normalized symbols obtained from `α` at
    /// `s = 0` via `x = -a`, `y = b`, `z = -c`.
    pub fn rep_at_branch(&self, which: u8) -> Rep2<F> {
        let imgs = if which == 1 { &self.alpha1 } else { &self.alpha0 };
        let at0 = |m: &Mat<UniPoly<F>>| m.map(self.zero(), |p| p.coeff(0));
        let neg = |m: Mat<F>| m.scale(&self.zero().from_i64_like(-1));
        Rep2 {
            x: neg(at0(&imgs[1])),
            y: at0(&imgs[2]),
            z: neg(at0(&imgs[3])),
        }
    }

    fn zero(&self) -> F {
        self.inclusion.zero_elem().zero_elem().clone()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &Mat<UniPoly<F>>| {
            m.to_rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.coeffs().iter().map(Field::to_json).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        let imgs = |ms: &[Mat<UniPoly<F>>; 4]| {
            GENERATORS
                .iter()
                .zip(ms)
                .map(|(n, m)| (n.to_string(), json!(mat(m))))
                .collect::<serde_json::Map<_, _>>()
        };
        json!({
            "alpha1": imgs(&self.alpha1),
            "alpha0": imgs(&self.alpha0),
            "kernel_alpha1": self.kernel_alpha1.iter().map(Field::to_json).collect::<Vec<_>>(),
            "kernel_alpha0": self.kernel_alpha0.iter().map(Field::to_json).collect::<Vec<_>>(),
            "grading": self.grading,
            "character_product": self.character_product(),
            "invariant_fibre_dim": self.invariant_fibre_dim,
            "kernels_differ": self.kernels_differ(),
            "diagram_commutes": self.diagram_commutes(),
        })
    }
}

/// Builds the local model over the field of `zero`.
pub fn local_model<F: Field>(zero: &F) -> Result<LocalModelReport<F>> {
    if zero.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let r = |n: i64| RPrime::from_int(n, zero);
    let t = RPrime::t(zero);
    let neg_t = -t.clone();
    let generators = [
        [[r(1), r(0)], [r(0), r(1)]],
        [[r(-1), r(0)], [r(0), r(1)]],
        [[r(0), t.clone()], [t.clone(), r(0)]],
        [[r(0), t.clone()], [neg_t, r(0)]],
    ];
    let grading = [0u8, 1u8];
    for g in &generators {
        for (i, row) in g.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let degree = (grading[i] + grading[j]) % 2;
                assert!(entry.is_homogeneous(degree), "generators have degree zero");
            }
        }
    }
    let s = RPrime::s(zero);
    let basis1 = DiagonalBasis {
        gens: [r(1), t.clone()],
    };
    let basis0 = DiagonalBasis {
        gens: [s.clone(), t.clone()],
    };
    let alpha1 = generators.clone().map(|g| restrict(&g, &basis1, zero));
    let alpha0 = generators.clone().map(|g| restrict(&g, &basis0, zero));
    let inclusion = {
        let rz = r(0);
        let cols = (0..2)
            .map(|k| {
                let mut v: NVec<F> = [rz.clone(), rz.clone()];
                v[k] = basis0.gens[k].clone();
                basis1.coords(&v).expect("tN is contained in N").to_vec()
            })
            .collect();
        Mat::from_cols(cols, UniPoly::zero(zero.clone()))
    };
    let kernel = |imgs: &[Mat<UniPoly<F>>; 4]| -> Vec<F> {
        let cols = imgs
            .iter()
            .map(|m| m.to_rows().into_iter().flatten().map(|p| p.coeff(0)).collect())
            .collect();
        let k = Mat::from_cols(cols, zero.clone()).kernel();
        if k.len() == 1 {
            let v = k.into_iter().next().expect("one vector");
            let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
            v.into_iter().map(|c| c * lead.clone()).collect()
        } else {
            Vec::new()
        }
    };
    let invariant_fibre_dim = grading.iter().filter(|&&l| l == 0).count();
    Ok(LocalModelReport {
        kernel_alpha1: kernel(&alpha1),
        kernel_alpha0: kernel(&alpha0),
        generators,
        alpha1,
        alpha0,
        inclusion,
        grading,
        invariant_fibre_dim,
    })
}
