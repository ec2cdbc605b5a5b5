//! Two-dimensional representations of the degenerate even Clifford algebra.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::normalize::{IsotropicPlane, NormalizedFrame};
use super::quiver::NormElem;
use crate::exactfield::{Field, Gf, GfField, Mat, Ring};
use crate::{Error, Result};

/// The five isomorphism classes of two-dimensional representations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum RepTypeTag {
    /// Dimension vector (1,1), `alpha` nonzero.
    T1,
    /// Dimension vector (1,1), `beta` nonzero.
    T2,
    /// Dimension vector (1,1), both arrows zero.
    T3,
    /// Dimension vector (2,0).
    T4,
    /// Dimension vector (0,2).
    T5,
}

impl RepTypeTag {
    pub const ALL: [RepTypeTag; 5] = [
        RepTypeTag::T1,
        RepTypeTag::T2,
        RepTypeTag::T3,
        RepTypeTag::T4,
        RepTypeTag::T5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RepTypeTag::T1 => "T1",
            RepTypeTag::T2 => "T2",
            RepTypeTag::T3 => "T3",
            RepTypeTag::T4 => "T4",
            RepTypeTag::T5 => "T5",
        }
    }
}

/// A representation given by the images of the normalized symbols
/// `x, y, z` as 2x2 matrices.
#[derive(Clone, PartialEq, Debug)]
pub struct Rep2<F> {
    pub x: Mat<F>,
    pub y: Mat<F>,
    pub z: Mat<F>,
}

fn mat2<F: Ring>(zero: &F, v: [i64; 4]) -> Mat<F> {
    Mat::from_rows(
        vec![
            vec![zero.from_i64_like(v[0]), zero.from_i64_like(v[1])],
            vec![zero.from_i64_like(v[2]), zero.from_i64_like(v[3])],
        ],
        zero.clone(),
    )
}

impl<F: Field> Rep2<F> {
    /// A fixed representative of each isomorphism class.
    pub fn standard(tag: RepTypeTag, zero: &F) -> Self {
        let m = |v| mat2(zero, v);
        let (x, y, z) = match tag {
            RepTypeTag::T1 => (m([1, 0, 0, -1]), m([0, 0, 1, 0]), m([0, 0, 1, 0])),
            RepTypeTag::T2 => (m([1, 0, 0, -1]), m([0, 1, 0, 0]), m([0, -1, 0, 0])),
            RepTypeTag::T3 => (m([1, 0, 0, -1]), m([0; 4]), m([0; 4])),
            RepTypeTag::T4 => (m([1, 0, 0, 1]), m([0; 4]), m([0; 4])),
            RepTypeTag::T5 => (m([-1, 0, 0, -1]), m([0; 4]), m([0; 4])),
        };
        Rep2 { x, y, z }
    }

    /// `g M g^{-1}` applied to all three images.
    pub fn conjugate(&self, g: &Mat<F>, g_inv: &Mat<F>) -> Self {
        let c = |m: &Mat<F>| g.mul(m).mul(g_inv);
        Rep2 {
            x: c(&self.x),
            y: c(&self.y),
            z: c(&self.z),
        }
    }

    fn zero(&self) -> F {
        self.x.zero_elem().clone()
    }

    /// Image of `a0 + a1 x + a2 y + a3 z`.
    pub fn image(&self, e: &NormElem<F>) -> Mat<F> {
        let id = Mat::identity(2, self.zero());
        id.scale(&e.a[0])
            .add(&self.x.scale(&e.a[1]))
            .add(&self.y.scale(&e.a[2]))
            .add(&self.z.scale(&e.a[3]))
    }

    /// Checks that `1, x, y, z` map to a unital algebra homomorphism.
    pub fn check_relations(&self) -> Result<()> {
        let dims_ok = [&self.x, &self.y, &self.z]
            .iter()
            .all(|m| m.rows() == 2 && m.cols() == 2);
        if !dims_ok {
            return Err(Error::NotARepresentation("images must be 2x2".into()));
        }
        let zero = self.zero();
        let gens = [
            Mat::identity(2, zero.clone()),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ];
        const NAMES: [&str; 4] = ["1", "x", "y", "z"];
        for j in 1..4 {
            for k in 1..4 {
                let prod = NormElem::basis(j, zero.clone()) * NormElem::basis(k, zero.clone());
                if gens[j].mul(&gens[k]) != self.image(&prod) {
                    return Err(Error::NotARepresentation(format!(
                        "relation for {}{} fails",
                        NAMES[j], NAMES[k]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A representation of the quiver with relations `alpha beta = beta alpha = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuiverRep2<F> {
    pub dim_plus: usize,
    pub dim_minus: usize,
    /// `dim_minus x dim_plus`.
    pub mat_alpha: Mat<F>,
    /// `dim_plus x dim_minus`.
    pub mat_beta: Mat<F>,
}

impl<F: Field> QuiverRep2<F> {
    pub fn tag(&self) -> Result<RepTypeTag> {
        let ra = self.mat_alpha.rank();
        let rb = self.mat_beta.rank();
        match (self.dim_plus, self.dim_minus, ra, rb) {
            (1, 1, 1, 0) => Ok(RepTypeTag::T1),
            (1, 1, 0, 1) => Ok(RepTypeTag::T2),
            (1, 1, 0, 0) => Ok(RepTypeTag::T3),
            (2, 0, _, _) => Ok(RepTypeTag::T4),
            (0, 2, _, _) => Ok(RepTypeTag::T5),
            _ => Err(Error::NotARepresentation(
                "arrows violate alpha*beta = beta*alpha = 0".into(),
            )),
        }
    }
}

/// Converts to a quiver representation in a basis adapted to the images of
/// the idempotents `e± = (1 ± x)/2`, and returns its isomorphism class.
pub fn classify_rep2<F: Field>(rep: &Rep2<F>) -> Result<(RepTypeTag, QuiverRep2<F>)> {
    rep.check_relations()?;
    let zero = rep.zero();
    let id = Mat::identity(2, zero.clone());
    let v_plus = id.sub(&rep.x).kernel();
    let v_minus = id.add(&rep.x).kernel();
    let (dp, dm) = (v_plus.len(), v_minus.len());
    let p = Mat::from_cols(v_plus.into_iter().chain(v_minus).collect(), zero.clone());
    let p_inv = p.inverse().expect("x is an involution");
    let half = zero.half();
    let adapted = |m: Mat<F>| p_inv.mul(&m.scale(&half)).mul(&p);
    let a = adapted(rep.y.add(&rep.z));
    let b = adapted(rep.y.sub(&rep.z));
    let mut mat_alpha = Mat::zeros(dm, dp, zero.clone());
    for r in 0..dm {
        for c in 0..dp {
            mat_alpha.set(r, c, a.get(dp + r, c).clone());
        }
    }
    let mut mat_beta = Mat::zeros(dp, dm, zero);
    for r in 0..dp {
        for c in 0..dm {
            mat_beta.set(r, c, b.get(r, dp + c).clone());
        }
    }
    let q = QuiverRep2 {
        dim_plus: dp,
        dim_minus: dm,
        mat_alpha,
        mat_beta,
    };
    Ok((q.tag()?, q))
}

/// The kernel line `K` of a representation of type T1 or T2 and the
/// isotropic plane `K'` it determines.
#[derive(Clone, Debug)]
pub struct KernelLine<F> {
    pub tag: RepTypeTag,
    /// Spanning vector of `K` in the normalized symbols `(x, y, z)`, scaled so
    /// that its first nonzero entry is 1.
    pub k: [F; 3],
    /// The same vector in the basis `(e1e2, e2e3, e1e3)` of the frame.
    pub k_wedge: [F; 3],
    /// `K'` in normalized coordinates.
    pub kprime_normalized: IsotropicPlane<F>,
    /// `K'` in the original coordinates of the form.
    pub kprime: IsotropicPlane<F>,
}

/// Computes `K = ker(rep) ∩ span(x, y, z)` and `K' = {a : k ∧ a = 0 under
/// the pairing of the second exterior power with the space}`.
///
/// `rep` is expressed in the normalized symbols of `frame` and must be
/// defined over the frame's field.
pub fn rep_kernel_line<F: Field>(
    frame: &NormalizedFrame<F>,
    rep: &Rep2<F>,
) -> Result<KernelLine<F>> {
    if !rep.zero().same_ring(frame.sqrt_minus_one()) {
        return Err(Error::RingMismatch);
    }
    let (tag, _) = classify_rep2(rep)?;
    let zero = rep.zero();
    let cols: Vec<Vec<F>> = [&rep.x, &rep.y, &rep.z]
        .iter()
        .map(|m| (0..2).flat_map(|i| m.row(i)).collect())
        .collect();
    let kernel = Mat::from_cols(cols, zero.clone()).kernel();
    if kernel.len() != 1 {
        return Err(Error::KernelNotALine(kernel.len()));
    }
    let v = &kernel[0];
    let lead = v
        .iter()
        .find(|a| !a.is_zero())
        .expect("kernel vector")
        .inv()
        .expect("nonzero");
    let k: [F; 3] = std::array::from_fn(|j| v[j].clone() * lead.clone());
    let i = frame.sqrt_minus_one().clone();
    let k_wedge = [
        k[0].clone() * i.clone(),
        k[1].clone() * i,
        k[2].clone(),
    ];
    // a ↦ k ∧ a with e1∧e2∧e3 = 1: k12 a3 - k13 a2 + k23 a1
    let normal = [k_wedge[1].clone(), -k_wedge[2].clone(), k_wedge[0].clone()];
    let kprime_normalized = IsotropicPlane::from_normal(normal.clone());
    let kprime = frame.plane_from_normalized(&normal);
    Ok(KernelLine {
        tag,
        k,
        k_wedge,
        kprime_normalized,
        kprime,
    })
}

/// Result of enumerating all representations over a small finite field.
#[derive(Clone, Debug, Serialize)]
pub struct RepCensus {
    pub field_order: u128,
    pub triples_scanned: u128,
    pub representations: usize,
    /// Number of orbits of valid triples under conjugation by `GL_2`.
    pub conjugacy_classes: usize,
    /// Tag of each orbit, in orbit order.
    pub class_tags: Vec<RepTypeTag>,
    /// Number of valid triples of each tag.
    pub tag_counts: BTreeMap<RepTypeTag, usize>,
    /// Orbits of `(alpha, beta)` under `GL(dim_plus) x GL(dim_minus)`, per
    /// dimension vector.
    pub quiver_classes: BTreeMap<String, usize>,
}

impl RepCensus {
    pub fn total_quiver_classes(&self) -> usize {
        self.quiver_classes.values().sum()
    }

    /// Five classes on both sides, one per tag.
    pub fn pass(&self) -> bool {
        let tags: BTreeSet<_> = self.class_tags.iter().collect();
        self.conjugacy_classes == 5
            && tags.len() == 5
            && self.total_quiver_classes() == 5
    }
}

fn all_matrices(field: &'static GfField, r: usize, c: usize) -> Vec<Mat<Gf>> {
    let q = field.order();
    let n = (r * c) as u32;
    (0..q.pow(n))
        .map(|k| {
            let mut m = Mat::zeros(r, c, field.zero());
            for idx in 0..r * c {
                m.set(idx / c, idx % c, field.from_index((k / q.pow(idx as u32)) % q));
            }
            m
        })
        .collect()
}

fn general_linear(field: &'static GfField, n: usize) -> Vec<(Mat<Gf>, Mat<Gf>)> {
    all_matrices(field, n, n)
        .into_iter()
        .filter_map(|g| g.inverse().map(|inv| (g, inv)))
        .collect()
}

fn key(ms: &[&Mat<Gf>]) -> Vec<u32> {
    ms.iter()
        .flat_map(|m| {
            (0..m.rows()).flat_map(move |i| (0..m.cols()).flat_map(move |j| m.get(i, j).coeffs().to_vec()))
        })
        .collect()
}

/// Enumerates every triple `(X, Y, Z)` of 2x2 matrices over `field`, keeps
/// those satisfying the relations, and counts isomorphism classes both as
/// algebra representations and as quiver representations.
pub fn rep_census(field: &'static GfField) -> Result<RepCensus> {
    let q = field.order();
    let total = q.checked_pow(12).filter(|t| *t <= 10_000_000).ok_or_else(|| {
        Error::EnumerationBound(format!("{q}^12 triples"))
    })?;
    let mats = all_matrices(field, 2, 2);
    let id = Mat::identity(2, field.zero());
    let zero2 = Mat::zeros(2, 2, field.zero());
    let gl2 = general_linear(field, 2);
    let mut valid = Vec::new();
    for x in &mats {
        // x^2 = 1 prunes most candidates before looping over y and z
        if x.mul(x) != id {
            continue;
        }
        for y in &mats {
            if y.mul(y) != zero2 {
                continue;
            }
            for z in &mats {
                let rep = Rep2 {
                    x: x.clone(),
                    y: y.clone(),
                    z: z.clone(),
                };
                if rep.check_relations().is_ok() {
                    valid.push(rep);
                }
            }
        }
    }
    let mut orbits: BTreeMap<Vec<u32>, RepTypeTag> = BTreeMap::new();
    let mut tag_counts = BTreeMap::new();
    for rep in &valid {
        let (tag, _) = classify_rep2(rep)?;
        *tag_counts.entry(tag).or_insert(0) += 1;
        let canon = gl2
            .iter()
            .map(|(g, gi)| {
                let c = rep.conjugate(g, gi);
                key(&[&c.x, &c.y, &c.z])
            })
            .min()
            .expect("GL_2 is nonempty");
        if let Some(prev) = orbits.insert(canon, tag) {
            if prev != tag {
                return Err(Error::Aborted("an orbit carries two tags".into()));
            }
        }
    }
    let mut quiver_classes = BTreeMap::new();
    for (dp, dm) in [(2usize, 0usize), (1, 1), (0, 2)] {
        let glp = general_linear(field, dp);
        let glm = general_linear(field, dm);
        let mut seen = BTreeSet::new();
        for a in all_matrices(field, dm, dp) {
            for b in all_matrices(field, dp, dm) {
                if !a.mul(&b).is_zero() || !b.mul(&a).is_zero() {
                    continue;
                }
                let canon = glp
                    .iter()
                    .flat_map(|(g, gi)| {
                        glm.iter().map(|(h, hi)| {
                            let a2 = h.mul(&a).mul(gi);
                            let b2 = g.mul(&b).mul(hi);
                            key(&[&a2, &b2])
                        })
                    })
                    .min()
                    .expect("nonempty group");
                seen.insert(canon);
            }
        }
        quiver_classes.insert(format!("({dp},{dm})"), seen.len());
    }
    Ok(RepCensus {
        field_order: q,
        triples_scanned: total,
        representations: valid.len(),
        conjugacy_classes: orbits.len(),
        class_tags: orbits.values().copied().collect(),
        tag_counts,
        quiver_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{normalize_rank2, PlaneLabel, TernaryGram};

    #[test]
    fn standard_reps_classify_to_their_tags() {
        let f = GfField::canonical(13, 1).unwrap();
        for tag in RepTypeTag::ALL {
            let rep = Rep2::standard(tag, &f.zero());
            assert_eq!(classify_rep2(&rep).unwrap().0, tag);
        }
    }

    #[test]
    fn violated_relation_is_rejected() {
        let f = GfField::canonical(13, 1).unwrap();
        let mut rep = Rep2::standard(RepTypeTag::T1, &f.zero());
        rep.z = rep.z.scale(&f.from_u64(2));
        assert!(matches!(
            classify_rep2(&rep),
            Err(Error::NotARepresentation(_))
        ));
    }

    #[test]
    fn kernel_lines_at_standard_form() {
        let f = GfField::canonical(13, 1).unwrap();
        let g = TernaryGram::standard(f.zero());
        let frame = normalize_rank2(&g).unwrap();
        let one = f.one();
        let t1 = rep_kernel_line(&frame, &Rep2::standard(RepTypeTag::T1, &f.zero())).unwrap();
        assert_eq!(t1.k, [f.zero(), one, -one]);
        assert_eq!(t1.kprime, frame.plane(PlaneLabel::Plus));
        let t2 = rep_kernel_line(&frame, &Rep2::standard(RepTypeTag::T2, &f.zero())).unwrap();
        assert_eq!(t2.k, [f.zero(), one, one]);
        assert_eq!(t2.kprime, frame.plane(PlaneLabel::Minus));
    }

    #[test]
    fn degenerate_types_have_no_kernel_line() {
        let f = GfField::canonical(13, 1).unwrap();
        let frame = normalize_rank2(&TernaryGram::standard(f.zero())).unwrap();
        for tag in [RepTypeTag::T3, RepTypeTag::T4, RepTypeTag::T5] {
            let rep = Rep2::standard(tag, &f.zero());
            assert_eq!(
                rep_kernel_line(&frame, &rep).unwrap_err(),
                Error::KernelNotALine(2)
            );
        }
    }
}
