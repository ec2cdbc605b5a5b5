//! Conic fibrations over the projective plane.
//!
//! A fibration is a symmetric 3x3 matrix of ternary forms whose `(i, j)`
//! entry has degree `a_i + a_j + l`. Its discriminant is the determinant; at
//! a point of the discriminant the fibre is a pair of lines, recorded by
//! the two isotropic planes of the local Gram matrix.

pub mod format;
mod poly3;
mod smooth;

use std::cmp::Ordering;
use std::sync::OnceLock;

use rand::Rng;
use serde_json::json;

use crate::clifford::{normalize_rank2, IsotropicPlane, NormalizedFrame, PlaneLabel, TernaryGram};
use crate::exactfield::{factor_roots, Field, Gf, GfField, Mat, Ring, UniPoly};
use crate::{Error, Result};

pub use poly3::{Exp3, Poly3};
pub use smooth::{check_smooth, projective_points, SmoothnessReport, EXACT_DEGREE_LIMIT};

/// Index pairs of the upper triangle, in file order.
pub const UPPER: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// A symmetric matrix of forms over a finite field.
#[derive(Debug)]
pub struct ConicFibration {
    field: &'static GfField,
    twists: [i64; 3],
    line_degree: i64,
    entries: Mat<Poly3<Gf>>,
    discriminant: OnceLock<DiscriminantCurve>,
}

impl Clone for ConicFibration {
    fn clone(&self) -> Self {
        ConicFibration {
            field: self.field,
            twists: self.twists,
            line_degree: self.line_degree,
            entries: self.entries.clone(),
            discriminant: self.discriminant.clone(),
        }
    }
}

impl PartialEq for ConicFibration {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field)
            && self.twists == other.twists
            && self.line_degree == other.line_degree
            && self.entries == other.entries
    }
}

const RANDOM_ATTEMPTS: usize = 1000;

impl ConicFibration {
    /// Builds a fibration from its upper triangle, in the order of [`UPPER`].
    /// Zero entries are always accepted.
    pub fn new(
        field: &'static GfField,
        twists: [i64; 3],
        line_degree: i64,
        upper: [Poly3<Gf>; 6],
    ) -> Result<Self> {
        let zero = Poly3::zero(field.zero());
        let mut entries = Mat::zeros(3, 3, zero);
        for ((i, j), form) in UPPER.into_iter().zip(upper) {
            if !std::ptr::eq(form.zero_elem().field(), field) {
                return Err(Error::RingMismatch);
            }
            let expected = twists[i] + twists[j] + line_degree;
            if let Some(found) = degree_defect(&form, expected) {
                return Err(Error::DegreeMismatch {
                    i,
                    j,
                    expected,
                    found,
                });
            }
            entries.set(i, j, form.clone());
            entries.set(j, i, form);
        }
        Ok(ConicFibration {
            field,
            twists,
            line_degree,
            entries,
            discriminant: OnceLock::new(),
        })
    }

    /// A fibration with uniformly random entries of the prescribed degrees,
    /// redrawn until the discriminant is not identically zero.
    pub fn random<R: Rng + ?Sized>(
        field: &'static GfField,
        twists: [i64; 3],
        line_degree: i64,
        rng: &mut R,
    ) -> Result<Self> {
        for _ in 0..RANDOM_ATTEMPTS {
            let upper = UPPER.map(|(i, j)| random_form(field, twists[i] + twists[j] + line_degree, rng));
            let fib = Self::new(field, twists, line_degree, upper)?;
            if !fib.discriminant().form().is_zero() {
                return Ok(fib);
            }
        }
        Err(Error::Aborted(format!(
            "every fibration drawn in {RANDOM_ATTEMPTS} attempts has a zero discriminant"
        )))
    }

    pub fn field(&self) -> &'static GfField {
        self.field
    }

    pub fn twists(&self) -> [i64; 3] {
        self.twists
    }

    pub fn line_degree(&self) -> i64 {
        self.line_degree
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly3<Gf> {
        self.entries.get(i, j)
    }

    pub fn entries(&self) -> &Mat<Poly3<Gf>> {
        &self.entries
    }

    pub fn expected_degree(&self, i: usize, j: usize) -> i64 {
        self.twists[i] + self.twists[j] + self.line_degree
    }

    /// `2(a1 + a2 + a3) + 3l`.
    pub fn discriminant_degree(&self) -> i64 {
        2 * self.twists.iter().sum::<i64>() + 3 * self.line_degree
    }

    /// The determinant of the entries, computed once.
    pub fn discriminant(&self) -> &DiscriminantCurve {
        self.discriminant.get_or_init(|| DiscriminantCurve {
            form: self.entries.det_expansion(),
            degree: self.discriminant_degree(),
            smoothness: OnceLock::new(),
        })
    }

    /// The Gram matrix of the fibre over `point`, whose coordinates may lie
    /// in an extension of the coefficient field.
    pub fn local_gram(&self, point: &[Gf; 3]) -> TernaryGram<Gf> {
        let m = self.entries.map(point[0].field().zero(), |e| e.eval_ext(point));
        TernaryGram::new(m).expect("entries are symmetric")
    }

    /// Whether the fibre over a point of the discriminant has rank exactly 2.
    pub fn simple_degeneration_at(&self, point: &[Gf; 3]) -> Result<bool> {
        if !self.discriminant().form.eval_ext(point).is_zero() {
            return Err(Error::NotOnDiscriminant);
        }
        Ok(self.local_gram(point).rank() == 2)
    }

    /// Intersects the discriminant with a rational curve.
    pub fn intersect(&self, curve: &ParamCurve) -> Result<Intersection> {
        intersect_curve_discriminant(self, curve)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "field": field_json(self.field),
            "twists": self.twists,
            "line_degree": self.line_degree,
            "entries": UPPER.iter().map(|&(i, j)| self.entry(i, j).to_json()).collect::<Vec<_>>(),
        })
    }
}

fn field_json(field: &'static GfField) -> serde_json::Value {
    json!({ "p": field.p(), "m": field.degree() })
}

/// `None` if `form` is zero or homogeneous of degree `expected`; otherwise
/// the degree of an offending term.
fn degree_defect(form: &Poly3<Gf>, expected: i64) -> Option<i64> {
    form.terms()
        .map(|(e, _)| e.iter().sum::<u32>() as i64)
        .find(|&d| d != expected)
}

/// A uniformly random form of degree `deg`; zero for negative degrees.
pub fn random_form<R: Rng + ?Sized>(field: &'static GfField, deg: i64, rng: &mut R) -> Poly3<Gf> {
    Poly3::from_terms(
        monomials(deg).into_iter().map(|e| (e, field.random(rng))),
        field.zero(),
    )
}

/// Exponent vectors of all monomials of total degree `deg`.
pub fn monomials(deg: i64) -> Vec<Exp3> {
    let Ok(d) = u32::try_from(deg) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// The discriminant curve of a fibration.
#[derive(Clone, Debug)]
pub struct DiscriminantCurve {
    form: Poly3<Gf>,
    degree: i64,
    smoothness: OnceLock<SmoothnessReport>,
}

impl DiscriminantCurve {
    pub fn form(&self) -> &Poly3<Gf> {
        &self.form
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Smoothness of the curve, decided once and cached.
    pub fn smoothness(&self) -> &SmoothnessReport {
        self.smoothness.get_or_init(|| check_smooth(&self.form))
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().smooth
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "form": self.form.to_json(),
            "smoothness": self.smoothness().to_json(),
        })
    }
}

/// A rational curve of degree 1 or 2 in the plane, given as three binary
/// forms of degree `d` in `(s : t)`, stored dehomogenized at `t = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    d: usize,
    rho: [UniPoly<Gf>; 3],
}

impl ParamCurve {
    pub fn new(d: usize, rho: [UniPoly<Gf>; 3]) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::InvalidCurve(format!("degree {d} is not 1 or 2")));
        }
        let field = rho[0].zero_elem().field();
        if rho.iter().any(|r| !std::ptr::eq(r.zero_elem().field(), field)) {
            return Err(Error::RingMismatch);
        }
        if rho.iter().any(|r| r.degree().is_some_and(|k| k > d)) {
            return Err(Error::InvalidCurve("component of degree above d".into()));
        }
        let curve = ParamCurve { d, rho };
        let rank = curve.coefficient_matrix().rank();
        if rank != d + 1 {
            return Err(Error::InvalidCurve(format!(
                "coefficient matrix has rank {rank}, expected {}",
                d + 1
            )));
        }
        let g = curve.rho.iter().fold(UniPoly::zero(field.zero()), |g, r| g.gcd(r));
        let at_infinity = curve.point_at_infinity().iter().all(Ring::is_zero);
        if g.degree() != Some(0) || at_infinity {
            return Err(Error::InvalidCurve("parametrization has a base point".into()));
        }
        Ok(curve)
    }

    /// A line or conic with random coefficients, retried until valid.
    pub fn random<R: Rng + ?Sized>(field: &'static GfField, d: usize, rng: &mut R) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::InvalidCurve(format!("degree {d} is not 1 or 2")));
        }
        loop {
            let rho = std::array::from_fn(|_| {
                UniPoly::new((0..=d).map(|_| field.random(rng)).collect(), field.zero())
            });
            if let Ok(c) = Self::new(d, rho) {
                return Ok(c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &'static GfField {
        self.rho[0].zero_elem().field()
    }

    /// The components at `t = 1`, as polynomials in `s`.
    pub fn rho(&self) -> &[UniPoly<Gf>; 3] {
        &self.rho
    }

    /// Rows are the components, columns the coefficients of `s^k t^(d-k)`.
    pub fn coefficient_matrix(&self) -> Mat<Gf> {
        let rows = self
            .rho
            .iter()
            .map(|r| (0..=self.d).map(|k| r.coeff(k)).collect())
            .collect();
        Mat::from_rows(rows, self.field().zero())
    }

    /// The image of `(1 : 0)`.
    pub fn point_at_infinity(&self) -> [Gf; 3] {
        std::array::from_fn(|k| self.rho[k].coeff(self.d))
    }

    /// The image of `(s : 1)`, for `s` in an extension of the base field.
    pub fn point_at(&self, s: &Gf) -> [Gf; 3] {
        let emb = crate::exactfield::embedding(self.field(), s.field()).expect("subfield");
        std::array::from_fn(|k| self.rho[k].map(s.field().zero(), |c| emb.apply(c)).eval(s))
    }

    pub fn point(&self, param: &Param) -> [Gf; 3] {
        match param {
            Param::Finite(s) => self.point_at(s),
            Param::Infinity => self.point_at_infinity(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "rho": self.rho.iter().map(|r| r.coeffs().iter().map(Field::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// A point of the parameter line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    /// `(s : 1)`.
    Finite(Gf),
    /// `(1 : 0)`.
    Infinity,
}

impl Param {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Param::Finite(s) => s.to_json(),
            Param::Infinity => json!("inf"),
        }
    }

    /// Applies `x -> x^(p^k)` to a finite parameter.
    pub fn frobenius_pow(&self, k: usize) -> Param {
        match self {
            Param::Finite(s) => Param::Finite(s.frobenius_pow(k)),
            Param::Infinity => Param::Infinity,
        }
    }
}

/// A point of `C ∩ Δ`.
#[derive(Clone, Debug)]
pub struct IntersectionDatum {
    pub param: Param,
    /// Degree over the coefficient field of the field of definition of the
    /// parameter.
    pub extension_degree: usize,
    pub point: [Gf; 3],
    pub local_gram: TernaryGram<Gf>,
    pub multiplicity: usize,
}

impl IntersectionDatum {
    pub fn local_rank(&self) -> usize {
        self.local_gram.rank()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "param": self.param.to_json(),
            "extension_degree": self.extension_degree,
            "point": self.point.iter().map(Field::to_json).collect::<Vec<_>>(),
            "multiplicity": self.multiplicity,
            "local_rank": self.local_rank(),
        })
    }
}

/// All points of `C ∩ Δ`, canonically ordered.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub points: Vec<IntersectionDatum>,
    /// `d * deg Δ`.
    pub expected_total: usize,
}

impl Intersection {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// All multiplicities are 1 and every fibre has rank 2.
    pub fn transversal(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.multiplicity == 1 && p.local_rank() == 2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "count": self.points.len(),
            "total_multiplicity": self.total_multiplicity(),
            "expected_total": self.expected_total,
            "transversal": self.transversal(),
            "points": self.points.iter().map(IntersectionDatum::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Substitutes the parametrization into the discriminant and collects the
/// roots of the resulting binary form, including the point at infinity.
pub fn intersect_curve_discriminant(fib: &ConicFibration, curve: &ParamCurve) -> Result<Intersection> {
    if !std::ptr::eq(fib.field, curve.field()) {
        return Err(Error::RingMismatch);
    }
    let disc = fib.discriminant();
    let h = disc.form.substitute(curve.rho());
    if h.is_zero() {
        return Err(Error::CurveInDiscriminant);
    }
    let total = curve.d * disc.degree.max(0) as usize;
    let finite_deg = h.degree().expect("nonzero");
    let mut points = Vec::new();
    for r in factor_roots(&h)? {
        let param = Param::Finite(r.root);
        let point = curve.point(&param);
        points.push(IntersectionDatum {
            param,
            extension_degree: r.extension_degree,
            local_gram: fib.local_gram(&point),
            point,
            multiplicity: r.multiplicity,
        });
    }
    if total > finite_deg {
        let point = curve.point_at_infinity();
        points.push(IntersectionDatum {
            param: Param::Infinity,
            extension_degree: 1,
            local_gram: fib.local_gram(&point),
            point,
            multiplicity: total - finite_deg,
        });
    }
    points.sort_by(datum_order);
    Ok(Intersection {
        points,
        expected_total: total,
    })
}

/// (extension degree, parameter coordinates), with infinity after every
/// other point of degree 1.
fn datum_order(a: &IntersectionDatum, b: &IntersectionDatum) -> Ordering {
    a.extension_degree
        .cmp(&b.extension_degree)
        .then_with(|| match (&a.param, &b.param) {
            (Param::Finite(x), Param::Finite(y)) => x.canonical_cmp(y),
            (Param::Finite(_), Param::Infinity) => Ordering::Less,
            (Param::Infinity, Param::Finite(_)) => Ordering::Greater,
            (Param::Infinity, Param::Infinity) => Ordering::Equal,
        })
}

/// The two lines of a degenerate fibre, as isotropic planes of the local
/// Gram matrix, possibly over a quadratic extension of the point's field.
#[derive(Clone, Debug)]
pub struct CoverPointPair {
    pub plus: IsotropicPlane<Gf>,
    pub minus: IsotropicPlane<Gf>,
    pub frame: NormalizedFrame<Gf>,
}

impl CoverPointPair {
    pub fn plane(&self, label: PlaneLabel) -> &IsotropicPlane<Gf> {
        match label {
            PlaneLabel::Plus => &self.plus,
            PlaneLabel::Minus => &self.minus,
        }
    }

    /// The label of `plane`, if it is one of the pair.
    pub fn label_of(&self, plane: &IsotropicPlane<Gf>) -> Option<PlaneLabel> {
        if *plane == self.plus {
            Some(PlaneLabel::Plus)
        } else if *plane == self.minus {
            Some(PlaneLabel::Minus)
        } else {
            None
        }
    }

    pub fn field(&self) -> &'static GfField {
        self.frame.sqrt_minus_one().field()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "plus": self.plus.to_json(),
            "minus": self.minus.to_json(),
            "field_degree": self.field().degree(),
        })
    }
}

/// Splits the degenerate fibre of an intersection point into its two lines.
pub fn split_degenerate_conic(datum: &IntersectionDatum) -> Result<CoverPointPair> {
    split_gram(&datum.local_gram)
}

/// Splits a rank-two Gram matrix into its two isotropic planes.
pub fn split_gram(gram: &TernaryGram<Gf>) -> Result<CoverPointPair> {
    let frame = normalize_rank2(gram)?;
    Ok(CoverPointPair {
        plus: frame.plane(PlaneLabel::Plus),
        minus: frame.plane(PlaneLabel::Minus),
        frame,
    })
}

/// Checks that the `q`-power Frobenius, `q` the order of the coefficient
/// field, permutes the intersection points and carries the pair of planes
/// at each point onto the pair at its image.
pub fn frobenius_coherent(fib: &ConicFibration, inter: &Intersection) -> Result<bool> {
    let m = fib.field.degree();
    let pairs: Vec<Option<CoverPointPair>> = inter
        .points
        .iter()
        .map(|p| (p.local_rank() == 2).then(|| split_degenerate_conic(p)).transpose())
        .collect::<Result<_>>()?;
    for (k, datum) in inter.points.iter().enumerate() {
        let image = datum.param.frobenius_pow(m);
        let Some(j) = inter.points.iter().position(|p| p.param == image) else {
            return Ok(false);
        };
        if inter.points[j].multiplicity != datum.multiplicity {
            return Ok(false);
        }
        let (Some(src), Some(dst)) = (&pairs[k], &pairs[j]) else {
            continue;
        };
        let moved = [&src.plus, &src.minus].map(|pl| pl.map(|c| c.frobenius_pow(m)));
        let up = |pl: &IsotropicPlane<Gf>, target: &'static GfField| -> Option<IsotropicPlane<Gf>> {
            let emb = crate::exactfield::embedding(pl.normal()[0].field(), target).ok()?;
            Some(pl.map(|c| emb.apply(c)))
        };
        let target = if src.field().degree() >= dst.field().degree() { src.field() } else { dst.field() };
        let (Some(a0), Some(a1), Some(b0), Some(b1)) = (
            up(&moved[0], target),
            up(&moved[1], target),
            up(&dst.plus, target),
            up(&dst.minus, target),
        ) else {
            return Ok(false);
        };
        let same = (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0);
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cubic threefold degree shape: twists `(0, 0, 1)`, line degree 1.
pub const DEMO_TWISTS: [i64; 3] = [0, 0, 1];
pub const DEMO_LINE_DEGREE: i64 = 1;
/// Attempts made to find a smooth discriminant before giving up.
pub const DEMO_ATTEMPTS: usize = 1000;

/// A random fibration of the cubic threefold shape with smooth discriminant.
pub fn demo_fibration<R: Rng + ?Sized>(field: &'static GfField, rng: &mut R) -> Result<ConicFibration> {
    for _ in 0..DEMO_ATTEMPTS {
        let fib = ConicFibration::random(field, DEMO_TWISTS, DEMO_LINE_DEGREE, rng)?;
        let disc = fib.discriminant();
        if disc.form().homogeneous_degree() == Some(5) && disc.is_smooth() && !disc.smoothness().probabilistic {
            return Ok(fib);
        }
    }
    Err(Error::Aborted(format!(
        "no smooth discriminant found in {DEMO_ATTEMPTS} attempts over F_{}^{}",
        field.p(),
        field.degree()
    )))
}

/// A random curve of degree `d` meeting the discriminant transversally.
pub fn transversal_curve<R: Rng + ?Sized>(
    fib: &ConicFibration,
    d: usize,
    rng: &mut R,
    attempts: usize,
) -> Result<(ParamCurve, Intersection)> {
    for _ in 0..attempts {
        let curve = ParamCurve::random(fib.field, d, rng)?;
        match fib.intersect(&curve) {
            Ok(inter) if inter.transversal() => return Ok((curve, inter)),
            Ok(_) | Err(Error::CurveInDiscriminant) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::Aborted(format!(
        "no transversal curve of degree {d} found in {attempts} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lin(field: &'static GfField, c: [i64; 3]) -> Poly3<Gf> {
        Poly3::from_terms(
            (0..3).map(|k| {
                let mut e = [0; 3];
                e[k] = 1;
                (e, field.from_i64(c[k]))
            }),
            field.zero(),
        )
    }

    fn diagonal(field: &'static GfField, g: [Poly3<Gf>; 3]) -> ConicFibration {
        let z = Poly3::zero(field.zero());
        let [g1, g2, g3] = g;
        ConicFibration::new(field, [0, 0, 0], 1, [g1, z.clone(), z.clone(), g2, z, g3]).unwrap()
    }

    #[test]
    fn diagonal_discriminant_is_product() {
        let f = GfField::canonical(13, 1).unwrap();
        let g = [lin(f, [1, 0, 0]), lin(f, [0, 1, 0]), lin(f, [1, 1, 1])];
        let fib = diagonal(f, g.clone());
        let [a, b, c] = g;
        assert_eq!(fib.discriminant().form(), &(a * b * c));
        assert_eq!(fib.discriminant().degree(), 3);
    }

    #[test]
    fn degree_mismatch_names_entry() {
        let f = GfField::canonical(13, 1).unwrap();
        let z = Poly3::zero(f.zero());
        let bad = Poly3::var(0, f.zero()) * Poly3::var(1, f.zero());
        let err = ConicFibration::new(
            f,
            [0, 0, 0],
            1,
            [z.clone(), z.clone(), bad, z.clone(), z.clone(), z],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::DegreeMismatch {
                i: 0,
                j: 2,
                expected: 1,
                found: 2
            }
        );
    }

    #[test]
    fn demo_shape_has_quintic_discriminant() {
        let f = GfField::canonical(13, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let fib = demo_fibration(f, &mut rng).unwrap();
        assert_eq!(fib.discriminant().degree(), 5);
        assert_eq!(fib.discriminant().form().homogeneous_degree(), Some(5));
        for d in 1..=2 {
            let (_, inter) = transversal_curve(&fib, d, &mut rng, 200).unwrap();
            assert_eq!(inter.points.len(), 5 * d);
            assert_eq!(inter.total_multiplicity(), 5 * d);
            assert!(frobenius_coherent(&fib, &inter).unwrap());
            for p in &inter.points {
                assert!(fib.simple_degeneration_at(&p.point).unwrap());
            }
        }
    }

    #[test]
    fn small_diagonal_instance_matches_scan() {
        // diag(x0, x1, x0 + x1) against the line (s : 1 : s + 1)
        let f = GfField::canonical(7, 1).unwrap();
        let fib = diagonal(f, [lin(f, [1, 0, 0]), lin(f, [0, 1, 0]), lin(f, [1, 1, 0])]);
        let s = UniPoly::x(f.zero());
        let one = UniPoly::constant(f.one());
        let curve = ParamCurve::new(1, [s.clone(), one.clone(), s + one]).unwrap();
        let inter = fib.intersect(&curve).unwrap();
        assert_eq!(inter.total_multiplicity(), 3);
        let disc = fib.discriminant().form();
        for ext in [1, 2] {
            let big = GfField::canonical(7, ext).unwrap();
            for a in big.elements() {
                let on = disc.eval_ext(&curve.point_at(&a)).is_zero();
                let listed = inter.points.iter().any(|p| match p.param {
                    Param::Finite(r) => {
                        crate::exactfield::embedding(r.field(), big)
                            .map(|e| e.apply(&r) == a)
                            .unwrap_or(false)
                    }
                    Param::Infinity => false,
                });
                assert_eq!(on, listed, "parameter {a}");
            }
        }
        let at_inf = disc.eval_ext(&curve.point_at_infinity()).is_zero();
        assert_eq!(at_inf, inter.points.iter().any(|p| p.param == Param::Infinity));
    }

    #[test]
    fn constant_standard_fibre_is_simple() {
        let f = GfField::canonical(13, 1).unwrap();
        let (one, z) = (Poly3::constant(f.one()), Poly3::zero(f.zero()));
        let fib = ConicFibration::new(f, [0, 0, 0], 0, [one.clone(), z.clone(), z.clone(), one, z.clone(), z])
            .unwrap();
        assert!(fib.discriminant().form().is_zero());
        assert!(fib.simple_degeneration_at(&[f.one(), f.from_u64(5), f.zero()]).unwrap());
    }

    #[test]
    fn pencil_degenerates_to_rank_one() {
        // diag(x1^2, x0 x1, x0 x1) is diag(1, s, s) in the chart x1 = 1
        let f = GfField::canonical(13, 1).unwrap();
        let z = Poly3::zero(f.zero());
        let x0 = Poly3::var(0, f.zero());
        let x1 = Poly3::var(1, f.zero());
        let fib = ConicFibration::new(
            f,
            [0, 0, 0],
            2,
            [x1.clone() * x1.clone(), z.clone(), z.clone(), x0.clone() * x1.clone(), z, x0 * x1],
        )
        .unwrap();
        assert!(!fib.simple_degeneration_at(&[f.zero(), f.one(), f.zero()]).unwrap());
        assert_eq!(
            fib.simple_degeneration_at(&[f.one(), f.one(), f.zero()]),
            Err(Error::NotOnDiscriminant)
        );
    }

    #[test]
    fn conjugate_planes_over_f49() {
        let f = GfField::canonical(7, 1).unwrap();
        let g = TernaryGram::standard(f.zero());
        let pair = split_gram(&g).unwrap();
        assert_eq!(pair.field().degree(), 2);
        let frob = |pl: &IsotropicPlane<Gf>| pl.map(|c| c.frobenius());
        assert_eq!(frob(&pair.plus), pair.minus);
        assert_eq!(frob(&pair.minus), pair.plus);
    }

    #[test]
    fn curve_validation() {
        let f = GfField::canonical(13, 1).unwrap();
        let s = UniPoly::x(f.zero());
        let one = UniPoly::constant(f.one());
        assert!(ParamCurve::new(3, [s.clone(), one.clone(), s.clone()]).is_err());
        assert!(ParamCurve::new(1, [s.clone(), s.clone(), s.clone()]).is_err());
        let sq = s.clone() * s.clone();
        assert!(ParamCurve::new(2, [sq.clone(), s.clone(), one.clone()]).is_ok());
        assert!(ParamCurve::new(2, [sq, s.clone(), s]).is_err());
    }
}
