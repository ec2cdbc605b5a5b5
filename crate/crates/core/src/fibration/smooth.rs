//! Smoothness of plane curves: exact elimination up to degree 6, point
//! sampling above.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::poly3::Poly3;
use crate::exactfield::{
    embedding, factor_roots, resultant_bivariate, Field, Gf, GfField, Ring, UniPoly,
};

/// Largest degree decided by the exact path.
pub const EXACT_DEGREE_LIMIT: u32 = 6;

const SAMPLE_SEED: u64 = 0x5a3b_1e07;
const SAMPLE_COUNT: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// A singular point, possibly over an extension field.
    pub witness: Option<[Gf; 3]>,
    /// Set when the answer comes from sampling rather than elimination.
    pub probabilistic: bool,
}

impl SmoothnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "smooth": self.smooth,
            "probabilistic": self.probabilistic,
            "witness": self.witness.as_ref().map(|w| w.iter().map(Field::to_json).collect::<Vec<_>>()),
        })
    }

    fn singular(witness: Option<[Gf; 3]>) -> Self {
        SmoothnessReport {
            smooth: false,
            witness,
            probabilistic: false,
        }
    }

    fn smooth() -> Self {
        SmoothnessReport {
            smooth: true,
            witness: None,
            probabilistic: false,
        }
    }
}

/// The form together with its three partial derivatives.
fn system(form: &Poly3<Gf>) -> [Poly3<Gf>; 4] {
    [form.clone(), form.partial(0), form.partial(1), form.partial(2)]
}

fn vanish_at(sys: &[Poly3<Gf>; 4], pt: &[Gf; 3]) -> bool {
    sys.iter().all(|p| p.eval_ext(pt).is_zero())
}

/// Decides whether the projective curve `form = 0` is smooth.
pub fn check_smooth(form: &Poly3<Gf>) -> SmoothnessReport {
    let field = form.zero_elem().field();
    let (zero, one) = (field.zero(), field.one());
    if form.is_zero() {
        return SmoothnessReport::singular(Some([one, zero, zero]));
    }
    let deg = form.total_degree().unwrap_or(0);
    if deg == 0 {
        return SmoothnessReport::smooth();
    }
    let sys = system(form);
    if deg > EXACT_DEGREE_LIMIT {
        return sample(&sys, field);
    }
    let p100 = [one, zero, zero];
    if vanish_at(&sys, &p100) {
        return SmoothnessReport::singular(Some(p100));
    }
    if let Some(w) = line_at_infinity(&sys, field) {
        return SmoothnessReport::singular(Some(w));
    }
    match affine_chart(&sys, field) {
        Chart::Smooth => SmoothnessReport::smooth(),
        Chart::Singular(w) => SmoothnessReport::singular(w),
    }
}

/// Singular points `(x : 1 : 0)`.
fn line_at_infinity(sys: &[Poly3<Gf>; 4], field: &'static GfField) -> Option<[Gf; 3]> {
    let (zero, one) = (field.zero(), field.one());
    let sub = [
        UniPoly::x(zero),
        UniPoly::constant(one),
        UniPoly::zero(zero),
    ];
    let g = sys
        .iter()
        .fold(UniPoly::zero(zero), |g, p| g.gcd(&p.substitute(&sub)));
    if g.is_zero() {
        return Some([zero, one, zero]);
    }
    if g.degree() == Some(0) {
        return None;
    }
    let r = factor_roots(&g).expect("nonzero").remove(0).root;
    let f = r.field();
    Some([r, f.one(), f.zero()])
}

enum Chart {
    Smooth,
    Singular(Option<[Gf; 3]>),
}

/// Singular points `(x : y : 1)`, by eliminating `y` with resultants.
fn affine_chart(sys: &[Poly3<Gf>; 4], field: &'static GfField) -> Chart {
    let polys: Vec<UniPoly<UniPoly<Gf>>> = sys
        .iter()
        .map(|p| p.to_bivariate(1, 0))
        .filter(|p| !p.is_zero())
        .collect();
    let mut g = UniPoly::zero(field.zero());
    'pairs: for (a, pa) in polys.iter().enumerate() {
        for pb in &polys[a + 1..] {
            let elim = if pa.degree() == Some(0) && pb.degree() == Some(0) {
                pa.coeff(0).gcd(&pb.coeff(0))
            } else {
                resultant_bivariate(pa, pb)
            };
            g = g.gcd(&elim);
            if g.degree() == Some(0) {
                break 'pairs;
            }
        }
    }
    if g.degree() == Some(0) {
        return Chart::Smooth;
    }
    if g.is_zero() {
        return Chart::Singular(common_component_point(&polys, field));
    }
    for r in factor_roots(&g).expect("nonzero") {
        if let Some(w) = point_over(&polys, &r.root) {
            return Chart::Singular(Some(w));
        }
    }
    Chart::Smooth
}

/// A common zero `(x0, y, 1)` of the bivariate system, if one exists.
fn point_over(polys: &[UniPoly<UniPoly<Gf>>], x0: &Gf) -> Option<[Gf; 3]> {
    let ext = x0.field();
    let emb = embedding(polys[0].zero_elem().zero_elem().field(), ext).expect("subfield");
    let g = polys.iter().fold(UniPoly::zero(ext.zero()), |g, p| {
        let specialised = p.map(ext.zero(), |c| c.map(ext.zero(), |a| emb.apply(a)).eval(x0));
        g.gcd(&specialised)
    });
    if g.is_zero() {
        return Some([*x0, ext.zero(), ext.one()]);
    }
    if g.degree() == Some(0) {
        return None;
    }
    let y0 = factor_roots(&g).expect("nonzero").remove(0).root;
    let big = y0.field();
    let up = embedding(ext, big).expect("subfield");
    Some([up.apply(x0), y0, big.one()])
}

/// When the system shares a curve component, looks for a point on it by
/// specialising `x` over small extensions.
fn common_component_point(
    polys: &[UniPoly<UniPoly<Gf>>],
    field: &'static GfField,
) -> Option<[Gf; 3]> {
    for k in 1..=4 {
        let ext = GfField::canonical(field.p(), field.degree() * k).ok()?;
        if ext.order() > 1 << 20 {
            break;
        }
        for x0 in ext.elements() {
            if let Some(w) = point_over(polys, &x0) {
                return Some(w);
            }
        }
    }
    None
}

fn sample(sys: &[Poly3<Gf>; 4], field: &'static GfField) -> SmoothnessReport {
    let q = field.order();
    let mut check = |pt: [Gf; 3]| vanish_at(sys, &pt).then_some(pt);
    let found = if q * q + q < SAMPLE_COUNT as u128 {
        projective_points(field).find_map(&mut check)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..SAMPLE_COUNT).find_map(|_| {
            let pt = [field.random(&mut rng), field.random(&mut rng), field.random(&mut rng)];
            if pt.iter().all(Ring::is_zero) {
                return None;
            }
            check(pt)
        })
    };
    SmoothnessReport {
        smooth: found.is_none(),
        witness: found,
        probabilistic: true,
    }
}

/// All points of the projective plane over `field`, normalized so that the
/// last nonzero coordinate is 1.
pub fn projective_points(field: &'static GfField) -> impl Iterator<Item = [Gf; 3]> {
    let (zero, one) = (field.zero(), field.one());
    let affine = field
        .elements()
        .flat_map(move |x| field.elements().map(move |y| [x, y, one]));
    let line = field.elements().map(move |x| [x, one, zero]);
    affine.chain(line).chain(std::iter::once([one, zero, zero]))
}
