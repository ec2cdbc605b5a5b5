//! Agreement of the quiver kernel lines with the lift, and the local shape of
//! the Gram matrix along the curve.

use serde::Serialize;

use super::{local_model, phi_lift, ModuleFiberData};
use crate::clifford::{rep_kernel_line, PlaneLabel, RepTypeTag};
use crate::exactfield::{embedding, Gf, Mat, Ring, TruncatedSeries, UniPoly};
use crate::fibration::{ConicFibration, Param, ParamCurve, Poly3};
use crate::Result;

const SERIES_PRECISION: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub index: usize,
    pub lambda: bool,
    pub tag: RepTypeTag,
    pub expected: PlaneLabel,
    /// Label of the plane `K'`, or `None` if it is neither of the pair.
    pub found: Option<PlaneLabel>,
    /// Valuations of the `(2,2)` entry and of the determinant of the
    /// normalized Gram matrix along the curve.
    pub radical_valuation: Option<usize>,
    pub det_valuation: Option<usize>,
}

impl PointCheck {
    pub fn pass(&self) -> bool {
        self.found == Some(self.expected)
            && matches!(self.tag, RepTypeTag::T1 | RepTypeTag::T2)
            && self.radical_valuation == Some(1)
            && self.det_valuation == Some(1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub points: Vec<PointCheck>,
    pub pass: bool,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// At each point, takes the representation of the local model on the branch
/// selected by `lambda` (type T1 off `lambda`, T2 on it), computes its plane
/// `K'` in the frame of the fibre, and compares with the lift.
pub fn rep_lift_consistency(m: &ModuleFiberData) -> Result<ConsistencyReport> {
    let ctx = m.context();
    let lift = phi_lift(m);
    let lambda = m.lambda();
    let mut points = Vec::with_capacity(ctx.n());
    for (i, pair) in ctx.cover_pairs.iter().enumerate() {
        let frame = &pair.frame;
        let model = local_model(&frame.sqrt_minus_one().zero_like())?;
        let rep = model.rep_at_branch(if lambda[i] { 0 } else { 1 });
        let line = rep_kernel_line(frame, &rep)?;
        let series = local_gram_series(&ctx.fibration, &ctx.curve, &ctx.points[i].param, frame.basis_change())?;
        let det = series.det_expansion();
        points.push(PointCheck {
            index: i,
            lambda: lambda[i],
            tag: line.tag,
            expected: lift.choices[i],
            found: pair.label_of(&line.kprime),
            radical_valuation: series.get(2, 2).valuation(),
            det_valuation: det.valuation(),
        });
    }
    let pass = points.iter().all(PointCheck::pass);
    Ok(ConsistencyReport { points, pass })
}

/// `P^T G(tau) P`, where `G(tau)` is the Gram matrix of the fibration along
/// the curve near `param` in a local parameter `tau`, computed modulo
/// `tau^3`. The coefficients of `P` define the working field.
pub fn local_gram_series(
    fib: &ConicFibration,
    curve: &ParamCurve,
    param: &Param,
    basis_change: &Mat<Gf>,
) -> Result<Mat<TruncatedSeries<Gf>>> {
    let target = basis_change.zero_elem().field();
    let up = embedding(fib.field(), target)?;
    let zero = TruncatedSeries::constant(target.zero(), SERIES_PRECISION);
    let lift_poly = |p: &UniPoly<Gf>| p.map(target.zero(), |c| up.apply(c));
    let d = curve.degree();
    let mut coords = Vec::with_capacity(3);
    for rho in curve.rho() {
        let rho = lift_poly(rho);
        let series = match param {
            Param::Finite(s0) => {
                let s0 = embedding(s0.field(), target)?.apply(s0);
                // rho(s0 + tau)
                rho.compose(&UniPoly::new(vec![s0, target.one()], target.zero()))
            }
            Param::Infinity => {
                // tau^d rho(1 / tau)
                let c: Vec<Gf> = (0..=d).rev().map(|j| rho.coeff(j)).collect();
                UniPoly::new(c, target.zero())
            }
        };
        coords.push(TruncatedSeries::from_poly(&series, SERIES_PRECISION));
    }
    let coords: [TruncatedSeries<Gf>; 3] = coords.try_into().expect("three coordinates");
    let lift_form = |f: &Poly3<Gf>| f.map(zero.clone(), |c| TruncatedSeries::constant(up.apply(c), SERIES_PRECISION));
    let gram = fib.entries().map(zero.clone(), |f| lift_form(f).eval(&coords));
    let p = basis_change.map(zero.clone(), |c| TruncatedSeries::constant(*c, SERIES_PRECISION));
    Ok(p.transpose().mul(&gram).mul(&p))
}
