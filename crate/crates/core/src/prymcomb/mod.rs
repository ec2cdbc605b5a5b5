//! Module data over a rational curve `C` meeting the discriminant
//! transversally in `n` points.
//!
//! A module in the fibre of the support map over `C` is recorded by a subset
//! `lambda` of the intersection points (the half-point twists) and an integer
//! `twist` (the degree of a line bundle pulled back from `C`), relative to a
//! fixed base module. Its lift to the double cover picks, at each point, one
//! of the two lines of the degenerate conic.

mod consistency;
pub mod local;

use std::sync::Arc;

use num_rational::Ratio;
use serde_json::json;

use crate::clifford::PlaneLabel;
use crate::fibration::{
    split_degenerate_conic, ConicFibration, CoverPointPair, IntersectionDatum, ParamCurve,
};
use crate::{Error, Result};

pub use consistency::{local_gram_series, rep_lift_consistency, ConsistencyReport, PointCheck};
pub use local::{local_model, LocalModelReport, RPrime};

/// Largest number of intersection points supported.
pub const MAX_POINTS: usize = 64;
/// Largest `n` for which fibres are enumerated by the parity check.
pub const MAX_ENUMERATED_POINTS: usize = 24;

fn popcount(mask: u64) -> i64 {
    mask.count_ones() as i64
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Everything attached to one curve `C`.
#[derive(Debug)]
pub struct CurveContext {
    pub fibration: ConicFibration,
    pub curve: ParamCurve,
    pub points: Vec<IntersectionDatum>,
    pub cover_pairs: Vec<CoverPointPair>,
    /// The lift of the base module; all plus.
    pub base_lift: Vec<PlaneLabel>,
    /// `e` of the base module.
    pub base_e: i64,
    /// Index of the image of each point under the Frobenius of the base field.
    pub frobenius: Vec<usize>,
}

/// Intersects, checks transversality and splits every degenerate fibre.
pub fn build_context(
    fib: &ConicFibration,
    curve: &ParamCurve,
    base_e: i64,
) -> Result<Arc<CurveContext>> {
    let inter = fib.intersect(curve)?;
    if inter.points.iter().any(|p| p.local_rank() < 2) {
        return Err(Error::NotSimpleDegeneration);
    }
    if !inter.transversal() {
        return Err(Error::OutsideUd);
    }
    let n = inter.points.len();
    if n > MAX_POINTS {
        return Err(Error::EnumerationBound(format!(
            "{n} intersection points exceed the limit of {MAX_POINTS}"
        )));
    }
    let cover_pairs = inter
        .points
        .iter()
        .map(split_degenerate_conic)
        .collect::<Result<Vec<_>>>()?;
    let m = fib.field().degree();
    let frobenius = inter
        .points
        .iter()
        .map(|p| {
            let image = p.param.frobenius_pow(m);
            inter
                .points
                .iter()
                .position(|q| q.param == image)
                .expect("the intersection is Frobenius stable")
        })
        .collect();
    Ok(Arc::new(CurveContext {
        fibration: fib.clone(),
        curve: curve.clone(),
        points: inter.points,
        cover_pairs,
        base_lift: vec![PlaneLabel::Plus; n],
        base_e,
        frobenius,
    }))
}

impl CurveContext {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.curve.degree()
    }

    /// Number of elements of the even-subset group.
    pub fn group_order(&self) -> u128 {
        1u128 << (self.n() - 1).min(127)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n(),
            "d": self.d(),
            "base_e": self.base_e,
            "points": self.points.iter().map(IntersectionDatum::to_json).collect::<Vec<_>>(),
            "cover_pairs": self.cover_pairs.iter().map(CoverPointPair::to_json).collect::<Vec<_>>(),
            "base_lift": self.base_lift,
            "frobenius": self.frobenius,
        })
    }
}

/// A subset of the intersection points of even cardinality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvenSubset {
    n: usize,
    mu: u64,
}

impl EvenSubset {
    pub fn new(n: usize, mu: u64) -> Result<Self> {
        if n > MAX_POINTS || mu & !full_mask(n) != 0 {
            return Err(Error::IndexOutOfRange(n));
        }
        if mu.count_ones() % 2 == 1 {
            return Err(Error::NotAGroupElement);
        }
        Ok(EvenSubset { n, mu })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        Self::new(bits.len(), to_mask(bits)?)
    }

    pub fn identity(n: usize) -> Self {
        EvenSubset { n, mu: 0 }
    }

    pub fn mask(&self) -> u64 {
        self.mu
    }

    pub fn bits(&self) -> Vec<bool> {
        to_bits(self.mu, self.n)
    }

    pub fn weight(&self) -> usize {
        self.mu.count_ones() as usize
    }

    /// The group law, symmetric difference.
    pub fn compose(&self, other: &Self) -> Self {
        EvenSubset {
            n: self.n,
            mu: self.mu ^ other.mu,
        }
    }

    /// All `2^(n-1)` elements, in increasing order of masks.
    pub fn all(n: usize) -> impl Iterator<Item = EvenSubset> {
        (0..=full_mask(n))
            .filter(|m| m.count_ones() % 2 == 0)
            .map(move |mu| EvenSubset { n, mu })
    }
}

fn to_mask(bits: &[bool]) -> Result<u64> {
    if bits.len() > MAX_POINTS {
        return Err(Error::IndexOutOfRange(bits.len()));
    }
    Ok(bits
        .iter()
        .enumerate()
        .fold(0u64, |m, (i, &b)| if b { m | (1 << i) } else { m }))
}

fn to_bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// The Chern character `(0, 2d, e)` of a module on the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChernCharacter {
    pub ch0: i64,
    pub ch1: i64,
    pub ch2: i64,
}

/// A module in the fibre over `C`.
#[derive(Clone, Debug)]
pub struct ModuleFiberData {
    ctx: Arc<CurveContext>,
    lambda: u64,
    twist: i64,
}

impl PartialEq for ModuleFiberData {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.lambda == other.lambda && self.twist == other.twist
    }
}

impl Eq for ModuleFiberData {}

impl ModuleFiberData {
    pub fn new(ctx: &Arc<CurveContext>, lambda: &[bool], twist: i64) -> Result<Self> {
        if lambda.len() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        Ok(ModuleFiberData {
            ctx: Arc::clone(ctx),
            lambda: to_mask(lambda)?,
            twist,
        })
    }

    pub fn from_mask(ctx: &Arc<CurveContext>, lambda: u64, twist: i64) -> Result<Self> {
        if lambda & !full_mask(ctx.n()) != 0 {
            return Err(Error::IndexOutOfRange(ctx.n()));
        }
        Ok(ModuleFiberData {
            ctx: Arc::clone(ctx),
            lambda,
            twist,
        })
    }

    /// The base module, `lambda = 0` and `twist = 0`.
    pub fn base(ctx: &Arc<CurveContext>) -> Self {
        ModuleFiberData {
            ctx: Arc::clone(ctx),
            lambda: 0,
            twist: 0,
        }
    }

    pub fn context(&self) -> &Arc<CurveContext> {
        &self.ctx
    }

    pub fn lambda(&self) -> Vec<bool> {
        to_bits(self.lambda, self.ctx.n())
    }

    pub fn lambda_mask(&self) -> u64 {
        self.lambda
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// `base_e + 2 twist + |lambda|`.
    pub fn e(&self) -> i64 {
        self.ctx.base_e + 2 * self.twist + popcount(self.lambda)
    }

    /// Whether `lambda` is constant on Frobenius orbits, so that the module is
    /// defined over the coefficient field.
    pub fn frobenius_stable(&self) -> bool {
        self.ctx
            .frobenius
            .iter()
            .enumerate()
            .all(|(i, &j)| (self.lambda >> i & 1) == (self.lambda >> j & 1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda": self.lambda().iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            "twist": self.twist,
            "e": self.e(),
            "frobenius_stable": self.frobenius_stable(),
        })
    }
}

/// `(0, 2d, base_e + 2 twist + |lambda|)`.
pub fn chern_char(m: &ModuleFiberData) -> ChernCharacter {
    ChernCharacter {
        ch0: 0,
        ch1: 2 * m.ctx.d() as i64,
        ch2: m.e(),
    }
}

/// Degree bookkeeping for the pushforward `G` of a module to `C`: the twist
/// contributes `2 deg J`, the base module `e0 + d^2`, and each half point 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeAccount {
    pub d: i64,
    pub deg_j: i64,
    pub deg_base_pushforward: i64,
    pub half_points: i64,
    pub rank: i64,
}

impl DegreeAccount {
    pub fn of(m: &ModuleFiberData) -> Self {
        let d = m.ctx.d() as i64;
        DegreeAccount {
            d,
            deg_j: m.twist,
            deg_base_pushforward: m.ctx.base_e + d * d,
            half_points: popcount(m.lambda),
            rank: 2,
        }
    }

    pub fn degree(&self) -> i64 {
        2 * self.deg_j + self.deg_base_pushforward + self.half_points
    }

    /// `deg G - (d^2 / 2) rk G`.
    pub fn ch2(&self) -> Ratio<i64> {
        Ratio::from_integer(self.degree()) - Ratio::new(self.d * self.d, 2) * Ratio::from_integer(self.rank)
    }
}

/// The torsor action: `lambda' = lambda xor mu`, with the twist adjusted by
/// `(|lambda| - |lambda'|) / 2` so that `e` is unchanged.
pub fn group_act(g: &EvenSubset, m: &ModuleFiberData) -> Result<ModuleFiberData> {
    if g.mu.count_ones() % 2 == 1 {
        return Err(Error::NotAGroupElement);
    }
    if g.n != m.ctx.n() {
        return Err(Error::ContextMismatch);
    }
    let (lambda, twist) = act_mask(g.mu, m.lambda, m.twist);
    Ok(ModuleFiberData {
        ctx: Arc::clone(&m.ctx),
        lambda,
        twist,
    })
}

fn act_mask(mu: u64, lambda: u64, twist: i64) -> (u64, i64) {
    let new = lambda ^ mu;
    (new, twist + (popcount(lambda) - popcount(new)) / 2)
}

/// Tensoring with `O(p_i / 2)`: flips `lambda_i`, and when the flip removes
/// a half point the twist absorbs `O(p_i)`. Raises `e` by one.
pub fn half_twist(m: &ModuleFiberData, i: usize) -> Result<ModuleFiberData> {
    if i >= m.ctx.n() {
        return Err(Error::IndexOutOfRange(i));
    }
    let bit = 1u64 << i;
    let twist = if m.lambda & bit != 0 { m.twist + 1 } else { m.twist };
    Ok(ModuleFiberData {
        ctx: Arc::clone(&m.ctx),
        lambda: m.lambda ^ bit,
        twist,
    })
}

/// `e` recovered by walking with [`half_twist`] alone, each step adding one
/// to `e`: both `m` and the base module are moved to a common state
/// `(0, T)`, and the difference of step counts is returned relative to
/// `base_e`.
pub fn e_by_half_twist_path(m: &ModuleFiberData) -> Result<i64> {
    let ctx = m.context();
    let target_twist = (m.twist + popcount(m.lambda)).max(0);
    let walk = |start: &ModuleFiberData| -> Result<i64> {
        let mut cur = start.clone();
        let mut steps = 0;
        for i in 0..ctx.n() {
            if cur.lambda >> i & 1 == 1 {
                cur = half_twist(&cur, i)?;
                steps += 1;
            }
        }
        while cur.twist < target_twist {
            cur = half_twist(&half_twist(&cur, 0)?, 0)?;
            steps += 2;
        }
        debug_assert_eq!((cur.lambda, cur.twist), (0, target_twist));
        Ok(steps)
    };
    Ok(ctx.base_e + walk(&ModuleFiberData::base(ctx))? - walk(m)?)
}

/// A choice of one line over every intersection point.
#[derive(Clone, Debug)]
pub struct LiftedDivisor {
    ctx: Arc<CurveContext>,
    pub choices: Vec<PlaneLabel>,
}

impl PartialEq for LiftedDivisor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.choices == other.choices
    }
}

impl LiftedDivisor {
    pub fn new(ctx: &Arc<CurveContext>, choices: Vec<PlaneLabel>) -> Result<Self> {
        if choices.len() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        Ok(LiftedDivisor {
            ctx: Arc::clone(ctx),
            choices,
        })
    }

    /// Conjugates the choice at every point of `g`.
    pub fn conjugate_at(&self, g: &EvenSubset) -> Self {
        let choices = self
            .choices
            .iter()
            .enumerate()
            .map(|(i, &c)| if g.mu >> i & 1 == 1 { c.conjugate() } else { c })
            .collect();
        LiftedDivisor {
            ctx: Arc::clone(&self.ctx),
            choices,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self.choices)
    }
}

/// The lift: the base lift conjugated on the support of `lambda`.
pub fn phi_lift(m: &ModuleFiberData) -> LiftedDivisor {
    let choices = m
        .ctx
        .base_lift
        .iter()
        .enumerate()
        .map(|(i, &c)| if m.lambda >> i & 1 == 1 { c.conjugate() } else { c })
        .collect();
    LiftedDivisor {
        ctx: Arc::clone(&m.ctx),
        choices,
    }
}

/// Parity of the number of points where two lifts differ.
pub fn half_index(a: &LiftedDivisor, b: &LiftedDivisor) -> Result<u8> {
    if !Arc::ptr_eq(&a.ctx, &b.ctx) {
        return Err(Error::ContextMismatch);
    }
    let differ = a.choices.iter().zip(&b.choices).filter(|(x, y)| x != y).count();
    Ok((differ % 2) as u8)
}

/// The modules with `ch2 = e`: one for each `lambda` with
/// `|lambda| = e - base_e (mod 2)`, with the twist fixed by `e`.
pub fn fiber(ctx: &Arc<CurveContext>, e: i64) -> impl Iterator<Item = ModuleFiberData> + '_ {
    let parity = (e - ctx.base_e).rem_euclid(2) as u32;
    (0..=full_mask(ctx.n()))
        .filter(move |l| l.count_ones() % 2 == parity)
        .map(move |lambda| ModuleFiberData {
            ctx: Arc::clone(ctx),
            lambda,
            twist: (e - ctx.base_e - popcount(lambda)) / 2,
        })
}

/// Result of the parity check for one value of `e`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ParityEntry {
    pub e: i64,
    pub fiber_size: u64,
    /// Counts of lifts with relative half 0 and 1.
    pub half_histogram: [u64; 2],
    /// The common half, when the fibre has one.
    pub half: Option<u8>,
    pub pass: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ParityReport {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<ParityEntry>,
    /// Consecutive values of `e` land in opposite halves.
    pub alternates: bool,
    pub pass: bool,
}

impl ParityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Enumerates the fibres for each `e` in `e_range` and checks that each lies
/// in one half, relative to the base lift, with consecutive `e` alternating.
pub fn parity_rule_check(
    ctx: &Arc<CurveContext>,
    e_range: std::ops::RangeInclusive<i64>,
) -> Result<ParityReport> {
    if ctx.n() > MAX_ENUMERATED_POINTS {
        return Err(Error::EnumerationBound(format!(
            "fibres of size 2^{} are not enumerated",
            ctx.n() - 1
        )));
    }
    let reference = phi_lift(&ModuleFiberData::base(ctx));
    let mut entries = Vec::new();
    for e in e_range {
        let mut hist = [0u64; 2];
        let mut size = 0;
        for m in fiber(ctx, e) {
            size += 1;
            debug_assert_eq!(m.e(), e);
            hist[half_index(&phi_lift(&m), &reference)? as usize] += 1;
        }
        let half = match hist {
            [_, 0] => Some(0),
            [0, _] => Some(1),
            _ => None,
        };
        let pass = half.is_some() && size == ctx.group_order() as u64;
        entries.push(ParityEntry {
            e,
            fiber_size: size,
            half_histogram: hist,
            half,
            pass,
        });
    }
    let alternates = entries
        .windows(2)
        .all(|w| matches!((w[0].half, w[1].half), (Some(a), Some(b)) if a != b));
    let pass = alternates && entries.iter().all(|e| e.pass);
    Ok(ParityReport {
        n: ctx.n(),
        d: ctx.d(),
        entries,
        alternates,
        pass,
    })
}

/// Exhaustive torsor and equivariance checks on the fibre of `e`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TorsorReport {
    pub n: usize,
    pub e: i64,
    pub fiber_size: u64,
    pub group_order: u64,
    /// Every ordered pair of fibre elements is joined by exactly one group
    /// element.
    pub simply_transitive: bool,
    /// `Φ(g·m) = g·Φ(m)` for every `g` and `m`.
    pub equivariant: bool,
    /// The action preserves `e`.
    pub preserves_e: bool,
}

impl TorsorReport {
    pub fn pass(&self) -> bool {
        self.simply_transitive && self.equivariant && self.preserves_e && self.fiber_size == self.group_order
    }
}

pub fn torsor_check(ctx: &Arc<CurveContext>, e: i64) -> Result<TorsorReport> {
    if ctx.n() > MAX_ENUMERATED_POINTS {
        return Err(Error::EnumerationBound(format!(
            "fibres of size 2^{} are not enumerated",
            ctx.n() - 1
        )));
    }
    let members: Vec<ModuleFiberData> = fiber(ctx, e).collect();
    let group: Vec<EvenSubset> = EvenSubset::all(ctx.n()).collect();
    let fiber_keys: std::collections::BTreeSet<(u64, i64)> =
        members.iter().map(|m| (m.lambda, m.twist)).collect();
    let mut simply_transitive = true;
    let mut preserves_e = true;
    let mut equivariant = true;
    for m1 in &members {
        let lift = phi_lift(m1);
        for g in &group {
            let moved = group_act(g, m1)?;
            preserves_e &= moved.e() == e;
            equivariant &= phi_lift(&moved) == lift.conjugate_at(g);
        }
        // simply transitive: g -> g.m1 is a bijection from the group onto the fibre
        let images: std::collections::BTreeSet<(u64, i64)> = group
            .iter()
            .map(|g| act_mask(g.mu, m1.lambda, m1.twist))
            .collect();
        simply_transitive &= images.len() == group.len() && images == fiber_keys;
    }
    Ok(TorsorReport {
        n: ctx.n(),
        e,
        fiber_size: members.len() as u64,
        group_order: group.len() as u64,
        simply_transitive,
        equivariant,
        preserves_e,
    })
}
