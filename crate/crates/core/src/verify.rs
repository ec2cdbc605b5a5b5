//! Self-check suites, one per stated property of each module.
//!
//! Every suite is deterministic in the seed and reports a pass flag with a
//! JSON detail record. [`run_all`] runs the suites on separate threads and
//! assembles the report in a fixed order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::clifford::{
    even_clifford_multiply, normalize_rank2, path_algebra_check, quiver_presentation, rep_census,
    rep_kernel_line, ConicField, EvenElement, PlaneLabel, Rep2, RepTypeTag, TernaryGram,
};
use crate::exactfield::{
    distinct_degree_factorization, embedding, factor_roots, resultant, sqrt_element, Field, GaussRat, Gf,
    GfField, Mat, Ring, UniPoly,
};
use crate::fibration::format::{parse_fibration, serialize_fibration};
use crate::fibration::{
    demo_fibration, frobenius_coherent, split_degenerate_conic, transversal_curve, ConicFibration, ParamCurve,
};
use crate::prymcomb::{
    build_context, chern_char, e_by_half_twist_path, group_act, half_index, half_twist, local_model, parity_rule_check,
    phi_lift, rep_lift_consistency, torsor_check, CurveContext, DegreeAccount, EvenSubset, ModuleFiberData,
};
use crate::spectral::{char_identity, pushforward, ramification_kernel_dims, LineBundleOnCover, SpectralCover};
use crate::Result;

type SuiteFn = fn(u64) -> Result<(bool, Value)>;

/// A named property check.
#[derive(Clone, Copy)]
pub struct Suite {
    pub module: &'static str,
    pub name: &'static str,
    run: SuiteFn,
}

impl Suite {
    pub fn run(&self, seed: u64) -> SuiteResult {
        let (pass, detail) = match (self.run)(seed) {
            Ok(r) => r,
            Err(e) => (false, json!({"error": e.name(), "message": e.to_string()})),
        };
        SuiteResult {
            module: self.module,
            name: self.name,
            pass,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub module: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "pass": self.pass(),
            "suites": self.suites.iter().map(|s| json!({
                "module": s.module,
                "name": s.name,
                "pass": s.pass,
                "detail": s.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// All suites in report order.
pub fn suites() -> Vec<Suite> {
    let s = |module, name, run| Suite { module, name, run };
    vec![
        s("exactfield", "factor-roots-reconstruct", factor_roots_reconstruct as SuiteFn),
        s("exactfield", "sqrt-squares", sqrt_squares),
        s("exactfield", "resultant-vs-gcd", resultant_vs_gcd),
        s("clifford", "associativity", associativity),
        s("clifford", "relations", relations),
        s("clifford", "quiver-presentation", quiver_images),
        s("clifford", "rep-classification", rep_classification),
        s("clifford", "kernel-geometry", kernel_geometry),
        s("fibration", "discriminant-degree", discriminant_degree),
        s("fibration", "cover-planes", cover_planes),
        s("fibration", "bezout", bezout),
        s("fibration", "conjugation-closure", conjugation_closure),
        s("prymcomb", "group-axioms", group_axioms),
        s("prymcomb", "torsor-equivariance", torsor_equivariance),
        s("prymcomb", "parity", parity),
        s("prymcomb", "chern-character", chern_character),
        s("prymcomb", "local-model", local_model_matrices),
        s("prymcomb", "rep-lift-consistency", consistency),
        s("prymcomb", "degree-accounting", degree_accounting),
        s("spectral", "char-identity", spectral_identities),
        s("spectral", "ramification-kernels", spectral_kernels),
        s("spectral", "pullback-invariance", spectral_pullback),
        s("spectral", "ramification-square", spectral_square),
        s("cli", "round-trip", round_trip),
        s("cli", "determinism", determinism),
    ]
}

/// Runs every suite, in parallel, and collects results in suite order.
pub fn run_all(seed: u64) -> VerifyReport {
    let all = suites();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = all.iter().map(|s| scope.spawn(move || s.run(seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    VerifyReport { seed, suites: results }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn f13() -> &'static GfField {
    GfField::canonical(13, 1).expect("prime field")
}

fn random_poly<R: Rng>(field: &'static GfField, deg: usize, rng: &mut R) -> UniPoly<Gf> {
    let mut c: Vec<Gf> = (0..deg).map(|_| field.random(rng)).collect();
    c.push(field.random_nonzero(rng));
    UniPoly::new(c, field.zero())
}

fn random_gauss<R: Rng>(rng: &mut R) -> GaussRat {
    GaussRat::from_ints(rng.random_range(-4..=4), rng.random_range(-4..=4))
}

/// The demo fibration with transversal curves of degree 1 and 2, built from
/// one random stream.
pub fn demo_contexts(seed: u64) -> Result<(Arc<CurveContext>, Arc<CurveContext>)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let fib = demo_fibration(f13(), &mut r)?;
    let (line, _) = transversal_curve(&fib, 1, &mut r, 500)?;
    let (conic, _) = transversal_curve(&fib, 2, &mut r, 500)?;
    Ok((build_context(&fib, &line, 0)?, build_context(&fib, &conic, 0)?))
}

/// Preimage of `c` under the embedding of `base`, by search.
fn descend(c: &Gf, base: &'static GfField) -> Option<Gf> {
    let up = embedding(base, c.field()).ok()?;
    base.elements().find(|b| up.apply(b) == *c)
}

// exactfield

fn factor_roots_reconstruct(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 1);
    let mut checked = 0;
    let mut ok = true;
    // roots must live in fields of absolute degree at most MAX_EXT_DEGREE
    for (p, m, max_deg) in [(13, 1, 20), (5, 2, 16), (3, 1, 20)] {
        let base = GfField::canonical(p, m)?;
        for _ in 0..10 {
            let deg = r.random_range(1..=max_deg);
            let f = random_poly(base, deg, &mut r);
            let roots = factor_roots(&f)?;
            let mut rebuilt = UniPoly::constant(f.leading());
            for k in roots.iter().map(|x| x.extension_degree).collect::<std::collections::BTreeSet<_>>() {
                let ext = GfField::canonical(p, m * k)?;
                let up = embedding(base, ext)?;
                let fk = f.map(ext.zero(), |c| up.apply(c));
                let mut part = UniPoly::constant(ext.one());
                for root in roots.iter().filter(|x| x.extension_degree == k) {
                    ok &= fk.eval(&root.root).is_zero();
                    part = part * UniPoly::linear_root(root.root).pow(root.multiplicity);
                }
                let coeffs: Option<Vec<Gf>> = part.coeffs().iter().map(|c| descend(c, base)).collect();
                match coeffs {
                    Some(c) => rebuilt = rebuilt * UniPoly::new(c, base.zero()),
                    None => ok = false,
                }
            }
            ok &= rebuilt == f;
            checked += 1;
        }
    }
    Ok((ok, json!({"polynomials": checked})))
}

fn sqrt_squares(seed: u64) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut squares = Vec::new();
    for (p, m) in [(13, 1), (5, 2), (3, 3)] {
        let f = GfField::canonical(p, m)?;
        let mut count = 0u128;
        for a in f.elements() {
            if let Some(r) = sqrt_element(&a) {
                ok &= r * r == a;
                count += 1;
            }
        }
        ok &= count == f.order().div_ceil(2);
        squares.push(count);
    }
    let mut r = rng(seed, 2);
    for _ in 0..50 {
        let a = random_gauss(&mut r);
        let sq = a.clone() * a.clone();
        match sqrt_element(&sq) {
            Some(root) => ok &= root.clone() * root == sq,
            None => ok = false,
        }
        if let Some(root) = sqrt_element(&a) {
            ok &= root.clone() * root == a;
        }
    }
    Ok((ok, json!({"squares_per_field": squares})))
}

fn resultant_vs_gcd(seed: u64) -> Result<(bool, Value)> {
    let f = GfField::canonical(7, 1)?;
    let mut r = rng(seed, 3);
    let (mut zero, mut ok) = (0, true);
    for _ in 0..200 {
        let a = random_poly(f, r.random_range(1..=4), &mut r);
        let b = random_poly(f, r.random_range(1..=4), &mut r);
        let res_zero = resultant(&a, &b)?.is_zero();
        zero += usize::from(res_zero);
        ok &= res_zero == (a.gcd(&b).degree() > Some(0));
    }
    Ok((ok, json!({"pairs": 200, "vanishing": zero})))
}

// clifford

fn random_gram<R: Rng>(field: &'static GfField, rng: &mut R) -> TernaryGram<Gf> {
    TernaryGram::from_upper(std::array::from_fn(|_| field.random(rng)))
}

fn random_even<R: Rng>(field: &'static GfField, rng: &mut R) -> EvenElement<Gf> {
    EvenElement::new(field.random(rng), field.random(rng), field.random(rng), field.random(rng))
}

fn associativity(seed: u64) -> Result<(bool, Value)> {
    let f = f13();
    let mut r = rng(seed, 4);
    let mut ok = true;
    for _ in 0..200 {
        let g = random_gram(f, &mut r);
        let [u, v, w] = [(); 3].map(|_| random_even(f, &mut r));
        let left = even_clifford_multiply(&g, &even_clifford_multiply(&g, &u, &v)?, &w)?;
        let right = even_clifford_multiply(&g, &u, &even_clifford_multiply(&g, &v, &w)?)?;
        ok &= left == right;
    }
    Ok((ok, json!({"triples": 200})))
}

fn relation_list<F: Field>(i: &F) -> Result<Vec<(&'static str, bool)>> {
    let zero = i.zero_like();
    let g = TernaryGram::standard(zero.clone());
    let (x, y, z) = (EvenElement::x(i), EvenElement::y(i), EvenElement::z(i));
    let mul = |a: &EvenElement<F>, b: &EvenElement<F>| even_clifford_multiply(&g, a, b);
    let one = EvenElement::one(zero.clone());
    let nil = EvenElement::zero(zero);
    Ok(vec![
        ("x^2 = 1", mul(&x, &x)? == one),
        ("y^2 = 0", mul(&y, &y)? == nil),
        ("z^2 = 0", mul(&z, &z)? == nil),
        ("xy = -z", mul(&x, &y)? == -z.clone()),
        ("xz = -y", mul(&x, &z)? == -y.clone()),
        ("xy = -yx", mul(&x, &y)? == -mul(&y, &x)?),
        ("xz = -zx", mul(&x, &z)? == -mul(&z, &x)?),
        ("yz = 0", mul(&y, &z)? == nil),
        ("zy = 0", mul(&z, &y)? == nil),
    ])
}

fn relations(_seed: u64) -> Result<(bool, Value)> {
    let i13 = f13().sqrt_minus_one().expect("13 = 1 mod 4");
    let a = relation_list(&i13)?;
    let b = relation_list(&GaussRat::i())?;
    let ok = a.iter().chain(&b).all(|(_, p)| *p);
    let names = |v: &[(&str, bool)]| v.iter().map(|(n, p)| json!({"relation": n, "pass": p})).collect::<Vec<_>>();
    Ok((ok, json!({"F13": names(&a), "Q(i)": names(&b)})))
}

fn quiver_identities<F: Field>(i: &F) -> Result<bool> {
    let g = TernaryGram::standard(i.zero_like());
    let q = quiver_presentation(&g, i)?;
    let mul = |a: &EvenElement<F>, b: &EvenElement<F>| even_clifford_multiply(&g, a, b);
    let nil = EvenElement::zero(i.zero_like());
    let (ep, em, al, be) = (&q.e_plus, &q.e_minus, &q.alpha, &q.beta);
    Ok(mul(ep, ep)? == *ep
        && mul(em, em)? == *em
        && mul(ep, em)? == nil
        && ep.clone() + em.clone() == EvenElement::one(i.zero_like())
        && mul(&mul(em, al)?, ep)? == *al
        && mul(&mul(ep, be)?, em)? == *be
        && mul(al, be)? == nil
        && mul(be, al)? == nil
        && path_algebra_check(&g, &q)?.pass())
}

fn quiver_images(_seed: u64) -> Result<(bool, Value)> {
    let a = quiver_identities(&f13().sqrt_minus_one().expect("13 = 1 mod 4"))?;
    let b = quiver_identities(&GaussRat::i())?;
    Ok((a && b, json!({"F13": a, "Q(i)": b})))
}

fn rep_classification(_seed: u64) -> Result<(bool, Value)> {
    let census = rep_census(GfField::canonical(3, 1)?)?;
    Ok((census.pass(), serde_json::to_value(&census).expect("serializable")))
}

/// Checks one rank-two form; `points` lists the scalars `c` giving the
/// points `u + c v` of the projective line of `K'` besides `v`.
fn kernel_geometry_one<F: ConicField>(gram: &TernaryGram<F>, points: impl Fn(&F) -> Vec<F>) -> Result<bool> {
    let frame = normalize_rank2(gram)?;
    let g = frame.gram();
    let zero = g.zero_elem().clone();
    let mut ok = true;
    for (tag, label) in [(RepTypeTag::T1, PlaneLabel::Plus), (RepTypeTag::T2, PlaneLabel::Minus)] {
        let rep = Rep2::standard(tag, &zero);
        let line = rep_kernel_line(&frame, &rep)?;
        let cols: Vec<Vec<F>> = [&rep.x, &rep.y, &rep.z]
            .iter()
            .map(|m| (0..2).flat_map(|i| m.row(i)).collect())
            .collect();
        ok &= Mat::from_cols(cols, zero.clone()).rank() == 2;
        let [a, b, c] = line.k.clone();
        let image = rep.x.scale(&a).add(&rep.y.scale(&b)).add(&rep.z.scale(&c));
        ok &= image.is_zero() && !line.k.iter().all(Ring::is_zero);
        let [u, v] = line.kprime.basis();
        ok &= Mat::from_rows(vec![u.clone(), v.clone()], zero.clone()).rank() == 2;
        ok &= g.q(&u).is_zero() && g.q(&v).is_zero() && g.matrix().bilinear(&u, &v).is_zero();
        ok &= g.q(&v).is_zero();
        for c in points(&zero) {
            let w: Vec<F> = u.iter().zip(&v).map(|(x, y)| x.clone() + c.clone() * y.clone()).collect();
            ok &= g.q(&w).is_zero();
        }
        ok &= line.kprime == frame.plane(label);
    }
    Ok(ok)
}

fn kernel_geometry(seed: u64) -> Result<(bool, Value)> {
    let f = f13();
    let mut r = rng(seed, 5);
    let mut ok = true;
    let mut over_extension = 0;
    let mut count = 0;
    while count < 100 {
        let p = Mat::from_rows((0..3).map(|_| (0..3).map(|_| f.random(&mut r)).collect()).collect(), f.zero());
        if p.det().is_zero() {
            continue;
        }
        let d = Mat::from_rows(
            vec![
                vec![f.random_nonzero(&mut r), f.zero(), f.zero()],
                vec![f.zero(), f.random_nonzero(&mut r), f.zero()],
                vec![f.zero(), f.zero(), f.zero()],
            ],
            f.zero(),
        );
        let gram = TernaryGram::new(p.transpose().mul(&d).mul(&p))?;
        over_extension += usize::from(normalize_rank2(&gram)?.gram().zero_elem().field().degree() > 1);
        ok &= kernel_geometry_one(&gram, |z: &Gf| z.field().elements().collect())?;
        count += 1;
    }
    let mut gauss = 0;
    while gauss < 10 {
        let p = Mat::from_rows((0..3).map(|_| (0..3).map(|_| random_gauss(&mut r)).collect()).collect(), GaussRat::zero());
        if p.det().is_zero() {
            continue;
        }
        let d = Mat::from_rows(
            vec![
                vec![GaussRat::one(), GaussRat::zero(), GaussRat::zero()],
                vec![GaussRat::zero(), GaussRat::one(), GaussRat::zero()],
                vec![GaussRat::zero(), GaussRat::zero(), GaussRat::zero()],
            ],
            GaussRat::zero(),
        );
        let gram = TernaryGram::new(p.transpose().mul(&d).mul(&p))?;
        ok &= kernel_geometry_one(&gram, |_| (-3..=3).map(|k| GaussRat::from_ints(k, 1 - k)).collect())?;
        gauss += 1;
    }
    Ok((ok, json!({"finite_field_forms": count, "split_over_extension": over_extension, "gaussian_forms": gauss})))
}

// fibration

fn discriminant_degree(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 6);
    let mut ok = true;
    let mut shapes = Vec::new();
    for _ in 0..50 {
        let twists = [0, r.random_range(0..=1), r.random_range(0..=1)];
        let l = r.random_range(0..=2);
        let fib = ConicFibration::random(f13(), twists, l, &mut r)?;
        let disc = fib.discriminant();
        let expected = 2 * twists.iter().sum::<i64>() + 3 * l;
        let actual = disc.form().homogeneous_degree().map(i64::from);
        ok &= fib.discriminant_degree() == expected && actual == Some(expected);
        shapes.push(json!([twists, l, actual]));
    }
    Ok((ok, json!({"fibrations": shapes.len()})))
}

/// Cross product of two vectors.
fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    let m = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn cover_planes(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut ok = true;
    let mut points = 0;
    for ctx in [&c1, &c2] {
        for datum in &ctx.points {
            let pair = split_degenerate_conic(datum)?;
            let g = pair.frame.gram();
            for plane in [&pair.plus, &pair.minus] {
                let [u, v] = plane.basis();
                ok &= g.q(&u).is_zero() && g.q(&v).is_zero() && g.matrix().bilinear(&u, &v).is_zero();
            }
            ok &= pair.plus != pair.minus;
            let kernel = g.matrix().kernel();
            ok &= kernel.len() == 1;
            let meet = cross(pair.plus.normal(), pair.minus.normal());
            let rad: [Gf; 3] = [kernel[0][0], kernel[0][1], kernel[0][2]];
            ok &= cross(&meet, &rad).iter().all(Ring::is_zero) && !meet.iter().all(Ring::is_zero);
            points += 1;
        }
    }
    Ok((ok, json!({"points": points})))
}

fn bezout(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 7);
    let mut ok = true;
    let mut cases = 0;
    while cases < 20 {
        let twists = [0, r.random_range(0..=1), 1];
        let fib = ConicFibration::random(f13(), twists, 1, &mut r)?;
        let d = r.random_range(1..=2);
        let curve = ParamCurve::random(f13(), d, &mut r)?;
        let Ok(inter) = fib.intersect(&curve) else {
            continue;
        };
        ok &= inter.total_multiplicity() == d * fib.discriminant_degree() as usize;
        cases += 1;
    }
    Ok((ok, json!({"cases": cases})))
}

fn conjugation_closure(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut ok = true;
    let mut extension_points = 0;
    for ctx in [&c1, &c2] {
        let inter = ctx.fibration.intersect(&ctx.curve)?;
        extension_points += inter.points.iter().filter(|p| p.extension_degree > 1).count();
        ok &= frobenius_coherent(&ctx.fibration, &inter)?;
    }
    let mut r = rng(seed, 8);
    let f25 = GfField::canonical(5, 2)?;
    let fib = ConicFibration::random(f25, [0, 0, 1], 1, &mut r)?;
    let curve = ParamCurve::random(f25, 2, &mut r)?;
    if let Ok(inter) = fib.intersect(&curve) {
        ok &= frobenius_coherent(&fib, &inter)?;
    }
    Ok((ok, json!({"points_over_extensions": extension_points})))
}

// prymcomb

fn group_axioms(_seed: u64) -> Result<(bool, Value)> {
    let mut ok = true;
    for n in [5usize, 10] {
        let all: Vec<EvenSubset> = EvenSubset::all(n).collect();
        ok &= all.len() == 1 << (n - 1);
        let id = EvenSubset::identity(n);
        for g in &all {
            ok &= g.compose(&id) == *g && g.compose(g) == id;
        }
        for g in all.iter().step_by(7) {
            for h in &all {
                ok &= g.compose(h).weight() % 2 == 0;
            }
        }
    }
    Ok((ok, json!({"n": [5, 10]})))
}

fn torsor_equivariance(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut ok = true;
    let mut reports = Vec::new();
    for ctx in [&c1, &c2] {
        for e in [0, 1] {
            let t = torsor_check(ctx, e)?;
            ok &= t.pass();
            reports.push(serde_json::to_value(&t).expect("serializable"));
        }
    }
    Ok((ok, json!(reports)))
}

fn random_module<R: Rng>(ctx: &Arc<CurveContext>, rng: &mut R) -> Result<ModuleFiberData> {
    let mask = rng.random::<u64>() & ((1u64 << ctx.n()) - 1);
    ModuleFiberData::from_mask(ctx, mask, rng.random_range(-3..=3))
}

fn parity(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut r = rng(seed, 9);
    let mut ok = true;
    let mut fibres = Vec::new();
    for ctx in [&c1, &c2] {
        let rep = parity_rule_check(ctx, -2..=3)?;
        ok &= rep.pass;
        fibres.push(rep.to_json());
        for _ in 0..500 {
            let (a, b) = (random_module(ctx, &mut r)?, random_module(ctx, &mut r)?);
            let h = half_index(&phi_lift(&a), &phi_lift(&b))?;
            ok &= i64::from(h) == (a.e() - b.e()).rem_euclid(2);
            let i = r.random_range(0..ctx.n());
            let t = half_twist(&a, i)?;
            ok &= t.e() == a.e() + 1 && half_index(&phi_lift(&t), &phi_lift(&a))? == 1;
        }
    }
    Ok((ok, json!(fibres)))
}

fn chern_character(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut r = rng(seed, 10);
    let mut ok = true;
    for ctx in [&c1, &c2] {
        for _ in 0..200 {
            let m = random_module(ctx, &mut r)?;
            let mut mu = r.random::<u64>() & ((1u64 << ctx.n()) - 1);
            if mu.count_ones() % 2 == 1 {
                mu ^= 1;
            }
            let g = EvenSubset::new(ctx.n(), mu)?;
            ok &= chern_char(&group_act(&g, &m)?) == chern_char(&m);
            let t = half_twist(&m, r.random_range(0..ctx.n()))?;
            let (a, b) = (chern_char(&m), chern_char(&t));
            ok &= b.ch2 == a.ch2 + 1 && b.ch1 == a.ch1 && b.ch0 == 0;
        }
    }
    Ok((ok, json!({"samples": 400})))
}

/// The displayed matrices of the local model, columns being images of the
/// basis, entries as coefficient lists in `s`.
pub fn displayed_local_model() -> [[[[&'static [i64]; 2]; 2]; 4]; 2] {
    const Z: &[i64] = &[];
    const ONE: &[i64] = &[1];
    const M1: &[i64] = &[-1];
    const S: &[i64] = &[0, 1];
    const MS: &[i64] = &[0, -1];
    [
        [[[ONE, Z], [Z, ONE]], [[M1, Z], [Z, ONE]], [[Z, S], [ONE, Z]], [[Z, S], [M1, Z]]],
        [[[ONE, Z], [Z, ONE]], [[M1, Z], [Z, ONE]], [[Z, ONE], [S, Z]], [[Z, ONE], [MS, Z]]],
    ]
}

fn local_model_matrices(_seed: u64) -> Result<(bool, Value)> {
    let f = f13();
    let model = local_model(&f.zero())?;
    let expected = displayed_local_model();
    let as_poly = |c: &[i64]| UniPoly::new(c.iter().map(|&a| f.from_i64(a)).collect(), f.zero());
    let mut ok = true;
    for (which, mats) in [&model.alpha1, &model.alpha0].into_iter().enumerate() {
        for (g, m) in mats.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    ok &= *m.get(i, j) == as_poly(expected[which][g][i][j]);
                }
            }
        }
    }
    let b_plus_c = [0, 0, 1, 1].map(|v| f.from_i64(v));
    let b_minus_c = [0, 0, 1, -1].map(|v| f.from_i64(v));
    ok &= model.kernel_alpha1 == b_plus_c && model.kernel_alpha0 == b_minus_c;
    ok &= model.kernels_differ() && model.character_product() == -1 && model.diagram_commutes();
    Ok((ok, model.to_json()))
}

fn consistency(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut r = rng(seed, 11);
    let mut ok = true;
    let mut tags = std::collections::BTreeMap::new();
    for k in 0..20 {
        let ctx = if k % 2 == 0 { &c1 } else { &c2 };
        let rep = rep_lift_consistency(&random_module(ctx, &mut r)?)?;
        ok &= rep.pass;
        for p in &rep.points {
            *tags.entry(p.tag.as_str()).or_insert(0) += 1;
        }
    }
    Ok((ok, json!({"modules": 20, "tags": tags})))
}

fn degree_accounting(seed: u64) -> Result<(bool, Value)> {
    let (c1, c2) = demo_contexts(seed)?;
    let mut r = rng(seed, 12);
    let mut ok = true;
    for k in 0..100 {
        let m = random_module(if k % 2 == 0 { &c1 } else { &c2 }, &mut r)?;
        let by_degree = DegreeAccount::of(&m).ch2();
        ok &= by_degree.is_integer() && by_degree.to_integer() == e_by_half_twist_path(&m)?;
    }
    Ok((ok, json!({"states": 100})))
}

// spectral

fn random_squarefree<R: Rng>(field: &'static GfField, rng: &mut R) -> SpectralCover<Gf> {
    loop {
        let deg = rng.random_range(1..=6);
        if let Ok(c) = SpectralCover::new(random_poly(field, deg, rng).monic()) {
            return c;
        }
    }
}

/// The three shapes for a cover: trivial, the ideal of the first
/// distinct-degree part of `s`, and a random pullback twist.
fn shapes<R: Rng>(cover: &SpectralCover<Gf>, rng: &mut R) -> Result<[LineBundleOnCover<Gf>; 3]> {
    let f = cover.branch().zero_elem().field();
    let s1 = distinct_degree_factorization(cover.branch())
        .first()
        .map(|(p, _)| p.clone())
        .unwrap_or_else(|| cover.branch().clone());
    let g = random_poly(f, rng.random_range(0..=3), rng);
    Ok([
        LineBundleOnCover::trivial(&f.zero()),
        LineBundleOnCover::ramification(cover, &s1)?,
        LineBundleOnCover::pullback(&g)?,
    ])
}

fn spectral_identities(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 13);
    let mut ok = true;
    for _ in 0..20 {
        let cover = random_squarefree(f13(), &mut r);
        for lb in shapes(&cover, &mut r)? {
            ok &= char_identity(&pushforward(&cover, &lb)?, &cover) && !lb.presentation_det().is_zero();
        }
    }
    Ok((ok, json!({"covers": 20, "shapes": 3})))
}

fn spectral_kernels(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 14);
    let mut ok = true;
    let mut roots = 0;
    for _ in 0..20 {
        let cover = random_squarefree(f13(), &mut r);
        for lb in shapes(&cover, &mut r)? {
            let dims = ramification_kernel_dims(&pushforward(&cover, &lb)?, &cover)?;
            ok &= dims.len() == cover.branch().degree().unwrap_or(0) && dims.iter().all(|&d| d == 1);
            roots += dims.len();
        }
    }
    Ok((ok, json!({"roots_checked": roots})))
}

fn spectral_pullback(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 15);
    let mut ok = true;
    let cover = random_squarefree(f13(), &mut r);
    let lbs = shapes(&cover, &mut r)?;
    for _ in 0..10 {
        let g = LineBundleOnCover::pullback(&random_poly(f13(), r.random_range(0..=4), &mut r))?;
        for lb in &lbs {
            let twisted = lb.tensor(&g, &cover)?;
            ok &= pushforward(&cover, &twisted)?.phi == pushforward(&cover, lb)?.phi;
        }
    }
    Ok((ok, json!({"twists": 10})))
}

fn spectral_square(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 16);
    let mut ok = true;
    for _ in 0..20 {
        let cover = random_squarefree(f13(), &mut r);
        let [_, ram, _] = shapes(&cover, &mut r)?;
        let s1 = ram.ramification_divisor().clone();
        let sq = ram.tensor(&ram, &cover)?;
        let pb = LineBundleOnCover::pullback(&s1)?;
        ok &= sq.twist() == pb.twist()
            && sq.ramification_divisor() == pb.ramification_divisor()
            && pushforward(&cover, &sq)?.phi == pushforward(&cover, &pb)?.phi;
    }
    Ok((ok, json!({"covers": 20})))
}

// cli

fn round_trip(seed: u64) -> Result<(bool, Value)> {
    let mut r = rng(seed, 17);
    let mut ok = true;
    for k in 0..50 {
        let field = if k % 2 == 0 { f13() } else { GfField::canonical(5, 2)? };
        let twists = [0, r.random_range(0..=1), r.random_range(0..=1)];
        let fib = ConicFibration::random(field, twists, r.random_range(0..=2), &mut r)?;
        let text = serialize_fibration(&fib);
        let back = parse_fibration(&text)?;
        ok &= back == fib && serialize_fibration(&back) == text;
    }
    Ok((ok, json!({"fibrations": 50})))
}

fn determinism(seed: u64) -> Result<(bool, Value)> {
    let run = || -> Result<String> {
        let (c1, c2) = demo_contexts(seed)?;
        Ok(format!(
            "{}{}{}",
            serialize_fibration(&c1.fibration),
            c1.to_json(),
            c2.to_json()
        ))
    };
    Ok((run()? == run()?, json!({})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_unique() {
        let names: std::collections::BTreeSet<_> = suites().iter().map(|s| (s.module, s.name)).collect();
        assert_eq!(names.len(), suites().len());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in suites() {
            if ["relations", "quiver-presentation", "local-model", "group-axioms"].contains(&s.name) {
                let r = s.run(0);
                assert!(r.pass, "{} {}", r.name, r.detail);
            }
        }
    }
}
