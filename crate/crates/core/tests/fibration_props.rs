use clifford_prym::exactfield::{GfField, Ring};
use clifford_prym::fibration::format::{parse_fibration, serialize_fibration};
use clifford_prym::fibration::{
    check_smooth, projective_points, split_degenerate_conic, ConicFibration, ParamCurve, Poly3,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f13() -> &'static GfField {
    GfField::canonical(13, 1).unwrap()
}

fn fibration(seed: u64, twists: [i64; 3], l: i64) -> ConicFibration {
    ConicFibration::random(f13(), twists, l, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn discriminant_degree_formula(seed in any::<u64>(), a1 in 0i64..=1, a2 in 0i64..=1, l in 0i64..=2) {
        let fib = fibration(seed, [0, a1, a2], l);
        let expected = 2 * (a1 + a2) + 3 * l;
        prop_assert_eq!(fib.discriminant_degree(), expected);
        let form = fib.discriminant().form();
        prop_assert_eq!(form.homogeneous_degree().map(i64::from), Some(expected));
    }

    #[test]
    fn serialization_round_trip(seed in any::<u64>(), a1 in 0i64..=1, l in 0i64..=2, ext in prop::bool::ANY) {
        let field = if ext { GfField::canonical(5, 2).unwrap() } else { f13() };
        let fib = ConicFibration::random(field, [0, a1, 1], l, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let text = serialize_fibration(&fib);
        let back = parse_fibration(&text).unwrap();
        prop_assert_eq!(serialize_fibration(&back), text);
        prop_assert!(back == fib);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bezout_and_split_planes(seed in any::<u64>(), d in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fib = ConicFibration::random(f13(), [0, 0, 1], 1, &mut rng).unwrap();
        let curve = ParamCurve::random(f13(), d, &mut rng).unwrap();
        let Ok(inter) = fib.intersect(&curve) else { return Ok(()); };
        prop_assert_eq!(inter.total_multiplicity(), d * 5);
        for p in inter.points.iter().filter(|p| p.local_rank() == 2) {
            let pair = split_degenerate_conic(p).unwrap();
            let g = pair.frame.gram();
            prop_assert!(pair.plus != pair.minus);
            for plane in [&pair.plus, &pair.minus] {
                let [u, v] = plane.basis();
                prop_assert!(g.q(&u).is_zero() && g.q(&v).is_zero());
                prop_assert!(g.matrix().bilinear(&u, &v).is_zero());
                prop_assert!(plane.contains(&pair.frame.radical()));
            }
        }
    }

    #[test]
    fn smoothness_agrees_with_point_scan(c in prop::collection::vec(0u64..7, 10)) {
        // plane cubics over F_7, checked against singular points over F_7 and F_49
        let f = GfField::canonical(7, 1).unwrap();
        let monos = clifford_prym::fibration::monomials(3);
        let form = Poly3::from_terms(monos.into_iter().zip(c.iter().map(|&v| f.from_u64(v))), f.zero());
        prop_assume!(!form.is_zero());
        let report = check_smooth(&form);
        prop_assert!(!report.probabilistic);
        let sys = [form.clone(), form.partial(0), form.partial(1), form.partial(2)];
        let f49 = GfField::canonical(7, 2).unwrap();
        let up = clifford_prym::exactfield::embedding(f, f49).unwrap();
        let lifted: Vec<_> = sys.iter().map(|p| p.map(f49.zero(), |a| up.apply(a))).collect();
        let singular_small = projective_points(f49).any(|pt| lifted.iter().all(|p| p.eval(&pt).is_zero()));
        if singular_small {
            prop_assert!(!report.smooth);
        }
        if let Some(w) = report.witness {
            prop_assert!(sys.iter().all(|p| p.eval_ext(&w).is_zero()));
        }
    }
}
