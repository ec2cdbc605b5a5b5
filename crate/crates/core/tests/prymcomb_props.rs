use std::sync::{Arc, LazyLock};

use clifford_prym::prymcomb::{
    chern_char, e_by_half_twist_path, group_act, half_index, half_twist, phi_lift, CurveContext, DegreeAccount,
    EvenSubset, ModuleFiberData,
};
use clifford_prym::verify::demo_contexts;
use num_rational::Ratio;
use proptest::prelude::*;

static CONTEXTS: LazyLock<(Arc<CurveContext>, Arc<CurveContext>)> =
    LazyLock::new(|| demo_contexts(0).expect("demo contexts"));

fn ctx(conic: bool) -> &'static Arc<CurveContext> {
    if conic {
        &CONTEXTS.1
    } else {
        &CONTEXTS.0
    }
}

fn module(conic: bool, mask: u64, twist: i64) -> ModuleFiberData {
    let c = ctx(conic);
    ModuleFiberData::from_mask(c, mask & ((1 << c.n()) - 1), twist).unwrap()
}

fn even(conic: bool, mask: u64) -> EvenSubset {
    let n = ctx(conic).n();
    let mut mu = mask & ((1 << n) - 1);
    if mu.count_ones() % 2 == 1 {
        mu ^= 1;
    }
    EvenSubset::new(n, mu).unwrap()
}

proptest! {
    #[test]
    fn group_laws(conic in any::<bool>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (g, h, k) = (even(conic, a), even(conic, b), even(conic, c));
        let n = ctx(conic).n();
        prop_assert_eq!(g.compose(&h).weight() % 2, 0);
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert_eq!(g.compose(&g), EvenSubset::identity(n));
        prop_assert_eq!(g.compose(&EvenSubset::identity(n)), g);
    }

    #[test]
    fn action_is_a_group_action(conic in any::<bool>(), a in any::<u64>(), b in any::<u64>(), l in any::<u64>(), t in -4i64..4) {
        let m = module(conic, l, t);
        let (g, h) = (even(conic, a), even(conic, b));
        let lhs = group_act(&g, &group_act(&h, &m).unwrap()).unwrap();
        prop_assert_eq!(lhs, group_act(&g.compose(&h), &m).unwrap());
        prop_assert_eq!(chern_char(&group_act(&g, &m).unwrap()), chern_char(&m));
    }

    #[test]
    fn unique_element_between_fibre_members(conic in any::<bool>(), l1 in any::<u64>(), l2 in any::<u64>(), e in -3i64..4) {
        let c = ctx(conic);
        let mask = (1u64 << c.n()) - 1;
        let fit = |l: u64| {
            let l = l & mask;
            let l = if (l.count_ones() as i64 - e).rem_euclid(2) == 1 { l ^ 1 } else { l };
            ModuleFiberData::from_mask(c, l, (e - l.count_ones() as i64) / 2).unwrap()
        };
        let (m1, m2) = (fit(l1), fit(l2));
        prop_assert_eq!(m1.e(), m2.e());
        let g = EvenSubset::new(c.n(), m1.lambda_mask() ^ m2.lambda_mask()).unwrap();
        prop_assert_eq!(group_act(&g, &m1).unwrap(), m2.clone());
        // any other element moves m1 elsewhere
        let other = g.compose(&even(conic, l1.rotate_left(7) | 0b11));
        if other != g {
            prop_assert!(group_act(&other, &m1).unwrap() != m2);
        }
    }

    #[test]
    fn lift_is_equivariant(conic in any::<bool>(), a in any::<u64>(), l in any::<u64>(), t in -4i64..4) {
        let m = module(conic, l, t);
        let g = even(conic, a);
        prop_assert_eq!(phi_lift(&group_act(&g, &m).unwrap()), phi_lift(&m).conjugate_at(&g));
    }

    #[test]
    fn half_index_is_e_parity(conic in any::<bool>(), l1 in any::<u64>(), l2 in any::<u64>(), t1 in -4i64..4, t2 in -4i64..4) {
        let (a, b) = (module(conic, l1, t1), module(conic, l2, t2));
        let h = half_index(&phi_lift(&a), &phi_lift(&b)).unwrap();
        prop_assert_eq!(i64::from(h), (a.e() - b.e()).rem_euclid(2));
    }

    #[test]
    fn half_twist_raises_e_and_flips_half(conic in any::<bool>(), l in any::<u64>(), t in -4i64..4, i in 0usize..10) {
        let m = module(conic, l, t);
        let i = i % ctx(conic).n();
        let next = half_twist(&m, i).unwrap();
        prop_assert_eq!(chern_char(&next).ch2, chern_char(&m).ch2 + 1);
        prop_assert_eq!(half_index(&phi_lift(&next), &phi_lift(&m)).unwrap(), 1);
    }

    #[test]
    fn degree_accounting_matches_half_twist_path(conic in any::<bool>(), l in any::<u64>(), t in -6i64..6) {
        let m = module(conic, l, t);
        let via_path = e_by_half_twist_path(&m).unwrap();
        prop_assert_eq!(DegreeAccount::of(&m).ch2(), Ratio::from_integer(via_path));
    }
}
