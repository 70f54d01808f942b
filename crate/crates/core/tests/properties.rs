use proptest::prelude::*;

use psigroups::{
    group_from_expr, omega_filtration, omega_subgroup, parse_group_table, psi_brute,
    serialize_group, AssocCheck, BigPsi, FiniteGroup, Psi, Subgroup,
};

const LEAVES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C8", "C9", "D4", "D6", "D8", "D10", "Q8", "M16", "H27",
];

/// Products of up to three leaves, kept under 300 elements.
fn group_expr() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(LEAVES), 1..=3)
        .prop_map(|parts| parts.join("*"))
        .prop_filter("order <= 300", |e| {
            group_from_expr(e)
                .map(|g| g.order() <= 300)
                .unwrap_or(false)
        })
}

fn prime_power_expr() -> impl Strategy<Value = String> {
    let twos = prop::collection::vec(
        prop::sample::select(&["C2", "C4", "C8", "D8", "Q8", "M16"][..]),
        1..=3,
    );
    let threes = prop::collection::vec(prop::sample::select(&["C3", "C9", "H27"][..]), 1..=2);
    prop_oneof![twos, threes]
        .prop_map(|parts| parts.join("*"))
        .prop_filter("order <= 512", |e| {
            group_from_expr(e)
                .map(|g| g.order() <= 512)
                .unwrap_or(false)
        })
}

fn build(expr: &str) -> FiniteGroup {
    group_from_expr(expr).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_idempotent_and_lagrange(expr in group_expr(), seed in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = build(&expr);
        let seed: Vec<usize> = seed.iter().map(|i| i.index(g.order())).collect();
        let h = Subgroup::closure(&g, seed.iter().copied()).unwrap();
        prop_assert_eq!(g.order() % h.len(), 0);
        prop_assert!(seed.iter().all(|&s| h.contains(s)));
        let again = Subgroup::closure(&g, h.members().iter().copied()).unwrap();
        prop_assert_eq!(again.members(), h.members());
        // closed under the operation
        for &x in h.members() {
            for &y in h.members() {
                prop_assert!(h.contains(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn gt1_round_trip(expr in group_expr()) {
        let g = build(&expr);
        let text = serialize_group(&g);
        let back = parse_group_table(g.name(), &text, AssocCheck::Auto).unwrap();
        prop_assert_eq!(serialize_group(&back), text);
        prop_assert_eq!(back.element_orders(), g.element_orders());
    }

    #[test]
    fn quotient_order(expr in group_expr(), seed in any::<prop::sample::Index>()) {
        let g = build(&expr);
        let h = Subgroup::closure(&g, [seed.index(g.order())]).unwrap();
        match h.quotient("q") {
            Ok(q) => {
                prop_assert!(h.is_normal());
                prop_assert_eq!(q.order() * h.len(), g.order());
                // the quotient table is a valid group table
                prop_assert!(FiniteGroup::from_table("q", q.order(), q.table().to_vec(), AssocCheck::Exhaustive).is_ok());
            }
            Err(_) => prop_assert!(!h.is_normal()),
        }
    }

    #[test]
    fn spectrum_accounts_for_every_element(expr in group_expr()) {
        let g = build(&expr);
        let spectrum = g.order_spectrum();
        prop_assert_eq!(spectrum.values().sum::<usize>(), g.order());
        for &o in spectrum.keys() {
            prop_assert_eq!(g.order() as u64 % o, 0);
        }
        let psi: Psi = psi_brute(&g).unwrap();
        let from_spectrum: u64 = spectrum.iter().map(|(&o, &c)| o * c as u64).sum();
        prop_assert_eq!(psi, from_spectrum);
    }

    #[test]
    fn omega_levels_are_nested_and_normal(expr in prime_power_expr()) {
        let g = build(&expr);
        let f = omega_filtration(&g).unwrap();
        let sizes = f.subgroup_sizes();
        prop_assert_eq!(sizes[0], 1);
        prop_assert_eq!(*sizes.last().unwrap(), g.order());
        for w in sizes.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        for level in 0..=f.m {
            prop_assert!(omega_subgroup(&g, level).unwrap().is_normal());
        }
        let small: Psi = psi_brute(&g).unwrap();
        let big: BigPsi = psi_brute(&g).unwrap();
        prop_assert_eq!(BigPsi::from(small), big);
        prop_assert_eq!(small % f.prime, 1);
    }
}
