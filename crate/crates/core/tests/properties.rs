use num_bigint::BigUint;
use proptest::prelude::*;

use semipell::bijection::{from_oc, to_oc};
use semipell::composition::{
    is_semi_m_pell, max_m_power, tau1, tau2, tau3, validate_runform,
};
use semipell::enumerate::enumerate_sp;
use semipell::recurrence::{sp, CountCache};
use semipell::series::Series;
use semipell::{Composition, Modulus, RunForm};

fn modulus() -> impl Strategy<Value = Modulus> {
    (2u64..=6).prop_map(|m| Modulus::new(m).unwrap())
}

/// A random member of SP(n, m) for small n.
fn sp_member() -> impl Strategy<Value = (Composition, Modulus)> {
    (modulus(), 0u64..=36).prop_flat_map(|(m, n)| {
        let members = enumerate_sp(n, m);
        (0..members.len()).prop_map(move |i| (members[i].clone(), m))
    })
}

proptest! {
    #[test]
    fn max_power_divides_exactly(n in 1u64..1_000_000, m in modulus()) {
        let p = max_m_power(n, m).unwrap();
        prop_assert_eq!(n % p, 0);
        prop_assert_ne!((n / p) % m.get(), 0);
    }

    #[test]
    fn residue_part_sits_at_an_end((c, m) in sp_member()) {
        let n = c.weight();
        let mv = m.get();
        if n % mv == 0 {
            prop_assert!(c.parts().iter().all(|p| p % mv == 0));
        } else {
            let hits: Vec<usize> = c.parts().iter().enumerate()
                .filter(|(_, p)| *p % mv == n % mv)
                .map(|(i, _)| i)
                .collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert!(hits[0] == 0 || hits[0] == c.len() - 1);
        }
    }

    #[test]
    fn taus_keep_membership((c, m) in sp_member()) {
        if let Ok(t) = tau1(&c, m) {
            prop_assert!(is_semi_m_pell(&t, m), "tau1 {} -> {}", c, t);
        }
        for i in 0..c.len() {
            if let Ok(t) = tau2(&c, i, m) {
                prop_assert!(is_semi_m_pell(&t, m), "tau2 {} -> {}", c, t);
            }
        }
        if let Ok(t) = tau3(&c, m) {
            prop_assert!(is_semi_m_pell(&t, m), "tau3 {} -> {}", c, t);
        }
    }

    #[test]
    fn bijection_inverts((c, m) in sp_member()) {
        let r = to_oc(&c, m).unwrap();
        prop_assert!(validate_runform(&r, m));
        prop_assert_eq!(r.weight(), c.weight());
        prop_assert_eq!(from_oc(&r, m).unwrap(), c);
    }

    #[test]
    fn text_forms_round_trip(parts in prop::collection::vec(1u64..500, 0..8),
                             runs in prop::collection::vec((1u64..500, 1u64..50), 0..8)) {
        let c = Composition::new(parts).unwrap();
        prop_assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
        let r = RunForm::from_pairs(&runs);
        prop_assert_eq!(r.to_string().parse::<RunForm>().unwrap(), r);
    }

    #[test]
    fn cache_is_transparent(m in modulus(), queries in prop::collection::vec(0u64..3000, 1..20)) {
        let mut warm = CountCache::new(m);
        for &n in &queries {
            let hot = warm.sp(n);
            prop_assert_eq!(hot, sp(n, m));
        }
    }

    #[test]
    fn counts_are_odd(n in 0u64..200_000, m in (2u64..=10).prop_map(|m| Modulus::new(m).unwrap())) {
        prop_assert!(sp(n, m).bit(0));
    }

    #[test]
    fn series_product_commutes(a in prop::collection::vec(-20i64..20, 1..12),
                               b in prop::collection::vec(-20i64..20, 1..12)) {
        let x = Series::from_coeffs(10, a);
        let y = Series::from_coeffs(10, b);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }
}

#[test]
fn odd_bisection_increases() {
    let mut cache = CountCache::new(Modulus::new(2).unwrap());
    for n in 0..2000u64 {
        let lhs = cache.sp(2 * n + 3);
        let rhs: BigUint = (cache.sp(2 * n + 2) << 1usize) + cache.sp(2 * n + 1);
        assert_eq!(lhs, rhs);
        assert!(lhs > cache.sp(2 * n + 1));
    }
}
