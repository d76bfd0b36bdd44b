use proptest::prelude::*;

use qdiff_core::fdist::{delta, DeltaVariant, Poly, Window};
use qdiff_core::fuzz::{sample_elem, sample_state, trial_rng};
use qdiff_core::liealg::CATALOGUE;
use qdiff_core::parse::{parse_element, parse_scalar};
use qdiff_core::pbwmod::{self, verma, Levels};
use qdiff_core::{rat, QLaurent, Rational};

fn scalar() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-4i64..=4, -6i64..=6, 1i64..=4), 0..4)
        .prop_map(|ts| QLaurent::from_map(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
}

fn point() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3)
        .prop_map(|(n, d)| rat(n, d))
        .prop_filter("generic", |r| *r != rat(0, 1) && *r != rat(1, 1) && *r != rat(-1, 1))
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QLaurent::zero());
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), r in point()) {
        let (ea, eb) = (a.eval_at(&r).unwrap(), b.eval_at(&r).unwrap());
        prop_assert_eq!((&a * &b).eval_at(&r).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_at(&r).unwrap(), ea + eb);
    }

    #[test]
    fn scalar_text_and_json_round_trip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a.clone());
        let js = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QLaurent>(&js).unwrap(), a);
    }

    #[test]
    fn monomials_invert(c in (1i64..=5, 1i64..=5), e in -6i64..=6) {
        let m = QLaurent::monomial(rat(c.0, c.1), e);
        prop_assert!((&m * &m.inverse().unwrap()).is_one());
        prop_assert_eq!(m.pow(-2).unwrap(), m.inverse().unwrap().pow(2).unwrap());
    }

    #[test]
    fn element_round_trip(alg in 0usize..7, seed in any::<u64>()) {
        let spec = CATALOGUE[alg];
        let rng = &mut trial_rng(seed, 0);
        let x = sample_elem(&spec, rng, 4);
        prop_assert_eq!(parse_element(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn state_round_trip(seed in any::<u64>()) {
        let spec = verma(Levels::ints(0, 1));
        let w = sample_state(&spec, &mut trial_rng(seed, 0), 3, 4, 6).unwrap();
        prop_assert_eq!(spec.parse_state(&w.to_string()).unwrap(), w);
    }

    /// Every coefficient of a delta window agrees with a direct expansion of
    /// `Σ_n c^n x1^{-n} x2^n` and the variant's prefactor.
    #[test]
    fn delta_windows_are_exact(s in -3i64..=3, a0 in -6i64..=2, b0 in -6i64..=2, v in 0usize..4) {
        let variant = [DeltaVariant::Plain, DeltaVariant::X1invPrefixed, DeltaVariant::X2Ddx2, DeltaVariant::Ddx2X1inv][v];
        let w = Window::new((a0, a0 + 4), (b0, b0 + 4));
        let d = delta(&QLaurent::q_pow(s), variant, w).unwrap();
        for (a, b) in w.points() {
            let mut want = QLaurent::zero();
            for n in -20i64..=20 {
                let c = QLaurent::q_pow(s * n);
                // (exponent of x1, exponent of x2, factor)
                let (ea, eb, f) = match variant {
                    DeltaVariant::Plain => (-n, n, 1),
                    DeltaVariant::X1invPrefixed => (-n - 1, n, 1),
                    DeltaVariant::X2Ddx2 => (-n, n, n),
                    DeltaVariant::Ddx2X1inv => (-n - 1, n - 1, n),
                };
                if (ea, eb) == (a, b) {
                    want += &c.scale(&rat(f, 1));
                }
            }
            prop_assert_eq!(d.get(a, b).unwrap(), want);
        }
    }

    /// `(x1 - c x2) δ(c x2/x1) = 0` and `(x1 - c x2)^2 ∂δ = 0` on the interior.
    #[test]
    fn delta_annihilators(s in -3i64..=3, a0 in -5i64..=0) {
        let w = Window::new((a0, a0 + 6), (a0, a0 + 6));
        let lin = Poly::linear(QLaurent::q_pow(s));
        let plain = delta(&QLaurent::q_pow(s), DeltaVariant::Plain, w).unwrap();
        prop_assert!(plain.mul_poly(&lin).unwrap().is_zero());
        let der = delta(&QLaurent::q_pow(s), DeltaVariant::X2Ddx2, w).unwrap();
        prop_assert!(der.mul_poly(&lin.mul(&lin)).unwrap().is_zero());
    }

    #[test]
    fn poly_products_compose(s in -2i64..=2, t in -2i64..=2, v in 0usize..4) {
        let variant = [DeltaVariant::Plain, DeltaVariant::X1invPrefixed, DeltaVariant::X2Ddx2, DeltaVariant::Ddx2X1inv][v];
        let w = Window::new((-6, 3), (-6, 3));
        let d = delta(&QLaurent::q_pow(1), variant, w).unwrap();
        let (p, r) = (Poly::linear(QLaurent::q_pow(s)), Poly::linear(QLaurent::q_pow(t)));
        let lhs = d.mul_poly(&p).unwrap().mul_poly(&r).unwrap();
        let rhs = d.mul_poly(&p.mul(&r)).unwrap();
        prop_assert_eq!(lhs.window(), rhs.window());
        for (a, b) in lhs.window().points() {
            prop_assert_eq!(lhs.get(a, b), rhs.get(a, b));
        }
    }
}

#[test]
fn window_queries_outside_are_none() {
    let w = Window::new((0, 2), (0, 2));
    let d = delta(&QLaurent::one(), DeltaVariant::Plain, w).unwrap();
    assert!(d.get(3, 0).is_none());
    assert!(d.get(0, -1).is_none());
    assert!(d.get(0, 0).is_some());
}

#[test]
fn presets_are_consistent() {
    for name in pbwmod::PRESETS {
        let spec = pbwmod::preset(name, None, None).unwrap();
        assert!(spec.check_bottom_consistency(3).consistent, "{name}");
    }
}
