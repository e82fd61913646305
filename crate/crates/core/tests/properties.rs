use ellfib::ecurve::{Point, WeierstrassCurve};
use ellfib::field::{Field, PrimeField};
use ellfib::modquot::symprod_quotient_bc;
use ellfib::poly::{discriminant, resultant, QPoly, Ring};
use ellfib::rootsys::{CartanType, RootSystemData, WeylElement};
use proptest::prelude::*;

fn curve_and_points(b2: u64, b3: u64, picks: &[usize]) -> Option<(WeierstrassCurve<PrimeField>, Vec<Point<u64>>)> {
    let k = PrimeField::new(1009).unwrap();
    let c = WeierstrassCurve::new(k, b2, b3).ok()?;
    let pts = c.enumerate_points().unwrap();
    let chosen = picks.iter().map(|&i| pts[i % pts.len()].clone()).collect();
    Some((c, chosen))
}

fn small_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| QPoly::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_axioms(b2 in 0u64..1009, b3 in 0u64..1009, picks in prop::collection::vec(0usize..2000, 3)) {
        let Some((c, p)) = curve_and_points(b2, b3, &picks) else { return Ok(()) };
        prop_assert_eq!(c.add(&p[0], &p[1]), c.add(&p[1], &p[0]));
        prop_assert_eq!(c.add(&c.add(&p[0], &p[1]), &p[2]), c.add(&p[0], &c.add(&p[1], &p[2])));
        prop_assert!(c.contains(&c.add(&p[0], &p[1])));
        prop_assert_eq!(c.scalar_mul(3, &p[0]), c.add(&p[0], &c.double(&p[0])));
    }

    #[test]
    fn resultant_is_multiplicative(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        prop_assert_eq!(resultant(&f.mul(&g), &h), resultant(&f, &h).mul(&resultant(&g, &h)));
    }

    #[test]
    fn squarefree_iff_discriminant_nonzero(f in small_poly()) {
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(f.is_squarefree(), !discriminant(&f).is_zero());
    }

    #[test]
    fn weyl_words_permute_roots(word in prop::collection::vec(0usize..4, 0..12)) {
        for name in ["B4", "F4", "D4"] {
            let t: CartanType = name.parse().unwrap();
            let rs = RootSystemData::build(t);
            let w = WeylElement::from_word(&rs, &word);
            let mut img: Vec<_> = rs.roots.iter().map(|r| w.act_on_root(&rs, r)).collect();
            img.sort();
            let mut all = rs.roots.clone();
            all.sort();
            prop_assert_eq!(img, all);
        }
    }

    #[test]
    fn symmetric_product_ignores_signs_and_order(b2 in 0u64..1009, b3 in 0u64..1009, picks in prop::collection::vec(0usize..2000, 3)) {
        let Some((c, p)) = curve_and_points(b2, b3, &picks) else { return Ok(()) };
        let a = symprod_quotient_bc(&c, &p).unwrap();
        let b = symprod_quotient_bc(&c, &[c.neg(&p[2]), p[0].clone(), c.neg(&p[1])]).unwrap();
        prop_assert_eq!(&a, &b);
        let k = *c.field();
        prop_assert!(!k.is_zero(&a.coords()[0]) || p.iter().any(Point::is_zero));
    }
}
