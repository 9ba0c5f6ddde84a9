use grext::cohomology::{is_cohomologous, BilinearCocycle};
use grext::crossed_product::{phi, phi_inverse, CrossedProductElement};
use grext::fibers::{evaluate_fiber, Character};
use grext::format::{CrossedProductJson, GroupRingJson, ScalarJson};
use grext::groups::{heisenberg_central, heisenberg_semidirect};
use grext::scalars::{euler_phi, rat};
use grext::selftest::extension_system;
use grext::{CrossedSystem, CycScalar, Group, GroupElement, GroupRingElement, IntMatrix};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = grext::Rational> {
    (-4i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn scalar_of(order: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec(small_rational(), euler_phi(order))
        .prop_map(move |c| CycScalar::from_coeffs(order, c).unwrap())
}

fn scalar_triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]).prop_flat_map(|q| (scalar_of(q), scalar_of(q), scalar_of(q)))
}

fn gaussian() -> impl Strategy<Value = CycScalar> {
    (small_rational(), small_rational()).prop_map(|(a, b)| CycScalar::gaussian(a, b))
}

fn element_in(group: Group, radius: usize, max_support: usize) -> impl Strategy<Value = GroupRingElement> {
    let ball = group.ball(radius).unwrap();
    prop::collection::vec((prop::sample::select(ball), gaussian()), 0..=max_support)
        .prop_map(move |ts| GroupRingElement::from_terms(&group, 4, ts).unwrap())
}

fn preset() -> impl Strategy<Value = Group> {
    prop::sample::select(vec![heisenberg_semidirect(), heisenberg_central()])
}

fn triple_in_preset(max_support: usize) -> impl Strategy<Value = (GroupRingElement, GroupRingElement, GroupRingElement)> {
    preset().prop_flat_map(move |g| {
        (element_in(g.clone(), 2, max_support), element_in(g.clone(), 2, max_support), element_in(g, 2, max_support))
    })
}

fn lifted(g: &Group) -> CrossedSystem {
    extension_system(g).lift()
}

fn semidirect_cp(max_terms: usize) -> impl Strategy<Value = CrossedProductElement> {
    let g = heisenberg_semidirect();
    let cs = lifted(&g);
    let degrees: Vec<GroupElement> = (-2..=2).map(|k| GroupElement::vector(vec![k])).collect();
    let normal = cs.normal().clone();
    prop::collection::vec((prop::sample::select(degrees), element_in(normal, 1, 3)), 0..=max_terms)
        .prop_map(move |ts| CrossedProductElement::from_terms(&cs, 4, ts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms((a, b, c) in scalar_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        let target = a.order() * 2;
        prop_assert_eq!((&a * &b).embed(target).unwrap(), &a.embed(target).unwrap() * &b.embed(target).unwrap());
    }

    #[test]
    fn norm_squared_is_nonnegative_rational(a in scalar_of(4)) {
        let n = a.norm_squared();
        let r = n.as_rational().cloned().unwrap();
        prop_assert!(r >= rat(0, 1));
        prop_assert_eq!(r == rat(0, 1), a.is_zero());
    }

    #[test]
    fn group_axioms(g in preset(), i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let ball = g.ball(2).unwrap();
        let (x, y, z) = (&ball[i % ball.len()], &ball[j % ball.len()], &ball[k % ball.len()]);
        prop_assert_eq!(g.mul(&g.mul(x, y).unwrap(), z).unwrap(), g.mul(x, &g.mul(y, z).unwrap()).unwrap());
        prop_assert_eq!(g.mul(x, &g.inv(x).unwrap()).unwrap(), g.identity());
        prop_assert_eq!(g.mul(&g.inv(x).unwrap(), x).unwrap(), g.identity());
        prop_assert_eq!(g.mul(x, &g.identity()).unwrap(), x.clone());
    }

    #[test]
    fn group_ring_axioms((x, y, z) in triple_in_preset(4)) {
        prop_assert_eq!(x.convolve(&y).unwrap().convolve(&z).unwrap(), x.convolve(&y.convolve(&z).unwrap()).unwrap());
        prop_assert_eq!(x.convolve(&y.add(&z).unwrap()).unwrap(), x.convolve(&y).unwrap().add(&x.convolve(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().convolve(&z).unwrap(), x.convolve(&z).unwrap().add(&y.convolve(&z).unwrap()).unwrap());
        let one = GroupRingElement::one(x.group(), 4);
        prop_assert_eq!(one.convolve(&x).unwrap(), x.clone());
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn involution_is_antihomomorphism((x, y, _z) in triple_in_preset(4)) {
        prop_assert_eq!(x.convolve(&y).unwrap().involute().unwrap(), y.involute().unwrap().convolve(&x.involute().unwrap()).unwrap());
        prop_assert_eq!(x.involute().unwrap().involute().unwrap(), x.clone());
        prop_assert_eq!(x.add(&y).unwrap().involute().unwrap(), x.involute().unwrap().add(&y.involute().unwrap()).unwrap());
    }

    #[test]
    fn phi_is_star_isomorphism((x, y, _z) in triple_in_preset(5)) {
        let cs = lifted(x.group());
        let (px, py) = (phi(&cs, &x).unwrap(), phi(&cs, &y).unwrap());
        prop_assert_eq!(phi(&cs, &x.convolve(&y).unwrap()).unwrap(), px.mul(&py).unwrap());
        prop_assert_eq!(phi(&cs, &x.involute().unwrap()).unwrap(), px.involute().unwrap());
        prop_assert_eq!(phi(&cs, &x.add(&y).unwrap()).unwrap(), px.add(&py).unwrap());
        prop_assert_eq!(phi_inverse(&px).unwrap(), x);
    }

    #[test]
    fn crossed_product_associative(x in semidirect_cp(3), y in semidirect_cp(3), z in semidirect_cp(2)) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().involute().unwrap(), y.involute().unwrap().mul(&x.involute().unwrap()).unwrap());
    }

    #[test]
    fn degrees_add_under_multiplication(x in semidirect_cp(3), y in semidirect_cp(3)) {
        let xy = x.mul(&y).unwrap();
        match (x.degree_range(), y.degree_range()) {
            (Some((a, b)), Some((c, d))) => prop_assert_eq!(xy.degree_range(), Some((a + c, b + d))),
            _ => prop_assert!(xy.is_zero()),
        }
    }

    #[test]
    fn fiber_evaluation_is_multiplicative(
        x in element_in(heisenberg_central(), 2, 4),
        y in element_in(heisenberg_central(), 2, 4),
        q in prop::sample::select(vec![1u32, 2, 3, 4, 6]),
        a in 0i64..12,
    ) {
        let chi = Character::new(q, vec![a]).unwrap();
        let lhs = evaluate_fiber(&x.convolve(&y).unwrap(), &chi).unwrap();
        let rhs = evaluate_fiber(&x, &chi).unwrap().mul(&evaluate_fiber(&y, &chi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coboundary_perturbation_is_cohomologous(b in prop::collection::vec(-3i64..=3, 4), s in prop::collection::vec(-3i64..=3, 3)) {
        let m = IntMatrix::from_rows(&[b[0..2].to_vec(), b[2..4].to_vec()]).unwrap();
        let sym = IntMatrix::from_rows(&[vec![s[0], s[1]], vec![s[1], s[2]]]).unwrap();
        let c1 = BilinearCocycle::new(m.clone()).unwrap();
        let c2 = BilinearCocycle::new(m.sub(&sym)).unwrap();
        let v = is_cohomologous(&c1, &c2).unwrap();
        prop_assert!(v.cohomologous);
        let w = v.witness.unwrap();
        prop_assert!(w.verified_pairs > 0);
        prop_assert_eq!(w.coboundary(&[1, 2], &[-3, 1]), c1.eval(&[1, 2], &[-3, 1]) - c2.eval(&[1, 2], &[-3, 1]));
    }

    #[test]
    fn scalar_json_round_trip(a in scalar_of(12)) {
        let text = serde_json::to_string(&ScalarJson::from_scalar(&a)).unwrap();
        let back: ScalarJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_scalar().unwrap(), a);
    }

    #[test]
    fn element_json_round_trip(x in element_in(heisenberg_semidirect(), 3, 6), y in semidirect_cp(3)) {
        let text = serde_json::to_string(&GroupRingJson::from_element(&x, true)).unwrap();
        let back: GroupRingJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.build(None).unwrap(), x);
        let text = serde_json::to_string(&CrossedProductJson::from_element(&y).unwrap()).unwrap();
        let back: CrossedProductJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.build().unwrap(), y);
    }

    #[test]
    fn element_display_reparses(g in preset(), i in 0usize..1000) {
        let ball = g.ball(3).unwrap();
        let x = &ball[i % ball.len()];
        let back: GroupElement = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, x);
    }
}
