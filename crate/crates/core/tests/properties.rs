use monogenic::clifford::{sym_product, BladeIndex, Multivector};
use monogenic::monomodel::{annihilate_apply, create_apply, m2_inner_exact, M2Element};
use monogenic::nilgroup::{cliff_inner, g_inv, g_mul, rho_act, GElement, VPacket};
use monogenic::oscillator::{h_inv, h_mul, schrodinger_act, GaussPacket, HElement};
use monogenic::{Complex64, MultiIndex};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn complex() -> impl Strategy<Value = Complex64> {
    (coeff(), coeff()).prop_map(|(a, b)| Complex64::new(a, b))
}

fn mv(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(complex(), 1 << n).prop_map(move |cs| {
        let mut m = Multivector::zero(n);
        for (mask, c) in cs.into_iter().enumerate() {
            m.add_term(BladeIndex::from_mask(mask as u16), c);
        }
        m
    })
}

fn mv_triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1usize..=5).prop_flat_map(|n| (mv(n), mv(n), mv(n)))
}

fn h_elem(n: usize) -> impl Strategy<Value = HElement> {
    (coeff(), prop::collection::vec(complex(), n)).prop_map(|(t, z)| HElement::new(t, z))
}

fn g_elem(n: usize) -> impl Strategy<Value = GElement> {
    (prop::collection::vec(coeff(), n), coeff(), prop::collection::vec(coeff(), n))
        .prop_map(|(t, p, q)| GElement::new(t, p, q))
}

fn packet(n: usize) -> impl Strategy<Value = GaussPacket> {
    (complex(), prop::collection::vec((-0.8f64..0.8, -0.8f64..0.8), n))
        .prop_map(|(a, l)| GaussPacket::new(a, l.into_iter().map(|(x, y)| Complex64::new(x, y)).collect()))
}

fn vpacket(n: usize) -> impl Strategy<Value = VPacket> {
    (prop::collection::vec(complex(), n), prop::collection::vec((-0.8f64..0.8, -0.8f64..0.8), n))
        .prop_map(|(a, l)| VPacket::new(a, l.into_iter().map(|(x, y)| Complex64::new(x, y)).collect()))
}

fn m2_elem(n: usize, d: usize) -> impl Strategy<Value = M2Element> {
    let idx = MultiIndex::all_up_to(n, d);
    prop::collection::vec(complex(), idx.len()).prop_map(move |cs| {
        let mut f = M2Element::zero(n);
        for (k, c) in idx.iter().cloned().zip(cs) {
            f.add_term(k, c);
        }
        f
    })
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    (a - b).max_abs() <= tol * a.max_abs().max(b.max_abs()).max(1.0)
}

proptest! {
    #[test]
    fn clifford_product_is_associative((a, b, c) in mv_triple()) {
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-13));
    }

    #[test]
    fn conjugation_is_an_anti_involution((a, b, _) in mv_triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!(close(&(&a * &b).conj(), &(&b.conj() * &a.conj()), 1e-13));
    }

    #[test]
    fn symmetrized_product_ignores_order(
        (vs, shuffled) in prop::collection::vec(prop::collection::vec(coeff(), 3), 1..=5)
            .prop_flat_map(|vs| (Just(vs.clone()), Just(vs).prop_shuffle())),
    ) {
        let a = sym_product(&vs.iter().map(|v| Multivector::vector(3, v)).collect::<Vec<_>>()).unwrap();
        let b = sym_product(&shuffled.iter().map(|v| Multivector::vector(3, v)).collect::<Vec<_>>()).unwrap();
        prop_assert!(close(&a, &b, 1e-13));
    }

    #[test]
    fn heisenberg_group_axioms(g in h_elem(2), h in h_elem(2), k in h_elem(2)) {
        prop_assert!(h_mul(&h_mul(&g, &h), &k).distance(&h_mul(&g, &h_mul(&h, &k))) < 1e-13);
        prop_assert!(h_mul(&g, &h_inv(&g)).distance(&HElement::identity(2)) < 1e-15);
        prop_assert_eq!(h_mul(&g, &HElement::identity(2)), g);
    }

    #[test]
    fn nilpotent_group_axioms(g in g_elem(3), h in g_elem(3), k in g_elem(3)) {
        prop_assert!(g_mul(&g_mul(&g, &h), &k).distance(&g_mul(&g, &g_mul(&h, &k))) < 1e-13);
        prop_assert!(g_mul(&g_inv(&g), &g).distance(&GElement::identity(3)) < 1e-15);
        let centre = GElement::new(h.t.clone(), 0.0, vec![0.0; 3]);
        prop_assert!(g_mul(&centre, &g).distance(&g_mul(&g, &centre)) == 0.0);
    }

    #[test]
    fn schrodinger_action_is_a_unitary_homomorphism(
        g in h_elem(1), h in h_elem(1), f in packet(1), f2 in packet(1),
    ) {
        let lhs = schrodinger_act(&g, &schrodinger_act(&h, &f));
        let rhs = schrodinger_act(&h_mul(&g, &h), &f);
        prop_assert!(lhs.param_distance(&rhs) <= 1e-12 * rhs.amp.norm().max(1.0));
        let before = f.inner(&f2);
        let after = schrodinger_act(&g, &f).inner(&schrodinger_act(&g, &f2));
        prop_assert!((after - before).norm() <= 1e-10 * before.norm().max(1.0));
    }

    #[test]
    fn rho_is_a_unitary_homomorphism(g in g_elem(2), h in g_elem(2), f in vpacket(2), f2 in vpacket(2)) {
        let lhs = rho_act(&g, &rho_act(&h, &f));
        let rhs = rho_act(&g_mul(&g, &h), &f);
        let scale = rhs.amp.iter().map(|a| a.norm()).fold(1.0, f64::max);
        prop_assert!(lhs.param_distance(&rhs) <= 1e-12 * scale);
        prop_assert!(close(&cliff_inner(&rho_act(&g, &f), &rho_act(&g, &f2)), &cliff_inner(&f, &f2), 1e-10));
    }

    #[test]
    fn m2_ladder_operators_are_adjoint(f in m2_elem(2, 4), g in m2_elem(2, 5), j in 1usize..=2) {
        let lhs = m2_inner_exact(&create_apply(j, &f, 8).unwrap(), &g);
        let rhs = m2_inner_exact(&f, &annihilate_apply(j, &g).unwrap());
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }
}
