use groupcalc_core::calculus::{
    expand_product_derivative, flip_sides, hom_chain_sides, linear_sides, rho_identity_check,
    schwarz_sides,
};
use groupcalc_core::explaw::slice_derivative_sides;
use groupcalc_core::*;
use proptest::prelude::*;

fn dyadic() -> impl Strategy<Value = f64> {
    (-64i32..64).prop_map(|n| n as f64 / 16.0)
}

fn small() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn dual2(values: std::ops::Range<f64>) -> impl Strategy<Value = MultiDual<f64>> {
    prop::collection::vec(values, 4).prop_map(|c| MultiDual::from_coeffs(c).unwrap())
}

fn exact_dual2() -> impl Strategy<Value = MultiDual<Exact>> {
    prop::collection::vec(dyadic(), 4)
        .prop_map(|c| MultiDual::from_coeffs(c.into_iter().map(Exact::from_f64).collect()).unwrap())
}

fn close(a: &MultiDual<f64>, b: &MultiDual<f64>, tol: f64) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn heis() -> impl Strategy<Value = GroupElement> {
    (small(), small(), small()).prop_map(|(a, b, c)| GroupElement::heisenberg(a, b, c))
}

fn heis_dir() -> impl Strategy<Value = LieDirection> {
    (small(), small(), small()).prop_map(|(a, b, c)| LieDirection::heisenberg(a, b, c))
}

fn dyadic_heis() -> impl Strategy<Value = GroupElement> {
    (dyadic(), dyadic(), dyadic()).prop_map(|(a, b, c)| GroupElement::heisenberg(a, b, c))
}

fn dyadic_heis_dir() -> impl Strategy<Value = LieDirection> {
    (dyadic(), dyadic(), dyadic()).prop_map(|(a, b, c)| LieDirection::heisenberg(a, b, c))
}

fn any_direction() -> impl Strategy<Value = LieDirection> {
    prop_oneof![
        heis_dir(),
        (-1.0f64..1.0, small(), small()).prop_map(|(w, a, b)| LieDirection::se2(w, a, b)),
        prop::collection::vec(-0.8f64..0.8, 4).prop_map(|e| LieDirection::gl(2, &e).unwrap()),
        prop::collection::vec(small(), 2).prop_map(|v| LieDirection::translation(&v)),
    ]
}

/// Smooth expressions over `(coord 0 0)` and `(coord 0 1)`, total on ℝ².
fn smooth_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0usize..2).prop_map(|k| Expr::coord(0, k)),
        (-3.0f64..3.0).prop_map(Expr::constant),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| -a),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.clone().prop_map(|a| a.sin().exp()),
            inner.clone().prop_map(|a| (Expr::constant(1.0) + a.clone() * a).log()),
            inner.prop_map(|a| (Expr::constant(2.0) + a.cos()).recip()),
        ]
    })
}

/// Heisenberg × ℝ² functions built from the smooth expressions above.
fn product_function() -> impl Strategy<Value = GroupFunction> {
    (smooth_expr(), smooth_expr()).prop_map(|(a, b)| {
        let on_heis = a.map_leaves(&|l| match l {
            Expr::Coord { index: 0, .. } => Expr::entry(0, 0, 1) + Expr::entry(0, 1, 2),
            Expr::Coord { index: 1, .. } => Expr::entry(0, 0, 2),
            other => other.clone(),
        });
        let on_plane = b.map_leaves(&|l| match l {
            Expr::Coord { index, .. } => Expr::coord(1, *index),
            other => other.clone(),
        });
        let mixed = on_heis.clone() * on_plane.clone() + on_plane.sin();
        GroupFunction::new(vec![GroupSpec::Heisenberg3, GroupSpec::Translation(2)], vec![mixed, on_heis])
            .unwrap()
    })
}

fn plane_point() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(small(), 2).prop_map(|v| GroupElement::translation(&v))
}

fn plane_dir() -> impl Strategy<Value = LieDirection> {
    prop::collection::vec(small(), 2).prop_map(|v| LieDirection::translation(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_laws_float(a in dual2(-2.0f64..2.0), b in dual2(-2.0f64..2.0), c in dual2(-2.0f64..2.0)) {
        prop_assert!(close(&(a.clone() * b.clone()), &(b.clone() * a.clone()), 1e-12));
        prop_assert!(close(&((a.clone() * b.clone()) * c.clone()), &(a.clone() * (b.clone() * c.clone())), 1e-12));
        prop_assert!(close(
            &(a.clone() * (b.clone() + c.clone())),
            &(a.clone() * b.clone() + a * c),
            1e-12
        ));
    }

    #[test]
    fn ring_laws_exact(a in exact_dual2(), b in exact_dual2(), c in exact_dual2()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
    }

    #[test]
    fn product_rule(a in exact_dual2(), b in exact_dual2()) {
        let prod = (a.clone() * b.clone()).coeff(&[1]).unwrap();
        let expected = a.value().clone() * b.coeff(&[1]).unwrap() + a.coeff(&[1]).unwrap() * b.value().clone();
        prop_assert_eq!(prod, expected);
    }

    #[test]
    fn exp_turns_sums_into_products(a in dual2(-1.0f64..1.0), b in dual2(-1.0f64..1.0)) {
        let lhs = a.compose(Primitive::Exp).unwrap() * b.compose(Primitive::Exp).unwrap();
        let rhs = (a + b).compose(Primitive::Exp).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn flow_is_a_homomorphism(x in any_direction(), s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let lhs = one_param_eval(&x, &(s + t)).unwrap();
        let rhs = one_param_eval(&x, &s).unwrap().multiply(&one_param_eval(&x, &t).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-10, "distance {}", lhs.distance(&rhs));
    }

    #[test]
    fn nilpotent_flow_is_exact(x in dyadic_heis_dir(), s in dyadic(), t in dyadic()) {
        let xe = x.lift::<Exact>();
        let (s, t) = (Exact::from_f64(s), Exact::from_f64(t));
        let lhs = one_param_eval(&xe, &(s.clone() + t.clone())).unwrap();
        let rhs = one_param_eval(&xe, &s).unwrap().multiply(&one_param_eval(&xe, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(x in heis(), y in heis(), z in heis(),
                                     a in any_direction(), b in any_direction()) {
        let lhs = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-12);
        if a.spec() == b.spec() {
            let (p, q) = (one_param_eval(&a, &0.7).unwrap(), one_param_eval(&b, &-0.3).unwrap());
            let lhs = p.multiply(&q).unwrap().multiply(&p).unwrap();
            let rhs = p.multiply(&q.multiply(&p).unwrap()).unwrap();
            prop_assert!(lhs.distance(&rhs) <= 1e-12);
        }
    }

    #[test]
    fn pushed_directions_follow_the_image_flow(g in heis(), x in heis_dir(), t in -2.0f64..2.0) {
        let phi = GroupHom::conjugation(&g).unwrap();
        let lhs = phi.apply(&one_param_eval(&x, &t).unwrap()).unwrap();
        let rhs = one_param_eval(&phi.push(&x).unwrap(), &t).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-10);
    }

    #[test]
    fn float_evaluation_matches_dual_value(e in smooth_expr(), p in plane_point()) {
        let f = GroupFunction::new(vec![GroupSpec::Translation(2)], vec![e]).unwrap();
        let plain = f.eval(std::slice::from_ref(&p)).unwrap();
        let dual = iterated::<f64>(&f, &p, &[]).unwrap();
        prop_assert_eq!(&plain, &dual);
        let lifted = p.map(&|c| MultiDual::variable(*c, 1, 1).unwrap().promote(1));
        let values: Vec<f64> = f.eval(&[lifted]).unwrap().into_iter().map(|d| *d.value()).collect();
        prop_assert_eq!(values, plain);
    }

    #[test]
    fn flip_is_an_involution(f in product_function(), x in heis(), y in plane_point()) {
        let twice = f.flip().unwrap().flip().unwrap();
        prop_assert_eq!(twice.eval(&[x.clone(), y.clone()]).unwrap(), f.eval(&[x, y]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn schwarz_holds_on_products(f in product_function(), x in heis(), y in plane_point(),
                                 gd in prop::collection::vec(heis_dir(), 0..3),
                                 hd in prop::collection::vec(plane_dir(), 0..3)) {
        let (a, b) = schwarz_sides::<f64>(&f, &x, &y, &gd, &hd).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-9 * (1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn schwarz_is_exact_for_polynomials(x in dyadic_heis(), y in dyadic_heis(),
                                        gd in prop::collection::vec(dyadic_heis_dir(), 0..3),
                                        hd in prop::collection::vec(dyadic_heis_dir(), 0..3)) {
        let e = Expr::entry(0, 0, 1) * Expr::entry(1, 0, 2) * Expr::entry(1, 1, 2)
            + Expr::entry(0, 0, 2) * Expr::entry(0, 1, 2) * Expr::entry(1, 0, 1);
        let f = GroupFunction::new(vec![GroupSpec::Heisenberg3, GroupSpec::Heisenberg3], vec![e]).unwrap();
        let (a, b) = schwarz_sides::<Exact>(&f, &x, &y, &gd, &hd).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn flip_symmetry(f in product_function(), x in heis(), y in plane_point(),
                     gd in prop::collection::vec(heis_dir(), 0..3),
                     hd in prop::collection::vec(plane_dir(), 0..3)) {
        let (a, b) = flip_sides::<f64>(&f, &x, &y, &gd, &hd).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-10 * (1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn expansion_has_all_splits(f in product_function(), x in heis(), y in plane_point(),
                                pairs in prop::collection::vec((heis_dir(), plane_dir()), 1..4)) {
        let e = expand_product_derivative::<f64>(&f, &x, &y, &pairs).unwrap();
        prop_assert_eq!(e.terms.len(), 1 << pairs.len());
        let scale = 1.0 + e.left.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(max_dev(&e.left, &e.right) <= 1e-9 * scale);
    }

    #[test]
    fn rho_restriction(f in product_function(), x in heis(), y in plane_point(),
                       gd in prop::collection::vec(heis_dir(), 0..3),
                       hd in prop::collection::vec(plane_dir(), 0..3)) {
        let (a, b) = rho_identity_check::<f64>(&f, &x, &y, &gd, &hd).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-9 * (1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn linear_maps_commute_with_derivatives(f in product_function(), x in heis(), y in plane_point(),
                                            lam in prop::collection::vec(-2.0f64..2.0, 6),
                                            dirs in prop::collection::vec((heis_dir(), plane_dir()), 0..3)) {
        let g = f.on_product().unwrap();
        let lambda = Matrix::from_vec(3, 2, lam).unwrap();
        let p = GroupElement::pair(x, y);
        let dirs: Vec<_> = dirs.into_iter().map(|(a, b)| LieDirection::pair(a, b)).collect();
        let (a, b) = linear_sides::<f64>(&lambda, &g, &p, &dirs).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-10 * (1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn components_differentiate_separately(f in product_function(), x in heis(), y in plane_point(),
                                           dirs in prop::collection::vec((heis_dir(), plane_dir()), 0..3)) {
        let g = f.on_product().unwrap();
        let p = GroupElement::pair(x, y);
        let dirs: Vec<_> = dirs.into_iter().map(|(a, b)| LieDirection::pair(a, b)).collect();
        let whole = iterated::<f64>(&g, &p, &dirs).unwrap();
        for (k, value) in whole.iter().enumerate() {
            let part = iterated::<f64>(&f.component(k).unwrap().on_product().unwrap(), &p, &dirs).unwrap();
            prop_assert_eq!(part[0], *value);
        }
    }

    #[test]
    fn projection_chain_rule(f in product_function(), x in heis(), y in plane_point(),
                             dirs in prop::collection::vec((heis_dir(), plane_dir()), 0..3)) {
        let spec = GroupSpec::product(GroupSpec::Heisenberg3, GroupSpec::Translation(2));
        let outer = GroupSpec::product(spec.clone(), GroupSpec::Translation(1));
        let pr = GroupHom::project_first(&outer).unwrap();
        let g = f.on_product().unwrap();
        let p = GroupElement::pair(GroupElement::pair(x, y), GroupElement::translation(&[0.5]));
        let dirs: Vec<_> = dirs
            .into_iter()
            .map(|(a, b)| LieDirection::pair(LieDirection::pair(a, b), LieDirection::translation(&[1.0])))
            .collect();
        let (a, b) = hom_chain_sides::<f64>(&g, &pr, &p, &dirs).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-9 * (1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn slice_derivatives(f in product_function(), x in heis(), y in plane_point(),
                         hd in prop::collection::vec(plane_dir(), 0..3)) {
        let (a, b) = slice_derivative_sides::<f64>(&f, &x, &y, &hd).unwrap();
        prop_assert!(max_dev(&a, &b) <= 1e-10 * (1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn curry_round_trip(f in product_function(), x in heis(), y in plane_point()) {
        let g = curry(&f).unwrap();
        prop_assert_eq!(uncurry(&g).eval(&[x.clone(), y.clone()]).unwrap(), f.eval(&[x.clone(), y.clone()]).unwrap());
        prop_assert_eq!(g.at(&x).unwrap().eval(std::slice::from_ref(&y)).unwrap(), f.eval(&[x, y]).unwrap());
        prop_assert_eq!(curry(&uncurry(&g)).unwrap(), g);
    }
}

#[test]
fn primitives_match_classical_derivatives() {
    type Closed = fn(f64) -> f64;
    let cases: [(Primitive, Closed, f64, f64); 6] = [
        (Primitive::Exp, libm::exp, -2.0, 2.0),
        (Primitive::Sin, libm::cos, -3.0, 3.0),
        (Primitive::Cos, |v| -libm::sin(v), -3.0, 3.0),
        (Primitive::Log, |v| 1.0 / v, 0.1, 5.0),
        (Primitive::Recip, |v| -1.0 / (v * v), 0.2, 4.0),
        (Primitive::Pow(2.5), |v| 2.5 * libm::pow(v, 1.5), 0.1, 4.0),
    ];
    for (prim, closed, lo, hi) in cases {
        for k in 0..20 {
            let v = lo + (hi - lo) * (k as f64 + 0.5) / 20.0;
            let d = MultiDual::variable(v, 1, 1).unwrap().compose(prim).unwrap();
            let got = d.coeff(&[1]).unwrap();
            let want = closed(v);
            assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()), "{prim} at {v}: {got} vs {want}");
        }
    }
}
