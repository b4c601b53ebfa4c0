use bridgevar::exactalg::resultant::resultant_uni;
use bridgevar::exactalg::{complex_roots, modp_degree_pattern, QuadElem, QuadRing, UniPoly, Var};
use bridgevar::knotprops::{alexander_normalized, two_bridge_params};
use bridgevar::models::{d_model, expected_bidegree, pushforward_identity};
use bridgevar::newton::{int_polygon, val_quad, NewtonPolygon, Val};
use bridgevar::riley::{eval_word, Gen, LaurentMat2, Word};
use bridgevar::LaurentPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    (prop::collection::vec(-bound..=bound, 1..=max_deg), 1..=bound).prop_map(|(mut c, lead)| {
        c.push(if c.len() % 2 == 0 { lead } else { -lead });
        UniPoly::from_i64s(&c, Var::X)
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(a, e)| (if a { Gen::A } else { Gen::B }, e))))
}

fn quad(ring: QuadRing) -> impl Strategy<Value = QuadElem> {
    (-500i64..=500, -500i64..=500).prop_map(move |(a, b)| QuadElem::new(a, b, ring))
}

fn ring() -> impl Strategy<Value = QuadRing> {
    prop_oneof![Just(QuadRing::GaussInt), Just(QuadRing::RootThree)]
}

/// Valuation above 3 by repeated division: by 3 in Z[i], by sqrt(3) in Z[sqrt 3].
fn val_quad_by_division(x: &QuadElem) -> Val {
    if x.is_zero() {
        return Val::Inf;
    }
    let three = BigInt::from(3);
    let (mut a, mut b) = (x.a.clone(), x.b.clone());
    let mut halves = 0i64;
    match x.ring {
        QuadRing::GaussInt => {
            while (&a % &three).is_zero() && (&b % &three).is_zero() {
                a /= &three;
                b /= &three;
                halves += 2;
            }
        }
        QuadRing::RootThree => {
            // (a + b√3)/√3 = b + (a/3)√3
            while (&a % &three).is_zero() {
                let na = b.clone();
                b = &a / &three;
                a = na;
                halves += 1;
            }
        }
    }
    Val::frac(halves, 2)
}

fn horizontal_lengths(hull: &NewtonPolygon) -> usize {
    hull.vertices.windows(2).map(|w| w[1].index - w[0].index).sum()
}

fn one() -> LaurentPoly {
    LaurentPoly::int(1)
}

fn trace_identity_holds(m: &LaurentMat2, n: &LaurentMat2) -> bool {
    let lhs = m.mul(n).trace();
    let tm_tn = &m.trace() * &n.trace();
    lhs == &tm_tn - &m.sl2_inverse().mul(n).trace()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn resultant_is_multiplicative(f in poly(4, 6), g in poly(4, 6), h in poly(4, 6)) {
        let lhs = resultant_uni(&(&f * &g), &h);
        let rhs = resultant_uni(&f, &h) * resultant_uni(&g, &h);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(f in poly(6, 9), g in poly(6, 9), c in poly(3, 5)) {
        let (f, g) = (&f * &c, &g * &c);
        let d = f.gcd(&g);
        prop_assert!(f.div_exact(&d).is_some());
        prop_assert!(g.div_exact(&d).is_some());
        prop_assert!(d.degree() >= c.degree());
    }

    #[test]
    fn modp_degrees_sum_to_degree(f in poly(10, 30), p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101])) {
        if let Some(degs) = modp_degree_pattern(&f, p).unwrap() {
            prop_assert_eq!(degs.iter().sum::<usize>(), f.degree().unwrap());
        }
    }

    #[test]
    fn complex_roots_reconstruct(f in poly(8, 20)) {
        prop_assume!(f.degree().unwrap() >= 1 && f.is_separable());
        let tol = 1e-12;
        let roots = complex_roots(&f, tol).unwrap();
        prop_assert_eq!(roots.len(), f.degree().unwrap());
        let mut prod = vec![Complex64::new(f.lead().unwrap().to_f64().unwrap(), 0.0)];
        for z in &roots {
            let mut next = vec![Complex64::zero(); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * z;
            }
            prod = next;
        }
        let norm = f.coeffs().iter().map(|c| c.abs().to_f64().unwrap()).fold(0.0, f64::max);
        for (c, z) in f.coeffs().iter().zip(&prod) {
            let err = (z - Complex64::new(c.to_f64().unwrap(), 0.0)).norm();
            prop_assert!(err <= 10.0 * tol * norm, "coefficient error {err}");
        }
    }

    #[test]
    fn root_valuations_of_product_are_union(f in poly(4, 40), g in poly(4, 40), p in prop::sample::select(vec![2u64, 3, 5])) {
        prop_assume!(!f.coeff(0).is_zero() && !g.coeff(0).is_zero());
        let mut lhs = int_polygon(&(&f * &g), p).unwrap().root_valuations();
        let mut rhs = int_polygon(&f, p).unwrap().root_valuations();
        rhs.extend(int_polygon(&g, p).unwrap().root_valuations());
        let expand = |v: &mut Vec<bridgevar::newton::RootValuation>| {
            let mut out: Vec<Val> = v.iter().flat_map(|r| std::iter::repeat_n(r.value.clone(), r.count)).collect();
            out.sort();
            out
        };
        prop_assert_eq!(expand(&mut lhs), expand(&mut rhs));
    }

    #[test]
    fn hull_slopes_increase(f in poly(12, 200), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let hull = int_polygon(&f, p).unwrap();
        let slopes = hull.slopes();
        prop_assert!(slopes.windows(2).all(|w| w[0] < w[1]));
        // a leading run of zero coefficients shows up as a vertical segment at infinity
        let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
        let finite = if zeros > 0 { horizontal_lengths(&hull) - (hull.vertices[1].index - hull.vertices[0].index) } else { horizontal_lengths(&hull) };
        prop_assert_eq!(finite + zeros, f.degree().unwrap());
    }

    #[test]
    fn generator_words_have_det_one(w in word(6)) {
        prop_assert_eq!(eval_word(&w).det(), one());
    }

    #[test]
    fn trace_product_identity(u in word(4), v in word(4)) {
        prop_assert!(trace_identity_holds(&eval_word(&u), &eval_word(&v)));
    }

    #[test]
    fn d_model_symmetries(k in -9i64..=9, n in -5i64..=5) {
        let l = 2 * n;
        prop_assume!(k.abs() >= 2 && n != 0);
        let a = d_model(k, l).unwrap();
        prop_assert_eq!(&a.equation, &d_model(-k, -l).unwrap().equation);
        if k % 2 == 0 {
            let b = d_model(l, k).unwrap();
            prop_assert!(a.equation.swap_labels().eq_up_to_unit(&b.equation));
        }
        if let (Some(b), Some(e)) = (a.bidegree, expected_bidegree(k, n)) {
            prop_assert_eq!(b, e);
        }
        prop_assert!(pushforward_identity(k, l));
    }

    #[test]
    fn two_bridge_and_alexander(k in -12i64..=12, n in -6i64..=6) {
        let l = 2 * n;
        prop_assume!(k != 0 && n != 0 && k * l != 2);
        let f = two_bridge_params(k, l).unwrap();
        prop_assert_eq!(f.p, (1 - k * l).abs());
        prop_assert_eq!(f.p % 2, 1);
        if k % 2 == 0 {
            let g = two_bridge_params(l, k).unwrap();
            let mut rev = f.cont_frac.clone();
            rev.reverse();
            prop_assert_eq!(g.cont_frac, rev);
            prop_assert_eq!(alexander_normalized(k, l).unwrap(), alexander_normalized(l, k).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn quad_norm_is_multiplicative((x, y) in ring().prop_flat_map(|r| (quad(r), quad(r)))) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn quad_valuation_axioms((x, y) in ring().prop_flat_map(|r| (quad(r), quad(r)))) {
        prop_assert_eq!(val_quad(&x), val_quad_by_division(&x));
        prop_assert_eq!(val_quad(&(&x * &y)), &val_quad(&x) + &val_quad(&y));
        let s = val_quad(&(&x + &y));
        prop_assert!(s >= val_quad(&x).min(val_quad(&y)));
    }
}

#[test]
fn rational_valuations_are_additive() {
    use bridgevar::newton::val_rat;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for p in [2u64, 3, 5] {
        let a = q(-12, 35);
        let b = q(50, 9);
        assert_eq!(val_rat(&(&a * &b), p).unwrap(), &val_rat(&a, p).unwrap() + &val_rat(&b, p).unwrap());
    }
}
