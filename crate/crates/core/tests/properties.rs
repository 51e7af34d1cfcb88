use biquad::exact::Rational;
use biquad::family::{
    classify, final_family, is_proportional, param_solution, parametrize_cubic, t_candidate_1,
    t_candidate_2, t_of_ab, verify_system, FamilyError, FamilyParams, ParamPoint, Triad, TriadPair,
};
use biquad::quartic::{
    build_quartics, secant_variants, tangent_variants, verify_square_point, CurvePoint,
    MonicQuartic, Sign,
};
use biquad::search::{enumerate_pairs, SearchConfig};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_i128(v: &BigInt) -> i128 {
    v.to_i128().expect("fits in i128")
}

fn nondegenerate_point() -> impl Strategy<Value = ParamPoint> {
    (-50i64..=50, -50i64..=50)
        .prop_filter("nondegenerate", |&(a, b)| {
            (a, b) != (0, 0) && classify(&ParamPoint { a, b }).is_empty()
        })
        .prop_map(|(a, b)| ParamPoint { a, b })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn family_members_hold(pt in nondegenerate_point()) {
        let m = final_family(&pt).unwrap();
        let (x, y) = (&m.roots.x, &m.roots.y);
        let s4 = |v: &[BigInt; 3]| v.iter().map(|e| e * e * e * e).sum::<BigInt>();
        prop_assert_eq!(s4(x), s4(y));
        prop_assert_eq!(x.iter().product::<BigInt>(), y.iter().product::<BigInt>());
        for (sq, rt) in m.squares.as_array().iter().zip(x.iter().chain(y)) {
            prop_assert_eq!(sq, &(rt * rt));
        }
        prop_assert!(!m.trivial);
    }

    #[test]
    fn family_agrees_with_scaled_solution(pt in nondegenerate_point()) {
        let m = final_family(&pt).unwrap();
        let params = parametrize_cubic(&pt).params().unwrap();
        let t = t_of_ab(&pt).unwrap();
        prop_assert_eq!(&t_candidate_1(&params).unwrap(), &t);
        prop_assert_eq!(&t_candidate_2(&params).unwrap(), &t);
        let sol = param_solution(&params, &t, &Rational::one()).unwrap();
        prop_assert!(is_proportional(&sol.as_array(), &m.squares.as_array()));
    }

    #[test]
    fn scaled_solution_solves_the_system(
        p in -30i64..=30, q in -30i64..=30, r in -30i64..=30,
        tn in -40i64..=40, td in 1i64..=12, k in 1i64..=5,
    ) {
        let Ok(params) = FamilyParams::from_i64s(p, q, r) else { return Ok(()) };
        let t = Rational::from_i64s(tn, td);
        match param_solution(&params, &t, &Rational::from_integer(BigInt::from(k))) {
            Ok(sol) => prop_assert!(verify_system(&sol.values).holds()),
            Err(FamilyError::Degenerate(_)) | Err(FamilyError::ZeroParameter(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn scaling_a_pair_keeps_it_a_pair(pt in nondegenerate_point(), d in 1u64..=20) {
        let pair = final_family(&pt).unwrap().pair;
        let scaled = pair.scaled(d).unwrap();
        let d4 = BigInt::from(d).pow(4);
        let d3 = BigInt::from(d).pow(3);
        prop_assert_eq!(scaled.sum4(), &(pair.sum4() * d4));
        prop_assert_eq!(scaled.prod(), &(pair.prod() * d3));
        prop_assert_eq!(scaled.is_primitive(), d == 1 && pair.is_primitive());
    }

    #[test]
    fn candidates_are_squares_on_their_quartics(
        p in -60i64..=60, q in -60i64..=60, r in -60i64..=60,
    ) {
        let Ok(params) = FamilyParams::from_i64s(p, q, r) else { return Ok(()) };
        let (Ok(t1), Ok(t2)) = (t_candidate_1(&params), t_candidate_2(&params)) else {
            return Ok(());
        };
        let (q1, q2) = build_quartics(&params).unwrap();
        prop_assert!(verify_square_point(&q1, &t1).is_some());
        prop_assert!(verify_square_point(&q2, &t2).is_some());
    }
}

#[test]
fn pair_json_round_trips() {
    let pair = final_family(&ParamPoint { a: 1, b: -1 }).unwrap().pair;
    let text = serde_json::to_string(&pair).unwrap();
    assert_eq!(
        text,
        r#"{"left":[7,133,153],"right":[17,49,171],"sum4":"860884403","prod":"142443","primitive":true,"source":{"a":1,"b":-1}}"#
    );
    let back: TriadPair = serde_json::from_str(&text).unwrap();
    assert_eq!(back, pair);
    let forged = text.replace("153", "154");
    assert!(serde_json::from_str::<TriadPair>(&forged).is_err());
}

#[test]
fn triad_sorting_and_positivity() {
    let t = Triad::from_u64s([153, 7, 133]).unwrap();
    assert_eq!(t, Triad::from_u64s([7, 133, 153]).unwrap());
    assert!(Triad::from_u64s([0, 1, 2]).is_err());
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    Rational::from_i64s(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

/// `f = G² + λ(t − t1)(t − t2)(t − m)` passes through `(t1, G(t1))` and
/// `(t2, G(t2))`, and the chord through them meets the curve again at `m`.
struct Composable {
    f: MonicQuartic,
    p1: CurvePoint,
    p2: CurvePoint,
    m: Rational,
    /// Signs that make the fitted quadratic equal `G`.
    chord: (Sign, Sign),
}

fn composable(rng: &mut ChaCha8Rng) -> Composable {
    loop {
        let (g1, g0) = (random_rational(rng, 9, 4), random_rational(rng, 9, 4));
        let lam = random_rational(rng, 9, 3);
        let (t1, t2, m) = (
            random_rational(rng, 9, 5),
            random_rational(rng, 9, 5),
            random_rational(rng, 9, 5),
        );
        if lam.is_zero() || t1 == t2 {
            continue;
        }
        // G = t² + g1 t + g0; expand G² and the cubic by hand.
        let two = Rational::from_integer(BigInt::from(2));
        let (e1, e2, e3) = (
            &(&t1 + &t2) + &m,
            &(&(&t1 * &t2) + &(&t1 * &m)) + &(&t2 * &m),
            &(&t1 * &t2) * &m,
        );
        let c3 = &(&two * &g1) + &lam;
        let c2 = &(&g1.square() + &(&two * &g0)) - &(&lam * &e1);
        let c1 = &(&(&two * &g1) * &g0) + &(&lam * &e2);
        let c0 = &g0.square() - &(&lam * &e3);
        let f = MonicQuartic::new(c3, c2, c1, c0);
        let g = |t: &Rational| &(&t.square() + &(&g1 * t)) + &g0;
        let (y1, y2) = (g(&t1), g(&t2));
        if y1.is_zero() || y2.is_zero() {
            continue;
        }
        let sign = |y: &Rational| {
            if y.is_negative() {
                Sign::Minus
            } else {
                Sign::Plus
            }
        };
        let chord = (sign(&y1), sign(&y2));
        let p1 = CurvePoint::new(&f, t1, y1).expect("constructed on curve");
        let p2 = CurvePoint::new(&f, t2, y2).expect("constructed on curve");
        return Composable {
            f,
            p1,
            p2,
            m,
            chord,
        };
    }
}

#[test]
fn constructions_stay_on_curve_over_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eca_7a11);
    let mut produced = 0;
    for _ in 0..100 {
        let c = composable(&mut rng);
        let on_curve = |p: &CurvePoint| c.f.eval(&p.t) == p.y.square();
        let secants = secant_variants(&c.f, &c.p1, &c.p2);
        assert_eq!(secants.len(), 4);
        for v in &secants {
            if let Ok(Some(p)) = &v.outcome {
                assert!(on_curve(p), "{p:?} off {}", c.f);
                produced += 1;
            }
        }
        let chord = secants.iter().find(|v| v.signs == c.chord);
        let chord = chord.unwrap().outcome.as_ref().unwrap().as_ref().unwrap();
        assert_eq!(chord.t, c.m);
        for p in [&c.p1, &c.p2] {
            for v in tangent_variants(&c.f, p) {
                if let Ok(Some(q)) = &v.outcome {
                    assert!(on_curve(q));
                    produced += 1;
                }
            }
        }
    }
    assert!(produced >= 100);
}

#[test]
fn search_is_independent_of_partitions() {
    let run = |partitions| {
        enumerate_pairs(&SearchConfig {
            bound: 130,
            primitive_only: false,
            partitions,
        })
    };
    let one = run(1);
    for n in [2, 3, 5] {
        let other = run(n);
        assert_eq!(other.pairs, one.pairs);
        assert_eq!(other.triads_enumerated, one.triads_enumerated);
    }
}

#[test]
fn search_pairs_check_out_independently() {
    let report = enumerate_pairs(&SearchConfig::new(175));
    assert!(!report.pairs.is_empty());
    for pair in &report.pairs {
        let l: Vec<i128> = pair.left().values().iter().map(small_i128).collect();
        let r: Vec<i128> = pair.right().values().iter().map(small_i128).collect();
        assert_ne!(l, r);
        assert_eq!(
            l.iter().map(|v| v.pow(4)).sum::<i128>(),
            r.iter().map(|v| v.pow(4)).sum::<i128>()
        );
        assert_eq!(l.iter().product::<i128>(), r.iter().product::<i128>());
    }
    let primitive = enumerate_pairs(&SearchConfig {
        primitive_only: true,
        ..SearchConfig::new(175)
    });
    assert!(primitive.pairs.iter().all(|p| p.is_primitive()));
}
