use horocycle::dynamics::{
    in_tile, kappa_of, reduce_to_scaled, reduce_to_section, verify_return_identity, GridPoint, SectionPoint,
};
use horocycle::excursions::{handoff, peak, ExcursionTrace};
use horocycle::farey::{farey_bruteforce, farey_orbit};
use horocycle::lattice::{slope_gaps_via_bcz, strip_slopes_bruteforce, UnimodularBasis};
use horocycle::measure::{hall_cdf, roof_region_measure};
use horocycle::periodic::periodic_report;
use horocycle::scalar::{ratio, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

type Q = BigRational;

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn unit_ratio() -> impl Strategy<Value = Q> {
    (1i64..=100_000).prop_flat_map(|d| (1..=d).prop_map(move |n| ratio(n, d)))
}

fn exact_point() -> impl Strategy<Value = SectionPoint<Q>> {
    (unit_ratio(), unit_ratio()).prop_map(|(a, u)| {
        let b = int(1) - &a * (int(1) - u);
        SectionPoint::new(a, b).unwrap()
    })
}

fn small_point() -> impl Strategy<Value = SectionPoint<Q>> {
    (2i64..=40).prop_flat_map(|d| {
        (1..=d, 1..=d)
            .prop_filter("inside the section", move |(x, y)| x + y > d)
            .prop_map(move |(x, y)| SectionPoint::new(ratio(x, d), ratio(y, d)).unwrap())
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn max(x: Q, y: Q) -> Q {
    if x > y {
        x
    } else {
        y
    }
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn step_stays_in_section_and_matches_matrix(p in exact_point()) {
        let image = p.bcz_step().unwrap();
        prop_assert!(SectionPoint::new(image.a().clone(), image.b().clone()).is_ok());
        let (x, y) = p.step_matrix().act_on_row(p.a(), p.b());
        prop_assert_eq!((&x, &y), (image.a(), image.b()));
        prop_assert_eq!(p.step_matrix(), horocycle::matrix::IntMatrix2::step(p.kappa()));
    }

    #[test]
    fn tiles_partition_the_section(p in exact_point()) {
        let k = p.kappa();
        prop_assert!(k >= 1);
        prop_assert_eq!(kappa_of(p.a(), p.b()).unwrap(), k);
        for j in k.saturating_sub(2).max(1)..=k + 2 {
            prop_assert_eq!(in_tile(&p, j), j == k);
        }
    }

    #[test]
    fn return_identity(p in exact_point()) {
        prop_assert!(verify_return_identity(&p));
    }

    #[test]
    fn scaling_conjugates_the_maps(p in exact_point(), tn in 1i64..500, td in 1i64..500) {
        let t = ratio(tn, td);
        let lhs = p.scale(&t).unwrap().t_bcz_step().unwrap();
        let rhs = p.bcz_step().unwrap().scale(&t).unwrap();
        prop_assert_eq!(lhs.unscale(), p.bcz_step().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_lands_in_the_section(a in unit_ratio(), bn in -10_000_000i64..10_000_000, bd in 1i64..100_000) {
        let b_raw = ratio(bn, bd);
        let (p, shift) = reduce_to_section(a.clone(), b_raw.clone()).unwrap();
        prop_assert_eq!(p.a(), &a);
        prop_assert_eq!(p.b().clone(), &b_raw + &a * Q::from_integer(shift));
        prop_assert!(SectionPoint::new(p.a().clone(), p.b().clone()).is_ok());
    }

    #[test]
    fn scaled_reduction_lands_in_scaled_section(a in unit_ratio(), bn in -1_000_000i64..1_000_000, t in 1i64..50) {
        let t = int(t);
        let a = &a * &t;
        let (p, _) = reduce_to_scaled(a, ratio(bn, 7), t.clone()).unwrap();
        prop_assert!(p.x() > &int(0) && p.y() > &int(0) && p.y() <= &t && p.x().clone() + p.y().clone() > t);
    }

    #[test]
    fn grid_points_follow_the_rational_map((x, y) in (1u64..=1000).prop_flat_map(|x| (Just(x), 1001 - x..=1000))) {
        let g = GridPoint::new(x, y, 1000).unwrap();
        let exact = g.to_rational();
        prop_assert_eq!(g.kappa(), exact.kappa());
        prop_assert_eq!(g.step().to_rational(), exact.bcz_step().unwrap());
        prop_assert_eq!(g.roof(), exact.roof());
    }

    #[test]
    fn rational_points_obey_the_structure_theorem(p in small_point()) {
        let r = periodic_report(&p).unwrap();
        prop_assert!(r.matches_theorem(), "{:?}", r);
        prop_assert_eq!(p.iterate(r.discrete_period).unwrap(), p);
    }

    #[test]
    fn hall_cdf_is_monotone(d1 in 0.0f64..10.0, d2 in 0.0f64..10.0, len in 0.01f64..=1.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(hall_cdf(lo, len).unwrap() <= hall_cdf(hi, len).unwrap() + 1e-15);
    }

    #[test]
    fn roof_measure_is_additive(c in 0.0f64..20.0, w1 in 0.0f64..20.0, w2 in 0.0f64..20.0) {
        let whole = roof_region_measure(c, c + w1 + w2).unwrap().value;
        let parts = roof_region_measure(c, c + w1).unwrap().value + roof_region_measure(c + w1, c + w1 + w2).unwrap().value;
        prop_assert!((whole - parts).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(config(10_000))]

    #[test]
    fn handoff_peak_is_the_common_length(p in exact_point()) {
        let h = handoff(&p);
        let (a, b) = (p.a().clone(), p.b().clone());
        let s = h.time.clone();
        prop_assert!(s >= int(0) && s <= p.roof());
        let first = max(a.clone(), &s * &a);
        let second = max(b.clone(), (a.recip() - &s * &b).abs());
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(&first, &h.peak);
        prop_assert_eq!(h.peak, peak(&p));
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn excursion_minima_gaps_are_roofs(p in exact_point(), n in 1u64..40) {
        let trace = ExcursionTrace::run(&p, n).unwrap();
        let mut q = p.clone();
        for w in trace.minima_times.windows(2) {
            prop_assert_eq!(w[1].clone() - w[0].clone(), q.roof());
            q = q.bcz_step().unwrap();
        }
        prop_assert_eq!(&trace.minima_lengths[0], p.a());
    }

    #[test]
    fn farey_orbit_matches_bruteforce(level in 1u64..=150) {
        let orbit = farey_orbit(level).unwrap();
        let brute = farey_bruteforce(level);
        prop_assert_eq!(orbit.denominators(), brute.denominators());
        prop_assert!(orbit.check_neighbor_identities().is_ok());
    }

    #[test]
    fn bcz_slopes_match_enumeration(
        steps in proptest::collection::vec(1u64..5, 1..4),
        scale_n in 1i64..6, scale_d in 1i64..6,
        shear_n in -20i64..20, shear_d in 1i64..20,
        tn in 1i64..8, td in 1i64..4,
    ) {
        // g = A · diag(λ, 1/λ) · [[1, σ], [0, 1]] with A a product of step matrices.
        let mut a = horocycle::matrix::IntMatrix2::identity();
        for k in &steps {
            a = &a * &horocycle::matrix::IntMatrix2::step(*k);
        }
        let lambda = ratio(scale_n, scale_d);
        let sigma = ratio(shear_n, shear_d);
        let diag = horocycle::matrix::Matrix2::new([[lambda.clone(), int(0)], [int(0), lambda.recip()]]);
        let shear = horocycle::matrix::Matrix2::new([[int(1), sigma], [int(0), int(1)]]);
        let g = &(&a.to_scalar::<Q>() * &diag) * &shear;
        let basis = UnimodularBasis::new(g).unwrap();
        let t = ratio(tn, td);
        prop_assume!(basis.vertical_vector().map_or(true, |y| y * t.clone() >= int(1)));
        let bcz = slope_gaps_via_bcz(&basis, &t, 30).unwrap();
        let brute = strip_slopes_bruteforce(&basis, &t, bcz.slopes.last().unwrap()).unwrap();
        prop_assert_eq!(&brute.slopes, &bcz.slopes);
        prop_assert!(bcz.gaps.iter().all(|g| g.clone() * t.clone() * t.clone() >= int(1)));
    }
}
