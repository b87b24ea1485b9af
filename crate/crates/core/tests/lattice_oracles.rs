use horocycle::farey::{farey_bruteforce, farey_cardinality};
use horocycle::lattice::{
    first_section_hit, gap_distribution, shortest_vector_length, slope_gaps_via_bcz, strip_slopes_bruteforce,
    UnimodularBasis,
};
use horocycle::matrix::Matrix2;
use horocycle::scalar::ratio;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

type Q = BigRational;

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn farey_start(level: i64) -> UnimodularBasis<Q> {
    UnimodularBasis::new(Matrix2::upper_triangular(&ratio(1, level), &int(1))).unwrap()
}

#[test]
fn diagonal_flow_of_the_integer_lattice_gives_scaled_farey_fractions() {
    let level = 4;
    let g = UnimodularBasis::from_entries(ratio(1, level), int(0), int(0), int(level)).unwrap();
    let limit = int(level * level) - ratio(1, 1000);
    let slopes = strip_slopes_bruteforce(&g, &int(1), &limit).unwrap().slopes;
    let expected: Vec<Q> = farey_bruteforce(level as u64)
        .fractions()
        .map(|(p, q)| ratio(level * level * p as i64, q as i64))
        .collect();
    assert_eq!(slopes, expected);
}

#[test]
fn farey_lattice_gaps_cycle_with_period_n() {
    for level in [3i64, 5, 8] {
        let n = farey_cardinality(level as u64) as usize;
        let series = slope_gaps_via_bcz(&farey_start(level), &int(1), 2 * n as u64).unwrap();
        assert_eq!(series.slopes[0], int(0));
        let first: Q = series.gaps[..n].iter().cloned().fold(Q::zero(), |a, g| a + g);
        assert_eq!(first, int(level * level));
        assert_eq!(series.gaps[..n], series.gaps[n..2 * n]);
    }
}

#[test]
fn vertically_short_lattices_are_refused() {
    let b = farey_start(5);
    assert!(b.has_short_vertical(&ratio(1, 5)));
    assert!(!b.has_short_vertical(&ratio(1, 4)));
    assert!(first_section_hit(&b, &ratio(1, 6)).is_err());
    let irrational = UnimodularBasis::from_entries(1.0, 2f64.sqrt(), 0.0, 1.0).unwrap();
    assert!(!irrational.has_short_vertical(&1.0));
}

#[test]
fn first_hit_yields_a_short_horizontal_vector() {
    // Rational rotations from Pythagorean triples, composed with a diagonal and a shear.
    for (p, q, h) in [(3i64, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)] {
        let c = ratio(p, h);
        let s = ratio(q, h);
        let rot = Matrix2::new([[c.clone(), -s.clone()], [s, c]]);
        let diag = Matrix2::new([[ratio(2, 3), int(0)], [int(0), ratio(3, 2)]]);
        let shear = Matrix2::new([[int(1), ratio(1, 7)], [int(0), int(1)]]);
        let basis = UnimodularBasis::new(&(&rot * &diag) * &shear).unwrap();
        for t in [int(1), ratio(3, 2), ratio(1, 2)] {
            let (s1, point) = first_section_hit(&basis, &t).unwrap();
            assert!(s1 >= Q::zero());
            let flowed = basis.flow(&s1);
            let [[_, _], [g21, g22]] = &flowed.matrix().entries;
            // Coefficients of (x, 0) in the flowed basis must be integers.
            let x = point.x().clone();
            let i = g22.clone() * x.clone();
            let j = -(g21.clone() * x.clone());
            assert!(i.is_integer() && j.is_integer(), "t = {t}");
            assert!(x > Q::zero() && x <= t);
        }
    }
}

#[test]
fn gap_windows() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let b = UnimodularBasis::from_entries(1.0, phi, 0.0, 1.0).unwrap();
    assert_eq!(gap_distribution(&b, &1.0, 5000, 0.0, f64::INFINITY).unwrap(), 1.0);
    assert_eq!(gap_distribution(&b, &1.0, 5000, 0.0, 1.0).unwrap(), 0.0);
    let t = 2.0;
    let series = slope_gaps_via_bcz(&b, &t, 5000).unwrap();
    assert!(series.gaps.iter().all(|g| g * t * t >= 1.0 - 1e-12));
}

#[test]
fn bcz_matches_enumeration_on_a_thousand_slopes() {
    let basis = UnimodularBasis::from_entries(ratio(5, 7), ratio(-2, 9), ratio(3, 11), ratio(217, 165)).unwrap();
    for t in [int(1), ratio(5, 2)] {
        let bcz = slope_gaps_via_bcz(&basis, &t, 1000).unwrap();
        let brute = strip_slopes_bruteforce(&basis, &t, bcz.slopes.last().unwrap()).unwrap();
        assert_eq!(brute.slopes, bcz.slopes);
    }
}

#[test]
fn shortest_vector_of_a_flowed_section_lattice() {
    let p = Matrix2::upper_triangular(&0.8, &0.7);
    assert!((shortest_vector_length(&p) - 0.8).abs() < 1e-15);
    let flowed = &Matrix2::horocycle(&(1.0 / 0.56)) * &p;
    assert!((shortest_vector_length(&flowed) - 0.7).abs() < 1e-12);
}
