use std::f64::consts::PI;

use horocycle::farey::{
    counting_bound_check, farey_orbit, index_values, large_index_structure, moment_sum, EmpiricalMeasure,
    Interval,
};
use horocycle::measure::{hall_cdf, roof_pair_measure};
use horocycle::scalar::ratio;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn harmonic_moment_telescopes() {
    for level in [1, 7, 60, 250] {
        let m = EmpiricalMeasure::for_level(level, Interval::unit()).unwrap();
        let got = m.moment_sum(c(-1.0), c(-1.0)).re;
        let want = (level * level) as f64 / m.count() as f64;
        assert!((got - want).abs() <= 1e-12 * want, "Q = {level}");
        assert_eq!(m.roof_sum_exact(), ratio((level * level) as i64, 1));
    }
}

#[test]
fn moment_limits_at_level_1000() {
    let first = moment_sum(1000, Interval::unit(), c(1.0), c(0.0)).unwrap().re;
    let inverse = moment_sum(1000, Interval::unit(), c(-1.0), c(0.0)).unwrap().re;
    assert!((first - 2.0 / 3.0).abs() < 5e-3, "{first}");
    assert!((inverse - 2.0).abs() < 1e-2, "{inverse}");
}

#[test]
fn index_bounds_and_mean() {
    for level in [50, 300] {
        let v = index_values(level, Interval::unit()).unwrap();
        assert!(v.iter().all(|&k| k >= 1 && k <= 2 * level));
    }
    let v = index_values(1000, Interval::unit()).unwrap();
    let mean = v.iter().sum::<u64>() as f64 / v.len() as f64;
    assert!((mean - 3.0).abs() < 1e-2, "{mean}");
}

#[test]
fn index_routes_agree_up_to_300() {
    for level in 1..=300 {
        let m = EmpiricalMeasure::for_level(level, Interval::unit()).unwrap();
        assert_eq!(m.index_values(), m.index_values_via_kappa(), "Q = {level}");
    }
}

#[test]
fn large_indices_have_forced_neighbors() {
    for level in [40, 200, 700] {
        let r = large_index_structure(&farey_orbit(level).unwrap());
        assert!(r.points_checked > 0);
        assert!(r.violations.is_empty(), "Q = {level}: {:?}", &r.violations[..r.violations.len().min(5)]);
    }
}

#[test]
fn gap_statistics_at_level_2000() {
    let m = EmpiricalMeasure::for_level(2000, Interval::unit()).unwrap();
    let single = m.spacing_proportion(0.0, 1.0).unwrap();
    assert!((single - hall_cdf(1.0, 1.0).unwrap()).abs() < 1e-2);
    assert_eq!(m.h_spacing_proportion(&[(0.0, 1.0)]).unwrap(), single);
    assert_eq!(m.h_spacing_proportion(&[(0.0, f64::INFINITY); 3]).unwrap(), 1.0);

    let pair = m.h_spacing_proportion(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
    let roof_window = (0.0, PI * PI / 3.0);
    let limit = roof_pair_measure(roof_window, roof_window, 1e-6).unwrap().value;
    assert!((pair - limit).abs() < 2e-2, "{pair} vs {limit}");

    let density = m.count() as f64 * PI * PI / (3.0 * 2000.0 * 2000.0);
    assert!((density - 1.0).abs() < 1e-2);
}

#[test]
fn spacing_vanishes_below_the_first_kink() {
    for (lo, hi) in [(0.0, 1.0), (0.2, 0.45), (0.9, 0.95)] {
        let iv = Interval::new(lo, hi).unwrap();
        let m = EmpiricalMeasure::for_level(400, iv).unwrap();
        let edge = 3.0 * iv.length() / (PI * PI);
        assert_eq!(m.spacing_proportion(0.0, 0.999 * edge).unwrap(), 0.0);
        assert_eq!(m.spacing_proportion(0.0, f64::INFINITY).unwrap(), 1.0);
    }
}

#[test]
fn counting_bound_examples() {
    assert!(counting_bound_check(100, Interval::new(0.3, 0.31).unwrap()).unwrap());
    for level in [1, 10, 100, 1000] {
        assert!(counting_bound_check(level, Interval::unit()).unwrap());
    }
}

#[test]
fn empty_interval_is_reported() {
    let iv = Interval::new(0.5001, 0.5002).unwrap();
    assert!(EmpiricalMeasure::for_level(10, iv).is_err());
}
