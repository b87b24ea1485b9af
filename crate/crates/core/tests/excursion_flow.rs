use horocycle::dynamics::SectionPoint;
use horocycle::excursions::{
    basis_length_at, excursion_averages_with_checkpoints, flat_interval, golden_start, handoff,
    handoff_grid_oracle, peak, vector_length_profile, ExcursionTrace,
};
use horocycle::lattice::shortest_vector_length;
use horocycle::matrix::Matrix2;
use horocycle::measure::excursion_integrals;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng) -> SectionPoint<f64> {
    loop {
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        if let Ok(p) = SectionPoint::new(1.0 - a, 1.0 - b) {
            return p;
        }
    }
}

#[test]
fn shortest_vector_is_a_basis_vector_during_an_excursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let p = random_point(&mut rng);
        let r = p.roof();
        for i in 0..=50 {
            let s = r * i as f64 / 50.0;
            let flowed = &Matrix2::horocycle(&s) * &p.basis();
            let direct = shortest_vector_length(&flowed);
            assert!((direct - basis_length_at(&p, s)).abs() < 1e-9 * direct.max(1.0), "{p} at s = {s}");
        }
    }
}

#[test]
fn handoff_agrees_with_dense_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let p = random_point(&mut rng);
        let (_, best) = handoff_grid_oracle(&p, 20_000);
        let h = handoff(&p);
        assert!(h.peak >= best - 1e-12);
        assert!(h.peak - best < 1e-3 * p.roof(), "{p}");
        assert_eq!(h.peak, peak(&p));
    }
}

#[test]
fn profile_is_flat_around_the_slope() {
    let (lo, hi) = flat_interval(&0.5, &1.0).unwrap();
    assert_eq!((lo, hi), (1.0, 3.0));
    for s in [1.0, 2.0, 3.0] {
        assert_eq!(vector_length_profile(&0.5, &1.0, &s).unwrap(), 0.5);
    }
    assert_eq!(vector_length_profile(&0.5, &1.0, &5.0).unwrap(), 1.5);
    assert_eq!(vector_length_profile(&1.0, &0.0, &0.0).unwrap(), 1.0);
}

#[test]
fn trace_minima_are_first_coordinates() {
    let trace = ExcursionTrace::run(&golden_start(), 1000).unwrap();
    let mut p = golden_start();
    for i in 0..trace.len() {
        assert_eq!(trace.minima_lengths[i], *p.a());
        assert_eq!(trace.maxima_lengths[i], peak(&p));
        assert!(trace.maxima_lengths[i] >= trace.minima_lengths[i]);
        p = p.bcz_step().unwrap();
    }
}

#[test]
fn golden_averages_settle() {
    let (last, checkpoints) = excursion_averages_with_checkpoints(&golden_start(), 200_000, 50_000).unwrap();
    assert_eq!(checkpoints.len(), 4);
    assert_eq!(checkpoints[3], last);
    let (inv, max) = excursion_integrals();
    assert!((last.a_n - 2.0).abs() < 0.02);
    assert!((last.l_n - 2.0 / 3.0).abs() < 0.01);
    assert!((last.big_a_n - inv).abs() < 0.01);
    assert!((last.big_l_n - max).abs() < 0.01);
}
