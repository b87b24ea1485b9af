//! Farey indices `ν(γ_i) = (q_{i−1} + q_{i+1})/q_i` and their moments.
//!
//! `cargo run --release --example index_statistics -- 2000`

use horocycle::farey::{large_index_structure, EmpiricalMeasure, Interval};
use horocycle::measure::{kappa_moment, tile_measure};
use horocycle::scalar::Scalar;

fn main() -> horocycle::Result<()> {
    let level: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let m = EmpiricalMeasure::for_level(level, Interval::unit())?;
    let index = m.index_values();
    assert_eq!(index, m.index_values_via_kappa());
    let n = index.len() as f64;

    println!("Q = {level}: {} fractions, max index {}", index.len(), index.iter().max().unwrap());
    for k in 1..=6u64 {
        let freq = index.iter().filter(|&&v| v == k).count() as f64 / n;
        println!("  ν = {k}: frequency {freq:.6}, m(Ω_{k}) = {:.6}", tile_measure(k)?.to_f64());
    }
    for alpha in [0.5, 1.0, 1.5] {
        let mean = index.iter().map(|&v| (v as f64).powf(alpha)).sum::<f64>() / n;
        println!("  mean ν^{alpha} = {mean:.6}, limit {:.6}", kappa_moment(alpha)?);
    }
    let report = large_index_structure(m.sequence());
    println!("large-index neighborhoods: {} checked, {} violations", report.points_checked, report.violations.len());
    Ok(())
}
