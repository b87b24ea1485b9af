//! Hall's distribution of normalized Farey gaps against the empirical CDF.
//!
//! `cargo run --release --example hall_distribution`

use horocycle::farey::{EmpiricalMeasure, Interval};
use horocycle::measure::{hall_cdf, hall_cdf_quadrature, hall_kinks, QUADRATURE_TOLERANCE};

fn main() -> horocycle::Result<()> {
    let interval = Interval::new(0.0, 0.5)?;
    let m = EmpiricalMeasure::for_level(3000, interval)?;
    let [k1, k2] = hall_kinks(interval.length());
    println!("|I| = {}, N_I(Q) = {}, kinks at {k1:.6} and {k2:.6}", interval.length(), m.count());
    println!("{:>6} {:>12} {:>12} {:>12}", "d", "closed", "quadrature", "empirical");
    for i in 0..=12 {
        let d = 0.25 * i as f64;
        let g = hall_cdf(d, interval.length())?;
        let q = hall_cdf_quadrature(d, interval.length(), QUADRATURE_TOLERANCE)?;
        let e = m.spacing_proportion(0.0, d)?;
        println!("{d:>6.2} {g:>12.8} {:>12.8} {e:>12.8}", q.value);
    }
    Ok(())
}
