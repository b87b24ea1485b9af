//! Slope gaps of lattice vectors in a vertical strip, generated by the
//! scaled BCZ map and checked against direct enumeration.
//!
//! `cargo run --release --example slope_gaps`

use horocycle::farey::farey_cardinality;
use horocycle::lattice::{slope_gaps_via_bcz, strip_slopes_bruteforce, UnimodularBasis};
use horocycle::measure::roof_region_measure;
use horocycle::scalar::ratio;
use num_rational::BigRational;

fn main() -> horocycle::Result<()> {
    // ℤ² in the strip of width 25: the gap cycle is Farey-periodic.
    let t = ratio(25, 1);
    let z2 = UnimodularBasis::<BigRational>::identity();
    let n = farey_cardinality(25);
    let series = slope_gaps_via_bcz(&z2, &t, 2 * n)?;
    let brute = strip_slopes_bruteforce(&z2, &t, series.slopes.last().unwrap())?;
    println!("ℤ², t = 25: {} slopes, equal to enumeration: {}", series.slopes.len(), brute.slopes == series.slopes);
    println!("first gaps: {:?}", series.gaps.iter().take(6).map(|g| g.to_string()).collect::<Vec<_>>());
    println!("period N(25) = {n}: {}", series.gaps[..n as usize] == series.gaps[n as usize..]);

    // A golden shear has no vertical vector, so its gaps equidistribute.
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let golden = UnimodularBasis::from_entries(1.0, phi, 0.0, 1.0)?;
    let long = slope_gaps_via_bcz(&golden, &1.0, 1_000_000)?;
    for (c, d) in [(1.0, 2.0), (2.0, 4.0), (4.0, 16.0)] {
        println!(
            "gaps in ({c}, {d}): {:.5}, m(R⁻¹) = {:.5}",
            long.gap_proportion(c, d),
            roof_region_measure(c, d)?.value
        );
    }
    Ok(())
}
