//! Farey sequences as periodic BCZ orbits.
//!
//! `cargo run --example farey_orbit -- 8`

use horocycle::dynamics::OrbitTrace;
use horocycle::farey::{farey_bruteforce, farey_cardinality, farey_orbit, EmpiricalMeasure, Interval};
use horocycle::scalar::ratio;
use horocycle::SectionPoint;

fn main() -> horocycle::Result<()> {
    let level: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);

    let orbit = farey_orbit(level)?;
    println!("F({level}) has N = {} fractions", farey_cardinality(level));
    for (i, (p, q)) in orbit.fractions().enumerate() {
        let point = orbit.support_point(i);
        println!(
            "  {p:>3}/{q:<3}  point ({}/{level}, {}/{level})  R = {}  κ = {}",
            point.x,
            point.y,
            point.roof(),
            point.kappa()
        );
    }
    assert_eq!(orbit.denominators(), farey_bruteforce(level).denominators());

    // The same orbit in exact rational arithmetic, closing after N steps.
    let start = SectionPoint::new(ratio(1, level as i64), ratio(1, 1))?;
    let trace = OrbitTrace::run(&start, farey_cardinality(level))?;
    println!("T^N(1/Q, 1) = {}", trace.points.last().unwrap());
    println!("flow time over one period = {}", trace.flow_time());

    let m = EmpiricalMeasure::for_level(level, Interval::unit())?;
    println!("exact Σ R = {}", m.roof_sum_exact());
    Ok(())
}
