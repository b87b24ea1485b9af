//! Periods and cocycles of rational-slope points.
//!
//! `cargo run --example periodic_segments -- 2 3`

use horocycle::periodic::{
    hierarchy_report, period_on_segment, periodic_report, segment_bounds, shear_conjugation_check,
};
use horocycle::scalar::ratio;
use horocycle::SectionPoint;
use num_rational::BigRational;

fn main() -> horocycle::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>());
    let k = args.next().and_then(|r| r.ok()).unwrap_or(2);
    let l = args.next().and_then(|r| r.ok()).unwrap_or(3);

    println!("slope {k}/{l}");
    for r in 1..=k {
        let (lo, hi) = segment_bounds(k, l, r)?;
        let a: BigRational = (&lo + &hi) / ratio(2, 1);
        let p = SectionPoint::new(a.clone(), &a * ratio(k as i64, l as i64))?;
        let rep = periodic_report(&p)?;
        println!(
            "  a ∈ ({lo}, {hi}]: sample a = {a}, P = {} (predicted {}), s = {}, A_P = {}",
            rep.discrete_period,
            period_on_segment(k, l, r)?,
            rep.continuous_period,
            rep.cocycle_matrix
        );
    }
    let shear = shear_conjugation_check(k, l)?;
    println!("conjugated matrix: {:?} (holds: {})", shear.conjugate.entries, shear.holds);

    println!("period hierarchy of (t, t/Q):");
    for rec in hierarchy_report(8)? {
        println!(
            "  Q = {}: period {} on all samples: {}, jump to Q+1 = {} (φ = {})",
            rec.level,
            rec.expected_period,
            rec.samples.iter().all(|(_, p)| *p == rec.expected_period),
            rec.jump,
            rec.totient_next
        );
    }
    Ok(())
}
