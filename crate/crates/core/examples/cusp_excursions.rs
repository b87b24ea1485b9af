//! Excursions into the cusp along a golden-slope horocycle.
//!
//! `cargo run --release --example cusp_excursions -- 1000000`

use horocycle::excursions::{excursion_averages_with_checkpoints, golden_start, handoff, ExcursionTrace};
use horocycle::measure::excursion_integrals;

fn main() -> horocycle::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let start = golden_start();

    let trace = ExcursionTrace::run(&start, 5)?;
    let mut p = start.clone();
    for i in 0..trace.len() {
        let h = handoff(&p);
        println!(
            "visit at s = {:.6}: ℓ = {:.6}, peak {:.6} at +{:.6} ({:?})",
            trace.minima_times[i], trace.minima_lengths[i], h.peak, h.time, h.case
        );
        p = p.bcz_step()?;
    }

    let (last, checkpoints) = excursion_averages_with_checkpoints(&start, n, (n / 5).max(1))?;
    println!("{:>9} {:>10} {:>10} {:>10} {:>10}", "N", "a_N", "l_N", "A_N", "L_N");
    let tail = (checkpoints.last() != Some(&last)).then_some(&last);
    for c in checkpoints.iter().chain(tail) {
        println!("{:>9} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", c.steps, c.a_n, c.l_n, c.big_a_n, c.big_l_n);
    }
    let (inv, max) = excursion_integrals();
    println!("limits: 2, 2/3, {inv:.6}, {max:.6}");
    Ok(())
}
