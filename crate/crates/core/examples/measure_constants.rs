//! Integrals over the Farey triangle, each by closed form and by quadrature.

use horocycle::measure::{
    excursion_integrals, excursion_integrals_quadrature, kappa_moment, moment_integral,
    moment_integral_quadrature, roof_integral, roof_integral_quadrature, roof_integral_series,
    roof_power_integral, roof_power_truncated, tile_measure, tile_partition_sum,
};
use num_complex::Complex64;

fn main() -> horocycle::Result<()> {
    for k in 1..=5 {
        println!("m(Ω_{k}) = {}", tile_measure(k)?);
    }
    let (partial, tail) = tile_partition_sum(1_000_000);
    println!("Σ m(Ω_k) = {partial:.15} + tail {tail:.3e}");

    println!(
        "∫R dm: π²/3 = {:.12}, series {:.12}, quadrature {:.12}",
        roof_integral(),
        roof_integral_series(),
        roof_integral_quadrature(1e-11).value
    );
    for (s, t) in [(1.0, 0.0), (0.0, 0.0), (2.0, 3.0), (-0.5, -0.5)] {
        let b = moment_integral(Complex64::new(s, 0.0), Complex64::new(t, 0.0))?;
        println!("B_{{{s},{t}}} = {:.12} (quadrature {:.12})", b.re, moment_integral_quadrature(s, t, 1e-12).value);
    }
    for p in [1.5, 1.9, 2.0] {
        let ladder: Vec<String> = (2..=6)
            .map(|e| format!("{:.4}", roof_power_truncated(p, 10f64.powi(e), 1e-10).value))
            .collect();
        let limit = roof_power_integral(p).map(|v| format!("{v:.4}")).unwrap_or_else(|e| e.to_string());
        println!("∫_{{R ≤ 10^e}} R^{p} dm, e = 2..6: {}; limit {limit}", ladder.join(", "));
    }
    for alpha in [0.5, 1.0, 1.5] {
        println!("∫κ^{alpha} dm = {:.10}", kappa_moment(alpha)?);
    }
    let (inv, max) = excursion_integrals();
    let (qi, qm) = excursion_integrals_quadrature(1e-11);
    println!("∫1/M dm = {inv:.10} (quadrature {:.10}), ∫M dm = {max:.10} (quadrature {:.10})", qi.value, qm.value);
    Ok(())
}
