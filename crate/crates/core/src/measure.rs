//! Integrals against the invariant probability measure `m = 2 da db` on `Ω`.
//!
//! Closed forms come with quadrature counterparts so that each can serve as
//! the other's regression oracle.

use std::f64::consts::{PI, SQRT_2};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_omega, integrate_omega_log, Estimate};
use crate::scalar::CompensatedSum;
use crate::special::{hurwitz_zeta, ln_gamma};

/// How a [`RegionMeasureResult`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionMeasureResult {
    pub value: f64,
    pub method: Method,
    /// Zero for closed forms.
    pub estimated_error: f64,
}

impl RegionMeasureResult {
    fn closed(value: f64) -> Self {
        Self {
            value: value.clamp(0.0, 1.0),
            method: Method::ClosedForm,
            estimated_error: 0.0,
        }
    }

    fn quadrature(e: Estimate) -> Self {
        Self {
            value: e.value.clamp(0.0, 1.0),
            method: Method::Quadrature,
            estimated_error: e.error,
        }
    }
}

/// Default absolute tolerance of the quadrature oracles.
pub const QUADRATURE_TOLERANCE: f64 = 1e-11;

/// `m(Ω_k)`: `1/3` for `k = 1`, `8/(k(k+1)(k+2))` otherwise.
pub fn tile_measure(k: u64) -> Result<BigRational> {
    match k {
        0 => Err(Error::InvalidArgument("tiles are indexed from 1".into())),
        1 => Ok(BigRational::new(1.into(), 3.into())),
        _ => {
            let k = BigInt::from(k);
            Ok(BigRational::new(
                8.into(),
                &k * (&k + 1u32) * (&k + 2u32),
            ))
        }
    }
}

/// `Σ_{k ≤ K} m(Ω_k)` in floating point, and the exact remainder
/// `Σ_{k > K} m(Ω_k) = 4/((K+1)(K+2))`.
pub fn tile_partition_sum(max_k: u64) -> (f64, f64) {
    let mut sum = CompensatedSum::new();
    if max_k >= 1 {
        sum.add(1.0 / 3.0);
    }
    for k in 2..=max_k {
        let k = k as f64;
        sum.add(8.0 / (k * (k + 1.0) * (k + 2.0)));
    }
    let k = max_k as f64;
    (sum.value(), 4.0 / ((k + 1.0) * (k + 2.0)))
}

/// Lebesgue area of `{(a, b) ∈ Ω : ab > u}`.
///
/// For `u ≥ 1/4` the hyperbola `ab = u` meets only the sides `a = 1` and
/// `b = 1`; below `1/4` it also crosses the diagonal `a + b = 1` at the
/// roots `a₁ < a₂` of `a(1 − a) = u`.
pub fn area_above_hyperbola(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.5;
    }
    if u >= 1.0 {
        return 0.0;
    }
    if u >= 0.25 {
        1.0 - u + u * u.ln()
    } else {
        let root = (1.0 - 4.0 * u).sqrt();
        let a2 = 0.5 * (1.0 + root);
        1.0 - u - 0.5 * root + 2.0 * u * a2.ln()
    }
}

/// `m(R⁻¹(c, d)) = m({1/d < ab < 1/c})`, closed form.
pub fn roof_region_measure(c: f64, d: f64) -> Result<RegionMeasureResult> {
    check_window(c, d)?;
    let upper = if c == 0.0 { 0.0 } else { area_above_hyperbola(1.0 / c) };
    let lower = if d.is_infinite() { 0.5 } else { area_above_hyperbola(1.0 / d) };
    Ok(RegionMeasureResult::closed(2.0 * (lower - upper)))
}

/// `m(R⁻¹(c, d))` by nested adaptive quadrature.
pub fn roof_region_measure_quadrature(c: f64, d: f64, tol: f64) -> Result<RegionMeasureResult> {
    check_window(c, d)?;
    let levels: Vec<f64> = [c, d]
        .iter()
        .filter(|r| **r > 0.0 && r.is_finite())
        .map(|r| 1.0 / r)
        .collect();
    let mut outer = Vec::new();
    for &u in &levels {
        outer.push(u);
        if u < 0.25 {
            let root = (1.0 - 4.0 * u).sqrt();
            outer.push(0.5 * (1.0 - root));
            outer.push(0.5 * (1.0 + root));
        }
    }
    let e = integrate_omega(
        |a, b| {
            let r = 1.0 / (a * b);
            if c < r && r < d {
                2.0
            } else {
                0.0
            }
        },
        |a| levels.iter().map(|u| u / a).collect(),
        &outer,
        tol,
    );
    Ok(RegionMeasureResult::quadrature(e))
}

fn check_window(c: f64, d: f64) -> Result<()> {
    if c.is_nan() || d.is_nan() || c < 0.0 || c > d {
        Err(Error::InvalidArgument(format!(
            "roof window ({c}, {d}) must satisfy 0 <= c <= d"
        )))
    } else {
        Ok(())
    }
}

/// Rescaling between normalized Farey gaps and roof values: a normalized gap
/// `d` corresponds to `R = π²d/(3|I|)`.
pub fn gap_to_roof(d: f64, interval_length: f64) -> f64 {
    PI * PI * d / (3.0 * interval_length)
}

/// Hall's distribution function `G(d) = m(R⁻¹(0, π²d/(3|I|)))`.
pub fn hall_cdf(d: f64, interval_length: f64) -> Result<f64> {
    check_hall(d, interval_length)?;
    Ok(roof_region_measure(0.0, gap_to_roof(d, interval_length))?.value)
}

pub fn hall_cdf_quadrature(d: f64, interval_length: f64, tol: f64) -> Result<RegionMeasureResult> {
    check_hall(d, interval_length)?;
    roof_region_measure_quadrature(0.0, gap_to_roof(d, interval_length), tol)
}

fn check_hall(d: f64, len: f64) -> Result<()> {
    if !(d >= 0.0) || !(len > 0.0 && len <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "hall_cdf needs d >= 0 and interval length in (0, 1], got d = {d}, |I| = {len}"
        )));
    }
    Ok(())
}

/// Abscissae where Hall's distribution is not differentiable: `R = 1` and
/// `R = 4`.
pub fn hall_kinks(interval_length: f64) -> [f64; 2] {
    let unit = 3.0 * interval_length / (PI * PI);
    [unit, 4.0 * unit]
}

/// `m` of `{R ∈ first, R∘T ∈ second}`, by nested quadrature. Used as the
/// limit of two-step spacing statistics.
pub fn roof_pair_measure(first: (f64, f64), second: (f64, f64), tol: f64) -> Result<RegionMeasureResult> {
    check_window(first.0, first.1)?;
    check_window(second.0, second.1)?;
    const MAX_TILE: u64 = 400;
    let inside = |r: f64, w: (f64, f64)| w.0 < r && r < w.1;
    let f = |a: f64, b: f64| {
        let k = ((1.0 + a) / b).floor();
        let next = k * b - a;
        if inside(1.0 / (a * b), first) && inside(1.0 / (b * next), second) {
            2.0
        } else {
            0.0
        }
    };
    let breaks = |a: f64| {
        let mut v = Vec::new();
        for r in [first.0, first.1] {
            if r > 0.0 && r.is_finite() {
                v.push(1.0 / (r * a));
            }
        }
        let kmin = ((1.0 + a).floor() as u64).max(1);
        let kmax = (((1.0 + a) / (1.0 - a)).floor() as u64).min(MAX_TILE);
        for k in kmin..=kmax {
            let kf = k as f64;
            v.push((1.0 + a) / kf);
            // b(kb − a) = 1/r on tile k
            for r in [second.0, second.1] {
                if r > 0.0 && r.is_finite() {
                    v.push((a + (a * a + 4.0 * kf / r).sqrt()) / (2.0 * kf));
                }
            }
        }
        v
    };
    let e = integrate_omega(f, breaks, &[], tol);
    Ok(RegionMeasureResult::quadrature(e))
}

/// `∫_Ω R dm = π²/3`.
pub fn roof_integral() -> f64 {
    PI * PI / 3.0
}

/// `∫_Ω R dm` as the series `2 Σ 1/n²`, summed directly to 10⁴ terms with
/// the Hurwitz tail.
pub fn roof_integral_series() -> f64 {
    const N: u64 = 10_000;
    let mut s = CompensatedSum::new();
    for n in (1..=N).rev() {
        let n = n as f64;
        s.add(1.0 / (n * n));
    }
    s.add(hurwitz_zeta(2.0, (N + 1) as f64));
    2.0 * s.value()
}

/// Quadrature of `∫_Ω R dm` in logarithmic coordinates, where `R da db`
/// becomes `dx dy`.
pub fn roof_integral_quadrature(tol: f64) -> Estimate {
    integrate_omega_log(|_, _| 2.0, |_| vec![], LOG_SPAN, tol)
}

// Beyond x = 40 the region has area below e^{-40}.
const LOG_SPAN: f64 = 40.0;

/// `∫_{R ≤ L} R^p dm` by quadrature; as `L → ∞` this converges iff `p < 2`.
pub fn roof_power_truncated(p: f64, cutoff: f64, tol: f64) -> Estimate {
    let log_cut = cutoff.ln();
    integrate_omega_log(
        |x, y| {
            let s = x + y;
            if s <= log_cut {
                2.0 * ((p - 1.0) * s).exp()
            } else {
                0.0
            }
        },
        |x| vec![log_cut - x],
        log_cut.min(LOG_SPAN),
        tol,
    )
}

/// `∫_Ω R^p dm = B_{-p,-p}` for `0 ≤ p < 2`.
pub fn roof_power_integral(p: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&p) {
        return Err(Error::Pole {
            s: format!("{}", -p),
            t: format!("{}", -p),
        });
    }
    if (p - 1.0).abs() < 1e-12 {
        return Ok(roof_integral());
    }
    let s = Complex64::new(-p, 0.0);
    Ok(beta_formula(s, s).re)
}

/// `B_{s,t} = ∫_Ω a^s b^t dm = 2(1/((s+1)(t+1)) − Γ(s+1)Γ(t+1)/Γ(s+t+3))`.
///
/// Defined for `Re s, Re t > −1`, plus the limits `B_{−1,0} = B_{0,−1} = 2`
/// and `B_{−1,−1} = π²/3`.
pub fn moment_integral(s: Complex64, t: Complex64) -> Result<Complex64> {
    let is = |z: Complex64, re: f64| z.im == 0.0 && z.re == re;
    if is(s, -1.0) && is(t, -1.0) {
        return Ok(Complex64::new(roof_integral(), 0.0));
    }
    if (is(s, -1.0) && is(t, 0.0)) || (is(s, 0.0) && is(t, -1.0)) {
        return Ok(Complex64::new(2.0, 0.0));
    }
    if !(s.re > -1.0 && t.re > -1.0) {
        return Err(Error::Pole {
            s: s.to_string(),
            t: t.to_string(),
        });
    }
    Ok(beta_formula(s, t))
}

fn beta_formula(s: Complex64, t: Complex64) -> Complex64 {
    let g = (ln_gamma(s + 1.0) + ln_gamma(t + 1.0) - ln_gamma(s + t + 3.0)).exp();
    2.0 * (1.0 / ((s + 1.0) * (t + 1.0)) - g)
}

/// `∫∫_Ω a^s b^t dm` for real exponents, by quadrature.
pub fn moment_integral_quadrature(s: f64, t: f64, tol: f64) -> Estimate {
    integrate_omega(|a, b| 2.0 * a.powf(s) * b.powf(t), |_| vec![], &[], tol)
}

/// `∫_Ω κ^α dm = Σ_k k^α m(Ω_k)` for `0 < α < 2`.
///
/// Summed directly to `k = 1000`; the tail uses
/// `1/((k+1)(k+2)) = Σ_j (−1)^j (2^{j+1} − 1) k^{−j−2}` and Hurwitz zeta.
pub fn kappa_moment(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidArgument(format!(
            "kappa moment diverges or is undefined for alpha = {alpha}; need 0 < alpha < 2"
        )));
    }
    const K: u64 = 1000;
    let mut s = CompensatedSum::new();
    for k in (2..=K).rev() {
        let k = k as f64;
        s.add(8.0 * k.powf(alpha) / (k * (k + 1.0) * (k + 2.0)));
    }
    let q = (K + 1) as f64;
    let mut sign = 1.0;
    for j in 0..12 {
        let c = sign * (2f64.powi(j + 1) - 1.0);
        s.add(8.0 * c * hurwitz_zeta(f64::from(j) + 3.0 - alpha, q));
        sign = -sign;
    }
    s.add(1.0 / 3.0);
    Ok(s.value())
}

/// The upper bound `1/3 + 8ζ(3 − α)` on [`kappa_moment`].
pub fn kappa_moment_bound(alpha: f64) -> f64 {
    1.0 / 3.0 + 8.0 * hurwitz_zeta(3.0 - alpha, 1.0)
}

/// The excursion peak `M(a, b) = max(a, b, 1/(a + b))`.
pub fn peak(a: f64, b: f64) -> f64 {
    a.max(b).max(1.0 / (a + b))
}

/// `(∫ (1/M) dm, ∫ M dm) = ((2/3)(13 − 8√2), (2/3)(7 − 4√2))`.
pub fn excursion_integrals() -> (f64, f64) {
    (
        2.0 / 3.0 * (13.0 - 8.0 * SQRT_2),
        2.0 / 3.0 * (7.0 - 4.0 * SQRT_2),
    )
}

/// Quadrature counterparts of [`excursion_integrals`].
pub fn excursion_integrals_quadrature(tol: f64) -> (Estimate, Estimate) {
    let breaks = |a: f64| vec![a, 1.0 / a - a, 0.5 * ((a * a + 4.0).sqrt() - a)];
    let outer = [0.5, 1.0 / SQRT_2, 0.5 * (5f64.sqrt() - 1.0)];
    let inv = integrate_omega(|a, b| 2.0 / peak(a, b), breaks, &outer, tol);
    let max = integrate_omega(|a, b| 2.0 * peak(a, b), breaks, &outer, tol);
    (inv, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn tile_measures() {
        assert_eq!(tile_measure(1).unwrap(), BigRational::new(1.into(), 3.into()));
        assert_eq!(tile_measure(2).unwrap(), BigRational::new(1.into(), 3.into()));
        assert_eq!(tile_measure(3).unwrap(), BigRational::new(2.into(), 15.into()));
        let (partial, tail) = tile_partition_sum(1000);
        assert!((partial + tail - 1.0).abs() < 1e-14);
        assert!(tile_measure(0).is_err());
        assert!((tile_measure(7).unwrap().to_f64().unwrap() - 8.0 / 504.0).abs() < 1e-16);
    }

    #[test]
    fn trivial_region_measures() {
        assert_eq!(roof_region_measure(0.0, 1.0).unwrap().value, 0.0);
        assert_eq!(roof_region_measure(1.0, f64::INFINITY).unwrap().value, 1.0);
        let v = roof_region_measure(1.0, 2.0).unwrap().value;
        assert!((v - (1.0 - 2f64.ln())).abs() < 1e-15);
        assert!(roof_region_measure(2.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for (c, d) in [(4.0, f64::INFINITY), (0.0, 3.0), (1.5, 7.0), (0.0, 4.0), (5.0, 40.0)] {
            let closed = roof_region_measure(c, d).unwrap().value;
            let quad = roof_region_measure_quadrature(c, d, 1e-11).unwrap();
            assert!((closed - quad.value).abs() < 1e-9, "({c}, {d}): {closed} vs {quad:?}");
        }
    }

    #[test]
    fn hall_cdf_vanishes_below_first_kink() {
        let [k1, _] = hall_kinks(1.0);
        assert_eq!(hall_cdf(k1, 1.0).unwrap(), 0.0);
        assert!(hall_cdf(k1 * 1.01, 1.0).unwrap() > 0.0);
        assert!(hall_cdf(1e6, 1.0).unwrap() > 1.0 - 1e-9);
    }

    #[test]
    fn moments() {
        let c = |s: f64, t: f64| moment_integral(Complex64::new(s, 0.0), Complex64::new(t, 0.0)).unwrap().re;
        assert!((c(1.0, 0.0) - 2.0 / 3.0).abs() < 1e-13);
        assert!((c(0.0, 0.0) - 1.0).abs() < 1e-13);
        assert_eq!(c(-1.0, 0.0), 2.0);
        assert!((c(-1.0, -1.0) - PI * PI / 3.0).abs() < 1e-15);
        let q = moment_integral_quadrature(0.5, 1.5, 1e-12);
        assert!((c(0.5, 1.5) - q.value).abs() < 1e-10);
        assert!(moment_integral(Complex64::new(-1.5, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn kappa_moments() {
        assert!((kappa_moment(1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((kappa_moment(1e-9).unwrap() - 1.0).abs() < 1e-6);
        for alpha in [0.3, 1.0, 1.5, 1.9] {
            assert!(kappa_moment(alpha).unwrap() < kappa_moment_bound(alpha));
        }
        assert!(kappa_moment(2.0).is_err());
    }

    #[test]
    fn roof_integral_routes() {
        assert!((roof_integral_series() - roof_integral()).abs() < 1e-12);
        let q = roof_integral_quadrature(1e-11);
        assert!((q.value - roof_integral()).abs() < 1e-9, "{q:?}");
        let full = roof_power_integral(1.5).unwrap();
        let cut = roof_power_truncated(1.5, 1e8, 1e-10).value;
        assert!(cut < full && full - cut < 1e-2, "{cut} vs {full}");
    }

    #[test]
    fn excursion_constants() {
        let (inv, max) = excursion_integrals();
        let (qi, qm) = excursion_integrals_quadrature(1e-12);
        assert!((inv - qi.value).abs() < 1e-9, "{inv} vs {qi:?}");
        assert!((max - qm.value).abs() < 1e-9, "{max} vs {qm:?}");
    }
}
