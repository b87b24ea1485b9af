//! Cusp excursions: the length of the shortest lattice vector along a
//! horocycle orbit.
//!
//! Between two section visits the shortest vector is one of the two basis
//! vectors of `p_{a,b}`. Its length falls to `a` at each visit and peaks at
//! `M(a, b) = max(a, b, 1/(a + b))` where the two vectors hand off.

use log::warn;

use crate::dynamics::SectionPoint;
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Scalar};

/// `|h_s v|_∞ = max(|x|, |y − sx|)` for `v = (x, y)` with `x > 0`.
pub fn vector_length_profile<S: Scalar>(x: &S, y: &S, s: &S) -> Result<S> {
    if !(*x > S::zero()) {
        return Err(Error::InvalidArgument(format!(
            "vector ({x}, {y}) must have positive first coordinate"
        )));
    }
    let moved = (y.clone() - s.clone() * x.clone()).abs();
    Ok(if moved > *x { moved } else { x.clone() })
}

/// The interval `[σ − 1, σ + 1]`, `σ = y/x`, on which the profile of `(x, y)`
/// is flat at height `x`. Outside it the profile has slope `∓x`.
pub fn flat_interval<S: Scalar>(x: &S, y: &S) -> Result<(S, S)> {
    if !(*x > S::zero()) {
        return Err(Error::InvalidArgument(format!(
            "vector ({x}, {y}) must have positive first coordinate"
        )));
    }
    let sigma = y.clone() / x.clone();
    Ok((sigma.clone() - S::one(), sigma + S::one()))
}

/// Which of the basis-vector profiles are flat at the hand-off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HandoffCase {
    /// `sa = 1/a − sb`, peak `1/(a + b)`.
    BothSloped,
    /// `a = 1/a − sb`, peak `a`.
    FirstFlat,
    /// `sa = b`, peak `b`.
    SecondFlat,
    /// `a = b` with a common flat stretch; the midpoint is reported.
    BothFlat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Handoff<S> {
    /// Flow time after the section visit, in `[0, R(a, b)]`; it equals `R` only when `b = 1`.
    pub time: S,
    pub peak: S,
    pub case: HandoffCase,
}

/// `M(a, b) = max(a, b, 1/(a + b))`.
pub fn peak<S: Scalar>(p: &SectionPoint<S>) -> S {
    let (a, b) = (p.a(), p.b());
    let slope = (a.clone() + b.clone()).recip();
    let m = if a > b { a.clone() } else { b.clone() };
    if slope > m {
        slope
    } else {
        m
    }
}

/// Solves `max(a, sa) = max(b, 1/a − sb)` for the hand-off time.
///
/// The first basis vector `(a, −sa)` has length `max(a, sa)`, the second
/// `(b, 1/a − sb)` length `max(b, 1/a − sb)` while `s < R(a, b)`.
pub fn handoff<S: Scalar>(p: &SectionPoint<S>) -> Handoff<S> {
    let (a, b) = (p.a().clone(), p.b().clone());
    let slope = (a.clone() + b.clone()).recip();
    if slope >= a && slope >= b {
        Handoff {
            time: (a.clone() * (a + b)).recip(),
            peak: slope,
            case: HandoffCase::BothSloped,
        }
    } else if a == b {
        let time = (S::from_i64(2) * a.clone() * a.clone()).recip();
        Handoff {
            time,
            peak: a,
            case: HandoffCase::BothFlat,
        }
    } else if a > b {
        Handoff {
            time: (a.recip() - a.clone()) / b,
            peak: a,
            case: HandoffCase::FirstFlat,
        }
    } else {
        Handoff {
            time: b.clone() / a,
            peak: b,
            case: HandoffCase::SecondFlat,
        }
    }
}

/// Length of the shorter of the two basis vectors of `h_s p_{a,b}`.
pub fn basis_length_at(p: &SectionPoint<f64>, s: f64) -> f64 {
    let (a, b) = (*p.a(), *p.b());
    let first = a.max(s * a);
    let second = b.max((1.0 / a - s * b).abs());
    first.min(second)
}

/// Grid-search oracle for [`handoff`]: maximizes [`basis_length_at`] over
/// `steps` equal subdivisions of `[0, R)`.
pub fn handoff_grid_oracle(p: &SectionPoint<f64>, steps: usize) -> (f64, f64) {
    let r = p.roof();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..steps {
        let s = r * i as f64 / steps as f64;
        let v = basis_length_at(p, s);
        if v > best.1 {
            best = (s, v);
        }
    }
    best
}

/// Minima and maxima of the shortest-vector length along an orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcursionTrace<S> {
    /// Section-visit times `s_n`, starting at 0.
    pub minima_times: Vec<S>,
    /// `ℓ` at each visit, equal to the `a`-coordinate.
    pub minima_lengths: Vec<S>,
    /// Peak `M` of the excursion following each visit.
    pub maxima_lengths: Vec<S>,
}

impl<S: Scalar> ExcursionTrace<S> {
    pub fn run(start: &SectionPoint<S>, n: u64) -> Result<Self> {
        if S::EXACT {
            warn!("exact start {start} has rational slope; its orbit is periodic");
        }
        let mut minima_times = Vec::new();
        let mut minima_lengths = Vec::new();
        let mut maxima_lengths = Vec::new();
        let mut s = S::zero();
        let mut p = start.clone();
        for i in 0..n {
            minima_times.push(s.clone());
            minima_lengths.push(p.a().clone());
            maxima_lengths.push(peak(&p));
            s = s + p.roof();
            p = p.step_at(i)?;
        }
        Ok(Self {
            minima_times,
            minima_lengths,
            maxima_lengths,
        })
    }

    pub fn len(&self) -> usize {
        self.minima_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minima_times.is_empty()
    }
}

/// Birkhoff averages along `N` BCZ steps: `a_N` of `1/a`, `l_N` of `a`,
/// `A_N` of `1/M` and `L_N` of `M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcursionAverages {
    pub steps: u64,
    pub a_n: f64,
    pub l_n: f64,
    pub big_a_n: f64,
    pub big_l_n: f64,
}

#[derive(Default)]
struct Accumulator {
    inv_len: CompensatedSum,
    len: CompensatedSum,
    inv_peak: CompensatedSum,
    peak: CompensatedSum,
}

impl Accumulator {
    fn add(&mut self, p: &SectionPoint<f64>) {
        let (a, b) = (*p.a(), *p.b());
        let m = crate::measure::peak(a, b);
        self.inv_len.add(1.0 / a);
        self.len.add(a);
        self.inv_peak.add(1.0 / m);
        self.peak.add(m);
    }

    fn averages(&self, steps: u64) -> ExcursionAverages {
        let n = steps as f64;
        ExcursionAverages {
            steps,
            a_n: self.inv_len.value() / n,
            l_n: self.len.value() / n,
            big_a_n: self.inv_peak.value() / n,
            big_l_n: self.peak.value() / n,
        }
    }
}

/// Streams the orbit of `start` and returns the final averages, plus
/// snapshots every `every` steps when `every > 0`.
///
/// The start is assumed to have irrational slope; float input cannot
/// certify this.
pub fn excursion_averages_with_checkpoints(
    start: &SectionPoint<f64>,
    n: u64,
    every: u64,
) -> Result<(ExcursionAverages, Vec<ExcursionAverages>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one step".into()));
    }
    let mut acc = Accumulator::default();
    let mut checkpoints = Vec::new();
    let mut p = start.clone();
    for i in 0..n {
        acc.add(&p);
        if every > 0 && (i + 1) % every == 0 {
            checkpoints.push(acc.averages(i + 1));
        }
        if i + 1 < n {
            p = p.step_at(i)?;
        }
    }
    Ok((acc.averages(n), checkpoints))
}

pub fn excursion_averages(start: &SectionPoint<f64>, n: u64) -> Result<ExcursionAverages> {
    Ok(excursion_averages_with_checkpoints(start, n, 0)?.0)
}

/// The start `(1, 1/φ)`, whose horocycle orbit has golden-ratio slope.
pub fn golden_start() -> SectionPoint<f64> {
    SectionPoint::new(1.0, (5f64.sqrt() - 1.0) / 2.0).expect("(1, 1/φ) lies in the section")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn pt(a: f64, b: f64) -> SectionPoint<f64> {
        SectionPoint::new(a, b).unwrap()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(vector_length_profile(&1.0, &0.0, &0.0).unwrap(), 1.0);
        assert_eq!(flat_interval(&1.0, &0.0).unwrap(), (-1.0, 1.0));
        assert_eq!(vector_length_profile(&0.5, &1.0, &2.0).unwrap(), 0.5);
        assert_eq!(vector_length_profile(&0.5, &1.0, &5.0).unwrap(), 1.5);
        assert_eq!(flat_interval(&0.5, &1.0).unwrap(), (1.0, 3.0));
        assert!(vector_length_profile(&0.0, &1.0, &0.0).is_err());
    }

    #[test]
    fn handoff_examples() {
        assert_eq!(handoff(&pt(1.0, 1.0)).peak, 1.0);
        let h = handoff(&SectionPoint::new(ratio(3, 5), ratio(3, 5)).unwrap());
        assert_eq!(h.peak, ratio(5, 6));
        assert_eq!(h.case, HandoffCase::BothSloped);
        let h = handoff(&SectionPoint::new(ratio(9, 10), ratio(1, 5)).unwrap());
        assert_eq!(h.peak, ratio(10, 11));
    }

    fn check_against_grid(p: SectionPoint<f64>, case: HandoffCase) {
        let h = handoff(&p);
        assert_eq!(h.case, case, "{p}");
        let (_, best) = handoff_grid_oracle(&p, 200_000);
        assert!((best - h.peak).abs() < 1e-4 * p.roof(), "{p}: {best} vs {}", h.peak);
        assert!((basis_length_at(&p, h.time) - h.peak).abs() < 1e-12);
    }

    #[test]
    fn each_ordering_of_the_candidates() {
        // 1/(a+b) > a > b and 1/(a+b) > b > a
        check_against_grid(pt(0.6, 0.5), HandoffCase::BothSloped);
        check_against_grid(pt(0.5, 0.6), HandoffCase::BothSloped);
        // a > 1/(a+b) > b and a > b > 1/(a+b)
        check_against_grid(pt(0.98, 0.1), HandoffCase::FirstFlat);
        check_against_grid(pt(0.99, 0.9), HandoffCase::FirstFlat);
        // b > 1/(a+b) > a and b > a > 1/(a+b)
        check_against_grid(pt(0.1, 0.98), HandoffCase::SecondFlat);
        check_against_grid(pt(0.9, 0.99), HandoffCase::SecondFlat);
        check_against_grid(pt(0.8, 0.8), HandoffCase::BothFlat);
    }

    #[test]
    fn exact_peak_is_m() {
        let p = SectionPoint::new(ratio(7, 10), ratio(7, 15)).unwrap();
        let h = handoff::<BigRational>(&p);
        assert_eq!(h.peak, peak(&p));
    }

    #[test]
    fn trace_gaps_are_roof_values() {
        let start = SectionPoint::new(ratio(1, 1), ratio(5, 8)).unwrap();
        let t = ExcursionTrace::run(&start, 20).unwrap();
        let mut p = start;
        for w in t.minima_times.windows(2) {
            assert_eq!(w[1].clone() - w[0].clone(), p.roof());
            p = p.bcz_step().unwrap();
        }
    }

    #[test]
    fn short_golden_run_is_near_limits() {
        let avg = excursion_averages(&golden_start(), 100_000).unwrap();
        assert!((avg.a_n - 2.0).abs() < 0.05);
        assert!((avg.l_n - 2.0 / 3.0).abs() < 0.02);
    }
}
