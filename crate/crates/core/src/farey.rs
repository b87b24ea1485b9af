//! Farey sequences as periodic BCZ orbits, and the empirical measures
//! `ρ_{Q,I}` they carry.
//!
//! The orbit of `(1/Q, 1)` visits `(q_i/Q, q_{i+1}/Q)` for consecutive
//! denominators of `F(Q)`, so every Farey statistic is an average of some
//! function over this orbit.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::dynamics::GridPoint;
use crate::error::{Error, Result};
use crate::scalar::CompensatedSum;

/// Euler's totient and its running sum `N(n) = Σ_{q ≤ n} φ(q)` up to a bound.
#[derive(Clone, Debug)]
pub struct TotientTable {
    phi: Vec<u64>,
    cumulative: Vec<u64>,
}

impl TotientTable {
    pub fn new(limit: u64) -> Self {
        let n = usize::try_from(limit).expect("totient limit exceeds address space");
        let mut phi: Vec<u64> = (0..=n as u64).collect();
        for p in 2..=n {
            if phi[p] == p as u64 {
                for m in (p..=n).step_by(p) {
                    phi[m] -= phi[m] / p as u64;
                }
            }
        }
        let mut cumulative = vec![0u64; n + 1];
        for q in 1..=n {
            cumulative[q] = cumulative[q - 1] + phi[q];
        }
        Self { phi, cumulative }
    }

    pub fn limit(&self) -> u64 {
        (self.phi.len() - 1) as u64
    }

    pub fn phi(&self, q: u64) -> u64 {
        self.phi[q as usize]
    }

    /// `N(q)`, the number of elements of `F(q)`.
    pub fn cardinality(&self, q: u64) -> u64 {
        self.cumulative[q as usize]
    }
}

/// `N(Q) = Σ_{q ≤ Q} φ(q)`.
pub fn farey_cardinality(q: u64) -> u64 {
    TotientTable::new(q).cardinality(q)
}

/// The Farey sequence `F(Q)`: reduced fractions `p/q ∈ [0, 1)` with `q ≤ Q`,
/// in increasing order and starting at `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareySequence {
    level: u64,
    numerators: Vec<u64>,
    denominators: Vec<u64>,
}

impl FareySequence {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[u64] {
        &self.denominators
    }

    pub fn fractions(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.numerators
            .iter()
            .copied()
            .zip(self.denominators.iter().copied())
    }

    /// `γ_{i+1}` as `(p, q)`, with `γ_{N+1} = 1/1`.
    fn next_fraction(&self, i: usize) -> (u64, u64) {
        if i + 1 < self.len() {
            (self.numerators[i + 1], self.denominators[i + 1])
        } else {
            (1, 1)
        }
    }

    /// `q_{i+1}`, cyclically.
    pub fn next_denominator(&self, i: usize) -> u64 {
        self.denominators[(i + 1) % self.len()]
    }

    /// The orbit point `(q_i/Q, q_{i+1}/Q)` attached to `γ_i`.
    pub fn support_point(&self, i: usize) -> GridPoint {
        GridPoint {
            x: self.denominators[i],
            y: self.next_denominator(i),
            d: self.level,
        }
    }

    /// Checks `p_{i+1} q_i − p_i q_{i+1} = 1` and `q_i + q_{i+1} > Q` for
    /// every consecutive pair, including the wrap to `1/1`.
    pub fn check_neighbor_identities(&self) -> Result<()> {
        for i in 0..self.len() {
            let (p0, q0) = (self.numerators[i], self.denominators[i]);
            let (p1, q1) = self.next_fraction(i);
            if p1 as u128 * q0 as u128 != p0 as u128 * q1 as u128 + 1 {
                return Err(Error::Internal(format!(
                    "{p0}/{q0}, {p1}/{q1} are not Farey neighbors"
                )));
            }
            if q0 + q1 <= self.level {
                return Err(Error::Internal(format!(
                    "denominators {q0} + {q1} do not exceed {}",
                    self.level
                )));
            }
        }
        Ok(())
    }
}

/// `F(Q)` read off the periodic BCZ orbit of `(1/Q, 1)`.
///
/// The orbit runs on integer numerators over the common denominator `Q`,
/// which is exact.
pub fn farey_orbit(q: u64) -> Result<FareySequence> {
    let start = GridPoint::new(1, q, q)?;
    let expected = farey_cardinality(q);
    let mut denominators = Vec::with_capacity(expected as usize);
    let mut numerators = Vec::with_capacity(expected as usize);
    let (mut p_prev, mut p_cur) = (0u64, 1u64);
    let mut g = start;
    loop {
        denominators.push(g.x);
        numerators.push(p_prev);
        let k = g.kappa();
        (p_prev, p_cur) = (p_cur, k * p_cur - p_prev);
        g = g.step();
        if g == start {
            break;
        }
        if denominators.len() as u64 > expected {
            return Err(Error::IterationCap { cap: expected });
        }
    }
    Ok(FareySequence {
        level: q,
        numerators,
        denominators,
    })
}

/// `F(Q)` by direct enumeration of reduced fractions.
pub fn farey_bruteforce(q: u64) -> FareySequence {
    let mut fractions: Vec<(u64, u64)> = vec![(0, 1)];
    for den in 2..=q {
        for num in 1..den {
            if num.gcd(&den) == 1 {
                fractions.push((num, den));
            }
        }
    }
    fractions.sort_by(|&(p0, q0), &(p1, q1)| (p0 as u128 * q1 as u128).cmp(&(p1 as u128 * q0 as u128)));
    let (numerators, denominators) = fractions.into_iter().unzip();
    FareySequence {
        level: q,
        numerators,
        denominators,
    }
}

/// A closed subinterval `[lo, hi]` of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "interval [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, p: u64, q: u64) -> bool {
        let x = p as f64 / q as f64;
        self.lo <= x && x <= self.hi
    }
}

/// The empirical measure `ρ_{Q,I}`: uniform weight on the orbit points
/// `(q_i/Q, q_{i+1}/Q)` with `γ_i ∈ I`.
#[derive(Clone, Debug)]
pub struct EmpiricalMeasure {
    sequence: FareySequence,
    interval: Interval,
    selected: Vec<usize>,
}

impl EmpiricalMeasure {
    pub fn new(sequence: FareySequence, interval: Interval) -> Result<Self> {
        let selected: Vec<usize> = sequence
            .fractions()
            .enumerate()
            .filter(|(_, (p, q))| interval.contains(*p, *q))
            .map(|(i, _)| i)
            .collect();
        if selected.is_empty() {
            return Err(Error::EmptyInterval {
                level: sequence.level(),
                lo: interval.lo,
                hi: interval.hi,
            });
        }
        Ok(Self {
            sequence,
            interval,
            selected,
        })
    }

    pub fn for_level(q: u64, interval: Interval) -> Result<Self> {
        Self::new(farey_orbit(q)?, interval)
    }

    pub fn sequence(&self) -> &FareySequence {
        &self.sequence
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// `N_I(Q)`.
    pub fn count(&self) -> usize {
        self.selected.len()
    }

    /// Positions `i` (0-based) of the fractions in `I`.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn support(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.selected.iter().map(|&i| self.sequence.support_point(i))
    }

    /// `∫ G dρ_{Q,I}`.
    pub fn integral<G: Fn(&GridPoint) -> f64>(&self, g: G) -> f64 {
        let mut sum = CompensatedSum::new();
        sum.extend(self.support().map(|p| g(&p)));
        sum.value() / self.count() as f64
    }

    /// `ρ_{Q,I}` of the set where `pred` holds.
    pub fn mass<P: Fn(&GridPoint) -> bool>(&self, pred: P) -> f64 {
        self.support().filter(|p| pred(p)).count() as f64 / self.count() as f64
    }

    /// Scale taking `Q²(γ_{i+1} − γ_i)` to the normalized gap.
    pub fn gap_scale(&self) -> f64 {
        3.0 * self.interval.length() / (PI * PI)
    }

    /// Normalized gaps `(3/π²)|I|Q²(γ_{i+1} − γ_i)` for `γ_i ∈ I`.
    pub fn normalized_gaps(&self) -> Vec<f64> {
        let scale = self.gap_scale();
        self.support().map(|p| scale * p.roof_f64()).collect()
    }

    /// Proportion of normalized gaps in the open interval `(c, d)`.
    pub fn spacing_proportion(&self, c: f64, d: f64) -> Result<f64> {
        check_gap_window(c, d)?;
        let scale = self.gap_scale();
        Ok(self.mass(|p| {
            let g = scale * p.roof_f64();
            c < g && g < d
        }))
    }

    /// Proportion of `i` whose `h` consecutive normalized gaps fall in the
    /// box `Π (c_j, d_j)`.
    pub fn h_spacing_proportion(&self, window: &[(f64, f64)]) -> Result<f64> {
        if window.is_empty() {
            return Err(Error::InvalidArgument("h-spacing needs h >= 1".into()));
        }
        for &(c, d) in window {
            check_gap_window(c, d)?;
        }
        let scale = self.gap_scale();
        let n = self.sequence.len();
        let hits = self
            .selected
            .iter()
            .filter(|&&i| {
                window.iter().enumerate().all(|(j, &(c, d))| {
                    let g = scale * self.sequence.support_point((i + j) % n).roof_f64();
                    c < g && g < d
                })
            })
            .count();
        Ok(hits as f64 / self.count() as f64)
    }

    /// `ν(γ_i) = (q_{i−1} + q_{i+1})/q_i` for `γ_i ∈ I`, from denominators.
    pub fn index_values(&self) -> Vec<u64> {
        let s = &self.sequence;
        let n = s.len();
        self.selected
            .iter()
            .map(|&i| {
                let prev = s.denominators[(i + n - 1) % n];
                (prev + s.next_denominator(i)) / s.denominators[i]
            })
            .collect()
    }

    /// The same indices as `κ` at the preceding orbit point.
    pub fn index_values_via_kappa(&self) -> Vec<u64> {
        let s = &self.sequence;
        let n = s.len();
        self.selected
            .iter()
            .map(|&i| s.support_point((i + n - 1) % n).kappa())
            .collect()
    }

    /// `(1/(N_I(Q) Q^{s+t})) Σ q_i^s q_{i+1}^t`.
    pub fn moment_sum(&self, s: Complex64, t: Complex64) -> Complex64 {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for p in self.support() {
            let v = (s * p.a_f64().ln() + t * p.b_f64().ln()).exp();
            re.add(v.re);
            im.add(v.im);
        }
        Complex64::new(re.value(), im.value()) / self.count() as f64
    }

    /// `Σ_{γ_i ∈ I} R(T^i(1/Q, 1))` in exact arithmetic.
    ///
    /// Summed in orbit order, the partial sums over a run of consecutive
    /// fractions telescope to `Q²(γ_j − γ_i)`, so denominators stay small.
    pub fn roof_sum_exact(&self) -> BigRational {
        let mut total = BigRational::zero();
        for p in self.support() {
            total += p.roof();
        }
        total
    }

    /// `N_I(Q) ≥ min(|I|/(18π), |I|²/4)·Q²`.
    pub fn counting_bound_check(&self) -> bool {
        let len = self.interval.length();
        let c1 = (len / (18.0 * PI)).min(len * len / 4.0);
        let q = self.sequence.level() as f64;
        self.count() as f64 >= c1 * q * q
    }
}

fn check_gap_window(c: f64, d: f64) -> Result<()> {
    if c.is_nan() || d.is_nan() || c < 0.0 || c > d {
        Err(Error::InvalidArgument(format!(
            "gap window ({c}, {d}) must satisfy 0 <= c <= d"
        )))
    } else {
        Ok(())
    }
}

pub fn spacing_proportion(q: u64, interval: Interval, c: f64, d: f64) -> Result<f64> {
    EmpiricalMeasure::for_level(q, interval)?.spacing_proportion(c, d)
}

pub fn h_spacing_proportion(q: u64, interval: Interval, window: &[(f64, f64)]) -> Result<f64> {
    EmpiricalMeasure::for_level(q, interval)?.h_spacing_proportion(window)
}

pub fn index_values(q: u64, interval: Interval) -> Result<Vec<u64>> {
    Ok(EmpiricalMeasure::for_level(q, interval)?.index_values())
}

pub fn moment_sum(q: u64, interval: Interval, s: Complex64, t: Complex64) -> Result<Complex64> {
    Ok(EmpiricalMeasure::for_level(q, interval)?.moment_sum(s, t))
}

pub fn empirical_integral<G: Fn(&GridPoint) -> f64>(q: u64, interval: Interval, g: G) -> Result<f64> {
    Ok(EmpiricalMeasure::for_level(q, interval)?.integral(g))
}

pub fn counting_bound_check(q: u64, interval: Interval) -> Result<bool> {
    Ok(EmpiricalMeasure::for_level(q, interval)?.counting_bound_check())
}

/// Outcome of checking the neighborhood of large-index orbit points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LargeIndexReport {
    /// Orbit points with `κ ≥ 6`, the smallest index that constrains anything.
    pub points_checked: usize,
    /// `(position, offset)` pairs where the predicted neighbor index fails.
    pub violations: Vec<(usize, isize)>,
}

/// For every orbit point with `κ = n ≥ 4r + 2`, checks that `κ` is 1 at
/// offsets ±1 and 2 at offsets `1 < |i| ≤ r`.
pub fn large_index_structure(sequence: &FareySequence) -> LargeIndexReport {
    let n = sequence.len();
    let kappas: Vec<u64> = (0..n).map(|i| sequence.support_point(i).kappa()).collect();
    let mut report = LargeIndexReport::default();
    for (i, &k) in kappas.iter().enumerate() {
        if k < 6 {
            continue;
        }
        report.points_checked += 1;
        let r = ((k - 2) / 4) as isize;
        for offset in (-r..=r).filter(|&o| o != 0) {
            let j = (i as isize + offset).rem_euclid(n as isize) as usize;
            let expected = if offset.abs() == 1 { 1 } else { 2 };
            if kappas[j] != expected {
                report.violations.push((i, offset));
            }
        }
    }
    report
}

/// Orders two fractions `p0/q0` and `p1/q1`.
pub fn compare_fractions(p0: u64, q0: u64, p1: u64, q1: u64) -> Ordering {
    (p0 as u128 * q1 as u128).cmp(&(p1 as u128 * q0 as u128))
}

/// `Q²` as an exact rational, for comparison with [`EmpiricalMeasure::roof_sum_exact`].
pub fn level_squared(q: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(q) * BigInt::from(q))
}
