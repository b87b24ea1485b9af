//! Periodic BCZ orbits: points of rational slope `b/a = k/l`.
//!
//! Such a point is periodic with continuous period `s = l²/a²` and discrete
//! period `N(⌊√s⌋)`; the cocycle over one period is parabolic and constant
//! along each segment of the slope line where the period is constant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::dynamics::SectionPoint;
use crate::error::{Error, Result};
use crate::farey::{farey_cardinality, TotientTable};
use crate::matrix::{IntMatrix2, Matrix2};
use crate::scalar::Scalar;

type Point = SectionPoint<BigRational>;

/// Periods and cocycle of one periodic point.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicOrbitReport {
    pub point: Point,
    /// `(k, l)` with `b/a = k/l` in lowest terms.
    pub slope: (BigInt, BigInt),
    pub discrete_period: u64,
    /// `N(⌊√s⌋)`, the period predicted from the continuous period.
    pub predicted_period: u64,
    pub continuous_period: BigRational,
    pub cocycle_matrix: IntMatrix2,
}

impl PeriodicOrbitReport {
    /// Period, flow time and parabolicity all agree with the structure theorem.
    pub fn matches_theorem(&self) -> bool {
        let (_, l) = &self.slope;
        let a = self.point.a();
        let l = BigRational::from_integer(l.clone());
        self.discrete_period == self.predicted_period
            && self.continuous_period == &l * &l / (a * a)
            && self.cocycle_matrix.is_parabolic()
    }
}

/// Every exact point has rational slope, so it is periodic; float points
/// cannot be decided.
pub fn is_periodic<S: Scalar>(p: &SectionPoint<S>) -> Result<bool> {
    if !S::EXACT {
        return Err(Error::ExactRequired("is_periodic"));
    }
    Ok(p.b().as_rational().zip(p.a().as_rational()).is_some())
}

/// `b/a = k/l` in lowest terms.
pub fn slope_fraction(p: &Point) -> (BigInt, BigInt) {
    let r = p.b() / p.a();
    (r.numer().clone(), r.denom().clone())
}

/// `l²/a²`, the flow period predicted from the slope.
pub fn predicted_flow_period(p: &Point) -> BigRational {
    let (_, l) = slope_fraction(p);
    let l = BigRational::from_integer(l);
    &l * &l / (p.a() * p.a())
}

/// `⌊√s⌋` for `s = (l/a)²`, which is `⌊l/a⌋`.
fn level_of(p: &Point) -> u64 {
    let (_, l) = slope_fraction(p);
    (BigRational::from_integer(l) / p.a())
        .floor_bigint()
        .to_u64()
        .unwrap_or(u64::MAX)
}

/// Minimal `P ≥ 1` with `T^P(p) = p`.
pub fn discrete_period(p: &Point) -> Result<u64> {
    let level = level_of(p);
    let cap = 10 * farey_cardinality(level) + 10;
    let mut q = p.bcz_step()?;
    let mut n = 1;
    while q != *p {
        if n >= cap {
            return Err(Error::IterationCap { cap });
        }
        q = q.bcz_step()?;
        n += 1;
    }
    Ok(n)
}

/// `Σ_{i < P} R(T^i p)`, exactly.
pub fn continuous_period(p: &Point) -> Result<BigRational> {
    let period = discrete_period(p)?;
    let mut total = BigRational::zero();
    let mut q = p.clone();
    for _ in 0..period {
        total += q.roof();
        q = q.bcz_step()?;
    }
    Ok(total)
}

/// `A_P(p)`, the cocycle over one period.
pub fn periodic_matrix(p: &Point) -> Result<IntMatrix2> {
    p.cocycle(discrete_period(p)?)
}

pub fn periodic_report(p: &Point) -> Result<PeriodicOrbitReport> {
    let discrete = discrete_period(p)?;
    let mut total = BigRational::zero();
    let mut m = IntMatrix2::identity();
    let mut q = p.clone();
    for _ in 0..discrete {
        total += q.roof();
        m = &q.step_matrix() * &m;
        q = q.bcz_step()?;
    }
    Ok(PeriodicOrbitReport {
        point: p.clone(),
        slope: slope_fraction(p),
        discrete_period: discrete,
        predicted_period: farey_cardinality(level_of(p)),
        continuous_period: total,
        cocycle_matrix: m,
    })
}

/// `[[1 − kl, l²], [−k², 1 + kl]]`, the cocycle on the top segment of slope `k/l`.
pub fn slope_matrix(k: i64, l: i64) -> IntMatrix2 {
    IntMatrix2::from_i64([[1 - k * l, l * l], [-k * k, 1 + k * l]])
        .expect("determinant is (1 − kl)(1 + kl) + k²l² = 1")
}

fn check_slope(k: u64, l: u64) -> Result<()> {
    if k == 0 || k > l || k.gcd(&l) != 1 {
        return Err(Error::InvalidArgument(format!(
            "slope {k}/{l} must be a reduced fraction with 0 < k <= l"
        )));
    }
    Ok(())
}

/// The segment `(l/(l+r), l/(l+r−1)]` of `a`-values on which the point
/// `(a, ak/l)` has constant period.
pub fn segment_bounds(k: u64, l: u64, r: u64) -> Result<(BigRational, BigRational)> {
    check_slope(k, l)?;
    if r == 0 || r > k {
        return Err(Error::InvalidArgument(format!("segment index {r} must lie in 1..={k}")));
    }
    let l_big = BigInt::from(l);
    Ok((
        BigRational::new(l_big.clone(), BigInt::from(l + r)),
        BigRational::new(l_big, BigInt::from(l + r - 1)),
    ))
}

/// `N(l + r − 1)`, the period of `(a, ak/l)` for `a` on segment `r`.
pub fn period_on_segment(k: u64, l: u64, r: u64) -> Result<u64> {
    segment_bounds(k, l, r)?;
    Ok(farey_cardinality(l + r - 1))
}

/// Result of conjugating the slope matrix into upper-triangular form.
#[derive(Clone, Debug, PartialEq)]
pub struct ShearCheck {
    pub conjugate: Matrix2<BigRational>,
    pub holds: bool,
}

/// Checks `(1/(k²+l²))·[[l, k], [−k, l]]·A·[[l, −k], [k, l]] = [[1, k²+l²], [0, 1]]`
/// for `A` the slope matrix of `k/l`.
pub fn shear_conjugation_check(k: u64, l: u64) -> Result<ShearCheck> {
    check_slope(k, l)?;
    let (ki, li) = (k as i64, l as i64);
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let norm = r(ki * ki + li * li);
    let left = Matrix2::new([[r(li), r(ki)], [r(-ki), r(li)]]).scale(&norm.recip());
    let right = Matrix2::new([[r(li), r(-ki)], [r(ki), r(li)]]);
    let a = slope_matrix(ki, li).to_scalar::<BigRational>();
    let conjugate = &(&left * &a) * &right;
    let target = Matrix2::new([[r(1), norm], [r(0), r(1)]]);
    Ok(ShearCheck {
        holds: conjugate == target,
        conjugate,
    })
}

/// The family `(t, t/Q)` at one level `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentRecord {
    pub level: u64,
    /// `N(Q)`.
    pub expected_period: u64,
    /// `(t, discrete period of (t, t/Q))` at the sampled `t`.
    pub samples: Vec<(BigRational, u64)>,
    /// `N(Q+1) − N(Q)` measured from the periods of `(1, 1/(Q+1))` and `(1, 1/Q)`.
    pub jump: u64,
    /// `φ(Q + 1)`.
    pub totient_next: u64,
}

impl SegmentRecord {
    pub fn consistent(&self) -> bool {
        self.samples.iter().all(|(_, p)| *p == self.expected_period) && self.jump == self.totient_next
    }
}

/// `samples` evenly spaced parameters in `(Q/(Q+1), 1]`, ending at 1.
pub fn segment_samples(q: u64, samples: u64) -> Vec<BigRational> {
    let lo = BigRational::new(BigInt::from(q), BigInt::from(q + 1));
    let width = BigRational::one() - &lo;
    (1..=samples)
        .map(|j| &lo + &width * BigRational::new(BigInt::from(j), BigInt::from(samples)))
        .collect()
}

fn family_point(t: &BigRational, q: u64) -> Result<Point> {
    SectionPoint::new(t.clone(), t / BigRational::from_integer(BigInt::from(q)))
}

/// Levels `1..=q_max` of the period hierarchy, five samples per segment.
pub fn hierarchy_report(q_max: u64) -> Result<Vec<SegmentRecord>> {
    if q_max < 1 {
        return Err(Error::InvalidArgument("hierarchy needs q_max >= 1".into()));
    }
    let totients = TotientTable::new(q_max + 1);
    let unit = |q: u64| -> Result<u64> { discrete_period(&family_point(&BigRational::one(), q)?) };
    let mut records = Vec::new();
    let mut here = unit(1)?;
    for q in 1..=q_max {
        let next = unit(q + 1)?;
        let samples = segment_samples(q, 5)
            .into_iter()
            .map(|t| {
                let p = discrete_period(&family_point(&t, q)?)?;
                Ok((t, p))
            })
            .collect::<Result<Vec<_>>>()?;
        records.push(SegmentRecord {
            level: q,
            expected_period: totients.cardinality(q),
            samples,
            jump: next - here,
            totient_next: totients.phi(q + 1),
        });
        here = next;
    }
    Ok(records)
}

/// `κ` along one period of `(t, t/Q)` equals `κ` along `(1, 1/Q)`.
pub fn index_constancy(q: u64, t: &BigRational) -> Result<bool> {
    let base = family_point(&BigRational::one(), q)?;
    let moved = family_point(t, q)?;
    let period = discrete_period(&base)?;
    let (mut x, mut y) = (base, moved);
    for _ in 0..period {
        if x.kappa() != y.kappa() {
            return Ok(false);
        }
        x = x.bcz_step()?;
        y = y.bcz_step()?;
    }
    Ok(true)
}
