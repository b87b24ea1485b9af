//! The Farey triangle, the BCZ map and its scaled variants.
//!
//! A point `(a, b)` of the Farey triangle `Ω = {a, b ∈ (0, 1], a + b > 1}`
//! stands for the lattice spanned by the columns of `[[a, b], [0, 1/a]]`.
//! Horocycle flow returns to `Ω` after time `R(a, b) = 1/(ab)`, landing on
//! `T(a, b) = (b, -a + κ(a, b)·b)` with `κ(a, b) = ⌊(1 + a)/b⌋`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix2, Matrix2};
use crate::scalar::Scalar;

/// A point of the Farey triangle `Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint<S> {
    a: S,
    b: S,
}

impl<S: Scalar> SectionPoint<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        if in_scaled_triangle(&a, &b, &S::one()) {
            Ok(Self { a, b })
        } else {
            Err(outside(&a, &b, &S::one()))
        }
    }

    /// Caller guarantees membership.
    pub(crate) fn new_unchecked(a: S, b: S) -> Self {
        Self { a, b }
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn into_coords(self) -> (S, S) {
        (self.a, self.b)
    }

    pub fn kappa(&self) -> u64 {
        self.kappa_scalar().floor_u64()
    }

    fn kappa_scalar(&self) -> S {
        ((S::one() + self.a.clone()) / self.b.clone()).floor()
    }

    pub fn roof(&self) -> S {
        (self.a.clone() * self.b.clone()).recip()
    }

    pub fn step_matrix(&self) -> IntMatrix2 {
        IntMatrix2::step(self.kappa())
    }

    /// `T(p)`. Exact flavors cannot fail; the float flavor reports drift.
    pub fn bcz_step(&self) -> Result<Self> {
        self.step_at(0)
    }

    pub(crate) fn step_at(&self, step: u64) -> Result<Self> {
        let k = self.kappa_scalar();
        let a = self.b.clone();
        let raw = k * self.b.clone() - self.a.clone();
        let lower = S::one() - a.clone();
        match S::confine(raw.clone(), &lower, &S::one()) {
            Ok(b) => Ok(Self { a, b }),
            Err(excess) if S::EXACT => Err(Error::Internal(format!(
                "exact BCZ image ({a}, {raw}) left the section by {excess:e}"
            ))),
            Err(excess) => Err(Error::Drift {
                step,
                a: a.to_f64(),
                b: raw.to_f64(),
                excess,
            }),
        }
    }

    /// `Tⁿ(p)`.
    pub fn iterate(&self, n: u64) -> Result<Self> {
        let mut p = self.clone();
        for i in 0..n {
            p = p.step_at(i)?;
        }
        Ok(p)
    }

    /// `A_n(p) = A(T^{n-1}p) ⋯ A(p)`, so that `Tⁿ(p) = p·A_n(p)ᵀ`.
    pub fn cocycle(&self, n: u64) -> Result<IntMatrix2> {
        let mut m = IntMatrix2::identity();
        let mut p = self.clone();
        for i in 0..n {
            m = &p.step_matrix() * &m;
            if i + 1 < n {
                p = p.step_at(i)?;
            }
        }
        Ok(m)
    }

    /// `p_{a,b} = [[a, b], [0, 1/a]]`.
    pub fn basis(&self) -> Matrix2<S> {
        Matrix2::upper_triangular(&self.a, &self.b)
    }

    /// The image under `M_t(a, b) = (ta, tb)`.
    pub fn scale(&self, t: &S) -> Result<ScaledPoint<S>> {
        ScaledPoint::new(t.clone() * self.a.clone(), t.clone() * self.b.clone(), t.clone())
    }

    /// Coordinates `(x, y)` in the upper half plane: `y = 1/a²` and `x = b/a`
    /// reduced into `(-1/2, 1/2]`.
    pub fn to_upper_half_plane(&self) -> (S, S) {
        let y = (self.a.clone() * self.a.clone()).recip();
        let x = self.b.clone() / self.a.clone();
        let half = S::one() / S::from_i64(2);
        // x - ceil(x - 1/2)
        let shift = -(-(x.clone() - half)).floor();
        (x - shift, y)
    }
}

impl<S: Scalar> fmt::Display for SectionPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl SectionPoint<BigRational> {
    pub fn to_f64(&self) -> SectionPoint<f64> {
        SectionPoint::new_unchecked(self.a.to_f64(), self.b.to_f64())
    }
}

fn in_scaled_triangle<S: Scalar>(a: &S, b: &S, t: &S) -> bool {
    let zero = S::zero();
    *a > zero && *b > zero && a <= t && b <= t && a.clone() + b.clone() > t.clone()
}

fn outside<S: Scalar>(a: &S, b: &S, t: &S) -> Error {
    Error::OutsideSection {
        a: a.to_string(),
        b: b.to_string(),
        width: t.to_string(),
    }
}

/// `κ(p)`; see [`SectionPoint::kappa`].
pub fn kappa<S: Scalar>(p: &SectionPoint<S>) -> u64 {
    p.kappa()
}

/// `T(p)`; see [`SectionPoint::bcz_step`].
pub fn bcz_step<S: Scalar>(p: &SectionPoint<S>) -> Result<SectionPoint<S>> {
    p.bcz_step()
}

/// `⌊(1 + a)/b⌋` evaluated without the membership check, for points on
/// the boundary of `Ω` or outside it.
pub fn kappa_of<S: Scalar>(a: &S, b: &S) -> Result<u64> {
    if !(*b > S::zero()) {
        return Err(Error::InvalidArgument(format!("second coordinate {b} must be positive")));
    }
    Ok(((S::one() + a.clone()) / b.clone()).floor_u64())
}

/// `R(p) = 1/(ab)`.
pub fn roof<S: Scalar>(p: &SectionPoint<S>) -> S {
    p.roof()
}

pub fn step_matrix<S: Scalar>(p: &SectionPoint<S>) -> IntMatrix2 {
    p.step_matrix()
}

pub fn cocycle<S: Scalar>(p: &SectionPoint<S>, n: u64) -> Result<IntMatrix2> {
    p.cocycle(n)
}

pub fn to_upper_half_plane<S: Scalar>(p: &SectionPoint<S>) -> (S, S) {
    p.to_upper_half_plane()
}

/// Orbit history: `points[i + 1] = T(points[i])`, `returns[i] = R(points[i])`,
/// `indices[i] = κ(points[i])`.
///
/// `points` holds one more entry than `returns` and `indices`: the last
/// point is where the traced segment ends.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTrace<S> {
    pub points: Vec<SectionPoint<S>>,
    pub returns: Vec<S>,
    pub indices: Vec<u64>,
}

impl<S: Scalar> OrbitTrace<S> {
    pub fn run(start: &SectionPoint<S>, n: u64) -> Result<Self> {
        let cap = usize::try_from(n).unwrap_or(usize::MAX).min(1 << 24);
        let mut points = Vec::with_capacity(cap + 1);
        let mut returns = Vec::with_capacity(cap);
        let mut indices = Vec::with_capacity(cap);
        let mut p = start.clone();
        for i in 0..n {
            returns.push(p.roof());
            indices.push(p.kappa());
            let next = p.step_at(i)?;
            points.push(p);
            p = next;
        }
        points.push(p);
        Ok(Self {
            points,
            returns,
            indices,
        })
    }

    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }

    /// Total flow time along the traced steps.
    pub fn flow_time(&self) -> S {
        self.returns
            .iter()
            .cloned()
            .fold(S::zero(), |acc, r| acc + r)
    }
}

/// Moves `(a, b_raw)` to the section by adding a multiple of `a` to the second
/// coordinate. Returns the point and the multiple `⌊(1 - b_raw)/a⌋`.
pub fn reduce_to_section<S: Scalar>(a: S, b_raw: S) -> Result<(SectionPoint<S>, BigInt)> {
    let (p, shift) = reduce_to_scaled(a, b_raw, S::one())?;
    let (x, y, _) = p.into_parts();
    Ok((SectionPoint::new_unchecked(x, y), shift))
}

/// Width-`t` variant of [`reduce_to_section`]: the result lies in `Ω_t`.
pub fn reduce_to_scaled<S: Scalar>(a: S, b_raw: S, t: S) -> Result<(ScaledPoint<S>, BigInt)> {
    if !(a > S::zero() && a <= t) {
        return Err(Error::InvalidArgument(format!(
            "first coordinate {a} must lie in (0, {t}]"
        )));
    }
    let shift = ((t.clone() - b_raw.clone()) / a.clone()).floor();
    let raw = b_raw + shift.clone() * a.clone();
    let lower = t.clone() - a.clone();
    let b = S::confine(raw.clone(), &lower, &t).map_err(|excess| {
        if S::EXACT {
            Error::Internal(format!("reduction of ({a}, {raw}) missed the section"))
        } else {
            Error::Drift {
                step: 0,
                a: a.to_f64(),
                b: raw.to_f64(),
                excess,
            }
        }
    })?;
    Ok((ScaledPoint::new_unchecked(a, b, t), shift.floor_bigint()))
}

/// Checks `h_{R(p)} · p_{a,b} · A(p)ᵀ = p_{T(p)}` exactly.
///
/// For `A_k = [[0, 1], [-1, k]]` the right factor is `[[0, -1], [1, k]]`.
pub fn verify_return_identity(p: &SectionPoint<BigRational>) -> bool {
    let Ok(image) = p.bcz_step() else {
        return false;
    };
    let a_t = p.step_matrix().transpose().to_scalar::<BigRational>();
    let lhs = &(&Matrix2::horocycle(&p.roof()) * &p.basis()) * &a_t;
    lhs == image.basis()
}

/// A point of the width-`t` triangle `Ω_t = {x, y ∈ (0, t], x + y > t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPoint<S> {
    x: S,
    y: S,
    t: S,
}

impl<S: Scalar> ScaledPoint<S> {
    pub fn new(x: S, y: S, t: S) -> Result<Self> {
        if !(t > S::zero()) {
            return Err(Error::InvalidArgument(format!("width {t} must be positive")));
        }
        if in_scaled_triangle(&x, &y, &t) {
            Ok(Self { x, y, t })
        } else {
            Err(outside(&x, &y, &t))
        }
    }

    pub(crate) fn new_unchecked(x: S, y: S, t: S) -> Self {
        Self { x, y, t }
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn y(&self) -> &S {
        &self.y
    }

    pub fn t(&self) -> &S {
        &self.t
    }

    pub fn into_parts(self) -> (S, S, S) {
        (self.x, self.y, self.t)
    }

    pub fn kappa(&self) -> u64 {
        self.kappa_scalar().floor_u64()
    }

    fn kappa_scalar(&self) -> S {
        ((self.t.clone() + self.x.clone()) / self.y.clone()).floor()
    }

    /// `R_t(x, y) = 1/(xy)`, the slope gap at this section point.
    pub fn roof(&self) -> S {
        (self.x.clone() * self.y.clone()).recip()
    }

    /// `T_t(x, y) = (y, -x + ⌊(t + x)/y⌋·y)`.
    pub fn t_bcz_step(&self) -> Result<Self> {
        self.step_at(0)
    }

    pub(crate) fn step_at(&self, step: u64) -> Result<Self> {
        let k = self.kappa_scalar();
        let x = self.y.clone();
        let raw = k * self.y.clone() - self.x.clone();
        let lower = self.t.clone() - x.clone();
        match S::confine(raw.clone(), &lower, &self.t) {
            Ok(y) => Ok(Self {
                x,
                y,
                t: self.t.clone(),
            }),
            Err(_) if S::EXACT => Err(Error::Internal(format!(
                "exact t-BCZ image ({x}, {raw}) left Ω_{}",
                self.t
            ))),
            Err(excess) => Err(Error::Drift {
                step,
                a: x.to_f64(),
                b: raw.to_f64(),
                excess,
            }),
        }
    }

    /// `M_t⁻¹`, back to the unit triangle.
    pub fn unscale(&self) -> SectionPoint<S> {
        SectionPoint::new_unchecked(
            self.x.clone() / self.t.clone(),
            self.y.clone() / self.t.clone(),
        )
    }
}

impl<S: Scalar> fmt::Display for ScaledPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) in Ω_{}", self.x, self.y, self.t)
    }
}

/// `T_t(p)`; see [`ScaledPoint::t_bcz_step`].
pub fn t_bcz_step<S: Scalar>(p: &ScaledPoint<S>) -> Result<ScaledPoint<S>> {
    p.t_bcz_step()
}

/// A point `(x/d, y/d)` of `Ω` with integer numerators over a fixed denominator.
///
/// The BCZ map preserves the denominator, so orbits of such points run in
/// machine integers with no rational reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub x: u64,
    pub y: u64,
    pub d: u64,
}

impl GridPoint {
    pub fn new(x: u64, y: u64, d: u64) -> Result<Self> {
        if d == 0 || d > u64::MAX / 4 {
            return Err(Error::InvalidArgument(format!("denominator {d} out of range")));
        }
        if x == 0 || y == 0 || x > d || y > d || x + y <= d {
            return Err(Error::OutsideSection {
                a: format!("{x}/{d}"),
                b: format!("{y}/{d}"),
                width: "1".into(),
            });
        }
        Ok(Self { x, y, d })
    }

    pub fn kappa(&self) -> u64 {
        (self.d + self.x) / self.y
    }

    /// `T` on numerators: `(y, κy - x)`.
    pub fn step(&self) -> Self {
        let k = self.kappa();
        Self {
            x: self.y,
            y: k * self.y - self.x,
            d: self.d,
        }
    }

    /// `R = d²/(xy)`.
    pub fn roof(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.d) * BigInt::from(self.d),
            BigInt::from(self.x) * BigInt::from(self.y),
        )
    }

    pub fn roof_f64(&self) -> f64 {
        let d = self.d as f64;
        d / self.x as f64 * (d / self.y as f64)
    }

    pub fn a_f64(&self) -> f64 {
        self.x as f64 / self.d as f64
    }

    pub fn b_f64(&self) -> f64 {
        self.y as f64 / self.d as f64
    }

    pub fn to_rational(&self) -> SectionPoint<BigRational> {
        let d = BigInt::from(self.d);
        SectionPoint::new_unchecked(
            BigRational::new(BigInt::from(self.x), d.clone()),
            BigRational::new(BigInt::from(self.y), d),
        )
    }

    pub fn to_f64(&self) -> SectionPoint<f64> {
        SectionPoint::new_unchecked(self.a_f64(), self.b_f64())
    }
}

/// Membership of `p` in the tile `Ω_k`, decided from the tile's vertices by
/// half-plane tests rather than from `κ`.
pub fn in_tile<S: Scalar>(p: &SectionPoint<S>, k: u64) -> bool {
    if k == 0 {
        return false;
    }
    let q = |n: i64, d: u64| S::from_i64(n) / S::from_u64(d);
    let one = S::one();
    // Edges run from vertex i to vertex i + 1; the flag marks closed edges.
    let (vertices, closed): (Vec<(S, S)>, Vec<bool>) = if k == 1 {
        (
            vec![
                (S::zero(), one.clone()),
                (one.clone(), one.clone()),
                (q(1, 3), q(2, 3)),
            ],
            vec![true, false, false],
        )
    } else {
        let k1 = k + 1;
        let k2 = k + 2;
        let ki = i64::try_from(k).unwrap_or(i64::MAX);
        (
            vec![
                (one.clone(), q(2, k)),
                (q(ki - 1, k1), q(2, k1)),
                (q(ki, k2), q(2, k2)),
                (one.clone(), q(2, k1)),
            ],
            vec![true, false, false, true],
        )
    };
    let n = vertices.len();
    let cross = |i: usize, px: &S, py: &S| {
        let (x0, y0) = &vertices[i];
        let (x1, y1) = &vertices[(i + 1) % n];
        (x1.clone() - x0.clone()) * (py.clone() - y0.clone())
            - (y1.clone() - y0.clone()) * (px.clone() - x0.clone())
    };
    // Orientation from an interior point (the centroid).
    let cx = vertices.iter().fold(S::zero(), |s, v| s + v.0.clone()) / S::from_u64(n as u64);
    let cy = vertices.iter().fold(S::zero(), |s, v| s + v.1.clone()) / S::from_u64(n as u64);
    let positive = cross(0, &cx, &cy) > S::zero();
    (0..n).all(|i| {
        let c = cross(i, p.a(), p.b());
        let c = if positive { c } else { -c };
        if closed[i] {
            c >= S::zero()
        } else {
            c > S::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn pt(a: (i64, i64), b: (i64, i64)) -> SectionPoint<BigRational> {
        SectionPoint::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn kappa_values() {
        assert_eq!(pt((1, 1), (1, 1)).kappa(), 2);
        assert_eq!(pt((1, 5), (1, 1)).kappa(), 1);
        assert!(SectionPoint::new(ratio(3, 4), ratio(1, 4)).is_err());
        assert_eq!(kappa_of(&ratio(3, 4), &ratio(1, 4)).unwrap(), 7);
    }

    #[test]
    fn rejects_points_outside() {
        assert!(SectionPoint::new(ratio(1, 2), ratio(1, 2)).is_err());
        assert!(SectionPoint::new(ratio(3, 2), ratio(1, 2)).is_err());
        assert!(SectionPoint::new(0.0, 1.0).is_err());
    }

    #[test]
    fn bcz_images() {
        assert_eq!(pt((1, 5), (1, 1)).bcz_step().unwrap(), pt((1, 1), (4, 5)));
        assert_eq!(pt((1, 1), (4, 5)).bcz_step().unwrap(), pt((4, 5), (3, 5)));
        let diag = pt((7, 10), (7, 10));
        assert_eq!(diag.bcz_step().unwrap(), diag);
    }

    #[test]
    fn roof_values() {
        assert_eq!(pt((1, 1), (1, 1)).roof(), ratio(1, 1));
        assert_eq!(pt((1, 5), (1, 1)).roof(), ratio(5, 1));
        assert_eq!(pt((1, 2), (3, 4)).roof(), ratio(8, 3));
    }

    #[test]
    fn cocycle_of_diagonal_and_farey_start() {
        let diag = pt((3, 4), (3, 4));
        assert_eq!(
            diag.cocycle(3).unwrap(),
            IntMatrix2::from_i64([[-2, 3], [-3, 4]]).unwrap()
        );
        let m = pt((1, 5), (1, 1)).cocycle(10).unwrap();
        assert!(m.is_parabolic());
    }

    #[test]
    fn reduction_examples() {
        let (p, m) = reduce_to_section(ratio(1, 1), ratio(1, 1)).unwrap();
        assert_eq!((p, m), (pt((1, 1), (1, 1)), BigInt::from(0)));
        let (p, m) = reduce_to_section(ratio(1, 2), ratio(1, 4)).unwrap();
        assert_eq!((p, m), (pt((1, 2), (3, 4)), BigInt::from(1)));
        let (p, m) = reduce_to_section(ratio(1, 2), ratio(-3, 4)).unwrap();
        assert_eq!((p, m), (pt((1, 2), (3, 4)), BigInt::from(3)));
        let (p, _) = reduce_to_section(ratio(1, 3), ratio(0, 1)).unwrap();
        assert_eq!(p, pt((1, 3), (1, 1)));
    }

    #[test]
    fn return_identity() {
        assert!(verify_return_identity(&pt((1, 1), (1, 1))));
        assert!(verify_return_identity(&pt((1, 5), (1, 1))));
    }

    #[test]
    fn scaled_conjugacy_example() {
        let t = ratio(2, 1);
        let p = pt((1, 5), (1, 1));
        let lhs = p.scale(&t).unwrap().t_bcz_step().unwrap();
        assert_eq!(lhs, ScaledPoint::new(ratio(2, 1), ratio(8, 5), t.clone()).unwrap());
        assert_eq!(lhs, p.bcz_step().unwrap().scale(&t).unwrap());
    }

    #[test]
    fn upper_half_plane() {
        assert_eq!(
            pt((1, 1), (1, 1)).to_upper_half_plane(),
            (ratio(0, 1), ratio(1, 1))
        );
        assert_eq!(
            pt((1, 2), (3, 4)).to_upper_half_plane(),
            (ratio(1, 2), ratio(4, 1))
        );
    }

    #[test]
    fn tile_corners() {
        assert!(in_tile(&pt((1, 1), (1, 1)), 2));
        assert!(!in_tile(&pt((1, 1), (1, 1)), 1));
        assert!(in_tile(&pt((1, 1), (1, 2)), 4));
        assert!(in_tile(&pt((1, 5), (1, 1)), 1));
        assert!(!in_tile(&pt((1, 1), (2, 5)), 4));
        assert!(in_tile(&pt((1, 1), (2, 5)), 5));
    }

    #[test]
    fn grid_point_matches_rational_step() {
        let mut g = GridPoint::new(1, 5, 5).unwrap();
        let mut p = pt((1, 5), (1, 1));
        for _ in 0..12 {
            assert_eq!(g.to_rational(), p);
            assert_eq!(g.roof(), p.roof());
            g = g.step();
            p = p.bcz_step().unwrap();
        }
    }

    #[test]
    fn float_orbit_stays_in_section() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let trace = OrbitTrace::run(&SectionPoint::new(1.0, golden).unwrap(), 10_000).unwrap();
        for p in &trace.points {
            assert!(SectionPoint::new(*p.a(), *p.b()).is_ok());
        }
    }
}
