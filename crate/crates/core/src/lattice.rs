//! Unimodular lattices in the plane: vertical vectors, the first section
//! hit, and slopes of lattice vectors in vertical strips.
//!
//! Flowing by `h_s` lowers every slope by `s`, so the times at which the
//! orbit of `Λ` meets `Ω_t` are exactly the slopes of primitive vectors of
//! `Λ` in the strip `V_t = {0 < x ≤ t}`, and consecutive slope gaps are
//! roof values along the `t`-BCZ orbit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynamics::{reduce_to_scaled, ScaledPoint};
use crate::error::{Error, Result};
use crate::matrix::Matrix2;
use crate::scalar::Scalar;

/// Largest determinant defect accepted for float bases.
pub const FLOAT_DET_TOLERANCE: f64 = 1e-12;

/// Coefficient rows [`strip_slopes_bruteforce`] may visit.
pub const SEARCH_LIMIT: u128 = 50_000_000;

/// A lattice `gℤ²`, given by the columns of `g`, `det g = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnimodularBasis<S> {
    matrix: Matrix2<S>,
}

impl<S: Scalar> UnimodularBasis<S> {
    pub fn new(matrix: Matrix2<S>) -> Result<Self> {
        let det = matrix.determinant();
        let ok = if S::EXACT {
            det == S::one()
        } else {
            (det.to_f64() - 1.0).abs() <= FLOAT_DET_TOLERANCE
        };
        if ok {
            Ok(Self { matrix })
        } else {
            Err(Error::InvalidArgument(format!(
                "basis determinant is {det}, not 1"
            )))
        }
    }

    pub fn from_entries(g11: S, g12: S, g21: S, g22: S) -> Result<Self> {
        Self::new(Matrix2::new([[g11, g12], [g21, g22]]))
    }

    pub fn identity() -> Self {
        Self {
            matrix: Matrix2::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix2<S> {
        &self.matrix
    }

    /// The lattice vector `g·(i, j)ᵀ`.
    pub fn vector(&self, i: &BigInt, j: &BigInt) -> (S, S) {
        self.matrix.apply(&S::from_bigint(i), &S::from_bigint(j))
    }

    /// `h_s g`: every vector `(x, y)` moves to `(x, y − sx)`.
    pub fn flow(&self, s: &S) -> Self {
        Self {
            matrix: &Matrix2::horocycle(s) * &self.matrix,
        }
    }

    /// A primitive vertical vector `(0, y)` with `y > 0`, when one exists.
    ///
    /// Exact flavors decide this from the ratio of the `x`-components of the
    /// basis. The float flavor only recognizes a zero `x`-component and
    /// otherwise assumes the ratio is irrational.
    pub fn vertical_vector(&self) -> Option<S> {
        let [[g11, g12], [g21, g22]] = &self.matrix.entries;
        let positive = |y: S| if y < S::zero() { -y } else { y };
        if g11.is_zero() {
            return Some(positive(g21.clone()));
        }
        if g12.is_zero() {
            return Some(positive(g22.clone()));
        }
        let ratio = (g12.clone() / g11.clone()).as_rational()?;
        let (n, d) = (ratio.numer().clone(), ratio.denom().clone());
        // (−n)·column₁ + d·column₂ has x = 0.
        let y = S::from_bigint(&d) * g22.clone() - S::from_bigint(&n) * g21.clone();
        Some(positive(y))
    }

    /// Whether the lattice has a nonzero vertical vector of length `≤ 1/t`.
    pub fn has_short_vertical(&self, t: &S) -> bool {
        match self.vertical_vector() {
            Some(y) => y * t.clone() <= S::one(),
            None => false,
        }
    }
}

/// Slopes `s_1 < s_2 < …` of primitive vectors in `V_t`, and their gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeGapSeries<S> {
    pub t: S,
    pub slopes: Vec<S>,
    pub gaps: Vec<S>,
}

impl<S: Scalar> SlopeGapSeries<S> {
    fn from_slopes(t: S, slopes: Vec<S>) -> Self {
        let gaps = slopes
            .windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .collect();
        Self { t, slopes, gaps }
    }

    /// Proportion of gaps in `(c, d)`, counted with multiplicity.
    pub fn gap_proportion(&self, c: f64, d: f64) -> f64 {
        if self.gaps.is_empty() {
            return 0.0;
        }
        let hits = self
            .gaps
            .iter()
            .map(Scalar::to_f64)
            .filter(|g| c < *g && *g < d)
            .count();
        hits as f64 / self.gaps.len() as f64
    }

    /// Number of distinct gap values in `(c, d)`, compared to 12 significant digits.
    pub fn distinct_gaps_in(&self, c: f64, d: f64) -> usize {
        let mut v: Vec<f64> = self
            .gaps
            .iter()
            .map(Scalar::to_f64)
            .filter(|g| c < *g && *g < d)
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs().max(1.0));
        v.len()
    }
}

fn ceil_bigint<S: Scalar>(v: &S) -> BigInt {
    -(-v.clone()).floor_bigint()
}

/// Integer `j` range satisfying `lo < a + b·j ≤ hi` (`strict_lo`) or
/// `lo ≤ a + b·j ≤ hi`, as inclusive bounds; `None` when empty or unbounded.
fn linear_range<S: Scalar>(a: &S, b: &S, lo: &S, hi: &S, strict_lo: bool) -> Option<(BigInt, BigInt)> {
    if b.is_zero() {
        let ok = if strict_lo { a > lo } else { a >= lo } && a <= hi;
        return if ok { None } else { Some((BigInt::one(), BigInt::zero())) };
    }
    let l = (lo.clone() - a.clone()) / b.clone();
    let h = (hi.clone() - a.clone()) / b.clone();
    let (low, high, low_strict, high_strict) = if *b > S::zero() {
        (l, h, strict_lo, false)
    } else {
        (h, l, false, strict_lo)
    };
    let mut first = ceil_bigint(&low);
    if low_strict && S::from_bigint(&first) == low {
        first += 1;
    }
    let mut last = high.floor_bigint();
    if high_strict && S::from_bigint(&last) == high {
        last -= 1;
    }
    Some((first, last))
}

/// Slopes of primitive lattice vectors with `0 < x ≤ t` and
/// `0 ≤ slope ≤ slope_max`, sorted, by direct enumeration.
pub fn strip_slopes_bruteforce<S: Scalar>(
    basis: &UnimodularBasis<S>,
    t: &S,
    slope_max: &S,
) -> Result<SlopeGapSeries<S>> {
    let vectors = strip_vectors(basis, t, slope_max)?;
    let slopes = vectors.into_iter().map(|(_, _, slope)| slope).collect();
    Ok(SlopeGapSeries::from_slopes(t.clone(), slopes))
}

/// Primitive vectors (as coefficient pairs) in the strip, sorted by slope.
fn strip_vectors<S: Scalar>(
    basis: &UnimodularBasis<S>,
    t: &S,
    slope_max: &S,
) -> Result<Vec<(BigInt, BigInt, S)>> {
    if !(*t > S::zero()) || *slope_max < S::zero() {
        return Err(Error::InvalidArgument(format!(
            "strip width {t} must be positive and slope bound {slope_max} nonnegative"
        )));
    }
    let [[g11, g12], [g21, g22]] = &basis.matrix.entries;
    let y_max = t.clone() * slope_max.clone();
    // (i, j) = g⁻¹(x, y) with g⁻¹ = [[g22, −g12], [−g21, g11]]; bound i over the box corners.
    let corners = [
        (S::zero(), S::zero()),
        (t.clone(), S::zero()),
        (S::zero(), y_max.clone()),
        (t.clone(), y_max.clone()),
    ];
    let is: Vec<S> = corners
        .iter()
        .map(|(x, y)| g22.clone() * x.clone() - g12.clone() * y.clone())
        .collect();
    let lo = is.iter().cloned().fold(is[0].clone(), |m, v| if v < m { v } else { m });
    let hi = is.iter().cloned().fold(is[0].clone(), |m, v| if v > m { v } else { m });
    let (i_first, i_last) = (ceil_bigint(&lo), hi.floor_bigint());
    let rows = if i_last >= i_first {
        (&i_last - &i_first + 1u32).to_u128().unwrap_or(u128::MAX)
    } else {
        0
    };
    if rows > SEARCH_LIMIT {
        return Err(Error::SearchRadius {
            requested: rows,
            limit: SEARCH_LIMIT,
        });
    }
    let mut found: Vec<(BigInt, BigInt, S)> = Vec::new();
    let mut i = i_first;
    while i <= i_last {
        let si = S::from_bigint(&i);
        let ax = g11.clone() * si.clone();
        let ay = g21.clone() * si.clone();
        let rx = linear_range(&ax, g12, &S::zero(), t, true);
        let ry = linear_range(&ay, g22, &S::zero(), &y_max, false);
        let range = match (rx, ry) {
            (Some(a), Some(b)) => Some((a.0.max(b.0), a.1.min(b.1))),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let Some((j_first, j_last)) = range else {
            return Err(Error::InvalidArgument(
                "degenerate basis: strip contains infinitely many vectors".into(),
            ));
        };
        let mut j = j_first;
        while j <= j_last {
            if i.gcd(&j).is_one() {
                let (x, y) = basis.vector(&i, &j);
                let slope = y / x;
                if slope <= *slope_max {
                    found.push((i.clone(), j.clone(), slope));
                }
            }
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap_or(std::cmp::Ordering::Equal));
    for w in found.windows(2) {
        if w[0].2 == w[1].2 {
            return Err(Error::Internal(format!(
                "distinct primitive vectors ({}, {}) and ({}, {}) share slope {}",
                w[0].0, w[0].1, w[1].0, w[1].1, w[0].2
            )));
        }
    }
    Ok(found)
}

/// Extended gcd: `(k, l)` with `i·l − j·k = 1` for coprime `i, j`.
fn complement(i: &BigInt, j: &BigInt) -> (BigInt, BigInt) {
    let e = i.extended_gcd(j);
    // e.x·i + e.y·j = gcd = ±1
    let sign = if e.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    (-(e.y * &sign), e.x * sign)
}

/// The first time `s_1 ≥ 0` at which `h_{s_1}Λ` lies in `Ω_t`, and the point it lands on.
pub fn first_section_hit<S: Scalar>(basis: &UnimodularBasis<S>, t: &S) -> Result<(S, ScaledPoint<S>)> {
    // A vertical vector of length exactly 1/t still leaves strip vectors
    // with x = t, so only strictly shorter ones make the orbit miss Ω_t.
    if let Some(y) = basis.vertical_vector() {
        if y.clone() * t.clone() < S::one() {
            return Err(Error::VerticallyShort {
                length: y.to_string(),
            });
        }
    }
    let mut slope_max = S::one();
    for _ in 0..200 {
        let vectors = strip_vectors(basis, t, &slope_max)?;
        if let Some((i, j, s1)) = vectors.into_iter().next() {
            let (x, _) = basis.vector(&i, &j);
            let (k, l) = complement(&i, &j);
            let (w1, _) = basis.vector(&k, &l);
            let (p, _) = reduce_to_scaled(x, w1, t.clone())?;
            return Ok((s1, p));
        }
        slope_max = slope_max * S::from_i64(4);
    }
    Err(Error::Internal("no strip vector found below slope 4^200".into()))
}

/// `s_1` and the `N + 1` slopes `s_{n+1} = s_n + R_t(T_tⁿ p)` generated by the `t`-BCZ map.
pub fn slope_gaps_via_bcz<S: Scalar>(basis: &UnimodularBasis<S>, t: &S, n: u64) -> Result<SlopeGapSeries<S>> {
    let (s1, mut p) = first_section_hit(basis, t)?;
    let mut slopes = Vec::with_capacity(usize::try_from(n).unwrap_or(0).min(1 << 24) + 1);
    let mut s = s1;
    slopes.push(s.clone());
    for i in 0..n {
        s = s + p.roof();
        slopes.push(s.clone());
        p = p.step_at(i)?;
    }
    Ok(SlopeGapSeries::from_slopes(t.clone(), slopes))
}

/// Proportion of the first `n` gaps lying in `(c, d)`, with multiplicity.
pub fn gap_distribution<S: Scalar>(basis: &UnimodularBasis<S>, t: &S, n: u64, c: f64, d: f64) -> Result<f64> {
    Ok(slope_gaps_via_bcz(basis, t, n)?.gap_proportion(c, d))
}

/// Sup-norm length of the shortest nonzero lattice vector (float).
pub fn shortest_vector_length(basis: &Matrix2<f64>) -> f64 {
    let [[g11, g12], [g21, g22]] = basis.entries;
    let len = |x: f64, y: f64| x.abs().max(y.abs());
    let bound = len(g11, g21).min(len(g12, g22));
    // |i|, |j| ≤ ‖g⁻¹‖_∞ · bound
    let inv_norm = (g22.abs() + g12.abs()).max(g21.abs() + g11.abs());
    let r = (inv_norm * bound).ceil() as i64;
    let mut best = bound;
    for i in -r..=r {
        for j in 0..=r {
            if j == 0 && i <= 0 {
                continue;
            }
            let (fi, fj) = (i as f64, j as f64);
            let v = len(g11 * fi + g12 * fj, g21 * fi + g22 * fj);
            if v < best {
                best = v;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        ratio(p, d)
    }

    #[test]
    fn vertical_vectors() {
        let id = UnimodularBasis::<BigRational>::identity();
        assert!(id.has_short_vertical(&q(1, 1)));
        let p = UnimodularBasis::from_entries(q(1, 5), q(1, 1), q(0, 1), q(5, 1)).unwrap();
        assert_eq!(p.vertical_vector(), Some(q(5, 1)));
        assert!(!p.has_short_vertical(&q(1, 1)));
        assert!(p.has_short_vertical(&q(1, 5)));
        let irr = UnimodularBasis::from_entries(1.0, 2f64.sqrt(), 0.0, 1.0).unwrap();
        assert!(!irr.has_short_vertical(&1.0));
    }

    #[test]
    fn identity_strip_slopes() {
        let id = UnimodularBasis::<BigRational>::identity();
        let s = strip_slopes_bruteforce(&id, &q(1, 1), &q(5, 1)).unwrap();
        assert_eq!(s.slopes, (0..=5).map(|n| q(n, 1)).collect::<Vec<_>>());
    }

    #[test]
    fn first_hits() {
        let b = UnimodularBasis::from_entries(q(1, 1), q(1, 1), q(0, 1), q(1, 1)).unwrap();
        let (s1, p) = first_section_hit(&b, &q(1, 1)).unwrap();
        assert_eq!(s1, q(0, 1));
        assert_eq!((p.x().clone(), p.y().clone()), (q(1, 1), q(1, 1)));
        let b = UnimodularBasis::from_entries(q(1, 5), q(1, 1), q(0, 1), q(5, 1)).unwrap();
        let (s1, p) = first_section_hit(&b, &q(1, 1)).unwrap();
        assert_eq!(s1, q(0, 1));
        assert_eq!((p.x().clone(), p.y().clone()), (q(1, 5), q(1, 1)));
    }

    #[test]
    fn bcz_slopes_match_enumeration_for_a_sheared_lattice() {
        let b = UnimodularBasis::from_entries(q(2, 3), q(1, 7), q(-1, 2), q(39, 28)).unwrap();
        let t = q(3, 2);
        let brute = strip_slopes_bruteforce(&b, &t, &q(30, 1)).unwrap();
        let bcz = slope_gaps_via_bcz(&b, &t, brute.slopes.len() as u64 - 1).unwrap();
        assert_eq!(brute.slopes, bcz.slopes);
    }

    #[test]
    fn shortest_vector_of_identity() {
        let id = Matrix2::<f64>::identity();
        assert_eq!(shortest_vector_length(&id), 1.0);
        let skew = Matrix2::new([[0.5, 0.3], [0.0, 2.0]]);
        assert!((shortest_vector_length(&skew) - 0.5).abs() < 1e-15);
    }
}
