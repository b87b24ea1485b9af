//! Adaptive Gauss–Kronrod quadrature on intervals and nested quadrature
//! over the Farey triangle.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::scalar::CompensatedSum;

/// An integral value with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive bisection: always splits the piece with the largest
/// error estimate, until the total falls below `tol` or the piece budget
/// runs out.
fn adapt<F: Fn(f64) -> f64>(f: &F, nodes: &[f64], tol: f64) -> Estimate {
    let mut heap = BinaryHeap::new();
    let mut total_error = 0.0;
    for w in nodes.windows(2) {
        let (value, error) = gk15(f, w[0], w[1]);
        total_error += error;
        heap.push(Piece { a: w[0], b: w[1], value, error });
    }
    while total_error > tol && heap.len() < MAX_INTERVALS {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (lv, le) = gk15(f, worst.a, mid);
        let (rv, re) = gk15(f, mid, worst.b);
        total_error += le + re - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Piece { a: mid, b: worst.b, value: rv, error: re });
    }
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = CompensatedSum::new();
    let mut error = 0.0;
    for p in &pieces {
        value.add(p.value);
        error += p.error;
    }
    Estimate { value: value.value(), error }
}

/// `∫_a^b f` to absolute tolerance `tol`, splitting first at the given
/// breakpoints (those outside `(a, b)` are ignored).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> Estimate {
    if !(b > a) {
        return Estimate { value: 0.0, error: 0.0 };
    }
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > a && *x < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut nodes = Vec::with_capacity(cuts.len() + 2);
    nodes.push(a);
    nodes.extend(cuts);
    nodes.push(b);
    adapt(&f, &nodes, tol)
}

/// `∫∫_Ω f(a, b) da db` (Lebesgue area, no factor 2), integrating `b` over
/// `(1 − a, 1]` inside and `a` over `(0, 1]` outside.
///
/// `inner_breaks(a)` lists the `b`-values where the integrand jumps or
/// kinks; `outer_breaks` lists the `a`-values where the inner integral does.
pub fn integrate_omega<F, B>(f: F, inner_breaks: B, outer_breaks: &[f64], tol: f64) -> Estimate
where
    F: Fn(f64, f64) -> f64,
    B: Fn(f64) -> Vec<f64>,
{
    let worst_inner = Cell::new(0.0f64);
    let inner_tol = 0.1 * tol;
    let outer = integrate(
        |a| {
            let e = integrate(|b| f(a, b), 1.0 - a, 1.0, &inner_breaks(a), inner_tol);
            worst_inner.set(worst_inner.get().max(e.error));
            e.value
        },
        0.0,
        1.0,
        outer_breaks,
        tol,
    );
    Estimate {
        value: outer.value,
        error: outer.error + worst_inner.get(),
    }
}

/// `∫∫ g(x, y) dx dy` over `Ω` in logarithmic coordinates `a = e^{-x}`,
/// `b = e^{-y}`: `x ∈ [0, x_max]` and `0 ≤ y < -ln(1 - e^{-x})`.
///
/// The caller's `g` carries the Jacobian `e^{-x-y}`. Integrands like
/// `R = 1/(ab)` that blow up at the corners of `Ω` become bounded here.
pub fn integrate_omega_log<F, B>(g: F, inner_breaks: B, x_max: f64, tol: f64) -> Estimate
where
    F: Fn(f64, f64) -> f64,
    B: Fn(f64) -> Vec<f64>,
{
    let worst_inner = Cell::new(0.0f64);
    let inner_tol = 0.1 * tol;
    let outer = integrate(
        |x| {
            let top = -(-(-x).exp_m1()).ln();
            let e = integrate(|y| g(x, y), 0.0, top, &inner_breaks(x), inner_tol);
            worst_inner.set(worst_inner.get().max(e.error));
            e.value
        },
        0.0,
        x_max,
        &[],
        tol,
    );
    Estimate {
        value: outer.value,
        error: outer.error + worst_inner.get(),
    }
}
