//! One function per subcommand, each returning a [`Table`].

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use horocycle::excursions::{excursion_averages_with_checkpoints, golden_start, ExcursionAverages};
use horocycle::farey::{farey_cardinality, EmpiricalMeasure, Interval};
use horocycle::lattice::{slope_gaps_via_bcz, strip_slopes_bruteforce, SlopeGapSeries, UnimodularBasis};
use horocycle::measure::{
    excursion_integrals, excursion_integrals_quadrature, hall_cdf, hall_cdf_quadrature, hall_kinks, kappa_moment,
    moment_integral, moment_integral_quadrature, roof_integral, roof_integral_quadrature, roof_region_measure,
    roof_region_measure_quadrature, tile_measure, tile_partition_sum, QUADRATURE_TOLERANCE,
};
use horocycle::periodic::{
    discrete_period, hierarchy_report, periodic_report, segment_bounds, shear_conjugation_check,
};
use horocycle::scalar::parse_ratio;
use horocycle::{IntMatrix2, Matrix2, OrbitTrace, Scalar, SectionPoint};
use log::warn;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{num, Table};
use crate::{Failure, Outcome};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn params<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).unwrap_or(Value::Null)
}

/// A command-line number: `p/q` or an integer is exact, anything with a
/// decimal point or exponent is a float.
enum Number {
    Exact(BigRational),
    Float(f64),
}

fn parse_number(text: &str) -> Outcome<Number> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E']) {
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Number::Float)
            .ok_or_else(|| usage(format!("cannot parse {text:?} as a number")))
    } else {
        parse_ratio(t)
            .map(Number::Exact)
            .ok_or_else(|| usage(format!("cannot parse {text:?} as a fraction p/q")))
    }
}

fn parse_float(text: &str) -> Outcome<f64> {
    match parse_number(text)? {
        Number::Float(x) => Ok(x),
        Number::Exact(r) => Ok(r.to_f64()),
    }
}

trait Cell {
    fn cell(&self) -> Value;
}

impl Cell for BigRational {
    fn cell(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Cell for f64 {
    fn cell(&self) -> Value {
        num(*self)
    }
}

fn matrix_cell(m: &IntMatrix2) -> Value {
    let [[a, b], [c, d]] = m.entries();
    Value::String(format!("[[{a}, {b}], [{c}, {d}]]"))
}

// ---------------------------------------------------------------- farey

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FareyStat {
    Gaps,
    Index,
    Moments,
    Excursion,
}

#[derive(Debug, Args, Serialize)]
pub struct FareyArgs {
    /// Level Q of the Farey sequence.
    #[arg(value_parser = clap::value_parser!(u64).range(1..=2_000_000))]
    pub level: u64,
    /// Restrict to fractions in [LO, HI].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.0, 1.0])]
    pub interval: Vec<f64>,
    #[arg(long, value_enum, default_value = "gaps")]
    pub stat: FareyStat,
    /// Histogram bins for `gaps` (default: min(50, number of fractions)).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Upper end of the gap histogram range.
    #[arg(long, default_value_t = 4.0)]
    pub max_gap: f64,
    /// Exponent of the index mean for `index`.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Largest index tabulated by `index`.
    #[arg(long, default_value_t = 20)]
    pub max_index: u64,
    /// Exponent pairs for `moments`, as `s,t` with complex parts like `0.5+2i`.
    #[arg(long = "st", value_name = "S,T")]
    pub st: Vec<String>,
}

pub fn farey(args: &FareyArgs) -> Outcome<Table> {
    let interval = Interval::new(args.interval[0], args.interval[1])?;
    let m = EmpiricalMeasure::for_level(args.level, interval)?;
    match args.stat {
        FareyStat::Gaps => farey_gaps(args, &m),
        FareyStat::Index => farey_index(args, &m),
        FareyStat::Moments => farey_moments(args, &m),
        FareyStat::Excursion => farey_excursion(args, &m),
    }
}

fn farey_summary(t: &mut Table, m: &EmpiricalMeasure) {
    t.note("cardinality", m.sequence().len());
    t.note("fractions_in_interval", m.count());
}

fn farey_gaps(args: &FareyArgs, m: &EmpiricalMeasure) -> Outcome<Table> {
    let bins = args.bins.unwrap_or_else(|| m.count().min(50));
    if bins == 0 {
        return Err(usage("--bins must be positive"));
    }
    if !(args.max_gap > 0.0) {
        return Err(usage("--max-gap must be positive"));
    }
    let gaps = m.normalized_gaps();
    let width = args.max_gap / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut overflow = 0u64;
    for g in &gaps {
        let i = (g / width).floor() as usize;
        match counts.get_mut(i) {
            Some(c) => *c += 1,
            None => overflow += 1,
        }
    }
    let total = gaps.len() as f64;
    let length = m.interval().length();
    let mut t = Table::new(
        "farey",
        params(args),
        &["bin_lo", "bin_hi", "count", "proportion", "empirical_cdf", "hall_cdf"],
    );
    farey_summary(&mut t, m);
    t.note("overflow", overflow);
    t.note("mean_normalized_gap", num(gaps.iter().sum::<f64>() / total));
    let mut running = 0u64;
    for (i, &c) in counts.iter().enumerate() {
        running += c;
        let hi = (i + 1) as f64 * width;
        t.push(vec![
            num(i as f64 * width),
            num(hi),
            json!(c),
            num(c as f64 / total),
            num(running as f64 / total),
            num(hall_cdf(hi, length)?),
        ]);
    }
    Ok(t)
}

fn farey_index(args: &FareyArgs, m: &EmpiricalMeasure) -> Outcome<Table> {
    if !(args.alpha > 0.0) {
        return Err(usage("--alpha must be positive"));
    }
    let values = m.index_values();
    let total = values.len() as f64;
    let max = values.iter().copied().max().unwrap_or(1);
    let mut t = Table::new("farey", params(args), &["index", "count", "frequency", "tile_measure"]);
    farey_summary(&mut t, m);
    let mean = values.iter().map(|&k| (k as f64).powf(args.alpha)).sum::<f64>() / total;
    t.note("mean_index_power", num(mean));
    t.note("limit", kappa_moment(args.alpha).map(num).unwrap_or(Value::Null));
    t.note("max_index", max);
    for k in 1..=args.max_index.min(max) {
        let c = values.iter().filter(|&&v| v == k).count();
        t.push(vec![
            json!(k),
            json!(c),
            num(c as f64 / total),
            num(tile_measure(k)?.to_f64()),
        ]);
    }
    Ok(t)
}

fn parse_complex(text: &str) -> Outcome<Complex64> {
    text.trim()
        .parse::<Complex64>()
        .map_err(|_| usage(format!("cannot parse {text:?} as a complex number")))
}

fn farey_moments(args: &FareyArgs, m: &EmpiricalMeasure) -> Outcome<Table> {
    let pairs: Vec<(Complex64, Complex64)> = if args.st.is_empty() {
        [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 0.0), (-0.5, -0.5), (-1.0, 0.0), (-1.0, -1.0)]
            .iter()
            .map(|&(s, t)| (Complex64::new(s, 0.0), Complex64::new(t, 0.0)))
            .collect()
    } else {
        args.st
            .iter()
            .map(|p| {
                let (s, t) = p.split_once(',').ok_or_else(|| usage(format!("expected s,t but got {p:?}")))?;
                Ok((parse_complex(s)?, parse_complex(t)?))
            })
            .collect::<Outcome<_>>()?
    };
    let mut t = Table::new(
        "farey",
        params(args),
        &["s", "t", "empirical_re", "empirical_im", "limit_re", "limit_im"],
    );
    farey_summary(&mut t, m);
    for (s, u) in pairs {
        let e = m.moment_sum(s, u);
        let l = moment_integral(s, u)?;
        t.push(vec![
            json!(s.to_string()),
            json!(u.to_string()),
            num(e.re),
            num(e.im),
            num(l.re),
            num(l.im),
        ]);
    }
    Ok(t)
}

fn farey_excursion(args: &FareyArgs, m: &EmpiricalMeasure) -> Outcome<Table> {
    let (inv, max) = excursion_integrals();
    let peak = |p: &horocycle::GridPoint| horocycle::measure::peak(p.a_f64(), p.b_f64());
    let rows: [(&str, f64, f64); 5] = [
        ("a", m.integral(|p| p.a_f64()), 2.0 / 3.0),
        ("1/a", m.integral(|p| 1.0 / p.a_f64()), 2.0),
        ("M", m.integral(peak), max),
        ("1/M", m.integral(|p| 1.0 / peak(p)), inv),
        ("R", m.integral(|p| p.roof_f64()), roof_integral()),
    ];
    let mut t = Table::new("farey", params(args), &["statistic", "empirical", "limit"]);
    farey_summary(&mut t, m);
    for (name, e, l) in rows {
        t.push(vec![json!(name), num(e), num(l)]);
    }
    Ok(t)
}

// ---------------------------------------------------------------- hall-cdf

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Quadrature,
}

#[derive(Debug, Args, Serialize)]
pub struct HallArgs {
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long, default_value_t = 3.0)]
    pub to: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Length |I| of the interval.
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
    /// Add a column computed independently.
    #[arg(long, value_enum)]
    pub oracle: Option<Oracle>,
}

pub fn hall_cdf_cmd(args: &HallArgs) -> Outcome<Table> {
    if !(args.step > 0.0) || !(args.from >= 0.0) || !(args.to >= args.from) {
        return Err(usage("need 0 <= --from <= --to and --step > 0"));
    }
    if !(args.length > 0.0 && args.length <= 1.0) {
        return Err(usage("--length must lie in (0, 1]"));
    }
    let steps = ((args.to - args.from) / args.step + 1e-9).floor() as usize;
    if steps > 10_000_000 {
        return Err(usage("grid has more than 10^7 points"));
    }
    let kinks = hall_kinks(args.length);
    let mut grid: Vec<(f64, &str)> = (0..=steps).map(|i| (args.from + i as f64 * args.step, "")).collect();
    for (k, label) in kinks.iter().zip(["R=1", "R=4"]) {
        if (args.from..=args.to).contains(k) {
            grid.push((*k, label));
        }
    }
    grid.sort_by(|x, y| x.0.total_cmp(&y.0));

    let length = args.length;
    let oracle = args.oracle.is_some();
    let values: Vec<(f64, Option<f64>)> = grid
        .par_iter()
        .map(|&(d, _)| {
            let closed = hall_cdf(d, length)?;
            let q = if oracle {
                Some(hall_cdf_quadrature(d, length, QUADRATURE_TOLERANCE)?.value)
            } else {
                None
            };
            Ok((closed, q))
        })
        .collect::<horocycle::Result<_>>()?;

    let mut columns = vec!["d", "cdf", "kink"];
    if oracle {
        columns.extend(["quadrature", "abs_diff"]);
    }
    let mut t = Table::new("hall-cdf", params(args), &columns);
    t.note("kink_r1", num(kinks[0]));
    t.note("kink_r4", num(kinks[1]));
    let mut worst = 0f64;
    for (&(d, label), &(closed, q)) in grid.iter().zip(&values) {
        let mut row = vec![num(d), num(closed), json!(label)];
        if let Some(q) = q {
            worst = worst.max((q - closed).abs());
            row.extend([num(q), num((q - closed).abs())]);
        }
        t.push(row);
    }
    if oracle {
        t.note("max_abs_diff", num(worst));
    }
    Ok(t)
}

// ---------------------------------------------------------------- orbit

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    /// First coordinate, `p/q` for exact arithmetic or a decimal for floats.
    pub a: String,
    /// Second coordinate.
    pub b: String,
    /// Number of BCZ steps to print.
    #[arg(short, long, default_value_t = 10)]
    pub n: u64,
    /// Report the period, flow period and cocycle of the (exact) point.
    #[arg(long)]
    pub periodic: bool,
}

pub fn orbit(args: &OrbitArgs) -> Outcome<Table> {
    let mut t = Table::new("orbit", params(args), &["step", "a", "b", "R", "kappa"]);
    match (parse_number(&args.a)?, parse_number(&args.b)?) {
        (Number::Exact(a), Number::Exact(b)) => {
            let p = SectionPoint::new(a, b)?;
            orbit_rows(&mut t, &p, args.n)?;
            t.note("arithmetic", "exact");
            if args.periodic {
                let r = periodic_report(&p)?;
                t.note("slope", format!("{}/{}", r.slope.0, r.slope.1));
                t.note("discrete_period", r.discrete_period);
                t.note("predicted_period", r.predicted_period);
                t.note("continuous_period", r.continuous_period.to_string());
                t.note("matrix", matrix_cell(&r.cocycle_matrix));
                t.note("trace", r.cocycle_matrix.trace().to_string());
                t.note("matches_theorem", r.matches_theorem());
            }
        }
        (a, b) => {
            if args.periodic {
                return Err(usage("--periodic needs exact p/q coordinates"));
            }
            warn!("decimal input runs the orbit in floating point");
            let f = |n: Number| match n {
                Number::Exact(r) => r.to_f64(),
                Number::Float(x) => x,
            };
            let p = SectionPoint::new(f(a), f(b))?;
            orbit_rows(&mut t, &p, args.n)?;
            t.note("arithmetic", "float");
        }
    }
    Ok(t)
}

fn orbit_rows<S: Scalar + Cell>(t: &mut Table, p: &SectionPoint<S>, n: u64) -> Outcome<()> {
    let trace = OrbitTrace::run(p, n)?;
    for (i, (q, (r, k))) in trace.points.iter().zip(trace.returns.iter().zip(&trace.indices)).enumerate() {
        t.push(vec![json!(i), q.a().cell(), q.b().cell(), r.cell(), json!(k)]);
    }
    if let Some(back) = trace.points.iter().skip(1).position(|q| q == p) {
        t.note("first_return", back + 1);
    }
    Ok(())
}

// ---------------------------------------------------------------- excursions

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedStart {
    /// `(1, 1/φ)`.
    Golden,
    /// `(1, √2 − 1)`.
    Silver,
}

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("origin").args(["slope_irrational", "start"]))]
pub struct ExcursionArgs {
    /// Named starting point with irrational slope.
    #[arg(long, value_enum)]
    pub slope_irrational: Option<NamedStart>,
    /// Explicit starting point `a b` in the section.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub start: Vec<String>,
    /// Number of BCZ steps.
    #[arg(short, long, default_value_t = 1_000_000)]
    pub n: u64,
    /// Checkpoint spacing (default: N/10).
    #[arg(long)]
    pub every: Option<u64>,
}

pub fn excursions(args: &ExcursionArgs) -> Outcome<Table> {
    let start = if args.start.len() == 2 {
        if args.start.iter().all(|s| matches!(parse_number(s), Ok(Number::Exact(_)))) {
            warn!("exact start has rational slope; its orbit is periodic and the averages do not converge to the integrals");
        }
        SectionPoint::new(parse_float(&args.start[0])?, parse_float(&args.start[1])?)?
    } else {
        match args.slope_irrational.unwrap_or(NamedStart::Golden) {
            NamedStart::Golden => golden_start(),
            NamedStart::Silver => SectionPoint::new(1.0, 2f64.sqrt() - 1.0)?,
        }
    };
    if args.n == 0 {
        return Err(usage("-n must be positive"));
    }
    let every = args.every.unwrap_or((args.n / 10).max(1));
    if every == 0 {
        return Err(usage("--every must be positive"));
    }
    let (last, mut checkpoints) = excursion_averages_with_checkpoints(&start, args.n, every)?;
    if checkpoints.last().map(|c| c.steps) != Some(last.steps) {
        checkpoints.push(last);
    }
    let (inv, max) = excursion_integrals();
    let mut t = Table::new("excursions", params(args), &["steps", "a_N", "l_N", "A_N", "L_N"]);
    t.note("start_a", num(*start.a()));
    t.note("start_b", num(*start.b()));
    let targets = ExcursionAverages {
        steps: 0,
        a_n: 2.0,
        l_n: 2.0 / 3.0,
        big_a_n: inv,
        big_l_n: max,
    };
    for (key, got, want) in [
        ("a_N", last.a_n, targets.a_n),
        ("l_N", last.l_n, targets.l_n),
        ("A_N", last.big_a_n, targets.big_a_n),
        ("L_N", last.big_l_n, targets.big_l_n),
    ] {
        t.note(&format!("final_{key}"), num(got));
        t.note(&format!("target_{key}"), num(want));
    }
    for c in &checkpoints {
        t.push(vec![json!(c.steps), num(c.a_n), num(c.l_n), num(c.big_a_n), num(c.big_l_n)]);
    }
    Ok(t)
}

// ---------------------------------------------------------------- slopes

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("lattice").args(["basis", "random"]).required(true))]
pub struct SlopeArgs {
    /// Basis matrix entries `g11 g12 g21 g22` (columns are the basis vectors).
    #[arg(long, num_args = 4, value_names = ["G11", "G12", "G21", "G22"], allow_hyphen_values = true)]
    pub basis: Vec<String>,
    /// Use a random float basis drawn from `--seed`.
    #[arg(long)]
    pub random: bool,
    /// Strip width.
    #[arg(short, long, default_value = "1")]
    pub t: String,
    /// Number of BCZ steps, one gap each (default: 1000, or two periods when the lattice has a vertical vector).
    #[arg(short, long)]
    pub n: Option<u64>,
    /// Emit gaps and their scaled values instead of slopes.
    #[arg(long)]
    pub gaps: bool,
    /// Report the proportion of scaled gaps `t²·gap` in `(C, D)`.
    #[arg(long, num_args = 2, value_names = ["C", "D"])]
    pub window: Vec<f64>,
    /// Compare against direct lattice enumeration.
    #[arg(long)]
    pub check: bool,
}

fn random_basis(seed: u64) -> Matrix2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotation = |th: f64| Matrix2::new([[th.cos(), -th.sin()], [th.sin(), th.cos()]]);
    let mut g = rotation(rng.random_range(0.0..2.0 * PI));
    for _ in 0..3 {
        let u: f64 = rng.random_range(-1.0..1.0);
        let v: f64 = rng.random_range(-1.0..1.0);
        g = &(&g * &Matrix2::new([[1.0, u], [0.0, 1.0]])) * &Matrix2::new([[1.0, 0.0], [v, 1.0]]);
    }
    &g * &rotation(rng.random_range(0.0..2.0 * PI))
}

pub fn slopes(args: &SlopeArgs, seed: u64) -> Outcome<Table> {
    if args.window.len() == 2 && !(args.window[0] < args.window[1]) {
        return Err(usage("--window needs C < D"));
    }
    let mut columns = vec!["index", "slope"];
    if args.gaps {
        columns = vec!["index", "gap", "scaled_gap"];
    }
    let mut table = Table::new("slopes", params(args), &columns);
    table.note("seed", seed);
    let t = parse_number(&args.t)?;
    let entries: Option<Vec<BigRational>> = args
        .basis
        .iter()
        .map(|s| match parse_number(s) {
            Ok(Number::Exact(r)) => Some(Ok(r)),
            Ok(Number::Float(_)) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Option<Outcome<Vec<_>>>>()
        .transpose()?;
    match (entries, t) {
        (Some(e), Number::Exact(t)) if !args.random => {
            let [g11, g12, g21, g22]: [BigRational; 4] = e.try_into().map_err(|_| usage("--basis takes four entries"))?;
            let basis = UnimodularBasis::from_entries(g11, g12, g21, g22)?;
            table.note("arithmetic", "exact");
            slope_table(&mut table, args, &basis, &t)?;
        }
        (_, t) => {
            let t = match t {
                Number::Exact(r) => r.to_f64(),
                Number::Float(x) => x,
            };
            let m = if args.random {
                random_basis(seed)
            } else {
                warn!("decimal input runs the slope search in floating point");
                let v = args.basis.iter().map(|s| parse_float(s)).collect::<Outcome<Vec<_>>>()?;
                Matrix2::new([[v[0], v[1]], [v[2], v[3]]])
            };
            let [[g11, g12], [g21, g22]] = m.entries;
            table.note("basis", format!("[[{g11:e}, {g12:e}], [{g21:e}, {g22:e}]]"));
            table.note("arithmetic", "float");
            let basis = UnimodularBasis::new(m)?;
            slope_table(&mut table, args, &basis, &t)?;
        }
    }
    Ok(table)
}

fn same<S: Scalar>(x: &S, y: &S) -> bool {
    if S::EXACT {
        x == y
    } else {
        (x.to_f64() - y.to_f64()).abs() <= 1e-9 * y.to_f64().abs().max(1.0)
    }
}

/// Smallest `p ≤ len/2` with `gaps[i] = gaps[i + p]` throughout.
fn minimal_period<S: Scalar>(gaps: &[S]) -> Option<usize> {
    (1..=gaps.len() / 2).find(|&p| (0..gaps.len() - p).all(|i| same(&gaps[i], &gaps[i + p])))
}

fn slope_table<S: Scalar + Cell>(table: &mut Table, args: &SlopeArgs, basis: &UnimodularBasis<S>, t: &S) -> Outcome<()> {
    if !(*t > S::zero()) {
        return Err(usage("-t must be positive"));
    }
    let predicted = basis.vertical_vector().map(|y| (y * t.clone()).floor_u64()).filter(|&m| m >= 1);
    let predicted = predicted.map(farey_cardinality);
    let n = args.n.unwrap_or_else(|| predicted.map_or(1000, |p| (2 * p).max(1000)));
    if n == 0 {
        return Err(usage("-n must be positive"));
    }
    let series: SlopeGapSeries<S> = slope_gaps_via_bcz(basis, t, n)?;
    table.note("first_slope", series.slopes[0].cell());
    if let Some(p) = predicted {
        table.note("predicted_period", p);
    }
    if let Some(y) = basis.vertical_vector() {
        table.note("vertical_vector", y.cell());
    }
    table.note(
        "detected_period",
        minimal_period(&series.gaps).map_or(Value::Null, |p| json!(p)),
    );
    if args.window.len() == 2 {
        let (c, d) = (args.window[0], args.window[1]);
        let t2 = t.to_f64() * t.to_f64();
        let inside = series.gaps.iter().filter(|g| {
            let x = g.to_f64() * t2;
            c < x && x < d
        });
        table.note("window_proportion", num(inside.count() as f64 / series.gaps.len() as f64));
        table.note("window_limit", num(roof_region_measure(c, d)?.value));
    }
    if args.check {
        let brute = strip_slopes_bruteforce(basis, t, series.slopes.last().expect("at least one slope"))?;
        let ok = brute.slopes.len() == series.slopes.len()
            && brute.slopes.iter().zip(&series.slopes).all(|(x, y)| same(x, y));
        table.note("enumeration_matches", ok);
    }
    let t2 = t.clone() * t.clone();
    if args.gaps {
        for (i, g) in series.gaps.iter().enumerate() {
            table.push(vec![json!(i + 1), g.cell(), (g.clone() * t2.clone()).cell()]);
        }
    } else {
        for (i, s) in series.slopes.iter().enumerate() {
            table.push(vec![json!(i + 1), s.cell()]);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- periodic

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("mode").args(["k", "hierarchy", "sweep"]).required(true))]
pub struct PeriodicArgs {
    /// Slope numerator k of the points `t·(1, k/l)`.
    #[arg(requires = "l")]
    pub k: Option<u64>,
    /// Slope denominator l.
    pub l: Option<u64>,
    /// Periods of `(t, t/Q)` for every level `Q ≤ QMAX`.
    #[arg(long, value_name = "QMAX")]
    pub hierarchy: Option<u64>,
    /// Periods and cocycles of `(1, k/l)` for all `0 < k ≤ l ≤ L`.
    #[arg(long, value_name = "L")]
    pub sweep: Option<u64>,
}

pub fn periodic(args: &PeriodicArgs) -> Outcome<Table> {
    if let Some(q) = args.hierarchy {
        if !(1..=2000).contains(&q) {
            return Err(usage("--hierarchy must lie in 1..=2000"));
        }
        let records = hierarchy_report(q)?;
        let mut t = Table::new(
            "periodic",
            params(args),
            &["level", "expected_period", "min_sampled", "max_sampled", "jump", "totient_next", "consistent"],
        );
        t.note("all_consistent", records.iter().all(|r| r.consistent()));
        for r in records {
            let periods = r.samples.iter().map(|(_, p)| *p);
            t.push(vec![
                json!(r.level),
                json!(r.expected_period),
                json!(periods.clone().min()),
                json!(periods.max()),
                json!(r.jump),
                json!(r.totient_next),
                json!(r.consistent()),
            ]);
        }
        return Ok(t);
    }
    if let Some(lmax) = args.sweep {
        if !(1..=500).contains(&lmax) {
            return Err(usage("--sweep must lie in 1..=500"));
        }
        let slopes: Vec<(u64, u64)> = (1..=lmax)
            .flat_map(|l| (1..=l).filter(move |k| k.gcd(&l) == 1).map(move |k| (k, l)))
            .collect();
        let reports = slopes
            .par_iter()
            .map(|&(k, l)| {
                let p = SectionPoint::new(BigRational::from_integer(1.into()), BigRational::new(k.into(), l.into()))?;
                Ok((k, l, periodic_report(&p)?, shear_conjugation_check(k, l)?.holds))
            })
            .collect::<horocycle::Result<Vec<_>>>()?;
        let mut t = Table::new(
            "periodic",
            params(args),
            &["k", "l", "discrete_period", "predicted_period", "continuous_period", "trace", "matrix", "matches_theorem", "shear_form"],
        );
        t.note("all_match", reports.iter().all(|(_, _, r, s)| r.matches_theorem() && *s));
        for (k, l, r, shear) in reports {
            t.push(vec![
                json!(k),
                json!(l),
                json!(r.discrete_period),
                json!(r.predicted_period),
                json!(r.continuous_period.to_string()),
                json!(r.cocycle_matrix.trace().to_string()),
                matrix_cell(&r.cocycle_matrix),
                json!(r.matches_theorem()),
                json!(shear),
            ]);
        }
        return Ok(t);
    }
    let (k, l) = (args.k.unwrap_or(0), args.l.unwrap_or(0));
    if k == 0 || l == 0 || k > l || k.gcd(&l) != 1 || l > 100_000 {
        return Err(usage("need coprime 0 < k <= l <= 100000"));
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let slope = BigRational::new(k.into(), l.into());
    let report = periodic_report(&SectionPoint::new(one, slope.clone())?)?;
    let shear = shear_conjugation_check(k, l)?;
    let mut t = Table::new("periodic", params(args), &["segment", "t_lo", "t_hi", "predicted_period", "period_at_t_hi"]);
    t.note("discrete_period", report.discrete_period);
    t.note("continuous_period", report.continuous_period.to_string());
    t.note("matrix", matrix_cell(&report.cocycle_matrix));
    t.note("matches_theorem", report.matches_theorem());
    t.note("shear_form", shear.holds);
    for r in 1..=k {
        let (lo, hi) = segment_bounds(k, l, r)?;
        let p = SectionPoint::new(hi.clone(), &hi * &slope)?;
        t.push(vec![
            json!(r),
            json!(lo.to_string()),
            json!(hi.to_string()),
            json!(horocycle::periodic::period_on_segment(k, l, r)?),
            json!(discrete_period(&p)?),
        ]);
    }
    Ok(t)
}

// ---------------------------------------------------------------- measure

#[derive(Debug, Args, Serialize)]
pub struct MeasureArgs {
    /// Add `m(R ∈ (C, D))`.
    #[arg(long, num_args = 2, value_names = ["C", "D"])]
    pub region: Vec<f64>,
    /// Add the moment `∫ a^s b^t dm` for real `s, t > -1`.
    #[arg(long, num_args = 2, value_names = ["S", "T"], allow_hyphen_values = true)]
    pub moment: Vec<f64>,
    /// Add `∫ κ^α dm` for `0 < α < 2`.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Tabulate `m(Ω_k)` for `k ≤ K`.
    #[arg(long, value_name = "K")]
    pub tiles: Option<u64>,
}

pub fn measure(args: &MeasureArgs) -> Outcome<Table> {
    let tol = QUADRATURE_TOLERANCE;
    let mut t = Table::new("measure", params(args), &["quantity", "closed_form", "oracle", "oracle_error", "difference"]);
    let push = |t: &mut Table, name: String, closed: f64, oracle: f64, err: f64| {
        t.push(vec![json!(name), num(closed), num(oracle), num(err), num((closed - oracle).abs())]);
    };
    let (sum, rest) = tile_partition_sum(1000);
    push(&mut t, "sum m(Omega_k)".into(), 1.0, sum + rest, 0.0);
    let r = roof_integral_quadrature(tol);
    push(&mut t, "int R dm".into(), roof_integral(), r.value, r.error);
    for (s, u) in [(1.0, 0.0), (-0.5, -0.5)] {
        let q = moment_integral_quadrature(s, u, tol);
        let c = moment_integral(Complex64::new(s, 0.0), Complex64::new(u, 0.0))?.re;
        push(&mut t, format!("int a^{s} b^{u} dm"), c, q.value, q.error);
    }
    let (inv, max) = excursion_integrals();
    let (qi, qm) = excursion_integrals_quadrature(tol);
    push(&mut t, "int 1/M dm".into(), inv, qi.value, qi.error);
    push(&mut t, "int M dm".into(), max, qm.value, qm.error);
    if args.region.len() == 2 {
        let (c, d) = (args.region[0], args.region[1]);
        let q = roof_region_measure_quadrature(c, d, tol)?;
        push(&mut t, format!("m(R in ({c}, {d}))"), roof_region_measure(c, d)?.value, q.value, q.estimated_error);
    }
    if args.moment.len() == 2 {
        let (s, u) = (args.moment[0], args.moment[1]);
        let c = moment_integral(Complex64::new(s, 0.0), Complex64::new(u, 0.0))?.re;
        if !(s > -1.0 && u > -1.0) {
            return Err(usage("--moment quadrature needs s, t > -1"));
        }
        let q = moment_integral_quadrature(s, u, tol);
        push(&mut t, format!("int a^{s} b^{u} dm"), c, q.value, q.error);
    }
    if let Some(alpha) = args.kappa {
        let closed = kappa_moment(alpha)?;
        // Direct partial sum with the tail bounded by 8 Σ_{k>K} k^{α−3}.
        const K: u64 = 1_000_000;
        let mut s = horocycle::scalar::CompensatedSum::new();
        s.add(1.0 / 3.0);
        for k in (2..=K).rev() {
            let k = k as f64;
            s.add(8.0 * k.powf(alpha) / (k * (k + 1.0) * (k + 2.0)));
        }
        let tail = 8.0 * (K as f64).powf(alpha - 2.0) / (2.0 - alpha);
        push(&mut t, format!("int kappa^{alpha} dm"), closed, s.value(), tail);
    }
    if let Some(k) = args.tiles {
        if !(1..=100_000).contains(&k) {
            return Err(usage("--tiles must lie in 1..=100000"));
        }
        for j in 1..=k {
            let m = tile_measure(j)?;
            t.push(vec![json!(format!("m(Omega_{j})")), num(m.to_f64()), json!(m.to_string()), Value::Null, Value::Null]);
        }
    }
    Ok(t)
}
