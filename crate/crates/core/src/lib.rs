//! The BCZ map: the first return of horocycle flow on the space of
//! unimodular lattices to the Farey triangle `Ω`.
//!
//! Farey sequences are periodic orbits of this map, so gap, index and
//! moment statistics of `F(Q)` become Birkhoff sums. The crate computes
//! those orbits exactly, the limiting integrals over `Ω` in closed form
//! and by quadrature, the periodic structure of rational-slope points,
//! cusp excursions, and slope gaps of planar lattices.
//!
//! Every dynamical routine is generic over [`Scalar`]: `BigRational` for
//! exact work and `f64` for long float runs with drift monitoring.
//!
//! ```
//! use horocycle::{farey_orbit, SectionPoint};
//! use horocycle::scalar::ratio;
//!
//! let p = SectionPoint::new(ratio(1, 5), ratio(1, 1))?;
//! assert_eq!(p.bcz_step()?, SectionPoint::new(ratio(1, 1), ratio(4, 5))?);
//! assert_eq!(farey_orbit(5)?.denominators(), &[1, 5, 4, 3, 5, 2, 5, 3, 4, 5]);
//! # Ok::<(), horocycle::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod excursions;
pub mod farey;
pub mod lattice;
pub mod matrix;
pub mod measure;
pub mod periodic;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use dynamics::{GridPoint, OrbitTrace, ScaledPoint, SectionPoint};
pub use error::{Error, Result};
pub use farey::{farey_orbit, EmpiricalMeasure, FareySequence, Interval};
pub use lattice::{SlopeGapSeries, UnimodularBasis};
pub use matrix::{IntMatrix2, Matrix2};
pub use scalar::Scalar;
