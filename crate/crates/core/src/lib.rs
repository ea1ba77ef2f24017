//! Thermodynamic formalism on subshifts of finite type.
//!
//! The crate is organized around a small set of pipelines:
//!
//! * [`sft`] — transition graphs, strongly connected components, primitivity
//!   and power subshifts.
//! * [`thermo`] — pressure, equilibrium edge measures, Manhattan curves,
//!   Legendre rate functions and lattice detection.
//! * [`orbits`] — exact periodic-orbit enumeration and window counting with
//!   big-integer transfer-matrix coefficients.
//! * [`shrink`] — extremal cycle means, Hurwitz approximation and the
//!   constructive synthesis of periodic orbits with shrinking-interval
//!   certificates.
//! * [`freegroup`] — reduced words, word and translation lengths for
//!   arbitrary finite generating sets, geodesic (shortlex cone-type)
//!   automata and dual edge potentials, necklace enumeration.
//! * [`automaton`] / [`io`] — the dual-metric automaton interchange type and
//!   its JSON file format.
//!
//! All numeric tolerances live in [`config::Tolerances`]; enumeration and
//! search caps live in [`config::Budget`].

pub mod automaton;
pub mod config;
pub mod error;
pub mod exact;
pub mod freegroup;
pub mod io;
pub mod orbits;
pub mod sft;
pub mod shrink;
pub mod thermo;

pub use automaton::DualMetricAutomaton;
pub use config::{Budget, Tolerances};
pub use error::{Error, Result};
pub use sft::Sft;
pub use thermo::{EdgePotential, Roof};
