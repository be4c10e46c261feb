//! Simulation of how three-qubit entanglement survives universal quantum
//! cloning.
//!
//! The input family is `cos α |000⟩ + sin α |111⟩`. It is copied either
//! qubit by qubit ([`cloners::Scheme::Local`]) or as a single 8-level system
//! ([`cloners::Scheme::NonLocal`]), optionally over several rounds
//! ([`iteration`]). Entanglement of the outputs is quantified by the
//! tensor measures `E3` and `E2` in [`entanglement`].
//!
//! ```
//! use ghz_cloning::{cloners, entanglement};
//!
//! let ghz = entanglement::input_state(std::f64::consts::FRAC_PI_4).projector();
//! let out = cloners::apply_nonlocal_cloning(&ghz).unwrap();
//! let report = entanglement::measures(out.state()).unwrap();
//! assert!((report.e3 - 25.0 / 81.0).abs() < 1e-12);
//! ```

pub mod cloners;
pub mod entanglement;
pub mod error;
pub mod iteration;
pub mod linalg;
pub mod random;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
