//! Numerical laboratory for the photon-box weighing argument.
//!
//! * [`hilbert`]: truncated Fock-space operators, expectation values and
//!   indeterminacies of a single oscillator mode.
//! * [`states`]: Fock, coherent and superposition states; Gaussian packets.
//! * [`dynamics`]: oscillator rotation and exact free-particle spreading.
//! * [`pulse`]: time/frequency widths of classical shutter pulses.
//! * [`debate`]: relation chain audit, coherent-state counterexample scan,
//!   weighing simulation and the indeterminacy/uncertainty separation.
//! * [`scenario`], [`runner`] and [`report`]: scenario files, their execution,
//!   and the JSON/CSV reports written by the `photonbox` binary.

pub mod debate;
pub mod defaults;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod hilbert;
pub mod pulse;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
