//! Synthesis and verification of two-photon state preparation with linear
//! optics.
//!
//! * [`postselect`]: two-qudit states from a two-photon input, conditioned on
//!   one photon per qudit register. Feasible iff `rank(C) <= rank(S_in)`.
//! * [`herald`]: arbitrary two-photon states from `n` single photons with a
//!   herald signal. Feasible iff `n >= rank(S_out)`.
//! * [`gates`]: post-selected `C^{n−1}Z(φ)` gates on dual-rail qubits.
//!
//! Every construction is checked by [`verify`], which runs the interferometer
//! through the permanent-based amplitude engine in [`fock`].

pub mod cli;
pub mod error;
pub mod fock;
pub mod gates;
pub mod herald;
pub mod io;
pub mod linalg;
pub mod postselect;
pub mod random;
pub mod selftest;
pub mod twophoton;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockState, Interferometer};
pub use herald::HeraldPattern;
pub use linalg::{ComplexMatrix, C64};
pub use postselect::SynthesisResult;
pub use twophoton::{QuditTarget, TwoPhotonState};
