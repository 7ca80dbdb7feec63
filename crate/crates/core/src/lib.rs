//! Lifshitz-theory interaction free energies between two half-spaces
//! separated by a gap medium.
//!
//! The crate is split into three layers:
//!
//! * [`materials`] evaluates permittivities on the imaginary frequency axis,
//!   either from Drude/Lorentz oscillator parameters or from a tabulated
//!   absorption spectrum through the Kramers–Kronig relation.
//! * [`lifshitz`] evaluates the Matsubara terms (retarded TM/TE and the
//!   nonretarded limit) and sums them into a free energy per unit area.
//! * [`analysis`] runs distance sweeps and locates features of the energy
//!   curve: sign changes, the repulsion maximum and the zero of the TM part.
//!
//! Sign convention throughout: a positive free energy means repulsion.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod constants;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod numerics;

pub use error::{Error, Result};
