//! Far-field radiation of three dipole-coupled two-level atoms prepared in
//! W- and GHZ-type entangled states.
//!
//! The crate models the two ways three atoms can be arranged with
//! nearest-neighbour dipole coupling — an open line and a closed loop — and
//! computes, for any pure state of the three atoms:
//!
//! * the dimensionless far-field intensity I(θ) from the normally-ordered
//!   correlator sum ([`radiation::intensity_bruteforce`]),
//! * the zero-delay second-order correlation g²(0)
//!   ([`radiation::g2_bruteforce`]),
//! * the excitation-exchange Hamiltonian, its exact spectrum, and which
//!   eigenvectors coincide with the named entangled states ([`dipole`]),
//! * angular and (θ, kd) sweeps plus the angles where g²(0) = 1 ([`scan`]).
//!
//! The per-state closed-form expressions in [`radiation`] mirror the
//! brute-force path and are held to agree with it to 1e-10 by the test
//! suites.

pub mod dipole;
pub mod error;
pub mod geometry;
pub mod qstate;
pub mod radiation;
pub mod scan;
pub mod statefile;

pub use error::{Error, Result};
pub use geometry::{Geometry, Layout};
pub use qstate::{NamedState, PureState};
