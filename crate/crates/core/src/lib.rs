//! Exactly and quasi-exactly solvable periodic potentials of Lamé type.
//!
//! * [`elliptic`]: Jacobi elliptic functions and K(m).
//! * [`potential`]: associated Lamé potentials `p m sn² + q m cn²/dn²`.
//! * [`spectra`]: closed-form band edges and the quasi-exactly-solvable engine.
//! * [`susy`]: superpotentials, partner potentials, partner eigenstates.
//! * [`hill`]: Floquet discriminant and numerical band edges.
//! * [`verify`]: the acceptance checks shared by the test suite and the CLI.
//!
//! The numerical core is generic over the scalar type ([`Real`]); the aliases
//! at the crate root fix it to `f64`.

pub mod config;
pub mod elliptic;
pub mod error;
pub mod hill;
pub mod potential;
pub mod scalar;
pub mod spectra;
pub mod susy;
pub mod taylor;
pub mod verify;

pub use config::{Tolerances, TOL};
pub use elliptic::{ellip_k, jacobi, jacobi_shift, Shift};
pub use error::{Error, Result};
pub use scalar::Real;

pub type Modulus = elliptic::Modulus<f64>;
pub type JacobiTriple = elliptic::JacobiTriple<f64>;
pub type Elliptic = elliptic::Elliptic<f64>;
pub type PotentialSpec = potential::PotentialSpec<f64>;
pub type Extremum = potential::Extremum<f64>;
pub type AnalyticState = spectra::AnalyticState<f64>;
pub type StateSet = spectra::StateSet<f64>;
pub type Deltas = spectra::Deltas<f64>;
pub type QesBlock = spectra::QesBlock<f64>;
pub type Superpotential = susy::Superpotential<f64>;
pub type PartnerPair = susy::PartnerPair<f64>;
pub type Discriminant = hill::Discriminant<f64>;
pub type BandEdge = hill::BandEdge<f64>;
pub type BandStructure = hill::BandStructure<f64>;

/// Single-precision aliases.
pub mod single {
    pub type Modulus = crate::elliptic::Modulus<f32>;
    pub type Elliptic = crate::elliptic::Elliptic<f32>;
    pub type PotentialSpec = crate::potential::PotentialSpec<f32>;
    pub type AnalyticState = crate::spectra::AnalyticState<f32>;
}
