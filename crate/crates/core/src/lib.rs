//! Best simultaneous approximation in linear 2-normed spaces.
//!
//! The crate provides two concrete 2-normed spaces ([`spaces::Space`]), the
//! seminorm family `x ↦ ‖x, b‖`, distance functionals, a multi-start min-max
//! solver for `inf_g sup_f ‖f − g, b‖` over a finite-dimensional subspace,
//! a brute-force grid oracle, dual certificates for the distance to a
//! subspace, and finite-prefix diagnostics for sequences.
//!
//! ```
//! use twonorm::{Element, Space, SpaceSpec};
//!
//! let space = Space::new(SpaceSpec::EuclideanGram { dim: 3 }).unwrap();
//! let x = Element::from(vec![1.0, 0.0, 0.0]);
//! let y = Element::from(vec![0.0, 3.0, 0.0]);
//! assert_eq!(space.two_norm(&x, &y).unwrap(), 3.0);
//! ```

pub mod approx;
pub mod cli;
pub mod element;
pub mod error;
pub mod json;
pub mod rng;
pub mod sequences;
pub mod spaces;

pub use approx::{
    blend_check, certificate, distance_to_subspace, oracle_solve, phi, set_distance, solve,
    uniqueness_probe, verify_certificate, BlendReport, Certificate, CertificateCheck,
    OracleResult, SimultaneousProblem, SolveReport, SolverConfig, SubspaceBasis,
    UniquenessReport,
};
pub use element::Element;
pub use error::{Error, Result};
pub use spaces::{check_axioms, AxiomReport, Space, SpaceSpec, TwoNorm};
