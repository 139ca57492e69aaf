//! Exact lower bounds for Seshadri constants of ample line bundles at
//! general points of surfaces, nefness certificates, and applications.

pub mod apps;
pub mod bounds;
pub mod error;
pub mod exactmath;
pub mod lptest;
pub mod nefcert;
pub mod stats;

pub use bounds::{epsilon_basic, epsilon_refined, BoundWitness, SeshadriBound, SetTag};
pub use error::{Error, Result};
pub use exactmath::{Integer, Rational};
pub use nefcert::{check_nef_criterion, BlowupDivisorClass, CurveData, NefCertificate};
