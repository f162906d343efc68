//! Desk-scale laboratory for growth phenomena in finite simple groups:
//! exact nonabelian Fourier identities, character tables, skew-product
//! searches, structure detectors, and second-moment Monte Carlo checks,
//! all on groups small enough that everything is verifiable by brute force.

pub mod chartab;
pub mod error;
pub mod fourier;
pub mod gf;
pub mod group;
pub mod growth;
pub mod perm;
pub mod prob;

pub use error::{Error, Result};
pub use group::{build_group, build_group_with_cap, Elem, Group, GroupSpec};
pub use perm::Perm;
