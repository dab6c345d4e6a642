//! Induced and restricted representations of finite groups, SO(2)-steerable
//! kernels for lifting planar feature fields to the sphere and to SO(3), and a
//! numerical harness that checks the resulting layers for equivariance.

pub mod error;
pub mod groups;
pub mod induce_restrict;
pub mod kernels;
pub mod layers;
pub mod reps;
pub mod so2_so3;
pub mod tetra;

pub use error::{Error, Result};
