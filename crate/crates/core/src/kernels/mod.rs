//! SO(2)-steerable kernel bases solved numerically, and the plane-to-sphere, plane-to-SO(3),
//! plane-to-volume and plane-to-ℝ³×S² kernel families assembled from them.

pub mod families;
pub mod radial;
pub mod solver;

pub use families::{
    build_induction_kernel, build_r3s2_kernel, build_so3_kernel, build_volume_kernel, harmonic_input, AngularCutoff,
    InductionKernel, R3S2Kernel, So3Kernel, VolumeKernel,
};
pub use radial::RadialProfileSet;
pub use solver::{analytic_count, nullspace, AngularSolution, BasisSummary, SteerableKernelBasis, NULLSPACE_TOL};
