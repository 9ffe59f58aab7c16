//! Typed instances of the reduction chain from 3DM to RESTRICTED KRONECKER,
//! the reductions, small solvers, the padding generator and the constraint
//! verifiers.

pub mod chain;
pub mod generate;
pub mod instances;
pub mod ratio;
pub mod solve;
pub mod verify;

pub use chain::*;
pub use generate::{base_no_instance, generate_no_instances, padded_instance, padding_block, parse_hex_bits, shortlex};
pub use instances::{
    Consistency, FourPartition, MachineFlow, NumberPartition, Permutation, Rn3dm, Rnmts, ThreeDm, ThreePartition,
};
pub use ratio::{Epsilon, Ratio};
pub use solve::{solve_3dm, solve_3partition, solve_4partition, solve_permutation, solve_rn3dm, solve_rnmts};
pub use verify::{
    exceptional_candidate_check, kron_cone_sufficient, verify_restricted, ConeCertificate, ExceptionalReport,
    PedestalParams, RestrictedKronecker, RestrictedReport, RestrictedVerdict, Verdict,
};
