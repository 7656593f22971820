//! Fixtures shared by the benchmarks.

use mimred_core::generate::InstanceSpec;
use mimred_core::reduction::build_reduction;
use mimred_core::ReductionOutput;

/// Reduction output of a generated instance.
pub fn fixture(spec: InstanceSpec) -> ReductionOutput {
    build_reduction(&spec.build().expect("valid spec")).expect("padded instance")
}

pub fn dense(k: usize, p: usize) -> InstanceSpec {
    InstanceSpec::Random {
        k,
        p,
        q: 0.9,
        seed: 7,
    }
}

pub fn forced_no(k: usize, p: usize) -> InstanceSpec {
    InstanceSpec::ForcedNo { k, p, seed: 7 }
}
