//! Workloads shared by the benchmarks.

use xplain_core::monotone::LinearModel;
use xplain_core::testgen::{random_circuit, random_monotone, random_point};
use xplain_core::{CircuitProblem, Instance, MonotoneProblem};

/// A random d-DNNF over `m` features with a class-0 instance, drawn from the
/// first seed at or after `seed` that has at least `min_nodes` nodes.
pub fn circuit_workload(seed: u64, m: usize, depth: usize, min_nodes: usize) -> CircuitProblem {
    for s in seed.. {
        let c = random_circuit(s, m, depth);
        if c.num_nodes() < min_nodes {
            continue;
        }
        for k in 0..200 {
            let p = random_point(s * 1000 + k, m);
            if c.evaluate(&p).expect("arity matches") == 0 {
                return CircuitProblem::new(c, None, &Instance::boolean(&p, 0)).expect("class 0 instance");
            }
        }
    }
    unreachable!()
}

pub fn monotone_workload(seed: u64, m: usize, classes: usize) -> MonotoneProblem<LinearModel> {
    let (model, inst) = random_monotone(seed, m, classes);
    MonotoneProblem::new(model, &inst).expect("instance is predicted")
}
