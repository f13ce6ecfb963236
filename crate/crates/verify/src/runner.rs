//! Parallel evaluation with canonical (input) ordering.

use harmonic_core::identities::Case;
use harmonic_core::{Evaluator, Report};
use rayon::prelude::*;

/// Evaluate `cases` on `workers` threads, each with its own [`Evaluator`].
/// The output order is the input order regardless of `workers`.
///
/// `rhs_fault` adds 1 to every evaluated right side; it exists to exercise
/// failure paths.
pub fn run_cases(cases: &[Case], workers: usize, rhs_fault: bool) -> Vec<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        cases
            .par_iter()
            .map_init(Evaluator::new, |ev, case| {
                let mut report = ev.evaluate(case);
                if rhs_fault {
                    if let Some(rhs) = report.rhs.as_mut() {
                        *rhs += harmonic_core::exact_arith::int(1);
                        report.reassess();
                    }
                }
                report
            })
            .collect()
    })
}

/// Worker count to use when none is given.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
