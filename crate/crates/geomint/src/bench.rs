//! Synthetic benchmark and (optionally parallel) evaluation.

use geomint_core::evalkit::{aggregate, solve_image_trial, EvalReport, Outcome};
use geomint_core::synth::{Generator, JitterParams};
use geomint_core::trials::{generate_trials, Problem, Trial};
use geomint_core::{GrayImage, ModelConfig};
use rayon::prelude::*;

use crate::error::Result;

/// Seed of the `k`-th problem of a generator in a benchmark run.
pub fn problem_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add(k as u64)
}

/// `per_generator` problems for each generator, generators in
/// [`Generator::ALL`] order.
pub fn synthetic_problems(
    seed: u64,
    per_generator: usize,
    params: &JitterParams,
) -> Result<Vec<Problem<GrayImage>>> {
    let mut out = Vec::with_capacity(Generator::ALL.len() * per_generator);
    for g in Generator::ALL {
        for k in 0..per_generator {
            out.push(g.synthesize(params, problem_seed(seed, k))?);
        }
    }
    Ok(out)
}

pub fn synthetic_trials(
    seed: u64,
    per_generator: usize,
    params: &JitterParams,
) -> Result<Vec<Trial<GrayImage>>> {
    let mut trials = Vec::new();
    for p in synthetic_problems(seed, per_generator, params)? {
        trials.extend(generate_trials(&p).expect("synthesized problems are valid"));
    }
    Ok(trials)
}

/// Solves every trial, on `jobs` threads when more than one is requested,
/// and aggregates in trial order. The report does not depend on `jobs`.
pub fn evaluate_trials(
    trials: &[Trial<GrayImage>],
    config: &ModelConfig,
    strict: bool,
    jobs: usize,
) -> Result<EvalReport> {
    let solve = |t: &Trial<GrayImage>| -> Outcome { solve_image_trial(t, config) };
    let outcomes: Vec<Outcome> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| trials.par_iter().map(solve).collect())
    } else {
        trials.iter().map(solve).collect()
    };
    Ok(aggregate(trials, &outcomes, config, strict)?)
}
