//! Runs the pipeline, optionally fanning the levels out over threads.
//! Reports are assembled in level order whatever the scheduling, and all
//! level randomness is derived from (seed, level), so thread count never
//! changes the result. Timing goes to stderr only, never into results.

use std::time::Instant;

use polarpoints_core::driver::{
    assemble, prepare, run_level, AuditToggles, DriverError, LevelInput, LevelReport, Mode,
    RunConfig, RunReport,
};
use polarpoints_core::polycore::Rat;
use polarpoints_core::sysbuild::InputSystem;

pub struct ExecOptions {
    pub epsilon: Rat,
    pub mode: Mode,
    pub seed: u64,
    pub width: Rat,
    pub audits: bool,
    pub verbose: bool,
    pub threads: usize,
}

pub fn execute(sys: &InputSystem, opts: &ExecOptions) -> Result<RunReport, DriverError> {
    let mut cfg = RunConfig::new(opts.epsilon.clone(), opts.mode, opts.seed);
    cfg.width = opts.width.clone();
    if !opts.audits {
        cfg.audits =
            AuditToggles { minor_oracle: false, h1: false, regularity: false, noether: false };
    }
    let (sets, dlsz, drawn, warnings, inputs) = prepare(sys, &cfg)?;
    if opts.verbose {
        eprintln!(
            "sample sizes: S={} T={} R={} k={}; {} level{}",
            sets.s_size,
            sets.t_size,
            sets.r_size,
            sets.k,
            inputs.len(),
            if inputs.len() == 1 { "" } else { "s" }
        );
    }
    let levels = if opts.threads > 1 && inputs.len() > 1 {
        run_threaded(&inputs, opts.threads, opts.verbose)
    } else {
        inputs.iter().map(|i| run_one(i, opts.verbose)).collect()
    };
    Ok(assemble(sys, &cfg, sets, dlsz, drawn, warnings, levels))
}

fn run_one(input: &LevelInput, verbose: bool) -> LevelReport {
    let start = Instant::now();
    let rep = run_level(input);
    if verbose {
        eprintln!(
            "level {}: {} with {} real point{} in {:.3}s",
            input.level,
            rep.status,
            rep.points.len(),
            if rep.points.len() == 1 { "" } else { "s" },
            start.elapsed().as_secs_f64()
        );
    }
    rep
}

fn run_threaded(inputs: &[LevelInput], threads: usize, verbose: bool) -> Vec<LevelReport> {
    let workers = threads.min(inputs.len());
    let mut slots: Vec<Option<LevelReport>> = (0..inputs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut done = Vec::new();
                    let mut i = w;
                    while i < inputs.len() {
                        done.push((i, run_one(&inputs[i], verbose)));
                        i += workers;
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, rep) in h.join().expect("level worker panicked") {
                slots[i] = Some(rep);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every level ran")).collect()
}
