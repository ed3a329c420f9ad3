//! Multi-threaded simulation. Workers take disjoint contiguous block ranges;
//! the per-block seeds make the merged counts equal to a sequential run.

use std::num::NonZeroUsize;
use std::thread;

use twospace_core::montecarlo::{SimConfig, SimCounts, SimResult, Simulator};
use twospace_core::{Analysis, Result, SchemeInstance};

pub fn default_workers() -> usize {
    thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
}

pub fn run_counts(simulator: &Simulator, cfg: &SimConfig, workers: usize) -> SimCounts {
    let blocks = cfg.blocks();
    let workers = (workers.max(1) as u64).min(blocks.end.max(1));
    let per = blocks.end.div_ceil(workers);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * per).min(blocks.end)..((w + 1) * per).min(blocks.end);
                scope.spawn(move || simulator.run_blocks(cfg.seed, range, cfg.trials))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation worker panicked"))
            .fold(SimCounts::default(), SimCounts::merge)
    })
}

pub fn simulate(scheme: &SchemeInstance, cfg: &SimConfig, workers: usize) -> Result<SimResult> {
    cfg.validate()?;
    let analysis = Analysis::new(scheme)?;
    let simulator = Simulator::new(&analysis, &cfg.strategy)?;
    let counts = run_counts(&simulator, cfg, workers);
    let exact_pe = analysis.run(&cfg.strategy)?.pe;
    Ok(SimResult::from_counts(counts, analysis.pb().clone(), exact_pe, &cfg.confidence))
}
