//! Timing of the recognizer on generated instances, in both scan modes.

use std::time::Instant;

use anyhow::{ensure, Result};
use fcig_core::gen;
use fcig_core::pairs::ScanMode;
use fcig_core::pipeline::{recognize, Options};
use fcig_core::Graph;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct Row {
    pub n: usize,
    pub trial: usize,
    pub mode: ScanMode,
    pub hash: String,
    pub m: usize,
    pub reductions: usize,
    pub scans: usize,
    pub initial_candidates: usize,
    pub seconds: f64,
}

impl Row {
    pub fn line(&self) -> String {
        let mode = match self.mode {
            ScanMode::Amortized => "amortized",
            ScanMode::Rescan => "rescan",
        };
        format!(
            "{} {} {} {} {} {} {} {} {:.6}",
            self.n, self.trial, mode, self.hash, self.m, self.reductions, self.scans, self.initial_candidates, self.seconds
        )
    }
}

pub const HEADER: &str = "n trial mode hash m reductions scans candidates seconds";

pub fn graph_hash(g: &Graph) -> String {
    hex::encode(&Sha256::digest(g.to_text().as_bytes())[..8])
}

/// The instance of trial `trial`: seeded by `seed + trial`.
pub fn instance(n: usize, seed: u64, trial: usize) -> Graph {
    let mut rng = gen::rng(seed.wrapping_add(trial as u64));
    gen::scaling_instance(&mut rng, n).0
}

pub fn run(n: usize, trials: usize, seed: u64, modes: &[ScanMode]) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for trial in 0..trials {
        let g = instance(n, seed, trial);
        let hash = graph_hash(&g);
        for &mode in modes {
            let start = Instant::now();
            let v = recognize(&g, Options { scan: mode, linear: false })?;
            let seconds = start.elapsed().as_secs_f64();
            ensure!(v.is_yes(), "generated instance {hash} was rejected");
            let c = &v.components[0];
            rows.push(Row {
                n: g.vertex_count(),
                trial,
                mode,
                hash: hash.clone(),
                m: g.edge_count(),
                reductions: v.reductions(),
                scans: c.stats.scans,
                initial_candidates: c.stats.initial_candidates,
                seconds,
            });
        }
    }
    Ok(rows)
}
