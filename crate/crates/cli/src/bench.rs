//! Wall-clock timing table of the flip-signature pipeline against the
//! naive oracle.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use feynman_gw_core::{feynman_integral_degree_with, naive_integral, FeynmanGraph, Threads, TruncationSpec};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Flip,
    Naive,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Flip => "flip",
            Algo::Naive => "naive",
        }
    }
}

pub struct BenchPlan {
    pub degrees: Vec<u32>,
    pub algos: Vec<Algo>,
    pub reps: usize,
    pub budget: Duration,
    pub threads: Threads,
}

fn run_once(g: &FeynmanGraph, algo: Algo, d: u32, threads: Threads) -> Result<(), CliError> {
    match algo {
        Algo::Flip => feynman_integral_degree_with(g, d, threads).map(drop)?,
        Algo::Naive => naive_integral(g, &TruncationSpec::sufficient(d)).map(drop)?,
    }
    Ok(())
}

/// CSV `degree,algorithm,seconds`, best of `reps`. A cell over budget and
/// every later degree for that algorithm print `--`.
pub fn run(g: &FeynmanGraph, plan: &BenchPlan) -> Result<String, CliError> {
    let mut out = String::from("degree,algorithm,seconds\n");
    let mut exhausted = vec![false; plan.algos.len()];
    for &d in &plan.degrees {
        for (i, &algo) in plan.algos.iter().enumerate() {
            if exhausted[i] {
                let _ = writeln!(out, "{d},{},--", algo.name());
                continue;
            }
            let mut best = Duration::MAX;
            for _ in 0..plan.reps.max(1) {
                let start = Instant::now();
                run_once(g, algo, d, plan.threads)?;
                let t = start.elapsed();
                best = best.min(t);
                if t > plan.budget {
                    break;
                }
            }
            if best > plan.budget {
                exhausted[i] = true;
                let _ = writeln!(out, "{d},{},--", algo.name());
            } else {
                let _ = writeln!(out, "{d},{},{:.6}", algo.name(), best.as_secs_f64());
            }
        }
    }
    Ok(out)
}
