//! Random-instance campaigns: one G(n, p) class per `(n, p)` cell, every
//! instance solved by each requested variant, results as CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;

use eqcol::graph::gen_gnp;
use eqcol::solver::{solve, SolverConfig, Variant};

pub const DATA_HEADER: &str =
    "n,p,index,seed,variant,chi_eq,nodes,time_s,timed_out,prunes_t1,prunes_flow,prunes_hall";
pub const AGGREGATE_HEADER: &str = "n,p,variant,avg_time,timeouts,avg_nodes";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub n_list: Vec<usize>,
    pub p_list: Vec<f64>,
    /// Instances per `(n, p)` cell.
    pub count: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
    pub time_limit: Duration,
    pub cd_stride: usize,
    /// When false, times are written as zero so that reruns produce
    /// byte-identical files.
    pub record_times: bool,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.count == 0 {
            return Err("count must be at least 1".into());
        }
        if self.n_list.is_empty() || self.p_list.is_empty() || self.variants.is_empty() {
            return Err("need at least one n, one p and one variant".into());
        }
        if let Some(p) = self.p_list.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(format!("density {p} outside [0, 1]"));
        }
        if self.cd_stride == 0 {
            return Err("cd-stride must be positive".into());
        }
        if self.time_limit.is_zero() {
            return Err("time limit must be positive".into());
        }
        Ok(())
    }
}

/// Seed of instance `index` in cell `(n, p)`: a splitmix64 chain over the
/// base seed and the cell coordinates.
pub fn instance_seed(base: u64, n: usize, p: f64, index: usize) -> u64 {
    [n as u64, p.to_bits(), index as u64]
        .into_iter()
        .fold(splitmix64(base), |h, x| splitmix64(h ^ x))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub p: f64,
    pub index: usize,
    pub seed: u64,
    pub variant: Variant,
    pub chi_eq: usize,
    pub nodes: u64,
    /// Seconds, rounded to microseconds.
    pub time_s: f64,
    pub timed_out: bool,
    pub prunes_t1: u64,
    pub prunes_flow: u64,
    pub prunes_hall: u64,
}

/// Solves every instance of the campaign, in parallel across instances.
/// Rows come out ordered by `(n, p, index)` and then by variant as listed.
pub fn run_bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let cells: Vec<(usize, f64, usize)> = spec
        .n_list
        .iter()
        .flat_map(|&n| {
            spec.p_list
                .iter()
                .flat_map(move |&p| (0..spec.count).map(move |i| (n, p, i)))
        })
        .collect();
    cells
        .par_iter()
        .flat_map_iter(|&(n, p, index)| {
            let seed = instance_seed(spec.seed, n, p, index);
            let g = gen_gnp(n, p, seed);
            spec.variants
                .iter()
                .map(|&variant| {
                    let cfg = SolverConfig {
                        variant,
                        time_limit: Some(spec.time_limit),
                        cd_stride: spec.cd_stride,
                        seed,
                        ..SolverConfig::default()
                    };
                    let (sol, stats) = solve(&g, &cfg);
                    log::info!(
                        "n={n} p={p} #{index} {variant}: chi_eq {} nodes {}",
                        sol.chi_eq,
                        stats.nodes
                    );
                    let time_s = if spec.record_times {
                        (stats.elapsed.as_secs_f64() * 1e6).round() / 1e6
                    } else {
                        0.0
                    };
                    BenchRow {
                        n,
                        p,
                        index,
                        seed,
                        variant,
                        chi_eq: sol.chi_eq,
                        nodes: stats.nodes,
                        time_s,
                        timed_out: stats.timed_out,
                        prunes_t1: stats.prunes_size_bound,
                        prunes_flow: stats.prunes_flow,
                        prunes_hall: stats.prunes_hall,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn data_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{DATA_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6},{},{},{},{}",
            r.n,
            r.p,
            r.index,
            r.seed,
            r.variant,
            r.chi_eq,
            r.nodes,
            r.time_s,
            r.timed_out,
            r.prunes_t1,
            r.prunes_flow,
            r.prunes_hall
        );
    }
    out
}

pub fn parse_data_csv(text: &str) -> Result<Vec<BenchRow>, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == DATA_HEADER => {}
        _ => return Err(format!("missing header `{DATA_HEADER}`")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let err = |what: &str| format!("line {}: bad {what}", i + 1);
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 12 {
            return Err(format!(
                "line {}: expected 12 fields, found {}",
                i + 1,
                f.len()
            ));
        }
        rows.push(BenchRow {
            n: f[0].parse().map_err(|_| err("n"))?,
            p: f[1].parse().map_err(|_| err("p"))?,
            index: f[2].parse().map_err(|_| err("index"))?,
            seed: f[3].parse().map_err(|_| err("seed"))?,
            variant: f[4].parse().map_err(|_| err("variant"))?,
            chi_eq: f[5].parse().map_err(|_| err("chi_eq"))?,
            nodes: f[6].parse().map_err(|_| err("nodes"))?,
            time_s: f[7].parse().map_err(|_| err("time_s"))?,
            timed_out: f[8].parse().map_err(|_| err("timed_out"))?,
            prunes_t1: f[9].parse().map_err(|_| err("prunes_t1"))?,
            prunes_flow: f[10].parse().map_err(|_| err("prunes_flow"))?,
            prunes_hall: f[11].parse().map_err(|_| err("prunes_hall"))?,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub n: usize,
    pub p: f64,
    pub variant: Variant,
    /// Mean time with each timeout counted as the full time limit.
    pub avg_time: f64,
    pub timeouts: usize,
    /// Mean nodes over the instances of the cell that no variant left
    /// unsolved; `None` if there are none.
    pub avg_nodes: Option<f64>,
}

/// Per-cell, per-variant means. Cells follow the order of first appearance
/// of `(n, p)` in `rows`, variants within a cell likewise.
pub fn aggregate(rows: &[BenchRow], time_limit: Duration) -> Vec<AggregateRow> {
    let key = |r: &BenchRow| (r.n, r.p.to_bits());
    let mut cell_order: Vec<(usize, u64)> = Vec::new();
    let mut unsolved: BTreeMap<(usize, u64), Vec<usize>> = BTreeMap::new();
    for r in rows {
        if !cell_order.contains(&key(r)) {
            cell_order.push(key(r));
        }
        if r.timed_out {
            unsolved.entry(key(r)).or_default().push(r.index);
        }
    }
    let mut out = Vec::new();
    for cell in cell_order {
        let in_cell: Vec<&BenchRow> = rows.iter().filter(|r| key(r) == cell).collect();
        let mut variants: Vec<Variant> = Vec::new();
        for r in &in_cell {
            if !variants.contains(&r.variant) {
                variants.push(r.variant);
            }
        }
        let skip = unsolved.get(&cell).cloned().unwrap_or_default();
        for variant in variants {
            let runs: Vec<&&BenchRow> = in_cell.iter().filter(|r| r.variant == variant).collect();
            let total_time: f64 = runs
                .iter()
                .map(|r| {
                    if r.timed_out {
                        time_limit.as_secs_f64()
                    } else {
                        r.time_s
                    }
                })
                .sum();
            let solved: Vec<u64> = runs
                .iter()
                .filter(|r| !skip.contains(&r.index))
                .map(|r| r.nodes)
                .collect();
            out.push(AggregateRow {
                n: cell.0,
                p: in_cell[0].p,
                variant,
                avg_time: total_time / runs.len() as f64,
                timeouts: runs.iter().filter(|r| r.timed_out).count(),
                avg_nodes: (!solved.is_empty())
                    .then(|| solved.iter().sum::<u64>() as f64 / solved.len() as f64),
            });
        }
    }
    out
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = format!("{AGGREGATE_HEADER}\n");
    for r in rows {
        let nodes = r.avg_nodes.map(|x| format!("{x:.1}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{},{}",
            r.n, r.p, r.variant, r.avg_time, r.timeouts, nodes
        );
    }
    out
}
