//! Text reports for `solve` and `verify`.

use std::fmt::Write as _;

use eqcol::graph::Graph;
use eqcol::hallrules::HallRule;
use eqcol::oracle::brute_chi_eq;
use eqcol::solver::{solve, SearchStats, Solution, SolverConfig, Variant};

pub fn solve_report(
    name: &str,
    g: &Graph,
    variant: Variant,
    sol: &Solution,
    stats: &SearchStats,
) -> String {
    let mut out = String::new();
    let status = if sol.optimal {
        "optimal"
    } else {
        "best found, TIMEOUT"
    };
    let _ = writeln!(out, "instance    {name}");
    let _ = writeln!(out, "n           {}", g.n());
    let _ = writeln!(out, "edges       {}", g.edge_count());
    let _ = writeln!(out, "density     {:.4}", g.density());
    let _ = writeln!(out, "variant     {variant}");
    let _ = writeln!(
        out,
        "bounds      {}..{}",
        stats.k_lower, stats.k_upper_initial
    );
    let _ = writeln!(out, "chi_eq      {} ({status})", sol.chi_eq);
    let _ = writeln!(out, "nodes       {}", stats.nodes);
    let _ = writeln!(
        out,
        "prunes      size_bound={} flow={} hall={}",
        stats.prunes_size_bound, stats.prunes_flow, stats.prunes_hall
    );
    let rules: Vec<String> = HallRule::ALL
        .iter()
        .map(|r| format!("{}={}", r.name(), stats.hall_failures_by_rule[r.index()]))
        .collect();
    let _ = writeln!(out, "hall_rules  {}", rules.join(" "));
    let _ = writeln!(out, "flow_solves {}", stats.flow_solves);
    let _ = writeln!(out, "elapsed_s   {:.3}", stats.elapsed.as_secs_f64());
    out
}

/// Coloring as `vertex color` lines, both 1-based as in DIMACS files.
pub fn coloring_lines(coloring: &[usize]) -> String {
    coloring
        .iter()
        .enumerate()
        .map(|(v, c)| format!("{} {}\n", v + 1, c + 1))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Agree {
        chi_eq: usize,
    },
    Mismatch {
        brute: usize,
        solver: Vec<(Variant, usize)>,
    },
    Skipped {
        reason: String,
    },
}

/// Solves `g` with every variant and compares against brute force.
pub fn verify_graph(g: &Graph) -> VerifyOutcome {
    let brute = match brute_chi_eq(g) {
        Ok(k) => k,
        Err(e) => {
            return VerifyOutcome::Skipped {
                reason: e.to_string(),
            }
        }
    };
    let solver: Vec<(Variant, usize)> = Variant::ALL
        .iter()
        .map(|&v| (v, solve(g, &SolverConfig::with_variant(v)).0.chi_eq))
        .collect();
    if solver.iter().all(|&(_, k)| k == brute) {
        VerifyOutcome::Agree { chi_eq: brute }
    } else {
        VerifyOutcome::Mismatch { brute, solver }
    }
}

pub fn verify_line(name: &str, outcome: &VerifyOutcome) -> String {
    match outcome {
        VerifyOutcome::Agree { chi_eq } => {
            format!("ok       {name}: chi_eq {chi_eq} (brute force and all variants)")
        }
        VerifyOutcome::Mismatch { brute, solver } => {
            let got: Vec<String> = solver.iter().map(|(v, k)| format!("{v}={k}")).collect();
            format!("MISMATCH {name}: brute force {brute}, {}", got.join(" "))
        }
        VerifyOutcome::Skipped { reason } => format!("skipped  {name}: {reason}"),
    }
}
