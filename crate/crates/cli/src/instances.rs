//! Instance lookup: DIMACS files or built-in family names.

use std::path::Path;

use anyhow::{bail, Context, Result};

use eqcol::families;
use eqcol::graph::{read_dimacs, Graph};

/// Loads `arg` as a DIMACS file if it exists, otherwise as a family name:
/// `star<k>`, `K<n>`, `cycle<n>`, `path<n>`, `hub-triangles`, or a benchmark
/// name such as `myciel4`, `queen6_6`, `2-Insertions_3`, `1-FullIns_3`.
pub fn load_instance(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.exists() {
        return read_dimacs(path).with_context(|| format!("reading {arg}"));
    }
    if let Some(g) = family(arg) {
        return Ok(g);
    }
    if arg.ends_with(".col") {
        bail!("cannot open {arg}: no such file");
    }
    bail!("`{arg}` is neither a readable file nor a known graph family")
}

fn family(name: &str) -> Option<Graph> {
    let sized = |prefix: &str, min: usize| -> Option<usize> {
        name.strip_prefix(prefix)?
            .parse()
            .ok()
            .filter(|&k| k >= min)
    };
    if let Some(k) = sized("star", 1) {
        return Some(families::star(k));
    }
    if let Some(n) = sized("K", 1) {
        return Some(families::complete(n));
    }
    if let Some(n) = sized("cycle", 3) {
        return Some(families::cycle(n));
    }
    if let Some(n) = sized("path", 1) {
        return Some(families::path(n));
    }
    if name == "hub-triangles" {
        return Some(families::mixed_example());
    }
    families::by_name(name)
}

/// File stem of a path, or the argument itself for family names.
pub fn display_name(arg: &str) -> String {
    Path::new(arg)
        .file_name()
        .map_or_else(|| arg.to_string(), |f| f.to_string_lossy().into_owned())
}
