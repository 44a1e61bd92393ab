//! Exact solver for the equitable coloring problem: the fewest colors such
//! that every two adjacent vertices differ and class sizes differ by at most
//! one.

pub mod coloring;
pub mod decomposition;
pub mod families;
pub mod flownet;
pub mod graph;
pub mod hallrules;
pub mod maxflow;
pub mod oracle;
pub mod solver;
