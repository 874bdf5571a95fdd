//! Compile CNF formulas into NOT / multi-controlled-NOT circuits, run them on
//! a uniformly mixed input register, and read every satisfying assignment off
//! the work spin's NMR multiplet.
//!
//! Pipeline: [`cnf::parse_dimacs`] → [`circuit::compile`] →
//! [`sim::run`] → [`spectrum::multiplet_lines`] → [`spectrum::extract_solutions`],
//! with [`cnf::brute_force_solutions`] as the reference answer.

pub mod circuit;
pub mod cnf;
pub mod sim;
pub mod spectrum;

pub use circuit::{Circuit, CircuitError, CompilePath, Gate, GateCounts, QubitLayout, Role};
pub use cnf::{Assignment, Clause, CnfError, CnfFormula, Literal};
pub use sim::{PopulationState, SimError, SolutionReport};
pub use spectrum::{Spectrum, SpectrumError, SpectrumLine, SpinSystem};
