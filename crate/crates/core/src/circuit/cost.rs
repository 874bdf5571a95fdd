use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{compile, Circuit, CircuitError, CompilePath, Gate, DEFAULT_WIDTH_CAP};
use crate::cnf::CnfFormula;

/// Gate tallies plus the projected elementary-gate cost.
///
/// Projection per gate: a C^1-NOT is one elementary C-NOT; a C^k-NOT with
/// k >= 2 costs 3(k-1) C-NOTs and 4(k-1) single-qubit gates. NOTs are
/// tallied separately in `not_count` and not folded into `elementary_single`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub mcx_by_arity: BTreeMap<usize, usize>,
    pub not_count: usize,
    pub elementary_cnot: usize,
    pub elementary_single: usize,
}

impl GateCounts {
    pub fn of(c: &Circuit) -> Self {
        let mut counts = GateCounts::default();
        for g in c.gates() {
            match g {
                Gate::Not { .. } => counts.not_count += 1,
                Gate::Mcx { controls, .. } => {
                    let k = controls.len();
                    *counts.mcx_by_arity.entry(k).or_default() += 1;
                    if k == 1 {
                        counts.elementary_cnot += 1;
                    } else {
                        counts.elementary_cnot += 3 * (k - 1);
                        counts.elementary_single += 4 * (k - 1);
                    }
                }
            }
        }
        counts
    }

    pub fn mcx_total(&self) -> usize {
        self.mcx_by_arity.values().sum()
    }

    pub fn total_gates(&self) -> usize {
        self.mcx_total() + self.not_count
    }

    /// `key: value` lines.
    pub fn report(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gates: {}", self.total_gates())?;
        writeln!(f, "not: {}", self.not_count)?;
        for (k, count) in &self.mcx_by_arity {
            writeln!(f, "c{k}-not: {count}")?;
        }
        writeln!(f, "elementary_cnot: {}", self.elementary_cnot)?;
        writeln!(f, "elementary_single: {}", self.elementary_single)
    }
}

/// Counts for the circuit [`compile`] produces with [`CompilePath::Auto`],
/// before any peephole pass.
pub fn cost_model(f: &CnfFormula) -> Result<GateCounts, CircuitError> {
    let circuit = compile(f, CompilePath::Auto, DEFAULT_WIDTH_CAP)?;
    Ok(GateCounts::of(&circuit))
}
