//! Exact simulation of the mixed-state scheme.
//!
//! NOT and MCX only permute computational basis states, so a density operator
//! that starts diagonal stays diagonal. The state is therefore kept as its
//! diagonal: one population per basis index.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{control_mask, Circuit, Gate, QubitLayout, Wire};
use crate::cnf::Assignment;

/// Widest register the dense population vector is allowed to cover.
pub const DEFAULT_SIM_WIDTH_CAP: usize = 24;

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("register width {width} exceeds cap {cap}")]
    WidthLimit { width: usize, cap: usize },
    #[error("wire {wire} out of range for width {width}")]
    WireOutOfRange { wire: Wire, width: usize },
    #[error("state width {state} does not match layout width {layout}")]
    WidthMismatch { state: usize, layout: usize },
    #[error("assignment {0} is not in pipeline form (missing or split weight)")]
    NotPipelineForm(Assignment),
    #[error("marginal must keep at least one wire")]
    EmptyKeep,
    #[error("invalid population vector: {0}")]
    InvalidState(String),
}

/// Diagonal of a density operator over `width` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationState {
    width: usize,
    populations: Vec<f64>,
}

impl PopulationState {
    pub fn new(width: usize, populations: Vec<f64>) -> Result<Self, SimError> {
        if width >= 64 || populations.len() as u64 != 1u64 << width {
            return Err(SimError::InvalidState(format!(
                "expected 2^{width} entries, got {}",
                populations.len()
            )));
        }
        if populations.iter().any(|&p| !(p >= 0.0)) {
            return Err(SimError::InvalidState("negative or NaN weight".into()));
        }
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(SimError::InvalidState(format!("weights sum to {total}")));
        }
        Ok(Self { width, populations })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn weight(&self, index: u64) -> f64 {
        self.populations[index as usize]
    }

    pub fn total_weight(&self) -> f64 {
        self.populations.iter().sum()
    }

    /// Basis indices with non-zero weight, ascending.
    pub fn support(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.populations
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(|(i, &p)| (i as u64, p))
    }

    pub fn apply_gate(&self, gate: &Gate) -> Result<Self, SimError> {
        let mut next = self.clone();
        next.apply_in_place(gate)?;
        Ok(next)
    }

    fn apply_in_place(&mut self, gate: &Gate) -> Result<(), SimError> {
        let wire = gate.max_wire();
        if wire >= self.width {
            return Err(SimError::WireOutOfRange {
                wire,
                width: self.width,
            });
        }
        // Both gates are conditional bit flips on the target, hence
        // involutions: swap each index with target bit 0 against its partner.
        let bit = 1usize << gate.target();
        let mask = control_mask(gate.controls()) as usize;
        for i in 0..self.populations.len() {
            if i & bit == 0 && i & mask == mask {
                self.populations.swap(i, i | bit);
            }
        }
        Ok(())
    }

    /// Two-column table, one row per non-zero basis state. Bitstrings read
    /// highest wire first: `s_m..s_1 x_n..x_1 I0`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.support() {
            out.push_str(&format!("{:0w$b} {p}\n", i, w = self.width.max(1)));
        }
        out
    }
}

/// Pipeline input populations: work and scratch wires at 0, variables uniformly
/// mixed over all `2^n` assignments.
pub fn initial_mixed_state(layout: &QubitLayout) -> Result<PopulationState, SimError> {
    initial_mixed_state_capped(layout, DEFAULT_SIM_WIDTH_CAP)
}

pub fn initial_mixed_state_capped(
    layout: &QubitLayout,
    cap: usize,
) -> Result<PopulationState, SimError> {
    let width = layout.width();
    if width > cap || width >= 63 {
        return Err(SimError::WidthLimit { width, cap });
    }
    let n = layout.num_vars();
    let weight = 0.5f64.powi(n as i32);
    let mut populations = vec![0.0; 1usize << width];
    for x in 0..1usize << n {
        populations[x << 1] = weight;
    }
    Ok(PopulationState { width, populations })
}

pub fn apply_gate(s: &PopulationState, g: &Gate) -> Result<PopulationState, SimError> {
    s.apply_gate(g)
}

/// Evolves the initial mixed state through every gate of `c`.
pub fn run(c: &Circuit) -> Result<PopulationState, SimError> {
    run_capped(c, DEFAULT_SIM_WIDTH_CAP)
}

pub fn run_capped(c: &Circuit, cap: usize) -> Result<PopulationState, SimError> {
    let mut state = initial_mixed_state_capped(&c.layout(), cap)?;
    for g in c.gates() {
        state.apply_in_place(g)?;
    }
    Ok(state)
}

/// Sums out every wire not in `keep`. Kept wires are renumbered in ascending
/// order of their original index.
pub fn marginalize(s: &PopulationState, keep: &[Wire]) -> Result<PopulationState, SimError> {
    let mut keep: Vec<Wire> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(SimError::EmptyKeep);
    }
    if let Some(&wire) = keep.iter().find(|&&w| w >= s.width) {
        return Err(SimError::WireOutOfRange {
            wire,
            width: s.width,
        });
    }
    let mut populations = vec![0.0; 1usize << keep.len()];
    for (i, p) in s.support() {
        let j = keep
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &w)| acc | ((((i >> w) & 1) as usize) << k));
        populations[j] += p;
    }
    Ok(PopulationState {
        width: keep.len(),
        populations,
    })
}

/// Assignments split by the work-qubit value they ended up with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub true_space: BTreeSet<Assignment>,
    pub false_space: BTreeSet<Assignment>,
    pub count: usize,
}

impl SolutionReport {
    pub fn new(true_space: BTreeSet<Assignment>, false_space: BTreeSet<Assignment>) -> Self {
        let count = true_space.len();
        Self {
            true_space,
            false_space,
            count,
        }
    }

    /// Builds the report for `n` variables from the satisfying set alone.
    pub fn from_solutions(num_vars: usize, solutions: BTreeSet<Assignment>) -> Self {
        let false_space = (0..1u64 << num_vars)
            .map(|x| Assignment::from_index(x, num_vars))
            .filter(|a| !solutions.contains(a))
            .collect();
        Self::new(solutions, false_space)
    }

    pub fn is_satisfiable(&self) -> bool {
        self.count > 0
    }

    /// One-line summary, e.g. `2 solutions: 011 110`.
    pub fn summary(&self) -> String {
        match self.count {
            0 => "0 solutions (unsatisfiable)".to_string(),
            n => {
                let list: Vec<String> = self.true_space.iter().map(ToString::to_string).collect();
                let noun = if n == 1 { "solution" } else { "solutions" };
                format!("{n} {noun}: {}", list.join(" "))
            }
        }
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// Reads the work qubit of each assignment's surviving basis state.
pub fn true_space(s: &PopulationState, layout: &QubitLayout) -> Result<SolutionReport, SimError> {
    if s.width != layout.width() {
        return Err(SimError::WidthMismatch {
            state: s.width,
            layout: layout.width(),
        });
    }
    let n = layout.num_vars();
    let var_mask = (1u64 << n) - 1;
    let mut pattern: Vec<Option<u64>> = vec![None; 1usize << n];
    for (i, _) in s.support() {
        let x = (i >> 1) & var_mask;
        let slot = &mut pattern[x as usize];
        if slot.is_some() {
            return Err(SimError::NotPipelineForm(Assignment::from_index(x, n)));
        }
        *slot = Some(i);
    }
    let mut true_set = BTreeSet::new();
    let mut false_set = BTreeSet::new();
    for (x, p) in pattern.into_iter().enumerate() {
        let a = Assignment::from_index(x as u64, n);
        match p {
            None => return Err(SimError::NotPipelineForm(a)),
            Some(i) if i & 1 == 1 => {
                true_set.insert(a);
            }
            Some(_) => {
                false_set.insert(a);
            }
        }
    }
    Ok(SolutionReport::new(true_set, false_set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compile_1sat, compile_formula};
    use crate::cnf::parse_dimacs;

    #[test]
    fn initial_state_examples() {
        let s = initial_mixed_state(&QubitLayout::new(1, 0)).unwrap();
        assert_eq!(s.populations(), &[0.5, 0.0, 0.5, 0.0]);

        let s = initial_mixed_state(&QubitLayout::new(3, 0)).unwrap();
        assert_eq!(s.support().count(), 8);
        assert!(s.support().all(|(i, p)| i & 1 == 0 && p == 0.125));

        let s = initial_mixed_state(&QubitLayout::new(2, 1)).unwrap();
        let support: Vec<(u64, f64)> = s.support().collect();
        assert_eq!(support, [(0, 0.25), (2, 0.25), (4, 0.25), (6, 0.25)]);

        assert_eq!(
            initial_mixed_state(&QubitLayout::new(20, 10)),
            Err(SimError::WidthLimit { width: 31, cap: 24 })
        );
    }

    #[test]
    fn gate_application() {
        let s = initial_mixed_state(&QubitLayout::new(1, 0)).unwrap();
        let flipped = s.apply_gate(&Gate::not(0)).unwrap();
        assert_eq!(flipped.populations(), &[0.0, 0.5, 0.0, 0.5]);

        let cnot = s.apply_gate(&Gate::mcx([1], 0).unwrap()).unwrap();
        assert_eq!(cnot.populations(), &[0.5, 0.0, 0.0, 0.5]);

        let s2 = initial_mixed_state(&QubitLayout::new(2, 0)).unwrap();
        let twice = s2
            .apply_gate(&Gate::not(2))
            .and_then(|t| t.apply_gate(&Gate::not(2)))
            .unwrap();
        assert_eq!(twice, s2);

        assert_eq!(
            s.apply_gate(&Gate::not(3)),
            Err(SimError::WireOutOfRange { wire: 3, width: 2 })
        );
    }

    #[test]
    fn one_sat_output_state() {
        let f = parse_dimacs("p cnf 3 3\n-1 0\n2 0\n3 0").unwrap();
        let out = run(&compile_1sat(&f).unwrap()).unwrap();
        let support: Vec<(u64, f64)> = out.support().collect();
        assert_eq!(support.len(), 8);
        for (i, p) in support {
            assert_eq!(p, 0.125);
            let x = i >> 1;
            assert_eq!(i & 1 == 1, x == 0b110, "index {i:04b}");
        }
        let report = true_space(&out, &QubitLayout::new(3, 0)).unwrap();
        assert_eq!(report.summary(), "1 solution: 110");
    }

    #[test]
    fn worked_3sat_scratch_pattern() {
        let f = parse_dimacs("p cnf 3 3\n1 2 3 0\n1 2 -3 0\n-1 2 3 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let out = run(&c).unwrap();
        let sat: Vec<u64> = out.support().map(|(i, _)| i).filter(|i| i & 1 == 1).collect();
        assert_eq!(sat.len(), 5);
        assert!(sat.iter().all(|i| i >> 4 == 0b111));
        let report = true_space(&out, &c.layout()).unwrap();
        assert_eq!(report.summary(), "5 solutions: 010 011 101 110 111");
        assert_eq!(report.false_space.len(), 3);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let layout = QubitLayout::new(2, 1);
        assert_eq!(
            run(&Circuit::empty(layout)).unwrap(),
            initial_mixed_state(&layout).unwrap()
        );
    }

    #[test]
    fn modified_sat_cases() {
        let taut = parse_dimacs("p cnf 1 1\n1 -1 0").unwrap();
        let c = compile_formula(&taut).unwrap();
        let r = true_space(&run(&c).unwrap(), &c.layout()).unwrap();
        assert_eq!(r.count, 2);

        let contra = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        let c = compile_formula(&contra).unwrap();
        let r = true_space(&run(&c).unwrap(), &c.layout()).unwrap();
        assert_eq!(r.summary(), "0 solutions (unsatisfiable)");
    }

    #[test]
    fn true_space_rejects_non_pipeline_states() {
        let layout = QubitLayout::new(1, 0);
        let split = PopulationState::new(2, vec![0.25, 0.25, 0.5, 0.0]).unwrap();
        assert!(matches!(true_space(&split, &layout), Err(SimError::NotPipelineForm(_))));
        let missing = PopulationState::new(2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(true_space(&missing, &layout), Err(SimError::NotPipelineForm(_))));
        assert!(matches!(
            true_space(&missing, &QubitLayout::new(2, 0)),
            Err(SimError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn marginal_examples() {
        let f = parse_dimacs("p cnf 2 2\n1 0\n-2 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let out = run(&c).unwrap();
        let m = marginalize(&out, &[0, 1, 2]).unwrap();
        // (x2 x1 x0): only 01 -> F = 1
        let support: Vec<(u64, f64)> = m.support().collect();
        assert_eq!(support, [(0b000, 0.25), (0b011, 0.25), (0b100, 0.25), (0b110, 0.25)]);

        assert_eq!(marginalize(&out, &[0, 1, 2, 3, 4]).unwrap(), out);

        let init = initial_mixed_state(&c.layout()).unwrap();
        let rest = marginalize(&init, &[0, 3, 4]).unwrap();
        assert_eq!(rest.weight(0), 1.0);

        assert_eq!(marginalize(&out, &[]), Err(SimError::EmptyKeep));
        assert!(matches!(marginalize(&out, &[7]), Err(SimError::WireOutOfRange { .. })));
    }

    #[test]
    fn table_export() {
        let s = initial_mixed_state(&QubitLayout::new(1, 1)).unwrap();
        assert_eq!(s.to_table(), "000 0.5\n010 0.5\n");
    }

    #[test]
    fn state_validation() {
        assert!(PopulationState::new(1, vec![0.5, 0.4]).is_err());
        assert!(PopulationState::new(1, vec![1.5, -0.5]).is_err());
        assert!(PopulationState::new(2, vec![1.0, 0.0]).is_err());
    }
}
