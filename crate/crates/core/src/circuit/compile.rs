//! CNF to NOT/MCX compilation.
//!
//! A clause `C` writes `C(x)` into its scratch wire as
//! `N_pos . MCX(vars -> s) . N_pos . N_s`, where `N_pos` flips the wires of
//! the variables that occur un-negated in `C`. The MCX fires exactly when
//! every literal is false, and the trailing NOT turns that into the OR.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, Gate, QubitLayout, Wire, DEFAULT_WIDTH_CAP};
use crate::cnf::{Clause, CnfFormula, Literal};

/// Which construction to use for a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompilePath {
    /// 1-SAT form when possible, then single-clause form, else the general form.
    #[default]
    Auto,
    /// One scratchpad per clause, AND-ed into the work qubit.
    General,
    OneSat,
    SingleClause,
}

fn check_vars(clause: &Clause, num_vars: usize) -> Result<(), CircuitError> {
    match clause.literals().iter().find(|l| l.var == 0 || l.var > num_vars) {
        Some(l) => Err(CircuitError::VariableOutOfRange {
            var: l.var,
            num_vars,
        }),
        None => Ok(()),
    }
}

fn tautology_var(clause: &Clause) -> Option<usize> {
    clause
        .literals()
        .iter()
        .find(|l| clause.literals().contains(&l.complement()))
        .map(|l| l.var)
}

/// NOT layer on the wires of un-negated literals, in clause order.
fn positive_layer(clause: &Clause, layout: &QubitLayout) -> Vec<Gate> {
    clause
        .literals()
        .iter()
        .filter(|l| !l.negated)
        .filter_map(|l| layout.var(l.var))
        .map(Gate::not)
        .collect()
}

fn clause_or_into(clause: &Clause, layout: &QubitLayout, target: Wire) -> Result<Vec<Gate>, CircuitError> {
    let layer = positive_layer(clause, layout);
    let controls = clause.variables().into_iter().filter_map(|v| layout.var(v));
    let mut gates = layer.clone();
    gates.push(Gate::mcx(controls, target)?);
    gates.extend(layer);
    gates.push(Gate::not(target));
    Ok(gates)
}

/// Gate block storing clause `clause` into scratchpad `scratch_index` (1-based).
///
/// A tautological clause compiles to a single NOT on its scratch wire.
pub fn compile_clause(
    clause: &Clause,
    layout: &QubitLayout,
    scratch_index: usize,
) -> Result<Vec<Gate>, CircuitError> {
    let target = layout
        .scratch(scratch_index)
        .ok_or(CircuitError::ScratchOutOfRange {
            index: scratch_index,
            available: layout.num_scratch(),
        })?;
    if clause.is_empty() {
        return Err(CircuitError::EmptyClause(scratch_index));
    }
    check_vars(clause, layout.num_vars())?;
    if clause.is_tautology() {
        return Ok(vec![Gate::not(target)]);
    }
    clause_or_into(clause, layout, target)
}

pub fn compile_formula(f: &CnfFormula) -> Result<Circuit, CircuitError> {
    compile_formula_capped(f, DEFAULT_WIDTH_CAP)
}

/// General construction: every clause into its own scratchpad, then one MCX
/// over all scratchpads targeting the work qubit.
pub fn compile_formula_capped(f: &CnfFormula, width_cap: usize) -> Result<Circuit, CircuitError> {
    let m = f.num_clauses();
    if m == 0 {
        return Err(CircuitError::EmptyFormula);
    }
    if let Some(mu) = f.clauses().iter().position(Clause::is_empty) {
        return Err(CircuitError::EmptyClause(mu + 1));
    }
    let layout = QubitLayout::new(f.num_vars(), m);
    check_width(&layout, width_cap)?;
    let mut circuit = Circuit::empty(layout);
    for (mu, clause) in f.clauses().iter().enumerate() {
        circuit.extend(compile_clause(clause, &layout, mu + 1)?)?;
    }
    circuit.push(Gate::mcx(layout.scratch_wires(), layout.work())?)?;
    Ok(circuit)
}

fn check_width(layout: &QubitLayout, cap: usize) -> Result<(), CircuitError> {
    if layout.width() > cap {
        return Err(CircuitError::WidthLimit {
            width: layout.width(),
            cap,
        });
    }
    Ok(())
}

/// Unit literals of a 1-SAT formula keyed by variable, duplicates collapsed.
fn unit_literals(f: &CnfFormula) -> Result<BTreeMap<usize, Literal>, CircuitError> {
    if f.num_clauses() == 0 {
        return Err(CircuitError::EmptyFormula);
    }
    let mut units = BTreeMap::new();
    for (mu, clause) in f.clauses().iter().enumerate() {
        match clause.literals() {
            [] => return Err(CircuitError::EmptyClause(mu + 1)),
            [lit] => {
                if let Some(prev) = units.insert(lit.var, *lit) {
                    if prev != *lit {
                        return Err(CircuitError::ContradictoryUnits(lit.var));
                    }
                }
            }
            _ => return Err(CircuitError::NotOneSat(mu + 1)),
        }
    }
    Ok(units)
}

/// 1-SAT construction: a single MCX over every mentioned variable into the
/// work qubit, conjugated by NOTs on the negated variables. No scratchpads.
pub fn compile_1sat(f: &CnfFormula) -> Result<Circuit, CircuitError> {
    let units = unit_literals(f)?;
    let layout = QubitLayout::new(f.num_vars(), 0);
    let layer: Vec<Gate> = units
        .values()
        .filter(|l| l.negated)
        .filter_map(|l| layout.var(l.var))
        .map(Gate::not)
        .collect();
    let controls = units.keys().filter_map(|&v| layout.var(v));
    let mut gates = layer.clone();
    gates.push(Gate::mcx(controls, layout.work())?);
    gates.extend(layer);
    Circuit::new(layout, gates)
}

/// Single-clause construction: the clause OR written straight into the work
/// qubit, no scratchpads.
pub fn compile_single_clause(clause: &Clause, num_vars: usize) -> Result<Circuit, CircuitError> {
    if clause.is_empty() {
        return Err(CircuitError::EmptyClause(1));
    }
    if let Some(var) = tautology_var(clause) {
        return Err(CircuitError::TautologicalClause(var));
    }
    check_vars(clause, num_vars)?;
    let layout = QubitLayout::new(num_vars, 0);
    Circuit::new(layout, clause_or_into(clause, &layout, layout.work())?)
}

/// Compiles with the chosen construction, checking the width cap.
pub fn compile(f: &CnfFormula, path: CompilePath, width_cap: usize) -> Result<Circuit, CircuitError> {
    let path = match path {
        CompilePath::Auto if unit_literals(f).is_ok() => CompilePath::OneSat,
        CompilePath::Auto
            if f.num_clauses() == 1
                && !f.clauses()[0].is_empty()
                && !f.clauses()[0].is_tautology() =>
        {
            CompilePath::SingleClause
        }
        CompilePath::Auto => CompilePath::General,
        p => p,
    };
    match path {
        CompilePath::General => compile_formula_capped(f, width_cap),
        CompilePath::OneSat | CompilePath::SingleClause => {
            check_width(&QubitLayout::new(f.num_vars(), 0), width_cap)?;
            if path == CompilePath::OneSat {
                compile_1sat(f)
            } else {
                match f.clauses() {
                    [] => Err(CircuitError::EmptyFormula),
                    [c] => compile_single_clause(c, f.num_vars()),
                    _ => Err(CircuitError::FormulaMismatch),
                }
            }
        }
        CompilePath::Auto => unreachable!(),
    }
}

/// Appends the clause blocks again in reverse order after the final AND so
/// every scratchpad returns to 0. Each clause block is an involution.
pub fn append_uncompute(c: &Circuit, f: &CnfFormula) -> Result<Circuit, CircuitError> {
    let expected = compile_formula_capped(f, usize::MAX)?;
    if *c != expected {
        return Err(CircuitError::FormulaMismatch);
    }
    let layout = c.layout();
    let mut out = c.clone();
    for (mu, clause) in f.clauses().iter().enumerate().rev() {
        out.extend(compile_clause(clause, &layout, mu + 1)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::parse_dimacs;

    fn mcx(cs: &[usize], t: usize) -> Gate {
        Gate::mcx(cs.iter().copied(), t).unwrap()
    }

    fn n(t: usize) -> Gate {
        Gate::not(t)
    }

    #[test]
    fn clause_all_positive() {
        let layout = QubitLayout::new(3, 1);
        let gates = compile_clause(&Clause::from_dimacs(&[1, 2, 3]), &layout, 1).unwrap();
        assert_eq!(
            gates,
            vec![n(1), n(2), n(3), mcx(&[1, 2, 3], 4), n(1), n(2), n(3), n(4)]
        );
        assert_eq!(gates.iter().filter(|g| g.is_not()).count(), 7);
    }

    #[test]
    fn clause_mixed_and_negated() {
        let layout = QubitLayout::new(2, 1);
        let gates = compile_clause(&Clause::from_dimacs(&[-1, 2]), &layout, 1).unwrap();
        assert_eq!(gates, vec![n(2), mcx(&[1, 2], 3), n(2), n(3)]);
        let gates = compile_clause(&Clause::from_dimacs(&[-1]), &layout, 1).unwrap();
        assert_eq!(gates, vec![mcx(&[1], 3), n(3)]);
    }

    #[test]
    fn clause_tautology_and_errors() {
        let layout = QubitLayout::new(1, 1);
        let gates = compile_clause(&Clause::from_dimacs(&[1, -1]), &layout, 1).unwrap();
        assert_eq!(gates, vec![n(2)]);
        assert_eq!(
            compile_clause(&Clause::default(), &layout, 1),
            Err(CircuitError::EmptyClause(1))
        );
        assert_eq!(
            compile_clause(&Clause::from_dimacs(&[1]), &layout, 2),
            Err(CircuitError::ScratchOutOfRange { index: 2, available: 1 })
        );
        assert_eq!(
            compile_clause(&Clause::from_dimacs(&[2]), &layout, 1),
            Err(CircuitError::VariableOutOfRange { var: 2, num_vars: 1 })
        );
    }

    #[test]
    fn formula_structure() {
        let f = parse_dimacs("p cnf 3 3\n1 2 3 0\n1 2 -3 0\n-1 2 3 0").unwrap();
        let c = compile_formula(&f).unwrap();
        assert_eq!(c.layout(), QubitLayout::new(3, 3));
        assert_eq!(c.gates().last(), Some(&mcx(&[4, 5, 6], 0)));
        let arities: Vec<usize> = c
            .gates()
            .iter()
            .filter(|g| !g.is_not())
            .map(|g| g.controls().len())
            .collect();
        assert_eq!(arities, [3, 3, 3, 3]);

        let single = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        let c = compile_formula(&single).unwrap();
        assert_eq!(c.gates().last(), Some(&mcx(&[3], 0)));

        let empty = CnfFormula::new(2, vec![]).unwrap();
        assert_eq!(compile_formula(&empty), Err(CircuitError::EmptyFormula));
        let with_empty = parse_dimacs("p cnf 1 2\n1 0\n0\n").unwrap();
        assert_eq!(compile_formula(&with_empty), Err(CircuitError::EmptyClause(2)));
        let wide = crate::cnf::generate_random_ksat(20, 10, 3, 1).unwrap();
        assert_eq!(
            compile_formula(&wide),
            Err(CircuitError::WidthLimit { width: 31, cap: 24 })
        );
    }

    #[test]
    fn one_sat_construction() {
        let f = parse_dimacs("p cnf 3 3\n-1 0\n2 0\n3 0").unwrap();
        let c = compile_1sat(&f).unwrap();
        assert_eq!(c.gates(), &[n(1), mcx(&[1, 2, 3], 0), n(1)]);
        assert_eq!(c.layout().num_scratch(), 0);

        let x1 = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(compile_1sat(&x1).unwrap().gates(), &[mcx(&[1], 0)]);

        let nn = parse_dimacs("p cnf 2 2\n-1 0\n-2 0").unwrap();
        assert_eq!(
            compile_1sat(&nn).unwrap().gates(),
            &[n(1), n(2), mcx(&[1, 2], 0), n(1), n(2)]
        );

        let dup = parse_dimacs("p cnf 1 2\n1 0\n1 0").unwrap();
        assert_eq!(compile_1sat(&dup).unwrap().gates(), &[mcx(&[1], 0)]);

        let contra = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(compile_1sat(&contra), Err(CircuitError::ContradictoryUnits(1)));
        let wide = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        assert_eq!(compile_1sat(&wide), Err(CircuitError::NotOneSat(1)));
    }

    #[test]
    fn single_clause_construction() {
        let c = compile_single_clause(&Clause::from_dimacs(&[1, 2, 3]), 3).unwrap();
        assert_eq!(
            c.gates(),
            &[n(1), n(2), n(3), mcx(&[1, 2, 3], 0), n(1), n(2), n(3), n(0)]
        );
        let c = compile_single_clause(&Clause::from_dimacs(&[-1, -2]), 2).unwrap();
        assert_eq!(c.gates(), &[mcx(&[1, 2], 0), n(0)]);
        let c = compile_single_clause(&Clause::from_dimacs(&[1]), 1).unwrap();
        assert_eq!(c.gates(), &[n(1), mcx(&[1], 0), n(1), n(0)]);

        assert_eq!(
            compile_single_clause(&Clause::default(), 1),
            Err(CircuitError::EmptyClause(1))
        );
        assert_eq!(
            compile_single_clause(&Clause::from_dimacs(&[1, -1]), 1),
            Err(CircuitError::TautologicalClause(1))
        );
    }

    #[test]
    fn auto_path_selection() {
        let x1 = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(compile(&x1, CompilePath::Auto, 24).unwrap().to_string(), "qbc 2 1 0\nmcx 1 0\n");
        let or = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        assert_eq!(compile(&or, CompilePath::Auto, 24).unwrap().layout().num_scratch(), 0);
        let taut = parse_dimacs("p cnf 1 1\n1 -1 0").unwrap();
        assert_eq!(compile(&taut, CompilePath::Auto, 24).unwrap().layout().num_scratch(), 1);
        let contra = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(compile(&contra, CompilePath::Auto, 24).unwrap().layout().num_scratch(), 2);
        assert!(matches!(
            compile(&x1, CompilePath::General, 2),
            Err(CircuitError::WidthLimit { width: 3, cap: 2 })
        ));
    }

    #[test]
    fn uncompute_appends_reversed_blocks() {
        let f = parse_dimacs("p cnf 2 2\n1 0\n-2 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let u = append_uncompute(&c, &f).unwrap();
        let layout = c.layout();
        let mut expected = c.gates().to_vec();
        expected.extend(compile_clause(&f.clauses()[1], &layout, 2).unwrap());
        expected.extend(compile_clause(&f.clauses()[0], &layout, 1).unwrap());
        assert_eq!(u.gates(), expected.as_slice());

        let other = parse_dimacs("p cnf 2 2\n1 0\n2 0").unwrap();
        assert_eq!(append_uncompute(&c, &other), Err(CircuitError::FormulaMismatch));
    }
}
