//! Gate-level IR for NOT / multi-controlled-NOT circuits.
//!
//! Wire convention: wire 0 is the work qubit `I0`, wires `1..=n` hold the
//! variables `x_1..x_n`, and wires `n+1..=n+m` hold the clause scratchpads
//! `s_1..s_m`. Basis index bit `w` is the state of wire `w`.

mod compile;
mod cost;
mod peephole;
mod perm;
mod text;

pub use compile::{
    append_uncompute, compile, compile_1sat, compile_clause, compile_formula,
    compile_formula_capped, compile_single_clause, CompilePath,
};
pub use cost::{cost_model, GateCounts};
pub use peephole::peephole_cancel;
pub use perm::{as_permutation, as_permutation_capped, BasisPermutation};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::CnfError;

pub type Wire = usize;

/// Width cap used by the compiler when none is given.
pub const DEFAULT_WIDTH_CAP: usize = 24;
/// Width cap for building a full basis permutation.
pub const DEFAULT_PERMUTATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("MCX needs at least one control")]
    NoControls,
    #[error("MCX target {0} is also a control")]
    TargetIsControl(Wire),
    #[error("wire {wire} out of range for width {width}")]
    WireOutOfRange { wire: Wire, width: usize },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("scratch index {index} out of range 1..={available}")]
    ScratchOutOfRange { index: usize, available: usize },
    #[error("variable {var} not present in layout with {num_vars} variables")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("circuit width {width} exceeds cap {cap}")]
    WidthLimit { width: usize, cap: usize },
    #[error("clause {0} is not a unit clause")]
    NotOneSat(usize),
    #[error("x{0} and !x{0} both appear as unit clauses")]
    ContradictoryUnits(usize),
    #[error("clause contains x{0} and !x{0}")]
    TautologicalClause(usize),
    #[error("circuit was not produced by compiling this formula")]
    FormulaMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Role a wire plays in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Work,
    /// Variable `x_i`, 1-based.
    Variable(usize),
    /// Scratchpad `s_mu`, 1-based.
    Scratch(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Work => write!(f, "work"),
            Role::Variable(i) => write!(f, "x{i}"),
            Role::Scratch(i) => write!(f, "s{i}"),
        }
    }
}

impl std::str::FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let index = |rest: &str| {
            rest.parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| format!("invalid role `{s}`"))
        };
        match s {
            "work" | "I0" => Ok(Role::Work),
            _ if s.starts_with('x') => index(&s[1..]).map(Role::Variable),
            _ if s.starts_with('s') => index(&s[1..]).map(Role::Scratch),
            _ => Err(format!("invalid role `{s}`")),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LayoutRepr", try_from = "LayoutRepr")]
pub struct QubitLayout {
    num_vars: usize,
    num_scratch: usize,
}

impl QubitLayout {
    pub fn new(num_vars: usize, num_scratch: usize) -> Self {
        Self {
            num_vars,
            num_scratch,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_scratch(&self) -> usize {
        self.num_scratch
    }

    pub fn width(&self) -> usize {
        self.num_vars + 1 + self.num_scratch
    }

    pub fn work(&self) -> Wire {
        0
    }

    /// Wire of `x_var`.
    pub fn var(&self, var: usize) -> Option<Wire> {
        (1..=self.num_vars).contains(&var).then_some(var)
    }

    /// Wire of scratchpad `s_index`.
    pub fn scratch(&self, index: usize) -> Option<Wire> {
        (1..=self.num_scratch)
            .contains(&index)
            .then_some(self.num_vars + index)
    }

    pub fn variable_wires(&self) -> std::ops::RangeInclusive<Wire> {
        1..=self.num_vars
    }

    pub fn scratch_wires(&self) -> std::ops::Range<Wire> {
        self.num_vars + 1..self.width()
    }

    pub fn wire(&self, role: Role) -> Option<Wire> {
        match role {
            Role::Work => Some(0),
            Role::Variable(i) => self.var(i),
            Role::Scratch(i) => self.scratch(i),
        }
    }

    pub fn role(&self, wire: Wire) -> Option<Role> {
        match wire {
            0 => Some(Role::Work),
            w if w <= self.num_vars => Some(Role::Variable(w)),
            w if w < self.width() => Some(Role::Scratch(w - self.num_vars)),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LayoutRepr {
    width: usize,
    num_vars: usize,
    num_scratch: usize,
    roles: Vec<Role>,
}

impl From<QubitLayout> for LayoutRepr {
    fn from(l: QubitLayout) -> Self {
        Self {
            width: l.width(),
            num_vars: l.num_vars,
            num_scratch: l.num_scratch,
            roles: (0..l.width()).filter_map(|w| l.role(w)).collect(),
        }
    }
}

impl TryFrom<LayoutRepr> for QubitLayout {
    type Error = String;

    fn try_from(r: LayoutRepr) -> Result<Self, Self::Error> {
        let layout = QubitLayout::new(r.num_vars, r.num_scratch);
        if r.width != layout.width() {
            return Err(format!(
                "width {} does not equal n + 1 + m = {}",
                r.width,
                layout.width()
            ));
        }
        let expected: Vec<Role> = (0..layout.width()).filter_map(|w| layout.role(w)).collect();
        if r.roles != expected {
            return Err("role list does not follow the fixed wire order".into());
        }
        Ok(layout)
    }
}

/// A NOT or a multi-controlled NOT with positive controls.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Gate {
    #[serde(rename = "x")]
    Not { target: Wire },
    Mcx { controls: Vec<Wire>, target: Wire },
}

impl Gate {
    pub fn not(target: Wire) -> Self {
        Gate::Not { target }
    }

    /// Controls are stored sorted and deduplicated.
    pub fn mcx(controls: impl IntoIterator<Item = Wire>, target: Wire) -> Result<Self, CircuitError> {
        let mut controls: Vec<Wire> = controls.into_iter().collect();
        controls.sort_unstable();
        controls.dedup();
        if controls.is_empty() {
            return Err(CircuitError::NoControls);
        }
        if controls.contains(&target) {
            return Err(CircuitError::TargetIsControl(target));
        }
        Ok(Gate::Mcx { controls, target })
    }

    pub fn target(&self) -> Wire {
        match self {
            Gate::Not { target } | Gate::Mcx { target, .. } => *target,
        }
    }

    pub fn controls(&self) -> &[Wire] {
        match self {
            Gate::Not { .. } => &[],
            Gate::Mcx { controls, .. } => controls,
        }
    }

    pub fn is_not(&self) -> bool {
        matches!(self, Gate::Not { .. })
    }

    pub fn touches(&self, wire: Wire) -> bool {
        self.target() == wire || self.controls().contains(&wire)
    }

    pub fn max_wire(&self) -> Wire {
        self.controls()
            .iter()
            .copied()
            .chain(std::iter::once(self.target()))
            .max()
            .unwrap_or(0)
    }

    /// Image of a basis index under this gate.
    #[inline]
    pub fn apply(&self, index: u64) -> u64 {
        match self {
            Gate::Not { target } => index ^ (1 << target),
            Gate::Mcx { controls, target } => {
                let mask = control_mask(controls);
                if index & mask == mask {
                    index ^ (1 << target)
                } else {
                    index
                }
            }
        }
    }

    pub(crate) fn check_width(&self, width: usize) -> Result<(), CircuitError> {
        let wire = self.max_wire();
        if wire >= width {
            return Err(CircuitError::WireOutOfRange { wire, width });
        }
        if let Gate::Mcx { controls, target } = self {
            if controls.is_empty() {
                return Err(CircuitError::NoControls);
            }
            if controls.contains(target) {
                return Err(CircuitError::TargetIsControl(*target));
            }
        }
        Ok(())
    }
}

pub(crate) fn control_mask(controls: &[Wire]) -> u64 {
    controls.iter().fold(0, |m, &c| m | (1 << c))
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Not { target } => write!(f, "x {target}"),
            Gate::Mcx { controls, target } => {
                let cs: Vec<String> = controls.iter().map(ToString::to_string).collect();
                write!(f, "mcx {} {target}", cs.join(","))
            }
        }
    }
}

/// Ordered gate list over a layout, applied first to last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    layout: QubitLayout,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: QubitLayout, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        for g in &gates {
            g.check_width(layout.width())?;
        }
        Ok(Self { layout, gates })
    }

    pub fn empty(layout: QubitLayout) -> Self {
        Self {
            layout,
            gates: Vec::new(),
        }
    }

    pub fn layout(&self) -> QubitLayout {
        self.layout
    }

    pub fn width(&self) -> usize {
        self.layout.width()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.check_width(self.width())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn not_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_not()).count()
    }

    /// Image of a basis index under the whole circuit.
    pub fn apply(&self, index: u64) -> u64 {
        self.gates.iter().fold(index, |i, g| g.apply(i))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CircuitError> {
        let c: Circuit = serde_json::from_str(s).map_err(|e| CircuitError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Circuit::new(c.layout, c.gates)
    }
}
