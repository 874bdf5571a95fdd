//! Work-spin multiplet synthesis and decoding.
//!
//! Every coupled variable spin splits the observed line by its coupling
//! constant. A neighbour in `|0>` (alpha) shifts the line by `+J/2`, one in
//! `|1>` (beta) by `-J/2`, so each of the `2^n` assignments owns one line.
//! Populations with the work qubit in `|0>` give positive absorption, those
//! in `|1>` negative, so satisfying assignments show up as negative lines.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{QubitLayout, Role};
use crate::cnf::Assignment;
use crate::sim::{PopulationState, SolutionReport};

/// Frequencies closer than this are treated as the same line when merging.
pub const MERGE_TOLERANCE_HZ: f64 = 1e-9;
/// Upper bound on the decoding match tolerance.
pub const MAX_MATCH_TOLERANCE_HZ: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("invalid spin system: {0}")]
    InvalidSystem(String),
    #[error("no spin carries variable x{0}")]
    VariableWithoutSpin(usize),
    #[error("variable spin x{0} is decoupled")]
    VariableDecoupled(usize),
    #[error("scratch spin `{0}` must be decoupled")]
    ScratchNotDecoupled(String),
    #[error("spin `{0}` is coupled during acquisition but has no qubit in the layout")]
    UnmappedSpin(String),
    #[error("state width {state} does not match layout width {layout}")]
    WidthMismatch { state: usize, layout: usize },
    #[error("line at {0} Hz matches no configuration")]
    UnmatchedLine(f64),
    #[error("line at {freq} Hz is degenerate: configurations {first} and {second} both match")]
    DegenerateLine {
        freq: f64,
        first: Assignment,
        second: Assignment,
    },
    #[error("configuration {0} is matched by more than one line")]
    DuplicateConfiguration(Assignment),
    #[error("configuration {0} has no line")]
    MissingConfiguration(Assignment),
    #[error("line at {0} Hz has zero amplitude, its sign is undefined")]
    ZeroAmplitude(f64),
    #[error("render grid needs f_min < f_max and at least 2 points")]
    InvalidGrid,
    #[error("linewidth must be positive, got {0}")]
    InvalidLinewidth(f64),
    #[error("spin system document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spin {
    pub name: String,
    pub shift_hz: f64,
}

/// Spins, their couplings, which ones are decoupled during acquisition, and
/// which qubit each one carries.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem {
    spins: Vec<Spin>,
    observed: usize,
    couplings: Vec<Vec<f64>>,
    decoupled: BTreeSet<usize>,
    roles: Vec<Option<Role>>,
}

impl SpinSystem {
    /// The observed spin is the one whose role is [`Role::Work`].
    pub fn new(
        spins: Vec<Spin>,
        couplings: Vec<Vec<f64>>,
        decoupled: BTreeSet<usize>,
        roles: Vec<Option<Role>>,
    ) -> Result<Self, SpectrumError> {
        let invalid = |m: String| Err(SpectrumError::InvalidSystem(m));
        let k = spins.len();
        if roles.len() != k || couplings.len() != k || couplings.iter().any(|r| r.len() != k) {
            return invalid(format!("{k} spins need {k} roles and a {k}x{k} coupling table"));
        }
        for i in 0..k {
            if couplings[i][i] != 0.0 {
                return invalid(format!("self coupling of `{}` must be zero", spins[i].name));
            }
            for j in 0..i {
                if (couplings[i][j] - couplings[j][i]).abs() > 1e-12 || !couplings[i][j].is_finite() {
                    return invalid(format!(
                        "coupling table not symmetric at ({}, {})",
                        spins[i].name, spins[j].name
                    ));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for r in roles.iter().flatten() {
            if !seen.insert(*r) {
                return invalid(format!("role {r} assigned twice"));
            }
        }
        let observed = match roles.iter().position(|r| *r == Some(Role::Work)) {
            Some(i) => i,
            None => return invalid("no spin has the work role".into()),
        };
        if decoupled.contains(&observed) {
            return invalid("observed spin cannot be decoupled".into());
        }
        if let Some(&d) = decoupled.iter().find(|&&d| d >= k) {
            return invalid(format!("decoupled index {d} out of range"));
        }
        Ok(Self {
            spins,
            observed,
            couplings,
            decoupled,
            roles,
        })
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn observed(&self) -> usize {
        self.observed
    }

    pub fn coupling(&self, a: usize, b: usize) -> f64 {
        self.couplings[a][b]
    }

    pub fn decoupled(&self) -> &BTreeSet<usize> {
        &self.decoupled
    }

    pub fn is_decoupled(&self, spin: usize) -> bool {
        self.decoupled.contains(&spin)
    }

    pub fn role(&self, spin: usize) -> Option<Role> {
        self.roles[spin]
    }

    pub fn spin_for(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|r| *r == Some(role))
    }

    /// Number of spins carrying variables `x_1, x_2, ...` without gaps.
    pub fn variable_capacity(&self) -> usize {
        (1..).take_while(|&i| self.spin_for(Role::Variable(i)).is_some()).count()
    }

    /// Coupling of variable `x_var`'s spin to the observed spin.
    pub fn variable_coupling(&self, var: usize) -> Option<f64> {
        self.spin_for(Role::Variable(var))
            .map(|s| self.couplings[self.observed][s])
    }

    /// Marks a spin as decoupled during acquisition.
    pub fn decouple(mut self, spin: usize) -> Result<Self, SpectrumError> {
        if spin == self.observed || spin >= self.spins.len() {
            return Err(SpectrumError::InvalidSystem(format!("cannot decouple spin {spin}")));
        }
        self.decoupled.insert(spin);
        Ok(self)
    }

    /// Adds a spin coupled only to the observed spin.
    pub fn with_spin(
        mut self,
        spin: Spin,
        role: Option<Role>,
        coupling_to_observed: f64,
        decoupled: bool,
    ) -> Result<Self, SpectrumError> {
        let k = self.spins.len();
        for row in &mut self.couplings {
            row.push(0.0);
        }
        let mut row = vec![0.0; k + 1];
        row[self.observed] = coupling_to_observed;
        self.couplings[self.observed][k] = coupling_to_observed;
        self.couplings.push(row);
        self.spins.push(spin);
        self.roles.push(role);
        if decoupled {
            self.decoupled.insert(k);
        }
        Self::new(self.spins, self.couplings, self.decoupled, self.roles)
    }

    /// Keeps variables `x_1..x_n`; spins carrying higher variables lose their
    /// role and are decoupled.
    pub fn restricted_to(&self, n: usize) -> Self {
        let mut out = self.clone();
        for (i, role) in out.roles.iter_mut().enumerate() {
            if let Some(Role::Variable(v)) = role {
                if *v > n {
                    *role = None;
                    out.decoupled.insert(i);
                }
            }
        }
        out
    }

    /// Three 13C qubits of alanine (C', Ca, Cb), protons decoupled.
    pub fn alanine_3q() -> Self {
        Self::alanine(false)
    }

    /// Alanine with the alpha proton as a fourth qubit.
    pub fn alanine_4q() -> Self {
        Self::alanine(true)
    }

    fn alanine(with_proton: bool) -> Self {
        // Order: C', Ca, Cb, H. Ca is the work spin.
        let spins = [("C'", -4320.0), ("Ca", 0.0), ("Cb", 15793.0), ("H", 1550.0)]
            .into_iter()
            .map(|(name, shift_hz)| Spin {
                name: name.to_string(),
                shift_hz,
            })
            .collect();
        let couplings = vec![
            vec![0.0, 34.94, -1.2, 5.5],
            vec![34.94, 0.0, 53.81, 143.21],
            vec![-1.2, 53.81, 0.0, 5.1],
            vec![5.5, 143.21, 5.1, 0.0],
        ];
        let mut roles = vec![
            Some(Role::Variable(1)),
            Some(Role::Work),
            Some(Role::Variable(2)),
            None,
        ];
        let mut decoupled = BTreeSet::new();
        if with_proton {
            roles[3] = Some(Role::Variable(3));
        } else {
            decoupled.insert(3);
        }
        Self::new(spins, couplings, decoupled, roles).expect("preset is valid")
    }

    /// Work spin at 0 Hz with variable `x_i` coupled by `base_j * 2^(i-1)`,
    /// giving an evenly spaced multiplet with spacing `base_j`.
    pub fn synthetic(n: usize, base_j: f64) -> Self {
        let mut spins = vec![Spin {
            name: "I0".into(),
            shift_hz: 0.0,
        }];
        let mut roles = vec![Some(Role::Work)];
        let mut couplings = vec![vec![0.0; n + 1]; n + 1];
        for i in 1..=n {
            spins.push(Spin {
                name: format!("I{i}"),
                shift_hz: 1000.0 * i as f64,
            });
            roles.push(Some(Role::Variable(i)));
            let j = base_j * 2f64.powi(i as i32 - 1);
            couplings[0][i] = j;
            couplings[i][0] = j;
        }
        Self::new(spins, couplings, BTreeSet::new(), roles).expect("synthetic system is valid")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "alanine-3q" => Some(Self::alanine_3q()),
            "alanine-4q" => Some(Self::alanine_4q()),
            _ => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SpectrumError> {
        let doc: SpinSystemDoc =
            serde_json::from_str(text).map_err(|e| SpectrumError::Document(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpinSystemDoc::from(self)).expect("spin system serializes")
    }
}

/// On-disk form of a [`SpinSystem`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinSystemDoc {
    pub spins: Vec<SpinDoc>,
    /// Symmetric J table in Hz, rows and columns in `spins` order.
    pub couplings: Vec<Vec<f64>>,
    /// Names of spins decoupled during acquisition.
    #[serde(default)]
    pub decoupled: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinDoc {
    pub name: String,
    pub shift_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<Role>,
}

impl From<&SpinSystem> for SpinSystemDoc {
    fn from(sys: &SpinSystem) -> Self {
        Self {
            spins: sys
                .spins
                .iter()
                .zip(&sys.roles)
                .map(|(s, r)| SpinDoc {
                    name: s.name.clone(),
                    shift_hz: s.shift_hz,
                    role: *r,
                })
                .collect(),
            couplings: sys.couplings.clone(),
            decoupled: sys.decoupled.iter().map(|&i| sys.spins[i].name.clone()).collect(),
        }
    }
}

impl TryFrom<SpinSystemDoc> for SpinSystem {
    type Error = SpectrumError;

    fn try_from(doc: SpinSystemDoc) -> Result<Self, Self::Error> {
        let mut decoupled = BTreeSet::new();
        for name in &doc.decoupled {
            let idx = doc
                .spins
                .iter()
                .position(|s| &s.name == name)
                .ok_or_else(|| SpectrumError::Document(format!("unknown spin `{name}`")))?;
            decoupled.insert(idx);
        }
        let roles = doc.spins.iter().map(|s| s.role).collect();
        let spins = doc
            .spins
            .into_iter()
            .map(|s| Spin {
                name: s.name,
                shift_hz: s.shift_hz,
            })
            .collect();
        SpinSystem::new(spins, doc.couplings, decoupled, roles)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub frequency_hz: f64,
    pub amplitude: f64,
}

/// Sampled intensity on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Trace {
    pub points: Vec<(f64, f64)>,
}

impl Trace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("frequency_hz,intensity\n");
        for (f, y) in &self.points {
            out.push_str(&format!("{f},{y}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lines: Vec<SpectrumLine>,
    pub trace: Option<Trace>,
    pub linewidth_hz: f64,
}

impl Spectrum {
    pub fn new(lines: Vec<SpectrumLine>, linewidth_hz: f64) -> Self {
        Self {
            lines,
            trace: None,
            linewidth_hz,
        }
    }

    pub fn render_over(&mut self, f_min: f64, f_max: f64, points: usize) -> Result<&Trace, SpectrumError> {
        let trace = render(&self.lines, f_min, f_max, points, self.linewidth_hz)?;
        Ok(self.trace.insert(trace))
    }
}

/// Line position for each configuration of `x_1..x_n`, indexed by the
/// assignment's integer value.
pub fn configuration_frequencies(sys: &SpinSystem, n: usize) -> Result<Vec<f64>, SpectrumError> {
    let couplings = (1..=n)
        .map(|v| sys.variable_coupling(v).ok_or(SpectrumError::VariableWithoutSpin(v)))
        .collect::<Result<Vec<f64>, _>>()?;
    let nu0 = sys.spins[sys.observed].shift_hz;
    Ok((0..1usize << n)
        .map(|x| {
            couplings.iter().enumerate().fold(nu0, |f, (i, j)| {
                if (x >> i) & 1 == 0 {
                    f + j / 2.0
                } else {
                    f - j / 2.0
                }
            })
        })
        .collect())
}

fn merge_lines(raw: impl IntoIterator<Item = SpectrumLine>) -> Vec<SpectrumLine> {
    let mut lines: Vec<SpectrumLine> = Vec::new();
    for line in raw {
        match lines
            .iter_mut()
            .find(|l| (l.frequency_hz - line.frequency_hz).abs() <= MERGE_TOLERANCE_HZ)
        {
            Some(l) => l.amplitude += line.amplitude,
            None => lines.push(line),
        }
    }
    lines
}

fn check_acquisition(layout: &QubitLayout, sys: &SpinSystem) -> Result<(), SpectrumError> {
    let n = layout.num_vars();
    for v in 1..=n {
        let spin = sys
            .spin_for(Role::Variable(v))
            .ok_or(SpectrumError::VariableWithoutSpin(v))?;
        if sys.is_decoupled(spin) {
            return Err(SpectrumError::VariableDecoupled(v));
        }
    }
    for (i, spin) in sys.spins.iter().enumerate() {
        if sys.is_decoupled(i) || i == sys.observed {
            continue;
        }
        match sys.roles[i] {
            Some(Role::Variable(v)) if v <= n => {}
            Some(Role::Scratch(_)) => return Err(SpectrumError::ScratchNotDecoupled(spin.name.clone())),
            _ => return Err(SpectrumError::UnmappedSpin(spin.name.clone())),
        }
    }
    Ok(())
}

/// Observed-spin multiplet of a population state.
///
/// Decoupled spins (scratchpads included) are summed out. Each configuration
/// of the variable spins contributes `P(x0 = 0) - P(x0 = 1)` at its line
/// position. Lines that land on the same frequency are merged.
pub fn multiplet_lines(
    s: &PopulationState,
    layout: &QubitLayout,
    sys: &SpinSystem,
) -> Result<Vec<SpectrumLine>, SpectrumError> {
    if s.width() != layout.width() {
        return Err(SpectrumError::WidthMismatch {
            state: s.width(),
            layout: layout.width(),
        });
    }
    check_acquisition(layout, sys)?;
    let n = layout.num_vars();
    let freqs = configuration_frequencies(sys, n)?;
    let var_mask = (1u64 << n) - 1;
    let mut amps = vec![0.0; 1usize << n];
    for (i, p) in s.support() {
        let x = ((i >> 1) & var_mask) as usize;
        amps[x] += if i & 1 == 0 { p } else { -p };
    }
    Ok(merge_lines(freqs.into_iter().zip(amps).map(|(f, a)| SpectrumLine {
        frequency_hz: f,
        amplitude: a,
    })))
}

/// Thermal-equilibrium reference: every configuration positive with weight `2^-n`.
pub fn thermal_reference(sys: &SpinSystem, n: usize) -> Result<Vec<SpectrumLine>, SpectrumError> {
    let weight = 0.5f64.powi(n as i32);
    let freqs = configuration_frequencies(sys, n)?;
    Ok(merge_lines(freqs.into_iter().map(|f| SpectrumLine {
        frequency_hz: f,
        amplitude: weight,
    })))
}

/// Sum of absorptive Lorentzians `a * w^2 / (w^2 + (f - f0)^2)` sampled on
/// `points` evenly spaced frequencies from `f_min` to `f_max`.
pub fn render(
    lines: &[SpectrumLine],
    f_min: f64,
    f_max: f64,
    points: usize,
    linewidth: f64,
) -> Result<Trace, SpectrumError> {
    if !(f_min < f_max) || points < 2 {
        return Err(SpectrumError::InvalidGrid);
    }
    if !(linewidth > 0.0) {
        return Err(SpectrumError::InvalidLinewidth(linewidth));
    }
    let step = (f_max - f_min) / (points - 1) as f64;
    let w2 = linewidth * linewidth;
    let points = (0..points)
        .map(|k| {
            let f = f_min + step * k as f64;
            let y = lines
                .iter()
                .map(|l| {
                    let d = f - l.frequency_hz;
                    l.amplitude * w2 / (w2 + d * d)
                })
                .sum();
            (f, y)
        })
        .collect();
    Ok(Trace { points })
}

fn min_separation(freqs: &[f64]) -> f64 {
    let mut sorted = freqs.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// True when all `2^n` line positions are at least `min_separation` apart.
pub fn check_resolvable(sys: &SpinSystem, n: usize, min_separation_hz: f64) -> bool {
    match configuration_frequencies(sys, n) {
        Ok(freqs) => min_separation(&freqs) >= min_separation_hz,
        Err(_) => false,
    }
}

/// Match tolerance used when decoding: `min(1 Hz, closest pair / 4)`.
pub fn match_tolerance(sys: &SpinSystem, n: usize) -> Result<f64, SpectrumError> {
    let freqs = configuration_frequencies(sys, n)?;
    Ok(MAX_MATCH_TOLERANCE_HZ.min(min_separation(&freqs) / 4.0))
}

/// Maps every line back to its configuration and reads the sign.
pub fn extract_solutions(
    lines: &[SpectrumLine],
    sys: &SpinSystem,
    n: usize,
) -> Result<SolutionReport, SpectrumError> {
    let freqs = configuration_frequencies(sys, n)?;
    let tol = MAX_MATCH_TOLERANCE_HZ.min(min_separation(&freqs) / 4.0) + MERGE_TOLERANCE_HZ;
    let mut sign: Vec<Option<bool>> = vec![None; freqs.len()];
    for line in lines {
        let mut hits = freqs
            .iter()
            .enumerate()
            .filter(|(_, &f)| (f - line.frequency_hz).abs() <= tol)
            .map(|(x, _)| x);
        let x = hits.next().ok_or(SpectrumError::UnmatchedLine(line.frequency_hz))?;
        if let Some(y) = hits.next() {
            return Err(SpectrumError::DegenerateLine {
                freq: line.frequency_hz,
                first: Assignment::from_index(x as u64, n),
                second: Assignment::from_index(y as u64, n),
            });
        }
        if line.amplitude == 0.0 {
            return Err(SpectrumError::ZeroAmplitude(line.frequency_hz));
        }
        if sign[x].replace(line.amplitude < 0.0).is_some() {
            return Err(SpectrumError::DuplicateConfiguration(Assignment::from_index(
                x as u64, n,
            )));
        }
    }
    let mut true_space = BTreeSet::new();
    let mut false_space = BTreeSet::new();
    for (x, s) in sign.into_iter().enumerate() {
        let a = Assignment::from_index(x as u64, n);
        match s {
            Some(true) => true_space.insert(a),
            Some(false) => false_space.insert(a),
            None => return Err(SpectrumError::MissingConfiguration(a)),
        };
    }
    Ok(SolutionReport::new(true_space, false_space))
}

/// Text table: frequency, amplitude, and the decoded `x_n..x_1` label
/// (`?` when a line cannot be assigned to a single configuration).
pub fn line_table(lines: &[SpectrumLine], sys: &SpinSystem, n: usize) -> String {
    let freqs = configuration_frequencies(sys, n).unwrap_or_default();
    let tol = MAX_MATCH_TOLERANCE_HZ.min(min_separation(&freqs) / 4.0) + MERGE_TOLERANCE_HZ;
    let mut out = String::from("# frequency_hz amplitude assignment\n");
    for l in lines {
        let hits: Vec<usize> = freqs
            .iter()
            .enumerate()
            .filter(|(_, &f)| (f - l.frequency_hz).abs() <= tol)
            .map(|(x, _)| x)
            .collect();
        let label = match hits.as_slice() {
            [_] if n == 0 => "-".to_string(),
            [x] => Assignment::from_index(*x as u64, n).to_string(),
            _ => "?".to_string(),
        };
        out.push_str(&format!("{:.4} {} {}\n", l.frequency_hz, l.amplitude, label));
    }
    out
}

impl fmt::Display for SpectrumLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4} Hz {:+}", self.frequency_hz, self.amplitude)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compile_1sat, compile_formula};
    use crate::cnf::parse_dimacs;
    use crate::sim::run;

    fn freqs(lines: &[SpectrumLine]) -> Vec<f64> {
        lines.iter().map(|l| l.frequency_hz).collect()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn alanine_3q_thermal_geometry() {
        let lines = thermal_reference(&SpinSystem::alanine_3q(), 2).unwrap();
        let expected = [44.375, 9.435, -9.435, -44.375];
        assert_eq!(lines.len(), 4);
        for (l, e) in lines.iter().zip(expected) {
            assert!(close(l.frequency_hz, e), "{} vs {e}", l.frequency_hz);
            assert_eq!(l.amplitude, 0.25);
        }
    }

    #[test]
    fn alanine_4q_has_eight_lines() {
        let lines = thermal_reference(&SpinSystem::alanine_4q(), 3).unwrap();
        assert_eq!(lines.len(), 8);
        assert!(lines.iter().all(|l| l.amplitude == 0.125));
        let no_coupling = thermal_reference(&SpinSystem::alanine_4q(), 0).unwrap();
        assert_eq!(no_coupling, [SpectrumLine { frequency_hz: 0.0, amplitude: 1.0 }]);
    }

    #[test]
    fn one_sat_multiplet_has_one_negative_line() {
        let f = parse_dimacs("p cnf 3 3\n-1 0\n2 0\n3 0").unwrap();
        let c = compile_1sat(&f).unwrap();
        let sys = SpinSystem::alanine_4q();
        let lines = multiplet_lines(&run(&c).unwrap(), &c.layout(), &sys).unwrap();
        assert_eq!(lines.len(), 8);
        let negative: Vec<&SpectrumLine> = lines.iter().filter(|l| l.amplitude < 0.0).collect();
        assert_eq!(negative.len(), 1);
        // 110: x1 alpha (+), x2 beta (-), x3 beta (-)
        let f110 = 34.94 / 2.0 - 53.81 / 2.0 - 143.21 / 2.0;
        assert!(close(negative[0].frequency_hz, f110));
        let report = extract_solutions(&lines, &sys, 3).unwrap();
        assert_eq!(report.summary(), "1 solution: 110");
    }

    #[test]
    fn contradiction_is_all_positive() {
        let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let sys = SpinSystem::alanine_3q().restricted_to(1);
        let lines = multiplet_lines(&run(&c).unwrap(), &c.layout(), &sys).unwrap();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.amplitude > 0.0));
        assert_eq!(extract_solutions(&lines, &sys, 1).unwrap().count, 0);
    }

    #[test]
    fn acquisition_checks() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let out = run(&c).unwrap();

        // x3's proton is still coupled but the layout only has two variables
        let err = multiplet_lines(&out, &c.layout(), &SpinSystem::alanine_4q()).unwrap_err();
        assert_eq!(err, SpectrumError::UnmappedSpin("H".into()));

        let sys = SpinSystem::alanine_3q().decouple(2).unwrap();
        assert_eq!(
            multiplet_lines(&out, &c.layout(), &sys).unwrap_err(),
            SpectrumError::VariableDecoupled(2)
        );

        let scratch = SpinSystem::alanine_3q()
            .with_spin(Spin { name: "S".into(), shift_hz: 500.0 }, Some(Role::Scratch(1)), 20.0, false)
            .unwrap();
        assert_eq!(
            multiplet_lines(&out, &c.layout(), &scratch).unwrap_err(),
            SpectrumError::ScratchNotDecoupled("S".into())
        );

        let wide = parse_dimacs("p cnf 3 1\n1 2 3 0").unwrap();
        let cw = compile_formula(&wide).unwrap();
        assert_eq!(
            multiplet_lines(&run(&cw).unwrap(), &cw.layout(), &SpinSystem::alanine_3q()).unwrap_err(),
            SpectrumError::VariableWithoutSpin(3)
        );
    }

    #[test]
    fn render_lorentzian_identities() {
        let one = [SpectrumLine { frequency_hz: 0.0, amplitude: 1.0 }];
        let t = render(&one, -1.0, 1.0, 3, 1.0).unwrap();
        assert_eq!(t.points, [(-1.0, 0.5), (0.0, 1.0), (1.0, 0.5)]);

        let pair = [
            SpectrumLine { frequency_hz: 3.0, amplitude: 0.5 },
            SpectrumLine { frequency_hz: 3.0, amplitude: -0.5 },
        ];
        let t = render(&pair, -10.0, 10.0, 41, 2.0).unwrap();
        assert!(t.points.iter().all(|&(_, y)| y == 0.0));

        assert_eq!(render(&one, 1.0, 1.0, 10, 1.0), Err(SpectrumError::InvalidGrid));
        assert_eq!(render(&one, 0.0, 1.0, 1, 1.0), Err(SpectrumError::InvalidGrid));
        assert_eq!(render(&one, 0.0, 1.0, 5, 0.0), Err(SpectrumError::InvalidLinewidth(0.0)));
        assert!(render(&one, -1.0, 1.0, 3, 1.0).unwrap().to_csv().starts_with("frequency_hz,intensity\n-1,0.5\n"));
    }

    #[test]
    fn resolvability() {
        assert!(check_resolvable(&SpinSystem::alanine_3q(), 2, 5.0));
        assert!(!check_resolvable(&SpinSystem::alanine_3q(), 2, 19.0));
        let freqs = configuration_frequencies(&SpinSystem::alanine_3q(), 2).unwrap();
        assert!(close(min_separation(&freqs), 18.87));

        let equal = SpinSystem::synthetic(1, 10.0)
            .with_spin(Spin { name: "I2".into(), shift_hz: 2000.0 }, Some(Role::Variable(2)), 10.0, false)
            .unwrap();
        assert!(!check_resolvable(&equal, 2, 0.1));

        let zero = SpinSystem::synthetic(1, 10.0)
            .with_spin(Spin { name: "I2".into(), shift_hz: 2000.0 }, Some(Role::Variable(2)), 0.0, false)
            .unwrap();
        assert!(!check_resolvable(&zero, 2, 0.1));
        assert!(!check_resolvable(&SpinSystem::alanine_3q(), 3, 1.0));
    }

    #[test]
    fn degenerate_decode_is_an_error() {
        let equal = SpinSystem::synthetic(1, 10.0)
            .with_spin(Spin { name: "I2".into(), shift_hz: 2000.0 }, Some(Role::Variable(2)), 10.0, false)
            .unwrap();
        let f = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        let c = compile_formula(&f).unwrap();
        let lines = multiplet_lines(&run(&c).unwrap(), &c.layout(), &equal).unwrap();
        assert_eq!(lines.len(), 3);
        assert!(matches!(
            extract_solutions(&lines, &equal, 2),
            Err(SpectrumError::DegenerateLine { .. })
        ));
    }

    #[test]
    fn decode_errors() {
        let sys = SpinSystem::alanine_3q();
        let stray = [SpectrumLine { frequency_hz: 100.0, amplitude: 1.0 }];
        assert_eq!(extract_solutions(&stray, &sys, 2), Err(SpectrumError::UnmatchedLine(100.0)));
        let mut lines = thermal_reference(&sys, 2).unwrap();
        lines.pop();
        assert!(matches!(
            extract_solutions(&lines, &sys, 2),
            Err(SpectrumError::MissingConfiguration(_))
        ));
        let all = thermal_reference(&sys, 2).unwrap();
        let report = extract_solutions(&all, &sys, 2).unwrap();
        assert_eq!(report.count, 0);
        assert_eq!(report.false_space.len(), 4);
        let mut dup = all.clone();
        dup.push(all[0]);
        assert!(matches!(
            extract_solutions(&dup, &sys, 2),
            Err(SpectrumError::DuplicateConfiguration(_))
        ));
    }

    #[test]
    fn json_document_round_trip() {
        let sys = SpinSystem::alanine_4q();
        let back = SpinSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back, sys);
        let doc = r#"{
            "spins": [
                {"name": "A", "shift_hz": 0.0, "role": "work"},
                {"name": "B", "shift_hz": 10.0, "role": "x1"},
                {"name": "C", "shift_hz": 20.0}
            ],
            "couplings": [[0, 12, 3], [12, 0, 1], [3, 1, 0]],
            "decoupled": ["C"]
        }"#;
        let sys = SpinSystem::from_json(doc).unwrap();
        assert_eq!(sys.variable_capacity(), 1);
        assert_eq!(freqs(&thermal_reference(&sys, 1).unwrap()), [6.0, -6.0]);
        let asym = doc.replace("[3, 1, 0]", "[4, 1, 0]");
        assert!(SpinSystem::from_json(&asym).is_err());
        let unknown = doc.replace("[\"C\"]", "[\"Z\"]");
        assert!(matches!(SpinSystem::from_json(&unknown), Err(SpectrumError::Document(_))));
    }

    #[test]
    fn table_labels() {
        let sys = SpinSystem::alanine_3q();
        let table = line_table(&thermal_reference(&sys, 2).unwrap(), &sys, 2);
        assert_eq!(
            table,
            "# frequency_hz amplitude assignment\n44.3750 0.25 00\n9.4350 0.25 01\n-9.4350 0.25 10\n-44.3750 0.25 11\n"
        );
    }
}
