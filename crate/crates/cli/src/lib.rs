//! Command implementations behind the `nmrsat` binary.
//!
//! Each command returns an [`Outcome`] holding what should be printed and
//! whether every requested check passed, so the binary stays a thin shell and
//! the commands can be driven from tests.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nmrsat::circuit::{
    append_uncompute, compile, compile_formula_capped, peephole_cancel, Circuit, CompilePath, Gate,
    GateCounts,
};
use nmrsat::cnf::{brute_force_solutions, generate_random_ksat, parse_dimacs, CnfFormula};
use nmrsat::sim::{marginalize, run_capped, true_space, SolutionReport};
use nmrsat::spectrum::{
    check_resolvable, extract_solutions, line_table, multiplet_lines, render, thermal_reference,
    SpectrumLine, SpinSystem,
};

pub const DEFAULT_WIDTH_CAP: usize = 24;
pub const DEFAULT_LINEWIDTH_HZ: f64 = 1.0;
/// Smallest line spacing accepted as resolved.
pub const MIN_SEPARATION_HZ: f64 = 1.0;
/// Coupling step of the synthetic system used past the alanine capacity.
pub const SYNTHETIC_BASE_J_HZ: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(name = "nmrsat", version, about = "Compile CNF formulas to NOT/MCX circuits and read solutions off a simulated NMR multiplet")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every satisfying assignment.
    Solve(SolveArgs),
    /// Emit the circuit and its gate counts.
    Compile(CompileArgs),
    /// Emit the work-spin line table and optionally a rendered trace.
    Spectrum(SpectrumArgs),
    /// Cross-check oracle, simulator and spectral decode.
    Verify(VerifyArgs),
    /// Emit a seeded random k-SAT instance as DIMACS.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct InputArgs {
    /// DIMACS file, or `-` for stdin.
    pub input: Option<PathBuf>,
    /// Inline DIMACS text instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub dimacs: Option<String>,
}

impl InputArgs {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        Self {
            input: Some(path.into()),
            dimacs: None,
        }
    }

    pub fn inline(text: impl Into<String>) -> Self {
        Self {
            input: None,
            dimacs: Some(text.into()),
        }
    }

    fn is_given(&self) -> bool {
        self.input.is_some() || self.dimacs.is_some()
    }

    pub fn load(&self) -> Result<CnfFormula> {
        let text = match (&self.input, &self.dimacs) {
            (_, Some(text)) => text.clone(),
            (Some(p), None) if p.as_os_str() == "-" => {
                std::io::read_to_string(std::io::stdin()).context("reading stdin")?
            }
            (Some(p), None) => {
                fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
            }
            (None, None) => bail!("no input: pass a DIMACS file or --dimacs"),
        };
        Ok(parse_dimacs(&text)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    /// Spin system: `auto`, `alanine-3q`, `alanine-4q`, or a JSON file.
    #[arg(long, default_value = "auto")]
    pub spin_system: String,
    /// Append the scratchpad uncompute blocks (forces the general construction).
    #[arg(long)]
    pub uncompute: bool,
    /// Largest register width allowed.
    #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
    pub width_cap: usize,
    /// Structured JSON output.
    #[arg(long)]
    pub json: bool,
}

impl Default for PipelineArgs {
    fn default() -> Self {
        Self {
            spin_system: "auto".into(),
            uncompute: false,
            width_cap: DEFAULT_WIDTH_CAP,
            json: false,
        }
    }
}

#[derive(Debug, Clone, Args, Default)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Require the spectral decode path; fail if the spin system cannot resolve it.
    #[arg(long)]
    pub via_spectrum: bool,
}

#[derive(Debug, Clone, Args, Default)]
pub struct CompileArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Emit the circuit as compiled, without NOT-pair cancellation.
    #[arg(long)]
    pub no_peephole: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Thermal-equilibrium reference instead of the computed state.
    #[arg(long)]
    pub thermal: bool,
    /// Lorentzian half-width in Hz.
    #[arg(long, default_value_t = DEFAULT_LINEWIDTH_HZ)]
    pub linewidth: f64,
    /// Render grid `min,max,points` in Hz.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Write the rendered trace as CSV to this path.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

impl Default for SpectrumArgs {
    fn default() -> Self {
        Self {
            input: InputArgs::default(),
            pipeline: PipelineArgs::default(),
            thermal: false,
            linewidth: DEFAULT_LINEWIDTH_HZ,
            grid: None,
            trace: None,
        }
    }
}

#[derive(Debug, Clone, Args, Default)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Check a seeded random corpus of this many instances (n <= 4, m <= 5, k <= 3).
    #[arg(long, conflicts_with = "examples")]
    pub corpus: Option<usize>,
    /// Check the bundled worked examples.
    #[arg(long)]
    pub examples: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flip the work qubit at the end of every circuit to exercise the harness.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min_hz: f64,
    pub max_hz: f64,
    pub points: usize,
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err("expected min,max,points".into());
    };
    let min_hz: f64 = a.parse().map_err(|_| format!("bad minimum `{a}`"))?;
    let max_hz: f64 = b.parse().map_err(|_| format!("bad maximum `{b}`"))?;
    let points: usize = c.parse().map_err(|_| format!("bad point count `{c}`"))?;
    if !(min_hz < max_hz) || points < 2 {
        return Err("grid needs min < max and at least 2 points".into());
    }
    Ok(Grid {
        min_hz,
        max_hz,
        points,
    })
}

/// Text to print and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            success: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaStats {
    pub n: usize,
    pub m: usize,
    pub k_max: usize,
}

impl From<&CnfFormula> for FormulaStats {
    fn from(f: &CnfFormula) -> Self {
        Self {
            n: f.num_vars(),
            m: f.num_clauses(),
            k_max: f.max_clause_len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub formula: FormulaStats,
    pub width: usize,
    pub gate_counts: GateCounts,
    pub solutions: SolutionReport,
    pub spin_system: Option<String>,
    pub resolvable: Option<bool>,
    /// Whether the spectral decode reproduced `solutions`; `None` if not run.
    pub spectral_agrees: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Spin system for `n` variables from a preset name, `auto`, or a JSON file.
pub fn resolve_spin_system(spec: &str, n: usize) -> Result<(String, SpinSystem)> {
    let (name, sys) = match spec {
        "auto" if n <= 3 => ("alanine-4q".to_string(), SpinSystem::alanine_4q()),
        "auto" => (
            format!("synthetic-{n}"),
            SpinSystem::synthetic(n, SYNTHETIC_BASE_J_HZ),
        ),
        name => match SpinSystem::preset(name) {
            Some(sys) => (name.to_string(), sys),
            None => {
                let text = fs::read_to_string(name)
                    .with_context(|| format!("`{name}` is neither a preset nor a readable file"))?;
                (name.to_string(), SpinSystem::from_json(&text)?)
            }
        },
    };
    if sys.variable_capacity() < n {
        bail!(
            "{n} variables exceed the capacity of spin system `{name}` ({} variable spins)",
            sys.variable_capacity()
        );
    }
    Ok((name, sys.restricted_to(n)))
}

/// Compiles `f` the way every command does: automatic path selection, or the
/// general construction plus uncompute when requested.
pub fn build_circuit(f: &CnfFormula, pipeline: &PipelineArgs) -> Result<Circuit> {
    if pipeline.uncompute {
        let c = compile_formula_capped(f, pipeline.width_cap)?;
        Ok(append_uncompute(&c, f)?)
    } else {
        Ok(compile(f, CompilePath::Auto, pipeline.width_cap)?)
    }
}

fn spectral_lines(c: &Circuit, sys: &SpinSystem) -> Result<Vec<SpectrumLine>> {
    let state = run_capped(c, c.width())?;
    Ok(multiplet_lines(&state, &c.layout(), sys)?)
}

pub fn solve_summary(args: &SolveArgs) -> Result<RunSummary> {
    let start = Instant::now();
    let f = args.input.load()?;
    let c = build_circuit(&f, &args.pipeline)?;
    let state = run_capped(&c, args.pipeline.width_cap)?;
    let solutions = true_space(&state, &c.layout())?;

    let mut spin_system = None;
    let mut resolvable = None;
    let mut spectral_agrees = None;
    match resolve_spin_system(&args.pipeline.spin_system, f.num_vars()) {
        Ok((name, sys)) => {
            let ok = check_resolvable(&sys, f.num_vars(), MIN_SEPARATION_HZ);
            if !ok && args.via_spectrum {
                bail!("spin system `{name}` does not resolve all 2^{} lines", f.num_vars());
            }
            if ok {
                let lines = multiplet_lines(&state, &c.layout(), &sys)?;
                let decoded = extract_solutions(&lines, &sys, f.num_vars())?;
                spectral_agrees = Some(decoded == solutions);
            }
            spin_system = Some(name);
            resolvable = Some(ok);
        }
        Err(e) if args.via_spectrum => return Err(e),
        Err(_) => {}
    }

    Ok(RunSummary {
        formula: FormulaStats::from(&f),
        width: c.width(),
        gate_counts: GateCounts::of(&c),
        solutions,
        spin_system,
        resolvable,
        spectral_agrees,
        elapsed: start.elapsed(),
    })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<Outcome> {
    let summary = solve_summary(args)?;
    let success = summary.spectral_agrees != Some(false);
    let stdout = if args.pipeline.json {
        serde_json::to_string_pretty(&summary)? + "\n"
    } else {
        let mut out = String::new();
        let s = &summary.formula;
        out.push_str(&format!("formula: n={} m={} k_max={}\n", s.n, s.m, s.k_max));
        out.push_str(&format!(
            "circuit: width {}, {} gates\n",
            summary.width,
            summary.gate_counts.total_gates()
        ));
        out.push_str(&summary.solutions.summary());
        out.push('\n');
        match (&summary.spin_system, summary.spectral_agrees) {
            (Some(name), Some(true)) => out.push_str(&format!("spectral decode ({name}): agrees\n")),
            (Some(name), Some(false)) => {
                out.push_str(&format!("spectral decode ({name}): MISMATCH\n"))
            }
            (Some(name), None) => out.push_str(&format!("spectral decode ({name}): unresolved\n")),
            (None, _) => out.push_str("spectral decode: skipped (no spin system)\n"),
        }
        out.push_str(&format!("time: {:.3} ms\n", summary.elapsed.as_secs_f64() * 1e3));
        out
    };
    Ok(Outcome { stdout, success })
}

#[derive(Serialize)]
struct CompileReport<'a> {
    circuit: &'a Circuit,
    counts: &'a GateCounts,
    counts_after_peephole: &'a GateCounts,
}

pub fn cmd_compile(args: &CompileArgs) -> Result<Outcome> {
    let f = args.input.load()?;
    let raw = build_circuit(&f, &args.pipeline)?;
    let optimized = peephole_cancel(&raw);
    let raw_counts = GateCounts::of(&raw);
    let opt_counts = GateCounts::of(&optimized);
    let emitted = if args.no_peephole { &raw } else { &optimized };

    if args.pipeline.json {
        let report = CompileReport {
            circuit: emitted,
            counts: &raw_counts,
            counts_after_peephole: &opt_counts,
        };
        return Ok(Outcome::ok(serde_json::to_string_pretty(&report)? + "\n"));
    }
    let mut out = emitted.to_string();
    let comment = |title: &str, counts: &GateCounts| {
        let mut s = format!("# {title}\n");
        for line in counts.report().lines() {
            s.push_str(&format!("# {line}\n"));
        }
        s
    };
    out.push_str(&comment("counts as compiled", &raw_counts));
    out.push_str(&comment("counts after NOT-pair cancellation", &opt_counts));
    Ok(Outcome::ok(out))
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Outcome> {
    let formula = if args.input.is_given() {
        Some(args.input.load()?)
    } else if args.thermal {
        None
    } else {
        bail!("no input: pass a DIMACS file, --dimacs, or --thermal");
    };

    let (name, sys, n, lines, decoded) = match &formula {
        Some(f) => {
            let n = f.num_vars();
            let (name, sys) = resolve_spin_system(&args.pipeline.spin_system, n)?;
            if !check_resolvable(&sys, n, MIN_SEPARATION_HZ) {
                bail!("spin system `{name}` does not resolve all 2^{n} lines");
            }
            if args.thermal {
                let lines = thermal_reference(&sys, n)?;
                (name, sys, n, lines, None)
            } else {
                let c = build_circuit(f, &args.pipeline)?;
                let lines = spectral_lines(&c, &sys)?;
                let decoded = extract_solutions(&lines, &sys, n)?;
                (name, sys, n, lines, Some(decoded))
            }
        }
        None => {
            let (name, sys) = match args.pipeline.spin_system.as_str() {
                "auto" => ("alanine-4q".to_string(), SpinSystem::alanine_4q()),
                spec => {
                    let cap = SpinSystem::preset(spec)
                        .map(|s| s.variable_capacity())
                        .unwrap_or(0);
                    resolve_spin_system(spec, cap)?
                }
            };
            let n = sys.variable_capacity();
            let lines = thermal_reference(&sys, n)?;
            (name, sys, n, lines, None)
        }
    };

    let mut trace_csv = None;
    if args.trace.is_some() || args.grid.is_some() {
        let grid = args.grid.unwrap_or_else(|| default_grid(&lines, args.linewidth));
        let trace = render(&lines, grid.min_hz, grid.max_hz, grid.points, args.linewidth)?;
        trace_csv = Some(trace.to_csv());
    }
    if let (Some(path), Some(csv)) = (&args.trace, &trace_csv) {
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }

    let stdout = if args.pipeline.json {
        #[derive(Serialize)]
        struct Report<'a> {
            spin_system: &'a str,
            num_vars: usize,
            lines: &'a [SpectrumLine],
            solutions: Option<&'a SolutionReport>,
        }
        serde_json::to_string_pretty(&Report {
            spin_system: &name,
            num_vars: n,
            lines: &lines,
            solutions: decoded.as_ref(),
        })? + "\n"
    } else {
        let mut out = format!("# spin system: {name}\n");
        out.push_str(&line_table(&lines, &sys, n));
        if let Some(report) = &decoded {
            out.push_str(&format!("# {}\n", report.summary()));
        }
        out
    };
    Ok(Outcome::ok(stdout))
}

fn default_grid(lines: &[SpectrumLine], linewidth: f64) -> Grid {
    let lo = lines.iter().map(|l| l.frequency_hz).fold(f64::INFINITY, f64::min);
    let hi = lines.iter().map(|l| l.frequency_hz).fold(f64::NEG_INFINITY, f64::max);
    let pad = 10.0 * linewidth;
    Grid {
        min_hz: lo - pad,
        max_hz: hi + pad,
        points: 4001,
    }
}

/// Worked examples: (label, DIMACS, expected solutions).
pub fn worked_examples() -> Vec<(&'static str, &'static str, &'static [&'static str])> {
    vec![
        (
            "3-SAT, five solutions",
            "p cnf 3 3\n1 2 3 0\n1 2 -3 0\n-1 2 3 0\n",
            &["010", "011", "101", "110", "111"],
        ),
        ("1-SAT !x1 & x2 & x3", "p cnf 3 3\n-1 0\n2 0\n3 0\n", &["110"]),
        ("x1 & !x1", "p cnf 1 2\n1 0\n-1 0\n", &[]),
        ("x1 | !x1", "p cnf 1 1\n1 -1 0\n", &["0", "1"]),
        ("x1 & x1", "p cnf 1 2\n1 0\n1 0\n", &["1"]),
        ("!x1 & !x1", "p cnf 1 2\n-1 0\n-1 0\n", &["0"]),
        ("2-SAT x1 | !x2", "p cnf 2 1\n1 -2 0\n", &["00", "01", "11"]),
        ("3-SAT !x1 | !x2 | !x3", "p cnf 3 1\n-1 -2 -3 0\n", &["000", "001", "010", "011", "100", "101", "110"]),
    ]
}

/// The recipe behind `verify --corpus`: instance `i` uses seed `base + i`.
pub fn seeded_instance(base_seed: u64, i: usize) -> CnfFormula {
    let n = 1 + i % 4;
    let m = 1 + (i / 4) % 5;
    let k = (1 + (i / 20) % 3).min(n);
    generate_random_ksat(n, m, k, base_seed.wrapping_add(i as u64)).expect("k <= n")
}

/// Why a single formula failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub formula: String,
    pub detail: String,
}

/// Oracle vs simulator vs spectral decode for one formula.
pub fn verify_formula(
    f: &CnfFormula,
    pipeline: &PipelineArgs,
    inject_fault: bool,
) -> Result<Option<Counterexample>> {
    let oracle = SolutionReport::from_solutions(f.num_vars(), brute_force_solutions(f)?);
    let mut c = build_circuit(f, pipeline)?;
    if inject_fault {
        c.push(Gate::not(0))?;
    }
    let state = run_capped(&c, pipeline.width_cap)?;
    let fail = |detail: String| {
        Ok(Some(Counterexample {
            formula: f.to_dimacs().trim_end().replace('\n', " / "),
            detail,
        }))
    };
    let direct = true_space(&state, &c.layout())?;
    if direct != oracle {
        let first = oracle
            .true_space
            .symmetric_difference(&direct.true_space)
            .next()
            .map(ToString::to_string)
            .unwrap_or_default();
        return fail(format!(
            "simulator gives {} but oracle gives {} (first differing assignment {first})",
            direct.summary(),
            oracle.summary()
        ));
    }
    if pipeline.uncompute {
        let scratch: Vec<usize> = c.layout().scratch_wires().collect();
        if !scratch.is_empty() {
            let zero = marginalize(&state, &scratch)?.weight(0);
            if (zero - 1.0).abs() > 1e-12 {
                return fail(format!("scratch register not restored: P(0) = {zero}"));
            }
        }
    }
    let (name, sys) = resolve_spin_system(&pipeline.spin_system, f.num_vars())?;
    if !check_resolvable(&sys, f.num_vars(), MIN_SEPARATION_HZ) {
        bail!("spin system `{name}` does not resolve all 2^{} lines", f.num_vars());
    }
    let lines = multiplet_lines(&state, &c.layout(), &sys)?;
    let decoded = extract_solutions(&lines, &sys, f.num_vars())?;
    if decoded != oracle {
        return fail(format!(
            "spectral decode gives {} but oracle gives {}",
            decoded.summary(),
            oracle.summary()
        ));
    }
    Ok(None)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let mut cases: Vec<(String, CnfFormula)> = Vec::new();
    if let Some(count) = args.corpus {
        for i in 0..count {
            cases.push((format!("instance {i}"), seeded_instance(args.seed, i)));
        }
    } else if args.examples {
        for (label, text, _) in worked_examples() {
            cases.push((label.to_string(), parse_dimacs(text)?));
        }
    } else {
        cases.push(("input".to_string(), args.input.load()?));
    }

    let mut matches = 0;
    let mut first_failure = None;
    for (label, f) in &cases {
        match verify_formula(f, &args.pipeline, args.inject_fault)? {
            None => matches += 1,
            Some(cx) => {
                first_failure.get_or_insert((label.clone(), cx));
            }
        }
    }
    if args.examples && !args.inject_fault {
        for (label, text, expected) in worked_examples() {
            let got: Vec<String> = brute_force_solutions(&parse_dimacs(text)?)?
                .iter()
                .map(ToString::to_string)
                .collect();
            if got != expected {
                return Err(anyhow!("worked example `{label}` expected {expected:?}, oracle gives {got:?}"));
            }
        }
    }

    let total = cases.len();
    let success = first_failure.is_none();
    let stdout = if args.pipeline.json {
        #[derive(Serialize)]
        struct Report {
            total: usize,
            matches: usize,
            passed: bool,
            counterexample: Option<(String, String, String)>,
        }
        serde_json::to_string_pretty(&Report {
            total,
            matches,
            passed: success,
            counterexample: first_failure
                .as_ref()
                .map(|(l, c)| (l.clone(), c.formula.clone(), c.detail.clone())),
        })? + "\n"
    } else {
        let mut out = format!("{matches}/{total} exact matches\n");
        if let Some((label, cx)) = &first_failure {
            out.push_str(&format!("counterexample ({label}): {}\n  {}\n", cx.formula, cx.detail));
        }
        out
    };
    Ok(Outcome { stdout, success })
}

pub fn cmd_random(args: &RandomArgs) -> Result<Outcome> {
    let f = generate_random_ksat(args.n, args.m, args.k, args.seed)?;
    Ok(Outcome::ok(format!(
        "c random {}-SAT n={} m={} seed={}\n{}",
        args.k,
        args.n,
        args.m,
        args.seed,
        f.to_dimacs()
    )))
}

pub fn run_command(command: &Command) -> Result<Outcome> {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Compile(a) => cmd_compile(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Random(a) => cmd_random(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("-130,130,2601").unwrap(),
            Grid { min_hz: -130.0, max_hz: 130.0, points: 2601 }
        );
        assert!(parse_grid("1,1,10").is_err());
        assert!(parse_grid("0,1").is_err());
        assert!(parse_grid("0,1,1").is_err());
    }

    #[test]
    fn spin_system_resolution() {
        let (name, sys) = resolve_spin_system("auto", 2).unwrap();
        assert_eq!(name, "alanine-4q");
        assert_eq!(sys.variable_capacity(), 2);
        let (name, _) = resolve_spin_system("auto", 4).unwrap();
        assert_eq!(name, "synthetic-4");
        assert!(resolve_spin_system("alanine-3q", 3).is_err());
        assert!(resolve_spin_system("no-such-file.json", 1).is_err());
    }

    #[test]
    fn seeded_instances_are_in_range() {
        for i in 0..200 {
            let f = seeded_instance(0, i);
            assert!(f.num_vars() <= 4 && f.num_clauses() <= 5 && f.max_clause_len() <= 3);
        }
    }

    #[test]
    fn worked_examples_agree_with_oracle() {
        for (label, text, expected) in worked_examples() {
            let got: Vec<String> = brute_force_solutions(&parse_dimacs(text).unwrap())
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect();
            assert_eq!(got, expected, "{label}");
        }
    }
}
