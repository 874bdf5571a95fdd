//! CNF formulas: data model, DIMACS interchange, classical evaluation and the
//! exhaustive oracle every other stage is checked against.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest variable count `brute_force_solutions` will enumerate by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("no `p cnf` header found")]
    NoHeader,
    #[error("line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: invalid literal token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("variable {var} outside declared range 1..={num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("variable index 0 is not a valid literal")]
    ZeroVariable,
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("assignment has {got} bits, formula has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{num_vars} variables exceeds the exhaustive limit of {limit}")]
    ExhaustiveLimit { num_vars: usize, limit: usize },
    #[error("clause width k={k} exceeds variable count n={n}")]
    ClauseWidth { k: usize, n: usize },
    #[error("invalid assignment bitstring `{0}`")]
    InvalidBitstring(String),
}

/// A variable or its negation. Variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Self { var, negated }
    }

    pub fn positive(var: usize) -> Self {
        Self::new(var, false)
    }

    pub fn negative(var: usize) -> Self {
        Self::new(var, true)
    }

    /// Signed DIMACS integer; `None` for 0.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        match value {
            0 => None,
            v => Some(Self::new(v.unsigned_abs() as usize, v < 0)),
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn complement(self) -> Self {
        Self::new(self.var, !self.negated)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// Disjunction of literals. Identical literals are stored once, first
/// occurrence wins the position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        Self { literals: out }
    }

    pub fn from_dimacs(values: &[i64]) -> Self {
        Self::new(values.iter().filter_map(|&v| Literal::from_dimacs(v)))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True when some variable occurs both plain and negated.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| self.literals.contains(&l.complement()))
    }

    /// Distinct variables in first-occurrence order.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars = Vec::with_capacity(self.literals.len());
        for l in &self.literals {
            if !vars.contains(&l.var) {
                vars.push(l.var);
            }
        }
        vars
    }

    pub fn max_var(&self) -> usize {
        self.literals.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, CnfError> {
        evaluate_clause(self, a)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Conjunction of clauses over `num_vars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for c in &clauses {
            for l in c.literals() {
                if l.var == 0 {
                    return Err(CnfError::ZeroVariable);
                }
                if l.var > num_vars {
                    return Err(CnfError::VariableOutOfRange {
                        var: l.var,
                        num_vars,
                    });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Builds a formula from signed DIMACS clauses.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        Self::new(
            num_vars,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Widest clause length, `k_max`.
    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, CnfError> {
        evaluate(self, a)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c.literals() {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "true");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CnfFormula {
    type Err = CnfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dimacs(s)
    }
}

/// Truth values for `x_1..x_n`; `bits[i]` holds `x_{i+1}`.
///
/// Displayed and ordered as the binary number `x_n...x_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Bit `i` of `value` becomes `x_{i+1}`.
    pub fn from_index(value: u64, num_vars: usize) -> Self {
        Self {
            bits: (0..num_vars).map(|i| (value >> i) & 1 == 1).collect(),
        }
    }

    pub fn to_index(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Value of `x_var`, 1-based.
    pub fn get(&self, var: usize) -> Option<bool> {
        var.checked_sub(1).and_then(|i| self.bits.get(i).copied())
    }
}

impl Ord for Assignment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for Assignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = CnfError;

    /// Parses `x_n...x_1`, most significant variable first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .rev()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CnfError::InvalidBitstring(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { bits })
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses DIMACS CNF text.
///
/// Comment lines start with `c`. Clause literals may span lines; each clause
/// ends at a `0`. A lone `0` is an empty clause.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::DuplicateHeader { line: line_no });
            }
            let malformed = || CnfError::MalformedHeader {
                line: line_no,
                text: line.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(malformed());
            }
            let n = parts[2].parse().map_err(|_| malformed())?;
            let m = parts[3].parse().map_err(|_| malformed())?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(CnfError::MissingHeader { line: line_no });
        };
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| CnfError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            match Literal::from_dimacs(value) {
                None => {
                    clauses.push(Clause::new(current.drain(..)));
                    open = false;
                }
                Some(lit) => {
                    if lit.var > n {
                        return Err(CnfError::VariableOutOfRange {
                            var: lit.var,
                            num_vars: n,
                        });
                    }
                    current.push(lit);
                    open = true;
                }
            }
        }
    }

    let (n, m) = header.ok_or(CnfError::NoHeader)?;
    if open {
        return Err(CnfError::UnterminatedClause);
    }
    if clauses.len() != m {
        return Err(CnfError::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        });
    }
    CnfFormula::new(n, clauses)
}

/// OR over the clause's literals. An empty clause is false.
pub fn evaluate_clause(clause: &Clause, a: &Assignment) -> Result<bool, CnfError> {
    let mut value = false;
    for l in clause.literals() {
        let bit = a.get(l.var).ok_or(CnfError::VariableOutOfRange {
            var: l.var,
            num_vars: a.len(),
        })?;
        value |= bit ^ l.negated;
    }
    Ok(value)
}

pub fn evaluate(f: &CnfFormula, a: &Assignment) -> Result<bool, CnfError> {
    if a.len() != f.num_vars() {
        return Err(CnfError::LengthMismatch {
            expected: f.num_vars(),
            got: a.len(),
        });
    }
    for c in f.clauses() {
        if !evaluate_clause(c, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every satisfying assignment, found by enumerating all `2^n` candidates.
pub fn brute_force_solutions(f: &CnfFormula) -> Result<BTreeSet<Assignment>, CnfError> {
    brute_force_solutions_with_limit(f, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn brute_force_solutions_with_limit(
    f: &CnfFormula,
    limit: usize,
) -> Result<BTreeSet<Assignment>, CnfError> {
    let n = f.num_vars();
    if n > limit || n >= 64 {
        return Err(CnfError::ExhaustiveLimit { num_vars: n, limit });
    }
    let mut out = BTreeSet::new();
    for value in 0..(1u64 << n) {
        let a = Assignment::from_index(value, n);
        if evaluate(f, &a)? {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Seeded random k-SAT: each clause draws `k` distinct variables uniformly and
/// negates each with probability 1/2.
pub fn generate_random_ksat(n: usize, m: usize, k: usize, seed: u64) -> Result<CnfFormula, CnfError> {
    if k == 0 || k > n {
        return Err(CnfError::ClauseWidth { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = sample(&mut rng, n, k);
            Clause::new(
                vars.into_iter()
                    .map(|v| Literal::new(v + 1, rng.gen_bool(0.5))),
            )
        })
        .collect();
    CnfFormula::new(n, clauses)
}
