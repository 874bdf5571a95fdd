//! Line-oriented interchange format:
//!
//! ```text
//! qbc <width> <n> <m_scratch>
//! x <t>
//! mcx <c1,c2,...> <t>
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Circuit, CircuitError, Gate, QubitLayout};

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.layout();
        writeln!(f, "qbc {} {} {}", l.width(), l.num_vars(), l.num_scratch())?;
        for g in self.gates() {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_wire(line: usize, token: &str) -> Result<usize, CircuitError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("bad wire index `{token}`")))
}

impl FromStr for Circuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let Some(c) = circuit.as_mut() else {
                if parts.len() != 4 || parts[0] != "qbc" {
                    return Err(parse_err(line_no, "expected `qbc <width> <n> <m>` header"));
                }
                let width = parse_wire(line_no, parts[1])?;
                let layout = QubitLayout::new(
                    parse_wire(line_no, parts[2])?,
                    parse_wire(line_no, parts[3])?,
                );
                if layout.width() != width {
                    return Err(parse_err(
                        line_no,
                        format!("width {width} does not equal n + 1 + m = {}", layout.width()),
                    ));
                }
                circuit = Some(Circuit::empty(layout));
                continue;
            };
            let gate = match parts.as_slice() {
                ["x", t] => Gate::not(parse_wire(line_no, t)?),
                ["mcx", cs, t] => {
                    let controls = cs
                        .split(',')
                        .map(|w| parse_wire(line_no, w))
                        .collect::<Result<Vec<_>, _>>()?;
                    Gate::mcx(controls, parse_wire(line_no, t)?)
                        .map_err(|e| parse_err(line_no, e.to_string()))?
                }
                _ => return Err(parse_err(line_no, format!("unknown gate line `{line}`"))),
            };
            c.push(gate).map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        circuit.ok_or_else(|| parse_err(0, "missing `qbc` header"))
    }
}
