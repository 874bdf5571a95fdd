use super::{Circuit, Gate};

/// Removes pairs of NOTs on the same wire when no gate in between touches
/// that wire. Repeats until no pair is left.
///
/// Runs as one left-to-right sweep: each wire keeps a stack of the kept gates
/// that touch it, so a removal immediately exposes the previous gate on that
/// wire to the next incoming NOT.
pub fn peephole_cancel(c: &Circuit) -> Circuit {
    let mut kept: Vec<Option<Gate>> = Vec::with_capacity(c.len());
    let mut on_wire: Vec<Vec<usize>> = vec![Vec::new(); c.width()];

    for gate in c.gates() {
        if let Gate::Not { target } = gate {
            let stack = &mut on_wire[*target];
            if let Some(&last) = stack.last() {
                if matches!(kept[last], Some(Gate::Not { .. })) {
                    stack.pop();
                    kept[last] = None;
                    continue;
                }
            }
        }
        let idx = kept.len();
        for &w in gate.controls() {
            on_wire[w].push(idx);
        }
        on_wire[gate.target()].push(idx);
        kept.push(Some(gate.clone()));
    }

    Circuit::new(c.layout(), kept.into_iter().flatten().collect())
        .expect("subset of a valid circuit is valid")
}
