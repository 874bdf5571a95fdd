use super::{Circuit, CircuitError, DEFAULT_PERMUTATION_CAP};

/// Action of a circuit on the `2^width` computational basis states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPermutation {
    width: usize,
    mapping: Vec<u64>,
}

impl BasisPermutation {
    pub fn identity(width: usize) -> Self {
        Self {
            width,
            mapping: (0..1u64 << width).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn mapping(&self) -> &[u64] {
        &self.mapping
    }

    pub fn apply(&self, index: u64) -> u64 {
        self.mapping[index as usize]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.mapping.len()];
        for &j in &self.mapping {
            match seen.get_mut(j as usize) {
                Some(s) if !*s => *s = true,
                _ => return false,
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i as u64 == j)
    }

    pub fn is_involution(&self) -> bool {
        self.then(self).is_identity()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &BasisPermutation) -> BasisPermutation {
        assert_eq!(self.width, next.width, "width mismatch");
        BasisPermutation {
            width: self.width,
            mapping: self.mapping.iter().map(|&j| next.apply(j)).collect(),
        }
    }
}

pub fn as_permutation(c: &Circuit) -> Result<BasisPermutation, CircuitError> {
    as_permutation_capped(c, DEFAULT_PERMUTATION_CAP)
}

pub fn as_permutation_capped(c: &Circuit, cap: usize) -> Result<BasisPermutation, CircuitError> {
    let width = c.width();
    if width > cap || width >= 64 {
        return Err(CircuitError::WidthLimit { width, cap });
    }
    Ok(BasisPermutation {
        width,
        mapping: (0..1u64 << width).map(|i| c.apply(i)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, QubitLayout};

    #[test]
    fn single_not_swaps() {
        let c = Circuit::new(QubitLayout::new(0, 0), vec![Gate::not(0)]).unwrap();
        let p = as_permutation(&c).unwrap();
        assert_eq!(p.mapping(), &[1, 0]);
        assert!(p.is_bijection() && p.is_involution());
    }

    #[test]
    fn toffoli_swaps_only_when_controls_set() {
        let c = Circuit::new(QubitLayout::new(2, 0), vec![Gate::mcx([1, 2], 0).unwrap()]).unwrap();
        let p = as_permutation(&c).unwrap();
        assert_eq!(p.mapping(), &[0, 1, 2, 3, 4, 5, 7, 6]);
    }

    #[test]
    fn width_cap() {
        let c = Circuit::empty(QubitLayout::new(10, 15));
        assert_eq!(
            as_permutation(&c),
            Err(CircuitError::WidthLimit { width: 26, cap: 20 })
        );
        assert!(as_permutation_capped(&Circuit::empty(QubitLayout::new(2, 0)), 2).is_err());
    }

    #[test]
    fn bijection_detects_collisions() {
        let p = BasisPermutation {
            width: 1,
            mapping: vec![0, 0],
        };
        assert!(!p.is_bijection());
    }
}
