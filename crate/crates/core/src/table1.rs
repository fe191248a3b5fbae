//! The seven reference scenarios: graph, coupling and initial positions
//! (momenta start at zero), with the published energies and exponents.

use crate::dynamics::{CoupledSystem, InteractionPotential, SystemState};
use crate::error::Result;
use crate::graph::Graph;

/// Largest exponent below this marks a regular orbit.
pub const REGULAR_THRESHOLD: f64 = 1e-2;
/// Largest exponent above this marks a chaotic orbit.
pub const CHAOTIC_THRESHOLD: f64 = 3e-2;

#[derive(Clone, Copy, Debug)]
pub struct Table1Row {
    pub graph: &'static str,
    pub kappa: f64,
    pub q0: &'static [f64],
    pub reference_energy: f64,
    pub reference_exponents: &'static [f64],
    pub reference_regular: bool,
}

const K2_Q: &[f64] = &[0.2, 1.0 / 7.0];
const K3_Q: &[f64] = &[0.2, 1.0 / 7.0, 0.1];
const P3_Q: &[f64] = &[0.2, 0.1, 1.0 / 7.0];

pub const ROWS: [Table1Row; 7] = [
    Table1Row {
        graph: "complete:2",
        kappa: 0.2,
        q0: K2_Q,
        reference_energy: -1.92,
        reference_exponents: &[1.4e-3, 1.5e-3, -1.4e-3, -1.5e-3],
        reference_regular: true,
    },
    Table1Row {
        graph: "complete:2",
        kappa: 0.5,
        q0: K2_Q,
        reference_energy: -1.85,
        reference_exponents: &[8.4e-2, 1.9e-3, -1.6e-3, -8.4e-2],
        reference_regular: false,
    },
    Table1Row {
        graph: "complete:3",
        kappa: 0.125,
        q0: K3_Q,
        reference_energy: -2.87,
        reference_exponents: &[1.8e-3, 7.9e-4, 7.0e-4, -8.7e-4, -5.2e-4, -1.9e-3],
        reference_regular: true,
    },
    Table1Row {
        graph: "complete:3",
        kappa: 0.25,
        q0: K3_Q,
        reference_energy: -2.78,
        reference_exponents: &[7.4e-2, 4.4e-2, 8.3e-4, -1.4e-3, -4.2e-2, -7.6e-2],
        reference_regular: false,
    },
    Table1Row {
        graph: "path:3",
        kappa: 0.125,
        q0: P3_Q,
        reference_energy: -2.90,
        reference_exponents: &[1.8e-3, 1.6e-3, 3.2e-4, -9.5e-3, -2.2e-3, -5.9e-4],
        reference_regular: true,
    },
    Table1Row {
        graph: "path:3",
        kappa: 0.25,
        q0: P3_Q,
        reference_energy: -2.84,
        reference_exponents: &[7.2e-2, -2.5e-4, 5.0e-4, 4.8e-4, -1.4e-4, -7.3e-2],
        reference_regular: false,
    },
    Table1Row {
        graph: "path:3",
        kappa: 1.0,
        q0: P3_Q,
        reference_energy: -2.48,
        reference_exponents: &[3.1e-1, 2.4e-2, 2.9e-3, -2.5e-3, -2.4e-2, -3.2e-1],
        reference_regular: false,
    },
];

impl Table1Row {
    pub fn system(&self) -> Result<CoupledSystem> {
        CoupledSystem::new(Graph::from_spec(self.graph)?, InteractionPotential::double_well(), self.kappa)
    }

    pub fn initial_state(&self) -> SystemState {
        SystemState { q: self.q0.to_vec(), p: vec![0.0; self.q0.len()], t: 0.0 }
    }

    pub fn reference_max_exponent(&self) -> f64 {
        self.reference_exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn label(&self) -> String {
        format!("{} kappa={}", self.graph, self.kappa)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Chaotic,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "REGULAR",
            Verdict::Chaotic => "CHAOTIC",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

pub fn verdict(max_exponent: f64) -> Verdict {
    if max_exponent < REGULAR_THRESHOLD {
        Verdict::Regular
    } else if max_exponent > CHAOTIC_THRESHOLD {
        Verdict::Chaotic
    } else {
        Verdict::Undecided
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies_match_reference_to_two_decimals() {
        for row in &ROWS {
            let h = row.system().unwrap().hamiltonian(&row.initial_state()).unwrap();
            assert!((h - row.reference_energy).abs() < 0.005, "{}: {h}", row.label());
        }
    }

    #[test]
    fn reference_classes_follow_exponent_thresholds() {
        for row in &ROWS {
            assert_eq!(verdict(row.reference_max_exponent()) == Verdict::Regular, row.reference_regular);
        }
    }
}
