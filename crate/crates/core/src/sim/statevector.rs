use num_complex::Complex64;

use super::classical::apply_to_index;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub const MAX_STATEVECTOR_QUBITS: usize = 14;

/// Dense amplitudes over `qubits` qubits, indexed like circuit basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if qubits > MAX_STATEVECTOR_QUBITS {
            return Err(Error::QubitBudget(qubits, MAX_STATEVECTOR_QUBITS));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amps })
    }

    /// Normalized to within `1e-12`; anything else is rejected.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidGate(format!("{len} amplitudes is not a power of two")));
        }
        let qubits = len.trailing_zeros() as usize;
        if qubits > MAX_STATEVECTOR_QUBITS {
            return Err(Error::QubitBudget(qubits, MAX_STATEVECTOR_QUBITS));
        }
        let s = Self { qubits, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidGate("state is not normalized".into()));
        }
        Ok(s)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest componentwise distance to `other`.
    pub fn max_distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn apply_hadamard(&mut self, bit: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = 1usize << bit;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (a, b) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = (a + b) * s;
                self.amps[i | m] = (a - b) * s;
            }
        }
    }
}

/// Applies the circuit's exact gate matrices to `psi`.
pub fn run_statevector(c: &Circuit, psi: &StateVector) -> Result<StateVector> {
    let q = c.qubit_count();
    if q > MAX_STATEVECTOR_QUBITS {
        return Err(Error::QubitBudget(q, MAX_STATEVECTOR_QUBITS));
    }
    if psi.qubits != q {
        return Err(Error::ArityMismatch {
            expected: q,
            found: psi.qubits,
        });
    }
    let mut state = psi.clone();
    for g in c.gates() {
        match g {
            Gate::H { target } => state.apply_hadamard(c.bit_of(*target)),
            _ => {
                // permutation with optional sign: scatter each amplitude
                let mut next = vec![Complex64::new(0.0, 0.0); state.amps.len()];
                for (i, &a) in state.amps.iter().enumerate() {
                    let mut j = i as u32;
                    let neg = apply_to_index(c, g, &mut j)?;
                    next[j as usize] = if neg { -a } else { a };
                }
                state.amps = next;
            }
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitKind;

    #[test]
    fn hadamard_is_an_involution() {
        let c = Circuit::parse("circuit fcps vars 1\nH x1\nH x1\n").unwrap();
        let psi = StateVector::basis(1, 0).unwrap();
        let out = run_statevector(&c, &psi).unwrap();
        assert!(out.max_distance(&psi) < 1e-12);
    }

    #[test]
    fn hadamard_makes_superposition() {
        let c = Circuit::parse("circuit fcps vars 1\nH x1\n").unwrap();
        let out = run_statevector(&c, &StateVector::basis(1, 1).unwrap()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0].re - s).abs() < 1e-12);
        assert!((out.amplitudes()[1].re + s).abs() < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qubit_budget() {
        let c = Circuit::empty(14, CircuitKind::Fcnot).unwrap();
        assert!(matches!(
            StateVector::basis(15, 0),
            Err(Error::QubitBudget(15, 14))
        ));
        let psi = StateVector::basis(14, 0).unwrap();
        assert!(matches!(
            run_statevector(&c, &psi),
            Err(Error::QubitBudget(15, 14))
        ));
    }

    #[test]
    fn rejects_unnormalized() {
        let amps = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(StateVector::from_amplitudes(amps).is_err());
    }
}
