//! Simulation oracles.
//!
//! Circuits without Hadamards map basis states to (signed) basis states, so
//! they are checked exhaustively on packed indices. Dense state vectors are
//! used only where Hadamards appear.

mod classical;
mod statevector;

pub use classical::{run_classical, run_signed, BasisState, SignedBasisState};
pub use statevector::{run_statevector, StateVector, MAX_STATEVECTOR_QUBITS};

use crate::circuit::{Circuit, CircuitKind};
use crate::error::{Error, Result};
use crate::logic::{Assignment, TruthTable};

const DIAGONAL_TOL: f64 = 1e-9;

/// Runs the circuit on every input (with `y = 0`, or sign `+1`) and reads the
/// function it computes. Fails if any run leaves the control register changed.
pub fn extract_function(c: &Circuit) -> Result<TruthTable> {
    let n = c.arity();
    let classical = c.gates().iter().all(|g| g.is_classical());
    let mut values = Vec::with_capacity(1 << n);
    match (c.kind(), classical) {
        (CircuitKind::Fcnot, true) => {
            for x in Assignment::all(n) {
                let out = run_classical(c, BasisState::new(x, Some(false)))?;
                if out.x != x {
                    return Err(Error::ControlNotRestored(x.to_string()));
                }
                values.push(out.y == Some(true));
            }
        }
        (CircuitKind::Fcps, _) if !c.gates().iter().any(|g| matches!(g, crate::circuit::Gate::H { .. })) => {
            for x in Assignment::all(n) {
                let out = run_signed(c, SignedBasisState::new(x))?;
                if out.x != x {
                    return Err(Error::ControlNotRestored(x.to_string()));
                }
                values.push(out.negative);
            }
        }
        _ => {
            let q = c.qubit_count();
            if q > MAX_STATEVECTOR_QUBITS {
                return Err(Error::QubitBudget(q, MAX_STATEVECTOR_QUBITS));
            }
            let shift = usize::from(c.kind() == CircuitKind::Fcnot);
            for x in Assignment::all(n) {
                let input = (x.index() as usize) << shift;
                let out = run_statevector(c, &StateVector::basis(q, input)?)?;
                let amps = out.amplitudes();
                let value = match c.kind() {
                    CircuitKind::Fcnot => {
                        // expect |x>|f(x)> with amplitude 1
                        let hit = (0..2).find(|&y| (amps[input | y].re - 1.0).abs() < DIAGONAL_TOL);
                        match hit {
                            Some(y) => y == 1,
                            None => return Err(Error::ControlNotRestored(x.to_string())),
                        }
                    }
                    CircuitKind::Fcps => {
                        let a = amps[input];
                        if (a.re.abs() - 1.0).abs() > DIAGONAL_TOL || a.im.abs() > DIAGONAL_TOL {
                            return Err(Error::NotDiagonal(x.to_string()));
                        }
                        a.re < 0.0
                    }
                };
                values.push(value);
            }
        }
    }
    TruthTable::new(n, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// Smallest input on which the circuits disagree.
    Inequivalent { witness: Assignment },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

pub fn equivalent(c1: &Circuit, c2: &Circuit) -> Result<Equivalence> {
    if c1.kind() != c2.kind() || c1.arity() != c2.arity() {
        return Err(Error::CircuitMismatch);
    }
    let (f1, f2) = (extract_function(c1)?, extract_function(c2)?);
    Ok(compare_tables(&f1, &f2))
}

/// Compares two tables of equal arity, reporting the first differing input.
pub fn compare_tables(f1: &TruthTable, f2: &TruthTable) -> Equivalence {
    match Assignment::all(f1.arity()).find(|x| f1.value(x.index()) != f2.value(x.index())) {
        None => Equivalence::Equivalent,
        Some(witness) => Equivalence::Inequivalent { witness },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{cover_to_fcnot, cover_to_fcps};
    use crate::logic::ParityCover;

    fn f_b() -> TruthTable {
        TruthTable::from_hex(3, "36").unwrap()
    }

    #[test]
    fn extracts_naive_circuit() {
        let naive = cover_to_fcnot(&ParityCover::from_minterms(&f_b()));
        assert_eq!(extract_function(&naive).unwrap(), f_b());
        assert_eq!(extract_function(&naive.decomposed()).unwrap(), f_b());
    }

    #[test]
    fn wrong_substitution_differs_only_where_minterm_cancels() {
        let u = Circuit::parse(
            "circuit fcnot vars 3\nL -x1 +x2 ; y\nL +x2 -x3 ; y\nL +x1 -x2 +x3 ; y\n",
        )
        .unwrap();
        let got = extract_function(&u).unwrap();
        // minterms 011, 101, 110 survive; 010 is flipped twice
        assert_eq!(got, TruthTable::from_hex(3, "16").unwrap());
        let naive = cover_to_fcnot(&ParityCover::from_minterms(&f_b()));
        assert_eq!(
            equivalent(&naive, &u).unwrap(),
            Equivalence::Inequivalent {
                witness: Assignment::from_bits(&[0, 1, 0]).unwrap()
            }
        );
    }

    #[test]
    fn empty_circuit_is_constant_zero() {
        let c = Circuit::empty(3, CircuitKind::Fcnot).unwrap();
        assert_eq!(
            extract_function(&c).unwrap(),
            TruthTable::constant(3, false).unwrap()
        );
    }

    #[test]
    fn phase_circuits_through_hadamards() {
        let two_term_fcps = cover_to_fcps(&ParityCover::parse(3, "x2, x1 x3").unwrap());
        assert_eq!(extract_function(&two_term_fcps).unwrap(), f_b());
        assert_eq!(extract_function(&two_term_fcps.decomposed()).unwrap(), f_b());
    }

    #[test]
    fn detects_unrestored_control() {
        let c = Circuit::parse("circuit fcnot vars 2\nCNOT x1 x2\n").unwrap();
        assert!(matches!(
            extract_function(&c),
            Err(Error::ControlNotRestored(_))
        ));
        let h = Circuit::parse("circuit fcps vars 2\nH x1\n").unwrap();
        assert!(matches!(extract_function(&h), Err(Error::NotDiagonal(_))));
    }

    #[test]
    fn mismatched_circuits() {
        let a = Circuit::empty(3, CircuitKind::Fcnot).unwrap();
        let b = Circuit::empty(3, CircuitKind::Fcps).unwrap();
        assert!(equivalent(&a, &b).is_err());
        assert!(equivalent(&a, &a).unwrap().is_equivalent());
    }
}
