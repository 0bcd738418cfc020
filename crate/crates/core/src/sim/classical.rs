use crate::circuit::{Circuit, CircuitKind, Gate};
use crate::error::{Error, Result};
use crate::logic::Assignment;

/// Computational basis state of a circuit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub x: Assignment,
    /// Function register; present for f-C-NOT circuits only.
    pub y: Option<bool>,
}

impl BasisState {
    pub fn new(x: Assignment, y: Option<bool>) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBasisState {
    pub x: Assignment,
    pub negative: bool,
}

impl SignedBasisState {
    pub fn new(x: Assignment) -> Self {
        Self { x, negative: false }
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

fn check_width(c: &Circuit, x: Assignment, has_y: bool) -> Result<()> {
    if x.arity() != c.arity() {
        return Err(Error::ArityMismatch {
            expected: c.arity(),
            found: x.arity(),
        });
    }
    if has_y != (c.kind() == CircuitKind::Fcnot) {
        return Err(Error::CircuitMismatch);
    }
    Ok(())
}

/// Applies one basis-preserving gate to a packed register index; returns
/// whether the gate contributed a phase of -1.
#[inline]
pub(crate) fn apply_to_index(c: &Circuit, g: &Gate, index: &mut u32) -> Result<bool> {
    let offset = usize::from(c.kind() == CircuitKind::Fcnot);
    let bit = |q| 1u32 << c.bit_of(q);
    match g {
        Gate::Not { target } => *index ^= bit(*target),
        Gate::Cnot { control, target } => {
            if *index & bit(*control) != 0 {
                *index ^= bit(*target);
            }
        }
        Gate::Toffoli { controls, target } => {
            if controls.iter().all(|&q| *index & bit(q) != 0) {
                *index ^= bit(*target);
            }
        }
        Gate::L { cube, target } => {
            if cube.matches_index(*index >> offset) {
                *index ^= bit(*target);
            }
        }
        Gate::R { cube } => return Ok(cube.matches_index(*index >> offset)),
        Gate::H { .. } => return Err(Error::NonClassicalGate(g.to_string())),
    }
    Ok(false)
}

/// Runs an f-C-NOT circuit on a basis state, gates applied left to right.
pub fn run_classical(c: &Circuit, s: BasisState) -> Result<BasisState> {
    check_width(c, s.x, s.y.is_some())?;
    let mut index = s.x.index() << 1 | s.y.unwrap_or(false) as u32;
    for g in c.gates() {
        if !g.is_classical() {
            return Err(Error::NonClassicalGate(g.to_string()));
        }
        apply_to_index(c, g, &mut index)?;
    }
    Ok(BasisState {
        x: Assignment::new(c.arity(), index >> 1)?,
        y: Some(index & 1 == 1),
    })
}

/// Runs a phase-shift circuit (R gates plus basis permutations) on a signed
/// basis state.
pub fn run_signed(c: &Circuit, s: SignedBasisState) -> Result<SignedBasisState> {
    check_width(c, s.x, false)?;
    let mut index = s.x.index();
    let mut negative = s.negative;
    for g in c.gates() {
        negative ^= apply_to_index(c, g, &mut index)?;
    }
    Ok(SignedBasisState {
        x: Assignment::new(c.arity(), index)?,
        negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{cover_to_fcnot, cover_to_fcps};
    use crate::logic::{ParityCover, TruthTable};

    fn x(bits: &[u8]) -> Assignment {
        Assignment::from_bits(bits).unwrap()
    }

    fn cover(s: &str) -> ParityCover {
        ParityCover::parse(3, s).unwrap()
    }

    #[test]
    fn fcnot_double_flip() {
        let two_term_fcnot = cover_to_fcnot(&cover("x2, x1 x3"));
        let out = run_classical(&two_term_fcnot, BasisState::new(x(&[0, 1, 0]), Some(false))).unwrap();
        assert_eq!(out.y, Some(true));
        let out = run_classical(&two_term_fcnot, BasisState::new(x(&[1, 1, 1]), Some(false))).unwrap();
        assert_eq!(out, BasisState::new(x(&[1, 1, 1]), Some(false)));
    }

    #[test]
    fn naive_circuit_keeps_y_on_zero_row() {
        let f_b = TruthTable::from_hex(3, "36").unwrap();
        let naive = cover_to_fcnot(&ParityCover::from_minterms(&f_b));
        let out = run_classical(&naive, BasisState::new(x(&[0, 0, 0]), Some(true))).unwrap();
        assert_eq!(out.y, Some(true));
    }

    #[test]
    fn signed_paths() {
        let two_term_fcps = cover_to_fcps(&cover("x2, x1 x3"));
        let out = run_signed(&two_term_fcps, SignedBasisState::new(x(&[1, 0, 1]))).unwrap();
        assert_eq!(out.sign(), -1);
        let out = run_signed(&two_term_fcps, SignedBasisState::new(x(&[0, 0, 0]))).unwrap();
        assert_eq!(out.sign(), 1);
        let parity_fcps = cover_to_fcps(&cover("x2 ~x3, (x1^x2) x3"));
        let out = run_signed(&parity_fcps, SignedBasisState::new(x(&[1, 1, 1]))).unwrap();
        assert_eq!(out, SignedBasisState::new(x(&[1, 1, 1])));
    }

    #[test]
    fn rejects_wrong_paths() {
        let h = Circuit::parse("circuit fcnot vars 1\nH x1\n").unwrap();
        assert!(matches!(
            run_classical(&h, BasisState::new(x(&[0]), Some(false))),
            Err(Error::NonClassicalGate(_))
        ));
        let h = Circuit::parse("circuit fcps vars 1\nH x1\n").unwrap();
        assert!(run_signed(&h, SignedBasisState::new(x(&[0]))).is_err());
        let c = Circuit::parse("circuit fcnot vars 1\nCNOT x1 y\n").unwrap();
        assert!(run_classical(&c, BasisState::new(x(&[0]), None)).is_err());
    }
}
