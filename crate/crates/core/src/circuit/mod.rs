//! Gate-level circuit representation, construction and text formats.

mod build;
mod gate;
mod text;

use std::fmt;

pub use build::{
    cover_to_circuit, cover_to_fcnot, cover_to_fcps, cube_gates, default_pivot, l_gate_decompose,
    minterm_gate, naive_fcnot, rgate_decompose, rgate_decompose_default,
};
pub use gate::{CircuitKind, Gate, Qubit};
pub use text::{emit, EmitFormat};

use crate::error::{Error, Result};

/// An ordered gate sequence over `x1..xn`, plus `y` for f-C-NOT circuits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    kind: CircuitKind,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, kind: CircuitKind, gates: Vec<Gate>) -> Result<Self> {
        if n == 0 || n > crate::logic::MAX_ARITY {
            return Err(Error::UnsupportedArity(n));
        }
        let c = Self { n, kind, gates };
        for g in &c.gates {
            c.check_gate(g)?;
        }
        Ok(c)
    }

    pub fn empty(n: usize, kind: CircuitKind) -> Result<Self> {
        Self::new(n, kind, Vec::new())
    }

    fn check_gate(&self, g: &Gate) -> Result<()> {
        for q in g.qubits() {
            if !self.has_qubit(q) {
                return Err(Error::UnknownQubit(q.to_string()));
            }
        }
        match g {
            Gate::L { cube, .. } | Gate::R { cube } if cube.arity() != self.n => {
                Err(Error::ArityMismatch {
                    expected: self.n,
                    found: cube.arity(),
                })
            }
            Gate::R { .. } if self.kind == CircuitKind::Fcnot => Err(Error::InvalidGate(
                "R gates belong to phase-shift circuits".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn has_qubit(&self, q: Qubit) -> bool {
        match q {
            Qubit::X(i) => i < self.n,
            Qubit::Y => self.kind == CircuitKind::Fcnot,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CircuitKind {
        self.kind
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        self.check_gate(&g)?;
        self.gates.push(g);
        Ok(())
    }

    /// Register qubits in basis-index order, most significant first.
    pub fn qubits(&self) -> Vec<Qubit> {
        let mut q: Vec<Qubit> = (0..self.n).map(Qubit::X).collect();
        if self.kind == CircuitKind::Fcnot {
            q.push(Qubit::Y);
        }
        q
    }

    pub fn qubit_count(&self) -> usize {
        self.n + usize::from(self.kind == CircuitKind::Fcnot)
    }

    /// Bit position of a qubit in the basis index (x1 most significant, `y`
    /// least significant when present).
    pub fn bit_of(&self, q: Qubit) -> usize {
        let offset = usize::from(self.kind == CircuitKind::Fcnot);
        match q {
            Qubit::X(i) => offset + self.n - 1 - i,
            Qubit::Y => 0,
        }
    }

    /// Same circuit with L and R gates lowered to NOT, C-NOT, Toffoli and
    /// Hadamard gates. An R gate on the empty cube (a global phase) is kept.
    pub fn decomposed(&self) -> Circuit {
        let mut gates = Vec::new();
        for g in &self.gates {
            match g {
                Gate::L { cube, target } => {
                    gates.extend(l_gate_decompose(cube, *target).expect("validated gate"))
                }
                Gate::R { cube } => {
                    gates.extend(rgate_decompose_default(cube).expect("validated gate"))
                }
                other => gates.push(other.clone()),
            }
        }
        Circuit {
            n: self.n,
            kind: self.kind,
            gates,
        }
    }

    /// Parses the native text format.
    pub fn parse(text: &str) -> Result<Self> {
        text::parse(text)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit(self, EmitFormat::Native))
    }
}
