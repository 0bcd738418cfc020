use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Cube, Literal};

/// A control-register qubit `x<i>` (stored 0-based) or the function register `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    X(usize),
    Y,
}

impl Qubit {
    pub fn parse(name: &str) -> Option<Qubit> {
        if name == "y" {
            return Some(Qubit::Y);
        }
        let i: usize = name.strip_prefix('x')?.parse().ok()?;
        (i >= 1).then(|| Qubit::X(i - 1))
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qubit::X(i) => write!(f, "x{}", i + 1),
            Qubit::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircuitKind {
    /// `|x>|y> -> |x>|y ^ f(x)>`
    Fcnot,
    /// `|x> -> (-1)^f(x) |x>`
    Fcps,
}

impl fmt::Display for CircuitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitKind::Fcnot => "fcnot",
            CircuitKind::Fcps => "fcps",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Not { target: Qubit },
    Cnot { control: Qubit, target: Qubit },
    /// Generalized Toffoli with at least two positive controls.
    Toffoli { controls: Vec<Qubit>, target: Qubit },
    /// Mixed-polarity controlled NOT: flips `target` when `cube` holds.
    L { cube: Cube, target: Qubit },
    /// Phase flip when `cube` holds.
    R { cube: Cube },
    H { target: Qubit },
}

impl Gate {
    /// Builds a positive-control NOT, normalizing zero controls to `Not` and
    /// one control to `Cnot`.
    pub fn toffoli(mut controls: Vec<Qubit>, target: Qubit) -> Result<Gate> {
        controls.sort_unstable();
        if controls.windows(2).any(|w| w[0] == w[1]) || controls.contains(&target) {
            return Err(Error::InvalidGate(format!(
                "controls and target of a Toffoli must be distinct (target {target})"
            )));
        }
        Ok(match controls.len() {
            0 => Gate::Not { target },
            1 => Gate::Cnot {
                control: controls[0],
                target,
            },
            _ => Gate::Toffoli { controls, target },
        })
    }

    pub fn l(cube: Cube, target: Qubit) -> Result<Gate> {
        if cube.parity().is_some() {
            return Err(Error::InvalidGate(format!(
                "L gate condition `{cube}` has a parity factor"
            )));
        }
        if let Qubit::X(t) = target {
            if t < cube.arity() && cube.literal(t) != Literal::Absent {
                return Err(Error::InvalidGate(format!(
                    "L gate target {target} appears in its condition `{cube}`"
                )));
            }
        }
        Ok(Gate::L { cube, target })
    }

    pub fn r(cube: Cube) -> Result<Gate> {
        if cube.parity().is_some() {
            return Err(Error::InvalidGate(format!(
                "R gate condition `{cube}` has a parity factor"
            )));
        }
        Ok(Gate::R { cube })
    }

    /// Every qubit the gate touches.
    pub fn qubits(&self) -> Vec<Qubit> {
        match self {
            Gate::Not { target } | Gate::H { target } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Toffoli { controls, target } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
            Gate::L { cube, target } => {
                let mut q: Vec<Qubit> = cube.literal_vars().map(|(v, _)| Qubit::X(v)).collect();
                q.push(*target);
                q
            }
            Gate::R { cube } => cube.literal_vars().map(|(v, _)| Qubit::X(v)).collect(),
        }
    }

    /// True for gates that map basis states to basis states.
    pub fn is_classical(&self) -> bool {
        !matches!(self, Gate::H { .. } | Gate::R { .. })
    }
}

pub(crate) fn write_literals(f: &mut impl fmt::Write, cube: &Cube) -> fmt::Result {
    for (v, lit) in cube.literal_vars() {
        let sign = if lit == Literal::Positive { '+' } else { '-' };
        write!(f, " {sign}x{}", v + 1)?;
    }
    Ok(())
}

/// Native text form of a single gate.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Not { target } => write!(f, "NOT {target}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Toffoli { controls, target } => {
                f.write_str("TOF")?;
                for c in controls {
                    write!(f, " {c}")?;
                }
                write!(f, " ; {target}")
            }
            Gate::L { cube, target } => {
                f.write_str("L")?;
                write_literals(f, cube)?;
                write!(f, " ; {target}")
            }
            Gate::R { cube } => {
                f.write_str("R")?;
                write_literals(f, cube)
            }
            Gate::H { target } => write!(f, "H {target}"),
        }
    }
}
