//! Gate constructions from cubes and covers.

use super::gate::{CircuitKind, Gate, Qubit};
use super::Circuit;
use crate::error::{Error, Result};
use crate::logic::{Cube, Literal, ParityCover, Phase};

fn negated_vars(cube: &Cube) -> Vec<usize> {
    cube.literal_vars()
        .filter(|(_, l)| *l == Literal::Negative)
        .map(|(v, _)| v)
        .collect()
}

fn not_layer(vars: &[usize]) -> impl Iterator<Item = Gate> + '_ {
    vars.iter().map(|&v| Gate::Not {
        target: Qubit::X(v),
    })
}

/// NOT sandwich around a Toffoli on the cube's present variables.
///
/// Absent variables are left untouched; an empty cube is a bare NOT on the
/// target.
pub fn l_gate_decompose(cube: &Cube, target: Qubit) -> Result<Vec<Gate>> {
    // validates the cube and target
    Gate::l(*cube, target)?;
    let negs = negated_vars(cube);
    let controls = cube.literal_vars().map(|(v, _)| Qubit::X(v)).collect();
    let mut out: Vec<Gate> = not_layer(&negs).collect();
    out.push(Gate::toffoli(controls, target)?);
    out.extend(not_layer(&negs));
    Ok(out)
}

/// Minterm gate: NOTs on the zero bits around an all-control Toffoli.
pub fn minterm_gate(cube: &Cube, target: Qubit) -> Result<Vec<Gate>> {
    if !cube.is_minterm() {
        return Err(Error::NotAMinterm(cube.to_string()));
    }
    l_gate_decompose(cube, target)
}

/// `H(pivot) . L(cube - pivot -> pivot) . H(pivot)`.
///
/// The pivot must be a positive literal of the cube.
pub fn rgate_decompose(cube: &Cube, pivot: Qubit) -> Result<Vec<Gate>> {
    Gate::r(*cube)?;
    let bad = || Error::InvalidPivot {
        cube: cube.to_string(),
        pivot: pivot.to_string(),
    };
    let v = match pivot {
        Qubit::X(v) if v < cube.arity() => v,
        _ => return Err(bad()),
    };
    if cube.literal(v) != Literal::Positive {
        return Err(bad());
    }
    let inner = cube.with_literal(v, Literal::Absent);
    let mut out = vec![Gate::H { target: pivot }];
    out.extend(l_gate_decompose(&inner, pivot)?);
    out.push(Gate::H { target: pivot });
    Ok(out)
}

/// The highest-indexed positive variable, the default R pivot.
pub fn default_pivot(cube: &Cube) -> Option<Qubit> {
    cube.literal_vars()
        .filter(|(_, l)| *l == Literal::Positive)
        .map(|(v, _)| Qubit::X(v))
        .last()
}

/// Decomposes any R gate into NOT/Toffoli/Hadamard gates.
///
/// Cubes without a positive literal have their highest negative variable
/// NOT-conjugated into a positive pivot. The empty cube is a global phase and
/// is returned unchanged.
pub fn rgate_decompose_default(cube: &Cube) -> Result<Vec<Gate>> {
    if let Some(p) = default_pivot(cube) {
        return rgate_decompose(cube, p);
    }
    let Some((v, _)) = cube.literal_vars().last() else {
        return Ok(vec![Gate::r(*cube)?]);
    };
    let flipped = cube.with_literal(v, Literal::Positive);
    let pivot = Qubit::X(v);
    let mut out = vec![Gate::Not { target: pivot }];
    out.extend(rgate_decompose(&flipped, pivot)?);
    out.push(Gate::Not { target: pivot });
    Ok(out)
}

/// Gate group realizing one cover term.
///
/// A parity factor `(x_a ^ x_b)` becomes `CNOT(a -> b) . G . CNOT(a -> b)`
/// where `G` conditions on `x_b` positive (negative for the negated factor).
pub fn cube_gates(cube: &Cube, kind: CircuitKind) -> Result<Vec<Gate>> {
    let leaf = |c: Cube| match kind {
        CircuitKind::Fcnot => Gate::l(c, Qubit::Y),
        CircuitKind::Fcps => Gate::r(c),
    };
    match cube.parity() {
        None => Ok(vec![leaf(*cube)?]),
        Some(p) => {
            let (a, b) = p.vars();
            let lit = match p.phase() {
                Phase::Odd => Literal::Positive,
                Phase::Even => Literal::Negative,
            };
            let inner = cube.without_parity().with_literal(b, lit);
            let cnot = Gate::Cnot {
                control: Qubit::X(a),
                target: Qubit::X(b),
            };
            Ok(vec![cnot.clone(), leaf(inner)?, cnot])
        }
    }
}

fn cover_circuit(cov: &ParityCover, kind: CircuitKind) -> Circuit {
    let mut gates = Vec::new();
    for c in cov.cubes() {
        gates.extend(cube_gates(c, kind).expect("cover cubes are well formed"));
    }
    Circuit::new(cov.arity(), kind, gates).expect("cover gates stay within the register")
}

/// f-controlled-NOT circuit: one L gate (or C-NOT sandwich) per cube, in
/// canonical cube order.
pub fn cover_to_fcnot(cov: &ParityCover) -> Circuit {
    cover_circuit(cov, CircuitKind::Fcnot)
}

/// f-controlled-phase-shift circuit: as [`cover_to_fcnot`] with R gates.
pub fn cover_to_fcps(cov: &ParityCover) -> Circuit {
    cover_circuit(cov, CircuitKind::Fcps)
}

pub fn cover_to_circuit(cov: &ParityCover, kind: CircuitKind) -> Circuit {
    cover_circuit(cov, kind)
}

/// Product of the minterm gates of `f`, one per satisfying input.
pub fn naive_fcnot(f: &crate::logic::TruthTable) -> Circuit {
    cover_to_fcnot(&ParityCover::from_minterms(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(s: &str) -> Cube {
        Cube::parse(3, s).unwrap()
    }

    fn text(gates: &[Gate]) -> Vec<String> {
        gates.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn minterm_gate_sandwich() {
        let g = minterm_gate(&cube("~x1 x2 ~x3"), Qubit::Y).unwrap();
        assert_eq!(
            text(&g),
            ["NOT x1", "NOT x3", "TOF x1 x2 x3 ; y", "NOT x1", "NOT x3"]
        );
        let g = minterm_gate(&cube("x1 x2 x3"), Qubit::Y).unwrap();
        assert_eq!(text(&g), ["TOF x1 x2 x3 ; y"]);
        let g = minterm_gate(&Cube::parse(1, "~x1").unwrap(), Qubit::Y).unwrap();
        assert_eq!(text(&g), ["NOT x1", "CNOT x1 y", "NOT x1"]);
        assert!(minterm_gate(&cube("x1 x2"), Qubit::Y).is_err());
    }

    #[test]
    fn l_gate_forms() {
        assert_eq!(
            text(&l_gate_decompose(&cube("x2 ~x3"), Qubit::Y).unwrap()),
            ["NOT x3", "TOF x2 x3 ; y", "NOT x3"]
        );
        assert_eq!(
            text(&l_gate_decompose(&cube("x2"), Qubit::Y).unwrap()),
            ["CNOT x2 y"]
        );
        assert_eq!(
            text(&l_gate_decompose(&Cube::universe(3), Qubit::Y).unwrap()),
            ["NOT y"]
        );
    }

    #[test]
    fn fcnot_from_covers() {
        let parity_fcnot = ParityCover::parse(3, "x2 ~x3, (x1^x2) x3").unwrap();
        assert_eq!(
            cover_to_fcnot(&parity_fcnot).to_string(),
            "circuit fcnot vars 3\nL +x2 -x3 ; y\nCNOT x1 x2\nL +x2 +x3 ; y\nCNOT x1 x2\n"
        );
        let two_term_fcnot = ParityCover::parse(3, "x2, x1 x3").unwrap();
        assert_eq!(
            cover_to_fcnot(&two_term_fcnot).to_string(),
            "circuit fcnot vars 3\nL +x2 ; y\nL +x1 +x3 ; y\n"
        );
        assert!(cover_to_fcnot(&ParityCover::empty(3).unwrap()).gates().is_empty());
    }

    #[test]
    fn even_parity_uses_negative_inner_literal() {
        let c = ParityCover::parse(2, "(x1^~x2)").unwrap();
        assert_eq!(
            text(cover_to_fcnot(&c).gates()),
            ["CNOT x1 x2", "L -x2 ; y", "CNOT x1 x2"]
        );
    }

    #[test]
    fn fcps_from_covers() {
        let parity_fcps = ParityCover::parse(3, "x2 ~x3, (x1^x2) x3").unwrap();
        assert_eq!(
            text(cover_to_fcps(&parity_fcps).gates()),
            ["R +x2 -x3", "CNOT x1 x2", "R +x2 +x3", "CNOT x1 x2"]
        );
        let two_term_fcps = ParityCover::parse(3, "x2, x1 x3").unwrap();
        assert_eq!(text(cover_to_fcps(&two_term_fcps).gates()), ["R +x2", "R +x1 +x3"]);
        let f_b = crate::logic::TruthTable::from_hex(3, "36").unwrap();
        let naive = cover_to_fcps(&ParityCover::from_minterms(&f_b));
        assert_eq!(naive.gates().len(), 4);
        assert!(naive.gates().iter().all(|g| matches!(g, Gate::R { .. })));
    }

    #[test]
    fn rgate_pivots() {
        assert_eq!(
            text(&rgate_decompose(&cube("x1 x3"), Qubit::X(2)).unwrap()),
            ["H x3", "CNOT x1 x3", "H x3"]
        );
        assert_eq!(
            text(&rgate_decompose(&cube("x2"), Qubit::X(1)).unwrap()),
            ["H x2", "NOT x2", "H x2"]
        );
        assert!(rgate_decompose(&cube("x1 ~x3"), Qubit::X(2)).is_err());
        assert!(rgate_decompose(&cube("x1"), Qubit::X(2)).is_err());
        assert!(rgate_decompose(&cube("x1"), Qubit::Y).is_err());
        assert_eq!(default_pivot(&cube("x1 x2 ~x3")), Some(Qubit::X(1)));
        assert_eq!(
            text(&rgate_decompose_default(&cube("~x1")).unwrap()),
            ["NOT x1", "H x1", "NOT x1", "H x1", "NOT x1"]
        );
    }
}
