use std::fmt::Write;

use super::gate::{CircuitKind, Gate, Qubit};
use super::Circuit;
use crate::error::{parse_err, Error, Result};
use crate::logic::{Cube, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    /// One gate per line, L and R gates kept intact.
    Native,
    /// OpenQASM 3 with L/R gates lowered and generalized Toffolis as
    /// multi-controlled X.
    Qasm,
}

pub fn emit(c: &Circuit, format: EmitFormat) -> String {
    match format {
        EmitFormat::Native => emit_native(c),
        EmitFormat::Qasm => emit_qasm(c),
    }
}

fn emit_native(c: &Circuit) -> String {
    let mut out = format!("circuit {} vars {}\n", c.kind(), c.arity());
    for g in c.gates() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

fn emit_qasm(c: &Circuit) -> String {
    let low = c.decomposed();
    let idx = |q: Qubit| match q {
        Qubit::X(i) => i,
        Qubit::Y => c.arity(),
    };
    let q = |q: Qubit| format!("q[{}]", idx(q));
    let mut out = String::from("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    writeln!(out, "qubit[{}] q;", c.qubit_count()).unwrap();
    match c.kind() {
        CircuitKind::Fcnot => writeln!(
            out,
            "// q[0]..q[{}] = x1..x{}, q[{}] = y",
            c.arity() - 1,
            c.arity(),
            c.arity()
        ),
        CircuitKind::Fcps => writeln!(out, "// q[0]..q[{}] = x1..x{}", c.arity() - 1, c.arity()),
    }
    .unwrap();
    for g in low.gates() {
        match g {
            Gate::Not { target } => writeln!(out, "x {};", q(*target)),
            Gate::H { target } => writeln!(out, "h {};", q(*target)),
            Gate::Cnot { control, target } => {
                writeln!(out, "cx {}, {};", q(*control), q(*target))
            }
            Gate::Toffoli { controls, target } if controls.len() == 2 => writeln!(
                out,
                "ccx {}, {}, {};",
                q(controls[0]),
                q(controls[1]),
                q(*target)
            ),
            Gate::Toffoli { controls, target } => {
                let args: Vec<String> = controls.iter().map(|&c| q(c)).collect();
                writeln!(
                    out,
                    "ctrl({}) @ x {}, {};",
                    controls.len(),
                    args.join(", "),
                    q(*target)
                )
            }
            // only the empty-condition R survives lowering: a global phase of -1
            Gate::R { .. } => writeln!(out, "gphase(pi);"),
            Gate::L { .. } => unreachable!("L gates are lowered"),
        }
        .unwrap();
    }
    out
}

fn qubit(lno: usize, name: &str) -> Result<Qubit> {
    Qubit::parse(name).ok_or_else(|| parse_err(lno, format!("bad qubit `{name}`")))
}

fn literals(lno: usize, n: usize, toks: &[&str]) -> Result<Cube> {
    let mut cube = Cube::universe(n);
    for t in toks {
        let (lit, name) = if let Some(r) = t.strip_prefix('+') {
            (Literal::Positive, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (Literal::Negative, r)
        } else {
            return Err(parse_err(lno, format!("literal `{t}` needs a + or - sign")));
        };
        match qubit(lno, name)? {
            Qubit::X(v) if v < n => {
                if cube.literal(v) != Literal::Absent {
                    return Err(parse_err(lno, format!("`{name}` repeated")));
                }
                cube = cube.with_literal(v, lit);
            }
            _ => return Err(parse_err(lno, format!("`{name}` is not a control qubit"))),
        }
    }
    Ok(cube)
}

pub(super) fn parse(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lno, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `circuit` header"))?;
    let (kind, n) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["circuit", kind, "vars", n] => {
            let kind = match kind {
                "fcnot" => CircuitKind::Fcnot,
                "fcps" => CircuitKind::Fcps,
                _ => return Err(parse_err(lno, format!("unknown circuit kind `{kind}`"))),
            };
            let n: usize = n
                .parse()
                .map_err(|_| parse_err(lno, format!("bad arity `{n}`")))?;
            (kind, n)
        }
        _ => return Err(parse_err(lno, "expected `circuit fcnot|fcps vars <n>`")),
    };
    let mut circuit = Circuit::empty(n, kind).map_err(|e| parse_err(lno, e.to_string()))?;

    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let split_target = |rest: &[&str]| -> Result<(Vec<String>, Qubit)> {
            match rest {
                [head @ .., ";", t] => Ok((head.iter().map(|s| s.to_string()).collect(), qubit(lno, t)?)),
                _ => Err(parse_err(lno, "expected `; <target>`")),
            }
        };
        let gate = match toks[0] {
            "NOT" | "H" => match toks[1..] {
                [t] => {
                    let target = qubit(lno, t)?;
                    if toks[0] == "NOT" {
                        Gate::Not { target }
                    } else {
                        Gate::H { target }
                    }
                }
                _ => return Err(parse_err(lno, format!("`{}` takes one qubit", toks[0]))),
            },
            "CNOT" => match toks[1..] {
                [c, t] => Gate::Cnot {
                    control: qubit(lno, c)?,
                    target: qubit(lno, t)?,
                },
                _ => return Err(parse_err(lno, "`CNOT` takes control and target")),
            },
            "TOF" => {
                let (controls, target) = split_target(&toks[1..])?;
                let controls = controls
                    .iter()
                    .map(|c| qubit(lno, c))
                    .collect::<Result<Vec<_>>>()?;
                if controls.len() < 2 {
                    return Err(parse_err(lno, "`TOF` needs at least two controls"));
                }
                Gate::toffoli(controls, target).map_err(|e| parse_err(lno, e.to_string()))?
            }
            "L" => {
                let (lits, target) = split_target(&toks[1..])?;
                let lits: Vec<&str> = lits.iter().map(String::as_str).collect();
                let cube = literals(lno, n, &lits)?;
                Gate::l(cube, target).map_err(|e| parse_err(lno, e.to_string()))?
            }
            "R" => Gate::r(literals(lno, n, &toks[1..])?)
                .map_err(|e| parse_err(lno, e.to_string()))?,
            other => return Err(parse_err(lno, format!("unknown gate `{other}`"))),
        };
        if let Gate::Cnot { control, target } = &gate {
            if control == target {
                return Err(parse_err(lno, "CNOT control equals target"));
            }
        }
        circuit.push(gate).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => parse_err(lno, other.to_string()),
        })?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ParityCover;

    #[test]
    fn native_round_trip() {
        let text = "circuit fcnot vars 3\nNOT x1\nCNOT x1 x2\nTOF x1 x2 ; y\nL +x2 -x3 ; y\nL ; y\nH x3\n";
        let c = Circuit::parse(text).unwrap();
        assert_eq!(emit(&c, EmitFormat::Native), text);
        let text = "circuit fcps vars 3\nR +x1 +x3\nR\n";
        assert_eq!(Circuit::parse(text).unwrap().to_string(), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = Circuit::parse("# U'\ncircuit fcnot vars 2\n\nCNOT x1 y # first\nCNOT x2 y\n")
            .unwrap();
        assert_eq!(c.gates().len(), 2);
    }

    #[test]
    fn empty_circuit_has_header_only() {
        let c = Circuit::empty(3, CircuitKind::Fcnot).unwrap();
        assert_eq!(c.to_string(), "circuit fcnot vars 3\n");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "circuit fcnot vars 3\nL +x4 ; y\n",
            "circuit fcps vars 3\nCNOT x1 y\n",
            "circuit fcnot vars 3\nR +x1\n",
            "circuit fcnot vars 3\nL +x1 ; x1\n",
            "circuit fcnot vars 3\nTOF x1 ; y\n",
            "circuit fcnot vars 3\nFOO x1\n",
            "circuit fcnot vars 3\nCNOT x1 x1\n",
            "circuit fcnot vars 3\nL x1 ; y\n",
        ] {
            assert!(Circuit::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn qasm_lowers_gates() {
        let cov = ParityCover::parse(3, "x2, x1 x3").unwrap();
        let c = super::super::cover_to_fcps(&cov);
        let q = emit(&c, EmitFormat::Qasm);
        assert!(q.starts_with("OPENQASM 3.0;"));
        let body: Vec<&str> = q.lines().skip(4).collect();
        assert_eq!(
            body,
            ["h q[1];", "x q[1];", "h q[1];", "h q[2];", "cx q[0], q[2];", "h q[2];"]
        );

        let c = Circuit::parse("circuit fcnot vars 3\nL -x1 +x2 +x3 ; y\n").unwrap();
        let q = emit(&c, EmitFormat::Qasm);
        assert!(q.contains("ctrl(3) @ x q[0], q[1], q[2], q[3];"), "{q}");
    }
}
