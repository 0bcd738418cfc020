//! The `qlogic` command line, as a library so it can be driven in-process.
//!
//! Exit codes: 0 on success, 1 when a circuit does not compute the given
//! function, 2 on usage, parse or arity errors. Artifacts go to stdout (or
//! `--out`), diagnostics to stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlogic::circuit::{cover_to_circuit, emit, Circuit, CircuitKind, EmitFormat};
use qlogic::hardware::{
    circuit_cost, register_names, select_variant, HardwareCost, HardwareModel,
};
use qlogic::logic::{KMapLayout, ParityCover, TruthTable};
use qlogic::minimize::{
    explain, minimize_exact, minimize_heuristic, GateCount, SearchConfig,
};
use qlogic::sim::{compare_tables, extract_function, Equivalence};
use qlogic::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest arity for which the default search is exact.
pub const DEFAULT_EXACT_ARITY: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "qlogic", version, about = "Quantum combinational logic synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a circuit for a truth table
    Synth(SynthArgs),
    /// Check that a circuit computes a truth table
    Verify(VerifyArgs),
    /// Cost a circuit on a coupling graph
    Cost(CostArgs),
    /// Draw the Karnaugh map of a 3- or 4-input function
    Kmap(KmapArgs),
    /// Show the rewrites from the minterm circuit to the minimized one
    Explain(ExplainArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Fcnot,
    Fcps,
}

impl From<Target> for CircuitKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Fcnot => CircuitKind::Fcnot,
            Target::Fcps => CircuitKind::Fcps,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Emit {
    Native,
    Qasm,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Truth table file (`-` for stdin)
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    target: Target,
    /// One gate per minterm
    #[arg(long, conflicts_with_all = ["exact", "heuristic"])]
    naive: bool,
    /// Minimum-cost cover (default for up to 4 inputs)
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Fast cover search (default above 4 inputs)
    #[arg(long)]
    heuristic: bool,
    /// Coupling graph and weights; picks the cheapest variant on it
    #[arg(long)]
    hardware: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "native")]
    emit: Emit,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// Coupling graph (default: all register qubits coupled)
    #[arg(long)]
    hardware: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct KmapArgs {
    #[arg(long)]
    input: PathBuf,
    /// Overlay the groups of a minimum cover
    #[arg(long)]
    cover: bool,
}

#[derive(Args, Debug)]
struct ExplainArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    target: Target,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs one invocation; `args[0]` is the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Synth(a) => synth(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Cost(a) => cost(a, out),
        Command::Kmap(a) => kmap(a, out),
        Command::Explain(a) => explain_cmd(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_MISMATCH
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_table(path: &Path) -> Result<TruthTable, Failure> {
    TruthTable::parse(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    Circuit::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_hardware(path: &Path) -> Result<HardwareModel, Failure> {
    HardwareModel::parse(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn gate_count_config(kind: CircuitKind) -> SearchConfig {
    SearchConfig::exact().with_cost(Arc::new(GateCount(kind)))
}

fn synth(a: SynthArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let f = read_table(&a.input)?;
    let n = f.arity();
    let kind = CircuitKind::from(a.target);
    let exact = a.exact || (!a.naive && !a.heuristic && n <= DEFAULT_EXACT_ARITY);

    let (cover, circuit, note) = match &a.hardware {
        Some(path) => {
            let hw = read_hardware(path)?;
            let candidates = if a.naive {
                Some(vec![ParityCover::from_minterms(&f)])
            } else if exact {
                None
            } else {
                let cost = HardwareCost::new(hw.clone(), kind, n)?;
                let cfg = SearchConfig::heuristic().with_cost(Arc::new(cost));
                Some(vec![minimize_heuristic(&f, &cfg)])
            };
            let sel = select_variant(&f, kind, &hw, candidates.as_deref())?;
            let note = format!("hardware cost:\n{}", sel.report);
            (sel.cover, sel.circuit, note)
        }
        None => {
            let cfg = gate_count_config(kind);
            let (cover, note) = if a.naive {
                (ParityCover::from_minterms(&f), "search: none (minterms)".to_string())
            } else if exact {
                let m = minimize_exact(&f, &cfg)?;
                let how = if m.optimal {
                    "exact (optimal)"
                } else {
                    "exact (time budget reached, best found)"
                };
                (m.cover, format!("search: {how}"))
            } else {
                (minimize_heuristic(&f, &cfg), "search: heuristic".to_string())
            };
            let circuit = cover_to_circuit(&cover, kind);
            (cover, circuit, note)
        }
    };

    // never emit a circuit that does not compute f
    let got = extract_function(&circuit)?;
    if let Equivalence::Inequivalent { witness } = compare_tables(&got, &f) {
        return Err(Failure::Mismatch(format!(
            "internal error: synthesized circuit differs from the input at x={witness}; nothing written"
        )));
    }

    let format = match a.emit {
        Emit::Native => EmitFormat::Native,
        Emit::Qasm => EmitFormat::Qasm,
    };
    let text = emit(&circuit, format);
    match &a.out {
        Some(p) => fs::write(p, &text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes())?,
    }

    writeln!(err, "{note}")?;
    writeln!(err, "cover: {cover}")?;
    writeln!(
        err,
        "gates: {} ({} after lowering)",
        circuit.gates().len(),
        circuit.decomposed().gates().len()
    )?;
    if a.hardware.is_none() {
        let hw = HardwareModel::complete(&register_names(n, kind))?;
        writeln!(err, "cost (all qubits coupled): {}", circuit_cost(&circuit, &hw)?.total)?;
    }
    writeln!(err, "verified: circuit computes the input table")?;
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let c = read_circuit(&a.circuit)?;
    let f = read_table(&a.input)?;
    if c.arity() != f.arity() {
        return Err(Failure::Usage(format!(
            "circuit has {} inputs but the table has {}",
            c.arity(),
            f.arity()
        )));
    }
    let got = match extract_function(&c) {
        Ok(g) => g,
        Err(e @ (Error::ControlNotRestored(_) | Error::NotDiagonal(_))) => {
            writeln!(out, "NOT EQUIVALENT")?;
            return Err(Failure::Mismatch(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    match compare_tables(&got, &f) {
        Equivalence::Equivalent => {
            writeln!(out, "EQUIVALENT")?;
            Ok(())
        }
        Equivalence::Inequivalent { witness } => {
            writeln!(out, "NOT EQUIVALENT")?;
            writeln!(out, "witness x={witness}")?;
            Err(Failure::Mismatch(format!(
                "circuit gives {} at x={witness}, table gives {}",
                u8::from(got.value(witness.index())),
                u8::from(f.value(witness.index()))
            )))
        }
    }
}

fn cost(a: CostArgs, out: &mut dyn Write) -> Outcome {
    let c = read_circuit(&a.circuit)?;
    let hw = match &a.hardware {
        Some(p) => read_hardware(p)?,
        None => HardwareModel::complete(&register_names(c.arity(), c.kind()))?,
    };
    let report = circuit_cost(&c, &hw)?;
    write!(out, "{report}")?;
    Ok(())
}

fn kmap(a: KmapArgs, out: &mut dyn Write) -> Outcome {
    let f = read_table(&a.input)?;
    let layout = KMapLayout::new(f.arity())?;
    let cover = if a.cover {
        let cfg = SearchConfig::exact().with_parity_cubes(false);
        Some(minimize_exact(&f, &cfg)?.cover)
    } else {
        None
    };
    write!(out, "{}", layout.render(&f, cover.as_ref())?)?;
    Ok(())
}

fn explain_cmd(a: ExplainArgs, out: &mut dyn Write) -> Outcome {
    let f = read_table(&a.input)?;
    let kind = CircuitKind::from(a.target);
    if f.arity() > DEFAULT_EXACT_ARITY {
        return Err(Error::UnsupportedArity(f.arity()).into());
    }
    if f.count_ones() == 0 {
        writeln!(out, "empty circuit; nothing to explain")?;
        return Ok(());
    }
    let naive = ParityCover::from_minterms(&f);
    let min = minimize_exact(&f, &gate_count_config(kind))?.cover;
    let steps = explain(&naive, &min)?;
    let circuit = cover_to_circuit(&min, kind);
    if extract_function(&circuit)? != f {
        return Err(Failure::Mismatch(
            "internal error: minimized circuit differs from the input".into(),
        ));
    }

    writeln!(out, "naive circuit:")?;
    write!(out, "{}", cover_to_circuit(&naive, kind))?;
    writeln!(out)?;
    writeln!(out, "rewrite trace:")?;
    if steps.is_empty() {
        writeln!(out, "  (none; the minterm circuit is already minimal)")?;
    }
    for (i, s) in steps.iter().enumerate() {
        writeln!(out, "  {}. {s}", i + 1)?;
    }
    writeln!(out)?;
    writeln!(out, "minimized circuit:")?;
    write!(out, "{circuit}")?;
    writeln!(out)?;
    writeln!(out, "lowered:")?;
    write!(out, "{}", circuit.decomposed())?;
    Ok(())
}
