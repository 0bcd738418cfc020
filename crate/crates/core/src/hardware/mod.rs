//! Hardware-aware costing.
//!
//! A circuit is lowered to NOT, C-NOT, Toffoli and Hadamard gates and each
//! gate is charged its weight. A multi-qubit gate needs all of its qubits
//! pairwise coupled; every pair at distance `d > 1` is charged `d - 1` swaps
//! to bring the qubits together and as many to put them back.

mod model;

pub use model::{register_names, HardwareModel, Weights};

use std::fmt;
use std::time::Duration;

use crate::circuit::{cover_to_circuit, cube_gates, Circuit, CircuitKind, Gate};
use crate::error::{Error, Result};
use crate::logic::{Cube, ParityCover, TruthTable};
use crate::minimize::{enumerate_covers, minimize_exact, CubeCost, SearchConfig};
use crate::sim::extract_function;

#[derive(Debug, Clone, PartialEq)]
pub struct CostLine {
    pub label: String,
    pub count: usize,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub total: f64,
    /// One line per gate class present, plus `SWAP` when swaps are needed.
    pub breakdown: Vec<CostLine>,
    pub swaps: usize,
    /// Lowered gates whose qubits are not pairwise coupled.
    pub nonadjacent: Vec<String>,
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.breakdown {
            writeln!(f, "{:<8}{:>6}{:>10}", l.label, l.count, l.cost)?;
        }
        writeln!(f, "{:<8}{:>6}{:>10}", "total", "", self.total)?;
        writeln!(f, "swaps: {}", self.swaps)?;
        if !self.nonadjacent.is_empty() {
            writeln!(f, "needs missing couplings: {}", self.nonadjacent.join("; "))?;
        }
        Ok(())
    }
}

/// Cost of `c` after lowering, including swap overhead.
pub fn circuit_cost(c: &Circuit, hw: &HardwareModel) -> Result<CostReport> {
    let w = hw.weights();
    let mut lines: Vec<CostLine> = Vec::new();
    let mut charge = |label: String, cost: f64| match lines.iter_mut().find(|l| l.label == label) {
        Some(l) => {
            l.count += 1;
            l.cost += cost;
        }
        None => lines.push(CostLine {
            label,
            count: 1,
            cost,
        }),
    };
    let mut swaps = 0;
    let mut nonadjacent = Vec::new();
    for g in c.decomposed().gates() {
        match g {
            Gate::Not { .. } => charge("NOT".into(), w.not),
            Gate::H { .. } => charge("H".into(), w.h),
            Gate::Cnot { .. } => charge("CNOT".into(), w.cnot),
            Gate::Toffoli { controls, .. } => {
                charge(format!("TOF{}", controls.len()), w.toffoli(controls.len()))
            }
            // global phase
            Gate::R { .. } => continue,
            Gate::L { .. } => unreachable!("lowered circuit"),
        }
        let idx = g
            .qubits()
            .iter()
            .map(|q| {
                let name = q.to_string();
                hw.index_of(&name).ok_or(Error::UnknownQubit(name))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut extra = 0;
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                let d = hw.distance_idx(a, b);
                if d == usize::MAX {
                    return Err(Error::Disconnected);
                }
                extra += d - 1;
            }
        }
        if extra > 0 {
            swaps += 2 * extra;
            nonadjacent.push(g.to_string());
        }
    }
    if swaps > 0 {
        lines.push(CostLine {
            label: "SWAP".into(),
            count: swaps,
            cost: swaps as f64 * w.swap,
        });
    }
    Ok(CostReport {
        total: lines.iter().fold(0.0, |acc, l| acc + l.cost),
        breakdown: lines,
        swaps,
        nonadjacent,
    })
}

/// Per-cube hardware cost, for driving the minimizer.
#[derive(Debug, Clone)]
pub struct HardwareCost {
    hw: HardwareModel,
    kind: CircuitKind,
    n: usize,
}

impl HardwareCost {
    /// Fails unless the model has every register qubit for `n` inputs.
    pub fn new(hw: HardwareModel, kind: CircuitKind, n: usize) -> Result<Self> {
        for q in register_names(n, kind) {
            if hw.index_of(&q).is_none() {
                return Err(Error::UnknownQubit(q));
            }
        }
        Ok(Self { hw, kind, n })
    }
}

impl CubeCost for HardwareCost {
    fn cube_cost(&self, cube: &Cube) -> f64 {
        let gates = cube_gates(cube, self.kind).expect("well-formed cube");
        let c = Circuit::new(self.n, self.kind, gates).expect("gates within register");
        circuit_cost(&c, &self.hw).expect("register checked").total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub cover: ParityCover,
    pub circuit: Circuit,
    pub report: CostReport,
}

/// Cheapest circuit among `candidates`, or among the exact minimizer's result
/// under this model's cost when `candidates` is `None`. Ties go to the
/// circuit whose native text sorts first.
pub fn select_variant(
    f: &TruthTable,
    kind: CircuitKind,
    hw: &HardwareModel,
    candidates: Option<&[ParityCover]>,
) -> Result<Selection> {
    let owned;
    let candidates = match candidates {
        Some(c) => c,
        None => {
            let cost = HardwareCost::new(hw.clone(), kind, f.arity())?;
            let cfg = SearchConfig::exact().with_cost(std::sync::Arc::new(cost));
            owned = [minimize_exact(f, &cfg)?.cover];
            &owned[..]
        }
    };
    let mut best: Option<(Selection, String)> = None;
    for cov in candidates {
        if cov.arity() != f.arity() || !cov.validate(f)?.is_pass() {
            return Err(Error::InvalidCover);
        }
        let circuit = cover_to_circuit(cov, kind);
        let report = circuit_cost(&circuit, hw)?;
        let text = circuit.to_string();
        let better = match &best {
            None => true,
            Some((b, t)) => {
                report.total < b.report.total - 1e-9
                    || (report.total <= b.report.total + 1e-9 && text < *t)
            }
        };
        if better {
            best = Some((
                Selection {
                    cover: cov.clone(),
                    circuit,
                    report,
                },
                text,
            ));
        }
    }
    let (sel, _) = best.ok_or(Error::NoCandidates)?;
    if extract_function(&sel.circuit)? != *f {
        return Err(Error::InvalidCover);
    }
    Ok(sel)
}

/// Limits for [`enumerate_pareto`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoBudget {
    /// Covers costing up to `minimum + slack` are listed.
    pub slack: f64,
    pub max_results: usize,
    pub time_budget: Option<Duration>,
}

impl Default for ParetoBudget {
    fn default() -> Self {
        Self {
            slack: 6.0,
            max_results: 64,
            time_budget: Some(Duration::from_secs(10)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pareto {
    /// Sorted by cost, then canonical cover order.
    pub covers: Vec<(ParityCover, f64)>,
    /// False if the budget cut the enumeration short.
    pub complete: bool,
}

/// Minimal and near-minimal covers of `f` under the model's cost.
pub fn enumerate_pareto(
    f: &TruthTable,
    kind: CircuitKind,
    hw: &HardwareModel,
    budget: &ParetoBudget,
) -> Result<Pareto> {
    if f.arity() > 4 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let cost = HardwareCost::new(hw.clone(), kind, f.arity())?;
    let cfg = SearchConfig::exact()
        .with_cost(std::sync::Arc::new(cost))
        .with_time_budget(budget.time_budget);
    let best = minimize_exact(f, &cfg)?;
    let e = enumerate_covers(f, &cfg, best.cost + budget.slack.max(0.0), budget.max_results)?;
    Ok(Pareto {
        covers: e.covers,
        complete: e.complete && best.optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_b() -> TruthTable {
        TruthTable::from_hex(3, "36").unwrap()
    }

    fn cov(s: &str) -> ParityCover {
        ParityCover::parse(3, s).unwrap()
    }

    fn two_term() -> ParityCover {
        cov("x2, x1 x3")
    }

    fn parity_form() -> ParityCover {
        cov("x2 ~x3, (x1^x2) x3")
    }

    fn line() -> HardwareModel {
        HardwareModel::path(&register_names(3, CircuitKind::Fcps)).unwrap()
    }

    fn full(kind: CircuitKind) -> HardwareModel {
        HardwareModel::complete(&register_names(3, kind)).unwrap()
    }

    #[test]
    fn swap_accounting_on_a_line() {
        let r_two = circuit_cost(&cover_to_circuit(&two_term(), CircuitKind::Fcps), &line()).unwrap();
        assert_eq!(r_two.swaps, 2);
        assert_eq!(r_two.total, 12.0);
        assert_eq!(r_two.nonadjacent, ["CNOT x1 x3"]);
        let r_parity = circuit_cost(&cover_to_circuit(&parity_form(), CircuitKind::Fcps), &line()).unwrap();
        assert_eq!(r_parity.swaps, 0);
        assert_eq!(r_parity.total, 10.0);
    }

    #[test]
    fn complete_graph_costs() {
        let k = full(CircuitKind::Fcps);
        assert_eq!(circuit_cost(&cover_to_circuit(&two_term(), CircuitKind::Fcps), &k).unwrap().total, 6.0);
        let k = full(CircuitKind::Fcnot);
        assert_eq!(circuit_cost(&cover_to_circuit(&two_term(), CircuitKind::Fcnot), &k).unwrap().total, 4.0);
        assert_eq!(circuit_cost(&cover_to_circuit(&parity_form(), CircuitKind::Fcnot), &k).unwrap().total, 10.0);
        let empty = Circuit::empty(3, CircuitKind::Fcnot).unwrap();
        let r = circuit_cost(&empty, &k).unwrap();
        assert_eq!((r.total, r.swaps), (0.0, 0));
        assert!(r.breakdown.is_empty());
    }

    #[test]
    fn unknown_qubit() {
        let c = cover_to_circuit(&two_term(), CircuitKind::Fcnot);
        assert_eq!(circuit_cost(&c, &line()), Err(Error::UnknownQubit("y".into())));
    }

    #[test]
    fn selection() {
        let both = [two_term(), parity_form()];
        let s = select_variant(&f_b(), CircuitKind::Fcps, &line(), Some(&both)).unwrap();
        assert_eq!(s.cover, parity_form());
        let s = select_variant(&f_b(), CircuitKind::Fcps, &full(CircuitKind::Fcps), Some(&both)).unwrap();
        assert_eq!(s.cover, two_term());
        let one = [parity_form()];
        let s = select_variant(&f_b(), CircuitKind::Fcps, &full(CircuitKind::Fcps), Some(&one)).unwrap();
        assert_eq!(s.cover, parity_form());
        assert_eq!(
            select_variant(&f_b(), CircuitKind::Fcps, &line(), Some(&[])),
            Err(Error::NoCandidates)
        );
        assert_eq!(
            select_variant(&f_b(), CircuitKind::Fcps, &line(), Some(&[cov("x2")])),
            Err(Error::InvalidCover)
        );
    }

    #[test]
    fn selection_by_minimizer() {
        let s = select_variant(&f_b(), CircuitKind::Fcps, &line(), None).unwrap();
        assert_eq!(s.cover, parity_form());
        let s = select_variant(&f_b(), CircuitKind::Fcps, &full(CircuitKind::Fcps), None).unwrap();
        assert_eq!(s.cover, two_term());
    }

    #[test]
    fn pareto_lists() {
        let p = enumerate_pareto(&f_b(), CircuitKind::Fcps, &line(), &ParetoBudget::default()).unwrap();
        assert!(p.complete);
        let pos = |c: &ParityCover| p.covers.iter().position(|(x, _)| x == c).unwrap();
        assert_eq!(pos(&parity_form()), 0);
        assert!(pos(&two_term()) > 0);
        let p = enumerate_pareto(&f_b(), CircuitKind::Fcps, &full(CircuitKind::Fcps), &ParetoBudget::default()).unwrap();
        assert_eq!(p.covers[0], (two_term(), 6.0));
        let zero = TruthTable::constant(3, false).unwrap();
        let p = enumerate_pareto(&zero, CircuitKind::Fcnot, &full(CircuitKind::Fcnot), &ParetoBudget::default()).unwrap();
        assert_eq!(p.covers, vec![(ParityCover::empty(3).unwrap(), 0.0)]);
    }
}
