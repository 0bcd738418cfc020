//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain text (truth table, hardware file) and returns
//! text, so the page needs no serialization layer. The same functions are
//! available natively under [`demo`] for testing.

use wasm_bindgen::prelude::*;

pub mod demo {
    use std::sync::Arc;

    use qlogic::circuit::{cover_to_circuit, emit, CircuitKind, EmitFormat};
    use qlogic::hardware::{
        circuit_cost, enumerate_pareto, register_names, select_variant, HardwareModel,
        ParetoBudget,
    };
    use qlogic::logic::{KMapLayout, ParityCover, TruthTable};
    use qlogic::minimize::{minimize_exact, minimize_heuristic, GateCount, SearchConfig};
    use qlogic::sim::extract_function;

    /// Largest arity the page minimizes exactly.
    pub const EXACT_ARITY: usize = 4;
    /// Largest arity the page accepts at all; keeps the tab responsive.
    pub const MAX_ARITY: usize = 10;

    fn parse_table(text: &str) -> Result<TruthTable, String> {
        let f = TruthTable::parse(text).map_err(|e| format!("truth table: {e}"))?;
        if f.arity() > MAX_ARITY {
            return Err(format!("at most {MAX_ARITY} inputs in the browser"));
        }
        Ok(f)
    }

    fn parse_kind(target: &str) -> Result<CircuitKind, String> {
        match target {
            "fcnot" => Ok(CircuitKind::Fcnot),
            "fcps" => Ok(CircuitKind::Fcps),
            other => Err(format!("unknown target `{other}`")),
        }
    }

    fn hardware(text: &str, n: usize, kind: CircuitKind) -> Result<HardwareModel, String> {
        if text.trim().is_empty() {
            HardwareModel::complete(&register_names(n, kind)).map_err(|e| e.to_string())
        } else {
            HardwareModel::parse(text).map_err(|e| format!("hardware: {e}"))
        }
    }

    /// ASCII Karnaugh map, optionally with the groups of a minimum cover.
    pub fn kmap(table: &str, with_cover: bool) -> Result<String, String> {
        let f = parse_table(table)?;
        let layout = KMapLayout::new(f.arity()).map_err(|_| "K-maps need 3 or 4 inputs".to_string())?;
        let cover = if with_cover {
            let cfg = SearchConfig::exact().with_parity_cubes(false);
            Some(minimize_exact(&f, &cfg).map_err(|e| e.to_string())?.cover)
        } else {
            None
        };
        layout.render(&f, cover.as_ref()).map_err(|e| e.to_string())
    }

    /// Circuit text followed by a short summary. `mode` is `auto`, `naive`,
    /// `exact` or `heuristic`; `format` is `native` or `qasm`.
    pub fn synthesize(table: &str, target: &str, mode: &str, format: &str) -> Result<String, String> {
        let f = parse_table(table)?;
        let kind = parse_kind(target)?;
        let format = match format {
            "native" => EmitFormat::Native,
            "qasm" => EmitFormat::Qasm,
            other => return Err(format!("unknown format `{other}`")),
        };
        let cfg = SearchConfig::exact().with_cost(Arc::new(GateCount(kind)));
        let exact = match mode {
            "auto" => f.arity() <= EXACT_ARITY,
            "exact" if f.arity() <= EXACT_ARITY => true,
            "exact" => return Err(format!("exact search is limited to {EXACT_ARITY} inputs here")),
            "naive" | "heuristic" => false,
            other => return Err(format!("unknown mode `{other}`")),
        };
        let cover = if mode == "naive" {
            ParityCover::from_minterms(&f)
        } else if exact {
            minimize_exact(&f, &cfg).map_err(|e| e.to_string())?.cover
        } else {
            minimize_heuristic(&f, &cfg)
        };
        let circuit = cover_to_circuit(&cover, kind);
        if extract_function(&circuit).map_err(|e| e.to_string())? != f {
            return Err("internal error: circuit failed verification".into());
        }
        Ok(format!(
            "{}\n# cover: {cover}\n# {} gates, {} after lowering; verified\n",
            emit(&circuit, format).trim_end(),
            circuit.gates().len(),
            circuit.decomposed().gates().len(),
        ))
    }

    /// Near-minimal covers ranked by cost on the given coupling graph (all
    /// qubits coupled when `hardware` is blank), then the cheapest circuit.
    pub fn compare_costs(table: &str, target: &str, hardware_text: &str) -> Result<String, String> {
        let f = parse_table(table)?;
        if f.arity() > EXACT_ARITY {
            return Err(format!("cost comparison is limited to {EXACT_ARITY} inputs"));
        }
        let kind = parse_kind(target)?;
        let hw = hardware(hardware_text, f.arity(), kind)?;
        let budget = ParetoBudget {
            time_budget: None,
            ..ParetoBudget::default()
        };
        let p = enumerate_pareto(&f, kind, &hw, &budget).map_err(|e| e.to_string())?;
        let mut out = String::from("cost   swaps  cover\n");
        for (cover, cost) in &p.covers {
            let c = cover_to_circuit(cover, kind);
            let swaps = circuit_cost(&c, &hw).map_err(|e| e.to_string())?.swaps;
            out.push_str(&format!("{cost:<6} {swaps:<6} {cover}\n"));
        }
        if !p.complete {
            out.push_str("(list truncated)\n");
        }
        let covers: Vec<ParityCover> = p.covers.into_iter().map(|(c, _)| c).collect();
        let best = select_variant(&f, kind, &hw, Some(&covers)).map_err(|e| e.to_string())?;
        out.push_str(&format!("\nselected:\n{}\n{}", best.circuit, best.report));
        Ok(out)
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kmap(table: &str, with_cover: bool) -> Result<String, JsError> {
    js(demo::kmap(table, with_cover))
}

#[wasm_bindgen]
pub fn synthesize(table: &str, target: &str, mode: &str, format: &str) -> Result<String, JsError> {
    js(demo::synthesize(table, target, mode, format))
}

#[wasm_bindgen]
pub fn compare_costs(table: &str, target: &str, hardware: &str) -> Result<String, JsError> {
    js(demo::compare_costs(table, target, hardware))
}
