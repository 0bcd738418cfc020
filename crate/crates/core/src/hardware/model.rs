use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::circuit::CircuitKind;
use crate::error::{parse_err, Error, Result};

/// Per-gate costs. Toffoli costs default to `2m - 1` for `m` controls unless
/// overridden per control count.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    pub not: f64,
    pub cnot: f64,
    pub h: f64,
    pub swap: f64,
    pub toffoli: BTreeMap<usize, f64>,
}

impl Default for Weights {
    fn default() -> Self {
        Self {
            not: 1.0,
            cnot: 1.0,
            h: 1.0,
            swap: 3.0,
            toffoli: BTreeMap::new(),
        }
    }
}

impl Weights {
    pub fn toffoli(&self, controls: usize) -> f64 {
        self.toffoli
            .get(&controls)
            .copied()
            .unwrap_or((2 * controls) as f64 - 1.0)
    }

    fn check(&self) -> Result<()> {
        let all = [self.not, self.cnot, self.h, self.swap]
            .into_iter()
            .chain(self.toffoli.values().copied());
        for w in all {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidHardware(format!("weight {w} is not a finite non-negative number")));
            }
        }
        Ok(())
    }
}

/// Named qubits, an undirected coupling graph and gate weights.
#[derive(Debug, Clone, PartialEq)]
pub struct HardwareModel {
    qubits: Vec<String>,
    edges: Vec<(usize, usize)>,
    weights: Weights,
    dist: Vec<Vec<usize>>,
}

/// `x1 .. xn`, plus `y` for f-controlled-NOT circuits.
pub fn register_names(n: usize, kind: CircuitKind) -> Vec<String> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    if kind == CircuitKind::Fcnot {
        names.push("y".into());
    }
    names
}

impl HardwareModel {
    /// Fails on duplicate qubits, edges to unknown qubits, self-loops,
    /// invalid weights, or a disconnected graph.
    pub fn new(qubits: Vec<String>, edges: &[(String, String)], weights: Weights) -> Result<Self> {
        weights.check()?;
        let mut sorted = qubits.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHardware(format!("qubit `{}` declared twice", w[0])));
        }
        let find = |name: &str| {
            qubits
                .iter()
                .position(|q| q == name)
                .ok_or_else(|| Error::UnknownQubit(name.to_string()))
        };
        let mut idx = Vec::new();
        for (a, b) in edges {
            let (i, j) = (find(a)?, find(b)?);
            if i == j {
                return Err(Error::InvalidHardware(format!("self-coupling on `{a}`")));
            }
            let e = (i.min(j), i.max(j));
            if !idx.contains(&e) {
                idx.push(e);
            }
        }
        idx.sort_unstable();
        let dist = all_pairs(qubits.len(), &idx);
        if dist.iter().flatten().any(|&d| d == usize::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(Self {
            qubits,
            edges: idx,
            weights,
            dist,
        })
    }

    /// Every pair of qubits coupled.
    pub fn complete(qubits: &[String]) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, a) in qubits.iter().enumerate() {
            for b in &qubits[i + 1..] {
                edges.push((a.clone(), b.clone()));
            }
        }
        Self::new(qubits.to_vec(), &edges, Weights::default())
    }

    /// Qubits coupled in a line, in the given order.
    pub fn path(qubits: &[String]) -> Result<Self> {
        let edges: Vec<_> = qubits
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(qubits.to_vec(), &edges, Weights::default())
    }

    pub fn with_weights(self, weights: Weights) -> Result<Self> {
        let edges = self.edge_names();
        Self::new(self.qubits, &edges, weights)
    }

    /// Same model with one coupling removed.
    pub fn without_edge(&self, a: &str, b: &str) -> Result<Self> {
        let edges: Vec<_> = self
            .edge_names()
            .into_iter()
            .filter(|(p, q)| !((p == a && q == b) || (p == b && q == a)))
            .collect();
        Self::new(self.qubits.clone(), &edges, self.weights.clone())
    }

    pub fn qubits(&self) -> &[String] {
        &self.qubits
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.qubits[i].clone(), self.qubits[j].clone()))
            .collect()
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.qubits.iter().position(|q| q == name)
    }

    /// Shortest-path length in couplings.
    pub fn distance(&self, a: &str, b: &str) -> Result<usize> {
        let i = self.index_of(a).ok_or_else(|| Error::UnknownQubit(a.into()))?;
        let j = self.index_of(b).ok_or_else(|| Error::UnknownQubit(b.into()))?;
        Ok(self.dist[i][j])
    }

    pub(crate) fn distance_idx(&self, i: usize, j: usize) -> usize {
        self.dist[i][j]
    }

    /// Parses the line format: `qubit <name>`, `edge <a> <b>`,
    /// `weight not|cnot|h|swap <w>`, `weight tof <m> <w>`; `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut qubits = Vec::new();
        let mut edges = Vec::new();
        let mut weights = Weights::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|w| *w >= 0.0 && w.is_finite())
                    .ok_or_else(|| parse_err(line, format!("bad weight `{s}`")))
            };
            match words.as_slice() {
                [] => {}
                ["qubit", name] => {
                    if qubits.iter().any(|q| q == name) {
                        return Err(parse_err(line, format!("qubit `{name}` declared twice")));
                    }
                    qubits.push(name.to_string());
                }
                ["edge", a, b] => {
                    for q in [a, b] {
                        if !qubits.iter().any(|x| x == q) {
                            return Err(parse_err(line, format!("unknown qubit `{q}`")));
                        }
                    }
                    if a == b {
                        return Err(parse_err(line, format!("self-coupling on `{a}`")));
                    }
                    edges.push((a.to_string(), b.to_string()));
                }
                ["weight", "not", w] => weights.not = num(w)?,
                ["weight", "cnot", w] => weights.cnot = num(w)?,
                ["weight", "h", w] => weights.h = num(w)?,
                ["weight", "swap", w] => weights.swap = num(w)?,
                ["weight", "tof", m, w] => {
                    let m: usize = m
                        .parse()
                        .ok()
                        .filter(|m| *m >= 2)
                        .ok_or_else(|| parse_err(line, format!("bad control count `{m}`")))?;
                    weights.toffoli.insert(m, num(w)?);
                }
                _ => return Err(parse_err(line, format!("unrecognized line `{}`", body.trim()))),
            }
        }
        if qubits.is_empty() {
            return Err(parse_err(0, "no qubits declared"));
        }
        Self::new(qubits, &edges, weights)
    }
}

impl FromStr for HardwareModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for HardwareModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.qubits {
            writeln!(f, "qubit {q}")?;
        }
        for (a, b) in self.edge_names() {
            writeln!(f, "edge {a} {b}")?;
        }
        let w = &self.weights;
        writeln!(f, "weight not {}", w.not)?;
        writeln!(f, "weight cnot {}", w.cnot)?;
        writeln!(f, "weight h {}", w.h)?;
        writeln!(f, "weight swap {}", w.swap)?;
        for (m, c) in &w.toffoli {
            writeln!(f, "weight tof {m} {c}")?;
        }
        Ok(())
    }
}

fn all_pairs(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if d[v] == usize::MAX {
                        d[v] = d[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "\
# three qubits in a row
qubit x1
qubit x2
qubit x3
edge x1 x2
edge x2 x3
weight tof 2 5
";

    #[test]
    fn parses_and_measures() {
        let hw = HardwareModel::parse(LINE).unwrap();
        assert_eq!(hw.qubits(), ["x1", "x2", "x3"]);
        assert_eq!(hw.distance("x1", "x3").unwrap(), 2);
        assert_eq!(hw.distance("x2", "x2").unwrap(), 0);
        assert_eq!(hw.weights().toffoli(2), 5.0);
        assert_eq!(hw.weights().toffoli(3), 5.0);
        assert_eq!(hw.weights().swap, 3.0);
        // display round-trips
        assert_eq!(HardwareModel::parse(&hw.to_string()).unwrap(), hw);
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            "qubit a\nqubit a\n",
            "qubit a\nedge a b\n",
            "qubit a\nedge a a\n",
            "qubit a\nweight cnot -1\n",
            "qubit a\nweight tof 1 2\n",
            "qubit a\nfoo\n",
            "",
        ];
        for text in cases {
            assert!(matches!(HardwareModel::parse(text), Err(Error::Parse { .. })), "{text:?}");
        }
        assert_eq!(
            HardwareModel::parse("qubit a\nqubit b\n"),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn builders() {
        let names = register_names(3, CircuitKind::Fcnot);
        assert_eq!(names, ["x1", "x2", "x3", "y"]);
        let k = HardwareModel::complete(&names).unwrap();
        assert_eq!(k.edge_names().len(), 6);
        let p = HardwareModel::path(&names).unwrap();
        assert_eq!(p.distance("x1", "y").unwrap(), 3);
        assert_eq!(
            p.without_edge("x2", "x3"),
            Err(Error::Disconnected)
        );
    }
}
