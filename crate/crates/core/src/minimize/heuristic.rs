use std::collections::{HashMap, HashSet};

use super::rules::rule2_merge;
use super::{CubeCost, SearchConfig};
use crate::logic::{Cube, ParityCover, TruthTable};

const EPS: f64 = 1e-9;
const MAX_PASSES: usize = 8;
const TRIAL_BUDGET: usize = 200_000;

enum Op {
    Added(Cube),
    Removed(Cube),
}

/// Cube set under exclusive-or with a running cost and an undo log.
struct State<'a> {
    n: usize,
    set: HashSet<Cube>,
    cost: f64,
    log: Vec<Op>,
    model: &'a dyn CubeCost,
    cache: HashMap<Cube, f64>,
}

impl<'a> State<'a> {
    fn new(n: usize, model: &'a dyn CubeCost) -> Self {
        Self {
            n,
            set: HashSet::new(),
            cost: 0.0,
            log: Vec::new(),
            model,
            cache: HashMap::new(),
        }
    }

    fn cube_cost(&mut self, c: &Cube) -> f64 {
        let model = self.model;
        *self.cache.entry(*c).or_insert_with(|| model.cube_cost(c))
    }

    fn add(&mut self, c: Cube) {
        self.cost += self.cube_cost(&c);
        self.set.insert(c);
        self.log.push(Op::Added(c));
    }

    fn remove(&mut self, c: &Cube) {
        self.cost -= self.cube_cost(c);
        self.set.remove(c);
        self.log.push(Op::Removed(*c));
    }

    fn checkpoint(&mut self) -> (usize, f64) {
        (self.log.len(), self.cost)
    }

    fn rollback(&mut self, (len, cost): (usize, f64)) {
        while self.log.len() > len {
            match self.log.pop().unwrap() {
                Op::Added(c) => {
                    self.set.remove(&c);
                }
                Op::Removed(c) => {
                    self.set.insert(c);
                }
            }
        }
        self.cost = cost;
    }

    fn commit(&mut self) {
        self.log.clear();
    }

    /// XORs `c` into the set, merging with any cube that differs from it in
    /// one polarity and repeating on the result.
    fn cascade(&mut self, c: Cube) {
        if self.set.contains(&c) {
            self.remove(&c);
            return;
        }
        if c.parity().is_none() {
            for v in 0..self.n {
                let m = crate::logic::var_mask(self.n, v);
                if c.care_mask() & m == 0 {
                    continue;
                }
                let partner = Cube::from_masks(self.n, c.care_mask(), c.polarity_mask() ^ m);
                if self.set.contains(&partner) {
                    self.remove(&partner);
                    self.cascade(Cube::from_masks(
                        self.n,
                        c.care_mask() & !m,
                        c.polarity_mask(),
                    ));
                    return;
                }
            }
        }
        self.add(c);
    }

    fn snapshot(&self) -> Vec<Cube> {
        let mut v: Vec<Cube> = self.set.iter().copied().collect();
        v.sort();
        v
    }
}

/// Cubes whose exclusive-or with `c` is a single cube: one literal flipped,
/// dropped, or added.
fn neighbors(n: usize, c: &Cube) -> Vec<Cube> {
    let mut out = Vec::with_capacity(2 * n);
    let (care, pol) = (c.care_mask(), c.polarity_mask());
    for v in 0..n {
        let m = crate::logic::var_mask(n, v);
        if care & m != 0 {
            out.push(Cube::from_masks(n, care, pol ^ m));
            out.push(Cube::from_masks(n, care & !m, pol));
        } else {
            out.push(Cube::from_masks(n, care | m, pol));
            out.push(Cube::from_masks(n, care | m, pol | m));
        }
    }
    out
}

/// Cover of `f` built by Rule I merging of the minterms, improved by Rule III
/// regrouping moves and, when enabled, Rule II pair merges. Deterministic;
/// the result always computes `f`.
pub fn minimize_heuristic(f: &TruthTable, cfg: &SearchConfig) -> ParityCover {
    let n = f.arity();
    let mut st = State::new(n, cfg.cost.as_ref());
    for x in f.ones() {
        st.cascade(Cube::minterm(x));
    }
    st.commit();
    local_search(&mut st);
    if cfg.allow_parity_cubes {
        parity_pass(&mut st);
    }
    ParityCover::new(n, st.set).expect("arity")
}

/// Replaces `{c1, c2}` by `{c1 ^ m, m ^ c2}` for an intermediate cube `m`,
/// i.e. inserts `m` twice and regroups. Only strict improvements are kept.
fn local_search(st: &mut State<'_>) {
    let n = st.n;
    let mut trials = 0;
    for _ in 0..MAX_PASSES {
        let mut improved = false;
        for c1 in st.snapshot() {
            if trials >= TRIAL_BUDGET {
                return;
            }
            if !st.set.contains(&c1) || c1.parity().is_some() {
                continue;
            }
            'moves: for m in neighbors(n, &c1) {
                let a = c1.xor_single(&m).expect("neighbor");
                if m != c1 && st.set.contains(&m) {
                    trials += 1;
                    let cp = st.checkpoint();
                    st.remove(&c1);
                    st.remove(&m);
                    st.cascade(a);
                    if st.cost < cp.1 - EPS {
                        st.commit();
                        improved = true;
                        break 'moves;
                    }
                    st.rollback(cp);
                }
                for c2 in neighbors(n, &m) {
                    if c2 == c1 || !st.set.contains(&c2) {
                        continue;
                    }
                    trials += 1;
                    let b = m.xor_single(&c2).expect("neighbor");
                    let cp = st.checkpoint();
                    st.remove(&c1);
                    st.remove(&c2);
                    st.cascade(a);
                    st.cascade(b);
                    if st.cost < cp.1 - EPS {
                        st.commit();
                        improved = true;
                        break 'moves;
                    }
                    st.rollback(cp);
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Merges pairs that differ in exactly two polarities into a parity cube
/// whenever that does not raise the cost.
fn parity_pass(st: &mut State<'_>) {
    let n = st.n;
    for c in st.snapshot() {
        if !st.set.contains(&c) || c.parity().is_some() {
            continue;
        }
        let vars: Vec<usize> = (0..n)
            .filter(|&v| c.care_mask() & crate::logic::var_mask(n, v) != 0)
            .collect();
        'pairs: for (i, &a) in vars.iter().enumerate() {
            for &b in &vars[i + 1..] {
                let flip = crate::logic::var_mask(n, a) | crate::logic::var_mask(n, b);
                let p = Cube::from_masks(n, c.care_mask(), c.polarity_mask() ^ flip);
                if !st.set.contains(&p) {
                    continue;
                }
                let merged = rule2_merge(&c, &p).expect("two-polarity difference");
                let cp = st.checkpoint();
                st.remove(&c);
                st.remove(&p);
                st.cascade(merged);
                if st.cost <= cp.1 + EPS {
                    st.commit();
                    break 'pairs;
                }
                st.rollback(cp);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_b_reaches_two_cubes() {
        let f = TruthTable::from_hex(3, "36").unwrap();
        let cfg = SearchConfig::heuristic().with_parity_cubes(false);
        assert_eq!(
            minimize_heuristic(&f, &cfg),
            ParityCover::parse(3, "x2, x1 x3").unwrap()
        );
    }

    #[test]
    fn constants_and_single_literals() {
        let cfg = SearchConfig::heuristic();
        let one = TruthTable::constant(4, true).unwrap();
        assert_eq!(minimize_heuristic(&one, &cfg).cubes(), &[Cube::universe(4)]);
        let zero = TruthTable::constant(4, false).unwrap();
        assert!(minimize_heuristic(&zero, &cfg).is_empty());
        let x3 = TruthTable::from_fn(4, |x| x.bit(2)).unwrap();
        assert_eq!(
            minimize_heuristic(&x3, &cfg),
            ParityCover::parse(4, "x3").unwrap()
        );
    }

    #[test]
    fn parity_function_uses_parity_cube() {
        let f = TruthTable::from_fn(3, |x| x.bit(0) ^ x.bit(1)).unwrap();
        let off = minimize_heuristic(&f, &SearchConfig::heuristic().with_parity_cubes(false));
        assert_eq!(off.len(), 2);
        let on = minimize_heuristic(&f, &SearchConfig::heuristic());
        assert_eq!(on.len(), 1);
        assert!(on.validate(&f).unwrap().is_pass());
    }

    #[test]
    fn always_valid_on_many_functions() {
        let cfg = SearchConfig::heuristic();
        for bits in (0u64..=0xFFFF).step_by(97) {
            let f = TruthTable::from_u64(4, bits).unwrap();
            let c = minimize_heuristic(&f, &cfg);
            assert!(c.validate(&f).unwrap().is_pass(), "{}", f.to_hex());
            assert!(c.len() <= f.count_ones().max(1));
        }
    }
}
