use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use super::heuristic::minimize_heuristic;
use super::{CubeCost, Minimized, SearchConfig};
use crate::error::{Error, Result};
use crate::logic::{Cube, ParityCover, ParityFactor, Phase, TruthTable};

/// Largest arity the exact search accepts. Optimality is only expected to
/// be reached within the time budget for `n <= 4`.
pub const EXACT_MAX_ARITY: usize = 8;

const EPS: f64 = 1e-9;
const CLOCK_EVERY: u64 = 1 << 12;

type Bits = [u64; 4];

fn bits_of(c: &Cube) -> Bits {
    let mut b = [0u64; 4];
    c.for_each_match(|i| b[(i >> 6) as usize] |= 1 << (i & 63));
    b
}

fn table_bits(f: &TruthTable) -> Bits {
    let mut b = [0u64; 4];
    for x in f.ones() {
        let i = x.index();
        b[(i >> 6) as usize] |= 1 << (i & 63);
    }
    b
}

fn xor(a: &Bits, b: &Bits) -> Bits {
    [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
}

fn lowest(b: &Bits) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Every cube over `n` variables (with or without parity factors), sorted in
/// canonical order.
fn all_cubes(n: usize, parity: bool) -> Vec<Cube> {
    let full = (1u32 << n) - 1;
    let mut out = Vec::new();
    let for_subsets = |space: u32, out: &mut Vec<Cube>, extra: Option<ParityFactor>| {
        let mut care = 0u32;
        loop {
            let mut pol = 0u32;
            loop {
                let c = Cube::from_masks(n, care, pol);
                out.push(match extra {
                    Some(p) => c.with_parity(p).expect("parity vars outside care"),
                    None => c,
                });
                if pol == care {
                    break;
                }
                pol = pol.wrapping_sub(care) & care;
            }
            if care == space {
                break;
            }
            care = care.wrapping_sub(space) & space;
        }
    };
    for_subsets(full, &mut out, None);
    if parity && n >= 2 {
        for a in 0..n {
            for b in a + 1..n {
                let space = full & !crate::logic::var_mask(n, a) & !crate::logic::var_mask(n, b);
                for phase in [Phase::Even, Phase::Odd] {
                    let p = ParityFactor::new(a, b, phase).unwrap();
                    for_subsets(space, &mut out, Some(p));
                }
            }
        }
    }
    out.sort();
    out
}

struct Candidates {
    cubes: Vec<Cube>,
    bits: Vec<Bits>,
    cost: Vec<f64>,
    by_cell: Vec<Vec<u32>>,
    lookup: HashMap<Bits, u32>,
    index: HashMap<Cube, u32>,
    min_cost: f64,
    zero_cost: usize,
    distance: Option<&'static [u8]>,
}

impl Candidates {
    fn new(n: usize, parity: bool, cost: &dyn CubeCost) -> Self {
        let cubes = all_cubes(n, parity);
        let bits: Vec<Bits> = cubes.iter().map(bits_of).collect();
        let cost: Vec<f64> = cubes.iter().map(|c| cost.cube_cost(c).max(0.0)).collect();
        let mut by_cell = vec![Vec::new(); 1 << n];
        for (id, c) in cubes.iter().enumerate() {
            c.for_each_match(|i| by_cell[i as usize].push(id as u32));
        }
        let lookup = bits.iter().enumerate().map(|(i, b)| (*b, i as u32)).collect();
        let index = cubes.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
        let positive = cost.iter().copied().filter(|&c| c > EPS);
        let min_cost = positive.fold(f64::INFINITY, f64::min);
        let zero_cost = cost.iter().filter(|&&c| c <= EPS).count();
        Self {
            distance: unit_distances(n, parity),
            cubes,
            bits,
            cost,
            by_cell,
            lookup,
            index,
            min_cost: if min_cost.is_finite() { min_cost } else { 0.0 },
            zero_cost,
        }
    }

    /// Fewest cubes whose XOR equals `residual`, or a trivial bound when no
    /// distance table exists for this arity.
    fn min_cubes(&self, residual: &Bits) -> usize {
        match self.distance {
            Some(d) => d[residual[0] as usize] as usize,
            None => usize::from(residual.iter().any(|&w| w != 0)),
        }
    }

    fn min_cost_for(&self, cubes: usize) -> f64 {
        cubes.saturating_sub(self.zero_cost) as f64 * self.min_cost
    }
}

const TABLE_MAX_ARITY: usize = 4;

/// Minimum cube count for every function of `n <= 4` variables, by
/// breadth-first search from the zero function. Built once per arity.
fn unit_distances(n: usize, parity: bool) -> Option<&'static [u8]> {
    static TABLES: [OnceLock<Vec<u8>>; 2 * (TABLE_MAX_ARITY + 1)] =
        [const { OnceLock::new() }; 2 * (TABLE_MAX_ARITY + 1)];
    if n > TABLE_MAX_ARITY {
        return None;
    }
    let table = TABLES[2 * n + usize::from(parity)].get_or_init(|| {
        let masks: Vec<u64> = all_cubes(n, parity).iter().map(|c| bits_of(c)[0]).collect();
        let mut dist = vec![u8::MAX; 1 << (1 << n)];
        dist[0] = 0;
        let mut frontier = vec![0u64];
        let mut level = 0u8;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for f in frontier {
                for m in &masks {
                    let g = (f ^ m) as usize;
                    if dist[g] == u8::MAX {
                        dist[g] = level;
                        next.push(g as u64);
                    }
                }
            }
            frontier = next;
        }
        dist
    });
    Some(table.as_slice())
}

enum Sink {
    Best(Option<(f64, Vec<u32>)>),
    Collect {
        ceiling: f64,
        max_results: usize,
        found: Vec<(f64, Vec<u32>)>,
    },
}

/// Browser builds have no monotonic clock, so budgets are not enforced there.
#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
fn deadline(_budget: Option<Duration>) -> Option<Instant> {
    None
}

#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
fn deadline(budget: Option<Duration>) -> Option<Instant> {
    budget.map(|d| Instant::now() + d)
}

struct Search<'a> {
    cand: &'a Candidates,
    excluded: Vec<bool>,
    chosen: Vec<u32>,
    sink: Sink,
    deadline: Option<Instant>,
    nodes: u64,
    stopped: bool,
}

impl<'a> Search<'a> {
    fn new(cand: &'a Candidates, sink: Sink, budget: Option<Duration>) -> Self {
        Self {
            cand,
            excluded: vec![false; cand.cubes.len()],
            chosen: Vec::new(),
            sink,
            deadline: deadline(budget),
            nodes: 0,
            stopped: false,
        }
    }

    fn bound(&self) -> f64 {
        match &self.sink {
            Sink::Best(Some((c, _))) => *c + EPS,
            Sink::Best(None) => f64::INFINITY,
            Sink::Collect { ceiling, .. } => *ceiling + EPS,
        }
    }

    fn record(&mut self, cost: f64, extra: Option<u32>) {
        let mut key = self.chosen.clone();
        key.extend(extra);
        key.sort_unstable();
        match &mut self.sink {
            Sink::Best(best) => {
                let better = match best {
                    None => true,
                    Some((c, k)) => cost < *c - EPS || (cost <= *c + EPS && key < *k),
                };
                if better {
                    *best = Some((cost, key));
                }
            }
            Sink::Collect {
                ceiling,
                max_results,
                found,
            } => {
                if cost <= *ceiling + EPS {
                    found.push((cost, key));
                    if found.len() >= *max_results {
                        self.stopped = true;
                    }
                }
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % CLOCK_EVERY == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stopped = true;
                }
            }
        }
        !self.stopped
    }

    /// Branches on the lowest cell whose parity is still wrong. Each sibling
    /// excludes the cubes tried before it, so every cube set is visited once.
    fn dfs(&mut self, residual: Bits, depth: usize, cost: f64) {
        if !self.tick() {
            return;
        }
        let Some(cell) = lowest(&residual) else {
            self.record(cost, None);
            return;
        };
        let need = self.cand.min_cubes(&residual);
        if need > depth || cost + self.cand.min_cost_for(need) > self.bound() {
            return;
        }
        let cand = self.cand;
        if depth == 1 {
            if let Some(&id) = cand.lookup.get(&residual) {
                let c = cost + cand.cost[id as usize];
                if !self.excluded[id as usize] && c <= self.bound() {
                    self.record(c, Some(id));
                }
            }
            return;
        }
        let mut marked = Vec::new();
        for &id in &cand.by_cell[cell] {
            if self.excluded[id as usize] {
                continue;
            }
            self.excluded[id as usize] = true;
            marked.push(id);
            self.chosen.push(id);
            let next = xor(&residual, &cand.bits[id as usize]);
            self.dfs(next, depth - 1, cost + cand.cost[id as usize]);
            self.chosen.pop();
            if self.stopped {
                break;
            }
        }
        for id in marked {
            self.excluded[id as usize] = false;
        }
    }
}

fn check_exact_arity(f: &TruthTable) -> Result<()> {
    if f.arity() > EXACT_MAX_ARITY {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    Ok(())
}

fn cover_from_ids(n: usize, cand: &Candidates, ids: &[u32]) -> ParityCover {
    ParityCover::new(n, ids.iter().map(|&i| cand.cubes[i as usize])).expect("arity")
}

/// Minimum-cost exclusive-or cover of `f`.
///
/// Iterative deepening on the number of cubes, seeded with the heuristic
/// result so a timeout still returns a valid cover (flagged non-optimal).
/// Among equal-cost covers the one whose sorted cube list is smallest in
/// canonical order wins.
pub fn minimize_exact(f: &TruthTable, cfg: &SearchConfig) -> Result<Minimized> {
    check_exact_arity(f)?;
    let n = f.arity();
    let cand = Candidates::new(n, cfg.allow_parity_cubes, cfg.cost.as_ref());
    let target = table_bits(f);

    let seed = minimize_heuristic(f, cfg);
    let seed_ids: Option<Vec<u32>> = seed
        .cubes()
        .iter()
        .map(|c| cand.index.get(c).copied())
        .collect();
    let seed_best = seed_ids.map(|mut ids| {
        ids.sort_unstable();
        let cost = ids.iter().fold(0.0, |acc, &i| acc + cand.cost[i as usize]);
        (cost, ids)
    });

    let mut search = Search::new(&cand, Sink::Best(seed_best), cfg.time_budget);
    let mut k = cand.min_cubes(&target);
    loop {
        search.dfs(target, k, 0.0);
        if search.stopped {
            break;
        }
        let Sink::Best(best) = &search.sink else {
            unreachable!()
        };
        if let Some((best_cost, _)) = best {
            // any cover with k+1 cubes has at least k+1-zero_cost paid cubes
            if cand.min_cost_for(k + 1) > best_cost + EPS {
                break;
            }
        }
        if k >= cfg.max_cubes {
            break;
        }
        k += 1;
    }

    let optimal = !search.stopped;
    let Sink::Best(best) = search.sink else {
        unreachable!()
    };
    let Some((cost, ids)) = best else {
        return Ok(Minimized {
            cost: cfg.cost.cover_cost(&seed),
            cover: seed,
            optimal: false,
        });
    };
    Ok(Minimized {
        cover: cover_from_ids(n, &cand, &ids),
        cost,
        optimal,
    })
}

/// Covers found by [`enumerate_covers`], sorted by cost then canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub covers: Vec<(ParityCover, f64)>,
    /// False when the time budget or result limit cut the enumeration short.
    pub complete: bool,
}

/// All covers of `f` with cost at most `ceiling` and at most
/// `cfg.max_cubes` cubes that contain no cancelling subset left over after
/// the last wrong cell is fixed.
pub fn enumerate_covers(
    f: &TruthTable,
    cfg: &SearchConfig,
    ceiling: f64,
    max_results: usize,
) -> Result<Enumeration> {
    check_exact_arity(f)?;
    let n = f.arity();
    let cand = Candidates::new(n, cfg.allow_parity_cubes, cfg.cost.as_ref());
    let sink = Sink::Collect {
        ceiling,
        max_results: max_results.max(1),
        found: Vec::new(),
    };
    let mut search = Search::new(&cand, sink, cfg.time_budget);
    search.dfs(table_bits(f), cfg.max_cubes, 0.0);
    let complete = !search.stopped;
    let Sink::Collect { mut found, .. } = search.sink else {
        unreachable!()
    };
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    found.dedup_by(|a, b| a.1 == b.1);
    Ok(Enumeration {
        covers: found
            .into_iter()
            .map(|(c, ids)| (cover_from_ids(n, &cand, &ids), c))
            .collect(),
        complete,
    })
}
