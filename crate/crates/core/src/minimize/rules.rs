use crate::error::{Error, Result};
use crate::logic::{Cube, ParityCover, ParityFactor, Phase, TruthTable};

/// Merges two gates whose conditions differ in the polarity of exactly one
/// variable into one gate that ignores it (`x + ~x = 1`).
pub fn rule1_merge(c1: &Cube, c2: &Cube) -> Option<Cube> {
    if !same_support(c1, c2) {
        return None;
    }
    let diff = c1.polarity_mask() ^ c2.polarity_mask();
    (diff.count_ones() == 1).then(|| {
        Cube::from_masks(
            c1.arity(),
            c1.care_mask() & !diff,
            c1.polarity_mask(),
        )
    })
}

/// Merges two gates whose conditions differ in exactly two variables into a
/// cube with a parity factor on those variables.
///
/// Opposite polarities on the pair, as in `x_a ~x_b + ~x_a x_b`, give the
/// odd factor `x_a ^ x_b`; equal polarities give its negation.
pub fn rule2_merge(c1: &Cube, c2: &Cube) -> Option<Cube> {
    if !same_support(c1, c2) {
        return None;
    }
    let n = c1.arity();
    let diff = c1.polarity_mask() ^ c2.polarity_mask();
    if diff.count_ones() != 2 {
        return None;
    }
    let vars: Vec<usize> = (0..n)
        .filter(|&v| diff & crate::logic::var_mask(n, v) != 0)
        .collect();
    let (a, b) = (vars[0], vars[1]);
    let phase = if c1.literal(a) != c1.literal(b) {
        Phase::Odd
    } else {
        Phase::Even
    };
    let common = Cube::from_masks(n, c1.care_mask() & !diff, c1.polarity_mask());
    common
        .with_parity(ParityFactor::new(a, b, phase).ok()?)
        .ok()
}

fn same_support(c1: &Cube, c2: &Cube) -> bool {
    c1.arity() == c2.arity()
        && c1.parity().is_none()
        && c2.parity().is_none()
        && c1.care_mask() == c2.care_mask()
}

/// A multiset of cubes, the intermediate form of a gate product before
/// repeated gates are cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeBag {
    n: usize,
    cubes: Vec<Cube>,
}

impl CubeBag {
    pub fn new(n: usize, cubes: Vec<Cube>) -> Result<Self> {
        if let Some(c) = cubes.iter().find(|c| c.arity() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: c.arity(),
            });
        }
        Ok(Self { n, cubes })
    }

    pub fn from_cover(cov: &ParityCover) -> Self {
        Self {
            n: cov.arity(),
            cubes: cov.cubes().to_vec(),
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn push(&mut self, c: Cube) {
        self.cubes.push(c);
    }

    /// Removes one occurrence of `c`; false if absent.
    pub fn remove_one(&mut self, c: &Cube) -> bool {
        match self.cubes.iter().position(|x| x == c) {
            Some(i) => {
                self.cubes.remove(i);
                true
            }
            None => false,
        }
    }

    /// Replaces one occurrence each of `a` and `b` by their Rule I or Rule II
    /// merge.
    pub fn merge(&mut self, a: &Cube, b: &Cube) -> Option<Cube> {
        let merged = rule1_merge(a, b).or_else(|| rule2_merge(a, b))?;
        if a == b || !self.cubes.contains(a) || !self.cubes.contains(b) {
            return None;
        }
        self.remove_one(a);
        self.remove_one(b);
        self.cubes.push(merged);
        Some(merged)
    }

    /// Cancels pairs of equal cubes.
    pub fn to_cover(&self) -> ParityCover {
        ParityCover::new(self.n, self.cubes.iter().copied()).expect("arity checked")
    }

    pub fn to_table(&self) -> TruthTable {
        self.to_cover().to_table()
    }
}

/// Multiplies a cover by the square of a minterm gate.
///
/// The function is unchanged, but the bag now holds two extra copies of the
/// minterm that later merges can pair with other cubes.
pub fn rule3_expand(cov: &ParityCover, m: &Cube) -> Result<CubeBag> {
    if m.arity() != cov.arity() {
        return Err(Error::ArityMismatch {
            expected: cov.arity(),
            found: m.arity(),
        });
    }
    if !m.is_minterm() {
        return Err(Error::NotAMinterm(m.to_string()));
    }
    let mut bag = CubeBag::from_cover(cov);
    bag.push(*m);
    bag.push(*m);
    Ok(bag)
}

/// Table of the exclusive-or of `cubes` (a multiset).
pub fn xor_table(n: usize, cubes: &[Cube]) -> Vec<bool> {
    let mut values = vec![false; 1 << n];
    for c in cubes {
        c.for_each_match(|i| values[i as usize] ^= true);
    }
    values
}
