use std::collections::BTreeMap;
use std::fmt;

use super::cube::{check_arity, Cube};
use super::table::{Assignment, TruthTable};
use crate::error::{Error, Result};

/// One full-polarity cube per satisfying assignment, in ascending index order.
pub fn minterms_of(f: &TruthTable) -> Vec<Cube> {
    f.ones().map(Cube::minterm).collect()
}

/// A set of cubes whose exclusive-or is the represented function.
///
/// Cubes are kept sorted in canonical order. A cube supplied an even number
/// of times cancels out, since a gate applied twice is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCover {
    n: usize,
    cubes: Vec<Cube>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Fail { mismatches: Vec<Assignment> },
}

impl Validation {
    pub fn is_pass(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

impl ParityCover {
    pub fn empty(n: usize) -> Result<Self> {
        check_arity(n)?;
        Ok(Self { n, cubes: Vec::new() })
    }

    pub fn new(n: usize, cubes: impl IntoIterator<Item = Cube>) -> Result<Self> {
        check_arity(n)?;
        let mut counts: BTreeMap<Cube, usize> = BTreeMap::new();
        for c in cubes {
            if c.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: c.arity(),
                });
            }
            *counts.entry(c).or_default() += 1;
        }
        let cubes = counts
            .into_iter()
            .filter(|(_, k)| k % 2 == 1)
            .map(|(c, _)| c)
            .collect();
        Ok(Self { n, cubes })
    }

    /// The cover made of exactly the minterms of `f`.
    pub fn from_minterms(f: &TruthTable) -> Self {
        Self {
            n: f.arity(),
            cubes: minterms_of(f),
        }
    }

    /// Parses cubes in display syntax separated by commas or newlines.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let cubes = text
            .split([',', '\n'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| Cube::parse(n, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, cubes)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, c: &Cube) -> bool {
        self.cubes.binary_search(c).is_ok()
    }

    pub fn evaluate(&self, x: Assignment) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: x.arity(),
            });
        }
        Ok(self
            .cubes
            .iter()
            .filter(|c| c.matches_index(x.index()))
            .count()
            % 2
            == 1)
    }

    /// How many cubes contain the assignment.
    pub fn coverage(&self, x: Assignment) -> usize {
        self.cubes.iter().filter(|c| c.matches_index(x.index())).count()
    }

    /// The function this cover computes.
    pub fn to_table(&self) -> TruthTable {
        let mut values = vec![false; 1 << self.n];
        for c in &self.cubes {
            c.for_each_match(|i| values[i as usize] ^= true);
        }
        TruthTable::new(self.n, values).expect("arity checked at construction")
    }

    pub fn validate(&self, f: &TruthTable) -> Result<Validation> {
        if f.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: f.arity(),
                found: self.n,
            });
        }
        let got = self.to_table();
        let mismatches: Vec<Assignment> = Assignment::all(self.n)
            .filter(|x| got.value(x.index()) != f.value(x.index()))
            .collect();
        Ok(if mismatches.is_empty() {
            Validation::Pass
        } else {
            Validation::Fail { mismatches }
        })
    }
}

impl fmt::Display for ParityCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.cubes.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_b() -> TruthTable {
        TruthTable::from_hex(3, "36").unwrap()
    }

    fn x(bits: &[u8]) -> Assignment {
        Assignment::from_bits(bits).unwrap()
    }

    #[test]
    fn minterms_of_f_b() {
        let names: Vec<String> = minterms_of(&f_b())
            .iter()
            .map(|c| c.polarity_string())
            .collect();
        assert_eq!(names, ["010", "011", "101", "110"]);
        assert!(minterms_of(&TruthTable::constant(3, false).unwrap()).is_empty());
        assert_eq!(minterms_of(&TruthTable::constant(2, true).unwrap()).len(), 4);
    }

    #[test]
    fn evaluate_counts_parity() {
        let cov = ParityCover::parse(3, "x2, x1 x3").unwrap();
        assert!(!cov.evaluate(x(&[1, 1, 1])).unwrap());
        assert_eq!(cov.coverage(x(&[1, 1, 1])), 2);
        assert!(cov.evaluate(x(&[1, 0, 1])).unwrap());
        let empty = ParityCover::empty(3).unwrap();
        assert!(Assignment::all(3).all(|a| !empty.evaluate(a).unwrap()));
    }

    #[test]
    fn validate_against_f_b() {
        let good = ParityCover::parse(3, "x2, x1 x3").unwrap();
        assert_eq!(good.validate(&f_b()).unwrap(), Validation::Pass);
        assert!(ParityCover::from_minterms(&f_b())
            .validate(&f_b())
            .unwrap()
            .is_pass());

        // classical simplified expression substituted term by term
        let wrong = ParityCover::parse(3, "~x1 x2, x2 ~x3, x1 ~x2 x3").unwrap();
        assert_eq!(
            wrong.validate(&f_b()).unwrap(),
            Validation::Fail {
                mismatches: vec![x(&[0, 1, 0])]
            }
        );
    }

    #[test]
    fn duplicate_cubes_cancel() {
        let c = Cube::parse(3, "x1").unwrap();
        let d = Cube::parse(3, "x2").unwrap();
        let cov = ParityCover::new(3, [c, d, c]).unwrap();
        assert_eq!(cov.cubes(), &[d]);
    }

    #[test]
    fn arity_mismatch() {
        let c = Cube::parse(2, "x1").unwrap();
        assert!(ParityCover::new(3, [c]).is_err());
        let cov = ParityCover::empty(3).unwrap();
        assert!(cov.validate(&TruthTable::constant(2, false).unwrap()).is_err());
    }
}
