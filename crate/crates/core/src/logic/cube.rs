use std::cmp::Ordering;
use std::fmt;

use super::table::{var_mask, Assignment, MAX_ARITY};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Literal {
    Positive,
    Negative,
    Absent,
}

/// Phase of a two-variable parity factor: `Odd` is `x_a ^ x_b`, `Even` its
/// negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParityFactor {
    a: usize,
    b: usize,
    phase: Phase,
}

impl ParityFactor {
    /// Variables are stored in ascending order.
    pub fn new(a: usize, b: usize, phase: Phase) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidCube(format!(
                "parity factor on a single variable x{}",
                a + 1
            )));
        }
        Ok(Self {
            a: a.min(b),
            b: a.max(b),
            phase,
        })
    }

    pub fn vars(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }
}

/// A mixed-polarity product term, optionally with one parity factor.
///
/// Literals are kept as two masks over assignment-index bits: `care` marks
/// present variables and `polarity` the positive ones among them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    n: usize,
    care: u32,
    polarity: u32,
    parity: Option<ParityFactor>,
}

impl Cube {
    pub fn new(literals: &[Literal]) -> Result<Self> {
        let n = literals.len();
        check_arity(n)?;
        let mut cube = Self::universe(n);
        for (var, lit) in literals.iter().enumerate() {
            cube = cube.with_literal(var, *lit);
        }
        Ok(cube)
    }

    /// The empty product, true everywhere.
    pub fn universe(n: usize) -> Self {
        Self {
            n,
            care: 0,
            polarity: 0,
            parity: None,
        }
    }

    pub fn minterm(x: Assignment) -> Self {
        let n = x.arity();
        Self {
            n,
            care: full_mask(n),
            polarity: x.index(),
            parity: None,
        }
    }

    /// Parses a PLA-style pattern such as `"-10"` (`1` positive, `0`
    /// negative, `-` absent).
    pub fn from_pattern(pattern: &str) -> Result<Self> {
        let lits = pattern
            .chars()
            .map(|c| match c {
                '1' => Ok(Literal::Positive),
                '0' => Ok(Literal::Negative),
                '-' => Ok(Literal::Absent),
                _ => Err(Error::InvalidCube(format!("bad pattern `{pattern}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&lits)
    }

    pub(crate) fn from_masks(n: usize, care: u32, polarity: u32) -> Self {
        Self {
            n,
            care,
            polarity: polarity & care,
            parity: None,
        }
    }

    pub fn with_literal(mut self, var: usize, lit: Literal) -> Self {
        let m = var_mask(self.n, var);
        match lit {
            Literal::Positive => {
                self.care |= m;
                self.polarity |= m;
            }
            Literal::Negative => {
                self.care |= m;
                self.polarity &= !m;
            }
            Literal::Absent => {
                self.care &= !m;
                self.polarity &= !m;
            }
        }
        self
    }

    /// Attaches a parity factor; both of its variables must be absent.
    pub fn with_parity(mut self, factor: ParityFactor) -> Result<Self> {
        if self.parity.is_some() {
            return Err(Error::InvalidCube("cube already has a parity factor".into()));
        }
        let (a, b) = factor.vars();
        if b >= self.n {
            return Err(Error::InvalidCube(format!(
                "parity variable x{} out of range",
                b + 1
            )));
        }
        if self.literal(a) != Literal::Absent || self.literal(b) != Literal::Absent {
            return Err(Error::InvalidCube(format!(
                "parity variables x{} and x{} must not carry literals",
                a + 1,
                b + 1
            )));
        }
        self.parity = Some(factor);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn literal(&self, var: usize) -> Literal {
        let m = var_mask(self.n, var);
        if self.care & m == 0 {
            Literal::Absent
        } else if self.polarity & m != 0 {
            Literal::Positive
        } else {
            Literal::Negative
        }
    }

    pub fn literals(&self) -> Vec<Literal> {
        (0..self.n).map(|v| self.literal(v)).collect()
    }

    pub fn parity(&self) -> Option<ParityFactor> {
        self.parity
    }

    pub fn care_mask(&self) -> u32 {
        self.care
    }

    pub fn polarity_mask(&self) -> u32 {
        self.polarity
    }

    pub fn is_minterm(&self) -> bool {
        self.parity.is_none() && self.care == full_mask(self.n)
    }

    /// Variables the cube depends on, counting both parity variables.
    pub fn present_count(&self) -> usize {
        self.care.count_ones() as usize + if self.parity.is_some() { 2 } else { 0 }
    }

    /// Present literal variables in ascending order (parity variables excluded).
    pub fn literal_vars(&self) -> impl Iterator<Item = (usize, Literal)> + '_ {
        (0..self.n).filter_map(|v| match self.literal(v) {
            Literal::Absent => None,
            lit => Some((v, lit)),
        })
    }

    /// Same cube without its parity factor.
    pub fn without_parity(&self) -> Self {
        Self {
            parity: None,
            ..*self
        }
    }

    #[inline]
    pub fn matches_index(&self, index: u32) -> bool {
        if index & self.care != self.polarity {
            return false;
        }
        match self.parity {
            None => true,
            Some(p) => {
                let xa = index & var_mask(self.n, p.a) != 0;
                let xb = index & var_mask(self.n, p.b) != 0;
                (xa ^ xb) == (p.phase == Phase::Odd)
            }
        }
    }

    pub fn matches(&self, x: Assignment) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: x.arity(),
            });
        }
        Ok(self.matches_index(x.index()))
    }

    /// Calls `f` with every matching assignment index.
    pub fn for_each_match(&self, mut f: impl FnMut(u32)) {
        let full = full_mask(self.n);
        let (pa, pb) = match self.parity {
            Some(p) => (var_mask(self.n, p.a), var_mask(self.n, p.b)),
            None => (0, 0),
        };
        let free = full & !self.care & !pa & !pb;
        // enumerate subsets of `free`
        let mut sub = 0u32;
        loop {
            let base = self.polarity | sub;
            match self.parity {
                None => f(base),
                Some(p) => {
                    if p.phase == Phase::Odd {
                        f(base | pa);
                        f(base | pb);
                    } else {
                        f(base);
                        f(base | pa | pb);
                    }
                }
            }
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }

    /// Number of assignments the cube matches.
    pub fn size(&self) -> u64 {
        let free = self.n - self.present_count();
        let base = 1u64 << free;
        if self.parity.is_some() {
            base * 2
        } else {
            base
        }
    }

    fn rank(&self, var: usize) -> u8 {
        if let Some(p) = self.parity {
            if var == p.a || var == p.b {
                return match p.phase {
                    Phase::Even => b'e',
                    Phase::Odd => b'o',
                };
            }
        }
        match self.literal(var) {
            Literal::Absent => b'-',
            Literal::Negative => b'0',
            Literal::Positive => b'1',
        }
    }

    /// Polarity string used for canonical ordering: one character per
    /// variable, `-`/`0`/`1` for literals and `e`/`o` for parity variables.
    pub fn polarity_string(&self) -> String {
        (0..self.n).map(|v| self.rank(v) as char).collect()
    }

    /// Symmetric difference of two parity-free cubes when it is itself a
    /// single parity-free cube.
    pub fn xor_single(&self, other: &Cube) -> Option<Cube> {
        if self.n != other.n || self.parity.is_some() || other.parity.is_some() {
            return None;
        }
        if self.care == other.care {
            let diff = self.polarity ^ other.polarity;
            if diff.count_ones() == 1 {
                return Some(Cube::from_masks(self.n, self.care & !diff, self.polarity));
            }
            return None;
        }
        // One cube has exactly one extra literal and agrees elsewhere:
        // c ^ c·l = c·!l.
        let (small, big) = if self.care & !other.care == 0 {
            (self, other)
        } else if other.care & !self.care == 0 {
            (other, self)
        } else {
            return None;
        };
        let extra = big.care & !small.care;
        if extra.count_ones() != 1 || big.polarity & small.care != small.polarity {
            return None;
        }
        Some(Cube::from_masks(
            self.n,
            big.care,
            big.polarity ^ extra,
        ))
    }

    /// Parses the display syntax: whitespace-separated `xi`, `~xi`,
    /// `(xi^xj)`, `(xi^~xj)`, or `1` for the empty product.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_arity(n)?;
        let mut cube = Self::universe(n);
        let text = text.trim();
        if text == "1" {
            return Ok(cube);
        }
        let bad = || Error::InvalidCube(format!("cannot parse `{text}`"));
        for tok in text.split_whitespace() {
            if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                let (lhs, rhs) = inner.split_once('^').ok_or_else(bad)?;
                let a = parse_var(n, lhs).ok_or_else(bad)?;
                let (phase, rhs) = match rhs.strip_prefix('~') {
                    Some(r) => (Phase::Even, r),
                    None => (Phase::Odd, rhs),
                };
                let b = parse_var(n, rhs).ok_or_else(bad)?;
                cube = cube.with_parity(ParityFactor::new(a, b, phase)?)?;
            } else {
                let (lit, name) = match tok.strip_prefix('~') {
                    Some(rest) => (Literal::Negative, rest),
                    None => (Literal::Positive, tok),
                };
                let v = parse_var(n, name).ok_or_else(bad)?;
                if cube.literal(v) != Literal::Absent
                    || cube.parity.is_some_and(|p| p.a == v || p.b == v)
                {
                    return Err(Error::InvalidCube(format!("x{} repeated", v + 1)));
                }
                cube = cube.with_literal(v, lit);
            }
        }
        if let Some(p) = cube.parity {
            if cube.literal(p.a) != Literal::Absent || cube.literal(p.b) != Literal::Absent {
                return Err(Error::InvalidCube(format!("parity variable repeated in `{text}`")));
            }
        }
        Ok(cube)
    }
}

fn parse_var(n: usize, name: &str) -> Option<usize> {
    let i: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=n).contains(&i).then(|| i - 1)
}

pub(crate) fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::UnsupportedArity(n));
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

/// Canonical order: fewer present variables first, then the polarity string.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.present_count().cmp(&other.present_count()))
            .then_with(|| {
                (0..self.n)
                    .map(|v| self.rank(v))
                    .cmp((0..other.n).map(|v| other.rank(v)))
            })
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        // the parity factor is printed at the position of its first variable
        for v in 0..self.n {
            if let Some(p) = self.parity {
                if v == p.a {
                    let neg = if p.phase == Phase::Even { "~" } else { "" };
                    terms.push(format!("(x{}^{}x{})", p.a + 1, neg, p.b + 1));
                    continue;
                }
            }
            match self.literal(v) {
                Literal::Positive => terms.push(format!("x{}", v + 1)),
                Literal::Negative => terms.push(format!("~x{}", v + 1)),
                Literal::Absent => {}
            }
        }
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(bits: &[u8]) -> Assignment {
        Assignment::from_bits(bits).unwrap()
    }

    #[test]
    fn matches_literals_and_parity() {
        let c = Cube::parse(3, "x2 ~x3").unwrap();
        assert!(c.matches(x(&[0, 1, 0])).unwrap());
        assert!(!c.matches(x(&[0, 1, 1])).unwrap());

        let p = Cube::parse(3, "(x1^x2) x3").unwrap();
        assert!(!p.matches(x(&[1, 1, 1])).unwrap());
        assert!(p.matches(x(&[1, 0, 1])).unwrap());
        assert!(p.matches(x(&[0, 1, 1])).unwrap());

        let u = Cube::universe(3);
        assert!(Assignment::all(3).all(|a| u.matches(a).unwrap()));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let c = Cube::parse(3, "x1").unwrap();
        assert!(matches!(
            c.matches(x(&[1, 0])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn for_each_match_agrees_with_matches() {
        for text in ["1", "x1", "~x2 x4", "(x1^x3)", "(x2^~x4) ~x1", "x1 x2 x3 x4"] {
            let c = Cube::parse(4, text).unwrap();
            let mut seen = Vec::new();
            c.for_each_match(|i| seen.push(i));
            seen.sort_unstable();
            let expected: Vec<u32> = (0..16).filter(|&i| c.matches_index(i)).collect();
            assert_eq!(seen, expected, "{text}");
            assert_eq!(c.size(), expected.len() as u64);
        }
    }

    #[test]
    fn minterm_matches_exactly_one_assignment() {
        for a in Assignment::all(4) {
            let m = Cube::minterm(a);
            assert!(m.is_minterm());
            let hits: Vec<_> = Assignment::all(4).filter(|b| m.matches(*b).unwrap()).collect();
            assert_eq!(hits, vec![a]);
        }
    }

    #[test]
    fn parity_factor_invariants() {
        assert!(ParityFactor::new(1, 1, Phase::Odd).is_err());
        let c = Cube::parse(3, "x1").unwrap();
        assert!(c.with_parity(ParityFactor::new(0, 1, Phase::Odd).unwrap()).is_err());
        assert!(Cube::parse(3, "(x1^x2) x1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["1", "x2 ~x3", "(x1^x2) x3", "~x1 (x2^~x3)"] {
            let c = Cube::parse(3, text).unwrap();
            assert_eq!(c.to_string(), text);
        }
    }

    #[test]
    fn canonical_order() {
        let mut cubes: Vec<Cube> = ["x1 x3", "x2", "(x1^x2) x3", "x2 ~x3", "~x2"]
            .iter()
            .map(|t| Cube::parse(3, t).unwrap())
            .collect();
        cubes.sort();
        let names: Vec<String> = cubes.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["~x2", "x2", "x2 ~x3", "x1 x3", "(x1^x2) x3"]);
    }

    #[test]
    fn xor_single_cases() {
        let a = Cube::from_pattern("01-").unwrap();
        let b = Cube::from_pattern("11-").unwrap();
        assert_eq!(a.xor_single(&b), Some(Cube::from_pattern("-1-").unwrap()));
        let c = Cube::from_pattern("-1-").unwrap();
        let d = Cube::from_pattern("-11").unwrap();
        assert_eq!(c.xor_single(&d), Some(Cube::from_pattern("-10").unwrap()));
        let e = Cube::from_pattern("10-").unwrap();
        assert_eq!(a.xor_single(&e), None);
    }
}
