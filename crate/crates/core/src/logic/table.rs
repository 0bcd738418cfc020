use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

pub const MAX_ARITY: usize = 20;

/// Bit of the assignment index that holds variable `var` (0-based, x1 = 0).
///
/// x1 is the most significant bit, so row `i` of a table reads `x1 x2 .. xn`
/// as the binary digits of `i`.
#[inline]
pub fn var_mask(n: usize, var: usize) -> u32 {
    debug_assert!(var < n);
    1 << (n - 1 - var)
}

/// An input assignment `(x1, .., xn)`, stored as its row index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    n: usize,
    index: u32,
}

impl Assignment {
    pub fn new(n: usize, index: u32) -> Result<Self> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::UnsupportedArity(n));
        }
        if (index as u64) >= (1u64 << n) {
            return Err(Error::InvalidCube(format!(
                "assignment index {index} out of range for {n} variables"
            )));
        }
        Ok(Self { n, index })
    }

    /// Builds an assignment from bits given in `x1..xn` order.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let n = bits.len();
        let mut index = 0u32;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidCube(format!("bit value {b}")));
            }
            index = (index << 1) | b as u32;
        }
        Self::new(n, index)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Value of variable `var` (0-based).
    pub fn bit(&self, var: usize) -> bool {
        self.index & var_mask(self.n, var) != 0
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.n).map(|v| self.bit(v) as u8).collect()
    }

    pub fn all(n: usize) -> impl Iterator<Item = Assignment> {
        (0..1u32 << n).map(move |index| Assignment { n, index })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            f.write_str(if self.bit(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A total Boolean function `f: {0,1}^n -> {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::UnsupportedArity(n));
        }
        if values.len() != 1 << n {
            return Err(Error::ArityMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(Assignment) -> bool) -> Result<Self> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::UnsupportedArity(n));
        }
        let values = Assignment::all(n).map(f).collect();
        Ok(Self { n, values })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::new(n, vec![value; 1usize.checked_shl(n as u32).unwrap_or(0)])
    }

    /// Builds a table from the low `2^n` bits of `bits`, row 0 in the most
    /// significant position (so `0x36` with `n = 3` reads `00110110`).
    pub fn from_u64(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::UnsupportedArity(n));
        }
        let rows = 1usize << n;
        let values = (0..rows).map(|i| bits >> (rows - 1 - i) & 1 == 1).collect();
        Ok(Self { n, values })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn eval(&self, x: Assignment) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: x.arity(),
            });
        }
        Ok(self.values[x.index() as usize])
    }

    #[inline]
    pub fn value(&self, index: u32) -> bool {
        self.values[index as usize]
    }

    pub fn ones(&self) -> impl Iterator<Item = Assignment> + '_ {
        Assignment::all(self.n).filter(|x| self.values[x.index() as usize])
    }

    pub fn count_ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    /// Values as a big-endian hex string, row 0 in the most significant bit.
    pub fn to_hex(&self) -> String {
        let rows = self.values.len();
        let digits = rows.div_ceil(4);
        let pad = digits * 4 - rows;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for b in 0..4 {
                let pos = d * 4 + b;
                let bit = pos >= pad && self.values[pos - pad];
                nibble = (nibble << 1) | bit as u32;
            }
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        out
    }

    /// Parses the value sequence from a hex string: the `2^n`-bit number it
    /// denotes, row 0 in the most significant bit.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::UnsupportedArity(n));
        }
        let rows = 1usize << n;
        let digits = rows.div_ceil(4);
        let hex = hex.trim();
        if hex.len() != digits {
            return Err(Error::InvalidCube(format!(
                "expected {digits} hex digits for {n} variables, found {}",
                hex.len()
            )));
        }
        let pad = digits * 4 - rows;
        let mut bits = Vec::with_capacity(digits * 4);
        for c in hex.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::InvalidCube(format!("bad hex digit `{c}`")))?;
            for b in (0..4).rev() {
                bits.push(d >> b & 1 == 1);
            }
        }
        if bits[..pad].iter().any(|&b| b) {
            return Err(Error::InvalidCube(format!(
                "hex value too wide for {n} variables"
            )));
        }
        Self::new(n, bits.split_off(pad))
    }

    /// Parses the text format: `vars <n>` followed either by `hex <digits>`
    /// or by all `2^n` rows `<bits> <0|1>` in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (lno, header) = lines.next().ok_or_else(|| parse_err(1, "missing `vars` line"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["vars", n] => n
                .parse::<usize>()
                .map_err(|_| parse_err(lno, format!("bad arity `{n}`")))?,
            _ => return Err(parse_err(lno, "expected `vars <n>`")),
        };
        if n == 0 || n > MAX_ARITY {
            return Err(parse_err(lno, format!("arity {n} outside 1..={MAX_ARITY}")));
        }

        let rows = 1usize << n;
        let mut values: Vec<Option<bool>> = vec![None; rows];
        let mut seen_rows = 0usize;
        let mut hex_table = None;
        for (lno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                ["hex", digits] => {
                    if hex_table.is_some() || seen_rows > 0 {
                        return Err(parse_err(lno, "unexpected `hex` line"));
                    }
                    hex_table = Some(
                        Self::from_hex(n, digits).map_err(|e| parse_err(lno, e.to_string()))?,
                    );
                }
                [input, output] => {
                    if hex_table.is_some() {
                        return Err(parse_err(lno, "rows after `hex` line"));
                    }
                    if input.len() != n || !input.chars().all(|c| c == '0' || c == '1') {
                        return Err(parse_err(lno, format!("bad input bits `{input}`")));
                    }
                    let value = match output {
                        "0" => false,
                        "1" => true,
                        other => {
                            return Err(parse_err(
                                lno,
                                format!("output must be 0 or 1, found `{other}`"),
                            ))
                        }
                    };
                    let index = usize::from_str_radix(input, 2).unwrap();
                    if values[index].replace(value).is_some() {
                        return Err(parse_err(lno, format!("duplicate row `{input}`")));
                    }
                    seen_rows += 1;
                }
                _ => return Err(parse_err(lno, format!("unrecognized line `{line}`"))),
            }
        }

        if let Some(t) = hex_table {
            return Ok(t);
        }
        if seen_rows != rows {
            return Err(parse_err(
                text.lines().count(),
                format!("expected {rows} rows, found {seen_rows}"),
            ));
        }
        Self::new(n, values.into_iter().map(Option::unwrap).collect())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.n)?;
        writeln!(f, "hex {}", self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_b() -> TruthTable {
        TruthTable::new(
            3,
            [0, 0, 1, 1, 0, 1, 1, 0].iter().map(|&v| v == 1).collect(),
        )
        .unwrap()
    }

    #[test]
    fn hex_matches_row_listing() {
        let rows = "vars 3\n000 0\n001 0\n010 1\n011 1\n100 0\n101 1\n110 1\n111 0\n";
        let hex = "# f_b\nvars 3\nhex 36\n";
        assert_eq!(TruthTable::parse(rows).unwrap(), f_b());
        assert_eq!(TruthTable::parse(hex).unwrap(), f_b());
        assert_eq!(f_b().to_hex(), "36");
    }

    #[test]
    fn rows_in_any_order() {
        let rows = "vars 2\n11 1\n00 0\n10 1\n01 1\n";
        let t = TruthTable::parse(rows).unwrap();
        assert_eq!(t.values(), &[false, true, true, true]);
    }

    #[test]
    fn small_arity_hex() {
        let t = TruthTable::from_hex(1, "1").unwrap();
        assert_eq!(t.values(), &[false, true]);
        assert_eq!(t.to_hex(), "1");
        assert!(TruthTable::from_hex(1, "4").is_err());
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(TruthTable::parse("vars 2\n00 0\n01 1\n10 1\n").is_err());
        assert!(TruthTable::parse("vars 2\n00 0\n00 1\n10 1\n11 0\n").is_err());
        assert!(TruthTable::parse("vars 2\n00 0\n01 -\n10 1\n11 0\n").is_err());
        assert!(TruthTable::parse("vars 0\n").is_err());
        assert!(TruthTable::parse("vars 3\nhex 360\n").is_err());
        assert!(TruthTable::parse("hex 36\n").is_err());
    }

    #[test]
    fn assignment_bits_are_msb_first() {
        let x = Assignment::from_bits(&[1, 0, 1]).unwrap();
        assert_eq!(x.index(), 5);
        assert!(x.bit(0) && !x.bit(1) && x.bit(2));
        assert_eq!(x.to_string(), "101");
    }

    #[test]
    fn display_round_trips() {
        let t = f_b();
        assert_eq!(TruthTable::parse(&t.to_string()).unwrap(), t);
    }
}
