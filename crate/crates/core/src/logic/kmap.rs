use std::fmt::Write;

use super::cover::ParityCover;
use super::table::{var_mask, Assignment, TruthTable};
use crate::error::{Error, Result};

/// Gray-ordered grid geometry for 3- and 4-variable functions.
///
/// Rows run over the leading variables, columns over the trailing two, so
/// `n = 3` gives a 2x4 grid over `x1 | x2 x3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMapLayout {
    n: usize,
    row_vars: Vec<usize>,
    col_vars: Vec<usize>,
}

/// Reflected binary Gray sequence over `bits` bits.
pub fn gray_sequence(bits: usize) -> Vec<u32> {
    (0..1u32 << bits).map(|i| i ^ (i >> 1)).collect()
}

impl KMapLayout {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=4).contains(&n) {
            return Err(Error::UnsupportedArity(n));
        }
        Ok(Self {
            n,
            row_vars: (0..n - 2).collect(),
            col_vars: (n - 2..n).collect(),
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn row_vars(&self) -> &[usize] {
        &self.row_vars
    }

    pub fn col_vars(&self) -> &[usize] {
        &self.col_vars
    }

    pub fn row_labels(&self) -> Vec<String> {
        labels(self.row_vars.len())
    }

    pub fn col_labels(&self) -> Vec<String> {
        labels(self.col_vars.len())
    }

    /// `grid[r][c]` is the assignment shown in row `r`, column `c`.
    pub fn cells(&self) -> Vec<Vec<Assignment>> {
        let rows = gray_sequence(self.row_vars.len());
        let cols = gray_sequence(self.col_vars.len());
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        let mut index = 0u32;
                        place(self.n, &self.row_vars, r, &mut index);
                        place(self.n, &self.col_vars, c, &mut index);
                        Assignment::new(self.n, index).expect("index within range")
                    })
                    .collect()
            })
            .collect()
    }

    /// ASCII map of `f`. With a cover, each cell also lists the letters of
    /// the groups containing it, and a legend checks the parity rule.
    pub fn render(&self, f: &TruthTable, cover: Option<&ParityCover>) -> Result<String> {
        if f.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: f.arity(),
            });
        }
        if let Some(cov) = cover {
            if cov.arity() != self.n {
                return Err(Error::ArityMismatch {
                    expected: self.n,
                    found: cov.arity(),
                });
            }
        }
        let letters: Vec<char> = (b'A'..=b'Z').chain(b'a'..=b'z').map(char::from).collect();
        let groups: &[_] = cover.map(|c| c.cubes()).unwrap_or(&[]);
        let names = |vars: &[usize]| -> String {
            vars.iter().map(|v| format!("x{}", v + 1)).collect()
        };
        let cells = self.cells();
        let cell_text = |x: Assignment| -> String {
            let mut s = String::from(if f.value(x.index()) { "1" } else { "0" });
            let tags: String = groups
                .iter()
                .zip(&letters)
                .filter(|(g, _)| g.matches_index(x.index()))
                .map(|(_, l)| *l)
                .collect();
            if !tags.is_empty() {
                s.push(':');
                s.push_str(&tags);
            }
            s
        };
        let width = cells
            .iter()
            .flatten()
            .map(|&x| cell_text(x).len())
            .chain(std::iter::once(self.col_vars.len()))
            .max()
            .unwrap_or(1)
            + 2;
        let row_head = names(&self.row_vars);
        let head_w = row_head.len().max(self.row_vars.len()) + 2;

        let mut out = String::new();
        writeln!(out, "{:head_w$}{}", "", names(&self.col_vars)).unwrap();
        write!(out, "{row_head:<head_w$}").unwrap();
        for l in self.col_labels() {
            write!(out, "{l:<width$}").unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        for (label, row) in self.row_labels().iter().zip(&cells) {
            write!(out, "{label:<head_w$}").unwrap();
            for &x in row {
                write!(out, "{:<width$}", cell_text(x)).unwrap();
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }

        if let Some(cov) = cover {
            if cov.is_empty() {
                out.push_str("no groups\n");
                return Ok(out);
            }
            out.push('\n');
            for (g, l) in groups.iter().zip(&letters) {
                writeln!(out, "{l} = {g}").unwrap();
            }
            let mut ok = true;
            for x in Assignment::all(self.n) {
                let k = cov.coverage(x);
                let one = f.value(x.index());
                if (k % 2 == 1) != one {
                    ok = false;
                    writeln!(
                        out,
                        "cell {x}: {}-cell in {k} groups (violates parity rule)",
                        one as u8
                    )
                    .unwrap();
                } else if !one && k > 0 {
                    writeln!(out, "cell {x}: 0-cell in {k} groups").unwrap();
                } else if one && k > 1 {
                    writeln!(out, "cell {x}: 1-cell in {k} groups").unwrap();
                }
            }
            writeln!(
                out,
                "parity rule: {}",
                if ok {
                    "ok (1-cells odd, 0-cells even)"
                } else {
                    "VIOLATED"
                }
            )
            .unwrap();
        }
        Ok(out)
    }
}

fn place(n: usize, vars: &[usize], code: u32, index: &mut u32) {
    let k = vars.len();
    for (j, &v) in vars.iter().enumerate() {
        if code >> (k - 1 - j) & 1 == 1 {
            *index |= var_mask(n, v);
        }
    }
}

fn labels(bits: usize) -> Vec<String> {
    gray_sequence(bits)
        .into_iter()
        .map(|g| format!("{g:0bits$b}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn differ_in_one(a: Assignment, b: Assignment) -> bool {
        (a.index() ^ b.index()).count_ones() == 1
    }

    #[test]
    fn three_variable_labels() {
        let k = KMapLayout::new(3).unwrap();
        assert_eq!(k.col_labels(), ["00", "01", "11", "10"]);
        assert_eq!(k.row_labels(), ["0", "1"]);
        let cells = k.cells();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0][3].to_string(), "010");
        // wraparound: 000 sits next to 010
        assert!(differ_in_one(cells[0][0], cells[0][3]));
        assert_eq!(cells[0][0].index() ^ cells[0][3].index(), var_mask(3, 1));
    }

    #[test]
    fn adjacency_with_wraparound() {
        for n in [3, 4] {
            let cells = KMapLayout::new(n).unwrap().cells();
            let (r, c) = (cells.len(), cells[0].len());
            let mut all: Vec<u32> = cells.iter().flatten().map(|x| x.index()).collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 1 << n);
            for i in 0..r {
                for j in 0..c {
                    assert!(differ_in_one(cells[i][j], cells[i][(j + 1) % c]));
                    if r > 1 {
                        assert!(differ_in_one(cells[i][j], cells[(i + 1) % r][j]));
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_arity() {
        assert!(KMapLayout::new(2).is_err());
        assert!(KMapLayout::new(5).is_err());
    }

    #[test]
    fn renders_f_b() {
        let f = TruthTable::from_hex(3, "36").unwrap();
        let k = KMapLayout::new(3).unwrap();
        let text = k.render(&f, None).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].trim(), "x2x3");
        assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["0", "0", "0", "1", "1"]);
        assert_eq!(lines[3].split_whitespace().collect::<Vec<_>>(), ["1", "0", "1", "0", "1"]);

        let cov = ParityCover::parse(3, "x2, x1 x3").unwrap();
        let text = k.render(&f, Some(&cov)).unwrap();
        assert!(text.contains("0:AB"), "{text}");
        assert!(text.contains("cell 111: 0-cell in 2 groups"), "{text}");
        assert!(text.contains("parity rule: ok"), "{text}");
    }
}
