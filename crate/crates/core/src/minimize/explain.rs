use std::collections::BTreeMap;
use std::fmt;

use super::rules::{rule1_merge, rule2_merge, xor_table};
use crate::error::{Error, Result};
use crate::logic::{full_mask, Cube, Literal, ParityCover, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Two gates differing in one polarity become one gate.
    RuleI,
    /// Two gates differing in two polarities become a C-NOT-conjugated gate.
    RuleII,
    /// A minterm gate is inserted twice (the pair is the identity).
    RuleIIIInsert,
    /// Two equal gates cancel.
    RuleIIICancel,
    /// Commuting gates are put in canonical order.
    Reorder,
    /// Fallback: the whole cover is replaced by an equivalent one.
    Resynthesized,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::RuleI => "RULE_I",
            Rule::RuleII => "RULE_II",
            Rule::RuleIIIInsert => "RULE_III_INSERT",
            Rule::RuleIIICancel => "RULE_III_CANCEL",
            Rule::Reorder => "REORDER",
            Rule::Resynthesized => "RESYNTHESIZED",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rewrite: the gates in `before` (a sub-multiset of the current product)
/// are replaced by `after`, which has the same exclusive-or.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub before: Vec<Cube>,
    pub after: Vec<Cube>,
    pub note: String,
}

fn list(cubes: &[Cube]) -> String {
    let parts: Vec<String> = cubes.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} -> {}",
            self.rule,
            list(&self.before),
            list(&self.after)
        )?;
        if !self.note.is_empty() {
            write!(f, "  ({})", self.note)?;
        }
        Ok(())
    }
}

/// Applies `steps` to the gates of `from`, returning the resulting sequence.
pub fn replay(from: &ParityCover, steps: &[RewriteStep]) -> Result<Vec<Cube>> {
    let n = from.arity();
    let mut bag = from.cubes().to_vec();
    for s in steps {
        if xor_table(n, &s.before) != xor_table(n, &s.after) {
            return Err(Error::InvalidCover);
        }
        if s.rule == Rule::Reorder || s.rule == Rule::Resynthesized {
            let mut have = bag.clone();
            let mut want = s.before.clone();
            have.sort();
            want.sort();
            if s.rule == Rule::Reorder && have != want {
                return Err(Error::InvalidCover);
            }
            bag = s.after.clone();
            continue;
        }
        for c in &s.before {
            let i = bag.iter().position(|x| x == c).ok_or(Error::InvalidCover)?;
            bag.remove(i);
        }
        bag.extend(s.after.iter().copied());
    }
    Ok(bag)
}

/// Rewrite trace from the minterm cover `from` to an equivalent cover `to`.
///
/// Extra minterm pairs are inserted first, then each cube of `to` is
/// assembled from its minterms by Rule I splits (on the lowest absent
/// variable) and Rule II merges. Every step is checked and the trace is
/// replayed; if any of that fails, or `from` is not made of minterms, a single
/// resynthesis step is returned instead.
pub fn explain(from: &ParityCover, to: &ParityCover) -> Result<Vec<RewriteStep>> {
    if from.arity() != to.arity() {
        return Err(Error::ArityMismatch {
            expected: from.arity(),
            found: to.arity(),
        });
    }
    if from.to_table() != to.to_table() {
        return Err(Error::InvalidCover);
    }
    if from == to {
        return Ok(Vec::new());
    }
    let fallback = || {
        vec![RewriteStep {
            rule: Rule::Resynthesized,
            before: from.cubes().to_vec(),
            after: to.cubes().to_vec(),
            note: "equivalent cover substituted as a whole".into(),
        }]
    };
    if !from.cubes().iter().all(|c| c.is_minterm()) {
        return Ok(fallback());
    }
    match trace(from, to) {
        Some(steps) if replay(from, &steps).ok().as_deref() == Some(to.cubes()) => Ok(steps),
        _ => Ok(fallback()),
    }
}

fn trace(from: &ParityCover, to: &ParityCover) -> Option<Vec<RewriteStep>> {
    let mut needed: BTreeMap<Cube, usize> = BTreeMap::new();
    for c in to.cubes() {
        for m in expand(c) {
            *needed.entry(m).or_default() += 1;
        }
    }
    let mut steps = Vec::new();
    for c in from.cubes() {
        needed.entry(*c).or_default();
    }
    for (m, &want) in &needed {
        let have = usize::from(from.contains(m));
        if want < have || (want - have) % 2 != 0 {
            return None;
        }
        for _ in 0..(want - have) / 2 {
            steps.push(RewriteStep {
                rule: Rule::RuleIIIInsert,
                before: vec![],
                after: vec![*m, *m],
                note: format!("{m} applied twice is the identity"),
            });
        }
    }
    let mut bag: Vec<Cube> = from.cubes().to_vec();
    for s in &steps {
        bag.extend(s.after.iter().copied());
    }
    for c in to.cubes() {
        build(c, &mut bag, &mut steps)?;
    }
    if bag.as_slice() != to.cubes() {
        steps.push(RewriteStep {
            rule: Rule::Reorder,
            before: bag,
            after: to.cubes().to_vec(),
            note: "gates on the same target commute".into(),
        });
    }
    Some(steps)
}

/// Minterms of `c` in ascending index order.
fn expand(c: &Cube) -> Vec<Cube> {
    let n = c.arity();
    let mut out = Vec::new();
    c.for_each_match(|i| out.push(Cube::from_masks(n, full_mask(n), i)));
    out.sort();
    out
}

fn build(c: &Cube, bag: &mut Vec<Cube>, steps: &mut Vec<RewriteStep>) -> Option<()> {
    if c.is_minterm() {
        return Some(());
    }
    let (a, b, rule, note) = match c.parity() {
        None => {
            let v = (0..c.arity()).find(|&v| c.literal(v) == Literal::Absent)?;
            let a = c.with_literal(v, Literal::Negative);
            let b = c.with_literal(v, Literal::Positive);
            let note = format!("x{0} + ~x{0} = 1", v + 1);
            (a, b, Rule::RuleI, note)
        }
        Some(p) => {
            let (x, y) = p.vars();
            let base = c.without_parity();
            let (la, lb) = match p.phase() {
                Phase::Odd => (Literal::Negative, Literal::Positive),
                Phase::Even => (Literal::Positive, Literal::Positive),
            };
            let flip = |l: Literal| match l {
                Literal::Positive => Literal::Negative,
                _ => Literal::Positive,
            };
            let a = base.with_literal(x, la).with_literal(y, lb);
            let b = base.with_literal(x, flip(la)).with_literal(y, flip(lb));
            let note = format!("C-NOT conjugation on x{} and x{}", x + 1, y + 1);
            (a, b, Rule::RuleII, note)
        }
    };
    build(&a, bag, steps)?;
    build(&b, bag, steps)?;
    let merged = match rule {
        Rule::RuleI => rule1_merge(&a, &b),
        _ => rule2_merge(&a, &b),
    }?;
    if merged != *c {
        return None;
    }
    for x in [&a, &b] {
        let i = bag.iter().position(|y| y == x)?;
        bag.remove(i);
    }
    bag.push(*c);
    steps.push(RewriteStep {
        rule,
        before: vec![a, b],
        after: vec![*c],
        note,
    });
    Some(())
}
