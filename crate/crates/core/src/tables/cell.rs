//! The bracket notation used in the tables.
//!
//! `m [a,(j)b,...]` is ℤ^m ⊕ ℤ_a ⊕ ℤ_b^j ⊕ …; the leading rank is optional
//! and its absence is kept distinct from an explicit `0`.

use std::fmt;

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// A parsed table cell: optional free rank plus torsion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupCell {
    pub rank: Option<usize>,
    pub torsion: AbelianGroup,
}

impl GroupCell {
    /// The whole group, with an absent rank read as 0.
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::free(self.rank.unwrap_or(0)).direct_sum(&self.torsion)
    }
}

impl fmt::Display for GroupCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.rank {
            write!(f, "{r} ")?;
        }
        write!(f, "{}", self.torsion)
    }
}

pub fn parse_group_cell(text: &str) -> Result<GroupCell> {
    parse_cell_at(text, 1, 1)
}

pub fn format_group_cell(cell: &GroupCell) -> String {
    cell.to_string()
}

/// Parses `text`, reporting errors at `line` with columns offset so that
/// column `base` is the first character of `text`.
pub(crate) fn parse_cell_at(text: &str, line: usize, base: usize) -> Result<GroupCell> {
    let mut c = Cursor {
        chars: text.chars().collect(),
        pos: 0,
        line,
        base,
    };
    c.skip_ws();
    let rank = if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let r = c.number()?;
        c.skip_ws();
        Some(r as usize)
    } else {
        None
    };
    c.expect('[')?;
    let mut orders = Vec::new();
    c.skip_ws();
    if c.peek() != Some(']') {
        loop {
            c.skip_ws();
            let (count, order) = if c.peek() == Some('(') {
                c.pos += 1;
                c.skip_ws();
                let at = c.pos;
                let j = c.number()?;
                if j == 0 {
                    c.pos = at;
                    return Err(c.error("repetition count must be positive"));
                }
                c.skip_ws();
                c.expect(')')?;
                c.skip_ws();
                (j, c.order()?)
            } else {
                (1, c.order()?)
            };
            orders.extend(std::iter::repeat_n(order, count as usize));
            c.skip_ws();
            match c.peek() {
                Some(',') => c.pos += 1,
                Some(']') => break,
                _ => return Err(c.error("expected ',' or ']'")),
            }
        }
    }
    c.expect(']')?;
    c.skip_ws();
    if c.peek().is_some() {
        return Err(c.error("trailing characters after ']'"));
    }
    Ok(GroupCell {
        rank,
        torsion: AbelianGroup::from_cyclic_orders(0, &orders),
    })
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    base: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::parse(self.line, self.base + self.pos, message)
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{ch}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn order(&mut self) -> Result<u64> {
        let at = self.pos;
        let n = self.number()?;
        if n < 2 {
            self.pos = at;
            return Err(self.error("cyclic order must be at least 2"));
        }
        Ok(n)
    }
}
