use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::cell::{parse_cell_at, GroupCell};
use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// The transcription shipped with the crate.
pub const BUNDLED: &str = include_str!("../../data/tables.txt");

/// Rows per q in the bundled transcription.
pub const BUNDLED_ROW_COUNTS: [(u32, usize); 8] = [
    (2, 9),
    (3, 90),
    (4, 6),
    (5, 7),
    (7, 19),
    (8, 6),
    (9, 9),
    (11, 24),
];

/// How a row's group arises, as annotated in the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Linearity {
    FunctionField,
    PAdic,
    Nonlinear,
    Unspecified,
}

impl Linearity {
    pub fn as_str(self) -> &'static str {
        match self {
            Linearity::FunctionField => "function-field",
            Linearity::PAdic => "p-adic",
            Linearity::Nonlinear => "nonlinear",
            Linearity::Unspecified => "unspecified",
        }
    }
}

impl FromStr for Linearity {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Ok(match s {
            "function-field" => Linearity::FunctionField,
            "p-adic" => Linearity::PAdic,
            "nonlinear" => Linearity::Nonlinear,
            "unspecified" => Linearity::Unspecified,
            _ => return Err(()),
        })
    }
}

impl fmt::Display for Linearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRow {
    pub q: u32,
    /// Label as transcribed; primes are written `'`.
    pub name: String,
    pub class: Linearity,
    pub gamma_ab: AbelianGroup,
    pub k0: GroupCell,
    pub k0_mod_id: GroupCell,
    /// Source line in the data file.
    pub line: usize,
}

impl PaperRow {
    /// `q=2 B.2`
    pub fn label(&self) -> String {
        format!("q={} {}", self.q, self.name)
    }

    /// The name without trailing primes.
    pub fn base_name(&self) -> &str {
        self.name.trim_end_matches('\'')
    }

    /// Number of trailing primes.
    pub fn twist_index(&self) -> usize {
        self.name.len() - self.base_name().len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    rows: Vec<PaperRow>,
}

impl Dataset {
    pub fn bundled() -> Dataset {
        Dataset::parse(BUNDLED).expect("bundled tables parse")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Dataset> {
        Dataset::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Dataset> {
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            rows.push(parse_row(raw, line)?);
        }
        let ds = Dataset { rows };
        ds.check()?;
        Ok(ds)
    }

    fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for row in &self.rows {
            if !seen.insert((row.q, row.name.as_str())) {
                return Err(Error::Dataset(format!(
                    "line {}: duplicate row {}",
                    row.line,
                    row.label()
                )));
            }
            if row.q == 2 && row.class == Linearity::Nonlinear {
                return Err(Error::Dataset(format!(
                    "line {}: q=2 has no nonlinear rows",
                    row.line
                )));
            }
            if let (Some(a), Some(b)) = (row.k0.rank, row.k0_mod_id.rank) {
                if a != b {
                    return Err(Error::Dataset(format!(
                        "line {}: K0 rank {a} differs from K0/[id] rank {b}",
                        row.line
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[PaperRow] {
        &self.rows
    }

    pub fn rows_for(&self, q: u32) -> impl Iterator<Item = &PaperRow> + '_ {
        self.rows.iter().filter(move |r| r.q == q)
    }

    pub fn get(&self, q: u32, name: &str) -> Option<&PaperRow> {
        self.rows.iter().find(|r| r.q == q && r.name == name)
    }

    /// Distinct q values, ascending.
    pub fn qs(&self) -> Vec<u32> {
        self.rows
            .iter()
            .map(|r| r.q)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn row_counts(&self) -> Vec<(u32, usize)> {
        self.qs()
            .into_iter()
            .map(|q| (q, self.rows_for(q).count()))
            .collect()
    }
}

fn parse_row(raw: &str, line: usize) -> Result<PaperRow> {
    let fields: Vec<&str> = raw.split('|').collect();
    if fields.len() != 6 {
        return Err(Error::parse(
            line,
            1,
            format!("expected 6 '|'-separated fields, found {}", fields.len()),
        ));
    }
    // 1-based column where each field starts
    let mut starts = Vec::with_capacity(6);
    let mut col = 1;
    for f in &fields {
        starts.push(col);
        col += f.chars().count() + 1;
    }

    let q: u32 = fields[0]
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, starts[0], format!("bad q {:?}", fields[0])))?;
    let name = fields[1].trim();
    if name.is_empty() {
        return Err(Error::parse(line, starts[1], "empty name"));
    }
    let class = fields[2]
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, starts[2], format!("unknown class {:?}", fields[2])))?;
    let gamma = parse_cell_at(fields[3], line, starts[3])?;
    if gamma.rank.is_some_and(|r| r > 0) {
        return Err(Error::parse(
            line,
            starts[3],
            "abelianization cell has a free part",
        ));
    }
    let k0 = parse_cell_at(fields[4], line, starts[4])?;
    let k0_mod_id = parse_cell_at(fields[5], line, starts[5])?;
    Ok(PaperRow {
        q,
        name: name.to_string(),
        class,
        gamma_ab: gamma.torsion,
        k0,
        k0_mod_id,
        line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_row_counts() {
        let ds = Dataset::bundled();
        assert_eq!(ds.row_counts(), BUNDLED_ROW_COUNTS.to_vec());
        let q2: Vec<&str> = ds.rows_for(2).map(|r| r.name.as_str()).collect();
        assert_eq!(
            q2,
            ["A.1", "A.1'", "A.2", "A.3", "A.4", "B.1", "B.2", "B.3", "C.1"]
        );
    }

    #[test]
    fn incomplete_row_is_kept_absent() {
        let ds = Dataset::bundled();
        let row = ds.get(9, "Semiregular 2'").unwrap();
        assert_eq!(row.k0_mod_id.rank, None);
        assert_eq!(row.k0.rank, Some(434));
        assert_eq!(row.twist_index(), 1);
        assert_eq!(row.base_name(), "Semiregular 2");
    }

    #[test]
    fn every_abelianization_is_finite() {
        assert!(Dataset::bundled()
            .rows()
            .iter()
            .all(|r| r.gamma_ab.is_finite()));
    }

    #[test]
    fn rejects_bad_files() {
        let dup = "2|A.1|p-adic|[3]|0 [3]|0 [3]\n2|A.1|p-adic|[3]|0 [3]|0 [3]\n";
        assert!(matches!(Dataset::parse(dup), Err(Error::Dataset(_))));
        let nonlinear = "2|X|nonlinear|[3]|0 [3]|0 [3]\n";
        assert!(matches!(Dataset::parse(nonlinear), Err(Error::Dataset(_))));
        let ranks = "3|X|nonlinear|[3]|4 [3]|5 [3]\n";
        assert!(matches!(Dataset::parse(ranks), Err(Error::Dataset(_))));
        let cell = "3|X|nonlinear|[3]|4 [3|4 [3]\n";
        assert!(matches!(
            Dataset::parse(cell),
            Err(Error::Parse {
                line: 1,
                column: 23,
                ..
            })
        ));
        let fields = "3|X|nonlinear|[3]\n";
        assert!(matches!(Dataset::parse(fields), Err(Error::Parse { .. })));
    }
}
