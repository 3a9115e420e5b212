//! Away from 3, is the torsion of K₀/⟨[id]⟩ twice Γ_ab?

use std::fmt;

use super::dataset::{Dataset, PaperRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    /// Both sides are trivial away from 3.
    Vacuous,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Vacuous => "vacuous",
        })
    }
}

pub fn twice_heuristic(row: &PaperRow) -> Outcome {
    let observed = row.k0_mod_id.torsion.away_from(3);
    let expected = row.gamma_ab.direct_double().away_from(3);
    if observed.is_trivial() && expected.is_trivial() {
        Outcome::Vacuous
    } else if observed == expected {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

/// Row exceptions outside q = 3 named in the source.
pub const PUBLISHED_EXCEPTIONS: [(u32, &str); 2] = [(2, "B.2"), (5, "Voskuil")];

#[derive(Debug, Clone)]
pub struct Survey<'a> {
    pub holds: Vec<&'a PaperRow>,
    pub fails: Vec<&'a PaperRow>,
    pub vacuous: Vec<&'a PaperRow>,
}

impl<'a> Survey<'a> {
    pub fn fails_outside_q3(&self) -> Vec<(u32, &'a str)> {
        self.fails
            .iter()
            .filter(|r| r.q != 3)
            .map(|r| (r.q, r.name.as_str()))
            .collect()
    }

    /// Whether the failures away from q = 3 are exactly the published ones.
    pub fn matches_published(&self) -> bool {
        self.fails_outside_q3() == PUBLISHED_EXCEPTIONS
    }

    pub fn outcome(&self, q: u32, name: &str) -> Option<Outcome> {
        let hit = |rows: &[&PaperRow]| rows.iter().any(|r| r.q == q && r.name == name);
        if hit(&self.holds) {
            Some(Outcome::Holds)
        } else if hit(&self.fails) {
            Some(Outcome::Fails)
        } else if hit(&self.vacuous) {
            Some(Outcome::Vacuous)
        } else {
            None
        }
    }
}

/// Rows keep dataset order within each list.
pub fn heuristic_survey(ds: &Dataset) -> Survey<'_> {
    let mut survey = Survey {
        holds: Vec::new(),
        fails: Vec::new(),
        vacuous: Vec::new(),
    };
    for row in ds.rows() {
        match twice_heuristic(row) {
            Outcome::Holds => survey.holds.push(row),
            Outcome::Fails => survey.fails.push(row),
            Outcome::Vacuous => survey.vacuous.push(row),
        }
    }
    survey
}
