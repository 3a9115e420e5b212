//! The published tables as data: bracket-notation cells, the row dataset,
//! the abelianization regression and the twice-Γ_ab survey.

mod cell;
mod dataset;
mod heuristic;
mod verify;

pub use cell::{format_group_cell, parse_group_cell, GroupCell};
pub use dataset::{Dataset, Linearity, PaperRow, BUNDLED, BUNDLED_ROW_COUNTS};
pub use heuristic::{heuristic_survey, twice_heuristic, Outcome, Survey, PUBLISHED_EXCEPTIONS};
pub use verify::{
    compute_orbits, family_layout, gamma_ab, verify_abelianizations, ClassReport, ClassStatus,
    ComputedClass, ComputedQ, Family, Labels, Layout, Report, RowReport, RowStatus,
};
