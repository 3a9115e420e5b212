//! Abelianization regression: enumerated classes and their twists against
//! the Γ_ab column.
//!
//! The tables group rows into twist families (a presentation and its two
//! multiplier twists). Published numbering inside a q is not reproducible,
//! so a computed class matches a family when the multiset of abelianizations
//! over its twist orbit equals the family's.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use super::dataset::Dataset;
use crate::abelian::{abelianization, AbelianGroup};
use crate::error::{Error, Result};
use crate::plane::SingerPlane;
use crate::tripres::{
    affine_canonical_form, classify_central_forms, enumerate_all_invariant, twist_multiplier,
    twist_translation, CentralForm, Enumeration, GroupPresentation, TrianglePresentation,
};

pub fn gamma_ab(p: &TrianglePresentation) -> Result<AbelianGroup> {
    abelianization(&GroupPresentation::from_triangles(p))
}

#[derive(Debug, Clone)]
pub struct ComputedClass {
    pub index: usize,
    pub fingerprint: String,
    pub q_fixed: bool,
    /// Γ_ab of T, then of T′ and T″ when T is fixed by j ↦ qj.
    pub orbit: Vec<AbelianGroup>,
    /// Classes holding the translation twists B and C (q ≡ 1 mod 3 only);
    /// `None` inside marks a twist that landed outside the enumeration.
    pub translation: Option<[Option<usize>; 2]>,
    pub central_forms: Option<BTreeSet<CentralForm>>,
}

impl ComputedClass {
    pub fn orbit_key(&self) -> Vec<AbelianGroup> {
        sorted(&self.orbit)
    }

    pub fn orbit_string(&self) -> String {
        let parts: Vec<String> = self.orbit.iter().map(|g| g.to_string()).collect();
        parts.join(" ")
    }
}

#[derive(Debug, Clone)]
pub struct ComputedQ {
    pub q: u32,
    pub modulus: String,
    pub enumeration: Enumeration,
    pub classes: Vec<ComputedClass>,
}

/// Enumerates the invariant classes for q and abelianizes every twist.
pub fn compute_orbits(q: u32) -> Result<ComputedQ> {
    let plane = SingerPlane::build(q as u64)?;
    let enumeration = enumerate_all_invariant(&plane);
    let index: HashMap<_, usize> = enumeration
        .classes
        .iter()
        .map(|c| (c.key.clone(), c.index))
        .collect();
    let classes = enumeration
        .classes
        .par_iter()
        .map(|class| -> Result<ComputedClass> {
            let p = &class.representative.presentation;
            let q_fixed = p.is_q_fixed();
            let mut orbit = vec![gamma_ab(p)?];
            if q_fixed {
                orbit.push(gamma_ab(&twist_multiplier(p, 1)?)?);
                orbit.push(gamma_ab(&twist_multiplier(p, 2)?)?);
            }
            let (translation, central_forms) = if q % 3 == 1 {
                let (b, c) = twist_translation(p)?;
                let find = |t: &TrianglePresentation| index.get(&affine_canonical_form(t)).copied();
                (Some([find(&b), find(&c)]), Some(classify_central_forms(p)?))
            } else {
                (None, None)
            };
            Ok(ComputedClass {
                index: class.index,
                fingerprint: class.key.fingerprint(),
                q_fixed,
                orbit,
                translation,
                central_forms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComputedQ {
        q,
        modulus: plane.field().modulus_string(),
        enumeration,
        classes,
    })
}

/// A presentation and its twists as laid out in the tables, in twist order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub q: u32,
    pub members: Vec<String>,
    pub orbit: Vec<AbelianGroup>,
}

impl Family {
    pub fn name(&self) -> &str {
        &self.members[0]
    }

    pub fn orbit_key(&self) -> Vec<AbelianGroup> {
        sorted(&self.orbit)
    }
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub families: Vec<Family>,
    /// Rows outside the Singer-invariant construction, with a reason.
    pub not_constructible: Vec<(String, &'static str)>,
}

const VOSKUIL: &str = "presentation not given in the source";
const OUT_OF_SCOPE: &str = "not a Singer-invariant presentation";

/// Family structure of the rows for q.
///
/// For q = 2 and q = 3 the first block lists one presentation X.1, its
/// twists X.2 and X.3, and a second presentation X.1′ whose twists are the
/// same two rows in the other order. Elsewhere a family is `name`, `name′`,
/// `name″`.
pub fn family_layout(ds: &Dataset, q: u32) -> Result<Layout> {
    let gamma = |name: &str| {
        ds.get(q, name)
            .map(|r| r.gamma_ab.clone())
            .ok_or_else(|| Error::Dataset(format!("q={q}: family member {name} is missing")))
    };
    let family = |members: Vec<String>| -> Result<Family> {
        let orbit = members.iter().map(|m| gamma(m)).collect::<Result<_>>()?;
        Ok(Family { q, members, orbit })
    };

    let mut families = Vec::new();
    let mut not_constructible = Vec::new();
    if q == 2 || q == 3 {
        let stem = if q == 2 { "A" } else { "1" };
        let n = |i: &str| format!("{stem}.{i}");
        families.push(family(vec![n("1"), n("2"), n("3")])?);
        families.push(family(vec![n("1'"), n("3"), n("2")])?);
        let used: BTreeSet<String> = families.iter().flat_map(|f| f.members.clone()).collect();
        for row in ds.rows_for(q) {
            if !used.contains(&row.name) {
                not_constructible.push((row.name.clone(), OUT_OF_SCOPE));
            }
        }
    } else {
        let mut bases: Vec<&str> = Vec::new();
        for row in ds.rows_for(q) {
            if row.name == "Voskuil" {
                not_constructible.push((row.name.clone(), VOSKUIL));
            } else if !bases.contains(&row.base_name()) {
                bases.push(row.base_name());
            }
        }
        for base in bases {
            families.push(family(vec![
                base.to_string(),
                format!("{base}'"),
                format!("{base}''"),
            ])?);
        }
        for row in ds.rows_for(q) {
            if row.name != "Voskuil" && row.twist_index() > 2 {
                return Err(Error::Dataset(format!("unexpected row {}", row.label())));
            }
        }
    }
    Ok(Layout {
        families,
        not_constructible,
    })
}

/// Names for canonical keys, one `q fingerprint name` per line.
#[derive(Debug, Clone, Default)]
pub struct Labels {
    map: BTreeMap<(u32, String), String>,
}

impl Labels {
    pub fn parse(text: &str) -> Result<Labels> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.splitn(3, char::is_whitespace);
            let (Some(q), Some(fp), Some(name)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(idx + 1, 1, "expected: q fingerprint name"));
            };
            let q: u32 = q
                .parse()
                .map_err(|_| Error::parse(idx + 1, 1, format!("bad q {q:?}")))?;
            if map
                .insert((q, fp.to_string()), name.trim().to_string())
                .is_some()
            {
                return Err(Error::parse(
                    idx + 1,
                    1,
                    format!("duplicate label for {fp}"),
                ));
            }
        }
        Ok(Labels { map })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Labels> {
        Labels::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, q: u32, fingerprint: &str) -> Option<&str> {
        self.map
            .get(&(q, fingerprint.to_string()))
            .map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Matched {
        class: usize,
    },
    /// A labeled class whose orbit differs from the row's family.
    Mismatched {
        class: usize,
    },
    Unmatched,
    NotConstructible(&'static str),
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Matched { class } => write!(f, "matched c{}", class + 1),
            RowStatus::Mismatched { class } => write!(f, "MISMATCH c{}", class + 1),
            RowStatus::Unmatched => f.write_str("UNMATCHED"),
            RowStatus::NotConstructible(why) => write!(f, "not constructible ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassStatus {
    /// Matched to the named family.
    Assigned(String),
    /// Same orbit as the named family, which already has a class.
    Surplus(String),
    Mismatched,
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub q: u32,
    pub name: String,
    pub gamma_ab: AbelianGroup,
    pub status: RowStatus,
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub q: u32,
    pub index: usize,
    pub fingerprint: String,
    pub orbit: Vec<AbelianGroup>,
    pub status: ClassStatus,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<RowReport>,
    pub classes: Vec<ClassReport>,
    /// (q, class index) whose translation twist left the enumeration.
    pub translation_failures: Vec<(u32, usize)>,
    pub label_errors: Vec<String>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.rows.iter().all(|r| {
            matches!(
                r.status,
                RowStatus::Matched { .. } | RowStatus::NotConstructible(_)
            )
        }) && self
            .classes
            .iter()
            .all(|c| c.status != ClassStatus::Mismatched)
            && self.translation_failures.is_empty()
            && self.label_errors.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&RowStatus) -> bool) -> usize {
        self.rows.iter().filter(|r| pred(&r.status)).count()
    }
}

pub fn verify_abelianizations(
    ds: &Dataset,
    computed: &[ComputedQ],
    labels: Option<&Labels>,
) -> Result<Report> {
    let mut report = Report::default();
    for cq in computed {
        verify_q(ds, cq, labels, &mut report)?;
    }
    Ok(report)
}

fn verify_q(
    ds: &Dataset,
    cq: &ComputedQ,
    labels: Option<&Labels>,
    report: &mut Report,
) -> Result<()> {
    let q = cq.q;
    let layout = family_layout(ds, q)?;
    let families = &layout.families;
    let mut family_class: Vec<Option<usize>> = vec![None; families.len()];
    let mut family_mismatch: Vec<Option<usize>> = vec![None; families.len()];
    let mut class_family: Vec<Option<usize>> = vec![None; cq.classes.len()];

    if let Some(labels) = labels {
        for class in &cq.classes {
            let Some(name) = labels.get(q, &class.fingerprint) else {
                continue;
            };
            let Some(f) = families.iter().position(|f| f.name() == name) else {
                report.label_errors.push(format!(
                    "q={q} c{}: no family named {name:?}",
                    class.index + 1
                ));
                continue;
            };
            if family_class[f].is_some() || family_mismatch[f].is_some() {
                report
                    .label_errors
                    .push(format!("q={q}: family {name:?} labeled more than once"));
            } else if families[f].orbit_key() == class.orbit_key() {
                family_class[f] = Some(class.index);
                class_family[class.index] = Some(f);
            } else {
                family_mismatch[f] = Some(class.index);
            }
        }
    }

    // prefer one class per inversion pair before using the partner
    let enumeration = &cq.enumeration;
    let mut order: Vec<usize> = (0..cq.classes.len()).collect();
    order.sort_by_key(|&i| (enumeration.classes[i].inverse_class < i, i));
    for (f, family) in families.iter().enumerate() {
        if family_class[f].is_some() || family_mismatch[f].is_some() {
            continue;
        }
        let key = family.orbit_key();
        let labeled =
            |i: usize| labels.is_some_and(|l| l.get(q, &cq.classes[i].fingerprint).is_some());
        if let Some(&i) = order.iter().find(|&&i| {
            class_family[i].is_none() && !labeled(i) && cq.classes[i].orbit_key() == key
        }) {
            family_class[f] = Some(i);
            class_family[i] = Some(f);
        }
    }

    for class in &cq.classes {
        let status = match class_family[class.index] {
            Some(f) => ClassStatus::Assigned(families[f].name().to_string()),
            None => match families.iter().find(|f| f.orbit_key() == class.orbit_key()) {
                Some(f) => ClassStatus::Surplus(f.name().to_string()),
                None => ClassStatus::Mismatched,
            },
        };
        report.classes.push(ClassReport {
            q,
            index: class.index,
            fingerprint: class.fingerprint.clone(),
            orbit: class.orbit.clone(),
            status,
        });
        if let Some(targets) = class.translation {
            if targets.iter().any(Option::is_none) {
                report.translation_failures.push((q, class.index));
            }
        }
    }

    for row in ds.rows_for(q) {
        let status = if let Some((_, why)) = layout
            .not_constructible
            .iter()
            .find(|(n, _)| *n == row.name)
        {
            RowStatus::NotConstructible(why)
        } else {
            let containing = || {
                families
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.members.contains(&row.name))
            };
            if let Some(class) = containing().find_map(|(f, _)| family_class[f]) {
                RowStatus::Matched { class }
            } else if let Some(class) = containing().find_map(|(f, _)| family_mismatch[f]) {
                RowStatus::Mismatched { class }
            } else {
                RowStatus::Unmatched
            }
        };
        report.rows.push(RowReport {
            q,
            name: row.name.clone(),
            gamma_ab: row.gamma_ab.clone(),
            status,
        });
    }
    Ok(())
}

fn sorted(orbit: &[AbelianGroup]) -> Vec<AbelianGroup> {
    let mut v = orbit.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(0, orders)
    }

    #[test]
    fn layouts() {
        let ds = Dataset::bundled();
        let l2 = family_layout(&ds, 2).unwrap();
        assert_eq!(l2.families.len(), 2);
        assert_eq!(l2.families[1].members, ["A.1'", "A.3", "A.2"]);
        assert_eq!(l2.not_constructible.len(), 5);
        let l11 = family_layout(&ds, 11).unwrap();
        assert_eq!(l11.families.len(), 8);
        assert!(l11.not_constructible.is_empty());
        let l5 = family_layout(&ds, 5).unwrap();
        assert_eq!(l5.families.len(), 2);
        assert_eq!(l5.not_constructible, [("Voskuil".to_string(), VOSKUIL)]);
    }

    #[test]
    fn q2_matches() {
        let ds = Dataset::bundled();
        let cq = compute_orbits(2).unwrap();
        assert_eq!(cq.classes.len(), 2);
        for c in &cq.classes {
            assert_eq!(c.orbit[0], g(&[2, 2, 2, 3]));
            assert_eq!(
                c.orbit_key(),
                sorted(&[g(&[2, 2, 2, 3]), g(&[2, 3, 7]), g(&[2, 3])])
            );
        }
        let report = verify_abelianizations(&ds, &[cq], None).unwrap();
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(report.count(|s| matches!(s, RowStatus::Matched { .. })), 4);
    }

    #[test]
    fn labels_steer_assignment() {
        let ds = Dataset::bundled();
        let cq = compute_orbits(2).unwrap();
        let text = format!(
            "# test\n2 {} A.1'\n2 {} A.1\n",
            cq.classes[0].fingerprint, cq.classes[1].fingerprint
        );
        let labels = Labels::parse(&text).unwrap();
        let report = verify_abelianizations(&ds, std::slice::from_ref(&cq), Some(&labels)).unwrap();
        assert!(report.is_ok());
        let a1 = report.rows.iter().find(|r| r.name == "A.1").unwrap();
        assert_eq!(a1.status, RowStatus::Matched { class: 1 });

        let bad = Labels::parse(&format!("2 {} B.2\n", cq.classes[0].fingerprint)).unwrap();
        let report = verify_abelianizations(&ds, &[cq], Some(&bad)).unwrap();
        assert!(!report.is_ok());
        assert_eq!(report.label_errors.len(), 1);
    }

    #[test]
    fn wrong_data_is_a_mismatch() {
        let text = Dataset::bundled()
            .rows_for(2)
            .map(|r| {
                let gamma = if r.name == "A.3" {
                    "[2]".to_string()
                } else {
                    r.gamma_ab.to_string()
                };
                format!(
                    "2|{}|{}|{}|{}|{}\n",
                    r.name, r.class, gamma, r.k0, r.k0_mod_id
                )
            })
            .collect::<String>();
        let ds = Dataset::parse(&text).unwrap();
        let report = verify_abelianizations(&ds, &[compute_orbits(2).unwrap()], None).unwrap();
        assert!(!report.is_ok());
        assert!(report
            .classes
            .iter()
            .all(|c| c.status == ClassStatus::Mismatched));
        assert_eq!(report.count(|s| *s == RowStatus::Unmatched), 4);
    }
}
