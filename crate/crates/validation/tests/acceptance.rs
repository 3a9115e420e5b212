//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use atwo::abelian::{smith_diagonal, snf, AbelianGroup, IntMatrix};
use atwo::gf::PrimePower;
use atwo::plane::{check_difference_set, SingerPlane};
use atwo::tables::{
    compute_orbits, family_layout, format_group_cell, gamma_ab, heuristic_survey, parse_group_cell,
    verify_abelianizations, ComputedQ, Dataset, Outcome, RowStatus, BUNDLED,
};
use atwo::tripres::{
    classify_central_forms, enumerate_all_invariant, enumerate_invariant, twist_multiplier,
    twist_translation, CentralForm,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRng, TestRunner};

/// Wall-clock budget for criterion 1.
const REGRESSION_BUDGET: Duration = Duration::from_secs(60);
const SNF_CASES: usize = 1000;
const SNF_MAX_DIM: usize = 6;
const SNF_BOUND: i64 = 20;
const MINORS_MAX_DIM: usize = 4;
const MIN_CELLS: usize = 150;
const TABLE_QS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 11];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn g(orders: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(0, orders)
}

fn criterion_1(ds: &Dataset, computed: &[ComputedQ], elapsed: Duration) -> Verdict {
    let mut problems = Vec::new();
    let report = verify_abelianizations(ds, computed, None).expect("layout");
    if !report.is_ok() {
        for r in report.rows.iter().filter(|r| {
            !matches!(
                r.status,
                RowStatus::Matched { .. } | RowStatus::NotConstructible(_)
            )
        }) {
            problems.push(format!("q={} {} {}", r.q, r.name, r.status));
        }
        problems.push(format!(
            "{} mismatched classes, {} translation failures",
            report
                .classes
                .iter()
                .filter(|c| c.status == atwo::tables::ClassStatus::Mismatched)
                .count(),
            report.translation_failures.len()
        ));
    }

    let by_q = |q: u32| computed.iter().find(|c| c.q == q).unwrap();
    // spot anchors
    let two = by_q(2);
    if !two.classes.iter().all(|c| c.orbit[0] == g(&[2, 2, 2, 3])) {
        problems.push("q=2 classes are not [(3)2,3]".into());
    }
    let pair: BTreeSet<AbelianGroup> = two.classes[0].orbit[1..].iter().cloned().collect();
    if pair != BTreeSet::from([g(&[2, 3, 7]), g(&[2, 3])]) {
        problems.push(format!("q=2 twist pair {pair:?}"));
    }
    for (q, expected) in [
        (5, g(&[3, 5, 5, 5])),
        (8, g(&[2, 2, 2, 2, 2, 2, 2, 2, 2, 3])),
        (11, g(&[2, 2, 2, 3])),
    ] {
        if !by_q(q).classes.iter().any(|c| c.orbit[0] == expected) {
            problems.push(format!("q={q}: no class with {expected}"));
        }
    }

    // per inversion orbit the twist-orbit multiset equals the table column
    for cq in computed.iter().filter(|c| c.q >= 4) {
        let mut ours: Vec<AbelianGroup> = cq
            .classes
            .iter()
            .filter(|c| cq.enumeration.classes[c.index].inverse_class >= c.index)
            .flat_map(|c| c.orbit.clone())
            .collect();
        let mut theirs: Vec<AbelianGroup> = ds
            .rows_for(cq.q)
            .filter(|r| r.name != "Voskuil")
            .map(|r| r.gamma_ab.clone())
            .collect();
        ours.sort();
        theirs.sort();
        if ours != theirs {
            problems.push(format!("q={}: Γ_ab multiset differs", cq.q));
        }
    }

    // translation twists for q = 4, 7 abelianize like the class they land in
    for q in [4, 7] {
        let cq = by_q(q);
        for (class, c) in cq.enumeration.classes.iter().zip(&cq.classes) {
            let (b, cc) = twist_translation(&class.representative.presentation).unwrap();
            for (t, target) in [
                (b, c.translation.unwrap()[0]),
                (cc, c.translation.unwrap()[1]),
            ] {
                let Some(target) = target else {
                    problems.push(format!(
                        "q={q} c{}: translation twist not enumerated",
                        c.index + 1
                    ));
                    continue;
                };
                if gamma_ab(&t).unwrap() != cq.classes[target].orbit[0] {
                    problems.push(format!("q={q} c{}: translation twist Γ_ab", c.index + 1));
                }
            }
        }
    }

    if elapsed > REGRESSION_BUDGET {
        problems.push(format!("took {elapsed:?}"));
    }
    let matched = report.count(|s| matches!(s, RowStatus::Matched { .. }));
    let skipped = report.count(|s| matches!(s, RowStatus::NotConstructible(_)));
    verdict(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{matched} rows matched, {skipped} not constructible, {elapsed:.2?}")
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_2(ds: &Dataset, computed: &[ComputedQ]) -> Verdict {
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for cq in computed {
        counts.push(format!(
            "q={}:{}/{}",
            cq.q,
            cq.classes.len(),
            cq.enumeration.inversion_orbits()
        ));
    }
    for q in [2, 3] {
        let n = computed.iter().find(|c| c.q == q).unwrap().classes.len();
        if n != 2 {
            problems.push(format!("q={q}: {n} classes"));
        }
    }
    let report = verify_abelianizations(ds, computed, None).expect("layout");
    for q in [5, 7, 8, 9, 11] {
        let layout = family_layout(ds, q).unwrap();
        for family in &layout.families {
            let row = report
                .rows
                .iter()
                .find(|r| r.q == q && r.name == family.name())
                .unwrap();
            if !matches!(row.status, RowStatus::Matched { .. }) {
                problems.push(format!("q={q} {} {}", family.name(), row.status));
            }
        }
        if q == 11 && layout.families.len() != 8 {
            problems.push(format!("q=11 has {} families", layout.families.len()));
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "classes/inversion-orbits {} {}",
            counts.join(" "),
            problems.join("; ")
        ),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let plane = SingerPlane::build(2).unwrap();
    let brute: BTreeSet<(u32, u32, Vec<[u32; 3]>)> = common::brute_force_q2()
        .into_iter()
        .map(|(a, b, t)| (a, b, t.into_iter().collect()))
        .collect();
    let reduced: BTreeSet<(u32, u32, Vec<[u32; 3]>)> = (0..plane.n())
        .flat_map(|b| enumerate_invariant(&plane, b))
        .map(|ip| {
            let c = ip.presentation.correspondence();
            (
                c.multiplier(),
                c.shift(),
                ip.presentation.triples().to_vec(),
            )
        })
        .collect();
    verdict(
        brute == reduced,
        format!(
            "{} brute-force vs {} reduced, {:.2?}",
            brute.len(),
            reduced.len(),
            start.elapsed()
        ),
    )
}

fn criterion_4() -> Verdict {
    let mut problems = Vec::new();
    let mut checked = 0;
    for &q in PrimePower::supported() {
        let plane = SingerPlane::build(q as u64).unwrap();
        for class in enumerate_all_invariant(&plane).classes {
            let p = class.representative.presentation;
            if p.is_q_fixed() {
                let mut t = p.clone();
                for _ in 0..3 {
                    t = twist_multiplier(&t, 1).unwrap();
                }
                if t.triples() != p.triples() {
                    problems.push(format!("q={q} c{}: cube of twist", class.index + 1));
                }
                checked += 1;
            }
            if q % 3 == 1 {
                let forms = classify_central_forms(&p).unwrap();
                if forms.len() != 2 {
                    problems.push(format!("q={q} c{}: forms {forms:?}", class.index + 1));
                }
                let (b, c) = twist_translation(&p).unwrap();
                for (t, steps) in [(b, 1), (c, 2)] {
                    if !t.is_singer_invariant() || !t.is_valid() {
                        problems.push(format!(
                            "q={q} c{}: translation twist invalid",
                            class.index + 1
                        ));
                    }
                    let moved: BTreeSet<CentralForm> = forms
                        .iter()
                        .map(|f| (0..steps).fold(*f, |f, _| f.next()))
                        .collect();
                    if classify_central_forms(&t).unwrap() != moved {
                        problems.push(format!("q={q} c{}: forms not permuted", class.index + 1));
                    }
                }
            }
        }
    }
    verdict(
        problems.is_empty(),
        format!("{checked} q-fixed classes {}", problems.join("; ")),
    )
}

fn criterion_5() -> Verdict {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    let strategy = (1..=SNF_MAX_DIM, 1..=SNF_MAX_DIM).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-SNF_BOUND..=SNF_BOUND, c), r)
    });
    let mut problems = Vec::new();
    let mut oracle_checks = 0;
    for case in 0..SNF_CASES {
        let rows = strategy.new_tree(&mut runner).unwrap().current();
        let m = IntMatrix::from_rows(&rows);
        let r = snf(&m);
        let diag = r.diagonal();
        let chain = diag.windows(2).all(|w| {
            !w[0].is_negative()
                && if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
        }) && diag.iter().all(|d| !d.is_negative());
        let ok = r.u.mul(&m).mul(&r.v) == r.d
            && r.d.is_diagonal()
            && chain
            && r.u.determinant().abs().is_one()
            && r.v.determinant().abs().is_one();
        if !ok {
            problems.push(format!("case {case}: certificate"));
        }
        if m.rows() <= MINORS_MAX_DIM && m.cols() <= MINORS_MAX_DIM {
            let expected: Vec<BigInt> = common::invariants_from_minors(&rows)
                .into_iter()
                .map(BigInt::from)
                .collect();
            if smith_diagonal(&m) != expected {
                problems.push(format!("case {case}: minors"));
            }
            oracle_checks += 1;
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "{SNF_CASES} matrices, {oracle_checks} against minors {}",
            problems.join("; ")
        ),
    )
}

fn criterion_6() -> Verdict {
    let mut bad = Vec::new();
    for &q in PrimePower::supported() {
        let plane = SingerPlane::build(q as u64).unwrap();
        let report = check_difference_set(plane.n(), q, plane.block());
        if plane.block().len() != q as usize + 1 || !report.is_ok() {
            bad.push(q);
        }
    }
    verdict(
        bad.is_empty(),
        format!("q in {:?}, failing {bad:?}", PrimePower::supported()),
    )
}

fn criterion_7() -> Verdict {
    let mut cells = 0;
    let mut bad = Vec::new();
    for (i, line) in BUNDLED.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        for text in line.split('|').skip(3) {
            cells += 1;
            let ok = parse_group_cell(text).is_ok_and(|c| {
                let f = format_group_cell(&c);
                parse_group_cell(&f).is_ok_and(|d| d == c && format_group_cell(&d) == f)
            });
            if !ok {
                bad.push(format!("line {}: {text:?}", i + 1));
            }
        }
    }
    verdict(
        bad.is_empty() && cells >= MIN_CELLS,
        format!("{cells} cells {}", bad.join("; ")),
    )
}

fn criterion_8(ds: &Dataset) -> Verdict {
    let s = heuristic_survey(ds);
    let outside = s.fails_outside_q3();
    let q3 = (s.outcome(3, "1.2"), s.outcome(3, "4.1"));
    let ok = s.matches_published() && q3 == (Some(Outcome::Holds), Some(Outcome::Fails));
    let q3_fails = s.fails.iter().filter(|r| r.q == 3).count();
    verdict(
        ok,
        format!(
            "fails outside q=3: {outside:?}; q=3 1.2 {:?}, 4.1 {:?}; {q3_fails} q=3 rows fail",
            q3.0, q3.1
        ),
    )
}

fn main() {
    let ds = Dataset::bundled();
    let start = Instant::now();
    let computed: Vec<ComputedQ> = TABLE_QS
        .iter()
        .map(|&q| compute_orbits(q).unwrap())
        .collect();
    let elapsed = start.elapsed();

    let results = [
        ("Γ_ab regression", criterion_1(&ds, &computed, elapsed)),
        ("enumeration counts", criterion_2(&ds, &computed)),
        ("q=2 oracle equivalence", criterion_3()),
        ("twist algebra", criterion_4()),
        ("SNF property suite", criterion_5()),
        ("difference sets", criterion_6()),
        ("notation parser", criterion_7()),
        ("heuristic survey", criterion_8(&ds)),
    ];
    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, v.detail.trim());
        failed += usize::from(!v.ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
