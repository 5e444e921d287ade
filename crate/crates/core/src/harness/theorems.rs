use std::collections::HashSet;

use super::coverage::{
    coverage_size, verify_coverage_sampled, verify_coverage_with_guard, DEFAULT_GUARD,
};
use super::VerificationReport;
use crate::bitword::BitWord;
use crate::labeling::{label_upper_bound, label_upper_bound_from_count};
use crate::mask_set::{count_lower_bound, count_upper_bound, MaskSet, MaskSetBuilder};
use crate::reed_muller::{anf_degree, generator_matrix, plotkin_generator};

const SAMPLES: u64 = 2000;

/// Runs the construction checks for every `1 <= s <= s_max`,
/// `max(s, 1) <= m <= m_max`: count bounds, nesting, Reed-Muller
/// membership, generator-row containment and coverage (exhaustive under
/// the default guard, sampled above it).
pub fn verify_theorems(s_max: usize, m_max: u32) -> VerificationReport {
    verify_theorems_with_guard(s_max, m_max, Some(DEFAULT_GUARD))
}

pub fn verify_theorems_with_guard(
    s_max: usize,
    m_max: u32,
    guard: Option<u128>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut builder = MaskSetBuilder::new();
    for s in 1..=s_max {
        for m in (s.max(1) as u32)..=m_max {
            let params = format!("s={s} m={m}");
            let set = match builder.build(s, m) {
                Ok(set) => set,
                Err(e) => {
                    report.run("build", "construction", params, || {
                        (false, e.to_string(), "mask set".into())
                    });
                    continue;
                }
            };
            let prev = (s >= 2).then(|| builder.build(s - 1, m).expect("smaller s is valid"));
            check_set(&mut report, &set, prev.as_ref(), guard);
        }
    }
    report
}

fn check_set(
    report: &mut VerificationReport,
    set: &MaskSet,
    prev: Option<&MaskSet>,
    guard: Option<u128>,
) {
    let (s, m) = (set.s(), set.m());
    let params = format!("s={s} m={m}");

    report.run(
        "count_upper_bound",
        "N <= 2^s m^(s-1)",
        params.clone(),
        || {
            let bound = count_upper_bound(s, m);
            (
                set.len() as u128 <= bound,
                set.len().to_string(),
                format!("<= {bound}"),
            )
        },
    );
    report.run(
        "count_lower_bound",
        "N >= 2 dim RM(s-1,m)",
        params.clone(),
        || {
            let bound = count_lower_bound(s, m);
            (
                set.len() as u128 >= bound,
                set.len().to_string(),
                format!(">= {bound}"),
            )
        },
    );
    if let Some(prev) = prev {
        report.run("nesting", "M(s-1,m) in M(s,m)", params.clone(), || {
            let missing = prev
                .masks()
                .iter()
                .filter(|w| set.index_of(w).is_none())
                .count();
            (
                missing == 0,
                format!("{missing} missing"),
                "0 missing".into(),
            )
        });
    }
    report.run(
        "rm_membership",
        "M(s,m) in RM(s-1,m)",
        params.clone(),
        || {
            let max_deg = set.masks().iter().filter_map(anf_degree).max().unwrap_or(0);
            let bound = s as u32 - 1;
            (
                max_deg <= bound,
                format!("max degree {max_deg}"),
                format!("<= {bound}"),
            )
        },
    );
    report.run(
        "generator_rows",
        "G(s-1,m) rows in M(s,m)",
        params.clone(),
        || {
            let r = (s - 1) as u32;
            let rows = generator_matrix(r.min(m), m);
            let plotkin = plotkin_generator(r as i64, m);
            let missing = rows
                .rows()
                .iter()
                .chain(plotkin.rows())
                .flat_map(|g| [g.clone(), g.complement()])
                .filter(|w| set.index_of(w).is_none())
                .count();
            (
                missing == 0,
                format!("{missing} missing"),
                "0 missing".into(),
            )
        },
    );
    if s == 2 {
        report.run(
            "s2_structure",
            "M(2,m) = G(1,m) and complements",
            params.clone(),
            || {
                let expected: HashSet<BitWord> = generator_matrix(1, m)
                    .rows()
                    .iter()
                    .flat_map(|g| [g.clone(), g.complement()])
                    .collect();
                let actual: HashSet<BitWord> = set.masks().iter().cloned().collect();
                let ok = set.len() == 2 * (m as usize + 1) && actual == expected;
                (
                    ok,
                    set.len().to_string(),
                    format!("{} = G(1,m) rows and complements", 2 * (m + 1)),
                )
            },
        );
    }
    if s >= 2 {
        // informational: the count-substituted bound is meant to dominate the
        // pair bound but falls below it for small m
        report.run(
            "label_upper_bounds",
            "pair bound <= count-substituted bound",
            params.clone(),
            || {
                let pair = label_upper_bound(s, set.len());
                let substituted = label_upper_bound_from_count(s, m);
                let note = if (pair as i128) > substituted {
                    " (reversed)"
                } else {
                    ""
                };
                (
                    true,
                    format!("{pair} vs {substituted}{note}"),
                    "reported only".into(),
                )
            },
        );
    }
    report.run("coverage", "covers any s defects", params, || {
        let total = coverage_size(s, m);
        match verify_coverage_with_guard(set, guard) {
            Ok(c) => (
                c.passed(),
                format!("{}/{}", c.covered, c.checked),
                format!("{total}/{total}"),
            ),
            Err(_) => {
                let c = verify_coverage_sampled(set, SAMPLES, (s as u64) << 32 | m as u64);
                (
                    c.passed(),
                    format!("sampled {}/{}", c.covered, c.checked),
                    format!("sampled {SAMPLES}/{SAMPLES}"),
                )
            }
        }
    });
}
