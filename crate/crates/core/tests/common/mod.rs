//! Shared battery builders for the integration suites.
//!
//! Everything here is deterministic: randomized instances come from fixed
//! seeds, so failures reproduce.

// Each test target uses its own subset of the builders.
#![allow(dead_code)]

use partact::action::PartialAction;
use partact::battery::{
    catalog_groups, coset_action, induced_summand, random_decomposable, random_partial_action,
    rng,
};
use partact::group::{subgroup_generated, FiniteGroup, Subgroup};
use partact::tuples::{tuple_action, Tuple};

pub const BATTERY_SEED: u64 = 0xACC0;

/// All tuple actions of the catalogued groups.
pub fn tuple_battery() -> Vec<(String, PartialAction)> {
    let mut out = Vec::new();
    for group in catalog_groups() {
        for n in 1..=group.order() {
            let name = format!("Lt({}, {n})", group.name().unwrap_or("?"));
            out.push((name, tuple_action(&group, n)));
        }
    }
    out
}

/// The three worked examples used throughout the corner and freeness
/// statements.
pub fn worked_examples() -> Vec<(String, PartialAction)> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    vec![
        (
            "regular Z2".to_string(),
            PartialAction::global(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]),
        ),
        (
            "trivial-global Z2 point".to_string(),
            PartialAction::global(z2, 1, vec![vec![0], vec![0]]),
        ),
        ("Lt(C3, 2)".to_string(), tuple_action(&z3, 2)),
    ]
}

/// Decomposable instances with at most 24 points: small tuple actions,
/// the worked examples, and seeded random summand unions.
pub fn decomposable_battery() -> Vec<(String, PartialAction)> {
    let mut out: Vec<(String, PartialAction)> = tuple_battery()
        .into_iter()
        .filter(|(_, pa)| pa.points() <= 24 && pa.points() > 0)
        .collect();
    out.extend(worked_examples());
    let mut r = rng(BATTERY_SEED);
    for group in catalog_groups() {
        for n in [1, 2, group.order()] {
            if n > group.order() {
                continue;
            }
            let pa = random_decomposable(&group, n, 2, &mut r);
            if pa.points() > 0 && pa.points() <= 24 {
                let name = format!("random({}, n={n})", group.name().unwrap_or("?"));
                out.push((name, pa));
            }
        }
    }
    out
}

/// At least 50 randomized valid instances, usually of mixed type.
pub fn mixed_battery() -> Vec<(String, PartialAction)> {
    let mut out = Vec::new();
    let mut r = rng(BATTERY_SEED + 1);
    let groups = catalog_groups();
    let mut i = 0;
    while out.len() < 50 {
        let group = &groups[i % groups.len()];
        i += 1;
        let pa = random_partial_action(group, &mut r);
        let name = format!("mixed#{i}({})", group.name().unwrap_or("?"));
        out.push((name, pa));
    }
    out
}

/// Decomposable instances with a known freeness verdict: at least five
/// free and five non-free, including the three worked examples.
pub fn freeness_battery() -> Vec<(String, PartialAction, bool)> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let z4 = FiniteGroup::cyclic(4);
    let z5 = FiniteGroup::cyclic(5);
    let s3 = FiniteGroup::symmetric(3);
    let d4 = FiniteGroup::dihedral(4);
    let q8 = FiniteGroup::quaternion();

    let h02 = subgroup_generated(&z4, &[2]);
    let a3 = subgroup_generated(&s3, &[3]);
    assert_eq!(a3.order(), 3, "element 3 of S3 is a 3-cycle");
    let refl = subgroup_generated(&d4, &[4]);

    vec![
        // Free.
        (
            "regular Z2".to_string(),
            PartialAction::global(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]),
            true,
        ),
        ("Lt(C3, 2)".to_string(), tuple_action(&z3, 2), true),
        ("regular Z5".to_string(), coset_action(&z5, &Subgroup::trivial()), true),
        (
            "induced C4 {0,1} free".to_string(),
            induced_summand(&z4, &Tuple::new(vec![0, 1]), &[Subgroup::trivial()]),
            true,
        ),
        (
            "induced S3 transposition free".to_string(),
            induced_summand(&s3, &Tuple::new(vec![0, 1]), &[Subgroup::trivial()]),
            true,
        ),
        ("regular Q8".to_string(), coset_action(&q8, &Subgroup::trivial()), true),
        // Non-free.
        (
            "trivial-global Z2 point".to_string(),
            PartialAction::global(z2, 1, vec![vec![0], vec![0]]),
            false,
        ),
        (
            "induced C4 {0,2} fixed".to_string(),
            induced_summand(&z4, &Tuple::new(vec![0, 2]), std::slice::from_ref(&h02)),
            false,
        ),
        ("C4 mod {0,2}".to_string(), coset_action(&z4, &h02), false),
        (
            "induced S3 A3 fixed".to_string(),
            induced_summand(&s3, &Tuple::new(a3.members().to_vec()), std::slice::from_ref(&a3)),
            false,
        ),
        (
            "trivial-global Z3 pair".to_string(),
            PartialAction::global(z3, 2, vec![vec![0, 1], vec![0, 1], vec![0, 1]]),
            false,
        ),
        ("D4 mod reflection".to_string(), coset_action(&d4, &refl), false),
    ]
}
