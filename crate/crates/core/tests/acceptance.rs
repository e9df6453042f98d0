//! Acceptance suite: one test per criterion, exact arithmetic throughout.
//!
//! Every test prints a single `ACCEPTANCE <id> ... PASS` line on success
//! (run with `--nocapture` to see them); a failed assertion marks the
//! criterion failed.

mod common;

use common::{
    decomposable_battery, freeness_battery, mixed_battery, tuple_battery, BATTERY_SEED,
};
use partact::battery::catalog_groups;
use partact::decomp::{check_decomposition, equivariant_unit_system, globalize, check_enveloping, stratify};
use partact::group::FiniteGroup;
use partact::structure::{crossed_product_structure, partial_group_algebra, k_theory};
use partact::tuples::{enumerate_tuples, full_tuple_space_action, orbit_data, tuple_action};
use partact::verify::{
    build_corner, build_expectation, build_psi, freeness_equivalence, realize_crossed_product,
};

#[test]
fn criterion_01_tuple_space_theorem() {
    for group in catalog_groups() {
        let name = group.name().unwrap_or("?").to_string();
        for n in 1..=group.order() {
            let pa = tuple_action(&group, n);
            assert!(
                pa.validate().is_empty(),
                "Lt({name}, {n}) must be a valid partial action"
            );
            for k in 1..=group.order() {
                let outcome = check_decomposition(&pa, k);
                assert_eq!(
                    outcome.is_ok(),
                    k == n,
                    "Lt({name}, {n}) decomposition check at k={k}"
                );
            }
        }
    }
    println!("ACCEPTANCE 01 tuple-space theorem: PASS");
}

#[test]
fn criterion_02_stabilizer_coset_data() {
    for group in catalog_groups() {
        for n in 1..=group.order() {
            for tau in enumerate_tuples(&group, n) {
                let data = orbit_data(&group, &tau);
                let h = data.stabilizer.order();
                assert_eq!(n % h, 0, "stabilizer order divides n");
                assert_eq!(data.m, n / h - 1);

                // The coset decomposition reconstructs the tuple.
                let mut rebuilt = Vec::new();
                for &x in &data.reps {
                    for &hh in data.stabilizer.members() {
                        rebuilt.push(group.mul(hh, x));
                    }
                }
                rebuilt.sort_unstable();
                assert_eq!(rebuilt, tau.members());

                // Representative uniqueness, brute-forced for small n: any
                // alternative list decomposing the tuple is a permutation
                // of stabilizer translates of the canonical one.
                if n <= 4 && data.m >= 1 {
                    let m = data.m;
                    let members = tau.members();
                    let coset_of = |y: usize| {
                        let mut c: Vec<usize> = data
                            .stabilizer
                            .members()
                            .iter()
                            .map(|&hh| group.mul(hh, y))
                            .collect();
                        c.sort_unstable();
                        c
                    };
                    let mut canon_cosets: Vec<Vec<usize>> =
                        data.reps[1..].iter().map(|&x| coset_of(x)).collect();
                    canon_cosets.sort();

                    let total = members.len().pow(m as u32);
                    let mut valid_lists = 0;
                    for code in 0..total {
                        let mut alternative = Vec::with_capacity(m);
                        let mut c = code;
                        for _ in 0..m {
                            alternative.push(members[c % members.len()]);
                            c /= members.len();
                        }
                        // Does 1, y_1, ..., y_m decompose the tuple?
                        let mut covered: Vec<usize> = data.stabilizer.members().to_vec();
                        let mut disjoint = true;
                        for &y in &alternative {
                            for &hh in data.stabilizer.members() {
                                let v = group.mul(hh, y);
                                if covered.contains(&v) {
                                    disjoint = false;
                                } else {
                                    covered.push(v);
                                }
                            }
                        }
                        covered.sort_unstable();
                        if !(disjoint && covered == members) {
                            continue;
                        }
                        valid_lists += 1;
                        // Then the coset multiset matches the canonical one.
                        let mut alt_cosets: Vec<Vec<usize>> =
                            alternative.iter().map(|&y| coset_of(y)).collect();
                        alt_cosets.sort();
                        assert_eq!(
                            alt_cosets, canon_cosets,
                            "alternative representatives must be stabilizer translates"
                        );
                    }
                    assert!(valid_lists >= 1, "the canonical list itself decomposes");
                }
            }
        }
    }
    println!("ACCEPTANCE 02 stabilizer and coset data: PASS");
}

#[test]
fn criterion_03_partial_group_algebra() {
    let cases: Vec<(FiniteGroup, usize, Vec<&str>)> = vec![
        (FiniteGroup::cyclic(2), 3, vec!["M_1[triv]", "M_1[C2]"]),
        (FiniteGroup::cyclic(3), 8, vec!["M_1[triv]", "M_2[triv]", "M_1[C3]"]),
        (
            FiniteGroup::cyclic(4),
            20,
            vec!["M_1[triv]", "M_2[triv]", "M_1[C2]", "M_3[triv]", "M_1[C4]"],
        ),
        (FiniteGroup::symmetric(3), 112, vec![]),
    ];
    for (group, dim, blocks) in cases {
        let report = partial_group_algebra(&group, 24).expect("within cap");
        assert_eq!(report.total_dimension, dim, "{:?}", group);
        if !blocks.is_empty() {
            let rendered: Vec<String> = report.blocks.iter().map(|b| b.render()).collect();
            assert_eq!(rendered, blocks);
        }
        // Brute-force oracle: the realization of the full tuple-space
        // action counts the basis Σ_g |T(G)_g| exactly.
        let oracle = realize_crossed_product(&full_tuple_space_action(&group));
        assert_eq!(report.total_dimension, oracle.dimension());
    }
    let z4 = partial_group_algebra(&FiniteGroup::cyclic(4), 24).unwrap();
    assert_eq!(k_theory(&z4), (9, 0));
    println!("ACCEPTANCE 03 partial group algebra: PASS");
}

#[test]
fn criterion_04_dimension_conservation() {
    let mut checked = 0;
    for (name, pa) in tuple_battery().into_iter().chain(mixed_battery()) {
        let report = crossed_product_structure(&pa);
        let realized = realize_crossed_product(&pa);
        assert_eq!(
            report.total_dimension,
            realized.dimension(),
            "dimension conservation on {name}"
        );
        let domain_count: usize = (0..pa.group().order())
            .map(|g| pa.domain(g).len())
            .sum();
        assert_eq!(report.total_dimension, domain_count, "{name}");
        checked += 1;
    }
    assert!(checked >= 50 + 42, "battery too small: {checked}");
    println!("ACCEPTANCE 04 dimension conservation on {checked} instances: PASS");
}

#[test]
fn criterion_05_psi_isomorphism() {
    let mut checked = 0;
    for (name, pa) in decomposable_battery() {
        assert!(pa.group().order() <= 8 && pa.points() <= 24);
        let n = partact::decomp::detect_parameter(&pa).expect("decomposable battery");
        let cert = check_decomposition(&pa, n).expect("certificate");
        for summand in &cert.summands {
            // The canonical base and one alternative base point.
            let psi = build_psi(&pa, &summand.base).expect("psi builds");
            assert!(psi.passed(), "{name}: psi checks failed: {:?}", psi.checks);
            if let Some(other) = summand.orbit.iter().find(|t| **t != summand.base) {
                let psi = build_psi(&pa, other).expect("psi builds");
                assert!(psi.passed(), "{name}: psi at alternative base failed");
            }
            checked += 1;
        }
    }
    println!("ACCEPTANCE 05 psi isomorphism on {checked} summands: PASS");
}

#[test]
fn criterion_06_conditional_expectation() {
    let mut checked = 0;
    for (name, pa) in decomposable_battery() {
        let e = build_expectation(&pa, BATTERY_SEED).expect("decomposable");
        assert!(e.passed(), "{name}: expectation checks failed: {:?}", e.checks);
        checked += 1;
    }
    println!("ACCEPTANCE 06 conditional expectation on {checked} instances: PASS");
}

#[test]
fn criterion_07_corner_embedding() {
    let mut checked = 0;
    for (name, pa) in decomposable_battery() {
        let corner = build_corner(&pa, BATTERY_SEED).expect("decomposable");
        assert!(corner.passed(), "{name}: corner checks failed: {:?}", corner.checks);
        checked += 1;
    }
    println!("ACCEPTANCE 07 corner embedding on {checked} instances: PASS");
}

#[test]
fn criterion_08_freeness_equivalence() {
    let mut free = 0;
    let mut non_free = 0;
    for (name, pa, expected_free) in freeness_battery() {
        let verdict = freeness_equivalence(&pa).expect("battery instances verify");
        assert_eq!(verdict.free, expected_free, "{name}: freeness expectation");
        assert!(verdict.pass, "{name}: freeness must agree with corner fullness");
        assert_eq!(verdict.corner_full, expected_free, "{name}");
        if expected_free {
            free += 1;
        } else {
            non_free += 1;
        }
    }
    assert!(free >= 5 && non_free >= 5, "{free} free / {non_free} non-free");
    println!("ACCEPTANCE 08 freeness <=> corner fullness ({free} free, {non_free} non-free): PASS");
}

#[test]
fn criterion_09_globalization() {
    let mut checked = 0;
    for (name, pa) in decomposable_battery() {
        let glob = globalize(&pa).expect("decomposable");
        let report = check_enveloping(&pa, &glob);
        assert!(report.passed(), "{name}: enveloping conditions: {:?}", report.conditions);
        // Envelope size per summand is [G : H] * |X_tau|.
        let expected: usize = glob
            .summands
            .iter()
            .map(|s| s.coset_reps.len() * s.slice.len())
            .sum();
        assert_eq!(glob.envelope.points(), expected, "{name}");
        let n = partact::decomp::detect_parameter(&pa).unwrap();
        let cert = check_decomposition(&pa, n).unwrap();
        let by_formula: usize = cert
            .summands
            .iter()
            .map(|s| {
                (pa.group().order() / s.data.stabilizer.order()) * s.piece_points[0].len()
            })
            .sum();
        assert_eq!(glob.envelope.points(), by_formula, "{name}");
        checked += 1;
    }
    println!("ACCEPTANCE 09 globalization on {checked} instances: PASS");
}

#[test]
fn criterion_10_stratification() {
    let battery = mixed_battery();
    assert!(battery.len() >= 50);
    for (name, pa) in &battery {
        let types = pa.point_types();
        let strat = stratify(pa);
        // Strata partition the points by type size.
        let mut seen = vec![false; pa.points()];
        for stratum in &strat.strata {
            for (&orig, t) in stratum.points.iter().zip(stratum.points.iter().map(|&x| &types[x])) {
                assert_eq!(t.len(), stratum.k, "{name}");
                assert!(!seen[orig], "{name}: strata must be disjoint");
                seen[orig] = true;
            }
            // Invariance: every map edge of the stratum stays inside it.
            assert!(stratum.action.validate().is_empty(), "{name}");
            // Each stratum has its own decomposition parameter.
            assert!(
                check_decomposition(&stratum.action, stratum.k).is_ok(),
                "{name}: stratum k={} fails its decomposition check",
                stratum.k
            );
        }
        assert!(seen.iter().all(|&s| s), "{name}: strata must cover");
        // Reassembling the strata reproduces the instance.
        let rebuilt = strat.reassemble(pa.group(), pa.points());
        assert_eq!(&rebuilt, pa, "{name}");
    }
    println!("ACCEPTANCE 10 stratification on {} instances: PASS", battery.len());
}

#[test]
fn criterion_11_equivariant_units() {
    let mut checked = 0;
    for (name, pa) in decomposable_battery() {
        let units = equivariant_unit_system(&pa).expect("decomposable");
        assert!(units.matches_domain_indicators, "{name}");
        assert!(
            units.relation_failures.is_empty(),
            "{name}: failing pairs {:?}",
            units.relation_failures
        );
        assert_eq!(units.pairs_checked, pa.group().order() * pa.group().order());
        checked += 1;
    }
    println!("ACCEPTANCE 11 equivariant unit systems on {checked} instances: PASS");
}
