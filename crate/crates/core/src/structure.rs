//! Symbolic structure theory of the crossed product.
//!
//! Every finite instance resolves into blocks "`d x d` matrices over the
//! group algebra of a subgroup `K`": stratify, split each stratum into
//! orbit summands `M_{m+1}(A_tau x H_tau)`, then resolve each global
//! stabilizer system on its slice into matrix algebras over point
//! stabilizers. Dimensions and K₀ ranks follow by counting; the exact
//! realizations in [`crate::verify`] provide the independent oracle that
//! the dimension bookkeeping is checked against.

use thiserror::Error;

use crate::action::PartialAction;
use crate::decomp::{check_decomposition, stratify};
use crate::group::{conjugacy_class_count_of, FiniteGroup, Subgroup};
use crate::tuples::{enumerate_tuples, orbit_data, tuple_action, tuple_orbit, Tuple};

/// Where a block came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProvenance {
    /// Type size of the stratum the block lives on.
    pub stratum_k: usize,
    /// Canonical base tuple of the orbit summand.
    pub orbit: Tuple,
    /// Minimal point index of the point orbit (in the ambient instance).
    pub point_orbit: usize,
}

/// One simple-ish block: `d x d` matrices over the group algebra of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub matrix_size: usize,
    pub coefficient_subgroup: Subgroup,
    /// Deterministic structural label of the subgroup.
    pub coefficient_label: String,
    /// Simple summands contributed: the class count of `K`.
    pub simple_summands: usize,
    pub provenance: BlockProvenance,
}

impl Block {
    /// Linear dimension `d^2 * |K|`.
    pub fn dimension(&self) -> usize {
        self.matrix_size * self.matrix_size * self.coefficient_subgroup.order()
    }

    /// Display form `M_d[K]`.
    pub fn render(&self) -> String {
        format!("M_{}[{}]", self.matrix_size, self.coefficient_label)
    }
}

/// The block decomposition of a crossed product, with totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub blocks: Vec<Block>,
    pub total_dimension: usize,
    pub k0_rank: usize,
    /// Always zero for finite-dimensional algebras.
    pub k1: usize,
}

impl StructureReport {
    fn from_blocks(blocks: Vec<Block>) -> Self {
        let total_dimension = blocks.iter().map(Block::dimension).sum();
        let k0_rank = blocks.iter().map(|b| b.simple_summands).sum();
        StructureReport { blocks, total_dimension, k0_rank, k1: 0 }
    }
}

/// K-data of a report: `(K0 rank, K1 = 0)`.
pub fn k_theory(report: &StructureReport) -> (usize, usize) {
    (report.k0_rank, 0)
}

/// Resolves the crossed product of an instance into blocks.
///
/// Works on arbitrary valid instances by stratifying first. Blocks are
/// ordered by (stratum size descending, base tuple, point-orbit key), so
/// reports are deterministic. The dimension identity
/// `Σ d^2 |K| = Σ_g |X_g|` holds by orbit counting and is re-checked here.
pub fn crossed_product_structure(pa: &PartialAction) -> StructureReport {
    let strat = stratify(pa);
    let mut blocks = Vec::new();
    for stratum in &strat.strata {
        let cert = check_decomposition(&stratum.action, stratum.k)
            .expect("strata are decomposable at their own parameter");
        for summand in &cert.summands {
            let h = &summand.data.stabilizer;
            let m = summand.data.m;
            // H-orbits on the slice X_tau, inside the restricted stratum.
            let slice = &summand.piece_points[0];
            let mut unvisited: Vec<usize> = slice.clone();
            while let Some(&y0) = unvisited.first() {
                let mut orbit = vec![y0];
                let mut i = 0;
                while i < orbit.len() {
                    let y = orbit[i];
                    i += 1;
                    for &hh in h.members() {
                        let moved = stratum.action.apply(hh, y).expect("H acts on the slice");
                        if !orbit.contains(&moved) {
                            orbit.push(moved);
                        }
                    }
                }
                orbit.sort_unstable();
                unvisited.retain(|y| !orbit.contains(y));

                let stab_members: Vec<usize> = h
                    .members()
                    .iter()
                    .copied()
                    .filter(|&hh| stratum.action.apply(hh, y0) == Some(y0))
                    .collect();
                let k_sub = Subgroup::from_members(pa.group(), stab_members);
                let label = k_sub.label(pa.group());
                let simple = conjugacy_class_count_of(pa.group(), &k_sub);
                blocks.push(Block {
                    matrix_size: (m + 1) * orbit.len(),
                    coefficient_label: label,
                    simple_summands: simple,
                    provenance: BlockProvenance {
                        stratum_k: stratum.k,
                        orbit: summand.base.clone(),
                        point_orbit: stratum.points[y0],
                    },
                    coefficient_subgroup: k_sub,
                });
            }
        }
    }
    blocks.sort_by(|a, b| {
        (std::cmp::Reverse(a.provenance.stratum_k), &a.provenance.orbit, a.provenance.point_orbit)
            .cmp(&(std::cmp::Reverse(b.provenance.stratum_k), &b.provenance.orbit, b.provenance.point_orbit))
    });
    let report = StructureReport::from_blocks(blocks);
    debug_assert_eq!(
        report.total_dimension,
        pa.group().elements().map(|g| pa.domain(g).len()).sum::<usize>(),
        "dimension conservation"
    );
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("group order {order} exceeds the configured cap {cap}")]
pub struct CapExceeded {
    pub order: usize,
    pub cap: usize,
}

/// The closed-form dimension of the partial group algebra,
/// `2^(|G|-1) + (|G|-1) 2^(|G|-2)`; equal to the basis count
/// `Σ_g |T(G)_g|` of the full tuple-space crossed product.
pub fn partial_group_algebra_dimension(order: usize) -> usize {
    if order == 1 {
        return 1;
    }
    (1 << (order - 1)) + (order - 1) * (1 << (order - 2))
}

/// The block structure of the partial group algebra of `G`.
///
/// Realized as the crossed product of the disjoint union of all tuple
/// actions: one block `M_{m_z + 1}` over the group algebra of `H_z` per
/// tuple orbit `z`, grouped by tuple size `n` ascending and then by base
/// tuple. For small groups the blocks are produced literally through
/// [`crossed_product_structure`] of the materialized union; past order 16
/// the tuple stream is scanned orbit by orbit without materializing the
/// space (the outputs agree, and tests pin that).
pub fn partial_group_algebra(
    group: &FiniteGroup,
    cap: usize,
) -> Result<StructureReport, CapExceeded> {
    let order = group.order();
    if order > cap {
        return Err(CapExceeded { order, cap });
    }

    let mut blocks = if order <= 16 {
        let mut blocks = Vec::new();
        for n in 1..=order {
            let pa = tuple_action(group, n);
            blocks.extend(crossed_product_structure(&pa).blocks);
        }
        blocks
    } else {
        let mut blocks = Vec::new();
        for n in 1..=order {
            for tau in enumerate_tuples(group, n) {
                let data = orbit_data(group, &tau);
                let canonical = tuple_orbit(group, &data)
                    .into_iter()
                    .min()
                    .expect("orbit nonempty");
                if canonical != tau {
                    continue; // emit each orbit once, at its canonical member
                }
                let h = data.stabilizer;
                blocks.push(Block {
                    matrix_size: data.m + 1,
                    coefficient_label: h.label(group),
                    simple_summands: conjugacy_class_count_of(group, &h),
                    provenance: BlockProvenance {
                        stratum_k: n,
                        orbit: tau.clone(),
                        point_orbit: 0,
                    },
                    coefficient_subgroup: h,
                });
            }
        }
        blocks
    };

    blocks.sort_by(|a, b| {
        (a.provenance.stratum_k, &a.provenance.orbit)
            .cmp(&(b.provenance.stratum_k, &b.provenance.orbit))
    });
    let report = StructureReport::from_blocks(blocks);
    debug_assert_eq!(report.total_dimension, partial_group_algebra_dimension(order));
    Ok(report)
}

/// One orbit summand of the fixed-point description.
#[derive(Clone, Debug)]
pub struct FixedSummand {
    pub stratum_k: usize,
    pub orbit: Tuple,
    pub stabilizer_order: usize,
    /// Dimension of the H-fixed functions on the slice (= H-orbit count).
    pub dimension: usize,
    /// For each basis element of the fixed algebra: the minimal slice
    /// point (ambient index) and the support of its image under the
    /// inclusion `a -> Σ_j alpha_{x_j}^-1(a)` — a full point orbit.
    pub inclusion: Vec<(usize, Vec<usize>)>,
}

/// The fixed-point algebra, described summand by summand.
#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub summands: Vec<FixedSummand>,
    pub total_dimension: usize,
    /// Orbit count of the instance; equals `total_dimension`.
    pub orbit_count: usize,
}

/// Identifies the fixed-point algebra summand-wise.
///
/// Per orbit summand the invariant functions are the `H`-fixed functions
/// on the slice, included back by summing the transports along the coset
/// representatives; the support of each included basis element is exactly
/// one point orbit. The total dimension is cross-checked against the
/// orbit count of the instance.
pub fn fixed_point_structure(pa: &PartialAction) -> FixedPointReport {
    let strat = stratify(pa);
    let mut summands = Vec::new();
    let mut total = 0;
    for stratum in &strat.strata {
        let cert = check_decomposition(&stratum.action, stratum.k)
            .expect("strata are decomposable at their own parameter");
        for summand in &cert.summands {
            let h = &summand.data.stabilizer;
            let slice = &summand.piece_points[0];
            // H-orbits on the slice; each one is a fixed-basis element.
            let mut inclusion = Vec::new();
            let mut unvisited: Vec<usize> = slice.clone();
            while let Some(&y0) = unvisited.first() {
                let mut h_orbit = vec![y0];
                let mut i = 0;
                while i < h_orbit.len() {
                    let y = h_orbit[i];
                    i += 1;
                    for &hh in h.members() {
                        let moved = stratum.action.apply(hh, y).expect("H acts on the slice");
                        if !h_orbit.contains(&moved) {
                            h_orbit.push(moved);
                        }
                    }
                }
                h_orbit.sort_unstable();
                unvisited.retain(|y| !h_orbit.contains(y));

                // Support of iota(indicator of the H-orbit): transport along
                // every representative.
                let mut support = Vec::new();
                for &xj in &summand.data.reps {
                    for &y in &h_orbit {
                        let back = stratum
                            .action
                            .apply(stratum.action.group().inv(xj), y)
                            .expect("x_j^-1 moves the slice into piece j");
                        support.push(stratum.points[back]);
                    }
                }
                support.sort_unstable();
                inclusion.push((stratum.points[y0], support));
            }
            total += inclusion.len();
            summands.push(FixedSummand {
                stratum_k: stratum.k,
                orbit: summand.base.clone(),
                stabilizer_order: h.order(),
                dimension: inclusion.len(),
                inclusion,
            });
        }
    }
    let orbit_count = pa.quotient_and_fixed().orbit_count;
    assert_eq!(total, orbit_count, "fixed dimension must equal the orbit count");
    FixedPointReport { summands, total_dimension: total, orbit_count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::full_tuple_space_action;

    fn block_summary(report: &StructureReport) -> Vec<String> {
        report.blocks.iter().map(Block::render).collect()
    }

    #[test]
    fn tuple_space_of_z3_is_m2() {
        let z3 = FiniteGroup::cyclic(3);
        let report = crossed_product_structure(&tuple_action(&z3, 2));
        assert_eq!(block_summary(&report), vec!["M_2[triv]"]);
        assert_eq!(report.total_dimension, 4);
        assert_eq!(k_theory(&report), (1, 0));
    }

    #[test]
    fn global_trivial_point_is_group_algebra() {
        let z2 = FiniteGroup::cyclic(2);
        let pa = PartialAction::global(z2, 1, vec![vec![0], vec![0]]);
        let report = crossed_product_structure(&pa);
        assert_eq!(block_summary(&report), vec!["M_1[C2]"]);
        assert_eq!(report.total_dimension, 2);
    }

    #[test]
    fn regular_translation_is_full_matrix_block() {
        let z2 = FiniteGroup::cyclic(2);
        let pa = PartialAction::global(z2, 2, vec![vec![0, 1], vec![1, 0]]);
        let report = crossed_product_structure(&pa);
        assert_eq!(block_summary(&report), vec!["M_2[triv]"]);
        assert_eq!(report.total_dimension, 4);
    }

    #[test]
    fn trivial_action_is_diagonal() {
        let pa = PartialAction::trivial(FiniteGroup::cyclic(3), 4);
        let report = crossed_product_structure(&pa);
        assert_eq!(report.blocks.len(), 4);
        assert!(report.blocks.iter().all(|b| b.render() == "M_1[triv]"));
        assert_eq!(report.total_dimension, 4);
    }

    #[test]
    fn partial_group_algebra_small_cyclic() {
        let z2 = FiniteGroup::cyclic(2);
        let report = partial_group_algebra(&z2, 24).unwrap();
        assert_eq!(block_summary(&report), vec!["M_1[triv]", "M_1[C2]"]);
        assert_eq!(report.total_dimension, 3);

        let z3 = FiniteGroup::cyclic(3);
        let report = partial_group_algebra(&z3, 24).unwrap();
        assert_eq!(block_summary(&report), vec!["M_1[triv]", "M_2[triv]", "M_1[C3]"]);
        assert_eq!(report.total_dimension, 8);

        let z4 = FiniteGroup::cyclic(4);
        let report = partial_group_algebra(&z4, 24).unwrap();
        assert_eq!(
            block_summary(&report),
            vec!["M_1[triv]", "M_2[triv]", "M_1[C2]", "M_3[triv]", "M_1[C4]"]
        );
        assert_eq!(report.total_dimension, 20);
        assert_eq!(k_theory(&report), (9, 0));
    }

    #[test]
    fn partial_group_algebra_respects_cap() {
        let q8 = FiniteGroup::quaternion();
        assert!(matches!(
            partial_group_algebra(&q8, 4),
            Err(CapExceeded { order: 8, cap: 4 })
        ));
    }

    #[test]
    fn closed_form_matches_brute_force_count() {
        for group in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
            let union = full_tuple_space_action(&group);
            let count: usize = group.elements().map(|g| union.domain(g).len()).sum();
            assert_eq!(count, partial_group_algebra_dimension(group.order()));
        }
    }

    #[test]
    fn streaming_and_materialized_routes_agree() {
        // The streaming branch is exercised by forcing it below the cap.
        for group in [FiniteGroup::cyclic(5), FiniteGroup::quaternion()] {
            let materialized = partial_group_algebra(&group, 24).unwrap();
            let mut streamed_blocks = Vec::new();
            for n in 1..=group.order() {
                for tau in enumerate_tuples(&group, n) {
                    let data = orbit_data(&group, &tau);
                    let canonical =
                        tuple_orbit(&group, &data).into_iter().min().unwrap();
                    if canonical != tau {
                        continue;
                    }
                    let h = data.stabilizer;
                    streamed_blocks.push((n, tau.clone(), data.m + 1, h.label(&group)));
                }
            }
            let materialized_blocks: Vec<(usize, Tuple, usize, String)> = materialized
                .blocks
                .iter()
                .map(|b| {
                    (
                        b.provenance.stratum_k,
                        b.provenance.orbit.clone(),
                        b.matrix_size,
                        b.coefficient_label.clone(),
                    )
                })
                .collect();
            assert_eq!(materialized_blocks, streamed_blocks);
        }
    }

    #[test]
    fn streaming_branch_over_a_large_prime_order() {
        // Orders past 16 take the orbit-scan branch for real. For a prime
        // order every stabilizer below the top tuple is trivial, so each
        // block contributes one simple summand except the last.
        let c17 = FiniteGroup::cyclic(17);
        let report = partial_group_algebra(&c17, 24).unwrap();
        assert_eq!(report.total_dimension, partial_group_algebra_dimension(17));
        let last = report.blocks.last().unwrap();
        assert_eq!(last.render(), "M_1[C17]");
        assert!(report.blocks[..report.blocks.len() - 1]
            .iter()
            .all(|b| b.coefficient_subgroup.is_trivial()));
        assert_eq!(report.k0_rank, report.blocks.len() - 1 + 17);
        // Strata are grouped ascending by tuple size.
        let ks: Vec<usize> = report.blocks.iter().map(|b| b.provenance.stratum_k).collect();
        assert!(ks.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn fixed_point_examples() {
        // Tuple space of Z3: one summand, trivial stabilizer, dimension 1.
        let z3 = FiniteGroup::cyclic(3);
        let report = fixed_point_structure(&tuple_action(&z3, 2));
        assert_eq!(report.total_dimension, 1);
        assert_eq!(report.summands[0].inclusion[0].1, vec![0, 1]);

        // Global swap on two points: fixed dimension 1.
        let z2 = FiniteGroup::cyclic(2);
        let swap = PartialAction::global(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(fixed_point_structure(&swap).total_dimension, 1);

        // Trivial action on N points: fixed dimension N.
        let triv = PartialAction::trivial(z2, 5);
        assert_eq!(fixed_point_structure(&triv).total_dimension, 5);
    }

    #[test]
    fn k_theory_of_empty_action() {
        let empty = PartialAction::trivial(FiniteGroup::cyclic(2), 0);
        let report = crossed_product_structure(&empty);
        assert!(report.blocks.is_empty());
        assert_eq!(k_theory(&report), (0, 0));
    }

    #[test]
    fn partial_group_algebra_k0_example() {
        let z3 = FiniteGroup::cyclic(3);
        let report = partial_group_algebra(&z3, 24).unwrap();
        assert_eq!(k_theory(&report), (5, 0));
    }
}
