//! Deterministic instance generators for test batteries.
//!
//! Two kinds of instances are produced from a seeded RNG: decomposable
//! ones, assembled summand-wise from a tuple and a global stabilizer
//! action on coset fibers, and mixed ones, obtained by restricting a
//! disjoint union of coset actions to a random point subset. Restriction
//! of a valid partial action to any subset is again valid, so everything
//! generated here passes validation by construction.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::PartialAction;
use crate::group::{subgroup_generated, FiniteGroup, Subgroup};
use crate::tuples::{orbit_data, Tuple};

/// The RNG used for all randomized batteries; seeded, so reports and test
/// runs are reproducible.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The global action of `G` on the left cosets `g K`.
pub fn coset_action(group: &FiniteGroup, k: &Subgroup) -> PartialAction {
    let cosets = left_cosets_by_min(group, k);
    let index_of = |g: usize| {
        cosets
            .iter()
            .position(|c| c.binary_search(&g).is_ok())
            .expect("cosets cover the group")
    };
    let perms: Vec<Vec<usize>> = group
        .elements()
        .map(|t| {
            cosets
                .iter()
                .map(|c| index_of(group.mul(t, c[0])))
                .collect()
        })
        .collect();
    PartialAction::global(group.clone(), cosets.len(), perms)
}

fn left_cosets_by_min(group: &FiniteGroup, k: &Subgroup) -> Vec<Vec<usize>> {
    // Cosets g K, ordered by minimal element.
    let mut seen = vec![false; group.order()];
    let mut out = Vec::new();
    for g in group.elements() {
        if seen[g] {
            continue;
        }
        let mut coset: Vec<usize> = k.members().iter().map(|&h| group.mul(g, h)).collect();
        coset.sort_unstable();
        for &x in &coset {
            seen[x] = true;
        }
        out.push(coset);
    }
    out
}

/// A random subgroup, generated by a few random elements.
pub fn random_subgroup(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let gens: Vec<usize> = (0..rng.gen_range(0..=2))
        .map(|_| rng.gen_range(0..group.order()))
        .collect();
    subgroup_generated(group, &gens)
}

/// A random `n`-tuple.
pub fn random_tuple(group: &FiniteGroup, n: usize, rng: &mut ChaCha8Rng) -> Tuple {
    assert!(n >= 1 && n <= group.order());
    let mut rest: Vec<usize> = (1..group.order()).collect();
    rest.shuffle(rng);
    let mut members = vec![FiniteGroup::IDENTITY];
    members.extend_from_slice(&rest[..n - 1]);
    Tuple::new(members)
}

/// The decomposable instance induced from a tuple and a list of stabilizer
/// fibers.
///
/// Points are pairs (representative piece, coset of `K_i` in `H`); the
/// element `g` moves a point of piece `j` to the piece `k` singled out by
/// `g x_j^-1 in x_k^-1 H`, twisting the fiber by the stabilizer part. The
/// result has the `n`-decomposition property for `n = |tuple|`, with one
/// orbit summand per fiber; it is free exactly when every fiber subgroup
/// is trivial.
pub fn induced_summand(
    group: &FiniteGroup,
    tuple: &Tuple,
    fibers: &[Subgroup],
) -> PartialAction {
    let data = orbit_data(group, tuple);
    let h = &data.stabilizer;
    let reps = &data.reps;
    let order = group.order();

    // The fiber is a disjoint union of H-coset spaces; points are
    // (piece j, fiber point), fiber points concatenated over the fibers.
    // Distinct fibers never mix, even when their subgroups coincide.
    let mut fiber_cosets: Vec<Vec<usize>> = Vec::new();
    let mut fiber_of: Vec<std::ops::Range<usize>> = Vec::new();
    for k in fibers {
        debug_assert!(k.members().iter().all(|&x| h.contains(x)));
        let start = fiber_cosets.len();
        fiber_cosets.extend(h_cosets(group, h, k));
        fiber_of.push(start..fiber_cosets.len());
    }
    if fiber_cosets.is_empty() {
        fiber_cosets.push(h.members().to_vec()); // single point fiber: H/H
        fiber_of.push(0..1);
    }
    let fiber = fiber_cosets.len();

    let pieces = reps.len();
    let points = pieces * fiber;
    let point_of = |j: usize, f: usize| j * fiber + f;

    let mut domains = vec![Vec::new(); order];
    let mut maps = vec![Vec::new(); order];
    for g in 0..order {
        for (j, &xj) in reps.iter().enumerate() {
            // Domain membership: g in x_j^-1 tau <=> x_j g in tuple.
            if tuple.contains(group.mul(xj, g)) {
                for f in 0..fiber {
                    domains[g].push(point_of(j, f));
                }
            }
            // sigma_g is defined on piece j when g^-1 in x_j^-1 tau.
            if !tuple.contains(group.mul(xj, group.inv(g))) {
                continue;
            }
            // g x_j^-1 in x_k^-1 H for a unique k; twist = x_k g x_j^-1.
            let moved = group.mul(g, group.inv(xj));
            let k = reps
                .iter()
                .position(|&xk| h.contains(group.mul(xk, moved)))
                .expect("unique target piece");
            let twist = group.mul(reps[k], moved);
            for block in &fiber_of {
                for f in block.clone() {
                    // Left multiplication by the twist permutes the cosets
                    // of this block's subgroup.
                    let image = group.mul(twist, fiber_cosets[f][0]);
                    let target = block
                        .clone()
                        .find(|&t| fiber_cosets[t].binary_search(&image).is_ok())
                        .expect("twist stays inside the fiber");
                    maps[g].push((point_of(j, f), point_of(k, target)));
                }
            }
        }
    }
    PartialAction::new(group.clone(), points, domains, maps)
        .expect("induced summand is structural")
}

fn h_cosets(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Vec<usize>> {
    // Left cosets c K inside H, each sorted, ordered by minimum.
    let mut out = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for &c in h.members() {
        if seen.binary_search(&c).is_ok() {
            continue;
        }
        let mut coset: Vec<usize> = k.members().iter().map(|&x| group.mul(c, x)).collect();
        coset.sort_unstable();
        for &x in &coset {
            let pos = seen.binary_search(&x).unwrap_err();
            seen.insert(pos, x);
        }
        out.push(coset);
    }
    out
}

/// A random decomposable instance: a disjoint union of induced summands
/// sharing one tuple size.
pub fn random_decomposable(
    group: &FiniteGroup,
    n: usize,
    summands: usize,
    rng: &mut ChaCha8Rng,
) -> PartialAction {
    assert!(summands >= 1);
    let mut out: Option<PartialAction> = None;
    for _ in 0..summands {
        let tuple = random_tuple(group, n, rng);
        let data = orbit_data(group, &tuple);
        let h = &data.stabilizer;
        let fiber_count = rng.gen_range(1..=2);
        let fibers: Vec<Subgroup> = (0..fiber_count)
            .map(|_| random_subgroup_of(group, h, rng))
            .collect();
        let piece = induced_summand(group, &tuple, &fibers);
        out = Some(match out {
            None => piece,
            Some(acc) => acc.disjoint_union(&piece),
        });
    }
    out.expect("at least one summand")
}

fn random_subgroup_of(group: &FiniteGroup, h: &Subgroup, rng: &mut ChaCha8Rng) -> Subgroup {
    if h.order() == 1 || rng.gen_bool(0.5) {
        return Subgroup::trivial();
    }
    let members = h.members();
    let gens: Vec<usize> = (0..rng.gen_range(1..=2))
        .map(|_| members[rng.gen_range(0..members.len())])
        .collect();
    subgroup_generated(group, &gens)
}

/// A random valid partial action, usually with mixed point types: a
/// disjoint union of coset actions restricted to a random subset.
pub fn random_partial_action(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> PartialAction {
    let parts = rng.gen_range(1..=3);
    let mut glob: Option<PartialAction> = None;
    for _ in 0..parts {
        let k = random_subgroup(group, rng);
        let piece = coset_action(group, &k);
        glob = Some(match glob {
            None => piece,
            Some(acc) => acc.disjoint_union(&piece),
        });
    }
    let glob = glob.expect("at least one part");
    let keep: Vec<usize> = (0..glob.points())
        .filter(|_| rng.gen_bool(0.7))
        .collect();
    if keep.is_empty() {
        return PartialAction::trivial(group.clone(), 0);
    }
    let (restricted, _) = glob.restrict(&keep);
    restricted
}

/// The groups the acceptance battery ranges over.
pub fn catalog_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ]
}
