//! Tuple spaces and their canonical partial actions.
//!
//! An `n`-tuple of a group is an `n`-element subset containing the
//! identity. The tuple space carries the partial action by left
//! translation, whose domains are `{ tau : g in tau }`; it is the
//! prototypical instance with the `n`-decomposition property. Every tuple
//! splits into cosets of its stabilizer, and the coset representatives
//! drive everything downstream: globalization, crossed-product blocks,
//! expectations, corners.

use std::collections::HashMap;

use crate::action::PartialAction;
use crate::group::{FiniteGroup, Subgroup};

/// A sorted element subset containing the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    members: Vec<usize>,
}

impl Tuple {
    /// Builds a tuple from members; sorts, dedups, and requires the
    /// identity to be present.
    pub fn new(members: Vec<usize>) -> Self {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        assert!(
            members.first() == Some(&FiniteGroup::IDENTITY),
            "a tuple must contain the identity"
        );
        Tuple { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Left translate `g * tau` (sorted). The result contains the identity
    /// exactly when `g^-1` is a member.
    pub fn translate(&self, group: &FiniteGroup, g: usize) -> Tuple {
        let mut members: Vec<usize> = self.members.iter().map(|&t| group.mul(g, t)).collect();
        members.sort_unstable();
        Tuple { members }
    }

    /// The inverse set `tau^-1` (sorted).
    pub fn inverse_set(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut out: Vec<usize> = self.members.iter().map(|&t| group.inv(t)).collect();
        out.sort_unstable();
        out
    }

    /// Display form `{0,1,3}`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Streaming enumeration of all `n`-tuples in lexicographic order.
///
/// The stream is an iterator because the full tuple space has `2^(|G|-1)`
/// members; callers that only need per-orbit data never materialize it.
/// Empty when `n` is zero or exceeds the group order.
pub fn enumerate_tuples(group: &FiniteGroup, n: usize) -> TupleIter {
    TupleIter::new(group.order(), n)
}

pub struct TupleIter {
    order: usize,
    /// Indices chosen from `1..order`; the identity is implicit.
    rest: Vec<usize>,
    done: bool,
}

impl TupleIter {
    fn new(order: usize, n: usize) -> Self {
        if n == 0 || n > order {
            return TupleIter { order, rest: Vec::new(), done: true };
        }
        let rest: Vec<usize> = (1..n).collect();
        TupleIter { order, rest, done: false }
    }
}

impl Iterator for TupleIter {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.done {
            return None;
        }
        let mut members = Vec::with_capacity(self.rest.len() + 1);
        members.push(FiniteGroup::IDENTITY);
        members.extend_from_slice(&self.rest);
        let item = Tuple { members };

        // Advance the combination of `rest` inside 1..order.
        let k = self.rest.len();
        if k == 0 {
            self.done = true;
            return Some(item);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let max_here = self.order - (k - i);
            if self.rest[i] < max_here {
                self.rest[i] += 1;
                for j in i + 1..k {
                    self.rest[j] = self.rest[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

/// Stabilizer, coset representatives, and the count `m` for one tuple.
///
/// The stabilizer order divides `n`, the representatives start with the
/// identity and are the minimal indices of the cosets `H x` inside the
/// tuple, and `m + 1 = n / |H|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub tuple: Tuple,
    pub stabilizer: Subgroup,
    pub reps: Vec<usize>,
    pub m: usize,
}

/// Computes the orbit data of a tuple by direct stabilizer testing and a
/// minimal-index sweep over the coset decomposition.
pub fn orbit_data(group: &FiniteGroup, tuple: &Tuple) -> OrbitData {
    let stab_members: Vec<usize> = group
        .elements()
        .filter(|&h| tuple.translate(group, h) == *tuple)
        .collect();
    let stabilizer = Subgroup::from_members(group, stab_members);
    let h_order = stabilizer.order();
    debug_assert_eq!(tuple.n() % h_order, 0, "stabilizer order must divide n");

    let mut reps = Vec::new();
    let mut covered = vec![false; group.order()];
    for &x in tuple.members() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &h in stabilizer.members() {
            covered[group.mul(h, x)] = true;
        }
    }
    debug_assert_eq!(reps.first(), Some(&FiniteGroup::IDENTITY));
    debug_assert_eq!(reps.len() * h_order, tuple.n());
    let m = reps.len() - 1;
    OrbitData { tuple: tuple.clone(), stabilizer, reps, m }
}

/// The orbit of a tuple under the translation partial action, listed as
/// `x_j^-1 * tau` in representative order. These `m + 1` tuples are
/// pairwise distinct and exhaust the orbit.
pub fn tuple_orbit(group: &FiniteGroup, data: &OrbitData) -> Vec<Tuple> {
    data.reps
        .iter()
        .map(|&x| data.tuple.translate(group, group.inv(x)))
        .collect()
}

/// The canonical (lexicographically minimal) representative of the orbit.
pub fn orbit_canonical(group: &FiniteGroup, tuple: &Tuple) -> Tuple {
    let data = orbit_data(group, tuple);
    tuple_orbit(group, &data).into_iter().min().expect("orbit is nonempty")
}

/// The partial action of `G` on its `n`-tuple space by left translation.
///
/// Points are the tuples in lexicographic order; the domain of `g` is the
/// set of tuples containing `g`. The output is a valid partial action and
/// has the `n`-decomposition property with parameter exactly `n`.
pub fn tuple_action(group: &FiniteGroup, n: usize) -> PartialAction {
    assert!(n >= 1 && n <= group.order(), "need 1 <= n <= |G|");
    let tuples: Vec<Tuple> = enumerate_tuples(group, n).collect();
    let index: HashMap<&Tuple, usize> = tuples.iter().zip(0..).collect();
    let order = group.order();
    let mut domains = vec![Vec::new(); order];
    let mut maps = vec![Vec::new(); order];
    for g in 0..order {
        let ginv = group.inv(g);
        for (i, tau) in tuples.iter().enumerate() {
            if tau.contains(g) {
                domains[g].push(i);
            }
            if tau.contains(ginv) {
                let image = tau.translate(group, g);
                maps[g].push((i, index[&image]));
            }
        }
    }
    let mut pa = PartialAction::new(group.clone(), tuples.len(), domains, maps)
        .expect("tuple action is structural");
    pa.set_labels(tuples.iter().map(Tuple::render).collect());
    pa
}

/// The disjoint union of all tuple actions, `n = 1 ..= |G|`.
///
/// Its crossed product realizes the partial group algebra; the dimension
/// count over this instance is the brute-force oracle used by the
/// structure layer.
pub fn full_tuple_space_action(group: &FiniteGroup) -> PartialAction {
    let mut out = tuple_action(group, 1);
    for n in 2..=group.order() {
        out = out.disjoint_union(&tuple_action(group, n));
    }
    out
}

/// The induced partial action on the representative set of a tuple.
///
/// Points are the representatives `x_0 = 1, x_1, ..., x_m`; the domain of
/// `g` is `{ x : g in x^-1 tau }`, and `sigma_g(x)` is the unique
/// representative `y` in the domain of `g` with `g in y^-1 H x`. The
/// output is a valid partial action, isomorphic to the restriction of the
/// tuple-space action to the orbit of `tau`.
pub fn representative_action(group: &FiniteGroup, tuple: &Tuple) -> PartialAction {
    let data = orbit_data(group, tuple);
    let reps = &data.reps;
    let h = &data.stabilizer;
    let points = reps.len();
    let order = group.order();

    let in_inv_translate = |x: usize, g: usize| -> bool {
        // g in x^-1 tau  <=>  x g in tau
        tuple.contains(group.mul(x, g))
    };

    let mut domains = vec![Vec::new(); order];
    let mut maps = vec![Vec::new(); order];
    for g in 0..order {
        let ginv = group.inv(g);
        for (i, &x) in reps.iter().enumerate() {
            if in_inv_translate(x, g) {
                domains[g].push(i);
            }
            if in_inv_translate(x, ginv) {
                // The unique y in X_g with g in y^-1 H x.
                let mut target = None;
                for (j, &y) in reps.iter().enumerate() {
                    if !in_inv_translate(y, g) {
                        continue;
                    }
                    let hy = group.mul(y, g); // want hy in H x, i.e. y g x^-1 in H
                    if h.contains(group.mul(hy, group.inv(x))) {
                        assert!(target.is_none(), "representative target must be unique");
                        target = Some(j);
                    }
                }
                let j = target.expect("representative target must exist");
                maps[g].push((i, j));
            }
        }
    }
    let mut pa = PartialAction::new(group.clone(), points, domains, maps)
        .expect("representative action is structural");
    pa.set_labels(reps.iter().map(|x| format!("x{x}")).collect());
    pa
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let t: Vec<Tuple> = enumerate_tuples(&z2, 2).collect();
        assert_eq!(t, vec![Tuple::new(vec![0, 1])]);

        let z3 = FiniteGroup::cyclic(3);
        let t: Vec<Tuple> = enumerate_tuples(&z3, 2).collect();
        assert_eq!(t, vec![Tuple::new(vec![0, 1]), Tuple::new(vec![0, 2])]);

        // Empty beyond the group order.
        assert_eq!(enumerate_tuples(&z2, 3).count(), 0);
    }

    #[test]
    fn enumeration_is_lexicographic_and_counts() {
        let q8 = FiniteGroup::quaternion();
        let mut total = 0;
        for n in 1..=8 {
            let tuples: Vec<Tuple> = enumerate_tuples(&q8, n).collect();
            let mut sorted = tuples.clone();
            sorted.sort();
            assert_eq!(tuples, sorted);
            total += tuples.len();
        }
        assert_eq!(total, 1 << 7);
    }

    #[test]
    fn orbit_data_examples() {
        let z4 = FiniteGroup::cyclic(4);
        let d = orbit_data(&z4, &Tuple::new(vec![0, 2]));
        assert_eq!(d.stabilizer.members(), &[0, 2]);
        assert_eq!(d.m, 0);

        let d = orbit_data(&z4, &Tuple::new(vec![0, 1]));
        assert!(d.stabilizer.is_trivial());
        assert_eq!(d.m, 1);
        assert_eq!(d.reps, vec![0, 1]);

        let full = Tuple::new((0..4).collect());
        let d = orbit_data(&z4, &full);
        assert_eq!(d.stabilizer.order(), 4);
        assert_eq!(d.m, 0);
    }

    #[test]
    fn coset_decomposition_reconstructs_tuple() {
        let d4 = FiniteGroup::dihedral(4);
        for n in 1..=8 {
            for tau in enumerate_tuples(&d4, n) {
                let data = orbit_data(&d4, &tau);
                let mut rebuilt = Vec::new();
                for &x in &data.reps {
                    for &h in data.stabilizer.members() {
                        rebuilt.push(d4.mul(h, x));
                    }
                }
                rebuilt.sort_unstable();
                assert_eq!(rebuilt, tau.members());
            }
        }
    }

    #[test]
    fn tuple_action_examples() {
        let z3 = FiniteGroup::cyclic(3);
        let pa = tuple_action(&z3, 2);
        assert_eq!(pa.points(), 2);
        assert!(pa.validate().is_empty());
        assert_eq!(pa.orbits().len(), 1);

        // n = 1: a single point with the trivial partial action.
        let q8 = FiniteGroup::quaternion();
        let pa = tuple_action(&q8, 1);
        assert_eq!(pa.points(), 1);
        assert_eq!(pa.domain(3), &[] as &[usize]);

        // n = |G|: a single point with the global trivial action.
        let pa = tuple_action(&q8, 8);
        assert_eq!(pa.points(), 1);
        for g in q8.elements() {
            assert_eq!(pa.apply(g, 0), Some(0));
        }
    }

    #[test]
    fn tuple_actions_validate() {
        for group in [
            FiniteGroup::cyclic(5),
            FiniteGroup::symmetric(3),
            FiniteGroup::quaternion(),
        ] {
            for n in 1..=group.order() {
                assert!(tuple_action(&group, n).validate().is_empty());
            }
        }
    }

    #[test]
    fn stabilizers_conjugate_along_orbits() {
        // H_{g tau} = g H_tau g^-1, and m is constant on orbits.
        for group in [FiniteGroup::cyclic(12), FiniteGroup::dihedral(6)] {
            for n in 1..=group.order() {
                for tau in enumerate_tuples(&group, n) {
                    let data = orbit_data(&group, &tau);
                    for g in tau.inverse_set(&group) {
                        let moved = tau.translate(&group, g);
                        let moved_data = orbit_data(&group, &moved);
                        assert_eq!(moved_data.m, data.m);
                        let mut conj: Vec<usize> = data
                            .stabilizer
                            .members()
                            .iter()
                            .map(|&h| group.mul(group.mul(g, h), group.inv(g)))
                            .collect();
                        conj.sort_unstable();
                        assert_eq!(conj, moved_data.stabilizer.members());
                    }
                }
            }
        }
    }

    #[test]
    fn representative_action_examples() {
        let z4 = FiniteGroup::cyclic(4);
        // tau = {0,2}: a single representative, domains nonempty iff g in tau.
        let pa = representative_action(&z4, &Tuple::new(vec![0, 2]));
        assert_eq!(pa.points(), 1);
        for g in z4.elements() {
            let expect = [0usize, 2].contains(&g);
            assert_eq!(!pa.domain(g).is_empty(), expect, "g = {g}");
        }
        assert!(pa.validate().is_empty());

        // tau = G: a single point carrying the global action.
        let full = Tuple::new((0..4).collect());
        let pa = representative_action(&z4, &full);
        assert_eq!(pa.points(), 1);
        for g in z4.elements() {
            assert_eq!(pa.apply(g, 0), Some(0));
        }

        // tau = {0,1} in Z3: two representatives, swapped where defined.
        let z3 = FiniteGroup::cyclic(3);
        let pa = representative_action(&z3, &Tuple::new(vec![0, 1]));
        assert_eq!(pa.points(), 2);
        assert!(pa.validate().is_empty());
        assert_eq!(pa.apply(1, 1), Some(0));
    }

    #[test]
    fn representative_action_matches_restricted_tuple_action() {
        // x_j <-> x_j^-1 tau is an isomorphism onto the orbit restriction.
        for group in [FiniteGroup::cyclic(6), FiniteGroup::symmetric(3)] {
            for n in 1..=group.order() {
                for tau in enumerate_tuples(&group, n) {
                    let data = orbit_data(&group, &tau);
                    let rep_pa = representative_action(&group, &tau);
                    let orbit = tuple_orbit(&group, &data);

                    let full = tuple_action(&group, n);
                    let all: Vec<Tuple> = enumerate_tuples(&group, n).collect();
                    let orbit_indices: Vec<usize> = orbit
                        .iter()
                        .map(|t| all.iter().position(|u| u == t).unwrap())
                        .collect();
                    let mut sorted_indices = orbit_indices.clone();
                    sorted_indices.sort_unstable();
                    let (restricted, back) = full.restrict(&sorted_indices);

                    // Point map: rep j -> restricted index of x_j^-1 tau.
                    let to_restricted: Vec<usize> = orbit_indices
                        .iter()
                        .map(|&oi| back.iter().position(|&b| b == oi).unwrap())
                        .collect();
                    for g in group.elements() {
                        for j in 0..rep_pa.points() {
                            let lhs = rep_pa.apply(g, j).map(|t| to_restricted[t]);
                            let rhs = restricted.apply(g, to_restricted[j]);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
