//! Partial actions of finite groups on finite discrete point sets.
//!
//! A partial action assigns to every group element `g` a domain `X_g` and a
//! bijection `sigma_g : X_{g^-1} -> X_g`, with the identity acting fully and
//! compositions extending wherever both sides are defined. All downstream
//! structure theory (decomposition, globalization, crossed products) is
//! driven by the per-point *type* `{ g : x in X_g }`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::group::FiniteGroup;

/// Structural problems that make an instance unrepresentable (as opposed to
/// axiom violations, which are data; see [`Violation`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("group element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("duplicate point {point} in domain of element {g}")]
    DuplicateDomainPoint { g: usize, point: usize },
    #[error("duplicate map pair with source {point} for element {g}")]
    DuplicateMapSource { g: usize, point: usize },
}

/// A violated partial-action axiom, with a witness.
///
/// Violations are data, not failures: `validate` reports all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `X_1` must be every point and `sigma_1` the identity.
    IdentityNotFull { point: usize },
    IdentityNotIdentityMap { point: usize },
    /// `sigma_g` is not a bijection `X_{g^-1} -> X_g`.
    NotBijection { g: usize, detail: String },
    /// `sigma_{g^-1}` fails to invert `sigma_g` at `x`.
    InverseMismatch { g: usize, x: usize },
    /// The extension axiom fails at `(g, h, x)`: `x` is in `X_{g^-1}`,
    /// `sigma_g(x)` is in `X_{h^-1}`, but `sigma_{hg}` does not pick up the
    /// composition.
    ExtensionAxiom { g: usize, h: usize, x: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityNotFull { point } => {
                write!(f, "identity domain is missing point {point}")
            }
            Violation::IdentityNotIdentityMap { point } => {
                write!(f, "sigma_1 moves point {point}")
            }
            Violation::NotBijection { g, detail } => {
                write!(f, "sigma_{g} is not a bijection X_{{{g}^-1}} -> X_{g}: {detail}")
            }
            Violation::InverseMismatch { g, x } => {
                write!(f, "sigma_{{{g}^-1}} does not invert sigma_{g} at point {x}")
            }
            Violation::ExtensionAxiom { g, h, x } => {
                write!(f, "extension axiom fails at (g={g}, h={h}, x={x})")
            }
        }
    }
}

/// The type of a point: the set of group elements whose domain contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointType {
    pub point: usize,
    /// Sorted element set `{ g : x in X_g }`; always contains the identity
    /// on a valid instance.
    pub tau: Vec<usize>,
}

/// A partial action of a finite group on points `0..points`.
///
/// Immutable after construction; all operations are pure.
#[derive(Clone)]
pub struct PartialAction {
    group: FiniteGroup,
    points: usize,
    /// Sorted domain `X_g` per element.
    domains: Vec<Vec<usize>>,
    /// `sigma_g` as pairs `(x, sigma_g(x))` sorted by source; sources are
    /// expected (but not forced) to be `X_{g^-1}` and images `X_g`.
    maps: Vec<Vec<(usize, usize)>>,
    /// Optional display labels per point (tuple actions, envelopes).
    labels: Option<Vec<String>>,
}

impl fmt::Debug for PartialAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialAction({:?}, {} points, dims {:?})",
            self.group,
            self.points,
            self.domains.iter().map(Vec::len).collect::<Vec<_>>()
        )
    }
}

impl PartialEq for PartialAction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.points == other.points
            && self.domains == other.domains
            && self.maps == other.maps
    }
}

impl PartialAction {
    /// Builds an instance from raw domain and map data.
    ///
    /// Only structural problems are errors here; axiom violations are left
    /// for [`PartialAction::validate`].
    pub fn new(
        group: FiniteGroup,
        points: usize,
        domains: Vec<Vec<usize>>,
        maps: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self, BuildError> {
        let order = group.order();
        if domains.len() != order {
            return Err(BuildError::ElementOutOfRange(domains.len()));
        }
        if maps.len() != order {
            return Err(BuildError::ElementOutOfRange(maps.len()));
        }
        let mut domains = domains;
        let mut maps = maps;
        for g in 0..order {
            domains[g].sort_unstable();
            for w in domains[g].windows(2) {
                if w[0] == w[1] {
                    return Err(BuildError::DuplicateDomainPoint { g, point: w[0] });
                }
            }
            for &x in &domains[g] {
                if x >= points {
                    return Err(BuildError::PointOutOfRange(x));
                }
            }
            maps[g].sort_unstable();
            for w in maps[g].windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(BuildError::DuplicateMapSource { g, point: w[0].0 });
                }
            }
            for &(x, y) in &maps[g] {
                if x >= points {
                    return Err(BuildError::PointOutOfRange(x));
                }
                if y >= points {
                    return Err(BuildError::PointOutOfRange(y));
                }
            }
        }
        Ok(PartialAction { group, points, domains, maps, labels: None })
    }

    /// A global action given by one permutation per group element.
    pub fn global(group: FiniteGroup, points: usize, perms: Vec<Vec<usize>>) -> Self {
        let order = group.order();
        assert_eq!(perms.len(), order);
        let domains = vec![(0..points).collect::<Vec<_>>(); order];
        let mut maps = Vec::with_capacity(order);
        for g in 0..order {
            assert_eq!(perms[g].len(), points);
            maps.push((0..points).map(|x| (x, perms[g][x])).collect());
        }
        PartialAction::new(group, points, domains, maps).expect("global action is structural")
    }

    /// The trivial partial action: empty domains away from the identity.
    pub fn trivial(group: FiniteGroup, points: usize) -> Self {
        let order = group.order();
        let mut domains = vec![Vec::new(); order];
        let mut maps = vec![Vec::new(); order];
        domains[FiniteGroup::IDENTITY] = (0..points).collect();
        maps[FiniteGroup::IDENTITY] = (0..points).map(|x| (x, x)).collect();
        PartialAction::new(group, points, domains, maps).expect("trivial action is structural")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn domain(&self, g: usize) -> &[usize] {
        &self.domains[g]
    }

    pub fn map_pairs(&self, g: usize) -> &[(usize, usize)] {
        &self.maps[g]
    }

    pub fn in_domain(&self, g: usize, x: usize) -> bool {
        self.domains[g].binary_search(&x).is_ok()
    }

    /// `sigma_g(x)`, defined for `x` in `X_{g^-1}`.
    pub fn apply(&self, g: usize, x: usize) -> Option<usize> {
        self.maps[g]
            .binary_search_by_key(&x, |&(src, _)| src)
            .ok()
            .map(|i| self.maps[g][i].1)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.points);
        self.labels = Some(labels);
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Checks all partial-action axioms, returning every violation found.
    ///
    /// An empty list means the instance is a genuine partial action.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let order = self.group.order();
        let e = FiniteGroup::IDENTITY;

        // Identity acts fully and identically.
        for x in 0..self.points {
            if !self.in_domain(e, x) {
                out.push(Violation::IdentityNotFull { point: x });
            }
        }
        for x in 0..self.points {
            match self.apply(e, x) {
                Some(y) if y == x => {}
                _ => out.push(Violation::IdentityNotIdentityMap { point: x }),
            }
        }

        // sigma_g must be a bijection X_{g^-1} -> X_g.
        let mut bijective = vec![true; order];
        for g in 0..order {
            let ginv = self.group.inv(g);
            let sources: Vec<usize> = self.maps[g].iter().map(|&(x, _)| x).collect();
            if sources != self.domains[ginv] {
                bijective[g] = false;
                out.push(Violation::NotBijection {
                    g,
                    detail: format!(
                        "defined on {} points, X_{{{}^-1}} has {}",
                        sources.len(),
                        g,
                        self.domains[ginv].len()
                    ),
                });
                continue;
            }
            let mut images: Vec<usize> = self.maps[g].iter().map(|&(_, y)| y).collect();
            images.sort_unstable();
            let distinct = images.windows(2).all(|w| w[0] != w[1]);
            if !distinct || images != self.domains[g] {
                bijective[g] = false;
                out.push(Violation::NotBijection {
                    g,
                    detail: "images do not enumerate X_g".to_string(),
                });
            }
        }

        // sigma_{g^-1} inverts sigma_g.
        for g in 0..order {
            let ginv = self.group.inv(g);
            if !bijective[g] || !bijective[ginv] {
                continue;
            }
            for &(x, y) in &self.maps[g] {
                if self.apply(ginv, y) != Some(x) {
                    out.push(Violation::InverseMismatch { g, x });
                }
            }
        }

        // Extension axiom: x in X_{g^-1}, sigma_g(x) in X_{h^-1} imply
        // x in X_{(hg)^-1} and sigma_{hg}(x) = sigma_h(sigma_g(x)).
        for g in 0..order {
            if !bijective[g] {
                continue;
            }
            for &(x, y) in &self.maps[g] {
                for h in 0..order {
                    if !bijective[h] || !self.in_domain(self.group.inv(h), y) {
                        continue;
                    }
                    let hg = self.group.mul(h, g);
                    let ok = self.in_domain(self.group.inv(hg), x)
                        && self.apply(hg, x) == self.apply(h, y);
                    if !ok {
                        out.push(Violation::ExtensionAxiom { g, h, x });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The type of a point, `tau = { g : x in X_g }`.
    pub fn point_type(&self, x: usize) -> PointType {
        assert!(x < self.points, "point out of range");
        let tau = self
            .group
            .elements()
            .filter(|&g| self.in_domain(g, x))
            .collect();
        PointType { point: x, tau }
    }

    /// All point types at once (one pass over the domains).
    pub fn point_types(&self) -> Vec<Vec<usize>> {
        let mut types = vec![Vec::new(); self.points];
        for g in self.group.elements() {
            for &x in &self.domains[g] {
                types[x].push(g);
            }
        }
        types
    }

    /// Orbit partition: the finest partition where `x` and `sigma_g(x)`
    /// share a block. Blocks are sorted and ordered by their minima.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut dsu = DisjointSets::new(self.points);
        for g in self.group.elements() {
            for &(x, y) in &self.maps[g] {
                dsu.union(x, y);
            }
        }
        dsu.blocks()
    }

    /// Freeness check: returns a witness `(g, x)` with `g != 1` and
    /// `sigma_g(x) = x` if one exists, `None` when the action is free.
    pub fn freeness_witness(&self) -> Option<(usize, usize)> {
        for g in self.group.elements() {
            if g == FiniteGroup::IDENTITY {
                continue;
            }
            for &(x, y) in &self.maps[g] {
                if x == y {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn is_free(&self) -> bool {
        self.freeness_witness().is_none()
    }

    /// Orbit space size and the basis of the algebra of invariant functions.
    ///
    /// A function is invariant exactly when it is constant on orbits, so the
    /// basis is the list of orbit indicator supports. Both one-sided
    /// invariance criteria are computed independently and asserted equal.
    pub fn quotient_and_fixed(&self) -> FixedBasis {
        // Left criterion: f(sigma_g(x)) = f(x) on X_{g^-1}.
        let mut left = DisjointSets::new(self.points);
        for g in self.group.elements() {
            for &(x, y) in &self.maps[g] {
                left.union(x, y);
            }
        }
        // Right criterion: f(sigma_{g^-1}(y)) = f(y) on X_g.
        let mut right = DisjointSets::new(self.points);
        for g in self.group.elements() {
            let ginv = self.group.inv(g);
            for &y in &self.domains[g] {
                if let Some(x) = self.apply(ginv, y) {
                    right.union(y, x);
                }
            }
        }
        let left_blocks = left.blocks();
        assert_eq!(
            left_blocks,
            right.blocks(),
            "one-sided invariance criteria disagree"
        );
        FixedBasis {
            orbit_count: left_blocks.len(),
            orbit_indicators: left_blocks,
        }
    }

    /// Restriction to an arbitrary point subset.
    ///
    /// The restricted domains are `{ x : x and its image both survive }`;
    /// this is again a partial action for any subset, and is exact (domains
    /// and maps unchanged) when the subset is invariant. Returns the
    /// restriction and the map from new point indices to original ones.
    pub fn restrict(&self, keep: &[usize]) -> (PartialAction, Vec<usize>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.points];
        for (i, &x) in keep.iter().enumerate() {
            new_index[x] = i;
        }
        let order = self.group.order();
        let mut domains = vec![Vec::new(); order];
        let mut maps = vec![Vec::new(); order];
        for g in 0..order {
            for &(x, y) in &self.maps[g] {
                if new_index[x] != usize::MAX && new_index[y] != usize::MAX {
                    maps[g].push((new_index[x], new_index[y]));
                    domains[g].push(new_index[y]);
                }
            }
        }
        let mut restricted =
            PartialAction::new(self.group.clone(), keep.len(), domains, maps)
                .expect("restriction is structural");
        if self.labels.is_some() {
            restricted.set_labels(keep.iter().map(|&x| self.label(x)).collect());
        }
        (restricted, keep)
    }

    /// Disjoint union of two instances over the same group.
    pub fn disjoint_union(&self, other: &PartialAction) -> PartialAction {
        assert_eq!(self.group, other.group, "disjoint union needs one group");
        let order = self.group.order();
        let offset = self.points;
        let mut domains = self.domains.clone();
        let mut maps = self.maps.clone();
        for g in 0..order {
            domains[g].extend(other.domains[g].iter().map(|&x| x + offset));
            maps[g].extend(other.maps[g].iter().map(|&(x, y)| (x + offset, y + offset)));
        }
        let mut out = PartialAction::new(self.group.clone(), self.points + other.points, domains, maps)
            .expect("union is structural");
        if self.labels.is_some() || other.labels.is_some() {
            let labels = (0..self.points)
                .map(|x| self.label(x))
                .chain((0..other.points).map(|x| other.label(x)))
                .collect();
            out.set_labels(labels);
        }
        out
    }

    /// Canonical line-oriented rendering of the instance, used for digests
    /// and determinism tests. Identity data and empty domains are omitted
    /// (they are forced by the axioms and the defaults).
    pub fn canonical_text(&self) -> String {
        let mut out = String::from("group table\n");
        out.push_str(&self.group.canonical_text());
        out.push_str(&format!("points {}\n", self.points));
        for g in 1..self.group.order() {
            if self.domains[g].is_empty() {
                continue;
            }
            let pts: Vec<String> = self.domains[g].iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("domain g={}: {}\n", g, pts.join(" ")));
        }
        for g in 1..self.group.order() {
            if self.maps[g].is_empty() {
                continue;
            }
            let pairs: Vec<String> = self.maps[g]
                .iter()
                .map(|&(x, y)| format!("{x}->{y}"))
                .collect();
            out.push_str(&format!("map g={}: {}\n", g, pairs.join(" ")));
        }
        out
    }
}

/// The orbit count and the invariant-function basis of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedBasis {
    pub orbit_count: usize,
    /// Each entry is the sorted support of one orbit indicator function.
    pub orbit_indicators: Vec<Vec<usize>>,
}

/// Plain union-find with path halving, used for orbit partitions.
struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }

    /// Blocks sorted internally and by minimum element.
    fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            grouped.entry(r).or_default().push(x);
        }
        grouped.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn swap_action() -> PartialAction {
        // Global Z2 swapping two points.
        PartialAction::global(
            FiniteGroup::cyclic(2),
            2,
            vec![vec![0, 1], vec![1, 0]],
        )
    }

    #[test]
    fn global_actions_validate() {
        assert!(swap_action().validate().is_empty());
        let z3 = FiniteGroup::cyclic(3);
        let rot = PartialAction::global(
            z3,
            3,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        );
        assert!(rot.validate().is_empty());
    }

    #[test]
    fn non_bijective_map_is_flagged() {
        // Z2 on {0,1}: X_g = {0,1} but sigma_g defined only on {0}.
        let z2 = FiniteGroup::cyclic(2);
        let pa = PartialAction::new(
            z2,
            2,
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![(0, 0), (1, 1)], vec![(0, 0)]],
        )
        .unwrap();
        assert!(pa
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::NotBijection { g: 1, .. })));
    }

    #[test]
    fn extension_axiom_witness() {
        // Z4 on 2 points: sigma_g swaps, but sigma_{g^2} is missing where the
        // composition demands it (a valid instance with one map deleted).
        let z4 = FiniteGroup::cyclic(4);
        let mut domains = vec![Vec::new(); 4];
        let mut maps = vec![Vec::new(); 4];
        domains[0] = vec![0, 1];
        maps[0] = vec![(0, 0), (1, 1)];
        domains[1] = vec![0, 1];
        maps[1] = vec![(0, 1), (1, 0)];
        domains[3] = vec![0, 1];
        maps[3] = vec![(0, 1), (1, 0)];
        let pa = PartialAction::new(z4, 2, domains, maps).unwrap();
        let violations = pa.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::ExtensionAxiom { g: 1, h: 1, .. })));
    }

    #[test]
    fn point_types() {
        let glob = swap_action();
        assert_eq!(glob.point_type(0).tau, vec![0, 1]);
        let triv = PartialAction::trivial(FiniteGroup::cyclic(3), 2);
        assert_eq!(triv.point_type(1).tau, vec![0]);
    }

    #[test]
    fn type_transport_under_maps() {
        // point_type(sigma_g(x)) = g * point_type(x), exhaustively.
        let pa = swap_action();
        let g = pa.group().clone();
        for gg in g.elements() {
            for &(x, y) in pa.map_pairs(gg) {
                let mut moved: Vec<usize> = pa
                    .point_type(x)
                    .tau
                    .iter()
                    .map(|&t| g.mul(gg, t))
                    .collect();
                moved.sort_unstable();
                assert_eq!(moved, pa.point_type(y).tau);
            }
        }
    }

    #[test]
    fn orbit_partitions() {
        let triv = PartialAction::trivial(FiniteGroup::cyclic(2), 3);
        assert_eq!(triv.orbits(), vec![vec![0], vec![1], vec![2]]);
        let swap = swap_action();
        assert_eq!(swap.orbits(), vec![vec![0, 1]]);
    }

    #[test]
    fn freeness_examples() {
        // Regular translation of Z2 on itself is free.
        let z2 = FiniteGroup::cyclic(2);
        let regular = PartialAction::global(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]);
        assert!(regular.is_free());
        // The trivial partial action is vacuously free.
        assert!(PartialAction::trivial(z2.clone(), 4).is_free());
        // The global trivial action of Z2 on one point is not free.
        let fixed = PartialAction::global(z2, 1, vec![vec![0], vec![0]]);
        assert_eq!(fixed.freeness_witness(), Some((1, 0)));
    }

    #[test]
    fn fixed_basis_is_orbit_indicators() {
        let triv = PartialAction::trivial(FiniteGroup::cyclic(5), 4);
        let fixed = triv.quotient_and_fixed();
        assert_eq!(fixed.orbit_count, 4);
        assert_eq!(fixed.orbit_indicators.len(), 4);

        let swap = swap_action();
        let fixed = swap.quotient_and_fixed();
        assert_eq!(fixed.orbit_count, 1);
        assert_eq!(fixed.orbit_indicators, vec![vec![0, 1]]);
    }

    #[test]
    fn restriction_of_global_action() {
        // Restrict the regular Z3 translation to two of its three points.
        let z3 = FiniteGroup::cyclic(3);
        let rot = PartialAction::global(
            z3,
            3,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        );
        let (sub, back) = rot.restrict(&[0, 1]);
        assert_eq!(back, vec![0, 1]);
        assert!(sub.validate().is_empty());
        assert_eq!(sub.points(), 2);
        // sigma_1 maps 0 -> 1 and nothing else survives.
        assert_eq!(sub.apply(1, 0), Some(1));
        assert_eq!(sub.apply(1, 1), None);
    }

    #[test]
    fn union_then_restrict_roundtrip() {
        let z2 = FiniteGroup::cyclic(2);
        let a = PartialAction::trivial(z2.clone(), 2);
        let b = swap_action();
        let u = a.disjoint_union(&b);
        assert!(u.validate().is_empty());
        assert_eq!(u.points(), 4);
        let (first, _) = u.restrict(&[0, 1]);
        assert_eq!(first, a);
        let (second, _) = u.restrict(&[2, 3]);
        assert_eq!(second, b);
    }

    #[test]
    fn canonical_text_is_stable() {
        let swap = swap_action();
        let text = swap.canonical_text();
        assert_eq!(
            text,
            "group table\n0 1\n1 0\npoints 2\ndomain g=1: 0 1\nmap g=1: 0->1 1->0\n"
        );
    }
}
