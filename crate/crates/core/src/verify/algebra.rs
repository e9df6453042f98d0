//! Finite-dimensional *-algebras with exact rational structure constants.
//!
//! The partial crossed product of a finite instance has basis
//! `{ (x, g) : x in X_g }` (a point mass times a group element), 0/1
//! structure constants, and an involution permuting the basis. Matrix
//! amplifications keep that shape, so every verification below is a finite
//! exact computation.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::action::PartialAction;
use crate::linalg::{Q, RowSpace};

/// A finite-dimensional *-algebra over `Q`, given by labeled basis
/// elements, a sparse product table, and a basis-level involution.
#[derive(Clone, Debug)]
pub struct RationalAlgebra {
    labels: Vec<String>,
    /// `product[i * dim + j]` is `e_i e_j` as a sparse combination.
    product: Vec<Vec<(usize, Q)>>,
    /// `star[i]` is `e_i^*` as a sparse combination.
    star: Vec<Vec<(usize, Q)>>,
    /// The multiplicative unit, dense.
    unit: Vec<Q>,
}

impl RationalAlgebra {
    pub fn new(
        labels: Vec<String>,
        product: Vec<Vec<(usize, Q)>>,
        star: Vec<Vec<(usize, Q)>>,
        unit: Vec<Q>,
    ) -> Self {
        let dim = labels.len();
        assert_eq!(product.len(), dim * dim);
        assert_eq!(star.len(), dim);
        assert_eq!(unit.len(), dim);
        RationalAlgebra { labels, product, star, unit }
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.product[i * self.dimension() + j]
    }

    pub fn star_basis(&self, i: usize) -> &[(usize, Q)] {
        &self.star[i]
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dimension()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = self.zero();
        v[i] = Q::one();
        v
    }

    /// Dense product of two elements.
    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for (t, c) in self.mul_basis(i, j) {
                    out[*t] += ai * bj * c;
                }
            }
        }
        out
    }

    /// Dense involution of an element (coefficients are rational, so the
    /// involution is linear here).
    pub fn star(&self, a: &[Q]) -> Vec<Q> {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (t, c) in self.star_basis(i) {
                out[*t] += ai * c;
            }
        }
        out
    }

    pub fn is_projection(&self, p: &[Q]) -> bool {
        self.mul(p, p) == p && self.star(p) == p
    }

    /// `e_i * terms` as a normalized sparse combination.
    fn mul_basis_sparse_left(&self, i: usize, terms: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut out = Vec::new();
        for (t, c) in terms {
            for (u, d) in self.mul_basis(i, *t) {
                out.push((*u, c * d));
            }
        }
        normalize_sparse(out)
    }

    /// `terms * e_k` as a normalized sparse combination.
    fn mul_basis_sparse_right(&self, terms: &[(usize, Q)], k: usize) -> Vec<(usize, Q)> {
        let mut out = Vec::new();
        for (t, c) in terms {
            for (u, d) in self.mul_basis(*t, k) {
                out.push((*u, c * d));
            }
        }
        normalize_sparse(out)
    }

    /// First associativity failure over all basis triples, if any.
    /// Sparse throughout, so the full cubic sweep stays cheap.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dimension();
        for i in 0..dim {
            for j in 0..dim {
                let ij = normalize_sparse(self.mul_basis(i, j).to_vec());
                for k in 0..dim {
                    let jk = self.mul_basis(j, k);
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    let left = self.mul_basis_sparse_right(&ij, k);
                    let right = self.mul_basis_sparse_left(i, &normalize_sparse(jk.to_vec()));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First failure of the involution axioms (involutive, anti-
    /// multiplicative) over basis elements and pairs, if any.
    pub fn star_failure(&self) -> Option<String> {
        let dim = self.dimension();
        for i in 0..dim {
            let mut twice = Vec::new();
            for (t, c) in self.star_basis(i) {
                for (u, d) in self.star_basis(*t) {
                    twice.push((*u, c * d));
                }
            }
            if normalize_sparse(twice) != vec![(i, Q::one())] {
                return Some(format!("star not involutive at {}", self.label(i)));
            }
        }
        for i in 0..dim {
            let si = normalize_sparse(self.star_basis(i).to_vec());
            for j in 0..dim {
                let sj = normalize_sparse(self.star_basis(j).to_vec());
                let mut lhs = Vec::new();
                for (t, c) in self.mul_basis(i, j) {
                    for (u, d) in self.star_basis(*t) {
                        lhs.push((*u, c * d));
                    }
                }
                let mut rhs = Vec::new();
                for (t, c) in &sj {
                    for (u, d) in &si {
                        for (v, e) in self.mul_basis(*t, *u) {
                            rhs.push((*v, c * d * e));
                        }
                    }
                }
                if normalize_sparse(lhs) != normalize_sparse(rhs) {
                    return Some(format!(
                        "star not anti-multiplicative at ({}, {})",
                        self.label(i),
                        self.label(j)
                    ));
                }
            }
        }
        None
    }

    /// Unit axioms on all basis elements.
    pub fn unit_failure(&self) -> Option<usize> {
        (0..self.dimension()).find(|&i| {
            let e = self.basis_vector(i);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        })
    }

    /// Rank of the two-sided ideal generated by `p`: the span of
    /// `e_i p e_j` over all basis pairs, by exact elimination.
    pub fn ideal_rank(&self, p: &[Q]) -> usize {
        let dim = self.dimension();
        let mut space = RowSpace::new(dim);
        for i in 0..dim {
            let left = self.mul(&self.basis_vector(i), p);
            if left.iter().all(Zero::is_zero) {
                continue;
            }
            for j in 0..dim {
                let v = self.mul(&left, &self.basis_vector(j));
                space.insert(v);
                if space.is_full() {
                    return dim;
                }
            }
        }
        space.rank()
    }
}

/// Sorted, duplicate-merged sparse vector for exact comparison.
pub(crate) fn normalize_sparse(mut terms: Vec<(usize, Q)>) -> Vec<(usize, Q)> {
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(usize, Q)> = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// A crossed-product realization: the algebra plus the meaning of its
/// basis, `basis[i] = (point, group element)`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub algebra: RationalAlgebra,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Realization {
    pub fn index_of(&self, point: usize, g: usize) -> Option<usize> {
        self.index.get(&(point, g)).copied()
    }

    pub fn dimension(&self) -> usize {
        self.algebra.dimension()
    }
}

/// Realizes the partial crossed product of a valid instance.
///
/// Basis `(x, g)` for `x in X_g`, ordered by `g` then `x`; products are
/// `(x, g) (y, h) = (x, gh)` when `y = sigma_{g^-1}(x)` and zero
/// otherwise; the involution sends `(x, g)` to `(sigma_{g^-1}(x), g^-1)`.
/// Its dimension `Σ_g |X_g|` is the oracle the symbolic structure layer is
/// checked against.
pub fn realize_crossed_product(pa: &PartialAction) -> Realization {
    let group = pa.group();
    let mut basis = Vec::new();
    for g in group.elements() {
        for &x in pa.domain(g) {
            basis.push((x, g));
        }
    }
    let dim = basis.len();
    let index: HashMap<(usize, usize), usize> =
        basis.iter().copied().zip(0..).collect();
    let labels: Vec<String> = basis
        .iter()
        .map(|&(x, g)| format!("[{} d{}]", pa.label(x), g))
        .collect();

    let mut product = vec![Vec::new(); dim * dim];
    for (i, &(x, g)) in basis.iter().enumerate() {
        let pulled = pa.apply(group.inv(g), x).expect("x in X_g");
        for (j, &(y, h)) in basis.iter().enumerate() {
            if y == pulled {
                let gh = group.mul(g, h);
                let t = index[&(x, gh)];
                product[i * dim + j] = vec![(t, Q::one())];
            }
        }
    }

    let mut star = vec![Vec::new(); dim];
    for (i, &(x, g)) in basis.iter().enumerate() {
        let ginv = group.inv(g);
        let pulled = pa.apply(ginv, x).expect("x in X_g");
        star[i] = vec![(index[&(pulled, ginv)], Q::one())];
    }

    let mut unit = vec![Q::zero(); dim];
    for x in 0..pa.points() {
        unit[index[&(x, 0)]] = Q::one();
    }

    Realization {
        algebra: RationalAlgebra::new(labels, product, star, unit),
        basis,
        index,
    }
}

/// The matrix amplification `M_size(B)`, basis `(row, col, b)`.
pub fn matrix_algebra(b: &RationalAlgebra, size: usize) -> RationalAlgebra {
    let dim_b = b.dimension();
    let dim = size * size * dim_b;
    let idx = |j: usize, k: usize, t: usize| (j * size + k) * dim_b + t;

    let mut labels = Vec::with_capacity(dim);
    for j in 0..size {
        for k in 0..size {
            for t in 0..dim_b {
                labels.push(format!("e[{j},{k}]*{}", b.label(t)));
            }
        }
    }

    let mut product = vec![Vec::new(); dim * dim];
    for j in 0..size {
        for k in 0..size {
            for t in 0..dim_b {
                let i1 = idx(j, k, t);
                for k2 in 0..size {
                    for t2 in 0..dim_b {
                        let i2 = idx(k, k2, t2);
                        let terms: Vec<(usize, Q)> = b
                            .mul_basis(t, t2)
                            .iter()
                            .map(|(t3, c)| (idx(j, k2, *t3), c.clone()))
                            .collect();
                        product[i1 * dim + i2] = terms;
                    }
                }
            }
        }
    }

    let mut star = vec![Vec::new(); dim];
    for j in 0..size {
        for k in 0..size {
            for t in 0..dim_b {
                star[idx(j, k, t)] = b
                    .star_basis(t)
                    .iter()
                    .map(|(t2, c)| (idx(k, j, *t2), c.clone()))
                    .collect();
            }
        }
    }

    let mut unit = vec![Q::zero(); dim];
    for j in 0..size {
        for (t, c) in b.unit().iter().enumerate() {
            if !c.is_zero() {
                unit[idx(j, j, t)] = c.clone();
            }
        }
    }

    RationalAlgebra::new(labels, product, star, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::qi;
    use crate::tuples::tuple_action;

    #[test]
    fn trivial_action_realizes_commutatively() {
        let pa = PartialAction::trivial(FiniteGroup::cyclic(3), 4);
        let r = realize_crossed_product(&pa);
        assert_eq!(r.dimension(), 4);
        assert!(r.algebra.associativity_failure().is_none());
        assert!(r.algebra.star_failure().is_none());
        // Point masses are orthogonal idempotents.
        let e0 = r.algebra.basis_vector(0);
        assert_eq!(r.algebra.mul(&e0, &e0), e0);
        let e1 = r.algebra.basis_vector(1);
        assert!(r.algebra.mul(&e0, &e1).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn group_algebra_of_z2() {
        // Global trivial Z2 on one point realizes the group algebra of Z2.
        let z2 = FiniteGroup::cyclic(2);
        let pa = PartialAction::global(z2, 1, vec![vec![0], vec![0]]);
        let r = realize_crossed_product(&pa);
        assert_eq!(r.dimension(), 2);
        let delta_g = r.algebra.basis_vector(r.index_of(0, 1).unwrap());
        let unit = r.algebra.unit().to_vec();
        assert_eq!(r.algebra.mul(&delta_g, &delta_g), unit);
        assert_eq!(r.algebra.star(&delta_g), delta_g);
    }

    #[test]
    fn tuple_space_realization_dimension() {
        let z3 = FiniteGroup::cyclic(3);
        let r = realize_crossed_product(&tuple_action(&z3, 2));
        // dims: |X_1| = 2, |X_g| = 1, |X_{g^2}| = 1.
        assert_eq!(r.dimension(), 4);
        assert!(r.algebra.associativity_failure().is_none());
        assert!(r.algebra.star_failure().is_none());
        assert!(r.algebra.unit_failure().is_none());
    }

    #[test]
    fn ideal_ranks() {
        // In the 2x2 matrix realization (regular Z2), any nonzero projection
        // generates everything.
        let z2 = FiniteGroup::cyclic(2);
        let regular = PartialAction::global(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]);
        let r = realize_crossed_product(&regular);
        assert_eq!(r.dimension(), 4);
        let unit = r.algebra.unit().to_vec();
        assert_eq!(r.algebra.ideal_rank(&unit), 4);

        // In the group algebra of Z2, the averaging projection generates a
        // one-dimensional ideal.
        let pa = PartialAction::global(z2, 1, vec![vec![0], vec![0]]);
        let r = realize_crossed_product(&pa);
        let mut p = r.algebra.zero();
        p[0] = qi(1) / qi(2);
        p[1] = qi(1) / qi(2);
        assert!(r.algebra.is_projection(&p));
        assert_eq!(r.algebra.ideal_rank(&p), 1);
        assert_eq!(r.algebra.ideal_rank(r.algebra.unit()), 2);
    }

    #[test]
    fn matrix_amplification_axioms() {
        let z2 = FiniteGroup::cyclic(2);
        let pa = PartialAction::global(z2, 1, vec![vec![0], vec![0]]);
        let b = realize_crossed_product(&pa).algebra;
        let m2 = matrix_algebra(&b, 2);
        assert_eq!(m2.dimension(), 8);
        assert!(m2.associativity_failure().is_none());
        assert!(m2.star_failure().is_none());
        assert!(m2.unit_failure().is_none());
    }
}
