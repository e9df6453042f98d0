//! Exact rational linear algebra.
//!
//! Everything downstream of the algebra realizations works over `Q`
//! (arbitrary-precision rationals), so "verified" means verified: there are
//! no tolerances anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar field for all verification work.
pub type Q = BigRational;

/// Shorthand for an integer scalar.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A dense matrix over `Q`, stored row-major.
///
/// Used for every linear map that gets verified term by term: conditional
/// expectations, corner embeddings, the crossed-product isomorphisms.
/// `rows` is the codomain dimension and `cols` the domain dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from its columns (images of the domain basis).
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![Q::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Q::zero();
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    acc += self.get(i, j) * &v[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Rank by fraction-preserving Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.cols);
        for i in 0..self.rows {
            let row: Vec<Q> = (0..self.cols).map(|j| self.get(i, j).clone()).collect();
            space.insert(row);
        }
        space.rank()
    }

    /// True when every entry is `>= 0`.
    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }
}

/// An incrementally built row space in echelon form.
///
/// Rows are kept normalized with leading coefficient one and pairwise
/// distinct pivot columns, which makes `insert` and `contains` cheap even
/// when many vectors are thrown at the space (ideal spans, corner spans).
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    /// (pivot column, normalized row), sorted by pivot column.
    rows: Vec<(usize, Vec<Q>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, v: &mut [Q]) {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for j in *pivot..self.cols {
                    if !row[j].is_zero() {
                        v[j] -= &factor * &row[j];
                    }
                }
            }
        }
    }

    /// Adds a vector to the space. Returns true if the rank grew.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.reduce(&mut v);
        let pivot = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, v));
        true
    }

    /// Membership test.
    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// True when the space is all of `Q^cols`.
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity() {
        assert_eq!(QMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_of_averaging_matrix() {
        // [[1/2, 1/2], [1/2, 1/2]] has rank one and squares to itself.
        let half = qr(1, 2);
        let mut e = QMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                e.set(i, j, half.clone());
            }
        }
        assert_eq!(e.rank(), 1);
        assert_eq!(e.mul(&e), e);
    }

    #[test]
    fn row_space_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(vec![qi(1), qi(2), qi(0)]));
        assert!(s.insert(vec![qi(0), qi(1), qi(1)]));
        assert!(!s.insert(vec![qi(1), qi(3), qi(1)]));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[qi(2), qi(5), qi(1)]));
        assert!(!s.contains(&[qi(0), qi(0), qi(1)]));
        assert!(!s.is_full());
    }

    #[test]
    fn apply_and_mul_agree() {
        let mut a = QMatrix::zeros(2, 3);
        a.set(0, 0, qi(1));
        a.set(0, 2, qi(2));
        a.set(1, 1, qi(-1));
        let v = vec![qi(3), qi(4), qi(5)];
        assert_eq!(a.apply(&v), vec![qi(13), qi(-4)]);
        let b = QMatrix::from_columns(3, &[v]);
        assert_eq!(a.mul(&b).column(0), vec![qi(13), qi(-4)]);
    }
}
