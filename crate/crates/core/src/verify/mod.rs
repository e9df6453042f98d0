//! Exact-arithmetic realization and verification.
//!
//! This is where "the crossed product is isomorphic to matrices over the
//! stabilizer system" stops being a claim: the algebras are realized over
//! the rationals and every map is checked on every basis element, with no
//! tolerances. The realization dimension `Σ_g |X_g|` doubles as the
//! independent oracle for the symbolic block bookkeeping in
//! [`crate::structure`].

mod algebra;
mod maps;

pub use algebra::{matrix_algebra, realize_crossed_product, RationalAlgebra, Realization};
pub use maps::{
    build_corner, build_expectation, build_psi, check_fullness, corner_projection,
    freeness_equivalence, CornerResult, ExpectationResult, FreenessEquivalence, PsiResult,
    StratumFreeness,
};

use thiserror::Error;

use crate::decomp::NotDecomposable;

/// One named verification outcome, with an optional witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn from(name: &str, ok: bool, witness: Option<String>) -> Self {
        CheckOutcome { name: name.to_string(), ok, witness: if ok { None } else { witness } }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    NotDecomposable(#[from] NotDecomposable),
    #[error("tuple {0} is not realized by the instance")]
    TupleNotPresent(String),
    #[error("the given element is not a projection")]
    NotProjection,
}
