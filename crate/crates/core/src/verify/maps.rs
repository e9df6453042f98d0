//! Term-by-term verification of the structure maps.
//!
//! For a decomposable instance this module builds, with exact rational
//! coefficients, the crossed-product isomorphism onto matrices over the
//! stabilizer system, the conditional expectation onto the invariant
//! functions, and the corner embedding of the fixed-point algebra — and
//! then checks every claimed property on every basis element, including
//! independence from the choice of coset representatives and base tuples.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::PartialAction;
use crate::battery::rng;
use crate::decomp::{check_decomposition, detect_parameter, stratify, NotDecomposable, OrbitSummand};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{QMatrix, Q, RowSpace};
use crate::tuples::{orbit_data, Tuple};
use crate::verify::algebra::{matrix_algebra, realize_crossed_product, RationalAlgebra, Realization};
use crate::verify::{CheckOutcome, VerifyError};

/// Number of sampled alternatives when the representative choices are too
/// many to enumerate.
const REP_SAMPLES: usize = 6;
const REP_EXHAUSTIVE_LIMIT: usize = 48;

fn certificate(pa: &PartialAction) -> Result<Vec<OrbitSummand>, NotDecomposable> {
    let n = detect_parameter(pa).ok_or_else(|| {
        let types = pa.point_types();
        let size0 = types[0].len();
        let other = types
            .iter()
            .enumerate()
            .find(|(_, t)| t.len() != size0)
            .expect("mixed sizes");
        NotDecomposable { point_a: 0, size_a: size0, point_b: other.0, size_b: other.1.len() }
    })?;
    Ok(check_decomposition(pa, n).expect("parameter just detected").summands)
}

/// Alternative representative lists `y_j = h_j x_{perm(j)}` (with
/// `y_0 = 1` fixed), exhaustive when few, sampled otherwise.
fn rep_variants(
    group: &FiniteGroup,
    stab: &Subgroup,
    reps: &[usize],
    seed: u64,
) -> Vec<Vec<usize>> {
    let m = reps.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    let h = stab.members();
    let count = h.len().pow(m as u32) * (1..=m).product::<usize>();
    let mut out = Vec::new();
    if count <= REP_EXHAUSTIVE_LIMIT {
        let tail: Vec<usize> = (1..=m).collect();
        let mut translates: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..m {
            let mut next = Vec::new();
            for t in &translates {
                for &hh in h {
                    let mut t2 = t.clone();
                    t2.push(hh);
                    next.push(t2);
                }
            }
            translates = next;
        }
        for perm in permutations(&tail) {
            for t in &translates {
                let mut ys = vec![reps[0]];
                for (slot, &j) in perm.iter().enumerate() {
                    ys.push(group.mul(t[slot], reps[j]));
                }
                out.push(ys);
            }
        }
    } else {
        let mut r = rng(seed);
        for _ in 0..REP_SAMPLES {
            let mut tail: Vec<usize> = (1..=m).collect();
            tail.shuffle(&mut r);
            let mut ys = vec![reps[0]];
            for &j in &tail {
                let hh = h[r.gen_range(0..h.len())];
                ys.push(group.mul(hh, reps[j]));
            }
            out.push(ys);
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Piece assignment for a summand relative to a representative list: point
/// `x` lies in piece `j` when its type is `y_j^-1 tau`.
fn pieces_for(pa: &PartialAction, base: &Tuple, reps: &[usize]) -> Vec<Vec<usize>> {
    let group = pa.group();
    let orbit: Vec<Tuple> = reps
        .iter()
        .map(|&y| base.translate(group, group.inv(y)))
        .collect();
    let types = pa.point_types();
    let mut pieces = vec![Vec::new(); reps.len()];
    for (x, t) in types.iter().enumerate() {
        if let Some(j) = orbit.iter().position(|o| o.members() == t.as_slice()) {
            pieces[j].push(x);
        }
    }
    pieces
}

use crate::verify::algebra::normalize_sparse;

// ---------------------------------------------------------------------------
// The crossed-product isomorphism.
// ---------------------------------------------------------------------------

/// The verified isomorphism from a summand crossed product onto matrices
/// over the stabilizer crossed product on the slice.
pub struct PsiResult {
    /// The map as a matrix (a basis permutation).
    pub matrix: QMatrix,
    /// Basis permutation form of the map.
    pub permutation: Vec<usize>,
    /// Realization of the summand crossed product (the domain).
    pub domain: Realization,
    /// Realization of the stabilizer system on the slice.
    pub stabilizer: Realization,
    /// Slice points (indices into the instance handed to `build_psi`).
    pub slice: Vec<usize>,
    /// Members of the stabilizer, indexing its element order.
    pub stabilizer_members: Vec<usize>,
    /// The codomain `M_{m+1}(A_tau x H)`.
    pub codomain: RationalAlgebra,
    pub checks: Vec<CheckOutcome>,
}

impl PsiResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Builds the isomorphism for the summand of `tau` and verifies it is a
/// star-preserving, unital, multiplicative bijection, exactly.
///
/// A basis element `(x, g)` with `x` of type `x_j^-1 tau` decomposes
/// `g = x_j^-1 h x_k`; it maps to `sigma_{x_j}(x) delta_h` in matrix slot
/// `(j, k)` of the stabilizer system on the slice.
pub fn build_psi(pa: &PartialAction, tau: &Tuple) -> Result<PsiResult, VerifyError> {
    let summands = certificate(pa).map_err(VerifyError::NotDecomposable)?;
    let group = pa.group().clone();
    let summand = summands
        .iter()
        .find(|s| s.orbit.contains(tau))
        .ok_or_else(|| VerifyError::TupleNotPresent(tau.render()))?;

    // Restrict to the summand; the isomorphism is per orbit summand.
    let (sub, _back) = pa.restrict(&summand.points);

    // Base-point data for the *given* tuple, not the canonical one.
    let data = orbit_data(&group, tau);
    let stab = &data.stabilizer;
    let reps = &data.reps;
    let m = data.m;
    let pieces = pieces_for(&sub, tau, reps);

    // The slice X_tau and the stabilizer system on it.
    let slice: Vec<usize> = pieces[0].clone();
    let (h_group, h_members) = stab.as_group(&group);
    let h_index = |h: usize| h_members.binary_search(&h).expect("member of H");
    let slice_index = |y: usize| slice.binary_search(&y).expect("slice point");
    let h_perms: Vec<Vec<usize>> = (0..h_group.order())
        .map(|hi| {
            slice
                .iter()
                .map(|&y| slice_index(sub.apply(h_members[hi], y).expect("H acts on slice")))
                .collect()
        })
        .collect();
    let mut slice_action = PartialAction::global(h_group, slice.len(), h_perms);
    slice_action.set_labels(slice.iter().map(|&y| sub.label(y)).collect());

    let domain = realize_crossed_product(&sub);
    let stabilizer = realize_crossed_product(&slice_action);
    let dim_b = stabilizer.dimension();
    let codomain = matrix_algebra(&stabilizer.algebra, m + 1);
    let cod_idx = |j: usize, k: usize, t: usize| (j * (m + 1) + k) * dim_b + t;

    // The basis permutation.
    let mut permutation = vec![usize::MAX; domain.dimension()];
    for (i, &(x, g)) in domain.basis.iter().enumerate() {
        let j = pieces
            .iter()
            .position(|p| p.binary_search(&x).is_ok())
            .expect("every summand point has a piece");
        // g = x_j^-1 h x_k with h = x_j g x_k^-1 in H, for a unique k.
        let xjg = group.mul(reps[j], g);
        let k = reps
            .iter()
            .position(|&xk| stab.contains(group.mul(xjg, group.inv(xk))))
            .expect("g decomposes over the coset representatives");
        let h = group.mul(xjg, group.inv(reps[k]));
        let y = sub.apply(reps[j], x).expect("x_j moves piece j into the slice");
        let t = stabilizer
            .index_of(slice_index(y), h_index(h))
            .expect("stabilizer basis element");
        permutation[i] = cod_idx(j, k, t);
    }

    // Verdict: linear bijection, multiplicative, star-preserving, unital.
    let mut checks = Vec::new();

    let dims_match = domain.dimension() == codomain.dimension();
    let mut seen = vec![false; codomain.dimension()];
    let mut bijective = dims_match;
    if bijective {
        for &t in &permutation {
            if t == usize::MAX || seen[t] {
                bijective = false;
                break;
            }
            seen[t] = true;
        }
    }
    checks.push(CheckOutcome::from(
        "bijective",
        bijective,
        (!bijective).then(|| format!("{} vs {}", domain.dimension(), codomain.dimension())),
    ));

    let map_terms = |terms: &[(usize, Q)]| -> Vec<(usize, Q)> {
        normalize_sparse(
            terms
                .iter()
                .map(|(t, c)| (permutation[*t], c.clone()))
                .collect(),
        )
    };

    let mut multiplicative = true;
    let mut mult_witness = None;
    'mult: for i in 0..domain.dimension() {
        for j in 0..domain.dimension() {
            let lhs = map_terms(domain.algebra.mul_basis(i, j));
            let rhs = normalize_sparse(
                codomain.mul_basis(permutation[i], permutation[j]).to_vec(),
            );
            if lhs != rhs {
                multiplicative = false;
                mult_witness = Some(format!(
                    "({}, {})",
                    domain.algebra.label(i),
                    domain.algebra.label(j)
                ));
                break 'mult;
            }
        }
    }
    checks.push(CheckOutcome::from("multiplicative", multiplicative, mult_witness));

    let mut star_ok = true;
    let mut star_witness = None;
    for i in 0..domain.dimension() {
        let lhs = map_terms(domain.algebra.star_basis(i));
        let rhs = normalize_sparse(codomain.star_basis(permutation[i]).to_vec());
        if lhs != rhs {
            star_ok = false;
            star_witness = Some(domain.algebra.label(i).to_string());
            break;
        }
    }
    checks.push(CheckOutcome::from("star_preserving", star_ok, star_witness));

    let mut pushed_unit = vec![Q::zero(); codomain.dimension()];
    for (i, c) in domain.algebra.unit().iter().enumerate() {
        if !c.is_zero() {
            pushed_unit[permutation[i]] += c;
        }
    }
    let unital = pushed_unit == codomain.unit();
    checks.push(CheckOutcome::from("unital", unital, None));

    let mut matrix = QMatrix::zeros(codomain.dimension(), domain.dimension());
    for (i, &t) in permutation.iter().enumerate() {
        matrix.set(t, i, Q::one());
    }

    Ok(PsiResult {
        matrix,
        permutation,
        domain,
        stabilizer,
        slice,
        stabilizer_members: h_members,
        codomain,
        checks,
    })
}

// ---------------------------------------------------------------------------
// The conditional expectation.
// ---------------------------------------------------------------------------

/// The verified conditional expectation onto the invariant functions.
pub struct ExpectationResult {
    /// The expectation as a matrix on functions-on-points.
    pub matrix: QMatrix,
    pub checks: Vec<CheckOutcome>,
}

impl ExpectationResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Fills the expectation columns of one summand:
/// `E(a) = 1/(|H| (m+1)) Σ_{j,k} Σ_h alpha_{y_j^-1 h y_k}(pi_k(a))`.
fn summand_expectation(
    pa: &PartialAction,
    base: &Tuple,
    stab: &Subgroup,
    reps: &[usize],
    matrix: &mut QMatrix,
) {
    let group = pa.group();
    let pieces = pieces_for(pa, base, reps);
    let weight = Q::new(1.into(), ((stab.order() * reps.len()) as i64).into());
    for (k, piece) in pieces.iter().enumerate() {
        for &x in piece {
            // Column of the point mass at x.
            for &yj in reps {
                for &h in stab.members() {
                    // w = y_j^-1 h y_k; alpha_w(1_x) is the mass at sigma_w(x).
                    let w = group.mul(group.mul(group.inv(yj), h), reps[k]);
                    let target = pa.apply(w, x).expect("transport within the summand");
                    let cur = matrix.get(target, x) + &weight;
                    matrix.set(target, x, cur);
                }
            }
        }
    }
}

/// Builds the canonical conditional expectation of a decomposable instance
/// and verifies: idempotence, range equal to the invariant functions, the
/// bimodule property over the range, unitality, faithfulness, and
/// independence of both the representative choices and the base tuples.
pub fn build_expectation(pa: &PartialAction, seed: u64) -> Result<ExpectationResult, VerifyError> {
    let summands = certificate(pa).map_err(VerifyError::NotDecomposable)?;
    let group = pa.group().clone();
    let n = pa.points();

    let mut matrix = QMatrix::zeros(n, n);
    for s in &summands {
        summand_expectation(pa, &s.base, &s.data.stabilizer, &s.data.reps, &mut matrix);
    }

    let mut checks = Vec::new();
    checks.push(CheckOutcome::from(
        "idempotent",
        matrix.mul(&matrix) == matrix,
        None,
    ));

    let fixed = pa.quotient_and_fixed();
    let mut range_ok = matrix.rank() == fixed.orbit_count;
    'range: for orbit in &fixed.orbit_indicators {
        // E fixes orbit indicators, and every column is constant on orbits.
        let mut u = vec![Q::zero(); n];
        for &x in orbit {
            u[x] = Q::one();
        }
        if matrix.apply(&u) != u {
            range_ok = false;
            break;
        }
        for x in 0..n {
            let col = matrix.column(x);
            let v0 = &col[orbit[0]];
            if orbit.iter().any(|&y| &col[y] != v0) {
                range_ok = false;
                break 'range;
            }
        }
    }
    checks.push(CheckOutcome::from("range_is_fixed_algebra", range_ok, None));

    // Bimodule over the range: E(u f) = u E(f) for invariant u.
    let mut bimodule = true;
    'bimod: for orbit in &fixed.orbit_indicators {
        for x in 0..n {
            let in_orbit = orbit.binary_search(&x).is_ok();
            let col = matrix.column(x);
            let lhs = if in_orbit { col.clone() } else { vec![Q::zero(); n] };
            let mut rhs = vec![Q::zero(); n];
            for &y in orbit {
                rhs[y] = col[y].clone();
            }
            if lhs != rhs {
                bimodule = false;
                break 'bimod;
            }
        }
    }
    checks.push(CheckOutcome::from("bimodule_over_range", bimodule, None));

    let ones = vec![Q::one(); n];
    checks.push(CheckOutcome::from("unital", matrix.apply(&ones) == ones, None));

    // Faithfulness on nonnegative functions: nonnegative entries and no
    // vanishing column.
    let faithful = matrix.is_entrywise_nonnegative()
        && (0..n).all(|x| matrix.column(x).iter().any(|v| !v.is_zero()));
    checks.push(CheckOutcome::from("faithful", faithful, None));

    // Independence of the representative choice.
    let mut rep_ok = true;
    let mut rep_witness = None;
    'reps: for s in &summands {
        for ys in rep_variants(&group, &s.data.stabilizer, &s.data.reps, seed) {
            let mut alt = QMatrix::zeros(n, n);
            for s2 in &summands {
                if s2.base == s.base {
                    summand_expectation(pa, &s2.base, &s2.data.stabilizer, &ys, &mut alt);
                } else {
                    summand_expectation(pa, &s2.base, &s2.data.stabilizer, &s2.data.reps, &mut alt);
                }
            }
            if alt != matrix {
                rep_ok = false;
                rep_witness = Some(format!("summand {}", s.base.render()));
                break 'reps;
            }
        }
    }
    checks.push(CheckOutcome::from("representative_independent", rep_ok, rep_witness));

    // Independence of the base tuple within each orbit.
    let mut base_ok = true;
    let mut base_witness = None;
    'bases: for s in &summands {
        for other in &s.orbit {
            if other == &s.base {
                continue;
            }
            let data = orbit_data(&group, other);
            let mut alt = QMatrix::zeros(n, n);
            for s2 in &summands {
                if s2.base == s.base {
                    summand_expectation(pa, other, &data.stabilizer, &data.reps, &mut alt);
                } else {
                    summand_expectation(pa, &s2.base, &s2.data.stabilizer, &s2.data.reps, &mut alt);
                }
            }
            if alt != matrix {
                base_ok = false;
                base_witness = Some(format!("{} vs {}", s.base.render(), other.render()));
                break 'bases;
            }
        }
    }
    checks.push(CheckOutcome::from("base_point_independent", base_ok, base_witness));

    Ok(ExpectationResult { matrix, checks })
}

// ---------------------------------------------------------------------------
// The corner embedding.
// ---------------------------------------------------------------------------

/// The verified corner embedding of the fixed-point algebra.
pub struct CornerResult {
    /// Columns are the images of the orbit indicator basis.
    pub c: QMatrix,
    /// The corner projection `c(1)`.
    pub p: Vec<Q>,
    /// Realization of the full crossed product.
    pub realization: Realization,
    pub checks: Vec<CheckOutcome>,
}

impl CornerResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Fills the corner column of one invariant basis element:
/// `c(a) = 1/(|H| (m+1)) Σ_{j,k} Σ_h pi_j(a) delta_{y_j^-1 h y_k}`.
fn corner_column(
    pa: &PartialAction,
    realization: &Realization,
    base: &Tuple,
    stab: &Subgroup,
    reps: &[usize],
    support: &[usize],
    out: &mut [Q],
) {
    let group = pa.group();
    let pieces = pieces_for(pa, base, reps);
    let weight = Q::new(1.into(), ((stab.order() * reps.len()) as i64).into());
    for (j, piece) in pieces.iter().enumerate() {
        for &x in piece {
            if support.binary_search(&x).is_err() {
                continue;
            }
            for k in 0..reps.len() {
                for &h in stab.members() {
                    let g = group.mul(group.mul(group.inv(reps[j]), h), reps[k]);
                    let idx = realization
                        .index_of(x, g)
                        .expect("pi_j(a) delta_g lies in the crossed product");
                    out[idx] += &weight;
                }
            }
        }
    }
}

/// The corner projection of a decomposable instance, without the full
/// property verdicts. Used by the freeness check.
pub fn corner_projection(pa: &PartialAction) -> Result<(Realization, Vec<Q>), VerifyError> {
    let summands = certificate(pa).map_err(VerifyError::NotDecomposable)?;
    let realization = realize_crossed_product(pa);
    let mut p = vec![Q::zero(); realization.dimension()];
    for s in &summands {
        corner_column(pa, &realization, &s.base, &s.data.stabilizer, &s.data.reps, &s.points, &mut p);
    }
    Ok((realization, p))
}

/// Builds the corner embedding of a decomposable instance and verifies:
/// `p = c(1)` is a self-adjoint idempotent, `c` is an injective algebra
/// map, the image equals `p (A x G) p` exactly as linear subspaces,
/// independence of representatives and base points, and the matrix-side
/// factorization of the corner through the crossed-product isomorphism
/// (`psi ∘ c` is `c_H(-) ⊗ e` on the stabilizer fixed algebra, with `e`
/// the rank-one averaging projection).
pub fn build_corner(pa: &PartialAction, seed: u64) -> Result<CornerResult, VerifyError> {
    let summands = certificate(pa).map_err(VerifyError::NotDecomposable)?;
    let group = pa.group().clone();
    let realization = realize_crossed_product(pa);
    let dim = realization.dimension();
    let fixed = pa.quotient_and_fixed();

    type Bases<'a> = dyn Fn(&OrbitSummand) -> (Tuple, Subgroup, Vec<usize>) + 'a;
    let build_c = |bases: &Bases| -> QMatrix {
        let mut c = QMatrix::zeros(dim, fixed.orbit_count);
        for (col, orbit) in fixed.orbit_indicators.iter().enumerate() {
            let s = summands
                .iter()
                .find(|s| s.points.binary_search(&orbit[0]).is_ok())
                .expect("each orbit lies in a summand");
            let (base, stab, reps) = bases(s);
            let mut v = vec![Q::zero(); dim];
            corner_column(pa, &realization, &base, &stab, &reps, orbit, &mut v);
            for (i, q) in v.into_iter().enumerate() {
                if !q.is_zero() {
                    c.set(i, col, q);
                }
            }
        }
        c
    };

    let canonical =
        |s: &OrbitSummand| (s.base.clone(), s.data.stabilizer.clone(), s.data.reps.clone());
    let c = build_c(&canonical);
    let p: Vec<Q> = (0..dim)
        .map(|i| {
            let mut acc = Q::zero();
            for col in 0..fixed.orbit_count {
                acc += c.get(i, col);
            }
            acc
        })
        .collect();

    let alg = &realization.algebra;
    let mut checks = Vec::new();
    checks.push(CheckOutcome::from("p_idempotent", alg.mul(&p, &p) == p, None));
    checks.push(CheckOutcome::from("p_selfadjoint", alg.star(&p) == p, None));

    // c is a homomorphism on the orbit-indicator basis (orthogonal
    // idempotents), and injective.
    let mut homomorphism = true;
    for i in 0..fixed.orbit_count {
        for j in 0..fixed.orbit_count {
            let prod = alg.mul(&c.column(i), &c.column(j));
            let expected = if i == j { c.column(i) } else { vec![Q::zero(); dim] };
            if prod != expected {
                homomorphism = false;
            }
        }
    }
    checks.push(CheckOutcome::from("c_homomorphism", homomorphism, None));
    checks.push(CheckOutcome::from(
        "c_injective",
        c.rank() == fixed.orbit_count,
        None,
    ));

    // Exact corner equality: span(c) = p (A x G) p, both containments.
    let mut image = RowSpace::new(dim);
    for col in 0..fixed.orbit_count {
        image.insert(c.column(col));
    }
    let mut corner_space = RowSpace::new(dim);
    let mut corner_vectors = Vec::new();
    for b in 0..dim {
        let v = alg.mul(&alg.mul(&p, &alg.basis_vector(b)), &p);
        corner_space.insert(v.clone());
        corner_vectors.push(v);
    }
    let corner_eq = image.rank() == corner_space.rank()
        && (0..fixed.orbit_count).all(|col| corner_space.contains(&c.column(col)))
        && corner_vectors.iter().all(|v| image.contains(v));
    checks.push(CheckOutcome::from("corner_equality", corner_eq, None));

    // Representative independence.
    let mut rep_ok = true;
    'reps: for s in &summands {
        for ys in rep_variants(&group, &s.data.stabilizer, &s.data.reps, seed) {
            let variant = build_c(&|s2: &OrbitSummand| {
                if s2.base == s.base {
                    (s2.base.clone(), s2.data.stabilizer.clone(), ys.clone())
                } else {
                    canonical(s2)
                }
            });
            if variant != c {
                rep_ok = false;
                break 'reps;
            }
        }
    }
    checks.push(CheckOutcome::from("representative_independent", rep_ok, None));

    // Base-point independence.
    let mut base_ok = true;
    'bases: for s in &summands {
        for other in &s.orbit {
            if other == &s.base {
                continue;
            }
            let data = orbit_data(&group, other);
            let variant = build_c(&|s2: &OrbitSummand| {
                if s2.base == s.base {
                    (other.clone(), data.stabilizer.clone(), data.reps.clone())
                } else {
                    canonical(s2)
                }
            });
            if variant != c {
                base_ok = false;
                break 'bases;
            }
        }
    }
    checks.push(CheckOutcome::from("base_point_independent", base_ok, None));

    // Factorization through psi, summand by summand.
    let mut factor_ok = true;
    let mut factor_witness = None;
    'factor: for s in &summands {
        let (sub, back) = pa.restrict(&s.points);
        let psi = build_psi(&sub, &s.base)?;
        let m = s.data.m;
        let stab = &s.data.stabilizer;
        let dim_b = psi.stabilizer.dimension();
        let cod_idx = |j: usize, k: usize, t: usize| (j * (m + 1) + k) * dim_b + t;

        let sub_fixed = sub.quotient_and_fixed();
        for orbit in &sub_fixed.orbit_indicators {
            // LHS: psi(c(phi^-1(indicator))) computed inside the summand.
            let mut col = vec![Q::zero(); psi.domain.dimension()];
            corner_column(&sub, &psi.domain, &s.base, stab, &s.data.reps, orbit, &mut col);
            let lhs = psi.matrix.apply(&col);

            // RHS: c_H(indicator of orbit ∩ slice) ⊗ e.
            let weight = Q::new(1.into(), ((stab.order() * (m + 1)) as i64).into());
            let mut rhs = vec![Q::zero(); psi.codomain.dimension()];
            for &y in orbit {
                let yi = match psi.slice.binary_search(&y) {
                    Ok(i) => i,
                    Err(_) => continue,
                };
                for hi in 0..psi.stabilizer_members.len() {
                    let t = psi
                        .stabilizer
                        .index_of(yi, hi)
                        .expect("stabilizer basis element");
                    for j in 0..=m {
                        for k in 0..=m {
                            rhs[cod_idx(j, k, t)] += &weight;
                        }
                    }
                }
            }
            if lhs != rhs {
                factor_ok = false;
                factor_witness = Some(format!(
                    "summand {} orbit at {}",
                    s.base.render(),
                    back[orbit[0]]
                ));
                break 'factor;
            }
        }
    }
    checks.push(CheckOutcome::from("psi_factorization", factor_ok, factor_witness));

    Ok(CornerResult { c, p, realization, checks })
}

// ---------------------------------------------------------------------------
// Fullness and the freeness equivalence.
// ---------------------------------------------------------------------------

/// Whether the two-sided ideal generated by the projection `p` is the whole
/// algebra, by exact rank computation.
pub fn check_fullness(alg: &RationalAlgebra, p: &[Q]) -> Result<bool, VerifyError> {
    if !alg.is_projection(p) {
        return Err(VerifyError::NotProjection);
    }
    Ok(alg.ideal_rank(p) == alg.dimension())
}

/// Per-stratum outcome of the freeness-fullness comparison.
#[derive(Clone, Debug)]
pub struct StratumFreeness {
    pub k: usize,
    pub free: bool,
    pub witness: Option<(usize, usize)>,
    pub corner_full: bool,
}

impl StratumFreeness {
    pub fn agrees(&self) -> bool {
        self.free == self.corner_full
    }
}

/// The freeness-fullness verdict for an instance.
#[derive(Clone, Debug)]
pub struct FreenessEquivalence {
    pub strata: Vec<StratumFreeness>,
    pub free: bool,
    pub corner_full: bool,
    /// True when freeness and corner fullness agree on every stratum.
    pub pass: bool,
}

/// Compares freeness with fullness of the corner projection, stratum by
/// stratum (the two agree for decomposable actions; a mixed instance is
/// stratified first and the comparison applied to each stratum).
pub fn freeness_equivalence(pa: &PartialAction) -> Result<FreenessEquivalence, VerifyError> {
    let strat = stratify(pa);
    let mut strata = Vec::new();
    for stratum in &strat.strata {
        let (realization, p) = corner_projection(&stratum.action)?;
        let corner_full = check_fullness(&realization.algebra, &p)?;
        let witness = stratum.action.freeness_witness();
        strata.push(StratumFreeness {
            k: stratum.k,
            free: witness.is_none(),
            witness,
            corner_full,
        });
    }
    let free = strata.iter().all(|s| s.free);
    debug_assert_eq!(free, pa.is_free());
    let corner_full = strata.iter().all(|s| s.corner_full);
    let pass = strata.iter().all(StratumFreeness::agrees);
    Ok(FreenessEquivalence { strata, free, corner_full, pass })
}
