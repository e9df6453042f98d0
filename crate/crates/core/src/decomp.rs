//! The decomposition property, stratification, and globalization.
//!
//! A finite instance has the `n`-decomposition property exactly when every
//! point type has size `n`; the certificate decomposes the point set into
//! invariant orbit summands indexed by tuple orbits. Arbitrary instances
//! stratify by point-type size into invariant pieces, each decomposable at
//! its own parameter; the strata assemble both as an extension chain and as
//! a direct sum (on finite discrete sets the chain splits). Decomposable
//! instances globalize explicitly: each summand embeds into the induced
//! global system on `(G / H) x X_tau`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::action::PartialAction;
use crate::group::FiniteGroup;
use crate::linalg::{qr, Q};
use crate::tuples::{orbit_data, tuple_orbit, OrbitData, Tuple};

/// One invariant summand of a decomposable instance: the orbit of a tuple
/// together with the points whose types run through that orbit.
#[derive(Clone, Debug)]
pub struct OrbitSummand {
    /// Canonical (lexicographically minimal) base tuple of the orbit.
    pub base: Tuple,
    /// Stabilizer and coset representatives of the base tuple.
    pub data: OrbitData,
    /// The orbit `x_j^-1 * base`, aligned with `data.reps`.
    pub orbit: Vec<Tuple>,
    /// `piece_points[j]` is the sorted set of points with type `orbit[j]`.
    pub piece_points: Vec<Vec<usize>>,
    /// All points of the summand, sorted.
    pub points: Vec<usize>,
}

/// A positive answer to the decomposition check.
#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    pub n: usize,
    /// Summands ordered by their base tuple.
    pub summands: Vec<OrbitSummand>,
}

/// A refuting witness: a point whose type has the wrong size.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("point {witness} has type size {size}, expected {expected}")]
pub struct Refutation {
    pub witness: usize,
    pub size: usize,
    pub expected: usize,
}

/// Raised by operations that need a decomposable input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("instance is not decomposable: point {point_a} has type size {size_a} but point {point_b} has type size {size_b}")]
pub struct NotDecomposable {
    pub point_a: usize,
    pub size_a: usize,
    pub point_b: usize,
    pub size_b: usize,
}

/// The decomposition parameter, when one exists.
///
/// Returns `Some(n)` when every point type has size `n`. The empty
/// instance is reported as trivially 1-decomposable.
pub fn detect_parameter(pa: &PartialAction) -> Option<usize> {
    let types = pa.point_types();
    match types.first() {
        None => Some(1),
        Some(first) => {
            let n = first.len();
            types.iter().all(|t| t.len() == n).then_some(n)
        }
    }
}

fn not_decomposable(pa: &PartialAction) -> NotDecomposable {
    let types = pa.point_types();
    let size0 = types[0].len();
    let other = types
        .iter()
        .enumerate()
        .find(|(_, t)| t.len() != size0)
        .expect("mixed type sizes");
    NotDecomposable { point_a: 0, size_a: size0, point_b: other.0, size_b: other.1.len() }
}

/// Checks the `n`-decomposition property.
///
/// The fast path is the pointwise criterion (every type has size `n`); on
/// success the literal ideal-intersection conditions are re-verified
/// against the domains as an internal cross check before the certificate
/// is returned.
pub fn check_decomposition(
    pa: &PartialAction,
    n: usize,
) -> Result<DecompositionCertificate, Refutation> {
    let types = pa.point_types();
    for (x, t) in types.iter().enumerate() {
        if t.len() != n {
            return Err(Refutation { witness: x, size: t.len(), expected: n });
        }
    }

    // Group points by type, types by orbit.
    let group = pa.group();
    let mut summands: Vec<OrbitSummand> = Vec::new();
    let mut assigned = vec![false; pa.points()];
    for x in 0..pa.points() {
        if assigned[x] {
            continue;
        }
        let tau = Tuple::new(types[x].clone());
        let base = {
            let data = orbit_data(group, &tau);
            tuple_orbit(group, &data).into_iter().min().expect("orbit nonempty")
        };
        let data = orbit_data(group, &base);
        let orbit = tuple_orbit(group, &data);
        let mut piece_points: Vec<Vec<usize>> = vec![Vec::new(); orbit.len()];
        let mut points = Vec::new();
        for (y, ty) in types.iter().enumerate() {
            if let Some(j) = orbit.iter().position(|t| t.members() == ty.as_slice()) {
                piece_points[j].push(y);
                points.push(y);
                assigned[y] = true;
            }
        }
        debug_assert!(piece_points.iter().all(|p| !p.is_empty()));
        summands.push(OrbitSummand { base, data, orbit, piece_points, points });
    }
    summands.sort_by(|a, b| a.base.cmp(&b.base));

    verify_ideal_conditions(pa, n, &summands);
    Ok(DecompositionCertificate { n, summands })
}

/// Literal conditions (a) and (b) on the ideals: the sets
/// `X_tau = ∩_{g in tau} X_g` cover the point set, and `X_tau ∩ X_g` is
/// empty for `g` outside `tau`. Computed from the domains alone.
fn verify_ideal_conditions(pa: &PartialAction, n: usize, summands: &[OrbitSummand]) {
    let mut covered = vec![false; pa.points()];
    for summand in summands {
        for tau in &summand.orbit {
            debug_assert_eq!(tau.n(), n);
            let mut x_tau: Vec<usize> = (0..pa.points()).collect();
            for &g in tau.members() {
                x_tau.retain(|&x| pa.in_domain(g, x));
            }
            for &x in &x_tau {
                covered[x] = true;
            }
            for g in pa.group().elements() {
                if !tau.contains(g) {
                    assert!(
                        x_tau.iter().all(|&x| !pa.in_domain(g, x)),
                        "ideal condition (b) disagrees with the pointwise criterion"
                    );
                }
            }
        }
    }
    assert!(
        covered.iter().all(|&c| c),
        "ideal condition (a) disagrees with the pointwise criterion"
    );
}

/// One stratum: the invariant restriction to points of a fixed type size.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub k: usize,
    /// Original point indices, sorted.
    pub points: Vec<usize>,
    /// The restricted instance (points re-indexed; `points` maps back).
    pub action: PartialAction,
}

/// One step of the extension chain `0 -> D^(k) -> A^(k) -> A^(k-1) -> 0`.
///
/// Steps with an empty kernel are collapsed away, so `ambient` is always
/// the set of points of type size at most `k` and `kernel` the nonempty
/// stratum at `k`.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    pub k: usize,
    pub ambient: Vec<usize>,
    pub kernel: Vec<usize>,
    pub quotient: Vec<usize>,
}

/// The stratification of an instance by point-type size.
#[derive(Clone, Debug)]
pub struct Stratification {
    /// Nonempty strata, by decreasing `k`; their point sets partition the
    /// instance and each carries the `k`-decomposition property.
    pub strata: Vec<Stratum>,
    /// The collapsed extension chain (steps for `k >= 2` only; the final
    /// stratum at `k = 1` is the last quotient).
    pub chain: Vec<ExtensionStep>,
}

impl Stratification {
    /// Rebuilds the original instance from its strata; the splitting view
    /// of the chain. Exact because strata are invariant.
    pub fn reassemble(&self, group: &FiniteGroup, total_points: usize) -> PartialAction {
        let order = group.order();
        let mut domains = vec![Vec::new(); order];
        let mut maps = vec![Vec::new(); order];
        for stratum in &self.strata {
            for g in 0..order {
                for &p in stratum.action.domain(g) {
                    domains[g].push(stratum.points[p]);
                }
                for &(x, y) in stratum.action.map_pairs(g) {
                    maps[g].push((stratum.points[x], stratum.points[y]));
                }
            }
        }
        PartialAction::new(group.clone(), total_points, domains, maps)
            .expect("strata reassemble structurally")
    }
}

/// Stratifies an instance by point-type size (largest first).
///
/// Each stratum is invariant by the type-transport identity, and its
/// restriction has the `k`-decomposition property with `k` its type size.
pub fn stratify(pa: &PartialAction) -> Stratification {
    let types = pa.point_types();
    let order = pa.group().order();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); order + 1];
    for (x, t) in types.iter().enumerate() {
        buckets[t.len()].push(x);
    }
    let mut strata = Vec::new();
    let mut chain = Vec::new();
    let mut remaining: Vec<usize> = (0..pa.points()).collect();
    for k in (1..=order).rev() {
        if buckets[k].is_empty() {
            continue;
        }
        let points = buckets[k].clone();
        let (action, back) = pa.restrict(&points);
        debug_assert_eq!(back, points);
        if k >= 2 {
            let quotient: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|x| types[*x].len() < k)
                .collect();
            chain.push(ExtensionStep {
                k,
                ambient: remaining.clone(),
                kernel: points.clone(),
                quotient,
            });
        }
        remaining.retain(|x| types[*x].len() < k);
        strata.push(Stratum { k, points, action });
    }
    Stratification { strata, chain }
}

/// One summand of a globalized action.
#[derive(Clone, Debug)]
pub struct EnvelopeSummand {
    pub base: Tuple,
    /// Minimal-index representatives of the cosets `H g`, sorted.
    pub coset_reps: Vec<usize>,
    /// The points of `X_tau` (original indices).
    pub slice: Vec<usize>,
    /// The envelope points of this summand (envelope indices).
    pub envelope_points: Vec<usize>,
}

/// An explicit enveloping action: a global action on an enlarged point set
/// together with the embedding of the original points.
#[derive(Clone, Debug)]
pub struct GlobalizedAction {
    /// The envelope: a valid partial action with full domains.
    pub envelope: PartialAction,
    /// Original point index -> envelope point index (injective).
    pub embedding: Vec<usize>,
    pub summands: Vec<EnvelopeSummand>,
}

impl GlobalizedAction {
    /// Expected envelope size: the sum of `[G : H_tau] * |X_tau|` over the
    /// orbit summands.
    pub fn envelope_points(&self) -> usize {
        self.envelope.points()
    }
}

/// Builds the explicit globalization of a decomposable instance.
///
/// Per orbit summand the envelope is the induced system on
/// `(G / H) x X_tau`: cosets translate, and crossing a coset boundary
/// twists by the stabilizer action on the slice. Fails on non-decomposable
/// input; stratify first and globalize the strata separately.
pub fn globalize(pa: &PartialAction) -> Result<GlobalizedAction, NotDecomposable> {
    let n = detect_parameter(pa).ok_or_else(|| not_decomposable(pa))?;
    let cert = check_decomposition(pa, n).expect("parameter was just detected");
    let group = pa.group();
    let order = group.order();

    let mut total = 0usize;
    let mut summands = Vec::new();
    let mut embedding = vec![usize::MAX; pa.points()];
    let mut perms: Vec<Vec<usize>> = vec![Vec::new(); order];
    let mut labels: Vec<String> = Vec::new();

    for summand in &cert.summands {
        let h = &summand.data.stabilizer;
        let slice = summand.piece_points[0].clone();
        let slice_index = |y: usize| slice.binary_search(&y).expect("slice point");

        // Right cosets H g with minimal-index representatives.
        let mut coset_of = vec![usize::MAX; order];
        let mut coset_reps = Vec::new();
        for g in 0..order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = coset_reps.len();
            coset_reps.push(g);
            for &hh in h.members() {
                coset_of[group.mul(hh, g)] = c;
            }
        }

        let cosets = coset_reps.len();
        let size = cosets * slice.len();
        let offset = total;
        let point_of = |c: usize, yi: usize| offset + c * slice.len() + yi;

        // The global translation action on the induced point set.
        for (t, perm) in perms.iter_mut().enumerate() {
            for c in 0..cosets {
                for yi in 0..slice.len() {
                    let moved = group.mul(coset_reps[c], group.inv(t));
                    let c2 = coset_of[moved];
                    let twist = group.mul(moved, group.inv(coset_reps[c2]));
                    debug_assert!(h.contains(twist));
                    let y2 = pa
                        .apply(group.inv(twist), slice[yi])
                        .expect("stabiliser acts globally on the slice");
                    perm.push(point_of(c2, slice_index(y2)));
                }
            }
        }
        for c in 0..cosets {
            for &y in &slice {
                labels.push(format!("(H{}, {})", coset_reps[c], pa.label(y)));
            }
        }

        // Embed: a point of type x_j^-1 tau lands in the coset of x_j,
        // moved into the slice by sigma_{x_j}.
        for (j, &xj) in summand.data.reps.iter().enumerate() {
            for &x in &summand.piece_points[j] {
                let y = pa.apply(xj, x).expect("x_j moves piece j into the slice");
                embedding[x] = point_of(coset_of[xj], slice_index(y));
            }
        }

        summands.push(EnvelopeSummand {
            base: summand.base.clone(),
            coset_reps,
            slice,
            envelope_points: (offset..offset + size).collect(),
        });
        total += size;
    }

    let mut envelope = PartialAction::global(group.clone(), total, perms);
    envelope.set_labels(labels);
    Ok(GlobalizedAction { envelope, embedding, summands })
}

/// One verified condition of an enveloping-action check.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub ok: bool,
    pub witness: Option<String>,
}

/// The outcome of checking the enveloping-action conditions.
#[derive(Clone, Debug)]
pub struct EnvelopingReport {
    pub conditions: Vec<ConditionReport>,
}

impl EnvelopingReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.ok)
    }
}

/// Verifies the set-level enveloping conditions for a candidate
/// globalization: the envelope is a valid global action, the embedding is
/// injective, domains are recovered as `iota(X) ∩ beta_g(iota(X))`, the
/// global maps extend the partial ones, and the translates of the image
/// cover the envelope.
pub fn check_enveloping(pa: &PartialAction, glob: &GlobalizedAction) -> EnvelopingReport {
    let group = pa.group();
    let env = &glob.envelope;
    let mut conditions = Vec::new();

    let global_ok = env.validate().is_empty()
        && group.elements().all(|g| env.domain(g).len() == env.points());
    conditions.push(ConditionReport {
        name: "envelope_is_global_action",
        ok: global_ok,
        witness: None,
    });

    let mut seen = vec![false; env.points()];
    let mut injective = true;
    for x in 0..pa.points() {
        let e = glob.embedding[x];
        if e >= env.points() || seen[e] {
            injective = false;
            break;
        }
        seen[e] = true;
    }
    conditions.push(ConditionReport {
        name: "embedding_injective",
        ok: injective,
        witness: None,
    });
    if !global_ok || !injective {
        return EnvelopingReport { conditions };
    }

    let image: Vec<bool> = seen;

    // (1) iota(X_g) = iota(X) ∩ beta_g(iota(X)).
    let mut cond1 = ConditionReport { name: "domains_match_intersections", ok: true, witness: None };
    'outer1: for g in group.elements() {
        let mut expected = vec![false; env.points()];
        for &x in pa.domain(g) {
            expected[glob.embedding[x]] = true;
        }
        for x in 0..pa.points() {
            let moved = env.apply(g, glob.embedding[x]).expect("global");
            let in_intersection = image[moved];
            let in_domain_image = expected[moved];
            if in_intersection != in_domain_image {
                cond1.ok = false;
                cond1.witness = Some(format!("g={g}, envelope point {moved}"));
                break 'outer1;
            }
        }
        // Also: nothing outside beta_g(iota(X)) may be marked expected.
        let mut translated = vec![false; env.points()];
        for x in 0..pa.points() {
            translated[env.apply(g, glob.embedding[x]).expect("global")] = true;
        }
        for e in 0..env.points() {
            if expected[e] && !(image[e] && translated[e]) {
                cond1.ok = false;
                cond1.witness = Some(format!("g={g}, envelope point {e}"));
                break 'outer1;
            }
        }
    }
    conditions.push(cond1);

    // (2) beta_g extends sigma_g under iota.
    let mut cond2 = ConditionReport { name: "global_maps_extend_partial", ok: true, witness: None };
    'outer2: for g in group.elements() {
        for &(x, y) in pa.map_pairs(g) {
            let via_envelope = env.apply(g, glob.embedding[x]).expect("global");
            if via_envelope != glob.embedding[y] {
                cond2.ok = false;
                cond2.witness = Some(format!("g={g}, x={x}"));
                break 'outer2;
            }
        }
    }
    conditions.push(cond2);

    // (3) the translates of iota(X) cover the envelope.
    let mut covered = vec![false; env.points()];
    for g in group.elements() {
        for x in 0..pa.points() {
            covered[env.apply(g, glob.embedding[x]).expect("global")] = true;
        }
    }
    let uncovered = covered.iter().position(|&c| !c);
    conditions.push(ConditionReport {
        name: "translates_cover_envelope",
        ok: uncovered.is_none(),
        witness: uncovered.map(|e| format!("envelope point {e}")),
    });

    EnvelopingReport { conditions }
}

/// A system of equivariant units, one function per group element.
#[derive(Clone, Debug)]
pub struct UnitSystem {
    /// `functions[g]` is `e_g` as a rational vector over the points.
    pub functions: Vec<Vec<Q>>,
    /// The averaged formula must reproduce the domain indicators exactly.
    pub matches_domain_indicators: bool,
    /// Pairs `(g, h)` failing the defining relation; empty on success.
    pub relation_failures: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

impl UnitSystem {
    pub fn passed(&self) -> bool {
        self.matches_domain_indicators && self.relation_failures.is_empty()
    }
}

/// Builds the equivariant unit system of a decomposable instance and
/// verifies the relation `alpha_g(e_h e_{g^-1}) = e_{gh} e_g` exactly for
/// every pair of group elements.
///
/// With `e` the unit of the functions on a slice `X_tau`, the system is
/// `e_g = (1/|H|) Σ_j [g in x_j^-1 tau] Σ_h alpha_{x_j^-1 h}(e)`, which
/// lands on the indicator of the domain of `g` in each summand.
pub fn equivariant_unit_system(pa: &PartialAction) -> Result<UnitSystem, NotDecomposable> {
    let n = detect_parameter(pa).ok_or_else(|| not_decomposable(pa))?;
    let cert = check_decomposition(pa, n).expect("parameter was just detected");
    let group = pa.group();
    let order = group.order();

    let mut functions = vec![vec![Q::zero(); pa.points()]; order];
    for summand in &cert.summands {
        let h = &summand.data.stabilizer;
        let weight = qr(1, h.order() as i64);
        let slice = &summand.piece_points[0];
        for g in 0..order {
            for (j, &xj) in summand.data.reps.iter().enumerate() {
                // g in x_j^-1 tau <=> x_j g in tau
                if !summand.base.contains(group.mul(xj, g)) {
                    continue;
                }
                let _ = j;
                for &hh in h.members() {
                    let w = group.mul(group.inv(xj), hh);
                    for &y in slice {
                        let image = pa.apply(w, y).expect("slice moves within the summand");
                        functions[g][image] += &weight;
                    }
                }
            }
        }
    }

    // The averages collapse to the domain indicators.
    let mut matches = true;
    'check: for g in 0..order {
        for x in 0..pa.points() {
            let expected = if pa.in_domain(g, x) { Q::one() } else { Q::zero() };
            if functions[g][x] != expected {
                matches = false;
                break 'check;
            }
        }
    }

    // alpha_g(e_h e_{g^-1}) = e_{gh} e_g, checked pointwise and exactly.
    let mut relation_failures = Vec::new();
    let mut pairs_checked = 0;
    for g in 0..order {
        let ginv = group.inv(g);
        for hh in 0..order {
            pairs_checked += 1;
            let gh = group.mul(g, hh);
            let mut lhs = vec![Q::zero(); pa.points()];
            for &z in pa.domain(g) {
                let pre = pa.apply(ginv, z).expect("z in X_g");
                lhs[z] = &functions[hh][pre] * &functions[ginv][pre];
            }
            let mut ok = true;
            for x in 0..pa.points() {
                let rhs = &functions[gh][x] * &functions[g][x];
                if lhs[x] != rhs {
                    ok = false;
                    break;
                }
            }
            if !ok {
                relation_failures.push((g, hh));
            }
        }
    }

    Ok(UnitSystem {
        functions,
        matches_domain_indicators: matches,
        relation_failures,
        pairs_checked,
    })
}
