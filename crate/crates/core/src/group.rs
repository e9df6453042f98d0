//! Finite groups as multiplication tables.
//!
//! Every group in this crate is a table over element indices `0..order`,
//! with the identity pinned at index 0. The named families (cyclic,
//! dihedral, symmetric, quaternion) fix a canonical element ordering so
//! that every report downstream is reproducible byte for byte:
//!
//! * `cyclic n` — elements are residues, `a * b = (a + b) mod n`;
//! * `dihedral n` — order `2n`; indices `0..n` are the rotations `r^i`,
//!   indices `n..2n` are the reflections `r^i s`;
//! * `symmetric n` — permutations of `0..n` in lexicographic order of
//!   their one-line notation, with `(p * q)(x) = p(q(x))`;
//! * `quaternion 8` — ordered `1, -1, i, -i, j, -j, k, -k`.

use std::fmt;

use thiserror::Error;

/// Errors from building or parsing a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not an identity: table[{a}][0] or table[0][{a}] differs from {a}")]
    NoIdentityAtZero { a: usize },
    #[error("no inverse for element {element}")]
    NoInverse { element: usize },
    #[error("row {row} is not a permutation")]
    RowNotPermutation { row: usize },
    #[error("column {col} is not a permutation")]
    ColumnNotPermutation { col: usize },
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("unknown group family '{0}'")]
    UnknownFamily(String),
    #[error("bad group specification '{0}'")]
    BadSpec(String),
    #[error("family parameter out of range in '{0}'")]
    BadFamilyParameter(String),
}

/// A finite group given by its Cayley table, identity at index 0.
#[derive(Clone, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    name: Option<String>,
}

/// Equality is structural: the name is display metadata.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "FiniteGroup({n}, order {})", self.order),
            None => write!(f, "FiniteGroup(order {})", self.order),
        }
    }
}

impl FiniteGroup {
    /// Builds and fully validates a group from an explicit table.
    ///
    /// Validation order is: shape, identity at index 0, existence of
    /// inverses, rows/columns are permutations, associativity. Each failure
    /// carries a witness.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RaggedRow { row: i, len: row.len(), order });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v });
                }
            }
        }
        for a in 0..order {
            if rows[a][0] != a || rows[0][a] != a {
                return Err(GroupError::NoIdentityAtZero { a });
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| rows[a][b] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                if seen[rows[a][b]] {
                    return Err(GroupError::RowNotPermutation { row: a });
                }
                seen[rows[a][b]] = true;
            }
        }
        for b in 0..order {
            let mut seen = vec![false; order];
            for a in 0..order {
                if seen[rows[a][b]] {
                    return Err(GroupError::ColumnNotPermutation { col: b });
                }
                seen[rows[a][b]] = true;
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let table = rows.iter().flatten().copied().collect();
        Ok(FiniteGroup { order, table, inverse, name: None })
    }

    /// Builds a group from a table known to be correct (named families).
    fn from_table_unchecked(order: usize, table: Vec<usize>, name: &str) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("family table must have inverses");
        }
        FiniteGroup { order, table, inverse, name: Some(name.to_string()) }
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs order >= 1");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        Self::from_table_unchecked(n, table, &format!("C{n}"))
    }

    /// The dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for i in 0..n {
            for e in 0..2 {
                for j in 0..n {
                    for f in 0..2 {
                        let rot = if e == 0 { (i + j) % n } else { (i + n - j % n) % n };
                        let a = i + n * e;
                        let b = j + n * f;
                        table[a * order + b] = rot + n * ((e + f) % 2);
                    }
                }
            }
        }
        Self::from_table_unchecked(order, table, &format!("D{n}"))
    }

    /// The symmetric group on `n` letters, permutations in lexicographic
    /// order of one-line notation.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric group supported for 1 <= n <= 6");
        let perms = all_permutations(n);
        let order = perms.len();
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut table = vec![0; order * order];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[a * order + b] = index_of(&composed);
            }
        }
        Self::from_table_unchecked(order, table, &format!("S{n}"))
    }

    /// The quaternion group of order 8, ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // Unit products as (axis, sign): axes 0=1, 1=i, 2=j, 3=k.
        let unit = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) => (x, 0),
                (x, 0) => (x, 0),
                (1, 1) | (2, 2) | (3, 3) => (0, 1),
                (1, 2) => (3, 0),
                (2, 3) => (1, 0),
                (3, 1) => (2, 0),
                (2, 1) => (3, 1),
                (3, 2) => (1, 1),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (axis, s) = unit(a / 2, b / 2);
                let sign = (a % 2 + b % 2 + s) % 2;
                table[a * 8 + b] = 2 * axis + sign;
            }
        }
        Self::from_table_unchecked(8, table, "Q8")
    }

    /// Parses a one-line group specification.
    ///
    /// Accepted forms: `family:<name>:<n>` with name one of `cyclic`,
    /// `dihedral`, `symmetric`, `quaternion`, or `table:<row>;<row>;...`
    /// with whitespace-separated element indices in each row.
    pub fn parse_spec(spec: &str) -> Result<Self, GroupError> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("family:") {
            let mut it = rest.splitn(2, ':');
            let name = it.next().unwrap_or("");
            let arg = it.next().ok_or_else(|| GroupError::BadSpec(spec.to_string()))?;
            let n: usize = arg
                .parse()
                .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
            match name {
                "cyclic" if n >= 1 => Ok(Self::cyclic(n)),
                "dihedral" if n >= 1 => Ok(Self::dihedral(n)),
                "symmetric" if (1..=6).contains(&n) => Ok(Self::symmetric(n)),
                "quaternion" if n == 8 => Ok(Self::quaternion()),
                "cyclic" | "dihedral" | "symmetric" | "quaternion" => {
                    Err(GroupError::BadFamilyParameter(spec.to_string()))
                }
                _ => Err(GroupError::UnknownFamily(name.to_string())),
            }
        } else if let Some(rest) = spec.strip_prefix("table:") {
            let rows: Result<Vec<Vec<usize>>, _> = rest
                .split(';')
                .map(|row| {
                    row.split_whitespace()
                        .map(|tok| tok.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect();
            let rows = rows.map_err(|_| GroupError::BadSpec(spec.to_string()))?;
            Self::from_table(&rows)
        } else {
            Err(GroupError::BadSpec(spec.to_string()))
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Inverse of an element.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub const IDENTITY: usize = 0;

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of a single element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// A canonical text rendering of the table (rows of indices), used as
    /// the group part of instance digests.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(n: usize, depth: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if depth == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[depth] = v;
                rec(n, depth + 1, cur, used, out);
                used[v] = false;
            }
        }
    }
    rec(n, 0, &mut cur, &mut used, &mut out);
    out
}

/// A subgroup, stored as its sorted member set.
///
/// The parent group is passed to the operations that need it; a `Subgroup`
/// produced by [`subgroup_generated`] is closed under product and inverse
/// and contains the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { members: vec![FiniteGroup::IDENTITY] }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Subgroup { members: group.elements().collect() }
    }

    /// Wraps a member set that is already known to be a subgroup.
    pub fn from_members(group: &FiniteGroup, members: Vec<usize>) -> Self {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup { members };
        debug_assert!(sub.is_subgroup(group), "member set is not closed");
        sub
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [FiniteGroup::IDENTITY]
    }

    fn is_subgroup(&self, group: &FiniteGroup) -> bool {
        self.contains(FiniteGroup::IDENTITY)
            && self.members.iter().all(|&a| {
                self.contains(group.inv(a))
                    && self.members.iter().all(|&b| self.contains(group.mul(a, b)))
            })
    }

    /// Re-indexes the subgroup as a standalone group.
    ///
    /// Returns the group together with the member map (new index to parent
    /// element).
    pub fn as_group(&self, parent: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let members = self.members.clone();
        let order = members.len();
        let index_of = |g: usize| members.binary_search(&g).expect("closed subgroup");
        let mut table = vec![0; order * order];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * order + j] = index_of(parent.mul(a, b));
            }
        }
        let mut inverse = vec![0; order];
        for (i, &a) in members.iter().enumerate() {
            inverse[i] = index_of(parent.inv(a));
        }
        (
            FiniteGroup { order, table, inverse, name: None },
            members,
        )
    }

    /// True when some member generates the whole subgroup.
    pub fn is_cyclic(&self, parent: &FiniteGroup) -> bool {
        self.members
            .iter()
            .any(|&a| parent.element_order(a) == self.order())
    }

    /// A deterministic structural label: `triv`, `C<n>` for cyclic, else
    /// `G<n>c<classes>`.
    pub fn label(&self, parent: &FiniteGroup) -> String {
        if self.order() == 1 {
            "triv".to_string()
        } else if self.is_cyclic(parent) {
            format!("C{}", self.order())
        } else {
            format!("G{}c{}", self.order(), conjugacy_class_count_of(parent, self))
        }
    }
}

/// Smallest subgroup containing `gens`, computed by closure iteration.
///
/// The empty generating set yields the trivial subgroup.
pub fn subgroup_generated(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut in_set = vec![false; group.order()];
    in_set[FiniteGroup::IDENTITY] = true;
    for &g in gens {
        assert!(g < group.order(), "generator out of range");
        in_set[g] = true;
    }
    // Closure under products; inverses follow since the group is finite.
    let mut changed = true;
    while changed {
        changed = false;
        let current: Vec<usize> = (0..group.order()).filter(|&g| in_set[g]).collect();
        for &a in &current {
            for &b in &current {
                let c = group.mul(a, b);
                if !in_set[c] {
                    in_set[c] = true;
                    changed = true;
                }
            }
        }
    }
    Subgroup {
        members: (0..group.order()).filter(|&g| in_set[g]).collect(),
    }
}

/// Partition of the group into cosets `H x`, each sorted, ordered by their
/// minimal element. The block containing the identity is `H` itself.
pub fn left_cosets(group: &FiniteGroup, sub: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.order()];
    let mut out = Vec::new();
    for x in group.elements() {
        if seen[x] {
            continue;
        }
        let mut coset: Vec<usize> = sub.members().iter().map(|&h| group.mul(h, x)).collect();
        coset.sort_unstable();
        for &y in &coset {
            seen[y] = true;
        }
        out.push(coset);
    }
    out
}

/// Number of conjugacy classes, i.e. the number of simple blocks of the
/// complex group algebra. Computed by brute-force conjugation orbits.
pub fn conjugacy_class_count(group: &FiniteGroup) -> usize {
    let full = Subgroup::full(group);
    conjugacy_class_count_of(group, &full)
}

/// Conjugacy classes of a subgroup, conjugating only by its own members.
pub fn conjugacy_class_count_of(group: &FiniteGroup, sub: &Subgroup) -> usize {
    let mut seen = vec![false; group.order()];
    let mut count = 0;
    for &a in sub.members() {
        if seen[a] {
            continue;
        }
        count += 1;
        for &g in sub.members() {
            let conj = group.mul(group.mul(g, a), group.inv(g));
            seen[conj] = true;
        }
    }
    count
}
