//! Finite semigroups given by multiplication tables.
//!
//! Elements are `0..size`; `table[i][j]` is the index of the product `i·j`
//! (row = left factor, column = right factor).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("entry table[{row}][{col}] = {value} is outside 0..{size}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("product is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("element {element} is outside 0..{size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("subset is not closed: {a}·{b} = {product} is missing")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not a congruence: {a}≡{a2} and {b}≡{b2} but {a}·{b} ≢ {a2}·{b2}")]
    NotACongruence {
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
    },
    #[error("map has {got} entries, domain has {expected} elements")]
    MapLength { expected: usize, got: usize },
    #[error("not a homomorphism: f({a}·{b}) ≠ f({a})·f({b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("size {size} exceeds the cap of {cap} elements")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("codomain of the first map is not the domain of the second")]
    Mismatch,
    #[error("search inconclusive: explored more than {cap} candidates")]
    SearchCapExceeded { cap: usize },
}

pub type Result<T, E = SemigroupError> = std::result::Result<T, E>;

/// A finite semigroup stored as a dense multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    cells: Vec<usize>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("table", &self.rows())
            .finish()
    }
}

impl FiniteSemigroup {
    /// Validates a raw square table (range and associativity).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut cells = Vec::with_capacity(size * size);
        for (row, r) in table.into_iter().enumerate() {
            if r.len() != size {
                return Err(SemigroupError::NotSquare {
                    row,
                    len: r.len(),
                    size,
                });
            }
            cells.extend(r);
        }
        Self::from_cells(size, cells)
    }

    /// Validates a row-major flat table of `size * size` entries.
    pub fn from_cells(size: usize, cells: Vec<usize>) -> Result<Self> {
        let s = Self::from_cells_unchecked_assoc(size, cells)?;
        if let Some((a, b, c)) = s.associativity_failure() {
            return Err(SemigroupError::NonAssociative { a, b, c });
        }
        Ok(s)
    }

    /// Range-checks the table but trusts associativity. Used for tables built
    /// by constructions that are associative by theorem; tests re-validate.
    pub(crate) fn from_cells_unchecked_assoc(size: usize, cells: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(SemigroupError::Empty);
        }
        assert_eq!(cells.len(), size * size, "flat table has wrong length");
        if let Some(pos) = cells.iter().position(|&v| v >= size) {
            return Err(SemigroupError::OutOfRangeEntry {
                row: pos / size,
                col: pos % size,
                value: cells[pos],
                size,
            });
        }
        Ok(Self {
            size,
            cells,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(SemigroupError::NameCount {
                expected: self.size,
                got: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.size + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element; falls back to its index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Same multiplication table, names ignored.
    pub fn same_table(&self, other: &Self) -> bool {
        self.size == other.size && self.cells == other.cells
    }

    /// First triple `(a, b, c)` in lexicographic order with `(ab)c ≠ a(bc)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(SemigroupError::ElementOutOfRange {
                element: a,
                size: self.size,
            })
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// The two-sided identity, if there is one (necessarily unique).
    pub fn identity_element(&self) -> Option<usize> {
        (0..self.size).find(|&e| (0..self.size).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn is_monoid(&self) -> bool {
        self.identity_element().is_some()
    }

    /// Two-sided inverse of `a` with respect to the identity, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity_element()?;
        (0..self.size).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    pub fn is_group(&self) -> bool {
        match self.identity_element() {
            Some(e) => (0..self.size).all(|a| (0..self.size).any(|b| self.mul(a, b) == e && self.mul(b, a) == e)),
            None => false,
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `(index, period)` of the monogenic subsemigroup generated by `a`.
    pub fn index_period(&self, a: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size];
        let mut power = a;
        let mut k = 1;
        loop {
            if seen[power] != usize::MAX {
                let first = seen[power];
                return (first, k - first);
            }
            seen[power] = k;
            power = self.mul(power, a);
            k += 1;
        }
    }

    /// Componentwise product; `(a, b)` sits at index `a * |other| + b`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut cells = Vec::with_capacity(size * size);
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        cells.push(self.mul(a1, a2) * m + other.mul(b1, b2));
                    }
                }
            }
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.name(a), other.name(b)))
            .collect();
        Self {
            size,
            cells,
            names: Some(names),
        }
    }

    /// Smallest product-closed superset of `generators`, ascending.
    pub fn subsemigroup_closure(&self, generators: &[usize]) -> Result<Vec<usize>> {
        if generators.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        for &g in generators {
            self.check_element(g)?;
        }
        let mut member = vec![false; self.size];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in generators {
            if !member[g] {
                member[g] = true;
                queue.push_back(g);
            }
        }
        let gens: Vec<usize> = generators.to_vec();
        // Right multiplication by generators reaches every product of generators.
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok((0..self.size).filter(|&x| member[x]).collect())
    }

    pub fn is_closed(&self, subset: &[usize]) -> Result<()> {
        let mut member = vec![false; self.size];
        for &x in subset {
            self.check_element(x)?;
            member[x] = true;
        }
        for &a in subset {
            for &b in subset {
                let p = self.mul(a, b);
                if !member[p] {
                    return Err(SemigroupError::NotClosed { a, b, product: p });
                }
            }
        }
        Ok(())
    }

    /// The subsemigroup on `elements` (sorted, deduplicated), relabelled
    /// `0..k` in ascending order, together with the inclusion map.
    pub fn subsemigroup(&self, elements: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        let members: Vec<usize> = set.into_iter().collect();
        if members.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        self.is_closed(&members)?;
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let k = members.len();
        let mut cells = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                cells.push(local[self.mul(a, b)]);
            }
        }
        let names = members.iter().map(|&x| self.name(x)).collect();
        let sub = Self {
            size: k,
            cells,
            names: Some(names),
        };
        Ok((sub, members))
    }

    pub fn is_congruence(&self, partition: &Partition) -> bool {
        self.congruence_failure(partition).is_none()
    }

    /// A witness that `partition` is not compatible with the product.
    ///
    /// It suffices to compare each element with its class representative on
    /// one side at a time.
    pub fn congruence_failure(&self, partition: &Partition) -> Option<(usize, usize, usize, usize)> {
        assert_eq!(partition.size(), self.size, "partition over a different element set");
        let class = partition.class_map();
        for a in 0..self.size {
            let rep = partition.representative(a);
            if rep == a {
                continue;
            }
            for s in 0..self.size {
                if class[self.mul(a, s)] != class[self.mul(rep, s)] {
                    return Some((a, rep, s, s));
                }
                if class[self.mul(s, a)] != class[self.mul(s, rep)] {
                    return Some((s, s, a, rep));
                }
            }
        }
        None
    }

    /// Least congruence containing every pair.
    pub fn congruence_generated_by(&self, pairs: &[(usize, usize)]) -> Result<Partition> {
        let mut uf = UnionFind::new(self.size);
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            self.check_element(a)?;
            self.check_element(b)?;
            pending.push((a, b));
        }
        while let Some((a, b)) = pending.pop() {
            if uf.union(a, b) {
                for s in 0..self.size {
                    pending.push((self.mul(s, a), self.mul(s, b)));
                    pending.push((self.mul(a, s), self.mul(b, s)));
                }
            }
        }
        Ok(uf.into_partition())
    }

    /// Semigroup on the classes of a congruence. Classes are ordered by
    /// their smallest member and named after it.
    pub fn quotient(&self, partition: &Partition) -> Result<FiniteSemigroup> {
        if partition.size() != self.size {
            return Err(SemigroupError::InvalidPartition(format!(
                "partition covers {} elements, semigroup has {}",
                partition.size(),
                self.size
            )));
        }
        if let Some((a, a2, b, b2)) = self.congruence_failure(partition) {
            return Err(SemigroupError::NotACongruence { a, a2, b, b2 });
        }
        let class = partition.class_map();
        let k = partition.len();
        let mut cells = Vec::with_capacity(k * k);
        for ci in partition.classes() {
            for cj in partition.classes() {
                cells.push(class[self.mul(ci[0], cj[0])]);
            }
        }
        let names = partition.classes().iter().map(|c| self.name(c[0])).collect();
        Ok(Self {
            size: k,
            cells,
            names: Some(names),
        })
    }

    /// Adjoins a fresh identity element (index `size`), as in `S¹`.
    pub fn with_identity_adjoined(&self) -> Self {
        let n = self.size;
        let m = n + 1;
        let mut cells = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                cells.push(match (a == n, b == n) {
                    (true, _) => b,
                    (false, true) => a,
                    _ => self.mul(a, b),
                });
            }
        }
        let names = self.names.as_ref().map(|ns| {
            let mut ns = ns.clone();
            ns.push("1".to_string());
            ns
        });
        Self {
            size: m,
            cells,
            names,
        }
    }
}

/// Disjoint nonempty classes covering `0..size`. Stored canonically: each
/// class ascending, classes ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(classes: Vec<Vec<usize>>, size: usize) -> Result<Self> {
        let mut seen = vec![false; size];
        let mut normalized = Vec::with_capacity(classes.len());
        for class in classes {
            if class.is_empty() {
                return Err(SemigroupError::InvalidPartition("empty class".into()));
            }
            let mut class = class;
            class.sort_unstable();
            for &x in &class {
                if x >= size {
                    return Err(SemigroupError::InvalidPartition(format!(
                        "element {x} is outside 0..{size}"
                    )));
                }
                if seen[x] {
                    return Err(SemigroupError::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                seen[x] = true;
            }
            normalized.push(class);
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(SemigroupError::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        normalized.sort();
        Ok(Self {
            classes: normalized,
        })
    }

    pub fn discrete(size: usize) -> Self {
        Self {
            classes: (0..size).map(|x| vec![x]).collect(),
        }
    }

    pub fn single_class(size: usize) -> Self {
        Self {
            classes: vec![(0..size).collect()],
        }
    }

    /// Builds from a class label per element.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (x, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(x);
        }
        let mut classes: Vec<Vec<usize>> = by_label.into_values().collect();
        classes.sort();
        Self { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of elements covered.
    pub fn size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Class index of every element.
    pub fn class_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.size()];
        for (i, c) in self.classes.iter().enumerate() {
            for &x in c {
                map[x] = i;
            }
        }
        map
    }

    pub fn representative(&self, x: usize) -> usize {
        self.classes.iter().find(|c| c.contains(&x)).map(|c| c[0]).expect("element not covered")
    }

    /// Least partition coarser than both.
    pub fn join(&self, other: &Self) -> Self {
        let mut uf = UnionFind::new(self.size());
        for c in self.classes.iter().chain(other.classes.iter()) {
            for w in c.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.into_partition()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// A verified homomorphism between two finite semigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: FiniteSemigroup,
    codomain: FiniteSemigroup,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(domain: FiniteSemigroup, codomain: FiniteSemigroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.size() {
            return Err(SemigroupError::MapLength {
                expected: domain.size(),
                got: map.len(),
            });
        }
        for &y in &map {
            codomain.check_element(y)?;
        }
        for a in 0..domain.size() {
            for b in 0..domain.size() {
                if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    return Err(SemigroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(s: &FiniteSemigroup) -> Self {
        Self {
            domain: s.clone(),
            codomain: s.clone(),
            map: (0..s.size()).collect(),
        }
    }

    pub fn domain(&self) -> &FiniteSemigroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSemigroup {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if !first.codomain.same_table(&self.domain) {
            return Err(SemigroupError::Mismatch);
        }
        Ok(Homomorphism {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }
}

/// Named semigroups that recur throughout the workbench.
pub mod catalog {
    use super::FiniteSemigroup;

    fn build(size: usize, f: impl Fn(usize, usize) -> usize, names: Option<&[&str]>) -> FiniteSemigroup {
        let cells = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        let s = FiniteSemigroup::from_cells(size, cells).expect("catalog table is a semigroup");
        match names {
            Some(ns) => s.with_names(ns.iter().map(|n| n.to_string()).collect()).expect("name count"),
            None => s,
        }
    }

    pub fn trivial() -> FiniteSemigroup {
        build(1, |_, _| 0, None)
    }

    /// Additive cyclic group of order `n`.
    pub fn cyclic(n: usize) -> FiniteSemigroup {
        build(n, |a, b| (a + b) % n, None)
    }

    pub fn z2() -> FiniteSemigroup {
        cyclic(2)
    }

    pub fn z3() -> FiniteSemigroup {
        cyclic(3)
    }

    pub fn z4() -> FiniteSemigroup {
        cyclic(4)
    }

    pub fn klein_four() -> FiniteSemigroup {
        build(4, |a, b| a ^ b, None)
    }

    /// `xy = x`.
    pub fn left_zero(n: usize) -> FiniteSemigroup {
        build(n, |a, _| a, None)
    }

    /// `xy = y`.
    pub fn right_zero(n: usize) -> FiniteSemigroup {
        build(n, |_, b| b, None)
    }

    pub fn l2() -> FiniteSemigroup {
        left_zero(2)
    }

    pub fn r2() -> FiniteSemigroup {
        right_zero(2)
    }

    /// The flip-flop monoid: `L2` with an adjoined identity at index 2.
    pub fn l2_1() -> FiniteSemigroup {
        build(3, |a, b| if a == 2 { b } else if b == 2 { a } else { a }, Some(&["a", "b", "1"]))
    }

    /// `({0,1}, ∨)`.
    pub fn join2() -> FiniteSemigroup {
        build(2, |a, b| a | b, None)
    }

    /// `({0,1}, ∧)`.
    pub fn meet2() -> FiniteSemigroup {
        build(2, |a, b| a & b, None)
    }

    /// Two-element semigroup whose products are all `0`.
    pub fn null2() -> FiniteSemigroup {
        build(2, |_, _| 0, None)
    }

    /// Every built-in semigroup with its lookup name.
    pub fn all() -> Vec<(&'static str, FiniteSemigroup)> {
        vec![
            ("trivial", trivial()),
            ("z2", z2()),
            ("z3", z3()),
            ("l2", l2()),
            ("r2", r2()),
            ("l2_1", l2_1()),
            ("join2", join2()),
            ("meet2", meet2()),
        ]
    }

    pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
        match name {
            "z4" => Some(z4()),
            "klein4" => Some(klein_four()),
            "null2" => Some(null2()),
            _ => all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn validates_small_tables() {
        assert!(FiniteSemigroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteSemigroup::from_table(vec![vec![0, 0], vec![1, 1]]).is_ok());
    }

    #[test]
    fn rejects_non_associative_with_witness() {
        let err = FiniteSemigroup::from_table(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        let SemigroupError::NonAssociative { a, b, c } = err else {
            panic!("expected NonAssociative, got {err:?}")
        };
        // Brute-force confirmation of the reported triple.
        let t = [[1, 0], [0, 0]];
        assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
        assert_eq!((a, b, c), (0, 0, 1));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(FiniteSemigroup::from_table(vec![]), Err(SemigroupError::Empty));
        assert!(matches!(
            FiniteSemigroup::from_table(vec![vec![0, 2], vec![1, 1]]),
            Err(SemigroupError::OutOfRangeEntry { row: 0, col: 1, value: 2, .. })
        ));
        assert!(matches!(
            FiniteSemigroup::from_table(vec![vec![0], vec![1, 1]]),
            Err(SemigroupError::NotSquare { row: 0, .. })
        ));
    }

    #[test]
    fn identities() {
        assert_eq!(z2().identity_element(), Some(0));
        assert_eq!(l2().identity_element(), None);
        assert_eq!(join2().identity_element(), Some(0));
        assert_eq!(meet2().identity_element(), Some(1));
        assert_eq!(l2_1().identity_element(), Some(2));
    }

    #[test]
    fn groups() {
        assert!(z2().is_group());
        assert!(z3().is_group());
        assert!(!join2().is_group());
        assert!(!l2().is_group());
        assert!(trivial().is_group());
    }

    #[test]
    fn direct_products() {
        let k = z2().direct_product(&z2());
        assert!(k.same_table(&klein_four()));
        let lz = l2().direct_product(&z2());
        assert_eq!(lz.size(), 4);
        assert_eq!(lz.identity_element(), None);
        assert!(z2().direct_product(&trivial()).same_table(&z2()));
    }

    #[test]
    fn closures() {
        assert_eq!(z2().subsemigroup_closure(&[1]).unwrap(), vec![0, 1]);
        assert_eq!(l2().subsemigroup_closure(&[0]).unwrap(), vec![0]);
        assert_eq!(klein_four().subsemigroup_closure(&[1, 2]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(z2().subsemigroup_closure(&[]), Err(SemigroupError::EmptyGenerators));
    }

    #[test]
    fn congruences_on_z2() {
        let z = z2();
        assert!(z.is_congruence(&Partition::discrete(2)));
        assert_eq!(z.congruence_generated_by(&[]).unwrap(), Partition::discrete(2));
        assert_eq!(z.congruence_generated_by(&[(0, 1)]).unwrap(), Partition::single_class(2));
    }

    #[test]
    fn quotients() {
        let z = z3();
        assert!(z.quotient(&Partition::discrete(3)).unwrap().same_table(&z));
        assert!(z.quotient(&Partition::single_class(3)).unwrap().same_table(&trivial()));
        let bad = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
        assert!(matches!(z.quotient(&bad), Err(SemigroupError::NotACongruence { .. })));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![vec![0], vec![0, 1]], 2).is_err());
        assert!(Partition::new(vec![vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![], vec![0, 1]], 2).is_err());
        let p = Partition::new(vec![vec![2, 1], vec![0]], 3).unwrap();
        assert_eq!(p.classes(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn subsemigroup_relabels() {
        let (sub, incl) = l2_1().subsemigroup(&[2, 0]).unwrap();
        assert_eq!(incl, vec![0, 2]);
        assert_eq!(sub.identity_element(), Some(1));
        assert!(matches!(z3().subsemigroup(&[1]), Err(SemigroupError::NotClosed { .. })));
    }

    #[test]
    fn homomorphisms() {
        // Z4 -> Z2 reduction mod 2.
        let h = Homomorphism::new(z4(), z2(), vec![0, 1, 0, 1]).unwrap();
        assert!(h.is_surjective());
        assert!(!h.is_injective());
        assert!(Homomorphism::new(z3(), z2(), vec![0, 1, 1]).is_err());
    }

    #[test]
    fn index_period_of_cyclic_elements() {
        assert_eq!(z4().index_period(1), (1, 4));
        assert_eq!(null2().index_period(1), (2, 1));
    }
}
