//! λρ-systems: a family of index sets `I[s]` over a semigroup together with
//! maps `λ[a,b]: I[ab] → I[a]` and `ρ[a,b]: I[ab] → I[b]`.
//!
//! Index sets are the prefixes `0..|I[s]|` and maps are dense sequences, so
//! `lambda(a, b)[p]` is `λ[a,b](p)`. A [`SystemOfMaps`] only has to be
//! well-shaped; an [`LrSystem`] additionally satisfies
//!
//! * (α) `λ[a,b] ∘ λ[ab,c] = λ[a,bc]`
//! * (β) `ρ[b,c] ∘ ρ[a,bc] = ρ[ab,c]`
//! * (γ) `ρ[a,b] ∘ λ[ab,c] = λ[b,c] ∘ ρ[a,bc]`

use std::fmt;
use std::ops::Deref;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Alpha => "α",
            Axiom::Beta => "β",
            Axiom::Gamma => "γ",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    Lambda,
    Rho,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Lambda => "λ",
            MapKind::Rho => "ρ",
        })
    }
}

/// One failing instance of an axiom: the triple and the point of `I[abc]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub point: usize,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axiom ({}) fails at (a,b,c) = ({},{},{}), point {}",
            self.axiom, self.a, self.b, self.c, self.point
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("expected {expected} index sizes, got {got}")]
    IndexSizesLength { expected: usize, got: usize },
    #[error("expected {expected} {kind} maps (one per ordered pair), got {got}")]
    MapCount {
        kind: MapKind,
        expected: usize,
        got: usize,
    },
    #[error("{kind}[{a},{b}] has {got} entries, but |I[{a}·{b}]| = {expected}")]
    MapLength {
        kind: MapKind,
        a: usize,
        b: usize,
        expected: usize,
        got: usize,
    },
    #[error("{kind}[{a},{b}]({point}) = {value} is outside 0..{bound}")]
    RangeError {
        kind: MapKind,
        a: usize,
        b: usize,
        point: usize,
        value: usize,
        bound: usize,
    },
    #[error("{0}")]
    AxiomViolation(AxiomViolation),
    #[error("empty-fiber set is not an ideal: {a}·{b} = {product} has a nonempty fiber")]
    IdealViolation { a: usize, b: usize, product: usize },
}

/// Read access shared by finite λρ-systems and truncated free systems,
/// whose products may be undefined past the truncation bound.
pub trait IndexedSystem {
    fn element_count(&self) -> usize;
    fn fiber_size(&self, a: usize) -> usize;
    fn product(&self, a: usize, b: usize) -> Option<usize>;
    fn lambda_map(&self, a: usize, b: usize) -> Option<&[usize]>;
    fn rho_map(&self, a: usize, b: usize) -> Option<&[usize]>;
}

/// Outcome of a bounded axiom scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Number of (axiom, a, b, c, point) instances evaluated.
    pub instances_checked: usize,
    /// Number of triples skipped because a product was undefined.
    pub triples_skipped: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans every axiom instance whose products are all defined, in the order
/// (a, b, c, axiom, point). Stops at the first violation unless `full`.
pub fn check_axioms<S: IndexedSystem + ?Sized>(sys: &S, full: bool) -> AxiomReport {
    let n = sys.element_count();
    let mut report = AxiomReport::default();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = sys.product(a, b) else {
                report.triples_skipped += n;
                continue;
            };
            for c in 0..n {
                let (Some(bc), Some(abc)) = (sys.product(b, c), sys.product(ab, c)) else {
                    report.triples_skipped += 1;
                    continue;
                };
                let lam = |x, y| sys.lambda_map(x, y).expect("defined product has maps");
                let rho = |x, y| sys.rho_map(x, y).expect("defined product has maps");
                let (l_ab, l_abc, l_abc2) = (lam(a, b), lam(ab, c), lam(a, bc));
                let (r_bc, r_abc, r_abc2) = (rho(b, c), rho(a, bc), rho(ab, c));
                let (r_ab, l_bc) = (rho(a, b), lam(b, c));
                for p in 0..sys.fiber_size(abc) {
                    let checks = [
                        (Axiom::Alpha, l_ab[l_abc[p]] == l_abc2[p]),
                        (Axiom::Beta, r_bc[r_abc[p]] == r_abc2[p]),
                        (Axiom::Gamma, r_ab[l_abc[p]] == l_bc[r_abc[p]]),
                    ];
                    for (axiom, ok) in checks {
                        report.instances_checked += 1;
                        if !ok {
                            report.violations.push(AxiomViolation {
                                axiom,
                                a,
                                b,
                                c,
                                point: p,
                            });
                            if !full {
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// A well-shaped system of sets and maps over a finite semigroup. The
/// axioms are not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemOfMaps {
    base: FiniteSemigroup,
    index_sizes: Vec<usize>,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
}

impl SystemOfMaps {
    /// `lambda` and `rho` are indexed by `a * |S| + b`.
    pub fn new(
        base: FiniteSemigroup,
        index_sizes: Vec<usize>,
        lambda: Vec<Vec<usize>>,
        rho: Vec<Vec<usize>>,
    ) -> Result<Self, SystemError> {
        let n = base.size();
        if index_sizes.len() != n {
            return Err(SystemError::IndexSizesLength {
                expected: n,
                got: index_sizes.len(),
            });
        }
        for (kind, maps) in [(MapKind::Lambda, &lambda), (MapKind::Rho, &rho)] {
            if maps.len() != n * n {
                return Err(SystemError::MapCount {
                    kind,
                    expected: n * n,
                    got: maps.len(),
                });
            }
            for a in 0..n {
                for b in 0..n {
                    let map = &maps[a * n + b];
                    let expected = index_sizes[base.mul(a, b)];
                    if map.len() != expected {
                        return Err(SystemError::MapLength {
                            kind,
                            a,
                            b,
                            expected,
                            got: map.len(),
                        });
                    }
                    let bound = match kind {
                        MapKind::Lambda => index_sizes[a],
                        MapKind::Rho => index_sizes[b],
                    };
                    if let Some(point) = map.iter().position(|&v| v >= bound) {
                        return Err(SystemError::RangeError {
                            kind,
                            a,
                            b,
                            point,
                            value: map[point],
                            bound,
                        });
                    }
                }
            }
        }
        Ok(Self {
            base,
            index_sizes,
            lambda,
            rho,
        })
    }

    /// Builds the maps from closures `λ[a,b](p)` and `ρ[a,b](p)`.
    pub fn from_fn(
        base: FiniteSemigroup,
        index_sizes: Vec<usize>,
        lambda: impl Fn(usize, usize, usize) -> usize,
        rho: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, SystemError> {
        let n = base.size();
        let mut lam = Vec::with_capacity(n * n);
        let mut rh = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let k = index_sizes.get(base.mul(a, b)).copied().unwrap_or(0);
                lam.push((0..k).map(|p| lambda(a, b, p)).collect());
                rh.push((0..k).map(|p| rho(a, b, p)).collect());
            }
        }
        Self::new(base, index_sizes, lam, rh)
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn index_sizes(&self) -> &[usize] {
        &self.index_sizes
    }

    pub fn index_size(&self, s: usize) -> usize {
        self.index_sizes[s]
    }

    pub fn lambda(&self, a: usize, b: usize) -> &[usize] {
        &self.lambda[a * self.base.size() + b]
    }

    pub fn rho(&self, a: usize, b: usize) -> &[usize] {
        &self.rho[a * self.base.size() + b]
    }

    pub fn map(&self, kind: MapKind, a: usize, b: usize) -> &[usize] {
        match kind {
            MapKind::Lambda => self.lambda(a, b),
            MapKind::Rho => self.rho(a, b),
        }
    }

    pub fn lambda_tables(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    pub fn rho_tables(&self) -> &[Vec<usize>] {
        &self.rho
    }

    /// A copy with one map entry replaced; shape is re-checked.
    pub fn with_entry(&self, kind: MapKind, a: usize, b: usize, point: usize, value: usize) -> Result<Self, SystemError> {
        let mut next = self.clone();
        let idx = a * self.base.size() + b;
        let table = match kind {
            MapKind::Lambda => &mut next.lambda,
            MapKind::Rho => &mut next.rho,
        };
        table[idx][point] = value;
        Self::new(next.base, next.index_sizes, next.lambda, next.rho)
    }

    /// First axiom violation in scan order, if any.
    pub fn first_violation(&self) -> Option<AxiomViolation> {
        check_axioms(self, false).violations.into_iter().next()
    }

    /// Every axiom violation.
    pub fn violations(&self) -> Vec<AxiomViolation> {
        check_axioms(self, true).violations
    }

    pub fn validate(self) -> Result<LrSystem, SystemError> {
        match self.first_violation() {
            Some(v) => Err(SystemError::AxiomViolation(v)),
            None => Ok(LrSystem(self)),
        }
    }
}

impl IndexedSystem for SystemOfMaps {
    fn element_count(&self) -> usize {
        self.base.size()
    }

    fn fiber_size(&self, a: usize) -> usize {
        self.index_sizes[a]
    }

    fn product(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.base.mul(a, b))
    }

    fn lambda_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        Some(self.lambda(a, b))
    }

    fn rho_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        Some(self.rho(a, b))
    }
}

/// A system of maps known to satisfy (α), (β) and (γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrSystem(SystemOfMaps);

impl Deref for LrSystem {
    type Target = SystemOfMaps;

    fn deref(&self) -> &SystemOfMaps {
        &self.0
    }
}

impl IndexedSystem for LrSystem {
    fn element_count(&self) -> usize {
        self.0.element_count()
    }

    fn fiber_size(&self, a: usize) -> usize {
        self.0.fiber_size(a)
    }

    fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.0.product(a, b)
    }

    fn lambda_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.0.lambda_map(a, b)
    }

    fn rho_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.0.rho_map(a, b)
    }
}

/// Certificate for the unital test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Unitality {
    /// Base has unit `identity`, and every `λ[a,1]`, `ρ[1,a]` is the identity.
    Unital { identity: usize },
    NotMonoid,
    /// `λ[a,1](point) ≠ point` or `ρ[1,a](point) ≠ point`.
    NotIdentity { a: usize, map: MapKind, point: usize },
}

impl Unitality {
    pub fn is_unital(&self) -> bool {
        matches!(self, Unitality::Unital { .. })
    }
}

impl LrSystem {
    pub fn into_inner(self) -> SystemOfMaps {
        self.0
    }

    pub fn as_maps(&self) -> &SystemOfMaps {
        &self.0
    }

    /// Wraps maps that satisfy the axioms by construction.
    pub(crate) fn trusted(maps: SystemOfMaps) -> Self {
        debug_assert!(maps.first_violation().is_none());
        Self(maps)
    }

    /// `J = {s : I[s] = ∅}`, checked to be a two-sided ideal when nonempty.
    pub fn empty_support_ideal(&self) -> Result<Vec<usize>, SystemError> {
        let j: Vec<usize> = (0..self.base.size()).filter(|&s| self.index_size(s) == 0).collect();
        for &x in &j {
            for s in 0..self.base.size() {
                for (a, b) in [(s, x), (x, s)] {
                    let product = self.base.mul(a, b);
                    if self.index_size(product) != 0 {
                        return Err(SystemError::IdealViolation { a, b, product });
                    }
                }
            }
        }
        Ok(j)
    }

    pub fn unitality(&self) -> Unitality {
        let Some(one) = self.base.identity_element() else {
            return Unitality::NotMonoid;
        };
        for a in 0..self.base.size() {
            for (map, table) in [(MapKind::Lambda, self.lambda(a, one)), (MapKind::Rho, self.rho(one, a))] {
                if let Some(point) = table.iter().enumerate().position(|(p, &v)| p != v) {
                    return Unitality::NotIdentity { a, map, point };
                }
            }
        }
        Unitality::Unital { identity: one }
    }

    pub fn is_unital(&self) -> bool {
        self.unitality().is_unital()
    }

    pub fn is_group_preserving(&self) -> bool {
        self.base.is_group() && self.is_unital()
    }
}

/// Options for [`enumerate_systems`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Stop after this many systems.
    pub limit: Option<usize>,
    /// Value-order seed for the randomized mode.
    pub seed: u64,
    /// Pin `λ[a,1]` and `ρ[1,a]` to identities (yields only unital systems).
    pub unital_only: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            limit: None,
            seed: 0,
            unital_only: false,
        }
    }
}

/// Largest base and fiber size enumerated exhaustively in lexicographic
/// order; beyond these, candidate values are tried in a seeded random order.
pub const EXHAUSTIVE_MAX_BASE: usize = 3;
pub const EXHAUSTIVE_MAX_FIBER: usize = 3;

/// Streams the λρ-systems over `base` with the given fiber sizes by
/// backtracking over the concatenated λ then ρ tables.
pub fn enumerate_systems(base: &FiniteSemigroup, index_sizes: &[usize], options: EnumerationOptions) -> SystemEnumerator {
    SystemEnumerator::new(base.clone(), index_sizes.to_vec(), options)
}

const UNSET: usize = usize::MAX;

pub struct SystemEnumerator {
    base: FiniteSemigroup,
    index_sizes: Vec<usize>,
    /// Slot offset of `λ[a,b]`, then of `ρ[a,b]`, indexed by `a * n + b`.
    lambda_offset: Vec<usize>,
    rho_offset: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    values: Vec<usize>,
    position: Vec<usize>,
    depth: usize,
    yielded: usize,
    limit: Option<usize>,
    exhausted: bool,
    exhaustive: bool,
}

impl SystemEnumerator {
    fn new(base: FiniteSemigroup, index_sizes: Vec<usize>, options: EnumerationOptions) -> Self {
        let n = base.size();
        let mut exhausted = index_sizes.len() != n;
        let max_fiber = index_sizes.iter().copied().max().unwrap_or(0);
        let exhaustive = n <= EXHAUSTIVE_MAX_BASE && max_fiber <= EXHAUSTIVE_MAX_FIBER;
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let one = base.identity_element();
        if options.unital_only && one.is_none() {
            exhausted = true;
        }
        let mut lambda_offset = vec![0; n * n];
        let mut rho_offset = vec![0; n * n];
        let mut candidates = Vec::new();
        if !exhausted {
            for kind in [MapKind::Lambda, MapKind::Rho] {
                for a in 0..n {
                    for b in 0..n {
                        let offset = candidates.len();
                        let (target, pinned) = match kind {
                            MapKind::Lambda => {
                                lambda_offset[a * n + b] = offset;
                                (a, options.unital_only && Some(b) == one)
                            }
                            MapKind::Rho => {
                                rho_offset[a * n + b] = offset;
                                (b, options.unital_only && Some(a) == one)
                            }
                        };
                        for p in 0..index_sizes[base.mul(a, b)] {
                            let mut cands: Vec<usize> = if pinned {
                                if p < index_sizes[target] {
                                    vec![p]
                                } else {
                                    vec![]
                                }
                            } else {
                                (0..index_sizes[target]).collect()
                            };
                            if !exhaustive {
                                cands.shuffle(&mut rng);
                            }
                            candidates.push(cands);
                        }
                    }
                }
            }
        }
        let slots = candidates.len();
        Self {
            base,
            index_sizes,
            lambda_offset,
            rho_offset,
            candidates,
            values: vec![UNSET; slots],
            position: vec![0; slots],
            depth: 0,
            yielded: 0,
            limit: options.limit,
            exhausted,
            exhaustive,
        }
    }

    /// True when values are tried in ascending (lexicographic) order.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    fn value(&self, kind: MapKind, a: usize, b: usize, p: usize) -> usize {
        let n = self.base.size();
        let off = match kind {
            MapKind::Lambda => self.lambda_offset[a * n + b],
            MapKind::Rho => self.rho_offset[a * n + b],
        };
        self.values[off + p]
    }

    /// Checks every axiom instance whose slots are all assigned.
    fn consistent(&self) -> bool {
        let n = self.base.size();
        let s = &self.base;
        for a in 0..n {
            for b in 0..n {
                let ab = s.mul(a, b);
                for c in 0..n {
                    let bc = s.mul(b, c);
                    let abc = s.mul(ab, c);
                    for p in 0..self.index_sizes[abc] {
                        let l_abc = self.value(MapKind::Lambda, ab, c, p);
                        let r_abc = self.value(MapKind::Rho, a, bc, p);
                        if l_abc != UNSET {
                            let lhs = self.value(MapKind::Lambda, a, b, l_abc);
                            let rhs = self.value(MapKind::Lambda, a, bc, p);
                            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                                return false;
                            }
                        }
                        if r_abc != UNSET {
                            let lhs = self.value(MapKind::Rho, b, c, r_abc);
                            let rhs = self.value(MapKind::Rho, ab, c, p);
                            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                                return false;
                            }
                        }
                        if l_abc != UNSET && r_abc != UNSET {
                            let lhs = self.value(MapKind::Rho, a, b, l_abc);
                            let rhs = self.value(MapKind::Lambda, b, c, r_abc);
                            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Moves to the next complete consistent assignment.
    fn advance(&mut self) -> bool {
        let slots = self.candidates.len();
        if slots == 0 {
            // Exactly one (empty) assignment.
            let first = self.yielded == 0;
            return first && self.consistent();
        }
        if self.depth == slots {
            self.depth -= 1;
        }
        loop {
            let k = self.depth;
            if self.position[k] >= self.candidates[k].len() {
                self.position[k] = 0;
                self.values[k] = UNSET;
                if k == 0 {
                    return false;
                }
                self.depth -= 1;
                continue;
            }
            self.values[k] = self.candidates[k][self.position[k]];
            self.position[k] += 1;
            if self.consistent() {
                self.depth += 1;
                if self.depth == slots {
                    return true;
                }
            }
        }
    }

    fn current(&self) -> LrSystem {
        let n = self.base.size();
        let maps = SystemOfMaps::from_fn(
            self.base.clone(),
            self.index_sizes.clone(),
            |a, b, p| self.value(MapKind::Lambda, a, b, p),
            |a, b, p| self.value(MapKind::Rho, a, b, p),
        )
        .expect("enumerated maps are well-shaped");
        debug_assert_eq!(maps.lambda_tables().len(), n * n);
        LrSystem::trusted(maps)
    }
}

impl Iterator for SystemEnumerator {
    type Item = LrSystem;

    fn next(&mut self) -> Option<LrSystem> {
        if self.exhausted || self.limit.is_some_and(|l| self.yielded >= l) {
            return None;
        }
        if !self.advance() {
            self.exhausted = true;
            return None;
        }
        self.yielded += 1;
        Some(self.current())
    }
}
