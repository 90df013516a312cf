//! Arrows between λρ-systems.
//!
//! Orientation: a transformation from `(S, 𝒮)` to `(T, 𝒯)` carries a
//! homomorphism `h: T → S` (backwards) and maps `t[a]: I[h(a)] → J[a]` for
//! `a ∈ T`, subject to
//!
//! ```text
//! λᴶ[a,b] ∘ t[ab] = t[a] ∘ λᴵ[h(a),h(b)]
//! ρᴶ[a,b] ∘ t[ab] = t[b] ∘ ρᴵ[h(a),h(b)]
//! ```
//!
//! The induced map on products goes the other way, from `H^[𝒯]` to `H^[𝒮]`.
//!
//! Free systems are infinite, so [`TruncatedFreeSystem`] keeps words of
//! length at most `L` and defines products only when they stay in range.
//! Every check on such a system quantifies over the defined instances only.

use std::collections::HashMap;

use thiserror::Error;

use crate::product::{LrProduct, ProductError, DEFAULT_UNIVERSE_CAP};
use crate::semigroup::{FiniteSemigroup, Homomorphism, SemigroupError};
use crate::system::{check_axioms, AxiomReport, IndexedSystem, LrSystem, MapKind, SystemError, SystemOfMaps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("{kind}-square fails at a = {a}, b = {b}, point {point}")]
    SquareViolation { kind: MapKind, a: usize, b: usize, point: usize },
    #[error("h is not a homomorphism: h({a}·{b}) ≠ h({a})·h({b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("h has {got} entries, expected {expected}")]
    HomShape { expected: usize, got: usize },
    #[error("h({a}) = {value} is outside the source base 0..{bound}")]
    HomRange { a: usize, value: usize, bound: usize },
    #[error("expected {expected} component maps, got {got}")]
    MapCount { expected: usize, got: usize },
    #[error("t[{a}] has {got} entries, expected {expected}")]
    MapShape { a: usize, expected: usize, got: usize },
    #[error("t[{a}]({point}) = {value} is outside 0..{bound}")]
    MapRange { a: usize, point: usize, value: usize, bound: usize },
    #[error("arrows are not composable")]
    Mismatch,
    #[error("induced map is not a homomorphism at product elements {p}, {q}")]
    InducedNotHomomorphism { p: usize, q: usize },
    #[error("canonical maps disagree at word {word}, component {component}, point {point}")]
    CanonicalMismatch { word: usize, component: usize, point: usize },
    #[error("invalid free system: {0}")]
    InvalidFreeSystem(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

type Result<T, E = CategoryError> = std::result::Result<T, E>;

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    map.iter().all(|&v| v < codomain && !std::mem::replace(&mut seen[v], true))
}

/// An arrow `(S, 𝒮) → (T, 𝒯)`. Constructed values have passed every check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation<S, T> {
    source: S,
    target: T,
    h: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl<S: IndexedSystem, T: IndexedSystem> Transformation<S, T> {
    /// Checks that `h` is a homomorphism on every defined product of the
    /// target base, the shapes of `t[a]`, and both squares pointwise.
    pub fn new(source: S, target: T, h: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let candidate = Self {
            source,
            target,
            h,
            maps,
        };
        candidate.check()?;
        Ok(candidate)
    }

    fn check(&self) -> Result<()> {
        let (src, tgt) = (&self.source, &self.target);
        let m = tgt.element_count();
        if self.h.len() != m {
            return Err(CategoryError::HomShape {
                expected: m,
                got: self.h.len(),
            });
        }
        if let Some((a, &value)) = self.h.iter().enumerate().find(|(_, &v)| v >= src.element_count()) {
            return Err(CategoryError::HomRange {
                a,
                value,
                bound: src.element_count(),
            });
        }
        if self.maps.len() != m {
            return Err(CategoryError::MapCount {
                expected: m,
                got: self.maps.len(),
            });
        }
        for a in 0..m {
            let map = &self.maps[a];
            let expected = src.fiber_size(self.h[a]);
            if map.len() != expected {
                return Err(CategoryError::MapShape {
                    a,
                    expected,
                    got: map.len(),
                });
            }
            let bound = tgt.fiber_size(a);
            if let Some((point, &value)) = map.iter().enumerate().find(|(_, &v)| v >= bound) {
                return Err(CategoryError::MapRange { a, point, value, bound });
            }
        }
        for a in 0..m {
            for b in 0..m {
                let Some(ab) = tgt.product(a, b) else { continue };
                let (ha, hb) = (self.h[a], self.h[b]);
                if src.product(ha, hb) != Some(self.h[ab]) {
                    return Err(CategoryError::NotAHomomorphism { a, b });
                }
                let t_ab = &self.maps[ab];
                let lam_j = tgt.lambda_map(a, b).expect("defined product");
                let rho_j = tgt.rho_map(a, b).expect("defined product");
                let lam_i = src.lambda_map(ha, hb).expect("defined product");
                let rho_i = src.rho_map(ha, hb).expect("defined product");
                for (point, &z) in t_ab.iter().enumerate() {
                    if lam_j[z] != self.maps[a][lam_i[point]] {
                        return Err(CategoryError::SquareViolation {
                            kind: MapKind::Lambda,
                            a,
                            b,
                            point,
                        });
                    }
                    if rho_j[z] != self.maps[b][rho_i[point]] {
                        return Err(CategoryError::SquareViolation {
                            kind: MapKind::Rho,
                            a,
                            b,
                            point,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    /// `h: T → S` as a lookup table.
    pub fn h(&self) -> &[usize] {
        &self.h
    }

    /// `t[a]: I[h(a)] → J[a]`.
    pub fn map(&self, a: usize) -> &[usize] {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// `h` bijective and every `t[a]` a bijection.
    pub fn is_system_isomorphism(&self) -> bool {
        let m = self.target.element_count();
        m == self.source.element_count()
            && is_bijection(&self.h, m)
            && (0..m).all(|a| is_bijection(&self.maps[a], self.target.fiber_size(a)))
    }
}

impl<S: IndexedSystem + Clone> Transformation<S, S> {
    pub fn identity(system: &S) -> Self {
        let n = system.element_count();
        Self {
            source: system.clone(),
            target: system.clone(),
            h: (0..n).collect(),
            maps: (0..n).map(|a| (0..system.fiber_size(a)).collect()).collect(),
        }
    }
}

/// Validates a candidate arrow.
pub fn validate_transformation<S: IndexedSystem, T: IndexedSystem>(
    source: S,
    target: T,
    h: Vec<usize>,
    maps: Vec<Vec<usize>>,
) -> Result<Transformation<S, T>> {
    Transformation::new(source, target, h, maps)
}

/// `f2 ∘ f1` for `f1: (S,𝒮) → (T,𝒯)` and `f2: (T,𝒯) → (U,𝒰)`:
/// `h = h1 ∘ h2` and `t[c] = t2[c] ∘ t1[h2(c)]`.
pub fn compose_transformations<S, T, U>(f2: &Transformation<T, U>, f1: &Transformation<S, T>) -> Result<Transformation<S, U>>
where
    S: IndexedSystem + Clone,
    T: IndexedSystem + PartialEq,
    U: IndexedSystem + Clone,
{
    if f1.target != f2.source {
        return Err(CategoryError::Mismatch);
    }
    let h = f2.h.iter().map(|&t| f1.h[t]).collect();
    let maps = (0..f2.target.element_count())
        .map(|c| f1.maps[f2.h[c]].iter().map(|&p| f2.maps[c][p]).collect())
        .collect();
    Transformation::new(f1.source.clone(), f2.target.clone(), h, maps)
}

/// A morphism between two systems over the same base: maps `t[a]: I[a] → I′[a]`
/// with `λ′[a,b] ∘ t[ab] = t[a] ∘ λ[a,b]` and likewise for `ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMorphism {
    inner: Transformation<LrSystem, LrSystem>,
}

impl SystemMorphism {
    pub fn new(source: LrSystem, target: LrSystem, maps: Vec<Vec<usize>>) -> Result<Self> {
        if !source.base().same_table(target.base()) {
            return Err(CategoryError::Mismatch);
        }
        let h = (0..source.base().size()).collect();
        Ok(Self {
            inner: Transformation::new(source, target, h, maps)?,
        })
    }

    pub fn source(&self) -> &LrSystem {
        self.inner.source()
    }

    pub fn target(&self) -> &LrSystem {
        self.inner.target()
    }

    pub fn map(&self, a: usize) -> &[usize] {
        self.inner.map(a)
    }

    /// The same data as an arrow with `h = id`.
    pub fn as_transformation(&self) -> &Transformation<LrSystem, LrSystem> {
        &self.inner
    }
}

/// The system `(I[f(a)])_{a ∈ T}` with `λ[f(a),f(b)]`, `ρ[f(a),f(b)]`.
pub fn pullback_system(f: &Homomorphism, system: &LrSystem) -> Result<LrSystem> {
    if !f.codomain().same_table(system.base()) {
        return Err(CategoryError::Mismatch);
    }
    let sizes = (0..f.domain().size()).map(|a| system.index_size(f.apply(a))).collect();
    let maps = SystemOfMaps::from_fn(
        f.domain().clone(),
        sizes,
        |a, b, p| system.lambda(f.apply(a), f.apply(b))[p],
        |a, b, p| system.rho(f.apply(a), f.apply(b))[p],
    )?;
    Ok(maps.validate()?)
}

/// The arrow `(f, id)` from `(S, 𝒮)` to the pullback along `f: T → S`.
pub fn pullback_transformation(f: &Homomorphism, system: &LrSystem) -> Result<Transformation<LrSystem, LrSystem>> {
    let pulled = pullback_system(f, system)?;
    let maps = (0..pulled.base().size()).map(|a| (0..pulled.index_size(a)).collect()).collect();
    Transformation::new(system.clone(), pulled, f.map().to_vec(), maps)
}

/// Restriction to the subsemigroup on `elements`, relabelled in ascending
/// order, together with the arrow `(inclusion, id)`.
pub fn restrict(system: &LrSystem, elements: &[usize]) -> Result<(LrSystem, Transformation<LrSystem, LrSystem>)> {
    let (sub, inclusion) = system.base().subsemigroup(elements)?;
    let f = Homomorphism::new(sub, system.base().clone(), inclusion)?;
    let tr = pullback_transformation(&f, system)?;
    Ok((tr.target().clone(), tr))
}

/// The induced map `(x, a) ↦ (x ∘ t[a], h(a))` from `H^[𝒯]` to `H^[𝒮]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    /// Indexed by the documented ordering of `H^[𝒯]`, valued in `H^[𝒮]`.
    pub map: Vec<usize>,
    pub codomain_size: usize,
    /// Pairs of `H^[𝒯]` whose product is defined; all were checked.
    pub pairs_checked: usize,
}

impl InducedMap {
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain_size];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|x| x)
    }
}

/// Builds the induced map and checks the homomorphism law on every pair
/// whose product is defined in `H^[𝒯]`.
pub fn induced_map<S: IndexedSystem, T: IndexedSystem>(
    h: &FiniteSemigroup,
    tr: &Transformation<S, T>,
    cap: usize,
) -> Result<InducedMap> {
    let dom = LrProduct::with_cap(h, tr.target(), cap)?;
    let cod = LrProduct::with_cap(h, tr.source(), cap)?;
    let elements = dom.universe();
    let map: Vec<usize> = elements
        .iter()
        .map(|p| {
            let tuple = tr.map(p.anchor).iter().map(|&z| p.tuple[z]).collect();
            cod.index_of(&crate::product::ProductElement::new(tr.h()[p.anchor], tuple))
                .expect("image lies in the codomain")
        })
        .collect();
    let images: Vec<_> = map.iter().map(|&i| cod.element(i)).collect();
    let mut pairs_checked = 0;
    let m = tr.target().element_count();
    for a in 0..m {
        for b in 0..m {
            if tr.target().product(a, b).is_none() {
                continue;
            }
            for i in dom.anchor_range(a) {
                for j in dom.anchor_range(b) {
                    let pq = dom.multiply(&elements[i], &elements[j]).expect("defined product");
                    pairs_checked += 1;
                    let lhs = map[dom.index_of(&pq).expect("in universe")];
                    let rhs = cod.multiply(&images[i], &images[j]).map(|r| cod.index_of(&r).expect("in universe"));
                    if rhs != Some(lhs) {
                        return Err(CategoryError::InducedNotHomomorphism { p: i, q: j });
                    }
                }
            }
        }
    }
    Ok(InducedMap {
        map,
        codomain_size: cod.size(),
        pairs_checked,
    })
}

/// The induced homomorphism `H^[𝒯] → H^[𝒮]` between full product tables.
pub fn induced_hom(h: &FiniteSemigroup, tr: &Transformation<LrSystem, LrSystem>) -> Result<Homomorphism> {
    induced_hom_with_cap(h, tr, crate::product::DEFAULT_TABLE_CAP)
}

pub fn induced_hom_with_cap(h: &FiniteSemigroup, tr: &Transformation<LrSystem, LrSystem>, cap: usize) -> Result<Homomorphism> {
    let domain = crate::product::product_table_with_cap(h, tr.target(), cap)?;
    let codomain = crate::product::product_table_with_cap(h, tr.source(), cap)?;
    let induced = induced_map(h, tr, cap)?;
    Ok(Homomorphism::new(domain, codomain, induced.map)?)
}

/// A free semigroup (or monoid) system restricted to words of length at
/// most `bound`. Words are ordered by length, then lexicographically; in
/// monoid mode the empty word is element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFreeSystem {
    alphabet: usize,
    bound: usize,
    monoid: bool,
    letter_sizes: Vec<usize>,
    shared: usize,
    words: Vec<Vec<usize>>,
    word_index: HashMap<Vec<usize>, usize>,
    /// Points of `I[w]` as tuples `(v₁, …, vₙ)`, one per letter. Empty for ε.
    points: Vec<Vec<Vec<usize>>>,
    fiber_sizes: Vec<usize>,
    products: Vec<Option<usize>>,
    lambda: Vec<Option<Vec<usize>>>,
    rho: Vec<Option<Vec<usize>>>,
}

fn words_up_to(alphabet: usize, bound: usize, with_empty: bool) -> Vec<Vec<usize>> {
    let mut words = Vec::new();
    if with_empty {
        words.push(Vec::new());
    }
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..bound {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    words
}

/// All tuples with `v[j] < sizes[j]`, leftmost coordinate most significant.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

impl TruncatedFreeSystem {
    fn build(
        letter_sizes: Vec<usize>,
        bound: usize,
        monoid: Option<(usize, &[Vec<usize>], &[Vec<usize>])>,
    ) -> Result<Self> {
        if bound == 0 {
            return Err(CategoryError::InvalidFreeSystem("length bound must be at least 1".into()));
        }
        let alphabet = letter_sizes.len();
        let words = words_up_to(alphabet, bound, monoid.is_some());
        let word_index: HashMap<_, _> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut points = Vec::with_capacity(words.len());
        for w in &words {
            let sizes: Vec<usize> = w.iter().map(|&x| letter_sizes[x]).collect();
            let mut pts = if w.is_empty() { Vec::new() } else { tuples(&sizes) };
            if let Some((_, lam, rho)) = monoid {
                pts.retain(|v| (1..v.len()).all(|j| rho[w[j - 1]][v[j - 1]] == lam[w[j]][v[j]]));
            }
            points.push(pts);
        }
        let shared = monoid.map_or(0, |(s, _, _)| s);
        let fiber_sizes: Vec<usize> = words
            .iter()
            .zip(&points)
            .map(|(w, p)| if w.is_empty() { shared } else { p.len() })
            .collect();
        let point_index: Vec<HashMap<&[usize], usize>> = points
            .iter()
            .map(|pts| pts.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect())
            .collect();

        let n = words.len();
        let mut products = vec![None; n * n];
        let mut lambda = vec![None; n * n];
        let mut rho = vec![None; n * n];
        for (i, u) in words.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                if u.len() + w.len() > bound {
                    continue;
                }
                let uw: Vec<usize> = u.iter().chain(w).copied().collect();
                let k = word_index[&uw];
                products[i * n + j] = Some(k);
                let ids: Vec<usize> = (0..fiber_sizes[k]).collect();
                let (lam, rh) = match (u.is_empty(), w.is_empty()) {
                    (true, true) => (ids.clone(), ids),
                    (true, false) => {
                        let (_, lam_x, _) = monoid.expect("ε only in monoid mode");
                        (points[k].iter().map(|v| lam_x[w[0]][v[0]]).collect(), ids)
                    }
                    (false, true) => {
                        let (_, _, rho_x) = monoid.expect("ε only in monoid mode");
                        let last = u.len() - 1;
                        (ids, points[k].iter().map(|v| rho_x[u[last]][v[last]]).collect())
                    }
                    (false, false) => (
                        points[k].iter().map(|v| point_index[i][&v[..u.len()]]).collect(),
                        points[k].iter().map(|v| point_index[j][&v[u.len()..]]).collect(),
                    ),
                };
                lambda[i * n + j] = Some(lam);
                rho[i * n + j] = Some(rh);
            }
        }
        Ok(Self {
            alphabet,
            bound,
            monoid: monoid.is_some(),
            letter_sizes,
            shared,
            words,
            word_index,
            points,
            fiber_sizes,
            products,
            lambda,
            rho,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_monoid_mode(&self) -> bool {
        self.monoid
    }

    pub fn letter_sizes(&self) -> &[usize] {
        &self.letter_sizes
    }

    /// `|I|` in monoid mode, 0 otherwise.
    pub fn shared_size(&self) -> usize {
        self.shared
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &[usize] {
        &self.words[index]
    }

    pub fn index_of_word(&self, word: &[usize]) -> Option<usize> {
        self.word_index.get(word).copied()
    }

    /// Points of `I[w]` as letter-wise tuples (empty for ε).
    pub fn points(&self, index: usize) -> &[Vec<usize>] {
        &self.points[index]
    }

    pub fn word_name(&self, index: usize) -> String {
        let w = &self.words[index];
        if w.is_empty() {
            return "ε".into();
        }
        let sep = if self.alphabet > 10 { "." } else { "" };
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
    }

    /// Axiom instances with `|abc| ≤ L`.
    pub fn axiom_report(&self) -> AxiomReport {
        check_axioms(self, true)
    }

    /// `λ[w,ε]` and `ρ[ε,w]` are identities for every in-range `w`.
    pub fn is_unital_truncated(&self) -> bool {
        self.monoid
            && (0..self.words.len()).all(|w| {
                let id: Vec<usize> = (0..self.fiber_sizes[w]).collect();
                self.lambda_map(w, 0) == Some(&id[..]) && self.rho_map(0, w) == Some(&id[..])
            })
    }
}

impl IndexedSystem for TruncatedFreeSystem {
    fn element_count(&self) -> usize {
        self.words.len()
    }

    fn fiber_size(&self, a: usize) -> usize {
        self.fiber_sizes[a]
    }

    fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.products[a * self.words.len() + b]
    }

    fn lambda_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.lambda[a * self.words.len() + b].as_deref()
    }

    fn rho_map(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.rho[a * self.words.len() + b].as_deref()
    }
}

/// Letters `0..k` with `|I[x]| = letter_sizes[x]`; `I[w]` is the product of
/// the letter sets, `λ` and `ρ` are the two projections.
pub fn free_semigroup_system(letter_sizes: &[usize], bound: usize) -> Result<TruncatedFreeSystem> {
    TruncatedFreeSystem::build(letter_sizes.to_vec(), bound, None)
}

/// Free monoid over letters `0..k` with `λ_x, ρ_x: I[x] → I` where
/// `|I| = shared`. `I[ε] = I` and `I[w]` holds the tuples with
/// `ρ_{xᵢ}(vᵢ) = λ_{xᵢ₊₁}(vᵢ₊₁)`.
pub fn free_monoid_system(
    shared: usize,
    letter_lambda: &[Vec<usize>],
    letter_rho: &[Vec<usize>],
    bound: usize,
) -> Result<TruncatedFreeSystem> {
    if shared == 0 {
        return Err(CategoryError::InvalidFreeSystem("|I| must be at least 1".into()));
    }
    if letter_lambda.len() != letter_rho.len() {
        return Err(CategoryError::InvalidFreeSystem("λ_x and ρ_x must cover the same letters".into()));
    }
    let mut sizes = Vec::with_capacity(letter_lambda.len());
    for (x, (l, r)) in letter_lambda.iter().zip(letter_rho).enumerate() {
        if l.len() != r.len() {
            return Err(CategoryError::InvalidFreeSystem(format!("λ_{x} and ρ_{x} have different domains")));
        }
        if l.iter().chain(r).any(|&v| v >= shared) {
            return Err(CategoryError::InvalidFreeSystem(format!("λ_{x} or ρ_{x} leaves 0..{shared}")));
        }
        sizes.push(l.len());
    }
    TruncatedFreeSystem::build(sizes, bound, Some((shared, letter_lambda, letter_rho)))
}

/// The arrow `(⊗, t)` from `(S, 𝒮)` to the truncated free system over `S⁺`
/// with letter sets `I[s]`. `⊗` multiplies a word out in `S`; `t[w]` sends
/// `z ∈ I[⊗w]` to
///
/// ```text
/// v₁ = λ[s₁, s₂⋯sₙ](z)
/// vⱼ = ρ[s₁⋯sⱼ₋₁, sⱼ](λ[s₁⋯sⱼ, sⱼ₊₁⋯sₙ](z))
/// vₙ = ρ[s₁⋯sₙ₋₁, sₙ](z)
/// ```
///
/// Each middle component is also computed as
/// `λ[sⱼ, sⱼ₊₁⋯sₙ](ρ[s₁⋯sⱼ₋₁, sⱼ⋯sₙ](z))` and the two must agree.
pub fn canonical_transformation(system: &LrSystem, bound: usize) -> Result<Transformation<LrSystem, TruncatedFreeSystem>> {
    let s = system.base();
    let free = free_semigroup_system(system.index_sizes(), bound)?;
    let fold = |w: &[usize]| w.iter().copied().reduce(|a, b| s.mul(a, b)).expect("nonempty word");
    let mut h = Vec::with_capacity(free.words().len());
    let mut maps = Vec::with_capacity(free.words().len());
    for (index, w) in free.words().iter().enumerate() {
        let n = w.len();
        let top = fold(w);
        h.push(top);
        if n == 1 {
            maps.push((0..system.index_size(top)).collect());
            continue;
        }
        let mut map = Vec::with_capacity(system.index_size(top));
        for z in 0..system.index_size(top) {
            let mut v = vec![0; n];
            v[0] = system.lambda(w[0], fold(&w[1..]))[z];
            v[n - 1] = system.rho(fold(&w[..n - 1]), w[n - 1])[z];
            for j in 1..n - 1 {
                let inner = system.lambda(fold(&w[..=j]), fold(&w[j + 1..]))[z];
                v[j] = system.rho(fold(&w[..j]), w[j])[inner];
                let inner = system.rho(fold(&w[..j]), fold(&w[j..]))[z];
                if system.lambda(w[j], fold(&w[j + 1..]))[inner] != v[j] {
                    return Err(CategoryError::CanonicalMismatch {
                        word: index,
                        component: j,
                        point: z,
                    });
                }
            }
            map.push(free.points(index).binary_search(&v).expect("tuple lies in the product"));
        }
        maps.push(map);
    }
    Transformation::new(system.clone(), free, h, maps)
}

/// The induced map of the canonical arrow, `H^[S⁺] → H^[𝒮]`, checked on
/// every pair with an in-range product.
pub fn canonical_induced_map(h: &FiniteSemigroup, system: &LrSystem, bound: usize) -> Result<InducedMap> {
    induced_map(h, &canonical_transformation(system, bound)?, DEFAULT_UNIVERSE_CAP)
}
