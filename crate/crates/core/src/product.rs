//! λρ-products `H^[S]`: pairs `(x, a)` with `x: I[a] → H`, multiplied by
//!
//! ```text
//! (x,a) ⋆ (y,b) = ((x ∘ λ[a,b]) · (y ∘ ρ[a,b]), ab)
//! ```
//!
//! Elements are numbered anchor by anchor (ascending), and within an anchor
//! by tuple in lexicographic order with the leftmost coordinate most
//! significant. An anchor with an empty index set contributes exactly one
//! element, the empty tuple.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{FiniteSemigroup, Homomorphism, SemigroupError};
use crate::system::{Axiom, AxiomViolation, IndexedSystem, LrSystem, SystemOfMaps};

pub const DEFAULT_UNIVERSE_CAP: usize = 1_000_000;
/// Full tables are quadratic in the universe; this keeps them in memory.
pub const DEFAULT_TABLE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product has {size} elements, over the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("element {element} of H is not idempotent")]
    NotIdempotent { element: usize },
    #[error("element {element} of the base is not idempotent")]
    BaseNotIdempotent { element: usize },
    #[error("fiber I[{element}] is empty")]
    EmptyFiber { element: usize },
    #[error("invalid product element: {0}")]
    InvalidElement(String),
    #[error("expected a two-element semigroup on {{0,1}}, got {size} elements")]
    NotBoolean { size: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// `(x, a)`: an anchor in the base and a tuple `x: I[a] → H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProductElement {
    pub anchor: usize,
    pub tuple: Vec<usize>,
}

impl ProductElement {
    pub fn new(anchor: usize, tuple: Vec<usize>) -> Self {
        Self { anchor, tuple }
    }

    /// Constant tuple of length `len`.
    pub fn constant(anchor: usize, len: usize, value: usize) -> Self {
        Self {
            anchor,
            tuple: vec![value; len],
        }
    }
}

impl fmt::Display for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.anchor)?;
        let wide = self.tuple.iter().any(|&v| v > 9);
        for (i, v) in self.tuple.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Indexing and multiplication for `H^[S]` over any indexed system.
pub struct LrProduct<'a, S: IndexedSystem + ?Sized> {
    h: &'a FiniteSemigroup,
    system: &'a S,
    offsets: Vec<usize>,
    counts: Vec<usize>,
    size: usize,
}

impl<'a, S: IndexedSystem + ?Sized> LrProduct<'a, S> {
    pub fn new(h: &'a FiniteSemigroup, system: &'a S) -> Result<Self, ProductError> {
        Self::with_cap(h, system, DEFAULT_UNIVERSE_CAP)
    }

    pub fn with_cap(h: &'a FiniteSemigroup, system: &'a S, cap: usize) -> Result<Self, ProductError> {
        let n = system.element_count();
        let mut offsets = Vec::with_capacity(n);
        let mut counts = Vec::with_capacity(n);
        let mut size = 0usize;
        for a in 0..n {
            let k = u32::try_from(system.fiber_size(a)).unwrap_or(u32::MAX);
            let count = h.size().checked_pow(k).unwrap_or(usize::MAX);
            offsets.push(size);
            counts.push(count);
            size = size.saturating_add(count);
            if size > cap {
                return Err(ProductError::SizeCapExceeded { size, cap });
            }
        }
        Ok(Self {
            h,
            system,
            offsets,
            counts,
            size,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factor(&self) -> &FiniteSemigroup {
        self.h
    }

    pub fn system(&self) -> &S {
        self.system
    }

    pub fn anchor_of(&self, index: usize) -> usize {
        // Offsets are strictly increasing: every anchor has at least one tuple.
        match self.offsets.binary_search(&index) {
            Ok(a) => a,
            Err(a) => a - 1,
        }
    }

    pub fn element(&self, index: usize) -> ProductElement {
        assert!(index < self.size, "product index out of range");
        let anchor = self.anchor_of(index);
        let k = self.system.fiber_size(anchor);
        let mut rest = index - self.offsets[anchor];
        let mut tuple = vec![0; k];
        for slot in tuple.iter_mut().rev() {
            *slot = rest % self.h.size();
            rest /= self.h.size();
        }
        ProductElement { anchor, tuple }
    }

    pub fn index_of(&self, p: &ProductElement) -> Result<usize, ProductError> {
        if p.anchor >= self.offsets.len() {
            return Err(ProductError::InvalidElement(format!("anchor {} out of range", p.anchor)));
        }
        if p.tuple.len() != self.system.fiber_size(p.anchor) {
            return Err(ProductError::InvalidElement(format!(
                "tuple of length {} at anchor {} with |I| = {}",
                p.tuple.len(),
                p.anchor,
                self.system.fiber_size(p.anchor)
            )));
        }
        let mut idx = 0;
        for &v in &p.tuple {
            if v >= self.h.size() {
                return Err(ProductError::InvalidElement(format!("tuple entry {v} outside H")));
            }
            idx = idx * self.h.size() + v;
        }
        Ok(self.offsets[p.anchor] + idx)
    }

    /// Every element in the documented order.
    pub fn universe(&self) -> Vec<ProductElement> {
        (0..self.size).map(|i| self.element(i)).collect()
    }

    /// Indices of the elements anchored at `a`.
    pub fn anchor_range(&self, a: usize) -> std::ops::Range<usize> {
        self.offsets[a]..self.offsets[a] + self.counts[a]
    }

    /// `p ⋆ q`, or `None` when the base product is undefined.
    pub fn multiply(&self, p: &ProductElement, q: &ProductElement) -> Option<ProductElement> {
        let ab = self.system.product(p.anchor, q.anchor)?;
        let lam = self.system.lambda_map(p.anchor, q.anchor)?;
        let rho = self.system.rho_map(p.anchor, q.anchor)?;
        let tuple = lam
            .iter()
            .zip(rho)
            .map(|(&l, &r)| self.h.mul(p.tuple[l], q.tuple[r]))
            .collect();
        Some(ProductElement { anchor: ab, tuple })
    }

    pub fn multiply_indices(&self, i: usize, j: usize) -> Option<usize> {
        let r = self.multiply(&self.element(i), &self.element(j))?;
        Some(self.index_of(&r).expect("product stays in the universe"))
    }

    /// `((p⋆q)⋆r, p⋆(q⋆r))` when both sides are defined.
    pub fn both_bracketings(
        &self,
        p: &ProductElement,
        q: &ProductElement,
        r: &ProductElement,
    ) -> Option<(ProductElement, ProductElement)> {
        let left = self.multiply(&self.multiply(p, q)?, r)?;
        let right = self.multiply(p, &self.multiply(q, r)?)?;
        Some((left, right))
    }

    pub fn name(&self, index: usize) -> String {
        self.element(index).to_string()
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.size).map(|i| self.name(i)).collect()
    }

    /// Row-major table of a total product (every base product defined).
    fn raw_table(&self, cap: usize) -> Result<Vec<usize>, ProductError> {
        if self.size > cap {
            return Err(ProductError::SizeCapExceeded { size: self.size, cap });
        }
        let elements = self.universe();
        let mut cells = Vec::with_capacity(self.size * self.size);
        for p in &elements {
            for q in &elements {
                let r = self.multiply(p, q).expect("total system");
                cells.push(self.index_of(&r).expect("product stays in the universe"));
            }
        }
        Ok(cells)
    }
}

/// `p ⋆ q` in `H^[S]` for a finite (total) system.
pub fn multiply(h: &FiniteSemigroup, system: &SystemOfMaps, p: &ProductElement, q: &ProductElement) -> ProductElement {
    LrProduct::with_cap(h, system, usize::MAX)
        .expect("no cap")
        .multiply(p, q)
        .expect("total system")
}

pub fn universe(h: &FiniteSemigroup, system: &SystemOfMaps) -> Result<Vec<ProductElement>, ProductError> {
    Ok(LrProduct::new(h, system)?.universe())
}

/// Multiplication table of `H^[S]`, with element names `anchor:tuple`.
pub fn product_table(h: &FiniteSemigroup, system: &LrSystem) -> Result<FiniteSemigroup, ProductError> {
    product_table_with_cap(h, system, DEFAULT_TABLE_CAP)
}

pub fn product_table_with_cap(h: &FiniteSemigroup, system: &LrSystem, cap: usize) -> Result<FiniteSemigroup, ProductError> {
    let product = LrProduct::with_cap(h, system.as_maps(), cap)?;
    let cells = product.raw_table(cap)?;
    let table = FiniteSemigroup::from_cells_unchecked_assoc(product.size(), cells)?;
    Ok(table.with_names(product.names())?)
}

/// The three descriptions of a unital system, each evaluated on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitConditions {
    /// `H^[S]` is a monoid for every `H` in the supplied list of monoids.
    pub preserves_units: bool,
    /// The base is a monoid and `λ[a,1]`, `ρ[1,a]` are identities.
    pub intrinsic: bool,
    /// The base is a monoid and `W^[S]` is a monoid for the supplied
    /// nontrivial monoid `W`.
    pub witnessed: bool,
}

impl UnitConditions {
    pub fn agree(&self) -> bool {
        self.preserves_units == self.intrinsic && self.intrinsic == self.witnessed
    }
}

/// Evaluates [`UnitConditions`]. The first condition quantifies over all
/// monoids; here it is bounded to `monoids`, which should contain the
/// trivial monoid.
pub fn unit_conditions(system: &LrSystem, monoids: &[FiniteSemigroup], witness: &FiniteSemigroup) -> Result<UnitConditions, ProductError> {
    if witness.size() < 2 || !witness.is_monoid() {
        return Err(ProductError::InvalidElement("witness must be a nontrivial monoid".into()));
    }
    let mut preserves_units = true;
    for m in monoids {
        if !product_table(m, system)?.is_monoid() {
            preserves_units = false;
            break;
        }
    }
    let base_monoid = system.base().is_monoid();
    Ok(UnitConditions {
        preserves_units,
        intrinsic: system.is_unital(),
        witnessed: base_monoid && product_table(witness, system)?.is_monoid(),
    })
}

/// A triple on which `⋆` fails to associate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingTriple {
    pub p: ProductElement,
    pub q: ProductElement,
    pub r: ProductElement,
}

/// Exhaustive associativity scan of `H^[S]` for a candidate that need not
/// satisfy the axioms. Returns the first failing triple in index order.
pub fn associativity_oracle(h: &FiniteSemigroup, candidate: &SystemOfMaps) -> Result<Option<FailingTriple>, ProductError> {
    associativity_oracle_with_cap(h, candidate, DEFAULT_TABLE_CAP)
}

pub fn associativity_oracle_with_cap(
    h: &FiniteSemigroup,
    candidate: &SystemOfMaps,
    cap: usize,
) -> Result<Option<FailingTriple>, ProductError> {
    let product = LrProduct::with_cap(h, candidate, cap)?;
    let cells = product.raw_table(cap)?;
    let n = product.size();
    for i in 0..n {
        for j in 0..n {
            let ij = cells[i * n + j];
            for k in 0..n {
                if cells[ij * n + k] != cells[i * n + cells[j * n + k]] {
                    return Ok(Some(FailingTriple {
                        p: product.element(i),
                        q: product.element(j),
                        r: product.element(k),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A finite `H` and a triple of `H^[S]` that does not associate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAssociativityWitness {
    pub h: FiniteSemigroup,
    pub triple: FailingTriple,
}

/// Turns an axiom violation into a failing associativity instance.
///
/// `H` is the left-zero (α, γ) or right-zero (β) semigroup on the disjoint
/// union of all index sets, with an identity adjoined. The injective tuple
/// `id_a: I[a] → H` sits in the position the violated axiom reads from, and
/// the other two factors are constant at the identity, so every coordinate
/// of every product has at most one non-identity factor.
pub fn nonassociativity_witness(candidate: &SystemOfMaps, violation: &AxiomViolation) -> NonAssociativityWitness {
    let sizes = candidate.index_sizes();
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &k in sizes {
        offsets.push(total);
        total += k;
    }
    let base_h = match violation.axiom {
        Axiom::Alpha | Axiom::Gamma => crate::semigroup::catalog::left_zero(total.max(1)),
        Axiom::Beta => crate::semigroup::catalog::right_zero(total.max(1)),
    };
    // With `total = 0` no violation can exist; the max(1) keeps H well-formed.
    let h = base_h.with_identity_adjoined().without_names();
    let unit = h.size() - 1;
    let injective = |a: usize| ProductElement::new(a, (0..sizes[a]).map(|i| offsets[a] + i).collect());
    let constant = |a: usize| ProductElement::constant(a, sizes[a], unit);
    let AxiomViolation { a, b, c, .. } = *violation;
    let (p, q, r) = match violation.axiom {
        Axiom::Alpha => (injective(a), constant(b), constant(c)),
        Axiom::Beta => (constant(a), constant(b), injective(c)),
        Axiom::Gamma => (constant(a), injective(b), constant(c)),
    };
    NonAssociativityWitness {
        h,
        triple: FailingTriple { p, q, r },
    }
}

/// `a ↦ (constant e, a)`: the base embeds when `H` has an idempotent `e`.
pub fn embed_base(h: &FiniteSemigroup, system: &LrSystem, e: usize) -> Result<Homomorphism, ProductError> {
    h.check_element(e)?;
    if !h.is_idempotent(e) {
        return Err(ProductError::NotIdempotent { element: e });
    }
    let table = product_table(h, system)?;
    let product = LrProduct::new(h, system.as_maps())?;
    let map = (0..system.base().size())
        .map(|a| product.index_of(&ProductElement::constant(a, system.index_size(a), e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Homomorphism::new(system.base().clone(), table, map)?)
}

/// `x ↦ (constant x, f)`: `H` embeds when `f` is an idempotent of the base
/// with a nonempty fiber.
pub fn embed_fiber(h: &FiniteSemigroup, system: &LrSystem, f: usize) -> Result<Homomorphism, ProductError> {
    system.base().check_element(f)?;
    if !system.base().is_idempotent(f) {
        return Err(ProductError::BaseNotIdempotent { element: f });
    }
    let k = system.index_size(f);
    if k == 0 {
        return Err(ProductError::EmptyFiber { element: f });
    }
    let table = product_table(h, system)?;
    let product = LrProduct::new(h, system.as_maps())?;
    let map = (0..h.size())
        .map(|x| product.index_of(&ProductElement::constant(f, k, x)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Homomorphism::new(h.clone(), table, map)?)
}

/// Product over a two-element semigroup `B` on `{0,1}` in subset form:
/// `(U,a) ⋆ (W,b) = (λ[a,b]⁻¹(U) • ρ[a,b]⁻¹(W), ab)`, where `•` acts on
/// characteristic functions.
pub fn shadow_multiply(
    b: &FiniteSemigroup,
    system: &SystemOfMaps,
    (u, a): (&BTreeSet<usize>, usize),
    (w, c): (&BTreeSet<usize>, usize),
) -> Result<(BTreeSet<usize>, usize), ProductError> {
    if b.size() != 2 {
        return Err(ProductError::NotBoolean { size: b.size() });
    }
    let lam = system.lambda(a, c);
    let rho = system.rho(a, c);
    let left: BTreeSet<usize> = (0..lam.len()).filter(|&i| u.contains(&lam[i])).collect();
    let right: BTreeSet<usize> = (0..rho.len()).filter(|&i| w.contains(&rho[i])).collect();
    let combined = (0..lam.len())
        .filter(|i| {
            let x = usize::from(left.contains(i));
            let y = usize::from(right.contains(i));
            b.mul(x, y) == 1
        })
        .collect();
    Ok((combined, system.base().mul(a, c)))
}

/// Subset `{i : x(i) = 1}` of a 0/1 tuple.
pub fn tuple_to_subset(tuple: &[usize]) -> BTreeSet<usize> {
    tuple.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect()
}

pub fn subset_to_tuple(subset: &BTreeSet<usize>, len: usize) -> Vec<usize> {
    (0..len).map(|i| usize::from(subset.contains(&i))).collect()
}
