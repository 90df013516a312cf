//! Named λρ-systems: empty and singleton systems, systems derived from one-
//! and two-sided actions, and the worked examples. Also direct
//! implementations of the wreath and two-sided wreath products, written
//! against their defining formulas and used as independent oracles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{catalog, FiniteSemigroup, SemigroupError};
use crate::system::{LrSystem, SystemError, SystemOfMaps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("action table has {got} entries, expected {expected}")]
    ActionShape { expected: usize, got: usize },
    #[error("action entry {value} is outside the carrier 0..{carrier}")]
    ActionRange { value: usize, carrier: usize },
    #[error("action law `{law}` fails at x = {x}, a = {a}, b = {b}")]
    ActionLawViolation { law: &'static str, x: usize, a: usize, b: usize },
    #[error("wreath product has {size} elements, over the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A right action `x ∗ a` of a semigroup on `0..carrier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAction {
    carrier: usize,
    base: FiniteSemigroup,
    /// `act[x * |S| + a] = x ∗ a`.
    act: Vec<usize>,
}

impl RightAction {
    /// Checks `(x∗a)∗b = x∗(ab)`, and `x∗1 = x` when the base is a monoid.
    pub fn new(carrier: usize, base: FiniteSemigroup, act: Vec<usize>) -> Result<Self, ConstructionError> {
        let n = base.size();
        if act.len() != carrier * n {
            return Err(ConstructionError::ActionShape {
                expected: carrier * n,
                got: act.len(),
            });
        }
        if let Some(&value) = act.iter().find(|&&v| v >= carrier) {
            return Err(ConstructionError::ActionRange { value, carrier });
        }
        let s = Self { carrier, base, act };
        for x in 0..carrier {
            for a in 0..n {
                for b in 0..n {
                    if s.apply(s.apply(x, a), b) != s.apply(x, s.base.mul(a, b)) {
                        return Err(ConstructionError::ActionLawViolation {
                            law: "(x*a)*b = x*(ab)",
                            x,
                            a,
                            b,
                        });
                    }
                }
            }
            if let Some(e) = s.base.identity_element() {
                if s.apply(x, e) != x {
                    return Err(ConstructionError::ActionLawViolation {
                        law: "x*1 = x",
                        x,
                        a: e,
                        b: e,
                    });
                }
            }
        }
        Ok(s)
    }

    pub fn from_fn(carrier: usize, base: FiniteSemigroup, f: impl Fn(usize, usize) -> usize) -> Result<Self, ConstructionError> {
        let n = base.size();
        let act = (0..carrier).flat_map(|x| (0..n).map(move |a| (x, a))).map(|(x, a)| f(x, a)).collect();
        Self::new(carrier, base, act)
    }

    /// A semigroup acting on itself by right multiplication.
    pub fn regular(base: FiniteSemigroup) -> Result<Self, ConstructionError> {
        let b = base.clone();
        Self::from_fn(base.size(), base, move |x, a| b.mul(x, a))
    }

    /// `x ∗ a = x`.
    pub fn trivial(carrier: usize, base: FiniteSemigroup) -> Result<Self, ConstructionError> {
        Self::from_fn(carrier, base, |x, _| x)
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn table(&self) -> &[usize] {
        &self.act
    }

    pub fn apply(&self, x: usize, a: usize) -> usize {
        self.act[x * self.base.size() + a]
    }
}

/// A two-sided action: `a \ x` on the left and `x / a` on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedAction {
    carrier: usize,
    base: FiniteSemigroup,
    /// `left[a * carrier + x] = a \ x`.
    left: Vec<usize>,
    /// `right[x * |S| + a] = x / a`.
    right: Vec<usize>,
}

impl TwoSidedAction {
    pub fn new(carrier: usize, base: FiniteSemigroup, left: Vec<usize>, right: Vec<usize>) -> Result<Self, ConstructionError> {
        let n = base.size();
        for table in [&left, &right] {
            if table.len() != carrier * n {
                return Err(ConstructionError::ActionShape {
                    expected: carrier * n,
                    got: table.len(),
                });
            }
            if let Some(&value) = table.iter().find(|&&v| v >= carrier) {
                return Err(ConstructionError::ActionRange { value, carrier });
            }
        }
        let s = Self {
            carrier,
            base,
            left,
            right,
        };
        for x in 0..carrier {
            for a in 0..n {
                for b in 0..n {
                    let ab = s.base.mul(a, b);
                    let laws = [
                        ("a\\(b\\x) = (ab)\\x", s.left(a, s.left(b, x)) == s.left(ab, x)),
                        ("(x/a)/b = x/(ab)", s.right(s.right(x, a), b) == s.right(x, ab)),
                        ("(a\\x)/b = a\\(x/b)", s.right(s.left(a, x), b) == s.left(a, s.right(x, b))),
                    ];
                    if let Some((law, _)) = laws.into_iter().find(|(_, ok)| !ok) {
                        return Err(ConstructionError::ActionLawViolation { law, x, a, b });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn from_fns(
        carrier: usize,
        base: FiniteSemigroup,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ConstructionError> {
        let n = base.size();
        let l = (0..n).flat_map(|a| (0..carrier).map(move |x| (a, x))).map(|(a, x)| left(a, x)).collect();
        let r = (0..carrier).flat_map(|x| (0..n).map(move |a| (x, a))).map(|(x, a)| right(x, a)).collect();
        Self::new(carrier, base, l, r)
    }

    /// `n \ (n₁,n₂) = (n n₁, n₂)` and `(n₁,n₂) / n = (n₁, n₂ n)` on `N²`,
    /// with `(n₁,n₂)` encoded as `n₁ * |N| + n₂`.
    pub fn natural(base: FiniteSemigroup) -> Result<Self, ConstructionError> {
        let n = base.size();
        let (l, r) = (base.clone(), base.clone());
        Self::from_fns(
            n * n,
            base,
            move |a, x| l.mul(a, x / n) * n + x % n,
            move |x, a| (x / n) * n + r.mul(x % n, a),
        )
    }

    /// Second projection on the left, a given right action on the right.
    pub fn from_right_action(action: &RightAction) -> Result<Self, ConstructionError> {
        let act = action.clone();
        Self::from_fns(action.carrier(), action.base().clone(), |_, x| x, move |x, a| act.apply(x, a))
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn left_table(&self) -> &[usize] {
        &self.left
    }

    pub fn right_table(&self) -> &[usize] {
        &self.right
    }

    pub fn left(&self, a: usize, x: usize) -> usize {
        self.left[a * self.carrier + x]
    }

    pub fn right(&self, x: usize, a: usize) -> usize {
        self.right[x * self.base.size() + a]
    }
}

/// `I[s] = ∅` everywhere; every map is empty.
pub fn empty_system(base: &FiniteSemigroup) -> LrSystem {
    let maps = SystemOfMaps::from_fn(base.clone(), vec![0; base.size()], |_, _, _| 0, |_, _, _| 0).expect("empty maps");
    LrSystem::trusted(maps)
}

/// `I[s] = {0}` everywhere; every map is the constant.
pub fn singleton_system(base: &FiniteSemigroup) -> LrSystem {
    let maps = SystemOfMaps::from_fn(base.clone(), vec![1; base.size()], |_, _, _| 0, |_, _, _| 0).expect("constant maps");
    LrSystem::trusted(maps)
}

/// `I[s] = X`, `λ[a,b] = id`, `ρ[a,b] = (_ ∗ a)`.
pub fn from_right_action(action: &RightAction) -> Result<LrSystem, ConstructionError> {
    let n = action.base().size();
    let maps = SystemOfMaps::from_fn(
        action.base().clone(),
        vec![action.carrier(); n],
        |_, _, x| x,
        |a, _, x| action.apply(x, a),
    )?;
    Ok(maps.validate()?)
}

/// `I[s] = X`, `λ[a,b] = (b \ _)`, `ρ[a,b] = (_ / a)`.
pub fn from_two_sided_action(action: &TwoSidedAction) -> Result<LrSystem, ConstructionError> {
    let n = action.base().size();
    let maps = SystemOfMaps::from_fn(
        action.base().clone(),
        vec![action.carrier(); n],
        |_, b, x| action.left(b, x),
        |a, _, x| action.right(x, a),
    )?;
    Ok(maps.validate()?)
}

pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// Elements `(u, a)` of `H^X × S`, anchor-major, tuples lexicographic with
/// the first coordinate most significant.
struct TupleSpace {
    h: usize,
    x: usize,
    per_anchor: usize,
}

impl TupleSpace {
    fn new(h: usize, x: usize, anchors: usize, cap: usize) -> Result<Self, ConstructionError> {
        let per_anchor = (0..x).try_fold(1usize, |acc, _| acc.checked_mul(h));
        let size = per_anchor.and_then(|p| p.checked_mul(anchors));
        match (per_anchor, size) {
            (Some(per_anchor), Some(size)) if size <= cap => Ok(Self { h, x, per_anchor }),
            _ => Err(ConstructionError::SizeCapExceeded {
                size: size.unwrap_or(usize::MAX),
                cap,
            }),
        }
    }

    fn decode(&self, index: usize) -> (Vec<usize>, usize) {
        let anchor = index / self.per_anchor;
        let mut code = index % self.per_anchor;
        let mut u = vec![0; self.x];
        for i in (0..self.x).rev() {
            u[i] = code % self.h;
            code /= self.h;
        }
        (u, anchor)
    }

    fn encode(&self, u: &[usize], anchor: usize) -> usize {
        anchor * self.per_anchor + u.iter().fold(0, |acc, &v| acc * self.h + v)
    }
}

/// `H ≀ (X,S)`: `(u,a) ⋆ (w,b) = (u · (w ∘ (_ ∗ a)), ab)`.
pub fn wreath_oracle(h: &FiniteSemigroup, action: &RightAction) -> Result<FiniteSemigroup, ConstructionError> {
    let s = action.base();
    let space = TupleSpace::new(h.size(), action.carrier(), s.size(), DEFAULT_ORACLE_CAP)?;
    let size = space.per_anchor * s.size();
    let mut cells = Vec::with_capacity(size * size);
    for i in 0..size {
        let (u, a) = space.decode(i);
        for j in 0..size {
            let (w, b) = space.decode(j);
            let prod: Vec<usize> = (0..action.carrier()).map(|x| h.mul(u[x], w[action.apply(x, a)])).collect();
            cells.push(space.encode(&prod, s.mul(a, b)));
        }
    }
    Ok(FiniteSemigroup::from_cells_unchecked_assoc(size, cells)?)
}

/// `H ≀ (X,S,X)`: `(u,a) ⋆ (w,b) = ((u ∘ (b \ _)) · (w ∘ (_ / a)), ab)`.
pub fn two_sided_wreath_oracle(h: &FiniteSemigroup, action: &TwoSidedAction) -> Result<FiniteSemigroup, ConstructionError> {
    let s = action.base();
    let space = TupleSpace::new(h.size(), action.carrier(), s.size(), DEFAULT_ORACLE_CAP)?;
    let size = space.per_anchor * s.size();
    let mut cells = Vec::with_capacity(size * size);
    for i in 0..size {
        let (u, a) = space.decode(i);
        for j in 0..size {
            let (w, b) = space.decode(j);
            let prod: Vec<usize> = (0..action.carrier())
                .map(|x| h.mul(u[action.left(b, x)], w[action.right(x, a)]))
                .collect();
            cells.push(space.encode(&prod, s.mul(a, b)));
        }
    }
    Ok(FiniteSemigroup::from_cells_unchecked_assoc(size, cells)?)
}

/// `H □ N`, the two-sided wreath product over the natural action on `N²`.
pub fn block_product_oracle(h: &FiniteSemigroup, n: &FiniteSemigroup) -> Result<FiniteSemigroup, ConstructionError> {
    two_sided_wreath_oracle(h, &TwoSidedAction::natural(n.clone())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorkedExample {
    /// Over the trivial semigroup: `I = {0,1}`, `λ = id`, `ρ = 0`.
    LeftZero,
    /// Over `({0,1}, ∨)`: `I[0] = {0}`, `I[1] = {0,1}`,
    /// `λ[1,0] = ρ[0,1] = λ[1,1] = id`, `ρ[1,1] = 0`.
    FlipFlop,
    /// Over `({0,1}, ∧)`: `I[0] = ∅`, `I[1] = {0,1}`, `λ[1,1] = ρ[1,1] = id`.
    NonSemidirect,
    /// The system used for the subset-form product checks (the flip-flop
    /// system).
    BooleanShadow,
}

impl WorkedExample {
    pub const ALL: [WorkedExample; 4] = [Self::LeftZero, Self::FlipFlop, Self::NonSemidirect, Self::BooleanShadow];
}

pub fn paper_example(which: WorkedExample) -> LrSystem {
    let maps = match which {
        WorkedExample::LeftZero => {
            SystemOfMaps::new(catalog::trivial(), vec![2], vec![vec![0, 1]], vec![vec![0, 0]])
        }
        WorkedExample::FlipFlop | WorkedExample::BooleanShadow => SystemOfMaps::from_fn(
            catalog::join2(),
            vec![1, 2],
            |a, b, p| match (a, b) {
                (1, 0) | (1, 1) => p,
                _ => 0,
            },
            |a, b, p| match (a, b) {
                (0, 1) => p,
                _ => 0,
            },
        ),
        WorkedExample::NonSemidirect => SystemOfMaps::from_fn(catalog::meet2(), vec![0, 2], |_, _, p| p, |_, _, p| p),
    };
    maps.expect("example is well-shaped").validate().expect("example satisfies the axioms")
}

/// Built-in systems by lookup name.
pub fn system_by_name(name: &str) -> Option<LrSystem> {
    match name {
        "flipflop_system" => Some(paper_example(WorkedExample::FlipFlop)),
        "lzero_system" => Some(paper_example(WorkedExample::LeftZero)),
        "nonsemidirect_system" => Some(paper_example(WorkedExample::NonSemidirect)),
        _ => None,
    }
}

pub const SYSTEM_NAMES: [&str; 3] = ["flipflop_system", "lzero_system", "nonsemidirect_system"];
