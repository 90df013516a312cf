//! Unital systems over groups are wreath products in disguise.
//!
//! Over a group `G` with unit `e`, every `λ[g,h]` and `ρ[g,h]` of a unital
//! system is a bijection, `i·g = ρ[g,e](λ[e,g]⁻¹(i))` is a right action of
//! `G` on `X = I[e]`, and `(id_G, (λ[e,g])_g)` is an isomorphism of the
//! system onto the one built from that action.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::category::{induced_hom_with_cap, CategoryError, Transformation};
use crate::constructions::{from_right_action, paper_example, wreath_oracle, ConstructionError, WorkedExample, RightAction};
use crate::iso::find_isomorphism_with_cap;
use crate::product::{product_table, product_table_with_cap, ProductError, DEFAULT_TABLE_CAP};
use crate::semigroup::{catalog, FiniteSemigroup, Partition, SemigroupError};
use crate::system::{LrSystem, MapKind};

/// Largest table handed to the isomorphism search.
pub const WREATH_ISO_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupWreathError {
    #[error("system is not group preserving: {0}")]
    NotGroupPreserving(&'static str),
    #[error("{kind}[{a},{b}] is not a bijection")]
    NotBijective { kind: MapKind, a: usize, b: usize },
    #[error("derived action fails `{law}` at i = {point}, g = {g}, h = {h}")]
    ActionLawViolation { law: &'static str, point: usize, g: usize, h: usize },
    #[error("H is not a group")]
    NotAGroup,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

type Result<T, E = GroupWreathError> = std::result::Result<T, E>;

fn inverse_of(map: &[usize], codomain: usize) -> Option<Vec<usize>> {
    if map.len() != codomain {
        return None;
    }
    let mut inv = vec![usize::MAX; codomain];
    for (p, &v) in map.iter().enumerate() {
        if inv[v] != usize::MAX {
            return None;
        }
        inv[v] = p;
    }
    Some(inv)
}

/// Checks that every `λ[g,h]` and `ρ[g,h]` is a bijection. Fails first on
/// the precondition (group base, unital system).
pub fn check_bijectivity(system: &LrSystem) -> Result<()> {
    let base = system.base();
    if !base.is_group() {
        return Err(GroupWreathError::NotGroupPreserving("base is not a group"));
    }
    if !system.is_unital() {
        return Err(GroupWreathError::NotGroupPreserving("system is not unital"));
    }
    let n = base.size();
    for a in 0..n {
        for b in 0..n {
            if inverse_of(system.lambda(a, b), system.index_size(a)).is_none() {
                return Err(GroupWreathError::NotBijective {
                    kind: MapKind::Lambda,
                    a,
                    b,
                });
            }
            if inverse_of(system.rho(a, b), system.index_size(b)).is_none() {
                return Err(GroupWreathError::NotBijective { kind: MapKind::Rho, a, b });
            }
        }
    }
    Ok(())
}

/// `i·g = ρ[g,e](λ[e,g]⁻¹(i))` on `I[e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedAction {
    action: RightAction,
    unit: usize,
    /// `λ[e,g]⁻¹: I[e] → I[g]`, indexed by `g`.
    lambda_inverse: Vec<Vec<usize>>,
    /// Pointwise instances of `(i·g)·h = i·(gh)` that were checked.
    instances_checked: usize,
}

impl DerivedAction {
    pub fn action(&self) -> &RightAction {
        &self.action
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn lambda_inverse(&self, g: usize) -> &[usize] {
        &self.lambda_inverse[g]
    }

    pub fn instances_checked(&self) -> usize {
        self.instances_checked
    }
}

/// Builds the derived action and checks `i·e = i` and
/// `ρ[h,e]∘λ[e,h]⁻¹∘ρ[g,e]∘λ[e,g]⁻¹ = ρ[gh,e]∘λ[e,gh]⁻¹` pointwise.
pub fn derive_action(system: &LrSystem) -> Result<DerivedAction> {
    check_bijectivity(system)?;
    let base = system.base();
    let n = base.size();
    let e = base.identity_element().expect("group has a unit");
    let x = system.index_size(e);
    let lambda_inverse: Vec<Vec<usize>> = (0..n)
        .map(|g| inverse_of(system.lambda(e, g), x).expect("bijective"))
        .collect();
    let act = |i: usize, g: usize| system.rho(g, e)[lambda_inverse[g][i]];
    let mut instances_checked = 0;
    for i in 0..x {
        if act(i, e) != i {
            return Err(GroupWreathError::ActionLawViolation {
                law: "i·e = i",
                point: i,
                g: e,
                h: e,
            });
        }
        for g in 0..n {
            for h in 0..n {
                instances_checked += 1;
                if act(act(i, g), h) != act(i, base.mul(g, h)) {
                    return Err(GroupWreathError::ActionLawViolation {
                        law: "(i·g)·h = i·(gh)",
                        point: i,
                        g,
                        h,
                    });
                }
            }
        }
    }
    let action = RightAction::from_fn(x, base.clone(), act)?;
    Ok(DerivedAction {
        action,
        unit: e,
        lambda_inverse,
        instances_checked,
    })
}

/// The action system `S(X,G)` of the derived action and the isomorphism
/// `(id_G, (λ[e,g])_g)` onto it.
#[derive(Debug, Clone)]
pub struct Wreathized {
    pub derived: DerivedAction,
    pub system: LrSystem,
    pub transformation: Transformation<LrSystem, LrSystem>,
}

pub fn wreathize(system: &LrSystem) -> Result<Wreathized> {
    let derived = derive_action(system)?;
    let target = from_right_action(derived.action())?;
    let n = system.base().size();
    let maps = (0..n).map(|g| system.lambda(derived.unit(), g).to_vec()).collect();
    let transformation = Transformation::new(system.clone(), target.clone(), (0..n).collect(), maps)?;
    debug_assert!(transformation.is_system_isomorphism());
    Ok(Wreathized {
        derived,
        system: target,
        transformation,
    })
}

/// Outcome of comparing `H^[S]` with `H ≀ (X,G)` two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WreathIsoReport {
    pub size: usize,
    pub product_is_group: bool,
    /// An isomorphism was found by search.
    pub search: bool,
    /// The map induced by the wreathizing transformation is an isomorphism.
    pub explicit: bool,
}

impl WreathIsoReport {
    pub fn routes_agree(&self) -> bool {
        self.search == self.explicit
    }

    pub fn holds(&self) -> bool {
        self.product_is_group && self.search && self.explicit
    }
}

pub fn verify_wreath_iso(h: &FiniteSemigroup, system: &LrSystem) -> Result<WreathIsoReport> {
    if !h.is_group() {
        return Err(GroupWreathError::NotAGroup);
    }
    let w = wreathize(system)?;
    let product = product_table(h, system)?;
    let oracle = wreath_oracle(h, w.derived.action())?;
    let search = find_isomorphism_with_cap(&product, &oracle, WREATH_ISO_CAP.max(product.size()))?.is_some();
    // The induced map runs H^[S(X,G)] → H^[S]; its domain table is the oracle's.
    let explicit = match induced_hom_with_cap(h, &w.transformation, DEFAULT_TABLE_CAP) {
        Ok(hom) => hom.domain().same_table(&oracle) && hom.is_isomorphism(),
        Err(CategoryError::InducedNotHomomorphism { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(WreathIsoReport {
        size: product.size(),
        product_is_group: product.is_group(),
        search,
        explicit,
    })
}

/// The three equivalent descriptions of a group-preserving system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupConditions {
    /// `H^[S]` is a group for every `H` in the supplied list of groups.
    pub preserves_groups: bool,
    /// The base is a group and the system is unital.
    pub group_preserving: bool,
    /// [`wreathize`] succeeds.
    pub wreathizes: bool,
}

impl GroupConditions {
    pub fn agree(&self) -> bool {
        self.preserves_groups == self.group_preserving && self.group_preserving == self.wreathizes
    }
}

/// Bounded to `groups`, which should contain the trivial group.
pub fn group_conditions(system: &LrSystem, groups: &[FiniteSemigroup]) -> Result<GroupConditions> {
    let mut preserves_groups = true;
    for g in groups {
        if !product_table(g, system)?.is_group() {
            preserves_groups = false;
            break;
        }
    }
    let wreathizes = match wreathize(system) {
        Ok(w) => w.transformation.is_system_isomorphism(),
        Err(GroupWreathError::NotGroupPreserving(_) | GroupWreathError::NotBijective { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(GroupConditions {
        preserves_groups,
        group_preserving: system.is_group_preserving(),
        wreathizes,
    })
}

/// `{trivial, Z2, Z3, Z2×Z2}`.
pub fn group_catalog() -> Vec<FiniteSemigroup> {
    vec![catalog::trivial(), catalog::z2(), catalog::z3(), catalog::klein_four()]
}

/// One division `target ≼ Z2^[system]` exhibited as a quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryBranch {
    pub system: &'static str,
    pub factor: &'static str,
    pub target: &'static str,
    pub product_size: usize,
    /// Classes of the congruence, as product indices.
    pub partition: Vec<Vec<usize>>,
    /// The same classes by element name.
    pub partition_names: Vec<Vec<String>>,
    /// Quotient class index for each target element.
    pub isomorphism: Vec<usize>,
    pub congruence: bool,
    pub quotient_associative: bool,
}

impl CorollaryBranch {
    pub fn holds(&self) -> bool {
        self.congruence && self.quotient_associative && !self.isomorphism.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub branches: Vec<CorollaryBranch>,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.branches.iter().all(CorollaryBranch::holds)
    }
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.branches {
            let classes: Vec<String> = b.partition_names.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
            writeln!(
                f,
                "{} divides {}^[{}] ({} elements): congruence {}: {}",
                b.target,
                b.factor,
                b.system,
                b.product_size,
                classes.join(" "),
                if b.holds() { "verified" } else { "FAILED" }
            )?;
        }
        Ok(())
    }
}

fn corollary_branch(
    which: WorkedExample,
    system_name: &'static str,
    classes: Vec<Vec<usize>>,
    target: FiniteSemigroup,
    target_name: &'static str,
) -> Result<CorollaryBranch> {
    let product = product_table_with_cap(&catalog::z2(), &paper_example(which), DEFAULT_TABLE_CAP)?;
    let partition = Partition::new(classes, product.size())?;
    let congruence = product.is_congruence(&partition);
    let (quotient_associative, isomorphism) = if congruence {
        let q = product.quotient(&partition)?;
        let assoc = q.associativity_failure().is_none();
        let iso = find_isomorphism_with_cap(&target, &q, WREATH_ISO_CAP)?;
        (assoc, iso.map(|m| m.map().to_vec()).unwrap_or_default())
    } else {
        (false, Vec::new())
    };
    Ok(CorollaryBranch {
        system: system_name,
        factor: "z2",
        target: target_name,
        product_size: product.size(),
        partition_names: partition.classes().iter().map(|c| c.iter().map(|&i| product.name(i)).collect()).collect(),
        partition: partition.classes().to_vec(),
        isomorphism,
        congruence,
        quotient_associative,
    })
}

/// Checks the two divisions behind the decomposition result: `L2¹` as a
/// quotient of `Z2^[flip-flop system]` and `L2` as a quotient of
/// `Z2^[left-zero system]`.
pub fn corollary_demo() -> Result<CorollaryReport> {
    Ok(CorollaryReport {
        branches: vec![
            corollary_branch(
                WorkedExample::FlipFlop,
                "flipflop_system",
                vec![vec![0, 1], vec![2, 5], vec![3, 4]],
                catalog::l2_1(),
                "l2_1",
            )?,
            corollary_branch(
                WorkedExample::LeftZero,
                "lzero_system",
                vec![vec![0, 3], vec![1, 2]],
                catalog::l2(),
                "l2",
            )?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::RightAction;
    use crate::semigroup::catalog::*;
    use crate::system::{enumerate_systems, EnumerationOptions};

    #[test]
    fn regular_action_roundtrip() {
        let act = RightAction::regular(z2()).unwrap();
        let sys = from_right_action(&act).unwrap();
        check_bijectivity(&sys).unwrap();
        let w = wreathize(&sys).unwrap();
        assert_eq!(w.derived.action(), &act);
        assert_eq!(w.system, sys);
        assert_eq!(w.transformation, Transformation::identity(&sys));
        let r = verify_wreath_iso(&z2(), &sys).unwrap();
        assert_eq!(r.size, 8);
        assert!(r.holds());
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            check_bijectivity(&paper_example(WorkedExample::FlipFlop)),
            Err(GroupWreathError::NotGroupPreserving("base is not a group"))
        );
        assert_eq!(
            check_bijectivity(&paper_example(WorkedExample::LeftZero)),
            Err(GroupWreathError::NotGroupPreserving("system is not unital"))
        );
        let act = RightAction::regular(z2()).unwrap();
        let sys = from_right_action(&act).unwrap();
        assert_eq!(verify_wreath_iso(&l2(), &sys).unwrap_err(), GroupWreathError::NotAGroup);
    }

    #[test]
    fn enumerated_z3_singletons_give_direct_product() {
        let opts = EnumerationOptions {
            unital_only: true,
            ..Default::default()
        };
        let systems: Vec<_> = enumerate_systems(&z3(), &[1, 1, 1], opts).collect();
        assert_eq!(systems.len(), 1);
        let r = verify_wreath_iso(&z2(), &systems[0]).unwrap();
        assert_eq!(r.size, 6);
        assert!(r.holds());
        let r = verify_wreath_iso(&trivial(), &systems[0]).unwrap();
        assert_eq!(r.size, 3);
        assert!(r.holds());
    }

    #[test]
    fn derived_actions_over_z2() {
        let opts = EnumerationOptions {
            unital_only: true,
            ..Default::default()
        };
        let mut seen = 0;
        for sys in enumerate_systems(&z2(), &[2, 2], opts) {
            let d = derive_action(&sys).unwrap();
            assert_eq!(d.action().carrier(), 2);
            assert!(group_conditions(&sys, &group_catalog()).unwrap().agree());
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn corollary_witnesses() {
        let r = corollary_demo().unwrap();
        assert!(r.holds(), "{r}");
        assert_eq!(
            r.branches[0].partition_names,
            vec![vec!["0:0", "0:1"], vec!["1:00", "1:11"], vec!["1:01", "1:10"]]
        );
        assert_eq!(r.branches[1].partition_names, vec![vec!["0:00", "0:11"], vec!["0:01", "0:10"]]);
    }
}
