//! Isomorphism search between multiplication tables, congruence lattice
//! enumeration, and division witnesses.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::semigroup::{FiniteSemigroup, Homomorphism, Partition, Result, SemigroupError};

pub const DEFAULT_ISO_CAP: usize = 32;
pub const DEFAULT_CONGRUENCE_CAP: usize = 100_000;

/// Isomorphism-invariant profile of a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Fingerprint {
    idempotent: bool,
    index: usize,
    period: usize,
    right_ideal: usize,
    left_ideal: usize,
    right_stabilizer: usize,
    left_stabilizer: usize,
    left_unit_for: usize,
    right_unit_for: usize,
}

fn fingerprints(s: &FiniteSemigroup) -> Vec<Fingerprint> {
    let n = s.size();
    (0..n)
        .map(|a| {
            let (index, period) = s.index_period(a);
            let row: BTreeSet<usize> = (0..n).map(|y| s.mul(a, y)).collect();
            let col: BTreeSet<usize> = (0..n).map(|y| s.mul(y, a)).collect();
            Fingerprint {
                idempotent: s.is_idempotent(a),
                index,
                period,
                right_ideal: row.len(),
                left_ideal: col.len(),
                right_stabilizer: (0..n).filter(|&y| s.mul(a, y) == a).count(),
                left_stabilizer: (0..n).filter(|&y| s.mul(y, a) == a).count(),
                left_unit_for: (0..n).filter(|&y| s.mul(a, y) == y).count(),
                right_unit_for: (0..n).filter(|&y| s.mul(y, a) == y).count(),
            }
        })
        .collect()
}

/// Greedy generating set: scan elements in order, keep those not yet
/// generated by the earlier picks.
pub fn greedy_generators(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = vec![false; s.size()];
    for x in 0..s.size() {
        if !covered[x] {
            gens.push(x);
            for y in s.subsemigroup_closure(&gens).expect("nonempty generators") {
                covered[y] = true;
            }
        }
    }
    gens
}

pub fn find_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Result<Option<Homomorphism>> {
    find_isomorphism_with_cap(a, b, DEFAULT_ISO_CAP)
}

/// Backtracking over images of a generating set of `a`, pruned by element
/// fingerprints. Candidates are tried in ascending order, so the result is
/// the first isomorphism in that order.
pub fn find_isomorphism_with_cap(a: &FiniteSemigroup, b: &FiniteSemigroup, cap: usize) -> Result<Option<Homomorphism>> {
    let n = a.size();
    if n != b.size() {
        return Ok(None);
    }
    if n > cap {
        return Err(SemigroupError::SizeCapExceeded { size: n, cap });
    }
    let fa = fingerprints(a);
    let fb = fingerprints(b);
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let gens = greedy_generators(a);
    let mut search = IsoSearch {
        a,
        b,
        fa: &fa,
        fb: &fb,
        gens: &gens,
    };
    let mut phi = vec![None; n];
    let mut used = vec![false; n];
    Ok(search.assign(0, &mut phi, &mut used).map(|map| {
        Homomorphism::new(a.clone(), b.clone(), map).expect("search only returns homomorphisms")
    }))
}

struct IsoSearch<'a> {
    a: &'a FiniteSemigroup,
    b: &'a FiniteSemigroup,
    fa: &'a [Fingerprint],
    fb: &'a [Fingerprint],
    gens: &'a [usize],
}

impl IsoSearch<'_> {
    fn assign(&mut self, k: usize, phi: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> Option<Vec<usize>> {
        if k == self.gens.len() {
            return phi.iter().copied().collect();
        }
        let g = self.gens[k];
        if phi[g].is_some() {
            // Already forced by earlier generators.
            return self.assign(k + 1, phi, used);
        }
        for y in 0..self.b.size() {
            if used[y] || self.fa[g] != self.fb[y] {
                continue;
            }
            let (saved_phi, saved_used) = (phi.clone(), used.clone());
            phi[g] = Some(y);
            used[y] = true;
            if self.propagate(phi, used) {
                if let Some(found) = self.assign(k + 1, phi, used) {
                    return Some(found);
                }
            }
            *phi = saved_phi;
            *used = saved_used;
        }
        None
    }

    /// Closes the partial map under products; false on any conflict.
    fn propagate(&self, phi: &mut [Option<usize>], used: &mut [bool]) -> bool {
        loop {
            let mut changed = false;
            let known: Vec<usize> = (0..phi.len()).filter(|&x| phi[x].is_some()).collect();
            for &x in &known {
                for &y in &known {
                    let image = self.b.mul(phi[x].unwrap(), phi[y].unwrap());
                    let xy = self.a.mul(x, y);
                    match phi[xy] {
                        Some(existing) if existing != image => return false,
                        Some(_) => {}
                        None => {
                            if used[image] || self.fa[xy] != self.fb[image] {
                                return false;
                            }
                            phi[xy] = Some(image);
                            used[image] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// Every congruence of `s`, as joins of principal congruences. Sorted in
/// partition order (lexicographic over canonical classes).
pub fn congruences(s: &FiniteSemigroup, cap: usize) -> Result<Vec<Partition>> {
    let n = s.size();
    let mut principal: Vec<Partition> = Vec::new();
    let mut seen_principal = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = s.congruence_generated_by(&[(a, b)])?;
            if seen_principal.insert(p.clone()) {
                principal.push(p);
            }
        }
    }
    let mut all: HashSet<Partition> = HashSet::new();
    let discrete = Partition::discrete(n);
    all.insert(discrete.clone());
    let mut frontier = vec![discrete];
    while let Some(theta) = frontier.pop() {
        for p in &principal {
            let joined = theta.join(p);
            if !all.contains(&joined) {
                if all.len() >= cap {
                    return Err(SemigroupError::SearchCapExceeded { cap });
                }
                all.insert(joined.clone());
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Partition> = all.into_iter().collect();
    out.sort();
    Ok(out)
}

/// How `T` was exhibited as a quotient of a subsemigroup of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionWitness {
    /// Generators of the subsemigroup (all of `S` in quotient-only mode).
    pub generators: Vec<usize>,
    /// Elements of the subsemigroup, ascending, in `S` labels.
    pub subsemigroup: Vec<usize>,
    /// Congruence classes in `S` labels.
    pub classes: Vec<Vec<usize>>,
    /// `isomorphism[t]` is the index of the class matched with `t ∈ T`.
    pub isomorphism: Vec<usize>,
}

impl DivisionWitness {
    pub fn partition_of(&self, size: usize) -> Option<Partition> {
        Partition::new(self.classes.clone(), size).ok()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DivisionOptions {
    pub quotient_only: bool,
    pub congruence_cap: usize,
    pub iso_cap: usize,
}

impl Default for DivisionOptions {
    fn default() -> Self {
        Self {
            quotient_only: true,
            congruence_cap: DEFAULT_CONGRUENCE_CAP,
            iso_cap: DEFAULT_ISO_CAP,
        }
    }
}

/// Searches for `T` as a quotient of `S` (or, unless `quotient_only`, of a
/// subsemigroup of `S` generated by at most three elements).
///
/// `Ok(None)` is conclusive. A subsemigroup search that finds nothing is
/// only conclusive when `T` itself has a generating set of size ≤ 3, since
/// a division through `U` restricts to one through the subsemigroup
/// generated by lifts of `T`'s generators.
pub fn divides(t: &FiniteSemigroup, s: &FiniteSemigroup, options: DivisionOptions) -> Result<Option<DivisionWitness>> {
    if t.size() > s.size() {
        return Ok(None);
    }
    let all: Vec<usize> = (0..s.size()).collect();
    if let Some(w) = quotient_witness(t, s, &all, &all, &options)? {
        return Ok(Some(w));
    }
    if options.quotient_only {
        return Ok(None);
    }
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    tried.insert(all);
    for gens in generator_subsets(s.size(), 3) {
        let sub = s.subsemigroup_closure(&gens)?;
        if sub.len() < t.size() || !tried.insert(sub.clone()) {
            continue;
        }
        if let Some(w) = quotient_witness(t, s, &sub, &gens, &options)? {
            return Ok(Some(w));
        }
    }
    if greedy_generators(t).len() > 3 {
        return Err(SemigroupError::SearchCapExceeded { cap: 3 });
    }
    Ok(None)
}

fn generator_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    for k in 1..=max.min(n) {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn quotient_witness(
    t: &FiniteSemigroup,
    s: &FiniteSemigroup,
    sub: &[usize],
    gens: &[usize],
    options: &DivisionOptions,
) -> Result<Option<DivisionWitness>> {
    let (u, inclusion) = s.subsemigroup(sub)?;
    for theta in congruences(&u, options.congruence_cap)? {
        if theta.len() != t.size() {
            continue;
        }
        let q = u.quotient(&theta)?;
        if let Some(iso) = find_isomorphism_with_cap(t, &q, options.iso_cap)? {
            let classes = theta
                .classes()
                .iter()
                .map(|c| c.iter().map(|&x| inclusion[x]).collect())
                .collect();
            return Ok(Some(DivisionWitness {
                generators: gens.to_vec(),
                subsemigroup: inclusion,
                classes,
                isomorphism: iso.map().to_vec(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::catalog::*;

    fn swapped_z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn relabelled_z2() {
        let iso = find_isomorphism(&z2(), &swapped_z2()).unwrap().unwrap();
        assert_eq!(iso.map(), &[1, 0]);
    }

    #[test]
    fn left_and_right_zero_differ() {
        // Only two bijections exist; neither works.
        let (l, r) = (l2(), r2());
        for map in [vec![0, 1], vec![1, 0]] {
            assert!(Homomorphism::new(l.clone(), r.clone(), map).is_err());
        }
        assert!(find_isomorphism(&l, &r).unwrap().is_none());
    }

    #[test]
    fn klein_is_not_cyclic() {
        assert!(find_isomorphism(&klein_four(), &z4()).unwrap().is_none());
        assert!(find_isomorphism(&z2().direct_product(&z2()), &klein_four()).unwrap().is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let big = cyclic(33);
        assert!(matches!(
            find_isomorphism(&big, &big),
            Err(SemigroupError::SizeCapExceeded { size: 33, cap: 32 })
        ));
        assert!(find_isomorphism_with_cap(&big, &big, 40).unwrap().is_some());
    }

    #[test]
    fn congruences_of_small_groups() {
        // Congruences of a group are its normal subgroups.
        assert_eq!(congruences(&z2(), 100).unwrap().len(), 2);
        assert_eq!(congruences(&z3(), 100).unwrap().len(), 2);
        assert_eq!(congruences(&z4(), 100).unwrap().len(), 3);
        assert_eq!(congruences(&klein_four(), 100).unwrap().len(), 5);
        for p in congruences(&l2_1(), 100).unwrap() {
            assert!(l2_1().is_congruence(&p));
        }
    }

    #[test]
    fn cardinality_rules_out_division() {
        assert_eq!(divides(&z3(), &z2(), DivisionOptions::default()).unwrap(), None);
    }

    #[test]
    fn subsemigroup_division() {
        // L2 sits inside L2¹ but is not a quotient of it.
        let quotient_only = divides(&l2(), &l2_1(), DivisionOptions::default()).unwrap();
        assert!(quotient_only.is_none());
        let opts = DivisionOptions {
            quotient_only: false,
            ..Default::default()
        };
        let w = divides(&l2(), &l2_1(), opts).unwrap().unwrap();
        assert_eq!(w.subsemigroup, vec![0, 1]);
    }

    #[test]
    fn generator_subsets_are_ordered() {
        let subs = generator_subsets(3, 2);
        assert_eq!(subs, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
