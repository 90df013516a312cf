//! Brute-force oracles written against the definitions, independent of the
//! library's enumerators and product code.

mod common;

use common::{all_maps, semigroups_of_order, size_vectors};
use lrsys::constructions::{paper_example, WorkedExample};
use lrsys::product::product_table;
use lrsys::system::{enumerate_systems, EnumerationOptions};
use lrsys::{catalog, FiniteSemigroup, LrSystem};

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    // f after g
    g.iter().map(|&x| f[x]).collect()
}

/// Every well-shaped (λ, ρ) over `base` satisfying the three composite
/// identities, counted by trying all map tuples.
fn brute_force_count(base: &FiniteSemigroup, sizes: &[usize]) -> usize {
    let n = base.size();
    let slots: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .flat_map(|(a, b)| [(a, b, sizes[a]), (a, b, sizes[b])])
        .collect();
    let choices: Vec<Vec<Vec<usize>>> = slots
        .iter()
        .map(|&(a, b, bound)| all_maps(sizes[base.mul(a, b)], bound))
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return 0;
    }
    let mut count = 0;
    let mut pick = vec![0usize; slots.len()];
    'outer: loop {
        let lam = |a: usize, b: usize| &choices[2 * (a * n + b)][pick[2 * (a * n + b)]];
        let rho = |a: usize, b: usize| &choices[2 * (a * n + b) + 1][pick[2 * (a * n + b) + 1]];
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let (ab, bc) = (base.mul(a, b), base.mul(b, c));
                    compose(lam(a, b), lam(ab, c)) == *lam(a, bc)
                        && compose(rho(b, c), rho(a, bc)) == *rho(ab, c)
                        && compose(rho(a, b), lam(ab, c)) == compose(lam(b, c), rho(a, bc))
                })
            })
        });
        count += usize::from(ok);
        for i in 0..pick.len() {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        return count;
    }
}

/// The product table straight from the definition, in anchor-then-tuple
/// order with the leftmost coordinate most significant.
fn naive_product(h: &FiniteSemigroup, sys: &LrSystem) -> Vec<Vec<usize>> {
    let n = sys.base().size();
    let elements: Vec<(usize, Vec<usize>)> = (0..n)
        .flat_map(|a| {
            all_maps(sys.index_size(a), h.size())
                .into_iter()
                .map(move |x| (a, x))
        })
        .collect();
    let index = |e: &(usize, Vec<usize>)| elements.iter().position(|f| f == e).unwrap();
    elements
        .iter()
        .map(|(a, x)| {
            elements
                .iter()
                .map(|(b, y)| {
                    let tuple = (0..sys.index_size(sys.base().mul(*a, *b)))
                        .map(|i| h.mul(x[sys.lambda(*a, *b)[i]], y[sys.rho(*a, *b)[i]]))
                        .collect();
                    index(&(sys.base().mul(*a, *b), tuple))
                })
                .collect()
        })
        .collect()
}

#[test]
fn small_semigroup_counts() {
    let counts: Vec<usize> = (1..=3).map(|n| semigroups_of_order(n).len()).collect();
    assert_eq!(counts, [1, 5, 24]);
}

#[test]
fn trivial_base_counts_commuting_retractions() {
    let t = catalog::trivial();
    assert_eq!(brute_force_count(&t, &[1]), 1);
    assert_eq!(brute_force_count(&t, &[2]), 7);
    for k in 0..=3 {
        let listed = enumerate_systems(&t, &[k], EnumerationOptions::default()).count();
        assert_eq!(listed, brute_force_count(&t, &[k]), "fiber {k}");
    }
}

#[test]
fn enumerator_matches_brute_force() {
    let mut bases = semigroups_of_order(2);
    bases.push(catalog::z3());
    for base in &bases {
        let max = if base.size() == 2 { 2 } else { 1 };
        for sizes in size_vectors(base.size(), max) {
            let listed = enumerate_systems(base, &sizes, EnumerationOptions::default()).count();
            assert_eq!(
                listed,
                brute_force_count(base, &sizes),
                "{base:?} {sizes:?}"
            );
        }
    }
}

#[test]
fn product_table_matches_definition() {
    let mut systems: Vec<LrSystem> = [
        WorkedExample::FlipFlop,
        WorkedExample::LeftZero,
        WorkedExample::NonSemidirect,
    ]
    .into_iter()
    .map(paper_example)
    .collect();
    for base in [catalog::z2(), catalog::l2(), catalog::null2()] {
        systems.extend(enumerate_systems(&base, &[2, 1], EnumerationOptions::default()).take(20));
    }
    for sys in &systems {
        for h in [catalog::z2(), catalog::l2(), catalog::z3()] {
            let table = product_table(&h, sys).unwrap();
            assert_eq!(table.rows(), naive_product(&h, sys), "{sys:?} over {h:?}");
        }
    }
}

#[test]
fn flip_flop_element_names() {
    let t = product_table(&catalog::z2(), &paper_example(WorkedExample::FlipFlop)).unwrap();
    let names: Vec<String> = (0..t.size()).map(|i| t.name(i)).collect();
    assert_eq!(names, ["0:0", "0:1", "1:00", "1:01", "1:10", "1:11"]);
}

#[test]
fn wide_values_use_separators() {
    let h = catalog::cyclic(11);
    let t = product_table(&h, &paper_example(WorkedExample::FlipFlop)).unwrap();
    assert_eq!(t.size(), 11 + 121);
    assert_eq!(t.name(11 + 10), "1:0.10");
}
