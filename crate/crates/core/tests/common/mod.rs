#![allow(dead_code)]

use lrsys::iso::find_isomorphism;
use lrsys::FiniteSemigroup;

/// Every function `0..domain → 0..codomain`, as lookup tables.
pub fn all_maps(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..domain {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (0..codomain).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Every vector of length `n` with entries in `0..=max`.
pub fn size_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    all_maps(n, max + 1)
}

fn associative(n: usize, cells: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| cells[cells[a * n + b] * n + c] == cells[a * n + cells[b * n + c]])
        })
    })
}

/// One representative of each isomorphism class of semigroups of order
/// `n`, by brute force over all tables.
pub fn semigroups_of_order(n: usize) -> Vec<FiniteSemigroup> {
    let mut reps: Vec<FiniteSemigroup> = Vec::new();
    for cells in all_maps(n * n, n) {
        if !associative(n, &cells) {
            continue;
        }
        let s = FiniteSemigroup::from_cells(n, cells).unwrap();
        if !reps
            .iter()
            .any(|r| find_isomorphism(r, &s).unwrap().is_some())
        {
            reps.push(s);
        }
    }
    reps
}

pub fn semigroups_up_to(n: usize) -> Vec<FiniteSemigroup> {
    (1..=n).flat_map(semigroups_of_order).collect()
}

/// Tables `t[a * m + x] = a \ x` with `a\(b\x) = (ab)\x`.
pub fn left_actions(s: &FiniteSemigroup, m: usize) -> Vec<Vec<usize>> {
    let n = s.size();
    all_maps(n * m, m)
        .into_iter()
        .filter(|t| {
            (0..n).all(|a| {
                (0..n).all(|b| (0..m).all(|x| t[a * m + t[b * m + x]] == t[s.mul(a, b) * m + x]))
            })
        })
        .collect()
}

/// Tables `t[x * n + a] = x / a` with `(x/a)/b = x/(ab)`.
pub fn right_actions(s: &FiniteSemigroup, m: usize) -> Vec<Vec<usize>> {
    let n = s.size();
    all_maps(m * n, m)
        .into_iter()
        .filter(|t| {
            (0..m).all(|x| {
                (0..n).all(|a| (0..n).all(|b| t[t[x * n + a] * n + b] == t[x * n + s.mul(a, b)]))
            })
        })
        .collect()
}

/// `(a\x)/b = a\(x/b)`.
pub fn commute(n: usize, m: usize, left: &[usize], right: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..m).all(|x| right[left[a * m + x] * n + b] == left[a * m + right[x * n + b]])
        })
    })
}
