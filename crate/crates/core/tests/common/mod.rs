//! Independent oracles shared by the test targets. Deliberately naive.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hypertree_core::Hypertree;

pub type Edges = Vec<Vec<u32>>;

/// Convexity with strictness on proper sub-collections, plus double cover.
pub fn naive_irreducible(n: usize, edges: &Edges) -> bool {
    let d = edges.len();
    if (1..=n as u32).any(|i| edges.iter().filter(|e| e.contains(&i)).count() < 2) {
        return false;
    }
    if edges.iter().map(|e| e.len() - 2).sum::<usize>() != n - 2 {
        return false;
    }
    for s in 1u32..(1 << d) - 1 {
        let chosen: Vec<&Vec<u32>> = (0..d)
            .filter(|j| s >> j & 1 == 1)
            .map(|j| &edges[j])
            .collect();
        if chosen.len() < 2 {
            continue;
        }
        let union: BTreeSet<u32> = chosen.iter().flat_map(|e| e.iter().copied()).collect();
        let rhs: usize = chosen.iter().map(|e| e.len() - 2).sum();
        if union.len() - 2 <= rhs {
            return false;
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (1..=n as u32).collect();
    fn rec(k: usize, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn apply(perm: &[u32], edges: &Edges) -> Edges {
    let mut out: Edges = edges
        .iter()
        .map(|e| {
            let mut f: Vec<u32> = e.iter().map(|&l| perm[l as usize - 1]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    out.sort();
    out
}

/// Least relabeled edge list over all `n!` permutations, and the number of
/// permutations fixing the edge set.
pub fn brute_canonical(n: usize, edges: &Edges) -> (Edges, u64) {
    let own = apply(&(1..=n as u32).collect::<Vec<_>>(), edges);
    let mut best: Option<Edges> = None;
    let mut fixed = 0;
    for p in permutations(n) {
        let e = apply(&p, edges);
        if e == own {
            fixed += 1;
        }
        if best.as_ref().map_or(true, |b| e < *b) {
            best = Some(e);
        }
    }
    (best.unwrap(), fixed)
}

/// Every irreducible hypertree on `{1..n}` as labeled edge lists, by
/// choosing edges in lexicographic order until the weights sum to `n − 2`.
pub fn brute_enumerate(n: usize) -> BTreeSet<Edges> {
    let mut subsets: Vec<Vec<u32>> = (1u32..(1 << n))
        .map(|m| {
            (0..n as u32)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| b + 1)
                .collect::<Vec<u32>>()
        })
        .filter(|s| s.len() >= 3)
        .collect();
    subsets.sort();
    let mut classes = BTreeSet::new();
    let mut chosen: Edges = Vec::new();
    fn rec(
        n: usize,
        from: usize,
        left: usize,
        subsets: &[Vec<u32>],
        chosen: &mut Edges,
        classes: &mut BTreeSet<Edges>,
    ) {
        if left == 0 {
            if naive_irreducible(n, chosen) {
                classes.insert(brute_canonical(n, chosen).0);
            }
            return;
        }
        for i in from..subsets.len() {
            let w = subsets[i].len() - 2;
            if w > left {
                continue;
            }
            chosen.push(subsets[i].clone());
            rec(n, i + 1, left - w, subsets, chosen, classes);
            chosen.pop();
        }
    }
    rec(n, 0, n - 2, &subsets, &mut chosen, &mut classes);
    classes
}

pub fn h7() -> Hypertree {
    Hypertree::new(
        7,
        vec![
            vec![1, 2, 7],
            vec![3, 4, 7],
            vec![5, 6, 7],
            vec![1, 3, 5],
            vec![2, 4, 6],
        ],
    )
    .unwrap()
}
