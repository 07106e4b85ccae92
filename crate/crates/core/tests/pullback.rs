mod common;

use std::collections::BTreeMap;

use hypertree_core::divisor::{class_coefficients, hypertree_equation, Coefficient, KapranovClass};
use hypertree_core::enumerate::enumerate_irreducible;
use hypertree_core::pullback::{
    bitangent_polynomial, chord_pairing, fm_to_kapranov, multiplicity_table,
    multiplicity_table_general, transversal_polynomial, weierstrass_polynomial, with_extra_marking,
};
use hypertree_core::IntPoly;
use hypertree_poly::VarContext;

fn values(k: &KapranovClass) -> BTreeMap<Vec<u32>, i64> {
    k.m.iter().map(|(j, c)| (j.clone(), c.value())).collect()
}

/// Number of `{2i−1, 2i}` pairs inside `j`.
fn pairs_in(j: &[u32]) -> usize {
    j.iter()
        .filter(|&&l| l % 2 == 1 && j.contains(&(l + 1)))
        .count()
}

#[test]
fn weierstrass_class() {
    let f = weierstrass_polynomial().unwrap();
    assert_eq!(f.total_degree(), Some(9));
    assert!(f.is_translation_invariant());
    let table = multiplicity_table(&f).unwrap();
    assert_eq!(table, multiplicity_table_general(&f).unwrap());
    assert_eq!(table.get(&[1, 2, 3, 4, 5, 6]), Some(3));
    let k = fm_to_kapranov(&table, 7).unwrap();
    assert_eq!(k.d, 3);
    for (j, c) in &k.m {
        let expected = match (j.len(), pairs_in(j)) {
            (1, _) | (2, 1) => 1,
            _ => 0,
        };
        assert_eq!(*c, Coefficient::Exact(expected), "J={j:?}");
    }
}

#[test]
fn weierstrass_table_symmetries() {
    let table = multiplicity_table(&weierstrass_polynomial().unwrap()).unwrap();
    let swap_xy = [2, 1, 3, 4, 5, 6, 7];
    let swap_pairs = [3, 4, 1, 2, 5, 6, 7];
    for (i, &v) in &table.entries {
        for perm in [swap_xy, swap_pairs] {
            let image: Vec<u32> = i.iter().map(|&l| perm[l as usize - 1]).collect();
            assert_eq!(table.get(&image), Some(v));
        }
    }
}

/// Frozen from this implementation. Symmetric under the pair swaps and
/// permutations of the three pairs, as the polynomial is.
#[test]
fn bitangent_class() {
    let f = bitangent_polynomial().unwrap();
    assert_eq!(f.total_degree(), Some(16));
    let k = fm_to_kapranov(&multiplicity_table(&f).unwrap(), 7).unwrap();
    assert_eq!(k.d, 8);
    for (j, c) in values(&k) {
        let expected = match j.len() {
            1 => 4,
            2 => 2,
            3 if pairs_in(&j) == 0 => 2,
            _ => 0,
        };
        assert_eq!(c, expected, "J={j:?}");
    }
}

#[test]
fn chord_pairing_is_a_reduced_vandermonde() {
    let ctx = VarContext::new(["x1", "y1", "x2", "y2"]);
    let p = chord_pairing(&ctx, 0, 1).unwrap();
    assert_eq!(p.total_degree(), Some(4));
    let v = |i| IntPoly::var(&ctx, i);
    let d = |a, b| &v(a) - &v(b);
    let expected = &(&(&d(2, 0) * &d(3, 0)) * &d(2, 1)) * &d(3, 1);
    assert!(p == expected || p == expected.neg());
}

/// `m_J` of the sum of the 20 hyperplanes `x_i = x_j`, `y_i = y_j`: each
/// one meets every `E_J` with `J` disjoint from its pair.
fn hyperplane_sum(j: &[u32]) -> i64 {
    let mut count = 0;
    for a in 1..=10u32 {
        for b in (a + 1..=10).filter(|b| (b - a) % 2 == 0) {
            if !j.contains(&a) && !j.contains(&b) {
                count += 1;
            }
        }
    }
    count
}

/// One index per orbit, as usually displayed: `i` is `x_i`, `i'` is `y_i`.
const REPRESENTATIVES: [&str; 15] = [
    "1",
    "12",
    "11'",
    "123",
    "121'",
    "1234",
    "1231'",
    "121'2'",
    "12345",
    "12341'",
    "1231'2'",
    "123451'",
    "12341'2'",
    "1231'2'3'",
    "123451'2'",
];

fn representative(s: &str) -> Vec<u32> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    for (k, c) in chars.iter().enumerate() {
        if let Some(d) = c.to_digit(10) {
            let y = chars.get(k + 1) == Some(&'\'');
            out.push(2 * d - 1 + y as u32);
        }
    }
    out.sort();
    out
}

#[test]
fn trigonal_class() {
    let f = transversal_polynomial(None).unwrap();
    assert_eq!(f.total_degree(), Some(20));
    assert!(f.is_homogeneous());
    let k = fm_to_kapranov(
        &multiplicity_table(&with_extra_marking(&f, "z").unwrap()).unwrap(),
        11,
    )
    .unwrap();
    assert_eq!(k.d, 20);
    for (j, c) in values(&k) {
        let singles = j.len() - 2 * pairs_in(&j);
        let expected = match (pairs_in(&j), singles) {
            (0, 1) => 16,
            (0, 2) | (1, 0) => 12,
            (0, 3) => 9,
            (0, 4) => 7,
            (0, 5) | (2, 0) => 6,
            (1, 1) => 8,
            (1, 2) => 5,
            (1, 3) | (1, 4) | (2, 1) => 3,
            (2, 2) | (2, 3) => 1,
            (3, 0) => 2,
            _ => 0,
        };
        assert_eq!(c, expected, "J={j:?}");
    }
    for r in REPRESENTATIVES {
        let j = representative(r);
        assert!(k.get(&j).unwrap().value() <= hyperplane_sum(&j), "{r}");
    }
    // The hyperplane sum is not symmetric under x_i <-> y_i, so the
    // comparison fails elsewhere in the orbit of 123451'.
    let swapped = [1, 2, 3, 5, 8, 10];
    assert!(k.get(&swapped).unwrap().value() > hyperplane_sum(&swapped));
}

#[test]
fn transversal_respects_budget() {
    assert_eq!(transversal_polynomial(Some(50)).unwrap_err().exit_code(), 4);
}

#[test]
fn boundary_only_polynomial_has_zero_class() {
    let ctx = VarContext::indexed("x", 5);
    let mut f = IntPoly::one(&ctx);
    for i in 0..4 {
        for j in i + 1..4 {
            f = &f * &(&IntPoly::var(&ctx, i) - &IntPoly::var(&ctx, j));
        }
    }
    let k = fm_to_kapranov(&multiplicity_table(&f).unwrap(), 5).unwrap();
    assert_eq!(k.d, 0);
    assert!(k.m.values().all(|c| c.value() == 0));
}

#[test]
fn small_tables() {
    let ctx = VarContext::indexed("x", 2);
    let f = &IntPoly::var(&ctx, 0) - &IntPoly::var(&ctx, 1);
    let t = multiplicity_table(&f).unwrap();
    assert_eq!(t.entries.len(), 1);
    assert_eq!(t.get(&[1, 2]), Some(1));
    assert!(fm_to_kapranov(&t, 1).is_err());
}

/// The equation route and the combinatorial route must agree on every
/// coefficient the combinatorics pins down, and respect every bound.
#[test]
fn equation_class_matches_combinatorial_class() {
    for c in (6..=8)
        .flat_map(|n| enumerate_irreducible(n).unwrap())
        .filter(|c| c.hypertree.is_triples())
    {
        let h = c.hypertree;
        let eq = with_extra_marking(&hypertree_equation(&h).unwrap(), "z").unwrap();
        let from_eq = fm_to_kapranov(&multiplicity_table(&eq).unwrap(), h.n() as u32 + 1).unwrap();
        let comb = class_coefficients(&h).unwrap();
        assert_eq!(from_eq.d, comb.d, "{h:?}");
        for (j, c) in &comb.m {
            let v = from_eq.get(j).unwrap().value();
            match c {
                Coefficient::Exact(e) => assert_eq!(v, *e, "{h:?} J={j:?}"),
                Coefficient::LowerBound(b) => assert!(v >= *b, "{h:?} J={j:?}"),
            }
        }
    }
}
