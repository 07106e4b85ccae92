mod common;

use common::h7;
use hypertree_core::constructions::{black_white_hypertrees, octahedron};
use hypertree_core::divisor::hypertree_equation;
use hypertree_core::enumerate::enumerate_irreducible;
use hypertree_core::realize::{
    collinearity_rows, decimal, equation_residual, realize, verify_realization, PlanarRealization,
    DEFAULT_TOL_COL, DEFAULT_TOL_GEN,
};
use hypertree_core::{Error, Hypertree};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn check(h: &Hypertree, r: &PlanarRealization) {
    let v = verify_realization(h, r, DEFAULT_TOL_COL, DEFAULT_TOL_GEN);
    assert!(v.passed, "{h:?}: {v:?}");
    if h.is_triples() {
        let eq = hypertree_equation(h).unwrap();
        assert!(equation_residual(&eq, &r.projected) < 1e-8);
    }
}

#[test]
fn n7_seed_1() {
    let h = h7();
    let r = realize(&h, 1, 256).unwrap();
    let v = verify_realization(&h, &r, DEFAULT_TOL_COL, DEFAULT_TOL_GEN);
    assert!(v.passed && v.failures.is_empty());
    assert!(v.worst_collinear < 1e-60, "{}", v.worst_collinear);
    assert!(v.worst_general > DEFAULT_TOL_GEN);
    assert_eq!(r.points.len(), 7);
    assert_eq!((r.seed, r.precision_bits), (1, 256));
    check(&h, &r);
}

#[test]
fn octahedron_is_a_complete_quadrilateral() {
    let (b, _) = black_white_hypertrees(&octahedron()).unwrap();
    let r = realize(&b, 3, 256).unwrap();
    check(&b, &r);
    // Each point lies on exactly two of the four lines.
    assert_eq!(collinearity_rows(&b).len(), 4);
    assert!(b.valences().iter().all(|&v| v == 2));
}

#[test]
fn deterministic_per_seed() {
    let h = h7();
    assert_eq!(realize(&h, 5, 128).unwrap(), realize(&h, 5, 128).unwrap());
    assert_ne!(
        realize(&h, 5, 128).unwrap().points,
        realize(&h, 6, 128).unwrap().points
    );
}

#[test]
fn preconditions() {
    let reducible = Hypertree::new(4, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
    assert!(matches!(
        realize(&reducible, 1, 256),
        Err(Error::Precondition(_))
    ));
    assert!(realize(&h7(), 1, 8).is_err());
}

#[test]
fn random_points_fail() {
    let h = h7();
    let mut r = realize(&h, 1, 128).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for p in &mut r.points {
        *p = [
            q(rng.gen_range(-1000..1000), 7),
            q(rng.gen_range(-1000..1000), 11),
            q(1, 1),
        ];
    }
    let v = verify_realization(&h, &r, DEFAULT_TOL_COL, DEFAULT_TOL_GEN);
    assert!(!v.passed && !v.collinear_ok);
}

#[test]
fn perturbation_reports_the_broken_lines() {
    let h = h7();
    let mut r = realize(&h, 1, 256).unwrap();
    r.points[0][1] += q(1, 1000);
    let v = verify_realization(&h, &r, DEFAULT_TOL_COL, DEFAULT_TOL_GEN);
    assert!(!v.passed && !v.collinear_ok);
    let broken: Vec<[u32; 3]> = v
        .failures
        .iter()
        .filter(|f| f.expected_collinear)
        .map(|f| f.triple)
        .collect();
    assert_eq!(broken, vec![[1, 2, 7], [1, 3, 5]]);
}

#[test]
fn projective_change_keeps_the_pattern() {
    let m = [[2i64, 1, 0], [1, 3, 1], [0, 1, 1]];
    for c in (6..=8).flat_map(|n| enumerate_irreducible(n).unwrap()) {
        let h = c.hypertree;
        let mut r = realize(&h, 11, 192).unwrap();
        for p in &mut r.points {
            let old = p.clone();
            for (i, row) in m.iter().enumerate() {
                p[i] = row.iter().zip(&old).map(|(&a, x)| q(a, 1) * x).sum();
            }
        }
        assert!(
            verify_realization(&h, &r, DEFAULT_TOL_COL, DEFAULT_TOL_GEN).passed,
            "{h:?}"
        );
    }
}

#[test]
fn catalog_up_to_nine() {
    for c in (6..=9).flat_map(|n| enumerate_irreducible(n).unwrap()) {
        let r = realize(&c.hypertree, 1, 256).unwrap();
        assert!(r.attempts <= 20);
        check(&c.hypertree, &r);
    }
}

#[test]
fn decimal_rendering() {
    assert_eq!(decimal(&q(-1, 3), 4), "-0.3333");
    assert_eq!(decimal(&q(2, 3), 2), "0.67");
    assert_eq!(decimal(&q(-1, 1000), 2), "0.00");
    let r = realize(&h7(), 1, 64).unwrap();
    let json = r.to_json();
    assert_eq!(json["decimal_digits"], 19);
    assert_eq!(json["points"].as_array().unwrap().len(), 7);
}
