//! Divisor classes from explicit polynomials on configuration space: the
//! Weierstrass, bitangent and trigonal examples, diagonal multiplicity
//! tables, and the conversion of a table to a Kapranov class.

use std::collections::BTreeMap;

use hypertree_poly::{
    diagonal_multiplicity, diagonal_multiplicity_shifted, Context, IntMatrix, IntPoly, VarContext,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::bits::{labels_of, size};
use crate::divisor::{Coefficient, KapranovClass};
use crate::{Error, Label, Result};

/// `x1, y1, x2, y2, ..., xk, yk` followed by `extra`.
fn paired_context(pairs: usize, extra: &[&str]) -> Context {
    let mut names: Vec<String> = (1..=pairs)
        .flat_map(|i| [format!("x{i}"), format!("y{i}")])
        .collect();
    names.extend(extra.iter().map(|s| s.to_string()));
    VarContext::new(names)
}

fn lin(ctx: &Context, a: usize, b: usize) -> IntPoly {
    &IntPoly::var(ctx, a) - &IntPoly::var(ctx, b)
}

/// `g_i(t) = ∏_{j≠i} (t − x_j)(t − y_j)` for three pairs, with `t` at index `t`.
fn canonical_series(ctx: &Context, t: usize) -> Vec<IntPoly> {
    (0..3)
        .map(|i| {
            (0..3)
                .filter(|&j| j != i)
                .fold(IntPoly::one(ctx), |acc, j| {
                    let f = &lin(ctx, t, 2 * j) * &lin(ctx, t, 2 * j + 1);
                    &acc * &f
                })
        })
        .collect()
}

/// Wronskian in `t` of the three canonical differentials, over
/// `x1, y1, x2, y2, x3, y3, t`.
pub fn weierstrass_polynomial() -> Result<IntPoly> {
    let ctx = paired_context(3, &["t"]);
    let t = 6;
    let g = canonical_series(&ctx, t);
    let d1: Vec<IntPoly> = g.iter().map(|p| p.derivative(t)).collect();
    let d2: Vec<IntPoly> = d1.iter().map(|p| p.derivative(t)).collect();
    let m = IntMatrix::from_rows(&ctx, vec![g, d1, d2])?;
    Ok(m.determinant()?)
}

/// Discriminant in `s` of `det[g(t); g(s); g'(t)] / (s − t)^2`, over
/// `x1, y1, x2, y2, x3, y3, t`.
pub fn bitangent_polynomial() -> Result<IntPoly> {
    let ctx = paired_context(3, &["t", "s"]);
    let (t, s) = (6, 7);
    let gt = canonical_series(&ctx, t);
    let swap: Vec<Option<usize>> = (0..8)
        .map(|v| {
            Some(if v == t {
                s
            } else if v == s {
                t
            } else {
                v
            })
        })
        .collect();
    let gs: Vec<IntPoly> = gt
        .iter()
        .map(|p| p.remap(&ctx, &swap))
        .collect::<std::result::Result<_, _>>()?;
    let dt: Vec<IntPoly> = gt.iter().map(|p| p.derivative(t)).collect();
    let det = IntMatrix::from_rows(&ctx, vec![gt, gs, dt])?.determinant()?;
    let square = lin(&ctx, s, t).pow(2)?;
    let m = det
        .div_exact(&square)
        .map_err(|_| Error::Internal("tangent determinant not divisible by (s-t)^2".into()))?;
    if m.degree_in(s).unwrap_or(0) != 2 {
        return Err(Error::Internal(
            "tangent residual is not quadratic in s".into(),
        ));
    }
    let [c, b, a] = [0, 1, 2].map(|k| m.coefficient_of(s, k));
    let disc = (&b * &b).checked_sub(&(&a * &c).scale(&BigInt::from(4)))?;
    let out = paired_context(3, &["t"]);
    let drop_s: Vec<Option<usize>> = (0..8).map(|v| (v < 7).then_some(v)).collect();
    Ok(disc.remap(&out, &drop_s)?)
}

/// `L_i.L_j / ((y_i − x_i)(y_j − x_j))` for chords of the twisted cubic.
pub fn chord_pairing(ctx: &Context, i: usize, j: usize) -> Result<IntPoly> {
    let pts = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
    let rows: Vec<Vec<IntPoly>> = (0..4u32)
        .map(|k| {
            pts.iter()
                .map(|&v| IntPoly::var(ctx, v).pow(k))
                .collect::<std::result::Result<_, _>>()
        })
        .collect::<std::result::Result<_, _>>()?;
    let vandermonde = IntMatrix::from_rows(ctx, rows)?.determinant()?;
    let factor = &lin(ctx, 2 * i + 1, 2 * i) * &lin(ctx, 2 * j + 1, 2 * j);
    vandermonde
        .div_exact(&factor)
        .map_err(|_| Error::Internal("chord pairing not divisible by its pair factors".into()))
}

/// Common-transversal condition for the five chords `(x_i, y_i)`, over
/// `x1, y1, ..., x5, y5`, with the pair factors removed.
pub fn transversal_polynomial(budget: Option<usize>) -> Result<IntPoly> {
    let ctx = paired_context(5, &[]);
    let mut m = IntMatrix::zeros(&ctx, 5, 5);
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                m.set(i, j, chord_pairing(&ctx, i, j)?)?;
            }
        }
    }
    Ok(m.determinant_with_budget(budget)?)
}

/// `n_I` for every `I ⊆ {1..n}` with `|I| ≥ 2`; labels are variable
/// positions plus one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub n: usize,
    pub entries: BTreeMap<Vec<Label>, u32>,
}

impl MultiplicityTable {
    pub fn get(&self, i: &[Label]) -> Option<u32> {
        let mut i = i.to_vec();
        i.sort_unstable();
        self.entries.get(&i).copied()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.entries {
            m.insert(
                k.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                Value::from(*v),
            );
        }
        serde_json::json!({ "n": self.n, "entries": m })
    }
}

const TABLE_MAX_N: usize = 16;

fn subsets(n: usize) -> Vec<u64> {
    (0u64..1 << n)
        .map(|m| m << 1)
        .filter(|&m| size(m) >= 2)
        .collect()
}

fn table_with(
    f: &IntPoly,
    mult: impl Fn(&IntPoly, &[usize]) -> hypertree_poly::Result<u32> + Sync,
) -> Result<MultiplicityTable> {
    let n = f.context().len();
    if n > TABLE_MAX_N {
        return Err(Error::Limit(format!(
            "multiplicity tables support at most {TABLE_MAX_N} variables"
        )));
    }
    if f.is_zero() {
        return Err(Error::Input("zero polynomial".into()));
    }
    let entries = subsets(n)
        .par_iter()
        .map(|&m| {
            let labels = labels_of(m);
            let vars: Vec<usize> = labels.iter().map(|&l| l as usize - 1).collect();
            Ok((labels, mult(f, &vars)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(MultiplicityTable { n, entries })
}

/// Diagonal multiplicities. Translation-invariant inputs use the
/// shifted-coordinate shortcut; anything else uses the general expansion.
pub fn multiplicity_table(f: &IntPoly) -> Result<MultiplicityTable> {
    if f.is_translation_invariant() {
        table_with(f, diagonal_multiplicity_shifted)
    } else {
        table_with(f, diagonal_multiplicity)
    }
}

/// Always uses the general expansion.
pub fn multiplicity_table_general(f: &IntPoly) -> Result<MultiplicityTable> {
    table_with(f, diagonal_multiplicity)
}

/// Adds a variable the polynomial does not depend on, at the end.
pub fn with_extra_marking(f: &IntPoly, name: &str) -> Result<IntPoly> {
    let ctx = f.context().extended([name]);
    let map: Vec<Option<usize>> = (0..f.context().len()).map(Some).collect();
    Ok(f.remap(&ctx, &map)?)
}

/// Kapranov class of the divisor whose pull-back to configuration space is
/// cut out by the polynomial with multiplicity table `t`.
///
/// Starts from `−Σ n_I D_I`, removes every `D_{ij}` with `p ∉ {i, j}` using
/// the relation `Σ_{I ⊇ {i,j}} D_I = 0`, and reads `d` and `m_J` off the
/// coefficients of `D_{N∖p}` and `D_{(N∖p)∖J}`.
pub fn fm_to_kapranov(t: &MultiplicityTable, p: Label) -> Result<KapranovClass> {
    let n = t.n;
    if p == 0 || p as usize > n {
        return Err(Error::Input(format!("marking {p} outside 1..={n}")));
    }
    if n < 5 {
        return Err(Error::Precondition("need at least 5 markings".into()));
    }
    let mut c: BTreeMap<u64, i64> = BTreeMap::new();
    for m in subsets(n) {
        let labels = labels_of(m);
        let v = t
            .get(&labels)
            .ok_or_else(|| Error::Input(format!("table lacks entry {labels:?}")))?;
        c.insert(m, -(v as i64));
    }
    let pbit = 1u64 << p;
    for i in 1..=n as Label {
        for j in i + 1..=n as Label {
            let pair = (1u64 << i) | (1u64 << j);
            if pair & pbit != 0 {
                continue;
            }
            let k = c[&pair];
            if k != 0 {
                for (m, v) in c.iter_mut() {
                    if m & pair == pair {
                        *v -= k;
                    }
                }
            }
        }
    }
    let rest = crate::bits::ground(n) & !pbit;
    let d = -c[&rest];
    let mut m = BTreeMap::new();
    for j in crate::bits::submasks(rest) {
        if (1..=n - 4).contains(&size(j)) {
            m.insert(labels_of(j), Coefficient::Exact(-c[&(rest & !j)]));
        }
    }
    Ok(KapranovClass {
        n,
        marking: p,
        d,
        m,
    })
}
