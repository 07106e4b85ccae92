//! Determinantal equations of hypertree divisors, the black/white matrix
//! of a spherical hypertree, Kapranov class coefficients and the
//! same-divisor decision.

use std::collections::{BTreeMap, VecDeque};

use hypertree_poly::{Context, IntMatrix, IntPoly, VarContext};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bits::{labels_of, mask_of, size, submasks};
use crate::constructions::{assemble_triangulation, BicoloredTriangulation, Color, Triangle};
use crate::{capacity, Error, Hypertree, Label, Result};

/// `x1, ..., xn`.
pub fn x_context(n: usize) -> Context {
    VarContext::indexed("x", n)
}

fn diff(ctx: &Context, a: Label, b: Label) -> IntPoly {
    &IntPoly::var(ctx, a as usize - 1) - &IntPoly::var(ctx, b as usize - 1)
}

/// `(n−2) × n` matrix; row `{i<j<k}` holds `x_j−x_k, x_k−x_i, x_i−x_j` in
/// columns `i, j, k`.
pub fn matrix_a(h: &Hypertree) -> Result<IntMatrix> {
    h.require_triples()?;
    let ctx = x_context(h.n());
    let mut m = IntMatrix::zeros(&ctx, h.d(), h.n());
    for (r, e) in h.edges().iter().enumerate() {
        let (i, j, k) = (e[0], e[1], e[2]);
        m.set(r, i as usize - 1, diff(&ctx, j, k))?;
        m.set(r, j as usize - 1, diff(&ctx, k, i))?;
        m.set(r, k as usize - 1, diff(&ctx, i, j))?;
    }
    Ok(m)
}

/// Canonical determinant of `A` with row `row` and its three nonzero
/// columns removed.
pub fn hypertree_equation_at(h: &Hypertree, row: usize, budget: Option<usize>) -> Result<IntPoly> {
    h.require_irreducible()?;
    let a = matrix_a(h)?;
    let e = h
        .edges()
        .get(row)
        .ok_or_else(|| Error::Input(format!("row {row} out of range")))?;
    let cols: Vec<usize> = e.iter().map(|&l| l as usize - 1).collect();
    let det = a.minor(&[row], &cols).determinant_with_budget(budget)?;
    if det.is_zero() {
        return Err(Error::Internal(
            "hypertree minor vanishes identically".into(),
        ));
    }
    Ok(det.canonicalize()?)
}

pub fn hypertree_equation(h: &Hypertree) -> Result<IntPoly> {
    hypertree_equation_at(h, 0, None)
}

fn orient(t: &BicoloredTriangulation) -> Result<(Vec<Triangle>, Vec<Triangle>)> {
    // Faces indexed black first, then white; each gets a cyclic order so
    // that every shared edge is traversed in opposite directions.
    let faces: Vec<Triangle> = t.black.iter().chain(t.white.iter()).copied().collect();
    let mut adj: BTreeMap<[Label; 2], Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            adj.entry([a.min(b), a.max(b)]).or_default().push(i);
        }
    }
    let mut oriented: Vec<Option<Triangle>> = vec![None; faces.len()];
    oriented[0] = Some(faces[0]);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let o = oriented[i].expect("queued faces are oriented");
        for (a, b) in [(o[0], o[1]), (o[1], o[2]), (o[2], o[0])] {
            for &j in &adj[&[a.min(b), a.max(b)]] {
                if j == i {
                    continue;
                }
                let f = faces[j];
                let c = *f.iter().find(|&&x| x != a && x != b).expect("triangle");
                let want = [b, a, c];
                match oriented[j] {
                    None => {
                        oriented[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(have) if !same_cycle(have, want) => {
                        return Err(Error::Precondition(
                            "triangulation is not orientable".into(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let all: Vec<Triangle> = oriented
        .into_iter()
        .map(|o| o.expect("connected surface"))
        .collect();
    let (black, white) = all.split_at(t.black.len());
    Ok((black.to_vec(), white.to_vec()))
}

fn same_cycle(a: Triangle, b: Triangle) -> bool {
    (0..3).any(|s| (0..3).all(|i| a[(i + s) % 3] == b[i]))
}

fn directed_edges(t: &Triangle) -> [(Label, Label); 3] {
    [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
}

/// Square matrix of a valid triangulation. For `Color::Black` rows are
/// white faces and columns black faces, with entry `x_i − x_j` when the
/// faces share the edge traversed `i → j` by the black face. For
/// `Color::White` the roles of the colors are swapped.
pub fn matrix_b(t: &BicoloredTriangulation, color: Color) -> Result<IntMatrix> {
    if let Some(f) = crate::constructions::validate_triangulation(t).failure {
        return Err(Error::Precondition(format!(
            "invalid triangulation ({}): {}",
            f.check, f.detail
        )));
    }
    let (black, white) = orient(t)?;
    let (cols, rows) = match color {
        Color::Black => (&black, &white),
        Color::White => (&white, &black),
    };
    let ctx = x_context(t.n);
    let mut m = IntMatrix::zeros(&ctx, rows.len(), cols.len());
    for (c, f) in cols.iter().enumerate() {
        for (i, j) in directed_edges(f) {
            let r = rows
                .iter()
                .position(|g| g.contains(&i) && g.contains(&j))
                .ok_or_else(|| Error::Internal("edge without an opposite face".into()))?;
            m.set(r, c, diff(&ctx, i, j))?;
        }
    }
    Ok(m)
}

/// Canonical determinant of `m` with one row and one column removed.
pub fn b_minor_equation(m: &IntMatrix, row: usize, col: usize) -> Result<IntPoly> {
    let det = m.minor(&[row], &[col]).determinant()?;
    if det.is_zero() {
        return Err(Error::Internal("minor vanishes identically".into()));
    }
    Ok(det.canonicalize()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Exact(i64),
    LowerBound(i64),
}

impl Coefficient {
    pub fn value(self) -> i64 {
        match self {
            Coefficient::Exact(v) | Coefficient::LowerBound(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Coefficient::Exact(_))
    }
}

/// `d·H − Σ m_J E_J` on the moduli space with `n` markings, blown down
/// from marking `marking`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KapranovClass {
    pub n: usize,
    pub marking: Label,
    pub d: i64,
    pub m: BTreeMap<Vec<Label>, Coefficient>,
}

impl KapranovClass {
    pub fn get(&self, j: &[Label]) -> Option<Coefficient> {
        let mut j = j.to_vec();
        j.sort_unstable();
        self.m.get(&j).copied()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, c) in &self.m {
            let key = k
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let v = match c {
                Coefficient::Exact(v) => json!({ "exact": v }),
                Coefficient::LowerBound(v) => json!({ "lower_bound": v }),
            };
            m.insert(key, v);
        }
        json!({ "n": self.n, "marking": self.marking, "d": self.d, "m": m })
    }
}

const CLASS_MAX_N: usize = 20;

/// `|J| − 1 + #{Γ_α ⊆ J^c} − cap(Γ_J)`.
pub fn class_lower_bound(h: &Hypertree, j: &[Label]) -> Result<i64> {
    let m = h.subset_mask(j)?;
    if m == 0 {
        return Err(Error::Input("empty index set".into()));
    }
    Ok(lower_bound_mask(h, m))
}

fn lower_bound_mask(h: &Hypertree, j: u64) -> i64 {
    let outside = h.full_mask() & !j;
    let inside_complement = h.masks().iter().filter(|&&e| e & outside == e).count();
    size(j) as i64 - 1 + inside_complement as i64 - capacity(&h.contract_mask(j)) as i64
}

/// Class of the pull-back of the hypertree divisor to `n+1` markings.
/// Entries proven exact are reported as such; the rest carry the general
/// lower bound.
pub fn class_coefficients(h: &Hypertree) -> Result<KapranovClass> {
    h.require_irreducible()?;
    let n = h.n();
    if n > CLASS_MAX_N {
        return Err(Error::Limit(format!(
            "class computation supports n <= {CLASS_MAX_N}"
        )));
    }
    let d = h.d() as i64;
    let full = h.full_mask();
    let val = |m: u64| {
        labels_of(m)
            .iter()
            .map(|&l| h.valence(l) as i64)
            .sum::<i64>()
    };
    let in_range = |m: u64| (1..=n - 3).contains(&size(m));

    let mut exact: BTreeMap<u64, i64> = BTreeMap::new();
    let put = |m: u64, v: i64, exact: &mut BTreeMap<u64, i64>| -> Result<()> {
        if !in_range(m) {
            return Ok(());
        }
        match exact.insert(m, v) {
            Some(old) if old != v => Err(Error::Internal(format!(
                "conflicting exact values {old} and {v} for {:?}",
                labels_of(m)
            ))),
            _ => Ok(()),
        }
    };
    for l in 1..=n as Label {
        put(1 << l, d - h.valence(l) as i64, &mut exact)?;
    }
    for &e in h.masks() {
        put(full & !e, 1, &mut exact)?;
        put(e, d + size(e) as i64 - val(e), &mut exact)?;
        for i in submasks(e).filter(|&i| i != 0 && i != e) {
            put(full & !i, 0, &mut exact)?;
            put(i, d + size(i) as i64 - 1 - val(i), &mut exact)?;
        }
    }
    if h.is_triples() {
        let wheels: Vec<u64> = h.wheels().iter().map(|w| mask_of(w)).collect();
        let triples: Vec<u64> = (1..=n as Label)
            .flat_map(|i| {
                (i + 1..=n as Label)
                    .flat_map(move |j| (j + 1..=n as Label).map(move |k| mask_of(&[i, j, k])))
            })
            .filter(|t| !h.masks().contains(t) && !wheels.contains(t))
            .collect();
        let fixed: Vec<(u64, i64)> = triples
            .par_iter()
            .filter_map(|&t| {
                let j = full & !t;
                (capacity(&h.contract_mask(j)) + 4 == n).then(|| (j, lower_bound_mask(h, j)))
            })
            .collect();
        for (j, v) in fixed {
            put(j, v, &mut exact)?;
        }
    }

    let all: Vec<u64> = (1u64..1 << n)
        .map(|m| m << 1)
        .filter(|&m| in_range(m))
        .collect();
    let entries: Vec<(Vec<Label>, Coefficient)> = all
        .par_iter()
        .map(|&m| {
            let c = match exact.get(&m) {
                Some(&v) => Coefficient::Exact(v),
                None => Coefficient::LowerBound(lower_bound_mask(h, m)),
            };
            (labels_of(m), c)
        })
        .collect();
    Ok(KapranovClass {
        n: n + 1,
        marking: n as Label + 1,
        d: d - 1,
        m: entries.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EqualSpherical,
    EqualIdentical,
    Distinct,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SameDivisor {
    pub verdict: Verdict,
    /// Labeled equality of the canonical equations, for small triples-only inputs.
    pub equations_equal: Option<bool>,
}

const EQUATION_CHECK_MAX_N: usize = 8;

pub fn same_divisor(a: &Hypertree, b: &Hypertree) -> Result<SameDivisor> {
    if a.n() != b.n() {
        return Err(Error::Input(format!(
            "ground sets differ: n = {} vs n = {}",
            a.n(),
            b.n()
        )));
    }
    a.require_irreducible()?;
    b.require_irreducible()?;
    let triples = a.is_triples() && b.is_triples();
    let equations_equal = if triples && a.n() <= EQUATION_CHECK_MAX_N {
        Some(hypertree_equation(a)? == hypertree_equation(b)?)
    } else {
        None
    };
    let verdict = if a == b {
        Verdict::EqualIdentical
    } else if triples && assemble_triangulation(a, b)?.is_some() {
        Verdict::EqualSpherical
    } else if triples && a.is_generic()? && b.is_generic()? {
        Verdict::Distinct
    } else {
        Verdict::Undecided
    };
    Ok(SameDivisor {
        verdict,
        equations_equal,
    })
}
