//! Planar realizations of irreducible hypertrees.
//!
//! Random rational x-coordinates are fixed for all points but one. The
//! remaining coordinate is a real root of the hypertree minor, isolated
//! with a Sturm sequence and refined by bisection to the requested number
//! of bits. The y-coordinates then span the kernel of the minor. All
//! arithmetic is exact over the rationals; only verification uses floats.

use hypertree_poly::{IntPoly, PolyMatrix, Polynomial, VarContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Error, Hypertree, Label, Result};

pub const MAX_ATTEMPTS: usize = 20;
pub const DEFAULT_TOL_COL: f64 = 1e-9;
pub const DEFAULT_TOL_GEN: f64 = 1e-6;

type Q = BigRational;
type UPoly = Polynomial<Q>;

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarRealization {
    /// Homogeneous coordinates `(x_i : y_i : 1)`.
    pub points: Vec<[Q; 3]>,
    /// Projecting from this point onto the line `y = 0` gives `projected`.
    pub projection_center: [Q; 3],
    pub projected: Vec<Q>,
    pub precision_bits: u32,
    pub seed: u64,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleCheck {
    pub triple: [Label; 3],
    pub det: f64,
    pub expected_collinear: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub collinear_ok: bool,
    pub general_ok: bool,
    pub distinct_ok: bool,
    /// Largest normalized determinant over triples inside a hyperedge.
    pub worst_collinear: f64,
    /// Smallest normalized determinant over the other triples.
    pub worst_general: f64,
    /// Smallest normalized distance between two points.
    pub min_separation: f64,
    pub failures: Vec<TripleCheck>,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Collinearity rows: each hyperedge `a1 < a2 < ... < ak` gives the
/// triples `(a1, a2, am)` for `m = 3..k`.
pub fn collinearity_rows(h: &Hypertree) -> Vec<[Label; 3]> {
    h.edges()
        .iter()
        .flat_map(|e| e[2..].iter().map(move |&c| [e[0], e[1], c]))
        .collect()
}

struct Attempt<'a> {
    h: &'a Hypertree,
    rows: Vec<[Label; 3]>,
    bits: u32,
}

impl Attempt<'_> {
    /// Columns of the minor: all labels outside the first row.
    fn minor_columns(&self) -> Vec<Label> {
        let skip = self.rows[0];
        (1..=self.h.n() as Label)
            .filter(|l| !skip.contains(l))
            .collect()
    }

    fn entry(x: &dyn Fn(Label) -> UPoly, row: [Label; 3], col: Label) -> Option<UPoly> {
        let [i, j, k] = row;
        let d = |a: Label, b: Label| &x(a) - &x(b);
        match col {
            c if c == i => Some(d(j, k)),
            c if c == j => Some(d(k, i)),
            c if c == k => Some(d(i, j)),
            _ => None,
        }
    }

    fn minor_matrix(
        &self,
        x: &dyn Fn(Label) -> UPoly,
        ctx: &hypertree_poly::Context,
    ) -> PolyMatrix<Q> {
        let cols = self.minor_columns();
        let rows: Vec<Vec<UPoly>> = self.rows[1..]
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| Self::entry(x, r, c).unwrap_or_else(|| UPoly::zero(ctx)))
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(ctx, rows).expect("square minor")
    }

    fn run(&self, seed: u64, attempt: usize) -> std::result::Result<PlanarRealization, String> {
        let n = self.h.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let free = (attempt * 7 + n - 1) % n;
        let span = 8 * n as i64;
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < n - 1 {
            let v = rng.gen_range(-span..=span);
            if !xs.contains(&v) {
                xs.push(v);
            }
        }
        let mut fixed: Vec<Option<Q>> = Vec::with_capacity(n);
        let mut it = xs.into_iter();
        for i in 0..n {
            fixed.push(if i == free {
                None
            } else {
                Some(q(it.next().expect("n-1 values")))
            });
        }

        let ctx = VarContext::new(["u"]);
        let x = |l: Label| match &fixed[l as usize - 1] {
            Some(v) => UPoly::constant(&ctx, v.clone()),
            None => UPoly::var(&ctx, 0),
        };
        let det = self
            .minor_matrix(&x, &ctx)
            .determinant()
            .map_err(|e| e.to_string())?;
        let f = univariate(&det);
        if f.len() < 2 {
            return Err("minor does not depend on the free coordinate".into());
        }
        let others: Vec<Q> = fixed.iter().flatten().cloned().collect();
        let max_x = others.iter().max().expect("n >= 3").clone();
        let roots = real_roots(&f, self.bits);
        if roots.is_empty() {
            return Err("no real root".into());
        }
        let sep = Q::new(BigInt::one(), BigInt::from(1_000_000));
        let distinct = |r: &Q| others.iter().all(|o| (r - o).abs() > sep);
        let root = roots
            .iter()
            .filter(|r| **r > max_x && distinct(r))
            .min()
            .or_else(|| roots.iter().find(|r| distinct(r)))
            .ok_or("every real root collides with another coordinate")?
            .clone();
        fixed[free] = Some(root);
        let xv: Vec<Q> = fixed.into_iter().map(|v| v.expect("all set")).collect();

        // Kernel of the minor at the root, via cofactors along its best row.
        let cols = self.minor_columns();
        let k = cols.len();
        let num: Vec<Vec<Q>> = self.rows[1..]
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        let [i, j, kk] = r;
                        let d = |a: Label, b: Label| &xv[a as usize - 1] - &xv[b as usize - 1];
                        match c {
                            c if c == i => d(j, kk),
                            c if c == j => d(kk, i),
                            c if c == kk => d(i, j),
                            _ => Q::zero(),
                        }
                    })
                    .collect()
            })
            .collect();
        let mut best: Option<Vec<Q>> = None;
        let mut best_norm = Q::zero();
        for r in 0..k {
            let v: Vec<Q> = (0..k)
                .map(|c| {
                    let sub: Vec<Vec<Q>> = (0..k)
                        .filter(|&rr| rr != r)
                        .map(|rr| {
                            (0..k)
                                .filter(|&cc| cc != c)
                                .map(|cc| num[rr][cc].clone())
                                .collect()
                        })
                        .collect();
                    let d = rational_det(sub);
                    if (r + c) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect();
            let norm = v.iter().map(|a| a.abs()).max().unwrap_or_else(Q::zero);
            if norm > best_norm {
                best_norm = norm;
                best = Some(v);
            }
        }
        let kernel = best
            .filter(|_| !best_norm.is_zero())
            .ok_or("minor has rank below n-4")?;
        let mut ys = vec![Q::zero(); n];
        for (c, v) in cols.iter().zip(kernel) {
            ys[*c as usize - 1] = v;
        }

        let x_scale = xv.iter().map(|a| a.abs()).max().expect("nonempty");
        let y_scale = ys.iter().map(|a| a.abs()).max().expect("nonempty");
        let xv: Vec<Q> = xv.iter().map(|a| a / &x_scale).collect();
        let ys: Vec<Q> = ys.iter().map(|a| a / &y_scale).collect();
        let points = xv
            .iter()
            .zip(&ys)
            .map(|(a, b)| [a.clone(), b.clone(), Q::one()])
            .collect();
        Ok(PlanarRealization {
            points,
            projection_center: [Q::zero(), Q::one(), Q::zero()],
            projected: xv,
            precision_bits: self.bits,
            seed,
            attempts: attempt + 1,
        })
    }
}

/// Finds a verified planar realization, retrying up to [`MAX_ATTEMPTS`]
/// times with derived seeds and a rotating free coordinate.
pub fn realize(h: &Hypertree, seed: u64, precision_bits: u32) -> Result<PlanarRealization> {
    realize_with(h, seed, precision_bits, DEFAULT_TOL_COL, DEFAULT_TOL_GEN)
}

pub fn realize_with(
    h: &Hypertree,
    seed: u64,
    precision_bits: u32,
    tol_col: f64,
    tol_gen: f64,
) -> Result<PlanarRealization> {
    h.require_irreducible()?;
    if !(64..=4096).contains(&precision_bits) {
        return Err(Error::Input(format!(
            "precision_bits {precision_bits} outside 64..=4096"
        )));
    }
    let a = Attempt {
        h,
        rows: collinearity_rows(h),
        bits: precision_bits,
    };
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        match a.run(seed, attempt) {
            Ok(r) => {
                let report = verify_realization(h, &r, tol_col, tol_gen);
                if report.passed {
                    return Ok(r);
                }
                last = format!(
                    "verification failed (worst collinear {:.3e}, worst general {:.3e}, separation {:.3e})",
                    report.worst_collinear, report.worst_general, report.min_separation
                );
            }
            Err(e) => last = e,
        }
    }
    Err(Error::Realization {
        attempts: MAX_ATTEMPTS as u32,
        reason: last,
    })
}

fn to_f64(a: &Q) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}

fn norm3(p: &[Q; 3]) -> f64 {
    p.iter().map(|c| to_f64(c).powi(2)).sum::<f64>().sqrt()
}

fn det3(a: &[Q; 3], b: &[Q; 3], c: &[Q; 3]) -> Q {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Checks collinearity of every triple inside a hyperedge, non-collinearity
/// of every other triple, and pairwise distinctness, all on unit-normalized
/// homogeneous coordinates.
pub fn verify_realization(
    h: &Hypertree,
    r: &PlanarRealization,
    tol_col: f64,
    tol_gen: f64,
) -> VerificationReport {
    let n = h.n();
    let mut report = VerificationReport {
        passed: false,
        collinear_ok: true,
        general_ok: true,
        distinct_ok: true,
        worst_collinear: 0.0,
        worst_general: f64::INFINITY,
        min_separation: f64::INFINITY,
        failures: Vec::new(),
    };
    if r.points.len() != n {
        report.distinct_ok = false;
        return report;
    }
    let norms: Vec<f64> = r.points.iter().map(norm3).collect();
    for a in 0..n {
        for b in a + 1..n {
            let (p, s) = (&r.points[a], &r.points[b]);
            let cross = [
                &p[1] * &s[2] - &p[2] * &s[1],
                &p[2] * &s[0] - &p[0] * &s[2],
                &p[0] * &s[1] - &p[1] * &s[0],
            ];
            let sepn = norm3(&cross) / (norms[a] * norms[b]);
            report.min_separation = report.min_separation.min(sepn);
            if sepn <= tol_gen {
                report.distinct_ok = false;
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let labels = [a as Label + 1, b as Label + 1, c as Label + 1];
                let inside = h.inside_edge(crate::bits::mask_of(&labels));
                let det = to_f64(&det3(&r.points[a], &r.points[b], &r.points[c])).abs()
                    / (norms[a] * norms[b] * norms[c]);
                let ok = if inside {
                    report.worst_collinear = report.worst_collinear.max(det);
                    det < tol_col
                } else {
                    report.worst_general = report.worst_general.min(det);
                    det > tol_gen
                };
                if !ok {
                    if inside {
                        report.collinear_ok = false;
                    } else {
                        report.general_ok = false;
                    }
                    if report.failures.len() < 32 {
                        report.failures.push(TripleCheck {
                            triple: labels,
                            det,
                            expected_collinear: inside,
                        });
                    }
                }
            }
        }
    }
    report.passed = report.collinear_ok && report.general_ok && report.distinct_ok;
    report
}

/// `|P(x)| / max_term |c·x^m|`, evaluated exactly and then rounded.
pub fn equation_residual(p: &IntPoly, x: &[Q]) -> f64 {
    let mut total = Q::zero();
    let mut scale = Q::zero();
    for (m, c) in p.terms() {
        let mut t = Q::from_integer(c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                t *= &x[v];
            }
        }
        scale = scale.max(t.abs());
        total += t;
    }
    if scale.is_zero() {
        return 0.0;
    }
    to_f64(&(total.abs() / scale))
}

/// Decimal rendering of a rational to `digits` places after the point.
pub fn decimal(a: &Q, digits: usize) -> String {
    let ten = BigInt::from(10).pow(digits as u32);
    let scaled = (a.abs() * Q::from_integer(ten.clone()))
        .round()
        .to_integer();
    let (int, frac) = (&scaled / &ten, &scaled % &ten);
    let sign = if a.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

impl PlanarRealization {
    pub fn to_json(&self) -> Value {
        let digits = (self.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        let pt = |p: &[Q; 3]| p.iter().map(|c| decimal(c, digits)).collect::<Vec<_>>();
        json!({
            "points": self.points.iter().map(pt).collect::<Vec<_>>(),
            "projection_center": pt(&self.projection_center),
            "projected": self.projected.iter().map(|c| decimal(c, digits)).collect::<Vec<_>>(),
            "precision_bits": self.precision_bits,
            "decimal_digits": digits,
            "seed": self.seed,
            "attempts": self.attempts,
        })
    }
}

fn rational_det(mut m: Vec<Vec<Q>>) -> Q {
    let k = m.len();
    let mut det = Q::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for cc in c..k {
                let t = &f * &m[c][cc];
                m[r][cc] -= t;
            }
        }
    }
    det
}

/// Coefficients, constant term first, of a polynomial in one variable.
fn univariate(p: &UPoly) -> Vec<Q> {
    let deg = p.degree_in(0).unwrap_or(0) as usize;
    let mut out = vec![Q::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[0] as usize] = c.clone();
    }
    trim(out)
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Q]) -> Vec<Q> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * q(i as i64))
            .collect(),
    )
}

fn div_rem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut quo = vec![Q::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        quo[shift] = f;
        r.pop();
        r = trim(r);
    }
    (trim(quo), r)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = div_rem(&a, &b).1;
        a = b;
        b = r;
    }
    a
}

fn sturm_chain(p: &[Q]) -> Vec<Vec<Q>> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    while chain.last().is_some_and(|c| c.len() > 1) {
        let n = chain.len();
        let r = div_rem(&chain[n - 2], &chain[n - 1]).1;
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// All distinct real roots, each to within `2^-bits`, in increasing order.
fn real_roots(f: &[Q], bits: u32) -> Vec<Q> {
    let g = div_rem(f, &gcd(f, &derivative(f))).0;
    if g.len() < 2 {
        return Vec::new();
    }
    let lead = g.last().expect("nonempty").abs();
    let bound = Q::one() + g.iter().map(|c| c.abs() / &lead).max().expect("nonempty");
    let chain = sturm_chain(&g);
    let mut intervals = Vec::new();
    isolate(&g, &chain, -bound.clone(), bound, &mut intervals);
    let eps = Q::new(BigInt::one(), BigInt::one() << bits);
    intervals
        .into_iter()
        .map(|(a, b)| refine(&g, a, b, &eps))
        .collect()
}

/// Splits `(a, b]` (endpoints not roots) into intervals holding one root each.
fn isolate(g: &[Q], chain: &[Vec<Q>], a: Q, b: Q, out: &mut Vec<(Q, Q)>) {
    let count = variations(chain, &a) - variations(chain, &b);
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((a, b));
        return;
    }
    let mid = (&a + &b) / q(2);
    if eval(g, &mid).is_zero() {
        let mut delta = (&b - &a) / q(4);
        loop {
            let (lo, hi) = (&mid - &delta, &mid + &delta);
            if !eval(g, &lo).is_zero()
                && !eval(g, &hi).is_zero()
                && variations(chain, &lo) - variations(chain, &hi) == 1
            {
                isolate(g, chain, a, lo.clone(), out);
                out.push((mid.clone(), mid));
                isolate(g, chain, hi, b, out);
                return;
            }
            delta /= q(2);
        }
    }
    isolate(g, chain, a, mid.clone(), out);
    isolate(g, chain, mid, b, out);
}

fn refine(g: &[Q], mut a: Q, mut b: Q, eps: &Q) -> Q {
    if a == b {
        return a;
    }
    let sa = eval(g, &a).is_positive();
    while &b - &a > *eps {
        let mid = (&a + &b) / q(2);
        let v = eval(g, &mid);
        if v.is_zero() {
            return mid;
        }
        if v.is_positive() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a + b) / q(2)
}
