//! Bicolored sphere triangulations and the hypertree constructions built on
//! them, plus the one-vertex Fibonacci extension.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Hypertree, Label, Result};

pub type Triangle = [Label; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicoloredTriangulation {
    pub n: usize,
    pub black: Vec<Triangle>,
    pub white: Vec<Triangle>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationFailure {
    pub check: &'static str,
    pub detail: String,
    pub edge: Option<[Label; 2]>,
    pub vertex: Option<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub valid: bool,
    pub failure: Option<TriangulationFailure>,
}

fn sorted(mut t: Triangle) -> Triangle {
    t.sort_unstable();
    t
}

fn edges_of(t: &Triangle) -> [[Label; 2]; 3] {
    let [a, b, c] = sorted(*t);
    [[a, b], [a, c], [b, c]]
}

impl BicoloredTriangulation {
    /// Sorts each triangle and both face lists.
    pub fn new(n: usize, black: Vec<Triangle>, white: Vec<Triangle>) -> Self {
        let norm = |v: Vec<Triangle>| {
            let mut v: Vec<Triangle> = v.into_iter().map(sorted).collect();
            v.sort_unstable();
            v
        };
        BicoloredTriangulation {
            n,
            black: norm(black),
            white: norm(white),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BicoloredTriangulation =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Ok(Self::new(raw.n, raw.black, raw.white))
    }

    pub fn faces(&self, color: Color) -> &[Triangle] {
        match color {
            Color::Black => &self.black,
            Color::White => &self.white,
        }
    }

    fn all_faces(&self) -> impl Iterator<Item = (Color, &Triangle)> {
        self.black
            .iter()
            .map(|t| (Color::Black, t))
            .chain(self.white.iter().map(|t| (Color::White, t)))
    }

    /// For each unordered edge, the faces containing it.
    pub(crate) fn edge_faces(&self) -> BTreeMap<[Label; 2], Vec<(Color, usize)>> {
        let mut map: BTreeMap<[Label; 2], Vec<(Color, usize)>> = BTreeMap::new();
        for (color, list) in [(Color::Black, &self.black), (Color::White, &self.white)] {
            for (idx, t) in list.iter().enumerate() {
                for e in edges_of(t) {
                    map.entry(e).or_default().push((color, idx));
                }
            }
        }
        map
    }
}

pub fn validate_triangulation(t: &BicoloredTriangulation) -> TriangulationReport {
    match check(t) {
        Ok(()) => TriangulationReport {
            valid: true,
            failure: None,
        },
        Err(f) => TriangulationReport {
            valid: false,
            failure: Some(f),
        },
    }
}

fn fail(check: &'static str, detail: String) -> TriangulationFailure {
    TriangulationFailure {
        check,
        detail,
        edge: None,
        vertex: None,
    }
}

fn check(t: &BicoloredTriangulation) -> std::result::Result<(), TriangulationFailure> {
    let n = t.n;
    for (_, tri) in t.all_faces() {
        let s = sorted(*tri);
        if s[0] == 0 || s[2] as usize > n || s[0] == s[1] || s[1] == s[2] {
            return Err(fail("faces", format!("malformed triangle {tri:?}")));
        }
    }
    let distinct: BTreeSet<Triangle> = t.all_faces().map(|(_, tri)| sorted(*tri)).collect();
    if distinct.len() != t.black.len() + t.white.len() {
        return Err(fail("faces", "repeated triangle".into()));
    }
    if n < 2 || t.black.len() != n - 2 || t.white.len() != n - 2 {
        return Err(fail(
            "counts",
            format!(
                "expected {} faces of each color, got {} black and {} white",
                n.saturating_sub(2),
                t.black.len(),
                t.white.len()
            ),
        ));
    }
    let edge_faces = t.edge_faces();
    for (e, faces) in &edge_faces {
        let blacks = faces.iter().filter(|f| f.0 == Color::Black).count();
        let whites = faces.len() - blacks;
        if blacks != 1 || whites != 1 {
            return Err(TriangulationFailure {
                check: "evenness",
                detail: format!("edge lies in {blacks} black and {whites} white triangles"),
                edge: Some(*e),
                vertex: None,
            });
        }
    }
    for v in 1..=n as Label {
        if let Err(detail) = link_is_cycle(t, v) {
            return Err(TriangulationFailure {
                check: "links",
                detail,
                edge: None,
                vertex: Some(v),
            });
        }
    }
    let e = edge_faces.len();
    let f = t.black.len() + t.white.len();
    if e != 3 * t.black.len() || n + f != e + 2 {
        return Err(fail("euler", format!("n - e + f = {} - {e} + {f}", n)));
    }
    if !faces_connected(t) {
        return Err(fail(
            "connected",
            "face adjacency graph is disconnected".into(),
        ));
    }
    Ok(())
}

fn link_is_cycle(t: &BicoloredTriangulation, v: Label) -> std::result::Result<(), String> {
    let mut adj: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for (_, tri) in t.all_faces() {
        if tri.contains(&v) {
            let rest: Vec<Label> = tri.iter().copied().filter(|&x| x != v).collect();
            adj.entry(rest[0]).or_default().push(rest[1]);
            adj.entry(rest[1]).or_default().push(rest[0]);
        }
    }
    if adj.is_empty() {
        return Err("vertex lies in no triangle".into());
    }
    if let Some((u, nb)) = adj.iter().find(|(_, nb)| nb.len() != 2) {
        return Err(format!("link vertex {u} has degree {}", nb.len()));
    }
    let start = *adj.keys().next().expect("nonempty");
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    if steps != adj.len() {
        return Err(format!(
            "link splits into several cycles ({steps} of {} vertices in the first)",
            adj.len()
        ));
    }
    Ok(())
}

fn faces_connected(t: &BicoloredTriangulation) -> bool {
    let faces: Vec<Triangle> = t.all_faces().map(|(_, tri)| *tri).collect();
    let mut by_edge: BTreeMap<[Label; 2], Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for e in edges_of(f) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut seen = vec![false; faces.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for e in edges_of(&faces[i]) {
            for &j in &by_edge[&e] {
                if !std::mem::replace(&mut seen[j], true) {
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn require_valid(t: &BicoloredTriangulation) -> Result<()> {
    match validate_triangulation(t).failure {
        None => Ok(()),
        Some(f) => Err(Error::Precondition(format!(
            "invalid triangulation ({}): {}",
            f.check, f.detail
        ))),
    }
}

pub fn black_white_hypertrees(t: &BicoloredTriangulation) -> Result<(Hypertree, Hypertree)> {
    require_valid(t)?;
    let h = |faces: &[Triangle]| Hypertree::new(t.n, faces.iter().map(|f| f.to_vec()).collect());
    Ok((h(&t.black)?, h(&t.white)?))
}

/// Poles 1, 2 and equator cycle 3, 5, 4, 6.
pub fn octahedron() -> BicoloredTriangulation {
    BicoloredTriangulation::new(
        6,
        vec![[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        vec![[1, 3, 6], [1, 4, 5], [2, 3, 5], [2, 4, 6]],
    )
}

/// Poles 1, 2 and equator `3, 4, ..., 2k+2` in cyclic order; `{1,3,4}` is black.
pub fn bipyramid(k: usize) -> Result<BicoloredTriangulation> {
    if k < 3 {
        return Err(Error::Input(format!("bipyramid needs k >= 3, got {k}")));
    }
    let n = 2 * k + 2;
    let eq = |i: usize| (3 + i % (2 * k)) as Label;
    let (mut black, mut white) = (Vec::new(), Vec::new());
    for i in 0..2 * k {
        let (top, bottom) = ([1, eq(i), eq(i + 1)], [2, eq(i), eq(i + 1)]);
        if i % 2 == 0 {
            black.push(top);
            white.push(bottom);
        } else {
            white.push(top);
            black.push(bottom);
        }
    }
    Ok(BicoloredTriangulation::new(n, black, white))
}

/// Inserts a midpoint on every edge (labels `n+1..` in sorted edge order)
/// and splits each face into three corner faces of its color and a central
/// face of the other color.
pub fn quadruple(t: &BicoloredTriangulation) -> Result<BicoloredTriangulation> {
    require_valid(t)?;
    let mid: BTreeMap<[Label; 2], Label> = t
        .edge_faces()
        .keys()
        .enumerate()
        .map(|(i, &e)| (e, (t.n + 1 + i) as Label))
        .collect();
    let m = |a: Label, b: Label| mid[&[a.min(b), a.max(b)]];
    let (mut black, mut white) = (Vec::new(), Vec::new());
    for (color, tri) in t.all_faces() {
        let [a, b, c] = *tri;
        let (a1, b1, c1) = (m(b, c), m(a, c), m(a, b));
        let corners = [[a, b1, c1], [a1, b, c1], [a1, b1, c]];
        let (same, other) = match color {
            Color::Black => (&mut black, &mut white),
            Color::White => (&mut white, &mut black),
        };
        same.extend(corners);
        other.push([a1, b1, c1]);
    }
    Ok(BicoloredTriangulation::new(t.n + mid.len(), black, white))
}

/// Removes black face `black_face` of `a` and white face `white_face` of
/// `b`, and glues the two holes. The removed triangles' vertices are
/// identified in sorted order; the other vertices of `b` are renumbered
/// after those of `a`.
pub fn connected_sum(
    a: &BicoloredTriangulation,
    black_face: usize,
    b: &BicoloredTriangulation,
    white_face: usize,
) -> Result<BicoloredTriangulation> {
    require_valid(a)?;
    require_valid(b)?;
    let ta = *a
        .black
        .get(black_face)
        .ok_or_else(|| Error::Input(format!("no black face {black_face}")))?;
    let tb = *b
        .white
        .get(white_face)
        .ok_or_else(|| Error::Input(format!("no white face {white_face}")))?;
    let mut map = BTreeMap::new();
    for i in 0..3 {
        map.insert(tb[i], ta[i]);
    }
    let mut next = a.n as Label;
    for v in 1..=b.n as Label {
        map.entry(v).or_insert_with(|| {
            next += 1;
            next
        });
    }
    let relabel = |f: &Triangle| [map[&f[0]], map[&f[1]], map[&f[2]]];
    let mut black: Vec<Triangle> = a.black.iter().filter(|&&f| f != ta).copied().collect();
    black.extend(b.black.iter().map(relabel));
    let mut white: Vec<Triangle> = a.white.clone();
    white.extend(b.white.iter().filter(|&&f| f != tb).map(relabel));
    Ok(BicoloredTriangulation::new(a.n + b.n - 3, black, white))
}

/// The triangulation with black faces `b` and white faces `w`, if they fit
/// together into an even triangulation of the sphere.
pub fn assemble_triangulation(
    b: &Hypertree,
    w: &Hypertree,
) -> Result<Option<BicoloredTriangulation>> {
    if b.n() != w.n() {
        return Err(Error::Input(format!(
            "ground sets differ: n = {} vs n = {}",
            b.n(),
            w.n()
        )));
    }
    for h in [b, w] {
        h.require_triples()?;
        h.require_irreducible()?;
    }
    let faces = |h: &Hypertree| h.edges().iter().map(|e| [e[0], e[1], e[2]]).collect();
    let t = BicoloredTriangulation::new(b.n(), faces(b), faces(w));
    Ok(validate_triangulation(&t).valid.then_some(t))
}

/// One-vertex extension of a triples-only irreducible hypertree.
///
/// `v` must lie in exactly two triples `T1`, `T2`; `w` picks `T2` as the
/// triple containing `v` and `w` (default: the later triple containing `v`,
/// with `w` its largest other element). `T2 = {i, w, v}` becomes
/// `{i, w, n+1}` and `{a, v, n+1}` is added, with `a` outside `T1 ∪ T2`.
pub fn fibonacci_extend(h: &Hypertree, v: Label, a: Label, w: Option<Label>) -> Result<Hypertree> {
    h.require_triples()?;
    h.require_irreducible()?;
    let n = h.n() as Label;
    for (name, x) in [("v", v), ("a", a)] {
        if x == 0 || x > n {
            return Err(Error::Input(format!("{name} = {x} outside 1..={n}")));
        }
    }
    let containing: Vec<&Vec<Label>> = h.edges().iter().filter(|e| e.contains(&v)).collect();
    if containing.len() != 2 {
        return Err(Error::Precondition(format!(
            "vertex {v} has valence {}, need 2",
            containing.len()
        )));
    }
    let (t1, t2, w) = match w {
        None => {
            let t2 = containing[1];
            (
                containing[0],
                t2,
                *t2.iter().filter(|&&x| x != v).max().expect("triple"),
            )
        }
        Some(w) => match containing.iter().position(|e| e.contains(&w) && w != v) {
            Some(p) => (containing[1 - p], containing[p], w),
            None => return Err(Error::Input(format!("no triple contains both {v} and {w}"))),
        },
    };
    if t1.contains(&a) || t2.contains(&a) {
        return Err(Error::Precondition(format!(
            "a = {a} lies in a triple containing {v}"
        )));
    }
    let i = *t2.iter().find(|&&x| x != v && x != w).expect("triple");
    let fresh = n + 1;
    let mut edges: Vec<Vec<Label>> = h.edges().iter().filter(|&e| e != t2).cloned().collect();
    edges.push(vec![i, w, fresh]);
    edges.push(vec![a, v, fresh]);
    Hypertree::new(h.n() + 1, edges)
}

/// Boundary components of the region covered by the given faces: each
/// returned value is the number of edges in one boundary cycle.
pub fn region_boundary_lengths(t: &BicoloredTriangulation, faces: &[Triangle]) -> Vec<usize> {
    let inside: BTreeSet<Triangle> = faces.iter().map(|&f| sorted(f)).collect();
    let mut count: BTreeMap<[Label; 2], usize> = BTreeMap::new();
    for f in &inside {
        for e in edges_of(f) {
            *count.entry(e).or_default() += 1;
        }
    }
    let boundary: Vec<[Label; 2]> = count
        .into_iter()
        .filter(|&(_, c)| c == 1)
        .map(|(e, _)| e)
        .collect();
    // Walk boundary edges around the region; at a pinch vertex the next
    // edge is the one reached by rotating through inside faces.
    let mut used = BTreeSet::new();
    let mut lengths = Vec::new();
    for &start in &boundary {
        if used.contains(&start) {
            continue;
        }
        let mut len = 0;
        let (mut e, mut at) = (start, start[1]);
        loop {
            used.insert(e);
            len += 1;
            let next = next_boundary_edge(t, &inside, e, at);
            let other = if next[0] == at { next[1] } else { next[0] };
            if next == start {
                break;
            }
            e = next;
            at = other;
        }
        lengths.push(len);
    }
    lengths
}

fn next_boundary_edge(
    t: &BicoloredTriangulation,
    inside: &BTreeSet<Triangle>,
    e: [Label; 2],
    at: Label,
) -> [Label; 2] {
    // Rotate around `at` starting from `e` through inside faces until the
    // next edge bordering an outside face.
    let from = if e[0] == at { e[1] } else { e[0] };
    let faces_at: Vec<Triangle> = t
        .all_faces()
        .map(|(_, f)| sorted(*f))
        .filter(|f| f.contains(&at))
        .collect();
    let mut cur = from;
    let mut prev_face: Option<Triangle> = None;
    loop {
        let f = *faces_at
            .iter()
            .find(|f| f.contains(&cur) && inside.contains(*f) && Some(**f) != prev_face)
            .expect("boundary edge borders an inside face");
        let third = *f.iter().find(|&&x| x != at && x != cur).expect("triangle");
        let edge = [at.min(third), at.max(third)];
        let across = faces_at
            .iter()
            .find(|g| **g != f && g.contains(&third))
            .expect("closed surface");
        if !inside.contains(across) {
            return edge;
        }
        prev_face = Some(f);
        cur = third;
    }
}
