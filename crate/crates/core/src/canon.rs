//! Canonical labeling of hypergraphs by partition refinement and
//! individualization, with automorphism pruning.

use serde::Serialize;

use crate::{Error, Hypertree, Label, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalHypertree {
    pub hypertree: Hypertree,
    pub automorphism_order: u64,
    pub certificate: Vec<u8>,
}

impl Serialize for Hypertree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Vertices `0..n`, edges as bitmasks over those vertices.
pub(crate) struct Hypergraph<'a> {
    pub n: usize,
    pub edges: &'a [u64],
}

/// Result of a canonical-labeling run.
pub(crate) struct Labeling {
    /// Relabeled edges, sorted ascending.
    pub canonical: Vec<u64>,
    /// `label[v]` = new index of vertex `v`.
    pub label: Vec<usize>,
    /// Order of the automorphism group, when requested.
    pub automorphisms: Option<u64>,
}

struct Search<'a> {
    g: &'a Hypergraph<'a>,
    incident: Vec<Vec<usize>>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<Vec<u64>>,
    gens: Vec<Vec<usize>>,
    count_mode: bool,
    first_matches: u64,
}

impl Search<'_> {
    fn cells(colors: &[usize]) -> usize {
        let mut seen = vec![false; colors.len()];
        colors
            .iter()
            .filter(|&&c| !std::mem::replace(&mut seen[c], true))
            .count()
    }

    /// Repartitions by (color, multiset of incident-edge color multisets)
    /// until stable. Colors are cell start positions, so refinement keeps
    /// the cell order and is label-independent.
    fn refine(&self, colors: &mut Vec<usize>) {
        let n = self.g.n;
        let mut cells = Self::cells(colors);
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            let edge_hash: Vec<u64> = self
                .g
                .edges
                .iter()
                .map(|&e| {
                    let mut h = 0u64;
                    let mut m = e;
                    while m != 0 {
                        h = h.wrapping_add(mix(colors[m.trailing_zeros() as usize] as u64));
                        m &= m - 1;
                    }
                    mix(h ^ e.count_ones() as u64)
                })
                .collect();
            let keys: Vec<u64> = (0..n)
                .map(|v| {
                    self.incident[v]
                        .iter()
                        .fold(0u64, |acc, &e| acc.wrapping_add(mix(edge_hash[e])))
                })
                .collect();
            order.sort_unstable_by_key(|&v| (colors[v], keys[v]));
            let mut next = vec![0; n];
            for i in 0..n {
                let v = order[i];
                next[v] = if i > 0
                    && (colors[order[i - 1]], keys[order[i - 1]]) == (colors[v], keys[v])
                {
                    next[order[i - 1]]
                } else {
                    i
                };
            }
            *colors = next;
            let now = Self::cells(colors);
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn initial_colors(&self) -> Vec<usize> {
        let n = self.g.n;
        let key = |v: usize| {
            let inc = &self.incident[v];
            let sizes = inc.iter().fold(0u64, |acc, &e| {
                acc.wrapping_add(mix(self.g.edges[e].count_ones() as u64))
            });
            (inc.is_empty(), inc.len(), sizes)
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&v| key(v));
        let mut colors = vec![0; n];
        for i in 0..n {
            let v = order[i];
            colors[v] = if i > 0 && key(order[i - 1]) == key(v) {
                colors[order[i - 1]]
            } else {
                i
            };
        }
        self.refine(&mut colors);
        colors
    }

    fn target_cell(&self, colors: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.n;
        let mut size = vec![0usize; n];
        for &c in colors {
            size[c] += 1;
        }
        let c = (0..n).find(|&c| {
            size[c] > 1 && (0..n).any(|v| colors[v] == c && !self.incident[v].is_empty())
        })?;
        Some((0..n).filter(|&v| colors[v] == c).collect())
    }

    fn leaf(&mut self, colors: &[usize]) {
        let n = self.g.n;
        // Remaining ties are among isolated vertices; break them by index.
        let mut label = colors.to_vec();
        let mut used = vec![0usize; n];
        for v in 0..n {
            label[v] = colors[v] + used[colors[v]];
            used[colors[v]] += 1;
        }
        let mut canonical: Vec<u64> = self
            .g
            .edges
            .iter()
            .map(|&e| {
                let mut out = 0u64;
                let mut m = e;
                while m != 0 {
                    out |= 1 << label[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                out
            })
            .collect();
        canonical.sort_unstable();
        if self.count_mode {
            match &self.first {
                None => {
                    self.first = Some(canonical.clone());
                    self.first_matches = 1;
                }
                Some(f) if *f == canonical => self.first_matches += 1,
                Some(_) => {}
            }
        }
        match &self.best {
            Some((b, best_label)) if *b == canonical => {
                if !self.count_mode {
                    let mut inverse = vec![0; n];
                    for (u, &l) in best_label.iter().enumerate() {
                        inverse[l] = u;
                    }
                    let gamma: Vec<usize> = (0..n).map(|v| inverse[label[v]]).collect();
                    if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.gens.push(gamma);
                    }
                }
            }
            Some((b, _)) if *b < canonical => {}
            _ => self.best = Some((canonical, label)),
        }
    }

    fn orbit_roots(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in self
            .gens
            .iter()
            .filter(|g| prefix.iter().all(|&v| g[v] == v))
        {
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn explore(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let Some(cell) = self.target_cell(&colors) else {
            self.leaf(&colors);
            return;
        };
        let mut tried_roots: Vec<usize> = Vec::new();
        for &v in &cell {
            if !self.count_mode {
                let roots = self.orbit_roots(prefix);
                if tried_roots.iter().any(|&t| roots[t] == roots[v]) {
                    continue;
                }
            }
            tried_roots.push(v);
            let mut next = colors.clone();
            for &u in &cell {
                if u != v {
                    next[u] = colors[v] + 1;
                }
            }
            self.refine(&mut next);
            prefix.push(v);
            self.explore(next, prefix);
            prefix.pop();
        }
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Canonical labeling; with `count_automorphisms` the search runs without
/// pruning and also reports the automorphism group order.
pub(crate) fn canonical_labeling(g: &Hypergraph<'_>, count_automorphisms: bool) -> Labeling {
    let mut incident = vec![Vec::new(); g.n];
    for (i, &e) in g.edges.iter().enumerate() {
        for (v, inc) in incident.iter_mut().enumerate() {
            if e >> v & 1 == 1 {
                inc.push(i);
            }
        }
    }
    let isolated = incident.iter().filter(|i| i.is_empty()).count();
    let mut s = Search {
        g,
        incident,
        best: None,
        first: None,
        gens: Vec::new(),
        count_mode: count_automorphisms,
        first_matches: 0,
    };
    let colors = s.initial_colors();
    s.explore(colors, &mut Vec::new());
    let (canonical, label) = s.best.expect("search reaches at least one leaf");
    let automorphisms = count_automorphisms.then(|| s.first_matches * factorial(isolated));
    Labeling {
        canonical,
        label,
        automorphisms,
    }
}

fn zero_based(h: &Hypertree) -> Vec<u64> {
    h.masks().iter().map(|&m| m >> 1).collect()
}

/// Canonical relabeling, automorphism group order and certificate.
pub fn canonical_form(h: &Hypertree) -> CanonicalHypertree {
    let edges = zero_based(h);
    let g = Hypergraph {
        n: h.n(),
        edges: &edges,
    };
    let lab = canonical_labeling(&g, true);
    let perm: Vec<Label> = lab.label.iter().map(|&l| l as Label + 1).collect();
    let hypertree = h
        .relabel(&perm)
        .expect("a relabeling of a valid hypertree is valid");
    let certificate = certificate_bytes(&hypertree);
    CanonicalHypertree {
        hypertree,
        automorphism_order: lab.automorphisms.unwrap_or(1),
        certificate,
    }
}

/// Byte encoding of a hypertree: `n`, `d`, then each edge as its size
/// followed by its labels.
pub fn certificate_bytes(h: &Hypertree) -> Vec<u8> {
    let mut out = vec![h.n() as u8, h.d() as u8];
    for e in h.edges() {
        out.push(e.len() as u8);
        out.extend(e.iter().map(|&l| l as u8));
    }
    out
}

/// Certificate of the canonical form, without counting automorphisms.
pub fn certificate(h: &Hypertree) -> Vec<u8> {
    let edges = zero_based(h);
    let g = Hypergraph {
        n: h.n(),
        edges: &edges,
    };
    let lab = canonical_labeling(&g, false);
    let perm: Vec<Label> = lab.label.iter().map(|&l| l as Label + 1).collect();
    certificate_bytes(&h.relabel(&perm).expect("relabeling is valid"))
}

pub fn is_isomorphic(a: &Hypertree, b: &Hypertree) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::Input(format!(
            "ground sets differ: n = {} vs n = {}",
            a.n(),
            b.n()
        )));
    }
    Ok(a.d() == b.d() && certificate(a) == certificate(b))
}
