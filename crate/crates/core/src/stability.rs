//! Dual graph of the stable hypertree curve and Gieseker's basic inequality.

use serde::Serialize;

use crate::{Error, Hypertree, Label, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    /// One per hyperedge (index into the sorted edge list).
    Black { edge: usize },
    /// One per vertex of valence above 2.
    White { vertex: Label },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub nodes: Vec<usize>,
    /// Degree of the dualizing sheaf on the component: nodes − 2.
    pub dualizing_degree: i64,
}

/// A node joins two components; `vertex` is the hypertree vertex it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub a: usize,
    pub b: usize,
    pub vertex: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableCurveGraph {
    pub components: Vec<Component>,
    pub nodes: Vec<Node>,
    /// Number of black components, i.e. the number of hyperedges.
    pub d: usize,
}

impl StableCurveGraph {
    pub fn black_count(&self) -> usize {
        self.d
    }

    pub fn white_count(&self) -> usize {
        self.components.len() - self.d
    }

    pub fn total_dualizing_degree(&self) -> i64 {
        self.components.iter().map(|c| c.dualizing_degree).sum()
    }

    /// 1 on black components, 0 on white ones.
    pub fn canonical_multidegree(&self) -> Vec<i64> {
        self.components
            .iter()
            .map(|c| matches!(c.kind, ComponentKind::Black { .. }) as i64)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let k = self.components.len();
        if k == 0 {
            return true;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &ni in &self.components[c].nodes {
                let node = self.nodes[ni];
                let other = if node.a == c { node.b } else { node.a };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Black component per hyperedge; a vertex of valence 2 becomes a node
/// between its two black components, a vertex of higher valence becomes a
/// white component meeting each black component through it.
pub fn stable_model(h: &Hypertree) -> StableCurveGraph {
    let d = h.d();
    let mut components: Vec<Component> = (0..d)
        .map(|edge| Component {
            kind: ComponentKind::Black { edge },
            nodes: Vec::new(),
            dualizing_degree: 0,
        })
        .collect();
    let mut nodes = Vec::new();
    let mut link = |components: &mut Vec<Component>, a: usize, b: usize, vertex: Label| {
        let id = nodes.len();
        nodes.push(Node { a, b, vertex });
        components[a].nodes.push(id);
        components[b].nodes.push(id);
    };
    for v in 1..=h.n() as Label {
        let through: Vec<usize> = (0..d).filter(|&j| h.masks()[j] >> v & 1 == 1).collect();
        match through.len() {
            0 | 1 => {}
            2 => link(&mut components, through[0], through[1], v),
            _ => {
                let w = components.len();
                components.push(Component {
                    kind: ComponentKind::White { vertex: v },
                    nodes: Vec::new(),
                    dualizing_degree: 0,
                });
                for &j in &through {
                    link(&mut components, j, w, v);
                }
            }
        }
    }
    for c in &mut components {
        c.dualizing_degree = c.nodes.len() as i64 - 2;
    }
    StableCurveGraph {
        components,
        nodes,
        d,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GiesekerReport {
    pub stable: bool,
    pub subcurves_checked: u64,
    /// First violating subcurve (component indices), if any.
    pub violation: Option<Vec<usize>>,
}

/// Checks `|(2d−4)·b(Y) − d·m(Y)| < (d−2)·#Y` over every proper nonempty
/// subcurve `Y`.
pub fn gieseker_stable(g: &StableCurveGraph, multidegree: &[i64]) -> Result<GiesekerReport> {
    let d = g.d as i64;
    if d <= 2 {
        return Err(Error::Precondition(format!(
            "degenerate curve: d = {d} <= 2"
        )));
    }
    let k = g.components.len();
    if multidegree.len() != k {
        return Err(Error::Input(format!(
            "multidegree has {} entries for {k} components",
            multidegree.len()
        )));
    }
    if k > 30 {
        return Err(Error::Limit(format!(
            "{k} components is too many for the subcurve scan"
        )));
    }
    let mut checked = 0;
    for y in 1u64..(1u64 << k) - 1 {
        checked += 1;
        let inside = |c: usize| y >> c & 1 == 1;
        let (mut b, mut m) = (0i64, 0i64);
        for c in (0..k).filter(|&c| inside(c)) {
            b += multidegree[c];
            m += g.components[c].dualizing_degree;
        }
        let cut = g
            .nodes
            .iter()
            .filter(|n| inside(n.a) != inside(n.b))
            .count() as i64;
        if ((2 * d - 4) * b - d * m).abs() >= (d - 2) * cut {
            let members = (0..k).filter(|&c| inside(c)).collect();
            return Ok(GiesekerReport {
                stable: false,
                subcurves_checked: checked,
                violation: Some(members),
            });
        }
    }
    Ok(GiesekerReport {
        stable: true,
        subcurves_checked: checked,
        violation: None,
    })
}
