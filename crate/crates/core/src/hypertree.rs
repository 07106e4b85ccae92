//! Hypertree data model, axioms and the combinatorial predicates built on
//! capacity: contraction, restriction, wheels, genericity and boundary
//! contraction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{ground, labels_of, mask_of, size, submasks};
use crate::{Error, Label, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 62;

/// A collection of hyperedges on `{1..n}`, stored sorted so that equality
/// is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypertree {
    n: usize,
    edges: Vec<Vec<Label>>,
    masks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct HypertreeJson {
    n: usize,
    edges: Vec<Vec<Label>>,
}

impl Hypertree {
    /// Normalizes the edge list and rejects malformed input: labels out of
    /// range, edges with fewer than 3 elements, repeated or nested edges,
    /// `n < 3` and empty edge lists.
    pub fn new(n: usize, edges: Vec<Vec<Label>>) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::Input(format!(
                "ground set size {n} outside 3..={MAX_N}"
            )));
        }
        if edges.is_empty() {
            return Err(Error::Input("empty edge list".into()));
        }
        let mut edges = edges;
        for e in &mut edges {
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("edge {e:?} repeats a label")));
            }
            if let Some(&l) = e.iter().find(|&&l| l == 0 || l as usize > n) {
                return Err(Error::Input(format!("label {l} outside 1..={n}")));
            }
            if e.len() < 3 {
                return Err(Error::Input(format!(
                    "edge {e:?} has fewer than 3 elements"
                )));
            }
        }
        edges.sort();
        let masks: Vec<u64> = edges.iter().map(|e| mask_of(e)).collect();
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if i != j && a & b == a {
                    return Err(Error::Input(format!(
                        "edge {:?} is contained in edge {:?}",
                        edges[i], edges[j]
                    )));
                }
            }
        }
        Ok(Hypertree { n, edges, masks })
    }

    pub(crate) fn from_masks(n: usize, masks: &[u64]) -> Result<Self> {
        Self::new(n, masks.iter().map(|&m| labels_of(m)).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HypertreeJson =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::new(raw.n, raw.edges)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "edges": self.edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of hyperedges.
    pub fn d(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Label>] {
        &self.edges
    }

    pub(crate) fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn is_triples(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 3)
    }

    pub(crate) fn full_mask(&self) -> u64 {
        ground(self.n)
    }

    /// Applies `label → perm[label - 1]`.
    pub fn relabel(&self, perm: &[Label]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Input("permutation length differs from n".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&l| perm[l as usize - 1]).collect())
            .collect();
        Self::new(self.n, edges)
    }

    /// `v_i` = number of hyperedges containing `i`, indexed by label - 1.
    pub fn valences(&self) -> Vec<usize> {
        (1..=self.n as Label)
            .map(|l| self.masks.iter().filter(|&&m| m >> l & 1 == 1).count())
            .collect()
    }

    pub fn valence(&self, label: Label) -> usize {
        self.masks.iter().filter(|&&m| m >> label & 1 == 1).count()
    }

    /// The hyperedges as a subset collection on `{1..n}`.
    pub fn as_collection(&self) -> SubsetCollection {
        SubsetCollection::from_masks(self.full_mask(), self.masks.clone())
    }

    /// Checks the axioms. Runs over all `2^d` sub-collections.
    pub fn validate(&self) -> Result<ValidationReport> {
        let d = self.d();
        if d > 26 {
            return Err(Error::Limit(format!(
                "{d} hyperedges is too many for the subset scan"
            )));
        }
        let has_min_size = self.edges.iter().all(|e| e.len() >= 3);
        let val = self.valences();
        let under: Vec<Label> = (1..=self.n as Label)
            .filter(|&l| val[l as usize - 1] < 2)
            .collect();
        let covers_twice = under.is_empty();
        let weight: usize = self.edges.iter().map(|e| e.len() - 2).sum();
        let normalization = weight + 2 == self.n;

        let mut unions = vec![0u64; 1 << d];
        let mut weights = vec![0i64; 1 << d];
        let mut violation: Option<u32> = None;
        let mut equality: Option<u32> = None;
        for s in 1usize..(1 << d) {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            unions[s] = unions[rest] | self.masks[low];
            weights[s] = weights[rest] + self.edges[low].len() as i64 - 2;
            let slack = size(unions[s]) as i64 - 2 - weights[s];
            let card = s.count_ones();
            if slack < 0 && violation.is_none_or(|v| (v as usize).count_ones() > card) {
                violation = Some(s as u32);
            }
            if slack == 0
                && card > 1
                && (card as usize) < d
                && equality.is_none_or(|v| (v as usize).count_ones() > card)
            {
                equality = Some(s as u32);
            }
        }
        let convexity = violation.is_none();
        let irreducible =
            has_min_size && covers_twice && normalization && convexity && equality.is_none();
        let edges_of = |s: u32| (0..d).filter(|&j| s >> j & 1 == 1).collect::<Vec<_>>();
        let witness = if !covers_twice {
            Some(Witness {
                condition: "covers_twice".into(),
                edges: vec![],
                vertices: under,
            })
        } else if !normalization {
            Some(Witness {
                condition: "normalization".into(),
                edges: (0..d).collect(),
                vertices: vec![],
            })
        } else if let Some(s) = violation {
            Some(Witness {
                condition: "convexity".into(),
                edges: edges_of(s),
                vertices: vec![],
            })
        } else {
            equality.map(|s| Witness {
                condition: "irreducible".into(),
                edges: edges_of(s),
                vertices: vec![],
            })
        };
        Ok(ValidationReport {
            has_min_size,
            covers_twice,
            normalization,
            convexity,
            irreducible,
            witness,
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.validate().map(|r| r.irreducible).unwrap_or(false)
    }

    pub(crate) fn require_irreducible(&self) -> Result<()> {
        let report = self.validate()?;
        if report.irreducible {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "hypertree is not irreducible ({:?})",
                report.witness
            )))
        }
    }

    pub(crate) fn require_triples(&self) -> Result<()> {
        if self.is_triples() {
            Ok(())
        } else {
            Err(Error::Precondition("all hyperedges must be triples".into()))
        }
    }

    pub(crate) fn subset_mask(&self, labels: &[Label]) -> Result<u64> {
        if let Some(&l) = labels.iter().find(|&&l| l == 0 || l as usize > self.n) {
            return Err(Error::Input(format!("label {l} outside 1..={}", self.n)));
        }
        Ok(mask_of(labels))
    }

    /// `Γ_I`: labels outside `I` are replaced by the new label `p` (label 0),
    /// parts with fewer than 3 elements are dropped.
    pub fn contract(&self, i: &[Label]) -> Result<SubsetCollection> {
        let m = self.subset_mask(i)?;
        if m == 0 {
            return Err(Error::Precondition(
                "contracted set must be nonempty".into(),
            ));
        }
        Ok(self.contract_mask(m))
    }

    pub(crate) fn contract_mask(&self, i: u64) -> SubsetCollection {
        let outside = self.full_mask() & !i;
        let p = if outside != 0 { 1 } else { 0 };
        let parts = self
            .masks
            .iter()
            .map(|&e| (e & i) | if e & outside != 0 { 1 } else { 0 })
            .filter(|&e| size(e) >= 3);
        SubsetCollection::from_masks(i | p, parts.collect())
    }

    /// `Γ'_I = {Γ_α ∩ I^c : |Γ_α ∩ I^c| ≥ 3}`.
    pub fn restrict(&self, i: &[Label]) -> Result<SubsetCollection> {
        Ok(self.restrict_mask(self.subset_mask(i)?))
    }

    pub(crate) fn restrict_mask(&self, i: u64) -> SubsetCollection {
        let keep = self.full_mask() & !i;
        let parts = self
            .masks
            .iter()
            .map(|&e| e & keep)
            .filter(|&e| size(e) >= 3);
        SubsetCollection::from_masks(keep, parts.collect())
    }

    /// Closed form `Σ (|Γ_α ∩ I^c| − 2)` over the parts that survive.
    pub fn restricted_capacity(&self, i: &[Label]) -> Result<usize> {
        Ok(self.restricted_capacity_mask(self.subset_mask(i)?))
    }

    pub(crate) fn restricted_capacity_mask(&self, i: u64) -> usize {
        let keep = self.full_mask() & !i;
        self.masks
            .iter()
            .map(|&e| size(e & keep))
            .filter(|&s| s >= 3)
            .map(|s| s - 2)
            .sum()
    }

    fn pair_covered(&self, a: Label, b: Label) -> bool {
        let pair = (1u64 << a) | (1u64 << b);
        self.masks.iter().any(|&e| e & pair == pair)
    }

    pub(crate) fn inside_edge(&self, m: u64) -> bool {
        self.masks.iter().any(|&e| e & m == m)
    }

    /// Triples not inside a hyperedge whose three pairs each lie in one.
    pub fn wheels(&self) -> Vec<[Label; 3]> {
        let n = self.n as Label;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if !self.pair_covered(i, j) {
                    continue;
                }
                for k in j + 1..=n {
                    if self.pair_covered(i, k)
                        && self.pair_covered(j, k)
                        && !self.inside_edge(mask_of(&[i, j, k]))
                    {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Every triple that is neither a hyperedge nor a wheel collapses to a
    /// collection of capacity `n − 4` when its three points are identified.
    pub fn is_generic(&self) -> Result<bool> {
        self.require_triples()?;
        self.require_irreducible()?;
        Ok(self.non_generic_triple().is_none())
    }

    /// First triple witnessing non-genericity, if any.
    pub fn non_generic_triple(&self) -> Option<[Label; 3]> {
        let n = self.n as Label;
        let wheels = self.wheels();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let t = mask_of(&[i, j, k]);
                    if self.masks.contains(&t) || wheels.contains(&[i, j, k]) {
                        continue;
                    }
                    if capacity(&self.contract_mask(self.full_mask() & !t)) + 4 != self.n {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    /// Whether the boundary divisor `δ_{I ∪ {n+1}}` is contracted by the
    /// hypertree map, by the combinatorial criterion.
    pub fn is_boundary_contracted(&self, i: &[Label]) -> Result<bool> {
        let m = self.subset_mask(i)?;
        let k = size(m);
        if k == 0 || k + 2 > self.n {
            return Err(Error::Precondition(format!(
                "need 1 <= |I| <= n-2, got {k}"
            )));
        }
        Ok(self.boundary_contracted_mask(m))
    }

    pub(crate) fn boundary_contracted_mask(&self, i: u64) -> bool {
        let outside = self.full_mask() & !i;
        !(size(outside) == 2 || self.inside_edge(outside))
    }

    /// The capacity side of the boundary criterion:
    /// `cap(Γ_I) + cap(Γ'_I)`, which equals `n − 3` exactly when not contracted.
    pub fn boundary_capacity_sum(&self, i: &[Label]) -> Result<usize> {
        let m = self.subset_mask(i)?;
        Ok(capacity(&self.contract_mask(m)) + capacity(&self.restrict_mask(m)))
    }
}

impl fmt::Debug for Hypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypertree(n={}, {:?})", self.n, self.edges)
    }
}

/// Sub-collection index set (0-based positions in the sorted edge list) or
/// vertex set witnessing a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub edges: Vec<usize>,
    pub vertices: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub has_min_size: bool,
    pub covers_twice: bool,
    pub normalization: bool,
    pub convexity: bool,
    pub irreducible: bool,
    pub witness: Option<Witness>,
}

/// Parts on a ground set; label 0 stands for the contraction point `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetCollection {
    ground: u64,
    parts: Vec<u64>,
}

impl SubsetCollection {
    pub fn new(ground: &[Label], parts: &[Vec<Label>]) -> Result<Self> {
        let g = mask_of(ground);
        let mut masks = Vec::with_capacity(parts.len());
        for p in parts {
            let m = mask_of(p);
            if size(m) < 3 || m & !g != 0 {
                return Err(Error::Input(format!(
                    "part {p:?} must have 3+ labels from the ground set"
                )));
            }
            masks.push(m);
        }
        Ok(Self::from_masks(g, masks))
    }

    pub(crate) fn from_masks(ground: u64, mut parts: Vec<u64>) -> Self {
        parts.sort_unstable_by_key(|&m| labels_of(m));
        parts.dedup();
        SubsetCollection { ground, parts }
    }

    pub fn ground(&self) -> Vec<Label> {
        labels_of(self.ground)
    }

    pub fn parts(&self) -> Vec<Vec<Label>> {
        self.parts.iter().map(|&m| labels_of(m)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Debug for SubsetCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: u64| {
            labels_of(m)
                .iter()
                .map(|&l| {
                    if l == 0 {
                        "p".to_string()
                    } else {
                        l.to_string()
                    }
                })
                .collect::<Vec<_>>()
        };
        write!(f, "{{")?;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}", show(p).join(","))?;
        }
        write!(f, "}} on {{{}}}", show(self.ground).join(","))
    }
}

/// Largest `Σ(|Γ'_β| − 2)` over sub-collections satisfying the convexity
/// axiom, where each `Γ'_β` is a subset (3+ elements) of some part.
///
/// Branch and bound over candidate subsets in decreasing weight, carrying the
/// union and weight of every sub-family of the current choice so the axiom
/// can be checked incrementally.
pub fn capacity(c: &SubsetCollection) -> usize {
    let limit = size(c.ground).saturating_sub(2);
    let mut cands: Vec<u64> = Vec::new();
    for &p in &c.parts {
        for s in submasks(p) {
            if size(s) >= 3 {
                cands.push(s);
            }
        }
    }
    cands.sort_unstable_by(|a, b| size(*b).cmp(&size(*a)).then(a.cmp(b)));
    cands.dedup();
    let weights: Vec<usize> = cands.iter().map(|&m| size(m) - 2).collect();
    let mut suffix_union = vec![0u64; cands.len() + 1];
    let mut suffix_weight = vec![0usize; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix_union[i] = suffix_union[i + 1] | cands[i];
        suffix_weight[i] = suffix_weight[i + 1] + weights[i];
    }
    let mut search = CapacitySearch {
        cands: &cands,
        weights: &weights,
        suffix_union,
        suffix_weight,
        limit,
        best: 0,
    };
    let mut table = vec![(0u64, 0usize)];
    search.dfs(0, 0, 0, &mut table);
    search.best
}

struct CapacitySearch<'a> {
    cands: &'a [u64],
    weights: &'a [usize],
    suffix_union: Vec<u64>,
    suffix_weight: Vec<usize>,
    limit: usize,
    best: usize,
}

impl CapacitySearch<'_> {
    /// `table` lists (union, weight) of every sub-family of the chosen parts.
    fn dfs(&mut self, idx: usize, weight: usize, union: u64, table: &mut Vec<(u64, usize)>) {
        if weight > self.best {
            self.best = weight;
        }
        if self.best >= self.limit || idx == self.cands.len() {
            return;
        }
        let reach = size(union | self.suffix_union[idx]).saturating_sub(2);
        if (weight + self.suffix_weight[idx]).min(reach) <= self.best {
            return;
        }
        let x = self.cands[idx];
        let wx = self.weights[idx];
        let fits = table.iter().all(|&(u, w)| size(u | x) >= w + wx + 2);
        if fits {
            let len = table.len();
            for t in 0..len {
                let (u, w) = table[t];
                table.push((u | x, w + wx));
            }
            self.dfs(idx + 1, weight + wx, union | x, table);
            table.truncate(len);
        }
        self.dfs(idx + 1, weight, union, table);
    }
}
