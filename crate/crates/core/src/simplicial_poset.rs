//! Simplicial posets: finite ranked posets with a minimum `0̂` in which
//! every lower interval `[0̂, σ]` is a boolean algebra.
//!
//! Cells are integer ids. Cell `0` is always `0̂`. The poset stores explicit
//! cover lists in both directions and the vertex set `V(σ)` of each cell.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::colored_multigraph::{ColorSet, ColoredGraph, Edge};
use crate::union_find::UnionFind;
use crate::vectors::{FVector, HVector};
use crate::{Error, Result};

pub type CellId = usize;

/// A vertex colouring `P_1 → [1, d]`.
pub type Coloring = BTreeMap<CellId, usize>;

/// Input description of one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSpec {
    pub rank: usize,
    pub covers: Vec<CellId>,
    pub label: String,
}

impl CellSpec {
    pub fn new(rank: usize, covers: Vec<CellId>, label: impl Into<String>) -> Self {
        Self { rank, covers, label: label.into() }
    }
}

/// Where a cell of `P_Λ` comes from: the colour set `S` and the component
/// `H` of `Λ_S` (vertex indices of the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub colors: ColorSet,
    pub component: Vec<usize>,
}

/// Outcome of [`SimplicialPoset::proper_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    Colored(Coloring),
    /// Propagation across this ridge produced a conflict.
    NotColorable { ridge: CellId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPoset {
    d: usize,
    rank: Vec<usize>,
    covers: Vec<Vec<CellId>>,
    covered_by: Vec<Vec<CellId>>,
    labels: Vec<String>,
    by_rank: Vec<Vec<CellId>>,
    vertices: Vec<Vec<CellId>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    d: usize,
    cells: Vec<CellJson>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    id: usize,
    rank: usize,
    covers: Vec<usize>,
    label: String,
}

/// Largest colour count accepted by [`SimplicialPoset::from_graph`]; the
/// construction enumerates all `2^d` colour subsets.
const MAX_GRAPH_COLORS: usize = 24;

impl SimplicialPoset {
    /// Builds and validates a poset. `d` is the largest rank present.
    ///
    /// Checks that cell 0 is the unique rank-0 cell, that a rank-`k` cell
    /// covers `k` distinct rank-`(k-1)` cells, and that every lower interval
    /// is boolean.
    pub fn new(cells: Vec<CellSpec>) -> Result<Self> {
        let n = cells.len();
        if n == 0 || cells[0].rank != 0 || !cells[0].covers.is_empty() {
            return Err(Error::Structural("cell 0 must be the minimum (rank 0, no covers)".into()));
        }
        let d = cells.iter().map(|c| c.rank).max().unwrap_or(0);
        let mut by_rank = vec![Vec::new(); d + 1];
        let mut covered_by = vec![Vec::new(); n];
        for (id, cell) in cells.iter().enumerate() {
            if id > 0 && cell.rank == 0 {
                return Err(Error::Structural(format!("cell {id} has rank 0 but is not the minimum")));
            }
            by_rank[cell.rank].push(id);
            let mut seen = cell.covers.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != cell.covers.len() || cell.covers.len() != cell.rank {
                return Err(Error::Structural(format!(
                    "cell {id} of rank {} must cover exactly {} distinct cells, covers {:?}",
                    cell.rank, cell.rank, cell.covers
                )));
            }
            for &c in &cell.covers {
                if c >= n || cells[c].rank + 1 != cell.rank {
                    return Err(Error::Structural(format!("cell {id} covers {c}, which is not one rank below")));
                }
                covered_by[c].push(id);
            }
        }
        let mut vertices: Vec<Vec<CellId>> = vec![Vec::new(); n];
        for rank in 1..=d {
            for &id in &by_rank[rank] {
                let mut v: Vec<CellId> = if rank == 1 {
                    vec![id]
                } else {
                    cells[id].covers.iter().flat_map(|&c| vertices[c].iter().copied()).collect()
                };
                v.sort_unstable();
                v.dedup();
                if v.len() != rank {
                    return Err(Error::Structural(format!("cell {id} of rank {rank} has {} vertices", v.len())));
                }
                vertices[id] = v;
            }
        }
        let poset = Self {
            d,
            rank: cells.iter().map(|c| c.rank).collect(),
            covers: cells.iter().map(|c| c.covers.clone()).collect(),
            covered_by,
            labels: cells.into_iter().map(|c| c.label).collect(),
            by_rank,
            vertices,
        };
        poset.check_boolean_intervals()?;
        Ok(poset)
    }

    /// Every `[0̂, σ]` must contain exactly `C(k, j)` rank-`j` cells with
    /// pairwise distinct vertex sets.
    fn check_boolean_intervals(&self) -> Result<()> {
        for id in 0..self.cell_count() {
            let k = self.rank[id];
            let below = self.lower_interval(id);
            let mut per_rank = vec![0u64; k + 1];
            let mut seen: HashMap<&[CellId], CellId> = HashMap::with_capacity(below.len());
            for &c in &below {
                per_rank[self.rank[c]] += 1;
                if let Some(other) = seen.insert(&self.vertices[c], c) {
                    return Err(Error::Structural(format!(
                        "interval below cell {id} is not boolean: cells {other} and {c} share a vertex set"
                    )));
                }
            }
            let mut expected = 1u64;
            for (j, &count) in per_rank.iter().enumerate() {
                if count != expected {
                    return Err(Error::Structural(format!(
                        "interval below cell {id} has {count} cells of rank {j}, expected {expected}"
                    )));
                }
                expected = expected * (k - j) as u64 / (j + 1) as u64;
            }
        }
        Ok(())
    }

    /// All cells `τ ≤ σ`, `σ` included.
    pub fn lower_interval(&self, sigma: CellId) -> Vec<CellId> {
        let mut seen = HashSet::from([sigma]);
        let mut out = Vec::new();
        let mut stack = vec![sigma];
        while let Some(c) = stack.pop() {
            out.push(c);
            for &b in &self.covers[c] {
                if seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        out
    }

    /// All cells `τ ≥ σ`, `σ` included.
    pub fn upper_set(&self, sigma: CellId) -> Vec<CellId> {
        let mut seen = vec![false; self.cell_count()];
        seen[sigma] = true;
        let mut out = Vec::new();
        let mut stack = vec![sigma];
        while let Some(c) = stack.pop() {
            out.push(c);
            for &a in &self.covered_by[c] {
                if !std::mem::replace(&mut seen[a], true) {
                    stack.push(a);
                }
            }
        }
        out
    }

    /// `d`: rank of the facets of a pure poset (dimension + 1).
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cell_count(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, cell: CellId) -> usize {
        self.rank[cell]
    }

    pub fn covers(&self, cell: CellId) -> &[CellId] {
        &self.covers[cell]
    }

    pub fn covered_by(&self, cell: CellId) -> &[CellId] {
        &self.covered_by[cell]
    }

    pub fn label(&self, cell: CellId) -> &str {
        &self.labels[cell]
    }

    /// `V(σ)`: the rank-1 cells below `σ`, sorted.
    pub fn vertex_set(&self, cell: CellId) -> &[CellId] {
        &self.vertices[cell]
    }

    pub fn cells_of_rank(&self, rank: usize) -> &[CellId] {
        self.by_rank.get(rank).map_or(&[], Vec::as_slice)
    }

    /// Maximal cells.
    pub fn facets(&self) -> Vec<CellId> {
        (0..self.cell_count()).filter(|&c| self.covered_by[c].is_empty()).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.by_rank.iter().map(|cells| cells.len() as u64).collect()).expect("f_0 = 1")
    }

    pub fn h_vector(&self) -> HVector {
        h_vector(&self.f_vector())
    }

    /// The unique face of `σ` whose vertex set is `subset` (sorted).
    pub fn face_with_vertices(&self, sigma: CellId, subset: &[CellId]) -> Option<CellId> {
        let contains = |c: CellId| subset.iter().all(|v| self.vertices[c].binary_search(v).is_ok());
        if !contains(sigma) {
            return None;
        }
        let mut cur = sigma;
        while self.rank[cur] > subset.len() {
            cur = *self.covers[cur].iter().find(|&&c| contains(c))?;
        }
        Some(cur)
    }

    /// The link `P_{≥σ}`, re-rooted at `σ`; ranks drop by `rank(σ)`.
    pub fn link(&self, sigma: CellId) -> Result<SimplicialPoset> {
        if sigma >= self.cell_count() {
            return Err(Error::InvalidArgument(format!("unknown cell {sigma}")));
        }
        if sigma == 0 {
            return Ok(self.clone());
        }
        let mut up = self.upper_set(sigma);
        up.sort_by_key(|&c| (self.rank[c], c));
        let base = self.rank[sigma];
        let new_id: HashMap<CellId, CellId> = up.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let cells = up
            .iter()
            .map(|&c| {
                let covers = self.covers[c].iter().filter_map(|b| new_id.get(b).copied()).collect();
                CellSpec::new(self.rank[c] - base, covers, self.labels[c].clone())
            })
            .collect();
        SimplicialPoset::new(cells)
    }

    pub fn is_pure(&self) -> bool {
        self.facets().iter().all(|&f| self.rank[f] == self.d)
    }

    /// Connected components of the facet–ridge adjacency graph.
    fn facet_ridge_classes(&self) -> Vec<Vec<CellId>> {
        let facets = self.cells_of_rank(self.d);
        let pos: HashMap<CellId, usize> = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut uf = UnionFind::new(facets.len());
        if self.d >= 1 {
            for &ridge in self.cells_of_rank(self.d - 1) {
                let ups = &self.covered_by[ridge];
                for w in ups.windows(2) {
                    uf.union(pos[&w[0]], pos[&w[1]]);
                }
            }
        }
        uf.classes().into_iter().map(|cls| cls.into_iter().map(|i| facets[i]).collect()).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.facet_ridge_classes().len() == 1
    }

    /// Pure, every ridge under exactly two facets, strongly connected.
    pub fn is_pseudomanifold(&self) -> bool {
        self.d >= 1
            && self.is_pure()
            && self.cells_of_rank(self.d - 1).iter().all(|&r| self.covered_by[r].len() == 2)
            && self.is_strongly_connected()
    }

    /// Whether the 1-skeleton is connected (and nonempty).
    pub fn is_connected(&self) -> bool {
        let verts = self.cells_of_rank(1);
        if verts.is_empty() {
            return false;
        }
        let pos: HashMap<CellId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for &e in self.cells_of_rank(2) {
            let v = &self.vertices[e];
            uf.union(pos[&v[0]], pos[&v[1]]);
        }
        uf.classes().len() == 1
    }

    /// A pseudomanifold in which the link of every cell of rank `≤ d-2` is
    /// connected.
    pub fn is_normal(&self) -> bool {
        if !self.is_pseudomanifold() {
            return false;
        }
        (0..self.cell_count())
            .filter(|&c| self.rank[c] + 2 <= self.d)
            .all(|c| self.link(c).map(|l| l.is_connected()).unwrap_or(false))
    }

    /// Colours the vertices so that every facet is rainbow, by forced
    /// propagation across ridges from the first facet (whose vertices get
    /// colours `1..d` in id order).
    pub fn proper_coloring(&self) -> Result<ColoringOutcome> {
        if self.d == 0 || !self.is_pure() || !self.is_strongly_connected() {
            return Err(Error::Precondition("proper coloring needs a pure, strongly connected poset".into()));
        }
        let facets = self.cells_of_rank(self.d);
        let mut color: HashMap<CellId, usize> = HashMap::new();
        let seed = facets[0];
        for (i, &v) in self.vertices[seed].iter().enumerate() {
            color.insert(v, i + 1);
        }
        let mut visited: HashMap<CellId, bool> = facets.iter().map(|&f| (f, false)).collect();
        visited.insert(seed, true);
        let mut queue = VecDeque::from([seed]);
        while let Some(facet) = queue.pop_front() {
            for &ridge in &self.covers[facet] {
                let ridge_vs = &self.vertices[ridge];
                let apex = |f: CellId| *self.vertices[f].iter().find(|v| ridge_vs.binary_search(v).is_err()).unwrap();
                let forced = color[&apex(facet)];
                for &other in self.covered_by[ridge].iter().filter(|&&f| f != facet) {
                    let w = apex(other);
                    match color.get(&w) {
                        Some(&c) if c != forced => return Ok(ColoringOutcome::NotColorable { ridge }),
                        Some(_) => {}
                        None => {
                            color.insert(w, forced);
                        }
                    }
                    let used: ColorSet = self.vertices[other].iter().map(|v| color[v]).collect();
                    if used.len() != self.d {
                        return Ok(ColoringOutcome::NotColorable { ridge });
                    }
                    if !std::mem::replace(visited.get_mut(&other).unwrap(), true) {
                        queue.push_back(other);
                    }
                }
            }
        }
        Ok(ColoringOutcome::Colored(color.into_iter().collect()))
    }

    /// The poset `P_Λ` of an admissible graph.
    pub fn from_graph(graph: &ColoredGraph) -> Result<SimplicialPoset> {
        Ok(Self::from_graph_with_provenance(graph)?.0)
    }

    /// [`from_graph`](Self::from_graph), also returning the `(S, H)` pair
    /// behind each cell.
    ///
    /// Cells are the pairs `(H, S)` with `H` a component of `Λ_S`, of rank
    /// `d - |S|`. `(H, S)` covers `(H', S ∪ {i})` for each `i ∉ S`, `H'` the
    /// component containing `H`. Cells are ordered by rank, then by the
    /// sorted complement of `S`, then by least vertex of `H`. A facet
    /// `({v}, ∅)` is labelled by the graph vertex `v`; other cells by
    /// `"{S}@v"` with `v` the least vertex of `H`.
    pub fn from_graph_with_provenance(graph: &ColoredGraph) -> Result<(SimplicialPoset, Vec<Provenance>)> {
        graph.require_admissible()?;
        let d = graph.d();
        if d > MAX_GRAPH_COLORS {
            return Err(Error::TooLarge(format!("{d} colors; at most {MAX_GRAPH_COLORS} supported")));
        }
        let subsets: Vec<ColorSet> = (0..1u64 << d).map(ColorSet::from_bits).collect();
        let comps: Vec<(Vec<usize>, usize)> = subsets.iter().map(|&s| graph.component_index(s)).collect();

        let mut order: Vec<ColorSet> = subsets.clone();
        order.sort_by_key(|s| (d - s.len(), s.complement(d).to_vec()));
        let mut first_id = vec![0usize; subsets.len()];
        let mut next = 0;
        for s in &order {
            first_id[s.bits() as usize] = next;
            next += comps[s.bits() as usize].1;
        }

        let mut cells = Vec::with_capacity(next);
        let mut provenance = Vec::with_capacity(next);
        for &s in &order {
            let (idx, count) = &comps[s.bits() as usize];
            let mut members = vec![Vec::new(); *count];
            for (v, &c) in idx.iter().enumerate() {
                members[c].push(v);
            }
            for component in members {
                let rep = component[0];
                let covers = s
                    .complement(d)
                    .iter()
                    .map(|i| {
                        let t = s.with(i).bits() as usize;
                        first_id[t] + comps[t].0[rep]
                    })
                    .collect();
                let label = if s.is_empty() {
                    graph.label(rep).to_owned()
                } else {
                    format!("{s}@{}", graph.label(rep))
                };
                cells.push(CellSpec::new(d - s.len(), covers, label));
                provenance.push(Provenance { colors: s, component });
            }
        }
        Ok((SimplicialPoset::new(cells)?, provenance))
    }

    /// The dual graph of a `d`-colored pseudomanifold: facets become
    /// vertices, ridges become edges, coloured by the colour missing from
    /// the ridge.
    pub fn to_graph(&self, coloring: &Coloring) -> Result<ColoredGraph> {
        if !self.is_pseudomanifold() {
            return Err(Error::Precondition("to_graph needs a pseudomanifold".into()));
        }
        let d = self.d;
        let colors_of = |cell: CellId| -> Result<ColorSet> {
            let mut s = ColorSet::empty();
            for v in &self.vertices[cell] {
                match coloring.get(v) {
                    Some(&c) if (1..=d).contains(&c) && !s.contains(c) => s.insert(c),
                    _ => return Err(Error::Precondition(format!("coloring is not proper on cell {cell}"))),
                }
            }
            Ok(s)
        };
        let facets = self.cells_of_rank(d);
        for &f in facets {
            colors_of(f)?;
        }
        let pos: HashMap<CellId, usize> = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut labels: Vec<String> = facets.iter().map(|&f| self.labels[f].clone()).collect();
        let mut unique = labels.clone();
        unique.sort();
        unique.dedup();
        if unique.len() != labels.len() {
            labels = facets.iter().map(|f| format!("F{f}")).collect();
        }
        let mut edges = Vec::new();
        for &ridge in self.cells_of_rank(d - 1) {
            let missing = colors_of(ridge)?.complement(d);
            let color = missing.iter().next().expect("ridge misses one color");
            let ups = &self.covered_by[ridge];
            edges.push(Edge::new(pos[&ups[0]], pos[&ups[1]], color));
        }
        let graph = ColoredGraph::new(d, labels, edges)?;
        graph.require_admissible()?;
        Ok(graph)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("poset serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("poset serializes")
    }

    fn to_raw(&self) -> PosetJson {
        PosetJson {
            d: self.d,
            cells: (0..self.cell_count())
                .map(|id| CellJson {
                    id,
                    rank: self.rank[id],
                    covers: self.covers[id].clone(),
                    label: self.labels[id].clone(),
                })
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<SimplicialPoset> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<SimplicialPoset> {
        let raw: PosetJson = serde_json::from_value(value)?;
        let n = raw.cells.len();
        let mut slots: Vec<Option<CellSpec>> = vec![None; n];
        for c in raw.cells {
            let slot = slots
                .get_mut(c.id)
                .ok_or_else(|| Error::InvalidArgument(format!("cell id {} out of range", c.id)))?;
            if slot.replace(CellSpec::new(c.rank, c.covers, c.label)).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate cell id {}", c.id)));
            }
        }
        let poset = SimplicialPoset::new(slots.into_iter().map(|s| s.expect("ids are a permutation")).collect())?;
        if poset.d != raw.d {
            return Err(Error::InvalidArgument(format!("declared d = {} but cells reach rank {}", raw.d, poset.d)));
        }
        Ok(poset)
    }
}

/// `h`-vector of an `f`-vector; see [`FVector::h_vector`].
pub fn h_vector(f: &FVector) -> HVector {
    f.h_vector()
}

/// The colouring `ψ((H, [d]∖{i})) = i` carried by a graphical poset.
pub fn graph_coloring(poset: &SimplicialPoset, provenance: &[Provenance]) -> Coloring {
    let d = poset.d();
    poset
        .cells_of_rank(1)
        .iter()
        .map(|&v| {
            let missing = provenance[v].colors.complement(d);
            (v, missing.iter().next().expect("vertex misses one color"))
        })
        .collect()
}
