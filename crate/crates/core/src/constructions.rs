//! Explicit constructions: the staircase triangulation of a product of
//! simplices, the colored graph `Λ(n, m)` presenting `S^n × S^m`, the
//! antipodal quotient of the cross-polytope boundary (`ℝP^{n-1}`),
//! connected sums, and simplex boundaries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::colored_multigraph::{ColoredGraph, Edge};
use crate::simplicial_poset::{CellId, CellSpec, Coloring, SimplicialPoset};
use crate::{Error, Result};

/// All `k`-subsets of `lo..=hi` in lexicographic order. Empty range when
/// `hi < lo`.
pub fn subsets_of_size(lo: usize, hi: usize, k: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = if hi < lo { Vec::new() } else { (lo..=hi).collect() };
    let mut out = Vec::new();
    if k > pool.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + pool.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn check_subset(n: usize, m: usize, set: &[usize]) -> Result<()> {
    let sorted = set.windows(2).all(|w| w[0] < w[1]);
    if !sorted || set.len() != n || set.iter().any(|&x| x == 0 || x > n + m) {
        return Err(Error::InvalidArgument(format!(
            "expected an increasing {n}-subset of [1,{}], got {set:?}",
            n + m
        )));
    }
    Ok(())
}

/// A step of a monotone lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `(1, 0)`
    Right,
    /// `(0, 1)`
    Up,
}

/// The facet `F(S)` of the staircase triangulation of `Δ^n × Δ^m`: the
/// lattice path from `(0,0)` to `(n,m)` stepping right at positions in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseFacet {
    pub n: usize,
    pub m: usize,
    pub set: Vec<usize>,
    pub steps: Vec<Step>,
    /// Lattice points `(i_l, j_l)` for `l = 0..=n+m`; point `(i, j)` is the
    /// vertex `w_{ij}`.
    pub path: Vec<(usize, usize)>,
}

impl StaircaseFacet {
    /// Colour `i + j + 1` of each vertex along the path.
    pub fn colors(&self) -> Vec<usize> {
        self.path.iter().map(|&(i, j)| i + j + 1).collect()
    }
}

pub fn staircase_facet(n: usize, m: usize, set: &[usize]) -> Result<StaircaseFacet> {
    check_subset(n, m, set)?;
    let steps: Vec<Step> =
        (1..=n + m).map(|l| if set.contains(&l) { Step::Right } else { Step::Up }).collect();
    let mut path = vec![(0, 0)];
    for step in &steps {
        let (i, j) = *path.last().unwrap();
        path.push(match step {
            Step::Right => (i + 1, j),
            Step::Up => (i, j + 1),
        });
    }
    Ok(StaircaseFacet { n, m, set: set.to_vec(), steps, path })
}

/// One of the four staircase blocks glued into `S^n × S^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    A,
    B,
    C,
    D,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::A, Block::B, Block::C, Block::D];

    /// `A ↔ B`, `C ↔ D`.
    fn swap_first_sphere(self) -> Block {
        match self {
            Block::A => Block::B,
            Block::B => Block::A,
            Block::C => Block::D,
            Block::D => Block::C,
        }
    }

    /// `A ↔ C`, `B ↔ D`.
    fn swap_second_sphere(self) -> Block {
        match self {
            Block::A => Block::C,
            Block::C => Block::A,
            Block::B => Block::D,
            Block::D => Block::B,
        }
    }
}

/// Vertex label of `Λ(n, m)`: a block and an `n`-subset, written `"A:{1,2}"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSpheresLabel {
    pub block: Block,
    pub set: Vec<usize>,
}

impl ProductSpheresLabel {
    pub fn new(block: Block, set: Vec<usize>) -> Self {
        Self { block, set }
    }
}

impl fmt::Display for ProductSpheresLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}", self.block, format_set(&self.set))
    }
}

impl FromStr for ProductSpheresLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a product-spheres label: {s:?}"));
        let (block, rest) = s.split_once(':').ok_or_else(bad)?;
        let block = match block {
            "A" => Block::A,
            "B" => Block::B,
            "C" => Block::C,
            "D" => Block::D,
            _ => return Err(bad()),
        };
        let inner = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let set = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|x| x.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        Ok(Self { block, set })
    }
}

/// The admissible `(n+m+1)`-colored graph `Λ(n, m)` presenting `S^n × S^m`.
///
/// Vertices are `X(S)` for `X ∈ {A,B,C,D}` and `S` an `n`-subset of
/// `[n+m]`. For colour `k` put `K = {k-1, k}`, with `K = {1}` when `k = 1`
/// and `K = {n+m}` when `k = n+m+1`. Then `X(S)` meets exactly one
/// colour-`k` edge:
///
/// - `K ∩ S = ∅`: `A(S)–B(S)`, `C(S)–D(S)`;
/// - `K ⊆ S`: `A(S)–C(S)`, `B(S)–D(S)`;
/// - otherwise (`2 ≤ k ≤ n+m`, exactly one of `k-1, k` in `S`): `X(S)` to
///   `X(S')` where `S'` swaps `k-1` and `k`.
pub fn product_spheres_graph(n: usize, m: usize) -> Result<ColoredGraph> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("need n, m ≥ 1, got n = {n}, m = {m}")));
    }
    let d = n + m + 1;
    let sets = subsets_of_size(1, n + m, n);
    let labels: Vec<ProductSpheresLabel> = Block::ALL
        .iter()
        .flat_map(|&b| sets.iter().map(move |s| ProductSpheresLabel::new(b, s.clone())))
        .collect();
    let index: HashMap<&ProductSpheresLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();

    let mut edges = Vec::new();
    for (u, label) in labels.iter().enumerate() {
        for k in 1..=d {
            let window: Vec<usize> = match k {
                1 => vec![1],
                k if k == d => vec![n + m],
                k => vec![k - 1, k],
            };
            let inside = window.iter().filter(|x| label.set.contains(x)).count();
            let partner = if inside == 0 {
                ProductSpheresLabel::new(label.block.swap_first_sphere(), label.set.clone())
            } else if inside == window.len() {
                ProductSpheresLabel::new(label.block.swap_second_sphere(), label.set.clone())
            } else {
                let mut set: Vec<usize> = label
                    .set
                    .iter()
                    .map(|&x| if x == k { k - 1 } else if x == k - 1 { k } else { x })
                    .collect();
                set.sort_unstable();
                ProductSpheresLabel::new(label.block, set)
            };
            let v = index[&partner];
            if u < v {
                edges.push(Edge::new(u, v, k));
            }
        }
    }
    ColoredGraph::new(d, labels.iter().map(ToString::to_string).collect(), edges)
}

/// Antipodal quotient of the boundary of the `n`-dimensional
/// cross-polytope: a simplicial cell decomposition of `ℝP^{n-1}` with `n`
/// vertices and `2^{n-1}` facets.
///
/// A face is a set of signed coordinates `±i` with no antipodal pair; each
/// orbit `{F, -F}` is represented by the member whose smallest coordinate
/// is positive and labelled like `"{+1,-3}"`.
pub fn cross_polytope_quotient(n: usize) -> Result<SimplicialPoset> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n ≥ 2, got {n}")));
    }
    if n > 16 {
        return Err(Error::TooLarge(format!("cross-polytope quotient for n = {n}")));
    }
    // signs[i] ∈ {0, +1, -1} per coordinate; canonical: first nonzero is +1.
    let mut faces: Vec<Vec<i32>> = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let mut face = Vec::new();
        for coord in 1..=n as i32 {
            match c % 3 {
                1 => face.push(coord),
                2 => face.push(-coord),
                _ => {}
            }
            c /= 3;
        }
        if face[0] > 0 {
            faces.push(face);
        }
    }
    let key = |f: &Vec<i32>| -> Vec<(i32, bool)> { f.iter().map(|&x| (x.abs(), x < 0)).collect() };
    faces.sort_by_key(|f| (f.len(), key(f)));
    let index: HashMap<Vec<i32>, usize> = faces.iter().enumerate().map(|(i, f)| (f.clone(), i + 1)).collect();
    let canonical = |f: Vec<i32>| -> Vec<i32> {
        if f[0] < 0 {
            f.into_iter().map(|x| -x).collect()
        } else {
            f
        }
    };
    let mut cells = vec![CellSpec::new(0, vec![], "0")];
    for face in &faces {
        let covers = if face.len() == 1 {
            vec![0]
        } else {
            (0..face.len())
                .map(|drop| {
                    let sub: Vec<i32> =
                        face.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                    index[&canonical(sub)]
                })
                .collect()
        };
        let label: Vec<String> = face.iter().map(|x| format!("{x:+}")).collect();
        cells.push(CellSpec::new(face.len(), covers, format!("{{{}}}", label.join(","))));
    }
    SimplicialPoset::new(cells)
}

/// Boundary of the `d`-simplex on vertices `1..=d+1`; a `(d-1)`-sphere
/// with `f_i = C(d+1, i)`.
pub fn boundary_of_simplex(d: usize) -> Result<SimplicialPoset> {
    if d == 0 {
        return Err(Error::InvalidArgument("need d ≥ 1".into()));
    }
    if d > 20 {
        return Err(Error::TooLarge(format!("boundary of the {d}-simplex")));
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for k in 1..=d {
        faces.extend(subsets_of_size(1, d + 1, k));
    }
    let index: HashMap<&[usize], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i + 1)).collect();
    let mut cells = vec![CellSpec::new(0, vec![], "0")];
    for face in &faces {
        let covers = if face.len() == 1 {
            vec![0]
        } else {
            (0..face.len())
                .map(|drop| {
                    let sub: Vec<usize> =
                        face.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                    index[sub.as_slice()]
                })
                .collect()
        };
        cells.push(CellSpec::new(face.len(), covers, format_set(face)));
    }
    SimplicialPoset::new(cells)
}

/// Connected sum `P #_{σ,τ} Q`: remove the facets `σ` and `τ` and identify
/// each proper face of `σ` with the face of `τ` spanned by the image of its
/// vertices under `bijection: V(σ) → V(τ)`.
///
/// Cells of the result are ordered by rank, cells of `P` before cells of
/// `Q`; labels are kept.
pub fn connected_sum(
    p: &SimplicialPoset,
    q: &SimplicialPoset,
    sigma: CellId,
    tau: CellId,
    bijection: &BTreeMap<CellId, CellId>,
) -> Result<SimplicialPoset> {
    let d = p.d();
    if q.d() != d {
        return Err(Error::InvalidArgument(format!("rank mismatch: {d} vs {}", q.d())));
    }
    if d < 2 {
        return Err(Error::InvalidArgument("connected sums need d ≥ 2".into()));
    }
    if !p.is_pure() || !q.is_pure() {
        return Err(Error::InvalidArgument("connected sums need pure posets".into()));
    }
    let is_facet = |x: &SimplicialPoset, c: CellId| c < x.cell_count() && x.rank(c) == d;
    if !is_facet(p, sigma) || !is_facet(q, tau) {
        return Err(Error::InvalidArgument(format!("cells {sigma} / {tau} are not facets")));
    }
    let keys: Vec<CellId> = bijection.keys().copied().collect();
    let mut values: Vec<CellId> = bijection.values().copied().collect();
    values.sort_unstable();
    if keys != p.vertex_set(sigma) || values != q.vertex_set(tau) {
        return Err(Error::InvalidArgument("vertex map is not a bijection V(σ) → V(τ)".into()));
    }
    let inverse: HashMap<CellId, CellId> = bijection.iter().map(|(&a, &b)| (b, a)).collect();

    // Where each cell of Q goes: Ok(p-cell) if identified, Err(()) if kept.
    let mut q_target: Vec<Option<CellId>> = vec![None; q.cell_count()];
    for rho in q.lower_interval(tau) {
        if rho == tau {
            continue;
        }
        let mut image: Vec<CellId> = q.vertex_set(rho).iter().map(|v| inverse[v]).collect();
        image.sort_unstable();
        q_target[rho] = Some(p.face_with_vertices(sigma, &image).expect("boolean interval"));
    }

    #[derive(Clone, Copy)]
    enum Src {
        P(CellId),
        Q(CellId),
    }
    let mut order: Vec<(usize, usize, CellId, Src)> = Vec::new();
    for c in (0..p.cell_count()).filter(|&c| c != sigma) {
        order.push((p.rank(c), 0, c, Src::P(c)));
    }
    for c in (0..q.cell_count()).filter(|&c| c != tau && q_target[c].is_none()) {
        order.push((q.rank(c), 1, c, Src::Q(c)));
    }
    order.sort_by_key(|&(r, side, c, _)| (r, side, c));
    let mut p_new = vec![usize::MAX; p.cell_count()];
    let mut q_new = vec![usize::MAX; q.cell_count()];
    for (i, &(_, _, _, src)) in order.iter().enumerate() {
        match src {
            Src::P(c) => p_new[c] = i,
            Src::Q(c) => q_new[c] = i,
        }
    }
    let q_id = |c: CellId| q_target[c].map_or(q_new[c], |t| p_new[t]);
    let cells = order
        .iter()
        .map(|&(rank, _, _, src)| match src {
            Src::P(c) => CellSpec::new(rank, p.covers(c).iter().map(|&b| p_new[b]).collect(), p.label(c)),
            Src::Q(c) => CellSpec::new(rank, q.covers(c).iter().map(|&b| q_id(b)).collect(), q.label(c)),
        })
        .collect();
    SimplicialPoset::new(cells)
}

/// The bijection `V(σ) → V(τ)` pairing vertices of equal colour.
pub fn color_preserving_bijection(
    p: &SimplicialPoset,
    p_colors: &Coloring,
    sigma: CellId,
    q: &SimplicialPoset,
    q_colors: &Coloring,
    tau: CellId,
) -> Result<BTreeMap<CellId, CellId>> {
    let by_color: HashMap<usize, CellId> = q
        .vertex_set(tau)
        .iter()
        .map(|&v| q_colors.get(&v).map(|&c| (c, v)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("coloring of Q misses a vertex of τ".into()))?;
    p.vertex_set(sigma)
        .iter()
        .map(|&v| {
            let c = p_colors
                .get(&v)
                .ok_or_else(|| Error::InvalidArgument("coloring of P misses a vertex of σ".into()))?;
            let w = by_color
                .get(c)
                .ok_or_else(|| Error::InvalidArgument(format!("τ has no vertex of color {c}")))?;
            Ok((v, *w))
        })
        .collect()
}

/// The order-preserving bijection between the sorted vertex sets.
pub fn sorted_bijection(p: &SimplicialPoset, sigma: CellId, q: &SimplicialPoset, tau: CellId) -> BTreeMap<CellId, CellId> {
    p.vertex_set(sigma).iter().copied().zip(q.vertex_set(tau).iter().copied()).collect()
}
