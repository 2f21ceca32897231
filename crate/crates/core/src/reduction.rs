//! Dipoles, the cancelling operation `del_{x,y}`, and the explicit schedule
//! reducing `Λ(n, m)` to a crystallization of `S^n × S^m` with
//! `2 + 2·C(n+m, n)` vertices.

use std::cmp::Ordering;

use serde::Serialize;

use crate::colored_multigraph::{ColorSet, ColoredGraph, Edge};
use crate::constructions::{product_spheres_graph, subsets_of_size, Block, ProductSpheresLabel};
use crate::vectors::binomial;
use crate::{Error, Result};

/// A pair `(x, y)` whose joining colours `C` are nonempty and which lie in
/// different components of the graph restricted to `[d] ∖ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dipole {
    pub x: usize,
    pub y: usize,
    pub colors: ColorSet,
    pub d: usize,
}

/// Outcome of [`is_dipole`]: the colour set and the sizes of the components
/// of `x` and `y` in the restriction to `[d] ∖ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DipoleCheck {
    pub holds: bool,
    pub colors: ColorSet,
    pub component_sizes: (usize, usize),
}

pub fn colors_between(g: &ColoredGraph, x: &str, y: &str) -> Result<ColorSet> {
    Ok(g.colors_between(vertex(g, x)?, vertex(g, y)?))
}

fn vertex(g: &ColoredGraph, label: &str) -> Result<usize> {
    g.vertex_index(label)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {label:?}")))
}

fn check_index(g: &ColoredGraph, v: usize) -> Result<()> {
    if v < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("vertex index {v} out of range")))
    }
}

/// Dipole test on vertex indices. `x == y` never is a dipole.
pub fn is_dipole(g: &ColoredGraph, x: usize, y: usize) -> Result<DipoleCheck> {
    check_index(g, x)?;
    check_index(g, y)?;
    let colors = g.colors_between(x, y);
    let (component, count) = g.component_index(colors.complement(g.d()));
    let mut sizes = vec![0usize; count];
    for &c in &component {
        sizes[c] += 1;
    }
    Ok(DipoleCheck {
        holds: x != y && !colors.is_empty() && component[x] != component[y],
        colors,
        component_sizes: (sizes[component[x]], sizes[component[y]]),
    })
}

/// Label-based form of [`is_dipole`].
pub fn is_dipole_between(g: &ColoredGraph, x: &str, y: &str) -> Result<DipoleCheck> {
    is_dipole(g, vertex(g, x)?, vertex(g, y)?)
}

/// `del_{x,y}`: delete `x` and `y` and, for every colour `i ∉ C`, join the
/// colour-`i` partners `a_i` of `x` and `b_i` of `y` by a new colour-`i`
/// edge.
///
/// Surviving vertices keep their labels and relative order; new edges follow
/// the kept ones in ascending colour. Fails unless the result is nonempty
/// and connected.
pub fn cancel(g: &ColoredGraph, x: usize, y: usize) -> Result<ColoredGraph> {
    check_index(g, x)?;
    check_index(g, y)?;
    if x == y {
        return Err(Error::InvalidArgument("cannot cancel a vertex with itself".into()));
    }
    g.require_admissible()?;
    let d = g.d();
    let colors = g.colors_between(x, y);
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    let mut vertices = Vec::with_capacity(g.vertex_count() - 2);
    for v in (0..g.vertex_count()).filter(|&v| v != x && v != y) {
        new_index[v] = vertices.len();
        vertices.push(g.label(v).to_owned());
    }
    if vertices.is_empty() {
        return Err(Error::CancellationBreaksAdmissibility(format!(
            "cancelling ({}, {}) leaves no vertices",
            g.label(x),
            g.label(y)
        )));
    }
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !e.touches(x) && !e.touches(y))
        .map(|e| Edge::new(new_index[e.u], new_index[e.v], e.color))
        .collect();
    for i in colors.complement(d).iter() {
        let a = g.color_partner(x, i)?;
        let b = g.color_partner(y, i)?;
        edges.push(Edge::new(new_index[a], new_index[b], i));
    }
    let out = ColoredGraph::new(d, vertices, edges)?;
    let report = out.validate_admissible();
    if !report.is_ok() {
        return Err(Error::CancellationBreaksAdmissibility(format!(
            "cancelling ({}, {}): {report}",
            g.label(x),
            g.label(y)
        )));
    }
    Ok(out)
}

/// Label-based form of [`cancel`].
pub fn cancel_between(g: &ColoredGraph, x: &str, y: &str) -> Result<ColoredGraph> {
    cancel(g, vertex(g, x)?, vertex(g, y)?)
}

/// All dipoles, ordered by `(x, y)` with `x < y`.
pub fn find_dipoles(g: &ColoredGraph) -> Result<Vec<Dipole>> {
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut out = Vec::new();
    for (x, y) in pairs {
        let check = is_dipole(g, x, y)?;
        if check.holds {
            out.push(Dipole { x, y, colors: check.colors, d: g.d() });
        }
    }
    Ok(out)
}

/// Every restriction to `[d] ∖ {i}` is connected.
pub fn is_crystallization(g: &ColoredGraph) -> bool {
    let d = g.d();
    g.is_admissible() && (1..=d).all(|i| g.components_of(ColorSet::single(i).complement(d)).len() == 1)
}

/// `S >_rlex T`: the largest element of the symmetric difference lies in `T`.
/// Sets are increasing sequences.
pub fn rlex_cmp(s: &[usize], t: &[usize]) -> Ordering {
    let largest = s
        .iter()
        .filter(|x| !t.contains(x))
        .chain(t.iter().filter(|x| !s.contains(x)))
        .max();
    match largest {
        None => Ordering::Equal,
        Some(x) if t.contains(x) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// `[lo, hi]`, empty when `hi < lo`.
fn interval(lo: usize, hi: usize) -> Vec<usize> {
    if hi < lo {
        Vec::new()
    } else {
        (lo..=hi).collect()
    }
}

fn union(a: Vec<usize>, b: &[usize]) -> Vec<usize> {
    let mut out = a;
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
    out
}

/// One scheduled cancellation `D_j(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub j: usize,
    pub set: Vec<usize>,
    pub pair: (ProductSpheresLabel, ProductSpheresLabel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<ScheduleEntry>,
}

impl Schedule {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The pairs as label strings, in order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.entries.iter().map(|e| (e.pair.0.to_string(), e.pair.1.to_string())).collect()
    }
}

/// The pair `D_j(S)`, where `S = {i_1 < ...}` and `S' = S ∖ {i_1}`.
pub fn schedule_pair(j: usize, set: &[usize]) -> Result<(ProductSpheresLabel, ProductSpheresLabel)> {
    let Some((&i1, rest)) = set.split_first() else {
        return Err(Error::InvalidArgument("D_j(S) needs a nonempty S".into()));
    };
    if j == 0 || i1 <= j {
        return Err(Error::InvalidArgument(format!("S = {set:?} is not inside [{}, ..]", j + 1)));
    }
    let a = |s| ProductSpheresLabel::new(Block::A, s);
    let b = |s| ProductSpheresLabel::new(Block::B, s);
    Ok(if j % 2 == 1 {
        let first = a(union(interval(1, j - 1), set));
        if i1 == j + 1 {
            (first, a(union(interval(1, j), rest)))
        } else {
            (first, b(union(interval(i1 - j - 1, i1 - 2), rest)))
        }
    } else {
        (b(union(interval(i1 - j, i1 - 2), set)), b(union(interval(i1 - j, i1 - 1), rest)))
    })
}

/// The cancellation schedule for `Λ(n, m)`: `D_j(S)` for `j = 1..n` and
/// `S ∈ X_j = {S ⊆ [j+1, n+m] : #S = n+1-j}`, smaller `j` first and, for
/// equal `j`, the `>_rlex`-larger `S` first.
pub fn murai_schedule(n: usize, m: usize) -> Result<Schedule> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("need n, m ≥ 1, got n = {n}, m = {m}")));
    }
    let mut entries = Vec::new();
    for j in 1..=n {
        let mut sets = subsets_of_size(j + 1, n + m, n + 1 - j);
        sets.sort_by(|s, t| rlex_cmp(t, s));
        for set in sets {
            let pair = schedule_pair(j, &set)?;
            entries.push(ScheduleEntry { j, set, pair });
        }
    }
    Ok(Schedule { n, m, entries })
}

/// One line of a reduction certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub step: usize,
    pub pair: [String; 2],
    pub colors: Vec<usize>,
    pub dipole: bool,
    pub vertices_after: usize,
}

pub type Certificate = Vec<CertificateStep>;

/// Cancels the given pairs in order, checking that each one is a dipole at
/// the moment it is cancelled.
pub fn apply_pairs(g: &ColoredGraph, pairs: &[(String, String)]) -> Result<(ColoredGraph, Certificate)> {
    let mut current = g.clone();
    let mut certificate = Vec::with_capacity(pairs.len());
    for (k, (x, y)) in pairs.iter().enumerate() {
        let check = is_dipole_between(&current, x, y)?;
        if !check.holds {
            return Err(Error::NotADipole { step: k + 1, x: x.clone(), y: y.clone() });
        }
        current = cancel_between(&current, x, y)?;
        certificate.push(CertificateStep {
            step: k + 1,
            pair: [x.clone(), y.clone()],
            colors: check.colors.to_vec(),
            dipole: true,
            vertices_after: current.vertex_count(),
        });
    }
    Ok((current, certificate))
}

/// Runs [`murai_schedule`] on `Λ(n, m)` and checks the outcome: every step
/// cancels a dipole, `2 + 2·C(n+m, n)` vertices remain, and the result is a
/// crystallization.
pub fn reduce_product_spheres(n: usize, m: usize) -> Result<(ColoredGraph, Certificate)> {
    let g = product_spheres_graph(n, m)?;
    reduce_with_murai(&g, n, m)
}

/// [`murai_schedule`] applied to a graph carrying `Λ(n, m)` labels.
pub fn reduce_with_murai(g: &ColoredGraph, n: usize, m: usize) -> Result<(ColoredGraph, Certificate)> {
    let schedule = murai_schedule(n, m)?;
    let (out, certificate) = apply_pairs(g, &schedule.pairs())?;
    let expected = 2 + 2 * binomial(n + m, n);
    if num_bigint::BigInt::from(out.vertex_count()) != expected {
        return Err(Error::Structural(format!(
            "reduction left {} vertices, expected {expected}",
            out.vertex_count()
        )));
    }
    if !is_crystallization(&out) {
        return Err(Error::Structural("reduced graph is not a crystallization".into()));
    }
    Ok((out, certificate))
}

/// Repeatedly cancels the first dipole (in [`find_dipoles`] order) with
/// `1 ≤ |C| ≤ d-1` until none is left.
pub fn reduce_greedy(g: &ColoredGraph) -> Result<(ColoredGraph, Certificate)> {
    g.require_admissible()?;
    let d = g.d();
    let mut current = g.clone();
    let mut certificate = Vec::new();
    'outer: loop {
        for dipole in find_dipoles(&current)? {
            if dipole.colors.len() >= d {
                continue;
            }
            let Ok(next) = cancel(&current, dipole.x, dipole.y) else { continue };
            certificate.push(CertificateStep {
                step: certificate.len() + 1,
                pair: [current.label(dipole.x).to_owned(), current.label(dipole.y).to_owned()],
                colors: dipole.colors.to_vec(),
                dipole: true,
                vertices_after: next.vertex_count(),
            });
            current = next;
            continue 'outer;
        }
        return Ok((current, certificate));
    }
}
