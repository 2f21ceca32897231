//! Test-side oracles and fixture builders. The oracles deliberately avoid
//! the library's own algorithms: h-vectors come from polynomial
//! substitution, Betti numbers from a plain boolean-matrix elimination, and
//! dipoles from a breadth-first search.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::path::PathBuf;

use crystal_core::colored_multigraph::Edge;
use crystal_core::{constructions, reduction, ColoredGraph, SimplicialPoset};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn torus_fixture() -> ColoredGraph {
    ColoredGraph::from_json_str(&fixture("torus_six_vertex.json")).unwrap()
}

/// `Σ h_i x^{d-i} = Σ f_i (x-1)^{d-i}`, expanded directly.
pub fn oracle_h(f: &[u64]) -> Vec<i128> {
    let d = f.len() - 1;
    // coefficients indexed by power of x
    let mut poly = vec![0i128; d + 1];
    for (i, &fi) in f.iter().enumerate() {
        // (x - 1)^{d-i}
        let e = d - i;
        let mut c: i128 = 1; // C(e, j)
        for j in 0..=e {
            let sign = if (e - j) % 2 == 0 { 1 } else { -1 };
            poly[j] += sign * c * fi as i128;
            c = c * (e - j) as i128 / (j + 1) as i128;
        }
    }
    (0..=d).map(|i| poly[d - i]).collect()
}

/// Rank over GF(2) of a dense boolean matrix.
pub fn oracle_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced GF(2) Betti numbers from the augmented cellular chain complex.
pub fn oracle_betti(p: &SimplicialPoset) -> Vec<u64> {
    let d = p.d();
    let cells: Vec<Vec<usize>> = (0..=d).map(|k| p.cells_of_rank(k).to_vec()).collect();
    let pos: BTreeMap<usize, usize> =
        cells.iter().flat_map(|row| row.iter().enumerate().map(|(i, &c)| (c, i))).collect();
    let mut ranks = vec![0usize; d + 2];
    for k in 1..=d {
        let rows = cells[k]
            .iter()
            .map(|&c| {
                let mut row = vec![false; cells[k - 1].len()];
                for &b in p.covers(c) {
                    row[pos[&b]] ^= true;
                }
                row
            })
            .collect();
        ranks[k] = oracle_rank(rows);
    }
    (0..d).map(|i| (cells[i + 1].len() - ranks[i + 1] - ranks[i + 2]) as u64).collect()
}

/// `h''` from the oracle h-vector and oracle Betti numbers.
pub fn oracle_h_double_prime(p: &SimplicialPoset) -> Vec<i128> {
    let d = p.d();
    let h = oracle_h(p.f_vector().entries());
    let b = oracle_betti(p);
    let mut out = vec![1i128];
    for k in 1..d {
        let mut s: i128 = 0;
        for l in 1..=k {
            let sign = if (k - l) % 2 == 0 { 1 } else { -1 };
            s += sign * b[l - 1] as i128;
        }
        out.push(h[k] - binom(d, k) * s);
    }
    out.push(b[d - 1] as i128);
    out
}

pub fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Dipole test by breadth-first search on the colours outside `C`.
pub fn oracle_is_dipole(g: &ColoredGraph, x: usize, y: usize) -> bool {
    let between: Vec<usize> = g
        .edges()
        .iter()
        .filter(|e| (e.u == x && e.v == y) || (e.u == y && e.v == x))
        .map(|e| e.color)
        .collect();
    if between.is_empty() || x == y {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([x]);
    seen[x] = true;
    while let Some(v) = queue.pop_front() {
        for e in g.edges().iter().filter(|e| !between.contains(&e.color)) {
            let w = if e.u == v {
                e.v
            } else if e.v == v {
                e.u
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    !seen[y]
}

/// A connected graph on `2 * half` vertices whose colour classes are
/// uniformly random perfect matchings; retries until connected.
pub fn random_admissible<R: Rng>(rng: &mut R, d: usize, half: usize) -> ColoredGraph {
    let n = 2 * half;
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    loop {
        let mut edges = Vec::new();
        for color in 1..=d {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for pair in order.chunks(2) {
                edges.push(Edge::new(pair[0], pair[1], color));
            }
        }
        let g = ColoredGraph::new(d, labels.clone(), edges).unwrap();
        if g.is_admissible() {
            return g;
        }
    }
}

/// `(name, poset)` for the homology manifolds used across the suites.
pub fn manifold_fixtures() -> Vec<(String, SimplicialPoset)> {
    let mut out = vec![("torus".to_owned(), SimplicialPoset::from_graph(&torus_fixture()).unwrap())];
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3)] {
        let (g, _) = reduction::reduce_product_spheres(n, m).unwrap();
        out.push((format!("reduced Λ({n},{m})"), SimplicialPoset::from_graph(&g).unwrap()));
    }
    for (n, m) in [(1, 1), (1, 2)] {
        let g = constructions::product_spheres_graph(n, m).unwrap();
        out.push((format!("Λ({n},{m})"), SimplicialPoset::from_graph(&g).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("RP^{}", n - 1), constructions::cross_polytope_quotient(n).unwrap()));
    }
    for d in 2..=5 {
        out.push((format!("∂Δ^{d}"), constructions::boundary_of_simplex(d).unwrap()));
    }
    out
}

/// Connected-sum inputs: pairs of same-rank manifolds with chosen facets.
pub fn connected_sum_pairs() -> Vec<(String, SimplicialPoset, SimplicialPoset)> {
    let torus = SimplicialPoset::from_graph(&torus_fixture()).unwrap();
    let reduced = |n, m| SimplicialPoset::from_graph(&reduction::reduce_product_spheres(n, m).unwrap().0).unwrap();
    let rp = |n| constructions::cross_polytope_quotient(n).unwrap();
    let simplex = |d| constructions::boundary_of_simplex(d).unwrap();
    let t11 = reduced(1, 1);
    vec![
        ("torus # torus".into(), torus.clone(), torus.clone()),
        ("torus # ∂Δ^3".into(), torus.clone(), simplex(3)),
        ("∂Δ^3 # torus".into(), simplex(3), torus.clone()),
        ("torus # reduced Λ(1,1)".into(), torus.clone(), t11.clone()),
        ("torus # RP^2".into(), torus.clone(), rp(3)),
        ("RP^2 # RP^2".into(), rp(3), rp(3)),
        ("reduced Λ(1,2) # ∂Δ^4".into(), reduced(1, 2), simplex(4)),
        ("reduced Λ(1,2) # reduced Λ(2,1)".into(), reduced(1, 2), reduced(2, 1)),
        ("RP^3 # reduced Λ(1,2)".into(), rp(4), reduced(1, 2)),
        ("reduced Λ(2,2) # ∂Δ^5".into(), reduced(2, 2), simplex(5)),
        ("reduced Λ(2,2) # reduced Λ(1,3)".into(), reduced(2, 2), reduced(1, 3)),
        ("RP^4 # reduced Λ(2,2)".into(), rp(5), reduced(2, 2)),
    ]
}

/// `P # Q` on the first facet of each, matching sorted vertex lists.
pub fn sum_first_facets(p: &SimplicialPoset, q: &SimplicialPoset) -> SimplicialPoset {
    let (sigma, tau) = (p.cells_of_rank(p.d())[0], q.cells_of_rank(q.d())[0]);
    let bij = constructions::sorted_bijection(p, sigma, q, tau);
    constructions::connected_sum(p, q, sigma, tau, &bij).unwrap()
}
