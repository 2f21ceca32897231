//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p crystal-core --test acceptance -- --nocapture`.
//!
//! Every comparison is exact. Time budgets are wall-clock limits for an
//! unoptimised build.

mod common;

use std::time::{Duration, Instant};

use common::*;
use crystal_core::checker::{check_manifold_h, check_rp_h, check_sphere_h, h_beta, r_value};
use crystal_core::homology::{betti_gf2, betti_order_complex, h_double_prime_of, is_homology_manifold, is_homology_sphere};
use crystal_core::reduction::{self, cancel, find_dipoles, is_dipole, murai_schedule};
use crystal_core::{constructions, vectors::binomial, ColoredGraph, SimplicialPoset};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TORUS_BUDGET: Duration = Duration::from_secs(1);
const REDUCTION_BUDGET: Duration = Duration::from_secs(30);
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
const DEFAULT_BUDGET: Duration = Duration::from_secs(120);
const RANDOM_CANCELLATIONS: usize = 100;
const RANDOM_SEED: u64 = 0x5eed_d1b0;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ints(v: &[BigInt]) -> Vec<i128> {
    v.iter().map(|x| x.to_i128().expect("small")).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn sphere_hpp(d: usize) -> Vec<i128> {
    let mut v = vec![0; d + 1];
    v[0] = 1;
    v[d] = 1;
    v
}

fn poset(g: &ColoredGraph) -> SimplicialPoset {
    SimplicialPoset::from_graph(g).expect("admissible graph")
}

/// Both library engines and the test oracle agree.
fn betti_agree(name: &str, p: &SimplicialPoset) -> Result<Vec<u64>, String> {
    let a = betti_gf2(p).map_err(|e| format!("{name}: {e}"))?;
    let b = betti_order_complex(p).map_err(|e| format!("{name}: {e}"))?;
    let c = oracle_betti(p);
    ensure!(a == b, "{name}: cellular {a} vs order complex {b}");
    ensure!(a.reduced() == c.as_slice(), "{name}: cellular {a} vs oracle {c:?}");
    Ok(c)
}

fn torus_pipeline() -> Outcome {
    let p = poset(&torus_fixture());
    ensure!(p.f_vector().entries() == [1, 3, 9, 6], "f = {}", p.f_vector());
    ensure!(ints(p.h_vector().entries()) == [1, 0, 6, -1], "h = {}", p.h_vector());
    ensure!(oracle_h(p.f_vector().entries()) == [1, 0, 6, -1], "oracle h disagrees");
    let b = betti_agree("torus", &p)?;
    ensure!(b == [0, 2, 1], "betti = {b:?}");
    let hpp = h_double_prime_of(&p).map_err(|e| e.to_string())?;
    ensure!(ints(hpp.entries()) == [1, 0, 0, 1], "h'' = {hpp}");
    ensure!(oracle_h_double_prime(&p) == [1, 0, 0, 1], "oracle h'' disagrees");
    Ok(())
}

const REDUCTION_CASES: [(usize, usize); 7] = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 3)];

fn product_spheres_reduction() -> Outcome {
    for (n, m) in REDUCTION_CASES {
        let c = binom(n + m, n) as usize;
        let d = n + m + 1;
        let mut g = constructions::product_spheres_graph(n, m).map_err(|e| e.to_string())?;
        ensure!(g.is_admissible(), "Λ({n},{m}) not admissible");
        ensure!(g.vertex_count() == 4 * c, "Λ({n},{m}) has {} vertices", g.vertex_count());
        let schedule = murai_schedule(n, m).map_err(|e| e.to_string())?;
        ensure!(schedule.len() == c - 1, "Λ({n},{m}) schedule has {} steps", schedule.len());
        for (step, (x, y)) in schedule.pairs().iter().enumerate() {
            let (xi, yi) = (g.vertex_index(x).unwrap(), g.vertex_index(y).unwrap());
            let check = is_dipole(&g, xi, yi).map_err(|e| e.to_string())?;
            ensure!(check.holds, "Λ({n},{m}) step {}: ({x}, {y}) not a dipole", step + 1);
            ensure!(oracle_is_dipole(&g, xi, yi), "Λ({n},{m}) step {}: oracle rejects ({x}, {y})", step + 1);
            g = cancel(&g, xi, yi).map_err(|e| e.to_string())?;
        }
        ensure!(g.vertex_count() == 2 + 2 * c, "Λ({n},{m}) ends with {} vertices", g.vertex_count());
        let (via_api, cert) = reduction::reduce_product_spheres(n, m).map_err(|e| e.to_string())?;
        ensure!(via_api == g, "Λ({n},{m}): reduce_product_spheres differs from the replay");
        ensure!(cert.len() == c - 1 && cert.iter().all(|s| s.dipole), "Λ({n},{m}) certificate");
        ensure!(reduction::is_crystallization(&g), "Λ({n},{m}) result is not a crystallization");
        let p = poset(&g);
        ensure!(p.f_vector().entries()[1] == d as u64, "Λ({n},{m}) f_1 = {}", p.f_vector().entries()[1]);
        let hpp = h_double_prime_of(&p).map_err(|e| e.to_string())?;
        ensure!(ints(hpp.entries()) == sphere_hpp(d), "Λ({n},{m}) h'' = {hpp}");
        ensure!(oracle_h_double_prime(&p) == sphere_hpp(d), "Λ({n},{m}) oracle h''");
    }
    let expected: serde_json::Value = serde_json::from_str(&fixture("schedule_2_2.json")).unwrap();
    let pairs: Vec<(String, String)> = expected["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().to_owned(), p[1].as_str().unwrap().to_owned()))
        .collect();
    ensure!(murai_schedule(2, 2).unwrap().pairs() == pairs, "Λ(2,2) schedule differs from D_1..D_5");
    Ok(())
}

fn homology_oracle_equivalence() -> Outcome {
    betti_agree("torus", &poset(&torus_fixture()))?;
    for (n, m) in [(1, 1), (2, 2)] {
        let mut g = constructions::product_spheres_graph(n, m).unwrap();
        let before = betti_agree(&format!("Λ({n},{m})"), &poset(&g))?;
        for (step, (x, y)) in murai_schedule(n, m).unwrap().pairs().iter().enumerate() {
            g = reduction::cancel_between(&g, x, y).map_err(|e| e.to_string())?;
            let after = betti_agree(&format!("Λ({n},{m}) after step {}", step + 1), &poset(&g))?;
            ensure!(after == before, "Λ({n},{m}) step {}: Betti changed", step + 1);
        }
    }
    for n in 2..=6 {
        betti_agree(&format!("RP^{}", n - 1), &constructions::cross_polytope_quotient(n).unwrap())?;
    }
    for (name, p, q) in connected_sum_pairs() {
        betti_agree(&name, &sum_first_facets(&p, &q))?;
    }
    Ok(())
}

fn real_projective_spaces() -> Outcome {
    for n in 2..=6 {
        let p = constructions::cross_polytope_quotient(n).unwrap();
        ensure!(p.cells_of_rank(1).len() == n, "n = {n}: {} vertices", p.cells_of_rank(1).len());
        ensure!(p.cells_of_rank(n).len() == 1 << (n - 1), "n = {n}: {} facets", p.cells_of_rank(n).len());
        let b = betti_agree(&format!("RP^{}", n - 1), &p)?;
        let mut want = vec![1u64; n];
        want[0] = 0;
        ensure!(b == want, "n = {n}: betti {b:?}");
        ensure!(oracle_h_double_prime(&p) == sphere_hpp(n), "n = {n}: h'' {:?}", oracle_h_double_prime(&p));
        let hpp = h_double_prime_of(&p).unwrap();
        ensure!(ints(hpp.entries()) == sphere_hpp(n), "n = {n}: h'' {hpp}");
        let r = check_rp_h(p.h_vector().entries(), n).unwrap();
        ensure!(r.ok, "n = {n}: h = {} rejected: {:?}", p.h_vector(), r.failed_condition);
    }
    Ok(())
}

fn all_manifolds() -> Vec<(String, SimplicialPoset)> {
    let mut all = manifold_fixtures();
    for (name, p, q) in connected_sum_pairs() {
        all.push((name, sum_first_facets(&p, &q)));
    }
    all
}

fn necessity_invariants() -> Outcome {
    for (name, p) in all_manifolds() {
        ensure!(is_homology_manifold(&p).unwrap(), "{name}: not a homology manifold");
        let hpp = oracle_h_double_prime(&p);
        let d = p.d();
        ensure!(hpp.iter().all(|&x| x >= 0), "{name}: h'' {hpp:?} has a negative entry");
        ensure!((0..=d).all(|i| hpp[i] == hpp[d - i]), "{name}: h'' {hpp:?} not symmetric");
        let internal_zero = (1..d).any(|i| hpp[i] == 0);
        ensure!(!internal_zero || hpp.iter().sum::<i128>() % 2 == 0, "{name}: h'' {hpp:?} zero with odd sum");
        for &v in p.cells_of_rank(1) {
            let link = p.link(v).unwrap();
            ensure!(is_homology_sphere(&link).unwrap(), "{name}: link of vertex {v} is not a homology sphere");
        }
    }
    Ok(())
}

fn connected_sum_arithmetic() -> Outcome {
    let pairs = connected_sum_pairs();
    ensure!(pairs.len() >= 10, "only {} pairs", pairs.len());
    for (name, p, q) in pairs {
        let s = sum_first_facets(&p, &q);
        let d = p.d();
        let (fp, fq, fs) = (p.f_vector(), q.f_vector(), s.f_vector());
        for i in 0..=d {
            let want = fp.entries()[i] as i128 + fq.entries()[i] as i128
                - if i == d { 2 } else { binom(d, i) };
            ensure!(fs.entries()[i] as i128 == want, "{name}: f_{i} = {} want {want}", fs.entries()[i]);
        }
        let (hp, hq, hs) = (oracle_h(fp.entries()), oracle_h(fq.entries()), oracle_h(fs.entries()));
        ensure!(ints(s.h_vector().entries()) == hs, "{name}: h disagrees with oracle");
        ensure!(hs[0] == 1, "{name}: h_0 = {}", hs[0]);
        for i in 1..d {
            ensure!(hs[i] == hp[i] + hq[i], "{name}: h_{i} not additive");
        }
        ensure!(hs[d] == hp[d] + hq[d] - 1, "{name}: h_d = {} want {}", hs[d], hp[d] + hq[d] - 1);
        let (bp, bq, bs) = (oracle_betti(&p), oracle_betti(&q), oracle_betti(&s));
        for i in 0..d - 1 {
            ensure!(bs[i] == bp[i] + bq[i], "{name}: β̃_{i} = {} not additive", bs[i]);
        }
        ensure!(bs[d - 1] == bq[d - 1], "{name}: top Betti number {} vs {}", bs[d - 1], bq[d - 1]);
        let (pp, pq, ps) = (oracle_h_double_prime(&p), oracle_h_double_prime(&q), oracle_h_double_prime(&s));
        for i in 1..d {
            ensure!(ps[i] == pp[i] + pq[i], "{name}: h''_{i} not additive");
        }
        ensure!(ps[d] == pq[d], "{name}: h''_d = {} vs {}", ps[d], pq[d]);
        ensure!(ints(h_double_prime_of(&s).unwrap().entries()) == ps, "{name}: library h'' disagrees");
    }
    Ok(())
}

fn checker_suite() -> Outcome {
    let sphere = |v: &[i64]| check_sphere_h(&big(v)).unwrap().ok;
    ensure!(!sphere(&[1, 0, 6, -1]), "(1,0,6,-1) accepted");
    ensure!(sphere(&[1, 1, 1, 1]), "(1,1,1,1) rejected");
    ensure!(!sphere(&[1, 0, 1, 0, 1]), "(1,0,1,0,1) accepted");
    ensure!(r_value(4, 2).unwrap() == BigInt::from(6), "r(4,2)");
    ensure!(r_value(3, 1).unwrap() == BigInt::from(0), "r(3,1)");
    ensure!(r_value(3, 3).unwrap() == BigInt::from(-1), "r(3,3)");
    ensure!(check_rp_h(&big(&[1, 0, 3, 0]), 3).unwrap().ok, "(1,0,3,0) rejected as RP^2");
    ensure!(!check_rp_h(&big(&[1, 0, 0, 0]), 3).unwrap().ok, "(1,0,0,0) accepted as RP^2");
    ensure!(h_beta(&big(&[1, 0, 6, -1]), &big(&[1, 2, 1])).unwrap() == big(&[1, 0, 0, 1]), "h^β of the torus");
    let h = big(&[1, 4, -3, 9]);
    ensure!(h_beta(&h, &big(&[1, 0, 0])).unwrap() == h, "h^β with β = (1,0,0)");
    let r = check_manifold_h(&big(&[1, 0, 0, 0, 1]), 4).unwrap();
    ensure!(r.ok && r.witness == Some(big(&[1, 0, 0, 0])), "(1,0,0,0,1): {r:?}");
    let r = check_manifold_h(&big(&[1, 0, 6, 0, 1]), 4).unwrap();
    ensure!(r.ok, "(1,0,6,0,1) rejected");
    let hb = h_beta(&big(&[1, 0, 6, 0, 1]), r.witness.as_ref().unwrap()).unwrap();
    ensure!(check_sphere_h(&hb).unwrap().ok, "witness for (1,0,6,0,1) does not work");
    ensure!(!check_manifold_h(&big(&[1, 0, 1, 1, 1]), 4).unwrap().ok, "(1,0,1,1,1) accepted");
    ensure!(check_manifold_h(&big(&[1, 0, 1, 1]), 3).is_err(), "odd d accepted");
    for (name, p) in all_manifolds() {
        let betti = oracle_betti(&p);
        let mut beta = vec![BigInt::from(1)];
        beta.extend(betti.iter().skip(1).map(|&b| BigInt::from(b)));
        let hb = h_beta(p.h_vector().entries(), &beta).unwrap();
        ensure!(ints(&hb) == oracle_h_double_prime(&p), "{name}: h^β {:?} differs from h''", ints(&hb));
        let hpp = h_double_prime_of(&p).unwrap();
        ensure!(check_sphere_h(hpp.entries()).unwrap().ok, "{name}: h'' {hpp} fails the sphere conditions");
    }
    Ok(())
}

fn dipole_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut done = 0;
    let mut graphs = 0;
    while done < RANDOM_CANCELLATIONS {
        graphs += 1;
        ensure!(graphs < 100 * RANDOM_CANCELLATIONS, "ran out of graphs with dipoles");
        let d = rng.gen_range(3..=4);
        let half = rng.gen_range(2..=7);
        let g = random_admissible(&mut rng, d, half);
        let dipoles: Vec<_> = find_dipoles(&g)
            .unwrap()
            .into_iter()
            .filter(|dp| dp.colors.len() < d)
            .collect();
        if dipoles.is_empty() {
            continue;
        }
        let dp = dipoles[rng.gen_range(0..dipoles.len())];
        ensure!(oracle_is_dipole(&g, dp.x, dp.y), "oracle rejects a reported dipole");
        let after = cancel(&g, dp.x, dp.y).map_err(|e| format!("graph {graphs}: {e}"))?;
        let b0 = betti_agree("random before", &poset(&g))?;
        let b1 = betti_agree("random after", &poset(&after))?;
        ensure!(b0 == b1, "graph {graphs} (d = {d}): Betti {b0:?} became {b1:?}");
        done += 1;
    }
    Ok(())
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "torus pipeline", budget: TORUS_BUDGET, run: torus_pipeline },
    Criterion { id: 2, name: "Λ(n,m) reduction", budget: REDUCTION_BUDGET, run: product_spheres_reduction },
    Criterion { id: 3, name: "homology oracle equivalence", budget: ORACLE_BUDGET, run: homology_oracle_equivalence },
    Criterion { id: 4, name: "real projective spaces", budget: DEFAULT_BUDGET, run: real_projective_spaces },
    Criterion { id: 5, name: "necessity invariants", budget: DEFAULT_BUDGET, run: necessity_invariants },
    Criterion { id: 6, name: "connected-sum arithmetic", budget: DEFAULT_BUDGET, run: connected_sum_arithmetic },
    Criterion { id: 7, name: "checker suite", budget: DEFAULT_BUDGET, run: checker_suite },
    Criterion { id: 8, name: "dipole soundness", budget: DEFAULT_BUDGET, run: dipole_soundness },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= c.budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, budget {:?}", c.budget))
            }
        });
        match &result {
            Ok(()) => println!("PASS criterion {}: {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                println!("FAIL criterion {}: {} ({elapsed:.2?}): {why}", c.id, c.name);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn binomials_agree_with_oracle() {
    for n in 0..12 {
        for k in 0..=n {
            assert_eq!(binomial(n, k).to_i128().unwrap(), binom(n, k));
        }
    }
}
