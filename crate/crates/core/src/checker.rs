//! Decision procedures for `h`-vectors: homology spheres (and, through the
//! `h''`-vector, `S^n × S^m`), real projective spaces, and even-rank
//! manifolds via the `h^β` transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::vectors::binomial;
use crate::{Error, Result};

/// Result of a check. `witness` is set on success when the check searches
/// for one; `failed_condition` is set on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_ints")]
    pub witness: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<String>,
}

fn ser_opt_ints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let v = v.as_deref().unwrap_or_default();
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl CheckResult {
    fn pass() -> Self {
        Self { ok: true, witness: None, failed_condition: None }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Self { ok: false, witness: None, failed_condition: Some(reason.into()) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("check result serializes")
    }
}

/// Conditions (1)–(3) on `g = (g_0..g_d)`; the parity in (3) is taken of
/// `parity_sum`.
fn sphere_conditions(g: &[BigInt], parity_sum: &BigInt) -> CheckResult {
    let d = g.len() - 1;
    if !g[0].is_one() || !g[d].is_one() {
        return CheckResult::fail(format!("(1) first and last entries must be 1, got {} and {}", g[0], g[d]));
    }
    if let Some(i) = (1..d).find(|&i| g[i] != g[d - i]) {
        return CheckResult::fail(format!("(1) not symmetric: entry {i} is {} but entry {} is {}", g[i], d - i, g[d - i]));
    }
    if let Some(i) = (0..=d).find(|&i| g[i].is_negative()) {
        return CheckResult::fail(format!("(2) entry {i} is negative: {}", g[i]));
    }
    if let Some(i) = (1..d).find(|&i| g[i].is_zero()) {
        if parity_sum.is_odd() {
            return CheckResult::fail(format!("(3) entry {i} is zero but the sum {parity_sum} is odd"));
        }
    }
    CheckResult::pass()
}

/// `h = (h_0..h_d)` is the `h`-vector of a simplicial cell decomposition of
/// `S^{d-1}` iff `h_0 = h_d = 1`, `h` is symmetric and nonnegative, and an
/// internal zero forces `Σ h_i` even. Applied to `h''`-vectors with
/// `d = n+m+1` the same test answers membership for `S^n × S^m`.
pub fn check_sphere_h(h: &[BigInt]) -> Result<CheckResult> {
    if h.len() < 2 {
        return Err(Error::InvalidArgument(format!("need an h-vector with d ≥ 1, got {} entries", h.len())));
    }
    let sum: BigInt = h.iter().sum();
    Ok(sphere_conditions(h, &sum))
}

/// `r(n, i)`: `C(n, i)` for even `i < n`, `0` for odd `i < n`; at `i = n`,
/// `-1` for odd `n` and `0` for even `n`.
pub fn r_value(n: usize, i: usize) -> Result<BigInt> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("r(n, i) needs 1 ≤ i ≤ n, got n = {n}, i = {i}")));
    }
    Ok(match (i == n, i % 2 == 0) {
        (false, true) => binomial(n, i),
        (false, false) => BigInt::zero(),
        (true, _) if n % 2 == 1 => -BigInt::one(),
        (true, _) => BigInt::zero(),
    })
}

/// Membership of `h` among `h`-vectors of simplicial cell decompositions of
/// `ℝP^{n-1}`: the shifted vector `h_i - r(n,i)` (with `h_0` unshifted) must
/// pass the sphere conditions, with the parity taken of `Σ h_i`.
pub fn check_rp_h(h: &[BigInt], n: usize) -> Result<CheckResult> {
    if n < 1 || h.len() != n + 1 {
        return Err(Error::InvalidArgument(format!("need {} entries for n = {n}, got {}", n + 1, h.len())));
    }
    let mut g = vec![h[0].clone()];
    for i in 1..=n {
        g.push(&h[i] - r_value(n, i)?);
    }
    let sum: BigInt = h.iter().sum();
    Ok(sphere_conditions(&g, &sum))
}

/// `h^β_0 = h_0`; `h^β_k = h_k - C(d,k) Σ_{ℓ=2}^{k} (-1)^{ℓ-k} β_{ℓ-1}` for
/// `1 ≤ k ≤ d-1`; `h^β_d = h_d - Σ_{ℓ=2}^{d-1} (-1)^{ℓ-d} β_{ℓ-1}`.
///
/// `beta = (1, β_1, ..., β_{d-1})`.
pub fn h_beta(h: &[BigInt], beta: &[BigInt]) -> Result<Vec<BigInt>> {
    if h.len() < 2 || beta.len() + 1 != h.len() {
        return Err(Error::InvalidArgument(format!(
            "h has {} entries and β has {}; expected d+1 and d",
            h.len(),
            beta.len()
        )));
    }
    let d = h.len() - 1;
    let mut out = vec![h[0].clone()];
    // alt_k = Σ_{ℓ=2}^{k} (-1)^{ℓ-k} β_{ℓ-1} = β_{k-1} - alt_{k-1}, alt_1 = 0.
    let mut alt = BigInt::zero();
    for k in 1..d {
        if k >= 2 {
            alt = &beta[k - 1] - alt;
        }
        out.push(&h[k] - binomial(d, k) * &alt);
    }
    // At k = d the sum stops at ℓ = d-1, i.e. it is -alt_{d-1}.
    out.push(&h[d] + alt);
    Ok(out)
}

/// Membership of `h` among `h`-vectors of (odd-dimensional) manifolds with
/// `d` even: some symmetric `β = (1, β_1, ..., β_{d-1}) ≥ 0` must make
/// `h^β` pass [`check_sphere_h`].
///
/// `β_{d-1}` does not enter `h^β` and is reported as 0. The free entries
/// `β_1..β_{d/2-1}` are searched depth first in increasing order; the bound
/// on `β_{k-1}` comes from `h^β_k ≥ 0`, so the first hit is the
/// lexicographically smallest witness and the search is exhaustive.
pub fn check_manifold_h(h: &[BigInt], d: usize) -> Result<CheckResult> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidArgument(format!("d must be even and positive, got {d}")));
    }
    if h.len() != d + 1 {
        return Err(Error::InvalidArgument(format!("need {} entries for d = {d}, got {}", d + 1, h.len())));
    }
    let free = d / 2 - 1;
    let mut chosen: Vec<BigInt> = Vec::with_capacity(free);
    let mut last_failure = None;
    let found = search(h, d, free, &mut chosen, &BigInt::zero(), &mut last_failure)?;
    Ok(match found {
        Some(beta) => CheckResult { ok: true, witness: Some(beta), failed_condition: None },
        None => CheckResult::fail(match last_failure {
            Some(reason) => format!("no symmetric β makes h^β a sphere h-vector; last candidate failed {reason}"),
            None => "no symmetric β keeps h^β nonnegative".to_owned(),
        }),
    })
}

/// Full symmetric `β` from its free entries `β_1..β_{d/2-1}`.
fn full_beta(d: usize, free: &[BigInt]) -> Vec<BigInt> {
    let mut beta = vec![BigInt::zero(); d];
    beta[0] = BigInt::one();
    for (i, b) in free.iter().enumerate() {
        beta[i + 1] = b.clone();
        beta[d - 2 - i] = b.clone();
    }
    beta
}

fn search(
    h: &[BigInt],
    d: usize,
    free: usize,
    chosen: &mut Vec<BigInt>,
    alt: &BigInt,
    last_failure: &mut Option<String>,
) -> Result<Option<Vec<BigInt>>> {
    if chosen.len() == free {
        let beta = full_beta(d, chosen);
        let hb = h_beta(h, &beta)?;
        let result = check_sphere_h(&hb)?;
        if result.ok {
            return Ok(Some(beta));
        }
        *last_failure = result.failed_condition;
        return Ok(None);
    }
    // Choosing β_{k-1} with k = chosen.len() + 2: h^β_k ≥ 0 reads
    // β_{k-1} ≤ alt_{k-1} + h_k / C(d, k).
    let k = chosen.len() + 2;
    let bound = alt + h[k].div_floor(&binomial(d, k));
    let mut b = BigInt::zero();
    while b <= bound {
        let next_alt = &b - alt;
        chosen.push(b.clone());
        if let Some(w) = search(h, d, free, chosen, &next_alt, last_failure)? {
            return Ok(Some(w));
        }
        chosen.pop();
        b += 1;
    }
    Ok(None)
}

/// `h >_P h'` on sphere `h`-vectors of the same length:
/// `h - h' + (1, 0, ..., 0, 1)` is again a sphere `h`-vector.
pub fn dominates(h: &[BigInt], other: &[BigInt]) -> Result<bool> {
    if h.len() != other.len() || h.len() < 2 {
        return Err(Error::InvalidArgument("vectors must have equal length ≥ 2".into()));
    }
    let d = h.len() - 1;
    let diff: Vec<BigInt> = (0..=d)
        .map(|i| &h[i] - &other[i] + if i == 0 || i == d { BigInt::one() } else { BigInt::zero() })
        .collect();
    Ok(check_sphere_h(&diff)?.ok)
}
