//! GF(2) cellular homology of simplicial posets and the `h''`-vector.
//!
//! Over GF(2) every cover relation has incidence 1, so the boundary of a
//! cell is the sum of the cells it covers. `∂∂ = 0` holds because each
//! rank-2 interval of a simplicial poset is a diamond.

mod gf2;
mod order_complex;

pub use gf2::BitMatrix;
pub use order_complex::{betti_order_complex, chain_count, MAX_CHAINS};

use num_bigint::BigInt;

use crate::simplicial_poset::SimplicialPoset;
use crate::vectors::{binomial, BettiVector, HVector, HppVector};
use crate::{Error, Result};

/// Augmented cellular chain complex over GF(2).
///
/// `boundary(k)` maps rank-`k` cells (rows) to rank-`(k-1)` cells
/// (columns); `boundary(1)` is the augmentation onto `0̂`.
#[derive(Clone, Debug)]
pub struct ChainComplexGF2 {
    dims: Vec<usize>,
    boundaries: Vec<BitMatrix>,
}

impl ChainComplexGF2 {
    /// Builds the boundary matrices and checks `∂_{k-1} ∂_k = 0`.
    pub fn new(poset: &SimplicialPoset) -> Result<Self> {
        let d = poset.d();
        let dims: Vec<usize> = (0..=d).map(|k| poset.cells_of_rank(k).len()).collect();
        let mut position = vec![0usize; poset.cell_count()];
        for k in 0..=d {
            for (i, &c) in poset.cells_of_rank(k).iter().enumerate() {
                position[c] = i;
            }
        }
        let mut boundaries = Vec::with_capacity(d);
        for k in 1..=d {
            let mut m = BitMatrix::zeros(dims[k], dims[k - 1]);
            for (row, &c) in poset.cells_of_rank(k).iter().enumerate() {
                for &b in poset.covers(c) {
                    m.flip(row, position[b]);
                }
            }
            boundaries.push(m);
        }
        for k in 2..=d {
            if !boundaries[k - 1].mul(&boundaries[k - 2]).is_zero() {
                return Err(Error::Structural(format!("boundary of boundary is nonzero in degree {k}")));
            }
        }
        Ok(Self { dims, boundaries })
    }

    /// Number of rank-`k` cells, `0 ≤ k ≤ d`.
    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn d(&self) -> usize {
        self.dims.len() - 1
    }

    /// The boundary from rank `k` to rank `k-1`, `1 ≤ k ≤ d`.
    pub fn boundary(&self, k: usize) -> &BitMatrix {
        &self.boundaries[k - 1]
    }

    /// `rank ∂_k`, zero outside `1..=d`.
    pub fn boundary_rank(&self, k: usize) -> usize {
        if (1..=self.d()).contains(&k) {
            self.boundaries[k - 1].rank()
        } else {
            0
        }
    }

    /// Reduced Betti numbers: `β̃_i = dim C_{i+1} - rank ∂_{i+1} - rank ∂_{i+2}`.
    pub fn betti(&self) -> BettiVector {
        let d = self.d();
        let ranks: Vec<usize> = (0..=d + 1).map(|k| self.boundary_rank(k)).collect();
        BettiVector::new((0..d).map(|i| (self.dims[i + 1] - ranks[i + 1] - ranks[i + 2]) as u64).collect())
    }
}

/// Reduced GF(2) Betti vector of `P` via cellular boundary matrices.
pub fn betti_gf2(poset: &SimplicialPoset) -> Result<BettiVector> {
    Ok(ChainComplexGF2::new(poset)?.betti())
}

/// `h''_0 = 1`, `h''_k = h_k - C(d,k) Σ_{ℓ=1}^{k} (-1)^{ℓ-k} β̃_{ℓ-1}` for
/// `1 ≤ k ≤ d-1`, and `h''_d = β̃_{d-1}`.
pub fn h_double_prime(h: &HVector, betti: &BettiVector) -> Result<HppVector> {
    let d = h.d();
    if h.entries().len() != betti.d() + 1 {
        return Err(Error::InvalidArgument(format!(
            "h has {} entries but the Betti vector has {}",
            h.entries().len(),
            betti.d()
        )));
    }
    if d == 0 {
        return Ok(HppVector::from_i64s(&[1]));
    }
    let b = betti.reduced();
    let mut out = Vec::with_capacity(d + 1);
    out.push(BigInt::from(1));
    let mut alternating = BigInt::from(0);
    for k in 1..d {
        // Σ_{ℓ=1}^{k} (-1)^{ℓ-k} β̃_{ℓ-1} = β̃_{k-1} - (previous sum)
        alternating = BigInt::from(b[k - 1]) - alternating;
        out.push(&h.entries()[k] - binomial(d, k) * &alternating);
    }
    out.push(BigInt::from(b[d - 1]));
    Ok(HppVector::new(out))
}

/// `h''(P)` computed from the poset.
pub fn h_double_prime_of(poset: &SimplicialPoset) -> Result<HppVector> {
    h_double_prime(&poset.h_vector(), &betti_gf2(poset)?)
}

/// Whether the link of `cell` has the Betti numbers of a sphere of
/// dimension `d - 1 - rank(cell)`.
fn link_is_homology_sphere(poset: &SimplicialPoset, cell: usize) -> Result<bool> {
    let expected_d = poset.d() - poset.rank(cell);
    if expected_d == 0 {
        return Ok(true);
    }
    let link = poset.link(cell)?;
    if link.d() != expected_d {
        return Ok(false);
    }
    Ok(betti_gf2(&link)? == BettiVector::sphere(expected_d))
}

/// Every link, `P` itself included, has the Betti numbers of a sphere of
/// the right dimension.
pub fn is_homology_sphere(poset: &SimplicialPoset) -> Result<bool> {
    for cell in 0..poset.cell_count() {
        if !link_is_homology_sphere(poset, cell)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pure, and the link of every vertex has the Betti numbers of a
/// `(d-2)`-sphere. Deeper links are not examined; see
/// [`is_homology_manifold_strict`].
pub fn is_homology_manifold(poset: &SimplicialPoset) -> Result<bool> {
    if poset.d() == 0 || !poset.is_pure() {
        return Ok(false);
    }
    for &v in poset.cells_of_rank(1) {
        if !link_is_homology_sphere(poset, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pure, and every vertex link is a homology sphere in the full recursive
/// sense (all links of nonempty cells are homology spheres).
pub fn is_homology_manifold_strict(poset: &SimplicialPoset) -> Result<bool> {
    if poset.d() == 0 || !poset.is_pure() {
        return Ok(false);
    }
    for cell in 1..poset.cell_count() {
        if !link_is_homology_sphere(poset, cell)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `β̃_{d-1} = 1` over GF(2).
pub fn is_orientable_gf2(poset: &SimplicialPoset) -> Result<bool> {
    let b = betti_gf2(poset)?;
    Ok(b.reduced().last() == Some(&1))
}
