//! Reduced GF(2) homology of the order complex of `P ∖ {0̂}`.
//!
//! The order complex is the combinatorial barycentric subdivision of the
//! cell complex of `P`, so its homology agrees with that of `P`. This path
//! shares nothing with the cellular computation beyond the poset itself:
//! simplices are chains, and ranks come from a sparse column reduction.

use std::collections::HashMap;

use crate::simplicial_poset::SimplicialPoset;
use crate::vectors::BettiVector;
use crate::{Error, Result};

/// Refuse posets whose order complex has more simplices than this.
pub const MAX_CHAINS: u64 = 1_000_000;

/// Number of nonempty chains in `P ∖ {0̂}`.
pub fn chain_count(poset: &SimplicialPoset) -> u64 {
    // ending[c]: chains whose largest element is c.
    let mut ending = vec![0u64; poset.cell_count()];
    let mut total = 0u64;
    for rank in 1..=poset.d() {
        for &c in poset.cells_of_rank(rank) {
            let below: u64 = poset
                .lower_interval(c)
                .into_iter()
                .filter(|&b| b != c && b != 0)
                .map(|b| ending[b])
                .sum();
            ending[c] = 1 + below;
            total = total.saturating_add(ending[c]);
        }
    }
    total
}

/// Reduced Betti numbers `(β̃_0, ..., β̃_{d-1})` of the order complex.
pub fn betti_order_complex(poset: &SimplicialPoset) -> Result<BettiVector> {
    let count = chain_count(poset);
    if count > MAX_CHAINS {
        return Err(Error::TooLarge(format!("order complex has {count} simplices (limit {MAX_CHAINS})")));
    }
    let d = poset.d();
    // simplices[k]: chains with k+1 elements, each listed bottom to top.
    let mut simplices: Vec<Vec<Vec<u32>>> = vec![Vec::new(); d];
    let mut strictly_below: Vec<Vec<u32>> = vec![Vec::new(); poset.cell_count()];
    for c in 1..poset.cell_count() {
        strictly_below[c] = poset
            .lower_interval(c)
            .into_iter()
            .filter(|&b| b != c && b != 0)
            .map(|b| b as u32)
            .collect();
    }
    fn extend(top: u32, chain: &mut Vec<u32>, below: &[Vec<u32>], out: &mut [Vec<Vec<u32>>]) {
        chain.push(top);
        let mut sorted = chain.clone();
        sorted.reverse();
        out[chain.len() - 1].push(sorted);
        for &b in &below[top as usize] {
            extend(b, chain, below, out);
        }
        chain.pop();
    }
    let mut chain = Vec::with_capacity(d);
    for c in 1..poset.cell_count() {
        extend(c as u32, &mut chain, &strictly_below, &mut simplices);
    }

    let index: Vec<HashMap<&[u32], usize>> = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
        .collect();

    // ranks[k]: rank of ∂ from k-simplices to (k-1)-simplices; ranks[0] is
    // the augmentation.
    let mut ranks = vec![0usize; d + 1];
    ranks[0] = usize::from(!simplices.first().is_none_or(Vec::is_empty));
    for k in 1..d {
        let columns: Vec<Vec<usize>> = simplices[k]
            .iter()
            .map(|s| {
                let mut col: Vec<usize> = (0..s.len())
                    .map(|drop| {
                        let face: Vec<u32> =
                            s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                        index[k - 1][face.as_slice()]
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = sparse_rank(columns);
    }
    let betti = (0..d)
        .map(|k| (simplices[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    Ok(BettiVector::new(betti))
}

/// Rank of a GF(2) matrix given as sorted sparse columns, by the standard
/// column reduction on largest row index.
fn sparse_rank(mut columns: Vec<Vec<usize>>) -> usize {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            let Some(&i) = owner.get(&low) else {
                owner.insert(low, j);
                rank += 1;
                break;
            };
            columns[j] = symmetric_difference(&columns[j], &columns[i]);
        }
    }
    rank
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
