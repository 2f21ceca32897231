//! Dense GF(2) matrices with rows packed into `u64` words.

/// A row-major bit matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r)[c / 64] >> (c % 64) & 1 == 1
    }

    /// Adds 1 to entry `(r, c)` (i.e. flips it).
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    /// Rank by forward elimination, rows taken in index order. Each row is
    /// reduced against the pivots found so far, keyed by lowest set column.
    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.cols];
        let mut rank = 0;
        for r in 0..self.rows() {
            let mut row = self.row(r).to_vec();
            while let Some(lead) = lowest_bit(&row) {
                match &pivots[lead] {
                    Some(p) => row.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                    None => {
                        pivots[lead] = Some(row);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// `self · other` over GF(2), where `self` is `m × n` and `other` is
    /// `n × k`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows(), "dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for r in 0..self.rows() {
            for c in (0..self.cols).filter(|&c| self.get(r, c)) {
                let src = other.row(c);
                let dst = &mut out.data[r * out.words..(r + 1) * out.words];
                dst.iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
