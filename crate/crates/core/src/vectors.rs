//! Integer face-number vectors and the transforms between them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::{Error, Result};

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
fn serialize_ints<S: Serializer>(values: &[BigInt], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(values.len()))?;
    for v in values {
        match v.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

fn fmt_ints<T: fmt::Display>(values: &[T], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, ")")
}

/// Parses a comma-separated list of integers such as `1,0,6,-1`.
pub fn parse_int_list(text: &str) -> Result<Vec<BigInt>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidArgument("empty integer list".into()));
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidArgument(format!("not an integer: {s:?}")))
        })
        .collect()
}

/// Rank counts `(f_0, ..., f_d)` of a simplicial poset, `f_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        match entries.first() {
            Some(1) => Ok(Self(entries)),
            _ => Err(Error::InvalidArgument(format!("f-vector must start with f_0 = 1, got {entries:?}"))),
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `d`, i.e. the rank of a facet.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// Expands `Σ f_i t^i (1-t)^{d-i} = Σ h_i t^i`:
    /// `h_k = Σ_{i≤k} (-1)^{k-i} C(d-i, k-i) f_i`.
    pub fn h_vector(&self) -> HVector {
        let d = self.d();
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| sign(k - i) * binomial(d - i, k - i) * BigInt::from(self.0[i]))
                    .sum()
            })
            .collect();
        HVector(h)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ints(&self.0, f)
    }
}

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name(pub Vec<BigInt>);

        impl $name {
            pub fn new(entries: Vec<BigInt>) -> Self {
                Self(entries)
            }

            pub fn from_i64s(entries: &[i64]) -> Self {
                Self(entries.iter().map(|&x| BigInt::from(x)).collect())
            }

            pub fn entries(&self) -> &[BigInt] {
                &self.0
            }

            pub fn d(&self) -> usize {
                self.0.len().saturating_sub(1)
            }

            /// Entries as `i64`, or `None` if any entry overflows.
            pub fn to_i64s(&self) -> Option<Vec<i64>> {
                self.0.iter().map(ToPrimitive::to_i64).collect()
            }

            pub fn sum(&self) -> BigInt {
                self.0.iter().sum()
            }

            pub fn is_nonnegative(&self) -> bool {
                self.0.iter().all(|x| !x.is_negative())
            }

            pub fn is_symmetric(&self) -> bool {
                let n = self.0.len();
                (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_ints(&self.0, s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_ints(&self.0, f)
            }
        }
    };
}

int_vector!(
    /// `(h_0, ..., h_d)`; entries may be negative.
    HVector
);

int_vector!(
    /// Betti-corrected `h''`-vector. For homology manifolds this is
    /// nonnegative and symmetric.
    HppVector
);

impl HVector {
    /// Inverse of [`FVector::h_vector`]: `f_k = Σ_{i≤k} C(d-i, k-i) h_i`.
    ///
    /// Fails if some `f_k` comes out negative or `f_0 ≠ 1`.
    pub fn to_f_vector(&self) -> Result<FVector> {
        let d = self.d();
        let mut f = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let fk: BigInt = (0..=k).map(|i| binomial(d - i, k - i) * &self.0[i]).sum();
            let fk = fk
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument(format!("h-vector gives f_{k} = {fk}, not a count")))?;
            f.push(fk);
        }
        FVector::new(f)
    }
}

/// Reduced GF(2) Betti numbers `(β̃_0, ..., β̃_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct BettiVector(Vec<u64>);

impl BettiVector {
    pub fn new(reduced: Vec<u64>) -> Self {
        Self(reduced)
    }

    pub fn reduced(&self) -> &[u64] {
        &self.0
    }

    /// `d`; the vector has one entry per dimension `0..d`.
    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// The presentation `(1, β_1, ..., β_{d-1})` used by `h^β`.
    pub fn presentation(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one()];
        out.extend(self.0.iter().skip(1).map(|&b| BigInt::from(b)));
        out
    }

    /// Betti vector of a `(d-1)`-sphere.
    pub fn sphere(d: usize) -> Self {
        let mut v = vec![0; d];
        if let Some(last) = v.last_mut() {
            *last = 1;
        }
        Self(v)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ints(&self.0, f)
    }
}
