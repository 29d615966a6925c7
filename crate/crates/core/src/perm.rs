use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a permutation of 0..{degree}: {images:?}")]
pub struct InvalidPermutation {
    pub degree: usize,
    pub images: Vec<usize>,
}

/// A permutation of `0..n` in one-line notation: point `i` maps to `images[i]`.
///
/// Permutations act on the right, so `a.then(&b)` is "apply `a`, then `b`"
/// and is the group product `ab`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, InvalidPermutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(InvalidPermutation { degree: n, images });
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, InvalidPermutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= n || y >= n || moved[x] {
                    return Err(InvalidPermutation { degree: n, images: cycle.to_vec() });
                }
                moved[x] = true;
                images[x] = y;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `x⁻¹ self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().then(self).then(x)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x];
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}
