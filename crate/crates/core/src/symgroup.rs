//! Permutations of `{0, …, n−1}`, conjugacy-class combinatorics and the
//! transposition generating set of the Cayley graph.
//!
//! A permutation is stored in one-line notation; `rank`/`unrank` give the
//! lexicographic (Lehmer) bijection with `0..n!` that the walk uses as its
//! canonical vertex index. The generating set returned by [`transpositions`]
//! is in fixed `(i, j)`, `i < j` lexicographic order so edge-space indices are
//! reproducible across runs.

use crate::partition::CycleType;
use crate::{Error, Result};

/// Element of `S_n` in one-line notation: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Checks `images` is a bijection on `{0, …, n−1}`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n && i != j);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// The cycle `(0 1 2 … n−1)`, mapping `i ↦ i+1 mod n`.
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition acting left-to-right on points: `(p ∘ q)(i) = p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: q.degree(),
            });
        }
        Ok(Permutation {
            images: (0..self.degree())
                .map(|i| self.images[q.images[i]])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Multiset of cycle lengths, sorted decreasing.
    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    /// Sign: `+1` for even permutations, `−1` for odd.
    pub fn sign(&self) -> i32 {
        let ct = self.cycle_type();
        if (self.degree() - ct.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Lexicographic rank of the one-line word among all of `S_n`.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        let mut factor = crate::partition::factorial_u64(n);
        // Lehmer code: count smaller unused images to the right.
        let mut used = vec![false; n];
        for i in 0..n {
            factor /= (n - i) as u64;
            let smaller = (0..self.images[i]).filter(|&v| !used[v]).count() as u64;
            rank += smaller * factor;
            used[self.images[i]] = true;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: u64) -> Result<Permutation> {
        let total = crate::partition::factorial_u64(n);
        if rank >= total {
            return Err(Error::RankOutOfRange { n, rank });
        }
        let mut available: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        let mut factor = total;
        for i in 0..n {
            factor /= (n - i) as u64;
            let idx = (rank / factor) as usize;
            rank %= factor;
            images.push(available.remove(idx));
        }
        Ok(Permutation { images })
    }

    /// One-line notation with spaces, e.g. `1 0 2`.
    pub fn one_line(&self) -> String {
        self.images
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the output of [`Permutation::one_line`].
    pub fn parse_one_line(s: &str) -> Result<Permutation> {
        let images: std::result::Result<Vec<usize>, _> =
            s.split_whitespace().map(|t| t.parse::<usize>()).collect();
        match images {
            Ok(v) => Permutation::new(v),
            Err(_) => Err(Error::NotAPermutation(0)),
        }
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.one_line())
    }
}

/// All `C(n,2)` transpositions of `S_n` in `(i,j)` lexicographic order.
pub fn transpositions(n: usize) -> Vec<Permutation> {
    assert!(n >= 2, "transpositions need n >= 2");
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(Permutation::transposition(n, i, j));
        }
    }
    out
}

/// All `(n−1)!` full cycles of `S_n` (cycle type `(n)`), by increasing rank.
pub fn n_cycles(n: usize) -> Vec<Permutation> {
    let total = crate::partition::factorial_u64(n);
    let mut out = Vec::new();
    for r in 0..total {
        let p = Permutation::unrank(n, r).unwrap();
        if p.cycle_type().parts() == [n] {
            out.push(p);
        }
    }
    out
}
