//! Integer partitions of `n`, used both as conjugacy-class labels (cycle
//! types) and as labels of the irreducible representations of `S_n`.

use num::BigInt;
use std::fmt;

use crate::{Error, Result};

/// A partition `λ_1 ≥ λ_2 ≥ … ≥ λ_k ≥ 1` with `Σ λ_i = n`.
///
/// Ordered by decreasing lexicographic comparison of the part vectors, so
/// `(n)` sorts first and `(1^n)` last; this fixes row/column order everywhere
/// a table is emitted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Cycle type of a permutation: structurally the same object as a partition.
pub type CycleType = Partition;

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Like [`Partition::new`] but checks the parts sum to `n`.
    pub fn of(n: usize, parts: Vec<usize>) -> Result<Self> {
        let p = Partition::new(parts);
        if p.size() != n {
            return Err(Error::PartitionSizeMismatch {
                expected: n,
                found: p.parts,
            });
        }
        Ok(p)
    }

    /// Hook shape `(k, 1^{n-k})`.
    pub fn hook(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n, "hook arm out of range");
        let mut parts = vec![1usize; n - k + 1];
        parts[0] = k;
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `Σ λ_i`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows of the Young diagram).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of `part` among the parts.
    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Conjugate (transposed) diagram.
    pub fn conjugate(&self) -> Partition {
        let rows = self.parts.len();
        let cols = self.parts.first().copied().unwrap_or(0);
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            parts.push(self.parts[..rows].iter().filter(|&&p| p > j).count());
        }
        Partition { parts }
    }

    /// Centralizer order `z_λ = Π_i i^{m_i} · m_i!` where `m_i` is the
    /// multiplicity of the part `i`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::from(1u32);
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut m = 0usize;
            while i < self.parts.len() && self.parts[i] == part {
                m += 1;
                i += 1;
            }
            for _ in 0..m {
                z *= part;
            }
            for f in 1..=m {
                z *= f;
            }
        }
        z
    }

    /// Size of the conjugacy class with this cycle type: `n! / z_λ`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.centralizer_order()
    }

    /// All partitions of `n` in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let first = remaining.min(max);
            for p in (1..=first).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    /// Parts joined by `+`, e.g. `3+1+1`; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.parts)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::from(1u32);
    for i in 2..=n {
        f *= i;
    }
    f
}

/// `n!` as `u64`; only valid for `n ≤ 20`.
pub fn factorial_u64(n: usize) -> u64 {
    assert!(n <= 20, "n! overflows u64 for n > 20");
    (2..=n as u64).product::<u64>().max(1)
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0u32);
    }
    let mut num = BigInt::from(1u32);
    for i in 0..k.min(n - k) {
        num = num * (n - i) / (i + 1);
    }
    num
}
