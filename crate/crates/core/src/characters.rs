//! Exact character theory of `S_n`.
//!
//! Everything here is integer or rational arithmetic: character values come
//! from the Murnaghan–Nakayama rim-hook recursion (beta-set form, memoized),
//! dimensions from the hook-length formula, and the two are cross-checked
//! against each other and against closed forms for the class families the
//! walk analysis needs (transpositions, full cycles, and two-cycle classes
//! `(n−l, l)`).
//!
//! The `Ξ_n` family (hooks `(k, 1^{n−k})` and shapes `(μ1, μ2, 2^{r−2},
//! 1^{l−r})`) is exactly the set of partitions whose characters can be
//! nonzero on a two-cycle class, so it carries the whole overlap computation.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use crate::partition::{factorial, CycleType, Partition};
use crate::{Error, Result};

type MnKey = (Vec<usize>, Vec<usize>);

fn mn_cache() -> &'static RwLock<HashMap<MnKey, BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<MnKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// First-column beta set `β_i = λ_i + (k − 1 − i)`, strictly decreasing.
fn beta_set(parts: &[usize]) -> Vec<usize> {
    let k = parts.len();
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i))
        .collect()
}

/// Partition recovered from a strictly decreasing beta set, zeros stripped.
fn partition_from_beta(beta: &mut [usize]) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let k = beta.len();
    let mut parts: Vec<usize> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i))
        .collect();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    parts
}

/// Murnaghan–Nakayama recursion over beta sets. Removing a rim hook of size
/// `m` moves a bead from `b` to `b − m`; the leg length is the number of
/// occupied positions strictly in between. Parts of the content are consumed
/// largest first, which canonicalizes the memo key.
fn mn_recurse(lambda: &[usize], content: &[usize]) -> BigInt {
    if lambda.is_empty() {
        return BigInt::one();
    }
    let key: MnKey = (lambda.to_vec(), content.to_vec());
    if let Some(hit) = mn_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let m = content[0];
    let beta = beta_set(lambda);
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < m || beta.contains(&(b - m)) {
            continue;
        }
        let target = b - m;
        let leg = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut next_beta = beta.clone();
        next_beta[i] = target;
        let next = partition_from_beta(&mut next_beta);
        let term = mn_recurse(&next, &content[1..]);
        if leg % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    mn_cache().write().unwrap().insert(key, total.clone());
    total
}

/// Character value `χ_λ(μ)` as an exact integer.
pub fn character(lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::PartitionSizeMismatch {
            expected: lambda.size(),
            found: mu.parts().to_vec(),
        });
    }
    Ok(mn_recurse(lambda.parts(), mu.parts()))
}

/// Dimension of the irreducible representation `ρ_λ` by the hook-length
/// formula `n! / Π h(i,j)`.
pub fn dimension(lambda: &Partition) -> BigInt {
    let n = lambda.size();
    if n == 0 {
        return BigInt::one();
    }
    let conj = lambda.conjugate();
    let mut denom = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let hook = (row - j) + (conj.parts()[j] - i) - 1;
            denom *= hook;
        }
    }
    factorial(n) / denom
}

/// Membership of a partition in the two-column family `Ξ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiMembership {
    /// `(k, 1^{n−k})`; the hook reading is preferred when both apply.
    Hook {
        k: usize,
    },
    /// `(μ1, μ2, 2^{r−2}, 1^{l−r})` with `μ1 ≥ μ2 ≥ 2`, `l ≥ r ≥ 2`.
    General {
        mu1: usize,
        mu2: usize,
        r: usize,
        l: usize,
    },
    NotInXi,
}

/// Canonical decomposition of `mu` with respect to `Ξ_n`.
pub fn xi_classify(mu: &Partition) -> XiMembership {
    let parts = mu.parts();
    if parts.is_empty() {
        return XiMembership::NotInXi;
    }
    if parts[1..].iter().all(|&p| p == 1) {
        return XiMembership::Hook { k: parts[0] };
    }
    if parts[1] >= 2 && parts[2..].iter().all(|&p| p <= 2) {
        return XiMembership::General {
            mu1: parts[0],
            mu2: parts[1],
            r: parts.iter().filter(|&&p| p >= 2).count(),
            l: parts.len(),
        };
    }
    XiMembership::NotInXi
}

/// All of `Ξ_n` in decreasing lexicographic order, each shape exactly once.
pub fn enumerate_xi(n: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = (1..=n).map(|k| Partition::hook(n, k)).collect();
    for mu2 in 2..=n / 2 {
        for r in 2.. {
            let twos = 2 * (r - 2);
            if mu2 + mu2 + twos > n {
                break;
            }
            for l in r.. {
                let ones = l - r;
                let used = mu2 + twos + ones;
                if used + mu2 > n {
                    break;
                }
                let mu1 = n - used;
                // mu1 >= mu2 holds by the loop bound; ones follow the 2s
                let mut parts = vec![mu1, mu2];
                parts.extend(std::iter::repeat_n(2, r - 2));
                parts.extend(std::iter::repeat_n(1, l - r));
                out.push(Partition::new(parts));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `χ_μ([σ])` on the transposition class, by the content-polynomial closed
/// form `dim ρ_μ / (n(n−1)) · Σ_j (μ_j−j+1)(μ_j−j) − j(j−1)`.
///
/// Exact: the division is checked to be integral. Parts beyond the length of
/// `mu` would contribute zero to the sum, so it runs over actual rows only.
pub fn char_transposition(mu: &Partition) -> BigInt {
    let n = mu.size();
    assert!(n >= 2, "transposition class needs n >= 2");
    let mut sum = BigInt::zero();
    for (j0, &p) in mu.parts().iter().enumerate() {
        let j = (j0 + 1) as i64;
        let p = p as i64;
        sum += BigInt::from((p - j + 1) * (p - j) - j * (j - 1));
    }
    let numer = dimension(mu) * sum;
    let denom = BigInt::from((n * (n - 1)) as u64);
    let (q, r) = num::Integer::div_rem(&numer, &denom);
    debug_assert!(r.is_zero(), "character on transpositions must be integral");
    q
}

/// `χ_μ([n])` on the class of full cycles: `(−1)^{n−k}` for the hook
/// `(k, 1^{n−k})`, zero for every other shape.
pub fn char_ncycle(mu: &Partition) -> BigInt {
    match xi_classify(mu) {
        XiMembership::Hook { k } => {
            if (mu.size() - k).is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        }
        _ => BigInt::zero(),
    }
}

/// `χ_μ([τ_l])` on the class `(n−l, l)`, `1 ≤ l ≤ ⌊n/2⌋`.
///
/// For hooks `(k, 1^{n−k})` there are at most two rim-hook fillings and the
/// value is given in closed form:
///   `(−1)^{n−k−1}` when `l ≥ k`, `(−1)^{n−k}` when `n−k+1 ≤ l < k`, else 0.
/// (The second branch fires only for k > n/2; without it the trivial and
/// near-trivial hooks would be wrongly reported as zero.)
/// General `Ξ_n` shapes fall back to the rim-hook recursion, and shapes
/// outside `Ξ_n` are zero. For `l = n/2` the value can reach ±2: two distinct
/// fillings with equal strip sizes may coexist, e.g. `χ_{(2,2)}((2,2)) = 2`.
pub fn char_two_cycle_class(mu: &Partition, l: usize) -> Result<BigInt> {
    let n = mu.size();
    if l < 1 || l > n / 2 {
        return Err(Error::CycleLengthOutOfRange { l, max: n / 2 });
    }
    Ok(match xi_classify(mu) {
        XiMembership::Hook { k } => {
            let sign = |even: bool| if even { BigInt::one() } else { -BigInt::one() };
            if l >= k {
                sign((n - k - 1).is_multiple_of(2))
            } else if l + k > n {
                sign((n - k).is_multiple_of(2))
            } else {
                BigInt::zero()
            }
        }
        XiMembership::General { .. } => {
            let class = CycleType::new(vec![n - l, l]);
            character(mu, &class)?
        }
        XiMembership::NotInXi => BigInt::zero(),
    })
}

/// A class function on `S_n` with exact rational values; classes absent from
/// the table read as zero.
#[derive(Clone, Debug, Default)]
pub struct ClassFunction {
    n: usize,
    table: BTreeMap<CycleType, BigRational>,
}

impl ClassFunction {
    pub fn new(n: usize) -> Self {
        ClassFunction {
            n,
            table: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, class: CycleType, value: BigRational) {
        assert_eq!(class.size(), self.n, "class of the wrong group");
        self.table.insert(class, value);
    }

    pub fn get(&self, class: &CycleType) -> BigRational {
        self.table
            .get(class)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Indicator of a single class, scaled by `scale`.
    pub fn indicator(class: CycleType, scale: BigRational) -> Self {
        let mut f = ClassFunction::new(class.size());
        f.set(class, scale);
        f
    }

    /// The constant function `c`.
    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut f = ClassFunction::new(n);
        for class in Partition::all(n) {
            f.set(class, c.clone());
        }
        f
    }
}

/// Fourier coefficient of a class function at the irrep `ρ_μ`: the transform
/// collapses to a multiple of the identity, and this returns that scalar,
/// `(1/dim ρ_μ) Σ_c f(c) χ_μ(c) |c|`.
pub fn fourier_class_function(f: &ClassFunction, mu: &Partition) -> Result<BigRational> {
    if f.n() != mu.size() {
        return Err(Error::PartitionSizeMismatch {
            expected: f.n(),
            found: mu.parts().to_vec(),
        });
    }
    let mut sum = BigRational::zero();
    for class in Partition::all(f.n()) {
        let v = f.get(&class);
        if v.is_zero() {
            continue;
        }
        let chi = character(mu, &class)?;
        sum += v * BigRational::from(chi * class.class_size());
    }
    Ok(sum / BigRational::from(dimension(mu)))
}

/// Outcome of checking `|χ_μ([σ])| ≤ C · n^{6.5} · β^n` for one non-hook
/// shape of `Ξ_n`. `C` is an empirical constant recorded in the report; the
/// comparison uses the exact character value on the left.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BetaBoundReport {
    pub n: usize,
    pub mu: String,
    pub lhs: String,
    pub ratio: f64,
    pub constant: f64,
    pub pass: bool,
}

/// Empirical constant used by [`beta_bound_check`].
pub const BETA_BOUND_CONSTANT: f64 = 10.0;

/// Checks the exponential character bound for a single `μ ∈ Ξ_n` that is not
/// a hook. `beta` must be at least `81/16` for the bound to be meaningful.
pub fn beta_bound_check(mu: &Partition, beta: &BigRational) -> Result<BetaBoundReport> {
    match xi_classify(mu) {
        XiMembership::General { .. } => {}
        _ => return Err(Error::NotGeneralShape(mu.parts().to_vec())),
    }
    let n = mu.size();
    let lhs = char_transposition(mu).abs();
    let lhs_f = big_to_f64(&lhs);
    let beta_f = big_rational_to_f64(beta);
    let envelope = (n as f64).powf(6.5) * beta_f.powi(n as i32);
    let ratio = lhs_f / envelope;
    Ok(BetaBoundReport {
        n,
        mu: mu.to_string(),
        lhs: lhs.to_string(),
        ratio,
        constant: BETA_BOUND_CONSTANT,
        pass: ratio <= BETA_BOUND_CONSTANT,
    })
}

/// Runs [`beta_bound_check`] over all non-hook shapes of `Ξ_n` and reports
/// the worst ratio.
pub fn beta_bound_sweep(n: usize, beta: &BigRational) -> (Vec<BetaBoundReport>, f64) {
    let mut reports = Vec::new();
    let mut max_ratio: f64 = 0.0;
    for mu in enumerate_xi(n) {
        if matches!(xi_classify(&mu), XiMembership::General { .. }) {
            let r = beta_bound_check(&mu, beta).expect("general shape");
            max_ratio = max_ratio.max(r.ratio);
            reports.push(r);
        }
    }
    (reports, max_ratio)
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    num::ToPrimitive::to_f64(x).expect("BigInt out of f64 range")
}

pub(crate) fn big_rational_to_f64(x: &BigRational) -> f64 {
    big_to_f64(x.numer()) / big_to_f64(x.denom())
}
