//! Spectral analysis of the walk operator through class functions.
//!
//! The discriminant `D` acts on each isotypic block of the group algebra as
//! the scalar `λ̃_μ = χ_μ([σ]) / dim ρ_μ`, so its full spectrum (and through
//! it the spectrum of `W`) is a finite list of exact rationals indexed by
//! partitions. The overlap `⟨φ_[n]| W^t |φ_e⟩` decomposes accordingly:
//!
//! - each `μ` with `λ_μ = |λ̃_μ| ∈ (0,1)` contributes a rotation term with
//!   angle `2θ_μ`, `θ_μ = arccos λ_μ`, whose three coefficients are exact
//!   rationals scaled by `1/√((n−1)!)`;
//! - the trivial and sign blocks (`λ = 1`) sit inside the `+1` eigenspace of
//!   `W` and contribute the constant `(1 + (−1)^{n−1}) √((n−1)!)/n!`, which
//!   vanishes for even `n` but not for odd `n`;
//! - blocks with `λ̃_μ = 0` sit in the `−1` eigenspace and contribute
//!   `(−1)^t · dim ρ_μ · χ_μ([n]) · √((n−1)!)/n!` each.
//!
//! The per-`μ` rotation term is `(1/sin²θ_μ)(α₁ cos 2θ_μt − s_μ α₂ cos
//! 2θ_μ(t−½) − s_μ α₃ cos 2θ_μ(t+½))`. Two normalizations here differ from
//! the obvious bookkeeping and are fixed by the dense-projector oracle and
//! the simulation reconciliation: the prefactor is `1/sin²θ` (a `1/(2sin²θ)`
//! normalization undercounts every rotation block by half), and
//! `α₃ = dim ρ_μ · γ̃_μ / (d · n! · √((n−1)!))` carries the dimension factor.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::characters::{
    big_rational_to_f64, char_ncycle, char_transposition, character, dimension, enumerate_xi,
    xi_classify, XiMembership,
};
use crate::partition::{factorial, CycleType, Partition};
use crate::{Error, Result};

/// Exact scalar of the form `coeff · ((n−1)!)^{sqrt_pow/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdRational {
    pub coeff: BigRational,
    /// Power of `√((n−1)!)`: −1, 0 or +1 here.
    pub sqrt_pow: i8,
}

impl SurdRational {
    pub fn new(coeff: BigRational, sqrt_pow: i8) -> Self {
        SurdRational { coeff, sqrt_pow }
    }

    pub fn to_f64(&self, n: usize) -> f64 {
        let root = big_rational_to_f64(&BigRational::from(factorial(n - 1))).sqrt();
        big_rational_to_f64(&self.coeff) * root.powi(self.sqrt_pow as i32)
    }
}

/// Eigenvalue of the discriminant on the `ρ_μ` block: `χ_μ([σ])/dim ρ_μ`.
pub fn lambda_tilde(mu: &Partition) -> BigRational {
    BigRational::new(char_transposition(mu), dimension(mu))
}

/// Per-block record of the walk spectrum.
#[derive(Clone, Debug)]
pub struct SpectralComponent {
    pub mu: Partition,
    /// Signed eigenvalue of `D` on the block.
    pub lambda_tilde: BigRational,
    /// Singular value `|λ̃_μ|`.
    pub lambda: BigRational,
    /// Sign of `λ̃_μ`; 0 when the eigenvalue vanishes.
    pub s: i8,
    /// Rotation half-angle `arccos λ_μ`.
    pub theta: f64,
    pub dim: BigInt,
    /// Multiplicity of `λ̃_μ` contributed by this block: `dim²`.
    pub multiplicity: BigInt,
}

impl SpectralComponent {
    pub fn new(mu: Partition) -> Self {
        let lt = lambda_tilde(&mu);
        let dim = dimension(&mu);
        let lambda = lt.abs();
        let s = match lt.numer().sign() {
            num::bigint::Sign::Plus => 1,
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
        };
        let theta = big_rational_to_f64(&lambda).clamp(0.0, 1.0).acos();
        let multiplicity = &dim * &dim;
        SpectralComponent {
            mu,
            lambda_tilde: lt,
            lambda,
            s,
            theta,
            dim,
            multiplicity,
        }
    }
}

/// The spectrum of `D` as a multiset: one `(λ̃_μ, dim ρ_μ²)` entry per
/// partition of `n`, in decreasing lexicographic partition order.
pub fn spectrum_of_d(n: usize) -> Vec<SpectralComponent> {
    Partition::all(n)
        .into_iter()
        .map(SpectralComponent::new)
        .collect()
}

/// Number of full cycles reachable from `g` by one generator: the count
/// `#{h ∈ [n] : g⁻¹h ∈ S}`. Nonzero exactly on the two-cycle classes
/// `(n−l, l)`, where it equals `l(n−l)`.
pub fn upsilon(class: &CycleType) -> BigInt {
    let parts = class.parts();
    if parts.len() == 2 {
        BigInt::from(parts[0] as u64 * parts[1] as u64)
    } else {
        BigInt::zero()
    }
}

/// `γ̃_μ = Σ_{[τ]} |[τ]| · Υ([τ]) · χ_μ([τ])`, summed over the two-cycle
/// classes (the only ones where `Υ` is nonzero). Exact integer.
pub fn gamma_tilde(mu: &Partition) -> BigInt {
    let n = mu.size();
    let mut acc = BigInt::zero();
    for l in 1..=n / 2 {
        let class = CycleType::new(vec![n - l, l]);
        let chi = character(mu, &class).expect("classes of the same n");
        if chi.is_zero() {
            continue;
        }
        acc += class.class_size() * upsilon(&class) * chi;
    }
    acc
}

/// Closed form of `γ̃` for hooks `(k, 1^{n−k})`: `½(−1)^{n−k−1}(n−2k+1)·n!`
/// for every `k` and either parity of `n`.
pub fn gamma_tilde_hook(n: usize, k: usize) -> BigInt {
    let magnitude = factorial(n) * BigInt::from(n as i64 - 2 * k as i64 + 1);
    let signed = if (n as i64 - k as i64 - 1).rem_euclid(2) == 0 {
        magnitude
    } else {
        -magnitude
    };
    signed / BigInt::from(2u32)
}

/// `ι_μ = γ̃_μ / n!` as an exact rational.
pub fn iota(mu: &Partition) -> BigRational {
    BigRational::new(gamma_tilde(mu), factorial(mu.size()))
}

/// The four diagonal scalars of the isotypic projections: each inner product
/// with the basis functions of the `ρ_μ` block is this scalar times `δ_ij`.
#[derive(Clone, Debug)]
pub struct ProjectionScalars {
    /// `⟨ρ_{μ,i,j}| A† |φ_e⟩`: always 1.
    pub a_from_identity: SurdRational,
    /// `⟨ρ_{μ,i,j}| B† |φ_e⟩ = χ_μ([σ])/dim ρ_μ`.
    pub b_from_identity: SurdRational,
    /// `⟨φ_[n]| A |ρ_{μ,i,j}⟩ = √((n−1)!) χ_μ([n])/dim ρ_μ`.
    pub a_to_ncycles: SurdRational,
    /// `⟨φ_[n]| B |ρ_{μ,i,j}⟩ = γ̃_μ / (d √((n−1)!) dim ρ_μ)`.
    pub b_to_ncycles: SurdRational,
}

/// The scalars of the four projection identities for the block `ρ_μ`.
pub fn projection_scalars(mu: &Partition) -> ProjectionScalars {
    let n = mu.size();
    let d = BigInt::from((n * (n - 1) / 2) as u64);
    let dim = dimension(mu);
    ProjectionScalars {
        a_from_identity: SurdRational::new(BigRational::one(), 0),
        b_from_identity: SurdRational::new(lambda_tilde(mu), 0),
        a_to_ncycles: SurdRational::new(BigRational::new(char_ncycle(mu), dim.clone()), 1),
        b_to_ncycles: SurdRational::new(BigRational::new(gamma_tilde(mu), d * dim), -1),
    }
}

/// The three operator overlaps of the `ρ_μ` rotation block, as exact
/// rationals scaled by `1/√((n−1)!)`:
///
/// - `a1 = ⟨φ_[n]|(AΠ_μA† + BΠ_μB†)|φ_e⟩`
/// - `a2 = ⟨φ_[n]| AΠ_μB† |φ_e⟩ = λ̃_μ · (A-side part of a1)`
/// - `a3 = ⟨φ_[n]| BΠ_μA† |φ_e⟩ = dim ρ_μ · γ̃_μ / (n!·d)`
///
/// When `χ_μ([σ]) ≠ 0` they satisfy
/// `a1 = (dim/χ_μ([σ]))·a2 + (χ_μ([σ])/dim)·a3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTriple {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
}

/// Overlap coefficients for `μ ∈ Ξ_n`; shapes outside `Ξ_n` have all three
/// identically zero and are rejected.
pub fn alpha_triple(mu: &Partition) -> Result<AlphaTriple> {
    if matches!(xi_classify(mu), XiMembership::NotInXi) {
        return Err(Error::OutsideXi(mu.parts().to_vec()));
    }
    Ok(alpha_triple_unchecked(mu))
}

fn alpha_triple_unchecked(mu: &Partition) -> AlphaTriple {
    let n = mu.size();
    let d = BigInt::from((n * (n - 1) / 2) as u64);
    let dim = dimension(mu);
    let chi_n = char_ncycle(mu);
    let gamma = gamma_tilde(mu);
    let n_fact = factorial(n);
    // A-side projector overlap (coefficient of 1/√((n−1)!)): dim·(n−1)!·χn/n! = dim·χn/n
    let a_side = BigRational::new(&dim * &chi_n, BigInt::from(n as u64));
    let a3 = BigRational::new(&dim * &gamma, n_fact * &d);
    let a2 = lambda_tilde(mu) * &a_side;
    let a1 = a_side + lambda_tilde(mu) * &a3;
    AlphaTriple { a1, a2, a3 }
}

/// One rotation block of the overlap formula.
#[derive(Clone, Debug)]
pub struct RotationTerm {
    pub component: SpectralComponent,
    pub alpha: AlphaTriple,
    a1f: f64,
    a2f: f64,
    a3f: f64,
}

/// Exact-as-possible assembly of `⟨φ_[n]| W^t |φ_e⟩` for one `n`: rational
/// coefficients are evaluated to `f64` once, and only the cosines depend on
/// `t`.
pub struct OverlapModel {
    n: usize,
    rotation: Vec<RotationTerm>,
    /// Constant part, coefficient of `1/√((n−1)!)`: `(1 + (−1)^{n−1})/n`.
    flat_constant: BigRational,
    /// Alternating part, coefficient of `1/√((n−1)!)`:
    /// `Σ_{λ̃_μ = 0} dim ρ_μ · χ_μ([n])/n`.
    flat_alternating: BigRational,
    flat_constant_f: f64,
    flat_alternating_f: f64,
}

impl OverlapModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::PartitionSizeMismatch {
                expected: 2,
                found: vec![n],
            });
        }
        let inv_root = 1.0 / big_rational_to_f64(&BigRational::from(factorial(n - 1))).sqrt();
        let mut rotation = Vec::new();
        let mut flat_alternating = BigRational::zero();
        for mu in enumerate_xi(n) {
            let comp = SpectralComponent::new(mu.clone());
            if comp.lambda_tilde.is_zero() {
                // −1 eigenspace of W: A- and B-images are orthogonal, each
                // flipped by the step
                flat_alternating +=
                    BigRational::new(comp.dim.clone() * char_ncycle(&mu), BigInt::from(n as u64));
                continue;
            }
            if comp.lambda == BigRational::one() {
                continue; // trivial and sign blocks: handled as the constant
            }
            let alpha = alpha_triple_unchecked(&mu);
            if alpha.a1.is_zero() && alpha.a2.is_zero() && alpha.a3.is_zero() {
                continue;
            }
            let a1f = big_rational_to_f64(&alpha.a1) * inv_root;
            let a2f = big_rational_to_f64(&alpha.a2) * inv_root;
            let a3f = big_rational_to_f64(&alpha.a3) * inv_root;
            rotation.push(RotationTerm {
                component: comp,
                alpha,
                a1f,
                a2f,
                a3f,
            });
        }
        // λ̃ = 0 can also occur outside Ξ_n, but those blocks are orthogonal
        // to both endpoint states (χ_μ([n]) = 0 and γ̃_μ = 0), so only Ξ_n is
        // scanned above.
        let parity = if n % 2 == 1 { 2i64 } else { 0 };
        let flat_constant = BigRational::new(BigInt::from(parity), BigInt::from(n as u64));
        let flat_constant_f = big_rational_to_f64(&flat_constant) * inv_root;
        let flat_alternating_f = big_rational_to_f64(&flat_alternating) * inv_root;
        Ok(OverlapModel {
            n,
            rotation,
            flat_constant,
            flat_alternating,
            flat_constant_f,
            flat_alternating_f,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rotation_terms(&self) -> &[RotationTerm] {
        &self.rotation
    }

    /// Exact coefficients (scaled by `1/√((n−1)!)`) of the constant and
    /// `(−1)^t` parts contributed by the `±1` eigenspaces of `W`.
    pub fn flat_coefficients(&self) -> (&BigRational, &BigRational) {
        (&self.flat_constant, &self.flat_alternating)
    }

    /// Sum of the rotation blocks only.
    pub fn rotation_part(&self, t: usize) -> f64 {
        let t = t as f64;
        let mut total = 0.0;
        for term in &self.rotation {
            let theta = term.component.theta;
            let s = term.component.s as f64;
            let sin_sq = {
                let s = theta.sin();
                s * s
            };
            let phase = 2.0 * theta * t;
            let value = term.a1f * phase.cos()
                - s * (term.a2f * (phase - theta).cos() + term.a3f * (phase + theta).cos());
            total += value / sin_sq;
        }
        total
    }

    /// Contribution of the `±1` eigenspaces at time `t`.
    pub fn flat_part(&self, t: usize) -> f64 {
        let alt = if t.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.flat_constant_f + alt * self.flat_alternating_f
    }

    /// `⟨φ_[n]| W^t |φ_e⟩`.
    pub fn evaluate(&self, t: usize) -> f64 {
        self.rotation_part(t) + self.flat_part(t)
    }
}

/// Closed-form overlap at a single time; build an [`OverlapModel`] for
/// repeated evaluation.
pub fn analytic_overlap(n: usize, t: usize) -> Result<f64> {
    Ok(OverlapModel::new(n)?.evaluate(t))
}

/// The asymptotic envelope `n^20 β^{2n} / n!` the main bound compares
/// against; vacuously large at desk scale.
pub fn bound_envelope(n: usize, beta: &BigRational) -> f64 {
    let beta_f = big_rational_to_f64(beta);
    let n_fact = big_rational_to_f64(&BigRational::from(factorial(n)));
    (n as f64).powi(20) * beta_f.powi(2 * n as i32) / n_fact
}

/// Sweep report for the divergence bound: per-`t` overlap values plus the
/// summary ratios. No assertion is made on the unstated asymptotic constant.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TheoremBoundReport {
    pub n: usize,
    pub beta: String,
    pub t_max: usize,
    pub max_overlap_sq: f64,
    pub classical_uniform: f64,
    pub bound_rhs: f64,
    /// `max_t overlap² · n! / β^{2n}`: the polynomial factor left over.
    pub ratio_poly: f64,
    pub rows: Vec<crate::report::OverlapRow>,
}

/// Sweeps `t ≤ t_max` of the analytic overlap against the bound shape and
/// the classical uniform mass `1/n`.
pub fn theorem_bound(n: usize, beta: &BigRational, t_max: usize) -> Result<TheoremBoundReport> {
    let model = OverlapModel::new(n)?;
    let bound_rhs = bound_envelope(n, beta);
    let classical = 1.0 / n as f64;
    let mut rows = Vec::with_capacity(t_max + 1);
    let mut max_sq: f64 = 0.0;
    for t in 0..=t_max {
        let v = model.evaluate(t);
        max_sq = max_sq.max(v * v);
        rows.push(crate::report::OverlapRow {
            n,
            t,
            analytic: Some(v),
            simulated: None,
            abs_diff: None,
            bound_rhs,
            classical_uniform: classical,
        });
    }
    let beta_f = big_rational_to_f64(beta);
    let n_fact = big_rational_to_f64(&BigRational::from(factorial(n)));
    Ok(TheoremBoundReport {
        n,
        beta: beta.to_string(),
        t_max,
        max_overlap_sq: max_sq,
        classical_uniform: classical,
        bound_rhs,
        ratio_poly: max_sq * n_fact / beta_f.powi(2 * n as i32),
        rows,
    })
}

/// Dense numerical cross-checks, used by tests and the `--dense-check` flag.
pub mod dense {
    use super::*;
    use crate::partition::factorial_u64;
    use crate::symgroup::{transpositions, Permutation};
    use nalgebra::DMatrix;

    /// Largest `n` for which the dense eigensolver is reasonable.
    pub const MAX_DENSE_N: usize = 6;

    /// The discriminant as a dense `n! × n!` matrix, straight from its
    /// definition `D_{xy} = 1/d` iff `x⁻¹y` is a transposition.
    pub fn discriminant(n: usize) -> Result<DMatrix<f64>> {
        if !(2..=MAX_DENSE_N).contains(&n) {
            return Err(Error::TableTooLarge {
                n,
                max: MAX_DENSE_N,
            });
        }
        let order = factorial_u64(n) as usize;
        let gens = transpositions(n);
        let w = 1.0 / gens.len() as f64;
        let mut m = DMatrix::zeros(order, order);
        for x in 0..order {
            let p = Permutation::unrank(n, x as u64).unwrap();
            for s in &gens {
                let y = p.compose(s).unwrap().rank() as usize;
                m[(x, y)] += w;
            }
        }
        Ok(m)
    }

    /// Eigenvalues of the dense discriminant, ascending.
    pub fn discriminant_eigenvalues(n: usize) -> Result<Vec<f64>> {
        let d = discriminant(n)?;
        let eig = nalgebra::SymmetricEigen::new(d);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(vals)
    }

    /// Compares the exact multiset `{(λ̃_μ, dim²)}` with the numerical
    /// eigendecomposition; returns the largest per-eigenvalue deviation.
    pub fn spectrum_check(n: usize) -> Result<f64> {
        let numeric = discriminant_eigenvalues(n)?;
        let mut exact = Vec::with_capacity(numeric.len());
        for comp in spectrum_of_d(n) {
            let v = big_rational_to_f64(&comp.lambda_tilde);
            let m = comp.multiplicity.to_usize().expect("multiplicity fits");
            exact.extend(std::iter::repeat_n(v, m));
        }
        exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if exact.len() != numeric.len() {
            return Err(Error::BadCheckpoint(format!(
                "multiplicity mismatch: {} vs {}",
                exact.len(),
                numeric.len()
            )));
        }
        Ok(exact
            .iter()
            .zip(&numeric)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lambda_tilde_examples() {
        assert_eq!(lambda_tilde(&p(&[6])), rat(1, 1));
        assert_eq!(lambda_tilde(&p(&[1, 1, 1, 1])), rat(-1, 1));
        // hooks: -(n-2k+1)/(n-1); n=6, k=2
        assert_eq!(lambda_tilde(&Partition::hook(6, 2)), rat(-3, 5));
        assert_eq!(lambda_tilde(&p(&[3, 1, 1])), rat(0, 1));
    }

    #[test]
    fn hook_eigenvalue_closed_form() {
        for n in 2..=12 {
            for k in 1..=n {
                let want = rat(-(n as i64 - 2 * k as i64 + 1), n as i64 - 1);
                assert_eq!(lambda_tilde(&Partition::hook(n, k)), want);
            }
        }
    }

    #[test]
    fn spectrum_multiplicities() {
        for n in 2..=8 {
            let spec = spectrum_of_d(n);
            let total: BigInt = spec.iter().map(|c| c.multiplicity.clone()).sum();
            assert_eq!(total, factorial(n));
            let ones: Vec<_> = spec
                .iter()
                .filter(|c| c.lambda_tilde == rat(1, 1))
                .collect();
            assert_eq!(ones.len(), 1);
            assert_eq!(ones[0].multiplicity, BigInt::one());
        }
        let s5 = spectrum_of_d(5);
        let mut values: Vec<BigRational> = s5.iter().map(|c| c.lambda_tilde.clone()).collect();
        values.sort();
        values.dedup();
        assert_eq!(values.len(), 7);
    }

    #[test]
    fn dense_spectrum_reconciliation_small() {
        for n in 2..=5 {
            let dev = dense::spectrum_check(n).unwrap();
            assert!(dev < 1e-9, "n = {n}: deviation {dev}");
        }
    }

    #[test]
    fn gamma_tilde_frozen_n4() {
        // brute-force class sums over S_4 (see tests/spectral_oracle.rs)
        let table = [
            (vec![4], 36i64),
            (vec![3, 1], -12),
            (vec![2, 2], 0),
            (vec![2, 1, 1], -12),
            (vec![1, 1, 1, 1], 36),
        ];
        for (parts, want) in table {
            assert_eq!(gamma_tilde(&p(&parts)), BigInt::from(want), "{parts:?}");
        }
    }

    #[test]
    fn gamma_tilde_hook_closed_form_all_k() {
        for n in 2..=12 {
            for k in 1..=n {
                assert_eq!(
                    gamma_tilde(&Partition::hook(n, k)),
                    gamma_tilde_hook(n, k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn gamma_tilde_vanishes_off_xi() {
        for n in 4..=10 {
            for mu in Partition::all(n) {
                if matches!(xi_classify(&mu), XiMembership::NotInXi) {
                    assert!(gamma_tilde(&mu).is_zero(), "mu = {mu}");
                }
            }
        }
    }

    #[test]
    fn iota_bound() {
        for n in 2..=12 {
            let half = rat(n as i64, 2);
            for mu in enumerate_xi(n) {
                assert!(iota(&mu).abs() <= half, "mu = {mu}");
            }
        }
    }

    #[test]
    fn singular_value_gap() {
        // non-trivial blocks with nonzero transposition character stay below
        // 1 − 2/(n−1), with exact rational arithmetic
        for n in 3..=12 {
            let cap = BigRational::one() - rat(2, n as i64 - 1);
            for mu in enumerate_xi(n) {
                let c = SpectralComponent::new(mu.clone());
                if c.lambda_tilde.is_zero() || c.lambda == BigRational::one() {
                    continue;
                }
                assert!(c.lambda <= cap, "mu = {mu}: λ = {}", c.lambda);
            }
        }
    }

    #[test]
    fn hook_sign_identity() {
        for n in 2..=12 {
            for k in 1..=n {
                let c = SpectralComponent::new(Partition::hook(n, k));
                if c.s != 0 && c.lambda != BigRational::one() {
                    assert_eq!(c.s == 1, 2 * k > n, "n = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn projection_scalar_shapes() {
        for n in [4usize, 5] {
            for mu in Partition::all(n) {
                let ps = projection_scalars(&mu);
                assert_eq!(ps.a_from_identity.coeff, BigRational::one());
                assert_eq!(ps.b_from_identity.coeff, lambda_tilde(&mu));
                assert_eq!(ps.a_to_ncycles.sqrt_pow, 1);
                assert_eq!(ps.b_to_ncycles.sqrt_pow, -1);
            }
        }
        // sign character: item 2 is −1
        let ps = projection_scalars(&p(&[1, 1, 1, 1, 1]));
        assert_eq!(ps.b_from_identity.coeff, rat(-1, 1));
    }

    #[test]
    fn alpha_triple_frozen_n4() {
        // dense-oracle-verified values for μ = (2,1,1): (5/6, −1/4, −1/4)
        let a = alpha_triple(&p(&[2, 1, 1])).unwrap();
        assert_eq!(a.a1, rat(5, 6));
        assert_eq!(a.a2, rat(-1, 4));
        assert_eq!(a.a3, rat(-1, 4));
        // (2,2) is a non-hook: a2 = 0 via χ_μ([n]) = 0, and γ̃ = 0 kills a3
        let a = alpha_triple(&p(&[2, 2])).unwrap();
        assert!(a.a2.is_zero());
        assert!(a.a1.is_zero() && a.a3.is_zero());
        assert!(alpha_triple(&p(&[3, 3, 3])).is_err());
    }

    #[test]
    fn alpha_rewrite_identity() {
        // a1 = (dim/χ_σ)·a2 + (χ_σ/dim)·a3 whenever χ_σ ≠ 0
        for n in 4..=9 {
            for mu in enumerate_xi(n) {
                let chi = char_transposition(&mu);
                if chi.is_zero() {
                    continue;
                }
                let dim = dimension(&mu);
                let a = alpha_triple(&mu).unwrap();
                let lhs = a.a1.clone();
                let rhs = BigRational::new(dim.clone(), chi.clone()) * &a.a2
                    + BigRational::new(chi, dim) * &a.a3;
                assert_eq!(lhs, rhs, "mu = {mu}");
            }
        }
    }

    #[test]
    fn alpha2_vanishes_for_non_hooks() {
        for n in 4..=9 {
            for mu in enumerate_xi(n) {
                if matches!(xi_classify(&mu), XiMembership::General { .. }) {
                    assert!(alpha_triple(&mu).unwrap().a2.is_zero(), "mu = {mu}");
                }
            }
        }
    }

    #[test]
    fn overlap_telescopes_to_zero_at_t0() {
        for n in 2..=8 {
            let v = analytic_overlap(n, 0).unwrap();
            assert!(v.abs() < 1e-12, "n = {n}: {v}");
        }
    }

    #[test]
    fn flat_parts_match_parity_structure() {
        // even n: both flat pieces vanish identically
        for n in [2usize, 4, 6, 8] {
            let m = OverlapModel::new(n).unwrap();
            let (c, a) = m.flat_coefficients();
            assert!(c.is_zero() && a.is_zero(), "n = {n}");
        }
        // odd n: constant 2/n, alternating from the λ̃ = 0 hook k = (n+1)/2
        for n in [3usize, 5, 7] {
            let m = OverlapModel::new(n).unwrap();
            let (c, a) = m.flat_coefficients();
            assert_eq!(*c, rat(2, n as i64));
            let k = n.div_ceil(2);
            let hook = Partition::hook(n, k);
            let want = BigRational::new(
                dimension(&hook) * char_ncycle(&hook),
                BigInt::from(n as u64),
            );
            assert_eq!(*a, want, "n = {n}");
        }
    }

    #[test]
    fn frozen_overlap_values() {
        // ⟨φ_[3]| W^t |φ_e⟩ alternates between 0 and 2√2/3
        let m3 = OverlapModel::new(3).unwrap();
        let peak = 2.0 * 2.0f64.sqrt() / 3.0;
        for t in 0..8 {
            let want = if t % 2 == 0 { 0.0 } else { peak };
            assert!((m3.evaluate(t) - want).abs() < 1e-12, "t = {t}");
        }
        // n = 5: value √6/5 at t = 2
        let m5 = OverlapModel::new(5).unwrap();
        assert!((m5.evaluate(2) - 6.0f64.sqrt() / 5.0).abs() < 1e-12);
        assert!(m5.evaluate(1).abs() < 1e-12);
        // even n: identically zero
        let m6 = OverlapModel::new(6).unwrap();
        for t in 0..25 {
            assert!(m6.evaluate(t).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn theorem_bound_report() {
        let beta = rat(81, 16);
        for n in 4..=8 {
            let rep = theorem_bound(n, &beta, 60).unwrap();
            assert!(rep.max_overlap_sq <= 1.0 + 1e-12);
            assert_eq!(rep.rows.len(), 61);
            assert!(rep.bound_rhs > 1.0, "bound is vacuous at desk scale");
            assert!(rep.ratio_poly.is_finite());
        }
    }

    #[test]
    fn surd_to_f64() {
        let s = SurdRational::new(BigRational::from_i64(3).unwrap(), -1);
        let v = s.to_f64(5); // 3/√24
        assert!((v - 3.0 / 24.0f64.sqrt()).abs() < 1e-15);
    }
}
