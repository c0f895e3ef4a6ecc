//! Numerical-eigenprojector and brute-force class-sum oracles for the
//! spectral pipeline, plus the end-to-end reconciliation of the analytic
//! overlap against the matrix-free simulation at small `n`.

use nalgebra::{DMatrix, DVector};
use num::{BigRational, ToPrimitive};
use szwalk::characters::{char_ncycle, char_transposition, character, dimension};
use szwalk::partition::{factorial, factorial_u64, Partition};
use szwalk::spectral::{alpha_triple, gamma_tilde, lambda_tilde, upsilon, OverlapModel};
use szwalk::symgroup::{n_cycles, transpositions, Permutation};
use szwalk::WalkOperator;

fn ratf(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Eigenprojector of the dense discriminant for the eigenvalue closest to
/// `target` (clustered within 1e−8).
fn eigenprojector(n: usize, target: f64) -> DMatrix<f64> {
    let d = szwalk::spectral::dense::discriminant(n).unwrap();
    let order = d.nrows();
    let eig = nalgebra::SymmetricEigen::new(d);
    let mut p = DMatrix::zeros(order, order);
    for (i, &val) in eig.eigenvalues.iter().enumerate() {
        if (val - target).abs() < 1e-8 {
            let v = eig.eigenvectors.column(i);
            p += v * v.transpose();
        }
    }
    p
}

/// The four vertex-space vectors the projection identities talk about, built
/// by counting, not by character theory.
fn endpoint_vectors(n: usize) -> (DVector<f64>, DVector<f64>, DVector<f64>, DVector<f64>) {
    let order = factorial_u64(n) as usize;
    let gens = transpositions(n);
    let d = gens.len() as f64;
    let cycles = n_cycles(n);
    let sqrt_prev = ((factorial_u64(n - 1)) as f64).sqrt();

    let mut u0 = DVector::zeros(order); // A†|φ_e⟩ = e_identity
    u0[Permutation::identity(n).rank() as usize] = 1.0;

    let mut w0 = DVector::zeros(order); // B†|φ_e⟩ = (1/d) Σ_s e_s
    for s in &gens {
        w0[s.rank() as usize] = 1.0 / d;
    }

    let mut u1 = DVector::zeros(order); // A†|φ_[n]⟩
    for g in &cycles {
        u1[g.rank() as usize] = 1.0 / sqrt_prev;
    }

    let mut w1 = DVector::zeros(order); // B†|φ_[n]⟩, by direct neighbor counting
    for y in 0..order {
        let py = Permutation::unrank(n, y as u64).unwrap();
        let count = cycles
            .iter()
            .filter(|h| {
                let step = py.inverse().compose(h).unwrap();
                let ct = step.cycle_type();
                ct.parts().first() == Some(&2) && ct.len() == n - 1
            })
            .count();
        w1[y] = count as f64 / (d * sqrt_prev);
    }
    (u0, w0, u1, w1)
}

#[test]
fn projection_identities_against_numerical_projectors() {
    let n = 4;
    let (u0, w0, u1, w1) = endpoint_vectors(n);
    let nf = factorial_u64(n) as f64;
    let d = (n * (n - 1) / 2) as f64;
    let sqrt_prev = (factorial_u64(n - 1) as f64).sqrt();
    for mu in Partition::all(n) {
        let lt = ratf(&lambda_tilde(&mu));
        let p = eigenprojector(n, lt);
        let dim = dimension(&mu).to_f64().unwrap();
        let norm = dim * dim / nf; // ⟨u0|Π_μ|u0⟩ for the identity delta
        let chi_sigma = char_transposition(&mu).to_f64().unwrap();
        let chi_n = char_ncycle(&mu).to_f64().unwrap();
        let gamma = gamma_tilde(&mu).to_f64().unwrap();

        let q1 = (u0.transpose() * &p * &u0)[(0, 0)];
        assert!((q1 - norm).abs() < 1e-10, "item 1 at {mu}");

        let q2 = (w0.transpose() * &p * &u0)[(0, 0)];
        assert!(
            (q2 - norm * chi_sigma / dim).abs() < 1e-10,
            "item 2 at {mu}"
        );

        let q3 = (u1.transpose() * &p * &u0)[(0, 0)];
        assert!(
            (q3 - norm * sqrt_prev * chi_n / dim).abs() < 1e-10,
            "item 3 at {mu}"
        );

        let q4 = (w1.transpose() * &p * &u0)[(0, 0)];
        assert!(
            (q4 - norm * gamma / (d * sqrt_prev * dim)).abs() < 1e-10,
            "item 4 at {mu}"
        );
    }
}

#[test]
fn alpha_triple_against_numerical_projectors() {
    // ⟨φ_[n]|XΠ_μY†|φ_e⟩ computed with dense eigenprojectors; in particular
    // the B·Π·A† overlap carries the dim ρ_μ factor.
    let n = 4;
    let (u0, w0, u1, w1) = endpoint_vectors(n);
    let inv_root = 1.0 / (factorial_u64(n - 1) as f64).sqrt();
    for mu in Partition::all(n) {
        let alpha = match alpha_triple(&mu) {
            Ok(a) => a,
            Err(_) => continue, // outside Ξ_n: contributions vanish
        };
        let lt = ratf(&lambda_tilde(&mu));
        if lt.abs() > 1.0 - 1e-9 {
            continue; // trivial/sign blocks coincide in col(A) ∩ col(B)
        }
        let p = eigenprojector(n, lt);
        let a1 = (u1.transpose() * &p * &u0)[(0, 0)] + (w1.transpose() * &p * &w0)[(0, 0)];
        let a2 = (u1.transpose() * &p * &w0)[(0, 0)];
        let a3 = (w1.transpose() * &p * &u0)[(0, 0)];
        assert!(
            (a1 - ratf(&alpha.a1) * inv_root).abs() < 1e-12,
            "a1 at {mu}"
        );
        assert!(
            (a2 - ratf(&alpha.a2) * inv_root).abs() < 1e-12,
            "a2 at {mu}"
        );
        assert!(
            (a3 - ratf(&alpha.a3) * inv_root).abs() < 1e-12,
            "a3 at {mu}"
        );
    }
}

#[test]
fn upsilon_closed_form_by_counting() {
    for n in 2..=6 {
        let order = factorial_u64(n);
        let cycles = n_cycles(n);
        for r in 0..order {
            let g = Permutation::unrank(n, r).unwrap();
            let count = cycles
                .iter()
                .filter(|h| {
                    let step = g.inverse().compose(h).unwrap();
                    let ct = step.cycle_type();
                    ct.parts().first() == Some(&2) && ct.len() == n - 1
                })
                .count() as u64;
            let want = upsilon(&g.cycle_type()).to_u64().unwrap();
            assert_eq!(count, want, "g = {g:?} in S_{n}");
        }
    }
}

#[test]
fn gamma_tilde_against_group_sum() {
    // γ̃_μ = Σ_{g ∈ S_n} Υ(g) χ_μ(g), summed over the whole group
    for n in [4usize, 5] {
        let order = factorial_u64(n);
        let cycles = n_cycles(n);
        for mu in Partition::all(n) {
            let mut acc = 0i64;
            for r in 0..order {
                let g = Permutation::unrank(n, r).unwrap();
                let count = cycles
                    .iter()
                    .filter(|h| {
                        let step = g.inverse().compose(h).unwrap();
                        let ct = step.cycle_type();
                        ct.parts().first() == Some(&2) && ct.len() == n - 1
                    })
                    .count() as i64;
                if count != 0 {
                    acc += count * character(&mu, &g.cycle_type()).unwrap().to_i64().unwrap();
                }
            }
            assert_eq!(acc, gamma_tilde(&mu).to_i64().unwrap(), "mu = {mu}");
        }
    }
}

#[test]
fn analytic_overlap_matches_simulation() {
    for n in [3usize, 4, 5] {
        let op = WalkOperator::new(n).unwrap();
        let sim = op.overlap_series(40);
        let model = OverlapModel::new(n).unwrap();
        for (t, v) in sim.iter().enumerate() {
            assert!(v.im.abs() < 1e-14);
            let a = model.evaluate(t);
            assert!(
                (v.re - a).abs() < 1e-12,
                "n = {n}, t = {t}: sim {} vs analytic {a}",
                v.re
            );
        }
    }
}

#[test]
fn rotation_residual_is_flat_part() {
    // simulated minus rotation-only sum equals the ±1-eigenspace flats:
    // zero at even n, and the measured nonzero pattern at n = 5
    let n = 5;
    let op = WalkOperator::new(n).unwrap();
    let sim = op.overlap_series(20);
    let model = OverlapModel::new(n).unwrap();
    let sqrt_prev = (factorial(n - 1).to_f64().unwrap()).sqrt();
    for (t, v) in sim.iter().enumerate() {
        let residual = v.re - model.rotation_part(t);
        let flat = model.flat_part(t);
        assert!((residual - flat).abs() < 1e-12, "t = {t}");
        // exact values: 2/(n·√((n−1)!)) and (−1)^t · 6/(n·√((n−1)!)) · χ = +6/...
        let want = (2.0 + if t % 2 == 0 { 6.0 } else { -6.0 }) / (n as f64 * sqrt_prev);
        assert!((flat - want).abs() < 1e-12, "t = {t}");
    }
}
