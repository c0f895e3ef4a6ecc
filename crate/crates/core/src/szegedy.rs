//! The quantized Markov chain on the transposition Cayley graph.
//!
//! States live on the edge space of the bipartite double cover: a dense
//! complex vector over ordered pairs `(x, y)` of permutations, indexed by
//! `rank(x)·n! + rank(y)`. The uniform chain `P_{xy} = 1/d` on `y ∈ xS`
//! (`d = C(n,2)` transpositions) has symmetric discriminant `D = P`, and one
//! walk step is the product of the two reflections `W = (2BB†−I)(2AA†−I)`.
//!
//! `W` only ever changes the `n!·d` edge entries: writing `a = A†ψ`,
//! `b = B†ψ`, the step is
//!
//! ```text
//! b'[y]     = −b[y] + (2/d) Σ_s a[y·s]
//! ψ'(x, xs) = ψ(x, xs) + (2/√d)(b'[xs] − a[x])      (all other entries kept)
//! ```
//!
//! which is exact for arbitrary states, so a step costs `O(n!·d)` instead of
//! `O((n!)²)`. Distribution marginals still scan the full vector.

use num_complex::Complex64;
use std::io::{Read, Write};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::partition::{factorial_u64, CycleType};
use crate::symgroup::{n_cycles, transpositions, Permutation};
use crate::{Error, Result};

/// Hard ceiling for the simulation: `(8!)²` amplitudes is ~26 GB.
pub const ABSOLUTE_MAX_N: usize = 8;
/// Default memory guard; override with the `SZW_MAX_N` environment variable.
pub const DEFAULT_MAX_N: usize = 7;

/// Current simulation guard, honoring `SZW_MAX_N`.
pub fn simulation_guard() -> usize {
    std::env::var("SZW_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(ABSOLUTE_MAX_N))
        .unwrap_or(DEFAULT_MAX_N)
}

/// Amplitude vector over ordered pairs of permutations.
#[derive(Clone, PartialEq)]
pub struct WalkState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    pub fn zero(n: usize) -> Self {
        let order = factorial_u64(n) as usize;
        WalkState {
            n,
            amplitudes: vec![Complex64::new(0.0, 0.0); order * order],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Amplitude on the pair `(x, y)`.
    pub fn amplitude(&self, x: &Permutation, y: &Permutation) -> Complex64 {
        let order = factorial_u64(self.n) as usize;
        self.amplitudes[x.rank() as usize * order + y.rank() as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &WalkState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amplitudes {
                *a /= n;
            }
        }
    }
}

/// The walk unitary `W = R_B R_A` for `S_n` with the full transposition
/// generating set, applied matrix-free.
pub struct WalkOperator {
    n: usize,
    order: usize,
    degree: usize,
    /// `nbr[x*d + s] = rank(x · t_s)`; right multiplication by the
    /// generators in fixed `(i,j)` lexicographic order.
    nbr: Vec<u32>,
}

impl WalkOperator {
    pub fn new(n: usize) -> Result<Self> {
        let guard = simulation_guard();
        if n < 2 || n > guard {
            return Err(Error::SimulationTooLarge { n, max: guard });
        }
        let order = factorial_u64(n) as usize;
        let gens = transpositions(n);
        let degree = gens.len();
        let swaps: Vec<(usize, usize)> = {
            let mut v = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    v.push((i, j));
                }
            }
            v
        };
        let mut nbr = vec![0u32; order * degree];
        let mut images: Vec<usize> = (0..n).collect();
        for x in 0..order {
            let p = Permutation::unrank(n, x as u64).expect("rank in range");
            for (s, &(i, j)) in swaps.iter().enumerate() {
                images.copy_from_slice(p.images());
                images.swap(i, j);
                let q = Permutation::new(images.clone()).expect("swap keeps bijection");
                nbr[x * degree + s] = q.rank() as u32;
            }
        }
        Ok(WalkOperator {
            n,
            order,
            degree,
            nbr,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!`, the number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `d = C(n,2)`, the Cayley graph degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> Vec<Permutation> {
        transpositions(self.n)
    }

    #[inline]
    fn neighbors(&self, x: usize) -> &[u32] {
        &self.nbr[x * self.degree..(x + 1) * self.degree]
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// Basis state `|x, y⟩`.
    pub fn basis_state(&self, x: &Permutation, y: &Permutation) -> Result<WalkState> {
        self.check_degree(x)?;
        self.check_degree(y)?;
        let mut s = WalkState::zero(self.n);
        s.amplitudes[x.rank() as usize * self.order + y.rank() as usize] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// `|φ_x⟩ = (1/√d) Σ_s |x, xs⟩`, the edge superposition at `x`.
    pub fn phi_state(&self, x: &Permutation) -> Result<WalkState> {
        self.check_degree(x)?;
        let mut s = WalkState::zero(self.n);
        let amp = Complex64::new(1.0 / (self.degree as f64).sqrt(), 0.0);
        let xr = x.rank() as usize;
        for &y in self.neighbors(xr) {
            s.amplitudes[xr * self.order + y as usize] = amp;
        }
        Ok(s)
    }

    /// `|ψ_y⟩ = (1/√d) Σ_s |ys, y⟩`, the reversed-edge superposition at `y`.
    pub fn psi_state(&self, y: &Permutation) -> Result<WalkState> {
        self.check_degree(y)?;
        let mut s = WalkState::zero(self.n);
        let amp = Complex64::new(1.0 / (self.degree as f64).sqrt(), 0.0);
        let yr = y.rank() as usize;
        for &x in self.neighbors(yr) {
            s.amplitudes[x as usize * self.order + yr] = amp;
        }
        Ok(s)
    }

    /// `|φ_e⟩`: the walk's canonical initial state.
    pub fn phi_identity(&self) -> WalkState {
        self.phi_state(&Permutation::identity(self.n))
            .expect("identity has the right degree")
    }

    /// `|φ_[n]⟩ = (1/√((n−1)!)) Σ_{g ∈ [n]} |φ_g⟩`: uniform superposition of
    /// all edges leaving full cycles.
    pub fn phi_ncycle_superposition(&self) -> WalkState {
        let cycles = n_cycles(self.n);
        let mut s = WalkState::zero(self.n);
        let amp = Complex64::new(1.0 / ((cycles.len() * self.degree) as f64).sqrt(), 0.0);
        for g in &cycles {
            let gr = g.rank() as usize;
            for &y in self.neighbors(gr) {
                s.amplitudes[gr * self.order + y as usize] = amp;
            }
        }
        s
    }

    /// `A†|ψ⟩`: vertex-space vector `a[x] = (1/√d) Σ_s ψ(x, xs)`.
    pub fn apply_a_adjoint(&self, state: &WalkState) -> Vec<Complex64> {
        let inv_sqrt_d = 1.0 / (self.degree as f64).sqrt();
        let amps = &state.amplitudes;
        self.vertex_map(|x| {
            let row = x * self.order;
            let mut acc = Complex64::new(0.0, 0.0);
            for &y in self.neighbors(x) {
                acc += amps[row + y as usize];
            }
            acc * inv_sqrt_d
        })
    }

    /// `A|v⟩ = Σ_x v[x] |φ_x⟩`.
    pub fn apply_a(&self, v: &[Complex64]) -> WalkState {
        assert_eq!(v.len(), self.order);
        let inv_sqrt_d = 1.0 / (self.degree as f64).sqrt();
        let mut s = WalkState::zero(self.n);
        for (x, value) in v.iter().enumerate() {
            let amp = value * inv_sqrt_d;
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = x * self.order;
            for &y in self.neighbors(x) {
                s.amplitudes[row + y as usize] += amp;
            }
        }
        s
    }

    /// `B†|ψ⟩`: vertex-space vector `b[y] = (1/√d) Σ_s ψ(ys, y)`.
    pub fn apply_b_adjoint(&self, state: &WalkState) -> Vec<Complex64> {
        let inv_sqrt_d = 1.0 / (self.degree as f64).sqrt();
        let amps = &state.amplitudes;
        self.vertex_map(|y| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &x in self.neighbors(y) {
                acc += amps[x as usize * self.order + y];
            }
            acc * inv_sqrt_d
        })
    }

    /// `B|v⟩ = Σ_y v[y] |ψ_y⟩`.
    pub fn apply_b(&self, v: &[Complex64]) -> WalkState {
        assert_eq!(v.len(), self.order);
        let inv_sqrt_d = 1.0 / (self.degree as f64).sqrt();
        let mut s = WalkState::zero(self.n);
        for (y, value) in v.iter().enumerate() {
            let amp = value * inv_sqrt_d;
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &x in self.neighbors(y) {
                s.amplitudes[x as usize * self.order + y] += amp;
            }
        }
        s
    }

    /// Reflection `R_A = 2AA† − I`, full `(n!)²` pass.
    pub fn reflect_a(&self, state: &mut WalkState) {
        let a = self.apply_a_adjoint(state);
        let two_inv_sqrt_d = 2.0 / (self.degree as f64).sqrt();
        let order = self.order;
        let nbr = &self.nbr;
        let degree = self.degree;
        Self::for_each_row(&mut state.amplitudes, order, |x, row| {
            for v in row.iter_mut() {
                *v = -*v;
            }
            let add = a[x] * two_inv_sqrt_d;
            for &y in &nbr[x * degree..(x + 1) * degree] {
                row[y as usize] += add;
            }
        });
    }

    /// Reflection `R_B = 2BB† − I`, full `(n!)²` pass.
    pub fn reflect_b(&self, state: &mut WalkState) {
        let b = self.apply_b_adjoint(state);
        let two_inv_sqrt_d = 2.0 / (self.degree as f64).sqrt();
        let order = self.order;
        let nbr = &self.nbr;
        let degree = self.degree;
        Self::for_each_row(&mut state.amplitudes, order, |x, row| {
            for v in row.iter_mut() {
                *v = -*v;
            }
            for &y in &nbr[x * degree..(x + 1) * degree] {
                row[y as usize] += b[y as usize] * two_inv_sqrt_d;
            }
        });
    }

    /// One walk step `|ψ⟩ ← W|ψ⟩`, in place. Only edge entries change.
    pub fn step_in_place(&self, state: &mut WalkState) {
        #[cfg(feature = "parallel")]
        {
            self.step_in_place_par(state);
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.step_in_place_seq(state);
        }
    }

    /// `W|ψ⟩` into a fresh state.
    pub fn step(&self, state: &WalkState) -> WalkState {
        let mut out = state.clone();
        self.step_in_place(&mut out);
        out
    }

    fn step_vertex_data(&self, state: &WalkState) -> (Vec<Complex64>, Vec<Complex64>) {
        let a = self.apply_a_adjoint(state);
        let b = self.apply_b_adjoint(state);
        let two_over_d = 2.0 / self.degree as f64;
        let bp = self.vertex_map(|y| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &z in self.neighbors(y) {
                acc += a[z as usize];
            }
            acc * two_over_d - b[y]
        });
        (a, bp)
    }

    /// Sequential reference implementation of the step; bit-identical to the
    /// parallel path.
    pub fn step_in_place_seq(&self, state: &mut WalkState) {
        assert_eq!(state.n, self.n);
        let (a, bp) = self.step_vertex_data(state);
        let two_inv_sqrt_d = 2.0 / (self.degree as f64).sqrt();
        for (x, ax) in a.iter().enumerate() {
            let row = &mut state.amplitudes[x * self.order..(x + 1) * self.order];
            for &y in self.neighbors(x) {
                row[y as usize] += (bp[y as usize] - ax) * two_inv_sqrt_d;
            }
        }
    }

    /// Rayon implementation of the step, partitioned by first register.
    #[cfg(feature = "parallel")]
    pub fn step_in_place_par(&self, state: &mut WalkState) {
        assert_eq!(state.n, self.n);
        let (a, bp) = self.step_vertex_data(state);
        let two_inv_sqrt_d = 2.0 / (self.degree as f64).sqrt();
        let degree = self.degree;
        let nbr = &self.nbr;
        state
            .amplitudes
            .par_chunks_mut(self.order)
            .enumerate()
            .for_each(|(x, row)| {
                for &y in &nbr[x * degree..(x + 1) * degree] {
                    row[y as usize] += (bp[y as usize] - a[x]) * two_inv_sqrt_d;
                }
            });
    }

    /// Marginal on the first register: `P[π] = Σ_σ |ψ(π, σ)|²`.
    pub fn instantaneous_distribution(&self, state: &WalkState) -> Distribution {
        assert_eq!(state.n, self.n);
        let probs = self.row_norms(&state.amplitudes);
        Distribution { n: self.n, probs }
    }

    /// Cesàro average `(1/T) Σ_{t<T} P_t` of the first-register marginals
    /// along the trajectory starting at `initial`.
    pub fn averaged_distribution(&self, initial: &WalkState, horizon: usize) -> Distribution {
        assert!(horizon >= 1, "averaging horizon must be at least 1");
        let mut state = initial.clone();
        let mut acc = vec![0.0f64; self.order];
        for t in 0..horizon {
            let p = self.row_norms(&state.amplitudes);
            for (a, v) in acc.iter_mut().zip(&p) {
                *a += v;
            }
            if t + 1 < horizon {
                self.step_in_place(&mut state);
            }
        }
        for a in &mut acc {
            *a /= horizon as f64;
        }
        Distribution {
            n: self.n,
            probs: acc,
        }
    }

    /// Row `y` of the average mixing matrix: the averaged distribution of a
    /// walk started from `A|y⟩ = |φ_y⟩`.
    pub fn average_mixing_row(&self, y: &Permutation, horizon: usize) -> Result<Distribution> {
        let initial = self.phi_state(y)?;
        Ok(self.averaged_distribution(&initial, horizon))
    }

    /// `Σ_s ‖⟨g, gs| W^t |φ_e⟩‖²`: probability of observing `g` in the first
    /// register after `t` steps from the identity's edge superposition.
    pub fn basis_state_probability(&self, g: &Permutation, t: usize) -> Result<f64> {
        Ok(self
            .basis_state_probability_series(g, t)?
            .pop()
            .expect("series is nonempty"))
    }

    /// The same probability for every `t ≤ t_max` along one trajectory.
    pub fn basis_state_probability_series(
        &self,
        g: &Permutation,
        t_max: usize,
    ) -> Result<Vec<f64>> {
        self.check_degree(g)?;
        let gr = g.rank() as usize;
        let mut state = self.phi_identity();
        let mut out = Vec::with_capacity(t_max + 1);
        for t in 0..=t_max {
            let row = gr * self.order;
            let mass: f64 = self
                .neighbors(gr)
                .iter()
                .map(|&y| state.amplitudes[row + y as usize].norm_sqr())
                .sum();
            out.push(mass);
            if t < t_max {
                self.step_in_place(&mut state);
            }
        }
        Ok(out)
    }

    /// `⟨φ_[n]| W^t |φ_e⟩` for `t = 0..=t_max` along one trajectory.
    pub fn overlap_series(&self, t_max: usize) -> Vec<Complex64> {
        let mut state = self.phi_identity();
        let cycles: Vec<usize> = n_cycles(self.n).iter().map(|g| g.rank() as usize).collect();
        let coeff = 1.0 / ((cycles.len() * self.degree) as f64).sqrt();
        let mut out = Vec::with_capacity(t_max + 1);
        for t in 0..=t_max {
            let mut acc = Complex64::new(0.0, 0.0);
            for &g in &cycles {
                let row = g * self.order;
                for &y in self.neighbors(g) {
                    acc += state.amplitudes[row + y as usize];
                }
            }
            out.push(acc * coeff);
            if t < t_max {
                self.step_in_place(&mut state);
            }
        }
        out
    }

    fn vertex_map<F>(&self, f: F) -> Vec<Complex64>
    where
        F: Fn(usize) -> Complex64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            (0..self.order).into_par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..self.order).map(f).collect()
        }
    }

    fn row_norms(&self, amps: &[Complex64]) -> Vec<f64> {
        #[cfg(feature = "parallel")]
        {
            amps.par_chunks(self.order)
                .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            amps.chunks(self.order)
                .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
                .collect()
        }
    }

    fn for_each_row<F>(amps: &mut [Complex64], order: usize, f: F)
    where
        F: Fn(usize, &mut [Complex64]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            amps.par_chunks_mut(order)
                .enumerate()
                .for_each(|(x, row)| f(x, row));
        }
        #[cfg(not(feature = "parallel"))]
        {
            amps.chunks_mut(order)
                .enumerate()
                .for_each(|(x, row)| f(x, row));
        }
    }
}

/// Probability distribution over `S_n`, indexed by permutation rank.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn prob(&self, p: &Permutation) -> f64 {
        self.probs[p.rank() as usize]
    }

    /// Total mass on a conjugacy class.
    pub fn class_mass(&self, class: &CycleType) -> f64 {
        let mut acc = 0.0;
        for (rank, &p) in self.probs.iter().enumerate() {
            if p != 0.0 {
                let perm = Permutation::unrank(self.n, rank as u64).expect("rank valid");
                if &perm.cycle_type() == class {
                    acc += p;
                }
            }
        }
        acc
    }

    /// Aggregates mass by cycle type, in decreasing lexicographic class order.
    pub fn by_class(&self) -> Vec<(CycleType, f64)> {
        let mut map: std::collections::BTreeMap<CycleType, f64> = std::collections::BTreeMap::new();
        for (rank, &p) in self.probs.iter().enumerate() {
            let perm = Permutation::unrank(self.n, rank as u64).expect("rank valid");
            *map.entry(perm.cycle_type()).or_insert(0.0) += p;
        }
        map.into_iter().collect()
    }

    /// CSV with columns `permutation,cycle_type,probability`; parsing the
    /// output with [`Distribution::read_csv`] reproduces the values exactly.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "permutation,cycle_type,probability")?;
        for (rank, &p) in self.probs.iter().enumerate() {
            let perm = Permutation::unrank(self.n, rank as u64).expect("rank valid");
            writeln!(w, "{},{},{}", perm.one_line(), perm.cycle_type(), p)?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(n: usize, r: R) -> Result<Distribution> {
        let mut content = String::new();
        let mut r = std::io::BufReader::new(r);
        r.read_to_string(&mut content)?;
        let order = factorial_u64(n) as usize;
        let mut probs = vec![0.0f64; order];
        for (i, line) in content.lines().enumerate() {
            if i == 0 {
                continue; // header
            }
            let mut fields = line.split(',');
            let perm_field = fields.next().unwrap_or_default();
            let _cycle = fields.next();
            let prob_field = fields.next().unwrap_or_default();
            let perm = Permutation::parse_one_line(perm_field)?;
            if perm.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: perm.degree(),
                });
            }
            let prob: f64 = prob_field
                .parse()
                .map_err(|_| Error::BadCheckpoint(format!("bad probability on line {i}")))?;
            probs[perm.rank() as usize] = prob;
        }
        Ok(Distribution { n, probs })
    }
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"SZWK";
const CHECKPOINT_VERSION: u32 = 1;

/// Serializes a walk state: magic `SZWK`, version, `n`, then `(n!)²`
/// little-endian `(re, im)` f64 pairs in index order.
pub fn write_checkpoint<W: Write>(state: &WalkState, mut w: W) -> std::io::Result<()> {
    w.write_all(CHECKPOINT_MAGIC)?;
    w.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    w.write_all(&(state.n as u32).to_le_bytes())?;
    let mut buf = Vec::with_capacity(1 << 16);
    for a in &state.amplitudes {
        buf.extend_from_slice(&a.re.to_le_bytes());
        buf.extend_from_slice(&a.im.to_le_bytes());
        if buf.len() >= (1 << 16) {
            w.write_all(&buf)?;
            buf.clear();
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Reads back a checkpoint written by [`write_checkpoint`].
pub fn read_checkpoint<R: Read>(mut r: R) -> Result<WalkState> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(Error::BadCheckpoint("bad magic".into()));
    }
    let mut word = [0u8; 4];
    r.read_exact(&mut word)?;
    let version = u32::from_le_bytes(word);
    if version != CHECKPOINT_VERSION {
        return Err(Error::BadCheckpoint(format!("unknown version {version}")));
    }
    r.read_exact(&mut word)?;
    let n = u32::from_le_bytes(word) as usize;
    if !(2..=ABSOLUTE_MAX_N).contains(&n) {
        return Err(Error::BadCheckpoint(format!("n = {n} out of range")));
    }
    let order = factorial_u64(n) as usize;
    let mut amplitudes = Vec::with_capacity(order * order);
    let mut pair = [0u8; 16];
    for _ in 0..order * order {
        r.read_exact(&mut pair)?;
        let re = f64::from_le_bytes(pair[..8].try_into().unwrap());
        let im = f64::from_le_bytes(pair[8..].try_into().unwrap());
        amplitudes.push(Complex64::new(re, im));
    }
    Ok(WalkState { n, amplitudes })
}
