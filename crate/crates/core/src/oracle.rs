//! Brute-force reference: dense exact diagonalization in the spin basis and
//! direct overlap maximization on the resulting vectors.
//!
//! Basis convention: site 0 is the most significant bit of a basis index,
//! `|↑⟩` is bit 0 and `|↓⟩` is bit 1, so `Z|↑⟩ = |↑⟩`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::entanglement::{
    BlockAnsatz, EntanglementMode, EntanglementResult, Optimum, SiteAnsatz,
};
use crate::error::{Error, Result};
use crate::freefermion::is_degenerate;
use crate::model::{to_pauli_strings, ModelSpec, Pauli, PauliString};
use crate::optimize::nelder_mead;

/// Largest ring the dense Hamiltonian is built for.
pub const MAX_DENSE_SITES: usize = 14;
/// Largest ring for the six-parameter block search.
pub const MAX_BLOCK_ORACLE_SITES: usize = 10;

/// Hermitian matrix in the spin basis, stored as real and imaginary parts.
/// Model Hamiltonians are real, in which case `imag` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    sites: usize,
    real: DMatrix<f64>,
    imag: Option<DMatrix<f64>>,
    parity_conserving: bool,
}

impl DenseOperator {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dimension(&self) -> usize {
        self.real.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let im = self.imag.as_ref().map_or(0.0, |m| m[(row, col)]);
        Complex64::new(self.real[(row, col)], im)
    }

    pub fn is_real(&self) -> bool {
        self.imag.is_none()
    }

    /// Whether the operator commutes with `Π Z`.
    pub fn parity_conserving(&self) -> bool {
        self.parity_conserving
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dimension();
        (0..n).all(|i| {
            (0..=i).all(|j| (self.entry(i, j) - self.entry(j, i).conj()).norm() <= tol)
        })
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> f64 {
        let n = self.dimension();
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..n {
                row += self.entry(i, j) * state.amplitudes[j];
            }
            total += state.amplitudes[i].conj() * row;
        }
        total.re
    }
}

/// Normalized state of `sites` spins.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    sites: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`, whose length must be `2^sites`.
    pub fn new(sites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << sites {
            return Err(Error::DimensionMismatch {
                expected: 1 << sites,
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidAnsatz("state must have a finite non-zero norm"));
        }
        Ok(StateVector {
            sites,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Product state with the same local state on every site.
    pub fn uniform_product(sites: usize, local: [Complex64; 2]) -> Result<Self> {
        let amplitudes = (0usize..1 << sites)
            .map(|i| {
                (0..sites)
                    .map(|s| local[bit(i, s, sites)])
                    .product::<Complex64>()
            })
            .collect();
        StateVector::new(sites, amplitudes)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `⟨Π Z⟩`; `+1` for even fermion parity.
    pub fn parity(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let sign = if i.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                sign * a.norm_sqr()
            })
            .sum()
    }

    /// Expectation value of a Pauli string.
    pub fn pauli_expectation(&self, string: &PauliString) -> Result<f64> {
        if string.sites() != self.sites {
            return Err(Error::DimensionMismatch {
                expected: self.sites,
                actual: string.sites(),
            });
        }
        let (flip, _) = masks(string);
        let total: Complex64 = (0..self.amplitudes.len())
            .map(|i| {
                self.amplitudes[i ^ flip].conj() * phase(string, i) * self.amplitudes[i]
            })
            .sum();
        Ok(string.coefficient * total.re)
    }
}

/// State (0 or 1) of `site` in basis index `i`.
fn bit(i: usize, site: usize, sites: usize) -> usize {
    (i >> (sites - 1 - site)) & 1
}

/// Flip mask of the X/Y letters, and the count of Y letters.
fn masks(string: &PauliString) -> (usize, usize) {
    let n = string.sites();
    let mut flip = 0;
    let mut ys = 0;
    for (s, p) in string.letters.iter().enumerate() {
        if matches!(p, Pauli::X | Pauli::Y) {
            flip |= 1 << (n - 1 - s);
        }
        if *p == Pauli::Y {
            ys += 1;
        }
    }
    (flip, ys)
}

/// Matrix element `⟨i ^ flip| P |i⟩` of the bare letters (no coefficient).
fn phase(string: &PauliString, i: usize) -> Complex64 {
    let n = string.sites();
    let mut sign = 1.0;
    let mut ys = 0;
    for (s, p) in string.letters.iter().enumerate() {
        let down = bit(i, s, n) == 1;
        match p {
            Pauli::Z if down => sign = -sign,
            Pauli::Y => {
                ys += 1;
                // Y|↑⟩ = i|↓⟩, Y|↓⟩ = -i|↑⟩
                if down {
                    sign = -sign;
                }
            }
            _ => {}
        }
    }
    let unit = match ys % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    unit * sign
}

fn size_guard(operation: &'static str, sites: usize, max: usize) -> Result<()> {
    if sites > max {
        return Err(Error::SizeGuard {
            operation,
            sites,
            max,
        });
    }
    Ok(())
}

/// Sums the Kronecker-extended strings on a ring of `sites` spins.
pub fn dense_hamiltonian(sites: usize, strings: &[PauliString]) -> Result<DenseOperator> {
    size_guard("dense_hamiltonian", sites, MAX_DENSE_SITES)?;
    if sites == 0 {
        return Err(Error::InvalidSize {
            sites,
            reason: "an operator needs at least one site",
        });
    }
    let dim = 1usize << sites;
    let mut real = DMatrix::<f64>::zeros(dim, dim);
    let mut imag: Option<DMatrix<f64>> = None;
    let mut parity_conserving = true;
    for string in strings {
        if string.sites() != sites {
            return Err(Error::DimensionMismatch {
                expected: sites,
                actual: string.sites(),
            });
        }
        let (flip, ys) = masks(string);
        parity_conserving &= flip.count_ones() % 2 == 0;
        for i in 0..dim {
            let v = phase(string, i) * string.coefficient;
            real[(i ^ flip, i)] += v.re;
            if ys % 2 == 1 {
                imag.get_or_insert_with(|| DMatrix::zeros(dim, dim))[(i ^ flip, i)] += v.im;
            }
        }
    }
    Ok(DenseOperator {
        sites,
        real,
        imag,
        parity_conserving,
    })
}

/// Dense Hamiltonian of a model.
pub fn dense_model(spec: &ModelSpec) -> Result<DenseOperator> {
    dense_hamiltonian(spec.sites(), &to_pauli_strings(spec))
}

/// Eigenpairs with the `Π Z` eigenvalue of each vector (0 when the
/// operator mixes parities).
struct Eigen {
    values: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
    parities: Vec<i8>,
}

fn decompose(op: &DenseOperator, vectors: bool) -> Eigen {
    let dim = op.dimension();
    let mut out = Eigen {
        values: Vec::with_capacity(dim),
        vectors: Vec::new(),
        parities: Vec::with_capacity(dim),
    };
    match &op.imag {
        None if op.parity_conserving => {
            for parity in [1i8, -1] {
                let idx: Vec<usize> = (0..dim)
                    .filter(|i| (i.count_ones() % 2 == 0) == (parity == 1))
                    .collect();
                let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| op.real[(idx[r], idx[c])]);
                push_real(&mut out, block, vectors, parity, Some(&idx), dim);
            }
        }
        None => push_real(&mut out, op.real.clone(), vectors, 0, None, dim),
        Some(im) => {
            // [[R, -I], [I, R]] carries every eigenvalue twice
            let big = DMatrix::from_fn(2 * dim, 2 * dim, |r, c| {
                let (ri, ci) = (r % dim, c % dim);
                match (r < dim, c < dim) {
                    (true, true) | (false, false) => op.real[(ri, ci)],
                    (true, false) => -im[(ri, ci)],
                    (false, true) => im[(ri, ci)],
                }
            });
            let eig = SymmetricEigen::new(big);
            let mut order: Vec<usize> = (0..2 * dim).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            for &j in order.iter().step_by(2) {
                out.values.push(eig.eigenvalues[j]);
                out.parities.push(0);
                if vectors {
                    let col = eig.eigenvectors.column(j);
                    out.vectors
                        .push((0..dim).map(|i| Complex64::new(col[i], col[i + dim])).collect());
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..out.values.len()).collect();
    order.sort_by(|&a, &b| out.values[a].total_cmp(&out.values[b]));
    Eigen {
        values: order.iter().map(|&i| out.values[i]).collect(),
        vectors: if vectors {
            order.iter().map(|&i| out.vectors[i].clone()).collect()
        } else {
            Vec::new()
        },
        parities: order.iter().map(|&i| out.parities[i]).collect(),
    }
}

fn push_real(
    out: &mut Eigen,
    block: DMatrix<f64>,
    vectors: bool,
    parity: i8,
    idx: Option<&[usize]>,
    dim: usize,
) {
    if !vectors {
        let values: DVector<f64> = block.symmetric_eigenvalues();
        out.values.extend(values.iter());
        out.parities.extend(std::iter::repeat_n(parity, values.len()));
        return;
    }
    let eig = SymmetricEigen::new(block);
    for j in 0..eig.eigenvalues.len() {
        out.values.push(eig.eigenvalues[j]);
        out.parities.push(parity);
        let col = eig.eigenvectors.column(j);
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for (r, &x) in col.iter().enumerate() {
            v[idx.map_or(r, |m| m[r])] = Complex64::new(x, 0.0);
        }
        out.vectors.push(v);
    }
}

/// The `count` smallest eigenvalues, ascending.
pub fn exact_spectrum(op: &DenseOperator, count: usize) -> Result<Vec<f64>> {
    if count > op.dimension() {
        return Err(Error::TooManyLevels {
            requested: count,
            available: op.dimension() as u128,
        });
    }
    let mut values = decompose(op, false).values;
    values.truncate(count);
    Ok(values)
}

/// Normalized lowest eigenvector. Among numerically degenerate ground
/// states the even-parity one is returned.
pub fn exact_ground_state(op: &DenseOperator) -> StateVector {
    let eig = decompose(op, true);
    let e0 = eig.values[0];
    let pick = (0..eig.values.len())
        .take_while(|&i| is_degenerate(eig.values[i], e0))
        .find(|&i| eig.parities[i] == 1)
        .unwrap_or(0);
    StateVector::new(op.sites, eig.vectors[pick].clone()).expect("eigenvectors are normalized")
}

/// Builds `Π_k [cos θ_k + i sin θ_k c†_k c†_{N-k-1}] |↑…↑⟩` in the spin
/// basis from the even-sector angles `θ_0 .. θ_{N/2-1}`, with
/// `c†_k = N^{-1/2} Σ_j e^{2πi j (k+½)/N} c†_j` and the Jordan-Wigner string
/// running over sites `l < j`.
pub fn reconstruct_even_vacuum(sites: usize, angles: &[f64]) -> Result<StateVector> {
    size_guard("reconstruct_even_vacuum", sites, MAX_DENSE_SITES)?;
    if sites % 2 != 0 {
        return Err(Error::OddSites {
            operation: "reconstruct_even_vacuum",
            sites,
        });
    }
    if angles.len() != sites / 2 {
        return Err(Error::DimensionMismatch {
            expected: sites / 2,
            actual: angles.len(),
        });
    }
    let dim = 1usize << sites;
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[0] = Complex64::new(1.0, 0.0);
    let n = sites as f64;
    for (k, &theta) in angles.iter().enumerate() {
        let partner = sites - k - 1;
        let wave = |q: usize, j: usize| Complex64::from_polar(1.0 / n.sqrt(), 2.0 * PI * j as f64 * (q as f64 + 0.5) / n);
        // pair creation Σ_{j,l} u_k(j) u_{k'}(l) c†_j c†_l
        let mut pair = vec![Complex64::new(0.0, 0.0); dim];
        for (i, &amp) in state.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            for l in 0..sites {
                let Some((i1, s1)) = create(i, l, sites) else { continue };
                let a1 = amp * wave(partner, l) * s1;
                for j in 0..sites {
                    let Some((i2, s2)) = create(i1, j, sites) else { continue };
                    pair[i2] += a1 * wave(k, j) * s2;
                }
            }
        }
        let (s, c) = theta.sin_cos();
        let i_sin = Complex64::new(0.0, s);
        for (a, p) in state.iter_mut().zip(&pair) {
            *a = *a * c + i_sin * p;
        }
    }
    StateVector::new(sites, state)
}

/// `c†_j` on basis index `i`: new index and Jordan-Wigner sign, or `None`
/// when site `j` is already occupied.
fn create(i: usize, j: usize, sites: usize) -> Option<(usize, f64)> {
    if bit(i, j, sites) == 1 {
        return None;
    }
    let occupied_before = (0..j).filter(|&l| bit(i, l, sites) == 1).count();
    let sign = if occupied_before % 2 == 0 { 1.0 } else { -1.0 };
    Some((i | 1 << (sites - 1 - j), sign))
}

/// Product-state ansatz accepted by [`direct_overlap`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ansatz {
    Site(SiteAnsatz),
    Block(BlockAnsatz),
}

/// `⟨Φ|ψ⟩` for the product state repeating `local` on consecutive groups
/// of `log2(local.len())` sites.
fn product_overlap(state: &StateVector, local: &[Complex64]) -> Complex64 {
    let width = local.len();
    let mut v: Vec<Complex64> = state.amplitudes.clone();
    while v.len() > 1 {
        let rest = v.len() / width;
        v = (0..rest)
            .map(|r| {
                local
                    .iter()
                    .enumerate()
                    .map(|(s, phi)| phi.conj() * v[s * rest + r])
                    .sum()
            })
            .collect();
    }
    v[0]
}

/// `|⟨Φ|ψ⟩|` for a real product ansatz.
pub fn direct_overlap(state: &StateVector, ansatz: &Ansatz) -> Result<f64> {
    let local: Vec<Complex64> = match ansatz {
        Ansatz::Site(s) => s.amplitudes().iter().map(|&x| x.into()).collect(),
        Ansatz::Block(b) => {
            if state.sites % 2 != 0 {
                return Err(Error::DimensionMismatch {
                    expected: state.sites + 1,
                    actual: state.sites,
                });
            }
            b.amplitudes().iter().map(|&x| x.into()).collect()
        }
    };
    Ok(product_overlap(state, &local).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Site,
    Block,
    AfSite,
}

fn qubit(t: f64, phi: f64) -> [Complex64; 2] {
    let (s, c) = (0.5 * t).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

fn kron(x: [Complex64; 2], y: [Complex64; 2]) -> Vec<Complex64> {
    vec![x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

/// Four complex amplitudes with a real first component, from three
/// hyperspherical angles and three phases.
fn block_state(p: &[f64]) -> Vec<Complex64> {
    let v = BlockAnsatz::from_sphere_angles(&p[..3]).amplitudes();
    vec![
        Complex64::new(v[0], 0.0),
        Complex64::from_polar(v[1], p[3]),
        Complex64::from_polar(v[2], p[4]),
        Complex64::from_polar(v[3], p[5]),
    ]
}

fn local_state(kind: OracleKind, p: &[f64]) -> Vec<Complex64> {
    match kind {
        OracleKind::Site => qubit(p[0], p[1]).to_vec(),
        OracleKind::AfSite => kron(qubit(p[0], p[1]), qubit(p[2], p[3])),
        OracleKind::Block => block_state(p),
    }
}

/// Maximal overlap of `state` with product states of the given kind, over
/// complex local amplitudes (global phase fixed). Seeds come from a grid or
/// random sample and are refined by simplex search.
pub fn brute_max_overlap(state: &StateVector, kind: OracleKind) -> Result<EntanglementResult> {
    let sites = state.sites;
    if kind != OracleKind::Site && sites % 2 != 0 {
        return Err(Error::OddSites {
            operation: "brute_max_overlap",
            sites,
        });
    }
    if kind == OracleKind::Block {
        size_guard("brute_max_overlap", sites, MAX_BLOCK_ORACLE_SITES)?;
    }
    let objective = |p: &[f64]| -product_overlap(state, &local_state(kind, p)).norm();

    let mut seeds: Vec<Vec<f64>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac1e);
    match kind {
        OracleKind::Site => {
            for i in 0..=32 {
                for j in 0..16 {
                    seeds.push(vec![PI * i as f64 / 32.0, 2.0 * PI * j as f64 / 16.0]);
                }
            }
        }
        OracleKind::AfSite => {
            for a in 0..=8 {
                for b in 0..4 {
                    for c in 0..=8 {
                        for d in 0..4 {
                            seeds.push(vec![
                                PI * a as f64 / 8.0,
                                0.5 * PI * b as f64,
                                PI * c as f64 / 8.0,
                                0.5 * PI * d as f64,
                            ]);
                        }
                    }
                }
            }
        }
        OracleKind::Block => {
            for _ in 0..3000 {
                let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
                let Ok(b) = BlockAnsatz::normalized(v) else { continue };
                let mut p = b.sphere_angles().to_vec();
                for _ in 0..3 {
                    p.push(rng.random_range(0.0..2.0 * PI));
                }
                seeds.push(p);
            }
        }
    }
    let mut scored: Vec<(f64, Vec<f64>)> = seeds.into_iter().map(|p| (objective(&p), p)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = scored[0].clone();
    for (_, p) in scored.iter().take(12) {
        let m = nelder_mead(objective, p, 0.1, 1e-14, 20_000);
        if m.value < best.0 {
            best = (m.value, m.x);
        }
    }
    let lambda = -best.0;
    let local = local_state(kind, &best.1);
    let mode = match kind {
        OracleKind::Site => EntanglementMode::PerSite,
        OracleKind::Block => EntanglementMode::PerBlock,
        OracleKind::AfSite => EntanglementMode::PerSiteAf,
    };
    let optimum = Optimum::Complex(vec![local.iter().map(|a| [a.re, a.im]).collect()]);
    Ok(EntanglementResult::from_log2_overlap(
        lambda.log2(),
        sites,
        optimum,
        mode,
        false,
    ))
}
