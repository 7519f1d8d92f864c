//! Geometric entanglement of the even-sector vacuum.
//!
//! The maximal overlap `Λ_max = max_Φ |⟨Φ|Ψ⟩|` over a family of product
//! states defines `E_G = -log2 Λ_max²` and the density `E_G / N`. Three
//! families are supported:
//!
//! * per site: every site in `cos(ξ/2)|↑⟩ + sin(ξ/2)|↓⟩`;
//! * per block: every pair of sites `(2j, 2j+1)` in
//!   `a|↑↑⟩ + b|↑↓⟩ + c|↓↑⟩ + d|↓↓⟩`;
//! * antiferromagnetic per site: a block state that is itself a product,
//!   `(α|↑⟩ + β|↓⟩)(γ|↑⟩ + δ|↓⟩)`.
//!
//! Each family contains the previous one, so the maxima are nested.
//!
//! ```
//! use clusterxy::entanglement::maximize_site;
//! use clusterxy::preset::preset_ghz_cluster;
//!
//! let ghz = preset_ghz_cluster(0.0, 32).unwrap();
//! let result = maximize_site(&ghz).unwrap();
//! assert!((result.eg_total - 1.0).abs() < 1e-6);
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freefermion::{even_vacuum_angles, ground_and_gap};
use crate::model::ModelSpec;
use crate::optimize::{grid_golden_max, nelder_mead};
use crate::quadrature::integrate;

/// Products over more sites than this are accumulated as sums of logarithms.
pub const LOG_DOMAIN_SITES: usize = 256;

const SITE_GRID: usize = 257;
const SITE_TOL: f64 = 1e-10;
const SEARCH_FTOL: f64 = 1e-10;
const SEARCH_MAX_EVALS: usize = 10_000;
const RANDOM_STARTS: usize = 24;
const SEED: u64 = 0x5eed_b10c;
pub const THERMO_TOL: f64 = 1e-9;

/// Single-site product state `cos(ξ/2)|↑⟩ + sin(ξ/2)|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SiteAnsatz {
    pub xi: f64,
}

impl SiteAnsatz {
    pub fn new(xi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&xi) {
            return Err(Error::InvalidAnsatz("xi must lie in [0, pi]"));
        }
        Ok(SiteAnsatz { xi })
    }

    pub fn amplitudes(&self) -> [f64; 2] {
        let (s, c) = (0.5 * self.xi).sin_cos();
        [c, s]
    }
}

/// Two-site state `a|↑↑⟩ + b|↑↓⟩ + c|↓↑⟩ + d|↓↓⟩` with real amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockAnsatz {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl BlockAnsatz {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = a * a + b * b + c * c + d * d;
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidAnsatz("block amplitudes must have unit norm"));
        }
        Ok(BlockAnsatz { a, b, c, d })
    }

    /// Rescales an arbitrary non-zero vector onto the unit sphere.
    pub fn normalized(v: [f64; 4]) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidAnsatz("block amplitudes must not all vanish"));
        }
        Ok(BlockAnsatz {
            a: v[0] / norm,
            b: v[1] / norm,
            c: v[2] / norm,
            d: v[3] / norm,
        })
    }

    /// The block state of two identical sites, `(α², αβ, αβ, β²)`.
    pub fn from_site(site: SiteAnsatz) -> Self {
        let [al, be] = site.amplitudes();
        BlockAnsatz::from_pair([al, be], [al, be])
    }

    /// The block state `(α|↑⟩ + β|↓⟩) ⊗ (γ|↑⟩ + δ|↓⟩)`.
    pub fn from_pair(first: [f64; 2], second: [f64; 2]) -> Self {
        BlockAnsatz {
            a: first[0] * second[0],
            b: first[0] * second[1],
            c: first[1] * second[0],
            d: first[1] * second[1],
        }
    }

    /// Product block from two angles, `α = cos x`, `β = sin x`,
    /// `γ = cos y`, `δ = sin y`.
    pub fn from_af_angles(x: f64, y: f64) -> Self {
        let (sx, cx) = x.sin_cos();
        let (sy, cy) = y.sin_cos();
        BlockAnsatz::from_pair([cx, sx], [cy, sy])
    }

    /// Point of the unit 3-sphere in hyperspherical coordinates.
    pub fn from_sphere_angles(p: &[f64]) -> Self {
        let (s1, c1) = p[0].sin_cos();
        let (s2, c2) = p[1].sin_cos();
        let (s3, c3) = p[2].sin_cos();
        BlockAnsatz {
            a: c1,
            b: s1 * c2,
            c: s1 * s2 * c3,
            d: s1 * s2 * s3,
        }
    }

    pub fn sphere_angles(&self) -> [f64; 3] {
        let bcd = (self.b * self.b + self.c * self.c + self.d * self.d).sqrt();
        [
            bcd.atan2(self.a),
            self.c.hypot(self.d).atan2(self.b),
            self.d.atan2(self.c),
        ]
    }

    pub fn amplitudes(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntanglementMode {
    PerSite,
    PerBlock,
    PerSiteAf,
}

impl EntanglementMode {
    pub fn label(self) -> &'static str {
        match self {
            EntanglementMode::PerSite => "per_site",
            EntanglementMode::PerBlock => "per_block",
            EntanglementMode::PerSiteAf => "per_site_af",
        }
    }
}

/// Maximizing product state. The oracle may report complex amplitudes as
/// `[re, im]` pairs, one local state per site (or per block).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimum {
    Site(SiteAnsatz),
    Block(BlockAnsatz),
    Complex(Vec<Vec<[f64; 2]>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementResult {
    pub lambda_max: f64,
    pub eg_total: f64,
    pub density: f64,
    pub optimum: Optimum,
    pub mode: EntanglementMode,
    /// The analysed state is one of several degenerate ground states.
    pub degenerate: bool,
}

impl EntanglementResult {
    /// Builds a result from `log2 Λ_max`.
    pub fn from_log2_overlap(
        log2_lambda: f64,
        sites: usize,
        optimum: Optimum,
        mode: EntanglementMode,
        degenerate: bool,
    ) -> Self {
        // clamp rounding noise above Λ = 1
        let log2_lambda = log2_lambda.min(0.0);
        let eg_total = -2.0 * log2_lambda;
        EntanglementResult {
            lambda_max: log2_lambda.exp2(),
            eg_total,
            density: eg_total / sites as f64,
            optimum,
            mode,
            degenerate,
        }
    }
}

fn check_angles(angles: &[f64], sites: usize, operation: &'static str) -> Result<()> {
    if sites % 2 != 0 {
        return Err(Error::OddSites { operation, sites });
    }
    if angles.len() != sites / 2 {
        return Err(Error::DimensionMismatch {
            expected: sites / 2,
            actual: angles.len(),
        });
    }
    Ok(())
}

fn site_term(theta: f64, cos2: f64, sin2: f64, k: usize, sites: usize) -> f64 {
    let cot = 1.0 / (PI * (k as f64 + 0.5) / sites as f64).tan();
    theta.cos() * cos2 + theta.sin() * sin2 * cot
}

/// Multiplies terms directly, or through logarithms for long products.
fn product(terms: impl Iterator<Item = f64>, sites: usize) -> f64 {
    if sites <= LOG_DOMAIN_SITES {
        return terms.product();
    }
    let mut negative = false;
    let mut log = 0.0;
    for t in terms {
        negative ^= t < 0.0;
        log += t.abs().ln();
    }
    let magnitude = log.exp();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Overlap of the even vacuum with the uniform single-site product state.
pub fn overlap_site(angles: &[f64], xi: f64, sites: usize) -> Result<f64> {
    check_angles(angles, sites, "overlap_site")?;
    let (s, c) = (0.5 * xi).sin_cos();
    let (c2, s2) = (c * c, s * s);
    Ok(product(
        angles
            .iter()
            .enumerate()
            .map(|(k, &t)| site_term(t, c2, s2, k, sites)),
        sites,
    ))
}

/// `log2 |overlap_site|`.
pub fn log2_overlap_site(angles: &[f64], xi: f64, sites: usize) -> Result<f64> {
    check_angles(angles, sites, "overlap_site")?;
    Ok(site_log2(angles, xi, sites))
}

fn site_log2(angles: &[f64], xi: f64, sites: usize) -> f64 {
    let (s, c) = (0.5 * xi).sin_cos();
    let (c2, s2) = (c * c, s * s);
    angles
        .iter()
        .enumerate()
        .map(|(k, &t)| site_term(t, c2, s2, k, sites).abs().log2())
        .sum()
}

/// Factor of the block overlap for the momentum pair `(μ, π - μ)`.
fn block_term(theta: f64, theta_partner: f64, mu: f64, v: &BlockAnsatz) -> f64 {
    let (smu, cmu) = mu.sin_cos();
    let cot = cmu / smu;
    let pair_a = 0.5 * (v.b * v.b + v.c * v.c);
    let pair_b = v.b * v.c * cot * cmu + v.a * v.d * smu;
    let (s, c) = theta.sin_cos();
    let (sp, cp) = theta_partner.sin_cos();
    v.a * v.a * c * cp
        + v.d * v.d * s * sp
        + pair_a * cot * (theta - theta_partner).sin()
        + pair_b * (theta + theta_partner).sin()
}

fn block_terms<'a>(
    angles: &'a [f64],
    v: &'a BlockAnsatz,
    sites: usize,
) -> impl Iterator<Item = f64> + 'a {
    let half = sites / 2;
    let pairs = half / 2;
    let chi = if half % 2 == 1 {
        let m = (half - 1) / 2;
        Some(v.a * angles[m].cos() + v.d * angles[m].sin())
    } else {
        None
    };
    (0..pairs)
        .map(move |k| {
            let mu = 2.0 * PI * (k as f64 + 0.5) / sites as f64;
            block_term(angles[k], angles[half - k - 1], mu, v)
        })
        .chain(chi)
}

/// Overlap of the even vacuum with the uniform two-site block product
/// state, blocks on sites `(0, 1), (2, 3), ...`.
pub fn overlap_block(angles: &[f64], ansatz: &BlockAnsatz, sites: usize) -> Result<f64> {
    check_angles(angles, sites, "overlap_block")?;
    Ok(product(block_terms(angles, ansatz, sites), sites))
}

/// `log2 |overlap_block|`.
pub fn log2_overlap_block(angles: &[f64], ansatz: &BlockAnsatz, sites: usize) -> Result<f64> {
    check_angles(angles, sites, "overlap_block")?;
    Ok(block_log2(angles, ansatz, sites))
}

fn block_log2(angles: &[f64], v: &BlockAnsatz, sites: usize) -> f64 {
    block_terms(angles, v, sites).map(|t| t.abs().log2()).sum()
}

/// Even-vacuum angles of a model whose ground state is that vacuum, along
/// with its degeneracy flag.
pub fn vacuum_angles(spec: &ModelSpec) -> Result<(Vec<f64>, bool)> {
    let sites = spec.sites();
    if sites % 2 != 0 {
        return Err(Error::OddSites {
            operation: "entanglement",
            sites,
        });
    }
    let report = ground_and_gap(spec);
    if !report.even_vacuum {
        return Err(Error::NotEvenVacuum);
    }
    Ok((even_vacuum_angles(spec)?, report.degenerate))
}

fn search_site(angles: &[f64], sites: usize) -> (SiteAnsatz, f64) {
    let (xi, log2) = grid_golden_max(|xi| site_log2(angles, xi, sites), 0.0, PI, SITE_GRID, SITE_TOL);
    (SiteAnsatz { xi: xi.clamp(0.0, PI) }, log2)
}

fn search_af(angles: &[f64], sites: usize, site: SiteAnsatz) -> (BlockAnsatz, f64) {
    let objective = |p: &[f64]| -block_log2(angles, &BlockAnsatz::from_af_angles(p[0], p[1]), sites);
    let mut starts: Vec<(Vec<f64>, f64)> = Vec::new();
    let (nx, ny) = (16, 32);
    for i in 0..nx {
        for j in 0..ny {
            let p = vec![PI * i as f64 / nx as f64, 2.0 * PI * j as f64 / ny as f64];
            let v = objective(&p);
            starts.push((p, v));
        }
    }
    starts.sort_by(|p, q| p.1.total_cmp(&q.1));
    starts.truncate(4);
    starts.push((vec![0.5 * site.xi, 0.5 * site.xi], f64::NAN));

    let mut best = (BlockAnsatz::from_site(site), block_log2(angles, &BlockAnsatz::from_site(site), sites));
    for (p, _) in starts {
        let m = nelder_mead(objective, &p, 0.2, SEARCH_FTOL, SEARCH_MAX_EVALS);
        if -m.value > best.1 {
            best = (BlockAnsatz::from_af_angles(m.x[0], m.x[1]), -m.value);
        }
    }
    best
}

/// Standard block search starts: the eight signed coordinate vertices and
/// a fixed set of uniformly distributed sphere samples.
fn block_starts() -> Vec<BlockAnsatz> {
    let mut starts = Vec::with_capacity(8 + RANDOM_STARTS);
    for i in 0..4 {
        for sign in [1.0, -1.0] {
            let mut v = [0.0; 4];
            v[i] = sign;
            starts.push(BlockAnsatz::normalized(v).expect("unit vertex"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while starts.len() < 8 + RANDOM_STARTS {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(b) = BlockAnsatz::normalized(v) {
            starts.push(b);
        }
    }
    starts
}

/// Multi-start simplex search over the unit 3-sphere. `objective` is
/// maximized; seeds are evaluated directly too, so the result is never
/// worse than any of them.
fn search_sphere(objective: impl Fn(&BlockAnsatz) -> f64, seeds: &[BlockAnsatz]) -> (BlockAnsatz, f64) {
    let mut best = (seeds[0], f64::NEG_INFINITY);
    for seed in seeds {
        let direct = objective(seed);
        if direct > best.1 {
            best = (*seed, direct);
        }
        let m = nelder_mead(
            |p: &[f64]| -objective(&BlockAnsatz::from_sphere_angles(p)),
            &seed.sphere_angles(),
            0.3,
            SEARCH_FTOL,
            SEARCH_MAX_EVALS,
        );
        if -m.value > best.1 {
            best = (BlockAnsatz::from_sphere_angles(&m.x), -m.value);
        }
    }
    best
}

/// Per-site geometric entanglement of the even-vacuum ground state.
pub fn maximize_site(spec: &ModelSpec) -> Result<EntanglementResult> {
    let (angles, degenerate) = vacuum_angles(spec)?;
    let sites = spec.sites();
    let (site, log2) = search_site(&angles, sites);
    Ok(EntanglementResult::from_log2_overlap(
        log2,
        sites,
        Optimum::Site(site),
        EntanglementMode::PerSite,
        degenerate,
    ))
}

/// Per-site entanglement allowing the two sublattices to differ.
pub fn maximize_site_af(spec: &ModelSpec) -> Result<EntanglementResult> {
    Ok(maximize_nested(spec)?.af)
}

/// Two-site-block entanglement, reported per site.
pub fn maximize_block(spec: &ModelSpec) -> Result<EntanglementResult> {
    Ok(maximize_nested(spec)?.block)
}

/// All three maxima, each search seeded with the optimum of the smaller
/// family so that `Λ(block) ≥ Λ(af) ≥ Λ(site)` holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestedEntanglement {
    pub site: EntanglementResult,
    pub af: EntanglementResult,
    pub block: EntanglementResult,
}

pub fn maximize_nested(spec: &ModelSpec) -> Result<NestedEntanglement> {
    let (angles, degenerate) = vacuum_angles(spec)?;
    let sites = spec.sites();
    let (site, site_log2) = search_site(&angles, sites);
    let (af, af_log2) = search_af(&angles, sites, site);
    let mut seeds = block_starts();
    seeds.push(BlockAnsatz::from_site(site));
    seeds.push(af);
    let (block, block_log2_value) = search_sphere(|v| block_log2(&angles, v, sites), &seeds);
    let result = |log2, optimum, mode| {
        EntanglementResult::from_log2_overlap(log2, sites, optimum, mode, degenerate)
    };
    Ok(NestedEntanglement {
        site: result(site_log2, Optimum::Site(site), EntanglementMode::PerSite),
        af: result(af_log2, Optimum::Block(af), EntanglementMode::PerSiteAf),
        block: result(block_log2_value, Optimum::Block(block), EntanglementMode::PerBlock),
    })
}

/// Thermodynamic-limit block entanglement density with its optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoDensity {
    pub density: f64,
    pub optimum: BlockAnsatz,
}

/// Block density of a ring of diverging size,
/// `min over (a,b,c,d) of -(1/π) ∫_0^{π/2} log2 |T(μ)| dμ`, where `T` is
/// the pair factor of the finite-size block overlap with `θ_k → θ(μ)` and
/// `θ_{k'} → θ(π - μ)`.
pub fn thermo_block_density(theta_of_mu: impl Fn(f64) -> f64) -> Result<ThermoDensity> {
    let density = |v: &BlockAnsatz| -> Result<f64> {
        let integral = integrate(
            |mu| block_term(theta_of_mu(mu), theta_of_mu(PI - mu), mu, v).abs().log2(),
            0.0,
            FRAC_PI_2,
            THERMO_TOL,
        )?;
        Ok(-integral / PI)
    };
    let (optimum, _) = search_sphere(|v| density(v).map_or(f64::NEG_INFINITY, |d| -d), &block_starts());
    let density = density(&optimum)?;
    Ok(ThermoDensity {
        density: density.max(0.0),
        optimum,
    })
}
