//! Jordan-Wigner / Bogoliubov solution of a [`ModelSpec`].
//!
//! The spin Hamiltonian commutes with the fermion parity and splits into two
//! sectors. In each sector the Fourier modes `k = 0..N` (momentum
//! `2π(k + b)/N`) pair up as `(k, N - k - 2b)` and a 2x2 Bogoliubov rotation
//! by `θ_k` diagonalizes every pair:
//!
//! ```text
//! H_b = sum_k ε_k (γ†_k γ_k - 1/2),   ε_k = 2 sqrt(α_k² + β_k²)
//! ```
//!
//! Unpaired ("special") modes are already diagonal with `ε_k = 2 α_k`, which
//! may be negative. Every many-body level of a sector is `-½ Σ ε_k` plus the
//! energies of an occupation set whose size has the sector's parity.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BlockKind, ModelSpec};

/// Two levels are degenerate when they differ by less than this times
/// `max(1, |E|)`.
pub const DEGENERACY_RTOL: f64 = 1e-10;

pub fn is_degenerate(a: f64, b: f64) -> bool {
    (a - b).abs() < DEGENERACY_RTOL * a.abs().max(b.abs()).max(1.0)
}

/// Fermion-parity sector.
///
/// `Odd` is `b = 0`: periodic fermions, odd fermion number.
/// `Even` is `b = 1/2`: antiperiodic fermions, even fermion number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SectorLabel {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Parity {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl SectorLabel {
    pub const BOTH: [SectorLabel; 2] = [SectorLabel::Odd, SectorLabel::Even];

    /// Momentum offset `b`.
    pub fn offset(self) -> f64 {
        match self {
            SectorLabel::Odd => 0.0,
            SectorLabel::Even => 0.5,
        }
    }

    /// `2b` as an integer.
    fn twice_offset(self) -> usize {
        match self {
            SectorLabel::Odd => 0,
            SectorLabel::Even => 1,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            SectorLabel::Odd => Parity::Odd,
            SectorLabel::Even => Parity::Even,
        }
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectorLabel::Odd => f.write_str("odd"),
            SectorLabel::Even => f.write_str("even"),
        }
    }
}

/// Single-particle data for one momentum index of one sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeData {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub epsilon: f64,
    pub special: bool,
    pub partner: usize,
}

impl ModeData {
    /// A paired mode with `α = β = 0` decouples; its angle is set to zero
    /// and any occupation costs nothing.
    pub fn is_zero_mode(&self) -> bool {
        self.epsilon == 0.0
    }
}

/// Bogoliubov angle from `cos 2θ = α/√(α²+β²)` with `sin θ` carrying the
/// sign of `β` (`sgn 0 = +1`). Lies in `(-π/2, π/2]`; zero when `α = β = 0`.
pub fn bogoliubov_angle(alpha: f64, beta: f64) -> f64 {
    // atan2 distinguishes -0.0; the sign convention wants sgn(0) = +1
    let beta = if beta == 0.0 { 0.0 } else { beta };
    0.5 * beta.atan2(alpha)
}

/// `(α, β)` at an arbitrary momentum `p`, where each block sees the phase
/// `Θ = p (1 + n)`.
pub fn dispersion(spec: &ModelSpec, momentum: f64) -> (f64, f64) {
    accumulate(spec, |span| (momentum * span as f64).sin_cos())
}

/// Bogoliubov angle as a continuous function of momentum on `(0, π)`, as
/// needed by the thermodynamic-limit block integral.
pub fn theta_of_momentum(spec: &ModelSpec) -> impl Fn(f64) -> f64 + '_ {
    move |mu| {
        let (alpha, beta) = dispersion(spec, mu);
        bogoliubov_angle(alpha, beta)
    }
}

fn accumulate(spec: &ModelSpec, phase: impl Fn(usize) -> (f64, f64)) -> (f64, f64) {
    let mut alpha = spec.field();
    let mut beta = 0.0;
    for block in spec.blocks() {
        let (s, c) = phase(block.span());
        alpha -= block.strength * c;
        match block.kind {
            BlockKind::X => beta += block.strength * s,
            BlockKind::Y => beta -= block.strength * s,
        }
    }
    (alpha, beta)
}

fn is_special(sector: SectorLabel, k: usize, sites: usize) -> bool {
    match sector {
        SectorLabel::Odd => k == 0 || (sites % 2 == 0 && k == sites / 2),
        SectorLabel::Even => sites % 2 == 1 && k == (sites - 1) / 2,
    }
}

/// Per-momentum quantities of one sector.
pub fn mode_data(spec: &ModelSpec, sector: SectorLabel) -> Vec<ModeData> {
    let n = spec.sites();
    let two_n = 2 * n;
    let tb = sector.twice_offset();
    (0..n)
        .map(|k| {
            // Θ = π q / N with q = (2k + 2b)(1 + n) reduced into (-N, N], so
            // that paired momenta get phases of exactly opposite sign; 0 and π are
            // taken exactly.
            let (alpha, beta) = accumulate(spec, |span| {
                let q = ((2 * k + tb) * (span % two_n)) % two_n;
                match q {
                    0 => (0.0, 1.0),
                    q if q == n => (0.0, -1.0),
                    q if q > n => (PI * (q as f64 - two_n as f64) / n as f64).sin_cos(),
                    q => (PI * q as f64 / n as f64).sin_cos(),
                }
            });
            let special = is_special(sector, k, n);
            let partner = (2 * n - k - tb) % n;
            let partner = if special { k } else { partner };
            let (theta, epsilon) = if special {
                (0.0, 2.0 * alpha)
            } else {
                (bogoliubov_angle(alpha, beta), 2.0 * alpha.hypot(beta))
            };
            ModeData {
                k,
                alpha,
                beta,
                theta,
                epsilon,
                special,
                partner,
            }
        })
        .collect()
}

fn vacuum_energy(modes: &[ModeData]) -> f64 {
    -0.5 * modes.iter().map(|m| m.epsilon).sum::<f64>()
}

/// Lowest energy over occupation sets of the given parity.
///
/// Occupies every mode with `ε < 0`; if that count has the wrong parity,
/// applies the single cheapest fix: either add the unoccupied mode of
/// smallest `ε`, or vacate the occupied mode of smallest `|ε|`.
/// The returned occupation is sorted by momentum index.
pub fn parity_constrained_minimum(modes: &[ModeData], parity: Parity) -> (f64, Vec<usize>) {
    let mut energy = vacuum_energy(modes);
    let mut occupation: Vec<usize> = Vec::new();
    for m in modes.iter().filter(|m| m.epsilon < 0.0) {
        energy += m.epsilon;
        occupation.push(m.k);
    }
    if Parity::of(occupation.len()) != parity {
        let add = modes
            .iter()
            .filter(|m| m.epsilon >= 0.0)
            .min_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
        let vacate = modes
            .iter()
            .filter(|m| m.epsilon < 0.0)
            .max_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
        let fix = match (add, vacate) {
            (Some(a), Some(v)) if -v.epsilon < a.epsilon => v,
            (Some(a), _) => a,
            (None, Some(v)) => v,
            (None, None) => unreachable!("a ring has at least two modes"),
        };
        energy += fix.epsilon.abs();
        match occupation.binary_search(&fix.k) {
            Ok(i) => {
                occupation.remove(i);
            }
            Err(i) => occupation.insert(i, fix.k),
        }
    }
    (energy, occupation)
}

/// One many-body level of a sector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorLevel {
    pub energy: f64,
    pub occupation: Vec<usize>,
}

/// Lowest level of a sector together with the next one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorSolution {
    pub sector: SectorLabel,
    pub energy: f64,
    pub occupation: Vec<usize>,
    pub second_energy: f64,
    pub degenerate: bool,
}

pub fn sector_solution(spec: &ModelSpec, sector: SectorLabel) -> SectorSolution {
    let levels = sector_states(spec, sector, 2).expect("every sector has at least two states");
    SectorSolution {
        sector,
        energy: levels[0].energy,
        occupation: levels[0].occupation.clone(),
        second_energy: levels[1].energy,
        degenerate: is_degenerate(levels[0].energy, levels[1].energy),
    }
}

/// Number of many-body states in a sector, `2^(N-1)` (saturating).
pub fn sector_dimension(sites: usize) -> u128 {
    if sites > 128 {
        u128::MAX
    } else {
        1u128 << (sites - 1)
    }
}

/// The `count` lowest energies of a sector, ascending.
pub fn sector_levels(spec: &ModelSpec, sector: SectorLabel, count: usize) -> Result<Vec<f64>> {
    Ok(sector_states(spec, sector, count)?
        .into_iter()
        .map(|l| l.energy)
        .collect())
}

/// The `count` lowest levels of a sector with their occupation sets.
///
/// Levels are enumerated as flips relative to the unconstrained optimum
/// (all negative modes filled). Each flip costs `|ε|`, so flip sets come
/// out of a best-first search in nondecreasing total cost; those with the
/// wrong size parity are skipped. The first accepted set reproduces
/// [`parity_constrained_minimum`], the second is the cheapest pair flip
/// away from it.
pub fn sector_states(spec: &ModelSpec, sector: SectorLabel, count: usize) -> Result<Vec<SectorLevel>> {
    let available = sector_dimension(spec.sites());
    if count as u128 > available {
        return Err(Error::TooManyLevels {
            requested: count,
            available,
        });
    }
    let modes = mode_data(spec, sector);
    let mut base_energy = vacuum_energy(&modes);
    let mut base: Vec<bool> = modes.iter().map(|m| m.epsilon < 0.0).collect();
    for m in modes.iter().filter(|m| m.epsilon < 0.0) {
        base_energy += m.epsilon;
    }
    let base_count = base.iter().filter(|&&o| o).count();
    let want_odd_flips = Parity::of(base_count) != sector.parity();

    let mut order: Vec<usize> = (0..modes.len()).collect();
    order.sort_by(|&a, &b| {
        modes[a]
            .epsilon
            .abs()
            .total_cmp(&modes[b].epsilon.abs())
            .then(a.cmp(&b))
    });
    let cost: Vec<f64> = order.iter().map(|&i| modes[i].epsilon.abs()).collect();

    let mut out = Vec::with_capacity(count);
    let mut accept = |flips: &[usize], total: f64, out: &mut Vec<SectorLevel>| {
        if (flips.len() % 2 == 1) != want_odd_flips {
            return;
        }
        for &f in flips {
            base[order[f]] ^= true;
        }
        let occupation = (0..modes.len()).filter(|&k| base[k]).collect();
        for &f in flips {
            base[order[f]] ^= true;
        }
        out.push(SectorLevel {
            energy: base_energy + total,
            occupation,
        });
    };

    accept(&[], 0.0, &mut out);
    let mut heap = BinaryHeap::new();
    heap.push(FlipSet {
        cost: cost[0],
        flips: vec![0],
    });
    while out.len() < count {
        let Some(node) = heap.pop() else { break };
        accept(&node.flips, node.cost, &mut out);
        let last = *node.flips.last().expect("non-empty");
        if last + 1 < cost.len() {
            let mut extended = node.flips.clone();
            extended.push(last + 1);
            heap.push(FlipSet {
                cost: node.cost + cost[last + 1],
                flips: extended,
            });
            let mut replaced = node.flips;
            *replaced.last_mut().expect("non-empty") = last + 1;
            heap.push(FlipSet {
                cost: node.cost - cost[last] + cost[last + 1],
                flips: replaced,
            });
        }
    }
    Ok(out)
}

/// Min-heap entry: a set of flips (indices into the cost-sorted mode list).
#[derive(Debug)]
struct FlipSet {
    cost: f64,
    flips: Vec<usize>,
}

impl PartialEq for FlipSet {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FlipSet {}

impl PartialOrd for FlipSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FlipSet {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.flips.cmp(&self.flips))
    }
}

/// Global ground state and gap, from the two lowest levels of each sector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundReport {
    pub ground_energy: f64,
    pub first_excited: f64,
    pub gap: f64,
    pub ground_sector: SectorLabel,
    /// The ground state is the even-sector vacuum (ties with the odd sector
    /// resolve in its favour).
    pub even_vacuum: bool,
    /// The gap is below the degeneracy tolerance.
    pub degenerate: bool,
}

pub fn ground_and_gap(spec: &ModelSpec) -> GroundReport {
    let mut merged: Vec<(f64, SectorLabel, bool)> = Vec::with_capacity(4);
    for sector in SectorLabel::BOTH {
        let levels = sector_states(spec, sector, 2).expect("every sector has two states");
        for level in levels {
            merged.push((level.energy, sector, level.occupation.is_empty()));
        }
    }
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ground_energy = merged[0].0;
    let first_excited = merged[1].0;
    let tied = merged.iter().take_while(|l| is_degenerate(l.0, ground_energy));
    let vacuum_tied = tied
        .clone()
        .any(|l| l.1 == SectorLabel::Even && l.2);
    let ground_sector = if vacuum_tied {
        SectorLabel::Even
    } else {
        merged[0].1
    };
    GroundReport {
        ground_energy,
        first_excited,
        gap: first_excited - ground_energy,
        ground_sector,
        even_vacuum: vacuum_tied,
        degenerate: is_degenerate(ground_energy, first_excited),
    }
}

/// Bogoliubov angles `θ_0 .. θ_{N/2-1}` of the even sector; the even
/// vacuum is `Π_k [cos θ_k + i sin θ_k c†_k c†_{N-k-1}] |Ω⟩`.
pub fn even_vacuum_angles(spec: &ModelSpec) -> Result<Vec<f64>> {
    let n = spec.sites();
    if n % 2 != 0 {
        return Err(Error::OddSites {
            operation: "even_vacuum_angles",
            sites: n,
        });
    }
    Ok(mode_data(spec, SectorLabel::Even)
        .into_iter()
        .take(n / 2)
        .map(|m| m.theta)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_model, BlockSpec};
    use crate::preset::{preset_ghz_cluster, preset_halfway_xy, preset_spt_afm, preset_xnmy};

    /// All occupation sets of the right parity, sorted energies.
    fn brute_levels(modes: &[ModeData], parity: Parity) -> Vec<(f64, usize)> {
        let n = modes.len();
        let e0 = vacuum_energy(modes);
        let mut out: Vec<(f64, usize)> = (0u64..1 << n)
            .filter(|s| Parity::of(s.count_ones() as usize) == parity)
            .map(|s| {
                let e: f64 = (0..n)
                    .filter(|&k| s >> k & 1 == 1)
                    .map(|k| modes[k].epsilon)
                    .sum();
                (e0 + e, s.count_ones() as usize)
            })
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    #[test]
    fn xzy_ising_special_mode() {
        for h in [-0.5, 0.3, 2.0] {
            let spec = preset_xnmy(1, 1, 1.0, h, 8).unwrap();
            let modes = mode_data(&spec, SectorLabel::Odd);
            assert!(modes[0].special && modes[4].special);
            assert!((modes[0].epsilon - 2.0 * (h - 1.0)).abs() < 1e-14);
            assert_eq!(modes[0].theta, 0.0);
        }
    }

    #[test]
    fn free_spins_modes() {
        let spec = make_model(6, 0.7, vec![]).unwrap();
        for sector in SectorLabel::BOTH {
            for m in mode_data(&spec, sector) {
                assert_eq!(m.alpha, 0.7);
                assert_eq!(m.beta, 0.0);
                assert_eq!(m.theta, 0.0);
                assert!((m.epsilon - 1.4).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn halfway_even_sector_flat_band() {
        let spec = preset_halfway_xy(0.5, 0.3, 8).unwrap();
        let modes = mode_data(&spec, SectorLabel::Even);
        let expected = 2.0 * (0.09f64 + 0.25).sqrt();
        assert!((modes[0].epsilon - expected).abs() < 1e-12);
        assert!((expected - 1.16619).abs() < 1e-5);
    }

    #[test]
    fn pairing_is_exact() {
        let specs = [
            preset_xnmy(1, 1, 0.5, 0.3, 10).unwrap(),
            preset_ghz_cluster(0.4, 12).unwrap(),
            preset_spt_afm(0.8, 9, false).unwrap(),
            make_model(7, 0.2, vec![BlockSpec::x(0.3, 2), BlockSpec::y(-0.6, 4)]).unwrap(),
        ];
        for spec in &specs {
            for sector in SectorLabel::BOTH {
                let modes = mode_data(spec, sector);
                for m in &modes {
                    if m.special {
                        assert_eq!(m.partner, m.k);
                        assert_eq!(m.epsilon, 2.0 * m.alpha);
                        continue;
                    }
                    assert!(m.epsilon >= 0.0);
                    let p = &modes[m.partner];
                    assert_eq!(p.partner, m.k);
                    assert_eq!(p.epsilon, m.epsilon, "{sector} k={}", m.k);
                }
            }
        }
    }

    #[test]
    fn angle_reproduces_cos_two_theta() {
        for &(a, b) in &[(1.0, 0.5), (-1.0, 0.5), (-1.0, -0.5), (0.3, -2.0), (-2.0, 0.0), (0.0, 0.0)] {
            let t = bogoliubov_angle(a, b);
            let r = f64::hypot(a, b);
            if r > 0.0 {
                assert!(((2.0 * t).cos() - a / r).abs() < 1e-14);
                let sign = if b >= 0.0 { 1.0 } else { -1.0 };
                assert!((t.sin() - sign * ((1.0 - a / r) / 2.0).sqrt()).abs() < 1e-14);
            } else {
                assert_eq!(t, 0.0);
            }
        }
        assert_eq!(bogoliubov_angle(-1.0, -0.0), bogoliubov_angle(-1.0, 0.0));
    }

    #[test]
    fn three_fermion_odd_sector() {
        let spec = preset_xnmy(1, 1, 1.0, -0.5, 8).unwrap();
        let modes = mode_data(&spec, SectorLabel::Odd);
        let (_, occ) = parity_constrained_minimum(&modes, Parity::Odd);
        assert_eq!(occ.len(), 3);
        assert!(occ.contains(&0) && occ.contains(&4));
    }

    #[test]
    fn vacuum_when_all_positive() {
        let spec = make_model(6, 1.0, vec![]).unwrap();
        let modes = mode_data(&spec, SectorLabel::Even);
        let (e, occ) = parity_constrained_minimum(&modes, Parity::Even);
        assert!(occ.is_empty());
        assert!((e + 6.0).abs() < 1e-14);
    }

    #[test]
    fn halfway_odd_sector_degenerate_minimum() {
        let spec = preset_halfway_xy(0.5, 0.5, 8).unwrap();
        let modes = mode_data(&spec, SectorLabel::Odd);
        let brute = brute_levels(&modes, Parity::Odd);
        let (e, _) = parity_constrained_minimum(&modes, Parity::Odd);
        assert!((e - brute[0].0).abs() < 1e-12);
        // several one- and three-fermion patterns share the minimum
        let tied: Vec<usize> = brute
            .iter()
            .take_while(|l| (l.0 - brute[0].0).abs() < 1e-9)
            .map(|l| l.1)
            .collect();
        assert!(tied.contains(&1) && tied.contains(&3), "{tied:?}");
    }

    #[test]
    fn free_spin_levels() {
        let spec = make_model(4, 1.0, vec![]).unwrap();
        let levels = sector_levels(&spec, SectorLabel::Even, 2).unwrap();
        assert!((levels[0] + 4.0).abs() < 1e-14);
        assert!(levels[1].abs() < 1e-14);
        assert!(matches!(
            sector_levels(&spec, SectorLabel::Even, 9),
            Err(Error::TooManyLevels { .. })
        ));
        assert_eq!(sector_levels(&spec, SectorLabel::Even, 8).unwrap().len(), 8);
    }

    #[test]
    fn levels_match_enumeration() {
        let specs = [
            preset_xnmy(1, 1, 0.5, 0.2, 8).unwrap(),
            preset_xnmy(1, 1, 1.0, -0.5, 8).unwrap(),
            preset_halfway_xy(0.5, -0.4, 8).unwrap(),
            preset_ghz_cluster(-0.3, 6).unwrap(),
            make_model(7, -0.4, vec![BlockSpec::x(0.9, 1), BlockSpec::y(0.4, 3)]).unwrap(),
        ];
        for spec in &specs {
            for sector in SectorLabel::BOTH {
                let modes = mode_data(spec, sector);
                let brute = brute_levels(&modes, sector.parity());
                let states = sector_states(spec, sector, brute.len()).unwrap();
                for (s, b) in states.iter().zip(&brute) {
                    assert!((s.energy - b.0).abs() < 1e-12);
                    assert_eq!(Parity::of(s.occupation.len()), sector.parity());
                }
                let (e, occ) = parity_constrained_minimum(&modes, sector.parity());
                assert_eq!(e, states[0].energy);
                assert_eq!(occ, states[0].occupation);
            }
        }
    }

    #[test]
    fn second_level_is_cheapest_pair_flip() {
        let spec = preset_xnmy(1, 1, 1.0, -0.5, 10).unwrap();
        let modes = mode_data(&spec, SectorLabel::Odd);
        let (e, occ) = parity_constrained_minimum(&modes, Parity::Odd);
        let flip_cost = |k: usize| {
            if occ.contains(&k) {
                -modes[k].epsilon
            } else {
                modes[k].epsilon
            }
        };
        let mut best = f64::INFINITY;
        for i in 0..modes.len() {
            for j in i + 1..modes.len() {
                best = best.min(flip_cost(i) + flip_cost(j));
            }
        }
        let levels = sector_levels(&spec, SectorLabel::Odd, 2).unwrap();
        assert!((levels[1] - (e + best)).abs() < 1e-12);
    }

    #[test]
    fn ghz_cluster_gap() {
        let spec = preset_ghz_cluster(0.5, 8).unwrap();
        let odd = sector_levels(&spec, SectorLabel::Odd, 1).unwrap()[0];
        let even = sector_levels(&spec, SectorLabel::Even, 1).unwrap()[0];
        assert!((odd - even - 2.0).abs() < 1e-12);
        let report = ground_and_gap(&preset_ghz_cluster(1.5, 8).unwrap());
        assert!((report.gap - 8.0).abs() < 1e-12);
        assert!(report.even_vacuum);
    }

    #[test]
    fn ghz_point_tie_prefers_even_vacuum() {
        let report = ground_and_gap(&preset_ghz_cluster(0.0, 8).unwrap());
        assert!(report.degenerate);
        assert!(report.even_vacuum);
        assert_eq!(report.ground_sector, SectorLabel::Even);
    }

    #[test]
    fn large_ring_gaps() {
        let spt = ground_and_gap(&preset_spt_afm(0.4, 512, false).unwrap());
        assert!((spt.gap - 1.2).abs() < 1e-3, "{}", spt.gap);
        let xzy = ground_and_gap(&preset_xnmy(1, 1, 1.0, 2.0, 1024).unwrap());
        assert!((xzy.gap - 2.0).abs() < 1e-3, "{}", xzy.gap);
    }

    #[test]
    fn vacuum_angles() {
        let free = make_model(8, 1.0, vec![]).unwrap();
        assert!(even_vacuum_angles(&free).unwrap().iter().all(|&t| t == 0.0));
        assert!(matches!(
            even_vacuum_angles(&make_model(7, 1.0, vec![]).unwrap()),
            Err(Error::OddSites { .. })
        ));
        // transverse Ising at h = 0: tan 2θ_k = -tan(2π(k+½)/8) up to the
        // branch fixed by the sign of β
        let ising = preset_xnmy(0, 0, 1.0, 0.0, 8).unwrap();
        let angles = even_vacuum_angles(&ising).unwrap();
        assert_eq!(angles.len(), 4);
        for (k, t) in angles.iter().enumerate() {
            let p = 2.0 * PI * (k as f64 + 0.5) / 8.0;
            assert!(((2.0 * t).tan() + p.tan()).abs() < 1e-12);
            assert!(t.sin() * p.sin() >= 0.0);
        }
    }
}
