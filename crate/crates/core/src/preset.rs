//! Named members of the family.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{make_model, BlockSpec, ModelSpec};

/// XY chain with Z-mediated interactions: `n` mediators on the X block and
/// `m` on the Y block, couplings `(1 + r)/2` and `(1 - r)/2`.
///
/// `n = m = 0` is the standard XY model (transverse-field Ising at `r = 1`),
/// `n = m = 1` the XzY model, and `n = m = N/2 - 1` the halfway XY model.
pub fn preset_xnmy(n: usize, m: usize, r: f64, h: f64, sites: usize) -> Result<ModelSpec> {
    make_model(
        sites,
        h,
        vec![BlockSpec::x((1.0 + r) / 2.0, n), BlockSpec::y((1.0 - r) / 2.0, m)],
    )
}

/// The halfway XY model, `n = m = N/2 - 1`.
pub fn preset_halfway_xy(r: f64, h: f64, sites: usize) -> Result<ModelSpec> {
    require_even(sites, HALFWAY_EVEN)?;
    require_min(sites, 4)?;
    let n = sites / 2 - 1;
    preset_xnmy(n, n, r, h, sites)
}

/// GHZ-cluster chain, rotated so that the transverse term is along Z.
///
/// `g = 0` is the GHZ point, `g = 1` a pure paramagnet and `g = -1` the
/// cluster point.
pub fn preset_ghz_cluster(g: f64, sites: usize) -> Result<ModelSpec> {
    require_even(sites, "the GHZ-cluster preset needs an even number of sites")?;
    require_min(sites, 4)?;
    make_model(
        sites,
        (1.0 + g) * (1.0 + g),
        vec![
            BlockSpec::x(-2.0 * (g * g - 1.0), 0),
            BlockSpec::x(-(g - 1.0) * (g - 1.0), 1),
        ],
    )
}

/// Cluster (XZX) chain competing with an antiferromagnetic YY coupling
/// `-lambda`. With `halfway` the X block spans half the ring.
pub fn preset_spt_afm(lambda: f64, sites: usize, halfway: bool) -> Result<ModelSpec> {
    require_min(sites, 4)?;
    let mediators = if halfway {
        require_even(sites, HALFWAY_EVEN)?;
        sites / 2 - 1
    } else {
        1
    };
    make_model(
        sites,
        0.0,
        vec![BlockSpec::x(1.0, mediators), BlockSpec::y(-lambda, 0)],
    )
}

const HALFWAY_EVEN: &str = "the halfway interaction needs an even number of sites";

fn require_even(sites: usize, reason: &'static str) -> Result<()> {
    if sites % 2 != 0 {
        return Err(Error::InvalidSize { sites, reason });
    }
    Ok(())
}

fn require_min(sites: usize, min: usize) -> Result<()> {
    if sites < min {
        return Err(Error::InvalidSize {
            sites,
            reason: "this preset needs at least 4 sites",
        });
    }
    Ok(())
}

/// A preset with its parameters, independent of system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// Transverse field only, no interaction blocks.
    FreeSpins { h: f64 },
    Xnmy { n: usize, m: usize, r: f64, h: f64 },
    HalfwayXy { r: f64, h: f64 },
    GhzCluster { g: f64 },
    SptAfm { lambda: f64, halfway: bool },
}

/// Names accepted by [`Preset::from_name`], with their parameters.
pub const PRESET_NAMES: &[(&str, &str)] = &[
    ("free", "h"),
    ("xy", "r h"),
    ("xzy", "r h"),
    ("xny", "n r h"),
    ("xnmy", "n m r h"),
    ("halfway-xy", "r h"),
    ("ghz-cluster", "g"),
    ("spt-afm", "lambda"),
    ("spt-afm-halfway", "lambda"),
];

/// Parameters a preset may be given by name; unset ones default to zero
/// (`r` defaults to one).
#[derive(Debug, Clone, Copy, Default)]
pub struct PresetParams {
    pub r: Option<f64>,
    pub h: Option<f64>,
    pub g: Option<f64>,
    pub lambda: Option<f64>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

impl Preset {
    pub fn from_name(name: &str, p: &PresetParams) -> Result<Self> {
        let r = p.r.unwrap_or(1.0);
        let h = p.h.unwrap_or(0.0);
        let preset = match name {
            "free" => Preset::FreeSpins { h },
            "xy" => Preset::Xnmy { n: 0, m: 0, r, h },
            "xzy" => Preset::Xnmy { n: 1, m: 1, r, h },
            "xny" => {
                let n = p.n.unwrap_or(0);
                Preset::Xnmy { n, m: n, r, h }
            }
            "xnmy" => Preset::Xnmy {
                n: p.n.unwrap_or(0),
                m: p.m.unwrap_or(p.n.unwrap_or(0)),
                r,
                h,
            },
            "halfway-xy" => Preset::HalfwayXy { r, h },
            "ghz-cluster" => Preset::GhzCluster {
                g: p.g.unwrap_or(0.0),
            },
            "spt-afm" => Preset::SptAfm {
                lambda: p.lambda.unwrap_or(0.0),
                halfway: false,
            },
            "spt-afm-halfway" => Preset::SptAfm {
                lambda: p.lambda.unwrap_or(0.0),
                halfway: true,
            },
            _ => return Err(Error::Parse(format!("unknown preset `{name}`"))),
        };
        Ok(preset)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::FreeSpins { .. } => "free",
            Preset::Xnmy { n: 0, m: 0, .. } => "xy",
            Preset::Xnmy { n: 1, m: 1, .. } => "xzy",
            Preset::Xnmy { n, m, .. } if n == m => "xny",
            Preset::Xnmy { .. } => "xnmy",
            Preset::HalfwayXy { .. } => "halfway-xy",
            Preset::GhzCluster { .. } => "ghz-cluster",
            Preset::SptAfm { halfway: false, .. } => "spt-afm",
            Preset::SptAfm { halfway: true, .. } => "spt-afm-halfway",
        }
    }

    pub fn build(&self, sites: usize) -> Result<ModelSpec> {
        match *self {
            Preset::FreeSpins { h } => make_model(sites, h, vec![]),
            Preset::Xnmy { n, m, r, h } => preset_xnmy(n, m, r, h, sites),
            Preset::HalfwayXy { r, h } => preset_halfway_xy(r, h, sites),
            Preset::GhzCluster { g } => preset_ghz_cluster(g, sites),
            Preset::SptAfm { lambda, halfway } => preset_spt_afm(lambda, sites, halfway),
        }
    }

    /// Real-valued parameters that can be swept.
    pub fn sweepable(&self) -> &'static [&'static str] {
        match self {
            Preset::FreeSpins { .. } => &["h"],
            Preset::Xnmy { .. } | Preset::HalfwayXy { .. } => &["r", "h"],
            Preset::GhzCluster { .. } => &["g"],
            Preset::SptAfm { .. } => &["lambda"],
        }
    }

    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut out = *self;
        let slot = match (&mut out, name) {
            (Preset::FreeSpins { h }, "h") => h,
            (Preset::Xnmy { r, .. }, "r") | (Preset::HalfwayXy { r, .. }, "r") => r,
            (Preset::Xnmy { h, .. }, "h") | (Preset::HalfwayXy { h, .. }, "h") => h,
            (Preset::GhzCluster { g }, "g") => g,
            (Preset::SptAfm { lambda, .. }, "lambda") => lambda,
            _ => {
                return Err(Error::Parse(format!(
                    "preset `{}` has no sweepable parameter `{name}`",
                    self.name()
                )))
            }
        };
        *slot = value;
        Ok(out)
    }

    /// Whether block mediator counts are fixed independent of ring size.
    /// Halfway presets fail this.
    pub fn size_independent(&self) -> bool {
        !matches!(
            self,
            Preset::HalfwayXy { .. } | Preset::SptAfm { halfway: true, .. }
        )
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::FreeSpins { h } => write!(f, "free(h={h})"),
            Preset::Xnmy { n, m, r, h } => write!(f, "{}(n={n},m={m},r={r},h={h})", self.name()),
            Preset::HalfwayXy { r, h } => write!(f, "halfway-xy(r={r},h={h})"),
            Preset::GhzCluster { g } => write!(f, "ghz-cluster(g={g})"),
            Preset::SptAfm { lambda, .. } => write!(f, "{}(lambda={lambda})", self.name()),
        }
    }
}
