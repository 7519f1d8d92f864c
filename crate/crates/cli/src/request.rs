//! Resolution of command-line flags into models, sizes and sweep grids.

use std::path::PathBuf;

use clap::Args;
use clusterxy::preset::{Preset, PresetParams};
use clusterxy::scan::sweep_points;
use clusterxy::{Error, ModelSpec, Result};

use crate::table::Format;

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Preset name (see `presets`).
    #[arg(long, conflicts_with = "model_file", required_unless_present = "model_file")]
    pub model: Option<String>,
    /// JSON model definition: {"sites", "field", "blocks": [{"kind", "strength", "mediators"}]}.
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Use the half-ring variant of `xy` or `spt-afm`.
    #[arg(long)]
    pub halfway: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Comma-separated ring sizes; a model file supplies its own by default.
    #[arg(long, value_delimiter = ',')]
    pub sites: Vec<usize>,
    /// `param:start:stop:step`, endpoints inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Option<String>,
    /// Comma-separated quantities; each verb accepts its own subset.
    #[arg(long, value_delimiter = ',')]
    pub quantities: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads for sweep points.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub enum ModelSource {
    Preset(Preset),
    File { path: PathBuf, spec: ModelSpec },
}

impl ModelSource {
    pub fn from_args(args: &ModelArgs) -> anyhow::Result<Self> {
        if let Some(path) = &args.model_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Ok(ModelSource::File {
                path: path.clone(),
                spec: ModelSpec::from_json(&text)?,
            });
        }
        let name = args.model.as_deref().expect("clap requires a model");
        let name = match (name, args.halfway) {
            (_, false) => name,
            ("xy", true) => "halfway-xy",
            ("spt-afm", true) => "spt-afm-halfway",
            (other, true) => {
                return Err(Error::Parse(format!("preset `{other}` has no halfway variant")).into())
            }
        };
        let params = PresetParams {
            r: args.r,
            h: args.h,
            g: args.g,
            lambda: args.lambda,
            n: args.n,
            m: args.m,
        };
        Ok(ModelSource::Preset(Preset::from_name(name, &params)?))
    }

    pub fn describe(&self) -> String {
        match self {
            ModelSource::Preset(p) => p.to_string(),
            ModelSource::File { path, spec } => format!("file {} {}", path.display(), spec.to_json()),
        }
    }

    /// Parameters a sweep may vary; a model file only exposes its field.
    pub fn sweepable(&self) -> &'static [&'static str] {
        match self {
            ModelSource::Preset(p) => p.sweepable(),
            ModelSource::File { .. } => &["h"],
        }
    }

    pub fn default_sites(&self) -> Option<usize> {
        match self {
            ModelSource::Preset(_) => None,
            ModelSource::File { spec, .. } => Some(spec.sites()),
        }
    }

    /// The model at one sweep value, with a label naming every parameter.
    pub fn resolve(&self, param: Option<(&str, f64)>, sites: usize) -> Result<(ModelSpec, String)> {
        match self {
            ModelSource::Preset(p) => {
                let p = match param {
                    Some((name, value)) => p.with_param(name, value)?,
                    None => *p,
                };
                Ok((p.build(sites)?, p.to_string()))
            }
            ModelSource::File { path, spec } => {
                let mut spec = spec.with_sites(sites)?;
                if let Some((_, value)) = param {
                    spec = spec.with_field(value)?;
                }
                Ok((spec, format!("file:{}", path.display())))
            }
        }
    }

    pub fn preset(&self) -> Option<Preset> {
        match self {
            ModelSource::Preset(p) => Some(*p),
            ModelSource::File { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: String,
    pub text: String,
    pub points: Vec<f64>,
}

pub fn parse_sweep(text: &str, allowed: &[&str]) -> Result<Sweep> {
    let parts: Vec<&str> = text.split(':').collect();
    let [param, start, stop, step] = parts[..] else {
        return Err(Error::Parse(format!("sweep `{text}` is not param:start:stop:step")));
    };
    if !allowed.contains(&param) {
        return Err(Error::Parse(format!(
            "cannot sweep `{param}`; choose one of {}",
            allowed.join(", ")
        )));
    }
    let number = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("sweep bound `{s}` is not a number")))
    };
    Ok(Sweep {
        param: param.to_owned(),
        text: text.to_owned(),
        points: sweep_points(number(start)?, number(stop)?, number(step)?)?,
    })
}

/// Everything a scan verb needs, validated.
#[derive(Debug, Clone)]
pub struct Request {
    pub verb: &'static str,
    pub source: ModelSource,
    pub sites: Vec<usize>,
    pub sweep: Option<Sweep>,
    pub quantities: Vec<String>,
}

impl Request {
    pub fn new(
        verb: &'static str,
        args: &ScanArgs,
        allowed_quantities: &[&str],
        default_quantities: &[&str],
    ) -> anyhow::Result<Self> {
        let source = ModelSource::from_args(&args.model)?;
        let sites = if args.sites.is_empty() {
            vec![source.default_sites().unwrap_or(8)]
        } else {
            args.sites.clone()
        };
        let sweep = args
            .sweep
            .as_deref()
            .map(|s| parse_sweep(s, source.sweepable()))
            .transpose()?;
        let quantities = if args.quantities.is_empty() {
            default_quantities.iter().map(|q| q.to_string()).collect()
        } else {
            args.quantities.clone()
        };
        if let Some(bad) = quantities.iter().find(|q| !allowed_quantities.contains(&q.as_str())) {
            return Err(Error::Parse(format!(
                "`{verb}` does not compute `{bad}`; choose from {}",
                allowed_quantities.join(", ")
            ))
            .into());
        }
        Ok(Request {
            verb,
            source,
            sites,
            sweep,
            quantities,
        })
    }

    pub fn wants(&self, quantity: &str) -> bool {
        self.quantities.iter().any(|q| q == quantity)
    }

    /// Sweep values, or a single unswept point.
    pub fn points(&self) -> Vec<Option<(&str, f64)>> {
        match &self.sweep {
            Some(s) => s.points.iter().map(|&v| Some((s.param.as_str(), v))).collect(),
            None => vec![None],
        }
    }

    pub fn param_column(&self) -> &str {
        self.sweep.as_ref().map_or("value", |s| s.param.as_str())
    }

    pub fn meta(&self) -> Vec<(String, String)> {
        let sites: Vec<String> = self.sites.iter().map(|s| s.to_string()).collect();
        vec![
            ("clusterxy".into(), self.verb.into()),
            ("model".into(), self.source.describe()),
            ("sites".into(), sites.join(",")),
            (
                "sweep".into(),
                self.sweep.as_ref().map_or("none".into(), |s| s.text.clone()),
            ),
            ("quantities".into(), self.quantities.join(",")),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s = parse_sweep("h:-1:1:0.5", &["h"]).unwrap();
        assert_eq!(s.points, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(parse_sweep("g:0:1:0.1", &["h"]).is_err());
        assert!(parse_sweep("h:1:0:0.1", &["h"]).is_err());
        assert!(parse_sweep("h:0:1", &["h"]).is_err());
        assert!(parse_sweep("h:0:1:-0.1", &["h"]).is_err());
    }
}
