//! The verbs. Each returns a finished table and how the run ended.

use anyhow::Context;
use clusterxy::entanglement::{maximize_nested, maximize_site, thermo_block_density, EntanglementResult};
use clusterxy::freefermion::{ground_and_gap, sector_dimension, sector_states, theta_of_momentum, SectorLabel};
use clusterxy::preset::{Preset, PresetParams, PRESET_NAMES};
use clusterxy::scan::scan_derivative;
use clusterxy::validate::{default_sweeps, run_check, CheckOptions, CheckSweep};
use clusterxy::{Error, ModelSpec};
use rayon::prelude::*;

use crate::request::{parse_sweep, ModelSource, Request};
use crate::table::{Cell, Table};

/// Non-error endings that still change the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    NumericalFailure,
    CheckFailed,
}

type Point<'a> = (usize, Option<(&'a str, f64)>);

/// Evaluates `f` on every (sites, sweep value) pair on `jobs` threads,
/// returning results grouped by size and in sweep order.
fn evaluate<'a, T: Send>(
    request: &'a Request,
    jobs: usize,
    f: impl Fn(Point<'a>) -> anyhow::Result<T> + Sync,
) -> anyhow::Result<Vec<T>> {
    let tasks: Vec<Point<'a>> = request
        .sites
        .iter()
        .flat_map(|&n| request.points().into_iter().map(move |p| (n, p)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("starting worker threads")?;
    pool.install(|| tasks.into_par_iter().map(&f).collect())
}

fn prefix(point: Point, spec: &ModelSpec, label: &str) -> Vec<Cell> {
    vec![
        point.1.map_or(Cell::Empty, |(_, v)| Cell::Float(v)),
        label.into(),
        spec.field().into(),
        spec.blocks_label().into(),
        point.0.into(),
    ]
}

fn columns<'a>(request: &'a Request, rest: &[&'a str]) -> Vec<&'a str> {
    let mut cols = vec![request.param_column(), "model", "field", "blocks", "sites"];
    cols.extend_from_slice(rest);
    cols
}

pub fn spectrum(request: &Request, levels: usize, jobs: usize) -> anyhow::Result<(Table, Outcome)> {
    let mut table = Table::new(
        request.meta(),
        &columns(request, &["sector", "level", "energy", "occupation_size"]),
    );
    let blocks = evaluate(request, jobs, |point| {
        let (spec, label) = request.source.resolve(point.1, point.0)?;
        let count = (levels as u128).min(sector_dimension(spec.sites())) as usize;
        let mut rows = Vec::new();
        for sector in SectorLabel::BOTH {
            for (i, level) in sector_states(&spec, sector, count)?.into_iter().enumerate() {
                let mut row = prefix(point, &spec, &label);
                row.extend([
                    sector.to_string().into(),
                    i.into(),
                    level.energy.into(),
                    level.occupation.len().into(),
                ]);
                rows.push(row);
            }
        }
        Ok(rows)
    })?;
    blocks.into_iter().flatten().for_each(|r| table.push(r));
    Ok((table, Outcome::Success))
}

pub fn gap_scan(request: &Request, jobs: usize) -> anyhow::Result<(Table, Outcome)> {
    let mut table = Table::new(
        request.meta(),
        &columns(
            request,
            &["ground_energy", "first_excited", "gap", "ground_sector", "even_vacuum", "degenerate"],
        ),
    );
    let rows = evaluate(request, jobs, |point| {
        let (spec, label) = request.source.resolve(point.1, point.0)?;
        let report = ground_and_gap(&spec);
        let mut row = prefix(point, &spec, &label);
        row.extend([
            report.ground_energy.into(),
            report.first_excited.into(),
            report.gap.into(),
            report.ground_sector.to_string().into(),
            report.even_vacuum.into(),
            report.degenerate.into(),
        ]);
        Ok(row)
    })?;
    rows.into_iter().for_each(|r| table.push(r));
    Ok((table, Outcome::Success))
}

const KINDS: [(&str, &str); 3] = [("ent_site", "site"), ("ent_af", "af"), ("ent_block", "block")];

pub fn ent_scan(request: &Request, jobs: usize) -> anyhow::Result<(Table, Outcome)> {
    if let Some(&odd) = request.sites.iter().find(|&&n| n % 2 != 0) {
        return Err(Error::OddSites {
            operation: "ent-scan",
            sites: odd,
        }
        .into());
    }
    let derivative = request.wants("derivative");
    let points = request.points().len();
    if derivative && points < 3 {
        return Err(Error::Parse("derivative needs a sweep of at least three points".into()).into());
    }
    let kinds: Vec<&str> = KINDS
        .iter()
        .filter(|(q, _)| request.wants(q))
        .map(|(_, k)| *k)
        .collect();
    if kinds.is_empty() {
        return Err(Error::Parse("ent-scan needs at least one of ent_site, ent_af, ent_block".into()).into());
    }
    let mut names: Vec<String> = kinds.iter().map(|k| format!("density_{k}")).collect();
    if derivative {
        names.extend(kinds.iter().map(|k| format!("d_density_{k}")));
    }
    let mut cols = columns(request, &["even_vacuum", "degenerate"]);
    cols.extend(names.iter().map(String::as_str));
    let mut table = Table::new(request.meta(), &cols);

    let site_only = kinds == ["site"];
    let results = evaluate(request, jobs, |point| {
        let (spec, label) = request.source.resolve(point.1, point.0)?;
        let row = prefix(point, &spec, &label);
        let found: Result<Vec<EntanglementResult>, Error> = if site_only {
            maximize_site(&spec).map(|s| vec![s])
        } else {
            maximize_nested(&spec).map(|n| {
                let mut out = Vec::new();
                for k in &kinds {
                    out.push(match *k {
                        "site" => n.site.clone(),
                        "af" => n.af.clone(),
                        _ => n.block.clone(),
                    });
                }
                out
            })
        };
        match found {
            Ok(results) => {
                let degenerate = results.iter().any(|r| r.degenerate);
                let densities: Vec<f64> = results.iter().map(|r| r.density).collect();
                Ok((row, true, degenerate, densities))
            }
            Err(Error::NotEvenVacuum) => Ok((row, false, false, vec![f64::NAN; kinds.len()])),
            Err(e) => Err(e.into()),
        }
    })?;

    for group in results.chunks(points) {
        let slopes: Vec<Vec<f64>> = if derivative {
            let xs = &request.sweep.as_ref().expect("derivative implies a sweep").points;
            (0..kinds.len())
                .map(|k| {
                    let ys: Vec<f64> = group.iter().map(|r| r.3[k]).collect();
                    scan_derivative(xs, &ys)
                })
                .collect::<Result<_, _>>()?
        } else {
            Vec::new()
        };
        for (i, (prefix, even, degenerate, densities)) in group.iter().enumerate() {
            let mut row = prefix.clone();
            row.push((*even).into());
            row.push((*degenerate).into());
            // flagged points carry NaN, which renders as an empty cell
            row.extend(densities.iter().map(|&d| Cell::Float(d)));
            row.extend(slopes.iter().map(|s| Cell::Float(s[i])));
            table.push(row);
        }
    }
    Ok((table, Outcome::Success))
}

pub fn thermo(request: &Request, jobs: usize) -> anyhow::Result<(Table, Outcome)> {
    if let Some(p) = request.source.preset() {
        if !p.size_independent() {
            return Err(Error::Parse(format!(
                "`{}` has no size-independent dispersion for the thermodynamic limit",
                p.name()
            ))
            .into());
        }
    }
    let mut cols = vec![request.param_column(), "model", "field", "blocks"];
    cols.extend(["density", "a", "b", "c", "d", "status"]);
    let mut table = Table::new(request.meta(), &cols);
    // one reference size only fixes the block list
    let reference = Request {
        sites: request.sites[..1].to_vec(),
        ..request.clone()
    };
    let rows = evaluate(&reference, jobs, |point| {
        let (spec, label) = request.source.resolve(point.1, point.0)?;
        let mut row = prefix(point, &spec, &label);
        row.truncate(4);
        match thermo_block_density(theta_of_momentum(&spec)) {
            Ok(t) => {
                row.push(t.density.into());
                row.extend(t.optimum.amplitudes().map(Cell::Float));
                row.push("ok".into());
                Ok((row, false))
            }
            Err(e @ Error::Quadrature { .. }) => {
                row.extend(std::iter::repeat_n(Cell::Empty, 5));
                row.push(format!("quadrature_failed: {e}").into());
                Ok((row, true))
            }
            Err(e) => Err(e.into()),
        }
    })?;
    let mut failed = false;
    for (row, f) in rows {
        failed |= f;
        table.push(row);
    }
    let outcome = if failed {
        Outcome::NumericalFailure
    } else {
        Outcome::Success
    };
    Ok((table, outcome))
}

pub struct CheckRequest {
    pub source: Option<ModelSource>,
    pub sweep: Option<String>,
    pub sites: usize,
    pub points: usize,
    pub corrupt_theta_sign: bool,
}

pub fn check(req: &CheckRequest) -> anyhow::Result<(Table, Outcome)> {
    let sweeps = match &req.source {
        None => default_sweeps(),
        Some(ModelSource::File { .. }) => {
            return Err(Error::Parse("check runs on presets only".into()).into())
        }
        Some(ModelSource::Preset(preset)) => vec![check_sweep(*preset, req.sweep.as_deref())?],
    };
    let points = match &req.sweep {
        Some(text) if req.source.is_some() => {
            let allowed = req.source.as_ref().unwrap().sweepable();
            parse_sweep(text, allowed)?.points.len()
        }
        _ => req.points,
    };
    let options = CheckOptions {
        sites: req.sites,
        points,
        corrupt_theta_sign: req.corrupt_theta_sign,
        ..CheckOptions::default()
    };
    let rows = run_check(&sweeps, &options)?;
    let mut meta = vec![
        ("clusterxy".to_string(), "check".to_string()),
        ("sites".to_string(), req.sites.to_string()),
        ("points".to_string(), points.to_string()),
    ];
    for s in &sweeps {
        meta.push(("sweep".into(), format!("{} {}:{}:{}", s.preset, s.param, s.start, s.stop)));
    }
    let mut table = Table::new(
        meta,
        &["preset", "sites", "param", "value", "check", "deviation", "tolerance", "passed"],
    );
    let mut failed = false;
    for r in rows {
        failed |= !r.passed;
        table.push(vec![
            r.preset.into(),
            r.sites.into(),
            r.param.into(),
            r.value.into(),
            r.check.label().into(),
            r.deviation.into(),
            r.tolerance.into(),
            r.passed.into(),
        ]);
    }
    let outcome = if failed {
        Outcome::CheckFailed
    } else {
        Outcome::Success
    };
    Ok((table, outcome))
}

/// The sweep for one preset: the given range, or the default one for its family.
fn check_sweep(preset: Preset, sweep: Option<&str>) -> anyhow::Result<CheckSweep> {
    match sweep {
        Some(text) => {
            let parsed = parse_sweep(text, preset.sweepable())?;
            let param = preset
                .sweepable()
                .iter()
                .find(|p| **p == parsed.param)
                .expect("parse_sweep accepted the parameter");
            Ok(CheckSweep {
                preset,
                param,
                start: parsed.points[0],
                stop: *parsed.points.last().unwrap(),
            })
        }
        None => default_sweeps()
            .into_iter()
            .find(|s| s.preset.name() == preset.name())
            .map(|s| CheckSweep { preset, ..s })
            .ok_or_else(|| Error::Parse(format!("no default sweep for `{}`; pass --sweep", preset.name())).into()),
    }
}

pub fn presets() -> Table {
    let mut table = Table::new(
        vec![("clusterxy".into(), "presets".into())],
        &["name", "parameters", "sweepable"],
    );
    for (name, params) in PRESET_NAMES {
        let preset = Preset::from_name(name, &PresetParams::default()).expect("listed presets exist");
        table.push(vec![
            (*name).into(),
            (*params).into(),
            preset.sweepable().join(" ").into(),
        ]);
    }
    table
}
