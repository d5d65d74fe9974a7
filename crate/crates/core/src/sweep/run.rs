//! Grid evaluation.

use rayon::prelude::*;

use crate::channel::{dilate, project_region, AccelerationPair, RegionSelector};
use crate::error::{Error, Result};
use crate::measures::{concurrence, overlap_fidelity, purity, separability_verdict, teleportation_criterion, Measure, Verdict};
use crate::states::{make_state, DensityMatrix, StateFamily};

use super::config::{AccMode, Axis, Observer, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Verdict(Verdict),
}

impl Value {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Verdict(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub r_a: f64,
    pub r_b: f64,
    /// Family parameters in [`SweepTable::param_names`] order.
    pub params: Vec<f64>,
    pub region: RegionSelector,
    /// One entry per [`SweepTable::measures`].
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweptAxis {
    pub name: &'static str,
    pub points: Vec<f64>,
}

/// Rows in axis order: family parameter, then r_a, then r_b, region innermost.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub param_names: Vec<&'static str>,
    pub measures: Vec<Measure>,
    pub regions: Vec<RegionSelector>,
    /// Swept axes, outermost first.
    pub axes: Vec<SweptAxis>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn measure_index(&self, m: Measure) -> Option<usize> {
        self.measures.iter().position(|x| *x == m)
    }
}

struct Point {
    family: StateFamily,
    r_a: f64,
    r_b: f64,
}

fn acceleration_points(mode: AccMode, steps: usize) -> Result<(Vec<SweptAxis>, Vec<(f64, f64)>)> {
    let r = Axis::acceleration(steps)?.points();
    let pairs: Vec<(f64, f64)> = match mode {
        AccMode::Independent => {
            let pairs = r.iter().flat_map(|&a| r.iter().map(move |&b| (a, b))).collect();
            let axes = vec![
                SweptAxis { name: "r_a", points: r.clone() },
                SweptAxis { name: "r_b", points: r },
            ];
            return Ok((axes, pairs));
        }
        AccMode::Locked => r.iter().map(|&v| (v, v)).collect(),
        AccMode::OneStationary(Observer::Alice) => r.iter().map(|&v| (0.0, v)).collect(),
        AccMode::OneStationary(Observer::Rob) => r.iter().map(|&v| (v, 0.0)).collect(),
    };
    Ok((vec![SweptAxis { name: "r", points: r }], pairs))
}

fn evaluate(measure: Measure, out: &DensityMatrix, initial: &DensityMatrix) -> Result<Value> {
    Ok(match measure {
        Measure::Concurrence => Value::Real(concurrence(out)?),
        Measure::Fidelity => Value::Real(overlap_fidelity(out, initial)?),
        Measure::Telp => Value::Real(teleportation_criterion(out)?),
        Measure::Purity => Value::Real(purity(out)),
        Measure::Separability => Value::Verdict(separability_verdict(out)?),
    })
}

fn run_point(cfg: &SweepConfig, point: &Point) -> Result<Vec<SweepRow>> {
    let initial = make_state(&point.family)?;
    let acc = AccelerationPair::new(point.r_a, point.r_b)?;
    let dilated = dilate(&initial, acc)?;
    let params = point.family.param_values();
    cfg.regions
        .iter()
        .map(|&region| {
            let out = project_region(&dilated, region)?;
            let values = cfg
                .measures
                .iter()
                .map(|&m| evaluate(m, &out, &initial))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow { r_a: point.r_a, r_b: point.r_b, params: params.clone(), region, values })
        })
        .collect()
}

/// Evaluates every grid point (in parallel) and returns the rows in axis order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let (acc_axes, acc_points) = acceleration_points(cfg.mode, cfg.acc_steps)?;

    let mut axes = Vec::new();
    let families: Vec<StateFamily> = match &cfg.family_axis {
        Some(fa) => {
            let pts = fa.axis.points();
            axes.push(SweptAxis { name: fa.param.name(), points: pts.clone() });
            pts.into_iter().map(|v| fa.param.apply(&cfg.family, v)).collect::<Result<_>>()?
        }
        None => vec![cfg.family],
    };
    axes.extend(acc_axes);

    let points: Vec<Point> = families
        .iter()
        .flat_map(|f| acc_points.iter().map(move |&(r_a, r_b)| Point { family: *f, r_a, r_b }))
        .collect();
    log::info!("sweeping {} grid points x {} regions", points.len(), cfg.regions.len());

    let per_point: Vec<Vec<SweepRow>> = points
        .par_iter()
        .map(|p| {
            run_point(cfg, p).map_err(|e| Error::AtGridPoint {
                point: format!("{} {:?}, r_a={}, r_b={}", p.family.name(), p.family.param_values(), p.r_a, p.r_b),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    Ok(SweepTable {
        param_names: cfg.family.param_names().to_vec(),
        measures: cfg.measures.clone(),
        regions: cfg.regions.clone(),
        axes,
        rows: per_point.into_iter().flatten().collect(),
    })
}
