//! Printed-versus-computed discrepancy report.

use std::fmt;

use crate::channel::{channel, dilate, project_region, AccelerationPair, Region, RegionSelector};
use crate::closed_form::{closed_form_region, flagged_entries, printed_region, to_library_index};
use crate::error::Result;
use crate::linalg::max_abs_diff;
use crate::measures::{concurrence, overlap_fidelity};
use crate::printed::{self, COMPONENT_NAMES};
use crate::random::StateSampler;
use crate::states::{bloch_to_density, density_to_bloch, make_state, StateFamily};

use super::config::Axis;

/// Deviations at or below this count as agreement.
pub const AGREEMENT_TOL: f64 = 1e-12;

/// Entries of the element-wise expansion known to be misprinted (1-based).
pub const FLAGGED_EXPANSION_ENTRIES: [(usize, usize); 4] = [(1, 2), (2, 1), (2, 2), (4, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportConfig {
    /// Points per acceleration axis.
    pub grid: usize,
    /// Random states (or family parameters) per grid point.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self { grid: 16, samples: 100, seed: 7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Agrees,
    /// Deviates, and the deviation is on record.
    Flagged,
    /// Disagrees with the record: either an unflagged deviation or a flagged item that agrees.
    Unexpected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportLine {
    pub label: String,
    pub max_deviation: f64,
    pub flagged: bool,
}

impl ReportLine {
    pub fn status(&self) -> Status {
        match (self.flagged, self.max_deviation > AGREEMENT_TOL) {
            (false, false) => Status::Agrees,
            (true, true) => Status::Flagged,
            _ => Status::Unexpected,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub config: ReportConfig,
    pub sections: Vec<Section>,
}

impl DiscrepancyReport {
    pub fn line(&self, section: &str, label: &str) -> Option<&ReportLine> {
        self.sections
            .iter()
            .filter(|s| s.title.starts_with(section))
            .flat_map(|s| &s.lines)
            .find(|l| l.label == label)
    }

    pub fn unexpected(&self) -> Vec<&ReportLine> {
        self.sections
            .iter()
            .flat_map(|s| &s.lines)
            .filter(|l| l.status() == Status::Unexpected)
            .collect()
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "discrepancy report: {0}x{0} acceleration grid, {1} samples per point, seed {2}",
            self.config.grid, self.config.samples, self.config.seed
        )?;
        writeln!(f, "agreement threshold {AGREEMENT_TOL:e}")?;
        for s in &self.sections {
            writeln!(f, "\n== {}", s.title)?;
            for l in &s.lines {
                let status = match l.status() {
                    Status::Agrees => "ok",
                    Status::Flagged => "FLAGGED",
                    Status::Unexpected => "UNEXPECTED",
                };
                writeln!(f, "  {:<28} {:>12.3e}  {}", l.label, l.max_deviation, status)?;
            }
        }
        let n = self.unexpected().len();
        write!(f, "\n{n} unexpected result{}", if n == 1 { "" } else { "s" })
    }
}

struct Tracker {
    labels: Vec<(String, bool)>,
    max: Vec<f64>,
}

impl Tracker {
    fn new(labels: Vec<(String, bool)>) -> Self {
        let n = labels.len();
        Self { labels, max: vec![0.0; n] }
    }

    fn record(&mut self, i: usize, dev: f64) {
        // NaN must not hide
        if !(dev <= self.max[i]) {
            self.max[i] = dev;
        }
    }

    fn into_section(self, title: impl Into<String>) -> Section {
        let lines = self
            .labels
            .into_iter()
            .zip(self.max)
            .map(|((label, flagged), max_deviation)| ReportLine { label, max_deviation, flagged })
            .collect();
        Section { title: title.into(), lines }
    }
}

fn acceleration_grid(n: usize) -> Result<Vec<AccelerationPair>> {
    let r = Axis::acceleration(n)?.points();
    r.iter()
        .flat_map(|&a| r.iter().map(move |&b| (a, b)))
        .map(|(a, b)| AccelerationPair::new(a, b))
        .collect()
}

fn region_sections(cfg: &ReportConfig, grid: &[AccelerationPair]) -> Result<Vec<Section>> {
    let mut sampler = StateSampler::new(cfg.seed);
    let states: Vec<_> = (0..cfg.samples).map(|_| sampler.mixed_state()).collect();
    let mut sections = Vec::new();
    for sel in RegionSelector::ALL {
        let flagged = flagged_entries(sel);
        let mut labels = Vec::new();
        for i in 1..=4 {
            for j in 1..=4 {
                labels.push((format!("printed ({i},{j})"), flagged.contains(&(i, j))));
            }
        }
        labels.push(("corrected matrix".into(), false));
        let traced = sel == RegionSelector::I_I;
        if traced {
            labels.push(("printed trace - 1".into(), true));
        }
        let mut t = Tracker::new(labels);
        for acc in grid {
            for rho in &states {
                let canonical = channel(rho, *acc, sel)?;
                let printed = printed_region(rho, *acc, sel)?;
                for i in 1..=4 {
                    for j in 1..=4 {
                        let (li, lj) = (to_library_index(sel, i) - 1, to_library_index(sel, j) - 1);
                        let dev = (printed.entry(li, lj) - canonical.entry(li, lj)).norm();
                        t.record(4 * (i - 1) + (j - 1), dev);
                    }
                }
                let closed = closed_form_region(rho, *acc, sel)?;
                t.record(16, max_abs_diff(closed.matrix.matrix(), canonical.matrix()));
                if traced {
                    t.record(17, (printed.trace() - 1.0).norm());
                }
            }
        }
        sections.push(t.into_section(format!("region {sel} closed form (published layout)")));
    }
    Ok(sections)
}

fn coefficient_sections(cfg: &ReportConfig, grid: &[AccelerationPair]) -> Result<Vec<Section>> {
    let mut sampler = StateSampler::new(cfg.seed ^ 0x9e37);
    let draws = cfg.samples.max(1);
    let mut family_sets: Vec<(&str, Vec<StateFamily>)> = vec![("singlet", vec![StateFamily::singlet()])];
    family_sets.push(("werner", (0..draws).map(|_| StateFamily::Werner { x: sampler.uniform(-1.0 / 3.0, 1.0) }).collect()));
    family_sets.push((
        "gwerner",
        (0..draws)
            .map(|_| {
                let b = sampler.self_transposed();
                StateFamily::GeneralizedWerner { cxx: b.c[(0, 0)], cyy: b.c[(1, 1)], czz: b.c[(2, 2)] }
            })
            .collect(),
    ));
    family_sets.push(("pure", (0..draws).map(|_| StateFamily::GenericPure { p: sampler.uniform(0.0, 1.0) }).collect()));

    let mut sections = Vec::new();
    for (label, families) in family_sets {
        for region in [Region::I, Region::II] {
            let sel = RegionSelector::new(region, region);
            let flagged = printed::flagged_coefficients(label, region);
            let mut dev = [0.0f64; 15];
            let mut magnitude = [0.0f64; 15];
            for family in &families {
                let rho = make_state(family)?;
                for acc in grid {
                    let actual = printed::components(&density_to_bloch(&project_region(&dilate(&rho, *acc)?, sel)?)?);
                    let (_, form) = printed::printed_coefficients(family, *acc, region).expect("family has a printed form");
                    let printed = printed::components(&form);
                    for k in 0..15 {
                        let d = (actual[k] - printed[k]).abs();
                        if !(d <= dev[k]) {
                            dev[k] = d;
                        }
                        magnitude[k] = magnitude[k].max(actual[k].abs()).max(printed[k].abs());
                    }
                }
            }
            // components that vanish on both sides carry no information
            let lines = (0..15)
                .filter(|&k| magnitude[k] > 0.0 || !(dev[k] <= 0.0))
                .map(|k| ReportLine {
                    label: COMPONENT_NAMES[k].to_string(),
                    max_deviation: dev[k],
                    flagged: flagged.contains(&COMPONENT_NAMES[k]),
                })
                .collect();
            let region_name = if region == Region::I { "I-I" } else { "II-II" };
            sections.push(Section { title: format!("{label} coefficients, region {region_name}"), lines });
        }
    }
    Ok(sections)
}

fn fidelity_section(cfg: &ReportConfig, grid: &[AccelerationPair]) -> Result<Section> {
    let mut sampler = StateSampler::new(cfg.seed ^ 0x51f1);
    let mut t = Tracker::new(vec![
        ("self-transposed F I-I".into(), true),
        ("self-transposed F II-II".into(), true),
        ("pure F I-I, printed".into(), true),
        ("pure F II-II, printed".into(), true),
        ("pure F I-I, corrected".into(), false),
        ("pure F II-II, corrected".into(), false),
    ]);
    for _ in 0..cfg.samples.max(1) {
        let b = sampler.self_transposed();
        let st = bloch_to_density(&b)?;
        let p = sampler.uniform(0.0, 1.0);
        let pure = make_state(&StateFamily::GenericPure { p })?;
        for acc in grid {
            for (k, region) in [Region::I, Region::II].into_iter().enumerate() {
                let sel = RegionSelector::new(region, region);
                let f_st = overlap_fidelity(&channel(&st, *acc, sel)?, &st)?;
                t.record(k, (printed::printed_self_transposed_fidelity(&b, *acc, region)? - f_st).abs());
                let f_p = overlap_fidelity(&channel(&pure, *acc, sel)?, &pure)?;
                t.record(2 + k, (printed::printed_pure_fidelity(p, *acc, region) - f_p).abs());
                t.record(4 + k, (printed::pure_fidelity(p, *acc, region) - f_p).abs());
            }
        }
    }
    Ok(t.into_section("fidelity closed forms"))
}

fn expansion_section(cfg: &ReportConfig) -> Result<Section> {
    let mut sampler = StateSampler::new(cfg.seed ^ 0xe2);
    let mut labels = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            labels.push((format!("entry ({i},{j})"), FLAGGED_EXPANSION_ENTRIES.contains(&(i, j))));
        }
    }
    let mut t = Tracker::new(labels);
    for _ in 0..cfg.samples.max(1) * 10 {
        let rho = sampler.mixed_state();
        let printed = printed::printed_density_entries(&density_to_bloch(&rho)?);
        for i in 0..4 {
            for j in 0..4 {
                t.record(4 * i + j, (printed[(i, j)] - rho.entry(i, j)).norm());
            }
        }
    }
    Ok(t.into_section("Bloch-to-matrix element expansion"))
}

fn concurrence_section(cfg: &ReportConfig) -> Result<Section> {
    let mut t = Tracker::new(vec![
        ("without square roots, singlet".into(), false),
        ("without square roots, Werner 0.6".into(), true),
        ("without square roots, random".into(), true),
    ]);
    let singlet = make_state(&StateFamily::singlet())?;
    t.record(0, (printed::literal_wootters(&singlet)? - concurrence(&singlet)?).abs());
    let werner = make_state(&StateFamily::Werner { x: 0.6 })?;
    t.record(1, (printed::literal_wootters(&werner)? - concurrence(&werner)?).abs());
    let mut sampler = StateSampler::new(cfg.seed ^ 0xc0);
    for _ in 0..cfg.samples.max(1) {
        let rho = sampler.mixed_state();
        t.record(2, (printed::literal_wootters(&rho)? - concurrence(&rho)?).abs());
    }
    Ok(t.into_section("concurrence definition"))
}

/// Measures every printed closed form against the canonical computation.
pub fn discrepancy_report(cfg: ReportConfig) -> Result<DiscrepancyReport> {
    let grid = acceleration_grid(cfg.grid)?;
    let mut sections = region_sections(&cfg, &grid)?;
    sections.extend(coefficient_sections(&cfg, &grid)?);
    sections.push(fidelity_section(&cfg, &grid)?);
    sections.push(expansion_section(&cfg)?);
    sections.push(concurrence_section(&cfg)?);
    Ok(DiscrepancyReport { config: cfg, sections })
}
