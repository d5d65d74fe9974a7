//! Sweep configuration: command-line parsing and validation.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, ValueEnum};

use crate::channel::RegionSelector;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::states::{make_state, Sign, StateFamily};

use super::presets;

pub const DEFAULT_GRID: usize = 64;
pub const DEFAULT_MEASURES: [Measure; 4] = [Measure::Concurrence, Measure::Fidelity, Measure::Telp, Measure::Purity];

/// Closed interval sampled at `steps` points, endpoints included exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Config(format!("steps ≥ 2 required, got {steps}")));
        }
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::Config(format!("bad interval [{min}, {max}]")));
        }
        Ok(Self { min, max, steps })
    }

    pub fn acceleration(steps: usize) -> Result<Self> {
        Self::new(0.0, FRAC_PI_4, steps)
    }

    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last as f64)
                }
            })
            .collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `min:max:steps`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(Error::Config(format!("range '{s}' is not min:max:steps")));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| Error::Config(format!("'{v}' in range '{s}' is not a number")));
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("step count '{steps}' in range '{s}' is not an integer")))?;
        Axis::new(num(min)?, num(max)?, steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Observer {
    Alice,
    Rob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccMode {
    /// r_a and r_b swept independently.
    Independent,
    /// r_a = r_b = r.
    Locked,
    /// The named observer stays at r = 0 while the other sweeps.
    OneStationary(Observer),
}

/// Family parameter that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyParam {
    X,
    P,
    Cxx,
    Cyy,
    Czz,
}

impl FamilyParam {
    pub fn name(self) -> &'static str {
        match self {
            FamilyParam::X => "x",
            FamilyParam::P => "p",
            FamilyParam::Cxx => "cxx",
            FamilyParam::Cyy => "cyy",
            FamilyParam::Czz => "czz",
        }
    }

    /// The family with this parameter replaced by `value`.
    pub fn apply(self, family: &StateFamily, value: f64) -> Result<StateFamily> {
        let mut f = *family;
        match (self, &mut f) {
            (FamilyParam::X, StateFamily::Werner { x }) => *x = value,
            (FamilyParam::P, StateFamily::GenericPure { p }) => *p = value,
            (FamilyParam::Cxx, StateFamily::GeneralizedWerner { cxx, .. }) => *cxx = value,
            (FamilyParam::Cyy, StateFamily::GeneralizedWerner { cyy, .. }) => *cyy = value,
            (FamilyParam::Czz, StateFamily::GeneralizedWerner { czz, .. }) => *czz = value,
            _ => {
                return Err(Error::Config(format!(
                    "parameter {} does not belong to family {}",
                    self.name(),
                    family.name()
                )))
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyAxis {
    pub param: FamilyParam,
    pub axis: Axis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Plot,
    Both,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    /// CSV destination (stdout when absent); plot files take its stem.
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Base family; a swept parameter's value here is a placeholder.
    pub family: StateFamily,
    pub family_axis: Option<FamilyAxis>,
    pub acc_steps: usize,
    pub mode: AccMode,
    pub regions: Vec<RegionSelector>,
    pub measures: Vec<Measure>,
    pub output: OutputSpec,
}

impl SweepConfig {
    /// Swept axes, outermost first.
    pub fn axis_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if let Some(fa) = &self.family_axis {
            names.push(fa.param.name());
        }
        match self.mode {
            AccMode::Independent => names.extend(["r_a", "r_b"]),
            _ => names.push("r"),
        }
        names
    }

    /// Checks cross-field invariants; every constructor path ends here.
    pub fn validate(&self) -> Result<()> {
        if self.acc_steps < 2 {
            return Err(Error::Config(format!("--grid: steps ≥ 2 required, got {}", self.acc_steps)));
        }
        if self.axis_names().len() > 2 {
            return Err(Error::Config(
                "at most two swept axes per run: a family range needs --lock-acc or --stationary".into(),
            ));
        }
        if self.regions.is_empty() {
            return Err(Error::Config("no regions selected".into()));
        }
        if self.measures.is_empty() {
            return Err(Error::Config("no measures selected".into()));
        }
        if matches!(self.output.format, OutputFormat::Plot | OutputFormat::Both) && self.output.path.is_none() {
            return Err(Error::Config("--format plot/both needs --out".into()));
        }
        match &self.family_axis {
            // the valid region of each family is convex in any one parameter,
            // so checking the endpoints covers the whole axis
            Some(fa) => {
                for end in [fa.axis.min, fa.axis.max] {
                    let member = fa.param.apply(&self.family, end)?;
                    make_state(&member)
                        .map_err(|e| Error::Config(format!("--{}-range endpoint {end}: {}", fa.param.name(), e.root())))?;
                }
            }
            None => {
                make_state(&self.family).map_err(|e| Error::Config(format!("--family {}: {}", self.family.name(), e.root())))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Bell,
    Werner,
    Gwerner,
    Pure,
}

/// State-family flags shared by `state` and `sweep`.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Werner mixing parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Generic pure state Bloch-vector length.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cxx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cyy: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub czz: Option<f64>,
    /// Bell correlation signs, e.g. `---` for the singlet.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RangeArgs {
    #[arg(long, value_name = "MIN:MAX:STEPS", allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long, value_name = "MIN:MAX:STEPS")]
    pub p_range: Option<String>,
    #[arg(long, value_name = "MIN:MAX:STEPS", allow_hyphen_values = true)]
    pub cxx_range: Option<String>,
    #[arg(long, value_name = "MIN:MAX:STEPS", allow_hyphen_values = true)]
    pub cyy_range: Option<String>,
    #[arg(long, value_name = "MIN:MAX:STEPS", allow_hyphen_values = true)]
    pub czz_range: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Start from a named figure preset; other flags override it.
    #[arg(long)]
    pub preset: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub ranges: RangeArgs,
    /// Region pair, repeatable: I-I, II-II, I-II, II-I.
    #[arg(long = "region")]
    pub regions: Vec<String>,
    /// Points per acceleration axis.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Sweep r_a = r_b = r.
    #[arg(long)]
    pub lock_acc: bool,
    /// Keep this observer inertial and sweep the other.
    #[arg(long, value_enum)]
    pub stationary: Option<Observer>,
    /// Comma-separated subset of concurrence,fidelity,telp,purity,separability.
    #[arg(long)]
    pub measures: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

fn parse_signs(s: &str) -> Result<[Sign; 3]> {
    let signs: Vec<Sign> = s
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            other => Err(Error::Config(format!("--signs: '{other}' is not + or -"))),
        })
        .collect::<Result<_>>()?;
    signs
        .try_into()
        .map_err(|_| Error::Config(format!("--signs '{s}' needs exactly three signs")))
}

/// Flags that were given, with the family each one belongs to.
fn given_params(f: &FamilyArgs, r: &RangeArgs) -> Vec<(&'static str, FamilyName)> {
    let mut given = Vec::new();
    let mut push = |present: bool, flag: &'static str, fam: FamilyName| {
        if present {
            given.push((flag, fam));
        }
    };
    push(f.x.is_some(), "--x", FamilyName::Werner);
    push(r.x_range.is_some(), "--x-range", FamilyName::Werner);
    push(f.p.is_some(), "--p", FamilyName::Pure);
    push(r.p_range.is_some(), "--p-range", FamilyName::Pure);
    push(f.cxx.is_some(), "--cxx", FamilyName::Gwerner);
    push(r.cxx_range.is_some(), "--cxx-range", FamilyName::Gwerner);
    push(f.cyy.is_some(), "--cyy", FamilyName::Gwerner);
    push(r.cyy_range.is_some(), "--cyy-range", FamilyName::Gwerner);
    push(f.czz.is_some(), "--czz", FamilyName::Gwerner);
    push(r.czz_range.is_some(), "--czz-range", FamilyName::Gwerner);
    push(f.signs.is_some(), "--signs", FamilyName::Bell);
    given
}

fn family_label(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Bell => "bell",
        FamilyName::Werner => "werner",
        FamilyName::Gwerner => "gwerner",
        FamilyName::Pure => "pure",
    }
}

/// Resolves family flags (and optional ranges) into a family plus at most one swept parameter.
pub fn resolve_family(f: &FamilyArgs, r: &RangeArgs) -> Result<(StateFamily, Option<FamilyAxis>)> {
    let Some(name) = f.family else {
        return Err(Error::Config("--family is required".into()));
    };
    let given = given_params(f, r);
    if let Some((flag, _)) = given.iter().find(|(_, fam)| *fam != name) {
        return Err(Error::Config(format!(
            "conflicting family parameters: {flag} does not apply to --family {}",
            family_label(name)
        )));
    }

    let ranges = [
        (FamilyParam::X, &r.x_range, f.x),
        (FamilyParam::P, &r.p_range, f.p),
        (FamilyParam::Cxx, &r.cxx_range, f.cxx),
        (FamilyParam::Cyy, &r.cyy_range, f.cyy),
        (FamilyParam::Czz, &r.czz_range, f.czz),
    ];
    let mut family_axis = None;
    for (param, range, scalar) in ranges {
        let Some(text) = range else { continue };
        if scalar.is_some() {
            return Err(Error::Config(format!(
                "conflicting family parameters: --{0} and --{0}-range both given",
                param.name()
            )));
        }
        if family_axis.is_some() {
            return Err(Error::Config("at most one family parameter can be swept".into()));
        }
        let axis: Axis = text
            .parse()
            .map_err(|e: Error| Error::Config(format!("--{}-range: {}", param.name(), e.root())))?;
        family_axis = Some(FamilyAxis { param, axis });
    }

    let swept = |p: FamilyParam| family_axis.map(|fa| fa.param == p).unwrap_or(false);
    let require = |value: Option<f64>, param: FamilyParam| -> Result<f64> {
        match value {
            Some(v) => Ok(v),
            // placeholder, replaced at every grid point
            None if swept(param) => Ok(0.0),
            None => Err(Error::Config(format!("--family {} needs --{}", family_label(name), param.name()))),
        }
    };
    let family = match name {
        FamilyName::Bell => StateFamily::Bell(match &f.signs {
            Some(s) => parse_signs(s)?,
            None => [Sign::Minus; 3],
        }),
        FamilyName::Werner => StateFamily::Werner { x: require(f.x, FamilyParam::X)? },
        FamilyName::Pure => StateFamily::GenericPure { p: require(f.p, FamilyParam::P)? },
        FamilyName::Gwerner => StateFamily::GeneralizedWerner {
            cxx: require(f.cxx, FamilyParam::Cxx)?,
            cyy: require(f.cyy, FamilyParam::Cyy)?,
            czz: require(f.czz, FamilyParam::Czz)?,
        },
    };
    Ok((family, family_axis))
}

pub fn parse_measures(list: &str) -> Result<Vec<Measure>> {
    let mut measures: Vec<Measure> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Measure>().map_err(|e| Error::Config(format!("--measures: {}", e.root()))))
        .collect::<Result<_>>()?;
    measures.sort();
    measures.dedup();
    Ok(measures)
}

fn parse_regions(list: &[String]) -> Result<Vec<RegionSelector>> {
    let mut regions: Vec<RegionSelector> = list
        .iter()
        .map(|s| s.parse::<RegionSelector>().map_err(|e| Error::Config(format!("--region: {}", e.root()))))
        .collect::<Result<_>>()?;
    // canonical order, duplicates dropped
    regions.sort_by_key(|r| RegionSelector::ALL.iter().position(|a| a == r));
    regions.dedup();
    Ok(regions)
}

impl SweepArgs {
    pub fn into_config(self) -> Result<SweepConfig> {
        let mut cfg = match &self.preset {
            Some(name) => {
                let has_family_flags = self.family.family.is_some() || !given_params(&self.family, &self.ranges).is_empty();
                if has_family_flags {
                    return Err(Error::Config("--preset fixes the family; drop the family flags".into()));
                }
                presets::preset(name)?
            }
            None => {
                let (family, family_axis) = resolve_family(&self.family, &self.ranges)?;
                SweepConfig {
                    family,
                    family_axis,
                    acc_steps: DEFAULT_GRID,
                    mode: AccMode::Independent,
                    regions: RegionSelector::ALL.to_vec(),
                    measures: DEFAULT_MEASURES.to_vec(),
                    output: OutputSpec::default(),
                }
            }
        };

        if self.lock_acc && self.stationary.is_some() {
            return Err(Error::Config("--lock-acc and --stationary are mutually exclusive".into()));
        }
        if self.lock_acc {
            cfg.mode = AccMode::Locked;
        }
        if let Some(obs) = self.stationary {
            cfg.mode = AccMode::OneStationary(obs);
        }
        if let Some(n) = self.grid {
            cfg.acc_steps = n;
        }
        if !self.regions.is_empty() {
            cfg.regions = parse_regions(&self.regions)?;
        }
        if let Some(list) = &self.measures {
            cfg.measures = parse_measures(list)?;
        }
        if let Some(out) = self.out {
            cfg.output.path = Some(out);
        }
        if let Some(format) = self.format {
            cfg.output.format = format;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Parser)]
#[command(name = "sweep", no_binary_name = true)]
struct SweepCommand {
    #[command(flatten)]
    args: SweepArgs,
}

/// Parses `sweep` arguments (without the subcommand name itself).
pub fn parse_config<I, T>(args: I) -> Result<SweepConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cmd = SweepCommand::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    cmd.args.into_config()
}

impl fmt::Display for SweepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.family.name(), self.family.param_values())?;
        if let Some(fa) = &self.family_axis {
            write!(f, ", {} in [{}, {}] x {}", fa.param.name(), fa.axis.min, fa.axis.max, fa.axis.steps)?;
        }
        let regions: Vec<String> = self.regions.iter().map(|r| r.to_string()).collect();
        let measures: Vec<&str> = self.measures.iter().map(|m| m.name()).collect();
        write!(
            f,
            ", {:?} acceleration, grid {}, regions {}, measures {}",
            self.mode,
            self.acc_steps,
            regions.join(","),
            measures.join(",")
        )
    }
}
