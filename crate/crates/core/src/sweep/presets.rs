//! Named sweep configurations for the published figure surfaces.

use crate::channel::RegionSelector;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::states::StateFamily;

use super::config::{AccMode, Axis, FamilyAxis, FamilyParam, OutputSpec, SweepConfig, DEFAULT_GRID};

/// (name, description) of every preset.
pub const PRESETS: [(&str, &str); 8] = [
    ("bell-concurrence-2d", "singlet, concurrence over (r_a, r_b), all four regions"),
    ("werner-concurrence-2d", "Werner x = 0.6, concurrence over (r_a, r_b), region I-I"),
    ("gwerner-concurrence-2d", "X state (0.7, 0.5, -0.3), concurrence over (r_a, r_b), region I-I"),
    ("pure-concurrence-locked", "generic pure state, concurrence over (p, r), region I-I"),
    ("werner-fidelity-locked", "Werner, fidelity over (x, r), all four regions"),
    ("pure-fidelity-locked", "generic pure state, fidelity over (p, r), regions I-I and II-II"),
    ("werner-telp-locked", "Werner, teleportation criterion over (x, r), all four regions"),
    ("pure-telp-locked", "generic pure state, teleportation criterion over (p, r), region I-I"),
];

fn base(family: StateFamily, regions: &[RegionSelector], measure: Measure) -> SweepConfig {
    SweepConfig {
        family,
        family_axis: None,
        acc_steps: DEFAULT_GRID,
        mode: AccMode::Independent,
        regions: regions.to_vec(),
        measures: vec![measure],
        output: OutputSpec::default(),
    }
}

fn locked(family: StateFamily, param: FamilyParam, regions: &[RegionSelector], measure: Measure) -> SweepConfig {
    let axis = Axis { min: 0.0, max: 1.0, steps: DEFAULT_GRID };
    SweepConfig {
        family_axis: Some(FamilyAxis { param, axis }),
        mode: AccMode::Locked,
        ..base(family, regions, measure)
    }
}

pub fn preset(name: &str) -> Result<SweepConfig> {
    use RegionSelector as R;
    let all = &R::ALL;
    let werner = StateFamily::Werner { x: 0.0 };
    let pure = StateFamily::GenericPure { p: 0.0 };
    let cfg = match name {
        "bell-concurrence-2d" => base(StateFamily::singlet(), all, Measure::Concurrence),
        "werner-concurrence-2d" => base(StateFamily::Werner { x: 0.6 }, &[R::I_I], Measure::Concurrence),
        // the sign of czz is flipped relative to (0.7, 0.5, 0.3), which is not a
        // state; the flip is a local unitary that commutes with the channel
        "gwerner-concurrence-2d" => base(
            StateFamily::GeneralizedWerner { cxx: 0.7, cyy: 0.5, czz: -0.3 },
            &[R::I_I],
            Measure::Concurrence,
        ),
        "pure-concurrence-locked" => locked(pure, FamilyParam::P, &[R::I_I], Measure::Concurrence),
        "werner-fidelity-locked" => locked(werner, FamilyParam::X, all, Measure::Fidelity),
        "pure-fidelity-locked" => locked(pure, FamilyParam::P, &[R::I_I, R::II_II], Measure::Fidelity),
        "werner-telp-locked" => locked(werner, FamilyParam::X, all, Measure::Telp),
        "pure-telp-locked" => locked(pure, FamilyParam::P, &[R::I_I], Measure::Telp),
        other => {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            return Err(Error::Config(format!("unknown preset '{other}'; available: {}", names.join(", "))));
        }
    };
    Ok(cfg)
}
