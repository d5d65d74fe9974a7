//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::f64::consts::FRAC_PI_4;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use unruh_channels::closed_form::{flagged_entries, printed_region, to_library_index};
use unruh_channels::linalg::max_abs_diff;
use unruh_channels::random::StateSampler;
use unruh_channels::states::{validate_density, Sign};
use unruh_channels::sweep::config::{AccMode, Observer};
use unruh_channels::sweep::presets::{preset, PRESETS};
use unruh_channels::sweep::{parse_config, run_sweep, SweepTable};
use unruh_channels::{
    bloch_to_density, channel, concurrence, concurrence_self_transposed, density_to_bloch, make_state, overlap_fidelity,
    purity, teleportation_criterion, AccelerationPair, RegionSelector, StateFamily,
};

/// Concurrence of the singlet with Alice at r = π/4 and Rob inertial,
/// frozen from the Wootters computation.
const ONE_STATIONARY_GOLDEN: f64 = 0.707106781186548;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion(id: u32, name: &str, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(check));
    let elapsed = start.elapsed();
    let o = result.unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        outcome(false, format!("panicked: {msg}"))
    });
    println!(
        "{} [{id:>2}] {name}: {} ({:.2} s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64()
    );
    o.pass
}

fn acc(a: f64, b: f64) -> AccelerationPair {
    AccelerationPair::new(a, b).unwrap()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

fn identity_limit() -> Outcome {
    let start = Instant::now();
    let mut sampler = StateSampler::new(1001);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let rho = sampler.mixed_state();
        let out = channel(&rho, AccelerationPair::inertial(), RegionSelector::I_I).unwrap();
        worst = worst.max(max_abs_diff(out.matrix(), rho.matrix()));
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-14 && t < Duration::from_secs(1),
        format!("max deviation {worst:.2e} (≤ 1e-14), runtime {:.3} s (< 1 s)", t.as_secs_f64()),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut sampler = StateSampler::new(1002);
    let states: Vec<_> = (0..100).map(|_| sampler.mixed_state()).collect();
    let grid = linspace(0.0, FRAC_PI_4, 16);
    let sel = RegionSelector::I_I;
    let flagged = flagged_entries(sel);
    let (mut unflagged, mut anchor, mut entry44) = (0.0f64, 0.0f64, 0.0f64);
    for &ra in &grid {
        for &rb in &grid {
            let a = acc(ra, rb);
            for rho in &states {
                let canonical = channel(rho, a, sel).unwrap();
                let printed = printed_region(rho, a, sel).unwrap();
                for i in 1..=4 {
                    for j in 1..=4 {
                        let d = (printed.entry(i - 1, j - 1) - canonical.entry(i - 1, j - 1)).norm();
                        if flagged.contains(&(i, j)) {
                            if (i, j) == (4, 4) {
                                entry44 = entry44.max(d);
                            }
                        } else {
                            unflagged = unflagged.max(d);
                        }
                    }
                }
                let sel2 = RegionSelector::II_II;
                let k = to_library_index(sel2, 1) - 1;
                let d = (printed_region(rho, a, sel2).unwrap().entry(k, k) - channel(rho, a, sel2).unwrap().entry(k, k)).norm();
                anchor = anchor.max(d);
            }
        }
    }
    outcome(
        unflagged <= 1e-12 && anchor <= 1e-12 && entry44 > 1e-6,
        format!(
            "region I-I unflagged entries {unflagged:.2e}, region II-II (1,1) anchor {anchor:.2e} (≤ 1e-12); printed (4,4) deviates by {entry44:.3e} (> 0)"
        ),
    )
}

fn bell_region_one() -> Outcome {
    let rho = make_state(&StateFamily::singlet()).unwrap();
    let (mut dxy, mut dzz) = (0.0f64, 0.0f64);
    for r in linspace(0.0, FRAC_PI_4, 64) {
        let b = density_to_bloch(&channel(&rho, acc(r, r), RegionSelector::I_I).unwrap()).unwrap();
        let cc = r.cos() * r.cos();
        dxy = dxy.max((b.c[(0, 0)] + cc).abs()).max((b.c[(1, 1)] + cc).abs());
        let c2 = (2.0 * r).cos();
        dzz = dzz.max((b.c[(2, 2)] + (1.0 + c2 * c2) / 2.0).abs());
    }
    outcome(
        dxy <= 1e-12 && dzz <= 1e-12,
        format!("c_xx, c_yy vs -cos r1 cos r2: {dxy:.2e}; c_zz vs -(1 + cos2r1 cos2r2)/2: {dzz:.3e} (both ≤ 1e-12)"),
    )
}

fn concurrence_cross_check() -> Outcome {
    let mut sampler = StateSampler::new(1004);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let b = sampler.self_transposed();
        let c = concurrence(&bloch_to_density(&b).unwrap()).unwrap();
        worst = worst.max((c - concurrence_self_transposed(&b).unwrap()).abs());
    }
    outcome(worst <= 1e-10, format!("max |Wootters - closed form| {worst:.2e} over 10^4 states (≤ 1e-10)"))
}

fn sweep_value(line: &str, row: usize) -> f64 {
    let table = run_sweep(&parse_config(line.split_whitespace()).unwrap()).unwrap();
    table.rows[row].values[0].as_real().unwrap()
}

fn singlet_limits() -> Outcome {
    let locked = run_sweep(
        &parse_config("--family bell --lock-acc --grid 64 --region I-I --measures concurrence".split_whitespace())
            .unwrap(),
    )
    .unwrap();
    let c0 = locked.rows[0].values[0].as_real().unwrap();
    let cend = locked.rows.last().unwrap().values[0].as_real().unwrap();
    let cfg = parse_config("--family bell --stationary rob --grid 64 --region I-I --measures concurrence".split_whitespace())
        .unwrap();
    assert_eq!(cfg.mode, AccMode::OneStationary(Observer::Rob));
    let stationary = sweep_value("--family bell --stationary rob --grid 64 --region I-I --measures concurrence", 63);
    let ok0 = (c0 - 1.0).abs() <= 1e-12;
    let okend = cend <= 1e-9;
    let okst = stationary > 0.3 && (stationary - ONE_STATIONARY_GOLDEN).abs() <= 1e-12;
    outcome(
        ok0 && okend && okst,
        format!(
            "locked C(0) = {c0:.12} (1 ± 1e-12) [{}]; locked C(π/4) = {cend:.12} (≤ 1e-9) [{}]; C(r_a = π/4, r_b = 0) = {stationary:.12} (> 0.3, golden {ONE_STATIONARY_GOLDEN}) [{}]",
            ok(ok0),
            ok(okend),
            ok(okst)
        ),
    )
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fails"
    }
}

fn werner_thresholds() -> Outcome {
    let mut xs = linspace(-1.0 / 3.0, 1.0, 401);
    xs.push(1.0 / 3.0);
    let (mut dc, mut dt, mut crossing_ok) = (0.0f64, 0.0f64, true);
    for x in xs {
        let rho = make_state(&StateFamily::Werner { x }).unwrap();
        let out = channel(&rho, AccelerationPair::inertial(), RegionSelector::I_I).unwrap();
        let c = concurrence(&out).unwrap();
        let want = if x <= 1.0 / 3.0 { 0.0 } else { (3.0 * x - 1.0) / 2.0 };
        dc = dc.max((c - want).abs());
        let telp = teleportation_criterion(&out).unwrap();
        dt = dt.max((telp - 3.0 * x.abs()).abs());
        if x >= 0.0 && (x - 1.0 / 3.0).abs() > 1e-9 {
            crossing_ok &= (telp > 1.0) == (x > 1.0 / 3.0);
        }
    }
    let at_third = teleportation_criterion(&make_state(&StateFamily::Werner { x: 1.0 / 3.0 }).unwrap()).unwrap();
    let pass = dc <= 1e-10 && dt <= 1e-12 && crossing_ok && (at_third - 1.0).abs() <= 1e-12;
    outcome(
        pass,
        format!(
            "concurrence vs max(0, (3x-1)/2): {dc:.2e} (≤ 1e-10); telp vs 3|x|: {dt:.2e} (≤ 1e-12); telp(1/3) = {at_third:.15}; threshold side {}",
            ok(crossing_ok)
        ),
    )
}

fn fidelity_anchors() -> Outcome {
    let mut sampler = StateSampler::new(1007);
    let mut families: Vec<StateFamily> = Vec::new();
    for signs in [
        [Sign::Minus, Sign::Minus, Sign::Minus],
        [Sign::Minus, Sign::Plus, Sign::Plus],
        [Sign::Plus, Sign::Minus, Sign::Plus],
        [Sign::Plus, Sign::Plus, Sign::Minus],
    ] {
        families.push(StateFamily::Bell(signs));
    }
    for _ in 0..100 {
        families.push(StateFamily::Werner { x: sampler.uniform(-1.0 / 3.0, 1.0) });
        families.push(StateFamily::GenericPure { p: sampler.uniform(0.0, 1.0) });
        let b = sampler.self_transposed();
        families.push(StateFamily::GeneralizedWerner { cxx: b.c[(0, 0)], cyy: b.c[(1, 1)], czz: b.c[(2, 2)] });
    }
    let mut worst = 0.0f64;
    for f in &families {
        let rho = make_state(f).unwrap();
        let out = channel(&rho, AccelerationPair::inertial(), RegionSelector::I_I).unwrap();
        worst = worst.max((overlap_fidelity(&out, &rho).unwrap() - purity(&rho)).abs());
    }
    let pure0 = make_state(&StateFamily::GenericPure { p: 0.0 }).unwrap();
    let f0 = overlap_fidelity(&channel(&pure0, AccelerationPair::inertial(), RegionSelector::I_I).unwrap(), &pure0).unwrap();
    outcome(
        worst <= 1e-12 && (f0 - 1.0).abs() <= 1e-12,
        format!("max |F - purity| at rest {worst:.2e} over {} states (≤ 1e-12); F(pure p=0) = {f0:.15}", families.len()),
    )
}

fn channel_sanity() -> Outcome {
    let families = [
        StateFamily::singlet(),
        StateFamily::Werner { x: 0.6 },
        StateFamily::GeneralizedWerner { cxx: 0.7, cyy: 0.5, czz: -0.3 },
        StateFamily::GenericPure { p: 0.5 },
    ];
    let grid = linspace(0.0, FRAC_PI_4, 64);
    let (mut checked, mut violations) = (0usize, 0usize);
    let (mut herm, mut trace, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    for f in &families {
        let rho = make_state(f).unwrap();
        for &ra in &grid {
            for &rb in &grid {
                for sel in RegionSelector::ALL {
                    let out = channel(&rho, acc(ra, rb), sel).unwrap();
                    let v = validate_density(&out);
                    herm = herm.max(v.hermiticity_deviation);
                    trace = trace.max(v.trace_deviation);
                    min_eig = min_eig.min(v.min_eigenvalue);
                    checked += 1;
                    if !v.passed() {
                        violations += 1;
                    }
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{violations} violations in {checked} outputs; worst hermiticity {herm:.2e}, trace {trace:.2e}, min eigenvalue {min_eig:.2e}"
        ),
    )
}

fn figure_regeneration() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_unruh-channels");
    let dir = tempfile::tempdir().unwrap();
    let run_all = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        PRESETS
            .iter()
            .map(|(name, _)| {
                let path = dir.path().join(format!("{name}-{tag}.csv"));
                let status = Command::new(bin)
                    .args(["sweep", "--preset", name, "--out", path.to_str().unwrap()])
                    .status()
                    .map_err(|e| e.to_string())?;
                if !status.success() {
                    return Err(format!("{name} exited with {status}"));
                }
                std::fs::read(&path).map_err(|e| e.to_string())
            })
            .collect()
    };
    let start = Instant::now();
    let first = match run_all("a") {
        Ok(v) => v,
        Err(e) => return outcome(false, e),
    };
    let elapsed = start.elapsed();
    let second = match run_all("b") {
        Ok(v) => v,
        Err(e) => return outcome(false, e),
    };

    let mut problems = Vec::new();
    for (((name, _), a), b) in PRESETS.iter().zip(&first).zip(&second) {
        if a != b {
            problems.push(format!("{name} not byte-identical"));
        }
        let cfg = preset(name).unwrap();
        let text = String::from_utf8_lossy(a);
        let header = text.lines().next().unwrap_or_default();
        let measure_cols: Vec<&str> = cfg.measures.iter().map(|m| m.name()).collect();
        let expected_header = format!(
            "r_a,r_b,{},region,{}",
            cfg.family.param_names().join(","),
            measure_cols.join(",")
        );
        let axis_points: usize = match cfg.mode {
            AccMode::Independent => cfg.acc_steps * cfg.acc_steps,
            _ => cfg.acc_steps,
        } * cfg.family_axis.map(|fa| fa.axis.steps).unwrap_or(1);
        let expected_rows = axis_points * cfg.regions.len();
        if header != expected_header {
            problems.push(format!("{name} header {header}"));
        }
        if text.lines().count() != expected_rows + 1 {
            problems.push(format!("{name} has {} lines, expected {}", text.lines().count(), expected_rows + 1));
        }
    }
    let pass = problems.is_empty() && elapsed < Duration::from_secs(30);
    let bytes: usize = first.iter().map(Vec::len).sum();
    outcome(
        pass,
        format!(
            "{} presets, {bytes} bytes, byte-identical on rerun, full run {:.2} s (< 30 s){}",
            PRESETS.len(),
            elapsed.as_secs_f64(),
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems.join("; ")) }
        ),
    )
}

fn teleportation_shape() -> Outcome {
    let mut cfg = preset("werner-telp-locked").unwrap();
    cfg.regions = vec![RegionSelector::I_I];
    let table: SweepTable = run_sweep(&cfg).unwrap();
    let nx = table.axes[0].points.len();
    let nr = table.axes[1].points.len();
    let useful = |i: usize, j: usize| table.rows[i * nr + j].values[0].as_real().unwrap() > 1.0;
    let mut breaks = 0;
    for j in 0..nr {
        for i in 1..nx {
            if useful(i - 1, j) && !useful(i, j) {
                breaks += 1;
            }
        }
    }
    for i in 0..nx {
        for j in 1..nr {
            if useful(i, j) && !useful(i, j - 1) {
                breaks += 1;
            }
        }
    }
    let count = (0..nx).flat_map(|i| (0..nr).map(move |j| (i, j))).filter(|&(i, j)| useful(i, j)).count();
    outcome(
        breaks == 0,
        format!("{count} of {} (x, r) points with Telp > 1; {breaks} monotonicity breaks", nx * nr),
    )
}

fn main() -> ExitCode {
    // keep panic messages on the result line only
    panic::set_hook(Box::new(|_| {}));
    let results = [
        criterion(1, "identity limit", identity_limit),
        criterion(2, "closed-form oracle equivalence", oracle_equivalence),
        criterion(3, "Bell region I-I coefficients", bell_region_one),
        criterion(4, "concurrence cross-check", concurrence_cross_check),
        criterion(5, "singlet concurrence limits", singlet_limits),
        criterion(6, "Werner thresholds", werner_thresholds),
        criterion(7, "fidelity anchors", fidelity_anchors),
        criterion(8, "channel sanity over the default sweep", channel_sanity),
        criterion(9, "figure regeneration", figure_regeneration),
        criterion(10, "teleportation region shape", teleportation_shape),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
