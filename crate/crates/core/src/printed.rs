//! Published closed-form coefficients and fidelities, transcribed literally.
//!
//! Nothing here feeds the canonical pipeline. The formulas exist so that the
//! discrepancy report and the regression tests can measure how far each one
//! sits from the dilation result. [`pure_fidelity`] is the exception: it is
//! the corrected closed form, derived independently and checked against the
//! numeric trace.
//!
//! Reading conventions for obvious misprints: `++` is `+`; σ_x written for
//! the local z terms of the Werner form is read as σ_z; the generic-pure
//! expansion's `−c̃_xx σ_xτ_x` is read with c̃_xx as the σ_xτ_x coefficient.

use nalgebra::{Matrix3, Schur, Vector3};
use num_complex::Complex64;

use crate::channel::{AccelerationPair, Region};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::{require_valid, BlochForm, DensityMatrix, Sign, StateFamily};

pub const COMPONENT_NAMES: [&str; 15] = [
    "s_x", "s_y", "s_z", "t_x", "t_y", "t_z", "c_xx", "c_xy", "c_xz", "c_yx", "c_yy", "c_yz", "c_zx", "c_zy",
    "c_zz",
];

/// The fifteen Bloch parameters in [`COMPONENT_NAMES`] order.
pub fn components(b: &BlochForm) -> [f64; 15] {
    let mut out = [0.0; 15];
    for i in 0..3 {
        out[i] = b.s[i];
        out[3 + i] = b.t[i];
        for j in 0..3 {
            out[6 + 3 * i + j] = b.c[(i, j)];
        }
    }
    out
}

/// Printed components that disagree with the dilation, per family and region.
/// Components the printed form omits count as printed zeros.
pub const FLAGGED_COEFFICIENTS: [(&str, Region, &[&str]); 8] = [
    ("singlet", Region::I, &["s_z", "t_z", "c_zz"]),
    ("singlet", Region::II, &["s_z", "t_z"]),
    ("gwerner", Region::I, &["s_z", "t_z", "c_zz"]),
    ("gwerner", Region::II, &["c_zz"]),
    ("werner", Region::I, &["s_z", "t_z", "c_zz"]),
    ("werner", Region::II, &["c_zz"]),
    ("pure", Region::I, &["c_zx", "c_zz"]),
    ("pure", Region::II, &["c_xz", "c_zx", "c_zz"]),
];

pub fn flagged_coefficients(label: &str, region: Region) -> &'static [&'static str] {
    FLAGGED_COEFFICIENTS
        .iter()
        .find(|(l, r, _)| *l == label && *r == region)
        .map(|(_, _, f)| *f)
        .unwrap_or(&[])
}

struct Trig {
    c1: f64,
    s1: f64,
    c2: f64,
    s2: f64,
    cc1: f64,
    cc2: f64,
}

impl Trig {
    fn new(acc: AccelerationPair) -> Self {
        let (r1, r2) = (acc.r_a(), acc.r_b());
        Self {
            c1: r1.cos(),
            s1: r1.sin(),
            c2: r2.cos(),
            s2: r2.sin(),
            cc1: (2.0 * r1).cos(),
            cc2: (2.0 * r2).cos(),
        }
    }
}

fn z_form(sz: f64, tz: f64, cxx: f64, cyy: f64, czz: f64) -> BlochForm {
    let mut b = BlochForm::diagonal(cxx, cyy, czz);
    b.s = Vector3::new(0.0, 0.0, sz);
    b.t = Vector3::new(0.0, 0.0, tz);
    b
}

/// Printed accelerated Bloch form for `family` in region I-I or II-II.
///
/// Returns `None` for families without a printed form (explicit states and
/// Bell triples other than the singlet); the label names the formula set.
pub fn printed_coefficients(
    family: &StateFamily,
    acc: AccelerationPair,
    region: Region,
) -> Option<(&'static str, BlochForm)> {
    let Trig { c1, s1, c2, s2, cc1, cc2 } = Trig::new(acc);
    let (c1q, s1q, c2q, s2q) = (c1 * c1, s1 * s1, c2 * c2, s2 * s2);
    let form = match (family, region) {
        (StateFamily::Bell(signs), _) if *signs != [Sign::Minus; 3] => return None,
        (StateFamily::Bell(_), Region::I) => ("singlet", z_form(0.0, 0.0, -c1 * c2, -c1 * c2, -(1.0 + cc1 * cc2) / 2.0)),
        (StateFamily::Bell(_), Region::II) => ("singlet", z_form(0.0, 0.0, -s1 * s2, -s1 * s2, (cc1 + cc2) / 2.0)),
        (StateFamily::GeneralizedWerner { cxx, cyy, czz }, Region::I) => {
            let zz = (1.0 - czz) / 4.0 * (1.0 + s1q * s2q)
                + (1.0 + czz) / 4.0 * (c1q * c2q + s1q * s1q - c1q * s2q - s1q);
            ("gwerner", z_form(0.0, 0.0, c1 * c2 * cxx, c1 * c2 * cyy, zz))
        }
        (StateFamily::GeneralizedWerner { cxx, cyy, czz }, Region::II) => {
            // "cos r_1 cos 2r_2" as printed
            let zz = (1.0 + czz) / 4.0 * (1.0 + c1 * cc2) + (1.0 - czz) / 4.0 * (cc1 + cc2);
            ("gwerner", z_form((1.0 + cc1) / 2.0, (1.0 + cc2) / 2.0, cxx * s1 * s2, cyy * s1 * s2, zz))
        }
        (StateFamily::Werner { x }, Region::I) => {
            let local = |cc: f64| ((1.0 + x) * cc - (1.0 - x) * (1.0 - cc)) / 4.0;
            let zz = ((1.0 + x) * cc1 * cc2 - (1.0 - x) * (cc1 + cc2)) / 2.0;
            ("werner", z_form(local(cc1), local(cc2), x * c1 * c2, x * c1 * c2, zz))
        }
        (StateFamily::Werner { x }, Region::II) => {
            let zz = ((1.0 + x) * (1.0 + cc1 * cc2) + (1.0 - x) * (cc1 + cc2)) / 4.0;
            ("werner", z_form((1.0 + cc1) / 2.0, (1.0 + cc2) / 2.0, x * s1 * s2, x * s1 * s2, zz))
        }
        (StateFamily::GenericPure { p }, Region::I) => {
            let q = (1.0 - p * p).sqrt();
            let c = Matrix3::new(
                -c1 * c2,
                0.0,
                -p / 2.0 * c1 * (1.0 - cc2),
                0.0,
                -q * c1 * c2,
                0.0,
                -p / 2.0 * c2 * (1.0 - cc1),
                0.0,
                -q / 2.0 * cc1 + ((1.0 - q) - (1.0 + q) * cc2) / 4.0,
            );
            let s = Vector3::new(p * c1, 0.0, (cc1 - 1.0) / 2.0);
            let t = Vector3::new(-p * c2, 0.0, (cc2 - 1.0) / 2.0);
            ("pure", BlochForm::new(s, t, c))
        }
        (StateFamily::GenericPure { p }, Region::II) => {
            let q = (1.0 - p * p).sqrt();
            let c = Matrix3::new(
                -s1 * s2,
                0.0,
                -p / 2.0 * s1 * (1.0 + cc2),
                0.0,
                -q * s1 * s2,
                0.0,
                -p / 2.0 * s2 * (1.0 - cc1),
                0.0,
                -(1.0 - q) / 4.0 * (1.0 + cc1 * cc2) + (1.0 + q) / 4.0 * (cc1 + cc2),
            );
            let s = Vector3::new(p * s1, 0.0, (1.0 + cc1) / 2.0);
            let t = Vector3::new(-p * s2, 0.0, (1.0 + cc2) / 2.0);
            ("pure", BlochForm::new(s, t, c))
        }
        (StateFamily::Explicit(_), _) => return None,
    };
    Some(form)
}

/// Printed fidelity of a self-transposed input after travelling, region I-I or II-II.
pub fn printed_self_transposed_fidelity(b: &BlochForm, acc: AccelerationPair, region: Region) -> Result<f64> {
    if !b.is_self_transposed(1e-12) {
        return Err(Error::invalid("printed fidelity applies to self-transposed states only"));
    }
    let (cxx, cyy, czz) = (b.c[(0, 0)], b.c[(1, 1)], b.c[(2, 2)]);
    // entries of the initial state (all real for this class)
    let p11 = (1.0 + czz) / 4.0;
    let p44 = p11;
    let (p22, p33) = ((1.0 - czz) / 4.0, (1.0 - czz) / 4.0);
    let (p14, p41) = ((cxx - cyy) / 4.0, (cxx - cyy) / 4.0);
    let (p23, p32) = ((cxx + cyy) / 4.0, (cxx + cyy) / 4.0);
    let Trig { c1, s1, c2, s2, .. } = Trig::new(acc);
    let (c1q, s1q, c2q, s2q) = (c1 * c1, s1 * s1, c2 * c2, s2 * s2);
    let f = match region {
        Region::I => {
            (1.0 + czz) / 4.0 * (p11 * c1q * c2q + p44)
                + (cxx + cyy) / 2.0 * (p23 + p32) * c1 * c2
                + (cxx - cyy) / 4.0 * (p14 + p41) * c1 * c2
                + (1.0 - czz) / 4.0 * (c1q * (p22 + p11 * s2q) + c2q * (p33 + p11 * s1q))
        }
        Region::II => {
            (1.0 + czz) / 4.0 * (p11 * s1q * s2q + p11)
                + (cxx + cyy) / 2.0 * (p23 + p32) * s1 * s2
                + (cxx - cyy) / 4.0 * (p14 + p41) * s1 * s2
                + (1.0 - czz) / 4.0 * (s2q * (p33 + p11 * c1q) + s1q * (p22 + p11 * c1q))
        }
    };
    Ok(f)
}

/// Printed fidelity of the generic pure state after travelling.
pub fn printed_pure_fidelity(p: f64, acc: AccelerationPair, region: Region) -> f64 {
    let q = (1.0 - p * p).sqrt();
    let (a, b) = ((1.0 - q) / 4.0, (1.0 + q) / 4.0);
    let Trig { c1, s1, c2, s2, .. } = Trig::new(acc);
    let (c1q, s1q, c2q, s2q) = (c1 * c1, s1 * s1, c2 * c2, s2 * s2);
    match region {
        Region::I => {
            a * a * (c1q * c2 + 2.0 * c1 * c2 + s1q * s2q + 1.0)
                + b * b * (c1 + c2).powi(2)
                + (p / 4.0).powi(2) * (4.0 * c2 + 2.0 * c1)
        }
        Region::II => {
            b * b * (1.0 + 2.0 * s1 * s2 + c1q * c2q + s1q * s2q)
                + b * b * (s1 + s2).powi(2)
                + p * p / 4.0 * (s1 + s2)
                + (1.0 - q * q) / 16.0 * (c1q + c2q + c1q * s2q + s1q * c2q)
        }
    }
}

/// Corrected closed form of the generic-pure fidelity, region I-I or II-II.
pub fn pure_fidelity(p: f64, acc: AccelerationPair, region: Region) -> f64 {
    let q = (1.0 - p * p).sqrt();
    let (a, b, c) = ((1.0 - q) / 4.0, (1.0 + q) / 4.0, p / 4.0);
    let Trig { c1, s1, c2, s2, .. } = Trig::new(acc);
    let (c1q, s1q, c2q, s2q) = (c1 * c1, s1 * s1, c2 * c2, s2 * s2);
    match region {
        Region::I => {
            a * a * (c1q * c2q + 2.0 * c1 * c2 + s1q * s2q + 1.0)
                + b * b * (c1 + c2).powi(2)
                + 4.0 * c * c * (c1 + c2)
                + a * b * (c1q * s2q + c2q * s1q + s1q + s2q)
        }
        Region::II => {
            a * a * (c1q * c2q + s1q * s2q + 2.0 * s1 * s2 + 1.0)
                + b * b * (s1 + s2).powi(2)
                + 4.0 * c * c * (s1 + s2)
                + a * b * (c1q * s2q + c1q + c2q * s1q + c2q)
        }
    }
}

/// Printed element-wise expansion of the Bloch form into a 4×4 matrix.
pub fn printed_density_entries(b: &BlochForm) -> CMatrix {
    let (sx, sy, sz) = (b.s[0], b.s[1], b.s[2]);
    let (tx, ty, tz) = (b.t[0], b.t[1], b.t[2]);
    let c = |i: usize, j: usize| b.c[(i, j)];
    let (cxx, cxy, cxz, cyx, cyy, cyz, czx, czy, czz) =
        (c(0, 0), c(0, 1), c(0, 2), c(1, 0), c(1, 1), c(1, 2), c(2, 0), c(2, 1), c(2, 2));
    let z = |re: f64, im: f64| Complex64::new(re / 4.0, im / 4.0);
    let rows = [
        [z(1.0 + sz + tz + czz, 0.0), z(tx + czx, -ty + czy), z(sx + cxz, -sy - cyz), z(cxx - cyy, -cxy - cyx)],
        [z(tx + czx, -ty + czy), z(1.0 + sz + tz - czz, 0.0), z(cxx + cyy, cxy - cyx), z(sx - cxz, -sy + cyz)],
        [z(sx + cxz, sy + cyz), z(cxx + cyy, -cxy + cyx), z(1.0 - sz + tz - czz, 0.0), z(tx - czx, -ty + czy)],
        [z(cxx - cyy, -cxy + cyx), z(sx - cxz, sy - cyz), z(tx - czx, ty - czy), z(1.0 - sz - tz + czz, 0.0)],
    ];
    CMatrix::from_fn(4, 4, |i, j| rows[i][j])
}

/// Concurrence with λ read as the eigenvalues of ρρ̃ themselves, without the
/// square roots of the standard definition.
pub fn literal_wootters(rho: &DensityMatrix) -> Result<f64> {
    require_valid(rho, 4)?;
    let one = Complex64::new(1.0, 0.0);
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y[(3, 0)] = -one;
    let tilde = &y * rho.matrix().map(|v| v.conj()) * &y;
    let product = rho.matrix() * tilde;
    let eig = Schur::new(product)
        .eigenvalues()
        .ok_or_else(|| Error::NumericInvariant("complex spectrum of ρρ̃".into()))?;
    let mut l: Vec<f64> = eig.iter().map(|v| v.re).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}
