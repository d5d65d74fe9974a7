//! Two-qubit states: Bloch parameterization, explicit 4×4 matrices and the
//! named state families.
//!
//! Basis ordering is |Alice Rob⟩ = |00⟩, |01⟩, |10⟩, |11⟩, so matrix index
//! `2 * alice + rob`. The Bloch form is
//!
//! ρ = ¼ (1 + s·σ ⊗ 1 + 1 ⊗ t·τ + Σ c_ij σ_i ⊗ τ_j)
//!
//! with s_i = tr ρ σ_i, t_j = tr ρ τ_j and c_ij = tr ρ σ_i τ_j.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::tolerances::{HERMITIAN_TOL, PSD_TOL, TRACE_TOL};

/// Local Bloch vectors and correlation dyadic of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    /// Alice's Bloch vector.
    pub s: Vector3<f64>,
    /// Rob's Bloch vector.
    pub t: Vector3<f64>,
    /// Correlation dyadic, `c[(i, j)] = tr ρ σ_i τ_j`.
    pub c: Matrix3<f64>,
}

impl BlochForm {
    pub fn new(s: Vector3<f64>, t: Vector3<f64>, c: Matrix3<f64>) -> Self {
        Self { s, t, c }
    }

    /// Zero local vectors with a diagonal dyadic.
    pub fn diagonal(cxx: f64, cyy: f64, czz: f64) -> Self {
        Self {
            s: Vector3::zeros(),
            t: Vector3::zeros(),
            c: Matrix3::from_diagonal(&Vector3::new(cxx, cyy, czz)),
        }
    }

    pub fn zero() -> Self {
        Self::diagonal(0.0, 0.0, 0.0)
    }

    fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        self.s.iter().chain(self.t.iter()).chain(self.c.iter()).copied()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(f64::is_finite)
    }

    /// Every parameter lies in [-1, 1].
    pub fn entries_in_range(&self) -> bool {
        self.entries().all(|v| (-1.0..=1.0).contains(&v))
    }

    /// Zero Bloch vectors and a diagonal dyadic, all within `tol`.
    pub fn is_self_transposed(&self, tol: f64) -> bool {
        let vectors_vanish = self.s.iter().chain(self.t.iter()).all(|v| v.abs() <= tol);
        let off_diagonal_vanish = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .all(|(i, j)| self.c[(i, j)].abs() <= tol);
        vectors_vanish && off_diagonal_vanish
    }

    /// Largest absolute parameter difference.
    pub fn max_abs_diff(&self, other: &BlochForm) -> f64 {
        self.entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A square complex matrix meant to be a density operator.
///
/// Construction only checks shape and finiteness. Whether the matrix is a
/// physical state is answered by [`validate_density`], since intermediate
/// results (for example the literal printed closed forms) may not be.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::invalid(format!(
                "density matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("density matrix has non-finite entries"));
        }
        Ok(Self(m))
    }

    /// |ψ⟩⟨ψ| for a normalized state vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("state vector must have finite non-zero norm"));
        }
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / (norm * norm));
        Self::from_matrix(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(CMatrix::identity(dim, dim).scale(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Zero-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub(crate) fn require_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// Outcome of [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn hermitian(&self) -> bool {
        self.hermiticity_deviation <= HERMITIAN_TOL
    }

    pub fn unit_trace(&self) -> bool {
        self.trace_deviation <= TRACE_TOL
    }

    pub fn positive(&self) -> bool {
        self.min_eigenvalue >= PSD_TOL
    }

    pub fn passed(&self) -> bool {
        self.hermitian() && self.unit_trace() && self.positive()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "hermiticity deviation: {:.3e} [{}]", self.hermiticity_deviation, mark(self.hermitian()))?;
        writeln!(f, "trace deviation:       {:.3e} [{}]", self.trace_deviation, mark(self.unit_trace()))?;
        write!(f, "minimum eigenvalue:    {:.3e} [{}]", self.min_eigenvalue, mark(self.positive()))
    }
}

pub fn validate_density(rho: &DensityMatrix) -> ValidationReport {
    let m = rho.matrix();
    let tr = m.trace();
    let trace_deviation = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
    let min_eigenvalue = linalg::hermitian_eigenvalues(m)
        .first()
        .copied()
        .unwrap_or(f64::NAN);
    ValidationReport {
        hermiticity_deviation: linalg::hermiticity_deviation(m),
        trace_deviation,
        min_eigenvalue,
    }
}

/// Fails with an invalid-argument error unless `rho` is a valid `dim`-state.
pub(crate) fn require_valid(rho: &DensityMatrix, dim: usize) -> Result<ValidationReport> {
    rho.require_dim(dim)?;
    let report = validate_density(rho);
    if !report.passed() {
        return Err(Error::invalid(format!(
            "not a valid density matrix (hermiticity {:.3e}, trace deviation {:.3e}, min eigenvalue {:.3e})",
            report.hermiticity_deviation, report.trace_deviation, report.min_eigenvalue
        )));
    }
    Ok(report)
}

/// Explicit 4×4 matrix of a Bloch form. Hermitian and unit trace by
/// construction; positivity is left to [`validate_density`].
pub fn bloch_to_density(b: &BlochForm) -> Result<DensityMatrix> {
    if !b.is_finite() {
        return Err(Error::invalid("Bloch parameters must be finite"));
    }
    let c = |re: f64, im: f64| Complex64::new(re / 4.0, im / 4.0);
    let (sx, sy, sz) = (b.s.x, b.s.y, b.s.z);
    let (tx, ty, tz) = (b.t.x, b.t.y, b.t.z);
    let k = &b.c;
    let (cxx, cxy, cxz) = (k[(0, 0)], k[(0, 1)], k[(0, 2)]);
    let (cyx, cyy, cyz) = (k[(1, 0)], k[(1, 1)], k[(1, 2)]);
    let (czx, czy, czz) = (k[(2, 0)], k[(2, 1)], k[(2, 2)]);

    let mut m = CMatrix::from_element(4, 4, ZERO);
    m[(0, 0)] = c(1.0 + sz + tz + czz, 0.0);
    m[(0, 1)] = c(tx + czx, -ty - czy);
    m[(0, 2)] = c(sx + cxz, -sy - cyz);
    m[(0, 3)] = c(cxx - cyy, -cxy - cyx);
    m[(1, 1)] = c(1.0 + sz - tz - czz, 0.0);
    m[(1, 2)] = c(cxx + cyy, cxy - cyx);
    m[(1, 3)] = c(sx - cxz, -sy + cyz);
    m[(2, 2)] = c(1.0 - sz + tz - czz, 0.0);
    m[(2, 3)] = c(tx - czx, -ty + czy);
    m[(3, 3)] = c(1.0 - sz - tz + czz, 0.0);
    for i in 0..4 {
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
    }
    DensityMatrix::from_matrix(m)
}

/// Bloch parameters of a 4×4 matrix, read off as Pauli expectation values.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochForm> {
    rho.require_dim(4)?;
    let m = rho.matrix();
    let id = linalg::identity2();
    let paulis = linalg::paulis();
    let expect = |op: &CMatrix| linalg::trace_of_product(m, op).re;

    let s = Vector3::from_fn(|i, _| expect(&linalg::kron(&paulis[i], &id)));
    let t = Vector3::from_fn(|j, _| expect(&linalg::kron(&id, &paulis[j])));
    let c = Matrix3::from_fn(|i, j| expect(&linalg::kron(&paulis[i], &paulis[j])));
    Ok(BlochForm { s, t, c })
}

/// Sign of a correlation coefficient in a Bell state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Option<Sign> {
        if v == 1.0 {
            Some(Sign::Plus)
        } else if v == -1.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// The initial-state classes a channel can be prepared in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// X state ¼(1 + cxx σxτx + cyy σyτy + czz σzτz).
    GeneralizedWerner { cxx: f64, cyy: f64, czz: f64 },
    /// Maximally entangled state with c_ii = ±1.
    Bell([Sign; 3]),
    /// Isotropic mixture realized with dyadic diag(x, x, -x).
    Werner { x: f64 },
    /// Pure state with s = (p,0,0), t = (-p,0,0), c = diag(-1, -q, -q), q = √(1-p²).
    GenericPure { p: f64 },
    Explicit(BlochForm),
}

impl StateFamily {
    pub fn singlet() -> Self {
        StateFamily::Bell([Sign::Minus; 3])
    }

    /// Short family name used on the command line and in CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::GeneralizedWerner { .. } => "gwerner",
            StateFamily::Bell(_) => "bell",
            StateFamily::Werner { .. } => "werner",
            StateFamily::GenericPure { .. } => "pure",
            StateFamily::Explicit(_) => "explicit",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            StateFamily::GeneralizedWerner { .. } => &["cxx", "cyy", "czz"],
            StateFamily::Bell(_) => &["sign_x", "sign_y", "sign_z"],
            StateFamily::Werner { .. } => &["x"],
            StateFamily::GenericPure { .. } => &["p"],
            StateFamily::Explicit(_) => &[],
        }
    }

    pub fn param_values(&self) -> Vec<f64> {
        match *self {
            StateFamily::GeneralizedWerner { cxx, cyy, czz } => vec![cxx, cyy, czz],
            StateFamily::Bell(signs) => signs.iter().map(|s| s.value()).collect(),
            StateFamily::Werner { x } => vec![x],
            StateFamily::GenericPure { p } => vec![p],
            StateFamily::Explicit(_) => Vec::new(),
        }
    }

    /// Bloch form of the family member, after range checks.
    pub fn bloch(&self) -> Result<BlochForm> {
        match *self {
            StateFamily::GeneralizedWerner { cxx, cyy, czz } => {
                check_x_state(cxx, cyy, czz)?;
                Ok(BlochForm::diagonal(cxx, cyy, czz))
            }
            StateFamily::Bell(signs) => {
                let [a, b, c] = signs.map(Sign::value);
                if a * b * c > 0.0 {
                    return Err(Error::invalid(format!(
                        "Bell sign triple ({a:+}, {b:+}, {c:+}) is not a state: the product of signs must be -1"
                    )));
                }
                Ok(BlochForm::diagonal(a, b, c))
            }
            StateFamily::Werner { x } => {
                if !x.is_finite() || !(-1.0 / 3.0..=1.0).contains(&x) {
                    return Err(Error::invalid(format!("Werner x = {x} outside [-1/3, 1]")));
                }
                Ok(BlochForm::diagonal(x, x, -x))
            }
            StateFamily::GenericPure { p } => {
                if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                    return Err(Error::invalid(format!("generic pure p = {p} outside [0, 1]")));
                }
                let q = (1.0 - p * p).sqrt();
                Ok(BlochForm::new(
                    Vector3::new(p, 0.0, 0.0),
                    Vector3::new(-p, 0.0, 0.0),
                    Matrix3::from_diagonal(&Vector3::new(-1.0, -q, -q)),
                ))
            }
            StateFamily::Explicit(b) => {
                if !b.is_finite() || !b.entries_in_range() {
                    return Err(Error::invalid("explicit Bloch parameters must lie in [-1, 1]"));
                }
                Ok(b)
            }
        }
    }
}

fn check_x_state(cxx: f64, cyy: f64, czz: f64) -> Result<()> {
    for (name, v) in [("cxx", cxx), ("cyy", cyy), ("czz", czz)] {
        if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
            return Err(Error::invalid(format!("{name} = {v} outside [-1, 1]")));
        }
    }
    let bounds = [
        ("1 + cxx - cyy + czz >= 0", 1.0 + cxx - cyy + czz),
        ("1 - cxx + cyy + czz >= 0", 1.0 - cxx + cyy + czz),
        ("1 + cxx + cyy - czz >= 0", 1.0 + cxx + cyy - czz),
        ("1 - cxx - cyy - czz >= 0", 1.0 - cxx - cyy - czz),
    ];
    for (bound, value) in bounds {
        if value < -1e-12 {
            return Err(Error::invalid(format!(
                "generalized Werner ({cxx}, {cyy}, {czz}) violates {bound} (value {value})"
            )));
        }
    }
    Ok(())
}

/// Instantiates a family member as an explicit, validated 4×4 state.
pub fn make_state(family: &StateFamily) -> Result<DensityMatrix> {
    let rho = bloch_to_density(&family.bloch()?)?;
    let report = validate_density(&rho);
    if !report.passed() {
        return Err(Error::invalid(format!(
            "{} parameters {:?} do not give a valid state:\n{report}",
            family.name(),
            family.param_values()
        )));
    }
    Ok(rho)
}

/// Zero local Bloch vectors and diagonal dyadic (ρ = ρᵀ), within `tol`.
/// Matrices that are not 4×4 are never self-transposed.
pub fn is_self_transposed(rho: &DensityMatrix, tol: f64) -> bool {
    density_to_bloch(rho).map(|b| b.is_self_transposed(tol)).unwrap_or(false)
}
