//! Density operators, pure states, coherence blocks and local rotations.

use alloc::format;
use alloc::vec::Vec;


use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::index::SubsystemDims;
use crate::matrix::{CMatrix, C64};
// inherent float methods shadow these when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

/// Acceptance thresholds used by [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationTolerances {
    /// Inputs within this Hermitian asymmetry are symmetrized, beyond it rejected.
    pub asymmetry: f64,
    /// Allowed `|Tr M - 1|`; accepted inputs are rescaled to unit trace.
    pub trace: f64,
    /// Most negative eigenvalue accepted.
    pub min_eigenvalue: f64,
}

impl Default for ValidationTolerances {
    fn default() -> Self {
        Self {
            asymmetry: 1e-9,
            trace: 1e-9,
            min_eigenvalue: -1e-10,
        }
    }
}

/// A Hermitian, unit-trace, positive-semidefinite matrix over a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dims: SubsystemDims,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Maximally mixed state `I / D`.
    #[allow(clippy::needless_range_loop)]
    pub fn maximally_mixed(dims: SubsystemDims) -> Self {
        let d = dims.total();
        Self {
            matrix: CMatrix::identity(d).scale(1.0 / d as f64),
            dims,
        }
    }

    /// Convex mixture `w·self + (1-w)·other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Incompatible("mixing states of different dimensions".into()));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ParameterRange {
                name: "weight",
                value: w,
            });
        }
        Ok(Self {
            dims: self.dims.clone(),
            matrix: self.matrix.scale(w).add(&other.matrix.scale(1.0 - w)),
        })
    }

    /// Eigenvalues of the state, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Wraps a matrix already known to satisfy the invariants.
    pub(crate) fn from_parts_unchecked(dims: SubsystemDims, matrix: CMatrix) -> Self {
        Self { dims, matrix }
    }
}

pub fn validate_density(
    raw: &CMatrix,
    dims: &SubsystemDims,
    tol: &ValidationTolerances,
) -> Result<DensityOperator> {
    let d = dims.total();
    if raw.dim() != d {
        return Err(Error::Shape {
            expected: d,
            rows: raw.dim(),
            cols: raw.dim(),
        });
    }
    if raw.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NotHermitian {
            asymmetry: f64::NAN,
        });
    }
    let asymmetry = raw.hermitian_asymmetry();
    if asymmetry > tol.asymmetry {
        return Err(Error::NotHermitian { asymmetry });
    }
    let mut matrix = raw.hermitian_part();
    let trace = matrix.trace().re;
    if (trace - 1.0).abs() > tol.trace {
        return Err(Error::Trace { trace });
    }
    if trace != 1.0 {
        matrix = matrix.scale(1.0 / trace);
    }
    let lowest = hermitian_eigenvalues(&matrix)?[0];
    if lowest < tol.min_eigenvalue {
        return Err(Error::NotPositive { eigenvalue: lowest });
    }
    Ok(DensityOperator {
        dims: dims.clone(),
        matrix,
    })
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: SubsystemDims,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Normalization within `1e-9` is required; the vector is then rescaled exactly.
    pub fn new(dims: SubsystemDims, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::Incompatible(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                dims.total()
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        let amplitudes = if norm_sq == 1.0 {
            amplitudes
        } else {
            amplitudes.into_iter().map(|z| z * inv).collect()
        };
        Ok(Self { dims, amplitudes })
    }

    /// Real amplitudes listed in flat-index order.
    pub fn from_real(dims: SubsystemDims, amplitudes: &[f64]) -> Result<Self> {
        Self::new(dims, amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }
}

/// `|ψ><ψ|`.
pub fn pure_state_density(psi: &PureState) -> DensityOperator {
    let mut matrix = CMatrix::outer(&psi.amplitudes, &psi.amplitudes);
    for i in 0..matrix.dim() {
        matrix[(i, i)].im = 0.0;
    }
    DensityOperator {
        dims: psi.dims.clone(),
        matrix,
    }
}

/// The blocks `R_0 … R_N` of a state, `R_K` holding the entries whose bra and
/// ket labels differ in exactly `K` subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceSplit {
    parts: Vec<CMatrix>,
}

impl CoherenceSplit {
    pub fn parts(&self) -> &[CMatrix] {
        &self.parts
    }

    /// `R_K`.
    pub fn part(&self, k: usize) -> &CMatrix {
        &self.parts[k]
    }

    pub fn sum(&self) -> CMatrix {
        let n = self.parts[0].dim();
        self.parts
            .iter()
            .fold(CMatrix::zeros(n), |acc, r| acc.add(r))
    }

    /// Nonzero entries of `R_K` (modulus above `threshold`) and the largest modulus.
    pub fn block_summary(&self, k: usize, threshold: f64) -> (usize, f64) {
        let part = &self.parts[k];
        let mut count = 0;
        let mut largest = 0.0f64;
        for z in part.as_slice() {
            let m = z.norm();
            if m > threshold {
                count += 1;
            }
            largest = largest.max(m);
        }
        (count, largest)
    }
}

pub fn coherence_split(rho: &DensityOperator) -> CoherenceSplit {
    let dims = rho.dims();
    let d = dims.total();
    let mut parts: Vec<CMatrix> = (0..=dims.len()).map(|_| CMatrix::zeros(d)).collect();
    let m = rho.matrix();
    for a in 0..d {
        for b in 0..d {
            parts[dims.weight_between(a, b)][(a, b)] = m[(a, b)];
        }
    }
    CoherenceSplit { parts }
}

/// Parameters of a single-qubit rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationParams {
    /// `[[cos θ, sin θ], [-sin θ, cos θ]]`.
    RealAngle(f64),
    /// `Rz(α) Ry(β) Rz(γ)` with `Rz(φ) = diag(e^{-iφ/2}, e^{iφ/2})` and
    /// `Ry(β) = [[cos β/2, -sin β/2], [sin β/2, cos β/2]]`.
    Euler { alpha: f64, beta: f64, gamma: f64 },
}

impl RotationParams {
    pub fn angles(&self) -> Vec<f64> {
        match *self {
            RotationParams::RealAngle(t) => alloc::vec![t],
            RotationParams::Euler { alpha, beta, gamma } => alloc::vec![alpha, beta, gamma],
        }
    }
}

/// A 2x2 unitary together with the parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalRotation {
    params: RotationParams,
    matrix: [[C64; 2]; 2],
}

impl LocalRotation {
    pub fn identity() -> Self {
        Self::new(RotationParams::RealAngle(0.0))
    }

    pub fn real_angle(theta: f64) -> Self {
        Self::new(RotationParams::RealAngle(theta))
    }

    pub fn euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::new(RotationParams::Euler { alpha, beta, gamma })
    }

    pub fn new(params: RotationParams) -> Self {
        let matrix = match params {
            RotationParams::RealAngle(t) => {
                let (s, c) = t.sin_cos();
                [
                    [C64::new(c, 0.0), C64::new(s, 0.0)],
                    [C64::new(-s, 0.0), C64::new(c, 0.0)],
                ]
            }
            RotationParams::Euler { alpha, beta, gamma } => {
                let (sb, cb) = (beta / 2.0).sin_cos();
                let phase = |x: f64| C64::new(x.cos(), x.sin());
                let sum = (alpha + gamma) / 2.0;
                let diff = (alpha - gamma) / 2.0;
                [
                    [phase(-sum) * cb, -phase(-diff) * sb],
                    [phase(diff) * sb, phase(sum) * cb],
                ]
            }
        };
        Self { params, matrix }
    }

    /// Uses an explicit unitary; `params` is kept only as a record.
    pub fn from_matrix(params: RotationParams, matrix: [[C64; 2]; 2]) -> Result<Self> {
        let r = Self { params, matrix };
        let dev = r.unitarity_deviation();
        if dev > 1e-12 {
            return Err(Error::OutOfDomain(format!(
                "matrix is not unitary (deviation {dev:e})"
            )));
        }
        Ok(r)
    }

    pub fn params(&self) -> RotationParams {
        self.params
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        self.matrix
    }

    /// Max entry of `|U U† - I|`.
    #[allow(clippy::needless_range_loop)]
    pub fn unitarity_deviation(&self) -> f64 {
        let u = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..2 {
                    s += u[i][k] * u[j][k].conj();
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    fn is_identity(&self) -> bool {
        self.matrix[0][0] == C64::new(1.0, 0.0)
            && self.matrix[1][1] == C64::new(1.0, 0.0)
            && self.matrix[0][1] == C64::new(0.0, 0.0)
            && self.matrix[1][0] == C64::new(0.0, 0.0)
    }
}

/// One rotation per subsystem, in subsystem order.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRotationSet {
    rotations: Vec<LocalRotation>,
}

impl LocalRotationSet {
    pub fn new(rotations: Vec<LocalRotation>) -> Self {
        Self { rotations }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rotations: alloc::vec![LocalRotation::identity(); n],
        }
    }

    pub fn rotations(&self) -> &[LocalRotation] {
        &self.rotations
    }

    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }

    pub fn set(&mut self, m: usize, r: LocalRotation) {
        self.rotations[m] = r;
    }

    /// `U_N ⊗ … ⊗ U_1`, acting on the flat-index basis.
    pub fn full_matrix(&self) -> CMatrix {
        let mut full = CMatrix::identity(1);
        for r in self.rotations.iter().rev() {
            let u = r.matrix();
            let m = CMatrix::from_rows(&[alloc::vec![u[0][0], u[0][1]], alloc::vec![u[1][0], u[1][1]]])
                .expect("2x2");
            full = full.kron(&m);
        }
        full
    }
}

/// `(U_1 ⊗ … ⊗ U_N) ρ (U_1 ⊗ … ⊗ U_N)†`.
pub fn apply_local_unitary(rho: &DensityOperator, u: &LocalRotationSet) -> Result<DensityOperator> {
    let dims = rho.dims();
    if u.len() != dims.len() {
        return Err(Error::Incompatible(format!(
            "{} rotations for {} subsystems",
            u.len(),
            dims.len()
        )));
    }
    let mut m = rho.matrix().clone();
    for (q, r) in u.rotations().iter().enumerate() {
        if r.is_identity() {
            continue;
        }
        if dims.dim(q) != 2 {
            return Err(Error::Incompatible(format!(
                "subsystem {q} has dimension {}, local rotations are 2x2",
                dims.dim(q)
            )));
        }
        m = rotate_qubit(&m, dims, q, &r.matrix());
    }
    for i in 0..m.dim() {
        m[(i, i)].im = 0.0;
    }
    Ok(DensityOperator::from_parts_unchecked(dims.clone(), m))
}

fn rotate_qubit(m: &CMatrix, dims: &SubsystemDims, q: usize, u: &[[C64; 2]; 2]) -> CMatrix {
    let d = dims.total();
    let stride = dims.stride(q);
    // rows: M <- U M
    let mut left = m.clone();
    for a0 in (0..d).filter(|&a| dims.digit(a, q) == 0) {
        let a1 = a0 + stride;
        for b in 0..d {
            let x0 = m[(a0, b)];
            let x1 = m[(a1, b)];
            left[(a0, b)] = u[0][0] * x0 + u[0][1] * x1;
            left[(a1, b)] = u[1][0] * x0 + u[1][1] * x1;
        }
    }
    // columns: M <- M U†
    let mut out = left.clone();
    for b0 in (0..d).filter(|&b| dims.digit(b, q) == 0) {
        let b1 = b0 + stride;
        for a in 0..d {
            let x0 = left[(a, b0)];
            let x1 = left[(a, b1)];
            out[(a, b0)] = x0 * u[0][0].conj() + x1 * u[0][1].conj();
            out[(a, b1)] = x0 * u[1][0].conj() + x1 * u[1][1].conj();
        }
    }
    out
}
