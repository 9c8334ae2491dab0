//! Global, K-way and partial K-way negativities.
//!
//! For a Hermitian, unit-trace matrix `M` the negativity is `‖M‖₁ - 1`, twice
//! the summed magnitude of its negative eigenvalues. The partial K-way
//! negativity of subsystem `p` is
//!
//! ```text
//! E_K^p = -2 Tr(P₋ ρ_K^{T_p})
//! ```
//!
//! where `P₋` projects onto the strictly negative eigenspace of the global
//! transpose `ρ^{T_p}`. Only `P₋` enters, so the value does not depend on how a
//! degenerate negative eigenspace is spanned.

use alloc::vec::Vec;

use crate::eigen::{hermitian_eigensystem, hermitian_eigenvalues};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::state::DensityOperator;
use crate::transpose::{global_partial_transpose, kway_partial_transpose};

/// Eigenvalues below `-NEGATIVE_EIGENVALUE_CUTOFF` count as negative, both in
/// negativity sums and in the negative-eigenspace projector.
pub const NEGATIVE_EIGENVALUE_CUTOFF: f64 = 1e-10;

/// `N_G^p` above this marks subsystem `p` as NPT.
pub const NPT_THRESHOLD: f64 = 1e-9;

const TRACE_TOL: f64 = 1e-9;

fn negativity_from_values(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .filter(|&&x| x < -NEGATIVE_EIGENVALUE_CUTOFF)
        .map(|x| -x)
        .sum();
    // an empty sum is -0.0
    2.0 * s + 0.0
}

/// `‖M‖₁ - 1` for a Hermitian matrix of unit trace.
pub fn negativity_of(m: &CMatrix) -> Result<f64> {
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::Trace { trace });
    }
    Ok(negativity_from_values(&hermitian_eigenvalues(m)?))
}

/// `N_G` for the transpose over `subset`.
pub fn global_negativity(rho: &DensityOperator, subset: &[usize]) -> Result<f64> {
    negativity_of(&global_partial_transpose(rho, subset)?)
}

/// `N_K^p`.
pub fn kway_negativity(rho: &DensityOperator, p: usize, k: usize) -> Result<f64> {
    negativity_of(&kway_partial_transpose(rho, p, k)?)
}

/// Partial K-way negativities of one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialNegativities {
    /// `N_G^p`.
    pub global: f64,
    /// `E_K^p` for `K = 2..=N`, stored at index `K - 2`.
    pub values: Vec<f64>,
    /// `N_G^p - Σ_K E_K^p`.
    pub residual: f64,
    /// `Tr(P₋ ρ)`, the weight of the state itself on the negative eigenspace.
    pub state_overlap: f64,
}

impl PartialNegativities {
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 2]
    }
}

pub fn partial_kway_negativities(rho: &DensityOperator, p: usize) -> Result<PartialNegativities> {
    Ok(subsystem_analysis(rho, p)?.partial)
}

struct SubsystemAnalysis {
    partial: PartialNegativities,
    kway: Vec<f64>,
}

fn subsystem_analysis(rho: &DensityOperator, p: usize) -> Result<SubsystemAnalysis> {
    let n = rho.dims().len();
    if n < 2 {
        return Err(Error::Scope("need at least two subsystems".into()));
    }
    let global_t = global_partial_transpose(rho, &[p])?;
    let eig = hermitian_eigensystem(&global_t)?;
    let global = negativity_from_values(&eig.values);
    let negative: Vec<Vec<_>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < -NEGATIVE_EIGENVALUE_CUTOFF)
        .map(|(i, _)| eig.vector(i))
        .collect();

    let projected =
        |m: &CMatrix| -> f64 { negative.iter().map(|v| m.expectation(v).re).sum::<f64>() + 0.0 };

    let mut values = Vec::with_capacity(n - 1);
    let mut kway = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let t = kway_partial_transpose(rho, p, k)?;
        values.push(-2.0 * projected(&t));
        kway.push(negativity_of(&t)?);
    }
    let residual = global - values.iter().sum::<f64>();
    Ok(SubsystemAnalysis {
        partial: PartialNegativities {
            global,
            values,
            residual,
            state_overlap: projected(rho.matrix()),
        },
        kway,
    })
}

/// Whether a subsystem's partial transpose has a negative eigenvalue.
///
/// PPT does not certify separability for more than two qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransposeClass {
    Ppt,
    Npt,
}

impl TransposeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransposeClass::Ppt => "PPT",
            TransposeClass::Npt => "NPT",
        }
    }
}

/// Every negativity of a state, subsystem by subsystem.
///
/// Subsystem indices are zero-based; `k` arguments are coherence weights `2..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport {
    n: usize,
    global: Vec<f64>,
    kway: Vec<Vec<f64>>,
    partial: Vec<Vec<f64>>,
    residual: Vec<f64>,
    state_overlap: Vec<f64>,
    flags: Vec<TransposeClass>,
}

impl NegativityReport {
    pub fn subsystems(&self) -> usize {
        self.n
    }

    /// `N_G^p`.
    pub fn global(&self, p: usize) -> f64 {
        self.global[p]
    }

    /// `N_K^p`.
    pub fn kway(&self, p: usize, k: usize) -> f64 {
        self.kway[p][k - 2]
    }

    /// `E_K^p`.
    pub fn partial(&self, p: usize, k: usize) -> f64 {
        self.partial[p][k - 2]
    }

    /// `E_K^p / N_K^p`, absent when `N_K^p` vanishes.
    pub fn fraction(&self, p: usize, k: usize) -> Option<f64> {
        let nk = self.kway(p, k);
        (nk > NEGATIVE_EIGENVALUE_CUTOFF).then(|| self.partial(p, k) / nk)
    }

    /// `N_G^p - Σ_K E_K^p`.
    pub fn residual(&self, p: usize) -> f64 {
        self.residual[p]
    }

    /// `Tr(P₋ ρ)` for subsystem `p`; the residual equals `2 (N-2)` times this
    /// whenever the K-way transposes reassemble the global one.
    pub fn state_overlap(&self, p: usize) -> f64 {
        self.state_overlap[p]
    }

    pub fn flag(&self, p: usize) -> TransposeClass {
        self.flags[p]
    }

    /// `Σ_p N_K^p`.
    pub fn total_kway(&self, k: usize) -> f64 {
        (0..self.n).map(|p| self.kway(p, k)).sum()
    }

    /// `min_p E_K^p`.
    pub fn min_partial(&self, k: usize) -> f64 {
        (0..self.n)
            .map(|p| self.partial(p, k))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn full_report(rho: &DensityOperator) -> Result<NegativityReport> {
    let n = rho.dims().len();
    let mut report = NegativityReport {
        n,
        global: Vec::with_capacity(n),
        kway: Vec::with_capacity(n),
        partial: Vec::with_capacity(n),
        residual: Vec::with_capacity(n),
        state_overlap: Vec::with_capacity(n),
        flags: Vec::with_capacity(n),
    };
    for p in 0..n {
        let a = subsystem_analysis(rho, p)?;
        report.flags.push(if a.partial.global > NPT_THRESHOLD {
            TransposeClass::Npt
        } else {
            TransposeClass::Ppt
        });
        report.global.push(a.partial.global);
        report.kway.push(a.kway);
        report.partial.push(a.partial.values);
        report.residual.push(a.partial.residual);
        report.state_overlap.push(a.partial.state_overlap);
    }
    Ok(report)
}

/// `min_p E_3^p` of a three-subsystem report, meant for a coherence-minimized state.
pub fn genuine_tripartite_measure(report: &NegativityReport) -> Result<f64> {
    if report.subsystems() != 3 {
        return Err(Error::Scope(alloc::format!(
            "tripartite measure needs 3 subsystems, got {}",
            report.subsystems()
        )));
    }
    Ok(report.min_partial(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::SubsystemDims;
    use crate::matrix::C64;
    use crate::state::{pure_state_density, PureState};
    use crate::transpose::global_partial_transpose;
    use alloc::vec;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn ghz() -> DensityOperator {
        let mut amps = vec![0.0; 8];
        amps[0] = H;
        amps[7] = H;
        pure_state_density(&PureState::from_real(SubsystemDims::three_qubits(), &amps).unwrap())
    }

    fn w() -> DensityOperator {
        let s = 1.0 / 3f64.sqrt();
        let mut amps = vec![0.0; 8];
        amps[1] = s;
        amps[2] = s;
        amps[4] = s;
        pure_state_density(&PureState::from_real(SubsystemDims::three_qubits(), &amps).unwrap())
    }

    const W_NEG: f64 = 0.942_809_041_582_063_4; // 2√2/3

    #[test]
    fn ghz_values() {
        let g = ghz();
        let r = full_report(&g).unwrap();
        for p in 0..3 {
            assert!((r.global(p) - 1.0).abs() < 1e-12);
            assert!((r.kway(p, 3) - 1.0).abs() < 1e-12);
            assert!(r.kway(p, 2).abs() < 1e-12);
            assert!((r.partial(p, 3) - 1.0).abs() < 1e-12);
            assert!(r.partial(p, 2).abs() < 1e-12);
            assert!(r.residual(p).abs() < 1e-12);
            assert_eq!(r.flag(p), TransposeClass::Npt);
            assert_eq!(r.fraction(p, 2), None);
            assert!((r.fraction(p, 3).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((genuine_tripartite_measure(&r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_values() {
        let wm = w();
        for p in 0..3 {
            assert!((global_negativity(&wm, &[p]).unwrap() - W_NEG).abs() < 1e-12);
            assert!((kway_negativity(&wm, p, 2).unwrap() - W_NEG).abs() < 1e-12);
            let e = partial_kway_negativities(&wm, p).unwrap();
            assert!((e.get(2) - W_NEG).abs() < 1e-12);
            assert!(e.get(3).abs() < 1e-12);
            assert!(e.residual.abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_is_zero() {
        let m = DensityOperator::maximally_mixed(SubsystemDims::three_qubits());
        assert_eq!(negativity_of(m.matrix()).unwrap(), 0.0);
        let r = full_report(&m).unwrap();
        for p in 0..3 {
            assert_eq!(r.global(p), 0.0);
            assert_eq!(r.partial(p, 2), 0.0);
            assert_eq!(r.partial(p, 3), 0.0);
            assert_eq!(r.flag(p), TransposeClass::Ppt);
        }
    }

    #[test]
    fn negativity_requires_unit_trace() {
        assert!(matches!(
            negativity_of(&CMatrix::identity(2)),
            Err(Error::Trace { .. })
        ));
    }

    #[test]
    fn scope_error_for_non_tripartite() {
        let mut amps = vec![0.0; 4];
        amps[0] = H;
        amps[3] = H;
        let bell = pure_state_density(&PureState::from_real(SubsystemDims::qubits(2), &amps).unwrap());
        let r = full_report(&bell).unwrap();
        assert!((r.global(0) - 1.0).abs() < 1e-12);
        assert!(matches!(genuine_tripartite_measure(&r), Err(Error::Scope(_))));
    }

    #[test]
    fn mixed_state_residual_is_twice_state_overlap() {
        // 0.5 GHZ + 0.5 I/8: the GHZ negative eigenvector has weight 1/16 on the state
        let g = ghz();
        let m = DensityOperator::maximally_mixed(SubsystemDims::three_qubits());
        let rho = g.mix(&m, 0.5).unwrap();
        let e = partial_kway_negativities(&rho, 0).unwrap();
        assert!((e.global - 0.375).abs() < 1e-12);
        assert!((e.state_overlap - 1.0 / 16.0).abs() < 1e-12);
        assert!((e.residual - 2.0 * e.state_overlap).abs() < 1e-12);
    }

    #[test]
    fn complex_state_overlap_and_residual() {
        // complex amplitudes break the orthogonality between the state and the
        // negative eigenspace, and the K-way transposes no longer reassemble the
        // global one; the residual accounts for both
        let amps = vec![
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.5),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, H),
        ];
        let rho = pure_state_density(&PureState::new(SubsystemDims::three_qubits(), amps).unwrap());
        let r = full_report(&rho).unwrap();
        assert!(r.state_overlap(0) > 0.07);
        assert!(crate::transpose::reconstruction_residual(&rho, 0).unwrap() > 0.1);
        for p in 0..3 {
            let t = global_partial_transpose(&rho, &[p]).unwrap();
            let mut delta = t.add(&rho.matrix().scale(1.0));
            for k in 2..=3 {
                delta = delta.sub(&kway_partial_transpose(&rho, p, k).unwrap());
            }
            let eig = hermitian_eigensystem(&t).unwrap();
            let defect: f64 = (0..8)
                .filter(|&i| eig.values[i] < -NEGATIVE_EIGENVALUE_CUTOFF)
                .map(|i| delta.expectation(&eig.vector(i)).re)
                .sum();
            let expected = 2.0 * r.state_overlap(p) - 2.0 * defect;
            assert!((r.residual(p) - expected).abs() < 1e-10, "p={p}");
        }
    }
}
