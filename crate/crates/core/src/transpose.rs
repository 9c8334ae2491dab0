//! Global and K-way partial transposes, realized as digit swaps on flat indices.
//!
//! The partial transpose with respect to subsystem `p` moves the entry at
//! `(a, b)` to `(a', b')`, where `a'` and `b'` are `a` and `b` with their
//! subsystem-`p` digits exchanged. The K-way transpose only moves entries whose
//! labels differ in exactly `K` subsystems and leaves everything else in place.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index::SubsystemDims;
use crate::matrix::CMatrix;
use crate::state::{coherence_split, DensityOperator};

/// Which partial transpose to take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransposeSpec {
    /// Transpose every subsystem in the set (nonempty, proper).
    Global(Vec<usize>),
    /// Transpose subsystem `subsystem` inside the weight-`weight` block only.
    KWay { subsystem: usize, weight: usize },
}

impl TransposeSpec {
    pub fn validate(&self, dims: &SubsystemDims) -> Result<()> {
        match self {
            TransposeSpec::Global(subset) => check_subset(subset, dims).map(|_| ()),
            TransposeSpec::KWay { subsystem, weight } => check_kway(*subsystem, *weight, dims),
        }
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<CMatrix> {
        match self {
            TransposeSpec::Global(subset) => global_partial_transpose(rho, subset),
            TransposeSpec::KWay { subsystem, weight } => {
                kway_partial_transpose(rho, *subsystem, *weight)
            }
        }
    }
}

fn check_subset(subset: &[usize], dims: &SubsystemDims) -> Result<Vec<bool>> {
    let n = dims.len();
    let mut mask = alloc::vec![false; n];
    for &m in subset {
        if m >= n {
            return Err(Error::InvalidTranspose(format!(
                "subsystem {m} does not exist ({n} subsystems)"
            )));
        }
        mask[m] = true;
    }
    let chosen = mask.iter().filter(|&&x| x).count();
    if chosen == 0 {
        return Err(Error::InvalidTranspose("empty subsystem set".into()));
    }
    if chosen == n {
        return Err(Error::InvalidTranspose(
            "subsystem set covers the whole system".into(),
        ));
    }
    Ok(mask)
}

fn check_kway(p: usize, k: usize, dims: &SubsystemDims) -> Result<()> {
    let n = dims.len();
    if p >= n {
        return Err(Error::InvalidTranspose(format!(
            "subsystem {p} does not exist ({n} subsystems)"
        )));
    }
    if k < 2 || k > n {
        return Err(Error::InvalidTranspose(format!(
            "weight {k} outside 2..={n}"
        )));
    }
    Ok(())
}

/// Partial transpose of a raw matrix over the subsystems in `subset`.
pub fn global_partial_transpose_matrix(
    m: &CMatrix,
    dims: &SubsystemDims,
    subset: &[usize],
) -> Result<CMatrix> {
    let mask = check_subset(subset, dims)?;
    check_dim(m, dims)?;
    let d = dims.total();
    let mut out = CMatrix::zeros(d);
    for a in 0..d {
        for b in 0..d {
            let (mut a2, mut b2) = (a, b);
            for (q, _) in mask.iter().enumerate().filter(|(_, &on)| on) {
                (a2, b2) = dims.swap_digit(a2, b2, q);
            }
            out[(a2, b2)] = m[(a, b)];
        }
    }
    Ok(out)
}

/// K-way partial transpose of a raw matrix with respect to subsystem `p`.
pub fn kway_partial_transpose_matrix(
    m: &CMatrix,
    dims: &SubsystemDims,
    p: usize,
    k: usize,
) -> Result<CMatrix> {
    check_kway(p, k, dims)?;
    check_dim(m, dims)?;
    let d = dims.total();
    let mut out = m.clone();
    for a in 0..d {
        for b in 0..d {
            if dims.digit(a, p) != dims.digit(b, p) && dims.weight_between(a, b) == k {
                let (a2, b2) = dims.swap_digit(a, b, p);
                out[(a2, b2)] = m[(a, b)];
            }
        }
    }
    Ok(out)
}

fn check_dim(m: &CMatrix, dims: &SubsystemDims) -> Result<()> {
    if m.dim() != dims.total() {
        return Err(Error::Shape {
            expected: dims.total(),
            rows: m.dim(),
            cols: m.dim(),
        });
    }
    Ok(())
}

pub fn global_partial_transpose(rho: &DensityOperator, subset: &[usize]) -> Result<CMatrix> {
    global_partial_transpose_matrix(rho.matrix(), rho.dims(), subset)
}

pub fn kway_partial_transpose(rho: &DensityOperator, p: usize, k: usize) -> Result<CMatrix> {
    kway_partial_transpose_matrix(rho.matrix(), rho.dims(), p, k)
}

/// Max-entry deviation of `ρ^{T_p}` from `Σ_{K=2}^{N} ρ_K^{T_p} - (N-2) ρ`.
///
/// Zero when the weight-1 entries that involve subsystem `p` are real; complex
/// ones are conjugated by the global transpose but not by any K-way transpose.
pub fn reconstruction_residual(rho: &DensityOperator, p: usize) -> Result<f64> {
    let n = rho.dims().len();
    if n < 2 {
        return Err(Error::Scope("need at least two subsystems".into()));
    }
    let global = global_partial_transpose(rho, &[p])?;
    let mut sum = rho.matrix().scale(-((n - 2) as f64));
    for k in 2..=n {
        sum = sum.add(&kway_partial_transpose(rho, p, k)?);
    }
    Ok(global.max_abs_diff(&sum))
}

/// `R_K` with subsystem `p` transposed.
pub fn transposed_block(rho: &DensityOperator, p: usize, k: usize) -> Result<CMatrix> {
    let n = rho.dims().len();
    if p >= n || k > n {
        return Err(Error::InvalidTranspose(format!(
            "block {k} of subsystem {p} does not exist ({n} subsystems)"
        )));
    }
    let split = coherence_split(rho);
    let dims = rho.dims();
    let d = dims.total();
    let block = split.part(k);
    let mut out = CMatrix::zeros(d);
    for a in 0..d {
        for b in 0..d {
            let (a2, b2) = dims.swap_digit(a, b, p);
            out[(a2, b2)] = block[(a, b)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eigenvalues;
    use crate::matrix::C64;
    use crate::state::{pure_state_density, PureState};
    use alloc::vec;
    use proptest::prelude::*;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn q3() -> SubsystemDims {
        SubsystemDims::three_qubits()
    }

    fn ghz() -> DensityOperator {
        let mut amps = vec![0.0; 8];
        amps[0] = H;
        amps[7] = H;
        pure_state_density(&PureState::from_real(q3(), &amps).unwrap())
    }

    fn state_from(v: Vec<C64>) -> DensityOperator {
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let v: Vec<C64> = v.into_iter().map(|z| z / norm.sqrt()).collect();
        pure_state_density(&PureState::new(q3(), v).unwrap())
    }

    /// Oracle: `(A ⊗ B)` transposed on subsystem `p` by explicit
    /// `Σ_{ij} (I ⊗ |i><j| ⊗ I) ρ (I ⊗ |i><j| ⊗ I)` construction.
    fn pt_oracle(m: &CMatrix, p: usize) -> CMatrix {
        let mut out = CMatrix::zeros(8);
        for i in 0..2 {
            for j in 0..2 {
                // E_ij on subsystem p
                let mut e = CMatrix::identity(1);
                for q in (0..3).rev() {
                    let mut f = CMatrix::zeros(2);
                    if q == p {
                        f[(i, j)] = C64::new(1.0, 0.0);
                    } else {
                        f = CMatrix::identity(2);
                    }
                    e = e.kron(&f);
                }
                out = out.add(&e.mul(m).mul(&e));
            }
        }
        out
    }

    #[test]
    fn product_state_unchanged() {
        let mut amps = vec![0.0; 8];
        amps[0] = 1.0;
        let rho = pure_state_density(&PureState::from_real(q3(), &amps).unwrap());
        let t = global_partial_transpose(&rho, &[0]).unwrap();
        assert_eq!(&t, rho.matrix());
        assert!(hermitian_eigenvalues(&t).unwrap().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn ghz_transpose_spectrum() {
        let t = global_partial_transpose(&ghz(), &[0]).unwrap();
        let vals = hermitian_eigenvalues(&t).unwrap();
        let expected = [-0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.5];
        for (x, y) in vals.iter().zip(&expected) {
            assert!((x - y).abs() < 1e-14, "{vals:?}");
        }
    }

    #[test]
    fn global_matches_projector_oracle() {
        let rho = state_from((0..8).map(|i| C64::new(i as f64 - 3.0, (i * i) as f64 * 0.1)).collect());
        for p in 0..3 {
            let t = global_partial_transpose(&rho, &[p]).unwrap();
            assert!(t.max_abs_diff(&pt_oracle(rho.matrix(), p)) < 1e-15);
        }
        let t = global_partial_transpose(&rho, &[0, 2]).unwrap();
        let o = pt_oracle(&pt_oracle(rho.matrix(), 0), 2);
        assert!(t.max_abs_diff(&o) < 1e-15);
    }

    #[test]
    fn subset_errors() {
        let g = ghz();
        assert!(matches!(global_partial_transpose(&g, &[]), Err(Error::InvalidTranspose(_))));
        assert!(matches!(global_partial_transpose(&g, &[0, 1, 2]), Err(Error::InvalidTranspose(_))));
        assert!(matches!(global_partial_transpose(&g, &[3]), Err(Error::InvalidTranspose(_))));
        assert!(matches!(kway_partial_transpose(&g, 0, 1), Err(Error::InvalidTranspose(_))));
        assert!(matches!(kway_partial_transpose(&g, 0, 4), Err(Error::InvalidTranspose(_))));
        assert!(TransposeSpec::KWay { subsystem: 2, weight: 3 }.validate(&q3()).is_ok());
    }

    #[test]
    fn ghz_kway_cases() {
        let g = ghz();
        assert_eq!(
            kway_partial_transpose(&g, 0, 3).unwrap(),
            global_partial_transpose(&g, &[0]).unwrap()
        );
        assert_eq!(&kway_partial_transpose(&g, 0, 2).unwrap(), g.matrix());
    }

    #[test]
    fn three_way_column_permutation() {
        // entries (000,111), (100,011), (010,101), (110,001), (001,110), (101,010), (011,100), (111,000)
        let label = |s: &str| s.bytes().enumerate().map(|(m, c)| ((c - b'0') as usize) << m).sum::<usize>();
        let column = [
            ("000", "111"),
            ("100", "011"),
            ("010", "101"),
            ("110", "001"),
            ("001", "110"),
            ("101", "010"),
            ("011", "100"),
            ("111", "000"),
        ];
        let mut m = CMatrix::zeros(8);
        for (i, (a, b)) in column.iter().enumerate() {
            m[(label(a), label(b))] = C64::new((i + 1) as f64, 0.0);
        }
        let t = kway_partial_transpose_matrix(&m, &q3(), 0, 3).unwrap();
        let expected_order = [2, 1, 4, 3, 6, 5, 8, 7];
        for (i, (a, b)) in column.iter().enumerate() {
            assert_eq!(t[(label(a), label(b))].re, expected_order[i] as f64);
        }
    }

    fn complex_state() -> impl Strategy<Value = DensityOperator> {
        proptest::collection::vec(-1.0f64..1.0, 16)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| state_from(v.chunks(2).map(|c| C64::new(c[0], c[1])).collect()))
    }

    fn real_state() -> impl Strategy<Value = DensityOperator> {
        proptest::collection::vec(-1.0f64..1.0, 8)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| state_from(v.into_iter().map(|x| C64::new(x, 0.0)).collect()))
    }

    proptest! {
        #[test]
        fn involution(rho in complex_state(), p in 0usize..3) {
            let once = global_partial_transpose(&rho, &[p]).unwrap();
            let twice = global_partial_transpose_matrix(&once, &q3(), &[p]).unwrap();
            prop_assert!(twice.max_abs_diff(rho.matrix()) <= 1e-15);
        }

        #[test]
        fn trace_and_hermiticity_preserved(rho in complex_state(), p in 0usize..3, k in 2usize..4) {
            for t in [global_partial_transpose(&rho, &[p]).unwrap(), kway_partial_transpose(&rho, p, k).unwrap()] {
                prop_assert!((t.trace().re - 1.0).abs() <= 1e-14);
                prop_assert!(t.hermitian_asymmetry() <= 1e-14);
            }
        }

        #[test]
        fn kway_touches_only_its_block(rho in complex_state(), p in 0usize..3, k in 2usize..4) {
            let dims = q3();
            let t = kway_partial_transpose(&rho, p, k).unwrap();
            for a in 0..8 {
                for b in 0..8 {
                    if dims.weight_between(a, b) != k || dims.digit(a, p) == dims.digit(b, p) {
                        prop_assert_eq!(t[(a, b)], rho.matrix()[(a, b)]);
                    }
                }
            }
            // ρ - R_K + R_K^{T_p}
            let split = coherence_split(&rho);
            let expected = rho.matrix().sub(split.part(k)).add(&transposed_block(&rho, p, k).unwrap());
            prop_assert!(t.max_abs_diff(&expected) == 0.0);
        }

        #[test]
        fn reconstruction_identity_for_real_states(rho in real_state(), p in 0usize..3) {
            prop_assert!(reconstruction_residual(&rho, p).unwrap() <= 1e-13);
        }

        #[test]
        fn reconstruction_residual_is_the_weight_one_imaginary_part(rho in complex_state(), p in 0usize..3) {
            // ρ_G - (Σ ρ_K - ρ) = R_1^{T_p} - R_1, nonzero only through Im of the
            // weight-1 entries that flip subsystem p.
            let dims = q3();
            let mut expected = 0.0f64;
            for a in 0..8 {
                for b in 0..8 {
                    if dims.weight_between(a, b) == 1 && dims.digit(a, p) != dims.digit(b, p) {
                        expected = expected.max(2.0 * rho.matrix()[(a, b)].im.abs());
                    }
                }
            }
            let r = reconstruction_residual(&rho, p).unwrap();
            prop_assert!((r - expected).abs() <= 1e-14);
        }
    }
}
