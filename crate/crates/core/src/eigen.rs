//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `A[p][q]`, then applies
//! the real symmetric Schur rotation to the 2x2 block. Sweeps run in fixed
//! row-major pivot order, so identical input bits give identical output bits.

use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64};
// inherent float methods shadow these when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

/// Maximum Hermitian asymmetry accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Sweep cap per unit of matrix dimension.
pub const SWEEPS_PER_DIM: usize = 100;

/// Eigenvalues in ascending order with column-aligned orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector of `values[i]`.
    pub vectors: CMatrix,
}

impl Eigensystem {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        let n = self.vectors.dim();
        (0..n).map(|r| self.vectors[(r, i)]).collect()
    }

    /// `Σ λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.vectors.dim();
        let mut m = CMatrix::zeros(n);
        for (i, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(i);
            for a in 0..n {
                for b in 0..n {
                    m[(a, b)] += v[a] * v[b].conj() * lambda;
                }
            }
        }
        m
    }
}

pub fn hermitian_eigensystem(m: &CMatrix) -> Result<Eigensystem> {
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("vectors requested");
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let mut sorted = CMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            sorted[(r, dst)] = vectors[(r, src)];
        }
    }
    Ok(Eigensystem {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: sorted,
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[(p, q)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    let asymmetry = m.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let scale = a.frobenius_norm();
    let threshold = 1e-15 * scale;
    let max_sweeps = SWEEPS_PER_DIM * n.max(1);

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold || off == 0.0 {
            break;
        }
        if sweeps >= max_sweeps {
            return Err(Error::NumericFailure {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

/// Annihilates `a[p][q]` with the unitary `V` whose (p,q) block is
/// `[[c, s], [-s e^{-iφ}, c e^{-iφ}]]`, where `φ = arg a[p][q]`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = apq / magnitude; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * magnitude);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let conj_phase = phase.conj();
    let n = a.dim();

    // A <- A V
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * conj_phase * s;
        a[(k, q)] = akp * s + akq * conj_phase * c;
    }
    // A <- V† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * conj_phase * s;
            v[(k, q)] = vkp * s + vkq * conj_phase * c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for a in 0..n {
            m[(a, a)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for b in (a + 1)..n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(a, b)] = z;
                m[(b, a)] = z.conj();
            }
        }
        m
    }

    fn gram_deviation(v: &CMatrix) -> f64 {
        v.adjoint().mul(v).max_abs_diff(&CMatrix::identity(v.dim()))
    }

    #[test]
    fn diagonal_input() {
        let es = hermitian_eigensystem(&CMatrix::diagonal(&[0.5, 0.5])).unwrap();
        assert_eq!(es.values, vec![0.5, 0.5]);
    }

    #[test]
    fn two_by_two_complex() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = CMatrix::from_rows(&[
            vec![C64::new(1., 0.), C64::new(0., 1.)],
            vec![C64::new(0., -1.), C64::new(1., 0.)],
        ])
        .unwrap();
        let es = hermitian_eigensystem(&m).unwrap();
        assert!((es.values[0]).abs() < 1e-15);
        assert!((es.values[1] - 2.0).abs() < 1e-15);
        assert!(es.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 4, 8, 16] {
            for _ in 0..20 {
                let m = random_hermitian(n, &mut rng);
                let es = hermitian_eigensystem(&m).unwrap();
                assert!(es.reconstruct().max_abs_diff(&m) <= 1e-10);
                assert!(gram_deviation(&es.vectors) <= 1e-10);
                assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
                let vals = hermitian_eigenvalues(&m).unwrap();
                for (x, y) in vals.iter().zip(&es.values) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut m = CMatrix::identity(8).scale(0.125);
        m[(0, 7)] = C64::new(0.0, 0.125);
        m[(7, 0)] = C64::new(0.0, -0.125);
        let es = hermitian_eigensystem(&m).unwrap();
        assert!(es.reconstruct().max_abs_diff(&m) <= 1e-14);
        assert!(gram_deviation(&es.vectors) <= 1e-14);
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_hermitian(8, &mut rng);
        let a = hermitian_eigensystem(&m).unwrap();
        let b = hermitian_eigensystem(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = C64::new(1e-6, 0.0);
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn zero_matrix() {
        let es = hermitian_eigensystem(&CMatrix::zeros(4)).unwrap();
        assert_eq!(es.values, vec![0.0; 4]);
    }
}
