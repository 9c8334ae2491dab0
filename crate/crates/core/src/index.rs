//! Basis labels for tensor-product spaces.
//!
//! A basis vector `|i_1 i_2 ... i_N>` is identified by its flat index
//! `j = Σ_m i_m · d_1 ⋯ d_{m-1}` (subsystem 1 is the least significant digit)
//! and by its weight `μ = Σ_m i_m`, the number of local raising steps from the
//! all-zero reference state.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dimensions `d_1 … d_N` of the subsystems, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemDims {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl SubsystemDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("at least one subsystem is required".into()));
        }
        if let Some((m, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::InvalidDims(format!(
                "subsystem {m} has dimension {d}, need at least 2"
            )));
        }
        let mut strides = Vec::with_capacity(dims.len());
        let mut total = 1usize;
        for &d in &dims {
            strides.push(total);
            total = total
                .checked_mul(d)
                .ok_or_else(|| Error::InvalidDims("total dimension overflows".into()))?;
        }
        Ok(Self {
            dims,
            strides,
            total,
        })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self::new(alloc::vec![2; n]).expect("qubit dims are valid")
    }

    pub fn three_qubits() -> Self {
        Self::qubits(3)
    }

    /// Number of subsystems `N`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total dimension `D = Π d_m`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, m: usize) -> usize {
        self.dims[m]
    }

    /// Place value of subsystem `m`'s digit in a flat index.
    pub fn stride(&self, m: usize) -> usize {
        self.strides[m]
    }

    pub fn all_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Digit of subsystem `m` in flat index `j` (no range check).
    #[inline]
    pub fn digit(&self, j: usize, m: usize) -> usize {
        (j / self.strides[m]) % self.dims[m]
    }

    /// Number of subsystems whose digits differ between flat indices `a` and `b`.
    #[inline]
    pub fn weight_between(&self, a: usize, b: usize) -> usize {
        (0..self.dims.len())
            .filter(|&m| self.digit(a, m) != self.digit(b, m))
            .count()
    }

    /// Exchanges the digits of subsystem `m` between flat indices `a` and `b`.
    #[inline]
    pub fn swap_digit(&self, a: usize, b: usize, m: usize) -> (usize, usize) {
        let (da, db) = (self.digit(a, m), self.digit(b, m));
        let s = self.strides[m];
        (a - da * s + db * s, b - db * s + da * s)
    }

    pub fn label(&self, j: usize) -> Result<BasisLabel> {
        let digits = digits_of(j, self)?;
        Ok(BasisLabel {
            weight: digits.iter().sum(),
            digits,
            index: j,
            dims: self.clone(),
        })
    }
}

/// A computational basis vector: its digits, flat index `j` and weight `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    digits: Vec<usize>,
    index: usize,
    weight: usize,
    dims: SubsystemDims,
}

impl BasisLabel {
    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// Flat index `j`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Digit sum `μ`.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }
}

pub fn flat_index(digits: &[usize], dims: &SubsystemDims) -> Result<BasisLabel> {
    if digits.len() != dims.len() {
        return Err(Error::Incompatible(format!(
            "{} digits given for {} subsystems",
            digits.len(),
            dims.len()
        )));
    }
    let mut index = 0;
    for (m, &digit) in digits.iter().enumerate() {
        if digit >= dims.dim(m) {
            return Err(Error::DigitRange {
                subsystem: m,
                digit,
                dim: dims.dim(m),
            });
        }
        index += digit * dims.stride(m);
    }
    Ok(BasisLabel {
        digits: digits.to_vec(),
        index,
        weight: digits.iter().sum(),
        dims: dims.clone(),
    })
}

pub fn digits_of(j: usize, dims: &SubsystemDims) -> Result<Vec<usize>> {
    if j >= dims.total() {
        return Err(Error::IndexRange {
            index: j,
            total: dims.total(),
        });
    }
    Ok((0..dims.len()).map(|m| dims.digit(j, m)).collect())
}

/// Number of subsystems whose state differs between `a` and `b`.
///
/// For qubits this is `Σ_m |i'_m - i_m|`.
pub fn coherence_weight(a: &BasisLabel, b: &BasisLabel) -> Result<usize> {
    if a.dims != b.dims {
        return Err(Error::Incompatible(
            "basis labels belong to different subsystem dimensions".into(),
        ));
    }
    Ok(a.digits
        .iter()
        .zip(&b.digits)
        .filter(|(x, y)| x != y)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn q3() -> SubsystemDims {
        SubsystemDims::three_qubits()
    }

    #[test]
    fn flat_index_examples() {
        let l = flat_index(&[0, 0, 0], &q3()).unwrap();
        assert_eq!((l.index(), l.weight()), (0, 0));
        let l = flat_index(&[1, 1, 0], &q3()).unwrap();
        assert_eq!((l.index(), l.weight()), (3, 2));
        let l = flat_index(&[1, 0, 1], &q3()).unwrap();
        assert_eq!((l.index(), l.weight()), (5, 2));
    }

    #[test]
    fn flat_index_rejects_bad_digit() {
        let err = flat_index(&[0, 2, 0], &q3()).unwrap_err();
        assert_eq!(
            err,
            Error::DigitRange {
                subsystem: 1,
                digit: 2,
                dim: 2
            }
        );
    }

    #[test]
    fn digits_of_examples() {
        assert_eq!(digits_of(0, &q3()).unwrap(), vec![0, 0, 0]);
        assert_eq!(digits_of(3, &q3()).unwrap(), vec![1, 1, 0]);
        assert_eq!(digits_of(7, &q3()).unwrap(), vec![1, 1, 1]);
        assert!(matches!(
            digits_of(8, &q3()),
            Err(Error::IndexRange { index: 8, total: 8 })
        ));
    }

    #[test]
    fn mixed_radix_strides() {
        let dims = SubsystemDims::new(vec![2, 3, 2]).unwrap();
        assert_eq!(dims.total(), 12);
        let l = flat_index(&[1, 2, 1], &dims).unwrap();
        assert_eq!(l.index(), 1 + 2 * 2 + 6);
        assert_eq!(l.weight(), 4);
    }

    #[test]
    fn invalid_dims() {
        assert!(SubsystemDims::new(vec![]).is_err());
        assert!(SubsystemDims::new(vec![2, 1]).is_err());
    }

    #[test]
    fn coherence_weight_examples() {
        let d = q3();
        let w = |x: &[usize], y: &[usize]| {
            coherence_weight(&flat_index(x, &d).unwrap(), &flat_index(y, &d).unwrap()).unwrap()
        };
        assert_eq!(w(&[0, 0, 0], &[1, 1, 1]), 3);
        assert_eq!(w(&[1, 0, 0], &[0, 1, 1]), 3);
        assert_eq!(w(&[0, 1, 0], &[0, 1, 1]), 1);
        assert_eq!(w(&[1, 0, 1], &[1, 0, 1]), 0);
    }

    #[test]
    fn coherence_weight_rejects_mismatched_dims() {
        let a = flat_index(&[0, 0, 0], &q3()).unwrap();
        let b = flat_index(&[0, 0, 0], &SubsystemDims::new(vec![2, 2, 3]).unwrap()).unwrap();
        assert!(matches!(coherence_weight(&a, &b), Err(Error::Incompatible(_))));
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn pair_counts_match_binomials() {
        for n in 1..=5 {
            let d = SubsystemDims::qubits(n);
            let mut counts = vec![0usize; n + 1];
            for a in 0..d.total() {
                for b in 0..d.total() {
                    counts[d.weight_between(a, b)] += 1;
                }
            }
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(c, (1 << n) * binom(n, k), "n={n} k={k}");
            }
        }
        // the 3-way column of the three-qubit T_3^1 map has 8 rows
        let d = q3();
        let count = (0..8)
            .flat_map(|a| (0..8).map(move |b| (a, b)))
            .filter(|&(a, b)| d.weight_between(a, b) == 3)
            .count();
        assert_eq!(count, 8);
    }

    fn dims_strategy() -> impl Strategy<Value = SubsystemDims> {
        proptest::collection::vec(2usize..5, 1..5).prop_map(|d| SubsystemDims::new(d).unwrap())
    }

    proptest! {
        #[test]
        fn round_trip(dims in dims_strategy(), seed in 0usize..10_000) {
            let j = seed % dims.total();
            let digits = digits_of(j, &dims).unwrap();
            prop_assert_eq!(flat_index(&digits, &dims).unwrap().index(), j);
        }

        #[test]
        fn qubit_weight_is_distance_from_zero(n in 1usize..7, seed in 0usize..1000) {
            let d = SubsystemDims::qubits(n);
            let a = d.label(seed % d.total()).unwrap();
            let zero = d.label(0).unwrap();
            prop_assert_eq!(a.weight(), coherence_weight(&a, &zero).unwrap());
        }

        #[test]
        fn weight_is_a_metric(n in 1usize..7, x in 0usize..64, y in 0usize..64, z in 0usize..64) {
            let d = SubsystemDims::qubits(n);
            let (a, b, c) = (d.label(x % d.total()).unwrap(), d.label(y % d.total()).unwrap(), d.label(z % d.total()).unwrap());
            let ab = coherence_weight(&a, &b).unwrap();
            prop_assert_eq!(ab, coherence_weight(&b, &a).unwrap());
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(ab <= n);
            prop_assert!(coherence_weight(&a, &c).unwrap() <= ab + coherence_weight(&b, &c).unwrap());
        }
    }
}
