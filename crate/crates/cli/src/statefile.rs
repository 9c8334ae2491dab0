//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2], "matrix": [[[0.5, 0], [0, 0], ...], ...]}
//! {"dims": [2, 2], "amplitudes": [[0.7071067811865476, 0], [0, 0], ...]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; rows and amplitudes run over flat
//! indices with subsystem 1 as the fastest digit.

use std::path::Path;

use kway_core::{
    pure_state_density, validate_density, CMatrix, DensityOperator, PureState, SubsystemDims,
    ValidationTolerances, C64,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn from_density(rho: &DensityOperator) -> Self {
        let m = rho.matrix();
        Self {
            dims: rho.dims().dims().to_vec(),
            matrix: Some((0..m.dim()).map(|r| m.row(r).iter().copied().map(pair).collect()).collect()),
            amplitudes: None,
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            dims: psi.dims().dims().to_vec(),
            matrix: None,
            amplitudes: Some(psi.amplitudes().iter().copied().map(pair).collect()),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("malformed state file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state files always serialize")
    }

    /// Validates the contents into a density operator.
    pub fn to_density(&self, tol: &ValidationTolerances) -> CliResult<DensityOperator> {
        let dims = SubsystemDims::new(self.dims.clone())?;
        let c = |p: &[f64; 2]| C64::new(p[0], p[1]);
        match (&self.matrix, &self.amplitudes) {
            (Some(rows), None) => {
                let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(c).collect()).collect();
                let m = CMatrix::from_rows(&rows)?;
                Ok(validate_density(&m, &dims, tol)?)
            }
            (None, Some(amps)) => {
                if amps.len() != dims.total() {
                    return Err(CliError::invalid_state(format!(
                        "expected {} amplitudes for dims {:?}, got {}",
                        dims.total(),
                        self.dims,
                        amps.len()
                    )));
                }
                if amps.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(CliError::invalid_state("amplitudes must be finite"));
                }
                let psi = PureState::new(dims, amps.iter().map(c).collect())?;
                Ok(pure_state_density(&psi))
            }
            _ => Err(CliError::usage(
                "state file needs exactly one of \"matrix\" or \"amplitudes\"",
            )),
        }
    }
}

pub fn load(path: &Path) -> CliResult<DensityOperator> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid_state(format!("cannot read {}: {e}", path.display())))?;
    StateFile::parse(&text)?.to_density(&ValidationTolerances::default())
}

pub fn save(path: &Path, file: &StateFile) -> CliResult<()> {
    std::fs::write(path, file.to_json() + "\n")
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;
    use kway_core::{make_state, FamilyPoint};

    #[test]
    fn matrix_round_trip_is_exact() {
        let rho = make_state(&FamilyPoint::w()).unwrap();
        let file = StateFile::from_density(&rho);
        let back = StateFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let rho2 = back.to_density(&ValidationTolerances::default()).unwrap();
        assert!(rho2.matrix().max_abs_diff(rho.matrix()) <= 1e-15);
    }

    #[test]
    fn amplitudes_form() {
        let text = r#"{"dims":[2,2],"amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0,0.7071067811865476]]}"#;
        let rho = StateFile::parse(text).unwrap().to_density(&Default::default()).unwrap();
        assert!((rho.matrix()[(0, 3)].im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn error_kinds() {
        let kind = |text: &str| match StateFile::parse(text).and_then(|f| f.to_density(&Default::default())) {
            Err(e) => e.kind,
            Ok(_) => panic!("accepted {text}"),
        };
        assert_eq!(kind("{"), ErrorKind::Usage);
        assert_eq!(kind(r#"{"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]],"extra":1}"#), ErrorKind::Usage);
        assert_eq!(kind(r#"{"dims":[2]}"#), ErrorKind::Usage);
        assert_eq!(kind(r#"{"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#), ErrorKind::InvalidState);
        assert_eq!(kind(r#"{"dims":[2],"matrix":[[[0.5,0],[0.1,0]],[[0.2,0],[0.5,0]]]}"#), ErrorKind::InvalidState);
        assert_eq!(kind(r#"{"dims":[2],"amplitudes":[[2,0],[0,0]]}"#), ErrorKind::InvalidState);
        assert_eq!(kind(r#"{"dims":[2,2],"amplitudes":[[1,0],[0,0]]}"#), ErrorKind::InvalidState);
        assert_eq!(kind(r#"{"dims":[1],"amplitudes":[[1,0]]}"#), ErrorKind::InvalidState);
    }
}
