//! Parametric three-qubit state families.
//!
//! Amplitudes are listed in flat-index order, `|i1 i2 i3>` at `i1 + 2 i2 + 4 i3`,
//! and every square root takes the nonnegative real branch.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;


use crate::error::{Error, Result};
use crate::index::SubsystemDims;
use crate::state::{pure_state_density, DensityOperator, PureState};
// inherent float methods shadow these when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(|000> + |111>)/√2`.
    Ghz,
    /// `(|100> + |010> + |001>)/√3`.
    W,
    /// `√q GHZ + √((1-q)/2) (|100> + |011>)`.
    Psi1,
    /// `√q GHZ + √(1-q) W`.
    Psi2,
    /// Two-mode three-boson state `√a |000> + √((1-q)(1-a)) W + √(q(1-a)) |111>`.
    Boson,
    /// `a |Ψ_q><Ψ_q| + (1-a) I/8` with `Ψ_q = (|000> + √(1-q) |111> + √q |110>)/√2`.
    Noisy,
    /// GHZ-like normal form of `Psi1`, defined for `q ≤ 1/2`:
    /// `((1-2q)/√2) |000> + √(2q(1-q)) |100> + |111>/√2`.
    Psi1Canonical,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Ghz,
        Family::W,
        Family::Psi1,
        Family::Psi2,
        Family::Boson,
        Family::Noisy,
        Family::Psi1Canonical,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Psi1 => "psi1",
            Family::Psi2 => "psi2",
            Family::Boson => "boson",
            Family::Noisy => "noisy",
            Family::Psi1Canonical => "psi1-canonical",
        }
    }

    pub fn uses_q(&self) -> bool {
        !matches!(self, Family::Ghz | Family::W)
    }

    pub fn uses_a(&self) -> bool {
        matches!(self, Family::Boson | Family::Noisy)
    }

    pub fn is_pure(&self) -> bool {
        !matches!(self, Family::Noisy)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::OutOfDomain(format!("unknown family '{s}'")))
    }
}

/// A family together with the parameters it uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyPoint {
    family: Family,
    q: Option<f64>,
    a: Option<f64>,
}

impl FamilyPoint {
    /// Parameters must be given exactly when the family uses them, each in `[0, 1]`.
    pub fn new(family: Family, q: Option<f64>, a: Option<f64>) -> Result<Self> {
        let check = |name: &'static str, used: bool, value: Option<f64>| -> Result<()> {
            match (used, value) {
                (true, None) => Err(Error::OutOfDomain(format!(
                    "family {family} requires parameter {name}"
                ))),
                (false, Some(_)) => Err(Error::OutOfDomain(format!(
                    "family {family} takes no parameter {name}"
                ))),
                (true, Some(v)) if !(0.0..=1.0).contains(&v) => {
                    Err(Error::ParameterRange { name, value: v })
                }
                _ => Ok(()),
            }
        };
        check("q", family.uses_q(), q)?;
        check("a", family.uses_a(), a)?;
        if family == Family::Psi1Canonical && q.unwrap_or(0.0) > 0.5 {
            return Err(Error::OutOfDomain(format!(
                "psi1-canonical is defined for q <= 1/2, got q = {}",
                q.unwrap_or(0.0)
            )));
        }
        Ok(Self { family, q, a })
    }

    /// Like [`FamilyPoint::new`] but silently drops parameters the family ignores.
    pub fn lenient(family: Family, q: Option<f64>, a: Option<f64>) -> Result<Self> {
        Self::new(
            family,
            q.filter(|_| family.uses_q()),
            a.filter(|_| family.uses_a()),
        )
    }

    pub fn ghz() -> Self {
        Self::new(Family::Ghz, None, None).expect("valid")
    }

    pub fn w() -> Self {
        Self::new(Family::W, None, None).expect("valid")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> Option<f64> {
        self.q
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }
}

fn sqrt(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

fn real_amplitudes(point: &FamilyPoint) -> Vec<f64> {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let third = 1.0 / 3f64.sqrt();
    let q = point.q.unwrap_or(0.0);
    let a = point.a.unwrap_or(0.0);
    let mut v = vec![0.0; 8];
    match point.family {
        Family::Ghz => {
            v[0] = h;
            v[7] = h;
        }
        Family::W => {
            v[1] = third;
            v[2] = third;
            v[4] = third;
        }
        Family::Psi1 => {
            v[0] = sqrt(q / 2.0);
            v[7] = sqrt(q / 2.0);
            v[1] = sqrt((1.0 - q) / 2.0);
            v[6] = sqrt((1.0 - q) / 2.0);
        }
        Family::Psi2 => {
            let g = sqrt(q) * h;
            let w = sqrt(1.0 - q) * third;
            v[0] = g;
            v[7] = g;
            v[1] = w;
            v[2] = w;
            v[4] = w;
        }
        Family::Boson => {
            let w = sqrt((1.0 - q) * (1.0 - a) / 3.0);
            v[0] = sqrt(a);
            v[1] = w;
            v[2] = w;
            v[4] = w;
            v[7] = sqrt(q * (1.0 - a));
        }
        Family::Noisy => {
            v[0] = h;
            v[7] = sqrt(1.0 - q) * h;
            v[3] = sqrt(q) * h;
        }
        Family::Psi1Canonical => {
            v[0] = (1.0 - 2.0 * q) * h;
            v[1] = sqrt(2.0 * q * (1.0 - q));
            v[7] = h;
        }
    }
    v
}

/// The state vector of a pure family.
pub fn amplitudes_of(point: &FamilyPoint) -> Result<PureState> {
    if !point.family.is_pure() {
        return Err(Error::NotPure(point.family.id()));
    }
    PureState::from_real(SubsystemDims::three_qubits(), &real_amplitudes(point))
}

/// `Ψ_q` of the noisy family.
pub fn noisy_core_state(q: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ParameterRange { name: "q", value: q });
    }
    let point = FamilyPoint {
        family: Family::Noisy,
        q: Some(q),
        a: Some(1.0),
    };
    PureState::from_real(SubsystemDims::three_qubits(), &real_amplitudes(&point))
}

pub fn make_state(point: &FamilyPoint) -> Result<DensityOperator> {
    match point.family {
        Family::Noisy => {
            let a = point.a.unwrap_or(0.0);
            let core = pure_state_density(&noisy_core_state(point.q.unwrap_or(0.0))?);
            core.mix(&DensityOperator::maximally_mixed(SubsystemDims::three_qubits()), a)
        }
        _ => Ok(pure_state_density(&amplitudes_of(point)?)),
    }
}
