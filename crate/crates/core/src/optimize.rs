//! Minimization of total K-way negativity over local qubit rotations.
//!
//! The objective `N_K^t = Σ_p N_K^p` is piecewise smooth, with kinks where an
//! eigenvalue of a K-way transpose crosses zero. The search is derivative
//! free: coordinate descent over the rotation angles of the selected qubits,
//! where each angle is located by a uniform scan of its bracket followed by
//! golden-section refinement around the best scan point. Restart 0 starts at
//! the identity; further restarts start from a deterministic additive
//! (Kronecker) low-discrepancy sequence seeded by [`OptimizationOptions::seed`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
#[cfg(test)]
use core::f64::consts::FRAC_PI_4;

use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result};
use crate::negativity::kway_negativity;
use crate::state::{apply_local_unitary, DensityOperator, LocalRotation, LocalRotationSet};
// inherent float methods shadow these when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

/// Single-qubit rotation family searched by the optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationMode {
    /// `U(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]`, θ in `[-π/2, π/2)`.
    RealAngle,
    /// Z-Y-Z Euler angles, α, γ in `[0, 2π)` and β in `[0, π]`.
    Euler,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationOptions {
    /// Coherence weight `K` whose total negativity is minimized.
    pub target_weight: usize,
    pub mode: RotationMode,
    /// Zero-based qubits to rotate; `None` rotates all of them.
    pub qubits: Option<Vec<usize>>,
    pub restarts: usize,
    /// A sweep that improves the objective by less than this ends the restart.
    pub tolerance: f64,
    pub max_sweeps: usize,
    pub seed: u64,
    /// Uniform scan points per bracket before golden-section refinement.
    pub scan_points: usize,
    /// Golden-section bracket width at which refinement stops.
    pub angle_tolerance: f64,
}

impl Default for OptimizationOptions {
    fn default() -> Self {
        Self {
            target_weight: 3,
            mode: RotationMode::RealAngle,
            qubits: None,
            restarts: 8,
            tolerance: 1e-9,
            max_sweeps: 200,
            seed: 0,
            scan_points: 32,
            angle_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    /// Rotation per subsystem; unselected qubits carry the identity.
    pub rotations: LocalRotationSet,
    /// `N_K^t` at the optimum.
    pub objective: f64,
    /// `N_K^t` of the unrotated state.
    pub initial_objective: f64,
    /// Sweeps summed over restarts.
    pub sweeps: usize,
    pub evaluations: usize,
    /// Whether the winning restart stopped on the tolerance rather than the sweep cap.
    pub converged: bool,
    /// Best objective reached by each restart, in restart order.
    pub restart_objectives: Vec<f64>,
    /// The rotated state.
    pub state: DensityOperator,
}

/// `N_K^t = Σ_p N_K^p`.
pub fn total_kway_negativity(rho: &DensityOperator, k: usize) -> Result<f64> {
    let mut total = 0.0;
    for p in 0..rho.dims().len() {
        total += kway_negativity(rho, p, k)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy)]
struct Bracket {
    lo: f64,
    hi: f64,
    periodic: bool,
}

impl Bracket {
    fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn wrap(&self, x: f64) -> f64 {
        if self.periodic {
            let w = self.width();
            let mut y = (x - self.lo) % w;
            if y < 0.0 {
                y += w;
            }
            // `%` can round up to exactly `w`
            if y >= w {
                y = 0.0;
            }
            self.lo + y
        } else {
            x.clamp(self.lo, self.hi)
        }
    }
}

fn brackets(mode: RotationMode) -> &'static [Bracket] {
    const REAL: [Bracket; 1] = [Bracket {
        lo: -FRAC_PI_2,
        hi: FRAC_PI_2,
        periodic: true,
    }];
    const EULER: [Bracket; 3] = [
        Bracket {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        },
        Bracket {
            lo: 0.0,
            hi: PI,
            periodic: false,
        },
        Bracket {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        },
    ];
    match mode {
        RotationMode::RealAngle => &REAL,
        RotationMode::Euler => &EULER,
    }
}

fn rotation_from(mode: RotationMode, angles: &[f64]) -> LocalRotation {
    match mode {
        RotationMode::RealAngle => LocalRotation::real_angle(angles[0]),
        RotationMode::Euler => LocalRotation::euler(angles[0], angles[1], angles[2]),
    }
}

/// Minimum of a unimodal function on `[lo, hi]`; returns `(x, f(x), evaluations)`.
pub fn golden_section<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    Ok(if f1 <= f2 { (x1, f1, evals) } else { (x2, f2, evals) })
}

struct Search<'a> {
    rho: &'a DensityOperator,
    k: usize,
    mode: RotationMode,
    qubits: Vec<usize>,
    n: usize,
    evaluations: usize,
}

impl Search<'_> {
    fn per_qubit(&self) -> usize {
        brackets(self.mode).len()
    }

    fn rotation_set(&self, params: &[f64]) -> LocalRotationSet {
        let mut set = LocalRotationSet::identity(self.n);
        let m = self.per_qubit();
        for (i, &q) in self.qubits.iter().enumerate() {
            set.set(q, rotation_from(self.mode, &params[i * m..(i + 1) * m]));
        }
        set
    }

    fn objective(&mut self, params: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        let rotated = apply_local_unitary(self.rho, &self.rotation_set(params))?;
        total_kway_negativity(&rotated, self.k)
    }

    /// Moves coordinate `c` to a better value if one is found; returns the new objective.
    fn coordinate_step(
        &mut self,
        params: &mut [f64],
        c: usize,
        current: f64,
        opts: &OptimizationOptions,
    ) -> Result<f64> {
        let bracket = brackets(self.mode)[c % self.per_qubit()];
        let m = opts.scan_points.max(3);
        let steps = if bracket.periodic { m } else { m - 1 };
        let h = bracket.width() / steps as f64;

        let mut trial = params.to_vec();
        let mut best_x = params[c];
        let mut best_f = current;
        for i in 0..m {
            let x = bracket.lo + i as f64 * h;
            trial[c] = x;
            let fx = self.objective(&trial)?;
            if fx < best_f {
                best_x = x;
                best_f = fx;
            }
        }

        let (mut lo, mut hi) = (best_x - h, best_x + h);
        if !bracket.periodic {
            lo = lo.max(bracket.lo);
            hi = hi.min(bracket.hi);
        }
        let (gx, gf, _) = golden_section(
            |x| {
                trial[c] = x;
                self.objective(&trial)
            },
            lo,
            hi,
            opts.angle_tolerance,
        )?;
        if gf < best_f {
            best_x = gx;
            best_f = gf;
        }
        if best_f < current {
            let old = params[c];
            params[c] = bracket.wrap(best_x);
            // wrapping can move the value by rounding, so re-evaluate at the stored angle
            let f = self.objective(params)?;
            if f < current {
                return Ok(f);
            }
            params[c] = old;
        }
        Ok(current)
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Objectives closer than this are treated as equal when picking the winner.
const TIE_TOLERANCE: f64 = 1e-12;

pub fn minimize_total_kway(
    rho: &DensityOperator,
    opts: &OptimizationOptions,
) -> Result<OptimizationResult> {
    let dims = rho.dims();
    let n = dims.len();
    if opts.target_weight < 2 || opts.target_weight > n {
        return Err(Error::Scope(format!(
            "target weight {} outside 2..={n}",
            opts.target_weight
        )));
    }
    if opts.restarts == 0 {
        return Err(Error::Scope("at least one restart is required".into()));
    }
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Error::Scope("tolerance must be positive".into()));
    }
    let mut qubits = opts.qubits.clone().unwrap_or_else(|| (0..n).collect());
    qubits.sort_unstable();
    qubits.dedup();
    if qubits.is_empty() {
        return Err(Error::Scope("no qubits selected for rotation".into()));
    }
    for &q in &qubits {
        if q >= n {
            return Err(Error::Scope(format!("qubit {q} does not exist ({n} subsystems)")));
        }
        if dims.dim(q) != 2 {
            return Err(Error::Scope(format!(
                "subsystem {q} has dimension {}, only qubits can be rotated",
                dims.dim(q)
            )));
        }
    }

    let mut search = Search {
        rho,
        k: opts.target_weight,
        mode: opts.mode,
        n,
        qubits,
        evaluations: 0,
    };
    let per_qubit = search.per_qubit();
    let dimension = search.qubits.len() * per_qubit;
    let initial_objective = total_kway_negativity(rho, opts.target_weight)?;

    let sequence = kronecker_steps(dimension);
    let offset = seed_offset(opts.seed);

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let mut restart_objectives = Vec::with_capacity(opts.restarts);
    let mut total_sweeps = 0;

    for r in 0..opts.restarts {
        let mut params: Vec<f64> = if r == 0 {
            vec![0.0; dimension]
        } else {
            (0..dimension)
                .map(|c| {
                    let b = brackets(opts.mode)[c % per_qubit];
                    let u = (offset + r as f64 * sequence[c]).fract();
                    b.lo + u * b.width()
                })
                .collect()
        };
        let mut value = search.objective(&params)?;
        let mut converged = false;
        for _ in 0..opts.max_sweeps {
            total_sweeps += 1;
            let before = value;
            for c in 0..dimension {
                value = search.coordinate_step(&mut params, c, value, opts)?;
            }
            if before - value < opts.tolerance {
                converged = true;
                break;
            }
        }
        restart_objectives.push(value);
        let better = match &best {
            None => true,
            Some((bv, bp, _)) => {
                value < bv - TIE_TOLERANCE
                    || (value <= bv + TIE_TOLERANCE && lexicographic(&params, bp) == Ordering::Less)
            }
        };
        if better {
            best = Some((value, params, converged));
        }
    }

    let (mut objective, params, converged) = best.expect("at least one restart");
    let mut rotations = search.rotation_set(&params);
    if objective > initial_objective {
        // only reachable through the tie tolerance; the identity is then as good
        objective = initial_objective;
        rotations = LocalRotationSet::identity(n);
    }
    let state = apply_local_unitary(rho, &rotations)?;
    Ok(OptimizationResult {
        rotations,
        objective,
        initial_objective,
        sweeps: total_sweeps,
        evaluations: search.evaluations,
        converged,
        restart_objectives,
        state,
    })
}

/// Step vector of the generalized golden-ratio sequence in `d` dimensions.
fn kronecker_steps(d: usize) -> Vec<f64> {
    // the unique positive root of x^{d+1} = x + 1
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|i| (1.0 / phi.powi(i as i32)).fract()).collect()
}

fn seed_offset(seed: u64) -> f64 {
    // splitmix64 finalizer, mapped to [0, 1)
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// Comparison of a minimized state against the GHZ-like normal form of `Psi1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalComparison {
    pub q: f64,
    /// Flat indices compared: `|000>`, `|100>`, `|111>`.
    pub indices: [usize; 3],
    pub expected: [f64; 3],
    /// Moduli of the dominant eigenvector on `indices`.
    pub observed: [f64; 3],
    pub deviations: [f64; 3],
    pub max_deviation: f64,
    /// Squared weight of the dominant eigenvector outside `indices`.
    pub off_support_weight: f64,
    pub passed: bool,
}

/// Threshold on the largest amplitude deviation for a match.
pub const CANONICAL_MATCH_TOL: f64 = 1e-6;

/// Canonical amplitudes `((1-2q)/√2, √(2q(1-q)), 1/√2)` on `|000>, |100>, |111>`.
pub fn psi1_canonical_amplitudes(q: f64) -> Result<[f64; 3]> {
    if !(0.0..=0.5).contains(&q) {
        return Err(Error::OutOfDomain(format!(
            "canonical form is defined for 0 <= q <= 1/2, got q = {q}"
        )));
    }
    Ok([
        (1.0 - 2.0 * q) * FRAC_1_SQRT_2,
        (2.0 * q * (1.0 - q)).sqrt(),
        FRAC_1_SQRT_2,
    ])
}

pub fn compare_to_psi1_canonical(q: f64, rho_min: &DensityOperator) -> Result<CanonicalComparison> {
    let expected = psi1_canonical_amplitudes(q)?;
    if rho_min.dims().dims() != [2, 2, 2] {
        return Err(Error::Scope("canonical comparison needs three qubits".into()));
    }
    let eig = hermitian_eigensystem(rho_min.matrix())?;
    let top = eig.values.len() - 1;
    let largest = eig.values[top];
    if largest < 1.0 - 1e-9 {
        return Err(Error::Purity { largest });
    }
    let mut v = eig.vector(top);
    let pivot = v
        .iter()
        .copied()
        .fold(crate::C64::new(0.0, 0.0), |acc, z| if z.norm() > acc.norm() { z } else { acc });
    let phase = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    let indices = [0usize, 1, 7];
    let observed = indices.map(|j| v[j].norm());
    let deviations = [0, 1, 2].map(|i| (observed[i] - expected[i]).abs());
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    let off_support_weight = v
        .iter()
        .enumerate()
        .filter(|(j, _)| !indices.contains(j))
        .map(|(_, z)| z.norm_sqr())
        .sum();
    Ok(CanonicalComparison {
        q,
        indices,
        expected,
        observed,
        deviations,
        max_deviation,
        off_support_weight,
        passed: max_deviation <= CANONICAL_MATCH_TOL,
    })
}
