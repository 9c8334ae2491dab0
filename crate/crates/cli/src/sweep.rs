//! Parameter sweeps over a state family, one CSV row per grid point.

use std::str::FromStr;

use kway_core::{
    full_report, make_state, minimize_total_kway, Family, FamilyPoint, OptimizationOptions,
};

use crate::columns::{evaluate, Column, Quantity};
use crate::error::{CliError, CliResult};
use crate::format::sig9;
use crate::grid::{Param, SweepGrid};

/// Every family has three qubits.
pub const SUBSYSTEMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "fig1" => Preset::Fig1,
            "fig2" => Preset::Fig2,
            "fig3" => Preset::Fig3,
            "fig4" => Preset::Fig4,
            "fig5" => Preset::Fig5,
            "fig6" => Preset::Fig6,
            _ => return Err(CliError::usage(format!("unknown preset '{s}' (fig1..fig6)"))),
        })
    }
}

impl Preset {
    pub fn family(self) -> Family {
        match self {
            Preset::Fig1 | Preset::Fig2 => Family::Psi1,
            Preset::Fig3 => Family::Psi2,
            Preset::Fig4 => Family::Boson,
            Preset::Fig5 | Preset::Fig6 => Family::Noisy,
        }
    }

    pub fn default_grid(self) -> &'static str {
        match self {
            Preset::Fig1 | Preset::Fig2 | Preset::Fig3 => "q=0:1:0.01",
            _ => "q=0:1:0.01,a=0:1:0.01",
        }
    }

    /// Quantity columns; the grid parameters are prepended.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Preset::Fig1 => &["N3t", "N2t", "N3t_min", "N2t_at_min"],
            Preset::Fig2 => &["E3_min", "E2_2_min"],
            Preset::Fig3 => &["NG_1", "E2_1", "E3_1"],
            Preset::Fig4 => &["E3_2", "NG_2", "E2_2"],
            Preset::Fig5 => &["NG_3", "NG_1"],
            Preset::Fig6 => &["E2_1", "E3"],
        }
    }

    /// Zero-based qubits rotated by default, `None` for all.
    pub fn default_qubits(self) -> Option<Vec<usize>> {
        match self {
            Preset::Fig1 | Preset::Fig2 => Some(vec![0]),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: Family,
    pub grid: SweepGrid,
    pub columns: Vec<Column>,
    /// Values for parameters the grid does not vary.
    pub fixed_q: Option<f64>,
    pub fixed_a: Option<f64>,
    pub minimize: OptimizationOptions,
    pub threads: usize,
}

impl SweepConfig {
    /// Checks that grid and fixed parameters supply exactly what the family uses.
    pub fn check(&self) -> CliResult<()> {
        for (param, used, fixed) in [
            (Param::Q, self.family.uses_q(), self.fixed_q),
            (Param::A, self.family.uses_a(), self.fixed_a),
        ] {
            let on_grid = self.grid.has(param);
            if !used && (on_grid || fixed.is_some()) {
                return Err(CliError::usage(format!(
                    "family {} has no parameter {}",
                    self.family,
                    param.name()
                )));
            }
            if used && on_grid && fixed.is_some() {
                return Err(CliError::usage(format!(
                    "parameter {} is both on the grid and fixed",
                    param.name()
                )));
            }
            if used && !on_grid && fixed.is_none() {
                return Err(CliError::usage(format!(
                    "family {} needs parameter {} on the grid or as --{}",
                    self.family,
                    param.name(),
                    param.name()
                )));
            }
        }
        for c in &self.columns {
            if let Quantity::Param(p) = c.quantity {
                if !self.grid.has(p) && (p == Param::Q && self.fixed_q.is_none() || p == Param::A && self.fixed_a.is_none()) {
                    return Err(CliError::usage(format!("column '{}' has no value for this family", c.name)));
                }
            }
        }
        Ok(())
    }

    fn needs_minimum(&self) -> bool {
        self.columns.iter().any(|c| c.at_min)
    }

    fn row(&self, i: usize) -> CliResult<Vec<f64>> {
        let mut q = self.fixed_q;
        let mut a = self.fixed_a;
        for (param, x) in self.grid.point(i) {
            match param {
                Param::Q => q = Some(x),
                Param::A => a = Some(x),
            }
        }
        let rho = make_state(&FamilyPoint::new(self.family, q, a)?)?;
        let report = full_report(&rho)?;
        let min_report = if self.needs_minimum() {
            let r = minimize_total_kway(&rho, &self.minimize)?;
            Some(full_report(&r.state)?)
        } else {
            None
        };
        Ok(self
            .columns
            .iter()
            .map(|c| match c.quantity {
                Quantity::Param(Param::Q) => q.expect("checked"),
                Quantity::Param(Param::A) => a.expect("checked"),
                quantity if c.at_min => evaluate(quantity, min_report.as_ref().expect("computed")),
                quantity => evaluate(quantity, &report),
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| sig9(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, &x)| (h.clone(), serde_json::json!(x)))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Row holding the largest value of a column; the first one on ties.
    pub fn argmax(&self, name: &str) -> Option<&[f64]> {
        let c = self.column(name)?;
        let mut best: Option<&Vec<f64>> = None;
        for row in &self.rows {
            if best.is_none_or(|b| row[c] > b[c]) {
                best = Some(row);
            }
        }
        best.map(Vec::as_slice)
    }
}

pub fn run(config: &SweepConfig) -> CliResult<SweepTable> {
    config.check()?;
    let n = config.grid.len();
    let threads = config.threads.clamp(1, n.max(1));
    let mut rows: Vec<Option<CliResult<Vec<f64>>>> = (0..n).map(|_| None).collect();
    if threads == 1 {
        for (i, slot) in rows.iter_mut().enumerate() {
            *slot = Some(config.row(i));
        }
    } else {
        let chunks: Vec<Vec<(usize, CliResult<Vec<f64>>)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| s.spawn(move || (t..n).step_by(threads).map(|i| (i, config.row(i))).collect()))
                .collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
        });
        for (i, r) in chunks.into_iter().flatten() {
            rows[i] = Some(r);
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.expect("every point evaluated"))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SweepTable {
        header: config.columns.iter().map(|c| c.name.clone()).collect(),
        rows,
    })
}

/// Grid parameter columns followed by the given quantity names.
pub fn columns_with_params(grid: &SweepGrid, names: &[&str]) -> CliResult<Vec<Column>> {
    grid.axes
        .iter()
        .map(|a| a.param.name())
        .chain(names.iter().copied())
        .map(|s| Column::parse(s, SUBSYSTEMS))
        .collect()
}
