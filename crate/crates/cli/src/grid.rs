//! Parameter grids: `q=0:1:0.01,a=0:1:0.01`.
//!
//! Each axis is `name=start:stop:step`, `name=start:stop:#count` or a single
//! `name=value`. Points are visited row-major, the first axis outermost.

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Q,
    A,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Q => "q",
            Param::A => "a",
        }
    }

    fn parse(s: &str) -> CliResult<Self> {
        match s {
            "q" => Ok(Param::Q),
            "a" => Ok(Param::A),
            _ => Err(CliError::usage(format!("unknown grid parameter '{s}' (expected q or a)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: Vec<Axis>,
}

fn number(s: &str, spec: &str) -> CliResult<f64> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad number '{s}' in grid axis '{spec}'")))?;
    if !x.is_finite() {
        return Err(CliError::usage(format!("non-finite number in grid axis '{spec}'")));
    }
    Ok(x)
}

/// Upper bound on points per axis.
const MAX_POINTS: usize = 1_000_000;

impl Axis {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let (name, range) = spec
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("grid axis '{spec}' is not name=range")))?;
        let param = Param::parse(name.trim())?;
        let parts: Vec<&str> = range.split(':').collect();
        let values = match parts.as_slice() {
            [v] => vec![number(v, spec)?],
            [start, stop, step] => {
                let start = number(start, spec)?;
                let stop = number(stop, spec)?;
                if start > stop {
                    return Err(CliError::usage(format!("grid axis '{spec}' has start > stop")));
                }
                if let Some(count) = step.trim().strip_prefix('#') {
                    let count: usize = count
                        .parse()
                        .map_err(|_| CliError::usage(format!("bad point count in '{spec}'")))?;
                    if count == 0 || count > MAX_POINTS || (count == 1 && start != stop) {
                        return Err(CliError::usage(format!("bad point count in '{spec}'")));
                    }
                    if count == 1 {
                        vec![start]
                    } else {
                        let h = (stop - start) / (count - 1) as f64;
                        (0..count)
                            .map(|i| if i + 1 == count { stop } else { start + i as f64 * h })
                            .collect()
                    }
                } else {
                    let step = number(step, spec)?;
                    if step.is_nan() || step <= 0.0 {
                        return Err(CliError::usage(format!("grid axis '{spec}' needs step > 0")));
                    }
                    let span = (stop - start) / step;
                    if span > MAX_POINTS as f64 {
                        return Err(CliError::usage(format!("grid axis '{spec}' has too many points")));
                    }
                    let last = (span + 1e-9).floor() as usize;
                    (0..=last)
                        .map(|i| {
                            let x = start + i as f64 * step;
                            // land exactly on the endpoint despite accumulated rounding
                            if (x - stop).abs() <= 1e-9 * step { stop } else { x.min(stop) }
                        })
                        .collect()
                }
            }
            _ => {
                return Err(CliError::usage(format!(
                    "grid axis '{spec}' must be name=value or name=start:stop:step"
                )))
            }
        };
        Ok(Axis { param, values })
    }
}

impl SweepGrid {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let axes = spec
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Axis::parse)
            .collect::<CliResult<Vec<_>>>()?;
        if axes.is_empty() {
            return Err(CliError::usage("empty grid"));
        }
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.param == a.param) {
                return Err(CliError::usage(format!("grid repeats parameter {}", a.param.name())));
            }
        }
        Ok(Self { axes })
    }

    pub fn has(&self, p: Param) -> bool {
        self.axes.iter().any(|a| a.param == p)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameter values of point `i` in row-major order, one per axis.
    pub fn point(&self, mut i: usize) -> Vec<(Param, f64)> {
        let mut out = vec![(Param::Q, 0.0); self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = (axis.param, axis.values[i % n]);
            i /= n;
        }
        out
    }
}
