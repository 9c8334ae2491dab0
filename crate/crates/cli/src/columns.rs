//! Sweep column vocabulary.
//!
//! Subsystems are one-based in column names.
//!
//! | column | value |
//! |---|---|
//! | `q`, `a` | family parameters |
//! | `NG_p` | global negativity of subsystem `p` |
//! | `N{K}_p`, `NK_p_K` | K-way negativity |
//! | `E{K}_p`, `EK_p_K` | partial K-way negativity |
//! | `frac_p_K` | `E_K^p / N_K^p` (0 where `N_K^p` vanishes) |
//! | `res_p` | `N_G^p - Σ_K E_K^p` |
//! | `N{K}t` | `Σ_p N_K^p` |
//! | `E{K}` | `min_p E_K^p` |
//!
//! A `_min` or `_at_min` suffix evaluates the quantity at the state that
//! minimizes the total K-way negativity instead of at the unrotated state.

use kway_core::NegativityReport;

use crate::error::{CliError, CliResult};
use crate::grid::Param;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Param(Param),
    Global(usize),
    Kway(usize, usize),
    Partial(usize, usize),
    Fraction(usize, usize),
    Residual(usize),
    Total(usize),
    MinPartial(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub quantity: Quantity,
    pub at_min: bool,
}

fn int(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_quantity(s: &str) -> Option<Quantity> {
    use Quantity::*;
    match s {
        "q" => return Some(Param(crate::grid::Param::Q)),
        "a" => return Some(Param(crate::grid::Param::A)),
        _ => {}
    }
    if let Some(p) = s.strip_prefix("NG_") {
        return int(p).map(Global);
    }
    if let Some(p) = s.strip_prefix("res_") {
        return int(p).map(Residual);
    }
    let pk = |rest: &str| {
        let (p, k) = rest.split_once('_')?;
        Some((int(p)?, int(k)?))
    };
    if let Some(rest) = s.strip_prefix("NK_") {
        return pk(rest).map(|(p, k)| Kway(p, k));
    }
    if let Some(rest) = s.strip_prefix("EK_") {
        return pk(rest).map(|(p, k)| Partial(p, k));
    }
    if let Some(rest) = s.strip_prefix("frac_") {
        return pk(rest).map(|(p, k)| Fraction(p, k));
    }
    if let Some(rest) = s.strip_prefix('N') {
        if let Some(k) = rest.strip_suffix('t') {
            return int(k).map(Total);
        }
        let (k, p) = rest.split_once('_')?;
        return Some(Kway(int(p)?, int(k)?));
    }
    if let Some(rest) = s.strip_prefix('E') {
        return match rest.split_once('_') {
            Some((k, p)) => Some(Partial(int(p)?, int(k)?)),
            None => int(rest).map(MinPartial),
        };
    }
    None
}

impl Column {
    /// Parses a column name for states with `n` subsystems.
    pub fn parse(name: &str, n: usize) -> CliResult<Self> {
        let unknown = || CliError::usage(format!("unknown column '{name}'"));
        let (base, at_min) = if let Some(b) = name.strip_suffix("_at_min") {
            (b, true)
        } else if let Some(b) = name.strip_suffix("_min") {
            (b, true)
        } else {
            (name, false)
        };
        let quantity = parse_quantity(base).ok_or_else(unknown)?;
        let p_ok = |p: usize| (1..=n).contains(&p);
        let k_ok = |k: usize| (2..=n).contains(&k);
        let valid = match quantity {
            Quantity::Param(_) => !at_min,
            Quantity::Global(p) | Quantity::Residual(p) => p_ok(p),
            Quantity::Kway(p, k) | Quantity::Partial(p, k) | Quantity::Fraction(p, k) => p_ok(p) && k_ok(k),
            Quantity::Total(k) | Quantity::MinPartial(k) => k_ok(k),
        };
        if !valid {
            return Err(CliError::usage(format!(
                "column '{name}' is out of range for {n} subsystems"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            quantity,
            at_min,
        })
    }

    pub fn parse_list(list: &str, n: usize) -> CliResult<Vec<Self>> {
        let cols = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Column::parse(s, n))
            .collect::<CliResult<Vec<_>>>()?;
        if cols.is_empty() {
            return Err(CliError::usage("no columns requested"));
        }
        Ok(cols)
    }
}

/// Evaluates a non-parameter quantity on a report.
pub fn evaluate(q: Quantity, r: &NegativityReport) -> f64 {
    match q {
        Quantity::Param(_) => unreachable!("parameters are filled from the grid point"),
        Quantity::Global(p) => r.global(p - 1),
        Quantity::Kway(p, k) => r.kway(p - 1, k),
        Quantity::Partial(p, k) => r.partial(p - 1, k),
        Quantity::Fraction(p, k) => r.fraction(p - 1, k).unwrap_or(0.0),
        Quantity::Residual(p) => r.residual(p - 1),
        Quantity::Total(k) => r.total_kway(k),
        Quantity::MinPartial(k) => r.min_partial(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Quantity::*;

    fn q(name: &str) -> (Quantity, bool) {
        let c = Column::parse(name, 3).unwrap();
        (c.quantity, c.at_min)
    }

    #[test]
    fn vocabulary() {
        assert_eq!(q("q"), (Param(crate::grid::Param::Q), false));
        assert_eq!(q("NG_3"), (Global(3), false));
        assert_eq!(q("N2_1"), (Kway(1, 2), false));
        assert_eq!(q("NK_1_2"), (Kway(1, 2), false));
        assert_eq!(q("E3_2"), (Partial(2, 3), false));
        assert_eq!(q("EK_2_3"), (Partial(2, 3), false));
        assert_eq!(q("frac_1_3"), (Fraction(1, 3), false));
        assert_eq!(q("res_2"), (Residual(2), false));
        assert_eq!(q("N3t"), (Total(3), false));
        assert_eq!(q("E3"), (MinPartial(3), false));
        assert_eq!(q("N3t_min"), (Total(3), true));
        assert_eq!(q("N2t_at_min"), (Total(2), true));
        assert_eq!(q("E2_2_min"), (Partial(2, 2), true));
        assert_eq!(q("E3_min"), (MinPartial(3), true));
    }

    #[test]
    fn rejects_unknown_and_out_of_range() {
        for name in ["", "foo", "NG_0", "NG_4", "N1_1", "N4t", "E3_", "q_min", "NGx", "E_1", "N+3t", "E9_1"] {
            let err = Column::parse(name, 3).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{name}");
        }
        assert!(Column::parse("bogus", 3).unwrap_err().message.contains("'bogus'"));
    }
}
