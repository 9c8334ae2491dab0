//! Documents produced by the non-sweep subcommands.

use kway_core::{
    coherence_split, compare_to_psi1_canonical, full_report, genuine_tripartite_measure,
    minimize_total_kway, CanonicalComparison, DensityOperator, Family, FamilyPoint,
    NegativityReport, OptimizationOptions, OptimizationResult, RotationParams,
};
use serde_json::{json, Map, Value};

use crate::error::CliResult;
use crate::format::sig9;

/// Entries of a coherence block smaller than this count as zero.
pub const BLOCK_THRESHOLD: f64 = 1e-12;

pub fn report_document(rho: &DensityOperator) -> CliResult<Value> {
    let r = full_report(rho)?;
    let mut doc = Map::new();
    doc.insert("dims".into(), json!(rho.dims().dims()));
    append_report(&mut doc, &r);
    Ok(Value::Object(doc))
}

fn append_report(doc: &mut Map<String, Value>, r: &NegativityReport) {
    let n = r.subsystems();
    for p in 0..n {
        let l = p + 1;
        doc.insert(format!("NG_{l}"), json!(r.global(p)));
        for k in 2..=n {
            doc.insert(format!("NK_{l}_{k}"), json!(r.kway(p, k)));
        }
        for k in 2..=n {
            doc.insert(format!("EK_{l}_{k}"), json!(r.partial(p, k)));
        }
        for k in 2..=n {
            doc.insert(format!("frac_{l}_{k}"), json!(r.fraction(p, k)));
        }
        doc.insert(format!("res_{l}"), json!(r.residual(p)));
        doc.insert(format!("flag_{l}"), json!(r.flag(p).as_str()));
    }
    for k in 2..=n {
        doc.insert(format!("N{k}t"), json!(r.total_kway(k)));
    }
    if let Ok(e3) = genuine_tripartite_measure(r) {
        doc.insert("E3".into(), json!(e3));
    }
}

/// A flat document as a header row and one data row.
pub fn flat_csv(doc: &Value) -> String {
    let obj = doc.as_object().expect("flat documents are objects");
    let mut header = Vec::new();
    let mut values = Vec::new();
    for (key, v) in obj {
        let cell = match v {
            Value::Number(x) => sig9(x.as_f64().expect("finite")),
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            Value::Bool(b) => u8::from(*b).to_string(),
            // dims
            Value::Array(items) => items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("x"),
            Value::Object(_) => continue,
        };
        header.push(key.as_str());
        values.push(cell);
    }
    format!("{}\n{}\n", header.join(","), values.join(","))
}

pub fn validate_document(rho: &DensityOperator) -> CliResult<Value> {
    let spectrum = rho.spectrum()?;
    let purity: f64 = spectrum.iter().map(|x| x * x).sum();
    let rank = spectrum.iter().filter(|&&x| x > 1e-10).count();
    Ok(json!({
        "valid": true,
        "dims": rho.dims().dims(),
        "trace": rho.matrix().trace().re,
        "min_eigenvalue": spectrum[0],
        "max_eigenvalue": spectrum[spectrum.len() - 1],
        "purity": purity,
        "rank": rank,
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockRow {
    pub k: usize,
    pub entries: usize,
    pub largest: f64,
}

impl BlockRow {
    pub fn vanishing(&self) -> bool {
        self.entries == 0
    }
}

pub fn decompose(rho: &DensityOperator) -> Vec<BlockRow> {
    let split = coherence_split(rho);
    (0..split.parts().len())
        .map(|k| {
            let (entries, largest) = split.block_summary(k, BLOCK_THRESHOLD);
            BlockRow { k, entries, largest }
        })
        .collect()
}

pub fn decompose_document(rho: &DensityOperator) -> Value {
    let blocks: Vec<Value> = decompose(rho)
        .iter()
        .map(|b| json!({"K": b.k, "entries": b.entries, "largest": b.largest, "vanishing": b.vanishing()}))
        .collect();
    json!({"dims": rho.dims().dims(), "blocks": blocks})
}

pub fn decompose_csv(rho: &DensityOperator) -> String {
    let mut out = String::from("K,entries,largest,vanishing\n");
    for b in decompose(rho) {
        out.push_str(&format!("{},{},{},{}\n", b.k, b.entries, sig9(b.largest), u8::from(b.vanishing())));
    }
    out
}

#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub result: OptimizationResult,
    pub report: NegativityReport,
    pub canonical: Option<CanonicalComparison>,
}

/// Runs the optimizer; for `psi1` points with `q <= 1/2` also compares the
/// minimized state against the canonical form.
pub fn minimize(
    rho: &DensityOperator,
    point: Option<&FamilyPoint>,
    opts: &OptimizationOptions,
) -> CliResult<MinimizeOutcome> {
    let result = minimize_total_kway(rho, opts)?;
    let report = full_report(&result.state)?;
    let canonical = match point {
        Some(p) if p.family() == Family::Psi1 && p.q().is_some_and(|q| q <= 0.5) => {
            Some(compare_to_psi1_canonical(p.q().expect("psi1 has q"), &result.state)?)
        }
        _ => None,
    };
    Ok(MinimizeOutcome {
        result,
        report,
        canonical,
    })
}

pub fn minimize_document(outcome: &MinimizeOutcome, opts: &OptimizationOptions) -> Value {
    let r = &outcome.result;
    let rotations: Vec<Value> = r
        .rotations
        .rotations()
        .iter()
        .enumerate()
        .filter(|(q, _)| opts.qubits.as_ref().is_none_or(|sel| sel.contains(q)))
        .map(|(q, rot)| match rot.params() {
            RotationParams::RealAngle(theta) => json!({"qubit": q + 1, "theta": theta}),
            RotationParams::Euler { alpha, beta, gamma } => {
                json!({"qubit": q + 1, "alpha": alpha, "beta": beta, "gamma": gamma})
            }
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("k".into(), json!(opts.target_weight));
    doc.insert(
        "mode".into(),
        json!(match opts.mode {
            kway_core::RotationMode::RealAngle => "real",
            kway_core::RotationMode::Euler => "euler",
        }),
    );
    doc.insert("objective".into(), json!(r.objective));
    doc.insert("initial_objective".into(), json!(r.initial_objective));
    doc.insert("sweeps".into(), json!(r.sweeps));
    doc.insert("evaluations".into(), json!(r.evaluations));
    doc.insert("converged".into(), json!(r.converged));
    doc.insert("restart_objectives".into(), json!(r.restart_objectives));
    doc.insert("rotations".into(), Value::Array(rotations));
    let mut minimized = Map::new();
    append_report(&mut minimized, &outcome.report);
    doc.insert("minimized".into(), Value::Object(minimized));
    if let Some(c) = &outcome.canonical {
        doc.insert(
            "canonical".into(),
            json!({
                "q": c.q,
                "indices": c.indices,
                "expected": c.expected,
                "observed": c.observed,
                "max_deviation": c.max_deviation,
                "off_support_weight": c.off_support_weight,
                "passed": c.passed,
            }),
        );
    }
    Value::Object(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kway_core::make_state;

    #[test]
    fn ghz_report_fields() {
        let doc = report_document(&make_state(&FamilyPoint::ghz()).unwrap()).unwrap();
        assert_eq!(doc["NG_1"], 1.0);
        assert_eq!(doc["flag_3"], "NPT");
        assert!(doc["frac_2_2"].is_null());
        assert!((doc["EK_2_3"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
        assert_eq!(keys[1], "NG_1");
        assert_eq!(keys[2], "NK_1_2");
    }

    #[test]
    fn decomposition_counts() {
        let ghz = decompose(&make_state(&FamilyPoint::ghz()).unwrap());
        assert_eq!((ghz[1].entries, ghz[2].entries, ghz[3].entries), (0, 0, 2));
        assert!((ghz[3].largest - 0.5).abs() < 1e-15);
        let w = decompose(&make_state(&FamilyPoint::w()).unwrap());
        assert_eq!((w[1].entries, w[2].entries, w[3].entries), (0, 6, 0));
        assert!((w[2].largest - 1.0 / 3.0).abs() < 1e-15);
        let noisy = FamilyPoint::new(Family::Noisy, Some(0.5), Some(1.0)).unwrap();
        let n = decompose(&make_state(&noisy).unwrap());
        assert!(n[1].entries > 0 && n[2].entries > 0 && n[3].entries > 0);
        assert!(decompose_csv(&make_state(&FamilyPoint::ghz()).unwrap()).starts_with("K,entries,largest,vanishing\n0,2,0.5,0\n1,0,0,1\n"));
    }

    #[test]
    fn flat_csv_layout() {
        let doc = json!({"dims": [2, 2], "x": 0.5, "flag": "PPT", "f": null});
        assert_eq!(flat_csv(&doc), "dims,x,flag,f\n2x2,0.5,PPT,\n");
    }
}
