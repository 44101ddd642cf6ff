use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use veronese_core::chow::{chern_normal, gm_check, hilbert_poly, normal_stats, restricted_degree};
use veronese_core::curves::{random_line, rnc};
use veronese_core::exactalg::rat_to_string;
use veronese_core::p1split::splitting_type;
use veronese_core::verify::{run_verify, Scope, VerifyOptions};
use veronese_core::veronese::{k_bundle_stats, normal_presentation};
use veronese_core::{CurveParam, Rat, VeroneseContext};

use crate::{CurveKind, Failure};

/// JSON document plus the verification failures it reports.
pub struct Output {
    pub json: Value,
    pub failures: Vec<String>,
}

impl From<Value> for Output {
    fn from(json: Value) -> Self {
        Output {
            json,
            failures: Vec::new(),
        }
    }
}

fn rats(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat_to_string).collect()
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn normal(n: usize, d: usize) -> Result<Output, Failure> {
    let ctx = VeroneseContext::new(n, d)?;
    let pres = normal_presentation(&ctx);
    let stats = normal_stats(&ctx);
    let hilbert = hilbert_poly(&pres);
    Ok(json!({
        "command": "normal",
        "n": n,
        "d": d,
        "presentation": to_json(&pres),
        "rank": rat_to_string(&stats.rank),
        "degree": rat_to_string(&stats.degree),
        "slope": rat_to_string(&stats.slope),
        "hilbertPolynomial": {
            "text": hilbert.to_text(),
            "coefficients": rats(&hilbert.coefficients()),
        },
        "chern": rats(chern_normal(&ctx).coeffs()),
    })
    .into())
}

fn read_curve(path: &Path, n: usize) -> Result<CurveParam, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let curve: CurveParam = serde_json::from_str(&text)
        .map_err(|e| Failure::io(format!("{}: invalid curve file: {e}", path.display())))?;
    if curve.ambient_vars() != n + 1 {
        return Err(Failure::io(format!(
            "{}: curve has {} coordinates, expected {}",
            path.display(),
            curve.ambient_vars(),
            n + 1
        )));
    }
    Ok(curve)
}

pub fn restrict(
    n: usize,
    d: usize,
    kind: CurveKind,
    path: Option<&Path>,
    samples: usize,
    seed: u64,
) -> Result<Output, Failure> {
    let ctx = VeroneseContext::new(n, d)?;
    let curves: Vec<(Option<u64>, CurveParam)> = match kind {
        CurveKind::File => {
            let path = path.ok_or_else(|| Failure::io("--curve file needs --path"))?;
            vec![(None, read_curve(path, n)?)]
        }
        CurveKind::Line | CurveKind::Rnc => (0..samples as u64)
            .map(|k| {
                let s = seed.wrapping_add(k);
                let c = if kind == CurveKind::Line { random_line(n, s) } else { rnc(n, s) };
                c.map(|c| (Some(s), c))
            })
            .collect::<Result<_, _>>()?,
    };
    let pres = normal_presentation(&ctx);
    let results: Vec<(Option<u64>, CurveParam, _)> = curves
        .into_par_iter()
        .map(|(s, c)| {
            let st = pres.pullback(&c).and_then(|p| splitting_type(&p));
            (s, c, st)
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut splittings = Vec::with_capacity(results.len());
    for (index, (s, curve, st)) in results.into_iter().enumerate() {
        let st = st?;
        let gm = (curve.degree() == 1).then(|| {
            let gm = gm_check(&st, &ctx);
            json!({
                "spreadOk": gm.spread_ok,
                "sumOk": gm.sum_ok,
                "rankOk": gm.rank_ok,
                "expectedSum": gm.expected_sum,
                "expectedRank": gm.expected_rank,
            })
        });
        let expected_degree = restricted_degree(&ctx, curve.degree());
        rows.push(json!({
            "index": index,
            "seed": s,
            "curve": to_json(&curve),
            "splitting": to_json(&st),
            "expectedDegree": expected_degree,
            "degreeOk": st.degree() == expected_degree,
            "gm": gm,
        }));
        splittings.push(st);
    }
    let all_identical = splittings.windows(2).all(|w| w[0] == w[1]);
    let kind_name = match kind {
        CurveKind::Line => "line",
        CurveKind::Rnc => "rnc",
        CurveKind::File => "file",
    };
    Ok(json!({
        "command": "restrict",
        "n": n,
        "d": d,
        "curve": kind_name,
        "baseSeed": if kind == CurveKind::File { None } else { Some(seed) },
        "path": path.map(|p| p.display().to_string()),
        "samples": rows,
        "allIdentical": all_identical,
    })
    .into())
}

pub fn slopes(n: usize, d: usize) -> Result<Output, Failure> {
    let ctx = VeroneseContext::new(n, d)?;
    let stats = (1..=d + 1)
        .map(|i| k_bundle_stats(&ctx, i))
        .collect::<Result<Vec<_>, _>>()?;
    let monotone = stats.windows(2).all(|w| w[0].slope < w[1].slope);
    Ok(json!({
        "command": "slopes",
        "n": n,
        "d": d,
        "rows": stats.iter().map(|s| json!({
            "i": s.i,
            "rank": s.rank,
            "degree": s.degree,
            "slope": rat_to_string(&s.slope),
        })).collect::<Vec<_>>(),
        "monotone": if monotone { "pass" } else { "fail" },
    })
    .into())
}

pub fn verify(scope: Scope, golden_dir: Option<PathBuf>) -> Output {
    let report = run_verify(&VerifyOptions { scope, golden_dir });
    let failures = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let mut json = to_json(&report);
    json.as_object_mut()
        .expect("report is an object")
        .insert("command".into(), json!("verify"));
    Output { json, failures }
}
