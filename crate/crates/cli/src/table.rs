//! Plain-text views of the JSON outputs.

use std::fmt::Write;

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn list(v: &Value) -> String {
    v.as_array()
        .map(|xs| xs.iter().map(s).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

pub fn render(doc: &Value) -> String {
    let mut out = String::new();
    match doc["command"].as_str() {
        Some("normal") => normal(doc, &mut out),
        Some("restrict") => restrict(doc, &mut out),
        Some("slopes") => slopes(doc, &mut out),
        Some("verify") => verify(doc, &mut out),
        _ => out.push_str(&doc.to_string()),
    }
    out
}

fn normal(doc: &Value, out: &mut String) {
    let _ = writeln!(out, "normal bundle of v_{{{},{}}}", s(&doc["n"]), s(&doc["d"]));
    for key in ["rank", "degree", "slope"] {
        let _ = writeln!(out, "{key:<8} {}", s(&doc[key]));
    }
    let _ = writeln!(out, "hilbert  {}", s(&doc["hilbertPolynomial"]["text"]));
    let _ = writeln!(out, "chern    [{}]", list(&doc["chern"]));
    let pres = &doc["presentation"];
    let _ = writeln!(
        out,
        "presentation  O({}) -> O({})",
        list(&pres["sourceTwists"]),
        list(&pres["targetTwists"])
    );
    for row in pres["entries"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  [{}]", list(row));
    }
}

fn restrict(doc: &Value, out: &mut String) {
    let _ = writeln!(
        out,
        "n={} d={} curve={} base seed={}",
        s(&doc["n"]),
        s(&doc["d"]),
        s(&doc["curve"]),
        s(&doc["baseSeed"])
    );
    let _ = writeln!(out, "{:>5} {:>20}  {:<6} splitting", "index", "seed", "checks");
    for sample in doc["samples"].as_array().into_iter().flatten() {
        let gm = &sample["gm"];
        let ok = sample["degreeOk"] == Value::Bool(true)
            && (gm.is_null() || ["spreadOk", "sumOk", "rankOk"].iter().all(|k| gm[k] == Value::Bool(true)));
        let _ = writeln!(
            out,
            "{:>5} {:>20}  {:<6} {}",
            s(&sample["index"]),
            s(&sample["seed"]),
            if ok { "ok" } else { "FAIL" },
            list(&sample["splitting"]["degrees"])
        );
    }
    let _ = writeln!(out, "all samples identical: {}", s(&doc["allIdentical"]));
}

fn slopes(doc: &Value, out: &mut String) {
    let _ = writeln!(out, "K-tower for n={} d={}", s(&doc["n"]), s(&doc["d"]));
    let _ = writeln!(out, "{:>3} {:>8} {:>10} {:>12}", "i", "rank", "degree", "slope");
    for row in doc["rows"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>10} {:>12}",
            s(&row["i"]),
            s(&row["rank"]),
            s(&row["degree"]),
            s(&row["slope"])
        );
    }
    let _ = writeln!(out, "monotone: {}", s(&doc["monotone"]));
}

fn verify(doc: &Value, out: &mut String) {
    let _ = writeln!(out, "scope: {}", s(&doc["scope"]));
    for check in doc["checks"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "{:<5} {:<28} {:>7}ms  {}",
            s(&check["status"]).to_uppercase(),
            s(&check["name"]),
            s(&check["millis"]),
            s(&check["detail"])
        );
    }
    for note in doc["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "note: {}", s(note));
    }
    let _ = writeln!(out, "all passed: {}", s(&doc["allPassed"]));
}
