//! Verification corpus behind `veronese verify`.
//!
//! Each check is exact and reports its own wall time. The `fast` scope runs
//! reduced ranges; `full` covers every configuration up to `n = 5`.
//! Golden files are read from a directory when one is given and otherwise
//! from copies compiled into the crate.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chow::{gm_check, hilbert_poly, normal_stats};
use crate::curves::{random_line, rnc, standard_line};
use crate::error::{Error, Result};
use crate::gradedmap::CurveParam;
use crate::p1split::{splitting_type, sym_square, SplittingType};
use crate::polyring::monomials;
use crate::symlin::{check_commute, random_ses};
use crate::veronese::{
    k_bundle_stats, k_dual_presentation, normal_presentation, tangent_presentation,
    verify_dual_identity, VeroneseContext,
};

pub const SEMISTABILITY_NOTE: &str = "slope semistability of Veronese normal bundles is not decided \
here; it is covered only through necessary conditions (grauert_mulich, dual_identity, k_tower_slopes)";

pub const GOLDEN_MONOMIALS: &str = "monomial_order.json";
pub const GOLDEN_LINE: &str = "random_line_n2_seed0.json";
pub const GOLDEN_RESTRICT: &str = "restrict_n2_d3_line_seed0_x10.json";

const EMBEDDED: [(&str, &str); 3] = [
    (GOLDEN_MONOMIALS, include_str!("../golden/monomial_order.json")),
    (GOLDEN_LINE, include_str!("../golden/random_line_n2_seed0.json")),
    (GOLDEN_RESTRICT, include_str!("../golden/restrict_n2_d3_line_seed0_x10.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Fast,
    Full,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Scope::Fast),
            "full" => Ok(Scope::Full),
            other => Err(Error::Parse(format!("unknown scope {other:?}"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Fast => "fast",
            Scope::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub scope: Scope,
    pub all_passed: bool,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub scope: Scope,
    pub golden_dir: Option<PathBuf>,
}

/// Outcome of a single check body: `Ok(detail)` passes, `Err(detail)` fails.
type Outcome = std::result::Result<String, String>;

fn timed(name: &str, body: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis() as u64;
    let (status, detail) = match outcome {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    };
    CheckResult {
        name: name.to_string(),
        status,
        detail,
        millis,
    }
}

fn ctx(n: usize, d: usize) -> std::result::Result<VeroneseContext, String> {
    VeroneseContext::new(n, d).map_err(|e| e.to_string())
}

fn restricted_splitting(c: &VeroneseContext, curve: &CurveParam) -> std::result::Result<SplittingType, String> {
    normal_presentation(c)
        .pullback(curve)
        .and_then(|p| splitting_type(&p))
        .map_err(|e| e.to_string())
}

/// `{4, 3^{n-1}, 2^{n(n-1)/2}}`.
pub fn expected_line_splitting(n: usize) -> SplittingType {
    SplittingType::uniform(4, 1)
        .direct_sum(&SplittingType::uniform(3, n - 1))
        .direct_sum(&SplittingType::uniform(2, n * (n - 1) / 2))
}

/// `{(2n+2)^{n(n+1)/2}}`.
pub fn expected_rnc_splitting(n: usize) -> SplittingType {
    SplittingType::uniform(2 * n as i64 + 2, n * (n + 1) / 2)
}

fn check_eq(what: String, got: &SplittingType, want: &SplittingType) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

// --- golden files -------------------------------------------------------

fn read_golden(dir: Option<&Path>, name: &str) -> std::result::Result<(String, String), String> {
    match dir {
        Some(dir) => {
            let path = dir.join(name);
            std::fs::read_to_string(&path)
                .map(|text| (path.display().to_string(), text))
                .map_err(|e| format!("golden file {}: {e}", path.display()))
        }
        None => EMBEDDED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(n, text)| (format!("<embedded>/{n}"), text.to_string()))
            .ok_or_else(|| format!("no embedded golden file {name}")),
    }
}

fn compare_golden(dir: Option<&Path>, name: &str, fresh: Value) -> Outcome {
    let (label, text) = read_golden(dir, name)?;
    let pinned: Value =
        serde_json::from_str(&text).map_err(|e| format!("golden file {label} is not valid JSON: {e}"))?;
    if pinned == fresh {
        Ok(format!("{label} matches"))
    } else {
        Err(format!("golden file {label} does not match the computed value"))
    }
}

pub fn golden_monomial_order() -> Value {
    let cases: Vec<Value> = [(2usize, 3u32), (3, 2), (4, 2)]
        .iter()
        .map(|&(nv, deg)| {
            let monos: Vec<Vec<u32>> = monomials(nv, deg).into_iter().map(|m| m.0).collect();
            json!({ "numVars": nv, "degree": deg, "monomials": monos })
        })
        .collect();
    json!({ "cases": cases })
}

pub fn golden_random_line() -> Result<Value> {
    let line = random_line(2, 0)?;
    serde_json::to_value(line).map_err(|e| Error::Parse(e.to_string()))
}

pub fn golden_restrict() -> Result<Value> {
    let c = VeroneseContext::new(2, 3)?;
    let seeds: Vec<u64> = (0..10).collect();
    let mut splittings = Vec::new();
    for &seed in &seeds {
        let st = splitting_type(&normal_presentation(&c).pullback(&random_line(2, seed)?)?)?;
        splittings.push(st.degrees().to_vec());
    }
    Ok(json!({ "n": 2, "d": 3, "curve": "line", "seeds": seeds, "splittings": splittings }))
}

/// Writes freshly computed golden files into `dir`.
pub fn write_golden_files(dir: &Path) -> Result<()> {
    let files = [
        (GOLDEN_MONOMIALS, golden_monomial_order()),
        (GOLDEN_LINE, golden_random_line()?),
        (GOLDEN_RESTRICT, golden_restrict()?),
    ];
    for (name, value) in files {
        let text = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(dir.join(name), text + "\n").map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    Ok(())
}

// --- mathematical checks ------------------------------------------------

fn rnc_splitting_n1(max_d: usize) -> Outcome {
    for d in 2..=max_d {
        let c = ctx(1, d)?;
        let st = splitting_type(&normal_presentation(&c)).map_err(|e| e.to_string())?;
        check_eq(format!("d={d}"), &st, &SplittingType::uniform(d as i64 + 2, d - 1))?;
    }
    Ok(format!("n=1, d=2..={max_d}: O(d+2)^(d-1)"))
}

fn lines_d2(max_n: usize, lines: u64) -> Outcome {
    for n in 2..=max_n {
        let c = ctx(n, 2)?;
        let want = expected_line_splitting(n);
        let mut curves = vec![("standard".to_string(), standard_line(n).map_err(|e| e.to_string())?)];
        for seed in 0..lines {
            curves.push((format!("seed {seed}"), random_line(n, seed).map_err(|e| e.to_string())?));
        }
        for (label, curve) in &curves {
            check_eq(format!("n={n} {label}"), &restricted_splitting(&c, curve)?, &want)?;
        }
    }
    Ok(format!("n=2..={max_n}, d=2: standard line plus {lines} random lines each"))
}

fn rnc_d2(max_n: usize, curves: u64) -> Outcome {
    for n in 2..=max_n {
        let c = ctx(n, 2)?;
        let want = expected_rnc_splitting(n);
        for seed in 1..=curves {
            let curve = rnc(n, seed).map_err(|e| e.to_string())?;
            check_eq(format!("n={n} seed {seed}"), &restricted_splitting(&c, &curve)?, &want)?;
        }
    }
    Ok(format!("n=2..={max_n}, d=2: {curves} random rational normal curves each"))
}

fn grauert_mulich(cases: &[(usize, usize)], lines: u64) -> Outcome {
    for &(n, d) in cases {
        let c = ctx(n, d)?;
        for seed in 0..lines {
            let curve = random_line(n, seed).map_err(|e| e.to_string())?;
            let st = restricted_splitting(&c, &curve)?;
            let report = gm_check(&st, &c);
            if !report.all_ok() {
                return Err(format!("n={n} d={d} seed {seed}: {st} fails {report:?}"));
            }
        }
    }
    Ok(format!("{cases:?}: {lines} random lines each, spread <= 1, sum and rank match"))
}

fn dual_identity() -> Outcome {
    let mut scalars = Vec::new();
    for n in 1..=4 {
        for d in 2..=4 {
            let r = verify_dual_identity(&ctx(n, d)?);
            if !r.holds {
                return Err(format!("n={n} d={d}: {}", r.message));
            }
            let scalar = r
                .uniform_scalar
                .as_ref()
                .map(|s| s.to_string())
                .unwrap_or_else(|| "non-uniform".into());
            scalars.push(format!("(n={n},d={d}):{scalar}"));
        }
    }
    Ok(format!("rescaling scalars {}", scalars.join(" ")))
}

fn sym_commute(count: u64) -> Outcome {
    for seed in 0..count {
        let dim_n = 2 + (seed % 4) as usize;
        let dim_m = 1 + (seed / 4) as usize % (dim_n - 1);
        let i = 1 + (seed % 3) as usize;
        let ses = random_ses(dim_m, dim_n, seed).map_err(|e| e.to_string())?;
        if !check_commute(&ses, i).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed} (dim M={dim_m}, dim N={dim_n}, i={i}) does not commute"));
        }
    }
    Ok(format!("{count} seeded sequences, middle dimension <= 5, i <= 3"))
}

fn k_tower(cross_max: usize) -> Outcome {
    for n in 1..=8 {
        for d in 2..=8 {
            let c = ctx(n, d)?;
            let stats: Vec<_> = (1..=d + 1)
                .map(|i| k_bundle_stats(&c, i))
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            if !stats.windows(2).all(|w| w[0].slope < w[1].slope) {
                return Err(format!("n={n} d={d}: slopes not strictly increasing"));
            }
            if stats[d].degree != 0 {
                return Err(format!("n={n} d={d}: terminal slope is not zero"));
            }
        }
    }
    for n in 1..=cross_max {
        for d in 2..=cross_max.max(2) {
            let c = ctx(n, d)?;
            let line = random_line(n, 1).map_err(|e| e.to_string())?;
            for i in 1..=d + 1 {
                let k = k_bundle_stats(&c, i).map_err(|e| e.to_string())?;
                let st = k_dual_presentation(&c, i)
                    .and_then(|p| p.pullback(&line))
                    .and_then(|p| splitting_type(&p))
                    .map_err(|e| e.to_string())?;
                if st.degree() != -k.degree || st.rank() as i64 != k.rank {
                    return Err(format!(
                        "n={n} d={d} i={i}: dual restriction {st} vs rank {} degree {}",
                        k.rank, k.degree
                    ));
                }
            }
        }
    }
    Ok(format!("monotone for n,d <= 8; degrees cross-checked on a line for n,d <= {cross_max}"))
}

fn tangent_restrictions(max_n: usize) -> Outcome {
    for n in 2..=max_n {
        let t = tangent_presentation(n).map_err(|e| e.to_string())?;
        let line = random_line(n, 0).map_err(|e| e.to_string())?;
        let on_line = splitting_type(&t.pullback(&line).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let want_line = SplittingType::uniform(2, 1).direct_sum(&SplittingType::uniform(1, n - 1));
        check_eq(format!("line n={n}"), &on_line, &want_line)?;
        check_eq(format!("sym_square line n={n}"), &sym_square(&on_line), &expected_line_splitting(n))?;
        let curve = rnc(n, 1).map_err(|e| e.to_string())?;
        let on_rnc = splitting_type(&t.pullback(&curve).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check_eq(format!("rnc n={n}"), &on_rnc, &SplittingType::uniform(n as i64 + 1, n))?;
        check_eq(format!("sym_square rnc n={n}"), &sym_square(&on_rnc), &expected_rnc_splitting(n))?;
    }
    Ok(format!("n=2..={max_n}: lines give 2,1^(n-1); rational normal curves give (n+1)^n"))
}

fn hilbert_consistency(max: usize) -> Outcome {
    for n in 1..=max {
        for d in 2..=max {
            let c = ctx(n, d)?;
            let h = hilbert_poly(&normal_presentation(&c));
            let stats = normal_stats(&c);
            if h.rank() != stats.rank || h.degree() != stats.degree {
                return Err(format!("n={n} d={d}: Hilbert polynomial disagrees with Chern data"));
            }
        }
    }
    Ok(format!("rank and degree agree for n, d <= {max}"))
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let full = opts.scope == Scope::Full;
    let dir = opts.golden_dir.as_deref();
    let mut checks = vec![
        timed("golden_monomial_order", || compare_golden(dir, GOLDEN_MONOMIALS, golden_monomial_order())),
        timed("golden_random_line", || {
            compare_golden(dir, GOLDEN_LINE, golden_random_line().map_err(|e| e.to_string())?)
        }),
        timed("golden_restrict_splittings", || {
            compare_golden(dir, GOLDEN_RESTRICT, golden_restrict().map_err(|e| e.to_string())?)
        }),
        timed("rnc_splitting_n1", || rnc_splitting_n1(if full { 8 } else { 6 })),
        timed("lines_d2", || if full { lines_d2(5, 10) } else { lines_d2(4, 3) }),
        timed("rnc_d2", || if full { rnc_d2(4, 5) } else { rnc_d2(3, 2) }),
    ];
    let gm_cases: &[(usize, usize)] = if full { &[(2, 3), (2, 4), (3, 3)] } else { &[(2, 3), (3, 3)] };
    checks.push(timed("grauert_mulich", || grauert_mulich(gm_cases, if full { 10 } else { 3 })));
    checks.push(timed("dual_identity", dual_identity));
    checks.push(timed("sym_commute", || sym_commute(if full { 100 } else { 30 })));
    checks.push(timed("k_tower_slopes", || k_tower(if full { 3 } else { 2 })));
    checks.push(timed("tangent_restrictions", || tangent_restrictions(if full { 4 } else { 3 })));
    checks.push(timed("hilbert_consistency", || hilbert_consistency(if full { 4 } else { 3 })));
    VerifyReport {
        scope: opts.scope,
        all_passed: checks.iter().all(|c| c.status == Status::Pass),
        checks,
        notes: vec![SEMISTABILITY_NOTE.to_string()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_goldens_match() {
        let dir: Option<&Path> = None;
        assert!(compare_golden(dir, GOLDEN_MONOMIALS, golden_monomial_order()).is_ok());
        assert!(compare_golden(dir, GOLDEN_LINE, golden_random_line().unwrap()).is_ok());
        assert!(compare_golden(dir, GOLDEN_RESTRICT, golden_restrict().unwrap()).is_ok());
    }

    #[test]
    fn on_disk_goldens_match_embedded() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
        for (name, text) in EMBEDDED {
            assert_eq!(std::fs::read_to_string(dir.join(name)).unwrap(), text, "{name}");
        }
    }

    #[test]
    fn corrupted_golden_names_the_file() {
        let dir = std::env::temp_dir().join(format!("veronese-golden-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        write_golden_files(&dir).unwrap();
        std::fs::write(dir.join(GOLDEN_LINE), "{\"degree\": 1, \"forms\": []}").unwrap();
        let err = compare_golden(Some(&dir), GOLDEN_LINE, golden_random_line().unwrap()).unwrap_err();
        assert!(err.contains(GOLDEN_LINE), "{err}");
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn expected_multisets() {
        assert_eq!(expected_line_splitting(3).degrees(), &[4, 3, 3, 2, 2, 2]);
        assert_eq!(expected_rnc_splitting(2).degrees(), &[6, 6, 6]);
        assert_eq!("fast".parse::<Scope>().unwrap(), Scope::Fast);
        assert!("medium".parse::<Scope>().is_err());
    }
}
