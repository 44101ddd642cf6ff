//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p veronese-core --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use veronese_core::chow::gm_check;
use veronese_core::curves::{random_line, rnc, standard_line};
use veronese_core::exactalg::{binomial, rat};
use veronese_core::p1split::{splitting_type, sym_square, SplittingType};
use veronese_core::symlin::{check_commute, random_ses};
use veronese_core::veronese::{
    k_bundle_stats, k_dual_presentation, normal_presentation, tangent_presentation,
    verify_dual_identity, VeroneseContext,
};
use veronese_core::CurveParam;

type Outcome = Result<String, String>;
type Suite = (&'static str, fn(u64) -> common::Check);
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn multiset(parts: &[(i64, usize)]) -> SplittingType {
    SplittingType::new(parts.iter().flat_map(|&(b, k)| std::iter::repeat_n(b, k)).collect())
}

fn line_multiset(n: usize) -> SplittingType {
    multiset(&[(2, n * (n - 1) / 2), (3, n - 1), (4, 1)])
}

fn rnc_multiset(n: usize) -> SplittingType {
    multiset(&[(2 * n as i64 + 2, n * (n + 1) / 2)])
}

fn normal_on(n: usize, d: usize, curve: &CurveParam) -> Result<SplittingType, String> {
    let ctx = VeroneseContext::new(n, d).map_err(|e| e.to_string())?;
    let pres = normal_presentation(&ctx).pullback(curve).map_err(|e| e.to_string())?;
    splitting_type(&pres).map_err(|e| e.to_string())
}

fn expect(label: String, got: &SplittingType, want: &SplittingType) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, expected {want}"))
    }
}

fn c1_rnc_n1() -> Outcome {
    for d in 2..=8 {
        let ctx = VeroneseContext::new(1, d).map_err(|e| e.to_string())?;
        let st = splitting_type(&normal_presentation(&ctx)).map_err(|e| e.to_string())?;
        expect(format!("d={d}"), &st, &multiset(&[(d as i64 + 2, d - 1)]))?;
    }
    Ok("n=1, d=2..8".into())
}

fn c2_lines() -> Outcome {
    for n in 2..=5 {
        let want = line_multiset(n);
        let std_line = standard_line(n).map_err(|e| e.to_string())?;
        expect(format!("n={n} standard line"), &normal_on(n, 2, &std_line)?, &want)?;
        for seed in 1..=10 {
            let line = random_line(n, seed).map_err(|e| e.to_string())?;
            expect(format!("n={n} seed {seed}"), &normal_on(n, 2, &line)?, &want)?;
        }
    }
    Ok("n=2..5, standard line + 10 random lines each".into())
}

fn c3_rncs() -> Outcome {
    for n in 2..=4 {
        for seed in 1..=5 {
            let curve = rnc(n, seed).map_err(|e| e.to_string())?;
            expect(format!("n={n} seed {seed}"), &normal_on(n, 2, &curve)?, &rnc_multiset(n))?;
        }
    }
    Ok("n=2..4, 5 random rational normal curves each".into())
}

fn c4_grauert_mulich() -> Outcome {
    for (n, d) in [(2usize, 3usize), (2, 4), (3, 3)] {
        let ctx = VeroneseContext::new(n, d).map_err(|e| e.to_string())?;
        let big = binomial((n + d) as i64, d as i64);
        for seed in 1..=10 {
            let line = random_line(n, seed).map_err(|e| e.to_string())?;
            let st = normal_on(n, d, &line)?;
            let b = st.degrees();
            let spread_ok = b.windows(2).all(|w| w[0] - w[1] >= 0 && w[0] - w[1] <= 1);
            let sum_ok = st.degree() == big * d as i64 - (n as i64 + 1);
            let rank_ok = st.rank() as i64 == big - n as i64 - 1;
            if !(spread_ok && sum_ok && rank_ok && gm_check(&st, &ctx).all_ok()) {
                return Err(format!("n={n} d={d} seed {seed}: {st}"));
            }
        }
    }
    Ok("(2,3), (2,4), (3,3) with 10 random lines each".into())
}

fn c5_dual_identity() -> Outcome {
    let mut diag = Vec::new();
    for n in 1..=4 {
        for d in 2..=4 {
            let ctx = VeroneseContext::new(n, d).map_err(|e| e.to_string())?;
            let r = verify_dual_identity(&ctx);
            if !r.holds {
                return Err(format!("n={n} d={d}: {}", r.message));
            }
            match &r.uniform_scalar {
                Some(s) => diag.push(format!("({n},{d})x{s}")),
                None => return Err(format!("n={n} d={d}: rescaling is not scalar: {}", r.message)),
            }
        }
    }
    Ok(format!("n<=4, d<=4; rescaling {}", diag.join(" ")))
}

fn c6_sym_commute() -> Outcome {
    let mut count = 0;
    for seed in 0..100u64 {
        let dim_n = 2 + (seed % 4) as usize;
        let dim_m = 1 + (seed / 4) as usize % (dim_n - 1);
        let i = 1 + (seed / 7 % 3) as usize;
        let ses = random_ses(dim_m, dim_n, 1000 + seed).map_err(|e| e.to_string())?;
        if !check_commute(&ses, i).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed}: dim M={dim_m} dim N={dim_n} i={i}"));
        }
        count += 1;
    }
    Ok(format!("{count} sequences, middle dimension 2..5, i=1..3"))
}

fn c7_k_tower() -> Outcome {
    for n in 1..=8 {
        for d in 2..=8 {
            let ctx = VeroneseContext::new(n, d).map_err(|e| e.to_string())?;
            let mut slopes = Vec::new();
            for i in 1..=d + 1 {
                slopes.push(k_bundle_stats(&ctx, i).map_err(|e| e.to_string())?.slope);
            }
            if !slopes.windows(2).all(|w| w[0] < w[1]) || slopes[d] != rat(0) {
                return Err(format!("n={n} d={d}: slopes {slopes:?}"));
            }
        }
    }
    for n in 1..=3 {
        for d in 2..=3 {
            let ctx = VeroneseContext::new(n, d).map_err(|e| e.to_string())?;
            let line = random_line(n, 77).map_err(|e| e.to_string())?;
            for i in 1..=d + 1 {
                let k = k_bundle_stats(&ctx, i).map_err(|e| e.to_string())?;
                let st = k_dual_presentation(&ctx, i)
                    .and_then(|p| p.pullback(&line))
                    .and_then(|p| splitting_type(&p))
                    .map_err(|e| e.to_string())?;
                if st.degree() != -k.degree {
                    return Err(format!("n={n} d={d} i={i}: {st} vs degree {}", k.degree));
                }
            }
        }
    }
    Ok("monotone with terminal zero for n,d<=8; degrees cross-checked for n,d<=3".into())
}

fn c8_tangent() -> Outcome {
    for n in 2..=4 {
        let t = tangent_presentation(n).map_err(|e| e.to_string())?;
        let mut curves = vec![("standard line", standard_line(n).map_err(|e| e.to_string())?)];
        curves.push(("random line", random_line(n, 5).map_err(|e| e.to_string())?));
        for (label, line) in curves {
            let st = splitting_type(&t.pullback(&line).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            expect(format!("n={n} {label}"), &st, &multiset(&[(2, 1), (1, n - 1)]))?;
            expect(format!("n={n} {label} sym^2"), &sym_square(&st), &line_multiset(n))?;
        }
        for seed in [0, 3] {
            let curve = rnc(n, seed).map_err(|e| e.to_string())?;
            let st = splitting_type(&t.pullback(&curve).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            expect(format!("n={n} rnc seed {seed}"), &st, &multiset(&[(n as i64 + 1, n)]))?;
            expect(format!("n={n} rnc seed {seed} sym^2"), &sym_square(&st), &rnc_multiset(n))?;
        }
    }
    Ok("n=2..4 on lines and rational normal curves, with symmetric squares".into())
}

fn c9_properties() -> Outcome {
    const INSTANCES: u64 = 64;
    let suites: [Suite; 5] = [
        ("euler identity", common::euler_identity),
        ("substitution homomorphism", common::substitution_homomorphism),
        ("stratum functoriality", common::stratum_functoriality),
        ("h0 oracle", common::h0_oracle),
        ("degree conservation", common::degree_conservation),
    ];
    for (name, suite) in suites {
        for seed in 0..INSTANCES {
            suite(seed).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(format!("5 suites x {INSTANCES} seeded instances"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("C1 rational normal curve n=1", c1_rnc_n1, Some(Duration::from_secs(30))),
        ("C2 lines, d=2", c2_lines, Some(Duration::from_secs(300))),
        ("C3 rational normal curves, d=2", c3_rncs, Some(Duration::from_secs(600))),
        ("C4 Grauert-Mulich and Chern", c4_grauert_mulich, None),
        ("C5 dual identity", c5_dual_identity, None),
        ("C6 symmetric power commutation", c6_sym_commute, Some(Duration::from_secs(30))),
        ("C7 K-tower slopes", c7_k_tower, None),
        ("C8 tangent restrictions", c8_tangent, None),
        ("C9 property suites", c9_properties, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("runtime {elapsed:.2?} exceeds limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} [{elapsed:.2?}] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{elapsed:.2?}] {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
