//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use veronese_core::curves::{random_line, rnc};
use veronese_core::exactalg::rat;
use veronese_core::p1split::{is_injective, is_locally_free_cokernel};
use veronese_core::polyring::monomials;
use veronese_core::rng::SplitMix64;
use veronese_core::veronese::{normal_presentation, tangent_presentation, VeroneseContext};
use veronese_core::{CurveParam, GradedMap, HomPoly};

pub fn random_form(rng: &mut SplitMix64, num_vars: usize, degree: u32) -> HomPoly {
    let terms = monomials(num_vars, degree)
        .into_iter()
        .map(|m| (m, rat(rng.int_in(-3, 3))));
    HomPoly::from_terms(num_vars, degree, terms).expect("homogeneous")
}

pub fn random_twists(rng: &mut SplitMix64, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..len).map(|_| rng.int_in(lo, hi)).collect()
}

/// Random map `⊕O(source) -> ⊕O(target)`; entries of negative degree are zero.
pub fn random_map(rng: &mut SplitMix64, num_vars: usize, source: Vec<i64>, target: Vec<i64>) -> GradedMap {
    let mut entries = Vec::with_capacity(source.len() * target.len());
    for t in &target {
        for s in &source {
            let deg = t - s;
            entries.push(if deg < 0 {
                HomPoly::zero(num_vars, 0)
            } else {
                random_form(rng, num_vars, deg as u32)
            });
        }
    }
    GradedMap::new(num_vars, source, target, entries).expect("degrees match twists")
}

/// Random binary parametrization of degree `degree` in `P^{n}`, redrawn until base-point free.
pub fn random_curve(rng: &mut SplitMix64, n: usize, degree: u32) -> CurveParam {
    loop {
        let forms = (0..=n).map(|_| random_form(rng, 2, degree)).collect();
        if let Ok(c) = CurveParam::new(degree, forms) {
            return c;
        }
    }
}

/// Injective presentation on `P^1` with locally free cokernel: either a
/// restricted normal or tangent presentation, or a random map that passes
/// both prechecks.
pub fn random_bundle_presentation(seed: u64) -> GradedMap {
    let mut rng = SplitMix64::new(seed);
    match seed % 3 {
        0 => {
            let n = rng.int_in(1, 3) as usize;
            let d = rng.int_in(2, 3) as usize;
            let ctx = VeroneseContext::new(n, d).unwrap();
            let curve = if rng.int_in(0, 1) == 0 { random_line(n, seed).unwrap() } else { rnc(n, seed).unwrap() };
            normal_presentation(&ctx).pullback(&curve).unwrap()
        }
        1 => {
            let n = rng.int_in(1, 4) as usize;
            let degree = rng.int_in(1, 3) as u32;
            tangent_presentation(n).unwrap().pullback(&random_curve(&mut rng, n, degree)).unwrap()
        }
        _ => loop {
            let q = rng.int_in(1, 2) as usize;
            let p = q + rng.int_in(1, 2) as usize;
            let source = random_twists(&mut rng, q, -3, -1);
            let target = random_twists(&mut rng, p, 0, 1);
            let f = random_map(&mut rng, 2, source, target);
            if is_injective(&f).unwrap() && is_locally_free_cokernel(&f).unwrap() {
                break f;
            }
        },
    }
}

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Σ Z_i ∂f/∂Z_i = deg(f) · f`.
pub fn euler_identity(seed: u64) -> Check {
    let mut rng = SplitMix64::new(seed);
    let nv = rng.int_in(1, 4) as usize;
    let deg = rng.int_in(0, 5) as u32;
    let f = random_form(&mut rng, nv, deg);
    let lhs = (0..nv).fold(HomPoly::zero(nv, deg), |acc, i| {
        &acc + &HomPoly::var(nv, i).multiply(&f.differentiate(i))
    });
    ensure(lhs == f.scale(&rat(deg as i64)), || format!("seed {seed}: {f}"))
}

/// Substitution respects sums and products.
pub fn substitution_homomorphism(seed: u64) -> Check {
    let mut rng = SplitMix64::new(seed);
    let nv = rng.int_in(1, 3) as usize;
    let target_vars = rng.int_in(1, 3) as usize;
    let k = rng.int_in(1, 2) as u32;
    let forms: Vec<HomPoly> = (0..nv).map(|_| random_form(&mut rng, target_vars, k)).collect();
    let (da, db) = (rng.int_in(0, 3) as u32, rng.int_in(0, 3) as u32);
    let (f, g, h) = (
        random_form(&mut rng, nv, da),
        random_form(&mut rng, nv, db),
        random_form(&mut rng, nv, da),
    );
    let sub = |p: &HomPoly| p.substitute(&forms).map_err(|e| e.to_string());
    ensure(sub(&f.multiply(&g))? == sub(&f)?.multiply(&sub(&g)?), || format!("seed {seed}: product"))?;
    ensure(sub(&(&f + &h))? == &sub(&f)? + &sub(&h)?, || format!("seed {seed}: sum"))
}

/// `stratum(g ∘ f, m) = stratum(g, m) · stratum(f, m)`.
pub fn stratum_functoriality(seed: u64) -> Check {
    let mut rng = SplitMix64::new(seed);
    let nv = rng.int_in(2, 3) as usize;
    let (a, b, c) = (rng.int_in(1, 2) as usize, rng.int_in(1, 3) as usize, rng.int_in(1, 2) as usize);
    let s = random_twists(&mut rng, a, -2, 0);
    let t = random_twists(&mut rng, b, 0, 1);
    let u = random_twists(&mut rng, c, 1, 2);
    let f = random_map(&mut rng, nv, s, t.clone());
    let g = random_map(&mut rng, nv, t, u);
    let gf = g.compose(&f).map_err(|e| e.to_string())?;
    for m in -2..=2 {
        let prod = g.stratum(m).mul(&f.stratum(m)).map_err(|e| e.to_string())?;
        ensure(gf.stratum(m) == prod, || format!("seed {seed}: m={m}"))?;
    }
    Ok(())
}

/// `h^0` from the splitting type equals the cokernel dimension of the strata
/// wherever `H^1` of the source vanishes.
pub fn h0_oracle(seed: u64) -> Check {
    let pres = random_bundle_presentation(seed);
    let st = veronese_core::p1split::splitting_type(&pres).map_err(|e| format!("seed {seed}: {e}"))?;
    let lo = -pres.source_twists().iter().min().copied().unwrap_or(0) - 1;
    let top = st.degrees().first().copied().unwrap_or(0);
    let lo = lo.max(-top - 2);
    let hi = top + 2;
    let profile = veronese_core::p1split::h0_profile(&st, lo, hi);
    for (k, m) in (lo..=hi).enumerate() {
        let direct = veronese_core::p1split::h0_from_presentation(&pres, m);
        ensure(direct == profile[k], || format!("seed {seed}: m={m} direct {direct} vs {}", profile[k]))?;
    }
    Ok(())
}

/// `Σ b_i = Σ t_i - Σ s_j` and the rank is `p - q`.
pub fn degree_conservation(seed: u64) -> Check {
    let pres = random_bundle_presentation(seed);
    let st = veronese_core::p1split::splitting_type(&pres).map_err(|e| format!("seed {seed}: {e}"))?;
    let expect: i64 = pres.target_twists().iter().sum::<i64>() - pres.source_twists().iter().sum::<i64>();
    ensure(st.degree() == expect, || format!("seed {seed}: degree {} vs {expect}", st.degree()))?;
    ensure(st.rank() == pres.rows() - pres.cols(), || format!("seed {seed}: rank"))
}

/// Pulling back commutes with composition.
pub fn pullback_compose(seed: u64) -> Check {
    let mut rng = SplitMix64::new(seed);
    let n = rng.int_in(1, 3) as usize;
    let s = random_twists(&mut rng, 2, -1, 0);
    let t = random_twists(&mut rng, 2, 0, 1);
    let u = random_twists(&mut rng, 1, 1, 2);
    let f = random_map(&mut rng, n + 1, s, t.clone());
    let g = random_map(&mut rng, n + 1, t, u);
    let degree = rng.int_in(1, 2) as u32;
    let curve = random_curve(&mut rng, n, degree);
    let lhs = g.compose(&f).and_then(|h| h.pullback(&curve)).map_err(|e| e.to_string())?;
    let rhs = g
        .pullback(&curve)
        .and_then(|gp| gp.compose(&f.pullback(&curve)?))
        .map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || format!("seed {seed}"))
}
