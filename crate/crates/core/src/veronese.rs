//! The specific maps attached to a Veronese embedding `v_{n,d}`.
//!
//! Conventions, all in the graded-lexicographic monomial basis of `Sym^k V`:
//!
//! * `theta_matrix` has entry `∂(Z^γ)/∂Z_i` at row `γ`, column `i`. The
//!   contraction `(Σ Z_i ∂/∂X_i)^{d-1}` produces `r_γ · γ_i · Z^{γ-e_i}` with
//!   `r_γ = (d-1)!/γ!`; dividing row `γ` by `r_γ` is an automorphism of the
//!   target, so the cokernel is unchanged.
//! * `xi_matrix(i)` has entry `γ_j · Z_j` at row `β`, column `γ = β + e_j`.
//!
//! With these choices `delta_matrix(d-1) = (d-1)! · dual(theta_matrix)`:
//! every path from `γ` down to `e_i` picks up the product `γ!`, and there are
//! `(d-1)!·γ_i/γ!` such paths. [`verify_dual_identity`] recovers that
//! diagonal from the matrices rather than assuming it.

use std::collections::VecDeque;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{binomial, rat, rat_to_string, Rat};
use crate::gradedmap::GradedMap;
use crate::polyring::{monomial_index, monomials, HomPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VeroneseContext {
    n: usize,
    d: usize,
}

impl VeroneseContext {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        match d {
            0 => Err(Error::InvalidInput("d must be at least 2".into())),
            1 => Err(Error::DegreeOne),
            _ => Ok(VeroneseContext { n, d }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `dim Sym^d V = C(n+d, d)`.
    pub fn n_sym(&self) -> usize {
        binomial((self.n + self.d) as i64, self.d as i64) as usize
    }

    fn num_vars(&self) -> usize {
        self.n + 1
    }
}

/// `Θ: V ⊗ O(1-d) -> Sym^d V ⊗ O`.
pub fn theta_matrix(ctx: &VeroneseContext) -> GradedMap {
    let nv = ctx.num_vars();
    let d = ctx.d as u32;
    let rows = monomials(nv, d);
    let mut entries = Vec::with_capacity(rows.len() * nv);
    for gamma in &rows {
        let z_gamma = HomPoly::monomial(nv, gamma.clone(), Rat::one());
        for i in 0..nv {
            entries.push(z_gamma.differentiate(i));
        }
    }
    GradedMap::new(
        nv,
        vec![1 - ctx.d as i64; nv],
        vec![0; rows.len()],
        entries,
    )
    .expect("theta entries have degree d-1")
}

/// `Θ': V ⊗ O(1) -> Sym^d V ⊗ O(d)`, whose cokernel is the normal bundle.
pub fn normal_presentation(ctx: &VeroneseContext) -> GradedMap {
    theta_matrix(ctx).twist(ctx.d as i64)
}

/// `ξ_i: Sym^i V ⊗ O(top-i) -> Sym^{i-1} V ⊗ O(top-i+1)` for `1 <= i <= top`.
fn xi_map(n: usize, top: usize, i: usize) -> GradedMap {
    let nv = n + 1;
    let cols = monomials(nv, i as u32);
    let rows = monomial_index(nv, i as u32 - 1);
    let mut entries = vec![HomPoly::zero(nv, 1); rows.len() * cols.len()];
    for (c, gamma) in cols.iter().enumerate() {
        for j in 0..nv {
            if let Some(beta) = gamma.div_var(j) {
                let r = rows[&beta];
                entries[r * cols.len() + c] = HomPoly::var(nv, j).scale(&rat(gamma.0[j] as i64));
            }
        }
    }
    GradedMap::new(
        nv,
        vec![(top - i) as i64; cols.len()],
        vec![(top - i + 1) as i64; rows.len()],
        entries,
    )
    .expect("xi entries are linear")
}

pub fn xi_matrix(ctx: &VeroneseContext, i: usize) -> Result<GradedMap> {
    if i == 0 || i > ctx.d {
        return Err(Error::OutOfRange {
            what: "xi level",
            index: i as i64,
            lo: 1,
            hi: ctx.d as i64,
        });
    }
    Ok(xi_map(ctx.n, ctx.d, i))
}

fn delta_map(n: usize, top: usize, i: usize) -> GradedMap {
    let mut acc = xi_map(n, top, top);
    for k in (top - i + 1..top).rev() {
        acc = xi_map(n, top, k).compose(&acc).expect("consecutive xi maps compose");
    }
    acc
}

/// `δ^i_d = ξ_{d-i+1} ∘ ... ∘ ξ_d: Sym^d V ⊗ O -> Sym^{d-i} V ⊗ O(i)`.
pub fn delta_matrix(ctx: &VeroneseContext, i: usize) -> Result<GradedMap> {
    if i == 0 || i > ctx.d {
        return Err(Error::OutOfRange {
            what: "delta level",
            index: i as i64,
            lo: 1,
            hi: ctx.d as i64,
        });
    }
    Ok(delta_map(ctx.n, ctx.d, i))
}

/// `δ^1_{k}` on `Sym^k V`, i.e. the first contraction for a smaller degree.
/// Accepts `k = 1`, where no Veronese context exists.
pub fn delta_one(n: usize, k: usize) -> Result<GradedMap> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("delta_one needs n >= 1 and k >= 1".into()));
    }
    Ok(xi_map(n, k, k))
}

/// Euler section `O -> V ⊗ O(1)`, column `(Z_0, ..., Z_n)`; its cokernel is
/// the tangent bundle of `P^n`.
pub fn tangent_presentation(n: usize) -> Result<GradedMap> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let nv = n + 1;
    GradedMap::new(
        nv,
        vec![0],
        vec![1; nv],
        (0..nv).map(|i| HomPoly::var(nv, i)).collect(),
    )
}

/// Pulled-back Euler section of `P(Sym^d V)`: `O -> Sym^d V ⊗ O(d)`, column `(Z^γ)`.
pub fn veronese_euler_section(ctx: &VeroneseContext) -> GradedMap {
    let nv = ctx.num_vars();
    let rows = monomials(nv, ctx.d as u32);
    let entries = rows
        .iter()
        .map(|g| HomPoly::monomial(nv, g.clone(), Rat::one()))
        .collect();
    GradedMap::new(nv, vec![0], vec![ctx.d as i64; rows.len()], entries)
        .expect("monomial column")
}

/// Presentation whose cokernel is `(K^i_d)^∨`: the dual of `δ^i_d`, or the
/// free sheaf `Sym^d V ⊗ O` when `i = d+1`.
pub fn k_dual_presentation(ctx: &VeroneseContext, i: usize) -> Result<GradedMap> {
    if i == ctx.d + 1 {
        return Ok(GradedMap::free(ctx.num_vars(), vec![0; ctx.n_sym()]));
    }
    Ok(delta_matrix(ctx, i)?.dual())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KBundleStats {
    pub i: usize,
    pub rank: i64,
    pub degree: i64,
    #[serde(serialize_with = "crate::chow::ser_rat")]
    pub slope: Rat,
}

/// Rank, degree and slope of `K^i_d = ker δ^i_d`, from additivity over
/// `0 -> K^i_d -> Sym^d V ⊗ O -> Sym^{d-i} V ⊗ O(i) -> 0`.
pub fn k_bundle_stats(ctx: &VeroneseContext, i: usize) -> Result<KBundleStats> {
    if i == 0 || i > ctx.d + 1 {
        return Err(Error::OutOfRange {
            what: "K-tower level",
            index: i as i64,
            lo: 1,
            hi: ctx.d as i64 + 1,
        });
    }
    let (n, d, i) = (ctx.n as i64, ctx.d as i64, i as i64);
    let quotient_rank = binomial(n + d - i, d - i);
    let rank = ctx.n_sym() as i64 - quotient_rank;
    let degree = -i * quotient_rank;
    Ok(KBundleStats {
        i: i as usize,
        rank,
        degree,
        slope: Rat::new(degree.into(), rank.into()),
    })
}

/// Outcome of comparing `dual(Θ)` with `δ^{d-1}_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualIdentityReport {
    pub n: usize,
    pub d: usize,
    /// The two matrices agree up to invertible diagonal rescaling.
    pub holds: bool,
    /// They agree with no rescaling at all.
    pub literal: bool,
    /// `δ = diag(row_scales) · dual(Θ) · diag(col_scales)`.
    #[serde(serialize_with = "crate::chow::ser_rats")]
    pub row_scales: Vec<Rat>,
    #[serde(serialize_with = "crate::chow::ser_rats")]
    pub col_scales: Vec<Rat>,
    /// Set when all row scales agree and all column scales are 1.
    #[serde(serialize_with = "crate::chow::ser_opt_rat")]
    pub uniform_scalar: Option<Rat>,
    pub message: String,
}

/// Finds invertible diagonals with `b = diag(r) · a · diag(c)`, if any.
/// Column scales are normalized to 1 wherever the bipartite support graph
/// allows it.
pub fn diagonal_rescaling(a: &GradedMap, b: &GradedMap) -> std::result::Result<(Vec<Rat>, Vec<Rat>), String> {
    if a.source_twists() != b.source_twists() || a.target_twists() != b.target_twists() {
        return Err(format!(
            "twists differ: {:?}->{:?} vs {:?}->{:?}",
            a.source_twists(),
            a.target_twists(),
            b.source_twists(),
            b.target_twists()
        ));
    }
    let (p, q) = (a.rows(), a.cols());
    // ratio[i][j] = Some(λ) when b_ij = λ a_ij with both nonzero
    let mut ratio: Vec<Vec<Option<Rat>>> = vec![vec![None; q]; p];
    for (i, row) in ratio.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let (x, y) = (a.entry(i, j), b.entry(i, j));
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (true, false) | (false, true) => {
                    return Err(format!("support differs at ({i},{j}): `{x}` vs `{y}`"));
                }
                (false, false) => {
                    let (m, cx) = x.terms().next().expect("nonzero");
                    let lambda = y.coeff(m) / cx;
                    if lambda.is_zero() || &x.scale(&lambda) != y {
                        return Err(format!("entries at ({i},{j}) are not proportional: `{x}` vs `{y}`"));
                    }
                    *slot = Some(lambda);
                }
            }
        }
    }
    let mut r: Vec<Option<Rat>> = vec![None; p];
    let mut c: Vec<Option<Rat>> = vec![None; q];
    for root in 0..q {
        if c[root].is_some() {
            continue;
        }
        c[root] = Some(Rat::one());
        let mut queue = VecDeque::from([(false, root)]);
        while let Some((is_row, k)) = queue.pop_front() {
            if is_row {
                let rk = r[k].clone().expect("visited");
                for j in 0..q {
                    if let Some(l) = &ratio[k][j] {
                        let want = l / &rk;
                        match &c[j] {
                            None => {
                                c[j] = Some(want);
                                queue.push_back((false, j));
                            }
                            Some(cj) if *cj != want => {
                                return Err(format!("no consistent column scale for column {j}"));
                            }
                            _ => {}
                        }
                    }
                }
            } else {
                let ck = c[k].clone().expect("visited");
                for i in 0..p {
                    if let Some(l) = &ratio[i][k] {
                        let want = l / &ck;
                        match &r[i] {
                            None => {
                                r[i] = Some(want);
                                queue.push_back((true, i));
                            }
                            Some(ri) if *ri != want => {
                                return Err(format!("no consistent row scale for row {i}"));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok((
        r.into_iter().map(|x| x.unwrap_or_else(Rat::one)).collect(),
        c.into_iter().map(|x| x.unwrap_or_else(Rat::one)).collect(),
    ))
}

pub fn verify_dual_identity(ctx: &VeroneseContext) -> DualIdentityReport {
    let lhs = theta_matrix(ctx).dual();
    let rhs = delta_matrix(ctx, ctx.d - 1).expect("d-1 is in range for d >= 2");
    let (n, d) = (ctx.n, ctx.d);
    match diagonal_rescaling(&lhs, &rhs) {
        Err(why) => DualIdentityReport {
            n,
            d,
            holds: false,
            literal: false,
            row_scales: Vec::new(),
            col_scales: Vec::new(),
            uniform_scalar: None,
            message: why,
        },
        Ok((rows, cols)) => {
            let literal = rows.iter().chain(&cols).all(One::is_one);
            let uniform_scalar = (cols.iter().all(One::is_one)
                && rows.windows(2).all(|w| w[0] == w[1]))
            .then(|| rows.first().cloned())
            .flatten();
            let message = match (&uniform_scalar, literal) {
                (_, true) => "dual(theta) equals delta^{d-1} literally".to_string(),
                (Some(s), false) => {
                    format!("delta^{{d-1}} = {} * dual(theta)", rat_to_string(s))
                }
                (None, false) => "equal up to a non-uniform diagonal rescaling".to_string(),
            };
            DualIdentityReport {
                n,
                d,
                holds: true,
                literal,
                row_scales: rows,
                col_scales: cols,
                uniform_scalar,
                message,
            }
        }
    }
}

/// Checks `Θ' ∘ (Euler section of P^n) = d · (Euler section of P(Sym^d V))`,
/// i.e. the square relating the two Euler sequences commutes.
pub fn euler_compatibility(ctx: &VeroneseContext) -> bool {
    let composite = normal_presentation(ctx)
        .compose(&tangent_presentation(ctx.n).expect("n >= 1"))
        .expect("twists line up");
    composite == veronese_euler_section(ctx).scale(&rat(ctx.d as i64))
}

/// Every stratum of `ξ_i` with `m >= 2i - 1 - d` (source sections of degree
/// at least `i - 1`) is surjective; returns the first failing `(i, m)` if any.
pub fn xi_surjectivity_failure(ctx: &VeroneseContext, m_range: std::ops::RangeInclusive<i64>) -> Option<(usize, i64)> {
    for i in 1..=ctx.d {
        let xi = xi_map(ctx.n, ctx.d, i);
        for m in m_range.clone() {
            if m < 2 * i as i64 - 1 - ctx.d as i64 {
                continue;
            }
            let s = xi.stratum(m);
            if s.rows() > 0 && s.rank() != s.rows() {
                return Some((i, m));
            }
        }
    }
    None
}
