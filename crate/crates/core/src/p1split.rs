//! Splitting types of vector bundles on `P^1`.
//!
//! For a presentation `0 -> F1 -> F0 -> E -> 0` with `F1 = ⊕ O(s_j)` and
//! `F0 = ⊕ O(t_i)`, the dual `E^∨` is the kernel of `F0^∨ -> F1^∨`. Its
//! module of twisted global sections is the kernel of the strata of
//! `dual(pres)` and is free over `k[s, t]`; a free generator in twist `m`
//! corresponds to a summand `O(m)` of `E`. Generators are found degree by
//! degree as kernel dimensions not accounted for by `s`- and `t`-multiples
//! of the previous degree's kernel.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{rat, QMatrix, Rat};
use crate::gradedmap::GradedMap;
use crate::polyring::binary::{dehomogenize, determinant, UniPoly};
use crate::rng::SplitMix64;

const COMBINATION_TRIES: usize = 3;

/// Birkhoff–Grothendieck degrees, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SplittingJson", try_from = "SplittingJson")]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType { degrees }
    }

    /// `value` repeated `count` times.
    pub fn uniform(value: i64, count: usize) -> Self {
        SplittingType::new(vec![value; count])
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn direct_sum(&self, other: &SplittingType) -> SplittingType {
        SplittingType::new(self.degrees.iter().chain(&other.degrees).copied().collect())
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| format!("O({d})")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SplittingJson {
    degrees: Vec<i64>,
    rank: usize,
    degree: i64,
}

impl From<SplittingType> for SplittingJson {
    fn from(s: SplittingType) -> Self {
        SplittingJson {
            rank: s.rank(),
            degree: s.degree(),
            degrees: s.degrees,
        }
    }
}

impl TryFrom<SplittingJson> for SplittingType {
    type Error = String;

    fn try_from(j: SplittingJson) -> std::result::Result<Self, String> {
        let st = SplittingType::new(j.degrees);
        if st.rank() != j.rank || st.degree() != j.degree {
            return Err("rank/degree do not match degrees".into());
        }
        Ok(st)
    }
}

/// `h^0(E(m)) = Σ max(0, b_i + m + 1)` for `m` in `lo..=hi`.
pub fn h0_profile(st: &SplittingType, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi)
        .map(|m| st.degrees.iter().map(|b| (b + m + 1).max(0)).sum())
        .collect()
}

/// `{b_i + b_j : i <= j}`.
pub fn sym_square(st: &SplittingType) -> SplittingType {
    let b = &st.degrees;
    let mut out = Vec::with_capacity(b.len() * (b.len() + 1) / 2);
    for i in 0..b.len() {
        for j in i..b.len() {
            out.push(b[i] + b[j]);
        }
    }
    SplittingType::new(out)
}

fn check_binary(pres: &GradedMap) -> Result<()> {
    if pres.num_vars() != 2 {
        return Err(Error::InvalidInput(format!(
            "splitting types need a map on P^1, got {} variables",
            pres.num_vars()
        )));
    }
    Ok(())
}

fn chart_matrix(pres: &GradedMap) -> Vec<Vec<UniPoly>> {
    (0..pres.rows())
        .map(|i| (0..pres.cols()).map(|j| dehomogenize(pres.entry(i, j))).collect())
        .collect()
}

/// Generic rank is full column rank: a nonzero maximal minor has degree at
/// most `bound`, so it cannot vanish at all of `bound + 1` affine points.
pub fn is_injective(pres: &GradedMap) -> Result<bool> {
    check_binary(pres)?;
    let (p, q) = (pres.rows(), pres.cols());
    if q == 0 {
        return Ok(true);
    }
    if p < q {
        return Ok(false);
    }
    let mut entry_degrees: Vec<i64> = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .map(|(i, j)| pres.target_twists()[i] - pres.source_twists()[j])
        .filter(|&x| x > 0)
        .collect();
    entry_degrees.sort_unstable_by(|a, b| b.cmp(a));
    let bound: i64 = entry_degrees.iter().take(q).sum();
    let charts = chart_matrix(pres);
    for x in 0..=bound {
        let x = Rat::from_integer(x.into());
        let rows: Vec<Vec<Rat>> = charts
            .iter()
            .map(|r| r.iter().map(|f| eval_uni(f, &x)).collect())
            .collect();
        let m = QMatrix::from_vec(p, q, rows.into_iter().flatten().collect())?;
        if m.rank() == q {
            return Ok(true);
        }
    }
    Ok(false)
}

fn eval_uni(f: &UniPoly, x: &Rat) -> Rat {
    f.coeffs().iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Visits the `q`-subsets of `0..p` in lexicographic order until `visit`
/// returns `true`.
fn for_each_subset(p: usize, q: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let Some(k) = (0..q).rev().find(|&k| idx[k] != k + p - q) else {
            return false;
        };
        idx[k] += 1;
        for l in k + 1..q {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

/// The maximal minors have no common zero on `P^1`.
///
/// The point `[0:1]` is a rank test. In the chart `s = 1` the gcd is first
/// taken over determinants of `R · A` for seeded integer matrices `R`; by
/// Cauchy–Binet these lie in the span of the minors, so a constant gcd is
/// already a proof. Otherwise the minors themselves are folded in until the
/// gcd becomes constant or they are exhausted.
pub fn is_locally_free_cokernel(pres: &GradedMap) -> Result<bool> {
    check_binary(pres)?;
    let (p, q) = (pres.rows(), pres.cols());
    if q == 0 {
        return Ok(true);
    }
    if p < q {
        return Ok(false);
    }
    let infinity = [Rat::zero(), Rat::one()];
    let at_infinity: Vec<Rat> = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .map(|(i, j)| pres.entry(i, j).eval(&infinity))
        .collect();
    if QMatrix::from_vec(p, q, at_infinity)?.rank() < q {
        return Ok(false);
    }
    let charts = chart_matrix(pres);
    let mut g = UniPoly::zero();
    let mut rng = SplitMix64::new(0x5eed);
    for _ in 0..COMBINATION_TRIES {
        let combo: Vec<Vec<UniPoly>> = (0..q)
            .map(|_| {
                let weights: Vec<UniPoly> =
                    (0..p).map(|_| UniPoly::new(vec![rat(rng.int_in(-9, 9))])).collect();
                (0..q)
                    .map(|j| {
                        (0..p).fold(UniPoly::zero(), |acc, i| acc.add(&weights[i].mul(&charts[i][j])))
                    })
                    .collect()
            })
            .collect();
        g = g.gcd(&determinant(combo));
        if g.is_nonzero_constant() {
            return Ok(true);
        }
    }
    Ok(for_each_subset(p, q, |rows| {
        let minor: Vec<Vec<UniPoly>> = rows.iter().map(|&i| charts[i].clone()).collect();
        g = g.gcd(&determinant(minor));
        g.is_nonzero_constant()
    }))
}

/// Coefficient-vector layout of `⊕_i H^0(O(m - t_i))` for the dual map.
struct Layout {
    /// Per block: (offset, form degree) or None when the block is empty.
    blocks: Vec<Option<(usize, i64)>>,
    len: usize,
}

impl Layout {
    fn new(dual_source: &[i64], m: i64) -> Self {
        let mut blocks = Vec::with_capacity(dual_source.len());
        let mut len = 0;
        for s in dual_source {
            let deg = m + s;
            if deg < 0 {
                blocks.push(None);
            } else {
                blocks.push(Some((len, deg)));
                len += deg as usize + 1;
            }
        }
        Layout { blocks, len }
    }
}

/// Multiplies a section at twist `m-1` by `s` (`var = 0`) or `t` (`var = 1`).
/// Binary monomials of degree `D` are ordered `s^D, s^{D-1}t, ..., t^D`, so
/// `s` keeps the position and `t` shifts it by one.
fn shift(v: &[Rat], from: &Layout, to: &Layout, var: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); to.len];
    for (b, blk) in from.blocks.iter().enumerate() {
        let Some((off, deg)) = blk else { continue };
        let (noff, _) = to.blocks[b].expect("blocks only grow with m");
        for k in 0..=*deg as usize {
            let x = &v[off + k];
            if !x.is_zero() {
                out[noff + k + var] = x.clone();
            }
        }
    }
    out
}

/// Degrees of the cokernel bundle of an injective presentation on `P^1`.
pub fn splitting_type(pres: &GradedMap) -> Result<SplittingType> {
    check_binary(pres)?;
    if !is_injective(pres)? {
        return Err(Error::NotInjective);
    }
    if !is_locally_free_cokernel(pres)? {
        return Err(Error::NotLocallyFree);
    }
    let rank = pres.rows() - pres.cols();
    if rank == 0 {
        return Ok(SplittingType::new(Vec::new()));
    }
    let targets = pres.target_twists();
    let min_t = *targets.iter().min().expect("rank > 0 implies targets");
    let total: i64 = targets.iter().sum::<i64>() - pres.source_twists().iter().sum::<i64>();
    let upper = total - (rank as i64 - 1) * min_t;

    let dual = pres.dual();
    let mut degrees = Vec::with_capacity(rank);
    let mut prev_basis: Vec<Vec<Rat>> = Vec::new();
    let mut prev_layout = Layout::new(dual.source_twists(), min_t - 1);
    for m in min_t..=upper {
        let layout = Layout::new(dual.source_twists(), m);
        let kernel = dual.stratum(m).kernel_basis();
        let multiples: Vec<Vec<Rat>> = prev_basis
            .iter()
            .flat_map(|v| [shift(v, &prev_layout, &layout, 0), shift(v, &prev_layout, &layout, 1)])
            .collect();
        let spanned = if multiples.is_empty() {
            0
        } else {
            QMatrix::from_columns(layout.len, &multiples).rank()
        };
        let fresh = kernel.len().checked_sub(spanned).ok_or_else(|| {
            Error::InvalidInput("multiples exceed the kernel; presentation is inconsistent".into())
        })?;
        degrees.extend(std::iter::repeat_n(m, fresh));
        if degrees.len() >= rank {
            break;
        }
        prev_basis = kernel;
        prev_layout = layout;
    }
    if degrees.len() != rank {
        return Err(Error::ScanWindowExhausted {
            expected: rank,
            found: degrees.len(),
        });
    }
    Ok(SplittingType::new(degrees))
}

/// `h^0(E(m))` read off the presentation directly, valid where
/// `H^1(F1(m)) = 0`, i.e. `m >= -min(s_j) - 1`.
pub fn h0_from_presentation(pres: &GradedMap, m: i64) -> i64 {
    let s = pres.stratum(m);
    s.rows() as i64 - s.rank() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{random_line, standard_line};
    use crate::polyring::parse_poly;
    use crate::veronese::{normal_presentation, VeroneseContext};

    fn binary_map(src: Vec<i64>, tgt: Vec<i64>, entries: &[&str]) -> GradedMap {
        let e = entries.iter().map(|s| parse_poly(s, 2).unwrap()).collect();
        GradedMap::new(2, src, tgt, e).unwrap()
    }

    #[test]
    fn free_sheaf() {
        let st = splitting_type(&GradedMap::free(2, vec![1, 1])).unwrap();
        assert_eq!(st, SplittingType::new(vec![1, 1]));
    }

    #[test]
    fn euler_sequence_on_p1_gives_o2() {
        // O(0) -> O(1)^2 via (s, t): cokernel O(2)
        let m = binary_map(vec![0], vec![1, 1], &["Z0", "Z1"]);
        assert_eq!(splitting_type(&m).unwrap(), SplittingType::new(vec![2]));
    }

    #[test]
    fn rational_normal_curve_normal_bundle() {
        let c = VeroneseContext::new(1, 3).unwrap();
        let pres = normal_presentation(&c).pullback(&standard_line(1).unwrap()).unwrap();
        assert_eq!(splitting_type(&pres).unwrap(), SplittingType::new(vec![5, 5]));
    }

    #[test]
    fn conic_plane_line_restriction() {
        let c = VeroneseContext::new(2, 2).unwrap();
        let pres = normal_presentation(&c).pullback(&random_line(2, 3).unwrap()).unwrap();
        assert_eq!(splitting_type(&pres).unwrap(), SplittingType::new(vec![4, 3, 2]));
    }

    #[test]
    fn unbalanced_split() {
        // O(1) -> O(1) ⊕ O(3) ⊕ O(2) via (0, s^2, t): cokernel O(1) ⊕ O(4)
        let m = binary_map(vec![1], vec![1, 3, 2], &["0", "Z0^2", "Z1"]);
        assert_eq!(splitting_type(&m).unwrap(), SplittingType::new(vec![4, 1]));
    }

    #[test]
    fn error_paths() {
        let zero = binary_map(vec![0], vec![1, 1], &["0", "0"]);
        assert_eq!(splitting_type(&zero), Err(Error::NotInjective));
        // (s, s) has a common zero at [0:1]: torsion in the cokernel
        let torsion = binary_map(vec![0], vec![1, 1], &["Z0", "Z0"]);
        assert_eq!(splitting_type(&torsion), Err(Error::NotLocallyFree));
        let too_many = binary_map(vec![0, 0], vec![1], &["Z0", "Z1"]);
        assert_eq!(splitting_type(&too_many), Err(Error::NotInjective));
        let not_binary = GradedMap::free(3, vec![0]);
        assert!(splitting_type(&not_binary).is_err());
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_profile(&SplittingType::new(vec![4]), 0, 0), vec![5]);
        assert_eq!(h0_profile(&SplittingType::new(vec![4, 3, 2]), -3, -3), vec![3]);
        assert_eq!(h0_profile(&SplittingType::uniform(6, 3), 0, 0), vec![21]);
    }

    #[test]
    fn sym_square_examples() {
        assert_eq!(
            sym_square(&SplittingType::new(vec![1, 1, 2])),
            SplittingType::new(vec![2, 2, 2, 3, 3, 4])
        );
        assert_eq!(sym_square(&SplittingType::new(vec![3, 3])), SplittingType::uniform(6, 3));
        assert_eq!(sym_square(&SplittingType::new(vec![0])), SplittingType::new(vec![0]));
    }

    #[test]
    fn splitting_json() {
        let st = SplittingType::new(vec![2, 4, 3]);
        let v = serde_json::to_value(&st).unwrap();
        assert_eq!(v, serde_json::json!({"degrees": [4, 3, 2], "rank": 3, "degree": 9}));
        let bad = serde_json::json!({"degrees": [4, 3], "rank": 3, "degree": 7});
        assert!(serde_json::from_value::<SplittingType>(bad).is_err());
    }

    #[test]
    fn subsets_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }

    #[test]
    fn injectivity_of_generic_columns() {
        let m = binary_map(vec![0, 0], vec![1, 1, 1], &["Z0", "Z1", "Z1", "Z0", "0", "0"]);
        // columns (s, t, 0) and (t, s, 0) are independent generically
        assert!(is_injective(&m).unwrap());
        let dep = binary_map(vec![0, 0], vec![1, 1, 1], &["Z0", "Z0", "Z1", "Z1", "0", "0"]);
        assert!(!is_injective(&dep).unwrap());
    }
}
