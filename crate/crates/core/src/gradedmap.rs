//! Maps between direct sums of twisted line bundles.
//!
//! A [`GradedMap`] `⊕_j O(s_j) -> ⊕_i O(t_i)` stores the twists of the
//! summands as they are (never shifted duals). Entry `(i, j)` is a form of
//! degree `t_i - s_j`, and is zero whenever that difference is negative.
//! Sections of `O(t)` at twist `m` are forms of degree `t + m`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{QMatrix, Rat};
use crate::polyring::binary::have_common_zero;
use crate::polyring::{monomial_index, monomials, parse_poly, HomPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GradedMapJson", into = "GradedMapJson")]
pub struct GradedMap {
    num_vars: usize,
    source_twists: Vec<i64>,
    target_twists: Vec<i64>,
    /// Row-major, `target.len() x source.len()`.
    entries: Vec<HomPoly>,
}

fn entry_degree(target: i64, source: i64) -> u32 {
    (target - source).max(0) as u32
}

impl GradedMap {
    pub fn new(
        num_vars: usize,
        source_twists: Vec<i64>,
        target_twists: Vec<i64>,
        entries: Vec<HomPoly>,
    ) -> Result<Self> {
        let (p, q) = (target_twists.len(), source_twists.len());
        if entries.len() != p * q {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {p}x{q} map",
                entries.len()
            )));
        }
        let mut entries = entries;
        for i in 0..p {
            for j in 0..q {
                let e = &mut entries[i * q + j];
                if e.num_vars() != num_vars {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i},{j}) lives in {} variables, expected {num_vars}",
                        e.num_vars()
                    )));
                }
                let want = target_twists[i] - source_twists[j];
                if e.is_zero() {
                    *e = e.clone().with_degree(entry_degree(target_twists[i], source_twists[j]));
                } else if want < 0 || e.degree() as i64 != want {
                    return Err(Error::TwistMismatch(format!(
                        "entry ({i},{j}) has degree {} but twists require {want}",
                        e.degree()
                    )));
                }
            }
        }
        Ok(GradedMap {
            num_vars,
            source_twists,
            target_twists,
            entries,
        })
    }

    pub fn identity(num_vars: usize, twists: Vec<i64>) -> Self {
        let k = twists.len();
        let entries = (0..k * k)
            .map(|idx| {
                if idx / k == idx % k {
                    HomPoly::constant(num_vars, Rat::from_integer(1.into()))
                } else {
                    HomPoly::zero(num_vars, 0)
                }
            })
            .collect();
        GradedMap {
            num_vars,
            source_twists: twists.clone(),
            target_twists: twists,
            entries,
        }
    }

    /// A map with no source summands: its cokernel is the free sheaf itself.
    pub fn free(num_vars: usize, target_twists: Vec<i64>) -> Self {
        GradedMap {
            num_vars,
            source_twists: Vec::new(),
            target_twists,
            entries: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target_twists
    }

    pub fn rows(&self) -> usize {
        self.target_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.source_twists.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i * self.cols() + j]
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap> {
        if self.num_vars != f.num_vars {
            return Err(Error::ShapeMismatch("compose: variable counts differ".into()));
        }
        if self.source_twists != f.target_twists {
            return Err(Error::TwistMismatch(format!(
                "compose: source {:?} vs target {:?}",
                self.source_twists, f.target_twists
            )));
        }
        let (p, r, q) = (self.rows(), self.cols(), f.cols());
        let mut entries = Vec::with_capacity(p * q);
        for i in 0..p {
            for k in 0..q {
                let mut acc =
                    HomPoly::zero(self.num_vars, entry_degree(self.target_twists[i], f.source_twists[k]));
                for j in 0..r {
                    let (a, b) = (self.entry(i, j), f.entry(j, k));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &a.multiply(b);
                }
                entries.push(acc);
            }
        }
        GradedMap::new(
            self.num_vars,
            f.source_twists.clone(),
            self.target_twists.clone(),
            entries,
        )
    }

    /// Transposed map between the dual twisted frees.
    pub fn dual(&self) -> GradedMap {
        let (p, q) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(p * q);
        for j in 0..q {
            for i in 0..p {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMap {
            num_vars: self.num_vars,
            source_twists: self.target_twists.iter().map(|t| -t).collect(),
            target_twists: self.source_twists.iter().map(|s| -s).collect(),
            entries,
        }
    }

    /// Restriction along a parametrized rational curve.
    pub fn pullback(&self, curve: &CurveParam) -> Result<GradedMap> {
        if curve.ambient_vars() != self.num_vars {
            return Err(Error::ShapeMismatch(format!(
                "curve in P^{} cannot restrict a map on P^{}",
                curve.ambient_vars() as i64 - 1,
                self.num_vars as i64 - 1
            )));
        }
        let e = curve.degree() as i64;
        let entries = self
            .entries
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Ok(HomPoly::zero(2, e as u32 * p.degree()))
                } else {
                    p.substitute(curve.forms())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(
            2,
            self.source_twists.iter().map(|s| s * e).collect(),
            self.target_twists.iter().map(|t| t * e).collect(),
            entries,
        )
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &Rat) -> GradedMap {
        GradedMap {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Same entries with all twists shifted by `k` (tensoring with `O(k)`).
    pub fn twist(&self, k: i64) -> GradedMap {
        GradedMap {
            source_twists: self.source_twists.iter().map(|s| s + k).collect(),
            target_twists: self.target_twists.iter().map(|t| t + k).collect(),
            ..self.clone()
        }
    }

    /// Dimension of global sections of the source (`false`) or target
    /// (`true`) at twist `m`.
    pub fn section_dims(&self, m: i64) -> (usize, usize) {
        let dim = |t: &i64| -> usize {
            let deg = m + t;
            if deg < 0 {
                0
            } else {
                crate::exactalg::binomial(self.num_vars as i64 - 1 + deg, deg) as usize
            }
        };
        (
            self.source_twists.iter().map(dim).sum(),
            self.target_twists.iter().map(dim).sum(),
        )
    }

    /// The scalar matrix of the induced map on sections at twist `m`, in the
    /// graded-lexicographic monomial bases of each block.
    pub fn stratum(&self, m: i64) -> QMatrix {
        let nv = self.num_vars;
        let degs = |ts: &[i64]| -> Vec<Option<u32>> {
            ts.iter()
                .map(|t| u32::try_from(m + t).ok())
                .collect()
        };
        let src = degs(&self.source_twists);
        let tgt = degs(&self.target_twists);
        let mut index_cache: HashMap<u32, HashMap<_, usize>> = HashMap::new();
        let mut offsets = |ds: &[Option<u32>]| -> (Vec<usize>, usize) {
            let mut offs = Vec::with_capacity(ds.len());
            let mut total = 0;
            for d in ds {
                offs.push(total);
                if let Some(d) = d {
                    total += index_cache
                        .entry(*d)
                        .or_insert_with(|| monomial_index(nv, *d))
                        .len();
                }
            }
            (offs, total)
        };
        let (col_off, ncols) = offsets(&src);
        let (row_off, nrows) = offsets(&tgt);
        let mut out = QMatrix::zeros(nrows, ncols);
        for (j, sd) in src.iter().enumerate() {
            let Some(sd) = sd else { continue };
            let col_monos = monomials(nv, *sd);
            for (i, td) in tgt.iter().enumerate() {
                let Some(td) = td else { continue };
                let f = self.entry(i, j);
                if f.is_zero() {
                    continue;
                }
                let row_index = &index_cache[td];
                for (c, mu) in col_monos.iter().enumerate() {
                    for (nu, coeff) in f.terms() {
                        let r = row_index[&mu.mul(nu)];
                        let idx_r = row_off[i] + r;
                        let idx_c = col_off[j] + c;
                        let cur = out.get(idx_r, idx_c) + coeff;
                        out.set(idx_r, idx_c, cur);
                    }
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct GradedMapJson {
    num_vars: usize,
    source_twists: Vec<i64>,
    target_twists: Vec<i64>,
    entries: Vec<Vec<String>>,
}

impl From<GradedMap> for GradedMapJson {
    fn from(g: GradedMap) -> Self {
        let q = g.cols();
        GradedMapJson {
            num_vars: g.num_vars,
            entries: (0..g.rows())
                .map(|i| (0..q).map(|j| g.entry(i, j).to_string()).collect())
                .collect(),
            source_twists: g.source_twists,
            target_twists: g.target_twists,
        }
    }
}

impl TryFrom<GradedMapJson> for GradedMap {
    type Error = Error;

    fn try_from(j: GradedMapJson) -> Result<Self> {
        if j.entries.len() != j.target_twists.len()
            || j.entries.iter().any(|r| r.len() != j.source_twists.len())
        {
            return Err(Error::ShapeMismatch("entries do not match twist lists".into()));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|s| parse_poly(s, j.num_vars))
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(j.num_vars, j.source_twists, j.target_twists, entries)
    }
}

/// A morphism `P^1 -> P^n` given by `n+1` binary forms of a common degree
/// with no common zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveParamJson", into = "CurveParamJson")]
pub struct CurveParam {
    degree: u32,
    forms: Vec<HomPoly>,
}

impl CurveParam {
    pub fn new(degree: u32, forms: Vec<HomPoly>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("curve degree must be at least 1".into()));
        }
        if forms.len() < 2 {
            return Err(Error::InvalidInput("a curve needs at least two forms".into()));
        }
        let mut normalized = Vec::with_capacity(forms.len());
        for f in forms {
            if f.num_vars() != 2 {
                return Err(Error::InvalidInput("curve forms must be binary".into()));
            }
            if f.is_zero() {
                normalized.push(f.with_degree(degree));
            } else if f.degree() != degree {
                return Err(Error::InhomogeneousParametrization);
            } else {
                normalized.push(f);
            }
        }
        if have_common_zero(&normalized) {
            return Err(Error::BasePoint);
        }
        Ok(CurveParam {
            degree,
            forms: normalized,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_vars(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[HomPoly] {
        &self.forms
    }
}

#[derive(Serialize, Deserialize)]
struct CurveParamJson {
    degree: u32,
    forms: Vec<String>,
}

impl From<CurveParam> for CurveParamJson {
    fn from(c: CurveParam) -> Self {
        CurveParamJson {
            degree: c.degree,
            forms: c.forms.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<CurveParamJson> for CurveParam {
    type Error = Error;

    fn try_from(j: CurveParamJson) -> Result<Self> {
        let forms = j
            .forms
            .iter()
            .map(|s| parse_poly(s, 2))
            .collect::<Result<Vec<_>>>()?;
        CurveParam::new(j.degree, forms)
    }
}
