//! Truncated Chow ring of `P^n`, bundle numerics, Hilbert polynomials and
//! the Grauert–Mulich check.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{binomial, factorial, rat, rat_to_string, Rat};
use crate::gradedmap::GradedMap;
use crate::p1split::SplittingType;
use crate::veronese::VeroneseContext;

pub(crate) fn ser_rat<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(x))
}

pub(crate) fn ser_rats<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(rat_to_string))
}

pub(crate) fn ser_opt_rat<S: Serializer>(x: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&rat_to_string(x)),
        None => s.serialize_none(),
    }
}

/// Element of `Q[ξ]/(ξ^{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowClass {
    n: usize,
    #[serde(serialize_with = "ser_rats")]
    coeffs: Vec<Rat>,
}

impl ChowClass {
    pub fn new(n: usize, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(n + 1, Rat::zero());
        ChowClass { n, coeffs }
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, vec![Rat::one()])
    }

    /// `1 + a ξ`.
    pub fn linear(n: usize, a: i64) -> Self {
        Self::new(n, vec![Rat::one(), rat(a)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn mul(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.n, other.n, "Chow rings of different dimension");
        let mut out = vec![Rat::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        ChowClass::new(self.n, out)
    }

    pub fn pow(&self, k: u32) -> ChowClass {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Truncated inverse by the recurrence `b_k = -(Σ_{j>=1} a_j b_{k-j}) / a_0`.
    pub fn inverse(&self) -> Result<ChowClass> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::InvalidInput("class with zero constant term is not invertible".into()));
        }
        let mut b = vec![Rat::zero(); self.n + 1];
        b[0] = a0.recip();
        for k in 1..=self.n {
            let s = (1..=k).fold(Rat::zero(), |acc, j| acc + &self.coeffs[j] * &b[k - j]);
            b[k] = -s / a0;
        }
        Ok(ChowClass::new(self.n, b))
    }

    pub fn div(&self, other: &ChowClass) -> Result<ChowClass> {
        Ok(self.mul(&other.inverse()?))
    }
}

/// `c(N) = (1 + dξ)^{C(n+d,d)} / (1 + ξ)^{n+1}`.
pub fn chern_normal(ctx: &VeroneseContext) -> ChowClass {
    let n = ctx.n();
    let num = ChowClass::linear(n, ctx.d() as i64).pow(ctx.n_sym() as u32);
    let den = ChowClass::linear(n, 1).pow(n as u32 + 1);
    num.div(&den).expect("1 + ξ is a unit")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleStats {
    #[serde(serialize_with = "ser_rat")]
    pub rank: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub degree: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub slope: Rat,
}

impl BundleStats {
    pub fn new(rank: Rat, degree: Rat) -> Self {
        let slope = if rank.is_zero() {
            Rat::zero()
        } else {
            &degree / &rank
        };
        BundleStats { rank, degree, slope }
    }
}

pub fn normal_stats(ctx: &VeroneseContext) -> BundleStats {
    let (n, d, big) = (ctx.n() as i64, ctx.d() as i64, ctx.n_sym() as i64);
    BundleStats::new(rat(big - n - 1), rat(big * d - (n + 1)))
}

/// `P(E)(m) = Σ α_i m^i / i!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPoly {
    #[serde(serialize_with = "ser_rats")]
    alphas: Vec<Rat>,
}

/// Coefficients (ascending in `m`) of `C(n + a + m, n)`.
fn shifted_binomial(n: usize, a: i64) -> Vec<Rat> {
    // Π_{k=1..n} (m + a + k) / n!
    let mut poly = vec![Rat::one()];
    for k in 1..=n as i64 {
        let c = rat(a + k);
        let mut next = vec![Rat::zero(); poly.len() + 1];
        for (i, x) in poly.iter().enumerate() {
            next[i] += x * &c;
            next[i + 1] += x;
        }
        poly = next;
    }
    let nf = Rat::from_integer(factorial(n as u32));
    poly.into_iter().map(|x| x / &nf).collect()
}

impl HilbertPoly {
    /// From ordinary coefficients of `m^i`, ascending.
    pub fn from_coefficients(dim: usize, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(dim + 1, Rat::zero());
        let alphas = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer(factorial(i as u32)))
            .collect();
        HilbertPoly { alphas }
    }

    /// Hilbert polynomial of `O(a)` on `P^n`.
    pub fn line_bundle(n: usize, a: i64) -> Self {
        Self::from_coefficients(n, shifted_binomial(n, a))
    }

    /// Of the cokernel of an injective presentation on `P^n`, by additivity.
    pub fn of_presentation(pres: &GradedMap) -> Self {
        let n = pres.num_vars() - 1;
        let mut coeffs = vec![Rat::zero(); n + 1];
        for &t in pres.target_twists() {
            for (c, x) in coeffs.iter_mut().zip(shifted_binomial(n, t)) {
                *c += x;
            }
        }
        for &s in pres.source_twists() {
            for (c, x) in coeffs.iter_mut().zip(shifted_binomial(n, s)) {
                *c -= x;
            }
        }
        Self::from_coefficients(n, coeffs)
    }

    pub fn alphas(&self) -> &[Rat] {
        &self.alphas
    }

    pub fn dim(&self) -> usize {
        self.alphas.len() - 1
    }

    /// Ordinary coefficients of `m^i`, ascending.
    pub fn coefficients(&self) -> Vec<Rat> {
        self.alphas
            .iter()
            .enumerate()
            .map(|(i, a)| a / Rat::from_integer(factorial(i as u32)))
            .collect()
    }

    pub fn eval(&self, m: i64) -> Rat {
        let m = rat(m);
        self.coefficients()
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * &m + c)
    }

    /// `α_n(E) / α_n(O)`.
    pub fn rank(&self) -> Rat {
        self.alphas[self.dim()].clone()
    }

    /// `α_{n-1}(E) - rk(E) α_{n-1}(O)`.
    pub fn degree(&self) -> Rat {
        let n = self.dim();
        if n == 0 {
            return Rat::zero();
        }
        let o = Self::line_bundle(n, 0);
        &self.alphas[n - 1] - self.rank() * &o.alphas[n - 1]
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .coefficients()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => rat_to_string(c),
                1 => format!("{}*m", rat_to_string(c)),
                _ => format!("{}*m^{i}", rat_to_string(c)),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn hilbert_poly(pres: &GradedMap) -> HilbertPoly {
    HilbertPoly::of_presentation(pres)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmReport {
    pub spread_ok: bool,
    pub sum_ok: bool,
    pub rank_ok: bool,
    pub degrees: Vec<i64>,
    pub expected_sum: i64,
    pub expected_rank: i64,
}

impl GmReport {
    pub fn all_ok(&self) -> bool {
        self.spread_ok && self.sum_ok && self.rank_ok
    }
}

/// Grauert–Mulich gap condition plus the Chern degree and rank of the
/// normal bundle restricted to a line.
pub fn gm_check(st: &SplittingType, ctx: &VeroneseContext) -> GmReport {
    let big = ctx.n_sym() as i64;
    let (n, d) = (ctx.n() as i64, ctx.d() as i64);
    let expected_sum = big * d - (n + 1);
    let expected_rank = big - n - 1;
    let degrees = st.degrees().to_vec();
    GmReport {
        spread_ok: degrees.windows(2).all(|w| (0..=1).contains(&(w[0] - w[1]))),
        sum_ok: st.degree() == expected_sum,
        rank_ok: st.rank() as i64 == expected_rank,
        degrees,
        expected_sum,
        expected_rank,
    }
}

/// `C(n+d,d)·d - (n+1)`, the first Chern class degree of the normal bundle.
pub fn normal_c1(n: usize, d: usize) -> i64 {
    binomial((n + d) as i64, d as i64) * d as i64 - (n as i64 + 1)
}

/// Degree of the normal bundle restricted to a rational curve of degree `e`.
pub fn restricted_degree(ctx: &VeroneseContext, e: u32) -> i64 {
    e as i64 * normal_c1(ctx.n(), ctx.d())
}
