//! Binary forms on the projective line via their affine charts.
//!
//! A form `F(s, t)` of degree `D` is dehomogenized to `f(x) = F(1, x)`. The
//! point `[0:1]` is a zero of `F` exactly when `deg f < D`; all other zeros
//! are roots of `f`. Common zeros of a family therefore reduce to a
//! univariate gcd plus one leading-coefficient check.

use num_traits::{One, Zero};

use super::{HomPoly, Monomial};
use crate::exactalg::Rat;

/// Dense univariate polynomial over the rationals, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rat>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.0.len() == 1
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let z = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let z = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        let inv = divisor.lead().recip();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        UniPoly::new(self.0.iter().map(|c| c * &inv).collect())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// `F(1, x)` for a binary form `F(s, t)`; `Z0 = s`, `Z1 = t`.
pub fn dehomogenize(form: &HomPoly) -> UniPoly {
    assert_eq!(form.num_vars(), 2, "binary form expected");
    let mut coeffs = vec![Rat::zero(); form.degree() as usize + 1];
    for (m, c) in form.terms() {
        coeffs[m.0[1] as usize] += c;
    }
    UniPoly::new(coeffs)
}

/// Inverse of [`dehomogenize`] for a known degree.
pub fn homogenize(f: &UniPoly, degree: u32) -> HomPoly {
    let terms = f.coeffs().iter().enumerate().map(|(b, c)| {
        let b = b as u32;
        assert!(b <= degree, "univariate degree exceeds form degree");
        (Monomial(vec![degree - b, b]), c.clone())
    });
    HomPoly::from_terms(2, degree, terms).expect("homogeneous by construction")
}

/// Running test for common zeros of a family of binary forms, given as
/// `(chart polynomial, form degree)` pairs.
#[derive(Clone, Debug)]
pub struct CommonZeroTracker {
    gcd: UniPoly,
    all_vanish_at_infinity: bool,
}

impl Default for CommonZeroTracker {
    fn default() -> Self {
        CommonZeroTracker {
            gcd: UniPoly::zero(),
            all_vanish_at_infinity: true,
        }
    }
}

impl CommonZeroTracker {
    pub fn push(&mut self, chart: &UniPoly, form_degree: usize) {
        if chart.is_zero() {
            return;
        }
        self.gcd = self.gcd.gcd(chart);
        if chart.degree() == Some(form_degree) {
            self.all_vanish_at_infinity = false;
        }
    }

    pub fn push_form(&mut self, form: &HomPoly) {
        self.push(&dehomogenize(form), form.degree() as usize);
    }

    /// True once the forms seen so far have no common zero on `P^1`.
    pub fn is_base_point_free(&self) -> bool {
        !self.all_vanish_at_infinity && self.gcd.is_nonzero_constant()
    }
}

pub fn have_common_zero(forms: &[HomPoly]) -> bool {
    let mut tracker = CommonZeroTracker::default();
    for f in forms {
        tracker.push_form(f);
    }
    !tracker.is_base_point_free()
}

/// Determinant over `Q[x]` by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        UniPoly::zero().sub(&det)
    } else {
        det
    }
}
