//! Sparse homogeneous polynomials over the rationals.
//!
//! Variables are `Z0..Zn`. Binary forms on the projective line use the same
//! type with two variables, `Z0 = s` and `Z1 = t`.

pub mod binary;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rat};

pub use text::parse_poly;

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / Z_i`, if `Z_i` divides it.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `γ!` = product of factorials of the exponents.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&e| crate::exactalg::factorial(e))
            .product()
    }
}

/// All monomials of total degree `m` in `num_vars` variables, in
/// graded-lexicographic order (`Z0^m` first, `Zn^m` last).
pub fn monomials(num_vars: usize, m: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, m: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(m);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=m).rev() {
            prefix.push(e);
            rec(prefix, left - 1, m - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if m == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(num_vars), num_vars, m, &mut out);
    out
}

/// Position lookup for [`monomials`].
pub fn monomial_index(num_vars: usize, m: u32) -> HashMap<Monomial, usize> {
    monomials(num_vars, m)
        .into_iter()
        .enumerate()
        .map(|(i, mono)| (mono, i))
        .collect()
}

/// Homogeneous polynomial. The zero polynomial still carries a nominal degree
/// so it can sit in a graded position; equality ignores that degree.
#[derive(Clone, Debug)]
pub struct HomPoly {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for HomPoly {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars
            && self.terms == other.terms
            && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl Eq for HomPoly {}

impl HomPoly {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        HomPoly {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        Self::monomial(num_vars, Monomial::one(num_vars), c)
    }

    pub fn monomial(num_vars: usize, mono: Monomial, c: Rat) -> Self {
        assert_eq!(mono.num_vars(), num_vars, "monomial arity");
        let degree = mono.degree();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        HomPoly {
            num_vars,
            degree,
            terms,
        }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::monomial(num_vars, Monomial::var(num_vars, i), Rat::one())
    }

    /// Builds a polynomial from terms, rejecting mixed degrees.
    pub fn from_terms(
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars, degree);
        for (mono, c) in terms {
            if mono.num_vars() != num_vars {
                return Err(Error::InvalidInput(format!(
                    "monomial with {} variables in a ring with {num_vars}",
                    mono.num_vars()
                )));
            }
            if mono.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "term of degree {} in a form of degree {degree}",
                    mono.degree()
                )));
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Same polynomial with a different nominal degree; only valid for zero.
    pub fn with_degree(mut self, degree: u32) -> Self {
        assert!(self.is_zero() || self.degree == degree, "degree of a nonzero form is fixed");
        self.degree = degree;
        self
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.degree);
        }
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.num_vars, other.num_vars, "multiply: variable count");
        let mut out = Self::zero(self.num_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = Self::constant(self.num_vars, Rat::one());
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Partial derivative in `Z_i`.
    pub fn differentiate(&self, i: usize) -> HomPoly {
        assert!(i < self.num_vars, "variable index");
        let mut out = Self::zero(self.num_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(i) {
                out.add_term(q, c * rat(m.0[i] as i64));
            }
        }
        out
    }

    /// Substitutes `Z_i -> forms[i]`, where all forms share one degree `e`.
    pub fn substitute(&self, forms: &[HomPoly]) -> Result<HomPoly> {
        if forms.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!(
                "{} forms for {} variables",
                forms.len(),
                self.num_vars
            )));
        }
        let Some(first) = forms.first() else {
            return Ok(self.clone());
        };
        let e = first.degree;
        let target_vars = first.num_vars;
        if forms
            .iter()
            .any(|f| f.degree != e || f.num_vars != target_vars)
        {
            return Err(Error::InhomogeneousParametrization);
        }
        let mut powers: Vec<Vec<HomPoly>> = forms
            .iter()
            .map(|f| vec![HomPoly::constant(target_vars, Rat::one()), f.clone()])
            .collect();
        let mut out = Self::zero(target_vars, e * self.degree);
        for (m, c) in &self.terms {
            let mut term = HomPoly::constant(target_vars, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().multiply(&forms[i]);
                    powers[i].push(next);
                }
                term = term.multiply(&powers[i][k as usize]);
            }
            for (mono, x) in term.terms {
                out.add_term(mono, x);
            }
        }
        Ok(out)
    }

    /// Coefficient vector in the basis [`monomials`]`(num_vars, degree)`.
    pub fn coefficient_vector(&self) -> Vec<Rat> {
        monomials(self.num_vars, self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.num_vars, "point arity");
        self.terms.iter().fold(Rat::zero(), |acc, (m, c)| {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc + v
        })
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;

    fn add(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "add: variable count");
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        assert!(
            self.is_zero() || rhs.is_zero() || self.degree == rhs.degree,
            "add: degree mismatch"
        );
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;

    fn neg(self) -> HomPoly {
        self.scale(&rat(-1))
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;

    fn sub(self, rhs: &HomPoly) -> HomPoly {
        self + &(-rhs)
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;

    fn mul(self, rhs: &HomPoly) -> HomPoly {
        self.multiply(rhs)
    }
}
