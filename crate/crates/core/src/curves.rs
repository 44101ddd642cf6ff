//! Standard and seeded rational curves in `P^n`.
//!
//! Random coefficients are integers in `[-9, 9]` drawn from [`SplitMix64`].

use crate::error::{Error, Result};
use crate::exactalg::{rat, QMatrix};
use crate::gradedmap::CurveParam;
use crate::polyring::{HomPoly, Monomial};
use crate::rng::SplitMix64;

const COEFF_BOUND: i64 = 9;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
    }
    Ok(())
}

fn linear_form(a: i64, b: i64) -> HomPoly {
    HomPoly::from_terms(
        2,
        1,
        [(Monomial(vec![1, 0]), rat(a)), (Monomial(vec![0, 1]), rat(b))],
    )
    .expect("linear form")
}

/// `(s, t, 0, ..., 0)`.
pub fn standard_line(n: usize) -> Result<CurveParam> {
    check_n(n)?;
    let forms = (0..=n)
        .map(|i| match i {
            0 | 1 => HomPoly::var(2, i),
            _ => HomPoly::zero(2, 1),
        })
        .collect();
    CurveParam::new(1, forms)
}

/// Line `Z_i = a_i s + b_i t`, coefficients drawn in the order
/// `a_0, b_0, a_1, b_1, ...` and redrawn until the coefficient matrix has
/// rank 2.
pub fn random_line(n: usize, seed: u64) -> Result<CurveParam> {
    check_n(n)?;
    let mut rng = SplitMix64::new(seed);
    loop {
        let coeffs: Vec<(i64, i64)> = (0..=n)
            .map(|_| {
                let a = rng.int_in(-COEFF_BOUND, COEFF_BOUND);
                let b = rng.int_in(-COEFF_BOUND, COEFF_BOUND);
                (a, b)
            })
            .collect();
        let m = QMatrix::from_i64_rows(&[
            coeffs.iter().map(|c| c.0).collect(),
            coeffs.iter().map(|c| c.1).collect(),
        ]);
        if m.rank() == 2 {
            let forms = coeffs.iter().map(|&(a, b)| linear_form(a, b)).collect();
            return CurveParam::new(1, forms);
        }
    }
}

fn rnc_basis(n: usize) -> Vec<HomPoly> {
    (0..=n)
        .map(|j| HomPoly::monomial(2, Monomial(vec![(n - j) as u32, j as u32]), rat(1)))
        .collect()
}

/// Rational normal curve of degree `n`. Seed 0 is `(s^n, s^{n-1}t, ..., t^n)`;
/// other seeds apply a random invertible integer matrix, drawn row by row
/// and redrawn while singular.
pub fn rnc(n: usize, seed: u64) -> Result<CurveParam> {
    check_n(n)?;
    let basis = rnc_basis(n);
    if seed == 0 {
        return CurveParam::new(n as u32, basis);
    }
    let mut rng = SplitMix64::new(seed);
    let k = n + 1;
    let g = loop {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.int_in(-COEFF_BOUND, COEFF_BOUND)).collect())
            .collect();
        let g = QMatrix::from_i64_rows(&rows);
        if g.rank() == k {
            break g;
        }
    };
    let forms = (0..k)
        .map(|i| {
            basis.iter().enumerate().fold(HomPoly::zero(2, n as u32), |acc, (j, b)| {
                &acc + &b.scale(g.get(i, j))
            })
        })
        .collect();
    CurveParam::new(n as u32, forms)
}
