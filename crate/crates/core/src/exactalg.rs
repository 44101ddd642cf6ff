//! Exact rational scalars and dense matrices over them.
//!
//! Elimination picks, within each column, the candidate pivot with the
//! smallest combined numerator/denominator bit size. That keeps coefficient
//! growth in check on the strata matrices built elsewhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Bit size used for pivot selection.
pub fn bit_size(x: &Rat) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Renders `p` or `p/q`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Binomial coefficient with `C(n, k) = 0` whenever `k < 0` or `k > n`,
/// including the convention `C(n-1, -1) = 0`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc as i64
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| rat(x)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let entries = rows.into_iter().flatten().collect();
        (
            QMatrix {
                rows: self.rows,
                cols: self.cols,
                entries,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        // Eliminating along the shorter side is cheaper.
        if self.rows > self.cols {
            let t = self.transpose();
            let mut rows: Vec<Vec<Rat>> = (0..t.rows).map(|i| t.row(i).to_vec()).collect();
            echelon_rank(&mut rows, t.cols)
        } else {
            let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
            echelon_rank(&mut rows, self.cols)
        }
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, free);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rat_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn pick_pivot(rows: &[Vec<Rat>], from: usize, col: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| bit_size(&rows[r][col]))
}

fn eliminate(rows: &mut [Vec<Rat>], pivot_row: usize, col: usize, ncols: usize, from: usize) {
    let (head, tail) = rows.split_at_mut(pivot_row);
    let (prow, rest) = tail.split_first_mut().expect("pivot row exists");
    let support: Vec<usize> = (col..ncols).filter(|&j| !prow[j].is_zero()).collect();
    for row in head.iter_mut().skip(from).chain(rest.iter_mut()) {
        if row[col].is_zero() {
            continue;
        }
        let factor = row[col].clone();
        for &j in &support {
            let delta = &factor * &prow[j];
            row[j] -= delta;
        }
    }
}

fn rref_in_place(rows: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(rows, r, c) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        eliminate(rows, r, c, ncols, 0);
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; returns the rank.
fn echelon_rank(rows: &mut [Vec<Rat>], ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(rows, r, c) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        eliminate(rows, r, c, ncols, r + 1);
        r += 1;
    }
    r
}

/// Largest absolute numerator, handy for diagnostics.
pub fn max_abs_numer(xs: &[Rat]) -> BigInt {
    xs.iter()
        .map(|x| x.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rref_examples() {
        let (r, p) = QMatrix::identity(2).rref();
        assert_eq!(r, QMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = m(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r, QMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let k = m(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (-2, 1)
        assert_eq!(&k[0][0] * rat(1), &k[0][1] * rat(-2));
        assert!(QMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(QMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-1, -1), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(16, 8), 12870);
    }

    #[test]
    fn rational_text() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("6/4").unwrap(), rat_frac(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                QMatrix::from_vec(r, c, v.into_iter().map(rat).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix()) {
            let basis = a.kernel_basis();
            for v in &basis {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(a.rank() + basis.len(), a.cols());
        }

        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let (r, p) = a.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p.len(), a.rank());
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn rank_is_transpose_invariant(a in small_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
