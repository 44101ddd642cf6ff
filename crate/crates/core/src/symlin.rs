//! Symmetric powers of short exact sequences of vector spaces, and the
//! check that symmetrizing then dualizing agrees with dualizing then
//! symmetrizing.
//!
//! `Sym^i W` uses the monomial basis `x^α`, `|α| = i`, in graded-lex order.
//! `Sym^i W^*` is identified with `(Sym^i W)^*` through the averaged pairing
//! `<l_1⋯l_i, v_1⋯v_i> = (1/i!) Σ_σ Π_k l_σ(k)(v_k)`, whose Gram matrix in
//! monomial bases is `diag(α!/i!)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{factorial, rat, QMatrix, Rat};
use crate::polyring::{monomial_index, monomials, HomPoly};
use crate::rng::SplitMix64;

/// `0 -> M --φ--> N --ψ--> P -> 0` over the rationals; `φ` is `dim N x dim M`
/// and `ψ` is `dim P x dim N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSES {
    phi: QMatrix,
    psi: QMatrix,
}

impl LinearSES {
    pub fn new(phi: QMatrix, psi: QMatrix) -> Result<Self> {
        let (n, m, p) = (phi.rows(), phi.cols(), psi.rows());
        if psi.cols() != n || n != m + p {
            return Err(Error::ShapeMismatch(format!(
                "phi is {n}x{m}, psi is {p}x{}",
                psi.cols()
            )));
        }
        if phi.rank() != m || psi.rank() != p {
            return Err(Error::InvalidInput("sequence is not exact: rank defect".into()));
        }
        if !psi.mul(&phi)?.is_zero() {
            return Err(Error::InvalidInput("psi ∘ phi is not zero".into()));
        }
        Ok(LinearSES { phi, psi })
    }

    /// `(dim M, dim N, dim P)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.phi.cols(), self.phi.rows(), self.psi.rows())
    }

    pub fn phi(&self) -> &QMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &QMatrix {
        &self.psi
    }
}

/// Seeded exact sequence: `φ` has entries in `[-3, 3]` (redrawn until
/// injective) and the rows of `ψ` are a basis of the left kernel of `φ`.
pub fn random_ses(dim_m: usize, dim_n: usize, seed: u64) -> Result<LinearSES> {
    if dim_m > dim_n {
        return Err(Error::InvalidInput("dim M cannot exceed dim N".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let phi = loop {
        let rows: Vec<Vec<i64>> = (0..dim_n)
            .map(|_| (0..dim_m).map(|_| rng.int_in(-3, 3)).collect())
            .collect();
        let phi = if dim_m == 0 {
            QMatrix::zeros(dim_n, 0)
        } else {
            QMatrix::from_i64_rows(&rows)
        };
        if phi.rank() == dim_m {
            break phi;
        }
    };
    let left_kernel = phi.transpose().kernel_basis();
    let psi = QMatrix::from_columns(dim_n, &left_kernel).transpose();
    LinearSES::new(phi, psi)
}

/// Matrix of an induced map on a symmetric power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMap {
    pub degree: usize,
    pub matrix: QMatrix,
}

/// `Sym^i f` in monomial bases: `x^α ↦ Π_l f(e_l)^{α_l}`.
pub fn sym_power(f: &QMatrix, i: usize) -> SymMap {
    let (dim_out, dim_in) = (f.rows(), f.cols());
    let images: Vec<HomPoly> = (0..dim_in)
        .map(|l| {
            (0..dim_out).fold(HomPoly::zero(dim_out, 1), |acc, k| {
                &acc + &HomPoly::var(dim_out, k).scale(f.get(k, l))
            })
        })
        .collect();
    let cols = monomials(dim_in, i as u32);
    let rows = monomials(dim_out, i as u32);
    let mut out = QMatrix::zeros(rows.len(), cols.len());
    for (c, alpha) in cols.iter().enumerate() {
        let mut img = HomPoly::constant(dim_out, Rat::one());
        for (l, &e) in alpha.exponents().iter().enumerate() {
            if e > 0 {
                img = img.multiply(&images[l].pow(e));
            }
        }
        for (r, coeff) in img.coefficient_vector().into_iter().enumerate() {
            out.set(r, c, coeff);
        }
    }
    SymMap {
        degree: i,
        matrix: out,
    }
}

/// Gram matrix `diag(α!/i!)` of the averaged pairing.
pub fn pairing_gram(dim: usize, i: usize) -> QMatrix {
    let monos = monomials(dim, i as u32);
    let ifact = factorial(i as u32);
    let mut g = QMatrix::zeros(monos.len(), monos.len());
    for (k, a) in monos.iter().enumerate() {
        g.set(k, k, Rat::new(a.factorial(), ifact.clone()));
    }
    g
}

fn diag_inverse(g: &QMatrix) -> QMatrix {
    let mut inv = QMatrix::zeros(g.rows(), g.cols());
    for k in 0..g.rows() {
        inv.set(k, k, g.get(k, k).recip());
    }
    inv
}

/// `(1/i!) Σ_σ Π_k l_σ(k)(v_k)` by brute force over permutations.
pub fn averaged_pairing(forms: &[Vec<Rat>], vectors: &[Vec<Rat>]) -> Rat {
    assert_eq!(forms.len(), vectors.len(), "pairing arity");
    let i = forms.len();
    let dot = |a: &[Rat], b: &[Rat]| a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
    let mut perm: Vec<usize> = (0..i).collect();
    let mut total = Rat::zero();
    loop {
        total += perm
            .iter()
            .enumerate()
            .fold(Rat::one(), |acc, (k, &s)| acc * dot(&forms[s], &vectors[k]));
        // next permutation in lexicographic order
        let Some(a) = (1..i).rev().find(|&a| perm[a - 1] < perm[a]) else {
            break;
        };
        let b = (a..i).rev().find(|&b| perm[b] > perm[a - 1]).expect("successor exists");
        perm.swap(a - 1, b);
        perm[a..].reverse();
    }
    total / Rat::from_integer(factorial(i as u32))
}

/// Coefficients of the product `w_1⋯w_i` of vectors in the monomial basis of `Sym^i`.
pub fn symmetric_product(vectors: &[Vec<Rat>], dim: usize) -> Vec<Rat> {
    vectors
        .iter()
        .fold(HomPoly::constant(dim, Rat::one()), |acc, v| {
            let lin = v.iter().enumerate().fold(HomPoly::zero(dim, 1), |a, (k, c)| {
                &a + &HomPoly::var(dim, k).scale(c)
            });
            acc.multiply(&lin)
        })
        .coefficient_vector()
}

/// Index of `(α', k)` in `Sym^{i-1} N ⊗ M` (and its dual).
fn tensor_index(alpha_idx: usize, k: usize, dim_m: usize) -> usize {
    alpha_idx * dim_m + k
}

/// `Sym^i N^* -> Sym^{i-1} N^* ⊗ M^*`,
/// `l_1⋯l_i ↦ (1/i) Σ_k [l_1⋯l̂_k⋯l_i] ⊗ φ^*(l_k)`.
pub fn quotient_map(ses: &LinearSES, i: usize) -> Result<QMatrix> {
    if i == 0 {
        return Err(Error::InvalidInput("symmetric degree must be at least 1".into()));
    }
    let (dim_m, dim_n, _) = ses.dims();
    let cols = monomials(dim_n, i as u32);
    let rows = monomial_index(dim_n, i as u32 - 1);
    let mut q = QMatrix::zeros(rows.len() * dim_m, cols.len());
    let inv_i = Rat::new(1.into(), (i as i64).into());
    for (c, beta) in cols.iter().enumerate() {
        for l in 0..dim_n {
            let Some(rest) = beta.div_var(l) else { continue };
            let r = rows[&rest];
            let weight = rat(beta.exponents()[l] as i64) * &inv_i;
            for k in 0..dim_m {
                let x = ses.phi().get(l, k);
                if x.is_zero() {
                    continue;
                }
                let idx = tensor_index(r, k, dim_m);
                let cur = q.get(idx, c) + &weight * x;
                q.set(idx, c, cur);
            }
        }
    }
    Ok(q)
}

/// `Sym^{i-1} N ⊗ M -> Sym^i N`, `[a] ⊗ b ↦ a · φ(b)`.
fn injection_j(ses: &LinearSES, i: usize) -> QMatrix {
    let (dim_m, dim_n, _) = ses.dims();
    let src = monomials(dim_n, i as u32 - 1);
    let tgt = monomial_index(dim_n, i as u32);
    let mut j = QMatrix::zeros(tgt.len(), src.len() * dim_m);
    for (a, alpha) in src.iter().enumerate() {
        for k in 0..dim_m {
            for l in 0..dim_n {
                let x = ses.phi().get(l, k);
                if !x.is_zero() {
                    j.set(tgt[&alpha.mul_var(l)], tensor_index(a, k, dim_m), x.clone());
                }
            }
        }
    }
    j
}

fn kron_identity(g: &QMatrix, k: usize) -> QMatrix {
    let mut out = QMatrix::zeros(g.rows() * k, g.cols() * k);
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            for t in 0..k {
                out.set(r * k + t, c * k + t, g.get(r, c).clone());
            }
        }
    }
    out
}

/// The two maps `Sym^i P^* -> Sym^i N^*` and `Sym^i N^* -> Sym^{i-1} N^* ⊗ M^*`
/// produced by one of the two procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedDual {
    pub injection: QMatrix,
    pub quotient: QMatrix,
}

/// Symmetrize along `ψ`, then dualize through the averaged pairing.
pub fn symmetrize_then_dualize(ses: &LinearSES, i: usize) -> Result<SymmetrizedDual> {
    if i == 0 {
        return Err(Error::InvalidInput("symmetric degree must be at least 1".into()));
    }
    let (dim_m, dim_n, dim_p) = ses.dims();
    let s = sym_power(ses.psi(), i).matrix;
    let g_n = pairing_gram(dim_n, i);
    let g_p = pairing_gram(dim_p, i);
    let injection = diag_inverse(&g_n).mul(&s.transpose())?.mul(&g_p)?;
    let j = injection_j(ses, i);
    let g_tensor = kron_identity(&pairing_gram(dim_n, i - 1), dim_m);
    let quotient = diag_inverse(&g_tensor).mul(&j.transpose())?.mul(&g_n)?;
    Ok(SymmetrizedDual {
        injection,
        quotient,
    })
}

/// Dualize, then symmetrize along `ψ^*`.
pub fn dualize_then_symmetrize(ses: &LinearSES, i: usize) -> Result<SymmetrizedDual> {
    Ok(SymmetrizedDual {
        injection: sym_power(&ses.psi().transpose(), i).matrix,
        quotient: quotient_map(ses, i)?,
    })
}

pub fn check_commute(ses: &LinearSES, i: usize) -> Result<bool> {
    Ok(symmetrize_then_dualize(ses, i)? == dualize_then_symmetrize(ses, i)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_frac;

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn sym_power_examples() {
        for i in 1..4 {
            let s = sym_power(&QMatrix::identity(3), i);
            assert_eq!(s.matrix, QMatrix::identity(s.matrix.rows()));
        }
        let d = QMatrix::from_i64_rows(&[vec![2, 0], vec![0, 5]]);
        let s = sym_power(&d, 2).matrix;
        assert_eq!(s, QMatrix::from_i64_rows(&[vec![4, 0, 0], vec![0, 10, 0], vec![0, 0, 25]]));
        // [[a,b],[c,d]] on x^2, xy, y^2: e0 -> a y0 + c y1, e1 -> b y0 + d y1
        let f = QMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let s = sym_power(&f, 2).matrix;
        let expect = QMatrix::from_i64_rows(&[
            vec![1, 2, 4],     // y0^2: a^2, ab, b^2
            vec![6, 10, 16],   // y0y1: 2ac, ad+bc, 2bd
            vec![9, 12, 16],   // y1^2: c^2, cd, d^2
        ]);
        assert_eq!(s, expect);
    }

    #[test]
    fn sym_power_is_functorial() {
        let f = QMatrix::from_i64_rows(&[vec![1, -2, 0], vec![3, 1, 1]]);
        let g = QMatrix::from_i64_rows(&[vec![2, 1], vec![0, -1], vec![1, 1], vec![4, 0]]);
        for i in 1..4 {
            let lhs = sym_power(&g.mul(&f).unwrap(), i).matrix;
            let rhs = sym_power(&g, i).matrix.mul(&sym_power(&f, i).matrix).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gram_matches_brute_force_pairing() {
        let ls = vec![ints(&[1, -2, 0]), ints(&[3, 1, 1]), ints(&[0, 2, -1])];
        let vs = vec![ints(&[2, 0, 1]), ints(&[1, 1, 1]), ints(&[-1, 3, 0])];
        let lhs = symmetric_product(&ls, 3);
        let rhs = symmetric_product(&vs, 3);
        let g = pairing_gram(3, 3);
        let via_gram: Rat = g
            .mul_vec(&rhs)
            .iter()
            .zip(&lhs)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        assert_eq!(via_gram, averaged_pairing(&ls, &vs));
    }

    #[test]
    fn quotient_first_degree_is_plain_dual() {
        let ses = random_ses(2, 4, 7).unwrap();
        assert_eq!(quotient_map(&ses, 1).unwrap(), ses.phi().transpose());
    }

    #[test]
    fn quotient_degree_two_evaluation() {
        let ses = random_ses(1, 3, 11).unwrap();
        let l1 = ints(&[1, 2, -1]);
        let l2 = ints(&[0, 3, 2]);
        let a = ints(&[2, -1, 1]);
        let b = ints(&[3]);
        let image = quotient_map(&ses, 2)
            .unwrap()
            .mul_vec(&symmetric_product(&[l1.clone(), l2.clone()], 3));
        // Sym^1 pairing is the plain one; M has dimension 1
        let value = image.iter().zip(&a).fold(Rat::zero(), |acc, (w, x)| acc + w * x * &b[0]);
        let dot = |u: &[Rat], v: &[Rat]| u.iter().zip(v).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
        let phi_b = ses.phi().mul_vec(&b);
        let expect = rat_frac(1, 2) * (dot(&l1, &a) * dot(&l2, &phi_b) + dot(&l2, &a) * dot(&l1, &phi_b));
        assert_eq!(value, expect);
    }

    #[test]
    fn quotient_of_zero_phi_is_zero() {
        // φ = 0 is not exact, so build the map through a degenerate sequence by hand.
        let ses = LinearSES {
            phi: QMatrix::zeros(3, 1),
            psi: QMatrix::identity(3),
        };
        assert!(quotient_map(&ses, 2).unwrap().is_zero());
        assert!(LinearSES::new(QMatrix::zeros(3, 1), QMatrix::identity(3)).is_err());
    }

    #[test]
    fn commute_examples() {
        let ses = random_ses(2, 4, 1).unwrap();
        assert!(check_commute(&ses, 1).unwrap());
        assert!(check_commute(&random_ses(1, 3, 5).unwrap(), 2).unwrap());
        assert!(check_commute(&random_ses(2, 4, 9).unwrap(), 3).unwrap());
    }

    #[test]
    fn random_ses_shapes() {
        let ses = random_ses(2, 5, 3).unwrap();
        assert_eq!(ses.dims(), (2, 5, 3));
        assert!(random_ses(4, 3, 0).is_err());
    }
}
