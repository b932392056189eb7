//! Seeded generators for the property suites and experiments.
//!
//! Every generator takes a caller-owned RNG; the same seed always gives the
//! same matrix. Most outputs carry exact rational entries with small
//! denominators so the predicates run in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

type Rows = Vec<Vec<BigRational>>;

fn zeros(n: usize) -> Rows {
    vec![vec![BigRational::zero(); n]; n]
}

fn mul(a: &Rows, b: &Rows) -> Rows {
    let n = a.len();
    let mut c = zeros(n);
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    let v = &a[i][l] * &b[l][j];
                    c[i][j] += v;
                }
            }
        }
    }
    c
}

fn transpose(a: &Rows) -> Rows {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn to_matrix(a: Rows) -> Result<DenseMatrix> {
    let n = a.len();
    DenseMatrix::from_rational(n, a.into_iter().flatten().collect())
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::arg("sample order must be positive"));
    }
    Ok(())
}

/// Symmetric positive definite integer matrix L Lᵀ + I with small integer L.
fn spd_rows<R: Rng>(n: usize, rng: &mut R) -> Rows {
    let l: Rows = (0..n)
        .map(|i| (0..n).map(|j| if j <= i { ratio(rng.gen_range(-3..=3), 1) } else { BigRational::zero() }).collect())
        .collect();
    let mut s = mul(&l, &transpose(&l));
    for (i, row) in s.iter_mut().enumerate() {
        row[i] += BigRational::one();
    }
    s
}

/// P-matrix: either S + K (S positive definite, K skew) or a strictly row
/// diagonally dominant matrix with positive diagonal.
pub fn p_matrix<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let mut a = zeros(n);
    if rng.gen_bool(0.5) {
        a = spd_rows(n, rng);
        for i in 0..n {
            for j in i + 1..n {
                let k = ratio(rng.gen_range(-4..=4), 1);
                a[i][j] += &k;
                a[j][i] -= k;
            }
        }
    } else {
        for (i, row) in a.iter_mut().enumerate() {
            let mut off = 0i64;
            for (j, x) in row.iter_mut().enumerate() {
                if i != j {
                    let v: i64 = rng.gen_range(-5..=5);
                    off += v.abs();
                    *x = ratio(v, 2);
                }
            }
            row[i] = ratio(off + rng.gen_range(1..=4), 2);
        }
    }
    to_matrix(a)
}

/// Sign-symmetric P-matrix D₁ S D₂ with S symmetric positive definite and
/// D₁, D₂ positive diagonal. Minor pairs scale by positive factors of S[α,β]².
pub fn sign_symmetric_p_matrix<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let s = spd_rows(n, rng);
    let d1: Vec<BigRational> = (0..n).map(|_| ratio(rng.gen_range(1..=8), 4)).collect();
    let d2: Vec<BigRational> = (0..n).map(|_| ratio(rng.gen_range(1..=8), 4)).collect();
    let a = (0..n).map(|i| (0..n).map(|j| &d1[i] * &s[i][j] * &d2[j]).collect()).collect();
    to_matrix(a)
}

/// Symmetric oscillatory matrix L D Lᵀ, where L is a product of `factors`
/// unit lower bidiagonal matrices with positive subdiagonals and D is a
/// positive diagonal. The product is TN and nonsingular with a positive first
/// super- and subdiagonal.
pub fn oscillatory_symmetric<R: Rng>(n: usize, factors: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let mut l = zeros(n);
    for (i, row) in l.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    for _ in 0..factors.max(1) {
        let mut b = zeros(n);
        for i in 0..n {
            b[i][i] = BigRational::one();
            if i > 0 {
                b[i][i - 1] = ratio(rng.gen_range(1..=8), 4);
            }
        }
        l = mul(&l, &b);
    }
    let d: Rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ratio(rng.gen_range(1..=8), 2) } else { BigRational::zero() }).collect())
        .collect();
    to_matrix(mul(&mul(&l, &d), &transpose(&l)))
}

/// Monic polynomial of degree `d` with every root in the open left
/// half-plane, coefficients leading first. Roots are −a (real) or −a ± bi
/// with rational a, b > 0.
pub fn stable_polynomial<R: Rng>(d: usize, rng: &mut R) -> Result<Vec<BigRational>> {
    if d == 0 {
        return Err(Error::arg("polynomial degree must be positive"));
    }
    // ascending while multiplying
    let mut p = vec![BigRational::one()];
    let times = |p: &[BigRational], f: &[BigRational]| {
        let mut out = vec![BigRational::zero(); p.len() + f.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in f.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut left = d;
    while left > 0 {
        let a = ratio(rng.gen_range(1..=12), 4);
        if left >= 2 && rng.gen_bool(0.5) {
            let b = ratio(rng.gen_range(1..=12), 4);
            // x² + 2a x + a² + b²
            let f = [&a * &a + &b * &b, &a * ratio(2, 1), BigRational::one()];
            p = times(&p, &f);
            left -= 2;
        } else {
            p = times(&p, &[a, BigRational::one()]);
            left -= 1;
        }
    }
    p.reverse();
    Ok(p)
}

/// Real n×n matrix with entries uniform in [−1, 1).
pub fn real_matrix<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let v: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Ok(DenseMatrix::from_fn(n, |i, j| v[i * n + j]))
}

/// Real Toeplitz matrix with diagonals uniform in [−1, 1).
pub fn toeplitz_matrix<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let diag: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Ok(DenseMatrix::from_fn(n, |i, j| diag[i + n - 1 - j]))
}

/// Strictly ultrametric matrix from a random binary tree on the indices.
///
/// Each tree node carries a level; a(i,j) is the level of the deepest block
/// holding both i and j, and levels grow with depth, which gives the min
/// inequality. Leaves sit strictly above their parent, so each diagonal
/// entry beats its row's off-diagonal maximum.
pub fn strictly_ultrametric<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    check_order(n)?;
    let mut a = zeros(n);
    let base = ratio(rng.gen_range(0..=4), 4);
    fill_block(&mut a, 0, n, base, rng);
    to_matrix(a)
}

fn fill_block<R: Rng>(a: &mut Rows, lo: usize, hi: usize, level: BigRational, rng: &mut R) {
    if hi - lo == 1 {
        a[lo][lo] = level + ratio(rng.gen_range(1..=4), 4);
        return;
    }
    for i in lo..hi {
        for j in lo..hi {
            a[i][j] = level.clone();
        }
    }
    let mid = rng.gen_range(lo + 1..hi);
    for (l, h) in [(lo, mid), (mid, hi)] {
        let child = &level + ratio(rng.gen_range(0..=4), 4);
        fill_block(a, l, h, child, rng);
    }
}
