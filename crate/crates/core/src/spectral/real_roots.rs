//! Exact real-root location for matrices with rational entries.
//!
//! Real eigenvalues of strongly non-normal matrices (the Toeplitz sections
//! among them) are too ill-conditioned for a floating QR to tell a close real
//! pair from a complex pair. For rational input we instead form the exact
//! characteristic polynomial, build its Sturm chain over the integers and
//! bisect on dyadic points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact;
use crate::matrix::DenseMatrix;

/// Ascending coefficients of det(λI − A), exact, or `None` without a rational shadow.
pub fn exact_char_poly(a: &DenseMatrix) -> Option<Vec<BigRational>> {
    let (p, scale) = scaled_char_poly(a)?;
    // p is det(μI − sA) with μ = sλ
    let d = p.len() - 1;
    let mut s_pow = BigInt::one();
    let mut out = vec![BigRational::zero(); d + 1];
    for j in (0..=d).rev() {
        out[j] = BigRational::new(p[j].clone(), s_pow.clone());
        s_pow *= &scale;
    }
    Some(out)
}

/// Upper Hessenberg matrix similar to `a`, by Gaussian similarity steps.
fn exact_hessenberg(a: &DenseMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = a.order();
    let q = a.exact_entries()?;
    let mut h: Vec<Vec<BigRational>> = (0..n).map(|i| q[i * n..(i + 1) * n].to_vec()).collect();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h[r][c].is_zero()) else { continue };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        for i in c + 2..n {
            if h[i][c].is_zero() {
                continue;
            }
            let m = &h[i][c] / &h[c + 1][c];
            for j in c..n {
                let v = &m * &h[c + 1][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &m * &row[i];
                row[c + 1] += v;
            }
        }
    }
    Some(h)
}

/// Integer characteristic polynomial of sA, where s clears every denominator
/// of the Hessenberg form. Returns (coefficients, s).
fn scaled_char_poly(a: &DenseMatrix) -> Option<(IntPoly, BigInt)> {
    let h = exact_hessenberg(a)?;
    let n = h.len();
    let scale = h.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let hi: Vec<Vec<BigInt>> =
        h.iter().map(|row| row.iter().map(|x| x.numer() * (&scale / x.denom())).collect()).collect();

    // p_m = (μ − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j−1}) p_{i−1}
    let mut polys: Vec<IntPoly> = vec![vec![BigInt::one()]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![BigInt::zero(); m + 2];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= &hi[m][m] * c;
        }
        let mut prod = BigInt::one();
        for i in (0..m).rev() {
            prod *= &hi[i + 1][i];
            if prod.is_zero() {
                break;
            }
            if hi[i][m].is_zero() {
                continue;
            }
            let f = &hi[i][m] * &prod;
            for (j, c) in polys[i].iter().enumerate() {
                next[j] -= &f * c;
            }
        }
        polys.push(next);
    }
    Some((polys.pop()?, scale))
}

type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn primitive(mut p: IntPoly) -> IntPoly {
    trim(&mut p);
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

fn from_rationals(p: &[BigRational]) -> IntPoly {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(p.iter().map(|c| c.numer() * (&l / c.denom())).collect())
}

fn derivative(p: &IntPoly) -> IntPoly {
    let d: IntPoly = p.iter().enumerate().skip(1).map(|(j, c)| c * BigInt::from(j)).collect();
    if d.is_empty() {
        vec![BigInt::zero()]
    } else {
        d
    }
}

/// Pseudo-remainder of `a` by `b`: lc(b)^{δ+1} a = q b + r.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lead * bj;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

/// Sturm chain of an integer polynomial, each member made primitive with
/// positive scaling so sign variations are preserved.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &[BigRational]) -> Self {
        Self::from_integer(from_rationals(p))
    }

    fn from_integer(p0: IntPoly) -> Self {
        let p0 = primitive(p0);
        let p1 = primitive(derivative(&p0));
        let mut chain = vec![p0, p1];
        loop {
            let b = &chain[chain.len() - 1];
            if b.len() == 1 {
                break;
            }
            let a = &chain[chain.len() - 2];
            let delta = a.len() - b.len();
            let r = pseudo_rem(a, b);
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
            // −rem(a, b) up to a positive factor
            let flip = b[b.len() - 1].is_negative() && (delta + 1) % 2 == 1;
            let next: IntPoly = r.into_iter().map(|c| if flip { c } else { -c }).collect();
            chain.push(primitive(next));
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let num = x.numer();
        let den = x.denom();
        let mut signs = Vec::with_capacity(self.chain.len());
        for p in &self.chain {
            let d = p.len() - 1;
            // Σ c_j num^j den^{d−j}, same sign as p(x) since den > 0
            let mut acc = p[d].clone();
            let mut dpow = BigInt::one();
            for j in (0..d).rev() {
                dpow *= den;
                acc = acc * num + &p[j] * &dpow;
            }
            if !acc.is_zero() {
                signs.push(acc.is_positive());
            }
        }
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in (a, b], for a not a root.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Power of two B with every root in (−B, B), from Fujiwara's bound
    /// 2 max_j |c_{d−j}/c_d|^{1/j} evaluated on bit lengths.
    fn root_bound(&self) -> BigRational {
        let p = &self.chain[0];
        let d = p.len() - 1;
        let lead_bits = p[d].bits() as i64 - 1;
        let e = (1..=d)
            .filter(|&j| !p[d - j].is_zero())
            .map(|j| (p[d - j].bits() as i64 - lead_bits + j as i64 - 1) / j as i64 + 1)
            .max()
            .unwrap_or(0)
            .max(0)
            + 2;
        BigRational::from_integer(BigInt::one() << e as usize)
    }

    /// Smallest real root to about `rel_tol`, `None` without real roots.
    pub fn least_root(&self, rel_tol: f64) -> Option<f64> {
        let bound = self.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        let mut v_lo = self.variations_at(&lo);
        if v_lo <= self.variations_at(&hi) {
            return None;
        }
        let two = BigRational::from_integer(2.into());
        for _ in 0..2000 {
            let mid = (&lo + &hi) / &two;
            let v_mid = self.variations_at(&mid);
            if v_lo > v_mid {
                hi = mid;
            } else {
                lo = mid;
                v_lo = v_mid;
            }
            let (l, h) = (exact::to_f64(&lo), exact::to_f64(&hi));
            if h - l <= rel_tol * h.abs().max(l.abs()).max(f64::MIN_POSITIVE) {
                break;
            }
        }
        Some(exact::to_f64(&hi))
    }
}

/// l(A) for a rational matrix: the smallest real eigenvalue, located exactly.
pub fn exact_least_real_eigenvalue(a: &DenseMatrix) -> Option<f64> {
    let (p, scale) = scaled_char_poly(a)?;
    let root = SturmChain::from_integer(p).least_root(1e-15);
    Some(root.map_or(f64::INFINITY, |r| r / exact::to_f64(&BigRational::from_integer(scale))))
}
