//! The Toeplitz upper-Hessenberg τ-counterexample family A_{n,k,t}, its
//! t → 0 limit B_k, and the closed forms attached to it: symbol, the
//! characteristic-polynomial recurrence, ψ_k / η_k and the Hurwitz-minor
//! instability certificate.
//!
//! A_{n,k,t} has first row a_0, …, a_{n−1}, ones on the first subdiagonal and
//! zeros below it. Its leading principal minors are d_m = t^{(m−k−1)+}.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, binomial, parse_rational};
use crate::matrix::DenseMatrix;
use crate::predicates::hurwitz_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleParams {
    pub n: usize,
    pub k: usize,
    pub t: BigRational,
}

impl CounterexampleParams {
    /// Requires n ≥ 1, k ≥ 1 and 0 < t < 1.
    pub fn new(n: usize, k: usize, t: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("order n must be at least 1"));
        }
        if k == 0 {
            return Err(Error::arg("k must be a positive integer"));
        }
        if !t.is_positive() || t >= BigRational::one() {
            return Err(Error::arg(format!("t = {t} must lie strictly between 0 and 1")));
        }
        Ok(CounterexampleParams { n, k, t })
    }

    /// `t` as `"p/q"` or an exact decimal.
    pub fn parse(n: usize, k: usize, t: &str) -> Result<Self> {
        Self::new(n, k, parse_rational(t)?)
    }

    pub fn t_f64(&self) -> f64 {
        exact::to_f64(&self.t)
    }
}

/// Upper Hessenberg Toeplitz matrix with unit subdiagonal, given by its first row.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzHessenberg {
    first_row: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

impl ToeplitzHessenberg {
    pub fn from_exact(first_row: Vec<BigRational>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::arg("first row must be nonempty"));
        }
        let f = first_row.iter().map(exact::to_f64).collect();
        Ok(ToeplitzHessenberg { first_row: f, exact: Some(first_row) })
    }

    pub fn from_f64(first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::arg("first row must be nonempty"));
        }
        if first_row.iter().any(|x| !x.is_finite()) {
            return Err(Error::arg("first row has a non-finite entry"));
        }
        Ok(ToeplitzHessenberg { first_row, exact: None })
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn first_row_exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// Leading section of order `m`.
    pub fn section(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.order() {
            return Err(Error::arg(format!("section order {m} outside 1..={}", self.order())));
        }
        Ok(ToeplitzHessenberg {
            first_row: self.first_row[..m].to_vec(),
            exact: self.exact.as_ref().map(|e| e[..m].to_vec()),
        })
    }

    /// Dense form; exact when the first row is.
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.order();
        match &self.exact {
            Some(a) => DenseMatrix::from_rational_fn(n, |i, j| {
                if j >= i {
                    a[j - i].clone()
                } else if i == j + 1 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .expect("rational entries are finite"),
            None => DenseMatrix::from_fn(n, |i, j| {
                if j >= i {
                    self.first_row[j - i]
                } else if i == j + 1 {
                    1.0
                } else {
                    0.0
                }
            }),
        }
    }
}

// d_m = Σ_{j=1}^m (−1)^{j−1} a_{j−1} d_{m−j}; the j = m term carries a_{m−1}.
fn solve_entries<T>(d: &[T], zero: T, one: T) -> Vec<T>
where
    T: Clone + std::ops::Sub<Output = T> + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + std::ops::Neg<Output = T>,
{
    let n = d.len();
    let minor = |m: usize| if m == 0 { one.clone() } else { d[m - 1].clone() };
    let mut a: Vec<T> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = zero.clone();
        for j in 1..m {
            let term = a[j - 1].clone() * minor(m - j);
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        let rest = minor(m) - acc;
        a.push(if m % 2 == 1 { rest } else { -rest });
    }
    a
}

/// First row with prescribed leading principal minors d_1..d_n (d_0 = 1), exactly.
pub fn entries_from_minors_exact(d: &[BigRational]) -> Result<ToeplitzHessenberg> {
    ToeplitzHessenberg::from_exact(solve_entries(d, BigRational::zero(), BigRational::one()))
}

/// Floating version of [`entries_from_minors_exact`].
pub fn entries_from_minors(d: &[f64]) -> Result<ToeplitzHessenberg> {
    ToeplitzHessenberg::from_f64(solve_entries(d, 0.0, 1.0))
}

/// Leading principal minors d_1..d_n of a [`ToeplitzHessenberg`] from the
/// Hessenberg expansion along the last column.
pub fn leading_minors_exact(a: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut d = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=m {
            let term = &a[j - 1] * &d[m - j];
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        d.push(acc);
    }
    d.remove(0);
    d
}

/// The target minor sequence t^{(m−k−1)+}, m = 1..n.
pub fn target_minors(n: usize, k: usize, t: &BigRational) -> Vec<BigRational> {
    (1..=n)
        .map(|m| exact::rpow(t, exact::positive_part(m as i64 - k as i64 - 1) as usize))
        .collect()
}

// Coefficients of N(s) / H(s) with
//   H(s) = 1 + (1−t) Σ_{j=1}^{k+1} (−s)^j,
//   N(s) = t − (1−t) Σ_{j=1}^{k+1} (−1)^j s^{j−1}.
// Valid for t in [0, 1); t = 0 gives the limit row.
fn series_row(n: usize, k: usize, t: &BigRational) -> Vec<BigRational> {
    let u = BigRational::one() - t;
    let alt = |j: usize| if j % 2 == 0 { u.clone() } else { -u.clone() };
    let h: Vec<BigRational> = (1..=k + 1).map(alt).collect(); // h[i-1] = H_i
    let mut num = vec![BigRational::zero(); k + 1];
    num[0] = t.clone();
    for j in 1..=k + 1 {
        num[j - 1] -= alt(j);
    }
    let mut a: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = num.get(j).cloned().unwrap_or_else(BigRational::zero);
        for i in 1..=j.min(k + 1) {
            v -= &h[i - 1] * &a[j - i];
        }
        a.push(v);
    }
    a
}

/// A_{n,k,t}: the order-n leading section of A_{∞,k,t}, exact.
pub fn build_counterexample(p: &CounterexampleParams) -> ToeplitzHessenberg {
    ToeplitzHessenberg::from_exact(series_row(p.n, p.k, &p.t)).expect("n >= 1")
}

/// The same first row computed through the minor recurrence, O(n²).
pub fn build_counterexample_via_minors(p: &CounterexampleParams) -> ToeplitzHessenberg {
    entries_from_minors_exact(&target_minors(p.n, p.k, &p.t)).expect("n >= 1")
}

/// B_k = lim_{t→0+} A_{2k+2,k,t}: first row (1, 0×k, (−1)^k, (−1)^k, 0×(k−1)).
pub fn build_limit(k: usize) -> Result<ToeplitzHessenberg> {
    if k == 0 {
        return Err(Error::arg("k must be a positive integer"));
    }
    let n = 2 * k + 2;
    let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let mut row = vec![BigRational::zero(); n];
    row[0] = BigRational::one();
    row[k + 1] = sign.clone();
    row[k + 2] = sign;
    ToeplitzHessenberg::from_exact(row)
}

/// First row of the infinite matrix for t in [0, 1), truncated to `n` entries.
pub fn symbol_coefficients(n: usize, k: usize, t: &BigRational) -> Result<Vec<BigRational>> {
    if t.is_negative() || *t >= BigRational::one() {
        return Err(Error::arg("t must lie in [0, 1)"));
    }
    Ok(series_row(n, k, t))
}

/// S(s) = (1 + ts) / (s (1 + (1−t) Σ_{j=1}^{k+1} (−s)^j)).
pub fn symbol_eval(k: usize, t: f64, s: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::zero();
    let mut scale = 0.0;
    let mut pow = Complex64::one();
    for _ in 1..=k + 1 {
        pow *= -s;
        sum += pow;
        scale += pow.norm();
    }
    let den = s * (Complex64::one() + (1.0 - t) * sum);
    let den_scale = s.norm() * (1.0 + (1.0 - t) * scale);
    if den.norm() <= 4.0 * f64::EPSILON * den_scale.max(f64::MIN_POSITIVE) || den.norm() == 0.0 {
        return Err(Error::Pole { s });
    }
    Ok((Complex64::one() + t * s) / den)
}

/// D_j(λ) = det(A_{j,k,t} − λI) by the linear recurrence
/// D_j + (λ−t) D_{j−1} + λ(1−t) Σ_{l=2}^{k+2} D_{j−l} = 0, seeded with
/// D_j = (1−λ)^j for j ≤ k+1.
pub fn d_poly_eval(k: usize, t: f64, j: usize, lambda: Complex64) -> Complex64 {
    let x = Complex64::one() - lambda;
    let mut d: Vec<Complex64> = Vec::with_capacity(j + 1);
    for m in 0..=j {
        let v = if m <= k + 1 {
            x.powu(m as u32)
        } else if m == k + 2 {
            x.powu(m as u32) - (1.0 - t)
        } else {
            let tail: Complex64 = (2..=k + 2).map(|l| d[m - l]).sum();
            -(lambda - t) * d[m - 1] - lambda * (1.0 - t) * tail
        };
        d.push(v);
    }
    d[j]
}

/// D_n(λ) / D_n'(λ) from the recurrence and its λ-derivative. The window of
/// the last k+2 terms is rescaled as it grows, so only the ratio is kept.
fn newton_ratio(k: usize, t: f64, n: usize, lambda: Complex64) -> Complex64 {
    let w = k + 2;
    let x = Complex64::one() - lambda;
    // ring buffers of D_j and D'_j
    let mut d = vec![Complex64::zero(); w];
    let mut dp = vec![Complex64::zero(); w];
    for m in 0..=n {
        let (v, vp) = if m <= k + 1 {
            let mf = m as f64;
            let vp = if m == 0 { Complex64::zero() } else { -mf * x.powu(m as u32 - 1) };
            (x.powu(m as u32), vp)
        } else if m == k + 2 {
            (x.powu(m as u32) - (1.0 - t), -(m as f64) * x.powu(m as u32 - 1))
        } else {
            let prev = d[(m - 1) % w];
            let prevp = dp[(m - 1) % w];
            let mut tail = Complex64::zero();
            let mut tailp = Complex64::zero();
            for l in 2..=k + 2 {
                tail += d[(m - l) % w];
                tailp += dp[(m - l) % w];
            }
            let v = -(lambda - t) * prev - lambda * (1.0 - t) * tail;
            let vp = -prev - (lambda - t) * prevp - (1.0 - t) * tail - lambda * (1.0 - t) * tailp;
            (v, vp)
        };
        d[m % w] = v;
        dp[m % w] = vp;
        let big = d.iter().chain(&dp).map(|z| z.norm()).fold(0.0, f64::max);
        if big > 1e150 || (big < 1e-150 && big > 0.0) {
            let f = 1.0 / big;
            d.iter_mut().chain(dp.iter_mut()).for_each(|z| *z *= f);
        }
    }
    d[n % w] / dp[n % w]
}

/// Eigenvalues of A_{n,k,t} to near working precision.
///
/// Dense QR on these sections loses accuracy geometrically in n (the
/// eigenvalue condition grows like t^{−n}). The dense values seed an Aberth
/// iteration on det(A_n − λI) evaluated through the minor recurrence, which
/// stays accurate where the dense arithmetic does not.
pub fn section_eigenvalues(p: &CounterexampleParams) -> Result<Vec<Complex64>> {
    let n = p.n;
    let t = p.t_f64();
    if n <= p.k + 1 {
        // det(A_n − λI) = (1 − λ)^n here
        return Ok(vec![Complex64::one(); n]);
    }
    let row: Vec<f64> = build_counterexample(p)
        .first_row_exact()
        .expect("built exactly")
        .iter()
        .map(exact::to_f64)
        .collect();
    let mut z = crate::spectral::eigenvalues(&ToeplitzHessenberg::from_f64(row)?.to_dense())?;
    // separate exact duplicates so the Aberth sum stays finite
    for i in 1..n {
        for j in 0..i {
            if z[i] == z[j] {
                z[i] += Complex64::new(1e-7, 1e-7) * (i as f64);
            }
        }
    }
    let mut done = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    for _ in 0..ABERTH_MAX_SWEEPS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = newton_ratio(p.k, t, n, z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::Numerical(format!("Aberth step is not finite at {}", z[i])));
            }
            z[i] -= step;
            let scale = z[i].norm().max(1.0);
            let size = step.norm();
            // a step that stops shrinking near the evaluation noise floor ends the root
            let stalled = size <= ABERTH_NOISE * scale && size > 0.5 * best[i];
            if size <= ABERTH_TOL * scale || stalled {
                done[i] = true;
            }
            best[i] = best[i].min(size);
        }
        if done.iter().all(|&d| d) {
            crate::spectral::sort_spectrum(&mut z);
            return Ok(z);
        }
    }
    Err(Error::Numerical(format!(
        "Aberth polishing of A_{{{n},{},{}}} did not settle in {ABERTH_MAX_SWEEPS} sweeps",
        p.k, p.t
    )))
}

const ABERTH_MAX_SWEEPS: usize = 500;
const ABERTH_TOL: f64 = 1e-14;
const ABERTH_NOISE: f64 = 1e-9;

/// ψ_k and η_k with integer coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiEta {
    pub k: usize,
    /// ψ_k(λ) = (1+λ)^{k+3} − (k+1)(1+λ) + k, degree k+3.
    pub psi: Vec<BigInt>,
    /// η_k(λ) = 2λ^{k+2} + Σ_{j=2}^{k+3} C(k+3,j) λ^{k+3−j}, degree k+2.
    pub eta: Vec<BigInt>,
}

impl PsiEta {
    /// η_k leading coefficient first, the layout the Hurwitz array expects.
    pub fn eta_descending(&self) -> Vec<BigInt> {
        self.eta.iter().rev().cloned().collect()
    }

    /// λ^{k+3} ψ_k(1/λ) coefficients, ascending, trailing zeros trimmed.
    pub fn reversed_psi(&self) -> Vec<BigInt> {
        let mut r: Vec<BigInt> = self.psi.iter().rev().cloned().collect();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r
    }
}

pub fn psi_eta_polys(k: usize) -> PsiEta {
    let m = k as u64 + 3;
    let mut psi: Vec<BigInt> = (0..=m).map(|j| binomial(m, j)).collect();
    psi[0] -= BigInt::from(k + 1);
    psi[1] -= BigInt::from(k + 1);
    psi[0] += BigInt::from(k);
    let mut eta = vec![BigInt::zero(); k + 3];
    eta[k + 2] = BigInt::from(2);
    for j in 2..=m {
        eta[(m - j) as usize] += binomial(m, j);
    }
    PsiEta { k, psi, eta }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstabilityCertificate {
    pub k: usize,
    /// H_k[2:5] as an exact fraction string.
    pub minor_exact: String,
    pub closed_form_exact: String,
    pub minor_value: f64,
    pub closed_form_value: f64,
    pub negative: bool,
    /// Exact agreement of the two routes.
    pub agree: bool,
}

/// −(1/132300)(3k³−49k²−210k−318)(k+4)²(k+5) C(k+3,2) C(k+3,4) C(k+3,6).
pub fn hurwitz_minor_closed_form(k: usize) -> BigRational {
    let kk = BigInt::from(k);
    let cubic = BigInt::from(3) * &kk * &kk * &kk - BigInt::from(49) * &kk * &kk - BigInt::from(210) * &kk - BigInt::from(318);
    let m = k as u64 + 3;
    let k4 = &kk + 4;
    let num = cubic * &k4 * &k4 * (&kk + 5) * binomial(m, 2) * binomial(m, 4) * binomial(m, 6);
    -BigRational::new(num, BigInt::from(132300))
}

/// The 4×4 minor on rows and columns 2..5 of the Hurwitz array of η_k. For
/// k < 3 the array has order below 5 and is continued by its own pattern.
pub fn hurwitz_minor(k: usize) -> BigRational {
    let pe = psi_eta_polys(k);
    let coeffs: Vec<BigRational> = pe.eta_descending().into_iter().map(BigRational::from_integer).collect();
    let h = hurwitz_matrix(&coeffs).expect("eta has positive degree and leading coefficient 2");
    let size = h.degree().max(5);
    let arr = h.extended(size);
    let sub: Vec<Vec<BigInt>> = (1..5)
        .map(|i| (1..5).map(|j| arr[i][j].to_integer()).collect())
        .collect();
    BigRational::from_integer(exact::bareiss_det(sub))
}

pub fn instability_certificate(k: usize) -> Result<InstabilityCertificate> {
    if k == 0 {
        return Err(Error::arg("k must be a positive integer"));
    }
    let minor = hurwitz_minor(k);
    let closed = hurwitz_minor_closed_form(k);
    Ok(InstabilityCertificate {
        k,
        minor_exact: minor.to_string(),
        closed_form_exact: closed.to_string(),
        minor_value: exact::to_f64(&minor),
        closed_form_value: exact::to_f64(&closed),
        negative: minor.is_negative(),
        agree: minor == closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigenvalues;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn qs(v: &[&str]) -> Vec<BigRational> {
        v.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn entries_from_minor_examples() {
        let a = entries_from_minors_exact(&qs(&["1", "1", "1"])).unwrap();
        assert_eq!(a.first_row_exact().unwrap(), qs(&["1", "0", "0"]).as_slice());
        let a = entries_from_minors_exact(&qs(&["1", "1", "1/2"])).unwrap();
        assert_eq!(a.first_row_exact().unwrap()[2], q("-1/2"));
        let a = entries_from_minors_exact(&qs(&["1", "1", "1/2", "1/4"])).unwrap();
        assert_eq!(a.first_row_exact().unwrap(), qs(&["1", "0", "-1/2", "-1/4"]).as_slice());
        let f = entries_from_minors(&[1.0, 1.0, 0.5, 0.25]).unwrap();
        assert_eq!(f.first_row(), &[1.0, 0.0, -0.5, -0.25]);
    }

    #[test]
    fn series_matches_minor_recurrence() {
        for k in 1..=5 {
            for t in ["1/4", "1/2", "3/4", "1/5"] {
                let p = CounterexampleParams::parse(64, k, t).unwrap();
                assert_eq!(build_counterexample(&p), build_counterexample_via_minors(&p), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn leading_minors_by_determinant() {
        let p = CounterexampleParams::parse(9, 2, "1/3").unwrap();
        let a = build_counterexample(&p).to_dense();
        let want = target_minors(9, 2, &p.t);
        for m in 1..=9 {
            let d = a.leading(m).unwrap().minor_exact(&crate::IndexSet::range(1, m), &crate::IndexSet::range(1, m));
            assert_eq!(d.unwrap().unwrap(), want[m - 1]);
        }
    }

    #[test]
    fn params_validate_t() {
        assert!(CounterexampleParams::parse(4, 1, "0").is_err());
        assert!(CounterexampleParams::parse(4, 1, "1").is_err());
        assert!(CounterexampleParams::parse(4, 0, "1/2").is_err());
        assert!(CounterexampleParams::parse(0, 1, "1/2").is_err());
        assert_eq!(CounterexampleParams::parse(4, 1, "0.2").unwrap().t, q("1/5"));
    }

    #[test]
    fn limit_matrix_layout_and_continuity() {
        let b = build_limit(1).unwrap();
        assert_eq!(b.first_row_exact().unwrap(), qs(&["1", "0", "-1", "-1"]).as_slice());
        for k in 1..=6 {
            let b = build_limit(k).unwrap();
            let p = CounterexampleParams::parse(2 * k + 2, k, "1/1000000").unwrap();
            let a = build_counterexample(&p);
            let gap = a.first_row().iter().zip(b.first_row()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            assert!(gap < 1e-5, "k={k} gap {gap}");
            assert_eq!(symbol_coefficients(2 * k + 2, k, &q("0")).unwrap(), b.first_row_exact().unwrap());
        }
    }

    #[test]
    fn symbol_values() {
        let v = symbol_eval(3, 0.2, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((v.re + 0.8 / 4.2).abs() < 1e-14 && v.im == 0.0);
        let v = symbol_eval(1, 0.5, Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 1.5).abs() < 1e-14);
        assert!(matches!(symbol_eval(2, 0.5, Complex64::zero()), Err(Error::Pole { .. })));
        // Laurent coefficients about 0: s·S(s) − 1 = Σ a_j s^{j+1}, read off by a contour sum
        let (k, t) = (2, 0.5);
        let a = build_counterexample(&CounterexampleParams::parse(8, k, "1/2").unwrap());
        let m = 64;
        let r = 0.3;
        for (j, want) in a.first_row().iter().enumerate() {
            let mut acc = Complex64::zero();
            for i in 0..m {
                let s = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * i as f64 / m as f64);
                acc += (symbol_eval(k, t, s).unwrap() - 1.0 / s) / s.powu(j as u32);
            }
            let coeff = acc / m as f64;
            assert!((coeff.re - want).abs() < 1e-10, "a_{j}: {coeff} vs {want}");
        }
    }

    #[test]
    fn d_poly_matches_determinants() {
        let (k, t) = (2, 0.5);
        let p = CounterexampleParams::parse(20, k, "1/2").unwrap();
        let a = build_counterexample(&p).to_dense().without_exact();
        for j in 1..=20 {
            let aj = a.leading(j).unwrap();
            for lam in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.7), Complex64::new(-1.2, 0.4)] {
                let det = aj.sub(&DenseMatrix::from_complex_fn(j, |r, c| if r == c { lam } else { Complex64::zero() })).unwrap().det();
                let d = d_poly_eval(k, t, j, lam);
                assert!((d - det).norm() <= 1e-8 * det.norm().max(1.0), "j={j} λ={lam}: {d} vs {det}");
            }
        }
        for n in 0..30 {
            let want = t.powi((n as i32 - k as i32).max(0));
            assert!((d_poly_eval(k, t, n + 1, Complex64::zero()).re - want).abs() < 1e-12);
        }
        assert!((d_poly_eval(3, 0.2, 5, Complex64::zero()).re - 0.2).abs() < 1e-15);
    }

    #[test]
    fn psi_eta_identities() {
        let pe = psi_eta_polys(1);
        assert_eq!(pe.eta, vec![1, 4, 6, 2].into_iter().map(BigInt::from).collect::<Vec<_>>());
        for k in 1..=30 {
            let pe = psi_eta_polys(k);
            assert!(pe.psi[0].is_zero());
            assert_eq!(pe.reversed_psi(), pe.eta, "k={k}");
            // ψ_k(λ) at λ = 1 directly
            let direct = BigInt::from(2).pow(k as u32 + 3) - BigInt::from(2 * (k + 1)) + BigInt::from(k);
            let sum: BigInt = pe.psi.iter().sum();
            assert_eq!(sum, direct);
        }
    }

    #[test]
    fn limit_spectrum_contains_psi_roots() {
        // every root r of ψ_k gives the eigenvalue −r of B_k
        for k in 1..=6 {
            let b = build_limit(k).unwrap().to_dense();
            let ev = eigenvalues(&b).unwrap();
            let pe = psi_eta_polys(k);
            let psi = crate::poly::Poly::new(pe.psi.iter().map(|c| Complex64::new(exact::to_f64(&BigRational::from_integer(c.clone())), 0.0)).collect());
            let roots = psi.roots().unwrap();
            let mut hit = 0;
            for r in &roots {
                if ev.iter().any(|z| (*z + *r).norm() < 1e-6) {
                    hit += 1;
                }
            }
            assert_eq!(hit, roots.len(), "k={k}: roots {roots:?} vs spectrum {ev:?}");
        }
    }

    #[test]
    fn hurwitz_certificate_small_k() {
        // k = 1: the continued 5×5 array has a zero last column.
        assert!(hurwitz_minor(1).is_zero());
        assert!(hurwitz_minor_closed_form(1).is_zero());
        let c20 = instability_certificate(20).unwrap();
        assert!(!c20.negative && c20.agree);
        let c21 = instability_certificate(21).unwrap();
        assert!(c21.negative && c21.agree);
        assert!(instability_certificate(0).is_err());
    }

    #[test]
    fn polished_section_eigenvalues_match_high_precision_roots() {
        // reference values: 200-digit roots of the exact characteristic polynomial
        let near = |ev: &[Complex64], z: Complex64| ev.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        let p = CounterexampleParams::parse(50, 3, "1/5").unwrap();
        let ev = section_eigenvalues(&p).unwrap();
        assert_eq!(ev.len(), 50);
        assert!(near(&ev, Complex64::new(2.8664342253960743e-05, 0.0)) < 1e-12);
        assert!(near(&ev, Complex64::new(3.234937063144814e-05, 0.0)) < 1e-12);
        assert!(near(&ev, Complex64::new(2.426772426628896, -0.9734910216154173)) < 1e-12);
        assert!(ev.iter().all(|z| z.re > 0.0));
        // the exact least real eigenvalue agrees
        let l = crate::spectral::min_real_eigenvalue(&build_counterexample(&p).to_dense()).unwrap();
        assert!((l - 2.8664342253960743e-05).abs() < 1e-15);

        let p = CounterexampleParams::parse(50, 10, "2/5").unwrap();
        let ev = section_eigenvalues(&p).unwrap();
        assert!(near(&ev, Complex64::new(-0.02641906458573304, 0.6731921550502156)) < 1e-12);
        assert!(near(&ev, Complex64::new(2.289322296609103, 0.0)) < 1e-12);
        assert_eq!(ev.iter().filter(|z| z.re < 0.0).count(), 2);
    }

    #[test]
    fn newton_ratio_matches_recurrence_difference() {
        let (k, t, n) = (2, 0.3, 12);
        let z = Complex64::new(0.4, 0.2);
        let h = 1e-6;
        let dz = (d_poly_eval(k, t, n, z + h) - d_poly_eval(k, t, n, z - h)) / (2.0 * h);
        let want = d_poly_eval(k, t, n, z) / dz;
        assert!((newton_ratio(k, t, n, z) - want).norm() < 1e-8 * want.norm());
    }
}
