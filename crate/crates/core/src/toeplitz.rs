//! Banded and rational-symbol Toeplitz operators: symbol curves, winding
//! spectra, Day's limit-set test, Biernacki stars, finite-section sweeps and
//! Gohberg–Semencul inversion.
//!
//! Conventions: T = (τ(i−j)), so τ(1) sits on the subdiagonal, and the symbol
//! is S(s) = Σ τ(−j) s^j.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counterexample::{self, CounterexampleParams};
use crate::error::{Error, Result};
use crate::exact::{self, rpow};
use crate::matrix::{DenseMatrix, PNorm};
use crate::poly::Poly;
use crate::spectral;

/// Distance below which a point counts as lying on a sampled symbol curve.
pub const ON_CURVE_TOL: f64 = 1e-9;

/// Root moduli closer than this (relative) are tied in Day's criterion.
pub const DAY_TOL: f64 = 1e-8;

const MIN_WINDING_GRID: usize = 256;
const MAX_SPLIT_DEPTH: u32 = 40;

/// Anything with a symbol that can be evaluated on the unit circle.
pub trait Symbol {
    fn eval(&self, s: Complex64) -> Result<Complex64>;
}

/// Toeplitz operator with finitely many nonzero diagonals τ(−m), …, τ(m).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzBand {
    half_width: usize,
    /// τ(j) at index j + half_width.
    coeffs: Vec<Complex64>,
}

impl ToeplitzBand {
    /// `coeffs` lists τ(−m), …, τ(m); its length must be odd.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::arg("band coefficients must cover a symmetric window −m..=m"));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::arg("band coefficients must be finite"));
        }
        Ok(ToeplitzBand { half_width: coeffs.len() / 2, coeffs })
    }

    /// Band from (offset, value) pairs; unmentioned diagonals are zero.
    pub fn from_diagonals(diagonals: &[(i64, Complex64)]) -> Result<Self> {
        let m = diagonals.iter().map(|(j, _)| j.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::zero(); 2 * m + 1];
        for &(j, v) in diagonals {
            coeffs[(j + m as i64) as usize] += v;
        }
        Self::new(coeffs)
    }

    pub fn identity() -> Self {
        Self::from_diagonals(&[(0, Complex64::one())]).unwrap()
    }

    /// Ones on the superdiagonal; symbol s.
    pub fn shift() -> Self {
        Self::from_diagonals(&[(-1, Complex64::one())]).unwrap()
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// τ(j), zero outside the window.
    pub fn tau(&self, j: i64) -> Complex64 {
        let m = self.half_width as i64;
        if j.abs() > m {
            Complex64::zero()
        } else {
            self.coeffs[(j + m) as usize]
        }
    }

    /// The order-n finite section (τ(i−j))_{i,j<n}.
    pub fn section(&self, n: usize) -> DenseMatrix {
        DenseMatrix::from_complex_fn(n, |i, j| self.tau(i as i64 - j as i64))
    }
}

impl Symbol for ToeplitzBand {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        if s.norm() == 0.0 && self.half_width > 0 && (1..=self.half_width as i64).any(|j| self.tau(j) != Complex64::zero()) {
            return Err(Error::Pole { s });
        }
        let m = self.half_width as i64;
        Ok((-m..=m).map(|j| self.tau(-j) * s.powi(j as i32)).sum())
    }
}

/// Symbol F / (G·H) with G's roots inside and H's roots outside an annulus
/// around the unit circle; p = deg G.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymbol {
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
}

impl RationalSymbol {
    /// Checks that max |root of G| < min |root of H| and that F shares no
    /// root with GH to relative tolerance `1e−10`.
    pub fn new(f: Poly, g: Poly, h: Poly) -> Result<Self> {
        if f.is_zero() || g.is_zero() || h.is_zero() {
            return Err(Error::arg("F, G and H must be nonzero polynomials"));
        }
        let g_roots = g.roots()?;
        let h_roots = h.roots()?;
        let r1 = g_roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let r2 = h_roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if r1 >= r2 {
            return Err(Error::arg(format!(
                "no annulus separates the roots of G (|s| ≤ {r1}) from those of H (|s| ≥ {r2})"
            )));
        }
        let f_scale: f64 = f.coeffs().iter().map(|c| c.norm()).sum();
        for z in g_roots.iter().chain(&h_roots) {
            let powers: f64 = (0..=f.degree()).map(|j| z.norm().powi(j as i32)).fold(0.0, f64::max);
            if f.eval(*z).norm() <= 1e-10 * f_scale * powers {
                return Err(Error::arg(format!("F and GH share the root {z}")));
            }
        }
        Ok(RationalSymbol { f, g, h })
    }

    /// p = deg G.
    pub fn p(&self) -> usize {
        self.g.degree()
    }

    /// Symbol of the counterexample family, t ∈ [0, 1):
    /// F = 1 + ts, G = s, H = 1 + (1−t) Σ_{j=1}^{k+1} (−s)^j.
    pub fn counterexample(k: usize, t: f64) -> Result<Self> {
        if k == 0 || !(0.0..1.0).contains(&t) {
            return Err(Error::arg("need k ≥ 1 and t in [0, 1)"));
        }
        let f = Poly::from_real(&[1.0, t]);
        let g = Poly::from_real(&[0.0, 1.0]);
        let mut h = vec![1.0];
        for j in 1..=k + 1 {
            h.push(if j % 2 == 0 { 1.0 - t } else { t - 1.0 });
        }
        Self::new(f, g, Poly::from_real(&h))
    }

    /// R = F − λGH.
    pub fn day_polynomial(&self, lambda: Complex64) -> Poly {
        &self.f - &(&(&self.g * &self.h) * lambda)
    }
}

impl Symbol for RationalSymbol {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        let den = self.g.eval(s) * self.h.eval(s);
        let scale: f64 = (&self.g * &self.h).coeffs().iter().map(|c| c.norm()).sum::<f64>() * s.norm().max(1.0).powi((self.g.degree() + self.h.degree()) as i32);
        if den.norm() <= 4.0 * f64::EPSILON * scale {
            return Err(Error::Pole { s });
        }
        Ok(self.f.eval(s) / den)
    }
}

/// Uniform samples of a symbol on |s| = 1, closed: the last θ is 2π.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSamples {
    pub theta: Vec<f64>,
    pub points: Vec<Complex64>,
}

impl CurveSamples {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re,im\n");
        for (th, z) in self.theta.iter().zip(&self.points) {
            let _ = writeln!(out, "{th},{},{}", z.re, z.im);
        }
        out
    }
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn eval_at(sym: &impl Symbol, theta: f64) -> Result<Complex64> {
    let z = sym.eval(unit(theta))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Numerical(format!("symbol is not finite at θ = {theta}")));
    }
    Ok(z)
}

/// Samples S(e^{iθ}) at θ_j = 2πj/N, j = 0..=N.
pub fn symbol_curve(sym: &impl Symbol, grid_size: usize) -> Result<CurveSamples> {
    if grid_size < 8 {
        return Err(Error::arg(format!("grid size {grid_size} is below the minimum of 8")));
    }
    let mut theta = Vec::with_capacity(grid_size + 1);
    let mut points = Vec::with_capacity(grid_size + 1);
    for j in 0..=grid_size {
        let th = 2.0 * PI * j as f64 / grid_size as f64;
        theta.push(th);
        points.push(eval_at(sym, th)?);
    }
    // the endpoints are the same point of the circle
    points[grid_size] = points[0];
    Ok(CurveSamples { theta, points })
}

/// Winding number of the symbol curve about λ, or `None` when λ is within
/// [`ON_CURVE_TOL`] of the curve.
pub fn winding_number(sym: &impl Symbol, lambda: Complex64) -> Result<Option<i64>> {
    let n = MIN_WINDING_GRID;
    let mut total = 0.0;
    let mut prev = eval_at(sym, 0.0)?;
    let start = prev;
    for j in 1..=n {
        let th1 = 2.0 * PI * j as f64 / n as f64;
        let th0 = 2.0 * PI * (j - 1) as f64 / n as f64;
        let next = if j == n { start } else { eval_at(sym, th1)? };
        match arg_increment(sym, lambda, th0, th1, prev, next, 0)? {
            Some(d) => total += d,
            None => return Ok(None),
        }
        prev = next;
    }
    Ok(Some((total / (2.0 * PI)).round() as i64))
}

/// Argument change of S − λ over [th0, th1], splitting until each step is
/// below π/4. `None` signals that λ is on the curve.
fn arg_increment(
    sym: &impl Symbol,
    lambda: Complex64,
    th0: f64,
    th1: f64,
    z0: Complex64,
    z1: Complex64,
    depth: u32,
) -> Result<Option<f64>> {
    if segment_distance(lambda, z0, z1) <= ON_CURVE_TOL {
        return Ok(None);
    }
    let d = ((z1 - lambda) / (z0 - lambda)).arg();
    if d.abs() < PI / 4.0 {
        return Ok(Some(d));
    }
    if depth >= MAX_SPLIT_DEPTH {
        return Err(Error::Numerical(format!(
            "winding refinement cap of {MAX_SPLIT_DEPTH} halvings exceeded near θ = {th0}"
        )));
    }
    let mid = 0.5 * (th0 + th1);
    let zm = eval_at(sym, mid)?;
    let Some(a) = arg_increment(sym, lambda, th0, mid, z0, zm, depth + 1)? else { return Ok(None) };
    let Some(b) = arg_increment(sym, lambda, mid, th1, zm, z1, depth + 1)? else { return Ok(None) };
    Ok(Some(a + b))
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let u = ((p - a) * ab.conj()).re / len2;
    (p - (a + ab * u.clamp(0.0, 1.0))).norm()
}

/// λ ∈ σ(T): λ on the symbol curve or with nonzero winding number about it.
pub fn winding_spectrum_member(sym: &impl Symbol, lambda: Complex64) -> Result<bool> {
    Ok(winding_number(sym, lambda)?.is_none_or(|w| w != 0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DayMembership {
    pub is_member: bool,
    /// |r_{p+1}| − |r_p| for the roots of F − λGH sorted by modulus.
    pub gap: f64,
    /// Root moduli in increasing order.
    pub moduli: Vec<f64>,
}

/// Day's criterion: λ is a limit of finite-section eigenvalues iff the p-th
/// and (p+1)-th smallest roots of F − λGH have equal modulus.
pub fn day_limit_member(sym: &RationalSymbol, lambda: Complex64, tol: f64) -> Result<DayMembership> {
    let p = sym.p();
    let r = sym.day_polynomial(lambda);
    if r.is_zero() {
        return Err(Error::arg("F − λGH vanishes identically"));
    }
    let r = r.trimmed(1e-14);
    if r.degree() < p + 1 {
        return Err(Error::DegenerateDegree { degree: r.degree(), required: p + 1 });
    }
    let mut moduli: Vec<f64> = r.roots()?.iter().map(|z| z.norm()).collect();
    moduli.sort_by(f64::total_cmp);
    // p ≥ 1 always holds for the symbols built here; p = 0 compares against 0
    let rp = if p == 0 { 0.0 } else { moduli[p - 1] };
    let rq = moduli[p];
    let gap = rq - rp;
    Ok(DayMembership { is_member: gap.abs() <= tol * rp.max(1.0), gap, moduli })
}

/// Mean of ln|r_{p+1}(λ)| − ln|r_p(λ)| over a set of points: zero exactly
/// on Day's limit set, so it measures how far section eigenvalues sit from it.
pub fn limit_gap_statistic(sym: &RationalSymbol, points: &[Complex64]) -> Result<f64> {
    let p = sym.p();
    let mut sum = 0.0;
    let mut count = 0usize;
    for &lambda in points {
        let d = match day_limit_member(sym, lambda, DAY_TOL) {
            Ok(d) => d,
            Err(Error::DegenerateDegree { .. }) => continue,
            Err(e) => return Err(e),
        };
        let rp = if p == 0 { 0.0 } else { d.moduli[p - 1] };
        let rq = d.moduli[p];
        if rp > 0.0 {
            sum += (rq / rp).ln();
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::arg("no point admits a finite gap"));
    }
    Ok(sum / count as f64)
}

/// One real-axis probe of Day's criterion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitProbe {
    pub lambda: f64,
    pub is_member: bool,
    pub gap: f64,
}

/// Day's criterion on `count` evenly spaced real points of (lo, hi).
pub fn probe_real_segment(sym: &RationalSymbol, lo: f64, hi: f64, count: usize, tol: f64) -> Result<Vec<LimitProbe>> {
    (1..=count)
        .map(|i| {
            let lambda = lo + (hi - lo) * i as f64 / (count + 1) as f64;
            let d = day_limit_member(sym, Complex64::new(lambda, 0.0), tol)?;
            Ok(LimitProbe { lambda, is_member: d.is_member, gap: d.gap })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiernackiStar {
    pub radius_max: f64,
    /// Number of rays, one per (p+q)-th root of unity.
    pub ray_roots_of_unity_count: usize,
}

impl BiernackiStar {
    /// Unit directions of the rays.
    pub fn directions(&self) -> Vec<Complex64> {
        let m = self.ray_roots_of_unity_count;
        (0..m).map(|j| unit(2.0 * PI * j as f64 / m as f64)).collect()
    }
}

/// Equal-modulus set {λ : |r_p| = |r_{p+1}|} of s^{−p} + s^q − λ.
pub fn biernacki_star(p: u64, q: u64) -> Result<BiernackiStar> {
    if p == 0 || q == 0 {
        return Err(Error::arg("p and q must be positive"));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::arg(format!("p = {p} and q = {q} are not coprime")));
    }
    let (pf, qf) = (p as f64, q as f64);
    let m = pf + qf;
    let radius_max = m * pf.powf(-pf / m) * qf.powf(-qf / m);
    Ok(BiernackiStar { radius_max, ray_roots_of_unity_count: (p + q) as usize })
}

/// The rational symbol of s^{−p} + s^q: F = 1 + s^{p+q}, G = s^p, H = 1.
pub fn biernacki_symbol(p: usize, q: usize) -> Result<RationalSymbol> {
    let one = Complex64::one();
    let f = &Poly::constant(one) + &Poly::monomial(one, p + q);
    RationalSymbol::new(f, Poly::monomial(one, p), Poly::constant(one))
}

/// What a finite-section sweep takes sections of.
#[derive(Clone, Debug, PartialEq)]
pub enum SectionSource {
    Band(ToeplitzBand),
    Counterexample { k: usize, t: BigRational },
}

impl SectionSource {
    pub fn section(&self, n: usize) -> Result<DenseMatrix> {
        match self {
            SectionSource::Band(b) => Ok(b.section(n)),
            SectionSource::Counterexample { k, t } => {
                let p = CounterexampleParams::new(n, *k, t.clone())?;
                let row: Vec<f64> = counterexample::build_counterexample(&p)
                    .first_row_exact()
                    .expect("built exactly")
                    .iter()
                    .map(exact::to_f64)
                    .collect();
                Ok(counterexample::ToeplitzHessenberg::from_f64(row)?.to_dense())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionSpectrum {
    pub order: usize,
    pub eigenvalues: Vec<Complex64>,
}

/// Eigenvalues of each order-n section, orders strictly ascending.
/// Counterexample sections go through the structured polishing of
/// [`counterexample::section_eigenvalues`].
pub fn finite_section_sweep(source: &SectionSource, orders: &[usize]) -> Result<Vec<SectionSpectrum>> {
    if orders.is_empty() || orders[0] == 0 || orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::arg("orders must be positive and strictly ascending"));
    }
    orders
        .iter()
        .map(|&n| {
            let eigenvalues = match source {
                SectionSource::Band(b) => spectral::eigenvalues(&b.section(n))?,
                SectionSource::Counterexample { k, t } => {
                    counterexample::section_eigenvalues(&CounterexampleParams::new(n, *k, t.clone())?)?
                }
            };
            Ok(SectionSpectrum { order: n, eigenvalues })
        })
        .collect()
}

/// CSV with header `order,re,im`, one row per eigenvalue.
pub fn sweep_to_csv(sweep: &[SectionSpectrum]) -> String {
    let mut out = String::from("order,re,im\n");
    for s in sweep {
        for z in &s.eigenvalues {
            let _ = writeln!(out, "{},{},{}", s.order, z.re, z.im);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Gohberg–Semencul

/// Largest |t_ij − t_{i+1,j+1}|; zero for an exact Toeplitz matrix.
fn toeplitz_defect(t: &DenseMatrix) -> f64 {
    let n = t.order();
    let mut worst = 0.0f64;
    for i in 1..n {
        for j in 1..n {
            worst = worst.max((t[(i, j)] - t[(i - 1, j - 1)]).norm());
        }
    }
    worst
}

fn check_toeplitz(t: &DenseMatrix) -> Result<()> {
    if toeplitz_defect(t) > 1e-12 * t.max_abs().max(1.0) {
        return Err(Error::arg("matrix is not Toeplitz"));
    }
    Ok(())
}

/// Solutions of Tx = e_1 and Ty = e_n. `y` is stored as (y_{−n+1}, …, y_0).
pub fn toeplitz_xy(t: &DenseMatrix) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = t.order();
    let lu = t.lu()?;
    let mut e = vec![Complex64::zero(); n];
    e[0] = Complex64::one();
    let x = lu.solve(&e);
    e[0] = Complex64::zero();
    e[n - 1] = Complex64::one();
    let y = lu.solve(&e);
    Ok((x, y))
}

/// T^{−1} = x_0^{−1} (L(x) U(y) − L₀(y) U₀(x)) with
/// L(x) lower triangular Toeplitz with first column x,
/// U(y) upper triangular Toeplitz with first row (y_0, y_{−1}, …, y_{−n+1}),
/// L₀ strictly lower with first column (0, y_{−n+1}, …, y_{−1}) and
/// U₀ strictly upper with first row (0, x_{n−1}, …, x_1).
pub fn gohberg_semencul_inverse(t: &DenseMatrix, x: &[Complex64], y: &[Complex64]) -> Result<DenseMatrix> {
    let n = t.order();
    if x.len() != n || y.len() != n {
        return Err(Error::arg(format!("x and y must have length {n}")));
    }
    check_toeplitz(t)?;
    let scale = |v: &[Complex64]| t.p_norm(PNorm::Inf) * v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tx = t.matvec(x);
    let ty = t.matvec(y);
    let rx = (0..n).map(|i| (tx[i] - if i == 0 { 1.0 } else { 0.0 }).norm()).fold(0.0, f64::max);
    let ry = (0..n).map(|i| (ty[i] - if i == n - 1 { 1.0 } else { 0.0 }).norm()).fold(0.0, f64::max);
    if rx > 1e-10 * scale(x).max(1.0) || ry > 1e-10 * scale(y).max(1.0) {
        return Err(Error::arg(format!("x, y do not solve Tx = e_1, Ty = e_n (residuals {rx:e}, {ry:e})")));
    }
    if x[0].norm() < 1e-12 {
        return Err(Error::Precondition(format!("x_0 = {} is too small for the formula", x[0])));
    }
    // y_l for l = −n+1..=0
    let yl = |l: i64| y[(l + n as i64 - 1) as usize];
    let mut out = vec![Complex64::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::zero();
            for l in 0..=i.min(j) {
                // L(x)[i][l] U(y)[l][j] = x_{i−l} y_{l−j}
                acc += x[i - l] * yl(l as i64 - j as i64);
            }
            for l in 0..n {
                // L₀[i][l] = y_{−n+i−l} (i > l), U₀[l][j] = x_{n−j+l} (j > l)
                if i > l && j > l {
                    acc -= yl(i as i64 - l as i64 - n as i64) * x[n - j + l];
                }
            }
            out[i * n + j] = acc / x[0];
        }
    }
    DenseMatrix::new(n, out)
}

/// Exact Gohberg–Semencul assembly for rational T, x, y.
pub fn gohberg_semencul_inverse_exact(t: &DenseMatrix, x: &[BigRational], y: &[BigRational]) -> Result<DenseMatrix> {
    let n = t.order();
    let q = t.exact_entries().ok_or_else(|| Error::arg("exact assembly needs a rational matrix"))?;
    if x.len() != n || y.len() != n {
        return Err(Error::arg(format!("x and y must have length {n}")));
    }
    for i in 1..n {
        for j in 1..n {
            if q[i * n + j] != q[(i - 1) * n + j - 1] {
                return Err(Error::arg("matrix is not Toeplitz"));
            }
        }
    }
    let residual_ok = |v: &[BigRational], target: usize| {
        (0..n).all(|i| {
            let s: BigRational = (0..n).map(|j| &q[i * n + j] * &v[j]).sum();
            s == if i == target { BigRational::one() } else { BigRational::zero() }
        })
    };
    if !residual_ok(x, 0) || !residual_ok(y, n - 1) {
        return Err(Error::arg("x, y do not solve Tx = e_1, Ty = e_n exactly"));
    }
    if x[0].is_zero() {
        return Err(Error::Precondition("x_0 = 0; the formula does not apply".into()));
    }
    let yl = |l: i64| &y[(l + n as i64 - 1) as usize];
    DenseMatrix::from_rational_fn(n, |i, j| {
        let mut acc = BigRational::zero();
        for l in 0..=i.min(j) {
            acc += &x[i - l] * yl(l as i64 - j as i64);
        }
        for l in 0..i.min(j) {
            acc -= yl(i as i64 - l as i64 - n as i64) * &x[n - j + l];
        }
        acc / &x[0]
    })
}

/// Closed-form solutions of A_{n,k,t} x = e_1 and A_{n,k,t} y = e_n.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleXy {
    /// x_0, …, x_{n−1}.
    pub x: Vec<BigRational>,
    /// y_{−n+1}, …, y_0.
    pub y: Vec<BigRational>,
}

impl CounterexampleXy {
    pub fn x_f64(&self) -> Vec<f64> {
        self.x.iter().map(exact::to_f64).collect()
    }

    pub fn y_f64(&self) -> Vec<f64> {
        self.y.iter().map(exact::to_f64).collect()
    }

    /// y_l for −n < l ≤ 0.
    pub fn y_at(&self, l: i64) -> &BigRational {
        &self.y[(l + self.y.len() as i64 - 1) as usize]
    }
}

/// With s = 1/t:
/// x_l = (−1)^l s^{l+1} for l ≤ n−k−2 and (−1)^l s^{n−k−1} after that;
/// y_0 = s, y_l = (−1)^{l+1}(1−s) for −k−1 ≤ l ≤ −1, zero below.
/// Both are checked exactly against A_{n,k,t} before returning.
pub fn counterexample_xy(p: &CounterexampleParams) -> Result<CounterexampleXy> {
    let (n, k) = (p.n, p.k);
    if n < k + 2 {
        return Err(Error::arg(format!("closed forms need n ≥ k+2 = {}", k + 2)));
    }
    let s = BigRational::one() / &p.t;
    let sign = |l: i64| if l.rem_euclid(2) == 0 { BigRational::one() } else { -BigRational::one() };
    let x: Vec<BigRational> = (0..n)
        .map(|l| {
            let e = if l + k + 2 <= n { l + 1 } else { n - k - 1 };
            sign(l as i64) * rpow(&s, e)
        })
        .collect();
    let y: Vec<BigRational> = (-(n as i64) + 1..=0)
        .map(|l| {
            if l == 0 {
                s.clone()
            } else if l >= -(k as i64) - 1 {
                sign(l + 1) * (BigRational::one() - &s)
            } else {
                BigRational::zero()
            }
        })
        .collect();

    let a = counterexample::build_counterexample(p).to_dense();
    let q = a.exact_entries().expect("built exactly");
    for (v, target, name) in [(&x, 0, "x"), (&y, n - 1, "y")] {
        for i in 0..n {
            let lhs: BigRational = (0..n).map(|j| &q[i * n + j] * &v[j]).sum();
            let want = if i == target { BigRational::one() } else { BigRational::zero() };
            if lhs != want {
                return Err(Error::InternalConsistency(format!(
                    "closed form for {name} fails row {} of A_{{{n},{k},{}}}: got {lhs}",
                    i + 1,
                    p.t
                )));
            }
        }
    }
    Ok(CounterexampleXy { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn trivial_curves() {
        let shift = symbol_curve(&ToeplitzBand::shift(), 64).unwrap();
        assert!(shift.points.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14));
        assert_eq!(shift.theta.len(), 65);
        assert_eq!(shift.points[0], shift.points[64]);
        let id = symbol_curve(&ToeplitzBand::identity(), 8).unwrap();
        assert!(id.points.iter().all(|&z| z == c(1.0)));
        assert!(symbol_curve(&ToeplitzBand::identity(), 7).is_err());
        assert!(shift.to_csv().starts_with("theta,re,im\n0,1,0\n"));
    }

    #[test]
    fn counterexample_curve_hits_negative_point() {
        let sym = RationalSymbol::counterexample(3, 0.2).unwrap();
        let curve = symbol_curve(&sym, 256).unwrap();
        let at_pi = curve.points[128];
        assert!((at_pi - c(-0.8 / 4.2)).norm() < 1e-12, "{at_pi}");
        assert!((at_pi.re + 0.19047619).abs() < 1e-8);
    }

    #[test]
    fn winding_for_shift_and_counterexample() {
        let shift = ToeplitzBand::shift();
        assert_eq!(winding_number(&shift, c(0.0)).unwrap(), Some(1));
        assert!(winding_spectrum_member(&shift, c(0.0)).unwrap());
        assert!(!winding_spectrum_member(&shift, c(2.0)).unwrap());
        assert!(winding_spectrum_member(&shift, c(1.0)).unwrap());
        for k in 1..=6 {
            for t in [0.2, 0.5] {
                let sym = RationalSymbol::counterexample(k, t).unwrap();
                let neg = -(1.0 - t) / (k as f64 + 2.0 - (k as f64 + 1.0) * t);
                assert!(winding_spectrum_member(&sym, c(neg)).unwrap());
            }
        }
        // a point just off the curve still needs a definite answer
        let sym = RationalSymbol::counterexample(3, 0.2).unwrap();
        assert!(winding_number(&sym, c(-0.8 / 4.2 - 1e-6)).unwrap().is_some());
    }

    #[test]
    fn hermitian_band_spectrum_is_an_interval() {
        let band = ToeplitzBand::from_diagonals(&[(-1, c(1.0)), (1, c(1.0))]).unwrap();
        for x in [-1.9, -0.5, 0.0, 1.3] {
            assert!(winding_spectrum_member(&band, c(x)).unwrap());
        }
        for z in [c(2.5), c(-3.0), Complex64::new(0.0, 0.5)] {
            assert!(!winding_spectrum_member(&band, z).unwrap());
        }
    }

    #[test]
    fn day_membership_for_hermitian_band() {
        let sym = RationalSymbol::new(
            Poly::from_real(&[1.0, 0.0, 1.0]),
            Poly::from_real(&[0.0, 1.0]),
            Poly::from_real(&[1.0]),
        )
        .unwrap();
        assert!(day_limit_member(&sym, c(0.0), DAY_TOL).unwrap().is_member);
        assert!(day_limit_member(&sym, c(-1.5), DAY_TOL).unwrap().is_member);
        let out = day_limit_member(&sym, c(3.0), DAY_TOL).unwrap();
        assert!(!out.is_member && out.gap > 1.0);
        // s² − λs + 1 at λ = 2.5 has roots 1/2 and 2
        assert!((out.gap - 0.0).abs() > 0.0);
        let d = day_limit_member(&sym, c(2.5), DAY_TOL).unwrap();
        assert!((d.moduli[0] - 0.5).abs() < 1e-12 && (d.moduli[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn negative_point_is_not_a_limit_point() {
        for k in 1..=10 {
            for t in [0.1, 0.5, 0.9] {
                let sym = RationalSymbol::counterexample(k, t).unwrap();
                let neg = -(1.0 - t) / (k as f64 + 2.0 - (k as f64 + 1.0) * t);
                let d = day_limit_member(&sym, c(neg), DAY_TOL).unwrap();
                assert!(!d.is_member && d.gap > 1e-3, "k={k} t={t} gap={}", d.gap);
                assert!((d.moduli[0] - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn t_zero_negative_axis_has_a_strictly_smallest_root() {
        // (−s)^{−1} + (−s)^{k+2} = μ with μ ≥ 2 lies beyond the star radius,
        // so the smallest root of R stays simple and real
        let sym = RationalSymbol::counterexample(3, 0.0).unwrap();
        for lambda in [-0.9, -0.5, -0.1] {
            let d = day_limit_member(&sym, c(lambda), DAY_TOL).unwrap();
            assert!(!d.is_member && d.gap > 0.3, "λ={lambda} gap={}", d.gap);
            assert!((d.moduli[1] - d.moduli[2]).abs() < 1e-8);
        }
        let probes = probe_real_segment(&sym, -1.0, 0.0, 50, DAY_TOL).unwrap();
        assert!(probes.iter().all(|p| !p.is_member));
    }

    #[test]
    fn degenerate_degree_is_reported() {
        // F = 1 + s², G = s, H = 1 − s/2: the s² coefficient of R is 1 + λ/2
        let sym = RationalSymbol::new(
            Poly::from_real(&[1.0, 0.0, 1.0]),
            Poly::from_real(&[0.0, 1.0]),
            Poly::from_real(&[1.0, -0.5]),
        )
        .unwrap();
        assert!(matches!(
            day_limit_member(&sym, c(-2.0), DAY_TOL),
            Err(Error::DegenerateDegree { degree: 1, required: 2 })
        ));
    }

    #[test]
    fn rational_symbol_validation() {
        // G root outside H root
        assert!(RationalSymbol::new(Poly::from_real(&[1.0]), Poly::from_real(&[-3.0, 1.0]), Poly::from_real(&[-2.0, 1.0])).is_err());
        // F shares the root of G
        assert!(RationalSymbol::new(Poly::from_real(&[0.0, 1.0]), Poly::from_real(&[0.0, 1.0]), Poly::from_real(&[1.0])).is_err());
    }

    #[test]
    fn biernacki_radii_and_membership() {
        let s = biernacki_star(1, 1).unwrap();
        assert!((s.radius_max - 2.0).abs() < 1e-15);
        assert_eq!(s.ray_roots_of_unity_count, 2);
        let s = biernacki_star(1, 2).unwrap();
        assert!((s.radius_max - 3.0 * 2f64.powf(-2.0 / 3.0)).abs() < 1e-15);
        assert!((s.radius_max - 1.8899).abs() < 1e-4);
        // s³ − λs + 1 has a double root at 4λ³ = 27
        assert!((s.radius_max - (27.0f64 / 4.0).cbrt()).abs() < 1e-14);
        for k in 0..10u64 {
            let r = biernacki_star(1, k + 2).unwrap().radius_max;
            let kf = k as f64;
            let want = (kf + 3.0) * (kf + 2.0).powf(-(kf + 2.0) / (kf + 3.0));
            assert!((r - want).abs() < 1e-12 && r < 2.0);
        }
        assert!(biernacki_star(2, 4).is_err());

        // points on a ray inside the radius are limit points; beyond it they are not
        let star = biernacki_star(1, 2).unwrap();
        let sym = biernacki_symbol(1, 2).unwrap();
        for dir in star.directions() {
            assert!(day_limit_member(&sym, dir * 0.7 * star.radius_max, DAY_TOL).unwrap().is_member);
            assert!(!day_limit_member(&sym, dir * 1.2 * star.radius_max, DAY_TOL).unwrap().is_member);
        }
        assert!(!day_limit_member(&sym, Complex64::from_polar(1.0, PI / 3.0), DAY_TOL).unwrap().is_member);
    }

    #[test]
    fn sweep_of_identity_band() {
        let sweep = finite_section_sweep(&SectionSource::Band(ToeplitzBand::identity()), &[3, 5]).unwrap();
        assert!(sweep.iter().flat_map(|s| &s.eigenvalues).all(|&z| z == c(1.0)));
        let csv = sweep_to_csv(&sweep);
        assert!(csv.starts_with("order,re,im\n3,1,0\n"));
        assert_eq!(csv.lines().count(), 9);
        assert!(finite_section_sweep(&SectionSource::Band(ToeplitzBand::identity()), &[5, 3]).is_err());
    }

    #[test]
    fn gohberg_semencul_identity_and_random() {
        let id = DenseMatrix::identity(4);
        let (x, y) = toeplitz_xy(&id).unwrap();
        assert_eq!(gohberg_semencul_inverse(&id, &x, &y).unwrap().max_abs_diff(&id), 0.0);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let diags: Vec<(i64, Complex64)> = (-7..=7).map(|j| (j, c(rng.gen_range(-1.0..1.0)))).collect();
            let mut band = ToeplitzBand::from_diagonals(&diags).unwrap();
            band.coeffs[7] += 4.0;
            let t = band.section(8);
            let (x, y) = toeplitz_xy(&t).unwrap();
            let gs = gohberg_semencul_inverse(&t, &x, &y).unwrap();
            let direct = t.inverse().unwrap();
            assert!(gs.max_abs_diff(&direct) < 1e-9 * direct.max_abs());
        }
    }

    #[test]
    fn gohberg_semencul_rejects_bad_input() {
        let id = DenseMatrix::identity(3);
        let e1 = vec![c(1.0), c(0.0), c(0.0)];
        assert!(matches!(gohberg_semencul_inverse(&id, &e1, &e1), Err(Error::Argument(_))));
        let notoep = DenseMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!(gohberg_semencul_inverse(&notoep, &[c(1.0); 2], &[c(1.0); 2]).is_err());
        // x_0 = 0: T = [[0,1],[1,0]]
        let swap = DenseMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (x, y) = toeplitz_xy(&swap).unwrap();
        assert!(matches!(gohberg_semencul_inverse(&swap, &x, &y), Err(Error::Precondition(_))));
    }

    #[test]
    fn counterexample_xy_small_case() {
        // n = k+2 = 3, t = 1/2, s = 2
        let p = CounterexampleParams::parse(3, 1, "1/2").unwrap();
        let xy = counterexample_xy(&p).unwrap();
        assert_eq!(xy.x_f64(), vec![2.0, -2.0, 2.0]);
        assert_eq!(xy.y_f64(), vec![1.0, -1.0, 2.0]);
        assert!(counterexample_xy(&CounterexampleParams::parse(2, 1, "1/2").unwrap()).is_err());
    }

    #[test]
    fn counterexample_xy_structure() {
        for k in 1..=6 {
            for t in ["1/4", "1/2"] {
                for n in k + 2..=3 * k + 4 {
                    let p = CounterexampleParams::parse(n, k, t).unwrap();
                    let xy = counterexample_xy(&p).unwrap();
                    let nz = xy.y.iter().filter(|v| !v.is_zero()).count();
                    assert_eq!(nz, k + 2);
                    assert!(xy.y.iter().rev().take(k + 2).all(|v| !v.is_zero()));
                    // |x_l y_{−m}| ≥ |x_{n−m} y_{l−n}| for m ≥ 1, n−m > l
                    for m in 1..n {
                        for l in 0..n - m {
                            let lhs = (&xy.x[l] * xy.y_at(-(m as i64))).abs();
                            let rhs = if l as i64 - n as i64 > -(n as i64) {
                                (&xy.x[n - m] * xy.y_at(l as i64 - n as i64)).abs()
                            } else {
                                BigRational::zero()
                            };
                            assert!(lhs >= rhs, "n={n} k={k} t={t} l={l} m={m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gohberg_semencul_exact_gives_checkerboard_inverse() {
        for k in 1..=4 {
            for n in k + 2..=2 * k + 2 {
                let p = CounterexampleParams::new(n, k, parse_rational("1/2").unwrap()).unwrap();
                let xy = counterexample_xy(&p).unwrap();
                let a = counterexample::build_counterexample(&p).to_dense();
                let inv = gohberg_semencul_inverse_exact(&a, &xy.x, &xy.y).unwrap();
                let prod = a.matmul(&inv).unwrap();
                assert_eq!(prod.exact_entries().unwrap(), DenseMatrix::identity(n).exact_entries().unwrap());
                assert!(crate::predicates::is_checkerboard(&inv, 0.0).holds);
            }
        }
    }
}
