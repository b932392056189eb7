//! Bounded-invertibility experiments: shifted Hilbert and companion families,
//! the ultrametric inverse structure, the symbol-product family, Demko
//! decay, and the eigenvector bounds for oscillatory and TN matrices.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Lu, PNorm};
use crate::predicates::{self, ClassReport, Dominance, Witness};
use crate::spectral;
use crate::IndexSet;

/// Grid used for extrema of symbols on the unit circle.
pub const SYMBOL_GRID: usize = 1024;

/// Entries of a computed inverse below this fraction of its largest entry
/// are treated as zero by the sign-based checks.
pub const INVERSE_ZERO_REL: f64 = 1e-12;

/// Paper-side cap on the row sums of the symbol-product sections.
pub const SYMBOL_PRODUCT_ROW_SUM_CAP: f64 = 18.0;

/// H_n(i,j) = 1/(i+j−1), exact.
pub fn hilbert_matrix(n: usize) -> Result<DenseMatrix> {
    DenseMatrix::from_rational_fn(n, |i, j| BigRational::new(BigInt::from(1), BigInt::from(i + j + 1)))
}

/// C_n(i,j) = 1/max(i,j), exact.
pub fn companion_matrix(n: usize) -> Result<DenseMatrix> {
    DenseMatrix::from_rational_fn(n, |i, j| BigRational::new(BigInt::from(1), BigInt::from(i.max(j) + 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftBase {
    Hilbert,
    Companion,
}

impl ShiftBase {
    fn entry(self, i: usize, j: usize) -> f64 {
        match self {
            ShiftBase::Hilbert => 1.0 / (i + j + 1) as f64,
            ShiftBase::Companion => 1.0 / (i.max(j) + 1) as f64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftBase::Hilbert => "hilbert",
            ShiftBase::Companion => "companion",
        }
    }
}

impl std::str::FromStr for ShiftBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hilbert" => Ok(ShiftBase::Hilbert),
            "companion" => Ok(ShiftBase::Companion),
            other => Err(Error::arg(format!("unknown family {other:?}; use hilbert or companion"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub n: usize,
    pub norm_inf: f64,
    pub inv_norm_inf: f64,
    pub min_sigma: f64,
    pub max_sigma: f64,
}

/// Norm and spectrum measurements of a matrix family along increasing orders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCurve {
    pub family: String,
    pub points: Vec<FamilyPoint>,
}

impl FamilyCurve {
    pub fn new(family: impl Into<String>, points: Vec<FamilyPoint>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].n >= w[1].n) {
            return Err(Error::arg("family orders must be strictly increasing"));
        }
        if let Some(p) = points
            .iter()
            .find(|p| ![p.norm_inf, p.inv_norm_inf, p.min_sigma, p.max_sigma].iter().all(|x| x.is_finite()))
        {
            return Err(Error::Numerical(format!("non-finite measurement at n = {}", p.n)));
        }
        Ok(FamilyCurve { family: family.into(), points })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,norm_inf,inv_norm_inf,min_sigma,max_sigma\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{:e},{:e},{:e},{:e}", p.n, p.norm_inf, p.inv_norm_inf, p.min_sigma, p.max_sigma);
        }
        out
    }
}

fn check_orders(orders: &[usize]) -> Result<()> {
    if orders.is_empty() || orders[0] == 0 {
        return Err(Error::arg("orders must be nonempty and positive"));
    }
    if orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::arg("orders must be strictly increasing"));
    }
    Ok(())
}

/// A_n = (αI + base_n)^{−1} along `orders`. The inverse-norm column holds
/// ‖αI + base_n‖∞ and σ is the spectrum of A_n.
pub fn shifted_inverse_family(base: ShiftBase, alpha: f64, orders: &[usize]) -> Result<FamilyCurve> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("shift must be positive, got {alpha}")));
    }
    check_orders(orders)?;
    let mut points = Vec::with_capacity(orders.len());
    for &n in orders {
        let m = DenseMatrix::from_fn(n, |i, j| base.entry(i, j) + if i == j { alpha } else { 0.0 });
        let a = m.inverse()?;
        let ev = spectral::hermitian_eigenvalues(&m)?;
        points.push(FamilyPoint {
            n,
            norm_inf: a.p_norm(PNorm::Inf),
            inv_norm_inf: m.p_norm(PNorm::Inf),
            min_sigma: 1.0 / ev[n - 1],
            max_sigma: 1.0 / ev[0],
        });
    }
    FamilyCurve::new(format!("{}+{alpha}I", base.name()), points)
}

/// Zeroes entries below `INVERSE_ZERO_REL` of the largest, so rounding
/// residue in structurally zero positions does not flip sign tests.
fn cleaned(a: &DenseMatrix) -> DenseMatrix {
    let cut = INVERSE_ZERO_REL * a.max_abs();
    let n = a.order();
    DenseMatrix::from_fn(n, |i, j| {
        let x = a[(i, j)].re;
        if x.abs() <= cut {
            0.0
        } else {
            x
        }
    })
}

/// For strictly ultrametric A: A^{−1} is symmetric, strictly row diagonally
/// dominant and an M-matrix. The report names the first failing part.
pub fn mms_inverse_check(a: &DenseMatrix) -> Result<ClassReport> {
    let um = predicates::is_strictly_ultrametric(a)?;
    if !um.holds {
        return Err(Error::arg(format!("input is not strictly ultrametric: {}", um.describe())));
    }
    let inv = cleaned(&a.inverse()?);
    let n = inv.order();
    let tol = 1e-10 * inv.max_abs();
    for i in 0..n {
        for j in i + 1..n {
            let d = (inv[(i, j)] - inv[(j, i)]).norm();
            if d > tol {
                let w = Witness::new(IndexSet::from_zero_based(&[i]), IndexSet::from_zero_based(&[j]), vec![d]);
                return Ok(ClassReport::fails("MMS_inverse", tol, w).with_detail("inverse is not symmetric"));
            }
        }
    }
    let dd = predicates::is_diagonally_dominant(&inv, Dominance::Row, true)?;
    if !dd.holds {
        return Ok(dd.renamed("MMS_inverse").with_detail("inverse is not strictly row diagonally dominant"));
    }
    let m = predicates::is_m_matrix(&inv)?;
    if !m.holds {
        return Ok(m.renamed("MMS_inverse").with_detail("inverse is not an M-matrix"));
    }
    let mut rep = ClassReport::holds("MMS_inverse", tol);
    rep.margin = dd.margin;
    Ok(rep)
}

/// Hermitian band A_k = T Tᵀ* built from the upper triangular Toeplitz T
/// with symbol 1 + s + c s^k, measured on finite sections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolProductReport {
    pub c: Complex64,
    pub k: usize,
    /// Offsets j − i of the nonzero diagonals.
    pub diagonals: Vec<i64>,
    /// min and max of |1 + s + c s^k|² on the unit-circle grid.
    pub grid_min: f64,
    pub grid_max: f64,
    /// (|c| − 2)², the lower bound for the grid minimum.
    pub gap_lower_bound: f64,
    /// Largest absolute row sum of the infinite band, the sup of ‖A_{n,k}‖∞.
    pub row_sum_sup: f64,
    pub row_sum_cap: f64,
    pub row_sum_cap_holds: bool,
    /// Leading (k−1)×(k−1) block of the formal inverse (T*)^{−1} T^{−1}.
    pub inverse_block: Vec<Vec<Complex64>>,
    pub inverse_block_one_norm: f64,
    /// k(k−1)/2.
    pub inverse_block_expected: f64,
    pub curve: FamilyCurve,
}

pub fn symbol_product_experiment(c: Complex64, k: usize, orders: &[usize]) -> Result<SymbolProductReport> {
    if !(c.norm() > 2.0) || !c.norm().is_finite() {
        return Err(Error::arg(format!("|c| must exceed 2 for a spectral gap, got {}", c.norm())));
    }
    if k < 3 {
        return Err(Error::arg(format!("k must be at least 3, got {k}")));
    }
    check_orders(orders)?;
    let mut b = vec![Complex64::new(0.0, 0.0); k + 1];
    b[0] = Complex64::new(1.0, 0.0);
    b[1] = Complex64::new(1.0, 0.0);
    b[k] = c;

    // a(d) = Σ_m b_m conj(b_{m−d}) is entry (i, i+d)
    let ki = k as i64;
    let band = |d: i64| -> Complex64 {
        (0..=ki)
            .filter(|&m| (0..=ki).contains(&(m - d)))
            .map(|m| b[m as usize] * b[(m - d) as usize].conj())
            .sum()
    };
    let diagonals: Vec<i64> = (-ki..=ki).filter(|&d| band(d).norm() > 0.0).collect();
    let row_sum_sup: f64 = diagonals.iter().map(|&d| band(d).norm()).sum();

    let (mut grid_min, mut grid_max) = (f64::INFINITY, 0.0f64);
    for g in 0..SYMBOL_GRID {
        let s = Complex64::from_polar(1.0, 2.0 * PI * g as f64 / SYMBOL_GRID as f64);
        let v = (b[0] + b[1] * s + c * s.powu(k as u32)).norm_sqr();
        grid_min = grid_min.min(v);
        grid_max = grid_max.max(v);
    }

    // T^{−1} has symbol 1/(1 + s + c s^k); the block only needs u_0..u_{k−2}
    let mut u = vec![Complex64::new(0.0, 0.0); k - 1];
    for j in 0..k - 1 {
        u[j] = if j == 0 { Complex64::new(1.0, 0.0) } else { -u[j - 1] };
    }
    let m = k - 1;
    let inverse_block: Vec<Vec<Complex64>> = (0..m)
        .map(|i| (0..m).map(|j| (0..=i.min(j)).map(|l| u[i - l].conj() * u[j - l]).sum()).collect())
        .collect();
    let inverse_block_one_norm = (0..m).map(|j| (0..m).map(|i| inverse_block[i][j].norm()).sum::<f64>()).fold(0.0, f64::max);

    let mut points = Vec::with_capacity(orders.len());
    for &n in orders {
        let a = DenseMatrix::from_complex_fn(n, |i, j| {
            let d = j as i64 - i as i64;
            if d.abs() <= ki {
                band(d)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let ev = spectral::hermitian_eigenvalues(&a)?;
        points.push(FamilyPoint {
            n,
            norm_inf: a.p_norm(PNorm::Inf),
            inv_norm_inf: a.inverse()?.p_norm(PNorm::Inf),
            min_sigma: ev[0],
            max_sigma: ev[n - 1],
        });
    }
    Ok(SymbolProductReport {
        c,
        k,
        diagonals,
        grid_min,
        grid_max,
        gap_lower_bound: (c.norm() - 2.0).powi(2),
        row_sum_sup,
        row_sum_cap: SYMBOL_PRODUCT_ROW_SUM_CAP,
        row_sum_cap_holds: row_sum_sup <= SYMBOL_PRODUCT_ROW_SUM_CAP,
        inverse_block,
        inverse_block_one_norm,
        inverse_block_expected: (k * (k - 1)) as f64 / 2.0,
        curve: FamilyCurve::new(format!("symbol_product_k{k}"), points)?,
    })
}

/// |α(i,j)| ≤ K r^{|i−j|} for the entries of A^{−1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub k: f64,
    pub r: f64,
    /// max over fitted entries of |α(i,j)| − K r^{|i−j|}; ≤ 0 when certified.
    pub max_residual: f64,
    pub holds: bool,
    pub fitted_entries: usize,
}

/// Entries of A^{−1} above this magnitude enter the decay fit.
pub const DECAY_FLOOR: f64 = 1e-14;

/// Fits log|α(i,j)| against |i−j| by least squares, then takes the smallest
/// K that makes K r^{|i−j|} dominate every fitted entry.
pub fn demko_decay_check(a: &DenseMatrix, w: usize) -> Result<DecayFit> {
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > w && a[(i, j)].norm() > 0.0 {
                return Err(Error::arg(format!("entry ({}, {}) lies outside band width {w}", i + 1, j + 1)));
            }
        }
    }
    let inv = a.inverse()?;
    let data: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i.abs_diff(j) as f64, inv[(i, j)].norm()))
        .filter(|&(_, v)| v > DECAY_FLOOR)
        .collect();
    let spread = data.iter().any(|&(d, _)| d > 0.0);
    let r = if spread {
        let m = data.len() as f64;
        let sx: f64 = data.iter().map(|p| p.0).sum();
        let sy: f64 = data.iter().map(|p| p.1.ln()).sum();
        let sxx: f64 = data.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = data.iter().map(|p| p.0 * p.1.ln()).sum();
        ((m * sxy - sx * sy) / (m * sxx - sx * sx)).exp()
    } else {
        // only the diagonal survives; any rate works
        0.5
    };
    let k = data.iter().map(|&(d, v)| v / r.powf(d)).fold(0.0, f64::max);
    let max_residual = data.iter().map(|&(d, v)| v - k * r.powf(d)).fold(f64::NEG_INFINITY, f64::max);
    Ok(DecayFit {
        k,
        r,
        max_residual,
        holds: r.is_finite() && r > 0.0 && r < 1.0 && k.is_finite(),
        fitted_entries: data.len(),
    })
}

/// How a structural hypothesis was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Run the predicate (exhaustive, so order ≤ 16).
    Verify,
    /// Known from the construction and not rechecked.
    Assume,
}

fn hypothesis(report: Result<ClassReport>, what: &str) -> Result<()> {
    match report {
        Ok(r) if r.holds => Ok(()),
        Ok(r) => Err(Error::arg(format!("matrix is not {what}: {}", r.describe()))),
        Err(Error::Precondition(msg)) => Err(Error::arg(format!("matrix is not {what}: {msg}"))),
        Err(e) => Err(e),
    }
}

/// Smallest eigenvalue of a real symmetric matrix and its eigenvector,
/// the latter by shifted inverse iteration from the alternating start
/// vector. The vector has unit max-norm and a positive first entry.
pub fn min_eigenpair(a: &DenseMatrix) -> Result<(f64, Vec<f64>)> {
    if !a.is_real() {
        return Err(Error::arg("inverse iteration expects a real symmetric matrix"));
    }
    let n = a.order();
    let lam = spectral::hermitian_eigenvalues(a)?[0];
    let norm = a.p_norm(PNorm::Inf);
    let shift = lam - 1e-10 * norm;
    let lu = Lu::factor(&a.shifted(-shift), 0.0)?;
    let mut x: Vec<Complex64> = (0..n).map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
    for _ in 0..200 {
        x = lu.solve(&x);
        let top = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        x.iter_mut().for_each(|z| *z /= top);
        let ax = a.matvec(&x);
        let rho = x.iter().zip(&ax).map(|(p, q)| p.re * q.re).sum::<f64>() / x.iter().map(|z| z.re * z.re).sum::<f64>();
        let res = ax.iter().zip(&x).map(|(p, q)| (p - q * rho).norm()).fold(0.0, f64::max);
        if res <= 1e-12 * norm {
            let sign = if x[0].re < 0.0 { -1.0 } else { 1.0 };
            return Ok((rho, x.iter().map(|z| sign * z.re).collect()));
        }
    }
    Err(Error::Numerical(format!("inverse iteration for the smallest eigenvalue stalled at order {n}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatoryBound {
    pub lambda_min: f64,
    /// ‖A‖∞ / λ_min².
    pub bound: f64,
    /// ‖A^{−1}‖∞.
    pub actual: f64,
    pub holds: bool,
    /// ‖v‖∞ / (λ_min min|v_i|) for the λ_min eigenvector v, when v alternates.
    pub eigenvector_bound: Option<f64>,
    pub evidence: Evidence,
}

/// ‖A^{−1}‖∞ ≤ ‖A‖∞ / λ_min² for oscillatory Hermitian A.
pub fn oscillatory_inverse_bound(a: &DenseMatrix, evidence: Evidence) -> Result<OscillatoryBound> {
    if !a.is_hermitian(1e-12 * a.max_abs().max(f64::MIN_POSITIVE)) {
        return Err(Error::arg("matrix is not Hermitian"));
    }
    if evidence == Evidence::Verify {
        hypothesis(predicates::is_oscillatory(a), "oscillatory")?;
    }
    let (lam, v) = min_eigenpair(a)?;
    if lam <= 0.0 {
        return Err(Error::arg(format!("smallest eigenvalue {lam:e} is not positive")));
    }
    let bound = a.p_norm(PNorm::Inf) / (lam * lam);
    let actual = a.inverse()?.p_norm(PNorm::Inf);
    let eigenvector_bound = alternating(&v).then(|| {
        let top = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let low = v.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
        top / (lam * low)
    });
    Ok(OscillatoryBound {
        lambda_min: lam,
        bound,
        actual,
        holds: actual <= bound * (1.0 + 1e-9),
        eigenvector_bound,
        evidence,
    })
}

fn alternating(v: &[f64]) -> bool {
    v.iter().enumerate().all(|(i, &x)| if i % 2 == 0 { x > 0.0 } else { x < 0.0 })
}

/// Largest order at which the lemma bound is compared with a direct inverse.
pub const LEMMA_DIRECT_LIMIT: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaBound {
    /// ‖x‖∞ / min_i |y(i)|.
    pub bound: f64,
    /// ‖A^{−1}‖∞ when the order allows a direct inverse.
    pub inverse_norm: Option<f64>,
    pub holds: Option<bool>,
}

/// For nonsingular TN A with Ax = y and x, y both strictly alternating in
/// sign starting positive: ‖A^{−1}‖∞ ≤ ‖x‖∞ / min|y(i)|.
pub fn deboor_lemma_bound(a: &DenseMatrix, x: &[f64], y: &[f64], evidence: Evidence) -> Result<LemmaBound> {
    let n = a.order();
    if x.len() != n || y.len() != n {
        return Err(Error::arg("x and y must match the matrix order"));
    }
    if !a.is_real() {
        return Err(Error::arg("the lemma applies to real matrices"));
    }
    for i in 0..n {
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        if !(s * x[i] > 0.0 && s * y[i] > 0.0) {
            return Err(Error::arg(format!("sign pattern (−1)^(i−1) fails at index {}", i + 1)));
        }
    }
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let ax = a.matvec(&xc);
    let res = ax.iter().zip(y).map(|(p, &q)| (p.re - q).abs()).fold(0.0, f64::max);
    let xn = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let yn = y.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if res > 1e-10 * (a.p_norm(PNorm::Inf) * xn + yn) {
        return Err(Error::arg(format!("A x differs from y by {res:e}")));
    }
    if evidence == Evidence::Verify {
        hypothesis(predicates::is_totally_nonnegative(a), "totally nonnegative")?;
    }
    let lu = a.lu().map_err(|e| Error::arg(format!("matrix is not nonsingular: {e}")))?;
    let bound = xn / y.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let inverse_norm = (n <= LEMMA_DIRECT_LIMIT).then(|| {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        let mut rows = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            for (r, z) in rows.iter_mut().zip(lu.solve(&e)) {
                *r += z.norm();
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    });
    Ok(LemmaBound { bound, inverse_norm, holds: inverse_norm.map(|v| v <= bound * (1.0 + 1e-9)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use approx::assert_abs_diff_eq;

    fn harmonic(n: usize) -> f64 {
        (1..=n).map(|j| 1.0 / j as f64).sum()
    }

    #[test]
    fn hilbert_and_companion_entries() {
        let h = hilbert_matrix(2).unwrap();
        assert_eq!(h.exact_entries().unwrap(), ["1", "1/2", "1/2", "1/3"].map(|s| parse_rational(s).unwrap()));
        let c = companion_matrix(3).unwrap();
        assert_eq!(&c.exact_entries().unwrap()[6..], ["1/3", "1/3", "1/3"].map(|s| parse_rational(s).unwrap()));
        assert_abs_diff_eq!(c.p_norm(PNorm::Inf), 11.0 / 6.0, epsilon = 1e-15);
        assert!(hilbert_matrix(0).is_err());
    }

    #[test]
    fn companion_minus_hilbert_stays_below_two() {
        for n in [1, 2, 10, 100, 500] {
            let d = DenseMatrix::from_fn(n, |i, j| ShiftBase::Companion.entry(i, j) - ShiftBase::Hilbert.entry(i, j));
            assert!(d.p_norm(PNorm::Inf) <= 2.0);
        }
    }

    #[test]
    fn companion_family_signature() {
        let f = shifted_inverse_family(ShiftBase::Companion, 1.0, &[1, 5, 100, 200]).unwrap();
        for p in &f.points {
            assert_abs_diff_eq!(p.inv_norm_inf, 1.0 + harmonic(p.n), epsilon = 1e-12);
            assert!(p.norm_inf <= 2.0);
            assert!(p.min_sigma >= 1.0 / 5.0 - 1e-12 && p.max_sigma <= 1.0 + 1e-12);
        }
        let growth = f.points[3].inv_norm_inf - f.points[2].inv_norm_inf;
        assert!((growth - 2f64.ln()).abs() < 0.05);
        assert!(f.to_csv().starts_with("n,norm_inf,inv_norm_inf,min_sigma,max_sigma\n1,"));
    }

    #[test]
    fn family_guards() {
        assert!(shifted_inverse_family(ShiftBase::Hilbert, 0.0, &[3]).is_err());
        assert!(shifted_inverse_family(ShiftBase::Hilbert, 1.0, &[3, 3]).is_err());
        assert!("toeplitz".parse::<ShiftBase>().is_err());
    }

    #[test]
    fn hilbert_shift_inverse_bound() {
        let f = shifted_inverse_family(ShiftBase::Hilbert, 5.0, &[10, 50, 200]).unwrap();
        assert!(f.points.iter().all(|p| p.norm_inf <= 2.0 / (5.0 - 4.0)));
    }

    #[test]
    fn mms_examples() {
        let c5 = companion_matrix(5).unwrap().shifted(0.5);
        assert!(mms_inverse_check(&c5).unwrap().holds);
        let d = DenseMatrix::diag(&[1.0, 2.0, 3.0]);
        assert!(mms_inverse_check(&d).unwrap().holds);
        let c50 = companion_matrix(50).unwrap().shifted(0.1);
        assert!(mms_inverse_check(&c50).unwrap().holds);
        // C_3 alone has a(1,1) = 1 > 1/2 but a(3,3) = 1/3 equals its off-diagonals
        let err = mms_inverse_check(&companion_matrix(3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Argument(m) if m.contains("strictly_ultrametric")));
    }

    #[test]
    fn symbol_product_signature() {
        let r = symbol_product_experiment(Complex64::new(3.0, 0.0), 5, &[20, 40]).unwrap();
        assert!(r.grid_min >= 1.0);
        assert_eq!(r.diagonals, vec![-5, -4, -1, 0, 1, 4, 5]);
        // 2 + |c|² on the diagonal, then 1, c, c on each side
        assert_abs_diff_eq!(r.row_sum_sup, 25.0, epsilon = 1e-12);
        assert!(!r.row_sum_cap_holds);
        for (i, row) in r.inverse_block.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = if (i + j) % 2 == 0 { 1.0 } else { -1.0 } * (i.min(j) + 1) as f64;
                assert_abs_diff_eq!(z.re, want, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(r.inverse_block_one_norm, 10.0, epsilon = 1e-12);
        for p in &r.curve.points {
            assert!(p.min_sigma >= r.grid_min - 1e-9 && p.max_sigma <= r.grid_max + 1e-9);
            assert_abs_diff_eq!(p.norm_inf, 25.0, epsilon = 1e-12);
        }
        assert!(symbol_product_experiment(Complex64::new(2.0, 0.0), 5, &[10]).is_err());
        assert!(symbol_product_experiment(Complex64::new(3.0, 0.0), 2, &[10]).is_err());
    }

    #[test]
    fn demko_tridiagonal_rate() {
        let a = DenseMatrix::from_fn(40, |i, j| match i.abs_diff(j) {
            0 => 3.0,
            1 => -1.0,
            _ => 0.0,
        });
        let fit = demko_decay_check(&a, 1).unwrap();
        let oracle = (3.0 - 5f64.sqrt()) / 2.0;
        assert!(fit.holds);
        assert!((fit.r - oracle).abs() < 0.02, "r = {}", fit.r);
        assert!(fit.max_residual <= 1e-15);
        let id = demko_decay_check(&DenseMatrix::identity(6), 0).unwrap();
        assert_eq!((id.k, id.r, id.fitted_entries), (1.0, 0.5, 6));
        let dense = companion_matrix(6).unwrap().shifted(1.0);
        assert!(matches!(demko_decay_check(&dense, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn oscillatory_bound_examples() {
        let a = DenseMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = oscillatory_inverse_bound(&a, Evidence::Verify).unwrap();
        assert_abs_diff_eq!(b.bound, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.actual, 1.0, epsilon = 1e-12);
        assert!(b.holds);
        assert_abs_diff_eq!(b.eigenvector_bound.unwrap(), 1.0, epsilon = 1e-12);
        let tri = DenseMatrix::from_fn(5, |i, j| match i.abs_diff(j) {
            0 => 3.0,
            1 => -1.0,
            _ => 0.0,
        });
        let err = oscillatory_inverse_bound(&tri, Evidence::Verify).unwrap_err();
        assert!(matches!(err, Error::Argument(m) if m.contains("oscillatory")));
    }

    #[test]
    fn eigenvector_alternates_for_oscillatory_input() {
        let a = DenseMatrix::from_fn(8, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => 1.0,
            _ => 0.0,
        });
        let (lam, v) = min_eigenpair(&a).unwrap();
        // 2 + 2cos(8π/9)
        assert_abs_diff_eq!(lam, 2.0 + 2.0 * (8.0 * PI / 9.0).cos(), epsilon = 1e-12);
        assert!(alternating(&v));
    }

    #[test]
    fn deboor_lemma_examples() {
        let id = DenseMatrix::identity(3);
        let x = [1.0, -1.0, 1.0];
        let b = deboor_lemma_bound(&id, &x, &x, Evidence::Verify).unwrap();
        assert_eq!((b.bound, b.inverse_norm), (1.0, Some(1.0)));
        let a = DenseMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = deboor_lemma_bound(&a, &[1.0, -1.0], &[1.0, -1.0], Evidence::Verify).unwrap();
        assert_abs_diff_eq!(b.bound, 1.0);
        assert_abs_diff_eq!(b.inverse_norm.unwrap(), 1.0, epsilon = 1e-15);
        let err = deboor_lemma_bound(&id, &[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0], Evidence::Verify).unwrap_err();
        assert!(matches!(err, Error::Argument(m) if m.contains("index 2")));
    }

    #[test]
    fn eigenvector_pipeline_matches_the_bound() {
        let a = DenseMatrix::from_fn(6, |i, j| match i.abs_diff(j) {
            0 => 4.0,
            1 => 1.5,
            2 => 0.25,
            _ => 0.0,
        });
        let (lam, v) = min_eigenpair(&a).unwrap();
        let y: Vec<f64> = v.iter().map(|x| lam * x).collect();
        let lemma = deboor_lemma_bound(&a, &v, &y, Evidence::Assume).unwrap();
        let osc = oscillatory_inverse_bound(&a, Evidence::Assume).unwrap();
        assert_abs_diff_eq!(lemma.bound, osc.eigenvector_bound.unwrap(), epsilon = 1e-9);
        assert!(lemma.bound <= osc.bound);
        assert!(lemma.holds.unwrap());
    }
}
