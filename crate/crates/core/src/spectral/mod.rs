//! Spectra and the spectral predicates built on them: the least real
//! eigenvalue l(A), positive stability, Kellogg's forbidden wedge and
//! ω/τ eigenvalue monotonicity.

pub mod eigen;
pub mod real_roots;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use eigen::{eigenvalues_with, EigenOptions};

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IndexSet, PNorm};
use crate::poly::Poly;
use crate::predicates::{self, ClassReport, Witness};

/// Eigenvalues with imaginary part below `TOL_IMAG_REL * ‖A‖∞` count as real.
pub const TOL_IMAG_REL: f64 = 1e-8;

/// Rational matrices up to this order get l(A) from an exact Sturm chain.
pub const EXACT_SPECTRAL_LIMIT: usize = 64;

/// Largest order accepted by the exhaustive ω/τ scan.
pub const OMEGA_TAU_EXHAUSTIVE_LIMIT: usize = 12;

/// Full spectrum, sorted by real part then imaginary part.
pub fn eigenvalues(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    let mut ev = eigenvalues_with(a, &EigenOptions::default())?;
    sort_spectrum(&mut ev);
    Ok(ev)
}

pub(crate) fn sort_spectrum(ev: &mut [Complex64]) {
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

/// l(A) from a precomputed spectrum; `f64::INFINITY` when no eigenvalue is real.
pub fn least_real(ev: &[Complex64], tol_imag: f64) -> f64 {
    ev.iter()
        .filter(|z| z.im.abs() <= tol_imag)
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min)
}

/// l(A) = min σ(A) ∩ ℝ, or `f64::INFINITY` when σ(A) has no real point.
///
/// Rational input of order at most [`EXACT_SPECTRAL_LIMIT`] is handled
/// exactly; otherwise real means |Im λ| ≤ `TOL_IMAG_REL * ‖A‖∞`.
pub fn min_real_eigenvalue(a: &DenseMatrix) -> Result<f64> {
    least_real_of(a, TOL_IMAG_REL * a.p_norm(PNorm::Inf))
}

fn least_real_of(a: &DenseMatrix, tol_imag: f64) -> Result<f64> {
    if a.order() <= EXACT_SPECTRAL_LIMIT {
        if let Some(l) = real_roots::exact_least_real_eigenvalue(a) {
            return Ok(l);
        }
    }
    Ok(least_real(&eigenvalues(a)?, tol_imag))
}

/// Ascending eigenvalues of a Hermitian matrix (Hermitian to 1e−12·max|a_ij|).
pub fn hermitian_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    let n = a.order();
    if !a.is_hermitian(1e-12 * a.max_abs().max(f64::MIN_POSITIVE)) {
        return Err(Error::arg("matrix is not Hermitian"));
    }
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| a[(i, j)]);
    let eig = nalgebra::SymmetricEigen::try_new(m, f64::EPSILON, 1000 * n)
        .ok_or_else(|| Error::Numerical(format!("Hermitian eigensolver did not converge at order {n}")))?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub order: usize,
    pub eigenvalues: Vec<Complex64>,
    /// `null` in JSON stands for +∞ (no real eigenvalue).
    #[serde(with = "infinite_as_null")]
    pub min_real_eigenvalue: f64,
    pub positive_stable: bool,
    pub min_real_part: f64,
    /// π − π/n − max |arg λ|.
    pub kellogg_margin: f64,
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl SpectrumReport {
    pub fn of(a: &DenseMatrix) -> Result<Self> {
        let ev = eigenvalues(a)?;
        Ok(Self::from_eigenvalues(a.order(), ev, TOL_IMAG_REL * a.p_norm(PNorm::Inf)))
    }

    pub fn from_eigenvalues(order: usize, eigenvalues: Vec<Complex64>, tol_imag: f64) -> Self {
        let min_real_part = eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max_arg = eigenvalues.iter().map(|z| z.arg().abs()).fold(0.0, f64::max);
        SpectrumReport {
            order,
            min_real_eigenvalue: least_real(&eigenvalues, tol_imag),
            positive_stable: min_real_part > 0.0,
            min_real_part,
            kellogg_margin: PI - PI / order as f64 - max_arg,
            eigenvalues,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV rows `order,re,im` without a header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for z in &self.eigenvalues {
            out.push_str(&format!("{},{:e},{:e}\n", self.order, z.re, z.im));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("order,re,im\n{}", self.csv_rows())
    }
}

/// Monic characteristic polynomial from the product over eigenvalues.
/// Real input gives real coefficients.
pub fn char_poly(a: &DenseMatrix) -> Result<Poly> {
    let ev = eigenvalues(a)?;
    let p = Poly::from_roots(&ev);
    if a.is_real() {
        return Ok(Poly::new(p.coeffs().iter().map(|c| Complex64::new(c.re, 0.0)).collect()));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaTauMode {
    /// Every pair β ⊆ α of nonempty index sets.
    Exhaustive,
    /// Leading principal submatrices only: l(A(1:m)) nonincreasing in m.
    LeadingPrincipal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaTauReport {
    pub omega: ClassReport,
    pub tau: ClassReport,
}

/// ω and τ verdicts. Comparisons allow a slack of `tol` (absolute), which
/// absorbs the scatter of numerically computed multiple eigenvalues.
pub fn is_omega_tau(a: &DenseMatrix, mode: OmegaTauMode, tol: f64) -> Result<OmegaTauReport> {
    let n = a.order();
    let tol_imag = TOL_IMAG_REL * a.p_norm(PNorm::Inf);
    let l_of = |alpha: &IndexSet| -> Result<f64> {
        least_real_of(&a.principal(alpha)?, tol_imag)
    };

    let omega_violation: Option<(IndexSet, IndexSet, f64, f64)>;
    let l_full;
    match mode {
        OmegaTauMode::Exhaustive => {
            if n > OMEGA_TAU_EXHAUSTIVE_LIMIT {
                return Err(Error::Capability(format!(
                    "exhaustive ω/τ test scans 2^{n} principal submatrices; limit is order {OMEGA_TAU_EXHAUSTIVE_LIMIT}"
                )));
            }
            let full = (1u64 << n) - 1;
            let mut l = vec![f64::NAN; 1 << n];
            for mask in 1..=full {
                l[mask as usize] = l_of(&IndexSet::from_mask(mask))?;
            }
            l_full = l[full as usize];
            omega_violation = predicates::graded_masks(n).find_map(|alpha| {
                let la = l[alpha as usize];
                predicates::graded_submasks(alpha).find_map(|beta| {
                    let lb = l[beta as usize];
                    (!lb.is_finite() || la > lb + tol).then(|| {
                        (IndexSet::from_mask(alpha), IndexSet::from_mask(beta), la, lb)
                    })
                })
            });
        }
        OmegaTauMode::LeadingPrincipal => {
            let mut ls = Vec::with_capacity(n);
            for m in 1..=n {
                ls.push(l_of(&IndexSet::range(1, m))?);
            }
            l_full = ls[n - 1];
            omega_violation = (0..n).find_map(|m| {
                if !ls[m].is_finite() {
                    let s = IndexSet::range(1, m + 1);
                    return Some((s.clone(), s, ls[m], ls[m]));
                }
                (m > 0 && ls[m] > ls[m - 1] + tol)
                    .then(|| (IndexSet::range(1, m + 1), IndexSet::range(1, m), ls[m], ls[m - 1]))
            });
        }
    }

    let omega = match &omega_violation {
        None => ClassReport::holds("omega", tol),
        Some((alpha, beta, la, lb)) => ClassReport::fails(
            "omega",
            tol,
            Witness::new(alpha.clone(), beta.clone(), vec![*la, *lb]),
        ),
    };
    let tau = if !omega.holds {
        ClassReport { class: "tau".into(), ..omega.clone() }
    } else if l_full < -tol {
        let all = IndexSet::range(1, n);
        ClassReport::fails("tau", tol, Witness::new(all.clone(), all, vec![l_full]))
    } else {
        ClassReport::holds("tau", tol)
    };
    Ok(OmegaTauReport { omega, tau })
}

/// Kellogg: every eigenvalue of an order-n P-matrix satisfies |arg λ| < π − π/n.
pub fn kellogg_wedge_check(a: &DenseMatrix) -> Result<ClassReport> {
    let n = a.order();
    if n < 2 {
        return Err(Error::Precondition("the wedge test needs order at least 2".into()));
    }
    let p = predicates::is_p_matrix(a)?;
    if !p.holds {
        return Err(Error::Precondition(format!("not a P-matrix: {}", p.describe())));
    }
    let report = SpectrumReport::of(a)?;
    let limit = PI - PI / n as f64;
    let worst = report
        .eigenvalues
        .iter()
        .copied()
        .max_by(|x, y| x.arg().abs().total_cmp(&y.arg().abs()))
        .expect("order is positive");
    let mut out = if worst.arg().abs() < limit {
        ClassReport::holds("kellogg_wedge", 0.0)
    } else {
        ClassReport::fails(
            "kellogg_wedge",
            0.0,
            Witness::new(IndexSet::empty(), IndexSet::empty(), vec![worst.re, worst.im, worst.arg().abs()]),
        )
    };
    out.margin = Some(report.kellogg_margin);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sorted_re(a: &DenseMatrix) -> Vec<f64> {
        eigenvalues(a).unwrap().iter().map(|z| z.re).collect()
    }

    #[test]
    fn hermitian_spectrum() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3
        let a = DenseMatrix::from_complex_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        let ev = hermitian_eigenvalues(&a).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 3.0, epsilon = 1e-14);
        let b = DenseMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&b), Err(Error::Argument(_))));
    }

    #[test]
    fn diagonal_and_rotation() {
        let ev = sorted_re(&DenseMatrix::diag(&[3.0, 1.0, 2.0]));
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
        let rot = DenseMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let ev = eigenvalues(&rot).unwrap();
        assert_abs_diff_eq!(ev[0].im, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1].im, 1.0, epsilon = 1e-14);
        assert_eq!(min_real_eigenvalue(&rot).unwrap(), f64::INFINITY);
    }

    #[test]
    fn complex_input_uses_complex_qr() {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let a = DenseMatrix::from_complex_rows(&[
            vec![one, i, 2.0 * one],
            vec![-i, 3.0 * one, one + i],
            vec![0.5 * one, one - i, -2.0 * i],
        ])
        .unwrap();
        let ev = eigenvalues(&a).unwrap();
        // each eigenvalue makes A - λI singular
        for z in &ev {
            let shift = DenseMatrix::from_complex_fn(3, |r, c| if r == c { *z } else { Complex64::default() });
            let d = a.sub(&shift).unwrap().det();
            assert!(d.norm() < 1e-10, "det(A - {z} I) = {d}");
        }
        let trace: Complex64 = ev.iter().sum();
        assert_abs_diff_eq!(trace.re, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace.im, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn hessenberg_reduction_keeps_spectrum_of_dense_real_input() {
        let a = DenseMatrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 1.5 + if i == j { 4.0 } else { 0.0 });
        let ev = eigenvalues(&a).unwrap();
        let trace: f64 = (0..6).map(|i| a[(i, i)].re).sum();
        let sum: Complex64 = ev.iter().sum();
        assert_abs_diff_eq!(sum.re, trace, epsilon = 1e-11);
        let det: Complex64 = ev.iter().product();
        assert!((det - a.det()).norm() < 1e-9 * a.det().norm().max(1.0));
    }

    #[test]
    fn char_poly_against_trace_recursion() {
        // Faddeev–LeVerrier: c_{n-m} = -(1/m) tr(A M_m), M_{m+1} = A M_m + c_{n-m} I
        let a = DenseMatrix::from_fn(4, |i, j| 1.0 / (1.0 + i as f64 + 2.0 * j as f64) - if i == j + 1 { 1.0 } else { 0.0 });
        let n = 4;
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        let mut m = DenseMatrix::identity(n);
        for k in 1..=n {
            let am = a.matmul(&m).unwrap();
            let tr: f64 = (0..n).map(|i| am[(i, i)].re).sum();
            coeffs[n - k] = -tr / k as f64;
            m = am.shifted(coeffs[n - k]);
        }
        let p = char_poly(&a).unwrap();
        for (got, want) in p.coeffs().iter().zip(&coeffs) {
            assert!((got.re - want).abs() <= 1e-8 * want.abs().max(1.0), "{got} vs {want}");
        }
        let p = char_poly(&DenseMatrix::diag(&[1.0, 2.0])).unwrap();
        assert_eq!(p.coeffs().iter().map(|c| c.re).collect::<Vec<_>>(), vec![2.0, -3.0, 1.0]);
    }

    #[test]
    fn omega_tau_small_cases() {
        let h = DenseMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = is_omega_tau(&h, OmegaTauMode::Exhaustive, 1e-9).unwrap();
        assert!(r.omega.holds && r.tau.holds);
        let neg = DenseMatrix::diag(&[-1.0]);
        let r = is_omega_tau(&neg, OmegaTauMode::Exhaustive, 1e-9).unwrap();
        assert!(r.omega.holds && !r.tau.holds);
        let big = DenseMatrix::identity(13);
        assert!(matches!(
            is_omega_tau(&big, OmegaTauMode::Exhaustive, 1e-9),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn kellogg_margin_of_unipotent() {
        let a = DenseMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        let r = kellogg_wedge_check(&a).unwrap();
        assert!(r.holds);
        assert_abs_diff_eq!(r.margin.unwrap(), PI / 2.0, epsilon = 1e-12);
        let not_p = DenseMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(kellogg_wedge_check(&not_p), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_serializes_infinity_as_null() {
        let rot = DenseMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let r = SpectrumReport::of(&rot).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"min_real_eigenvalue\": null"));
        let back: SpectrumReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.min_real_eigenvalue, f64::INFINITY);
        assert!(r.to_csv().starts_with("order,re,im\n2,"));
    }
}
