//! Membership tests for the matrix classes: P, GKK (via Hadamard–Fisher),
//! weak / full / dispersal-limited sign symmetry, total nonnegativity and
//! positivity, oscillatory, M, ultrametric, diagonally dominant, checkerboard.
//! Also the Hurwitz array and the Newton-inequality report.
//!
//! Exhaustive scans visit index sets in graded lexicographic order (by
//! cardinality, then lexicographically) and report the first violation, so
//! witnesses are deterministic. Exact matrices are scanned in rational
//! arithmetic with tolerance 0; floating matrices use
//! `FLOAT_REL_TOL * (largest minor magnitude in the scan)`.

use std::ops::{Mul, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, IntegerRows};
use crate::matrix::{DenseMatrix, IndexSet};
use crate::spectral;

/// Largest order for the exhaustive minor scans.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Relative tolerance of floating minor scans.
pub const FLOAT_REL_TOL: f64 = 1e-10;

/// Margin required by the M-matrix spectral-radius test.
pub const M_MATRIX_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    /// Offending values. Non-finite values serialize as `null`.
    pub values: Vec<f64>,
}

impl Witness {
    pub fn new(rows: IndexSet, cols: IndexSet, values: Vec<f64>) -> Self {
        Witness { rows, cols, values }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Extra context, e.g. the failing sub-predicate of a composite check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ClassReport {
    pub fn holds(class: &str, tolerance: f64) -> Self {
        ClassReport {
            class: class.to_string(),
            holds: true,
            witness: None,
            tolerance,
            margin: None,
            detail: None,
        }
    }

    pub fn fails(class: &str, tolerance: f64, witness: Witness) -> Self {
        ClassReport {
            class: class.to_string(),
            holds: false,
            witness: Some(witness),
            tolerance,
            margin: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn renamed(mut self, class: &str) -> Self {
        self.class = class.to_string();
        self
    }

    /// One-line summary for error messages and logs.
    pub fn describe(&self) -> String {
        match &self.witness {
            None => format!("{}: holds", self.class),
            Some(w) => {
                let mut s = format!("{}: fails at rows {} cols {} values {:?}", self.class, w.rows, w.cols, w.values);
                if let Some(d) = &self.detail {
                    s.push_str(&format!(" ({d})"));
                }
                s
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// index-set enumeration

/// 0-based `m`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (m <= n).then(|| (0..m).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut c = cur.clone();
        let mut i = m;
        while i > 0 {
            i -= 1;
            if c[i] < n - m + i {
                c[i] += 1;
                for j in i + 1..m {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(cur)
    })
}

fn to_mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

/// Nonempty subsets of `0..n` as bit masks, graded lexicographic order.
pub(crate) fn graded_masks(n: usize) -> impl Iterator<Item = u64> {
    (1..=n).flat_map(move |m| combinations(n, m).map(|c| to_mask(&c)))
}

/// Nonempty submasks of `mask` in graded lexicographic order.
pub(crate) fn graded_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let bits: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
    let k = bits.len();
    (1..=k).flat_map(move |m| {
        let bits = bits.clone();
        combinations(k, m).map(move |c| c.iter().fold(0u64, |acc, &i| acc | 1 << bits[i]))
    })
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn exhaustive_guard(a: &DenseMatrix, what: &str) -> Result<()> {
    let n = a.order();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Capability(format!(
            "{what} enumerates index sets of an order-{n} matrix (2^{n} subsets per side); \
             exhaustive limit is order {EXHAUSTIVE_LIMIT}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// minor values

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Value {
    Exact(BigRational),
    Float(Complex64),
}

impl Value {
    fn one(exact: bool) -> Self {
        if exact {
            Value::Exact(BigRational::from_integer(1.into()))
        } else {
            Value::Float(Complex64::new(1.0, 0.0))
        }
    }

    fn magnitude(&self) -> f64 {
        match self {
            Value::Exact(q) => exact::to_f64(q).abs(),
            Value::Float(z) => z.norm(),
        }
    }

    pub(crate) fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => exact::to_f64(q),
            Value::Float(z) => z.re,
        }
    }

    fn is_positive(&self, tol: f64) -> bool {
        match self {
            Value::Exact(q) => q.is_positive(),
            Value::Float(z) => z.re > tol && z.im.abs() <= tol,
        }
    }

    fn is_nonnegative(&self, tol: f64) -> bool {
        match self {
            Value::Exact(q) => !q.is_negative(),
            Value::Float(z) => z.re >= -tol && z.im.abs() <= tol,
        }
    }
}

impl Mul for &Value {
    type Output = Value;
    fn mul(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Float(float_of(self) * float_of(rhs)),
        }
    }
}

impl Sub for &Value {
    type Output = Value;
    fn sub(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Float(float_of(self) - float_of(rhs)),
        }
    }
}

fn float_of(v: &Value) -> Complex64 {
    match v {
        Value::Exact(q) => Complex64::new(exact::to_f64(q), 0.0),
        Value::Float(z) => *z,
    }
}

/// Evaluates minors of one matrix, exactly when the matrix carries rationals.
pub(crate) struct Minors<'a> {
    a: &'a DenseMatrix,
    ints: Option<IntegerRows>,
}

impl<'a> Minors<'a> {
    pub(crate) fn new(a: &'a DenseMatrix) -> Self {
        let ints = a.exact_entries().map(|q| IntegerRows::new(a.order(), q));
        Minors { a, ints }
    }

    pub(crate) fn is_exact(&self) -> bool {
        self.ints.is_some()
    }

    /// 0-based rows and columns of equal length; empty gives 1.
    pub(crate) fn eval(&self, rows: &[usize], cols: &[usize]) -> Value {
        if rows.is_empty() {
            return Value::one(self.is_exact());
        }
        match &self.ints {
            Some(ints) => Value::Exact(ints.minor(rows, cols)),
            None => Value::Float(self.a.float_minor(rows, cols)),
        }
    }

    /// All principal minors indexed by mask (entry 0 is the empty minor 1).
    fn principal_table(&self) -> Vec<Value> {
        let n = self.a.order();
        let mut out = Vec::with_capacity(1 << n);
        out.push(Value::one(self.is_exact()));
        for mask in 1u64..1 << n {
            let idx = mask_indices(mask);
            out.push(self.eval(&idx, &idx));
        }
        out
    }
}

fn scan_tolerance(exact: bool, largest: f64) -> f64 {
    if exact {
        0.0
    } else {
        FLOAT_REL_TOL * largest.max(f64::MIN_POSITIVE)
    }
}

// ---------------------------------------------------------------------------
// P and GKK

/// All principal minors positive.
pub fn is_p_matrix(a: &DenseMatrix) -> Result<ClassReport> {
    exhaustive_guard(a, "the P-matrix test")?;
    let minors = Minors::new(a);
    let table = minors.principal_table();
    Ok(p_from_table(a.order(), &table, minors.is_exact()))
}

fn p_from_table(n: usize, table: &[Value], exact: bool) -> ClassReport {
    let largest = table.iter().map(Value::magnitude).fold(0.0, f64::max);
    let tol = scan_tolerance(exact, largest);
    match graded_masks(n).find(|&m| !table[m as usize].is_positive(tol)) {
        None => ClassReport::holds("P", tol),
        Some(m) => {
            let s = IndexSet::from_mask(m);
            ClassReport::fails("P", tol, Witness::new(s.clone(), s, vec![table[m as usize].to_f64()]))
        }
    }
}

/// Generalized Hadamard–Fisher: A[α]A[β] ≥ A[α∪β]A[α∩β] for all α, β.
/// For a P-matrix this is equivalent to being GKK. A non-P input fails with
/// the P witness and `detail = "not a P-matrix"`.
pub fn hadamard_fisher_check(a: &DenseMatrix) -> Result<ClassReport> {
    exhaustive_guard(a, "the Hadamard-Fisher test")?;
    let n = a.order();
    let minors = Minors::new(a);
    let exact = minors.is_exact();
    let table = minors.principal_table();
    let p = p_from_table(n, &table, exact);
    if !p.holds {
        return Ok(p.renamed("GKK").with_detail("not a P-matrix"));
    }
    let largest = table.iter().map(Value::magnitude).fold(0.0, f64::max);
    let tol = scan_tolerance(exact, largest);
    let all: Vec<u64> = std::iter::once(0).chain(graded_masks(n)).collect();
    for (ia, &alpha) in all.iter().enumerate() {
        for &beta in &all[ia + 1..] {
            if alpha & beta == alpha || alpha & beta == beta {
                continue;
            }
            let lhs = &table[alpha as usize] * &table[beta as usize];
            let rhs = &table[(alpha | beta) as usize] * &table[(alpha & beta) as usize];
            if !(&lhs - &rhs).is_nonnegative(tol * largest) {
                let w = Witness::new(
                    IndexSet::from_mask(alpha),
                    IndexSet::from_mask(beta),
                    vec![
                        table[alpha as usize].to_f64(),
                        table[beta as usize].to_f64(),
                        table[(alpha | beta) as usize].to_f64(),
                        table[(alpha & beta) as usize].to_f64(),
                    ],
                );
                return Ok(ClassReport::fails("GKK", tol, w));
            }
        }
    }
    Ok(ClassReport::holds("GKK", tol))
}

// ---------------------------------------------------------------------------
// sign symmetry

/// Equal-cardinality pairs (α, β) in graded order whose dispersal
/// #α − #(α∩β) passes `keep`.
fn pairs_by_dispersal(n: usize, keep: impl Fn(usize) -> bool + Copy) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..=n).flat_map(move |m| {
        combinations(n, m).flat_map(move |alpha| {
            let am = to_mask(&alpha);
            combinations(n, m).filter_map(move |beta| {
                let d = m - (am & to_mask(&beta)).count_ones() as usize;
                keep(d).then(|| (alpha.clone(), beta))
            })
        })
    })
}

fn sign_symmetry_scan(a: &DenseMatrix, class: &str, keep: impl Fn(usize) -> bool + Copy) -> Result<ClassReport> {
    exhaustive_guard(a, &format!("the {class} test"))?;
    let n = a.order();
    let minors = Minors::new(a);
    let exact = minors.is_exact();
    let largest = if exact {
        0.0
    } else {
        pairs_by_dispersal(n, keep)
            .map(|(r, c)| minors.eval(&r, &c).magnitude())
            .fold(0.0, f64::max)
    };
    let tol = scan_tolerance(exact, largest);
    for (r, c) in pairs_by_dispersal(n, keep) {
        let x = minors.eval(&r, &c);
        let y = minors.eval(&c, &r);
        if !(&x * &y).is_nonnegative(tol * largest) {
            let w = Witness::new(IndexSet::from_zero_based(&r), IndexSet::from_zero_based(&c), vec![x.to_f64(), y.to_f64()]);
            return Ok(ClassReport::fails(class, tol, w));
        }
    }
    Ok(ClassReport::holds(class, tol))
}

/// A[α,β]A[β,α] ≥ 0 over almost-principal pairs (#α = #β = #(α∪β) − 1).
pub fn is_weakly_sign_symmetric(a: &DenseMatrix) -> Result<ClassReport> {
    sign_symmetry_scan(a, "weakly_sign_symmetric", |d| d == 1)
}

/// A[α,β]A[β,α] ≥ 0 over all equal-cardinality pairs.
pub fn is_sign_symmetric(a: &DenseMatrix) -> Result<ClassReport> {
    sign_symmetry_scan(a, "sign_symmetric", |_| true)
}

/// A[α,β]A[β,α] ≥ 0 over pairs with dispersal #α − #(α∩β) ≤ `d`.
pub fn sign_symmetry_up_to_dispersal(a: &DenseMatrix, d: usize) -> Result<ClassReport> {
    sign_symmetry_scan(a, "sign_symmetric_up_to_dispersal", move |x| x <= d)
}

/// GKK: weakly sign-symmetric P-matrix.
pub fn is_gkk(a: &DenseMatrix) -> Result<ClassReport> {
    let p = is_p_matrix(a)?;
    if !p.holds {
        return Ok(p.renamed("GKK").with_detail("not a P-matrix"));
    }
    let w = is_weakly_sign_symmetric(a)?;
    if !w.holds {
        return Ok(w.renamed("GKK").with_detail("not weakly sign-symmetric"));
    }
    Ok(ClassReport::holds("GKK", p.tolerance.max(w.tolerance)))
}

// ---------------------------------------------------------------------------
// total nonnegativity

fn all_pairs(n: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    pairs_by_dispersal(n, |_| true).filter(|(r, _)| !r.is_empty())
}

fn minor_sign_scan(a: &DenseMatrix, class: &str, strict: bool) -> Result<ClassReport> {
    exhaustive_guard(a, &format!("the {class} test"))?;
    let n = a.order();
    let minors = Minors::new(a);
    let exact = minors.is_exact();
    let largest = if exact {
        0.0
    } else {
        all_pairs(n).map(|(r, c)| minors.eval(&r, &c).magnitude()).fold(0.0, f64::max)
    };
    let tol = scan_tolerance(exact, largest);
    for (r, c) in all_pairs(n) {
        let v = minors.eval(&r, &c);
        let ok = if strict { v.is_positive(tol) } else { v.is_nonnegative(tol) };
        if !ok {
            let w = Witness::new(IndexSet::from_zero_based(&r), IndexSet::from_zero_based(&c), vec![v.to_f64()]);
            return Ok(ClassReport::fails(class, tol, w));
        }
    }
    Ok(ClassReport::holds(class, tol))
}

pub fn is_totally_nonnegative(a: &DenseMatrix) -> Result<ClassReport> {
    minor_sign_scan(a, "TN", false)
}

pub fn is_totally_positive(a: &DenseMatrix) -> Result<ClassReport> {
    minor_sign_scan(a, "TP", true)
}

/// TN, nonsingular, with positive entries on the first sub- and
/// superdiagonal. For a nonsingular TN matrix this is equivalent to some
/// power being TP, and it avoids scanning the badly scaled minors of A^{n−1}.
pub fn is_oscillatory(a: &DenseMatrix) -> Result<ClassReport> {
    let tn = is_totally_nonnegative(a)?;
    if !tn.holds {
        return Ok(tn.renamed("oscillatory").with_detail("not totally nonnegative"));
    }
    let n = a.order();
    let all = IndexSet::range(1, n);
    let det = Minors::new(a).eval(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    if !det.is_positive(tn.tolerance) {
        return Err(Error::Precondition(format!(
            "oscillatory test needs a nonsingular matrix; det = {:e} on {all}",
            det.to_f64()
        )));
    }
    let tol = comparison_tol(a);
    for i in 0..n.saturating_sub(1) {
        for (r, c) in [(i, i + 1), (i + 1, i)] {
            if a[(r, c)].re <= tol {
                return Ok(ClassReport::fails("oscillatory", tn.tolerance, entry_witness(r, c, vec![a[(r, c)].re]))
                    .with_detail("zero entry next to the diagonal"));
            }
        }
    }
    Ok(ClassReport::holds("oscillatory", tn.tolerance))
}

// ---------------------------------------------------------------------------
// entrywise classes

fn entry_witness(i: usize, j: usize, values: Vec<f64>) -> Witness {
    Witness::new(IndexSet::from_zero_based(&[i]), IndexSet::from_zero_based(&[j]), values)
}

fn require_real(a: &DenseMatrix, what: &str) -> Result<()> {
    if !a.is_real() {
        return Err(Error::arg(format!("{what} is defined for real matrices")));
    }
    Ok(())
}

/// Off-diagonal entries ≤ 0 and, with r the largest diagonal entry and
/// P = rI − A ≥ 0, spectral radius ϱ(P) < r.
pub fn is_m_matrix(a: &DenseMatrix) -> Result<ClassReport> {
    require_real(a, "the M-matrix test")?;
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)].re > 0.0 {
                return Ok(ClassReport::fails("M", M_MATRIX_TOL, entry_witness(i, j, vec![a[(i, j)].re]))
                    .with_detail("positive off-diagonal entry"));
            }
        }
    }
    let r = (0..n).map(|i| a[(i, i)].re).fold(f64::NEG_INFINITY, f64::max);
    let p = DenseMatrix::from_fn(n, |i, j| if i == j { r - a[(i, i)].re } else { -a[(i, j)].re });
    let rho = spectral::eigenvalues(&p)?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = M_MATRIX_TOL * r.abs().max(1.0);
    if rho < r - tol {
        let mut rep = ClassReport::holds("M", tol);
        rep.margin = Some(r - rho);
        Ok(rep)
    } else {
        let all = IndexSet::range(1, n);
        Ok(ClassReport::fails("M", tol, Witness::new(all.clone(), all, vec![rho, r]))
            .with_detail("spectral radius of rI - A is not below r"))
    }
}

fn comparison_tol(a: &DenseMatrix) -> f64 {
    if a.is_exact() {
        0.0
    } else {
        1e-12 * a.max_abs()
    }
}

fn ultrametric_scan(a: &DenseMatrix, strict: bool) -> Result<ClassReport> {
    let class = if strict { "strictly_ultrametric" } else { "ultrametric" };
    require_real(a, "the ultrametric test")?;
    let n = a.order();
    let tol = comparison_tol(a);
    let x = |i: usize, j: usize| a[(i, j)].re;
    for i in 0..n {
        for j in 0..n {
            if (x(i, j) - x(j, i)).abs() > tol {
                return Ok(ClassReport::fails(class, tol, entry_witness(i, j, vec![x(i, j), x(j, i)]))
                    .with_detail("not symmetric"));
            }
            if x(i, j) < -tol {
                return Ok(ClassReport::fails(class, tol, entry_witness(i, j, vec![x(i, j)]))
                    .with_detail("negative entry"));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if x(i, j) < x(i, k).min(x(k, j)) - tol {
                    return Ok(ClassReport::fails(class, tol, entry_witness(i, j, vec![x(i, j), x(i, k), x(k, j)]))
                        .with_detail(format!("a(i,j) < min(a(i,k), a(k,j)) with k = {}", k + 1)));
                }
            }
        }
    }
    for i in 0..n {
        let off = (0..n).filter(|&k| k != i).map(|k| x(i, k)).fold(f64::NEG_INFINITY, f64::max);
        if n == 1 {
            continue;
        }
        let bad = if strict { x(i, i) <= off + tol } else { x(i, i) < off - tol };
        if bad {
            return Ok(ClassReport::fails(class, tol, entry_witness(i, i, vec![x(i, i), off]))
                .with_detail("diagonal entry below the off-diagonal row maximum"));
        }
    }
    Ok(ClassReport::holds(class, tol))
}

/// Symmetric, nonnegative, a(i,j) ≥ min(a(i,k), a(k,j)), and a(i,i) ≥ max_{k≠i} a(i,k).
pub fn is_ultrametric(a: &DenseMatrix) -> Result<ClassReport> {
    ultrametric_scan(a, false)
}

/// Ultrametric with a(i,i) > max_{k≠i} a(i,k) for every i.
pub fn is_strictly_ultrametric(a: &DenseMatrix) -> Result<ClassReport> {
    ultrametric_scan(a, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Row,
    Column,
}

/// |a(i,i)| ≥ Σ_{j≠i} |a(i,j)| (row) or the column analogue; `strict` demands
/// strict inequality at every index.
pub fn is_diagonally_dominant(a: &DenseMatrix, mode: Dominance, strict: bool) -> Result<ClassReport> {
    let n = a.order();
    let class = match (mode, strict) {
        (Dominance::Row, false) => "row_diagonally_dominant",
        (Dominance::Row, true) => "strictly_row_diagonally_dominant",
        (Dominance::Column, false) => "column_diagonally_dominant",
        (Dominance::Column, true) => "strictly_column_diagonally_dominant",
    };
    let at = |i: usize, j: usize| match mode {
        Dominance::Row => a[(i, j)].norm(),
        Dominance::Column => a[(j, i)].norm(),
    };
    let exact = a.is_exact();
    let mut worst = f64::INFINITY;
    let mut used_tol: f64 = 0.0;
    for i in 0..n {
        let d = at(i, i);
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| at(i, j)).sum();
        let tol = if exact { 0.0 } else { 1e-12 * (d + off) };
        used_tol = used_tol.max(tol);
        let ok = if strict { d > off } else { d >= off - tol };
        worst = worst.min(d - off);
        if !ok {
            let w = Witness::new(IndexSet::from_zero_based(&[i]), IndexSet::empty(), vec![d, off]);
            return Ok(ClassReport::fails(class, used_tol, w));
        }
    }
    let mut rep = ClassReport::holds(class, used_tol);
    rep.margin = Some(worst);
    Ok(rep)
}

/// Every entry with |a(i,j)| > tol has sign (−1)^{i−j}.
pub fn is_checkerboard(a: &DenseMatrix, tol: f64) -> ClassReport {
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            if z.norm() <= tol {
                continue;
            }
            let want_positive = (i + j) % 2 == 0;
            let ok = z.im.abs() <= tol && if want_positive { z.re > 0.0 } else { z.re < 0.0 };
            if !ok {
                return ClassReport::fails("checkerboard", tol, entry_witness(i, j, vec![z.re, z.im]));
            }
        }
    }
    ClassReport::holds("checkerboard", tol)
}

// ---------------------------------------------------------------------------
// Hurwitz array

/// Hurwitz matrix of f(x) = a_0 x^d + a_1 x^{d−1} + … + a_d.
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzMatrix {
    /// a_0 (leading) .. a_d.
    pub coeffs: Vec<BigRational>,
    pub matrix: DenseMatrix,
}

impl HurwitzMatrix {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Entry (i, j), 1-based: a_{2j−i}, zero outside 0..=d. Defined for any
    /// i, j ≥ 1, so the array can be extended past order d.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        let m = 2 * j as i64 - i as i64;
        if m < 0 || m as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[m as usize].clone()
        }
    }

    /// The pattern continued to an `order × order` array.
    pub fn extended(&self, order: usize) -> Vec<Vec<BigRational>> {
        (1..=order).map(|i| (1..=order).map(|j| self.entry(i, j)).collect()).collect()
    }
}

/// Coefficients are given leading first: `coeffs[0] = a_0`.
pub fn hurwitz_matrix(coeffs: &[BigRational]) -> Result<HurwitzMatrix> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::arg("the zero polynomial has no Hurwitz matrix"));
    }
    if coeffs.len() < 2 {
        return Err(Error::arg("Hurwitz matrix needs degree at least 1"));
    }
    if coeffs[0].is_zero() {
        return Err(Error::arg("leading coefficient a_0 must be nonzero"));
    }
    let d = coeffs.len() - 1;
    let proto = HurwitzMatrix { coeffs: coeffs.to_vec(), matrix: DenseMatrix::identity(1) };
    let entries: Vec<BigRational> = proto.extended(d).into_iter().flatten().collect();
    let matrix = DenseMatrix::from_rational(d, entries)?;
    Ok(HurwitzMatrix { coeffs: coeffs.to_vec(), matrix })
}

/// Floating coefficients are converted exactly to binary rationals.
pub fn hurwitz_matrix_f64(coeffs: &[f64]) -> Result<HurwitzMatrix> {
    let q = coeffs.iter().map(|&c| exact::rational_from_f64(c)).collect::<Result<Vec<_>>>()?;
    hurwitz_matrix(&q)
}

// ---------------------------------------------------------------------------
// Newton inequalities

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonGap {
    pub j: usize,
    pub c: f64,
    /// c_j² − c_{j−1}c_{j+1}.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonReport {
    /// c_j = e_j(σ(A)) / C(n, j) for j = 0..=n.
    pub c: Vec<f64>,
    /// Interior indices 1..n−1.
    pub gaps: Vec<NewtonGap>,
}

impl NewtonReport {
    /// Gaps that are negative beyond `tol` relative to the local scale.
    pub fn violations(&self, tol: f64) -> Vec<&NewtonGap> {
        self.gaps
            .iter()
            .filter(|g| g.gap < -tol * (g.c * g.c).max(1.0))
            .collect()
    }
}

/// Newton's normalized elementary symmetric functions of the spectrum and
/// their gaps. Reports only; the inequality is not asserted.
pub fn newton_inequality_report(a: &DenseMatrix) -> Result<NewtonReport> {
    let n = a.order();
    let p = spectral::char_poly(a)?;
    // p(λ) = Σ (−1)^j e_j λ^{n−j}
    let c: Vec<f64> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let e = sign * p.coeffs()[n - j].re;
            e / exact::to_f64(&BigRational::from_integer(exact::binomial(n as u64, j as u64)))
        })
        .collect();
    let gaps = (1..n)
        .map(|j| NewtonGap { j, c: c[j], gap: c[j] * c[j] - c[j - 1] * c[j + 1] })
        .collect();
    Ok(NewtonReport { c, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn exact(rows: &[&[i64]]) -> DenseMatrix {
        let n = rows.len();
        DenseMatrix::from_rational_fn(n, |i, j| BigRational::from_integer(rows[i][j].into())).unwrap()
    }

    #[test]
    fn graded_order() {
        let masks: Vec<u64> = graded_masks(3).collect();
        assert_eq!(masks, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
        let sub: Vec<u64> = graded_submasks(0b1010).collect();
        assert_eq!(sub, vec![0b0010, 0b1000, 0b1010]);
        assert_eq!(combinations(4, 0).count(), 1);
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn p_matrix_examples() {
        assert!(is_p_matrix(&exact(&[&[1, 2], &[0, 1]])).unwrap().holds);
        let r = is_p_matrix(&exact(&[&[0, 1], &[1, 1]])).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().rows.as_slice(), &[1]);
        let big = DenseMatrix::identity(17);
        match is_p_matrix(&big) {
            Err(Error::Capability(msg)) => assert!(msg.contains("2^17")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hadamard_fisher_examples() {
        let r = hadamard_fisher_check(&exact(&[&[1, -2], &[1, 1]])).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.rows.as_slice(), w.cols.as_slice()), (&[1][..], &[2][..]));
        assert_eq!(w.values, vec![1.0, 1.0, 3.0, 1.0]);
        assert!(hadamard_fisher_check(&DenseMatrix::identity(4)).unwrap().holds);
    }

    #[test]
    fn sign_symmetry_examples() {
        let a = exact(&[&[1, -2], &[1, 1]]);
        let r = is_weakly_sign_symmetric(&a).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().values, vec![-2.0, 1.0]);
        let d = DenseMatrix::diag_rational(&[q("1"), q("2"), q("3")]).unwrap();
        assert!(is_weakly_sign_symmetric(&d).unwrap().holds);
        assert!(is_sign_symmetric(&d).unwrap().holds);
        assert!(sign_symmetry_up_to_dispersal(&a, 0).unwrap().holds);
        assert!(!sign_symmetry_up_to_dispersal(&a, 1).unwrap().holds);
        let spd = m(&[&[4.0, 1.0, -1.0, 0.5], &[1.0, 3.0, 0.2, 0.1], &[-1.0, 0.2, 5.0, 1.0], &[0.5, 0.1, 1.0, 2.0]]);
        assert!(is_sign_symmetric(&spd).unwrap().holds);
    }

    #[test]
    fn total_nonnegativity_examples() {
        let a = exact(&[&[2, 1], &[1, 2]]);
        assert!(is_totally_nonnegative(&a).unwrap().holds);
        assert!(is_totally_positive(&a).unwrap().holds);
        assert!(is_oscillatory(&a).unwrap().holds);
        let ones = exact(&[&[1, 1], &[1, 1]]);
        assert!(is_totally_nonnegative(&ones).unwrap().holds);
        let tp = is_totally_positive(&ones).unwrap();
        assert!(!tp.holds);
        assert_eq!(tp.witness.unwrap().rows.as_slice(), &[1, 2]);
        assert!(matches!(is_oscillatory(&ones), Err(Error::Precondition(_))));
        // tridiagonal with positive off-diagonals is oscillatory but not TP
        let tri = exact(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert!(!is_totally_positive(&tri).unwrap().holds);
        assert!(is_oscillatory(&tri).unwrap().holds);
        // the power oracle agrees: tri^2 is already TP
        assert!(is_totally_positive(&tri.pow(2).unwrap()).unwrap().holds);
        // TN and nonsingular, but decomposable
        let d = exact(&[&[2, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        let r = is_oscillatory(&d).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().rows.as_slice(), &[1]);
        let h = hurwitz_matrix(&[q("1"), q("2"), q("1")]).unwrap();
        assert!(is_totally_nonnegative(&h.matrix).unwrap().holds);
    }

    #[test]
    fn m_matrix_examples() {
        assert!(is_m_matrix(&m(&[&[2.0, -1.0], &[-1.0, 2.0]])).unwrap().holds);
        let r = is_m_matrix(&m(&[&[1.0, -2.0], &[-2.0, 1.0]])).unwrap();
        assert!(!r.holds);
        assert!((r.witness.unwrap().values[0] - 2.0).abs() < 1e-12);
        assert!(!is_m_matrix(&m(&[&[1.0, 0.5], &[0.0, 1.0]])).unwrap().holds);
        let c = DenseMatrix::from_complex_rows(&[vec![Complex64::new(1.0, 1.0)]]).unwrap();
        assert!(is_m_matrix(&c).is_err());
    }

    #[test]
    fn ultrametric_examples() {
        let c4 = DenseMatrix::from_rational_fn(4, |i, j| BigRational::new(1.into(), (i.max(j) as i64 + 1).into())).unwrap();
        assert!(is_ultrametric(&c4).unwrap().holds);
        let s = is_strictly_ultrametric(&c4).unwrap();
        assert!(!s.holds);
        // a(i,i) = 1/i also appears left of the diagonal, so row 2 is the first tie
        assert_eq!(s.witness.unwrap().rows.as_slice(), &[2]);
        assert!(is_strictly_ultrametric(&c4.shifted_exact(&q("1/2"))).unwrap().holds);
        assert!(!is_ultrametric(&m(&[&[1.0, 2.0], &[2.0, 1.0]])).unwrap().holds);
        assert!(!is_ultrametric(&m(&[&[1.0, 0.5], &[0.4, 1.0]])).unwrap().holds);
        // triangle failure: a13 < min(a12, a23)
        let t = m(&[&[3.0, 2.0, 1.0], &[2.0, 3.0, 2.0], &[1.0, 2.0, 3.0]]);
        let r = is_ultrametric(&t).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().rows.as_slice(), &[1]);
    }

    #[test]
    fn dominance_and_checkerboard() {
        assert!(is_diagonally_dominant(&m(&[&[3.0, -1.0], &[-1.0, 3.0]]), Dominance::Row, true).unwrap().holds);
        let ones = m(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(!is_diagonally_dominant(&ones, Dominance::Row, true).unwrap().holds);
        assert!(is_diagonally_dominant(&ones, Dominance::Row, false).unwrap().holds);
        let lower = m(&[&[1.0, 0.0], &[5.0, 10.0]]);
        assert!(is_diagonally_dominant(&lower, Dominance::Row, false).unwrap().holds);
        assert!(!is_diagonally_dominant(&lower, Dominance::Column, false).unwrap().holds);

        let r = is_checkerboard(&ones, 1e-12);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.rows.as_slice(), w.cols.as_slice()), (&[1][..], &[2][..]));
        assert!(is_checkerboard(&DenseMatrix::identity(5), 1e-12).holds);
        assert!(is_checkerboard(&m(&[&[1.0, -1.0], &[-2.0, 3.0]]), 1e-12).holds);
    }

    #[test]
    fn hurwitz_layouts() {
        let h = hurwitz_matrix(&[q("1"), q("2"), q("1")]).unwrap();
        assert_eq!(h.matrix, DenseMatrix::from_rational_fn(2, |i, j| q(["2", "0", "1", "1"][i * 2 + j])).unwrap());
        let h = hurwitz_matrix(&[q("1"), q("1"), q("1"), q("1")]).unwrap();
        let want = [[1, 1, 0], [1, 1, 0], [0, 1, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h.matrix[(i, j)].re, want[i][j] as f64);
            }
        }
        assert!(hurwitz_matrix(&[q("0"), q("0")]).is_err());
        assert!(hurwitz_matrix(&[q("0"), q("1")]).is_err());
        assert!(hurwitz_matrix(&[q("3")]).is_err());
        // extension past the order continues the pattern
        let h = hurwitz_matrix(&[q("1"), q("2"), q("1")]).unwrap();
        let ext = h.extended(3);
        assert_eq!(ext[2][2], q("0"));
        assert_eq!(ext[2][1], q("2"));
    }

    #[test]
    fn newton_report_diag() {
        let r = newton_inequality_report(&DenseMatrix::diag(&[1.0, 2.0, 3.0])).unwrap();
        let want = [1.0, 2.0, 11.0 / 3.0, 6.0];
        for (g, w) in r.c.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
        assert!((r.gaps[0].gap - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.gaps[1].gap - 13.0 / 9.0).abs() < 1e-12);
        assert!(r.violations(1e-12).is_empty());
        let r = newton_inequality_report(&DenseMatrix::identity(3)).unwrap();
        assert!(r.gaps.iter().all(|g| g.gap.abs() < 1e-12));
    }

    #[test]
    fn report_json_shape() {
        let r = is_p_matrix(&exact(&[&[0, 1], &[1, 1]])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["class"], "P");
        assert_eq!(v["holds"], false);
        assert_eq!(v["witness"]["rows"], serde_json::json!([1]));
        assert_eq!(v["witness"]["values"], serde_json::json!([0.0]));
        assert_eq!(v["tolerance"], 0.0);
    }
}
