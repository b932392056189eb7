//! Dense square complex matrices, index sets, minors, p-norms and linear solves.
//!
//! A [`DenseMatrix`] always carries `Complex64` entries. When it was built from
//! exact rationals it also keeps the rational entries, and minors of such
//! matrices are evaluated exactly (fraction-free elimination) up to order
//! [`EXACT_MINOR_LIMIT`]. Arithmetic that cannot stay exact (inversion,
//! scaling by a float) drops the rational shadow.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, IntegerRows};

/// Largest submatrix order whose determinant is computed in exact arithmetic.
pub const EXACT_MINOR_LIMIT: usize = 16;

/// Default relative pivot tolerance for [`DenseMatrix::solve`].
pub const PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<Complex64>,
    exact: Option<Vec<BigRational>>,
}

impl DenseMatrix {
    /// Row-major complex entries. Fails on size mismatch or non-finite values.
    pub fn new(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::arg("matrix order must be positive"));
        }
        if entries.len() != order * order {
            return Err(Error::arg(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::arg(format!(
                "non-finite entry at ({}, {})",
                pos / order + 1,
                pos % order + 1
            )));
        }
        Ok(DenseMatrix { order, entries, exact: None })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("rows must form a square array"));
        }
        Self::new(n, rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_complex_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("rows must form a square array"));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    /// Exact rational matrix (row-major).
    pub fn from_rational(order: usize, entries: Vec<BigRational>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::arg("rational entries do not form a square matrix"));
        }
        let floats = entries.iter().map(|q| Complex64::new(exact::to_f64(q), 0.0)).collect();
        let mut m = Self::new(order, floats)?;
        m.exact = Some(entries);
        Ok(m)
    }

    /// Exact matrix from a 0-based generator.
    pub fn from_rational_fn(order: usize, f: impl Fn(usize, usize) -> BigRational) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self::from_rational(order, entries)
    }

    /// Real matrix from a 0-based generator.
    ///
    /// Panics if the generator yields a non-finite value.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        Self::from_complex_fn(order, |i, j| Complex64::new(f(i, j), 0.0))
    }

    pub fn from_complex_fn(order: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self::new(order, entries).expect("generator produced an invalid matrix")
    }

    pub fn identity(order: usize) -> Self {
        Self::from_rational_fn(order, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .expect("identity of positive order")
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn diag_rational(values: &[BigRational]) -> Result<Self> {
        Self::from_rational_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Rational shadow, present when every entry is known exactly.
    pub fn exact_entries(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Row `i` (0-based).
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Real parts, row-major.
    pub fn real_parts(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        (0..self.order).all(|i| {
            (0..self.order).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol * scale)
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut out = Self::from_complex_fn(n, |i, j| self[(j, i)]);
        if let Some(q) = &self.exact {
            out.exact = Some((0..n * n).map(|p| q[(p % n) * n + p / n].clone()).collect());
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.order;
        let mut out = Self::from_complex_fn(n, |i, j| self[(j, i)].conj());
        if let Some(q) = &self.exact {
            out.exact = Some((0..n * n).map(|p| q[(p % n) * n + p / n].clone()).collect());
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let n = self.order;
        if other.order != n {
            return Err(Error::arg("order mismatch in matrix product"));
        }
        let mut entries = vec![Complex64::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        let mut out = Self::new(n, entries)?;
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            let mut q = vec![BigRational::zero(); n * n];
            for i in 0..n {
                for k in 0..n {
                    if a[i * n + k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        q[i * n + j] += &a[i * n + k] * &b[k * n + j];
                    }
                }
            }
            out = Self::from_rational(n, q)?;
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
        g: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        if other.order != self.order {
            return Err(Error::arg("order mismatch"));
        }
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Self::from_rational(self.order, a.iter().zip(b).map(|(x, y)| g(x, y)).collect());
        }
        Self::new(
            self.order,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.order, self.entries.iter().map(|&z| z * c).collect())
            .expect("scaling kept entries finite")
    }

    /// `A + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.entries[i * self.order + i] += shift;
        }
        if let Some(q) = &mut out.exact {
            match exact::rational_from_f64(shift) {
                Ok(s) => {
                    for i in 0..self.order {
                        q[i * self.order + i] += &s;
                    }
                }
                Err(_) => out.exact = None,
            }
        }
        out
    }

    /// `A + shift * I` with an exact shift.
    pub fn shifted_exact(&self, shift: &BigRational) -> Self {
        let mut out = self.shifted(exact::to_f64(shift));
        if let Some(q) = &self.exact {
            let mut q = q.clone();
            for i in 0..self.order {
                q[i * self.order + i] += shift;
            }
            out.exact = Some(q);
        }
        out
    }

    pub fn pow(&self, l: u32) -> Result<Self> {
        let mut acc = Self::identity(self.order);
        for _ in 0..l {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Submatrix `A(rows, cols)`; may be rectangular, so it is returned as rows.
    pub fn select(&self, rows: &IndexSet, cols: &IndexSet) -> Vec<Vec<Complex64>> {
        rows.iter()
            .map(|i| cols.iter().map(|j| self[(i - 1, j - 1)]).collect())
            .collect()
    }

    /// Square submatrix `A(α, α)` as a matrix.
    pub fn principal(&self, alpha: &IndexSet) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::arg("principal submatrix of an empty index set"));
        }
        alpha.check_bound(self.order)?;
        let idx: Vec<usize> = alpha.iter().map(|i| i - 1).collect();
        let m = idx.len();
        if let Some(q) = &self.exact {
            return Self::from_rational_fn(m, |i, j| q[idx[i] * self.order + idx[j]].clone());
        }
        Ok(Self::from_complex_fn(m, |i, j| self[(idx[i], idx[j])]))
    }

    /// Leading principal submatrix of order `m`.
    pub fn leading(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.order {
            return Err(Error::arg(format!("leading order {m} outside 1..={}", self.order)));
        }
        self.principal(&IndexSet::range(1, m))
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let (p, q) = (a.order, b.order);
        let n = p + q;
        let mut out = Self::from_complex_fn(n, |i, j| {
            if i < p && j < p {
                a[(i, j)]
            } else if i >= p && j >= p {
                b[(i - p, j - p)]
            } else {
                Complex64::zero()
            }
        });
        if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
            let mut e = vec![BigRational::zero(); n * n];
            for i in 0..p {
                for j in 0..p {
                    e[i * n + j] = x[i * p + j].clone();
                }
            }
            for i in 0..q {
                for j in 0..q {
                    e[(i + p) * n + j + p] = y[i * q + j].clone();
                }
            }
            out.exact = Some(e);
        }
        out
    }

    /// `A[rows, cols]`; 1 for empty sets.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Complex64> {
        if rows.len() != cols.len() {
            return Err(Error::arg(format!(
                "minor needs #rows = #cols, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        rows.check_bound(self.order)?;
        cols.check_bound(self.order)?;
        if let Some(q) = self.minor_exact(rows, cols)? {
            return Ok(Complex64::new(exact::to_f64(&q), 0.0));
        }
        let r: Vec<usize> = rows.iter().map(|i| i - 1).collect();
        let c: Vec<usize> = cols.iter().map(|j| j - 1).collect();
        Ok(self.float_minor(&r, &c))
    }

    /// Exact minor when the matrix is rational and the minor order is within
    /// [`EXACT_MINOR_LIMIT`]; `Ok(None)` otherwise.
    pub fn minor_exact(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Option<BigRational>> {
        if rows.len() != cols.len() {
            return Err(Error::arg("minor needs #rows = #cols"));
        }
        rows.check_bound(self.order)?;
        cols.check_bound(self.order)?;
        match &self.exact {
            Some(q) if rows.len() <= EXACT_MINOR_LIMIT => {
                let ints = IntegerRows::new(self.order, q);
                let r: Vec<usize> = rows.iter().map(|i| i - 1).collect();
                let c: Vec<usize> = cols.iter().map(|j| j - 1).collect();
                Ok(Some(ints.minor(&r, &c)))
            }
            _ => Ok(None),
        }
    }

    /// Floating determinant of the 0-based selection.
    pub(crate) fn float_minor(&self, rows: &[usize], cols: &[usize]) -> Complex64 {
        let k = rows.len();
        let mut m: Vec<Complex64> = Vec::with_capacity(k * k);
        for &r in rows {
            for &c in cols {
                m.push(self[(r, c)]);
            }
        }
        lu_det(k, &mut m)
    }

    pub fn det(&self) -> Complex64 {
        let all = IndexSet::range(1, self.order);
        self.minor(&all, &all).expect("full index set is valid")
    }

    /// Operator p-norm for p in {1, 2, ∞}.
    pub fn p_norm(&self, p: PNorm) -> f64 {
        let n = self.order;
        match p {
            PNorm::One => (0..n)
                .map(|j| (0..n).map(|i| self[(i, j)].norm()).sum::<f64>())
                .fold(0.0, f64::max),
            PNorm::Inf => (0..n)
                .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max),
            PNorm::Two => {
                let gram = self.conj_transpose().matmul(self).expect("same order");
                let top = crate::spectral::eigenvalues(&gram)
                    .map(|ev| ev.iter().map(|z| z.re).fold(0.0, f64::max))
                    .unwrap_or(f64::NAN);
                top.max(0.0).sqrt()
            }
        }
    }

    pub fn lu(&self) -> Result<Lu> {
        Lu::factor(self, PIVOT_TOL)
    }

    /// Solves `A x = b` by partially pivoted elimination.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if b.len() != self.order {
            return Err(Error::arg("right-hand side length differs from the order"));
        }
        Ok(self.lu()?.solve(b))
    }

    pub fn solve_real(&self, b: &[f64]) -> Result<Vec<Complex64>> {
        let b: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.solve(&b)
    }

    pub fn inverse(&self) -> Result<Self> {
        let lu = self.lu()?;
        let n = self.order;
        let mut entries = vec![Complex64::zero(); n * n];
        let mut e = vec![Complex64::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = Complex64::zero());
            e[j] = Complex64::one();
            let col = lu.solve(&e);
            for i in 0..n {
                entries[i * n + j] = col[i];
            }
        }
        Self::new(n, entries)
    }

    /// Removes the rational shadow (forces floating-point minors).
    pub fn without_exact(&self) -> Self {
        DenseMatrix { order: self.order, entries: self.entries.clone(), exact: None }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    /// 0-based `(row, column)`.
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.order + j]
    }
}

fn lu_det(k: usize, m: &mut [Complex64]) -> Complex64 {
    let mut det = Complex64::one();
    for c in 0..k {
        let p = (c..k)
            .max_by(|&a, &b| m[a * k + c].norm().total_cmp(&m[b * k + c].norm()))
            .unwrap();
        if m[p * k + c] == Complex64::zero() {
            return Complex64::zero();
        }
        if p != c {
            for j in 0..k {
                m.swap(p * k + j, c * k + j);
            }
            det = -det;
        }
        let pivot = m[c * k + c];
        det *= pivot;
        for r in c + 1..k {
            let f = m[r * k + c] / pivot;
            if f == Complex64::zero() {
                continue;
            }
            for j in c + 1..k {
                let v = m[c * k + j];
                m[r * k + j] -= f * v;
            }
        }
    }
    det
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &DenseMatrix, rel_tol: f64) -> Result<Self> {
        let n = a.order();
        let mut lu = a.entries().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| lu[x * n + c].norm().total_cmp(&lu[y * n + c].norm()))
                .unwrap();
            let mag = lu[p * n + c].norm();
            if mag <= rel_tol * scale {
                return Err(Error::Singular { pivot: c + 1, magnitude: mag });
            }
            if p != c {
                for j in 0..n {
                    lu.swap(p * n + j, c * n + j);
                }
                perm.swap(p, c);
            }
            let pivot = lu[c * n + c];
            for r in c + 1..n {
                let f = lu[r * n + c] / pivot;
                lu[r * n + c] = f;
                if f == Complex64::zero() {
                    continue;
                }
                for j in c + 1..n {
                    let v = lu[c * n + j];
                    lu[r * n + j] -= f * v;
                }
            }
        }
        Ok(Lu { n, lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = x[j];
                x[i] -= self.lu[i * n + j] * v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = x[j];
                x[i] -= self.lu[i * n + j] * v;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

/// The three operator norms used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PNorm {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Inf,
}

impl std::str::FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(PNorm::One),
            "2" => Ok(PNorm::Two),
            "inf" | "Inf" | "∞" => Ok(PNorm::Inf),
            other => Err(Error::arg(format!("unsupported p-norm {other:?}; use 1, 2 or inf"))),
        }
    }
}

/// Strictly increasing 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::arg("indices are 1-based"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::arg(format!("indices must be strictly increasing: {indices:?}")));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `p:q`, empty when `p > q`.
    pub fn range(p: usize, q: usize) -> Self {
        IndexSet((p.max(1)..=q).collect())
    }

    /// From 0-based sorted indices.
    pub fn from_zero_based(idx: &[usize]) -> Self {
        IndexSet(idx.iter().map(|i| i + 1).collect())
    }

    /// Bit `i` of `mask` selects index `i + 1`.
    pub fn from_mask(mask: u64) -> Self {
        IndexSet((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn check_bound(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last > n => Err(Error::arg(format!("index {last} exceeds order {n}"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

// JSON file format: {"order": n, "entries": [[re, im], ...]} row-major, with
// exact entries optionally written as {"num": p, "den": q}.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntLit {
    Small(i64),
    Big(String),
}

impl IntLit {
    fn to_bigint(&self) -> Result<num_bigint::BigInt> {
        match self {
            IntLit::Small(v) => Ok((*v).into()),
            IntLit::Big(s) => s.parse().map_err(|_| Error::arg(format!("bad integer {s:?}"))),
        }
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Self {
        match i64::try_from(v) {
            Ok(x) => IntLit::Small(x),
            Err(_) => IntLit::Big(v.to_string()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Complex([f64; 2]),
    Rational { num: IntLit, den: IntLit },
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    order: usize,
    entries: Vec<EntryJson>,
}

impl DenseMatrix {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson =
            serde_json::from_str(text).map_err(|e| Error::arg(format!("matrix JSON: {e}")))?;
        let all_rational = raw.entries.iter().all(|e| matches!(e, EntryJson::Rational { .. }));
        if all_rational {
            let mut q = Vec::with_capacity(raw.entries.len());
            for e in &raw.entries {
                if let EntryJson::Rational { num, den } = e {
                    let den = den.to_bigint()?;
                    if den.is_zero() {
                        return Err(Error::arg("zero denominator in matrix JSON"));
                    }
                    q.push(BigRational::new(num.to_bigint()?, den));
                }
            }
            return Self::from_rational(raw.order, q);
        }
        let mut z = Vec::with_capacity(raw.entries.len());
        for e in &raw.entries {
            z.push(match e {
                EntryJson::Complex([re, im]) => Complex64::new(*re, *im),
                EntryJson::Rational { num, den } => {
                    let den = den.to_bigint()?;
                    if den.is_zero() {
                        return Err(Error::arg("zero denominator in matrix JSON"));
                    }
                    Complex64::new(exact::to_f64(&BigRational::new(num.to_bigint()?, den)), 0.0)
                }
            });
        }
        Self::new(raw.order, z)
    }

    /// Exact matrices are written with rational entries.
    pub fn to_json(&self) -> String {
        let entries = match &self.exact {
            Some(q) => q
                .iter()
                .map(|x| EntryJson::Rational {
                    num: IntLit::from_bigint(x.numer()),
                    den: IntLit::from_bigint(x.denom()),
                })
                .collect(),
            None => self.entries.iter().map(|z| EntryJson::Complex([z.re, z.im])).collect(),
        };
        serde_json::to_string(&MatrixJson { order: self.order, entries }).expect("serializable")
    }
}
