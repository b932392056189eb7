//! B-spline Gram matrices of the least-squares problem, their diagonal
//! symmetrization, and the seeded experiment on ‖G^{−1}‖∞ over wild meshes.

use std::fmt::Write as _;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invertibility::{self, Evidence};
use crate::matrix::{DenseMatrix, PNorm};
use crate::predicates;
use crate::samples;
use crate::spectral;

/// Largest order at which the Gram matrix is run through the oscillatory test.
pub const OSCILLATORY_CHECK_LIMIT: usize = 10;

/// Knots t_1 ≤ … ≤ t_{n+k} for n B-splines of order k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotSequence {
    knots: Vec<f64>,
    order: usize,
}

impl KnotSequence {
    /// Requires finite nondecreasing knots with t_i < t_{i+k} for every i.
    pub fn new(knots: Vec<f64>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::arg("spline order must be positive"));
        }
        if knots.len() <= order {
            return Err(Error::arg(format!("order {order} needs at least {} knots, got {}", order + 1, knots.len())));
        }
        if knots.iter().any(|x| !x.is_finite()) {
            return Err(Error::arg("knots must be finite"));
        }
        if let Some(i) = knots.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::arg(format!("knots decrease at position {}", i + 2)));
        }
        if let Some(i) = (0..knots.len() - order).find(|&i| knots[i] >= knots[i + order]) {
            return Err(Error::arg(format!("degenerate knots: t_{} = t_{}", i + 1, i + order + 1)));
        }
        Ok(KnotSequence { knots, order })
    }

    /// Knots 0, 1, …, n+k−1.
    pub fn uniform(n: usize, order: usize) -> Result<Self> {
        Self::new((0..n + order).map(|i| i as f64).collect(), order)
    }

    /// Simple knots on [0, 1] with spacings exp(u·stress), u uniform in [−1, 1].
    pub fn wild<R: Rng>(n: usize, order: usize, stress: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=700.0).contains(&stress) {
            return Err(Error::arg(format!("stress must lie in [0, 700], got {stress}")));
        }
        let gaps: Vec<f64> = (0..n + order - 1).map(|_| (rng.gen_range(-1.0..=1.0) * stress).exp()).collect();
        let total: f64 = gaps.iter().sum();
        let mut knots = Vec::with_capacity(n + order);
        let mut acc = 0.0;
        knots.push(0.0);
        for g in &gaps {
            acc += g / total;
            knots.push(acc);
        }
        Self::new(knots, order)
    }

    /// A JSON array of knots.
    pub fn from_json(text: &str, order: usize) -> Result<Self> {
        let knots: Vec<f64> = serde_json::from_str(text).map_err(|e| Error::arg(format!("knot JSON: {e}")))?;
        Self::new(knots, order)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of B-splines n.
    pub fn dimension(&self) -> usize {
        self.knots.len() - self.order
    }

    /// k/(t_{i+k} − t_i), 0-based i.
    fn row_scale(&self, i: usize) -> f64 {
        self.order as f64 / (self.knots[i + self.order] - self.knots[i])
    }
}

/// B_{i,k}(x) for 1-based i by the two-term recurrence. The last knot
/// interval is closed on the right.
pub fn bspline_eval(t: &KnotSequence, i: usize, x: f64) -> Result<f64> {
    let n = t.dimension();
    let k = t.order;
    let tk = &t.knots;
    if i == 0 || i > n {
        return Err(Error::arg(format!("B-spline index {i} outside 1..={n}")));
    }
    if !(x >= tk[0] && x <= tk[tk.len() - 1]) {
        return Err(Error::arg(format!("x = {x} outside [{}, {}]", tk[0], tk[tk.len() - 1])));
    }
    let i = i - 1;
    let last = (0..tk.len() - 1).rev().find(|&j| tk[j] < tk[j + 1]).expect("nondegenerate knots");
    // order-1 values on t_i .. t_{i+k}
    let mut b: Vec<f64> = (i..i + k)
        .map(|j| {
            let inside = tk[j] <= x && x < tk[j + 1];
            let right_end = j == last && x == tk[j + 1];
            if inside || right_end {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for m in 2..=k {
        for l in 0..=k - m {
            let j = i + l;
            let left = if tk[j + m - 1] > tk[j] { (x - tk[j]) / (tk[j + m - 1] - tk[j]) * b[l] } else { 0.0 };
            let right = if tk[j + m] > tk[j + 1] { (tk[j + m] - x) / (tk[j + m] - tk[j + 1]) * b[l + 1] } else { 0.0 };
            b[l] = left + right;
        }
    }
    Ok(b[0])
}

/// G(i,j) = k/(t_{i+k} − t_i) ∫ B_{i,k} B_{j,k}.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub matrix: DenseMatrix,
    pub knots: KnotSequence,
}

/// Gauss–Legendre with k nodes on each knot interval, exact for the
/// degree 2k−2 integrands.
pub fn gram_matrix(t: &KnotSequence) -> Result<GramMatrix> {
    let n = t.dimension();
    let k = t.order;
    let tk = &t.knots;
    let rule = GaussLegendre::new(NonZeroUsize::new(k).expect("order is positive"));
    let mut m = vec![0.0; n * n];
    for l in 0..tk.len() - 1 {
        let (a, b) = (tk[l], tk[l + 1]);
        if a >= b {
            continue;
        }
        // splines alive on [t_l, t_{l+1}] are l−k+1 ..= l (0-based)
        let lo = (l + 1).saturating_sub(k);
        let hi = l.min(n - 1);
        if lo > hi {
            continue;
        }
        for (node, weight) in rule.iter() {
            let x = 0.5 * ((b - a) * node + (b + a));
            let w = 0.5 * (b - a) * weight;
            let vals: Vec<f64> = (lo..=hi).map(|i| bspline_eval(t, i + 1, x)).collect::<Result<_>>()?;
            for (p, vi) in vals.iter().enumerate() {
                for (q, vj) in vals.iter().enumerate() {
                    m[(lo + p) * n + lo + q] += w * vi * vj;
                }
            }
        }
    }
    let matrix = DenseMatrix::from_fn(n, |i, j| t.row_scale(i) * m[i * n + j]);
    Ok(GramMatrix { matrix, knots: t.clone() })
}

/// (D, H) with D(i,i) = sqrt(k/(t_{i+k} − t_i)) and H = D^{−1} G D symmetric.
pub fn symmetrize(g: &GramMatrix) -> (Vec<f64>, DenseMatrix) {
    let n = g.matrix.order();
    let d: Vec<f64> = (0..n).map(|i| g.knots.row_scale(i).sqrt()).collect();
    let h = DenseMatrix::from_fn(n, |i, j| {
        if i <= j {
            g.matrix[(i, j)].re * d[j] / d[i]
        } else {
            g.matrix[(j, i)].re * d[i] / d[j]
        }
    });
    (d, h)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeBoorConfig {
    pub order: usize,
    pub samples: usize,
    pub n_max: usize,
    /// Upper end of the per-sample mesh stress, drawn uniformly in [0, stress].
    pub stress: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeBoorRow {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub inv_norm_inf: f64,
    pub lambda_min: f64,
    /// ‖w‖∞ / (λ_min min|w_i|) for the λ_min eigenvector w of G.
    pub eigenvector_bound: Option<f64>,
    /// Mesh ratio max gap / min gap.
    pub mesh_ratio: f64,
    /// `None` above [`OSCILLATORY_CHECK_LIMIT`], where it is taken from the literature.
    pub oscillatory: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeBoorReport {
    pub config: DeBoorConfig,
    pub rows: Vec<DeBoorRow>,
    pub max_inv_norm_inf: f64,
    pub min_lambda_min: f64,
    /// Largest eigenvector_bound / ‖G^{−1}‖∞.
    pub max_bound_gap: f64,
}

impl DeBoorReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,n,k,inv_norm_inf,lambda_min\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{:e},{:e}", r.seed, r.n, r.k, r.inv_norm_inf, r.lambda_min);
        }
        out
    }
}

/// One Gram sample: norms, spectrum and the eigenvector bound.
pub fn gram_row(t: &KnotSequence, seed: u64) -> Result<DeBoorRow> {
    let g = gram_matrix(t)?;
    let n = t.dimension();
    let inv_norm_inf = g.matrix.inverse()?.p_norm(PNorm::Inf);
    let (d, h) = symmetrize(&g);
    let (lambda_min, v) = invertibility::min_eigenpair(&h)?;
    // G (D v) = λ D v
    let w: Vec<f64> = v.iter().zip(&d).map(|(x, s)| x * s).collect();
    let y: Vec<f64> = w.iter().map(|x| lambda_min * x).collect();
    let eigenvector_bound = invertibility::deboor_lemma_bound(&g.matrix, &w, &y, Evidence::Assume).ok().map(|b| b.bound);
    let gaps: Vec<f64> = t.knots.windows(2).map(|p| p[1] - p[0]).filter(|&x| x > 0.0).collect();
    let mesh_ratio = gaps.iter().fold(0.0f64, |a, &b| a.max(b)) / gaps.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let oscillatory = if n <= OSCILLATORY_CHECK_LIMIT {
        Some(matches!(predicates::is_oscillatory(&g.matrix), Ok(r) if r.holds))
    } else {
        None
    };
    Ok(DeBoorRow { seed, n, k: t.order, inv_norm_inf, lambda_min, eigenvector_bound, mesh_ratio, oscillatory })
}

/// Sample s uses seed `config.seed + s` for its order n ∈ [max(k,2), n_max],
/// its stress and its spacings.
pub fn deboor_conjecture_experiment(config: &DeBoorConfig) -> Result<DeBoorReport> {
    let k = config.order;
    if !(1..=4).contains(&k) {
        return Err(Error::arg(format!("order must be in 1..=4, got {k}")));
    }
    let n_lo = k.max(2);
    if config.n_max < n_lo {
        return Err(Error::arg(format!("n_max must be at least {n_lo}")));
    }
    if config.samples == 0 {
        return Err(Error::arg("at least one sample is needed"));
    }
    let mut rows = Vec::with_capacity(config.samples);
    for s in 0..config.samples as u64 {
        let seed = config.seed.wrapping_add(s);
        let mut rng = samples::rng(seed);
        let n = rng.gen_range(n_lo..=config.n_max);
        let stress = rng.gen_range(0.0..=config.stress);
        let t = KnotSequence::wild(n, k, stress, &mut rng)?;
        rows.push(gram_row(&t, seed)?);
    }
    let max_inv_norm_inf = rows.iter().map(|r| r.inv_norm_inf).fold(0.0, f64::max);
    let min_lambda_min = rows.iter().map(|r| r.lambda_min).fold(f64::INFINITY, f64::min);
    let max_bound_gap = rows
        .iter()
        .filter_map(|r| r.eigenvector_bound.map(|b| b / r.inv_norm_inf))
        .fold(0.0, f64::max);
    Ok(DeBoorReport { config: config.clone(), rows, max_inv_norm_inf, min_lambda_min, max_bound_gap })
}

/// Ascending spectrum of the symmetrized Gram matrix.
pub fn gram_spectrum(g: &GramMatrix) -> Result<Vec<f64>> {
    spectral::hermitian_eigenvalues(&symmetrize(g).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn knot_validation() {
        assert!(KnotSequence::new(vec![0.0, 1.0, 1.0, 2.0], 2).is_ok());
        let err = KnotSequence::new(vec![0.0, 1.0, 1.0, 1.0, 2.0], 2).unwrap_err();
        assert!(matches!(err, Error::Argument(m) if m.contains("t_2 = t_4")));
        assert!(KnotSequence::new(vec![0.0, 2.0, 1.0], 1).is_err());
        assert!(KnotSequence::new(vec![0.0], 1).is_err());
        let t = KnotSequence::from_json("[0, 0.5, 1.5, 3]", 2).unwrap();
        assert_eq!(t.dimension(), 2);
    }

    #[test]
    fn low_order_values() {
        let t = KnotSequence::uniform(4, 1).unwrap();
        assert_eq!(bspline_eval(&t, 2, 1.5).unwrap(), 1.0);
        assert_eq!(bspline_eval(&t, 2, 2.0).unwrap(), 0.0);
        // right end belongs to the last interval
        assert_eq!(bspline_eval(&t, 4, 4.0).unwrap(), 1.0);
        let t = KnotSequence::uniform(3, 2).unwrap();
        assert_abs_diff_eq!(bspline_eval(&t, 2, 2.0).unwrap(), 1.0);
        assert_abs_diff_eq!(bspline_eval(&t, 2, 1.5).unwrap(), 0.5);
        assert!(bspline_eval(&t, 2, 4.5).is_err());
        assert!(bspline_eval(&t, 4, 1.0).is_err());
    }

    #[test]
    fn cubic_uniform_values() {
        // B_{1,4} on 0..4 at x = 2 is 2/3, at x = 1 is 1/6
        let t = KnotSequence::uniform(1, 4).unwrap();
        assert_abs_diff_eq!(bspline_eval(&t, 1, 2.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bspline_eval(&t, 1, 1.0).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn partition_of_unity_on_random_knots() {
        let mut rng = samples::rng(5);
        for k in 1..=4 {
            let t = KnotSequence::wild(12, k, 3.0, &mut rng).unwrap();
            let (a, b) = (t.knots()[k - 1], t.knots()[t.dimension()]);
            for g in 0..=1000 {
                let x = a + (b - a) * g as f64 / 1000.0;
                let s: f64 = (1..=t.dimension()).map(|i| bspline_eval(&t, i, x).unwrap()).sum();
                assert!((s - 1.0).abs() < 1e-12, "k={k} x={x} sum={s}");
            }
        }
    }

    #[test]
    fn order_one_gram_is_identity() {
        let t = KnotSequence::new(vec![0.0, 0.1, 0.5, 2.0, 2.2], 1).unwrap();
        let g = gram_matrix(&t).unwrap();
        assert!(g.matrix.max_abs_diff(&DenseMatrix::identity(4)) < 1e-14);
        let (d, h) = symmetrize(&g);
        assert_abs_diff_eq!(d[0], 10f64.sqrt(), epsilon = 1e-12);
        assert!(h.max_abs_diff(&DenseMatrix::identity(4)) < 1e-14);
    }

    #[test]
    fn linear_uniform_gram_interior() {
        let t = KnotSequence::uniform(8, 2).unwrap();
        let g = gram_matrix(&t).unwrap();
        for i in 1..7 {
            assert_abs_diff_eq!(g.matrix[(i, i)].re, 2.0 / 3.0, epsilon = 1e-14);
            assert_abs_diff_eq!(g.matrix[(i, i + 1)].re, 1.0 / 6.0, epsilon = 1e-14);
            assert_abs_diff_eq!(g.matrix[(i, i - 1)].re, 1.0 / 6.0, epsilon = 1e-14);
        }
        let (d, h) = symmetrize(&g);
        assert!(d.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        assert!(h.max_abs_diff(&g.matrix) < 1e-15);
    }

    #[test]
    fn band_width_and_symmetrization() {
        let mut rng = samples::rng(9);
        let t = KnotSequence::wild(15, 3, 4.0, &mut rng).unwrap();
        let g = gram_matrix(&t).unwrap();
        let n = 15;
        for i in 0..n {
            for j in 0..n {
                let x = g.matrix[(i, j)].re;
                assert!(x >= 0.0);
                if i.abs_diff(j) >= 3 {
                    assert_eq!(x, 0.0);
                }
            }
            assert!(g.matrix[(i, i + 2.min(n - 1 - i))].re > 0.0);
        }
        let (_, h) = symmetrize(&g);
        assert!(h.max_abs_diff(&h.transpose()) < 1e-12);
        let mut from_g: Vec<f64> = spectral::eigenvalues(&g.matrix).unwrap().iter().map(|z| z.re).collect();
        from_g.sort_by(f64::total_cmp);
        for (a, b) in from_g.iter().zip(gram_spectrum(&g).unwrap()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn unscaled_row_sums_are_spline_integrals() {
        // Σ_j ∫B_i B_j = ∫B_i = (t_{i+k} − t_i)/k where the B_j sum to one
        // on the support of B_i
        let mut rng = samples::rng(2);
        let t = KnotSequence::wild(10, 4, 2.0, &mut rng).unwrap();
        let g = gram_matrix(&t).unwrap();
        for i in 3..=6 {
            let row: f64 = (0..10).map(|j| g.matrix[(i, j)].re).sum();
            assert!((row - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn experiment_rows_and_csv() {
        let cfg = DeBoorConfig { order: 1, samples: 3, n_max: 8, stress: 10.0, seed: 0 };
        let r = deboor_conjecture_experiment(&cfg).unwrap();
        assert!(r.rows.iter().all(|row| (row.inv_norm_inf - 1.0).abs() < 1e-12));
        assert!(r.to_csv().starts_with("seed,n,k,inv_norm_inf,lambda_min\n0,"));
        let linear = gram_row(&KnotSequence::uniform(50, 2).unwrap(), 0).unwrap();
        assert!(linear.inv_norm_inf <= 3.0 + 1e-12, "{}", linear.inv_norm_inf);
        let bad = DeBoorConfig { order: 5, ..cfg };
        assert!(deboor_conjecture_experiment(&bad).is_err());
    }
}
