//! Dense eigenvalues: diagonal balancing, Householder reduction to upper
//! Hessenberg form, then shifted QR.
//!
//! Real input goes through the Francis double-shift iteration, which keeps the
//! arithmetic real and returns non-real eigenvalues as exact conjugate pairs.
//! Complex input uses single-shift QR with Wilkinson shifts.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    /// Subdiagonal entries below `deflation_tol * (|h_{k-1,k-1}| + |h_kk|)` are dropped.
    pub deflation_tol: f64,
    /// Total QR sweeps allowed, per unit of order.
    pub sweeps_per_order: usize,
    pub balance: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { deflation_tol: 1e-14, sweeps_per_order: 100, balance: true }
    }
}

pub fn eigenvalues_with(a: &DenseMatrix, opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let n = a.order();
    let mut h: Vec<Complex64> = a.entries().to_vec();
    if opts.balance {
        balance(n, &mut h);
    }
    if a.is_real() {
        let mut hr: Vec<f64> = h.iter().map(|z| z.re).collect();
        hessenberg_real(n, &mut hr);
        francis_qr(n, &mut hr, opts)
    } else {
        hessenberg_complex(n, &mut h);
        single_shift_qr(n, &mut h, opts)
    }
}

/// Radix-2 diagonal similarity that evens out row and column norms.
fn balance(n: usize, a: &mut [Complex64]) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].l1_norm();
                    r += a[i * n + j].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= inv;
                    a[j * n + i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

fn hessenberg_real(n: usize, h: &mut [f64]) {
    if n < 3 {
        return;
    }
    let mut ort = vec![0.0; n];
    for m in 1..n - 1 {
        let scale: f64 = (m..n).map(|i| h[i * n + m - 1].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..n).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            hh += ort[i] * ort[i];
        }
        let g = if ort[m] > 0.0 { -hh.sqrt() } else { hh.sqrt() };
        hh -= ort[m] * g;
        ort[m] -= g;
        for j in m..n {
            let mut f = 0.0;
            for i in (m..n).rev() {
                f += ort[i] * h[i * n + j];
            }
            f /= hh;
            for i in m..n {
                h[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..n {
            let mut f = 0.0;
            for j in (m..n).rev() {
                f += ort[j] * h[i * n + j];
            }
            f /= hh;
            for j in m..n {
                h[i * n + j] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        h[m * n + m - 1] = scale * g;
        for i in m + 1..n {
            h[i * n + m - 1] = 0.0;
        }
    }
}

/// Francis double-shift QR on a real upper Hessenberg matrix, eigenvalues only.
fn francis_qr(nn: usize, h: &mut [f64], opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let idx = |i: usize, j: usize| i * nn + j;
    let mut d = vec![0.0; nn];
    let mut e = vec![0.0; nn];
    let eps = opts.deflation_tol;
    let cap = opts.sweeps_per_order * nn.max(1);
    let mut total = 0usize;

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[idx(i, j)].abs();
        }
    }

    let mut n = nn as isize - 1;
    let low = 0isize;
    let mut exshift = 0.0;
    let mut iter = 0usize;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);

    while n >= low {
        let nu = n as usize;
        let mut l = n;
        while l > low {
            let lu = l as usize;
            s = h[idx(lu - 1, lu - 1)].abs() + h[idx(lu, lu)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[idx(lu, lu - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            h[idx(nu, nu)] += exshift;
            d[nu] = h[idx(nu, nu)];
            e[nu] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            w = h[idx(nu, nu - 1)] * h[idx(nu - 1, nu)];
            p = (h[idx(nu - 1, nu - 1)] - h[idx(nu, nu)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[idx(nu, nu)] += exshift;
            h[idx(nu - 1, nu - 1)] += exshift;
            x = h[idx(nu, nu)];
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[nu - 1] = x + z;
                d[nu] = d[nu - 1];
                if z != 0.0 {
                    d[nu] = x - w / z;
                }
                e[nu - 1] = 0.0;
                e[nu] = 0.0;
            } else {
                d[nu - 1] = x + p;
                d[nu] = x + p;
                e[nu - 1] = z;
                e[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            total += 1;
            if total > cap {
                return Err(Error::NoConvergence { sweeps: cap, block: (l as usize + 1, nu + 1) });
            }
            x = h[idx(nu, nu)];
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h[idx(nu - 1, nu - 1)];
                w = h[idx(nu, nu - 1)] * h[idx(nu - 1, nu)];
            }
            // exceptional shifts break cycles on structured inputs
            if iter == 10 {
                exshift += x;
                for i in low as usize..=nu {
                    h[idx(i, i)] -= x;
                }
                s = h[idx(nu, nu - 1)].abs() + h[idx(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low as usize..=nu {
                        h[idx(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;

            let lu = l as usize;
            let mut m = nu - 2;
            loop {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == lu {
                    break;
                }
                if h[idx(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                h[idx(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }

            for k in m..nu {
                let notlast = k != nu - 1;
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if notlast { h[idx(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                } else {
                    x = 0.0;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[idx(k, k - 1)] = -s * x;
                    } else if lu != m {
                        h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        p = h[idx(k, j)] + q * h[idx(k + 1, j)];
                        if notlast {
                            p += r * h[idx(k + 2, j)];
                            h[idx(k + 2, j)] -= p * z;
                        }
                        h[idx(k, j)] -= p * x;
                        h[idx(k + 1, j)] -= p * y;
                    }
                    for i in lu..=nu.min(k + 3) {
                        p = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                        if notlast {
                            p += z * h[idx(i, k + 2)];
                            h[idx(i, k + 2)] -= p * r;
                        }
                        h[idx(i, k)] -= p;
                        h[idx(i, k + 1)] -= p * q;
                    }
                }
            }
        }
    }
    Ok(d.into_iter().zip(e).map(|(re, im)| Complex64::new(re, im)).collect())
}

fn hessenberg_complex(n: usize, h: &mut [Complex64]) {
    if n < 3 {
        return;
    }
    let mut v = vec![Complex64::zero(); n];
    for m in 1..n - 1 {
        let alpha_norm: f64 = (m..n).map(|i| h[i * n + m - 1].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[m * n + m - 1];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase*|x| e_1, reflector I - 2 v v^H / (v^H v)
        for i in m..n {
            v[i] = h[i * n + m - 1];
        }
        v[m] += phase * alpha_norm;
        let vnorm2: f64 = (m..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in 0..n {
            let mut f = Complex64::zero();
            for i in m..n {
                f += v[i].conj() * h[i * n + j];
            }
            f *= 2.0 / vnorm2;
            for i in m..n {
                h[i * n + j] -= v[i] * f;
            }
        }
        for i in 0..n {
            let mut f = Complex64::zero();
            for j in m..n {
                f += h[i * n + j] * v[j];
            }
            f *= 2.0 / vnorm2;
            for j in m..n {
                h[i * n + j] -= f * v[j].conj();
            }
        }
        for i in m + 1..n {
            h[i * n + m - 1] = Complex64::zero();
        }
    }
}

fn single_shift_qr(n: usize, h: &mut [Complex64], opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut eig = vec![Complex64::zero(); n];
    let cap = opts.sweeps_per_order * n.max(1);
    let mut total = 0usize;
    let mut iter = 0usize;
    let mut hi = n as isize - 1;
    let mut rot: Vec<(Complex64, Complex64)> = vec![(Complex64::zero(), Complex64::zero()); n];

    while hi >= 0 {
        let hu = hi as usize;
        let mut l = hu;
        while l > 0 {
            let s = h[idx(l - 1, l - 1)].l1_norm() + h[idx(l, l)].l1_norm();
            if h[idx(l, l - 1)].l1_norm() <= opts.deflation_tol * s || h[idx(l, l - 1)] == Complex64::zero() {
                h[idx(l, l - 1)] = Complex64::zero();
                break;
            }
            l -= 1;
        }
        if l == hu {
            eig[hu] = h[idx(hu, hu)];
            hi -= 1;
            iter = 0;
            continue;
        }
        total += 1;
        if total > cap {
            return Err(Error::NoConvergence { sweeps: cap, block: (l + 1, hu + 1) });
        }
        let mu = if iter > 0 && iter % 10 == 0 {
            let s = h[idx(hu, hu - 1)].re.abs()
                + if hu >= 2 { h[idx(hu - 1, hu - 2)].re.abs() } else { 0.0 };
            h[idx(hu, hu)] + s
        } else {
            wilkinson_shift(
                h[idx(hu - 1, hu - 1)],
                h[idx(hu - 1, hu)],
                h[idx(hu, hu - 1)],
                h[idx(hu, hu)],
            )
        };
        iter += 1;

        for k in l..=hu {
            h[idx(k, k)] -= mu;
        }
        for k in l..hu {
            let a = h[idx(k, k)];
            let b = h[idx(k + 1, k)];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::zero())
            } else {
                (a / r, b / r)
            };
            rot[k] = (c, s);
            for j in k..=hu {
                let top = h[idx(k, j)];
                let bot = h[idx(k + 1, j)];
                h[idx(k, j)] = c.conj() * top + s.conj() * bot;
                h[idx(k + 1, j)] = -s * top + c * bot;
            }
        }
        for k in l..hu {
            let (c, s) = rot[k];
            for i in l..=hu.min(k + 2) {
                let left = h[idx(i, k)];
                let right = h[idx(i, k + 1)];
                h[idx(i, k)] = left * c + right * s;
                h[idx(i, k + 1)] = -left * s.conj() + right * c.conj();
            }
        }
        for k in l..=hu {
            h[idx(k, k)] += mu;
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let r1 = d + half + disc;
    let r2 = d + half - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}
