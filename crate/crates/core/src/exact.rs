//! Exact rational helpers: parsing, conversion and fraction-free determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `"p/q"`, an integer, or a decimal such as `"0.2"` / `"-1.5e-3"` into an
/// exact rational. Decimals are read digit by digit, so `"0.2"` is exactly `1/5`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::arg("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::arg(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::arg(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::arg(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::arg(format!("not a rational literal: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

/// Exact binary value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::arg(format!("non-finite value {x}")))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 can fail on huge operands; fall back to a scaled quotient.
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift >= 0 {
            x / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            x * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Integer power for a rational with a non-negative exponent.
pub fn rpow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A rational matrix with each row cleared to integers: `rows[i] = scale[i] * A(i, :)`.
/// Minors over a row set are `bareiss_det(sub) / prod(scale[row])`.
#[derive(Debug, Clone)]
pub struct IntegerRows {
    pub rows: Vec<Vec<BigInt>>,
    pub scale: Vec<BigInt>,
}

impl IntegerRows {
    pub fn new(order: usize, entries: &[BigRational]) -> Self {
        let mut rows = Vec::with_capacity(order);
        let mut scale = Vec::with_capacity(order);
        for i in 0..order {
            let row = &entries[i * order..(i + 1) * order];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect::<Vec<_>>(),
            );
            scale.push(l);
        }
        IntegerRows { rows, scale }
    }

    /// Exact minor with 0-based row and column index lists of equal length.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.rows[r][c].clone()).collect())
            .collect();
        let det = bareiss_det(sub);
        if det.is_zero() {
            return BigRational::zero();
        }
        let denom = rows.iter().fold(BigInt::one(), |acc, &r| acc * &self.scale[r]);
        BigRational::new(det, denom)
    }
}

/// `max(x, 0)` on integers, the `(x)_+` of exponent bookkeeping.
pub fn positive_part(x: i64) -> u64 {
    x.max(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.2").unwrap(), q(1, 5));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), q(-3, 2000));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(".25").unwrap(), q(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-2));
        // needs a row swap
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(-3), BigInt::from(8)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 6), BigInt::from(134596));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(10, 0), BigInt::one());
    }

    #[test]
    fn integer_rows_minor_respects_row_scaling() {
        let entries = vec![q(1, 2), q(1, 3), q(1, 4), q(1, 5)];
        let rows = IntegerRows::new(2, &entries);
        // 1/10 - 1/12 = 1/60
        assert_eq!(rows.minor(&[0, 1], &[0, 1]), q(1, 60));
        assert_eq!(rows.minor(&[1], &[0]), q(1, 4));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = rpow(&q(1, 2), 1200) * rpow(&q(3, 1), 700);
        let v = to_f64(&big);
        let expected = (700.0 * 3f64.ln() - 1200.0 * 2f64.ln()).exp();
        assert!((v / expected - 1.0).abs() < 1e-10, "{v} vs {expected}");
    }
}
