//! Bernoulli numbers and truncated univariate power series over `Q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// Signed Bernoulli numbers `B_0..=B_m` from `Σ_{j<=k} C(k+1, j) B_j = 0`,
/// with `B_1 = -1/2`.
pub fn bernoulli_table(m: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(m + 1);
    b.push(Q::one());
    for k in 1..=m {
        let mut s = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Q::from_integer(binomial(BigInt::from(k + 1), BigInt::from(j))) * bj;
        }
        b.push(-s / Q::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `|B_k|` for even `k >= 2`.
pub fn bernoulli_abs(k: u32) -> Result<Q> {
    if k % 2 == 1 {
        return Err(Error::OddIndex(k));
    }
    if k == 0 {
        return Err(Error::PreconditionViolated("bernoulli_abs needs k >= 2".into()));
    }
    Ok(bernoulli_table(k as usize)[k as usize].abs())
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `c_0 + c_1 x + … + c_N x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order + 1, Q::zero());
        Self { coeffs }
    }

    pub fn from_i64(num_den: &[(i64, i64)]) -> Self {
        let coeffs: Vec<Q> = num_den.iter().map(|&(p, q)| Q::new(p.into(), q.into())).collect();
        let n = coeffs.len().saturating_sub(1);
        Self::new(coeffs, n)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
            .collect();
        Self { coeffs }
    }

    /// `self / other`; the constant term of `other` must be non-zero.
    pub fn div(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c0 = &other.coeffs[0];
        assert!(!c0.is_zero(), "division by a series without constant term");
        let mut q: Vec<Q> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut s = self.coeffs[k].clone();
            for (i, qi) in q.iter().enumerate() {
                s -= qi * &other.coeffs[k - i];
            }
            q.push(s / c0);
        }
        Self { coeffs: q }
    }

    /// `Σ (±1)^k x^k / k!`.
    pub fn exp(order: usize, negative: bool) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                let c = Q::new(BigInt::one(), factorial(k));
                if negative && k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Self { coeffs }
    }

    /// Drop the constant term and divide by `x`; the order drops by one.
    fn shift_down(&self) -> Self {
        assert!(self.coeffs[0].is_zero());
        Self { coeffs: self.coeffs[1..].to_vec() }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `exp(-x)`
    ExpNeg,
    /// `x / (1 - exp(-x))`
    Todd,
    /// `(x/2) / tanh(x/2)`
    LFactor,
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp_neg" => Ok(Self::ExpNeg),
            "todd" => Ok(Self::Todd),
            "l_factor" => Ok(Self::LFactor),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

pub fn series(kind: SeriesKind, order: usize) -> TruncatedSeries {
    match kind {
        SeriesKind::ExpNeg => TruncatedSeries::exp(order, true),
        SeriesKind::Todd => {
            // x / (1 - e^{-x}) = 1 / ((1 - e^{-x}) / x)
            let mut num = TruncatedSeries::exp(order + 1, true);
            for c in &mut num.coeffs {
                *c = -c.clone();
            }
            num.coeffs[0] += Q::one();
            TruncatedSeries::new(vec![Q::one()], order).div(&num.shift_down())
        }
        SeriesKind::LFactor => {
            // (x/2)(e^x + 1)/(e^x - 1) = ((e^x + 1)/2) / ((e^x - 1)/x)
            let e = TruncatedSeries::exp(order + 1, false);
            let half = Q::new(1.into(), 2.into());
            let mut num = TruncatedSeries::new(e.coeffs[..=order].to_vec(), order);
            num.coeffs[0] += Q::one();
            for c in &mut num.coeffs {
                *c *= &half;
            }
            let mut den = e.clone();
            den.coeffs[0] -= Q::one();
            num.div(&den.shift_down())
        }
    }
}

/// `1 + Σ_{m>=1} (-1)^{m+1} |B_{2m}|/(2m)! x^{2m}`, the expansion of
/// `(x/2)/tanh(x/2)` in Bernoulli numbers.
pub fn l_factor_from_bernoulli(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Q::zero(); order + 1];
    coeffs[0] = Q::one();
    for m in 1..=order / 2 {
        let b = bernoulli_abs(2 * m as u32).expect("even index") / Q::from_integer(factorial(2 * m));
        coeffs[2 * m] = if m % 2 == 1 { b } else { -b };
    }
    TruncatedSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Q {
        Q::new(p.into(), q.into())
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_abs(2).unwrap(), r(1, 6));
        assert_eq!(bernoulli_abs(4).unwrap(), r(1, 30));
        assert_eq!(bernoulli_abs(6).unwrap(), r(1, 42));
        assert_eq!(bernoulli_abs(12).unwrap(), r(691, 2730));
        assert_eq!(bernoulli_abs(3), Err(Error::OddIndex(3)));
        let t = bernoulli_table(5);
        assert_eq!(t[1], r(-1, 2));
        assert_eq!(t[3], r(0, 1));
        assert_eq!(t[4], r(-1, 30));
    }

    #[test]
    fn named_series() {
        let todd = series(SeriesKind::Todd, 4);
        assert_eq!(todd, TruncatedSeries::from_i64(&[(1, 1), (1, 2), (1, 12), (0, 1), (-1, 720)]));
        let l = series(SeriesKind::LFactor, 4);
        assert_eq!(l, TruncatedSeries::from_i64(&[(1, 1), (0, 1), (1, 12), (0, 1), (-1, 720)]));
        let e = series(SeriesKind::ExpNeg, 2);
        assert_eq!(e, TruncatedSeries::from_i64(&[(1, 1), (-1, 1), (1, 2)]));
        assert_eq!(series(SeriesKind::Todd, 0).coeffs(), &[r(1, 1)]);
    }

    #[test]
    fn l_factor_paths_agree() {
        for n in 1..=16 {
            assert_eq!(series(SeriesKind::LFactor, n), l_factor_from_bernoulli(n));
        }
    }

    #[test]
    fn todd_relates_to_l_factor() {
        // x/(1-e^{-x}) - x/2 = (x/2)/tanh(x/2)
        let n = 10;
        let todd = series(SeriesKind::Todd, n);
        let l = series(SeriesKind::LFactor, n);
        for k in 0..=n {
            let expected = if k == 1 { l.coeff(1) + r(1, 2) } else { l.coeff(k) };
            assert_eq!(todd.coeff(k), expected);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = series(SeriesKind::ExpNeg, 7);
        let b = series(SeriesKind::Todd, 7);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(
            TruncatedSeries::exp(6, true).mul(&TruncatedSeries::exp(6, false)),
            TruncatedSeries::new(vec![r(1, 1)], 6)
        );
    }
}
