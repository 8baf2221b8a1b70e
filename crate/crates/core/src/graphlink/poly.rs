use std::collections::BTreeMap;
use std::fmt;

use super::GraphLinkError;

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `t^e - 1`
    pub fn binomial(e: usize) -> Self {
        let mut c = vec![0; e + 1];
        c[0] = -1;
        c[e] += 1;
        IntPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: i128) -> Option<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(t)?.checked_add(c))
    }

    pub fn checked_mul(&self, other: &IntPoly) -> Result<IntPoly, GraphLinkError> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPoly::new(Vec::new()));
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(GraphLinkError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(GraphLinkError::Overflow)?;
            }
        }
        Ok(IntPoly::new(out))
    }

    /// Multiplication by `t^e - 1`.
    pub fn mul_binomial(&self, e: usize) -> Result<IntPoly, GraphLinkError> {
        let n = self.coeffs.len();
        let mut out = vec![0i128; n + e];
        for (k, slot) in out.iter_mut().enumerate() {
            let shifted = if k >= e && k - e < n { self.coeffs[k - e] } else { 0 };
            let here = self.coeffs.get(k).copied().unwrap_or(0);
            *slot = shifted.checked_sub(here).ok_or(GraphLinkError::Overflow)?;
        }
        Ok(IntPoly::new(out))
    }

    /// Exact division by `t^e - 1`; a nonzero remainder is an error.
    pub fn div_binomial(&self, e: usize) -> Result<IntPoly, GraphLinkError> {
        let Some(deg) = self.degree() else {
            return Ok(self.clone());
        };
        if deg < e {
            return Err(GraphLinkError::NonzeroRemainder { divisor_exponent: e as u64 });
        }
        // p[k] = q[k-e] - q[k]
        let mut q = vec![0i128; deg - e + 1];
        for k in 0..q.len() {
            let prev = if k >= e { q[k - e] } else { 0 };
            q[k] = prev.checked_sub(self.coeffs[k]).ok_or(GraphLinkError::Overflow)?;
        }
        let q = IntPoly::new(q);
        if q.mul_binomial(e)? != *self {
            return Err(GraphLinkError::NonzeroRemainder { divisor_exponent: e as u64 });
        }
        Ok(q)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            if mag != 1 || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Prime factorization by trial division, pulling out 3 first since every
/// exponent here is a power of 3 times a small cofactor.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for p in [3u64, 2] {
        while n > 1 && n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 2;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, k) in factorize(n) {
        let current = ds.clone();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            ds.extend(current.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(IntPoly::new(vec![1, 0, 0, 1, 0, 0, 1]).to_string(), "t^6 + t^3 + 1");
        assert_eq!(IntPoly::new(vec![-1, 1]).to_string(), "t - 1");
        assert_eq!(IntPoly::new(vec![2, 0, -3]).to_string(), "-3t^2 + 2");
        assert_eq!(IntPoly::one().to_string(), "1");
        assert_eq!(IntPoly::new(vec![0, 0]).to_string(), "0");
    }

    #[test]
    fn binomial_division() {
        let p = IntPoly::binomial(9);
        assert_eq!(p.div_binomial(3).unwrap(), IntPoly::new(vec![1, 0, 0, 1, 0, 0, 1]));
        assert!(matches!(p.div_binomial(2), Err(GraphLinkError::NonzeroRemainder { .. })));
        assert!(IntPoly::binomial(2).div_binomial(3).is_err());
        assert_eq!(IntPoly::binomial(4).mul_binomial(2).unwrap(), IntPoly::binomial(4).checked_mul(&IntPoly::binomial(2)).unwrap());
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors(18), vec![1, 2, 3, 6, 9, 18]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(totient(27), 18);
        assert_eq!(totient(1), 1);
        assert_eq!(factorize(3u64.pow(30) * 7), BTreeMap::from([(3, 30), (7, 1)]));
    }
}
