use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};

/// An element `c0 + c1 e + c2 e^2 + ...` of Q[e], ordered with `e` a positive
/// infinitesimal: comparison is lexicographic on the coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EpsNumber {
    // trailing zeros trimmed, so zero is the empty vector
    coeffs: Vec<Rational>,
}

impl EpsNumber {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut n = EpsNumber { coeffs };
        n.trim();
        n
    }

    pub fn zero() -> Self {
        EpsNumber { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// The infinitesimal itself.
    pub fn eps() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(vec![q])
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `real + slope * e`
    pub fn linear(real: Rational, slope: Rational) -> Self {
        Self::new(vec![real, slope])
    }

    /// `k * e` for an integer `k`.
    pub fn eps_multiple(k: i64) -> Self {
        Self::linear(Rational::zero(), Rational::from_integer(BigInt::from(k)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `e^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power of `e` with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn rational_part(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the standard (non-infinitesimal) part vanishes.
    pub fn is_infinitesimal(&self) -> bool {
        self.coeff(0).is_zero()
    }

    /// -1, 0 or 1, decided by the leading nonzero coefficient.
    pub fn signum(&self) -> i32 {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        let c0 = self.coeff(0);
        let f = c0.floor();
        // integral standard part: the infinitesimal tail decides
        if f == c0 && (self - &EpsNumber::rational(c0)).signum() < 0 {
            return f.to_integer() - BigInt::one();
        }
        f.to_integer()
    }

    /// `self - floor(self)`, the representative in `[0, 1)`.
    pub fn fract(&self) -> EpsNumber {
        self - &EpsNumber::rational(Rational::from_integer(self.floor()))
    }

    pub fn scale(&self, q: &Rational) -> EpsNumber {
        EpsNumber::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Division by a nonzero rational. Panics on zero.
    pub fn div_rational(&self, q: &Rational) -> EpsNumber {
        assert!(!q.is_zero(), "division of EpsNumber by zero");
        EpsNumber::new(self.coeffs.iter().map(|c| c / q).collect())
    }
}

impl Ord for EpsNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl PartialOrd for EpsNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a EpsNumber> for &'a EpsNumber {
    type Output = EpsNumber;
    fn add(self, rhs: &EpsNumber) -> EpsNumber {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EpsNumber::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a EpsNumber> for &'a EpsNumber {
    type Output = EpsNumber;
    fn sub(self, rhs: &EpsNumber) -> EpsNumber {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EpsNumber::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a EpsNumber> for &'a EpsNumber {
    type Output = EpsNumber;
    fn mul(self, rhs: &EpsNumber) -> EpsNumber {
        if self.is_zero() || rhs.is_zero() {
            return EpsNumber::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        EpsNumber::new(out)
    }
}

impl Neg for &EpsNumber {
    type Output = EpsNumber;
    fn neg(self) -> EpsNumber {
        EpsNumber::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<EpsNumber> for EpsNumber {
            type Output = EpsNumber;
            fn $m(self, rhs: EpsNumber) -> EpsNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for EpsNumber {
    type Output = EpsNumber;
    fn neg(self) -> EpsNumber {
        -&self
    }
}

/// Symbolic rendering with `e` for the infinitesimal, e.g. `1-3e`, `1/2+e`, `0`.
impl fmt::Display for EpsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mag = c.abs();
            let power = match i {
                0 => String::new(),
                1 => "e".to_string(),
                k => format!("e^{k}"),
            };
            if i == 0 || !mag.is_one() {
                out.push_str(&format_rational(&mag));
            }
            out.push_str(&power);
        }
        write!(f, "{out}")
    }
}
