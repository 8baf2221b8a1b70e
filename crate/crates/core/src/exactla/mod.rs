//! Exact linear algebra over the rationals.
//!
//! Everything here is exact: rationals are arbitrary precision, matrices are
//! dense grids of rationals, and subspaces are stored by a canonical reduced
//! row-echelon basis so that equal subspaces compare equal structurally.
//! [`EpsNumber`] extends the rationals by a positive infinitesimal and is
//! used by the fibration geometry.

mod eps;
mod jordan;
mod matrix;
mod subspace;

pub use eps::EpsNumber;
pub use jordan::{jordan_census, JordanCensus};
pub use matrix::{image_basis, kernel_basis, rank, MatrixQ};
pub use subspace::{subspace_intersect, Subspace};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
}

/// Integer literal as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the output of [`format_rational`] (`p`, `-p`, `p/q`).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for q in [rat(0), rat(-7), ratio(3, 6), ratio(-5, 15), ratio(22, 7)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(format_rational(&ratio(2, -4)), "-1/2");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
