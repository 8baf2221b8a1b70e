//! Homology of the four-punctured torus and sphere, and the matrices of
//! Dehn twists, point-pushing maps and braid half-twists acting on it.
//!
//! Matrices act on column vectors: column `j` is the image of basis element `j`.

mod evaluate;
mod word;

pub use evaluate::{
    calibrate, evaluate_word, evaluate_word_with, is_torelli, quarter_turn_frame, CalibrationMatch,
    Convention,
    DualConvention, HomologyAction, CALIBRATED, SPHERICAL_WORD_G, TOROIDAL_WORD_F,
    TOROIDAL_WORD_F_PRIME, TWIST_SIGN,
};
pub use word::{
    expand_relations, free_reduce, parse_word, Generator, Letter, MCGWord, ParseError, TwistCurve,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactla::{rat, MatrixQ, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("curve has {found} coordinates, surface has H1 rank {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("index {index} out of range 1..={max} for {generator}")]
    BadIndex { generator: &'static str, index: usize, max: usize },
    #[error("{operation} is not defined on {surface}")]
    WrongSurface { operation: &'static str, surface: SurfaceKind },
    #[error("unknown surface '{0}' (expected torus4 or sphere4)")]
    UnknownSurface(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// Genus one with four punctures, basis (a0, a1, a2, a3, b0).
    Torus4,
    /// Genus zero with four punctures, basis (x1, x2, x3).
    Sphere4,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Torus4 => "torus4",
            SurfaceKind::Sphere4 => "sphere4",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "torus4" => Ok(SurfaceKind::Torus4),
            "sphere4" => Ok(SurfaceKind::Sphere4),
            other => Err(SurfaceError::UnknownSurface(other.to_string())),
        }
    }
}

/// A punctured surface together with a basis of H1 and its intersection form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    genus: usize,
    punctures: usize,
    basis_labels: Vec<&'static str>,
    pairing: MatrixQ,
}

impl SurfaceModel {
    pub fn torus4() -> Self {
        let mut pairing = MatrixQ::zeros(5, 5);
        for i in 0..4 {
            pairing.set(i, 4, rat(1));
            pairing.set(4, i, rat(-1));
        }
        SurfaceModel {
            kind: SurfaceKind::Torus4,
            genus: 1,
            punctures: 4,
            basis_labels: vec!["a0", "a1", "a2", "a3", "b0"],
            pairing,
        }
    }

    pub fn sphere4() -> Self {
        SurfaceModel {
            kind: SurfaceKind::Sphere4,
            genus: 0,
            punctures: 4,
            basis_labels: vec!["x1", "x2", "x3"],
            pairing: MatrixQ::zeros(3, 3),
        }
    }

    pub fn of_kind(kind: SurfaceKind) -> Self {
        match kind {
            SurfaceKind::Torus4 => Self::torus4(),
            SurfaceKind::Sphere4 => Self::sphere4(),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn h1_rank(&self) -> usize {
        2 * self.genus + self.punctures - 1
    }

    pub fn basis_labels(&self) -> &[&'static str] {
        &self.basis_labels
    }

    /// Algebraic intersection numbers of basis elements.
    pub fn pairing(&self) -> &MatrixQ {
        &self.pairing
    }

    /// `<x, y> = x^T P y`
    pub fn intersect(&self, x: &CurveClass, y: &CurveClass) -> Result<Rational, SurfaceError> {
        self.check(x)?;
        self.check(y)?;
        let py = self.pairing.apply(&y.to_rational()).expect("length checked");
        Ok(x.to_rational().iter().zip(&py).map(|(a, b)| a * b).sum())
    }

    fn check(&self, c: &CurveClass) -> Result<(), SurfaceError> {
        if c.coefficients.len() == self.h1_rank() {
            Ok(())
        } else {
            Err(SurfaceError::WrongLength { expected: self.h1_rank(), found: c.coefficients.len() })
        }
    }

    fn require(&self, kind: SurfaceKind, operation: &'static str) -> Result<(), SurfaceError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(SurfaceError::WrongSurface { operation, surface: self.kind })
        }
    }
}

/// An integral homology class written in the surface's H1 basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub coefficients: Vec<i64>,
}

impl CurveClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        CurveClass { coefficients }
    }

    /// `a_i` on the torus; indices are taken mod 4 so that `a_4 = a_0`.
    pub fn a(i: usize) -> Self {
        let mut v = vec![0; 5];
        v[i % 4] = 1;
        CurveClass::new(v)
    }

    /// The plain longitude `b0`.
    pub fn b0() -> Self {
        CurveClass::new(vec![0, 0, 0, 0, 1])
    }

    /// `b_i = a_0 + b_0 - a_i`, indices mod 4 (so `b_0` and `b_4` are the plain longitude).
    pub fn b(i: usize) -> Self {
        let mut v = vec![1, 0, 0, 0, 1];
        v[i % 4] -= 1;
        CurveClass::new(v)
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coefficients.iter().map(|&x| rat(x)).collect()
    }
}

/// Transvection `x -> x + sigma <x, c> c`.
pub fn dehn_twist_matrix_signed(
    c: &CurveClass,
    s: &SurfaceModel,
    sigma: i64,
) -> Result<MatrixQ, SurfaceError> {
    s.check(c)?;
    let n = s.h1_rank();
    let cv = c.to_rational();
    let pc = s.pairing.apply(&cv).expect("length checked");
    let mut m = MatrixQ::identity(n);
    let sg = rat(sigma);
    for (r, cr) in cv.iter().enumerate() {
        for (col, pcol) in pc.iter().enumerate() {
            let v = m.get(r, col) + &sg * cr * pcol;
            m.set(r, col, v);
        }
    }
    Ok(m)
}

/// Twist matrix under the calibrated sign.
pub fn dehn_twist_matrix(c: &CurveClass, s: &SurfaceModel) -> Result<MatrixQ, SurfaceError> {
    dehn_twist_matrix_signed(c, s, TWIST_SIGN)
}

fn check_index(generator: &'static str, i: usize, max: usize) -> Result<(), SurfaceError> {
    if (1..=max).contains(&i) {
        Ok(())
    } else {
        Err(SurfaceError::BadIndex { generator, index: i, max })
    }
}

fn twist_inv(c: &CurveClass, s: &SurfaceModel, sigma: i64) -> MatrixQ {
    // a transvection's inverse flips the sign
    dehn_twist_matrix_signed(c, s, -sigma).expect("basis curve")
}

fn twist(c: &CurveClass, s: &SurfaceModel, sigma: i64) -> MatrixQ {
    dehn_twist_matrix_signed(c, s, sigma).expect("basis curve")
}

pub fn push_rho_matrix_signed(i: usize, s: &SurfaceModel, sigma: i64) -> Result<MatrixQ, SurfaceError> {
    s.require(SurfaceKind::Torus4, "rho")?;
    check_index("rho", i, 4)?;
    Ok(&twist(&CurveClass::a(i - 1), s, sigma) * &twist_inv(&CurveClass::a(i), s, sigma))
}

/// `Push(rho_i) = T_{a_{i-1}} T_{a_i}^{-1}`
pub fn push_rho_matrix(i: usize, s: &SurfaceModel) -> Result<MatrixQ, SurfaceError> {
    push_rho_matrix_signed(i, s, TWIST_SIGN)
}

pub fn push_tau_matrix_signed(i: usize, s: &SurfaceModel, sigma: i64) -> Result<MatrixQ, SurfaceError> {
    s.require(SurfaceKind::Torus4, "tau")?;
    check_index("tau", i, 4)?;
    let (prev, cur, a0, b0) = (CurveClass::a(i - 1), CurveClass::a(i), CurveClass::a(0), CurveClass::b0());
    let t = |c: &CurveClass| twist(c, s, sigma);
    let ti = |c: &CurveClass| twist_inv(c, s, sigma);
    let factors = [
        t(&prev),
        t(&b0),
        ti(&a0),
        ti(&b0),
        ti(&prev),
        t(&cur),
        t(&b0),
        t(&a0),
        ti(&b0),
        ti(&cur),
    ];
    Ok(factors.iter().skip(1).fold(factors[0].clone(), |acc, m| &acc * m))
}

/// `Push(tau_i)` as the ten-twist product
/// `T_{a_{i-1}} T_{b0} T_{a0}^-1 T_{b0}^-1 T_{a_{i-1}}^-1 T_{a_i} T_{b0} T_{a0} T_{b0}^-1 T_{a_i}^-1`.
pub fn push_tau_matrix(i: usize, s: &SurfaceModel) -> Result<MatrixQ, SurfaceError> {
    push_tau_matrix_signed(i, s, TWIST_SIGN)
}

/// The second route for `Push(tau_i)`: `T_{b_i} T_{b_{i-1}}^{-1}`.
pub fn push_tau_matrix_via_longitudes_signed(
    i: usize,
    s: &SurfaceModel,
    sigma: i64,
) -> Result<MatrixQ, SurfaceError> {
    s.require(SurfaceKind::Torus4, "tau")?;
    check_index("tau", i, 4)?;
    Ok(&twist(&CurveClass::b(i), s, sigma) * &twist_inv(&CurveClass::b(i - 1), s, sigma))
}

pub fn push_tau_matrix_via_longitudes(i: usize, s: &SurfaceModel) -> Result<MatrixQ, SurfaceError> {
    push_tau_matrix_via_longitudes_signed(i, s, TWIST_SIGN)
}

/// Half-twist exchanging punctures `i` and `i+1` of the sphere, acting on
/// `(x1, x2, x3)` with `x4 = -x1 - x2 - x3`.
pub fn braid_sigma_matrix(i: usize, s: &SurfaceModel) -> Result<MatrixQ, SurfaceError> {
    s.require(SurfaceKind::Sphere4, "sigma")?;
    check_index("sigma", i, 3)?;
    let mut m = MatrixQ::identity(3);
    if i < 3 {
        let (p, q) = (i - 1, i);
        m.set(p, p, rat(0));
        m.set(q, q, rat(0));
        m.set(q, p, rat(1));
        m.set(p, q, rat(1));
    } else {
        for r in 0..3 {
            m.set(r, 2, rat(-1));
        }
    }
    Ok(m)
}
